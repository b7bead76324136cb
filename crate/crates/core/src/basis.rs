//! Canonical free basis of the rings, grade by grade, and the closed-form
//! Poincare polynomials used as an independent count.

use std::fmt;

use crate::ring::{Monomial, Part};
use crate::space::{Space, SpaceSpec};

/// `coefficients[p]` is the rank in grade `p` (degree `p * (k - 1)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial {
    coefficients: Vec<u64>,
}

impl PoincarePolynomial {
    pub fn one() -> Self {
        PoincarePolynomial { coefficients: vec![1] }
    }

    /// `1 + a t`.
    pub fn linear(a: u64) -> Self {
        PoincarePolynomial::from_coefficients(vec![1, a])
    }

    pub fn from_coefficients(mut coefficients: Vec<u64>) -> Self {
        while coefficients.len() > 1 && coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0);
        }
        PoincarePolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Rank in grade `p`, zero past the top.
    pub fn coefficient(&self, p: usize) -> u64 {
        self.coefficients.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Total rank.
    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0u64; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PoincarePolynomial::from_coefficients(out)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (p, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{p}")?,
                _ => write!(f, "{c}t^{p}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn product_of_linears(factors: impl IntoIterator<Item = u64>) -> PoincarePolynomial {
    factors
        .into_iter()
        .fold(PoincarePolynomial::one(), |acc, a| acc.mul(&PoincarePolynomial::linear(a)))
}

pub fn poincare_polynomial(spec: &SpaceSpec) -> PoincarePolynomial {
    let (n, m) = (spec.n() as u64, spec.m() as u64);
    let base = || product_of_linears(1..m);
    let fibre = || product_of_linears((0..n).map(|i| m + i));
    match spec.space() {
        Space::BaseB => base(),
        Space::TotalE => product_of_linears(1..m + n),
        Space::FibreX => fibre(),
        Space::FibreproductEbe => {
            let x = fibre();
            base().mul(&x).mul(&x)
        }
    }
}

/// Highest grade carrying a nonzero class; `2n + m - 1` for the fibre product.
pub fn top_grade(spec: &SpaceSpec) -> u32 {
    let (n, m) = (spec.n(), spec.m());
    match spec.space() {
        Space::FibreproductEbe => 2 * n + m - 1,
        Space::TotalE => n + m - 1,
        Space::BaseB => m - 1,
        Space::FibreX => n,
    }
}

/// All packed part-values for one part, bucketed by grade.
///
/// Chooses an increasing set of tops from `tops` and, independently, a lower
/// index `i < j` for every chosen top `j`.
fn part_choices(part: Part, tops: std::ops::RangeInclusive<u32>) -> Vec<Vec<Monomial>> {
    let mut by_grade: Vec<Vec<Monomial>> = vec![vec![Monomial::one()]];
    for j in tops {
        let mut next: Vec<Vec<Monomial>> = vec![Vec::new(); by_grade.len() + 1];
        for (g, monos) in by_grade.iter().enumerate() {
            for &mono in monos {
                next[g].push(mono);
                for i in 1..j {
                    next[g + 1].push(mono.with(part, j, i));
                }
            }
        }
        by_grade = next;
    }
    by_grade
}

/// Canonical basis monomials of the given grade, in canonical order.
pub fn enumerate_basis(spec: &SpaceSpec, grade: u32) -> Vec<Monomial> {
    let (n, m) = (spec.n(), spec.m());
    let empty = || vec![vec![Monomial::one()]];
    let base = if spec.has_base() { part_choices(Part::Base, 2..=m) } else { empty() };
    let fibre = if spec.has_fibre() { part_choices(Part::Fibre, m + 1..=m + n) } else { empty() };
    let primed = if spec.has_primed() {
        part_choices(Part::PrimedFibre, m + 1..=m + n)
    } else {
        empty()
    };

    let grade = grade as usize;
    let mut out = Vec::new();
    for (g1, b) in base.iter().enumerate().take(grade + 1) {
        for (g2, f) in fibre.iter().enumerate().take(grade + 1 - g1) {
            let g3 = grade - g1 - g2;
            let Some(p) = primed.get(g3) else { continue };
            out.reserve(b.len() * f.len() * p.len());
            for &mb in b {
                for &mf in f {
                    let bf = merge(mb, mf);
                    out.extend(p.iter().map(|&mp| merge(bf, mp)));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn merge(a: Monomial, b: Monomial) -> Monomial {
    a.disjoint_union(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ebe(n: u32, m: u32) -> SpaceSpec {
        SpaceSpec::fibre_product(n, m, 3).unwrap()
    }

    #[test]
    fn grade_one_of_smallest_case() {
        let names: Vec<String> = enumerate_basis(&ebe(1, 2), 1).iter().map(|m| m.to_string()).collect();
        let mut expected = vec!["w(1,2)", "w(1,3)", "w(2,3)", "w'(1,3)", "w'(2,3)"];
        expected.sort();
        let mut got = names.clone();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(names.len(), 5);
    }

    #[test]
    fn top_grade_of_smallest_case() {
        let names: Vec<String> = enumerate_basis(&ebe(1, 2), 3).iter().map(|m| m.to_string()).collect();
        assert_eq!(
            names,
            vec![
                "w(1,2)*w(1,3)*w'(1,3)",
                "w(1,2)*w(1,3)*w'(2,3)",
                "w(1,2)*w(2,3)*w'(1,3)",
                "w(1,2)*w(2,3)*w'(2,3)",
            ]
        );
    }

    #[test]
    fn grade_zero_is_unit() {
        for space in [Space::BaseB, Space::TotalE, Space::FibreX, Space::FibreproductEbe] {
            let spec = ebe(2, 3).with_space(space);
            assert_eq!(enumerate_basis(&spec, 0), vec![Monomial::one()]);
        }
    }

    #[test]
    fn polynomials() {
        assert_eq!(poincare_polynomial(&ebe(1, 2)).coefficients(), &[1, 5, 8, 4]);
        let b = SpaceSpec::new(1, 3, 3, Space::BaseB).unwrap();
        assert_eq!(poincare_polynomial(&b).coefficients(), &[1, 3, 2]);
        let x = SpaceSpec::new(2, 2, 3, Space::FibreX).unwrap();
        assert_eq!(poincare_polynomial(&x).coefficients(), &[1, 5, 6]);
        assert_eq!(poincare_polynomial(&ebe(1, 2)).to_string(), "1 + 5t + 8t^2 + 4t^3");
    }

    #[test]
    fn top_grades() {
        assert_eq!(top_grade(&ebe(1, 2)), 3);
        assert_eq!(top_grade(&ebe(3, 2)), 7);
        assert_eq!(top_grade(&ebe(1, 5)), 6);
    }

    #[test]
    fn counts_match_polynomial_for_every_space() {
        for n in 1..=2 {
            for m in 1..=4 {
                for space in [Space::BaseB, Space::TotalE, Space::FibreX, Space::FibreproductEbe] {
                    let spec = SpaceSpec::new(n, m, 3, space).unwrap();
                    let poly = poincare_polynomial(&spec);
                    assert_eq!(poly.degree() as u32, top_grade(&spec), "{spec}");
                    for p in 0..=poly.degree() + 1 {
                        let basis = enumerate_basis(&spec, p as u32);
                        assert_eq!(basis.len() as u64, poly.coefficient(p), "{spec} grade {p}");
                        assert!(basis.windows(2).all(|w| w[0] < w[1]), "sorted and distinct");
                        assert!(basis.iter().all(|mono| mono.grade() == p as u32));
                    }
                }
            }
        }
    }
}
