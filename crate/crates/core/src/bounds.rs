//! Lower and upper bounds for the parametrised topological complexity of the
//! Fadell-Neuwirth bundle `F(R^k, n+m) -> F(R^k, m)`.
//!
//! Lower bounds come from nonzero products of classes killed by the diagonal
//! (cup-length of `ker D*`); upper bounds from homotopical dimension of
//! `E x_B E` against the connectivity of the fibre.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::poincare_polynomial;
use crate::cert::TcCertificate;
use crate::diagonal::{diagonal_apply, kernel_generators, kernel_pairs};
use crate::error::{Error, Result};
use crate::ring::{make_generator, Element, Monomial, Side};
use crate::space::{Space, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub value: u32,
    pub kind: BoundKind,
    pub provenance: String,
}

impl BoundRecord {
    pub fn lower(value: u32, provenance: impl Into<String>) -> Self {
        BoundRecord { value, kind: BoundKind::Lower, provenance: provenance.into() }
    }

    pub fn upper(value: u32, provenance: impl Into<String>) -> Self {
        BoundRecord { value, kind: BoundKind::Upper, provenance: provenance.into() }
    }
}

impl fmt::Display for BoundRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            BoundKind::Lower => "LOWER",
            BoundKind::Upper => "UPPER",
        };
        write!(f, "{kind} {} ({})", self.value, self.provenance)
    }
}

fn require_fibre_product(spec: &SpaceSpec) -> Result<()> {
    if spec.space() != Space::FibreproductEbe {
        return Err(Error::SpaceMismatch(format!("expected the fibre product ring, got {spec}")));
    }
    Ok(())
}

/// Largest integer `t` with `t < num / den`, for `num, den >= 1`.
fn largest_integer_strictly_below(num: u64, den: u64) -> u64 {
    (num - 1) / den
}

/// `tc < (hdim(E x_B E) + 1) / (r + 1)` with the fibre `(k-2)`-connected and
/// `hdim(E x_B E) = (k-1)(2n+m-1)`.
pub fn upper_bound_dimension(spec: &SpaceSpec) -> Result<BoundRecord> {
    require_fibre_product(spec)?;
    let k = spec.k() as u64;
    let connectivity = k - 2;
    let hdim = (k - 1) * (2 * spec.n() as u64 + spec.m() as u64 - 1);
    let value = largest_integer_strictly_below(hdim + 1, connectivity + 1);
    Ok(BoundRecord::upper(value as u32, "dimension/connectivity"))
}

/// A nonzero product of zero-divisors together with one surviving term.
#[derive(Debug, Clone, PartialEq)]
pub struct CupLength {
    pub bound: BoundRecord,
    pub product: Element,
    pub witness: Monomial,
    pub coefficient: i64,
}

/// Multiplies `factors`, all of which must lie in `ker D*`. Returns `None` when
/// the product vanishes; an empty list gives the unit and a bound of 0.
pub fn cup_length_lower_bound(spec: &SpaceSpec, factors: &[Element]) -> Result<Option<CupLength>> {
    require_fibre_product(spec)?;
    for (index, f) in factors.iter().enumerate() {
        if f.spec() != spec {
            return Err(Error::SpaceMismatch(format!("factor #{index} lives in {}, expected {spec}", f.spec())));
        }
        if !diagonal_apply(f)?.is_zero() {
            return Err(Error::NotAZeroDivisor { index });
        }
    }
    let mut product = Element::one(*spec);
    for f in factors {
        product = product.multiply(f)?;
        if product.is_zero() {
            return Ok(None);
        }
    }
    let (witness, coefficient) = product.leading_term().expect("nonzero product");
    Ok(Some(CupLength {
        bound: BoundRecord::lower(factors.len() as u32, "cup-length"),
        product,
        witness,
        coefficient,
    }))
}

/// The `2n + m - 1` zero-divisors whose product is shown to be nonzero:
/// `(w(i,m+1) - w'(i,m+1))` for `i = 2..=m`, then `(w(1,j) - w'(1,j))` twice
/// for each robot index `j = m+1..=m+n`.
pub fn theorem_factors(spec: &SpaceSpec) -> Result<Vec<Element>> {
    require_fibre_product(spec)?;
    let (n, m) = (spec.n(), spec.m());
    if m < 2 {
        return Err(Error::ObstacleCountTooSmall(m));
    }
    let diff = |i, j| -> Result<Element> {
        make_generator(spec, i, j, Side::Unprimed)?.sub(&make_generator(spec, i, j, Side::Primed)?)
    };
    let mut factors = Vec::with_capacity((2 * n + m - 1) as usize);
    for i in 2..=m {
        factors.push(diff(i, m + 1)?);
    }
    for j in m + 1..=m + n {
        let d = diff(1, j)?;
        factors.push(d.clone());
        factors.push(d);
    }
    Ok(factors)
}

/// The fully normalized product of [`theorem_factors`].
pub fn theorem_product(spec: &SpaceSpec) -> Result<Element> {
    let factors = theorem_factors(spec)?;
    // The squared robot factors collapse to single monomials, so multiplying
    // them first keeps the running product small until the last few steps.
    let (obstacle, robot) = factors.split_at(spec.m() as usize - 1);
    let mut x = Element::one(*spec);
    for f in robot.iter().chain(obstacle) {
        x = x.multiply(f)?;
    }
    Ok(x)
}

/// Builds the certificate `lower = upper = 2n + m - 1`.
///
/// A vanishing product is reported as [`Error::TheoremCheckFailed`]: the
/// product is provably nonzero, so that outcome signals a normalizer defect.
pub fn verify_theorem(spec: &SpaceSpec) -> Result<TcCertificate> {
    require_fibre_product(spec)?;
    if spec.m() < 2 {
        return Err(Error::ObstacleCountTooSmall(spec.m()));
    }
    let factors = theorem_factors(spec)?;
    for (index, f) in factors.iter().enumerate() {
        if !diagonal_apply(f)?.is_zero() {
            return Err(Error::NotAZeroDivisor { index });
        }
    }
    let x = theorem_product(spec)?;
    let Some((witness, coefficient)) = x.leading_term() else {
        return Err(Error::TheoremCheckFailed { n: spec.n(), m: spec.m(), k: spec.k() });
    };
    let lower = factors.len() as u32;
    let upper = upper_bound_dimension(spec)?.value;
    let cert = TcCertificate {
        n: spec.n(),
        m: spec.m(),
        k: spec.k(),
        lower_bound: lower,
        upper_bound: upper,
        tc_exact: (lower == upper).then_some(lower),
        factor_list: factors,
        witness_monomial: witness,
        witness_coefficient: coefficient,
        basis_dims: poincare_polynomial(spec).coefficients().to_vec(),
        elapsed_ms: 0,
    };
    cert.check()?;
    Ok(cert)
}

/// Result of [`exhaustive_zero_divisor_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub bound: BoundRecord,
    /// The multiset of kernel generators, as `(i, j)` pairs, realizing the bound.
    pub witness: Vec<(u32, u32)>,
    pub product: Element,
    /// Number of multisets whose product was evaluated.
    pub candidates: u64,
}

/// Breadth-first search over multisets of kernel generators by length.
///
/// Each level extends the nonzero products of the previous level by a
/// generator of index at least the last one used; vanishing products are
/// pruned. Before a level is evaluated its size is added to the candidate
/// count, and exceeding `max_candidates` aborts with
/// [`Error::BudgetExceeded`] carrying the best length completed so far.
/// `threads > 1` evaluates each level on a private pool; results are
/// independent of the thread count.
pub fn exhaustive_zero_divisor_search(
    spec: &SpaceSpec,
    max_length: u32,
    max_candidates: u64,
    threads: usize,
) -> Result<SearchOutcome> {
    require_fibre_product(spec)?;
    let gens = kernel_generators(spec)?;
    let pairs = kernel_pairs(spec);

    let pool = if threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut best = SearchOutcome {
        bound: BoundRecord::lower(0, "exhaustive search"),
        witness: Vec::new(),
        product: Element::one(*spec),
        candidates: 0,
    };
    // (indices, product) for every nonzero multiset of the current length
    let mut frontier: Vec<(Vec<usize>, Element)> = vec![(Vec::new(), Element::one(*spec))];

    for length in 1..=max_length {
        let level_size: u64 = frontier
            .iter()
            .map(|(idx, _)| (gens.len() - idx.last().copied().unwrap_or(0)) as u64)
            .sum();
        if best.candidates + level_size > max_candidates {
            return Err(Error::BudgetExceeded { best: best.bound.value, candidates: best.candidates });
        }
        best.candidates += level_size;

        let extend = |(idx, prod): &(Vec<usize>, Element)| -> Result<Vec<(Vec<usize>, Element)>> {
            let start = idx.last().copied().unwrap_or(0);
            let mut out = Vec::new();
            for (g, gen) in gens.iter().enumerate().skip(start) {
                let next = prod.multiply(gen)?;
                if !next.is_zero() {
                    let mut ni = idx.clone();
                    ni.push(g);
                    out.push((ni, next));
                }
            }
            Ok(out)
        };
        let expanded: Vec<Result<Vec<_>>> = match &pool {
            Some(pool) => pool.install(|| frontier.par_iter().map(extend).collect()),
            None => frontier.iter().map(extend).collect(),
        };
        let mut next_frontier = Vec::new();
        for chunk in expanded {
            next_frontier.extend(chunk?);
        }
        if next_frontier.is_empty() {
            break;
        }
        let (idx, prod) = &next_frontier[0];
        best.bound.value = length;
        best.witness = idx.iter().map(|&g| pairs[g]).collect();
        best.product = prod.clone();
        frontier = next_frontier;
    }
    Ok(best)
}

/// Product inequality: `tc` of a product fibration is at most the sum.
pub fn product_inequality_combine(a: &BoundRecord, b: &BoundRecord) -> Result<BoundRecord> {
    if a.kind != BoundKind::Upper || b.kind != BoundKind::Upper {
        return Err(Error::KindMismatch(format!("product inequality combines upper bounds, got {a} and {b}")));
    }
    Ok(BoundRecord::upper(a.value + b.value, "product-combinator"))
}

/// Both sides of the expansion of `prod_{i in T} w(i,p)` (or its primed
/// version) for `T` a subset of the obstacle indices and `p` a robot index:
///
/// ```text
/// prod_{i in T} w(i,p) = (-1)^{|T|-1} sum_{i in T} (prod_{j in T - i} w(i,j)) w(i,p)
/// ```
///
/// with `w(i,j) = -w(j,i)`. Returns `(direct, closed_form)`, each normalized.
pub fn lemma_95_expand(spec: &SpaceSpec, t: &[u32], p: u32, primed: bool) -> Result<(Element, Element)> {
    require_fibre_product(spec)?;
    let (n, m) = (spec.n(), spec.m());
    if p <= m || p > m + n {
        return Err(Error::IndexOutOfRange { index: p, max: m + n });
    }
    let mut set = t.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Err(Error::InvalidSpec("T must be nonempty".into()));
    }
    if let Some(&bad) = set.iter().find(|&&i| i < 1 || i > m) {
        return Err(Error::IndexOutOfRange { index: bad, max: m });
    }
    let side = if primed { Side::Primed } else { Side::Unprimed };

    let mut direct = Element::one(*spec);
    for &i in &set {
        direct = direct.multiply(&make_generator(spec, i, p, side)?)?;
    }

    let mut closed = Element::zero(*spec);
    for &i in &set {
        let mut term = make_generator(spec, i, p, side)?;
        for &j in set.iter().filter(|&&j| j != i) {
            term = term.multiply(&make_generator(spec, i, j, Side::Unprimed)?)?;
        }
        closed = closed.add(&term)?;
    }
    if set.len().is_multiple_of(2) {
        closed = closed.neg()?;
    }
    Ok((direct, closed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_str;

    fn ebe(n: u32, m: u32) -> SpaceSpec {
        SpaceSpec::fibre_product(n, m, 3).unwrap()
    }

    #[test]
    fn strict_floor() {
        assert_eq!(largest_integer_strictly_below(13, 4), 3);
        assert_eq!(largest_integer_strictly_below(12, 4), 2);
        assert_eq!(largest_integer_strictly_below(7, 2), 3);
        assert_eq!(largest_integer_strictly_below(1, 1), 0);
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(upper_bound_dimension(&ebe(1, 2)).unwrap().value, 3);
        for n in 1..=3 {
            for m in 2..=5 {
                assert_eq!(upper_bound_dimension(&ebe(n, m)).unwrap().value, 2 * n + m - 1);
            }
        }
        let k5 = SpaceSpec::fibre_product(1, 2, 5).unwrap();
        assert_eq!(upper_bound_dimension(&k5).unwrap(), BoundRecord::upper(3, "dimension/connectivity"));
    }

    #[test]
    fn cup_length_examples() {
        let s = ebe(1, 2);
        let d13 = eval_str("w(1,3) - w'(1,3)", &s).unwrap();
        let d23 = eval_str("w(2,3) - w'(2,3)", &s).unwrap();
        let three = cup_length_lower_bound(&s, &[d13.clone(), d13.clone(), d23]).unwrap().unwrap();
        assert_eq!(three.bound, BoundRecord::lower(3, "cup-length"));
        assert_ne!(three.coefficient, 0);
        assert_eq!(three.witness.grade(), 3);

        let empty = cup_length_lower_bound(&s, &[]).unwrap().unwrap();
        assert_eq!(empty.bound.value, 0);
        assert!(empty.witness.is_one());

        assert!(cup_length_lower_bound(&s, &[d13.clone(), d13.clone(), d13]).unwrap().is_none());
    }

    #[test]
    fn cup_length_rejects_non_kernel_factor() {
        let s = ebe(1, 2);
        let d13 = eval_str("w(1,3) - w'(1,3)", &s).unwrap();
        let bad = eval_str("w(1,3)", &s).unwrap();
        assert_eq!(cup_length_lower_bound(&s, &[d13, bad]), Err(Error::NotAZeroDivisor { index: 1 }));
    }

    #[test]
    fn theorem_product_smallest_case() {
        let s = ebe(1, 2);
        let x = theorem_product(&s).unwrap();
        let expected = eval_str("-2*w(1,2)*w(2,3)*w'(1,3) + 2*w(1,2)*w(1,3)*w'(2,3)", &s).unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn theorem_product_order_independent() {
        let s = ebe(2, 3);
        let factors = theorem_factors(&s).unwrap();
        assert_eq!(factors.len(), 6);
        let mut in_order = Element::one(s);
        for f in &factors {
            in_order = in_order.multiply(f).unwrap();
        }
        assert_eq!(in_order, theorem_product(&s).unwrap());
        assert!(in_order.iter().all(|(mono, _)| mono.grade() == 6));
    }

    #[test]
    fn theorem_needs_two_obstacles() {
        let s = ebe(1, 1);
        assert_eq!(theorem_product(&s), Err(Error::ObstacleCountTooSmall(1)));
        assert_eq!(verify_theorem(&s).unwrap_err(), Error::ObstacleCountTooSmall(1));
    }

    #[test]
    fn verify_examples() {
        for (n, m, k, tc) in [(1, 2, 3, 3), (2, 3, 3, 6), (1, 2, 5, 3)] {
            let cert = verify_theorem(&SpaceSpec::fibre_product(n, m, k).unwrap()).unwrap();
            assert_eq!(cert.tc_exact, Some(tc));
            assert_eq!(cert.lower_bound, tc);
            assert_eq!(cert.upper_bound, tc);
        }
    }

    #[test]
    fn search_examples() {
        let s = ebe(1, 2);
        assert_eq!(exhaustive_zero_divisor_search(&s, 3, 1000, 1).unwrap().bound.value, 3);
        let four = exhaustive_zero_divisor_search(&s, 4, 1000, 1).unwrap();
        assert_eq!(four.bound.value, 3);
        // lengths 1..=3 of two generators: 2 + 3 + 4 candidates; level 4 is
        // never generated past the zero products
        assert!(four.candidates <= 2 + 3 + 4 + 5);
        let s3 = ebe(1, 3);
        let r = exhaustive_zero_divisor_search(&s3, 4, 10_000, 1).unwrap();
        assert_eq!(r.bound.value, 4);
        assert_eq!(r.witness.len(), 4);
        assert!(!r.product.is_zero());
    }

    #[test]
    fn search_budget() {
        let s = ebe(1, 2);
        assert_eq!(
            exhaustive_zero_divisor_search(&s, 4, 1, 1),
            Err(Error::BudgetExceeded { best: 0, candidates: 0 })
        );
        assert!(matches!(
            exhaustive_zero_divisor_search(&s, 4, 6, 1),
            Err(Error::BudgetExceeded { best: 2, .. })
        ));
    }

    #[test]
    fn search_is_thread_independent() {
        let s = ebe(2, 2);
        let a = exhaustive_zero_divisor_search(&s, 5, 1_000_000, 1).unwrap();
        let b = exhaustive_zero_divisor_search(&s, 5, 1_000_000, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.bound.value, 5);
    }

    #[test]
    fn combinator() {
        let u = |v| BoundRecord::upper(v, "x");
        assert_eq!(product_inequality_combine(&u(3), &u(3)).unwrap().value, 6);
        assert_eq!(product_inequality_combine(&u(0), &u(5)).unwrap().value, 5);
        assert_eq!(product_inequality_combine(&u(3), &u(4)).unwrap(), BoundRecord::upper(7, "product-combinator"));
        assert!(matches!(
            product_inequality_combine(&u(3), &BoundRecord::lower(3, "x")),
            Err(Error::KindMismatch(_))
        ));
    }

    #[test]
    fn lemma_examples() {
        let s = ebe(1, 2);
        let (d, c) = lemma_95_expand(&s, &[1], 3, false).unwrap();
        assert_eq!(d, c);
        assert_eq!(d.to_string(), "w(1,3)");
        let (d, c) = lemma_95_expand(&s, &[1, 2], 3, false).unwrap();
        assert_eq!(d, c);
        assert_eq!(d, eval_str("w(1,2)*(w(2,3) - w(1,3))", &s).unwrap());
        let s3 = ebe(1, 3);
        let (d, c) = lemma_95_expand(&s3, &[1, 2, 3], 4, true).unwrap();
        assert_eq!(d, c);
        assert_eq!(d.grades(), vec![3]);
    }

    #[test]
    fn lemma_rejects_bad_indices() {
        let s = ebe(1, 2);
        assert!(lemma_95_expand(&s, &[], 3, false).is_err());
        assert_eq!(lemma_95_expand(&s, &[1], 2, false), Err(Error::IndexOutOfRange { index: 2, max: 3 }));
        assert_eq!(lemma_95_expand(&s, &[3], 3, false), Err(Error::IndexOutOfRange { index: 3, max: 2 }));
    }
}
