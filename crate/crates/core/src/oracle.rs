//! Brute-force cross-checks for the normalizer in [`crate::ring`].
//!
//! Nothing here calls the ring's rewriting code. A product is kept as a raw
//! word of generators; any two factors in the same family with the same top
//! index are a violation, and a uniformly random violation (seeded) is
//! rewritten at each step. Only fully reduced words are converted to
//! [`Monomial`]s, through the validating [`Monomial::from_parts`].

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::ring::{Element, Generator, Monomial, Side};
use crate::space::{Space, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Base,
    Unprimed,
    Primed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Letter {
    family: Family,
    lo: u32,
    hi: u32,
}

struct Word {
    coef: i64,
    letters: Vec<Letter>,
}

fn letter(g: &Generator, m: u32) -> Letter {
    let family = if g.j() <= m {
        Family::Base
    } else if g.side() == Side::Primed {
        Family::Primed
    } else {
        Family::Unprimed
    };
    Letter { family, lo: g.i(), hi: g.j() }
}

fn violations(letters: &[Letter]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..letters.len() {
        for b in a + 1..letters.len() {
            if letters[a].family == letters[b].family && letters[a].hi == letters[b].hi {
                out.push((a, b));
            }
        }
    }
    out
}

fn to_monomial(spec: &SpaceSpec, letters: &[Letter]) -> Result<Monomial> {
    let collect = |family| {
        let mut v: Vec<(u32, u32)> = letters.iter().filter(|l| l.family == family).map(|l| (l.lo, l.hi)).collect();
        v.sort_by_key(|&(i, j)| (j, i));
        v
    };
    Monomial::from_parts(spec, &collect(Family::Base), &collect(Family::Unprimed), &collect(Family::Primed))
}

/// Normalizes the product of `product` (times 1) by random-order rewriting.
pub fn randomized_normalize(spec: &SpaceSpec, product: &[Generator], seed: u64) -> Result<Element> {
    randomized_normalize_scaled(spec, product, 1, seed)
}

fn randomized_normalize_scaled(spec: &SpaceSpec, product: &[Generator], coef: i64, seed: u64) -> Result<Element> {
    let m = spec.m();
    let fibre_only = spec.space() == Space::FibreX;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = vec![Word { coef, letters: product.iter().map(|g| letter(g, m)).collect() }];
    let mut done: FxHashMap<Monomial, i64> = FxHashMap::default();

    while !work.is_empty() {
        let pick = rng.random_range(0..work.len());
        let word = work.swap_remove(pick);
        if fibre_only && word.letters.iter().any(|l| l.family == Family::Base) {
            continue;
        }
        let found = violations(&word.letters);
        if found.is_empty() {
            let mono = to_monomial(spec, &word.letters)?;
            let entry = done.entry(mono).or_insert(0);
            *entry = entry.checked_add(word.coef).ok_or(Error::IntegerOverflow)?;
            continue;
        }
        let (x, y) = found[rng.random_range(0..found.len())];
        let (lx, ly) = (word.letters[x], word.letters[y]);
        if lx.lo == ly.lo {
            // square of a generator
            continue;
        }
        let (a, b, r, family) = (lx.lo.min(ly.lo), lx.lo.max(ly.lo), lx.hi, lx.family);
        let ab = Letter { family: if b <= m { Family::Base } else { family }, lo: a, hi: b };
        let rest: Vec<Letter> = word
            .letters
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != x && idx != y)
            .map(|(_, &l)| l)
            .collect();
        // w(a,r) w(b,r) -> w(a,b) w(b,r) - w(a,b) w(a,r)
        let mut first = rest.clone();
        first.extend([ab, Letter { family, lo: b, hi: r }]);
        let mut second = rest;
        second.extend([ab, Letter { family, lo: a, hi: r }]);
        let neg = word.coef.checked_neg().ok_or(Error::IntegerOverflow)?;
        work.push(Word { coef: word.coef, letters: first });
        work.push(Word { coef: neg, letters: second });
    }

    let mut out = Element::zero(*spec);
    for (mono, c) in done {
        if c != 0 {
            out = out.add(&Element::from_monomial(*spec, mono, c))?;
        }
    }
    Ok(out)
}

/// `y = prod_{i=2}^{m} (w(i,m+1) - w'(i,m+1)) * prod_{j=m+1}^{m+n} w(1,j) w'(1,j)`,
/// expanded into its `2^(m-1)` words, each normalized on its own and summed.
pub fn naive_theorem_y(spec: &SpaceSpec) -> Result<Element> {
    let (n, m) = (spec.n(), spec.m());
    if spec.space() != Space::FibreproductEbe {
        return Err(Error::SpaceMismatch(format!("expected the fibre product ring, got {spec}")));
    }
    if m < 2 {
        return Err(Error::ObstacleCountTooSmall(m));
    }
    let gen = |i, j, side| Generator::new(spec, i, j, side).map(|(_, g)| g);
    let mut tail = Vec::new();
    for j in m + 1..=m + n {
        tail.push(gen(1, j, Side::Unprimed)?);
        tail.push(gen(1, j, Side::Primed)?);
    }
    let mut y = Element::zero(*spec);
    for choice in 0u64..(1 << (m - 1)) {
        let mut word = Vec::with_capacity(tail.len() + m as usize - 1);
        let mut sign = 1i64;
        for (bit, i) in (2..=m).enumerate() {
            if choice >> bit & 1 == 1 {
                word.push(gen(i, m + 1, Side::Primed)?);
                sign = -sign;
            } else {
                word.push(gen(i, m + 1, Side::Unprimed)?);
            }
        }
        word.extend_from_slice(&tail);
        y = y.add(&randomized_normalize_scaled(spec, &word, sign, choice)?)?;
    }
    Ok(y)
}

/// The basis monomial
/// `w(1,2) w(2,3) ... w(2,m) * w(1,m+1) w(1,m+2) ... w(1,m+n) * w'(2,m+1) w'(1,m+2) ... w'(1,m+n)`
/// that occurs exactly once when `y` is expanded.
pub fn witness_monomial(spec: &SpaceSpec) -> Result<Monomial> {
    let (n, m) = (spec.n(), spec.m());
    if m < 2 {
        return Err(Error::ObstacleCountTooSmall(m));
    }
    let base: Vec<(u32, u32)> = std::iter::once((1, 2)).chain((3..=m).map(|j| (2, j))).collect();
    let fibre: Vec<(u32, u32)> = (m + 1..=m + n).map(|j| (1, j)).collect();
    let primed: Vec<(u32, u32)> = std::iter::once((2, m + 1)).chain((m + 2..=m + n).map(|j| (1, j))).collect();
    Monomial::from_parts(spec, &base, &fibre, &primed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::theorem_product;
    use crate::expr::eval_str;

    fn ebe(n: u32, m: u32) -> SpaceSpec {
        SpaceSpec::fibre_product(n, m, 3).unwrap()
    }

    fn g(spec: &SpaceSpec, i: u32, j: u32, side: Side) -> Generator {
        Generator::new(spec, i, j, side).unwrap().1
    }

    #[test]
    fn braid_for_any_seed() {
        let s = ebe(1, 2);
        let expected = eval_str("w(1,2)*w(2,3) - w(1,2)*w(1,3)", &s).unwrap();
        for seed in 0..20 {
            let got = randomized_normalize(&s, &[g(&s, 1, 3, Side::Unprimed), g(&s, 2, 3, Side::Unprimed)], seed).unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn squares_and_singletons() {
        let s = ebe(1, 2);
        let w12 = g(&s, 1, 2, Side::Unprimed);
        for seed in 0..5 {
            assert!(randomized_normalize(&s, &[w12, w12], seed).unwrap().is_zero());
            assert_eq!(randomized_normalize(&s, &[w12], seed).unwrap().to_string(), "w(1,2)");
        }
        assert_eq!(randomized_normalize(&s, &[], 0).unwrap().to_string(), "1");
    }

    #[test]
    fn y_smallest_case() {
        let s = ebe(1, 2);
        let y = naive_theorem_y(&s).unwrap();
        assert_eq!(y, eval_str("w(1,2)*w(2,3)*w'(1,3) - w(1,2)*w(1,3)*w'(2,3)", &s).unwrap());
        assert_eq!(theorem_product(&s).unwrap(), y.scalar_multiply(-2).unwrap());
    }

    #[test]
    fn y_matches_product_up_to_power_of_two() {
        for (n, m) in [(1, 3), (2, 2), (2, 3)] {
            let s = ebe(n, m);
            let y = naive_theorem_y(&s).unwrap();
            assert!(!y.is_zero());
            let scale = (-2i64).pow(n);
            assert_eq!(theorem_product(&s).unwrap(), y.scalar_multiply(scale).unwrap(), "n={n} m={m}");
        }
    }

    #[test]
    fn witness_shape() {
        let s = ebe(1, 2);
        assert_eq!(witness_monomial(&s).unwrap().to_string(), "w(1,2)*w(1,3)*w'(2,3)");
        let s = ebe(2, 4);
        assert_eq!(
            witness_monomial(&s).unwrap().to_string(),
            "w(1,2)*w(2,3)*w(2,4)*w(1,5)*w(1,6)*w'(2,5)*w'(1,6)"
        );
    }
}
