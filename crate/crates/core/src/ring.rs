//! Exact arithmetic in the integral cohomology ring of `E x_B E` and its
//! subrings for `E`, `B` and the fibre `X`.
//!
//! For odd `k` every generator `w(i,j)` has even degree `k - 1`, so the ring is
//! commutative and generated by square-zero classes subject to the three-term
//! relation
//!
//! ```text
//! w(i,r) w(j,r) = w(i,j) (w(j,r) - w(i,r))      for i < j < r
//! ```
//!
//! in the unprimed family and, separately, in the primed family (where
//! `w'(i,j) = w(i,j)` whenever `j <= m`). A monomial is in canonical form when,
//! within each of its three parts, no two factors share a top index. Those
//! monomials form a free basis, so an [`Element`] is a sparse map from canonical
//! monomials to nonzero integers and equality is literal map equality.

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::space::{Space, SpaceSpec};

pub(crate) type TermMap = FxHashMap<Monomial, i64>;

/// Unprimed classes come from the first copy of `E`, primed from the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Unprimed,
    Primed,
}

/// The three factors of a basis monomial `w_{I1 J1} w_{I2 J2} w'_{I3 J3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// Tops in `1..=m`: classes pulled back from the base.
    Base = 0,
    /// Unprimed classes with top in `m+1..=m+n`.
    Fibre = 1,
    /// Primed classes with top in `m+1..=m+n`.
    PrimedFibre = 2,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::Base, Part::Fibre, Part::PrimedFibre];

    fn side(self) -> Side {
        match self {
            Part::PrimedFibre => Side::Primed,
            _ => Side::Unprimed,
        }
    }
}

/// A single degree `k - 1` class, stored with `i < j` and with primed base-range
/// classes folded onto their unprimed twins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    i: u32,
    j: u32,
    side: Side,
    part: Part,
}

impl Generator {
    /// Validates `(i, j, side)` against `spec` and returns the canonical
    /// generator together with the sign picked up from `w(i,j) = -w(j,i)`.
    pub fn new(spec: &SpaceSpec, i: u32, j: u32, side: Side) -> Result<(i64, Generator)> {
        let max = spec.points();
        for index in [i, j] {
            if index < 1 || index > max {
                return Err(Error::IndexOutOfRange { index, max });
            }
        }
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        let (sign, lo, hi) = if i < j { (1, i, j) } else { (-1, j, i) };
        let m = spec.m();
        let part = match (hi <= m, side) {
            (true, _) => Part::Base,
            (false, Side::Unprimed) => Part::Fibre,
            (false, Side::Primed) => Part::PrimedFibre,
        };
        match spec.space() {
            Space::BaseB if part != Part::Base => {
                return Err(Error::SpaceMismatch(format!(
                    "w({lo},{hi}) is not a class of the base ring (indices must be <= m = {m})"
                )))
            }
            Space::TotalE if part == Part::PrimedFibre => {
                return Err(Error::SpaceMismatch(format!(
                    "w'({lo},{hi}) is not a class of the total-space ring"
                )))
            }
            Space::FibreX if part != Part::Fibre => {
                return Err(Error::SpaceMismatch(format!(
                    "{} is not a class of the fibre ring (need j > m, unprimed)",
                    Generator::raw(lo, hi, part)
                )))
            }
            _ => {}
        }
        Ok((sign, Generator::raw(lo, hi, part)))
    }

    pub(crate) fn raw(i: u32, j: u32, part: Part) -> Generator {
        Generator { i, j, side: part.side(), part }
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn part(&self) -> Part {
        self.part
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Unprimed => write!(f, "w({},{})", self.i, self.j),
            Side::Primed => write!(f, "w'({},{})", self.i, self.j),
        }
    }
}

/// A canonical basis monomial.
///
/// Each part is packed into a `u64` holding one 4-bit slot per top index `j`;
/// the slot stores the lower index `i` of the unique factor `w(i,j)` with that
/// top, or 0 when absent. This makes the "top indices strictly increasing"
/// invariant structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    parts: [u64; 3],
}

impl Monomial {
    /// The empty monomial, i.e. the unit class.
    pub const fn one() -> Monomial {
        Monomial { parts: [0; 3] }
    }

    /// Builds a monomial from explicit `(i, j)` lists, rejecting anything that
    /// is not already canonical for `spec`.
    pub fn from_parts(
        spec: &SpaceSpec,
        base: &[(u32, u32)],
        fibre: &[(u32, u32)],
        primed: &[(u32, u32)],
    ) -> Result<Monomial> {
        let mut mono = Monomial::one();
        for (part, pairs) in [(Part::Base, base), (Part::Fibre, fibre), (Part::PrimedFibre, primed)] {
            let mut last_top = 0;
            for &(i, j) in pairs {
                let side = part.side();
                let (sign, g) = Generator::new(spec, i, j, side)?;
                if sign != 1 || g.part != part {
                    return Err(Error::SpaceMismatch(format!(
                        "{} does not belong to the {:?} part",
                        Generator::raw(i, j, part),
                        part
                    )));
                }
                if j <= last_top {
                    return Err(Error::SpaceMismatch(format!(
                        "top indices in the {part:?} part must be strictly increasing"
                    )));
                }
                last_top = j;
                mono = mono.with(part, j, i);
            }
        }
        Ok(mono)
    }

    #[inline]
    pub(crate) fn slot(&self, part: Part, top: u32) -> u32 {
        ((self.parts[part as usize] >> (4 * top)) & 0xF) as u32
    }

    #[inline]
    pub(crate) fn with(mut self, part: Part, top: u32, low: u32) -> Monomial {
        let p = &mut self.parts[part as usize];
        *p = (*p & !(0xF << (4 * top))) | ((low as u64) << (4 * top));
        self
    }

    /// Union of two monomials whose parts share no top index.
    #[inline]
    pub(crate) fn disjoint_union(self, other: Monomial) -> Monomial {
        let mut parts = self.parts;
        for (p, q) in parts.iter_mut().zip(other.parts) {
            *p |= q;
        }
        Monomial { parts }
    }

    #[inline]
    pub(crate) fn without(self, part: Part, top: u32) -> Monomial {
        self.with(part, top, 0)
    }

    /// `(i, j)` pairs of one part, by increasing `j`.
    pub fn pairs(&self, part: Part) -> Vec<(u32, u32)> {
        let bits = self.parts[part as usize];
        (1..16)
            .filter_map(|j| {
                let i = ((bits >> (4 * j)) & 0xF) as u32;
                (i != 0).then_some((i, j))
            })
            .collect()
    }

    pub fn base_part(&self) -> Vec<(u32, u32)> {
        self.pairs(Part::Base)
    }

    pub fn fibre_part(&self) -> Vec<(u32, u32)> {
        self.pairs(Part::Fibre)
    }

    pub fn primed_part(&self) -> Vec<(u32, u32)> {
        self.pairs(Part::PrimedFibre)
    }

    /// Factors in print order: base, unprimed fibre, primed fibre.
    pub fn generators(&self) -> Vec<Generator> {
        Part::ALL
            .iter()
            .flat_map(|&part| self.pairs(part).into_iter().map(move |(i, j)| Generator::raw(i, j, part)))
            .collect()
    }

    /// Number of factors; the cohomological degree is `grade * (k - 1)`.
    pub fn grade(&self) -> u32 {
        self.parts
            .iter()
            .map(|&bits| {
                let nonzero = (bits | bits >> 1 | bits >> 2 | bits >> 3) & 0x1111_1111_1111_1111;
                nonzero.count_ones()
            })
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.parts == [0; 3]
    }
}

/// Lexicographic comparison of two packed parts read as `(j, i)` lists.
fn cmp_part(a: u64, b: u64) -> Ordering {
    for j in 1..16u32 {
        let sa = (a >> (4 * j)) & 0xF;
        let sb = (b >> (4 * j)) & 0xF;
        if sa == sb {
            continue;
        }
        let rest = |bits: u64| if j >= 15 { 0 } else { bits >> (4 * (j + 1)) };
        return match (sa, sb) {
            (0, _) => {
                // a moves on to a larger top, or has ended
                if rest(a) == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (_, 0) => {
                if rest(b) == 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            _ => sa.cmp(&sb),
        };
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts
            .iter()
            .zip(other.parts.iter())
            .map(|(&a, &b)| cmp_part(a, b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (n, g) in self.generators().iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// Number of generator factors of `mono`.
pub fn grade_of(mono: &Monomial) -> u32 {
    mono.grade()
}

#[inline]
fn accumulate(out: &mut TermMap, mono: Monomial, coef: i64) -> Result<()> {
    use std::collections::hash_map::Entry;
    match out.entry(mono) {
        Entry::Vacant(v) => {
            v.insert(coef);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().checked_add(coef).ok_or(Error::IntegerOverflow)?;
            if sum == 0 {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
    Ok(())
}

/// Rewrites `mono * w(low, top)` (in `part`) into canonical monomials.
///
/// At most one factor of `mono` can clash with the new one: the factor in the
/// same part with the same top. Equal factors give zero; otherwise the
/// three-term relation replaces the pair by terms whose tops are strictly
/// smaller, and the new `w(a,b)` factor is pushed in recursively.
struct Normalizer {
    m: u32,
    kill_base: bool,
}

impl Normalizer {
    fn new(spec: &SpaceSpec) -> Normalizer {
        Normalizer { m: spec.m(), kill_base: spec.space() == Space::FibreX }
    }

    fn mul_into(
        &self,
        mono: Monomial,
        part: Part,
        top: u32,
        low: u32,
        coef: i64,
        out: &mut TermMap,
    ) -> Result<()> {
        let present = mono.slot(part, top);
        if present == 0 {
            return accumulate(out, mono.with(part, top, low), coef);
        }
        if present == low {
            return Ok(());
        }
        let (a, b) = if present < low { (present, low) } else { (low, present) };
        let lower_part = if b <= self.m { Part::Base } else { part };
        if lower_part == Part::Base && self.kill_base {
            // base classes restrict to zero on the fibre
            return Ok(());
        }
        let rest = mono.without(part, top);
        let neg = coef.checked_neg().ok_or(Error::IntegerOverflow)?;
        // w(a,r) w(b,r) = w(a,b) w(b,r) - w(a,b) w(a,r)
        self.mul_into(rest.with(part, top, b), lower_part, b, a, coef, out)?;
        self.mul_into(rest.with(part, top, a), lower_part, b, a, neg, out)
    }

    fn mul_terms_by_generator(&self, terms: &TermMap, g: &Generator) -> Result<TermMap> {
        let mut out = TermMap::with_capacity_and_hasher(terms.len() * 2, Default::default());
        for (&mono, &c) in terms {
            self.mul_into(mono, g.part, g.j, g.i, c, &mut out)?;
        }
        Ok(out)
    }
}

/// A sparse integer combination of canonical monomials in a fixed ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    spec: SpaceSpec,
    terms: TermMap,
}

impl Element {
    pub fn zero(spec: SpaceSpec) -> Element {
        Element { spec, terms: TermMap::default() }
    }

    pub fn one(spec: SpaceSpec) -> Element {
        Element::constant(spec, 1)
    }

    pub fn constant(spec: SpaceSpec, c: i64) -> Element {
        Element::from_monomial(spec, Monomial::one(), c)
    }

    /// `c * mono`. The monomial is trusted to be canonical for `spec`.
    pub fn from_monomial(spec: SpaceSpec, mono: Monomial, c: i64) -> Element {
        let mut terms = TermMap::default();
        if c != 0 {
            terms.insert(mono, c);
        }
        Element { spec, terms }
    }

    pub(crate) fn from_terms(spec: SpaceSpec, terms: TermMap) -> Element {
        debug_assert!(terms.values().all(|&c| c != 0));
        Element { spec, terms }
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> i64 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    /// Terms, leading (largest) monomial first.
    pub fn terms(&self) -> Vec<(Monomial, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&m, &c)| (m, c)).collect();
        v.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        v
    }

    /// Largest monomial with its coefficient, `None` for zero.
    pub fn leading_term(&self) -> Option<(Monomial, i64)> {
        self.terms.iter().max_by(|x, y| x.0.cmp(y.0)).map(|(&m, &c)| (m, c))
    }

    /// Unordered term iterator.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    /// Grades present in this element, ascending.
    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.terms.keys().map(Monomial::grade).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpaceMismatch(format!("{} vs {}", self.spec, other.spec)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let (mut acc, small) = if self.len() >= other.len() {
            (self.terms.clone(), &other.terms)
        } else {
            (other.terms.clone(), &self.terms)
        };
        for (&mono, &c) in small {
            accumulate(&mut acc, mono, c)?;
        }
        Ok(Element::from_terms(self.spec, acc))
    }

    pub fn neg(&self) -> Result<Element> {
        self.scalar_multiply(-1)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg()?)
    }

    pub fn scalar_multiply(&self, c: i64) -> Result<Element> {
        if c == 0 {
            return Ok(Element::zero(self.spec));
        }
        let terms = self
            .terms
            .iter()
            .map(|(&mono, &a)| a.checked_mul(c).map(|v| (mono, v)).ok_or(Error::IntegerOverflow))
            .collect::<Result<TermMap>>()?;
        Ok(Element::from_terms(self.spec, terms))
    }

    /// Product with a single (already validated) generator.
    pub fn mul_generator(&self, g: &Generator) -> Result<Element> {
        let norm = Normalizer::new(&self.spec);
        Ok(Element::from_terms(self.spec, norm.mul_terms_by_generator(&self.terms, g)?))
    }

    /// Fully normalized product.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let norm = Normalizer::new(&self.spec);
        // iterate over the shorter side's monomials, pushing their factors
        // one at a time through the longer side
        let (long, short) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut acc = TermMap::default();
        for (mono, c) in short.terms() {
            let mut cur = long.terms.clone();
            for g in mono.generators() {
                cur = norm.mul_terms_by_generator(&cur, &g)?;
            }
            if acc.is_empty() && c == 1 {
                acc = cur;
                continue;
            }
            for (m2, c2) in cur {
                accumulate(&mut acc, m2, c2.checked_mul(c).ok_or(Error::IntegerOverflow)?)?;
            }
        }
        Ok(Element::from_terms(self.spec, acc))
    }

    /// `self^e` by repeated multiplication; `self^0 = 1`.
    pub fn pow(&self, e: u32) -> Result<Element> {
        let mut acc = Element::one(self.spec);
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Element {
    /// Expression syntax, leading term first, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (mono, c)) in self.terms().into_iter().enumerate() {
            let mag = c.unsigned_abs();
            match (n, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (mono.is_one(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{mono}")?,
                (false, _) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({self})", self.spec)
    }
}

/// `+-w(i,j)` (or primed), applying the antisymmetry convention and the
/// identification `w'(i,j) = w(i,j)` for `j <= m`.
pub fn make_generator(spec: &SpaceSpec, i: u32, j: u32, side: Side) -> Result<Element> {
    let (sign, g) = Generator::new(spec, i, j, side)?;
    Element::from_monomial(*spec, Monomial::one(), sign).mul_generator(&g)
}

pub fn add(a: &Element, b: &Element) -> Result<Element> {
    a.add(b)
}

pub fn multiply(a: &Element, b: &Element) -> Result<Element> {
    a.multiply(b)
}

pub fn scalar_multiply(c: i64, a: &Element) -> Result<Element> {
    a.scalar_multiply(c)
}

/// Shorthand used throughout the tests: `w(i,j)` or `w'(i,j)` in `spec`.
pub fn w(spec: &SpaceSpec, i: u32, j: u32) -> Element {
    make_generator(spec, i, j, Side::Unprimed).expect("valid generator")
}

pub fn wp(spec: &SpaceSpec, i: u32, j: u32) -> Element {
    make_generator(spec, i, j, Side::Primed).expect("valid generator")
}
