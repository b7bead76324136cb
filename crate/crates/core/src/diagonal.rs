//! The map `H*(E x_B E) -> H*(E)` induced by the diagonal `e -> (e, e)`.
//!
//! The diagonal repeats the robot coordinates, so it sends both `w(i,j)` and
//! `w'(i,j)` to `w(i,j)`. Being a ring map it is fixed by its values on
//! generators: substitute, then renormalize in the total-space ring.

use crate::error::{Error, Result};
use crate::ring::{make_generator, Element, Side};
use crate::space::{Space, SpaceSpec};

pub fn diagonal_apply(a: &Element) -> Result<Element> {
    let spec = *a.spec();
    if spec.space() != Space::FibreproductEbe {
        return Err(Error::SpaceMismatch(format!(
            "the diagonal map is defined on the fibre product ring, got {spec}"
        )));
    }
    let target = spec.with_space(Space::TotalE);
    let mut out = Element::zero(target);
    for (mono, c) in a.terms() {
        let mut image = Element::constant(target, c);
        for g in mono.generators() {
            // primed factors land on their unprimed twins
            let factor = make_generator(&target, g.i(), g.j(), Side::Unprimed)?;
            image = image.multiply(&factor)?;
        }
        out = out.add(&image)?;
    }
    Ok(out)
}

/// The classes `w(i,j) - w'(i,j)` for `j > m`, ordered by `(j, i)`.
///
/// Pairs with `j <= m` are omitted since there `w'(i,j) = w(i,j)` already.
pub fn kernel_generators(spec: &SpaceSpec) -> Result<Vec<Element>> {
    if spec.space() != Space::FibreproductEbe {
        return Err(Error::SpaceMismatch(format!("kernel generators live in the fibre product ring, got {spec}")));
    }
    let mut out = Vec::new();
    for j in spec.m() + 1..=spec.points() {
        for i in 1..j {
            let d = make_generator(spec, i, j, Side::Unprimed)?.sub(&make_generator(spec, i, j, Side::Primed)?)?;
            debug_assert!(diagonal_apply(&d)?.is_zero());
            out.push(d);
        }
    }
    Ok(out)
}

/// The `(i, j)` pair behind each kernel generator, same order as
/// [`kernel_generators`].
pub fn kernel_pairs(spec: &SpaceSpec) -> Vec<(u32, u32)> {
    (spec.m() + 1..=spec.points()).flat_map(|j| (1..j).map(move |i| (i, j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{w, wp, Part};

    fn is_unprimed(a: &Element) -> bool {
        a.iter().all(|(mono, _)| mono.pairs(Part::PrimedFibre).is_empty())
    }

    fn ebe(n: u32, m: u32) -> SpaceSpec {
        SpaceSpec::fibre_product(n, m, 3).unwrap()
    }

    #[test]
    fn examples() {
        let s = ebe(1, 2);
        let e = s.with_space(Space::TotalE);
        assert!(diagonal_apply(&w(&s, 1, 3).sub(&wp(&s, 1, 3)).unwrap()).unwrap().is_zero());
        assert_eq!(diagonal_apply(&w(&s, 1, 2)).unwrap(), w(&e, 1, 2));
        assert!(diagonal_apply(&w(&s, 1, 3).multiply(&wp(&s, 1, 3)).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn kernel_generator_lists() {
        let s = ebe(1, 2);
        let gens = kernel_generators(&s).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].to_string(), "w(1,3) - w'(1,3)");
        assert_eq!(gens[1].to_string(), "w(2,3) - w'(2,3)");
        assert_eq!(kernel_generators(&ebe(1, 3)).unwrap().len(), 3);
        assert_eq!(kernel_pairs(&ebe(1, 3)), vec![(1, 4), (2, 4), (3, 4)]);
        assert_eq!(kernel_pairs(&ebe(2, 2)), vec![(1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(kernel_generators(&ebe(2, 2)).unwrap().len(), 5);
    }

    #[test]
    fn unprimed_elements_embed_unchanged() {
        let s = ebe(2, 3);
        let e = s.with_space(Space::TotalE);
        let a = w(&s, 1, 2).multiply(&w(&s, 1, 4)).unwrap().multiply(&w(&s, 3, 5)).unwrap();
        assert!(is_unprimed(&a));
        let image = diagonal_apply(&a).unwrap();
        assert_eq!(image.terms(), a.terms());
        assert_eq!(image.spec(), &e);
    }

    #[test]
    fn rejects_other_spaces() {
        let e = ebe(1, 2).with_space(Space::TotalE);
        assert!(matches!(diagonal_apply(&w(&e, 1, 2)), Err(Error::SpaceMismatch(_))));
        assert!(kernel_generators(&e).is_err());
    }
}
