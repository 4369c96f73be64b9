use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::point::RayPoint;
use crate::subgroup::{partition, FiniteSubgroup};

use super::finite::wreath_factors;
use super::gamma::OrbitStructure;
use super::infinite::{fixed_factor, free_factor};
use super::{CentralizerDescription, FixedFactor, FpLabel};

/// A virtually cyclic subgroup `F ⋊ ⟨w⟩` given by generators of the finite normal
/// subgroup `F` and an infinite-order `w` normalizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VcInput {
    pub n: usize,
    pub generators: Vec<Element>,
    pub w: Element,
}

pub fn centralizer_vc(f_gens: &[Element], w: &Element) -> Result<CentralizerDescription> {
    let n = w.arity();
    if w.has_finite_order() {
        return Err(Error::FiniteOrder);
    }
    let f = FiniteSubgroup::closure(n, f_gens).map_err(|e| match e {
        Error::InfiniteOrderGenerator(_) => Error::InfiniteFinitePart,
        other => other,
    })?;
    for x in f.elements() {
        if !f.contains(&x.conjugate_by(w)?) {
            return Err(Error::NotNormalized);
        }
    }
    let orbits = OrbitStructure::new(w)?;

    // Q acts on the finite set X = S_F ∪ (finite w-cycles) through a finite group.
    let cycle_points: Vec<RayPoint> = orbits.cycles.iter().flatten().copied().collect();
    let w_on_x = Element::from_mapping(
        n,
        &cycle_points
            .iter()
            .map(|&p| (p, w.apply(p)))
            .collect::<Vec<_>>(),
    )?;
    let mut gens = f.generators().to_vec();
    gens.push(w_on_x);
    let q_bar = FiniteSubgroup::closure(n, &gens)?;
    let wreath = wreath_factors(&q_bar, &partition(&q_bar))?;

    let candidates: Vec<RayPoint> = orbits
        .table_points()
        .map(|(p, _)| p)
        .chain(f.moved_points().iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let fixed = fixed_factor(w, &candidates, |p| orbits.is_fixed(p) && !f.moves(p));
    let k = match &fixed {
        FixedFactor::Houghton(h) => h.rank(),
        FixedFactor::FiniteSymmetric { .. } => 0,
    };
    let desc = CentralizerDescription {
        arity: n,
        fixed,
        free: Some(free_factor(&orbits)?),
        wreath,
        fp: FpLabel::houghton_rank(k),
    };
    desc.check_bounds()?;
    Ok(desc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::{centralizer_infinite, centralizes, commute};

    fn pt(i: usize, x: usize) -> RayPoint {
        RayPoint::new(i, x)
    }

    #[test]
    fn worked_example() {
        let swap = Element::transposition(3, pt(0, 3), pt(1, 3)).unwrap();
        let w = Element::ray_shift(3, 2, 1).unwrap();
        let d = centralizer_vc(std::slice::from_ref(&swap), &w).unwrap();
        assert_eq!(d.houghton_rank(), Some(1));
        match &d.fixed {
            FixedFactor::Houghton(h) => {
                assert_eq!(h.rays(), &[3]);
                assert_eq!(h.holes(), &[vec![0, 1]]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(d.free_rank(), 1);
        assert_eq!(d.free.as_ref().unwrap().generators, vec![w.clone()]);
        assert_eq!(d.wreath.len(), 1);
        assert_eq!(d.wreath[0].order(), 2);
        assert_eq!(d.wreath[0].points, vec![pt(0, 3), pt(1, 3)]);
        let q = FiniteSubgroup::closure(3, std::slice::from_ref(&swap)).unwrap();
        let factors = d.factor_generators().unwrap();
        for (i, f) in factors.iter().enumerate() {
            for x in f {
                assert!(centralizes(x, &q) && centralizes(x, &w));
                for other in &factors[i + 1..] {
                    for y in other {
                        assert!(commute(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_finite_part_reduces_to_cyclic_case() {
        let t = Element::from_cycles(3, &[vec![pt(0, 3), pt(1, 3), pt(2, 3)]]).unwrap();
        let w = Element::ray_shift(3, 2, 1).unwrap().compose(&t).unwrap();
        let a = centralizer_vc(&[], &w).unwrap().to_json();
        let b = centralizer_infinite(&w).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        let w = Element::ray_shift(3, 2, 1).unwrap();
        let moved = Element::transposition(3, pt(0, 1), pt(0, 3)).unwrap();
        assert_eq!(
            centralizer_vc(&[moved], &w).unwrap_err(),
            Error::NotNormalized
        );
        assert_eq!(
            centralizer_vc(std::slice::from_ref(&w), &w).unwrap_err(),
            Error::InfiniteFinitePart
        );
        let t = Element::transposition(3, pt(0, 3), pt(1, 3)).unwrap();
        assert_eq!(centralizer_vc(&[], &t).unwrap_err(), Error::FiniteOrder);
    }
}
