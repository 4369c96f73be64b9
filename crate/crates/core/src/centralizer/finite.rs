use crate::element::Element;
use crate::error::Result;
use crate::point::RayPoint;
use crate::subgroup::{partition, weyl, FiniteSubgroup, IsotropyPartition};

use super::{
    wreath_generators, CentralizerDescription, FixedFactor, FpLabel, HoughtonFactor, WreathFactor,
};

pub fn centralizer_finite(q: &FiniteSubgroup) -> Result<CentralizerDescription> {
    let n = q.arity();
    let part = partition(q);
    let holes: Vec<Vec<usize>> = (1..=n)
        .map(|x| {
            q.moved_points()
                .iter()
                .filter(|p| p.ray == x)
                .map(|p| p.index)
                .collect()
        })
        .collect();
    let fixed = FixedFactor::Houghton(HoughtonFactor::new(n, (1..=n).collect(), holes, Vec::new()));
    let desc = CentralizerDescription {
        arity: n,
        fixed,
        free: None,
        wreath: wreath_factors(q, &part)?,
        fp: FpLabel::finite(n),
    };
    desc.check_bounds()?;
    Ok(desc)
}

/// One wreath factor per isotropy class of a finite group.
pub(crate) fn wreath_factors(
    q: &FiniteSubgroup,
    part: &IsotropyPartition,
) -> Result<Vec<WreathFactor>> {
    part.classes
        .iter()
        .map(|class| {
            let w = weyl(q, &class.isotropy)?;
            let orbits: Vec<Vec<(RayPoint, Element)>> = class
                .orbit_representatives
                .iter()
                .map(|&s| transversal(q, s))
                .collect();
            Ok(WreathFactor {
                weyl_order: w.order,
                generators: wreath_generators(q.arity(), &orbits, &w.generator_representatives)?,
                weyl_generators: w.generators,
                r: class.multiplicity,
                points: class.points.clone(),
                orbit_representatives: class.orbit_representatives.clone(),
            })
        })
        .collect()
}

/// Each point of the orbit of `s` with some `x ∈ Q` sending `s` to it.
fn transversal(q: &FiniteSubgroup, s: RayPoint) -> Vec<(RayPoint, Element)> {
    let mut out: Vec<(RayPoint, Element)> = Vec::new();
    for x in q.elements() {
        let p = x.apply(s);
        if !out.iter().any(|(t, _)| *t == p) {
            out.push((p, x.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::{centralizes, commute};

    fn pt(i: usize, x: usize) -> RayPoint {
        RayPoint::new(i, x)
    }

    fn tau() -> Element {
        Element::transposition(2, pt(0, 1), pt(1, 1)).unwrap()
    }

    fn sigma() -> Element {
        Element::transposition(2, pt(0, 1), pt(0, 2)).unwrap()
    }

    #[test]
    fn centralizer_of_a_transposition() {
        let q = FiniteSubgroup::closure(2, &[tau()]).unwrap();
        let d = centralizer_finite(&q).unwrap();
        assert_eq!(d.houghton_rank(), Some(2));
        assert_eq!(d.wreath.len(), 1);
        assert_eq!(d.wreath[0].weyl_order, 2);
        assert_eq!(d.wreath[0].r, 1);
        assert_eq!(d.fp.label, "FP_1 and not FP_2");
        assert_eq!(d.wreath[0].generators, vec![tau()]);
    }

    #[test]
    fn centralizer_of_trivial_group() {
        let d = centralizer_finite(&FiniteSubgroup::trivial(3).unwrap()).unwrap();
        assert_eq!(d.houghton_rank(), Some(3));
        assert!(d.wreath.is_empty());
        assert!(d.free.is_none());
    }

    #[test]
    fn centralizer_of_sym3() {
        let q = FiniteSubgroup::closure(2, &[tau(), sigma()]).unwrap();
        let d = centralizer_finite(&q).unwrap();
        assert_eq!(d.wreath.len(), 1);
        assert_eq!(d.wreath[0].weyl_order, 1);
        assert_eq!(d.wreath[0].r, 1);
        assert!(d.wreath[0].generators.is_empty());
    }

    #[test]
    fn wreath_generators_centralize_and_commute_across_factors() {
        // three orbits with isotropy <b>, and one orbit with isotropy <a>
        let a = Element::from_cycles(
            3,
            &[
                vec![pt(0, 1), pt(1, 1)],
                vec![pt(0, 2), pt(1, 2)],
                vec![pt(0, 3), pt(1, 3)],
            ],
        )
        .unwrap();
        let b = Element::transposition(3, pt(2, 1), pt(3, 1)).unwrap();
        let q = FiniteSubgroup::closure(3, &[a, b]).unwrap();
        let d = centralizer_finite(&q).unwrap();
        let factors = d.factor_generators().unwrap();
        for gens in &factors {
            for g in gens {
                assert!(centralizes(g, &q), "{g}");
            }
        }
        for (i, f) in factors.iter().enumerate() {
            for other in &factors[i + 1..] {
                for x in f {
                    for y in other {
                        assert!(commute(x, y));
                    }
                }
            }
        }
        let orders: Vec<u128> = d.wreath.iter().map(|w| w.order()).collect();
        assert_eq!(orders, vec![48, 2]);
    }
}
