use std::collections::BTreeMap;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::point::RayPoint;

use super::gamma::OrbitStructure;
use super::{
    centralizes, restrict, wreath_generators, CentralizerDescription, FixedFactor, FpLabel,
    FreeAbelianFactor, HoughtonFactor, WreathFactor,
};

pub fn centralizer_infinite(q: &Element) -> Result<CentralizerDescription> {
    let orbits = OrbitStructure::new(q)?;
    let candidates: Vec<RayPoint> = orbits.table_points().map(|(p, _)| p).collect();
    let fixed = fixed_factor(q, &candidates, |p| orbits.is_fixed(p));
    let k = match &fixed {
        FixedFactor::Houghton(h) => h.rank(),
        FixedFactor::FiniteSymmetric { .. } => 0,
    };
    let desc = CentralizerDescription {
        arity: q.arity(),
        fixed,
        free: Some(free_factor(&orbits)?),
        wreath: cycle_classes(&orbits)
            .iter()
            .map(|class| cycle_wreath(&orbits, class))
            .collect::<Result<_>>()?,
        fp: FpLabel::houghton_rank(k),
    };
    desc.check_bounds()?;
    Ok(desc)
}

/// The factor on the fixed set. `candidates` must contain every point that is either
/// outside the fixed set on a ray of translation zero, or inside it on any other ray.
pub(crate) fn fixed_factor(
    q: &Element,
    candidates: &[RayPoint],
    in_fixed: impl Fn(RayPoint) -> bool,
) -> FixedFactor {
    let n = q.arity();
    let rays: Vec<usize> = (1..=n).filter(|&x| q.shift_on(x) == 0).collect();
    let extras: Vec<RayPoint> = candidates
        .iter()
        .copied()
        .filter(|p| q.shift_on(p.ray) != 0 && in_fixed(*p))
        .collect();
    if rays.is_empty() {
        let mut points = extras;
        points.sort();
        points.dedup();
        return FixedFactor::FiniteSymmetric { points };
    }
    let holes = rays
        .iter()
        .map(|&x| {
            candidates
                .iter()
                .filter(|p| p.ray == x && !in_fixed(**p))
                .map(|p| p.index)
                .collect()
        })
        .collect();
    FixedFactor::Houghton(HoughtonFactor::new(n, rays, holes, extras))
}

pub(crate) fn free_factor(orbits: &OrbitStructure) -> Result<FreeAbelianFactor> {
    let components = orbits.graph.components.clone();
    let generators = (0..components.len())
        .map(|c| orbits.component_generator(c))
        .collect::<Result<_>>()?;
    Ok(FreeAbelianFactor {
        generators,
        components,
    })
}

/// Finite cycles grouped by length; each group lists cycle indices. Groups are ordered
/// by their least point.
fn cycle_classes(orbits: &OrbitStructure) -> Vec<Vec<usize>> {
    let mut by_len: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, c) in orbits.cycles.iter().enumerate() {
        by_len.entry(c.len()).or_default().push(k);
    }
    let mut classes: Vec<Vec<usize>> = by_len.into_values().collect();
    classes.sort_by_key(|cls| orbits.cycles[cls[0]][0]);
    classes
}

fn cycle_wreath(orbits: &OrbitStructure, class: &[usize]) -> Result<WreathFactor> {
    let q = &orbits.q;
    let d = orbits.cycles[class[0]].len();
    let powers: Vec<Element> = (0..d as i64).map(|j| q.pow(j)).collect();
    let transversals: Vec<Vec<(RayPoint, Element)>> = class
        .iter()
        .map(|&k| {
            orbits.cycles[k]
                .iter()
                .zip(&powers)
                .map(|(&p, x)| (p, x.clone()))
                .collect()
        })
        .collect();
    let mut points: Vec<RayPoint> = class
        .iter()
        .flat_map(|&k| orbits.cycles[k].iter().copied())
        .collect();
    points.sort();
    Ok(WreathFactor {
        weyl_order: d,
        weyl_generators: vec![(0..d).map(|i| (i + 1) % d).collect()],
        r: class.len(),
        points,
        orbit_representatives: class.iter().map(|&k| orbits.cycles[k][0]).collect(),
        generators: wreath_generators(q.arity(), &transversals, std::slice::from_ref(q))?,
    })
}

/// Coordinates of a centralizing element in the direct product decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizingCoordinates {
    /// One exponent per component of Γ, on the free generators.
    pub exponents: Vec<i64>,
    pub generators: Vec<Element>,
    /// `c` with the free part removed; supported off the infinite orbits.
    pub residual: Element,
    /// The residual on the fixed set.
    pub fixed_part: Element,
    /// The residual on each finite-cycle class, in class order.
    pub wreath_parts: Vec<Element>,
}

impl CentralizingCoordinates {
    pub fn reconstruct(&self) -> Result<Element> {
        let mut acc = self.fixed_part.clone();
        for part in &self.wreath_parts {
            acc = acc.compose(part)?;
        }
        for (g, &e) in self.generators.iter().zip(&self.exponents) {
            acc = acc.compose(&g.pow(e))?;
        }
        Ok(acc)
    }
}

pub fn decompose_centralizing(c: &Element, q: &Element) -> Result<CentralizingCoordinates> {
    if c.arity() != q.arity() {
        return Err(Error::ArityMismatch {
            left: c.arity(),
            right: q.arity(),
        });
    }
    let orbits = OrbitStructure::new(q)?;
    if !centralizes(c, q) {
        return Err(Error::NotCentralizing);
    }
    let free = free_factor(&orbits)?;
    let mut exponents = Vec::new();
    let mut residual = c.clone();
    for (g, comp) in free.generators.iter().zip(&free.components) {
        let x = comp[0];
        let (mc, mg) = (c.shift_on(x), g.shift_on(x));
        if mc % mg != 0 {
            return Err(Error::Internal(format!(
                "translation {mc} on ray {x} is not a multiple of {mg}"
            )));
        }
        let e = mc / mg;
        exponents.push(e);
        residual = residual.compose(&g.pow(-e))?;
    }
    let moves_infinite_orbit = (1..=q.arity())
        .any(|x| q.shift_on(x) != 0 && residual.shift_on(x) != 0)
        || residual
            .exceptional()
            .iter()
            .any(|&(p, t)| p != t && orbits.component_of(p).is_some())
        || orbits
            .table_points()
            .any(|(p, _)| orbits.component_of(p).is_some() && residual.apply(p) != p);
    if moves_infinite_orbit {
        return Err(Error::Internal("residual acts on an infinite orbit".into()));
    }
    let floor = orbits.thresholds().to_vec();
    let fixed_part = restrict(
        &residual,
        &floor,
        |x| q.shift_on(x) == 0,
        |p| orbits.is_fixed(p),
    )?;
    let wreath_parts = cycle_classes(&orbits)
        .iter()
        .map(|class| {
            restrict(
                &residual,
                &floor,
                |_| false,
                |p| orbits.cycle_of(p).is_some_and(|k| class.contains(&k)),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let coords = CentralizingCoordinates {
        exponents,
        generators: free.generators,
        residual,
        fixed_part,
        wreath_parts,
    };
    if coords.reconstruct()? != *c {
        return Err(Error::Internal("decomposition does not reconstruct".into()));
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::{commute, FpLevel};

    fn pt(i: usize, x: usize) -> RayPoint {
        RayPoint::new(i, x)
    }

    fn g(n: usize) -> Element {
        Element::ray_shift(n, 2, 1).unwrap()
    }

    #[test]
    fn centralizer_of_g() {
        let d = centralizer_infinite(&g(2)).unwrap();
        assert_eq!(d.fixed, FixedFactor::FiniteSymmetric { points: vec![] });
        assert_eq!(d.free_rank(), 1);
        assert_eq!(d.free.as_ref().unwrap().generators, vec![g(2)]);
        assert!(d.wreath.is_empty());
        assert_eq!(d.fp.fp_up_to, FpLevel::Infinity);
    }

    #[test]
    fn centralizer_of_g_in_h3() {
        let d = centralizer_infinite(&g(3)).unwrap();
        assert_eq!(d.houghton_rank(), Some(1));
        assert_eq!(d.rays_j(), vec![3]);
        assert_eq!(d.free_rank(), 1);
        assert_eq!(d.fp.label, "not FP_1");
    }

    #[test]
    fn finite_cycle_gives_wreath_factor() {
        let t = Element::transposition(3, pt(0, 3), pt(1, 3)).unwrap();
        let q = g(3).compose(&t).unwrap();
        let d = centralizer_infinite(&q).unwrap();
        assert_eq!(d.wreath.len(), 1);
        assert_eq!(d.wreath[0].weyl_order, 2);
        assert_eq!(d.wreath[0].r, 1);
        assert_eq!(d.wreath[0].generators, vec![t]);
        match &d.fixed {
            FixedFactor::Houghton(h) => assert_eq!(h.holes(), &[vec![0, 1]]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generators_centralize_and_commute() {
        let c3 = Element::from_cycles(
            4,
            &[
                vec![pt(0, 3), pt(1, 3), pt(2, 3)],
                vec![pt(0, 4), pt(1, 4), pt(2, 4)],
            ],
        )
        .unwrap();
        let q = Element::ray_shift(4, 2, 1)
            .unwrap()
            .pow(2)
            .compose(&c3)
            .unwrap();
        let d = centralizer_infinite(&q).unwrap();
        assert_eq!(d.wreath[0].weyl_order, 3);
        assert_eq!(d.wreath[0].r, 2);
        let factors = d.factor_generators().unwrap();
        for (i, f) in factors.iter().enumerate() {
            for x in f {
                assert!(centralizes(x, &q), "{x}");
                for other in &factors[i + 1..] {
                    for y in other {
                        assert!(commute(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let q = g(2);
        let cd = decompose_centralizing(&q.pow(3), &q).unwrap();
        assert_eq!(cd.exponents, vec![3]);
        assert!(cd.residual.is_identity());
        let cd = decompose_centralizing(&Element::identity(2).unwrap(), &q).unwrap();
        assert_eq!(cd.exponents, vec![0]);
        assert!(cd.residual.is_identity());

        let t = Element::transposition(3, pt(0, 3), pt(1, 3)).unwrap();
        let c = t.compose(&g(3).pow(2)).unwrap();
        let cd = decompose_centralizing(&c, &g(3)).unwrap();
        assert_eq!(cd.exponents, vec![2]);
        assert_eq!(cd.residual, t);
        assert_eq!(cd.fixed_part, t);

        let tau = Element::transposition(2, pt(0, 1), pt(1, 1)).unwrap();
        assert_eq!(
            decompose_centralizing(&tau, &q).unwrap_err(),
            Error::NotCentralizing
        );
    }

    #[test]
    fn decompose_uses_the_root_of_a_power() {
        let q = g(2).pow(2);
        let cd = decompose_centralizing(&g(2), &q).unwrap();
        assert_eq!(cd.exponents, vec![1]);
        assert_eq!(cd.reconstruct().unwrap(), g(2));
    }
}
