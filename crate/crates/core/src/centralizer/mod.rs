//! Centralizers of finite subgroups, infinite-order elements and virtually cyclic
//! subgroups as direct products of a Houghton (or finite symmetric) factor on the
//! fixed set, a free abelian factor, and wreath factors on finite isotropy classes.

mod finite;
mod gamma;
mod infinite;
mod vc;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::point::RayPoint;
use crate::subgroup::FiniteSubgroup;

pub use finite::centralizer_finite;
pub use gamma::{component_generator, free_generator, gamma, GammaEdge, GammaGraph};
pub use infinite::{centralizer_infinite, decompose_centralizing, CentralizingCoordinates};
pub use vc::{centralizer_vc, VcInput};

/// Anything with a finite list of generators to commute with.
pub trait Generated {
    fn arity(&self) -> usize;
    fn generator_list(&self) -> Vec<&Element>;
}

impl Generated for Element {
    fn arity(&self) -> usize {
        Element::arity(self)
    }
    fn generator_list(&self) -> Vec<&Element> {
        vec![self]
    }
}

impl Generated for FiniteSubgroup {
    fn arity(&self) -> usize {
        FiniteSubgroup::arity(self)
    }
    fn generator_list(&self) -> Vec<&Element> {
        self.generators().iter().collect()
    }
}

/// Whether `c` commutes with every generator of `target`. Mixed arity is `false`.
pub fn centralizes<T: Generated + ?Sized>(c: &Element, target: &T) -> bool {
    c.arity() == target.arity() && target.generator_list().into_iter().all(|h| commute(c, h))
}

pub(crate) fn commute(a: &Element, b: &Element) -> bool {
    match (a.compose(b), b.compose(a)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

/// `⟨q_1⟩, …, ⟨q_count⟩` where `q_i` swaps `(2j,1)` and `(2j+1,1)` for `j < i`.
pub fn quasi_ufp0_witnesses(arity: usize, count: usize) -> Result<Vec<FiniteSubgroup>> {
    (1..=count)
        .map(|i| {
            let cycles: Vec<Vec<RayPoint>> = (0..i)
                .map(|j| vec![RayPoint::new(2 * j, 1), RayPoint::new(2 * j + 1, 1)])
                .collect();
            let q = Element::from_cycles(arity, &cycles)?;
            FiniteSubgroup::closure(arity, &[q])
        })
        .collect()
}

/// `e` on the points selected by `keep`, identity elsewhere. `floor` bounds the region
/// beyond which `keep` is constant on every ray; translation survives only on rays in
/// `translating`.
pub(crate) fn restrict(
    e: &Element,
    floor: &[usize],
    translating: impl Fn(usize) -> bool,
    keep: impl Fn(RayPoint) -> bool,
) -> Result<Element> {
    let n = e.arity();
    let shift: Vec<i64> = (1..=n)
        .map(|x| if translating(x) { e.shift_on(x) } else { 0 })
        .collect();
    let z: Vec<usize> = e
        .thresholds()
        .iter()
        .zip(floor)
        .map(|(&a, &b)| a.max(b))
        .collect();
    Element::from_fn(shift, &z, |p| if keep(p) { e.apply(p) } else { p })
}

/// Order-preserving identification of a fixed set `S^Q` with `N × {1..k}`.
///
/// The `k`-th fixed point of the `j`-th ray of `J` goes to `(k, j)`. Fixed points on
/// rays outside `J` are finitely many; they are placed first on the first ray of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoughtonFactor {
    arity: usize,
    rays: Vec<usize>,
    holes: Vec<Vec<usize>>,
    extras: Vec<RayPoint>,
}

impl HoughtonFactor {
    /// `holes[j]` lists the indices on ray `rays[j]` that are not in the fixed set.
    pub(crate) fn new(
        arity: usize,
        rays: Vec<usize>,
        mut holes: Vec<Vec<usize>>,
        mut extras: Vec<RayPoint>,
    ) -> Self {
        assert!(!rays.is_empty());
        for h in &mut holes {
            h.sort_unstable();
            h.dedup();
        }
        extras.sort();
        HoughtonFactor {
            arity,
            rays,
            holes,
            extras,
        }
    }

    pub fn rank(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn holes(&self) -> &[Vec<usize>] {
        &self.holes
    }

    pub fn extras(&self) -> &[RayPoint] {
        &self.extras
    }

    /// Eventual offset on each ray of `J`: `(i, x) ↦ (i - offset, j)` for large `i`.
    pub fn offsets(&self) -> Vec<i64> {
        (0..self.rank())
            .map(|j| {
                let extra = if j == 0 { self.extras.len() as i64 } else { 0 };
                self.holes[j].len() as i64 - extra
            })
            .collect()
    }

    pub fn to_factor(&self, p: RayPoint) -> Option<RayPoint> {
        if let Ok(k) = self.extras.binary_search(&p) {
            return Some(RayPoint::new(k, 1));
        }
        let j = self.rays.iter().position(|&x| x == p.ray)?;
        let holes = &self.holes[j];
        if holes.binary_search(&p.index).is_ok() {
            return None;
        }
        let below = holes.partition_point(|&h| h < p.index);
        let extra = if j == 0 { self.extras.len() } else { 0 };
        Some(RayPoint::new(p.index - below + extra, j + 1))
    }

    pub fn from_factor(&self, p: RayPoint) -> RayPoint {
        let j = p.ray - 1;
        let mut k = p.index;
        if j == 0 {
            if k < self.extras.len() {
                return self.extras[k];
            }
            k -= self.extras.len();
        }
        // the k-th index on the ray that is not a hole
        let mut index = k;
        for &h in &self.holes[j] {
            if h <= index {
                index += 1;
            } else {
                break;
            }
        }
        RayPoint::new(index, self.rays[j])
    }

    /// The element of `H_n` acting as `h ∈ H_k` through the identification, and as the
    /// identity off the fixed set.
    pub fn embed(&self, h: &Element) -> Result<Element> {
        if h.arity() != self.rank() {
            return Err(Error::ArityMismatch {
                left: self.rank(),
                right: h.arity(),
            });
        }
        let mut shift = vec![0i64; self.arity];
        let mut z = vec![0usize; self.arity];
        for p in &self.extras {
            z[p.ray - 1] = z[p.ray - 1].max(p.index + 1);
        }
        let hz = h.thresholds();
        for (j, &x) in self.rays.iter().enumerate() {
            let m = h.shift_on(j + 1);
            shift[x - 1] = m;
            let last_hole = self.holes[j].last().map_or(0, |&i| i + 1);
            z[x - 1] = last_hole
                + hz[j]
                + self.extras.len()
                + self.holes[j].len()
                + m.unsigned_abs() as usize;
        }
        Element::from_fn(shift, &z, |p| match self.to_factor(p) {
            Some(f) => self.from_factor(h.apply(f)),
            None => p,
        })
    }

    /// Images of the standard generators of `H_k`: the ray shifts into ray 1 and one
    /// transposition on ray 1. `H_1` is not finitely generated and gets none.
    pub fn generators(&self) -> Result<Vec<Element>> {
        let k = self.rank();
        if k < 2 {
            return Ok(Vec::new());
        }
        let mut gens = Vec::new();
        for x in 2..=k {
            gens.push(self.embed(&Element::ray_shift(k, x, 1)?)?);
        }
        gens.push(self.embed(&Element::transposition(
            k,
            RayPoint::new(0, 1),
            RayPoint::new(1, 1),
        )?)?);
        Ok(gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedFactor {
    Houghton(HoughtonFactor),
    /// The symmetric group on a finite fixed set, possibly empty.
    FiniteSymmetric {
        points: Vec<RayPoint>,
    },
}

impl FixedFactor {
    pub fn generators(&self, arity: usize) -> Result<Vec<Element>> {
        match self {
            FixedFactor::Houghton(h) => h.generators(),
            FixedFactor::FiniteSymmetric { points } => {
                let mut gens = Vec::new();
                if points.len() >= 2 {
                    gens.push(Element::transposition(arity, points[0], points[1])?);
                }
                if points.len() >= 3 {
                    gens.push(Element::from_cycles(arity, std::slice::from_ref(points))?);
                }
                Ok(gens)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAbelianFactor {
    /// One generator per component of Γ, in component order.
    pub generators: Vec<Element>,
    pub components: Vec<Vec<usize>>,
}

impl FreeAbelianFactor {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// `W ≀ Sym_r` acting on one isotropy class `S_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathFactor {
    pub weyl_order: usize,
    /// The Weyl group as permutations of the cosets `Q/Q_a`.
    pub weyl_generators: Vec<Vec<usize>>,
    pub r: usize,
    pub points: Vec<RayPoint>,
    /// One point per orbit, each with isotropy exactly `Q_a`.
    pub orbit_representatives: Vec<RayPoint>,
    pub generators: Vec<Element>,
}

impl WreathFactor {
    /// `weyl_order^r · r!`, saturating.
    pub fn order(&self) -> u128 {
        let w = self.weyl_order as u128;
        (1..=self.r as u128).fold(1u128, |acc, k| acc.saturating_mul(w).saturating_mul(k))
    }
}

/// Wreath generators for an orbit family. `orbits[k]` maps each point of the `k`-th
/// orbit to the element `x` with `x·s_k` equal to it; `weyl_reps` are normalizer
/// elements acting on the first orbit by `x s_1 ↦ x n s_1`.
pub(crate) fn wreath_generators(
    arity: usize,
    orbits: &[Vec<(RayPoint, Element)>],
    weyl_reps: &[Element],
) -> Result<Vec<Element>> {
    let s1 = orbits[0][0].0;
    let mut gens = Vec::new();
    for n in weyl_reps {
        let ns1 = n.apply(s1);
        let pairs: Vec<(RayPoint, RayPoint)> = orbits[0]
            .iter()
            .map(|(p, x)| (*p, x.apply(ns1)))
            .filter(|(p, t)| p != t)
            .collect();
        gens.push(Element::from_mapping(arity, &pairs)?);
    }
    let r = orbits.len();
    let move_orbits = |perm: &dyn Fn(usize) -> usize| -> Result<Element> {
        let mut pairs = Vec::new();
        for (k, orbit) in orbits.iter().enumerate() {
            let target = orbits[perm(k)][0].0;
            for (p, x) in orbit {
                let t = x.apply(target);
                if *p != t {
                    pairs.push((*p, t));
                }
            }
        }
        Element::from_mapping(arity, &pairs)
    };
    if r >= 2 {
        gens.push(move_orbits(&|k| match k {
            0 => 1,
            1 => 0,
            _ => k,
        })?);
    }
    if r >= 3 {
        gens.push(move_orbits(&|k| (k + 1) % r)?);
    }
    Ok(gens)
}

/// Upper finiteness level: `FP_level` holds, or every level holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpLevel {
    Level(usize),
    Infinity,
}

impl Serialize for FpLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FpLevel::Level(k) => s.serialize_u64(*k as u64),
            FpLevel::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for FpLevel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "inf" => Ok(FpLevel::Infinity),
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|k| FpLevel::Level(k as usize))
                .ok_or_else(|| serde::de::Error::custom("expected a natural number")),
            other => Err(serde::de::Error::custom(format!(
                "expected a natural number or \"inf\", got {other}"
            ))),
        }
    }
}

impl fmt::Display for FpLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpLevel::Level(k) => write!(f, "{k}"),
            FpLevel::Infinity => write!(f, "inf"),
        }
    }
}

/// Finiteness type of a centralizer, as stated rather than derived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpLabel {
    pub fp_up_to: FpLevel,
    pub fails_at: Option<usize>,
    pub label: String,
}

impl FpLabel {
    /// Centralizers of finite subgroups of `H_n`.
    pub fn finite(n: usize) -> Self {
        FpLabel {
            fp_up_to: FpLevel::Level(n - 1),
            fails_at: Some(n),
            label: format!("FP_{} and not FP_{}", n - 1, n),
        }
    }

    /// Centralizers with a Houghton factor of rank `k`, or a finite one when `k = 0`.
    pub fn houghton_rank(k: usize) -> Self {
        match k {
            0 => FpLabel {
                fp_up_to: FpLevel::Infinity,
                fails_at: None,
                label: "FP_inf".into(),
            },
            1 => FpLabel {
                fp_up_to: FpLevel::Level(0),
                fails_at: Some(1),
                label: "not FP_1".into(),
            },
            k => FpLabel {
                fp_up_to: FpLevel::Level(k - 1),
                fails_at: Some(k),
                label: format!("FP_{} and not FP_{}", k - 1, k),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct CentralizerDescription {
    pub arity: usize,
    pub fixed: FixedFactor,
    /// Absent for finite subgroups.
    pub free: Option<FreeAbelianFactor>,
    /// Ordered by least point of the class.
    pub wreath: Vec<WreathFactor>,
    pub fp: FpLabel,
}

impl CentralizerDescription {
    pub fn houghton_rank(&self) -> Option<usize> {
        match &self.fixed {
            FixedFactor::Houghton(h) => Some(h.rank()),
            FixedFactor::FiniteSymmetric { .. } => None,
        }
    }

    pub fn rays_j(&self) -> Vec<usize> {
        match &self.fixed {
            FixedFactor::Houghton(h) => h.rays().to_vec(),
            FixedFactor::FiniteSymmetric { .. } => Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free.as_ref().map_or(0, FreeAbelianFactor::rank)
    }

    /// Generators grouped by direct factor: fixed part, free part, then wreath factors.
    pub fn factor_generators(&self) -> Result<Vec<Vec<Element>>> {
        let mut out = vec![self.fixed.generators(self.arity)?];
        if let Some(free) = &self.free {
            out.push(free.generators.clone());
        }
        out.extend(self.wreath.iter().map(|w| w.generators.clone()));
        Ok(out)
    }

    /// The rank bounds on `k` and `r`.
    pub fn check_bounds(&self) -> Result<()> {
        let n = self.arity;
        let fail = |what: String| Err(Error::Internal(format!("bound violated: {what}")));
        match (&self.free, self.houghton_rank()) {
            (None, Some(k)) if k == n => Ok(()),
            (None, _) => fail(format!("finite case needs Houghton rank {n}")),
            (Some(free), k) => {
                let r = free.rank();
                let kk = k.unwrap_or(0);
                if n < 2 || kk > n - 2 {
                    return fail(format!("k = {kk} > n - 2"));
                }
                let cap = match k {
                    Some(k) => (n - k) / 2,
                    None => n / 2,
                };
                if r < 1 || r > cap {
                    return fail(format!("r = {r} outside 1..={cap}"));
                }
                Ok(())
            }
        }
    }

    pub fn to_json(&self) -> DescriptionJson {
        DescriptionJson {
            houghton_rank: self.houghton_rank(),
            finite_sym_size: match &self.fixed {
                FixedFactor::FiniteSymmetric { points } => Some(points.len()),
                FixedFactor::Houghton(_) => None,
            },
            rays_j: self.rays_j(),
            free_rank: self.free_rank(),
            free_generators: self
                .free
                .as_ref()
                .map(|f| f.generators.clone())
                .unwrap_or_default(),
            wreath: self
                .wreath
                .iter()
                .map(|w| WreathJson {
                    weyl_order: w.weyl_order,
                    r: w.r,
                    points: w.points.clone(),
                })
                .collect(),
            fp: self.fp.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptionJson {
    pub houghton_rank: Option<usize>,
    pub finite_sym_size: Option<usize>,
    #[serde(rename = "rays_J")]
    pub rays_j: Vec<usize>,
    pub free_rank: usize,
    pub free_generators: Vec<Element>,
    pub wreath: Vec<WreathJson>,
    pub fp: FpLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathJson {
    pub weyl_order: usize,
    pub r: usize,
    pub points: Vec<RayPoint>,
}
