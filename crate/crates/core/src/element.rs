//! Elements of Houghton's group `H_n`: bijections of `N × {1..n}` that are eventually a
//! translation on every ray.
//!
//! Composition follows the left-to-right convention: `a.compose(&b)` applies `a` first,
//! then `b`. Conjugation `h q h⁻¹` in the usual left-action notation is
//! [`Element::conjugate_by`], which sends `h(s)` to `h(q(s))`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::EventualMap;
use crate::point::{RayPoint, TranslationVector};

/// A canonical element of `H_n`. Structural equality is group equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) EventualMap);

/// Order of an element: finite exactly when the translation vector vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// Multiset of non-trivial cycle lengths, stored ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.retain(|&l| l >= 2);
        lengths.sort_unstable();
        CycleType(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    /// Number of cycles of length `len`.
    pub fn count(&self, len: usize) -> usize {
        self.0.iter().filter(|&&l| l == len).count()
    }
}

impl Element {
    pub fn identity(arity: usize) -> Result<Self> {
        Ok(Element(EventualMap::translation(vec![0; arity])?))
    }

    /// Builds an element from its encoding. The table may be non-canonical: missing
    /// entries below a threshold follow the translation rule and the result is
    /// re-minimized. Rejects anything that is not a bijection with a diagnostic.
    pub fn from_table(
        arity: usize,
        shift: Vec<i64>,
        thresholds: &[usize],
        exceptional: &[(RayPoint, RayPoint)],
    ) -> Result<Self> {
        let map = EventualMap::from_table(arity, shift, thresholds, exceptional)?;
        map.validate(true)?;
        Ok(Element(map))
    }

    /// A finite-support permutation moving exactly the listed points as listed.
    pub fn from_mapping(arity: usize, pairs: &[(RayPoint, RayPoint)]) -> Result<Self> {
        Element::from_table(arity, vec![0; arity], &vec![0; arity], pairs)
    }

    /// Product of disjoint cycles, each written `[s_1, s_2, ..]` with `s_k ↦ s_{k+1}`.
    pub fn from_cycles(arity: usize, cycles: &[Vec<RayPoint>]) -> Result<Self> {
        let mut pairs = Vec::new();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                pairs.push((p, cycle[(k + 1) % cycle.len()]));
            }
        }
        Element::from_mapping(arity, &pairs)
    }

    pub fn transposition(arity: usize, a: RayPoint, b: RayPoint) -> Result<Self> {
        Element::from_mapping(arity, &[(a, b), (b, a)])
    }

    /// The shift that moves points down ray `from`, across `(0,from) ↦ (0,to)`, and up
    /// ray `to`. Its translation vector is `+1` on `to` and `-1` on `from`.
    pub fn ray_shift(arity: usize, from: usize, to: usize) -> Result<Self> {
        if from == to || !(1..=arity).contains(&from) || !(1..=arity).contains(&to) {
            return Err(Error::Malformed(format!(
                "ray shift needs two distinct rays in 1..={arity}, got {from} and {to}"
            )));
        }
        let mut shift = vec![0; arity];
        shift[to - 1] = 1;
        shift[from - 1] = -1;
        let mut z = vec![0; arity];
        z[from - 1] = 1;
        Element::from_table(
            arity,
            shift,
            &z,
            &[(RayPoint::new(0, from), RayPoint::new(0, to))],
        )
    }

    /// Builds an element from a function that is translation by `shift` at and beyond
    /// `thresholds`. The function is only evaluated below the thresholds.
    pub(crate) fn from_fn(
        shift: Vec<i64>,
        thresholds: &[usize],
        f: impl FnMut(RayPoint) -> RayPoint,
    ) -> Result<Self> {
        let z: Vec<usize> = thresholds
            .iter()
            .zip(&shift)
            .map(|(&z, &m)| z.max(usize::try_from(-m).unwrap_or(0)))
            .collect();
        let map = EventualMap::from_fn(shift, &z, f);
        map.validate(true)?;
        Ok(Element(map))
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    pub fn apply(&self, p: RayPoint) -> RayPoint {
        self.0.apply(p)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Element) -> Result<Element> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        Ok(Element(self.0.then(&other.0)))
    }

    pub fn invert(&self) -> Element {
        Element(self.0.inverse())
    }

    pub fn pow(&self, exponent: i64) -> Element {
        let mut base = if exponent < 0 {
            self.invert()
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc = Element(EventualMap::translation(vec![0; self.arity()]).unwrap());
        while e > 0 {
            if e & 1 == 1 {
                acc = Element(acc.0.then(&base.0));
            }
            base = Element(base.0.then(&base.0));
            e >>= 1;
        }
        acc
    }

    /// `h q h⁻¹` in left-action notation: the element sending `h(s)` to `h(q(s))`.
    pub fn conjugate_by(&self, h: &Element) -> Result<Element> {
        h.invert().compose(self)?.compose(h)
    }

    pub fn phi(&self) -> TranslationVector {
        self.0.phi()
    }

    pub fn shift_on(&self, ray: usize) -> i64 {
        self.0.shift()[ray - 1]
    }

    /// Canonical thresholds `z_x`: beyond them the element is translation on each ray.
    pub fn thresholds(&self) -> Vec<usize> {
        self.0.thresholds()
    }

    /// The canonical exceptional table, in (ray, index) order.
    pub fn exceptional(&self) -> Vec<(RayPoint, RayPoint)> {
        self.0.exceptional().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.table_size() == 0 && self.phi().is_zero()
    }

    pub fn has_finite_order(&self) -> bool {
        self.phi().is_zero()
    }

    /// Moved points of a finite-order element, ascending; `None` for infinite order.
    pub fn support(&self) -> Option<Vec<RayPoint>> {
        if !self.has_finite_order() {
            return None;
        }
        Some(
            self.0
                .exceptional()
                .filter(|(p, q)| p != q)
                .map(|(p, _)| p)
                .collect(),
        )
    }

    /// Disjoint non-trivial cycles of a finite-order element. Each cycle starts at its
    /// least point and cycles are sorted by that point.
    pub fn cycles(&self) -> Result<Vec<Vec<RayPoint>>> {
        let support = self.support().ok_or(Error::InfiniteOrder)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut cycles = Vec::new();
        for p in support {
            if seen.contains(&p) {
                continue;
            }
            let mut cycle = vec![p];
            seen.insert(p);
            let mut cur = self.apply(p);
            while cur != p {
                seen.insert(cur);
                cycle.push(cur);
                cur = self.apply(cur);
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }

    pub fn order(&self) -> Order {
        match self.cycles() {
            Ok(cycles) => Order::Finite(
                cycles
                    .iter()
                    .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64))),
            ),
            Err(_) => Order::Infinite,
        }
    }

    pub fn cycle_type(&self) -> Result<CycleType> {
        Ok(CycleType::new(
            self.cycles()?.iter().map(Vec::len).collect(),
        ))
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            n: self.arity(),
            m: self.0.shift().to_vec(),
            z: self.thresholds(),
            exc: self.exceptional(),
        }
    }
}

/// Finds `h` with `h q1 h⁻¹ = q2`, or `None` when the cycle types differ.
///
/// Cycles of equal length are matched in order of their least point, and matched cycles
/// are aligned at their least points. Points moved by only one of the two elements are
/// paired in ascending order so that `h` is a finite-support bijection.
pub fn conjugator(q1: &Element, q2: &Element) -> Result<Option<Element>> {
    if q1.arity() != q2.arity() {
        return Err(Error::ArityMismatch {
            left: q1.arity(),
            right: q2.arity(),
        });
    }
    let c1 = q1.cycles()?;
    let c2 = q2.cycles()?;
    let type_of = |cs: &[Vec<RayPoint>]| CycleType::new(cs.iter().map(Vec::len).collect());
    if type_of(&c1) != type_of(&c2) {
        return Ok(None);
    }
    type Cycles<'a> = Vec<&'a Vec<RayPoint>>;
    let mut by_len: BTreeMap<usize, (Cycles, Cycles)> = BTreeMap::new();
    for c in &c1 {
        by_len.entry(c.len()).or_default().0.push(c);
    }
    for c in &c2 {
        by_len.entry(c.len()).or_default().1.push(c);
    }
    let mut h: BTreeMap<RayPoint, RayPoint> = BTreeMap::new();
    for (left, right) in by_len.values() {
        for (a, b) in left.iter().zip(right) {
            for (&p, &q) in a.iter().zip(b.iter()) {
                h.insert(p, q);
            }
        }
    }
    let domain: std::collections::BTreeSet<RayPoint> = h.keys().copied().collect();
    let range: std::collections::BTreeSet<RayPoint> = h.values().copied().collect();
    let sources: Vec<RayPoint> = range.difference(&domain).copied().collect();
    let targets: Vec<RayPoint> = domain.difference(&range).copied().collect();
    for (p, q) in sources.into_iter().zip(targets) {
        h.insert(p, q);
    }
    let pairs: Vec<(RayPoint, RayPoint)> = h.into_iter().collect();
    let h = Element::from_mapping(q1.arity(), &pairs)?;
    debug_assert_eq!(q1.conjugate_by(&h).ok().as_ref(), Some(q2));
    Ok(Some(h))
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(n={}, m={}", self.arity(), self.phi())?;
        for (p, q) in self.0.exceptional() {
            write!(f, ", {p}->{q}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// JSON encoding `{"n": 2, "m": [1,-1], "z": [0,1], "exc": [[[0,2],[0,1]]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub n: usize,
    pub m: Vec<i64>,
    pub z: Vec<usize>,
    pub exc: Vec<(RayPoint, RayPoint)>,
}

impl TryFrom<ElementJson> for Element {
    type Error = Error;
    fn try_from(json: ElementJson) -> Result<Element> {
        Element::from_table(json.n, json.m, &json.z, &json.exc)
    }
}

impl From<Element> for ElementJson {
    fn from(e: Element) -> ElementJson {
        e.to_json()
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = ElementJson::deserialize(d)?;
        Element::try_from(json).map_err(serde::de::Error::custom)
    }
}
