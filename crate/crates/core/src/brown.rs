//! Brown's monoid `M` of injective eventually-translation maps of `S`, ordered by
//! `α ≤ β ⟺ β = tα` for a translation `t`, with `H_n` acting on the right.
//!
//! Maps here compose left to right: `mcompose(a, b)` applies `a` first. So `tα` is
//! `mcompose(t, α)` and the right action is `α·h = mcompose(α, h)`. This is the same
//! convention as [`Element::compose`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::map::EventualMap;
use crate::point::{RayPoint, TranslationVector};
use crate::subgroup::FiniteSubgroup;

/// Exponent vector `(d_1, …, d_n)` of the translation `t_1^{d_1} ⋯ t_n^{d_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TranslationWord(pub Vec<u64>);

impl TranslationWord {
    pub fn zero(arity: usize) -> Self {
        TranslationWord(vec![0; arity])
    }

    pub fn generator(arity: usize, ray: usize) -> Self {
        let mut d = vec![0; arity];
        d[ray - 1] = 1;
        TranslationWord(d)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn concat(&self, other: &TranslationWord) -> TranslationWord {
        TranslationWord(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_map(&self) -> InjectiveMonoidMap {
        InjectiveMonoidMap(
            EventualMap::translation(self.0.iter().map(|&d| d as i64).collect())
                .expect("non-negative translation"),
        )
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InjectiveMonoidMap(EventualMap);

impl InjectiveMonoidMap {
    pub fn identity(arity: usize) -> Result<Self> {
        Ok(InjectiveMonoidMap(EventualMap::translation(vec![
            0;
            arity
        ])?))
    }

    pub fn from_table(
        arity: usize,
        shift: Vec<i64>,
        thresholds: &[usize],
        exceptional: &[(RayPoint, RayPoint)],
    ) -> Result<Self> {
        let map = EventualMap::from_table(arity, shift, thresholds, exceptional)?;
        map.validate(false)?;
        Ok(InjectiveMonoidMap(map))
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    pub fn apply(&self, p: RayPoint) -> RayPoint {
        self.0.apply(p)
    }

    pub fn phi(&self) -> TranslationVector {
        self.0.phi()
    }

    /// `|S \ Sα|`, equal to the sum of the translation amounts.
    pub fn deficit(&self) -> u64 {
        self.0.shift().iter().sum::<i64>() as u64
    }

    /// `S \ Sα`, ascending.
    pub fn complement(&self) -> Vec<RayPoint> {
        self.0.complement()
    }

    pub fn thresholds(&self) -> Vec<usize> {
        self.0.thresholds()
    }

    /// Right action `α·h`.
    pub fn act(&self, h: &Element) -> Result<Self> {
        mcompose(self, &h.into())
    }

    pub fn is_fixed_by(&self, q: &FiniteSubgroup) -> Result<bool> {
        for h in q.generators() {
            if self.act(h)? != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> MonoidMapJson {
        MonoidMapJson {
            n: self.arity(),
            m: self.0.shift().to_vec(),
            z: self.thresholds(),
            exc: self.0.exceptional().collect(),
            deficit: Some(self.deficit()),
        }
    }
}

impl From<&Element> for InjectiveMonoidMap {
    fn from(e: &Element) -> Self {
        InjectiveMonoidMap(e.0.clone())
    }
}

impl std::fmt::Debug for InjectiveMonoidMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Vertex(m={}", self.phi())?;
        for (p, q) in self.0.exceptional() {
            write!(f, ", {p}->{q}")?;
        }
        write!(f, ")")
    }
}

/// The element encoding plus `"deficit"`, which is checked when present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidMapJson {
    pub n: usize,
    pub m: Vec<i64>,
    pub z: Vec<usize>,
    pub exc: Vec<(RayPoint, RayPoint)>,
    #[serde(default)]
    pub deficit: Option<u64>,
}

impl TryFrom<MonoidMapJson> for InjectiveMonoidMap {
    type Error = Error;
    fn try_from(j: MonoidMapJson) -> Result<Self> {
        let map = InjectiveMonoidMap::from_table(j.n, j.m, &j.z, &j.exc)?;
        match j.deficit {
            Some(d) if d != map.deficit() => Err(Error::Malformed(format!(
                "deficit {d} does not match the translation sum {}",
                map.deficit()
            ))),
            _ => Ok(map),
        }
    }
}

impl Serialize for InjectiveMonoidMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for InjectiveMonoidMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        InjectiveMonoidMap::try_from(MonoidMapJson::deserialize(d)?)
            .map_err(serde::de::Error::custom)
    }
}

/// `a` first, then `b`.
pub fn mcompose(a: &InjectiveMonoidMap, b: &InjectiveMonoidMap) -> Result<InjectiveMonoidMap> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            left: a.arity(),
            right: b.arity(),
        });
    }
    Ok(InjectiveMonoidMap(a.0.then(&b.0)))
}

/// `Some(d)` with `b = t^d a` when `a ≤ b`.
pub fn le(a: &InjectiveMonoidMap, b: &InjectiveMonoidMap) -> Option<TranslationWord> {
    if a.arity() != b.arity() {
        return None;
    }
    let d = &b.phi() - &a.phi();
    if d.entries().iter().any(|&x| x < 0) {
        return None;
    }
    let word = TranslationWord(d.entries().iter().map(|&x| x as u64).collect());
    let candidate = mcompose(&word.to_map(), a).ok()?;
    (candidate == *b).then_some(word)
}

/// `|S \ Sα|!`, the order of the vertex stabilizer.
pub fn stabilizer_order(alpha: &InjectiveMonoidMap) -> Result<u128> {
    (1..=alpha.deficit() as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k).ok_or(Error::Overflow))
}

/// The translation `t_1^{z_1} ⋯ t_n^{z_n}`, `z_x` the largest threshold on ray `x` over
/// the elements of `Q`; every `Q`-element fixes its image pointwise.
pub fn q_fixed_vertex(q: &FiniteSubgroup) -> InjectiveMonoidMap {
    let mut z = vec![0u64; q.arity()];
    for e in q.elements() {
        for (zx, t) in z.iter_mut().zip(e.thresholds()) {
            *zx = (*zx).max(t as u64);
        }
    }
    TranslationWord(z).to_map()
}

/// A `Q`-fixed common upper bound `c a m = c b n`, with the translations `a, b`
/// equalizing `φ` and `c` chosen minimal on each ray.
pub fn upper_bound(
    m: &InjectiveMonoidMap,
    n: &InjectiveMonoidMap,
    q: &FiniteSubgroup,
) -> Result<InjectiveMonoidMap> {
    if m.arity() != n.arity() || m.arity() != q.arity() {
        return Err(Error::ArityMismatch {
            left: m.arity(),
            right: if m.arity() != n.arity() {
                n.arity()
            } else {
                q.arity()
            },
        });
    }
    if !m.is_fixed_by(q)? || !n.is_fixed_by(q)? {
        return Err(Error::NotFixed);
    }
    let d = &m.phi() - &n.phi();
    let a = TranslationWord(d.entries().iter().map(|&x| (-x).max(0) as u64).collect());
    let b = TranslationWord(d.entries().iter().map(|&x| x.max(0) as u64).collect());
    let am = mcompose(&a.to_map(), m)?;
    let bn = mcompose(&b.to_map(), n)?;
    let (za, zb) = (am.thresholds(), bn.thresholds());
    let c = TranslationWord(
        (1..=m.arity())
            .map(|x| {
                let top = za[x - 1].max(zb[x - 1]);
                // least j with agreement at every index from j on
                (0..top)
                    .rev()
                    .find(|&i| am.apply(RayPoint::new(i, x)) != bn.apply(RayPoint::new(i, x)))
                    .map_or(0, |i| i as u64 + 1)
            })
            .collect(),
    );
    let v = mcompose(&c.to_map(), &am)?;
    debug_assert_eq!(v, mcompose(&c.to_map(), &bn)?);
    Ok(v)
}

/// `φ(q) ≠ 0`: then `α·q` has translation vector `φ(α) + φ(q) ≠ φ(α)`, so `q` fixes
/// no vertex.
pub fn infinite_obstruction(q: &Element) -> bool {
    !q.phi().is_zero()
}

/// The vertices `t^d α` with `deg d ≤ depth` and the covering relations among them.
#[derive(Clone, Debug)]
pub struct Cone {
    pub vertices: Vec<(TranslationWord, InjectiveMonoidMap)>,
    /// `(lower, upper, ray)`: `upper = t_ray · lower`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl Cone {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n");
        for (i, (w, _)) in self.vertices.iter().enumerate() {
            let label: Vec<String> = w.0.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "  v{i} [label=\"t^({})\"];", label.join(","));
        }
        for &(lo, hi, ray) in &self.edges {
            let _ = writeln!(out, "  v{lo} -> v{hi} [label=\"t_{ray}\"];");
        }
        out.push_str("}\n");
        out
    }
}

pub fn cone(alpha: &InjectiveMonoidMap, depth: u64) -> Result<Cone> {
    let n = alpha.arity();
    let mut words = vec![TranslationWord::zero(n)];
    let mut frontier = 0;
    while frontier < words.len() {
        let w = words[frontier].clone();
        frontier += 1;
        if w.degree() == depth {
            continue;
        }
        // extend only on rays at or after the last nonzero entry, so each word appears once
        let start = w.0.iter().rposition(|&d| d > 0).unwrap_or(0);
        for y in start..n {
            let mut next = w.clone();
            next.0[y] += 1;
            words.push(next);
        }
    }
    words.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    let vertices: Vec<(TranslationWord, InjectiveMonoidMap)> = words
        .into_iter()
        .map(|w| {
            let v = mcompose(&w.to_map(), alpha)?;
            Ok((w, v))
        })
        .collect::<Result<_>>()?;
    let index: std::collections::HashMap<&TranslationWord, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, (w, _))| (w, i))
        .collect();
    let mut edges = Vec::new();
    for (i, (w, _)) in vertices.iter().enumerate() {
        for y in 1..=n {
            if let Some(&j) = index.get(&w.concat(&TranslationWord::generator(n, y))) {
                edges.push((i, j, y));
            }
        }
    }
    Ok(Cone { vertices, edges })
}
