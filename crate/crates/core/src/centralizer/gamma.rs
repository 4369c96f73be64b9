//! Orbit structure of an infinite-order element and its graph Γ on rays.
//!
//! Below its thresholds `q` is given by a table; above them it translates. A table
//! point whose forward orbit leaves the table lands on a ray with positive translation
//! and stays there, and symmetrically for backward orbits and negative translation. So
//! every orbit trace is bounded by the table size.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::point::RayPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PointKind {
    Fixed,
    Cycle(usize),
    Infinite { back: usize, fwd: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaEdge {
    /// Ray that the orbit leaves through under `q⁻¹`.
    pub from: usize,
    /// Ray that the orbit leaves through under `q`.
    pub to: usize,
    pub witness: RayPoint,
    pub threshold: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaGraph {
    pub n: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<GammaEdge>,
    /// Path components, each sorted, ordered by least ray.
    pub components: Vec<Vec<usize>>,
}

impl GammaGraph {
    pub fn component_of(&self, ray: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&ray))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph gamma {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -- {} [label=\"s={}, N={}\"];",
                e.from, e.to, e.witness, e.threshold
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Classification of the points of `S` under `⟨q⟩`.
#[derive(Clone, Debug)]
pub(crate) struct OrbitStructure {
    pub(crate) q: Element,
    pub(crate) inv: Element,
    thresholds: Vec<usize>,
    kinds: HashMap<RayPoint, PointKind>,
    /// Finite non-trivial cycles, each starting at its least point, sorted.
    pub(crate) cycles: Vec<Vec<RayPoint>>,
    pub(crate) graph: GammaGraph,
}

impl OrbitStructure {
    pub(crate) fn new(q: &Element) -> Result<Self> {
        if q.has_finite_order() {
            return Err(Error::FiniteOrder);
        }
        let n = q.arity();
        let inv = q.invert();
        let thresholds = q.thresholds();
        let in_table = |p: RayPoint| p.index < thresholds[p.ray - 1];
        let bound: usize = thresholds.iter().sum::<usize>() + 1;

        let mut kinds = HashMap::new();
        let mut cycles: Vec<Vec<RayPoint>> = Vec::new();
        let mut edges: Vec<GammaEdge> = Vec::new();
        let table: Vec<RayPoint> = (1..=n)
            .flat_map(|x| (0..thresholds[x - 1]).map(move |i| RayPoint::new(i, x)))
            .collect();
        for &p in &table {
            if kinds.contains_key(&p) {
                continue;
            }
            let mut path = vec![p];
            let mut cur = q.apply(p);
            while cur != p && in_table(cur) {
                path.push(cur);
                cur = q.apply(cur);
                assert!(path.len() <= bound, "orbit trace exceeded the table size");
            }
            if cur == p {
                let kind = if path.len() == 1 {
                    PointKind::Fixed
                } else {
                    PointKind::Cycle(cycles.len())
                };
                for &s in &path {
                    kinds.insert(s, kind);
                }
                if path.len() > 1 {
                    cycles.push(path);
                }
                continue;
            }
            let fwd = cur.ray;
            let fwd_steps = path.len();
            let mut back_path = Vec::new();
            let mut cur = inv.apply(p);
            while in_table(cur) {
                back_path.push(cur);
                cur = inv.apply(cur);
                assert!(
                    back_path.len() <= bound,
                    "orbit trace exceeded the table size"
                );
            }
            let back = cur.ray;
            debug_assert!(q.shift_on(fwd) > 0 && q.shift_on(back) < 0);
            let kind = PointKind::Infinite { back, fwd };
            for &s in path.iter().chain(&back_path) {
                kinds.insert(s, kind);
            }
            if !edges
                .iter()
                .any(|e| (e.from, e.to) == (back, fwd) || (e.from, e.to) == (fwd, back))
            {
                edges.push(GammaEdge {
                    from: back,
                    to: fwd,
                    witness: p,
                    threshold: fwd_steps.max(back_path.len() + 1),
                });
            }
        }
        cycles.sort();
        let cycle_index: BTreeMap<RayPoint, usize> = cycles
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().map(move |&s| (s, k)))
            .collect();
        for (s, kind) in kinds.iter_mut() {
            if let PointKind::Cycle(k) = kind {
                *k = cycle_index[s];
            }
        }

        let vertices: Vec<usize> = (1..=n).filter(|&x| q.shift_on(x) != 0).collect();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for e in &edges {
            let a = find(&mut parent, e.from);
            let b = find(&mut parent, e.to);
            parent[a.max(b)] = a.min(b);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &vertices {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().push(v);
        }
        let mut components: Vec<Vec<usize>> = groups.into_values().collect();
        components.sort();

        Ok(OrbitStructure {
            q: q.clone(),
            inv,
            thresholds,
            kinds,
            cycles,
            graph: GammaGraph {
                n,
                vertices,
                edges,
                components,
            },
        })
    }

    pub(crate) fn thresholds(&self) -> &[usize] {
        &self.thresholds
    }

    pub(crate) fn kind(&self, p: RayPoint) -> PointKind {
        if let Some(&k) = self.kinds.get(&p) {
            return k;
        }
        let m = self.q.shift_on(p.ray);
        match m.signum() {
            0 => PointKind::Fixed,
            1 => PointKind::Infinite {
                back: 0,
                fwd: p.ray,
            },
            _ => PointKind::Infinite {
                back: p.ray,
                fwd: 0,
            },
        }
    }

    pub(crate) fn is_fixed(&self, p: RayPoint) -> bool {
        self.kind(p) == PointKind::Fixed
    }

    pub(crate) fn cycle_of(&self, p: RayPoint) -> Option<usize> {
        match self.kind(p) {
            PointKind::Cycle(k) => Some(k),
            _ => None,
        }
    }

    /// Component index of the infinite orbit through `p`.
    pub(crate) fn component_of(&self, p: RayPoint) -> Option<usize> {
        match self.kind(p) {
            PointKind::Infinite { back, fwd } => self.graph.component_of(fwd.max(back)),
            _ => None,
        }
    }

    /// Table points of `q` with their kinds, ascending. Every finite-cycle point, every
    /// moved point of a ray with zero translation and every fixed point of a ray with
    /// nonzero translation is among them.
    pub(crate) fn table_points(&self) -> impl Iterator<Item = (RayPoint, PointKind)> + '_ {
        let mut v: Vec<_> = self.kinds.iter().map(|(&p, &k)| (p, k)).collect();
        v.sort_by_key(|&(p, _)| p);
        v.into_iter()
    }

    /// `q` on the infinite orbits of one component, identity elsewhere.
    pub(crate) fn component_restriction(&self, component: usize) -> Result<Element> {
        let rays = &self.graph.components[component];
        let shift: Vec<i64> = (1..=self.q.arity())
            .map(|x| {
                if rays.contains(&x) {
                    self.q.shift_on(x)
                } else {
                    0
                }
            })
            .collect();
        Element::from_fn(shift, &self.thresholds, |p| {
            if self.component_of(p) == Some(component) {
                self.q.apply(p)
            } else {
                p
            }
        })
    }

    /// The generator of the infinite cyclic group of elements that commute with `q`
    /// and act only on the orbits of one component, oriented like `q` there.
    pub(crate) fn component_generator(&self, component: usize) -> Result<Element> {
        let rays = &self.graph.components[component];
        let mu: Vec<i64> = rays.iter().map(|&x| self.q.shift_on(x)).collect();
        let g = mu
            .iter()
            .fold(0i64, |acc, &m| num_integer::gcd(acc, m.abs()));
        let mut divisors: Vec<i64> = (1..=g).filter(|d| g % d == 0).collect();
        divisors.reverse();
        for d in divisors {
            if let Some(e) = self.try_generator(component, d) {
                return Ok(e);
            }
        }
        Err(Error::Internal(
            "no generator found for a Γ component".into(),
        ))
    }

    fn try_generator(&self, component: usize, d: i64) -> Option<Element> {
        let n = self.q.arity();
        let rays = &self.graph.components[component];
        let mut shift = vec![0i64; n];
        let mut z = self.thresholds.clone();
        for &x in rays {
            let t = self.q.shift_on(x) / d;
            shift[x - 1] = t;
            z[x - 1] += usize::try_from(-t).unwrap_or(0);
        }
        let candidate = Element::from_fn(shift.clone(), &z, |p| {
            if self.component_of(p) != Some(component) {
                return p;
            }
            // walk into a positive tail, translate there, walk back
            let mut cur = p;
            let mut steps = 0usize;
            while !(self.q.shift_on(cur.ray) > 0 && cur.index >= self.thresholds[cur.ray - 1]) {
                cur = self.q.apply(cur);
                steps += 1;
            }
            let mut img = RayPoint::new((cur.index as i64 + shift[cur.ray - 1]) as usize, cur.ray);
            for _ in 0..steps {
                img = self.inv.apply(img);
            }
            img
        })
        .ok()?;
        let commutes = candidate.compose(&self.q).ok()? == self.q.compose(&candidate).ok()?;
        commutes.then_some(candidate)
    }
}

pub fn gamma(q: &Element) -> Result<GammaGraph> {
    Ok(OrbitStructure::new(q)?.graph)
}

/// `q_{[x]}`: agrees with `q` on the infinite orbits of the component containing
/// `ray` and is the identity elsewhere.
pub fn component_generator(q: &Element, ray: usize) -> Result<Element> {
    let orbits = OrbitStructure::new(q)?;
    let c = orbits
        .graph
        .component_of(ray)
        .ok_or(Error::UnknownComponent(ray))?;
    orbits.component_restriction(c)
}

/// Generator of the cyclic group of centralizing elements living on the component of
/// `ray`. Equals `q_{[x]}` unless `q_{[x]}` is a proper power.
pub fn free_generator(q: &Element, ray: usize) -> Result<Element> {
    let orbits = OrbitStructure::new(q)?;
    let c = orbits
        .graph
        .component_of(ray)
        .ok_or(Error::UnknownComponent(ray))?;
    orbits.component_generator(c)
}
