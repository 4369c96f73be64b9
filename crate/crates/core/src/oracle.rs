//! Brute-force checks on finite truncations `{0..N-1} × {1..n}`.
//!
//! Everything here works on plain permutations of box points obtained by evaluating
//! elements pointwise with `apply`; nothing goes through subgroup closure, partitions or
//! the centralizer decompositions that it is meant to check.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::brown::InjectiveMonoidMap;
use crate::centralizer::CentralizerDescription;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::point::RayPoint;
use crate::subgroup::FiniteSubgroup;

/// Above this many points, enumeration of all permutations gives way to a pruned search.
pub const ENUMERATION_LIMIT: usize = 8;

/// Groups drawn at random are rejected above this order.
pub const RANDOM_GROUP_CAP: usize = 5040;

/// The finite point set `{0..depth-1} × {1..arity}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointBox {
    pub depth: usize,
    pub arity: usize,
}

impl PointBox {
    pub fn new(depth: usize, arity: usize) -> Result<Self> {
        if depth == 0 || arity == 0 {
            return Err(Error::EmptyBox);
        }
        Ok(PointBox { depth, arity })
    }

    /// Ray-major order.
    pub fn points(&self) -> Vec<RayPoint> {
        (1..=self.arity)
            .flat_map(|x| (0..self.depth).map(move |i| RayPoint::new(i, x)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.depth * self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: RayPoint) -> bool {
        p.ray >= 1 && p.ray <= self.arity && p.index < self.depth
    }

    fn index_of(&self, p: RayPoint) -> usize {
        (p.ray - 1) * self.depth + p.index
    }
}

/// `π ∘ a = b ∘ π` wherever `a` is defined; where `a` is undefined `π` must fix the point.
struct Constraint {
    a: Vec<Option<usize>>,
    b: Vec<Option<usize>>,
}

fn partial_perm(
    e: &Element,
    points: &[RayPoint],
    index: impl Fn(RayPoint) -> Option<usize>,
) -> Vec<Option<usize>> {
    points.iter().map(|&p| index(e.apply(p))).collect()
}

fn check(pi: &[usize], constraints: &[Constraint]) -> bool {
    constraints.iter().all(|c| {
        (0..pi.len()).all(|p| match c.a[p] {
            Some(ap) => c.b[pi[p]] == Some(pi[ap]),
            None => pi[p] == p,
        })
    })
}

/// Visits every permutation of `0..k` satisfying the constraints, by Heap's algorithm.
/// Stops early when `visit` returns `false`.
fn enumerate(k: usize, constraints: &[Constraint], mut visit: impl FnMut(&[usize]) -> bool) {
    let mut pi: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    if check(&pi, constraints) && !visit(&pi) {
        return;
    }
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                pi.swap(0, i);
            } else {
                pi.swap(c[i], i);
            }
            if check(&pi, constraints) && !visit(&pi) {
                return;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Depth-first search over partial assignments with constraint propagation.
fn search(k: usize, constraints: &[Constraint], mut visit: impl FnMut(&[usize]) -> bool) {
    struct State<'a> {
        image: Vec<Option<usize>>,
        used: Vec<bool>,
        constraints: &'a [Constraint],
    }
    impl State<'_> {
        fn assign(&mut self, p: usize, v: usize, trail: &mut Vec<usize>) -> bool {
            let mut queue = vec![(p, v)];
            while let Some((p, v)) = queue.pop() {
                match self.image[p] {
                    Some(w) if w == v => continue,
                    Some(_) => return false,
                    None if self.used[v] => return false,
                    None => {}
                }
                self.image[p] = Some(v);
                self.used[v] = true;
                trail.push(p);
                for c in self.constraints {
                    match (c.a[p], c.b[v]) {
                        (Some(ap), Some(bv)) => queue.push((ap, bv)),
                        (None, _) if v == p => {}
                        _ => return false,
                    }
                }
            }
            true
        }
        fn undo(&mut self, trail: &[usize]) {
            for &p in trail {
                let v = self.image[p].take().unwrap();
                self.used[v] = false;
            }
        }
    }
    fn go(st: &mut State<'_>, next: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let k = st.image.len();
        let Some(p) = (next..k).find(|&p| st.image[p].is_none()) else {
            let pi: Vec<usize> = st.image.iter().map(|v| v.unwrap()).collect();
            return visit(&pi);
        };
        for v in 0..k {
            if st.used[v] {
                continue;
            }
            let mut trail = Vec::new();
            let ok = st.assign(p, v, &mut trail);
            let keep_going = !ok || go(st, p + 1, visit);
            st.undo(&trail);
            if !keep_going {
                return false;
            }
        }
        true
    }
    let mut st = State {
        image: vec![None; k],
        used: vec![false; k],
        constraints,
    };
    go(&mut st, 0, &mut visit);
}

fn solve(k: usize, constraints: &[Constraint], visit: impl FnMut(&[usize]) -> bool) {
    if k <= ENUMERATION_LIMIT {
        enumerate(k, constraints, visit)
    } else {
        search(k, constraints, visit)
    }
}

fn require_in_box(e: &Element, bx: &PointBox) -> Result<()> {
    if e.arity() != bx.arity {
        return Err(Error::ArityMismatch {
            left: bx.arity,
            right: e.arity(),
        });
    }
    match e.support() {
        None => Err(Error::InfiniteOrder),
        Some(s) => match s.into_iter().find(|&p| !bx.contains(p)) {
            Some(p) => Err(Error::SupportEscapesBox(p)),
            None => Ok(()),
        },
    }
}

fn box_constraint(a: &Element, b: &Element, bx: &PointBox) -> [Constraint; 2] {
    let pts = bx.points();
    let idx = |p: RayPoint| bx.contains(p).then(|| bx.index_of(p));
    let (ai, bi) = (a.invert(), b.invert());
    [
        Constraint {
            a: partial_perm(a, &pts, idx),
            b: partial_perm(b, &pts, idx),
        },
        Constraint {
            a: partial_perm(&ai, &pts, idx),
            b: partial_perm(&bi, &pts, idx),
        },
    ]
}

/// The order of the centralizer of `Q` in the symmetric group on the box.
pub fn brute_centralizer_order(q: &FiniteSubgroup, bx: &PointBox) -> Result<u128> {
    let mut constraints = Vec::new();
    for g in q.generators() {
        require_in_box(g, bx)?;
        constraints.extend(box_constraint(g, g, bx));
    }
    let mut count = 0u128;
    solve(bx.len(), &constraints, |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// `(#fixed points in box)! · Π weyl_order^r · r!` from a description of `C(Q)`.
pub fn predicted_truncated_order(
    desc: &CentralizerDescription,
    q: &FiniteSubgroup,
    bx: &PointBox,
) -> Result<u128> {
    for g in q.generators() {
        require_in_box(g, bx)?;
    }
    let fixed = bx.points().into_iter().filter(|&p| !q.moves(p)).count() as u128;
    let mut order = (1..=fixed).try_fold(1u128, |acc, k| acc.checked_mul(k));
    for w in &desc.wreath {
        order = order.and_then(|o| o.checked_mul(w.order()));
    }
    order.ok_or(Error::Overflow)
}

/// Whether some permutation of the box conjugates `q1` to `q2`.
pub fn brute_conjugate(q1: &Element, q2: &Element, bx: &PointBox) -> Result<bool> {
    require_in_box(q1, bx)?;
    require_in_box(q2, bx)?;
    let constraints = box_constraint(q1, q2, bx);
    let mut found = false;
    solve(bx.len(), &constraints, |_| {
        found = true;
        false
    });
    Ok(found)
}

/// All permutations supported in the box that commute with `q`, which may have
/// infinite order. Stops after `limit` results.
pub fn box_centralizing_elements(q: &Element, bx: &PointBox, limit: usize) -> Result<Vec<Element>> {
    if q.arity() != bx.arity {
        return Err(Error::ArityMismatch {
            left: bx.arity,
            right: q.arity(),
        });
    }
    let pts = bx.points();
    let constraints = box_constraint(q, q, bx);
    let mut out = Vec::new();
    let mut failure = None;
    search(bx.len(), &constraints, |pi| {
        let pairs: Vec<(RayPoint, RayPoint)> = pi
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i != j)
            .map(|(i, &j)| (pts[i], pts[j]))
            .collect();
        match Element::from_mapping(q.arity(), &pairs) {
            Ok(e) => out.push(e),
            Err(e) => failure = Some(e),
        }
        failure.is_none() && out.len() < limit
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Counts the elements supported on a set of at most eight points around `S \ Sα`
/// whose right action fixes `α`, checking `h(α(s)) = α(s)` pointwise.
pub fn brute_stabilizer_order(alpha: &InjectiveMonoidMap) -> Result<u128> {
    let complement = alpha.complement();
    if complement.len() > ENUMERATION_LIMIT {
        return Err(Error::CapExceeded(ENUMERATION_LIMIT));
    }
    let n = alpha.arity();
    let reach = alpha.thresholds().iter().max().copied().unwrap_or(0)
        + alpha
            .phi()
            .entries()
            .iter()
            .map(|m| m.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
        + ENUMERATION_LIMIT;
    let mut image: Vec<RayPoint> = (1..=n)
        .flat_map(|x| (0..reach).map(move |i| RayPoint::new(i, x)))
        .map(|s| alpha.apply(s))
        .collect();
    image.sort();
    let mut pts = complement.clone();
    for p in image {
        if pts.len() >= ENUMERATION_LIMIT {
            break;
        }
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let k = pts.len();
    let in_image: Vec<bool> = pts.iter().map(|p| !complement.contains(p)).collect();
    let mut count = 0u128;
    enumerate(k, &[], |pi| {
        // every image point present must stay put
        if (0..k).all(|i| !in_image[i] || pi[i] == i) {
            count += 1;
        }
        true
    });
    Ok(count)
}

/// A random permutation of between two and `max_support` distinct box points.
pub fn random_box_element(rng: &mut impl Rng, bx: &PointBox, max_support: usize) -> Element {
    let mut pts = bx.points();
    pts.shuffle(rng);
    let k = rng.gen_range(2..=max_support.clamp(2, pts.len()));
    let chosen = &pts[..k];
    let mut images = chosen.to_vec();
    images.shuffle(rng);
    let pairs: Vec<(RayPoint, RayPoint)> = chosen
        .iter()
        .zip(&images)
        .filter(|(a, b)| a != b)
        .map(|(&a, &b)| (a, b))
        .collect();
    Element::from_mapping(bx.arity, &pairs).expect("a permutation of box points")
}

/// A subgroup generated by one to three random small-support permutations of the box,
/// redrawn until its order is at most [`RANDOM_GROUP_CAP`].
pub fn random_finite_subgroup(rng: &mut impl Rng, bx: &PointBox) -> FiniteSubgroup {
    loop {
        let count = rng.gen_range(1..=3);
        let gens: Vec<Element> = (0..count).map(|_| random_box_element(rng, bx, 4)).collect();
        match FiniteSubgroup::closure_with_cap(bx.arity, &gens, RANDOM_GROUP_CAP + 1) {
            Ok(q) if q.order() <= RANDOM_GROUP_CAP => return q,
            _ => continue,
        }
    }
}

/// A random infinite-order element: a product of ray shifts and finite permutations of
/// the first `depth` indices, with nonzero translation vector.
pub fn random_infinite_element(rng: &mut impl Rng, arity: usize, depth: usize) -> Element {
    assert!(arity >= 2);
    let bx = PointBox { depth, arity };
    loop {
        let mut e = Element::identity(arity).unwrap();
        for _ in 0..rng.gen_range(1..=4) {
            let factor = if rng.gen_bool(0.5) {
                let from = rng.gen_range(1..=arity);
                let mut to = rng.gen_range(1..arity);
                if to >= from {
                    to += 1;
                }
                Element::ray_shift(arity, from, to).unwrap()
            } else {
                random_box_element(rng, &bx, 3)
            };
            e = e.compose(&factor).unwrap();
        }
        if !e.phi().is_zero() {
            return e;
        }
    }
}

/// One line of an oracle run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub case: u64,
    pub brute: u128,
    pub predicted: u128,
    #[serde(rename = "match")]
    pub matched: bool,
}

/// Compares brute-force and predicted truncated centralizer orders on random finite
/// subgroups of `H_2` and `H_3`. Case `i` uses seed `seed + i` and arity `2 + i % 2`.
pub fn verify(cases: usize, seed: u64, depth: usize) -> Result<Vec<OracleReport>> {
    (0..cases as u64)
        .map(|i| {
            let case = seed.wrapping_add(i);
            let mut rng = ChaCha8Rng::seed_from_u64(case);
            let bx = PointBox::new(depth, 2 + (i as usize % 2))?;
            let q = random_finite_subgroup(&mut rng, &bx);
            let desc = crate::centralizer::centralizer_finite(&q)?;
            let brute = brute_centralizer_order(&q, &bx)?;
            let predicted = predicted_truncated_order(&desc, &q, &bx)?;
            Ok(OracleReport {
                case,
                brute,
                predicted,
                matched: brute == predicted,
            })
        })
        .collect()
}
