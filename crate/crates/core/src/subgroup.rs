//! Finite subgroups of `H_n` as explicit element lists, their isotropy subgroups, the
//! partition of the moved set by conjugacy class of isotropy, and Weyl groups.
//!
//! A finite subgroup `Q` only moves the finite set `S_Q`, so every computation runs on
//! dense permutations of `S_Q`. Group products use left-action notation where it
//! matters (`x Qa` is a left coset, `y H y⁻¹` a conjugate).

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::point::RayPoint;

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct FiniteSubgroup {
    arity: usize,
    domain: Vec<RayPoint>,
    perms: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    elements: Vec<Element>,
    generators: Vec<Element>,
}

impl PartialEq for FiniteSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.order() == other.order()
            && self.elements.iter().all(|e| other.contains(e))
    }
}

impl Eq for FiniteSubgroup {}

impl FiniteSubgroup {
    pub fn trivial(arity: usize) -> Result<Self> {
        FiniteSubgroup::closure(arity, &[])
    }

    /// The subgroup generated by finite-order elements, with the default element cap.
    pub fn closure(arity: usize, generators: &[Element]) -> Result<Self> {
        FiniteSubgroup::closure_with_cap(arity, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn closure_with_cap(arity: usize, generators: &[Element], cap: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArity(0));
        }
        let mut domain = BTreeSet::new();
        for (i, g) in generators.iter().enumerate() {
            if g.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: g.arity(),
                });
            }
            domain.extend(g.support().ok_or(Error::InfiniteOrderGenerator(i))?);
        }
        let domain: Vec<RayPoint> = domain.into_iter().collect();
        let local: Vec<Perm> = generators
            .iter()
            .map(|g| to_local(&domain, g).expect("generator supported on the domain"))
            .collect();
        let perms = saturate(domain.len(), &local, cap)?;
        Ok(FiniteSubgroup::assemble(
            arity,
            domain,
            perms,
            generators.to_vec(),
        ))
    }

    fn assemble(
        arity: usize,
        domain: Vec<RayPoint>,
        perms: Vec<Perm>,
        generators: Vec<Element>,
    ) -> Self {
        let elements = perms
            .iter()
            .map(|p| to_element(arity, &domain, p))
            .collect();
        let lookup = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        FiniteSubgroup {
            arity,
            domain,
            perms,
            lookup,
            elements,
            generators,
        }
    }

    /// Wraps a list known to be closed; recomputes the moved set from the elements.
    fn from_closed(arity: usize, elements: Vec<Element>, generators: Vec<Element>) -> Self {
        let domain: Vec<RayPoint> = elements
            .iter()
            .flat_map(|e| e.support().expect("finite-order element"))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let perms: Vec<Perm> = elements
            .iter()
            .map(|e| to_local(&domain, e).expect("element supported on the domain"))
            .collect();
        let lookup = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        FiniteSubgroup {
            arity,
            domain,
            perms,
            lookup,
            elements,
            generators,
        }
    }

    /// The subgroup formed by the listed element indices, with a small generating set.
    fn subgroup(&self, indices: &[usize]) -> FiniteSubgroup {
        let perms: Vec<Perm> = indices.iter().map(|&i| self.perms[i].clone()).collect();
        let gens = small_generating_set(self.domain.len(), &perms);
        FiniteSubgroup::from_closed(
            self.arity,
            indices.iter().map(|&i| self.elements[i].clone()).collect(),
            gens.iter()
                .map(|&k| self.elements[indices[k]].clone())
                .collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    /// Identity first, then the remaining elements in discovery order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// `S_Q`, the finite set of points moved by some element, ascending.
    pub fn moved_points(&self) -> &[RayPoint] {
        &self.domain
    }

    pub fn moves(&self, p: RayPoint) -> bool {
        self.domain.binary_search(&p).is_ok()
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.arity() == self.arity
            && to_local(&self.domain, e).is_some_and(|p| self.lookup.contains_key(&p))
    }

    pub fn is_subgroup_of(&self, other: &FiniteSubgroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    pub fn orbit(&self, p: RayPoint) -> Vec<RayPoint> {
        match self.domain.binary_search(&p) {
            Ok(i) => self
                .orbit_local(i)
                .into_iter()
                .map(|j| self.domain[j])
                .collect(),
            Err(_) => vec![p],
        }
    }

    fn orbit_local(&self, i: usize) -> Vec<usize> {
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|g| to_local(&self.domain, g).unwrap())
            .collect();
        let mut seen = BTreeSet::from([i]);
        let mut queue = VecDeque::from([i]);
        while let Some(j) = queue.pop_front() {
            for g in &gens {
                let k = g.image(j);
                if seen.insert(k) {
                    queue.push_back(k);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn stabilizer_indices(&self, local: usize) -> Vec<usize> {
        (0..self.perms.len())
            .filter(|&k| self.perms[k].image(local) == local)
            .collect()
    }

    /// The isotropy subgroup `{q ∈ Q : q·p = p}`.
    pub fn isotropy(&self, p: RayPoint) -> FiniteSubgroup {
        match self.domain.binary_search(&p) {
            Ok(i) => self.subgroup(&self.stabilizer_indices(i)),
            Err(_) => self.clone(),
        }
    }

    /// Some `y ∈ Q` with `y A y⁻¹ = B`, searching all of `Q`.
    pub fn conjugating_element(
        &self,
        a: &FiniteSubgroup,
        b: &FiniteSubgroup,
    ) -> Result<Option<Element>> {
        let a_idx = self.indices_of(a)?;
        let b_idx = self.indices_of(b)?;
        Ok(self
            .conjugating_index(&a_idx, &b_idx)
            .map(|y| self.elements[y].clone()))
    }

    fn indices_of(&self, h: &FiniteSubgroup) -> Result<Vec<usize>> {
        if h.arity != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: h.arity,
            });
        }
        h.elements
            .iter()
            .map(|e| {
                to_local(&self.domain, e)
                    .and_then(|p| self.lookup.get(&p).copied())
                    .ok_or(Error::NotASubgroup)
            })
            .collect()
    }

    fn conjugating_index(&self, a: &[usize], b: &[usize]) -> Option<usize> {
        if a.len() != b.len() {
            return None;
        }
        let in_b = self.membership(b);
        let a_perms: Vec<Perm> = a.iter().map(|&i| self.perms[i].clone()).collect();
        let a_gens: Vec<&Perm> = small_generating_set(self.domain.len(), &a_perms)
            .into_iter()
            .map(|k| &self.perms[a[k]])
            .collect();
        (0..self.perms.len()).find(|&y| {
            a_gens.iter().all(|h| {
                let c = h.conjugated_by(&self.perms[y]);
                in_b[self.lookup[&c]]
            })
        })
    }

    fn membership(&self, indices: &[usize]) -> Vec<bool> {
        let mut v = vec![false; self.perms.len()];
        for &i in indices {
            v[i] = true;
        }
        v
    }

    pub fn to_json(&self) -> SubgroupJson {
        SubgroupJson {
            n: self.arity,
            generators: self.generators.clone(),
        }
    }
}

/// JSON encoding `{"n": …, "generators": [element, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub n: usize,
    pub generators: Vec<Element>,
}

impl TryFrom<SubgroupJson> for FiniteSubgroup {
    type Error = Error;
    fn try_from(json: SubgroupJson) -> Result<Self> {
        FiniteSubgroup::closure(json.n, &json.generators)
    }
}

fn to_local(domain: &[RayPoint], e: &Element) -> Option<Perm> {
    let support = e.support()?;
    if support.iter().any(|p| domain.binary_search(p).is_err()) {
        return None;
    }
    let images = domain
        .iter()
        .map(|&p| domain.binary_search(&e.apply(p)).map(|i| i as u32).ok())
        .collect::<Option<Vec<u32>>>()?;
    Some(Perm::from_images(images))
}

fn to_element(arity: usize, domain: &[RayPoint], p: &Perm) -> Element {
    let pairs: Vec<(RayPoint, RayPoint)> = (0..p.len())
        .filter(|&i| p.image(i) != i)
        .map(|i| (domain[i], domain[p.image(i)]))
        .collect();
    Element::from_mapping(arity, &pairs).expect("dense permutation is a bijection")
}

fn saturate(k: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let mut perms = vec![Perm::identity(k)];
    let mut seen: HashSet<Perm> = perms.iter().cloned().collect();
    let mut next = 0;
    while next < perms.len() {
        for g in gens {
            let p = perms[next].then(g);
            if !seen.contains(&p) {
                if perms.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(p.clone());
                perms.push(p);
            }
        }
        next += 1;
    }
    Ok(perms)
}

/// Greedy generating set: indices of elements not generated by the earlier picks.
fn small_generating_set(k: usize, perms: &[Perm]) -> Vec<usize> {
    let mut picked = Vec::new();
    let mut generated: HashSet<Perm> = HashSet::from([Perm::identity(k)]);
    for (i, p) in perms.iter().enumerate() {
        if generated.contains(p) {
            continue;
        }
        picked.push(i);
        let gens: Vec<Perm> = picked.iter().map(|&j| perms[j].clone()).collect();
        generated = saturate(k, &gens, usize::MAX)
            .expect("uncapped")
            .into_iter()
            .collect();
    }
    picked
}

/// One block `S_a` of the partition of `S_Q` by `Q`-conjugacy class of isotropy.
#[derive(Clone, Debug)]
pub struct IsotropyClass {
    pub points: Vec<RayPoint>,
    /// Least point of the class; its isotropy group is the class representative.
    pub representative: RayPoint,
    pub isotropy: FiniteSubgroup,
    /// `[Q : Q_a]`.
    pub index: usize,
    /// `r_a = |S_a| / [Q : Q_a]`, the number of `Q`-orbits in the class.
    pub multiplicity: usize,
    /// One point per orbit, each with isotropy exactly `Q_a`.
    pub orbit_representatives: Vec<RayPoint>,
}

#[derive(Clone, Debug)]
pub struct IsotropyPartition {
    pub arity: usize,
    /// `S_Q`; every other point is fixed by `Q`.
    pub moved: Vec<RayPoint>,
    /// Ordered by least point.
    pub classes: Vec<IsotropyClass>,
}

impl IsotropyPartition {
    pub fn class_of(&self, p: RayPoint) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.points.binary_search(&p).is_ok())
    }

    /// An element `y ∈ Q` with `y Q_p y⁻¹ = Q_a` for the class `a` containing `p`.
    pub fn witness(&self, q: &FiniteSubgroup, p: RayPoint) -> Option<Element> {
        let class = &self.classes[self.class_of(p)?];
        let orbit = q.orbit(p);
        let target = *class
            .orbit_representatives
            .iter()
            .find(|s| orbit.binary_search(s).is_ok())?;
        let i = q.domain.binary_search(&p).ok()?;
        let t = q.domain.binary_search(&target).ok()?;
        let y = q.perms.iter().position(|y| y.image(i) == t)?;
        Some(q.elements[y].clone())
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            fixed_complement: self.moved.clone(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    points: c.points.clone(),
                    isotropy_order: c.isotropy.order(),
                    index: c.index,
                    r: c.multiplicity,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub fixed_complement: Vec<RayPoint>,
    pub classes: Vec<ClassJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub points: Vec<RayPoint>,
    pub isotropy_order: usize,
    pub index: usize,
    pub r: usize,
}

pub fn partition(q: &FiniteSubgroup) -> IsotropyPartition {
    struct Draft {
        orbits: Vec<Vec<usize>>,
        stabilizer: Vec<usize>,
    }
    let mut drafts: Vec<Draft> = Vec::new();
    let mut seen = vec![false; q.domain.len()];
    for i in 0..q.domain.len() {
        if seen[i] {
            continue;
        }
        let orbit = q.orbit_local(i);
        for &j in &orbit {
            seen[j] = true;
        }
        let stab = q.stabilizer_indices(i);
        match drafts
            .iter_mut()
            .find(|d| q.conjugating_index(&stab, &d.stabilizer).is_some())
        {
            Some(d) => d.orbits.push(orbit),
            None => drafts.push(Draft {
                orbits: vec![orbit],
                stabilizer: stab,
            }),
        }
    }
    let classes = drafts
        .into_iter()
        .map(|d| {
            let fixes_all = |j: usize| d.stabilizer.iter().all(|&k| q.perms[k].image(j) == j);
            let orbit_representatives = d
                .orbits
                .iter()
                .map(|o| {
                    let s = *o
                        .iter()
                        .find(|&&j| fixes_all(j))
                        .expect("every orbit in a class meets the representative isotropy");
                    q.domain[s]
                })
                .collect();
            let mut points: Vec<RayPoint> =
                d.orbits.iter().flatten().map(|&j| q.domain[j]).collect();
            points.sort();
            let index = q.order() / d.stabilizer.len();
            IsotropyClass {
                representative: points[0],
                multiplicity: points.len() / index,
                index,
                isotropy: q.subgroup(&d.stabilizer),
                orbit_representatives,
                points,
            }
        })
        .collect();
    IsotropyPartition {
        arity: q.arity,
        moved: q.domain.clone(),
        classes,
    }
}

/// `N_Q(Qa) / Qa`, realized as permutations of the left cosets `Q / Qa`.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub order: usize,
    pub coset_count: usize,
    pub normalizer_order: usize,
    /// Generators as permutations of coset indices; coset `i` is the `i`-th new coset
    /// met when scanning `Q` in element order, so coset 0 is `Qa` itself.
    pub generators: Vec<Vec<usize>>,
    /// For each generator, a normalizer element `n` inducing `x Qa ↦ x n Qa`.
    pub generator_representatives: Vec<Element>,
}

pub fn weyl(q: &FiniteSubgroup, qa: &FiniteSubgroup) -> Result<WeylGroup> {
    let sub = q.indices_of(qa)?;
    let in_sub = q.membership(&sub);
    let sub_perms: Vec<Perm> = sub.iter().map(|&i| q.perms[i].clone()).collect();
    let sub_gens: Vec<&Perm> = small_generating_set(q.domain.len(), &sub_perms)
        .into_iter()
        .map(|k| &q.perms[sub[k]])
        .collect();

    let mut coset_of = vec![usize::MAX; q.order()];
    let mut reps = Vec::new();
    for x in 0..q.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &h in &sub {
            // x h: apply h, then x
            let xh = q.perms[h].then(&q.perms[x]);
            coset_of[q.lookup[&xh]] = c;
        }
    }

    let normalizer: Vec<usize> = (0..q.order())
        .filter(|&y| {
            sub_gens.iter().all(|h| {
                let c = h.conjugated_by(&q.perms[y]);
                in_sub[q.lookup[&c]]
            })
        })
        .collect();

    let mut distinct: Vec<(Perm, usize)> = Vec::new();
    let mut found: HashSet<Perm> = HashSet::new();
    for &nrm in &normalizer {
        let images: Vec<u32> = reps
            .iter()
            .map(|&x| {
                let xn = q.perms[nrm].then(&q.perms[x]);
                coset_of[q.lookup[&xn]] as u32
            })
            .collect();
        let action = Perm::from_images(images);
        if found.insert(action.clone()) {
            distinct.push((action, nrm));
        }
    }
    if distinct.len() * sub.len() != normalizer.len() {
        return Err(Error::Internal(
            "Weyl group order does not divide the normalizer".into(),
        ));
    }
    let actions: Vec<Perm> = distinct.iter().map(|(a, _)| a.clone()).collect();
    let picked = small_generating_set(reps.len(), &actions);
    Ok(WeylGroup {
        order: distinct.len(),
        coset_count: reps.len(),
        normalizer_order: normalizer.len(),
        generators: picked
            .iter()
            .map(|&k| (0..reps.len()).map(|c| actions[k].image(c)).collect())
            .collect(),
        generator_representatives: picked
            .iter()
            .map(|&k| q.elements[distinct[k].1].clone())
            .collect(),
    })
}
