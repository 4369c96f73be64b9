//! The finite table shared by group elements and monoid maps.
//!
//! An eventually-translation map of `N × {1..n}` is stored as a translation amount per
//! ray plus an explicit image table for every point below the ray's threshold. The
//! table domain is always a union of ray prefixes, so the threshold of a ray is the
//! length of its table. A canonical table has minimal thresholds: the last entry of a
//! prefix never agrees with the translation rule.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::point::{RayPoint, TranslationVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct EventualMap {
    shift: Vec<i64>,
    prefix: Vec<Vec<RayPoint>>,
}

impl EventualMap {
    pub(crate) fn translation(shift: Vec<i64>) -> Result<Self> {
        if shift.is_empty() {
            return Err(Error::InvalidArity(0));
        }
        if let Some(x) = shift.iter().position(|&m| m < 0) {
            return Err(Error::MissingEntry(RayPoint::new(0, x + 1)));
        }
        let prefix = vec![Vec::new(); shift.len()];
        Ok(EventualMap { shift, prefix })
    }

    /// Builds a table by evaluating `f` on every point below `thresholds`.
    ///
    /// Callers guarantee that `f` agrees with translation by `shift` at and beyond the
    /// thresholds, and that `thresholds[x] >= -shift[x]`.
    pub(crate) fn from_fn(
        shift: Vec<i64>,
        thresholds: &[usize],
        mut f: impl FnMut(RayPoint) -> RayPoint,
    ) -> Self {
        debug_assert_eq!(shift.len(), thresholds.len());
        let prefix = thresholds
            .iter()
            .enumerate()
            .map(|(x, &z)| {
                debug_assert!(z as i64 >= -shift[x]);
                (0..z).map(|i| f(RayPoint::new(i, x + 1))).collect()
            })
            .collect();
        let mut map = EventualMap { shift, prefix };
        map.canonicalize();
        map
    }

    /// Parses a possibly non-canonical table. Points below a threshold that have no
    /// entry follow the translation rule; entries beyond a threshold raise it.
    pub(crate) fn from_table(
        arity: usize,
        shift: Vec<i64>,
        thresholds: &[usize],
        exceptional: &[(RayPoint, RayPoint)],
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArity(0));
        }
        if shift.len() != arity || thresholds.len() != arity {
            return Err(Error::Malformed(format!(
                "expected {arity} translation amounts and thresholds, got {} and {}",
                shift.len(),
                thresholds.len()
            )));
        }
        let mut table = BTreeMap::new();
        for &(from, to) in exceptional {
            for p in [from, to] {
                if !p.is_valid(arity) {
                    return Err(Error::InvalidPoint { point: p, arity });
                }
            }
            if let Some(prev) = table.insert(from, to) {
                if prev != to {
                    return Err(Error::ConflictingEntry(from));
                }
            }
        }
        let mut z: Vec<usize> = thresholds.to_vec();
        for (x, zx) in z.iter_mut().enumerate() {
            let floor = usize::try_from(-shift[x]).unwrap_or(0);
            *zx = (*zx).max(floor);
        }
        for from in table.keys() {
            let zx = &mut z[from.ray - 1];
            *zx = (*zx).max(from.index + 1);
        }
        let mut prefix = Vec::with_capacity(arity);
        for (x, &zx) in z.iter().enumerate() {
            let mut row = Vec::with_capacity(zx);
            for i in 0..zx {
                let p = RayPoint::new(i, x + 1);
                let image = match table.get(&p) {
                    Some(&q) => q,
                    None => p.shifted(shift[x]).ok_or(Error::MissingEntry(p))?,
                };
                row.push(image);
            }
            prefix.push(row);
        }
        let mut map = EventualMap { shift, prefix };
        map.canonicalize();
        Ok(map)
    }

    pub(crate) fn canonicalize(&mut self) {
        for (x, row) in self.prefix.iter_mut().enumerate() {
            while let Some(&last) = row.last() {
                let p = RayPoint::new(row.len() - 1, x + 1);
                if p.shifted(self.shift[x]) == Some(last) {
                    row.pop();
                } else {
                    break;
                }
            }
        }
    }

    pub(crate) fn arity(&self) -> usize {
        self.shift.len()
    }

    pub(crate) fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub(crate) fn phi(&self) -> TranslationVector {
        TranslationVector(self.shift.clone())
    }

    pub(crate) fn thresholds(&self) -> Vec<usize> {
        self.prefix.iter().map(Vec::len).collect()
    }

    pub(crate) fn apply(&self, p: RayPoint) -> RayPoint {
        assert!(
            p.is_valid(self.arity()),
            "point {p} is not valid for arity {}",
            self.arity()
        );
        let row = &self.prefix[p.ray - 1];
        match row.get(p.index) {
            Some(&q) => q,
            None => RayPoint::new((p.index as i64 + self.shift[p.ray - 1]) as usize, p.ray),
        }
    }

    /// Table entries in (ray, index) order.
    pub(crate) fn exceptional(&self) -> impl Iterator<Item = (RayPoint, RayPoint)> + '_ {
        self.prefix.iter().enumerate().flat_map(|(x, row)| {
            row.iter()
                .enumerate()
                .map(move |(i, &q)| (RayPoint::new(i, x + 1), q))
        })
    }

    pub(crate) fn table_size(&self) -> usize {
        self.prefix.iter().map(Vec::len).sum()
    }

    /// Checks that the map is injective, and additionally surjective when `bijective`.
    pub(crate) fn validate(&self, bijective: bool) -> Result<()> {
        let arity = self.arity();
        // Indices [0, z_y + m_y) on ray y are exactly the points the tail does not reach.
        let open: Vec<usize> = self
            .prefix
            .iter()
            .zip(&self.shift)
            .map(|(row, &m)| (row.len() as i64 + m) as usize)
            .collect();
        let mut hits: Vec<Vec<u32>> = open.iter().map(|&k| vec![0; k]).collect();
        let mut doubly = Vec::new();
        for (_, q) in self.exceptional() {
            if !q.is_valid(arity) {
                return Err(Error::InvalidPoint { point: q, arity });
            }
            match hits[q.ray - 1].get_mut(q.index) {
                Some(h) => {
                    *h += 1;
                    if *h == 2 {
                        doubly.push(q);
                    }
                }
                // lands on the image of the tail
                None => doubly.push(q),
            }
        }
        doubly.sort();
        doubly.dedup();
        if bijective {
            let sum: i64 = self.shift.iter().sum();
            if sum != 0 {
                return Err(Error::UnbalancedTranslation(sum));
            }
            let uncovered = self.uncovered_from(&hits);
            if !doubly.is_empty() || !uncovered.is_empty() {
                return Err(Error::NotBijective {
                    uncovered,
                    doubly_covered: doubly,
                });
            }
        } else {
            let sum: i64 = self.shift.iter().sum();
            if sum < 0 {
                return Err(Error::NegativeDeficit(sum));
            }
            if !doubly.is_empty() {
                return Err(Error::NotInjective {
                    doubly_covered: doubly,
                });
            }
        }
        Ok(())
    }

    fn uncovered_from(&self, hits: &[Vec<u32>]) -> Vec<RayPoint> {
        hits.iter()
            .enumerate()
            .flat_map(|(x, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &h)| h == 0)
                    .map(move |(i, _)| RayPoint::new(i, x + 1))
            })
            .collect()
    }

    /// Points outside the image. Only meaningful for injective maps.
    pub(crate) fn complement(&self) -> Vec<RayPoint> {
        let mut hits: Vec<Vec<u32>> = self
            .prefix
            .iter()
            .zip(&self.shift)
            .map(|(row, &m)| vec![0; (row.len() as i64 + m) as usize])
            .collect();
        for (_, q) in self.exceptional() {
            if let Some(h) = hits[q.ray - 1].get_mut(q.index) {
                *h += 1;
            }
        }
        self.uncovered_from(&hits)
    }

    /// `self` first, then `other`.
    pub(crate) fn then(&self, other: &EventualMap) -> EventualMap {
        debug_assert_eq!(self.arity(), other.arity());
        let shift: Vec<i64> = self
            .shift
            .iter()
            .zip(&other.shift)
            .map(|(a, b)| a + b)
            .collect();
        let z: Vec<usize> = (0..self.arity())
            .map(|x| {
                let za = self.prefix[x].len() as i64;
                let zb = other.prefix[x].len() as i64 - self.shift[x];
                za.max(zb).max(-shift[x]).max(0) as usize
            })
            .collect();
        EventualMap::from_fn(shift, &z, |p| other.apply(self.apply(p)))
    }

    /// Inverse of a bijective map.
    pub(crate) fn inverse(&self) -> EventualMap {
        let shift: Vec<i64> = self.shift.iter().map(|m| -m).collect();
        let mut prefix: Vec<Vec<RayPoint>> = self
            .prefix
            .iter()
            .zip(&self.shift)
            .map(|(row, &m)| vec![RayPoint::new(0, 0); (row.len() as i64 + m) as usize])
            .collect();
        for (p, q) in self.exceptional() {
            prefix[q.ray - 1][q.index] = p;
        }
        let mut map = EventualMap { shift, prefix };
        map.canonicalize();
        map
    }
}
