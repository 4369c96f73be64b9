//! Points of `S = N × {1..n}` and translation vectors.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point `(index, ray)` of `N × {1..n}`. Rays are 1-based.
///
/// Points order by ray first, then index. Every "least point" tie-break in the
/// crate uses this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayPoint {
    pub ray: usize,
    pub index: usize,
}

impl RayPoint {
    pub const fn new(index: usize, ray: usize) -> Self {
        RayPoint { ray, index }
    }

    pub fn is_valid(&self, arity: usize) -> bool {
        self.ray >= 1 && self.ray <= arity
    }

    /// Moves the point along its ray; `None` if the result would be negative.
    pub fn shifted(&self, by: i64) -> Option<RayPoint> {
        let index = i64::try_from(self.index).ok()?.checked_add(by)?;
        Some(RayPoint::new(usize::try_from(index).ok()?, self.ray))
    }
}

impl fmt::Display for RayPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.index, self.ray)
    }
}

// JSON form is `[index, ray]`.
impl Serialize for RayPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.index, self.ray).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RayPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (index, ray) = <(usize, usize)>::deserialize(d)?;
        Ok(RayPoint::new(index, ray))
    }
}

/// The image of an element under the translation homomorphism: one integer per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TranslationVector(pub Vec<i64>);

impl TranslationVector {
    pub fn zero(arity: usize) -> Self {
        TranslationVector(vec![0; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Translation amount on a 1-based ray.
    pub fn on_ray(&self, ray: usize) -> i64 {
        self.0[ray - 1]
    }
}

impl Add for &TranslationVector {
    type Output = TranslationVector;
    fn add(self, rhs: &TranslationVector) -> TranslationVector {
        TranslationVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &TranslationVector {
    type Output = TranslationVector;
    fn sub(self, rhs: &TranslationVector) -> TranslationVector {
        TranslationVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &TranslationVector {
    type Output = TranslationVector;
    fn neg(self) -> TranslationVector {
        TranslationVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for TranslationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}
