//! Dense permutations of `0..k`, the working representation inside finite subgroups.

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Perm(Box<[u32]>);

impl Perm {
    pub(crate) fn identity(k: usize) -> Self {
        Perm((0..k as u32).collect())
    }

    pub(crate) fn from_images(images: Vec<u32>) -> Self {
        Perm(images.into_boxed_slice())
    }

    pub(crate) fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub(crate) fn len(&self) -> usize {
        self.0.len()
    }

    /// `self` first, then `other`.
    pub(crate) fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub(crate) fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Perm(inv.into_boxed_slice())
    }

    /// `y x y⁻¹` in left-action notation.
    pub(crate) fn conjugated_by(&self, y: &Perm) -> Perm {
        y.inverse().then(self).then(y)
    }
}
