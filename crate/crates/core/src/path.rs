use alloc::vec::Vec;
use core::fmt;

/// A sequence of mutation directions read from the initial vertex.
///
/// Directions are stored 0-based; `Display` and the serialized forms use 1-based indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MutationPath(Vec<usize>);

impl MutationPath {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_zero_based(steps: Vec<usize>) -> Self {
        Self(steps)
    }

    /// Builds a path from 1-based directions; returns `None` if any entry is 0.
    pub fn from_one_based(steps: &[usize]) -> Option<Self> {
        steps.iter().map(|&s| s.checked_sub(1)).collect::<Option<Vec<_>>>().map(Self)
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|s| s + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn pushed(&self, k: usize) -> Self {
        let mut steps = self.0.clone();
        steps.push(k);
        Self(steps)
    }

    /// Path with adjacent repeated directions cancelled (mutations are involutions).
    pub fn reduced(&self) -> Self {
        let mut out: Vec<usize> = Vec::with_capacity(self.0.len());
        for &k in &self.0 {
            if out.last() == Some(&k) {
                out.pop();
            } else {
                out.push(k);
            }
        }
        Self(out)
    }

    /// The path walked backwards, i.e. from the endpoint back to the start.
    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// `prefix` followed by `self`, reduced.
    pub fn prepended(&self, prefix: usize) -> Self {
        let mut steps = Vec::with_capacity(self.0.len() + 1);
        steps.push(prefix);
        steps.extend_from_slice(&self.0);
        Self(steps).reduced()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for MutationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s + 1)?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn display_is_one_based() {
        let p = MutationPath::from_zero_based(vec![0, 2, 1]);
        assert_eq!(p.to_string(), "(1,3,2)");
        assert_eq!(MutationPath::from_one_based(&[1, 3, 2]).unwrap(), p);
        assert!(MutationPath::from_one_based(&[0]).is_none());
    }

    #[test]
    fn reduce_cancels_back_steps() {
        let p = MutationPath::from_zero_based(vec![0, 1, 1, 2, 2, 0, 1]);
        assert_eq!(p.reduced().steps(), &[1]);
        assert_eq!(MutationPath::from_zero_based(vec![0, 1]).prepended(0).steps(), &[1]);
    }
}
