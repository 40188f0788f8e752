//! Basic sets of variable labels and subset bitmasks over them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest basic set accepted. Set functions store `2^n` values.
pub const MAX_VARIABLES: usize = 16;

/// An ordered, finite set of distinct variable labels.
///
/// Position `i` in the label list is bit `i` of every [`SubsetMask`] over
/// this set. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasicSet {
    names: Arc<[String]>,
}

impl BasicSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() < 2 {
            return Err(Error::BasicSetTooSmall(names.len()));
        }
        if names.len() > MAX_VARIABLES {
            return Err(Error::BasicSetTooLarge(names.len()));
        }
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    /// The four-variable set `{x, y, z, u}` used throughout the catalog.
    pub fn xyzu() -> Self {
        Self::new(["x", "y", "z", "u"]).expect("static labels are valid")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// The mask of the whole set.
    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.size())
    }

    /// Number of subsets, `2^size`.
    pub fn subset_count(&self) -> usize {
        1 << self.size()
    }

    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.subset_count() as u32).map(SubsetMask)
    }

    pub fn check(&self, mask: SubsetMask) -> Result<()> {
        if mask.0 >> self.size() != 0 {
            return Err(Error::MaskOutOfRange {
                mask: mask.0,
                size: self.size(),
            });
        }
        Ok(())
    }

    /// Builds a mask from labels.
    pub fn mask<S: AsRef<str>>(&self, names: &[S]) -> Result<SubsetMask> {
        let mut bits = 0;
        for n in names {
            bits |= 1 << self.index_of(n.as_ref())?;
        }
        Ok(SubsetMask(bits))
    }

    /// Builds a mask from a whitespace- or comma-separated label list.
    pub fn parse_mask(&self, text: &str) -> Result<SubsetMask> {
        let names: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        self.mask(&names)
    }

    /// The sub-basic-set of the labels in `mask`, keeping this set's order.
    pub fn restrict(&self, mask: SubsetMask) -> Result<BasicSet> {
        self.check(mask)?;
        BasicSet::new(mask.iter().map(|i| self.names[i].clone()))
    }

    /// Concatenated labels of a subset in base order; `""` for the empty set.
    pub fn label(&self, mask: SubsetMask) -> String {
        mask.iter().map(|i| self.names[i].as_str()).collect()
    }

    /// Like [`label`](Self::label) but with `∅` for the empty set.
    pub fn display(&self, mask: SubsetMask) -> String {
        if mask.is_empty() {
            "∅".to_string()
        } else {
            self.label(mask)
        }
    }
}

impl fmt::Debug for BasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// A subset of a basic set, encoded as a bitmask over label positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn full(n: usize) -> Self {
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Element indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of this mask, in increasing integer order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let all = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == all {
                None
            } else {
                Some((cur.wrapping_sub(all)) & all)
            };
            Some(SubsetMask(cur))
        })
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// `true` when all masks are pairwise disjoint.
pub fn pairwise_disjoint(masks: &[SubsetMask]) -> bool {
    let mut seen = 0u32;
    for m in masks {
        if seen & m.0 != 0 {
            return false;
        }
        seen |= m.0;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_duplicate_sets() {
        assert!(matches!(BasicSet::new(["x"]), Err(Error::BasicSetTooSmall(1))));
        assert!(matches!(
            BasicSet::new(["x", "y", "x"]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn subsets_of_mask_enumerates_all() {
        let m = SubsetMask(0b1010);
        let subs: Vec<u32> = m.subsets().map(|s| s.0).collect();
        assert_eq!(subs, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(SubsetMask::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn labels_follow_base_order() {
        let n = BasicSet::xyzu();
        let m = n.mask(&["u", "x"]).unwrap();
        assert_eq!(n.label(m), "xu");
        assert_eq!(n.display(SubsetMask::EMPTY), "∅");
        assert_eq!(n.parse_mask("z, u").unwrap(), SubsetMask(0b1100));
        assert!(n.check(SubsetMask(0b10000)).is_err());
    }

    #[test]
    fn set_operations() {
        let a = SubsetMask(0b0011);
        let b = SubsetMask(0b0110);
        assert_eq!(a.union(b), SubsetMask(0b0111));
        assert_eq!(a.intersection(b), SubsetMask(0b0010));
        assert_eq!(a.difference(b), SubsetMask(0b0001));
        assert_eq!(a.complement(4), SubsetMask(0b1100));
        assert!(pairwise_disjoint(&[SubsetMask(1), SubsetMask(2), SubsetMask(12)]));
        assert!(!pairwise_disjoint(&[SubsetMask(1), SubsetMask(3)]));
    }
}
