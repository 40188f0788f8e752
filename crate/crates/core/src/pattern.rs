//! Triplet patterns over the placeholders `X`, `Y`, `Z`, `U`.
//!
//! Rules, mask forms and derivation records are written in terms of four
//! abstract disjoint sets. A [`Pattern`] names a triplet `(A, B | C)` whose
//! components are unions of placeholders; an [`Assignment`] turns it into a
//! concrete triplet of subset masks.

use std::fmt;
use std::str::FromStr;

use crate::basic_set::SubsetMask;
use crate::error::{Error, Result};

/// A set of placeholders, bit 0 = `X`, 1 = `Y`, 2 = `Z`, 3 = `U`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Slots(pub u8);

impl Slots {
    pub const EMPTY: Slots = Slots(0);
    pub const X: Slots = Slots(1);
    pub const Y: Slots = Slots(2);
    pub const Z: Slots = Slots(4);
    pub const U: Slots = Slots(8);

    pub const LETTERS: [char; 4] = ['X', 'Y', 'Z', 'U'];

    pub fn union(self, o: Slots) -> Slots {
        Slots(self.0 | o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |k| self.0 >> k & 1 == 1)
    }

    /// Parses `"XU"`, `"∅"` or `""`.
    pub fn parse(text: &str) -> Result<Slots> {
        let mut bits = 0u8;
        for c in text.trim().chars() {
            let k = match c {
                'X' | 'x' => 0,
                'Y' | 'y' => 1,
                'Z' | 'z' => 2,
                'U' | 'u' => 3,
                '∅' | ' ' => continue,
                _ => return Err(Error::Parse(format!("bad placeholder `{c}` in `{text}`"))),
            };
            bits |= 1 << k;
        }
        Ok(Slots(bits))
    }

    /// Image under a placeholder substitution (`perm[k]` is the image of slot `k`).
    pub fn substitute(self, perm: &[usize; 4]) -> Slots {
        Slots(self.iter().fold(0, |acc, k| acc | 1 << perm[k]))
    }
}

impl fmt::Display for Slots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        for k in self.iter() {
            write!(f, "{}", Self::LETTERS[k])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Slots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A triplet pattern `(left, right | cond)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub left: Slots,
    pub right: Slots,
    pub cond: Slots,
}

impl Pattern {
    pub fn new(left: Slots, right: Slots, cond: Slots) -> Self {
        Self { left, right, cond }
    }

    /// Shorthand used by the rule tables: `pat("Z", "XU", "")`.
    pub fn of(left: &str, right: &str, cond: &str) -> Self {
        Self::new(
            Slots::parse(left).expect("valid pattern"),
            Slots::parse(right).expect("valid pattern"),
            Slots::parse(cond).expect("valid pattern"),
        )
    }

    /// The pattern with left and right exchanged.
    pub fn swapped(self) -> Self {
        Self::new(self.right, self.left, self.cond)
    }

    /// Orientation-free form: `(A,B|C)` and `(B,A|C)` map to the same value.
    pub fn canonical(self) -> Self {
        if self.left <= self.right {
            self
        } else {
            self.swapped()
        }
    }

    pub fn substitute(self, perm: &[usize; 4]) -> Self {
        Self::new(
            self.left.substitute(perm),
            self.right.substitute(perm),
            self.cond.substitute(perm),
        )
    }

    pub fn is_disjoint(self) -> bool {
        self.left.0 & self.right.0 == 0
            && self.left.0 & self.cond.0 == 0
            && self.right.0 & self.cond.0 == 0
    }

    pub fn apply(self, a: &Assignment) -> (SubsetMask, SubsetMask, SubsetMask) {
        (a.image(self.left), a.image(self.right), a.image(self.cond))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}|{})", self.left, self.right, self.cond)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Accepts `"(X,YZ|U)"`, `"X,YZ|U"` or `"X,Y|"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (pair, cond) = t
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing `|` in pattern `{s}`")))?;
        let (left, right) = pair
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("missing `,` in pattern `{s}`")))?;
        Ok(Pattern::new(
            Slots::parse(left)?,
            Slots::parse(right)?,
            Slots::parse(cond)?,
        ))
    }
}

/// Concrete subsets for `X`, `Y`, `Z`, `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Assignment(pub [SubsetMask; 4]);

impl Assignment {
    pub fn new(x: SubsetMask, y: SubsetMask, z: SubsetMask, u: SubsetMask) -> Self {
        Self([x, y, z, u])
    }

    /// `X, Y, Z, U` mapped to the singletons of a permutation of four variables.
    pub fn singletons(vars: [usize; 4]) -> Self {
        Self(vars.map(SubsetMask::singleton))
    }

    pub fn image(&self, s: Slots) -> SubsetMask {
        s.iter()
            .fold(SubsetMask::EMPTY, |acc, k| acc.union(self.0[k]))
    }

    pub fn is_disjoint(&self) -> bool {
        crate::basic_set::pairwise_disjoint(&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p: Pattern = "(Z,XU|∅)".parse().unwrap();
        assert_eq!(p, Pattern::of("Z", "XU", ""));
        assert_eq!(p.to_string(), "(Z,XU|∅)");
        assert!("Z,XU".parse::<Pattern>().is_err());
        assert!("(Q,X|)".parse::<Pattern>().is_err());
    }

    #[test]
    fn canonical_ignores_orientation() {
        let a = Pattern::of("Y", "X", "Z");
        let b = Pattern::of("X", "Y", "Z");
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn substitution_swaps_slots() {
        // [X,Z] <-> [Y,U]
        let swap = [1, 0, 3, 2];
        let p = Pattern::of("X", "Y", "Z").substitute(&swap);
        assert_eq!(p, Pattern::of("Y", "X", "U"));
    }

    #[test]
    fn assignment_images() {
        let a = Assignment::singletons([0, 1, 2, 3]);
        let (l, r, c) = Pattern::of("Z", "XU", "").apply(&a);
        assert_eq!((l.0, r.0, c.0), (0b100, 0b1001, 0));
    }
}
