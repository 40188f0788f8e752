//! Elementary triplets and CI structures as bitsets.
//!
//! Canonical triplets `(i, j | K)` with `i < j` are numbered by sorting
//! lexicographically on `(i, j, K as integer)`. Bit `b` of a structure is the
//! triplet at position `b`. For four variables this gives 24 bits:
//!
//! ```text
//!  0 (x,y|∅)   1 (x,y|z)   2 (x,y|u)   3 (x,y|zu)
//!  4 (x,z|∅)   5 (x,z|y)   6 (x,z|u)   7 (x,z|yu)
//!  8 (x,u|∅)   9 (x,u|y)  10 (x,u|z)  11 (x,u|yz)
//! 12 (y,z|∅)  13 (y,z|x)  14 (y,z|u)  15 (y,z|xu)
//! 16 (y,u|∅)  17 (y,u|x)  18 (y,u|z)  19 (y,u|xz)
//! 20 (z,u|∅)  21 (z,u|x)  22 (z,u|y)  23 (z,u|xy)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::basic_set::{pairwise_disjoint, BasicSet, SubsetMask};
use crate::error::{Error, Result};

/// Largest basic set a [`CIStructure`] can hold (80 triplets fit in 128 bits).
pub const MAX_STRUCTURE_VARIABLES: usize = 5;

/// A canonical elementary triplet `(i, j | K)` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementaryTriplet {
    pub i: usize,
    pub j: usize,
    pub k: SubsetMask,
}

impl ElementaryTriplet {
    /// Normalizes `(j, i | K)` to `(i, j | K)`.
    pub fn new(i: usize, j: usize, k: SubsetMask) -> Result<Self> {
        if i == j || k.contains(i) || k.contains(j) {
            return Err(Error::NotDisjoint);
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Ok(Self { i, j, k })
    }

    /// All canonical triplets over `n` variables in bit order.
    pub fn all(n: usize) -> Vec<ElementaryTriplet> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let rest = SubsetMask::full(n).difference(SubsetMask(1 << i | 1 << j));
                let mut ks: Vec<SubsetMask> = rest.subsets().collect();
                ks.sort();
                out.extend(ks.into_iter().map(|k| ElementaryTriplet { i, j, k }));
            }
        }
        out
    }

    /// `n (n - 1) 2^(n - 3)`.
    pub fn count(n: usize) -> usize {
        n * (n - 1) * (1 << n) / 8
    }

    pub fn masks(self) -> (SubsetMask, SubsetMask, SubsetMask) {
        (SubsetMask::singleton(self.i), SubsetMask::singleton(self.j), self.k)
    }

    /// Image under `perm` (variable `v` goes to `perm[v]`).
    pub fn permute(self, perm: &[usize]) -> ElementaryTriplet {
        let k = self.k.iter().fold(0u32, |acc, v| acc | 1 << perm[v]);
        ElementaryTriplet::new(perm[self.i], perm[self.j], SubsetMask(k)).expect("bijection")
    }

    pub fn render(self, base: &BasicSet) -> String {
        format!(
            "({},{}|{})",
            base.name(self.i),
            base.name(self.j),
            base.display(self.k)
        )
    }
}

struct TripletIndex {
    triplets: Vec<ElementaryTriplet>,
    /// Position by `(i * n + j) << n | K`.
    position: Vec<u8>,
}

impl TripletIndex {
    fn build(n: usize) -> Self {
        let triplets = ElementaryTriplet::all(n);
        let mut position = vec![u8::MAX; (n * n) << n];
        for (b, t) in triplets.iter().enumerate() {
            position[(t.i * n + t.j) << n | t.k.0 as usize] = b as u8;
        }
        Self { triplets, position }
    }
}

fn index(n: usize) -> &'static TripletIndex {
    static CELLS: [OnceLock<TripletIndex>; MAX_STRUCTURE_VARIABLES + 1] =
        [const { OnceLock::new() }; MAX_STRUCTURE_VARIABLES + 1];
    CELLS[n].get_or_init(|| TripletIndex::build(n))
}

/// Bit position of a canonical triplet over `n` variables.
pub fn bit_of(n: usize, t: ElementaryTriplet) -> usize {
    index(n).position[(t.i * n + t.j) << n | t.k.0 as usize] as usize
}

/// Triplet at a bit position over `n` variables.
pub fn triplet_at(n: usize, bit: usize) -> ElementaryTriplet {
    index(n).triplets[bit]
}

/// Elementary content of `(X, Y | Z)`: all `(i, j | K)` with `i ∈ X`,
/// `j ∈ Y` and `Z ⊆ K ⊆ XYZ \ {i, j}`.
pub fn expand_to_elementary(
    x: SubsetMask,
    y: SubsetMask,
    z: SubsetMask,
) -> Result<Vec<ElementaryTriplet>> {
    if !pairwise_disjoint(&[x, y, z]) {
        return Err(Error::NotDisjoint);
    }
    let all = x.union(y).union(z);
    let mut out = BTreeSet::new();
    for i in x.iter() {
        for j in y.iter() {
            let free = all.difference(z).difference(SubsetMask(1 << i | 1 << j));
            for extra in free.subsets() {
                out.insert(ElementaryTriplet::new(i, j, z.union(extra))?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// A CI statement `(X, Y | Z)` over named variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Triplet {
    pub left: SubsetMask,
    pub right: SubsetMask,
    pub cond: SubsetMask,
}

impl Triplet {
    pub fn new(left: SubsetMask, right: SubsetMask, cond: SubsetMask) -> Self {
        Self { left, right, cond }
    }

    /// Parses `"x _||_ y z | u"`; variables are space separated and the
    /// conditioning part may be empty or missing.
    pub fn parse(base: &BasicSet, text: &str) -> Result<Self> {
        let (lhs, rest) = text
            .split_once("_||_")
            .ok_or_else(|| Error::Parse(format!("expected `_||_` in `{text}`")))?;
        let (rhs, cond) = rest.split_once('|').unwrap_or((rest, ""));
        let out = Self::new(
            base.parse_mask(lhs)?,
            base.parse_mask(rhs)?,
            base.parse_mask(cond)?,
        );
        if out.left.is_empty() || out.right.is_empty() {
            return Err(Error::Parse(format!("empty side in `{text}`")));
        }
        Ok(out)
    }

    pub fn render(&self, base: &BasicSet) -> String {
        let side = |m: SubsetMask| {
            m.iter()
                .map(|i| base.name(i).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{} _||_ {} | {}", side(self.left), side(self.right), side(self.cond))
            .trim_end()
            .to_string()
    }
}

/// A set of canonical elementary triplets over a basic set of at most five
/// variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CIStructure {
    base: BasicSet,
    bits: u128,
}

impl CIStructure {
    pub fn empty(base: BasicSet) -> Result<Self> {
        Self::from_bits(base, 0)
    }

    pub fn full(base: BasicSet) -> Result<Self> {
        let n = base.size();
        Self::check_size(n)?;
        Ok(Self {
            bits: full_bits(n),
            base,
        })
    }

    fn check_size(n: usize) -> Result<()> {
        if n > MAX_STRUCTURE_VARIABLES {
            return Err(Error::BasicSetTooLarge(n));
        }
        Ok(())
    }

    pub fn from_bits(base: BasicSet, bits: u128) -> Result<Self> {
        let n = base.size();
        Self::check_size(n)?;
        if bits & !full_bits(n) != 0 {
            return Err(Error::Parse(format!("bits {bits:#x} exceed {} triplets", ElementaryTriplet::count(n))));
        }
        Ok(Self { base, bits })
    }

    pub fn from_triplets(
        base: BasicSet,
        triplets: impl IntoIterator<Item = ElementaryTriplet>,
    ) -> Result<Self> {
        let mut s = Self::empty(base)?;
        for t in triplets {
            s.base.check(t.k.union(SubsetMask(1 << t.i | 1 << t.j)))?;
            s.insert(t);
        }
        Ok(s)
    }

    pub fn base(&self) -> &BasicSet {
        &self.base
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_bits(self.base.size())
    }

    pub fn contains(&self, t: ElementaryTriplet) -> bool {
        self.bits >> bit_of(self.base.size(), t) & 1 == 1
    }

    pub fn insert(&mut self, t: ElementaryTriplet) {
        self.bits |= 1 << bit_of(self.base.size(), t);
    }

    /// Adds the elementary content of `(X, Y | Z)`.
    pub fn add_statement(&mut self, x: SubsetMask, y: SubsetMask, z: SubsetMask) -> Result<()> {
        for m in [x, y, z] {
            self.base.check(m)?;
        }
        for t in expand_to_elementary(x, y, z)? {
            self.insert(t);
        }
        Ok(())
    }

    /// Whether the whole elementary content of `(X, Y | Z)` is present.
    pub fn holds(&self, x: SubsetMask, y: SubsetMask, z: SubsetMask) -> Result<bool> {
        Ok(expand_to_elementary(x, y, z)?
            .into_iter()
            .all(|t| self.contains(t)))
    }

    pub fn triplets(&self) -> impl Iterator<Item = ElementaryTriplet> + '_ {
        let n = self.base.size();
        let bits = self.bits;
        (0..ElementaryTriplet::count(n))
            .filter(move |b| bits >> b & 1 == 1)
            .map(move |b| triplet_at(n, b))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        Ok(Self {
            base: self.base.clone(),
            bits: self.bits & other.bits,
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(format!(
                "{:?} vs {:?}",
                self.base, other.base
            )));
        }
        Ok(())
    }

    /// Image under a variable permutation.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.base.size();
        let bits = self
            .triplets()
            .fold(0u128, |acc, t| acc | 1 << bit_of(n, t.permute(perm)));
        Self {
            base: self.base.clone(),
            bits,
        }
    }

    /// Distinct images under all permutations of the variables.
    pub fn orbit(&self) -> Vec<CIStructure> {
        let mut seen = BTreeSet::new();
        for p in permutations(self.base.size()) {
            seen.insert(self.permute(&p).bits);
        }
        seen.into_iter()
            .map(|bits| Self {
                base: self.base.clone(),
                bits,
            })
            .collect()
    }

    /// Six hex digits for four variables, wider otherwise.
    pub fn to_hex(&self) -> String {
        let width = ElementaryTriplet::count(self.base.size()).div_ceil(4);
        format!("{:0width$x}", self.bits)
    }

    pub fn from_hex(base: BasicSet, text: &str) -> Result<Self> {
        let bits = u128::from_str_radix(text.trim(), 16)
            .map_err(|_| Error::Parse(format!("bad hex structure `{text}`")))?;
        Self::from_bits(base, bits)
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            variables: self.base.names().to_vec(),
            statements: self
                .triplets()
                .map(|t| StatementEntry {
                    i: self.base.name(t.i).to_string(),
                    j: self.base.name(t.j).to_string(),
                    k: t.k.iter().map(|v| self.base.name(v).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &StructureFile) -> Result<Self> {
        let base = BasicSet::new(file.variables.iter().cloned())?;
        let mut s = Self::empty(base.clone())?;
        for (row, st) in file.statements.iter().enumerate() {
            let ctx = |e: Error| Error::Parse(format!("statement {row}: {e}"));
            let i = base.index_of(&st.i).map_err(ctx)?;
            let j = base.index_of(&st.j).map_err(ctx)?;
            let k = base.mask(&st.k).map_err(ctx)?;
            s.insert(ElementaryTriplet::new(i, j, k).map_err(ctx)?);
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    /// Triplets rendered as `(x,y|zu)`, in bit order.
    pub fn render(&self) -> Vec<String> {
        self.triplets().map(|t| t.render(&self.base)).collect()
    }
}

impl fmt::Debug for CIStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.render()).finish()
    }
}

fn full_bits(n: usize) -> u128 {
    let c = ElementaryTriplet::count(n);
    if c == 128 {
        u128::MAX
    } else {
        (1u128 << c) - 1
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            return out;
        };
        let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).expect("exists");
        cur.swap(k, l);
        cur[k + 1..].reverse();
    }
}

/// JSON layout of a structure.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StructureFile {
    pub variables: Vec<String>,
    pub statements: Vec<StatementEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StatementEntry {
    pub i: String,
    pub j: String,
    #[serde(rename = "K")]
    pub k: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xyzu() -> BasicSet {
        BasicSet::xyzu()
    }

    #[test]
    fn bit_order_is_frozen() {
        let n = 4;
        assert_eq!(ElementaryTriplet::count(n), 24);
        assert_eq!(ElementaryTriplet::all(n).len(), 24);
        let rendered: Vec<String> = ElementaryTriplet::all(n)
            .into_iter()
            .map(|t| t.render(&xyzu()))
            .collect();
        assert_eq!(rendered[0], "(x,y|∅)");
        assert_eq!(rendered[3], "(x,y|zu)");
        assert_eq!(rendered[7], "(x,z|yu)");
        assert_eq!(rendered[23], "(z,u|xy)");
        for (b, t) in ElementaryTriplet::all(n).into_iter().enumerate() {
            assert_eq!(bit_of(n, t), b);
        }
    }

    #[test]
    fn counts_for_other_sizes() {
        for n in 2..=5 {
            assert_eq!(ElementaryTriplet::all(n).len(), ElementaryTriplet::count(n));
        }
        assert_eq!(ElementaryTriplet::count(5), 80);
    }

    #[test]
    fn triplet_is_symmetric() {
        let a = ElementaryTriplet::new(2, 0, SubsetMask(2)).unwrap();
        let b = ElementaryTriplet::new(0, 2, SubsetMask(2)).unwrap();
        assert_eq!(a, b);
        assert!(ElementaryTriplet::new(0, 0, SubsetMask(2)).is_err());
        assert!(ElementaryTriplet::new(0, 1, SubsetMask(2)).is_err());
    }

    #[test]
    fn expansion_examples() {
        let n = xyzu();
        let (x, z, u) = (SubsetMask(1), SubsetMask(4), SubsetMask(8));
        let got: Vec<String> = expand_to_elementary(z, x.union(u), SubsetMask::EMPTY)
            .unwrap()
            .into_iter()
            .map(|t| t.render(&n))
            .collect();
        assert_eq!(got, ["(x,z|∅)", "(x,z|u)", "(z,u|∅)", "(z,u|x)"]);
        let single = expand_to_elementary(x, SubsetMask(2), z.union(u)).unwrap();
        assert_eq!(single.len(), 1);
        assert!(expand_to_elementary(SubsetMask::EMPTY, x, z).unwrap().is_empty());
        assert!(expand_to_elementary(x, x, z).is_err());
    }

    #[test]
    fn parse_statement() {
        let n = xyzu();
        let t = Triplet::parse(&n, "x _||_ y | ").unwrap();
        assert_eq!(t, Triplet::new(SubsetMask(1), SubsetMask(2), SubsetMask(0)));
        let t = Triplet::parse(&n, "z _||_ x u | y").unwrap();
        assert_eq!(t, Triplet::new(SubsetMask(4), SubsetMask(9), SubsetMask(2)));
        assert_eq!(t.render(&n), "z _||_ x u | y");
        assert!(Triplet::parse(&n, "x y").is_err());
        assert!(Triplet::parse(&n, "x _||_ q").is_err());
    }

    #[test]
    fn orbit_of_full_and_empty() {
        assert_eq!(CIStructure::full(xyzu()).unwrap().orbit().len(), 1);
        assert_eq!(CIStructure::empty(xyzu()).unwrap().orbit().len(), 1);
        let mut s = CIStructure::empty(xyzu()).unwrap();
        s.insert(ElementaryTriplet::new(0, 1, SubsetMask::EMPTY).unwrap());
        assert_eq!(s.orbit().len(), 6);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(1).len(), 1);
    }

    #[test]
    fn too_many_variables() {
        let b = BasicSet::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        assert!(CIStructure::empty(b).is_err());
    }

    #[test]
    fn meet_requires_same_base() {
        let a = CIStructure::full(xyzu()).unwrap();
        let b = CIStructure::full(BasicSet::new(["a", "b", "c", "d"]).unwrap()).unwrap();
        assert!(a.meet(&b).is_err());
        assert_eq!(a.meet(&a).unwrap(), a);
    }

    proptest! {
        #[test]
        fn hex_and_json_round_trip(bits in 0u128..(1 << 24)) {
            let s = CIStructure::from_bits(xyzu(), bits).unwrap();
            let hex = s.to_hex();
            prop_assert_eq!(hex.len(), 6);
            prop_assert_eq!(CIStructure::from_hex(xyzu(), &hex).unwrap(), s.clone());
            prop_assert_eq!(CIStructure::from_json(&s.to_json()).unwrap(), s);
        }

        #[test]
        fn permutation_preserves_size(bits in 0u128..(1 << 24), p in 0usize..24) {
            let s = CIStructure::from_bits(xyzu(), bits).unwrap();
            let perm = &permutations(4)[p];
            prop_assert_eq!(s.permute(perm).len(), s.len());
        }
    }
}
