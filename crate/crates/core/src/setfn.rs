//! Set functions on the power set of a basic set.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basic_set::{pairwise_disjoint, BasicSet, SubsetMask};
use crate::error::{Error, Result};
use crate::pattern::{Assignment, Pattern};
use crate::scalar::{Rational, Scalar};
use crate::structure::{CIStructure, ElementaryTriplet};

/// A function `h : P(N) -> T`, stored densely by subset mask.
#[derive(Clone, PartialEq)]
pub struct SetFunction<T> {
    base: BasicSet,
    values: Vec<T>,
}

/// Outcome of a polymatroid check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckWitness {
    pub ok: bool,
    /// First violated `(X, Y | Z)`, if any.
    pub violating_triplet: Option<(SubsetMask, SubsetMask, SubsetMask)>,
    /// The offending value (negative when `ok` is false).
    pub value: f64,
}

impl CheckWitness {
    fn pass() -> Self {
        Self {
            ok: true,
            violating_triplet: None,
            value: 0.0,
        }
    }

    fn fail(x: SubsetMask, y: SubsetMask, z: SubsetMask, value: f64) -> Self {
        Self {
            ok: false,
            violating_triplet: Some((x, y, z)),
            value,
        }
    }
}

/// The right-hand sides of the five mask rewritings of the Ingleton
/// expression, as signed Δ-terms over the placeholders.
pub fn mask_terms(k: u8) -> Result<[(i8, Pattern); 4]> {
    let p = Pattern::of;
    Ok(match k {
        1 => [
            (1, p("Z", "U", "X")),
            (1, p("Z", "U", "Y")),
            (1, p("X", "Y", "")),
            (-1, p("Z", "U", "")),
        ],
        2 => [
            (1, p("Z", "U", "Y")),
            (1, p("X", "Z", "U")),
            (1, p("X", "Y", "")),
            (-1, p("X", "Z", "")),
        ],
        3 => [
            (1, p("X", "Y", "Z")),
            (1, p("X", "Z", "U")),
            (1, p("Z", "U", "Y")),
            (-1, p("X", "Z", "Y")),
        ],
        4 => [
            (1, p("X", "Y", "Z")),
            (1, p("X", "Y", "U")),
            (1, p("Z", "U", "XY")),
            (-1, p("X", "Y", "ZU")),
        ],
        5 => [
            (1, p("X", "Y", "Z")),
            (1, p("X", "Z", "U")),
            (1, p("Z", "U", "XY")),
            (-1, p("X", "Z", "YU")),
        ],
        _ => return Err(Error::MaskFormOutOfRange(k)),
    })
}

/// The ten terms of the Ingleton expression as (sign, subset) pairs.
pub fn ingleton_terms(x: SubsetMask, y: SubsetMask, z: SubsetMask, u: SubsetMask) -> [(i8, SubsetMask); 10] {
    [
        (-1, x.union(y)),
        (1, x.union(z)),
        (1, x.union(u)),
        (1, y.union(z)),
        (1, y.union(u)),
        (1, z.union(u)),
        (-1, z),
        (-1, u),
        (-1, x.union(z).union(u)),
        (-1, y.union(z).union(u)),
    ]
}

impl<T: Scalar> SetFunction<T> {
    pub fn new(base: BasicSet, values: Vec<T>) -> Result<Self> {
        if values.len() != base.subset_count() {
            return Err(Error::Parse(format!(
                "expected {} values, got {}",
                base.subset_count(),
                values.len()
            )));
        }
        Ok(Self { base, values })
    }

    pub fn from_fn(base: BasicSet, f: impl Fn(SubsetMask) -> T) -> Self {
        let values = base.subsets().map(f).collect();
        Self { base, values }
    }

    pub fn zero(base: BasicSet) -> Self {
        Self::from_fn(base, |_| T::zero())
    }

    /// `h(S) = |S|`.
    pub fn modular(base: BasicSet) -> Self {
        Self::from_fn(base, |s| T::from_i64(s.len() as i64))
    }

    /// Indicator of the supersets of `{i}`.
    pub fn upsilon_up(base: BasicSet, i: usize) -> Result<Self> {
        base.check(SubsetMask::singleton(i))?;
        Ok(Self::from_fn(base, |s| {
            if s.contains(i) {
                T::one()
            } else {
                T::zero()
            }
        }))
    }

    /// The basis vector `δ_T`: 1 at `T`, 0 elsewhere.
    pub fn indicator(base: BasicSet, t: SubsetMask) -> Result<Self> {
        base.check(t)?;
        Ok(Self::from_fn(base, |s| if s == t { T::one() } else { T::zero() }))
    }

    pub fn base(&self) -> &BasicSet {
        &self.base
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, s: SubsetMask) -> Result<&T> {
        self.base.check(s)?;
        Ok(&self.values[s.0 as usize])
    }

    fn at(&self, s: SubsetMask) -> T {
        self.values[s.0 as usize].clone()
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&T) -> S) -> SetFunction<S> {
        SetFunction {
            base: self.base.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> SetFunction<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| c.clone() * v.clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        Ok(Self {
            base: self.base.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
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

    /// `h(XZ) + h(YZ) - h(XYZ) - h(Z)`. Arguments may overlap.
    pub fn delta(&self, x: SubsetMask, y: SubsetMask, z: SubsetMask) -> Result<T> {
        for m in [x, y, z] {
            self.base.check(m)?;
        }
        Ok(self.delta_unchecked(x, y, z))
    }

    pub(crate) fn delta_unchecked(&self, x: SubsetMask, y: SubsetMask, z: SubsetMask) -> T {
        self.at(x.union(z)) + self.at(y.union(z)) - self.at(x.union(y).union(z)) - self.at(z)
    }

    /// Δ of a placeholder pattern under an assignment.
    pub fn delta_pattern(&self, p: Pattern, a: &Assignment) -> Result<T> {
        let (l, r, c) = p.apply(a);
        self.delta(l, r, c)
    }

    fn check_disjoint(&self, masks: &[SubsetMask]) -> Result<()> {
        for &m in masks {
            self.base.check(m)?;
        }
        if !pairwise_disjoint(masks) {
            return Err(Error::NotDisjoint);
        }
        Ok(())
    }

    /// The Ingleton expression `□h(X,Y)` with `Z`, `U` as the other two sets.
    pub fn ingleton(&self, x: SubsetMask, y: SubsetMask, z: SubsetMask, u: SubsetMask) -> Result<T> {
        self.check_disjoint(&[x, y, z, u])?;
        Ok(ingleton_terms(x, y, z, u)
            .iter()
            .fold(T::zero(), |acc, &(sign, s)| {
                if sign > 0 {
                    acc + self.at(s)
                } else {
                    acc - self.at(s)
                }
            }))
    }

    /// Evaluates mask rewriting `k` (1..=5) of the Ingleton expression.
    pub fn mask_form(
        &self,
        k: u8,
        x: SubsetMask,
        y: SubsetMask,
        z: SubsetMask,
        u: SubsetMask,
    ) -> Result<T> {
        let terms = mask_terms(k)?;
        self.check_disjoint(&[x, y, z, u])?;
        let a = Assignment::new(x, y, z, u);
        Ok(terms.iter().fold(T::zero(), |acc, &(sign, p)| {
            let (l, r, c) = p.apply(&a);
            let d = self.delta_unchecked(l, r, c);
            if sign > 0 {
                acc + d
            } else {
                acc - d
            }
        }))
    }

    /// Elementary polymatroid check with the scalar's default tolerance.
    pub fn is_polymatroid(&self) -> CheckWitness {
        self.check_polymatroid(T::default_tol(), false)
    }

    /// Polymatroid check. With `full`, every triplet of subsets is tested
    /// instead of the elementary ones.
    pub fn check_polymatroid(&self, tol: f64, full: bool) -> CheckWitness {
        let empty = SubsetMask::EMPTY;
        let h0 = self.at(empty);
        if !h0.within(tol) {
            let v = h0.to_f64().abs();
            return CheckWitness::fail(empty, empty, empty, -v);
        }
        let negative = |d: &T| *d < T::zero() && !d.within(tol);
        if full {
            for x in self.base.subsets() {
                for y in self.base.subsets() {
                    for z in self.base.subsets() {
                        let d = self.delta_unchecked(x, y, z);
                        if negative(&d) {
                            return CheckWitness::fail(x, y, z, d.to_f64());
                        }
                    }
                }
            }
            return CheckWitness::pass();
        }
        let n = self.base.size();
        for t in ElementaryTriplet::all(n) {
            let (x, y, z) = t.masks();
            let d = self.delta_unchecked(x, y, z);
            if negative(&d) {
                return CheckWitness::fail(x, y, z, d.to_f64());
            }
        }
        for i in 0..n {
            let (x, z) = (SubsetMask::singleton(i), SubsetMask::singleton(i).complement(n));
            let d = self.delta_unchecked(x, x, z);
            if negative(&d) {
                return CheckWitness::fail(x, x, z, d.to_f64());
            }
        }
        CheckWitness::pass()
    }

    /// Integer-valued polymatroid with `0 <= h(I) <= |I|`.
    pub fn is_matroid(&self) -> bool {
        self.check_polymatroid(0.0, false).ok
            && self.base.subsets().all(|s| {
                let v = self.at(s);
                v.is_integer() && v >= T::zero() && v <= T::from_i64(s.len() as i64)
            })
    }

    /// `h(N) - h(N \ i)` for each `i`.
    pub fn tightness_defects(&self) -> Vec<T> {
        let n = self.base.size();
        (0..n)
            .map(|i| {
                let s = SubsetMask::singleton(i);
                self.delta_unchecked(s, s, s.complement(n))
            })
            .collect()
    }

    pub fn is_tight(&self) -> bool {
        let tol = T::default_tol();
        self.tightness_defects().iter().all(|d| d.within(tol))
    }

    /// Subtracts each defect times the superset indicator of its variable.
    pub fn tighten(&self) -> Result<Self> {
        let w = self.is_polymatroid();
        if !w.ok {
            return Err(Error::NotPolymatroid(format!(
                "violation {:?} with value {}",
                w.violating_triplet, w.value
            )));
        }
        let defects = self.tightness_defects();
        Ok(Self::from_fn(self.base.clone(), |s| {
            s.iter()
                .fold(self.at(s), |acc, i| acc - defects[i].clone())
        }))
    }

    /// Elementary triplets on which Δ vanishes within `tol`.
    pub fn induced_ci_structure_of_rank(&self, tol: f64) -> Result<CIStructure> {
        let mut out = CIStructure::empty(self.base.clone())?;
        for t in ElementaryTriplet::all(self.base.size()) {
            let (x, y, z) = t.masks();
            if self.delta_unchecked(x, y, z).within(tol) {
                out.insert(t);
            }
        }
        Ok(out)
    }

    pub fn to_file(&self) -> SetFunctionFile {
        SetFunctionFile {
            base: self.base.names().to_vec(),
            values: self
                .base
                .subsets()
                .map(|s| (self.base.label(s), self.at(s).render()))
                .collect(),
        }
    }

    pub fn from_file(file: &SetFunctionFile) -> Result<Self> {
        let base = BasicSet::new(file.base.iter().cloned())?;
        let keys: BTreeMap<String, SubsetMask> =
            base.subsets().map(|s| (base.label(s), s)).collect();
        let mut values: Vec<Option<T>> = vec![None; base.subset_count()];
        for (key, text) in &file.values {
            let s = keys
                .get(key.as_str())
                .ok_or_else(|| Error::Parse(format!("unknown subset key `{key}`")))?;
            let v = T::parse(text).map_err(|e| Error::Parse(format!("value for `{key}`: {e}")))?;
            values[s.0 as usize] = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                v.ok_or_else(|| {
                    Error::Parse(format!(
                        "missing value for subset `{}`",
                        base.label(SubsetMask(k as u32))
                    ))
                })
            })
            .collect::<Result<Vec<T>>>()?;
        Self::new(base, values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }
}

impl SetFunction<Rational> {
    /// Rational function from integer values given in mask order.
    pub fn from_integers(base: BasicSet, values: &[i64]) -> Result<Self> {
        Self::new(base, values.iter().map(|&v| Rational::from_i64(v)).collect())
    }
}

impl<T: Scalar> fmt::Debug for SetFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for s in self.base.subsets() {
            m.entry(&self.base.display(s), &self.values[s.0 as usize]);
        }
        m.finish()
    }
}

/// JSON layout of a set function.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SetFunctionFile {
    pub base: Vec<String>,
    pub values: BTreeMap<String, String>,
}

/// The rank function `h_xy` on `{x, y, z, u}`: 0, 4 on `xy` and `N`, else `|S| + 1`.
pub fn h_xy() -> SetFunction<Rational> {
    let base = BasicSet::xyzu();
    let xy = SubsetMask(0b0011);
    let full = base.full();
    SetFunction::from_fn(base, |s| {
        let v = if s.is_empty() {
            0
        } else if s == xy || s == full {
            4
        } else {
            s.len() as i64 + 1
        };
        Rational::from_i64(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num::Zero;
    use proptest::prelude::*;

    fn m(bits: u32) -> SubsetMask {
        SubsetMask(bits)
    }

    const X: SubsetMask = SubsetMask(1);
    const Y: SubsetMask = SubsetMask(2);
    const Z: SubsetMask = SubsetMask(4);
    const U: SubsetMask = SubsetMask(8);

    #[test]
    fn delta_on_hxy() {
        let h = h_xy();
        assert_eq!(h.delta(Z, U, m(0)).unwrap(), ratio(1, 1));
        assert_eq!(h.delta(m(0), U, Z).unwrap(), ratio(0, 1));
        assert!(h.delta(m(16), U, Z).is_err());
    }

    #[test]
    fn hxy_properties() {
        let h = h_xy();
        assert_eq!(h.ingleton(X, Y, Z, U).unwrap(), ratio(-1, 1));
        assert!(h.is_polymatroid().ok);
        assert!(h.is_tight());
        assert!(!h.is_matroid());
        for k in 1..=5 {
            assert_eq!(h.mask_form(k, X, Y, Z, U).unwrap(), ratio(-1, 1));
        }
    }

    #[test]
    fn mask_form_rejects_bad_input() {
        let h = h_xy();
        assert!(matches!(h.mask_form(0, X, Y, Z, U), Err(Error::MaskFormOutOfRange(0))));
        assert!(matches!(h.mask_form(6, X, Y, Z, U), Err(Error::MaskFormOutOfRange(6))));
        assert!(matches!(h.ingleton(X, X, Z, U), Err(Error::NotDisjoint)));
    }

    #[test]
    fn nonzero_empty_value_fails() {
        let base = BasicSet::xyzu();
        let h = SetFunction::<Rational>::from_fn(base, |_| ratio(1, 1));
        let w = h.is_polymatroid();
        assert!(!w.ok);
        assert!(w.violating_triplet.is_some());
        assert!(w.value < 0.0);
    }

    #[test]
    fn zero_function_is_matroid() {
        let h = SetFunction::<Rational>::zero(BasicSet::xyzu());
        assert!(h.is_matroid());
        assert!(h.is_tight());
        assert_eq!(h.ingleton(X, Y, Z, U).unwrap(), ratio(0, 1));
    }

    #[test]
    fn tighten_superset_indicator_vanishes() {
        let base = BasicSet::xyzu();
        for i in 0..4 {
            let h = SetFunction::<Rational>::upsilon_up(base.clone(), i).unwrap();
            assert!(!h.is_tight());
            let t = h.tighten().unwrap();
            assert!(t.values().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn tighten_rejects_non_polymatroid() {
        let base = BasicSet::xyzu();
        let h = SetFunction::<Rational>::from_fn(base, |s| ratio(-(s.len() as i64), 1));
        assert!(matches!(h.tighten(), Err(Error::NotPolymatroid(_))));
    }

    #[test]
    fn modular_function_induces_full_structure() {
        let h = SetFunction::<Rational>::modular(BasicSet::xyzu());
        assert_eq!(h.induced_ci_structure_of_rank(0.0).unwrap().len(), 24);
    }

    #[test]
    fn hxy_structure_by_scan() {
        // independent scan of the 24 elementary Δ values
        let h = h_xy();
        let s = h.induced_ci_structure_of_rank(0.0).unwrap();
        let mut expected = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                let rest = m(15 & !(1 << i) & !(1 << j));
                for k in rest.subsets() {
                    let v = |a: u32| h.values()[a as usize].clone();
                    let d = v(1 << i | k.0) + v(1 << j | k.0) - v(1 << i | 1 << j | k.0) - v(k.0);
                    if d.is_zero() {
                        expected += 1;
                        assert!(s.contains(ElementaryTriplet::new(i, j, k).unwrap()));
                    }
                }
            }
        }
        assert_eq!(s.len(), expected);
    }

    #[test]
    fn json_round_trip() {
        let h = h_xy();
        let back = SetFunction::<Rational>::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
        assert!(SetFunction::<Rational>::from_json(r#"{"base":["x","y"],"values":{"":"0","x":"1"}}"#).is_err());
    }

    fn rational_fn() -> impl Strategy<Value = SetFunction<Rational>> {
        prop::collection::vec(-20i64..20, 16).prop_map(|v| {
            SetFunction::new(BasicSet::xyzu(), v.into_iter().map(|a| ratio(a, 3)).collect()).unwrap()
        })
    }

    fn polymatroid() -> impl Strategy<Value = SetFunction<Rational>> {
        // nonnegative combinations of matroid rank functions
        prop::collection::vec(0i64..4, 6).prop_map(|w| {
            let base = BasicSet::xyzu();
            let gens: Vec<SetFunction<Rational>> = vec![
                SetFunction::modular(base.clone()),
                h_xy(),
                SetFunction::from_fn(base.clone(), |s| ratio(s.len().min(1) as i64, 1)),
                SetFunction::from_fn(base.clone(), |s| ratio(s.len().min(2) as i64, 1)),
                SetFunction::from_fn(base.clone(), |s| ratio((s.0 & 3).count_ones().min(1) as i64, 1)),
                SetFunction::from_fn(base.clone(), |s| ratio((s.0 & 7).count_ones().min(2) as i64, 1)),
            ];
            gens.iter()
                .zip(w)
                .fold(SetFunction::zero(base), |acc, (g, c)| acc.try_add(&g.scale(&ratio(c, 1))).unwrap())
        })
    }

    fn disjoint_four() -> impl Strategy<Value = [SubsetMask; 4]> {
        // each variable goes to one of X, Y, Z, U or nowhere
        prop::collection::vec(0u8..5, 4).prop_map(|slots| {
            let mut out = [SubsetMask::EMPTY; 4];
            for (var, &s) in slots.iter().enumerate() {
                if s < 4 {
                    out[s as usize] = out[s as usize].union(SubsetMask::singleton(var));
                }
            }
            out
        })
    }

    proptest! {
        #[test]
        fn masks_equal_ingleton(h in rational_fn(), a in disjoint_four()) {
            let [x, y, z, u] = a;
            let v = h.ingleton(x, y, z, u).unwrap();
            for k in 1..=5 {
                prop_assert_eq!(h.mask_form(k, x, y, z, u).unwrap(), v.clone());
            }
        }

        #[test]
        fn masks_equal_ingleton_float(h in rational_fn(), a in disjoint_four()) {
            let h = h.to_f64();
            let [x, y, z, u] = a;
            let v = h.ingleton(x, y, z, u).unwrap();
            for k in 1..=5 {
                prop_assert!((h.mask_form(k, x, y, z, u).unwrap() - v).abs() <= 1e-12);
            }
        }

        #[test]
        fn ingleton_symmetries(h in rational_fn(), a in disjoint_four()) {
            let [x, y, z, u] = a;
            let v = h.ingleton(x, y, z, u).unwrap();
            prop_assert_eq!(h.ingleton(y, x, z, u).unwrap(), v.clone());
            prop_assert_eq!(h.ingleton(x, y, u, z).unwrap(), v);
        }

        #[test]
        fn chain_rule_identity(h in rational_fn(), a in disjoint_four()) {
            let [x, y, z, u] = a;
            let lhs = h.delta(x, y.union(z), u).unwrap();
            let rhs = h.delta(x, y, z.union(u)).unwrap() + h.delta(x, z, u).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn polymatroid_delta_nonnegative(h in polymatroid(), x in 0u32..16, y in 0u32..16, z in 0u32..16) {
            prop_assert!(h.is_polymatroid().ok);
            prop_assert!(h.delta(m(x), m(y), m(z)).unwrap() >= ratio(0, 1));
        }

        #[test]
        fn elementary_check_agrees_with_full(h in rational_fn()) {
            prop_assert_eq!(h.check_polymatroid(0.0, false).ok, h.check_polymatroid(0.0, true).ok);
        }

        #[test]
        fn tighten_properties(h in polymatroid()) {
            let t = h.tighten().unwrap();
            prop_assert!(t.is_tight());
            prop_assert!(t.is_polymatroid().ok);
            prop_assert_eq!(t.tighten().unwrap(), t.clone());
            let defects = h.tightness_defects();
            let removed = SetFunction::from_fn(BasicSet::xyzu(), |s| {
                s.iter().map(|i| defects[i].clone()).sum::<Rational>()
            });
            for e in ElementaryTriplet::all(4) {
                let (x, y, z) = e.masks();
                let before = h.delta(x, y, z).unwrap();
                let after = t.delta(x, y, z).unwrap();
                let correction = removed.delta(x, y, z).unwrap();
                prop_assert_eq!(after.clone(), before.clone() - correction.clone());
                // the removed part is modular, so disjoint Δ values survive
                prop_assert!(correction.is_zero());
                prop_assert_eq!(after, before);
            }
        }
    }
}
