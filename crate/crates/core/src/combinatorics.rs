//! Closed and parabolic root subsets, triangular decompositions, the
//! saturation cone C_V, shadows and α-string classification.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{Cyclotomic, Rational};
use crate::lp;
use crate::par;
use crate::roots::{RootSystem, RootVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombError {
    #[error("NotASubsetOfDelta: {0:?} is not a root")]
    NotASubsetOfDelta(RootVector),
    #[error("InjNotClosed: the injective set is not closed")]
    InjNotClosed,
    #[error("InconsistentShadow: {0}")]
    InconsistentShadow(String),
    #[error("AmbiguousSupport: {0}")]
    AmbiguousSupport(String),
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

impl CombError {
    pub fn code(&self) -> &'static str {
        match self {
            CombError::NotASubsetOfDelta(_) => "NotASubsetOfDelta",
            CombError::InjNotClosed => "InjNotClosed",
            CombError::InconsistentShadow(_) => "InconsistentShadow",
            CombError::AmbiguousSupport(_) => "AmbiguousSupport",
            CombError::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}

fn check_subset(rs: &RootSystem, r: &[RootVector]) -> Result<(), CombError> {
    for a in r {
        if a.dim() != rs.dim() {
            return Err(CombError::DimensionMismatch { expected: rs.dim(), got: a.dim() });
        }
        if rs.parity(a).is_none() {
            return Err(CombError::NotASubsetOfDelta(a.clone()));
        }
    }
    Ok(())
}

pub fn is_closed(rs: &RootSystem, r: &[RootVector]) -> Result<bool, CombError> {
    check_subset(rs, r)?;
    let set: BTreeSet<&RootVector> = r.iter().collect();
    for a in r {
        for b in r {
            let s = a + b;
            if rs.parity(&s).is_some() && !set.contains(&s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_parabolic(rs: &RootSystem, r: &[RootVector]) -> Result<bool, CombError> {
    if !is_closed(rs, r)? {
        return Ok(false);
    }
    let set: BTreeSet<&RootVector> = r.iter().collect();
    Ok(rs.roots().iter().all(|a| set.contains(a) || set.contains(&-a)))
}

/// Every closed subset of Δ, by bitmask over `rs.roots()`. Only sensible for
/// small systems (|Δ| ≤ 20).
pub fn closed_subsets(rs: &RootSystem) -> Vec<Vec<RootVector>> {
    let roots = rs.roots();
    let n = roots.len();
    assert!(n <= 20, "too many roots to enumerate subsets");
    let mut sums = Vec::new();
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            if let Some(k) = roots.iter().position(|c| *c == a + b) {
                sums.push((i, j, k));
            }
        }
    }
    (0u32..1 << n)
        .filter(|&mask| {
            sums.iter().all(|&(i, j, k)| mask >> i & 1 == 0 || mask >> j & 1 == 0 || mask >> k & 1 == 1)
        })
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| roots[i].clone()).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularDecomposition {
    pub functional: Vec<i64>,
    pub plus: Vec<RootVector>,
    pub zero: Vec<RootVector>,
    pub minus: Vec<RootVector>,
}

impl TriangularDecomposition {
    pub fn is_proper(&self) -> bool {
        !self.plus.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "functional": self.functional,
            "plus": self.plus,
            "zero": self.zero,
            "minus": self.minus,
            "proper": self.is_proper(),
        })
    }
}

pub fn triangular_from_functional(rs: &RootSystem, l: &[i64]) -> Result<TriangularDecomposition, CombError> {
    if l.len() != rs.dim() {
        return Err(CombError::DimensionMismatch { expected: rs.dim(), got: l.len() });
    }
    let mut t = TriangularDecomposition { functional: l.to_vec(), plus: vec![], zero: vec![], minus: vec![] };
    for a in rs.roots() {
        match a.pair(l).signum() {
            1 => t.plus.push(a),
            0 => t.zero.push(a),
            _ => t.minus.push(a),
        }
    }
    Ok(t)
}

fn to_rat(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::integer(x)).collect()
}

/// λ ∈ cone_ℚ₊(generators), i.e. mλ ∈ ℤ₊·generators for some m > 0.
pub fn cone_member(generators: &[RootVector], lambda: &RootVector) -> bool {
    let gens: Vec<Vec<Rational>> = generators.iter().map(|g| to_rat(&g.0)).collect();
    lp::in_cone(&gens, &to_rat(&lambda.0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowPartition {
    pub inj: Vec<RootVector>,
    pub cone_generators: Vec<RootVector>,
    pub i: Vec<RootVector>,
    pub f: Vec<RootVector>,
    pub plus: Vec<RootVector>,
    pub minus: Vec<RootVector>,
}

impl ShadowPartition {
    pub fn to_json(&self, functional: Option<&[i64]>) -> Value {
        json!({
            "inj": self.inj,
            "i": self.i,
            "f": self.f,
            "plus": self.plus,
            "minus": self.minus,
            "functional": functional,
        })
    }
}

pub fn shadow_from_inj(rs: &RootSystem, inj: &[RootVector]) -> Result<ShadowPartition, CombError> {
    check_subset(rs, inj)?;
    if !is_closed(rs, inj)? {
        return Err(CombError::InjNotClosed);
    }
    let mut inj: Vec<RootVector> = inj.to_vec();
    inj.sort();
    inj.dedup();
    let roots = rs.roots();
    let membership = par::map(&roots, |a| (cone_member(&inj, a), cone_member(&inj, &-a)));
    let mut s = ShadowPartition {
        inj: inj.clone(),
        cone_generators: inj,
        i: vec![],
        f: vec![],
        plus: vec![],
        minus: vec![],
    };
    for (a, (pos, neg)) in roots.into_iter().zip(membership) {
        match (pos, neg) {
            (true, true) => s.i.push(a),
            (false, false) => s.f.push(a),
            (false, true) => s.plus.push(a),
            (true, false) => s.minus.push(a),
        }
    }
    Ok(s)
}

fn check_shadow(rs: &RootSystem, s: &ShadowPartition) -> Result<(), CombError> {
    let parts = [&s.i, &s.f, &s.plus, &s.minus];
    let mut seen = BTreeSet::new();
    for p in parts {
        check_subset(rs, p).map_err(|e| CombError::InconsistentShadow(e.to_string()))?;
        for a in p.iter() {
            if !seen.insert(a.clone()) {
                return Err(CombError::InconsistentShadow(format!("{a:?} appears twice")));
            }
        }
    }
    if seen.len() != rs.len() {
        return Err(CombError::InconsistentShadow("parts do not cover Δ".into()));
    }
    let neg = |v: &[RootVector]| v.iter().map(|a| -a).collect::<BTreeSet<_>>();
    if neg(&s.plus) != s.minus.iter().cloned().collect() {
        return Err(CombError::InconsistentShadow("minus part is not the negative of plus".into()));
    }
    Ok(())
}

/// Integer functional vanishing on Δ_V^i and positive on Δ_V^+ (hence negative on
/// Δ_V^−). Among all such functionals, returns one minimising the max-norm, then
/// the ℓ¹-norm, then lexicographically.
pub fn functional_for_shadow(
    rs: &RootSystem,
    shadow: &ShadowPartition,
) -> Result<Option<TriangularDecomposition>, CombError> {
    check_shadow(rs, shadow)?;
    let d = rs.dim();
    let zero: Vec<Vec<Rational>> = shadow.i.iter().map(|a| to_rat(&a.0)).collect();
    let pos: Vec<Vec<Rational>> = shadow.plus.iter().map(|a| to_rat(&a.0)).collect();
    let Some(sol) = lp::separating_functional(d, &zero, &pos) else {
        return Ok(None);
    };
    let scaled = integer_scaling(&sol);
    let ok = |l: &[i64]| {
        shadow.i.iter().all(|a| a.pair(l) == 0) && shadow.plus.iter().all(|a| a.pair(l) > 0)
    };
    let bound = scaled.iter().map(|x| x.abs()).max().unwrap_or(0);
    let best = smallest_integer_solution(d, bound, &ok).unwrap_or(scaled);
    triangular_from_functional(rs, &best).map(Some)
}

/// Clears denominators and divides by the content.
fn integer_scaling(v: &[Rational]) -> Vec<i64> {
    use num_integer::Integer;
    let lcm = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g == num_bigint::BigInt::from(0) { x.clone() } else { x / &g };
            i64::try_from(y).expect("functional fits in i64")
        })
        .collect()
}

const ENUMERATION_LIMIT: u64 = 2_000_000;

fn smallest_integer_solution(d: usize, bound: i64, ok: &dyn Fn(&[i64]) -> bool) -> Option<Vec<i64>> {
    for m in 0..=bound {
        let side = (2 * m + 1) as u64;
        if side.checked_pow(d as u32).is_none_or(|n| n > ENUMERATION_LIMIT) {
            return None;
        }
        let mut best: Option<(i64, Vec<i64>)> = None;
        let mut cur = vec![-m; d];
        loop {
            if cur.iter().any(|x| x.abs() == m) && ok(&cur) {
                let l1: i64 = cur.iter().map(|x| x.abs()).sum();
                if best.as_ref().is_none_or(|(b, _)| l1 < *b) {
                    best = Some((l1, cur.clone()));
                }
            }
            // Lexicographic order, so the first hit per ℓ¹ value is the lex-smallest.
            if !odometer_next(&mut cur, m) {
                break;
            }
        }
        if let Some((_, l)) = best {
            return Some(l);
        }
    }
    None
}

fn odometer_next(cur: &mut [i64], m: i64) -> bool {
    for k in (0..cur.len()).rev() {
        if cur[k] < m {
            cur[k] += 1;
            for x in &mut cur[k + 1..] {
                *x = -m;
            }
            return true;
        }
    }
    false
}

/// A finitely presented weight support Θ + ℤ·directions + ℤ₊·cone, in the
/// coordinates of the module's weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    pub base: Vec<Vec<Cyclotomic>>,
    pub directions: Vec<Vec<i64>>,
    #[serde(default)]
    pub cone: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportKind {
    Finite,
    Coset,
    Cone,
}

impl SupportSet {
    pub fn finite(base: Vec<Vec<Cyclotomic>>) -> SupportSet {
        SupportSet { base, directions: vec![], cone: vec![] }
    }

    pub fn kind(&self) -> SupportKind {
        if !self.directions.is_empty() {
            SupportKind::Coset
        } else if !self.cone.is_empty() {
            SupportKind::Cone
        } else {
            SupportKind::Finite
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.base.first().map(Vec::len)
    }

    /// Membership of a weight: w − θ ∈ ℤ·directions + ℤ₊·cone for some θ in the base.
    /// The cone part is tested as a lattice point of the rational cone, which is
    /// exact for the saturated cones produced here.
    pub fn contains(&self, w: &[Cyclotomic]) -> bool {
        self.base.iter().any(|b| {
            let Some(d): Option<Vec<i64>> = w.iter().zip(b).map(|(x, y)| (x - y).to_i64()).collect() else {
                return false;
            };
            if d.iter().all(|&x| x == 0) {
                return true;
            }
            let lattice: Vec<Vec<i64>> = self.directions.iter().chain(&self.cone).cloned().collect();
            if lattice.is_empty() || !crate::arith::lattice::lattice_contains(&lattice, &d) {
                return false;
            }
            if self.cone.is_empty() {
                return true;
            }
            let mut gens: Vec<Vec<Rational>> = Vec::new();
            for dir in &self.directions {
                gens.push(to_rat(dir));
                gens.push(dir.iter().map(|&x| Rational::integer(-x)).collect());
            }
            gens.extend(self.cone.iter().map(|c| to_rat(c)));
            lp::in_cone(&gens, &to_rat(&d))
        })
    }

    /// Minkowski sum, the support of a tensor product.
    pub fn sum(&self, other: &SupportSet) -> SupportSet {
        let mut base = Vec::new();
        for a in &self.base {
            for b in &other.base {
                let w: Vec<Cyclotomic> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !base.contains(&w) {
                    base.push(w);
                }
            }
        }
        let mut directions = self.directions.clone();
        directions.extend(other.directions.iter().cloned());
        let mut cone = self.cone.clone();
        cone.extend(other.cone.iter().cloned());
        SupportSet { base, directions, cone }
    }

    /// Concatenated coordinates, the support of an outer tensor product.
    pub fn outer(&self, other: &SupportSet) -> SupportSet {
        let (n1, n2) = (self.dim().unwrap_or(0), other.dim().unwrap_or(0));
        let mut base = Vec::new();
        for a in &self.base {
            for b in &other.base {
                base.push(a.iter().chain(b).cloned().collect());
            }
        }
        let pad_left = |v: &Vec<i64>| [vec![0; n1], v.clone()].concat();
        let pad_right = |v: &Vec<i64>| [v.clone(), vec![0; n2]].concat();
        let directions = self.directions.iter().map(pad_right).chain(other.directions.iter().map(pad_left)).collect();
        let cone = self.cone.iter().map(pad_right).chain(other.cone.iter().map(pad_left)).collect();
        SupportSet { base, directions, cone }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StringClass {
    /// Bounded in both directions.
    F,
    /// Unbounded in both directions.
    I,
    /// Bounded above only.
    Plus,
    /// Bounded below only.
    Minus,
}

/// Boundedness of {x ∈ ℤ : λ + xα ∈ Supp}; the answer is the same for every λ
/// in the support.
pub fn classify_string(support: &SupportSet, alpha: &[i64]) -> Result<StringClass, CombError> {
    let Some(dim) = support.dim() else {
        return Err(CombError::AmbiguousSupport("empty base set".into()));
    };
    let consistent = alpha.len() == dim
        && support.base.iter().all(|b| b.len() == dim)
        && support.directions.iter().chain(&support.cone).all(|d| d.len() == dim);
    if !consistent {
        return Err(CombError::AmbiguousSupport("coordinate lengths disagree".into()));
    }
    if alpha.iter().all(|&x| x == 0) {
        return Err(CombError::AmbiguousSupport("zero direction".into()));
    }
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    for d in &support.directions {
        gens.push(to_rat(d));
        gens.push(d.iter().map(|&x| Rational::integer(-x)).collect());
    }
    gens.extend(support.cone.iter().map(|d| to_rat(d)));
    let up = lp::in_cone(&gens, &to_rat(alpha));
    let down = lp::in_cone(&gens, &alpha.iter().map(|&x| Rational::integer(-x)).collect::<Vec<_>>());
    Ok(match (up, down) {
        (true, true) => StringClass::I,
        (false, false) => StringClass::F,
        (false, true) => StringClass::Plus,
        (true, false) => StringClass::Minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{build_root_system, Family};

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    fn sl21() -> RootSystem {
        build_root_system(&Family::A { m: 1, n: 0 }).unwrap()
    }

    fn osp12() -> RootSystem {
        build_root_system(&Family::B { m: 0, n: 1 }).unwrap()
    }

    #[test]
    fn closedness() {
        let rs = sl21();
        assert!(is_closed(&rs, &[rv(&[1, -1, 0])]).unwrap());
        assert!(!is_closed(&rs, &[rv(&[1, 0, -1]), rv(&[0, -1, 1])]).unwrap());
        assert!(is_closed(&osp12(), &[rv(&[1]), rv(&[2])]).unwrap());
        assert_eq!(is_closed(&rs, &[rv(&[1, 1, 0])]), Err(CombError::NotASubsetOfDelta(rv(&[1, 1, 0]))));
    }

    #[test]
    fn parabolic_sets() {
        let o = osp12();
        assert!(is_parabolic(&o, &[rv(&[1]), rv(&[2])]).unwrap());
        assert!(!is_parabolic(&o, &[rv(&[1])]).unwrap());
        assert!(is_parabolic(&sl21(), &sl21().roots()).unwrap());
    }

    #[test]
    fn triangular_split() {
        let t = triangular_from_functional(&sl21(), &[1, 0, 0]).unwrap();
        let plus: BTreeSet<_> = t.plus.iter().cloned().collect();
        assert_eq!(plus, [rv(&[1, -1, 0]), rv(&[1, 0, -1])].into_iter().collect());
        assert_eq!(t.zero.len(), 2);
        assert!(!triangular_from_functional(&sl21(), &[0, 0, 0]).unwrap().is_proper());
        let t = triangular_from_functional(&osp12(), &[1]).unwrap();
        assert_eq!(t.plus, vec![rv(&[2]), rv(&[1])]);
        assert!(t.zero.is_empty());
    }

    #[test]
    fn cones() {
        let d21 = build_root_system(&Family::D21 { a: Rational::new(1, 2) }).unwrap();
        assert!(cone_member(d21.roots_even(), &rv(&[1, 1, 1])));
        assert!(!cone_member(&[rv(&[1, -1])], &rv(&[-1, 1])));
        assert!(cone_member(&[rv(&[1]), rv(&[2])], &rv(&[3])));
    }

    #[test]
    fn shadows() {
        let rs = sl21();
        let s = shadow_from_inj(&rs, &[rv(&[1, -1, 0]), rv(&[-1, 1, 0])]).unwrap();
        assert_eq!(s.i.len(), 2);
        assert_eq!(s.f.len(), 4);
        let d21 = build_root_system(&Family::D21 { a: Rational::new(1, 2) }).unwrap();
        assert_eq!(shadow_from_inj(&d21, d21.roots_even()).unwrap().i.len(), d21.len());
        assert_eq!(shadow_from_inj(&rs, &[]).unwrap().f.len(), rs.len());
        assert_eq!(
            shadow_from_inj(&rs, &[rv(&[1, 0, -1]), rv(&[0, -1, 1])]),
            Err(CombError::InjNotClosed)
        );
    }

    #[test]
    fn functionals() {
        let rs = sl21();
        let s = ShadowPartition {
            inj: vec![],
            cone_generators: vec![],
            i: vec![rv(&[0, 1, -1]), rv(&[0, -1, 1])],
            f: vec![],
            plus: vec![rv(&[1, -1, 0]), rv(&[1, 0, -1])],
            minus: vec![rv(&[-1, 1, 0]), rv(&[-1, 0, 1])],
        };
        let t = functional_for_shadow(&rs, &s).unwrap().unwrap();
        assert_eq!(t.functional, vec![1, 0, 0]);
        let all_f = shadow_from_inj(&rs, &[]).unwrap();
        assert_eq!(functional_for_shadow(&rs, &all_f).unwrap().unwrap().functional, vec![0, 0, 0]);
    }

    #[test]
    fn strings() {
        let w = |x: i64| vec![Cyclotomic::integer(x)];
        let line = SupportSet { base: vec![w(0)], directions: vec![vec![2]], cone: vec![] };
        assert_eq!(classify_string(&line, &[2]).unwrap(), StringClass::I);
        let finite = SupportSet::finite(vec![w(1), w(-1)]);
        assert_eq!(classify_string(&finite, &[2]).unwrap(), StringClass::F);
        let half = SupportSet { base: vec![w(0)], directions: vec![], cone: vec![vec![2]] };
        assert_eq!(classify_string(&half, &[2]).unwrap(), StringClass::Minus);
        assert_eq!(classify_string(&half, &[-2]).unwrap(), StringClass::Plus);
        assert!(classify_string(&SupportSet::finite(vec![]), &[2]).is_err());
    }

    #[test]
    fn closed_subset_count_osp12() {
        // ∅, {±δ,±2δ} pieces: closed sets of a rank-one system.
        let subsets = closed_subsets(&osp12());
        assert!(subsets.iter().any(|s| s.is_empty()));
        assert!(subsets.iter().all(|s| is_closed(&osp12(), s).unwrap()));
    }
}
