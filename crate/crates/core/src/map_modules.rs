//! Evaluation modules over g ⊗ k[t, t⁻¹]: the evaluation action, annihilators,
//! the boundedness criterion for tensor factors, and a classification witness.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::linalg::{closure_span, is_zero_vec};
use crate::arith::{Cyclotomic, Echelon, Mat, Poly, Rational, Vector};
use crate::combinatorics::{classify_string, StringClass};
use crate::modules::{
    endomorphisms, simplicity_check, ModError, ModuleWindow, SparseVec, TensorProduct, Verdict, Weight,
};
use crate::roots::RootVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("OutOfWindow: {0}")]
    OutOfWindow(String),
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("BadDescriptor: {0}")]
    BadDescriptor(String),
    #[error(transparent)]
    Module(#[from] ModError),
}

impl MapError {
    pub fn code(&self) -> &'static str {
        match self {
            MapError::OutOfWindow(_) => "OutOfWindow",
            MapError::PreconditionViolated(_) => "PreconditionViolated",
            MapError::BadDescriptor(_) => "BadDescriptor",
            MapError::Module(e) => e.code(),
        }
    }
}

/// V₁^{a₁} ⊗ … ⊗ V_r^{a_r}: factors over a common g, pulled back along the
/// evaluations t ↦ a_i.
#[derive(Clone, Debug)]
pub struct EvaluationDescriptor {
    points: Vec<Cyclotomic>,
    tensor: TensorProduct,
}

impl EvaluationDescriptor {
    /// Checks the counts, the common algebra and that the points are nonzero.
    /// Distinctness is checked by the operations that need it.
    pub fn new(points: Vec<Cyclotomic>, factors: Vec<ModuleWindow>) -> Result<EvaluationDescriptor, MapError> {
        if points.is_empty() || points.len() != factors.len() {
            return Err(MapError::BadDescriptor(format!("{} points for {} factors", points.len(), factors.len())));
        }
        if points.iter().any(Cyclotomic::is_zero) {
            return Err(MapError::BadDescriptor("points must be nonzero".into()));
        }
        let tensor = TensorProduct::new(factors)?;
        Ok(EvaluationDescriptor { points, tensor })
    }

    pub fn points(&self) -> &[Cyclotomic] {
        &self.points
    }

    pub fn factors(&self) -> &[ModuleWindow] {
        self.tensor.factors()
    }

    pub fn tensor(&self) -> &TensorProduct {
        &self.tensor
    }

    /// The underlying g-module V₁ ⊗ … ⊗ V_r.
    pub fn module(&self) -> &ModuleWindow {
        self.tensor.module()
    }

    pub fn check_distinct(&self) -> Result<(), MapError> {
        for i in 0..self.points.len() {
            for j in 0..i {
                if self.points[i] == self.points[j] {
                    return Err(MapError::PreconditionViolated(format!(
                        "points not distinct: a{} = a{} = {}",
                        j + 1,
                        i + 1,
                        self.points[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn infinite_factors(&self) -> Vec<usize> {
        (0..self.factors().len()).filter(|&i| !self.factors()[i].is_total()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "factors": self.factors().iter().map(|f| f.origin().clone()).collect::<Vec<_>>(),
        })
    }
}

fn combine(acc: &mut BTreeMap<usize, Cyclotomic>, c: &Cyclotomic, v: &SparseVec) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Cyclotomic::zero);
        *e = &*e + &(c * x);
    }
}

/// Σ_i coeffs[i]·(slot-i action of x) on basis vector b.
fn weighted_slots(desc: &EvaluationDescriptor, x: usize, coeffs: &[Cyclotomic], b: usize) -> Option<SparseVec> {
    let mut acc = BTreeMap::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        combine(&mut acc, c, &desc.tensor.slot_act(i, x, b)?);
    }
    Some(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// (x ⊗ tⁿ)·(v₁ ⊗ … ⊗ v_r) = Σ_i a_iⁿ (Koszul-signed x on slot i), for the
/// basis vector `b` of the tensor product.
pub fn evaluation_act(desc: &EvaluationDescriptor, x: usize, n: i64, b: usize) -> Result<SparseVec, MapError> {
    let coeffs: Vec<Cyclotomic> = desc.points.iter().map(|a| a.pow(n).expect("nonzero point")).collect();
    weighted_slots(desc, x, &coeffs, b).ok_or_else(|| MapError::OutOfWindow(format!("x⊗t^{n} on basis vector {b}")))
}

/// Action of x ⊗ p(t): Σ_i p(a_i) (slot-i action of x).
pub fn polynomial_act(desc: &EvaluationDescriptor, x: usize, p: &Poly, b: usize) -> Result<SparseVec, MapError> {
    let coeffs: Vec<Cyclotomic> = desc.points.iter().map(|a| p.eval(a)).collect();
    weighted_slots(desc, x, &coeffs, b).ok_or_else(|| MapError::OutOfWindow(format!("x⊗p(t) on basis vector {b}")))
}

/// Basis vectors on which every slot action is known.
fn window_interior(desc: &EvaluationDescriptor) -> Vec<usize> {
    (0..desc.module().dim()).filter(|&b| desc.module().is_interior(b)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorReport {
    #[serde(serialize_with = "poly_str")]
    pub generator: Poly,
    pub is_radical: bool,
    /// g ⊗ generator kills every interior vector of the window.
    pub kills_window: bool,
    /// Dimension of {p : deg p ≤ bound, g ⊗ p kills the window}.
    pub kernel_dim: usize,
    /// Dimension of the multiples of the generator of degree ≤ bound.
    pub expected_kernel_dim: usize,
    pub degree_bound: usize,
}

fn poly_str<S: serde::Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl AnnihilatorReport {
    /// The window certifies Ann = (generator) in degrees ≤ bound.
    pub fn verified(&self) -> bool {
        self.kills_window && self.kernel_dim == self.expected_kernel_dim
    }
}

/// Ann_{k[t,t⁻¹]}(V) = (Π (t − a_i)), checked on the window: the polynomials
/// of degree ≤ `degree_bound` whose action vanishes are exactly the multiples
/// of the generator.
pub fn annihilator(desc: &EvaluationDescriptor, degree_bound: usize) -> Result<AnnihilatorReport, MapError> {
    desc.check_distinct()?;
    let generator = desc.points.iter().fold(Poly::one(), |acc, a| acc.mul(&Poly::linear_root(a)));
    let alg = desc.module().algebra().clone();
    let interior = window_interior(desc);
    let r = desc.points.len();

    // Slot actions flattened over (x, b, row); x ⊗ p acts as Σ p(a_i)·S_i.
    let mut keys: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut slots: Vec<BTreeMap<usize, Cyclotomic>> = vec![BTreeMap::new(); r];
    for x in 0..alg.len() {
        for &b in &interior {
            for (i, slot) in slots.iter_mut().enumerate() {
                for (row, c) in desc.tensor.slot_act(i, x, b).expect("interior vector") {
                    let n = keys.len();
                    let k = *keys.entry((x, b, row)).or_insert(n);
                    slot.insert(k, c);
                }
            }
        }
    }
    let powers: Vec<Vec<Cyclotomic>> = desc
        .points
        .iter()
        .map(|a| (0..=degree_bound).map(|k| a.pow(k as i64).expect("nonzero")).collect())
        .collect();
    let mut cols: Vec<Vector> = Vec::with_capacity(degree_bound + 1);
    for k in 0..=degree_bound {
        let mut col = vec![Cyclotomic::zero(); keys.len()];
        for (i, slot) in slots.iter().enumerate() {
            for (&row, c) in slot {
                col[row] = &col[row] + &(&powers[i][k] * c);
            }
        }
        cols.push(col);
    }
    let kernel_dim = Mat::from_cols(keys.len(), &cols).nullspace().len();
    let expected_kernel_dim = (degree_bound + 1).saturating_sub(r);
    let mut kills_window = true;
    for x in 0..alg.len() {
        for &b in &interior {
            if !polynomial_act(desc, x, &generator, b)?.is_empty() {
                kills_window = false;
            }
        }
    }
    Ok(AnnihilatorReport {
        is_radical: generator.is_squarefree(),
        generator,
        kills_window,
        kernel_dim,
        expected_kernel_dim,
        degree_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub n: usize,
    pub multiplicity: usize,
    /// The window holds every vector of this weight of the full module.
    pub interior: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundednessReport {
    pub predicted_bounded: bool,
    pub infinite_factor_count: usize,
    /// Π dim(finite factors) · Π max multiplicity(infinite factors), when bounded.
    pub bound: Option<usize>,
    pub profile: Vec<ProfileEntry>,
    #[serde(serialize_with = "weights_str")]
    pub theta: Vec<Weight>,
    #[serde(serialize_with = "weight_str")]
    pub lambda0: Weight,
}

fn weight_str<S: serde::Serializer>(w: &Weight, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(ToString::to_string))
}

fn weights_str<S: serde::Serializer>(ws: &[Weight], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ws.iter().map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>()))
}

impl BoundednessReport {
    /// Whether the measured interior multiplicities respect the predicted bound.
    pub fn consistent(&self) -> bool {
        match self.bound {
            Some(b) => self.profile.iter().filter(|e| e.interior).all(|e| e.multiplicity <= b),
            None => self.profile.iter().all(|e| e.multiplicity > e.n),
        }
    }
}

/// Position of a weight along `w`: (ν − origin)·w / (w·w), as an exact rational.
fn level(nu: &Weight, origin: &Weight, w: &[i64]) -> Option<Rational> {
    let mut num = Rational::zero();
    for ((x, o), &c) in nu.iter().zip(origin).zip(w) {
        num += &((x - o).to_rational()?.clone() * Rational::integer(c));
    }
    let den: i64 = w.iter().map(|c| c * c).sum();
    Some(num * Rational::new(1, den))
}

fn add_weights(a: &Weight, b: &Weight) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scaled(w: &[i64], n: i64) -> Weight {
    w.iter().map(|&c| Cyclotomic::integer(c * n)).collect()
}

/// Weight multiplicities of V₁ ⊗ … ⊗ V_r along λ₀ + nα̃, where λ₀ sums the
/// lowest window weights of the factors along α̃.
pub fn boundedness_analyze(
    desc: &EvaluationDescriptor,
    direction: &RootVector,
    depth: usize,
) -> Result<BoundednessReport, MapError> {
    let alg = desc.module().algebra().clone();
    let w = alg
        .root_to_weight(direction)
        .ok_or_else(|| MapError::BadDescriptor(format!("{direction:?} is not in the root lattice of {}", alg.name())))?;
    if w.iter().all(|&c| c == 0) {
        return Err(MapError::BadDescriptor("zero direction".into()));
    }
    let infinite = desc.infinite_factors();
    if !infinite.is_empty() {
        let injective_somewhere = infinite.iter().any(|&i| {
            desc.factors()[i]
                .support()
                .and_then(|s| classify_string(s, &w).ok())
                .is_some_and(|c| matches!(c, StringClass::I | StringClass::Minus))
        });
        if !injective_somewhere {
            return Err(MapError::PreconditionViolated(
                "direction is not injective for any infinite factor".into(),
            ));
        }
    }
    let mut lambda0: Weight = vec![Cyclotomic::zero(); alg.rank()];
    let mut span = Rational::zero();
    for f in desc.factors() {
        let origin = f.spaces().first().ok_or_else(|| MapError::BadDescriptor("empty factor".into()))?.weight.clone();
        let levels: Vec<(Rational, &Weight)> = f
            .spaces()
            .iter()
            .map(|s| level(&s.weight, &origin, &w).map(|l| (l, &s.weight)))
            .collect::<Option<_>>()
            .ok_or_else(|| MapError::BadDescriptor("factor weights are not in one rational coset".into()))?;
        let (lo, lowest) = levels.iter().min_by(|a, b| a.0.cmp(&b.0)).expect("nonempty");
        let hi = levels.iter().map(|(l, _)| l.clone()).max().expect("nonempty");
        span += &(hi - lo.clone());
        lambda0 = add_weights(&lambda0, lowest);
    }
    if Rational::integer(depth as i64) > span {
        return Err(MapError::OutOfWindow(format!("depth {depth} exceeds the window span {span}")));
    }
    let module = desc.module();
    let interior_at = |nu: &Weight| -> bool {
        match infinite.as_slice() {
            [] => true,
            [k] => {
                // Every split ν = ν_k + Σ_{finite} ν_j with ν_k in the full support
                // must have ν_k inside the window of factor k.
                let factors = desc.factors();
                let finite: Vec<usize> = (0..factors.len()).filter(|i| i != k).collect();
                let mut partial: Vec<Weight> = vec![vec![Cyclotomic::zero(); nu.len()]];
                for &j in &finite {
                    partial = partial
                        .iter()
                        .flat_map(|p| factors[j].spaces().iter().map(move |s| add_weights(p, &s.weight)))
                        .collect();
                }
                let wk = &factors[*k];
                partial.iter().all(|p| {
                    let rest: Weight = nu.iter().zip(p).map(|(x, y)| x - y).collect();
                    let in_support = wk.support().is_some_and(|s| s.contains(&rest));
                    !in_support || wk.space_of(&rest).is_some_and(|s| s.range().all(|b| wk.is_interior(b)))
                })
            }
            _ => false,
        }
    };
    let profile = crate::par::map(&(0..=depth).collect::<Vec<_>>(), |&n| {
        let nu = add_weights(&lambda0, &scaled(&w, n as i64));
        ProfileEntry { n, multiplicity: module.weight_dim(&nu), interior: interior_at(&nu) }
    });
    let predicted_bounded = infinite.len() <= 1;
    let bound = predicted_bounded.then(|| {
        desc.factors().iter().map(|f| if f.is_total() { f.dim() } else { f.max_multiplicity() }).product()
    });
    let theta = module.support().map(|s| s.base.clone()).unwrap_or_default();
    Ok(BoundednessReport { predicted_bounded, infinite_factor_count: infinite.len(), bound, profile, theta, lambda0 })
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub accepted: bool,
    pub points: Vec<String>,
    pub factors: Vec<Value>,
    pub factor_verdicts: Vec<Verdict>,
    pub product_verdict: Verdict,
}

/// Checks that the descriptor is a well-formed candidate for a simple bounded
/// module: distinct points, at most one infinite factor, finite factors simple
/// with End = k, and every interior vector generating the window of the
/// product under the operators x ⊗ tⁿ.
pub fn classification_witness(desc: &EvaluationDescriptor) -> Result<WitnessReport, MapError> {
    desc.check_distinct()?;
    let infinite = desc.infinite_factors();
    if infinite.len() > 1 {
        return Err(MapError::PreconditionViolated(format!(
            "{} infinite factors (factors {:?})",
            infinite.len(),
            infinite.iter().map(|i| i + 1).collect::<Vec<_>>()
        )));
    }
    let mut factor_verdicts = Vec::new();
    for (i, f) in desc.factors().iter().enumerate() {
        let verdict = simplicity_check(f);
        let ok = if f.is_total() {
            verdict == Verdict::Simple && endomorphisms(f)?.schur_pattern() == (1, 0)
        } else {
            verdict == Verdict::WindowEvidence
        };
        if !ok {
            return Err(MapError::PreconditionViolated(format!("factor {} fails the simplicity checks", i + 1)));
        }
        factor_verdicts.push(verdict);
    }
    let product_verdict = product_evidence(desc);
    if product_verdict != Verdict::WindowEvidence && product_verdict != Verdict::Simple {
        return Err(MapError::PreconditionViolated("the product window is not generated by its vectors".into()));
    }
    Ok(WitnessReport {
        accepted: true,
        points: desc.points.iter().map(ToString::to_string).collect(),
        factors: desc.factors().iter().map(|f| f.origin().clone()).collect(),
        factor_verdicts,
        product_verdict,
    })
}

/// Generation check on the product window. For distinct points the operators
/// x ⊗ tⁿ, n = 0..r−1, span the same space as the separate slot actions
/// (Vandermonde), so the closure uses slot actions; a slot action is skipped
/// only where that slot leaves its window. With every factor simple and of
/// End = k (checked by the caller) a total product is simple outright.
fn product_evidence(desc: &EvaluationDescriptor) -> Verdict {
    let module = desc.module();
    let dim = module.dim();
    let alg = module.algebra().clone();
    let slots = desc.factors().len();
    let interior = window_interior(desc);
    let step = |v: &[Cyclotomic]| -> Vec<Vector> {
        let mut out = Vec::new();
        for x in 0..alg.len() {
            for s in 0..slots {
                let mut acc = vec![Cyclotomic::zero(); dim];
                let mut known = true;
                for (b, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    match desc.tensor.slot_act(s, x, b) {
                        Some(img) => {
                            for (i, y) in img {
                                acc[i] = &acc[i] + &(c * &y);
                            }
                        }
                        None => known = false,
                    }
                }
                if known && !is_zero_vec(&acc) {
                    out.push(acc);
                }
            }
        }
        out
    };
    let unit = |b: usize| {
        let mut e = vec![Cyclotomic::zero(); dim];
        e[b] = Cyclotomic::one();
        e
    };
    let all_generate = interior.iter().all(|&b| {
        let span: Echelon = closure_span(dim, vec![unit(b)], step);
        interior.iter().all(|&i| span.contains(&unit(i)))
    });
    match (all_generate, module.is_total()) {
        (true, true) => Verdict::Simple,
        (true, false) => Verdict::WindowEvidence,
        (false, true) => Verdict::NotSimple,
        (false, false) => Verdict::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperAlgebra;
    use crate::modules::{finite_simple_module, rank1_cuspidal, tensor};

    fn c(k: i64) -> Cyclotomic {
        Cyclotomic::integer(k)
    }

    fn sl2_f(l: i64) -> ModuleWindow {
        finite_simple_module(&SuperAlgebra::by_id("sl2").unwrap(), &vec![c(l)]).unwrap()
    }

    fn dense(mu: Cyclotomic, window: i64) -> ModuleWindow {
        rank1_cuspidal(&SuperAlgebra::by_id("sl2").unwrap(), &mu, &c(1), window).unwrap()
    }

    #[test]
    fn degree_zero_is_the_tensor_action() {
        let d = EvaluationDescriptor::new(vec![c(1), c(-1)], vec![sl2_f(1), sl2_f(2)]).unwrap();
        let t = tensor(&sl2_f(1), &sl2_f(2)).unwrap();
        for x in 0..3 {
            for b in 0..t.dim() {
                assert_eq!(evaluation_act(&d, x, 0, b).unwrap(), t.act_basis(x, b).unwrap());
            }
        }
    }

    #[test]
    fn annihilator_of_two_points() {
        let d = EvaluationDescriptor::new(vec![c(1), c(-1)], vec![sl2_f(1), sl2_f(1)]).unwrap();
        let rep = annihilator(&d, 4).unwrap();
        assert_eq!(rep.generator, Poly::new(vec![c(-1), c(0), c(1)]));
        assert!(rep.is_radical && rep.verified());
        let p = Poly::linear_root(&c(1));
        let kills = (0..3).all(|x| (0..4).all(|b| polynomial_act(&d, x, &p, b).unwrap().is_empty()));
        assert!(!kills);
    }

    #[test]
    fn dense_times_finite_is_bounded() {
        let d = EvaluationDescriptor::new(vec![c(1), c(-1)], vec![dense(Cyclotomic::ratio(1, 3), 8), sl2_f(2)]).unwrap();
        let rep = boundedness_analyze(&d, &RootVector(vec![1, -1]), 12).unwrap();
        assert!(rep.predicted_bounded);
        let interior: Vec<usize> = rep.profile.iter().filter(|e| e.interior).map(|e| e.multiplicity).collect();
        assert!(!interior.is_empty());
        assert!(interior.iter().all(|&m| m == 3));
    }

    #[test]
    fn dense_times_dense_grows() {
        let d = EvaluationDescriptor::new(
            vec![c(1), c(-1)],
            vec![dense(Cyclotomic::ratio(1, 3), 8), dense(Cyclotomic::ratio(1, 5), 8)],
        )
        .unwrap();
        let rep = boundedness_analyze(&d, &RootVector(vec![1, -1]), 15).unwrap();
        assert!(!rep.predicted_bounded);
        assert!(rep.profile.iter().all(|e| e.multiplicity > e.n));
        assert!(matches!(classification_witness(&d), Err(MapError::PreconditionViolated(_))));
    }

    #[test]
    fn witness_checks() {
        let ok = EvaluationDescriptor::new(vec![c(1), c(-1)], vec![dense(Cyclotomic::ratio(1, 3), 4), sl2_f(2)]).unwrap();
        assert!(classification_witness(&ok).unwrap().accepted);
        let repeated = EvaluationDescriptor::new(vec![c(1), c(1)], vec![sl2_f(1), sl2_f(1)]).unwrap();
        assert!(matches!(classification_witness(&repeated), Err(MapError::PreconditionViolated(_))));
    }
}
