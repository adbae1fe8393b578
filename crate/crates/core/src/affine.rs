//! The affine side: forced level zero, the Cartan loop character χ and its
//! period, loop modules L(V) = V ⊗ k[t, t⁻¹] on a t-window, their r-fold
//! decomposition, affine Kac characters and ĝ₁-invariants.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::SuperAlgebra;
use crate::arith::linalg::{closure_span, is_zero_vec};
use crate::arith::{Cyclotomic, Echelon, Vector};
use crate::map_modules::{evaluation_act, EvaluationDescriptor, MapError};
use crate::modules::{ModError, SparseVec, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AffineError {
    #[error("AllZero: χ vanishes identically")]
    AllZero,
    #[error("PeriodMismatch: {0}")]
    PeriodMismatch(String),
    #[error("WindowTooSmall: {0}")]
    WindowTooSmall(String),
    #[error("NotTypeI: {0}")]
    NotTypeI(String),
    #[error("BadParameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Module(#[from] ModError),
}

impl AffineError {
    pub fn code(&self) -> &'static str {
        match self {
            AffineError::AllZero => "AllZero",
            AffineError::PeriodMismatch(_) => "PeriodMismatch",
            AffineError::WindowTooSmall(_) => "WindowTooSmall",
            AffineError::NotTypeI(_) => "NotTypeI",
            AffineError::BadParameter(_) => "BadParameter",
            AffineError::Map(e) => e.code(),
            AffineError::Module(e) => e.code(),
        }
    }
}

/// Trace of [h⊗t, h⊗t⁻¹] = (h,h)c on a weight space of dimension `weight_dim`
/// at level k is weight_dim·(h,h)·k, while a commutator has trace zero; so
/// the level k is admissible iff this vanishes.
pub fn level_forced_zero(h_norm: &Cyclotomic, weight_dim: usize, k: &Cyclotomic) -> Result<bool, AffineError> {
    if h_norm.is_zero() {
        return Err(AffineError::BadParameter("(h,h) must be nonzero".into()));
    }
    if weight_dim == 0 {
        return Err(AffineError::BadParameter("weight space dimension must be positive".into()));
    }
    let trace = &(&Cyclotomic::integer(weight_dim as i64) * h_norm) * k;
    Ok(trace.is_zero())
}

/// Points a₀..a_k with weights λ₀..λ_k (values on the Cartan generators).
#[derive(Clone, Debug, Serialize)]
pub struct ChiData {
    pub points: Vec<Cyclotomic>,
    pub weights: Vec<Weight>,
}

impl ChiData {
    pub fn new(points: Vec<Cyclotomic>, weights: Vec<Weight>) -> Result<ChiData, AffineError> {
        if points.is_empty() || points.len() != weights.len() {
            return Err(AffineError::BadParameter(format!("{} points for {} weights", points.len(), weights.len())));
        }
        if points.iter().any(Cyclotomic::is_zero) {
            return Err(AffineError::BadParameter("points must be nonzero".into()));
        }
        let rank = weights[0].len();
        if rank == 0 || weights.iter().any(|w| w.len() != rank) {
            return Err(AffineError::BadParameter("weights must share a positive length".into()));
        }
        Ok(ChiData { points, weights })
    }

    pub fn rank(&self) -> usize {
        self.weights[0].len()
    }

    /// Σ_i a_iⁿ λ_i(h): the coefficient of χ(h ⊗ tⁿ).
    pub fn value(&self, h: usize, n: i64) -> Cyclotomic {
        self.points.iter().zip(&self.weights).fold(Cyclotomic::zero(), |acc, (a, w)| {
            &acc + &(&a.pow(n).expect("nonzero point") * &w[h])
        })
    }

    fn nonzero_at(&self, n: i64) -> bool {
        (0..self.rank()).any(|h| !self.value(h, n).is_zero())
    }

    /// Order of the linear recurrence satisfied by n ↦ χ(h ⊗ tⁿ).
    pub fn recurrence_order(&self) -> usize {
        self.points.len()
    }
}

/// r with im χ = k[t^r, t^{−r}], plus the data that certifies it: χ is nonzero
/// at each witness (their gcd is r), and for every class c ≢ 0 mod r it
/// vanishes at c, c+r, …, c+(m−1)r, which forces vanishing on the whole class
/// since each class sequence satisfies an invertible recurrence of order m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiPeriod {
    pub r: u64,
    pub witnesses: Vec<i64>,
    pub recurrence_order: usize,
}

pub fn chi_period(chi: &ChiData) -> Result<ChiPeriod, AffineError> {
    let m = chi.recurrence_order() as i64;
    let mut witnesses: Vec<i64> = (1..=m).filter(|&n| chi.nonzero_at(n)).collect();
    if witnesses.is_empty() {
        // m consecutive zeros of an order-m invertible recurrence.
        return Err(AffineError::AllZero);
    }
    let mut g = witnesses.iter().fold(0i64, |acc, &n| acc.gcd(&n));
    'refine: loop {
        for c in 1..g {
            for j in 0..m {
                let n = c + j * g;
                if chi.nonzero_at(n) {
                    witnesses.push(n);
                    g = g.gcd(&n);
                    continue 'refine;
                }
            }
        }
        break;
    }
    Ok(ChiPeriod { r: g as u64, witnesses, recurrence_order: m as usize })
}

/// Re-checks a period certificate against the data.
pub fn verify_chi_certificate(chi: &ChiData, cert: &ChiPeriod) -> bool {
    let r = cert.r as i64;
    let m = chi.recurrence_order() as i64;
    r > 0
        && cert.recurrence_order == m as usize
        && cert.witnesses.iter().fold(0i64, |acc, &n| acc.gcd(&n)) == r
        && cert.witnesses.iter().all(|&n| chi.nonzero_at(n))
        && (1..r).all(|c| (0..m).all(|j| !chi.nonzero_at(c + j * r)))
}

/// A weight of ĝ = L(g) ⊕ kc ⊕ kd.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineWeight {
    pub finite: Weight,
    pub level: Cyclotomic,
    pub degree: i64,
}

impl AffineWeight {
    pub fn to_json(&self) -> Value {
        json!({
            "finite": self.finite.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "level": self.level.to_string(),
            "degree": self.degree,
        })
    }
}

/// L(V) = V ⊗ k[t, t⁻¹] on the t-window |n| ≤ D; basis v_b ⊗ tⁿ indexed by
/// (n + D)·dim V + b. c acts by 0 and d by n.
#[derive(Clone, Debug)]
pub struct LoopWindow {
    desc: EvaluationDescriptor,
    radius: i64,
}

pub fn loop_module(desc: &EvaluationDescriptor, radius: i64) -> Result<LoopWindow, AffineError> {
    desc.check_distinct()?;
    if radius < 0 {
        return Err(AffineError::BadParameter("t-window radius must be nonnegative".into()));
    }
    Ok(LoopWindow { desc: desc.clone(), radius })
}

impl LoopWindow {
    pub fn descriptor(&self) -> &EvaluationDescriptor {
        &self.desc
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn base_dim(&self) -> usize {
        self.desc.module().dim()
    }

    pub fn dim(&self) -> usize {
        self.base_dim() * (2 * self.radius as usize + 1)
    }

    pub fn index(&self, b: usize, n: i64) -> Option<usize> {
        (n.abs() <= self.radius && b < self.base_dim()).then(|| (n + self.radius) as usize * self.base_dim() + b)
    }

    /// (base basis vector, t-degree) of an index.
    pub fn split(&self, idx: usize) -> (usize, i64) {
        (idx % self.base_dim(), (idx / self.base_dim()) as i64 - self.radius)
    }

    /// Eigenvalue of d.
    pub fn degree_of(&self, idx: usize) -> i64 {
        self.split(idx).1
    }

    pub fn level(&self) -> Cyclotomic {
        Cyclotomic::zero()
    }

    pub fn weight_of(&self, idx: usize) -> AffineWeight {
        let (b, n) = self.split(idx);
        AffineWeight { finite: self.desc.module().weight_of(b).clone(), level: self.level(), degree: n }
    }

    pub fn weight_dim(&self, w: &AffineWeight) -> usize {
        if !w.level.is_zero() || w.degree.abs() > self.radius {
            return 0;
        }
        self.desc.module().weight_dim(&w.finite)
    }

    /// (x ⊗ tˢ)(v_b ⊗ tⁿ) = ((x ⊗ tˢ)·v_b) ⊗ t^{n+s}; `None` outside the window.
    pub fn act(&self, x: usize, s: i64, idx: usize) -> Option<SparseVec> {
        let (b, n) = self.split(idx);
        if (n + s).abs() > self.radius {
            return None;
        }
        let img = evaluation_act(&self.desc, x, s, b).ok()?;
        Some(img.into_iter().map(|(c, v)| (self.index(c, n + s).expect("in window"), v)).collect())
    }

    pub fn act_vec(&self, x: usize, s: i64, v: &[Cyclotomic]) -> Option<Vector> {
        let mut out = vec![Cyclotomic::zero(); self.dim()];
        for (idx, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (i, y) in self.act(x, s, idx)? {
                out[i] = &out[i] + &(c * &y);
            }
        }
        Some(out)
    }

    pub fn to_json(&self) -> Value {
        let module = self.desc.module();
        let spaces: Vec<Value> = module
            .spaces()
            .iter()
            .map(|s| json!({"finite": s.weight.iter().map(ToString::to_string).collect::<Vec<_>>(), "dim": s.dim()}))
            .collect();
        json!({
            "descriptor": self.desc.to_json(),
            "t_window": [-self.radius, self.radius],
            "level": "0",
            "dim": self.dim(),
            "weight_spaces_per_degree": spaces,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopComponent {
    pub index: u64,
    /// t-degrees n for which v_λ ⊗ tⁿ lies in the component.
    pub t_classes: Vec<i64>,
    /// Dimension of the component in each t-degree of the window.
    pub dims: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopDecomposition {
    pub r: u64,
    pub period: ChiPeriod,
    pub interior_radius: i64,
    pub components: Vec<LoopComponent>,
}

fn unit(n: usize, i: usize) -> Vector {
    let mut e = vec![Cyclotomic::zero(); n];
    e[i] = Cyclotomic::one();
    e
}

/// Splits the loop window into the r components generated by v_λ ⊗ tⁱ,
/// i = 0..r−1, where v_λ is the tensor of the weight-λ_j vectors of the factors
/// and r is the χ-period of (a, λ). The components must be independent and
/// fill the interior |n| ≤ D − r.
pub fn loop_decompose(lw: &LoopWindow, generator_weights: &[Weight]) -> Result<LoopDecomposition, AffineError> {
    let desc = lw.descriptor();
    let factors = desc.factors();
    if generator_weights.len() != factors.len() {
        return Err(AffineError::BadParameter(format!(
            "{} generator weights for {} factors",
            generator_weights.len(),
            factors.len()
        )));
    }
    if desc.infinite_factors().len() > 1 {
        return Err(AffineError::BadParameter("at most one windowed factor".into()));
    }
    let mut tuple = Vec::new();
    for (f, w) in factors.iter().zip(generator_weights) {
        let space = f
            .space_of(w)
            .filter(|s| s.dim() == 1)
            .ok_or_else(|| AffineError::BadParameter(format!("weight {w:?} is not a multiplicity-one weight")))?;
        tuple.push(space.start);
    }
    let v_lambda = desc.tensor().index_of(&tuple).expect("tuple in range");
    let chi = ChiData::new(desc.points().to_vec(), generator_weights.to_vec())?;
    let period = chi_period(&chi)?;
    let r = period.r as i64;
    let big_d = lw.radius();
    if r > big_d {
        return Err(AffineError::WindowTooSmall(format!("period {r} exceeds the t-window {big_d}")));
    }
    let dim = lw.dim();
    let alg = desc.module().algebra().clone();
    let shifts: Vec<i64> = (-2 * big_d..=2 * big_d).collect();
    let step = |v: &[Cyclotomic]| -> Vec<Vector> {
        let mut out = Vec::new();
        for x in 0..alg.len() {
            for &s in &shifts {
                if let Some(w) = lw.act_vec(x, s, v) {
                    out.push(w);
                }
            }
        }
        out
    };
    let spans: Vec<Echelon> = crate::par::map(&(0..r).collect::<Vec<_>>(), |&i| {
        closure_span(dim, vec![unit(dim, lw.index(v_lambda, i).expect("in window"))], step)
    });
    let mut union = Echelon::new(dim);
    for s in &spans {
        for v in s.basis() {
            if !union.insert(&v) {
                return Err(AffineError::PeriodMismatch("components are not in direct sum".into()));
            }
        }
    }
    let interior_radius = big_d - r;
    let module = desc.module();
    for n in -interior_radius..=interior_radius {
        for b in (0..lw.base_dim()).filter(|&b| module.is_interior(b)) {
            if !union.contains(&unit(dim, lw.index(b, n).expect("in window"))) {
                return Err(AffineError::PeriodMismatch(format!("interior vector {b} ⊗ t^{n} is not reached")));
            }
        }
    }
    let components = spans
        .iter()
        .enumerate()
        .map(|(i, span)| {
            let mut dims = BTreeMap::new();
            for v in span.basis() {
                let p = v.iter().position(|c| !c.is_zero()).expect("nonzero row");
                *dims.entry(lw.degree_of(p)).or_insert(0) += 1;
            }
            let t_classes = (-big_d..=big_d)
                .filter(|&n| span.contains(&unit(dim, lw.index(v_lambda, n).expect("in window"))))
                .collect();
            LoopComponent { index: i as u64, t_classes, dims }
        })
        .collect();
    Ok(LoopDecomposition { r: period.r, period, interior_radius, components })
}

/// Character with affine weights; finite parts in root coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineCharacter {
    pub entries: BTreeMap<AffineWeight, u64>,
}

impl AffineCharacter {
    pub fn point(w: AffineWeight) -> AffineCharacter {
        AffineCharacter { entries: BTreeMap::from([(w, 1)]) }
    }

    pub fn mass(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Multiplicities with the given δ-degree, by finite weight.
    pub fn layer(&self, degree: i64) -> BTreeMap<Weight, u64> {
        self.entries.iter().filter(|(w, _)| w.degree == degree).map(|(w, m)| (w.finite.clone(), *m)).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries.iter().map(|(w, m)| json!({"weight": w.to_json(), "multiplicity": m})).collect(),
        )
    }
}

/// char K(S) = char S · Π_{β ∈ Δ(g₋₁)} Π_{|n| ≤ D} (1 + e^{β+nδ}), keeping the
/// terms whose δ-offset is at most D in absolute value. The untruncated product
/// over all n ∈ ℤ has infinite coefficients, so the n-range is cut at D too.
pub fn affine_kac_character(
    alg: &SuperAlgebra,
    char_s: &AffineCharacter,
    depth: i64,
) -> Result<AffineCharacter, AffineError> {
    if !alg.is_type_one() {
        return Err(AffineError::NotTypeI(alg.name().to_string()));
    }
    if depth < 0 {
        return Err(AffineError::BadParameter("depth must be nonnegative".into()));
    }
    let rs = alg.root_system().expect("type I algebras carry a root system");
    let lower = rs.degree_roots(-1);
    let mut series: BTreeMap<(Vec<i64>, i64), u64> = BTreeMap::from([((vec![0; rs.dim()], 0), 1)]);
    for beta in &lower {
        for n in -depth..=depth {
            let mut next = series.clone();
            for ((fin, deg), c) in &series {
                let key: Vec<i64> = fin.iter().zip(&beta.0).map(|(a, b)| a + b).collect();
                *next.entry((key, deg + n)).or_insert(0) += c;
            }
            series = next;
        }
    }
    let mut out = AffineCharacter::default();
    for (w, m) in &char_s.entries {
        if w.finite.len() != rs.dim() {
            return Err(AffineError::BadParameter(format!("finite weights need {} coordinates", rs.dim())));
        }
        for ((fin, off), c) in &series {
            if off.abs() > depth {
                continue;
            }
            let finite = w.finite.iter().zip(fin).map(|(x, &b)| x + &Cyclotomic::integer(b)).collect();
            let key = AffineWeight { finite, level: w.level.clone(), degree: w.degree + off };
            *out.entries.entry(key).or_insert(0) += m * c;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    /// Dimension of the ĝ₁-invariants in each degree of the safe interior.
    pub per_degree: BTreeMap<i64, usize>,
    pub nonempty: bool,
    #[serde(skip)]
    pub vectors: Vec<Vector>,
}

/// Joint kernel of x_β ⊗ tⁿ, β ∈ Δ(g₁), |n| ≤ d, on the degrees |m| ≤ D − d
/// where every such image stays inside the window.
pub fn g1_invariants_window(lw: &LoopWindow, d: i64) -> Result<InvariantsReport, AffineError> {
    let desc = lw.descriptor();
    let alg = desc.module().algebra().clone();
    if !alg.is_type_one() {
        return Err(AffineError::NotTypeI(alg.name().to_string()));
    }
    if d < 0 {
        return Err(AffineError::BadParameter("d must be nonnegative".into()));
    }
    let safe = lw.radius() - d;
    if safe < 0 {
        return Err(AffineError::WindowTooSmall(format!("no degree m with |m| + {d} ≤ {}", lw.radius())));
    }
    let raising: Vec<usize> = (0..alg.len()).filter(|&g| alg.grading_degree(g) == Some(1)).collect();
    let module = desc.module();
    let base: Vec<usize> = (0..lw.base_dim()).filter(|&b| module.is_interior(b)).collect();
    let mut per_degree = BTreeMap::new();
    let mut vectors = Vec::new();
    for m in -safe..=safe {
        let cols: Vec<usize> = base.iter().map(|&b| lw.index(b, m).expect("in window")).collect();
        let mut rows = Echelon::new(cols.len());
        for &x in &raising {
            for n in -d..=d {
                let images: Vec<Vector> = cols
                    .iter()
                    .map(|&c| lw.act_vec(x, n, &unit(lw.dim(), c)).expect("safe interior"))
                    .collect();
                for i in 0..lw.dim() {
                    let row: Vector = images.iter().map(|img| img[i].clone()).collect();
                    if !is_zero_vec(&row) {
                        rows.insert(&row);
                    }
                }
            }
        }
        let kernel = rows.nullspace();
        per_degree.insert(m, kernel.len());
        for k in kernel {
            let mut v = vec![Cyclotomic::zero(); lw.dim()];
            for (c, x) in cols.iter().zip(k) {
                v[*c] = x;
            }
            vectors.push(v);
        }
    }
    let nonempty = per_degree.values().all(|&k| k > 0);
    Ok(InvariantsReport { per_degree, nonempty, vectors })
}
