//! Built-in invariant batteries, each a list of named checks with a payload
//! describing the counterexample (or the evidence) for every check.

use serde::Serialize;
use serde_json::{json, Value};

use crate::affine::{chi_period, g1_invariants_window, loop_decompose, loop_module, verify_chi_certificate, ChiData};
use crate::algebra::SuperAlgebra;
use crate::arith::{Cyclotomic, Mat, Rational};
use crate::combinatorics::{closed_subsets, functional_for_shadow, shadow_from_inj, triangular_from_functional};
use crate::map_modules::{boundedness_analyze, EvaluationDescriptor};
use crate::modules::{
    endomorphisms, even_part_simple, finite_simple_module, induced_character, invariants_subspace,
    kac_module_type_one, odd_part_roots, odd_rank_one_module, rank1_cuspidal, shadow_of_module, simplicity_check,
    CharacterWindow, ModuleWindow, Weight,
};
use crate::roots::{build_root_system, Family, RootVector};

pub const SUITES: [&str; 5] = ["schur", "shadow", "boundedness", "loop", "kac"];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), passed: checks.iter().all(|c| c.passed), checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: Value) -> Check {
    Check { name: name.into(), passed, detail }
}

fn failed(name: impl Into<String>, err: impl std::fmt::Display) -> Check {
    check(name, false, json!({"error": err.to_string()}))
}

fn w(v: &[i64]) -> Weight {
    v.iter().map(|&x| Cyclotomic::integer(x)).collect()
}

fn alg(id: &str) -> std::sync::Arc<SuperAlgebra> {
    SuperAlgebra::by_id(id).expect("catalog algebra")
}

/// Finite simple fixtures: sl₂ F(0..5), three over osp(1|2), three typical
/// weights over sl(2|1).
pub fn finite_fixtures() -> Vec<(String, Weight)> {
    let mut out: Vec<(String, Weight)> = (0..=5).map(|l| ("sl2".to_string(), w(&[l]))).collect();
    for l in [0, 2, 4] {
        out.push(("osp12".into(), w(&[l])));
    }
    for l in [[1, 3], [0, 2], [2, 5]] {
        out.push(("sl21".into(), w(&l)));
    }
    out
}


pub fn run_schur() -> SuiteReport {
    let mut checks = Vec::new();
    for (id, lam) in finite_fixtures() {
        let name = format!("F({}) over {id}", lam.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        match finite_simple_module(&alg(&id), &lam).and_then(|m| endomorphisms(&m).map(|e| (m.dim(), e))) {
            Ok((dim, end)) => {
                let p = end.schur_pattern();
                checks.push(check(name, p == (1, 0), json!({"dim": dim, "pattern": [p.0, p.1]})));
            }
            Err(e) => checks.push(failed(name, e)),
        }
    }
    let q = alg("q");
    match odd_rank_one_module(&q, &Cyclotomic::one()).and_then(|m| endomorphisms(&m)) {
        Ok(end) => {
            let p = end.schur_pattern();
            let sq = end.sigma_square().map(|c| c.to_string());
            checks.push(check("odd-endomorphism witness over q", p == (1, 1), json!({"pattern": [p.0, p.1], "sigma_squared": sq})));
        }
        Err(e) => checks.push(failed("odd-endomorphism witness over q", e)),
    }
    SuiteReport::new("schur", checks)
}

fn dense(id: &str, mu: Cyclotomic, q0: Cyclotomic, window: i64) -> Result<ModuleWindow, crate::modules::ModError> {
    rank1_cuspidal(&alg(id), &mu, &q0, window)
}

/// Root systems whose closed subsets are enumerated for the functional check.
pub fn shadow_families() -> Vec<Family> {
    vec![
        Family::A { m: 1, n: 0 },
        Family::B { m: 0, n: 1 },
        Family::B { m: 1, n: 1 },
        Family::D21 { a: Rational::new(1, 2) },
    ]
}

pub fn run_shadow() -> SuiteReport {
    let mut checks = Vec::new();
    for (id, lam) in finite_fixtures() {
        let name = format!("finite {id} {:?}", lam.iter().map(ToString::to_string).collect::<Vec<_>>());
        let a = alg(&id);
        let total = a.root_system().map(|rs| rs.len()).unwrap_or(0);
        match finite_simple_module(&a, &lam).and_then(|m| shadow_of_module(&m)) {
            Ok(s) => checks.push(check(name, s.f.len() == total, json!({"f": s.f.len(), "roots": total}))),
            Err(e) => checks.push(failed(name, e)),
        }
    }
    for id in ["sl2", "osp12"] {
        let name = format!("dense {id}");
        let a = alg(id);
        let total = a.root_system().map(|rs| rs.len()).unwrap_or(0);
        match dense(id, Cyclotomic::ratio(1, 3), Cyclotomic::ratio(1, 7), 6).and_then(|m| shadow_of_module(&m)) {
            Ok(s) => checks.push(check(name, s.i.len() == total, json!({"i": s.i.len(), "roots": total}))),
            Err(e) => checks.push(failed(name, e)),
        }
    }
    for fam in shadow_families() {
        let name = format!("functionals on closed subsets of {fam}");
        let rs = match build_root_system(&fam) {
            Ok(rs) => rs,
            Err(e) => {
                checks.push(failed(name, e));
                continue;
            }
        };
        let subsets = closed_subsets(&rs);
        let outcomes = crate::par::map(&subsets, |inj| {
            let s = shadow_from_inj(&rs, inj).ok()?;
            let t = functional_for_shadow(&rs, &s).ok()??;
            let l = &t.functional;
            let ok = s.i.iter().all(|a| a.pair(l) == 0) && s.plus.iter().all(|a| a.pair(l) > 0);
            ok.then_some(())
        });
        let bad: Vec<Value> = subsets
            .iter()
            .zip(&outcomes)
            .filter(|(_, o)| o.is_none())
            .take(3)
            .map(|(inj, _)| json!(inj))
            .collect();
        checks.push(check(name, bad.is_empty(), json!({"closed_subsets": subsets.len(), "counterexamples": bad})));
    }
    SuiteReport::new("shadow", checks)
}

/// (algebra, direction of a positive even root in the algebra's root coordinates).
fn bounded_cases() -> Vec<(&'static str, RootVector)> {
    vec![("sl2", RootVector(vec![1, -1])), ("osp12", RootVector(vec![2]))]
}

pub fn run_boundedness() -> SuiteReport {
    let mut checks = Vec::new();
    let mut table = Vec::new();
    let (one, minus_one) = (Cyclotomic::one(), Cyclotomic::integer(-1));
    let q0 = Cyclotomic::ratio(1, 7);
    for (id, dir) in bounded_cases() {
        let a = alg(id);
        let finite_weight = w(&[2]);
        // osp(1|2) windows advance in half-steps along 2δ.
        let win = if id == "sl2" { 8 } else { 16 };
        let cases: Vec<(String, Result<Vec<ModuleWindow>, crate::modules::ModError>, usize)> = vec![
            (
                "dense⊗finite".into(),
                (|| Ok(vec![dense(id, Cyclotomic::ratio(1, 3), q0.clone(), win)?, finite_simple_module(&a, &finite_weight)?]))(),
                12,
            ),
            (
                "dense⊗dense".into(),
                (|| Ok(vec![dense(id, Cyclotomic::ratio(1, 3), q0.clone(), win)?, dense(id, Cyclotomic::ratio(1, 5), q0.clone(), win)?]))(),
                15,
            ),
            (
                "finite⊗finite".into(),
                (|| Ok(vec![finite_simple_module(&a, &w(&[1]))?, finite_simple_module(&a, &finite_weight)?]))(),
                3,
            ),
        ];
        for (label, factors, depth) in cases {
            let name = format!("{label} over {id}");
            let result = factors
                .map_err(|e| e.to_string())
                .and_then(|f| EvaluationDescriptor::new(vec![one.clone(), minus_one.clone()], f).map_err(|e| e.to_string()))
                .and_then(|d| boundedness_analyze(&d, &dir, depth).map_err(|e| e.to_string()));
            match result {
                Ok(rep) => {
                    let interior: Vec<usize> = rep.profile.iter().filter(|e| e.interior).map(|e| e.multiplicity).collect();
                    let measured_bounded = match rep.bound {
                        Some(b) => interior.iter().all(|&m| m <= b),
                        None => false,
                    };
                    let growth = rep.profile.iter().all(|e| e.multiplicity > e.n);
                    let ok = rep.consistent()
                        && if rep.predicted_bounded { measured_bounded && !interior.is_empty() } else { growth };
                    table.push(json!({
                        "case": name,
                        "profile": rep.profile.iter().map(|e| e.multiplicity).collect::<Vec<_>>(),
                    }));
                    checks.push(check(
                        name,
                        ok,
                        json!({"predicted_bounded": rep.predicted_bounded, "bound": rep.bound, "interior": interior}),
                    ));
                }
                Err(e) => checks.push(failed(name, e)),
            }
        }
    }
    checks.push(check("growth table", true, Value::Array(table)));
    SuiteReport::new("boundedness", checks)
}

pub fn run_loop() -> SuiteReport {
    let mut checks = Vec::new();
    let c = Cyclotomic::integer;
    let z = Cyclotomic::zeta(3);
    let configs: Vec<(&str, ChiData, u64)> = vec![
        ("generic", ChiData::new(vec![c(2), c(3)], vec![w(&[1]), w(&[5])]).expect("valid"), 1),
        ("antipodal", ChiData::new(vec![c(1), c(-1)], vec![w(&[1]), w(&[1])]).expect("valid"), 2),
        (
            "cube roots",
            ChiData::new(vec![c(1), z.clone(), &z * &z], vec![w(&[1]), w(&[1]), w(&[1])]).expect("valid"),
            3,
        ),
    ];
    for (label, chi, expected) in configs {
        let name = format!("χ-period {label}");
        match chi_period(&chi) {
            Ok(p) => {
                let ok = p.r == expected && verify_chi_certificate(&chi, &p);
                checks.push(check(name, ok, json!({"r": p.r, "expected": expected, "witnesses": p.witnesses})));
            }
            Err(e) => checks.push(failed(name, e)),
        }
    }
    let sl2 = alg("sl2");
    let result = finite_simple_module(&sl2, &w(&[1]))
        .map_err(|e| e.to_string())
        .and_then(|f| EvaluationDescriptor::new(vec![c(1), c(-1)], vec![f.clone(), f]).map_err(|e| e.to_string()))
        .and_then(|d| loop_module(&d, 6).map_err(|e| e.to_string()))
        .and_then(|lw| loop_decompose(&lw, &[w(&[1]), w(&[1])]).map_err(|e| e.to_string()));
    match result {
        Ok(dec) => {
            let sums: Vec<usize> = (-dec.interior_radius..=dec.interior_radius)
                .map(|n| dec.components.iter().map(|comp| comp.dims.get(&n).copied().unwrap_or(0)).sum())
                .collect();
            let ok = dec.r == 2 && dec.components.len() == 2 && sums.iter().all(|&s| s == 4);
            checks.push(check("loop decomposition F(1)⊗F(1) at ±1", ok, json!({"r": dec.r, "interior_sums": sums, "components": dec.components})));
        }
        Err(e) => checks.push(failed("loop decomposition F(1)⊗F(1) at ±1", e)),
    }
    SuiteReport::new("loop", checks)
}

/// Typical even-part weights used for Kac module checks over sl(2|1).
pub fn kac_fixtures() -> Vec<Weight> {
    vec![w(&[0, 1]), w(&[1, 3]), w(&[2, 5]), w(&[3, -2]), w(&[1, 7])]
}

pub fn run_kac() -> SuiteReport {
    let mut checks = Vec::new();
    let a = alg("sl21");
    let rs = a.root_system().expect("sl21 root system");
    let g_minus = odd_part_roots(&a, -1);
    let g_plus = odd_part_roots(&a, 1);
    for lam in kac_fixtures() {
        let name = format!("K({:?})", lam.iter().map(ToString::to_string).collect::<Vec<_>>());
        let res = even_part_simple(&a, &lam).and_then(|s| Ok((kac_module_type_one(&a, &s)?, s)));
        let (k, s) = match res {
            Ok(x) => x,
            Err(e) => {
                checks.push(failed(name, e));
                continue;
            }
        };
        let dim_ok = k.dim() == (1 << g_minus.len()) * s.dim();
        let inv = invariants_subspace(&k, &g_plus).map(|v| v.len());
        let inv_ok = inv.as_ref().is_ok_and(|&d| d == s.dim());
        // The character of K(S) from the induction formula with the
        // distinguished triangular decomposition, compared in weight coordinates.
        let char_ok = (|| -> Option<bool> {
            let t = triangular_from_functional(rs, rs.grading_functional()).ok()?;
            let lifts = lift_to_roots(&a, &t.zero, &s)?;
            let mut ch_s = CharacterWindow::default();
            for (coords, sp) in lifts.into_iter().zip(s.spaces()) {
                ch_s.add(coords, sp.dim() as u64);
            }
            let induced = induced_character(rs, &t, &ch_s, 1, g_minus.len() as u64).ok()?;
            let mut as_weights = CharacterWindow::default();
            for (coords, m) in &induced.entries {
                as_weights.add(a.coords_to_weight(coords)?, *m);
            }
            let mut ch_k = CharacterWindow::default();
            for sp in k.spaces() {
                ch_k.add(sp.weight.clone(), sp.dim() as u64);
            }
            Some(as_weights == ch_k)
        })()
        .unwrap_or(false);
        checks.push(check(
            name,
            dim_ok && inv_ok && char_ok,
            json!({
                "dim_s": s.dim(),
                "dim_k": k.dim(),
                "invariants": inv.map_err(|e| e.to_string()).ok(),
                "character_matches": char_ok,
                "verdict": simplicity_check(&k),
            }),
        ));
    }
    let lam = w(&[1, 3]);
    let res = even_part_simple(&a, &lam).and_then(|s| Ok((kac_module_type_one(&a, &s)?, s.dim())));
    match res {
        Ok((k, ds)) => {
            let out = EvaluationDescriptor::new(vec![Cyclotomic::one()], vec![k])
                .map_err(|e| e.to_string())
                .and_then(|d| loop_module(&d, 3).map_err(|e| e.to_string()))
                .and_then(|lw| g1_invariants_window(&lw, 1).map_err(|e| e.to_string()));
            match out {
                Ok(rep) => {
                    let ok = rep.per_degree.values().all(|&d| d == ds);
                    checks.push(check("loop ĝ₁-invariants of K(1,3)", ok, json!({"dim_s": ds, "per_degree": rep.per_degree})));
                }
                Err(e) => checks.push(failed("loop ĝ₁-invariants of K(1,3)", e)),
            }
        }
        Err(e) => checks.push(failed("loop ĝ₁-invariants of K(1,3)", e)),
    }
    SuiteReport::new("kac", checks)
}

/// Root-coordinate lifts of the weights of S, all in one coset of the lattice
/// spanned by `zero` (the roots S is a module over): the top weight goes to
/// any preimage and the others are shifted by integer combinations of `zero`.
pub fn lift_to_roots(alg: &SuperAlgebra, zero: &[RootVector], s: &ModuleWindow) -> Option<Vec<Weight>> {
    let rs = alg.root_system()?;
    let dim = rs.dim();
    let rank = alg.rank();
    let unit_cols: Vec<Vec<Cyclotomic>> = (0..dim)
        .map(|i| alg.root_to_weight(&RootVector::unit(dim, i, 1)).map(|v| v.iter().map(|&x| Cyclotomic::integer(x)).collect()))
        .collect::<Option<_>>()?;
    let first = &s.spaces().first()?.weight;
    let top = Mat::from_cols(rank, &unit_cols).solve(first)?;
    let zero_cols: Vec<Vec<Cyclotomic>> = zero
        .iter()
        .map(|r| alg.root_to_weight(r).map(|v| v.iter().map(|&x| Cyclotomic::integer(x)).collect()))
        .collect::<Option<_>>()?;
    let zmat = Mat::from_cols(rank, &zero_cols);
    s.spaces()
        .iter()
        .map(|sp| {
            let diff: Vec<Cyclotomic> = sp.weight.iter().zip(first).map(|(x, y)| x - y).collect();
            let coeffs = if zero.is_empty() { vec![] } else { zmat.solve(&diff)? };
            let mut out = top.clone();
            for (c, r) in coeffs.iter().zip(zero) {
                for (o, &x) in out.iter_mut().zip(&r.0) {
                    *o = &*o + &(c * &Cyclotomic::integer(x));
                }
            }
            Some(out)
        })
        .collect()
}

pub fn run_suite(name: &str) -> Option<SuiteReport> {
    Some(match name {
        "schur" => run_schur(),
        "shadow" => run_shadow(),
        "boundedness" => run_boundedness(),
        "loop" => run_loop(),
        "kac" => run_kac(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for name in SUITES {
            let rep = run_suite(name).unwrap();
            let bad: Vec<_> = rep.failures().map(|c| (&c.name, &c.detail)).collect();
            assert!(rep.passed, "{name}: {bad:?}");
        }
        assert!(run_suite("nosuch").is_none());
    }
}
