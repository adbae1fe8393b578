use std::sync::Arc;

use serde_json::json;

use crate::algebra::SuperAlgebra;
use crate::arith::Cyclotomic;
use crate::combinatorics::SupportSet;
use crate::roots::Parity;

use super::{Completeness, ModError, ModuleBuilder, ModuleWindow};

fn gen(alg: &SuperAlgebra, name: &str) -> usize {
    alg.index_of(name).unwrap_or_else(|| panic!("{} has no generator {name}", alg.name()))
}

/// Window |k| ≤ `window` of the rank-one dense module with base weight μ.
///
/// sl(2): h v_k = (μ+2k) v_k, f v_k = v_{k−1}, e v_k = q_k v_{k+1} with
/// q_k = q₀ − kμ − k(k+1).
/// osp(1|2): h v_k = (μ+k) v_k, |v_k| = k mod 2, y v_k = v_{k−1},
/// x v_k = p_k v_{k+1} with p_k + p_{k−1} = μ+k and p₀ = q₀; then
/// e = x² and f = −y².
pub fn rank1_cuspidal(
    alg: &Arc<SuperAlgebra>,
    mu: &Cyclotomic,
    q0: &Cyclotomic,
    window: i64,
) -> Result<ModuleWindow, ModError> {
    if window < 1 {
        return Err(ModError::BadParameter("window must be at least 1".into()));
    }
    let ks: Vec<i64> = (-window..=window).collect();
    let at = |k: i64| (k + window) as usize;
    let inside = |k: i64| k.abs() <= window;
    let mut builder = ModuleBuilder::new(alg.clone(), Completeness::Windowed);
    let origin = json!({
        "kind": "dense",
        "algebra": alg.name(),
        "mu": mu.to_string(),
        "q0": q0.to_string(),
        "window": window,
    });
    match alg.name() {
        "sl2" => {
            let q = |k: i64| {
                let k = Cyclotomic::integer(k);
                &(q0 - &(&k * mu)) - &(&k * &(&k + &Cyclotomic::one()))
            };
            if let Some(k) = ks.iter().copied().find(|&k| q(k).is_zero()) {
                return Err(ModError::DegenerateParameters(format!("q_{k} = 0")));
            }
            for &k in &ks {
                builder.add(vec![mu + &Cyclotomic::integer(2 * k)], &[Parity::Even]);
            }
            let (e, f) = (gen(alg, "e"), gen(alg, "f"));
            for &k in &ks {
                builder.set_action(e, at(k), inside(k + 1).then(|| vec![(at(k + 1), q(k))]));
                builder.set_action(f, at(k), inside(k - 1).then(|| vec![(at(k - 1), Cyclotomic::one())]));
            }
            let support = SupportSet { base: vec![vec![mu.clone()]], directions: vec![vec![2]], cone: vec![] };
            Ok(builder.support(support).origin(origin).finish())
        }
        "osp12" => {
            // p_k for k in [−window−1, window+1], seeded at p₀ = q₀.
            let mut p = vec![Cyclotomic::zero(); ks.len() + 2];
            let pi = |k: i64| (k + window + 1) as usize;
            p[pi(0)] = q0.clone();
            for k in 1..=window + 1 {
                p[pi(k)] = &(mu + &Cyclotomic::integer(k)) - &p[pi(k - 1)];
            }
            for k in (-window - 1..0).rev() {
                p[pi(k)] = &(mu + &Cyclotomic::integer(k + 1)) - &p[pi(k + 1)];
            }
            if let Some(k) = ks.iter().copied().find(|&k| p[pi(k)].is_zero()) {
                return Err(ModError::DegenerateParameters(format!("p_{k} = 0")));
            }
            for &k in &ks {
                builder.add(vec![mu + &Cyclotomic::integer(k)], &[Parity::from_bit(k.rem_euclid(2) as u8)]);
            }
            let (e, f, x, y) = (gen(alg, "e"), gen(alg, "f"), gen(alg, "x"), gen(alg, "y"));
            for &k in &ks {
                builder.set_action(x, at(k), inside(k + 1).then(|| vec![(at(k + 1), p[pi(k)].clone())]));
                builder.set_action(y, at(k), inside(k - 1).then(|| vec![(at(k - 1), Cyclotomic::one())]));
                builder.set_action(e, at(k), inside(k + 2).then(|| vec![(at(k + 2), &p[pi(k)] * &p[pi(k + 1)])]));
                builder.set_action(f, at(k), inside(k - 2).then(|| vec![(at(k - 2), -Cyclotomic::one())]));
            }
            let base = vec![vec![mu.clone()], vec![mu + &Cyclotomic::one()]];
            let support = SupportSet { base, directions: vec![vec![2]], cone: vec![] };
            Ok(builder.support(support).origin(origin).finish())
        }
        other => Err(ModError::Unsupported(format!("dense modules over {other}"))),
    }
}

/// The 1|1-dimensional module over q = span{h, s}: h acts by `h`, s v₀ = v₁,
/// s v₁ = h v₀, so that s² = h.
pub fn odd_rank_one_module(alg: &Arc<SuperAlgebra>, h: &Cyclotomic) -> Result<ModuleWindow, ModError> {
    if alg.name() != "q" {
        return Err(ModError::Unsupported(format!("odd rank-one modules over {}", alg.name())));
    }
    let mut builder = ModuleBuilder::new(alg.clone(), Completeness::Total);
    builder.add(vec![h.clone()], &[Parity::Even, Parity::Odd]);
    let s = gen(alg, "s");
    builder.set_action(s, 0, Some(vec![(1, Cyclotomic::one())]));
    builder.set_action(s, 1, Some(if h.is_zero() { vec![] } else { vec![(0, h.clone())] }));
    let origin = json!({"kind": "odd_rank_one", "h": h.to_string()});
    Ok(builder.origin(origin).finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_module_square() {
        let q = SuperAlgebra::by_id("q").unwrap();
        let m = odd_rank_one_module(&q, &Cyclotomic::one()).unwrap();
        assert_eq!(m.dims(), (1, 1));
        m.check_brackets().unwrap();
    }

    #[test]
    fn sl2_window_and_brackets() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        let m = rank1_cuspidal(&a, &Cyclotomic::ratio(1, 3), &Cyclotomic::one(), 20).unwrap();
        assert_eq!(m.dim(), 41);
        assert_eq!(m.max_multiplicity(), 1);
        m.check_brackets().unwrap();
        assert!(m.is_interior(20));
        assert!(!m.is_interior(0));
    }

    #[test]
    fn sl2_degenerate() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        let r = rank1_cuspidal(&a, &Cyclotomic::ratio(1, 2), &Cyclotomic::one(), 5);
        assert_eq!(r.unwrap_err(), ModError::DegenerateParameters("q_-2 = 0".into()));
    }

    #[test]
    fn osp12_odd_square() {
        let a = SuperAlgebra::by_id("osp12").unwrap();
        let m = rank1_cuspidal(&a, &Cyclotomic::ratio(1, 3), &Cyclotomic::ratio(1, 7), 8).unwrap();
        m.check_brackets().unwrap();
        let x = a.index_of("x").unwrap();
        for b in 0..m.dim() {
            if let Some(img) = m.act_basis(x, b) {
                assert_eq!(img.len(), 1, "x injective");
            }
        }
    }
}
