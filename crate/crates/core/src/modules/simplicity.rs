use serde::{Deserialize, Serialize};

use crate::arith::linalg::closure_span;
use crate::arith::{Cyclotomic, Echelon, Vector};

use super::{endomorphisms, ModuleWindow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Simple,
    NotSimple,
    /// Windowed module in which every interior vector generates the interior.
    WindowEvidence,
    /// Windowed module for which the window says nothing either way.
    Inconclusive,
}

/// Cyclic span in V^{⊕d} under componentwise generator action; `None` images
/// (outside the window) are skipped.
fn closure(m: &ModuleWindow, copies: usize, start: Vector) -> Echelon {
    let n = m.dim();
    let alg = m.algebra();
    closure_span(n * copies, vec![start], |v| {
        (0..alg.len())
            .filter(|&g| !alg.is_cartan(g))
            .filter_map(|g| {
                let mut w = Vec::with_capacity(n * copies);
                for c in 0..copies {
                    w.extend(m.act(g, &v[c * n..(c + 1) * n])?);
                }
                Some(w)
            })
            .collect()
    })
}

fn total_verdict(m: &ModuleWindow) -> Verdict {
    if m.dim() == 0 {
        return Verdict::NotSimple;
    }
    let Ok(end) = endomorphisms(m) else {
        return Verdict::NotSimple;
    };
    match (end.dim_even, end.dim_odd) {
        (1, 0) => {}
        (1, 1) if end.sigma_square().is_some_and(|c| !c.is_zero()) => {}
        _ => return Verdict::NotSimple,
    }
    let n = m.dim();
    // V is simple iff each V^μ is simple over the weight-zero part A_μ of U(g)
    // and generates V. A_μ is read off the cyclic submodule of V^{⊕d} generated
    // by the tuple of basis vectors of V^μ.
    for s in m.spaces() {
        let d = s.dim();
        let mut start = vec![Cyclotomic::zero(); n * d];
        for (c, b) in s.range().enumerate() {
            start[c * n + b] = Cyclotomic::one();
        }
        let span = closure(m, d, start);
        let basis = span.basis();
        let on_mu = basis
            .iter()
            .filter(|v| {
                let p = v.iter().position(|x| !x.is_zero()).expect("nonzero");
                s.range().contains(&(p % n))
            })
            .count();
        if on_mu * (1 + end.dim_odd) != d * d {
            return Verdict::NotSimple;
        }
        let mut generated = Echelon::new(n);
        for v in &basis {
            for c in 0..d {
                generated.insert(&v[c * n..(c + 1) * n]);
            }
        }
        if generated.rank() != n {
            return Verdict::NotSimple;
        }
    }
    Verdict::Simple
}

fn windowed_verdict(m: &ModuleWindow) -> Verdict {
    let interior: Vec<usize> = (0..m.dim()).filter(|&b| m.is_interior(b)).collect();
    if interior.is_empty() {
        return Verdict::Inconclusive;
    }
    for &b in &interior {
        let mut start = vec![Cyclotomic::zero(); m.dim()];
        start[b] = Cyclotomic::one();
        let span = closure(m, 1, start);
        let all = interior.iter().all(|&i| {
            let mut e = vec![Cyclotomic::zero(); m.dim()];
            e[i] = Cyclotomic::one();
            span.contains(&e)
        });
        if !all {
            return Verdict::Inconclusive;
        }
    }
    Verdict::WindowEvidence
}

/// Simplicity of a total module, or window evidence for a windowed one.
pub fn simplicity_check(m: &ModuleWindow) -> Verdict {
    if m.is_total() {
        total_verdict(m)
    } else {
        windowed_verdict(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperAlgebra;
    use crate::modules::{finite_simple_module, odd_rank_one_module, rank1_cuspidal, tensor};

    fn w(v: &[i64]) -> Vec<Cyclotomic> {
        v.iter().map(|&x| Cyclotomic::integer(x)).collect()
    }

    #[test]
    fn finite_cases() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        let f3 = finite_simple_module(&a, &w(&[3])).unwrap();
        assert_eq!(simplicity_check(&f3), Verdict::Simple);
        let f1 = finite_simple_module(&a, &w(&[1])).unwrap();
        assert_eq!(simplicity_check(&tensor(&f1, &f1).unwrap()), Verdict::NotSimple);
        let q = SuperAlgebra::by_id("q").unwrap();
        assert_eq!(simplicity_check(&odd_rank_one_module(&q, &Cyclotomic::one()).unwrap()), Verdict::Simple);
        assert_eq!(simplicity_check(&odd_rank_one_module(&q, &Cyclotomic::zero()).unwrap()), Verdict::NotSimple);
    }

    #[test]
    fn kac_module_of_atypical_weight_is_not_simple() {
        let a = SuperAlgebra::by_id("sl21").unwrap();
        let s = crate::modules::even_part_simple(&a, &w(&[0, 0])).unwrap();
        let k = crate::modules::kac_module_type_one(&a, &s).unwrap();
        assert_eq!(simplicity_check(&k), Verdict::NotSimple);
        let s = crate::modules::even_part_simple(&a, &w(&[1, 3])).unwrap();
        let k = crate::modules::kac_module_type_one(&a, &s).unwrap();
        assert_eq!(simplicity_check(&k), Verdict::Simple);
    }

    #[test]
    fn dense_window() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        let m = rank1_cuspidal(&a, &Cyclotomic::ratio(1, 3), &Cyclotomic::one(), 20).unwrap();
        assert_eq!(simplicity_check(&m), Verdict::WindowEvidence);
    }
}
