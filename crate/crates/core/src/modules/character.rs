use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::arith::lattice::lattice_contains;
use crate::arith::Cyclotomic;
use crate::combinatorics::TriangularDecomposition;
use crate::roots::{RootSystem, RootVector};

use super::{ModError, Weight};

/// Finitely many weights with multiplicities, weights in root coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterWindow {
    pub entries: BTreeMap<Weight, u64>,
}

impl CharacterWindow {
    pub fn point(w: Weight) -> CharacterWindow {
        CharacterWindow { entries: BTreeMap::from([(w, 1)]) }
    }

    pub fn add(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.entries.entry(w).or_insert(0) += mult;
        }
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn mass(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(w, m)| json!({"weight": w.iter().map(ToString::to_string).collect::<Vec<_>>(), "multiplicity": m}))
                .collect(),
        )
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn shift(w: &Weight, beta: &[i64]) -> Weight {
    w.iter().zip(beta).map(|(x, &b)| x + &Cyclotomic::integer(b)).collect()
}

/// Character of M_T(W) ⊗ A-fold: charW · Π_{even α ∈ Δ_T^−}(1−e^α)^{−A} ·
/// Π_{odd α ∈ Δ_T^−}(1+e^α)^{A}. The result keeps the weights μ with
/// l(μ) ≥ max_w l(w) − depth·m, where l is the functional of T and m the
/// smallest |l(α)| over Δ_T^−; multiplicities there are complete.
pub fn induced_character(
    rs: &RootSystem,
    t: &TriangularDecomposition,
    char_w: &CharacterWindow,
    a_dim: u64,
    depth: u64,
) -> Result<CharacterWindow, ModError> {
    if a_dim == 0 {
        return Err(ModError::BadParameter("A_dim must be positive".into()));
    }
    let l = &t.functional;
    let dim = rs.dim();
    let Some(first) = char_w.entries.keys().next() else {
        return Ok(CharacterWindow::default());
    };
    if char_w.entries.keys().any(|w| w.len() != dim) {
        return Err(ModError::BadParameter(format!("weights need {dim} coordinates")));
    }
    let zero_gens: Vec<Vec<i64>> = t.zero.iter().map(|a| a.0.clone()).collect();
    for w in char_w.entries.keys() {
        let diff: Option<Vec<i64>> = w.iter().zip(first).map(|(a, b)| (a - b).to_i64()).collect();
        let inside = diff.is_some_and(|d| d.iter().all(|&x| x == 0) || (!zero_gens.is_empty() && lattice_contains(&zero_gens, &d)));
        if !inside {
            return Err(ModError::CosetViolation(format!("weights {first:?} and {w:?} lie in different cosets")));
        }
    }
    let pair = |w: &Weight| -> Cyclotomic {
        w.iter().zip(l).fold(Cyclotomic::zero(), |acc, (x, &c)| &acc + &(x * &Cyclotomic::integer(c)))
    };
    // All weights of charW share one coset of the l-kernel lattice, so their
    // l-values differ by integers.
    let top = char_w.entries.keys().map(|w| (&pair(w) - &pair(first)).to_i64().expect("integral offsets")).max().unwrap();
    let m = t.minus.iter().map(|a| -a.pair(l)).min().unwrap_or(1);
    let floor = top - (depth as i64) * m;

    // Expansion of the root factors as offset → multiplicity, truncated by drop.
    let budget = top - floor;
    let mut series: BTreeMap<Vec<i64>, u64> = BTreeMap::from([(vec![0; dim], 1)]);
    let odd: Vec<&RootVector> = t.minus.iter().filter(|a| rs.parity(a).is_some_and(|p| p.is_odd())).collect();
    for alpha in &t.minus {
        let drop = -alpha.pair(l);
        let is_odd = odd.contains(&alpha);
        let max_n = if is_odd { a_dim } else { (budget / drop) as u64 };
        let mut next: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (off, c) in &series {
            let used = -off.iter().zip(l).map(|(x, y)| x * y).sum::<i64>();
            for n in 0..=max_n {
                if used + n as i64 * drop > budget {
                    break;
                }
                let coeff = if is_odd { binomial(a_dim, n) } else { binomial(n + a_dim - 1, a_dim - 1) };
                let key: Vec<i64> = off.iter().zip(&alpha.0).map(|(x, y)| x + n as i64 * y).collect();
                *next.entry(key).or_insert(0) += c * coeff;
            }
        }
        series = next;
    }
    let mut out = CharacterWindow::default();
    for (w, mult) in &char_w.entries {
        for (off, c) in &series {
            let mu = shift(w, off);
            if (&pair(&mu) - &pair(first)).to_i64().expect("integral") >= floor {
                out.add(mu, mult * c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::triangular_from_functional;
    use crate::roots::{build_root_system, Family};

    fn w(v: &[i64]) -> Weight {
        v.iter().map(|&x| Cyclotomic::integer(x)).collect()
    }

    #[test]
    fn verma_and_doubled_verma() {
        let rs = build_root_system(&Family::PureA { n: 1 }).unwrap();
        let t = triangular_from_functional(&rs, &[1, 0]).unwrap();
        let lam = w(&[3, 0]);
        for (a_dim, expected) in [(1, [1, 1, 1, 1]), (2, [1, 2, 3, 4])] {
            let ch = induced_character(&rs, &t, &CharacterWindow::point(lam.clone()), a_dim, 3).unwrap();
            assert_eq!(ch.entries.len(), 4);
            for (k, e) in expected.iter().enumerate() {
                assert_eq!(ch.get(&shift(&lam, &[-(k as i64), k as i64])), *e);
            }
        }
    }

    #[test]
    fn kac_character_mass() {
        let rs = build_root_system(&Family::A { m: 1, n: 0 }).unwrap();
        let t = triangular_from_functional(&rs, rs.grading_functional()).unwrap();
        let ch = induced_character(&rs, &t, &CharacterWindow::point(w(&[2, 0, 1])), 1, 4).unwrap();
        assert_eq!(ch.mass(), 4);
    }

    #[test]
    fn coset_violation() {
        let rs = build_root_system(&Family::PureA { n: 1 }).unwrap();
        let t = triangular_from_functional(&rs, &[1, 0]).unwrap();
        let mut ch = CharacterWindow::point(w(&[0, 0]));
        ch.add(w(&[1, -1]), 1);
        assert!(matches!(induced_character(&rs, &t, &ch, 1, 2), Err(ModError::CosetViolation(_))));
    }
}
