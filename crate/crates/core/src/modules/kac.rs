use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::algebra::SuperAlgebra;
use crate::arith::Cyclotomic;
use crate::roots::{Parity, RootVector};

use super::{highest_weight_simple, Completeness, ModError, ModuleBuilder, ModuleWindow, Weight};

/// Roots of the given degree in the distinguished grading.
pub fn odd_part_roots(alg: &SuperAlgebra, degree: i64) -> Vec<RootVector> {
    (0..alg.len())
        .filter(|&g| alg.grading_degree(g) == Some(degree))
        .filter_map(|g| alg.gen(g).root.clone())
        .collect()
}

/// The even-part algebra g₀ of a type-I algebra.
pub fn even_part_algebra(alg: &SuperAlgebra) -> Arc<SuperAlgebra> {
    Arc::new(alg.even_part().0)
}

/// F₀(λ): the simple g₀-module of highest weight λ.
pub fn even_part_simple(alg: &SuperAlgebra, lambda: &Weight) -> Result<ModuleWindow, ModError> {
    highest_weight_simple(&even_part_algebra(alg), lambda)
}

type Key = (u64, usize);

struct Kac<'a> {
    alg: &'a SuperAlgebra,
    s: &'a ModuleWindow,
    /// g index → g₀ index, for degree-0 generators.
    to_even: Vec<Option<usize>>,
    degree: Vec<i64>,
    /// g index → bit position, for degree −1 generators.
    lower_bit: Vec<Option<u32>>,
}

impl Kac<'_> {
    fn add(acc: &mut BTreeMap<Key, Cyclotomic>, k: Key, c: Cyclotomic) {
        let e = acc.entry(k).or_insert_with(Cyclotomic::zero);
        *e = &*e + &c;
    }

    /// y · (y_I ⊗ s) for y of degree −1: y y_I = ± y_{I∪{y}} since g₋₁ is abelian.
    fn insert(&self, bit: u32, mask: u64, s: usize) -> Option<(Key, Cyclotomic)> {
        if mask & (1 << bit) != 0 {
            return None;
        }
        let smaller = (mask & ((1 << bit) - 1)).count_ones();
        let sign = if smaller % 2 == 0 { 1 } else { -1 };
        Some(((mask | (1 << bit), s), Cyclotomic::integer(sign)))
    }

    /// x · (y_{i₁} ⋯ y_{i_k} ⊗ s), reduced to PBW form.
    fn act(&self, x: usize, mask: u64, s: usize) -> BTreeMap<Key, Cyclotomic> {
        let mut out = BTreeMap::new();
        if let Some(bit) = self.lower_bit[x] {
            if let Some((k, c)) = self.insert(bit, mask, s) {
                out.insert(k, c);
            }
            return out;
        }
        if mask == 0 {
            if self.degree[x] == 0 {
                let g0 = self.to_even[x].expect("degree-0 generator lies in g0");
                for (t, c) in self.s.act_basis(g0, s).expect("total inducing module") {
                    out.insert((0, t), c);
                }
            }
            return out;
        }
        let first = mask.trailing_zeros();
        let rest = mask & !(1 << first);
        let y = self.lower_bit.iter().position(|b| *b == Some(first)).expect("bit owner");
        // x y rest = (−1)^{|x||y|} y (x rest) + [x, y] rest
        let sign = Cyclotomic::integer(self.alg.gen(x).parity.koszul(self.alg.gen(y).parity));
        for ((m, t), c) in self.act(x, rest, s) {
            if let Some((k, d)) = self.insert(first, m, t) {
                Self::add(&mut out, k, &(&c * &d) * &sign);
            }
        }
        for (z, c) in self.alg.bracket(x, y) {
            for (k, d) in self.act(*z, rest, s) {
                Self::add(&mut out, k, c * &d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// K(S) = U(g) ⊗_{U(g₀ ⊕ g₁)} S ≅ Λ(g₋₁) ⊗ S for a total g₀-module S.
pub fn kac_module_type_one(alg: &Arc<SuperAlgebra>, s: &ModuleWindow) -> Result<ModuleWindow, ModError> {
    if !alg.is_type_one() {
        return Err(ModError::NotTypeI(alg.name().to_string()));
    }
    if !s.is_total() {
        return Err(ModError::NotTotal);
    }
    let (g0, keep) = alg.even_part();
    if s.algebra().name() != g0.name() {
        return Err(ModError::AlgebraMismatch);
    }
    let degree: Vec<i64> = (0..alg.len()).map(|g| alg.grading_degree(g).unwrap_or(0)).collect();
    let mut to_even = vec![None; alg.len()];
    for (n, &g) in keep.iter().enumerate() {
        to_even[g] = Some(n);
    }
    let lower: Vec<usize> = (0..alg.len()).filter(|&g| degree[g] == -1).collect();
    if lower.len() > 20 {
        return Err(ModError::Unsupported("g₋₁ too large".into()));
    }
    let mut lower_bit = vec![None; alg.len()];
    for (b, &g) in lower.iter().enumerate() {
        lower_bit[g] = Some(b as u32);
    }
    let kac = Kac { alg, s, to_even, degree, lower_bit };

    let weight_of = |mask: u64, t: usize| -> Weight {
        let mut w = s.weight_of(t).clone();
        for (b, &g) in lower.iter().enumerate() {
            if mask & (1 << b) != 0 {
                for (h, x) in w.iter_mut().enumerate() {
                    *x = &*x + &Cyclotomic::integer(alg.gen(g).weight[h]);
                }
            }
        }
        w
    };
    let mut groups: BTreeMap<Weight, Vec<Key>> = BTreeMap::new();
    for mask in 0..(1u64 << lower.len()) {
        for t in 0..s.dim() {
            groups.entry(weight_of(mask, t)).or_default().push((mask, t));
        }
    }
    let mut builder = ModuleBuilder::new(alg.clone(), Completeness::Total);
    let mut index: BTreeMap<Key, usize> = BTreeMap::new();
    for (w, keys) in &groups {
        let parities: Vec<Parity> =
            keys.iter().map(|&(m, t)| s.parity_of(t) + Parity::from_bit((m.count_ones() % 2) as u8)).collect();
        for (k, b) in keys.iter().zip(builder.add(w.clone(), &parities)) {
            index.insert(*k, b);
        }
    }
    for x in 0..alg.len() {
        if alg.is_cartan(x) {
            continue;
        }
        for (&(mask, t), &b) in &index {
            let mut img: Vec<(usize, Cyclotomic)> = kac.act(x, mask, t).into_iter().map(|(k, c)| (index[&k], c)).collect();
            img.sort_by_key(|(i, _)| *i);
            builder.set_action(x, b, Some(img));
        }
    }
    let origin = json!({"kind": "kac", "algebra": alg.name(), "inducing": s.origin()});
    Ok(builder.origin(origin).finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        v.iter().map(|&x| Cyclotomic::integer(x)).collect()
    }

    #[test]
    fn trivial_and_doublet() {
        let a = SuperAlgebra::by_id("sl21").unwrap();
        let triv = even_part_simple(&a, &w(&[0, 0])).unwrap();
        let k = kac_module_type_one(&a, &triv).unwrap();
        assert_eq!(k.dim(), 4);
        k.check_brackets().unwrap();
        let doublet = even_part_simple(&a, &w(&[1, 0])).unwrap();
        assert_eq!(doublet.dim(), 2);
        let k = kac_module_type_one(&a, &doublet).unwrap();
        assert_eq!(k.dim(), 8);
        k.check_brackets().unwrap();
    }

    #[test]
    fn osp12_is_not_type_one() {
        let a = SuperAlgebra::by_id("osp12").unwrap();
        let s = super::super::finite_simple_module(&a, &w(&[0])).unwrap();
        assert!(matches!(kac_module_type_one(&a, &s), Err(ModError::NotTypeI(_))));
    }
}
