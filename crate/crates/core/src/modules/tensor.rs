use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::json;

use crate::algebra::SuperAlgebra;
use crate::arith::Cyclotomic;
use crate::combinatorics::SupportSet;
use crate::roots::Parity;

use super::window::{sparse_axpy, sparse_from_map};
use super::{Completeness, ModError, ModuleBuilder, ModuleWindow, SparseVec, Weight};

/// A tensor product V₁ ⊗ … ⊗ V_r with slot-wise access to the action. Each
/// generator of the product algebra acts as a sum over (slot, factor generator)
/// pairs; slot i carries the Koszul sign (−1)^{|x|(|v₁|+…+|v_{i−1}|)}.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    factors: Vec<ModuleWindow>,
    gen_map: Vec<Vec<(usize, usize)>>,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    module: ModuleWindow,
}

impl TensorProduct {
    /// r-fold tensor product over a common algebra.
    pub fn new(factors: Vec<ModuleWindow>) -> Result<TensorProduct, ModError> {
        let alg = factors.first().ok_or(ModError::BadParameter("no factors".into()))?.algebra().clone();
        if factors.iter().any(|f| f.algebra().name() != alg.name()) {
            return Err(ModError::AlgebraMismatch);
        }
        let gen_map = (0..alg.len()).map(|g| (0..factors.len()).map(|s| (s, g)).collect()).collect();
        let support = factors
            .iter()
            .map(|f| f.support().cloned())
            .reduce(|a, b| Some(a?.sum(&b?)))
            .flatten();
        Ok(Self::build(factors, alg, gen_map, support))
    }

    /// Outer tensor product over g₁ ⊕ … ⊕ g_r, slot i acted on by the i-th summand.
    pub fn outer(factors: Vec<ModuleWindow>) -> Result<TensorProduct, ModError> {
        let first = factors.first().ok_or(ModError::BadParameter("no factors".into()))?;
        let mut alg: SuperAlgebra = (**first.algebra()).clone();
        let mut gen_map: Vec<Vec<(usize, usize)>> = (0..alg.len()).map(|g| vec![(0, g)]).collect();
        for (s, f) in factors.iter().enumerate().skip(1) {
            let (pa, pb) = alg.direct_sum_positions(f.algebra());
            let mut next = vec![vec![]; alg.len() + f.algebra().len()];
            for (g, m) in gen_map.into_iter().enumerate() {
                next[pa[g]] = m;
            }
            for g in 0..f.algebra().len() {
                next[pb[g]] = vec![(s, g)];
            }
            gen_map = next;
            alg = alg.direct_sum(f.algebra());
        }
        let support = factors
            .iter()
            .map(|f| f.support().cloned())
            .reduce(|a, b| Some(a?.outer(&b?)))
            .flatten();
        Ok(Self::build(factors, Arc::new(alg), gen_map, support))
    }

    fn build(
        factors: Vec<ModuleWindow>,
        alg: Arc<SuperAlgebra>,
        gen_map: Vec<Vec<(usize, usize)>>,
        support: Option<SupportSet>,
    ) -> TensorProduct {
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for f in &factors {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..f.dim()).map(move |b| {
                        let mut u = t.clone();
                        u.push(b);
                        u
                    })
                })
                .collect();
        }
        if factors.iter().any(|f| f.dim() == 0) {
            tuples.clear();
        }
        let weight_of = |t: &[usize]| -> Weight {
            (0..alg.rank())
                .map(|h| {
                    gen_map[h].iter().fold(Cyclotomic::zero(), |acc, &(s, fh)| &acc + &factors[s].weight_of(t[s])[fh])
                })
                .collect()
        };
        let parity_of = |t: &[usize]| t.iter().enumerate().fold(Parity::Even, |p, (s, &b)| p + factors[s].parity_of(b));
        let mut groups: Vec<(Weight, Vec<Vec<usize>>)> = Vec::new();
        let mut group_of: HashMap<Weight, usize> = HashMap::new();
        for t in tuples {
            let w = weight_of(&t);
            let g = *group_of.entry(w.clone()).or_insert_with(|| {
                groups.push((w, vec![]));
                groups.len() - 1
            });
            groups[g].1.push(t);
        }
        let completeness =
            if factors.iter().all(ModuleWindow::is_total) { Completeness::Total } else { Completeness::Windowed };
        let mut builder = ModuleBuilder::new(alg.clone(), completeness);
        let mut ordered = Vec::new();
        for (w, ts) in groups {
            let parities: Vec<Parity> = ts.iter().map(|t| parity_of(t)).collect();
            builder.add(w, &parities);
            ordered.extend(ts);
        }
        let index: HashMap<Vec<usize>, usize> = ordered.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut tp = TensorProduct {
            factors,
            gen_map,
            tuples: ordered,
            index,
            module: ModuleBuilder::new(alg.clone(), completeness).finish(),
        };
        for g in 0..alg.len() {
            if alg.is_cartan(g) {
                continue;
            }
            for b in 0..tp.tuples.len() {
                let img = tp.gen_image(g, b);
                builder.set_action(g, b, img);
            }
        }
        let origin = json!({"tensor": tp.factors.iter().map(|f| f.origin().clone()).collect::<Vec<_>>()});
        let mut builder = builder.origin(origin);
        if let Some(s) = support {
            builder = builder.support(s);
        }
        tp.module = builder.finish();
        tp
    }

    fn gen_image(&self, g: usize, b: usize) -> Option<SparseVec> {
        let mut acc = BTreeMap::new();
        for &(s, fg) in &self.gen_map[g] {
            sparse_axpy(&mut acc, &Cyclotomic::one(), &self.slot_act(s, fg, b)?);
        }
        Some(sparse_from_map(acc))
    }

    pub fn module(&self) -> &ModuleWindow {
        &self.module
    }

    pub fn into_module(self) -> ModuleWindow {
        self.module
    }

    pub fn factors(&self) -> &[ModuleWindow] {
        &self.factors
    }

    pub fn tuple(&self, b: usize) -> &[usize] {
        &self.tuples[b]
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Action of factor generator `fg` on slot `s` of basis vector `b`, with the
    /// Koszul sign; `None` when the factor image leaves its window.
    pub fn slot_act(&self, s: usize, fg: usize, b: usize) -> Option<SparseVec> {
        let t = &self.tuples[b];
        let factor = &self.factors[s];
        let img = factor.act_basis(fg, t[s])?;
        let x_odd = factor.algebra().gen(fg).parity.is_odd();
        let before_odd = t[..s].iter().enumerate().filter(|(j, &v)| self.factors[*j].parity_of(v).is_odd()).count() % 2 == 1;
        let sign = if x_odd && before_odd { -Cyclotomic::one() } else { Cyclotomic::one() };
        let mut out: SparseVec = img
            .into_iter()
            .map(|(k, c)| {
                let mut u = t.clone();
                u[s] = k;
                (self.index[&u], &c * &sign)
            })
            .collect();
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }
}

/// M₁ ⊗ M₂ over a common algebra.
pub fn tensor(m1: &ModuleWindow, m2: &ModuleWindow) -> Result<ModuleWindow, ModError> {
    Ok(TensorProduct::new(vec![m1.clone(), m2.clone()])?.into_module())
}

/// M₁ ⊠ M₂ over g₁ ⊕ g₂.
pub fn outer_tensor(m1: &ModuleWindow, m2: &ModuleWindow) -> Result<ModuleWindow, ModError> {
    Ok(TensorProduct::outer(vec![m1.clone(), m2.clone()])?.into_module())
}
