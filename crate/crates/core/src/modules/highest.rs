use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::json;

use crate::algebra::SuperAlgebra;
use crate::arith::{Cyclotomic, Mat};
use crate::roots::Parity;

use super::window::{sparse_axpy, sparse_from_map};
use super::{Completeness, ModError, ModuleBuilder, ModuleWindow, SparseVec, Weight};

const MAX_DIM: usize = 4096;

/// Checks λ(h_α) ∈ ℤ≥0 for every even positive root α.
fn check_dominant(alg: &SuperAlgebra, lambda: &Weight) -> Result<(), ModError> {
    for e in 0..alg.len() {
        let g = alg.gen(e);
        if alg.is_cartan(e) || g.parity.is_odd() || alg.borel_degree(e).unwrap_or(0) <= 0 {
            continue;
        }
        let root = g.root.as_ref().expect("root generator");
        let f = alg.root_generator(&-root).expect("negative root generator");
        let mut alpha_h = Cyclotomic::zero();
        let mut lambda_h = Cyclotomic::zero();
        for (k, c) in alg.bracket(e, f) {
            alpha_h = &alpha_h + &(c * &Cyclotomic::integer(g.weight[*k]));
            lambda_h = &lambda_h + &(c * &lambda[*k]);
        }
        let value = &(&lambda_h * &Cyclotomic::integer(2)) / &alpha_h;
        match value.to_i64() {
            Some(v) if v >= 0 => {}
            _ => {
                return Err(ModError::NotDominantIntegral(format!("λ(h) = {value} for the root of {}", g.name)));
            }
        }
    }
    Ok(())
}

struct Vertex {
    weight: Weight,
    depth: i64,
    parity: Parity,
}

struct Builder<'a> {
    alg: &'a SuperAlgebra,
    degree: Vec<i64>,
    verts: Vec<Vertex>,
    raise: HashMap<(usize, usize), SparseVec>,
    lower: HashMap<(usize, usize), SparseVec>,
}

impl Builder<'_> {
    fn act(&self, g: usize, b: usize) -> SparseVec {
        if self.alg.is_cartan(g) {
            let c = self.verts[b].weight[g].clone();
            return if c.is_zero() { vec![] } else { vec![(b, c)] };
        }
        let table = if self.degree[g] > 0 { &self.raise } else { &self.lower };
        table.get(&(g, b)).cloned().unwrap_or_else(|| panic!("action of generator {g} on {b} not yet known"))
    }

    fn act_sparse(&self, g: usize, v: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (b, c) in v {
            sparse_axpy(&mut acc, c, &self.act(g, *b));
        }
        sparse_from_map(acc)
    }

    /// e·(f·w) expressed through already-known actions.
    fn raise_of_candidate(&self, e: usize, f: usize, w: usize) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (k, c) in self.alg.bracket(e, f) {
            sparse_axpy(&mut acc, c, &self.act(*k, w));
        }
        let sign = Cyclotomic::integer(self.alg.gen(e).parity.koszul(self.alg.gen(f).parity));
        let ew = self.act(e, w);
        sparse_axpy(&mut acc, &sign, &self.act_sparse(f, &ew));
        sparse_from_map(acc)
    }
}

/// The simple module L(λ) relative to the algebra's Borel, built level by
/// level: a vector below the top is zero in L(λ) iff every raising generator
/// kills it, so each new vector is recorded through its raising images.
pub fn highest_weight_simple(alg: &Arc<SuperAlgebra>, lambda: &Weight) -> Result<ModuleWindow, ModError> {
    if lambda.len() != alg.rank() {
        return Err(ModError::BadParameter(format!("weight needs {} coordinates", alg.rank())));
    }
    let mut degree = vec![0; alg.len()];
    for (g, d) in degree.iter_mut().enumerate() {
        if alg.is_cartan(g) {
            continue;
        }
        *d = alg.borel_degree(g).ok_or_else(|| ModError::Unsupported(format!("{} has no Borel", alg.name())))?;
        if *d == 0 {
            return Err(ModError::Unsupported(format!("{} has a non-Cartan generator of degree 0", alg.name())));
        }
    }
    check_dominant(alg, lambda)?;
    let raising: Vec<usize> = (0..alg.len()).filter(|&g| degree[g] > 0).collect();
    let lowering: Vec<usize> = (0..alg.len()).filter(|&g| degree[g] < 0).collect();
    let max_step = lowering.iter().map(|&f| -degree[f]).max().unwrap_or(1);

    let mut st = Builder { alg, degree: degree.clone(), verts: vec![], raise: HashMap::new(), lower: HashMap::new() };
    st.verts.push(Vertex { weight: lambda.clone(), depth: 0, parity: Parity::Even });
    for &e in &raising {
        st.raise.insert((e, 0), vec![]);
    }

    let mut empty_streak = 0;
    let mut depth = 0;
    while empty_streak < max_step {
        depth += 1;
        // Candidates f·w grouped by (weight, parity), in a deterministic order.
        let mut groups: BTreeMap<(Weight, Parity), Vec<(usize, usize)>> = BTreeMap::new();
        for &f in &lowering {
            for w in 0..st.verts.len() {
                if st.verts[w].depth == depth + degree[f] {
                    let wt: Weight = st.verts[w]
                        .weight
                        .iter()
                        .zip(&alg.gen(f).weight)
                        .map(|(a, &b)| a + &Cyclotomic::integer(b))
                        .collect();
                    let p = st.verts[w].parity + alg.gen(f).parity;
                    groups.entry((wt, p)).or_default().push((f, w));
                }
            }
        }
        let mut added = 0;
        for ((wt, parity), cands) in groups {
            let images: Vec<BTreeMap<(usize, usize), Cyclotomic>> = cands
                .iter()
                .map(|&(f, w)| {
                    let mut m = BTreeMap::new();
                    for (pos, &e) in raising.iter().enumerate() {
                        for (b, c) in st.raise_of_candidate(e, f, w) {
                            m.insert((pos, b), c);
                        }
                    }
                    m
                })
                .collect();
            let keys: Vec<(usize, usize)> = {
                let mut k: Vec<_> = images.iter().flat_map(|m| m.keys().copied()).collect();
                k.sort();
                k.dedup();
                k
            };
            let cols: Vec<Vec<Cyclotomic>> = images
                .iter()
                .map(|m| keys.iter().map(|k| m.get(k).cloned().unwrap_or_else(Cyclotomic::zero)).collect())
                .collect();
            let (_, pivots) = Mat::from_cols(keys.len(), &cols).rref();
            let chosen: Vec<usize> = pivots;
            let basis_mat = Mat::from_cols(keys.len(), &chosen.iter().map(|&c| cols[c].clone()).collect::<Vec<_>>());
            let first_new = st.verts.len();
            for (n, &c) in chosen.iter().enumerate() {
                let b = first_new + n;
                st.verts.push(Vertex { weight: wt.clone(), depth, parity });
                for (pos, &e) in raising.iter().enumerate() {
                    let img: SparseVec =
                        images[c].iter().filter(|((p, _), _)| *p == pos).map(|((_, i), v)| (*i, v.clone())).collect();
                    st.raise.insert((e, b), img);
                }
            }
            for (k, &(f, w)) in cands.iter().enumerate() {
                let coords = if chosen.is_empty() {
                    vec![]
                } else {
                    basis_mat.solve(&cols[k]).expect("candidate lies in the span of the chosen ones")
                };
                let img: SparseVec = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(n, c)| (first_new + n, c))
                    .collect();
                st.lower.insert((f, w), img);
            }
            added += chosen.len();
            if st.verts.len() > MAX_DIM {
                return Err(ModError::Unsupported(format!("module exceeds {MAX_DIM} dimensions")));
            }
        }
        empty_streak = if added == 0 { empty_streak + 1 } else { 0 };
    }

    // Lay the vertices out by weight.
    let mut order: Vec<Weight> = Vec::new();
    for v in &st.verts {
        if !order.contains(&v.weight) {
            order.push(v.weight.clone());
        }
    }
    let mut builder = ModuleBuilder::new(alg.clone(), Completeness::Total);
    let mut new_index = vec![0; st.verts.len()];
    for wt in &order {
        let members: Vec<usize> = (0..st.verts.len()).filter(|&i| &st.verts[i].weight == wt).collect();
        let parities: Vec<Parity> = members.iter().map(|&i| st.verts[i].parity).collect();
        for (i, b) in members.into_iter().zip(builder.add(wt.clone(), &parities)) {
            new_index[i] = b;
        }
    }
    for g in 0..alg.len() {
        if alg.is_cartan(g) {
            continue;
        }
        for old in 0..st.verts.len() {
            let img = st.act(g, old);
            let mut mapped: SparseVec = img.into_iter().map(|(i, c)| (new_index[i], c)).collect();
            mapped.sort_by_key(|(i, _)| *i);
            builder.set_action(g, new_index[old], Some(mapped));
        }
    }
    let origin = json!({
        "kind": "highest_weight",
        "algebra": alg.name(),
        "lambda": lambda.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(builder.origin(origin).finish())
}

/// Finite-dimensional simple module F(λ) over sl(2), osp(1|2) or sl(2|1).
pub fn finite_simple_module(alg: &Arc<SuperAlgebra>, lambda: &Weight) -> Result<ModuleWindow, ModError> {
    if !["sl2", "osp12", "sl21"].contains(&alg.name()) {
        return Err(ModError::Unsupported(format!("finite simple modules over {}", alg.name())));
    }
    highest_weight_simple(alg, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        v.iter().map(|&x| Cyclotomic::integer(x)).collect()
    }

    #[test]
    fn sl2_f3() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        let m = finite_simple_module(&a, &w(&[3])).unwrap();
        assert_eq!(m.dim(), 4);
        let weights: Vec<_> = m.character();
        assert_eq!(weights, vec![(w(&[3]), 1), (w(&[1]), 1), (w(&[-1]), 1), (w(&[-3]), 1)]);
        m.check_brackets().unwrap();
    }

    #[test]
    fn osp12_dims() {
        let a = SuperAlgebra::by_id("osp12").unwrap();
        for l in 0..5 {
            let m = finite_simple_module(&a, &w(&[l])).unwrap();
            assert_eq!(m.dim() as i64, 2 * l + 1);
            m.check_brackets().unwrap();
        }
    }

    #[test]
    fn sl21_typical_and_atypical() {
        let a = SuperAlgebra::by_id("sl21").unwrap();
        let typical = finite_simple_module(&a, &w(&[2, 3])).unwrap();
        assert_eq!(typical.dim(), 12);
        typical.check_brackets().unwrap();
        let atypical = finite_simple_module(&a, &w(&[1, 0])).unwrap();
        assert!(atypical.dim() < 8);
        atypical.check_brackets().unwrap();
    }

    #[test]
    fn non_dominant_rejected() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        assert!(matches!(finite_simple_module(&a, &w(&[-1])), Err(ModError::NotDominantIntegral(_))));
        let q = SuperAlgebra::by_id("q").unwrap();
        assert!(finite_simple_module(&q, &w(&[1])).is_err());
    }
}
