use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::SuperAlgebra;
use crate::arith::{Cyclotomic, Vector};
use crate::combinatorics::SupportSet;
use crate::roots::Parity;

use super::ModError;

/// Values of a weight on the Cartan generators of the algebra.
pub type Weight = Vec<Cyclotomic>;

/// Sparse vector: (basis index, coefficient), sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Cyclotomic)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    /// The whole (finite-dimensional) module.
    Total,
    /// A finite piece of an infinite-dimensional module.
    Windowed,
}

#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub weight: Weight,
    pub start: usize,
    pub parities: Vec<Parity>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.dim()
    }
}

/// A weight module restricted to finitely many weights. Cartan generators act
/// diagonally by the weight; every other generator has a column per basis
/// vector, `None` where the image leaves the window.
#[derive(Clone, Debug)]
pub struct ModuleWindow {
    algebra: Arc<SuperAlgebra>,
    spaces: Vec<WeightSpace>,
    index: HashMap<Weight, usize>,
    basis: Vec<(usize, Parity)>,
    actions: Vec<Vec<Option<SparseVec>>>,
    completeness: Completeness,
    support: Option<SupportSet>,
    origin: Value,
}

pub(crate) fn sparse_from_map(m: BTreeMap<usize, Cyclotomic>) -> SparseVec {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub(crate) fn sparse_axpy(acc: &mut BTreeMap<usize, Cyclotomic>, a: &Cyclotomic, v: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (i, c) in v {
        let e = acc.entry(*i).or_insert_with(Cyclotomic::zero);
        *e = &*e + &(a * c);
    }
}

pub(crate) fn sparse_to_dense(v: &SparseVec, n: usize) -> Vector {
    let mut d = vec![Cyclotomic::zero(); n];
    for (i, c) in v {
        d[*i] = c.clone();
    }
    d
}

pub(crate) fn dense_to_sparse(v: &[Cyclotomic]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// Incremental construction of a [`ModuleWindow`].
pub struct ModuleBuilder {
    m: ModuleWindow,
}

impl ModuleBuilder {
    pub fn new(algebra: Arc<SuperAlgebra>, completeness: Completeness) -> ModuleBuilder {
        let k = algebra.len();
        ModuleBuilder {
            m: ModuleWindow {
                algebra,
                spaces: vec![],
                index: HashMap::new(),
                basis: vec![],
                actions: vec![vec![]; k],
                completeness,
                support: None,
                origin: Value::Null,
            },
        }
    }

    /// Adds basis vectors of the given parities at `weight`; returns their indices.
    pub fn add(&mut self, weight: Weight, parities: &[Parity]) -> Vec<usize> {
        assert_eq!(weight.len(), self.m.algebra.rank(), "weight length");
        let space = match self.m.index.get(&weight) {
            Some(&s) => {
                assert_eq!(s + 1, self.m.spaces.len(), "weight spaces must be added contiguously");
                s
            }
            None => {
                let s = self.m.spaces.len();
                self.m.spaces.push(WeightSpace { weight: weight.clone(), start: self.m.basis.len(), parities: vec![] });
                self.m.index.insert(weight, s);
                s
            }
        };
        let mut out = Vec::new();
        for &p in parities {
            out.push(self.m.basis.len());
            self.m.basis.push((space, p));
            self.m.spaces[space].parities.push(p);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.m.basis.len()
    }

    pub fn set_action(&mut self, gen: usize, col: usize, image: Option<SparseVec>) {
        let cols = &mut self.m.actions[gen];
        if cols.len() <= col {
            cols.resize(col + 1, Some(vec![]));
        }
        cols[col] = image;
    }

    pub fn support(mut self, s: SupportSet) -> Self {
        self.m.support = Some(s);
        self
    }

    pub fn origin(mut self, o: Value) -> Self {
        self.m.origin = o;
        self
    }

    pub fn finish(mut self) -> ModuleWindow {
        let n = self.m.basis.len();
        for g in 0..self.m.algebra.len() {
            if self.m.algebra.is_cartan(g) {
                self.m.actions[g].clear();
            } else {
                self.m.actions[g].resize(n, Some(vec![]));
            }
        }
        if self.m.support.is_none() && self.m.completeness == Completeness::Total {
            self.m.support = Some(SupportSet::finite(self.m.spaces.iter().map(|s| s.weight.clone()).collect()));
        }
        self.m
    }
}

impl ModuleWindow {
    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn spaces(&self) -> &[WeightSpace] {
        &self.spaces
    }

    pub fn space_of(&self, w: &Weight) -> Option<&WeightSpace> {
        self.index.get(w).map(|&s| &self.spaces[s])
    }

    pub fn weight_dim(&self, w: &Weight) -> usize {
        self.space_of(w).map_or(0, WeightSpace::dim)
    }

    pub fn weight_of(&self, b: usize) -> &Weight {
        &self.spaces[self.basis[b].0].weight
    }

    pub fn space_index(&self, b: usize) -> usize {
        self.basis[b].0
    }

    pub fn parity_of(&self, b: usize) -> Parity {
        self.basis[b].1
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn is_total(&self) -> bool {
        self.completeness == Completeness::Total
    }

    pub fn support(&self) -> Option<&SupportSet> {
        self.support.as_ref()
    }

    pub fn origin(&self) -> &Value {
        &self.origin
    }

    pub fn set_origin(&mut self, o: Value) {
        self.origin = o;
    }

    pub fn dims(&self) -> (usize, usize) {
        let odd = self.basis.iter().filter(|(_, p)| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    /// Image of basis vector `b` under generator `g`; `None` outside the window.
    pub fn act_basis(&self, g: usize, b: usize) -> Option<SparseVec> {
        if self.algebra.is_cartan(g) {
            let c = self.weight_of(b)[g].clone();
            return Some(if c.is_zero() { vec![] } else { vec![(b, c)] });
        }
        self.actions[g][b].clone()
    }

    /// Whether every generator image of `b` is known.
    pub fn is_interior(&self, b: usize) -> bool {
        (0..self.algebra.len()).all(|g| self.algebra.is_cartan(g) || self.actions[g][b].is_some())
    }

    pub fn act_sparse(&self, g: usize, v: &SparseVec) -> Option<SparseVec> {
        let mut acc = BTreeMap::new();
        for (b, c) in v {
            let img = self.act_basis(g, *b)?;
            sparse_axpy(&mut acc, c, &img);
        }
        Some(sparse_from_map(acc))
    }

    pub fn act(&self, g: usize, v: &[Cyclotomic]) -> Option<Vector> {
        let s = dense_to_sparse(v);
        self.act_sparse(g, &s).map(|r| sparse_to_dense(&r, self.dim()))
    }

    /// Checks [x_i, x_j] = Σ c_k x_k on every basis vector where all terms are known.
    pub fn check_brackets(&self) -> Result<(), String> {
        let alg = &self.algebra;
        for i in 0..alg.len() {
            for j in 0..alg.len() {
                let sign = Cyclotomic::integer(alg.gen(i).parity.koszul(alg.gen(j).parity));
                for b in 0..self.dim() {
                    let lhs = (|| {
                        let xj = self.act_basis(j, b)?;
                        let xi = self.act_basis(i, b)?;
                        let a = self.act_sparse(i, &xj)?;
                        let c = self.act_sparse(j, &xi)?;
                        let mut acc = BTreeMap::new();
                        sparse_axpy(&mut acc, &Cyclotomic::one(), &a);
                        sparse_axpy(&mut acc, &-&sign, &c);
                        Some(sparse_from_map(acc))
                    })();
                    let rhs = (|| {
                        let mut acc = BTreeMap::new();
                        for (k, c) in alg.bracket(i, j) {
                            sparse_axpy(&mut acc, c, &self.act_basis(*k, b)?);
                        }
                        Some(sparse_from_map(acc))
                    })();
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return Err(format!(
                                "[{}, {}] fails on basis vector {b}",
                                alg.gen(i).name,
                                alg.gen(j).name
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Weight multiplicities, in weight-space order.
    pub fn character(&self) -> Vec<(Weight, usize)> {
        self.spaces.iter().map(|s| (s.weight.clone(), s.dim())).collect()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.spaces.iter().map(WeightSpace::dim).max().unwrap_or(0)
    }

    /// Restriction to a subspace spanned by weight- and parity-homogeneous
    /// vectors (given per weight space), which must be invariant.
    pub fn submodule(&self, vectors: &[Vector]) -> Result<ModuleWindow, ModError> {
        let mut by_space: BTreeMap<usize, Vec<&Vector>> = BTreeMap::new();
        for v in vectors {
            let b = v.iter().position(|c| !c.is_zero()).ok_or(ModError::Internal("zero vector".into()))?;
            by_space.entry(self.space_index(b)).or_default().push(v);
        }
        let mut builder = ModuleBuilder::new(self.algebra.clone(), self.completeness);
        let mut ordered: Vec<&Vector> = Vec::new();
        for (s, vs) in &by_space {
            let parities: Vec<Parity> = vs
                .iter()
                .map(|v| {
                    let b = v.iter().position(|c| !c.is_zero()).unwrap();
                    self.parity_of(b)
                })
                .collect();
            builder.add(self.spaces[*s].weight.clone(), &parities);
            ordered.extend(vs.iter().copied());
        }
        let cols: Vec<Vector> = ordered.iter().map(|v| (*v).clone()).collect();
        let basis = crate::arith::Mat::from_cols(self.dim(), &cols);
        for g in 0..self.algebra.len() {
            if self.algebra.is_cartan(g) {
                continue;
            }
            for (n, v) in ordered.iter().enumerate() {
                let img = match self.act(g, v) {
                    None => None,
                    Some(w) => Some(dense_to_sparse(
                        &basis.solve(&w).ok_or(ModError::Internal("subspace is not invariant".into()))?,
                    )),
                };
                builder.set_action(g, n, img);
            }
        }
        Ok(builder.origin(json!({"submodule_of": self.origin})).finish())
    }

    pub fn to_json(&self) -> Value {
        let weights: Vec<Value> = self
            .spaces
            .iter()
            .map(|s| {
                json!({
                    "weight": s.weight.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "parities": s.parities,
                })
            })
            .collect();
        let mut actions = serde_json::Map::new();
        for g in 0..self.algebra.len() {
            if self.algebra.is_cartan(g) {
                continue;
            }
            let mut triplets = Vec::new();
            let mut unknown = Vec::new();
            for (col, img) in self.actions[g].iter().enumerate() {
                match img {
                    Some(v) => triplets.extend(v.iter().map(|(row, c)| json!([row, col, c.to_string()]))),
                    None => unknown.push(col),
                }
            }
            actions.insert(self.algebra.gen(g).name.clone(), json!({"entries": triplets, "outside_window": unknown}));
        }
        json!({
            "algebra": self.algebra.name(),
            "completeness": self.completeness,
            "dim": self.dim(),
            "weights": weights,
            "actions": actions,
            "support": self.support,
            "origin": self.origin,
        })
    }
}

impl ModuleWindow {
    /// Direct sum M ⊕ N (same algebra), weight spaces merged.
    pub fn direct_sum(&self, other: &ModuleWindow) -> Result<ModuleWindow, ModError> {
        if self.algebra.name() != other.algebra.name() {
            return Err(ModError::AlgebraMismatch);
        }
        let completeness =
            if self.is_total() && other.is_total() { Completeness::Total } else { Completeness::Windowed };
        let mut builder = ModuleBuilder::new(self.algebra.clone(), completeness);
        let mut weights: Vec<Weight> = self.spaces.iter().map(|s| s.weight.clone()).collect();
        for s in &other.spaces {
            if !self.index.contains_key(&s.weight) {
                weights.push(s.weight.clone());
            }
        }
        let mut map_a = vec![0; self.dim()];
        let mut map_b = vec![0; other.dim()];
        for w in &weights {
            if let Some(s) = self.space_of(w) {
                for (k, b) in builder.add(w.clone(), &s.parities).into_iter().enumerate() {
                    map_a[s.start + k] = b;
                }
            }
            if let Some(s) = other.space_of(w) {
                for (k, b) in builder.add(w.clone(), &s.parities).into_iter().enumerate() {
                    map_b[s.start + k] = b;
                }
            }
        }
        for g in 0..self.algebra.len() {
            if self.algebra.is_cartan(g) {
                continue;
            }
            for (m, map) in [(self, &map_a), (other, &map_b)] {
                for b in 0..m.dim() {
                    let img = m.act_basis(g, b).map(|v| {
                        let mut out: SparseVec = v.into_iter().map(|(i, c)| (map[i], c)).collect();
                        out.sort_by_key(|(i, _)| *i);
                        out
                    });
                    builder.set_action(g, map[b], img);
                }
            }
        }
        let support = match (self.support(), other.support()) {
            (Some(a), Some(b)) => {
                let mut base = a.base.clone();
                base.extend(b.base.iter().filter(|w| !a.base.contains(w)).cloned());
                let mut directions = a.directions.clone();
                directions.extend(b.directions.iter().cloned());
                let mut cone = a.cone.clone();
                cone.extend(b.cone.iter().cloned());
                Some(SupportSet { base, directions, cone })
            }
            _ => None,
        };
        let mut builder = builder.origin(json!({"direct_sum": [self.origin, other.origin]}));
        if let Some(s) = support {
            builder = builder.support(s);
        }
        Ok(builder.finish())
    }
}
