use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::linalg::is_zero_vec;
use crate::arith::{Cyclotomic, Echelon, Mat, Vector};
use crate::roots::{Parity, RootVector};

use super::{simplicity_check, ModError, ModuleWindow, TensorProduct, Verdict};

/// Even and odd parts of End_g(V). `even` is a basis of the even part; `sigma`
/// is the odd generator when the odd part is one-dimensional, scaled so that
/// σ² = ±id when that is possible over ℚ.
#[derive(Clone, Debug)]
pub struct EndoBasis {
    pub dim_even: usize,
    pub dim_odd: usize,
    pub even: Vec<Mat>,
    pub sigma: Option<Mat>,
}

impl EndoBasis {
    pub fn schur_pattern(&self) -> (usize, usize) {
        (self.dim_even, self.dim_odd)
    }

    /// c with σ² = c·id, when σ exists and its square is scalar.
    pub fn sigma_square(&self) -> Option<Cyclotomic> {
        scalar_of(&self.sigma.as_ref()?.mul(self.sigma.as_ref()?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitTag {
    Whole,
    Half,
}

fn scalar_of(m: &Mat) -> Option<Cyclotomic> {
    if m.rows() == 0 {
        return Some(Cyclotomic::one());
    }
    let c = m.get(0, 0).clone();
    m.entries().all(|(i, j, x)| if i == j { *x == c } else { x.is_zero() }).then_some(c)
}

/// Dense matrix of a generator's action on a total module.
pub(crate) fn action_matrix(m: &ModuleWindow, g: usize) -> Mat {
    let mut out = Mat::zeros(m.dim(), m.dim());
    for b in 0..m.dim() {
        for (i, c) in m.act_basis(g, b).expect("total module") {
            out.set(i, b, c);
        }
    }
    out
}

/// Parity-homogeneous, weight-preserving solutions of φx = (−1)^{|φ||x|} xφ.
fn supercommutant(m: &ModuleWindow, parity: Parity) -> Vec<Mat> {
    let n = m.dim();
    let mut var: HashMap<(usize, usize), usize> = HashMap::new();
    for s in m.spaces() {
        for i in s.range() {
            for j in s.range() {
                if m.parity_of(i) + m.parity_of(j) == parity {
                    let k = var.len();
                    var.insert((i, j), k);
                }
            }
        }
    }
    let nv = var.len();
    let alg = m.algebra();
    let mut rows = Echelon::new(nv);
    for x in (0..alg.len()).filter(|&x| !alg.is_cartan(x)) {
        let sign = Cyclotomic::integer(parity.koszul(alg.gen(x).parity));
        let mat = action_matrix(m, x);
        for b in 0..n {
            for i in 0..n {
                let mut row = vec![Cyclotomic::zero(); nv];
                for j in 0..n {
                    if let Some(&v) = var.get(&(i, j)) {
                        row[v] = &row[v] + mat.get(j, b);
                    }
                    if let Some(&v) = var.get(&(j, b)) {
                        row[v] = &row[v] - &(&sign * mat.get(i, j));
                    }
                }
                if !is_zero_vec(&row) {
                    rows.insert(&row);
                }
            }
        }
    }
    rows.nullspace()
        .into_iter()
        .map(|sol| {
            let mut phi = Mat::zeros(n, n);
            for (&(i, j), &v) in &var {
                phi.set(i, j, sol[v].clone());
            }
            phi
        })
        .collect()
}

/// End_g(M) for a total module M.
pub fn endomorphisms(m: &ModuleWindow) -> Result<EndoBasis, ModError> {
    if !m.is_total() {
        return Err(ModError::NotTotal);
    }
    let even = supercommutant(m, Parity::Even);
    let odd = supercommutant(m, Parity::Odd);
    let sigma = match odd.as_slice() {
        [s] => {
            let sq = s.mul(s);
            let scaled = scalar_of(&sq)
                .and_then(|c| c.to_rational().and_then(|r| r.abs().sqrt_exact()))
                .filter(|r| !r.is_zero())
                .map(|r| s.scale(&Cyclotomic::from_rational(r).inv().expect("nonzero")));
            Some(scaled.unwrap_or_else(|| s.clone()))
        }
        _ => None,
    };
    Ok(EndoBasis { dim_even: even.len(), dim_odd: odd.len(), even, sigma })
}

/// Common kernel of the generators carrying the given roots.
pub fn invariants_subspace(m: &ModuleWindow, roots: &[RootVector]) -> Result<Vec<Vector>, ModError> {
    if !m.is_total() {
        return Err(ModError::NotTotal);
    }
    let alg = m.algebra();
    let mut rows = Echelon::new(m.dim());
    for r in roots {
        let g = alg
            .root_generator(r)
            .ok_or_else(|| ModError::BadParameter(format!("{r:?} is not a root of {}", alg.name())))?;
        let mat = action_matrix(m, g);
        for i in 0..m.dim() {
            let row = mat.row(i);
            if !is_zero_vec(row) {
                rows.insert(row);
            }
        }
    }
    Ok(rows.nullspace())
}

fn matrix_of(tp: &TensorProduct, f: impl Fn(&[usize]) -> Vec<(Vec<usize>, Cyclotomic)>) -> Mat {
    let n = tp.module().dim();
    let mut out = Mat::zeros(n, n);
    for b in 0..n {
        for (t, c) in f(tp.tuple(b)) {
            let i = tp.index_of(&t).expect("tuple in range");
            out.set(i, b, &out.get(i, b).clone() + &c);
        }
    }
    out
}

/// Eigenvectors of an even, weight-preserving operator for eigenvalue `lambda`,
/// chosen homogeneous in weight and parity.
fn eigen_basis(m: &ModuleWindow, op: &Mat, lambda: &Cyclotomic) -> Vec<Vector> {
    let mut out = Vec::new();
    for s in m.spaces() {
        for p in [Parity::Even, Parity::Odd] {
            let idx: Vec<usize> = s.range().filter(|&b| m.parity_of(b) == p).collect();
            if idx.is_empty() {
                continue;
            }
            let block = Mat::from_rows(
                idx.iter()
                    .map(|&i| {
                        idx.iter()
                            .map(|&j| if i == j { op.get(i, j) - lambda } else { op.get(i, j).clone() })
                            .collect()
                    })
                    .collect(),
            );
            for v in block.nullspace() {
                let mut full = vec![Cyclotomic::zero(); m.dim()];
                for (k, &i) in idx.iter().enumerate() {
                    full[i] = v[k].clone();
                }
                out.push(full);
            }
        }
    }
    out
}

/// The irreducible tensor product of two simple total modules over g₁ ⊕ g₂:
/// V₁ ⊗ V₂ itself, or one σ-eigenspace when both factors have odd endomorphisms.
pub fn irreducible_tensor(m1: &ModuleWindow, m2: &ModuleWindow) -> Result<(ModuleWindow, SplitTag), ModError> {
    let mut endos = Vec::new();
    for (k, m) in [m1, m2].into_iter().enumerate() {
        if !m.is_total() {
            return Err(ModError::NotTotal);
        }
        if simplicity_check(m) != Verdict::Simple {
            return Err(ModError::FactorNotSimple(format!("factor {}", k + 1)));
        }
        endos.push(endomorphisms(m)?);
    }
    let tp = TensorProduct::outer(vec![m1.clone(), m2.clone()])?;
    let (Some(s1), Some(s2)) = (endos[0].sigma.clone(), endos[1].sigma.clone()) else {
        return Ok((tp.into_module(), SplitTag::Whole));
    };
    let c1 = endos[0].sigma_square().ok_or(ModError::Internal("σ₁² is not scalar".into()))?;
    let c2 = endos[1].sigma_square().ok_or(ModError::Internal("σ₂² is not scalar".into()))?;
    // (σ₁⊗σ₂)(v⊗w) = (−1)^{|v|} σ₁v ⊗ σ₂w squares to −c₁c₂.
    let sq = -&(&c1 * &c2);
    let root = sq.sqrt_of_rational_square().ok_or(ModError::Unsupported(format!("cannot normalise σ² = {sq}")))?;
    let inv_root = root.inv().map_err(|e| ModError::Internal(e.to_string()))?;
    let sigma = matrix_of(&tp, |t| {
        let sign = if m1.parity_of(t[0]).is_odd() { -&inv_root } else { inv_root.clone() };
        let mut out = Vec::new();
        for i in 0..m1.dim() {
            for j in 0..m2.dim() {
                let c = s1.get(i, t[0]) * s2.get(j, t[1]);
                if !c.is_zero() {
                    out.push((vec![i, j], &c * &sign));
                }
            }
        }
        out
    });
    let tau = matrix_of(&tp, |t| {
        (0..m1.dim()).filter(|&i| !s1.get(i, t[0]).is_zero()).map(|i| (vec![i, t[1]], s1.get(i, t[0]).clone())).collect()
    });
    let module = tp.module();
    let plus = eigen_basis(module, &sigma, &Cyclotomic::one());
    let minus = eigen_basis(module, &sigma, &-Cyclotomic::one());
    if plus.len() + minus.len() != module.dim() || plus.len() != minus.len() {
        return Err(ModError::Internal("σ eigenspaces do not split the tensor product evenly".into()));
    }
    // σ₁⊗1 supercommutes with the action and carries the +1 space onto the −1 space.
    let alg = module.algebra();
    for x in (0..alg.len()).filter(|&x| !alg.is_cartan(x)) {
        let a = action_matrix(module, x);
        let lhs = tau.mul(&a);
        let rhs = a.mul(&tau).scale(&Cyclotomic::integer(alg.gen(x).parity.koszul(Parity::Odd)));
        if lhs != rhs {
            return Err(ModError::Internal("σ₁⊗1 does not supercommute with the action".into()));
        }
    }
    let mut image = Echelon::new(module.dim());
    for v in &plus {
        let w = tau.mul_vec(v);
        if sigma.mul_vec(&w) != w.iter().map(|x| -x).collect::<Vec<_>>() || !image.insert(&w) {
            return Err(ModError::Internal("σ₁⊗1 does not map the halves isomorphically".into()));
        }
    }
    let mut half = module.submodule(&plus)?;
    let other = module.submodule(&minus)?;
    if half.character() != other.character() {
        return Err(ModError::Internal("halves have different characters".into()));
    }
    half.set_origin(serde_json::json!({"half_of": module.origin()}));
    Ok((half, SplitTag::Half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SuperAlgebra;
    use crate::modules::{finite_simple_module, odd_rank_one_module};

    fn w(v: &[i64]) -> Vec<Cyclotomic> {
        v.iter().map(|&x| Cyclotomic::integer(x)).collect()
    }

    #[test]
    fn schur_patterns() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        let f3 = finite_simple_module(&a, &w(&[3])).unwrap();
        assert_eq!(endomorphisms(&f3).unwrap().schur_pattern(), (1, 0));
        let double = f3.direct_sum(&f3).unwrap();
        assert_eq!(endomorphisms(&double).unwrap().dim_even, 4);
        let q = SuperAlgebra::by_id("q").unwrap();
        let qm = odd_rank_one_module(&q, &Cyclotomic::one()).unwrap();
        let e = endomorphisms(&qm).unwrap();
        assert_eq!(e.schur_pattern(), (1, 1));
        let sq = e.sigma_square().unwrap();
        assert!(sq == Cyclotomic::one() || sq == -Cyclotomic::one());
    }

    #[test]
    fn q_tensor_q_halves() {
        let q = SuperAlgebra::by_id("q").unwrap();
        let qm = odd_rank_one_module(&q, &Cyclotomic::one()).unwrap();
        let (half, tag) = irreducible_tensor(&qm, &qm).unwrap();
        assert_eq!(tag, SplitTag::Half);
        assert_eq!(half.dim(), 2);
        half.check_brackets().unwrap();
    }

    #[test]
    fn whole_when_one_factor_is_plain() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        let f1 = finite_simple_module(&a, &w(&[1])).unwrap();
        let f2 = finite_simple_module(&a, &w(&[2])).unwrap();
        let (m, tag) = irreducible_tensor(&f1, &f2).unwrap();
        assert_eq!((m.dim(), tag), (6, SplitTag::Whole));
    }

    #[test]
    fn highest_vectors() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        let f1 = finite_simple_module(&a, &w(&[1])).unwrap();
        let alpha = a.gen(a.index_of("e").unwrap()).root.clone().unwrap();
        let t = crate::modules::tensor(&f1, &f1).unwrap();
        assert_eq!(invariants_subspace(&t, &[alpha]).unwrap().len(), 2);
    }
}
