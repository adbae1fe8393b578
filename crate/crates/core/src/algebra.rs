//! Small Lie superalgebras given by supermatrix realizations: sl(2), osp(1|2),
//! sl(2|1), the rank-one odd algebra q = span{h, s | [s,s] = 2h}, and direct
//! sums of these. Structure constants are solved exactly from the matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{Cyclotomic, Mat, Vector};
use crate::roots::{build_root_system, Family, Parity, RootSystem, RootVector, SuperType};

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    /// ad-weight: eigenvalues of the Cartan generators.
    pub weight: Vec<i64>,
    /// Root in the root-system coordinates, for root vectors.
    pub root: Option<RootVector>,
}

/// Sparse combination of generators.
pub type Combo = Vec<(usize, Cyclotomic)>;

#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    name: String,
    gens: Vec<Generator>,
    rank: usize,
    bracket: Vec<Vec<Combo>>,
    root_system: Option<RootSystem>,
    /// `frame[c]` = values of the c-th root coordinate on the Cartan generators.
    frame: Option<Vec<Vec<i64>>>,
    borel: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("UnknownAlgebra: {0}")]
    Unknown(String),
}

impl fmt::Display for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m.set(i, j, Cyclotomic::one());
    m
}

fn combo_matrix(n: usize, terms: &[(i64, usize, usize)]) -> Mat {
    let mut m = Mat::zeros(n, n);
    for &(c, i, j) in terms {
        let v = m.get(i, j) + &Cyclotomic::integer(c);
        m.set(i, j, v);
    }
    m
}

struct Spec {
    name: &'static str,
    size: usize,
    /// (name, matrix, root) with Cartan generators first.
    gens: Vec<(String, Mat, Option<Vec<i64>>)>,
    index_parity: Vec<Parity>,
    rank: usize,
    family: Option<Family>,
    frame: Option<Vec<Vec<i64>>>,
    borel: Option<Vec<i64>>,
}

fn matrix_parity(m: &Mat, idx: &[Parity]) -> Parity {
    let mut p = None;
    for (i, j, x) in m.entries() {
        if !x.is_zero() {
            let q = idx[i] + idx[j];
            assert!(p.is_none() || p == Some(q), "inhomogeneous supermatrix");
            p = Some(q);
        }
    }
    p.unwrap_or(Parity::Even)
}

fn supercommutator(a: &Mat, pa: Parity, b: &Mat, pb: Parity) -> Mat {
    let ab = a.mul(b);
    let ba = b.mul(a);
    if pa.is_odd() && pb.is_odd() {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

fn flatten(m: &Mat) -> Vector {
    m.entries().map(|(_, _, x)| x.clone()).collect()
}

fn build(spec: Spec) -> SuperAlgebra {
    let n = spec.size;
    let parities: Vec<Parity> = spec.gens.iter().map(|(_, m, _)| matrix_parity(m, &spec.index_parity)).collect();
    let cols: Vec<Vector> = spec.gens.iter().map(|(_, m, _)| flatten(m)).collect();
    let basis = Mat::from_cols(n * n, &cols);
    assert_eq!(basis.rank(), cols.len(), "generators must be independent");
    let express = |m: &Mat| -> Combo {
        let x = basis.solve(&flatten(m)).expect("realization closed under the bracket");
        x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    };
    let k = spec.gens.len();
    let mut bracket = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let c = supercommutator(&spec.gens[i].1, parities[i], &spec.gens[j].1, parities[j]);
            bracket[i][j] = express(&c);
        }
    }
    let mut gens = Vec::with_capacity(k);
    for (g, (name, _, root)) in spec.gens.iter().enumerate() {
        let weight = (0..spec.rank)
            .map(|h| {
                let combo = &bracket[h][g];
                match combo.as_slice() {
                    [] => 0,
                    [(idx, c)] if *idx == g => c.to_i64().expect("integral ad-weight"),
                    _ => panic!("generator {name} is not a weight vector"),
                }
            })
            .collect();
        gens.push(Generator { name: name.clone(), parity: parities[g], weight, root: root.clone().map(RootVector) });
    }
    let root_system = spec.family.map(|f| build_root_system(&f).expect("catalog family"));
    SuperAlgebra {
        name: spec.name.to_string(),
        gens,
        rank: spec.rank,
        bracket,
        root_system,
        frame: spec.frame,
        borel: spec.borel,
    }
}

fn sl2() -> SuperAlgebra {
    let n = 2;
    build(Spec {
        name: "sl2",
        size: n,
        gens: vec![
            ("h".into(), combo_matrix(n, &[(1, 0, 0), (-1, 1, 1)]), None),
            ("e".into(), unit(n, 0, 1), Some(vec![1, -1])),
            ("f".into(), unit(n, 1, 0), Some(vec![-1, 1])),
        ],
        index_parity: vec![Parity::Even, Parity::Even],
        rank: 1,
        family: Some(Family::PureA { n: 1 }),
        frame: Some(vec![vec![1], vec![-1]]),
        borel: Some(vec![1, 0]),
    })
}

fn osp12() -> SuperAlgebra {
    let n = 3;
    build(Spec {
        name: "osp12",
        size: n,
        gens: vec![
            ("h".into(), combo_matrix(n, &[(1, 1, 1), (-1, 2, 2)]), None),
            ("e".into(), unit(n, 1, 2), Some(vec![2])),
            ("f".into(), unit(n, 2, 1), Some(vec![-2])),
            ("x".into(), combo_matrix(n, &[(1, 1, 0), (1, 0, 2)]), Some(vec![1])),
            ("y".into(), combo_matrix(n, &[(1, 0, 1), (-1, 2, 0)]), Some(vec![-1])),
        ],
        index_parity: vec![Parity::Even, Parity::Odd, Parity::Odd],
        rank: 1,
        family: Some(Family::B { m: 0, n: 1 }),
        frame: Some(vec![vec![1]]),
        borel: Some(vec![1]),
    })
}

fn sl21() -> SuperAlgebra {
    let n = 3;
    let mut gens = vec![
        ("h1".to_string(), combo_matrix(n, &[(1, 0, 0), (-1, 1, 1)]), None),
        ("h2".to_string(), combo_matrix(n, &[(1, 1, 1), (1, 2, 2)]), None),
    ];
    for (i, j) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
        let mut root = vec![0; 3];
        root[i] += 1;
        root[j] -= 1;
        gens.push((format!("E{i}{j}"), unit(n, i, j), Some(root)));
    }
    build(Spec {
        name: "sl21",
        size: n,
        gens,
        index_parity: vec![Parity::Even, Parity::Even, Parity::Odd],
        rank: 2,
        family: Some(Family::A { m: 1, n: 0 }),
        frame: Some(vec![vec![1, 0], vec![-1, 1], vec![0, 1]]),
        borel: Some(vec![2, 1, 0]),
    })
}

fn q() -> SuperAlgebra {
    let n = 2;
    build(Spec {
        name: "q",
        size: n,
        gens: vec![
            ("h".into(), combo_matrix(n, &[(1, 0, 0), (1, 1, 1)]), None),
            ("s".into(), combo_matrix(n, &[(1, 0, 1), (1, 1, 0)]), None),
        ],
        index_parity: vec![Parity::Even, Parity::Odd],
        rank: 1,
        family: None,
        frame: None,
        borel: None,
    })
}

impl SuperAlgebra {
    /// Catalog lookup: `sl2`, `osp12`, `sl21`, `q`, or `+`-separated direct sums.
    pub fn by_id(id: &str) -> Result<Arc<SuperAlgebra>, AlgebraError> {
        let parts: Vec<&str> = id.split('+').map(str::trim).collect();
        let mut algs = Vec::new();
        for p in &parts {
            algs.push(match *p {
                "sl2" => sl2(),
                "osp12" => osp12(),
                "sl21" => sl21(),
                "q" => q(),
                other => return Err(AlgebraError::Unknown(other.to_string())),
            });
        }
        let mut it = algs.into_iter();
        let first = it.next().expect("nonempty id");
        Ok(Arc::new(it.fold(first, |acc, b| acc.direct_sum(&b))))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        i < self.rank
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &Combo {
        &self.bracket[i][j]
    }

    pub fn root_system(&self) -> Option<&RootSystem> {
        self.root_system.as_ref()
    }

    pub fn borel(&self) -> Option<&[i64]> {
        self.borel.as_deref()
    }

    pub fn is_type_one(&self) -> bool {
        self.root_system.as_ref().and_then(RootSystem::superalgebra_type) == Some(SuperType::I)
    }

    /// Generator carrying the given root.
    pub fn root_generator(&self, alpha: &RootVector) -> Option<usize> {
        self.gens.iter().position(|g| g.root.as_ref() == Some(alpha))
    }

    /// Weight coordinates (values on the Cartan generators) of a root-lattice vector.
    pub fn root_to_weight(&self, v: &RootVector) -> Option<Vec<i64>> {
        let frame = self.frame.as_ref()?;
        if frame.len() != v.dim() {
            return None;
        }
        Some((0..self.rank).map(|h| v.0.iter().zip(frame).map(|(c, row)| c * row[h]).sum()).collect())
    }

    /// Cartan values of a weight given in root coordinates.
    pub fn coords_to_weight(&self, c: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        let frame = self.frame.as_ref()?;
        if frame.len() != c.len() {
            return None;
        }
        Some(
            (0..self.rank)
                .map(|h| c.iter().zip(frame).fold(Cyclotomic::zero(), |acc, (x, row)| &acc + &(x * &Cyclotomic::integer(row[h]))))
                .collect(),
        )
    }

    /// Borel degree of a generator: root paired with the Borel functional.
    pub fn borel_degree(&self, i: usize) -> Option<i64> {
        let b = self.borel.as_ref()?;
        Some(self.gens[i].root.as_ref().map_or(0, |r| r.pair(b)))
    }

    /// Distinguished ℤ-grading degree of a generator (0 for Cartan ones).
    pub fn grading_degree(&self, i: usize) -> Option<i64> {
        let rs = self.root_system.as_ref()?;
        Some(self.gens[i].root.as_ref().map_or(0, |r| r.pair(rs.grading_functional())))
    }

    /// Positions of the generators of `self` and `other` inside `self.direct_sum(other)`:
    /// Cartan of self, Cartan of other, the rest of self, the rest of other.
    pub fn direct_sum_positions(&self, other: &SuperAlgebra) -> (Vec<usize>, Vec<usize>) {
        let (ka, ra, rb) = (self.len(), self.rank, other.rank);
        let a = (0..ka).map(|i| if i < ra { i } else { rb + i }).collect();
        let b = (0..other.len()).map(|j| if j < rb { ra + j } else { ka + j }).collect();
        (a, b)
    }

    pub fn direct_sum(&self, other: &SuperAlgebra) -> SuperAlgebra {
        let (ka, kb) = (self.len(), other.len());
        let (ra, rb) = (self.rank, other.rank);
        let (map_a, map_b) = self.direct_sum_positions(other);
        let pos_a = |i: usize| map_a[i];
        let pos_b = |j: usize| map_b[j];
        let da = self.frame.as_ref().map_or(0, Vec::len);
        let db = other.frame.as_ref().map_or(0, Vec::len);
        let mut gens: Vec<Option<Generator>> = vec![None; ka + kb];
        for (i, g) in self.gens.iter().enumerate() {
            let mut weight = g.weight.clone();
            weight.extend(vec![0; rb]);
            let root = g.root.as_ref().map(|r| RootVector([r.0.clone(), vec![0; db]].concat()));
            gens[pos_a(i)] = Some(Generator { name: g.name.clone(), parity: g.parity, weight, root });
        }
        for (j, g) in other.gens.iter().enumerate() {
            let mut weight = vec![0; ra];
            weight.extend(&g.weight);
            let root = g.root.as_ref().map(|r| RootVector([vec![0; da], r.0.clone()].concat()));
            gens[pos_b(j)] = Some(Generator { name: format!("{}'", g.name), parity: g.parity, weight, root });
        }
        let mut bracket = vec![vec![Vec::new(); ka + kb]; ka + kb];
        for i in 0..ka {
            for j in 0..ka {
                bracket[pos_a(i)][pos_a(j)] = self.bracket[i][j].iter().map(|(k, c)| (pos_a(*k), c.clone())).collect();
            }
        }
        for i in 0..kb {
            for j in 0..kb {
                bracket[pos_b(i)][pos_b(j)] = other.bracket[i][j].iter().map(|(k, c)| (pos_b(*k), c.clone())).collect();
            }
        }
        let root_system = match (&self.root_system, &other.root_system) {
            (Some(a), Some(b)) => Some(RootSystem::direct_sum(&[a.clone(), b.clone()])),
            _ => None,
        };
        let frame = match (&self.frame, &other.frame) {
            (Some(fa), Some(fb)) => {
                let mut f: Vec<Vec<i64>> = fa.iter().map(|row| [row.clone(), vec![0; rb]].concat()).collect();
                f.extend(fb.iter().map(|row| [vec![0; ra], row.clone()].concat()));
                Some(f)
            }
            _ => None,
        };
        let borel = match (&self.borel, &other.borel) {
            (Some(a), Some(b)) => Some([a.clone(), b.clone()].concat()),
            _ => None,
        };
        SuperAlgebra {
            name: format!("{}+{}", self.name, other.name),
            gens: gens.into_iter().map(Option::unwrap).collect(),
            rank: ra + rb,
            bracket,
            root_system,
            frame,
            borel,
        }
    }

    /// Subalgebra spanned by the Cartan generators and the listed generators,
    /// with the index map into `self`.
    pub fn subalgebra(&self, name: &str, extra: &[usize]) -> (SuperAlgebra, Vec<usize>) {
        let mut keep: Vec<usize> = (0..self.rank).collect();
        keep.extend(extra.iter().copied().filter(|&i| i >= self.rank));
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let mut bracket = vec![vec![Vec::new(); keep.len()]; keep.len()];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                bracket[a][b] = self.bracket[i][j]
                    .iter()
                    .map(|(k, c)| (*pos.get(k).expect("subalgebra closed under the bracket"), c.clone()))
                    .collect();
            }
        }
        let sub = SuperAlgebra {
            name: name.to_string(),
            gens: keep.iter().map(|&i| self.gens[i].clone()).collect(),
            rank: self.rank,
            bracket,
            root_system: None,
            frame: self.frame.clone(),
            borel: self.borel.clone(),
        };
        (sub, keep)
    }

    /// The even part g_0̄ as a subalgebra.
    pub fn even_part(&self) -> (SuperAlgebra, Vec<usize>) {
        let even: Vec<usize> = (0..self.len()).filter(|&i| !self.gens[i].parity.is_odd()).collect();
        self.subalgebra(&format!("{}_0", self.name), &even)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn combo(alg: &SuperAlgebra, i: &str, j: &str) -> Combo {
        alg.bracket(alg.index_of(i).unwrap(), alg.index_of(j).unwrap()).clone()
    }

    #[test]
    fn sl2_relations() {
        let a = SuperAlgebra::by_id("sl2").unwrap();
        assert_eq!(combo(&a, "e", "f"), vec![(0, Cyclotomic::one())]);
        assert_eq!(a.gen(1).weight, vec![2]);
        assert_eq!(a.root_to_weight(&RootVector(vec![1, -1])), Some(vec![2]));
    }

    #[test]
    fn osp12_relations() {
        let a = SuperAlgebra::by_id("osp12").unwrap();
        let e = a.index_of("e").unwrap();
        let f = a.index_of("f").unwrap();
        assert_eq!(combo(&a, "x", "x"), vec![(e, Cyclotomic::integer(2))]);
        assert_eq!(combo(&a, "y", "y"), vec![(f, Cyclotomic::integer(-2))]);
        assert_eq!(combo(&a, "x", "y"), vec![(0, Cyclotomic::one())]);
        assert_eq!(a.gen(a.index_of("x").unwrap()).weight, vec![1]);
        assert_eq!(a.gen(a.index_of("x").unwrap()).parity, Parity::Odd);
    }

    #[test]
    fn sl21_weights_match_roots() {
        let a = SuperAlgebra::by_id("sl21").unwrap();
        for g in a.gens() {
            if let Some(r) = &g.root {
                assert_eq!(a.root_to_weight(r).unwrap(), g.weight, "{}", g.name);
                assert_eq!(a.root_system().unwrap().parity(r), Some(g.parity));
            }
        }
        assert!(a.is_type_one());
        assert!(!SuperAlgebra::by_id("osp12").unwrap().is_type_one());
    }

    #[test]
    fn q_bracket() {
        let a = SuperAlgebra::by_id("q").unwrap();
        assert_eq!(combo(&a, "s", "s"), vec![(0, Cyclotomic::integer(2))]);
        assert!(combo(&a, "h", "s").is_empty());
    }

    #[test]
    fn direct_sum_layout() {
        let a = SuperAlgebra::by_id("sl2+sl2").unwrap();
        assert_eq!(a.rank(), 2);
        assert!(a.is_cartan(1));
        let e2 = a.index_of("e'").unwrap();
        let f2 = a.index_of("f'").unwrap();
        assert_eq!(a.bracket(e2, f2), &vec![(1, Cyclotomic::one())]);
        assert!(a.bracket(a.index_of("e").unwrap(), f2).is_empty());
        assert_eq!(a.gen(e2).weight, vec![0, 2]);
    }

    #[test]
    fn even_part_of_sl21() {
        let a = SuperAlgebra::by_id("sl21").unwrap();
        let (g0, map) = a.even_part();
        assert_eq!(g0.len(), 4);
        assert_eq!(map, vec![0, 1, 2, 3]);
    }
}
