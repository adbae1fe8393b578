//! Root systems of the basic classical Lie superalgebras, their invariant
//! forms, even-part types and distinguished ℤ-gradings.
//!
//! Roots are integer vectors in a coordinate basis recorded per family in
//! [`RootSystem::coordinates`]. For most families this is the usual ε/δ
//! basis. Two families need a different lattice basis to keep coordinates
//! integral: F(4) uses ε_i/2 and δ/2, and G(3) uses ε₁, ε₂ (with
//! ε₃ = −ε₁ − ε₂) and δ.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{lattice, Cyclotomic, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(self.bit() + 1)
    }

    /// Koszul sign (−1)^{|a||b|}.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(n: usize) -> RootVector {
        RootVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize, k: i64) -> RootVector {
        let mut v = vec![0; n];
        v[i] = k;
        RootVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> RootVector {
        RootVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Pairing with an integer functional on the coordinate basis.
    pub fn pair(&self, l: &[i64]) -> i64 {
        self.0.iter().zip(l).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, o: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    fn sub(self, o: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    /// sl(m+1|n+1), m ≠ n.
    A { m: u32, n: u32 },
    /// osp(2m+1|2n).
    B { m: u32, n: u32 },
    /// C(n+1) = osp(2|2n).
    C { n: u32 },
    /// osp(2m|2n), m ≥ 2.
    D { m: u32, n: u32 },
    D21 { a: Rational },
    F4,
    G3,
    /// The Lie algebra sl(n+1).
    PureA { n: u32 },
    /// The Lie algebra sp(2n).
    PureC { n: u32 },
    /// Orthogonal direct sum, coordinates concatenated.
    Sum(Vec<Family>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A { m, n } => write!(f, "A({m},{n})"),
            Family::B { m, n } => write!(f, "B({m},{n})"),
            Family::C { n } => write!(f, "C({})", n + 1),
            Family::D { m, n } => write!(f, "D({m},{n})"),
            Family::D21 { a } => write!(f, "D(2,1;{a})"),
            Family::F4 => f.write_str("F(4)"),
            Family::G3 => f.write_str("G(3)"),
            Family::PureA { n } => write!(f, "A{n}"),
            Family::PureC { n } => write!(f, "C{n}"),
            Family::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                f.write_str(&s.join("+"))
            }
        }
    }
}

impl Family {
    fn letter_params(&self) -> (&'static str, Value) {
        match self {
            Family::A { m, n } => ("A", json!({"m": m, "n": n})),
            Family::B { m, n } => ("B", json!({"m": m, "n": n})),
            Family::C { n } => ("C", json!({"n": n})),
            Family::D { m, n } => ("D", json!({"m": m, "n": n})),
            Family::D21 { a } => ("D21", json!({"a": a.to_string()})),
            Family::F4 => ("F4", json!({})),
            Family::G3 => ("G3", json!({})),
            Family::PureA { n } => ("An", json!({"n": n})),
            Family::PureC { n } => ("Cn", json!({"n": n})),
            Family::Sum(p) => ("Sum", json!({"parts": p.iter().map(ToString::to_string).collect::<Vec<_>>()})),
        }
    }

    /// Superalgebra type from the classification table, `None` for Lie algebras.
    pub fn superalgebra_type(&self) -> Option<SuperType> {
        match self {
            Family::A { .. } | Family::C { .. } => Some(SuperType::I),
            Family::B { .. } | Family::D { .. } | Family::D21 { .. } | Family::F4 | Family::G3 => {
                Some(SuperType::II)
            }
            Family::PureA { .. } | Family::PureC { .. } | Family::Sum(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum SuperType {
    I,
    II,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("UnsupportedFamily: {0}")]
    UnsupportedFamily(String),
    #[error("BadParameter: {0}")]
    BadParameter(String),
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

impl RootError {
    pub fn code(&self) -> &'static str {
        match self {
            RootError::UnsupportedFamily(_) => "UnsupportedFamily",
            RootError::BadParameter(_) => "BadParameter",
            RootError::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}

/// A simple component of a reductive root system: Cartan type letter and rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Component {
    pub letter: char,
    pub rank: u32,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// Isomorphism type of a reductive Lie algebra: simple components plus
/// the dimension of the centre.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EvenPartType {
    pub components: Vec<Component>,
    pub center_dim: u32,
}

impl EvenPartType {
    /// Build from nominal components, applying the low-rank coincidences
    /// (A0, B0 vanish; B1 = C1 = A1; C2 = B2; D2 = A1+A1; D3 = A3).
    pub fn normalized(nominal: &[(char, u32)], center_dim: u32) -> EvenPartType {
        let mut components = Vec::new();
        for &(letter, rank) in nominal {
            match (letter, rank) {
                (_, 0) => {}
                ('B', 1) | ('C', 1) => components.push(Component { letter: 'A', rank: 1 }),
                ('C', 2) => components.push(Component { letter: 'B', rank: 2 }),
                ('D', 2) => {
                    components.push(Component { letter: 'A', rank: 1 });
                    components.push(Component { letter: 'A', rank: 1 });
                }
                ('D', 3) => components.push(Component { letter: 'A', rank: 3 }),
                _ => components.push(Component { letter, rank }),
            }
        }
        components.sort();
        EvenPartType { components, center_dim }
    }
}

impl fmt::Display for EvenPartType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        for _ in 0..self.center_dim {
            parts.push("k".into());
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join("+"))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    coordinates: Vec<String>,
    even: Vec<RootVector>,
    odd: Vec<RootVector>,
    parity: HashMap<RootVector, Parity>,
    form: Vec<Vec<Cyclotomic>>,
    cartan_dim: usize,
    grading: Vec<i64>,
}

/// Per-root coroot data: h_α as a vector in the coordinate space, identified
/// with the Cartan subalgebra through the form.
#[derive(Clone, Debug)]
pub struct ChevalleyData {
    pub root: RootVector,
    pub h: Vec<Cyclotomic>,
    pub sl2_triple: bool,
}

fn labels(prefix: &str, count: u32) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

fn diag_form(entries: &[Cyclotomic]) -> Vec<Vec<Cyclotomic>> {
    let n = entries.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { Cyclotomic::zero() }).collect())
        .collect()
}

struct Builder {
    dim: usize,
    even: BTreeSet<RootVector>,
    odd: BTreeSet<RootVector>,
}

impl Builder {
    fn new(dim: usize) -> Builder {
        Builder { dim, even: BTreeSet::new(), odd: BTreeSet::new() }
    }

    fn vec(&self, terms: &[(usize, i64)]) -> RootVector {
        let mut v = vec![0; self.dim];
        for &(i, k) in terms {
            v[i] += k;
        }
        RootVector(v)
    }

    /// Adds ±v.
    fn pm(&mut self, terms: &[(usize, i64)], parity: Parity) {
        let v = self.vec(terms);
        let set = match parity {
            Parity::Even => &mut self.even,
            Parity::Odd => &mut self.odd,
        };
        set.insert(-&v);
        set.insert(v);
    }

    /// ±x_i ± x_j over i < j (distinct indices from `a` and `b` ranges).
    fn pm_pairs(&mut self, a: &[usize], b: &[usize], same: bool, parity: Parity) {
        for (ii, &i) in a.iter().enumerate() {
            for &j in if same { &b[ii + 1..] } else { b } {
                self.pm(&[(i, 1), (j, 1)], parity);
                self.pm(&[(i, 1), (j, -1)], parity);
            }
        }
    }
}

fn c(k: i64) -> Cyclotomic {
    Cyclotomic::integer(k)
}

pub fn build_root_system(family: &Family) -> Result<RootSystem, RootError> {
    let bad = |s: String| Err(RootError::BadParameter(s));
    match family {
        Family::A { m, n } if m == n => {
            Err(RootError::UnsupportedFamily(format!("A({m},{n}) = psl({}|{}) is not supported", m + 1, n + 1)))
        }
        Family::A { m, n } => {
            let (p, q) = (*m as usize + 1, *n as usize + 1);
            let mut b = Builder::new(p + q);
            let eps: Vec<usize> = (0..p).collect();
            let del: Vec<usize> = (p..p + q).collect();
            for (x, y) in pairs(&eps).chain(pairs(&del)) {
                b.pm(&[(x, 1), (y, -1)], Parity::Even);
            }
            for &i in &eps {
                for &j in &del {
                    b.pm(&[(i, 1), (j, -1)], Parity::Odd);
                }
            }
            let mut coords = labels("ε", p as u32);
            coords.extend(labels("δ", q as u32));
            let mut form = vec![c(1); p];
            form.extend(vec![c(-1); q]);
            let mut grading = vec![1; p];
            grading.extend(vec![0; q]);
            Ok(finish(family, coords, b, diag_form(&form), p + q - 1, grading))
        }
        Family::B { m, n } => {
            if *n < 1 {
                return bad(format!("B(m,n) needs n ≥ 1, got n = {n}"));
            }
            let (p, q) = (*m as usize, *n as usize);
            let mut b = Builder::new(p + q);
            let eps: Vec<usize> = (0..p).collect();
            let del: Vec<usize> = (p..p + q).collect();
            b.pm_pairs(&eps, &eps, true, Parity::Even);
            for &i in &eps {
                b.pm(&[(i, 1)], Parity::Even);
            }
            b.pm_pairs(&del, &del, true, Parity::Even);
            for &j in &del {
                b.pm(&[(j, 2)], Parity::Even);
                b.pm(&[(j, 1)], Parity::Odd);
            }
            b.pm_pairs(&eps, &del, false, Parity::Odd);
            let mut coords = labels("ε", p as u32);
            coords.extend(labels("δ", q as u32));
            let mut form = vec![c(1); p];
            form.extend(vec![c(-1); q]);
            let mut grading = vec![0; p];
            grading.extend(vec![1; q]);
            Ok(finish(family, coords, b, diag_form(&form), p + q, grading))
        }
        Family::C { n } => {
            if *n < 1 {
                return bad(format!("C(n+1) needs n ≥ 1, got n = {n}"));
            }
            let q = *n as usize;
            let mut b = Builder::new(1 + q);
            let del: Vec<usize> = (1..=q).collect();
            b.pm_pairs(&del, &del, true, Parity::Even);
            for &j in &del {
                b.pm(&[(j, 2)], Parity::Even);
            }
            b.pm_pairs(&[0], &del, false, Parity::Odd);
            let mut coords = vec!["ε1".to_string()];
            coords.extend(labels("δ", q as u32));
            let mut form = vec![c(1)];
            form.extend(vec![c(-1); q]);
            let mut grading = vec![1];
            grading.extend(vec![0; q]);
            Ok(finish(family, coords, b, diag_form(&form), 1 + q, grading))
        }
        Family::D { m, n } => {
            if *m < 2 || *n < 1 {
                return bad(format!("D(m,n) needs m ≥ 2 and n ≥ 1, got ({m},{n})"));
            }
            let (p, q) = (*m as usize, *n as usize);
            let mut b = Builder::new(p + q);
            let eps: Vec<usize> = (0..p).collect();
            let del: Vec<usize> = (p..p + q).collect();
            b.pm_pairs(&eps, &eps, true, Parity::Even);
            b.pm_pairs(&del, &del, true, Parity::Even);
            for &j in &del {
                b.pm(&[(j, 2)], Parity::Even);
            }
            b.pm_pairs(&eps, &del, false, Parity::Odd);
            let mut coords = labels("ε", p as u32);
            coords.extend(labels("δ", q as u32));
            let mut form = vec![c(1); p];
            form.extend(vec![c(-1); q]);
            let mut grading = vec![0; p];
            grading.extend(vec![1; q]);
            Ok(finish(family, coords, b, diag_form(&form), p + q, grading))
        }
        Family::D21 { a } => {
            if a.is_zero() || *a == Rational::integer(-1) {
                return bad(format!("D(2,1;a) needs a ∉ {{0, -1}}, got a = {a}"));
            }
            let mut b = Builder::new(3);
            for i in 0..3 {
                b.pm(&[(i, 2)], Parity::Even);
            }
            for s2 in [1, -1] {
                for s3 in [1, -1] {
                    b.pm(&[(0, 1), (1, s2), (2, s3)], Parity::Odd);
                }
            }
            let a = Cyclotomic::from_rational(a.clone());
            let half = Cyclotomic::ratio(1, 2);
            let form = vec![
                -&(&(&a + &Cyclotomic::one()) * &half),
                half.clone(),
                &a * &half,
            ];
            Ok(finish(family, labels("ε", 3), b, diag_form(&form), 3, vec![1, 0, 0]))
        }
        Family::F4 => {
            // Coordinates in the basis ε_i/2, δ/2.
            let mut b = Builder::new(4);
            let eps = [0usize, 1, 2];
            for (i, j) in pairs(&eps) {
                b.pm(&[(i, 2), (j, 2)], Parity::Even);
                b.pm(&[(i, 2), (j, -2)], Parity::Even);
            }
            for &i in &eps {
                b.pm(&[(i, 2)], Parity::Even);
            }
            b.pm(&[(3, 2)], Parity::Even);
            for s1 in [1, -1] {
                for s2 in [1, -1] {
                    for s3 in [1, -1] {
                        b.pm(&[(0, 1), (1, s1), (2, s2), (3, s3)], Parity::Odd);
                    }
                }
            }
            let q = Cyclotomic::ratio(1, 4);
            let form = vec![q.clone(), q.clone(), q, Cyclotomic::ratio(-3, 4)];
            let coords = vec!["ε1/2".into(), "ε2/2".into(), "ε3/2".into(), "δ1/2".into()];
            Ok(finish(family, coords, b, diag_form(&form), 4, vec![0, 0, 0, 1]))
        }
        Family::G3 => {
            // Coordinates (ε1, ε2, δ) with ε3 = −ε1 − ε2.
            let mut b = Builder::new(3);
            let e = [vec![(0usize, 1i64)], vec![(1, 1)], vec![(0, -1), (1, -1)]];
            for ei in &e {
                b.pm(ei, Parity::Even);
                let mut plus = ei.clone();
                plus.push((2, 1));
                b.pm(&plus, Parity::Odd);
                let mut minus = ei.clone();
                minus.push((2, -1));
                b.pm(&minus, Parity::Odd);
            }
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let mut t = e[i].clone();
                t.extend(e[j].iter().map(|&(k, v)| (k, -v)));
                b.pm(&t, Parity::Even);
            }
            b.pm(&[(2, 2)], Parity::Even);
            b.pm(&[(2, 1)], Parity::Odd);
            // (ε_i, ε_j) = 1 − 3δ_ij, (δ, δ) = 2.
            let form = vec![
                vec![c(-2), c(1), c(0)],
                vec![c(1), c(-2), c(0)],
                vec![c(0), c(0), c(2)],
            ];
            let coords = vec!["ε1".into(), "ε2".into(), "δ1".into()];
            Ok(finish(family, coords, b, form, 3, vec![0, 0, 1]))
        }
        Family::PureA { n } => {
            if *n < 1 {
                return bad("A_n needs n ≥ 1".into());
            }
            let p = *n as usize + 1;
            let mut b = Builder::new(p);
            let eps: Vec<usize> = (0..p).collect();
            for (x, y) in pairs(&eps) {
                b.pm(&[(x, 1), (y, -1)], Parity::Even);
            }
            Ok(finish(family, labels("ε", p as u32), b, diag_form(&vec![c(1); p]), p - 1, vec![0; p]))
        }
        Family::PureC { n } => {
            if *n < 1 {
                return bad("C_n needs n ≥ 1".into());
            }
            let p = *n as usize;
            let mut b = Builder::new(p);
            let eps: Vec<usize> = (0..p).collect();
            b.pm_pairs(&eps, &eps, true, Parity::Even);
            for &i in &eps {
                b.pm(&[(i, 2)], Parity::Even);
            }
            Ok(finish(family, labels("ε", p as u32), b, diag_form(&vec![c(1); p]), p, vec![0; p]))
        }
        Family::Sum(parts) => {
            let systems = parts.iter().map(build_root_system).collect::<Result<Vec<_>, _>>()?;
            Ok(RootSystem::direct_sum(&systems))
        }
    }
}

fn pairs(v: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    v.iter().enumerate().flat_map(move |(i, &x)| v[i + 1..].iter().map(move |&y| (x, y)))
}

fn finish(
    family: &Family,
    coordinates: Vec<String>,
    b: Builder,
    form: Vec<Vec<Cyclotomic>>,
    cartan_dim: usize,
    grading: Vec<i64>,
) -> RootSystem {
    let even: Vec<RootVector> = b.even.into_iter().collect();
    let odd: Vec<RootVector> = b.odd.into_iter().collect();
    let mut parity = HashMap::new();
    for r in &even {
        parity.insert(r.clone(), Parity::Even);
    }
    for r in &odd {
        parity.insert(r.clone(), Parity::Odd);
    }
    RootSystem { family: family.clone(), coordinates, even, odd, parity, form, cartan_dim, grading }
}

impl RootSystem {
    pub fn direct_sum(parts: &[RootSystem]) -> RootSystem {
        let dim: usize = parts.iter().map(RootSystem::dim).sum();
        let mut b = Builder::new(dim);
        let mut form = vec![vec![Cyclotomic::zero(); dim]; dim];
        let mut coords = Vec::new();
        let mut grading = Vec::new();
        let mut offset = 0;
        for (k, p) in parts.iter().enumerate() {
            let shift = |r: &RootVector| {
                let mut v = vec![0; dim];
                v[offset..offset + p.dim()].copy_from_slice(&r.0);
                RootVector(v)
            };
            b.even.extend(p.even.iter().map(shift));
            b.odd.extend(p.odd.iter().map(shift));
            for i in 0..p.dim() {
                for j in 0..p.dim() {
                    form[offset + i][offset + j] = p.form[i][j].clone();
                }
            }
            coords.extend(p.coordinates.iter().map(|s| format!("{s}#{}", k + 1)));
            grading.extend(&p.grading);
            offset += p.dim();
        }
        let family = Family::Sum(parts.iter().map(|p| p.family.clone()).collect());
        let cartan = parts.iter().map(|p| p.cartan_dim).sum();
        finish(&family, coords, b, form, cartan, grading)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn label(&self) -> String {
        self.family.to_string()
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn cartan_dim(&self) -> usize {
        self.cartan_dim
    }

    pub fn roots_even(&self) -> &[RootVector] {
        &self.even
    }

    pub fn roots_odd(&self) -> &[RootVector] {
        &self.odd
    }

    /// All roots, even ones first, each block sorted.
    pub fn roots(&self) -> Vec<RootVector> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn form(&self) -> &[Vec<Cyclotomic>] {
        &self.form
    }

    pub fn parity(&self, v: &RootVector) -> Option<Parity> {
        self.parity.get(v).copied()
    }

    pub fn is_root(&self, v: &RootVector) -> Result<Option<Parity>, RootError> {
        self.check_dim(v)?;
        Ok(self.parity(v))
    }

    pub fn check_dim(&self, v: &RootVector) -> Result<(), RootError> {
        if v.dim() != self.dim() {
            return Err(RootError::DimensionMismatch { expected: self.dim(), got: v.dim() });
        }
        Ok(())
    }

    pub fn superalgebra_type(&self) -> Option<SuperType> {
        self.family.superalgebra_type()
    }

    pub fn form_value(&self, a: &RootVector, b: &RootVector) -> Result<Cyclotomic, RootError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.pair_form(&a.0.iter().map(|&x| Cyclotomic::integer(x)).collect::<Vec<_>>(), b))
    }

    fn pair_form(&self, a: &[Cyclotomic], b: &RootVector) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj != 0 && !self.form[i][j].is_zero() {
                    acc = &acc + &(&(ai * &self.form[i][j]) * &Cyclotomic::integer(bj));
                }
            }
        }
        acc
    }

    /// Coroot data for α: h_α = 2α/(α,α) when (α,α) ≠ 0, else h_α = α.
    pub fn chevalley(&self, alpha: &RootVector) -> Option<ChevalleyData> {
        let parity = self.parity(alpha)?;
        let n = self.form_value(alpha, alpha).ok()?;
        let base: Vec<Cyclotomic> = alpha.0.iter().map(|&x| Cyclotomic::integer(x)).collect();
        let h = if n.is_zero() {
            base
        } else {
            let s = &Cyclotomic::integer(2) / &n;
            base.iter().map(|x| x * &s).collect()
        };
        Some(ChevalleyData { root: alpha.clone(), h, sl2_triple: parity == Parity::Even })
    }

    /// β(h_α) for the coroot data of α.
    pub fn coroot_value(&self, beta: &RootVector, data: &ChevalleyData) -> Cyclotomic {
        self.pair_form(&data.h, beta)
    }

    /// Integer functional giving the distinguished ℤ-grading.
    pub fn grading_functional(&self) -> &[i64] {
        &self.grading
    }

    pub fn distinguished_grading(&self) -> BTreeMap<RootVector, i64> {
        self.roots().into_iter().map(|r| {
            let d = r.pair(&self.grading);
            (r, d)
        }).collect()
    }

    /// Odd roots of grading degree −1 (type I: g_{−1}).
    pub fn degree_roots(&self, degree: i64) -> Vec<RootVector> {
        self.roots().into_iter().filter(|r| r.pair(&self.grading) == degree).collect()
    }

    /// Isomorphism type of the even part computed from `roots_even` alone.
    pub fn even_part_type(&self) -> EvenPartType {
        let even: BTreeSet<&RootVector> = self.even.iter().collect();
        let mut comp_of: HashMap<&RootVector, usize> = HashMap::new();
        let mut comps: Vec<Vec<&RootVector>> = Vec::new();
        for r in &self.even {
            if comp_of.contains_key(r) {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![r];
            let mut members = Vec::new();
            comp_of.insert(r, id);
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in &self.even {
                    if comp_of.contains_key(y) {
                        continue;
                    }
                    let s = x + y;
                    let d = x - y;
                    if s.is_zero() || d.is_zero() || even.contains(&s) || even.contains(&d) {
                        comp_of.insert(y, id);
                        stack.push(y);
                    }
                }
            }
            comps.push(members);
        }
        let mut nominal = Vec::new();
        let mut total_rank = 0;
        for members in &comps {
            let rows: Vec<Vec<i64>> = members.iter().map(|r| r.0.clone()).collect();
            let rank = lattice::echelon_basis(&rows).len() as u32;
            total_rank += rank;
            let count = members.len() as u32;
            let lengths: Vec<Cyclotomic> = members
                .iter()
                .map(|r| {
                    let v = self.form_value(r, r).expect("dims");
                    if v.to_rational().is_some_and(Rational::is_negative) {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            let distinct: BTreeSet<&Cyclotomic> = lengths.iter().collect();
            let letter = if distinct.len() <= 1 {
                if count == rank * (rank + 1) {
                    'A'
                } else {
                    'D'
                }
            } else {
                let longest = distinct.iter().max_by(|a, b| cmp_len(a, b)).copied().unwrap();
                let long = lengths.iter().filter(|l| *l == longest).count() as u32;
                match (rank, count) {
                    (2, 12) => 'G',
                    (4, 48) => 'F',
                    (2, 8) => 'B',
                    _ if long == 2 * rank => 'C',
                    _ => 'B',
                }
            };
            nominal.push((letter, rank));
        }
        let center = (self.cartan_dim as u32).saturating_sub(total_rank);
        EvenPartType::normalized(&nominal, center)
    }

    /// The even part as listed in the classification table for this family.
    pub fn table_even_part(&self) -> EvenPartType {
        table_even_part(&self.family)
    }

    /// Whether `v` lies in Q = ℤΔ (or Q_0̄ = ℤΔ_0̄ when `even_only`).
    pub fn lattice_contains(&self, v: &RootVector, even_only: bool) -> bool {
        let gens: Vec<Vec<i64>> = if even_only {
            self.even.iter().map(|r| r.0.clone()).collect()
        } else {
            self.roots().into_iter().map(|r| r.0).collect()
        };
        lattice::lattice_contains(&gens, &v.0)
    }

    pub fn to_json(&self) -> Value {
        let (letter, params) = self.family.letter_params();
        let roots: Vec<Value> = self
            .roots()
            .iter()
            .map(|r| json!({"coords": r.0, "parity": self.parity(r).unwrap()}))
            .collect();
        let form: Vec<Vec<String>> =
            self.form.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
        json!({
            "family": letter,
            "params": params,
            "label": self.label(),
            "coordinates": self.coordinates,
            "roots": roots,
            "form": form,
            "even_part": self.even_part_type().to_string(),
            "type": match self.superalgebra_type() {
                Some(SuperType::I) => "I",
                Some(SuperType::II) => "II",
                None => "even",
            },
        })
    }
}

fn cmp_len(a: &Cyclotomic, b: &Cyclotomic) -> std::cmp::Ordering {
    match (a.to_rational(), b.to_rational()) {
        (Some(x), Some(y)) => x.cmp(y),
        _ => a.cmp(b),
    }
}

/// Table entry for the even part of each family.
pub fn table_even_part(family: &Family) -> EvenPartType {
    match family {
        Family::A { m, n } => EvenPartType::normalized(&[('A', *m), ('A', *n)], 1),
        Family::B { m, n } => EvenPartType::normalized(&[('B', *m), ('C', *n)], 0),
        Family::C { n } => EvenPartType::normalized(&[('C', *n)], 1),
        Family::D { m, n } => EvenPartType::normalized(&[('D', *m), ('C', *n)], 0),
        Family::D21 { .. } => EvenPartType::normalized(&[('A', 1), ('A', 1), ('A', 1)], 0),
        Family::F4 => EvenPartType::normalized(&[('A', 1), ('B', 3)], 0),
        Family::G3 => EvenPartType::normalized(&[('A', 1), ('G', 2)], 0),
        Family::PureA { n } => EvenPartType::normalized(&[('A', *n)], 0),
        Family::PureC { n } => EvenPartType::normalized(&[('C', *n)], 0),
        Family::Sum(parts) => {
            let mut components = Vec::new();
            let mut center = 0;
            for p in parts {
                let t = table_even_part(p);
                components.extend(t.components);
                center += t.center_dim;
            }
            components.sort();
            EvenPartType { components, center_dim: center }
        }
    }
}

/// Every family instance with parameters up to `bound` (plus a few D(2,1;a)).
pub fn small_families(bound: u32) -> Vec<Family> {
    let mut out = Vec::new();
    for m in 0..=bound {
        for n in 0..=bound {
            if m != n {
                out.push(Family::A { m, n });
            }
            if n >= 1 {
                out.push(Family::B { m, n });
                if m >= 2 {
                    out.push(Family::D { m, n });
                }
            }
        }
    }
    for n in 1..=bound {
        out.push(Family::C { n });
    }
    for a in [Rational::new(1, 2), Rational::integer(1), Rational::integer(-2), Rational::new(3, 7)] {
        out.push(Family::D21 { a });
    }
    out.push(Family::F4);
    out.push(Family::G3);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn sl21_roots() {
        let rs = build_root_system(&Family::A { m: 1, n: 0 }).unwrap();
        assert_eq!(rs.roots_even().len(), 2);
        assert_eq!(rs.roots_odd().len(), 4);
        assert_eq!(rs.is_root(&rv(&[1, 0, -1])).unwrap(), Some(Parity::Odd));
        assert_eq!(rs.is_root(&rv(&[0, 0, 0])).unwrap(), None);
        assert!(rs.is_root(&rv(&[1, 0])).is_err());
        assert_eq!(rs.form_value(&rv(&[1, -1, 0]), &rv(&[1, -1, 0])).unwrap(), Cyclotomic::integer(2));
        assert!(rs.form_value(&rv(&[1, 0, -1]), &rv(&[1, 0, -1])).unwrap().is_zero());
        assert_eq!(rs.even_part_type().to_string(), "A1+k");
    }

    #[test]
    fn osp12_roots_and_grading() {
        let rs = build_root_system(&Family::B { m: 0, n: 1 }).unwrap();
        assert_eq!(rs.roots_even(), &[rv(&[-2]), rv(&[2])]);
        assert_eq!(rs.roots_odd(), &[rv(&[-1]), rv(&[1])]);
        let g = rs.distinguished_grading();
        assert_eq!(g[&rv(&[1])], 1);
        assert_eq!(g[&rv(&[2])], 2);
    }

    #[test]
    fn d21_even_part() {
        let rs = build_root_system(&Family::D21 { a: Rational::new(1, 2) }).unwrap();
        assert_eq!(rs.roots_even().len(), 6);
        assert_eq!(rs.roots_odd().len(), 8);
        assert_eq!(rs.even_part_type().to_string(), "A1+A1+A1");
        for r in rs.roots_odd() {
            assert!(rs.form_value(r, r).unwrap().is_zero());
        }
    }

    #[test]
    fn unsupported_and_bad_params() {
        assert!(matches!(build_root_system(&Family::A { m: 1, n: 1 }), Err(RootError::UnsupportedFamily(_))));
        assert!(matches!(build_root_system(&Family::D { m: 1, n: 1 }), Err(RootError::BadParameter(_))));
        assert!(matches!(
            build_root_system(&Family::D21 { a: Rational::integer(-1) }),
            Err(RootError::BadParameter(_))
        ));
    }

    #[test]
    fn exceptional_types() {
        let f4 = build_root_system(&Family::F4).unwrap();
        assert_eq!(f4.even_part_type().to_string(), "A1+B3");
        assert_eq!(f4.roots_odd().len(), 16);
        let g3 = build_root_system(&Family::G3).unwrap();
        assert_eq!(g3.even_part_type().to_string(), "A1+G2");
        assert_eq!(g3.roots_odd().len(), 14);
        for r in g3.roots_odd() {
            let n = g3.form_value(r, r).unwrap();
            assert_eq!(n.is_zero(), r.0[2].abs() == 1 && (r.0[0], r.0[1]) != (0, 0));
        }
    }

    #[test]
    fn coroots_of_even_roots() {
        for fam in small_families(2) {
            let rs = build_root_system(&fam).unwrap();
            for a in rs.roots_even() {
                let d = rs.chevalley(a).unwrap();
                assert_eq!(rs.coroot_value(a, &d), Cyclotomic::integer(2), "{fam} {a:?}");
                let dm = rs.chevalley(&-a).unwrap();
                assert!(d.h.iter().zip(&dm.h).all(|(x, y)| (x + y).is_zero()));
            }
        }
    }

    #[test]
    fn type_one_gradings() {
        for fam in [Family::A { m: 2, n: 0 }, Family::C { n: 1 }, Family::C { n: 3 }] {
            let rs = build_root_system(&fam).unwrap();
            let g = rs.distinguished_grading();
            for r in rs.roots_even() {
                assert_eq!(g[r], 0);
            }
            for r in rs.roots_odd() {
                assert_eq!(g[r].abs(), 1);
            }
        }
    }

    #[test]
    fn even_parts_match_table() {
        for fam in small_families(3) {
            let rs = build_root_system(&fam).unwrap();
            assert_eq!(rs.even_part_type(), rs.table_even_part(), "{fam}");
        }
    }

    #[test]
    fn json_shape() {
        let rs = build_root_system(&Family::A { m: 1, n: 0 }).unwrap();
        let j = rs.to_json();
        assert_eq!(j["family"], "A");
        assert_eq!(j["roots"].as_array().unwrap().len(), 6);
        assert_eq!(j["form"][2][2], "-1");
        assert_eq!(j["type"], "I");
    }
}
