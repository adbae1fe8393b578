use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

use super::{ArithError, Rational};

/// Element of the cyclotomic field ℚ(ζ_N).
///
/// Stored as the residue of a polynomial in ζ_N modulo Φ_N, with exactly
/// `deg Φ_N` coefficients. Values are kept at their smallest conductor
/// (never ≡ 2 mod 4), so structural equality and hashing agree with field
/// equality across conductors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    n: u32,
    c: Vec<Rational>,
}

type RatPoly = Vec<Rational>;

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of Φ_N, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_poly(d);
            num = int_exact_div(&num, &den);
        }
    }
    let p = Arc::new(num);
    phi_cache().write().unwrap().insert(n, p.clone());
    p
}

fn int_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    debug_assert!(lead == 1);
    let mut q = vec![0i64; rem.len().saturating_sub(dd)];
    for i in (0..q.len()).rev() {
        let coef = rem[i + dd];
        q[i] = coef;
        if coef != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= coef * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

pub fn totient(n: u32) -> u32 {
    (cyclotomic_poly(n).len() - 1) as u32
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Reduce a polynomial in ζ_n: fold exponents with ζ^n = 1, then take the
/// remainder modulo Φ_n. Output has exactly φ(n) coefficients.
fn reduce(poly: &[Rational], n: u32) -> RatPoly {
    let n_us = n as usize;
    let mut folded = vec![Rational::zero(); n_us.max(1)];
    for (j, c) in poly.iter().enumerate() {
        if !c.is_zero() {
            folded[j % n_us] += c;
        }
    }
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    for i in (deg..folded.len()).rev() {
        let coef = std::mem::take(&mut folded[i]);
        if coef.is_zero() {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                let t = &coef * &Rational::integer(pj);
                folded[i - deg + j] -= &t;
            }
        }
    }
    folded.truncate(deg);
    folded
}

fn gauss_solve(cols: &[RatPoly], target: &[Rational]) -> Option<Vec<Rational>> {
    // Solve Σ x_j cols[j] = target; columns are independent by construction.
    let rows = target.len();
    let k = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut piv_row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(p) = (piv_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv_row, p);
        let inv = m[piv_row][col].inv().ok()?;
        for x in m[piv_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != piv_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for cc in 0..=k {
                    let t = &f * &m[piv_row][cc];
                    m[r][cc] -= &t;
                }
            }
        }
        pivots.push(col);
        piv_row += 1;
    }
    if m[piv_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][k].clone();
    }
    Some(x)
}

/// Try to express `c` (conductor `n`) as an element of ℚ(ζ_d), `d | n`.
fn try_descend(n: u32, c: &[Rational], d: u32) -> Option<RatPoly> {
    if d == 1 {
        return if c[1..].iter().all(Rational::is_zero) {
            Some(vec![c[0].clone()])
        } else {
            None
        };
    }
    let k = n / d;
    let phid = totient(d) as usize;
    let sparse = prime_factors(k).iter().all(|p| d % p == 0);
    if sparse {
        // Φ_n(x) = Φ_d(x^k): the subfield sits on exponents divisible by k.
        for (j, x) in c.iter().enumerate() {
            if j % k as usize != 0 && !x.is_zero() {
                return None;
            }
        }
        return Some((0..phid).map(|j| c[j * k as usize].clone()).collect());
    }
    let cols: Vec<RatPoly> = (0..phid)
        .map(|j| {
            let mut mono = vec![Rational::zero(); j * k as usize + 1];
            mono[j * k as usize] = Rational::one();
            reduce(&mono, n)
        })
        .collect();
    gauss_solve(&cols, c)
}

fn canonical(mut n: u32, mut c: RatPoly) -> Cyclotomic {
    loop {
        if n == 1 || c[1..].iter().all(Rational::is_zero) {
            c.truncate(1);
            if c.is_empty() {
                c.push(Rational::zero());
            }
            return Cyclotomic { n: 1, c };
        }
        let mut moved = false;
        for p in prime_factors(n) {
            let mut d = n / p;
            if d % 4 == 2 {
                d /= 2;
            }
            if let Some(c2) = try_descend(n, &c, d) {
                n = d;
                c = c2;
                moved = true;
                break;
            }
        }
        if !moved {
            return Cyclotomic { n, c };
        }
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

/// Polynomial division over ℚ: returns (quotient, remainder).
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (RatPoly, RatPoly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = b.last().unwrap().inv().expect("nonzero divisor");
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let coef = r.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &(&coef * bj);
        }
        q[shift] = coef;
        r = trim(r);
    }
    (q, r)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> RatPoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

/// Convert raw coefficients at conductor N ≡ 2 (mod 4) to conductor N/2,
/// using ζ_{2m} = −ζ_m^{(m+1)/2} for odd m.
fn halve_conductor(raw: &[Rational], n: u32) -> (RatPoly, u32) {
    let m = n / 2;
    let step = ((m + 1) / 2) as usize;
    let mut out = vec![Rational::zero(); m as usize];
    for (j, c) in raw.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = (j * step) % m as usize;
        if j % 2 == 0 {
            out[e] += c;
        } else {
            out[e] -= c;
        }
    }
    (out, m)
}

impl Cyclotomic {
    /// Canonical residue of Σ raw[j]·ζ_N^j modulo Φ_N.
    pub fn normalize(raw: &[Rational], n: u32) -> Cyclotomic {
        assert!(n >= 1, "conductor must be positive");
        if raw.is_empty() {
            return Cyclotomic::zero();
        }
        if n % 4 == 2 {
            let (r, m) = halve_conductor(raw, n);
            return Cyclotomic::normalize(&r, m);
        }
        canonical(n, reduce(raw, n))
    }

    pub fn zero() -> Cyclotomic {
        Cyclotomic { n: 1, c: vec![Rational::zero()] }
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic { n: 1, c: vec![Rational::one()] }
    }

    pub fn from_rational(r: Rational) -> Cyclotomic {
        Cyclotomic { n: 1, c: vec![r] }
    }

    pub fn integer(k: i64) -> Cyclotomic {
        Cyclotomic::from_rational(Rational::integer(k))
    }

    pub fn ratio(p: i64, q: i64) -> Cyclotomic {
        Cyclotomic::from_rational(Rational::new(p, q))
    }

    /// ζ_N^k.
    pub fn zeta_pow(n: u32, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Cyclotomic::normalize(&raw, n)
    }

    pub fn zeta(n: u32) -> Cyclotomic {
        Cyclotomic::zeta_pow(n, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.c[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.c[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        (self.n == 1).then(|| &self.c[0])
    }

    /// The value as an `i64` when it is a rational integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_rational().and_then(Rational::to_i64)
    }

    fn lift(&self, m: u32) -> RatPoly {
        if self.n == m {
            return self.c.clone();
        }
        let k = (m / self.n) as usize;
        let mut raw = vec![Rational::zero(); (self.c.len() - 1) * k + 1];
        for (j, x) in self.c.iter().enumerate() {
            raw[j * k] = x.clone();
        }
        reduce(&raw, m)
    }

    fn common(&self, other: &Cyclotomic) -> u32 {
        self.n.lcm(&other.n)
    }

    /// Multiplicative inverse via extended Euclid against Φ_N.
    pub fn inv(&self) -> Result<Cyclotomic, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.n == 1 {
            return Ok(Cyclotomic::from_rational(self.c[0].inv()?));
        }
        let phi: RatPoly = cyclotomic_poly(self.n).iter().map(|&x| Rational::integer(x)).collect();
        // Invariant: r_i ≡ s_i · a (mod Φ).
        let (mut r0, mut r1) = (phi, trim(self.c.clone()));
        let (mut s0, mut s1): (RatPoly, RatPoly) = (vec![], vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant because Φ_N is irreducible.
        let k = r1[0].inv()?;
        let raw: RatPoly = s1.iter().map(|x| x * &k).collect();
        Ok(Cyclotomic::normalize(&raw, self.n))
    }

    pub fn pow(&self, e: i64) -> Result<Cyclotomic, ArithError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// A square root when `self` is ± the square of a rational.
    pub fn sqrt_of_rational_square(&self) -> Option<Cyclotomic> {
        let r = self.to_rational()?;
        if let Some(s) = r.sqrt_exact() {
            return Some(Cyclotomic::from_rational(s));
        }
        let s = (-r).sqrt_exact()?;
        Some(&Cyclotomic::from_rational(s) * &Cyclotomic::zeta(4))
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::integer(k)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 && rhs.n == 1 {
            return Cyclotomic::from_rational(&self.c[0] + &rhs.c[0]);
        }
        let m = self.common(rhs);
        let mut a = self.lift(m);
        for (x, y) in a.iter_mut().zip(rhs.lift(m)) {
            *x += &y;
        }
        canonical(m, a)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 && rhs.n == 1 {
            return Cyclotomic::from_rational(&self.c[0] - &rhs.c[0]);
        }
        self + &(-rhs)
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 && rhs.n == 1 {
            return Cyclotomic::from_rational(&self.c[0] * &rhs.c[0]);
        }
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if self.n == 1 || rhs.n == 1 {
            let (r, x) = if self.n == 1 { (&self.c[0], rhs) } else { (&rhs.c[0], self) };
            return Cyclotomic { n: x.n, c: x.c.iter().map(|y| r * y).collect() };
        }
        let m = self.common(rhs);
        let prod = poly_mul(&self.lift(m), &rhs.lift(m));
        canonical(m, reduce(&prod, m))
    }
}

impl Div<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.c[0]);
        }
        write!(f, "poly(ζ{}): ", self.n)?;
        for (j, x) in self.c.iter().enumerate() {
            if j > 0 {
                f.write_str(" + ")?;
            }
            match j {
                0 => write!(f, "{x}")?,
                1 => write!(f, "{x}*z")?,
                _ => write!(f, "{x}*z^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_conductor(s: &str) -> Option<(u32, &str)> {
    let rest = s.strip_prefix('ζ').or_else(|| s.strip_prefix("zeta"))?;
    let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
    let n: u32 = rest[..end].parse().ok()?;
    (n >= 1).then_some((n, &rest[end..]))
}

fn parse_term(t: &str) -> Option<(usize, Rational)> {
    let t = t.trim();
    let (coef, power) = match t.split_once('*') {
        Some((c, z)) => (Some(c.trim()), Some(z.trim())),
        None if t.starts_with('z') => (None, Some(t)),
        None => (Some(t), None),
    };
    let exp = match power {
        None => 0,
        Some("z") => 1,
        Some(z) => z.strip_prefix("z^")?.parse().ok()?,
    };
    let coef = match coef {
        Some(c) => c.parse().ok()?,
        None => Rational::one(),
    };
    Some((exp, coef))
}

impl FromStr for Cyclotomic {
    type Err = ArithError;

    /// Accepts rationals (`p` or `p/q`), the canonical `poly(ζN): c0 + c1*z + …`
    /// form, and the shorthand `ζN` / `ζN^k` (also spelled `zetaN^k`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::Parse(s.to_string());
        if let Some(body) = s.strip_prefix("poly(") {
            let (head, terms) = body.split_once("):").ok_or_else(bad)?;
            let (n, tail) = parse_conductor(head.trim()).ok_or_else(bad)?;
            if !tail.is_empty() {
                return Err(bad());
            }
            let mut raw: Vec<Rational> = Vec::new();
            for t in terms.split('+') {
                let (e, c) = parse_term(t).ok_or_else(bad)?;
                if raw.len() <= e {
                    raw.resize(e + 1, Rational::zero());
                }
                raw[e] += &c;
            }
            return Ok(Cyclotomic::normalize(&raw, n));
        }
        if let Some((n, tail)) = parse_conductor(s) {
            let k: i64 = match tail {
                "" => 1,
                t => t.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(bad)?,
            };
            return Ok(Cyclotomic::zeta_pow(n, k));
        }
        Ok(Cyclotomic::from_rational(s.parse().map_err(|_| bad())?))
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => n.to_string().parse().map_err(serde::de::Error::custom),
            other => Err(serde::de::Error::custom(format!("expected scalar string, got {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(k: i64) -> Rational {
        Rational::integer(k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(15), 8);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(Cyclotomic::normalize(&[r(0), r(0), r(1)], 4), Cyclotomic::integer(-1));
        assert_eq!(Cyclotomic::normalize(&[r(5)], 1), Cyclotomic::integer(5));
        assert_eq!(
            Cyclotomic::normalize(&[r(0), r(0), r(0), r(0), r(1)], 8),
            Cyclotomic::integer(-1)
        );
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Cyclotomic::integer(2).inv().unwrap(), Cyclotomic::ratio(1, 2));
        let z4 = Cyclotomic::zeta(4);
        assert_eq!(z4.inv().unwrap(), -&z4);
        let z8 = Cyclotomic::zeta(8);
        assert_eq!(z8.inv().unwrap(), -&Cyclotomic::zeta_pow(8, 3));
        assert_eq!(Cyclotomic::zero().inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn conductor_descends() {
        // ζ8² = ζ4 lives in the smaller field.
        let z8 = Cyclotomic::zeta(8);
        assert_eq!((&z8 * &z8).conductor(), 4);
        // ζ6 is stored over ℚ(ζ3).
        assert_eq!(Cyclotomic::zeta(6).conductor(), 3);
        // Mixed conductors lift to the lcm and come back down.
        let z3 = Cyclotomic::zeta(3);
        let z5 = Cyclotomic::zeta(5);
        let s = &z3 + &z5;
        assert_eq!(s.conductor(), 15);
        assert_eq!(&s - &z5, z3);
        // ζ12^4 = ζ3 needs the non-sparse descent path.
        assert_eq!(Cyclotomic::zeta_pow(12, 4), z3);
    }

    #[test]
    fn prime_power_sums() {
        for n in [2u32, 3, 5, 7] {
            let mut s = Cyclotomic::zero();
            for j in 0..n {
                s = &s + &Cyclotomic::zeta_pow(n, j as i64);
            }
            assert!(s.is_zero(), "n = {n}");
            assert!(Cyclotomic::zeta(n).pow(n as i64).unwrap().is_one());
        }
    }

    #[test]
    fn string_round_trip() {
        let samples = [
            "0",
            "-3/7",
            "poly(ζ4): 0 + 1*z",
            "poly(ζ3): 1/2 + -2*z",
            "poly(ζ8): 1 + 0*z + -1*z^2 + 3/4*z^3",
        ];
        for s in samples {
            let x: Cyclotomic = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("ζ3^2".parse::<Cyclotomic>().unwrap(), Cyclotomic::zeta_pow(3, 2));
        assert_eq!("zeta4".parse::<Cyclotomic>().unwrap(), Cyclotomic::zeta(4));
        assert_eq!("poly(ζ4): 0 + 0*z + 1*z^2".parse::<Cyclotomic>().unwrap(), Cyclotomic::integer(-1));
    }

    #[test]
    fn sqrt_of_negative_square() {
        let s = Cyclotomic::integer(-4).sqrt_of_rational_square().unwrap();
        assert_eq!(&s * &s, Cyclotomic::integer(-4));
    }
}
