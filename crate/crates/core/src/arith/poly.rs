use std::fmt;

use super::Cyclotomic;

/// Univariate polynomial in `t` with cyclotomic coefficients, lowest degree
/// first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Cyclotomic>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Cyclotomic>) -> Poly {
        while coeffs.last().is_some_and(Cyclotomic::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Poly {
        Poly::new(vec![c])
    }

    /// `t − a`.
    pub fn linear_root(a: &Cyclotomic) -> Poly {
        Poly::new(vec![-a, Cyclotomic::one()])
    }

    pub fn monomial(k: usize) -> Poly {
        let mut c = vec![Cyclotomic::zero(); k + 1];
        c[k] = Cyclotomic::one();
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        self.coeffs.iter().rev().fold(Cyclotomic::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Cyclotomic::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Cyclotomic::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Cyclotomic) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Cyclotomic::integer(i as i64))
                .collect(),
        )
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let lead_inv = d.coeffs.last().unwrap().inv().expect("nonzero lead");
        let mut r = self.coeffs.clone();
        while r.len() >= d.coeffs.len() && !r.is_empty() {
            let shift = r.len() - d.coeffs.len();
            let coef = r.last().unwrap() * &lead_inv;
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&coef * dj);
            }
            while r.last().is_some_and(Cyclotomic::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// True when the polynomial has no repeated roots over an algebraic closure.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = if c.is_rational() { c.to_string() } else { format!("({c})") };
            match i {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*t")?,
                _ => write!(f, "{cs}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_linear_roots() {
        let p = Poly::linear_root(&Cyclotomic::one()).mul(&Poly::linear_root(&Cyclotomic::integer(-1)));
        assert_eq!(p, Poly::new(vec![Cyclotomic::integer(-1), Cyclotomic::zero(), Cyclotomic::one()]));
        assert!(p.is_squarefree());
        assert!(!p.mul(&Poly::linear_root(&Cyclotomic::one())).is_squarefree());
        assert_eq!(p.to_string(), "1*t^2 + -1");
    }

    #[test]
    fn evaluation_and_remainder() {
        let p = Poly::new(vec![Cyclotomic::integer(1), Cyclotomic::integer(2), Cyclotomic::integer(3)]);
        assert_eq!(p.eval(&Cyclotomic::integer(2)), Cyclotomic::integer(17));
        let r = p.rem(&Poly::linear_root(&Cyclotomic::integer(2)));
        assert_eq!(r, Poly::constant(Cyclotomic::integer(17)));
    }
}
