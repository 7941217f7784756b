use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Ring};

/// Dense univariate polynomial in `y`, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is the
/// empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, power: usize) -> Self {
        let mut coeffs = vec![F::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    /// `1 + y`, which shows up everywhere as the Todd rescaling factor.
    pub fn one_plus_y() -> Self {
        Self::from_coeffs(vec![F::one(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division. Panics on a zero divisor; callers check first.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd]
            .inverse()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn fmt_with_var(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result
    where
        F: fmt::Display,
    {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let fractional = body.contains('/');
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}")?;
                        if fractional {
                            write!(f, "*")?;
                        }
                    }
                    if i == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_var("y", f)
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Field> Zero for Poly<F> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> One for Poly<F> {
    fn one() -> Self {
        Poly {
            coeffs: vec![F::one()],
        }
    }
}

impl<F: Field> Ring for Poly<F> {
    fn from_int(n: i64) -> Self {
        Poly::constant(F::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_coeffs(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn long_division() {
        let (q, r) = p(&[0, 1, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[0, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[1, 1]) * &p(&[2, 3]);
        let b = &p(&[1, 1]) * &p(&[0, 5]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, -20, 2]).to_string(), "2 - 20y + 2y^2");
        assert_eq!(p(&[0, -1]).to_string(), "-y");
        assert_eq!(p(&[]).to_string(), "0");
        let q = Poly::from_coeffs(vec![Rational::new(1.into(), 12.into()); 3]);
        assert_eq!(q.to_string(), "1/12 + 1/12*y + 1/12*y^2");
    }
}
