use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, MaybeInvertible, Poly, Ring};
use crate::error::{Error, Result};

/// Quotient of two polynomials in `y`, kept in lowest terms with a monic
/// denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatFuncOp {
    Add,
    Mul,
    Div,
}

/// Single entry point for the three field operations, with division by zero
/// reported as an error instead of a panic.
pub fn ratfunc_arith<F: Field>(
    a: &RatFunc<F>,
    b: &RatFunc<F>,
    op: RatFuncOp,
) -> Result<RatFunc<F>> {
    match op {
        RatFuncOp::Add => Ok(a + b),
        RatFuncOp::Mul => Ok(a * b),
        RatFuncOp::Div => a.checked_div(b),
    }
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().cloned().expect("nonzero denominator");
        let inv = lc.inverse().expect("nonzero leading coefficient");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn y() -> Self {
        Self::from_poly(Poly::y())
    }

    pub fn one_plus_y() -> Self {
        Self::from_poly(Poly::one_plus_y())
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn to_poly(&self) -> Option<Poly<F>> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let k = e.unsigned_abs();
        RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::normalized(self.num.scale(s), self.den.clone())
    }

    /// Evaluate at `y = at`; a vanishing denominator is a pole.
    pub fn eval(&self, at: &F) -> Result<F>
    where
        F: fmt::Display,
    {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole { at: at.to_string() });
        }
        Ok(self.num.eval(at) / d)
    }
}

impl<F: Field + fmt::Display> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a, F: Field> Add<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a, F: Field> Sub<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<'a, F: Field> Mul<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a, F: Field> Div<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, rhs: &'a RatFunc<F>) -> RatFunc<F> {
        self.checked_div(rhs)
            .expect("rational function division by zero")
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<F: Field> $tr<RatFunc<F>> for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
}

impl<F: Field> Ring for RatFunc<F> {
    fn from_int(n: i64) -> Self {
        RatFunc::constant(F::from_int(n))
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

impl<F: Field> MaybeInvertible for RatFunc<F> {
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}
