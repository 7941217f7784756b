use super::{MaybeInvertible, Ring};
use crate::error::{Error, Result};

/// Power series in a nilpotent variable `α`, truncated after `α^order`.
///
/// Invariant: `coeffs.len() == order + 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

pub enum SeriesOp<'a, C> {
    Add(&'a Series<C>),
    Mul(&'a Series<C>),
    Invert,
    /// Substitute `α ↦ factor·α`.
    ComposeScale(C),
}

pub fn series_arith<C: MaybeInvertible>(a: &Series<C>, op: SeriesOp<'_, C>) -> Result<Series<C>> {
    match op {
        SeriesOp::Add(b) => {
            check_orders(a, b)?;
            Ok(a.add(b))
        }
        SeriesOp::Mul(b) => {
            check_orders(a, b)?;
            Ok(a.mul(b))
        }
        SeriesOp::Invert => a.invert(),
        SeriesOp::ComposeScale(c) => Ok(a.compose_scale(&c)),
    }
}

fn check_orders<C>(a: &Series<C>, b: &Series<C>) -> Result<()> {
    if a.coeffs.len() != b.coeffs.len() {
        return Err(Error::TruncationMismatch {
            left: a.coeffs.len() - 1,
            right: b.coeffs.len() - 1,
        });
    }
    Ok(())
}

impl<C: Ring> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(C::one(), 0, order)
    }

    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn compose_scale(&self, factor: &C) -> Self {
        let mut power = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * power.clone());
            power = power * factor.clone();
        }
        Series { coeffs: out }
    }

    /// Multiply by `α^k`, dropping what falls past the truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = vec![C::zero(); order + 1];
        for i in 0..=order {
            if i + k <= order {
                out[i + k] = self.coeffs[i].clone();
            }
        }
        Series { coeffs: out }
    }
}

impl<C: MaybeInvertible> Series<C> {
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible(format!("constant term {:?}", self.coeffs[0])))?;
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for k in 1..=order {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.invert()?))
    }

    /// Logarithm of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotInvertible("log needs constant term 1".into()));
        }
        // (log f)' = f'/f
        let order = self.order();
        let inv = self.invert()?;
        let deriv = self.derivative();
        let q = deriv.mul(&inv);
        let mut out = vec![C::zero()];
        for (k, qk) in q.coeffs.iter().take(order).enumerate() {
            let kinv = C::from_int(k as i64 + 1)
                .try_inverse()
                .expect("nonzero integer");
            out.push(qk.clone() * kinv);
        }
        Ok(Series { coeffs: out })
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible("exp needs constant term 0".into()));
        }
        // k E_k = sum_{j=1..k} j g_j E_{k-j}
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(C::one());
        for k in 1..=order {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc + C::from_int(j as i64) * self.coeffs[j].clone() * out[k - j].clone();
            }
            let kinv = C::from_int(k as i64)
                .try_inverse()
                .expect("nonzero integer");
            out.push(acc * kinv);
        }
        Ok(Series { coeffs: out })
    }

    /// Formal derivative, keeping the same truncation order (top term zero).
    pub fn derivative(&self) -> Self {
        let order = self.order();
        let mut out = vec![C::zero(); order + 1];
        for k in 1..=order {
            out[k - 1] = C::from_int(k as i64) * self.coeffs[k].clone();
        }
        Series { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{RatFuncY, Rational};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn s(cs: &[i64], order: usize) -> Series<RatFuncY> {
        Series::from_coeffs(cs.iter().map(|&c| RatFuncY::from_int(c)).collect(), order)
    }

    #[test]
    fn product_of_conjugates() {
        let got = series_arith(&s(&[1, 1], 2), SeriesOp::Mul(&s(&[1, -1], 2))).unwrap();
        assert_eq!(got, s(&[1, 0, -1], 2));
    }

    #[test]
    fn inverse_is_geometric_series() {
        // oracle: 1/(1+a) = sum (-a)^k
        let order = 6;
        let geometric: Vec<i64> = (0..=order)
            .map(|k| if k % 2 == 0 { 1 } else { -1 })
            .collect();
        let got = series_arith(&s(&[1, 1], order), SeriesOp::Invert).unwrap();
        assert_eq!(got, s(&geometric, order));
        let got2 = series_arith(&s(&[1, 1], 2), SeriesOp::Invert).unwrap();
        assert_eq!(got2, s(&[1, -1, 1], 2));
    }

    #[test]
    fn compose_scale_by_one_plus_y() {
        let got = series_arith(
            &s(&[0, 1], 3),
            SeriesOp::ComposeScale(RatFuncY::one_plus_y()),
        )
        .unwrap();
        assert_eq!(got.coeff(1), &RatFuncY::one_plus_y());
        assert!(got.coeff(0).is_zero() && got.coeff(2).is_zero());
    }

    #[test]
    fn non_invertible_constant_term() {
        let err = series_arith(&s(&[0, 1], 3), SeriesOp::Invert).unwrap_err();
        assert!(matches!(err, Error::NotInvertible(_)));
    }

    #[test]
    fn mismatched_orders() {
        let err = series_arith(&s(&[1], 2), SeriesOp::Add(&s(&[1], 3))).unwrap_err();
        assert!(matches!(
            err,
            Error::TruncationMismatch { left: 2, right: 3 }
        ));
    }

    #[test]
    fn exp_log_round_trip() {
        let g = s(&[0, 2, -1, 3], 5);
        let back = g.exp().unwrap().log().unwrap();
        assert_eq!(back, g);
        let e: Series<Rational> =
            Series::from_coeffs(vec![Rational::from_int(0), Rational::from_int(1)], 4)
                .exp()
                .unwrap();
        assert_eq!(e.coeff(4), &Rational::new(1.into(), 24.into()));
    }

    fn arb_series(order: usize) -> impl Strategy<Value = Series<RatFuncY>> {
        proptest::collection::vec(-3i64..=3, order + 1).prop_map(move |cs| s(&cs, order))
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_associates(
            a in arb_series(5), b in arb_series(5), c in arb_series(5)
        ) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
