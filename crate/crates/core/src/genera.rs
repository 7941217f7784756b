//! Hirzebruch's power series and the characteristic-class calculus built on
//! them: multiplicative classes from Chern roots or Chern classes, Chern
//! characters, and `λ_y`-classes of (virtual) bundles.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeffs::rational::int;
use crate::coeffs::{Field, Ring, Series};
use crate::error::{Error, Result};
use crate::ring::{IntersectionRing, RingElem};
use crate::{RatFuncY, Rational, RingElemY, SeriesA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HirzebruchKind {
    /// `Q_y(α) = α(1+y)/(1-e^{-α(1+y)}) - αy`; normalised, constant term 1.
    Q,
    /// `Q̃_y(α) = α(1+y e^{-α})/(1-e^{-α})`; constant term `1+y`.
    QTilde,
    /// `R_y(α) = (e^{α(1+y)}-1)/(e^{α(1+y)}+y) = α/Q_y(α)`.
    R,
    /// `α/(1-e^{-α})`, the `y = 0` specialisation of `Q`.
    Todd,
}

impl fmt::Display for HirzebruchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HirzebruchKind::Q => "Q",
            HirzebruchKind::QTilde => "Qtilde",
            HirzebruchKind::R => "R",
            HirzebruchKind::Todd => "Todd",
        };
        f.write_str(s)
    }
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(int(1), |acc, i| acc * int(i))
}

/// Coefficients of `x/(1-e^{-x})` up to `x^order`, by inverting
/// `(1-e^{-x})/x = Σ (-1)^k x^k/(k+1)!`.
fn todd_coefficients(order: usize) -> Series<Rational> {
    let quotient = Series::from_coeffs(
        (0..=order)
            .map(|k| {
                let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                sign / factorial(k + 1)
            })
            .collect(),
        order,
    );
    quotient.invert().expect("constant term is 1")
}

fn lift(s: &Series<Rational>) -> SeriesA {
    s.map(|c| RatFuncY::constant(c.clone()))
}

/// Exact expansion of one of Hirzebruch's series to `α^order`.
pub fn hirzebruch_series(kind: HirzebruchKind, order: usize) -> SeriesA {
    let todd = todd_coefficients(order);
    let one_plus_y = RatFuncY::one_plus_y();
    match kind {
        HirzebruchKind::Todd => lift(&todd),
        HirzebruchKind::Q => {
            let mut q = lift(&todd).compose_scale(&one_plus_y);
            if order >= 1 {
                q = q.sub(&SeriesA::monomial(RatFuncY::y(), 1, order));
            }
            q
        }
        HirzebruchKind::QTilde => {
            // α/(1-e^{-α}) · (1 + y e^{-α})
            let exp_neg: Vec<RatFuncY> = (0..=order)
                .map(|k| {
                    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                    RatFuncY::constant(sign / factorial(k)) * RatFuncY::y()
                })
                .collect();
            let twist = SeriesA::one(order).add(&SeriesA::from_coeffs(exp_neg, order));
            lift(&todd).mul(&twist)
        }
        HirzebruchKind::R => {
            // numerator e^{x}-1 and denominator e^{x}+y with x = α(1+y)
            let exp_minus_one: Vec<RatFuncY> = (0..=order)
                .map(|k| {
                    if k == 0 {
                        RatFuncY::zero()
                    } else {
                        RatFuncY::constant(int(1) / factorial(k))
                    }
                })
                .collect();
            let num = SeriesA::from_coeffs(exp_minus_one, order).compose_scale(&one_plus_y);
            let den = num.add(&SeriesA::monomial(one_plus_y, 0, order));
            num.mul(&den.invert().expect("constant term 1+y is a unit"))
        }
    }
}

/// Evaluate every coefficient at `y = y0`.
pub fn specialize_series(s: &SeriesA, y0: &Rational) -> Result<Series<Rational>> {
    let coeffs = s
        .coeffs()
        .iter()
        .map(|c| c.eval(y0))
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::from_coeffs(coeffs, s.order()))
}

/// `α/tanh(α)`, the `y = 1` specialisation of `Q`.
pub fn l_series(order: usize) -> Result<Series<Rational>> {
    specialize_series(&hirzebruch_series(HirzebruchKind::Q, order), &int(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub order: usize,
    /// `Q_y(α) = (1+y)^{-1} Q̃_y(α(1+y))`
    pub rescaling: bool,
    /// `Q_y(α) · R_y(α) = α`
    pub reciprocal: bool,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.rescaling && self.reciprocal
    }
}

/// Check the two relations tying `Q`, `Q̃` and `R` together, to `α^order`.
pub fn check_hirzebruch_identities(order: usize) -> IdentityReport {
    let q = hirzebruch_series(HirzebruchKind::Q, order);
    let qt = hirzebruch_series(HirzebruchKind::QTilde, order);
    let r = hirzebruch_series(HirzebruchKind::R, order);
    let inv = RatFuncY::one_plus_y().inverse().expect("1+y is a unit");
    let rescaled = qt.compose_scale(&RatFuncY::one_plus_y()).scale(&inv);
    let alpha = SeriesA::monomial(RatFuncY::one(), 1, order);
    IdentityReport {
        order,
        rescaling: rescaled == q,
        reciprocal: q.mul(&r) == alpha,
    }
}

/// Product of the series evaluated at each root. Roots must be of pure
/// degree 1 in `ring`.
pub fn class_from_roots(
    ring: &IntersectionRing,
    roots: &[RingElemY],
    kind: HirzebruchKind,
) -> RingElemY {
    let series = hirzebruch_series(kind, ring.dim());
    roots.iter().fold(ring.one(), |acc, root| {
        debug_assert!(
            ring.is_homogeneous(root, 1),
            "Chern roots must have degree 1"
        );
        ring.mul(&acc, &ring.eval_series(&series, root))
    })
}

/// Chern data `(rank, c_1, ..., c_d)` of a vector bundle, `d = dim ring`.
#[derive(Clone, Debug)]
pub struct ChernData {
    ring: Arc<IntersectionRing>,
    rank: usize,
    /// `chern[i]` is `c_{i+1}`.
    chern: Vec<RingElemY>,
}

impl ChernData {
    pub fn new(
        ring: Arc<IntersectionRing>,
        rank: usize,
        mut chern: Vec<RingElemY>,
    ) -> Result<Self> {
        let d = ring.dim();
        if chern.len() > d && chern[d..].iter().any(|c| !c.is_zero()) {
            return Err(Error::OutOfRange("Chern class above ring dimension".into()));
        }
        chern.resize(d, ring.zero());
        for (i, c) in chern.iter().enumerate() {
            if !ring.is_homogeneous(c, i + 1) {
                return Err(Error::OutOfRange(format!(
                    "c_{} is not of pure degree {}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(ChernData { ring, rank, chern })
    }

    pub fn trivial(ring: Arc<IntersectionRing>, rank: usize) -> Self {
        let chern = vec![ring.zero(); ring.dim()];
        ChernData { ring, rank, chern }
    }

    pub fn line_bundle(ring: Arc<IntersectionRing>, c1: RingElemY) -> Result<Self> {
        Self::new(ring, 1, vec![c1])
    }

    /// Bundle whose total Chern class is `Π (1 + root)`.
    pub fn from_roots(ring: Arc<IntersectionRing>, roots: &[RingElemY]) -> Result<Self> {
        let total = roots
            .iter()
            .fold(ring.one(), |acc, r| ring.mul(&acc, &ring.one().add(r)));
        Self::from_total(ring, roots.len(), &total)
    }

    /// Split a total Chern class into its graded pieces.
    pub fn from_total(ring: Arc<IntersectionRing>, rank: usize, total: &RingElemY) -> Result<Self> {
        let chern = (1..=ring.dim()).map(|i| ring.part(total, i)).collect();
        Self::new(ring, rank, chern)
    }

    pub fn ring(&self) -> &Arc<IntersectionRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `c_i`, with `c_0 = 1` and zero above the ring dimension.
    pub fn c(&self, i: usize) -> RingElemY {
        match i {
            0 => self.ring.one(),
            _ => self
                .chern
                .get(i - 1)
                .cloned()
                .unwrap_or_else(|| self.ring.zero()),
        }
    }

    pub fn total(&self) -> RingElemY {
        (0..=self.ring.dim()).fold(self.ring.zero(), |acc, i| acc.add(&self.c(i)))
    }

    pub fn dual(&self) -> Self {
        let chern = self
            .chern
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.neg() } else { c.clone() })
            .collect();
        ChernData {
            ring: self.ring.clone(),
            rank: self.rank,
            chern,
        }
    }

    /// Power sums `p_k = Σ x_i^k` of the Chern roots, `k = 1..=dim`, by
    /// Newton's identities.
    fn power_sums(&self) -> Vec<RingElemY> {
        let ring = &self.ring;
        let d = ring.dim();
        let e = |i: usize| {
            if i <= self.rank {
                self.c(i)
            } else {
                ring.zero()
            }
        };
        let mut p: Vec<RingElemY> = vec![ring.zero()];
        for k in 1..=d {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let mut acc = e(k).scale(&RatFuncY::from_int(sign * k as i64));
            for i in 1..k {
                let s = if i % 2 == 1 { 1 } else { -1 };
                acc = acc.add(&ring.mul(&e(i), &p[k - i]).scale(&RatFuncY::from_int(s)));
            }
            p.push(acc);
        }
        p
    }

    pub fn chern_character(&self) -> KClass {
        let p = self.power_sums();
        let ring = &self.ring;
        let mut ch = ring.constant(RatFuncY::from_int(self.rank as i64));
        for (k, pk) in p.iter().enumerate().skip(1) {
            ch = ch.add(&pk.scale(&RatFuncY::constant(int(1) / factorial(k))));
        }
        KClass {
            ring: ring.clone(),
            ch,
        }
    }

    /// `Π f(x_i)` over the Chern roots for a series with unit constant term,
    /// computed as `f(0)^rank · exp(Σ_k [log(f/f(0))]_k p_k)`.
    pub fn multiplicative_class(&self, series: &SeriesA) -> Result<RingElemY> {
        let ring = &self.ring;
        let d = ring.dim();
        let f0 = series.coeff(0).clone();
        let inv0 = f0
            .inverse()
            .ok_or_else(|| Error::NotInvertible("multiplicative class needs f(0) != 0".into()))?;
        let log = series.truncate(d).scale(&inv0).log()?;
        let p = self.power_sums();
        let mut z = ring.zero();
        for (k, pk) in p.iter().enumerate().skip(1) {
            z = z.add(&pk.scale(log.coeff(k)));
        }
        let exp = Series::<RatFuncY>::from_coeffs(
            (0..=d)
                .map(|j| RatFuncY::constant(int(1) / factorial(j)))
                .collect(),
            d,
        );
        let mut scale = RatFuncY::one();
        for _ in 0..self.rank {
            scale = scale * f0.clone();
        }
        Ok(ring.eval_series(&exp, &z).scale(&scale))
    }

    pub fn todd(&self) -> RingElemY {
        self.multiplicative_class(&hirzebruch_series(HirzebruchKind::Todd, self.ring.dim()))
            .expect("Todd series has constant term 1")
    }
}

/// A K-theory class stored through its Chern character; the rank is the
/// degree-0 coefficient.
#[derive(Clone, Debug)]
pub struct KClass {
    ring: Arc<IntersectionRing>,
    ch: RingElemY,
}

impl KClass {
    pub fn from_ch(ring: Arc<IntersectionRing>, ch: RingElemY) -> Self {
        KClass { ring, ch }
    }

    pub fn trivial(ring: Arc<IntersectionRing>) -> Self {
        let ch = ring.one();
        KClass { ring, ch }
    }

    /// `ch(L) = e^{c_1(L)}`.
    pub fn line_bundle(ring: Arc<IntersectionRing>, c1: &RingElemY) -> Self {
        let d = ring.dim();
        let exp = Series::<RatFuncY>::from_coeffs(
            (0..=d)
                .map(|j| RatFuncY::constant(int(1) / factorial(j)))
                .collect(),
            d,
        );
        let ch = ring.eval_series(&exp, c1);
        KClass { ring, ch }
    }

    pub fn ring(&self) -> &Arc<IntersectionRing> {
        &self.ring
    }

    pub fn ch(&self) -> &RingElemY {
        &self.ch
    }

    pub fn rank(&self) -> RatFuncY {
        self.ch.coeff(0).clone()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        KClass {
            ring: self.ring.clone(),
            ch: self.ch.add(&rhs.ch),
        }
    }

    pub fn scale(&self, s: &RatFuncY) -> Self {
        KClass {
            ring: self.ring.clone(),
            ch: self.ch.scale(s),
        }
    }

    pub fn tensor(&self, rhs: &Self) -> Self {
        KClass {
            ring: self.ring.clone(),
            ch: self.ring.mul(&self.ch, &rhs.ch),
        }
    }
}

/// `ch(λ_y V) = Σ_p ch(Λ^p V) y^p`, from Newton's identities on the
/// `e^{x_i}`: their power sums are `Σ_j k^j ch_j(V)`.
pub fn lambda_y(v: &ChernData) -> RingElemY {
    let ring = v.ring();
    let ch = v.chern_character();
    let ch_parts: Vec<RingElemY> = (0..=ring.dim()).map(|j| ring.part(ch.ch(), j)).collect();
    let adams = |k: i64| {
        ch_parts
            .iter()
            .enumerate()
            .fold(ring.zero(), |acc, (j, part)| {
                acc.add(&part.scale(&RatFuncY::from_int(k.pow(j as u32))))
            })
    };
    let power: Vec<RingElemY> = (0..=v.rank() as i64).map(adams).collect();
    let mut elem: Vec<RingElemY> = vec![ring.one()];
    for p in 1..=v.rank() {
        let mut acc = ring.zero::<RatFuncY>();
        for i in 1..=p {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            acc = acc.add(
                &ring
                    .mul(&elem[p - i], &power[i])
                    .scale(&RatFuncY::from_int(sign)),
            );
        }
        elem.push(acc.scale(&RatFuncY::constant(int(1) / int(p as i64))));
    }
    let mut total = ring.zero();
    let mut ypow = RatFuncY::one();
    for e in &elem {
        total = total.add(&e.scale(&ypow));
        ypow = ypow * RatFuncY::y();
    }
    total
}

/// `λ_y(A - B) = λ_y(A)/λ_y(B)`; the denominator's constant term
/// `(1+y)^{rank B}` is a unit, so the quotient exists.
pub fn lambda_y_virtual(positive: &ChernData, negative: &ChernData) -> Result<RingElemY> {
    let ring = positive.ring();
    let den = lambda_y(negative);
    let inv = ring
        .invert(&den)
        .ok_or_else(|| Error::NotInvertible("λ_y of the subtracted bundle".into()))?;
    Ok(ring.mul(&lambda_y(positive), &inv))
}

/// Evaluate every coefficient of a ring element at `y = y0`.
pub fn specialize_elem(a: &RingElemY, y0: &Rational) -> Result<RingElem<Rational>> {
    a.try_map(|c| c.eval(y0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rational::frac;
    use crate::coeffs::Poly;

    fn rf(cs: &[Rational]) -> RatFuncY {
        RatFuncY::from_poly(Poly::from_coeffs(cs.to_vec()))
    }

    #[test]
    fn q_low_order_coefficients() {
        let q = hirzebruch_series(HirzebruchKind::Q, 4);
        assert_eq!(q.coeff(0), &RatFuncY::one());
        // (1 - y)/2
        assert_eq!(q.coeff(1), &rf(&[frac(1, 2), frac(-1, 2)]));
        // (1 + y)^2 / 12, oracle: x/(1-e^{-x}) = 1 + x/2 + x^2/12 - x^4/720
        assert_eq!(q.coeff(2), &rf(&[frac(1, 12), frac(1, 6), frac(1, 12)]));
        assert!(q.coeff(3).is_zero());
        assert_eq!(
            q.coeff(4),
            &RatFuncY::one_plus_y().pow(4).scale(&frac(-1, 720))
        );
    }

    #[test]
    fn q_at_minus_one_is_one_plus_alpha() {
        let s = specialize_series(&hirzebruch_series(HirzebruchKind::Q, 8), &int(-1)).unwrap();
        let expected = Series::from_coeffs(vec![int(1), int(1)], 8);
        assert_eq!(s, expected);
    }

    #[test]
    fn constant_terms() {
        let qt = hirzebruch_series(HirzebruchKind::QTilde, 3);
        assert_eq!(qt.coeff(0), &RatFuncY::one_plus_y());
        let r = hirzebruch_series(HirzebruchKind::R, 3);
        assert!(r.coeff(0).is_zero());
        assert_eq!(r.coeff(1), &RatFuncY::one());
    }

    #[test]
    fn identities_hold() {
        for order in [0, 1, 8, 12] {
            assert!(check_hirzebruch_identities(order).holds(), "order {order}");
        }
    }

    #[test]
    fn l_series_is_x_over_tanh() {
        // x/tanh x = 1 + x^2/3 - x^4/45 + ...
        let l = l_series(4).unwrap();
        assert_eq!(
            l.coeffs(),
            &[int(1), int(0), frac(1, 3), int(0), frac(-1, 45)]
        );
    }

    fn p2() -> Arc<IntersectionRing> {
        IntersectionRing::projective(2)
    }

    #[test]
    fn chern_class_of_p2_from_roots() {
        let ring = p2();
        let h: RingElemY = ring.basis_elem(1);
        let c = class_from_roots(&ring, &[h.clone(), h.clone()], HirzebruchKind::Q);
        let at_minus_one = specialize_elem(&c, &int(-1)).unwrap();
        // (1 + h)^2
        assert_eq!(at_minus_one, ring.from_ints(&[1, 2, 1]));
        assert_eq!(class_from_roots(&ring, &[], HirzebruchKind::Q), ring.one());
    }

    #[test]
    fn todd_class_of_p2() {
        // oracle: χ(O_{P^2}) = 1 forces td_2 = 1 with td_1 = c_1/2 = 3h/2
        let ring = p2();
        let h: RingElemY = ring.basis_elem(1);
        let td = class_from_roots(
            &ring,
            &[h.clone(), h.clone(), h.clone()],
            HirzebruchKind::Todd,
        );
        let expected = ring.from_coeffs(vec![
            RatFuncY::one(),
            RatFuncY::constant(frac(3, 2)),
            RatFuncY::one(),
        ]);
        assert_eq!(td, expected);
    }

    #[test]
    fn multiplicative_class_matches_roots() {
        let ring = IntersectionRing::projective(3);
        let h: RingElemY = ring.basis_elem(1);
        let roots = vec![
            h.clone(),
            h.scale(&RatFuncY::from_int(2)),
            h.scale(&RatFuncY::from_int(-1)),
        ];
        let data = ChernData::from_roots(ring.clone(), &roots).unwrap();
        for kind in [
            HirzebruchKind::Q,
            HirzebruchKind::QTilde,
            HirzebruchKind::Todd,
        ] {
            let direct = class_from_roots(&ring, &roots, kind);
            let via_chern = data
                .multiplicative_class(&hirzebruch_series(kind, 3))
                .unwrap();
            assert_eq!(direct, via_chern, "{kind}");
        }
    }

    #[test]
    fn specialisations_give_chern_and_todd() {
        let ring = IntersectionRing::projective(3);
        let h: RingElemY = ring.basis_elem(1);
        let roots = vec![
            h.clone(),
            h.scale(&RatFuncY::from_int(3)),
            h.scale(&RatFuncY::from_int(-2)),
        ];
        let data = ChernData::from_roots(ring.clone(), &roots).unwrap();
        let t = class_from_roots(&ring, &roots, HirzebruchKind::Q);
        assert_eq!(
            specialize_elem(&t, &int(-1)).unwrap(),
            specialize_elem(&data.total(), &int(0)).unwrap()
        );
        assert_eq!(
            specialize_elem(&t, &int(0)).unwrap(),
            specialize_elem(&data.todd(), &int(0)).unwrap()
        );
    }

    #[test]
    fn lambda_of_line_bundles() {
        let ring = IntersectionRing::projective(1);
        let trivial = ChernData::line_bundle(ring.clone(), ring.zero()).unwrap();
        assert_eq!(lambda_y(&trivial), ring.constant(RatFuncY::one_plus_y()));
        let c1 = ring
            .basis_elem::<RatFuncY>(1)
            .scale(&RatFuncY::from_int(-2));
        let cotangent = ChernData::line_bundle(ring.clone(), c1.clone()).unwrap();
        let expected = ring.one().add(
            &KClass::line_bundle(ring.clone(), &c1)
                .ch()
                .scale(&RatFuncY::y()),
        );
        assert_eq!(lambda_y(&cotangent), expected);
    }

    #[test]
    fn virtual_lambda_rank() {
        let ring = IntersectionRing::projective(2);
        let h: RingElemY = ring.basis_elem(1);
        let m1 = h.neg();
        // T*P^2 has Chern roots -h,-h,-h minus a trivial summand
        let cot =
            ChernData::from_roots(ring.clone(), &[m1.clone(), m1.clone(), m1.clone()]).unwrap();
        let cot = ChernData::new(ring.clone(), 2, (1..=2).map(|i| cot.c(i)).collect()).unwrap();
        let conormal =
            ChernData::line_bundle(ring.clone(), h.scale(&RatFuncY::from_int(-2))).unwrap();
        let v = lambda_y_virtual(&cot, &conormal).unwrap();
        assert_eq!(v.coeff(0), &RatFuncY::one_plus_y());
    }

    #[test]
    fn lambda_of_direct_sum_is_product() {
        let ring = IntersectionRing::projective(3);
        let h: RingElemY = ring.basis_elem(1);
        let a = [h.clone(), h.scale(&RatFuncY::from_int(-2))];
        let b = [h.scale(&RatFuncY::from_int(3))];
        let sum: Vec<RingElemY> = a.iter().chain(b.iter()).cloned().collect();
        let la = lambda_y(&ChernData::from_roots(ring.clone(), &a).unwrap());
        let lb = lambda_y(&ChernData::from_roots(ring.clone(), &b).unwrap());
        let ls = lambda_y(&ChernData::from_roots(ring.clone(), &sum).unwrap());
        assert_eq!(ring.mul(&la, &lb), ls);
    }
}
