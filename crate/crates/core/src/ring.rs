//! Finite-dimensional graded intersection rings given by an integral basis
//! and a multiplication table.
//!
//! Three families are needed: the point, `P^n` (truncated polynomial ring
//! in the hyperplane class) and `P^2` blown up at finitely many points. An
//! element is a coefficient vector over the basis; the ring itself carries the
//! structure constants and the degree map `∫`.

use std::fmt;
use std::sync::Arc;

use crate::coeffs::{MaybeInvertible, Ring, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    /// Cohomological (complex) degree.
    pub degree: usize,
}

#[derive(Debug, PartialEq, Eq)]
pub struct IntersectionRing {
    name: String,
    dim: usize,
    basis: Vec<BasisElem>,
    /// `table[i][j]` lists `(k, c)` with `b_i · b_j = Σ c·b_k`.
    table: Vec<Vec<Vec<(usize, i64)>>>,
    /// `∫ b_i`; nonzero only in top degree.
    integral: Vec<i64>,
}

/// Coefficient vector over the basis of some [`IntersectionRing`].
#[derive(Clone, PartialEq, Debug)]
pub struct RingElem<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> RingElem<C> {
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> RingElem<D> {
        RingElem {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<RingElem<D>, E> {
        Ok(RingElem {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RingElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.clone() * s.clone())
    }
}

impl IntersectionRing {
    fn build(
        name: String,
        dim: usize,
        basis: Vec<BasisElem>,
        product: impl Fn(usize, usize) -> Vec<(usize, i64)>,
        integral: Vec<i64>,
    ) -> Arc<Self> {
        let n = basis.len();
        let table = (0..n)
            .map(|i| (0..n).map(|j| product(i, j)).collect())
            .collect();
        Arc::new(IntersectionRing {
            name,
            dim,
            basis,
            table,
            integral,
        })
    }

    /// Cohomology of a point.
    pub fn point() -> Arc<Self> {
        Self::build(
            "pt".into(),
            0,
            vec![BasisElem {
                label: "pt".into(),
                degree: 0,
            }],
            |_, _| vec![(0, 1)],
            vec![1],
        )
    }

    /// `Q[h]/(h^{n+1})` with `∫ h^n = 1`.
    pub fn projective(n: usize) -> Arc<Self> {
        let basis = (0..=n)
            .map(|i| BasisElem {
                label: match i {
                    0 => "1".to_string(),
                    1 => "h".to_string(),
                    _ => format!("h^{i}"),
                },
                degree: i,
            })
            .collect();
        let mut integral = vec![0; n + 1];
        integral[n] = 1;
        Self::build(
            format!("P^{n}"),
            n,
            basis,
            move |i, j| {
                if i + j <= n {
                    vec![(i + j, 1)]
                } else {
                    Vec::new()
                }
            },
            integral,
        )
    }

    /// `P^2` blown up at `points` points. Basis `1, e, ε_1..ε_s, pt` with
    /// `e² = pt`, `ε_p·ε_q = -δ_pq pt`, `e·ε_p = 0`.
    pub fn blown_up_plane(points: usize) -> Arc<Self> {
        let top = points + 2;
        let mut basis = vec![
            BasisElem {
                label: "1".into(),
                degree: 0,
            },
            BasisElem {
                label: "e".into(),
                degree: 1,
            },
        ];
        for p in 1..=points {
            basis.push(BasisElem {
                label: format!("eps_{p}"),
                degree: 1,
            });
        }
        basis.push(BasisElem {
            label: "pt".into(),
            degree: 2,
        });
        let mut integral = vec![0; top + 1];
        integral[top] = 1;
        Self::build(
            format!("Bl_{points}P^2"),
            2,
            basis,
            move |i, j| match (i, j) {
                (0, k) | (k, 0) => vec![(k, 1)],
                (1, 1) => vec![(top, 1)],
                (a, b) if a == b && a >= 2 && a < top => vec![(top, -1)],
                _ => Vec::new(),
            },
            integral,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Index of the basis element with this label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn zero<C: Ring>(&self) -> RingElem<C> {
        RingElem {
            coeffs: vec![C::zero(); self.rank()],
        }
    }

    pub fn one<C: Ring>(&self) -> RingElem<C> {
        self.basis_elem(0)
    }

    pub fn basis_elem<C: Ring>(&self, i: usize) -> RingElem<C> {
        let mut e = self.zero();
        e.coeffs[i] = C::one();
        e
    }

    pub fn constant<C: Ring>(&self, c: C) -> RingElem<C> {
        self.one().scale(&c)
    }

    pub fn from_coeffs<C: Ring>(&self, coeffs: Vec<C>) -> RingElem<C> {
        assert_eq!(
            coeffs.len(),
            self.rank(),
            "coefficient vector does not match ring {}",
            self.name
        );
        RingElem { coeffs }
    }

    pub fn from_ints<C: Ring>(&self, coeffs: &[i64]) -> RingElem<C> {
        self.from_coeffs(coeffs.iter().map(|&c| C::from_int(c)).collect())
    }

    pub fn mul<C: Ring>(&self, a: &RingElem<C>, b: &RingElem<C>) -> RingElem<C> {
        let mut out = self.zero::<C>();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                for &(k, c) in &self.table[i][j] {
                    out.coeffs[k] =
                        out.coeffs[k].clone() + C::from_int(c) * ai.clone() * bj.clone();
                }
            }
        }
        out
    }

    pub fn pow<C: Ring>(&self, a: &RingElem<C>, e: usize) -> RingElem<C> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn product<'a, C: Ring + 'a>(
        &self,
        items: impl IntoIterator<Item = &'a RingElem<C>>,
    ) -> RingElem<C> {
        items
            .into_iter()
            .fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// Homogeneous component of cohomological degree `degree`.
    pub fn part<C: Ring>(&self, a: &RingElem<C>, degree: usize) -> RingElem<C> {
        RingElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&self.basis)
                .map(|(c, b)| {
                    if b.degree == degree {
                        c.clone()
                    } else {
                        C::zero()
                    }
                })
                .collect(),
        }
    }

    /// Whether `a` is homogeneous of the given degree (zero counts).
    pub fn is_homogeneous<C: Ring>(&self, a: &RingElem<C>, degree: usize) -> bool {
        a.coeffs
            .iter()
            .zip(&self.basis)
            .all(|(c, b)| b.degree == degree || c.is_zero())
    }

    /// The degree map `∫`: pairing of the top-degree part with the fundamental class.
    pub fn integrate<C: Ring>(&self, a: &RingElem<C>) -> C {
        a.coeffs
            .iter()
            .zip(&self.integral)
            .filter(|(_, &w)| w != 0)
            .fold(C::zero(), |acc, (c, &w)| acc + C::from_int(w) * c.clone())
    }

    /// Substitute a nilpotent element (no degree-0 part) into a power series.
    /// Terms past the ring dimension vanish, so only `dim + 1` coefficients
    /// of the series are read.
    pub fn eval_series<C: Ring>(&self, s: &Series<C>, a: &RingElem<C>) -> RingElem<C> {
        debug_assert!(
            self.part(a, 0).is_zero(),
            "series evaluated at a non-nilpotent element"
        );
        let top = s.order().min(self.dim);
        let mut acc = self.constant(s.coeff(top).clone());
        for k in (0..top).rev() {
            acc = self.mul(&acc, a).add(&self.constant(s.coeff(k).clone()));
        }
        acc
    }

    /// Inverse of an element whose degree-0 coefficient is a unit.
    pub fn invert<C: MaybeInvertible>(&self, a: &RingElem<C>) -> Option<RingElem<C>> {
        let a0 = a.coeffs[0].clone();
        let inv0 = a0.try_inverse()?;
        // a = a0 (1 + x) with x nilpotent; 1/(1+x) = Σ (-x)^k
        let x = a.scale(&inv0).sub(&self.one());
        let mut acc = self.one::<C>();
        let mut term = self.one::<C>();
        let minus_x = x.neg();
        for _ in 0..self.dim {
            term = self.mul(&term, &minus_x);
            acc = acc.add(&term);
        }
        Some(acc.scale(&inv0))
    }

    pub fn display<'a, C: Ring + fmt::Display>(
        &'a self,
        a: &'a RingElem<C>,
    ) -> impl fmt::Display + 'a {
        DisplayElem {
            ring: self,
            elem: a,
        }
    }
}

struct DisplayElem<'a, C> {
    ring: &'a IntersectionRing,
    elem: &'a RingElem<C>,
}

impl<C: Ring + fmt::Display> fmt::Display for DisplayElem<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .elem
            .coeffs
            .iter()
            .zip(&self.ring.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| format!("({c})*{}", b.label))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rational::int;
    use crate::Rational;

    #[test]
    fn projective_space_truncates() {
        let r = IntersectionRing::projective(2);
        let h: RingElem<Rational> = r.basis_elem(1);
        assert_eq!(r.pow(&h, 2), r.basis_elem(2));
        assert!(r.pow(&h, 3).is_zero());
        assert_eq!(r.integrate(&r.pow(&h, 2)), int(1));
    }

    #[test]
    fn blown_up_plane_products() {
        let r = IntersectionRing::blown_up_plane(2);
        let e: RingElem<Rational> = r.basis_elem(1);
        let e1: RingElem<Rational> = r.basis_elem(2);
        let e2: RingElem<Rational> = r.basis_elem(3);
        assert_eq!(r.integrate(&r.mul(&e, &e)), int(1));
        assert_eq!(r.integrate(&r.mul(&e1, &e1)), int(-1));
        assert_eq!(r.integrate(&r.mul(&e1, &e2)), int(0));
        assert_eq!(r.integrate(&r.mul(&e, &e1)), int(0));
        // K^2 = 9 - s
        let k = r.from_ints::<Rational>(&[0, -3, 1, 1, 0]);
        assert_eq!(r.integrate(&r.mul(&k, &k)), int(7));
    }

    #[test]
    fn inverse_in_truncated_ring() {
        let r = IntersectionRing::projective(3);
        let a = r.from_ints::<Rational>(&[1, 2, 0, 0]);
        let inv = r.invert(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), r.one());
        assert_eq!(inv, r.from_ints(&[1, -2, 4, -8]));
    }
}
