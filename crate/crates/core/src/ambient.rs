//! Classes on `P^n`: the Hirzebruch class of projective space and the
//! virtual Hirzebruch class of hypersurfaces and complete intersections.
//!
//! Homology is read off cohomology by Poincaré duality, so `h^i` stands
//! for `[P^{n-i}]`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::coeffs::rational::{self, int};
use crate::coeffs::Ring;
use crate::error::{Error, Result};
use crate::genera::{class_from_roots, hirzebruch_series, HirzebruchKind};
use crate::ring::{IntersectionRing, RingElem};
use crate::{PolyY, RatFuncY, Rational, RingElemY};

/// A homology class `c ∩ [M]` on a compact space with intersection ring
/// `ring`, stored through its Poincaré dual `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedClass<C = RatFuncY> {
    ring: Arc<IntersectionRing>,
    dual: RingElem<C>,
}

impl<C: Ring> GradedClass<C> {
    pub fn new(ring: Arc<IntersectionRing>, dual: RingElem<C>) -> Self {
        GradedClass { ring, dual }
    }

    pub fn ring(&self) -> &Arc<IntersectionRing> {
        &self.ring
    }

    /// The cohomology class capped with the fundamental class.
    pub fn dual(&self) -> &RingElem<C> {
        &self.dual
    }

    pub fn is_zero(&self) -> bool {
        self.dual.is_zero()
    }

    /// Homology degree of basis element `i`.
    pub fn homology_degree(&self, i: usize) -> usize {
        self.ring.dim() - self.ring.basis()[i].degree
    }

    /// Coefficient of the degree-0 part, i.e. the trace.
    pub fn degree0(&self) -> C {
        self.ring.integrate(&self.dual)
    }

    /// The homology-degree-`k` component.
    pub fn part(&self, k: usize) -> Self {
        GradedClass {
            ring: self.ring.clone(),
            dual: self.ring.part(&self.dual, self.ring.dim() - k),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        GradedClass {
            ring: self.ring.clone(),
            dual: self.dual.add(&rhs.dual),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        GradedClass {
            ring: self.ring.clone(),
            dual: self.dual.scale(s),
        }
    }

    /// Label of basis element `i` read as a homology class.
    pub fn homology_label(&self, i: usize) -> String {
        if self.ring.name().starts_with("P^") {
            match self.homology_degree(i) {
                0 => "[pt]".to_string(),
                k => format!("[P^{k}]"),
            }
        } else {
            format!("{}∩[M]", self.ring.basis()[i].label)
        }
    }
}

impl GradedClass<RatFuncY> {
    pub fn specialize(&self, y0: &Rational) -> Result<GradedClass<Rational>> {
        Ok(GradedClass {
            ring: self.ring.clone(),
            dual: self.dual.try_map(|c| c.eval(y0))?,
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.dual.coeffs().iter().all(RatFuncY::is_polynomial)
    }

    /// Coefficients as polynomials, failing on a genuine denominator.
    pub fn polynomial_coeffs(&self) -> Result<Vec<PolyY>> {
        self.dual
            .coeffs()
            .iter()
            .map(|c| {
                c.to_poly()
                    .ok_or_else(|| Error::NonPolynomial(format!("coefficient {c}")))
            })
            .collect()
    }

    /// `{label: [c_0, c_1, ...]}` with coefficients of `y^i` as rational strings.
    pub fn to_json(&self) -> Result<Value> {
        let polys = self.polynomial_coeffs()?;
        let mut map = serde_json::Map::new();
        for (i, p) in polys.iter().enumerate() {
            map.insert(self.homology_label(i), poly_json(p));
        }
        Ok(Value::Object(map))
    }
}

pub fn poly_json(p: &PolyY) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(rational::format(c)))
            .collect(),
    )
}

impl<C: Ring + fmt::Display> fmt::Display for GradedClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.dual.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}){}", self.homology_label(i))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn hyperplane(ring: &IntersectionRing) -> RingElemY {
    ring.basis_elem(1)
}

/// `T_{y*}(P^n) = Q_y(h)^{n+1} ∩ [P^n]`, using the Euler sequence.
pub fn ty_class_pn(n: usize) -> GradedClass {
    let ring = IntersectionRing::projective(n);
    let roots = vec![hyperplane(&ring); n + 1];
    let dual = class_from_roots(&ring, &roots, HirzebruchKind::Q);
    GradedClass { ring, dual }
}

/// `i_* T^vir_{y*}(X) = (Π_j R_y(d_j h) · Q_y(h)^{n+1}) ∩ [P^n]` for a
/// complete intersection of the given degrees.
pub fn virtual_pushed_ci(degrees: &[u64], n: usize) -> Result<GradedClass> {
    if n < 1 || degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::OutOfRange("need n >= 1 and positive degrees".into()));
    }
    let ring = IntersectionRing::projective(n);
    let h = hyperplane(&ring);
    let r = hirzebruch_series(HirzebruchKind::R, n);
    let mut dual = ty_class_pn(n).dual;
    for &d in degrees {
        let beta = h.scale(&RatFuncY::from_int(d as i64));
        dual = ring.mul(&dual, &ring.eval_series(&r, &beta));
    }
    Ok(GradedClass { ring, dual })
}

pub fn virtual_pushed(d: u64, n: usize) -> Result<GradedClass> {
    virtual_pushed_ci(&[d], n)
}

/// `χ_y` of a smooth hypersurface of degree `d` in `P^n`.
pub fn virtual_genus(d: u64, n: usize) -> Result<PolyY> {
    let g = virtual_pushed(d, n)?.degree0();
    g.to_poly()
        .ok_or_else(|| Error::NonPolynomial(format!("virtual genus {g}")))
}

/// Push `T_{y*}(P^k)` for a linear `P^k ⊂ P^n` into `P^n`.
pub fn push_linear(class: &GradedClass, n: usize) -> GradedClass {
    let k = class.ring.dim();
    let ring = IntersectionRing::projective(n);
    let mut coeffs = vec![RatFuncY::zero(); n + 1];
    for (i, c) in class.dual.coeffs().iter().enumerate() {
        coeffs[i + n - k] = c.clone();
    }
    GradedClass {
        ring: ring.clone(),
        dual: ring.from_coeffs(coeffs),
    }
}

pub fn virtual_json(d: u64, n: usize) -> Result<Value> {
    let class = virtual_pushed(d, n)?;
    let genus = virtual_genus(d, n)?;
    Ok(json!({
        "degree": d,
        "ambient": n,
        "class": class.to_json()?,
        "genus": genus.to_string(),
        "genus_coeffs": poly_json(&genus),
    }))
}

/// Degree-`d` hypersurface Euler characteristic `∫ c(TP^n)/(1+dh) · dh`.
pub fn hypersurface_euler(d: u64, n: usize) -> Rational {
    let ring = IntersectionRing::projective(n);
    let h: RingElem<Rational> = ring.basis_elem(1);
    let one_plus_h = ring.one().add(&h);
    let c_tp = ring.pow(&one_plus_h, n + 1);
    let dh = h.scale(&int(d as i64));
    let inv = ring
        .invert(&ring.one().add(&dh))
        .expect("unit constant term");
    ring.integrate(&ring.mul(&ring.mul(&c_tp, &inv), &dh))
}
