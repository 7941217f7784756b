//! Good compactifications `S̃ → S̄` of the strata of `Σ ∖ X'` (points,
//! lines and planes), their boundary divisors and residues, the
//! Deligne-extension line bundles, and the Chow model of `Σ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::ambient::GradedClass;
use crate::arrangement::{Arrangement, Edge, Stratum};
use crate::coeffs::rational::int;
use crate::coeffs::Ring;
use crate::error::{Error, Result};
use crate::genera::ChernData;
use crate::ring::{IntersectionRing, RingElem};
use crate::{RatFuncY, Rational, RingElemY};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Point,
    /// `S̃ = S̄ = P^1`.
    Curve,
    /// `S̄ = P^2` blown up at the non-normal-crossing points.
    Surface,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorSource {
    /// Proper transform of the sub-edge `S'` (a point on a curve, a line on
    /// a surface).
    Edge(usize),
    /// Exceptional curve over a blown-up point `S'`.
    Exceptional(usize),
    /// Proper transform of `X' ∩ S̄`.
    Infinity,
}

/// Integral divisor class, as coefficients over the model ring's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    fn zero(len: usize) -> Self {
        DivisorClass(vec![0; len])
    }

    fn add_scaled(&mut self, other: &DivisorClass, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn to_elem(&self, ring: &IntersectionRing) -> RingElemY {
        ring.from_ints(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDivisor {
    pub source: DivisorSource,
    /// `m_{S',S}` for edge and exceptional divisors, `m` for `X'`.
    pub m_rel: u64,
    /// `m'` in `[0, m_S)`.
    pub residue: u64,
    pub class: DivisorClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionMode {
    /// Residues of the connection in `(0, 1]`.
    OpenClosed,
    /// Residues in `[0, 1)`.
    ClosedOpen,
}

#[derive(Clone, Debug)]
pub struct StratumModel {
    pub edge: usize,
    pub key: String,
    pub n: usize,
    pub dim: usize,
    pub m_s: u64,
    /// `Σ_{j ∉ I(S)} m_j`.
    pub m_out: u64,
    pub kind: ModelKind,
    pub ring: Arc<IntersectionRing>,
    /// Blown-up points (edge ids), in ring order `ε_1, ε_2, ...`.
    pub blown: Vec<usize>,
    pub boundary: Vec<BoundaryDivisor>,
}

fn unit(len: usize, i: usize) -> DivisorClass {
    let mut c = DivisorClass::zero(len);
    c.0[i] = 1;
    c
}

/// Build the model of a stratum of dimension at most 2.
pub fn compactify(arr: &Arrangement, s: &Stratum) -> Result<StratumModel> {
    let edge = arr.edge(s.edge);
    let m_s = edge.m_s;
    let m = arr.m();
    let subs = arr.sub_edges(edge);
    let (kind, ring, blown, mut boundary) = match s.dim {
        0 => (
            ModelKind::Point,
            IntersectionRing::point(),
            Vec::new(),
            Vec::new(),
        ),
        1 => {
            let ring = IntersectionRing::projective(1);
            let pt = unit(2, 1);
            let boundary = subs
                .iter()
                .filter(|p| p.dim(arr.n()) == 0)
                .map(|p| BoundaryDivisor {
                    source: DivisorSource::Edge(p.id),
                    m_rel: arr.m_rel(p, edge),
                    residue: 0,
                    class: pt.clone(),
                })
                .collect();
            (ModelKind::Curve, ring, Vec::new(), boundary)
        }
        2 => {
            let lines: Vec<&Edge> = subs
                .iter()
                .copied()
                .filter(|e| e.dim(arr.n()) == 1)
                .collect();
            let points: Vec<&Edge> = subs
                .iter()
                .copied()
                .filter(|e| e.dim(arr.n()) == 0)
                .collect();
            let on = |p: &Edge, l: &Edge| l.set.iter().all(|j| p.set.binary_search(j).is_ok());
            let blown: Vec<&Edge> = points
                .iter()
                .copied()
                .filter(|p| lines.iter().filter(|l| on(p, l)).count() >= 3)
                .collect();
            let ring = IntersectionRing::blown_up_plane(blown.len());
            let len = ring.rank();
            let mut boundary = Vec::new();
            for l in &lines {
                let mut class = unit(len, 1);
                for (i, p) in blown.iter().enumerate() {
                    if on(p, l) {
                        class.0[2 + i] -= 1;
                    }
                }
                boundary.push(BoundaryDivisor {
                    source: DivisorSource::Edge(l.id),
                    m_rel: arr.m_rel(l, edge),
                    residue: 0,
                    class,
                });
            }
            for (i, p) in blown.iter().enumerate() {
                boundary.push(BoundaryDivisor {
                    source: DivisorSource::Exceptional(p.id),
                    m_rel: arr.m_rel(p, edge),
                    residue: 0,
                    class: unit(len, 2 + i),
                });
            }
            (
                ModelKind::Surface,
                ring,
                blown.iter().map(|p| p.id).collect(),
                boundary,
            )
        }
        dim => {
            return Err(Error::UnsupportedStratum {
                edge: edge.key(),
                dim,
            })
        }
    };
    if s.dim >= 1 {
        boundary.push(BoundaryDivisor {
            source: DivisorSource::Infinity,
            m_rel: m,
            residue: 0,
            class: unit(ring.rank(), 1),
        });
    }
    let mut model = StratumModel {
        edge: edge.id,
        key: edge.key(),
        n: arr.n(),
        dim: s.dim,
        m_s,
        m_out: m - m_s,
        kind,
        ring,
        blown,
        boundary,
    };
    residues(&mut model);
    Ok(model)
}

/// `m'_{S',S} = m_S {m_{S',S}/m_S}` and `m'_{∞,S} = m_S {-m/m_S}`.
pub fn residues(model: &mut StratumModel) {
    let m_s = model.m_s;
    for d in &mut model.boundary {
        d.residue = match d.source {
            DivisorSource::Infinity => (m_s - d.m_rel % m_s) % m_s,
            _ => d.m_rel % m_s,
        };
    }
}

fn ceil_div(a: u64, b: u64) -> i64 {
    a.div_ceil(b) as i64
}

impl StratumModel {
    fn e_class(&self) -> DivisorClass {
        match self.kind {
            ModelKind::Point => DivisorClass::zero(self.ring.rank()),
            _ => unit(self.ring.rank(), 1),
        }
    }

    /// `c_1(L_S̃) = -⌈m_out/m_S⌉ e + Σ_{S'} ⌊m_{S',S}/m_S⌋ [Ẽ_{S'}]`.
    pub fn base_class(&self) -> DivisorClass {
        let mut c = DivisorClass::zero(self.ring.rank());
        if self.kind == ModelKind::Point {
            return c;
        }
        c.add_scaled(&self.e_class(), -ceil_div(self.m_out, self.m_s));
        for d in &self.boundary {
            if d.source != DivisorSource::Infinity {
                c.add_scaled(&d.class, (d.m_rel / self.m_s) as i64);
            }
        }
        c
    }

    /// Whether `m_S c_1(L_S̃) = -Σ m'_i [D_i]` holds in the Picard group.
    pub fn power_identity_holds(&self) -> bool {
        let mut c = DivisorClass::zero(self.ring.rank());
        c.add_scaled(&self.base_class(), self.m_s as i64);
        for d in &self.boundary {
            c.add_scaled(&d.class, d.residue as i64);
        }
        c.is_zero()
    }

    /// The integer added along `D` in the extension of `L_{S̃,λ}`,
    /// `λ = e(k/m_S)`.
    pub fn extension_coefficient(&self, d: &BoundaryDivisor, k: u64, mode: ExtensionMode) -> i64 {
        let num = k * d.residue;
        match mode {
            ExtensionMode::OpenClosed => ceil_div(num, self.m_s) - 1,
            ExtensionMode::ClosedOpen => (num / self.m_s) as i64,
        }
    }

    /// Residue of the connection on the extension along `D`.
    pub fn connection_residue(&self, d: &BoundaryDivisor, k: u64, mode: ExtensionMode) -> Rational {
        Rational::new(((k * d.residue) as i64).into(), (self.m_s as i64).into())
            - int(self.extension_coefficient(d, k, mode))
    }

    /// `c_1(L_{S̃,λ}) = k c_1(L_S̃) + Σ_i c_i [D_i]` for `λ = e(k/m_S)`.
    pub fn deligne_class(&self, k: u64, mode: ExtensionMode) -> Result<DivisorClass> {
        if k < 1 || k > self.m_s {
            return Err(Error::OutOfRange(format!(
                "k = {k} outside 1..={}",
                self.m_s
            )));
        }
        let mut c = DivisorClass::zero(self.ring.rank());
        c.add_scaled(&self.base_class(), k as i64);
        for d in &self.boundary {
            c.add_scaled(&d.class, self.extension_coefficient(d, k, mode));
        }
        Ok(c)
    }

    /// Sum of the boundary classes.
    fn boundary_sum(&self) -> DivisorClass {
        let mut c = DivisorClass::zero(self.ring.rank());
        for d in &self.boundary {
            c.add_scaled(&d.class, 1);
        }
        c
    }

    /// Chern data of the tangent bundle of `S̃`.
    pub fn tangent(&self) -> ChernData {
        let ring = self.ring.clone();
        match self.kind {
            ModelKind::Point => ChernData::trivial(ring, 0),
            ModelKind::Curve => {
                let c1 = ring.from_ints(&[0, 2]);
                ChernData::new(ring, 1, vec![c1]).expect("degree-1 class")
            }
            ModelKind::Surface => {
                let s = self.blown.len();
                let mut c1 = vec![0i64; ring.rank()];
                c1[1] = 3;
                for i in 0..s {
                    c1[2 + i] = -1;
                }
                let c1 = ring.from_ints(&c1);
                let mut c2 = vec![0i64; ring.rank()];
                c2[ring.rank() - 1] = 3 + s as i64;
                let c2 = ring.from_ints(&c2);
                ChernData::new(ring, 2, vec![c1, c2]).expect("graded classes")
            }
        }
    }

    /// Chern data of `Ω^q_S̃(log D)`.
    pub fn log_chern(&self, q: usize) -> Result<ChernData> {
        let ring = self.ring.clone();
        if q > self.dim {
            return Err(Error::OutOfRange(format!(
                "q = {q} exceeds dim S = {}",
                self.dim
            )));
        }
        if q == 0 {
            return Ok(ChernData::trivial(ring, 1));
        }
        let d_sum = self.boundary_sum().to_elem(&ring);
        match (self.kind, q) {
            (ModelKind::Curve, 1) => {
                let k = ring.from_ints(&[0, -2]);
                ChernData::line_bundle(ring, k.add(&d_sum))
            }
            (ModelKind::Surface, 1) => {
                // c(Ω^1) Π_i (1 - D_i)^{-1}
                let tangent = self.tangent().dual();
                let mut total = tangent.total();
                for d in &self.boundary {
                    let factor = ring.one().sub(&d.class.to_elem(&ring));
                    let inv = ring.invert(&factor).expect("unit constant term");
                    total = ring.mul(&total, &inv);
                }
                ChernData::from_total(ring, 2, &total)
            }
            (ModelKind::Surface, 2) => {
                let k = self.tangent().c(1).neg();
                ChernData::line_bundle(ring, k.add(&d_sum))
            }
            _ => unreachable!("q bounded by the model dimension"),
        }
    }

    pub fn to_json(&self, arr: &Arrangement) -> Value {
        let boundary: Vec<Value> = self
            .boundary
            .iter()
            .map(|d| {
                let source = match d.source {
                    DivisorSource::Edge(e) => json!({"edge": arr.edge(e).key()}),
                    DivisorSource::Exceptional(e) => json!({"exceptional": arr.edge(e).key()}),
                    DivisorSource::Infinity => json!("infinity"),
                };
                json!({
                    "source": source,
                    "m_rel": d.m_rel,
                    "residue": d.residue,
                    "class": d.class.0,
                })
            })
            .collect();
        json!({
            "edge": self.key,
            "dim": self.dim,
            "m_S": self.m_s,
            "kind": format!("{:?}", self.kind).to_lowercase(),
            "ring": self.ring.name(),
            "basis": self.ring.basis().iter().map(|b| b.label.clone()).collect::<Vec<_>>(),
            "blown_up": self.blown.iter().map(|&e| arr.edge(e).key()).collect::<Vec<_>>(),
            "boundary": boundary,
            "base_class": self.base_class().0,
        })
    }
}

/// A basis vector of `CH_•(Σ)_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaLabel {
    pub name: String,
    pub degree: usize,
    /// The edge whose closure this label is the class of; `None` for the
    /// shared generator of its degree.
    pub edge: Option<usize>,
    sort_key: (usize, Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaBasis {
    n: usize,
    labels: Vec<SigmaLabel>,
}

pub fn own_label_name(set: &[usize], dim: usize) -> String {
    let prefix = match dim {
        0 => "P",
        1 => "L",
        2 => "H",
        _ => "V",
    };
    let wide = set.iter().any(|&j| j + 1 >= 10);
    let parts: Vec<String> = set.iter().map(|j| (j + 1).to_string()).collect();
    let body = if wide {
        parts.join(",")
    } else {
        parts.concat()
    };
    format!("{prefix}_{{{body}}}")
}

impl SigmaBasis {
    /// One label per multiple hyperplane, one per codimension-2 edge outside
    /// `Σ_1`, a shared label in dimension `n-2` when `Σ_1 ≠ ∅`, and a shared
    /// label in each dimension `0..=n-3`.
    pub fn new(arr: &Arrangement) -> Self {
        let n = arr.n();
        let mut labels = Vec::new();
        let sigma: Vec<&Edge> = arr.edges().iter().filter(|e| arr.in_sigma(e)).collect();
        if sigma.is_empty() {
            return SigmaBasis { n, labels };
        }
        let sigma1 = sigma.iter().any(|e| e.codim == 1);
        for e in &sigma {
            let own = (e.codim == 1) || (e.codim == 2 && !arr.in_sigma1(e));
            if own {
                labels.push(SigmaLabel {
                    name: own_label_name(&e.set, e.dim(n)),
                    degree: e.dim(n),
                    edge: Some(e.id),
                    sort_key: (e.codim, e.set.clone()),
                });
            }
        }
        let mut shared = |k: usize| {
            labels.push(SigmaLabel {
                name: format!("CH_{k}"),
                degree: k,
                edge: None,
                sort_key: (n - k, Vec::new()),
            })
        };
        if sigma1 && n >= 2 {
            shared(n - 2);
        }
        for k in 0..n.saturating_sub(2) {
            shared(k);
        }
        labels.sort_by(|a, b| a.sort_key.cmp(&b.sort_key));
        SigmaBasis { n, labels }
    }

    pub fn labels(&self) -> &[SigmaLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn own(&self, edge: usize) -> Option<usize> {
        self.labels.iter().position(|l| l.edge == Some(edge))
    }

    pub fn shared(&self, degree: usize) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l.edge.is_none() && l.degree == degree)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    /// Rank of `CH_k(Σ)_Q` for `k = 0..n-1`.
    pub fn dims(&self) -> Vec<usize> {
        (0..self.n)
            .map(|k| self.labels.iter().filter(|l| l.degree == k).count())
            .collect()
    }
}

/// An element of `CH_•(Σ)_Q` with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaChowVector<C = RatFuncY> {
    pub basis: Arc<SigmaBasis>,
    pub coeffs: Vec<C>,
}

impl<C: Ring> SigmaChowVector<C> {
    pub fn zero(basis: Arc<SigmaBasis>) -> Self {
        let coeffs = vec![C::zero(); basis.len()];
        SigmaChowVector { basis, coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        SigmaChowVector {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        SigmaChowVector {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&C> {
        self.basis.index_of(name).map(|i| &self.coeffs[i])
    }

    /// Degree-0 coefficient: the image under `CH_0(Σ) → Q`.
    pub fn trace(&self) -> C {
        self.basis
            .labels()
            .iter()
            .zip(&self.coeffs)
            .filter(|(l, _)| l.degree == 0)
            .fold(C::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl SigmaChowVector<RatFuncY> {
    pub fn specialize(&self, y0: &Rational) -> Result<SigmaChowVector<Rational>> {
        Ok(SigmaChowVector {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.eval(y0))
                .collect::<Result<_>>()?,
        })
    }
}

impl<C: Ring + fmt::Display> fmt::Display for SigmaChowVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .basis
            .labels()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| format!("({c})[{}]", l.name))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `π_*` of a class on `S̃` into the Chow model of `Σ`. The fundamental
/// class goes to `[S̄]`, exceptional curves contract to zero, and every
/// other class lands on the shared generator of its dimension.
pub fn push_to_sigma<C: Ring>(
    model: &StratumModel,
    class: &GradedClass<C>,
    basis: &Arc<SigmaBasis>,
) -> Result<SigmaChowVector<C>> {
    let mut out = SigmaChowVector::<C>::zero(basis.clone());
    for (i, c) in class.dual().coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let b = &model.ring.basis()[i];
        if b.label.starts_with("eps") {
            continue;
        }
        let k = model.dim - b.degree;
        let target = if k == model.dim {
            basis.own(model.edge).or_else(|| basis.shared(k))
        } else {
            basis.shared(k)
        };
        let target = target.ok_or_else(|| {
            Error::OutOfRange(format!(
                "no Chow generator of dimension {k} for stratum {}",
                model.key
            ))
        })?;
        out.coeffs[target] = out.coeffs[target].clone() + c.clone();
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowTable {
    /// `rank CH_k(X)_Q` for `k = 0..n-1`.
    pub x: Vec<usize>,
    /// `rank CH_k(Σ)_Q` for `k = 0..n-1`.
    pub sigma: Vec<usize>,
}

pub fn chow_dims(arr: &Arrangement) -> ChowTable {
    let n = arr.n();
    let r = arr.hyperplanes().len();
    let x = (0..n).map(|k| if k == n - 1 { r } else { 1 }).collect();
    ChowTable {
        x,
        sigma: SigmaBasis::new(arr).dims(),
    }
}

/// `rank Gr^W_{-k} H_k(X, Q)` for `k = 0..=2n-2`.
pub fn homology_weight_dims(arr: &Arrangement) -> Vec<usize> {
    let n = arr.n();
    let r = arr.hyperplanes().len();
    (0..=2 * n - 2)
        .map(|k| {
            if k == 2 * n - 2 {
                r
            } else if k % 2 == 0 {
                1
            } else {
                0
            }
        })
        .collect()
}

/// Models of every stratum of `Σ ∖ X'`, keyed by edge id.
pub fn compactify_all(arr: &Arrangement) -> Result<BTreeMap<usize, StratumModel>> {
    arr.sigma_strata()
        .iter()
        .map(|s| compactify(arr, s).map(|m| (s.edge, m)))
        .collect()
}

/// Convert a [`RingElem`] with rational entries into [`RingElemY`].
pub fn lift_elem(a: &RingElem<Rational>) -> RingElemY {
    a.map(|c| RatFuncY::constant(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;

    fn build(n: usize, rows: &[(&[i64], u64)]) -> Arrangement {
        Arrangement::build(
            n,
            rows.iter()
                .map(|(c, m)| Hyperplane {
                    coeffs: c.iter().map(|&x| int(x)).collect(),
                    mult: *m,
                })
                .collect(),
        )
        .unwrap()
    }

    fn model_of(arr: &Arrangement, key: &str) -> StratumModel {
        let s = arr
            .sigma_strata()
            .into_iter()
            .find(|s| arr.edge(s.edge).key() == key)
            .unwrap();
        compactify(arr, &s).unwrap()
    }

    fn double_line() -> Arrangement {
        build(2, &[(&[1, 0, 0], 2)])
    }

    fn four_planes() -> Arrangement {
        build(
            3,
            &[
                (&[1, 0, 0, 0], 1),
                (&[0, 1, 0, 0], 1),
                (&[0, 0, 1, 0], 1),
                (&[0, 0, 0, 1], 1),
            ],
        )
    }

    fn pencil() -> Arrangement {
        build(
            3,
            &[(&[1, 0, 0, 0], 1), (&[0, 1, 0, 0], 1), (&[1, 1, 0, 0], 1)],
        )
    }

    /// A double plane crossed by three planes through a common line.
    fn double_plane_pencil() -> Arrangement {
        build(
            3,
            &[
                (&[1, 0, 0, 0], 2),
                (&[0, 1, 0, 0], 1),
                (&[0, 0, 1, 0], 1),
                (&[0, 1, 1, 0], 1),
                (&[1, 1, 1, 1], 1),
            ],
        )
    }

    #[test]
    fn curve_models() {
        let two = build(3, &[(&[1, 0, 0, 0], 1), (&[0, 1, 0, 0], 1)]);
        let m = model_of(&two, "1,2");
        assert_eq!(m.kind, ModelKind::Curve);
        assert_eq!(m.boundary.len(), 1);
        assert_eq!(m.boundary[0].source, DivisorSource::Infinity);
        let d = model_of(&double_line(), "1");
        assert_eq!((d.kind, d.boundary.len()), (ModelKind::Curve, 1));
    }

    #[test]
    fn surface_models() {
        let a = build(
            3,
            &[
                (&[1, 0, 0, 0], 2),
                (&[0, 1, 0, 0], 1),
                (&[0, 0, 1, 0], 1),
                (&[0, 0, 0, 1], 1),
            ],
        );
        let m = model_of(&a, "1");
        assert_eq!(m.kind, ModelKind::Surface);
        assert!(m.blown.is_empty());
        assert_eq!(m.boundary.len(), 4);
        let b = double_plane_pencil();
        let m = model_of(&b, "1");
        assert_eq!(m.blown.len(), 1);
        assert_eq!(b.edge(m.blown[0]).key(), "1,2,3,4");
    }

    #[test]
    fn residue_examples() {
        let d = model_of(&double_line(), "1");
        assert_eq!(d.boundary[0].residue, 0);
        let f = four_planes();
        let m = model_of(&f, "1,2");
        let from3 = m
            .boundary
            .iter()
            .find(|b| matches!(b.source, DivisorSource::Edge(e) if f.edge(e).key() == "1,2,3"))
            .unwrap();
        assert_eq!(from3.residue, 1);
        let p = model_of(&pencil(), "1,2,3");
        assert_eq!(p.boundary.last().unwrap().residue, 0);
    }

    #[test]
    fn deligne_examples() {
        let d = model_of(&double_line(), "1");
        assert_eq!(
            d.deligne_class(1, ExtensionMode::OpenClosed).unwrap().0,
            vec![0, -1]
        );
        let p = model_of(&pencil(), "1,2,3");
        for k in 1..=3 {
            assert_eq!(
                p.deligne_class(k, ExtensionMode::OpenClosed).unwrap().0,
                vec![0, -1]
            );
        }
        assert!(p.deligne_class(0, ExtensionMode::OpenClosed).is_err());
        assert!(p.deligne_class(4, ExtensionMode::OpenClosed).is_err());
    }

    #[test]
    fn residue_windows_and_power_identity() {
        for a in [
            double_line(),
            four_planes(),
            pencil(),
            double_plane_pencil(),
        ] {
            for (_, m) in compactify_all(&a).unwrap() {
                assert!(m.power_identity_holds(), "{}", m.key);
                for d in &m.boundary {
                    assert!(d.residue < m.m_s);
                    for k in 1..=m.m_s {
                        let r = m.connection_residue(d, k, ExtensionMode::OpenClosed);
                        assert!(r > int(0) && r <= int(1));
                        let r = m.connection_residue(d, k, ExtensionMode::ClosedOpen);
                        assert!(r >= int(0) && r < int(1));
                    }
                }
            }
        }
    }

    #[test]
    fn log_chern_examples() {
        let f = four_planes();
        // a line of the four planes meets the two other planes and X'
        let m = model_of(&f, "1,2");
        assert_eq!(m.boundary.len(), 3);
        let c = m.log_chern(1).unwrap();
        assert_eq!(m.ring.integrate(&c.c(1)), RatFuncY::from_int(1));
        let two = build(
            3,
            &[(&[1, 0, 0, 0], 1), (&[0, 1, 0, 0], 1), (&[0, 0, 1, 0], 1)],
        );
        let m = model_of(&two, "1,2");
        assert_eq!(
            m.ring.integrate(&m.log_chern(1).unwrap().c(1)),
            RatFuncY::from_int(0)
        );
        // the plane of a double plane meeting two planes: D = 2 lines + X'
        let a = build(
            3,
            &[(&[1, 0, 0, 0], 2), (&[0, 1, 0, 0], 1), (&[0, 0, 1, 0], 1)],
        );
        let s = model_of(&a, "1");
        assert!(s.log_chern(2).unwrap().c(1).is_zero());
        assert!(s.log_chern(3).is_err());
    }

    #[test]
    fn surface_intersection_numbers() {
        let b = double_plane_pencil();
        let m = model_of(&b, "1");
        let lines: Vec<&BoundaryDivisor> = m
            .boundary
            .iter()
            .filter(|d| matches!(d.source, DivisorSource::Edge(_)))
            .collect();
        for (i, a) in lines.iter().enumerate() {
            for c in &lines[i + 1..] {
                let prod = m
                    .ring
                    .mul(&a.class.to_elem(&m.ring), &c.class.to_elem(&m.ring));
                let shared = a.class.0[2..]
                    .iter()
                    .zip(&c.class.0[2..])
                    .filter(|(x, y)| **x != 0 && **y != 0)
                    .count();
                let expected = if shared == 0 { 1 } else { 0 };
                assert_eq!(m.ring.integrate(&prod), RatFuncY::from_int(expected));
            }
        }
        // Todd genus of a rational surface
        assert_eq!(m.ring.integrate(&m.tangent().todd()), RatFuncY::from_int(1));
    }

    #[test]
    fn sigma_basis_labels() {
        let f = four_planes();
        let basis = SigmaBasis::new(&f);
        assert_eq!(basis.dims(), vec![1, 6, 0]);
        let names: Vec<&str> = basis.labels().iter().map(|l| l.name.as_str()).collect();
        assert_eq!(
            names,
            ["L_{12}", "L_{13}", "L_{14}", "L_{23}", "L_{24}", "L_{34}", "CH_0"]
        );
        let d = SigmaBasis::new(&double_line());
        let names: Vec<&str> = d.labels().iter().map(|l| l.name.as_str()).collect();
        assert_eq!(names, ["L_{1}", "CH_0"]);
        assert!(SigmaBasis::new(&build(2, &[(&[1, 0, 0], 1)])).is_empty());
        assert_eq!(own_label_name(&[0, 10], 0), "P_{1,11}");
    }

    #[test]
    fn push_examples() {
        let f = four_planes();
        let basis = Arc::new(SigmaBasis::new(&f));
        let m = model_of(&f, "1,2");
        let fundamental = GradedClass::new(m.ring.clone(), m.ring.one::<Rational>());
        let pushed = push_to_sigma(&m, &fundamental, &basis).unwrap();
        assert_eq!(pushed.get("L_{12}"), Some(&int(1)));
        let pt = GradedClass::new(m.ring.clone(), m.ring.basis_elem::<Rational>(1));
        let pushed = push_to_sigma(&m, &pt, &basis).unwrap();
        assert_eq!(pushed.get("CH_0"), Some(&int(1)));
        assert_eq!(pushed.trace(), int(1));

        let b = double_plane_pencil();
        let basis = Arc::new(SigmaBasis::new(&b));
        let s = model_of(&b, "1");
        let eps = GradedClass::new(s.ring.clone(), s.ring.basis_elem::<Rational>(2));
        assert!(push_to_sigma(&s, &eps, &basis).unwrap().is_zero());
    }

    #[test]
    fn structure_tables() {
        for r in 1..=5 {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| vec![1, i, i * i]).collect();
            let refs: Vec<(&[i64], u64)> = rows.iter().map(|c| (c.as_slice(), 1)).collect();
            let a = build(2, &refs);
            assert_eq!(chow_dims(&a).x, vec![1, r as usize]);
            assert_eq!(homology_weight_dims(&a), vec![1, 0, r as usize]);
        }
        let f = four_planes();
        assert_eq!(chow_dims(&f).sigma[..2], [1, 6]);
        assert_eq!(homology_weight_dims(&f), vec![1, 0, 1, 0, 4]);
    }

    #[test]
    fn unsupported_dimension() {
        let a = build(4, &[(&[1, 0, 0, 0, 0], 2)]);
        let s = a.sigma_strata();
        assert!(matches!(
            compactify(&a, &s[0]),
            Err(Error::UnsupportedStratum { dim: 3, .. })
        ));
    }
}
