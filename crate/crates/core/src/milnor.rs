//! Assembly of the Hirzebruch-Milnor class `M_y(X)` from strata spectra, the
//! independent `y = -1` Chern-Milnor path, degree-0 comparison against the
//! virtual genus, and the sign-convention calibration harness.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ambient::{poly_json, virtual_genus, GradedClass};
use crate::arrangement::{Arrangement, ChiTarget};
use crate::coeffs::rational::{self, int};
use crate::coeffs::{Field, Ring};
use crate::error::{Error, Result};
use crate::genera::KClass;
use crate::spectra::{resolve, sp_shift, GermKind, Spectrum, UserTables};
use crate::strata::{
    compactify, push_to_sigma, ExtensionMode, ModelKind, SigmaBasis, SigmaChowVector, StratumModel,
};
use crate::{PolyY, RatFuncY, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GlobalSignMode {
    AsPrinted,
    /// Negate the contribution of every odd-dimensional stratum.
    FlipOddStrata,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionSet {
    pub global_sign_mode: GlobalSignMode,
    pub extension_mode: ExtensionMode,
    pub notes: String,
}

impl Default for ConventionSet {
    fn default() -> Self {
        ConventionSet {
            global_sign_mode: GlobalSignMode::AsPrinted,
            extension_mode: ExtensionMode::OpenClosed,
            notes: String::new(),
        }
    }
}

impl ConventionSet {
    /// The four conventions, default first.
    pub fn all() -> Vec<ConventionSet> {
        let mut out = Vec::new();
        for global_sign_mode in [GlobalSignMode::AsPrinted, GlobalSignMode::FlipOddStrata] {
            for extension_mode in [ExtensionMode::OpenClosed, ExtensionMode::ClosedOpen] {
                out.push(ConventionSet {
                    global_sign_mode,
                    extension_mode,
                    notes: String::new(),
                });
            }
        }
        out
    }

    pub fn sign_name(&self) -> &'static str {
        match self.global_sign_mode {
            GlobalSignMode::AsPrinted => "as_printed",
            GlobalSignMode::FlipOddStrata => "flip_odd_strata",
        }
    }

    pub fn extension_name(&self) -> &'static str {
        match self.extension_mode {
            ExtensionMode::OpenClosed => "res_in_(0,1]",
            ExtensionMode::ClosedOpen => "res_in_[0,1)",
        }
    }

    fn sign_for(&self, dim: usize) -> i64 {
        match self.global_sign_mode {
            GlobalSignMode::FlipOddStrata if dim % 2 == 1 => -1,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "global_sign_mode": self.sign_name(),
            "extension_mode": self.extension_name(),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for ConventionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.sign_name(), self.extension_name())
    }
}

/// Parses `sign[,extension]`, e.g. `flip_odd_strata,res_in_[0,1)`. Either
/// axis may be omitted and keeps its default.
impl FromStr for ConventionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut conv = ConventionSet::default();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let token = [
                "as_printed",
                "flip_odd_strata",
                "res_in_(0,1]",
                "res_in_[0,1)",
            ]
            .into_iter()
            .find(|t| rest.starts_with(t))
            .ok_or_else(|| Error::Parse(format!("unknown convention in {s:?}")))?;
            match token {
                "as_printed" => conv.global_sign_mode = GlobalSignMode::AsPrinted,
                "flip_odd_strata" => conv.global_sign_mode = GlobalSignMode::FlipOddStrata,
                "res_in_(0,1]" => conv.extension_mode = ExtensionMode::OpenClosed,
                _ => conv.extension_mode = ExtensionMode::ClosedOpen,
            }
            rest = rest[token.len()..].trim_start_matches([',', ' ']);
        }
        Ok(conv)
    }
}

/// `td_{(1+y)*}` of a K-class on the model: `ch(E) td(TS̃) ∩ [S̃]`, with
/// the homology-degree-`k` part multiplied by `(1+y)^{-k}`.
pub fn td_1py(e: &KClass, model: &StratumModel) -> GradedClass {
    let ring = &model.ring;
    let td = model.tangent().todd();
    let class = GradedClass::new(ring.clone(), ring.mul(e.ch(), &td));
    let inv = RatFuncY::one_plus_y().inverse().expect("1+y is a unit");
    (0..=model.dim).fold(GradedClass::new(ring.clone(), ring.zero()), |acc, k| {
        acc.add(&class.part(k).scale(&inv.pow(k as i32)))
    })
}

/// `k ∈ {1..m_S}` with `e(-α) = e(k/m_S)`.
pub fn eigen_index(alpha: &Rational, m_s: u64) -> Result<u64> {
    let scaled = -alpha * int(m_s as i64);
    if !scaled.is_integer() {
        return Err(Error::OutOfRange(format!(
            "α = {alpha} is not a multiple of 1/{m_s}"
        )));
    }
    let r = scaled.to_integer() % num_bigint::BigInt::from(m_s);
    let r: i64 = r.try_into().expect("residue fits");
    let k = r.rem_euclid(m_s as i64) as u64;
    Ok(if k == 0 { m_s } else { k })
}

fn neg_y_pow(e: usize) -> RatFuncY {
    (RatFuncY::y() * RatFuncY::from_int(-1)).pow(e as i32)
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One `(α, q)` term of the assembly on one stratum, before the global sign.
pub fn stratum_term(
    model: &StratumModel,
    alpha: &Rational,
    n_alpha: i64,
    q: usize,
    mode: ExtensionMode,
    basis: &Arc<SigmaBasis>,
) -> Result<SigmaChowVector> {
    let k = eigen_index(alpha, model.m_s)?;
    let c1 = model.deligne_class(k, mode)?.to_elem(&model.ring);
    let bundle =
        KClass::line_bundle(model.ring.clone(), &c1).tensor(&model.log_chern(q)?.chern_character());
    let pushed = push_to_sigma(model, &td_1py(&bundle, model), basis)?;
    let n = model.n;
    let floor = (int(n as i64) - alpha).floor().to_integer();
    let floor: usize = floor
        .try_into()
        .map_err(|_| Error::OutOfRange(format!("α = {alpha} ≥ n")))?;
    let scalar = RatFuncY::from_int(sign(q + n - 1) * n_alpha) * neg_y_pow(floor + q);
    Ok(pushed.scale(&scalar))
}

#[derive(Clone, Debug)]
pub struct StratumContribution {
    pub edge: usize,
    pub key: String,
    pub dim: usize,
    pub kind: GermKind,
    pub spectrum: Spectrum,
    pub model: Option<ModelKind>,
    pub contribution: SigmaChowVector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Degree0Check {
    pub trace: PolyY,
    pub delta: PolyY,
    pub equal: bool,
}

impl Degree0Check {
    pub fn to_json(&self) -> Value {
        json!({
            "trace": poly_json(&self.trace),
            "delta": poly_json(&self.delta),
            "status": if self.equal { "equal" } else { "unequal" },
        })
    }
}

#[derive(Clone, Debug)]
pub struct MilnorReport {
    pub name: Option<String>,
    pub conventions: ConventionSet,
    pub basis: Arc<SigmaBasis>,
    pub m_y: SigmaChowVector,
    pub strata: Vec<StratumContribution>,
    pub specializations: BTreeMap<String, SigmaChowVector<Rational>>,
    pub degree0: Degree0Check,
    pub chern_milnor: SigmaChowVector<Rational>,
    pub cross_path_ok: bool,
}

fn to_polys(v: &SigmaChowVector) -> Result<Vec<PolyY>> {
    v.coeffs
        .iter()
        .map(|c| {
            c.to_poly()
                .ok_or_else(|| Error::NonPolynomial(format!("coefficient {c}")))
        })
        .collect()
}

pub fn chow_json(v: &SigmaChowVector) -> Result<Value> {
    let polys = to_polys(v)?;
    let mut map = serde_json::Map::new();
    for (l, p) in v.basis.labels().iter().zip(&polys) {
        map.insert(l.name.clone(), poly_json(p));
    }
    Ok(Value::Object(map))
}

pub fn chow_json_rational(v: &SigmaChowVector<Rational>) -> Value {
    let mut map = serde_json::Map::new();
    for (l, c) in v.basis.labels().iter().zip(&v.coeffs) {
        map.insert(l.name.clone(), Value::String(rational::format(c)));
    }
    Value::Object(map)
}

impl MilnorReport {
    /// `M_y` coefficients as polynomials, in basis order.
    pub fn m_y_polys(&self) -> Vec<PolyY> {
        to_polys(&self.m_y).expect("checked during assembly")
    }

    pub fn to_json(&self) -> Value {
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| {
                json!({
                    "edge": s.key,
                    "dim": s.dim,
                    "germ": s.kind.to_string(),
                    "spectrum": s.spectrum.to_json(),
                    "model": s.model.map(|m| format!("{m:?}").to_lowercase()),
                    "contribution": chow_json(&s.contribution).expect("checked during assembly"),
                })
            })
            .collect();
        let specializations: serde_json::Map<String, Value> = self
            .specializations
            .iter()
            .map(|(y, v)| (y.clone(), chow_json_rational(v)))
            .collect();
        json!({
            "name": self.name,
            "conventions": self.conventions.to_json(),
            "labels": self.basis.labels().iter().map(|l| l.name.clone()).collect::<Vec<_>>(),
            "M_y": chow_json(&self.m_y).expect("checked during assembly"),
            "strata": strata,
            "specializations": specializations,
            "degree0": self.degree0.to_json(),
            "chern_milnor": chow_json_rational(&self.chern_milnor),
            "cross_path_ok": self.cross_path_ok,
        })
    }
}

/// `M_y(X) = Σ_{S,α,q} (-1)^{q+n-1} n_{f,S,α} π_* td_{(1+y)*}(L_{S̃,e(-α)} ⊗ Ω^q(log D)) (-y)^{⌊n-α⌋+q}`.
pub fn assemble(
    arr: &Arrangement,
    user: &UserTables,
    conv: &ConventionSet,
) -> Result<MilnorReport> {
    let n = arr.n();
    let basis = Arc::new(SigmaBasis::new(arr));
    let spectra = resolve(arr, user)?;
    let strata = arr.sigma_strata();

    let mut prepared = Vec::new();
    for (s, sp) in strata.iter().zip(&spectra) {
        debug_assert_eq!(s.edge, sp.edge);
        let shifted = sp_shift(&sp.germ, s.dim, n)?;
        let model = if shifted.is_empty() {
            None
        } else {
            Some(compactify(arr, s)?)
        };
        prepared.push((s, sp, shifted, model));
    }

    // (stratum index, α, n_α, q)
    let jobs: Vec<(usize, &Rational, i64, usize)> = prepared
        .iter()
        .enumerate()
        .flat_map(|(i, (s, _, sp, _))| {
            sp.entries()
                .iter()
                .flat_map(move |(a, &m)| (0..=s.dim).map(move |q| (i, a, m, q)))
        })
        .collect();
    let terms: Vec<SigmaChowVector> = jobs
        .par_iter()
        .map(|&(i, alpha, m, q)| {
            let model = prepared[i]
                .3
                .as_ref()
                .expect("model built for nonempty spectrum");
            stratum_term(model, alpha, m, q, conv.extension_mode, &basis)
        })
        .collect::<Result<_>>()?;

    let mut contributions = Vec::new();
    for (i, (s, sp, shifted, model)) in prepared.iter().enumerate() {
        let sum = jobs
            .iter()
            .zip(&terms)
            .filter(|((j, ..), _)| *j == i)
            .fold(SigmaChowVector::zero(basis.clone()), |acc, (_, t)| {
                acc.add(t)
            })
            .scale(&RatFuncY::from_int(conv.sign_for(s.dim)));
        let key = arr.edge(s.edge).key();
        if let Some(c) = sum.coeffs.iter().find(|c| !c.is_polynomial()) {
            return Err(Error::NonPolynomial(format!(
                "stratum {key}: coefficient {c}"
            )));
        }
        contributions.push(StratumContribution {
            edge: s.edge,
            key,
            dim: s.dim,
            kind: sp.kind.clone(),
            spectrum: shifted.clone(),
            model: model.as_ref().map(|m| m.kind),
            contribution: sum,
        });
    }
    let m_y = contributions
        .iter()
        .fold(SigmaChowVector::zero(basis.clone()), |acc, c| {
            acc.add(&c.contribution)
        });

    let mut specializations = BTreeMap::new();
    for y0 in [-1, 0, 1] {
        specializations.insert(y0.to_string(), m_y.specialize(&int(y0))?);
    }
    let degree0 = degree0_check(arr, &m_y)?;
    let chern = chern_milnor(arr)?;
    let cross_path_ok = specializations["-1"] == chern;
    Ok(MilnorReport {
        name: arr.name().map(str::to_string),
        conventions: conv.clone(),
        basis,
        m_y,
        strata: contributions,
        specializations,
        degree0,
        chern_milnor: chern,
        cross_path_ok,
    })
}

/// `M(X) = Σ_S χ̃(F_{f,S}) π_*(c(Ω^1(log D)^∨) ∩ [S̃])`.
pub fn chern_milnor(arr: &Arrangement) -> Result<SigmaChowVector<Rational>> {
    let basis = Arc::new(SigmaBasis::new(arr));
    let mut out = SigmaChowVector::<Rational>::zero(basis.clone());
    for s in arr.sigma_strata() {
        let chi = arr.localize(arr.edge(s.edge)).milnor_fiber_chi() - 1;
        if chi == 0 {
            continue;
        }
        let model = compactify(arr, &s)?;
        let c = if model.kind == ModelKind::Point {
            model.ring.one::<RatFuncY>()
        } else {
            model.log_chern(1)?.dual().total()
        };
        let c = c.try_map(|x| x.eval(&Rational::zero()))?;
        let pushed = push_to_sigma(&model, &GradedClass::new(model.ring.clone(), c), &basis)?;
        out = out.add(&pushed.scale(&int(chi)));
    }
    Ok(out)
}

/// Compare `Tr M_y` with `Δ(y) = χ_y^{vir}(m, n) - χ_y(X)`.
pub fn degree0_check(arr: &Arrangement, m_y: &SigmaChowVector) -> Result<Degree0Check> {
    let trace = m_y
        .trace()
        .to_poly()
        .ok_or_else(|| Error::NonPolynomial("trace of M_y".into()))?;
    let delta = virtual_genus(arr.m(), arr.n())? - arr.chi_y(ChiTarget::X)?;
    Ok(Degree0Check {
        equal: trace == delta,
        trace,
        delta,
    })
}

/// One arrangement of a calibration suite.
#[derive(Clone, Debug)]
pub struct SuiteMember {
    pub name: String,
    pub arrangement: Arrangement,
    pub tables: UserTables,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MemberOutcome {
    pub name: String,
    /// `None` when assembly failed under this convention.
    pub degree0: Option<Degree0Check>,
    pub cross_path_ok: bool,
    /// Every singular stratum is a point.
    pub point_strata_only: bool,
    /// Assembly succeeded, so every stratum sum was a polynomial.
    pub polynomial: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConventionOutcome {
    pub conventions: ConventionSet,
    pub members: Vec<MemberOutcome>,
}

impl ConventionOutcome {
    pub fn agreements(&self) -> usize {
        self.members.iter().filter(|m| m.degree0_equal()).count()
    }

    /// Degree-0 exactness on every member whose strata are all points.
    pub fn point_strata_exact(&self) -> bool {
        self.members
            .iter()
            .filter(|m| m.point_strata_only)
            .all(MemberOutcome::degree0_equal)
    }

    pub fn cross_path_all(&self) -> bool {
        self.members.iter().all(|m| m.cross_path_ok)
    }

    pub fn polynomial_all(&self) -> bool {
        self.members.iter().all(|m| m.polynomial)
    }

    /// Members where the assembled trace and the virtual-genus difference disagree.
    pub fn degree0_tension(&self) -> Vec<&str> {
        self.members
            .iter()
            .filter(|m| m.degree0.is_some() && !m.degree0_equal())
            .map(|m| m.name.as_str())
            .collect()
    }
}

impl MemberOutcome {
    pub fn degree0_equal(&self) -> bool {
        self.degree0.as_ref().is_some_and(|d| d.equal)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationReport {
    pub outcomes: Vec<ConventionOutcome>,
    pub chosen: ConventionSet,
}

impl CalibrationReport {
    pub fn outcome(&self, conv: &ConventionSet) -> Option<&ConventionOutcome> {
        self.outcomes.iter().find(|o| {
            o.conventions.global_sign_mode == conv.global_sign_mode
                && o.conventions.extension_mode == conv.extension_mode
        })
    }

    pub fn to_json(&self) -> Value {
        let outcomes: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let members: Vec<Value> = o
                    .members
                    .iter()
                    .map(|m| {
                        json!({
                            "name": m.name,
                            "degree0": m.degree0.as_ref().map(Degree0Check::to_json),
                            "cross_path_ok": m.cross_path_ok,
                            "point_strata_only": m.point_strata_only,
                            "polynomial": m.polynomial,
                            "error": m.error,
                        })
                    })
                    .collect();
                json!({
                    "conventions": o.conventions.to_json(),
                    "degree0_agreements": o.agreements(),
                    "point_strata_exact": o.point_strata_exact(),
                    "cross_path_all": o.cross_path_all(),
                    "polynomial_all": o.polynomial_all(),
                    "degree0_tension": o.degree0_tension(),
                    "members": members,
                })
            })
            .collect();
        json!({
            "chosen": self.chosen.to_json(),
            "outcomes": outcomes,
        })
    }
}

/// Evaluate every convention on the suite and pick the one with the most
/// degree-0 agreements; ties go to the earlier entry of
/// [`ConventionSet::all`], i.e. toward `as_printed` and the default
/// extension.
pub fn calibrate(suite: &[SuiteMember]) -> CalibrationReport {
    if suite.is_empty() {
        return CalibrationReport {
            outcomes: Vec::new(),
            chosen: ConventionSet::default(),
        };
    }
    let outcomes: Vec<ConventionOutcome> = ConventionSet::all()
        .into_iter()
        .map(|conv| {
            let members = suite
                .iter()
                .map(|m| {
                    let point_strata_only = m.arrangement.sigma_strata().iter().all(|s| s.dim == 0);
                    match assemble(&m.arrangement, &m.tables, &conv) {
                        Ok(r) => MemberOutcome {
                            name: m.name.clone(),
                            degree0: Some(r.degree0),
                            cross_path_ok: r.cross_path_ok,
                            point_strata_only,
                            polynomial: true,
                            error: None,
                        },
                        Err(e) => MemberOutcome {
                            name: m.name.clone(),
                            degree0: None,
                            cross_path_ok: false,
                            point_strata_only,
                            polynomial: !matches!(e, Error::NonPolynomial(_)),
                            error: Some(e.to_string()),
                        },
                    }
                })
                .collect();
            ConventionOutcome {
                conventions: conv,
                members,
            }
        })
        .collect();
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.agreements() > outcomes[best].agreements() {
            best = i;
        }
    }
    let mut chosen = outcomes[best].conventions.clone();
    chosen.notes = format!(
        "{} of {} suite members agree in degree 0",
        outcomes[best].agreements(),
        suite.len()
    );
    CalibrationReport { outcomes, chosen }
}
