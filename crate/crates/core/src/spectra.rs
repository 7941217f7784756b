//! Steenbrink spectra of the transversal germs `f^S` of an arrangement.
//!
//! Spectra are stored in the germ frame: the support of a germ on `C^d` lies
//! in `(0, d)`. The stratum frame is produced on demand by [`sp_shift`].

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, LocalizedArrangement};
use crate::coeffs::rational::{self, frac, int};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    /// Germ of a function on `C^d` at the origin.
    Germ(usize),
    /// Shifted to a stratum of dimension `dim` in an ambient space of
    /// dimension `n`.
    Stratum { n: usize, dim: usize },
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frame::Germ(d) => write!(f, "germ({d})"),
            Frame::Stratum { n, dim } => write!(f, "stratum(n={n}, dim={dim})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    entries: BTreeMap<Rational, i64>,
    frame: Frame,
}

impl Spectrum {
    pub fn new(frame: Frame) -> Self {
        Spectrum {
            entries: BTreeMap::new(),
            frame,
        }
    }

    pub fn from_entries(frame: Frame, entries: impl IntoIterator<Item = (Rational, i64)>) -> Self {
        let mut sp = Self::new(frame);
        for (alpha, n) in entries {
            sp.add(alpha, n);
        }
        sp
    }

    pub fn add(&mut self, alpha: Rational, n: i64) {
        let slot = self.entries.entry(alpha.clone()).or_insert(0);
        *slot += n;
        if *slot == 0 {
            self.entries.remove(&alpha);
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn entries(&self) -> &BTreeMap<Rational, i64> {
        &self.entries
    }

    pub fn get(&self, alpha: &Rational) -> i64 {
        self.entries.get(alpha).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_α n_α`.
    pub fn mass(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> Vec<SpectrumEntry> {
        self.entries
            .iter()
            .map(|(alpha, &mult)| SpectrumEntry {
                alpha: alpha.clone(),
                mult,
            })
            .collect()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (alpha, &n)) in self.entries.iter().enumerate() {
            let sign = if n < 0 { "-" } else { "+" };
            if i == 0 {
                if n < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if n.abs() != 1 {
                write!(f, "{}", n.abs())?;
            }
            if alpha.is_one() {
                f.write_str("t")?;
            } else if alpha.is_integer() {
                write!(f, "t^{alpha}")?;
            } else {
                write!(f, "t^{{{alpha}}}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(with = "rational")]
    pub alpha: Rational,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GermKind {
    /// `∏ y_i^{m_i}` on `C^r`.
    Monomial(Vec<u64>),
    /// `k` distinct reduced lines through the origin of `C^2`.
    OrdinaryPoint(u64),
    /// Supplied by the user under the given edge key.
    UserTable(String),
}

impl fmt::Display for GermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermKind::Monomial(m) => {
                let parts: Vec<String> = m.iter().map(u64::to_string).collect();
                write!(f, "monomial({})", parts.join(","))
            }
            GermKind::OrdinaryPoint(k) => write!(f, "ordinary({k})"),
            GermKind::UserTable(key) => write!(f, "user({key})"),
        }
    }
}

/// Spectrum of `∏_{i=1}^r y_i^{m_i}` at the origin:
/// `(Σ_{k=1}^{g} t^{k/g}) (1-t)^{r-1} - (-1)^{r-1} t^r` with `g = gcd(m_i)`.
pub fn sp_monomial(exponents: &[u64]) -> Result<Spectrum> {
    if exponents.is_empty() || exponents.contains(&0) {
        return Err(Error::OutOfRange(
            "monomial exponents must be positive and nonempty".into(),
        ));
    }
    let r = exponents.len();
    let g = exponents.iter().fold(0u64, |acc, &m| acc.gcd(&m));
    let mut sp = Spectrum::new(Frame::Germ(r));
    for k in 1..=g {
        let base = frac(k as i64, g as i64);
        // (1-t)^{r-1} = Σ_i C(r-1, i) (-t)^i
        let mut binom = 1i64;
        for i in 0..r {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sp.add(&base + int(i as i64), sign * binom);
            binom = binom * (r - 1 - i) as i64 / (i as i64 + 1);
        }
    }
    let sign = if (r - 1).is_multiple_of(2) { 1 } else { -1 };
    sp.add(int(r as i64), -sign);
    Ok(sp)
}

/// Spectrum of `k` concurrent reduced lines in `C^2`, read off the
/// weighted-homogeneous representative `x^k + y^k`.
pub fn sp_ordinary(k: u64) -> Result<Spectrum> {
    if k < 2 {
        return Err(Error::OutOfRange(format!(
            "ordinary point needs k >= 2, got {k}"
        )));
    }
    let k = k as i64;
    let mut sp = Spectrum::new(Frame::Germ(2));
    for i in 1..k {
        for j in 1..k {
            sp.add(frac(i + j, k), 1);
        }
    }
    Ok(sp)
}

/// `n_{f,S,α} = (-1)^{dim S} n_{f^S,0,α-dim S}`.
pub fn sp_shift(germ: &Spectrum, dim: usize, n: usize) -> Result<Spectrum> {
    let expected = Frame::Germ(
        n.checked_sub(dim)
            .ok_or_else(|| Error::OutOfRange("dim S > n".into()))?,
    );
    if germ.frame != expected {
        return Err(Error::FrameMismatch {
            expected: expected.to_string(),
            found: germ.frame.to_string(),
        });
    }
    let sign = if dim.is_multiple_of(2) { 1 } else { -1 };
    Ok(Spectrum::from_entries(
        Frame::Stratum { n, dim },
        germ.entries
            .iter()
            .map(|(a, &m)| (a + int(dim as i64), sign * m)),
    ))
}

/// Inverse of [`sp_shift`].
pub fn sp_unshift(sp: &Spectrum) -> Result<Spectrum> {
    let Frame::Stratum { n, dim } = sp.frame else {
        return Err(Error::FrameMismatch {
            expected: "stratum".into(),
            found: sp.frame.to_string(),
        });
    };
    let sign = if dim % 2 == 0 { 1 } else { -1 };
    Ok(Spectrum::from_entries(
        Frame::Germ(n - dim),
        sp.entries
            .iter()
            .map(|(a, &m)| (a - int(dim as i64), sign * m)),
    ))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self, edge: &str) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::SpectrumValidation {
                edge: edge.to_string(),
                failures: self.failures,
            })
        }
    }
}

/// Whether `f^S` has an isolated singularity: a power of a linear form, or
/// a reduced plane curve.
pub fn is_isolated(l: &LocalizedArrangement) -> bool {
    l.rank == 1 || (l.rank == 2 && l.is_reduced())
}

/// Support, denominator, mass and (for isolated germs) symmetry checks.
pub fn sp_validate(sp: &Spectrum, l: &LocalizedArrangement) -> ValidationReport {
    let mut failures = Vec::new();
    let c = l.rank;
    if sp.frame != Frame::Germ(c) {
        failures.push(format!("frame: expected germ({c}), found {}", sp.frame));
    }
    let m_s = l.m_s();
    let top = int(c as i64);
    for alpha in sp.entries.keys() {
        if !alpha.is_positive() || alpha >= &top {
            failures.push(format!("support: exponent {alpha} outside (0, {c})"));
        }
        if !rational::denominator_divides(alpha, m_s) {
            failures.push(format!(
                "support: denominator of {alpha} does not divide m_S = {m_s}"
            ));
        }
    }
    let sign = if (c - 1).is_multiple_of(2) { 1 } else { -1 };
    let expected = sign * (l.milnor_fiber_chi() - 1);
    if sp.mass() != expected {
        failures.push(format!(
            "mass: sum of multiplicities is {} but (-1)^(c_S-1) (chi(F) - 1) = {expected}",
            sp.mass()
        ));
    }
    if is_isolated(l) {
        for (alpha, &n) in &sp.entries {
            let mirror = &top - alpha;
            if sp.get(&mirror) != n {
                failures.push(format!(
                    "symmetry: n at {alpha} is {n} but n at {mirror} is {}",
                    sp.get(&mirror)
                ));
            }
        }
    }
    ValidationReport { failures }
}

/// The germ type of `f^S` when the built-in catalogue covers it.
pub fn catalogue_kind(l: &LocalizedArrangement) -> Option<GermKind> {
    if l.rank == 1 {
        return Some(GermKind::Monomial(l.mults.clone()));
    }
    if l.is_boolean() {
        return Some(GermKind::Monomial(l.mults.clone()));
    }
    if l.rank == 2 && l.is_reduced() {
        return Some(GermKind::OrdinaryPoint(l.hyperplanes.len() as u64));
    }
    None
}

pub fn catalogue_spectrum(kind: &GermKind) -> Result<Spectrum> {
    match kind {
        GermKind::Monomial(m) => sp_monomial(m),
        GermKind::OrdinaryPoint(k) => sp_ordinary(*k),
        GermKind::UserTable(key) => Err(Error::MissingSpectrum { edge: key.clone() }),
    }
}

/// Germ-frame spectra keyed by edge key (`"1,2,3"`), not yet checked
/// against an arrangement.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UserTables {
    tables: BTreeMap<String, Vec<SpectrumEntry>>,
}

impl UserTables {
    pub fn parse(text: &str) -> Result<Self> {
        let tables: BTreeMap<String, Vec<SpectrumEntry>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("spectrum table: {e}")))?;
        Ok(UserTables { tables })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn insert(&mut self, key: impl Into<String>, sp: &Spectrum) {
        self.tables.insert(key.into(), sp.to_json());
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.tables.keys().map(String::as_str)
    }
}

/// A spectrum attached to one stratum of `Σ ∖ X'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumSpectrum {
    pub edge: usize,
    pub kind: GermKind,
    pub germ: Spectrum,
}

/// Resolve a germ spectrum for every stratum of `Σ ∖ X'`. User tables take
/// precedence over the catalogue; every table is validated and any failure
/// rejects the whole input.
pub fn resolve(arr: &Arrangement, user: &UserTables) -> Result<Vec<StratumSpectrum>> {
    for key in user.keys() {
        match arr.edge_by_key(key) {
            Some(e) if arr.in_sigma(e) => {}
            _ => {
                return Err(Error::SpectrumValidation {
                    edge: key.to_string(),
                    failures: vec!["key: not a stratum of the singular locus".into()],
                })
            }
        }
    }
    arr.sigma_strata()
        .iter()
        .map(|s| {
            let e = arr.edge(s.edge);
            let l = arr.localize(e);
            let key = e.key();
            let (kind, germ) = if let Some(entries) = user.tables.get(&key) {
                let sp = Spectrum::from_entries(
                    Frame::Germ(l.rank),
                    entries.iter().map(|x| (x.alpha.clone(), x.mult)),
                );
                if entries.iter().any(|x| x.mult == 0) {
                    return Err(Error::SpectrumValidation {
                        edge: key,
                        failures: vec!["entries: zero multiplicity listed".into()],
                    });
                }
                (GermKind::UserTable(key.clone()), sp)
            } else {
                let kind = catalogue_kind(&l)
                    .ok_or_else(|| Error::MissingSpectrum { edge: key.clone() })?;
                let sp = catalogue_spectrum(&kind)?;
                (kind, sp)
            };
            sp_validate(&germ, &l).into_result(&key)?;
            Ok(StratumSpectrum {
                edge: s.edge,
                kind,
                germ,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use proptest::prelude::*;

    fn sp(frame: Frame, entries: &[(i64, i64, i64)]) -> Spectrum {
        Spectrum::from_entries(frame, entries.iter().map(|&(p, q, n)| (frac(p, q), n)))
    }

    /// Oracle: the Milnor fiber of `∏ y_i^{m_i}` is `g` copies of
    /// `(C^*)^{r-1}` permuted cyclically by monodromy. `H^j` has type
    /// `(j, j)` and rank `C(r-1, j)` on each eigenvalue `e(a/g)`; reduced
    /// cohomology drops one copy of `λ = 1` in degree 0. Each class with
    /// `λ = e(-α)` and `p = j` sits at the unique `α ∈ (r-p-1, r-p]`.
    fn monomial_oracle(m: &[u64]) -> Spectrum {
        let r = m.len();
        let g = m.iter().fold(0u64, |a, &b| a.gcd(&b)) as i64;
        let mut out = Spectrum::new(Frame::Germ(r));
        for j in 0..r {
            let rank = binomial(r - 1, j);
            for a in 0..g {
                let mut h = rank;
                if j == 0 && a == 0 {
                    h -= 1;
                }
                if h == 0 {
                    continue;
                }
                // λ = e(a/g) = e(-α) ⇒ α ≡ -a/g mod 1; take the representative in (0, 1]
                let beta = if a == 0 { int(1) } else { int(1) - frac(a, g) };
                let alpha = int((r - j - 1) as i64) + beta;
                let sign = if (j + 1 + r).is_multiple_of(2) { 1 } else { -1 };
                out.add(alpha, sign * h);
            }
        }
        out
    }

    fn binomial(n: usize, k: usize) -> i64 {
        (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
    }

    /// Oracle: Poincaré series of `C[x,y]/(x^{k-1}, y^{k-1})` with weights
    /// `1/k`, shifted by `2/k`.
    fn ordinary_oracle(k: u64) -> Spectrum {
        let k = k as i64;
        let single: Vec<i64> = vec![1; (k - 1) as usize];
        let mut prod = vec![0i64; (2 * k) as usize];
        for (i, a) in single.iter().enumerate() {
            for (j, b) in single.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Spectrum::from_entries(
            Frame::Germ(2),
            prod.iter()
                .enumerate()
                .map(|(e, &c)| (frac(e as i64 + 2, k), c)),
        )
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(sp_monomial(&[2]).unwrap(), sp(Frame::Germ(1), &[(1, 2, 1)]));
        assert_eq!(
            sp_monomial(&[1, 1]).unwrap(),
            sp(Frame::Germ(2), &[(1, 1, 1)])
        );
        assert_eq!(
            sp_monomial(&[1, 1, 1]).unwrap(),
            sp(Frame::Germ(3), &[(1, 1, 1), (2, 1, -2)])
        );
        assert_eq!(sp_monomial(&[1]).unwrap(), Spectrum::new(Frame::Germ(1)));
        assert_eq!(
            sp_monomial(&[2, 2]).unwrap().to_string(),
            "t^{1/2} + t - t^{3/2}"
        );
    }

    #[test]
    fn monomial_matches_fiber_oracle() {
        for r in 1..=3usize {
            let mut m = vec![1u64; r];
            loop {
                assert_eq!(sp_monomial(&m).unwrap(), monomial_oracle(&m), "{m:?}");
                let Some(i) = m.iter().position(|&x| x < 4) else {
                    break;
                };
                m[i] += 1;
                for x in &mut m[..i] {
                    *x = 1;
                }
            }
        }
    }

    #[test]
    fn ordinary_examples() {
        assert_eq!(sp_ordinary(2).unwrap(), sp_monomial(&[1, 1]).unwrap());
        assert_eq!(
            sp_ordinary(3).unwrap(),
            sp(Frame::Germ(2), &[(2, 3, 1), (1, 1, 2), (4, 3, 1)])
        );
        assert_eq!(
            sp_ordinary(4).unwrap(),
            sp(
                Frame::Germ(2),
                &[(1, 2, 1), (3, 4, 2), (1, 1, 3), (5, 4, 2), (3, 2, 1)]
            )
        );
        for k in 2..=7 {
            assert_eq!(sp_ordinary(k).unwrap(), ordinary_oracle(k));
            assert_eq!(sp_ordinary(k).unwrap().mass(), ((k - 1) * (k - 1)) as i64);
        }
        assert!(sp_ordinary(1).is_err());
    }

    #[test]
    fn shift_examples() {
        let node = sp_ordinary(2).unwrap();
        assert_eq!(
            sp_shift(&node, 1, 3).unwrap(),
            sp(Frame::Stratum { n: 3, dim: 1 }, &[(2, 1, -1)])
        );
        let point = sp_shift(&sp_monomial(&[1, 1, 1]).unwrap(), 0, 3).unwrap();
        assert_eq!(point.entries(), sp_monomial(&[1, 1, 1]).unwrap().entries());
        let shifted = sp_shift(&sp_ordinary(3).unwrap(), 1, 3).unwrap();
        assert_eq!(
            shifted,
            sp(
                Frame::Stratum { n: 3, dim: 1 },
                &[(5, 3, -1), (2, 1, -2), (7, 3, -1)]
            )
        );
        assert!(matches!(
            sp_shift(&node, 0, 3),
            Err(Error::FrameMismatch { .. })
        ));
    }

    fn localize_first(a: &Arrangement, codim: usize) -> LocalizedArrangement {
        let e = a.edges().iter().find(|e| e.codim == codim).unwrap();
        a.localize(e)
    }

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

    #[test]
    fn validation_examples() {
        let triple = build(2, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1)]);
        let l = localize_first(&triple, 2);
        assert!(sp_validate(&sp_ordinary(3).unwrap(), &l).passed());
        let boolean = build(
            3,
            &[(&[1, 0, 0, 0], 1), (&[0, 1, 0, 0], 1), (&[0, 0, 1, 0], 1)],
        );
        let l3 = localize_first(&boolean, 3);
        assert!(sp_validate(&sp_monomial(&[1, 1, 1]).unwrap(), &l3).passed());
        let bad = sp(Frame::Germ(2), &[(0, 1, 1), (1, 1, 3)]);
        let report = sp_validate(&bad, &l);
        assert!(report.failures.iter().any(|f| f.starts_with("support")));
        let wrong_mass = sp(Frame::Germ(2), &[(1, 1, 2)]);
        assert!(sp_validate(&wrong_mass, &l)
            .failures
            .iter()
            .any(|f| f.starts_with("mass")));
    }

    #[test]
    fn user_tables() {
        let triple = build(2, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1)]);
        let text = r#"{"1,2,3": [{"alpha": "2/3", "mult": 1}, {"alpha": "1", "mult": 2}, {"alpha": "4/3", "mult": 1}]}"#;
        let got = resolve(&triple, &UserTables::parse(text).unwrap()).unwrap();
        let point = got.iter().find(|s| triple.edge(s.edge).codim == 2).unwrap();
        assert_eq!(point.germ, sp_ordinary(3).unwrap());
        assert_eq!(point.kind, GermKind::UserTable("1,2,3".into()));

        let bad = r#"{"1,2,3": [{"alpha": "1", "mult": 3}]}"#;
        assert!(matches!(
            resolve(&triple, &UserTables::parse(bad).unwrap()),
            Err(Error::SpectrumValidation { .. })
        ));
        assert!(UserTables::parse(r#"{"1": [{"alpha": "x", "mult": 1}]}"#).is_err());

        // a reduced hyperplane: χ(F) = 1, nothing to check
        let smooth = build(2, &[(&[1, 0, 0], 1)]);
        let l = smooth.localize(smooth.edge(0));
        assert!(sp_validate(&Spectrum::new(Frame::Germ(1)), &l).passed());
    }

    #[test]
    fn catalogue_masses() {
        for r in 1..=3usize {
            let mut m = vec![1u64; r];
            loop {
                let rows: Vec<(Vec<i64>, u64)> = (0..r)
                    .map(|i| ((0..=r).map(|j| i64::from(i == j)).collect(), m[i]))
                    .collect();
                let refs: Vec<(&[i64], u64)> =
                    rows.iter().map(|(c, k)| (c.as_slice(), *k)).collect();
                let a = build(r, &refs);
                let l = localize_first(&a, r);
                assert!(sp_validate(&sp_monomial(&m).unwrap(), &l).passed(), "{m:?}");
                let Some(i) = m.iter().position(|&x| x < 3) else {
                    break;
                };
                m[i] += 1;
                for x in &mut m[..i] {
                    *x = 1;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn shift_round_trips(k in 2u64..7, dim in 0usize..3) {
            let germ = sp_ordinary(k).unwrap();
            let shifted = sp_shift(&germ, dim, dim + 2).unwrap();
            prop_assert_eq!(sp_unshift(&shifted).unwrap(), germ);
        }

        #[test]
        fn monomial_exponents_have_denominator_dividing_degree(m in proptest::collection::vec(1u64..5, 1..4)) {
            let sp = sp_monomial(&m).unwrap();
            let total: u64 = m.iter().sum();
            prop_assert!(sp.entries().keys().all(|a| rational::denominator_divides(a, total)));
        }
    }
}
