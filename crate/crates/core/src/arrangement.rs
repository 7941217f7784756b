//! Projective hyperplane arrangements with multiplicities: the intersection
//! lattice of the cone, edges and strata, localizations, and the Euler
//! characteristics and `χ_y`-genera that the lattice determines.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeffs::rational;
use crate::coeffs::Poly;
use crate::error::{Error, Result};
use crate::{PolyY, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub coeffs: Vec<Rational>,
    pub mult: u64,
}

/// A flat of the central arrangement in `C^{n+1}`: the saturated set of
/// hyperplanes containing a linear subspace, and the codimension of that
/// subspace.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    pub rank: usize,
    pub set: Vec<usize>,
}

impl Flat {
    fn contains(&self, other: &Flat) -> bool {
        other.set.iter().all(|j| self.set.binary_search(j).is_ok())
    }
}

/// The lattice of flats, bottom (`∅`, rank 0) first, sorted by `(rank, set)`.
#[derive(Clone, Debug)]
pub struct Lattice {
    flats: Vec<Flat>,
    mobius_bottom: Vec<i64>,
}

impl Lattice {
    fn new(flats: Vec<Flat>) -> Self {
        let mut lattice = Lattice {
            flats,
            mobius_bottom: Vec::new(),
        };
        lattice.mobius_bottom = lattice.mobius_from(0);
        lattice
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.flats[b].contains(&self.flats[a])
    }

    /// `μ(a, x)` for every flat `x`, zero where `x` is not above `a`.
    pub fn mobius_from(&self, a: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.flats.len()];
        mu[a] = 1;
        for x in 0..self.flats.len() {
            if x == a || !self.le(a, x) {
                continue;
            }
            mu[x] = -(0..self.flats.len())
                .filter(|&c| c != x && self.le(a, c) && self.le(c, x))
                .map(|c| mu[c])
                .sum::<i64>();
        }
        mu
    }

    pub fn mobius_bottom(&self, x: usize) -> i64 {
        self.mobius_bottom[x]
    }

    pub fn index_of(&self, set: &[usize]) -> Option<usize> {
        self.flats.iter().position(|f| f.set == set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    /// 0-based indices of the hyperplanes containing the edge.
    pub set: Vec<usize>,
    pub codim: usize,
    pub m_s: u64,
    flat: usize,
}

impl Edge {
    /// Canonical key: the 1-based index set, comma separated.
    pub fn key(&self) -> String {
        edge_key(&self.set)
    }

    pub fn dim(&self, n: usize) -> usize {
        n - self.codim
    }
}

pub fn edge_key(set: &[usize]) -> String {
    set.iter()
        .map(|j| (j + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A sub-edge `S' ⊊ S̄` with its induced multiplicity `m_{S',S}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub edge: usize,
    pub m_rel: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumFamily {
    /// Canonical stratification of `X`.
    X,
    /// Canonical stratification of `Σ ∖ X'`.
    Sigma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub edge: usize,
    pub family: StratumFamily,
    pub dim: usize,
    pub boundary: Vec<BoundaryEdge>,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    n: usize,
    hyperplanes: Vec<Hyperplane>,
    m: u64,
    name: Option<String>,
    lattice: Lattice,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct HyperplaneJson {
    coeffs: Vec<String>,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct ArrangementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    n: usize,
    hyperplanes: Vec<HyperplaneJson>,
}

/// Row-reduce `rows` in place and return the echelon rows.
fn echelon(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for col in 0..width {
        let Some(p) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let pivot = rows.swap_remove(p);
        for r in rows.iter_mut() {
            if !r[col].is_zero() {
                let f = &r[col] / &pivot[col];
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        out.push(pivot);
    }
    out
}

fn in_span(echelon_rows: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut v = v.to_vec();
    for row in echelon_rows {
        let col = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("echelon rows are nonzero");
        if !v[col].is_zero() {
            let f = &v[col] / &row[col];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    v.iter().all(Zero::is_zero)
}

impl Arrangement {
    pub fn build(n: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArrangement(
                "ambient dimension must be at least 1".into(),
            ));
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.coeffs.len() != n + 1 {
                return Err(Error::InvalidArrangement(format!(
                    "hyperplane {} has {} coefficients, expected {}",
                    i + 1,
                    h.coeffs.len(),
                    n + 1
                )));
            }
            if h.coeffs.iter().all(Zero::is_zero) {
                return Err(Error::InvalidArrangement(format!(
                    "hyperplane {} has a zero covector",
                    i + 1
                )));
            }
            if h.mult == 0 {
                return Err(Error::InvalidArrangement(format!(
                    "hyperplane {} has multiplicity 0",
                    i + 1
                )));
            }
        }
        for i in 0..hyperplanes.len() {
            for j in 0..i {
                let rows = vec![hyperplanes[i].coeffs.clone(), hyperplanes[j].coeffs.clone()];
                if echelon(rows).len() < 2 {
                    return Err(Error::InvalidArrangement(format!(
                        "proportional covectors: hyperplanes {} and {}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let m = hyperplanes.iter().map(|h| h.mult).sum();
        let mut arr = Arrangement {
            n,
            hyperplanes,
            m,
            name: None,
            lattice: Lattice {
                flats: Vec::new(),
                mobius_bottom: Vec::new(),
            },
            edges: Vec::new(),
        };
        arr.lattice = Lattice::new(arr.enumerate_flats());
        arr.edges = arr
            .lattice
            .flats()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.rank >= 1 && f.rank <= n)
            .enumerate()
            .map(|(id, (flat, f))| Edge {
                id,
                set: f.set.clone(),
                codim: f.rank,
                m_s: f.set.iter().map(|&j| arr.hyperplanes[j].mult).sum(),
                flat,
            })
            .collect();
        Ok(arr)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ArrangementJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let hyperplanes = raw
            .hyperplanes
            .into_iter()
            .map(|h| {
                Ok(Hyperplane {
                    coeffs: h
                        .coeffs
                        .iter()
                        .map(|c| rational::parse(c))
                        .collect::<Result<_>>()?,
                    mult: h.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut arr = Self::build(raw.n, hyperplanes)?;
        arr.name = raw.name;
        Ok(arr)
    }

    pub fn to_json(&self) -> String {
        let raw = ArrangementJson {
            name: self.name.clone(),
            n: self.n,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| HyperplaneJson {
                    coeffs: h.coeffs.iter().map(rational::format).collect(),
                    mult: h.mult,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn is_reduced(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.mult == 1)
    }

    fn rows(&self, set: &[usize]) -> Vec<Vec<Rational>> {
        set.iter()
            .map(|&j| self.hyperplanes[j].coeffs.clone())
            .collect()
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        echelon(self.rows(set)).len()
    }

    fn closure(&self, set: &[usize]) -> Flat {
        let ech = echelon(self.rows(set));
        let closed: Vec<usize> = (0..self.hyperplanes.len())
            .filter(|&k| in_span(&ech, &self.hyperplanes[k].coeffs))
            .collect();
        Flat {
            rank: ech.len(),
            set: closed,
        }
    }

    fn enumerate_flats(&self) -> Vec<Flat> {
        let mut seen: BTreeSet<Flat> = BTreeSet::new();
        let mut layer = vec![Flat {
            rank: 0,
            set: Vec::new(),
        }];
        seen.insert(layer[0].clone());
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for f in &layer {
                for j in 0..self.hyperplanes.len() {
                    if f.set.binary_search(&j).is_ok() {
                        continue;
                    }
                    let mut set = f.set.clone();
                    set.push(j);
                    set.sort_unstable();
                    let g = self.closure(&set);
                    if !seen.contains(&g) {
                        next.insert(g);
                    }
                }
            }
            seen.extend(next.iter().cloned());
            layer = next.into_iter().collect();
        }
        seen.into_iter().collect()
    }

    /// All nonempty proper intersections, sorted by `(codim, set)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn edge_by_key(&self, key: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.key() == key)
    }

    /// `m_{S',S} = Σ_{j ∈ I(S') ∖ I(S)} m_j`.
    pub fn m_rel(&self, sub: &Edge, s: &Edge) -> u64 {
        sub.set
            .iter()
            .filter(|j| s.set.binary_search(j).is_err())
            .map(|&j| self.hyperplanes[j].mult)
            .sum()
    }

    /// Edges strictly contained in `S̄`.
    pub fn sub_edges(&self, s: &Edge) -> Vec<&Edge> {
        self.edges
            .iter()
            .filter(|e| e.set.len() > s.set.len() && self.lattice.le(s.flat, e.flat))
            .collect()
    }

    fn stratum(&self, e: &Edge, family: StratumFamily) -> Stratum {
        Stratum {
            edge: e.id,
            family,
            dim: e.dim(self.n),
            boundary: self
                .sub_edges(e)
                .into_iter()
                .map(|sub| BoundaryEdge {
                    edge: sub.id,
                    m_rel: self.m_rel(sub, e),
                })
                .collect(),
        }
    }

    /// Strata of `X`: one per edge.
    pub fn x_strata(&self) -> Vec<Stratum> {
        self.edges
            .iter()
            .map(|e| self.stratum(e, StratumFamily::X))
            .collect()
    }

    /// Strata of `Σ ∖ X'`: every edge of codimension at least 2, and the
    /// hyperplanes of multiplicity at least 2.
    pub fn sigma_strata(&self) -> Vec<Stratum> {
        self.edges
            .iter()
            .filter(|e| self.in_sigma(e))
            .map(|e| self.stratum(e, StratumFamily::Sigma))
            .collect()
    }

    pub fn in_sigma(&self, e: &Edge) -> bool {
        (e.codim >= 2 && e.set.len() >= 2) || (e.codim == 1 && e.m_s >= 2)
    }

    /// Whether `S̄` lies in the union of the multiple hyperplanes.
    pub fn in_sigma1(&self, e: &Edge) -> bool {
        e.set.iter().any(|&j| self.hyperplanes[j].mult >= 2)
    }

    pub fn localize(&self, e: &Edge) -> LocalizedArrangement {
        let flats: Vec<Flat> = self
            .lattice
            .flats()
            .iter()
            .filter(|f| self.lattice.flats()[e.flat].contains(f))
            .cloned()
            .collect();
        let mobius = flats
            .iter()
            .map(|f| {
                self.lattice
                    .mobius_bottom(self.lattice.index_of(&f.set).expect("flat"))
            })
            .collect();
        LocalizedArrangement {
            edge: e.id,
            key: e.key(),
            rank: e.codim,
            hyperplanes: e.set.clone(),
            mults: e.set.iter().map(|&j| self.hyperplanes[j].mult).collect(),
            flats,
            mobius,
            covectors: self.rows(&e.set),
        }
    }

    pub fn is_dense(&self, e: &Edge) -> bool {
        self.localize(e).is_indecomposable()
    }

    fn open_chi_y(&self, flat: usize) -> PolyY {
        let t = &self.lattice.flats()[flat];
        let d = self.n - t.rank.min(self.n);
        let mu = self.lattice.mobius_from(flat);
        let has_above =
            (0..self.lattice.flats().len()).any(|g| g != flat && self.lattice.le(flat, g));
        if !has_above {
            return projective_chi_y(d);
        }
        let mut pi: Vec<i64> = Vec::new();
        for (g, f) in self.lattice.flats().iter().enumerate() {
            if mu[g] == 0 {
                continue;
            }
            let k = f.rank - t.rank;
            if pi.len() <= k {
                pi.resize(k + 1, 0);
            }
            pi[k] += if k.is_multiple_of(2) { mu[g] } else { -mu[g] };
        }
        let betti = divide_one_plus_t(&pi);
        betti
            .iter()
            .enumerate()
            .fold(PolyY::zero(), |acc, (k, &b)| {
                let sign = if k % 2 == 0 { b } else { -b };
                acc + neg_y_pow(d - k).scale(&rational::int(sign))
            })
    }

    pub fn chi_y(&self, target: ChiTarget) -> Result<PolyY> {
        match target {
            ChiTarget::Projective => Ok(projective_chi_y(self.n)),
            ChiTarget::Complement => Ok(self.open_chi_y(0)),
            ChiTarget::Stratum(id) => {
                let e = self
                    .edges
                    .get(id)
                    .ok_or_else(|| Error::OutOfRange(format!("no edge with id {id}")))?;
                Ok(self.open_chi_y(e.flat))
            }
            ChiTarget::X => Ok(self
                .edges
                .iter()
                .fold(PolyY::zero(), |acc, e| acc + self.open_chi_y(e.flat))),
        }
    }

    /// Lattice-isomorphism invariant description: multiplicities and the
    /// list of flats.
    pub fn combinatorial_type(&self) -> (Vec<u64>, Vec<Flat>) {
        (
            self.hyperplanes.iter().map(|h| h.mult).collect(),
            self.lattice.flats().to_vec(),
        )
    }

    /// Edges grouped by codimension.
    pub fn edge_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.edges {
            *counts.entry(e.codim).or_insert(0) += 1;
        }
        counts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiTarget {
    X,
    Stratum(usize),
    Complement,
    Projective,
}

fn neg_y_pow(k: usize) -> PolyY {
    let c = if k.is_multiple_of(2) { 1 } else { -1 };
    Poly::monomial(rational::int(c), k)
}

/// `χ_y(P^d) = Σ_{p=0}^{d} (-y)^p`.
pub fn projective_chi_y(d: usize) -> PolyY {
    (0..=d).fold(PolyY::zero(), |acc, p| acc + neg_y_pow(p))
}

fn divide_one_plus_t(pi: &[i64]) -> Vec<i64> {
    let mut q = Vec::with_capacity(pi.len().saturating_sub(1));
    let mut carry = 0i64;
    for &c in &pi[..pi.len() - 1] {
        carry = c - carry;
        q.push(carry);
    }
    debug_assert_eq!(
        pi[pi.len() - 1],
        carry,
        "Poincaré polynomial divisible by 1+t"
    );
    q
}

/// The central arrangement `C(X)^S` of the hyperplanes through an edge,
/// viewed in the quotient `V/S` of rank `c_S`.
#[derive(Clone, Debug)]
pub struct LocalizedArrangement {
    pub edge: usize,
    pub key: String,
    pub rank: usize,
    /// Global indices of the hyperplanes through the edge.
    pub hyperplanes: Vec<usize>,
    pub mults: Vec<u64>,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
    covectors: Vec<Vec<Rational>>,
}

impl LocalizedArrangement {
    pub fn m_s(&self) -> u64 {
        self.mults.iter().sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.mults.iter().all(|&m| m == 1)
    }

    /// Boolean arrangement: `c_S` hyperplanes in general position.
    pub fn is_boolean(&self) -> bool {
        self.hyperplanes.len() == self.rank
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Coefficients of `π(t) = Σ μ(0̂, G) (-t)^{rk G}`.
    pub fn poincare(&self) -> Vec<i64> {
        let mut pi = vec![0i64; self.rank + 1];
        for (f, &mu) in self.flats.iter().zip(&self.mobius) {
            pi[f.rank] += if f.rank % 2 == 0 { mu } else { -mu };
        }
        pi
    }

    /// `χ(P^{c_S - 1} ∖ projectivized arrangement)`.
    pub fn complement_chi(&self) -> i64 {
        let q = divide_one_plus_t(&self.poincare());
        q.iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b } else { -b })
            .sum()
    }

    /// `χ(F) = χ(P^{c_S-1} ∖ g_S^{-1}(0)) · m_S`.
    pub fn milnor_fiber_chi(&self) -> i64 {
        self.complement_chi() * self.m_s() as i64
    }

    fn local_rank(&self, subset: &[usize]) -> usize {
        echelon(subset.iter().map(|&i| self.covectors[i].clone()).collect()).len()
    }

    /// Connectivity of the underlying matroid, via fundamental circuits of
    /// one basis: the arrangement is a product exactly when this fails.
    pub fn is_indecomposable(&self) -> bool {
        let k = self.hyperplanes.len();
        let mut basis: Vec<usize> = Vec::new();
        for i in 0..k {
            let mut trial = basis.clone();
            trial.push(i);
            if self.local_rank(&trial) == trial.len() {
                basis = trial;
            }
        }
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in (0..k).filter(|i| !basis.contains(i)) {
            for (pos, &b) in basis.iter().enumerate() {
                let mut swapped = basis.clone();
                swapped[pos] = e;
                if self.local_rank(&swapped) == basis.len() {
                    let (x, y) = (find(&mut parent, e), find(&mut parent, b));
                    parent[x] = y;
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..k).all(|i| find(&mut parent, i) == root)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}
