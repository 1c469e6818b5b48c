use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use super::scan::{scan, ScanOptions};
use super::space::SearchSpace;
use super::VerifyError;
use crate::families::{self, generate, FamilySpec};
use crate::hypergraph::Hypergraph;
use crate::indices::{Index, IndexValue};
use crate::io::to_inline;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "holds-tight")]
    HoldsTight,
    #[serde(rename = "holds-slack")]
    HoldsSlack,
    #[serde(rename = "violated")]
    Violated,
}

impl Status {
    /// Compares a claimed bound with the observed extremum on that side.
    pub fn classify(side: Side, claimed: &IndexValue, observed: &IndexValue) -> Self {
        use std::cmp::Ordering::*;
        match (side, claimed.cmp(observed)) {
            (_, Equal) => Status::HoldsTight,
            (Side::Lower, Less) | (Side::Upper, Greater) => Status::HoldsSlack,
            _ => Status::Violated,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::HoldsTight => "holds-tight",
            Status::HoldsSlack => "holds-slack",
            Status::Violated => "violated",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named integer parameters of a claim, e.g. `k=3,m=3`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClaimParams(pub BTreeMap<String, usize>);

impl ClaimParams {
    pub fn new(pairs: &[(&str, usize)]) -> Self {
        Self(pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect())
    }

    fn get(&self, claim: &str, key: &str) -> Result<usize, VerifyError> {
        self.0.get(key).copied().ok_or_else(|| VerifyError::MissingParam {
            claim: claim.to_string(),
            param: key.to_string(),
        })
    }
}

impl fmt::Display for ClaimParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for ClaimParams {
    type Err = VerifyError;

    fn from_str(text: &str) -> Result<Self, VerifyError> {
        let mut map = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parsed = item
                .split_once('=')
                .and_then(|(k, v)| Some((k.trim().to_string(), v.trim().parse::<usize>().ok()?)));
            let (k, v) =
                parsed.ok_or_else(|| VerifyError::InvalidParams(format!("expected key=value, found `{item}`")))?;
            map.insert(k, v);
        }
        Ok(Self(map))
    }
}

/// Values of a claim's parameters, in the order of [`Claim::params`].
type Args = [usize];

/// The extremal object a claim says attains its bound.
struct ClaimedWitness {
    family: fn(&Args) -> FamilySpec,
    /// Whether the claim says no other labeled member attains the bound.
    unique: bool,
}

/// One side of one bound claim.
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub index: Index,
    pub side: Side,
    pub params: &'static [&'static str],
    pub defaults: &'static [usize],
    /// Smallest allowed value of each parameter.
    minimums: &'static [usize],
    space: fn(&Args) -> SearchSpace,
    bound: fn(&Args) -> BigUint,
    witness: Option<ClaimedWitness>,
}

impl Claim {
    pub fn default_params(&self) -> ClaimParams {
        ClaimParams(
            self.params
                .iter()
                .map(|p| p.to_string())
                .zip(self.defaults.iter().copied())
                .collect(),
        )
    }

    fn args(&self, params: &ClaimParams) -> Result<Vec<usize>, VerifyError> {
        if let Some(extra) = params.0.keys().find(|k| !self.params.contains(&k.as_str())) {
            return Err(VerifyError::InvalidParams(format!(
                "{} takes {}, not `{extra}`",
                self.id,
                self.params.join(", ")
            )));
        }
        let mut args = Vec::with_capacity(self.params.len());
        for (&name, &min) in self.params.iter().zip(self.minimums) {
            let v = params.get(self.id, name)?;
            if v < min {
                return Err(VerifyError::InvalidParams(format!(
                    "{}: {name} must be >= {min}",
                    self.id
                )));
            }
            args.push(v);
        }
        Ok(args)
    }

    /// The search space the claim quantifies over.
    pub fn space(&self, params: &ClaimParams) -> Result<SearchSpace, VerifyError> {
        let args = self.args(params)?;
        Ok((self.space)(&args))
    }

    /// The claimed bound evaluated exactly.
    pub fn claimed_bound(&self, params: &ClaimParams) -> Result<IndexValue, VerifyError> {
        let args = self.args(params)?;
        Ok(IndexValue((self.bound)(&args)))
    }
}

fn b(x: usize) -> BigUint {
    BigUint::from(x)
}

fn square(x: BigUint) -> BigUint {
    &x * &x
}

fn connected(a: &Args) -> SearchSpace {
    SearchSpace::AllConnected { n: a[0] }
}
fn uniform(a: &Args) -> SearchSpace {
    SearchSpace::UniformConnected { n: a[0], k: a[1] }
}
fn bipartite(a: &Args) -> SearchSpace {
    SearchSpace::WeakBipartite { p: a[0], q: a[1] }
}
/// `a = [k, m]`
fn uniform_trees(a: &Args) -> SearchSpace {
    SearchSpace::UniformHypertrees { k: a[0], m: a[1] }
}
/// `a = [m, p]`: hypertrees on `m + p` vertices.
fn trees_on(a: &Args) -> SearchSpace {
    SearchSpace::HypertreesOn {
        n: a[0] + a[1],
        m: a[0],
    }
}

fn single_edge(a: &Args) -> FamilySpec {
    FamilySpec::CompleteUniform { n: a[0], k: a[0] }
}
fn single_edge_pq(a: &Args) -> FamilySpec {
    FamilySpec::CompleteUniform {
        n: a[0] + a[1],
        k: a[0] + a[1],
    }
}
fn complete(a: &Args) -> FamilySpec {
    FamilySpec::Complete { n: a[0] }
}
fn complete_uniform(a: &Args) -> FamilySpec {
    FamilySpec::CompleteUniform { n: a[0], k: a[1] }
}
fn complete_bipartite(a: &Args) -> FamilySpec {
    FamilySpec::CompleteWeakBipartite { p: a[0], q: a[1] }
}
/// `a = [k, m]`
fn uniform_path(a: &Args) -> FamilySpec {
    FamilySpec::UniformHyperpath { m: a[1], k: a[0] }
}
/// `a = [k, m]`
fn uniform_sunflower(a: &Args) -> FamilySpec {
    FamilySpec::Sunflower {
        m: a[1],
        p: a[0] - 1,
        k: a[0],
    }
}
/// `a = [m, p]`: a linear hyperpath on `m + p` vertices, the first edge
/// absorbing the extra vertices.
fn spread_path(a: &Args) -> FamilySpec {
    let (m, p) = (a[0], a[1]);
    let mut sizes = vec![2; m];
    sizes[0] = p + 1;
    FamilySpec::GeneralHyperpath { sizes }
}
/// `a = [m, p]`
fn tree_sunflower(a: &Args) -> FamilySpec {
    FamilySpec::Sunflower {
        m: a[0],
        p: a[1],
        k: a[1] + 1,
    }
}

const fn witness(family: fn(&Args) -> FamilySpec, unique: bool) -> Option<ClaimedWitness> {
    Some(ClaimedWitness { family, unique })
}

const N: &[&str] = &["n"];
const NK: &[&str] = &["n", "k"];
const PQ: &[&str] = &["p", "q"];
const KM: &[&str] = &["k", "m"];
const MP: &[&str] = &["m", "p"];

const GENERAL: &str = "connected hypergraph on n >= 2 vertices: n^2 <= HM1 <= n(2^(n-1)-1)^2[(n+1)2^(n-2)-1], \
                       1 <= HM2 <= [1+(2^(n-1)-1)^2]^n - 1 - n(2^(n-1)-1)^2; lower bounds by the single full edge, \
                       upper bounds by the complete hypergraph";
const UNIFORM: &str = "connected k-uniform hypergraph on n vertices: HM1 <= C(n,k) k^2 C(n-1,k-1)^2, \
                       HM2 <= C(n,k) C(n-1,k-1)^(2k), equality iff complete k-uniform";
const BIPARTITE: &str = "connected weak bipartite hypergraph on p+q vertices: (p+q)^2 <= HM1 <= HM1(K_{p,q}), \
                         1 <= HM2 <= HM2(K_{p,q}); lower by one full edge, upper by K_{p,q}";
const KTREE: &str = "k-uniform hypertree with m >= 2 edges: 4k^2 m - 8k + 2 <= HM1 <= m[(k-1)m+1]^2, \
                     2^(2k-1)(2m-3) <= HM2 <= m^(2k-1); lower by the linear hyperpath, upper by S(m,k-1,k)";
const KTREE_COROLLARY: &str = "k-uniform linear hyperpath values 2(k+1)^2 + (m-2)(k+2)^2 and 16m - 24 \
                               read as lower bounds over k-uniform hypertrees with m edges";
const UNIFORM_TREE: &str = "k-uniform hypertree with m >= 2 edges: 2(k+1)^2 + (m-2)(k+2)^2 <= HM1 <= m((k-1)m+k)^2, \
                            16m - 24 <= HM2 <= m^(2k-1); lower by a linear hyperpath, upper by S(m,k-1,k)";
const SUNFLOWER: &str = "sunflower S(m,k-1,k) values m(pm+k-p)^2 and m^(2p+1) with p = k-1 \
                         read as upper bounds over k-uniform hypertrees with m edges";
const TREE: &str = "hypertree on n = m + p vertices with m >= 2 edges: 2(k+1)^2 + (m-2)(k+2)^2 <= HM1 <= m(pm+p+1)^2, \
                    16m - 24 <= HM2 <= m^(2p+1); lower by a linear hyperpath, upper by S(m,p,p+1); \
                    the HM1 lower bound needs k and is checked over k-uniform hypertrees";

fn general_upper_hm1(a: &Args) -> BigUint {
    families::complete_hm1(a[0])
}
fn general_upper_hm2(a: &Args) -> BigUint {
    families::complete_hm2(a[0])
}
fn corollary_path_hm1(a: &Args) -> BigUint {
    let (k, m) = (a[0], a[1]);
    b(2) * square(b(k + 1)) + b(m - 2) * square(b(k + 2))
}
fn path_hm2(m: usize) -> BigUint {
    b(16 * m - 24)
}

/// Every registered claim.
pub static CLAIMS: &[Claim] = &[
    Claim {
        id: "general-lower-hm1",
        statement: GENERAL,
        index: Index::Hm1,
        side: Side::Lower,
        params: N,
        defaults: &[4],
        minimums: &[2],
        space: connected,
        bound: |a| square(b(a[0])),
        witness: witness(single_edge, false),
    },
    Claim {
        id: "general-upper-hm1",
        statement: GENERAL,
        index: Index::Hm1,
        side: Side::Upper,
        params: N,
        defaults: &[4],
        minimums: &[2],
        space: connected,
        bound: general_upper_hm1,
        witness: witness(complete, false),
    },
    Claim {
        id: "general-lower-hm2",
        statement: GENERAL,
        index: Index::Hm2,
        side: Side::Lower,
        params: N,
        defaults: &[4],
        minimums: &[2],
        space: connected,
        bound: |_| b(1),
        witness: witness(single_edge, false),
    },
    Claim {
        id: "general-upper-hm2",
        statement: GENERAL,
        index: Index::Hm2,
        side: Side::Upper,
        params: N,
        defaults: &[4],
        minimums: &[2],
        space: connected,
        bound: general_upper_hm2,
        witness: witness(complete, false),
    },
    Claim {
        id: "uniform-upper-hm1",
        statement: UNIFORM,
        index: Index::Hm1,
        side: Side::Upper,
        params: NK,
        defaults: &[5, 3],
        minimums: &[2, 2],
        space: uniform,
        bound: |a| families::complete_uniform_hm1(a[0], a[1]),
        witness: witness(complete_uniform, true),
    },
    Claim {
        id: "uniform-upper-hm2",
        statement: UNIFORM,
        index: Index::Hm2,
        side: Side::Upper,
        params: NK,
        defaults: &[5, 3],
        minimums: &[2, 2],
        space: uniform,
        bound: |a| families::complete_uniform_hm2(a[0], a[1]),
        witness: witness(complete_uniform, true),
    },
    Claim {
        id: "bipartite-lower-hm1",
        statement: BIPARTITE,
        index: Index::Hm1,
        side: Side::Lower,
        params: PQ,
        defaults: &[2, 2],
        minimums: &[1, 1],
        space: bipartite,
        bound: |a| square(b(a[0] + a[1])),
        witness: witness(single_edge_pq, false),
    },
    Claim {
        id: "bipartite-upper-hm1",
        statement: BIPARTITE,
        index: Index::Hm1,
        side: Side::Upper,
        params: PQ,
        defaults: &[2, 2],
        minimums: &[1, 1],
        space: bipartite,
        bound: |a| families::complete_weak_bipartite(a[0], a[1]).0,
        witness: witness(complete_bipartite, false),
    },
    Claim {
        id: "bipartite-lower-hm2",
        statement: BIPARTITE,
        index: Index::Hm2,
        side: Side::Lower,
        params: PQ,
        defaults: &[2, 2],
        minimums: &[1, 1],
        space: bipartite,
        bound: |_| b(1),
        witness: witness(single_edge_pq, false),
    },
    Claim {
        id: "bipartite-upper-hm2",
        statement: BIPARTITE,
        index: Index::Hm2,
        side: Side::Upper,
        params: PQ,
        defaults: &[2, 2],
        minimums: &[1, 1],
        space: bipartite,
        bound: |a| families::complete_weak_bipartite(a[0], a[1]).1,
        witness: witness(complete_bipartite, false),
    },
    Claim {
        id: "ktree-lower-hm1-lemma-variant",
        statement: KTREE,
        index: Index::Hm1,
        side: Side::Lower,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| families::uniform_hyperpath_lemma(a[1], a[0]).0,
        witness: witness(uniform_path, false),
    },
    Claim {
        id: "ktree-lower-hm2-lemma-variant",
        statement: KTREE,
        index: Index::Hm2,
        side: Side::Lower,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| families::uniform_hyperpath_lemma(a[1], a[0]).1,
        witness: witness(uniform_path, false),
    },
    Claim {
        id: "ktree-lower-hm1-corollary-variant",
        statement: KTREE_COROLLARY,
        index: Index::Hm1,
        side: Side::Lower,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: corollary_path_hm1,
        witness: witness(uniform_path, false),
    },
    Claim {
        id: "ktree-lower-hm2-corollary-variant",
        statement: KTREE_COROLLARY,
        index: Index::Hm2,
        side: Side::Lower,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| path_hm2(a[1]),
        witness: witness(uniform_path, false),
    },
    Claim {
        id: "ktree-upper-hm1",
        statement: KTREE,
        index: Index::Hm1,
        side: Side::Upper,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| {
            let (k, m) = (a[0], a[1]);
            b(m) * square(b((k - 1) * m + 1))
        },
        witness: witness(uniform_sunflower, false),
    },
    Claim {
        id: "ktree-upper-hm2",
        statement: KTREE,
        index: Index::Hm2,
        side: Side::Upper,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| b(a[1]).pow(2 * a[0] as u32 - 1),
        witness: witness(uniform_sunflower, false),
    },
    Claim {
        id: "uniform-hypertree-lower-hm1",
        statement: UNIFORM_TREE,
        index: Index::Hm1,
        side: Side::Lower,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: corollary_path_hm1,
        witness: witness(uniform_path, false),
    },
    Claim {
        id: "uniform-hypertree-lower-hm2",
        statement: UNIFORM_TREE,
        index: Index::Hm2,
        side: Side::Lower,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| path_hm2(a[1]),
        witness: witness(uniform_path, false),
    },
    Claim {
        id: "uniform-hypertree-upper-hm1",
        statement: UNIFORM_TREE,
        index: Index::Hm1,
        side: Side::Upper,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| {
            let (k, m) = (a[0], a[1]);
            b(m) * square(b((k - 1) * m + k))
        },
        witness: witness(uniform_sunflower, false),
    },
    Claim {
        id: "uniform-hypertree-upper-hm2",
        statement: UNIFORM_TREE,
        index: Index::Hm2,
        side: Side::Upper,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| b(a[1]).pow(2 * a[0] as u32 - 1),
        witness: witness(uniform_sunflower, false),
    },
    Claim {
        id: "sunflower-upper-hm1",
        statement: SUNFLOWER,
        index: Index::Hm1,
        side: Side::Upper,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| families::sunflower(a[1], a[0] - 1, a[0]).0,
        witness: witness(uniform_sunflower, false),
    },
    Claim {
        id: "sunflower-upper-hm2",
        statement: SUNFLOWER,
        index: Index::Hm2,
        side: Side::Upper,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: |a| families::sunflower(a[1], a[0] - 1, a[0]).1,
        witness: witness(uniform_sunflower, false),
    },
    Claim {
        id: "hypertree-lower-hm1",
        statement: TREE,
        index: Index::Hm1,
        side: Side::Lower,
        params: KM,
        defaults: &[3, 3],
        minimums: &[2, 2],
        space: uniform_trees,
        bound: corollary_path_hm1,
        witness: witness(uniform_path, false),
    },
    Claim {
        id: "hypertree-lower-hm2",
        statement: TREE,
        index: Index::Hm2,
        side: Side::Lower,
        params: MP,
        defaults: &[3, 2],
        minimums: &[2, 1],
        space: trees_on,
        bound: |a| path_hm2(a[0]),
        witness: witness(spread_path, false),
    },
    Claim {
        id: "hypertree-upper-hm1",
        statement: TREE,
        index: Index::Hm1,
        side: Side::Upper,
        params: MP,
        defaults: &[3, 2],
        minimums: &[2, 1],
        space: trees_on,
        bound: |a| {
            let (m, p) = (a[0], a[1]);
            b(m) * square(b(p * m + p + 1))
        },
        witness: witness(tree_sunflower, false),
    },
    Claim {
        id: "hypertree-upper-hm2",
        statement: TREE,
        index: Index::Hm2,
        side: Side::Upper,
        params: MP,
        defaults: &[3, 2],
        minimums: &[2, 1],
        space: trees_on,
        bound: |a| b(a[0]).pow(2 * a[1] as u32 + 1),
        witness: witness(tree_sunflower, false),
    },
];

pub fn find_claim(id: &str) -> Result<&'static Claim, VerifyError> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| VerifyError::UnknownClaim(id.to_string()))
}

/// Outcome of checking the object a claim names as extremal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub family: String,
    #[serde(serialize_with = "inline")]
    pub hypergraph: Hypergraph,
    pub value: IndexValue,
    /// The named object is in the space and reaches the observed extremum.
    pub attains: bool,
    /// It is the only labeled member doing so.
    pub unique: bool,
    pub uniqueness_claimed: bool,
}

impl WitnessCheck {
    /// Attains, and is unique whenever uniqueness is claimed.
    pub fn confirmed(&self) -> bool {
        self.attains && (self.unique || !self.uniqueness_claimed)
    }
}

fn inline<S: serde::Serializer>(h: &Hypergraph, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&to_inline(h))
}

fn inline_list<S: serde::Serializer>(v: &[Hypergraph], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(to_inline))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub statement: String,
    pub params: ClaimParams,
    pub space: SearchSpace,
    pub index: Index,
    pub side: Side,
    pub claimed: IndexValue,
    pub observed: IndexValue,
    pub status: Status,
    /// Members attaining the observed extremum.
    pub attaining: u64,
    #[serde(serialize_with = "inline_list")]
    pub witnesses: Vec<Hypergraph>,
    pub witness_check: Option<WitnessCheck>,
    pub population: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Evaluates the claimed bound, scans its space and classifies the claim.
pub fn check_claim(id: &str, params: &ClaimParams, opts: &ScanOptions) -> Result<VerificationReport, VerifyError> {
    let claim = find_claim(id)?;
    let args = claim.args(params)?;
    let space = (claim.space)(&args);
    let claimed = IndexValue((claim.bound)(&args));
    let started = Instant::now();
    let result = scan(&space, opts)?;
    let ext = result.get(claim.index);
    let extreme = match claim.side {
        Side::Lower => &ext.min,
        Side::Upper => &ext.max,
    };
    let witness_check = match &claim.witness {
        Some(w) => {
            let spec = (w.family)(&args);
            let h = generate(&spec).map_err(|e| VerifyError::InvalidParams(e.to_string()))?;
            let value = claim.index.evaluate(&h);
            let attains = value == extreme.value && contains(&space, &h);
            Some(WitnessCheck {
                family: spec.to_string(),
                unique: attains && extreme.count == 1,
                hypergraph: h,
                value,
                attains,
                uniqueness_claimed: w.unique,
            })
        }
        None => None,
    };
    Ok(VerificationReport {
        claim_id: claim.id.to_string(),
        statement: claim.statement.to_string(),
        params: params.clone(),
        space,
        index: claim.index,
        side: claim.side,
        status: Status::classify(claim.side, &claimed, &extreme.value),
        claimed,
        observed: extreme.value.clone(),
        attaining: extreme.count,
        witnesses: extreme.witnesses.clone(),
        witness_check,
        population: result.population,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// Membership test matching the enumeration filters.
fn contains(space: &SearchSpace, h: &Hypergraph) -> bool {
    let uniform_k = |k: usize| h.uniformity().ok().flatten() == Some(k);
    match *space {
        SearchSpace::AllConnected { n } => h.n() == n && h.is_connected(),
        SearchSpace::UniformConnected { n, k } => h.n() == n && uniform_k(k) && h.is_connected(),
        SearchSpace::WeakBipartite { p, q } => {
            h.n() == p + q
                && h.is_connected()
                && h.edges()
                    .iter()
                    .all(|e| e.members()[0] < p as u32 && *e.members().last().unwrap() >= p as u32)
        }
        SearchSpace::Hypertrees { n_max, m } => h.n() <= n_max && h.edge_count() == m && h.is_hypertree(),
        SearchSpace::HypertreesOn { n, m } => h.n() == n && h.edge_count() == m && h.is_hypertree(),
        SearchSpace::UniformHypertrees { k, m } => h.edge_count() == m && uniform_k(k) && h.is_hypertree(),
    }
}

/// Every claim at its default parameters.
pub fn run_ledger(opts: &ScanOptions) -> Result<Vec<VerificationReport>, VerifyError> {
    CLAIMS
        .iter()
        .map(|c| check_claim(c.id, &c.default_params(), opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_are_unique() {
        let mut ids: Vec<_> = CLAIMS.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CLAIMS.len());
        for c in CLAIMS {
            assert_eq!(c.params.len(), c.defaults.len(), "{}", c.id);
            assert_eq!(c.params.len(), c.minimums.len(), "{}", c.id);
        }
    }

    #[test]
    fn classification() {
        let v = |x: u64| IndexValue::from(x);
        assert_eq!(Status::classify(Side::Lower, &v(5), &v(5)), Status::HoldsTight);
        assert_eq!(Status::classify(Side::Lower, &v(4), &v(5)), Status::HoldsSlack);
        assert_eq!(Status::classify(Side::Lower, &v(6), &v(5)), Status::Violated);
        assert_eq!(Status::classify(Side::Upper, &v(6), &v(5)), Status::HoldsSlack);
        assert_eq!(Status::classify(Side::Upper, &v(4), &v(5)), Status::Violated);
    }

    #[test]
    fn claimed_bounds_evaluate_exactly() {
        let bound =
            |id: &str, p: &[(&str, usize)]| find_claim(id).unwrap().claimed_bound(&ClaimParams::new(p)).unwrap();
        assert_eq!(bound("general-upper-hm1", &[("n", 4)]), IndexValue::from(3724u64));
        assert_eq!(bound("general-upper-hm2", &[("n", 4)]), IndexValue::from(6249803u64));
        assert_eq!(
            bound("uniform-hypertree-upper-hm1", &[("k", 3), ("m", 3)]),
            IndexValue::from(243u64)
        );
        assert_eq!(
            bound("ktree-lower-hm1-lemma-variant", &[("k", 3), ("m", 3)]),
            IndexValue::from(86u64)
        );
        assert_eq!(
            bound("ktree-lower-hm2-lemma-variant", &[("k", 3), ("m", 3)]),
            IndexValue::from(96u64)
        );
        assert_eq!(
            bound("ktree-lower-hm1-corollary-variant", &[("k", 3), ("m", 3)]),
            IndexValue::from(57u64)
        );
        assert_eq!(
            bound("sunflower-upper-hm1", &[("k", 3), ("m", 3)]),
            IndexValue::from(147u64)
        );
        assert_eq!(
            bound("hypertree-upper-hm1", &[("m", 3), ("p", 2)]),
            IndexValue::from(3 * 81u64)
        );
    }

    #[test]
    fn parameter_errors() {
        let opts = ScanOptions::default();
        assert!(matches!(
            check_claim("no-such-claim", &ClaimParams::default(), &opts),
            Err(VerifyError::UnknownClaim(_))
        ));
        assert!(matches!(
            check_claim("general-upper-hm1", &ClaimParams::default(), &opts),
            Err(VerifyError::MissingParam { .. })
        ));
        assert!(matches!(
            check_claim("general-upper-hm1", &"n=4,k=2".parse().unwrap(), &opts),
            Err(VerifyError::InvalidParams(_))
        ));
        assert!(matches!(
            check_claim("general-upper-hm1", &"n=1".parse().unwrap(), &opts),
            Err(VerifyError::InvalidParams(_))
        ));
        assert!(matches!(
            check_claim("general-upper-hm1", &"n=6".parse().unwrap(), &opts),
            Err(VerifyError::SpaceTooLarge { .. })
        ));
        assert!("n=x".parse::<ClaimParams>().is_err());
    }
}
