//! Extremal hypergraph families, their closed-form index expressions, and a
//! structural cross-check of every expression against the generated object.
//!
//! Vertex numbering is fixed so that generated files are stable:
//! sunflowers put the seeds first and then the petal blocks in order,
//! hyperpaths number vertices along the chain, and the complete weak
//! bipartite hypergraph puts side one at `0..p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::indices::{hm1, hm2, Index, IndexValue};

/// Largest edge count [`generate`] will materialize.
pub const MAX_GENERATED_EDGES: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),
    #[error("cannot parse family `{text}`: {msg}")]
    Syntax { text: String, msg: String },
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidFamilyParams(msg.into())
}

/// Parameter record selecting one family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// All subsets of size at least 2 of `n` vertices.
    Complete { n: usize },
    /// All `k`-subsets of `n` vertices.
    CompleteUniform { n: usize, k: usize },
    /// Every subset meeting both sides of a `p` / `q` split.
    CompleteWeakBipartite { p: usize, q: usize },
    /// `p` shared seeds plus `m` disjoint petal blocks of size `k - p`.
    Sunflower { m: usize, p: usize, k: usize },
    /// `m` edges of size `k` through one center.
    Hyperstar { m: usize, k: usize },
    /// `m` edges of size `k` in a linear chain.
    UniformHyperpath { m: usize, k: usize },
    /// Linear chain with the given edge sizes.
    GeneralHyperpath { sizes: Vec<usize> },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::Complete { n } if n < 2 => Err(invalid(format!("complete needs n >= 2, got {n}"))),
            FamilySpec::CompleteUniform { n, k } if !(2 <= k && k <= n) => {
                Err(invalid(format!("uniform needs 2 <= k <= n, got n={n}, k={k}")))
            }
            FamilySpec::CompleteWeakBipartite { p, q } if p == 0 || q == 0 => {
                Err(invalid(format!("bipartite needs p, q >= 1, got p={p}, q={q}")))
            }
            FamilySpec::Sunflower { m, p, k } if m == 0 || p == 0 || p >= k => Err(invalid(format!(
                "sunflower needs m >= 1 and 1 <= p < k, got m={m}, p={p}, k={k}"
            ))),
            FamilySpec::Hyperstar { m, k } if m < 2 || k < 2 => {
                Err(invalid(format!("star needs m, k >= 2, got m={m}, k={k}")))
            }
            FamilySpec::UniformHyperpath { m, k } if m < 2 || k < 2 => {
                Err(invalid(format!("path needs m, k >= 2, got m={m}, k={k}")))
            }
            FamilySpec::GeneralHyperpath { ref sizes } => {
                if sizes.len() < 2 {
                    Err(invalid(format!("path needs at least 2 edges, got {}", sizes.len())))
                } else if let Some(s) = sizes.iter().find(|&&s| s < 2) {
                    Err(invalid(format!("path edge sizes must be >= 2, got {s}")))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Vertex count of the generated hypergraph.
    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Complete { n } | FamilySpec::CompleteUniform { n, .. } => n,
            FamilySpec::CompleteWeakBipartite { p, q } => p + q,
            FamilySpec::Sunflower { m, p, k } => p + m * (k - p),
            FamilySpec::Hyperstar { m, k } => 1 + m * (k - 1),
            FamilySpec::UniformHyperpath { m, k } => m * (k - 1) + 1,
            FamilySpec::GeneralHyperpath { ref sizes } => sizes.iter().sum::<usize>() + 1 - sizes.len(),
        }
    }

    fn edge_count(&self) -> BigUint {
        match *self {
            FamilySpec::Complete { n } => (BigUint::one() << n) - 1u32 - n,
            FamilySpec::CompleteUniform { n, k } => binomial(BigUint::from(n), BigUint::from(k)),
            FamilySpec::CompleteWeakBipartite { p, q } => {
                ((BigUint::one() << p) - 1u32) * ((BigUint::one() << q) - 1u32)
            }
            FamilySpec::Sunflower { m, .. }
            | FamilySpec::Hyperstar { m, .. }
            | FamilySpec::UniformHyperpath { m, .. } => BigUint::from(m),
            FamilySpec::GeneralHyperpath { ref sizes } => BigUint::from(sizes.len()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n } => write!(f, "complete:n={n}"),
            FamilySpec::CompleteUniform { n, k } => write!(f, "uniform:n={n},k={k}"),
            FamilySpec::CompleteWeakBipartite { p, q } => write!(f, "bipartite:p={p},q={q}"),
            FamilySpec::Sunflower { m, p, k } => write!(f, "sunflower:m={m},p={p},k={k}"),
            FamilySpec::Hyperstar { m, k } => write!(f, "star:m={m},k={k}"),
            FamilySpec::UniformHyperpath { m, k } => write!(f, "path:m={m},k={k}"),
            FamilySpec::GeneralHyperpath { sizes } => {
                let s: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
                write!(f, "path:sizes={}", s.join(","))
            }
        }
    }
}

/// `key=value` pairs after a `name:` prefix, e.g. `n=5,k=3`.
pub(crate) struct Params<'a> {
    text: &'a str,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    pub(crate) fn parse(text: &'a str, body: &'a str) -> Result<Self, FamilyError> {
        let mut pairs = Vec::new();
        for item in body.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| FamilyError::Syntax {
                text: text.into(),
                msg: format!("expected key=value, found `{item}`"),
            })?;
            pairs.push((k.trim(), v.trim()));
        }
        Ok(Self { text, pairs })
    }

    pub(crate) fn get(&self, key: &str) -> Result<usize, FamilyError> {
        let raw = self
            .pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| FamilyError::Syntax {
                text: self.text.into(),
                msg: format!("missing parameter `{key}`"),
            })?;
        raw.parse().map_err(|_| FamilyError::Syntax {
            text: self.text.into(),
            msg: format!("parameter `{key}` must be a non-negative integer, got `{raw}`"),
        })
    }

    pub(crate) fn expect_only(&self, keys: &[&str]) -> Result<(), FamilyError> {
        match self.pairs.iter().find(|(k, _)| !keys.contains(k)) {
            Some((k, _)) => Err(FamilyError::Syntax {
                text: self.text.into(),
                msg: format!("unexpected parameter `{k}`"),
            }),
            None => Ok(()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses `complete:n=4`, `uniform:n=5,k=3`, `bipartite:p=2,q=2`,
    /// `sunflower:m=3,p=2,k=3`, `star:m=3,k=3`, `path:m=3,k=3` or
    /// `path:sizes=3,4,3`. The result is validated.
    fn from_str(text: &str) -> Result<Self, FamilyError> {
        let text = text.trim();
        let (name, body) = text.split_once(':').ok_or_else(|| FamilyError::Syntax {
            text: text.into(),
            msg: "expected `family:key=value,...`".into(),
        })?;
        let spec = if name == "path" && body.trim_start().starts_with("sizes=") {
            let list = body.trim_start().trim_start_matches("sizes=");
            let sizes = list
                .split(',')
                .map(|s| {
                    s.trim().parse::<usize>().map_err(|_| FamilyError::Syntax {
                        text: text.into(),
                        msg: format!("edge size `{s}` is not a non-negative integer"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            FamilySpec::GeneralHyperpath { sizes }
        } else {
            let p = Params::parse(text, body)?;
            let (spec, keys): (FamilySpec, &[&str]) = match name {
                "complete" => (FamilySpec::Complete { n: p.get("n")? }, &["n"]),
                "uniform" => (
                    FamilySpec::CompleteUniform {
                        n: p.get("n")?,
                        k: p.get("k")?,
                    },
                    &["n", "k"],
                ),
                "bipartite" => (
                    FamilySpec::CompleteWeakBipartite {
                        p: p.get("p")?,
                        q: p.get("q")?,
                    },
                    &["p", "q"],
                ),
                "sunflower" => (
                    FamilySpec::Sunflower {
                        m: p.get("m")?,
                        p: p.get("p")?,
                        k: p.get("k")?,
                    },
                    &["m", "p", "k"],
                ),
                "star" => (
                    FamilySpec::Hyperstar {
                        m: p.get("m")?,
                        k: p.get("k")?,
                    },
                    &["m", "k"],
                ),
                "path" => (
                    FamilySpec::UniformHyperpath {
                        m: p.get("m")?,
                        k: p.get("k")?,
                    },
                    &["m", "k"],
                ),
                other => {
                    return Err(FamilyError::Syntax {
                        text: text.into(),
                        msg: format!("unknown family `{other}` (complete, uniform, bipartite, sunflower, star, path)"),
                    })
                }
            };
            p.expect_only(keys)?;
            spec
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&v| v as Vertex).collect());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Materializes the family's hypergraph.
pub fn generate(spec: &FamilySpec) -> Result<Hypergraph, FamilyError> {
    spec.validate()?;
    if spec.edge_count() > BigUint::from(MAX_GENERATED_EDGES) {
        return Err(invalid(format!(
            "{spec} has more than {MAX_GENERATED_EDGES} edges; use closed forms instead"
        )));
    }
    let n = spec.vertex_count();
    let lists: Vec<Vec<Vertex>> = match *spec {
        FamilySpec::Complete { n } => (2..=n).flat_map(|k| k_subsets(n, k)).collect(),
        FamilySpec::CompleteUniform { n, k } => k_subsets(n, k),
        FamilySpec::CompleteWeakBipartite { p, q } => (2..=p + q)
            .flat_map(|k| k_subsets(p + q, k))
            .filter(|e| e.iter().any(|&v| (v as usize) < p) && e.iter().any(|&v| (v as usize) >= p))
            .collect(),
        FamilySpec::Sunflower { m, p, k } => sunflower_edges(m, p, k),
        FamilySpec::Hyperstar { m, k } => sunflower_edges(m, 1, k),
        FamilySpec::UniformHyperpath { m, k } => path_edges(&vec![k; m]),
        FamilySpec::GeneralHyperpath { ref sizes } => path_edges(sizes),
    };
    let mut edges: Vec<Edge> = lists.into_iter().map(Edge::from_sorted).collect();
    edges.sort_unstable();
    Ok(Hypergraph::from_canonical(n, edges))
}

fn sunflower_edges(m: usize, p: usize, k: usize) -> Vec<Vec<Vertex>> {
    let petal = k - p;
    (0..m)
        .map(|i| {
            (0..p)
                .chain(p + i * petal..p + (i + 1) * petal)
                .map(|v| v as Vertex)
                .collect()
        })
        .collect()
}

fn path_edges(sizes: &[usize]) -> Vec<Vec<Vertex>> {
    let mut start = 0usize;
    sizes
        .iter()
        .map(|&s| {
            let e = (start..start + s).map(|v| v as Vertex).collect();
            start += s - 1;
            e
        })
        .collect()
}

/// Closed-form index values, one entry per known expression.
///
/// Labels name the result the expression comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub hm1_variants: Vec<(String, IndexValue)>,
    pub hm2_variants: Vec<(String, IndexValue)>,
}

impl ClosedForm {
    pub fn variants(&self, index: Index) -> &[(String, IndexValue)] {
        match index {
            Index::Hm1 => &self.hm1_variants,
            Index::Hm2 => &self.hm2_variants,
        }
    }
}

pub const LABEL_COMPLETE: &str = "lemma:complete";
pub const LABEL_COMPLETE_SIMPLIFIED: &str = "corollary:complete-simplified";
pub const LABEL_COMPLETE_UNIFORM: &str = "lemma:complete-uniform";
pub const LABEL_COMPLETE_WEAK_BIPARTITE: &str = "lemma:complete-weak-bipartite";
pub const LABEL_SUNFLOWER: &str = "lemma:sunflower";
pub const LABEL_HYPERSTAR: &str = "lemma:hyperstar";
pub const LABEL_UNIFORM_PATH_COROLLARY: &str = "corollary:uniform-hyperpath";
pub const LABEL_UNIFORM_PATH_LEMMA: &str = "lemma:uniform-hyperpath";
pub const LABEL_PATH_GENERALIZED: &str = "lemma:hyperpath-generalized-ends";
pub const LABEL_PATH_AS_STATED: &str = "lemma:hyperpath-as-stated";
pub const LABEL_PATH: &str = "lemma:hyperpath";

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn sq(v: &BigUint) -> BigUint {
    v * v
}

fn choose(n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(big(n), big(k))
    }
}

/// Complete hypergraph: per-vertex degree `2^(n-1) - 1`.
pub fn complete_hm1(n: usize) -> BigUint {
    let d = pow2(n - 1) - 1u32;
    big(n) * sq(&d) * (big(n + 1) * pow2(n - 2) - 1u32)
}

pub fn complete_hm2(n: usize) -> BigUint {
    let d2 = sq(&(pow2(n - 1) - 1u32));
    num_traits::pow(BigUint::one() + &d2, n) - 1u32 - big(n) * d2
}

fn complete_hm1_simplified(n: usize) -> BigUint {
    let d2 = sq(&(pow2(n - 1) - 1u32));
    big(n) * big(n + 1) * pow2(n - 2) * &d2 - big(n) * d2
}

pub fn complete_uniform_hm1(n: usize, k: usize) -> BigUint {
    choose(n, k) * big(k * k) * sq(&choose(n - 1, k - 1))
}

pub fn complete_uniform_hm2(n: usize, k: usize) -> BigUint {
    choose(n, k) * num_traits::pow(choose(n - 1, k - 1), 2 * k)
}

/// Degrees in the complete weak bipartite hypergraph: side one, side two.
pub fn weak_bipartite_degrees(p: usize, q: usize) -> (BigUint, BigUint) {
    (pow2(p - 1) * (pow2(q) - 1u32), pow2(q - 1) * (pow2(p) - 1u32))
}

/// Double sums over edge size and the number of side-one members.
pub fn complete_weak_bipartite(p: usize, q: usize) -> (BigUint, BigUint) {
    let (d1, d2) = weak_bipartite_degrees(p, q);
    let mut h1 = BigUint::zero();
    let mut h2 = BigUint::zero();
    for k in 2..=p + q {
        for i in 1..k {
            let count = choose(p, i) * choose(q, k - i);
            if count.is_zero() {
                continue;
            }
            let sum = big(i) * &d1 + big(k - i) * &d2;
            h1 += &count * sq(&sum);
            h2 += &count * num_traits::pow(d1.clone(), 2 * i) * num_traits::pow(d2.clone(), 2 * (k - i));
        }
    }
    (h1, h2)
}

pub fn sunflower(m: usize, p: usize, k: usize) -> (BigUint, BigUint) {
    (big(m) * sq(&big(p * m + k - p)), num_traits::pow(big(m), 2 * p + 1))
}

pub fn hyperstar(m: usize, k: usize) -> (BigUint, BigUint) {
    (big(m) * sq(&big(m + k - 1)), num_traits::pow(big(m), 3))
}

/// `2(k+1)^2 + (m-2)(k+2)^2` and `16m - 24`.
pub fn uniform_hyperpath_corollary(m: usize, k: usize) -> (BigUint, BigUint) {
    (
        big(2) * sq(&big(k + 1)) + big(m - 2) * sq(&big(k + 2)),
        big(16 * m - 24),
    )
}

/// `4k^2 m - 8k + 2` and `2^(2k-1)(2m-3)`.
pub fn uniform_hyperpath_lemma(m: usize, k: usize) -> (BigUint, BigUint) {
    (big(4 * k * k * m + 2) - big(8 * k), pow2(2 * k - 1) * big(2 * m - 3))
}

fn hyperpath_generalized_hm1(sizes: &[usize]) -> BigUint {
    let m = sizes.len();
    sq(&big(sizes[0] + 1))
        + sq(&big(sizes[m - 1] + 1))
        + sizes[1..m - 1].iter().map(|&s| sq(&big(s + 2))).sum::<BigUint>()
}

fn hyperpath_as_stated_hm1(sizes: &[usize]) -> BigUint {
    let m = sizes.len();
    big(2) * sq(&big(sizes[0] + 1)) + sizes[1..m - 1].iter().map(|&s| sq(&big(s + 2))).sum::<BigUint>()
}

/// Evaluates every known expression for the family.
pub fn closed_form(spec: &FamilySpec) -> Result<ClosedForm, FamilyError> {
    spec.validate()?;
    let v = |label: &str, x: BigUint| (label.to_string(), IndexValue(x));
    let (hm1_variants, hm2_variants) = match *spec {
        FamilySpec::Complete { n } => (
            vec![
                v(LABEL_COMPLETE, complete_hm1(n)),
                v(LABEL_COMPLETE_SIMPLIFIED, complete_hm1_simplified(n)),
            ],
            vec![
                v(LABEL_COMPLETE, complete_hm2(n)),
                v(LABEL_COMPLETE_SIMPLIFIED, complete_hm2(n)),
            ],
        ),
        FamilySpec::CompleteUniform { n, k } => (
            vec![v(LABEL_COMPLETE_UNIFORM, complete_uniform_hm1(n, k))],
            vec![v(LABEL_COMPLETE_UNIFORM, complete_uniform_hm2(n, k))],
        ),
        FamilySpec::CompleteWeakBipartite { p, q } => {
            let (a, b) = complete_weak_bipartite(p, q);
            (
                vec![v(LABEL_COMPLETE_WEAK_BIPARTITE, a)],
                vec![v(LABEL_COMPLETE_WEAK_BIPARTITE, b)],
            )
        }
        FamilySpec::Sunflower { m, p, k } => {
            let (a, b) = sunflower(m, p, k);
            (vec![v(LABEL_SUNFLOWER, a)], vec![v(LABEL_SUNFLOWER, b)])
        }
        FamilySpec::Hyperstar { m, k } => {
            let (a, b) = hyperstar(m, k);
            let (sa, sb) = sunflower(m, 1, k);
            (
                vec![v(LABEL_HYPERSTAR, a), v(LABEL_SUNFLOWER, sa)],
                vec![v(LABEL_HYPERSTAR, b), v(LABEL_SUNFLOWER, sb)],
            )
        }
        FamilySpec::UniformHyperpath { m, k } => {
            let (ca, cb) = uniform_hyperpath_corollary(m, k);
            let (la, lb) = uniform_hyperpath_lemma(m, k);
            (
                vec![v(LABEL_UNIFORM_PATH_COROLLARY, ca), v(LABEL_UNIFORM_PATH_LEMMA, la)],
                vec![v(LABEL_UNIFORM_PATH_COROLLARY, cb), v(LABEL_UNIFORM_PATH_LEMMA, lb)],
            )
        }
        FamilySpec::GeneralHyperpath { ref sizes } => (
            vec![
                v(LABEL_PATH_GENERALIZED, hyperpath_generalized_hm1(sizes)),
                v(LABEL_PATH_AS_STATED, hyperpath_as_stated_hm1(sizes)),
            ],
            vec![v(LABEL_PATH, big(16 * sizes.len() - 24))],
        ),
    };
    Ok(ClosedForm {
        hm1_variants,
        hm2_variants,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub index: Index,
    pub label: String,
    pub claimed: IndexValue,
    pub matches: bool,
}

/// Structural index values of a generated family next to every closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub spec: FamilySpec,
    pub structural_hm1: IndexValue,
    pub structural_hm2: IndexValue,
    pub verdicts: Vec<Verdict>,
}

impl CrossCheckReport {
    pub fn structural(&self, index: Index) -> &IndexValue {
        match index {
            Index::Hm1 => &self.structural_hm1,
            Index::Hm2 => &self.structural_hm2,
        }
    }

    /// True iff some variant of each index matches the structure.
    pub fn any_match(&self) -> bool {
        Index::BOTH
            .iter()
            .all(|&ix| self.verdicts.iter().any(|v| v.index == ix && v.matches))
    }

    pub fn verdict(&self, index: Index, label: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.index == index && v.label == label)
    }
}

pub fn cross_check(spec: &FamilySpec) -> Result<CrossCheckReport, FamilyError> {
    let h = generate(spec)?;
    let forms = closed_form(spec)?;
    let structural_hm1 = hm1(&h);
    let structural_hm2 = hm2(&h);
    let mut verdicts = Vec::new();
    for index in Index::BOTH {
        let actual = match index {
            Index::Hm1 => &structural_hm1,
            Index::Hm2 => &structural_hm2,
        };
        for (label, claimed) in forms.variants(index) {
            verdicts.push(Verdict {
                index,
                label: label.clone(),
                claimed: claimed.clone(),
                matches: claimed == actual,
            });
        }
    }
    Ok(CrossCheckReport {
        spec: spec.clone(),
        structural_hm1,
        structural_hm2,
        verdicts,
    })
}
