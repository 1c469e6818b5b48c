use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;
use serde::Serialize;

use super::VerifyError;
use crate::bits::{self, MAX_BITSET_VERTICES};
use crate::families::{k_subsets, Params};

/// A finite class of labeled hypergraphs to enumerate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SearchSpace {
    /// Connected hypergraphs on exactly `n` vertices (no isolated vertex).
    AllConnected { n: usize },
    /// Connected `k`-uniform hypergraphs on `n` vertices.
    UniformConnected { n: usize, k: usize },
    /// Connected hypergraphs on `p + q` vertices whose edges all meet both
    /// `0..p` and `p..p+q`.
    WeakBipartite { p: usize, q: usize },
    /// Hypertrees with exactly `m` edges on any `n <= n_max` vertices, none
    /// isolated.
    Hypertrees { n_max: usize, m: usize },
    /// Hypertrees with exactly `m` edges on exactly `n` vertices.
    HypertreesOn { n: usize, m: usize },
    /// `k`-uniform hypertrees with exactly `m` edges, over every feasible
    /// vertex count up to `m(k-1)+1`.
    UniformHypertrees { k: usize, m: usize },
}

impl fmt::Display for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SearchSpace::AllConnected { n } => write!(f, "connected:n={n}"),
            SearchSpace::UniformConnected { n, k } => write!(f, "uniform:n={n},k={k}"),
            SearchSpace::WeakBipartite { p, q } => write!(f, "bipartite:p={p},q={q}"),
            SearchSpace::Hypertrees { n_max, m } => write!(f, "hypertrees:n_max={n_max},m={m}"),
            SearchSpace::HypertreesOn { n, m } => write!(f, "hypertrees-on:n={n},m={m}"),
            SearchSpace::UniformHypertrees { k, m } => write!(f, "uniform-hypertrees:k={k},m={m}"),
        }
    }
}

impl Serialize for SearchSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for SearchSpace {
    type Err = VerifyError;

    /// Parses the syntax produced by `Display`, e.g. `connected:n=4` or
    /// `uniform-hypertrees:k=3,m=3`.
    fn from_str(text: &str) -> Result<Self, VerifyError> {
        let text = text.trim();
        let syntax = |msg: String| VerifyError::InvalidSpace(format!("`{text}`: {msg}"));
        let (name, body) = text
            .split_once(':')
            .ok_or_else(|| syntax("expected `space:key=value,...`".into()))?;
        let param_err = |e: crate::families::FamilyError| VerifyError::InvalidSpace(e.to_string());
        let p = Params::parse(text, body).map_err(param_err)?;
        let get = |k: &str| p.get(k).map_err(param_err);
        let (space, keys): (SearchSpace, &[&str]) = match name {
            "connected" => (SearchSpace::AllConnected { n: get("n")? }, &["n"]),
            "uniform" => (SearchSpace::UniformConnected { n: get("n")?, k: get("k")? }, &["n", "k"]),
            "bipartite" => (SearchSpace::WeakBipartite { p: get("p")?, q: get("q")? }, &["p", "q"]),
            "hypertrees" => (SearchSpace::Hypertrees { n_max: get("n_max")?, m: get("m")? }, &["n_max", "m"]),
            "hypertrees-on" => (SearchSpace::HypertreesOn { n: get("n")?, m: get("m")? }, &["n", "m"]),
            "uniform-hypertrees" => {
                (SearchSpace::UniformHypertrees { k: get("k")?, m: get("m")? }, &["k", "m"])
            }
            other => {
                return Err(syntax(format!(
                    "unknown space `{other}` (connected, uniform, bipartite, hypertrees, hypertrees-on, uniform-hypertrees)"
                )))
            }
        };
        p.expect_only(keys).map_err(param_err)?;
        space.validate()?;
        Ok(space)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Selection {
    /// Every subset of the candidates.
    All,
    /// Subsets of exactly this many candidates.
    Exactly(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Filter {
    Connected,
    Hypertree,
}

/// One vertex count of a space: candidate edges plus the subset rule.
#[derive(Debug, Clone)]
pub(crate) struct Layer {
    pub n: usize,
    pub full: u64,
    pub candidates: Vec<u64>,
    pub selection: Selection,
    pub filter: Filter,
}

impl Layer {
    fn new(n: usize, candidates: Vec<u64>, selection: Selection, filter: Filter) -> Self {
        Self {
            n,
            full: bits::full_mask(n),
            candidates,
            selection,
            filter,
        }
    }

    /// Number of candidate subsets this layer visits.
    #[cfg(test)]
    pub fn subsets(&self) -> BigUint {
        let c = self.candidates.len();
        match self.selection {
            Selection::All => BigUint::one() << c,
            Selection::Exactly(m) if m > c => BigUint::from(0u32),
            Selection::Exactly(m) => binomial(BigUint::from(c), BigUint::from(m)),
        }
    }
}

fn mask_of(members: &[u32]) -> u64 {
    members.iter().fold(0, |acc, &v| acc | (1u64 << v))
}

fn subsets_of_size_at_least_two(n: usize) -> Vec<u64> {
    (2..=n).flat_map(|k| k_subsets(n, k)).map(|e| mask_of(&e)).collect()
}

impl SearchSpace {
    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |msg: String| Err(VerifyError::InvalidSpace(format!("{self}: {msg}")));
        match *self {
            SearchSpace::AllConnected { n: 0 } => bad("n must be >= 1".into()),
            SearchSpace::UniformConnected { n, k } if !(2 <= k && k <= n) => bad("need 2 <= k <= n".into()),
            SearchSpace::WeakBipartite { p, q } if p == 0 || q == 0 => bad("need p, q >= 1".into()),
            SearchSpace::Hypertrees { n_max, m } if n_max < 2 || m == 0 => bad("need n_max >= 2, m >= 1".into()),
            SearchSpace::HypertreesOn { n, m } if n < 2 || m == 0 => bad("need n >= 2, m >= 1".into()),
            SearchSpace::UniformHypertrees { k, m } if k < 2 || m == 0 => bad("need k >= 2, m >= 1".into()),
            _ => {
                let n = self.max_vertices();
                if n > MAX_BITSET_VERTICES {
                    Err(VerifyError::UnsupportedN { n })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Largest vertex count of any member.
    pub fn max_vertices(&self) -> usize {
        match *self {
            SearchSpace::AllConnected { n } | SearchSpace::UniformConnected { n, .. } => n,
            SearchSpace::WeakBipartite { p, q } => p + q,
            SearchSpace::Hypertrees { n_max, .. } => n_max,
            SearchSpace::HypertreesOn { n, .. } => n,
            SearchSpace::UniformHypertrees { k, m } => m * (k - 1) + 1,
        }
    }

    /// Candidate-subset count without materializing candidates.
    pub fn subset_count(&self) -> Result<BigUint, VerifyError> {
        self.validate()?;
        let two_pow = |e: usize| BigUint::one() << e;
        let c = |n: usize, k: usize| binomial(BigUint::from(n), BigUint::from(k));
        let at_least_two = |n: usize| two_pow(n) - 1u32 - n;
        Ok(match *self {
            SearchSpace::AllConnected { n } => two_pow((two_pow(n) - 1u32 - n).try_into().unwrap_or(usize::MAX)),
            SearchSpace::UniformConnected { n, k } => two_pow(c(n, k).try_into().unwrap_or(usize::MAX)),
            SearchSpace::WeakBipartite { p, q } => {
                let cross = (two_pow(p) - 1u32) * (two_pow(q) - 1u32);
                two_pow(cross.try_into().unwrap_or(usize::MAX))
            }
            SearchSpace::Hypertrees { n_max, m } => (2..=n_max).map(|n| c_or_zero(at_least_two(n), m)).sum(),
            SearchSpace::HypertreesOn { n, m } => c_or_zero(at_least_two(n), m),
            SearchSpace::UniformHypertrees { k, m } => (k..=m * (k - 1) + 1).map(|n| c_or_zero(c(n, k), m)).sum(),
        })
    }

    pub(crate) fn layers(&self) -> Result<Vec<Layer>, VerifyError> {
        self.validate()?;
        Ok(match *self {
            SearchSpace::AllConnected { n } => {
                vec![Layer::new(
                    n,
                    subsets_of_size_at_least_two(n),
                    Selection::All,
                    Filter::Connected,
                )]
            }
            SearchSpace::UniformConnected { n, k } => {
                let cands = k_subsets(n, k).iter().map(|e| mask_of(e)).collect();
                vec![Layer::new(n, cands, Selection::All, Filter::Connected)]
            }
            SearchSpace::WeakBipartite { p, q } => {
                let side1 = bits::full_mask(p);
                let cands = subsets_of_size_at_least_two(p + q)
                    .into_iter()
                    .filter(|&e| e & side1 != 0 && e & !side1 != 0)
                    .collect();
                vec![Layer::new(p + q, cands, Selection::All, Filter::Connected)]
            }
            SearchSpace::Hypertrees { n_max, m } => (2..=n_max)
                .map(|n| {
                    Layer::new(
                        n,
                        subsets_of_size_at_least_two(n),
                        Selection::Exactly(m),
                        Filter::Hypertree,
                    )
                })
                .collect(),
            SearchSpace::HypertreesOn { n, m } => {
                vec![Layer::new(
                    n,
                    subsets_of_size_at_least_two(n),
                    Selection::Exactly(m),
                    Filter::Hypertree,
                )]
            }
            SearchSpace::UniformHypertrees { k, m } => (k..=m * (k - 1) + 1)
                .map(|n| {
                    let cands = k_subsets(n, k).iter().map(|e| mask_of(e)).collect();
                    Layer::new(n, cands, Selection::Exactly(m), Filter::Hypertree)
                })
                .collect(),
        })
    }
}

fn c_or_zero(n: BigUint, k: usize) -> BigUint {
    let k = BigUint::from(k);
    if k > n {
        BigUint::from(0u32)
    } else {
        binomial(n, k)
    }
}

/// Index combinations in colexicographic order, which for subsets encoded as
/// bit masks is increasing numeric order.
pub(crate) struct Colex {
    universe: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Colex {
    pub(crate) fn new(universe: usize, k: usize) -> Self {
        Self {
            universe,
            idx: (0..k).collect(),
            done: k > universe,
        }
    }

    /// Advances to the next combination; false once exhausted.
    fn advance(&mut self) -> bool {
        let k = self.idx.len();
        for i in 0..k {
            let limit = if i + 1 < k { self.idx[i + 1] } else { self.universe };
            if self.idx[i] + 1 < limit {
                self.idx[i] += 1;
                for j in 0..i {
                    self.idx[j] = j;
                }
                return true;
            }
        }
        false
    }

    pub(crate) fn current(&self) -> Option<&[usize]> {
        (!self.done).then_some(&self.idx[..])
    }

    pub(crate) fn step(&mut self) {
        if !self.done && !self.advance() {
            self.done = true;
        }
    }
}
