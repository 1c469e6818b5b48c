use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::space::{Colex, Filter, Layer, SearchSpace, Selection};
use super::VerifyError;
use crate::bits::{self, Ones, MAX_BITSET_VERTICES};
use crate::hypergraph::Hypergraph;
use crate::indices::{Index, IndexValue};
use crate::io::to_inline;

/// Refuse spaces with more candidate subsets than this unless overridden.
pub const DEFAULT_CAP: u64 = 1 << 26;
pub const DEFAULT_MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    pub cap: u64,
    pub override_cap: bool,
    pub max_witnesses: usize,
    /// Evaluate with arbitrary precision even when 128-bit arithmetic is
    /// provably enough.
    pub force_bigint: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            threads: 0,
            cap: DEFAULT_CAP,
            override_cap: false,
            max_witnesses: DEFAULT_MAX_WITNESSES,
            force_bigint: false,
        }
    }
}

/// Extremes of one index over a space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub space: SearchSpace,
    pub index: Index,
    pub population: u64,
    pub min: Extreme,
    pub max: Extreme,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extreme {
    pub value: IndexValue,
    /// How many members attain the value.
    pub count: u64,
    /// Attaining members, smallest canonical form first, at most
    /// `max_witnesses` of them.
    #[serde(serialize_with = "inline_list")]
    pub witnesses: Vec<Hypergraph>,
}

fn inline_list<S: serde::Serializer>(v: &[Hypergraph], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(to_inline))
}

/// Both indices from a single pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub space: SearchSpace,
    pub population: u64,
    pub subsets_visited: u64,
    pub hm1: ExtremalResult,
    pub hm2: ExtremalResult,
}

impl ScanResult {
    pub fn get(&self, index: Index) -> &ExtremalResult {
        match index {
            Index::Hm1 => &self.hm1,
            Index::Hm2 => &self.hm2,
        }
    }
}

pub(crate) fn checked_layers(space: &SearchSpace, opts: &ScanOptions) -> Result<Vec<Layer>, VerifyError> {
    let subsets = space.subset_count()?;
    if !opts.override_cap && subsets > BigUint::from(opts.cap) {
        return Err(VerifyError::SpaceTooLarge { subsets, cap: opts.cap });
    }
    let layers = space.layers()?;
    if let Some(m) = layers.iter().find_map(|l| match l.selection {
        Selection::Exactly(m) if m > MAX_BITSET_VERTICES => Some(m),
        _ => None,
    }) {
        return Err(VerifyError::InvalidSpace(format!(
            "{space}: at most {MAX_BITSET_VERTICES} edges, got {m}"
        )));
    }
    // bit-mask iteration needs the candidate count to fit in a word
    if layers
        .iter()
        .any(|l| l.selection == Selection::All && l.candidates.len() >= MAX_BITSET_VERTICES)
    {
        return Err(VerifyError::SpaceTooLarge { subsets, cap: opts.cap });
    }
    Ok(layers)
}

/// Stream of every member of `space`, layer by layer (increasing vertex
/// count), then by edge count, then in increasing bit-mask order of the chosen
/// candidates.
pub fn enumerate(space: &SearchSpace, opts: &ScanOptions) -> Result<Enumeration, VerifyError> {
    let layers = checked_layers(space, opts)?;
    let mut it = Enumeration {
        layers,
        layer: 0,
        size: 0,
        combos: None,
    };
    it.start_layer();
    Ok(it)
}

pub struct Enumeration {
    layers: Vec<Layer>,
    layer: usize,
    size: usize,
    combos: Option<Colex>,
}

impl Enumeration {
    fn start_layer(&mut self) {
        self.combos = self.layers.get(self.layer).map(|l| {
            self.size = match l.selection {
                Selection::All => 0,
                Selection::Exactly(m) => m,
            };
            Colex::new(l.candidates.len(), self.size)
        });
    }

    /// Moves past the exhausted combination stream.
    fn roll_over(&mut self) {
        let l = &self.layers[self.layer];
        if l.selection == Selection::All && self.size < l.candidates.len() {
            self.size += 1;
            self.combos = Some(Colex::new(l.candidates.len(), self.size));
        } else {
            self.layer += 1;
            self.start_layer();
        }
    }
}

impl Iterator for Enumeration {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        loop {
            let combos = self.combos.as_mut()?;
            let Some(idx) = combos.current() else {
                self.roll_over();
                continue;
            };
            let l = &self.layers[self.layer];
            let edges: Vec<u64> = idx.iter().map(|&i| l.candidates[i]).collect();
            combos.step();
            if accepts(l, &edges) {
                return Some(Hypergraph::from_masks(l.n, edges));
            }
        }
    }
}

#[inline]
fn accepts(l: &Layer, edges: &[u64]) -> bool {
    match l.filter {
        Filter::Connected => bits::spans_connected(l.full, edges),
        Filter::Hypertree => bits::is_bridge_tree(l.full, edges),
    }
}

/// Exhaustive min/max of both indices over `space`.
///
/// The result does not depend on the thread count: partial results are merged
/// by value, counts add up, and witness lists keep the smallest canonical
/// members.
pub fn scan(space: &SearchSpace, opts: &ScanOptions) -> Result<ScanResult, VerifyError> {
    let layers = checked_layers(space, opts)?;
    let chunks: Vec<Chunk> = layers.iter().enumerate().flat_map(|(i, l)| chunks_of(i, l)).collect();
    let run = || {
        if !opts.force_bigint && layers.iter().all(fits_u128) {
            reduce::<u128>(&layers, &chunks, opts.max_witnesses)
        } else {
            reduce::<BigUint>(&layers, &chunks, opts.max_witnesses)
        }
    };
    let state = if opts.threads == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| VerifyError::ThreadPool(e.to_string()))?
            .install(run)
    };
    if state.population == 0 {
        return Err(VerifyError::EmptySpace(space.clone()));
    }
    let finish = |index: Index, t: [Option<Tracked<IndexValue>>; 2]| {
        let [min, max] = t.map(|t| {
            let t = t.expect("non-empty space has extremes");
            Extreme {
                value: t.value,
                count: t.count,
                witnesses: t.witnesses,
            }
        });
        ExtremalResult {
            space: space.clone(),
            index,
            population: state.population,
            min,
            max,
        }
    };
    Ok(ScanResult {
        space: space.clone(),
        population: state.population,
        subsets_visited: state.visited,
        hm1: finish(Index::Hm1, state.hm1),
        hm2: finish(Index::Hm2, state.hm2),
    })
}

/// Extremes of a single index over `space`.
pub fn extremal_scan(space: &SearchSpace, index: Index, opts: &ScanOptions) -> Result<ExtremalResult, VerifyError> {
    let r = scan(space, opts)?;
    Ok(match index {
        Index::Hm1 => r.hm1,
        Index::Hm2 => r.hm2,
    })
}

#[derive(Debug, Clone, Copy)]
enum Chunk {
    /// Candidate subsets with bit masks in `lo..hi`.
    Masks { layer: usize, lo: u64, hi: u64 },
    /// Fixed-size subsets whose highest candidate index is `top`.
    Top { layer: usize, top: usize },
}

const SPLIT_BITS: usize = 8;

fn chunks_of(i: usize, l: &Layer) -> Vec<Chunk> {
    let c = l.candidates.len();
    match l.selection {
        Selection::All if c <= 2 * SPLIT_BITS => vec![Chunk::Masks {
            layer: i,
            lo: 0,
            hi: 1u64 << c,
        }],
        Selection::All => {
            let width = 1u64 << (c - SPLIT_BITS);
            (0..1u64 << SPLIT_BITS)
                .map(|j| Chunk::Masks {
                    layer: i,
                    lo: j * width,
                    hi: (j + 1) * width,
                })
                .collect()
        }
        Selection::Exactly(m) if m == 0 || m > c => Vec::new(),
        Selection::Exactly(m) => (m - 1..c).map(|top| Chunk::Top { layer: i, top }).collect(),
    }
}

/// Whether every member's indices provably fit in 128 bits.
fn fits_u128(l: &Layer) -> bool {
    let edges = match l.selection {
        Selection::All => l.candidates.len(),
        Selection::Exactly(m) => m,
    };
    let max_deg = (0..l.n)
        .map(|v| l.candidates.iter().filter(|&&e| e >> v & 1 == 1).count())
        .max()
        .unwrap_or(0)
        .min(edges);
    let max_size = l.candidates.iter().map(|e| e.count_ones()).max().unwrap_or(0);
    let d = BigUint::from(max_deg);
    let sum = &d * max_size;
    let hm1 = &sum * &sum * edges;
    let hm2 = d.pow(2 * max_size) * edges;
    let limit = BigUint::from(u128::MAX);
    hm1 <= limit && hm2 <= limit
}

trait Accumulator: Clone + Ord + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn mul_small(&mut self, x: u64);
    fn add_square(&mut self, x: &Self);
    fn add_square_small(&mut self, x: u64);
    fn into_value(self) -> IndexValue;
}

impl Accumulator for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    #[inline]
    fn mul_small(&mut self, x: u64) {
        *self *= x as u128;
    }
    #[inline]
    fn add_square(&mut self, x: &Self) {
        *self += x * x;
    }
    #[inline]
    fn add_square_small(&mut self, x: u64) {
        *self += (x as u128) * (x as u128);
    }
    fn into_value(self) -> IndexValue {
        IndexValue::from(self)
    }
}

impl Accumulator for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn mul_small(&mut self, x: u64) {
        *self *= x;
    }
    fn add_square(&mut self, x: &Self) {
        *self += x * x;
    }
    fn add_square_small(&mut self, x: u64) {
        *self += BigUint::from(x) * x;
    }
    fn into_value(self) -> IndexValue {
        IndexValue(self)
    }
}

#[derive(Debug, Clone)]
struct Tracked<A> {
    value: A,
    count: u64,
    witnesses: Vec<Hypergraph>,
}

impl<A> Tracked<A> {
    fn map<B>(self, f: impl FnOnce(A) -> B) -> Tracked<B> {
        Tracked {
            value: f(self.value),
            count: self.count,
            witnesses: self.witnesses,
        }
    }
}

fn merge_witnesses(a: &mut Vec<Hypergraph>, b: Vec<Hypergraph>, cap: usize) {
    a.extend(b);
    a.sort();
    a.dedup();
    a.truncate(cap);
}

fn offer_witness(list: &mut Vec<Hypergraph>, cap: usize, lazy: &mut Lazy) {
    if cap == 0 {
        return;
    }
    let h = lazy.get();
    if list.len() >= cap && list.last().is_some_and(|last| &h >= last) {
        return;
    }
    if let Err(pos) = list.binary_search(&h) {
        list.insert(pos, h);
        list.truncate(cap);
    }
}

/// Builds the witness hypergraph at most once per member.
struct Lazy<'a> {
    n: usize,
    edges: &'a [u64],
    built: Option<Hypergraph>,
}

impl Lazy<'_> {
    fn get(&mut self) -> Hypergraph {
        self.built
            .get_or_insert_with(|| Hypergraph::from_masks(self.n, self.edges.iter().copied()))
            .clone()
    }
}

/// Tracks one extreme; `want` is the ordering a new value needs to win.
fn offer<A: Accumulator>(slot: &mut Option<Tracked<A>>, value: &A, want: Ordering, cap: usize, lazy: &mut Lazy) {
    match slot {
        Some(t) => match value.cmp(&t.value) {
            Ordering::Equal => {
                t.count += 1;
                offer_witness(&mut t.witnesses, cap, lazy);
            }
            o if o == want => {
                t.value = value.clone();
                t.count = 1;
                t.witnesses.clear();
                offer_witness(&mut t.witnesses, cap, lazy);
            }
            _ => {}
        },
        None => {
            let mut t = Tracked {
                value: value.clone(),
                count: 1,
                witnesses: Vec::new(),
            };
            offer_witness(&mut t.witnesses, cap, lazy);
            *slot = Some(t);
        }
    }
}

fn merge_slot<A: Ord>(a: Option<Tracked<A>>, b: Option<Tracked<A>>, want: Ordering, cap: usize) -> Option<Tracked<A>> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(mut a), Some(b)) => match b.value.cmp(&a.value) {
            Ordering::Equal => {
                a.count += b.count;
                merge_witnesses(&mut a.witnesses, b.witnesses, cap);
                Some(a)
            }
            o if o == want => Some(b),
            _ => Some(a),
        },
    }
}

/// Partial scan state: `[min, max]` per index.
struct State<A> {
    population: u64,
    visited: u64,
    hm1: [Option<Tracked<A>>; 2],
    hm2: [Option<Tracked<A>>; 2],
}

impl<A: Accumulator> State<A> {
    fn new() -> Self {
        Self {
            population: 0,
            visited: 0,
            hm1: [None, None],
            hm2: [None, None],
        }
    }

    fn merge(self, other: Self, cap: usize) -> Self {
        let [a1, b1] = self.hm1;
        let [c1, d1] = other.hm1;
        let [a2, b2] = self.hm2;
        let [c2, d2] = other.hm2;
        Self {
            population: self.population + other.population,
            visited: self.visited + other.visited,
            hm1: [
                merge_slot(a1, c1, Ordering::Less, cap),
                merge_slot(b1, d1, Ordering::Greater, cap),
            ],
            hm2: [
                merge_slot(a2, c2, Ordering::Less, cap),
                merge_slot(b2, d2, Ordering::Greater, cap),
            ],
        }
    }

    fn record(&mut self, n: usize, edges: &[u64], degrees: &[u64; MAX_BITSET_VERTICES], cap: usize) {
        let mut hm1 = A::zero();
        let mut hm2 = A::zero();
        for &e in edges {
            let mut sum = 0u64;
            let mut product = A::one();
            for v in Ones(e) {
                sum += degrees[v];
                product.mul_small(degrees[v]);
            }
            hm1.add_square_small(sum);
            hm2.add_square(&product);
        }
        self.population += 1;
        let mut lazy = Lazy { n, edges, built: None };
        let [lo, hi] = &mut self.hm1;
        offer(lo, &hm1, Ordering::Less, cap, &mut lazy);
        offer(hi, &hm1, Ordering::Greater, cap, &mut lazy);
        let [lo, hi] = &mut self.hm2;
        offer(lo, &hm2, Ordering::Less, cap, &mut lazy);
        offer(hi, &hm2, Ordering::Greater, cap, &mut lazy);
    }

    fn into_values(self) -> State<IndexValue> {
        let conv = |t: Option<Tracked<A>>| t.map(|t| t.map(A::into_value));
        let [a, b] = self.hm1;
        let [c, d] = self.hm2;
        State {
            population: self.population,
            visited: self.visited,
            hm1: [conv(a), conv(b)],
            hm2: [conv(c), conv(d)],
        }
    }
}

fn reduce<A: Accumulator>(layers: &[Layer], chunks: &[Chunk], cap: usize) -> State<IndexValue> {
    chunks
        .par_iter()
        .map(|c| scan_chunk::<A>(layers, *c, cap))
        .reduce(State::new, |a, b| a.merge(b, cap))
        .into_values()
}

fn scan_chunk<A: Accumulator>(layers: &[Layer], chunk: Chunk, cap: usize) -> State<A> {
    let mut state = State::new();
    let mut edges = [0u64; MAX_BITSET_VERTICES];
    let mut degrees = [0u64; MAX_BITSET_VERTICES];
    match chunk {
        Chunk::Masks { layer, lo, hi } => {
            let l = &layers[layer];
            // per-vertex mask of the candidates containing it
            let mut incidence = [0u64; MAX_BITSET_VERTICES];
            for (i, &e) in l.candidates.iter().enumerate() {
                for v in Ones(e) {
                    incidence[v] |= 1 << i;
                }
            }
            for mask in lo..hi {
                state.visited += 1;
                let mut len = 0;
                for i in Ones(mask) {
                    edges[len] = l.candidates[i];
                    len += 1;
                }
                if !accepts(l, &edges[..len]) {
                    continue;
                }
                for v in 0..l.n {
                    degrees[v] = (mask & incidence[v]).count_ones() as u64;
                }
                state.record(l.n, &edges[..len], &degrees, cap);
            }
        }
        Chunk::Top { layer, top } => {
            let l = &layers[layer];
            let Selection::Exactly(m) = l.selection else {
                unreachable!()
            };
            let mut rest = Colex::new(top, m - 1);
            while let Some(idx) = rest.current() {
                state.visited += 1;
                for (slot, &i) in idx.iter().enumerate() {
                    edges[slot] = l.candidates[i];
                }
                edges[m - 1] = l.candidates[top];
                rest.step();
                if !accepts(l, &edges[..m]) {
                    continue;
                }
                degrees[..l.n].fill(0);
                for &e in &edges[..m] {
                    for v in Ones(e) {
                        degrees[v] += 1;
                    }
                }
                state.record(l.n, &edges[..m], &degrees, cap);
            }
        }
    }
    state
}
