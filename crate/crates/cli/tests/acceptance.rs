//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperzagreb::families::{
    closed_form, cross_check, generate, FamilySpec, LABEL_COMPLETE, LABEL_COMPLETE_UNIFORM,
    LABEL_COMPLETE_WEAK_BIPARTITE, LABEL_HYPERSTAR, LABEL_PATH_GENERALIZED, LABEL_SUNFLOWER,
    LABEL_UNIFORM_PATH_COROLLARY, LABEL_UNIFORM_PATH_LEMMA,
};
use hyperzagreb::io::to_inline;
use hyperzagreb::qsar::{self, fixtures, DescriptorRow};
use hyperzagreb::verify::{self, check_claim, ClaimParams, ScanOptions, SearchSpace, Status};
use hyperzagreb::{hm1, hm2, Hypergraph, Index, IndexValue, Vertex};

const QSAR_COEFF_REL_TOL: f64 = 1e-8;
const QSAR_R2_TOL: f64 = 1e-12;
const TABLE_R2_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($msg)+));
        }
    };
}

/// Indices from plain edge lists, independent of the library's degree table.
fn naive(h: &Hypergraph) -> (BigUint, BigUint) {
    let edges = h.edge_lists();
    let degree = |v: Vertex| edges.iter().filter(|e| e.contains(&v)).count() as u64;
    let mut a = BigUint::from(0u32);
    let mut b = BigUint::from(0u32);
    for e in &edges {
        let s: u64 = e.iter().map(|&v| degree(v)).sum();
        let p = e.iter().fold(BigUint::from(1u32), |p, &v| p * degree(v));
        a += BigUint::from(s) * s;
        b += &p * &p;
    }
    (a, b)
}

fn labeled(spec: &FamilySpec, index: Index, label: &str) -> Result<BigUint, String> {
    let cf = closed_form(spec).map_err(|e| e.to_string())?;
    cf.variants(index)
        .iter()
        .find(|(l, _)| l == label)
        .map(|(_, v)| v.0.clone())
        .ok_or_else(|| format!("{spec}: no {label} variant"))
}

fn formula_matches(spec: &FamilySpec, label: &str) -> Result<(BigUint, BigUint), String> {
    let h = generate(spec).map_err(|e| e.to_string())?;
    let (a, b) = naive(&h);
    let (ca, cb) = (labeled(spec, Index::Hm1, label)?, labeled(spec, Index::Hm2, label)?);
    ensure!(
        ca == a && cb == b,
        "{spec}: {label} gives ({ca}, {cb}), structure gives ({a}, {b})"
    );
    Ok((a, b))
}

fn complete_closed_forms() -> Outcome {
    for n in 2..=8 {
        formula_matches(&FamilySpec::Complete { n }, LABEL_COMPLETE)?;
    }
    let spot3 = formula_matches(&FamilySpec::Complete { n: 3 }, LABEL_COMPLETE)?;
    let spot4 = formula_matches(&FamilySpec::Complete { n: 4 }, LABEL_COMPLETE)?;
    ensure!(spot3 == (189u32.into(), 972u32.into()), "n=3 gave {spot3:?}");
    ensure!(spot4 == (3724u32.into(), 6249803u32.into()), "n=4 gave {spot4:?}");
    Ok("n=2..8 exact; n=3 (189, 972), n=4 (3724, 6249803)".into())
}

fn complete_uniform_closed_forms() -> Outcome {
    let mut count = 0;
    for n in 2..=8 {
        for k in 2..=n {
            formula_matches(&FamilySpec::CompleteUniform { n, k }, LABEL_COMPLETE_UNIFORM)?;
            count += 1;
        }
    }
    let spot = formula_matches(&FamilySpec::CompleteUniform { n: 4, k: 2 }, LABEL_COMPLETE_UNIFORM)?;
    ensure!(spot == (216u32.into(), 486u32.into()), "(4,2) gave {spot:?}");
    Ok(format!("{count} (n, k) pairs exact; (4,2) -> (216, 486)"))
}

fn weak_bipartite_closed_forms() -> Outcome {
    for p in 1..=3 {
        for q in 1..=3 {
            formula_matches(
                &FamilySpec::CompleteWeakBipartite { p, q },
                LABEL_COMPLETE_WEAK_BIPARTITE,
            )?;
        }
    }
    let spot = formula_matches(
        &FamilySpec::CompleteWeakBipartite { p: 1, q: 1 },
        LABEL_COMPLETE_WEAK_BIPARTITE,
    )?;
    ensure!(spot == (4u32.into(), 1u32.into()), "K_1,1 gave {spot:?}");
    Ok("p, q <= 3 exact; K_1,1 -> (4, 1)".into())
}

fn family_formulas() -> Outcome {
    let mut checked = 0;
    for m in 1..=6 {
        for k in 2..=5 {
            for p in 1..k {
                formula_matches(&FamilySpec::Sunflower { m, p, k }, LABEL_SUNFLOWER)?;
                checked += 1;
            }
            if m >= 2 {
                formula_matches(&FamilySpec::Hyperstar { m, k }, LABEL_HYPERSTAR)?;
                formula_matches(&FamilySpec::UniformHyperpath { m, k }, LABEL_UNIFORM_PATH_COROLLARY)?;
                checked += 2;
            }
        }
    }
    for sizes in [vec![2, 3, 4], vec![3, 2], vec![4, 4, 2, 3], vec![2, 5, 3, 2, 4, 2]] {
        let spec = FamilySpec::GeneralHyperpath { sizes };
        let h = generate(&spec).map_err(|e| e.to_string())?;
        let (a, _) = naive(&h);
        ensure!(
            labeled(&spec, Index::Hm1, LABEL_PATH_GENERALIZED)? == a,
            "{spec}: generalized ends mismatch"
        );
        checked += 1;
    }
    let spec = FamilySpec::UniformHyperpath { m: 3, k: 3 };
    let report = cross_check(&spec).map_err(|e| e.to_string())?;
    let lemma = |i| report.verdict(i, LABEL_UNIFORM_PATH_LEMMA).cloned();
    let (l1, l2) = (
        lemma(Index::Hm1).ok_or("no lemma HM1 verdict")?,
        lemma(Index::Hm2).ok_or("no lemma HM2 verdict")?,
    );
    ensure!(!l1.matches && !l2.matches, "lemma variant should mismatch");
    ensure!(
        l1.claimed == IndexValue::from(86u64) && l2.claimed == IndexValue::from(96u64),
        "lemma claims changed"
    );
    ensure!(
        report.structural_hm1 == IndexValue::from(57u64) && report.structural_hm2 == IndexValue::from(24u64),
        "structural values changed"
    );
    Ok(format!(
        "{checked} instances exact; k=3,m=3 lemma variant 86/96 vs structural 57/24 flagged mismatch"
    ))
}

fn general_bounds() -> Outcome {
    let started = Instant::now();
    let r = verify::scan(&SearchSpace::AllConnected { n: 4 }, &ScanOptions::default()).map_err(|e| e.to_string())?;
    let small = started.elapsed();
    let k4 = generate(&FamilySpec::Complete { n: 4 }).unwrap();
    ensure!(r.subsets_visited == 2048, "visited {}", r.subsets_visited);
    ensure!(
        r.hm1.min.value == IndexValue::from(16u64),
        "min HM1 {}",
        r.hm1.min.value
    );
    ensure!(
        to_inline(&r.hm1.min.witnesses[0]) == "4 1 | 0 1 2 3",
        "min witness {}",
        to_inline(&r.hm1.min.witnesses[0])
    );
    ensure!(
        r.hm1.max.value == IndexValue::from(3724u64),
        "max HM1 {}",
        r.hm1.max.value
    );
    ensure!(
        r.hm1.max.count == 1 && r.hm1.max.witnesses == [k4.clone()],
        "K_4 not the unique HM1 maximizer"
    );
    ensure!(r.hm2.min.value == IndexValue::from(1u64), "min HM2 {}", r.hm2.min.value);
    ensure!(
        r.hm2.max.value == IndexValue::from(6249803u64),
        "max HM2 {}",
        r.hm2.max.value
    );
    ensure!(small < Duration::from_secs(1), "n=4 took {small:?}");

    let opts = ScanOptions {
        override_cap: true,
        max_witnesses: 1,
        ..ScanOptions::default()
    };
    let started = Instant::now();
    let r5 = verify::scan(&SearchSpace::AllConnected { n: 5 }, &opts).map_err(|e| e.to_string())?;
    let big = started.elapsed();
    let k5 = generate(&FamilySpec::Complete { n: 5 }).unwrap();
    ensure!(r5.subsets_visited == 1 << 26, "n=5 visited {}", r5.subsets_visited);
    ensure!(
        r5.hm1.min.value == IndexValue::from(25u64) && r5.hm2.min.value == IndexValue::from(1u64),
        "n=5 minima"
    );
    ensure!(
        r5.hm1.max.value == hm1(&k5) && r5.hm2.max.value == hm2(&k5),
        "n=5 maxima differ from K_5"
    );
    ensure!(
        r5.hm1.max.count == 1 && r5.hm2.max.count == 1,
        "n=5 maximizer not unique"
    );
    ensure!(big < Duration::from_secs(600), "n=5 took {big:?}");
    Ok(format!(
        "n=4: 16..3724 / 1..6249803, K_4 unique, {small:.2?}; n=5: {} members, 25..{} / 1..{}, K_5 unique, {big:.1?}",
        r5.population, r5.hm1.max.value, r5.hm2.max.value
    ))
}

fn uniform_bounds() -> Outcome {
    let mut pairs = 0;
    for n in 2..=5 {
        for k in 2..=n {
            let spec = FamilySpec::CompleteUniform { n, k };
            let r = verify::scan(&SearchSpace::UniformConnected { n, k }, &ScanOptions::default())
                .map_err(|e| e.to_string())?;
            let complete = generate(&spec).unwrap();
            for (index, ext) in [(Index::Hm1, &r.hm1.max), (Index::Hm2, &r.hm2.max)] {
                let cf = labeled(&spec, index, LABEL_COMPLETE_UNIFORM)?;
                ensure!(
                    ext.value.0 == cf,
                    "n={n} k={k} {index}: max {} vs closed form {cf}",
                    ext.value
                );
                ensure!(
                    ext.count == 1 && ext.witnesses == [complete.clone()],
                    "n={n} k={k} {index}: maximizer not unique"
                );
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} (n, k) pairs: max equals the closed form, unique maximizer is the complete k-uniform edge set"
    ))
}

fn hypertree_claims() -> Outcome {
    let r = verify::scan(&SearchSpace::UniformHypertrees { k: 3, m: 3 }, &ScanOptions::default())
        .map_err(|e| e.to_string())?;
    let v = |x: u64| IndexValue::from(x);
    ensure!(
        (r.hm1.min.value.clone(), r.hm2.min.value.clone()) == (v(57), v(24)),
        "minima"
    );
    ensure!(
        (r.hm1.max.value.clone(), r.hm2.max.value.clone()) == (v(147), v(243)),
        "maxima"
    );
    let is_path = |h: &Hypergraph| h.n() == 7 && h.is_linear();
    let is_sunflower = |h: &Hypergraph| {
        let common: Vec<Vertex> = (0..h.n() as Vertex).filter(|&x| h.degree(x).unwrap() == 3).collect();
        h.n() == 5 && common.len() == 2
    };
    ensure!(
        r.hm1.min.witnesses.iter().chain(&r.hm2.min.witnesses).all(is_path),
        "min witnesses not hyperpaths"
    );
    ensure!(
        r.hm1.max.witnesses.iter().chain(&r.hm2.max.witnesses).all(is_sunflower),
        "max witnesses not sunflowers"
    );

    let params = ClaimParams::new(&[("k", 3), ("m", 3)]);
    let expected = [
        ("ktree-lower-hm1-lemma-variant", 86, Status::Violated),
        ("ktree-lower-hm2-lemma-variant", 96, Status::Violated),
        ("ktree-lower-hm1-corollary-variant", 57, Status::HoldsTight),
        ("ktree-lower-hm2-corollary-variant", 24, Status::HoldsTight),
        ("uniform-hypertree-upper-hm1", 243, Status::HoldsSlack),
        ("sunflower-upper-hm1", 147, Status::HoldsTight),
    ];
    for (id, claimed, status) in expected {
        let rep = check_claim(id, &params, &ScanOptions::default()).map_err(|e| e.to_string())?;
        ensure!(rep.claimed == v(claimed), "{id}: claimed {}", rep.claimed);
        ensure!(rep.status == status, "{id}: {} instead of {status}", rep.status);
    }
    Ok(
        "min (57, 24) by hyperpaths, max (147, 243) by sunflowers; 86/96 violated, 57/24 tight, 243 slack, 147 tight"
            .into(),
    )
}

fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Hypergraph {
    let mut edges: Vec<Vec<u64>> = Vec::new();
    for _ in 0..rng.gen_range(1..=max_edges) {
        let size = rng.gen_range(2..=n);
        let mut vs: Vec<u64> = (0..n as u64).collect();
        vs.shuffle(rng);
        let mut e = vs[..size].to_vec();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

fn graph_indices(n: usize, pairs: &[(usize, usize)]) -> (u64, u64) {
    let mut deg = vec![0u64; n];
    for &(u, v) in pairs {
        deg[u] += 1;
        deg[v] += 1;
    }
    pairs.iter().fold((0, 0), |(a, b), &(u, v)| {
        (a + (deg[u] + deg[v]).pow(2), b + (deg[u] * deg[v]).pow(2))
    })
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..50 {
        let n = rng.gen_range(2..=10);
        let h = random_hypergraph(&mut rng, n, 12);
        let (a, b) = (hm1(&h), hm2(&h));
        for _ in 0..100 {
            let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
            perm.shuffle(&mut rng);
            let g = h.permuted(&perm).unwrap();
            ensure!(hm1(&g) == a && hm2(&g) == b, "relabeling changed indices (case {case})");
        }
    }
    for case in 0..500 {
        let (h, extra) = loop {
            let n = rng.gen_range(2..=9);
            let h = random_hypergraph(&mut rng, n, 10);
            let size = rng.gen_range(2..=n);
            let mut vs: Vec<Vertex> = (0..n as Vertex).collect();
            vs.shuffle(&mut rng);
            let mut e = vs[..size].to_vec();
            e.sort_unstable();
            if !h.edge_lists().contains(&e) {
                break (h, e);
            }
        };
        let g = h.with_edge(&extra).unwrap();
        ensure!(
            hm1(&g) > hm1(&h) && hm2(&g) > hm2(&h),
            "adding an edge did not increase both (case {case})"
        );
        let total: usize = h.degrees().iter().sum();
        ensure!(
            total == h.edges().iter().map(|e| e.len()).sum::<usize>(),
            "handshake failed (case {case})"
        );
        ensure!(
            hm2(&h) >= IndexValue::from(h.edge_count() as u64),
            "hm2 below edge count (case {case})"
        );
    }
    let mut graphs = 0;
    for n in 2..=4 {
        for h in verify::enumerate(&SearchSpace::UniformConnected { n, k: 2 }, &ScanOptions::default()).unwrap() {
            let pairs: Vec<(usize, usize)> = h
                .edges()
                .iter()
                .map(|e| (e.members()[0] as usize, e.members()[1] as usize))
                .collect();
            let (a, b) = graph_indices(n, &pairs);
            ensure!(
                hm1(&h) == IndexValue::from(a) && hm2(&h) == IndexValue::from(b),
                "2-uniform mismatch {}",
                to_inline(&h)
            );
            graphs += 1;
        }
    }
    for _ in 0..100 {
        let n = rng.gen_range(2..=12);
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        let h = Hypergraph::new(n, pairs.iter().map(|&(u, v)| [u as u64, v as u64])).unwrap();
        let (a, b) = graph_indices(n, &pairs);
        ensure!(
            hm1(&h) == IndexValue::from(a) && hm2(&h) == IndexValue::from(b),
            "random graph mismatch"
        );
        graphs += 1;
    }
    Ok(format!(
        "5000 relabelings, 500 edge additions, {graphs} graphs, handshake and hm2 >= m: zero failures"
    ))
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn qsar_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let mut rows: Vec<DescriptorRow> = (0..30)
        .map(|i| {
            DescriptorRow::new(
                format!("s{i}"),
                IndexValue::from(rng.gen_range(100u64..20_000)),
                IndexValue::from(rng.gen_range(100u64..500_000)),
                None,
            )
        })
        .collect();
    // standardize independently of the library
    let x: Vec<[f64; 3]> = rows
        .iter()
        .map(|r| {
            [
                r.hm1.to_f64().unwrap(),
                r.hm2.to_f64().unwrap(),
                r.interaction.to_f64().unwrap(),
            ]
        })
        .collect();
    let mut z = x.clone();
    for j in 0..3 {
        let mean = x.iter().map(|r| r[j]).sum::<f64>() / 30.0;
        let sd = (x.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / 30.0).sqrt();
        for (zi, xi) in z.iter_mut().zip(&x) {
            zi[j] = (xi[j] - mean) / sd;
        }
    }
    for (r, z) in rows.iter_mut().zip(&z) {
        r.activity = Some(2.0 * z[0] - z[1] + 0.5 * z[2] + 10.0);
    }
    let f = qsar::fit(&rows).map_err(|e| e.to_string())?;
    for (got, want) in f.standardized_coefficients.iter().zip([2.0, -1.0, 0.5, 10.0]) {
        ensure!(
            rel_close(*got, want, QSAR_COEFF_REL_TOL),
            "planted coefficient {want} recovered as {got}"
        );
    }
    ensure!(f.r_squared >= 1.0 - QSAR_R2_TOL, "planted r_squared {}", f.r_squared);

    let table = qsar::read_csv(fixtures::DRUG_TABLE_CSV.as_bytes()).map_err(|e| e.to_string())?;
    let t = qsar::fit(&table).map_err(|e| e.to_string())?;
    ensure!(
        (t.r_squared - 1.0).abs() <= TABLE_R2_TOL,
        "table r_squared {}",
        t.r_squared
    );
    ensure!(!t.condition_warning, "table design flagged as ill-conditioned");

    let line = qsar::fit_line(&fixtures::ACE_POINTS).ok_or("figure points degenerate")?;
    let (ref_slope, ref_intercept) = fixtures::ACE_LINE;
    Ok(format!(
        "planted recovered, table r2={:.12}; figure: slope {:.4} intercept {:.4} r2 {:.4} (plotted {ref_slope}x + {ref_intercept}, caption r2 {})",
        t.r_squared,
        line.slope,
        line.intercept,
        line.r_squared,
        fixtures::ACE_REPORTED_R_SQUARED
    ))
}

fn hz(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hz"))
        .args(args)
        .args(["--threads", threads])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        matches!(out.status.code(), Some(0 | 2)),
        "hz {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let max = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .to_string();
    let runs: [&[&str]; 4] = [
        &["--json", "scan", "connected:n=4"],
        &["--json", "scan", "uniform-hypertrees:k=3,m=3", "--witnesses", "50"],
        &["--json", "verify", "--all", "--no-timing"],
        &["verify", "general-upper-hm1", "--n", "4", "--no-timing"],
    ];
    for args in runs {
        let base = hz(args, "1")?;
        for threads in ["2", "4", max.as_str()] {
            ensure!(
                hz(args, threads)? == base,
                "output of {args:?} differs at {threads} threads"
            );
        }
    }
    Ok(format!(
        "scan and verify outputs byte-identical at 1, 2, 4 and {max} (available) threads"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("closed forms, complete hypergraphs", complete_closed_forms),
        ("closed forms, complete k-uniform", complete_uniform_closed_forms),
        ("closed forms, complete weak bipartite", weak_bipartite_closed_forms),
        ("sunflower, hyperstar and hyperpath formulas", family_formulas),
        ("general bounds by exhaustive scan", general_bounds),
        ("uniform bounds and unique maximizers", uniform_bounds),
        ("hypertree claim ledger", hypertree_claims),
        ("property suites", property_suites),
        ("QSAR fits", qsar_checks),
        ("determinism across thread counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = check();
        let elapsed = started.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{elapsed:.2?}]: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
