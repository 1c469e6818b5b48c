use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hyperzagreb::families::{closed_form, cross_check, generate, FamilySpec};
use hyperzagreb::indices::{edge_contributions, hm1, hm2, Index};
use hyperzagreb::io::{parse_auto, parse_hg, parse_json, to_hg, to_inline, to_json};
use hyperzagreb::qsar::{self, fixtures, DescriptorRow};
use hyperzagreb::verify::{
    self, check_claim, find_claim, render_table, ClaimParams, ExtremalResult, ScanOptions, SearchSpace,
    VerificationReport, CLAIMS,
};

/// Exact Hyper-Zagreb indices of hypergraphs.
#[derive(Parser)]
#[command(name = "hz", version)]
struct Cli {
    /// Print JSON instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for scans (0 = all available cores).
    #[arg(long, global = true, env = "HZ_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// HM1, HM2 and per-edge contributions of a hypergraph file.
    Compute {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
    },
    /// Build a family member, e.g. `sunflower:m=3,p=2,k=3`.
    Generate {
        spec: FamilySpec,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Hg)]
        format: Format,
    },
    /// Every closed form registered for a family member.
    ClosedForm { spec: FamilySpec },
    /// Compare closed forms with the structural computation.
    CrossCheck { spec: FamilySpec },
    /// Check a bound claim by exhaustive scan. Exits 2 if it is violated.
    Verify(VerifyArgs),
    /// List the registered claims.
    Claims,
    /// Exhaustive extremes over a space, e.g. `connected:n=4`.
    Scan {
        space: SearchSpace,
        #[arg(long, value_enum, default_value_t = IndexArg::Both)]
        index: IndexArg,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Fit the bioactivity model to a `name,hm1,hm2,activity` CSV.
    QsarFit {
        csv: PathBuf,
        /// Write the fit as JSON here.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write the rows with predictions as CSV here.
        #[arg(long)]
        predictions: Option<PathBuf>,
    },
    /// Descriptor CSV for hypergraph files, named by file stem.
    QsarTable {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Line fit of the bundled ACE inhibitor points.
    QsarFigure {
        /// Write the point series with fitted and reference lines as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim id; see `hz claims`.
    #[arg(required_unless_present = "all")]
    claim: Option<String>,
    /// Run every claim at its default parameters.
    #[arg(long, conflicts_with = "claim")]
    all: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Parameters as `k=3,m=3`; merged with the single-letter flags.
    #[arg(long)]
    params: Option<ClaimParams>,
    /// Leave elapsed time out of the output.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    scan: ScanArgs,
}

#[derive(Args)]
struct ScanArgs {
    /// Allow spaces above the candidate-subset cap.
    #[arg(long)]
    cap_override: bool,
    /// Witnesses kept per extreme.
    #[arg(long, default_value_t = verify::DEFAULT_MAX_WITNESSES)]
    witnesses: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    Hg,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexArg {
    Hm1,
    Hm2,
    Both,
}

/// Exit status of a successful run.
enum Outcome {
    Ok,
    Violated,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violated) => ExitCode::from(2),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn scan_options(cli: &Cli, args: &ScanArgs) -> ScanOptions {
    ScanOptions {
        threads: cli.threads,
        override_cap: args.cap_override,
        max_witnesses: args.witnesses,
        ..ScanOptions::default()
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Compute { file, format } => {
            let text = read(file)?;
            let h = match format {
                Format::Auto => parse_auto(&text),
                Format::Hg => parse_hg(&text),
                Format::Json => parse_json(&text),
            }
            .with_context(|| format!("invalid hypergraph in {}", file.display()))?;
            let contributions = edge_contributions(&h);
            let (a, b) = (hm1(&h), hm2(&h));
            if cli.json {
                print_json(
                    out,
                    &json!({"n": h.n(), "m": h.edge_count(), "hm1": a, "hm2": b, "edges": contributions}),
                )?;
            } else {
                writeln!(out, "n={}\nm={}\nhm1={a}\nhm2={b}", h.n(), h.edge_count())?;
                for c in contributions {
                    let edge: Vec<String> = c.edge.iter().map(u32::to_string).collect();
                    writeln!(
                        out,
                        "edge={} degree_sum={} degree_product={}",
                        edge.join(" "),
                        c.degree_sum,
                        c.degree_product
                    )?;
                }
            }
        }
        Command::Generate {
            spec,
            out: path,
            format,
        } => {
            let h = generate(spec)?;
            let text = match format {
                Format::Json => to_json(&h) + "\n",
                _ => to_hg(&h),
            };
            match path {
                Some(p) => write_file(p, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::ClosedForm { spec } => {
            let cf = closed_form(spec)?;
            if cli.json {
                let variants = |v: &[(String, _)]| -> Vec<serde_json::Value> {
                    v.iter()
                        .map(|(label, value)| json!({"label": label, "value": value}))
                        .collect()
                };
                print_json(
                    out,
                    &json!({"spec": spec.to_string(), "hm1": variants(&cf.hm1_variants), "hm2": variants(&cf.hm2_variants)}),
                )?;
            } else {
                writeln!(out, "spec={spec}")?;
                for index in Index::BOTH {
                    for (label, value) in cf.variants(index) {
                        writeln!(out, "{} {label}={value}", index.to_string().to_lowercase())?;
                    }
                }
            }
        }
        Command::CrossCheck { spec } => {
            let report = cross_check(spec)?;
            if cli.json {
                print_json(out, &report)?;
            } else {
                writeln!(out, "spec={spec}")?;
                writeln!(
                    out,
                    "structural hm1={} hm2={}",
                    report.structural_hm1, report.structural_hm2
                )?;
                for v in &report.verdicts {
                    let verdict = if v.matches { "match" } else { "mismatch" };
                    writeln!(
                        out,
                        "{} {} claimed={} {verdict}",
                        v.index.to_string().to_lowercase(),
                        v.label,
                        v.claimed
                    )?;
                }
            }
        }
        Command::Verify(args) => return verify_command(cli, args, out),
        Command::Claims => {
            if cli.json {
                let list: Vec<_> = CLAIMS
                    .iter()
                    .map(|c| {
                        json!({"claim_id": c.id, "index": c.index, "side": c.side,
                               "params": c.default_params(), "statement": c.statement})
                    })
                    .collect();
                print_json(out, &list)?;
            } else {
                for c in CLAIMS {
                    writeln!(out, "{} {}", c.id, c.default_params())?;
                }
            }
        }
        Command::Scan { space, index, scan } => {
            let started = Instant::now();
            let result = verify::scan(space, &scan_options(cli, scan))?;
            let picked: Vec<&ExtremalResult> = match index {
                IndexArg::Hm1 => vec![&result.hm1],
                IndexArg::Hm2 => vec![&result.hm2],
                IndexArg::Both => vec![&result.hm1, &result.hm2],
            };
            if cli.json {
                print_json(
                    out,
                    &json!({"space": space, "population": result.population,
                            "subsets_visited": result.subsets_visited, "results": picked}),
                )?;
            } else {
                writeln!(
                    out,
                    "space={space}\npopulation={}\nsubsets_visited={}",
                    result.population, result.subsets_visited
                )?;
                for r in picked {
                    let key = r.index.to_string().to_lowercase();
                    for (side, ext) in [("min", &r.min), ("max", &r.max)] {
                        writeln!(out, "{key}.{side}={}\n{key}.{side}.count={}", ext.value, ext.count)?;
                        for w in &ext.witnesses {
                            writeln!(out, "{key}.{side}.witness={}", to_inline(w))?;
                        }
                    }
                }
                eprintln!("elapsed_ms={}", started.elapsed().as_millis());
            }
        }
        Command::QsarFit {
            csv,
            out: json_out,
            predictions,
        } => {
            let rows =
                qsar::read_csv(read(csv)?.as_bytes()).with_context(|| format!("invalid CSV {}", csv.display()))?;
            let f = qsar::fit(&rows)?;
            let json_text = serde_json::to_string_pretty(&f)? + "\n";
            if let Some(p) = json_out {
                write_file(p, &json_text)?;
            }
            if let Some(p) = predictions {
                let mut buf = Vec::new();
                qsar::write_csv(&mut buf, &rows, Some(&f))?;
                fs::write(p, buf).with_context(|| format!("cannot write {}", p.display()))?;
            }
            if cli.json {
                out.write_all(json_text.as_bytes())?;
            } else {
                let s = f.standardized_coefficients;
                writeln!(
                    out,
                    "rows={}\nalpha={}\nbeta={}\ngamma={}\ndelta={}",
                    f.rows, f.alpha, f.beta, f.gamma, f.delta
                )?;
                writeln!(out, "standardized={} {} {} {}", s[0], s[1], s[2], s[3])?;
                writeln!(
                    out,
                    "r_squared={}\ncondition_warning={}",
                    f.r_squared, f.condition_warning
                )?;
            }
        }
        Command::QsarTable { files, out: path } => {
            let mut rows = Vec::new();
            for file in files {
                let h =
                    parse_auto(&read(file)?).with_context(|| format!("invalid hypergraph in {}", file.display()))?;
                let name = file
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                if rows.iter().any(|r: &DescriptorRow| r.name == name) {
                    bail!("duplicate molecule name `{name}` from {}", file.display());
                }
                rows.push(DescriptorRow::from_hypergraph(name, &h, None));
            }
            let mut buf = Vec::new();
            qsar::write_csv(&mut buf, &rows, None)?;
            match path {
                Some(p) => fs::write(p, buf).with_context(|| format!("cannot write {}", p.display()))?,
                None => out.write_all(&buf)?,
            }
        }
        Command::QsarFigure { csv } => {
            let points = fixtures::ACE_POINTS;
            let line = qsar::fit_line(&points).context("degenerate point set")?;
            let (ref_slope, ref_intercept) = fixtures::ACE_LINE;
            if let Some(p) = csv {
                let mut text = String::from("predicted,experimental,fitted,reference\n");
                for (x, y) in points {
                    let fitted = line.slope * x + line.intercept;
                    let reference = ref_slope * x + ref_intercept;
                    text += &format!("{x},{y},{fitted},{reference}\n");
                }
                write_file(p, &text)?;
            }
            if cli.json {
                print_json(
                    out,
                    &json!({"computed": line,
                            "reference": {"slope": ref_slope, "intercept": ref_intercept,
                                          "r_squared": fixtures::ACE_REPORTED_R_SQUARED}}),
                )?;
            } else {
                writeln!(
                    out,
                    "points={}\nslope={}\nintercept={}\nr_squared={}",
                    line.points, line.slope, line.intercept, line.r_squared
                )?;
                writeln!(out, "reference_slope={ref_slope}\nreference_intercept={ref_intercept}")?;
                writeln!(out, "reported_r_squared={}", fixtures::ACE_REPORTED_R_SQUARED)?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn verify_command(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome> {
    let opts = scan_options(cli, &args.scan);
    let started = Instant::now();
    let mut reports: Vec<VerificationReport> = if args.all {
        verify::run_ledger(&opts)?
    } else {
        let id = args.claim.as_deref().expect("clap requires a claim without --all");
        let claim = find_claim(id)?;
        let mut params = args.params.clone().unwrap_or_default();
        for (name, value) in [
            ("n", args.n),
            ("k", args.k),
            ("m", args.m),
            ("p", args.p),
            ("q", args.q),
        ] {
            if let Some(v) = value {
                params.0.insert(name.to_string(), v);
            }
        }
        if params.0.is_empty() {
            params = claim.default_params();
        }
        vec![check_claim(id, &params, &opts)?]
    };
    if args.no_timing {
        for r in &mut reports {
            r.elapsed_ms = None;
        }
    }
    if cli.json {
        if args.all {
            print_json(out, &reports)?;
        } else {
            print_json(out, &reports[0])?;
        }
    } else if args.all {
        out.write_all(render_table(&reports).as_bytes())?;
    } else {
        write_report(out, &reports[0])?;
    }
    if !cli.json && !args.no_timing {
        eprintln!("elapsed_ms={}", started.elapsed().as_millis());
    }
    let violated = reports.iter().any(|r| r.status == verify::Status::Violated);
    Ok(if violated { Outcome::Violated } else { Outcome::Ok })
}

fn write_report(out: &mut dyn Write, r: &VerificationReport) -> Result<()> {
    writeln!(out, "claim={}\nparams={}\nspace={}", r.claim_id, r.params, r.space)?;
    writeln!(
        out,
        "index={}\nside={}",
        r.index,
        serde_json::to_value(r.side)?.as_str().unwrap_or_default()
    )?;
    writeln!(
        out,
        "claimed={}\nobserved={}\nstatus={}",
        r.claimed, r.observed, r.status
    )?;
    writeln!(out, "attaining={}\npopulation={}", r.attaining, r.population)?;
    for w in &r.witnesses {
        writeln!(out, "witness={}", to_inline(w))?;
    }
    if let Some(c) = &r.witness_check {
        writeln!(out, "claimed_witness={} ({})", c.family, to_inline(&c.hypergraph))?;
        writeln!(
            out,
            "claimed_witness.value={}\nclaimed_witness.attains={}",
            c.value, c.attains
        )?;
        writeln!(out, "claimed_witness.unique={}", c.unique)?;
        if c.uniqueness_claimed {
            writeln!(out, "claimed_witness.uniqueness_confirmed={}", c.confirmed())?;
        }
    }
    Ok(())
}
