use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use qcluster::classical::{verify_trivial, Kind};
use qcluster::dilog::{phi_eval, run_identity_suite_with, DilogError, DilogParams, QuadratureConfig, SuiteOptions};
use qcluster::quantum::{verify_quantum_relation, QuantumError};
use qcluster::rewrite::{verify_phase_constant, RewriteError};
use qcluster::seed::{find_relation, relation_sequence, RelationKind, RelationSpec, Seed, SeedError};
use qcluster::suite::{criterion, CriterionResult, SuiteConfig, CRITERIA};

/// Exit status for malformed input: seed files, flags, poles.
const EXIT_INVALID: u8 = 2;
const EXIT_INAPPLICABLE: u8 = 3;
/// A computation that could not finish (stuck rewrite, quadrature failure).
const EXIT_FAILED: u8 = 4;

const BUNDLED: [(&str, &str); 5] = [
    ("a1", include_str!("../seeds/a1.json")),
    ("a1xa1", include_str!("../seeds/a1xa1.json")),
    ("a2", include_str!("../seeds/a2.json")),
    ("b2", include_str!("../seeds/b2.json")),
    ("g2", include_str!("../seeds/g2.json")),
];

#[derive(Parser)]
#[command(name = "qcluster", version, about = "Verify cluster mutation relations and quantum dilogarithm identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Seed operations.
    #[command(subcommand)]
    Seed(SeedCmd),
    /// Verify one relation at one layer; exit 0 iff the verdict is the identity.
    Verify(VerifyArgs),
    /// Run every reproduction criterion.
    VerifyAll(VerifyAllArgs),
    /// Quantum dilogarithm numerics.
    #[command(subcommand)]
    Dilog(DilogCmd),
}

#[derive(Subcommand)]
enum SeedCmd {
    /// Mutate in the given directions, left to right, and print the seed.
    Mutate {
        #[command(flatten)]
        src: SeedSource,
        /// 1-based direction; repeat for a sequence.
        #[arg(long = "k", required = true)]
        k: Vec<usize>,
    },
}

#[derive(Args, Clone)]
struct SeedSource {
    /// Seed JSON file. A missing file named like a bundled seed (a2.json, ...) uses the bundled copy.
    #[arg(long, conflicts_with = "seed")]
    file: Option<PathBuf>,
    /// Bundled seed: a1, a1xa1, a2, b2, g2.
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Layer {
    Classical,
    Quantum,
    Operator,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    layer: Layer,
    /// A1, A1xA1, A2, B2 or G2.
    #[arg(long)]
    relation: RelationKind,
    /// Defaults to the bundled seed of the relation.
    #[command(flatten)]
    src: SeedSource,
    /// 1-based indices of the relation; found automatically when omitted.
    #[arg(long, requires = "j")]
    i: Option<usize>,
    #[arg(long, requires = "i")]
    j: Option<usize>,
    /// 1-based direction of the A1 relation.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Truncation order of the quantum layer.
    #[arg(long, env = "QCLUSTER_ORDER", default_value_t = 6)]
    order: i64,
    /// Write the full certificate JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct VerifyAllArgs {
    #[arg(long, env = "QCLUSTER_ORDER", default_value_t = 6)]
    order: i64,
    /// Criteria to run, e.g. 1,2,7; all by default.
    #[arg(long, value_delimiter = ',')]
    criteria: Vec<u8>,
    /// Worker threads; each criterion runs single threaded.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 2024)]
    rng_seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Clone, Copy)]
struct HArgs {
    /// Real part of h.
    #[arg(long)]
    hbar: f64,
    /// Imaginary part of h.
    #[arg(long, default_value_t = 0.0)]
    hbar_im: f64,
}

#[derive(Subcommand)]
enum DilogCmd {
    /// Residual table of the functional identities; exit 0 iff all are below tolerance.
    Check {
        #[command(flatten)]
        h: HArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 1e-10)]
        unitarity_tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        ratio_tol: f64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        unitarity_samples: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Evaluate Φ^h(z).
    Eval {
        #[command(flatten)]
        h: HArgs,
        /// Complex argument such as 0, 1.5, 0.2-1.1i.
        #[arg(long, allow_hyphen_values = true)]
        z: Complex64,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

type Out<T> = Result<T, Failure>;

fn fail(code: u8, msg: impl ToString) -> Failure {
    Failure { code, msg: msg.to_string() }
}

fn seed_error(e: SeedError) -> Failure {
    match e {
        SeedError::Inapplicable { .. } | SeedError::ClosureFailed(_) => fail(EXIT_INAPPLICABLE, e),
        _ => fail(EXIT_INVALID, e),
    }
}

fn bundled(name: &str) -> Option<&'static str> {
    let stem = name.trim_end_matches(".json").to_ascii_lowercase();
    BUNDLED.iter().find(|(n, _)| *n == stem).map(|(_, s)| *s)
}

fn load_seed(src: &SeedSource, fallback: Option<&str>) -> Out<Seed> {
    let text = match (&src.file, &src.seed) {
        (Some(path), _) => read_seed_file(path)?,
        (None, Some(name)) => bundled(name).ok_or_else(|| fail(EXIT_INVALID, format!("no bundled seed {name:?}")))?.to_string(),
        (None, None) => match fallback.and_then(bundled) {
            Some(s) => s.to_string(),
            None => return Err(fail(EXIT_INVALID, "give --file or --seed")),
        },
    };
    Seed::from_json(&text).map_err(|e| fail(EXIT_INVALID, e))
}

fn read_seed_file(path: &Path) -> Out<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) => {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
            match (path.exists(), bundled(name)) {
                (false, Some(s)) if name.ends_with(".json") => Ok(s.to_string()),
                _ => Err(fail(EXIT_INVALID, format!("{}: {e}", path.display()))),
            }
        }
    }
}

fn write_out(path: &Option<PathBuf>, v: &serde_json::Value) -> Out<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(v).expect("json");
        std::fs::write(p, text + "\n").map_err(|e| fail(EXIT_INVALID, format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn print_rows<T: Serialize>(rows: &[T], format: Format) {
    let mut stdout = std::io::stdout().lock();
    match format {
        Format::Json => {
            let v = if rows.len() == 1 { serde_json::to_value(&rows[0]) } else { serde_json::to_value(rows) };
            writeln!(stdout, "{}", v.expect("json")).ok();
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout);
            for r in rows {
                w.serialize(r).expect("csv row");
            }
            w.flush().ok();
        }
    }
}

fn pick_relation(s: &Seed, a: &VerifyArgs) -> Out<RelationSpec> {
    let r = match (a.relation, a.i, a.j) {
        (RelationKind::A1, _, _) => {
            let k = a.k.checked_sub(1).ok_or_else(|| fail(EXIT_INVALID, "--k is 1-based"))?;
            RelationSpec::a1(k)
        }
        (kind, Some(i), Some(j)) => {
            let (i, j) = (i.checked_sub(1), j.checked_sub(1));
            let (Some(i), Some(j)) = (i, j) else { return Err(fail(EXIT_INVALID, "--i and --j are 1-based")) };
            RelationSpec::new(kind, i, j)
        }
        (kind, _, _) => find_relation(s, kind)
            .ok_or_else(|| fail(EXIT_INAPPLICABLE, format!("relation {kind} does not apply to any index pair of {s}")))?,
    };
    relation_sequence(s, &r).map_err(seed_error)?;
    Ok(r)
}

#[derive(Serialize)]
struct VerifyRow {
    layer: &'static str,
    relation: String,
    seed: String,
    verdict: String,
    seconds: f64,
}

fn cmd_verify(a: &VerifyArgs) -> Out<bool> {
    let fallback = a.relation.to_string().to_ascii_lowercase();
    let s = load_seed(&a.src, Some(&fallback))?;
    let r = pick_relation(&s, a)?;
    let t = Instant::now();
    let seed_json: serde_json::Value = serde_json::from_str(&s.to_json()).expect("json");
    let (layer, ok, verdict, cert) = match a.layer {
        Layer::Operator => {
            let c = verify_phase_constant(&s, &r).map_err(|e| match e {
                RewriteError::Seed(e) => seed_error(e),
                e => fail(EXIT_FAILED, e),
            })?;
            ("operator", c.is_identity(), c.verdict().to_string(), c.to_json())
        }
        Layer::Classical => {
            let word = r.polygon_word(s.n());
            let mut reports = vec![];
            for kind in Kind::ALL {
                reports.push(verify_trivial(&s, &word, kind).map_err(seed_error)?);
            }
            let ok = reports.iter().all(|x| x.is_trivial);
            let verdict = if ok { "identity" } else { "not identity" };
            let cert = serde_json::json!({
                "layer": "classical", "relation": r.to_string(), "seed": seed_json,
                "word": word, "verdict": verdict, "reports": reports,
            });
            ("classical", ok, verdict.to_string(), cert)
        }
        Layer::Quantum => {
            if a.order < 0 {
                return Err(fail(EXIT_INVALID, "--order must be non-negative"));
            }
            let rep = verify_quantum_relation(&s, &r, a.order).map_err(|e| match e {
                QuantumError::Seed(e) => seed_error(e),
                e => fail(EXIT_FAILED, e),
            })?;
            let ok = rep.holds && rep.classical_limit;
            let verdict = if ok { "identity" } else { "not identity" };
            let cert = serde_json::json!({
                "layer": "quantum", "relation": r.to_string(), "seed": seed_json, "verdict": verdict, "report": rep,
            });
            ("quantum", ok, verdict.to_string(), cert)
        }
    };
    let row = VerifyRow { layer, relation: r.to_string(), seed: s.to_json(), verdict, seconds: t.elapsed().as_secs_f64() };
    write_out(&a.out, &cert)?;
    print_rows(&[row], a.format);
    Ok(ok)
}

fn cmd_verify_all(a: &VerifyAllArgs) -> Out<bool> {
    let ids: Vec<u8> = if a.criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { a.criteria.clone() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=8).contains(&i)) {
        return Err(fail(EXIT_INVALID, format!("unknown criterion {bad}")));
    }
    if a.jobs == 0 {
        return Err(fail(EXIT_INVALID, "--jobs must be positive"));
    }
    let cfg = SuiteConfig { order: a.order, seed: a.rng_seed, ..SuiteConfig::default() };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build().map_err(|e| fail(EXIT_FAILED, e))?;
    let mut results: Vec<CriterionResult> = pool.install(|| {
        use rayon::prelude::*;
        ids.par_iter().map(|&id| criterion(id, &cfg).expect("checked id")).collect()
    });
    results.sort_by_key(|r| r.id);
    for r in &results {
        eprintln!("{r}");
    }
    write_out(&a.out, &serde_json::to_value(&results).expect("json"))?;
    print_rows(&results, a.format);
    Ok(results.iter().all(|r| r.pass))
}

fn params(h: HArgs) -> Out<DilogParams> {
    DilogParams::new(Complex64::new(h.hbar, h.hbar_im)).map_err(|e| fail(EXIT_INVALID, e))
}

fn cmd_dilog(c: &DilogCmd) -> Out<bool> {
    match c {
        DilogCmd::Check { h, tol, unitarity_tol, ratio_tol, samples, unitarity_samples, rng_seed, out, format } => {
            let p = params(*h)?;
            for (name, t) in [("--tol", tol), ("--unitarity-tol", unitarity_tol), ("--ratio-tol", ratio_tol)] {
                if !(*t > 0.0) {
                    return Err(fail(EXIT_INVALID, format!("{name} must be positive")));
                }
            }
            let o = SuiteOptions {
                samples: *samples,
                unitarity_samples: *unitarity_samples,
                tol: *tol,
                unitarity_tol: *unitarity_tol,
                ratio_tol: *ratio_tol,
                seed: *rng_seed,
                quad: QuadratureConfig::default(),
            };
            let rep = run_identity_suite_with(&p, &o);
            write_out(out, &rep.to_json())?;
            print_rows(&rep.entries, *format);
            Ok(rep.all_pass())
        }
        DilogCmd::Eval { h, z } => {
            let p = params(*h)?;
            let v = phi_eval(*z, &p, &QuadratureConfig::default()).map_err(|e| match e {
                DilogError::NearPole { .. } => fail(EXIT_INVALID, e),
                e => fail(EXIT_FAILED, e),
            })?;
            let row = serde_json::json!({ "h": [p.h().re, p.h().im], "z": [z.re, z.im], "re": v.re, "im": v.im });
            println!("{row}");
            Ok(true)
        }
    }
}

fn run(cli: &Cli) -> Out<bool> {
    match &cli.cmd {
        Cmd::Seed(SeedCmd::Mutate { src, k }) => {
            let mut s = load_seed(src, None)?;
            for &k in k {
                let k = k.checked_sub(1).ok_or_else(|| fail(EXIT_INVALID, "--k is 1-based"))?;
                s = s.mutate(k).map_err(seed_error)?;
            }
            println!("{}", s.to_json());
            Ok(true)
        }
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::VerifyAll(a) => cmd_verify_all(a),
        Cmd::Dilog(c) => cmd_dilog(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
