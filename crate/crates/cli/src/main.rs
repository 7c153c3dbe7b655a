//! Command-line toolkit: certificates for the three-point branched covers
//! of degree `d = 4k+1`, Gaussian-integer constructions, CM endomorphism
//! triples, Galois-group structure checks, the exhaustive search, and the
//! construction/search consistency survey.
//!
//! Exit codes: 0 success / found / all checks pass; 1 verification failure
//! or internal inconsistency; 3 negative mathematical result (not
//! representable, search exhausted); 4 search budget exceeded; 64 usage
//! error.

mod parallel;
mod payload;

use clap::{CommandFactory, Parser, Subcommand};
use hurwitz442_core::fp::build_prime_cover;
use hurwitz442_core::galois::structure_checks;
use hurwitz442_core::gaussian::sum_two_squares;
use hurwitz442_core::lattice::build_lattice_cover;
use hurwitz442_core::pqr::{cover_map, numeric_crosscheck, verify_pqr};
use hurwitz442_core::qi::rational_string;
use hurwitz442_core::search::{survey, SearchStatus, DEFAULT_BUDGET};
use serde_json::Value;
use std::process::ExitCode;

/// What a subcommand produces: a machine-readable payload and the exit
/// code contract (0 success / found / true; 1 verification failure or
/// inconsistency; 3 negative mathematical result; 4 budget exceeded;
/// 64 usage error).
struct CommandResult {
    exit_code: u8,
    payload: Value,
}

impl CommandResult {
    fn new(exit_code: u8, payload: Value) -> Self {
        CommandResult { exit_code, payload }
    }
}

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_NEGATIVE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_USAGE: u8 = 64;

/// Residue systems are materialized in memory; keep the norm sane.
const MAX_LATTICE_NORM: i64 = 1_000_000;
/// The torus group materializes 8d exact affine maps.
const MAX_GALOIS_NORM: i64 = 100_000;
/// Endomorphism coordinates have degree d; keep allocations sane.
const MAX_PQR_NORM: i64 = 10_000;

#[derive(Parser)]
#[command(
    name = "hurwitz442",
    about = "Certificates for sphere covers of branching type (1,4,..,4) x2, (1,2,..,2), and the two-squares arithmetic behind them",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the representations of d as a sum of two squares.
    Check {
        d: u64,
        #[arg(long)]
        json: bool,
    },
    /// Certificate from the affine construction over F_p (p prime, 1 mod 4).
    PrimeCover {
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Certificate from the coset action on the residues of the ideal (a+bi).
    #[command(allow_negative_numbers = true)]
    LatticeCover {
        a: i64,
        b: i64,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive (symmetry-reduced) search for a certificate of degree d.
    Search {
        d: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        json: bool,
    },
    /// The polynomial triple of the degree-d endomorphism, with checks.
    #[command(allow_negative_numbers = true)]
    Pqr {
        a: i64,
        b: i64,
        #[arg(long)]
        json: bool,
    },
    /// Order and subgroup structure of the Galois group on the torus.
    #[command(allow_negative_numbers = true)]
    Galois {
        a: i64,
        b: i64,
        #[arg(long)]
        json: bool,
    },
    /// Consistency table: representability vs constructions vs search.
    Survey {
        dmin: u64,
        dmax: u64,
        #[arg(long, default_value_t = 21)]
        search_cap: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when stdout is closed early (e.g. piping into head).
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version paths exit 0; everything else is a
            // usage error.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
    };
    ExitCode::from(run(cli.command))
}

fn usage_error(msg: &str) -> CommandResult {
    eprintln!("error: {msg}");
    eprintln!();
    eprintln!("{}", Cli::command().render_usage());
    CommandResult::new(EXIT_USAGE, Value::Null)
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid JSON"));
}

fn run(command: Command) -> u8 {
    let (result, json) = match command {
        Command::Check { d, json } => (cmd_check(d, json), json),
        Command::PrimeCover { p, json } => (cmd_prime_cover(p, json), json),
        Command::LatticeCover { a, b, json } => (cmd_lattice_cover(a, b, json), json),
        Command::Search {
            d,
            budget,
            parallel,
            json,
        } => (cmd_search(d, budget, parallel, json), json),
        Command::Pqr { a, b, json } => (cmd_pqr(a, b, json), json),
        Command::Galois { a, b, json } => (cmd_galois(a, b, json), json),
        Command::Survey {
            dmin,
            dmax,
            search_cap,
            json,
        } => (cmd_survey(dmin, dmax, search_cap, json), json),
    };
    if json && !result.payload.is_null() {
        emit(&result.payload);
    }
    result.exit_code
}

fn cmd_check(d: u64, json: bool) -> CommandResult {
    let reps = sum_two_squares(d);
    if !json {
        if reps.is_empty() {
            println!("{d} is not a sum of two squares");
        } else {
            let list = reps
                .iter()
                .map(|(x, y)| format!("{x}^2 + {y}^2"))
                .collect::<Vec<_>>()
                .join(", ");
            println!("{d} = {list}");
        }
    }
    let code = if reps.is_empty() { EXIT_NEGATIVE } else { EXIT_OK };
    CommandResult::new(code, serde_json::json!({ "d": d, "representations": reps }))
}

fn cmd_prime_cover(p: u64, json: bool) -> CommandResult {
    if p >= 1 << 31 {
        return usage_error("p must be below 2^31");
    }
    let (cert, params) = match build_prime_cover(p) {
        Ok(ok) => ok,
        Err(e) => return usage_error(&e.to_string()),
    };
    let report = cert.verify();
    let mut value = payload::certificate_json(&cert, &report);
    value["ell"] = serde_json::json!(params.ell);
    if !json {
        println!(
            "p = {p}: ell = {}, sigma0(x) = {}x, sigma1(x) = {}x + {}, sigma_inf(x) = -x - {}",
            params.ell,
            params.ell,
            params.ell,
            params.ell - 1,
            params.ell + 1
        );
        print_report_text(&cert, &report);
    }
    let code = if report.valid() { EXIT_OK } else { EXIT_FAIL };
    CommandResult::new(code, value)
}

fn cmd_lattice_cover(a: i64, b: i64, json: bool) -> CommandResult {
    if a.unsigned_abs() > (MAX_LATTICE_NORM as u64) || b.unsigned_abs() > (MAX_LATTICE_NORM as u64)
        || a.saturating_mul(a).saturating_add(b.saturating_mul(b)) > MAX_LATTICE_NORM
    {
        return usage_error("a^2 + b^2 must be at most 10^6");
    }
    let (cert, residues) = match build_lattice_cover(a, b) {
        Ok(ok) => ok,
        Err(e) => return usage_error(&e.to_string()),
    };
    let report = cert.verify();
    let mut value = payload::certificate_json(&cert, &report);
    value["residues"] = payload::residues_json(&residues);
    if !json {
        println!(
            "ideal ({a}{}{}i): d = {}, k = {}",
            if b < 0 { "" } else { "+" },
            b,
            cert.d,
            cert.k
        );
        print_report_text(&cert, &report);
    }
    let code = if report.valid() { EXIT_OK } else { EXIT_FAIL };
    CommandResult::new(code, value)
}

fn print_report_text(cert: &hurwitz442_core::perm::CoverCertificate, report: &hurwitz442_core::perm::VerificationReport) {
    println!(
        "types: {} / {} / {}",
        cert.sigma0.cycle_type(),
        cert.sigma1.cycle_type(),
        cert.sigma_inf.cycle_type()
    );
    println!(
        "checks: product={} types={} transitive={} riemann_hurwitz={} group_order={}",
        report.product,
        report.types,
        report.transitive,
        report.riemann_hurwitz,
        report
            .group_order
            .map_or("cap-exceeded".to_string(), |o| o.to_string()),
    );
}

fn cmd_search(d: u64, budget: u64, workers: usize, json: bool) -> CommandResult {
    let start = std::time::Instant::now();
    let outcome = match parallel::parallel_search(d, budget, workers) {
        Ok(ok) => ok,
        Err(e) => return usage_error(&e.to_string()),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    if !json {
        println!(
            "d = {d}: {} after {} nodes ({elapsed_ms:.1} ms)",
            outcome.status.as_str(),
            outcome.nodes_explored
        );
        if let Some(cert) = &outcome.certificate {
            println!("sigma0 = {:?}", cert.sigma0.images());
            println!("sigma1 = {:?}", cert.sigma1.images());
            println!("sigmaInf = {:?}", cert.sigma_inf.images());
        }
    }
    let code = match outcome.status {
        SearchStatus::Found => EXIT_OK,
        SearchStatus::Exhausted => EXIT_NEGATIVE,
        SearchStatus::BudgetExceeded => EXIT_BUDGET,
    };
    CommandResult::new(code, payload::search_json(d, &outcome, elapsed_ms))
}

fn cmd_pqr(a: i64, b: i64, json: bool) -> CommandResult {
    if a.saturating_mul(a).saturating_add(b.saturating_mul(b)) > MAX_PQR_NORM {
        return usage_error("a^2 + b^2 must be at most 10^4");
    }
    let data = match cover_map(a, b) {
        Ok(ok) => ok,
        Err(e) => return usage_error(&e.to_string()),
    };
    let report = verify_pqr(&data.triple);
    let err = numeric_crosscheck(&data, 5).ok();
    if !json {
        println!(
            "a+bi = {a}{}{}i: d = {}, k = {}",
            if b < 0 { "" } else { "+" },
            b,
            data.d,
            data.k
        );
        println!(
            "degrees: P = {}, Q = {}, R = {}",
            data.triple.p.degree_or_zero(),
            data.triple.q.degree_or_zero(),
            data.triple.r.degree_or_zero()
        );
        println!(
            "constants: cP = {}+{}i, cQ = {}+{}i",
            rational_string(&data.triple.c_p.re),
            rational_string(&data.triple.c_p.im),
            rational_string(&data.triple.c_q.re),
            rational_string(&data.triple.c_q.im)
        );
        println!(
            "checks: identity={} squarefree={} coprime={} degrees={} extremal ({} = {} - 1): {}",
            report.identity,
            report.squarefree,
            report.pairwise_coprime,
            report.degrees,
            report.max_term_degree,
            report.distinct_roots,
            report.mason_stothers_extremal
        );
        match err {
            Some(e) => println!("numeric crosscheck: max relative error {e:.3e}"),
            None => println!("numeric crosscheck: all samples degenerate"),
        }
    }
    let crosscheck_ok = err.is_some_and(|e| e < 1e-9);
    let code = if report.all_pass() && crosscheck_ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    CommandResult::new(code, payload::pqr_json(&data, &report, err))
}

fn cmd_galois(a: i64, b: i64, json: bool) -> CommandResult {
    if a.saturating_mul(a).saturating_add(b.saturating_mul(b)) > MAX_GALOIS_NORM {
        return usage_error("a^2 + b^2 must be at most 10^5");
    }
    let report = match structure_checks(a, b) {
        Ok(ok) => ok,
        Err(e) => return usage_error(&e.to_string()),
    };
    if !json {
        println!(
            "d = {}: |Gamma| = {} (8d: {}), translations = {} (2d: {}), gamma central: {}",
            report.d,
            report.order,
            report.order_is_8d,
            report.translation_order,
            report.translation_order_is_2d,
            report.gamma_central
        );
        println!(
            "quotient by <gamma>: {} (4d: {}); lattice certificate group order: {} (match: {})",
            report.quotient_order,
            report.quotient_order_is_4d,
            report
                .lattice_group_order
                .map_or("cap-exceeded".to_string(), |o| o.to_string()),
            report.quotient_matches_lattice
        );
    }
    let code = if report.all_pass() { EXIT_OK } else { EXIT_FAIL };
    CommandResult::new(code, payload::galois_json(a, b, &report))
}

fn cmd_survey(dmin: u64, dmax: u64, search_cap: u64, json: bool) -> CommandResult {
    if dmax >= 1 << 31 {
        return usage_error("dmax must be below 2^31");
    }
    if dmin > dmax {
        return usage_error("dmin must not exceed dmax");
    }
    let rows = survey(dmin, dmax, search_cap, DEFAULT_BUDGET);
    let inconsistencies = rows.iter().filter(|r| !r.consistent).count();
    if !json {
        println!("{:>6} {:>14} {:>9} {:>7} {:>14} {:>11}", "d", "two-squares", "lattice", "prime", "search", "consistent");
        for row in &rows {
            let rep = row
                .representations
                .first()
                .map_or("-".to_string(), |(x, y)| format!("{x}^2+{y}^2"));
            let opt = |v: Option<bool>| v.map_or("-".to_string(), |b| if b { "ok".into() } else { "FAIL".into() });
            let search = row
                .search_status
                .map_or("skipped".to_string(), |s| s.as_str().to_string());
            println!(
                "{:>6} {:>14} {:>9} {:>7} {:>14} {:>11}",
                row.d,
                rep,
                opt(row.lattice_valid),
                opt(row.prime_valid),
                search,
                if row.consistent { "yes" } else { "NO" }
            );
        }
        println!("inconsistencies: {inconsistencies}");
    }
    let code = if inconsistencies == 0 { EXIT_OK } else { EXIT_FAIL };
    CommandResult::new(code, payload::survey_json(dmin, dmax, search_cap, &rows))
}
