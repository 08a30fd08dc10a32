//! Command-line front end for the interval-valued calculus: membership
//! checks, 1D subdifferential regions, efficiency sweeps, the sum-rule
//! experiment, difference-inclusion reports, normal-cone membership,
//! plot data emission and golden-case reproduction.

mod report;
mod repro;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ivfopt_core::corpus::corpus_get;
use ivfopt_core::optimality::{
    diff_inclusion_check, efficient_check, normal_cone_member_check, sum_rule_experiment,
    weak_efficient_check, WidthCondition,
};
use ivfopt_core::weak_subdiff::{
    member_check, region_1d, support_ivf_eval, WeakCandidate, DEFAULT_TOL,
};
use ivfopt_core::{
    parse_ivf, EndpointRange, GridSpec, Interval, IntervalFn, IntervalVector, Ivf, Region1D,
};
use report::{g12, interval, num, opt_vec, vec_nums, Report};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ivfopt", version, about = "Interval-valued calculus and weak-subdifferential toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether (G, c) is a weak subgradient of the function at u
    CheckMember {
        #[arg(long)]
        ivf: String,
        /// point u as comma-separated floats
        #[arg(long)]
        u: String,
        /// candidate G as "lo,hi" pairs separated by ';'
        #[arg(long)]
        g: String,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        no_focal: bool,
    },
    /// Compute the exact 1D subdifferential region at fixed c
    Region {
        #[arg(long)]
        ivf: String,
        #[arg(long)]
        u: f64,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        no_focal: bool,
    },
    /// Weak efficiency / efficiency sweep at u
    Efficiency {
        #[arg(long)]
        ivf: String,
        #[arg(long)]
        u: String,
        /// weak | efficient | both
        #[arg(long, default_value = "both")]
        mode: String,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        no_focal: bool,
    },
    /// Compare the sum of subdifferentials with the subdifferential of the sum
    SumRule {
        #[arg(long)]
        ivf1: String,
        #[arg(long)]
        ivf2: String,
        #[arg(long)]
        u: f64,
        #[arg(long, value_name = "FLOATS")]
        c_list: String,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        no_focal: bool,
    },
    /// Per-c subdifferential inclusion report for a pair of functions
    DiffOpt {
        #[arg(long)]
        ivf1: String,
        #[arg(long)]
        ivf2: String,
        #[arg(long)]
        u: f64,
        #[arg(long, value_name = "FLOATS")]
        c_list: String,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        no_focal: bool,
    },
    /// Test membership in the augmented normal cone to a box
    NormalCone {
        /// box as "lo,hi" pairs separated by ';'
        #[arg(long)]
        domain: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Emit CSV point data for the function and its support minorant
    PlotData {
        #[arg(long)]
        ivf: String,
        #[arg(long)]
        u: f64,
        #[arg(long)]
        g: String,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Re-run a golden case (or all of them) and diff against expectations
    Repro {
        #[arg(long, value_name = "ID|all")]
        case: String,
    },
}

/// A checker outcome mapped to the process exit code: 0 the condition
/// holds, 1 it fails, 2 usage or validation error.
enum Outcome {
    Holds,
    Fails,
}

struct CliError(String);

impl From<ivfopt_core::Error> for CliError {
    fn from(e: ivfopt_core::Error) -> Self {
        CliError(e.to_string())
    }
}

type CliResult = Result<Outcome, CliError>;

fn load_ivf(spec: &str) -> Result<Ivf, CliError> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        return Ok(corpus_get(name)?);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError(format!("cannot read '{spec}': {e}")))?;
    // parse_ivf validates endpoint order and coverage before returning
    Ok(parse_ivf(&text)?)
}

fn parse_floats(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError(format!("invalid {what} component '{t}'")))
        })
        .collect()
}

fn parse_intervals(s: &str, what: &str) -> Result<Vec<Interval>, CliError> {
    s.split(';')
        .map(|pair| {
            let nums = parse_floats(pair, what)?;
            if nums.len() != 2 {
                return Err(CliError(format!(
                    "{what} component '{pair}' must be 'lo,hi'"
                )));
            }
            Ok(Interval::new(nums[0], nums[1])?)
        })
        .collect()
}

fn parse_candidate(g: &str, c: f64) -> Result<WeakCandidate, CliError> {
    let items = parse_intervals(g, "--g")?;
    Ok(WeakCandidate::new(IntervalVector::new(items)?, c)?)
}

fn grid_size(cli_grid: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = cli_grid {
        return Ok(n);
    }
    match std::env::var("IVFOPT_GRID") {
        Ok(s) => s
            .parse::<usize>()
            .map_err(|_| CliError(format!("IVFOPT_GRID must be an integer, got '{s}'"))),
        Err(_) => Ok(2001),
    }
}

fn make_grid(cli_grid: Option<usize>, no_focal: bool, u: &[f64]) -> Result<GridSpec, CliError> {
    let n = grid_size(cli_grid)?;
    let base = GridSpec::uniform(n);
    Ok(if no_focal { base } else { base.with_focal(u, 8) })
}

fn range_value(r: EndpointRange) -> Value {
    json!({ "min": num(r.min), "max": num(r.max) })
}

fn region_value(r: &Region1D) -> Value {
    json!({
        "empty": r.empty,
        "g_lo": range_value(r.g_lo),
        "g_hi": range_value(r.g_hi),
    })
}

fn width_condition_name(w: WidthCondition) -> &'static str {
    match w {
        WidthCondition::Equal => "equal",
        WidthCondition::F1AlwaysAtLeast => "f1_always_at_least",
        WidthCondition::F2AlwaysAtLeast => "f2_always_at_least",
        WidthCondition::Mixed => "mixed",
    }
}

fn cmd_check_member(
    ivf: &str,
    u: &str,
    g: &str,
    c: f64,
    grid: Option<usize>,
    tol: Option<f64>,
    no_focal: bool,
) -> CliResult {
    let f = load_ivf(ivf)?;
    let u = parse_floats(u, "--u")?;
    let cand = parse_candidate(g, c)?;
    let tol = tol.unwrap_or(DEFAULT_TOL);
    let gridspec = make_grid(grid, no_focal, &u)?;
    let (member, witness) = member_check(&f, &u, &cand, &gridspec, tol)?;
    Report::new("check-member")
        .input("ivf", json!(ivf))
        .input("u", vec_nums(&u))
        .input("g", json!(g))
        .input("c", num(c))
        .input("grid", json!(gridspec.points_per_dim))
        .input("tol", num(tol))
        .results(json!({ "member": member, "witness": opt_vec(&witness) }))
        .print();
    Ok(if member { Outcome::Holds } else { Outcome::Fails })
}

fn cmd_region(
    ivf: &str,
    u: f64,
    c: f64,
    grid: Option<usize>,
    tol: Option<f64>,
    no_focal: bool,
) -> CliResult {
    let f = load_ivf(ivf)?;
    let tol = tol.unwrap_or(DEFAULT_TOL);
    let gridspec = make_grid(grid, no_focal, &[u])?;
    let region = region_1d(&f, u, c, &gridspec, tol)?;
    Report::new("region")
        .input("ivf", json!(ivf))
        .input("u", num(u))
        .input("c", num(c))
        .input("grid", json!(gridspec.points_per_dim))
        .input("tol", num(tol))
        .results(region_value(&region))
        .print();
    Ok(if region.empty {
        Outcome::Fails
    } else {
        Outcome::Holds
    })
}

fn cmd_efficiency(
    ivf: &str,
    u: &str,
    mode: &str,
    grid: Option<usize>,
    no_focal: bool,
) -> CliResult {
    let f = load_ivf(ivf)?;
    let u = parse_floats(u, "--u")?;
    let gridspec = make_grid(grid, no_focal, &u)?;
    let verdict = match mode {
        "weak" => weak_efficient_check(&f, &u, &gridspec, DEFAULT_TOL)?,
        "efficient" | "both" => efficient_check(&f, &u, &gridspec, DEFAULT_TOL)?,
        other => return Err(CliError(format!("unknown mode '{other}'"))),
    };
    let holds = match mode {
        "weak" => verdict.weak_efficient,
        "efficient" => verdict.efficient,
        _ => verdict.weak_efficient && verdict.efficient,
    };
    Report::new("efficiency")
        .input("ivf", json!(ivf))
        .input("u", vec_nums(&u))
        .input("mode", json!(mode))
        .input("grid", json!(gridspec.points_per_dim))
        .results(json!({
            "weak_efficient": verdict.weak_efficient,
            "efficient": verdict.efficient,
            "weak_witness": opt_vec(&verdict.weak_witness),
            "efficient_witness": opt_vec(&verdict.efficient_witness),
        }))
        .print();
    Ok(if holds { Outcome::Holds } else { Outcome::Fails })
}

fn cmd_sum_rule(
    ivf1: &str,
    ivf2: &str,
    u: f64,
    c_list: &str,
    grid: Option<usize>,
    no_focal: bool,
) -> CliResult {
    let f1 = load_ivf(ivf1)?;
    let f2 = load_ivf(ivf2)?;
    let cs = parse_floats(c_list, "--c-list")?;
    let gridspec = make_grid(grid, no_focal, &[u])?;
    let rep = sum_rule_experiment(&f1, &f2, u, &cs, &gridspec)?;
    let per_c: Vec<Value> = rep
        .per_c
        .iter()
        .map(|p| {
            let witness = p.witness.as_ref().map(|w| {
                json!({
                    "g": interval(w.g),
                    "c": num(w.c),
                    "part1": { "g": interval(w.part1.0), "c": num(w.part1.1) },
                    "part2": { "g": interval(w.part2.0), "c": num(w.part2.1) },
                    "in_part_sum_only": w.in_part_sum_only,
                })
            });
            json!({
                "c": num(p.c),
                "equal": p.equal,
                "region_of_sum": region_value(&p.region_of_sum),
                "witness": witness,
            })
        })
        .collect();
    Report::new("sum-rule")
        .input("ivf1", json!(ivf1))
        .input("ivf2", json!(ivf2))
        .input("u", num(u))
        .input("c_list", json!(c_list))
        .input("grid", json!(gridspec.points_per_dim))
        .results(json!({ "equal_everywhere": rep.equal_everywhere, "per_c": per_c }))
        .print();
    Ok(if rep.equal_everywhere {
        Outcome::Holds
    } else {
        Outcome::Fails
    })
}

fn cmd_diff_opt(
    ivf1: &str,
    ivf2: &str,
    u: f64,
    c_list: &str,
    grid: Option<usize>,
    no_focal: bool,
) -> CliResult {
    let f1 = load_ivf(ivf1)?;
    let f2 = load_ivf(ivf2)?;
    let cs = parse_floats(c_list, "--c-list")?;
    let gridspec = make_grid(grid, no_focal, &[u])?;
    let rep = diff_inclusion_check(&f1, &f2, u, &cs, &gridspec)?;
    let per_c: Vec<Value> = rep
        .per_c
        .iter()
        .map(|p| {
            json!({
                "c": num(p.c),
                "subset": p.subset,
                "region_a": region_value(&p.region_a),
                "region_b": region_value(&p.region_b),
                "witness": p.witness.map(interval),
            })
        })
        .collect();
    Report::new("diff-opt")
        .input("ivf1", json!(ivf1))
        .input("ivf2", json!(ivf2))
        .input("u", num(u))
        .input("c_list", json!(c_list))
        .input("grid", json!(gridspec.points_per_dim))
        .results(json!({
            "overall": rep.overall,
            "weak_eff_at_u": rep.weak_eff_at_u,
            "efficient_at_u": rep.efficient_at_u,
            "values_equal_at_u": rep.values_equal_at_u,
            "width_condition": width_condition_name(rep.width_condition),
            "per_c": per_c,
        }))
        .print();
    Ok(if rep.overall {
        Outcome::Holds
    } else {
        Outcome::Fails
    })
}

fn cmd_normal_cone(
    domain: &str,
    u: &str,
    g: &str,
    c: f64,
    grid: Option<usize>,
) -> CliResult {
    let boxes = parse_intervals(domain, "--domain")?;
    let domain_box: Vec<(f64, f64)> = boxes.iter().map(|b| (b.lo(), b.hi())).collect();
    let u = parse_floats(u, "--u")?;
    let cand = parse_candidate(g, c)?;
    let gridspec = make_grid(grid, false, &u)?;
    let (member, witness) = normal_cone_member_check(&domain_box, &u, &cand, &gridspec, DEFAULT_TOL)?;
    Report::new("normal-cone")
        .input("domain", json!(domain))
        .input("u", vec_nums(&u))
        .input("g", json!(g))
        .input("c", num(c))
        .input("grid", json!(gridspec.points_per_dim))
        .results(json!({ "member": member, "witness": opt_vec(&witness) }))
        .print();
    Ok(if member { Outcome::Holds } else { Outcome::Fails })
}

fn cmd_plot_data(ivf: &str, u: f64, g: &str, c: f64, grid: Option<usize>) -> CliResult {
    let f = load_ivf(ivf)?;
    if f.dim() != 1 {
        return Err(CliError("plot-data requires a 1D function".into()));
    }
    let cand = parse_candidate(g, c)?;
    let n = grid_size(grid)?;
    // plot data is a plain uniform sweep: exactly n rows, no focal points
    let gridspec = GridSpec::uniform(n);
    println!("y,phi_lo,phi_hi,h_lo,h_hi");
    for y in gridspec.points(f.domain()) {
        let phi = f.eval(&y)?;
        let h = support_ivf_eval(&f, &[u], &cand, &y)?;
        println!(
            "{},{},{},{},{}",
            g12(y[0]),
            g12(phi.lo()),
            g12(phi.hi()),
            g12(h.lo()),
            g12(h.hi())
        );
    }
    Ok(Outcome::Holds)
}

fn run(cli: Cli) -> CliResult {
    match &cli.command {
        Command::CheckMember {
            ivf,
            u,
            g,
            c,
            grid,
            tol,
            no_focal,
        } => cmd_check_member(ivf, u, g, *c, *grid, *tol, *no_focal),
        Command::Region {
            ivf,
            u,
            c,
            grid,
            tol,
            no_focal,
        } => cmd_region(ivf, *u, *c, *grid, *tol, *no_focal),
        Command::Efficiency {
            ivf,
            u,
            mode,
            grid,
            no_focal,
        } => cmd_efficiency(ivf, u, mode, *grid, *no_focal),
        Command::SumRule {
            ivf1,
            ivf2,
            u,
            c_list,
            grid,
            no_focal,
        } => cmd_sum_rule(ivf1, ivf2, *u, c_list, *grid, *no_focal),
        Command::DiffOpt {
            ivf1,
            ivf2,
            u,
            c_list,
            grid,
            no_focal,
        } => cmd_diff_opt(ivf1, ivf2, *u, c_list, *grid, *no_focal),
        Command::NormalCone {
            domain,
            u,
            g,
            c,
            grid,
        } => cmd_normal_cone(domain, u, g, *c, *grid),
        Command::PlotData { ivf, u, g, c, grid } => cmd_plot_data(ivf, *u, g, *c, *grid),
        Command::Repro { case } => repro::cmd_repro(case),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_name = match &cli.command {
        Command::CheckMember { .. } => "check-member",
        Command::Region { .. } => "region",
        Command::Efficiency { .. } => "efficiency",
        Command::SumRule { .. } => "sum-rule",
        Command::DiffOpt { .. } => "diff-opt",
        Command::NormalCone { .. } => "normal-cone",
        Command::PlotData { .. } => "plot-data",
        Command::Repro { .. } => "repro",
    };
    match run(cli) {
        Ok(Outcome::Holds) => ExitCode::from(0),
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(CliError(msg)) => {
            Report::new(command_name)
                .diagnostic("error", &msg)
                .print();
            ExitCode::from(2)
        }
    }
}
