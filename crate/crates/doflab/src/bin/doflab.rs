//! Command-line surface: regions, classification, scheme simulation,
//! exhaustive sweeps, and SVG plots.
//!
//! Exit codes: 0 success, 2 usage error, 3 sweep-check violation,
//! 4 simulation failure surviving the resample cap.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use doflab::report::{
    to_json_string, ClassifyDoc, PlanDoc, RegionDoc, SimulateDoc, SweepDoc, SweepViolationDoc,
    TranscriptDoc, SCHEMA_VERSION,
};
use doflab::sim::{
    monte_carlo, run_scheme, sample_channel_exact, sample_channel_float, sample_truth_exact,
    sample_truth_float, DistributionSpec, Mode,
};
use doflab::{
    classify, plan_p0_p1, plan_p2, region_delayed_csit, region_fb_dcsit, region_for,
    region_perfect_csit, AntennaConfig, Family, RegimeTag, SchemePlan, SchemePoint,
};

#[derive(Parser)]
#[command(
    name = "doflab",
    version,
    about = "Exact DoF regions and retrospective coding schemes for the two-user MIMO interference channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Transmit antennas of user 1
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    m1: u32,
    /// Transmit antennas of user 2
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    m2: u32,
    /// Receive antennas of user 1
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    n1: u32,
    /// Receive antennas of user 2
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    n2: u32,
}

impl ConfigArgs {
    fn config(&self) -> AntennaConfig {
        AntennaConfig::new(self.m1, self.m2, self.n1, self.n2)
            .expect("clap enforces positive antenna counts")
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "p_csit")]
    PCsit,
    #[value(name = "d_csit")]
    DCsit,
    #[value(name = "fb_dcsit")]
    FbDCsit,
    #[value(name = "no_csit_fixture")]
    NoCsitFixture,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::PCsit => Family::PCsit,
            FamilyArg::DCsit => Family::DCsit,
            FamilyArg::FbDCsit => Family::FbDCsit,
            FamilyArg::NoCsitFixture => Family::NoCsitFixture,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum PointArg {
    P0,
    P1,
    P2,
}

impl PointArg {
    fn as_str(self) -> &'static str {
        match self {
            PointArg::P0 => "p0",
            PointArg::P1 => "p1",
            PointArg::P2 => "p2",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum CheckArg {
    Inclusions,
    Classification,
    Corners,
}

#[derive(Subcommand)]
enum Command {
    /// Print a DoF region (canonical half-planes and vertices)
    Region {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// CSIT family to build
        #[arg(long, value_enum, default_value = "fb_dcsit")]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a configuration into its feedback regime
    Classify {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Run a corner-point scheme over random channels and verify decoding
    Simulate {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Corner point to execute
        #[arg(long, value_enum)]
        point: PointArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Random seed (falls back to DOFLAB_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Coefficient bound for exact-mode channel entries
        #[arg(long, default_value_t = 1000)]
        bound: u32,
        /// Include the full transmission plan in the output
        #[arg(long)]
        dump_plan: bool,
        /// Include the first trial's transcript in the output
        #[arg(long)]
        dump_transcript: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check region and scheme properties over [1, MAX]^4
    Sweep {
        /// Largest antenna count per dimension
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
        /// Comma-separated checks to run
        #[arg(long, value_enum, value_delimiter = ',', default_value = "inclusions,classification,corners")]
        checks: Vec<CheckArg>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render overlaid region polygons as an SVG file
    Plot {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Comma-separated families to overlay
        #[arg(long, value_enum, value_delimiter = ',', default_value = "p_csit,fb_dcsit,d_csit")]
        families: Vec<FamilyArg>,
        /// Output path (default dof_plot_<m1>_<m2>_<n1>_<n2>.svg)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), ExitCode> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(2)
        }),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, ExitCode> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("DOFLAB_SEED") {
        Ok(text) => text.parse::<u64>().map_err(|_| {
            usage_error(&format!(
                "DOFLAB_SEED must be an unsigned 64-bit integer, got {text:?}"
            ))
        }),
        Err(_) => Ok(0),
    }
}

/// Builds the plan for a requested corner point, erroring when the point does
/// not apply to the configuration's regime.
fn plan_for_point(canon: &AntennaConfig, point: PointArg) -> Result<SchemePlan, String> {
    let plan = match point {
        PointArg::P0 | PointArg::P1 => plan_p0_p1(canon),
        PointArg::P2 => plan_p2(canon),
    }
    .map_err(|e| e.to_string())?;
    let built = match plan.point {
        SchemePoint::P0 => PointArg::P0,
        SchemePoint::P1 => PointArg::P1,
        SchemePoint::P2 => PointArg::P2,
    };
    if built != point {
        return Err(format!(
            "point {} does not apply to {canon}; its fresh-transmission corner point is {}",
            point.as_str(),
            built.as_str()
        ));
    }
    Ok(plan)
}

fn cmd_region(
    cfg: &AntennaConfig,
    family: Family,
    format: OutFormat,
    out: Option<&PathBuf>,
) -> ExitCode {
    let region = match region_for(cfg, family) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let doc = RegionDoc::new(&region);
    let text = match format {
        OutFormat::Json => to_json_string(&doc),
        OutFormat::Csv => doc.to_csv(),
    };
    match emit(&text, out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn cmd_classify(cfg: &AntennaConfig) -> ExitCode {
    let (canon, swapped) = cfg.canonical();
    let class = classify(&canon);
    let doc = ClassifyDoc::new(cfg, &canon, swapped, &class);
    print!("{}", to_json_string(&doc));
    ExitCode::SUCCESS
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    cfg: &AntennaConfig,
    point: PointArg,
    trials: usize,
    seed: u64,
    mode: ModeArg,
    bound: u32,
    dump_plan: bool,
    dump_transcript: bool,
    out: Option<&PathBuf>,
) -> ExitCode {
    let (canon, swapped) = cfg.canonical();
    let plan = match plan_for_point(&canon, point) {
        Ok(p) => p,
        Err(msg) => return usage_error(&msg),
    };
    let dist = match mode {
        ModeArg::Exact => match DistributionSpec::exact_uniform(bound) {
            Ok(d) => d,
            Err(e) => return usage_error(&e.to_string()),
        },
        ModeArg::Float => DistributionSpec::gaussian(),
    };
    let summary = match monte_carlo(&plan, &dist, trials, seed) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    let sim_mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    };
    let mut doc = SimulateDoc::new(
        cfg,
        swapped,
        point.as_str(),
        sim_mode,
        seed,
        (mode == ModeArg::Exact).then_some(bound),
        &summary,
    );
    if dump_plan {
        doc.plan = Some(PlanDoc::new(&plan));
    }
    if dump_transcript {
        doc.transcript = Some(first_trial_transcript(&plan, &dist, sim_mode, bound, seed));
    }
    let failed = summary.failures > 0;
    if let Err(code) = emit(&to_json_string(&doc), out) {
        return code;
    }
    if failed {
        eprintln!(
            "error: {} of {} trials failed decoding",
            summary.failures, summary.trials
        );
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    }
}

/// Re-executes the first drawn realization of a run for transcript dumping.
fn first_trial_transcript(
    plan: &SchemePlan,
    dist: &DistributionSpec,
    mode: Mode,
    bound: u32,
    seed: u64,
) -> TranscriptDoc {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let chan_seed = master.next_u64();
    let truth_seed = master.next_u64();
    let (u, v) = (plan.ledger.u_count, plan.ledger.v_count);
    match mode {
        Mode::Exact => {
            let draw = sample_channel_exact(&plan.config, plan.total_slots, dist, chan_seed)
                .expect("mode already validated");
            let truth = sample_truth_exact(u, v, bound, truth_seed);
            let tr = run_scheme(plan, &draw, &truth, 0.0).expect("plan validated at construction");
            TranscriptDoc::from_exact(&tr)
        }
        Mode::Float => {
            let draw = sample_channel_float(&plan.config, plan.total_slots, dist, chan_seed)
                .expect("mode already validated");
            let truth = sample_truth_float(u, v, truth_seed);
            let tr = run_scheme(plan, &draw, &truth, doflab::sim::FLOAT_RANK_TOL)
                .expect("plan validated at construction");
            TranscriptDoc::from_float(&tr)
        }
    }
}

fn cmd_sweep(max: u32, checks: &[CheckArg], format: OutFormat, out: Option<&PathBuf>) -> ExitCode {
    let mut checks: Vec<CheckArg> = checks.to_vec();
    checks.sort();
    checks.dedup();
    let mut violations: Vec<SweepViolationDoc> = Vec::new();
    let mut configs_checked = 0usize;
    let mut record = |cfg: &AntennaConfig, check: &str, detail: String| {
        violations.push(SweepViolationDoc {
            config: cfg.as_array(),
            check: check.to_owned(),
            detail,
        });
    };
    for m1 in 1..=max {
        for m2 in 1..=max {
            for n1 in 1..=max {
                for n2 in 1..=max {
                    let cfg = AntennaConfig::new(m1, m2, n1, n2).expect("positive counts");
                    configs_checked += 1;
                    let d = region_delayed_csit(&cfg);
                    let fb = region_fb_dcsit(&cfg);
                    let p = region_perfect_csit(&cfg);
                    let (canon, swapped) = cfg.canonical();
                    let class = classify(&canon);
                    if checks.contains(&CheckArg::Inclusions) {
                        if !d.is_subset_of(&fb) {
                            record(&cfg, "inclusions", "delayed-CSIT region not inside feedback region".into());
                        }
                        if !fb.is_subset_of(&p) {
                            record(&cfg, "inclusions", "feedback region not inside perfect-CSIT region".into());
                        }
                    }
                    if checks.contains(&CheckArg::Classification) {
                        match class.tag {
                            RegimeTag::CaseA => {
                                if !fb.region_equal(&p) {
                                    record(&cfg, "classification", "case A but feedback region differs from perfect CSIT".into());
                                }
                            }
                            RegimeTag::CaseB => {
                                if !d.is_strict_subset_of(&fb) {
                                    record(&cfg, "classification", "case B but delayed region not strictly inside feedback region".into());
                                }
                                if !fb.is_strict_subset_of(&p) {
                                    record(&cfg, "classification", "case B but feedback region not strictly inside perfect-CSIT region".into());
                                }
                            }
                            RegimeTag::EqualDelayed => {
                                if !d.region_equal(&fb) {
                                    record(&cfg, "classification", "equal-delayed tag but regions differ".into());
                                }
                            }
                        }
                    }
                    if checks.contains(&CheckArg::Corners) && class.tag != RegimeTag::EqualDelayed {
                        let mut plans = Vec::new();
                        match plan_p0_p1(&canon) {
                            Ok(plan) => plans.push(plan),
                            Err(e) => record(&cfg, "corners", format!("fresh-transmission plan failed: {e}")),
                        }
                        if class.tag == RegimeTag::CaseB {
                            match plan_p2(&canon) {
                                Ok(plan) => plans.push(plan),
                                Err(e) => record(&cfg, "corners", format!("second corner plan failed: {e}")),
                            }
                        }
                        for plan in &plans {
                            let claimed = if swapped {
                                (plan.claimed_dof.1.clone(), plan.claimed_dof.0.clone())
                            } else {
                                plan.claimed_dof.clone()
                            };
                            if !fb.is_vertex(&claimed) {
                                record(
                                    &cfg,
                                    "corners",
                                    format!("claimed point of {} is not a region vertex", plan.point),
                                );
                            }
                            if !plan.feasibility.all_satisfied() {
                                record(&cfg, "corners", format!("{} counting checks unsatisfied", plan.point));
                            }
                            if let Err(e) = plan.validate_causality() {
                                record(&cfg, "corners", format!("{} causality: {e}", plan.point));
                            }
                        }
                    }
                }
            }
        }
    }
    let doc = SweepDoc {
        version: SCHEMA_VERSION,
        max_antennas: max,
        checks: checks
            .iter()
            .map(|c| {
                match c {
                    CheckArg::Inclusions => "inclusions",
                    CheckArg::Classification => "classification",
                    CheckArg::Corners => "corners",
                }
                .to_owned()
            })
            .collect(),
        configs_checked,
        ok: violations.is_empty(),
        violations,
    };
    let text = match format {
        OutFormat::Json => to_json_string(&doc),
        OutFormat::Csv => doc.to_csv(),
    };
    if let Err(code) = emit(&text, out) {
        return code;
    }
    if doc.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: {} sweep violations", doc.violations.len());
        ExitCode::from(3)
    }
}

fn cmd_plot(cfg: &AntennaConfig, families: &[FamilyArg], out: Option<&PathBuf>) -> ExitCode {
    let mut regions = Vec::new();
    for f in families {
        match region_for(cfg, Family::from(*f)) {
            Ok(r) => regions.push(r),
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    if regions.is_empty() {
        return usage_error("at least one family is required");
    }
    let svg = doflab::svgplot::render_regions(cfg, &regions);
    let path = out.cloned().unwrap_or_else(|| {
        PathBuf::from(format!(
            "dof_plot_{}_{}_{}_{}.svg",
            cfg.m1, cfg.m2, cfg.n1, cfg.n2
        ))
    });
    if let Err(e) = std::fs::write(&path, svg) {
        eprintln!("error: cannot write {}: {e}", path.display());
        return ExitCode::from(2);
    }
    println!("{}", path.display());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Region {
            cfg,
            family,
            format,
            out,
        } => cmd_region(&cfg.config(), family.into(), format, out.as_ref()),
        Command::Classify { cfg } => cmd_classify(&cfg.config()),
        Command::Simulate {
            cfg,
            point,
            trials,
            seed,
            mode,
            bound,
            dump_plan,
            dump_transcript,
            out,
        } => match resolve_seed(seed) {
            Ok(seed) => cmd_simulate(
                &cfg.config(),
                point,
                trials,
                seed,
                mode,
                bound,
                dump_plan,
                dump_transcript,
                out.as_ref(),
            ),
            Err(code) => code,
        },
        Command::Sweep {
            max,
            checks,
            format,
            out,
        } => cmd_sweep(max, &checks, format, out.as_ref()),
        Command::Plot { cfg, families, out } => cmd_plot(&cfg.config(), &families, out.as_ref()),
    }
}
