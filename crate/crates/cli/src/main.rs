use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use starshare_cli::angle::parse_angle;
use starshare_cli::svg::render_heatmap;
use starshare_cli::table::{Cell, OutputTable};
use starshare_core::bell::{closed_form_s, max_rounds};
use starshare_core::config::{DEFAULT_ALPHA1, DEFAULT_EPSILON, DEFAULT_TOL_STRICT};
use starshare_core::entanglement::{canonical_delta, theta_for_concurrence, threshold_concurrence};
use starshare_core::experiments::{
    compare_protocols, sweep_max_rounds, tradeoff_report, verify_closed_forms, Axis, AxisParam,
    DeltaConvention, SweepSpec,
};
use starshare_core::sequence::{build_alpha_sequence, AlphaSequence};
use starshare_core::NoiseModel;

#[derive(Parser)]
#[command(
    name = "starshare",
    version,
    about = "Sequential nonlocality sharing in star quantum networks",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write results to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (svg only for sweep)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized operations
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON file supplying defaults for any flag (flags take precedence)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Measurement-angle convention used when delta is not given
    #[arg(long, global = true, value_enum)]
    convention: Option<ConventionArg>,
    /// Strict-violation tolerance (a round counts only if S > 2 + this)
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    /// delta = pi/2 - 2 theta
    Pi2,
    /// delta = pi/4 - 2 theta
    Pi4,
}

#[derive(Subcommand)]
enum Cmd {
    /// Entanglement threshold C(k) for k sharing rounds
    Threshold {
        #[arg(long)]
        k: Option<u32>,
    },
    /// Construct the per-round measurement-probability sequence
    Sequence {
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        alpha1: Option<f64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        noise: Option<String>,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Network Bell value S for one scenario
    Svalue {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        alpha1: Option<f64>,
        /// Comma-separated explicit probabilities, overriding construction
        #[arg(long)]
        alphas: Option<String>,
        #[arg(long)]
        noise: Option<String>,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Deepest violating round for a state and setting
    MaxRounds {
        #[arg(long)]
        theta: Option<String>,
        /// Fixes theta through the concurrence instead
        #[arg(long)]
        concurrence: Option<f64>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        alpha1: Option<f64>,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        noise: Option<String>,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Two-axis grid scan of the sharing depth
    Sweep {
        /// Axis as name:start:stop:count (name in theta, delta, p, epsilon, alpha1)
        #[arg(long)]
        axis1: Option<String>,
        #[arg(long)]
        axis2: Option<String>,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        alpha1: Option<f64>,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        noise: Option<String>,
        #[arg(long)]
        p: Option<f64>,
        /// Emit both canonical angle conventions, tagged per row
        #[arg(long)]
        both_conventions: bool,
    },
    /// Round-by-round comparison of the coin and sharpness protocols
    Compare {
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        alpha1: Option<f64>,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Depth-breadth achievability table at the critical concurrence
    Tradeoff {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Random cross-check of closed forms against the simulations
    Verify {
        #[arg(long)]
        samples: Option<u32>,
    },
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<starshare_core::Error> for CliError {
    fn from(e: starshare_core::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(format!("{e:#}"))
    }
}

/// Layered option lookup: command-line flag, then config file, then default.
struct Ctx {
    cfg: serde_json::Value,
    out: Option<PathBuf>,
    format: Format,
    format_explicit: bool,
    seed: u64,
    convention: Option<ConventionArg>,
    tolerance: f64,
}

impl Ctx {
    fn load(cli: &Cli) -> Result<Self, CliError> {
        let cfg = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("bad config file: {e}")))?
            }
            None => serde_json::Value::Object(Default::default()),
        };
        let mut ctx = Ctx {
            cfg,
            out: cli.out.clone(),
            format: Format::Csv,
            format_explicit: cli.format.is_some(),
            seed: 42,
            convention: cli.convention,
            tolerance: DEFAULT_TOL_STRICT,
        };
        ctx.format = match cli.format {
            Some(f) => f,
            None => match ctx.str_opt(None, "format") {
                Some(s) => {
                    ctx.format_explicit = true;
                    match s.as_str() {
                        "csv" => Format::Csv,
                        "json" => Format::Json,
                        "svg" => Format::Svg,
                        other => {
                            return Err(CliError::Usage(format!("unknown format '{other}'")))
                        }
                    }
                }
                None => Format::Csv,
            },
        };
        ctx.seed = cli
            .seed
            .or_else(|| ctx.cfg.get("seed").and_then(|v| v.as_u64()))
            .unwrap_or(42);
        if ctx.convention.is_none() {
            ctx.convention = match ctx.str_opt(None, "convention").as_deref() {
                Some("pi2") => Some(ConventionArg::Pi2),
                Some("pi4") => Some(ConventionArg::Pi4),
                Some(other) => {
                    return Err(CliError::Usage(format!("unknown convention '{other}'")))
                }
                None => None,
            };
        }
        ctx.tolerance = cli
            .tolerance
            .or_else(|| ctx.cfg.get("tolerance").and_then(|v| v.as_f64()))
            .unwrap_or(DEFAULT_TOL_STRICT);
        Ok(ctx)
    }

    fn f64_of(&self, flag: Option<f64>, key: &str, default: f64) -> f64 {
        flag.or_else(|| self.cfg.get(key).and_then(|v| v.as_f64()))
            .unwrap_or(default)
    }

    fn u32_of(&self, flag: Option<u32>, key: &str, default: u32) -> u32 {
        flag.or_else(|| self.cfg.get(key).and_then(|v| v.as_u64()).map(|v| v as u32))
            .unwrap_or(default)
    }

    fn str_opt(&self, flag: Option<&str>, key: &str) -> Option<String> {
        flag.map(str::to_string).or_else(|| {
            self.cfg
                .get(key)
                .and_then(|v| v.as_str())
                .map(str::to_string)
        })
    }

    /// Angle option: flag or config entry, either numeric or pi-notation.
    fn angle_of(&self, flag: &Option<String>, key: &str) -> Result<Option<f64>, CliError> {
        let source = match flag {
            Some(s) => Some(s.clone()),
            None => match self.cfg.get(key) {
                Some(serde_json::Value::String(s)) => Some(s.clone()),
                Some(serde_json::Value::Number(n)) => {
                    return Ok(n.as_f64());
                }
                _ => None,
            },
        };
        match source {
            Some(s) => parse_angle(&s)
                .map(Some)
                .map_err(|e| CliError::Usage(format!("--{key}: {e}"))),
            None => Ok(None),
        }
    }

    fn noise_of(
        &self,
        noise: &Option<String>,
        p: Option<f64>,
    ) -> Result<NoiseModel, CliError> {
        let kind = self
            .str_opt(noise.as_deref(), "noise")
            .unwrap_or_else(|| "none".into());
        let p = self.f64_of(p, "p", 0.0);
        Ok(match kind.as_str() {
            "none" => NoiseModel::None,
            "depolarizing" | "depol" => NoiseModel::Depolarizing { p },
            "damping" | "amplitude-damping" => NoiseModel::AmplitudeDamping { p },
            other => {
                return Err(CliError::Usage(format!(
                    "unknown noise model '{other}' (none, depolarizing, damping)"
                )))
            }
        })
    }

    /// delta from flag/config, else from the convention (default pi/2 form).
    fn delta_of(&self, delta: &Option<String>, theta: f64) -> Result<f64, CliError> {
        if let Some(d) = self.angle_of(delta, "delta")? {
            return Ok(d);
        }
        Ok(match self.convention.unwrap_or(ConventionArg::Pi2) {
            ConventionArg::Pi2 => std::f64::consts::FRAC_PI_2 - 2.0 * theta,
            ConventionArg::Pi4 => FRAC_PI_4 - 2.0 * theta,
        })
    }

    fn convention_label(&self) -> &'static str {
        match self.convention {
            Some(ConventionArg::Pi4) => "pi4",
            Some(ConventionArg::Pi2) => "pi2",
            None => "pi2",
        }
    }

    fn base_meta(&self, table: &mut OutputTable, command: &str) {
        table.meta("tool_version", env!("CARGO_PKG_VERSION"));
        table.meta("command", command);
    }

    fn emit(&self, table: &OutputTable) -> Result<(), CliError> {
        let Some(path) = &self.out else {
            return Ok(());
        };
        let body = match self.format {
            Format::Csv => table.to_csv(),
            Format::Json => table.to_json(),
            Format::Svg => {
                return Err(CliError::Usage(
                    "svg output is only available for sweep".into(),
                ))
            }
        };
        std::fs::write(path, body)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
    }
}

fn parse_axis(text: &str) -> Result<Axis, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "axis '{text}' must be name:start:stop:count"
        )));
    }
    let param = AxisParam::parse(parts[0]).map_err(|e| CliError::Usage(e.to_string()))?;
    let start = parse_angle(parts[1]).map_err(|e| CliError::Usage(format!("axis start: {e}")))?;
    let stop = parse_angle(parts[2]).map_err(|e| CliError::Usage(format!("axis stop: {e}")))?;
    let count: usize = parts[3]
        .parse()
        .map_err(|_| CliError::Usage(format!("axis count '{}' is not an integer", parts[3])))?;
    Ok(Axis {
        param,
        start,
        stop,
        count,
    })
}

fn noise_meta(table: &mut OutputTable, noise: NoiseModel) {
    table.meta("noise", noise.label());
    table.meta("p", noise.strength());
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let ctx = Ctx::load(cli)?;
    if ctx.format == Format::Svg {
        if !matches!(cli.cmd, Cmd::Sweep { .. }) {
            return Err(CliError::Usage("svg output is only available for sweep".into()));
        }
        if ctx.out.is_none() {
            return Err(CliError::Usage("svg output requires --out".into()));
        }
    }
    if ctx.format_explicit && ctx.out.is_none() && ctx.format != Format::Svg {
        return Err(CliError::Usage("--format requires --out".into()));
    }

    match &cli.cmd {
        Cmd::Threshold { k } => {
            let k = ctx.u32_of(*k, "k", 2);
            let c = threshold_concurrence(k)?;
            let mut table = OutputTable::new(vec!["k", "c"]);
            ctx.base_meta(&mut table, "threshold");
            table.meta("k", k);
            table.push_row(vec![Cell::Int(k as i64), Cell::Float(c)]);
            println!("C({k}) = {c:.16}");
            ctx.emit(&table)
        }
        Cmd::Sequence {
            theta,
            delta,
            epsilon,
            alpha1,
            k,
            noise,
            p,
        } => {
            let theta = ctx.angle_of(theta, "theta")?.unwrap_or(FRAC_PI_4 - 0.01);
            let delta = ctx.delta_of(delta, theta)?;
            let epsilon = ctx.f64_of(*epsilon, "epsilon", DEFAULT_EPSILON);
            let alpha1 = ctx.f64_of(*alpha1, "alpha1", DEFAULT_ALPHA1);
            let k = ctx.u32_of(*k, "k", 5);
            let noise = ctx.noise_of(noise, *p)?;
            let seq = build_alpha_sequence(theta, delta, epsilon, alpha1, k, noise)?;
            let mut table = OutputTable::new(vec!["j", "alpha", "p_cum", "feasible"]);
            ctx.base_meta(&mut table, "sequence");
            table.meta("theta", theta);
            table.meta("delta", delta);
            table.meta("epsilon", epsilon);
            table.meta("alpha1", alpha1);
            table.meta("k", k);
            table.meta("convention", ctx.convention_label());
            noise_meta(&mut table, noise);
            for j in 1..=seq.len() {
                let (alpha, p_cum) = seq.round(j).unwrap();
                table.push_row(vec![
                    Cell::Int(j as i64),
                    Cell::Float(alpha),
                    Cell::Float(p_cum),
                    Cell::Str((j <= seq.feasible_through()).to_string()),
                ]);
                println!(
                    "round {j}: alpha = {alpha:.6e}, P = {p_cum:.12}, feasible = {}",
                    j <= seq.feasible_through()
                );
            }
            ctx.emit(&table)
        }
        Cmd::Svalue {
            n,
            m,
            j,
            theta,
            delta,
            epsilon,
            alpha1,
            alphas,
            noise,
            p,
        } => {
            let n = ctx.u32_of(*n, "n", 2);
            let m = ctx.u32_of(*m, "m", n);
            let j = ctx.u32_of(*j, "j", 1);
            let theta = ctx.angle_of(theta, "theta")?.unwrap_or(FRAC_PI_4 - 0.01);
            let delta = ctx.delta_of(delta, theta)?;
            let epsilon = ctx.f64_of(*epsilon, "epsilon", DEFAULT_EPSILON);
            let alpha1 = ctx.f64_of(*alpha1, "alpha1", DEFAULT_ALPHA1);
            let noise = ctx.noise_of(noise, *p)?;
            let seq = match ctx.str_opt(alphas.as_deref(), "alphas") {
                Some(list) => {
                    let parsed: Result<Vec<f64>, _> =
                        list.split(',').map(|s| s.trim().parse::<f64>()).collect();
                    AlphaSequence::from_alphas(parsed.map_err(|e| {
                        CliError::Usage(format!("--alphas must be comma-separated numbers: {e}"))
                    })?)?
                }
                None => build_alpha_sequence(theta, delta, epsilon, alpha1, j.max(1), noise)?,
            };
            let v = closed_form_s(n, m, j, theta, delta, &seq, noise)?;
            let mut table =
                OutputTable::new(vec!["n", "m", "j", "s", "i_n", "j_n", "in_regime"]);
            ctx.base_meta(&mut table, "svalue");
            table.meta("theta", theta);
            table.meta("delta", delta);
            table.meta("epsilon", epsilon);
            table.meta("alpha1", alpha1);
            table.meta("convention", ctx.convention_label());
            noise_meta(&mut table, noise);
            table.push_row(vec![
                Cell::Int(n as i64),
                Cell::Int(m as i64),
                Cell::Int(j as i64),
                Cell::Float(v.s),
                Cell::Float(v.i_n),
                Cell::Float(v.j_n),
                Cell::Str(v.in_regime.to_string()),
            ]);
            println!("S({n},{m},{j}) = {:.16}", v.s);
            ctx.emit(&table)
        }
        Cmd::MaxRounds {
            theta,
            concurrence,
            delta,
            epsilon,
            alpha1,
            cap,
            noise,
            p,
        } => {
            let theta = match concurrence
                .or_else(|| ctx.cfg.get("concurrence").and_then(|v| v.as_f64()))
            {
                Some(c) => theta_for_concurrence(c)?,
                None => ctx.angle_of(theta, "theta")?.unwrap_or(FRAC_PI_4 - 0.01),
            };
            let delta = ctx.delta_of(delta, theta)?;
            let epsilon = ctx.f64_of(*epsilon, "epsilon", DEFAULT_EPSILON);
            let alpha1 = ctx.f64_of(*alpha1, "alpha1", DEFAULT_ALPHA1);
            let cap = ctx.u32_of(*cap, "cap", 10);
            let noise = ctx.noise_of(noise, *p)?;
            let rounds = max_rounds(theta, delta, epsilon, alpha1, noise, cap, ctx.tolerance)?;
            let mut table = OutputTable::new(vec!["theta", "delta", "max_rounds"]);
            ctx.base_meta(&mut table, "max-rounds");
            table.meta("epsilon", epsilon);
            table.meta("alpha1", alpha1);
            table.meta("cap", cap);
            table.meta("tolerance", ctx.tolerance);
            table.meta("convention", ctx.convention_label());
            noise_meta(&mut table, noise);
            table.push_row(vec![
                Cell::Float(theta),
                Cell::Float(delta),
                Cell::Int(rounds as i64),
            ]);
            println!("{rounds}");
            ctx.emit(&table)
        }
        Cmd::Sweep {
            axis1,
            axis2,
            theta,
            delta,
            epsilon,
            alpha1,
            cap,
            noise,
            p,
            both_conventions,
        } => {
            let axis1 = parse_axis(
                &ctx.str_opt(axis1.as_deref(), "axis1")
                    .unwrap_or_else(|| "theta:0.15:pi/4:181".into()),
            )?;
            let axis2 = parse_axis(
                &ctx.str_opt(axis2.as_deref(), "axis2")
                    .unwrap_or_else(|| "delta:0.001:1.57:181".into()),
            )?;
            let theta = ctx.angle_of(theta, "theta")?.unwrap_or(FRAC_PI_4 - 0.01);
            let delta_fixed = ctx.angle_of(delta, "delta")?.unwrap_or(0.0);
            let epsilon = ctx.f64_of(*epsilon, "epsilon", DEFAULT_EPSILON);
            let alpha1 = ctx.f64_of(*alpha1, "alpha1", DEFAULT_ALPHA1);
            let cap = ctx.u32_of(*cap, "cap", 5);
            let noise = ctx.noise_of(noise, *p)?;
            let has_delta_axis =
                axis1.param == AxisParam::Delta || axis2.param == AxisParam::Delta;
            let conventions: Vec<DeltaConvention> = if *both_conventions {
                if has_delta_axis {
                    return Err(CliError::Usage(
                        "--both-conventions conflicts with a delta axis".into(),
                    ));
                }
                if ctx.format == Format::Svg {
                    return Err(CliError::Usage(
                        "svg shows a single convention; drop --both-conventions".into(),
                    ));
                }
                vec![DeltaConvention::CanonicalPi2, DeltaConvention::CanonicalPi4]
            } else {
                vec![match (ctx.convention, has_delta_axis) {
                    (Some(ConventionArg::Pi2), _) => DeltaConvention::CanonicalPi2,
                    (Some(ConventionArg::Pi4), _) => DeltaConvention::CanonicalPi4,
                    (None, true) => DeltaConvention::Explicit,
                    (None, false) => DeltaConvention::CanonicalPi2,
                }]
            };
            let mut runs = Vec::new();
            for &convention in &conventions {
                let spec = SweepSpec {
                    axis1,
                    axis2,
                    theta,
                    delta: delta_fixed,
                    epsilon,
                    alpha1,
                    noise,
                    convention,
                    round_cap: cap,
                    tol_strict: ctx.tolerance,
                };
                runs.push((convention, sweep_max_rounds(&spec)?));
            }

            if ctx.format == Format::Svg {
                let records = &runs[0].1;
                let svg = render_heatmap(records, axis1.param.name(), axis2.param.name())?;
                let path = ctx.out.as_ref().expect("checked above");
                std::fs::write(path, svg).map_err(|e| {
                    CliError::Runtime(format!("cannot write {}: {e}", path.display()))
                })?;
                println!("wrote heatmap ({} cells)", records.len());
                return Ok(());
            }

            let mut columns = vec![
                axis1.param.name().to_string(),
                axis2.param.name().to_string(),
                "max_rounds".to_string(),
            ];
            for j in 1..=cap {
                columns.push(format!("S_{j}"));
            }
            columns.push("note".to_string());
            if *both_conventions {
                columns.push("convention".to_string());
            }
            let mut table = OutputTable::new(columns);
            ctx.base_meta(&mut table, "sweep");
            table.meta("axis1", format!(
                "{}:{}:{}:{}",
                axis1.param.name(), axis1.start, axis1.stop, axis1.count
            ));
            table.meta("axis2", format!(
                "{}:{}:{}:{}",
                axis2.param.name(), axis2.start, axis2.stop, axis2.count
            ));
            table.meta("theta", theta);
            table.meta("delta", delta_fixed);
            table.meta("epsilon", epsilon);
            table.meta("alpha1", alpha1);
            table.meta("cap", cap);
            table.meta("tolerance", ctx.tolerance);
            table.meta(
                "convention",
                runs.iter()
                    .map(|(c, _)| c.label())
                    .collect::<Vec<_>>()
                    .join("+"),
            );
            noise_meta(&mut table, noise);
            for (convention, records) in &runs {
                for r in records {
                    let mut row = vec![
                        Cell::Float(r.axis1_value),
                        Cell::Float(r.axis2_value),
                        Cell::Int(r.max_rounds as i64),
                    ];
                    for j in 0..cap as usize {
                        row.push(Cell::Float(
                            r.s_per_round.get(j).copied().unwrap_or(f64::NAN),
                        ));
                    }
                    row.push(Cell::Str(r.note.clone().unwrap_or_default()));
                    if *both_conventions {
                        row.push(Cell::Str(convention.label().to_string()));
                    }
                    table.push_row(row);
                }
            }
            let all: Vec<&_> = runs.iter().flat_map(|(_, rs)| rs).collect();
            println!(
                "swept {} cells; depth range {}..{}",
                all.len(),
                all.iter().map(|r| r.max_rounds).min().unwrap_or(0),
                all.iter().map(|r| r.max_rounds).max().unwrap_or(0)
            );
            ctx.emit(&table)
        }
        Cmd::Compare {
            theta,
            epsilon,
            alpha1,
            omega,
            k,
        } => {
            let theta = ctx.angle_of(theta, "theta")?.unwrap_or(FRAC_PI_4 - 0.01);
            let epsilon = ctx.f64_of(*epsilon, "epsilon", 1e-2);
            let alpha1 = ctx.f64_of(*alpha1, "alpha1", DEFAULT_ALPHA1);
            let omega = ctx
                .angle_of(omega, "omega")?
                .unwrap_or(FRAC_PI_4 * 1e-7);
            let k = ctx.u32_of(*k, "k", 5);
            let cmp = compare_protocols(theta, epsilon, alpha1, omega, k)?;
            let mut table = OutputTable::new(vec![
                "j",
                "s_ppm",
                "s_unsharp",
                "margin_ppm",
                "margin_unsharp",
                "ppm_violates",
                "unsharp_violates",
            ]);
            ctx.base_meta(&mut table, "compare");
            table.meta("theta", theta);
            table.meta("delta", canonical_delta(theta)?);
            table.meta("epsilon", epsilon);
            table.meta("alpha1", alpha1);
            table.meta("omega", omega);
            table.meta("k", k);
            if let Some(note) = &cmp.truncation_note {
                table.meta("note", note);
            }
            for r in &cmp.records {
                table.push_row(vec![
                    Cell::Int(r.j as i64),
                    Cell::Float(r.s_ppm),
                    Cell::Float(r.s_unsharp),
                    Cell::Float(r.margin_ppm),
                    Cell::Float(r.margin_unsharp),
                    Cell::Str(r.ppm_violates.to_string()),
                    Cell::Str(r.unsharp_violates.to_string()),
                ]);
                println!(
                    "round {}: margin coin = {:.6e}, margin sharpness = {:.6e}",
                    r.j, r.margin_ppm, r.margin_unsharp
                );
            }
            if let Some(note) = &cmp.truncation_note {
                println!("{note}");
            }
            ctx.emit(&table)
        }
        Cmd::Tradeoff { n, k, n_max, k_max } => {
            let n_lo = ctx.u32_of(*n, "n", 3);
            let k_lo = ctx.u32_of(*k, "k", 2);
            let n_hi = ctx.u32_of(*n_max, "n_max", n_lo);
            let k_hi = ctx.u32_of(*k_max, "k_max", k_lo);
            let report = tradeoff_report(n_lo..=n_hi, k_lo..=k_hi)?;
            let mut table = OutputTable::new(vec![
                "n",
                "k",
                "m",
                "j",
                "achievable",
                "s",
                "on_boundary",
            ]);
            ctx.base_meta(&mut table, "tradeoff");
            table.meta("n_range", format!("{n_lo}..={n_hi}"));
            table.meta("k_range", format!("{k_lo}..={k_hi}"));
            for r in &report.rows {
                table.push_row(vec![
                    Cell::Int(r.n as i64),
                    Cell::Int(r.k as i64),
                    Cell::Int(r.m as i64),
                    Cell::Int(r.j as i64),
                    Cell::Str(r.achievable.to_string()),
                    Cell::Float(r.s),
                    Cell::Str(r.on_boundary.to_string()),
                ]);
            }
            let boundary: Vec<String> = report
                .rows
                .iter()
                .filter(|r| r.on_boundary)
                .map(|r| format!("(n={}, k={}, m={}, j={})", r.n, r.k, r.m, r.j))
                .collect();
            println!("boundary cells: {}", boundary.join(" "));
            ctx.emit(&table)
        }
        Cmd::Verify { samples } => {
            let samples = ctx.u32_of(*samples, "samples", 200);
            let report = verify_closed_forms(ctx.seed, samples)?;
            let mut table = OutputTable::new(vec![
                "noise",
                "samples",
                "max_closed_vs_sim",
                "max_sim_vs_joint",
                "pass",
            ]);
            ctx.base_meta(&mut table, "verify");
            table.meta("seed", ctx.seed);
            table.meta("samples", samples);
            table.meta("tol_closed", report.tol_closed);
            table.meta("tol_joint", report.tol_joint);
            for r in &report.rows {
                table.push_row(vec![
                    Cell::Str(r.noise.to_string()),
                    Cell::Int(r.samples as i64),
                    Cell::Float(r.max_closed_vs_sim),
                    Cell::Float(r.max_sim_vs_joint),
                    Cell::Str(r.pass.to_string()),
                ]);
                println!(
                    "{}: closed-vs-sim {:.3e}, sim-vs-joint {:.3e} -> {}",
                    r.noise,
                    r.max_closed_vs_sim,
                    r.max_sim_vs_joint,
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
            ctx.emit(&table)?;
            if !report.passed() {
                return Err(CliError::Runtime("verification failed".into()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
