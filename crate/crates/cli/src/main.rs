mod csv;
mod grid;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use vibresp::config::Config;
use vibresp::dsl::{parse_pathway, Resolver};
use vibresp::evaluate::{Evaluator, ResponseOptions, Selection};
use vibresp::exponent::build_exponent;
use vibresp::fock::{brute_force_response, FockOptions, Initial};
use vibresp::model::{Manifold, VibronicModel};
use vibresp::pathway::{Contribution, Kind, Pathway};
use vibresp::spectral::{peak_trace, spectrum_2d, Axis, DEFAULT_P_MAX, DEFAULT_Q_MAX};
use vibresp::third_order::multimode_r_v3;
use vibresp::Complex64;

use crate::csv::{sha256_hex, Table};
use crate::grid::{GridAxis, TimeGrid};

#[derive(Parser)]
#[command(
    name = "vibresp",
    version,
    about = "Vibrational response functions of displaced oscillators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a response on a grid of waiting times.
    Response(ResponseArgs),
    /// Peak amplitudes A_{p1,p3}(t2) of third-order kinds.
    Peaks(PeaksArgs),
    /// Broadened 2D spectrum over (t1, t3) at fixed t2.
    Spectrum(SpectrumArgs),
    /// Compare closed forms with the number-basis propagator.
    Verify(VerifyArgs),
    /// Print the pathway and its exponent term table.
    Explain(ExplainArgs),
}

#[derive(Args)]
struct Select {
    /// Third-order preset: se-r, gsb-r, esa-r, se-nr, gsb-nr, esa-nr, dqc-1, dqc-2.
    #[arg(long, conflicts_with = "pathway")]
    kind: Option<String>,
    /// Pathway script file.
    #[arg(long)]
    pathway: Option<PathBuf>,
    /// Level assignment `j,k[,l]` by name or index; restricts a kind to one
    /// contribution and binds the symbols of a script.
    #[arg(long)]
    levels: Option<String>,
}

#[derive(Args)]
struct Physics {
    #[arg(long, default_value_t = 0.0)]
    temperature: f64,
    /// Overrides the relaxation rate of the config.
    #[arg(long)]
    kappa: Option<f64>,
    /// Coherent initial amplitude `re,im` of every mode.
    #[arg(long, allow_hyphen_values = true)]
    alpha0: Option<String>,
}

#[derive(Args)]
struct ResponseArgs {
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    select: Select,
    /// Axes `start:step:count` or fixed values, comma separated, one per
    /// interaction.
    #[arg(long)]
    grid: String,
    #[command(flatten)]
    physics: Physics,
    /// Vibrational factor only, without dipole constants and electronic phases.
    #[arg(long)]
    vibrational: bool,
    /// Also write the 2D spectrum of a third-order grid with ranges on t1 and t3.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PeaksArgs {
    #[arg(long)]
    config: PathBuf,
    /// Comma-separated presets; one pair of columns each.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    levels: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p1: i32,
    #[arg(long, allow_hyphen_values = true)]
    p3: i32,
    /// `start:step:count`.
    #[arg(long)]
    t2: String,
    #[arg(long, default_value_t = DEFAULT_Q_MAX)]
    q_max: usize,
    #[arg(long, default_value_t = DEFAULT_P_MAX)]
    p2_max: i32,
    #[arg(long, default_value_t = 0)]
    mode: usize,
    /// Repeat with doubled q_max and report the largest change.
    #[arg(long)]
    convergence: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    select: Select,
    /// `start:step:count`.
    #[arg(long)]
    t1: String,
    #[arg(long, default_value_t = 0.0)]
    t2: f64,
    #[arg(long)]
    t3: String,
    /// Overrides the dephasing rate of the config.
    #[arg(long)]
    gamma: Option<f64>,
    #[command(flatten)]
    physics: Physics,
    #[arg(long)]
    vibrational: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Model to check; built-in V and ladder schemes otherwise.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    n_max: usize,
    #[arg(long, default_value_t = 5)]
    draws: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct ExplainArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    select: Select,
}

enum Failure {
    Input(String),
    Io(String),
    Verify,
}

impl From<vibresp::Error> for Failure {
    fn from(e: vibresp::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run<T> = Result<T, Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_config(path: &Path) -> Run<(Config, String)> {
    let text = read(path)?;
    let cfg = Config::parse_with_base(&text, path.parent())
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((cfg, sha256_hex(text.as_bytes())))
}

fn parse_kind(name: &str) -> Run<Kind> {
    let name = name.trim();
    Kind::from_preset(name)
        .or_else(|| {
            name.parse::<u8>()
                .ok()
                .and_then(|n| Kind::from_number(n).ok())
        })
        .ok_or_else(|| Failure::Input(format!("unknown kind '{name}'")))
}

fn parse_levels(s: &str, model: Option<&VibronicModel>) -> Run<Vec<usize>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            model
                .and_then(|m| m.level_index(tok))
                .or_else(|| tok.parse().ok())
                .ok_or_else(|| Failure::Input(format!("unknown level '{tok}'")))
        })
        .collect()
}

fn contribution(kind: Kind, levels: &[usize]) -> Run<Contribution> {
    let need = if kind.needs_double() { 3 } else { 2 };
    if levels.len() != need {
        return Err(Failure::Input(format!(
            "kind {kind} takes {need} levels, got {}",
            levels.len()
        )));
    }
    Ok(Contribution::new(
        kind,
        levels[0],
        levels[1],
        levels.get(2).copied().unwrap_or(0),
    ))
}

/// Resolved selection and a description for the metadata.
fn selection(sel: &Select, model: Option<&VibronicModel>) -> Run<(Selection, String)> {
    let levels = sel
        .levels
        .as_deref()
        .map(|s| parse_levels(s, model))
        .transpose()?;
    match (&sel.kind, &sel.pathway) {
        (Some(k), None) => {
            let kind = parse_kind(k)?;
            match levels {
                None => Ok((
                    Selection::Kind(kind),
                    format!("kind {kind}, all level assignments"),
                )),
                Some(l) => {
                    let c = contribution(kind, &l)?;
                    Ok((
                        Selection::Contributions(vec![c]),
                        format!("kind {kind}, j={} k={} l={}", c.j, c.k, c.l),
                    ))
                }
            }
        }
        (None, Some(path)) => {
            let text = read(path)?;
            let mut r = Resolver::new(model);
            if let Some(l) = &levels {
                for (sym, &i) in ["j", "k", "l"].iter().zip(l) {
                    r = r.bind(sym, i);
                }
            }
            let p = parse_pathway(&text, &r)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok((
                Selection::Pathways(vec![p]),
                format!("script sha256 {}", sha256_hex(text.as_bytes())),
            ))
        }
        _ => Err(Failure::Input(
            "give exactly one of --kind or --pathway".into(),
        )),
    }
}

fn physics(p: &Physics, vibrational_only: bool) -> Run<ResponseOptions> {
    let alpha0 = match &p.alpha0 {
        None => None,
        Some(s) => {
            let v: Vec<f64> = s
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Input(format!("--alpha0 '{s}' is not re,im")))?;
            match v.as_slice() {
                [re] => Some(Complex64::new(*re, 0.0)),
                [re, im] => Some(Complex64::new(*re, *im)),
                _ => return Err(Failure::Input(format!("--alpha0 '{s}' is not re,im"))),
            }
        }
    };
    Ok(ResponseOptions {
        temperature: p.temperature,
        kappa: p.kappa,
        alpha0,
        vibrational_only,
    })
}

fn describe_options(o: &ResponseOptions, model: &VibronicModel) -> String {
    let a0 = o
        .alpha0
        .map_or("none".to_string(), |a| format!("{},{}", a.re, a.im));
    format!(
        "temperature={} kappa={} alpha0={} vibrational_only={}",
        o.temperature,
        o.kappa.unwrap_or(model.kappa),
        a0,
        o.vibrational_only
    )
}

fn truncation_note(cfg: &Config) -> String {
    match &cfg.bath {
        Some(_) => format!(
            "closed form; bath quadrature tol {:e}",
            vibresp::bath::DEFAULT_TOL
        ),
        None => "closed form, no truncation".to_string(),
    }
}

fn evaluate_grid(ev: &Evaluator, grid: &TimeGrid) -> Run<Vec<Complex64>> {
    (0..grid.len())
        .into_par_iter()
        .map(|i| ev.evaluate(&grid.point(i)).map_err(Failure::from))
        .collect()
}

fn spectrum_table(
    ev: &Evaluator,
    t1: Axis,
    t2: f64,
    t3: Axis,
    gamma: f64,
    meta: &[(String, String)],
) -> Run<Table> {
    if ev.order() != 3 {
        return Err(Failure::Input(
            "a 2D spectrum needs third-order pathways".into(),
        ));
    }
    let failed = std::sync::Mutex::new(None);
    let s = spectrum_2d(
        |a, b| {
            ev.evaluate(&[a, t2, b]).unwrap_or_else(|e| {
                failed.lock().unwrap().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            })
        },
        t1,
        t3,
        gamma,
    )?;
    if let Some(e) = failed.into_inner().unwrap() {
        return Err(e.into());
    }
    let mut t = Table::new(&["omega1", "omega3", "re", "im"]);
    for (k, v) in meta {
        t.meta(k, v);
    }
    t.meta("t1", &format!("{}:{}:{}", t1.start, t1.step, t1.count));
    t.meta("t2", &format!("{t2}"));
    t.meta("t3", &format!("{}:{}:{}", t3.start, t3.step, t3.count));
    t.meta("gamma", &format!("{gamma}"));
    t.meta("padding", &format!("{}", vibresp::spectral::PADDING));
    for i in 0..s.omega1.len() {
        for j in 0..s.omega3.len() {
            let v = s.at(i, j);
            t.push(vec![s.omega1[i], s.omega3[j], v.re, v.im]);
        }
    }
    Ok(t)
}

fn common_meta(
    command: &str,
    hash: &str,
    what: &str,
    opts: &str,
    trunc: &str,
) -> Vec<(String, String)> {
    vec![
        ("command".into(), command.into()),
        ("config-sha256".into(), hash.into()),
        ("selection".into(), what.into()),
        ("options".into(), opts.into()),
        ("truncation".into(), trunc.into()),
    ]
}

fn response(a: ResponseArgs) -> Run<()> {
    let (cfg, hash) = load_config(&a.config)?;
    let (sel, what) = selection(&a.select, Some(&cfg.model))?;
    let opts = physics(&a.physics, a.vibrational)?;
    let ev = Evaluator::new(&cfg.model, cfg.bath.as_ref(), &sel, opts)?;
    let grid = TimeGrid::parse(&a.grid).map_err(|e| Failure::Input(format!("--grid: {e}")))?;
    if grid.axes.len() != ev.order() {
        return Err(Failure::Input(format!(
            "--grid has {} axes for order {}",
            grid.axes.len(),
            ev.order()
        )));
    }
    let meta = common_meta(
        "response",
        &hash,
        &what,
        &describe_options(&opts, &cfg.model),
        &truncation_note(&cfg),
    );
    let values = evaluate_grid(&ev, &grid)?;
    let names: Vec<String> = (1..=grid.axes.len())
        .map(|i| format!("t{i}"))
        .chain(["re".into(), "im".into()])
        .collect();
    let mut t = Table::with_header(names);
    for (k, v) in &meta {
        t.meta(k, v);
    }
    t.meta("grid", &grid.describe());
    for (i, v) in values.iter().enumerate() {
        let mut row = grid.point(i);
        row.extend([v.re, v.im]);
        t.push(row);
    }
    t.write_to(a.output.as_deref())
        .map_err(|e| io_err(a.output.as_deref().unwrap_or(Path::new("-")), e))?;

    if let Some(path) = a.spectrum {
        let (t1, t2, t3) = match grid.axes.as_slice() {
            [GridAxis::Range(t1), GridAxis::Fixed(t2), GridAxis::Range(t3)] => (*t1, *t2, *t3),
            _ => {
                return Err(Failure::Input(
                    "--spectrum needs ranges on t1 and t3 and a fixed t2".into(),
                ))
            }
        };
        let s = spectrum_table(&ev, t1, t2, t3, cfg.model.gamma, &meta)?;
        s.write_to(Some(&path)).map_err(|e| io_err(&path, e))?;
    }
    Ok(())
}

fn spectrum(a: SpectrumArgs) -> Run<()> {
    let (cfg, hash) = load_config(&a.config)?;
    let (sel, what) = selection(&a.select, Some(&cfg.model))?;
    let opts = physics(&a.physics, a.vibrational)?;
    let ev = Evaluator::new(&cfg.model, cfg.bath.as_ref(), &sel, opts)?;
    let axis = |s: &str, name: &str| -> Run<Axis> {
        match GridAxis::parse(s).map_err(|e| Failure::Input(format!("--{name}: {e}")))? {
            GridAxis::Range(a) => Ok(a),
            GridAxis::Fixed(_) => Err(Failure::Input(format!("--{name} must be start:step:count"))),
        }
    };
    let (t1, t3) = (axis(&a.t1, "t1")?, axis(&a.t3, "t3")?);
    let gamma = a.gamma.unwrap_or(cfg.model.gamma);
    let meta = common_meta(
        "spectrum",
        &hash,
        &what,
        &describe_options(&opts, &cfg.model),
        &truncation_note(&cfg),
    );
    let t = spectrum_table(&ev, t1, a.t2, t3, gamma, &meta)?;
    t.write_to(a.output.as_deref())
        .map_err(|e| io_err(a.output.as_deref().unwrap_or(Path::new("-")), e))
}

fn peaks(a: PeaksArgs) -> Run<()> {
    let (cfg, hash) = load_config(&a.config)?;
    let m = &cfg.model;
    if a.mode >= m.modes.len() {
        return Err(Failure::Input(format!(
            "--mode {} but the config has {} modes",
            a.mode,
            m.modes.len()
        )));
    }
    let t2 = match GridAxis::parse(&a.t2).map_err(|e| Failure::Input(format!("--t2: {e}")))? {
        GridAxis::Range(ax) => ax.values(),
        GridAxis::Fixed(v) => vec![v],
    };
    let kinds = a.kind.split(',').map(parse_kind).collect::<Run<Vec<_>>>()?;
    let given = a
        .levels
        .as_deref()
        .map(|s| parse_levels(s, Some(m)))
        .transpose()?;
    let (z, omega) = (m.z(a.mode), m.omega(a.mode));
    let mut header = vec!["t2".to_string()];
    let mut columns = Vec::new();
    let mut worst = 0.0f64;
    let mut used = Vec::new();
    for kind in kinds {
        let levels = match &given {
            Some(l) => l.clone(),
            None => {
                let s = m.singles();
                let d = m.manifold(Manifold::Double);
                let first = *s.first().ok_or_else(|| {
                    Failure::Input("the model has no singly excited level".into())
                })?;
                let mut l = vec![first, first];
                if kind.needs_double() {
                    l.push(
                        *d.first()
                            .ok_or(vibresp::Error::ManifoldRequired(kind.number()))?,
                    );
                }
                l
            }
        };
        let c = contribution(kind, &levels)?;
        c.check_against(m)?;
        used.push(if kind.needs_double() {
            format!("{kind}(j={} k={} l={})", c.j, c.k, c.l)
        } else {
            format!("{kind}(j={} k={})", c.j, c.k)
        });
        let trace = peak_trace(&c, z, a.p1, a.p3, &t2, omega, a.q_max, a.p2_max);
        if a.convergence {
            let fine = peak_trace(&c, z, a.p1, a.p3, &t2, omega, 2 * a.q_max, a.p2_max);
            worst = trace
                .iter()
                .zip(&fine)
                .map(|(x, y)| (x - y).norm())
                .fold(worst, f64::max);
        }
        header.push(format!("re_{kind}"));
        header.push(format!("im_{kind}"));
        columns.push(trace);
    }
    let mut t = Table::with_header(header);
    t.meta("command", "peaks");
    t.meta("config-sha256", &hash);
    t.meta(
        "selection",
        &format!("{} p1={} p3={} mode={}", used.join(" "), a.p1, a.p3, a.mode),
    );
    t.meta(
        "truncation",
        &format!("q_max={} p2_max={}", a.q_max, a.p2_max),
    );
    if a.convergence {
        t.meta(
            "convergence",
            &format!("max |delta| with q_max={} is {worst:e}", 2 * a.q_max),
        );
        eprintln!("max change with doubled q_max: {worst:e}");
    }
    for (i, &x) in t2.iter().enumerate() {
        let mut row = vec![x];
        for c in &columns {
            row.extend([c[i].re, c[i].im]);
        }
        t.push(row);
    }
    t.write_to(a.output.as_deref())
        .map_err(|e| io_err(a.output.as_deref().unwrap_or(Path::new("-")), e))
}

fn verify(a: VerifyArgs) -> Run<()> {
    let models: Vec<(String, VibronicModel)> = match &a.config {
        Some(p) => vec![(p.display().to_string(), load_config(p)?.0.model)],
        None => vec![
            (
                "built-in V scheme".into(),
                VibronicModel::v_scheme([1.0, 1.3], [0.4, -0.7]),
            ),
            (
                "built-in ladder".into(),
                VibronicModel::xi_scheme([1.0, 2.1], [0.4, 0.9]),
            ),
        ],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut out = io::stdout().lock();
    let mut ok = true;
    writeln!(
        out,
        "{:<20} {:<8} {:>6} {:>12} {:>10}  result",
        "model", "kind", "draws", "max|delta|", "tol"
    )
    .map_err(stdout_err)?;
    for (name, m) in &models {
        for kind in Kind::ALL {
            let Ok(cs) = vibresp::pathway::enumerate_third_order(m, kind) else {
                continue;
            };
            if cs.is_empty() {
                continue;
            }
            let mut worst = 0.0f64;
            for _ in 0..a.draws {
                let c = cs[rng.gen_range(0..cs.len())];
                let t: [f64; 3] =
                    std::array::from_fn(|_| rng.gen_range(0.0..4.0 * std::f64::consts::PI));
                let closed = if m.kappa > 0.0 {
                    vibresp::relaxation::relaxed_multimode(m, &c.pathway(), &t)?
                } else {
                    multimode_r_v3(m, &c, t)
                };
                let oracle = brute_force_response(
                    m,
                    &c.pathway(),
                    &t,
                    Initial::Vacuum,
                    m.kappa,
                    FockOptions::new(a.n_max),
                )?;
                worst = worst.max((closed - oracle.value).norm());
            }
            let pass = worst < a.tol;
            ok &= pass;
            writeln!(
                out,
                "{:<20} {:<8} {:>6} {:>12.3e} {:>10.1e}  {}",
                name,
                kind.preset(),
                a.draws,
                worst,
                a.tol,
                if pass { "PASS" } else { "FAIL" }
            )
            .map_err(stdout_err)?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn explain(a: ExplainArgs) -> Run<()> {
    let cfg = a.config.as_deref().map(load_config).transpose()?;
    let model = cfg.as_ref().map(|c| &c.0.model);
    let pathways: Vec<Pathway> = match selection(&a.select, model)?.0 {
        Selection::Kind(kind) => match model {
            Some(m) => vibresp::pathway::enumerate_third_order(m, kind)?
                .iter()
                .map(Contribution::pathway)
                .collect(),
            None => vec![Contribution::new(kind, 1, 2, 3).pathway()],
        },
        Selection::Contributions(cs) => cs.iter().map(Contribution::pathway).collect(),
        Selection::Pathways(ps) => ps,
    };
    let symbolic = model.is_none() && a.select.kind.is_some() && a.select.levels.is_none();
    let name = |i: usize| -> String {
        if symbolic {
            ["0", "j", "k", "l"]
                .get(i)
                .map_or(i.to_string(), |s| s.to_string())
        } else {
            model.map_or(i.to_string(), |m| {
                m.levels.get(i).map_or(i.to_string(), |l| l.name.clone())
            })
        }
    };
    let mut out = io::stdout().lock();
    for p in &pathways {
        for it in p.interactions() {
            writeln!(out, "{} {} -> {}", it.side, name(it.from), name(it.to))
                .map_err(stdout_err)?;
        }
        let (b, k) = p.detection();
        writeln!(out, "emit {} -> {}", name(k), name(b)).map_err(stdout_err)?;
        writeln!(
            out,
            "window,function,prefactor{}",
            if model.is_some() {
                ",mode,coefficient"
            } else {
                ""
            }
        )
        .map_err(stdout_err)?;
        let form = match model {
            Some(m) => build_exponent(m, p),
            None => vibresp::exponent::single_mode(p, &vec![0.0; p.max_level() + 1], 1.0),
        };
        for t in &form.terms {
            let win = if t.window.0 == t.window.1 {
                format!("t{}", t.window.0)
            } else {
                format!("t{}..t{}", t.window.0, t.window.1)
            };
            let f = if t.conj { "chi*" } else { "chi" };
            let label = t.label(&name);
            if model.is_some() {
                writeln!(out, "{win},{f},{label},{},{:e}", t.mode, t.coeff).map_err(stdout_err)?;
            } else {
                writeln!(out, "{win},{f},{label}").map_err(stdout_err)?;
            }
        }
        writeln!(out).map_err(stdout_err)?;
    }
    Ok(())
}

fn stdout_err(e: io::Error) -> Failure {
    Failure::Io(format!("stdout: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Response(a) => response(a),
        Command::Peaks(a) => peaks(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Verify(a) => verify(a),
        Command::Explain(a) => explain(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verify) => {
            eprintln!("verification failed");
            ExitCode::from(3)
        }
    }
}
