//! Command-line front end: configuration handling, angular-scan tables,
//! channel/S-matrix inspection and figure reproduction.
//!
//! Tables are plain text, tab-separated, with a single `#`-prefixed
//! metadata line carrying the library version and the full resolved
//! configuration; re-parsing that line reproduces the run.

use crate::amplitude::{SumSpec, DEFAULT_PHI_MIN};
use crate::error::Error;
use crate::params::{
    channel_bounds, derive_params, nu_squared, ChannelKind, OrderNu, PhysicalInputs,
    ScatterParams, WireModel,
};
use crate::smatrix::s_matrix;
use crate::xsection::{angular_scan, AngularScan};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes: 0 success, 2 config error, 3 computation error, 4 I/O error.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Compute(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Compute(e) => write!(f, "computation error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) => CliError::Config(m),
            other => CliError::Compute(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Params,
    Channels,
    Smatrix,
    Scan,
    Figure,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Params => "params",
            Mode::Channels => "channels",
            Mode::Smatrix => "smatrix",
            Mode::Scan => "scan",
            Mode::Figure => "figure",
        }
    }

    pub fn parse(s: &str) -> CliResult<Mode> {
        match s {
            "params" => Ok(Mode::Params),
            "channels" => Ok(Mode::Channels),
            "smatrix" => Ok(Mode::Smatrix),
            "scan" => Ok(Mode::Scan),
            "figure" => Ok(Mode::Figure),
            other => Err(CliError::Config(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Linear,
    Log,
}

/// A fully resolved run configuration (dimensionless parameters only;
/// physical inputs are resolved during building).
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: ScatterParams,
    pub wire: WireModel,
    pub p: f64,
    pub phi_min: f64,
    pub phi_max: f64,
    pub n_points: usize,
    pub grid: GridKind,
    pub tol: f64,
    pub m_max: Option<i64>,
    pub output: Option<PathBuf>,
    pub plot: bool,
    /// Set when the dimensionless parameters were derived from physical
    /// inputs (they are echoed before the table).
    pub derived_from_physical: bool,
}

fn parse_f64(kv: &BTreeMap<String, String>, key: &str) -> CliResult<Option<f64>> {
    match kv.get(key) {
        None => Ok(None),
        Some(s) => s
            .parse::<f64>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("{key}: not a number: '{s}'"))),
    }
}

fn parse_usize(kv: &BTreeMap<String, String>, key: &str) -> CliResult<Option<usize>> {
    match kv.get(key) {
        None => Ok(None),
        Some(s) => s
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("{key}: not a count: '{s}'"))),
    }
}

/// Build a resolved configuration from key=value pairs (file and flags,
/// already merged; flags override the file).
pub fn build_config(mode: Mode, kv: &BTreeMap<String, String>) -> CliResult<RunConfig> {
    let physical_keys = ["alpha", "kappa", "e-surface", "b-field", "m0", "rho0"];
    let has_physical = physical_keys.iter().any(|k| kv.contains_key(*k));

    let (params, derived) = if has_physical {
        if kv.contains_key("beta") || kv.contains_key("gamma") {
            return Err(CliError::Config(
                "give either the physical-input block or beta/gamma, not both".into(),
            ));
        }
        let phys = PhysicalInputs {
            alpha: parse_f64(kv, "alpha")?
                .ok_or_else(|| CliError::Config("physical mode needs alpha".into()))?,
            kappa: parse_f64(kv, "kappa")?,
            e_field_at_surface: parse_f64(kv, "e-surface")?,
            b_field: parse_f64(kv, "b-field")?
                .ok_or_else(|| CliError::Config("physical mode needs b-field".into()))?,
            m0: parse_f64(kv, "m0")?
                .ok_or_else(|| CliError::Config("physical mode needs m0".into()))?,
            rho0: parse_f64(kv, "rho0")?,
        };
        (derive_params(&phys)?, true)
    } else {
        let beta = parse_f64(kv, "beta")?
            .ok_or_else(|| CliError::Config("missing beta (or a physical-input block)".into()))?;
        let gamma = parse_f64(kv, "gamma")?
            .ok_or_else(|| CliError::Config("missing gamma (or a physical-input block)".into()))?;
        let mut p = ScatterParams::new(beta, gamma)?;
        if let Some(eps) = parse_f64(kv, "epsilon")? {
            p.epsilon = eps;
        }
        (p, false)
    };

    let wire = match kv.get("wire").map(String::as_str).unwrap_or("thin-absorbing") {
        "thin-absorbing" => WireModel::ThinAbsorbing,
        "finite-absorbing" => WireModel::FiniteAbsorbing {
            a: parse_f64(kv, "wire-a")?
                .ok_or_else(|| CliError::Config("finite-absorbing wire needs wire-a".into()))?,
        },
        "reflecting" => WireModel::Reflecting {
            a: parse_f64(kv, "wire-a")?
                .ok_or_else(|| CliError::Config("reflecting wire needs wire-a".into()))?,
        },
        other => {
            return Err(CliError::Config(format!(
                "unknown wire '{other}' (thin-absorbing | finite-absorbing | reflecting)"
            )))
        }
    };
    wire.validate()?;

    let p = parse_f64(kv, "p")?.unwrap_or(1.0);
    let phi_min = parse_f64(kv, "phi-min")?.unwrap_or(0.01);
    let phi_max = parse_f64(kv, "phi-max")?.unwrap_or(std::f64::consts::PI);
    let n_points = parse_usize(kv, "n-points")?.unwrap_or(200);
    let grid = match kv.get("grid").map(String::as_str).unwrap_or("linear") {
        "linear" => GridKind::Linear,
        "log" => GridKind::Log,
        other => {
            return Err(CliError::Config(format!(
                "unknown grid '{other}' (linear | log)"
            )))
        }
    };
    let tol = parse_f64(kv, "tol")?.unwrap_or(1e-8);
    let m_max = parse_f64(kv, "m-max")?.map(|v| v as i64);

    if !(p > 0.0) {
        return Err(CliError::Config(format!("p must be > 0, got {p}")));
    }
    if !(tol > 0.0) {
        return Err(CliError::Config(format!("tol must be > 0, got {tol}")));
    }
    if !(phi_min > 0.0 && phi_min < phi_max && phi_max <= std::f64::consts::PI + 1e-12) {
        return Err(CliError::Config(format!(
            "need 0 < phi-min < phi-max <= pi, got [{phi_min}, {phi_max}]"
        )));
    }
    if phi_min < DEFAULT_PHI_MIN {
        return Err(CliError::Config(format!(
            "phi-min below the forward cutoff {DEFAULT_PHI_MIN:e}"
        )));
    }
    if n_points < 2 {
        return Err(CliError::Config(format!(
            "n-points must be at least 2, got {n_points}"
        )));
    }

    Ok(RunConfig {
        mode,
        params,
        wire,
        p,
        phi_min,
        phi_max,
        n_points,
        grid,
        tol,
        m_max,
        output: kv.get("output").map(PathBuf::from),
        plot: kv.get("plot").map(|v| v == "true").unwrap_or(false),
        derived_from_physical: derived,
    })
}

/// Read a key=value config file (one pair per line, `#` comments).
pub fn kv_from_file(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut kv = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected key=value, got '{line}'",
                path.display(),
                lineno + 1
            ))
        })?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(kv)
}

/// The resolved configuration as `key=value` pairs (the metadata echo).
pub fn config_kv(cfg: &RunConfig) -> BTreeMap<String, String> {
    let mut kv = BTreeMap::new();
    kv.insert("beta".into(), format!("{}", cfg.params.beta));
    kv.insert("gamma".into(), format!("{}", cfg.params.gamma));
    kv.insert("epsilon".into(), format!("{}", cfg.params.epsilon));
    match cfg.wire {
        WireModel::ThinAbsorbing => {
            kv.insert("wire".into(), "thin-absorbing".into());
        }
        WireModel::FiniteAbsorbing { a } => {
            kv.insert("wire".into(), "finite-absorbing".into());
            kv.insert("wire-a".into(), format!("{a}"));
        }
        WireModel::Reflecting { a } => {
            kv.insert("wire".into(), "reflecting".into());
            kv.insert("wire-a".into(), format!("{a}"));
        }
    }
    kv.insert("p".into(), format!("{}", cfg.p));
    kv.insert("phi-min".into(), format!("{}", cfg.phi_min));
    kv.insert("phi-max".into(), format!("{}", cfg.phi_max));
    kv.insert("n-points".into(), format!("{}", cfg.n_points));
    kv.insert(
        "grid".into(),
        match cfg.grid {
            GridKind::Linear => "linear".into(),
            GridKind::Log => "log".into(),
        },
    );
    kv.insert("tol".into(), format!("{}", cfg.tol));
    if let Some(m) = cfg.m_max {
        kv.insert("m-max".into(), format!("{m}"));
    }
    kv
}

fn header_line(cfg: &RunConfig) -> String {
    let kv = config_kv(cfg);
    let body: Vec<String> = kv.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(
        "# abwire {VERSION} | mode={} {}",
        cfg.mode.as_str(),
        body.join(" ")
    )
}

/// Re-parse a table's metadata line into the configuration that made it.
pub fn parse_header_config(line: &str) -> CliResult<RunConfig> {
    let rest = line
        .strip_prefix("# abwire ")
        .ok_or_else(|| CliError::Config("not an abwire metadata line".into()))?;
    let (_ver, fields) = rest
        .split_once('|')
        .ok_or_else(|| CliError::Config("malformed metadata line".into()))?;
    let mut kv = BTreeMap::new();
    let mut mode = None;
    for tok in fields.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("malformed field '{tok}'")))?;
        if k == "mode" {
            mode = Some(Mode::parse(v)?);
        } else {
            kv.insert(k.to_string(), v.to_string());
        }
    }
    let mode = mode.ok_or_else(|| CliError::Config("metadata line lacks mode".into()))?;
    build_config(mode, &kv)
}

/// The angle grid of a configuration.
pub fn make_grid(cfg: &RunConfig) -> Vec<f64> {
    let n = cfg.n_points;
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            match cfg.grid {
                GridKind::Linear => cfg.phi_min + (cfg.phi_max - cfg.phi_min) * t,
                GridKind::Log => cfg.phi_min * (cfg.phi_max / cfg.phi_min).powf(t),
            }
        })
        .collect()
}

fn fmt12(v: f64) -> String {
    format!("{v:.11e}")
}

/// Render a scan table: metadata line, the fixed column header, one row
/// per grid point at 12 significant digits.
pub fn render_scan_table(cfg: &RunConfig, scan: &AngularScan) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", header_line(cfg));
    let _ = writeln!(
        out,
        "phi\ty\tre_f\tim_f\tre_f_abmod\tim_f_abmod\tre_f_w\tim_f_w\ttail_bound"
    );
    for r in &scan.rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            fmt12(r.phi),
            fmt12(r.y),
            fmt12(r.f.re),
            fmt12(r.f.im),
            fmt12(r.f_ab_mod.re),
            fmt12(r.f_ab_mod.im),
            fmt12(r.f_w.re),
            fmt12(r.f_w.im),
            fmt12(r.tail_bound),
        );
    }
    out
}

/// Run an angular scan for a configuration and render its table.
pub fn run_scan(cfg: &RunConfig) -> CliResult<(AngularScan, String)> {
    let bounds = channel_bounds(&cfg.params, &cfg.wire)?;
    let spec = SumSpec::new(cfg.tol);
    let grid = make_grid(cfg);
    let scan = angular_scan(&cfg.params, &bounds, &cfg.wire, cfg.p, &grid, &spec)
        .map_err(|e| CliError::from(annotate_scan_error(e)))?;
    let table = render_scan_table(cfg, &scan);
    Ok((scan, table))
}

fn annotate_scan_error(e: Error) -> Error {
    // Angular-scan failures should name the offending angle; the amplitude
    // errors already embed phi, so just pass them through.
    e
}

fn render_params(cfg: &RunConfig) -> String {
    let p = &cfg.params;
    let mut out = String::new();
    let _ = writeln!(out, "{}", header_line(cfg));
    let _ = writeln!(out, "beta\tgamma\tepsilon");
    let _ = writeln!(
        out,
        "{}\t{}\t{}",
        fmt12(p.beta),
        fmt12(p.gamma),
        fmt12(p.epsilon)
    );
    out
}

fn render_channels(cfg: &RunConfig) -> CliResult<String> {
    let bounds = channel_bounds(&cfg.params, &cfg.wire)?;
    let mut out = String::new();
    let _ = writeln!(out, "{}", header_line(cfg));
    let _ = writeln!(
        out,
        "# m_minus={} m_plus={} absorbed_count={}",
        bounds.m_minus, bounds.m_plus, bounds.absorbed_count
    );
    let _ = writeln!(out, "m\tnu_sq\tkind");
    let lo = -(bounds.m_minus.max(0) + 5);
    let hi = bounds.m_plus.max(0) + 5;
    for m in lo..=hi {
        let nu = OrderNu::new(m, &cfg.params);
        let kind = match nu.kind {
            ChannelKind::Elastic => "elastic",
            ChannelKind::Threshold => "threshold",
            ChannelKind::Absorbed => "absorbed",
        };
        let _ = writeln!(out, "{m}\t{}\t{kind}", fmt12(nu_squared(m, &cfg.params)));
    }
    Ok(out)
}

fn render_smatrix(cfg: &RunConfig) -> CliResult<String> {
    let bounds = channel_bounds(&cfg.params, &cfg.wire)?;
    let m_max = cfg.m_max.unwrap_or(bounds.m_plus + 10).max(1);
    let mut out = String::new();
    let _ = writeln!(out, "{}", header_line(cfg));
    let _ = writeln!(out, "m\tre_s\tim_s\tabs_s\tdelta\tkind");
    for m in -m_max..=m_max {
        let e = s_matrix(m, &cfg.params, &cfg.wire)?;
        let kind = match e.channel_kind {
            ChannelKind::Elastic => "elastic",
            ChannelKind::Threshold => "threshold",
            ChannelKind::Absorbed => "absorbed",
        };
        let delta = e
            .delta
            .map(fmt12)
            .unwrap_or_else(|| "undefined".to_string());
        let _ = writeln!(
            out,
            "{m}\t{}\t{}\t{}\t{delta}\t{kind}",
            fmt12(e.s.re),
            fmt12(e.s.im),
            fmt12(e.s.norm()),
        );
    }
    Ok(out)
}

/// Execute a non-figure mode; returns the rendered text (also written to
/// `cfg.output` when set).
pub fn execute(cfg: &RunConfig) -> CliResult<String> {
    let text = match cfg.mode {
        Mode::Params => render_params(cfg),
        Mode::Channels => render_channels(cfg)?,
        Mode::Smatrix => render_smatrix(cfg)?,
        Mode::Scan => {
            let (scan, table) = run_scan(cfg)?;
            if cfg.plot {
                if let Some(out) = &cfg.output {
                    let svg_path = out.with_extension("svg");
                    let pts: Vec<(f64, f64)> =
                        scan.rows.iter().map(|r| (r.phi, r.y)).collect();
                    let svg = render_svg(
                        &[("scan", &pts, 1.6)],
                        &format!(
                            "y = 2*pi*p |f|^2, beta={}, gamma={}",
                            cfg.params.beta, cfg.params.gamma
                        ),
                    );
                    std::fs::write(&svg_path, svg)?;
                }
            }
            table
        }
        Mode::Figure => {
            return Err(CliError::Config(
                "figure mode is driven by figure_command".into(),
            ))
        }
    };
    if let Some(path) = &cfg.output {
        let mut f = std::fs::File::create(path)?;
        f.write_all(text.as_bytes())?;
    }
    Ok(text)
}

// --- Figure reproduction ---------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePanel {
    A,
    B,
}

impl FigurePanel {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "a" | "A" => Ok(FigurePanel::A),
            "b" | "B" => Ok(FigurePanel::B),
            other => Err(CliError::Config(format!(
                "figure panel must be 'a' or 'b', got '{other}'"
            ))),
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            FigurePanel::A => 5.1,
            FigurePanel::B => 50.1,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FigurePanel::A => "a",
            FigurePanel::B => "b",
        }
    }
}

/// Local extrema of a sampled curve (interior strict sign changes of the
/// discrete slope); returns (x, y, is_maximum).
pub fn local_extrema(xs: &[f64], ys: &[f64]) -> Vec<(f64, f64, bool)> {
    let mut out = Vec::new();
    for i in 1..ys.len().saturating_sub(1) {
        let rising_in = ys[i] > ys[i - 1];
        let falling_out = ys[i] > ys[i + 1];
        if rising_in && falling_out {
            out.push((xs[i], ys[i], true));
        } else if !rising_in && !falling_out && ys[i] < ys[i - 1] && ys[i] < ys[i + 1] {
            out.push((xs[i], ys[i], false));
        }
    }
    out
}

/// Derived figure diagnostics written to the sidecar summary.
#[derive(Debug, Clone)]
pub struct FigureSummary {
    pub panel: FigurePanel,
    /// Largest angle below which y(β=1/2) > y(β=0) everywhere on the
    /// auxiliary fine grid (the forward-dominance threshold).
    pub phi_star: f64,
    pub extrema_zero: Vec<(f64, f64, bool)>,
    pub extrema_half: Vec<(f64, f64, bool)>,
    /// Smallest distance between a β=0 maximum and its nearest β=1/2
    /// maximum (the oscillation shift), in radians.
    pub max_position_shift: f64,
    pub grid_spacing: f64,
}

fn figure_config(panel: FigurePanel, beta: f64, tol: f64) -> RunConfig {
    RunConfig {
        mode: Mode::Scan,
        params: ScatterParams::new(beta, panel.gamma()).unwrap(),
        wire: WireModel::ThinAbsorbing,
        p: 1.0,
        phi_min: 0.01,
        phi_max: 1.5,
        n_points: 600,
        grid: GridKind::Linear,
        tol,
        m_max: None,
        output: None,
        plot: false,
        derived_from_physical: false,
    }
}

/// Reproduce one figure panel: two thin-absorbing scans (β = 0 and
/// β = 1/2) at p = 1 on φ ∈ [0.01, 1.5], tables plus a sidecar summary
/// with the derived forward-dominance threshold, and optionally an SVG
/// overlay (thin β = 0, bold β = 1/2).
pub fn figure_command(
    panel: FigurePanel,
    out_dir: &Path,
    plot: bool,
    tol: f64,
) -> CliResult<FigureSummary> {
    std::fs::create_dir_all(out_dir)?;
    let cfg0 = figure_config(panel, 0.0, tol);
    let cfg5 = figure_config(panel, 0.5, tol);
    let (scan0, table0) = run_scan(&cfg0)?;
    let (scan5, table5) = run_scan(&cfg5)?;
    std::fs::write(
        out_dir.join(format!("figure_{}_beta0.tsv", panel.tag())),
        &table0,
    )?;
    std::fs::write(
        out_dir.join(format!("figure_{}_beta0.5.tsv", panel.tag())),
        &table5,
    )?;

    // Forward-dominance threshold on an auxiliary log grid that reaches
    // below the table's first point.
    let spec = SumSpec::new(tol);
    let bounds0 = channel_bounds(&cfg0.params, &cfg0.wire)?;
    let bounds5 = channel_bounds(&cfg5.params, &cfg5.wire)?;
    let n_aux = 240;
    let (lo, hi) = (1e-4f64, 1.5f64);
    let mut phi_star = lo;
    for i in 0..n_aux {
        let phi = lo * (hi / lo).powf(i as f64 / (n_aux - 1) as f64);
        let y0 =
            crate::xsection::scaled_dcs(&cfg0.params, &bounds0, &cfg0.wire, phi, 1.0, &spec)?;
        let y5 =
            crate::xsection::scaled_dcs(&cfg5.params, &bounds5, &cfg5.wire, phi, 1.0, &spec)?;
        if y5 > y0 {
            phi_star = phi;
        } else {
            break;
        }
    }

    let xs: Vec<f64> = scan0.rows.iter().map(|r| r.phi).collect();
    let y0: Vec<f64> = scan0.rows.iter().map(|r| r.y).collect();
    let y5: Vec<f64> = scan5.rows.iter().map(|r| r.y).collect();
    let extrema_zero = local_extrema(&xs, &y0);
    let extrema_half = local_extrema(&xs, &y5);
    let max_position_shift = extrema_zero
        .iter()
        .filter(|e| e.2)
        .map(|&(x0, _, _)| {
            extrema_half
                .iter()
                .filter(|e| e.2)
                .map(|&(x5, _, _)| (x0 - x5).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(f64::INFINITY, f64::min);
    let grid_spacing = xs[1] - xs[0];

    let summary = FigureSummary {
        panel,
        phi_star,
        extrema_zero,
        extrema_half,
        max_position_shift,
        grid_spacing,
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "# abwire {VERSION} | figure {} summary (gamma = {})",
        panel.tag(),
        panel.gamma()
    );
    let _ = writeln!(
        text,
        "phi_star\t{}\t# y(beta=1/2) > y(beta=0) for phi below this",
        fmt12(summary.phi_star)
    );
    let _ = writeln!(text, "grid_spacing\t{}", fmt12(summary.grid_spacing));
    let _ = writeln!(
        text,
        "max_position_shift\t{}",
        fmt12(summary.max_position_shift)
    );
    let _ = writeln!(
        text,
        "extrema_beta0\t{}",
        summary
            .extrema_zero
            .iter()
            .map(|&(x, _, mx)| format!("{}{}", if mx { "max@" } else { "min@" }, fmt12(x)))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(
        text,
        "extrema_beta0.5\t{}",
        summary
            .extrema_half
            .iter()
            .map(|&(x, _, mx)| format!("{}{}", if mx { "max@" } else { "min@" }, fmt12(x)))
            .collect::<Vec<_>>()
            .join(" ")
    );
    std::fs::write(
        out_dir.join(format!("figure_{}_summary.txt", panel.tag())),
        &text,
    )?;

    if plot {
        let pts0: Vec<(f64, f64)> = xs.iter().zip(&y0).map(|(&x, &y)| (x, y)).collect();
        let pts5: Vec<(f64, f64)> = xs.iter().zip(&y5).map(|(&x, &y)| (x, y)).collect();
        let svg = render_svg(
            &[("beta=0", &pts0, 1.0), ("beta=1/2", &pts5, 2.5)],
            &format!(
                "Scaled cross section, totally absorbing wire, gamma = {}",
                panel.gamma()
            ),
        );
        std::fs::write(out_dir.join(format!("figure_{}.svg", panel.tag())), svg)?;
    }

    Ok(summary)
}

// --- Minimal SVG line plots -------------------------------------------------

fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

/// Render overlaid polylines as a standalone SVG. The y-range is clipped
/// at the 99th percentile so the forward peak does not flatten the
/// oscillation structure.
pub fn render_svg(curves: &[(&str, &[(f64, f64)], f64)], title: &str) -> String {
    let (w, h) = (840.0, 560.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 40.0, 50.0);
    let mut all_y: Vec<f64> = curves
        .iter()
        .flat_map(|(_, pts, _)| pts.iter().map(|p| p.1))
        .collect();
    all_y.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let y_max = percentile(&all_y, 0.99).max(1e-12);
    let x_min = curves
        .iter()
        .flat_map(|(_, p, _)| p.first().map(|v| v.0))
        .fold(f64::INFINITY, f64::min);
    let x_max = curves
        .iter()
        .flat_map(|(_, p, _)| p.last().map(|v| v.0))
        .fold(f64::NEG_INFINITY, f64::max);

    let sx = |x: f64| ml + (x - x_min) / (x_max - x_min) * (w - ml - mr);
    let sy = |y: f64| h - mb - (y.min(y_max) / y_max) * (h - mt - mb);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15">{}</text>"#,
        ml, title
    );
    // Axes.
    let _ = writeln!(
        svg,
        r#"<line x1="{ml}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        h - mb,
        w - mr,
        h - mb
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{}" stroke="black"/>"#,
        h - mb
    );
    for i in 0..=5 {
        let x = x_min + (x_max - x_min) * i as f64 / 5.0;
        let px = sx(x);
        let _ = writeln!(
            svg,
            r#"<line x1="{px}" y1="{}" x2="{px}" y2="{}" stroke="black"/>"#,
            h - mb,
            h - mb + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{x:.2}</text>"#,
            h - mb + 18.0
        );
        let y = y_max * i as f64 / 5.0;
        let py = sy(y);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{py}" x2="{ml}" y2="{py}" stroke="black"/>"#,
            ml - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="11">{y:.1}</text>"#,
            ml - 8.0,
            py + 4.0
        );
    }
    for (label, pts, width) in curves {
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="{width}"><title>{label}</title></polyline>"#,
            path.join(" ")
        );
    }
    let _ = writeln!(svg, "</svg>");
    svg
}
