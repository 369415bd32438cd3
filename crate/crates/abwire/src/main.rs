use abwire::cli::{
    build_config, execute, figure_command, kv_from_file, CliResult, FigurePanel, Mode,
};
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

/// Partial-wave scattering of induced electric dipoles on a charged wire
/// in a uniform magnetic field.
#[derive(Parser)]
#[command(name = "abwire", version, about)]
struct CliArgs {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derive and print the dimensionless parameters (beta, gamma, epsilon)
    Params(CommonArgs),
    /// Show the channel spectrum nu^2(m) and the absorbed interval
    Channels(CommonArgs),
    /// Tabulate per-channel phase functions S_m and phase shifts
    Smatrix(CommonArgs),
    /// Angular scan of the scaled differential cross section y = 2*pi*p*|f|^2
    Scan(CommonArgs),
    /// Reproduce a small-angle figure panel (a: gamma=5.1, b: gamma=50.1)
    Figure {
        /// Panel to reproduce: a or b
        which: String,
        /// Directory receiving the two tables, the summary and the plot
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
        /// Also write an SVG overlay (thin: beta=0, bold: beta=1/2)
        #[arg(long)]
        plot: bool,
        /// Truncation tolerance for the correction series
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

/// Flags mirror the run-configuration keys one-to-one (kebab-case).
/// Values given on the command line override the --config file.
#[derive(Args)]
struct CommonArgs {
    /// key=value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Magnetic field parameter (dimensionless)
    #[arg(long)]
    beta: Option<f64>,
    /// Wire parameter (dimensionless, >= 0)
    #[arg(long)]
    gamma: Option<f64>,
    /// Electric polarizability, C m^2/V (physical-input block)
    #[arg(long)]
    alpha: Option<f64>,
    /// Wire voltage parameter kappa, V
    #[arg(long)]
    kappa: Option<f64>,
    /// Field at the wire surface, V/m (needs --rho0; alternative to --kappa)
    #[arg(long = "e-surface")]
    e_surface: Option<f64>,
    /// Magnetic flux density, T
    #[arg(long = "b-field")]
    b_field: Option<f64>,
    /// Atom rest mass, kg
    #[arg(long)]
    m0: Option<f64>,
    /// Wire radius, m
    #[arg(long)]
    rho0: Option<f64>,
    /// Wire model: thin-absorbing | finite-absorbing | reflecting
    #[arg(long)]
    wire: Option<String>,
    /// Dimensionless wire radius a = p*rho0 (finite-absorbing/reflecting)
    #[arg(long = "wire-a")]
    wire_a: Option<f64>,
    /// Wavenumber p (default 1)
    #[arg(long)]
    p: Option<f64>,
    #[arg(long = "phi-min")]
    phi_min: Option<f64>,
    #[arg(long = "phi-max")]
    phi_max: Option<f64>,
    #[arg(long = "n-points")]
    n_points: Option<usize>,
    /// Grid spacing: linear | log
    #[arg(long)]
    grid: Option<String>,
    /// Truncation tolerance for the correction series (default 1e-8)
    #[arg(long)]
    tol: Option<f64>,
    /// Channel range for the smatrix table (default m_plus + 10)
    #[arg(long = "m-max")]
    m_max: Option<i64>,
    /// Output file (stdout when absent)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write an SVG plot next to the output table
    #[arg(long)]
    plot: bool,
}

impl CommonArgs {
    fn into_kv(self) -> CliResult<BTreeMap<String, String>> {
        let mut kv = match &self.config {
            Some(path) => kv_from_file(path)?,
            None => BTreeMap::new(),
        };
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                kv.insert(k.to_string(), v);
            }
        };
        put("beta", self.beta.map(|v| v.to_string()));
        put("gamma", self.gamma.map(|v| v.to_string()));
        put("alpha", self.alpha.map(|v| v.to_string()));
        put("kappa", self.kappa.map(|v| v.to_string()));
        put("e-surface", self.e_surface.map(|v| v.to_string()));
        put("b-field", self.b_field.map(|v| v.to_string()));
        put("m0", self.m0.map(|v| v.to_string()));
        put("rho0", self.rho0.map(|v| v.to_string()));
        put("wire", self.wire);
        put("wire-a", self.wire_a.map(|v| v.to_string()));
        put("p", self.p.map(|v| v.to_string()));
        put("phi-min", self.phi_min.map(|v| v.to_string()));
        put("phi-max", self.phi_max.map(|v| v.to_string()));
        put("n-points", self.n_points.map(|v| v.to_string()));
        put("grid", self.grid);
        put("tol", self.tol.map(|v| v.to_string()));
        put("m-max", self.m_max.map(|v| v.to_string()));
        put("output", self.output.map(|p| p.display().to_string()));
        if self.plot {
            kv.insert("plot".into(), "true".into());
        }
        Ok(kv)
    }
}

fn run() -> CliResult<()> {
    let args = CliArgs::parse();
    let (mode, common) = match args.cmd {
        Cmd::Params(c) => (Mode::Params, c),
        Cmd::Channels(c) => (Mode::Channels, c),
        Cmd::Smatrix(c) => (Mode::Smatrix, c),
        Cmd::Scan(c) => (Mode::Scan, c),
        Cmd::Figure {
            which,
            output_dir,
            plot,
            tol,
        } => {
            let panel = FigurePanel::parse(&which)?;
            let summary = figure_command(panel, &output_dir, plot, tol)?;
            println!(
                "figure {} written to {}; phi_star = {:.6}",
                panel.tag(),
                output_dir.display(),
                summary.phi_star
            );
            return Ok(());
        }
    };
    let kv = common.into_kv()?;
    let cfg = build_config(mode, &kv)?;
    if cfg.derived_from_physical {
        println!(
            "# derived beta={} gamma={} epsilon={}",
            cfg.params.beta, cfg.params.gamma, cfg.params.epsilon
        );
    }
    let text = execute(&cfg)?;
    if cfg.output.is_none() {
        print!("{text}");
    } else if cfg.mode != Mode::Params {
        eprintln!("wrote {}", cfg.output.as_ref().unwrap().display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("abwire: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
