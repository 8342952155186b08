//! Batch front-end for the `vortexw` library.
//!
//! Exit codes: 0 on success, 1 when a computation fails, 2 on bad input.
//! Failures print `{"error": <name>, "message": <text>}`.

mod input;

use clap::{Args, Parser, Subcommand};
use input::{FileConfig, PsiSpec, VortexSpec};
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::PathBuf;
use vortexw::critpoint::{find_critical_hat_w, find_critical_w, find_max_hat_w, CriticalPointReport, DEFAULT_MULTISTART};
use vortexw::expansion::expansion_report;
use vortexw::fourier::DEFAULT_TRUNC;
use vortexw::ndcheck::{check_nd1, check_nd2_at};
use vortexw::transport::{transport_hat_w, transport_hat_w_grad, transport_w, transport_w_grad};
use vortexw::{
    validate_map, AnnulusQuadrature, ConformalPolyMap, DiscEnergyContext, Error, FourierSeries, VortexConfiguration,
};

const MAP_GRID_DENSITY: usize = 64;
const ND_DEFAULT_TRUNC: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "vortexw", version, about = "Renormalized energies of vortex configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ŵ and W with their gradients at the given vortices.
    Energy(Common),
    /// Newton search for a critical point starting from the given vortices.
    Crit {
        #[command(flatten)]
        common: Common,
        /// Energy to search: `hat-w` or `w`.
        #[arg(long, default_value = "hat-w")]
        target: String,
        /// Multistart search for the maximum of Ŵ with one vortex instead.
        #[arg(long)]
        max: bool,
        #[arg(long, default_value_t = DEFAULT_MULTISTART)]
        starts: usize,
    },
    /// Nondegeneracy certification (ND1 and ND2) for the domain.
    Nd(Common),
    /// Fit of the punctured Dirichlet energy against log(1/ρ) on the disc.
    Expand {
        #[command(flatten)]
        common: Common,
        /// Decreasing radii, comma separated.
        #[arg(long, default_value = "0.02,0.01,0.005")]
        rho: String,
    },
    /// Grid of one-vortex Ŵ values in disc coordinates.
    Landscape {
        #[command(flatten)]
        common: Common,
        /// Points per side.
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Half-width of the square grid.
        #[arg(long, default_value_t = 1.0)]
        extent: f64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        degree: i32,
    },
    /// Runs the closed-form fixtures.
    Selfcheck(Common),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `identity`, `scale:R` or `coeffs:re,im;re,im;...`.
    #[arg(long)]
    map: Option<String>,
    /// `re,im,degree`; repeat for several vortices.
    #[arg(long, allow_hyphen_values = true)]
    vortex: Vec<String>,
    /// Base configuration of the boundary datum, same syntax as `--vortex`.
    #[arg(long, allow_hyphen_values = true)]
    base: Vec<String>,
    /// `zero` or terms like `c0=0.1,c1=0.2,s3=-0.05`.
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<String>,
    #[arg(long)]
    trunc: Option<usize>,
    /// Radial quadrature nodes.
    #[arg(long)]
    radial: Option<usize>,
    /// Angular quadrature nodes.
    #[arg(long)]
    angular: Option<usize>,
    /// CSV instead of JSON.
    #[arg(long)]
    csv: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Compute(e)
        }
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Input(s)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Inputs after merging the config file and the flags.
struct Resolved {
    map: ConformalPolyMap,
    vortices: Option<Vec<VortexSpec>>,
    base: Option<Vec<VortexSpec>>,
    psi: PsiSpec,
    trunc: Option<usize>,
    radial: Option<usize>,
    angular: Option<usize>,
}

impl Resolved {
    fn from(common: &Common) -> Outcome<Self> {
        let file = match &common.config {
            Some(p) => input::read_config(p)?,
            None => FileConfig::default(),
        };
        let map = match (&common.map, &file.map) {
            (Some(s), _) => input::parse_map(s)?,
            (None, Some(spec)) => input::map_from_file(spec)?,
            (None, None) => ConformalPolyMap::identity(),
        };
        validate_map(&map, MAP_GRID_DENSITY)?;
        let flags = |list: &[String]| -> Outcome<Option<Vec<VortexSpec>>> {
            if list.is_empty() {
                return Ok(None);
            }
            Ok(Some(list.iter().map(|s| input::parse_vortex(s)).collect::<Result<_, _>>()?))
        };
        let psi = match &common.psi {
            Some(s) => input::parse_psi(s)?,
            None => file.psi.unwrap_or_default(),
        };
        let quad = file.quad.unwrap_or_default();
        Ok(Self {
            map,
            vortices: flags(&common.vortex)?.or(file.vortices),
            base: flags(&common.base)?.or(file.base),
            psi,
            trunc: common.trunc.or(file.trunc),
            radial: common.radial.or(quad.radial),
            angular: common.angular.or(quad.angular),
        })
    }

    fn configuration(&self) -> Outcome<VortexConfiguration> {
        match &self.vortices {
            Some(v) => Ok(input::configuration(v)?),
            None => Err(Failure::Input("no vortices given; use --vortex re,im,degree".into())),
        }
    }

    fn trunc(&self, default: usize) -> Outcome<usize> {
        match self.trunc.unwrap_or(default) {
            0 => Err(Failure::Input("--trunc must be positive".into())),
            n => Ok(n),
        }
    }

    /// Boundary-datum context; without an explicit base, one vortex of the
    /// total degree at the origin.
    fn context(&self, cfg: &VortexConfiguration) -> Outcome<DiscEnergyContext> {
        let base = match &self.base {
            Some(b) => input::configuration(b)?,
            None if cfg.total_degree() != 0 => {
                VortexConfiguration::single(Complex64::new(0.0, 0.0), cfg.total_degree())?
            }
            None => return Err(Failure::Input("total degree 0 needs an explicit --base".into())),
        };
        Ok(DiscEnergyContext::new(base, self.trunc(DEFAULT_TRUNC)?)?)
    }

    fn psi(&self) -> Outcome<FourierSeries> {
        Ok(input::series(&self.psi, self.trunc(DEFAULT_TRUNC)?))
    }

    fn quadrature(&self) -> AnnulusQuadrature {
        let d = AnnulusQuadrature::default();
        match (self.radial, self.angular) {
            (None, None) => d,
            (r, a) => AnnulusQuadrature::new(r.unwrap_or(d.radial_nodes()), a.unwrap_or(d.angular_nodes())),
        }
    }
}

fn points_json(cfg: &VortexConfiguration) -> Value {
    cfg.points()
        .iter()
        .zip(cfg.degrees())
        .map(|(p, d)| json!({"re": p.re, "im": p.im, "degree": d}))
        .collect()
}

fn critical_json(r: &CriticalPointReport) -> Value {
    json!({
        "vortices": points_json(&r.location),
        "value": r.value,
        "residual_norm": r.residual_norm,
        "iterations": r.iterations,
        "converged": r.converged,
        "nondegenerate": r.nondegenerate,
        "sigma_min": r.smallest_singular_value,
    })
}

fn energy(common: &Common) -> Outcome<Value> {
    let r = Resolved::from(common)?;
    let cfg = r.configuration()?;
    let ctx = r.context(&cfg)?;
    let psi = r.psi()?;
    Ok(json!({
        "hat_w": transport_hat_w(&r.map, &cfg)?,
        "hat_w_grad": transport_hat_w_grad(&r.map, &cfg)?.as_slice(),
        "w": transport_w(&r.map, &ctx, &cfg, &psi)?,
        "w_grad": transport_w_grad(&r.map, &ctx, &cfg, &psi)?.as_slice(),
    }))
}

fn crit(common: &Common, target: &str, max: bool, starts: usize) -> Outcome<Value> {
    let r = Resolved::from(common)?;
    if max {
        let m = find_max_hat_w(&r.map, starts)?;
        let mut v = critical_json(&m.best);
        v["global_candidate"] = json!(m.global_candidate);
        v["starts"] = json!(m.starts);
        v["converged_starts"] = json!(m.converged_starts);
        return Ok(v);
    }
    let cfg = r.configuration()?;
    let report = match target {
        "hat-w" => find_critical_hat_w(&r.map, &cfg)?,
        "w" => find_critical_w(&r.map, &r.context(&cfg)?, &r.psi()?, &cfg)?,
        other => return Err(Failure::Input(format!("unknown target {other:?}; expected hat-w or w"))),
    };
    Ok(critical_json(&report))
}

fn nd(common: &Common) -> Outcome<Value> {
    let r = Resolved::from(common)?;
    let nd1 = check_nd1(&r.map)?;
    let mut v = json!({
        "nd1": nd1.pass,
        "a0": [nd1.a0.re, nd1.a0.im],
        "hat_w_max": nd1.value,
        "global_candidate": nd1.global_candidate,
    });
    if nd1.pass {
        let nd2 = check_nd2_at(&r.map, nd1.a0, r.trunc(ND_DEFAULT_TRUNC)?)?;
        v["nd2"] = json!(nd2.pass);
        v["sigma_min"] = json!(nd2.smallest_singular_value);
        v["sigma_min_fine"] = json!(nd2.smallest_singular_value_fine);
        v["relative_change"] = json!(nd2.relative_change);
    } else {
        v["nd2"] = Value::Null;
    }
    Ok(v)
}

fn expand(common: &Common, rho: &str) -> Outcome<Value> {
    let r = Resolved::from(common)?;
    if r.map != ConformalPolyMap::identity() {
        return Err(Failure::Input("expand is only available on the unit disc (--map identity)".into()));
    }
    let cfg = r.configuration()?;
    let ctx = r.context(&cfg)?;
    let rhos = input::parse_list(rho)?;
    let rep = expansion_report(&ctx, &cfg, &r.psi()?, &rhos, &r.quadrature())?;
    Ok(json!({
        "rho": rep.rhos,
        "energies": rep.energies,
        "w_estimate": rep.w_estimate,
        "linear_coefficient": rep.linear_coefficient,
        "w_formula": rep.w_formula,
        "abs_err": rep.abs_error,
        "log_coefficient": rep.log_coefficient,
        "slope_check": rep.slope_check,
    }))
}

fn landscape(common: &Common, grid: usize, extent: f64, degree: i32) -> Outcome<Vec<[f64; 3]>> {
    let r = Resolved::from(common)?;
    if grid < 2 || extent.is_nan() || extent <= 0.0 {
        return Err(Failure::Input("--grid must be at least 2 and --extent positive".into()));
    }
    if degree == 0 {
        return Err(Failure::Input("--degree must be nonzero".into()));
    }
    let step = 2.0 * extent / (grid - 1) as f64;
    let mut rows = Vec::with_capacity(grid * grid);
    for j in 0..grid {
        for i in 0..grid {
            let z = Complex64::new(-extent + i as f64 * step, -extent + j as f64 * step);
            let value = VortexConfiguration::single(z, degree)
                .and_then(|cfg| transport_hat_w(&r.map, &cfg))
                .unwrap_or(f64::NAN);
            rows.push([z.re, z.im, value]);
        }
    }
    Ok(rows)
}

fn selfcheck() -> Outcome<(Value, bool)> {
    let fixtures = vortexw::fixtures::run_all()?;
    let all = fixtures.iter().all(|f| f.pass);
    let list: Vec<Value> = fixtures
        .iter()
        .map(|f| json!({"name": f.name, "pass": f.pass, "deviation": f.deviation, "tolerance": f.tolerance}))
        .collect();
    Ok((json!({"pass": all, "fixtures": list}), all))
}

fn csv_scalar(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(csv_scalar).collect::<Vec<_>>().join(";"),
        Value::Object(map) => map.values().map(csv_scalar).collect::<Vec<_>>().join(":"),
        Value::Null => "NaN".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key,value` rows, arrays joined with `;`.
fn to_csv(v: &Value) -> String {
    let mut s = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, val) in map {
            s.push_str(&format!("{k},{}\n", csv_scalar(val)));
        }
    }
    s
}

fn emit(text: &str, common: &Common, out: &mut dyn Write) -> Outcome<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("cannot write output: {e}"))),
    }
}

fn render(v: &Value, common: &Common) -> String {
    if common.csv {
        to_csv(v)
    } else {
        format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values always serialize"))
    }
}

fn configure_threads() -> Outcome<()> {
    if let Ok(s) = std::env::var("VORTEXW_THREADS") {
        let n: usize = s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("VORTEXW_THREADS={s:?} is not a thread count")))?;
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Outcome<i32> {
    configure_threads()?;
    let (value, common, code) = match command {
        Command::Energy(c) => (energy(c)?, c, 0),
        Command::Crit { common, target, max, starts } => (crit(common, target, *max, *starts)?, common, 0),
        Command::Nd(c) => (nd(c)?, c, 0),
        Command::Expand { common, rho } => (expand(common, rho)?, common, 0),
        Command::Landscape { common, grid, extent, degree } => {
            let rows = landscape(common, *grid, *extent, *degree)?;
            let text = if common.csv {
                let mut s = String::from("x,y,hat_w\n");
                for [x, y, w] in rows {
                    s.push_str(&format!("{x},{y},{w}\n"));
                }
                s
            } else {
                render(&json!({"columns": ["x", "y", "hat_w"], "rows": rows}), common)
            };
            emit(&text, common, out)?;
            return Ok(0);
        }
        Command::Selfcheck(c) => {
            let (v, all) = selfcheck()?;
            let code = if all { 0 } else { 1 };
            if !c.csv {
                (v, c, code)
            } else {
                let mut s = String::from("name,pass,deviation,tolerance\n");
                for f in v["fixtures"].as_array().into_iter().flatten() {
                    s.push_str(&format!("{},{},{},{}\n", csv_scalar(&f["name"]), f["pass"], f["deviation"], f["tolerance"]));
                }
                emit(&s, c, out)?;
                return Ok(code);
            }
        }
    };
    emit(&render(&value, common), common, out)?;
    Ok(code)
}

fn error_json(name: &str, message: &str) -> String {
    let mut m = Map::new();
    m.insert("error".into(), json!(name));
    m.insert("message".into(), json!(message));
    format!("{}\n", Value::Object(m))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = out.write_all(error_json("InvalidArguments", &e.to_string()).as_bytes());
            return 2;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = out.write_all(error_json("InvalidInput", &msg).as_bytes());
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = out.write_all(error_json(e.name(), &e.to_string()).as_bytes());
            1
        }
    }
}
