use crate::formats::{self, matrix_q, LoadError};
use crate::report::Report;
use clap::{Parser, Subcommand, ValueEnum};
use crossed::cohomology::{
    check_linear_deformation, check_nijenhuis, cohomology_dims, mc_residual, nijenhuis_grid,
    trivial_deformation_generator,
};
use crossed::lie::{check_action, check_crossed_hom, solve_crossed_homs_grid, twist_iso_check};
use crossed::report::Finding;
use crossed::rinehart::{
    check_admissible_rep, check_leibniz_pair, check_lie_rinehart, check_weak_rep, Anchored, GlnRep,
};
use crossed::scalar::{parse_rational, render_rational};
use crossed::shen::{
    check_module_axiom_window, check_weak_compat_window, module_window_basis, tensor_label, tensor_labels, ShenLarsson,
    TensorLaurent, WittModule,
};
use crossed::witt::{verify_witt_crossed_hom, witt_label, Family, Window, WittElem};
use crossed::{Rational, Setup};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "crossed",
    version,
    about = "Exact verification of crossed homomorphisms, Lie-Rinehart data and their cohomology"
)]
struct Cli {
    /// Print the JSON report instead of the human-readable summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Jacobi identity of a finite Lie algebra file.
    CheckLie { file: PathBuf },
    /// Check that the action of a setup is an action by derivations.
    CheckAction { setup: PathBuf },
    /// Check that H of a setup is a crossed homomorphism.
    CheckCrossedHom { setup: PathBuf },
    /// Check a Lie-Rinehart algebra and its optional weak representation.
    CheckRinehart { file: PathBuf },
    /// Check a Leibniz pair and its optional admissible representation.
    CheckLeibniz { file: PathBuf },
    /// Dimensions of the cohomology of the induced representation.
    Cohomology {
        setup: PathBuf,
        #[arg(long, value_name = "K")]
        max_degree: Option<usize>,
    },
    /// The Maurer-Cartan residual of H.
    McResidual { setup: PathBuf },
    /// Check the Nijenhuis conditions at an element, or search a grid.
    Nijenhuis {
        setup: PathBuf,
        #[arg(long, value_name = "c1,c2,...", conflicts_with = "grid", allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long, value_name = "v1,v2,...", allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// The trivial linear deformation generated by a Nijenhuis element.
    Deform {
        setup: PathBuf,
        #[arg(long, value_name = "c1,c2,...", allow_hyphen_values = true)]
        element: String,
    },
    /// Verify the canonical crossed homomorphisms of Witt-type algebras on a window.
    WittVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Full)]
        family: FamilyArg,
        #[arg(long, default_value_t = 2)]
        window: u32,
        /// p-file for the pq family.
        #[arg(long, value_name = "PATH")]
        p: Option<PathBuf>,
    },
    /// Action table and module law of a Shen-Larsson module on a window.
    ShenLarsson {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RepArg::Natural)]
        rep: RepArg,
        #[arg(long, default_value_t = 1)]
        window: u32,
    },
    /// All crossed homomorphisms with entries in a finite grid.
    SolveGrid {
        setup: PathBuf,
        #[arg(long, value_name = "v1,v2,...", allow_hyphen_values = true)]
        grid: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Full,
    Sdiv,
    Ham,
    Pq,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RepArg {
    Trivial,
    Natural,
    Adjoint,
}

#[derive(Debug)]
enum CmdError {
    Load(LoadError),
    Usage(String),
    Core(crossed::Error),
}

impl From<LoadError> for CmdError {
    fn from(e: LoadError) -> Self {
        CmdError::Load(e)
    }
}

impl From<crossed::Error> for CmdError {
    fn from(e: crossed::Error) -> Self {
        CmdError::Core(e)
    }
}

impl CmdError {
    fn report(&self, command: &str) -> Report {
        match self {
            CmdError::Load(e) => Report::error(command, e.kind(), e.to_string()),
            CmdError::Usage(m) => Report::error(command, "usage", m.clone()),
            CmdError::Core(e) => Report::error(command, "input", e.to_string()),
        }
    }
}

type CmdResult = Result<Report, CmdError>;

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckLie { .. } => "check-lie",
            Command::CheckAction { .. } => "check-action",
            Command::CheckCrossedHom { .. } => "check-crossed-hom",
            Command::CheckRinehart { .. } => "check-rinehart",
            Command::CheckLeibniz { .. } => "check-leibniz",
            Command::Cohomology { .. } => "cohomology",
            Command::McResidual { .. } => "mc-residual",
            Command::Nijenhuis { .. } => "nijenhuis",
            Command::Deform { .. } => "deform",
            Command::WittVerify { .. } => "witt-verify",
            Command::ShenLarsson { .. } => "shen-larsson",
            Command::SolveGrid { .. } => "solve-grid",
        }
    }
}

/// Runs the tool on `argv` (including the program name), prints the report
/// and returns the exit code: 0 pass, 1 violation found, 2 input error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let name = cli.command.name();
    let report = dispatch(&cli.command).unwrap_or_else(|e| e.report(name));
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("cannot write {}: {e}", path.display());
            return 2;
        }
    }
    let text = if cli.json { report.to_json() } else { report.to_human() };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    report.status.exit_code()
}

fn dispatch(cmd: &Command) -> CmdResult {
    let name = cmd.name();
    match cmd {
        Command::CheckLie { file } => {
            let g = formats::load_lie(file)?;
            Ok(Report::checked(
                name,
                g.check_jacobi(),
                json!({ "dim": g.dim(), "basis": g.names() }),
            ))
        }
        Command::CheckAction { setup } => {
            let s = formats::load_setup(setup)?;
            let findings = preconditions(&s)?;
            Ok(Report::checked(name, findings, dims(&s)))
        }
        Command::CheckCrossedHom { setup } => {
            let s = formats::load_setup(setup)?;
            let t = twist_iso_check(&s);
            let mut findings = preconditions(&s)?;
            findings.extend(check_crossed_hom(&s));
            let mut payload = dims(&s);
            payload["twist"] = json!({
                "twist_is_homomorphism": t.twist_is_homomorphism,
                "section_is_homomorphism": t.section_is_homomorphism,
                "is_crossed_hom": t.is_crossed_hom,
            });
            Ok(Report::checked(name, findings, payload))
        }
        Command::CheckRinehart { file } => {
            let b = formats::load_lie_rinehart(file)?;
            let mut findings = b.lr.lie().check_jacobi();
            findings.extend(check_lie_rinehart(&b.lr));
            if let Some(r) = &b.representation {
                findings.extend(check_weak_rep(&b.lr, &r.module, &r.rho, r.strict)?);
            }
            let payload = json!({
                "dim_A": b.lr.algebra().dim(),
                "dim_L": b.lr.lie().dim(),
                "basis_L": b.lr.lie().names(),
                "representation": b.representation.as_ref().map(|r| r.module.dim()),
            });
            Ok(Report::checked(name, findings, payload))
        }
        Command::CheckLeibniz { file } => {
            let b = formats::load_leibniz(file)?;
            let mut findings = b.pair.lie().check_jacobi();
            findings.extend(check_leibniz_pair(&b.pair));
            if let Some(r) = &b.representation {
                findings.extend(check_admissible_rep(&b.pair, &r.module, &r.rho)?);
            }
            let payload = json!({
                "dim_A": b.pair.algebra().dim(),
                "dim_S": b.pair.lie().dim(),
                "representation": b.representation.as_ref().map(|r| r.module.dim()),
            });
            Ok(Report::checked(name, findings, payload))
        }
        Command::Cohomology { setup, max_degree } => {
            let s = formats::load_setup(setup)?;
            if let Some(r) = require_crossed(name, &s)? {
                return Ok(r);
            }
            let k = max_degree.unwrap_or(s.g().dim());
            let report = cohomology_dims(&s, k)?;
            Ok(Report::checked(
                name,
                Vec::new(),
                serde_json::to_value(report).expect("serializes"),
            ))
        }
        Command::McResidual { setup } => {
            let s = formats::load_setup(setup)?;
            let mut findings = preconditions(&s)?;
            let residual = mc_residual(&s);
            let vanishes = residual.is_zero();
            findings.extend(residual.findings("mc_residual", s.g(), s.h()));
            Ok(Report::checked(name, findings, json!({ "vanishes": vanishes })))
        }
        Command::Nijenhuis { setup, element, grid } => {
            let s = formats::load_setup(setup)?;
            let x = element.as_deref().map(|e| parse_element(e, s.g().dim())).transpose()?;
            let grid = grid.as_deref().map(parse_list).transpose()?;
            if x.is_none() && grid.is_none() {
                return Err(CmdError::Usage("nijenhuis needs --element or --grid".into()));
            }
            if let Some(r) = require_crossed(name, &s)? {
                return Ok(r);
            }
            if let Some(x) = x {
                let report = check_nijenhuis(&s, &x)?;
                let payload = serde_json::to_value(&report).expect("serializes");
                Ok(Report::checked(name, report.findings(), payload))
            } else {
                let found = nijenhuis_grid(&s, grid.as_deref().unwrap_or_default())?;
                let elements: Vec<Vec<String>> =
                    found.iter().map(|x| x.iter().map(render_rational).collect()).collect();
                Ok(Report::checked(
                    name,
                    Vec::new(),
                    json!({ "count": elements.len(), "elements": elements }),
                ))
            }
        }
        Command::Deform { setup, element } => {
            let s = formats::load_setup(setup)?;
            let x = parse_element(element, s.g().dim())?;
            if let Some(r) = require_crossed(name, &s)? {
                return Ok(r);
            }
            let report = check_nijenhuis(&s, &x)?;
            if !report.is_nijenhuis() {
                let payload = json!({ "message": "element is not a Nijenhuis element", "nijenhuis": report });
                return Ok(Report::checked(name, report.findings(), payload));
            }
            let frk = trivial_deformation_generator(&s, &x)?;
            let findings = check_linear_deformation(&s, &frk)?;
            let columns: BTreeMap<&str, BTreeMap<String, String>> = s
                .g()
                .names()
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    (
                        n.as_str(),
                        strings(&crossed::report::labelled(s.h().names(), &frk.column(i))),
                    )
                })
                .collect();
            Ok(Report::checked(
                name,
                findings,
                json!({ "generator": matrix_q(&frk), "images": columns }),
            ))
        }
        Command::WittVerify { n, family, window, p } => {
            let window = Window::new(*window)?;
            let family = match (family, p) {
                (FamilyArg::Pq, Some(path)) => {
                    let (p, q) = formats::load_p(path, *n)?;
                    Family::Pq { p, q }
                }
                (FamilyArg::Pq, None) => return Err(CmdError::Usage("--family pq needs --p".into())),
                (_, Some(_)) => return Err(CmdError::Usage("--p is only used with --family pq".into())),
                (FamilyArg::Full, None) => Family::Full,
                (FamilyArg::Sdiv, None) => Family::DivergenceFree,
                (FamilyArg::Ham, None) => Family::Hamiltonian,
            };
            let report = verify_witt_crossed_hom(*n, &family, window)?;
            let payload = json!({
                "family": report.family,
                "n": report.n,
                "window": report.window,
                "basis_size": report.basis_size,
                "pairs_checked": report.pairs_checked,
            });
            Ok(Report::checked(name, report.findings, payload))
        }
        Command::ShenLarsson { n, rep, window } => {
            if *n == 0 {
                return Err(CmdError::Usage("--n must be at least 1".into()));
            }
            let window = Window::new(*window)?;
            let theta = match rep {
                RepArg::Trivial => GlnRep::trivial(*n),
                RepArg::Natural => GlnRep::natural(*n),
                RepArg::Adjoint => GlnRep::adjoint(*n),
            };
            let module = ShenLarsson::new(*n, theta)?;
            let mut findings = check_module_axiom_window(&module, window);
            findings.extend(check_weak_compat_window(&module, window));
            let names = module.v_names().to_vec();
            let mut table = Vec::new();
            for r in window.exponents(*n) {
                for i in 0..*n {
                    let w = WittElem::basis(r.clone(), i);
                    for (a, s) in module_window_basis(names.len(), *n, window) {
                        let t = TensorLaurent::term((a, s.clone()), crossed::scalar::one());
                        let result = module.act(&w, &t);
                        table.push(json!({
                            "actor": witt_label(&r, i),
                            "on": tensor_label(&names, a, &s),
                            "result": strings(&tensor_labels(&names, &result)),
                        }));
                    }
                }
            }
            let payload = json!({
                "n": n,
                "rep": format!("{rep:?}").to_lowercase(),
                "window": window.bound(),
                "v_basis": names,
                "table": table,
            });
            Ok(Report::checked(name, findings, payload))
        }
        Command::SolveGrid { setup, grid } => {
            let s = formats::load_setup(setup)?;
            let grid = parse_list(grid)?;
            let findings = preconditions(&s)?;
            if !findings.is_empty() {
                return Ok(Report::checked(
                    name,
                    findings,
                    json!({ "message": "the setup is not a Lie algebra action" }),
                ));
            }
            let found = solve_crossed_homs_grid(s.g(), s.h(), s.rho(), &grid)?;
            let solutions: Vec<_> = found.iter().map(matrix_q).collect();
            Ok(Report::checked(
                name,
                Vec::new(),
                json!({ "count": solutions.len(), "solutions": solutions }),
            ))
        }
    }
}

fn dims(s: &Setup) -> Value {
    json!({ "dim_g": s.g().dim(), "dim_h": s.h().dim() })
}

/// Jacobi failures of `g`, `h` and action failures of `ρ`.
fn preconditions(s: &Setup) -> Result<Vec<Finding>, CmdError> {
    let mut findings = s.g().check_jacobi();
    findings.extend(s.h().check_jacobi());
    findings.extend(check_action(s.g(), s.h(), s.rho())?);
    Ok(findings)
}

/// A failing report when the setup is not a crossed homomorphism of an
/// action.
fn require_crossed(name: &str, s: &Setup) -> Result<Option<Report>, CmdError> {
    let mut findings = preconditions(s)?;
    findings.extend(check_crossed_hom(s));
    if findings.is_empty() {
        return Ok(None);
    }
    let payload = json!({ "message": "H is not a crossed homomorphism of a Lie algebra action" });
    Ok(Some(Report::checked(name, findings, payload)))
}

fn strings(m: &BTreeMap<String, Rational>) -> BTreeMap<String, String> {
    m.iter().map(|(k, v)| (k.clone(), render_rational(v))).collect()
}

fn parse_list(s: &str) -> Result<Vec<Rational>, CmdError> {
    s.split(',')
        .map(|t| parse_rational(t).map_err(|e| CmdError::Usage(e.to_string())))
        .collect()
}

fn parse_element(s: &str, dim: usize) -> Result<Vec<Rational>, CmdError> {
    let x = parse_list(s)?;
    if x.len() != dim {
        return Err(CmdError::Usage(format!(
            "--element has {} coordinates, expected {dim}",
            x.len()
        )));
    }
    Ok(x)
}
