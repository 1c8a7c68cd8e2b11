//! `nsverify`: runs the exact checks of `nsalg` and emits text or JSON
//! certificate reports.
//!
//! Exit codes: 0 when every executed check passes (info entries never fail a
//! run), 1 when any check fails, 2 on usage and parse errors.

pub mod args;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use thiserror::Error;

use nsalg::algebra::AlgebraMode;
use nsalg::analysis::annihilator::minimal_annihilator;
use nsalg::analysis::axiom::verify_module_axiom;
use nsalg::analysis::catalogue::{verify_identity_catalogue_with, CatalogueOptions};
use nsalg::analysis::chains::{three_halves, verify_chains_in_algebra, verify_chains_on_module};
use nsalg::analysis::classify::{classification_table, render_table, ClassificationRow};
use nsalg::analysis::grid::{verify_grid, GridOptions};
use nsalg::analysis::intertwiner::{find_intertwiner, verify_isomorphisms, Intertwiner};
use nsalg::analysis::jacobi::verify_jacobi;
use nsalg::analysis::reach::{certificate_violation, simplicity_verdict, VerdictKind};
use nsalg::analysis::{all_passed, sort_reports, CheckReport, Status};
use nsalg::gamma::{make_module, parse_descriptor, parse_param, GammaModule, ModuleParams, Window};

pub use args::{Cli, Command, Common, Format, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] nsalg::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Everything a command produces; `meta` holds the resolved inputs.
#[derive(Debug, Default)]
pub struct Outcome {
    pub meta: BTreeMap<String, String>,
    pub checks: Vec<CheckReport>,
    pub table: Option<Vec<ClassificationRow>>,
}

#[derive(Serialize)]
struct Document<'a> {
    meta: &'a BTreeMap<String, String>,
    checks: &'a [CheckReport],
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<&'a [ClassificationRow]>,
}

/// Runs with process stdout/stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    Runner::default().run(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Entry point with injectable extra checks, used to exercise the exit-code contract.
#[derive(Debug, Default, Clone)]
pub struct Runner {
    pub inject: Vec<CheckReport>,
}

impl Runner {
    pub fn with_injected(inject: Vec<CheckReport>) -> Self {
        Runner { inject }
    }

    pub fn run<I, S>(&self, argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        let cli = match Cli::try_parse_from(argv) {
            Ok(c) => c,
            Err(e) => {
                let code = match e.kind() {
                    ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                    _ => EXIT_USAGE,
                };
                let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
                let _ = write!(sink, "{}", e.render());
                return code;
            }
        };
        let mut outcome = match execute(&cli) {
            Ok(o) => o,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        };
        outcome.checks.extend(self.inject.iter().cloned());
        sort_reports(&mut outcome.checks);
        let rendered = match render(&outcome, cli.common.format) {
            Ok(s) => s,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        };
        match &cli.common.out {
            Some(path) => {
                if let Err(e) = write_atomically(path, &rendered) {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_USAGE;
                }
                let _ = writeln!(out, "{}", summary_line(&outcome.checks));
            }
            None => {
                let _ = write!(out, "{rendered}");
            }
        }
        if all_passed(&outcome.checks) {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

fn summary_line(checks: &[CheckReport]) -> String {
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    format!(
        "{} checks: {} pass, {} fail, {} info",
        checks.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Info)
    )
}

/// Text or pretty JSON, newline-terminated.
pub fn render(outcome: &Outcome, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let doc = Document { meta: &outcome.meta, checks: &outcome.checks, table: outcome.table.as_deref() };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Usage(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(rows) = &outcome.table {
                s.push_str(&render_table(rows));
            }
            for c in &outcome.checks {
                s.push_str(&format!("{c}\n"));
            }
            if outcome.table.is_none() || !outcome.checks.is_empty() {
                s.push_str(&summary_line(&outcome.checks));
                s.push('\n');
            }
            Ok(s)
        }
    }
}

fn write_atomically(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Resolved inputs shared by the commands.
struct Ctx<'a> {
    common: &'a Common,
    meta: BTreeMap<String, String>,
}

impl<'a> Ctx<'a> {
    fn note(&mut self, key: &str, value: impl ToString) {
        self.meta.insert(key.to_string(), value.to_string());
    }

    fn window(&mut self, kmin: i64, kmax: i64, margin: i64) -> Result<Window, CliError> {
        let (lo, hi) = match &self.common.window {
            Some(s) => {
                let w: Window = s.parse()?;
                (w.kmin, w.kmax)
            }
            None => (kmin, kmax),
        };
        let w = Window::new(lo, hi, self.common.margin.unwrap_or(margin))?;
        self.note("window", w);
        Ok(w)
    }

    fn algebra_for(&self, descriptor: &str) -> AlgebraMode {
        let boundary = descriptor.contains("gamma+") || descriptor.contains("gamma-");
        match self.common.algebra {
            Some(a) => a,
            None if boundary => AlgebraMode::KPlus,
            None => AlgebraMode::KHat,
        }
    }

    fn parse_module(&self, descriptor: &str) -> Result<GammaModule, CliError> {
        Ok(parse_descriptor(descriptor, self.algebra_for(descriptor), self.common.convention)?)
    }

    /// --module, else gamma(--lambda, --b), else the default descriptor.
    fn module(&mut self, default: Option<&str>) -> Result<GammaModule, CliError> {
        let c = self.common;
        let m = if let Some(d) = &c.module {
            self.parse_module(d)?
        } else if c.lambda.is_some() || c.b.is_some() {
            let l = parse_param(c.lambda.as_deref().unwrap_or("l"), "l")?;
            let b = parse_param(c.b.as_deref().unwrap_or("b"), "b")?;
            let mode = c.algebra.unwrap_or(AlgebraMode::KHat);
            make_module(ModuleParams::gamma(l, b, mode).with_convention(c.convention))?
        } else if let Some(d) = default {
            self.parse_module(d)?
        } else {
            return Err(CliError::Usage("a module is required: pass --module or --lambda/--b".into()));
        };
        self.note("module", m.descriptor());
        self.note("algebra", m.algebra_mode());
        self.note("convention", m.params().sign_convention);
        Ok(m)
    }

    fn gen_range(&mut self) -> i64 {
        let g = self.common.gen_range.unwrap_or(3);
        self.note("gen_range", g);
        g
    }
}

/// Runs the parsed command without rendering.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let mut ctx = Ctx { common: &cli.common, meta: BTreeMap::new() };
    ctx.note("tool", "nsverify");
    ctx.note("version", env!("CARGO_PKG_VERSION"));
    ctx.note("command", cli.command.name());
    let mut outcome = Outcome::default();
    match &cli.command {
        Command::Verify { suite } => {
            ctx.note("suite", format!("{suite:?}").to_lowercase());
            let suites: Vec<Suite> = match suite {
                Suite::All => {
                    vec![Suite::Jacobi, Suite::Identities, Suite::ModuleAxiom, Suite::Grid, Suite::Iso, Suite::Annihilator]
                }
                s => vec![*s],
            };
            for s in suites {
                outcome.checks.extend(run_suite(&mut ctx, s)?);
            }
        }
        Command::Identities => outcome.checks = run_suite(&mut ctx, Suite::Identities)?,
        Command::ModuleAxiom => outcome.checks = run_suite(&mut ctx, Suite::ModuleAxiom)?,
        Command::Annihilator => outcome.checks = run_suite(&mut ctx, Suite::Annihilator)?,
        Command::ModuleSimplicity => outcome.checks = module_simplicity(&mut ctx)?,
        Command::ModuleIso => outcome.checks = module_iso(&mut ctx)?,
        Command::Classify => outcome.table = Some(classification_table()),
    }
    outcome.meta = ctx.meta;
    Ok(outcome)
}

fn run_suite(ctx: &mut Ctx, suite: Suite) -> Result<Vec<CheckReport>, CliError> {
    let c = ctx.common;
    Ok(match suite {
        Suite::Jacobi => {
            let range = c.range.unwrap_or(4);
            if range < 2 {
                return Err(CliError::Usage(format!("--range must be at least 2, got {range}")));
            }
            ctx.note("range", range);
            verify_jacobi(range)?
        }
        Suite::Identities => {
            let max_n = c.range.unwrap_or(8);
            if max_n < 2 {
                return Err(CliError::Usage(format!("--range must be at least 2, got {max_n}")));
            }
            ctx.note("range", max_n);
            let opts = CatalogueOptions {
                window: ctx.window(-6, 6, 2)?,
                max_m: c.max_m.unwrap_or(6),
                ..CatalogueOptions::default()
            };
            verify_identity_catalogue_with(max_n, &opts)?
        }
        Suite::ModuleAxiom => {
            let m = ctx.module(Some("gamma(l,b)"))?;
            let range = c.range.unwrap_or(3);
            ctx.note("range", range);
            let w = ctx.window(-8, 8, 0)?;
            verify_module_axiom(&m, range, &w)?
        }
        Suite::Grid => {
            let opts = GridOptions {
                window: ctx.window(-10, 10, 3)?,
                gen_range: ctx.gen_range(),
                convention: c.convention,
                ..GridOptions::default()
            };
            verify_grid(&opts)?
        }
        Suite::Iso => {
            let w = ctx.window(-10, 10, 3)?;
            verify_isomorphisms(&w, ctx.gen_range())?
        }
        Suite::Annihilator => {
            let m = ctx.module(Some("gamma(1/3,1/4)"))?;
            let w = ctx.window(-10, 10, 3)?;
            let max_m = c.max_m.unwrap_or(6);
            ctx.note("max_m", max_m);
            let outcome = match minimal_annihilator(&m, &w, max_m) {
                Ok(o) => o,
                Err(e @ nsalg::Error::AnnihilatorBound(_)) => {
                    return Ok(vec![CheckReport::fail("annihilator.omega", nsalg::analysis::annihilator::OMEGA_ANCHOR, e.to_string())
                        .with_param("module", m.descriptor())
                        .with_param("max_m", max_m)]);
                }
                Err(e) => return Err(e.into()),
            };
            let mut out = outcome.reports;
            out.extend(verify_chains_on_module(&m, &w, outcome.m, &three_halves())?);
            out.extend(verify_chains_in_algebra(outcome.m, &three_halves(), false)?);
            out
        }
        Suite::All => unreachable!("expanded by the caller"),
    })
}

const SIMPLICITY_ANCHOR: &str = "simple iff the weight digraph of the window interior is strongly connected";

fn module_simplicity(ctx: &mut Ctx) -> Result<Vec<CheckReport>, CliError> {
    let m = ctx.module(None)?;
    let w = ctx.window(-10, 10, 3)?;
    let g = ctx.gen_range();
    let v = simplicity_verdict(&m, &w, g)?;
    let mut report = match v.kind {
        VerdictKind::Inconclusive => CheckReport::info("simplicity.verdict", SIMPLICITY_ANCHOR, v.note.clone()),
        _ => CheckReport::pass("simplicity.verdict", SIMPLICITY_ANCHOR),
    }
    .with_param("verdict", v.kind)
    .with_param("module", m.descriptor());
    if let Some(c) = v.certificate_summary(&m) {
        report = report.with_param("certificate", c);
    }
    if !v.locus.is_empty() {
        let locus: Vec<String> = v
            .locus
            .iter()
            .map(|l| {
                let out: Vec<&str> = l.outgoing.iter().map(String::as_str).collect();
                let inc: Vec<&str> = l.incoming.iter().map(String::as_str).collect();
                format!("{}: out [{}] in [{}]", l.key, out.join("; "), inc.join("; "))
            })
            .collect();
        report = report.with_param("locus", locus.join(" | "));
    }
    let mut out = vec![report];
    if let Some(cert) = &v.certificate {
        let violation = certificate_violation(&m, cert, &w, g)?;
        out.push(
            CheckReport::from_witness("simplicity.certificate-closed", SIMPLICITY_ANCHOR, violation)
                .with_param("module", m.descriptor())
                .with_param("keys", cert.len()),
        );
    }
    Ok(out)
}

fn render_intertwiner(it: &Intertwiner) -> String {
    it.table.iter().map(|(a, b, c)| format!("{a}->{b}:{c}")).collect::<Vec<_>>().join(" ")
}

fn module_iso(ctx: &mut Ctx) -> Result<Vec<CheckReport>, CliError> {
    let a = ctx.module(None)?;
    let other = ctx
        .common
        .other
        .clone()
        .ok_or_else(|| CliError::Usage("module-iso needs --other".into()))?;
    let b = ctx.parse_module(&other)?;
    ctx.note("other", b.descriptor());
    let w = ctx.window(-10, 10, 3)?;
    let g = ctx.gen_range();
    let anchor = nsalg::analysis::intertwiner::ISO_ANCHOR;
    let fwd = find_intertwiner(&a, &b, &w, g)?;
    let back = find_intertwiner(&b, &a, &w, g)?;
    let search = match &fwd {
        Some(it) => CheckReport::pass("iso.search", anchor)
            .with_param("result", "found")
            .with_param("parity", it.parity)
            .with_param("key_offset", &it.key_offset)
            .with_param("table", render_intertwiner(it)),
        None => CheckReport::info("iso.search", anchor, Some("no intertwiner on the window".into())).with_param("result", "none"),
    };
    let symmetry = CheckReport::from_witness(
        "iso.symmetry",
        anchor,
        (fwd.is_some() != back.is_some()).then(|| "the reverse search disagrees".to_string()),
    );
    Ok(vec![
        search.with_param("source", a.descriptor()).with_param("target", b.descriptor()),
        symmetry.with_param("source", a.descriptor()).with_param("target", b.descriptor()),
    ])
}
