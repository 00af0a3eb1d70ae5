//! Batch front end: parse structure files, run checker suites, execute the
//! constructions, and emit human or machine reports.
//!
//! Exit status: 0 when every verdict passes (or the construction certifies),
//! 1 when some verdict fails, 2 for usage, parse or structural errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cograded::braid::{braiding, braiding_inverse, check_braided_crossed_laws, qybe_map};
use cograded::crossed::{
    build_bar_hg, build_hg, build_tilde_hg, check_crossing, is_weak_hopf_group_coalgebra, mirror,
    CrossedError, CrossedGcwhq, GroupAction,
};
use cograded::graded::{check_def31, check_derived_31};
use cograded::io;
use cograded::report::CheckReport;
use cograded::whq::check_base_whq;
use cograded::yd::{
    check_yd_module, check_yd_weak_quasimodule, conjugate_yd, tensor_yd, yd_adjoint, YdError,
    YdModule,
};

#[derive(Parser)]
#[command(name = "cograded", version, about = "Exact verification of group-cograded weak Hopf quasigroup structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildVariant {
    Hg,
    Tilde,
    Bar,
}

#[derive(Subcommand)]
enum Command {
    /// Run the ungraded axiom and consequence suite on a base structure
    CheckBase { file: PathBuf },
    /// Run the graded axiom and derived-identity suites (crossing ignored)
    CheckGcwhq { file: PathBuf },
    /// Run the graded, derived and crossing suites on a crossed structure
    CheckCrossed { file: PathBuf },
    /// Mirror a certified crossed structure; the output is re-certified
    Mirror {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build a crossed family from a base structure, a group and an action
    Build {
        variant: BuildVariant,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        action: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the Yetter-Drinfeld weak quasimodule axioms (add --module for
    /// action associativity)
    CheckYd {
        file: PathBuf,
        #[arg(long)]
        module: bool,
    },
    /// Construct and validate the adjoint-type module at a grade
    YdAdjoint {
        #[arg(long)]
        ambient: PathBuf,
        #[arg(short = 'p', long)]
        grade: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Tensor two modules over the same ambient structure
    Tensor {
        v: PathBuf,
        w: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Emit the structure maps on the full product space instead of the
        /// truncated carrier (for inspection; the full-space maps fail
        /// counitarity on genuinely weak instances)
        #[arg(long)]
        full_space: bool,
    },
    /// Conjugate a module by a group element
    Conjugate {
        v: PathBuf,
        #[arg(short = 'q', long)]
        by: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build the braiding of two modules, verify well-definedness,
    /// (co)linearity and the inverse composites
    Braiding {
        v: PathBuf,
        w: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the braided crossed category law suite on three modules
    CheckLaws { v: PathBuf, w: PathBuf, x: PathBuf },
    /// Verify the Yang-Baxter hypotheses and braid relation for one module
    Qybe { v: PathBuf },
    /// Entry-wise diff of two structure files of the same kind
    Diff { a: PathBuf, b: PathBuf },
}

enum CliError {
    /// parse, structural or usage problems -> exit 2
    Structural(String),
    /// verdict failures -> exit 1; the report has already been printed
    Failed,
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        CliError::Structural(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut sink = ReportSink { format: cli.format, target: cli.report.clone(), buffer: Vec::new() };
    let result = run(&cli.command, &mut sink);
    if let Err(e) = sink.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Structural(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Collects reports and renders them at the end, to stdout or to a file.
struct ReportSink {
    format: Format,
    target: Option<PathBuf>,
    buffer: Vec<u8>,
}

impl ReportSink {
    fn emit(&mut self, report: &CheckReport) {
        match self.format {
            Format::Text => report.render_text(&mut self.buffer).expect("buffer write"),
            Format::Machine => report.render_machine(&mut self.buffer).expect("buffer write"),
        }
    }

    fn note(&mut self, line: &str) {
        if self.format == Format::Text {
            self.buffer.extend_from_slice(line.as_bytes());
            self.buffer.push(b'\n');
        }
    }

    fn flush(&mut self) -> std::io::Result<()> {
        use std::io::Write;
        match &self.target {
            Some(path) => fs::write(path, &self.buffer),
            None => std::io::stdout().write_all(&self.buffer),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Structural(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Structural(format!("{}: {e}", path.display())))
}

fn finish(sink: &mut ReportSink, report: CheckReport) -> Result<(), CliError> {
    let ok = report.passed();
    sink.emit(&report);
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

/// Loads a crossed structure and certifies it, failing with the report when
/// certification does not pass.
fn load_certified(path: &Path, sink: &mut ReportSink) -> Result<CrossedGcwhq, CliError> {
    let mut h = io::crossed_from_json(&read(path)?)?;
    let (def, cross) = h.certify();
    if !h.certified {
        sink.note(&format!("ambient {} fails certification", path.display()));
        let mut rep = def;
        rep.extend(cross);
        sink.emit(&rep);
        return Err(CliError::Failed);
    }
    Ok(h)
}

/// Loads a module together with its certified ambient, resolving the ambient
/// reference relative to the module file.
fn load_module(path: &Path, sink: &mut ReportSink) -> Result<(CrossedGcwhq, YdModule, PathBuf), CliError> {
    let text = read(path)?;
    let ambient_ref = io::yd_ambient_ref(&text)?;
    let ambient_path = resolve(path, &ambient_ref);
    let h = load_certified(&ambient_path, sink)?;
    let v = io::yd_from_json(&text, &h)?;
    Ok((h, v, ambient_path))
}

fn resolve(module_file: &Path, ambient_ref: &str) -> PathBuf {
    let p = Path::new(ambient_ref);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        module_file.parent().unwrap_or_else(|| Path::new(".")).join(p)
    }
}

fn same_ambient(a: &CrossedGcwhq, b: &CrossedGcwhq) -> Result<(), CliError> {
    if a.gcwhq != b.gcwhq || a.crossing != b.crossing {
        return Err(CliError::Structural("modules reference different ambient structures".into()));
    }
    Ok(())
}

fn yd_err(e: YdError) -> CliError {
    CliError::Structural(e.to_string())
}

fn run(cmd: &Command, sink: &mut ReportSink) -> Result<(), CliError> {
    match cmd {
        Command::CheckBase { file } => {
            let h = io::whq_from_json(&read(file)?)?;
            finish(sink, check_base_whq(&h))
        }

        Command::CheckGcwhq { file } => {
            let (gc, _pi) = io::gcwhq_from_json(&read(file)?)?;
            let mut rep = check_def31(&gc);
            rep.extend(check_derived_31(&gc));
            finish(sink, rep)
        }

        Command::CheckCrossed { file } => {
            let h = io::crossed_from_json(&read(file)?)?;
            let mut rep = check_def31(&h.gcwhq);
            rep.extend(check_derived_31(&h.gcwhq));
            rep.extend(check_crossing(&h.gcwhq, &h.crossing));
            let diag = is_weak_hopf_group_coalgebra(&CrossedGcwhq {
                gcwhq: h.gcwhq.clone(),
                crossing: h.crossing.clone(),
                certified: true,
            });
            sink.note(&format!(
                "diagnostic: associative components = {}, multiplicative counit = {}",
                diag.associative, diag.counit_multiplicative
            ));
            finish(sink, rep)
        }

        Command::Mirror { file, output } => {
            let h = load_certified(file, sink)?;
            match mirror(&h) {
                Ok(m) => {
                    write_out(output, &io::crossed_to_json(&m))?;
                    sink.note(&format!("mirror written to {}", output.display()));
                    Ok(())
                }
                Err(CrossedError::MirrorInconsistent { report }) => {
                    sink.note("mirror output fails re-certification");
                    sink.emit(&report);
                    Err(CliError::Failed)
                }
                Err(e) => Err(CliError::Structural(e.to_string())),
            }
        }

        Command::Build { variant, base, group, action, output } => {
            let base = io::whq_from_json(&read(base)?)?;
            let group = io::group_from_json(&read(group)?)?;
            let mats = io::action_from_json(&read(action)?, &group, base.dim)?;
            let action = GroupAction { mats };
            let build = match variant {
                BuildVariant::Hg => build_hg,
                BuildVariant::Tilde => build_tilde_hg,
                BuildVariant::Bar => build_bar_hg,
            };
            match build(&base, &group, &action) {
                Ok(h) => {
                    write_out(output, &io::crossed_to_json(&h))?;
                    sink.note(&format!("certified structure written to {}", output.display()));
                    Ok(())
                }
                Err(CrossedError::BaseInvalid { report, .. })
                | Err(CrossedError::CertificationFailed { report, .. }) => {
                    sink.emit(&report);
                    Err(CliError::Failed)
                }
                Err(e @ CrossedError::ActionInvalid(_)) => {
                    sink.note(&e.to_string());
                    Err(CliError::Failed)
                }
                Err(e) => Err(CliError::Structural(e.to_string())),
            }
        }

        Command::CheckYd { file, module } => {
            let (h, v, _) = load_module(file, sink)?;
            let rep = if *module {
                check_yd_module(&h, &v).map_err(yd_err)?
            } else {
                check_yd_weak_quasimodule(&h, &v).map_err(yd_err)?
            };
            finish(sink, rep)
        }

        Command::YdAdjoint { ambient, grade, output } => {
            let h = load_certified(ambient, sink)?;
            let p = h.gcwhq.group.index_of(grade).map_err(|e| CliError::Structural(e.to_string()))?;
            match yd_adjoint(&h, p) {
                Ok(v) => {
                    let ambient_abs = fs::canonicalize(ambient)
                        .map_err(|e| CliError::Structural(e.to_string()))?;
                    write_out(output, &io::yd_to_json(&h, &v, &ambient_abs.display().to_string()))?;
                    sink.note(&format!("validated module written to {}", output.display()));
                    Ok(())
                }
                Err(YdError::AdjointInvalid { report, .. }) => {
                    sink.emit(&report);
                    Err(CliError::Failed)
                }
                Err(e) => Err(CliError::Structural(e.to_string())),
            }
        }

        Command::Tensor { v, w, output, full_space } => {
            let (h, vm, ambient_path) = load_module(v, sink)?;
            let (hw, wm, _) = load_module(w, sink)?;
            same_ambient(&h, &hw)?;
            let t = tensor_yd(&h, &vm, &wm).map_err(yd_err)?;
            let out_module = if *full_space {
                YdModule {
                    grade: t.module.grade,
                    dim: vm.dim * wm.dim,
                    action: t.full_action.clone(),
                    coaction: t.full_coaction.clone(),
                }
            } else {
                t.module.clone()
            };
            write_out(output, &io::yd_to_json(&h, &out_module, &ambient_path.display().to_string()))?;
            sink.note(&format!(
                "tensor module (grade {}, dimension {}) written to {}",
                h.gcwhq.group.label(out_module.grade),
                out_module.dim,
                output.display()
            ));
            let rep = check_yd_weak_quasimodule(&h, &out_module).map_err(yd_err)?;
            finish(sink, rep)
        }

        Command::Conjugate { v, by, output } => {
            let (h, vm, ambient_path) = load_module(v, sink)?;
            let k = h.gcwhq.group.index_of(by).map_err(|e| CliError::Structural(e.to_string()))?;
            let c = conjugate_yd(&h, &vm, k);
            write_out(output, &io::yd_to_json(&h, &c, &ambient_path.display().to_string()))?;
            sink.note(&format!("conjugated module written to {}", output.display()));
            let rep = check_yd_weak_quasimodule(&h, &c).map_err(yd_err)?;
            finish(sink, rep)
        }

        Command::Braiding { v, w, output } => {
            let (h, vm, _) = load_module(v, sink)?;
            let (hw, wm, _) = load_module(w, sink)?;
            same_ambient(&h, &hw)?;
            let bm = braiding(&h, &vm, &wm).map_err(yd_err)?;
            let inv = braiding_inverse(&h, &vm, &wm).map_err(yd_err)?;
            if let Some(path) = output {
                write_out(path, &io::braid_to_json(&h, vm.grade, wm.grade, &bm.matrix))?;
                sink.note(&format!("braiding matrix written to {}", path.display()));
            }
            let mut rep = bm.report;
            rep.extend(inv.report);
            finish(sink, rep)
        }

        Command::CheckLaws { v, w, x } => {
            let (h, vm, _) = load_module(v, sink)?;
            let (hw, wm, _) = load_module(w, sink)?;
            let (hx, xm, _) = load_module(x, sink)?;
            same_ambient(&h, &hw)?;
            same_ambient(&h, &hx)?;
            let mut rep = check_braided_crossed_laws(&h, &vm, &wm, &xm).map_err(yd_err)?;
            rep.extend(braiding_inverse(&h, &vm, &wm).map_err(yd_err)?.report);
            finish(sink, rep)
        }

        Command::Qybe { v } => {
            let (h, vm, _) = load_module(v, sink)?;
            let (_c, rep) = qybe_map(&h, &vm).map_err(yd_err)?;
            finish(sink, rep)
        }

        Command::Diff { a, b } => {
            let entries = io::diff_structures(&read(a)?, &read(b)?)?;
            if entries.is_empty() {
                sink.note("structures are identical");
                Ok(())
            } else {
                for e in &entries {
                    sink.note(&format!("differs at {}: {} vs {}", e.field, e.a, e.b));
                }
                let mut rep = CheckReport::new();
                for e in entries {
                    rep.push_flag("diff", &e.field, false);
                }
                if sink.format == Format::Machine {
                    sink.emit(&rep);
                }
                Err(CliError::Failed)
            }
        }
    }
}

