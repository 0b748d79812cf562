//! Command-line front end: check a file of assumptions, normalise a
//! term, or decide definitional equality of two terms.
//!
//! Exit codes: 0 success (and "equal" for `eq`), 1 type error, 2 parse
//! error, 3 not equal, 4 internal error (fuel or invariant breach).

use std::process::ExitCode;
use std::rc::Rc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tinytt_core::elab::{check, elab_type, process_items, ElabError, Scope};
use tinytt_core::eval::{Fuel, DEFAULT_FUEL};
use tinytt_core::nbe::norm;
use tinytt_core::normal::Dec;
use tinytt_core::oracle::{rewrite_oracle_tm, OracleCfg, Verdict};
use tinytt_core::pretty;
use tinytt_core::surface::{parse_expr, parse_file, ParseError, Pos};

#[derive(Parser)]
#[command(name = "tinytt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Override the evaluation step budget.
    #[arg(long, global = true)]
    fuel: Option<u64>,
    /// Cross-check `eq` against the rewrite oracle at this depth.
    #[arg(long, global = true)]
    oracle_depth: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and type-check every item in a file.
    Check(CheckArgs),
    /// Normalise an expression against a type, in a file's signature.
    Norm(NormArgs),
    /// Decide whether two expressions of one type are equal.
    Eq(EqArgs),
}

#[derive(Args)]
struct CheckArgs {
    file: String,
}

#[derive(Args)]
struct NormArgs {
    file: String,
    /// The expression to normalise.
    #[arg(short = 'e', long = "expr")]
    expr: String,
    /// Its type.
    #[arg(short = 't', long = "type")]
    ty: String,
}

#[derive(Args)]
struct EqArgs {
    file: String,
    /// Left expression.
    #[arg(short = 'a', long = "left")]
    left: String,
    /// Right expression.
    #[arg(short = 'b', long = "right")]
    right: String,
    /// The shared type.
    #[arg(short = 't', long = "type")]
    ty: String,
}

#[derive(Serialize)]
struct Diagnostic {
    line: u32,
    col: u32,
    message: String,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal_form_left: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal_form_right: Option<String>,
    diagnostics: Vec<Diagnostic>,
}

impl Report {
    fn new(command: &'static str, status: &'static str) -> Report {
        Report {
            command,
            status,
            normal_form: None,
            normal_form_left: None,
            normal_form_right: None,
            diagnostics: Vec::new(),
        }
    }

    fn diagnose(mut self, pos: Pos, message: impl Into<String>) -> Report {
        self.diagnostics.push(Diagnostic {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        });
        self
    }
}

struct Outcome {
    report: Report,
    code: u8,
    /// Plain-text lines for the non-JSON mode, stdout.
    text: Vec<String>,
}

fn emit(json: bool, out: Outcome) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string(&out.report).expect("serializable"));
    } else {
        for line in &out.text {
            println!("{line}");
        }
        for d in &out.report.diagnostics {
            eprintln!("{}:{}: {}", d.line, d.col, d.message);
        }
    }
    ExitCode::from(out.code)
}

fn parse_failure(command: &'static str, err: &ParseError) -> Outcome {
    Outcome {
        report: Report::new(command, "parse-error").diagnose(err.pos, err.msg.clone()),
        code: 2,
        text: Vec::new(),
    }
}

fn elab_failure(command: &'static str, err: &ElabError) -> Outcome {
    match err {
        ElabError::Type(te) => Outcome {
            report: Report::new(command, "type-error").diagnose(te.pos, te.msg.clone()),
            code: 1,
            text: Vec::new(),
        },
        ElabError::Internal(ie) => Outcome {
            report: Report::new(command, "internal-error")
                .diagnose(Pos { line: 0, col: 0 }, ie.to_string()),
            code: 4,
            text: Vec::new(),
        },
    }
}

fn load_signature(
    command: &'static str,
    path: &str,
    fuel: &Fuel,
) -> Result<Scope, Box<Outcome>> {
    let src = match std::fs::read_to_string(path) {
        Ok(src) => src,
        Err(e) => {
            return Err(Box::new(Outcome {
                report: Report::new(command, "parse-error")
                    .diagnose(Pos { line: 0, col: 0 }, format!("cannot read {path}: {e}")),
                code: 2,
                text: Vec::new(),
            }))
        }
    };
    let items = parse_file(&src).map_err(|e| Box::new(parse_failure(command, &e)))?;
    process_items(&items, fuel).map_err(|e| Box::new(elab_failure(command, &e)))
}

fn run_check(args: &CheckArgs, fuel: &Fuel) -> Outcome {
    match load_signature("check", &args.file, fuel) {
        Ok(_) => Outcome {
            report: Report::new("check", "ok"),
            code: 0,
            text: vec!["ok".to_string()],
        },
        Err(out) => *out,
    }
}

/// Parses, elaborates and normalises one expression in a signature.
fn norm_in_scope(
    command: &'static str,
    scope: &Scope,
    expr: &str,
    ty: &str,
    fuel: &Fuel,
) -> Result<(String, Rc<tinytt_core::Tm>, tinytt_core::Ty), Box<Outcome>> {
    let e = parse_expr(expr).map_err(|e| Box::new(parse_failure(command, &e)))?;
    let t = parse_expr(ty).map_err(|e| Box::new(parse_failure(command, &e)))?;
    let ty = elab_type(scope, &t, fuel).map_err(|e| Box::new(elab_failure(command, &e)))?;
    let tm = check(scope, &e, &ty, fuel).map_err(|e| Box::new(elab_failure(command, &e)))?;
    let nf = match norm(scope.ctx(), &ty, &tm, fuel) {
        Ok(nf) => nf,
        Err(ie) => {
            return Err(Box::new(Outcome {
                report: Report::new(command, "internal-error")
                    .diagnose(Pos { line: 0, col: 0 }, ie.to_string()),
                code: 4,
                text: Vec::new(),
            }))
        }
    };
    Ok((pretty::nf(&nf, scope.names()), tm, ty))
}

fn run_norm(args: &NormArgs, fuel: &Fuel) -> Outcome {
    let scope = match load_signature("norm", &args.file, fuel) {
        Ok(s) => s,
        Err(out) => return *out,
    };
    match norm_in_scope("norm", &scope, &args.expr, &args.ty, fuel) {
        Ok((printed, _, _)) => Outcome {
            report: Report {
                normal_form: Some(printed.clone()),
                ..Report::new("norm", "ok")
            },
            code: 0,
            text: vec![printed],
        },
        Err(out) => *out,
    }
}

fn run_eq(args: &EqArgs, fuel: &Fuel, oracle_depth: Option<usize>) -> Outcome {
    let scope = match load_signature("eq", &args.file, fuel) {
        Ok(s) => s,
        Err(out) => return *out,
    };
    let (left_nf, left_tm, ty) =
        match norm_in_scope("eq", &scope, &args.left, &args.ty, fuel) {
            Ok(v) => v,
            Err(out) => return *out,
        };
    let (right_nf, right_tm, _) =
        match norm_in_scope("eq", &scope, &args.right, &args.ty, fuel) {
            Ok(v) => v,
            Err(out) => return *out,
        };
    let dec = match tinytt_core::nbe::conv(scope.ctx(), &ty, &left_tm, &right_tm, fuel) {
        Ok(d) => d,
        Err(ie) => {
            return Outcome {
                report: Report::new("eq", "internal-error")
                    .diagnose(Pos { line: 0, col: 0 }, ie.to_string()),
                code: 4,
                text: Vec::new(),
            }
        }
    };

    // Optional cross-check against the independent rewrite search: a
    // decisive oracle must agree with conv.
    if let Some(depth) = oracle_depth {
        let cfg = OracleCfg::with_depth(depth);
        let verdict = rewrite_oracle_tm(scope.ctx(), &ty, &left_tm, &right_tm, &cfg);
        let contradicts = matches!(
            (verdict, dec),
            (Verdict::Equal, Dec::NotEqual(_)) | (Verdict::NotEqualWithinDepth, Dec::Equal)
        );
        if contradicts {
            return Outcome {
                report: Report::new("eq", "internal-error").diagnose(
                    Pos { line: 0, col: 0 },
                    format!("oracle at depth {depth} contradicts the conversion checker"),
                ),
                code: 4,
                text: Vec::new(),
            };
        }
    }

    match dec {
        Dec::Equal => Outcome {
            report: Report {
                normal_form_left: Some(left_nf),
                normal_form_right: Some(right_nf),
                ..Report::new("eq", "equal")
            },
            code: 0,
            text: vec!["equal".to_string()],
        },
        Dec::NotEqual(_) => Outcome {
            report: Report {
                normal_form_left: Some(left_nf.clone()),
                normal_form_right: Some(right_nf.clone()),
                ..Report::new("eq", "not-equal")
            },
            code: 3,
            text: vec![
                "not equal".to_string(),
                format!("  left:  {left_nf}"),
                format!("  right: {right_nf}"),
            ],
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fuel = Fuel::new(cli.fuel.unwrap_or(DEFAULT_FUEL));
    let outcome = match &cli.command {
        Command::Check(args) => run_check(args, &fuel),
        Command::Norm(args) => run_norm(args, &fuel),
        Command::Eq(args) => run_eq(args, &fuel, cli.oracle_depth),
    };
    emit(cli.json, outcome)
}
