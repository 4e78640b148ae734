//! Command-line interface. [`run`] takes the arguments (without the program
//! name) and returns what to print and the exit code, so it can be driven
//! from tests as well as from the binary.
//!
//! Exit codes: 0 success, 1 scope, type or law failure, 2 malformed input,
//! 3 fuel exhausted.

use std::fmt::Write as _;
use std::fs;

use clap::{Args, Parser, Subcommand};

use crate::descriptions::{parse_description, print_description, validate_description, LanguageDescription};
use crate::langpack::stlc::{self, desugar, eval, EvalError, Flavour, Stlc, StlcConfig, Style};
use crate::laws::check_laws;
use crate::termgen::{enum_closed, GenConfig, Generator};
use crate::terms::{parse_expr, parse_form, parse_ty, resolve, untype, validate_expr, Ctx, Expr, Tm};
use crate::typecheck::{check, infer};

#[derive(Debug, Parser)]
#[command(name = "gensyn", about = "Generic syntax with binders: descriptions, typed terms, laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Language descriptions.
    #[command(subcommand)]
    Lang(LangCommand),
    /// Typechecking and erasure of terms.
    #[command(subcommand)]
    Term(TermCommand),
    /// The bundled simply typed lambda calculus.
    #[command(subcommand)]
    Stlc(StlcCommand),
    /// Check the renaming and substitution laws on generated terms.
    Laws {
        #[arg(long)]
        lang: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 4)]
        max_ctx: usize,
    },
    /// Generate well-typed terms, randomly or exhaustively.
    Gen {
        #[arg(long)]
        lang: String,
        /// Result type; random mode only.
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long, default_value = "")]
        ctx: String,
        #[arg(long, default_value_t = 4)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Enumerate every closed term instead of sampling.
        #[arg(long = "enum")]
        enumerate: bool,
        #[arg(long, default_value_t = 4)]
        max_nodes: usize,
    },
}

#[derive(Debug, Subcommand)]
enum LangCommand {
    /// Report problems with a description.
    Validate { desc: String },
    /// Print a description in canonical JSON.
    Print { desc: String },
}

#[derive(Debug, Args)]
struct TermInput {
    #[arg(long)]
    lang: String,
    /// Comma-separated context, outermost first; entries may be named
    /// `x:ty` for use with --form.
    #[arg(long, default_value = "")]
    ctx: String,
    /// Read named syntax instead of de Bruijn indices.
    #[arg(long)]
    form: bool,
    /// Term file, or `-` for standard input.
    file: String,
}

#[derive(Debug, Subcommand)]
enum TermCommand {
    Check {
        #[command(flatten)]
        input: TermInput,
        #[arg(long = "type")]
        ty: String,
    },
    Infer {
        #[command(flatten)]
        input: TermInput,
    },
    /// Typecheck, then print the erased term.
    Erase {
        #[command(flatten)]
        input: TermInput,
        #[arg(long = "type")]
        ty: Option<String>,
    },
}

#[derive(Debug, Args)]
struct StlcInput {
    #[arg(long, default_value = "Curry")]
    style: String,
    /// Read named syntax instead of de Bruijn indices.
    #[arg(long)]
    form: bool,
    /// Check against this type instead of inferring.
    #[arg(long = "type")]
    ty: Option<String>,
    file: String,
}

#[derive(Debug, Subcommand)]
enum StlcCommand {
    /// Translate `let` away (input: sugared STLC with booleans).
    Desugar {
        #[command(flatten)]
        input: StlcInput,
    },
    /// Desugar, then reduce a closed term to a value.
    Eval {
        #[command(flatten)]
        input: StlcInput,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
        /// Print the rules used at every step.
        #[arg(long)]
        trace: bool,
    },
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    msg: String,
}

fn malformed(msg: impl ToString) -> Failure {
    Failure {
        code: 2,
        msg: msg.to_string(),
    }
}

fn failed(msg: impl ToString) -> Failure {
    Failure {
        code: 1,
        msg: msg.to_string(),
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("gensyn".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = Outcome::default();
    if let Err(f) = dispatch(cli.command, &mut out) {
        out.code = f.code;
        out.stderr.push_str(&f.msg);
        if !out.stderr.ends_with('\n') {
            out.stderr.push('\n');
        }
    }
    out
}

fn dispatch(cmd: Command, out: &mut Outcome) -> Result<(), Failure> {
    match cmd {
        Command::Lang(LangCommand::Validate { desc }) => {
            let lang = load_lang_unchecked(&desc)?;
            let diags = validate_description(&lang);
            if diags.is_empty() {
                let n = lang.productions().len();
                writeln!(out.stdout, "ok: {} ({n} productions)", lang.name).unwrap();
                return Ok(());
            }
            for d in &diags {
                writeln!(out.stdout, "{d}").unwrap();
            }
            Err(failed(format!("{} problem(s) in {}", diags.len(), lang.name)))
        }
        Command::Lang(LangCommand::Print { desc }) => {
            let lang = load_lang(&desc)?;
            out.stdout.push_str(&print_description(&lang));
            Ok(())
        }
        Command::Term(tc) => term(tc, out),
        Command::Stlc(sc) => stlc_cmd(sc, out),
        Command::Laws {
            lang,
            seed,
            count,
            depth,
            max_ctx,
        } => {
            let lang = load_lang(&lang)?;
            let cfg = GenConfig {
                seed,
                count,
                max_depth: depth,
                max_ctx,
                ..GenConfig::default()
            };
            let report = check_laws(&lang, &cfg).map_err(failed)?;
            out.stdout.push_str(&report.to_string());
            if report.all_passed() {
                Ok(())
            } else {
                Err(failed("some laws failed"))
            }
        }
        Command::Gen {
            lang,
            ty,
            ctx,
            budget,
            seed,
            count,
            enumerate,
            max_nodes,
        } => {
            let lang = load_lang(&lang)?;
            if enumerate {
                let only = match &ty {
                    Some(t) => Some(parse_ty(&lang.tysig, t).map_err(|e| malformed(format!("--type: {e}")))?),
                    None => None,
                };
                for (ty, tm) in enum_closed(&lang, max_nodes) {
                    if only.as_ref().is_none_or(|t| *t == ty) {
                        writeln!(out.stdout, "{tm} : {ty}").unwrap();
                    }
                }
                return Ok(());
            }
            let ty = ty.ok_or_else(|| malformed("gen: --type is required unless --enum is given"))?;
            let ty = parse_ty(&lang.tysig, &ty).map_err(|e| malformed(format!("--type: {e}")))?;
            let (ctx, _) = parse_ctx(&lang, &ctx)?;
            let mut g = Generator::new(
                &lang,
                GenConfig {
                    seed,
                    max_depth: budget,
                    count,
                    ..GenConfig::default()
                },
            );
            for _ in 0..count {
                let tm = g.gen_tm(&ctx, &ty).map_err(failed)?;
                writeln!(out.stdout, "{}", tm.root).unwrap();
            }
            Ok(())
        }
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    if file == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| malformed(format!("stdin: {e}")));
    }
    fs::read_to_string(file).map_err(|e| malformed(format!("{file}: {e}")))
}

fn load_lang_unchecked(desc: &str) -> Result<LanguageDescription, Failure> {
    let id = desc.strip_prefix("builtin:").unwrap_or(desc);
    if id.starts_with("stlc:") {
        let cfg = StlcConfig::parse_id(id).map_err(malformed)?;
        return Ok(stlc::stlc_description(cfg));
    }
    let src = fs::read_to_string(desc).map_err(|e| malformed(format!("{desc}: {e}")))?;
    parse_description(&src).map_err(|e| malformed(format!("{desc}: {e}")))
}

fn load_lang(desc: &str) -> Result<LanguageDescription, Failure> {
    let lang = load_lang_unchecked(desc)?;
    let diags = validate_description(&lang);
    if let Some(d) = diags.first() {
        return Err(malformed(format!("{desc}: invalid description: {d}")));
    }
    Ok(lang)
}

/// Splits on commas outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parses `--ctx`: the context and the names given to its entries.
fn parse_ctx(lang: &LanguageDescription, s: &str) -> Result<(Ctx, Vec<String>), Failure> {
    let mut tys = Vec::new();
    let mut names = Vec::new();
    if s.trim().is_empty() {
        return Ok((Ctx::empty(), names));
    }
    for (i, part) in split_top(s).into_iter().enumerate() {
        let part = part.trim();
        let (name, ty) = match part.split_once(':') {
            Some((n, t)) if !n.contains('(') => (n.trim().to_string(), t),
            _ => (format!("#{i}"), part),
        };
        let ty = parse_ty(&lang.tysig, ty).map_err(|e| malformed(format!("--ctx entry {i}: {e}")))?;
        tys.push(ty);
        names.push(name);
    }
    Ok((Ctx::new(tys), names))
}

fn parse_term(lang: &LanguageDescription, src: &str, form: bool, names: &[String]) -> Result<Expr, Failure> {
    let e = if form {
        let f = parse_form(lang, src).map_err(malformed)?;
        resolve(lang, names, &f).map_err(failed)?
    } else {
        parse_expr(lang, src, names.len()).map_err(malformed)?
    };
    validate_expr(lang, &e).map_err(failed)?;
    Ok(e)
}

fn elaborate(lang: &LanguageDescription, ctx: &Ctx, e: &Expr, ty: Option<&str>) -> Result<Tm, Failure> {
    match ty {
        Some(t) => {
            let t = parse_ty(&lang.tysig, t).map_err(|e| malformed(format!("--type: {e}")))?;
            check(lang, ctx, e, &t).map_err(failed)
        }
        None => infer(lang, ctx, e).map_err(failed),
    }
}

fn term(tc: TermCommand, out: &mut Outcome) -> Result<(), Failure> {
    let (input, ty, mode) = match tc {
        TermCommand::Check { input, ty } => (input, Some(ty), "check"),
        TermCommand::Infer { input } => (input, None, "infer"),
        TermCommand::Erase { input, ty } => (input, ty, "erase"),
    };
    let lang = load_lang(&input.lang)?;
    let (ctx, names) = parse_ctx(&lang, &input.ctx)?;
    let src = read_input(&input.file)?;
    let e = parse_term(&lang, &src, input.form, &names)?;
    let tm = elaborate(&lang, &ctx, &e, ty.as_deref())?;
    match mode {
        "check" => writeln!(out.stdout, "{}", tm.root).unwrap(),
        "infer" => writeln!(out.stdout, "{}\n{}", tm.ty(), tm.root).unwrap(),
        _ => writeln!(out.stdout, "{}", untype(&tm).root).unwrap(),
    }
    Ok(())
}

fn stlc_cmd(sc: StlcCommand, out: &mut Outcome) -> Result<(), Failure> {
    let (input, eval_opts) = match sc {
        StlcCommand::Desugar { input } => (input, None),
        StlcCommand::Eval { input, fuel, trace } => (input, Some((fuel, trace))),
    };
    let style: Style = input.style.parse().map_err(malformed)?;
    let sugared = Stlc::new(StlcConfig::new(Flavour::Sugared, style).with_bools());
    let plain = Stlc::new(sugared.config.desugared());
    let src = read_input(&input.file)?;
    let e = parse_term(&sugared.lang, &src, input.form, &[])?;
    let tm = elaborate(&sugared.lang, &Ctx::empty(), &e, input.ty.as_deref())?;
    let d = desugar(&sugared, &tm);
    let Some((fuel, trace)) = eval_opts else {
        writeln!(out.stdout, "{}", d.root).unwrap();
        return Ok(());
    };
    let print_steps = |out: &mut Outcome, t: &crate::langpack::stlc::StepTrace| {
        if trace {
            for s in &t.steps {
                let rules: Vec<&str> = s.rules.iter().map(|r| r.name()).collect();
                writeln!(out.stdout, "[{}] {}", rules.join(", "), s.term.root).unwrap();
            }
        }
    };
    match eval(&plain.lang, &d, fuel) {
        Ok(t) => {
            print_steps(out, &t);
            writeln!(out.stdout, "{}", t.result().root).unwrap();
            Ok(())
        }
        Err(EvalError::FuelExhausted { trace: t }) => {
            print_steps(out, &t);
            Err(Failure {
                code: 3,
                msg: format!("fuel exhausted after {} steps", t.steps.len()),
            })
        }
        Err(e) => Err(failed(e)),
    }
}
