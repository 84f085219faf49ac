//! `cccc`: type checker, closure-conversion compiler, normalizer,
//! decompiler, linker and property runner for CC and CC-CC files.

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use cccc_core::convert::{translate_env, translate_term};
use cccc_core::link::{check_subst, compile_subst, link_program, ClosingSubst, LinkError, SubstError};
use cccc_core::model::{decompile_env, decompile_term, figure_divergences};
use cccc_core::surface::{parse_bindings, parse_file, parse_term, pretty, Language, ParseError, SourceFile};
use cccc_core::{cc, Calculus, Fuel, FuelExhausted, SourceTerm, TargetTerm, Ty, TypeError, TypingEnv, DEFAULT_FUEL};
use cccc_propcheck::{run_property, EnvProfile, GenConfig, Property, PropertyReport};

#[derive(Parser)]
#[command(name = "cccc", version, about = "Dependently typed closure conversion toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type check files and print the type of each main term.
    Check {
        /// Files to check; `-` reads standard input.
        #[arg(required = true)]
        files: Vec<String>,
        /// Language of the input; defaults to the file extension.
        #[arg(long)]
        lang: Option<Lang>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Closure-convert a CC file and print the CC-CC file.
    Compile { file: String },
    /// Print the normal form of the main term, without type checking.
    Normalize {
        file: String,
        #[arg(long)]
        lang: Option<Lang>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Decide definitional equivalence of two terms in a file's environment.
    Equiv {
        file: String,
        a: String,
        b: String,
        #[arg(long)]
        lang: Option<Lang>,
    },
    /// Translate a CC-CC file (or a compiled CC file) back into CC.
    Decompile {
        file: String,
        /// Report every place where the model rules differ from a literal
        /// reading of the published figure.
        #[arg(long)]
        strict_figures: bool,
    },
    /// Close a program's assumptions with `(bind name term)` bindings and run it.
    Link {
        target: String,
        subst: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Run a metatheory property over generated instances.
    Prop {
        /// Property name, or `all`.
        name: String,
        #[arg(long, default_value_t = GenConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = GenConfig::default().iterations)]
        iters: u64,
        #[arg(long, default_value_t = GenConfig::default().max_depth)]
        depth: usize,
        /// Environment profile; `rotate` cycles through all of them.
        #[arg(long, default_value = "rotate")]
        env: String,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum Lang {
    Cc,
    Cccc,
}

impl From<Lang> for Language {
    fn from(l: Lang) -> Language {
        match l {
            Lang::Cc => Language::Cc,
            Lang::Cccc => Language::Cccc,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Type(#[from] TypeError),
    #[error("{0}")]
    Fuel(#[from] FuelExhausted),
    #[error("{0}")]
    Usage(String),
    #[error("terms are not equivalent")]
    NotEquivalent,
    #[error("{0}")]
    PropertyFailed(String),
    /// Diagnostics were already written; carries the exit code.
    #[error("")]
    Reported(u8),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Type(TypeError::Fuel(_)) | CliError::Fuel(_) => 3,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Type(_) | CliError::Usage(_) => 1,
            CliError::NotEquivalent | CliError::PropertyFailed(_) => 2,
            CliError::Reported(code) => *code,
        }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::Type(t) => t.into(),
            LinkError::Fuel(f) => f.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SubstError> for CliError {
    fn from(e: SubstError) -> Self {
        CliError::Usage(e.to_string())
    }
}

struct Input {
    path: String,
    text: String,
    lang: Language,
}

fn read_input(path: &str, lang: Option<Lang>) -> Result<Input, CliError> {
    let io_err = |source| CliError::Io { path: path.to_string(), source };
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io_err)?
    };
    let lang = lang.map(Language::from).unwrap_or_else(|| Language::from_path(path));
    Ok(Input { path: path.to_string(), text, lang })
}

impl Input {
    fn parse<C: Calculus>(&self) -> Result<SourceFile<C>, CliError> {
        parse_file(&self.text).map_err(|source| CliError::Parse { path: self.path.clone(), source })
    }
}

fn parse_arg<C: Calculus>(what: &str, text: &str) -> Result<C, CliError> {
    parse_term(text).map_err(|source| CliError::Parse { path: what.to_string(), source })
}

/// Checks the environment and main term; prints the normal form of the main
/// term's type, or
/// every declaration's type when there is no main term.
fn check_file<C: Calculus>(input: &Input, fuel: u64) -> Result<String, CliError> {
    let file = input.parse::<C>()?;
    let env = file.env();
    C::check_env(&env)?;
    match file.main() {
        Some(main) => {
            let mut fuel = Fuel::new(fuel);
            let ty = match C::infer_with(&env, main, &mut fuel)? {
                Ty::Term(t) => Ty::Term(C::normalize(&env, &t, &mut fuel)?),
                Ty::Box => Ty::Box,
            };
            Ok(format!("{}\n", render_ty(&ty)))
        }
        None => Ok(env.entries().iter().map(|e| format!("{} : {}\n", e.name(), pretty(e.ty()))).collect()),
    }
}

fn render_ty<C: Calculus>(ty: &Ty<C>) -> String {
    match ty {
        Ty::Box => "[]".to_string(),
        Ty::Term(t) => pretty(t),
    }
}

fn compile(input: &Input) -> Result<String, CliError> {
    if input.lang != Language::Cc {
        return Err(CliError::Usage(format!("{}: compile expects a CC file", input.path)));
    }
    let file = input.parse::<SourceTerm>()?;
    let env = file.env();
    cc::check_env(&env)?;
    let main = match file.main() {
        Some(e) => {
            cc::infer(&env, e)?;
            Some(translate_term(&env, e)?)
        }
        None => None,
    };
    Ok(SourceFile::from_env(&translate_env(&env)?, main).to_string())
}

fn normalize<C: Calculus>(input: &Input, fuel: u64) -> Result<String, CliError> {
    let file = input.parse::<C>()?;
    let main = file.main().ok_or_else(|| CliError::Usage(format!("{}: no main term", input.path)))?;
    let nf = C::normalize(&file.env(), main, &mut Fuel::new(fuel))?;
    Ok(format!("{}\n", pretty(&nf)))
}

fn equiv<C: Calculus>(input: &Input, a: &str, b: &str) -> Result<String, CliError> {
    let env = input.parse::<C>()?.env();
    C::check_env(&env)?;
    let a: C = parse_arg("<a>", a)?;
    let b: C = parse_arg("<b>", b)?;
    C::infer(&env, &a)?;
    C::infer(&env, &b)?;
    if C::equiv(&env, &a, &b, &mut Fuel::default())? {
        Ok("equivalent\n".to_string())
    } else {
        Err(CliError::NotEquivalent)
    }
}

fn decompile(input: &Input, strict_figures: bool) -> Result<String, CliError> {
    let (env, main) = match input.lang {
        Language::Cccc => {
            let file = input.parse::<TargetTerm>()?;
            (file.env(), file.main().cloned())
        }
        Language::Cc => {
            let file = input.parse::<SourceTerm>()?;
            let env = file.env();
            cc::check_env(&env)?;
            let main = match file.main() {
                Some(e) => {
                    cc::infer(&env, e)?;
                    Some(translate_term(&env, e)?)
                }
                None => None,
            };
            (translate_env(&env)?, main)
        }
    };
    let source_env = decompile_env(&env)?;
    if let Some(e) = &main {
        <TargetTerm as Calculus>::infer(&env, e)?;
    }
    if strict_figures {
        let mut stderr = io::stderr().lock();
        let terms = env.entries().iter().flat_map(|e| [Some(e.ty()), e.definition()]).flatten().chain(main.iter());
        for t in terms {
            for d in figure_divergences(t) {
                let _ = writeln!(stderr, "{}: {}: {}", d.rule, d.term, d.note);
            }
        }
    }
    Ok(SourceFile::from_env(&source_env, main.as_ref().map(decompile_term)).to_string())
}

fn link_files(target: &Input, subst: &Input, fuel: u64) -> Result<String, CliError> {
    let bad_subst = |source| CliError::Parse { path: subst.path.clone(), source };
    match (target.lang, subst.lang) {
        (Language::Cc, Language::Cc) => {
            let gamma = ClosingSubst::new(parse_bindings::<SourceTerm>(&subst.text).map_err(bad_subst)?);
            run_linked(target.parse::<SourceTerm>()?, &gamma, fuel)
        }
        (Language::Cccc, Language::Cccc) => {
            let gamma = ClosingSubst::new(parse_bindings::<TargetTerm>(&subst.text).map_err(bad_subst)?);
            run_linked(target.parse::<TargetTerm>()?, &gamma, fuel)
        }
        (Language::Cccc, Language::Cc) => {
            let gamma = ClosingSubst::new(parse_bindings::<SourceTerm>(&subst.text).map_err(bad_subst)?);
            for (name, value) in gamma.bindings() {
                cc::infer(&TypingEnv::empty(), value).map_err(|e| CliError::Usage(format!("binding `{name}`: {e}")))?;
            }
            run_linked(target.parse::<TargetTerm>()?, &compile_subst(&gamma)?, fuel)
        }
        (Language::Cc, Language::Cccc) => {
            Err(CliError::Usage("a CC program cannot be linked with CC-CC bindings".to_string()))
        }
    }
}

fn run_linked<C: Calculus>(file: SourceFile<C>, gamma: &ClosingSubst<C>, fuel: u64) -> Result<String, CliError> {
    let env = file.env();
    C::check_env(&env)?;
    check_subst(&env, gamma)?;
    let main = file.main().ok_or_else(|| CliError::Usage("the program has no main term".to_string()))?;
    C::infer(&env, main)?;
    let linked = link_program(&env, gamma, main);
    let value = C::normalize(&TypingEnv::empty(), &linked, &mut Fuel::new(fuel))?;
    Ok(format!("{}\n", pretty(&value)))
}

fn prop(name: &str, cfg: GenConfig) -> Result<String, CliError> {
    let props: Vec<Property> = if name == "all" {
        Property::ALL.to_vec()
    } else {
        vec![name.parse().map_err(CliError::Usage)?]
    };
    let reports: Vec<PropertyReport> = props.iter().map(|p| run_property(*p, &cfg)).collect();
    let mut stderr = io::stderr().lock();
    let mut out = String::new();
    for r in &reports {
        let _ = writeln!(stderr, "{}", r.summary());
        out.push_str(&r.failure_lines());
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.ok()).map(|r| r.property.as_str()).collect();
    if failed.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::PropertyFailed(format!("property failed: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Check { files, lang, fuel } => {
            // Files are independent; each result is buffered and printed in
            // argument order.
            let results: Vec<Result<String, CliError>> = files
                .par_iter()
                .map(|path| {
                    let input = read_input(path, lang)?;
                    match input.lang {
                        Language::Cc => check_file::<SourceTerm>(&input, fuel),
                        Language::Cccc => check_file::<TargetTerm>(&input, fuel),
                    }
                })
                .collect();
            let mut out = String::new();
            let mut worst = 0;
            for r in results {
                match r {
                    Ok(s) => out.push_str(&s),
                    Err(e) => {
                        eprintln!("error: {e}");
                        worst = worst.max(e.exit_code());
                    }
                }
            }
            if worst == 0 {
                Ok(out)
            } else {
                print!("{out}");
                Err(CliError::Reported(worst))
            }
        }
        Command::Compile { file } => compile(&read_input(&file, None)?),
        Command::Normalize { file, lang, fuel } => {
            let input = read_input(&file, lang)?;
            match input.lang {
                Language::Cc => normalize::<SourceTerm>(&input, fuel),
                Language::Cccc => normalize::<TargetTerm>(&input, fuel),
            }
        }
        Command::Equiv { file, a, b, lang } => {
            let input = read_input(&file, lang)?;
            match input.lang {
                Language::Cc => equiv::<SourceTerm>(&input, &a, &b),
                Language::Cccc => equiv::<TargetTerm>(&input, &a, &b),
            }
        }
        Command::Decompile { file, strict_figures } => decompile(&read_input(&file, None)?, strict_figures),
        Command::Link { target, subst, fuel } => link_files(&read_input(&target, None)?, &read_input(&subst, None)?, fuel),
        Command::Prop { name, seed, iters, depth, env } => {
            let env_profile: EnvProfile = env.parse().map_err(CliError::Usage)?;
            prop(&name, GenConfig { seed, max_depth: depth, env_profile, iterations: iters })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if !matches!(e, CliError::Reported(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
