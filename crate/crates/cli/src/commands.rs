use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use soergel_core::bggsign::{assign_signs_with, SignChoice};
use soergel_core::complex::{build_complex, euler_characteristic, homology};
use soergel_core::parse::{parse_weight, parse_word};
use soergel_core::rootsys::DEFAULT_ROOT_BOUND;
use soergel_core::soergel::{
    compute_a, compute_d, soergel_table, stratify, table_csv, CharacterSpec, Engine, NCohomologyTable, OrbitSpec,
    TableDocument,
};
use soergel_core::theorems::{
    character_samples, check_appendix, check_corollary_tdlds, check_nonvanishing, check_serre_duality, check_w0,
    ggp_degrees, sweep, CharacterSelection, PatternSelection, Suite, SweepConfig, VerificationReport,
};
use soergel_core::weyl::{DotOptions, DEFAULT_GROUP_BOUND};
use soergel_core::{build_type_a, CompactSubsystem, ElementId, Error, RootData, RootSystem, Subset, Weight, WeylGroup};

use crate::{
    CaseArgs, CharactersArg, DumpComplexArgs, DumpSignsArgs, Format, GgpArgs, HasseArgs, PatternsArg, SuiteArg,
    SystemArgs, VerifyArgs,
};

const RANK_CEILING: usize = 8;
const GROUP_CEILING: usize = 40_320;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: u8,
}

fn input(message: impl Into<String>) -> CliError {
    CliError { message: message.into(), code: 2 }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) | Error::StarViolation(_) => 1,
            _ => 2,
        };
        CliError { message: e.to_string(), code }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

struct Loaded {
    rs: RootSystem,
    compact: CompactSubsystem,
    label: String,
    allow_large: bool,
}

fn load_system(args: &SystemArgs) -> CliResult<Loaded> {
    let (rs, doc_compact, label) = match (args.n, &args.root_data) {
        (Some(n), None) => {
            if n > RANK_CEILING && !args.allow_large {
                return Err(input(format!("n = {} exceeds the ceiling of {}; pass --allow-large", n, RANK_CEILING)));
            }
            let rs = build_type_a(n)?;
            (rs, None, format!("A{}", n.saturating_sub(1)))
        }
        (None, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {}", path.display(), e)))?;
            let doc = RootData::from_json(&text)?;
            let (rs, compact) = doc.build(DEFAULT_ROOT_BOUND)?;
            let label = if rs.is_type_a() {
                format!("A{}", rs.ambient_dim() - 1)
            } else {
                format!("rank {} in dimension {}", rs.rank(), rs.ambient_dim())
            };
            (rs, compact, label)
        }
        _ => return Err(input("give either --type A --n N or --root-data FILE")),
    };
    let compact = match (&args.pattern, doc_compact) {
        (Some(_), Some(_)) => return Err(input("compact roots given twice: --pattern and the root-data document")),
        (Some(p), None) => CompactSubsystem::from_signature(&rs, p)?,
        (None, Some(k)) => k,
        (None, None) => CompactSubsystem::empty(&rs),
    };
    Ok(Loaded { rs, compact, label, allow_large: args.allow_large })
}

fn group(loaded: &Loaded) -> CliResult<WeylGroup> {
    let bound = if loaded.allow_large { DEFAULT_GROUP_BOUND } else { GROUP_CEILING };
    let rs = &loaded.rs;
    if rs.is_type_a() && rs.ambient_dim() >= RANK_CEILING {
        let order: usize = (1..=rs.ambient_dim()).product();
        let n = rs.num_positive();
        let bytes = order * (4 * rs.roots().len() + 128 + 64 * n);
        eprintln!("note: |W| = {}, estimated memory {} MiB", order, bytes >> 20);
    }
    WeylGroup::generate_with_bound(rs, bound).map_err(|e| match e {
        Error::SizeBound { bound } => input(format!("Weyl group exceeds {} elements; pass --allow-large", bound)),
        other => other.into(),
    })
}

fn sign_choice(seed: Option<u64>) -> SignChoice {
    seed.map_or(SignChoice::Canonical, SignChoice::Random)
}

fn engine(loaded: &Loaded, seed: Option<u64>) -> CliResult<Engine> {
    let w = group(loaded)?;
    let signs = assign_signs_with(&w, sign_choice(seed))?;
    Ok(Engine::from_parts(w, signs))
}

fn lambda_of(rs: &RootSystem, text: Option<&str>) -> CliResult<Weight> {
    match text {
        Some(t) => {
            let w = parse_weight(t)?;
            if w.dim() != rs.ambient_dim() {
                return Err(input(format!("lambda has {} coordinates, system has {}", w.dim(), rs.ambient_dim())));
            }
            Ok(w)
        }
        None => Ok(rs.rho().neg()),
    }
}

fn character(rs: &RootSystem, lambda: Weight, allow_nondominant: bool) -> CliResult<CharacterSpec> {
    Ok(if allow_nondominant { CharacterSpec::unchecked(rs, lambda)? } else { CharacterSpec::new(rs, lambda)? })
}

fn element(w: &WeylGroup, word: &str) -> CliResult<ElementId> {
    Ok(w.resolve(&parse_word(word)?)?)
}

fn elements(w: &WeylGroup, list: &str) -> CliResult<Subset> {
    let ids = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| element(w, s))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Subset::from_ids(w, ids))
}

struct Case {
    loaded: Loaded,
    engine: Engine,
    orbit: OrbitSpec,
    character: CharacterSpec,
}

fn load_case(args: &CaseArgs) -> CliResult<Case> {
    let loaded = load_system(&args.system)?;
    let lambda = lambda_of(&loaded.rs, args.lambda.as_deref())?;
    let character = character(&loaded.rs, lambda, args.allow_nondominant)?;
    let engine = engine(&loaded, args.seed)?;
    let rep = element(engine.weyl(), &args.rep)?;
    let orbit = compute_a(engine.weyl(), &loaded.compact, rep)?;
    Ok(Case { loaded, engine, orbit, character })
}

fn evaluate(case: &Case) -> CliResult<NCohomologyTable> {
    Ok(soergel_table(&case.engine, &case.loaded.compact, &case.orbit, &case.character)?)
}

fn unsupported(command: &str, format: Format) -> CliError {
    input(format!("{} does not support --format {:?}", command, format).to_lowercase())
}

pub fn table(args: &CaseArgs) -> CliResult<Output> {
    let case = load_case(args)?;
    let table = evaluate(&case)?;
    let doc = TableDocument::new(
        case.loaded.label.clone(),
        case.engine.weyl(),
        &case.loaded.compact,
        &case.orbit,
        &case.character,
        &table,
    );
    let text = match args.format.unwrap_or(Format::Json) {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
        Format::Text => doc.to_text(),
        f @ Format::Dot => return Err(unsupported("table", f)),
    };
    Ok(Output::ok(text))
}

fn words(w: &WeylGroup, s: &Subset) -> Vec<String> {
    s.members().iter().map(|&x| w.word_string(x)).collect()
}

pub fn strata(args: &CaseArgs) -> CliResult<Output> {
    let case = load_case(args)?;
    let w = case.engine.weyl();
    let table = evaluate(&case)?;
    let d = compute_d(w, &case.character.lambda)?;
    let doc =
        TableDocument::new(case.loaded.label.clone(), w, &case.loaded.compact, &case.orbit, &case.character, &table);
    let text = match args.format.unwrap_or(Format::Json) {
        Format::Json => {
            let strata: Vec<Value> = table
                .strata
                .iter()
                .map(|s| json!({ "c": s.c, "elements": words(w, &s.elements), "homology": s.homology.dims() }))
                .collect();
            let value = json!({
                "system": doc.system,
                "pattern": doc.pattern,
                "compact_roots": doc.compact_roots,
                "lambda": doc.lambda,
                "orbit_rep": doc.orbit_rep,
                "dim_Q": doc.dim_q,
                "N": doc.n,
                "A": words(w, &case.orbit.coset),
                "D": words(w, &d),
                "strata": strata,
                "table": doc.table,
            });
            let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "A ({}): {}", case.orbit.coset.len(), words(w, &case.orbit.coset).join(" "));
            let _ = writeln!(out, "D ({}): {}", d.len(), words(w, &d).join(" "));
            for s in &table.strata {
                let _ =
                    writeln!(out, "c = {}: {}  homology {:?}", s.c, words(w, &s.elements).join(" "), s.homology.dims());
            }
            let _ = writeln!(out, "table {:?}", table.dims);
            out
        }
        f => return Err(unsupported("strata", f)),
    };
    Ok(Output::ok(text))
}

fn single_case_reports(args: &VerifyArgs, suites: &[Suite]) -> CliResult<Vec<VerificationReport>> {
    let loaded = load_system(&args.case.system)?;
    let engine = engine(&loaded, args.case.seed)?;
    let rs = engine.root_system();
    let lambdas = match &args.case.lambda {
        Some(t) => vec![lambda_of(rs, Some(t))?],
        None => character_samples(rs),
    };
    let rep = element(engine.weyl(), &args.case.rep)?;
    let k = &loaded.compact;
    let mut reports = Vec::new();
    for suite in suites {
        match suite {
            Suite::Nonvanishing => reports.extend(lambdas.iter().map(|l| check_nonvanishing(&engine, k, l))),
            Suite::Serre => reports.extend(lambdas.iter().map(|l| check_serre_duality(&engine, k, rep, l))),
            Suite::Corollary => reports.push(check_corollary_tdlds(&engine, k)),
            Suite::Appendix => reports.push(check_appendix(&engine, k, &lambdas)),
            Suite::W0 => reports.push(check_w0(&engine, k)),
            Suite::Ggp => {
                if suites.len() == 1 {
                    return Err(input("the ggp suite takes signatures; use `soergel ggp A B` or a sweep"));
                }
            }
        }
    }
    Ok(reports)
}

pub fn verify(args: &VerifyArgs) -> CliResult<Output> {
    let suites: Vec<Suite> = match args.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Nonvanishing => vec![Suite::Nonvanishing],
        SuiteArg::Serre => vec![Suite::Serre],
        SuiteArg::Corollary => vec![Suite::Corollary],
        SuiteArg::Appendix => vec![Suite::Appendix],
        SuiteArg::W0 => vec![Suite::W0],
        SuiteArg::Ggp => vec![Suite::Ggp],
    };
    let single = args.case.system.n.is_some() || args.case.system.root_data.is_some();
    let reports = if single {
        single_case_reports(args, &suites)?
    } else {
        if args.max_n > RANK_CEILING && !args.case.system.allow_large {
            return Err(input(format!(
                "--max-n {} exceeds the ceiling of {}; pass --allow-large",
                args.max_n, RANK_CEILING
            )));
        }
        let config = SweepConfig {
            min_n: args.min_n,
            max_n: args.max_n,
            suites,
            patterns: match args.patterns {
                PatternsArg::All => PatternSelection::All,
                PatternsArg::Alternating => PatternSelection::NoCompactSimple,
            },
            characters: match args.characters {
                CharactersArg::Tdlds => CharacterSelection::Tdlds,
                CharactersArg::TdldsZero => CharacterSelection::TdldsAndZero,
                CharactersArg::Samples => CharacterSelection::Samples,
            },
            signs: sign_choice(args.case.seed),
        };
        sweep(&config)
    };
    let failed = reports.iter().filter(|r| r.failed()).count();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let skipped = reports.len() - failed - passed;
    let text = match args.case.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&r.to_text(args.timings));
                out.push('\n');
            }
            let _ = writeln!(out, "summary: passed={} failed={} skipped={}", passed, failed, skipped);
            out
        }
        Format::Json => {
            let mut list = serde_json::to_value(&reports).expect("reports serialize");
            if !args.timings {
                for r in list.as_array_mut().expect("array") {
                    r.as_object_mut().expect("object").remove("millis");
                }
            }
            let value = json!({
                "reports": list,
                "summary": { "passed": passed, "failed": failed, "skipped": skipped },
            });
            let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
            s.push('\n');
            s
        }
        f => return Err(unsupported("verify", f)),
    };
    Ok(Output { text, code: if failed > 0 { 1 } else { 0 } })
}

pub fn hasse(args: &HasseArgs) -> CliResult<Output> {
    let loaded = load_system(&args.system)?;
    let w = group(&loaded)?;
    let highlight = match (&args.highlight, args.stratum) {
        (Some(list), _) => Some(elements(&w, list)?),
        (None, Some(c)) => {
            let lambda = lambda_of(&loaded.rs, args.lambda.as_deref())?;
            let rep = element(&w, &args.rep)?;
            let orbit = compute_a(&w, &loaded.compact, rep)?;
            let d = compute_d(&w, &lambda)?;
            let dec = stratify(&w, &orbit.coset, &d, &loaded.compact)?;
            Some(dec.strata.get(&c).cloned().unwrap_or_else(|| Subset::empty(&w)))
        }
        (None, None) => None,
    };
    let compact = (!loaded.compact.is_empty()).then_some(&loaded.compact);
    let dot = w.to_dot(&DotOptions { compact, highlight: highlight.as_ref() })?;
    Ok(Output::ok(dot))
}

pub fn ggp(args: &GgpArgs) -> CliResult<Output> {
    let out = ggp_degrees(args.a, args.b, sign_choice(args.seed))?;
    let code = if out.report.failed() { 1 } else { 0 };
    let text = match args.format.unwrap_or(Format::Text) {
        Format::Text => {
            let n = out.a + out.b;
            let ok = |b: bool| if b { "ok" } else { "FAILED" };
            let mut s = String::new();
            let _ = writeln!(s, "signature ({},{}), n = {}", out.a, out.b, n);
            let _ = writeln!(s, "q = ab = {}", out.q);
            let _ = writeln!(s, "U({}) pattern {}, U({}) pattern {}", n + 1, out.pattern_n1, n, out.pattern_n);
            let _ = writeln!(s, "dim_Q(n+1) = {}: {}", out.dim_q_n1, ok(out.dim_q_n1 == out.q));
            let _ = writeln!(
                s,
                "N_n - dim_Q(n) = {} - {} = {}: {}",
                out.num_positive_n,
                out.dim_q_n,
                out.num_positive_n - out.dim_q_n,
                ok(out.num_positive_n - out.dim_q_n == out.q)
            );
            let nz = |t: &[usize]| t.get(out.q).copied().unwrap_or(0) > 0;
            let _ = writeln!(s, "U(n+1) table {:?}: {} at q", out.table_n1, ok(nz(&out.table_n1)));
            let _ = writeln!(s, "U(n) opposite table {:?}: {} at q", out.table_n, ok(nz(&out.table_n)));
            let _ = writeln!(s, "verdict: {}", out.report.verdict);
            s
        }
        Format::Json => {
            let mut value = serde_json::to_value(&out).expect("ggp outcome serializes");
            value["report"].as_object_mut().expect("object").remove("millis");
            let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
            s.push('\n');
            s
        }
        f => return Err(unsupported("ggp", f)),
    };
    Ok(Output { text, code })
}

pub fn dump_signs(args: &DumpSignsArgs) -> CliResult<Output> {
    let loaded = load_system(&args.system)?;
    let engine = engine(&loaded, args.seed)?;
    let w = engine.weyl();
    let text = match args.format.unwrap_or(Format::Text) {
        Format::Text => engine.signs().to_text(w),
        Format::Json => {
            let edges: Vec<Value> = engine
                .signs()
                .edges()
                .iter()
                .map(|e| json!({ "upper": w.word_string(e.upper), "lower": w.word_string(e.lower), "sign": e.sign }))
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(edges)).expect("json value serializes");
            s.push('\n');
            s
        }
        f => return Err(unsupported("dump-signs", f)),
    };
    Ok(Output::ok(text))
}

pub fn dump_complex(args: &DumpComplexArgs) -> CliResult<Output> {
    let case = load_case(&args.case)?;
    let w = case.engine.weyl();
    let subset = match (&args.elements, args.stratum) {
        (Some(list), _) => elements(w, list)?,
        (None, Some(c)) => {
            let d = compute_d(w, &case.character.lambda)?;
            let dec = stratify(w, &case.orbit.coset, &d, &case.loaded.compact)?;
            dec.strata.get(&c).cloned().ok_or_else(|| input(format!("no stratum with c = {}", c)))?
        }
        (None, None) => Subset::full(w),
    };
    let complex = build_complex(w, &subset, case.engine.signs()).map_err(|e| match e {
        Error::StarViolation(m) if args.elements.is_some() => input(m),
        other => other.into(),
    })?;
    let h = homology(&complex);
    let euler = euler_characteristic(&complex);
    let text = match args.case.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = String::new();
            for q in 0..=complex.top_degree() {
                let basis: Vec<String> = complex.basis(q).iter().map(|&x| w.word_string(x)).collect();
                let _ = writeln!(s, "C^{}: {}", q, basis.join(" "));
            }
            for (q, d) in complex.differentials().iter().enumerate() {
                let entries: Vec<String> =
                    d.triplets().iter().map(|(r, c, v)| format!("({},{},{:+})", r, c, v)).collect();
                let _ = writeln!(s, "d_{} {}x{}: {}", q, d.rows(), d.cols(), entries.join(" "));
            }
            let _ = writeln!(s, "homology {:?}", h.dims());
            let _ = writeln!(s, "euler {}", euler);
            s
        }
        Format::Json => {
            let basis: Vec<Vec<String>> = (0..=complex.top_degree())
                .map(|q| complex.basis(q).iter().map(|&x| w.word_string(x)).collect())
                .collect();
            let differentials: Vec<Value> = complex
                .differentials()
                .iter()
                .map(|d| json!({ "rows": d.rows(), "cols": d.cols(), "entries": d.triplets() }))
                .collect();
            let value = json!({
                "basis": basis,
                "differentials": differentials,
                "homology": h.dims(),
                "euler": euler,
            });
            let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
            s.push('\n');
            s
        }
        Format::Csv => table_csv(h.dims()),
        f => return Err(unsupported("dump-complex", f)),
    };
    Ok(Output::ok(text))
}
