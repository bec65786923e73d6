//! Executable checks: nonvanishing in degree `dim_Q`, Serre duality, the
//! TDLDS degree pair, the compact-length lemma with the zero-or-two condition
//! on strata, `w0` symmetries, and the unitary degree coincidence `q = ab`.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bggsign::SignChoice;
use crate::error::{Error, Result};
use crate::rootsys::{build_type_a, CompactSubsystem, RootSystem, Weight};
use crate::soergel::{
    compute_a, compute_d, coset_representatives, opposite, soergel_table, stratify, CharacterSpec, Engine,
    NCohomologyTable,
};
use crate::weyl::ElementId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: String,
    pub verdict: Verdict,
    /// Input echo plus the failing quantity; present exactly when the verdict is `Fail`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Reason for a skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub millis: u128,
}

impl VerificationReport {
    fn finish(check: &str, params: String, started: Instant, outcome: Outcome) -> Self {
        let (verdict, counterexample, note) = match outcome {
            Outcome::Pass => (Verdict::Pass, None, None),
            Outcome::Fail(detail) => (Verdict::Fail, Some(format!("{}: {}", params, detail)), None),
            Outcome::Skip(reason) => (Verdict::Skipped, None, Some(reason)),
        };
        VerificationReport {
            check: check.to_string(),
            params,
            verdict,
            counterexample,
            note,
            millis: started.elapsed().as_millis(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// One `key=value` line, plus `counterexample=` / `note=` fields when
    /// present; `millis=` only when `timings` is set, so that output is
    /// reproducible byte for byte otherwise.
    pub fn to_text(&self, timings: bool) -> String {
        let mut line = format!("check={} params=[{}] verdict={}", self.check, self.params, self.verdict);
        if let Some(c) = &self.counterexample {
            line.push_str(&format!(" counterexample=[{}]", c));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!(" note=[{}]", n));
        }
        if timings {
            line.push_str(&format!(" millis={}", self.millis));
        }
        line
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

fn fail_on_err<T>(r: Result<T>) -> std::result::Result<T, Outcome> {
    r.map_err(|e| Outcome::Fail(e.to_string()))
}

fn compact_label(rs: &RootSystem, compact: &CompactSubsystem) -> String {
    match compact.pattern() {
        Some(p) => format!("pattern={}", p),
        None => {
            let roots: Vec<String> = compact.roots(rs).iter().map(ToString::to_string).collect();
            format!("compact={{{}}}", roots.join(","))
        }
    }
}

fn system_label(rs: &RootSystem) -> String {
    if rs.is_type_a() {
        format!("n={}", rs.ambient_dim())
    } else {
        format!("rank={} dim={}", rs.rank(), rs.ambient_dim())
    }
}

fn table_for(
    engine: &Engine,
    compact: &CompactSubsystem,
    rep: ElementId,
    character: &CharacterSpec,
) -> Result<NCohomologyTable> {
    let orbit = compute_a(engine.weyl(), compact, rep)?;
    soergel_table(engine, compact, &orbit, character)
}

/// With no compact simple root and `lambda + rho` dominant integral, the
/// table of the orbit through the identity is nonzero in degree `dim_Q`, and
/// its `c = 0` stratum contains `id` but no element of length one.
pub fn check_nonvanishing(engine: &Engine, compact: &CompactSubsystem, lambda: &Weight) -> VerificationReport {
    let started = Instant::now();
    let rs = engine.root_system();
    let params = format!("{} {} lambda={} rep=id", system_label(rs), compact_label(rs, compact), lambda);
    let outcome = (|| {
        if compact.meets_simple(rs) {
            return Err(Outcome::Skip("a simple root is compact".into()));
        }
        let character = match CharacterSpec::new(rs, lambda.clone()) {
            Ok(c) => c,
            Err(e) => return Err(Outcome::Skip(e.to_string())),
        };
        let w = engine.weyl();
        let table = fail_on_err(table_for(engine, compact, w.identity(), &character))?;
        let q = compact.num_positive();
        if table.dims[q] == 0 {
            return Err(Outcome::Fail(format!("table {:?} vanishes at q = {}", table.dims, q)));
        }
        let Some(zero) = table.strata.iter().find(|s| s.c == 0) else {
            return Err(Outcome::Fail("no c = 0 stratum".into()));
        };
        if !zero.elements.contains(w.identity()) {
            return Err(Outcome::Fail("c = 0 stratum misses id".into()));
        }
        if let Some(&x) = zero.elements.members().iter().find(|&&x| w.length(x) == 1) {
            return Err(Outcome::Fail(format!("c = 0 stratum contains {} of length 1", w.word_string(x))));
        }
        Ok(())
    })();
    VerificationReport::finish("nonvanishing", params, started, outcome.err().unwrap_or(Outcome::Pass))
}

/// The table reversed in degree equals the table of the opposite datum.
pub fn check_serre_duality(
    engine: &Engine,
    compact: &CompactSubsystem,
    rep: ElementId,
    lambda: &Weight,
) -> VerificationReport {
    let started = Instant::now();
    let rs = engine.root_system();
    let w = engine.weyl();
    let params =
        format!("{} {} lambda={} rep={}", system_label(rs), compact_label(rs, compact), lambda, w.word_string(rep));
    let outcome = (|| {
        let character = match CharacterSpec::new(rs, lambda.clone()) {
            Ok(c) => c,
            Err(e) => return Err(Outcome::Skip(e.to_string())),
        };
        let orbit = fail_on_err(compute_a(w, compact, rep))?;
        let table = fail_on_err(soergel_table(engine, compact, &orbit, &character))?;
        let (orbit_op, character_op) = fail_on_err(opposite(w, compact, &orbit, &character))?;
        let table_op = fail_on_err(soergel_table(engine, compact, &orbit_op, &character_op))?;
        if table.reversed() != table_op.dims {
            return Err(Outcome::Fail(format!(
                "reversed table {:?} but opposite table {:?} (opposite rep {}, lambda {})",
                table.reversed(),
                table_op.dims,
                w.word_string(orbit_op.rep),
                character_op.lambda
            )));
        }
        Ok(())
    })();
    VerificationReport::finish("serre", params, started, outcome.err().unwrap_or(Outcome::Pass))
}

/// For `lambda = -rho`: the identity-orbit table at `dim_Q` and the opposite
/// table at `N - dim_Q` are equal and nonzero.
pub fn check_corollary_tdlds(engine: &Engine, compact: &CompactSubsystem) -> VerificationReport {
    let started = Instant::now();
    let rs = engine.root_system();
    let w = engine.weyl();
    let params = format!("{} {}", system_label(rs), compact_label(rs, compact));
    let outcome = (|| {
        if compact.meets_simple(rs) {
            return Err(Outcome::Skip("a simple root is compact".into()));
        }
        let character = fail_on_err(CharacterSpec::new(rs, rs.rho().neg()))?;
        let orbit = fail_on_err(compute_a(w, compact, w.identity()))?;
        let table = fail_on_err(soergel_table(engine, compact, &orbit, &character))?;
        let (orbit_op, character_op) = fail_on_err(opposite(w, compact, &orbit, &character))?;
        let table_op = fail_on_err(soergel_table(engine, compact, &orbit_op, &character_op))?;
        let q = compact.num_positive();
        let q_op = rs.num_positive() - q;
        let (h, h_op) = (table.dims[q], table_op.dims[q_op]);
        if h == 0 || h_op == 0 || h != h_op {
            return Err(Outcome::Fail(format!(
                "dim H^{} = {} on {:?}, opposite dim H^{} = {} on {:?}",
                q, h, table.dims, q_op, h_op, table_op.dims
            )));
        }
        Ok(())
    })();
    VerificationReport::finish("corollary", params, started, outcome.err().unwrap_or(Outcome::Pass))
}

/// Covers along compact reflections raise `l_K` by exactly one, and every
/// stratum of every coset against every character in `lambdas` satisfies the
/// zero-or-two condition.
pub fn check_appendix(engine: &Engine, compact: &CompactSubsystem, lambdas: &[Weight]) -> VerificationReport {
    let started = Instant::now();
    let rs = engine.root_system();
    let w = engine.weyl();
    let params = format!("{} {} characters={}", system_label(rs), compact_label(rs, compact), lambdas.len());
    let outcome = (|| {
        let lk = fail_on_err(w.compact_lengths(compact))?;
        for c in w.covers() {
            if compact.contains(c.root) && lk[c.upper] != lk[c.lower] + 1 {
                return Err(Outcome::Fail(format!(
                    "compact cover {} -> {} has l_K {} -> {}",
                    w.word_string(c.upper),
                    w.word_string(c.lower),
                    lk[c.upper],
                    lk[c.lower]
                )));
            }
        }
        let reps = fail_on_err(coset_representatives(w, compact))?;
        for lambda in lambdas {
            let d = fail_on_err(compute_d(w, lambda))?;
            for &rep in &reps {
                let orbit = fail_on_err(compute_a(w, compact, rep))?;
                if let Err(e) = stratify(w, &orbit.coset, &d, compact) {
                    return Err(Outcome::Fail(format!("rep {} lambda {}: {}", w.word_string(rep), lambda, e)));
                }
            }
        }
        Ok(())
    })();
    VerificationReport::finish("appendix", params, started, outcome.err().unwrap_or(Outcome::Pass))
}

/// `l(a w0) = N - l(a)`, `l_K(a w0) = dim_Q - l_K(a)`, and edge reversal under `w0`.
pub fn check_w0(engine: &Engine, compact: &CompactSubsystem) -> VerificationReport {
    let started = Instant::now();
    let rs = engine.root_system();
    let params = format!("{} {}", system_label(rs), compact_label(rs, compact));
    let outcome = match engine.weyl().w0_properties_report(compact) {
        Ok(r) => match r.counterexample {
            None => Outcome::Pass,
            Some(c) => Outcome::Fail(c),
        },
        Err(e) => Outcome::Fail(e.to_string()),
    };
    VerificationReport::finish("w0", params, started, outcome)
}

/// Alternating pattern with `plus` signs `+` and `minus` signs `-`, starting
/// with the more frequent sign (`+` on ties); no two adjacent signs agree.
pub fn alternating_pattern(plus: usize, minus: usize) -> Result<String> {
    if plus.abs_diff(minus) > 1 || plus + minus == 0 {
        return Err(Error::InvalidPattern(format!("no alternating pattern with signature ({},{})", plus, minus)));
    }
    let (first, second) = if minus > plus { ('-', '+') } else { ('+', '-') };
    Ok((0..plus + minus).map(|i| if i % 2 == 0 { first } else { second }).collect())
}

/// Every sign pattern of length `n`, `+` before `-` in lexicographic order.
pub fn all_patterns(n: usize) -> Vec<String> {
    (0..1u64 << n).map(|m| (0..n).map(|i| if m >> (n - 1 - i) & 1 == 1 { '-' } else { '+' }).collect()).collect()
}

/// `-rho`, `0`, and for type A each `fundamental weight - rho`.
pub fn character_samples(rs: &RootSystem) -> Vec<Weight> {
    let mut out = vec![rs.rho().neg(), Weight::zero(rs.ambient_dim())];
    if rs.is_type_a() {
        for i in 1..rs.ambient_dim() {
            let w = rs.type_a_fundamental_weight(i).expect("type A");
            out.push(w.checked_sub(rs.rho()).expect("same dimension"));
        }
    }
    out
}

/// Data for the unitary degree coincidence at signature `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GgpOutcome {
    pub a: usize,
    pub b: usize,
    /// `q = ab`.
    pub q: usize,
    pub pattern_n: String,
    pub pattern_n1: String,
    pub dim_q_n: usize,
    pub dim_q_n1: usize,
    /// `N` for `U(a + b)`.
    pub num_positive_n: usize,
    /// Identity-orbit table for `U(a + b + 1)` at `lambda = -rho`.
    pub table_n1: Vec<usize>,
    /// Opposite table for `U(a + b)` at `lambda = -rho`.
    pub table_n: Vec<usize>,
    pub report: VerificationReport,
}

/// `dim_Q(n + 1) = ab = N_n - dim_Q(n)` and both TDLDS tables are nonzero at `q = ab`.
/// The `U(n)` side uses the opposite datum, whose nonzero degree is `N_n - dim_Q(n)`.
pub fn ggp_degrees(a: usize, b: usize, choice: SignChoice) -> Result<GgpOutcome> {
    if !(a == b || a == b + 1) || b == 0 {
        return Err(Error::NotQuasiSplit { a, b });
    }
    let started = Instant::now();
    let n = a + b;
    let pattern_n = alternating_pattern(a, b)?;
    let pattern_n1 = alternating_pattern(a, b + 1)?;
    let rs_n = build_type_a(n)?;
    let rs_n1 = build_type_a(n + 1)?;
    let (engine_n, engine_n1) =
        rayon::join(|| Engine::with_signs(&rs_n, choice), || Engine::with_signs(&rs_n1, choice));
    let (engine_n, engine_n1) = (engine_n?, engine_n1?);
    let k_n = CompactSubsystem::from_signature(&rs_n, &pattern_n)?;
    let k_n1 = CompactSubsystem::from_signature(&rs_n1, &pattern_n1)?;
    let q = a * b;
    let dim_q_n = k_n.num_positive();
    let dim_q_n1 = k_n1.num_positive();
    let num_positive_n = rs_n.num_positive();

    let ch_n1 = CharacterSpec::new(&rs_n1, rs_n1.rho().neg())?;
    let table_n1 = table_for(&engine_n1, &k_n1, engine_n1.weyl().identity(), &ch_n1)?.dims;

    let w = engine_n.weyl();
    let ch_n = CharacterSpec::new(&rs_n, rs_n.rho().neg())?;
    let orbit_n = compute_a(w, &k_n, w.identity())?;
    let (orbit_op, ch_op) = opposite(w, &k_n, &orbit_n, &ch_n)?;
    let table_n = soergel_table(&engine_n, &k_n, &orbit_op, &ch_op)?.dims;

    let params = format!("a={} b={} q={}", a, b, q);
    let mut problems = Vec::new();
    if dim_q_n1 != q {
        problems.push(format!("dim_Q(n+1) = {} != ab", dim_q_n1));
    }
    if num_positive_n - dim_q_n != q {
        problems.push(format!("N_n - dim_Q(n) = {} - {} != ab", num_positive_n, dim_q_n));
    }
    if table_n1.get(q).copied().unwrap_or(0) == 0 {
        problems.push(format!("U(n+1) table {:?} vanishes at q", table_n1));
    }
    if table_n.get(q).copied().unwrap_or(0) == 0 {
        problems.push(format!("U(n) opposite table {:?} vanishes at q", table_n));
    }
    let outcome = if problems.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("patterns {} / {}: {}", pattern_n, pattern_n1, problems.join("; ")))
    };
    let report = VerificationReport::finish("ggp", params, started, outcome);
    Ok(GgpOutcome { a, b, q, pattern_n, pattern_n1, dim_q_n, dim_q_n1, num_positive_n, table_n1, table_n, report })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Nonvanishing,
    Serre,
    Corollary,
    Appendix,
    W0,
    Ggp,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Nonvanishing, Suite::Serre, Suite::Corollary, Suite::Appendix, Suite::W0, Suite::Ggp];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Nonvanishing => "nonvanishing",
            Suite::Serre => "serre",
            Suite::Corollary => "corollary",
            Suite::Appendix => "appendix",
            Suite::W0 => "w0",
            Suite::Ggp => "ggp",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternSelection {
    All,
    /// Patterns with no compact simple root (alternating signs).
    NoCompactSimple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterSelection {
    /// `lambda = -rho` only.
    Tdlds,
    /// `-rho` and `0`.
    TdldsAndZero,
    /// The full sample set of `character_samples`.
    Samples,
}

/// A sweep over type A systems `n = min_n..=max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub min_n: usize,
    pub max_n: usize,
    pub suites: Vec<Suite>,
    pub patterns: PatternSelection,
    pub characters: CharacterSelection,
    pub signs: SignChoice,
}

impl SweepConfig {
    pub fn new(max_n: usize, suites: Vec<Suite>) -> Self {
        SweepConfig {
            min_n: 1,
            max_n,
            suites,
            patterns: PatternSelection::All,
            characters: CharacterSelection::Samples,
            signs: SignChoice::Canonical,
        }
    }
}

enum Job {
    Nonvanishing { n: usize, pattern: String, lambda: Weight },
    Serre { n: usize, pattern: String, rep: ElementId, lambda: Weight },
    Corollary { n: usize, pattern: String },
    Appendix { n: usize, pattern: String },
    W0 { n: usize, pattern: String },
    Ggp { a: usize, b: usize },
}

fn selected_characters(rs: &RootSystem, sel: CharacterSelection) -> Vec<Weight> {
    match sel {
        CharacterSelection::Tdlds => vec![rs.rho().neg()],
        CharacterSelection::TdldsAndZero => vec![rs.rho().neg(), Weight::zero(rs.ambient_dim())],
        CharacterSelection::Samples => character_samples(rs),
    }
}

/// Runs every selected check over the configured range. Reports come back
/// in a fixed order: by suite, then `n`, pattern, orbit and character.
/// Failures are collected; an engine that cannot be built is reported as a
/// failed check for its `n`.
pub fn sweep(config: &SweepConfig) -> Vec<VerificationReport> {
    if config.suites.is_empty() || config.min_n > config.max_n {
        return Vec::new();
    }
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();

    let ns: Vec<usize> = (config.min_n.max(1)..=config.max_n).collect();
    let needs_engines = suites.iter().any(|&s| s != Suite::Ggp);
    let engines: Vec<(usize, Result<Engine>)> = if needs_engines {
        ns.par_iter().map(|&n| (n, build_type_a(n).and_then(|rs| Engine::with_signs(&rs, config.signs)))).collect()
    } else {
        Vec::new()
    };

    let mut reports_by_slot: Vec<Option<VerificationReport>> = Vec::new();
    let mut jobs: Vec<(usize, Job)> = Vec::new();
    for &suite in &suites {
        if suite == Suite::Ggp {
            for b in 1..=config.max_n {
                for a in [b, b + 1] {
                    if a + b < config.max_n && a + b >= config.min_n {
                        jobs.push((reports_by_slot.len(), Job::Ggp { a, b }));
                        reports_by_slot.push(None);
                    }
                }
            }
            continue;
        }
        for (n, engine) in &engines {
            let engine = match engine {
                Ok(e) => e,
                Err(e) => {
                    reports_by_slot.push(Some(VerificationReport::finish(
                        suite.name(),
                        format!("n={}", n),
                        Instant::now(),
                        Outcome::Fail(e.to_string()),
                    )));
                    continue;
                }
            };
            let rs = engine.root_system();
            let lambdas = selected_characters(rs, config.characters);
            for pattern in all_patterns(*n) {
                let compact = match CompactSubsystem::from_signature(rs, &pattern) {
                    Ok(k) => k,
                    Err(_) => continue,
                };
                let no_compact_simple = !compact.meets_simple(rs);
                if config.patterns == PatternSelection::NoCompactSimple && !no_compact_simple {
                    continue;
                }
                let mut push = |job: Job| {
                    jobs.push((reports_by_slot.len(), job));
                    reports_by_slot.push(None);
                };
                match suite {
                    Suite::Nonvanishing if no_compact_simple => {
                        for lambda in &lambdas {
                            push(Job::Nonvanishing { n: *n, pattern: pattern.clone(), lambda: lambda.clone() });
                        }
                    }
                    Suite::Corollary if no_compact_simple => push(Job::Corollary { n: *n, pattern: pattern.clone() }),
                    Suite::Serre => {
                        let reps = coset_representatives(engine.weyl(), &compact).unwrap_or_default();
                        for rep in reps {
                            for lambda in &lambdas {
                                push(Job::Serre { n: *n, pattern: pattern.clone(), rep, lambda: lambda.clone() });
                            }
                        }
                    }
                    Suite::Appendix => push(Job::Appendix { n: *n, pattern: pattern.clone() }),
                    Suite::W0 => push(Job::W0 { n: *n, pattern: pattern.clone() }),
                    _ => {}
                }
            }
        }
    }

    let engine_for = |n: usize| -> &Engine {
        engines.iter().find(|(m, _)| *m == n).and_then(|(_, e)| e.as_ref().ok()).expect("engine built above")
    };
    let compact_for = |n: usize, pattern: &str| -> CompactSubsystem {
        CompactSubsystem::from_signature(engine_for(n).root_system(), pattern).expect("pattern validated above")
    };
    let done: Vec<(usize, VerificationReport)> = jobs
        .into_par_iter()
        .map(|(slot, job)| {
            let report = match job {
                Job::Nonvanishing { n, pattern, lambda } => {
                    check_nonvanishing(engine_for(n), &compact_for(n, &pattern), &lambda)
                }
                Job::Serre { n, pattern, rep, lambda } => {
                    check_serre_duality(engine_for(n), &compact_for(n, &pattern), rep, &lambda)
                }
                Job::Corollary { n, pattern } => check_corollary_tdlds(engine_for(n), &compact_for(n, &pattern)),
                Job::Appendix { n, pattern } => {
                    let e = engine_for(n);
                    check_appendix(
                        e,
                        &compact_for(n, &pattern),
                        &selected_characters(e.root_system(), config.characters),
                    )
                }
                Job::W0 { n, pattern } => check_w0(engine_for(n), &compact_for(n, &pattern)),
                Job::Ggp { a, b } => match ggp_degrees(a, b, config.signs) {
                    Ok(out) => out.report,
                    Err(e) => VerificationReport::finish(
                        "ggp",
                        format!("a={} b={}", a, b),
                        Instant::now(),
                        Outcome::Fail(e.to_string()),
                    ),
                },
            };
            (slot, report)
        })
        .collect();
    for (slot, report) in done {
        reports_by_slot[slot] = Some(report);
    }
    reports_by_slot.into_iter().map(|r| r.expect("every slot filled")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(n: usize) -> Engine {
        Engine::new(&build_type_a(n).unwrap()).unwrap()
    }

    fn compact(e: &Engine, p: &str) -> CompactSubsystem {
        CompactSubsystem::from_signature(e.root_system(), p).unwrap()
    }

    #[test]
    fn patterns_and_samples() {
        assert_eq!(all_patterns(2), vec!["++", "+-", "-+", "--"]);
        assert_eq!(all_patterns(0), vec![""]);
        assert_eq!(alternating_pattern(2, 1).unwrap(), "+-+");
        assert_eq!(alternating_pattern(1, 2).unwrap(), "-+-");
        assert_eq!(alternating_pattern(2, 2).unwrap(), "+-+-");
        assert!(alternating_pattern(3, 1).is_err());
        let rs = build_type_a(3).unwrap();
        let s = character_samples(&rs);
        assert_eq!(s.len(), 4);
        assert_eq!(s[2], Weight::from_integers(&[0, 0, 1]));
    }

    #[test]
    fn nonvanishing_examples() {
        for (n, p) in [(3, "+-+"), (2, "+-"), (4, "+-+-")] {
            let e = engine(n);
            let r = check_nonvanishing(&e, &compact(&e, p), &e.root_system().rho().neg());
            assert!(r.passed(), "{}", r.to_text(false));
        }
        let e = engine(3);
        let r = check_nonvanishing(&e, &compact(&e, "++-"), &e.root_system().rho().neg());
        assert_eq!(r.verdict, Verdict::Skipped);
        let r = check_nonvanishing(&e, &compact(&e, "+-+"), &Weight::from_integers(&[-5, 0, 0]));
        assert_eq!(r.verdict, Verdict::Skipped);
    }

    #[test]
    fn serre_examples() {
        let e = engine(3);
        let rs = e.root_system();
        assert!(check_serre_duality(&e, &compact(&e, "+-+"), 0, &rs.rho().neg()).passed());
        let empty = CompactSubsystem::empty(rs);
        for x in 0..6 {
            assert!(check_serre_duality(&e, &empty, x, &rs.rho().neg()).passed());
        }
        let e4 = engine(4);
        assert!(check_serre_duality(&e4, &compact(&e4, "+-+-"), 0, &Weight::zero(4)).passed());
    }

    #[test]
    fn corollary_examples() {
        for (n, p) in [(3, "+-+"), (2, "+-"), (5, "+-+-+")] {
            let e = engine(n);
            assert!(check_corollary_tdlds(&e, &compact(&e, p)).passed());
        }
    }

    #[test]
    fn appendix_and_w0_examples() {
        let e = engine(3);
        let rs = e.root_system();
        let k13 = CompactSubsystem::from_roots(
            rs,
            &[crate::rootsys::Root::new(vec![1, 0, -1]), crate::rootsys::Root::new(vec![-1, 0, 1])],
        )
        .unwrap();
        assert!(check_appendix(&e, &k13, &character_samples(rs)).passed());
        let e4 = engine(4);
        for p in all_patterns(4) {
            let k = compact(&e4, &p);
            assert!(check_appendix(&e4, &k, &character_samples(e4.root_system())).passed());
            assert!(check_w0(&e4, &k).passed());
        }
    }

    #[test]
    fn ggp_examples() {
        let g = ggp_degrees(1, 1, SignChoice::Canonical).unwrap();
        assert_eq!((g.q, g.dim_q_n1, g.num_positive_n - g.dim_q_n), (1, 1, 1));
        assert!(g.report.passed());
        assert_eq!(g.table_n, vec![0, 1]);
        let g = ggp_degrees(2, 1, SignChoice::Canonical).unwrap();
        assert_eq!((g.q, g.dim_q_n1, g.num_positive_n - g.dim_q_n), (2, 2, 2));
        assert!(g.report.passed());
        let g = ggp_degrees(2, 2, SignChoice::Canonical).unwrap();
        assert_eq!((g.q, g.dim_q_n1, g.num_positive_n - g.dim_q_n), (4, 4, 4));
        assert!(g.report.passed());
        assert!(matches!(ggp_degrees(3, 1, SignChoice::Canonical), Err(Error::NotQuasiSplit { a: 3, b: 1 })));
    }

    #[test]
    fn sweep_small_all_pass_and_is_ordered() {
        let mut config = SweepConfig::new(4, Suite::ALL.to_vec());
        config.characters = CharacterSelection::TdldsAndZero;
        let reports = sweep(&config);
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| !r.failed()), "{:?}", reports.iter().find(|r| r.failed()));
        let again = sweep(&config);
        let strip = |rs: &[VerificationReport]| rs.iter().map(|r| r.to_text(false)).collect::<Vec<_>>();
        assert_eq!(strip(&reports), strip(&again));
        assert!(sweep(&SweepConfig::new(4, Vec::new())).is_empty());
    }

    #[test]
    fn report_text_format() {
        let e = engine(2);
        let r = check_corollary_tdlds(&e, &compact(&e, "+-"));
        assert_eq!(r.to_text(false), "check=corollary params=[n=2 pattern=+-] verdict=pass");
        assert!(r.to_text(true).contains(" millis="));
    }
}
