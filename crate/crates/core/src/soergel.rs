//! The sets `A` and `D`, their strata `V(A, D, c)`, and the n-cohomology
//! table obtained by summing stratum homologies with a degree shift:
//!
//! `dim H^q = sum_c dim H^{2c + dim_Q - q} V(A, D, c)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bggsign::{assign_signs_with, SignAssignment, SignChoice};
use crate::complex::{build_complex, check_star, homology, CohomologyDims, GradedComplex};
use crate::error::{Error, Result};
use crate::rootsys::{CompactSubsystem, RootSystem, Weight, WeightClass};
use crate::weyl::{ElementId, Subset, WeylGroup};

/// A Weyl group together with one valid sign assignment on all of it.
#[derive(Debug)]
pub struct Engine {
    weyl: WeylGroup,
    signs: SignAssignment,
}

impl Engine {
    /// Enumerates `W` and solves for the canonical signs.
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_signs(rs, SignChoice::Canonical)
    }

    pub fn with_signs(rs: &RootSystem, choice: SignChoice) -> Result<Self> {
        let weyl = WeylGroup::generate(rs)?;
        let signs = assign_signs_with(&weyl, choice)?;
        Ok(Engine { weyl, signs })
    }

    pub fn from_parts(weyl: WeylGroup, signs: SignAssignment) -> Self {
        Engine { weyl, signs }
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn signs(&self) -> &SignAssignment {
        &self.signs
    }

    pub fn root_system(&self) -> &RootSystem {
        self.weyl.root_system()
    }
}

/// A closed orbit, keyed by a left `W_K`-coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpec {
    /// Minimal-length element of the coset.
    pub rep: ElementId,
    pub coset: Subset,
    /// `#(Phi^+ ∩ Phi_K)`.
    pub dim_q: usize,
}

/// The subgroup `W_K` generated by reflections in compact roots.
pub fn compact_weyl_subgroup(w: &WeylGroup, compact: &CompactSubsystem) -> Result<Subset> {
    Ok(compute_a(w, compact, w.identity())?.coset)
}

/// `A = W_K x`, with the representative moved to the shortest coset element.
pub fn compute_a(w: &WeylGroup, compact: &CompactSubsystem, x: ElementId) -> Result<OrbitSpec> {
    compact.check_system(w.root_system())?;
    if x >= w.order() {
        return Err(Error::Internal(format!("element id {} out of range", x)));
    }
    let gens: Vec<usize> = compact.positive_indices().collect();
    let mut seen = vec![false; w.order()];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for &a in &gens {
            let z = w.left_reflection(a, y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    let coset = Subset::from_ids(w, (0..w.order()).filter(|&z| seen[z]));
    let rep = coset.members()[0];
    Ok(OrbitSpec { rep, coset, dim_q: compact.num_positive() })
}

/// Shortest representatives of all left `W_K`-cosets, in increasing id order.
pub fn coset_representatives(w: &WeylGroup, compact: &CompactSubsystem) -> Result<Vec<ElementId>> {
    let mut covered = vec![false; w.order()];
    let mut reps = Vec::new();
    for x in 0..w.order() {
        if covered[x] {
            continue;
        }
        let orbit = compute_a(w, compact, x)?;
        for &y in orbit.coset.members() {
            covered[y] = true;
        }
        reps.push(orbit.rep);
    }
    Ok(reps)
}

/// `D = {w : (lambda + rho, w alpha) >= 0 for every simple alpha}`.
pub fn compute_d(w: &WeylGroup, lambda: &Weight) -> Result<Subset> {
    let rs = w.root_system();
    if lambda.dim() != rs.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: rs.ambient_dim(), found: lambda.dim() });
    }
    let shifted = lambda.checked_add(rs.rho())?;
    let nonneg: Vec<bool> = rs.roots().iter().map(|r| !shifted.pair_root(r).is_negative()).collect();
    let simple = rs.rank();
    Ok(Subset::from_ids(w, (0..w.order()).filter(|&x| (0..simple).all(|i| nonneg[w.act_on_root(x, i)]))))
}

/// A character `lambda` with the data needed to evaluate the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    pub lambda: Weight,
    /// `lambda + rho`.
    pub shifted: Weight,
    pub class: WeightClass,
    /// Set when the table is evaluated without the dominance hypothesis.
    pub dominance_override: bool,
}

impl CharacterSpec {
    /// Requires `lambda` integral and `lambda + rho` dominant.
    pub fn new(rs: &RootSystem, lambda: Weight) -> Result<Self> {
        let spec = Self::unchecked(rs, lambda)?;
        if !spec.class.integral {
            return Err(Error::NotIntegral(spec.lambda.to_string()));
        }
        if !spec.class.dominant_shifted {
            return Err(Error::NotDominant(format!("lambda + rho = {}", spec.shifted)));
        }
        Ok(spec)
    }

    /// Accepts any `lambda` of the right dimension and marks the dominance override.
    pub fn unchecked(rs: &RootSystem, lambda: Weight) -> Result<Self> {
        let class = rs.classify_weight(&lambda)?;
        let shifted = lambda.checked_add(rs.rho())?;
        let dominance_override = !(class.integral && class.dominant_shifted);
        Ok(CharacterSpec { lambda, shifted, class, dominance_override })
    }

    pub fn is_tdlds(&self) -> bool {
        self.shifted.is_zero()
    }
}

/// The non-empty strata of `A ∩ D`, keyed by `c = l - l_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoergelDecomposition {
    pub strata: BTreeMap<usize, Subset>,
}

impl SoergelDecomposition {
    pub fn total_size(&self) -> usize {
        self.strata.values().map(Subset::len).sum()
    }
}

/// Partitions `A ∩ D` by `c = l(w) - l_K(w)`; every stratum must satisfy the
/// zero-or-two middle condition.
pub fn stratify(w: &WeylGroup, a: &Subset, d: &Subset, compact: &CompactSubsystem) -> Result<SoergelDecomposition> {
    let lk = w.compact_lengths(compact)?;
    let mut groups: BTreeMap<usize, Vec<ElementId>> = BTreeMap::new();
    for &x in a.intersection(d).members() {
        let c = w
            .length(x)
            .checked_sub(lk[x])
            .ok_or_else(|| Error::Internal(format!("l_K({}) exceeds l", w.word_string(x))))?;
        groups.entry(c).or_default().push(x);
    }
    let mut strata = BTreeMap::new();
    for (c, members) in groups {
        let v = Subset::from_ids(w, members);
        if let Some(bad) = check_star(w, &v).violation {
            return Err(Error::StarViolation(format!(
                "stratum c = {}: ({}, {}) has {} middle(s)",
                c,
                w.word_string(bad.upper),
                w.word_string(bad.lower),
                bad.middles.len()
            )));
        }
        strata.insert(c, v);
    }
    Ok(SoergelDecomposition { strata })
}

/// One stratum together with its complex and homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumResult {
    pub c: usize,
    pub elements: Subset,
    pub complex: GradedComplex,
    pub homology: CohomologyDims,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCohomologyTable {
    /// `dims[q]` for `q = 0..=N`.
    pub dims: Vec<usize>,
    pub dim_q: usize,
    pub num_positive: usize,
    pub a_size: usize,
    pub d_size: usize,
    pub strata: Vec<StratumResult>,
}

impl NCohomologyTable {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn reversed(&self) -> Vec<usize> {
        self.dims.iter().rev().copied().collect()
    }
}

/// Evaluates the table for an orbit and a character. Characters that fail
/// the dominance hypothesis need `CharacterSpec::unchecked`.
pub fn soergel_table(
    engine: &Engine,
    compact: &CompactSubsystem,
    orbit: &OrbitSpec,
    character: &CharacterSpec,
) -> Result<NCohomologyTable> {
    let w = engine.weyl();
    let n = w.root_system().num_positive();
    let d = compute_d(w, &character.lambda)?;
    let decomposition = stratify(w, &orbit.coset, &d, compact)?;
    let strata: Vec<StratumResult> = decomposition
        .strata
        .into_par_iter()
        .map(|(c, elements)| {
            let complex = build_complex(w, &elements, engine.signs())?;
            let homology = homology(&complex);
            Ok(StratumResult { c, elements, complex, homology })
        })
        .collect::<Result<_>>()?;

    let mut dims = vec![0usize; n + 1];
    for s in &strata {
        for (k, &h) in s.homology.dims().iter().enumerate() {
            if h == 0 {
                continue;
            }
            let q = (2 * s.c + orbit.dim_q) as i64 - k as i64;
            if q < 0 || q > n as i64 {
                return Err(Error::Internal(format!(
                    "stratum c = {} has homology in degree {}, outside the table",
                    s.c, k
                )));
            }
            dims[q as usize] += h;
        }
    }
    Ok(NCohomologyTable {
        dims,
        dim_q: orbit.dim_q,
        num_positive: n,
        a_size: orbit.coset.len(),
        d_size: d.len(),
        strata,
    })
}

/// The opposite datum: representative `x w0` and `lambda^op = -lambda - 2 rho`.
/// `lambda^op + rho = -(lambda + rho)` is antidominant, so the returned
/// character carries the dominance override.
pub fn opposite(
    w: &WeylGroup,
    compact: &CompactSubsystem,
    orbit: &OrbitSpec,
    character: &CharacterSpec,
) -> Result<(OrbitSpec, CharacterSpec)> {
    let rs = w.root_system();
    let orbit_op = compute_a(w, compact, w.times_w0(orbit.rep))?;
    let two_rho = rs.rho().checked_add(rs.rho())?;
    let lambda_op = character.lambda.neg().checked_sub(&two_rho)?;
    let character_op = CharacterSpec::unchecked(rs, lambda_op)?;
    Ok((orbit_op, character_op))
}

/// Serialized form of a table together with the data it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub system: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compact_roots: Option<Vec<Vec<i64>>>,
    pub lambda: Vec<String>,
    pub orbit_rep: String,
    #[serde(rename = "dim_Q")]
    pub dim_q: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "A_size")]
    pub a_size: usize,
    #[serde(rename = "D_size")]
    pub d_size: usize,
    pub strata: BTreeMap<usize, Vec<String>>,
    pub table: Vec<usize>,
}

impl TableDocument {
    pub fn new(
        system: String,
        w: &WeylGroup,
        compact: &CompactSubsystem,
        orbit: &OrbitSpec,
        character: &CharacterSpec,
        table: &NCohomologyTable,
    ) -> Self {
        let rs = w.root_system();
        let (pattern, compact_roots) = match compact.pattern() {
            Some(p) => (Some(p.to_string()), None),
            None => {
                let roots = compact.roots(rs).iter().map(|r| r.coords().to_vec()).collect();
                (None, Some(roots))
            }
        };
        TableDocument {
            system,
            pattern,
            compact_roots,
            lambda: character.lambda.coords().iter().map(ToString::to_string).collect(),
            orbit_rep: w.word_string(orbit.rep),
            dim_q: table.dim_q,
            n: table.num_positive,
            a_size: table.a_size,
            d_size: table.d_size,
            strata: table
                .strata
                .iter()
                .map(|s| (s.c, s.elements.members().iter().map(|&x| w.word_string(x)).collect()))
                .collect(),
            table: table.dims.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table document serializes");
        s.push('\n');
        s
    }

    /// `q,dim` rows.
    pub fn to_csv(&self) -> String {
        table_csv(&self.table)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "system      {}", self.system);
        if let Some(p) = &self.pattern {
            let _ = writeln!(out, "pattern     {}", p);
        }
        if let Some(k) = &self.compact_roots {
            let _ = writeln!(out, "compact     {} roots", k.len());
        }
        let _ = writeln!(out, "lambda      ({})", self.lambda.join(","));
        let _ = writeln!(out, "orbit rep   {}", self.orbit_rep);
        let _ = writeln!(out, "dim_Q       {}", self.dim_q);
        let _ = writeln!(out, "N           {}", self.n);
        let _ = writeln!(out, "|A|, |D|    {}, {}", self.a_size, self.d_size);
        for (c, words) in &self.strata {
            let _ = writeln!(out, "stratum {:<3} {}", c, words.join(" "));
        }
        let _ = writeln!(out, "table       {:?}", self.table);
        out
    }
}

pub fn table_csv(dims: &[usize]) -> String {
    let mut out = String::from("q,dim\n");
    for (q, d) in dims.iter().enumerate() {
        let _ = writeln!(out, "{},{}", q, d);
    }
    out
}

/// Parses `q,dim` rows back into a dimension vector indexed by `q`.
pub fn parse_table_csv(text: &str) -> Result<Vec<usize>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("q,dim") {
        return Err(Error::Parse("missing q,dim header".into()));
    }
    let mut dims = Vec::new();
    for (i, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let (q, d) = line.split_once(',').ok_or_else(|| Error::Parse(format!("bad row {:?}", line)))?;
        let q: usize = q.trim().parse().map_err(|_| Error::Parse(format!("bad degree {:?}", q)))?;
        let d: usize = d.trim().parse().map_err(|_| Error::Parse(format!("bad dimension {:?}", d)))?;
        if q != i {
            return Err(Error::Parse(format!("row {} has degree {}", i, q)));
        }
        dims.push(d);
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_type_a, Root};

    fn engine(n: usize) -> Engine {
        Engine::new(&build_type_a(n).unwrap()).unwrap()
    }

    fn neg_rho(rs: &RootSystem) -> Weight {
        rs.rho().neg()
    }

    fn ids(s: &Subset) -> Vec<ElementId> {
        s.members().to_vec()
    }

    #[test]
    fn compute_a_examples() {
        let e = engine(3);
        let w = e.weyl();
        let rs = e.root_system();
        let empty = CompactSubsystem::empty(rs);
        assert_eq!(ids(&compute_a(w, &empty, 0).unwrap().coset), vec![0]);

        let k13 = CompactSubsystem::from_roots(rs, &[Root::new(vec![1, 0, -1]), Root::new(vec![-1, 0, 1])]).unwrap();
        let a = compute_a(w, &k13, 0).unwrap();
        assert_eq!(ids(&a.coset), vec![0, w.w0()]);
        assert_eq!(a.rep, 0);
        assert_eq!(a.dim_q, 1);

        let k12 = CompactSubsystem::from_roots(rs, &[Root::new(vec![1, -1, 0]), Root::new(vec![-1, 1, 0])]).unwrap();
        let s2 = w.simple_reflection(1);
        let s1s2 = w.element_from_word(&[0, 1]).unwrap();
        let a = compute_a(w, &k12, s2).unwrap();
        assert_eq!(ids(&a.coset), vec![s2, s1s2]);
        assert_eq!(a.rep, s2);
        assert_eq!(compute_a(w, &k12, s1s2).unwrap().rep, s2);
    }

    #[test]
    fn compute_d_examples() {
        let e = engine(3);
        let w = e.weyl();
        let rs = e.root_system();
        let d = compute_d(w, &neg_rho(rs)).unwrap();
        assert_eq!(d.len(), 6);
        // lambda + rho = (1,0,0)
        let lambda = Weight::from_integers(&[1, 0, 0]).checked_sub(rs.rho()).unwrap();
        assert_eq!(ids(&compute_d(w, &lambda).unwrap()), vec![0, w.simple_reflection(1)]);
        assert_eq!(ids(&compute_d(w, &Weight::zero(3)).unwrap()), vec![0]);
        assert!(compute_d(w, &Weight::zero(2)).is_err());
    }

    #[test]
    fn character_checks() {
        let rs = build_type_a(3).unwrap();
        assert!(CharacterSpec::new(&rs, neg_rho(&rs)).unwrap().is_tdlds());
        assert!(!CharacterSpec::new(&rs, Weight::zero(3)).unwrap().dominance_override);
        let low = Weight::from_integers(&[-3, 0, 0]);
        assert!(matches!(CharacterSpec::new(&rs, low.clone()), Err(Error::NotDominant(_))));
        assert!(CharacterSpec::unchecked(&rs, low).unwrap().dominance_override);
        let half = crate::parse::parse_weight("1/2,0,0").unwrap();
        assert!(matches!(CharacterSpec::new(&rs, half), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn stratify_examples() {
        let e = engine(3);
        let w = e.weyl();
        let rs = e.root_system();
        let k = CompactSubsystem::from_signature(rs, "+-+").unwrap();
        let a = compute_a(w, &k, 0).unwrap();
        let d = compute_d(w, &neg_rho(rs)).unwrap();
        let dec = stratify(w, &a.coset, &d, &k).unwrap();
        let got: Vec<(usize, Vec<ElementId>)> = dec.strata.iter().map(|(c, s)| (*c, ids(s))).collect();
        assert_eq!(got, vec![(0, vec![0]), (2, vec![w.w0()])]);

        let empty = CompactSubsystem::empty(rs);
        for x in 0..w.order() {
            let a = compute_a(w, &empty, x).unwrap();
            let dec = stratify(w, &a.coset, &d, &empty).unwrap();
            let got: Vec<(usize, Vec<ElementId>)> = dec.strata.iter().map(|(c, s)| (*c, ids(s))).collect();
            assert_eq!(got, vec![(w.length(x), vec![x])]);
        }

        let e2 = engine(2);
        let rs2 = e2.root_system();
        let k2 = CompactSubsystem::from_signature(rs2, "+-").unwrap();
        let a = compute_a(e2.weyl(), &k2, 0).unwrap();
        let d = compute_d(e2.weyl(), &neg_rho(rs2)).unwrap();
        let dec = stratify(e2.weyl(), &a.coset, &d, &k2).unwrap();
        assert_eq!(dec.strata.keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    fn table(e: &Engine, pattern: &str, lambda: Weight, rep: ElementId) -> NCohomologyTable {
        let rs = e.root_system();
        let k = CompactSubsystem::from_signature(rs, pattern).unwrap();
        let orbit = compute_a(e.weyl(), &k, rep).unwrap();
        let ch = CharacterSpec::new(rs, lambda).unwrap();
        soergel_table(e, &k, &orbit, &ch).unwrap()
    }

    #[test]
    fn table_examples() {
        let e = engine(3);
        let t = table(&e, "+-+", neg_rho(e.root_system()), 0);
        assert_eq!(t.dims, vec![0, 1, 1, 0]);
        assert_eq!((t.dim_q, t.num_positive, t.a_size, t.d_size), (1, 3, 2, 6));

        let e2 = engine(2);
        assert_eq!(table(&e2, "+-", neg_rho(e2.root_system()), 0).dims, vec![1, 0]);

        let rs = e.root_system();
        let empty = CompactSubsystem::empty(rs);
        let ch = CharacterSpec::new(rs, neg_rho(rs)).unwrap();
        for x in 0..e.weyl().order() {
            let orbit = compute_a(e.weyl(), &empty, x).unwrap();
            let t = soergel_table(&e, &empty, &orbit, &ch).unwrap();
            let mut expected = vec![0; 4];
            expected[e.weyl().length(x)] = 1;
            assert_eq!(t.dims, expected);
        }
    }

    #[test]
    fn empty_intersection_gives_zero_table() {
        let e = engine(3);
        let rs = e.root_system();
        let empty = CompactSubsystem::empty(rs);
        // regular lambda + rho: D = {id}, so A = {w0} misses it
        let orbit = compute_a(e.weyl(), &empty, e.weyl().w0()).unwrap();
        let ch = CharacterSpec::new(rs, Weight::zero(3)).unwrap();
        let t = soergel_table(&e, &empty, &orbit, &ch).unwrap();
        assert_eq!(t.dims, vec![0, 0, 0, 0]);
        assert!(t.strata.is_empty());
    }

    #[test]
    fn opposite_examples() {
        let e = engine(3);
        let w = e.weyl();
        let rs = e.root_system();
        let k = CompactSubsystem::empty(rs);
        let orbit = compute_a(w, &k, 0).unwrap();
        let ch = CharacterSpec::new(rs, neg_rho(rs)).unwrap();
        let (o, c) = opposite(w, &k, &orbit, &ch).unwrap();
        assert_eq!(o.rep, w.w0());
        assert_eq!(c.lambda, Weight::from_integers(&[-1, 0, 1]));
        let ch0 = CharacterSpec::new(rs, Weight::zero(3)).unwrap();
        let (_, c0) = opposite(w, &k, &orbit, &ch0).unwrap();
        assert_eq!(c0.lambda, Weight::from_integers(&[-2, 0, 2]));
        assert!(c0.dominance_override);
    }

    fn all_patterns(n: usize) -> Vec<String> {
        (0..1u32 << n).map(|m| (0..n).map(|i| if m >> i & 1 == 1 { '-' } else { '+' }).collect()).collect()
    }

    fn samples(rs: &RootSystem) -> Vec<Weight> {
        let mut out = vec![neg_rho(rs), Weight::zero(rs.ambient_dim())];
        for i in 1..rs.ambient_dim() {
            out.push(rs.type_a_fundamental_weight(i).unwrap().checked_sub(rs.rho()).unwrap());
        }
        out
    }

    #[test]
    fn opposite_set_and_strata_correspondence() {
        for n in 1..=4 {
            let e = engine(n);
            let w = e.weyl();
            let rs = e.root_system();
            let big_n = rs.num_positive();
            for p in all_patterns(n) {
                let k = CompactSubsystem::from_signature(rs, &p).unwrap();
                for rep in coset_representatives(w, &k).unwrap() {
                    let orbit = compute_a(w, &k, rep).unwrap();
                    for lambda in samples(rs) {
                        let ch = CharacterSpec::new(rs, lambda).unwrap();
                        let (orbit_op, ch_op) = opposite(w, &k, &orbit, &ch).unwrap();
                        assert_eq!(orbit_op.coset, orbit.coset.times_w0(w));
                        let d = compute_d(w, &ch.lambda).unwrap();
                        let d_op = compute_d(w, &ch_op.lambda).unwrap();
                        assert_eq!(d_op, d.times_w0(w));
                        let dec = stratify(w, &orbit.coset, &d, &k).unwrap();
                        let dec_op = stratify(w, &orbit_op.coset, &d_op, &k).unwrap();
                        for (c, v) in &dec_op.strata {
                            let partner = big_n - orbit.dim_q - c;
                            assert_eq!(Some(&v.clone()), dec.strata.get(&partner).map(|s| s.times_w0(w)).as_ref());
                        }
                        assert_eq!(dec.strata.len(), dec_op.strata.len());
                    }
                }
            }
        }
    }

    #[test]
    fn d_is_the_stabilizer_of_dominant_shift() {
        for n in 1..=5 {
            let e = engine(n);
            let w = e.weyl();
            let rs = e.root_system();
            for lambda in samples(rs) {
                let class = rs.classify_weight(&lambda).unwrap();
                let d = compute_d(w, &lambda).unwrap();
                let mut seen = vec![false; w.order()];
                seen[0] = true;
                let mut stack = vec![0];
                while let Some(x) = stack.pop() {
                    for &i in &class.singular_simple {
                        let y = w.mul(x, w.simple_reflection(i));
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                assert_eq!(d, Subset::from_ids(w, (0..w.order()).filter(|&x| seen[x])));
            }
        }
    }

    #[test]
    fn stratum_w0_duality_and_total_bound() {
        for n in 1..=4 {
            let e = engine(n);
            let w = e.weyl();
            let rs = e.root_system();
            let big_n = rs.num_positive();
            for p in all_patterns(n) {
                let k = CompactSubsystem::from_signature(rs, &p).unwrap();
                for rep in coset_representatives(w, &k).unwrap() {
                    let orbit = compute_a(w, &k, rep).unwrap();
                    for lambda in samples(rs) {
                        let ch = CharacterSpec::new(rs, lambda).unwrap();
                        let t = soergel_table(&e, &k, &orbit, &ch).unwrap();
                        assert!(t.total() <= orbit.coset.intersection(&compute_d(w, &ch.lambda).unwrap()).len());
                        for s in &t.strata {
                            let dual = build_complex(w, &s.elements.times_w0(w), e.signs()).unwrap();
                            let hd = homology(&dual);
                            for k in 0..=big_n {
                                assert_eq!(s.homology.dims()[k], hd.dims()[big_n - k]);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn document_round_trips() {
        let e = engine(3);
        let rs = e.root_system();
        let k = CompactSubsystem::from_signature(rs, "+-+").unwrap();
        let orbit = compute_a(e.weyl(), &k, 0).unwrap();
        let ch = CharacterSpec::new(rs, neg_rho(rs)).unwrap();
        let t = soergel_table(&e, &k, &orbit, &ch).unwrap();
        let doc = TableDocument::new("A2".into(), e.weyl(), &k, &orbit, &ch, &t);
        assert_eq!(doc.strata.get(&2), Some(&vec!["s1.s2.s1".to_string()]));
        let json = doc.to_json();
        let back: TableDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(parse_table_csv(&doc.to_csv()).unwrap(), back.table);
        assert_eq!(doc.to_csv(), "q,dim\n0,0\n1,1\n2,1\n3,0\n");
        assert!(json.contains("\"dim_Q\": 1"));
    }
}
