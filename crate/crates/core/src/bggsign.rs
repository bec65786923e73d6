//! Sign assignments on Bruhat cover edges.
//!
//! A sign `s(x,y) = (-1)^b` is attached to every edge `x -> y`. Each diamond
//! `x -> w -> y`, `x -> w' -> y` forces `b(x,w) + b(w,y) + b(x,w') + b(w',y) = 1`
//! over GF(2). The system is solved once on all of `W`; subsets use restriction.
//!
//! Every constraint with top vertex `x` involves two edges leaving `x` and two
//! edges leaving elements of length `l(x) - 1`. Processing vertices by length
//! splits the system into one small block per vertex, each solved by packed
//! bit elimination with pivots in edge-id order. Should a block be
//! inconsistent, the whole system is solved at once instead.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::Gf2System;
use crate::weyl::{ElementId, Subset, WeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SignedEdge {
    pub upper: ElementId,
    pub lower: ElementId,
    pub sign: i8,
}

/// Signs on a set of cover edges, sorted by `(upper, lower)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    edges: Vec<SignedEdge>,
}

/// How free variables of the sign system are fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignChoice {
    /// Free variables are 0, i.e. sign `+1`.
    Canonical,
    /// Free variables drawn from a seeded generator.
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Diamond {
    pub top: ElementId,
    pub middles: [ElementId; 2],
    pub bottom: ElementId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub edges: usize,
    pub diamonds: usize,
    pub global_fallback: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiamondReport {
    pub checked: usize,
    pub violations: Vec<Diamond>,
    /// Edges inside the subset that carry no sign.
    pub missing: Vec<(ElementId, ElementId)>,
}

impl DiamondReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.missing.is_empty()
    }
}

impl SignAssignment {
    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn sign(&self, upper: ElementId, lower: ElementId) -> Option<i8> {
        self.edges.binary_search_by(|e| (e.upper, e.lower).cmp(&(upper, lower))).ok().map(|i| self.edges[i].sign)
    }

    /// Flips one edge sign; used to build deliberately invalid assignments.
    pub fn with_flipped(&self, upper: ElementId, lower: ElementId) -> Option<SignAssignment> {
        let i = self.edges.binary_search_by(|e| (e.upper, e.lower).cmp(&(upper, lower))).ok()?;
        let mut edges = self.edges.clone();
        edges[i].sign = -edges[i].sign;
        Some(SignAssignment { edges })
    }

    /// Builds an assignment from explicit signs on every cover edge of `w`, in edge-id order.
    pub fn from_edge_signs(w: &WeylGroup, signs: &[i8]) -> Result<SignAssignment> {
        if signs.len() != w.covers().len() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Internal("one sign of +1 or -1 per cover edge required".into()));
        }
        let edges = w
            .covers()
            .iter()
            .zip(signs)
            .map(|(c, &sign)| SignedEdge { upper: c.upper, lower: c.lower, sign })
            .collect();
        Ok(SignAssignment { edges })
    }

    /// Tab-separated `upper  lower  sign` lines with element words.
    pub fn to_text(&self, w: &WeylGroup) -> String {
        let mut out = String::from("upper\tlower\tsign\n");
        for e in &self.edges {
            let _ = writeln!(out, "{}\t{}\t{:+}", w.word_string(e.upper), w.word_string(e.lower), e.sign);
        }
        out
    }
}

/// Diamonds all of whose four vertices lie in `v`.
pub fn diamonds(w: &WeylGroup, v: &Subset) -> Vec<Diamond> {
    let mut out = Vec::new();
    let mut below: Vec<(ElementId, ElementId)> = Vec::new();
    for &x in v.members() {
        below.clear();
        for c in w.covers_from(x) {
            if !v.contains(c.lower) {
                continue;
            }
            for d in w.covers_from(c.lower) {
                if v.contains(d.lower) {
                    below.push((d.lower, c.lower));
                }
            }
        }
        below.sort_unstable();
        for pair in below.windows(2) {
            if pair[0].0 == pair[1].0 {
                out.push(Diamond { top: x, middles: [pair[0].1, pair[1].1], bottom: pair[0].0 });
            }
        }
    }
    out
}

/// Each diamond of `W` as the edge ids `[(x,w), (w,y), (x,w'), (w',y)]`.
pub fn diamond_constraints(w: &WeylGroup) -> Vec<[usize; 4]> {
    diamonds(w, &Subset::full(w))
        .into_iter()
        .map(|d| {
            let e = |a, b| w.edge_id(a, b).expect("diamond edges are covers");
            [e(d.top, d.middles[0]), e(d.middles[0], d.bottom), e(d.top, d.middles[1]), e(d.middles[1], d.bottom)]
        })
        .collect()
}

pub fn assign_signs(w: &WeylGroup) -> Result<SignAssignment> {
    assign_signs_with(w, SignChoice::Canonical)
}

pub fn assign_signs_with(w: &WeylGroup, choice: SignChoice) -> Result<SignAssignment> {
    Ok(assign_signs_detailed(w, choice)?.0)
}

pub fn assign_signs_detailed(w: &WeylGroup, choice: SignChoice) -> Result<(SignAssignment, SolveStats)> {
    let mut rng = match choice {
        SignChoice::Canonical => None,
        SignChoice::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut draw = move || rng.as_mut().is_some_and(|r| r.random_bool(0.5));
    let n_edges = w.covers().len();
    let mut bits = vec![false; n_edges];
    let mut stats = SolveStats { edges: n_edges, ..SolveStats::default() };

    let mut below: Vec<(ElementId, usize, usize)> = Vec::new();
    let mut blocks_ok = true;
    for x in 0..w.order() {
        let range = w.edge_range(x);
        if range.is_empty() {
            continue;
        }
        below.clear();
        for (local, c) in w.covers_from(x).iter().enumerate() {
            for e in w.edge_range(c.lower) {
                below.push((w.covers()[e].lower, local, e));
            }
        }
        below.sort_unstable();
        let mut block = Gf2System::new(range.len());
        for pair in below.windows(2) {
            let (y0, l0, e0) = pair[0];
            let (y1, l1, e1) = pair[1];
            if y0 == y1 {
                block.add_equation(&[l0, l1], !(bits[e0] ^ bits[e1]));
                stats.diamonds += 1;
            }
        }
        match block.solve(|_| draw()) {
            Some(sol) => bits[range].copy_from_slice(&sol),
            None => {
                blocks_ok = false;
                break;
            }
        }
    }

    if !blocks_ok {
        stats.global_fallback = true;
        let constraints = diamond_constraints(w);
        stats.diamonds = constraints.len();
        let mut system = Gf2System::new(n_edges);
        for c in &constraints {
            system.add_equation(c, true);
        }
        bits =
            system.solve(|_| draw()).ok_or_else(|| Error::Internal("diamond sign system is unsatisfiable".into()))?;
    }

    let signs: Vec<i8> = bits.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let sa = SignAssignment::from_edge_signs(w, &signs)?;
    let report = verify_diamonds(w, &sa, &Subset::full(w));
    if !report.passed() {
        return Err(Error::Internal(format!("solved signs fail {} diamonds", report.violations.len())));
    }
    Ok((sa, stats))
}

/// Checks the product-sum-zero condition on every diamond inside `v`.
pub fn verify_diamonds(w: &WeylGroup, sa: &SignAssignment, v: &Subset) -> DiamondReport {
    let mut report = DiamondReport::default();
    for &x in v.members() {
        for c in w.covers_from(x) {
            if v.contains(c.lower) && sa.sign(x, c.lower).is_none() {
                report.missing.push((x, c.lower));
            }
        }
    }
    if !report.missing.is_empty() {
        return report;
    }
    for d in diamonds(w, v) {
        report.checked += 1;
        let s = |a, b| i32::from(sa.sign(a, b).expect("checked above"));
        let total =
            s(d.top, d.middles[0]) * s(d.middles[0], d.bottom) + s(d.top, d.middles[1]) * s(d.middles[1], d.bottom);
        if total != 0 {
            report.violations.push(d);
        }
    }
    report
}

/// Signs on the edges with both endpoints in `v`, unchanged.
pub fn restrict(sa: &SignAssignment, v: &Subset) -> SignAssignment {
    SignAssignment { edges: sa.edges.iter().filter(|e| v.contains(e.upper) && v.contains(e.lower)).copied().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_type_a;

    fn group(n: usize) -> WeylGroup {
        WeylGroup::generate(&build_type_a(n).unwrap()).unwrap()
    }

    #[test]
    fn a1_single_positive_edge() {
        let a1 = group(2);
        let sa = assign_signs(&a1).unwrap();
        assert_eq!(sa.edges(), &[SignedEdge { upper: 1, lower: 0, sign: 1 }]);
    }

    #[test]
    fn a2_constraints() {
        let a2 = group(3);
        let c = diamond_constraints(&a2);
        assert_eq!(c.len(), 4);
        let (sa, stats) = assign_signs_detailed(&a2, SignChoice::Canonical).unwrap();
        assert_eq!(sa.len(), 8);
        assert_eq!(stats.diamonds, 4);
        assert!(!stats.global_fallback);
        assert!(verify_diamonds(&a2, &sa, &Subset::full(&a2)).passed());
    }

    #[test]
    fn flipped_edge_breaks_its_diamonds() {
        let a2 = group(3);
        let sa = assign_signs(&a2).unwrap();
        let s1 = a2.simple_reflection(0);
        let s1s2 = a2.element_from_word(&[0, 1]).unwrap();
        let bad = sa.with_flipped(s1s2, s1).unwrap();
        let report = verify_diamonds(&a2, &bad, &Subset::full(&a2));
        assert_eq!(report.violations.len(), 2);
        for d in &report.violations {
            let touches = (d.top == s1s2 && d.middles.contains(&s1)) || (d.bottom == s1 && d.middles.contains(&s1s2));
            assert!(touches, "{d:?}");
        }
    }

    #[test]
    fn vacuous_and_restricted() {
        let a2 = group(3);
        let sa = assign_signs(&a2).unwrap();
        let single = Subset::from_ids(&a2, [0]);
        assert!(verify_diamonds(&a2, &sa, &single).passed());
        assert_eq!(verify_diamonds(&a2, &sa, &single).checked, 0);

        let ends = Subset::from_ids(&a2, [0, a2.w0()]);
        assert!(restrict(&sa, &ends).is_empty());
        assert_eq!(restrict(&sa, &Subset::full(&a2)), sa);

        let s1 = a2.simple_reflection(0);
        let s1s2 = a2.element_from_word(&[0, 1]).unwrap();
        let part = Subset::from_ids(&a2, [0, s1, s1s2]);
        let r = restrict(&sa, &part);
        assert_eq!(r.len(), 2);
        for e in r.edges() {
            assert_eq!(sa.sign(e.upper, e.lower), Some(e.sign));
        }
        // a restricted assignment lacks edges of the full group
        assert!(!verify_diamonds(&a2, &r, &Subset::full(&a2)).missing.is_empty());
    }

    #[test]
    fn random_choices_are_valid() {
        for n in 1..=5 {
            let w = group(n);
            for seed in 0..3 {
                let (sa, stats) = assign_signs_detailed(&w, SignChoice::Random(seed)).unwrap();
                assert!(!stats.global_fallback);
                assert!(verify_diamonds(&w, &sa, &Subset::full(&w)).passed());
            }
        }
    }

    #[test]
    fn constraint_rows_have_weight_four() {
        let w = group(4);
        let constraints = diamond_constraints(&w);
        let mut sys = Gf2System::new(w.covers().len());
        for c in &constraints {
            sys.add_equation(c, true);
        }
        for i in 0..sys.num_equations() {
            assert_eq!(sys.row_weight(i), 4);
        }
    }

    #[test]
    fn text_export() {
        let a1 = group(2);
        let sa = assign_signs(&a1).unwrap();
        assert_eq!(sa.to_text(&a1), "upper\tlower\tsign\ns1\tid\t+1\n");
    }
}
