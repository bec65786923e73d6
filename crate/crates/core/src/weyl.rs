//! The Weyl group as permutations of the root list, with Bruhat covers.
//!
//! Orientation: `x -> y` means `x = s_alpha y` for a positive root `alpha`
//! and `l(x) = l(y) + 1`, so arrows point from the longer element to the
//! shorter one. This is the reverse of the usual Bruhat order; every module
//! uses this orientation.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parse::{format_word, WordSpec};
use crate::rootsys::{CompactSubsystem, RootSystem};

pub type ElementId = usize;

/// Default ceiling on `|W|` (that of `S_10`).
pub const DEFAULT_GROUP_BOUND: usize = 3_628_800;

/// A cover edge `upper -> lower` with `upper = s_root lower`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cover {
    pub upper: ElementId,
    pub lower: ElementId,
    /// Index of the positive root whose reflection joins the endpoints.
    pub root: usize,
}

#[derive(Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    perms: Vec<Box<[u16]>>,
    lookup: HashMap<Box<[u16]>, ElementId>,
    lengths: Vec<usize>,
    depths: Vec<usize>,
    parents: Vec<Option<(ElementId, usize)>>,
    inverses: Vec<ElementId>,
    times_w0: Vec<ElementId>,
    w0: ElementId,
    reflections: Vec<Box<[u16]>>,
    covers: Vec<Cover>,
    down_start: Vec<usize>,
    up: Vec<Vec<usize>>,
}

fn compose(a: &[u16], b: &[u16]) -> Box<[u16]> {
    b.iter().map(|&j| a[j as usize]).collect()
}

impl WeylGroup {
    pub fn generate(rs: &RootSystem) -> Result<Self> {
        Self::generate_with_bound(rs, DEFAULT_GROUP_BOUND)
    }

    /// Breadth-first enumeration from the identity over right multiplication
    /// by simple reflections; element ids follow discovery order, so they are
    /// sorted by length.
    pub fn generate_with_bound(rs: &RootSystem, bound: usize) -> Result<Self> {
        if rs.is_type_a() {
            let order = (1..=rs.ambient_dim()).try_fold(1usize, |acc, k| acc.checked_mul(k));
            if order.is_none_or(|o| o > bound) {
                return Err(Error::SizeBound { bound });
            }
        }
        let n_roots = rs.roots().len();
        if n_roots > u16::MAX as usize {
            return Err(Error::SizeBound { bound });
        }
        let npos = rs.num_positive();
        let simple: Vec<Box<[u16]>> = (0..rs.rank()).map(|i| rs.reflection_permutation(i).into_boxed_slice()).collect();

        let identity: Box<[u16]> = (0..n_roots as u16).collect();
        let mut perms = vec![identity.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(identity, 0);
        let mut depths = vec![0];
        let mut parents = vec![None];
        let mut head = 0;
        while head < perms.len() {
            for (i, s) in simple.iter().enumerate() {
                let next = compose(&perms[head], s);
                if !lookup.contains_key(&next) {
                    if perms.len() >= bound {
                        return Err(Error::SizeBound { bound });
                    }
                    lookup.insert(next.clone(), perms.len());
                    perms.push(next);
                    depths.push(depths[head] + 1);
                    parents.push(Some((head, i)));
                }
            }
            head += 1;
        }

        let lengths: Vec<usize> =
            perms.iter().map(|p| p[npos..].iter().filter(|&&img| (img as usize) < npos).count()).collect();
        if let Some(x) = (0..perms.len()).find(|&x| lengths[x] != depths[x]) {
            return Err(Error::Internal(format!(
                "element {} has inversion count {} but word length {}",
                x, lengths[x], depths[x]
            )));
        }

        let longest: Vec<ElementId> = (0..perms.len()).filter(|&x| lengths[x] == npos).collect();
        if longest.len() != 1 {
            return Err(Error::Internal(format!("{} elements of maximal length", longest.len())));
        }
        let w0 = longest[0];

        let find = |p: &[u16]| -> ElementId { lookup[p] };
        let inverses: Vec<ElementId> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u16; n_roots];
                for (j, &img) in p.iter().enumerate() {
                    inv[img as usize] = j as u16;
                }
                find(&inv)
            })
            .collect();
        let times_w0: Vec<ElementId> = perms.iter().map(|p| find(&compose(p, &perms[w0]))).collect();
        let reflections: Vec<Box<[u16]>> = (0..npos).map(|a| rs.reflection_permutation(a).into_boxed_slice()).collect();

        let mut covers: Vec<Cover> = (0..perms.len())
            .into_par_iter()
            .flat_map_iter(|y| {
                let mut found = Vec::new();
                for (a, refl) in reflections.iter().enumerate() {
                    let x = lookup[&compose(refl, &perms[y])];
                    if lengths[x] == lengths[y] + 1 {
                        found.push(Cover { upper: x, lower: y, root: a });
                    }
                }
                found
            })
            .collect();
        covers.sort_unstable();

        let mut down_start = vec![0; perms.len() + 1];
        for c in &covers {
            down_start[c.upper + 1] += 1;
        }
        for x in 0..perms.len() {
            down_start[x + 1] += down_start[x];
        }
        let mut up = vec![Vec::new(); perms.len()];
        for (e, c) in covers.iter().enumerate() {
            up[c.lower].push(e);
        }

        Ok(WeylGroup {
            rs: rs.clone(),
            perms,
            lookup,
            lengths,
            depths,
            parents,
            inverses,
            times_w0,
            w0,
            reflections,
            covers,
            down_start,
            up,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    /// The long element `w0`.
    pub fn w0(&self) -> ElementId {
        self.w0
    }

    /// `l(x) = #(Phi^+ ∩ x Phi^-)`.
    pub fn length(&self, x: ElementId) -> usize {
        self.lengths[x]
    }

    /// Depth of `x` in the breadth-first search over simple reflections.
    pub fn word_length(&self, x: ElementId) -> usize {
        self.depths[x]
    }

    /// Images of root indices under `x`.
    pub fn action(&self, x: ElementId) -> &[u16] {
        &self.perms[x]
    }

    pub fn act_on_root(&self, x: ElementId, root: usize) -> usize {
        self.perms[x][root] as usize
    }

    /// A reduced word for `x` (zero-based simple reflection indices).
    pub fn word(&self, x: ElementId) -> Vec<usize> {
        let mut letters = Vec::with_capacity(self.depths[x]);
        let mut cur = x;
        while let Some((parent, i)) = self.parents[cur] {
            letters.push(i);
            cur = parent;
        }
        letters.reverse();
        letters
    }

    pub fn word_string(&self, x: ElementId) -> String {
        format_word(&self.word(x))
    }

    pub fn element_from_word(&self, letters: &[usize]) -> Result<ElementId> {
        let mut cur = self.identity();
        for &i in letters {
            if i >= self.rs.rank() {
                return Err(Error::Parse(format!("s{} is not a simple reflection (rank {})", i + 1, self.rs.rank())));
            }
            cur = self.mul(cur, self.simple_reflection(i));
        }
        Ok(cur)
    }

    pub fn resolve(&self, spec: &WordSpec) -> Result<ElementId> {
        match spec {
            WordSpec::Identity => Ok(self.identity()),
            WordSpec::LongElement => Ok(self.w0),
            WordSpec::Word(letters) => self.element_from_word(letters),
        }
    }

    /// The element `s_i` (zero-based `i`); ids `1..=rank` in discovery order.
    pub fn simple_reflection(&self, i: usize) -> ElementId {
        self.lookup[&*self.rs.reflection_permutation(i).into_boxed_slice()]
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.lookup[&compose(&self.perms[a], &self.perms[b])]
    }

    pub fn inverse(&self, x: ElementId) -> ElementId {
        self.inverses[x]
    }

    /// `x w0`.
    pub fn times_w0(&self, x: ElementId) -> ElementId {
        self.times_w0[x]
    }

    /// `s_root x` for a positive root index.
    pub fn left_reflection(&self, root: usize, x: ElementId) -> ElementId {
        self.lookup[&compose(&self.reflections[root], &self.perms[x])]
    }

    /// Positive roots `gamma` with `x^{-1} gamma` negative.
    pub fn inversion_set(&self, x: ElementId) -> Vec<usize> {
        let npos = self.rs.num_positive();
        let mut out: Vec<usize> = self.perms[x][npos..].iter().map(|&i| i as usize).filter(|&i| i < npos).collect();
        out.sort_unstable();
        out
    }

    /// `l_K(x) = #(Phi^+ ∩ x Phi^- ∩ Phi_K)`.
    pub fn compact_length(&self, x: ElementId, compact: &CompactSubsystem) -> Result<usize> {
        compact.check_system(&self.rs)?;
        Ok(self.compact_length_unchecked(x, compact))
    }

    fn compact_length_unchecked(&self, x: ElementId, compact: &CompactSubsystem) -> usize {
        let npos = self.rs.num_positive();
        self.perms[x][npos..].iter().filter(|&&i| (i as usize) < npos && compact.contains(i as usize)).count()
    }

    pub fn compact_lengths(&self, compact: &CompactSubsystem) -> Result<Vec<usize>> {
        compact.check_system(&self.rs)?;
        Ok((0..self.order()).map(|x| self.compact_length_unchecked(x, compact)).collect())
    }

    /// All cover edges, sorted by `(upper, lower)`; the position is the edge id.
    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Edges `x -> y` leaving `x`, sorted by `y`.
    pub fn covers_from(&self, x: ElementId) -> &[Cover] {
        &self.covers[self.down_start[x]..self.down_start[x + 1]]
    }

    /// Edge ids of edges `x -> y` arriving at `y`.
    pub fn edges_into(&self, y: ElementId) -> &[usize] {
        &self.up[y]
    }

    pub fn edge_range(&self, x: ElementId) -> std::ops::Range<usize> {
        self.down_start[x]..self.down_start[x + 1]
    }

    /// Edge id of `x -> y` if it is a cover.
    pub fn edge_id(&self, x: ElementId, y: ElementId) -> Option<usize> {
        let range = self.edge_range(x);
        self.covers[range.clone()].binary_search_by_key(&y, |c| c.lower).ok().map(|i| range.start + i)
    }

    pub fn is_cover(&self, x: ElementId, y: ElementId) -> bool {
        self.edge_id(x, y).is_some()
    }

    /// `{w : x -> w -> y}`; requires `l(x) = l(y) + 2`.
    pub fn interval_middles(&self, x: ElementId, y: ElementId) -> Result<Vec<ElementId>> {
        let gap = self.lengths[x] as i64 - self.lengths[y] as i64;
        if gap != 2 {
            return Err(Error::LengthGap { expected: 2, found: gap });
        }
        Ok(self.covers_from(x).iter().map(|c| c.lower).filter(|&w| self.is_cover(w, y)).collect())
    }

    /// Checks `l(a w0) = N - l(a)`, `l_K(a w0) = #(Phi^+ ∩ Phi_K) - l_K(a)` for
    /// every element and `a -> b  <=>  b w0 -> a w0` for every edge.
    pub fn w0_properties_report(&self, compact: &CompactSubsystem) -> Result<W0Report> {
        let lk = self.compact_lengths(compact)?;
        let n = self.rs.num_positive();
        let dim_q = compact.num_positive();
        let mut report = W0Report { elements_checked: 0, edges_checked: 0, counterexample: None };
        for a in 0..self.order() {
            let aw = self.times_w0(a);
            report.elements_checked += 1;
            if self.lengths[aw] + self.lengths[a] != n {
                report.counterexample = Some(format!(
                    "l({} w0) = {} but N - l(a) = {}",
                    self.word_string(a),
                    self.lengths[aw],
                    n - self.lengths[a]
                ));
                return Ok(report);
            }
            if lk[aw] + lk[a] != dim_q {
                report.counterexample = Some(format!(
                    "l_K({} w0) = {} but #(Phi+ ∩ Phi_K) - l_K(a) = {}",
                    self.word_string(a),
                    lk[aw],
                    dim_q as i64 - lk[a] as i64
                ));
                return Ok(report);
            }
        }
        for c in &self.covers {
            report.edges_checked += 1;
            if !self.is_cover(self.times_w0(c.lower), self.times_w0(c.upper)) {
                report.counterexample = Some(format!(
                    "{} -> {} but {} w0 -> {} w0 fails",
                    self.word_string(c.upper),
                    self.word_string(c.lower),
                    self.word_string(c.lower),
                    self.word_string(c.upper)
                ));
                return Ok(report);
            }
        }
        Ok(report)
    }

    /// One-line notation (1-based) of `x` acting on `e_1..e_n`; type A only.
    pub fn one_line(&self, x: ElementId) -> Option<Vec<usize>> {
        if !self.rs.is_type_a() {
            return None;
        }
        let n = self.rs.ambient_dim();
        if n == 1 {
            return Some(vec![1]);
        }
        let roots = self.rs.roots();
        let mut out = vec![0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let k = if i == 0 { 1 } else { 0 };
            let mut coords = vec![0i64; n];
            coords[i] = 1;
            coords[k] = -1;
            let idx = self.rs.index_of(&crate::rootsys::Root::new(coords))?;
            let image = &roots[self.act_on_root(x, idx)];
            *slot = image.coords().iter().position(|&c| c == 1)? + 1;
        }
        Some(out)
    }

    /// Graphviz digraph of `(W, ->)` with node labels `word / l / l_K`.
    pub fn to_dot(&self, options: &DotOptions<'_>) -> Result<String> {
        let lk = match options.compact {
            Some(k) => self.compact_lengths(k)?,
            None => vec![0; self.order()],
        };
        let highlight = options.highlight.map(|s| s.mask.clone());
        let mut out = String::new();
        out.push_str("digraph bruhat {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
        // ids are already sorted by (length, id)
        for x in 0..self.order() {
            let _ = write!(out, "  n{} [label=\"{} / {} / {}\"", x, self.word_string(x), self.lengths[x], lk[x]);
            if highlight.as_ref().is_some_and(|m| m[x]) {
                out.push_str(", style=filled, fillcolor=lightblue");
            }
            out.push_str("];\n");
        }
        for c in &self.covers {
            let _ = write!(out, "  n{} -> n{}", c.upper, c.lower);
            if options.compact.is_some_and(|k| k.contains(c.root)) {
                out.push_str(" [color=red]");
            }
            out.push_str(";\n");
        }
        out.push_str("}\n");
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DotOptions<'a> {
    pub compact: Option<&'a CompactSubsystem>,
    pub highlight: Option<&'a Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W0Report {
    pub elements_checked: usize,
    pub edges_checked: usize,
    pub counterexample: Option<String>,
}

impl W0Report {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// A subset of the elements of one Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset {
    mask: Vec<bool>,
    members: Vec<ElementId>,
}

impl Subset {
    pub fn empty(w: &WeylGroup) -> Self {
        Subset { mask: vec![false; w.order()], members: Vec::new() }
    }

    pub fn full(w: &WeylGroup) -> Self {
        Subset { mask: vec![true; w.order()], members: (0..w.order()).collect() }
    }

    pub fn from_ids(w: &WeylGroup, ids: impl IntoIterator<Item = ElementId>) -> Self {
        let mut mask = vec![false; w.order()];
        for x in ids {
            mask[x] = true;
        }
        let members = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Subset { mask, members }
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    /// Members in increasing id order.
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mask: Vec<bool> = self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect();
        let members = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Subset { mask, members }
    }

    /// `V w0`.
    pub fn times_w0(&self, w: &WeylGroup) -> Subset {
        Subset::from_ids(w, self.members.iter().map(|&x| w.times_w0(x)))
    }
}
