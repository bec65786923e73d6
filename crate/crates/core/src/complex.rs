//! Length-graded complexes on subsets of the Weyl group.
//!
//! `C^q V` is spanned by the elements of `V` of length `q`. The differential
//! raises length by one: the entry coupling `y` (degree `q`) to `x`
//! (degree `q + 1`) is `s(x, y)` when `x -> y`, and zero otherwise.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bggsign::SignAssignment;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::weyl::{ElementId, Subset, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    /// Basis of `C^q` for `q = 0..=N`, in increasing element id.
    basis: Vec<Vec<ElementId>>,
    /// `d_q : C^q -> C^{q+1}` for `q = 0..N`; rows index `C^{q+1}`.
    differentials: Vec<SparseMatrix>,
}

impl GradedComplex {
    /// Highest degree, `N`.
    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self, q: usize) -> &[ElementId] {
        &self.basis[q]
    }

    pub fn differential(&self, q: usize) -> &SparseMatrix {
        &self.differentials[q]
    }

    pub fn differentials(&self) -> &[SparseMatrix] {
        &self.differentials
    }

    pub fn basis_sizes(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.iter().all(Vec::is_empty)
    }

    /// First nonzero entry of some `d_{q+1} d_q`, as `(q, row, col, value)`.
    pub fn square_defect(&self) -> Option<(usize, usize, usize, i64)> {
        self.differentials
            .windows(2)
            .enumerate()
            .find_map(|(q, pair)| pair[1].product_nonzero_entry(&pair[0]).map(|(r, c, v)| (q, r, c, v)))
    }

    /// The complex with degrees reversed (`k -> N - k`) and transposed differentials.
    pub fn transpose_dual(&self) -> GradedComplex {
        let n = self.top_degree();
        let basis = (0..=n).map(|k| self.basis[n - k].clone()).collect();
        let differentials = (0..n).map(|k| self.differentials[n - k - 1].transpose()).collect();
        GradedComplex { basis, differentials }
    }

    /// Ranks of each differential over Q.
    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.par_iter().map(SparseMatrix::rank).collect()
    }

    /// Compares exact ranks with ranks modulo each prime; describes the first mismatch.
    pub fn modular_rank_mismatch(&self, primes: &[u64]) -> Option<String> {
        let exact = self.ranks();
        for (q, d) in self.differentials.iter().enumerate() {
            for &p in primes {
                let r = d.rank_mod(p);
                if r != exact[q] {
                    return Some(format!("d_{} has rank {} over Q but {} mod {}", q, exact[q], r, p));
                }
            }
        }
        None
    }
}

/// `dim H^q` for `q = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyDims {
    dims: Vec<usize>,
}

impl CohomologyDims {
    pub fn new(dims: Vec<usize>) -> Self {
        CohomologyDims { dims }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Zero outside the stored range.
    pub fn get(&self, q: i64) -> usize {
        if q < 0 {
            return 0;
        }
        self.dims.get(q as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn euler(&self) -> i64 {
        self.dims.iter().enumerate().map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarViolation {
    pub upper: ElementId,
    pub lower: ElementId,
    /// Middles of the interval lying in the subset.
    pub middles: Vec<ElementId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StarReport {
    pub pairs_checked: usize,
    pub violation: Option<StarViolation>,
}

impl StarReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// For every `x, y` in `v` with `l(x) = l(y) + 2`, the number of `w` in `v`
/// with `x -> w -> y` must be 0 or 2.
pub fn check_star(w: &WeylGroup, v: &Subset) -> StarReport {
    let mut report = StarReport::default();
    let mut reach: BTreeMap<ElementId, Vec<ElementId>> = BTreeMap::new();
    for &x in v.members() {
        reach.clear();
        for c in w.covers_from(x) {
            for d in w.covers_from(c.lower) {
                if v.contains(d.lower) {
                    let entry = reach.entry(d.lower).or_default();
                    if v.contains(c.lower) {
                        entry.push(c.lower);
                    }
                }
            }
        }
        for (&y, middles) in &reach {
            report.pairs_checked += 1;
            if !middles.is_empty() && middles.len() != 2 {
                report.violation = Some(StarViolation { upper: x, lower: y, middles: middles.clone() });
                return report;
            }
        }
    }
    report
}

/// The complex `C^• V` with signs taken from `sa` (defined on `W` or on `V`).
pub fn build_complex(w: &WeylGroup, v: &Subset, sa: &SignAssignment) -> Result<GradedComplex> {
    let star = check_star(w, v);
    if let Some(bad) = star.violation {
        return Err(Error::StarViolation(format!(
            "({}, {}) has {} middle(s) in the subset",
            w.word_string(bad.upper),
            w.word_string(bad.lower),
            bad.middles.len()
        )));
    }
    let top = w.root_system().num_positive();
    let mut basis = vec![Vec::new(); top + 1];
    let mut position = vec![usize::MAX; w.order()];
    for &x in v.members() {
        let q = w.length(x);
        position[x] = basis[q].len();
        basis[q].push(x);
    }
    let mut differentials = Vec::with_capacity(top);
    for q in 0..top {
        let mut entries = Vec::new();
        for &x in &basis[q + 1] {
            for c in w.covers_from(x) {
                if !v.contains(c.lower) {
                    continue;
                }
                let s = sa.sign(x, c.lower).ok_or_else(|| {
                    Error::Internal(format!("no sign on {} -> {}", w.word_string(x), w.word_string(c.lower)))
                })?;
                entries.push((position[x], position[c.lower], s));
            }
        }
        differentials.push(SparseMatrix::from_triplets(basis[q + 1].len(), basis[q].len(), entries));
    }
    let complex = GradedComplex { basis, differentials };
    if let Some((q, r, c, val)) = complex.square_defect() {
        return Err(Error::Internal(format!("d_{} d_{} has entry {} at ({}, {})", q + 1, q, val, r, c)));
    }
    Ok(complex)
}

/// `dim H^q = #basis(q) - rank d_q - rank d_{q-1}`.
pub fn homology(gc: &GradedComplex) -> CohomologyDims {
    let ranks = gc.ranks();
    let sizes = gc.basis_sizes();
    let dims = (0..sizes.len())
        .map(|q| {
            let out = if q < ranks.len() { ranks[q] } else { 0 };
            let inc = if q > 0 { ranks[q - 1] } else { 0 };
            sizes[q] - out - inc
        })
        .collect();
    CohomologyDims { dims }
}

pub fn euler_characteristic(gc: &GradedComplex) -> i64 {
    gc.basis_sizes().iter().enumerate().map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bggsign::{assign_signs, assign_signs_with, SignChoice};
    use crate::rootsys::build_type_a;

    fn setup(n: usize) -> (WeylGroup, SignAssignment) {
        let w = WeylGroup::generate(&build_type_a(n).unwrap()).unwrap();
        let sa = assign_signs(&w).unwrap();
        (w, sa)
    }

    #[test]
    fn star_examples() {
        let (a2, _) = setup(3);
        assert!(check_star(&a2, &Subset::from_ids(&a2, [0])).passed());
        assert!(check_star(&a2, &Subset::full(&a2)).passed());
        let s1 = a2.simple_reflection(0);
        let s1s2 = a2.element_from_word(&[0, 1]).unwrap();
        let report = check_star(&a2, &Subset::from_ids(&a2, [0, s1, s1s2]));
        assert_eq!(report.violation, Some(StarViolation { upper: s1s2, lower: 0, middles: vec![s1] }));
    }

    #[test]
    fn singleton_complex() {
        let (a2, sa) = setup(3);
        let gc = build_complex(&a2, &Subset::from_ids(&a2, [0]), &sa).unwrap();
        assert_eq!(gc.basis_sizes(), vec![1, 0, 0, 0]);
        assert!(gc.differentials().iter().all(|d| d.nnz() == 0));
        assert_eq!(homology(&gc).dims(), &[1, 0, 0, 0]);
        assert_eq!(euler_characteristic(&gc), 1);
    }

    #[test]
    fn full_a1_complex_is_exact() {
        let (a1, sa) = setup(2);
        let gc = build_complex(&a1, &Subset::full(&a1), &sa).unwrap();
        assert_eq!(gc.differential(0).triplets(), vec![(0, 0, 1)]);
        assert_eq!(homology(&gc).dims(), &[0, 0]);
    }

    #[test]
    fn full_a2_complex() {
        let (a2, _) = setup(3);
        for choice in [SignChoice::Canonical, SignChoice::Random(7), SignChoice::Random(8)] {
            let sa = assign_signs_with(&a2, choice).unwrap();
            let gc = build_complex(&a2, &Subset::full(&a2), &sa).unwrap();
            assert_eq!(gc.basis_sizes(), vec![1, 2, 2, 1]);
            assert_eq!(gc.square_defect(), None);
            let h = homology(&gc);
            assert_eq!(h.dims(), &[0, 0, 0, 0]);
            assert_eq!(euler_characteristic(&gc), 0);
        }
    }

    #[test]
    fn euler_of_endpoints() {
        let (a2, sa) = setup(3);
        let gc = build_complex(&a2, &Subset::from_ids(&a2, [0, a2.w0()]), &sa).unwrap();
        assert_eq!(euler_characteristic(&gc), 0);
        assert_eq!(homology(&gc).euler(), 0);
        assert_eq!(homology(&gc).dims(), &[1, 0, 0, 1]);
    }

    #[test]
    fn empty_subset_is_zero_complex() {
        let (a2, sa) = setup(3);
        let gc = build_complex(&a2, &Subset::empty(&a2), &sa).unwrap();
        assert!(gc.is_empty());
        assert_eq!(homology(&gc).total(), 0);
    }

    #[test]
    fn star_violation_rejected() {
        let (a2, sa) = setup(3);
        let s1 = a2.simple_reflection(0);
        let s1s2 = a2.element_from_word(&[0, 1]).unwrap();
        let err = build_complex(&a2, &Subset::from_ids(&a2, [0, s1, s1s2]), &sa).unwrap_err();
        assert!(matches!(err, Error::StarViolation(_)));
    }

    #[test]
    fn bad_signs_detected_at_build() {
        let (a2, sa) = setup(3);
        let s1 = a2.simple_reflection(0);
        let s1s2 = a2.element_from_word(&[0, 1]).unwrap();
        let bad = sa.with_flipped(s1s2, s1).unwrap();
        assert!(matches!(build_complex(&a2, &Subset::full(&a2), &bad), Err(Error::Internal(_))));
    }

    #[test]
    fn full_group_complexes_exact_through_s5() {
        for n in 1..=5 {
            let (w, sa) = setup(n);
            let gc = build_complex(&w, &Subset::full(&w), &sa).unwrap();
            let h = homology(&gc);
            // the complex of all of W is acyclic unless W is trivial
            let expected_total = if n == 1 { 1 } else { 0 };
            assert_eq!(h.total(), expected_total, "n = {n}");
            assert_eq!(h.euler(), euler_characteristic(&gc));
            assert_eq!(homology(&gc.transpose_dual()).dims().iter().rev().copied().collect::<Vec<_>>(), h.dims());
        }
    }
}
