//! Sparse integer matrices and exact rank.
//!
//! Ranks over Q come from fraction-free row elimination: each update is
//! `a*r - b*p` with the pivot `p`, after which the row is divided by the gcd
//! of its entries. The modular rank is an independent elimination over
//! `Z/pZ`, used as a cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// A matrix with entries in `{-1, 0, 1}`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    /// Per column: `(row, value)` sorted by row, no zeros.
    columns: Vec<Vec<(u32, i8)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds from `(row, col, value)` entries; duplicate positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, i8)>) -> Self {
        let mut columns: Vec<BTreeMap<u32, i8>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *columns[c].entry(r as u32).or_insert(0) += v;
        }
        let columns = columns.into_iter().map(|m| m.into_iter().filter(|&(_, v)| v != 0).collect()).collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(u32, i8)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        match self.columns[c].binary_search_by_key(&(r as u32), |&(row, _)| row) {
            Ok(i) => self.columns[c][i].1,
            Err(_) => 0,
        }
    }

    /// Entries sorted by `(row, col)`.
    pub fn triplets(&self) -> Vec<(usize, usize, i8)> {
        let mut out: Vec<(usize, usize, i8)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r as usize, c, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.cols, self.rows, self.triplets().into_iter().map(|(r, c, v)| (c, r, v)))
    }

    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                rows[r as usize].push((c, BigInt::from(v)));
            }
        }
        rows
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        rank_sparse_integer(self.integer_rows())
    }

    /// Rank over `Z/pZ` for a prime `p < 2^32`.
    pub fn rank_mod(&self, p: u64) -> usize {
        assert!(p > 2 && p < (1 << 32));
        let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                let x = if v >= 0 { v as u64 % p } else { p - ((-(v as i64)) as u64 % p) };
                if x != 0 {
                    rows[r as usize].push((c, x));
                }
            }
        }
        rank_sparse_mod(rows, p)
    }

    /// First nonzero entry of `self * rhs`, if any.
    pub fn product_nonzero_entry(&self, rhs: &SparseMatrix) -> Option<(usize, usize, i64)> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        for (j, col) in rhs.columns.iter().enumerate() {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k as usize] {
                    if acc[i as usize] == 0 {
                        touched.push(i as usize);
                    }
                    acc[i as usize] += i64::from(a) * i64::from(b);
                }
            }
            let mut hit = None;
            for &i in &touched {
                if acc[i] != 0 && hit.is_none() {
                    hit = Some((i, j, acc[i]));
                }
                acc[i] = 0;
            }
            touched.clear();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}

/// Rank over Q of dense integer rows of the given width.
pub fn rank_of_rows(rows: &[Vec<BigInt>], width: usize) -> usize {
    let sparse = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), width);
            r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
        })
        .collect();
    rank_sparse_integer(sparse)
}

fn normalize_row(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().map(|(_, v)| v.is_negative()).unwrap_or(false) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

fn rank_sparse_integer(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    let mut buckets: BTreeMap<usize, Vec<Vec<(usize, BigInt)>>> = BTreeMap::new();
    for mut row in rows {
        if let Some(&(lead, _)) = row.first() {
            normalize_row(&mut row);
            buckets.entry(lead).or_default().push(row);
        }
    }
    let mut rank = 0;
    while let Some((_, mut group)) = buckets.pop_first() {
        let pivot_at = (0..group.len()).min_by_key(|&i| group[i].len()).expect("nonempty bucket");
        let pivot = group.swap_remove(pivot_at);
        rank += 1;
        let a = &pivot[0].1;
        for row in group {
            let b = &row[0].1;
            let g = a.gcd(b);
            let fa = a / &g;
            let fb = b / &g;
            let mut combined = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < pivot.len() {
                let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                let (c, v) = if ci < cj {
                    i += 1;
                    (ci, &fa * &row[i - 1].1)
                } else if cj < ci {
                    j += 1;
                    (cj, -(&fb * &pivot[j - 1].1))
                } else {
                    i += 1;
                    j += 1;
                    (ci, &fa * &row[i - 1].1 - &fb * &pivot[j - 1].1)
                };
                if !v.is_zero() {
                    combined.push((c, v));
                }
            }
            if let Some(&(lead, _)) = combined.first() {
                normalize_row(&mut combined);
                buckets.entry(lead).or_default().push(combined);
            }
        }
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_sparse_mod(rows: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
    let mut buckets: BTreeMap<usize, Vec<Vec<(usize, u64)>>> = BTreeMap::new();
    for row in rows {
        if let Some(&(lead, _)) = row.first() {
            buckets.entry(lead).or_default().push(row);
        }
    }
    let mut rank = 0;
    while let Some((_, mut group)) = buckets.pop_first() {
        let pivot_at = (0..group.len()).min_by_key(|&i| group[i].len()).expect("nonempty bucket");
        let pivot = group.swap_remove(pivot_at);
        rank += 1;
        let inv = pow_mod(pivot[0].1, p - 2, p);
        for row in group {
            let factor = row[0].1 * inv % p;
            let mut combined = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < pivot.len() {
                let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                let sub = |v: u64| (p - factor * v % p) % p;
                let (c, v) = if ci < cj {
                    i += 1;
                    (ci, row[i - 1].1)
                } else if cj < ci {
                    j += 1;
                    (cj, sub(pivot[j - 1].1))
                } else {
                    i += 1;
                    j += 1;
                    (ci, (row[i - 1].1 + sub(pivot[j - 1].1)) % p)
                };
                if v != 0 {
                    combined.push((c, v));
                }
            }
            if let Some(&(lead, _)) = combined.first() {
                buckets.entry(lead).or_default().push(combined);
            }
        }
    }
    rank
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A uniformly chosen prime in `(2^30, 2^31)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.random_range((1u64 << 30) + 1..(1u64 << 31)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}
