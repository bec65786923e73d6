//! Linear systems over the two-element field with packed bit rows.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow(Vec<u64>);

impl BitRow {
    pub fn zeros(bits: usize) -> Self {
        BitRow(vec![0; bits.div_ceil(64)])
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn toggle(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// A system `A x = b` over GF(2).
#[derive(Clone, Debug, Default)]
pub struct Gf2System {
    vars: usize,
    rows: Vec<BitRow>,
    rhs: Vec<bool>,
}

impl Gf2System {
    pub fn new(vars: usize) -> Self {
        Gf2System { vars, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    /// Adds `sum_{v in vars} x_v = rhs`; repeated variables cancel.
    pub fn add_equation(&mut self, vars: &[usize], rhs: bool) {
        let mut row = BitRow::zeros(self.vars);
        for &v in vars {
            row.toggle(v);
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.rows[i].count_ones()
    }

    /// Reduced row echelon elimination with pivots in increasing variable
    /// order. Free variables take the values produced by `free`; `None` if
    /// the system is inconsistent.
    pub fn solve(&self, mut free: impl FnMut(usize) -> bool) -> Option<Vec<bool>> {
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0;
        for col in 0..self.vars {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else { continue };
            rows.swap(rank, p);
            rhs.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for (off, row) in tail.iter_mut().enumerate() {
                if row.get(col) {
                    row.xor_assign(pivot_row);
                    rhs[rank + 1 + off] ^= rhs[rank];
                }
            }
            for r in 0..rank {
                if head[r].get(col) {
                    let (before, after) = head.split_at_mut(rank);
                    before[r].xor_assign(&after[0]);
                    rhs[r] ^= rhs[rank];
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        if rhs[rank..].iter().any(|&b| b) {
            return None;
        }
        let mut is_pivot = vec![false; self.vars];
        for &(_, c) in &pivots {
            is_pivot[c] = true;
        }
        let mut x = vec![false; self.vars];
        for v in 0..self.vars {
            if !is_pivot[v] {
                x[v] = free(v);
            }
        }
        for &(r, c) in &pivots {
            let mut val = rhs[r];
            for j in rows[r].ones() {
                if j != c {
                    val ^= x[j];
                }
            }
            x[c] = val;
        }
        Some(x)
    }
}
