//! Exact ranks over `Q` with integer rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;

/// Sparse row: `(column, value)` pairs, ascending columns, no zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut SparseRow) {
    let Some((_, last)) = row.last() else { return };
    let negate = last.is_negative();
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g == BigInt::from(1) {
            break;
        }
    }
    if g > BigInt::from(1) {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
    if negate {
        for (_, c) in row.iter_mut() {
            *c = -&*c;
        }
    }
}

/// `a*r - b*p`, both sorted.
fn combine(r: &SparseRow, a: &BigInt, p: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        if j == p.len() || (i < r.len() && r[i].0 < p[j].0) {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if i == r.len() || p[j].0 < r[i].0 {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rows in echelon form with respect to their last column. Rows stay primitive
/// with a positive pivot, so entries do not grow beyond what the span needs.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivot_row: FxHashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    /// Reduce `row` against the current rows.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|(_, c)| !c.is_zero());
        while let Some((col, _)) = row.last() {
            let Some(&pi) = self.pivot_row.get(col) else { break };
            let p = &self.rows[pi];
            let a = p.last().unwrap().1.clone();
            let b = row.last().unwrap().1.clone();
            let g = a.gcd(&b);
            row = combine(&row, &(&a / &g), p, &(&b / &g));
            make_primitive(&mut row);
        }
        row
    }

    /// Insert a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some(&(col, _)) = row.last() else { return false };
        make_primitive(&mut row);
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Pivot columns, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivot_row.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

pub fn rank_sparse<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Fraction-free (Bareiss) elimination on a dense matrix.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
