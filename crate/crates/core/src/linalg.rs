//! Dense matrices over GF(p²) with exact Gaussian elimination.
//!
//! Elimination uses first-nonzero pivoting: finite fields have no magnitude,
//! and a fixed pivot rule keeps every derived matrix reproducible across
//! runs, which the golden tests and the dump format rely on.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, Range};

use crate::gf::{ExtElem, FieldElem, QuadExtField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinalgError {
    /// Square inversion hit a zero pivot; the column that failed is named.
    Singular { pivot_col: usize },
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    /// Cauchy evaluation points must be pairwise distinct.
    PointCollision { x: u32, y: u32 },
    /// An exhaustive check would exceed its configured bound.
    GuardExceeded { required: u128, bound: u128 },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::Singular { pivot_col } => {
                write!(f, "singular matrix: no pivot in column {pivot_col}")
            }
            LinalgError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)
            }
            LinalgError::PointCollision { x, y } => {
                write!(f, "cauchy points collide at value {x} (xs) / {y} (ys)")
            }
            LinalgError::GuardExceeded { required, bound } => {
                write!(f, "exhaustive check needs {required} cases, bound is {bound}")
            }
        }
    }
}

impl core::error::Error for LinalgError {}

/// Outcome of solving A·x = b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<ExtElem>),
    /// Consistent but not unique; carries one particular solution
    /// (free variables set to zero).
    Underdetermined(Vec<ExtElem>),
    Inconsistent,
}

/// Row-major matrix over one GF(p²).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: QuadExtField,
    rows: usize,
    cols: usize,
    entries: Vec<ExtElem>,
}

impl Index<(usize, usize)> for FieldMatrix {
    type Output = ExtElem;
    fn index(&self, (r, c): (usize, usize)) -> &ExtElem {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.entries[r * self.cols + c]
    }
}

impl FieldMatrix {
    pub fn zeros(field: QuadExtField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: QuadExtField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: QuadExtField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ExtElem,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Build from explicit rows; every row must have the same length.
    pub fn from_rows(field: QuadExtField, rows: Vec<Vec<ExtElem>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != ncols {
                return Err(LinalgError::DimensionMismatch {
                    left: (nrows, ncols),
                    right: (1, row.len()),
                });
            }
        }
        Ok(Self { field, rows: nrows, cols: ncols, entries: rows.concat() })
    }

    pub fn field(&self) -> QuadExtField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[ExtElem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExtElem) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.entries[r * self.cols + c] = v;
    }

    /// Contiguous sub-matrix. Panics if a range is out of bounds, matching
    /// slice semantics.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> FieldMatrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "block out of range");
        Self::from_fn(self.field, rows.len(), cols.len(), |r, c| {
            self[(rows.start + r, cols.start + c)]
        })
    }

    /// Order-preserving row selection by index set.
    pub fn select_rows(&self, sel: &[usize]) -> FieldMatrix {
        Self::from_fn(self.field, sel.len(), self.cols, |r, c| self[(sel[r], c)])
    }

    /// Order-preserving column selection by index set.
    pub fn select_cols(&self, sel: &[usize]) -> FieldMatrix {
        Self::from_fn(self.field, self.rows, sel.len(), |r, c| self[(r, sel[c])])
    }

    pub fn transpose(&self) -> FieldMatrix {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let lv = self[(i, t)];
                if lv.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let acc = f.add(out[(i, j)], f.mul(lv, rhs[(t, j)]));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    /// Row vector times matrix: u·A.
    pub fn vec_mul(&self, u: &[ExtElem]) -> Vec<ExtElem> {
        assert_eq!(u.len(), self.rows, "vector length mismatch");
        let f = self.field;
        let mut out = vec![f.zero(); self.cols];
        for (i, &uv) in u.iter().enumerate() {
            if uv.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] = f.add(out[j], f.mul(uv, self[(i, j)]));
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let f = m.field;
        let mut pivots = Vec::new();
        let mut rr = 0usize;
        for c in 0..m.cols {
            if rr == m.rows {
                break;
            }
            let Some(sel) = (rr..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(rr, sel);
            let inv = f.inv(m[(rr, c)]).expect("pivot nonzero");
            for j in 0..m.cols {
                let v = f.mul(inv, m[(rr, j)]);
                m.set(rr, j, v);
            }
            for r in 0..m.rows {
                if r != rr && !m[(r, c)].is_zero() {
                    let factor = m[(r, c)];
                    for j in 0..m.cols {
                        let v = f.sub(m[(r, j)], f.mul(factor, m[(rr, j)]));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(c);
            rr += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solve A·x = b exactly, reporting uniqueness truthfully.
    pub fn solve(&self, b: &[ExtElem]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (b.len(), 1),
            });
        }
        let f = self.field;
        let mut aug = FieldMatrix::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self[(r, c)]);
            }
            aug.set(r, self.cols, b[r]);
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = red[(row, self.cols)];
        }
        if pivots.len() == self.cols {
            Ok(Solution::Unique(x))
        } else {
            Ok(Solution::Underdetermined(x))
        }
    }

    /// Inverse of a square full-rank matrix.
    pub fn invert(&self) -> Result<FieldMatrix, LinalgError> {
        assert_eq!(self.rows, self.cols, "only square matrices invert");
        let f = self.field;
        let n = self.rows;
        let mut aug = FieldMatrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self[(r, c)]);
            }
            aug.set(r, n + r, f.one());
        }
        let (red, pivots) = aug.rref();
        for want in 0..n {
            if pivots.get(want) != Some(&want) {
                return Err(LinalgError::Singular { pivot_col: want });
            }
        }
        Ok(red.block(0..n, n..2 * n))
    }

    /// Basis (as rows) of the right null space {x : A·x = 0}.
    pub fn null_space(&self) -> FieldMatrix {
        let f = self.field;
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FieldMatrix::zeros(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, f.one());
            for (row, &pc) in pivots.iter().enumerate() {
                basis.set(bi, pc, f.neg(red[(row, fc)]));
            }
        }
        basis
    }

    /// Basis (as rows) of the left null space {v : v·A = 0}.
    pub fn left_null_space(&self) -> FieldMatrix {
        self.transpose().null_space()
    }

    /// Row space membership, decided by rank.
    pub fn row_space_contains(&self, v: &[ExtElem]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut ext = self.clone();
        ext.rows += 1;
        ext.entries.extend_from_slice(v);
        ext.rank() == self.rank()
    }

    /// Row space equality, decided by mutual containment of ranks.
    pub fn row_space_eq(&self, other: &FieldMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let ra = self.rank();
        let rb = other.rank();
        if ra != rb {
            return false;
        }
        let mut stacked = self.clone();
        stacked.rows += other.rows;
        stacked.entries.extend_from_slice(&other.entries);
        stacked.rank() == ra
    }
}

/// C(n, k) without overflow for the desk-scale sizes used here.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Cauchy matrix with entry (i, j) = (xs[i] − ys[j])⁻¹ over the base field,
/// embedded into GF(p²). All points must be pairwise distinct.
pub fn cauchy_matrix(
    field: QuadExtField,
    xs: &[FieldElem],
    ys: &[FieldElem],
) -> Result<FieldMatrix, LinalgError> {
    let base = field.base_field();
    let all: Vec<FieldElem> = xs.iter().chain(ys).copied().collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i] == all[j] {
                return Err(LinalgError::PointCollision {
                    x: all[i].value(),
                    y: all[j].value(),
                });
            }
        }
    }
    let mut m = FieldMatrix::zeros(field, xs.len(), ys.len());
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            let diff = base.sub(x, y);
            let inv = base.inv(diff).expect("distinct points");
            m.set(i, j, field.embed(inv));
        }
    }
    Ok(m)
}

/// Default bound on the number of square sub-matrices examined by
/// [`is_mds_parity`].
pub const MDS_CHECK_BOUND: u128 = 1_000_000;

/// Exhaustively decide whether every square sub-matrix of a parity block is
/// non-singular (the systematic-MDS criterion). Refuses, rather than
/// sampling, when the sub-matrix count exceeds [`MDS_CHECK_BOUND`].
pub fn is_mds_parity(p: &FieldMatrix) -> Result<bool, LinalgError> {
    let (k, b) = (p.rows(), p.cols());
    let mut required: u128 = 0;
    for s in 1..=k.min(b) {
        required += binomial(k, s) * binomial(b, s);
    }
    if required > MDS_CHECK_BOUND {
        return Err(LinalgError::GuardExceeded { required, bound: MDS_CHECK_BOUND });
    }
    if k == 0 || b == 0 {
        // An empty parity block carries no erasure-correction claim.
        return Ok(true);
    }
    for s in 1..=k.min(b) {
        let mut row_sel = Combinations::new(k, s);
        while let Some(rows) = row_sel.next() {
            let picked_rows = p.select_rows(rows);
            let mut col_sel = Combinations::new(b, s);
            while let Some(cols) = col_sel.next() {
                if picked_rows.select_cols(cols).rank() != s {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Lexicographic k-subsets of {0, .., n-1} without allocation per step.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, idx: (0..k).collect(), started: false, done: k > n }
    }

    /// Lending iterator: the slice is only valid until the next call.
    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.idx[i] < self.n - (k - i) {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::QuadExtField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf121() -> QuadExtField {
        QuadExtField::new(11).unwrap()
    }

    fn random_base_matrix(f: QuadExtField, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix::from_fn(f, rows, cols, |_, _| {
            f.elem(rng.random_range(0..f.prime() as u64), 0)
        })
    }

    #[test]
    fn identity_rank_and_inverse() {
        let f = gf121();
        let id = FieldMatrix::identity(f, 4);
        assert_eq!(id.rank(), 4);
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = gf121();
        let id = FieldMatrix::identity(f, 3);
        let b = vec![f.elem(4, 1), f.elem(0, 7), f.elem(9, 0)];
        assert_eq!(id.solve(&b).unwrap(), Solution::Unique(b.clone()));
        let z = FieldMatrix::zeros(f, 3, 3);
        assert_eq!(z.solve(&b).unwrap(), Solution::Inconsistent);
        assert_eq!(
            z.solve(&[f.zero(); 3]).unwrap(),
            Solution::Underdetermined(vec![f.zero(); 3])
        );
    }

    #[test]
    fn solve_cauchy_system_and_substitute_back() {
        let f = gf121();
        let base = f.base_field();
        let xs = [base.elem(0), base.elem(1)];
        let ys = [base.elem(2), base.elem(3)];
        let a = cauchy_matrix(f, &xs, &ys).unwrap();
        let b = vec![f.elem(5, 2), f.elem(1, 10)];
        let Solution::Unique(x) = a.solve(&b).unwrap() else {
            panic!("cauchy systems are nonsingular")
        };
        let back = a.transpose().vec_mul(&x);
        assert_eq!(back, b);
    }

    #[test]
    fn cauchy_one_by_one() {
        let f = gf121();
        let base = f.base_field();
        let m = cauchy_matrix(f, &[base.elem(0)], &[base.elem(1)]).unwrap();
        // (0 - 1)^-1 = (-1)^-1 = 10 mod 11
        assert_eq!(m[(0, 0)], f.elem(10, 0));
        assert!(!m[(0, 0)].is_zero());
        let err = cauchy_matrix(f, &[base.elem(3)], &[base.elem(3)]);
        assert!(matches!(err, Err(LinalgError::PointCollision { .. })));
    }

    #[test]
    fn cauchy_parity_is_mds() {
        let f = gf121();
        let base = f.base_field();
        let xs: Vec<_> = (0..4).map(|v| base.elem(v)).collect();
        let ys: Vec<_> = (4..8).map(|v| base.elem(v)).collect();
        let p = cauchy_matrix(f, &xs, &ys).unwrap();
        assert_eq!(is_mds_parity(&p), Ok(true));
    }

    #[test]
    fn mds_rejects_singular_blocks() {
        let f = gf121();
        let ones = FieldMatrix::from_fn(f, 2, 2, |_, _| f.one());
        assert_eq!(is_mds_parity(&ones), Ok(false));
        let zero1 = FieldMatrix::zeros(f, 1, 1);
        assert_eq!(is_mds_parity(&zero1), Ok(false));
    }

    #[test]
    fn mds_guard_refuses_oversized_checks() {
        let f = gf121();
        // Σ C(40,s)·C(40,s) blows well past the bound; entries never matter.
        let big = FieldMatrix::zeros(f, 40, 40);
        assert!(matches!(is_mds_parity(&big), Err(LinalgError::GuardExceeded { .. })));
    }

    #[test]
    fn block_and_select() {
        let f = gf121();
        let m = FieldMatrix::from_fn(f, 3, 4, |r, c| f.elem((r * 4 + c) as u64, 0));
        assert_eq!(m.block(0..3, 0..4), m);
        let empty = m.select_cols(&[]);
        assert_eq!((empty.rows(), empty.cols()), (3, 0));
        let sub = m.block(1..3, 2..4);
        assert_eq!(sub[(0, 0)], m[(1, 2)]);
        assert_eq!(sub[(1, 1)], m[(2, 3)]);
    }

    #[test]
    fn invert_reports_failing_pivot() {
        let f = gf121();
        let mut m = FieldMatrix::identity(f, 3);
        m.set(1, 1, f.zero());
        // column 1 carries no pivot once row 1 is zeroed
        m.set(1, 0, f.zero());
        m.set(1, 2, f.zero());
        assert_eq!(m.invert(), Err(LinalgError::Singular { pivot_col: 1 }));
    }

    #[test]
    fn left_null_space_of_full_row_rank_generator_is_empty() {
        let f = gf121();
        let base = f.base_field();
        let xs: Vec<_> = (0..3).map(|v| base.elem(v)).collect();
        let ys: Vec<_> = (3..7).map(|v| base.elem(v)).collect();
        let p = cauchy_matrix(f, &xs, &ys).unwrap();
        assert_eq!(p.left_null_space().rows(), 0);
        // a repeated row is caught with a one-dimensional left kernel
        let mut dup = p.clone();
        let row0: Vec<_> = dup.row(0).to_vec();
        for (c, v) in row0.iter().enumerate() {
            dup.set(2, c, *v);
        }
        let null = dup.left_null_space();
        assert_eq!(null.rows(), 1);
        let check = dup.vec_mul(null.row(0));
        assert!(check.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn rank_product_inequalities_hold_on_random_pairs() {
        let f = gf121();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let k = rng.random_range(1..=6);
            let l = rng.random_range(1..=6);
            let m = rng.random_range(1..=6);
            let a = random_base_matrix(f, &mut rng, k, l);
            let b = random_base_matrix(f, &mut rng, l, m);
            let ab = a.mul(&b);
            let (ra, rb, rab) = (a.rank(), b.rank(), ab.rank());
            assert!(rab <= ra.min(rb));
            assert!(rab + l >= ra + rb, "sylvester: {rab} + {l} >= {ra} + {rb}");
        }
    }

    #[test]
    fn puncture_generator_equals_shorten_parity_check() {
        // Dual view of deleting coordinates: the parity check of a punctured
        // code spans the same space as the shortened parity check.
        let f = gf121();
        let _base = f.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let k = rng.random_range(1..=3usize);
            let nk = rng.random_range(1..=3usize);
            let n = k + nk;
            // random systematic G = [I | P], H = [-P^T | I]
            let p = random_base_matrix(f, &mut rng, k, nk);
            let mut g = FieldMatrix::zeros(f, k, n);
            let mut h = FieldMatrix::zeros(f, nk, n);
            for i in 0..k {
                g.set(i, i, f.one());
                for j in 0..nk {
                    g.set(i, k + j, p[(i, j)]);
                    h.set(j, i, f.neg(p[(i, j)]));
                }
            }
            for j in 0..nk {
                h.set(j, k + j, f.one());
            }
            // puncture a random nonempty proper coordinate set
            let drop: Vec<usize> = (0..n).filter(|_| rng.random_range(0..2) == 1).collect();
            if drop.len() == n {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|c| !drop.contains(c)).collect();
            let g_punct = g.select_cols(&keep);
            let dual_of_punctured = g_punct.null_space();
            // shorten H on the same coordinates: rows of the row space of H
            // that vanish on `drop`, restricted to `keep`
            let h_on_drop = h.select_cols(&drop);
            let lambda = h_on_drop.left_null_space();
            let shortened_h = lambda.mul(&h).select_cols(&keep);
            assert!(dual_of_punctured.row_space_eq(&shortened_h));
        }
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let mut c = Combinations::new(4, 2);
        let mut seen = Vec::new();
        while let Some(s) = c.next() {
            seen.push(s.to_vec());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(18, 9), 48620);
    }
}
