use std::fmt;

use crate::BitVector;

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from its rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "every row must have {cols} columns"
        );
        Self { cols, rows }
    }

    /// Convenience constructor from nested 0/1 rows.
    pub fn from_u8_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| BitVector::from_u8s(r)).collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_indices(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.get(c))
                .map(|(i, _)| i),
        )
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `self · x` for a column vector `x`.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        BitVector::from_indices(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(x))
                .map(|(i, _)| i),
        )
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.num_rows(), "inner dimensions differ");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(rhs.cols);
                for k in r.ones() {
                    acc.add_assign(&rhs.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix {
            cols: rhs.cols,
            rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).rank
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a matrix.
///
/// `reduced` has the same shape as the input; its first `rank` rows are the
/// nonzero rows, with leading ones in the columns listed in `pivots`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonForm {
    pub pivots: Vec<usize>,
    pub reduced: BitMatrix,
    pub rank: usize,
}

/// Gauss-Jordan elimination over GF(2).
pub fn row_reduce(m: &BitMatrix) -> EchelonForm {
    let mut rows = m.rows.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.add_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    EchelonForm {
        rank: pivots.len(),
        pivots,
        reduced: BitMatrix {
            cols: m.cols,
            rows,
        },
    }
}

/// A basis of the right null space `{x : m·x = 0}`.
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVector> {
    let ech = row_reduce(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::unit(m.cols, free);
            for (r, &p) in ech.pivots.iter().enumerate() {
                if ech.reduced.get(r, free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Standard basis vectors completing `span(sub)` to the whole space.
///
/// The representatives are the unit vectors at the non-pivot columns of the
/// echelon form of `sub`, so together with `sub` they span `GF(2)^ambient_dim`.
pub fn quotient_basis(sub: &[BitVector], ambient_dim: usize) -> Vec<BitVector> {
    let m = BitMatrix::from_rows(ambient_dim, sub.to_vec());
    let ech = row_reduce(&m);
    let mut is_pivot = vec![false; ambient_dim];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..ambient_dim)
        .filter(|&c| !is_pivot[c])
        .map(|c| BitVector::unit(ambient_dim, c))
        .collect()
}

/// Some `x` with `m·x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &BitMatrix, b: &BitVector) -> Option<BitVector> {
    assert_eq!(b.len(), m.num_rows(), "right-hand side length must equal row count");
    let augmented = BitMatrix {
        cols: m.cols + 1,
        rows: m
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVector::from_bits(&[b.get(i)])))
            .collect(),
    };
    let ech = row_reduce(&augmented);
    if ech.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = BitVector::zeros(m.cols);
    for (r, &p) in ech.pivots.iter().enumerate() {
        if ech.reduced.get(r, m.cols) {
            x.set(p, true);
        }
    }
    Some(x)
}
