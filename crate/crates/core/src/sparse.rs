//! Column-sparse matrices over GF(p).

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::field::FieldSpec;

/// Sparse column: `(row, coefficient)` sorted by row, no zero coefficients.
pub type Column = Vec<(usize, u32)>;

/// `target += coeff · source`.
pub fn axpy(field: FieldSpec, target: &Column, coeff: u32, source: &Column) -> Column {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let take_t = j >= source.len() || (i < target.len() && target[i].0 < source[j].0);
        let take_s = i >= target.len() || (j < source.len() && source[j].0 < target[i].0);
        if take_t {
            out.push(target[i]);
            i += 1;
        } else if take_s {
            let c = field.mul(coeff, source[j].1);
            if c != 0 {
                out.push((source[j].0, c));
            }
            j += 1;
        } else {
            let c = field.add(target[i].1, field.mul(coeff, source[j].1));
            if c != 0 {
                out.push((target[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Column>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Column>) -> Self {
        debug_assert!(columns.iter().all(|c| c.iter().all(|&(r, v)| r < rows && v != 0)));
        SparseMatrix { rows, columns }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &Column {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// `self · rhs` over `field`.
    pub fn mul(&self, rhs: &SparseMatrix, field: FieldSpec) -> SparseMatrix {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .fold(Vec::new(), |acc, &(k, c)| axpy(field, &acc, c, &self.columns[k]))
            })
            .collect();
        SparseMatrix { rows: self.rows, columns }
    }

    /// Entries as `row col coeff` lines, column-major.
    pub fn triplets(&self) -> String {
        let mut s = String::new();
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, c) in col {
                let _ = writeln!(s, "{i} {j} {c}");
            }
        }
        s
    }
}

/// Rank of the span of `columns` (columns are consumed).
pub fn rank(field: FieldSpec, columns: impl IntoIterator<Item = Column>) -> usize {
    let mut pivots: HashMap<usize, Column> = HashMap::new();
    for mut col in columns {
        while let Some(&(low, c)) = col.last() {
            match pivots.get(&low) {
                Some(p) => {
                    let pc = p.last().unwrap().1;
                    let factor = field.neg(field.mul(c, field.inv(pc)));
                    col = axpy(field, &col, factor, p);
                }
                None => {
                    pivots.insert(low, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}
