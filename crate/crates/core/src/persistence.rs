//! Persistence of graded orbit chain complexes.
//!
//! Scalar grades (`k = 1`) are reduced into diagrams by standard column
//! reduction; persistent Betti numbers at a single point `(u, v)` are
//! available for any `k` through exact ranks.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::chains::OrbitChainComplex;
use crate::complex::{dominated, strictly_below};
use crate::error::{Error, Result};
use crate::sparse::{axpy, rank, Column};

/// Tie-break rule for simultaneous grades, recorded in exported metadata.
pub const TIEBREAK: &str = "grade,dimension,canonical-representative";

/// Finite pairs and essential births of one homology degree.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DegreeDiagram {
    pub pairs: Vec<(f64, f64)>,
    pub essential: Vec<f64>,
}

impl DegreeDiagram {
    /// Sorts points and drops zero-length pairs.
    pub fn new(mut pairs: Vec<(f64, f64)>, mut essential: Vec<f64>) -> Result<Self> {
        if pairs.iter().any(|&(b, d)| b > d || !b.is_finite() || !d.is_finite()) {
            return Err(Error::Format("finite pair with birth > death or non-finite coordinate".into()));
        }
        if essential.iter().any(|b| !b.is_finite()) {
            return Err(Error::Format("non-finite essential birth".into()));
        }
        pairs.retain(|&(b, d)| d > b);
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        essential.sort_by(f64::total_cmp);
        Ok(DegreeDiagram { pairs, essential })
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.essential.is_empty()
    }

    /// Number of classes born at or before `u` and still alive at `v`.
    pub fn rank_at(&self, u: f64, v: f64) -> usize {
        self.pairs.iter().filter(|&&(b, d)| b <= u && v < d).count() + self.essential.iter().filter(|&&b| b <= u).count()
    }
}

#[derive(Debug, Clone, Default)]
pub struct PersistenceDiagram {
    degrees: Vec<DegreeDiagram>,
}

static EMPTY: DegreeDiagram = DegreeDiagram { pairs: Vec::new(), essential: Vec::new() };

impl PartialEq for PersistenceDiagram {
    /// Multiset equality; absent degrees count as empty.
    fn eq(&self, other: &Self) -> bool {
        let n = self.degrees.len().max(other.degrees.len());
        (0..n).all(|d| self.degree(d) == other.degree(d))
    }
}

impl PersistenceDiagram {
    pub fn new(degrees: Vec<DegreeDiagram>) -> Self {
        PersistenceDiagram { degrees }
    }

    pub fn degree(&self, n: usize) -> &DegreeDiagram {
        self.degrees.get(n).unwrap_or(&EMPTY)
    }

    /// Number of stored degrees (top degree + 1).
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.iter().all(DegreeDiagram::is_empty)
    }

    pub fn degrees(&self) -> &[DegreeDiagram] {
        &self.degrees
    }
}

/// A point `(u, v)` with `u ≺ v` at which to evaluate the degree-`n` PBNF.
#[derive(Debug, Clone, PartialEq)]
pub struct PbnfQuery {
    pub degree: usize,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl PbnfQuery {
    pub fn new(degree: usize, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::QueryArity { expected: u.len(), got: v.len() });
        }
        if !strictly_below(&u, &v) {
            return Err(Error::NotStrictlyBelow);
        }
        Ok(PbnfQuery { degree, u, v })
    }

    pub fn scalar(degree: usize, u: f64, v: f64) -> Result<Self> {
        Self::new(degree, vec![u], vec![v])
    }
}

/// Diagram of a scalar-graded orbit complex over its own field.
pub fn compute_persistence(occ: &OrbitChainComplex) -> Result<PersistenceDiagram> {
    if occ.k() != 1 {
        return Err(Error::NotScalar(occ.k()));
    }
    occ.check_boundary_square()?;
    occ.check_monotone()?;
    let field = occ.field();

    let mut order: Vec<(usize, usize)> = (0..occ.dims()).flat_map(|d| (0..occ.count(d)).map(move |i| (d, i))).collect();
    order.sort_by(|a, b| {
        occ.grade(a.0, a.1)[0]
            .total_cmp(&occ.grade(b.0, b.1)[0])
            .then(a.0.cmp(&b.0))
            .then(a.1.cmp(&b.1))
    });
    let mut offsets = vec![0; occ.dims() + 1];
    for d in 0..occ.dims() {
        offsets[d + 1] = offsets[d] + occ.count(d);
    }
    let mut position = vec![0; order.len()];
    for (p, &(d, i)) in order.iter().enumerate() {
        position[offsets[d] + i] = p;
    }

    let mut pivot_of_low: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<Column> = Vec::with_capacity(order.len());
    let mut is_pivot_row = vec![false; order.len()];
    for &(d, i) in &order {
        let mut col: Column = match (d, occ.boundary_ref(d)) {
            (0, _) | (_, None) => Vec::new(),
            (_, Some(m)) => m.column(i).iter().map(|&(r, c)| (position[offsets[d - 1] + r], c)).collect(),
        };
        col.sort_unstable();
        while let Some(&(low, c)) = col.last() {
            match pivot_of_low.get(&low) {
                Some(&j) => {
                    let p = &reduced[j];
                    let factor = field.neg(field.mul(c, field.inv(p.last().unwrap().1)));
                    col = axpy(field, &col, factor, p);
                }
                None => break,
            }
        }
        if let Some(&(low, _)) = col.last() {
            pivot_of_low.insert(low, reduced.len());
            is_pivot_row[low] = true;
        }
        reduced.push(col);
    }

    let grade_at = |p: usize| occ.grade(order[p].0, order[p].1)[0];
    let mut pairs: Vec<Vec<(f64, f64)>> = vec![Vec::new(); occ.dims()];
    let mut essential: Vec<Vec<f64>> = vec![Vec::new(); occ.dims()];
    for (p, col) in reduced.iter().enumerate() {
        if let Some(&(low, _)) = col.last() {
            pairs[order[low].0].push((grade_at(low), grade_at(p)));
        } else if !is_pivot_row[p] {
            essential[order[p].0].push(grade_at(p));
        }
    }
    let degrees = pairs
        .into_iter()
        .zip(essential)
        .map(|(p, e)| DegreeDiagram::new(p, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(PersistenceDiagram { degrees })
}

/// Rank of `H_n(C̄^{⪯u}) → H_n(C̄^{⪯v})`.
///
/// Uses `dim Z_n^u − dim(B_n^v ∩ C_n^u)`, where the intersection dimension is
/// `rank ∂_{n+1}|_v − rank` of the same columns with the rows of `C_n^u`
/// removed.
pub fn pbnf_rank(occ: &OrbitChainComplex, query: &PbnfQuery) -> Result<usize> {
    if query.u.len() != occ.k() {
        return Err(Error::QueryArity { expected: occ.k(), got: query.u.len() });
    }
    if !strictly_below(&query.u, &query.v) {
        return Err(Error::NotStrictlyBelow);
    }
    let n = query.degree;
    if n >= occ.dims() {
        return Ok(0);
    }
    let field = occ.field();
    let in_u: Vec<bool> = (0..occ.count(n)).map(|i| dominated(occ.grade(n, i), &query.u)).collect();
    let chains_u = in_u.iter().filter(|&&b| b).count();

    let rank_dn = match (n, occ.boundary_ref(n)) {
        (0, _) | (_, None) => 0,
        (_, Some(m)) => rank(field, (0..m.cols()).filter(|&j| in_u[j]).map(|j| m.column(j).clone())),
    };
    let (rank_b, rank_b_outside) = match occ.boundary_ref(n + 1) {
        None => (0, 0),
        Some(m) => {
            let cols: Vec<&Column> = (0..m.cols())
                .filter(|&j| dominated(occ.grade(n + 1, j), &query.v))
                .map(|j| m.column(j))
                .collect();
            let full = rank(field, cols.iter().map(|c| (*c).clone()));
            let outside = rank(field, cols.iter().map(|c| c.iter().copied().filter(|&(r, _)| !in_u[r]).collect()));
            (full, outside)
        }
    };
    let cycles = chains_u - rank_dn;
    let intersection = rank_b - rank_b_outside;
    Ok(cycles - intersection)
}

/// Total order used by tests and exports for diagrams.
pub fn cmp_pair(a: &(f64, f64), b: &(f64, f64)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1))
}
