//! Independent reference computations.
//!
//! Everything here works from the definitions with dense Gaussian
//! elimination and its own modular arithmetic; nothing is shared with the
//! column reduction in [`crate::persistence`].

use std::collections::{BTreeSet, HashMap};

use crate::chains::OrbitChainComplex;
use crate::complex::{dominated, FilteredComplex, SimplicialComplex, VertexFunction};
use crate::error::{Error, Result};
use crate::group::{validate_action, GroupAction};
use crate::persistence::{DegreeDiagram, PersistenceDiagram};

/// Largest chain-group dimension the dense oracle accepts.
pub const ORACLE_CAP: usize = 600;

#[derive(Clone, Copy)]
struct Zp(i64);

impl Zp {
    fn norm(self, x: i64) -> i64 {
        x.rem_euclid(self.0)
    }

    fn inv(self, a: i64) -> i64 {
        // extended Euclid
        let (mut r0, mut r1) = (self.0, self.norm(a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.norm(t0)
    }
}

/// Row-reduces `rows` in place; returns the pivot column of each nonzero row.
fn row_reduce(zp: Zp, rows: &mut Vec<Vec<i64>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = zp.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = zp.norm(*x * inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = zp.norm(*x - f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn dense_rank(zp: Zp, mut vectors: Vec<Vec<i64>>, width: usize) -> usize {
    row_reduce(zp, &mut vectors, width).len()
}

/// Basis of `{x : A x = 0}` for `A` given by its columns (each of length `height`).
fn kernel(zp: Zp, columns: &[Vec<i64>], height: usize) -> Vec<Vec<i64>> {
    let width = columns.len();
    let mut rows: Vec<Vec<i64>> = (0..height).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let pivots = row_reduce(zp, &mut rows, width);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    (0..width)
        .filter(|c| !pivot_set.contains(c))
        .map(|free| {
            let mut x = vec![0i64; width];
            x[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = zp.norm(-rows[r][free]);
            }
            x
        })
        .collect()
}

struct DenseView<'a> {
    occ: &'a OrbitChainComplex,
    zp: Zp,
}

impl DenseView<'_> {
    /// Column `j` of `∂_d` as a dense vector of length `count(d − 1)`.
    fn boundary_column(&self, d: usize, j: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.occ.count(d - 1)];
        for &(i, c) in self.occ.boundary_ref(d).expect("dimension in range").column(j) {
            v[i] = c as i64;
        }
        v
    }

    /// `rank H_n(C^{⪯a}) → H_n(C^{⪯b})` for `a ⪯ b`.
    fn rank_between(&self, n: usize, a: &[f64], b: &[f64]) -> usize {
        let occ = self.occ;
        if n >= occ.dims() {
            return 0;
        }
        let dim_n = occ.count(n);
        let in_a: Vec<usize> = (0..dim_n).filter(|&i| dominated(occ.grade(n, i), a)).collect();
        // cycles of degree n supported in the sublevel at `a`
        let cycles: Vec<Vec<i64>> = if n == 0 {
            in_a.iter().map(|&i| unit(dim_n, i)).collect()
        } else {
            let cols: Vec<Vec<i64>> = in_a.iter().map(|&j| self.boundary_column(n, j)).collect();
            kernel(self.zp, &cols, occ.count(n - 1))
                .into_iter()
                .map(|x| {
                    let mut full = vec![0i64; dim_n];
                    for (k, &j) in in_a.iter().enumerate() {
                        full[j] = x[k];
                    }
                    full
                })
                .collect()
        };
        let boundaries: Vec<Vec<i64>> = if n + 1 < occ.dims() {
            (0..occ.count(n + 1))
                .filter(|&j| dominated(occ.grade(n + 1, j), b))
                .map(|j| self.boundary_column(n + 1, j))
                .collect()
        } else {
            Vec::new()
        };
        let dim_z = cycles.len();
        let dim_b = dense_rank(self.zp, boundaries.clone(), dim_n);
        let dim_sum = dense_rank(self.zp, cycles.into_iter().chain(boundaries).collect(), dim_n);
        let dim_cap = dim_z + dim_b - dim_sum;
        dim_z - dim_cap
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn check_cap(occ: &OrbitChainComplex) -> Result<()> {
    let size = (0..occ.dims()).map(|d| occ.count(d)).max().unwrap_or(0);
    if size > ORACLE_CAP {
        return Err(Error::OracleSizeCap { size, cap: ORACLE_CAP });
    }
    Ok(())
}

/// Rank of `i_*: H_n(C̄^{⪯u}) → H_n(C̄^{⪯v})` by dense elimination:
/// `dim Z − (dim Z + dim B − dim(Z + B))`.
pub fn brute_force_pbnf(occ: &OrbitChainComplex, n: usize, u: &[f64], v: &[f64]) -> Result<usize> {
    check_cap(occ)?;
    if u.len() != occ.k() || v.len() != occ.k() {
        return Err(Error::QueryArity { expected: occ.k(), got: u.len() });
    }
    if !u.iter().zip(v).all(|(a, b)| a < b) {
        return Err(Error::NotStrictlyBelow);
    }
    let view = DenseView { occ, zp: Zp(occ.field().characteristic() as i64) };
    Ok(view.rank_between(n, u, v))
}

/// Persistence diagram recovered from ranks at the critical values by
/// inclusion–exclusion.
pub fn brute_force_diagram(occ: &OrbitChainComplex) -> Result<PersistenceDiagram> {
    check_cap(occ)?;
    if occ.k() != 1 {
        return Err(Error::NotScalar(occ.k()));
    }
    let view = DenseView { occ, zp: Zp(occ.field().characteristic() as i64) };
    let mut crit: Vec<f64> = (0..occ.dims()).flat_map(|d| (0..occ.count(d)).map(move |i| occ.grade(d, i)[0])).collect();
    crit.sort_by(f64::total_cmp);
    crit.dedup();
    let m = crit.len();

    let mut degrees = Vec::new();
    for n in 0..occ.dims() {
        let mut beta = vec![vec![0usize; m + 1]; m + 1];
        for i in 1..=m {
            for j in i..=m {
                beta[i][j] = view.rank_between(n, &[crit[i - 1]], &[crit[j - 1]]);
            }
        }
        // row 0 stands for the empty sublevel
        let b = |i: usize, j: usize| beta[i][j] as i64;
        let mut pairs = Vec::new();
        let mut essential = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                let mult = b(i, j - 1) - b(i - 1, j - 1) - b(i, j) + b(i - 1, j);
                debug_assert!(mult >= 0);
                for _ in 0..mult {
                    pairs.push((crit[i - 1], crit[j - 1]));
                }
            }
            for _ in 0..b(i, m) - b(i - 1, m) {
                essential.push(crit[i - 1]);
            }
        }
        degrees.push(DegreeDiagram::new(pairs, essential)?);
    }
    Ok(PersistenceDiagram::new(degrees))
}

/// Quotient of a complex by a free, regular action.
#[derive(Debug, Clone, PartialEq)]
pub struct Quotient {
    pub complex: SimplicialComplex,
    /// Orbit index of each original vertex.
    pub vertex_orbit: Vec<usize>,
}

impl Quotient {
    /// `ω ↦ max_{x∈ω} f(x)` componentwise.
    pub fn push_forward(&self, f: &VertexFunction) -> VertexFunction {
        let k = f.k();
        let n = self.complex.vertex_count();
        let mut rows = vec![vec![f64::NEG_INFINITY; k]; n];
        for (v, &o) in self.vertex_orbit.iter().enumerate() {
            for (c, x) in f.value(v).iter().enumerate() {
                rows[o][c] = rows[o][c].max(*x);
            }
        }
        VertexFunction::new(k, &rows).expect("every orbit is nonempty")
    }
}

pub fn quotient_complex(complex: &SimplicialComplex, group: &GroupAction) -> Result<Quotient> {
    let report = validate_action(complex, group);
    report.require_free(complex.vertex_count(), group.vertex_count())?;
    if let Some(v) = report.regularity.first() {
        return Err(Error::IrregularAction { simplex: v.simplex.clone() });
    }
    let orbits = group.vertex_orbits();
    let mut vertex_orbit = vec![0; complex.vertex_count()];
    for (o, orbit) in orbits.iter().enumerate() {
        for &v in orbit {
            vertex_orbit[v] = o;
        }
    }
    let mut images: HashMap<Vec<usize>, usize> = HashMap::new();
    for (_, _, s) in complex.iter() {
        let mut img: Vec<usize> = s.iter().map(|&v| vertex_orbit[v]).collect();
        img.sort_unstable();
        *images.entry(img).or_default() += 1;
    }
    // each image must come from exactly one orbit of simplices
    if let Some((img, _)) = images.iter().find(|(_, &c)| c != group.order()) {
        return Err(Error::QuotientNotSimplicial { orbits: img.clone() });
    }
    let q = SimplicialComplex::closure_of(orbits.len(), images.into_keys())?;
    Ok(Quotient { complex: q, vertex_orbit })
}

/// Quotient complex carrying the max-over-orbit function.
pub fn quotient_filtered(fc: &FilteredComplex, group: &GroupAction) -> Result<FilteredComplex> {
    let q = quotient_complex(fc.complex(), group)?;
    let f = q.push_forward(fc.function());
    FilteredComplex::new(q.complex, f)
}
