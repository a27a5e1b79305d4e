//! Chain complexes of symmetric chains.
//!
//! For a finite group `H = {h₁, …, h_r}` acting freely on a complex, the
//! basis elements are the orbit sums `Σᵢ hᵢ∘σ`, one per `H`-orbit of
//! simplices. The boundary of an orbit sum is again a combination of orbit
//! sums, which gives the boundary matrices below.

use std::collections::HashMap;
use std::fmt;

use crate::complex::{dominated, facets, FilteredComplex, Simplex, VertexFunction};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{validate_action, GroupAction, VertexPermutation};
use crate::sparse::{Column, SparseMatrix};

/// How an orbit element's grade is derived from its members' grades.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradeOperator {
    /// Componentwise maximum: the smallest grade whose sublevel contains
    /// every member.
    #[default]
    Max,
    /// Componentwise arithmetic mean of member grades.
    Mean,
}

impl fmt::Display for GradeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GradeOperator::Max => "max",
            GradeOperator::Mean => "mean",
        })
    }
}

impl std::str::FromStr for GradeOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(GradeOperator::Max),
            "mean" => Ok(GradeOperator::Mean),
            other => Err(Error::InvalidParameter(format!("unknown operator {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrbitOptions {
    pub field: FieldSpec,
    pub operator: GradeOperator,
    /// The positively oriented member of each orbit is `h_j(canonical)` with
    /// `j = representative_shift mod |H|`. Only changes basis signs.
    pub representative_shift: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitBasisElement {
    /// Lexicographically smallest member; fixes the ordering of the basis.
    pub canonical: Simplex,
    /// Member carrying sign +1.
    pub representative: Simplex,
    /// `(simplex, sign)` for `hᵢ∘representative`, in group element order.
    pub members: Vec<(Simplex, i8)>,
}

#[derive(Debug, Clone)]
pub struct OrbitChainComplex {
    options: OrbitOptions,
    k: usize,
    group_order: usize,
    basis: Vec<Vec<OrbitBasisElement>>,
    grades: Vec<Vec<f64>>,
    /// `boundaries[n]`: `C̄_n → C̄_{n−1}`; `boundaries[0]` has no rows.
    boundaries: Vec<SparseMatrix>,
    lookup: Vec<HashMap<Simplex, (usize, i8)>>,
}

/// Build the orbit chain complex with default options (GF(2), max).
pub fn build_orbit_complex(fc: &FilteredComplex, group: &GroupAction, operator: GradeOperator) -> Result<OrbitChainComplex> {
    OrbitChainComplex::build(fc, group, OrbitOptions { operator, ..Default::default() })
}

impl OrbitChainComplex {
    pub fn build(fc: &FilteredComplex, group: &GroupAction, options: OrbitOptions) -> Result<Self> {
        let complex = fc.complex();
        validate_action(complex, group).require_free(complex.vertex_count(), group.vertex_count())?;
        let field = options.field;
        let k = fc.k();
        let r = group.order();
        let shift = &group.elements()[options.representative_shift % r];

        let mut basis: Vec<Vec<OrbitBasisElement>> = Vec::with_capacity(complex.dims());
        let mut lookup: Vec<HashMap<Simplex, (usize, i8)>> = Vec::with_capacity(complex.dims());
        let mut grades = Vec::with_capacity(complex.dims());
        for d in 0..complex.dims() {
            let mut level = Vec::new();
            let mut map: HashMap<Simplex, (usize, i8)> = HashMap::new();
            let mut flat = Vec::new();
            for s in complex.simplices(d) {
                if map.contains_key(s) {
                    continue;
                }
                // simplices are visited in lexicographic order, so `s` is the
                // smallest member of its orbit
                let (rep, _) = shift.map_simplex(s);
                let members: Vec<(Simplex, i8)> = group.elements().iter().map(|h| h.map_simplex(&rep)).collect();
                let o = level.len();
                for (m, sign) in &members {
                    if map.insert(m.clone(), (o, *sign)).is_some() {
                        return Err(Error::NonFreeAction { simplex: m.clone() });
                    }
                }
                for c in 0..k {
                    let comps = members.iter().map(|(m, _)| fc.grade_of(m).expect("automorphism")[c]);
                    flat.push(match options.operator {
                        GradeOperator::Max => comps.fold(f64::NEG_INFINITY, f64::max),
                        GradeOperator::Mean => comps.sum::<f64>() / r as f64,
                    });
                }
                level.push(OrbitBasisElement { canonical: s.clone(), representative: rep, members });
            }
            basis.push(level);
            lookup.push(map);
            grades.push(flat);
        }

        let mut boundaries = Vec::with_capacity(basis.len());
        for d in 0..basis.len() {
            if d == 0 {
                boundaries.push(SparseMatrix::zero(0, basis[0].len()));
                continue;
            }
            let columns = basis[d]
                .iter()
                .map(|e| {
                    let mut acc: HashMap<usize, i64> = HashMap::new();
                    for (i, face) in facets(&e.representative).enumerate() {
                        let (o, sign) = lookup[d - 1][&face];
                        let alt = if i % 2 == 0 { 1 } else { -1 };
                        *acc.entry(o).or_default() += alt * sign as i64;
                    }
                    let mut col: Column = acc
                        .into_iter()
                        .map(|(o, c)| (o, field.reduce(c)))
                        .filter(|&(_, c)| c != 0)
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundaries.push(SparseMatrix::new(basis[d - 1].len(), columns));
        }

        Ok(OrbitChainComplex { options, k, group_order: r, basis, grades, boundaries, lookup })
    }

    pub fn field(&self) -> FieldSpec {
        self.options.field
    }

    pub fn operator(&self) -> GradeOperator {
        self.options.operator
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn dims(&self) -> usize {
        self.basis.len()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.basis.get(dim).map_or(0, Vec::len)
    }

    pub fn total_count(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    pub fn elements(&self, dim: usize) -> &[OrbitBasisElement] {
        self.basis.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn grade(&self, dim: usize, index: usize) -> &[f64] {
        &self.grades[dim][index * self.k..(index + 1) * self.k]
    }

    /// `∂_dim`; an empty matrix past the top dimension.
    pub fn boundary(&self, dim: usize) -> SparseMatrix {
        match self.boundaries.get(dim) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(self.count(dim.saturating_sub(1)), 0),
        }
    }

    pub(crate) fn boundary_ref(&self, dim: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(dim)
    }

    /// Orbit index and sign of a simplex within its orbit element.
    pub fn orbit_of(&self, simplex: &[usize]) -> Option<(usize, i8)> {
        let d = simplex.len().checked_sub(1)?;
        self.lookup.get(d)?.get(simplex).copied()
    }

    /// Verifies `∂_{n} ∘ ∂_{n+1} = 0` for every `n`.
    pub fn check_boundary_square(&self) -> Result<()> {
        for d in 1..self.boundaries.len().saturating_sub(1) {
            if !self.boundaries[d].mul(&self.boundaries[d + 1], self.field()).is_zero() {
                return Err(Error::BoundarySquareNonzero(d));
            }
        }
        Ok(())
    }

    /// Verifies that every face with a nonzero coefficient has grade ⪯ the
    /// grade of its coface.
    pub fn check_monotone(&self) -> Result<()> {
        for d in 1..self.boundaries.len() {
            for (j, col) in self.boundaries[d].columns().iter().enumerate() {
                if col.iter().any(|&(i, _)| !dominated(self.grade(d - 1, i), self.grade(d, j))) {
                    return Err(Error::NonMonotoneGrades(d));
                }
            }
        }
        Ok(())
    }

    /// Boundary matrices as `row col coeff` triplets, one block per degree.
    pub fn debug_dump(&self) -> String {
        let mut s = String::new();
        for (d, m) in self.boundaries.iter().enumerate().skip(1) {
            s.push_str(&format!("# boundary {d}: {} x {}\n", m.rows(), m.cols()));
            s.push_str(&m.triplets());
        }
        s
    }
}

/// The filtered complex with vertex values pulled back along `g`:
/// `v ↦ f(g(v))`.
pub fn apply_group_element(fc: &FilteredComplex, g: &VertexPermutation) -> Result<FilteredComplex> {
    g.check_automorphism(fc.complex())?;
    let f = fc.function();
    let k = f.k();
    let mut values = Vec::with_capacity(f.vertex_count() * k);
    for v in 0..f.vertex_count() {
        values.extend_from_slice(f.value(g.apply(v)));
    }
    fc.with_function(VertexFunction::from_flat(k, values))
}
