//! Finite simplicial complexes with vertex-valued filtering functions.
//!
//! Simplices are stored as strictly ascending vertex tuples, grouped by
//! dimension and sorted lexicographically within each dimension. The
//! ascending order is the positive orientation used everywhere else.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub type Simplex = Vec<usize>;

/// `a ⪯ b` componentwise.
pub fn dominated(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `a ≺ b`: strictly smaller in every component.
pub fn strictly_below(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x < y)
}

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

fn canonical(vertex_count: usize, raw: &[usize]) -> Result<Simplex> {
    if raw.is_empty() {
        return Err(Error::EmptySimplex);
    }
    let mut s = raw.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex(raw.to_vec()));
    }
    if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
        return Err(Error::VertexOutOfRange { vertex: v, vertex_count });
    }
    Ok(s)
}

/// All nonempty sub-tuples of an ascending tuple.
fn all_faces(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    let n = s.len();
    (1u64..(1u64 << n)).map(move |mask| {
        (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect()
    })
}

impl SimplicialComplex {
    /// Complex on `vertex_count` vertices containing every vertex as a
    /// 0-simplex and the face closure of `cells`.
    pub fn new<S: AsRef<[usize]>>(vertex_count: usize, cells: impl IntoIterator<Item = S>) -> Result<Self> {
        let vertices: Vec<Simplex> = (0..vertex_count).map(|v| vec![v]).collect();
        let cells: Vec<Simplex> = cells.into_iter().map(|c| c.as_ref().to_vec()).collect();
        Self::closure_of(vertex_count, vertices.iter().chain(cells.iter()))
    }

    /// Face closure of `cells`; vertices not touched by any cell are absent.
    pub fn closure_of<S: AsRef<[usize]>>(vertex_count: usize, cells: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for cell in cells {
            let s = canonical(vertex_count, cell.as_ref())?;
            if by_dim.len() < s.len() {
                by_dim.resize_with(s.len(), BTreeSet::new);
            }
            if by_dim[s.len() - 1].contains(&s) {
                continue;
            }
            for face in all_faces(&s) {
                by_dim[face.len() - 1].insert(face);
            }
        }
        Ok(Self::from_sorted(vertex_count, by_dim.into_iter().map(|d| d.into_iter().collect()).collect()))
    }

    /// Trusted constructor: per-dimension lists already closed and sorted.
    pub(crate) fn from_sorted(vertex_count: usize, mut simplices: Vec<Vec<Simplex>>) -> Self {
        while simplices.last().is_some_and(|d| d.is_empty()) {
            simplices.pop();
        }
        let index = simplices
            .iter()
            .map(|d| d.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { vertex_count, simplices, index }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_sorted(vertex_count, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Number of dimensions with storage (top dimension + 1).
    pub fn dims(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.simplices.get(dim).map_or(&[], |d| d.as_slice())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Index of an ascending tuple within its dimension.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let dim = simplex.len().checked_sub(1)?;
        self.index.get(dim)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// `(dim, index, simplex)` for every simplex, by dimension then index.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Simplex)> {
        self.simplices
            .iter()
            .enumerate()
            .flat_map(|(d, list)| list.iter().enumerate().map(move |(i, s)| (d, i, s)))
    }

    /// Maximal simplices (those that are not a face of another simplex).
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: Vec<Vec<bool>> = self.simplices.iter().map(|d| vec![false; d.len()]).collect();
        for (d, _, s) in self.iter() {
            if d == 0 {
                continue;
            }
            for f in facets(s) {
                let i = self.index[d - 1][&f];
                covered[d - 1][i] = true;
            }
        }
        self.iter().filter(|(d, i, _)| !covered[*d][*i]).map(|(_, _, s)| s.clone()).collect()
    }
}

/// Codimension-one faces of an ascending tuple; face `i` omits position `i`.
pub fn facets(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).filter(move |_| s.len() > 1).map(move |i| {
        let mut f = Vec::with_capacity(s.len() - 1);
        f.extend_from_slice(&s[..i]);
        f.extend_from_slice(&s[i + 1..]);
        f
    })
}

/// One finite `k`-tuple per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    k: usize,
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(k: usize, rows: &[Vec<f64>]) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        let mut values = Vec::with_capacity(rows.len() * k);
        for (v, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::ArityMismatch { vertex: v, expected: k, got: row.len() });
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFiniteValue { vertex: v });
            }
            values.extend_from_slice(row);
        }
        Ok(VertexFunction { k, values })
    }

    /// Real-valued function, one value per vertex.
    pub fn scalar(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteValue { vertex: v });
        }
        Ok(VertexFunction { k: 1, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len() / self.k
    }

    pub fn value(&self, v: usize) -> &[f64] {
        &self.values[v * self.k..(v + 1) * self.k]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.k).map(<[f64]>::to_vec).collect()
    }

    /// `max_v ‖self(v) − other(v)‖_∞`.
    pub fn sup_distance(&self, other: &VertexFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub(crate) fn from_flat(k: usize, values: Vec<f64>) -> Self {
        VertexFunction { k, values }
    }

    pub(crate) fn flat(&self) -> &[f64] {
        &self.values
    }
}

/// A simplicial complex together with a vertex function and the induced
/// lower-star grades: the grade of a simplex is the componentwise maximum of
/// its vertex values.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    complex: SimplicialComplex,
    function: VertexFunction,
    grades: Vec<Vec<f64>>,
}

impl FilteredComplex {
    pub fn new(complex: SimplicialComplex, function: VertexFunction) -> Result<Self> {
        if function.vertex_count() != complex.vertex_count() {
            return Err(Error::VertexCountMismatch {
                expected: complex.vertex_count(),
                got: function.vertex_count(),
            });
        }
        let k = function.k();
        let grades = (0..complex.dims())
            .map(|d| {
                let mut flat = Vec::with_capacity(complex.count(d) * k);
                for s in complex.simplices(d) {
                    for c in 0..k {
                        let m = s.iter().map(|&v| function.value(v)[c]).fold(f64::NEG_INFINITY, f64::max);
                        flat.push(m);
                    }
                }
                flat
            })
            .collect();
        Ok(FilteredComplex { complex, function, grades })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn function(&self) -> &VertexFunction {
        &self.function
    }

    pub fn k(&self) -> usize {
        self.function.k()
    }

    pub fn grade(&self, dim: usize, index: usize) -> &[f64] {
        let k = self.k();
        &self.grades[dim][index * k..(index + 1) * k]
    }

    /// Grade of an arbitrary simplex of the complex.
    pub fn grade_of(&self, simplex: &[usize]) -> Option<&[f64]> {
        let i = self.complex.index_of(simplex)?;
        Some(self.grade(simplex.len() - 1, i))
    }

    /// The subcomplex `{σ : grade(σ) ⪯ u}`.
    pub fn sublevel_complex(&self, u: &[f64]) -> Result<SimplicialComplex> {
        if u.len() != self.k() {
            return Err(Error::QueryArity { expected: self.k(), got: u.len() });
        }
        if u.iter().any(|x| x.is_nan()) {
            return Err(Error::InvalidParameter("sublevel threshold is NaN".into()));
        }
        let kept = (0..self.complex.dims())
            .map(|d| {
                self.complex
                    .simplices(d)
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| dominated(self.grade(d, *i), u))
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect();
        Ok(SimplicialComplex::from_sorted(self.complex.vertex_count(), kept))
    }

    /// Same complex, new vertex values.
    pub fn with_function(&self, function: VertexFunction) -> Result<Self> {
        FilteredComplex::new(self.complex.clone(), function)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> FilteredComplex {
        let k = SimplicialComplex::new(3, [[0, 1, 2]]).unwrap();
        FilteredComplex::new(k, VertexFunction::scalar(vec![0.0, 1.0, 2.0]).unwrap()).unwrap()
    }

    #[test]
    fn closure_and_counts() {
        let k = SimplicialComplex::new(4, [vec![2, 0, 1], vec![3]]).unwrap();
        assert_eq!(k.count(0), 4);
        assert_eq!(k.count(1), 3);
        assert_eq!(k.count(2), 1);
        assert!(k.contains(&[0, 2]));
        assert_eq!(k.simplices(2)[0], vec![0, 1, 2]);
    }

    #[test]
    fn rejects_bad_simplices() {
        assert_eq!(
            SimplicialComplex::new(3, [[0, 3]]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 3, vertex_count: 3 }
        );
        assert!(matches!(SimplicialComplex::new(3, [[1, 1]]), Err(Error::RepeatedVertex(_))));
        assert!(matches!(SimplicialComplex::new(3, [Vec::<usize>::new()]), Err(Error::EmptySimplex)));
    }

    #[test]
    fn triangle_grades() {
        let fc = triangle();
        assert_eq!(fc.grade_of(&[0, 1]).unwrap(), &[1.0]);
        assert_eq!(fc.grade_of(&[0, 1, 2]).unwrap(), &[2.0]);
        assert_eq!(fc.grade_of(&[2]).unwrap(), &[2.0]);
    }

    #[test]
    fn constant_function_constant_grades() {
        let k = SimplicialComplex::new(5, [vec![0, 1, 2], vec![2, 3, 4], vec![1, 4]]).unwrap();
        let fc = FilteredComplex::new(k, VertexFunction::scalar(vec![0.25; 5]).unwrap()).unwrap();
        for (d, i, _) in fc.complex().iter() {
            assert_eq!(fc.grade(d, i), &[0.25]);
        }
    }

    #[test]
    fn function_errors() {
        let k = SimplicialComplex::new(3, [[0, 1]]).unwrap();
        let f = VertexFunction::scalar(vec![0.0, 1.0]).unwrap();
        assert_eq!(
            FilteredComplex::new(k, f).unwrap_err(),
            Error::VertexCountMismatch { expected: 3, got: 2 }
        );
        assert!(matches!(VertexFunction::scalar(vec![f64::NAN]), Err(Error::NonFiniteValue { vertex: 0 })));
        assert!(matches!(
            VertexFunction::new(2, &[vec![0.0, 1.0], vec![f64::INFINITY, 0.0]]),
            Err(Error::NonFiniteValue { vertex: 1 })
        ));
        assert!(matches!(VertexFunction::new(2, &[vec![0.0]]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn sublevel_extremes() {
        let fc = triangle();
        assert!(fc.sublevel_complex(&[-0.5]).unwrap().is_empty());
        assert_eq!(&fc.sublevel_complex(&[2.0]).unwrap(), fc.complex());
        let mid = fc.sublevel_complex(&[1.0]).unwrap();
        assert_eq!(mid.total_count(), 3);
        assert!(mid.contains(&[0, 1]));
    }

    #[test]
    fn maximal_simplices_of_mixed_complex() {
        let k = SimplicialComplex::new(5, [vec![0, 1, 2], vec![2, 3]]).unwrap();
        let mut m = k.maximal_simplices();
        m.sort();
        assert_eq!(m, vec![vec![0, 1, 2], vec![2, 3], vec![4]]);
    }

    #[test]
    fn vector_valued_grades() {
        let k = SimplicialComplex::new(2, [[0, 1]]).unwrap();
        let f = VertexFunction::new(2, &[vec![0.0, 3.0], vec![1.0, -1.0]]).unwrap();
        let fc = FilteredComplex::new(k, f).unwrap();
        assert_eq!(fc.grade_of(&[0, 1]).unwrap(), &[1.0, 3.0]);
        assert!(fc.sublevel_complex(&[1.0, 2.0]).unwrap().contains(&[1]));
        assert!(!fc.sublevel_complex(&[1.0, 2.0]).unwrap().contains(&[0]));
    }
}
