//! Barycentric subdivision of filtered complexes.
//!
//! Each simplex `σ` of the input becomes a vertex (its barycenter) carrying
//! the value `grade(σ)`, so every sublevel complex of the subdivision is the
//! subdivision of the corresponding sublevel complex of the input.

use crate::complex::{FilteredComplex, Simplex, SimplicialComplex, VertexFunction};
use crate::error::Result;
use crate::group::{GroupAction, VertexPermutation};

/// A subdivided filtered complex together with the barycenter bookkeeping
/// needed to transport vertex permutations.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub filtered: FilteredComplex,
    original: SimplicialComplex,
    offsets: Vec<usize>,
}

impl Subdivision {
    /// New vertex id of the barycenter of simplex `(dim, index)`.
    pub fn barycenter(&self, dim: usize, index: usize) -> usize {
        self.offsets[dim] + index
    }

    /// The original simplex whose barycenter is vertex `v`.
    pub fn simplex_of(&self, v: usize) -> &Simplex {
        let dim = self.offsets.partition_point(|&o| o <= v) - 1;
        &self.original.simplices(dim)[v - self.offsets[dim]]
    }

    /// Induced permutation on barycenters: `b(σ) ↦ b(h(σ))`.
    pub fn lift_permutation(&self, h: &VertexPermutation) -> Result<VertexPermutation> {
        h.check_automorphism(&self.original)?;
        let n = self.filtered.complex().vertex_count();
        let mut image = vec![0; n];
        for (d, i, s) in self.original.iter() {
            let (t, _) = h.map_simplex(s);
            let j = self.original.index_of(&t).expect("automorphism checked");
            image[self.barycenter(d, i)] = self.barycenter(d, j);
        }
        VertexPermutation::new(image)
    }

    pub fn lift_group(&self, group: &GroupAction) -> Result<GroupAction> {
        let lifted = group.elements().iter().map(|h| self.lift_permutation(h)).collect::<Result<Vec<_>>>()?;
        GroupAction::from_elements(lifted)
    }
}

pub fn barycentric_subdivide(fc: &FilteredComplex) -> FilteredComplex {
    subdivide(fc).filtered
}

pub fn subdivide(fc: &FilteredComplex) -> Subdivision {
    let complex = fc.complex();
    let mut offsets = Vec::with_capacity(complex.dims());
    let mut acc = 0;
    for d in 0..complex.dims() {
        offsets.push(acc);
        acc += complex.count(d);
    }
    let vertex_count = acc;
    let k = fc.k();

    let mut values = Vec::with_capacity(vertex_count * k);
    for (d, i, _) in complex.iter() {
        values.extend_from_slice(fc.grade(d, i));
    }

    // chains[d][i]: all flags ending at simplex (d, i), as barycenter ids.
    // Barycenter ids increase with dimension, so each flag is ascending.
    let mut chains: Vec<Vec<Vec<Simplex>>> = Vec::with_capacity(complex.dims());
    for (d, &base) in offsets.iter().enumerate().take(complex.dims()) {
        let mut level = Vec::with_capacity(complex.count(d));
        for (i, s) in complex.simplices(d).iter().enumerate() {
            let top = base + i;
            let mut flags = vec![vec![top]];
            for face in proper_faces(s) {
                let fd = face.len() - 1;
                let fi = complex.index_of(&face).expect("closed complex");
                for flag in &chains[fd][fi] {
                    let mut f: Simplex = flag.clone();
                    f.push(top);
                    flags.push(f);
                }
            }
            level.push(flags);
        }
        chains.push(level);
    }

    let cells: Vec<Simplex> = chains.into_iter().flatten().flatten().collect();
    let sd = SimplicialComplex::closure_of(vertex_count, cells).expect("flags are valid simplices");
    let function = VertexFunction::from_flat(k, values);
    let filtered = FilteredComplex::new(sd, function).expect("one value per barycenter");
    Subdivision { filtered, original: complex.clone(), offsets }
}

fn proper_faces(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    let n = s.len();
    (1u64..(1u64 << n) - 1).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, validate_action};

    #[test]
    fn single_edge() {
        let k = SimplicialComplex::new(2, [[0, 1]]).unwrap();
        let fc = FilteredComplex::new(k, VertexFunction::scalar(vec![0.0, 1.0]).unwrap()).unwrap();
        let sd = subdivide(&fc);
        let c = sd.filtered.complex();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.count(1), 2);
        assert_eq!(c.simplices(1), &[vec![0, 2], vec![1, 2]]);
        assert_eq!(sd.filtered.function().value(2), &[1.0]);
        assert_eq!(sd.simplex_of(2), &vec![0, 1]);
    }

    #[test]
    fn triangle_counts() {
        let k = SimplicialComplex::new(3, [[0, 1, 2]]).unwrap();
        let fc = FilteredComplex::new(k, VertexFunction::scalar(vec![0.0; 3]).unwrap()).unwrap();
        let c = barycentric_subdivide(&fc);
        assert_eq!(c.complex().count(0), 7);
        assert_eq!(c.complex().count(1), 12);
        assert_eq!(c.complex().count(2), 6);
    }

    #[test]
    fn lifted_action_stays_free_and_becomes_regular() {
        // hexagon with antipodal map; subdivide twice
        let m = 6;
        let k = SimplicialComplex::new(m, (0..m).map(|i| vec![i, (i + 1) % m])).unwrap();
        let fc = FilteredComplex::new(k, VertexFunction::scalar((0..m).map(|v| v as f64).collect()).unwrap()).unwrap();
        let h = enumerate_group(m, &[VertexPermutation::cyclic_shift(m, 3)], 4).unwrap();
        let sd = subdivide(&fc);
        let lifted = sd.lift_group(&h).unwrap();
        assert_eq!(lifted.order(), 2);
        assert!(validate_action(sd.filtered.complex(), &lifted).all_pass());
    }
}
