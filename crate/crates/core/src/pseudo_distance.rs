//! Upper bounds for the natural pseudo-distance
//! `d_G(φ, ψ) = inf_g max_x ‖φ(x) − ψ(g(x))‖_∞` from a finite sample of `G`.
//!
//! Only upper bounds are produced here; lower bounds come from diagram
//! distances.

use crate::complex::{FilteredComplex, VertexFunction};
use crate::error::{Error, Result};
use crate::group::{GroupSample, VertexPermutation};

#[derive(Debug, Clone, PartialEq)]
pub struct DgBound {
    pub value: f64,
    /// Index of the first sample element attaining `value`.
    pub argmin: usize,
    pub sample_size: usize,
}

/// `min_g max_x ‖φ(x) − ψ(g(x))‖_∞` over the permutations in `sample`.
pub fn dg_upper_bound(phi: &FilteredComplex, psi: &FilteredComplex, sample: &GroupSample) -> Result<(DgBound, VertexPermutation)> {
    if phi.complex() != psi.complex() {
        return Err(Error::ComplexMismatch);
    }
    if phi.k() != psi.k() {
        return Err(Error::QueryArity { expected: phi.k(), got: psi.k() });
    }
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    sample.validate(phi.complex())?;
    let pulled = sample.elements().iter().map(|g| pull_back(psi.function(), g));
    let bound = min_over_pullbacks(phi.function(), pulled)?;
    let g = sample.elements()[bound.argmin].clone();
    Ok((bound, g))
}

/// Same minimisation, with `ψ∘g` supplied directly as vertex value tables.
/// Used for group elements that are not vertex permutations (e.g. rotations
/// evaluated from a closed-form function).
pub fn dg_upper_bound_from_pullbacks(phi: &VertexFunction, pullbacks: &[VertexFunction]) -> Result<DgBound> {
    min_over_pullbacks(phi, pullbacks.iter().cloned())
}

fn min_over_pullbacks(phi: &VertexFunction, pullbacks: impl Iterator<Item = VertexFunction>) -> Result<DgBound> {
    let mut best: Option<(f64, usize)> = None;
    let mut count = 0;
    for (i, p) in pullbacks.enumerate() {
        if p.vertex_count() != phi.vertex_count() {
            return Err(Error::VertexCountMismatch { expected: phi.vertex_count(), got: p.vertex_count() });
        }
        if p.k() != phi.k() {
            return Err(Error::QueryArity { expected: phi.k(), got: p.k() });
        }
        let d = phi.sup_distance(&p);
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, i));
        }
        count += 1;
    }
    let (value, argmin) = best.ok_or(Error::EmptySample)?;
    Ok(DgBound { value, argmin, sample_size: count })
}

/// `v ↦ f(g(v))`.
pub fn pull_back(f: &VertexFunction, g: &VertexPermutation) -> VertexFunction {
    let k = f.k();
    let mut values = Vec::with_capacity(f.flat().len());
    for v in 0..f.vertex_count() {
        values.extend_from_slice(f.value(g.apply(v)));
    }
    VertexFunction::from_flat(k, values)
}

/// `max_x ‖φ(x) − ψ(f(x))‖_∞` for a single vertex bijection `f`. Zero
/// certifies `φ = ψ∘f` on the vertex set.
pub fn classical_dhomeo_witness(phi: &FilteredComplex, psi: &FilteredComplex, f: &VertexPermutation) -> Result<f64> {
    if phi.complex().vertex_count() != psi.complex().vertex_count() {
        return Err(Error::ComplexMismatch);
    }
    if f.len() != phi.complex().vertex_count() {
        return Err(Error::PermutationSizeMismatch { expected: phi.complex().vertex_count(), got: f.len() });
    }
    if phi.k() != psi.k() {
        return Err(Error::QueryArity { expected: phi.k(), got: psi.k() });
    }
    Ok(phi.function().sup_distance(&pull_back(psi.function(), f)))
}
