//! Finite groups of simplicial automorphisms given as vertex permutations.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// A bijection of `{0, …, n−1}`; `image[v]` is the image of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPermutation {
    image: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::NotABijection(n));
            }
            seen[v] = true;
        }
        Ok(VertexPermutation { image })
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation { image: (0..n).collect() }
    }

    /// `v ↦ v + shift (mod n)`.
    pub fn cyclic_shift(n: usize, shift: usize) -> Self {
        VertexPermutation { image: (0..n).map(|v| (v + shift) % n).collect() }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        VertexPermutation { image: other.image.iter().map(|&v| self.image[v]).collect() }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        VertexPermutation { image: inv }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &VertexPermutation) -> VertexPermutation {
        g.compose(self).compose(&g.inverse())
    }

    /// Image of an ascending simplex: the ascending image tuple and the sign
    /// of the permutation that sorts `(h(v₀), …, h(vₙ))`.
    pub fn map_simplex(&self, simplex: &[usize]) -> (Simplex, i8) {
        let mut mapped: Vec<usize> = simplex.iter().map(|&v| self.image[v]).collect();
        // insertion sort counting transpositions; simplices are short
        let mut sign = 1i8;
        for i in 1..mapped.len() {
            let mut j = i;
            while j > 0 && mapped[j - 1] > mapped[j] {
                mapped.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        (mapped, sign)
    }

    /// Whether every simplex of `complex` is mapped onto a simplex.
    pub fn is_automorphism_of(&self, complex: &SimplicialComplex) -> bool {
        self.len() == complex.vertex_count()
            && complex.iter().all(|(_, _, s)| complex.contains(&self.map_simplex(s).0))
    }

    pub(crate) fn check_automorphism(&self, complex: &SimplicialComplex) -> Result<()> {
        if self.len() != complex.vertex_count() {
            return Err(Error::PermutationSizeMismatch { expected: complex.vertex_count(), got: self.len() });
        }
        for (_, _, s) in complex.iter() {
            if !complex.contains(&self.map_simplex(s).0) {
                return Err(Error::NotAnAutomorphism { simplex: s.clone() });
            }
        }
        Ok(())
    }
}

/// A finite group of vertex permutations. The identity is always stored first.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAction {
    elements: Vec<VertexPermutation>,
    lookup: HashMap<VertexPermutation, usize>,
}

impl GroupAction {
    pub fn trivial(n: usize) -> Self {
        Self::from_checked(vec![VertexPermutation::identity(n)])
    }

    /// Validates that `elements` (without repetitions) form a group.
    pub fn from_elements(elements: Vec<VertexPermutation>) -> Result<Self> {
        let n = elements.first().map(VertexPermutation::len).ok_or_else(|| Error::NotAGroup("no elements".into()))?;
        if let Some(e) = elements.iter().find(|e| e.len() != n) {
            return Err(Error::PermutationSizeMismatch { expected: n, got: e.len() });
        }
        let set: HashSet<&VertexPermutation> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(Error::NotAGroup("repeated element".into()));
        }
        if !elements.iter().any(VertexPermutation::is_identity) {
            return Err(Error::NotAGroup("identity missing".into()));
        }
        for a in &elements {
            if !set.contains(&a.inverse()) {
                return Err(Error::NotAGroup("not closed under inverses".into()));
            }
            for b in &elements {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::NotAGroup("not closed under composition".into()));
                }
            }
        }
        let mut elements = elements;
        let id = elements.iter().position(VertexPermutation::is_identity).unwrap();
        elements.swap(0, id);
        Ok(Self::from_checked(elements))
    }

    fn from_checked(elements: Vec<VertexPermutation>) -> Self {
        let lookup = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        GroupAction { elements, lookup }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.elements[0].len()
    }

    pub fn elements(&self) -> &[VertexPermutation] {
        &self.elements
    }

    pub fn contains(&self, p: &VertexPermutation) -> bool {
        self.lookup.contains_key(p)
    }

    pub fn position(&self, p: &VertexPermutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    /// Vertex orbits, each sorted ascending, listed by smallest member.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let mut orbit: Vec<usize> = self.elements.iter().map(|h| h.apply(v)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                seen[w] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }
}

/// Closure of `generators` under composition, on `vertex_count` vertices.
/// Fails once more than `cap` elements have been produced.
pub fn enumerate_group(vertex_count: usize, generators: &[VertexPermutation], cap: usize) -> Result<GroupAction> {
    for g in generators {
        if g.len() != vertex_count {
            return Err(Error::PermutationSizeMismatch { expected: vertex_count, got: g.len() });
        }
        VertexPermutation::new(g.image.clone())?;
    }
    let id = VertexPermutation::identity(vertex_count);
    let mut elements = vec![id.clone()];
    let mut seen: HashSet<VertexPermutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    // For a finite group, closing under right multiplication by generators
    // already yields inverses.
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if elements.len() >= cap {
                    return Err(Error::GroupCapExceeded(cap));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    if elements.len() > cap {
        return Err(Error::GroupCapExceeded(cap));
    }
    Ok(GroupAction::from_checked(elements))
}

/// A finite list of sampled transformations standing in for a possibly
/// infinite group `G`. Need not be closed under anything.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSample {
    elements: Vec<VertexPermutation>,
    resolution: Option<String>,
}

impl GroupSample {
    pub fn new(elements: Vec<VertexPermutation>) -> Self {
        GroupSample { elements, resolution: None }
    }

    /// Attach a human-readable description of how `G` was discretised.
    pub fn with_resolution(mut self, resolution: impl Into<String>) -> Self {
        self.resolution = Some(resolution.into());
        self
    }

    pub fn elements(&self) -> &[VertexPermutation] {
        &self.elements
    }

    pub fn resolution(&self) -> Option<&str> {
        self.resolution.as_deref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Check that every element is a simplicial automorphism of `complex`.
    pub fn validate(&self, complex: &SimplicialComplex) -> Result<()> {
        self.elements.iter().try_for_each(|g| g.check_automorphism(complex))
    }
}

/// An offending `(group element index, simplex)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub element: usize,
    pub simplex: Simplex,
}

/// Outcome of [`validate_action`]. Each list is empty when the check passes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ActionReport {
    pub size_mismatch: bool,
    pub automorphism: Vec<Violation>,
    pub freeness: Vec<Violation>,
    /// Simplices containing two vertices of one orbit; `element` maps one of
    /// those vertices to the other.
    pub regularity: Vec<Violation>,
}

impl ActionReport {
    pub fn is_automorphism(&self) -> bool {
        !self.size_mismatch && self.automorphism.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.is_automorphism() && self.freeness.is_empty()
    }

    pub fn is_regular(&self) -> bool {
        self.is_automorphism() && self.regularity.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.is_free() && self.is_regular()
    }

    /// First failure as an error, checking automorphism, then freeness.
    pub fn require_free(&self, vertex_count: usize, group_vertices: usize) -> Result<()> {
        if self.size_mismatch {
            return Err(Error::PermutationSizeMismatch { expected: vertex_count, got: group_vertices });
        }
        if let Some(v) = self.automorphism.first() {
            return Err(Error::NotAnAutomorphism { simplex: v.simplex.clone() });
        }
        if let Some(v) = self.freeness.first() {
            return Err(Error::NonFreeAction { simplex: v.simplex.clone() });
        }
        Ok(())
    }
}

pub fn validate_action(complex: &SimplicialComplex, group: &GroupAction) -> ActionReport {
    let mut report = ActionReport::default();
    if group.vertex_count() != complex.vertex_count() {
        report.size_mismatch = true;
        return report;
    }
    for (e, h) in group.elements().iter().enumerate() {
        let is_id = h.is_identity();
        for (_, _, s) in complex.iter() {
            let (image, _) = h.map_simplex(s);
            if !complex.contains(&image) {
                report.automorphism.push(Violation { element: e, simplex: s.clone() });
            } else if !is_id && image == *s {
                report.freeness.push(Violation { element: e, simplex: s.clone() });
            }
            if !is_id {
                let set: HashSet<usize> = s.iter().copied().collect();
                if s.iter().any(|&v| h.apply(v) != v && set.contains(&h.apply(v))) {
                    report.regularity.push(Violation { element: e, simplex: s.clone() });
                }
            }
        }
    }
    report
}

/// Result of [`check_conjugation_closure`]; `witness` holds the first
/// `(sample index, group index)` with `g∘h∘g⁻¹ ∉ H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationCheck {
    pub closed: bool,
    pub witness: Option<(usize, usize)>,
}

pub fn check_conjugation_closure(group: &GroupAction, sample: &GroupSample) -> ConjugationCheck {
    for (gi, g) in sample.elements().iter().enumerate() {
        if g.len() != group.vertex_count() {
            return ConjugationCheck { closed: false, witness: Some((gi, 0)) };
        }
        for (hi, h) in group.elements().iter().enumerate() {
            if !group.contains(&h.conjugate_by(g)) {
                return ConjugationCheck { closed: false, witness: Some((gi, hi)) };
            }
        }
    }
    ConjugationCheck { closed: true, witness: None }
}

/// Index of `g∘h∘g⁻¹` in `group`, when present.
pub fn conjugate_index(group: &GroupAction, g: &VertexPermutation, h: usize) -> Option<usize> {
    group.position(&group.elements()[h].conjugate_by(g))
}
