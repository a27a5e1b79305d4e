//! G-invariant persistent homology on simplicial complexes with a free
//! finite symmetry group.
//!
//! The pipeline: a [`FilteredComplex`] (lower-star grades of vertex values)
//! and a free [`GroupAction`] give an [`OrbitChainComplex`] whose basis is
//! the orbit sums `Σ_h h∘σ`; [`compute_persistence`] and [`pbnf_rank`] read
//! persistence off it, [`bottleneck_distance`] compares diagrams, and
//! [`dg_upper_bound`] bounds the natural pseudo-distance from above.

pub mod chains;
pub mod complex;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod matching;
pub mod metrics;
pub mod oracles;
pub mod persistence;
pub mod pseudo_distance;
pub mod scenarios;
pub mod sparse;
pub mod subdivision;
pub mod verify;

pub use chains::{apply_group_element, build_orbit_complex, GradeOperator, OrbitChainComplex, OrbitOptions};
pub use complex::{FilteredComplex, Simplex, SimplicialComplex, VertexFunction};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use group::{check_conjugation_closure, enumerate_group, validate_action, GroupAction, GroupSample, VertexPermutation};
pub use metrics::{bottleneck_aggregate, bottleneck_distance, verify_stability, MatchingResult};
pub use persistence::{compute_persistence, pbnf_rank, DegreeDiagram, PbnfQuery, PersistenceDiagram};
pub use pseudo_distance::{classical_dhomeo_witness, dg_upper_bound, DgBound};
pub use subdivision::barycentric_subdivide;
