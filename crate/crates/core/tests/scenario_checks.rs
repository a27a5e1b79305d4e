use gipers::chains::{apply_group_element, OrbitChainComplex, OrbitOptions};
use gipers::group::{check_conjugation_closure, enumerate_group, validate_action};
use gipers::oracles::{brute_force_pbnf, quotient_complex, quotient_filtered};
use gipers::pseudo_distance::{dg_upper_bound, pull_back};
use gipers::scenarios::{builtin, builtins, gen_circle_rooms, gen_two_spheres};
use gipers::{
    barycentric_subdivide, compute_persistence, FieldSpec, FilteredComplex, GradeOperator, GroupAction, GroupSample,
    PersistenceDiagram, SimplicialComplex, VertexFunction, VertexPermutation,
};

fn diagram(fc: &FilteredComplex, group: &GroupAction, options: OrbitOptions) -> PersistenceDiagram {
    compute_persistence(&OrbitChainComplex::build(fc, group, options).unwrap()).unwrap()
}

fn octahedron() -> (SimplicialComplex, Vec<[f64; 3]>) {
    let coords = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut tris = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                tris.push(vec![a, b, c]);
            }
        }
    }
    (SimplicialComplex::new(6, &tris).unwrap(), coords)
}

#[test]
fn octahedron_grades_from_height() {
    let (k, coords) = octahedron();
    let f = VertexFunction::scalar(coords.iter().map(|c| c[2]).collect()).unwrap();
    let fc = FilteredComplex::new(k, f).unwrap();
    for (i, t) in fc.complex().simplices(2).iter().enumerate() {
        let expected = t.iter().map(|&v| coords[v][2]).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(fc.grade(2, i), &[expected]);
        if t.contains(&4) {
            assert_eq!(expected, 1.0);
        }
    }
}

#[test]
fn equator_is_the_zero_sublevel_of_absolute_height() {
    let s = gen_two_spheres(3, 8).unwrap();
    let abs = VertexFunction::scalar(s.phi.rows().iter().map(|r| r[0].abs()).collect()).unwrap();
    let fc = FilteredComplex::new(s.complex.clone(), abs).unwrap();
    let sub = fc.sublevel_complex(&[0.0]).unwrap();
    // two equator rings of 8 vertices
    assert_eq!(sub.count(0), 16);
    assert_eq!(sub.count(1), 16);
    assert_eq!(sub.count(2), 0);
}

#[test]
fn two_spheres_orbit_complex_is_one_sphere() {
    let s = gen_two_spheres(3, 6).unwrap();
    let single = SimplicialComplex::new(
        s.complex.vertex_count() / 2,
        s.complex.simplices(2).iter().filter(|t| t[2] < s.complex.vertex_count() / 2),
    )
    .unwrap();
    let occ = OrbitChainComplex::build(&s.phi_filtered(), &s.group, OrbitOptions::default()).unwrap();
    for d in 0..3 {
        assert_eq!(occ.count(d), single.count(d));
    }
    // φ̄ is the height function on one sphere, ψ̄ its absolute value
    let q = quotient_complex(&s.complex, &s.group).unwrap();
    assert_eq!(q.complex.count(2), single.count(2));
    let qphi = q.push_forward(&s.phi);
    let qpsi = q.push_forward(&s.psi);
    for o in 0..q.complex.vertex_count() {
        assert!(qphi.value(o)[0] >= -1.0 && qphi.value(o)[0] <= 1.0);
        assert_eq!(qpsi.value(o)[0], qphi.value(o)[0].abs());
    }
    let height = FilteredComplex::new(single, VertexFunction::scalar(s.phi.rows()[..q.complex.vertex_count()].iter().map(|r| r[0]).collect()).unwrap()).unwrap();
    let trivial = GroupAction::trivial(height.complex().vertex_count());
    assert_eq!(diagram(&s.phi_filtered(), &s.group, OrbitOptions::default()), diagram(&height, &trivial, OrbitOptions::default()));
}

#[test]
fn antipodal_quotient_of_rooms_is_half_polygon() {
    let s = gen_circle_rooms(10).unwrap();
    let q = quotient_complex(&s.complex, &s.group).unwrap();
    assert_eq!(q.complex.count(0), 10);
    assert_eq!(q.complex.count(1), 10);
    let occ = OrbitChainComplex::build(&s.phi_filtered(), &s.group, OrbitOptions::default()).unwrap();
    assert_eq!((occ.count(0), occ.count(1)), (10, 10));
}

#[test]
fn field_independence_on_scenarios() {
    for s in builtins() {
        for fc in [s.phi_filtered(), s.psi_filtered()] {
            let gf3 = OrbitOptions { field: FieldSpec::GF3, ..Default::default() };
            assert_eq!(diagram(&fc, &s.group, OrbitOptions::default()), diagram(&fc, &s.group, gf3), "{}", s.name);
        }
    }
}

#[test]
fn representative_choice_only_changes_signs() {
    for s in builtins() {
        let fc = s.psi_filtered();
        let base = OrbitOptions { field: FieldSpec::new(5).unwrap(), ..Default::default() };
        let shifted = OrbitOptions { representative_shift: 1, ..base };
        let a = OrbitChainComplex::build(&fc, &s.group, base).unwrap();
        let b = OrbitChainComplex::build(&fc, &s.group, shifted).unwrap();
        assert!(b.check_boundary_square().is_ok());
        for d in 1..a.dims() {
            let (ma, mb) = (a.boundary(d), b.boundary(d));
            for j in 0..ma.cols() {
                let rows = |c: &Vec<(usize, u32)>| c.iter().map(|e| e.0).collect::<Vec<_>>();
                assert_eq!(rows(ma.column(j)), rows(mb.column(j)));
            }
        }
        assert_eq!(compute_persistence(&a).unwrap(), compute_persistence(&b).unwrap());
    }
}

#[test]
fn classical_diagrams_of_rooms_coincide() {
    let s = builtin("circle-rooms").unwrap();
    let id = GroupAction::trivial(s.complex.vertex_count());
    assert_eq!(diagram(&s.phi_filtered(), &id, OrbitOptions::default()), diagram(&s.psi_filtered(), &id, OrbitOptions::default()));
    // symmetric degree 1: a single essential class at the highest peak
    let d = diagram(&s.phi_filtered(), &s.group, OrbitOptions::default());
    assert!(d.degree(1).pairs.is_empty());
    assert_eq!(d.degree(1).essential, vec![-0.25]);
}

#[test]
fn pbnf_saturates_to_betti_numbers() {
    let s = builtin("two-spheres").unwrap();
    let occ = OrbitChainComplex::build(&s.psi_filtered(), &s.group, OrbitOptions::default()).unwrap();
    let betti: Vec<usize> = (0..3).map(|n| brute_force_pbnf(&occ, n, &[5.0], &[6.0]).unwrap()).collect();
    assert_eq!(betti, vec![1, 0, 1]);
    for n in 0..3 {
        assert_eq!(brute_force_pbnf(&occ, n, &[-9.0], &[6.0]).unwrap(), 0);
    }
}

#[test]
fn subdivided_scenario_keeps_symmetric_diagrams() {
    let s = gen_circle_rooms(8).unwrap();
    let sub = gipers::subdivision::subdivide(&s.phi_filtered());
    let lifted = sub.lift_group(&s.group).unwrap();
    assert!(validate_action(sub.filtered.complex(), &lifted).all_pass());
    assert_eq!(
        diagram(&s.phi_filtered(), &s.group, OrbitOptions::default()),
        diagram(&sub.filtered, &lifted, OrbitOptions::default())
    );
    let id = GroupAction::trivial(s.complex.vertex_count());
    let plain = barycentric_subdivide(&s.psi_filtered());
    let pid = GroupAction::trivial(plain.complex().vertex_count());
    assert_eq!(diagram(&s.psi_filtered(), &id, OrbitOptions::default()), diagram(&plain, &pid, OrbitOptions::default()));
}

#[test]
fn rotations_preserve_symmetric_hexagon_diagrams() {
    // H = ⟨rotation by 2⟩ commutes with every rotation of the hexagon
    let n = 6;
    let h = enumerate_group(n, &[VertexPermutation::cyclic_shift(n, 2)], 6).unwrap();
    let rotations = GroupSample::new((0..n).map(|s| VertexPermutation::cyclic_shift(n, s)).collect());
    assert!(check_conjugation_closure(&h, &rotations).closed);
    let k = SimplicialComplex::new(n, (0..n).map(|i| vec![i, (i + 1) % n])).unwrap();
    let fc = FilteredComplex::new(k, VertexFunction::scalar(vec![0.0, 1.0, 0.5, 2.0, 0.25, 1.5]).unwrap()).unwrap();
    let base = diagram(&fc, &h, OrbitOptions::default());
    for g in rotations.elements() {
        assert_eq!(diagram(&apply_group_element(&fc, g).unwrap(), &h, OrbitOptions::default()), base);
    }
    let id = GroupSample::new(vec![VertexPermutation::identity(n)]);
    assert!(check_conjugation_closure(&h, &id).closed);
}

#[test]
fn dg_bound_finds_planted_witness() {
    let s = builtin("circle-rooms").unwrap();
    let g = &s.sample.elements()[5];
    let moved = s.phi_filtered().with_function(pull_back(&s.phi, g)).unwrap();
    // φ∘g = φ∘g, so the sample element g⁻¹-side witness is g itself
    let (b, arg) = dg_upper_bound(&moved, &s.phi_filtered(), &s.sample).unwrap();
    assert_eq!(b.value, 0.0);
    assert_eq!(&arg, g);
}

#[test]
fn mean_operator_differs_from_quotient_route() {
    // the quotient oracle pushes values forward by max, matching the max operator only
    let s = builtin("two-spheres").unwrap();
    let q = quotient_filtered(&s.psi_filtered(), &s.group).unwrap();
    let qid = GroupAction::trivial(q.complex().vertex_count());
    let mean = OrbitOptions { operator: GradeOperator::Mean, ..Default::default() };
    let dq = diagram(&q, &qid, OrbitOptions::default());
    assert_eq!(dq, diagram(&s.psi_filtered(), &s.group, OrbitOptions::default()));
    // vertex orbits average ±x₃ to 0, so every component is born at 0;
    // higher cells average (max − min)/2 of their heights
    let dm = diagram(&s.psi_filtered(), &s.group, mean);
    assert_eq!(dm.degree(0).essential, vec![0.0]);
    assert_eq!(dm.degree(2).essential.len(), 1);
    assert_ne!(dq, dm);
}
