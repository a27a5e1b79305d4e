//! Deterministic scenario generators: antipodal "circle rooms", the
//! two-spheres swap example, and small random complexes for fuzzing.

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{FilteredComplex, Simplex, SimplicialComplex, VertexFunction};
use crate::error::{Error, Result};
use crate::group::{enumerate_group, GroupAction, GroupSample, VertexPermutation};

pub const CIRCLE_ROOMS_DEFAULT_N: usize = 12;
pub const TWO_SPHERES_DEFAULT_RINGS: usize = 4;
pub const TWO_SPHERES_DEFAULT_LONGITUDES: usize = 12;

pub const BUILTIN_NAMES: [&str; 2] = ["circle-rooms", "two-spheres"];

/// A complex with two filtering functions, a free symmetry group `H`, a
/// finite sample of `G`, and a vertex bijection `f` with `φ = ψ∘f`.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub complex: SimplicialComplex,
    pub phi: VertexFunction,
    pub psi: VertexFunction,
    pub group: GroupAction,
    pub sample: GroupSample,
    pub witness: VertexPermutation,
}

impl Scenario {
    pub fn phi_filtered(&self) -> FilteredComplex {
        FilteredComplex::new(self.complex.clone(), self.phi.clone()).expect("generator output is valid")
    }

    pub fn psi_filtered(&self) -> FilteredComplex {
        FilteredComplex::new(self.complex.clone(), self.psi.clone()).expect("generator output is valid")
    }
}

pub fn builtin(name: &str) -> Result<Scenario> {
    match name {
        "circle-rooms" => gen_circle_rooms(CIRCLE_ROOMS_DEFAULT_N),
        "two-spheres" => gen_two_spheres(TWO_SPHERES_DEFAULT_RINGS, TWO_SPHERES_DEFAULT_LONGITUDES),
        other => Err(Error::InvalidParameter(format!("unknown scenario '{other}' (known: {})", BUILTIN_NAMES.join(", ")))),
    }
}

pub fn builtins() -> Vec<Scenario> {
    BUILTIN_NAMES.iter().map(|n| builtin(n).expect("builtin parameters are valid")).collect()
}

// ---------------------------------------------------------------- circle rooms

pub const ROOM_MIN: f64 = -2.0;
pub const ROOM_FLOOR: f64 = -1.0;
/// Peak values between consecutive minima, in cyclic order.
pub const ROOM_PEAKS: [f64; 4] = [-0.5, -0.25, -0.75, -0.375];

fn room_values(m: usize, minima: [usize; 4]) -> Vec<f64> {
    let mut values = vec![ROOM_FLOOR; m];
    for i in 0..4 {
        let start = minima[i];
        let gap = (minima[(i + 1) % 4] + m - start) % m;
        values[start] = ROOM_MIN;
        values[(start + gap / 2) % m] = ROOM_PEAKS[i];
    }
    values
}

/// Polygon with `2n` vertices, antipodal `H`, all `2n` rotations as the
/// sample. `φ` attains its minimum on two antipodal pairs; `ψ` has the same
/// cyclic sequence of extremum values but its minima are pairwise
/// non-antipodal.
pub fn gen_circle_rooms(n: usize) -> Result<Scenario> {
    if n < 8 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("circle rooms need an even n >= 8, got {n}")));
    }
    let m = 2 * n;
    let h = n / 2;
    let complex = SimplicialComplex::new(m, (0..m).map(|i| vec![i, (i + 1) % m]))?;
    let phi_vals = room_values(m, [0, h, n, n + h]);
    let psi_vals = room_values(m, [0, h - 1, n + 1, n + h + 1]);

    // i-th vertex of each value class of φ ↦ i-th vertex of that class of ψ;
    // sends the j-th minimum (peak) to the j-th minimum (peak)
    let mut image = vec![usize::MAX; m];
    let mut classes: Vec<f64> = phi_vals.clone();
    classes.sort_by(f64::total_cmp);
    classes.dedup();
    for c in classes {
        let from = (0..m).filter(|&v| phi_vals[v] == c);
        let to: Vec<usize> = (0..m).filter(|&v| psi_vals[v] == c).collect();
        for (a, &b) in from.zip(&to) {
            image[a] = b;
        }
    }
    let witness = VertexPermutation::new(image)?;
    let group = enumerate_group(m, &[VertexPermutation::cyclic_shift(m, n)], 2)?;
    let sample = GroupSample::new((0..m).map(|s| VertexPermutation::cyclic_shift(m, s)).collect())
        .with_resolution(format!("all {m} rotations"));
    Ok(Scenario {
        name: "circle-rooms".into(),
        complex,
        phi: VertexFunction::scalar(phi_vals)?,
        psi: VertexFunction::scalar(psi_vals)?,
        group,
        sample,
        witness,
    })
}

// ---------------------------------------------------------------- two spheres

/// Vertex layout of one ring-triangulated sphere: south pole, `2r − 1` rings
/// of `L` vertices at heights `k/r`, north pole.
#[derive(Debug, Clone, Copy)]
struct SphereMesh {
    rings: usize,
    longitudes: usize,
}

impl SphereMesh {
    fn vertex_count(self) -> usize {
        2 + (2 * self.rings - 1) * self.longitudes
    }

    fn south(self) -> usize {
        0
    }

    fn north(self) -> usize {
        self.vertex_count() - 1
    }

    /// Ring vertex at height `k/r`, `|k| < r`.
    fn ring(self, k: i64, j: usize) -> usize {
        let t = (k + self.rings as i64 - 1) as usize;
        1 + t * self.longitudes + j % self.longitudes
    }

    /// `(k, j)` of vertex `v`, poles at `k = ±r` with `j = 0`.
    fn position(self, v: usize) -> (i64, usize) {
        let r = self.rings as i64;
        if v == self.south() {
            (-r, 0)
        } else if v == self.north() {
            (r, 0)
        } else {
            let t = (v - 1) / self.longitudes;
            (t as i64 - r + 1, (v - 1) % self.longitudes)
        }
    }

    fn vertex_at(self, k: i64, j: usize) -> usize {
        let r = self.rings as i64;
        if k == -r {
            self.south()
        } else if k == r {
            self.north()
        } else {
            self.ring(k, j)
        }
    }

    fn triangles(self) -> Vec<Simplex> {
        let (r, l) = (self.rings as i64, self.longitudes);
        let mut out = Vec::new();
        for j in 0..l {
            out.push(vec![self.south(), self.ring(-r + 1, j), self.ring(-r + 1, j + 1)]);
            out.push(vec![self.north(), self.ring(r - 1, j), self.ring(r - 1, j + 1)]);
            for k in -r + 1..r - 1 {
                let (a0, a1) = (self.ring(k, j), self.ring(k, j + 1));
                let (b0, b1) = (self.ring(k + 1, j), self.ring(k + 1, j + 1));
                out.push(vec![a0, a1, b0]);
                out.push(vec![a1, b0, b1]);
            }
        }
        out
    }

    fn coordinates(self, v: usize) -> [f64; 3] {
        let (k, j) = self.position(v);
        let z = k as f64 / self.rings as f64;
        let rho = (1.0 - z * z).max(0.0).sqrt();
        let t = std::f64::consts::TAU * j as f64 / self.longitudes as f64;
        [rho * t.cos(), rho * t.sin(), z]
    }

    /// Rotation about the polar axis by `s` longitude steps.
    fn rotation(self, s: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .map(|v| {
                let (k, j) = self.position(v);
                self.vertex_at(k, j + s)
            })
            .collect()
    }

    /// `(k, j) ↦ (−k, −j)`: rotation by π about a horizontal axis.
    fn flip(self) -> Vec<usize> {
        let l = self.longitudes;
        (0..self.vertex_count())
            .map(|v| {
                let (k, j) = self.position(v);
                self.vertex_at(-k, (l - j) % l)
            })
            .collect()
    }
}

fn on_both(mesh: SphereMesh, upper: &[usize], lower: &[usize]) -> Result<VertexPermutation> {
    let n = mesh.vertex_count();
    let mut image: Vec<usize> = upper.to_vec();
    image.extend(lower.iter().map(|&v| v + n));
    VertexPermutation::new(image)
}

/// Two disjoint spheres (`x₄ = +1`: vertices `0..V`, `x₄ = −1`: `V..2V`),
/// `φ = x₃` on both, `ψ = ±x₃` by component, `H = {id, swap}`.
/// The sample is the `2L` maps "rotate by `s` steps, optionally flip",
/// acting identically on both components.
pub fn gen_two_spheres(rings: usize, longitudes: usize) -> Result<Scenario> {
    if rings < 2 || longitudes < 3 {
        return Err(Error::InvalidParameter(format!(
            "two spheres need rings >= 2 and longitudes >= 3, got {rings} and {longitudes}"
        )));
    }
    let mesh = SphereMesh { rings, longitudes };
    let n = mesh.vertex_count();
    let mut cells = mesh.triangles();
    cells.extend(mesh.triangles().into_iter().map(|t| t.into_iter().map(|v| v + n).collect::<Simplex>()));
    let complex = SimplicialComplex::new(2 * n, &cells)?;

    let height = |v: usize| mesh.position(v % n).0 as f64 / rings as f64;
    let phi: Vec<f64> = (0..2 * n).map(height).collect();
    let psi: Vec<f64> = (0..2 * n).map(|v| if v < n { height(v) } else { 0.0 - height(v) }).collect();

    let swap: Vec<usize> = (0..2 * n).map(|v| (v + n) % (2 * n)).collect();
    let group = GroupAction::from_elements(vec![VertexPermutation::identity(2 * n), VertexPermutation::new(swap)?])?;

    let mut elements = Vec::with_capacity(2 * longitudes);
    let flip = mesh.flip();
    for s in 0..longitudes {
        let rot = mesh.rotation(s);
        elements.push(on_both(mesh, &rot, &rot)?);
        let rf: Vec<usize> = flip.iter().map(|&v| rot[v]).collect();
        elements.push(on_both(mesh, &rf, &rf)?);
    }
    let sample = GroupSample::new(elements).with_resolution(format!("{longitudes} polar rotations x {{id, flip}}"));

    let identity: Vec<usize> = (0..n).collect();
    let witness = on_both(mesh, &identity, &flip)?;

    Ok(Scenario {
        name: "two-spheres".into(),
        complex,
        phi: VertexFunction::scalar(phi)?,
        psi: VertexFunction::scalar(psi)?,
        group,
        sample,
        witness,
    })
}

/// Embedded coordinates `(x₁, x₂, x₃)` of every vertex of
/// [`gen_two_spheres`]; the component is `x₄ = +1` for the first half.
pub fn two_spheres_coordinates(rings: usize, longitudes: usize) -> Vec<[f64; 3]> {
    let mesh = SphereMesh { rings, longitudes };
    let n = mesh.vertex_count();
    (0..2 * n).map(|v| mesh.coordinates(v % n)).collect()
}

pub type Matrix3 = [[f64; 3]; 3];

pub fn axis_rotation(axis: usize, angle: f64) -> Matrix3 {
    let (s, c) = angle.sin_cos();
    match axis {
        0 => [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]],
        1 => [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]],
        _ => [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
    }
}

fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|t| a[i][t] * b[t][j]).sum();
        }
    }
    out
}

/// Rotations about each coordinate axis in steps of `step_degrees`, each
/// composed with `I` or a half-turn about one of the axes.
pub fn axis_rotation_sample(step_degrees: u32) -> Vec<Matrix3> {
    assert!(step_degrees > 0 && 360 % step_degrees == 0, "step must divide 360");
    let half_turns: Vec<Matrix3> = std::iter::once(axis_rotation(2, 0.0))
        .chain((0..3).map(|a| axis_rotation(a, std::f64::consts::PI)))
        .collect();
    let mut out = Vec::new();
    for axis in 0..3 {
        for d in (0..360).step_by(step_degrees as usize) {
            let r = axis_rotation(axis, (d as f64).to_radians());
            out.extend(half_turns.iter().map(|f| mat_mul(&r, f)));
        }
    }
    out
}

/// `ψ∘g` for `g(x, x₄) = (Mx, x₄)`, evaluated at the mesh vertices from the
/// closed form `ψ(y, x₄) = x₄ · y₃`. These rotations do not preserve the
/// triangulation, so they cannot be expressed as vertex permutations.
pub fn two_spheres_rotation_pullbacks(rings: usize, longitudes: usize, rotations: &[Matrix3]) -> Vec<VertexFunction> {
    let coords = two_spheres_coordinates(rings, longitudes);
    let n = coords.len() / 2;
    rotations
        .iter()
        .map(|m| {
            let vals = coords
                .iter()
                .enumerate()
                .map(|(v, x)| {
                    let y3: f64 = (0..3).map(|t| m[2][t] * x[t]).sum();
                    if v < n { y3 } else { 0.0 - y3 }
                })
                .collect();
            VertexFunction::scalar(vals).expect("finite")
        })
        .collect()
}

// ---------------------------------------------------------------- random

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomBounds {
    pub max_vertices: usize,
    pub max_simplices: usize,
    pub max_dim: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds { max_vertices: 8, max_simplices: 30, max_dim: 2 }
    }
}

/// Random dyadic value in `[−4, 4]` with denominator 4.
pub fn random_dyadic(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-16i32..=16) as f64 / 4.0
}

fn random_complex(rng: &mut ChaCha8Rng, bounds: RandomBounds) -> Result<SimplicialComplex> {
    let nv = rng.gen_range(1..=bounds.max_vertices.max(1));
    let budget = bounds.max_simplices.max(nv);
    let mut cells: Vec<Simplex> = (0..nv).map(|v| vec![v]).collect();
    let mut current = SimplicialComplex::new(nv, &cells)?;
    for _ in 0..4 * budget {
        let dim = rng.gen_range(1..=bounds.max_dim.max(1));
        if dim + 1 > nv {
            continue;
        }
        let mut cell: Simplex = sample_indices(rng, nv, dim + 1).into_vec();
        cell.sort_unstable();
        cells.push(cell);
        let next = SimplicialComplex::new(nv, &cells)?;
        if next.total_count() > budget {
            cells.pop();
        } else {
            current = next;
        }
    }
    Ok(current)
}

/// Closure-completed random complex with random dyadic scalar values,
/// deterministic in `seed`.
pub fn gen_random_instance(seed: u64, bounds: RandomBounds) -> Result<FilteredComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let complex = random_complex(&mut rng, bounds)?;
    let values = (0..complex.vertex_count()).map(|_| random_dyadic(&mut rng)).collect();
    FilteredComplex::new(complex, VertexFunction::scalar(values)?)
}

/// `K ⊔ K′` with independent random values on the two copies and the swap
/// action, which is free and regular.
pub fn gen_doubled_instance(seed: u64, bounds: RandomBounds) -> Result<(FilteredComplex, GroupAction)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = random_complex(&mut rng, bounds)?;
    let n = k.vertex_count();
    let cells: Vec<Simplex> = k
        .maximal_simplices()
        .into_iter()
        .flat_map(|s| [s.clone(), s.iter().map(|v| v + n).collect()])
        .collect();
    let doubled = SimplicialComplex::new(2 * n, &cells)?;
    let values = (0..2 * n).map(|_| random_dyadic(&mut rng)).collect();
    let swap = VertexPermutation::new((0..2 * n).map(|v| (v + n) % (2 * n)).collect())?;
    let group = enumerate_group(2 * n, &[swap], 2)?;
    Ok((FilteredComplex::new(doubled, VertexFunction::scalar(values)?)?, group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{check_conjugation_closure, validate_action};
    use crate::pseudo_distance::classical_dhomeo_witness;

    #[test]
    fn circle_rooms_structure() {
        for n in [8, 10, 12, 16] {
            let s = gen_circle_rooms(n).unwrap();
            let m = 2 * n;
            let phi: Vec<f64> = s.phi.rows().into_iter().map(|r| r[0]).collect();
            let psi: Vec<f64> = s.psi.rows().into_iter().map(|r| r[0]).collect();
            let minima = |f: &[f64]| (0..m).filter(|&v| f[v] == ROOM_MIN).collect::<Vec<_>>();
            let (pm, qm) = (minima(&phi), minima(&psi));
            assert_eq!(pm.len(), 4);
            assert_eq!(qm.len(), 4);
            assert!(pm.iter().all(|&v| pm.contains(&((v + n) % m))));
            assert!(qm.iter().all(|&v| !qm.contains(&((v + n) % m))));
            assert_eq!(classical_dhomeo_witness(&s.phi_filtered(), &s.psi_filtered(), &s.witness).unwrap(), 0.0);
            assert!(validate_action(&s.complex, &s.group).all_pass());
            assert!(check_conjugation_closure(&s.group, &s.sample).closed);
            assert_eq!(s.sample.len(), m);
        }
        assert!(gen_circle_rooms(6).is_err());
        assert!(gen_circle_rooms(9).is_err());
    }

    #[test]
    fn circle_rooms_extremum_sequence_matches() {
        // reading values around the circle, the strict local extrema form
        // the same cyclic sequence for φ and ψ
        let s = gen_circle_rooms(12).unwrap();
        let seq = |f: &VertexFunction| -> Vec<f64> {
            let v: Vec<f64> = f.rows().into_iter().map(|r| r[0]).collect();
            v.iter().copied().filter(|&x| x != ROOM_FLOOR).collect()
        };
        assert_eq!(seq(&s.phi), seq(&s.psi));
    }

    #[test]
    fn two_spheres_structure() {
        let s = gen_two_spheres(4, 12).unwrap();
        let n = 2 + 7 * 12;
        assert_eq!(s.complex.vertex_count(), 2 * n);
        // each sphere: χ = 2
        let chi = s.complex.count(0) as i64 - s.complex.count(1) as i64 + s.complex.count(2) as i64;
        assert_eq!(chi, 4);
        // every edge lies on exactly two triangles
        for e in s.complex.simplices(1) {
            let c = s.complex.simplices(2).iter().filter(|t| e.iter().all(|v| t.contains(v))).count();
            assert_eq!(c, 2, "{e:?}");
        }
        assert!(validate_action(&s.complex, &s.group).all_pass());
        assert!(check_conjugation_closure(&s.group, &s.sample).closed);
        assert!(s.sample.validate(&s.complex).is_ok());
        assert_eq!(classical_dhomeo_witness(&s.phi_filtered(), &s.psi_filtered(), &s.witness).unwrap(), 0.0);
        let vals: Vec<f64> = s.phi.rows().into_iter().map(|r| r[0]).collect();
        for x in [-1.0, 0.0, 1.0] {
            assert!(vals.contains(&x));
        }
    }

    #[test]
    fn sphere_coordinates_on_unit_sphere() {
        for x in two_spheres_coordinates(3, 7) {
            let r: f64 = x.iter().map(|c| c * c).sum();
            assert!((r - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_rotation_pullback_is_psi() {
        let s = gen_two_spheres(2, 5).unwrap();
        let p = two_spheres_rotation_pullbacks(2, 5, &[axis_rotation(0, 0.0)]);
        assert!(p[0].sup_distance(&s.psi) < 1e-15);
        assert_eq!(axis_rotation_sample(1).len(), 3 * 360 * 4);
    }

    #[test]
    fn random_instances_reproducible_and_bounded() {
        let b = RandomBounds::default();
        for seed in 0..50 {
            let a = gen_random_instance(seed, b).unwrap();
            let c = gen_random_instance(seed, b).unwrap();
            assert_eq!(a.complex(), c.complex());
            assert_eq!(a.function(), c.function());
            assert!(a.complex().total_count() <= 30);
            assert!(a.complex().dims() <= 3);
            let (d, g) = gen_doubled_instance(seed, b).unwrap();
            assert!(validate_action(d.complex(), &g).all_pass());
        }
    }
}
