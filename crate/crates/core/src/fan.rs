//! Fans of toric varieties: validation, smoothness, completeness, the
//! anticanonical polytope and the dual (Batyrev) variety.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::SquarefreeMonomialIdeal;
use crate::linalg::{content, dot, rational_rank, smith_normal_form, IntegerMatrix};
use crate::polyhedral::{is_reflexive, normalized_volume, polar_dual, Facet, Polytope, RationalCone};

/// A fan in `Z^dim`: primitive rays and maximal cones as sorted 0-based index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    cones: Vec<Vec<usize>>,
}

/// One failed fan axiom. Ray and cone indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    ZeroRay { ray: usize },
    RayNotPrimitive { ray: usize },
    DuplicateRay { first: usize, second: usize },
    UnusedRay { ray: usize },
    DuplicateCone { first: usize, second: usize },
    NotStronglyConvex { cone: usize },
    RedundantRay { cone: usize, ray: usize },
    NonMaximalCone { cone: usize, container: usize },
    BadIntersection { first: usize, second: usize },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FanViolation::*;
        match self {
            ZeroRay { ray } => write!(f, "ray {} is zero", ray + 1),
            RayNotPrimitive { ray } => write!(f, "ray {} not primitive", ray + 1),
            DuplicateRay { first, second } => write!(f, "rays {} and {} coincide", first + 1, second + 1),
            UnusedRay { ray } => write!(f, "ray {} lies in no cone", ray + 1),
            DuplicateCone { first, second } => write!(f, "cones {} and {} coincide", first + 1, second + 1),
            NotStronglyConvex { cone } => write!(f, "cone {} is not strongly convex", cone + 1),
            RedundantRay { cone, ray } => {
                write!(f, "ray {} is not an extreme ray of cone {}", ray + 1, cone + 1)
            }
            NonMaximalCone { cone, container } => {
                write!(f, "cone {} is contained in cone {}", cone + 1, container + 1)
            }
            BadIntersection { first, second } => write!(
                f,
                "cones {} and {} do not meet in a common face",
                first + 1,
                second + 1
            ),
        }
    }
}

impl Fan {
    /// Structural checks only (vector lengths, index ranges); use
    /// [`Fan::new`] or [`validate_fan`] for the fan axioms.
    pub fn from_parts(dim: usize, rays: Vec<Vec<BigInt>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::MalformedFan(format!(
                    "ray {} has {} coordinates, expected {dim}",
                    i + 1,
                    r.len()
                )));
            }
        }
        let mut sorted = Vec::with_capacity(cones.len());
        for (i, c) in cones.into_iter().enumerate() {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            if set.len() != c.len() {
                return Err(Error::MalformedFan(format!("cone {} repeats a ray", i + 1)));
            }
            if let Some(&bad) = set.iter().find(|&&j| j >= rays.len()) {
                return Err(Error::MalformedFan(format!(
                    "cone {} refers to ray {} but there are {} rays",
                    i + 1,
                    bad + 1,
                    rays.len()
                )));
            }
            sorted.push(set.into_iter().collect());
        }
        Ok(Self {
            dim,
            rays,
            cones: sorted,
        })
    }

    /// A validated fan.
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        let fan = Self::from_parts(dim, rays, cones)?;
        let violations = validate_fan(&fan);
        if violations.is_empty() {
            Ok(fan)
        } else {
            Err(Error::InvalidFan(violations))
        }
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Self> {
        Self::new(
            dim,
            rays.iter().map(|r| crate::linalg::int_vec(r)).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Rays as the rows of a `num_rays × dim` matrix.
    pub fn ray_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(self.dim, self.rays.clone()).expect("rays have length dim")
    }

    fn cone_rays(&self, cone: &[usize]) -> Vec<Vec<BigInt>> {
        cone.iter().map(|&i| self.rays[i].clone()).collect()
    }

    fn is_simplicial_cone(&self, cone: &[usize]) -> bool {
        let m = IntegerMatrix::from_rows(self.dim, self.cone_rays(cone)).unwrap();
        rational_rank(&m) == cone.len()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| self.is_simplicial_cone(c))
    }

    /// Every maximal cone is `dim`-dimensional.
    pub fn is_pure_full_dimensional(&self) -> bool {
        self.cones.iter().all(|c| {
            let m = IntegerMatrix::from_rows(self.dim, self.cone_rays(c)).unwrap();
            rational_rank(&m) == self.dim
        })
    }

    /// Same fan with rays listed in lexicographic order and cones sorted;
    /// two fans are equal up to relabelling iff their canonical forms agree.
    pub fn canonical(&self) -> Fan {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].cmp(&self.rays[b]));
        let mut new_index = vec![0; self.rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let rays = order.iter().map(|&i| self.rays[i].clone()).collect();
        let mut cones: Vec<Vec<usize>> = self
            .cones
            .iter()
            .map(|c| {
                let mut c: Vec<usize> = c.iter().map(|&i| new_index[i]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cones.sort();
        Fan {
            dim: self.dim,
            rays,
            cones,
        }
    }
}

/// Checks every fan axiom and returns all violations found (empty when valid).
///
/// Two cones σ, τ meet in a common face iff some `u ≥ 0` on σ and `≤ 0` on τ
/// cuts out the same face from both; if any such `u` exists, a relative
/// interior point of the cone of all of them does, so one test suffices.
pub fn validate_fan(f: &Fan) -> Vec<FanViolation> {
    let mut out = Vec::new();
    let mut seen: BTreeMap<&Vec<BigInt>, usize> = BTreeMap::new();
    for (i, r) in f.rays.iter().enumerate() {
        let g = content(r);
        if g.is_zero() {
            out.push(FanViolation::ZeroRay { ray: i });
        } else if !g.is_one() {
            out.push(FanViolation::RayNotPrimitive { ray: i });
        }
        if let Some(&first) = seen.get(r) {
            out.push(FanViolation::DuplicateRay { first, second: i });
        } else {
            seen.insert(r, i);
        }
    }
    let used: BTreeSet<usize> = f.cones.iter().flatten().copied().collect();
    for i in 0..f.rays.len() {
        if !used.contains(&i) {
            out.push(FanViolation::UnusedRay { ray: i });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut convex = vec![true; f.cones.len()];
    for (ci, c) in f.cones.iter().enumerate() {
        let cone = RationalCone::from_generators(f.dim, f.cone_rays(c)).expect("dimensions checked");
        if !cone.is_pointed() {
            out.push(FanViolation::NotStronglyConvex { cone: ci });
            convex[ci] = false;
            continue;
        }
        let extreme: BTreeSet<&Vec<BigInt>> = cone.rays().iter().collect();
        for &ri in c {
            if !extreme.contains(&f.rays[ri]) {
                out.push(FanViolation::RedundantRay { cone: ci, ray: ri });
            }
        }
    }

    for a in 0..f.cones.len() {
        for b in a + 1..f.cones.len() {
            let (ca, cb) = (&f.cones[a], &f.cones[b]);
            if ca == cb {
                out.push(FanViolation::DuplicateCone { first: a, second: b });
                continue;
            }
            let sa: BTreeSet<usize> = ca.iter().copied().collect();
            let sb: BTreeSet<usize> = cb.iter().copied().collect();
            if sa.is_subset(&sb) {
                out.push(FanViolation::NonMaximalCone { cone: a, container: b });
                continue;
            }
            if sb.is_subset(&sa) {
                out.push(FanViolation::NonMaximalCone { cone: b, container: a });
                continue;
            }
            if !(convex[a] && convex[b]) {
                continue;
            }
            if !meet_in_common_face(f, ca, cb) {
                out.push(FanViolation::BadIntersection { first: a, second: b });
            }
        }
    }
    out
}

fn meet_in_common_face(f: &Fan, a: &[usize], b: &[usize]) -> bool {
    let mut ineqs = f.cone_rays(a);
    ineqs.extend(f.cone_rays(b).into_iter().map(|v| v.iter().map(|x| -x).collect()));
    let sep = RationalCone::from_inequalities(f.dim, ineqs).expect("dimensions checked");
    let u = sep.relative_interior_point();
    let face = |c: &[usize]| -> BTreeSet<usize> {
        c.iter().copied().filter(|&i| dot(&u, &f.rays[i]).is_zero()).collect()
    };
    face(a) == face(b)
}

/// Every maximal cone is generated by part of a lattice basis.
pub fn is_smooth(f: &Fan) -> bool {
    f.cones.iter().all(|c| {
        let m = IntegerMatrix::from_rows(f.dim, f.cone_rays(c)).unwrap();
        let s = smith_normal_form(&m);
        s.rank() == c.len() && s.invariants.iter().all(One::is_one)
    })
}

/// Complete iff every facet of every maximal cone lies in exactly two
/// maximal cones; the fan must be pure and full-dimensional.
pub fn is_complete(f: &Fan) -> Result<bool> {
    if !f.is_pure_full_dimensional() {
        return Err(Error::FanPrecondition(
            "completeness test needs a pure full-dimensional fan".into(),
        ));
    }
    if f.cones.is_empty() {
        return Ok(f.dim == 0);
    }
    let mut owners: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in &f.cones {
        let gens = c.iter().map(|&i| f.rays[i].clone()).collect();
        let cone = RationalCone::from_generators(f.dim, gens)?;
        for normal in cone.facets() {
            let facet: Vec<usize> = c.iter().copied().filter(|&i| dot(normal, &f.rays[i]).is_zero()).collect();
            *owners.entry(facet).or_default() += 1;
        }
    }
    Ok(owners.values().all(|&k| k == 2))
}

/// `P_Z = {m : ⟨m, v_ρ⟩ ≥ -1 for every ray}`.
pub fn anticanonical_polytope(f: &Fan) -> Result<Polytope> {
    let facets = f.rays.iter().map(|r| Facet::new(r.clone(), BigInt::one())).collect();
    Polytope::from_facets(f.dim, facets)
}

/// `P_Z` is reflexive, its polar has exactly the rays as vertices, and the
/// maximal cones are the cones over the facets of that polar.
pub fn is_fano(f: &Fan) -> Result<bool> {
    let p = match anticanonical_polytope(f) {
        Ok(p) => p,
        Err(Error::Unbounded) => return Ok(false),
        Err(e) => return Err(e),
    };
    if !is_reflexive(&p)? {
        return Ok(false);
    }
    let dual = polar_dual(&p)?;
    let verts = dual.integer_vertices()?;
    let mut sorted_verts = verts.clone();
    sorted_verts.sort();
    let mut rays = f.rays.clone();
    rays.sort();
    if sorted_verts != rays {
        return Ok(false);
    }
    let ray_index: BTreeMap<&Vec<BigInt>, usize> = f.rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut facet_cones: Vec<Vec<usize>> = dual
        .facet_vertex_sets()
        .into_iter()
        .map(|s| {
            let mut c: Vec<usize> = s.into_iter().map(|v| ray_index[&verts[v]]).collect();
            c.sort();
            c
        })
        .collect();
    facet_cones.sort();
    let mut cones = f.cones.clone();
    cones.sort();
    Ok(facet_cones == cones)
}

/// `(-K)^dim`, the normalized volume of the anticanonical polytope.
pub fn anticanonical_degree(f: &Fan) -> Result<BigInt> {
    if !is_fano(f)? {
        return Err(Error::NotFano);
    }
    normalized_volume(&anticanonical_polytope(f)?)
}

/// Face fan of `P_Z`, i.e. the normal fan of the polar `P_Z^*`.
pub fn dual_variety(f: &Fan) -> Result<Fan> {
    if !is_fano(f)? {
        return Err(Error::NotFano);
    }
    let p = anticanonical_polytope(f)?;
    let verts = p.integer_vertices().map_err(|_| Error::NotReflexive)?;
    for v in &verts {
        if !content(v).is_one() {
            return Err(Error::NotReflexive);
        }
    }
    Fan::new(f.dim, verts, p.facet_vertex_sets())
}

/// One generator per maximal cone: the product of the variables whose rays lie outside it.
pub fn irrelevant_ideal(f: &Fan) -> SquarefreeMonomialIdeal {
    let n = f.rays.len();
    let gens = f
        .cones
        .iter()
        .map(|c| {
            let inside: BTreeSet<usize> = c.iter().copied().collect();
            (0..n).filter(|i| !inside.contains(i)).collect()
        })
        .collect();
    SquarefreeMonomialIdeal::new(n, gens).expect("cone indices are in range")
}

/// Standard fans used in examples and fixtures.
pub mod standard {
    use super::*;

    /// Fan of `P^n`: rays `e_1, …, e_n, -(1,…,1)`, cones = all `n`-subsets.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        rays.push(vec![BigInt::from(-1); n]);
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones).expect("projective space fan is valid")
    }

    pub fn p1_x_p1() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]])
            .expect("valid")
    }

    /// Hirzebruch surface `F_a`.
    pub fn hirzebruch(a: i64) -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
            .expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::linalg::int_vec;

    #[test]
    fn p2_is_valid_smooth_complete_fano() {
        let p2 = projective_space(2);
        assert!(validate_fan(&p2).is_empty());
        assert!(is_smooth(&p2));
        assert!(is_complete(&p2).unwrap());
        assert!(is_fano(&p2).unwrap());
        assert_eq!(anticanonical_degree(&p2).unwrap(), BigInt::from(9));
    }

    #[test]
    fn p2_with_bad_cones() {
        let f = Fan::from_parts(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, -1])],
            vec![vec![0, 1], vec![0, 1, 2]],
        )
        .unwrap();
        let v = validate_fan(&f);
        assert!(v.contains(&FanViolation::NotStronglyConvex { cone: 1 }));
        assert!(v.contains(&FanViolation::NonMaximalCone { cone: 0, container: 1 }));
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let f = Fan::from_parts(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1]), int_vec(&[1, -1])],
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        assert_eq!(validate_fan(&f), vec![FanViolation::BadIntersection { first: 0, second: 1 }]);
    }

    #[test]
    fn non_primitive_and_unused_rays() {
        let f = Fan::from_parts(2, vec![int_vec(&[2, 0]), int_vec(&[0, 1]), int_vec(&[-1, 0])], vec![vec![0, 1]])
            .unwrap();
        let v = validate_fan(&f);
        assert!(v.contains(&FanViolation::RayNotPrimitive { ray: 0 }));
        assert!(v.contains(&FanViolation::UnusedRay { ray: 2 }));
        assert_eq!(v[0].to_string(), "ray 1 not primitive");
    }

    #[test]
    fn weighted_projective_plane_is_singular() {
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert!(!is_smooth(&f));
        assert!(is_complete(&f).unwrap());
    }

    fn cube_face_fan(drop_last: bool) -> Fan {
        let rays: Vec<Vec<i64>> = (0..8)
            .map(|k| (0..3).map(|b| if k >> b & 1 == 1 { 1 } else { -1 }).collect())
            .collect();
        let mut cones = Vec::new();
        for axis in 0..3 {
            for side in [-1, 1] {
                cones.push((0..8).filter(|&k| rays[k][axis] == side).collect::<Vec<usize>>());
            }
        }
        if drop_last {
            cones.pop();
        }
        let rays: Vec<&[i64]> = rays.iter().map(Vec::as_slice).collect();
        let cones: Vec<&[usize]> = cones.iter().map(Vec::as_slice).collect();
        Fan::from_i64(3, &rays, &cones).unwrap()
    }

    #[test]
    fn non_simplicial_completeness() {
        let full = cube_face_fan(false);
        assert!(!full.is_simplicial());
        assert!(validate_fan(&full).is_empty());
        assert!(is_complete(&full).unwrap());
        assert!(!is_complete(&cube_face_fan(true)).unwrap());
    }

    #[test]
    fn p2_minus_a_cone_is_incomplete() {
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2]]).unwrap();
        assert!(!is_complete(&f).unwrap());
        assert!(!is_fano(&f).unwrap());
        let g = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert!(matches!(anticanonical_polytope(&g), Err(Error::Unbounded)));
        assert!(!is_fano(&g).unwrap());
    }

    #[test]
    fn p4_polytope_and_degree() {
        let p4 = projective_space(4);
        let p = anticanonical_polytope(&p4).unwrap();
        assert_eq!(p.vertices().len(), 5);
        assert_eq!(anticanonical_degree(&p4).unwrap(), BigInt::from(625));
    }

    #[test]
    fn p2_polytope_vertices() {
        let p = anticanonical_polytope(&projective_space(2)).unwrap();
        assert_eq!(p.integer_vertices().unwrap(), vec![int_vec(&[-1, -1]), int_vec(&[-1, 2]), int_vec(&[2, -1])]);
    }

    #[test]
    fn f2_is_not_fano() {
        let f2 = hirzebruch(2);
        assert!(is_smooth(&f2));
        assert!(is_complete(&f2).unwrap());
        assert!(!is_fano(&f2).unwrap());
        assert!(matches!(dual_variety(&f2), Err(Error::NotFano)));
        assert!(is_fano(&hirzebruch(1)).unwrap());
    }

    #[test]
    fn duals_of_projective_spaces() {
        let d4 = dual_variety(&projective_space(4)).unwrap();
        assert_eq!(d4.num_rays(), 5);
        assert_eq!(irrelevant_ideal(&d4).vanishing_codim().unwrap(), 5);

        let p2 = projective_space(2);
        let d2 = dual_variety(&p2).unwrap();
        assert_eq!(d2.num_rays(), 3);
        assert_eq!(d2.max_cones().len(), 3);
        let dd = dual_variety(&d2).unwrap();
        assert_eq!(dd.canonical(), p2.canonical());
    }

    #[test]
    fn irrelevant_ideals() {
        let i = irrelevant_ideal(&projective_space(4));
        assert_eq!(i.generators(), &[vec![0], vec![1], vec![2], vec![3], vec![4]]);
        let affine = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert!(irrelevant_ideal(&affine).is_unit());
    }
}
