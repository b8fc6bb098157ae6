//! Rational polyhedral cones and lattice polytopes.
//!
//! Representation conversion is done by exhaustive enumeration: a facet of a
//! `k`-dimensional cone is spanned by `k-1` of its generators, and a vertex of a
//! `d`-polytope is cut out by `d` of its facets. The inputs here have at most a
//! few dozen generators in dimension ≤ 5, where this is instantaneous.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    clear_denominators, dot, primitive, rational_rank, right_kernel, solve_rational,
    IntegerMatrix,
};

/// Facets and linear equations of `cone(gens)`: returns `(facets, equations)`
/// where the cone is `{x : ⟨u,x⟩ ≥ 0 ∀u ∈ facets, ⟨e,x⟩ = 0 ∀e ∈ equations}`.
/// Facet normals are primitive and chosen inside the linear span of the cone;
/// equations form the HNF basis of the orthogonal complement of the span.
fn facets_and_equations(dim: usize, gens: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let g = IntegerMatrix::from_rows(dim, gens.to_vec()).expect("generators share the ambient dimension");
    let equations = right_kernel(&g).row_vecs();
    let span = dim - equations.len();
    if span == 0 {
        return (Vec::new(), equations);
    }
    // only nonzero generators can span a facet
    let nonzero: Vec<&Vec<BigInt>> = gens.iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    let mut facets = BTreeSet::new();
    for subset in nonzero.iter().combinations(span - 1) {
        let mut rows: Vec<Vec<BigInt>> = subset.iter().map(|v| (**v).clone()).collect();
        rows.extend(equations.iter().cloned());
        let m = IntegerMatrix::from_rows(dim, rows).expect("uniform width");
        let k = right_kernel(&m);
        if k.rows() != 1 {
            continue;
        }
        let u = k.row(0).to_vec();
        let signs: Vec<BigInt> = gens.iter().map(|v| dot(&u, v)).collect();
        if signs.iter().all(|s| !s.is_negative()) {
            facets.insert(u);
        } else if signs.iter().all(|s| !s.is_positive()) {
            facets.insert(u.iter().map(|x| -x).collect());
        }
    }
    (facets.into_iter().collect(), equations)
}

fn canonical(vs: impl IntoIterator<Item = Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    vs.into_iter()
        .map(|v| primitive(&v))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn with_negatives(vs: &[Vec<BigInt>]) -> impl Iterator<Item = Vec<BigInt>> + '_ {
    vs.iter()
        .flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()])
}

/// A rational polyhedral cone carried with both representations.
///
/// `rays` are the primitive extreme rays of the cone modulo its lineality
/// space, `lineality` a lattice basis of that space; `facets` and `equations`
/// play the same roles for the dual cone. Both sides are canonical (sorted,
/// primitive), so structural equality is set equality of cones.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalCone {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

impl RationalCone {
    pub fn from_generators(dim: usize, gens: Vec<Vec<BigInt>>) -> Result<Self> {
        check_lengths(dim, &gens)?;
        let (facets, equations) = facets_and_equations(dim, &gens);
        Ok(Self::from_h(dim, canonical(facets), equations))
    }

    /// Cone `{x : ⟨u, x⟩ ≥ 0}` for every `u` in `inequalities`.
    pub fn from_inequalities(dim: usize, inequalities: Vec<Vec<BigInt>>) -> Result<Self> {
        check_lengths(dim, &inequalities)?;
        let (rays, lineality) = facets_and_equations(dim, &inequalities);
        Ok(Self::from_v(dim, canonical(rays), lineality))
    }

    fn from_h(dim: usize, facets: Vec<Vec<BigInt>>, equations: Vec<Vec<BigInt>>) -> Self {
        let all: Vec<_> = facets.iter().cloned().chain(with_negatives(&equations)).collect();
        let (rays, lineality) = facets_and_equations(dim, &all);
        Self {
            dim,
            rays: canonical(rays),
            lineality,
            facets,
            equations,
        }
    }

    fn from_v(dim: usize, rays: Vec<Vec<BigInt>>, lineality: Vec<Vec<BigInt>>) -> Self {
        let all: Vec<_> = rays.iter().cloned().chain(with_negatives(&lineality)).collect();
        let (facets, equations) = facets_and_equations(dim, &all);
        Self {
            dim,
            rays,
            lineality,
            facets: canonical(facets),
            equations,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// Minimal generating set: extreme rays plus ± a lineality basis.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.rays.iter().cloned().chain(with_negatives(&self.lineality)).collect()
    }

    /// Minimal inequality system (`⟨u,x⟩ ≥ 0`), equations included as ± pairs.
    pub fn inequalities(&self) -> Vec<Vec<BigInt>> {
        self.facets.iter().cloned().chain(with_negatives(&self.equations)).collect()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn linear_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim
            && self.facets.iter().all(|u| !dot(u, x).is_negative())
            && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        let (scaled, _) = clear_denominators(x);
        self.contains(&scaled)
    }

    /// Topological interior membership (empty unless full-dimensional).
    pub fn interior_contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim
            && self.is_full_dimensional()
            && self.facets.iter().all(|u| dot(u, x).is_positive())
    }

    pub fn is_subset_of(&self, other: &RationalCone) -> bool {
        self.dim == other.dim && self.generators().iter().all(|g| other.contains(g))
    }

    /// Equality by double inclusion.
    pub fn same_cone(&self, other: &RationalCone) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// A point in the relative interior: the sum of the extreme rays.
    pub fn relative_interior_point(&self) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); self.dim];
        for r in &self.rays {
            for (a, b) in p.iter_mut().zip(r) {
                *a += b;
            }
        }
        p
    }
}

impl fmt::Debug for RationalCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RationalCone")
            .field("dim", &self.dim)
            .field("rays", &fmt_vecs(&self.rays))
            .field("lineality", &fmt_vecs(&self.lineality))
            .field("facets", &fmt_vecs(&self.facets))
            .field("equations", &fmt_vecs(&self.equations))
            .finish()
    }
}

impl fmt::Display for RationalCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators();
        if gens.is_empty() {
            return write!(f, "cone()");
        }
        write!(f, "cone({})", fmt_vecs(&gens).join(", "))
    }
}

fn fmt_vecs(vs: &[Vec<BigInt>]) -> Vec<String> {
    vs.iter()
        .map(|v| format!("({})", v.iter().map(ToString::to_string).join(",")))
        .collect()
}

fn check_lengths(dim: usize, vs: &[Vec<BigInt>]) -> Result<()> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

pub fn dual_cone(c: &RationalCone) -> RationalCone {
    RationalCone {
        dim: c.dim,
        rays: c.facets.clone(),
        lineality: c.equations.clone(),
        facets: c.rays.clone(),
        equations: c.lineality.clone(),
    }
}

pub fn intersect_cones(a: &RationalCone, b: &RationalCone) -> Result<RationalCone> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let mut ineqs = a.inequalities();
    ineqs.extend(b.inequalities());
    RationalCone::from_inequalities(a.dim, ineqs)
}

/// Half-space `⟨normal, x⟩ ≥ -offset`, scaled so that `(normal, offset)` is primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Facet {
    pub fn new(normal: Vec<BigInt>, offset: BigInt) -> Self {
        let mut all = normal;
        all.push(offset);
        let mut all = primitive(&all);
        let offset = all.pop().unwrap();
        Self { normal: all, offset }
    }

    /// `⟨normal, x⟩ + offset`, nonnegative exactly on the half-space.
    pub fn slack(&self, x: &[BigRational]) -> BigRational {
        let s: BigRational = self
            .normal
            .iter()
            .zip(x)
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .sum();
        s + BigRational::from_integer(self.offset.clone())
    }
}

/// Full-dimensional polytope with rational vertices and its irredundant facets.
/// Vertices are sorted lexicographically; facets are sorted and canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<BigRational>>,
    facets: Vec<Facet>,
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

fn homogenize(v: &[BigRational]) -> Vec<BigInt> {
    let (mut scaled, q) = clear_denominators(v);
    scaled.push(q);
    scaled
}

impl Polytope {
    pub fn from_integer_vertices(dim: usize, vertices: Vec<Vec<BigInt>>) -> Result<Self> {
        Self::from_vertices(dim, vertices.iter().map(|v| to_rational(v)).collect())
    }

    /// Convex hull of a point set. Non-extreme points are dropped.
    pub fn from_vertices(dim: usize, points: Vec<Vec<BigRational>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if points.is_empty() {
            return Err(Error::Empty);
        }
        let points: Vec<_> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let homog: Vec<Vec<BigInt>> = points.iter().map(|p| homogenize(p)).collect();
        let (normals, equations) = facets_and_equations(dim + 1, &homog);
        if !equations.is_empty() {
            return Err(Error::NotFullDimensional);
        }
        let facets: Vec<Facet> = normals
            .into_iter()
            .map(|mut u| {
                let c = u.pop().unwrap();
                Facet::new(u, c)
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vertices = points
            .into_iter()
            .filter(|p| {
                let tight: Vec<Vec<BigInt>> = facets
                    .iter()
                    .filter(|f| f.slack(p).is_zero())
                    .map(|f| f.normal.clone())
                    .collect();
                !tight.is_empty()
                    && rational_rank(&IntegerMatrix::from_rows(dim, tight).unwrap()) == dim
            })
            .collect();
        Ok(Self {
            dim,
            vertices,
            facets,
        })
    }

    /// Polytope given by half-spaces; vertices are enumerated exactly.
    pub fn from_facets(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        let vertices = vertices_from_facets(dim, &facets)?;
        Self::from_vertices(dim, vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_integer())
    }

    /// Vertices as integer vectors, or `NotLattice`.
    pub fn integer_vertices(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_lattice() {
            return Err(Error::NotLattice);
        }
        Ok(self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_integer()).collect())
            .collect())
    }

    /// For each facet, the sorted indices of the vertices lying on it.
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|f| {
                (0..self.vertices.len())
                    .filter(|&i| f.slack(&self.vertices[i]).is_zero())
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn origin_is_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    /// Pulling triangulation: vertices earlier in `order` are pulled first.
    /// Returns simplices as sorted vertex-index lists.
    pub fn pulling_triangulation(&self, order: &[usize]) -> Vec<Vec<usize>> {
        let mut rank_of = vec![usize::MAX; self.vertices.len()];
        for (pos, &v) in order.iter().enumerate() {
            rank_of[v] = pos;
        }
        let homog: Vec<Vec<BigInt>> = self.vertices.iter().map(|v| homogenize(v)).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facet_vertex_sets()
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let all: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let mut out = Vec::new();
        pull(&all, self.dim, &homog, &facet_sets, &rank_of, &mut Vec::new(), &mut out);
        out
    }

    /// `dim!` times the Euclidean volume, as an exact rational.
    pub fn normalized_volume_rational(&self, order: &[usize]) -> BigRational {
        let simplices = self.pulling_triangulation(order);
        let mut total = BigRational::zero();
        for s in simplices {
            let base = &self.vertices[s[0]];
            let rows: Vec<Vec<BigRational>> = s[1..]
                .iter()
                .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            total += rational_det(rows).abs();
        }
        total
    }
}

fn affine_dim(points: &BTreeSet<usize>, homog: &[Vec<BigInt>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let width = homog[0].len();
    let rows = points.iter().map(|&i| homog[i].clone()).collect();
    rational_rank(&IntegerMatrix::from_rows(width, rows).unwrap()) - 1
}

fn pull(
    face: &BTreeSet<usize>,
    k: usize,
    homog: &[Vec<BigInt>],
    facet_sets: &[BTreeSet<usize>],
    rank_of: &[usize],
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if face.len() == k + 1 {
        let mut s: Vec<usize> = face.iter().copied().chain(apexes.iter().copied()).collect();
        s.sort_unstable();
        out.push(s);
        return;
    }
    let apex = *face.iter().min_by_key(|&&v| (rank_of[v], v)).unwrap();
    let subfaces: BTreeSet<Vec<usize>> = facet_sets
        .iter()
        .map(|f| face.intersection(f).copied().collect::<BTreeSet<_>>())
        .filter(|g| !g.contains(&apex) && g.len() >= k && affine_dim(g, homog) + 1 == k)
        .map(|g| g.into_iter().collect())
        .collect();
    apexes.push(apex);
    for g in subfaces {
        let g: BTreeSet<usize> = g.into_iter().collect();
        pull(&g, k - 1, homog, facet_sets, rank_of, apexes, out);
    }
    apexes.pop();
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= &m[k][k];
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = &m[r][k] / &m[k][k];
            for c in k..n {
                let t = &f * &m[k][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Vertex enumeration for `{x : ⟨nᵢ, x⟩ ≥ -cᵢ}`: every `dim`-subset of facets
/// with a unique intersection point is solved and kept when feasible.
pub fn vertices_from_facets(dim: usize, facets: &[Facet]) -> Result<Vec<Vec<BigRational>>> {
    if let Some(f) = facets.iter().find(|f| f.normal.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: f.normal.len(),
        });
    }
    let recession = RationalCone::from_inequalities(dim, facets.iter().map(|f| f.normal.clone()).collect())?;
    if !recession.is_zero() {
        return Err(Error::Unbounded);
    }
    let mut found = BTreeSet::new();
    for subset in (0..facets.len()).combinations(dim) {
        let a = IntegerMatrix::from_rows(dim, subset.iter().map(|&i| facets[i].normal.clone()).collect())?;
        let b: Vec<BigInt> = subset.iter().map(|&i| -&facets[i].offset).collect();
        let Some(x) = solve_rational(&a, &b) else { continue };
        if facets.iter().all(|f| !f.slack(&x).is_negative()) {
            found.insert(x);
        }
    }
    if found.is_empty() {
        return Err(Error::Empty);
    }
    Ok(found.into_iter().collect())
}

pub fn polar_dual(p: &Polytope) -> Result<Polytope> {
    if !p.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    let facets = p
        .vertices
        .iter()
        .map(|v| {
            let (normal, q) = clear_denominators(v);
            Facet::new(normal, q)
        })
        .collect();
    Polytope::from_facets(p.dim, facets)
}

/// Lattice polytope with the origin in its interior whose polar is again a lattice polytope.
pub fn is_reflexive(p: &Polytope) -> Result<bool> {
    let dual = polar_dual(p)?;
    Ok(p.is_lattice() && dual.is_lattice())
}

pub fn normalized_volume(p: &Polytope) -> Result<BigInt> {
    let order: Vec<usize> = (0..p.vertices.len()).collect();
    normalized_volume_with_order(p, &order)
}

pub fn normalized_volume_with_order(p: &Polytope, order: &[usize]) -> Result<BigInt> {
    if !p.is_lattice() {
        return Err(Error::NotLattice);
    }
    let v = p.normalized_volume_rational(order);
    debug_assert!(v.is_integer());
    Ok(v.to_integer())
}

/// `dim!`, handy for converting between Euclidean and normalized volume.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Lexicographically sorted copy, used for order-independent comparisons.
pub fn sorted_vectors<T: Ord + Clone>(vs: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vs.to_vec();
    out.sort();
    out
}
