//! Cox-ring bookkeeping: grading matrices by Gale duality, reconstruction of
//! a fan from its grading and irrelevant ideal, movable and nef cones, and
//! the codimension criterion on the irrelevant locus.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::{irrelevant_ideal, Fan};
use crate::ideal::SquarefreeMonomialIdeal;
use crate::linalg::{content, integer_kernel, rational_rank, right_kernel, row_lattice_basis, smith_normal_form, IntegerMatrix};
use crate::polyhedral::{intersect_cones, RationalCone};

/// A class in `Cl(Z) ≅ Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(pub Vec<BigInt>);

impl DivisorClass {
    pub fn from_i64(xs: &[i64]) -> Self {
        Self(crate::linalg::int_vec(xs))
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Degrees of the Cox generators (columns of `degree_matrix`) together with
/// the irrelevant ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    degree_matrix: IntegerMatrix,
    irrelevant: SquarefreeMonomialIdeal,
}

impl GradingData {
    pub fn new(degree_matrix: IntegerMatrix, irrelevant: SquarefreeMonomialIdeal) -> Result<Self> {
        if irrelevant.num_vars() != degree_matrix.cols() {
            return Err(Error::InconsistentGrading(format!(
                "{} generators but the ideal lives in {} variables",
                degree_matrix.cols(),
                irrelevant.num_vars()
            )));
        }
        if rational_rank(&degree_matrix) != degree_matrix.rows() {
            return Err(Error::InconsistentGrading("degree matrix does not have full row rank".into()));
        }
        Ok(Self {
            degree_matrix,
            irrelevant,
        })
    }

    pub fn num_gens(&self) -> usize {
        self.degree_matrix.cols()
    }

    pub fn cl_rank(&self) -> usize {
        self.degree_matrix.rows()
    }

    pub fn degree_matrix(&self) -> &IntegerMatrix {
        &self.degree_matrix
    }

    pub fn irrelevant(&self) -> &SquarefreeMonomialIdeal {
        &self.irrelevant
    }

    /// `w_i = deg(x_i)`.
    pub fn degree(&self, i: usize) -> DivisorClass {
        DivisorClass(self.degree_matrix.column(i))
    }

    pub fn degrees(&self) -> Vec<DivisorClass> {
        (0..self.num_gens()).map(|i| self.degree(i)).collect()
    }

    /// Canonical basis of the row lattice of the degree matrix.
    pub fn hnf(&self) -> IntegerMatrix {
        row_lattice_basis(&self.degree_matrix)
    }

    /// Same grading up to a change of basis of `Cl(Z)` and the same irrelevant ideal.
    pub fn equivalent(&self, other: &GradingData) -> bool {
        self.hnf() == other.hnf() && self.irrelevant == other.irrelevant
    }

    /// Sum of all generator degrees, the class of `-K`.
    pub fn anticanonical_class(&self) -> DivisorClass {
        class_degree(self, &vec![1; self.num_gens()]).expect("length matches")
    }

    /// The degrees of each minimal prime's variables span a full-dimensional cone.
    pub fn components_span_full_cones(&self) -> Result<bool> {
        for p in self.irrelevant.minimal_primes()? {
            let gens = p.iter().map(|&i| self.degree(i).0).collect();
            if !RationalCone::from_generators(self.cl_rank(), gens)?.is_full_dimensional() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Relabels generators: generator `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut m = IntegerMatrix::zeros(self.cl_rank(), self.num_gens());
        for (i, &p) in perm.iter().enumerate() {
            for r in 0..self.cl_rank() {
                m.set(r, p, self.degree_matrix.get(r, i).clone());
            }
        }
        Self::new(m, self.irrelevant.permuted(perm)?)
    }
}

/// Degree matrix = HNF basis of the relations among the rays.
pub fn grading_from_fan(f: &Fan) -> Result<GradingData> {
    let rays = f.ray_matrix();
    let torsion = smith_normal_form(&rays).torsion();
    if !torsion.is_empty() {
        return Err(Error::Torsion(torsion));
    }
    GradingData::new(integer_kernel(&rays), irrelevant_ideal(f))
}

/// Gale dual: rays are the columns of a saturated kernel basis of the degree
/// matrix, and maximal cones are the complements of the minimal generators of
/// the irrelevant ideal.
pub fn fan_from_bunch(g: &GradingData) -> Result<Fan> {
    let kernel = right_kernel(&g.degree_matrix);
    let dim = kernel.rows();
    if dim + g.cl_rank() != g.num_gens() {
        return Err(Error::InconsistentGrading("kernel has the wrong rank".into()));
    }
    let rays: Vec<Vec<BigInt>> = (0..g.num_gens()).map(|i| kernel.column(i)).collect();
    for (i, r) in rays.iter().enumerate() {
        let c = content(r);
        if c != BigInt::from(1) {
            return Err(Error::InconsistentGrading(format!("ray {} is not primitive", i + 1)));
        }
    }
    if g.irrelevant.is_zero() {
        return Err(Error::InconsistentGrading("irrelevant ideal is zero".into()));
    }
    let n = g.num_gens();
    let cones = g
        .irrelevant
        .generators()
        .iter()
        .map(|gen| (0..n).filter(|i| !gen.contains(i)).collect())
        .collect();
    let fan = Fan::new(dim, rays, cones)?;
    let back = grading_from_fan(&fan)?;
    if !back.equivalent(g) {
        return Err(Error::InconsistentGrading(
            "reconstructed fan does not reproduce the grading".into(),
        ));
    }
    Ok(fan)
}

fn cone_of_degrees(g: &GradingData, idx: impl Iterator<Item = usize>) -> Result<RationalCone> {
    RationalCone::from_generators(g.cl_rank(), idx.map(|j| g.degree(j).0).collect())
}

fn intersect_all(dim: usize, cones: Vec<RationalCone>) -> Result<RationalCone> {
    let mut it = cones.into_iter();
    let Some(first) = it.next() else {
        return RationalCone::from_inequalities(dim, Vec::new());
    };
    it.try_fold(first, |acc, c| intersect_cones(&acc, &c))
}

/// `Mov = ⋂_i cone(w_j : j ≠ i)`.
pub fn mov_cone(g: &GradingData) -> Result<RationalCone> {
    let n = g.num_gens();
    let cones = (0..n)
        .map(|i| cone_of_degrees(g, (0..n).filter(move |&j| j != i)))
        .collect::<Result<Vec<_>>>()?;
    intersect_all(g.cl_rank(), cones)
}

/// `Nef = ⋂_σ cone(w_j : ray j ∉ σ)` over the maximal cones of `f`.
pub fn nef_cone(g: &GradingData, f: &Fan) -> Result<RationalCone> {
    if f.num_rays() != g.num_gens() || irrelevant_ideal(f) != g.irrelevant {
        return Err(Error::InconsistentGrading("fan does not match the grading data".into()));
    }
    let n = g.num_gens();
    let cones = f
        .max_cones()
        .iter()
        .map(|c| cone_of_degrees(g, (0..n).filter(|j| !c.contains(j))))
        .collect::<Result<Vec<_>>>()?;
    intersect_all(g.cl_rank(), cones)
}

/// `w` lies in the interior of the nef cone.
pub fn is_ample(g: &GradingData, f: &Fan, w: &DivisorClass) -> Result<bool> {
    if w.rank() != g.cl_rank() {
        return Err(Error::DimensionMismatch {
            expected: g.cl_rank(),
            found: w.rank(),
        });
    }
    Ok(nef_cone(g, f)?.interior_contains(&w.0))
}

/// Outcome of the codimension test on `V(J_irr)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LefschetzCheck {
    pub codim: usize,
    pub passes: bool,
}

/// `codim V(J_irr) ≥ 3`.
pub fn lefschetz_codim_check(g: &GradingData) -> Result<LefschetzCheck> {
    let codim = g.irrelevant.vanishing_codim()?;
    Ok(LefschetzCheck {
        codim,
        passes: codim >= 3,
    })
}

/// Degree of the monomial `x^e`.
pub fn class_degree(g: &GradingData, exponents: &[i64]) -> Result<DivisorClass> {
    if exponents.len() != g.num_gens() {
        return Err(Error::DimensionMismatch {
            expected: g.num_gens(),
            found: exponents.len(),
        });
    }
    if exponents.iter().any(|e| *e < 0) {
        return Err(Error::InconsistentGrading("negative exponent".into()));
    }
    let e: Vec<BigInt> = exponents.iter().map(|&x| BigInt::from(x)).collect();
    Ok(DivisorClass(g.degree_matrix.mul_vec(&e)?))
}

/// Grading data of the fourfold with a non-nef Cox-ring-preserving
/// hypersurface: `[[1,1,-1,1,-1,0],[0,0,1,1,1,1]]`, `(x1,x2) ∩ (x3,…,x6)`.
pub fn nonnef_example() -> GradingData {
    let q = IntegerMatrix::from_i64(&[&[1, 1, -1, 1, -1, 0], &[0, 0, 1, 1, 1, 1]]);
    let j = crate::ideal::intersect_primes(&[vec![0, 1], vec![2, 3, 4, 5]], 6).expect("in range");
    GradingData::new(q, j).expect("consistent")
}

/// Exponents of the monomials of `f = x1 x2 x5² + x3 x4 + x6²` in [`nonnef_example`].
pub fn nonnef_section_terms() -> Vec<Vec<i64>> {
    vec![vec![1, 1, 0, 0, 2, 0], vec![0, 0, 1, 1, 0, 0], vec![0, 0, 0, 0, 0, 2]]
}

/// `w` lies in the (closed) nef cone.
pub fn is_nef(g: &GradingData, f: &Fan, w: &DivisorClass) -> Result<bool> {
    Ok(nef_cone(g, f)?.contains(&w.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::standard::{p1_x_p1, projective_space};
    use crate::fan::{is_complete, is_smooth};
    use crate::linalg::int_vec;

    #[test]
    fn p4_grading() {
        let g = grading_from_fan(&projective_space(4)).unwrap();
        assert_eq!(g.degree_matrix(), &IntegerMatrix::from_i64(&[&[1, 1, 1, 1, 1]]));
        assert_eq!(g.irrelevant().minimal_primes().unwrap(), vec![vec![0, 1, 2, 3, 4]]);
        let c = lefschetz_codim_check(&g).unwrap();
        assert_eq!(c, LefschetzCheck { codim: 5, passes: true });
    }

    #[test]
    fn p1xp1_grading() {
        let g = grading_from_fan(&p1_x_p1()).unwrap();
        assert_eq!(g.hnf(), IntegerMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
    }

    #[test]
    fn torsion_is_rejected() {
        // P^2 / (Z/3): rays (1,0),(0,1),(-1,-1) scaled lattice
        let f = Fan::from_i64(2, &[&[2, -1], &[-1, 2], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        match grading_from_fan(&f) {
            Err(Error::Torsion(t)) => assert_eq!(t, int_vec(&[3])),
            other => panic!("expected torsion, got {other:?}"),
        }
    }

    #[test]
    fn p4_from_bunch() {
        let g = grading_from_fan(&projective_space(4)).unwrap();
        let f = fan_from_bunch(&g).unwrap();
        assert!(is_smooth(&f));
        assert!(is_complete(&f).unwrap());
        assert_eq!(f.max_cones().len(), 5);
    }

    #[test]
    fn nonnef_cones() {
        let g = nonnef_example();
        let f = fan_from_bunch(&g).unwrap();
        assert!(is_smooth(&f));
        assert!(is_complete(&f).unwrap());
        let mov = mov_cone(&g).unwrap();
        let nef = nef_cone(&g, &f).unwrap();
        let expect_mov = RationalCone::from_generators(2, vec![int_vec(&[1, 0]), int_vec(&[-1, 1])]).unwrap();
        let expect_nef = RationalCone::from_generators(2, vec![int_vec(&[1, 0]), int_vec(&[1, 1])]).unwrap();
        assert!(mov.same_cone(&expect_mov));
        assert!(nef.same_cone(&expect_nef));
        assert!(nef.is_subset_of(&mov));
    }

    #[test]
    fn nonnef_section_degree() {
        let g = nonnef_example();
        let f = fan_from_bunch(&g).unwrap();
        for t in nonnef_section_terms() {
            assert_eq!(class_degree(&g, &t).unwrap(), DivisorClass::from_i64(&[0, 2]));
        }
        let w = DivisorClass::from_i64(&[0, 2]);
        assert!(!is_ample(&g, &f, &w).unwrap());
        assert!(!is_nef(&g, &f, &w).unwrap());
        assert!(is_ample(&g, &f, &DivisorClass::from_i64(&[2, 1])).unwrap());
    }

    #[test]
    fn class_degree_errors_and_zero() {
        let g = nonnef_example();
        assert_eq!(class_degree(&g, &[0; 6]).unwrap(), DivisorClass::from_i64(&[0, 0]));
        assert!(class_degree(&g, &[1, 2]).is_err());
    }

    #[test]
    fn p2_nef_is_everything_positive() {
        let p2 = projective_space(2);
        let g = grading_from_fan(&p2).unwrap();
        let nef = nef_cone(&g, &p2).unwrap();
        assert_eq!(nef.rays(), &[int_vec(&[1])]);
        assert!(is_ample(&g, &p2, &DivisorClass::from_i64(&[1])).unwrap());
    }
}
