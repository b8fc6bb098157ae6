//! Graded pieces of multigraded polynomial rings and of complete-intersection
//! quotients.
//!
//! [`ci_dimension`] uses the Koszul inclusion–exclusion formula, which is only
//! valid for a regular sequence. [`quotient_dim_oracle`] computes the same
//! number by linear algebra on explicit relations and serves as the check.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::coxring::DivisorClass;
use crate::error::{Error, Result};
use crate::linalg::{sparse_rank, SparseRow};

/// Search box for the positive functional certifying pointedness.
pub const FUNCTIONAL_BOUND: i64 = 10;

pub type Exponents = Vec<u32>;

fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or_else(|| Error::Overflow(x.clone()))).collect()
}

/// Polynomial ring `C[x_1..x_r]` graded by `deg(x_i) ∈ Z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolyRingSpec {
    degrees: Vec<Vec<i64>>,
    rank: usize,
    functional: Vec<i64>,
}

impl GradedPolyRingSpec {
    /// Fails with [`Error::NotPointed`] unless some integer `u` with
    /// `|u_j| ≤ FUNCTIONAL_BOUND` has `⟨u, deg x_i⟩ ≥ 1` for every `i`.
    pub fn new(var_degrees: &[DivisorClass]) -> Result<Self> {
        let rank = var_degrees.first().map_or(0, DivisorClass::rank);
        let degrees = var_degrees
            .iter()
            .map(|d| {
                if d.rank() != rank {
                    return Err(Error::DimensionMismatch {
                        expected: rank,
                        found: d.rank(),
                    });
                }
                to_i64(d.coords())
            })
            .collect::<Result<Vec<_>>>()?;
        let functional = find_positive_functional(&degrees, rank)?;
        Ok(Self {
            degrees,
            rank,
            functional,
        })
    }

    pub fn from_i64(degrees: &[&[i64]]) -> Result<Self> {
        let d: Vec<DivisorClass> = degrees.iter().map(|x| DivisorClass::from_i64(x)).collect();
        Self::new(&d)
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self, i: usize) -> &[i64] {
        &self.degrees[i]
    }

    /// The certificate `u` with `⟨u, deg x_i⟩ ≥ 1`.
    pub fn functional(&self) -> &[i64] {
        &self.functional
    }

    pub fn monomial_degree(&self, e: &[u32]) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for (d, &k) in self.degrees.iter().zip(e) {
            for (o, x) in out.iter_mut().zip(d) {
                *o += x * k as i64;
            }
        }
        out
    }

    fn weight(&self, w: &[i64]) -> i64 {
        self.functional.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    fn check_rank(&self, w: &DivisorClass) -> Result<Vec<i64>> {
        if w.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        to_i64(w.coords())
    }

    /// Number of monomials of degree `w`.
    pub fn count_monomials(&self, w: &DivisorClass) -> Result<u64> {
        let w = self.check_rank(w)?;
        Ok(self.count_i64(&w))
    }

    pub(crate) fn count_i64(&self, w: &[i64]) -> u64 {
        let mut memo = HashMap::new();
        self.count_from(0, w.to_vec(), &mut memo)
    }

    fn count_from(&self, i: usize, rem: Vec<i64>, memo: &mut HashMap<(usize, Vec<i64>), u64>) -> u64 {
        if self.weight(&rem) < 0 {
            return 0;
        }
        if i == self.degrees.len() {
            return rem.iter().all(|&x| x == 0) as u64;
        }
        if let Some(&c) = memo.get(&(i, rem.clone())) {
            return c;
        }
        let d = &self.degrees[i];
        let mut total = 0;
        let mut cur = rem.clone();
        while self.weight(&cur) >= 0 {
            total += self.count_from(i + 1, cur.clone(), memo);
            for (c, x) in cur.iter_mut().zip(d) {
                *c -= x;
            }
        }
        memo.insert((i, rem), total);
        total
    }

    /// All exponent vectors of degree `w`, in lexicographic order.
    pub fn monomials_of_degree(&self, w: &DivisorClass) -> Result<Vec<Exponents>> {
        let w = self.check_rank(w)?;
        Ok(self.monomials_i64(&w))
    }

    pub(crate) fn monomials_i64(&self, w: &[i64]) -> Vec<Exponents> {
        let mut out = Vec::new();
        let mut e = vec![0u32; self.degrees.len()];
        self.enumerate(0, w.to_vec(), &mut e, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, rem: Vec<i64>, e: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == self.degrees.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(e.clone());
            }
            return;
        }
        let d = &self.degrees[i];
        let mut cur = rem;
        let mut k = 0;
        while self.weight(&cur) >= 0 {
            e[i] = k;
            self.enumerate(i + 1, cur.clone(), e, out);
            for (c, x) in cur.iter_mut().zip(d) {
                *c -= x;
            }
            k += 1;
        }
        e[i] = 0;
    }
}

fn find_positive_functional(degrees: &[Vec<i64>], rank: usize) -> Result<Vec<i64>> {
    let positive = |u: &[i64]| {
        degrees
            .iter()
            .all(|d| d.iter().zip(u).map(|(a, b)| a * b).sum::<i64>() >= 1)
    };
    // shells of growing max-norm, so the certificate is as small as possible
    for radius in 0..=FUNCTIONAL_BOUND {
        let mut u = vec![-radius; rank];
        loop {
            if u.iter().any(|x| x.abs() == radius) && positive(&u) {
                return Ok(u);
            }
            let mut k = 0;
            loop {
                if k == rank {
                    break;
                }
                if u[k] < radius {
                    u[k] += 1;
                    break;
                }
                u[k] = -radius;
                k += 1;
            }
            if k == rank {
                break;
            }
        }
        if rank == 0 {
            break;
        }
    }
    if degrees.is_empty() {
        return Ok(vec![0; rank]);
    }
    Err(Error::NotPointed {
        bound: FUNCTIONAL_BOUND,
    })
}

/// Polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    num_vars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl SparsePolynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    /// Convenience: integer coefficients.
    pub fn from_i64_terms(num_vars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::from_terms(
            num_vars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigRational::from_integer(BigInt::from(*c)))),
        )
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) -> Result<()> {
        if e.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: e.len(),
            });
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> SparsePolynomial {
        if k.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[u32]) -> SparsePolynomial {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &other.terms {
            for (e2, c2) in self.mul_monomial(e).terms {
                out.add_term(e2, c2 * c).expect("same arity");
            }
        }
        out
    }

    /// Integer coefficient vector obtained by clearing denominators.
    fn integer_terms(&self) -> Vec<(Exponents, BigInt)> {
        let l = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.numer() * (&l / c.denom())))
            .collect()
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Quotient of a graded polynomial ring by relations of the given degrees,
/// optionally with the relations themselves.
#[derive(Clone, Debug)]
pub struct CompleteIntersectionSpec {
    pub ring: GradedPolyRingSpec,
    pub rel_degrees: Vec<DivisorClass>,
    pub relations: Option<Vec<SparsePolynomial>>,
}

/// Outcome of [`homogeneity_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous,
    /// `relation` has a term `exponents` of degree `found`.
    Offending {
        relation: usize,
        exponents: Exponents,
        found: Vec<i64>,
    },
}

impl CompleteIntersectionSpec {
    /// Relations, when given, must be homogeneous of their declared degrees.
    pub fn new(
        ring: GradedPolyRingSpec,
        rel_degrees: Vec<DivisorClass>,
        relations: Option<Vec<SparsePolynomial>>,
    ) -> Result<Self> {
        let spec = Self::new_unchecked(ring, rel_degrees, relations)?;
        if let Homogeneity::Offending { relation, .. } = homogeneity_check(&spec)? {
            return Err(Error::NotHomogeneous { relation });
        }
        Ok(spec)
    }

    /// Shape checks only; homogeneity is left to [`homogeneity_check`].
    pub fn new_unchecked(
        ring: GradedPolyRingSpec,
        rel_degrees: Vec<DivisorClass>,
        relations: Option<Vec<SparsePolynomial>>,
    ) -> Result<Self> {
        for d in &rel_degrees {
            ring.check_rank(d)?;
        }
        if let Some(rels) = &relations {
            if rels.len() != rel_degrees.len() {
                return Err(Error::DimensionMismatch {
                    expected: rel_degrees.len(),
                    found: rels.len(),
                });
            }
            for r in rels {
                if r.num_vars() != ring.num_vars() {
                    return Err(Error::DimensionMismatch {
                        expected: ring.num_vars(),
                        found: r.num_vars(),
                    });
                }
            }
        }
        Ok(Self {
            ring,
            rel_degrees,
            relations,
        })
    }

    /// The same quotient with variables relabelled (`x_i ↦ x_{perm[i]}`) and
    /// relations reordered (`rel_j ↦ rel_{rel_perm[j]}`).
    pub fn permuted(&self, perm: &[usize], rel_perm: &[usize]) -> Result<Self> {
        let n = self.ring.num_vars();
        let mut degrees = vec![DivisorClass(Vec::new()); n];
        for (i, &p) in perm.iter().enumerate() {
            degrees[p] = DivisorClass(self.ring.degree(i).iter().map(|&x| BigInt::from(x)).collect());
        }
        let mut rel_degrees = vec![DivisorClass(Vec::new()); self.rel_degrees.len()];
        for (j, &p) in rel_perm.iter().enumerate() {
            rel_degrees[p] = self.rel_degrees[j].clone();
        }
        let relations = match &self.relations {
            None => None,
            Some(rels) => {
                let mut out = vec![SparsePolynomial::zero(n); rels.len()];
                for (j, r) in rels.iter().enumerate() {
                    let moved = r.terms.iter().map(|(e, c)| {
                        let mut e2 = vec![0; n];
                        for (i, &k) in e.iter().enumerate() {
                            e2[perm[i]] = k;
                        }
                        (e2, c.clone())
                    });
                    out[rel_perm[j]] = SparsePolynomial::from_terms(n, moved)?;
                }
                Some(out)
            }
        };
        Self::new_unchecked(GradedPolyRingSpec::new(&degrees)?, rel_degrees, relations)
    }
}

/// Every term of every explicit relation has the declared degree.
pub fn homogeneity_check(c: &CompleteIntersectionSpec) -> Result<Homogeneity> {
    let rels = c.relations.as_ref().ok_or(Error::MissingRelations)?;
    for (j, (r, d)) in rels.iter().zip(&c.rel_degrees).enumerate() {
        let target = to_i64(d.coords())?;
        for e in r.terms.keys() {
            let found = c.ring.monomial_degree(e);
            if found != target {
                return Ok(Homogeneity::Offending {
                    relation: j,
                    exponents: e.clone(),
                    found,
                });
            }
        }
    }
    Ok(Homogeneity::Homogeneous)
}

/// `Σ_{S ⊆ relations} (-1)^{|S|} · #monomials(w - Σ_{s∈S} deg s)`.
pub fn ci_dimension(c: &CompleteIntersectionSpec, w: &DivisorClass) -> Result<i64> {
    let w = c.ring.check_rank(w)?;
    let rels = c
        .rel_degrees
        .iter()
        .map(|d| to_i64(d.coords()))
        .collect::<Result<Vec<_>>>()?;
    let mut total: i64 = 0;
    for mask in 0u64..(1u64 << rels.len()) {
        let mut shifted = w.clone();
        for (j, d) in rels.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for (a, b) in shifted.iter_mut().zip(d) {
                    *a -= b;
                }
            }
        }
        let n = c.ring.count_i64(&shifted) as i64;
        if mask.count_ones() % 2 == 0 {
            total += n;
        } else {
            total -= n;
        }
    }
    Ok(total)
}

/// Dimension of the degree-`w` piece of `ring / (relations)`, by rank of the
/// span of `m · rel_s` over all monomials `m` of complementary degree.
pub fn quotient_dim_oracle(c: &CompleteIntersectionSpec, w: &DivisorClass) -> Result<u64> {
    let rels = c.relations.as_ref().ok_or(Error::MissingRelations)?;
    if let Homogeneity::Offending { relation, .. } = homogeneity_check(c)? {
        return Err(Error::NotHomogeneous { relation });
    }
    let w = c.ring.check_rank(w)?;
    let basis = c.ring.monomials_i64(&w);
    let index: HashMap<&Exponents, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows: Vec<SparseRow> = Vec::new();
    for (r, d) in rels.iter().zip(&c.rel_degrees) {
        let d = to_i64(d.coords())?;
        let rest: Vec<i64> = w.iter().zip(&d).map(|(a, b)| a - b).collect();
        let terms = r.integer_terms();
        for m in c.ring.monomials_i64(&rest) {
            let row: SparseRow = terms
                .iter()
                .map(|(e, coef)| {
                    let prod: Exponents = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    (index[&prod], coef.clone())
                })
                .collect();
            rows.push(row);
        }
    }
    let rank = sparse_rank(rows);
    Ok((basis.len() - rank) as u64)
}

/// Both dimension computations at one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionComparison {
    pub koszul: i64,
    pub oracle: u64,
}

impl DimensionComparison {
    pub fn agrees(&self) -> bool {
        self.koszul >= 0 && self.koszul as u64 == self.oracle
    }
}

pub fn compare_with_oracle(c: &CompleteIntersectionSpec, w: &DivisorClass) -> Result<DimensionComparison> {
    Ok(DimensionComparison {
        koszul: ci_dimension(c, w)?,
        oracle: quotient_dim_oracle(c, w)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cox3_ring(d: i64) -> GradedPolyRingSpec {
        GradedPolyRingSpec::from_i64(&[&[d - 2, 1], &[1, -1], &[1, -1], &[1, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    fn w(a: i64, b: i64) -> DivisorClass {
        DivisorClass::from_i64(&[a, b])
    }

    #[test]
    fn degree_zero_has_one_monomial() {
        let r = cox3_ring(5);
        assert_eq!(r.count_monomials(&w(0, 0)).unwrap(), 1);
    }

    #[test]
    fn small_pieces_of_cox3_ring() {
        let r = cox3_ring(5);
        assert_eq!(r.count_monomials(&w(1, 0)).unwrap(), 4);
        assert_eq!(r.count_monomials(&w(1, -1)).unwrap(), 2);
        assert_eq!(r.count_monomials(&w(0, 1)).unwrap(), 1);
        assert_eq!(r.count_monomials(&w(-1, 0)).unwrap(), 0);
    }

    #[test]
    fn count_matches_enumeration() {
        let r = cox3_ring(4);
        for a in 0..5 {
            for b in -4..5 {
                let list = r.monomials_of_degree(&w(a, b)).unwrap();
                assert_eq!(list.len() as u64, r.count_monomials(&w(a, b)).unwrap());
                for e in list {
                    assert_eq!(r.monomial_degree(&e), vec![a, b]);
                }
            }
        }
    }

    #[test]
    fn non_pointed_is_rejected() {
        assert!(matches!(
            GradedPolyRingSpec::from_i64(&[&[1, 0], &[-1, 0]]),
            Err(Error::NotPointed { .. })
        ));
    }

    #[test]
    fn functional_is_positive() {
        let r = cox3_ring(3);
        for i in 0..r.num_vars() {
            let s: i64 = r.degree(i).iter().zip(r.functional()).map(|(a, b)| a * b).sum();
            assert!(s >= 1);
        }
    }

    #[test]
    fn no_relations_means_plain_count() {
        let r = cox3_ring(5);
        let c = CompleteIntersectionSpec::new(r.clone(), vec![], Some(vec![])).unwrap();
        for (a, b) in [(0, 0), (2, 1), (3, -2)] {
            let n = r.count_monomials(&w(a, b)).unwrap();
            assert_eq!(ci_dimension(&c, &w(a, b)).unwrap(), n as i64);
            assert_eq!(quotient_dim_oracle(&c, &w(a, b)).unwrap(), n);
        }
    }

    #[test]
    fn hypersurface_in_p2() {
        // C[x,y,z]/(x^2+y^2+z^2): dimension 2k+1 in degree k
        let r = GradedPolyRingSpec::from_i64(&[&[1], &[1], &[1]]).unwrap();
        let f = SparsePolynomial::from_i64_terms(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]).unwrap();
        let c = CompleteIntersectionSpec::new(r, vec![DivisorClass::from_i64(&[2])], Some(vec![f])).unwrap();
        for k in 0..6 {
            let cmp = compare_with_oracle(&c, &DivisorClass::from_i64(&[k])).unwrap();
            assert_eq!(cmp.oracle, 2 * k as u64 + 1);
            assert!(cmp.agrees());
        }
    }

    #[test]
    fn duplicate_relation_is_flagged() {
        let r = GradedPolyRingSpec::from_i64(&[&[1], &[1], &[1]]).unwrap();
        let f = SparsePolynomial::from_i64_terms(3, &[(&[1, 1, 0], 1), (&[0, 0, 2], -3)]).unwrap();
        let deg = DivisorClass::from_i64(&[2]);
        let c = CompleteIntersectionSpec::new(r, vec![deg.clone(), deg], Some(vec![f.clone(), f])).unwrap();
        let cmp = compare_with_oracle(&c, &DivisorClass::from_i64(&[4])).unwrap();
        assert!(!cmp.agrees());
    }

    #[test]
    fn perturbed_relation_is_not_homogeneous() {
        let r = GradedPolyRingSpec::from_i64(&[&[1], &[1], &[2]]).unwrap();
        let f = SparsePolynomial::from_i64_terms(3, &[(&[2, 0, 0], 1), (&[0, 0, 1], 1)]).unwrap();
        let c = CompleteIntersectionSpec::new(r.clone(), vec![DivisorClass::from_i64(&[2])], Some(vec![f])).unwrap();
        assert_eq!(homogeneity_check(&c).unwrap(), Homogeneity::Homogeneous);

        let bad = SparsePolynomial::from_i64_terms(3, &[(&[2, 0, 0], 1), (&[0, 1, 1], 1)]).unwrap();
        let c = CompleteIntersectionSpec::new_unchecked(r.clone(), vec![DivisorClass::from_i64(&[2])], Some(vec![bad.clone()]))
            .unwrap();
        assert!(matches!(homogeneity_check(&c).unwrap(), Homogeneity::Offending { relation: 0, .. }));
        assert!(CompleteIntersectionSpec::new(r, vec![DivisorClass::from_i64(&[2])], Some(vec![bad])).is_err());
    }

    #[test]
    fn polynomial_arithmetic() {
        let x = SparsePolynomial::from_i64_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        let y = SparsePolynomial::from_i64_terms(2, &[(&[1, 0], 1), (&[0, 1], -1)]).unwrap();
        let p = x.mul(&y);
        assert_eq!(p, SparsePolynomial::from_i64_terms(2, &[(&[2, 0], 1), (&[0, 2], -1)]).unwrap());
        assert!(x.add(&x.scale(&BigRational::from_integer(BigInt::from(-1)))).unwrap().is_zero());
    }
}
