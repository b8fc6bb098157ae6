//! Squarefree monomial ideals, stored by the supports of their minimal generators.
//!
//! Minimal primes of such an ideal are the coordinate primes of the minimal
//! transversals (hitting sets) of the generator supports, and the same
//! transversal computation turns a family of primes back into generators.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Variables are 0-based indices; display is 1-based (`x1, x2, …`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquarefreeMonomialIdeal {
    num_vars: usize,
    generators: Vec<Vec<usize>>,
}

impl SquarefreeMonomialIdeal {
    /// Builds the ideal generated by the given supports, antichain-reduced and
    /// canonically ordered by (size, lexicographic).
    pub fn new(num_vars: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = Vec::with_capacity(generators.len());
        for g in generators {
            let s: BTreeSet<usize> = g.into_iter().collect();
            if let Some(&bad) = s.iter().find(|&&i| i >= num_vars) {
                return Err(Error::VariableOutOfRange {
                    index: bad,
                    num_vars,
                });
            }
            sets.push(s);
        }
        Ok(Self {
            num_vars,
            generators: minimize(sets),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// The empty monomial `1` is a generator.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Vec::is_empty)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the squarefree monomial with this support lies in the ideal.
    pub fn contains_support(&self, support: &[usize]) -> bool {
        let s: BTreeSet<usize> = support.iter().copied().collect();
        self.generators.iter().any(|g| g.iter().all(|i| s.contains(i)))
    }

    /// Minimal hitting sets of the generator supports, in canonical order.
    pub fn minimal_primes(&self) -> Result<Vec<Vec<usize>>> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(minimal_transversals(&self.generators))
    }

    /// Codimension of `V(I)` in affine `num_vars`-space: the smallest prime.
    pub fn vanishing_codim(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let primes = self.minimal_primes()?;
        Ok(primes.iter().map(Vec::len).min().expect("nonzero proper ideal has a prime"))
    }

    /// Renames variables: variable `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&i| perm[i]).collect())
            .collect();
        Self::new(self.num_vars, gens)
    }

    /// Writes the ideal as an intersection of its primes, with variable
    /// labels starting at `first`.
    pub fn display_primes(&self, first: usize) -> String {
        match self.minimal_primes() {
            Ok(p) => p
                .iter()
                .map(|s| format_support(s, first))
                .collect::<Vec<_>>()
                .join(" ∩ "),
            Err(_) => "(1)".to_string(),
        }
    }
}

impl fmt::Display for SquarefreeMonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                if g.is_empty() {
                    "1".to_string()
                } else {
                    g.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// `(x_a, x_b, …)` with labels offset by `first`.
pub fn format_support(s: &[usize], first: usize) -> String {
    let names: Vec<String> = s.iter().map(|i| format!("x{}", i + first)).collect();
    format!("({})", names.join(","))
}

/// The ideal `⋂ (x_i : i ∈ P)` over the given primes.
pub fn intersect_primes(primes: &[Vec<usize>], num_vars: usize) -> Result<SquarefreeMonomialIdeal> {
    for p in primes {
        if let Some(&bad) = p.iter().find(|&&i| i >= num_vars) {
            return Err(Error::VariableOutOfRange {
                index: bad,
                num_vars,
            });
        }
    }
    SquarefreeMonomialIdeal::new(num_vars, minimal_transversals(primes))
}

fn canonical_order(a: &Vec<usize>, b: &Vec<usize>) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Drops supersets; output sorted by (size, lexicographic).
fn minimize(sets: Vec<BTreeSet<usize>>) -> Vec<Vec<usize>> {
    let mut sets: Vec<BTreeSet<usize>> = sets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    sets.sort_by_key(BTreeSet::len);
    let mut kept: Vec<BTreeSet<usize>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    let mut out: Vec<Vec<usize>> = kept.into_iter().map(|s| s.into_iter().collect()).collect();
    out.sort_by(canonical_order);
    out
}

/// All minimal sets meeting every member of `family`.
///
/// Branches on the elements of the first edge not yet hit; each element of a
/// partial transversal must keep a private edge (an edge it alone hits), which
/// prunes every branch that could only lead to non-minimal sets.
pub fn minimal_transversals(family: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let edges: Vec<BTreeSet<usize>> = minimize(family.iter().map(|e| e.iter().copied().collect()).collect())
        .into_iter()
        .map(|e| e.into_iter().collect())
        .collect();
    if edges.iter().any(BTreeSet::is_empty) {
        // the empty edge cannot be hit
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    let mut current = BTreeSet::new();
    branch(&edges, &mut current, &mut found);
    let mut out: Vec<Vec<usize>> = found.into_iter().map(|s: BTreeSet<usize>| s.into_iter().collect()).collect();
    out.sort_by(canonical_order);
    out
}

fn branch(edges: &[BTreeSet<usize>], current: &mut BTreeSet<usize>, found: &mut BTreeSet<BTreeSet<usize>>) {
    if !every_element_has_private_edge(edges, current) {
        return;
    }
    let Some(unhit) = edges.iter().find(|e| e.is_disjoint(current)) else {
        found.insert(current.clone());
        return;
    };
    for &v in unhit {
        current.insert(v);
        branch(edges, current, found);
        current.remove(&v);
    }
}

fn every_element_has_private_edge(edges: &[BTreeSet<usize>], current: &BTreeSet<usize>) -> bool {
    current.iter().all(|v| {
        edges
            .iter()
            .any(|e| e.contains(v) && e.intersection(current).count() == 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[usize]]) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal::new(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn variables_give_one_prime() {
        let i = ideal(3, &[&[0], &[1], &[2]]);
        assert_eq!(i.minimal_primes().unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(i.vanishing_codim().unwrap(), 3);
    }

    #[test]
    fn generators_are_antichain_reduced() {
        let i = ideal(4, &[&[0, 1, 2], &[0, 1], &[3], &[3, 2]]);
        assert_eq!(i.generators(), &[vec![3], vec![0, 1]]);
    }

    #[test]
    fn product_of_two_primes() {
        let i = intersect_primes(&[vec![0, 1, 4], vec![2, 3, 5]], 6).unwrap();
        assert_eq!(i.generators().len(), 9);
        for g in i.generators() {
            assert_eq!(g.len(), 2);
        }
        assert_eq!(i.minimal_primes().unwrap(), vec![vec![0, 1, 4], vec![2, 3, 5]]);
    }

    #[test]
    fn single_prime_gives_variables() {
        let i = intersect_primes(&[vec![0, 1, 2, 3, 4]], 5).unwrap();
        assert_eq!(i.generators(), &[vec![0], vec![1], vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn blowup_and_z1_codims() {
        // (x1,x2) ∩ (x3..x6), n = 4
        let z = intersect_primes(&[vec![0, 1], vec![2, 3, 4, 5]], 6).unwrap();
        assert_eq!(z.vanishing_codim().unwrap(), 2);
        // (x0,x3,x4,x5) ∩ (x1,x2,x3,x4), n = 3
        let z1 = intersect_primes(&[vec![0, 3, 4, 5], vec![1, 2, 3, 4]], 6).unwrap();
        assert_eq!(z1.vanishing_codim().unwrap(), 4);
    }

    #[test]
    fn unit_and_zero_ideals() {
        let unit = ideal(3, &[&[], &[1]]);
        assert!(unit.is_unit());
        assert!(matches!(unit.minimal_primes(), Err(Error::UnitIdeal)));
        assert!(matches!(unit.vanishing_codim(), Err(Error::UnitIdeal)));
        let zero = ideal(3, &[]);
        assert!(matches!(zero.vanishing_codim(), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn out_of_range_index() {
        assert!(SquarefreeMonomialIdeal::new(2, vec![vec![2]]).is_err());
    }

    #[test]
    fn display() {
        let i = intersect_primes(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        assert_eq!(i.display_primes(1), "(x1,x2) ∩ (x3,x4)");
        assert_eq!(i.to_string(), "(x1*x3, x1*x4, x2*x3, x2*x4)");
    }
}
