//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`]; there is no floating point. Matrices
//! are small (tens of rows), so the algorithms favour clarity over asymptotics,
//! with the exception of [`rational_rank`], which runs on sparse rows because
//! the Hilbert-function oracle feeds it matrices with hundreds of columns.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed to give shape to an empty row list.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor for literals. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(cols, rows).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(self.cols, rows).expect("rows share width")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = &mut self.data[r * self.cols + c];
            *v = -std::mem::take(v);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self.data[src * self.cols + c].clone();
            self.data[dst * self.cols + c] += k * s;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self.data[r * self.cols + src].clone();
            self.data[r * self.cols + dst] += k * s;
        }
    }

    /// Replaces rows (a, b) by (x·a + y·b, p·a + q·b).
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        for c in 0..self.cols {
            let ra = self.data[a * self.cols + c].clone();
            let rb = self.data[b * self.cols + c].clone();
            self.data[a * self.cols + c] = x * &ra + y * &rb;
            self.data[b * self.cols + c] = p * ra + q * rb;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        for r in 0..self.rows {
            let ca = self.data[r * self.cols + a].clone();
            let cb = self.data[r * self.cols + b].clone();
            self.data[r * self.cols + a] = x * &ca + y * &cb;
            self.data[r * self.cols + b] = p * ca + q * cb;
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix({}x{}) ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|r| {
                self.row(r)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for r in 0..self.rows {
            let line = self
                .row(r)
                .iter()
                .map(|x| format!("{:>width$}", x.to_string()))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(f, "[{line}]")?;
        }
        Ok(())
    }
}

pub fn int_vec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of all entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the content; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector, returning the primitive integer
/// vector pointing in the same direction.
pub fn primitive_direction(v: &[BigRational]) -> Vec<BigInt> {
    let (scaled, _) = clear_denominators(v);
    primitive(&scaled)
}

/// Returns `(q·v, q)` with `q > 0` the lcm of the denominators.
pub fn clear_denominators(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let q = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled = v
        .iter()
        .map(|x| x.numer() * (&q / x.denom()))
        .collect();
    (scaled, q)
}

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u · m = h`. Pivots are positive, entries above a pivot lie in `[0, pivot)`,
/// and zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut p = 0;
    for col in 0..m.cols {
        if p == m.rows {
            break;
        }
        for i in p + 1..m.rows {
            if h.get(i, col).is_zero() {
                continue;
            }
            let a = h.get(p, col).clone();
            let b = h.get(i, col).clone();
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            let (x, y) = (eg.x, eg.y);
            let ap = &a / &g;
            let bp = -(&b / &g);
            h.combine_rows(p, i, &x, &y, &bp, &ap);
            u.combine_rows(p, i, &x, &y, &bp, &ap);
        }
        if h.get(p, col).is_zero() {
            continue;
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        let pivot = h.get(p, col).clone();
        for i in 0..p {
            let q = h.get(i, col).div_floor(&pivot);
            if !q.is_zero() {
                let k = -q;
                h.add_row_multiple(i, p, &k);
                u.add_row_multiple(i, p, &k);
            }
        }
        p += 1;
    }
    (h, u)
}

/// Number of nonzero rows of a matrix already in Hermite normal form.
fn hnf_rank(h: &IntegerMatrix) -> usize {
    (0..h.rows)
        .take_while(|&r| h.row(r).iter().any(|x| !x.is_zero()))
        .count()
}

/// HNF with zero rows dropped: a canonical basis of the row lattice.
pub fn row_lattice_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let (h, _) = hermite_normal_form(m);
    let r = hnf_rank(&h);
    h.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Result of [`smith_normal_form`]: `left · m · right = diag(invariants)`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    /// Diagonal entries `d₁ | d₂ | …`, length `min(rows, cols)`, zeros last.
    pub invariants: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariants.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariants greater than one, i.e. the torsion part of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut v = IntegerMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for r in t..a.rows {
            for c in t..a.cols {
                let x = a.get(r, c);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| x.abs() < a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap_rows(t, pr);
        u.swap_rows(t, pr);
        a.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut dirty = false;
            for r in t + 1..a.rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let (piv, x) = (a.get(t, t).clone(), a.get(r, t).clone());
                if x.is_multiple_of(&piv) {
                    let k = -(&x / &piv);
                    a.add_row_multiple(r, t, &k);
                    u.add_row_multiple(r, t, &k);
                } else {
                    let eg = piv.extended_gcd(&x);
                    let (g, s, q) = (eg.gcd, eg.x, eg.y);
                    let p2 = -(&x / &g);
                    let q2 = &piv / &g;
                    a.combine_rows(t, r, &s, &q, &p2, &q2);
                    u.combine_rows(t, r, &s, &q, &p2, &q2);
                    dirty = true;
                }
            }
            for c in t + 1..a.cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let (piv, x) = (a.get(t, t).clone(), a.get(t, c).clone());
                if x.is_multiple_of(&piv) {
                    let k = -(&x / &piv);
                    a.add_col_multiple(c, t, &k);
                    v.add_col_multiple(c, t, &k);
                } else {
                    let eg = piv.extended_gcd(&x);
                    let (g, s, q) = (eg.gcd, eg.x, eg.y);
                    let p2 = -(&x / &g);
                    let q2 = &piv / &g;
                    a.combine_cols(t, c, &s, &q, &p2, &q2);
                    v.combine_cols(t, c, &s, &q, &p2, &q2);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let piv = a.get(t, t).clone();
            let offender = (t + 1..a.rows)
                .find(|&r| (t + 1..a.cols).any(|c| !a.get(r, c).is_multiple_of(&piv)));
            match offender {
                Some(r) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let invariants = (0..n).map(|i| a.get(i, i).clone()).collect();
    SmithDecomposition {
        invariants,
        left: u,
        right: v,
    }
}

/// Saturated basis of the left kernel `{v ∈ Zʳ : v·m = 0}`, in Hermite normal form.
pub fn integer_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let (h, u) = hermite_normal_form(m);
    let r = hnf_rank(&h);
    let kernel = u.select_rows(&(r..m.rows).collect::<Vec<_>>());
    row_lattice_basis(&kernel)
}

/// Saturated basis of the right kernel `{x : m·x = 0}`, one vector per row.
pub fn right_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    integer_kernel(&m.transpose())
}

/// Rank over ℚ, by fraction-free elimination on sparse rows.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let rows = (0..m.rows).map(|r| {
        m.row(r)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c, x.clone()))
            .collect::<BTreeMap<_, _>>()
    });
    sparse_rank(rows)
}

/// Sparse row: column index → nonzero integer entry.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Rank over ℚ of a family of sparse integer rows. Rows are reduced
/// incrementally against an echelon table keyed by leading column, using
/// cross-multiplication followed by content removal, so every intermediate
/// stays integral.
pub fn sparse_rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        while let Some((&lead, _)) = row.iter().next() {
            let Some(piv) = pivots.get(&lead) else {
                make_primitive(&mut row);
                pivots.insert(lead, row);
                break;
            };
            let a = piv[&lead].clone();
            let b = row[&lead].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            // row <- fa*row - fb*piv
            let mut next = SparseRow::new();
            let mut pi = piv.iter().peekable();
            let mut ri = row.iter().peekable();
            loop {
                let entry = match (ri.peek(), pi.peek()) {
                    (None, None) => break,
                    (Some(&(&c, x)), None) => {
                        ri.next();
                        (c, &fa * x)
                    }
                    (None, Some(&(&c, y))) => {
                        pi.next();
                        (c, -(&fb * y))
                    }
                    (Some(&(&cr, x)), Some(&(&cp, y))) => {
                        if cr < cp {
                            ri.next();
                            (cr, &fa * x)
                        } else if cp < cr {
                            pi.next();
                            (cp, -(&fb * y))
                        } else {
                            ri.next();
                            pi.next();
                            (cr, &fa * x - &fb * y)
                        }
                    }
                };
                if !entry.1.is_zero() {
                    next.insert(entry.0, entry.1);
                }
            }
            make_primitive(&mut next);
            row = next;
        }
    }
    pivots.len()
}

fn make_primitive(row: &mut SparseRow) {
    let g = row.values().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.values_mut() {
            *x = &*x / &g;
        }
    }
}

/// Determinant by Bareiss elimination. Panics if `m` is not square.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, val);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// Solves the square system `a · x = b` over ℚ; `None` if `a` is singular.
pub fn solve_rational(a: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.rows;
    assert_eq!(n, a.cols);
    assert_eq!(n, b.len());
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = a.row(r).iter().cloned().map(BigRational::from_integer).collect();
            row.push(BigRational::from_integer(b[r].clone()));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, p);
        let inv = m[k][k].recip();
        for x in m[k][k..].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == k || m[r][k].is_zero() {
                continue;
            }
            let f = m[r][k].clone();
            for c in k..=n {
                let t = &f * &m[k][c];
                m[r][c] -= t;
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
