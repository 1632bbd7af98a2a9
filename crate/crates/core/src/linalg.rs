//! Exact integer matrices and lattices.
//!
//! Characteristic polynomials are computed without fractions: the
//! determinant `det(xI − A)` is evaluated at `n + 1` integer points by
//! Bareiss elimination and interpolated exactly in the falling-factorial
//! basis. Positive semidefiniteness is decided over the rationals by
//! symmetric pivoting, so no eigenvalue is ever approximated except when a
//! numeric counterexample witness is requested.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{cyclotomic_poly, euler_phi};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::witt::WittElement;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from rows of machine integers; panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, m: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product, `(A⊗B)[i·p + k, j·q + l] = A[i,j]·B[k,l]`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (p, q) = (other.rows, other.cols);
        let mut out = Self::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out.set(i * p + k, j * q + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// `−a_i` in the last column.
    pub fn companion(p: &IntPolynomial) -> Result<Self> {
        let n = p
            .degree()
            .ok_or_else(|| Error::Invalid("companion of the zero polynomial".into()))?;
        if !p.leading().is_some_and(One::is_one) {
            return Err(Error::Invalid(
                "companion matrix needs a monic polynomial".into(),
            ));
        }
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            if i + 1 < n {
                m.set(i + 1, i, BigInt::one());
            }
            m.set(i, n - 1, -p.coeff(i));
        }
        Ok(m)
    }

    /// Block-diagonal matrix of companions of `Φ_d` for each listed `d`.
    pub fn cyclotomic_blocks(ds: &[u64]) -> Result<Self> {
        let mut m = Self::zeros(0, 0);
        for &d in ds {
            m = m.direct_sum(&Self::companion(&cyclotomic_poly(d, false)?)?);
        }
        Ok(m)
    }

    /// Determinant by Bareiss fraction-free elimination with row pivoting.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev; // exact by Sylvester's identity
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 {
            sign
        } else {
            sign * &a[n - 1][n - 1]
        })
    }

    /// `det(xI − A)`, monic of degree `n`.
    pub fn charpoly(&self) -> Result<IntPolynomial> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "characteristic polynomial of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        // p(j) for j = 0..=n.
        let mut values = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut m = -self.clone();
            for i in 0..n {
                m.data[i * n + i] += BigInt::from(j);
            }
            values.push(m.determinant()?);
        }
        // Forward differences: p(x) = Σ Δ^k p(0) · C(x, k).
        let mut diffs = Vec::with_capacity(n + 1);
        let mut row = values;
        while !row.is_empty() {
            diffs.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // Σ (Δ^k p(0)/k!) · x(x−1)…(x−k+1); each quotient is an integer.
        let mut out = IntPolynomial::zero();
        let mut falling = IntPolynomial::one();
        let mut fact = BigInt::one();
        for (k, d) in diffs.iter().enumerate() {
            if k > 0 {
                fact *= BigInt::from(k);
                falling = &falling * &IntPolynomial::from_i64s(&[-(k as i64 - 1), 1]);
            }
            let (q, r) = d.div_rem(&fact);
            if !r.is_zero() {
                return Err(Error::InexactDivision {
                    context: "characteristic polynomial interpolation",
                });
            }
            out = &out + &falling.scale(&q);
        }
        Ok(out)
    }

    /// `det(1 − x·A)`, constant term 1.
    pub fn charpoly_rev(&self) -> Result<IntPolynomial> {
        let p = self.charpoly()?;
        Ok(p.reversed_at(self.rows))
    }

    /// Whether the operator ℓ₂-norm is at most 1, i.e. `I − AᵀA` is
    /// positive semidefinite, decided exactly.
    pub fn contraction_le_one(&self) -> bool {
        let ata = self.transpose().mul(self).expect("AᵀA is always defined");
        let m = self.cols;
        let mut g: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let id = if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        };
                        BigRational::from_integer(id - ata.get(i, j))
                    })
                    .collect()
            })
            .collect();
        is_psd(&mut g)
    }

    /// Decides whether every eigenvalue is zero or a root of unity.
    pub fn spectrum_in_unit_disc(&self) -> Result<SpectrumVerdict> {
        let p = self.charpoly()?;
        let zeros = p.x_valuation();
        let mut rest = p.shift_down(zeros);
        let deg = rest.degree().unwrap_or(0) as u64;
        let mut factors = Vec::new();
        // φ(d) ≥ sqrt(d/2), so only d ≤ 2·deg² can contribute.
        for d in 1..=(2 * deg * deg).max(1) {
            if euler_phi(d)? > deg {
                continue;
            }
            let phi_d = cyclotomic_poly(d, false)?;
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem_monic(&phi_d);
                if r.is_zero() && rest.degree().unwrap_or(0) > 0 {
                    rest = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                factors.push((d, mult));
            }
        }
        if rest.degree() == Some(0) {
            return Ok(SpectrumVerdict::AllRootsOfUnityOrZero {
                zero_multiplicity: zeros,
                cyclotomic: factors,
            });
        }
        let modulus = max_root_modulus(&rest);
        if modulus > 1.0 + 1e-9 {
            Ok(SpectrumVerdict::Outside { modulus })
        } else {
            Err(Error::Indeterminate(format!(
                "residual factor {rest} has largest root modulus {modulus:.12}"
            )))
        }
    }

    /// `Σ (multiplicity of Φ_d in the characteristic polynomial)·φ_d`,
    /// ignoring zero eigenvalues.
    pub fn witt_class(&self) -> Result<WittElement> {
        self.witt_class_with(ZeroEigenvalues::Drop)
    }

    pub fn witt_class_with(&self, zeros: ZeroEigenvalues) -> Result<WittElement> {
        match self.spectrum_in_unit_disc() {
            Ok(SpectrumVerdict::AllRootsOfUnityOrZero {
                zero_multiplicity,
                cyclotomic,
            }) => {
                if zero_multiplicity > 0 && zeros == ZeroEigenvalues::Reject {
                    return Err(Error::NotUnitSpectrum(format!(
                        "{zero_multiplicity} zero eigenvalue(s)"
                    )));
                }
                WittElement::from_pairs(cyclotomic.into_iter().map(|(d, k)| (d, k as u64)))
            }
            Ok(SpectrumVerdict::Outside { modulus }) => Err(Error::NotUnitSpectrum(format!(
                "eigenvalue of modulus {modulus:.6}"
            ))),
            Err(e) => Err(e),
        }
    }
}

/// Treatment of zero eigenvalues in [`IntMatrix::witt_class_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroEigenvalues {
    /// Nilpotent part is stabilization padding and is dropped.
    #[default]
    Drop,
    Reject,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumVerdict {
    /// `charpoly = x^zero_multiplicity · ∏ Φ_d^k` for `(d, k)` in
    /// `cyclotomic`, `d` ascending.
    AllRootsOfUnityOrZero {
        zero_multiplicity: usize,
        cyclotomic: Vec<(u64, usize)>,
    },
    /// Some eigenvalue has the given modulus, which exceeds 1.
    Outside { modulus: f64 },
}

fn is_psd(g: &mut Vec<Vec<BigRational>>) -> bool {
    loop {
        let n = g.len();
        if n == 0 {
            return true;
        }
        if (0..n).any(|i| g[i][i].is_negative()) {
            return false;
        }
        let Some(k) = (0..n).find(|&i| g[i][i].is_positive()) else {
            // All diagonal entries vanish: PSD only if the matrix is zero.
            return g.iter().flatten().all(Zero::is_zero);
        };
        let pivot = g[k][k].clone();
        let col: Vec<BigRational> = (0..n).map(|i| g[i][k].clone()).collect();
        let mut next = Vec::with_capacity(n - 1);
        for i in (0..n).filter(|&i| i != k) {
            let row: Vec<BigRational> = (0..n)
                .filter(|&j| j != k)
                .map(|j| &g[i][j] - &col[i] * &col[j] / &pivot)
                .collect();
            next.push(row);
        }
        *g = next;
    }
}

/// Largest root modulus by Durand–Kerner iteration.
fn max_root_modulus(p: &IntPolynomial) -> f64 {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return 0.0;
    }
    let lead = p.leading().and_then(ToPrimitive::to_f64).unwrap_or(1.0);
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::INFINITY) / lead)
        .collect();
    let eval = |z: Complex64| {
        c.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let zi = roots[i];
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (zi - roots[j]));
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl std::ops::Neg for IntMatrix {
    type Output = IntMatrix;
    fn neg(mut self) -> IntMatrix {
        for x in &mut self.data {
            *x = -&*x;
        }
        self
    }
}

/// Text form: rows separated by `;`, entries by `,`, e.g. `0,1;1,0`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[{}x{}]({self})", self.rows, self.cols)
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IntMatrix::zeros(0, 0));
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for row in s.split(';') {
            let parsed = row
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Invalid(format!("bad matrix entry {:?}", x.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        let r = rows.len();
        IntMatrix::new(r, cols, rows.into_iter().flatten().collect())
    }
}

/// A sublattice of `Z^r` held as a row-style Hermite normal form basis:
/// rows in echelon form, positive pivots, entries above each pivot reduced
/// into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HnfLattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl HnfLattice {
    pub fn zero(ambient: usize) -> Self {
        HnfLattice {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..ambient)
            .map(|i| {
                (0..ambient)
                    .map(|j| BigInt::from(u8::from(i == j)))
                    .collect()
            })
            .collect();
        hnf(ambient, &rows).expect("rows have ambient length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Absolute value of the product of the pivots: the index in `Z^r` for
    /// full-rank lattices.
    pub fn pivot_product(&self) -> BigInt {
        self.basis
            .iter()
            .zip(&self.pivots)
            .map(|(row, &c)| row[c].clone())
            .product()
    }

    /// Coefficients expressing `v` in the basis rows, if `v` is a member.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(
            v.len(),
            self.ambient,
            "vector length differs from ambient rank"
        );
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        let mut col = 0;
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if rest[col..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in rest.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
            coeffs.push(q);
            col = c + 1;
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|r| other.contains(r))
    }

    /// Lattice generated by `self` and the extra vectors.
    pub fn extended(&self, extra: &[Vec<BigInt>]) -> Result<Self> {
        let mut rows = self.basis.clone();
        rows.extend_from_slice(extra);
        hnf(self.ambient, &rows)
    }
}

/// Hermite normal form of the lattice generated by `generators`, each of
/// length `ambient`.
pub fn hnf(ambient: usize, generators: &[Vec<BigInt>]) -> Result<HnfLattice> {
    if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
        return Err(Error::Dimension(format!(
            "generator of length {} in ambient rank {ambient}",
            g.len()
        )));
    }
    let mut rows: Vec<Vec<BigInt>> = generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..ambient {
        if top == rows.len() {
            break;
        }
        // Smallest nonzero |entry| in column c at or below `top`.
        while let Some(best) = (top..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
        {
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[top][c]);
                let pivot_row = rows[top].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[top][c].is_zero() {
            continue;
        }
        if rows[top][c].is_negative() {
            for x in &mut rows[top] {
                *x = -&*x;
            }
        }
        let pivot_row = rows[top].clone();
        for row in rows.iter_mut().take(top) {
            let q = row[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        pivots.push(c);
        top += 1;
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    rows.truncate(top);
    Ok(HnfLattice {
        ambient,
        basis: rows,
        pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_examples() {
        let id = hnf(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(id.basis(), &[v(&[1, 0]), v(&[0, 1])]);
        let diag = hnf(2, &[v(&[2, 0]), v(&[0, 3])]).unwrap();
        assert_eq!(diag.basis(), &[v(&[2, 0]), v(&[0, 3])]);
        let l = hnf(2, &[v(&[2, 4]), v(&[4, 2])]).unwrap();
        assert_eq!(l.basis(), &[v(&[2, 4]), v(&[0, 6])]);
        assert!(l.contains(&v(&[6, 6])));
        assert!(!l.contains(&v(&[2, 0])));
        assert!(hnf(2, &[v(&[1])]).is_err());
    }

    #[test]
    fn hnf_with_zero_columns() {
        let l = hnf(3, &[v(&[0, 2, 4]), v(&[0, 0, 3])]).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[0, 2, 1])));
        assert!(!l.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn charpoly_examples() {
        let zero = IntMatrix::zeros(3, 3);
        assert_eq!(zero.charpoly_rev().unwrap(), IntPolynomial::one());
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            swap.charpoly_rev().unwrap(),
            IntPolynomial::from_i64s(&[1, 0, -1])
        );
        let c6 = IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]]);
        assert_eq!(
            c6.charpoly_rev().unwrap(),
            IntPolynomial::from_i64s(&[1, -1, 1])
        );
        assert_eq!(
            IntMatrix::companion(&cyclotomic_poly(6, false).unwrap()).unwrap(),
            c6
        );
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 1, 4], vec![1, 5, 9]]);
        // Cofactor expansion along the first row.
        let expect = -2 * (3 * 9 - 4) + (3 * 5 - 1);
        assert_eq!(m.determinant().unwrap(), BigInt::from(expect));
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn contraction_examples() {
        for rows in [
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![0, 0, 1], vec![-1, 0, 0]],
            vec![vec![1, 0], vec![0, 0]],
        ] {
            assert!(IntMatrix::from_rows(&rows).contraction_le_one(), "{rows:?}");
        }
        assert!(!IntMatrix::from_rows(&[vec![1, 1]]).contraction_le_one());
        assert!(!IntMatrix::from_rows(&[vec![1], vec![1]]).contraction_le_one());
        assert!(!IntMatrix::from_rows(&[vec![2]]).contraction_le_one());
    }

    #[test]
    fn spectrum_examples() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            swap.spectrum_in_unit_disc().unwrap(),
            SpectrumVerdict::AllRootsOfUnityOrZero {
                zero_multiplicity: 0,
                cyclotomic: vec![(1, 1), (2, 1)]
            }
        );
        match IntMatrix::from_rows(&[vec![2]])
            .spectrum_in_unit_disc()
            .unwrap()
        {
            SpectrumVerdict::Outside { modulus } => assert!((modulus - 2.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
        let nil = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(
            nil.spectrum_in_unit_disc().unwrap(),
            SpectrumVerdict::AllRootsOfUnityOrZero {
                zero_multiplicity: 2,
                cyclotomic: vec![]
            }
        );
        // x^2 - x - 1: golden ratio.
        let fib = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        assert!(matches!(
            fib.spectrum_in_unit_disc().unwrap(),
            SpectrumVerdict::Outside { .. }
        ));
    }

    #[test]
    fn witt_class_examples() {
        let w = |pairs: &[(u64, i64)]| WittElement::from_pairs(pairs.iter().copied()).unwrap();
        assert_eq!(IntMatrix::identity(2).witt_class().unwrap(), w(&[(1, 2)]));
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.witt_class().unwrap(), w(&[(1, 1), (2, 1)]));
        let c6 = IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]]);
        assert_eq!(c6.witt_class().unwrap(), w(&[(6, 1)]));
        assert!(matches!(
            IntMatrix::from_rows(&[vec![2]]).witt_class(),
            Err(Error::NotUnitSpectrum(_))
        ));
        let padded = c6.direct_sum(&IntMatrix::zeros(1, 1));
        assert_eq!(padded.witt_class().unwrap(), w(&[(6, 1)]));
        assert!(padded.witt_class_with(ZeroEigenvalues::Reject).is_err());
    }

    #[test]
    fn matrix_text_roundtrip() {
        let m: IntMatrix = "1,2;3,-4".parse().unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 2], vec![3, -4]]));
        assert_eq!(m.to_string(), "1,2;3,-4");
        assert!("1,2;3".parse::<IntMatrix>().is_err());
        assert!("1,x".parse::<IntMatrix>().is_err());
    }
}
