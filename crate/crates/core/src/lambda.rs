//! λ- and γ-operations on `W` and the gamma filtration.
//!
//! Series are written `λ_t(x) = Σ (−1)^k λ^k(x) t^k`; a [`WittSeries`]
//! stores those signed coefficients directly, so `λ_t(φ_5)` is
//! `[1, −φ_5, φ_5 + 2φ_1, −φ_5, 1]`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};
use crate::linalg::HnfLattice;
use crate::roots::{cyclotomic_units, elementary_symmetric_all};
use crate::witt::{self, frobenius, WittElement};

/// Power series in `t` with coefficients in `W`, truncated after an explicit
/// degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WittSeries {
    coeffs: Vec<WittElement>,
}

impl WittSeries {
    /// Series of the given truncation degree; missing coefficients are zero,
    /// coefficients beyond the degree are dropped.
    pub fn new(mut coeffs: Vec<WittElement>, degree: usize) -> Self {
        coeffs.resize(degree + 1, WittElement::zero());
        WittSeries { coeffs }
    }

    pub fn one(degree: usize) -> Self {
        Self::new(vec![WittElement::one()], degree)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`; panics past the truncation degree.
    pub fn coeff(&self, k: usize) -> &WittElement {
        assert!(k <= self.degree(), "t^{k} is beyond the truncation degree");
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[WittElement] {
        &self.coeffs
    }

    pub fn truncate(&self, degree: usize) -> Self {
        assert!(degree <= self.degree());
        Self::new(self.coeffs[..=degree].to_vec(), degree)
    }

    /// Highest `k` with a nonzero coefficient.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Product, truncated at the smaller degree.
    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree());
        let mut out = vec![WittElement::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        WittSeries { coeffs: out }
    }

    /// Inverse of a series with constant term `φ_1`.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0] != WittElement::one() {
            return Err(Error::Invalid(
                "only series with constant term 1 are inverted".into(),
            ));
        }
        let d = self.degree();
        let mut inv = vec![WittElement::zero(); d + 1];
        inv[0] = WittElement::one();
        for k in 1..=d {
            let mut acc = WittElement::zero();
            for i in 1..=k {
                acc = &acc + &(&self.coeffs[i] * &inv[k - i]);
            }
            inv[k] = -acc;
        }
        Ok(WittSeries { coeffs: inv })
    }

    /// Integer power; negative exponents go through [`WittSeries::inverse`].
    pub fn pow(&self, e: &BigInt) -> Result<Self> {
        let base = if e.is_negative() {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut k: u64 = e
            .abs()
            .try_into()
            .map_err(|_| Error::Invalid("series exponent too large".into()))?;
        let mut acc = Self::one(self.degree());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Applies an additive map to every coefficient.
    pub fn map<T>(&self, f: impl Fn(&WittElement) -> T) -> Vec<T> {
        self.coeffs.iter().map(f).collect()
    }
}

/// Ascending powers of `t`. A coefficient `c·φ_1` prints as a bare integer,
/// a single term as `c*t^k*phi(n)`, and anything longer in parentheses with
/// terms descending in `n` and any overall minus sign pulled out front.
impl fmt::Display for WittSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let terms: Vec<(u64, BigInt)> = c.iter().rev().map(|(n, v)| (n, v.clone())).collect();
            let negative = terms[0].1.is_negative();
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            f.write_str(sign)?;
            let t = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if terms.len() == 1 {
                let (n, v) = &terms[0];
                let mag = v.abs();
                let mut parts: Vec<String> = Vec::new();
                if !mag.is_one() || (k == 0 && *n == 1) {
                    parts.push(mag.to_string());
                }
                if k > 0 {
                    parts.push(t);
                }
                if *n != 1 {
                    parts.push(format!("phi({n})"));
                }
                f.write_str(&parts.join("*"))?;
            } else {
                let flipped: Vec<(u64, BigInt)> = terms
                    .into_iter()
                    .map(|(n, v)| (n, if negative { -v } else { v }))
                    .collect();
                let mut body = String::new();
                witt::write_terms(&mut body, flipped.iter().map(|(n, v)| (*n, v)))?;
                if k == 0 {
                    f.write_str(&body)?;
                } else {
                    write!(f, "{t}*({body})")?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WittSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// `λ^k(φ_n)` via Newton's identities from the power sums `F_i φ_n`.
///
/// Returns zero for `k > φ(n)`.
pub fn lambda_basis(n: u64, k: usize) -> Result<WittElement> {
    Ok(lambda_basis_all(n)?
        .into_iter()
        .nth(k)
        .unwrap_or_else(WittElement::zero))
}

/// `[λ^0(φ_n), …, λ^{φ(n)}(φ_n)]`.
pub fn lambda_basis_all(n: u64) -> Result<Vec<WittElement>> {
    let phi = euler_phi(n)? as usize;
    let x = WittElement::phi(n);
    let power_sums: Vec<WittElement> = (0..=phi as u64).map(|i| frobenius(i.max(1), &x)).collect();
    let mut e = vec![WittElement::one()];
    for k in 1..=phi {
        let mut acc = WittElement::zero();
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i];
            acc = if i % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        e.push(divide_exact(&acc, k as u64)?);
    }
    Ok(e)
}

fn divide_exact(a: &WittElement, k: u64) -> Result<WittElement> {
    let kk = BigInt::from(k);
    let mut out = WittElement::zero();
    for (n, c) in a.iter() {
        if !(c % &kk).is_zero() {
            return Err(Error::InexactDivision {
                context: "Newton identity",
            });
        }
        out.add_term(n, c / &kk);
    }
    Ok(out)
}

/// `λ_t(φ_n)` as a polynomial series of degree `φ(n)`.
pub fn lambda_polynomial(n: u64) -> Result<WittSeries> {
    let e = lambda_basis_all(n)?;
    let d = e.len() - 1;
    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(k, x)| if k % 2 == 0 { x } else { -x })
        .collect();
    Ok(WittSeries::new(coeffs, d))
}

/// `λ_t(a) = ∏_n λ_t(φ_n)^{c_n}`, truncated at `degree`.
pub fn lambda_series(a: &WittElement, degree: usize) -> Result<WittSeries> {
    let mut acc = WittSeries::one(degree);
    for (n, c) in a.iter() {
        let base = lambda_polynomial(n)?;
        let base = WittSeries::new(base.coeffs, degree);
        acc = acc.mul(&base.pow(c)?);
    }
    Ok(acc)
}

/// `λ^k(a)` for an arbitrary element.
pub fn lambda_power(a: &WittElement, k: usize) -> Result<WittElement> {
    let s = lambda_series(a, k)?;
    let c = s.coeff(k).clone();
    Ok(if k.is_multiple_of(2) { c } else { -c })
}

/// A point of the projective line over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRational {
    Finite(BigRational),
    Infinity,
}

impl ExtRational {
    pub fn integer(n: i64) -> Self {
        ExtRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{q}"),
            ExtRational::Infinity => f.write_str("inf"),
        }
    }
}

/// Grothendieck involution `D(t) = t/(t − 1)`, with `D(1) = ∞`, `D(∞) = 1`.
pub fn mobius_d(t: &ExtRational) -> ExtRational {
    match t {
        ExtRational::Infinity => ExtRational::Finite(BigRational::one()),
        ExtRational::Finite(q) => {
            let den = q - BigRational::one();
            if den.is_zero() {
                ExtRational::Infinity
            } else {
                ExtRational::Finite(q / den)
            }
        }
    }
}

/// `γ^k(a)` from `(−1)^k γ^k(x) = λ^k(x + (k − 1)·φ_1)`.
pub fn gamma_basis(a: &WittElement, k: usize) -> Result<WittElement> {
    if k == 0 {
        return Ok(WittElement::one());
    }
    let shifted = a + &WittElement::integer(k as i64 - 1);
    let l = lambda_power(&shifted, k)?;
    Ok(if k.is_multiple_of(2) { l } else { -l })
}

/// `γ_t(a) = Σ (−1)^k γ^k(a) t^k`, truncated at `degree`.
pub fn gamma_series(a: &WittElement, degree: usize) -> Result<WittSeries> {
    let coeffs = (0..=degree)
        .map(|k| {
            let g = gamma_basis(a, k)?;
            Ok(if k % 2 == 0 { g } else { -g })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WittSeries::new(coeffs, degree))
}

/// Comparison of `γ_t(φ_n − φ(n)φ_1)` with the expansion of
/// `∏_ξ (1 − (1 − [ξ])t)` over the primitive `n`-th roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaPositiveReport {
    pub n: u64,
    pub computed: WittSeries,
    pub oracle: WittSeries,
    /// Degrees whose coefficients disagree.
    pub mismatches: Vec<usize>,
}

impl GammaPositiveReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn gamma_positive_check(n: u64) -> Result<GammaPositiveReport> {
    if n <= 1 {
        return Err(Error::Invalid("gamma positivity check needs n > 1".into()));
    }
    let phi = euler_phi(n)?;
    let x = &WittElement::phi(n) - &WittElement::integer(phi);
    // One degree past φ(n) to confirm the series terminates.
    let degree = phi as usize + 1;
    let computed = gamma_series(&x, degree)?;
    let e = elementary_symmetric_all(&cyclotomic_units(n)?, degree);
    let oracle_coeffs = e
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let w = c.to_witt()?;
            Ok(if k % 2 == 0 { w } else { -w })
        })
        .collect::<Result<Vec<_>>>()?;
    let oracle = WittSeries::new(oracle_coeffs, degree);
    let mismatches = (0..=degree)
        .filter(|&k| computed.coeff(k) != oracle.coeff(k))
        .collect();
    Ok(GammaPositiveReport {
        n,
        computed,
        oracle,
        mismatches,
    })
}

/// Truncated gamma filtration `I_0 ⊇ I_1 ⊇ … ⊇ I_depth` of `W_N`.
///
/// `I_k` for `k ≥ 1` is generated by the monomials
/// `γ^{n_1}(a_1)⋯γ^{n_ℓ}(a_ℓ)` with every `a_i` in the basis
/// `{φ_d − φ(d)φ_1 : d | N, d > 1}` of `I_1`, `n_i ≥ 1`, and
/// `k ≤ Σ n_i ≤ depth + 2`.
#[derive(Debug, Clone)]
pub struct GammaFiltration {
    pub level: u64,
    pub depth: usize,
    /// Divisors of `N`, the coordinate order of every lattice.
    pub basis: Vec<u64>,
    /// `I_0, …, I_depth` in Hermite normal form.
    pub lattices: Vec<HnfLattice>,
    /// Number of monomial generators of each exact total degree.
    pub generators_by_degree: Vec<usize>,
}

impl GammaFiltration {
    pub fn generator_bound(&self) -> usize {
        self.depth + 2
    }

    pub fn lattice(&self, k: usize) -> &HnfLattice {
        &self.lattices[k]
    }

    pub fn element(&self, v: &[BigInt]) -> WittElement {
        WittElement::from_vector(&self.basis, v)
    }

    pub fn contains(&self, k: usize, x: &WittElement) -> Result<bool> {
        Ok(self.lattices[k].contains(&x.to_vector(&self.basis)?))
    }

    /// The augmentation-ideal basis `φ_d − φ(d)φ_1`.
    pub fn augmentation_basis(&self) -> Vec<WittElement> {
        self.basis
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| &WittElement::phi(d) - &WittElement::integer(euler_phi(d).expect("d >= 1")))
            .collect()
    }
}

pub fn gamma_filtration(level: u64, depth: usize) -> Result<GammaFiltration> {
    if depth == 0 {
        return Err(Error::Invalid("filtration depth must be at least 1".into()));
    }
    let basis = divisors(level)?;
    let r = basis.len();
    let mut filt = GammaFiltration {
        level,
        depth,
        basis,
        lattices: Vec::new(),
        generators_by_degree: Vec::new(),
    };
    let aug = filt.augmentation_basis();
    let bound = filt.generator_bound();

    // γ^j(a) for each augmentation basis element and 1 ≤ j ≤ bound.
    let gammas: Vec<Vec<WittElement>> = aug
        .iter()
        .map(|a| (1..=bound).map(|j| gamma_basis(a, j)).collect())
        .collect::<Result<_>>()?;
    for g in gammas.iter().flatten() {
        debug_assert!(g.in_level(level), "gamma values stay inside W_N");
    }

    // Monomials bucketed by total degree.
    let mut by_degree: Vec<Vec<Vec<BigInt>>> = vec![Vec::new(); bound + 1];
    let items: Vec<(usize, usize)> = (0..aug.len())
        .flat_map(|b| (1..=bound).map(move |j| (b, j)))
        .collect();
    let mut stack: Vec<(usize, usize, WittElement)> = vec![(0, 0, WittElement::one())];
    while let Some((start, deg, value)) = stack.pop() {
        if deg > 0 {
            by_degree[deg].push(value.to_vector(&filt.basis)?);
        }
        for (idx, &(b, j)) in items.iter().enumerate().skip(start) {
            if deg + j <= bound {
                let next = &value * &gammas[b][j - 1];
                stack.push((idx, deg + j, next));
            }
        }
    }
    filt.generators_by_degree = by_degree.iter().map(Vec::len).collect();

    // I_k accumulates generators from the top degree down.
    let mut lattices = vec![HnfLattice::zero(r); bound + 1];
    let mut current = HnfLattice::zero(r);
    for k in (1..=bound).rev() {
        current = current.extended(&by_degree[k])?;
        lattices[k] = current.clone();
    }
    lattices[0] = HnfLattice::full(r);
    lattices.truncate(depth + 1);
    filt.lattices = lattices;
    Ok(filt)
}

/// A containment failure `value ∉ I_{target}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub degree: usize,
    pub m: u64,
    pub generator: WittElement,
    pub value: WittElement,
}

/// Outcome of the graded Frobenius and λ containment checks.
#[derive(Debug, Clone)]
pub struct GradedReport {
    pub level: u64,
    pub depth: usize,
    pub m_max: u64,
    pub frobenius_checks: usize,
    pub frobenius_failures: Vec<Witness>,
    pub lambda_checks: usize,
    /// λ-containment failures; reported as findings, not errors.
    pub lambda_findings: Vec<Witness>,
}

impl GradedReport {
    pub fn passed(&self) -> bool {
        self.frobenius_failures.is_empty()
    }
}

/// For every basis vector `x` of `I_n`, `n ≤ depth`, and `1 ≤ m ≤ m_max`,
/// checks `F_m(x) − mⁿ·x ∈ I_{n+1}` and, for `n ≥ 1`,
/// `(−1)^{m+1} λ^m(x) − m^{n−1}·x ∈ I_{n+1}`.
pub fn graded_frobenius_check(level: u64, depth: usize, m_max: u64) -> Result<GradedReport> {
    let filt = gamma_filtration(level, depth + 1)?;
    let mut report = GradedReport {
        level,
        depth,
        m_max,
        frobenius_checks: 0,
        frobenius_failures: Vec::new(),
        lambda_checks: 0,
        lambda_findings: Vec::new(),
    };
    for n in 0..=depth {
        let target = &filt.lattices[n + 1];
        for row in filt.lattices[n].basis() {
            let x = filt.element(row);
            for m in 1..=m_max {
                let scale = BigInt::from(m).pow(n as u32);
                let y = &frobenius(m, &x) - &x.scale(&scale);
                report.frobenius_checks += 1;
                if !target.contains(&y.to_vector(&filt.basis)?) {
                    report.frobenius_failures.push(Witness {
                        degree: n,
                        m,
                        generator: x.clone(),
                        value: y,
                    });
                }
                if n == 0 {
                    continue;
                }
                let l = lambda_power(&x, m as usize)?;
                let l = if m % 2 == 1 { l } else { -l };
                let scale = BigInt::from(m).pow(n as u32 - 1);
                let y = &l - &x.scale(&scale);
                report.lambda_checks += 1;
                if !target.contains(&y.to_vector(&filt.basis)?) {
                    report.lambda_findings.push(Witness {
                        degree: n,
                        m,
                        generator: x.clone(),
                        value: y,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `trace` applied coefficientwise.
pub fn trace_series(s: &WittSeries) -> Vec<BigInt> {
    s.map(witt::trace)
}

/// `F_0` applied coefficientwise.
pub fn f0_series(s: &WittSeries) -> Vec<BigInt> {
    s.map(witt::f0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, cyclotomic_poly};
    use crate::linalg::hnf;

    fn w(pairs: &[(u64, i64)]) -> WittElement {
        WittElement::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn lambda_basis_examples() {
        assert_eq!(lambda_basis(5, 2).unwrap(), w(&[(5, 1), (1, 2)]));
        assert_eq!(lambda_basis(7, 3).unwrap(), w(&[(7, 3), (1, 2)]));
        assert_eq!(lambda_basis(8, 2).unwrap(), w(&[(4, 1), (2, 2), (1, 2)]));
        for n in 1..12 {
            assert_eq!(lambda_basis(n, 0).unwrap(), WittElement::one());
            assert_eq!(lambda_basis(n, 1).unwrap(), WittElement::phi(n));
        }
    }

    #[test]
    fn lambda_series_of_integers() {
        for k in 0..6i64 {
            let s = lambda_series(&WittElement::integer(k), 8).unwrap();
            for n in 0..=8usize {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let lam = s.coeff(n).scale(&BigInt::from(sign));
                assert_eq!(
                    lam,
                    WittElement::term(1, binomial(k as u64, n as u64))
                        .clone()
                        .scale(&BigInt::one())
                );
            }
            let neg = lambda_series(&WittElement::integer(-k), 8).unwrap();
            for n in 0..=8usize {
                // (−1)^n λ^n(−k) = C(k+n−1, n); the series coefficient is (−1)^n λ^n.
                let expect = if k == 0 && n > 0 {
                    BigInt::zero()
                } else {
                    binomial((k + n as i64 - 1).max(0) as u64, n as u64)
                };
                assert_eq!(
                    neg.coeff(n),
                    &WittElement::term(1, expect).scale(&BigInt::one()),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn lambda_series_additivity_example() {
        let s = lambda_series(&w(&[(2, 1), (3, 1)]), 4).unwrap();
        assert_eq!(s.coeff(2), &w(&[(6, 1), (1, 1)]));
    }

    #[test]
    fn mobius_d_examples() {
        assert_eq!(mobius_d(&ExtRational::integer(0)), ExtRational::integer(0));
        assert_eq!(mobius_d(&ExtRational::integer(2)), ExtRational::integer(2));
        assert_eq!(mobius_d(&ExtRational::integer(1)), ExtRational::Infinity);
        for t in -5..8 {
            let x = ExtRational::integer(t);
            assert_eq!(mobius_d(&mobius_d(&x)), x);
        }
        assert_eq!(
            mobius_d(&mobius_d(&ExtRational::Infinity)),
            ExtRational::Infinity
        );
    }

    #[test]
    fn gamma_examples() {
        let x = w(&[(3, 2), (4, -1), (1, 5)]);
        assert_eq!(gamma_basis(&x, 1).unwrap(), -&x);
        assert_eq!(gamma_basis(&x, 0).unwrap(), WittElement::one());
        let s = gamma_series(&w(&[(2, 1), (1, -1)]), 5).unwrap();
        assert_eq!(s.coeff(1), &w(&[(2, 1), (1, -1)]));
        assert_eq!(s.last_nonzero(), Some(1));
        for k in 0..5u64 {
            for n in 0..5usize {
                let g = gamma_basis(&WittElement::integer(k as i64), n).unwrap();
                let sign = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
                let expect = binomial(k + n as u64 - u64::from(n > 0), n as u64);
                let expect = if n == 0 { BigInt::one() } else { expect };
                assert_eq!(g.scale(&sign), WittElement::term(1, expect), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn gamma_positive_small() {
        for n in 2..=12 {
            let r = gamma_positive_check(n).unwrap();
            assert!(r.passed(), "n={n}: {:?}", r.mismatches);
        }
        let r = gamma_positive_check(2).unwrap();
        assert_eq!(r.computed.last_nonzero(), Some(1));
        assert!(gamma_positive_check(1).is_err());
    }

    #[test]
    fn palindrome_trace_and_f0() {
        for n in 1..=30u64 {
            let s = lambda_polynomial(n).unwrap();
            let phi = euler_phi(n).unwrap() as usize;
            assert_eq!(s.degree(), phi);
            if n > 2 {
                for k in 0..=phi {
                    assert_eq!(s.coeff(k), s.coeff(phi - k), "n={n} k={k}");
                }
            }
            let tr = crate::poly::IntPolynomial::new(trace_series(&s));
            assert_eq!(tr, cyclotomic_poly(n, true).unwrap(), "n={n}");
            let f = f0_series(&s);
            for (k, c) in f.iter().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(*c, binomial(phi as u64, k as u64) * sign);
            }
        }
    }

    #[test]
    fn support_stays_in_level() {
        for n in 1..=40u64 {
            for x in lambda_basis_all(n).unwrap() {
                assert!(x.in_level(n), "n={n}: {x}");
            }
        }
    }

    #[test]
    fn filtration_first_steps() {
        let f = gamma_filtration(6, 2).unwrap();
        assert_eq!(f.lattice(0).rank(), 4);
        assert_eq!(f.lattice(1).rank(), 3);
        let aug: Vec<Vec<BigInt>> = f
            .augmentation_basis()
            .iter()
            .map(|a| a.to_vector(&f.basis).unwrap())
            .collect();
        assert_eq!(f.lattice(1), &hnf(4, &aug).unwrap());
        assert!(f.lattice(2).is_sublattice_of(f.lattice(1)));
        assert!(f.contains(1, &w(&[(3, 1), (1, -2)])).unwrap());
        assert!(!f.contains(1, &WittElement::one()).unwrap());
    }

    #[test]
    fn filtration_i2_level4() {
        let f = gamma_filtration(4, 2).unwrap();
        let a = w(&[(2, 1), (1, -1)]);
        let b = w(&[(4, 1), (1, -2)]);
        // Explicit generators γ¹(a)γ¹(b) and γ²(a) lie in I_2.
        for g in [
            &gamma_basis(&a, 1).unwrap() * &gamma_basis(&b, 1).unwrap(),
            gamma_basis(&a, 2).unwrap(),
            gamma_basis(&b, 2).unwrap(),
            &gamma_basis(&b, 1).unwrap() * &gamma_basis(&b, 1).unwrap(),
        ] {
            assert!(f.contains(2, &g).unwrap(), "{g}");
        }
    }

    #[test]
    fn series_display() {
        let show = |n| lambda_polynomial(n).unwrap().to_string();
        assert_eq!(show(1), "1 - t");
        assert_eq!(show(2), "1 - t*phi(2)");
        assert_eq!(
            show(5),
            "1 - t*phi(5) + t^2*(phi(5) + 2*phi(1)) - t^3*phi(5) + t^4"
        );
        assert_eq!(
            show(9),
            "1 - t*phi(9) + t^2*(phi(9) + 3*phi(3) + 3*phi(1)) - t^3*(3*phi(9) + phi(3)) \
             + t^4*(phi(9) + 3*phi(3) + 3*phi(1)) - t^5*phi(9) + t^6"
        );
        let s = WittSeries::new(
            vec![
                WittElement::integer(-2),
                w(&[(4, 3)]),
                WittElement::integer(2),
            ],
            2,
        );
        assert_eq!(s.to_string(), "-2 + 3*t*phi(4) + 2*t^2");
        assert_eq!(WittSeries::new(vec![], 3).to_string(), "0");
    }

    #[test]
    fn series_inverse() {
        let s = lambda_polynomial(7).unwrap();
        let s = WittSeries::new(s.coeffs().to_vec(), 10);
        let prod = s.mul(&s.inverse().unwrap());
        assert_eq!(prod, WittSeries::one(10));
        let bad = WittSeries::new(vec![WittElement::phi(2)], 3);
        assert!(bad.inverse().is_err());
    }
}
