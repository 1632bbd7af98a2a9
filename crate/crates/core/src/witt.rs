//! The cyclotomic Witt ring `W = ⊕_{n≥1} Z·φ_n`.
//!
//! `φ_n` is the class of the Galois orbit of primitive `n`-th roots of unity.
//! Multiplication is computed from closed per-prime formulas; the
//! [`crate::roots`] module provides the brute-force oracle for all of them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, divisors, euler_phi, factor, gcd, mobius, ramanujan_sum};
use crate::error::{Error, Result};

/// A finitely supported integer combination `Σ c_n·φ_n`.
///
/// Zero coefficients are never stored, so structural equality is ring
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WittElement {
    terms: BTreeMap<u64, BigInt>,
}

impl WittElement {
    pub fn zero() -> Self {
        WittElement::default()
    }

    /// `φ_1`, the multiplicative unit.
    pub fn one() -> Self {
        Self::phi(1)
    }

    /// The basis element `φ_n`. Panics on `n = 0`.
    pub fn phi(n: u64) -> Self {
        Self::term(n, BigInt::one())
    }

    /// `c·φ_n`. Panics on `n = 0`.
    pub fn term(n: u64, c: BigInt) -> Self {
        assert!(n >= 1, "phi index must be positive");
        let mut e = WittElement::zero();
        e.add_term(n, c);
        e
    }

    /// `c·φ_1`.
    pub fn integer(c: impl Into<BigInt>) -> Self {
        Self::term(1, c.into())
    }

    /// Builds an element from `(n, c)` pairs; repeated indices accumulate.
    pub fn from_pairs<I, C>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigInt>,
    {
        let mut e = WittElement::zero();
        for (n, c) in pairs {
            if n == 0 {
                return Err(Error::Zero);
            }
            e.add_term(n, c.into());
        }
        Ok(e)
    }

    pub fn add_term(&mut self, n: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `φ_n`.
    pub fn coeff(&self, n: u64) -> BigInt {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    /// `(n, c)` pairs in ascending `n`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u64, &BigInt)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the element lies in `W_N`, i.e. every index divides `N`.
    pub fn in_level(&self, level: u64) -> bool {
        self.support().all(|n| level.is_multiple_of(n))
    }

    /// Lcm of the support (1 for zero).
    pub fn level(&self) -> u64 {
        self.support().fold(1, arith::lcm)
    }

    /// Coordinates against the given basis indices; errors if the support is
    /// not covered.
    pub fn to_vector(&self, basis: &[u64]) -> Result<Vec<BigInt>> {
        if let Some(n) = self.support().find(|n| !basis.contains(n)) {
            return Err(Error::Invalid(format!("phi({n}) outside the basis")));
        }
        Ok(basis.iter().map(|&n| self.coeff(n)).collect())
    }

    pub fn from_vector(basis: &[u64], v: &[BigInt]) -> Self {
        let mut e = WittElement::zero();
        for (&n, c) in basis.iter().zip(v) {
            e.add_term(n, c.clone());
        }
        e
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return WittElement::zero();
        }
        WittElement {
            terms: self.terms.iter().map(|(&n, x)| (n, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(WittElement::one(), |acc, _| &acc * self)
    }
}

/// Product of two basis elements `φ_n · φ_m`.
///
/// Computed prime by prime: coprime parts multiply as `φ_a·φ_b = φ_{ab}`,
/// while two powers of the same prime `p` follow
///
/// * `φ_{p^a}·φ_{p^b} = (p−1)p^{b−1}·φ_{p^a}` for `a > b ≥ 1`,
/// * `φ_{p^a}·φ_{p^a} = (p−1)p^{a−1}·(φ_{p^a}+…+φ_p+φ_1) − p^{a−1}·φ_{p^a}`.
pub fn basis_mul(n: u64, m: u64) -> Result<WittElement> {
    let fn_ = factor(n)?;
    let fm = factor(m)?;
    let mut primes: Vec<u64> = fn_.primes().chain(fm.primes()).collect();
    primes.sort_unstable();
    primes.dedup();

    // Running tensor product over primes: (index, coefficient) pairs.
    let mut acc: Vec<(u64, BigInt)> = vec![(1, BigInt::one())];
    for p in primes {
        let local = prime_power_mul(p, fn_.exponent(p), fm.exponent(p));
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for (i, ci) in &acc {
            for (j, cj) in &local {
                next.push((i * j, ci * cj));
            }
        }
        acc = next;
    }
    WittElement::from_pairs(acc)
}

/// `φ_{p^a} · φ_{p^b}` inside `W_{p^∞}` as `(p^k, coefficient)` pairs.
fn prime_power_mul(p: u64, a: u32, b: u32) -> Vec<(u64, BigInt)> {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == 0 {
        return vec![(p.pow(hi), BigInt::one())];
    }
    let unit = BigInt::from(p - 1) * BigInt::from(p).pow(lo - 1);
    if hi > lo {
        return vec![(p.pow(hi), unit)];
    }
    let mut out: Vec<(u64, BigInt)> = (0..=hi).map(|k| (p.pow(k), unit.clone())).collect();
    out.push((p.pow(hi), -BigInt::from(p).pow(hi - 1)));
    out
}

pub fn mul(a: &WittElement, b: &WittElement) -> WittElement {
    let mut out = WittElement::zero();
    for (n, cn) in a.iter() {
        for (m, cm) in b.iter() {
            let c = cn * cm;
            for (k, ck) in basis_mul(n, m).expect("indices are positive").iter() {
                out.add_term(k, &c * ck);
            }
        }
    }
    out
}

/// `F_m φ_n` for `m ≥ 1`:
/// `(m,n) · ∏_{p | (m,n), p ∤ n/(m,n)} (1 − 1/p) · φ_{n/(m,n)}`.
pub fn frobenius_basis(m: u64, n: u64) -> Result<WittElement> {
    if m == 0 || n == 0 {
        return Err(Error::Zero);
    }
    let g = gcd(m, n);
    let rest = n / g;
    let mut coeff = g;
    for p in factor(g)?.primes() {
        if !rest.is_multiple_of(p) {
            coeff = coeff / p * (p - 1);
        }
    }
    Ok(WittElement::term(rest, BigInt::from(coeff)))
}

/// The Frobenius `F_m`. `m = 0` is the limiting `F_0`, embedded as
/// `F_0(a)·φ_1`.
pub fn frobenius(m: u64, a: &WittElement) -> WittElement {
    if m == 0 {
        return WittElement::integer(f0(a));
    }
    let mut out = WittElement::zero();
    for (n, c) in a.iter() {
        for (k, ck) in frobenius_basis(m, n).expect("m, n positive").iter() {
            out.add_term(k, c * ck);
        }
    }
    out
}

/// Verschiebung `V_m φ_n = φ_{mn}`. `m` must be positive.
pub fn verschiebung(m: u64, a: &WittElement) -> Result<WittElement> {
    if m == 0 {
        return Err(Error::Zero);
    }
    let mut out = WittElement::zero();
    for (n, c) in a.iter() {
        out.add_term(m * n, c.clone());
    }
    Ok(out)
}

/// `tr(Σ c_n φ_n) = Σ c_n μ(n)`.
pub fn trace(a: &WittElement) -> BigInt {
    a.iter()
        .map(|(n, c)| c * BigInt::from(mobius(n).expect("n >= 1")))
        .sum()
}

/// `t_m = tr ∘ F_m`, with `t_0 = F_0`. On basis elements this is the
/// Ramanujan sum `C_n^m`.
pub fn t_m(m: u64, a: &WittElement) -> BigInt {
    if m == 0 {
        f0(a)
    } else {
        trace(&frobenius(m, a))
    }
}

/// `F_0(Σ c_n φ_n) = Σ c_n φ(n)`.
pub fn f0(a: &WittElement) -> BigInt {
    a.iter()
        .map(|(n, c)| c * BigInt::from(euler_phi(n).expect("n >= 1")))
        .sum()
}

/// Coefficient of `φ_1`.
pub fn integral(a: &WittElement) -> BigInt {
    a.coeff(1)
}

/// `⟨a, b⟩ = ∫ a·b̄`. Conjugation is the identity on `W`: complex
/// conjugation permutes each orbit of primitive roots.
pub fn inner(a: &WittElement, b: &WittElement) -> BigInt {
    integral(&mul(a, b))
}

/// Outcome of the finite Parseval identity at level `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsevalReport {
    pub level: u64,
    pub pairs_checked: usize,
    /// `(n, m, expected, computed)` for every failing pair.
    pub failures: Vec<(u64, u64, BigRational, BigRational)>,
}

impl ParsevalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `φ(n)·[n=m] = (1/N)·Σ_{z=1}^{N} C_n^z C_m^z` for all `n, m | N`.
pub fn parseval_check(level: u64) -> Result<ParsevalReport> {
    let ds = divisors(level)?;
    let mut report = ParsevalReport {
        level,
        pairs_checked: 0,
        failures: Vec::new(),
    };
    // C_d^z for z = 1..=N, per divisor d.
    let table: Vec<Vec<BigInt>> = ds
        .iter()
        .map(|&d| (1..=level).map(|z| ramanujan_sum(d, z)).collect())
        .collect::<Result<_>>()?;
    for (i, &n) in ds.iter().enumerate() {
        for (j, &m) in ds.iter().enumerate() {
            let sum: BigInt = table[i].iter().zip(&table[j]).map(|(a, b)| a * b).sum();
            let computed = BigRational::new(sum, BigInt::from(level));
            let expected = if n == m {
                BigRational::from_integer(BigInt::from(euler_phi(n)?))
            } else {
                BigRational::zero()
            };
            report.pairs_checked += 1;
            if computed != expected {
                report.failures.push((n, m, expected, computed));
            }
        }
    }
    Ok(report)
}

/// Outcome of a truncated Dirichlet-series check.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaReport {
    pub m: u64,
    pub t: u32,
    pub cutoff: u64,
    /// `Σ_{n ≤ N} C_n^m / n^t`.
    pub partial: f64,
    /// `ζ(t)^{-1} · Σ_{d | m} d^{1−t}`.
    pub expected: f64,
    pub difference: f64,
    /// Bound on the neglected tail `σ₁(m) · Σ_{n > N} n^{-t}`.
    pub tail_bound: f64,
    pub tolerance: f64,
}

impl ZetaReport {
    pub fn passed(&self) -> bool {
        self.difference.abs() <= self.tolerance
    }
}

/// Riemann zeta at an integer `t ≥ 2`: direct sum to `M` plus the
/// Euler–Maclaurin correction; the residual error is below `t·M^{-t-1}`.
pub fn riemann_zeta(t: u32) -> f64 {
    assert!(t >= 2);
    const M: u64 = 10_000;
    let tf = f64::from(t);
    let head: f64 = (1..M).rev().map(|n| (n as f64).powf(-tf)).sum();
    let mf = M as f64;
    head + mf.powf(1.0 - tf) / (tf - 1.0) + 0.5 * mf.powf(-tf) + tf * mf.powf(-tf - 1.0) / 12.0
}

/// Compares `Σ_{n≤N} C_n^m / n^t` against `ζ(t)^{-1} Σ_{d|m} d^{1−t}`.
pub fn zeta_partial_check(m: u64, t: u32, cutoff: u64, tolerance: f64) -> Result<ZetaReport> {
    if m == 0 || cutoff == 0 {
        return Err(Error::Zero);
    }
    if t < 2 {
        return Err(Error::Invalid(format!(
            "exponent t = {t} must be at least 2"
        )));
    }
    let tf = f64::from(t);
    let (mu, phi) = mobius_phi_table(cutoff);
    let mut partial = 0.0;
    // Sum small terms first.
    for n in (1..=cutoff).rev() {
        let g = gcd(n, m);
        let q = (n / g) as usize;
        let mu_q = mu[q];
        if mu_q == 0 {
            continue;
        }
        let c = mu_q as f64 * (phi[n as usize] / phi[q]) as f64;
        partial += c / (n as f64).powf(tf);
    }
    let divisor_sum: f64 = divisors(m)?
        .into_iter()
        .map(|d| (d as f64).powf(1.0 - tf))
        .sum();
    let expected = divisor_sum / riemann_zeta(t);
    let tail_bound = arith::sigma1(m)? as f64 * (cutoff as f64).powf(1.0 - tf) / (tf - 1.0);
    Ok(ZetaReport {
        m,
        t,
        cutoff,
        partial,
        expected,
        difference: partial - expected,
        tail_bound,
        tolerance,
    })
}

/// Sieved tables of `μ(n)` and `φ(n)` for `0 ≤ n ≤ limit` (index 0 unused).
fn mobius_phi_table(limit: u64) -> (Vec<i8>, Vec<u64>) {
    let size = limit as usize + 1;
    let mut mu = vec![1i8; size];
    let mut phi: Vec<u64> = (0..size as u64).collect();
    let mut composite = vec![false; size];
    for p in 2..size {
        if composite[p] {
            continue;
        }
        for k in (p..size).step_by(p) {
            if k > p {
                composite[k] = true;
            }
            mu[k] = -mu[k];
            phi[k] = phi[k] / p as u64 * (p as u64 - 1);
        }
        let sq = p.saturating_mul(p);
        for k in (sq..size).step_by(sq.max(1)) {
            mu[k] = 0;
        }
    }
    (mu, phi)
}

/// The ring homomorphisms `W_{p^k} → Z`, found by solving the
/// multiplication constraints, alongside the values predicted by
/// `{tr ∘ F_{p^i} : 0 ≤ i < k} ∪ {F_0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomClassification {
    pub prime: u64,
    pub depth: u32,
    /// Values `ψ(φ_1), ψ(φ_p), …, ψ(φ_{p^k})` of each solution, sorted.
    pub solutions: Vec<Vec<BigInt>>,
    /// `(label, values)` for each predicted homomorphism, sorted by values.
    pub predicted: Vec<(String, Vec<BigInt>)>,
    /// Branches discarded because a quadratic had no integer root.
    pub non_integral_branches: usize,
}

impl HomClassification {
    pub fn matches(&self) -> bool {
        let mut a: Vec<_> = self.predicted.iter().map(|(_, v)| v.clone()).collect();
        a.sort();
        a == self.solutions
    }
}

/// Value of `tr ∘ F_{p^i}` on `φ_{p^m}` as tabulated in closed form.
pub fn trace_frobenius_table(p: u64, i: u32, m: u32) -> BigInt {
    let pb = BigInt::from(p);
    if m == 0 {
        BigInt::one()
    } else if m <= i {
        pb.pow(m - 1) * BigInt::from(p - 1)
    } else if m == i + 1 {
        -pb.pow(i)
    } else {
        BigInt::zero()
    }
}

pub fn hom_classify(p: u64, depth: u32) -> Result<HomClassification> {
    if !arith::is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    let idx = |j: u32| p.pow(j);
    let eval = |vals: &[BigInt], e: &WittElement| -> BigInt {
        e.iter()
            .map(|(n, c)| {
                let j = (0..vals.len() as u32)
                    .find(|&j| idx(j) == n)
                    .expect("in W_{p^k}");
                c * &vals[j as usize]
            })
            .sum()
    };

    // Branch on the quadratic φ_{p^j}^2 = c·φ_{p^j} + (lower terms).
    let mut partial: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    let mut non_integral = 0usize;
    for j in 1..=depth {
        let sq = basis_mul(idx(j), idx(j))?;
        let c = sq.coeff(idx(j));
        let mut lower = sq.clone();
        lower.add_term(idx(j), -c.clone());
        let mut next = Vec::new();
        for vals in &partial {
            let d = eval(vals, &lower);
            // x^2 - c x - d = 0
            let disc: BigInt = &c * &c + BigInt::from(4) * &d;
            if disc.is_negative() {
                non_integral += 1;
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc {
                non_integral += 1;
                continue;
            }
            let mut roots = vec![(&c + &s) / 2, (&c - &s) / 2];
            roots.dedup();
            for r in roots {
                if &r * &r == &c * &r + &d {
                    let mut v = vals.clone();
                    v.push(r);
                    next.push(v);
                }
            }
        }
        partial = next;
    }

    // Keep only assignments satisfying every product constraint.
    let mut solutions: Vec<Vec<BigInt>> = partial
        .into_iter()
        .filter(|vals| {
            (0..=depth).all(|a| {
                (0..=depth).all(|b| {
                    let prod = basis_mul(idx(a), idx(b)).expect("positive");
                    &vals[a as usize] * &vals[b as usize] == eval(vals, &prod)
                })
            })
        })
        .collect();
    solutions.sort();
    solutions.dedup();

    let basis: Vec<WittElement> = (0..=depth).map(|j| WittElement::phi(idx(j))).collect();
    let mut predicted: Vec<(String, Vec<BigInt>)> = (0..depth)
        .map(|i| {
            let vals = basis.iter().map(|b| t_m(idx(i), b)).collect();
            (format!("tr∘F_{}", idx(i)), vals)
        })
        .collect();
    predicted.push(("F_0".into(), basis.iter().map(f0).collect()));
    predicted.sort_by(|a, b| a.1.cmp(&b.1));

    Ok(HomClassification {
        prime: p,
        depth,
        solutions,
        predicted,
        non_integral_branches: non_integral,
    })
}

impl Add for &WittElement {
    type Output = WittElement;
    fn add(self, rhs: &WittElement) -> WittElement {
        let mut out = self.clone();
        for (n, c) in rhs.iter() {
            out.add_term(n, c.clone());
        }
        out
    }
}

impl Sub for &WittElement {
    type Output = WittElement;
    fn sub(self, rhs: &WittElement) -> WittElement {
        let mut out = self.clone();
        for (n, c) in rhs.iter() {
            out.add_term(n, -c);
        }
        out
    }
}

impl Neg for &WittElement {
    type Output = WittElement;
    fn neg(self) -> WittElement {
        WittElement {
            terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect(),
        }
    }
}

impl Mul for &WittElement {
    type Output = WittElement;
    fn mul(self, rhs: &WittElement) -> WittElement {
        mul(self, rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for WittElement {
            type Output = WittElement;
            fn $m(self, rhs: WittElement) -> WittElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for WittElement {
    type Output = WittElement;
    fn neg(self) -> WittElement {
        -&self
    }
}

impl std::iter::Sum for WittElement {
    fn sum<I: Iterator<Item = WittElement>>(iter: I) -> Self {
        iter.fold(WittElement::zero(), |a, b| &a + &b)
    }
}

/// Canonical text form: ascending `n`, e.g. `-2*phi(1) + phi(6)`; `0` for
/// the zero element.
impl fmt::Display for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.iter())
    }
}

/// Writes `(n, c)` terms in the given order with explicit signs.
pub(crate) fn write_terms<'a>(
    f: &mut impl fmt::Write,
    terms: impl Iterator<Item = (u64, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (n, c) in terms {
        let mag = c.abs();
        match (first, c.is_negative()) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if mag.is_one() {
            write!(f, "phi({n})")?;
        } else {
            write!(f, "{mag}*phi({n})")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Debug for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{self}]")
    }
}
