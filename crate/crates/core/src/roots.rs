//! Brute-force multisets of roots of unity.
//!
//! A root is stored as an exponent `e` at a level `L`, standing for
//! `exp(2πi·e/L)`. Nothing here uses the closed formulas of
//! [`crate::witt`]; products and powers are tallied root by root, which is
//! what makes this module usable as an oracle for them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};
use crate::witt::WittElement;

/// A signed integer combination of roots of unity, i.e. an element of the
/// group ring `Z[μ_L]`.
///
/// Always stored at the smallest level containing every root present, so
/// derived equality is equality after lifting to a common level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootCombination {
    level: u64,
    coeffs: BTreeMap<u64, BigInt>,
}

impl RootCombination {
    pub fn zero() -> Self {
        RootCombination {
            level: 1,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c·[exp(2πi·e/L)]`.
    pub fn root(level: u64, exponent: u64, c: BigInt) -> Self {
        assert!(level >= 1);
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exponent % level, c);
        }
        RootCombination { level, coeffs }.reduced()
    }

    /// The unit `[1]`.
    pub fn one() -> Self {
        Self::root(1, 0, BigInt::one())
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeff(&self, exponent: u64) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn lifted(&self, level: u64) -> BTreeMap<u64, BigInt> {
        debug_assert_eq!(level % self.level, 0);
        let f = level / self.level;
        self.coeffs
            .iter()
            .map(|(&e, c)| (e * f, c.clone()))
            .collect()
    }

    /// Rewrites at the lcm of the orders of the roots present.
    fn reduced(mut self) -> Self {
        self.coeffs.retain(|_, c| !c.is_zero());
        let l = self.level;
        let target = self.coeffs.keys().map(|&e| l / gcd(e, l)).fold(1, lcm);
        if target != l {
            let f = l / target;
            self.coeffs = self.coeffs.into_iter().map(|(e, c)| (e / f, c)).collect();
            self.level = target;
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let level = lcm(self.level, other.level);
        let mut coeffs = self.lifted(level);
        for (e, c) in other.lifted(level) {
            *coeffs.entry(e).or_default() += c;
        }
        RootCombination { level, coeffs }.reduced()
    }

    pub fn neg(&self) -> Self {
        RootCombination {
            level: self.level,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    /// Convolution: `[α]·[β] = [αβ]` extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let level = lcm(self.level, other.level);
        let a = self.lifted(level);
        let b = other.lifted(level);
        let mut coeffs: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                *coeffs.entry((ea + eb) % level).or_default() += ca * cb;
            }
        }
        RootCombination { level, coeffs }.reduced()
    }

    /// Replaces every root `ξ` by `ξ^m`.
    pub fn power_map(&self, m: u64) -> Self {
        let level = self.level;
        let mut coeffs: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            let img = ((u128::from(e) * u128::from(m)) % u128::from(level)) as u64;
            *coeffs.entry(img).or_default() += c;
        }
        RootCombination { level, coeffs }.reduced()
    }

    /// Decomposes a Galois-stable combination into `Σ c_d φ_d`.
    pub fn to_witt(&self) -> Result<WittElement> {
        let l = self.level;
        let mut out = WittElement::zero();
        for d in divisors(l)? {
            let step = l / d;
            let mut common: Option<BigInt> = None;
            for u in (0..d).filter(|&u| gcd(u, d) == 1) {
                let e = u * step;
                let c = self.coeff(e);
                match &common {
                    None => common = Some(c),
                    Some(expected) if *expected != c => {
                        return Err(Error::NotGaloisStable {
                            level: l,
                            exponent: e,
                            found: c.to_string(),
                            expected: expected.to_string(),
                        })
                    }
                    Some(_) => {}
                }
            }
            if let Some(c) = common {
                out.add_term(d, c);
            }
        }
        Ok(out)
    }
}

/// Elementary symmetric polynomials `e_0, …, e_k` of a list of group-ring
/// elements, by the dynamic programme `∏ (1 + y·u_i)`.
pub fn elementary_symmetric_all(factors: &[RootCombination], k: usize) -> Vec<RootCombination> {
    let mut e = vec![RootCombination::zero(); k + 1];
    e[0] = RootCombination::one();
    for (i, u) in factors.iter().enumerate() {
        for j in (1..=k.min(i + 1)).rev() {
            let term = e[j - 1].mul(u);
            e[j] = e[j].add(&term);
        }
    }
    e
}

/// A multiset of roots of unity with nonnegative multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootMultiset(RootCombination);

impl RootMultiset {
    pub fn empty() -> Self {
        RootMultiset(RootCombination::zero())
    }

    /// Builds a multiset at level `level` from `(exponent, count)` pairs.
    pub fn from_counts(level: u64, counts: &[(u64, u64)]) -> Result<Self> {
        if level == 0 {
            return Err(Error::Zero);
        }
        let mut acc = RootCombination {
            level,
            coeffs: BTreeMap::new(),
        };
        for &(e, c) in counts {
            if e >= level {
                return Err(Error::Invalid(format!(
                    "exponent {e} not below level {level}"
                )));
            }
            *acc.coeffs.entry(e).or_default() += BigInt::from(c);
        }
        Ok(RootMultiset(acc.reduced()))
    }

    /// The primitive `n`-th roots of unity, each once.
    pub fn orbit(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let counts: Vec<(u64, u64)> = (0..n).filter(|&e| gcd(e, n) == 1).map(|e| (e, 1)).collect();
        Self::from_counts(n, &counts)
    }

    pub fn level(&self) -> u64 {
        self.0.level
    }

    /// Multiplicity of `exp(2πi·e/L)` at the stored level `L`.
    pub fn multiplicity(&self, exponent: u64) -> BigInt {
        self.0.coeff(exponent)
    }

    /// Total number of roots, counted with multiplicity.
    pub fn count(&self) -> BigInt {
        self.0.coeffs.values().sum()
    }

    pub fn as_combination(&self) -> &RootCombination {
        &self.0
    }

    /// All pairwise products `{α_i β_j}`.
    pub fn product(&self, other: &Self) -> Self {
        RootMultiset(self.0.mul(&other.0))
    }

    pub fn power_map(&self, m: u64) -> Self {
        RootMultiset(self.0.power_map(m))
    }

    /// Sum of two multisets (disjoint union).
    pub fn union(&self, other: &Self) -> Self {
        RootMultiset(self.0.add(&other.0))
    }

    pub fn to_witt(&self) -> Result<WittElement> {
        self.0.to_witt()
    }

    /// The individual roots with repetition, as single-root combinations.
    fn roots(&self) -> Vec<RootCombination> {
        let mut out = Vec::new();
        for (&e, c) in &self.0.coeffs {
            let times: u64 = c.try_into().expect("multiplicities fit u64");
            for _ in 0..times {
                out.push(RootCombination::root(self.0.level, e, BigInt::one()));
            }
        }
        out
    }

    /// `k`-th elementary symmetric function of the roots, as the multiset of
    /// products over all `k`-element sub-multisets.
    pub fn elementary_symmetric_multiset(&self, k: usize) -> Self {
        let e = elementary_symmetric_all(&self.roots(), k);
        RootMultiset(e[k].clone())
    }

    /// `k`-th elementary symmetric function decomposed into `W`.
    pub fn elementary_symmetric(&self, k: usize) -> Result<WittElement> {
        let total = self.count();
        if BigInt::from(k) > total {
            return Ok(WittElement::zero());
        }
        self.elementary_symmetric_multiset(k).to_witt()
    }
}

/// Elements `1 − [ξ]` for the primitive `n`-th roots `ξ`.
pub fn cyclotomic_units(n: u64) -> Result<Vec<RootCombination>> {
    if n == 0 {
        return Err(Error::Zero);
    }
    Ok((0..n)
        .filter(|&e| gcd(e, n) == 1)
        .map(|e| RootCombination::one().add(&RootCombination::root(n, e, -BigInt::one())))
        .collect())
}

/// Whether every coefficient is nonnegative.
pub fn is_effective(c: &RootCombination) -> bool {
    c.coeffs.values().all(|x| !x.is_negative())
}
