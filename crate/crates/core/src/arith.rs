//! Number-theoretic kernel: factorization, divisors, Möbius and Euler
//! functions, Ramanujan sums and cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` (0 when absent).
    pub fn exponent(&self, p: u64) -> u32 {
        self.0.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }
}

/// Trial-division factorization.
pub fn factor(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut p: u64 = 3;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(Factorization(out))
}

fn factor_pos(n: u64) -> Factorization {
    factor(n).expect("caller guarantees n >= 1")
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor_pos(n).0 == [(n, 1)]
}

pub fn mobius(n: u64) -> Result<i64> {
    let f = factor(n)?;
    Ok(if !f.is_squarefree() {
        0
    } else if f.0.len() % 2 == 0 {
        1
    } else {
        -1
    })
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factor(n)?;
    Ok(f.0.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product())
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factor(n)?;
    let mut ds = vec![1u64];
    for &(p, e) in f.pairs() {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    Ok(ds)
}

/// Sum of divisors `σ₁(n)`.
pub fn sigma1(n: u64) -> Result<u64> {
    Ok(divisors(n)?.into_iter().sum())
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Ramanujan sum `C_n^m = μ(n/(n,m)) · φ(n) / φ(n/(n,m))`.
///
/// `m = 0` gives `φ(n)` (gcd(n, 0) = n).
pub fn ramanujan_sum(n: u64, m: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let g = gcd(n, m);
    let q = n / g;
    let mu = mobius(q)?;
    if mu == 0 {
        return Ok(BigInt::zero());
    }
    let ratio = euler_phi(n)? / euler_phi(q)?;
    Ok(BigInt::from(mu) * BigInt::from(ratio))
}

/// `Σ_{d | gcd(n,m)} μ(n/d)·d`, the divisor-sum form of `C_n^m`.
pub fn ramanujan_sum_divisor(n: u64, m: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut acc = BigInt::zero();
    for d in divisors(gcd(n, m))? {
        acc += BigInt::from(mobius(n / d)?) * BigInt::from(d);
    }
    Ok(acc)
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, IntPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial `Φ_n`, by exact division of `tⁿ − 1`.
fn cyclotomic(n: u64) -> IntPolynomial {
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPolynomial::x_pow_minus_one(n as usize);
    for d in divisors(n).expect("n >= 1") {
        if d < n {
            p = p
                .div_exact(&cyclotomic(d))
                .expect("cyclotomic factors divide t^n - 1");
        }
    }
    cyclotomic_cache().lock().unwrap().insert(n, p.clone());
    p
}

/// `Φ_n(t)` or, when `reversed`, `∏_{ξ primitive}(1 − ξt)`, normalised to
/// constant term 1.
pub fn cyclotomic_poly(n: u64, reversed: bool) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let p = cyclotomic(n);
    if !reversed {
        return Ok(p);
    }
    let r = p.reversed();
    // Only Φ_1 = t − 1 reverses to a constant term of −1.
    if r.coeff(0) == -BigInt::one() {
        Ok(-&r)
    } else {
        Ok(r)
    }
}

/// Binomial coefficient `C(n, k)` as a big integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
