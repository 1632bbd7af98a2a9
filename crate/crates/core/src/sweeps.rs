//! Bulk verification sweeps comparing closed forms with the brute-force
//! oracles. Each sweep runs under an [`Exec`] mode and reports the same
//! result in either mode.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::arith::{euler_phi, gcd, ramanujan_sum, ramanujan_sum_divisor};
use crate::error::Result;
use crate::lambda::lambda_basis;
use crate::linalg::IntMatrix;
use crate::par::{self, Exec};
use crate::roots::RootMultiset;
use crate::witt::{self, basis_mul, frobenius_basis, WittElement};

/// Outcome of a sweep: how many cases ran and a description of each failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(name: &'static str, outcomes: Vec<Result<Option<String>>>) -> Result<Self> {
        let checked = outcomes.len();
        let mut failures = Vec::new();
        for o in outcomes {
            if let Some(f) = o? {
                failures.push(f);
            }
        }
        Ok(SweepReport {
            name,
            checked,
            failures,
        })
    }
}

fn grid(a: u64, b: u64, lo_b: u64) -> Vec<(u64, u64)> {
    (1..=a)
        .flat_map(|x| (lo_b..=b).map(move |y| (x, y)))
        .collect()
}

/// `basis_mul(n, m)` against the product of the two Galois orbits.
pub fn mul_oracle_sweep(exec: Exec, max: u64) -> Result<SweepReport> {
    let cases = grid(max, max, 1);
    let out = par::map(exec, &cases, |&(n, m)| {
        let closed = basis_mul(n, m)?;
        let oracle = RootMultiset::orbit(n)?
            .product(&RootMultiset::orbit(m)?)
            .to_witt()?;
        Ok((closed != oracle).then(|| format!("phi({n})*phi({m}): {closed} vs oracle {oracle}")))
    });
    SweepReport::collect("mul-oracle", out)
}

/// `F_m(φ_n)` against the `m`-th power map of the orbit.
pub fn frobenius_oracle_sweep(exec: Exec, n_max: u64, m_max: u64) -> Result<SweepReport> {
    let cases = grid(n_max, m_max, 1);
    let out = par::map(exec, &cases, |&(n, m)| {
        let closed = frobenius_basis(m, n)?;
        let oracle = RootMultiset::orbit(n)?.power_map(m).to_witt()?;
        Ok((closed != oracle).then(|| format!("F_{m}(phi({n})): {closed} vs oracle {oracle}")))
    });
    SweepReport::collect("frobenius-oracle", out)
}

/// `λ^k(φ_n)` from Newton's identities against the elementary symmetric
/// functions of the orbit, for `0 ≤ k ≤ φ(n)`.
pub fn lambda_oracle_sweep(exec: Exec, n_max: u64) -> Result<SweepReport> {
    let mut cases = Vec::new();
    for n in 1..=n_max {
        for k in 0..=euler_phi(n)? {
            cases.push((n, k));
        }
    }
    let out =
        par::map(exec, &cases, |&(n, k)| {
            let closed = lambda_basis(n, k as usize)?;
            let oracle = RootMultiset::orbit(n)?.elementary_symmetric(k as usize)?;
            Ok((closed != oracle)
                .then(|| format!("lambda^{k}(phi({n})): {closed} vs oracle {oracle}")))
        });
    SweepReport::collect("lambda-oracle", out)
}

/// `Σ_{(k,n)=1} exp(2πi·km/n)` in floating point, rounded; `None` if the sum
/// is not within `1e-6` of an integer.
pub fn ramanujan_numeric(n: u64, m: u64) -> Option<i64> {
    let s: Complex64 = (1..=n)
        .filter(|&k| gcd(k, n) == 1)
        .map(|k| Complex64::from_polar(1.0, TAU * ((k * m) % n) as f64 / n as f64))
        .sum();
    let r = s.re.round();
    (s.im.abs() < 1e-6 && (s.re - r).abs() < 1e-6).then_some(r as i64)
}

/// `t_m(φ_n)` against the closed form, the divisor sum, the root oracle and a
/// numeric sum over the primitive roots, for `1 ≤ n ≤ n_max`, `0 ≤ m ≤ m_max`.
pub fn trace_sweep(exec: Exec, n_max: u64, m_max: u64) -> Result<SweepReport> {
    let cases = grid(n_max, m_max, 0);
    let out = par::map(exec, &cases, |&(n, m)| {
        let x = WittElement::phi(n);
        let tm = if m == 0 {
            witt::f0(&x)
        } else {
            witt::t_m(m, &x)
        };
        let closed = ramanujan_sum(n, m)?;
        let divisor = ramanujan_sum_divisor(n, m)?;
        let oracle = if m == 0 {
            BigInt::from(euler_phi(n)?)
        } else {
            witt::trace(&RootMultiset::orbit(n)?.power_map(m).to_witt()?)
        };
        let numeric = ramanujan_numeric(n, m);
        let agree = tm == closed
            && closed == divisor
            && closed == oracle
            && numeric.is_some_and(|v| closed.to_i64() == Some(v));
        Ok((!agree).then(|| {
            format!("C_{n}^{m}: t_m {tm}, closed {closed}, divisor {divisor}, oracle {oracle}, numeric {numeric:?}")
        }))
    });
    SweepReport::collect("trace-ramanujan", out)
}

/// Multisets of `d`, ascending, with `Σ φ(d) ≤ max_degree`.
pub fn cyclotomic_multisets(max_degree: u64) -> Result<Vec<Vec<u64>>> {
    let mut ds = Vec::new();
    // φ(d) ≥ √(d/2), so every d with φ(d) ≤ D is at most 2D².
    for d in 1..=2 * max_degree * max_degree {
        if euler_phi(d)? <= max_degree {
            ds.push((d, euler_phi(d)?));
        }
    }
    let mut out = Vec::new();
    fn go(
        ds: &[(u64, u64)],
        start: usize,
        budget: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        out.push(cur.clone());
        for i in start..ds.len() {
            let (d, p) = ds[i];
            if p <= budget {
                cur.push(d);
                go(ds, i, budget - p, cur, out);
                cur.pop();
            }
        }
    }
    go(&ds, 0, max_degree, &mut Vec::new(), &mut out);
    out.retain(|m| !m.is_empty());
    Ok(out)
}

fn blocks_degree(ds: &[u64]) -> u64 {
    ds.iter().map(|&d| euler_phi(d).expect("d >= 1")).sum()
}

fn expected_class(ds: &[u64]) -> WittElement {
    ds.iter().map(|&d| WittElement::phi(d)).sum()
}

/// Matrix-to-Witt bridge over block-diagonal companion matrices of
/// cyclotomic polynomials with total degree at most `max_degree`:
///
/// * `witt_class(A) = Σ φ_d` for the blocks of `A`;
/// * `witt_class(A ⊕ B) = witt_class(A) + witt_class(B)` and
///   `witt_class(A ⊗ B) = witt_class(A)·witt_class(B)` for every pair with
///   `deg A + deg B ≤ max_degree`;
/// * `witt_class(A^m) = F_m(witt_class(A))` for `1 ≤ m ≤ m_max`.
pub fn bridge_sweep(exec: Exec, max_degree: u64, m_max: u32) -> Result<SweepReport> {
    let sets = cyclotomic_multisets(max_degree)?;
    let mats: Vec<(IntMatrix, WittElement, u64)> = par::map(exec, &sets, |ds| {
        Ok::<_, crate::Error>((
            IntMatrix::cyclotomic_blocks(ds)?,
            expected_class(ds),
            blocks_degree(ds),
        ))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut cases: Vec<(usize, Option<usize>)> = Vec::new();
    for i in 0..mats.len() {
        cases.push((i, None));
        for j in i..mats.len() {
            if mats[i].2 + mats[j].2 <= max_degree {
                cases.push((i, Some(j)));
            }
        }
    }
    let out = par::map(exec, &cases, |&(i, j)| {
        let (a, wa, _) = &mats[i];
        let Some(j) = j else {
            let got = a.witt_class()?;
            if got != *wa {
                return Ok(Some(format!(
                    "class of blocks {:?}: {got} vs {wa}",
                    sets[i]
                )));
            }
            for m in 1..=m_max {
                let p = a.pow(m)?.witt_class()?;
                let f = witt::frobenius(m as u64, wa);
                if p != f {
                    return Ok(Some(format!("blocks {:?}, power {m}: {p} vs {f}", sets[i])));
                }
            }
            return Ok(None);
        };
        let (b, wb, _) = &mats[j];
        let sum = a.direct_sum(b).witt_class()?;
        if sum != wa + wb {
            return Ok(Some(format!("{:?} (+) {:?}: {sum}", sets[i], sets[j])));
        }
        let prod = a.kronecker(b).witt_class()?;
        if prod != wa * wb {
            return Ok(Some(format!("{:?} (x) {:?}: {prod}", sets[i], sets[j])));
        }
        Ok(None)
    });
    SweepReport::collect("matrix-witt-bridge", out)
}
