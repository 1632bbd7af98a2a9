//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail; the run exits
//! non-zero if any other criterion fails, or if a known failure starts
//! passing.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use cyclowitt::arith::{euler_phi, mobius};
use cyclowitt::lambda::graded_frobenius_check;
use cyclowitt::par::Exec;
use cyclowitt::rig::{global_sections, signed_subpermutations};
use cyclowitt::spectrum::{self, FiniteCRig};
use cyclowitt::sweeps::{
    bridge_sweep, frobenius_oracle_sweep, lambda_oracle_sweep, mul_oracle_sweep, trace_sweep,
};
use cyclowitt::witt::{self, hom_classify, parseval_check, zeta_partial_check};
use cyclowitt::WittElement;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXEC: Exec = Exec::Parallel;
const SEED: u64 = 0x5eed;

const LAMBDA_TABLE_LIMIT: Duration = Duration::from_secs(1);
const MUL_ORACLE_LIMIT: Duration = Duration::from_secs(60);
const ZETA_LIMIT: Duration = Duration::from_secs(30);
const ZETA_CUTOFF: u64 = 100_000;
const ZETA_TOLERANCE: f64 = 1e-3;
const BRIDGE_DEGREE: u64 = 8;
const BRIDGE_POWERS: u32 = 12;
const LAW_CASES: usize = 1000;

/// The Verschiebung adjunction `⟨F_m a, b⟩ = ⟨a, V_m b⟩` is false for the
/// orthogonal pairing `⟨φ_n, φ_k⟩ = φ(n)·[n = k]`: `⟨F_2 φ_1, φ_1⟩ = 1` while
/// `⟨φ_1, V_2 φ_1⟩ = ⟨φ_1, φ_2⟩ = 0`. It holds only for `a` supported on
/// multiples of `m`.
const KNOWN_FAILURES: &[u32] = &[4];

type Check = fn() -> Outcome;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn cli(args: &[&str]) -> cyclowitt_cli::Outcome {
    cyclowitt_cli::run(std::iter::once("cyclowitt").chain(args.iter().copied()))
}

fn random_element(rng: &mut ChaCha8Rng, max_n: u64) -> WittElement {
    let mut a = WittElement::zero();
    for _ in 0..rng.gen_range(0..=4) {
        a.add_term(
            rng.gen_range(1..=max_n),
            BigInt::from(rng.gen_range(-9i64..=9)),
        );
    }
    a
}

fn lambda_table() -> Outcome {
    let golden =
        std::fs::read_to_string(golden_dir().join("lambda_table_10.txt")).expect("golden file");
    let start = Instant::now();
    let out = cli(&["lambda-table", "10"]);
    let took = start.elapsed();
    let same = out.code == 0 && out.stdout == golden;
    outcome(
        same && took < LAMBDA_TABLE_LIMIT,
        format!("10 lines, identical: {same}, {took:.2?} (limit {LAMBDA_TABLE_LIMIT:?})"),
    )
}

fn mul_oracle() -> Outcome {
    let start = Instant::now();
    let r = mul_oracle_sweep(EXEC, 60).expect("sweep");
    let took = start.elapsed();
    outcome(
        r.passed() && took < MUL_ORACLE_LIMIT,
        format!(
            "{} products, {} mismatches, {took:.2?} (limit {MUL_ORACLE_LIMIT:?})",
            r.checked,
            r.failures.len()
        ),
    )
}

fn frobenius_lambda_oracle() -> Outcome {
    let f = frobenius_oracle_sweep(EXEC, 60, 20).expect("sweep");
    let l = lambda_oracle_sweep(EXEC, 20).expect("sweep");
    outcome(
        f.passed() && l.passed(),
        format!(
            "Frobenius {} cases / {} mismatches, lambda {} cases / {} mismatches",
            f.checked,
            f.failures.len(),
            l.checked,
            l.failures.len()
        ),
    )
}

fn ring_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ring_failures = 0;
    for _ in 0..LAW_CASES {
        let (a, b, c) = (
            random_element(&mut rng, 36),
            random_element(&mut rng, 36),
            random_element(&mut rng, 36),
        );
        let ok = &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a * &WittElement::one() == a;
        ring_failures += usize::from(!ok);
    }

    let mut hom_failures = 0;
    for i in 0..LAW_CASES {
        let m = (i % 30) as u64 + 1;
        let (a, b) = (random_element(&mut rng, 36), random_element(&mut rng, 36));
        let ok = witt::frobenius(m, &(&a * &b))
            == &witt::frobenius(m, &a) * &witt::frobenius(m, &b)
            && witt::frobenius(m, &(&a + &b)) == &witt::frobenius(m, &a) + &witt::frobenius(m, &b)
            && witt::frobenius(m, &WittElement::one()) == WittElement::one();
        hom_failures += usize::from(!ok);
    }

    let mut mult_failures = 0;
    for n in 1..=48 {
        let x = WittElement::phi(n);
        for m1 in 1..=30 {
            for m2 in 1..=30 {
                let ok =
                    witt::frobenius(m1, &witt::frobenius(m2, &x)) == witt::frobenius(m1 * m2, &x);
                mult_failures += usize::from(!ok);
            }
        }
    }

    let mut adjoint_failures = 0;
    let mut restricted_failures = 0;
    let mut witness = None;
    for i in 0..LAW_CASES {
        let m = (i % 24) as u64 + 1;
        let (a, b) = (random_element(&mut rng, 24), random_element(&mut rng, 24));
        let lhs = witt::inner(&witt::frobenius(m, &a), &b);
        let rhs = witt::inner(&a, &witt::verschiebung(m, &b).expect("m > 0"));
        if lhs != rhs {
            adjoint_failures += 1;
            witness.get_or_insert(format!("m={m}, a={a}, b={b}: {lhs} vs {rhs}"));
        }
        let mut on_multiples = WittElement::zero();
        for (n, c) in a.iter() {
            on_multiples.add_term(n * m, c.clone());
        }
        let lhs = witt::inner(&witt::frobenius(m, &on_multiples), &b);
        let rhs = witt::inner(&on_multiples, &witt::verschiebung(m, &b).expect("m > 0"));
        restricted_failures += usize::from(lhs != rhs);
    }

    outcome(
        ring_failures + hom_failures + mult_failures + adjoint_failures == 0,
        format!(
            "ring axioms {ring_failures}/{LAW_CASES} failures, F_m homomorphism {hom_failures}/{LAW_CASES}, \
             F_m1 F_m2 = F_m1m2 {mult_failures}/43200, adjunction {adjoint_failures}/{LAW_CASES} \
             (e.g. {}), adjunction on multiples of m {restricted_failures}/{LAW_CASES}",
            witness.as_deref().unwrap_or("none")
        ),
    )
}

fn trace_ramanujan() -> Outcome {
    let r = trace_sweep(EXEC, 100, 100).expect("sweep");
    let mut extra = 0;
    for n in 1..=100u64 {
        let x = WittElement::phi(n);
        extra += usize::from(witt::trace(&x) != BigInt::from(mobius(n).unwrap()));
        extra += usize::from(witt::f0(&x) != BigInt::from(euler_phi(n).unwrap()));
    }
    let mut multiples = 0;
    for n in 1..=48u64 {
        let expected = WittElement::integer(euler_phi(n).unwrap());
        for k in 1..=4 {
            multiples += 1;
            extra += usize::from(witt::frobenius(k * n, &WittElement::phi(n)) != expected);
        }
    }
    outcome(
        r.passed() && extra == 0,
        format!(
            "{} (n, m) pairs / {} mismatches, trace and F_0 on 100 basis elements, {multiples} multiples; {extra} other mismatches",
            r.checked,
            r.failures.len()
        ),
    )
}

fn parseval() -> Outcome {
    let mut pairs = 0;
    let mut failures = 0;
    for n in 1..=36 {
        let r = parseval_check(n).expect("parseval");
        pairs += r.pairs_checked;
        failures += r.failures.len();
    }
    outcome(
        failures == 0,
        format!("N <= 36: {pairs} pairs, {failures} failures"),
    )
}

fn zeta() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for (m, t) in [(1, 3), (6, 3), (12, 3)] {
        let r = zeta_partial_check(m, t, ZETA_CUTOFF, ZETA_TOLERANCE).expect("zeta");
        ok &= r.passed();
        lines.push(format!("(m={m}, t={t}) diff {:.1e}", r.difference));
    }
    let took = start.elapsed();
    outcome(
        ok && took < ZETA_LIMIT,
        format!(
            "{}, tolerance {ZETA_TOLERANCE:e}, {took:.2?}",
            lines.join(", ")
        ),
    )
}

fn bridge() -> Outcome {
    let r = bridge_sweep(EXEC, BRIDGE_DEGREE, BRIDGE_POWERS).expect("sweep");
    outcome(
        r.passed(),
        format!(
            "total degree <= {BRIDGE_DEGREE}, powers <= {BRIDGE_POWERS}: {} cases, {} mismatches",
            r.checked,
            r.failures.len()
        ),
    )
}

fn sections() -> Outcome {
    let mut ok = true;
    let mut counts = Vec::new();
    for (rows, cols) in [(1, 1), (2, 1), (2, 2), (2, 3)] {
        let found = global_sections(rows, cols, 2).expect("sections");
        ok &= found == signed_subpermutations(rows, cols);
        counts.push(format!("{rows}x{cols}: {}", found.len()));
        if (rows, cols) == (2, 2) {
            ok &= found.len() == 17;
        }
    }
    outcome(ok, format!("bound 2, {}", counts.join(", ")))
}

fn spectrum_suite() -> Outcome {
    let mut rigs: Vec<FiniteCRig> = (1..=30)
        .map(|n| FiniteCRig::zmod(n).expect("zmod"))
        .collect();
    rigs.push(FiniteCRig::tropical_quotient());
    let (mut ideals, mut locs, mut bad) = (0, 0, Vec::new());
    for r in &rigs {
        let sp = spectrum::spec(r);
        for a in spectrum::all_ideals(r) {
            ideals += 1;
            let iv = sp.vanishing_ideal(r, &sp.closed_set(&a));
            if spectrum::radical(r, &a).ok() != Some(iv) {
                bad.push(format!("IV in {}", cyclowitt::rig::Rig::name(r)));
            }
        }
        let mut sets: Vec<Vec<usize>> = (0..r.size()).map(|s| spectrum::powers(r, s)).collect();
        sets.extend(sp.primes.iter().map(|p| spectrum::complement(r, p)));
        for s in sets {
            locs += 1;
            if !spectrum::localization_spec_check(r, &s).is_ok_and(|rep| rep.passed()) {
                bad.push(format!("localization in {}", cyclowitt::rig::Rig::name(r)));
            }
        }
    }
    let mut theorem1 = 0;
    for n in [6, 12] {
        let r = FiniteCRig::zmod(n).expect("zmod");
        for s in 0..r.size() {
            theorem1 += 1;
            if !spectrum::theorem1_check(&r, s).is_ok_and(|rep| rep.passed()) {
                bad.push(format!("theorem1 in Z/{n}, s = {s}"));
            }
        }
    }
    bad.dedup();
    outcome(
        bad.is_empty(),
        format!(
            "{} rigs, {ideals} ideals, {locs} localizations, {theorem1} open sets; failures: {}",
            rigs.len(),
            if bad.is_empty() {
                "none".into()
            } else {
                bad.join(", ")
            }
        ),
    )
}

fn gamma() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for level in [4, 8, 12] {
        let r = graded_frobenius_check(level, 3, 5).expect("gamma filtration");
        ok &= r.passed();
        parts.push(format!(
            "N={level}: {} Frobenius checks / {} failures, {} lambda checks / {} findings",
            r.frobenius_checks,
            r.frobenius_failures.len(),
            r.lambda_checks,
            r.lambda_findings.len()
        ));
    }
    outcome(ok, parts.join("; "))
}

fn homs() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2, 3, 5] {
        for k in 1..=3 {
            let h = hom_classify(p, k).expect("homs");
            ok &= h.matches() && h.solutions.len() == k as usize + 1;
            parts.push(format!("{}", h.solutions.len()));
        }
    }
    outcome(
        ok,
        format!(
            "homomorphism counts for p in 2,3,5 and k in 1..3: {}",
            parts.join(" ")
        ),
    )
}

fn golden() -> Outcome {
    let cases: [(&str, &[&str]); 5] = [
        ("lambda_table_10.txt", &["lambda-table", "10"]),
        (
            "ramanujan_12x12.txt",
            &["ramanujan", "--n", "12", "--m-max", "12"],
        ),
        ("parseval_12.txt", &["parseval", "12"]),
        (
            "gamma_filtration_12_3.txt",
            &["gamma-filtration", "--level", "12", "--depth", "3"],
        ),
        (
            "theorem1_zmod12_s2.txt",
            &["theorem1", "--rig", "zmod:12", "--s", "2"],
        ),
    ];
    let mut differing = Vec::new();
    for (file, args) in cases {
        let expected = std::fs::read_to_string(golden_dir().join(file)).expect("golden file");
        let out = cli(args);
        if out.code != 0 || out.stdout != expected {
            differing.push(file);
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} files, differing: {}",
            cases.len(),
            if differing.is_empty() {
                "none".into()
            } else {
                differing.join(", ")
            }
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, Check); 13] = [
        (1, "lambda-table reproduction", lambda_table),
        (2, "multiplication oracle", mul_oracle),
        (3, "Frobenius and lambda oracles", frobenius_lambda_oracle),
        (4, "ring and operator laws", ring_laws),
        (5, "trace and Ramanujan sums", trace_ramanujan),
        (6, "finite Parseval", parseval),
        (7, "zeta truncations", zeta),
        (8, "matrix-Witt bridge", bridge),
        (9, "global sections", sections),
        (10, "spectrum suite", spectrum_suite),
        (11, "gamma filtration", gamma),
        (12, "hom classification", homs),
        (13, "CLI golden files", golden),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {id:>2} {name} [{:.2?}]: {}",
            start.elapsed(),
            o.detail
        );
        if o.passed == KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected (known failures: {KNOWN_FAILURES:?})");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
