//! Rigs, matrix props over rigs, and the `F[±1]` global sections.
//!
//! A matrix over a rig is a morphism of the prop: `f ∘ g` is the matrix
//! product, `⊕` is block-diagonal sum and permutations act through
//! permutation matrices.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::par::{self, Exec};

/// A rig: commutative additive monoid with an associative, unital
/// multiplication that distributes over addition and is absorbed by zero.
pub trait Rig: Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Claimed commutativity of multiplication; the law checker verifies it.
    fn is_commutative(&self) -> bool {
        true
    }

    /// The carrier, when finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

/// `B = {0, 1}` with `or` and `and`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BooleanRig;

impl Rig for BooleanRig {
    type Elem = bool;

    fn name(&self) -> String {
        "boolean".into()
    }
    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn elements(&self) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> bool {
        rng.gen()
    }
}

/// `Z/n` with `n ≥ 1`.
#[derive(Debug, Clone, Copy)]
pub struct ZMod(u64);

impl ZMod {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        Ok(ZMod(n))
    }

    pub fn modulus(&self) -> u64 {
        self.0
    }
}

impl Rig for ZMod {
    type Elem = u64;

    fn name(&self) -> String {
        format!("zmod:{}", self.0)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.0).collect())
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.0)
    }
}

fn sample_ratio(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> BigRational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(0..=max_num * den);
    BigRational::new(num.into(), den.into())
}

/// `I = [0, 1] ∩ Q` with `x + y = max(x, y)` and ordinary product.
#[derive(Debug, Clone, Copy, Default)]
pub struct TropicalUnit;

impl TropicalUnit {
    /// Checked constructor for carrier values.
    pub fn elem(&self, q: BigRational) -> Result<BigRational> {
        if q < BigRational::zero() || q > BigRational::one() {
            return Err(Error::Invalid(format!("{q} is outside [0, 1]")));
        }
        Ok(q)
    }
}

impl Rig for TropicalUnit {
    type Elem = BigRational;

    fn name(&self) -> String {
        "tropical-unit".into()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a.max(b).clone()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    /// Denominators at most 8.
    fn sample(&self, rng: &mut ChaCha8Rng) -> BigRational {
        sample_ratio(rng, 1, 8)
    }
}

/// Element of `[0, ∞]`; the derived order puts `Inf` above every finite value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extended {
    Finite(BigRational),
    Inf,
}

impl Extended {
    pub fn int(n: i64) -> Self {
        Extended::Finite(BigRational::from_integer(n.into()))
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(q) => write!(f, "{q}"),
            Extended::Inf => f.write_str("inf"),
        }
    }
}

/// `R = [0, ∞] ∩ (Q ∪ {∞})` with `max` and ordinary product, `0·∞ = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TropicalNonNeg;

impl Rig for TropicalNonNeg {
    type Elem = Extended;

    fn name(&self) -> String {
        "tropical-nonneg".into()
    }
    fn zero(&self) -> Extended {
        Extended::int(0)
    }
    fn one(&self) -> Extended {
        Extended::int(1)
    }
    fn add(&self, a: &Extended, b: &Extended) -> Extended {
        a.max(b).clone()
    }
    fn mul(&self, a: &Extended, b: &Extended) -> Extended {
        match (a, b) {
            (Extended::Finite(x), Extended::Finite(y)) => Extended::Finite(x * y),
            (Extended::Finite(x), Extended::Inf) | (Extended::Inf, Extended::Finite(x))
                if x.is_zero() =>
            {
                Extended::int(0)
            }
            _ => Extended::Inf,
        }
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Extended {
        match rng.gen_range(0..10) {
            0 => Extended::Inf,
            1 => Extended::int(0),
            _ => Extended::Finite(sample_ratio(rng, 5, 8)),
        }
    }
}

/// `Z`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegerRig;

impl Rig for IntegerRig {
    type Elem = BigInt;

    fn name(&self) -> String {
        "int".into()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> BigInt {
        rng.gen_range(-20i64..=20).into()
    }
}

/// `Q`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalRig;

impl Rig for RationalRig {
    type Elem = BigRational;

    fn name(&self) -> String {
        "rational".into()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> BigRational {
        let den = rng.gen_range(1i64..=6);
        BigRational::new(rng.gen_range(-12i64..=12).into(), den.into())
    }
}

/// `M_2(Z)`, a non-commutative rig. Entries are stored row-major.
#[derive(Debug, Clone, Copy, Default)]
pub struct Matrix2Rig;

impl Rig for Matrix2Rig {
    type Elem = [BigInt; 4];

    fn name(&self) -> String {
        "mat2-int".into()
    }
    fn zero(&self) -> [BigInt; 4] {
        Default::default()
    }
    fn one(&self) -> [BigInt; 4] {
        [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()]
    }
    fn add(&self, a: &[BigInt; 4], b: &[BigInt; 4]) -> [BigInt; 4] {
        std::array::from_fn(|i| &a[i] + &b[i])
    }
    fn mul(&self, a: &[BigInt; 4], b: &[BigInt; 4]) -> [BigInt; 4] {
        [
            &a[0] * &b[0] + &a[1] * &b[2],
            &a[0] * &b[1] + &a[1] * &b[3],
            &a[2] * &b[0] + &a[3] * &b[2],
            &a[2] * &b[1] + &a[3] * &b[3],
        ]
    }
    fn is_commutative(&self) -> bool {
        false
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> [BigInt; 4] {
        std::array::from_fn(|_| rng.gen_range(-3i64..=3).into())
    }
}

/// `Z` with subtraction as "addition". Not a rig; the law checker must reject it.
#[derive(Debug, Clone, Copy, Default)]
pub struct SubtractionRig;

impl Rig for SubtractionRig {
    type Elem = BigInt;

    fn name(&self) -> String {
        "int-subtraction".into()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> BigInt {
        rng.gen_range(-20i64..=20).into()
    }
}

/// Rig names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigName {
    Boolean,
    ZMod(u64),
    TropicalUnit,
    TropicalNonNeg,
    Int,
    Rational,
}

impl RigName {
    pub fn is_finite(self) -> bool {
        matches!(self, RigName::Boolean | RigName::ZMod(_))
    }
}

impl FromStr for RigName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "boolean" => RigName::Boolean,
            "tropical-unit" => RigName::TropicalUnit,
            "tropical-nonneg" => RigName::TropicalNonNeg,
            "int" => RigName::Int,
            "rational" => RigName::Rational,
            _ => {
                let n = s
                    .strip_prefix("zmod:")
                    .and_then(|n| n.parse::<u64>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::Invalid(format!("unknown rig `{s}`")))?;
                RigName::ZMod(n)
            }
        })
    }
}

impl fmt::Display for RigName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigName::Boolean => f.write_str("boolean"),
            RigName::ZMod(n) => write!(f, "zmod:{n}"),
            RigName::TropicalUnit => f.write_str("tropical-unit"),
            RigName::TropicalNonNeg => f.write_str("tropical-nonneg"),
            RigName::Int => f.write_str("int"),
            RigName::Rational => f.write_str("rational"),
        }
    }
}

/// A failed law instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub witness: String,
}

/// Result of a law check over one rig.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub rig: String,
    /// `(law, cases checked, exhaustive)`.
    pub laws: Vec<(&'static str, usize, bool)>,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

/// Checks the rig axioms on all triples of a finite carrier when
/// `|carrier|³ ≤ budget`, and on `budget` seeded random triples otherwise.
pub fn check_rig_laws<R: Rig>(r: &R, budget: usize) -> LawReport {
    let triples: Vec<[R::Elem; 3]> = match r.elements() {
        Some(es) if es.len().pow(3) <= budget => {
            let mut out = Vec::with_capacity(es.len().pow(3));
            for a in &es {
                for b in &es {
                    for c in &es {
                        out.push([a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
            out
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x0052_4947);
            (0..budget)
                .map(|_| std::array::from_fn(|_| r.sample(&mut rng)))
                .collect()
        }
    };
    let exhaustive = r.elements().is_some_and(|es| es.len().pow(3) <= budget);
    let (z, o) = (r.zero(), r.one());
    type Law<R> = (
        &'static str,
        fn(&R, &[<R as Rig>::Elem; 3], &<R as Rig>::Elem, &<R as Rig>::Elem) -> bool,
    );
    let mut laws: Vec<Law<R>> = vec![
        ("add-associative", |r, [a, b, c], _, _| {
            r.add(&r.add(a, b), c) == r.add(a, &r.add(b, c))
        }),
        ("add-commutative", |r, [a, b, _], _, _| {
            r.add(a, b) == r.add(b, a)
        }),
        ("add-unit", |r, [a, ..], z, _| {
            r.add(a, z) == *a && r.add(z, a) == *a
        }),
        ("mul-associative", |r, [a, b, c], _, _| {
            r.mul(&r.mul(a, b), c) == r.mul(a, &r.mul(b, c))
        }),
        ("mul-unit", |r, [a, ..], _, o| {
            r.mul(a, o) == *a && r.mul(o, a) == *a
        }),
        ("left-distributive", |r, [a, b, c], _, _| {
            r.mul(a, &r.add(b, c)) == r.add(&r.mul(a, b), &r.mul(a, c))
        }),
        ("right-distributive", |r, [a, b, c], _, _| {
            r.mul(&r.add(a, b), c) == r.add(&r.mul(a, c), &r.mul(b, c))
        }),
        ("zero-absorbing", |r, [a, ..], z, _| {
            r.mul(a, z) == *z && r.mul(z, a) == *z
        }),
    ];
    if r.is_commutative() {
        laws.push(("mul-commutative", |r, [a, b, _], _, _| {
            r.mul(a, b) == r.mul(b, a)
        }));
    }
    let mut report = LawReport {
        rig: r.name(),
        laws: Vec::new(),
        violations: Vec::new(),
    };
    for (name, law) in laws {
        report.laws.push((name, triples.len(), exhaustive));
        if let Some(t) = triples.iter().find(|t| !law(r, t, &z, &o)) {
            report.violations.push(LawViolation {
                law: name,
                witness: format!("{t:?}"),
            });
        }
    }
    report
}

/// A rectangular matrix of rig elements, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RigMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + fmt::Debug> RigMatrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RigMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros<R: Rig<Elem = E>>(r: &R, rows: usize, cols: usize) -> Self {
        RigMatrix {
            rows,
            cols,
            data: vec![r.zero(); rows * cols],
        }
    }

    pub fn identity<R: Rig<Elem = E>>(r: &R, n: usize) -> Self {
        let mut m = Self::zeros(r, n, n);
        for i in 0..n {
            m.data[i * n + i] = r.one();
        }
        m
    }

    /// `1×1` matrix.
    pub fn scalar(a: E) -> Self {
        RigMatrix {
            rows: 1,
            cols: 1,
            data: vec![a],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        RigMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `out[a][·] = self[perm[a]][·]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.rows)?;
        let data = perm
            .iter()
            .flat_map(|&p| {
                self.data[p * self.cols..(p + 1) * self.cols]
                    .iter()
                    .cloned()
            })
            .collect();
        Ok(RigMatrix { data, ..*self })
    }

    /// `out[·][b] = self[·][perm[b]]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.cols)?;
        let data = (0..self.rows)
            .flat_map(|i| perm.iter().map(move |&p| (i, p)))
            .map(|(i, p)| self.get(i, p).clone())
            .collect();
        Ok(RigMatrix { data, ..*self })
    }
}

impl<E> RigMatrix<E> {
    fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

impl<E: fmt::Debug> fmt::Debug for RigMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[E]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        write!(f, "{}x{}{:?}", self.rows, self.cols, rows)
    }
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::Dimension(format!(
            "permutation of {} points on {n}",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// `f ∘ g`, the matrix product over the rig.
pub fn mat_compose<R: Rig>(
    r: &R,
    f: &RigMatrix<R::Elem>,
    g: &RigMatrix<R::Elem>,
) -> Result<RigMatrix<R::Elem>> {
    if f.cols != g.rows {
        return Err(Error::Dimension(format!(
            "cannot compose {}x{} with {}x{}",
            f.rows, f.cols, g.rows, g.cols
        )));
    }
    let mut data = Vec::with_capacity(f.rows * g.cols);
    for i in 0..f.rows {
        for k in 0..g.cols {
            let mut acc = r.zero();
            for j in 0..f.cols {
                acc = r.add(&acc, &r.mul(f.get(i, j), g.get(j, k)));
            }
            data.push(acc);
        }
    }
    Ok(RigMatrix {
        rows: f.rows,
        cols: g.cols,
        data,
    })
}

/// Block-diagonal `f ⊕ g`.
pub fn direct_sum<R: Rig>(
    r: &R,
    f: &RigMatrix<R::Elem>,
    g: &RigMatrix<R::Elem>,
) -> RigMatrix<R::Elem> {
    let mut out = RigMatrix::zeros(r, f.rows + g.rows, f.cols + g.cols);
    for i in 0..f.rows {
        for j in 0..f.cols {
            out.data[i * out.cols + j] = f.get(i, j).clone();
        }
    }
    for i in 0..g.rows {
        for j in 0..g.cols {
            out.data[(f.rows + i) * out.cols + f.cols + j] = g.get(i, j).clone();
        }
    }
    out
}

/// `⊕^k f`; `k = 0` gives the empty `0×0` matrix.
pub fn direct_power<R: Rig>(r: &R, f: &RigMatrix<R::Elem>, k: usize) -> RigMatrix<R::Elem> {
    (0..k).fold(RigMatrix::zeros(r, 0, 0), |acc, _| direct_sum(r, &acc, f))
}

/// Kronecker product; entry `(i·q₀ + k, j·q₁ + l)` is `p[i][j]·q[k][l]`.
pub fn kronecker<R: Rig>(
    r: &R,
    p: &RigMatrix<R::Elem>,
    q: &RigMatrix<R::Elem>,
) -> RigMatrix<R::Elem> {
    let (q0, q1) = q.dims();
    let mut out = RigMatrix::zeros(r, p.rows * q0, p.cols * q1);
    for i in 0..p.rows {
        for j in 0..p.cols {
            for k in 0..q0 {
                for l in 0..q1 {
                    out.data[(i * q0 + k) * out.cols + j * q1 + l] =
                        r.mul(p.get(i, j), q.get(k, l));
                }
            }
        }
    }
    out
}

/// Block swap `τ_{n,m} ∈ S_{n+m}` (0-based): `i ↦ n + i` for `i < m`,
/// `i ↦ i − m` otherwise.
pub fn tau(n: usize, m: usize) -> Vec<usize> {
    (0..n + m)
        .map(|i| if i < m { n + i } else { i - m })
        .collect()
}

/// Interleaving `σ_{m,n} ∈ S_{m·n}` (0-based): `σ(j·m + i) = i·n + j` for
/// `i < m`, `j < n`.
pub fn sigma(m: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; m * n];
    for i in 0..m {
        for j in 0..n {
            out[j * m + i] = i * n + j;
        }
    }
    out
}

pub fn invert_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// The matrix of `perm` acting on basis vectors: column `j` is `e_{perm(j)}`.
pub fn permutation_matrix<R: Rig>(r: &R, perm: &[usize]) -> RigMatrix<R::Elem> {
    let n = perm.len();
    let mut m = RigMatrix::zeros(r, n, n);
    for (j, &p) in perm.iter().enumerate() {
        m.data[p * n + j] = r.one();
    }
    m
}

/// `p ⊗ q := (⊕^{q₀} p) ∘ σ_{q₀,p₁} ∘ (⊕^{p₁} q)`.
pub fn tensor<R: Rig>(
    r: &R,
    p: &RigMatrix<R::Elem>,
    q: &RigMatrix<R::Elem>,
) -> Result<RigMatrix<R::Elem>> {
    let (_, p1) = p.dims();
    let (q0, _) = q.dims();
    let left = direct_power(r, p, q0);
    let mid = permutation_matrix(r, &sigma(q0, p1));
    mat_compose(r, &mat_compose(r, &left, &mid)?, &direct_power(r, q, p1))
}

/// The other side of the interchange law:
/// `σ_{q₀,p₀} ∘ (⊕^{p₀} q) ∘ σ_{p₀,q₁} ∘ (⊕^{q₁} p) ∘ σ_{q₁,p₁}`.
pub fn tensor_swapped<R: Rig>(
    r: &R,
    p: &RigMatrix<R::Elem>,
    q: &RigMatrix<R::Elem>,
) -> Result<RigMatrix<R::Elem>> {
    let (p0, p1) = p.dims();
    let (q0, q1) = q.dims();
    let mut acc = permutation_matrix(r, &sigma(q0, p0));
    for f in [
        direct_power(r, q, p0),
        permutation_matrix(r, &sigma(p0, q1)),
        direct_power(r, p, q1),
        permutation_matrix(r, &sigma(q1, p1)),
    ] {
        acc = mat_compose(r, &acc, &f)?;
    }
    Ok(acc)
}

/// Enumeration limits for [`check_prop_laws`].
#[derive(Debug, Clone, Copy)]
pub struct PropBudget {
    /// Bound on every matrix dimension.
    pub max_dim: usize,
    /// Bound on `rows·cols` of every matrix.
    pub max_entries: usize,
    /// A law is checked exhaustively when its case count is at most this.
    pub exhaustive_limit: usize,
    /// Random cases per law otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for PropBudget {
    fn default() -> Self {
        PropBudget {
            max_dim: 3,
            max_entries: 6,
            exhaustive_limit: 200_000,
            samples: 500,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Dim {
    Var(usize),
    One,
}

type LawFn<R> = fn(&R, &[RigMatrix<<R as Rig>::Elem>]) -> Result<bool>;

struct PropLaw<R: Rig> {
    name: &'static str,
    vars: usize,
    slots: Vec<(Dim, Dim)>,
    commutative_only: bool,
    check: LawFn<R>,
}

fn shape_assignments(vars: usize, max_dim: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max_dim).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

fn resolve(d: Dim, vals: &[usize]) -> usize {
    match d {
        Dim::Var(i) => vals[i],
        Dim::One => 1,
    }
}

fn all_matrices<E: Clone + fmt::Debug>(
    carrier: &[E],
    rows: usize,
    cols: usize,
) -> Vec<RigMatrix<E>> {
    let n = rows * cols;
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let data = idx.iter().map(|&i| carrier[i].clone()).collect();
        out.push(RigMatrix { rows, cols, data });
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < carrier.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn prop_laws<R: Rig>() -> Vec<PropLaw<R>> {
    use Dim::{One, Var};
    vec![
        PropLaw {
            name: "compose-associative",
            vars: 4,
            slots: vec![(Var(0), Var(1)), (Var(1), Var(2)), (Var(2), Var(3))],
            commutative_only: false,
            check: |r, m| {
                let left = mat_compose(r, &mat_compose(r, &m[0], &m[1])?, &m[2])?;
                let right = mat_compose(r, &m[0], &mat_compose(r, &m[1], &m[2])?)?;
                Ok(left == right)
            },
        },
        PropLaw {
            name: "compose-identity",
            vars: 2,
            slots: vec![(Var(0), Var(1))],
            commutative_only: false,
            check: |r, m| {
                let f = &m[0];
                Ok(mat_compose(r, &RigMatrix::identity(r, f.rows), f)? == *f
                    && mat_compose(r, f, &RigMatrix::identity(r, f.cols))? == *f)
            },
        },
        PropLaw {
            name: "sum-functorial",
            vars: 4,
            slots: vec![
                (Var(0), Var(1)),
                (Var(1), Var(0)),
                (Var(2), Var(3)),
                (Var(3), Var(2)),
            ],
            commutative_only: false,
            check: |r, m| {
                let left = mat_compose(
                    r,
                    &direct_sum(r, &m[0], &m[2]),
                    &direct_sum(r, &m[1], &m[3]),
                )?;
                let right = direct_sum(
                    r,
                    &mat_compose(r, &m[0], &m[1])?,
                    &mat_compose(r, &m[2], &m[3])?,
                );
                Ok(left == right && direct_sum(r, &m[0], &RigMatrix::zeros(r, 0, 0)) == m[0])
            },
        },
        PropLaw {
            name: "sum-symmetric",
            vars: 4,
            slots: vec![(Var(0), Var(1)), (Var(2), Var(3))],
            commutative_only: false,
            check: |r, m| {
                let (f1, f2) = (&m[0], &m[1]);
                let t_out = permutation_matrix(r, &tau(f2.rows, f1.rows));
                let t_in = permutation_matrix(r, &tau(f1.cols, f2.cols));
                let conj = mat_compose(r, &mat_compose(r, &t_out, &direct_sum(r, f1, f2))?, &t_in)?;
                Ok(conj == direct_sum(r, f2, f1))
            },
        },
        PropLaw {
            name: "scalar-central",
            vars: 2,
            slots: vec![(One, One), (Var(0), Var(1))],
            commutative_only: true,
            check: |r, m| {
                let (a, p) = (&m[0], &m[1]);
                let left = mat_compose(r, &direct_power(r, a, p.rows), p)?;
                let right = mat_compose(r, p, &direct_power(r, a, p.cols))?;
                Ok(left == right)
            },
        },
        PropLaw {
            name: "commutative",
            vars: 3,
            slots: vec![(One, Var(0)), (Var(1), Var(2)), (Var(0), One)],
            commutative_only: true,
            check: |r, m| {
                let (b, p, d) = (&m[0], &m[1], &m[2]);
                let (n, mm, k) = (p.rows, p.cols, b.cols);
                let bd = mat_compose(r, b, d)?;
                let left = mat_compose(r, &direct_power(r, &bd, n), p)?;
                let mut right = direct_power(r, b, n);
                for f in [
                    permutation_matrix(r, &sigma(n, k)),
                    direct_power(r, p, k),
                    permutation_matrix(r, &sigma(k, mm)),
                    direct_power(r, d, mm),
                ] {
                    right = mat_compose(r, &right, &f)?;
                }
                Ok(left == right)
            },
        },
        PropLaw {
            name: "interchange",
            vars: 4,
            slots: vec![(Var(0), Var(1)), (Var(2), Var(3))],
            commutative_only: true,
            check: |r, m| Ok(tensor(r, &m[0], &m[1])? == tensor_swapped(r, &m[0], &m[1])?),
        },
        PropLaw {
            name: "kronecker-swap",
            vars: 4,
            slots: vec![(Var(0), Var(1)), (Var(2), Var(3))],
            commutative_only: true,
            check: |r, m| {
                let (p, q) = (&m[0], &m[1]);
                let swapped = kronecker(r, q, p)
                    .permute_rows(&sigma(q.rows, p.rows))?
                    .permute_cols(&sigma(q.cols, p.cols))?;
                Ok(kronecker(r, p, q) == swapped)
            },
        },
    ]
}

/// Names of the laws [`check_prop_laws`] runs, in order.
pub const PROP_LAWS: [&str; 8] = [
    "compose-associative",
    "compose-identity",
    "sum-functorial",
    "sum-symmetric",
    "scalar-central",
    "commutative",
    "interchange",
    "kronecker-swap",
];

/// Checks the prop laws of the matrix prop over `r`: associativity and units
/// of composition, functoriality and symmetry of `⊕`, and for commutative
/// rigs centrality, commutativity, the interchange law and the `σ`-relation
/// between the two Kronecker orders.
///
/// The commutative-only laws run when `force_all` is set even if the rig
/// claims not to be commutative, which is how the non-commutative control
/// case is exercised.
pub fn check_prop_laws<R: Rig>(r: &R, budget: PropBudget, force_all: bool) -> Result<LawReport> {
    let carrier = r.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut report = LawReport {
        rig: r.name(),
        laws: Vec::new(),
        violations: Vec::new(),
    };
    for law in prop_laws::<R>() {
        if law.commutative_only && !r.is_commutative() && !force_all {
            continue;
        }
        let shapes: Vec<Vec<(usize, usize)>> = shape_assignments(law.vars, budget.max_dim)
            .into_iter()
            .map(|vals| {
                law.slots
                    .iter()
                    .map(|&(a, b)| (resolve(a, &vals), resolve(b, &vals)))
                    .collect::<Vec<_>>()
            })
            .filter(|s| s.iter().all(|&(a, b)| a * b <= budget.max_entries))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let total = carrier.as_ref().map(|c| {
            shapes
                .iter()
                .map(|s| {
                    s.iter().fold(1f64, |acc, &(a, b)| {
                        acc * (c.len() as f64).powi((a * b) as i32)
                    })
                })
                .sum::<f64>()
        });
        let exhaustive = total.is_some_and(|t| t <= budget.exhaustive_limit as f64);
        let mut cases = 0;
        let mut witness = None;
        let mut run = |ms: &[RigMatrix<R::Elem>]| -> Result<bool> {
            cases += 1;
            if !(law.check)(r, ms)? {
                witness = Some(format!("{ms:?}"));
                return Ok(false);
            }
            Ok(true)
        };
        if exhaustive {
            let c = carrier.as_ref().expect("exhaustive implies finite");
            'shapes: for s in &shapes {
                let pools: Vec<Vec<RigMatrix<R::Elem>>> =
                    s.iter().map(|&(a, b)| all_matrices(c, a, b)).collect();
                let mut idx = vec![0usize; pools.len()];
                loop {
                    let ms: Vec<_> = idx.iter().zip(&pools).map(|(&i, p)| p[i].clone()).collect();
                    if !run(&ms)? {
                        break 'shapes;
                    }
                    let mut pos = pools.len();
                    loop {
                        if pos == 0 {
                            continue 'shapes;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < pools[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
        } else {
            for _ in 0..budget.samples {
                let s = &shapes[rng.gen_range(0..shapes.len())];
                let ms: Vec<_> = s
                    .iter()
                    .map(|&(a, b)| RigMatrix {
                        rows: a,
                        cols: b,
                        data: (0..a * b).map(|_| r.sample(&mut rng)).collect(),
                    })
                    .collect();
                if !run(&ms)? {
                    break;
                }
            }
        }
        report.laws.push((law.name, cases, exhaustive));
        if let Some(w) = witness {
            report.violations.push(LawViolation {
                law: law.name,
                witness: w,
            });
        }
    }
    Ok(report)
}

/// `GL_n(r)`: the matrices with a two-sided inverse, row-major
/// lexicographic in carrier order.
pub fn gl_enumerate<R: Rig>(r: &R, n: usize, budget: usize) -> Result<Vec<RigMatrix<R::Elem>>> {
    let carrier = r
        .elements()
        .ok_or_else(|| Error::Invalid(format!("{} is not finite", r.name())))?;
    let count = (carrier.len() as f64).powi((n * n) as i32);
    if count > budget as f64 {
        return Err(Error::Budget(format!(
            "{count} matrices of size {n} over {}",
            r.name()
        )));
    }
    let all = all_matrices(&carrier, n, n);
    let id = RigMatrix::identity(r, n);
    let units: Vec<usize> = par::filter_range(Exec::Parallel, all.len(), |i| {
        all.iter().any(|b| {
            mat_compose(r, &all[i], b).is_ok_and(|ab| ab == id)
                && mat_compose(r, b, &all[i]).is_ok_and(|ba| ba == id)
        })
    });
    let group: Vec<_> = units.into_iter().map(|i| all[i].clone()).collect();
    let set: std::collections::HashSet<_> = group.iter().collect();
    for a in &group {
        for b in &group {
            if !set.contains(&mat_compose(r, a, b)?) {
                return Err(Error::Characterization(format!(
                    "GL_{n} not closed: {a:?} * {b:?}"
                )));
            }
        }
    }
    Ok(group)
}

/// Every `rows×cols` integer matrix with at most one nonzero entry, equal to
/// `±1`, in each row and column.
pub fn signed_subpermutations(rows: usize, cols: usize) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    let mut cur = IntMatrix::zeros(rows, cols);
    let mut used = vec![false; cols];
    fn go(i: usize, cur: &mut IntMatrix, used: &mut [bool], out: &mut Vec<IntMatrix>) {
        if i == cur.rows() {
            out.push(cur.clone());
            return;
        }
        go(i + 1, cur, used, out);
        for j in 0..cur.cols() {
            if used[j] {
                continue;
            }
            used[j] = true;
            for s in [-1, 1] {
                cur.set(i, j, BigInt::from(s));
                go(i + 1, cur, used, out);
            }
            cur.set(i, j, BigInt::zero());
            used[j] = false;
        }
    }
    go(0, &mut cur, &mut used, &mut out);
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    out
}

/// Integer matrices with entries in `[−bound, bound]` whose operator norm is
/// at most 1, in row-major lexicographic order. Fails unless they are
/// exactly the signed sub-permutation matrices.
pub fn global_sections(rows: usize, cols: usize, bound: u32) -> Result<Vec<IntMatrix>> {
    global_sections_with(Exec::Parallel, rows, cols, bound)
}

pub fn global_sections_with(
    exec: Exec,
    rows: usize,
    cols: usize,
    bound: u32,
) -> Result<Vec<IntMatrix>> {
    if bound == 0 {
        return Err(Error::Invalid("entry bound must be at least 1".into()));
    }
    let base = 2 * bound as u64 + 1;
    let cells = (rows * cols) as u32;
    let total = base
        .checked_pow(cells)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::Budget(format!("{base}^{cells} candidate matrices")))?;
    let decode = |mut idx: u64| {
        let mut data = vec![BigInt::zero(); rows * cols];
        for slot in data.iter_mut().rev() {
            *slot = BigInt::from((idx % base) as i64 - bound as i64);
            idx /= base;
        }
        IntMatrix::new(rows, cols, data).expect("sized above")
    };
    let hits = par::filter_range(exec, total as usize, |i| {
        decode(i as u64).contraction_le_one()
    });
    let found: Vec<IntMatrix> = hits.into_iter().map(|i| decode(i as u64)).collect();
    let expected = signed_subpermutations(rows, cols);
    if found != expected {
        let extra = found.iter().find(|m| !expected.contains(m));
        let missing = expected.iter().find(|m| !found.contains(m));
        return Err(Error::Characterization(format!(
            "contractions differ from signed sub-permutations (extra {extra:?}, missing {missing:?})"
        )));
    }
    Ok(found)
}

/// The hyperoctahedral group `(±1)ⁿ ⋊ Sₙ` as signed permutation matrices.
pub fn signed_perm_group(n: usize) -> Vec<IntMatrix> {
    signed_subpermutations(n, n)
        .into_iter()
        .filter(|m| (0..n).all(|i| m.row(i).iter().any(|x| !x.is_zero())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(rows: &[&[u8]]) -> RigMatrix<bool> {
        RigMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| x == 1).collect())
                .collect(),
        )
        .unwrap()
    }

    fn z(rows: &[&[i64]]) -> RigMatrix<BigInt> {
        RigMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| x.into()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rig_laws() {
        assert!(check_rig_laws(&BooleanRig, 1000).passed());
        assert!(check_rig_laws(&BooleanRig, 1000).laws[0].2);
        assert!(check_rig_laws(&ZMod::new(6).unwrap(), 1000).passed());
        assert!(check_rig_laws(&TropicalUnit, 2000).passed());
        assert!(check_rig_laws(&TropicalNonNeg, 2000).passed());
        assert!(check_rig_laws(&IntegerRig, 500).passed());
        assert!(check_rig_laws(&RationalRig, 500).passed());
        assert!(check_rig_laws(&Matrix2Rig, 500).passed());
        let bad = check_rig_laws(&SubtractionRig, 500);
        assert!(bad.violated("add-commutative"));
        assert!(!bad.violations[0].witness.is_empty());
    }

    #[test]
    fn compose_examples() {
        let f = b(&[&[1, 0], &[1, 1]]);
        let g = b(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            mat_compose(&BooleanRig, &f, &g).unwrap(),
            b(&[&[0, 1], &[1, 1]])
        );
        let r = TropicalNonNeg;
        let f = RigMatrix::from_rows(vec![vec![Extended::int(2), Extended::int(3)]]).unwrap();
        let g = RigMatrix::from_rows(vec![vec![Extended::int(4)], vec![Extended::int(1)]]).unwrap();
        assert_eq!(
            mat_compose(&r, &f, &g).unwrap(),
            RigMatrix::scalar(Extended::int(8))
        );
        assert!(mat_compose(&r, &f, &f).is_err());
        assert_eq!(r.mul(&Extended::int(0), &Extended::Inf), Extended::int(0));
    }

    #[test]
    fn sums_and_kronecker() {
        let r = IntegerRig;
        let a = z(&[&[5]]);
        let c = z(&[&[7]]);
        assert_eq!(direct_sum(&r, &a, &c), z(&[&[5, 0], &[0, 7]]));
        assert_eq!(direct_sum(&r, &a, &RigMatrix::zeros(&r, 0, 0)), a);
        let s = z(&[&[0, 1], &[1, 0]]);
        let k = kronecker(&r, &s, &s);
        assert_eq!(
            k,
            z(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]])
        );
    }

    #[test]
    fn permutations() {
        assert_eq!(tau(1, 1), vec![1, 0]);
        assert_eq!(sigma(2, 2), vec![0, 2, 1, 3]);
        assert_eq!(sigma(1, 4), vec![0, 1, 2, 3]);
        assert_eq!(invert_perm(&sigma(2, 3)), sigma(3, 2));
        assert_eq!(invert_perm(&tau(2, 3)), tau(3, 2));
    }

    #[test]
    fn prop_laws_boolean_exhaustive() {
        let rep = check_prop_laws(&BooleanRig, PropBudget::default(), false).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert_eq!(rep.laws.len(), PROP_LAWS.len());
        for (name, _, exhaustive) in &rep.laws {
            if [
                "sum-symmetric",
                "interchange",
                "kronecker-swap",
                "compose-identity",
                "scalar-central",
            ]
            .contains(name)
            {
                assert!(exhaustive, "{name}");
            }
        }
    }

    #[test]
    fn prop_laws_sampled() {
        let budget = PropBudget {
            exhaustive_limit: 0,
            ..PropBudget::default()
        };
        for rep in [
            check_prop_laws(&ZMod::new(3).unwrap(), budget, false).unwrap(),
            check_prop_laws(&TropicalUnit, budget, false).unwrap(),
            check_prop_laws(&TropicalNonNeg, budget, false).unwrap(),
        ] {
            assert!(rep.passed(), "{}: {:?}", rep.rig, rep.violations);
            assert!(rep.laws.iter().all(|&(_, n, _)| n == 500));
        }
        let control = check_prop_laws(&Matrix2Rig, budget, true).unwrap();
        assert!(control.violated("interchange"));
        assert!(!control.violated("compose-associative"));
        assert!(!control.violated("sum-symmetric"));
    }

    #[test]
    fn general_linear_groups() {
        let g = gl_enumerate(&BooleanRig, 2, 100).unwrap();
        assert_eq!(g, vec![b(&[&[0, 1], &[1, 0]]), b(&[&[1, 0], &[0, 1]])]);
        let g = gl_enumerate(&ZMod::new(4).unwrap(), 1, 100).unwrap();
        assert_eq!(g, vec![RigMatrix::scalar(1), RigMatrix::scalar(3)]);
        assert_eq!(
            gl_enumerate(&BooleanRig, 1, 100).unwrap(),
            vec![RigMatrix::scalar(true)]
        );
        assert_eq!(gl_enumerate(&BooleanRig, 3, 1000).unwrap().len(), 6);
        assert!(gl_enumerate(&BooleanRig, 3, 100).is_err());
        assert!(gl_enumerate(&IntegerRig, 1, 100).is_err());
    }

    #[test]
    fn sections() {
        assert_eq!(global_sections(1, 1, 1).unwrap().len(), 3);
        assert_eq!(global_sections(2, 1, 1).unwrap().len(), 5);
        assert_eq!(global_sections(2, 2, 2).unwrap().len(), 17);
        for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)] {
            let one = global_sections(n, m, 1).unwrap();
            for bound in 2..=3 {
                assert_eq!(global_sections(n, m, bound).unwrap(), one);
            }
        }
        assert_eq!(
            global_sections_with(Exec::Sequential, 2, 3, 1).unwrap(),
            global_sections_with(Exec::Parallel, 2, 3, 1).unwrap()
        );
    }

    #[test]
    fn hyperoctahedral() {
        for (n, order) in [(1, 2), (2, 8), (3, 48)] {
            let g = signed_perm_group(n);
            assert_eq!(g.len(), order);
            for a in &g {
                assert!(a.contraction_le_one());
                for c in &g {
                    assert!(g.contains(&a.mul(c).unwrap()));
                }
            }
        }
    }

    #[test]
    fn rig_names() {
        for s in [
            "boolean",
            "zmod:6",
            "tropical-unit",
            "tropical-nonneg",
            "int",
            "rational",
        ] {
            assert_eq!(s.parse::<RigName>().unwrap().to_string(), s);
        }
        assert!("zmod:0".parse::<RigName>().is_err());
        assert!("field".parse::<RigName>().is_err());
    }
}
