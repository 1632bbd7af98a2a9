//! Ideals, prime spectra, radicals and localizations of finite commutative
//! rigs, and a literal check of the structure sheaf on basic opens.
//!
//! Elements of a [`FiniteCRig`] are indices `0..size`. Ideals are closed
//! under addition and under multiplication by arbitrary elements, which is
//! what linear combinations `Σ bᵢ·aᵢ·dᵢ` reduce to over a commutative rig.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rig::{check_rig_laws, Rig, RigName};

/// A finite commutative rig given by operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCRig {
    name: String,
    zero: usize,
    one: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl FiniteCRig {
    /// Validates the tables and every rig law, including commutativity of
    /// multiplication.
    pub fn new(
        name: impl Into<String>,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::InvalidRig("empty carrier".into()));
        }
        for (what, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidRig(format!("{what} table is not {n}x{n}")));
            }
            if t.iter().flatten().any(|&x| x >= n) {
                return Err(Error::InvalidRig(format!(
                    "{what} table leaves the carrier"
                )));
            }
        }
        if zero >= n || one >= n {
            return Err(Error::InvalidRig("constants outside the carrier".into()));
        }
        let r = FiniteCRig {
            name: name.into(),
            zero,
            one,
            add,
            mul,
            labels: (0..n).map(|i| i.to_string()).collect(),
        };
        let report = check_rig_laws(&r, usize::MAX);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidRig(format!(
                "{} fails on {}",
                v.law, v.witness
            )));
        }
        Ok(r)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::InvalidRig("one label per element".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn zmod(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let n = n as usize;
        let table = |f: fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n)
                .map(|a| (0..n).map(|b| f(a, b) % n).collect())
                .collect()
        };
        Self::new(
            format!("zmod:{n}"),
            0,
            1 % n,
            table(|a, b| a + b),
            table(|a, b| a * b),
        )
    }

    pub fn boolean() -> Self {
        Self::new(
            "boolean",
            0,
            1,
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .expect("boolean tables are valid")
    }

    /// `{0, 1, a, a²}` with `max` as addition for `0 < 1 < a < a²` and
    /// `aⁱ·aʲ = a^{min(i+j, 2)}`: the max-times rig on `{0} ∪ {1, a, a², …}`
    /// with `a³ = a²`.
    pub fn tropical_quotient() -> Self {
        let add = (0..4).map(|i| (0..4).map(|j| i.max(j)).collect()).collect();
        let mul = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i == 0 || j == 0 {
                            0
                        } else {
                            (i + j - 1).min(3)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new("tropical-quotient", 0, 1, add, mul)
            .and_then(|r| r.with_labels(["0", "1", "a", "a^2"].map(String::from).to_vec()))
            .expect("tropical quotient tables are valid")
    }

    pub fn from_name(name: RigName) -> Result<Self> {
        match name {
            RigName::Boolean => Ok(Self::boolean()),
            RigName::ZMod(n) => Self::zmod(n),
            other => Err(Error::Invalid(format!("{other} is not a finite rig"))),
        }
    }

    /// Reads a rig from a table file. The format is line oriented with `#`
    /// comments:
    ///
    /// ```text
    /// size 2
    /// zero 0
    /// one 1
    /// add
    /// 0 1
    /// 1 1
    /// mul
    /// 0 0
    /// 0 1
    /// ```
    ///
    /// An optional `labels l0 l1 …` line names the elements.
    pub fn parse_table(name: &str, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let mut size = None;
        let (mut zero, mut one) = (None, None);
        let (mut add, mut mul) = (None, None);
        let mut labels = None;
        let bad = |msg: String| Error::InvalidRig(msg);
        let num = |s: Option<&str>, what: &str| -> Result<usize> {
            s.and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidRig(format!("expected a number after `{what}`")))
        };
        while let Some(line) = lines.next() {
            let mut words = line.split_whitespace();
            let key = words.next().unwrap_or("");
            match key {
                "size" => size = Some(num(words.next(), key)?),
                "zero" => zero = Some(num(words.next(), key)?),
                "one" => one = Some(num(words.next(), key)?),
                "labels" => labels = Some(words.map(String::from).collect::<Vec<_>>()),
                "add" | "mul" => {
                    let n = size.ok_or_else(|| bad(format!("`{key}` before `size`")))?;
                    let mut rows = Vec::with_capacity(n);
                    for _ in 0..n {
                        let row = lines
                            .next()
                            .ok_or_else(|| bad(format!("{key} table is truncated")))?
                            .split_whitespace()
                            .map(|w| {
                                w.parse::<usize>()
                                    .map_err(|_| bad(format!("bad entry `{w}`")))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        rows.push(row);
                    }
                    if key == "add" {
                        add = Some(rows);
                    } else {
                        mul = Some(rows);
                    }
                }
                _ => return Err(bad(format!("unknown directive `{key}`"))),
            }
        }
        let r = Self::new(
            name,
            zero.ok_or_else(|| bad("missing `zero`".into()))?,
            one.ok_or_else(|| bad("missing `one`".into()))?,
            add.ok_or_else(|| bad("missing `add` table".into()))?,
            mul.ok_or_else(|| bad("missing `mul` table".into()))?,
        )?;
        match labels {
            Some(l) => r.with_labels(l),
            None => Ok(r),
        }
    }

    pub fn size(&self) -> usize {
        self.add.len()
    }

    pub fn zero_elem(&self) -> usize {
        self.zero
    }

    pub fn one_elem(&self) -> usize {
        self.one
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// Looks an element up by label.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label.trim())
    }

    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn times(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.times(acc, a))
    }

    /// Parses a comma-separated list of element labels.
    pub fn parse_subset(&self, text: &str) -> Result<Vec<usize>> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                self.element(s).ok_or_else(|| {
                    Error::Invalid(format!("`{s}` is not an element of {}", self.name))
                })
            })
            .collect()
    }
}

impl Rig for FiniteCRig {
    type Elem = usize;

    fn name(&self) -> String {
        self.name.clone()
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b]
    }
    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.size()).collect())
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..self.size())
    }
}

/// A subset closed under addition and multiplication by the rig, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(Vec<usize>);

impl Ideal {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn is_proper(&self, r: &FiniteCRig) -> bool {
        !self.contains(r.one)
    }

    pub fn display<'a>(&'a self, r: &'a FiniteCRig) -> impl fmt::Display + 'a {
        DisplayIdeal(self, r)
    }
}

struct DisplayIdeal<'a>(&'a Ideal, &'a FiniteCRig);

impl fmt::Display for DisplayIdeal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &x) in self.0 .0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(self.1.label(x))?;
        }
        f.write_str("}")
    }
}

/// Least ideal containing `generators` and zero.
pub fn ideal_generated(r: &FiniteCRig, generators: &[usize]) -> Ideal {
    let mut member = vec![false; r.size()];
    let mut queue: Vec<usize> = vec![r.zero];
    queue.extend_from_slice(generators);
    let mut members = Vec::new();
    while let Some(x) = queue.pop() {
        if std::mem::replace(&mut member[x], true) {
            continue;
        }
        members.push(x);
        for c in 0..r.size() {
            queue.push(r.times(c, x));
        }
        for &y in &members {
            queue.push(r.plus(x, y));
        }
    }
    members.sort_unstable();
    Ideal(members)
}

/// Every ideal, sorted.
pub fn all_ideals(r: &FiniteCRig) -> Vec<Ideal> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![ideal_generated(r, &[])];
    while let Some(a) = frontier.pop() {
        if !seen.insert(a.clone()) {
            continue;
        }
        for x in 0..r.size() {
            if !a.contains(x) {
                let mut gens = a.0.clone();
                gens.push(x);
                frontier.push(ideal_generated(r, &gens));
            }
        }
    }
    seen.into_iter().collect()
}

/// `a·b`, generated by the products `xy`.
pub fn ideal_product(r: &FiniteCRig, a: &Ideal, b: &Ideal) -> Ideal {
    let gens: Vec<usize> =
        a.0.iter()
            .flat_map(|&x| b.0.iter().map(move |&y| r.times(x, y)))
            .collect();
    ideal_generated(r, &gens)
}

/// `a + b`, generated by `a ∪ b`.
pub fn ideal_sum(r: &FiniteCRig, a: &Ideal, b: &Ideal) -> Ideal {
    let gens: Vec<usize> = a.0.iter().chain(&b.0).copied().collect();
    ideal_generated(r, &gens)
}

/// Proper with multiplicative complement.
pub fn is_prime(r: &FiniteCRig, p: &Ideal) -> bool {
    p.is_proper(r)
        && (0..r.size()).all(|x| {
            p.contains(x) || (0..r.size()).all(|y| p.contains(y) || !p.contains(r.times(x, y)))
        })
}

/// The prime spectrum with its Zariski topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecSpace {
    pub primes: Vec<Ideal>,
}

pub fn spec(r: &FiniteCRig) -> SpecSpace {
    SpecSpace {
        primes: all_ideals(r)
            .into_iter()
            .filter(|p| is_prime(r, p))
            .collect(),
    }
}

impl SpecSpace {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn all(&self) -> BTreeSet<usize> {
        (0..self.primes.len()).collect()
    }

    /// `V(a)`: indices of the primes containing `a`.
    pub fn closed_set(&self, a: &Ideal) -> BTreeSet<usize> {
        self.select(|p| a.is_subset(p))
    }

    /// `D(f)`: indices of the primes missing `f`.
    pub fn basic_open(&self, f: usize) -> BTreeSet<usize> {
        self.select(|p| !p.contains(f))
    }

    /// `I(Z)`: intersection of the primes in `z`; the whole carrier when `z`
    /// is empty.
    pub fn vanishing_ideal(&self, r: &FiniteCRig, z: &BTreeSet<usize>) -> Ideal {
        Ideal(
            (0..r.size())
                .filter(|&x| z.iter().all(|&i| self.primes[i].contains(x)))
                .collect(),
        )
    }

    /// Every closed set, as the distinct `V(a)`.
    pub fn closed_sets(&self, r: &FiniteCRig) -> BTreeSet<BTreeSet<usize>> {
        all_ideals(r).iter().map(|a| self.closed_set(a)).collect()
    }

    fn select(&self, keep: impl Fn(&Ideal) -> bool) -> BTreeSet<usize> {
        self.primes
            .iter()
            .enumerate()
            .filter(|(_, p)| keep(p))
            .map(|(i, _)| i)
            .collect()
    }
}

/// `√a = {x : xⁿ ∈ a for some n}`, cross-checked against the intersection of
/// the primes containing `a`. A mismatch is returned as an error.
pub fn radical(r: &FiniteCRig, a: &Ideal) -> Result<Ideal> {
    let by_powers = radical_by_powers(r, a);
    let sp = spec(r);
    let by_primes = sp.vanishing_ideal(r, &sp.closed_set(a));
    if by_powers != by_primes {
        return Err(Error::Characterization(format!(
            "radical of {} is {} by powers but {} by primes",
            a.display(r),
            by_powers.display(r),
            by_primes.display(r)
        )));
    }
    Ok(by_powers)
}

pub fn radical_by_powers(r: &FiniteCRig, a: &Ideal) -> Ideal {
    Ideal(
        (0..r.size())
            .filter(|&x| {
                let mut y = x;
                for _ in 0..=r.size() {
                    if a.contains(y) {
                        return true;
                    }
                    y = r.times(y, x);
                }
                false
            })
            .collect(),
    )
}

/// `S⁻¹r` with its canonical map `x ↦ x/1`.
#[derive(Debug, Clone)]
pub struct Localization {
    pub rig: FiniteCRig,
    /// Image of each element of the source.
    pub map: Vec<usize>,
    pub denominators: Vec<usize>,
    class_of: HashMap<(usize, usize), usize>,
}

impl Localization {
    /// The class of the fraction `x/s`.
    pub fn fraction(&self, x: usize, s: usize) -> Option<usize> {
        self.class_of.get(&(x, s)).copied()
    }
}

/// `{sᵏ : k ≥ 0}`.
pub fn powers(r: &FiniteCRig, s: usize) -> Vec<usize> {
    let mut out = BTreeSet::new();
    let mut x = r.one;
    while out.insert(x) {
        x = r.times(x, s);
    }
    out.into_iter().collect()
}

/// Complement of a prime.
pub fn complement(r: &FiniteCRig, p: &Ideal) -> Vec<usize> {
    (0..r.size()).filter(|&x| !p.contains(x)).collect()
}

/// Fractions `x/s`, `s ∈ S`, modulo `x/s ~ y/t ⇔ u·x·t = u·y·s` for some
/// `u ∈ S`.
pub fn localize(r: &FiniteCRig, s: &[usize]) -> Result<Localization> {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    if !set.contains(&r.one) {
        return Err(Error::NotMultiplicative(format!(
            "{s:?} does not contain 1"
        )));
    }
    for &a in &set {
        for &b in &set {
            if !set.contains(&r.times(a, b)) {
                return Err(Error::NotMultiplicative(format!(
                    "{}·{} leaves the subset",
                    r.label(a),
                    r.label(b)
                )));
            }
        }
    }
    let dens: Vec<usize> = set.into_iter().collect();
    let pairs: Vec<(usize, usize)> = (0..r.size())
        .flat_map(|x| dens.iter().map(move |&d| (x, d)))
        .collect();
    let equiv = |&(x, a): &(usize, usize), &(y, b): &(usize, usize)| {
        let (l, rr) = (r.times(x, b), r.times(y, a));
        dens.iter().any(|&u| r.times(u, l) == r.times(u, rr))
    };
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut class_of = HashMap::new();
    for p in &pairs {
        match classes.iter().position(|c| equiv(&c[0], p)) {
            Some(i) => {
                if !classes[i].iter().all(|q| equiv(q, p)) {
                    return Err(Error::Characterization(
                        "fraction relation is not transitive".into(),
                    ));
                }
                classes[i].push(*p);
                class_of.insert(*p, i);
            }
            None => {
                class_of.insert(*p, classes.len());
                classes.push(vec![*p]);
            }
        }
    }
    let k = classes.len();
    let op =
        |f: &dyn Fn((usize, usize), (usize, usize)) -> (usize, usize)| -> Result<Vec<Vec<usize>>> {
            let mut table = vec![vec![0; k]; k];
            for (i, ci) in classes.iter().enumerate() {
                for (j, cj) in classes.iter().enumerate() {
                    let v = class_of[&f(ci[0], cj[0])];
                    // Varying one argument at a time covers all representatives.
                    if ci.iter().any(|&a| class_of[&f(a, cj[0])] != v)
                        || cj.iter().any(|&b| class_of[&f(ci[0], b)] != v)
                    {
                        return Err(Error::Characterization(
                            "fraction operations are ill-defined".into(),
                        ));
                    }
                    table[i][j] = v;
                }
            }
            Ok(table)
        };
    let add = op(&|(x, a), (y, b)| (r.plus(r.times(x, b), r.times(y, a)), r.times(a, b)))?;
    let mul = op(&|(x, a), (y, b)| (r.times(x, y), r.times(a, b)))?;
    let labels = classes
        .iter()
        .map(|c| {
            let (x, d) = c[0];
            if d == r.one {
                r.label(x).to_string()
            } else {
                format!("{}/{}", r.label(x), r.label(d))
            }
        })
        .collect();
    let rig = FiniteCRig::new(
        format!("{}[S^-1]", r.name),
        class_of[&(r.zero, r.one)],
        class_of[&(r.one, r.one)],
        add,
        mul,
    )?
    .with_labels(labels)?;
    let map = (0..r.size()).map(|x| class_of[&(x, r.one)]).collect();
    Ok(Localization {
        rig,
        map,
        denominators: dens,
        class_of,
    })
}

/// Localization at the complement of a prime.
pub fn stalk(r: &FiniteCRig, p: &Ideal) -> Result<Localization> {
    localize(r, &complement(r, p))
}

/// Ideals not contained in any other proper ideal.
pub fn maximal_ideals(r: &FiniteCRig) -> Vec<Ideal> {
    let proper: Vec<Ideal> = all_ideals(r)
        .into_iter()
        .filter(|a| a.is_proper(r))
        .collect();
    proper
        .iter()
        .filter(|a| !proper.iter().any(|b| b != *a && a.is_subset(b)))
        .cloned()
        .collect()
}

/// `φ⁻¹(a)` for a map of carriers given as a lookup table.
pub fn preimage(map: &[usize], a: &Ideal) -> Ideal {
    Ideal((0..map.len()).filter(|&x| a.contains(map[x])).collect())
}

/// Whether `map` is a rig homomorphism `r → t`.
pub fn is_homomorphism(r: &FiniteCRig, t: &FiniteCRig, map: &[usize]) -> bool {
    map.len() == r.size()
        && map[r.zero] == t.zero
        && map[r.one] == t.one
        && (0..r.size()).all(|a| {
            (0..r.size()).all(|b| {
                map[r.plus(a, b)] == t.plus(map[a], map[b])
                    && map[r.times(a, b)] == t.times(map[a], map[b])
            })
        })
}

/// A rig isomorphism `a → b` by backtracking, if one exists.
pub fn find_isomorphism(a: &FiniteCRig, b: &FiniteCRig) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(a: &FiniteCRig, b: &FiniteCRig, map: &[usize]) -> bool {
        let n = a.size();
        for x in 0..n {
            for y in 0..n {
                if map[x] == usize::MAX || map[y] == usize::MAX {
                    continue;
                }
                for (s, t) in [
                    (a.plus(x, y), b.plus(map[x], map[y])),
                    (a.times(x, y), b.times(map[x], map[y])),
                ] {
                    if map[s] != usize::MAX && map[s] != t {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(a: &FiniteCRig, b: &FiniteCRig, x: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if x == a.size() {
            return is_homomorphism(a, b, map);
        }
        for y in 0..b.size() {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map) && go(a, b, x + 1, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }
    if go(a, b, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Primes of `S⁻¹r` against primes of `r` missing `S`, under contraction.
#[derive(Debug, Clone)]
pub struct LocalizationSpecReport {
    /// `(prime of S⁻¹r, its contraction)`.
    pub contractions: Vec<(Ideal, Ideal)>,
    pub expected: Vec<Ideal>,
    pub order_preserved: bool,
}

impl LocalizationSpecReport {
    pub fn passed(&self) -> bool {
        let mut got: Vec<&Ideal> = self.contractions.iter().map(|(_, c)| c).collect();
        got.sort();
        got.dedup();
        got.len() == self.contractions.len()
            && got.into_iter().eq(self.expected.iter())
            && self.order_preserved
    }
}

pub fn localization_spec_check(r: &FiniteCRig, s: &[usize]) -> Result<LocalizationSpecReport> {
    let loc = localize(r, s)?;
    let local_primes = spec(&loc.rig).primes;
    let contractions: Vec<(Ideal, Ideal)> = local_primes
        .iter()
        .map(|q| (q.clone(), preimage(&loc.map, q)))
        .collect();
    let expected = spec(r)
        .primes
        .into_iter()
        .filter(|p| s.iter().all(|&x| !p.contains(x)))
        .collect();
    let order_preserved = contractions.iter().all(|(q1, c1)| {
        contractions
            .iter()
            .all(|(q2, c2)| q1.is_subset(q2) == c1.is_subset(c2))
    });
    Ok(LocalizationSpecReport {
        contractions,
        expected,
        order_preserved,
    })
}

/// Outcome of comparing `r_s` with the sections over `D(s)`.
#[derive(Debug, Clone)]
pub struct Theorem1Report {
    pub s: usize,
    /// Indices into `spec(r)` of the points of `D(s)`.
    pub open_set: Vec<usize>,
    /// Size of `r_s`.
    pub localized_size: usize,
    /// Number of families over `D(s)` that are locally fractions.
    pub sections: usize,
    /// Number of families examined.
    pub families: usize,
    pub injective: bool,
    pub surjective: bool,
    pub preserves_operations: bool,
}

impl Theorem1Report {
    pub fn passed(&self) -> bool {
        self.injective
            && self.surjective
            && self.preserves_operations
            && self.localized_size == self.sections
    }
}

/// Maximum number of families enumerated by [`theorem1_check`].
pub const THEOREM1_FAMILY_BUDGET: usize = 1_000_000;

/// Computes `O(D(s))` as the families `(f_p ∈ r_p)_{p ∈ D(s)}` that are
/// locally fractions, by exhaustive enumeration, and checks that
/// `r_s → O(D(s))`, `a/sᵏ ↦ (a/sᵏ)_p`, is a bijective rig homomorphism.
pub fn theorem1_check(r: &FiniteCRig, s: usize) -> Result<Theorem1Report> {
    let sp = spec(r);
    let open: Vec<usize> = sp.basic_open(s).into_iter().collect();
    let stalks: Vec<Localization> = open
        .iter()
        .map(|&i| stalk(r, &sp.primes[i]))
        .collect::<Result<_>>()?;
    let families: usize = stalks
        .iter()
        .try_fold(1usize, |acc, l| acc.checked_mul(l.rig.size()))
        .filter(|&n| n <= THEOREM1_FAMILY_BUDGET)
        .ok_or_else(|| Error::Budget(format!("too many families over D({})", r.label(s))))?;

    // A family is locally a fraction if every point has a basic
    // neighbourhood D(g) ⊆ D(s) and a fraction a/t, t outside every prime of
    // D(g), representing the family on D(g).
    let local_fractions: Vec<(Vec<usize>, Vec<usize>)> = {
        let mut out = BTreeMap::<Vec<usize>, BTreeSet<Vec<usize>>>::new();
        for g in 0..r.size() {
            let nbhd: Vec<usize> = sp.basic_open(g).into_iter().collect();
            if nbhd.is_empty() || !nbhd.iter().all(|i| open.contains(i)) {
                continue;
            }
            let pos: Vec<usize> = nbhd
                .iter()
                .map(|i| open.binary_search(i).expect("subset"))
                .collect();
            for t in 0..r.size() {
                if nbhd.iter().any(|&i| sp.primes[i].contains(t)) {
                    continue;
                }
                for a in 0..r.size() {
                    let vals: Vec<usize> = pos
                        .iter()
                        .map(|&k| stalks[k].fraction(a, t).expect("t is a denominator"))
                        .collect();
                    out.entry(pos.clone()).or_default().insert(vals);
                }
            }
        }
        out.into_iter()
            .flat_map(|(pos, vals)| vals.into_iter().map(move |v| (pos.clone(), v)))
            .collect()
    };
    let is_section = |fam: &[usize]| {
        (0..open.len()).all(|k| {
            local_fractions.iter().any(|(pos, vals)| {
                pos.contains(&k) && pos.iter().zip(vals).all(|(&j, &v)| fam[j] == v)
            })
        })
    };
    let mut sections = BTreeSet::new();
    let mut fam = vec![0usize; open.len()];
    for _ in 0..families {
        if is_section(&fam) {
            sections.insert(fam.clone());
        }
        for (k, slot) in fam.iter_mut().enumerate() {
            *slot += 1;
            if *slot < stalks[k].rig.size() {
                break;
            }
            *slot = 0;
        }
    }

    let loc = localize(r, &powers(r, s))?;
    let psi_of = |x: usize, d: usize| -> Vec<usize> {
        stalks
            .iter()
            .map(|st| {
                st.fraction(x, d)
                    .expect("powers of s avoid every prime of D(s)")
            })
            .collect()
    };
    let mut psi: Vec<Option<Vec<usize>>> = vec![None; loc.rig.size()];
    let mut well_defined = true;
    for x in 0..r.size() {
        for &d in &loc.denominators {
            let c = loc.fraction(x, d).expect("denominator of r_s");
            let v = psi_of(x, d);
            match &psi[c] {
                Some(w) if *w != v => well_defined = false,
                Some(_) => {}
                None => psi[c] = Some(v),
            }
        }
    }
    let psi: Vec<Vec<usize>> = psi
        .into_iter()
        .map(|v| v.expect("every class is hit"))
        .collect();
    let images: BTreeSet<&Vec<usize>> = psi.iter().collect();
    let injective = images.len() == psi.len();
    let surjective = images.iter().all(|v| sections.contains(*v)) && images.len() == sections.len();
    let n = loc.rig.size();
    let pointwise = |u: &[usize], v: &[usize], plus: bool| -> Vec<usize> {
        stalks
            .iter()
            .enumerate()
            .map(|(k, st)| {
                if plus {
                    st.rig.plus(u[k], v[k])
                } else {
                    st.rig.times(u[k], v[k])
                }
            })
            .collect()
    };
    let preserves_operations = well_defined
        && psi[loc.rig.zero_elem()]
            == stalks
                .iter()
                .map(|st| st.rig.zero_elem())
                .collect::<Vec<_>>()
        && psi[loc.rig.one_elem()]
            == stalks
                .iter()
                .map(|st| st.rig.one_elem())
                .collect::<Vec<_>>()
        && (0..n).all(|a| {
            (0..n).all(|b| {
                psi[loc.rig.plus(a, b)] == pointwise(&psi[a], &psi[b], true)
                    && psi[loc.rig.times(a, b)] == pointwise(&psi[a], &psi[b], false)
            })
        });
    Ok(Theorem1Report {
        s,
        open_set: open,
        localized_size: n,
        sections: sections.len(),
        families,
        injective,
        surjective,
        preserves_operations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(xs: &[usize]) -> Ideal {
        Ideal(xs.to_vec())
    }

    #[test]
    fn generated_ideals() {
        let z6 = FiniteCRig::zmod(6).unwrap();
        assert_eq!(ideal_generated(&z6, &[]), ideal(&[0]));
        assert_eq!(ideal_generated(&z6, &[2]), ideal(&[0, 2, 4]));
        let b = FiniteCRig::boolean();
        assert_eq!(ideal_generated(&b, &[1]), ideal(&[0, 1]));
        assert_eq!(all_ideals(&z6).len(), 4);
        assert_eq!(all_ideals(&FiniteCRig::zmod(12).unwrap()).len(), 6);
    }

    #[test]
    fn spectra() {
        assert_eq!(spec(&FiniteCRig::boolean()).primes, vec![ideal(&[0])]);
        let z6 = FiniteCRig::zmod(6).unwrap();
        let sp = spec(&z6);
        assert_eq!(sp.primes, vec![ideal(&[0, 2, 4]), ideal(&[0, 3])]);
        assert_eq!(
            spec(&FiniteCRig::zmod(7).unwrap()).primes,
            vec![ideal(&[0])]
        );
        assert_eq!(sp.closed_set(&ideal(&[0])), sp.all());
        assert_eq!(sp.basic_open(1), sp.all());
        assert!(sp.basic_open(0).is_empty());
        assert_eq!(sp.basic_open(2), BTreeSet::from([1]));
        let q = FiniteCRig::tropical_quotient();
        assert_eq!(spec(&q).primes, vec![ideal(&[0]), ideal(&[0, 2, 3])]);
    }

    #[test]
    fn topology_identities() {
        for n in [6, 8, 12, 30] {
            let r = FiniteCRig::zmod(n).unwrap();
            let sp = spec(&r);
            let ideals = all_ideals(&r);
            for a in &ideals {
                for b in &ideals {
                    let (va, vb) = (sp.closed_set(a), sp.closed_set(b));
                    let join: BTreeSet<usize> = va.union(&vb).copied().collect();
                    assert_eq!(join, sp.closed_set(&ideal_product(&r, a, b)));
                    let meet: BTreeSet<usize> = va.intersection(&vb).copied().collect();
                    assert_eq!(meet, sp.closed_set(&ideal_sum(&r, a, b)));
                }
            }
            for f in 0..r.size() {
                for g in 0..r.size() {
                    let meet: BTreeSet<usize> = sp
                        .basic_open(f)
                        .intersection(&sp.basic_open(g))
                        .copied()
                        .collect();
                    assert_eq!(meet, sp.basic_open(r.times(f, g)));
                }
            }
        }
    }

    #[test]
    fn radicals() {
        let z8 = FiniteCRig::zmod(8).unwrap();
        assert_eq!(radical(&z8, &ideal(&[0])).unwrap(), ideal(&[0, 2, 4, 6]));
        let z6 = FiniteCRig::zmod(6).unwrap();
        assert_eq!(radical(&z6, &ideal(&[0])).unwrap(), ideal(&[0]));
        for p in spec(&z6).primes {
            assert_eq!(radical(&z6, &p).unwrap(), p);
        }
        let q = FiniteCRig::tropical_quotient();
        assert_eq!(radical(&q, &ideal(&[0, 3])).unwrap(), ideal(&[0, 2, 3]));
    }

    #[test]
    fn localizations() {
        let z6 = FiniteCRig::zmod(6).unwrap();
        let z3 = FiniteCRig::zmod(3).unwrap();
        let z2 = FiniteCRig::zmod(2).unwrap();
        let at3 = stalk(&z6, &ideal(&[0, 3])).unwrap();
        assert!(find_isomorphism(&at3.rig, &z3).is_some());
        assert!(is_homomorphism(&z6, &at3.rig, &at3.map));
        let at2 = stalk(&z6, &ideal(&[0, 2, 4])).unwrap();
        assert!(find_isomorphism(&at2.rig, &z2).is_some());
        let units = localize(&z6, &[1, 5]).unwrap();
        assert!(find_isomorphism(&units.rig, &z6).is_some());
        assert!(matches!(
            localize(&z6, &[1, 2, 3]),
            Err(Error::NotMultiplicative(_))
        ));
        assert!(matches!(
            localize(&z6, &[5]),
            Err(Error::NotMultiplicative(_))
        ));
        assert_eq!(localize(&z6, &powers(&z6, 0)).unwrap().rig.size(), 1);
    }

    #[test]
    fn local_at_primes() {
        for n in [4, 12, 18, 30] {
            let r = FiniteCRig::zmod(n).unwrap();
            for p in spec(&r).primes {
                let loc = stalk(&r, &p).unwrap();
                let max = maximal_ideals(&loc.rig);
                assert_eq!(max.len(), 1);
                let image: Vec<usize> = p.elements().iter().map(|&x| loc.map[x]).collect();
                assert_eq!(max[0], ideal_generated(&loc.rig, &image));
            }
        }
    }

    #[test]
    fn localization_homeomorphism() {
        let r = FiniteCRig::zmod(12).unwrap();
        for s in 0..12 {
            assert!(localization_spec_check(&r, &powers(&r, s))
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn theorem1_examples() {
        let z6 = FiniteCRig::zmod(6).unwrap();
        let rep = theorem1_check(&z6, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(
            (rep.localized_size, rep.sections, rep.open_set.len()),
            (3, 3, 1)
        );
        let rep = theorem1_check(&z6, 1).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.localized_size, 6);
        let rep = theorem1_check(&z6, 0).unwrap();
        assert!(rep.passed());
        assert_eq!((rep.localized_size, rep.sections), (1, 1));
    }

    #[test]
    fn table_parser() {
        let text = "# boolean\nsize 2\nzero 0\none 1\nadd\n0 1\n1 1\nmul\n0 0\n0 1\n";
        assert_eq!(
            FiniteCRig::parse_table("boolean", text).unwrap(),
            FiniteCRig::boolean()
        );
        let bad = "size 2\nzero 0\none 1\nadd\n0 1\n1 0\nmul\n0 0\n0 0\n";
        assert!(matches!(
            FiniteCRig::parse_table("x", bad),
            Err(Error::InvalidRig(_))
        ));
        assert!(FiniteCRig::parse_table("x", "size 2\nadd\n0 1\n").is_err());
        let q = FiniteCRig::tropical_quotient();
        assert_eq!(q.parse_subset("0, a^2").unwrap(), vec![0, 3]);
        assert!(q.parse_subset("b").is_err());
    }
}
