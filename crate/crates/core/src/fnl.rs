//! The lattice-ordered group `H` of finitely supported functions `ℕ → ℤ` with
//! pointwise operations, together with its polars, support-based prime
//! subgroups and the truncated verification routines built on them.
//!
//! In `H` every principal convex ℓ-subgroup, principal polar and principal
//! ideal generated by `f` is `{h : supp(h) ⊆ supp(f)}`; [`SupportSubgroup`]
//! records which role a given support set plays. The infinite statements about
//! `H` are checked on truncations: functions supported in `{0..level-1}` with
//! entries in `[-bound, bound]`, enumerated exhaustively.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FnlError {
    #[error("expected a positive element, got {0}")]
    NotPositive(FinSuppFn),
    #[error("support of {f} escapes the truncation level {level}")]
    OutsideLevel { f: FinSuppFn, level: u64 },
    #[error("truncation level {level} must exceed the point index {n}")]
    LevelTooSmall { n: u64, level: u64 },
    #[error("cannot parse function `{0}`")]
    Syntax(String),
}

/// A finitely supported function `ℕ → ℤ`. Zero values are never stored, so
/// the key set is exactly the support.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, i64>", into = "BTreeMap<u64, i64>")]
pub struct FinSuppFn(BTreeMap<u64, i64>);

// String keys keep deserialization working inside untagged enums, where map
// keys are buffered as strings.
impl TryFrom<BTreeMap<String, i64>> for FinSuppFn {
    type Error = FnlError;

    fn try_from(map: BTreeMap<String, i64>) -> Result<Self, Self::Error> {
        let mut pairs = Vec::with_capacity(map.len());
        for (k, v) in map {
            let n = k.trim().parse::<u64>().map_err(|_| FnlError::Syntax(k.clone()))?;
            pairs.push((n, v));
        }
        Ok(FinSuppFn::from_pairs(pairs))
    }
}

impl From<FinSuppFn> for BTreeMap<u64, i64> {
    fn from(f: FinSuppFn) -> Self {
        f.0
    }
}

impl FinSuppFn {
    /// The identity `0̄`.
    pub fn zero() -> Self {
        FinSuppFn(BTreeMap::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            *map.entry(k).or_insert(0) += v;
        }
        map.retain(|_, v| *v != 0);
        FinSuppFn(map)
    }

    /// The function with value 1 at `n` and 0 elsewhere.
    pub fn basis(n: u64) -> Self {
        FinSuppFn::from_pairs([(n, 1)])
    }

    /// The indicator function of a finite set.
    pub fn indicator<I: IntoIterator<Item = u64>>(set: I) -> Self {
        FinSuppFn::from_pairs(set.into_iter().map(|n| (n, 1)))
    }

    pub fn get(&self, n: u64) -> i64 {
        self.0.get(&n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.0.keys().copied().collect()
    }

    pub fn max_support(&self) -> Option<u64> {
        self.0.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    fn pointwise(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        let keys: BTreeSet<u64> = self.0.keys().chain(other.0.keys()).copied().collect();
        FinSuppFn::from_pairs(keys.into_iter().map(|k| (k, op(self.get(k), other.get(k)))))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        FinSuppFn(self.0.iter().map(|(k, v)| (*k, -v)).collect())
    }

    pub fn scale(&self, m: i64) -> Self {
        FinSuppFn::from_pairs(self.iter().map(|(k, v)| (k, m * v)))
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.pointwise(other, i64::min)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.pointwise(other, i64::max)
    }

    /// `|f| = f ∨ -f`.
    pub fn abs(&self) -> Self {
        FinSuppFn(self.0.iter().map(|(k, v)| (*k, v.abs())).collect())
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.0.keys().chain(other.0.keys()).all(|&k| self.get(k) <= other.get(k))
    }

    pub fn is_positive(&self) -> bool {
        self.0.values().all(|v| *v > 0)
    }

    /// `|f| ∧ |g| = 0̄`.
    pub fn orthogonal(&self, other: &Self) -> bool {
        self.abs().meet(&other.abs()).is_zero()
    }

    pub fn within_level(&self, level: u64) -> bool {
        self.max_support().is_none_or(|m| m < level)
    }
}

impl fmt::Display for FinSuppFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for FinSuppFn {
    type Err = FnlError;

    /// Accepts `{0:3, 2:-1}` as well as JSON `{"0":3}`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || FnlError::Syntax(text.to_string());
        let body = text.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(err)?;
        let mut pairs = Vec::new();
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once(':').ok_or_else(err)?;
            let k = k.trim().trim_matches('"').parse::<u64>().map_err(|_| err())?;
            let v = v.trim().parse::<i64>().map_err(|_| err())?;
            pairs.push((k, v));
        }
        Ok(FinSuppFn::from_pairs(pairs))
    }
}

/// Which construction a support set stands for. In `H` they coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupRole {
    PrincipalConvex,
    Polar,
    Ideal,
}

/// A subgroup of `H` described by a support constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum SupportSubgroup {
    /// `{h : supp(h) ⊆ support}`.
    Within { support: BTreeSet<u64>, role: SubgroupRole },
    /// `{h : supp(h) ∩ support = ∅}`, the polar of anything supported on `support`.
    Avoiding { support: BTreeSet<u64> },
}

impl SupportSubgroup {
    pub fn contains(&self, h: &FinSuppFn) -> bool {
        match self {
            SupportSubgroup::Within { support, .. } => h.0.keys().all(|k| support.contains(k)),
            SupportSubgroup::Avoiding { support } => h.0.keys().all(|k| !support.contains(k)),
        }
    }
}

pub fn principal_convex(f: &FinSuppFn) -> SupportSubgroup {
    SupportSubgroup::Within { support: f.support(), role: SubgroupRole::PrincipalConvex }
}

pub fn principal_ideal(f: &FinSuppFn) -> SupportSubgroup {
    SupportSubgroup::Within { support: f.support(), role: SubgroupRole::Ideal }
}

/// `f⊥`.
pub fn polar(f: &FinSuppFn) -> SupportSubgroup {
    SupportSubgroup::Avoiding { support: f.support() }
}

/// `f⊥⊥`.
pub fn double_polar(f: &FinSuppFn) -> SupportSubgroup {
    SupportSubgroup::Within { support: f.support(), role: SubgroupRole::Polar }
}

/// `h ∈ 𝔠(f)`, decided by support containment.
pub fn principal_convex_contains(f: &FinSuppFn, h: &FinSuppFn) -> bool {
    principal_convex(f).contains(h)
}

/// Smallest `m ≥ 1` with `|h| ≤ m·|f|` pointwise, if any. This is the
/// dominance description of `𝔠(f)` and is kept independent of the support
/// shortcut so the two can be compared.
pub fn dominating_multiple(f: &FinSuppFn, h: &FinSuppFn) -> Option<i64> {
    let (fa, ha) = (f.abs(), h.abs());
    let mut m = 1;
    for (k, v) in ha.iter() {
        let d = fa.get(k);
        if d == 0 {
            return None;
        }
        m = m.max((v + d - 1) / d);
    }
    Some(m)
}

/// A finite window onto `H`: supports inside `{0..level-1}`, entries in
/// `[-bound, bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub level: u64,
    pub bound: i64,
}

impl Truncation {
    pub fn new(level: u64, bound: i64) -> Self {
        Truncation { level, bound }
    }

    /// Every function in the window, `(2·bound+1)^level` of them, in a fixed
    /// order.
    pub fn elements(&self) -> Vec<FinSuppFn> {
        let mut out = vec![FinSuppFn::zero()];
        for n in 0..self.level {
            let mut next = Vec::with_capacity(out.len() * (2 * self.bound as usize + 1));
            for f in &out {
                for v in -self.bound..=self.bound {
                    let mut g = f.clone();
                    if v != 0 {
                        g.0.insert(n, v);
                    }
                    next.push(g);
                }
            }
            out = next;
        }
        out
    }

    /// The positive elements of the window (including `0̄`).
    pub fn positive_elements(&self) -> Vec<FinSuppFn> {
        self.elements().into_iter().filter(FinSuppFn::is_positive).collect()
    }
}

/// `{x ∈ universe : x ⊥ s for every s ∈ set}` computed by brute force.
pub fn brute_polar(set: &[FinSuppFn], universe: &[FinSuppFn]) -> Vec<FinSuppFn> {
    universe.iter().filter(|x| set.iter().all(|s| x.orthogonal(s))).cloned().collect()
}

/// A candidate prime subgroup of `H`, given as a membership predicate.
#[derive(Clone)]
pub enum PrimeDescriptor {
    /// `𝔪ₙ = {f : f(n) = 0}`.
    Point(u64),
    /// All of `H`; never a prime.
    Whole,
    /// Any other support-level predicate.
    Custom { name: String, member: Arc<dyn Fn(&FinSuppFn) -> bool + Send + Sync> },
}

impl fmt::Debug for PrimeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeDescriptor::Point(n) => write!(f, "Point({n})"),
            PrimeDescriptor::Whole => write!(f, "Whole"),
            PrimeDescriptor::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

impl PrimeDescriptor {
    pub fn custom(name: &str, member: impl Fn(&FinSuppFn) -> bool + Send + Sync + 'static) -> Self {
        PrimeDescriptor::Custom { name: name.to_string(), member: Arc::new(member) }
    }

    pub fn contains(&self, f: &FinSuppFn) -> bool {
        match self {
            PrimeDescriptor::Point(n) => f.get(*n) == 0,
            PrimeDescriptor::Whole => true,
            PrimeDescriptor::Custom { member, .. } => member(f),
        }
    }
}

/// Convexity, ℓ-subgroup and primeness checks of `p` over a finite universe.
/// Products and lattice combinations are evaluated exactly even when they leave
/// the window; only the quantifiers range over `universe`.
fn prime_subgroup_checks(p: &PrimeDescriptor, universe: &[FinSuppFn], report: &mut Report) {
    let pairs = (universe.len() * universe.len()) as u64;
    let proper = universe.iter().find(|f| !p.contains(f));
    report.push(match proper {
        Some(_) => Check::pass("proper", "p ≠ H", universe.len() as u64),
        None => Check::fail(
            "proper",
            "p ≠ H",
            universe.len() as u64,
            json!("every element of the window lies in p"),
        ),
    });

    report.push(Check::from_witness(
        "contains_identity",
        "0̄ ∈ p",
        1,
        (!p.contains(&FinSuppFn::zero())).then(|| json!("0̄ ∉ p")),
    ));

    let mut subgroup = None;
    let mut sublattice = None;
    let mut convex = None;
    let mut prime = None;
    for f in universe {
        let fin = p.contains(f);
        if subgroup.is_none() && fin && !p.contains(&f.neg()) {
            subgroup = Some(json!({ "f": f, "reason": "-f ∉ p" }));
        }
        for g in universe {
            let gin = p.contains(g);
            if subgroup.is_none() && fin && gin && !p.contains(&f.add(g)) {
                subgroup = Some(json!({ "f": f, "g": g, "reason": "f+g ∉ p" }));
            }
            if sublattice.is_none() && fin && gin && (!p.contains(&f.meet(g)) || !p.contains(&f.join(g))) {
                sublattice = Some(json!({ "f": f, "g": g }));
            }
            // solidity: |f| ≤ |g|, g ∈ p ⟹ f ∈ p
            if convex.is_none() && gin && !fin && f.abs().leq(&g.abs()) {
                convex = Some(json!({ "inside": g, "dominated": f }));
            }
            if prime.is_none() && !fin && !gin && p.contains(&f.meet(g)) {
                prime = Some(json!({ "f": f, "g": g, "meet": f.meet(g) }));
            }
        }
    }
    report.push(Check::from_witness("subgroup", "closed under + and -", pairs, subgroup));
    report.push(Check::from_witness("sublattice", "closed under ∧ and ∨", pairs, sublattice));
    report.push(Check::from_witness("convex", "|f| ≤ |g| and g ∈ p imply f ∈ p", pairs, convex));
    report.push(Check::from_witness("prime", "f ∧ g ∈ p implies f ∈ p or g ∈ p", pairs, prime));
}

/// Verifies on the window that `𝔪ₙ = {f : f(n) = 0}` is a prime subgroup and
/// equals `⋃{x⊥ : x ∉ 𝔪ₙ}`, the characterisation of minimal primes.
pub fn minimal_prime_check(n: u64, trunc: Truncation) -> Result<Report, FnlError> {
    if trunc.level <= n {
        return Err(FnlError::LevelTooSmall { n, level: trunc.level });
    }
    let p = PrimeDescriptor::Point(n);
    let universe = trunc.elements();
    let mut report = Report::new(format!("minimal prime m_{n} at level {} box ±{}", trunc.level, trunc.bound));
    prime_subgroup_checks(&p, &universe, &mut report);

    let outside: Vec<&FinSuppFn> = universe.iter().filter(|x| !p.contains(x)).collect();
    let mut witness = None;
    for f in &universe {
        let in_union = outside.iter().any(|x| f.orthogonal(x));
        if in_union != p.contains(f) {
            witness = Some(json!({ "f": f, "in_p": p.contains(f), "in_union": in_union }));
            break;
        }
    }
    report.push(Check::from_witness(
        "minimal_characterisation",
        "p = ⋃{x⊥ : x ∉ p}",
        (universe.len() * outside.len()) as u64,
        witness,
    ));
    Ok(report)
}

/// Verifies on the window that `p` is a proper prime subgroup satisfying
/// `p = ⋃{x⊥⊥ : x ∈ p}`.
pub fn quasi_minimal_check(p: &PrimeDescriptor, trunc: Truncation) -> Report {
    let universe = trunc.elements();
    let mut report = Report::new(format!("quasi-minimality of {p:?} at level {}", trunc.level));
    prime_subgroup_checks(p, &universe, &mut report);
    let inside: Vec<&FinSuppFn> = universe.iter().filter(|x| p.contains(x)).collect();
    let mut witness = None;
    for f in &universe {
        let in_union = inside.iter().any(|x| double_polar(x).contains(f));
        if in_union != p.contains(f) {
            witness = Some(json!({ "f": f, "in_p": p.contains(f), "in_union": in_union }));
            break;
        }
    }
    report.push(Check::from_witness(
        "quasi_minimal",
        "p = ⋃{x⊥⊥ : x ∈ p}",
        (universe.len() * inside.len()) as u64,
        witness,
    ));
    report
}

/// `w` is a weak unit relative to the window: `w ∧ |x| = 0̄` forces `x = 0̄`.
pub fn is_weak_unit_at(w: &FinSuppFn, trunc: Truncation) -> Option<FinSuppFn> {
    trunc.elements().into_iter().find(|x| !x.is_zero() && w.meet(&x.abs()).is_zero())
}

/// Complement witness for a positive `f`: `g` is the indicator of
/// `{0..level-1} ∖ supp(f)`, so `f ∧ g = 0̄` and `f ∨ g` is a weak unit at
/// that level.
pub fn theorem75_witness(f: &FinSuppFn, level: u64) -> Result<(FinSuppFn, Report), FnlError> {
    if f.iter().any(|(_, v)| v < 0) {
        return Err(FnlError::NotPositive(f.clone()));
    }
    if !f.within_level(level) {
        return Err(FnlError::OutsideLevel { f: f.clone(), level });
    }
    let supp = f.support();
    let g = FinSuppFn::indicator((0..level).filter(|n| !supp.contains(n)));
    let mut report = Report::new(format!("complement of {f} at level {level}"));
    let meet = f.meet(&g);
    report.push(Check::from_witness(
        "orthogonal",
        "f ∧ g = 0̄",
        1,
        (!meet.is_zero()).then(|| json!({ "meet": meet })),
    ));
    let join = f.join(&g);
    let trunc = Truncation::new(level, 1);
    report.push(Check::from_witness(
        "weak_unit",
        "(f ∨ g) ∧ |x| = 0̄ implies x = 0̄",
        3u64.pow(level as u32),
        is_weak_unit_at(&join, trunc).map(|x| json!({ "x": x, "unit": join })),
    ));
    Ok((g, report))
}

/// Checks `𝔍(f) ∩ 𝔍(g) = 𝔍(f ∧ g)` for positive `f`, `g` over the window,
/// with ideal membership decided by the dominance route.
pub fn ideal_intersection_check(f: &FinSuppFn, g: &FinSuppFn, trunc: Truncation) -> Result<Report, FnlError> {
    for x in [f, g] {
        if x.iter().any(|(_, v)| v < 0) {
            return Err(FnlError::NotPositive(x.clone()));
        }
    }
    let fg = f.meet(g);
    let universe = trunc.elements();
    let witness = universe.iter().find(|h| {
        let left = dominating_multiple(f, h).is_some() && dominating_multiple(g, h).is_some();
        let right = dominating_multiple(&fg, h).is_some();
        left != right
    });
    let mut report = Report::new(format!("ideal intersection for {f}, {g}"));
    report.push(Check::from_witness(
        "ideal_intersection",
        "J(f) ∩ J(g) = J(f ∧ g)",
        universe.len() as u64,
        witness.map(|h| json!({ "h": h })),
    ));
    report.push(Check::from_witness(
        "support_identity",
        "supp(f ∧ g) = supp(f) ∩ supp(g)",
        1,
        (fg.support() != f.support().intersection(&g.support()).copied().collect())
            .then(|| json!({ "meet": fg })),
    ));
    Ok(report)
}

/// The basis function just past the support of `u`; no multiple of `|u|`
/// dominates it, so `u` is not a strong unit.
pub fn no_strong_unit_witness(u: &FinSuppFn) -> FinSuppFn {
    FinSuppFn::basis(u.max_support().map_or(0, |m| m + 1))
}

/// `w` certifies that `u` is not a strong unit: `w ≥ 0̄` and `w ∉ 𝔠(u)`.
pub fn verify_no_strong_unit(u: &FinSuppFn, w: &FinSuppFn) -> bool {
    w.is_positive() && !w.is_zero() && dominating_multiple(u, w).is_none()
}

/// ℓ-group laws over every triple of the window: lattice distributivity,
/// translation distributing over ∧ and ∨, and `|x+y| ≤ |x|+|y|+|x|`.
pub fn lgroup_laws(trunc: Truncation) -> Report {
    let universe = trunc.elements();
    let mut distributive = None;
    let mut translation = None;
    let mut abs_law = None;
    for x in &universe {
        for y in &universe {
            if abs_law.is_none() && !x.add(y).abs().leq(&x.abs().add(&y.abs()).add(&x.abs())) {
                abs_law = Some(json!({ "x": x, "y": y }));
            }
            for z in &universe {
                if distributive.is_none() && x.meet(&y.join(z)) != x.meet(y).join(&x.meet(z)) {
                    distributive = Some(json!({ "x": x, "y": y, "z": z }));
                }
                if translation.is_none()
                    && (z.add(&x.meet(y)) != z.add(x).meet(&z.add(y))
                        || z.add(&x.join(y)) != z.add(x).join(&z.add(y)))
                {
                    translation = Some(json!({ "x": x, "y": y, "z": z }));
                }
            }
        }
    }
    let n = universe.len() as u64;
    let mut report = Report::new(format!("ℓ-group laws at level {} box ±{}", trunc.level, trunc.bound));
    report.push(Check::from_witness("distributive", "x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)", n * n * n, distributive));
    report.push(Check::from_witness("translation", "z + (x ∧ y) = (z + x) ∧ (z + y), dually for ∨", n * n * n, translation));
    report.push(Check::from_witness("absolute_value", "|x+y| ≤ |x|+|y|+|x|", n * n, abs_law));
    report
}

fn predicate_mismatch(universe: &[FinSuppFn], a: impl Fn(&FinSuppFn) -> bool, b: impl Fn(&FinSuppFn) -> bool) -> Option<FinSuppFn> {
    universe.iter().find(|h| a(h) != b(h)).cloned()
}

/// Polar calculus on positive elements of the window, with every polar also
/// recomputed by brute force over the window:
/// `(f∧g)⊥⊥ = f⊥⊥ ∩ g⊥⊥`, `(f∨g)⊥⊥ = (f⊥⊥ ∪ g⊥⊥)⊥⊥`, `f⊥⊥ = 𝔠(f)`, and
/// the Boolean complement `f⊥ = g⊥⊥` for `g` the complementary indicator.
pub fn polar_calculus(trunc: Truncation) -> Report {
    let universe = trunc.elements();
    let positives = trunc.positive_elements();
    let brute_double = |f: &FinSuppFn| -> BTreeSet<FinSuppFn> {
        brute_polar(&brute_polar(std::slice::from_ref(f), &universe), &universe).into_iter().collect()
    };
    let double: BTreeMap<&FinSuppFn, BTreeSet<FinSuppFn>> = positives.iter().map(|f| (f, brute_double(f))).collect();

    let mut shortcut = None;
    let mut conp = None;
    let mut boolean = None;
    for f in &positives {
        let d = &double[f];
        if shortcut.is_none() {
            if let Some(h) = predicate_mismatch(&universe, |h| d.contains(h), |h| double_polar(f).contains(h)) {
                shortcut = Some(json!({ "f": f, "h": h }));
            }
        }
        if conp.is_none() {
            if let Some(h) = predicate_mismatch(&universe, |h| d.contains(h), |h| dominating_multiple(f, h).is_some()) {
                conp = Some(json!({ "f": f, "h": h }));
            }
        }
        if boolean.is_none() {
            let supp = f.support();
            let g = FinSuppFn::indicator((0..trunc.level).filter(|n| !supp.contains(n)));
            let f_perp: BTreeSet<FinSuppFn> = brute_polar(std::slice::from_ref(f), &universe).into_iter().collect();
            if f_perp != brute_double(&g) {
                boolean = Some(json!({ "f": f, "complement": g }));
            }
        }
    }

    let mut meet_law = None;
    let mut join_law = None;
    for f in &positives {
        for g in &positives {
            let (df, dg) = (&double[f], &double[g]);
            if meet_law.is_none() {
                let lhs = brute_double(&f.meet(g));
                let rhs: BTreeSet<FinSuppFn> = df.intersection(dg).cloned().collect();
                if lhs != rhs {
                    meet_law = Some(json!({ "f": f, "g": g }));
                }
            }
            if join_law.is_none() {
                let lhs = brute_double(&f.join(g));
                let union: Vec<FinSuppFn> = df.union(dg).cloned().collect();
                let rhs: BTreeSet<FinSuppFn> = brute_polar(&brute_polar(&union, &universe), &universe).into_iter().collect();
                if lhs != rhs {
                    join_law = Some(json!({ "f": f, "g": g }));
                }
            }
        }
    }

    let p = positives.len() as u64;
    let u = universe.len() as u64;
    let mut report = Report::new(format!("polar calculus at level {} box ±{}", trunc.level, trunc.bound));
    report.push(Check::from_witness("double_polar_support", "f⊥⊥ = {h : supp(h) ⊆ supp(f)}", p * u, shortcut));
    report.push(Check::from_witness("conp_equals_polp", "𝔠(f) = f⊥⊥", p * u, conp));
    report.push(Check::from_witness("meet_polar", "(f ∧ g)⊥⊥ = f⊥⊥ ∩ g⊥⊥", p * p, meet_law));
    report.push(Check::from_witness("join_polar", "(f ∨ g)⊥⊥ = f⊥⊥ ∨ g⊥⊥", p * p, join_law));
    report.push(Check::from_witness("boolean_complement", "f⊥ is the principal polar of the complementary support", p, boolean));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> FinSuppFn {
        s.parse().unwrap()
    }

    #[test]
    fn pointwise_operations() {
        assert_eq!(f("{0:-2, 3:1}").abs(), f("{0:2, 3:1}"));
        assert_eq!(f("{0:2}").meet(&f("{1:1}")), FinSuppFn::zero());
        let x = f("{0:-2, 4:7}");
        assert_eq!(x.join(&x.neg()), x.abs());
        assert_eq!(f("{0:1}").add(&f("{0:-1}")), FinSuppFn::zero());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(f("{}"), FinSuppFn::zero());
        assert_eq!(f(r#"{"2": 5}"#), FinSuppFn::from_pairs([(2, 5)]));
        assert_eq!(f("{1:0, 2:3}").support(), BTreeSet::from([2]));
        assert!("0:3".parse::<FinSuppFn>().is_err());
    }

    #[test]
    fn principal_convex_membership() {
        assert!(principal_convex_contains(&f("{0:1}"), &f("{0:100}")));
        assert_eq!(dominating_multiple(&f("{0:1}"), &f("{0:100}")), Some(100));
        assert!(!principal_convex_contains(&f("{0:1}"), &f("{1:1}")));
        for u in [f("{}"), f("{3:-2}"), f("{0:1, 1:1}")] {
            assert!(principal_convex_contains(&u, &FinSuppFn::zero()));
        }
    }

    #[test]
    fn polars_by_support() {
        let x = f("{0:2, 1:-1}");
        let dp = double_polar(&x);
        assert!(dp.contains(&f("{0:5, 1:9}")));
        assert!(!dp.contains(&f("{2:1}")));
        // 0̄⊥⊥ is the trivial subgroup
        let triv = double_polar(&FinSuppFn::zero());
        assert!(triv.contains(&FinSuppFn::zero()));
        assert!(!triv.contains(&f("{0:1}")));
        // orthogonality is disjointness of supports
        let (a, b) = (f("{0:1, 2:1}"), f("{1:-4}"));
        assert!(polar(&a).contains(&b) && polar(&b).contains(&a));
        assert!(a.orthogonal(&b));
        assert!(!polar(&a).contains(&f("{2:1}")));
    }

    #[test]
    fn window_sizes() {
        assert_eq!(Truncation::new(3, 2).elements().len(), 125);
        assert_eq!(Truncation::new(0, 2).elements(), vec![FinSuppFn::zero()]);
        assert_eq!(Truncation::new(2, 1).positive_elements().len(), 4);
    }

    #[test]
    fn point_prime_is_minimal() {
        let r = minimal_prime_check(0, Truncation::new(3, 2)).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert!(minimal_prime_check(3, Truncation::new(3, 1)).is_err());
    }

    #[test]
    fn point_prime_polar_of_outside_element() {
        // f(n) ≠ 0: f ∉ 𝔪ₙ and f⊥ ⊆ 𝔪ₙ
        let p = PrimeDescriptor::Point(1);
        let x = f("{1:-3, 2:1}");
        assert!(!p.contains(&x));
        for h in Truncation::new(3, 1).elements() {
            if polar(&x).contains(&h) {
                assert!(p.contains(&h));
            }
        }
    }

    #[test]
    fn positive_meets_never_fall_into_point_prime() {
        let p = PrimeDescriptor::Point(0);
        let pos = Truncation::new(3, 2).positive_elements();
        for a in &pos {
            for b in &pos {
                if !p.contains(a) && !p.contains(b) {
                    assert!(!p.contains(&a.meet(b)));
                }
            }
        }
    }

    #[test]
    fn quasi_minimality() {
        let t = Truncation::new(3, 1);
        assert!(quasi_minimal_check(&PrimeDescriptor::Point(2), t).passed());
        let whole = quasi_minimal_check(&PrimeDescriptor::Whole, t);
        assert!(!whole.check("proper").unwrap().passed);
        let even = PrimeDescriptor::custom("f(0) even", |x| x.get(0) % 2 == 0);
        let r = quasi_minimal_check(&even, Truncation::new(2, 2));
        assert!(!r.passed());
        assert!(!r.check("convex").unwrap().passed);
        assert!(r.check("convex").unwrap().witness.is_some());
    }

    #[test]
    fn complement_witness() {
        let (g, r) = theorem75_witness(&f("{0:3}"), 2).unwrap();
        assert_eq!(g, f("{1:1}"));
        assert!(r.passed());
        assert_eq!(f("{0:3}").join(&g).support(), BTreeSet::from([0, 1]));

        let (g, r) = theorem75_witness(&FinSuppFn::zero(), 1).unwrap();
        assert_eq!(g, f("{0:1}"));
        assert!(r.passed());

        let full = f("{0:1, 1:2, 2:1}");
        let (g, r) = theorem75_witness(&full, 3).unwrap();
        assert!(g.is_zero() && r.passed());
        assert!(is_weak_unit_at(&full, Truncation::new(3, 1)).is_none());

        assert!(matches!(theorem75_witness(&f("{0:-1}"), 2), Err(FnlError::NotPositive(_))));
        assert!(matches!(theorem75_witness(&f("{5:1}"), 2), Err(FnlError::OutsideLevel { .. })));
    }

    #[test]
    fn ideal_intersections() {
        let t = Truncation::new(4, 1);
        let r = ideal_intersection_check(&f("{0:1, 1:1}"), &f("{1:2, 2:1}"), t).unwrap();
        assert!(r.passed());
        assert_eq!(f("{0:1, 1:1}").meet(&f("{1:2, 2:1}")).support(), BTreeSet::from([1]));
        assert!(ideal_intersection_check(&f("{0:1}"), &f("{1:1}"), t).unwrap().passed());
        let x = f("{0:2, 3:1}");
        assert!(ideal_intersection_check(&x, &x, t).unwrap().passed());
    }

    #[test]
    fn strong_unit_certificates() {
        assert_eq!(no_strong_unit_witness(&f("{0:5}")), f("{1:1}"));
        assert_eq!(no_strong_unit_witness(&FinSuppFn::zero()), f("{0:1}"));
        let wide = FinSuppFn::indicator(0..10);
        assert_eq!(no_strong_unit_witness(&wide), f("{10:1}"));
        for u in [f("{0:5}"), FinSuppFn::zero(), wide] {
            assert!(verify_no_strong_unit(&u, &no_strong_unit_witness(&u)));
        }
    }

    #[test]
    fn laws_small_window() {
        assert!(lgroup_laws(Truncation::new(2, 2)).passed());
        let r = polar_calculus(Truncation::new(3, 1));
        assert!(r.passed(), "{r:#?}");
    }
}
