//! Finite Stone duality.
//!
//! A finite distributive lattice is the lattice of downsets of its poset of
//! join-irreducibles. Its prime ideals, ordered by inclusion and topologised
//! by the sets `â = { I : a ∉ I }`, form the dual space. Everything here is
//! finite, so sets of points and sets of poset elements are `u64` bitmasks.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::fnl::{principal_convex, principal_convex_contains, FinSuppFn, SubgroupRole, SupportSubgroup};
use crate::report::{Check, Report};

pub const DEFAULT_MAX_J: usize = 12;
/// Hard ceiling: masks are `u64` and downset enumeration is `2^m`.
pub const MAX_ELEMENTS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoneError {
    #[error("relation is not a strict order: {0}")]
    NotAnOrder(String),
    #[error("{what} has {size} elements, budget is {limit}")]
    Budget { what: &'static str, size: usize, limit: usize },
}

/// A strict partial order on `0..m` stored as a boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PosetJson", into = "PosetJson")]
pub struct FinPoset {
    lt: Vec<Vec<bool>>,
}

/// `{"size": m, "less": [[i, j], ...]}` with `i < j`. Input pairs are closed
/// transitively; output lists cover pairs only.
#[derive(Serialize, Deserialize)]
struct PosetJson {
    size: usize,
    #[serde(default)]
    less: Vec<(usize, usize)>,
}

impl TryFrom<PosetJson> for FinPoset {
    type Error = StoneError;
    fn try_from(j: PosetJson) -> Result<Self, StoneError> {
        FinPoset::from_relations(j.size, &j.less)
    }
}

impl From<FinPoset> for PosetJson {
    fn from(p: FinPoset) -> Self {
        PosetJson { size: p.len(), less: p.covers() }
    }
}

impl FinPoset {
    /// Checks irreflexivity and transitivity of `lt`.
    pub fn new(lt: Vec<Vec<bool>>) -> Result<Self, StoneError> {
        let m = lt.len();
        if let Some(row) = lt.iter().position(|r| r.len() != m) {
            return Err(StoneError::NotAnOrder(format!("row {row} has the wrong length")));
        }
        for i in 0..m {
            if lt[i][i] {
                return Err(StoneError::NotAnOrder(format!("{i} < {i}")));
            }
            for j in 0..m {
                for k in 0..m {
                    if lt[i][j] && lt[j][k] && !lt[i][k] {
                        return Err(StoneError::NotAnOrder(format!("{i} < {j} < {k} but not {i} < {k}")));
                    }
                }
            }
        }
        Ok(FinPoset { lt })
    }

    /// Transitive closure of the given pairs; a cycle is an error.
    pub fn from_relations(m: usize, pairs: &[(usize, usize)]) -> Result<Self, StoneError> {
        let mut lt = vec![vec![false; m]; m];
        for &(i, j) in pairs {
            if i >= m || j >= m {
                return Err(StoneError::NotAnOrder(format!("pair ({i}, {j}) out of range for size {m}")));
            }
            lt[i][j] = true;
        }
        for k in 0..m {
            let through = lt[k].clone();
            for row in lt.iter_mut().filter(|r| r[k]) {
                for (x, &y) in row.iter_mut().zip(&through) {
                    *x |= y;
                }
            }
        }
        FinPoset::new(lt)
    }

    pub fn antichain(m: usize) -> Self {
        FinPoset { lt: vec![vec![false; m]; m] }
    }

    pub fn chain(m: usize) -> Self {
        FinPoset { lt: (0..m).map(|i| (0..m).map(|j| i < j).collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.lt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lt.is_empty()
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt[i][j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn dual(&self) -> Self {
        let m = self.len();
        FinPoset { lt: (0..m).map(|i| (0..m).map(|j| self.lt[j][i]).collect()).collect() }
    }

    /// Pairs `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if self.lt[i][j] && !(0..m).any(|k| self.lt[i][k] && self.lt[k][j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn down_mask(&self, i: usize) -> u64 {
        (0..self.len()).filter(|&j| self.leq(j, i)).fold(0, |m, j| m | 1 << j)
    }

    pub fn is_downset(&self, mask: u64) -> bool {
        (0..self.len()).all(|i| mask >> i & 1 == 0 || self.down_mask(i) & !mask == 0)
    }

    /// First element whose strict upper bounds are not a chain.
    pub fn root_system_witness(&self) -> Option<(usize, usize, usize)> {
        let m = self.len();
        for x in 0..m {
            for y in 0..m {
                for z in y + 1..m {
                    if self.lt[x][y] && self.lt[x][z] && !self.comparable(y, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_root_system(&self) -> bool {
        self.root_system_witness().is_none()
    }

    fn encode(&self, perm: &[usize]) -> u64 {
        let m = self.len();
        let mut code = 0u64;
        for i in 0..m {
            for j in 0..m {
                code = code << 1 | self.lt[perm[i]][perm[j]] as u64;
            }
        }
        code
    }

    /// Lexicographically least relation code over all relabellings.
    pub fn canonical_code(&self) -> u64 {
        let m = self.len();
        assert!(m <= 8, "canonical codes are limited to 8 elements");
        let mut best = u64::MAX;
        let mut perm: Vec<usize> = (0..m).collect();
        permute(&mut perm, 0, &mut |p| best = best.min(self.encode(p)));
        best
    }

    pub fn is_isomorphic(&self, other: &FinPoset) -> bool {
        self.len() == other.len() && self.canonical_code() == other.canonical_code()
    }

    /// Same poset with a new maximal-or-incomparable element above `below`.
    fn extend(&self, below: u64) -> FinPoset {
        let m = self.len();
        let mut lt: Vec<Vec<bool>> = self.lt.iter().map(|r| r.iter().copied().chain([false]).collect()).collect();
        lt.push(vec![false; m + 1]);
        for (i, row) in lt.iter_mut().enumerate().take(m) {
            row[m] = below >> i & 1 == 1;
        }
        FinPoset { lt }
    }

    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n");
        for i in 0..self.len() {
            match labels {
                Some(l) => writeln!(s, "  n{i} [label=\"{}\"];", l[i].replace('"', "\\\"")).unwrap(),
                None => writeln!(s, "  n{i};").unwrap(),
            }
        }
        for (i, j) in self.covers() {
            writeln!(s, "  n{i} -> n{j};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// One representative of every isomorphism class of posets on `m` points.
///
/// Grows representatives of size `m - 1` by a new maximal element placed
/// above each of their downsets; every poset arises this way by deleting a
/// maximal element.
pub fn posets_up_to_iso(m: usize) -> Vec<FinPoset> {
    assert!(m <= 8, "poset enumeration is limited to 8 elements");
    let mut level = vec![FinPoset::antichain(0)];
    for _ in 0..m {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut next = Vec::new();
        for p in &level {
            for d in downsets(p) {
                let q = p.extend(d);
                if seen.insert(q.canonical_code()) {
                    next.push(q);
                }
            }
        }
        level = next;
    }
    level
}

fn downsets(p: &FinPoset) -> Vec<u64> {
    let mut out: Vec<u64> = (0..1u64 << p.len()).filter(|&m| p.is_downset(m)).collect();
    out.sort_by_key(|&m| mask_key(m, p.len()));
    out
}

/// Size first, then the characteristic vector read from index 0.
fn mask_key(mask: u64, width: usize) -> (u32, Vec<bool>) {
    (mask.count_ones(), (0..width).map(|i| mask >> i & 1 == 1).collect())
}

fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// The lattice of downsets of `base`, with union and intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDistLattice {
    base: FinPoset,
    elements: Vec<u64>,
    index: HashMap<u64, usize>,
}

#[derive(Serialize)]
struct LatticeJson<'a> {
    base: &'a FinPoset,
    elements: Vec<Vec<usize>>,
}

impl Serialize for FinDistLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LatticeJson { base: &self.base, elements: self.elements.iter().map(|&m| mask_members(m)).collect() }.serialize(s)
    }
}

pub fn downset_lattice(j: &FinPoset, max_j: usize) -> Result<FinDistLattice, StoneError> {
    let limit = max_j.min(MAX_ELEMENTS);
    if j.len() > limit {
        return Err(StoneError::Budget { what: "base poset", size: j.len(), limit });
    }
    let elements = downsets(j);
    let index = elements.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(FinDistLattice { base: j.clone(), elements, index })
}

impl FinDistLattice {
    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The downset backing element `a`.
    pub fn mask(&self, a: usize) -> u64 {
        self.elements[a]
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a] & !self.elements[b] == 0
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index[&(self.elements[a] & self.elements[b])]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.index[&(self.elements[a] | self.elements[b])]
    }

    /// Elements that are not the join of the elements strictly below them.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| {
                let below = (0..self.len()).filter(|&b| b != a && self.leq(b, a)).fold(0, |m, b| m | self.elements[b]);
                a != self.bottom() && below != self.elements[a]
            })
            .collect()
    }

    /// Elements that are not the meet of the elements strictly above them.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        let full = self.elements[self.top()];
        (0..self.len())
            .filter(|&a| {
                let above = (0..self.len()).filter(|&b| b != a && self.leq(a, b)).fold(full, |m, b| m & self.elements[b]);
                a != self.top() && above != self.elements[a]
            })
            .collect()
    }

    /// Join-irreducibles ordered by inclusion.
    pub fn join_irreducible_poset(&self) -> FinPoset {
        poset_of(&self.join_irreducibles(), |a, b| a != b && self.leq(a, b))
    }

    pub fn is_ideal(&self, members: &[bool]) -> bool {
        let n = self.len();
        (0..n).any(|a| members[a])
            && (0..n).all(|a| !members[a] || (0..n).all(|b| !self.leq(b, a) || members[b]))
            && (0..n).all(|a| (0..n).all(|b| !(members[a] && members[b]) || members[self.join(a, b)]))
    }

    pub fn is_prime_ideal(&self, members: &[bool]) -> bool {
        let n = self.len();
        self.is_ideal(members)
            && !members[self.top()]
            && (0..n).all(|a| (0..n).all(|b| !members[self.meet(a, b)] || members[a] || members[b]))
    }
}

fn poset_of(items: &[usize], lt: impl Fn(usize, usize) -> bool) -> FinPoset {
    FinPoset::new(items.iter().map(|&a| items.iter().map(|&b| lt(a, b)).collect()).collect())
        .expect("inclusion is a strict order")
}

/// A prime ideal of a finite lattice: the principal ideal of a
/// meet-irreducible element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeIdeal {
    pub generator: usize,
    pub members: Vec<usize>,
}

impl PrimeIdeal {
    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }
}

/// Proper prime ideals, sorted by size then characteristic vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeIdealSet {
    pub ideals: Vec<PrimeIdeal>,
}

pub fn prime_ideals(d: &FinDistLattice) -> PrimeIdealSet {
    let mut ideals: Vec<PrimeIdeal> = d
        .meet_irreducibles()
        .into_iter()
        .map(|g| PrimeIdeal { generator: g, members: (0..d.len()).filter(|&b| d.leq(b, g)).collect() })
        .collect();
    let key = |p: &PrimeIdeal| {
        let chi: Vec<bool> = (0..d.len()).map(|a| p.contains(a)).collect();
        (p.members.len(), chi)
    };
    ideals.sort_by_key(key);
    PrimeIdealSet { ideals }
}

/// A finite space given by its specialisation order and a declared base of
/// compact opens. `compact` says whether the lattice behind the base has a
/// maximum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteSpace {
    pub order: FinPoset,
    pub base: Vec<u64>,
    pub compact: bool,
}

impl FiniteSpace {
    /// The space whose opens are the downsets of `order`; its specialisation
    /// order is `order` itself.
    pub fn from_poset(order: &FinPoset) -> Self {
        FiniteSpace { order: order.clone(), base: downsets(order), compact: true }
    }

    pub fn points(&self) -> usize {
        self.order.len()
    }

    fn full(&self) -> u64 {
        if self.points() == 64 { u64::MAX } else { (1u64 << self.points()) - 1 }
    }

    /// Every union of base sets.
    pub fn opens(&self) -> BTreeSet<u64> {
        let mut opens = BTreeSet::from([0u64]);
        for &b in &self.base {
            let grown: Vec<u64> = opens.iter().map(|o| o | b).collect();
            opens.extend(grown);
        }
        opens
    }

    /// `y` lies in the closure of `{x}`: every base set holding `y` holds `x`.
    pub fn specialises(&self, x: usize, y: usize) -> bool {
        self.base.iter().all(|&b| b >> y & 1 == 0 || b >> x & 1 == 1)
    }

    pub fn closure_of_point(&self, x: usize) -> u64 {
        (0..self.points()).filter(|&y| self.specialises(x, y)).fold(0, |m, y| m | 1 << y)
    }

    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        self.order.to_dot(labels)
    }
}

/// The dual of a finite distributive lattice.
#[derive(Debug, Clone, Serialize)]
pub struct StoneDual {
    pub ideals: PrimeIdealSet,
    pub space: FiniteSpace,
}

impl StoneDual {
    /// `â` for element `a` of the lattice.
    pub fn basic_open(&self, a: usize) -> u64 {
        self.space.base[a]
    }

    pub fn labels(&self) -> Vec<String> {
        self.ideals.ideals.iter().map(|p| format!("I{}", p.generator)).collect()
    }
}

pub fn stone_dual(d: &FinDistLattice) -> StoneDual {
    let ideals = prime_ideals(d);
    let ps = &ideals.ideals;
    let order = poset_of(&(0..ps.len()).collect::<Vec<_>>(), |i, j| {
        i != j && ps[i].members.iter().all(|&a| ps[j].contains(a))
    });
    let base = (0..d.len())
        .map(|a| ps.iter().enumerate().filter(|(_, p)| !p.contains(a)).fold(0, |m, (i, _)| m | 1 << i))
        .collect();
    StoneDual { ideals, space: FiniteSpace { order, base, compact: true } }
}

/// Names of the checks that make a space generalised spectral; the remaining
/// checks of [`verify_spectral`] are complete normality and root system.
pub const SPECTRAL_CHECKS: [&str; 6] = ["t0", "covers", "base_intersections", "sober", "specialisation", "compact"];

pub fn is_spectral(r: &Report) -> bool {
    SPECTRAL_CHECKS.iter().all(|n| r.check(n).is_some_and(|c| c.passed))
}

pub fn verify_spectral(space: &FiniteSpace) -> Report {
    let n = space.points();
    let mut r = Report::new("spectral space");
    let pairs = (n * n) as u64;

    let t0 = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| space.base.iter().all(|&b| (b >> x & 1) == (b >> y & 1)));
    r.push(Check::from_witness(
        "t0",
        "distinct points are separated by an open set",
        pairs,
        t0.map(|(x, y)| json!({"points": [x, y]})),
    ));

    let union = space.base.iter().fold(0, |m, b| m | b);
    let missing = space.full() & !union;
    r.push(Check::from_witness(
        "covers",
        "the compact opens cover the space",
        space.base.len() as u64,
        (missing != 0).then(|| json!({"uncovered": mask_members(missing)})),
    ));

    let members: BTreeSet<u64> = space.base.iter().copied().collect();
    let mut meet_fail = None;
    'outer: for &a in &space.base {
        for &b in &space.base {
            if !members.contains(&(a & b)) {
                meet_fail = Some(json!({"a": mask_members(a), "b": mask_members(b)}));
                break 'outer;
            }
        }
    }
    r.push(Check::from_witness(
        "base_intersections",
        "compact opens are closed under finite intersections",
        (space.base.len() * space.base.len()) as u64,
        meet_fail,
    ));

    let opens = space.opens();
    let closures: Vec<u64> = (0..n).map(|x| space.closure_of_point(x)).collect();
    let closed: BTreeSet<u64> = opens.iter().map(|o| space.full() & !o).collect();
    let mut sober_fail = None;
    for &f in closed.iter().filter(|&&f| f != 0) {
        let reducible = closed.iter().any(|&a| a != f && a & !f == 0 && closed.iter().any(|&b| b != f && b & !f == 0 && a | b == f));
        if reducible {
            continue;
        }
        let generic: Vec<usize> = (0..n).filter(|&x| closures[x] == f).collect();
        if generic.len() != 1 {
            sober_fail = Some(json!({"closed_set": mask_members(f), "generic_points": generic}));
            break;
        }
    }
    r.push(Check::from_witness(
        "sober",
        "every irreducible closed set is the closure of a unique point",
        closed.len() as u64,
        sober_fail,
    ));

    let spec = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| x != y && space.specialises(x, y) != space.order.lt(x, y));
    r.push(Check::from_witness(
        "specialisation",
        "the specialisation order coincides with the declared inclusion order",
        pairs,
        spec.map(|(x, y)| json!({"x": x, "y": y, "specialises": space.specialises(x, y), "declared": space.order.lt(x, y)})),
    ));

    let whole_is_compact = members.contains(&space.full());
    r.push(Check::from_witness(
        "compact",
        "the space is a compact open exactly when the lattice has a maximum",
        1,
        (whole_is_compact != space.compact)
            .then(|| json!({"whole_space_in_base": whole_is_compact, "lattice_has_maximum": space.compact})),
    ));

    let mut cn_fail = None;
    'cn: for z in 0..n {
        for x in 0..n {
            for y in 0..n {
                let both = closures[z] >> x & 1 == 1 && closures[z] >> y & 1 == 1;
                if both && closures[y] >> x & 1 == 0 && closures[x] >> y & 1 == 0 {
                    cn_fail = Some(json!({"z": z, "x": x, "y": y}));
                    break 'cn;
                }
            }
        }
    }
    r.push(Check::from_witness(
        "completely_normal",
        "two points in the closure of one singleton are comparable under specialisation",
        (n * n * n) as u64,
        cn_fail,
    ));

    r.push(Check::from_witness(
        "root_system",
        "the upper bounds of any point form a chain",
        n as u64,
        space.order.root_system_witness().map(|(x, y, z)| json!({"point": x, "incomparable_upper_bounds": [y, z]})),
    ));
    r
}

/// `â ∩ b̂ = (a∧b)^` and `â ∪ b̂ = (a∨b)^` for every pair, and `â = X`
/// exactly for the top.
pub fn basic_open_laws(d: &FinDistLattice, dual: &StoneDual) -> Report {
    let n = d.len();
    let mut r = Report::new("basic opens");
    let all = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let meet = all.clone().find(|&(a, b)| dual.basic_open(a) & dual.basic_open(b) != dual.basic_open(d.meet(a, b)));
    r.push(Check::from_witness("meet", "basic opens turn meets into intersections", (n * n) as u64, meet.map(|(a, b)| json!([a, b]))));
    let join = all.clone().find(|&(a, b)| dual.basic_open(a) | dual.basic_open(b) != dual.basic_open(d.join(a, b)));
    r.push(Check::from_witness("join", "basic opens turn joins into unions", (n * n) as u64, join.map(|(a, b)| json!([a, b]))));
    let whole = dual.space.full();
    let tops: Vec<usize> = (0..n).filter(|&a| dual.basic_open(a) == whole).collect();
    r.push(Check::from_witness(
        "top_reachable",
        "the whole space is a basic open exactly for the maximum",
        n as u64,
        (tops != [d.top()]).then(|| json!({"whole_space_from": tops, "top": d.top()})),
    ));
    let injective = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| dual.basic_open(a) == dual.basic_open(b));
    r.push(Check::from_witness("injective", "distinct elements have distinct basic opens", (n * n) as u64, injective.map(|(a, b)| json!([a, b]))));
    r
}

/// Principal convex subgroups of the finitely supported functions with
/// support inside `0..level`, as the lattice of subsets of `0..level`.
#[derive(Debug, Clone, Serialize)]
pub struct ConpTruncation {
    pub level: u64,
    pub lattice: FinDistLattice,
    pub provenance: Vec<SupportSubgroup>,
}

pub fn conp_lattice_of_fn_truncation(level: u64, max_n: usize) -> Result<ConpTruncation, StoneError> {
    let lattice = downset_lattice(&FinPoset::antichain(level as usize), max_n)?;
    let provenance = (0..lattice.len())
        .map(|a| SupportSubgroup::Within {
            support: mask_members(lattice.mask(a)).into_iter().map(|i| i as u64).collect(),
            role: SubgroupRole::PrincipalConvex,
        })
        .collect();
    Ok(ConpTruncation { level, lattice, provenance })
}

impl ConpTruncation {
    /// Each element agrees with the principal convex subgroup generated by
    /// the indicator of its support.
    pub fn provenance_check(&self) -> Check {
        let bad = (0..self.lattice.len()).find(|&a| {
            let f = FinSuppFn::indicator(mask_members(self.lattice.mask(a)).into_iter().map(|i| i as u64));
            principal_convex(&f) != self.provenance[a]
        });
        Check::from_witness(
            "provenance",
            "each lattice element is the principal convex subgroup of its support indicator",
            self.lattice.len() as u64,
            bad.map(|a| json!({"element": a})),
        )
    }
}

/// The whole lattice has no maximum: for every candidate top at level `N`,
/// a basis function at level `N + 1` escapes it.
pub fn non_compactness_certificate(levels: std::ops::RangeInclusive<u64>, max_n: usize) -> Result<Report, StoneError> {
    let mut r = Report::new("directed family without top");
    for level in levels {
        let t = conp_lattice_of_fn_truncation(level, max_n)?;
        let escape = FinSuppFn::basis(level);
        let caught = (0..t.lattice.len()).find(|&a| {
            let gen = FinSuppFn::indicator(mask_members(t.lattice.mask(a)).into_iter().map(|i| i as u64));
            principal_convex_contains(&gen, &escape)
        });
        r.push(Check::from_witness(
            &format!("level_{level}"),
            "no principal convex subgroup with support below the level contains the next basis function",
            t.lattice.len() as u64,
            caught.map(|a| json!({"candidate_top": mask_members(t.lattice.mask(a)), "escape": escape.to_string()})),
        ));
    }
    Ok(r)
}

/// Duals of the truncations are discrete: no specialisations and every
/// singleton is a basic open.
pub fn is_discrete(space: &FiniteSpace) -> bool {
    space.order.covers().is_empty() && (0..space.points()).all(|x| space.base.contains(&(1u64 << x)))
}
