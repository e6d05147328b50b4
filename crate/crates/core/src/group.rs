//! Exact arithmetic for the three concrete group families used throughout the
//! crate: integer vectors `ℤⁿ`, reduced words in the free group `Fₙ`, and
//! finitely supported functions `ℕ → ℤ`.
//!
//! All values are immutable once built. Words are kept freely reduced and
//! finitely supported functions never store a zero, so structural equality is
//! group equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::fnl::FinSuppFn;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element of kind {found} used in a group of kind {expected}")]
    KindMismatch { expected: GroupKind, found: GroupKind },
    #[error("element of rank {found} used in a group of rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("cannot parse word `{text}`: {reason}")]
    WordSyntax { text: String, reason: String },
}

/// A signed generator: `k` stands for `g_k`, `-k` for `g_k⁻¹` (`k ≥ 1`).
pub type Letter = i32;

fn letter_key(l: Letter) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

/// A freely reduced word over `g1..gn` and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// The generator `g_index` (1-based).
    pub fn generator(index: usize) -> Self {
        assert!(index >= 1, "generators are numbered from 1");
        Word(vec![index as Letter])
    }

    /// Builds a word from arbitrary letters, freely reducing as it goes.
    ///
    /// Panics on the letter `0`, which names no generator.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index occurring in the word (0 for the identity).
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// `t⁻¹ · self · t`.
    pub fn conjugate_by(&self, t: &Word) -> Word {
        t.inverse().mul(self).mul(t)
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Exponent sum of each generator: the image in the abelianization `ℤⁿ`.
    pub fn abelianize(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &l in &self.0 {
            let i = l.unsigned_abs() as usize - 1;
            if i < rank {
                v[i] += l.signum() as i64;
            }
        }
        v
    }

    /// All reduced words of length at most `radius` over `rank` generators, in
    /// shortlex order (see [`Ord`] for `Word`).
    pub fn ball(rank: usize, radius: usize) -> Vec<Word> {
        let mut alphabet: Vec<Letter> = Vec::with_capacity(2 * rank);
        for k in 1..=rank as Letter {
            alphabet.push(k);
            alphabet.push(-k);
        }
        let mut out = vec![Word::identity()];
        let mut layer = vec![Word::identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &alphabet {
                    if w.0.last() == Some(&-l) {
                        continue;
                    }
                    let mut letters = w.0.clone();
                    letters.push(l);
                    next.push(Word(letters));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Shortlex order: shorter words first, then letter by letter with
/// `g1 < g1⁻¹ < g2 < g2⁻¹ < …`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                let c = letter_key(*a).cmp(&letter_key(*b));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *l > 0 {
                write!(f, "g{l}")?;
            } else {
                write!(f, "g{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GroupError;

    /// Accepts `e`, and space- or `*`-separated factors `gK` / `gK^m` with an
    /// optional integer exponent `m`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GroupError::WordSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "e" {
                continue;
            }
            let body = tok.strip_prefix('g').ok_or_else(|| err("factor must start with `g`"))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
                None => (body, 1),
            };
            let idx: Letter = idx.parse().map_err(|_| err("bad generator index"))?;
            if idx < 1 {
                return Err(err("generator indices start at 1"));
            }
            let l = if exp < 0 { -idx } else { idx };
            for _ in 0..exp.unsigned_abs() {
                letters.push(l);
            }
        }
        Ok(Word::from_letters(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    ZVec,
    FWord,
    FinSupp,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::ZVec => "zvec",
            GroupKind::FWord => "fword",
            GroupKind::FinSupp => "finsupp",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    #[default]
    Trivial,
    Coordinatewise,
}

/// An element of one of the concrete groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupElement {
    ZVec(Vec<i64>),
    FWord(Word),
    FinSupp(FinSuppFn),
}

impl GroupElement {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupElement::ZVec(_) => GroupKind::ZVec,
            GroupElement::FWord(_) => GroupKind::FWord,
            GroupElement::FinSupp(_) => GroupKind::FinSupp,
        }
    }

    pub fn as_zvec(&self) -> Option<&[i64]> {
        match self {
            GroupElement::ZVec(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            GroupElement::FWord(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::ZVec(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::FWord(w) => write!(f, "{w}"),
            GroupElement::FinSupp(g) => write!(f, "{g}"),
        }
    }
}

/// A partially ordered group from one of the three families.
///
/// JSON form: `{"kind":"zvec","rank":2,"order":"coordinatewise"}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PoGroup {
    pub kind: GroupKind,
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub order: OrderKind,
}

impl PoGroup {
    pub fn new(kind: GroupKind, rank: usize, order: OrderKind) -> Result<Self, GroupError> {
        let g = PoGroup { kind, rank, order };
        g.validate()?;
        Ok(g)
    }

    pub fn zvec(rank: usize) -> Self {
        PoGroup::new(GroupKind::ZVec, rank, OrderKind::Trivial).expect("positive rank")
    }

    pub fn fword(rank: usize) -> Self {
        PoGroup::new(GroupKind::FWord, rank, OrderKind::Trivial).expect("positive rank")
    }

    pub fn finsupp() -> Self {
        PoGroup { kind: GroupKind::FinSupp, rank: 0, order: OrderKind::Trivial }
    }

    pub fn with_order(mut self, order: OrderKind) -> Result<Self, GroupError> {
        self.order = order;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        match self.kind {
            GroupKind::ZVec | GroupKind::FWord if self.rank == 0 => {
                Err(GroupError::InvalidDescriptor(format!("{} needs a positive rank", self.kind)))
            }
            GroupKind::FWord if self.order == OrderKind::Coordinatewise => Err(
                GroupError::InvalidDescriptor("free groups carry only the trivial order".into()),
            ),
            _ => Ok(()),
        }
    }

    pub fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if a.kind() != self.kind {
            return Err(GroupError::KindMismatch { expected: self.kind, found: a.kind() });
        }
        match a {
            GroupElement::ZVec(v) if v.len() != self.rank => {
                Err(GroupError::RankMismatch { expected: self.rank, found: v.len() })
            }
            GroupElement::FWord(w) if w.max_generator() > self.rank => {
                Err(GroupError::RankMismatch { expected: self.rank, found: w.max_generator() })
            }
            _ => Ok(()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self.kind {
            GroupKind::ZVec => GroupElement::ZVec(vec![0; self.rank]),
            GroupKind::FWord => GroupElement::FWord(Word::identity()),
            GroupKind::FinSupp => GroupElement::FinSupp(FinSuppFn::zero()),
        }
    }

    /// The `index`-th generator (1-based): a standard basis vector, a
    /// one-letter word, or the indicator of `index - 1`.
    pub fn generator(&self, index: usize) -> Result<GroupElement, GroupError> {
        if index == 0 || (self.kind != GroupKind::FinSupp && index > self.rank) {
            return Err(GroupError::RankMismatch { expected: self.rank, found: index });
        }
        Ok(match self.kind {
            GroupKind::ZVec => {
                let mut v = vec![0; self.rank];
                v[index - 1] = 1;
                GroupElement::ZVec(v)
            }
            GroupKind::FWord => GroupElement::FWord(Word::generator(index)),
            GroupKind::FinSupp => GroupElement::FinSupp(FinSuppFn::basis(index as u64 - 1)),
        })
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (GroupElement::ZVec(x), GroupElement::ZVec(y)) => {
                GroupElement::ZVec(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupElement::FWord(x), GroupElement::FWord(y)) => GroupElement::FWord(x.mul(y)),
            (GroupElement::FinSupp(x), GroupElement::FinSupp(y)) => GroupElement::FinSupp(x.add(y)),
            _ => unreachable!("kinds checked above"),
        })
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(match a {
            GroupElement::ZVec(x) => GroupElement::ZVec(x.iter().map(|p| -p).collect()),
            GroupElement::FWord(x) => GroupElement::FWord(x.inverse()),
            GroupElement::FinSupp(x) => GroupElement::FinSupp(x.neg()),
        })
    }

    /// `a ≤ b` in the declared partial order. The trivial order is equality;
    /// the coordinatewise order compares entries (pointwise for functions).
    pub fn po_leq(&self, a: &GroupElement, b: &GroupElement) -> Result<bool, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match self.order {
            OrderKind::Trivial => a == b,
            OrderKind::Coordinatewise => match (a, b) {
                (GroupElement::ZVec(x), GroupElement::ZVec(y)) => x.iter().zip(y).all(|(p, q)| p <= q),
                (GroupElement::FinSupp(x), GroupElement::FinSupp(y)) => x.leq(y),
                _ => a == b,
            },
        })
    }

    /// Monoid generators of the positive cone `G⁺` (empty for the trivial
    /// order, whose positive cone is `{e}`).
    pub fn positive_generators(&self) -> Vec<GroupElement> {
        match (self.order, self.kind) {
            (OrderKind::Coordinatewise, GroupKind::ZVec) => {
                (1..=self.rank).map(|i| self.generator(i).expect("in range")).collect()
            }
            _ => Vec::new(),
        }
    }
}
