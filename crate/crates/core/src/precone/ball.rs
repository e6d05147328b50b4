//! Bounded approximations of pre-cones on the free group `Fₙ`: a sign for
//! every reduced word of length at most `r`.
//!
//! Every property of a [`BallCone`] is checked only on words, products and
//! conjugates that stay inside its ball. Operations that need room for
//! conjugation state the radius they leave behind.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ConeError, Containment};
use crate::group::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Pos,
    Zero,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Zero => Sign::Zero,
            Sign::Neg => Sign::Pos,
        }
    }

    /// Membership of the word in the cone.
    pub fn in_cone(self) -> bool {
        self != Sign::Neg
    }

    pub fn containment(self) -> Containment {
        match self {
            Sign::Pos => Containment::Positive,
            Sign::Zero => Containment::Kernel,
            Sign::Neg => Containment::Negative,
        }
    }
}

/// The reduced words of length `≤ radius` in shortlex order, with index and
/// inverse lookups.
#[derive(Debug)]
pub struct Ball {
    pub rank: usize,
    pub radius: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    inverse: Vec<usize>,
}

impl Ball {
    pub fn new(rank: usize, radius: usize) -> Self {
        let words = Word::ball(rank, radius);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let inverse = words.iter().map(|w| index[&w.inverse()]).collect();
        Ball { rank, radius, words, index, inverse }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }
}

#[derive(Debug, Clone)]
pub struct BallCone {
    ball: Arc<Ball>,
    signs: Vec<Sign>,
}

impl PartialEq for BallCone {
    fn eq(&self, other: &Self) -> bool {
        self.ball.rank == other.ball.rank && self.ball.radius == other.ball.radius && self.signs == other.signs
    }
}

impl Eq for BallCone {}

impl BallCone {
    /// Builds a cone from signs on the ball. Each word or its inverse must be
    /// listed; listing both requires opposite signs. The identity is `Zero`.
    pub fn new(rank: usize, radius: usize, entries: &BTreeMap<Word, Sign>) -> Result<Self, ConeError> {
        Self::with_ball(Arc::new(Ball::new(rank, radius)), entries)
    }

    pub fn with_ball(ball: Arc<Ball>, entries: &BTreeMap<Word, Sign>) -> Result<Self, ConeError> {
        if ball.rank == 0 {
            return Err(ConeError::Invalid("rank must be positive".into()));
        }
        let mut signs: Vec<Option<Sign>> = vec![None; ball.len()];
        signs[0] = Some(Sign::Zero);
        for (w, s) in entries {
            if w.max_generator() > ball.rank {
                return Err(ConeError::RankMismatch { expected: ball.rank, found: w.max_generator() });
            }
            let i = ball.index_of(w).ok_or_else(|| ConeError::Invalid(format!("word {w} lies outside radius {}", ball.radius)))?;
            for (j, sj) in [(i, *s), (ball.inverse_index(i), s.flip())] {
                match signs[j] {
                    Some(old) if old != sj => {
                        return Err(ConeError::Invalid(format!("conflicting signs for {} and its inverse", ball.word(i))));
                    }
                    _ => signs[j] = Some(sj),
                }
            }
        }
        let signs = signs
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| ConeError::Invalid(format!("word {} is unclassified", ball.word(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BallCone { ball, signs })
    }

    /// Signs from a function on words. The function is consulted on the
    /// shortlex-smaller word of each inverse pair.
    pub fn from_fn(rank: usize, radius: usize, f: impl Fn(&Word) -> Sign) -> Self {
        let ball = Arc::new(Ball::new(rank, radius));
        let mut signs = vec![Sign::Zero; ball.len()];
        for i in 1..ball.len() {
            let j = ball.inverse_index(i);
            if i < j {
                let s = f(ball.word(i));
                signs[i] = s;
                signs[j] = s.flip();
            }
        }
        BallCone { ball, signs }
    }

    pub(crate) fn from_signs(ball: Arc<Ball>, signs: Vec<Sign>) -> Self {
        BallCone { ball, signs }
    }

    pub fn rank(&self) -> usize {
        self.ball.rank
    }

    pub fn radius(&self) -> usize {
        self.ball.radius
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, w: &Word) -> Option<Sign> {
        self.ball.index_of(w).map(|i| self.signs[i])
    }

    pub fn classify(&self, w: &Word) -> Result<Containment, ConeError> {
        if w.max_generator() > self.rank() {
            return Err(ConeError::RankMismatch { expected: self.rank(), found: w.max_generator() });
        }
        Ok(self.sign(w).map_or(Containment::OutOfScope, Sign::containment))
    }

    /// `(word, sign)` for every word of the ball.
    pub fn table(&self) -> impl Iterator<Item = (&Word, Sign)> {
        self.ball.words().iter().zip(self.signs.iter().copied())
    }

    pub fn is_proper(&self) -> bool {
        self.signs.iter().any(|s| *s != Sign::Zero)
    }

    fn in_cone(&self, w: &Word) -> Option<bool> {
        self.sign(w).map(Sign::in_cone)
    }

    /// Some `(w, u)` with `w, u ∈ C` but `wu ∉ C`, all three in the ball.
    pub fn submonoid_witness(&self) -> Option<(Word, Word)> {
        let words = self.ball.words();
        for (i, w) in words.iter().enumerate() {
            if !self.signs[i].in_cone() {
                continue;
            }
            for (j, u) in words.iter().enumerate() {
                if self.signs[j].in_cone() && self.in_cone(&w.mul(u)) == Some(false) {
                    return Some((w.clone(), u.clone()));
                }
            }
        }
        None
    }

    /// Pairs `(a, t)` with `a ≠ e`, `1 ≤ |t| ≤ budget` and `|a| + 2|t| ≤ r`.
    fn conjugation_pairs(&self, budget: usize) -> impl Iterator<Item = (usize, &Word)> + '_ {
        let words = self.ball.words();
        let r = self.radius();
        (1..words.len()).flat_map(move |i| {
            let room = (r - words[i].len()) / 2;
            words[1..].iter().take_while(move |t| t.len() <= room.min(budget)).map(move |t| (i, t))
        })
    }

    /// Some `(a, t)` with `a ∈ C` and `t⁻¹at ∉ C`.
    pub fn normality_witness(&self) -> Option<(Word, Word)> {
        self.conjugation_pairs(self.radius()).find_map(|(i, t)| {
            let a = self.ball.word(i);
            (self.signs[i].in_cone() && self.in_cone(&a.conjugate_by(t)) == Some(false)).then(|| (a.clone(), t.clone()))
        })
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// Some `(a, t₁, t₂)` where the conjugates `t a t⁻¹` do not share a sign:
    /// `t₁ a t₁⁻¹ ∈ C ∖ C⁻¹` and `t₂ a t₂⁻¹ ∈ C⁻¹ ∖ C`. Conjugators range over
    /// `|t| ≤ budget` with `|a| + 2|t| ≤ r`, including `t = e`.
    pub fn representability_witness(&self, budget: usize) -> Option<(Word, Word, Word)> {
        let words = self.ball.words();
        let r = self.radius();
        for a in &words[1..] {
            let room = ((r - a.len()) / 2).min(budget);
            let mut pos = None;
            let mut neg = None;
            for t in words.iter().take_while(|t| t.len() <= room) {
                let conj = t.mul(&a.mul(&t.inverse()));
                match self.sign(&conj) {
                    Some(Sign::Pos) if pos.is_none() => pos = Some(t.clone()),
                    Some(Sign::Neg) if neg.is_none() => neg = Some(t.clone()),
                    _ => {}
                }
                if let (Some(p), Some(n)) = (&pos, &neg) {
                    return Some((a.clone(), p.clone(), n.clone()));
                }
            }
        }
        None
    }

    pub fn is_representable(&self, budget: usize) -> bool {
        self.representability_witness(budget).is_none()
    }

    /// Some commutator `a⁻¹b⁻¹ab` inside the ball that is not in the kernel,
    /// as `(a, b)`.
    pub fn commutator_witness(&self) -> Option<(Word, Word)> {
        let words = self.ball.words();
        for a in &words[1..] {
            for b in &words[1..] {
                if self.sign(&a.commutator(b)).is_some_and(|s| s != Sign::Zero) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    /// Ball-level necessary condition for an Abelian quotient: commutators in
    /// the kernel and conjugation preserving the cone.
    pub fn is_abelian(&self) -> bool {
        self.commutator_witness().is_none() && self.is_normal()
    }

    /// The same table on a smaller ball.
    pub fn restrict(&self, radius: usize) -> BallCone {
        let radius = radius.min(self.radius());
        let ball = Arc::new(Ball::new(self.rank(), radius));
        let signs = ball.words().iter().map(|w| self.sign(w).expect("smaller ball")).collect();
        BallCone { ball, signs }
    }

    /// Set inclusion `C ⊆ D` on the common ball.
    pub fn inclusion_witness(&self, other: &BallCone) -> Option<Word> {
        let r = self.radius().min(other.radius());
        self.table().filter(|(w, _)| w.len() <= r).find_map(|(w, s)| {
            let d = other.sign(w).expect("common radius");
            (s.in_cone() && !d.in_cone()).then(|| w.clone())
        })
    }

    pub fn is_subcone_of(&self, other: &BallCone) -> bool {
        self.rank() == other.rank() && self.inclusion_witness(other).is_none()
    }

    /// `⋂_{|t| ≤ budget} t⁻¹Ct` on the ball of radius `r − 2·budget`.
    ///
    /// The intersection is a pre-cone only when the conjugates of each word
    /// share a sign, so a cone failing that test within the budget is refused
    /// with the offending word and conjugators.
    pub fn beta(&self, budget: usize) -> Result<BallCone, ConeError> {
        let r = self.radius();
        if r < 2 * budget {
            return Err(ConeError::Scope { radius: r, needed: 2 * budget });
        }
        let inner = Arc::new(Ball::new(self.rank(), r - 2 * budget));
        let conjugators: Vec<&Word> = self.ball.words().iter().take_while(|t| t.len() <= budget).collect();
        let mut signs = Vec::with_capacity(inner.len());
        for a in inner.words() {
            let mut pos = None;
            let mut neg = None;
            for t in &conjugators {
                match self.sign(&t.mul(&a.mul(&t.inverse()))).expect("conjugate within ball") {
                    Sign::Pos => pos = pos.or(Some(*t)),
                    Sign::Neg => neg = neg.or(Some(*t)),
                    Sign::Zero => {}
                }
            }
            signs.push(match (pos, neg) {
                (None, None) => Sign::Zero,
                (Some(_), None) => Sign::Pos,
                (None, Some(_)) => Sign::Neg,
                (Some(p), Some(n)) => {
                    return Err(ConeError::NotRepresentable {
                        word: a.clone(),
                        positive_by: p.clone(),
                        negative_by: n.clone(),
                    })
                }
            });
        }
        Ok(BallCone { ball: inner, signs })
    }
}

impl fmt::Display for BallCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ball(rank {}, radius {}) {{", self.rank(), self.radius())?;
        let mut first = true;
        for (i, (w, s)) in self.table().enumerate() {
            if i == 0 || i > self.ball.inverse_index(i) {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{w}: {}", serde_json::to_value(s).expect("sign").as_str().expect("string"))?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct BallJson {
    rank: usize,
    radius: usize,
    table: BTreeMap<Word, Sign>,
}

impl Serialize for BallCone {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let table = self
            .table()
            .enumerate()
            .filter(|(i, _)| *i > 0 && *i < self.ball.inverse_index(*i))
            .map(|(_, (w, s))| (w.clone(), s))
            .collect();
        BallJson { rank: self.rank(), radius: self.radius(), table }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BallCone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BallJson::deserialize(d)?;
        BallCone::new(raw.rank, raw.radius, &raw.table).map_err(serde::de::Error::custom)
    }
}
