//! Exhaustive, deterministic enumeration of ball cones on `Fₙ`.
//!
//! The search assigns a sign to one word of each inverse pair, in shortlex
//! order of that word, trying `Pos`, `Zero`, `Neg` in turn. Each submonoid
//! constraint `w, u ∈ C ⟹ wu ∈ C` is checked as soon as its last word is
//! assigned, so the stream is produced lazily by backtracking.

use std::sync::Arc;

use super::ball::{Ball, BallCone, Sign};
use super::ConeError;
use crate::group::Word;

/// Refuse searches with more inverse pairs than this unless told otherwise.
pub const DEFAULT_MAX_PAIRS: usize = 40;

const ORDER: [Sign; 3] = [Sign::Pos, Sign::Zero, Sign::Neg];

#[derive(Debug, Clone, Default)]
pub struct Constraints {
    /// Words whose sign is prescribed.
    pub fixed: Vec<(Word, Sign)>,
    /// Words required to lie in `C`.
    pub contain: Vec<Word>,
    /// Words required to lie outside `C`.
    pub exclude: Vec<Word>,
    /// Forbid a nontrivial kernel inside the ball.
    pub no_kernel: bool,
    /// Keep only cones that pass the ball normality test.
    pub normal: bool,
    /// Keep only cones whose conjugates share a sign within this budget.
    pub representable: Option<usize>,
}

impl Constraints {
    pub fn fix(mut self, w: Word, s: Sign) -> Self {
        self.fixed.push((w, s));
        self
    }
}

/// A lazy stream of ball cones; see [`enumerate_ball_cones`].
pub struct BallConeStream {
    ball: Arc<Ball>,
    /// Ball index of the representative word of each variable.
    vars: Vec<usize>,
    allowed: Vec<[bool; 3]>,
    /// `(w, u, wu)` ball indices, grouped by the last variable they mention.
    checks: Vec<Vec<(usize, usize, usize)>>,
    signs: Vec<Sign>,
    next: Vec<usize>,
    depth: usize,
    done: bool,
    normal: bool,
    representable: Option<usize>,
}

/// Every ball cone of rank `rank` and radius `radius` satisfying the
/// constraints, in a fixed order. Refuses up front when the ball has more
/// than `max_pairs` inverse pairs.
pub fn enumerate_ball_cones(
    rank: usize,
    radius: usize,
    constraints: &Constraints,
    max_pairs: usize,
) -> Result<BallConeStream, ConeError> {
    if rank == 0 {
        return Err(ConeError::Invalid("rank must be positive".into()));
    }
    let ball = Arc::new(Ball::new(rank, radius));
    let n = ball.len();
    let pairs = (n - 1) / 2;
    if pairs > max_pairs {
        return Err(ConeError::Budget { pairs, limit: max_pairs });
    }

    let mut var_of = vec![(usize::MAX, false); n];
    let mut vars = Vec::with_capacity(pairs);
    for i in 1..n {
        let j = ball.inverse_index(i);
        if i < j {
            var_of[i] = (vars.len(), false);
            var_of[j] = (vars.len(), true);
            vars.push(i);
        }
    }

    let mut allowed = vec![[true; 3]; pairs];
    let mut infeasible = false;
    let mut restrict = |w: &Word, ok: &dyn Fn(Sign) -> bool| -> Result<(), ConeError> {
        if w.max_generator() > rank {
            return Err(ConeError::RankMismatch { expected: rank, found: w.max_generator() });
        }
        let i = ball
            .index_of(w)
            .ok_or_else(|| ConeError::Invalid(format!("constraint word {w} lies outside radius {radius}")))?;
        if i == 0 {
            infeasible |= !ok(Sign::Zero);
            return Ok(());
        }
        let (v, flipped) = var_of[i];
        for (k, s) in ORDER.iter().enumerate() {
            let s = if flipped { s.flip() } else { *s };
            allowed[v][k] &= ok(s);
        }
        Ok(())
    };
    for (w, s) in &constraints.fixed {
        restrict(w, &|x| x == *s)?;
    }
    for w in &constraints.contain {
        restrict(w, &|x| x.in_cone())?;
    }
    for w in &constraints.exclude {
        restrict(w, &|x| !x.in_cone())?;
    }
    if constraints.no_kernel {
        for a in allowed.iter_mut() {
            a[1] = false;
        }
    }

    let mut checks = vec![Vec::new(); pairs];
    for i in 1..n {
        for j in 1..n {
            let Some(p) = ball.index_of(&ball.word(i).mul(ball.word(j))) else { continue };
            if p == 0 {
                continue;
            }
            let last = var_of[i].0.max(var_of[j].0).max(var_of[p].0);
            checks[last].push((i, j, p));
        }
    }

    Ok(BallConeStream {
        signs: vec![Sign::Zero; n],
        next: vec![0; pairs],
        depth: 0,
        done: infeasible,
        ball,
        vars,
        allowed,
        checks,
        normal: constraints.normal,
        representable: constraints.representable,
    })
}

impl BallConeStream {
    fn consistent(&self, var: usize) -> bool {
        self.checks[var]
            .iter()
            .all(|&(i, j, p)| !(self.signs[i].in_cone() && self.signs[j].in_cone()) || self.signs[p].in_cone())
    }

    fn accept(&self, cone: &BallCone) -> bool {
        cone.is_proper()
            && (!self.normal || cone.is_normal())
            && self.representable.is_none_or(|k| cone.is_representable(k))
    }
}

impl Iterator for BallConeStream {
    type Item = BallCone;

    fn next(&mut self) -> Option<BallCone> {
        let n = self.vars.len();
        loop {
            if self.done {
                return None;
            }
            if self.depth == n {
                let cone = BallCone::from_signs(self.ball.clone(), self.signs.clone());
                if self.depth == 0 {
                    self.done = true;
                } else {
                    self.depth -= 1;
                }
                if self.accept(&cone) {
                    return Some(cone);
                }
                continue;
            }
            let d = self.depth;
            let mut advanced = false;
            while self.next[d] < 3 {
                let k = self.next[d];
                self.next[d] += 1;
                if !self.allowed[d][k] {
                    continue;
                }
                let i = self.vars[d];
                self.signs[i] = ORDER[k];
                self.signs[self.ball.inverse_index(i)] = ORDER[k].flip();
                if self.consistent(d) {
                    advanced = true;
                    break;
                }
            }
            if advanced {
                self.depth += 1;
                if self.depth < n {
                    self.next[self.depth] = 0;
                }
            } else if d == 0 {
                self.done = true;
            } else {
                self.depth -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn count(rank: usize, radius: usize, c: &Constraints) -> usize {
        enumerate_ball_cones(rank, radius, c, DEFAULT_MAX_PAIRS).unwrap().count()
    }

    #[test]
    fn rank_one_radius_two() {
        let cones: Vec<BallCone> = enumerate_ball_cones(1, 2, &Constraints::default(), 10).unwrap().collect();
        assert_eq!(cones.len(), 2);
        assert_eq!(cones[0].sign(&w("g1")), Some(Sign::Pos));
        assert_eq!(cones[1].sign(&w("g1")), Some(Sign::Neg));
    }

    #[test]
    fn rank_two_radius_one() {
        assert_eq!(count(2, 1, &Constraints::default()), 8);
        let c = Constraints::default().fix(w("g1"), Sign::Pos).fix(w("g2"), Sign::Pos);
        assert_eq!(count(2, 1, &c), 1);
    }

    #[test]
    fn contradictory_constraints_give_nothing() {
        let c = Constraints { contain: vec![w("g1"), w("g1^-1")], no_kernel: true, ..Default::default() };
        assert_eq!(count(2, 2, &c), 0);
        let c = Constraints { exclude: vec![Word::identity()], ..Default::default() };
        assert_eq!(count(2, 1, &c), 0);
    }

    #[test]
    fn budget_refusal() {
        assert!(matches!(
            enumerate_ball_cones(2, 3, &Constraints::default(), 10),
            Err(ConeError::Budget { pairs: 26, limit: 10 })
        ));
    }

    #[test]
    fn stream_is_valid_and_deterministic() {
        let a: Vec<BallCone> = enumerate_ball_cones(2, 2, &Constraints::default(), 20).unwrap().collect();
        let b: Vec<BallCone> = enumerate_ball_cones(2, 2, &Constraints::default(), 20).unwrap().collect();
        assert_eq!(a, b);
        for c in &a {
            assert!(c.submonoid_witness().is_none());
            assert!(c.is_proper());
        }
    }

    /// Independent count over all `3^8` sign assignments of the radius-2
    /// ball of `F₂`.
    #[test]
    fn radius_two_count_matches_brute_force() {
        let ball = Ball::new(2, 2);
        let reps: Vec<usize> = (1..ball.len()).filter(|&i| i < ball.inverse_index(i)).collect();
        assert_eq!(reps.len(), 8);
        let mut expected = 0;
        for code in 0..3usize.pow(8) {
            let mut signs = vec![Sign::Zero; ball.len()];
            let mut c = code;
            for &i in &reps {
                let s = [Sign::Pos, Sign::Zero, Sign::Neg][c % 3];
                c /= 3;
                signs[i] = s;
                signs[ball.inverse_index(i)] = s.flip();
            }
            let words = ball.words();
            let closed = (0..words.len()).all(|i| {
                (0..words.len()).all(|j| {
                    !(signs[i].in_cone() && signs[j].in_cone())
                        || ball.index_of(&words[i].mul(&words[j])).is_none_or(|p| signs[p].in_cone())
                })
            });
            if closed && signs.iter().any(|s| *s != Sign::Zero) {
                expected += 1;
            }
        }
        assert_eq!(count(2, 2, &Constraints::default()), expected);
    }
}
