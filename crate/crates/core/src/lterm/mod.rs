//! Terms in the ℓ-group signature over generators `g1..gn`, evaluated through
//! the right regular representation of a pre-cone.
//!
//! For a pre-cone `C` of `G`, the classes `[b]` of `G` under `≡_C` form a chain
//! `Ω_C`, and `a ∈ G` acts on it by `[b] ↦ [ba]`. A term acts by composing
//! these actions (`s * t` is "first `s`, then `t`"), with meet and join taken
//! pointwise in `Ω_C`. Only the value at the queried point is ever computed.
//!
//! `κ(C)` is the stabiliser of `[e]`; from a prime `p` one recovers the cone
//! `{a : a⁻¹ ∨ e ∈ p}`.

mod nf;
mod parse;

use serde_json::{json, Value};
use thiserror::Error;

pub use nf::{normal_form, MeetJoinNF, PositiveNF};
pub use parse::{parse_term, parse_term_in_rank};

use crate::group::{GroupElement, GroupError, PoGroup};
use crate::precone::{cmp, cone_leq, cone_leq_witness, contains, Comparison, ConeError, Containment, PreCone};
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("generator g{index} exceeds rank {rank}")]
    IndexOutOfRank { index: usize, rank: usize },
    #[error("evaluation left the ball of radius {radius} at {element}")]
    OutOfScope { radius: usize, element: String },
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LTerm {
    Ident,
    /// `g_k`, 1-based.
    Gen(usize),
    Mul(Box<LTerm>, Box<LTerm>),
    Inv(Box<LTerm>),
    Meet(Box<LTerm>, Box<LTerm>),
    Join(Box<LTerm>, Box<LTerm>),
}

impl LTerm {
    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: LTerm, b: LTerm) -> LTerm {
        LTerm::Mul(Box::new(a), Box::new(b))
    }

    pub fn inv(a: LTerm) -> LTerm {
        LTerm::Inv(Box::new(a))
    }

    pub fn meet(a: LTerm, b: LTerm) -> LTerm {
        LTerm::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: LTerm, b: LTerm) -> LTerm {
        LTerm::Join(Box::new(a), Box::new(b))
    }

    /// `|t| = t ∨ t⁻¹`.
    pub fn abs(t: LTerm) -> LTerm {
        LTerm::join(t.clone(), LTerm::inv(t))
    }

    /// The term spelling a group element: a product of generators and their
    /// inverses (`e` for the identity).
    pub fn from_element(a: &GroupElement) -> LTerm {
        let letters: Vec<(usize, bool)> = match a {
            GroupElement::ZVec(v) => v
                .iter()
                .enumerate()
                .flat_map(|(i, x)| std::iter::repeat_n((i + 1, *x < 0), x.unsigned_abs() as usize))
                .collect(),
            GroupElement::FWord(w) => w.letters().iter().map(|l| (l.unsigned_abs() as usize, *l < 0)).collect(),
            GroupElement::FinSupp(f) => f
                .iter()
                .flat_map(|(n, x)| std::iter::repeat_n((n as usize + 1, x < 0), x.unsigned_abs() as usize))
                .collect(),
        };
        letters
            .into_iter()
            .map(|(k, inv)| if inv { LTerm::inv(LTerm::Gen(k)) } else { LTerm::Gen(k) })
            .reduce(LTerm::mul)
            .unwrap_or(LTerm::Ident)
    }

    pub fn max_generator(&self) -> usize {
        match self {
            LTerm::Ident => 0,
            LTerm::Gen(k) => *k,
            LTerm::Inv(x) => x.max_generator(),
            LTerm::Mul(x, y) | LTerm::Meet(x, y) | LTerm::Join(x, y) => x.max_generator().max(y.max_generator()),
        }
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), TermError> {
        let k = self.max_generator();
        if k > rank {
            return Err(TermError::IndexOutOfRank { index: k, rank });
        }
        Ok(())
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            LTerm::Ident | LTerm::Gen(_) => 1,
            LTerm::Inv(x) => 1 + x.size(),
            LTerm::Mul(x, y) | LTerm::Meet(x, y) | LTerm::Join(x, y) => 1 + x.size() + y.size(),
        }
    }

    /// The tree as JSON, one object per node.
    pub fn to_ast(&self) -> Value {
        match self {
            LTerm::Ident => json!({ "node": "ident" }),
            LTerm::Gen(k) => json!({ "node": "gen", "index": k }),
            LTerm::Inv(x) => json!({ "node": "inv", "child": x.to_ast() }),
            LTerm::Mul(x, y) => json!({ "node": "mul", "left": x.to_ast(), "right": y.to_ast() }),
            LTerm::Meet(x, y) => json!({ "node": "meet", "left": x.to_ast(), "right": y.to_ast() }),
            LTerm::Join(x, y) => json!({ "node": "join", "left": x.to_ast(), "right": y.to_ast() }),
        }
    }
}

impl std::str::FromStr for LTerm {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

impl serde::Serialize for LTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for LTerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        parse_term(&s).map_err(serde::de::Error::custom)
    }
}

fn out_of_scope(c: &PreCone, a: &GroupElement) -> TermError {
    TermError::OutOfScope { radius: c.scope().unwrap_or(0), element: a.to_string() }
}

fn step(c: &PreCone, g: &PoGroup, b: &GroupElement, k: usize, inverse: bool) -> Result<GroupElement, TermError> {
    let x = g.generator(k)?;
    let x = if inverse { g.inv(&x)? } else { x };
    let out = g.mul(b, &x)?;
    if contains(c, &out)? == Containment::OutOfScope {
        return Err(out_of_scope(c, &out));
    }
    Ok(out)
}

fn pick(c: &PreCone, x: GroupElement, y: GroupElement, larger: bool) -> Result<GroupElement, TermError> {
    match cmp(c, &x, &y)? {
        Comparison::OutOfScope => Err(out_of_scope(c, &y)),
        Comparison::Less | Comparison::Equiv => Ok(if larger { y } else { x }),
        Comparison::Greater => Ok(if larger { x } else { y }),
    }
}

fn eval(t: &LTerm, c: &PreCone, g: &PoGroup, b: GroupElement, negated: bool) -> Result<GroupElement, TermError> {
    match t {
        LTerm::Ident => Ok(b),
        LTerm::Gen(k) => step(c, g, &b, *k, negated),
        LTerm::Inv(x) => eval(x, c, g, b, !negated),
        LTerm::Mul(x, y) => {
            let (first, second) = if negated { (y, x) } else { (x, y) };
            let mid = eval(first, c, g, b, negated)?;
            eval(second, c, g, mid, negated)
        }
        LTerm::Meet(x, y) | LTerm::Join(x, y) => {
            let larger = matches!(t, LTerm::Join(..)) != negated;
            let u = eval(x, c, g, b.clone(), negated)?;
            let v = eval(y, c, g, b, negated)?;
            pick(c, u, v, larger)
        }
    }
}

/// A representative of the image of `[b]` under the action of `t`. The
/// representative is whatever product the evaluation reached; compare results
/// with [`cmp`], never structurally.
pub fn eval_action(t: &LTerm, c: &PreCone, b: &GroupElement) -> Result<GroupElement, TermError> {
    let g = c.group();
    t.check_rank(g.rank)?;
    g.check(b)?;
    if contains(c, b)? == Containment::OutOfScope {
        return Err(out_of_scope(c, b));
    }
    eval(t, c, &g, b.clone(), false)
}

/// `t ∈ κ(C)`: the action of `t` fixes `[e]`.
pub fn kappa_contains(c: &PreCone, t: &LTerm) -> Result<bool, TermError> {
    let e = c.group().identity();
    let img = eval_action(t, c, &e)?;
    match cmp(c, &e, &img)? {
        Comparison::Equiv => Ok(true),
        Comparison::OutOfScope => Err(out_of_scope(c, &img)),
        _ => Ok(false),
    }
}

/// The prime subgroup `κ(C)`, as a membership oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeOracle {
    pub cone: PreCone,
}

impl PrimeOracle {
    pub fn kappa(cone: &PreCone) -> Self {
        PrimeOracle { cone: cone.clone() }
    }

    pub fn contains(&self, t: &LTerm) -> Result<bool, TermError> {
        kappa_contains(&self.cone, t)
    }
}

/// `a⁻¹ ∨ e` as a term.
pub fn pi_witness_term(a: &GroupElement) -> LTerm {
    LTerm::join(LTerm::inv(LTerm::from_element(a)), LTerm::Ident)
}

/// `a ∈ π(p)`, decided as `a⁻¹ ∨ e ∈ p`.
pub fn pi_contains(p: &PrimeOracle, a: &GroupElement) -> Result<bool, TermError> {
    p.contains(&pi_witness_term(a))
}

/// `|xy| ≤ |x||y||x|` at the point `[b]`: the left side moves `[b]` no
/// further up than the right side.
pub fn abs_law_at(x: &LTerm, y: &LTerm, c: &PreCone, b: &GroupElement) -> Result<bool, TermError> {
    let lhs = LTerm::abs(LTerm::mul(x.clone(), y.clone()));
    let ax = LTerm::abs(x.clone());
    let rhs = LTerm::mul(LTerm::mul(ax.clone(), LTerm::abs(y.clone())), ax);
    let l = eval_action(&lhs, c, b)?;
    let r = eval_action(&rhs, c, b)?;
    match cmp(c, &l, &r)? {
        Comparison::OutOfScope => Err(out_of_scope(c, &r)),
        cmpv => Ok(cmpv != Comparison::Greater),
    }
}

/// Consistency of `κ` and `π` on one cone:
///
/// * `π(κ(C)) = C` on `elements`;
/// * `a` is strictly positive iff `a ∨ e ∉ κ(C)`, on `elements`;
/// * for each `D` in `others`: if `C ⊆ D` then `κ(C) ⊆ κ(D)` on `terms`, and
///   if `C ⊄ D` then some `a⁻¹ ∨ e` lies in `κ(C)` but not in `κ(D)`.
pub fn roundtrip_report(c: &PreCone, elements: &[GroupElement], terms: &[LTerm], others: &[PreCone]) -> Result<Report, TermError> {
    let mut report = Report::new(format!("κ/π consistency for {c}"));
    let p = PrimeOracle::kappa(c);

    let mut pk = None;
    let mut sub = None;
    let mut examined = 0u64;
    for a in elements {
        let class = contains(c, a)?;
        if class == Containment::OutOfScope {
            continue;
        }
        examined += 1;
        if pk.is_none() && pi_contains(&p, a)? != class.in_cone() {
            pk = Some(json!({ "a": a, "contains": class }));
        }
        let up = LTerm::join(LTerm::from_element(a), LTerm::Ident);
        if sub.is_none() && (class == Containment::Positive) == kappa_contains(c, &up)? {
            sub = Some(json!({ "a": a, "contains": class }));
        }
    }
    report.push(Check::from_witness("pi_kappa", "π(κ(C)) = C", examined, pk));
    report.push(Check::from_witness("subbase", "a ∈ C ∖ C⁻¹ iff a ∨ e ∉ κ(C)", examined, sub));

    let mut mono = None;
    let mut reflect = None;
    let mut pairs = 0u64;
    for d in others {
        pairs += 1;
        if cone_leq(c, d)? {
            for t in terms {
                if kappa_contains(c, t)? && !kappa_contains(d, t)? {
                    mono.get_or_insert(json!({ "d": d.to_string(), "term": t }));
                }
            }
        } else if let Some(a) = cone_leq_witness(c, d)? {
            let t = pi_witness_term(&a);
            if !(kappa_contains(c, &t)? && !kappa_contains(d, &t)?) {
                reflect.get_or_insert(json!({ "d": d.to_string(), "a": a }));
            }
        }
    }
    report.push(Check::from_witness("kappa_monotone", "C ⊆ D implies κ(C) ⊆ κ(D)", pairs * terms.len() as u64, mono));
    report.push(Check::from_witness("kappa_reflects", "C ⊄ D implies κ(C) ⊄ κ(D)", pairs, reflect));
    Ok(report)
}

/// A cone whose action moves `[e]` under `t`, witnessing `t ≠ e` in the free
/// ℓ-group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub index: usize,
    pub cone: PreCone,
    pub image: GroupElement,
}

/// The first cone of `family` in which `t` moves `[e]`. Cones where the
/// evaluation leaves scope are skipped; no result is inconclusive.
pub fn seek_separating_cone<'a, I>(t: &LTerm, family: I) -> Option<Separation>
where
    I: IntoIterator<Item = &'a PreCone>,
{
    family.into_iter().enumerate().find_map(|(index, c)| match kappa_contains(c, t) {
        Ok(false) => {
            let image = eval_action(t, c, &c.group().identity()).ok()?;
            Some(Separation { index, cone: c.clone(), image })
        }
        _ => None,
    })
}

#[cfg(test)]
mod tests;
