//! Pre-cones and the right pre-orders they induce.
//!
//! A pre-cone `C` of a partially ordered group `G` is a proper submonoid with
//! `G = C ∪ C⁻¹` and `G⁺ ⊆ C`; it induces `a ⪯ b ⟺ ba⁻¹ ∈ C`. Two
//! representations are provided: exact lexicographic flags on `ℤⁿ`
//! ([`LexFlagCone`]) and sign tables on a ball of `Fₙ` ([`BallCone`]).

mod ball;
mod enumerate;
mod lexflag;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

pub use ball::{Ball, BallCone, Sign};
pub use enumerate::{enumerate_ball_cones, BallConeStream, Constraints, DEFAULT_MAX_PAIRS};
pub use lexflag::{zvec_ball, LexFlagCone};

use crate::group::{GroupElement, GroupError, GroupKind, OrderKind, PoGroup, Word};
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("invalid cone: {0}")]
    Invalid(String),
    #[error("rank mismatch: cone has rank {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("a {cone} cone cannot classify an element of kind {found}")]
    KindMismatch { cone: &'static str, found: GroupKind },
    #[error("cannot compare a lexicographic-flag cone with a ball cone")]
    RepresentationMismatch,
    #[error("integer overflow while normalising a flag")]
    Overflow,
    #[error("radius {radius} leaves no room: at least {needed} is required")]
    Scope { radius: usize, needed: usize },
    #[error("conjugates of {word} have mixed signs: positive by {positive_by}, negative by {negative_by}")]
    NotRepresentable { word: Word, positive_by: Word, negative_by: Word },
    #[error("refining order must have full rank {rank}, has rank {found}")]
    NotFullRank { rank: usize, found: usize },
    #[error("cone is improper (it is the whole group)")]
    Improper,
    #[error("enumeration needs {pairs} inverse pairs, above the budget of {limit}")]
    Budget { pairs: usize, limit: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Where an element sits relative to a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    Positive,
    Negative,
    Kernel,
    OutOfScope,
}

impl Containment {
    /// `a ∈ C`.
    pub fn in_cone(self) -> bool {
        matches!(self, Containment::Positive | Containment::Kernel)
    }

    pub fn invert(self) -> Containment {
        match self {
            Containment::Positive => Containment::Negative,
            Containment::Negative => Containment::Positive,
            other => other,
        }
    }
}

/// The induced right pre-order between two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Less,
    Equiv,
    Greater,
    OutOfScope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PreCone {
    #[serde(rename = "lexflag")]
    LexFlag(LexFlagCone),
    Ball(BallCone),
}

impl From<LexFlagCone> for PreCone {
    fn from(c: LexFlagCone) -> Self {
        PreCone::LexFlag(c)
    }
}

impl From<BallCone> for PreCone {
    fn from(c: BallCone) -> Self {
        PreCone::Ball(c)
    }
}

impl PreCone {
    pub fn rank(&self) -> usize {
        match self {
            PreCone::LexFlag(c) => c.rank(),
            PreCone::Ball(c) => c.rank(),
        }
    }

    /// The group the cone lives in, with the trivial order.
    pub fn group(&self) -> PoGroup {
        match self {
            PreCone::LexFlag(c) => PoGroup::zvec(c.rank()),
            PreCone::Ball(c) => PoGroup::fword(c.rank()),
        }
    }

    /// Radius of validity; `None` for exact cones.
    pub fn scope(&self) -> Option<usize> {
        match self {
            PreCone::LexFlag(_) => None,
            PreCone::Ball(c) => Some(c.radius()),
        }
    }

    pub fn as_lexflag(&self) -> Option<&LexFlagCone> {
        match self {
            PreCone::LexFlag(c) => Some(c),
            PreCone::Ball(_) => None,
        }
    }

    pub fn as_ball(&self) -> Option<&BallCone> {
        match self {
            PreCone::Ball(c) => Some(c),
            PreCone::LexFlag(_) => None,
        }
    }
}

impl std::fmt::Display for PreCone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PreCone::LexFlag(c) => write!(f, "lexflag{c}"),
            PreCone::Ball(c) => write!(f, "{c}"),
        }
    }
}

pub fn contains(c: &PreCone, a: &GroupElement) -> Result<Containment, ConeError> {
    match (c, a) {
        (PreCone::LexFlag(c), GroupElement::ZVec(v)) => c.classify(v),
        (PreCone::Ball(c), GroupElement::FWord(w)) => c.classify(w),
        (PreCone::LexFlag(_), other) => Err(ConeError::KindMismatch { cone: "lexflag", found: other.kind() }),
        (PreCone::Ball(_), other) => Err(ConeError::KindMismatch { cone: "ball", found: other.kind() }),
    }
}

/// `a` against `b` in the pre-order `a ⪯ b ⟺ ba⁻¹ ∈ C`.
pub fn cmp(c: &PreCone, a: &GroupElement, b: &GroupElement) -> Result<Comparison, ConeError> {
    let g = c.group();
    let diff = g.mul(b, &g.inv(a)?)?;
    Ok(match contains(c, &diff)? {
        Containment::Positive => Comparison::Less,
        Containment::Kernel => Comparison::Equiv,
        Containment::Negative => Comparison::Greater,
        Containment::OutOfScope => Comparison::OutOfScope,
    })
}

fn check_group(c: &PreCone, group: &PoGroup) -> Result<(), ConeError> {
    let expected = c.group();
    if group.kind != expected.kind {
        return Err(ConeError::Group(GroupError::KindMismatch { expected: expected.kind, found: group.kind }));
    }
    if group.rank != expected.rank {
        return Err(ConeError::RankMismatch { expected: expected.rank, found: group.rank });
    }
    Ok(())
}

/// Submonoid, totality, properness and `G⁺ ⊆ C`. Exact for flag cones;
/// within the ball for ball cones.
pub fn check_axioms(c: &PreCone, group: &PoGroup) -> Result<Report, ConeError> {
    check_group(c, group)?;
    let mut report = Report::new(format!("pre-cone axioms for {c}"));
    match c {
        PreCone::LexFlag(f) => {
            // Sums of vectors whose pairing sequences are lexicographically
            // nonnegative stay nonnegative, and every vector or its negative
            // is nonnegative; both are confirmed on a small ball as well.
            let radius = (0..=3i64).rev().find(|r| (2 * r + 1).pow(f.rank() as u32) <= 400).unwrap_or(0);
            let ball = zvec_ball(f.rank(), radius);
            let classes: Vec<Containment> = ball.iter().map(|a| f.classify(a).expect("rank")).collect();
            let mut sub = None;
            for (a, ca) in ball.iter().zip(&classes) {
                for (b, cb) in ball.iter().zip(&classes) {
                    if ca.in_cone() && cb.in_cone() {
                        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        if !f.classify(&s).expect("rank").in_cone() {
                            sub = Some(json!({ "a": a, "b": b }));
                        }
                    }
                }
            }
            let n = ball.len() as u64;
            report.push(
                Check::from_witness("submonoid", "C·C ⊆ C", n * n, sub)
                    .with_note("exact: lexicographic sign sequences are closed under addition"),
            );
            let total = ball.iter().zip(&classes).find(|(a, ca)| {
                let neg: Vec<i64> = a.iter().map(|x| -x).collect();
                !ca.in_cone() && !f.classify(&neg).expect("rank").in_cone()
            });
            report.push(
                Check::from_witness("totality", "C ∪ C⁻¹ = G", n, total.map(|(a, _)| json!(a)))
                    .with_note("exact: every pairing sequence is either ≥lex 0 or ≤lex 0"),
            );
            report.push(if f.is_proper() {
                Check::pass("proper", "C ≠ G", 1)
            } else {
                Check::fail("proper", "C ≠ G", 1, json!("every flag row is zero"))
            });
            let missing = group.positive_generators().into_iter().find(|p| !contains(c, p).expect("rank").in_cone());
            report.push(
                Check::from_witness("contains_positive", "G⁺ ⊆ C", group.positive_generators().len() as u64, missing.map(|p| json!(p)))
                    .with_note("exact: G⁺ is generated as a monoid by the listed generators"),
            );
        }
        PreCone::Ball(b) => {
            let n = b.ball().len() as u64;
            let note = format!("within the ball of radius {}", b.radius());
            report.push(
                Check::from_witness(
                    "submonoid",
                    "C·C ⊆ C",
                    n * n,
                    b.submonoid_witness().map(|(w, u)| json!({ "a": w, "b": u })),
                )
                .with_note(note.clone()),
            );
            report.push(
                Check::from_witness(
                    "identity_in_kernel",
                    "e ∈ C ∩ C⁻¹",
                    1,
                    (b.sign(&Word::identity()) != Some(Sign::Zero)).then(|| json!("e")),
                ),
            );
            report.push(Check::pass("totality", "C ∪ C⁻¹ = G", n).with_note(note.clone()));
            report.push(if b.is_proper() {
                Check::pass("proper", "C ≠ G", n)
            } else {
                Check::fail("proper", "C ≠ G", n, json!("every word is in the kernel")).with_note(note)
            });
            report.push(Check::pass("contains_positive", "G⁺ ⊆ C", 0).with_note("free groups carry the trivial order"));
        }
    }
    Ok(report)
}

pub fn is_normal(c: &PreCone) -> bool {
    match c {
        PreCone::LexFlag(_) => true,
        PreCone::Ball(b) => b.is_normal(),
    }
}

/// Conjugacy classes have a uniform sign; for ball cones within `budget`.
pub fn is_representable_cone(c: &PreCone, budget: usize) -> bool {
    match c {
        PreCone::LexFlag(_) => true,
        PreCone::Ball(b) => b.is_representable(budget),
    }
}

pub fn is_abelian_cone(c: &PreCone) -> bool {
    match c {
        PreCone::LexFlag(_) => true,
        PreCone::Ball(b) => b.is_abelian(),
    }
}

/// Normality, representability and the Abelian condition with witnesses.
/// Ball results are necessary conditions at the ball's radius only.
pub fn predicates_report(c: &PreCone, budget: usize) -> Report {
    let mut report = Report::new(format!("cone predicates for {c}"));
    match c {
        PreCone::LexFlag(_) => {
            let note = "exact: ℤⁿ is Abelian, so conjugation and commutators are trivial";
            report.push(Check::pass("normal", "t⁻¹Ct = C for all t", 0).with_note(note));
            report.push(Check::pass("representable", "conjugates of a share its sign", 0).with_note(note));
            report.push(Check::pass("abelian", "commutators lie in the kernel", 0).with_note(note));
        }
        PreCone::Ball(b) => {
            let r = b.radius();
            let note = format!("necessary at radius {r}");
            report.push(
                Check::from_witness(
                    "normal",
                    "t⁻¹Ct = C for all t",
                    b.ball().len() as u64,
                    b.normality_witness().map(|(a, t)| json!({ "a": a, "t": t, "conjugate": a.conjugate_by(&t) })),
                )
                .with_note(note.clone()),
            );
            report.push(
                Check::from_witness(
                    "representable",
                    "conjugates of a share its sign",
                    b.ball().len() as u64,
                    b.representability_witness(budget).map(|(a, p, n)| {
                        json!({ "a": a, "positive_by": p, "negative_by": n })
                    }),
                )
                .with_note(format!("{note}, conjugators of length ≤ {budget}")),
            );
            let comm = b.commutator_witness();
            let abelian_witness = match (&comm, b.normality_witness()) {
                (Some((x, y)), _) => Some(json!({ "a": x, "b": y, "commutator": x.commutator(y) })),
                (None, Some((a, t))) => Some(json!({ "a": a, "t": t, "reason": "conjugation moves the cone" })),
                (None, None) => None,
            };
            report.push(
                Check::from_witness("abelian", "commutators lie in the kernel", b.ball().len() as u64, abelian_witness)
                    .with_note(note),
            );
        }
    }
    report
}

/// `β(C) = ⋂_t t⁻¹Ct`. Flag cones are normal, so they are returned unchanged.
pub fn beta(c: &PreCone, budget: usize) -> Result<PreCone, ConeError> {
    match c {
        PreCone::LexFlag(f) => Ok(PreCone::LexFlag(f.clone())),
        PreCone::Ball(b) => b.beta(budget).map(PreCone::Ball),
    }
}

/// Refines `C` by the total order `P`: compare first by `C`, break ties inside
/// the kernel of `C` by `P`.
pub fn refine_to_order(c: &LexFlagCone, p: &LexFlagCone) -> Result<LexFlagCone, ConeError> {
    if c.rank() != p.rank() {
        return Err(ConeError::RankMismatch { expected: c.rank(), found: p.rank() });
    }
    if !p.is_full_rank() {
        return Err(ConeError::NotFullRank { rank: p.rank(), found: p.rows().len() });
    }
    if !c.is_proper() {
        return Err(ConeError::Improper);
    }
    let rows: Vec<Vec<i64>> = c.rows().iter().chain(p.rows()).cloned().collect();
    LexFlagCone::from_integer_rows(c.rank(), &rows)
}

/// `C ⊆ D`.
pub fn cone_leq(c: &PreCone, d: &PreCone) -> Result<bool, ConeError> {
    match (c, d) {
        (PreCone::LexFlag(x), PreCone::LexFlag(y)) => {
            if x.rank() != y.rank() {
                return Err(ConeError::RankMismatch { expected: x.rank(), found: y.rank() });
            }
            Ok(x.is_subcone_of(y))
        }
        (PreCone::Ball(x), PreCone::Ball(y)) => {
            if x.rank() != y.rank() {
                return Err(ConeError::RankMismatch { expected: x.rank(), found: y.rank() });
            }
            Ok(x.is_subcone_of(y))
        }
        _ => Err(ConeError::RepresentationMismatch),
    }
}

/// An element of `C ∖ D`, if one is found (exhaustively for balls, over an
/// integer ball of radius `max(10, height)` for flags).
pub fn cone_leq_witness(c: &PreCone, d: &PreCone) -> Result<Option<GroupElement>, ConeError> {
    cone_leq(c, d)?;
    Ok(match (c, d) {
        (PreCone::LexFlag(x), PreCone::LexFlag(y)) => x.non_inclusion_witness(y).map(GroupElement::ZVec),
        (PreCone::Ball(x), PreCone::Ball(y)) => x.inclusion_witness(y).map(GroupElement::FWord),
        _ => unreachable!("checked by cone_leq"),
    })
}

/// Contracting, monotone and idempotent laws for `β` with conjugator
/// `budget`, over a family of ball cones. Cones that `β` refuses are listed
/// in a note and excluded. Comparisons happen on the common radius; when
/// `β ∘ β` has no room (`r < 4·budget`) idempotence is reported as vacuous.
pub fn beta_laws(family: &[BallCone], budget: usize) -> Report {
    let mut report = Report::new(format!("interior-operator laws for β with budget {budget}"));
    let mut refused = 0usize;
    let mut images = Vec::with_capacity(family.len());
    for c in family {
        match c.beta(budget) {
            Ok(b) => images.push(Some(b)),
            Err(_) => {
                refused += 1;
                images.push(None);
            }
        }
    }

    let mut contracting = None;
    let mut examined = 0u64;
    for (c, b) in family.iter().zip(&images) {
        if let Some(b) = b {
            examined += 1;
            if let Some(w) = b.inclusion_witness(c) {
                contracting.get_or_insert(json!({ "cone": c.to_string(), "word": w }));
            }
        }
    }
    let mut check = Check::from_witness("contracting", "β(C) ⊆ C", examined, contracting);
    if refused > 0 {
        check = check.with_note(format!("{refused} cone(s) with mixed-sign conjugates excluded"));
    }
    report.push(check);

    let mut monotone = None;
    let mut pairs = 0u64;
    for (i, c) in family.iter().enumerate() {
        for (j, d) in family.iter().enumerate() {
            let (Some(bc), Some(bd)) = (&images[i], &images[j]) else { continue };
            if c.is_subcone_of(d) {
                pairs += 1;
                if let Some(w) = bc.inclusion_witness(bd) {
                    monotone.get_or_insert(json!({ "c": c.to_string(), "d": d.to_string(), "word": w }));
                }
            }
        }
    }
    report.push(Check::from_witness("monotone", "C ⊆ D implies β(C) ⊆ β(D)", pairs, monotone));

    let mut idempotent = None;
    let mut examined = 0u64;
    let mut vacuous = 0u64;
    for b in images.iter().flatten() {
        match b.beta(budget) {
            Ok(bb) => {
                examined += 1;
                if bb != b.restrict(bb.radius()) {
                    idempotent.get_or_insert(json!({ "beta": b.to_string(), "beta_beta": bb.to_string() }));
                }
            }
            Err(ConeError::Scope { .. }) => vacuous += 1,
            Err(e) => {
                idempotent.get_or_insert(json!({ "beta": b.to_string(), "error": e.to_string() }));
            }
        }
    }
    let mut check = Check::from_witness("idempotent", "β(β(C)) = β(C)", examined, idempotent);
    if vacuous > 0 {
        check = check.with_note(format!(
            "{vacuous} image(s) have radius below {}, so β(β(C)) has an empty common scope",
            2 * budget
        ));
    }
    report.push(check);
    report
}

/// The partially ordered group a cone should be checked against.
pub fn default_group(c: &PreCone, order: OrderKind) -> Result<PoGroup, ConeError> {
    Ok(c.group().with_order(order)?)
}
