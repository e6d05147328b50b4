use proptest::prelude::*;

use super::*;
use crate::group::Word;
use crate::precone::{zvec_ball, BallCone, LexFlagCone, Sign};
use crate::sample;

fn t(text: &str) -> LTerm {
    parse_term(text).unwrap()
}

fn lex(rows: &[&[i64]]) -> PreCone {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    LexFlagCone::from_integer_rows(rows[0].len(), &rows).unwrap().into()
}

fn z(v: &[i64]) -> GroupElement {
    GroupElement::ZVec(v.to_vec())
}

fn equiv(c: &PreCone, a: &GroupElement, b: &GroupElement) -> bool {
    cmp(c, a, b).unwrap() == Comparison::Equiv
}

#[test]
fn eval_examples() {
    let c = lex(&[&[1, 0]]);
    let e = z(&[0, 0]);
    assert!(equiv(&c, &eval_action(&t("g1 \\/ e"), &c, &e).unwrap(), &z(&[1, 0])));
    assert!(equiv(&c, &eval_action(&t("g2 \\/ e"), &c, &e).unwrap(), &e));
    for b in [z(&[3, -1]), z(&[0, 0]), z(&[-2, 5])] {
        assert_eq!(eval_action(&t("e"), &c, &b).unwrap(), b);
    }
    assert!(matches!(eval_action(&t("g3"), &c, &e), Err(TermError::IndexOutOfRank { .. })));
}

#[test]
fn kappa_examples() {
    let c = lex(&[&[1, 0]]);
    assert!(kappa_contains(&c, &t("g2 \\/ e")).unwrap());
    assert!(!kappa_contains(&c, &t("g1 \\/ e")).unwrap());
    assert!(kappa_contains(&c, &t("e")).unwrap());
    assert!(kappa_contains(&lex(&[&[1, 1], &[0, 1]]), &t("e")).unwrap());
}

#[test]
fn pi_examples() {
    let p = PrimeOracle::kappa(&lex(&[&[1, 0]]));
    assert!(pi_contains(&p, &z(&[3, -1])).unwrap());
    assert!(!pi_contains(&p, &z(&[-1, 0])).unwrap());
    assert!(pi_contains(&p, &z(&[0, 0])).unwrap());
    assert!(pi_contains(&p, &z(&[0, -4])).unwrap());
}

#[test]
fn roundtrip_full_flag_radius_five() {
    let c = lex(&[&[1, 0], &[0, 1]]);
    let elements: Vec<GroupElement> = zvec_ball(2, 5).into_iter().map(GroupElement::ZVec).collect();
    assert_eq!(elements.len(), 121);
    let r = roundtrip_report(&c, &elements, &[t("e")], &[lex(&[&[1, 0]]), lex(&[&[0, 1]])]).unwrap();
    assert!(r.passed(), "{r:#?}");
    assert_eq!(r.check("pi_kappa").unwrap().examined, 121);
}

#[test]
fn monotone_along_truncation() {
    let full = lex(&[&[2, -1], &[1, 1]]);
    let head = lex(&[&[2, -1]]);
    let mut rng = sample::rng(11);
    let terms: Vec<LTerm> = (0..50).map(|_| sample::random_term(&mut rng, 2, 4)).collect();
    let r = roundtrip_report(&full, &[], &terms, &[head]).unwrap();
    assert!(r.passed(), "{r:#?}");
}

#[test]
fn separation_examples() {
    let family: Vec<PreCone> = [-1i64, 0, 1]
        .iter()
        .flat_map(|&a| [-1i64, 0, 1].into_iter().map(move |b| (a, b)))
        .flat_map(|(a, b)| {
            [-1i64, 0, 1].into_iter().flat_map(move |c| [-1i64, 0, 1].into_iter().map(move |d| vec![vec![a, b], vec![c, d]]))
        })
        .map(|rows| PreCone::from(LexFlagCone::from_integer_rows(2, &rows).unwrap()))
        .collect();
    assert!(seek_separating_cone(&t("g1 * g2 * g1^-1 * g2^-1"), &family).is_none());
    assert!(seek_separating_cone(&t("(g1 \\/ e) /\\ (g1^-1 \\/ e)"), &family).is_none());
    let one = [lex(&[&[1, 0]])];
    let s = seek_separating_cone(&t("g1 \\/ e"), &one).unwrap();
    assert_eq!(s.index, 0);
    assert!(equiv(&one[0], &s.image, &z(&[1, 0])));
}

#[test]
fn free_group_evaluation() {
    let flag = LexFlagCone::standard(2);
    let c: PreCone = BallCone::from_fn(2, 4, |w| match flag.classify(&w.abelianize(2)).unwrap() {
        Containment::Positive => Sign::Pos,
        Containment::Negative => Sign::Neg,
        _ => Sign::Zero,
    })
    .into();
    let e = GroupElement::FWord(Word::identity());
    assert!(!kappa_contains(&c, &t("g1 \\/ e")).unwrap());
    assert!(kappa_contains(&c, &t("g1^-1 \\/ e")).unwrap());
    let deep = t("g1 * g1 * g1 * g1 * g1");
    assert!(matches!(eval_action(&deep, &c, &e), Err(TermError::OutOfScope { radius: 4, .. })));
    // the commutator fixes [e] when the cone factors through ℤ²
    assert!(kappa_contains(&c, &t("g1^-1 * g2^-1 * g1 * g2")).unwrap());
}

#[test]
fn normal_form_positive_part() {
    let c = lex(&[&[1, -1]]);
    let g = PoGroup::zvec(2);
    for text in ["g1 * g2^-1 /\\ g2", "(g1 \\/ g2^-1) * (g2 /\\ e)"] {
        let term = t(text);
        let pos = normal_form(&term, &g).unwrap().positive_part().to_term();
        let up = LTerm::join(term, LTerm::Ident);
        for b in zvec_ball(2, 3) {
            let b = GroupElement::ZVec(b);
            assert!(equiv(&c, &eval_action(&up, &c, &b).unwrap(), &eval_action(&pos, &c, &b).unwrap()));
        }
    }
}

fn flag_cone() -> impl Strategy<Value = PreCone> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..=2)
        .prop_map(|rows| LexFlagCone::from_integer_rows(2, &rows).unwrap().into())
}

fn term() -> impl Strategy<Value = LTerm> {
    any::<u64>().prop_map(|seed| sample::random_term(&mut sample::rng(seed), 2, 4))
}

fn point() -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(-4i64..=4, 2).prop_map(GroupElement::ZVec)
}

proptest! {
    #[test]
    fn print_parse_round_trip(x in term()) {
        prop_assert_eq!(parse_term(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn normal_form_agrees(x in term(), c in flag_cone(), b in point()) {
        let nf = normal_form(&x, &PoGroup::zvec(2)).unwrap().to_term();
        prop_assert_eq!(kappa_contains(&c, &x).unwrap(), kappa_contains(&c, &nf).unwrap());
        prop_assert!(equiv(&c, &eval_action(&x, &c, &b).unwrap(), &eval_action(&nf, &c, &b).unwrap()));
    }

    #[test]
    fn action_is_a_homomorphism(x in term(), y in term(), c in flag_cone(), b in point()) {
        let whole = eval_action(&LTerm::mul(x.clone(), y.clone()), &c, &b).unwrap();
        let staged = eval_action(&y, &c, &eval_action(&x, &c, &b).unwrap()).unwrap();
        prop_assert!(equiv(&c, &whole, &staged));
    }

    #[test]
    fn representatives_do_not_matter(x in term(), c in flag_cone(), b in point(), m in -3i64..=3) {
        // move b inside its class along the kernel
        let pc = c.as_lexflag().unwrap();
        let k = match pc.rows() {
            [v] => vec![-m * v[1], m * v[0]],
            _ => vec![0, 0],
        };
        prop_assert_eq!(pc.classify(&k).unwrap(), Containment::Kernel);
        let b2 = GroupElement::ZVec(b.as_zvec().unwrap().iter().zip(&k).map(|(p, q)| p + q).collect());
        prop_assert!(equiv(&c, &eval_action(&x, &c, &b).unwrap(), &eval_action(&x, &c, &b2).unwrap()));
    }

    #[test]
    fn abs_law(x in term(), y in term(), c in flag_cone(), b in point()) {
        prop_assert!(abs_law_at(&x, &y, &c, &b).unwrap());
    }
}
