//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the summary is always printed.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::Rng;

use ordspec::fnl::{
    lgroup_laws, minimal_prime_check, no_strong_unit_witness, polar_calculus, theorem75_witness, verify_no_strong_unit,
    Truncation,
};
use ordspec::group::{GroupElement, PoGroup, Word};
use ordspec::lterm::{abs_law_at, eval_action, kappa_contains, normal_form, pi_contains, LTerm, PrimeOracle};
use ordspec::precone::{
    beta, beta_laws, cmp, cone_leq, contains, enumerate_ball_cones, is_abelian_cone, is_representable_cone,
    predicates_report, refine_to_order, zvec_ball, BallCone, Comparison, Constraints, Containment, LexFlagCone,
    PreCone, Sign, DEFAULT_MAX_PAIRS,
};
use ordspec::sample;
use ordspec::stone::{
    basic_open_laws, conp_lattice_of_fn_truncation, downset_lattice, is_discrete, is_spectral,
    non_compactness_certificate, posets_up_to_iso, stone_dual, verify_spectral, DEFAULT_MAX_J,
};

type Verdict = Result<String, String>;
type Criterion<'a> = (u32, &'a str, Option<Duration>, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every proper rank-2 flag cone with one or two rows and entries in {-2..2}.
fn flag_family() -> Vec<PreCone> {
    let vectors: Vec<Vec<i64>> = zvec_ball(2, 2);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut add = |rows: Vec<Vec<i64>>| {
        let c = LexFlagCone::from_integer_rows(2, &rows).unwrap();
        if c.is_proper() && seen.insert(c.clone()) {
            out.push(PreCone::from(c));
        }
    };
    for u in &vectors {
        add(vec![u.clone()]);
        for v in &vectors {
            add(vec![u.clone(), v.clone()]);
        }
    }
    out
}

/// Twenty seeded proper flag cones of rank 2.
fn sampled_cones(seed: u64) -> Vec<PreCone> {
    let mut rng = sample::rng(seed);
    let mut out = Vec::new();
    while out.len() < 20 {
        let rows = rng.gen_range(1..=2);
        let c = sample::random_flag(&mut rng, 2, rows, 2);
        if c.is_proper() {
            out.push(PreCone::from(c));
        }
    }
    out
}

fn equiv(c: &PreCone, a: &GroupElement, b: &GroupElement) -> Result<bool, String> {
    Ok(cmp(c, a, b).map_err(err)? == Comparison::Equiv)
}

fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    Word::ball(rank, max_len)
}

fn c1_roundtrip(family: &[PreCone]) -> Verdict {
    let ball = zvec_ball(2, 6);
    let mut n = 0u64;
    for c in family {
        let p = PrimeOracle::kappa(c);
        for a in &ball {
            let a = GroupElement::ZVec(a.clone());
            let lhs = pi_contains(&p, &a).map_err(err)?;
            let rhs = contains(c, &a).map_err(err)?.in_cone();
            ensure(lhs == rhs, || format!("{c} at {a}: pi gives {lhs}, cone gives {rhs}"))?;
            n += 1;
        }
    }
    Ok(format!("{} cones x {} points = {n} comparisons", family.len(), ball.len()))
}

fn c2_subbase(family: &[PreCone]) -> Verdict {
    let words = reduced_words(2, 3);
    for c in family {
        for w in &words {
            let a = GroupElement::ZVec(w.abelianize(2));
            let term = LTerm::join(LTerm::from_element(&GroupElement::FWord(w.clone())), LTerm::Ident);
            let positive = contains(c, &a).map_err(err)? == Containment::Positive;
            let fixed = kappa_contains(c, &term).map_err(err)?;
            ensure(positive == !fixed, || format!("{c} and word {w}: positive {positive}, kappa {fixed}"))?;
        }
    }
    Ok(format!("{} cones x {} words", family.len(), words.len()))
}

fn c3_monotone() -> Verdict {
    let mut rng = sample::rng(3);
    let mut checked = 0u64;
    for i in 0..100 {
        let rank = 2 + i % 2;
        let full = sample::random_full_flag(&mut rng, rank, 2);
        let head = full.truncate(rng.gen_range(1..rank));
        let (c, d) = (PreCone::from(full), PreCone::from(head));
        ensure(cone_leq(&c, &d).map_err(err)?, || format!("{c} is not inside {d}"))?;
        for _ in 0..50 {
            let t = sample::random_term(&mut rng, rank, 4);
            if kappa_contains(&c, &t).map_err(err)? {
                checked += 1;
                ensure(kappa_contains(&d, &t).map_err(err)?, || format!("{t} fixes [e] under {c} but not {d}"))?;
            }
        }
    }
    Ok(format!("100 pairs x 50 terms, {checked} implications exercised"))
}

fn c4_normal_form(cones: &[PreCone]) -> Verdict {
    let mut rng = sample::rng(4);
    let g = PoGroup::zvec(2);
    let points: Vec<GroupElement> = (0..5).map(|_| GroupElement::ZVec(sample::random_zvec(&mut rng, 2, 4))).collect();
    for _ in 0..500 {
        let t = sample::random_term(&mut rng, 2, 4);
        let nf = normal_form(&t, &g).map_err(err)?.to_term();
        for c in cones {
            let (a, b) = (kappa_contains(c, &t).map_err(err)?, kappa_contains(c, &nf).map_err(err)?);
            ensure(a == b, || format!("{t} vs its normal form under {c}: kappa {a} vs {b}"))?;
            for p in &points {
                let (x, y) = (eval_action(&t, c, p).map_err(err)?, eval_action(&nf, c, p).map_err(err)?);
                ensure(equiv(c, &x, &y)?, || format!("{t} at {p} under {c}: {x} vs {y}"))?;
            }
        }
    }
    Ok("500 terms x 20 cones x (kappa + 5 points)".into())
}

fn c5_predicates(family: &[PreCone]) -> Verdict {
    for c in family {
        ensure(is_representable_cone(c, 3) && is_abelian_cone(c) && predicates_report(c, 3).passed(), || {
            format!("flag cone {c} fails a predicate")
        })?;
    }
    let w = |s: &str| s.parse::<Word>().unwrap();
    let flip = enumerate_ball_cones(
        2,
        3,
        &Constraints::default().fix(w("g2"), Sign::Pos).fix(w("g1^-1 g2 g1"), Sign::Neg),
        DEFAULT_MAX_PAIRS,
    )
    .map_err(err)?
    .next()
    .ok_or("no cone with a sign-flipped conjugate")?;
    let (a, p, n) = flip.representability_witness(1).ok_or("flipped cone passes representability")?;
    ensure(flip.sign(&p.mul(&a.mul(&p.inverse()))) == Some(Sign::Pos), || "positive conjugate has the wrong sign".into())?;
    ensure(flip.sign(&n.mul(&a.mul(&n.inverse()))) == Some(Sign::Neg), || "negative conjugate has the wrong sign".into())?;
    let report = predicates_report(&flip.clone().into(), 1);
    ensure(!report.check("representable").unwrap().passed, || "report misses the flipped conjugate".into())?;

    let comm = w("g1").commutator(&w("g2"));
    let skew = enumerate_ball_cones(2, 4, &Constraints::default().fix(comm.clone(), Sign::Pos), 100)
        .map_err(err)?
        .next()
        .ok_or("no cone with a positive commutator")?;
    let (x, y) = skew.commutator_witness().ok_or("positive commutator not detected")?;
    ensure(skew.sign(&x.commutator(&y)) != Some(Sign::Zero), || "commutator witness lies in the kernel".into())?;
    ensure(!predicates_report(&skew.into(), 1).check("abelian").unwrap().passed, || "abelian check passes".into())?;
    Ok(format!("{} flags pass; conjugate flip of {a} and commutator {comm} are caught", family.len()))
}

fn c6_refinement(family: &[PreCone]) -> Verdict {
    let p = LexFlagCone::standard(2);
    let ball = zvec_ball(2, 6);
    let mut n = 0;
    for c in family {
        let c = c.as_lexflag().unwrap();
        if c.is_full_rank() {
            continue;
        }
        n += 1;
        let r = refine_to_order(c, &p).map_err(err)?;
        ensure(r.is_full_rank(), || format!("refinement of {c:?} is not total"))?;
        for a in &ball {
            if r.classify(a).map_err(err)? == Containment::Positive {
                ensure(c.classify(a).map_err(err)?.in_cone(), || format!("{a:?} positive in refinement, outside {c:?}"))?;
            }
        }
    }
    Ok(format!("{n} non-total flags refined, radius 6"))
}

fn c7_beta(family: &[PreCone]) -> Verdict {
    for c in family {
        let b = beta(c, 1).map_err(err)?;
        ensure(&b == c, || format!("β moves the normal cone {c}"))?;
        ensure(beta(&b, 1).map_err(err)? == b, || format!("β not idempotent at {c}"))?;
    }
    let mut pairs = 0u64;
    for c in family {
        for d in family {
            if cone_leq(c, d).map_err(err)? {
                pairs += 1;
                let (bc, bd) = (beta(c, 1).map_err(err)?, beta(d, 1).map_err(err)?);
                ensure(cone_leq(&bc, &bd).map_err(err)?, || format!("monotonicity fails for {c} inside {d}"))?;
            }
        }
    }
    let balls: Vec<BallCone> =
        enumerate_ball_cones(2, 3, &Constraints { representable: Some(1), ..Default::default() }, DEFAULT_MAX_PAIRS)
            .map_err(err)?
            .take(30)
            .collect();
    ensure(balls.len() >= 20, || format!("only {} ball cones", balls.len()))?;
    let report = beta_laws(&balls, 1);
    ensure(report.passed(), || format!("{:?}", report.failures().collect::<Vec<_>>()))?;
    let flag = LexFlagCone::standard(2);
    let normal = BallCone::from_fn(2, 3, |x| match flag.classify(&x.abelianize(2)).unwrap() {
        Containment::Positive => Sign::Pos,
        Containment::Negative => Sign::Neg,
        _ => Sign::Zero,
    });
    ensure(normal.beta(1).map_err(err)? == normal.restrict(1), || "β moves a normal ball cone".into())?;
    let note = report.check("idempotent").and_then(|c| c.note.clone()).unwrap_or_default();
    Ok(format!(
        "{} flags exact, {pairs} monotone pairs; {} F2 cones at radius 3 (idempotence: {})",
        family.len(),
        balls.len(),
        if note.is_empty() { "checked".to_string() } else { note }
    ))
}

fn c8_stone() -> Verdict {
    let mut total = 0;
    for m in 0..=5 {
        for j in posets_up_to_iso(m) {
            total += 1;
            let d = downset_lattice(&j, DEFAULT_MAX_J).map_err(err)?;
            ensure(d.join_irreducible_poset().is_isomorphic(&j), || format!("Birkhoff round trip fails for {j:?}"))?;
            let dual = stone_dual(&d);
            ensure(dual.space.order.is_isomorphic(&j), || format!("dual poset differs from {j:?}"))?;
            let r = verify_spectral(&dual.space);
            ensure(is_spectral(&r), || format!("dual of {j:?}: {:?}", r.failures().collect::<Vec<_>>()))?;
            ensure(r.check("root_system").unwrap().passed == j.is_root_system(), || format!("root system mismatch for {j:?}"))?;
            let laws = basic_open_laws(&d, &dual);
            ensure(laws.passed(), || format!("basic opens of {j:?}: {:?}", laws.failures().collect::<Vec<_>>()))?;
        }
    }
    ensure(total == 1 + 1 + 2 + 5 + 16 + 63, || format!("{total} posets enumerated"))?;
    for level in 0..=8u64 {
        let t = conp_lattice_of_fn_truncation(level, DEFAULT_MAX_J).map_err(err)?;
        ensure(t.provenance_check().passed, || format!("provenance at level {level}"))?;
        let dual = stone_dual(&t.lattice);
        ensure(dual.space.points() as u64 == level && is_discrete(&dual.space), || format!("level {level} dual is not discrete"))?;
        ensure(verify_spectral(&dual.space).passed(), || format!("level {level} dual fails a check"))?;
    }
    ensure(non_compactness_certificate(0..=8, DEFAULT_MAX_J).map_err(err)?.passed(), || "no escape found".into())?;
    Ok(format!("{total} posets up to size 5; truncations 0..=8 discrete; no top at any level"))
}

fn c9_example() -> Verdict {
    let window = Truncation::new(4, 2);
    for n in 0..4 {
        let r = minimal_prime_check(n, window).map_err(err)?;
        ensure(r.passed(), || format!("m_{n}: {:?}", r.failures().collect::<Vec<_>>()))?;
    }
    let polars = polar_calculus(Truncation::new(4, 1));
    ensure(polars.passed(), || format!("{:?}", polars.failures().collect::<Vec<_>>()))?;
    let positives = window.positive_elements();
    for f in &positives {
        let (g, r) = theorem75_witness(f, 4).map_err(err)?;
        ensure(r.passed(), || format!("complement {g} of {f} fails"))?;
    }
    let mut rng = sample::rng(9);
    for _ in 0..100 {
        let u = sample::random_finsupp(&mut rng, 6, 3);
        let w = no_strong_unit_witness(&u);
        ensure(verify_no_strong_unit(&u, &w), || format!("{w} does not escape {u}"))?;
    }
    Ok(format!("minimal primes n<4 box 2; polars level 4 box 1; {} complements; 100 certificates", positives.len()))
}

fn c10_abs_law(cones: &[PreCone]) -> Verdict {
    let mut rng = sample::rng(10);
    let e = GroupElement::ZVec(vec![0, 0]);
    for _ in 0..1000 {
        let (x, y) = (sample::random_term(&mut rng, 2, 3), sample::random_term(&mut rng, 2, 3));
        for c in cones {
            ensure(abs_law_at(&x, &y, c, &e).map_err(err)?, || format!("|xy| ≤ |x||y||x| fails for {x}, {y} under {c}"))?;
        }
    }
    for _ in 0..1000 {
        let (x, y) = (sample::random_finsupp(&mut rng, 5, 3), sample::random_finsupp(&mut rng, 5, 3));
        let (ax, ay) = (x.abs(), y.abs());
        ensure(x.add(&y).abs().leq(&ax.add(&ay).add(&ax)), || format!("fails for {x}, {y}"))?;
    }
    let laws = lgroup_laws(Truncation::new(2, 2));
    ensure(laws.passed(), || format!("{:?}", laws.failures().collect::<Vec<_>>()))?;
    Ok("1000 term pairs x 20 cones; 1000 function pairs".into())
}

fn main() {
    let family = flag_family();
    let cones = sampled_cones(20);
    let criteria: Vec<Criterion> = vec![
        (1, "kappa/pi round trip", Some(Duration::from_secs(60)), Box::new(|| c1_roundtrip(&family))),
        (2, "subbase identity", None, Box::new(|| c2_subbase(&family))),
        (3, "kappa monotone", None, Box::new(c3_monotone)),
        (4, "normal form soundness", None, Box::new(|| c4_normal_form(&cones))),
        (5, "representable/Abelian predicates", None, Box::new(|| c5_predicates(&family))),
        (6, "refinement to an order", None, Box::new(|| c6_refinement(&family))),
        (7, "beta interior operator", None, Box::new(|| c7_beta(&family))),
        (8, "finite Stone duality", Some(Duration::from_secs(120)), Box::new(c8_stone)),
        (9, "finitely supported functions", None, Box::new(c9_example)),
        (10, "absolute value law", None, Box::new(|| c10_abs_law(&cones))),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in &criteria {
        let start = Instant::now();
        let mut verdict = run();
        let took = start.elapsed();
        if let (Ok(_), Some(limit)) = (&verdict, limit) {
            if took > *limit {
                verdict = Err(format!("took {took:.1?}, limit {limit:?}"));
            }
        }
        match verdict {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why} [{took:.2?}]");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
