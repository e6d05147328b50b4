//! Command handlers. Each returns an [`Outcome`]; `Err` means a usage or
//! input problem and maps to exit code 2.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use ordspec::fnl::{
    lgroup_laws, minimal_prime_check, no_strong_unit_witness, polar_calculus, theorem75_witness, verify_no_strong_unit,
    FinSuppFn, Truncation,
};
use ordspec::group::{GroupElement, OrderKind, PoGroup};
use ordspec::lterm::{eval_action, kappa_contains, normal_form, parse_term, parse_term_in_rank, seek_separating_cone, LTerm};
use ordspec::precone::{
    beta, check_axioms, cone_leq_witness, default_group, enumerate_ball_cones, is_abelian_cone, is_normal,
    is_representable_cone, predicates_report, refine_to_order, zvec_ball, ConeError, Constraints, Containment,
    LexFlagCone, PreCone,
};
use ordspec::report::{Check, Report};
use ordspec::sample;
use ordspec::stone::{
    basic_open_laws, conp_lattice_of_fn_truncation, downset_lattice, is_discrete, is_spectral, non_compactness_certificate,
    stone_dual, verify_spectral, FinPoset, FiniteSpace,
};

use crate::config::{Format, RunConfig};
use crate::{ConeCmd, FnlCmd, LatticeArgs, StoneCmd, TermCmd, WindowArgs};

/// Largest number of elementary steps a window sweep may take.
const WINDOW_WORK_LIMIT: u128 = 50_000_000;

pub struct Outcome {
    pub command: &'static str,
    pub passed: bool,
    pub result: Value,
    pub reports: Vec<Report>,
    pub dot: Option<String>,
}

impl Outcome {
    fn info(command: &'static str, result: Value) -> Self {
        Outcome { command, passed: true, result, reports: Vec::new(), dot: None }
    }

    fn checked(command: &'static str, result: Value, reports: Vec<Report>) -> Self {
        let passed = reports.iter().all(Report::passed);
        Outcome { command, passed, result, reports, dot: None }
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        // `dot` is only set when DOT output was asked for
        match (cfg.format, &self.dot) {
            (_, Some(d)) => d.clone(),
            (Format::Text, _) => self.text(cfg),
            _ => {
                let mut s = serde_json::to_string_pretty(&json!({
                    "command": self.command,
                    "seed": cfg.seed,
                    "passed": self.passed,
                    "result": self.result,
                    "reports": self.reports,
                }))
                .expect("values serialize");
                s.push('\n');
                s
            }
        }
    }

    fn text(&self, cfg: &RunConfig) -> String {
        let mut s = format!("{} {} (seed {})\n", self.command, if self.passed { "PASS" } else { "FAIL" }, cfg.seed);
        for r in &self.reports {
            s.push_str(&format!("{}\n", r.title));
            for c in &r.checks {
                s.push_str(&format!("  {} {} [{}] {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.examined, c.law));
                if let Some(w) = &c.witness {
                    s.push_str(&format!("    witness {w}\n"));
                }
                if let Some(n) = &c.note {
                    s.push_str(&format!("    note {n}\n"));
                }
            }
        }
        if self.reports.is_empty() || !self.result.is_null() {
            s.push_str(&format!("{}\n", self.result));
        }
        s
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_cone(path: &Path) -> Result<PreCone> {
    read_json(path)
}

fn parse(text: &str, rank: usize) -> Result<LTerm> {
    parse_term_in_rank(text, rank).map_err(|e| anyhow!("term `{text}`: {e}"))
}

/// A group word given as a term without lattice operations.
fn element(text: &str, group: &PoGroup) -> Result<GroupElement> {
    let t = parse(text, group.rank)?;
    let nf = normal_form(&t, group)?;
    match nf.rows.as_slice() {
        [row] if row.len() == 1 => Ok(row[0].clone()),
        _ => bail!("`{text}` is not a group element"),
    }
}

pub fn term(cmd: &TermCmd, _cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        TermCmd::Parse { term } => {
            let t = parse_term(term).map_err(|e| anyhow!("{e}"))?;
            Ok(Outcome::info("term parse", json!({ "term": t.to_string(), "ast": t.to_ast() })))
        }
        TermCmd::Normalize { term, group } => {
            let t = parse_term(term).map_err(|e| anyhow!("{e}"))?;
            let rank = group.rank.unwrap_or(t.max_generator().max(1));
            let g = if group.group == "zvec" { PoGroup::zvec(rank) } else { PoGroup::fword(rank) };
            let nf = normal_form(&t, &g)?;
            Ok(Outcome::info(
                "term normalize",
                json!({
                    "term": t.to_string(),
                    "group": group.group,
                    "rank": rank,
                    "normal_form": nf.to_string(),
                    "rows": nf.rows,
                    "positive_part": nf.positive_part().to_string(),
                }),
            ))
        }
        TermCmd::Eval { cone, at, term } => {
            let c = read_cone(cone)?;
            let b = element(at, &c.group())?;
            let t = parse(term, c.rank())?;
            let image = eval_action(&t, &c, &b)?;
            Ok(Outcome::info("term eval", json!({ "term": t.to_string(), "at": b, "representative": image })))
        }
        TermCmd::Kappa { cone, terms, inline } => {
            let c = read_cone(cone)?;
            let mut texts: Vec<String> = match terms {
                Some(p) => read_json(p)?,
                None => Vec::new(),
            };
            texts.extend(inline.iter().cloned());
            if texts.is_empty() {
                bail!("no terms given");
            }
            let mut rows = Vec::new();
            for text in &texts {
                let t = parse(text, c.rank())?;
                rows.push(match kappa_contains(&c, &t) {
                    Ok(b) => json!({ "term": t.to_string(), "kappa": b }),
                    Err(e) => json!({ "term": t.to_string(), "error": e.to_string() }),
                });
            }
            Ok(Outcome::info("term kappa", Value::Array(rows)))
        }
        TermCmd::Separate { term, family } => {
            let family: Vec<PreCone> = match family {
                Some(p) => read_json(p)?,
                None => small_flags(),
            };
            let rank = family.iter().map(PreCone::rank).max().unwrap_or(0);
            let t = parse(term, rank)?;
            let result = match seek_separating_cone(&t, &family) {
                Some(s) => json!({ "found": true, "index": s.index, "cone": s.cone, "image": s.image }),
                None => json!({ "found": false, "searched": family.len() }),
            };
            Ok(Outcome::info("term separate", result))
        }
    }
}

fn small_flags() -> Vec<PreCone> {
    let r = [-1i64, 0, 1];
    let mut out = Vec::new();
    for a in r {
        for b in r {
            for c in r {
                for d in r {
                    if let Ok(f) = LexFlagCone::from_integer_rows(2, &[vec![a, b], vec![c, d]]) {
                        let p = PreCone::from(f);
                        if !out.contains(&p) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn cone(cmd: &ConeCmd, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        ConeCmd::Check { cone, coordinatewise } => {
            let c = read_cone(cone)?;
            let order = if *coordinatewise { OrderKind::Coordinatewise } else { OrderKind::Trivial };
            let report = check_axioms(&c, &default_group(&c, order)?)?;
            Ok(Outcome::checked("cone check", json!({ "scope": c.scope() }), vec![report]))
        }
        ConeCmd::Compare { left, right } => {
            let (a, b) = (read_cone(left)?, read_cone(right)?);
            let ab = cone_leq_witness(&a, &b)?;
            let ba = cone_leq_witness(&b, &a)?;
            Ok(Outcome::info(
                "cone compare",
                json!({
                    "left_in_right": ab.is_none(),
                    "right_in_left": ba.is_none(),
                    "left_not_right": ab,
                    "right_not_left": ba,
                }),
            ))
        }
        ConeCmd::Beta { cone, budget } => {
            let c = read_cone(cone)?;
            let k = budget.unwrap_or(cfg.cone.budget);
            match beta(&c, k) {
                Ok(b) => {
                    let note = match (&c, b.scope()) {
                        (PreCone::LexFlag(_), _) => "flag cones are normal, so β is the identity".to_string(),
                        (_, Some(r)) => format!("valid on the radius {r} ball: conjugation by words of length ≤ {k} uses 2·{k} letters"),
                        _ => String::new(),
                    };
                    Ok(Outcome::info("cone beta", json!({ "budget": k, "cone": b, "scope_note": note })))
                }
                Err(e @ ConeError::NotRepresentable { .. }) => Ok(Outcome {
                    command: "cone beta",
                    passed: false,
                    result: json!({ "budget": k, "refused": e.to_string() }),
                    reports: Vec::new(),
                    dot: None,
                }),
                Err(e) => Err(e.into()),
            }
        }
        ConeCmd::Refine { cone, order } => {
            let c = read_cone(cone)?;
            let c = c.as_lexflag().context("refine needs a flag cone")?;
            let p = match order {
                Some(path) => read_cone(path)?.as_lexflag().cloned().context("the order must be a flag cone")?,
                None => LexFlagCone::standard(c.rank()),
            };
            let refined = refine_to_order(c, &p)?;
            let mut report = Report::new("refinement");
            report.push(Check::from_witness(
                "full_rank",
                "the refinement is a total order",
                1,
                (!refined.is_full_rank()).then(|| json!({ "rows": refined.rows().len() })),
            ));
            let ball = zvec_ball(c.rank(), 6);
            let escaped = ball.iter().find(|a| {
                refined.classify(a).map(Containment::in_cone).unwrap_or(false) && !c.classify(a).map(Containment::in_cone).unwrap_or(false)
            });
            report.push(Check::from_witness(
                "contained",
                "the refinement's positive set lies in the original cone",
                ball.len() as u64,
                escaped.map(|a| json!({ "a": a })),
            ));
            Ok(Outcome::checked("cone refine", json!({ "cone": PreCone::from(refined) }), vec![report]))
        }
        ConeCmd::Enumerate { rank, radius, normal, no_kernel, representable, emit } => {
            let r = radius.unwrap_or(cfg.cone.radius);
            let constraints =
                Constraints { normal: *normal, no_kernel: *no_kernel, representable: *representable, ..Default::default() };
            let stream = enumerate_ball_cones(*rank, r, &constraints, cfg.cone.max_pairs)?;
            let mut count = 0u64;
            let mut cones = Vec::new();
            for c in stream {
                count += 1;
                if *emit {
                    cones.push(PreCone::from(c));
                }
            }
            let mut result = json!({ "rank": rank, "radius": r, "count": count });
            if *emit {
                result["cones"] = json!(cones);
            }
            Ok(Outcome::info("cone enumerate", result))
        }
        ConeCmd::Predicates { cone, budget } => {
            let c = read_cone(cone)?;
            let k = budget.unwrap_or(cfg.cone.budget);
            let report = predicates_report(&c, k);
            let scope = match c.scope() {
                Some(r) => format!("necessary at radius {r}"),
                None => "exact".to_string(),
            };
            Ok(Outcome {
                command: "cone predicates",
                passed: true,
                result: json!({
                    "normal": is_normal(&c),
                    "representable": is_representable_cone(&c, k),
                    "abelian": is_abelian_cone(&c),
                    "budget": k,
                    "scope": scope,
                }),
                reports: vec![report],
                dot: None,
            })
        }
    }
}

fn lattice_base(args: &LatticeArgs) -> Result<FinPoset> {
    match (args.antichain, args.chain, &args.poset) {
        (Some(n), None, None) => Ok(FinPoset::antichain(n)),
        (None, Some(n), None) => Ok(FinPoset::chain(n)),
        (None, None, Some(p)) => read_json(p),
        _ => bail!("give exactly one of --antichain, --chain or --poset"),
    }
}

fn dot_if(flag: bool, cfg: &RunConfig, dot: String) -> Option<String> {
    (flag || cfg.format == Format::Dot).then_some(dot)
}

pub fn stone(cmd: &StoneCmd, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        StoneCmd::Dual { lattice, dot } => {
            let d = downset_lattice(&lattice_base(lattice)?, cfg.stone.max_j)?;
            let dual = stone_dual(&d);
            let spectral = verify_spectral(&dual.space);
            let laws = basic_open_laws(&d, &dual);
            let passed = is_spectral(&spectral) && laws.passed();
            let result = json!({
                "lattice": d,
                "prime_ideals": dual.ideals,
                "space": dual.space,
            });
            let mut out = Outcome { command: "stone dual", passed, result, reports: vec![spectral, laws], dot: None };
            out.dot = dot_if(*dot, cfg, dual.space.to_dot(Some(&dual.labels())));
            Ok(out)
        }
        StoneCmd::Verify { poset } => {
            let p: FinPoset = read_json(poset)?;
            if p.len() > cfg.stone.max_j {
                bail!("space has {} points, budget stone.maxJ is {}", p.len(), cfg.stone.max_j);
            }
            let space = FiniteSpace::from_poset(&p);
            let report = verify_spectral(&space);
            Ok(Outcome::checked("stone verify", json!({ "points": p.len(), "order": p }), vec![report]))
        }
        StoneCmd::Conp { level, dot } => {
            if *level as usize > cfg.stone.max_n {
                bail!("level {level} exceeds budget stone.maxN = {}", cfg.stone.max_n);
            }
            let t = conp_lattice_of_fn_truncation(*level, cfg.stone.max_n)?;
            let dual = stone_dual(&t.lattice);
            let spectral = verify_spectral(&dual.space);
            let mut shape = Report::new(format!("dual of the level {level} truncation"));
            shape.push(t.provenance_check());
            shape.push(Check::from_witness(
                "discrete",
                "the dual is a discrete space with one point per index",
                1,
                (!is_discrete(&dual.space) || dual.space.points() as u64 != *level)
                    .then(|| json!({ "points": dual.space.points() })),
            ));
            let unbounded = non_compactness_certificate(0..=*level, cfg.stone.max_n)?;
            let result = json!({
                "level": level,
                "lattice_size": t.lattice.len(),
                "provenance": t.provenance,
                "directed_family_without_top": true,
                "space": dual.space,
            });
            let mut out = Outcome::checked("stone conp", result, vec![shape, spectral, unbounded]);
            out.dot = dot_if(*dot, cfg, dual.space.to_dot(None));
            Ok(out)
        }
    }
}

fn window(args: &WindowArgs, cfg: &RunConfig, work: impl Fn(u128, u128) -> u128) -> Result<Truncation> {
    let t = Truncation::new(args.level.unwrap_or(cfg.fnl.level), args.bound.unwrap_or(cfg.fnl.bound));
    if t.bound < 0 {
        bail!("box must be nonnegative");
    }
    let u = (2 * t.bound as u128 + 1).checked_pow(t.level as u32).unwrap_or(u128::MAX);
    let p = (t.bound as u128 + 1).checked_pow(t.level as u32).unwrap_or(u128::MAX);
    let w = work(u, p);
    if w > WINDOW_WORK_LIMIT {
        bail!("window level {} box {} needs about {w} steps, limit is {WINDOW_WORK_LIMIT}", t.level, t.bound);
    }
    Ok(t)
}

fn finsupp(text: &str) -> Result<FinSuppFn> {
    text.parse().map_err(|e| anyhow!("function `{text}`: {e}"))
}

pub fn fnl(cmd: &FnlCmd, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        FnlCmd::Laws(args) => {
            let t = window(args, cfg, |u, _| u.saturating_mul(u).saturating_mul(u))?;
            Ok(Outcome::checked("fnl laws", json!({ "window": t }), vec![lgroup_laws(t)]))
        }
        FnlCmd::Polars(args) => {
            let t = window(args, cfg, |u, p| p.saturating_mul(p).saturating_mul(u).saturating_mul(u))?;
            Ok(Outcome::checked("fnl polars", json!({ "window": t }), vec![polar_calculus(t)]))
        }
        FnlCmd::Minprimes(args) => {
            let t = window(args, cfg, |u, _| u.saturating_mul(u).saturating_mul(4))?;
            let reports = (0..t.level).map(|n| minimal_prime_check(n, t)).collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::checked("fnl minprimes", json!({ "window": t }), reports))
        }
        FnlCmd::T75 { f, level } => {
            let f = finsupp(f)?;
            let level = level.unwrap_or(cfg.fnl.level);
            let (g, report) = theorem75_witness(&f, level)?;
            Ok(Outcome::checked("fnl t75", json!({ "f": f, "level": level, "complement": g }), vec![report]))
        }
        FnlCmd::Nostrongunit { u, samples } => {
            let us: Vec<FinSuppFn> = match u {
                Some(text) => vec![finsupp(text)?],
                None => {
                    let mut rng = sample::rng(cfg.seed);
                    (0..*samples).map(|_| sample::random_finsupp(&mut rng, cfg.fnl.level, cfg.fnl.bound)).collect()
                }
            };
            let mut bad = None;
            let mut certs = Vec::new();
            for u in &us {
                let w = no_strong_unit_witness(u);
                if bad.is_none() && !verify_no_strong_unit(u, &w) {
                    bad = Some(json!({ "u": u, "w": w }));
                }
                certs.push(json!({ "u": u, "escapes": w }));
            }
            let mut report = Report::new("no strong unit");
            report.push(Check::from_witness(
                "certificates",
                "the escaping basis function is positive and dominated by no multiple of |u|",
                us.len() as u64,
                bad,
            ));
            Ok(Outcome::checked("fnl nostrongunit", Value::Array(certs), vec![report]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ordspec::precone::contains;

    #[test]
    fn elements_from_words() {
        let g = PoGroup::zvec(2);
        assert_eq!(element("g1 * g2^-1 * g1", &g).unwrap(), GroupElement::ZVec(vec![2, -1]));
        assert!(element("g1 \\/ e", &g).is_err());
        assert!(element("g3", &g).is_err());
    }

    #[test]
    fn default_separation_family_is_deduplicated() {
        let f = small_flags();
        let total = f.len();
        let mut seen = f.clone();
        seen.dedup();
        assert_eq!(seen.len(), total);
        assert!(f.iter().all(|c| contains(c, &GroupElement::ZVec(vec![0, 0])).unwrap() == Containment::Kernel));
    }
}
