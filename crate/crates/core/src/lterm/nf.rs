//! Meet-of-joins normal form `⋀_i ⋁_j a_ij` with group elements `a_ij`.
//!
//! Multiplication distributes over `∧` and `∨` on both sides and inversion
//! swaps them, so every term can be pushed into this shape. Rows are kept
//! sorted and deduplicated, and a row that contains another row is dropped
//! (it only adds a larger joinand to the meet).

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{LTerm, TermError};
use crate::group::{GroupElement, PoGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetJoinNF {
    pub rows: Vec<Vec<GroupElement>>,
}

/// The same rows read as `⋀_i ⋁_j (a_ij ∨ e)`: the normal form of `t ∨ e`,
/// which is `t` itself whenever `t` is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveNF {
    pub rows: Vec<Vec<GroupElement>>,
}

type Rows = Vec<BTreeSet<GroupElement>>;

fn simplify(rows: Rows) -> Rows {
    let mut rows: Vec<BTreeSet<GroupElement>> = rows.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    rows.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Rows = Vec::new();
    for r in rows {
        if !kept.iter().any(|k| k.is_subset(&r)) {
            kept.push(r);
        }
    }
    kept
}

fn rows_of(t: &LTerm, g: &PoGroup, negated: bool) -> Result<Rows, TermError> {
    Ok(match t {
        LTerm::Ident => vec![BTreeSet::from([g.identity()])],
        LTerm::Gen(k) => {
            let x = g.generator(*k)?;
            vec![BTreeSet::from([if negated { g.inv(&x)? } else { x }])]
        }
        LTerm::Inv(x) => rows_of(x, g, !negated)?,
        LTerm::Mul(x, y) => {
            let (first, second) = if negated { (y, x) } else { (x, y) };
            let (a, b) = (rows_of(first, g, negated)?, rows_of(second, g, negated)?);
            let mut out = Vec::with_capacity(a.len() * b.len());
            for ra in &a {
                for rb in &b {
                    let mut row = BTreeSet::new();
                    for p in ra {
                        for q in rb {
                            row.insert(g.mul(p, q)?);
                        }
                    }
                    out.push(row);
                }
            }
            simplify(out)
        }
        LTerm::Meet(x, y) | LTerm::Join(x, y) => {
            let is_meet = matches!(t, LTerm::Meet(..)) != negated;
            let (a, b) = (rows_of(x, g, negated)?, rows_of(y, g, negated)?);
            if is_meet {
                simplify(a.into_iter().chain(b).collect())
            } else {
                let mut out = Vec::with_capacity(a.len() * b.len());
                for ra in &a {
                    for rb in &b {
                        out.push(ra.union(rb).cloned().collect());
                    }
                }
                simplify(out)
            }
        }
    })
}

/// Normal form of `t` in the group `g`, whose generators interpret `g1..gn`.
pub fn normal_form(t: &LTerm, g: &PoGroup) -> Result<MeetJoinNF, TermError> {
    t.check_rank(g.rank)?;
    let rows = rows_of(t, g, false)?;
    Ok(MeetJoinNF { rows: rows.into_iter().map(|r| r.into_iter().collect()).collect() })
}

impl MeetJoinNF {
    pub fn to_term(&self) -> LTerm {
        let join_row = |row: &[GroupElement]| {
            row.iter().map(LTerm::from_element).reduce(LTerm::join).expect("rows are nonempty")
        };
        self.rows.iter().map(|r| join_row(r)).reduce(LTerm::meet).expect("at least one row")
    }

    pub fn positive_part(&self) -> PositiveNF {
        PositiveNF { rows: self.rows.clone() }
    }
}

impl PositiveNF {
    pub fn to_term(&self) -> LTerm {
        let atom = |a: &GroupElement| LTerm::join(LTerm::from_element(a), LTerm::Ident);
        self.rows
            .iter()
            .map(|r| r.iter().map(atom).reduce(LTerm::join).expect("rows are nonempty"))
            .reduce(LTerm::meet)
            .expect("at least one row")
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<GroupElement>], positive: bool) -> fmt::Result {
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            write!(f, " /\\ ")?;
        }
        write!(f, "(")?;
        for (j, a) in r.iter().enumerate() {
            if j > 0 {
                write!(f, " \\/ ")?;
            }
            if positive {
                write!(f, "({a} \\/ e)")?;
            } else {
                write!(f, "{a}")?;
            }
        }
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for MeetJoinNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows, false)
    }
}

impl fmt::Display for PositiveNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Word;
    use crate::lterm::parse_term;

    fn w(s: &str) -> GroupElement {
        GroupElement::FWord(s.parse::<Word>().unwrap())
    }

    fn nf(text: &str) -> MeetJoinNF {
        normal_form(&parse_term(text).unwrap(), &PoGroup::fword(3)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(nf("g1 \\/ e").rows, vec![vec![w("e"), w("g1")]]);
        assert_eq!(nf("(g1 /\\ e) * g2").rows, vec![vec![w("g2")], vec![w("g1 g2")]]);
        assert_eq!(nf("(g1 \\/ e) /\\ (g2 \\/ e)").rows, vec![vec![w("e"), w("g1")], vec![w("e"), w("g2")]]);
    }

    #[test]
    fn inverse_swaps_lattice_operations() {
        // (g1 ∨ g2)⁻¹ = g1⁻¹ ∧ g2⁻¹
        assert_eq!(nf("(g1 \\/ g2)^-1").rows, vec![vec![w("g1^-1")], vec![w("g2^-1")]]);
        // ((g1 ∧ g2) ∨ g3)⁻¹ = (g1⁻¹ ∨ g2⁻¹) ∧ g3⁻¹
        assert_eq!(nf("((g1 /\\ g2) \\/ g3)^-1").rows, vec![vec![w("g3^-1")], vec![w("g1^-1"), w("g2^-1")]]);
        assert_eq!(nf("(g1 * g2)^-1").rows, vec![vec![w("g2^-1 g1^-1")]]);
    }

    #[test]
    fn absorption() {
        assert_eq!(nf("g1 /\\ (g1 \\/ g2)").rows, vec![vec![w("g1")]]);
        assert_eq!(nf("g1 /\\ g1").rows, vec![vec![w("g1")]]);
    }

    #[test]
    fn abelian_atoms() {
        let t = parse_term("g1 * g2 * g1^-1").unwrap();
        let n = normal_form(&t, &PoGroup::zvec(2)).unwrap();
        assert_eq!(n.rows, vec![vec![GroupElement::ZVec(vec![0, 1])]]);
        assert!(normal_form(&t, &PoGroup::zvec(1)).is_err());
    }
}
