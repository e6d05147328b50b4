//! Text syntax for terms.
//!
//! ```text
//! expr    := lattice
//! lattice := product (("/\" product)* | ("\/" product)*)
//! product := postfix ("*" postfix)*
//! postfix := atom ("^-1")*
//! atom    := "e" | "g" digits | "(" expr ")"
//! ```
//!
//! Meet and join share a precedence level and may not be mixed without
//! parentheses. Chains of one operator associate to the left.

use std::fmt;

use super::{LTerm, TermError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident,
    Gen(usize),
    Star,
    InvMark,
    Meet,
    Join,
    Open,
    Close,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident => write!(f, "`e`"),
            Tok::Gen(k) => write!(f, "`g{k}`"),
            Tok::Star => write!(f, "`*`"),
            Tok::InvMark => write!(f, "`^-1`"),
            Tok::Meet => write!(f, "`/\\`"),
            Tok::Join => write!(f, "`\\/`"),
            Tok::Open => write!(f, "`(`"),
            Tok::Close => write!(f, "`)`"),
        }
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> TermError {
    TermError::Syntax { pos, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, TermError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let tok = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            'e' => {
                i += 1;
                Tok::Ident
            }
            'g' => {
                i += 1;
                let digits_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(syntax(start, "expected a generator index after `g`"));
                }
                let digits: String = chars[digits_start..i].iter().collect();
                let k: usize = digits.parse().map_err(|_| syntax(start, "generator index too large"))?;
                if k == 0 {
                    return Err(syntax(start, "generators are numbered from 1"));
                }
                Tok::Gen(k)
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '(' => {
                i += 1;
                Tok::Open
            }
            ')' => {
                i += 1;
                Tok::Close
            }
            '^' if rest == "^-1" => {
                i += 3;
                Tok::InvMark
            }
            '^' => return Err(syntax(start, "only `^-1` is supported as an exponent")),
            '/' if rest.starts_with("/\\") => {
                i += 2;
                Tok::Meet
            }
            '\\' if rest.starts_with("\\/") => {
                i += 2;
                Tok::Join
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn lattice(&mut self) -> Result<LTerm, TermError> {
        let mut left = self.product()?;
        let mut op: Option<Tok> = None;
        while let Some(t @ (Tok::Meet | Tok::Join)) = self.peek().cloned() {
            if let Some(prev) = &op {
                if *prev != t {
                    return Err(syntax(self.pos(), "mixing `/\\` and `\\/` requires parentheses"));
                }
            }
            self.at += 1;
            let right = self.product()?;
            left = if t == Tok::Meet { LTerm::meet(left, right) } else { LTerm::join(left, right) };
            op = Some(t);
        }
        Ok(left)
    }

    fn product(&mut self) -> Result<LTerm, TermError> {
        let mut left = self.postfix()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            let right = self.postfix()?;
            left = LTerm::mul(left, right);
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<LTerm, TermError> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::InvMark) {
            self.at += 1;
            t = LTerm::inv(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<LTerm, TermError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Ident) => {
                self.at += 1;
                Ok(LTerm::Ident)
            }
            Some(Tok::Gen(k)) => {
                self.at += 1;
                Ok(LTerm::Gen(k))
            }
            Some(Tok::Open) => {
                self.at += 1;
                let t = self.lattice()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(syntax(self.pos(), "expected `)`"));
                }
                self.at += 1;
                Ok(t)
            }
            Some(other) => Err(syntax(pos, format!("unexpected {other}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses a term. Positions in errors are character offsets.
pub fn parse_term(text: &str) -> Result<LTerm, TermError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count() };
    let t = p.lattice()?;
    if p.at < p.toks.len() {
        let (pos, tok) = &p.toks[p.at];
        return Err(syntax(*pos, format!("unexpected {tok} after a complete term")));
    }
    Ok(t)
}

/// Parses a term and checks every generator index against `rank`.
pub fn parse_term_in_rank(text: &str, rank: usize) -> Result<LTerm, TermError> {
    let t = parse_term(text)?;
    t.check_rank(rank)?;
    Ok(t)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Lattice,
    Product,
    Postfix,
}

fn level(t: &LTerm) -> Level {
    match t {
        LTerm::Meet(..) | LTerm::Join(..) => Level::Lattice,
        LTerm::Mul(..) => Level::Product,
        _ => Level::Postfix,
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, t: &LTerm, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "(")?;
        write_term(f, t)?;
        write!(f, ")")
    } else {
        write_term(f, t)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &LTerm) -> fmt::Result {
    match t {
        LTerm::Ident => write!(f, "e"),
        LTerm::Gen(k) => write!(f, "g{k}"),
        LTerm::Inv(x) => {
            write_wrapped(f, x, level(x) != Level::Postfix)?;
            write!(f, "^-1")
        }
        LTerm::Mul(x, y) => {
            write_wrapped(f, x, level(x) < Level::Product)?;
            write!(f, " * ")?;
            write_wrapped(f, y, level(y) <= Level::Product)
        }
        LTerm::Meet(x, y) | LTerm::Join(x, y) => {
            let same = |u: &LTerm| std::mem::discriminant(u) == std::mem::discriminant(t);
            write_wrapped(f, x, level(x) == Level::Lattice && !same(x))?;
            write!(f, "{}", if matches!(t, LTerm::Meet(..)) { " /\\ " } else { " \\/ " })?;
            write_wrapped(f, y, level(y) == Level::Lattice)
        }
    }
}

impl fmt::Display for LTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_term("g1 \\/ e").unwrap(), LTerm::join(LTerm::Gen(1), LTerm::Ident));
        assert_eq!(
            parse_term("(g1 * g2^-1) /\\ e").unwrap(),
            LTerm::meet(LTerm::mul(LTerm::Gen(1), LTerm::inv(LTerm::Gen(2))), LTerm::Ident)
        );
        let err = parse_term("g1 /\\ g2 \\/ e").unwrap_err();
        assert_eq!(err, TermError::Syntax { pos: 9, message: "mixing `/\\` and `\\/` requires parentheses".into() });
    }

    #[test]
    fn precedence() {
        let t = parse_term("g1 * g2^-1^-1 /\\ g3 /\\ e").unwrap();
        let expect = LTerm::meet(
            LTerm::meet(LTerm::mul(LTerm::Gen(1), LTerm::inv(LTerm::inv(LTerm::Gen(2)))), LTerm::Gen(3)),
            LTerm::Ident,
        );
        assert_eq!(t, expect);
        assert_eq!(t.to_string(), "g1 * g2^-1^-1 /\\ g3 /\\ e");
    }

    #[test]
    fn errors_carry_positions() {
        for (text, pos) in [("g1 *", 4), ("(g1", 3), ("g0", 0), ("g1 ^2", 3), ("g1 g2", 3), ("x", 0), ("", 0), ("g1 /\\", 5)] {
            match parse_term(text) {
                Err(TermError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert_eq!(parse_term_in_rank("g3", 2), Err(TermError::IndexOutOfRank { index: 3, rank: 2 }));
    }

    #[test]
    fn printer_parenthesises_minimally() {
        for text in [
            "g1 \\/ e",
            "(g1 \\/ e) * g2",
            "g1 * (g2 * g3)",
            "g1 * g2 * g3",
            "(g1 /\\ g2)^-1",
            "(g1 * g2)^-1",
            "g1 /\\ (g2 /\\ g3)",
            "(g1 \\/ e) /\\ (g2 \\/ e)",
            "e^-1",
        ] {
            let t = parse_term(text).unwrap();
            assert_eq!(t.to_string(), text);
        }
    }
}
