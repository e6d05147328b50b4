//! Pre-cones on `ℤⁿ` given by a lexicographic flag of rational functionals.
//!
//! `a ∈ C` iff the first nonzero pairing `⟨vᵢ, a⟩` is positive (or all
//! vanish). Rows are stored in a canonical integer form: each row is reduced
//! against the earlier ones at their pivot columns, scaled to a primitive
//! integer vector by a positive factor, and dropped when it becomes zero. Two
//! flags define the same cone exactly when their canonical rows agree.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ConeError, Containment};

#[derive(Debug, Clone)]
pub struct LexFlagCone {
    rank: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    pruned: usize,
}

// Equality is equality of cones, so the pruning count is ignored.
impl PartialEq for LexFlagCone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rows == other.rows
    }
}

impl Eq for LexFlagCone {}

impl std::hash::Hash for LexFlagCone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.rows.hash(state);
    }
}

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

impl LexFlagCone {
    /// Builds a cone from rational rows. Zero rows and rows in the span of
    /// earlier rows are dropped; [`pruned`](Self::pruned) reports how many.
    pub fn new(rank: usize, flag: &[Vec<Rational64>]) -> Result<Self, ConeError> {
        if rank == 0 {
            return Err(ConeError::Invalid("rank must be positive".into()));
        }
        let mut cone = LexFlagCone { rank, rows: Vec::new(), pivots: Vec::new(), pruned: 0 };
        for row in flag {
            if row.len() != rank {
                return Err(ConeError::RankMismatch { expected: rank, found: row.len() });
            }
            let lcm = row.iter().fold(1i128, |l, q| l.lcm(&(*q.denom() as i128)));
            let scaled: Vec<i128> = row.iter().map(|q| *q.numer() as i128 * (lcm / *q.denom() as i128)).collect();
            cone.push_row(scaled)?;
        }
        Ok(cone)
    }

    pub fn from_integer_rows(rank: usize, flag: &[Vec<i64>]) -> Result<Self, ConeError> {
        let rows: Vec<Vec<Rational64>> =
            flag.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
        LexFlagCone::new(rank, &rows)
    }

    fn push_row(&mut self, mut v: Vec<i128>) -> Result<(), ConeError> {
        for (b, &p) in self.rows.iter().zip(&self.pivots) {
            let (bp, vp) = (b[p] as i128, v[p]);
            if vp == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x = bp.abs() * *x - bp.signum() * vp * *y as i128;
            }
            primitive(&mut v);
        }
        primitive(&mut v);
        match v.iter().position(|x| *x != 0) {
            None => self.pruned += 1,
            Some(p) => {
                let row = v
                    .iter()
                    .map(|x| i64::try_from(*x).map_err(|_| ConeError::Overflow))
                    .collect::<Result<Vec<_>, _>>()?;
                self.rows.push(row);
                self.pivots.push(p);
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The canonical rows.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Number of input rows dropped as zero or dependent.
    pub fn pruned(&self) -> usize {
        self.pruned
    }

    /// `C ≠ ℤⁿ`.
    pub fn is_proper(&self) -> bool {
        !self.rows.is_empty()
    }

    /// Trivial kernel, so the pre-order is a total order.
    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.rank
    }

    /// Largest absolute entry of the canonical rows.
    pub fn height(&self) -> i64 {
        self.rows.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// The cone given by the first `m` rows.
    pub fn truncate(&self, m: usize) -> LexFlagCone {
        let m = m.min(self.rows.len());
        LexFlagCone {
            rank: self.rank,
            rows: self.rows[..m].to_vec(),
            pivots: self.pivots[..m].to_vec(),
            pruned: 0,
        }
    }

    /// The pairings `⟨vᵢ, a⟩`.
    pub fn pairings(&self, a: &[i64]) -> Vec<i128> {
        self.rows.iter().map(|r| r.iter().zip(a).map(|(x, y)| *x as i128 * *y as i128).sum()).collect()
    }

    pub fn classify(&self, a: &[i64]) -> Result<Containment, ConeError> {
        if a.len() != self.rank {
            return Err(ConeError::RankMismatch { expected: self.rank, found: a.len() });
        }
        for r in &self.rows {
            let s: i128 = r.iter().zip(a).map(|(x, y)| *x as i128 * *y as i128).sum();
            if s > 0 {
                return Ok(Containment::Positive);
            }
            if s < 0 {
                return Ok(Containment::Negative);
            }
        }
        Ok(Containment::Kernel)
    }

    /// `C ⊆ D`. For pre-cones on `ℤⁿ` this holds exactly when the canonical
    /// flag of `D` is a prefix of that of `C`: the kernel of `D` is convex for
    /// the order of `C`, and the convex subgroups of a lexicographic flag order
    /// are the kernels of its prefixes.
    pub fn is_subcone_of(&self, other: &LexFlagCone) -> bool {
        self.rank == other.rank && other.rows.len() <= self.rows.len() && self.rows[..other.rows.len()] == other.rows[..]
    }

    /// Some `a` with `a ∈ C` and `a ∉ D`, searched over the ℓ∞ ball of radius
    /// `max(10, height)`.
    pub fn non_inclusion_witness(&self, other: &LexFlagCone) -> Option<Vec<i64>> {
        let radius = 10.max(self.height()).max(other.height());
        zvec_ball(self.rank, radius).into_iter().find(|a| {
            self.classify(a).expect("rank checked").in_cone() && !other.classify(a).expect("rank checked").in_cone()
        })
    }

    /// Standard lexicographic order `e₁, …, eₙ`.
    pub fn standard(rank: usize) -> LexFlagCone {
        let rows: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        LexFlagCone::from_integer_rows(rank, &rows).expect("identity rows are independent")
    }
}

/// Every vector of `ℤⁿ` with entries in `[-radius, radius]`, lexicographically.
pub fn zvec_ball(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(rank)];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

impl fmt::Display for LexFlagCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct LexFlagJson {
    rank: usize,
    flag: Vec<Vec<RationalText>>,
}

/// A rational written as a JSON integer or a `"p/q"` string.
#[derive(Clone, Copy)]
struct RationalText(Rational64);

impl Serialize for RationalText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|x| RationalText(Rational64::from_integer(x)))
                .ok_or_else(|| serde::de::Error::custom(format!("non-integer number {n}; use \"p/q\""))),
            serde_json::Value::String(s) => s
                .trim()
                .parse::<Rational64>()
                .map(RationalText)
                .map_err(|_| serde::de::Error::custom(format!("bad rational `{s}`"))),
            other => Err(serde::de::Error::custom(format!("expected a rational, got {other}"))),
        }
    }
}

impl Serialize for LexFlagCone {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LexFlagJson {
            rank: self.rank,
            flag: self.rows.iter().map(|r| r.iter().map(|x| RationalText(Rational64::from_integer(*x))).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LexFlagCone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LexFlagJson::deserialize(d)?;
        let rows: Vec<Vec<Rational64>> = raw.flag.into_iter().map(|r| r.into_iter().map(|q| q.0).collect()).collect();
        LexFlagCone::new(raw.rank, &rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rows: &[&[i64]]) -> LexFlagCone {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        LexFlagCone::from_integer_rows(rows[0].len(), &rows).unwrap()
    }

    #[test]
    fn classification() {
        let c = cone(&[&[1, 0]]);
        assert_eq!(c.classify(&[0, 1]).unwrap(), Containment::Kernel);
        assert_eq!(c.classify(&[2, -7]).unwrap(), Containment::Positive);
        let c = cone(&[&[1, 0], &[0, 1]]);
        assert_eq!(c.classify(&[0, -1]).unwrap(), Containment::Negative);
        assert!(c.classify(&[1, 2, 3]).is_err());
    }

    #[test]
    fn canonical_rows() {
        let a = cone(&[&[2, 4], &[3, 1]]);
        let b = cone(&[&[1, 2], &[0, -5]]);
        assert_eq!(a, b);
        assert_eq!(a.rows(), &[vec![1, 2], vec![0, -1]]);
        let c = cone(&[&[0, 0], &[1, 1], &[-2, -2], &[1, 0]]);
        assert_eq!(c.pruned(), 2);
        assert_eq!(c.rows().len(), 2);
        let half = LexFlagCone::new(2, &[vec![Rational64::new(1, 2), Rational64::new(-1, 3)]]).unwrap();
        assert_eq!(half.rows(), &[vec![3, -2]]);
    }

    #[test]
    fn canonical_form_preserves_membership() {
        let raw = [[2i64, -1, 3], [1, 1, 1], [0, 2, -1]];
        let c = LexFlagCone::from_integer_rows(3, &raw.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        for a in zvec_ball(3, 3) {
            let lex = raw
                .iter()
                .map(|r| r.iter().zip(&a).map(|(x, y)| x * y).sum::<i64>())
                .find(|s| *s != 0)
                .unwrap_or(0);
            let expect = match lex.signum() {
                1 => Containment::Positive,
                -1 => Containment::Negative,
                _ => Containment::Kernel,
            };
            assert_eq!(c.classify(&a).unwrap(), expect, "{a:?}");
        }
    }

    #[test]
    fn prefix_inclusion() {
        let full = cone(&[&[1, 0], &[0, 1]]);
        let head = cone(&[&[1, 0]]);
        assert!(full.is_subcone_of(&head));
        assert!(!head.is_subcone_of(&full));
        assert!(full.is_subcone_of(&full));
        let other = cone(&[&[0, 1]]);
        assert!(!head.is_subcone_of(&other));
        let w = head.non_inclusion_witness(&other).unwrap();
        assert!(head.classify(&w).unwrap().in_cone());
        assert_eq!(other.classify(&w).unwrap(), Containment::Negative);
    }

    #[test]
    fn json_round_trip() {
        let c: LexFlagCone = serde_json::from_str(r#"{"rank":2,"flag":[["1/2","-1"],[0,1]]}"#).unwrap();
        assert_eq!(c.rows(), &[vec![1, -2], vec![0, 1]]);
        let text = serde_json::to_string(&c).unwrap();
        let back: LexFlagCone = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn ball_size() {
        assert_eq!(zvec_ball(2, 5).len(), 121);
        assert_eq!(zvec_ball(2, 6).len(), 169);
    }
}
