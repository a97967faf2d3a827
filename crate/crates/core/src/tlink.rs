//! T-links `T((r₁,s₁),…,(r_k,s_k))`: the closure of
//! `(σ1…σ_{r₁-1})^{s₁} ⋯ (σ1…σ_{r_k-1})^{s_k}` with `2 ≤ r₁ < … < r_k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::braid::{ascending_run, compose, BraidWord};
use crate::error::{Error, Result};
use crate::invariants::closure_components;

/// One torus factor `(σ1…σ_{r-1})^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TPair {
    pub r: usize,
    pub s: usize,
}

impl TPair {
    pub fn new(r: usize, s: usize) -> Self {
        TPair { r, s }
    }
}

/// A validated list of T-link pairs. The empty list is the unknot, which is
/// what the degenerate reductions (`T((p,1))`, width-one transposes) land on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLinkSpec {
    pairs: Vec<TPair>,
}

impl TLinkSpec {
    pub fn new(pairs: Vec<TPair>) -> Result<Self> {
        for (k, p) in pairs.iter().enumerate() {
            if p.r < 2 {
                return Err(Error::InvalidTLink(format!(
                    "pair {} has r = {} < 2",
                    k + 1,
                    p.r
                )));
            }
            if p.s == 0 {
                return Err(Error::InvalidTLink(format!("pair {} has s = 0", k + 1)));
            }
            if k > 0 && pairs[k - 1].r >= p.r {
                return Err(Error::InvalidTLink(format!(
                    "r values must strictly increase: {} then {}",
                    pairs[k - 1].r,
                    p.r
                )));
            }
        }
        Ok(TLinkSpec { pairs })
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        TLinkSpec::new(pairs.iter().map(|&(r, s)| TPair::new(r, s)).collect())
    }

    /// The torus link `T(p, q)` written as the single pair `(p, q)`.
    pub fn torus(p: usize, q: usize) -> Result<Self> {
        TLinkSpec::from_pairs(&[(p, q)])
    }

    pub fn unknot() -> Self {
        TLinkSpec { pairs: Vec::new() }
    }

    pub fn is_unknot_spec(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[TPair] {
        &self.pairs
    }

    /// The last pair, `(p, q)` in the rewrite case analysis.
    pub fn top(&self) -> Option<TPair> {
        self.pairs.last().copied()
    }

    /// Everything below the top pair.
    pub fn lower(&self) -> TLinkSpec {
        let k = self.pairs.len().saturating_sub(1);
        TLinkSpec {
            pairs: self.pairs[..k].to_vec(),
        }
    }

    pub fn strands(&self) -> usize {
        self.top().map_or(1, |p| p.r)
    }

    pub fn crossings(&self) -> usize {
        self.pairs.iter().map(|p| p.s * (p.r - 1)).sum()
    }

    /// Rows of the Young diagram: width `rᵢ` repeated `sᵢ` times, widest first.
    pub fn partition(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self
            .pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.r, p.s))
            .collect();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        rows
    }
}

/// Standard braid `∏ (σ1…σ_{rᵢ-1})^{sᵢ}` on `r_k` strands.
pub fn standard_braid(spec: &TLinkSpec) -> BraidWord {
    standard_braid_on(spec, spec.strands()).expect("r_k strands fit every pair")
}

/// The standard braid viewed on `strands ≥ r_k` strands.
pub(crate) fn standard_braid_on(spec: &TLinkSpec, strands: usize) -> Result<BraidWord> {
    if strands < spec.strands() {
        return Err(Error::StrandMismatch {
            left: spec.strands(),
            right: strands,
        });
    }
    let mut word = BraidWord::identity(strands)?;
    for p in &spec.pairs {
        word = compose(&word, &ascending_run(strands, 1, p.r - 1).pow(p.s as i64))?;
    }
    Ok(word)
}

/// The torus sub-braid `B^r_{i,j} = (σᵢ … σ_{j-1})^r`; `i = 0` starts at `σ1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusBraidSpec {
    pub i: usize,
    pub j: usize,
    pub r: usize,
}

impl TorusBraidSpec {
    pub fn new(i: usize, j: usize, r: usize) -> Result<Self> {
        if j <= i || j < 2 {
            return Err(Error::InvalidTorusBraid(format!(
                "need i < j and j ≥ 2, got i={i}, j={j}"
            )));
        }
        if r == 0 {
            return Err(Error::InvalidTorusBraid("power must be positive".into()));
        }
        Ok(TorusBraidSpec { i, j, r })
    }

    /// Number of strands the sub-braid acts on.
    pub fn width(&self) -> usize {
        if self.i == 0 {
            self.j
        } else {
            self.j - self.i + 1
        }
    }
}

pub fn torus_subbraid(t: &TorusBraidSpec, ambient: usize) -> Result<BraidWord> {
    if t.j > ambient {
        return Err(Error::InvalidTorusBraid(format!(
            "j = {} exceeds {ambient} strands",
            t.j
        )));
    }
    let from = t.i.max(1);
    Ok(ascending_run(ambient, from, t.j - 1).pow(t.r as i64))
}

pub fn is_knot(spec: &TLinkSpec) -> bool {
    closure_components(&standard_braid(spec)) == 1
}

/// Transposes the Young diagram of row widths; rows of width one carry no
/// crossings and are dropped.
pub fn transpose_dual(spec: &TLinkSpec) -> TLinkSpec {
    let rows = spec.partition();
    let widest = rows.first().copied().unwrap_or(0);
    let columns: Vec<usize> = (1..=widest)
        .map(|c| rows.iter().filter(|&&w| w >= c).count())
        .collect();
    let mut pairs: Vec<TPair> = Vec::new();
    for &width in columns.iter().rev() {
        if width < 2 {
            continue;
        }
        match pairs.last_mut() {
            Some(p) if p.r == width => p.s += 1,
            _ => pairs.push(TPair::new(width, 1)),
        }
    }
    TLinkSpec { pairs }
}

impl fmt::Display for TLinkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .pairs
            .iter()
            .map(|p| format!("({},{})", p.r, p.s))
            .collect();
        write!(f, "T({})", body.join(","))
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(Error::parse(
                self.pos,
                format!("expected '{}', found '{}'", c as char, got as char),
            )),
            None => Err(Error::parse(
                self.pos,
                format!("expected '{}', found end", c as char),
            )),
        }
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "expected an integer"))
    }
}

impl FromStr for TLinkSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor {
            src: s.trim_end(),
            pos: 0,
        };
        cur.expect(b'T')?;
        cur.expect(b'(')?;
        let mut pairs = Vec::new();
        let mut starts = Vec::new();
        if cur.peek() != Some(b')') {
            loop {
                starts.push(cur.pos);
                cur.expect(b'(')?;
                let r = cur.int()?;
                cur.expect(b',')?;
                let s = cur.int()?;
                cur.expect(b')')?;
                pairs.push(TPair::new(r, s));
                if cur.peek() == Some(b',') {
                    cur.pos += 1;
                } else {
                    break;
                }
            }
        }
        cur.expect(b')')?;
        if cur.pos != cur.src.len() {
            return Err(Error::parse(cur.pos, "trailing input"));
        }
        TLinkSpec::new(pairs.clone()).map_err(|e| {
            // point at the first offending pair
            let k = pairs
                .iter()
                .enumerate()
                .position(|(k, p)| p.r < 2 || p.s == 0 || (k > 0 && pairs[k - 1].r >= p.r))
                .unwrap_or(0);
            Error::parse(starts.get(k).copied().unwrap_or(0), e.to_string())
        })
    }
}

impl Serialize for TLinkSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TLinkSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: &[(usize, usize)]) -> TLinkSpec {
        TLinkSpec::from_pairs(p).unwrap()
    }

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, l).unwrap()
    }

    #[test]
    fn standard_braids() {
        assert_eq!(standard_braid(&spec(&[(2, 3)])), w(2, &[1, 1, 1]));
        assert_eq!(standard_braid(&spec(&[(2, 1)])), w(2, &[1]));
        assert_eq!(
            standard_braid(&spec(&[(2, 2), (3, 2)])),
            w(3, &[1, 1, 1, 2, 1, 2])
        );
        assert_eq!(standard_braid(&TLinkSpec::unknot()), w(1, &[]));
    }

    #[test]
    fn validation() {
        assert!(TLinkSpec::from_pairs(&[(3, 1), (2, 2)]).is_err());
        assert!(TLinkSpec::from_pairs(&[(1, 1)]).is_err());
        assert!(TLinkSpec::from_pairs(&[(2, 0)]).is_err());
        assert!(TLinkSpec::from_pairs(&[(2, 1), (2, 1)]).is_err());
    }

    #[test]
    fn subbraids() {
        let t = TorusBraidSpec::new(0, 3, 2).unwrap();
        assert_eq!(torus_subbraid(&t, 3).unwrap(), w(3, &[1, 2, 1, 2]));
        let t = TorusBraidSpec::new(2, 3, 4).unwrap();
        assert_eq!(torus_subbraid(&t, 4).unwrap(), w(4, &[2, 2, 2, 2]));
        assert_eq!(t.width(), 2);
        let t = TorusBraidSpec::new(0, 2, 1).unwrap();
        assert_eq!(torus_subbraid(&t, 5).unwrap(), w(5, &[1]));
        assert!(torus_subbraid(&TorusBraidSpec::new(0, 4, 1).unwrap(), 3).is_err());
        assert!(TorusBraidSpec::new(3, 3, 1).is_err());
    }

    #[test]
    fn knots() {
        assert!(is_knot(&spec(&[(2, 3)])));
        assert!(!is_knot(&spec(&[(2, 2)])));
        assert!(!is_knot(&spec(&[(2, 1), (3, 2)])));
        assert!(is_knot(&TLinkSpec::unknot()));
    }

    #[test]
    fn transpose() {
        assert_eq!(transpose_dual(&spec(&[(2, 3)])), spec(&[(3, 2)]));
        assert_eq!(
            transpose_dual(&spec(&[(2, 2), (3, 2)])),
            spec(&[(2, 1), (4, 2)])
        );
        assert_eq!(transpose_dual(&spec(&[(5, 1)])), TLinkSpec::unknot());
        let x = spec(&[(2, 1), (3, 4), (5, 2)]);
        assert_eq!(transpose_dual(&transpose_dual(&x)), x);
    }

    #[test]
    fn text_form() {
        let x = spec(&[(2, 2), (3, 2)]);
        assert_eq!(x.to_string(), "T((2,2),(3,2))");
        assert_eq!("T((2,2),(3,2))".parse::<TLinkSpec>().unwrap(), x);
        assert_eq!("T()".parse::<TLinkSpec>().unwrap(), TLinkSpec::unknot());
        match "T((3,1),(2,2))".parse::<TLinkSpec>() {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 8);
                assert!(message.contains("increase"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        match "T((2,3)".parse::<TLinkSpec>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 7),
            other => panic!("{other:?}"),
        }
        assert!("T((2,x))".parse::<TLinkSpec>().is_err());
        assert!("T((2,3)) ".parse::<TLinkSpec>().is_ok());
    }
}
