//! Braid words over the Artin generators and the permutations they induce.
//!
//! Words are read left to right, top to bottom of the braid diagram. The
//! letter `σᵢ` crosses the strands in positions `i` and `i+1`; `σᵢ⁻¹` is the
//! opposite crossing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A signed Artin generator. The stored value is `±i` for `σᵢ^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    pub fn pos(index: usize) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Letter(index as i32)
    }

    pub fn neg(index: usize) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Letter(-(index as i32))
    }

    pub fn from_signed(value: i32) -> Option<Self> {
        (value != 0).then_some(Letter(value))
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i64 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn signed(self) -> i32 {
        self.0
    }
}

/// A braid word on a fixed number of strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        if let Some(bad) = letters.iter().find(|l| l.index() >= strands) {
            return Err(Error::GeneratorOutOfRange {
                index: bad.index(),
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed generator indices, e.g. `[1, -2]` for `σ1σ2⁻¹`.
    pub fn from_signed(strands: usize, letters: &[i32]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&v| {
                Letter::from_signed(v).ok_or(Error::GeneratorOutOfRange { index: 0, strands })
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn identity(strands: usize) -> Result<Self> {
        BraidWord::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn signed_letters(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Cancels adjacent `σᵢσᵢ⁻¹` pairs until none remain.
    pub fn free_reduced(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: free_reduce(self.letters.iter().copied()),
        }
    }

    /// The same letters viewed on a larger strand count.
    pub fn widened(&self, strands: usize) -> Result<BraidWord> {
        if strands < self.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: strands,
            });
        }
        BraidWord::new(strands, self.letters.clone())
    }

    /// Shifts every generator index up by `offset`, landing on `strands` strands.
    pub fn shifted(&self, offset: usize, strands: usize) -> Result<BraidWord> {
        let letters = self
            .letters
            .iter()
            .map(|l| Letter(l.signed().signum() * (l.index() + offset) as i32))
            .collect();
        BraidWord::new(strands, letters)
    }

    /// `w^k` for `k ≥ 0`, or `(w⁻¹)^{-k}` for negative `k`.
    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters: free_reduce(letters),
        }
    }
}

fn check_strands(a: &BraidWord, b: &BraidWord) -> Result<()> {
    if a.strands != b.strands {
        return Err(Error::StrandMismatch {
            left: a.strands,
            right: b.strands,
        });
    }
    Ok(())
}

fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Concatenation followed by free reduction.
pub fn compose(w1: &BraidWord, w2: &BraidWord) -> Result<BraidWord> {
    check_strands(w1, w2)?;
    Ok(BraidWord {
        strands: w1.strands,
        letters: free_reduce(w1.letters.iter().chain(&w2.letters).copied()),
    })
}

/// `g⁻¹ · w · g`, freely reduced.
pub fn conjugate(w: &BraidWord, g: &BraidWord) -> Result<BraidWord> {
    check_strands(w, g)?;
    let letters = g
        .inverse()
        .letters
        .into_iter()
        .chain(w.letters.iter().copied())
        .chain(g.letters.iter().copied());
    Ok(BraidWord {
        strands: w.strands,
        letters: free_reduce(letters),
    })
}

/// `(σ1 σ2 … σ_{n-1})^n`, the positive full twist `Δ²`.
pub fn full_twist(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::FullTwistTooSmall(n));
    }
    Ok(ascending_run(n, 1, n - 1).pow(n as i64))
}

/// `σ_from σ_{from+1} … σ_to` on `strands` strands (empty when `from > to`).
pub(crate) fn ascending_run(strands: usize, from: usize, to: usize) -> BraidWord {
    BraidWord {
        strands,
        letters: (from..=to).map(Letter::pos).collect(),
    }
}

/// `σ_from σ_{from-1} … σ_to` on `strands` strands (empty when `from < to`).
pub(crate) fn descending_run(strands: usize, from: usize, to: usize) -> BraidWord {
    BraidWord {
        strands,
        letters: (to..=from).rev().map(Letter::pos).collect(),
    }
}

/// Removes the last strand when `σ_{n-1}` occurs exactly once, positively.
pub fn destabilize(w: &BraidWord) -> Result<BraidWord> {
    let n = w.strands;
    if n < 2 {
        return Err(Error::Destabilize("single strand".into()));
    }
    let top: Vec<usize> = w
        .letters
        .iter()
        .enumerate()
        .filter(|(_, l)| l.index() == n - 1)
        .map(|(k, _)| k)
        .collect();
    match top.as_slice() {
        [k] if w.letters[*k].is_positive() => {
            let mut letters = w.letters.clone();
            letters.remove(*k);
            BraidWord::new(n - 1, letters)
        }
        [_] => Err(Error::Destabilize(format!("σ{} occurs negatively", n - 1))),
        other => Err(Error::Destabilize(format!(
            "σ{} occurs {} times",
            n - 1,
            other.len()
        ))),
    }
}

/// Adds a strand and a positive crossing `σ_n` at the end.
pub fn stabilize(w: &BraidWord) -> BraidWord {
    let mut letters = w.letters.clone();
    letters.push(Letter::pos(w.strands));
    BraidWord {
        strands: w.strands + 1,
        letters,
    }
}

/// Rotates the word cyclically by `k` letters; the closure is unchanged.
pub fn cyclic_shift(w: &BraidWord, k: usize) -> BraidWord {
    let mut letters = w.letters.clone();
    if !letters.is_empty() {
        let k = k % letters.len();
        letters.rotate_left(k);
    }
    BraidWord {
        strands: w.strands,
        letters,
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}\n{}", self.strands, self.inline_letters())
    }
}

impl BraidWord {
    fn inline_letters(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.signed().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Single-line form `n=3:1 2 1 2` used inside other records.
    pub fn to_inline(&self) -> String {
        format!("n={}:{}", self.strands, self.inline_letters())
    }

    pub fn parse_inline(s: &str) -> Result<BraidWord> {
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, "expected 'n=<strands>:<letters>'"))?;
        parse_parts(head, body, head.len() + 1)
    }
}

fn parse_parts(head: &str, body: &str, body_offset: usize) -> Result<BraidWord> {
    let strands: usize = head
        .strip_prefix("n=")
        .ok_or_else(|| Error::parse(0, "expected 'n='"))?
        .parse()
        .map_err(|_| Error::parse(2, "strand count is not a positive integer"))?;
    let mut letters = Vec::new();
    let mut pos = body_offset;
    for tok in body.split(' ') {
        if !tok.is_empty() {
            let v: i32 = tok
                .parse()
                .map_err(|_| Error::parse(pos, format!("bad letter '{tok}'")))?;
            let letter = Letter::from_signed(v).ok_or_else(|| Error::parse(pos, "zero letter"))?;
            if letter.index() >= strands {
                return Err(Error::parse(
                    pos,
                    format!("generator {v} out of range for {strands} strands"),
                ));
            }
            letters.push(letter);
        }
        pos += tok.len() + 1;
    }
    BraidWord::new(strands, letters)
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.strip_suffix('\n').unwrap_or(s);
        let (head, body) = s.split_once('\n').unwrap_or((s, ""));
        parse_parts(head, body, head.len() + 1)
    }
}

/// A permutation of `n` positions, stored as an image table (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// Swap of 0-based positions `i` and `i+1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    /// The order-reversing permutation `j ↦ n-1-j` (the permutation of `Δ`).
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` followed by `other` (diagram order).
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, j)| i == *j)
            .count()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Number of pairs `i < j` with `π(i) > π(j)`; the length of the
    /// positive permutation braid.
    pub fn inversions(&self) -> usize {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Position permutation of a braid word: strand starting at `j` ends at `π(j)`.
pub fn permutation_of(w: &BraidWord) -> Permutation {
    let n = w.strands;
    // position -> starting strand
    let mut at: Vec<usize> = (0..n).collect();
    for l in &w.letters {
        at.swap(l.index() - 1, l.index());
    }
    let mut images = vec![0; n];
    for (p, &s) in at.iter().enumerate() {
        images[s] = p;
    }
    Permutation { images }
}
