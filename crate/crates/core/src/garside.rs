//! Left normal form in the Artin braid group with the classical Garside
//! structure. Simple elements are positive permutation braids and are kept
//! as [`Permutation`] tables; Artin words are produced only on demand.

use serde::{Deserialize, Serialize};

use crate::braid::{self, compose, BraidWord, Letter, Permutation};
use crate::error::{Error, Result};

/// `Δ^inf · A₁ ⋯ A_k` with every `Aᵢ` a proper simple element and each
/// adjacent pair left-weighted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GarsideNormalForm {
    pub strands: usize,
    pub inf: i64,
    pub factors: Vec<Permutation>,
}

/// Positions `i` where the simple braid can begin with `σ_{i+1}`.
pub fn starting_set(p: &Permutation) -> Vec<usize> {
    (0..p.len().saturating_sub(1))
        .filter(|&i| p.apply(i) > p.apply(i + 1))
        .collect()
}

/// Positions `i` where the simple braid can end with `σ_{i+1}`.
pub fn finishing_set(p: &Permutation) -> Vec<usize> {
    starting_set(&p.inverse())
}

/// Positive word for a permutation braid, by bubble-sorting the targets.
pub fn simple_word(p: &Permutation) -> BraidWord {
    let n = p.len();
    let mut cur: Vec<usize> = p.images().to_vec();
    let mut letters = Vec::with_capacity(p.inversions());
    'outer: loop {
        for i in 0..n.saturating_sub(1) {
            if cur[i] > cur[i + 1] {
                cur.swap(i, i + 1);
                letters.push(Letter::pos(i + 1));
                continue 'outer;
            }
        }
        break;
    }
    BraidWord::new(n.max(1), letters).expect("indices below n")
}

/// `Δ`, the positive half twist, as a word.
pub fn half_twist(n: usize) -> BraidWord {
    simple_word(&Permutation::reversal(n))
}

/// `Δ x Δ⁻¹`: flips a simple element top to bottom of the strand order.
fn flip(p: &Permutation) -> Permutation {
    let r = Permutation::reversal(p.len());
    r.then(p).then(&r)
}

/// Moves crossings from the front of `b` to the back of `a` until
/// `S(b) ⊆ F(a)`. Returns whether anything moved.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.len();
    let mut moved = false;
    loop {
        let a_inv = a.inverse();
        let candidate = (0..n - 1)
            .find(|&i| b.apply(i) > b.apply(i + 1) && a_inv.apply(i) < a_inv.apply(i + 1));
        let Some(i) = candidate else { break };
        let s = Permutation::adjacent(n, i);
        *a = a.then(&s);
        *b = s.then(b);
        moved = true;
    }
    moved
}

pub fn garside_normal_form(w: &BraidWord) -> GarsideNormalForm {
    let n = w.strands();
    if n == 1 {
        return GarsideNormalForm {
            strands: 1,
            inf: 0,
            factors: Vec::new(),
        };
    }
    let delta = Permutation::reversal(n);
    let mut inverted: i64 = 0;
    let mut factors: Vec<Permutation> = Vec::new();
    for &l in w.letters() {
        let s = Permutation::adjacent(n, l.index() - 1);
        let x = if l.is_positive() {
            s
        } else {
            // σᵢ⁻¹ = Δ⁻¹ · (Δσᵢ⁻¹); pull Δ⁻¹ to the front through the prefix.
            for f in factors.iter_mut() {
                *f = flip(f);
            }
            inverted += 1;
            delta.then(&s)
        };
        factors.push(x);
        let mut j = factors.len() - 1;
        while j > 0 {
            let (head, tail) = factors.split_at_mut(j);
            if !left_weight(&mut head[j - 1], &mut tail[0]) {
                break;
            }
            j -= 1;
        }
    }
    let leading = factors.iter().take_while(|f| **f == delta).count();
    factors.drain(..leading);
    while factors.last().is_some_and(|f| f.is_identity()) {
        factors.pop();
    }
    GarsideNormalForm {
        strands: n,
        inf: leading as i64 - inverted,
        factors,
    }
}

impl GarsideNormalForm {
    /// `Δ^inf · A₁ ⋯ A_k` as an Artin word.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let mut word = half_twist(n).pow(self.inf);
        for f in &self.factors {
            word = compose(&word, &simple_word(f)).expect("same strands");
        }
        word
    }

    /// Positive remainder after peeling `Δ^k` off the front (`k ≤ inf`).
    pub fn positive_remainder(&self, k: i64) -> Result<BraidWord> {
        if self.inf < k {
            return Err(Error::Precondition(format!(
                "inf {} is below {k}",
                self.inf
            )));
        }
        let rest = GarsideNormalForm {
            strands: self.strands,
            inf: self.inf - k,
            factors: self.factors.clone(),
        };
        Ok(rest.to_word())
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }
}

/// Whether the braid is `Δ² · (positive)`. On a single strand the full twist
/// is trivial and every braid contains it.
pub fn contains_full_twist(w: &BraidWord) -> bool {
    w.strands() == 1 || garside_normal_form(w).inf >= 2
}

/// Rewrites a braid containing a full twist as `full_twist(n) ∘ remainder`
/// with a positive remainder read off the normal form.
pub fn extract_full_twist(w: &BraidWord) -> Result<BraidWord> {
    if w.strands() == 1 {
        return Ok(w.clone());
    }
    let nf = garside_normal_form(w);
    let rest = nf.positive_remainder(2)?;
    compose(&braid::full_twist(w.strands())?, &rest)
}
