//! Invariants of braid closures: component count, self-linking, the
//! Bennequin genus of positive knot braids, the Alexander polynomial via the
//! reduced Burau representation, and a Kauffman bracket state sum used as an
//! independent oracle.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::braid::{permutation_of, BraidWord};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

type Matrix = Vec<Vec<LaurentPolynomial>>;

pub fn closure_components(w: &BraidWord) -> usize {
    permutation_of(w).cycle_count()
}

/// Exponent sum minus strand count.
pub fn self_linking(w: &BraidWord) -> i64 {
    w.exponent_sum() - w.strands() as i64
}

/// `(c - n + 1) / 2` for a positive braid whose closure is a knot.
pub fn bennequin_genus(w: &BraidWord) -> Result<u64> {
    if !w.is_positive() {
        return Err(Error::NotPositive);
    }
    let k = closure_components(w);
    if k != 1 {
        return Err(Error::NotAKnot(k));
    }
    let twice = w.len() + 1 - w.strands();
    if !twice.is_multiple_of(2) {
        return Err(Error::Internal(format!(
            "odd Euler characteristic for a knot: {twice}"
        )));
    }
    Ok((twice / 2) as u64)
}

fn t() -> LaurentPolynomial {
    LaurentPolynomial::monomial(1, 1)
}

fn t_inv() -> LaurentPolynomial {
    LaurentPolynomial::monomial(1, -1)
}

/// Reduced Burau matrix of the word, size `(n-1) × (n-1)`, as the product of
/// the generator matrices in word order.
pub fn reduced_burau(w: &BraidWord) -> Matrix {
    let m = w.strands() - 1;
    let mut mat: Matrix = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        LaurentPolynomial::one()
                    } else {
                        LaurentPolynomial::zero()
                    }
                })
                .collect()
        })
        .collect();
    for l in w.letters() {
        let i = l.index() - 1;
        // Row i of the generator (or its inverse): entries at i-1, i, i+1.
        let (left, diag, right) = if l.is_positive() {
            (t(), -t(), LaurentPolynomial::one())
        } else {
            (LaurentPolynomial::one(), -t_inv(), t_inv())
        };
        for row in mat.iter_mut() {
            let col = row[i].clone();
            if col.is_zero() {
                continue;
            }
            if i > 0 {
                row[i - 1] = &row[i - 1] + &(&col * &left);
            }
            if i + 1 < m {
                row[i + 1] = &row[i + 1] + &(&col * &right);
            }
            row[i] = &col * &diag;
        }
    }
    mat
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut a: Matrix) -> LaurentPolynomial {
    let m = a.len();
    if m == 0 {
        return LaurentPolynomial::one();
    }
    let mut sign = false;
    let mut prev = LaurentPolynomial::one();
    for k in 0..m - 1 {
        if a[k][k].is_zero() {
            match (k + 1..m).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return LaurentPolynomial::zero(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss quotients are exact in an integral domain");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[m - 1][m - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// `det(I - B(w))` for the reduced Burau matrix, before normalization.
pub fn burau_determinant(w: &BraidWord) -> LaurentPolynomial {
    let mut mat = reduced_burau(w);
    for (i, row) in mat.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let id = if i == j {
                LaurentPolynomial::one()
            } else {
                LaurentPolynomial::zero()
            };
            *e = &id - e;
        }
    }
    determinant(mat)
}

/// Alexander polynomial of the closure in canonical form:
/// `det(I - B(w)) · (1 - t) / (1 - tⁿ)`. Links get the same one-variable
/// formula; split links give zero.
pub fn alexander_polynomial(w: &BraidWord) -> Result<LaurentPolynomial> {
    let n = w.strands();
    if n == 1 {
        return Ok(LaurentPolynomial::one());
    }
    let det = burau_determinant(w);
    let cyclotomic = LaurentPolynomial::from_i64s(0, &vec![1; n]);
    det.div_exact(&cyclotomic)
        .map(|p| p.canonical())
        .ok_or_else(|| Error::Internal(format!("Burau determinant {det} not divisible by [{n}]_t")))
}

/// Default crossing cap for the state-sum oracle.
pub const BRACKET_CAP: usize = 16;

/// Kauffman bracket of the closure diagram in the variable `A` (printed as
/// `t`), normalized so the crossingless one-strand closure is 1.
///
/// Temperley-Lieb style sweep: the state is the planar pairing of the `n`
/// top endpoints and the `n` current endpoints, and states reached by
/// different smoothings are merged.
pub fn kauffman_bracket_oracle(w: &BraidWord, cap: usize) -> Result<LaurentPolynomial> {
    if w.len() > cap {
        return Err(Error::CrossingCap {
            crossings: w.len(),
            cap,
        });
    }
    let n = w.strands();
    let a = LaurentPolynomial::monomial(1, 1);
    let a_inv = LaurentPolynomial::monomial(1, -1);
    let loop_value = -(&LaurentPolynomial::monomial(1, 2) + &LaurentPolynomial::monomial(1, -2));

    let start: Vec<u8> = (0..2 * n).map(|i| ((i + n) % (2 * n)) as u8).collect();
    let mut states: HashMap<Vec<u8>, LaurentPolynomial> = HashMap::new();
    states.insert(start, LaurentPolynomial::one());

    for l in w.letters() {
        let ci = n + l.index() - 1;
        let cj = ci + 1;
        let (straight, cupcap) = if l.is_positive() {
            (&a, &a_inv)
        } else {
            (&a_inv, &a)
        };
        let mut next: HashMap<Vec<u8>, LaurentPolynomial> = HashMap::with_capacity(states.len());
        for (state, coeff) in states {
            let keep = &coeff * straight;
            let entry = next
                .entry(state.clone())
                .or_insert_with(LaurentPolynomial::zero);
            *entry = &*entry + &keep;

            let mut joined = state;
            let mut c = &coeff * cupcap;
            let (x, y) = (joined[ci] as usize, joined[cj] as usize);
            if x == cj {
                c = &c * &loop_value;
            } else {
                joined[x] = y as u8;
                joined[y] = x as u8;
            }
            joined[ci] = cj as u8;
            joined[cj] = ci as u8;
            let entry = next.entry(joined).or_insert_with(LaurentPolynomial::zero);
            *entry = &*entry + &c;
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }

    let mut total = LaurentPolynomial::zero();
    for (state, coeff) in states {
        let loops = closure_loops(&state, n);
        total = &total + &(&coeff * &loop_value.pow(loops as u32 - 1));
    }
    Ok(total)
}

/// Cycles formed by a pairing once top endpoint `j` is joined to current `j`.
fn closure_loops(pairing: &[u8], n: usize) -> usize {
    let mut seen = vec![false; 2 * n];
    let mut loops = 0;
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = pairing[p] as usize;
            seen[q] = true;
            let r = if q < n { q + n } else { q - n };
            if seen[r] {
                break;
            }
            p = r;
        }
    }
    loops
}

/// `(-A³)^(-e) ⟨L⟩`, invariant under all Markov moves.
pub fn normalized_bracket(w: &BraidWord, cap: usize) -> Result<LaurentPolynomial> {
    let bracket = kauffman_bracket_oracle(w, cap)?;
    let e = w.exponent_sum();
    let sign = if e % 2 == 0 { 1 } else { -1 };
    Ok(&bracket * &LaurentPolynomial::monomial(sign, -3 * e))
}

/// Invariant values recorded on certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub components: usize,
    pub exponent_sum: i64,
    pub self_linking: i64,
    pub genus: Option<u64>,
    pub alexander: LaurentPolynomial,
}

impl InvariantBundle {
    pub fn of(w: &BraidWord) -> Result<Self> {
        let components = closure_components(w);
        let genus = (w.is_positive() && components == 1)
            .then(|| bennequin_genus(w))
            .transpose()?;
        Ok(InvariantBundle {
            components,
            exponent_sum: w.exponent_sum(),
            self_linking: self_linking(w),
            genus,
            alexander: alexander_polynomial(w)?,
        })
    }

    /// Agreement on the link-type invariants (exponent sums may differ
    /// between presentations on different strand counts).
    pub fn same_link_evidence(&self, other: &InvariantBundle) -> bool {
        self.components == other.components
            && self.self_linking == other.self_linking
            && self.alexander == other.alexander
            && self.genus == other.genus
    }
}
