//! The counting obstruction: a positive knot braid with a full twist on `p`
//! strands has more than `p(p-1) + p - 2` crossings, while the minimal
//! positive braids of certain satellites have fewer. Those satellites are
//! therefore not positive full-twist braids, and so not T-knots.

use serde::{Deserialize, Serialize};

use crate::braid::{full_twist, BraidWord, Letter};
use crate::error::{Error, Result};
use crate::invariants::{alexander_polynomial, bennequin_genus, closure_components};
use crate::satellite::{assemble_satellite, FamilyParams, Framing};

/// `p(p-1) + p - 2`.
pub fn crossings_lower_bound(p: usize) -> Result<usize> {
    if p < 2 {
        return Err(Error::Precondition(format!("need p ≥ 2, got {p}")));
    }
    Ok(p * (p - 1) + p - 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub p: usize,
    pub max_extra: usize,
    pub words_checked: usize,
    pub min_components: usize,
    pub passed: bool,
}

/// Every `full_twist(p) ∘ w` with `w` positive and `|w| ≤ p - 2` closes to a
/// link with at least two components.
pub fn verify_lemma_crossings_bruteforce(p: usize) -> Result<LemmaReport> {
    if !(2..=6).contains(&p) {
        return Err(Error::Precondition(format!("p must lie in 2..=6, got {p}")));
    }
    let twist = full_twist(p)?;
    let max_extra = p - 2;
    let mut words_checked = 0;
    let mut min_components = usize::MAX;
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    while let Some(extra) = stack.pop() {
        let mut letters = twist.letters().to_vec();
        letters.extend_from_slice(&extra);
        let c = closure_components(&BraidWord::new(p, letters)?);
        words_checked += 1;
        min_components = min_components.min(c);
        if extra.len() < max_extra {
            for i in 1..p {
                let mut next = extra.clone();
                next.push(Letter::pos(i));
                stack.push(next);
            }
        }
    }
    Ok(LemmaReport {
        p,
        max_extra,
        words_checked,
        min_components,
        passed: min_components >= 2,
    })
}

/// Two positive knot braids on the same strand count with equal Alexander
/// polynomials must have the same number of crossings (both equal
/// `2g + n - 1`). Returns whether the lengths agree.
pub fn equal_crossings_check(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    if w1.strands() != w2.strands() {
        return Err(Error::StrandMismatch {
            left: w1.strands(),
            right: w2.strands(),
        });
    }
    for w in [w1, w2] {
        if !w.is_positive() {
            return Err(Error::NotPositive);
        }
        let c = closure_components(w);
        if c != 1 {
            return Err(Error::NotAKnot(c));
        }
    }
    if alexander_polynomial(w1)? != alexander_polynomial(w2)? {
        return Err(Error::Precondition(
            "Alexander polynomials differ, the closures are different knots".into(),
        ));
    }
    Ok(w1.len() == w2.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedNotTknot,
    Inconclusive,
}

/// A fact imported from the literature rather than checked here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub claim: String,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusions {
    /// No positive braid with a positive full twist represents the satellite.
    pub not_positive_fulltwist: bool,
    /// The satellite is not a T-knot (needs every T-link to have such a braid).
    pub not_tknot: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateInvariants {
    pub pattern_is_knot: bool,
    pub pattern_components: usize,
    pub satellite_components: usize,
    pub formula_crossings: usize,
    pub constructed_crossings: usize,
    pub satellite_strands: usize,
    pub satellite_positive: bool,
    pub satellite_genus: Option<u64>,
    pub pattern_genus: Option<u64>,
    pub companion_genus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotTKnotCertificate {
    pub params: FamilyParams,
    pub pattern: String,
    pub companion: String,
    pub braid_index: usize,
    pub minimal_crossings: usize,
    pub bound: usize,
    pub verdict: Verdict,
    pub conclusions: Conclusions,
    pub reasoning: Vec<String>,
    pub assumptions: Vec<Assumption>,
    pub invariants: CertificateInvariants,
}

fn assumptions(p: &FamilyParams) -> Vec<Assumption> {
    vec![
        Assumption {
            claim: format!("the torus knot T({}, {}) has braid index {}", p.a, p.a + 1, p.a),
            citation: "Franks–Williams".into(),
        },
        Assumption {
            claim: format!(
                "the satellite has braid index ab = {} and the cabled braid is a minimal positive braid",
                p.braid_index()
            ),
            citation: "Williams, braid index of generalized cables".into(),
        },
        Assumption {
            claim: "a positive braid with a positive full twist realizes the braid index".into(),
            citation: "Franks–Williams".into(),
        },
        Assumption {
            claim: "T-links are exactly the Lorenz links".into(),
            citation: "Birman–Kofman".into(),
        },
    ]
}

/// Builds the satellite of the family and checks the counting inequality.
///
/// A pattern that is not a knot, or a crossing count above the bound, gives
/// an inconclusive certificate rather than an error.
pub fn not_tknot_certificate(
    lower: &[(usize, usize)],
    a: usize,
    b: usize,
    k: usize,
) -> Result<NotTKnotCertificate> {
    let params = FamilyParams::new(lower, a, b, k)?;
    let pattern_spec = params.pattern_spec()?;
    let pattern = params.pattern()?;
    let companion = params.companion();
    let satellite = assemble_satellite(&companion, &pattern, Framing::SeifertZero)?;

    let formula = params.predicted_crossings();
    if satellite.len() != formula {
        return Err(Error::Internal(format!(
            "satellite for {params} has {} letters, formula gives {formula}",
            satellite.len()
        )));
    }
    let braid_index = params.braid_index();
    let bound = crossings_lower_bound(braid_index)?;

    let pattern_components = closure_components(&pattern);
    let pattern_is_knot = pattern_components == 1;
    let satellite_components = closure_components(&satellite);
    let invariants = CertificateInvariants {
        pattern_is_knot,
        pattern_components,
        satellite_components,
        formula_crossings: formula,
        constructed_crossings: satellite.len(),
        satellite_strands: satellite.strands(),
        satellite_positive: satellite.is_positive(),
        satellite_genus: bennequin_genus(&satellite).ok(),
        pattern_genus: bennequin_genus(&pattern).ok(),
        companion_genus: bennequin_genus(&companion)?,
    };

    let mut reasoning = Vec::new();
    let certified = if !pattern_is_knot {
        reasoning.push(format!(
            "pattern {pattern_spec} has {pattern_components} components; the argument needs a knot"
        ));
        false
    } else if formula > bound {
        reasoning.push(format!(
            "minimal positive braid has {formula} crossings, above the bound {bound}; no contradiction"
        ));
        false
    } else {
        if !invariants.satellite_positive || satellite_components != 1 {
            return Err(Error::Internal(format!(
                "satellite for {params} is not a positive knot braid"
            )));
        }
        reasoning.extend([
            format!("braid index of the satellite is {braid_index}"),
            format!(
                "a positive full-twist braid of it would have {braid_index} strands and, by the genus formula, exactly {formula} crossings"
            ),
            format!(
                "a positive knot braid with a full twist on {braid_index} strands needs more than {bound} crossings"
            ),
            format!("{formula} ≤ {bound}, contradiction"),
        ]);
        true
    };

    Ok(NotTKnotCertificate {
        pattern: pattern_spec.to_string(),
        companion: companion.to_inline(),
        braid_index,
        minimal_crossings: formula,
        bound,
        verdict: if certified {
            Verdict::CertifiedNotTknot
        } else {
            Verdict::Inconclusive
        },
        conclusions: Conclusions {
            not_positive_fulltwist: certified,
            not_tknot: certified,
        },
        reasoning,
        assumptions: assumptions(&params),
        invariants,
        params,
    })
}

/// Pattern `T(b, (a-1)(a+1)b + 1)` with companion `T(a, a+1)`.
pub fn corollary_family(a: usize, b: usize) -> Result<NotTKnotCertificate> {
    if a < 2 || b < 2 {
        return Err(Error::Precondition(format!(
            "need a, b ≥ 2, got a={a}, b={b}"
        )));
    }
    not_tknot_certificate(&[], a, b, 1)
}
