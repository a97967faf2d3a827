//! Rewriting T-link standard braids into positive braids that contain a
//! positive full twist.
//!
//! The moves are:
//! * [`isopote_step`]: the closure isotopy turning `B·(σ1…σ_{p-1})^q` on `p`
//!   strands into a braid on `r` strands by destabilizing the last `p-r`
//!   strands;
//! * [`proposition10_transform`]: rotating the widest torus factor
//!   `(σ1…σ_{p-1})^q` into `(σ1…σ_{q-1})^p` when every other factor is at
//!   most `q` strands wide;
//! * [`secondcase_pipeline`]: iterating the isotopy down the pair list until
//!   one of the two previous moves finishes the job.
//!
//! [`fulltwist_presentation`] dispatches over these and returns a
//! certificate backed by closure invariants.

use serde::{Deserialize, Serialize};

use crate::braid::{ascending_run, compose, descending_run, BraidWord};
use crate::error::{Error, Result};
use crate::garside::{extract_full_twist, garside_normal_form};
use crate::invariants::InvariantBundle;
use crate::tlink::{standard_braid, standard_braid_on, TLinkSpec, TPair, TorusBraidSpec};

/// One recorded move. Every step carries the word it produced, in the
/// one-line braid format, so a log can be audited without recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    /// Start from the standard braid of the spec.
    Standard { spec: TLinkSpec, word: String },
    /// Top pair `(p, 1)` folded into the pair below it.
    Absorb { from: TLinkSpec, to: TLinkSpec },
    /// Sub-braid moved around the closure (conjugation).
    CyclicPush { blocks: usize, word: String },
    /// Closure isotopy removing `p - r` strands.
    Isopote {
        r: usize,
        p: usize,
        q: usize,
        word: String,
    },
    /// `(σ1…σ_{p-1})^q` rotated to `(σ1…σ_{q-1})^p`.
    Rotation { p: usize, q: usize, word: String },
    /// The top factor already has power at least its strand count.
    TopTwisted { strands: usize, power: usize },
    /// `Δ²` moved to the front using the Garside normal form.
    GarsideExtraction { inf: i64, word: String },
}

/// `(σ_{r-1}…σ_{r-q+1})^{p-r} · B · (σ1…σ_{r-1})^q` for `q > 1`, and
/// `B · (σ1…σ_{r-1})` for `q = 1`, on `r = B.strands()` strands.
///
/// The closure equals that of `B · (σ1…σ_{p-1})^q` on `p` strands.
pub fn isopote_step(b: &BraidWord, p: usize, q: usize) -> Result<BraidWord> {
    let r = b.strands();
    if !(0 < q && q <= r && r < p) {
        return Err(Error::Precondition(format!(
            "isotopy needs 0 < q ≤ r < p, got q={q}, r={r}, p={p}"
        )));
    }
    let tail = ascending_run(r, 1, r - 1).pow(q as i64);
    if q == 1 {
        return compose(b, &tail);
    }
    let head = descending_run(r, r - 1, r - q + 1).pow((p - r) as i64);
    compose(&compose(&head, b)?, &tail)
}

/// The word `B · (σ1…σ_{p-1})^q` on `p` strands that [`isopote_step`] rewrites.
pub fn isopote_input(b: &BraidWord, p: usize, q: usize) -> Result<BraidWord> {
    compose(&b.widened(p)?, &ascending_run(p, 1, p - 1).pow(q as i64))
}

/// `T(…,(r_n,s_n),(p,1)) → T(…,(r_n,s_n+1))`; a lone `(p,1)` is the unknot.
pub fn absorb_trailing_q1(spec: &TLinkSpec) -> Result<TLinkSpec> {
    match spec.top() {
        Some(TPair { s: 1, .. }) => {}
        _ => {
            return Err(Error::Precondition(format!(
                "{spec} does not end in a pair with power 1"
            )))
        }
    }
    let mut pairs = spec.lower().pairs().to_vec();
    if let Some(last) = pairs.last_mut() {
        last.s += 1;
    }
    TLinkSpec::new(pairs)
}

/// A torus factor placed below the widest factor of a stacked braid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "anchor", rename_all = "kebab-case")]
pub enum SubBraid {
    /// `(σ1…σ_{w-1})^power` on the first `w` strands.
    Leading { width: usize, power: usize },
    /// `(σ_{n-1}…σ_{n-w+1})^power` on the last `w` strands; the shape left
    /// behind by [`isopote_step`].
    Trailing { width: usize, power: usize },
}

impl SubBraid {
    pub fn width(&self) -> usize {
        match *self {
            SubBraid::Leading { width, .. } | SubBraid::Trailing { width, .. } => width,
        }
    }

    pub fn power(&self) -> usize {
        match *self {
            SubBraid::Leading { power, .. } | SubBraid::Trailing { power, .. } => power,
        }
    }

    fn word(&self, strands: usize) -> BraidWord {
        match *self {
            SubBraid::Leading { width, power } => {
                ascending_run(strands, 1, width - 1).pow(power as i64)
            }
            SubBraid::Trailing { width, power } => {
                descending_run(strands, strands - 1, strands - width + 1).pow(power as i64)
            }
        }
    }
}

/// `lower₁ ⋯ lower_m · (σ1…σ_{p-1})^q` on `p` strands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackedBraid {
    pub strands: usize,
    pub lower: Vec<SubBraid>,
    pub top_power: usize,
}

impl StackedBraid {
    pub fn word(&self) -> BraidWord {
        let n = self.strands;
        let mut w = BraidWord::identity(n).expect("positive strand count");
        for sub in &self.lower {
            w = compose(&w, &sub.word(n)).expect("same strands");
        }
        compose(&w, &ascending_run(n, 1, n - 1).pow(self.top_power as i64)).expect("same strands")
    }

    /// From torus sub-braids `B^{rᵢ}_{aᵢ,bᵢ}`. Only factors anchored at the
    /// first strand (`aᵢ = 0`) are accepted.
    pub fn from_torus_braids(lower: &[TorusBraidSpec], p: usize, q: usize) -> Result<Self> {
        let lower = lower
            .iter()
            .map(|t| {
                if t.i != 0 {
                    return Err(Error::Precondition(format!(
                        "sub-braid B_{{{},{}}} is not anchored at the first strand",
                        t.i, t.j
                    )));
                }
                if t.j > p {
                    return Err(Error::InvalidTorusBraid(format!("j = {} exceeds {p}", t.j)));
                }
                Ok(SubBraid::Leading {
                    width: t.j,
                    power: t.r,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StackedBraid {
            strands: p,
            lower,
            top_power: q,
        })
    }

    /// Standard braid of `lower` followed by the top pair `(p, q)`.
    pub fn from_tlink(spec: &TLinkSpec) -> Result<Self> {
        let top = spec
            .top()
            .ok_or_else(|| Error::Precondition("the unknot spec has no top pair".into()))?;
        Ok(StackedBraid {
            strands: top.r,
            lower: spec
                .lower()
                .pairs()
                .iter()
                .map(|p| SubBraid::Leading {
                    width: p.r,
                    power: p.s,
                })
                .collect(),
            top_power: top.s,
        })
    }
}

/// Rotates the top factor `(σ1…σ_{p-1})^q` of a stacked braid into
/// `(σ1…σ_{q-1})^p`, carrying each lower factor to the opposite end of the
/// `q`-strand braid. Needs `p > q > 1` and every lower factor at most `q`
/// strands wide; the output then has `p > q` powers of `σ1…σ_{q-1}` and so
/// a full twist.
pub fn proposition10_transform(input: &StackedBraid) -> Result<BraidWord> {
    let (p, q) = (input.strands, input.top_power);
    if !(p > q && q > 1) {
        return Err(Error::Precondition(format!(
            "rotation needs p > q > 1, got p={p}, q={q}"
        )));
    }
    if let Some(sub) = input.lower.iter().find(|s| s.width() > q) {
        return Err(Error::Precondition(format!(
            "lower factor of width {} exceeds q = {q}",
            sub.width()
        )));
    }
    let top = ascending_run(q, 1, q - 1);
    let reflected = |sub: &SubBraid| match *sub {
        SubBraid::Leading { width, power } => {
            descending_run(q, q - 1, q - width + 1).pow(power as i64)
        }
        SubBraid::Trailing { width, power } => ascending_run(q, 1, width - 1).pow(power as i64),
    };
    // The rotation reverses the cyclic order of the strands: leading factors
    // come out trailing and descending, trailing blocks come out leading and
    // ascending and move below the leading factors.
    let mut order: Vec<&SubBraid> = input.lower.iter().collect();
    order.sort_by_key(|s| matches!(s, SubBraid::Trailing { .. }));
    let mut word = BraidWord::identity(q)?;
    for sub in order {
        word = compose(&word, &reflected(sub))?;
    }
    compose(&word, &top.pow(p as i64))
}

/// Outcome of [`secondcase_pipeline`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutput {
    pub word: BraidWord,
    pub steps: Vec<Step>,
    /// Number of isotopy rounds applied (one per pair consumed).
    pub iterations: usize,
}

/// Runs the isotopy down the pair list of `T(…,(r_n,s_n),(p,q))` with
/// `p > q > 1` and `r_n ≥ q`.
///
/// Each round applies [`isopote_step`] to fold the active top factor onto
/// the next pair, leaving a trailing block behind. The loop ends when the
/// merged power reaches the strand count, or when every remaining lower
/// factor fits under it, in which case [`proposition10_transform`] finishes.
pub fn secondcase_pipeline(spec: &TLinkSpec) -> Result<PipelineOutput> {
    let top = spec
        .top()
        .ok_or_else(|| Error::Precondition("empty spec".into()))?;
    let (p, q) = (top.r, top.s);
    let lower = spec.lower();
    let next = lower
        .top()
        .ok_or_else(|| Error::Precondition(format!("{spec} has a single pair")))?;
    if !(p > q && q > 1 && next.r >= q) {
        return Err(Error::Precondition(format!(
            "needs p > q > 1 and r_n ≥ q, got p={p}, q={q}, r_n={}",
            next.r
        )));
    }

    let mut steps = Vec::new();
    let mut remaining: Vec<TPair> = lower.pairs().to_vec();
    // Trailing blocks in word order, widths only; they are re-anchored to
    // the current strand count after every round.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut strands = p;
    let mut power = q;
    let mut iterations = 0;

    loop {
        let pair = remaining.pop().expect("loop exits before the list empties");
        let below = TLinkSpec::new(remaining.clone())?;
        // B = trailing blocks · standard braid of the rest · (σ1…σ_{r-1})^s
        // is what the isotopy sees; blocks commute past it by a cyclic push.
        let base = compose(
            &standard_braid_on(&below, pair.r)?,
            &ascending_run(pair.r, 1, pair.r - 1).pow(pair.s as i64),
        )?;
        let moved = isopote_step(&base, strands, power)?;
        iterations += 1;
        if !blocks.is_empty() {
            steps.push(Step::CyclicPush {
                blocks: blocks.len(),
                word: pushed(&blocks, &remaining, strands, power, pair)?.to_inline(),
            });
        }
        let current = compose(&trailing_blocks(&blocks, pair.r), &moved)?;
        steps.push(Step::Isopote {
            r: pair.r,
            p: strands,
            q: power,
            word: current.to_inline(),
        });
        if power > 1 {
            blocks.push((power, strands - pair.r));
        }
        strands = pair.r;
        power += pair.s;

        if power >= strands {
            steps.push(Step::TopTwisted { strands, power });
            return Ok(PipelineOutput {
                word: current,
                steps,
                iterations,
            });
        }
        let widest_below = remaining.last().map_or(0, |p| p.r);
        if power >= widest_below {
            let input = StackedBraid {
                strands,
                lower: blocks
                    .iter()
                    .map(|&(width, power)| SubBraid::Trailing { width, power })
                    .chain(remaining.iter().map(|p| SubBraid::Leading {
                        width: p.r,
                        power: p.s,
                    }))
                    .collect(),
                top_power: power,
            };
            let word = proposition10_transform(&input)?;
            steps.push(Step::Rotation {
                p: strands,
                q: power,
                word: word.to_inline(),
            });
            return Ok(PipelineOutput {
                word,
                steps,
                iterations,
            });
        }
        // Otherwise power < r_{n-1}, so every block fits on the next pair.
    }
}

fn trailing_blocks(blocks: &[(usize, usize)], strands: usize) -> BraidWord {
    let mut w = BraidWord::identity(strands).expect("positive strand count");
    for &(width, power) in blocks {
        w = compose(&w, &SubBraid::Trailing { width, power }.word(strands)).expect("same strands");
    }
    w
}

/// The braid before an isotopy round, with the trailing blocks pushed around
/// the closure to sit just above the top factor.
fn pushed(
    blocks: &[(usize, usize)],
    lower: &[TPair],
    strands: usize,
    power: usize,
    pair: TPair,
) -> Result<BraidWord> {
    let mut w = standard_braid_on(&TLinkSpec::new(lower.to_vec())?, strands)?;
    w = compose(
        &w,
        &ascending_run(strands, 1, pair.r - 1).pow(pair.s as i64),
    )?;
    w = compose(&w, &trailing_blocks(blocks, strands))?;
    compose(
        &w,
        &ascending_run(strands, 1, strands - 1).pow(power as i64),
    )
}

/// Evidence that the output of a rewrite contains a full twist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullTwistWitness {
    pub contains_full_twist: bool,
    pub strands: usize,
    /// Garside infimum of the output; on one strand the full twist is
    /// trivial and this is reported as 0.
    pub inf: i64,
    /// Length of the literal `(σ1…σ_{n-1})^n` prefix of the output word.
    pub prefix_letters: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteCertificate {
    pub input_spec: TLinkSpec,
    pub input_word: String,
    pub output_word: String,
    pub step_log: Vec<Step>,
    pub invariant_evidence: (InvariantBundle, InvariantBundle),
    pub fulltwist_witness: FullTwistWitness,
}

impl RewriteCertificate {
    pub fn output(&self) -> Result<BraidWord> {
        self.output_word.parse()
    }

    /// Re-checks the certificate's claims from its recorded words.
    pub fn verify(&self) -> Result<()> {
        let input: BraidWord = self.input_word.parse()?;
        let output = self.output()?;
        if input != standard_braid(&self.input_spec) {
            return Err(Error::Internal(
                "input word is not the standard braid".into(),
            ));
        }
        if !output.is_positive() {
            return Err(Error::Internal("output word is not positive".into()));
        }
        let (before, after) = (InvariantBundle::of(&input)?, InvariantBundle::of(&output)?);
        if (&before, &after) != (&self.invariant_evidence.0, &self.invariant_evidence.1) {
            return Err(Error::Internal("recorded invariants are stale".into()));
        }
        if !before.same_link_evidence(&after) {
            return Err(Error::Internal(format!(
                "invariants differ: {before:?} vs {after:?}"
            )));
        }
        if witness(&output) != self.fulltwist_witness || !self.fulltwist_witness.contains_full_twist
        {
            return Err(Error::Internal("full twist witness does not hold".into()));
        }
        Ok(())
    }
}

fn witness(w: &BraidWord) -> FullTwistWitness {
    let n = w.strands();
    let inf = garside_normal_form(w).inf;
    let prefix = if n == 1 {
        0
    } else {
        let ft = crate::braid::full_twist(n).expect("n ≥ 2");
        if w.letters().starts_with(ft.letters()) {
            ft.len()
        } else {
            0
        }
    };
    FullTwistWitness {
        contains_full_twist: n == 1 || inf >= 2,
        strands: n,
        inf,
        prefix_letters: prefix,
    }
}

/// A positive braid with a full twist for any T-link, with invariant evidence
/// that its closure is the T-link.
///
/// Cases are tried in order for top pair `(p, q)` over `r_n`: `q = 1`
/// (absorb and recurse), `q ≥ p` (the standard braid already works),
/// `p > q ≥ r_n` (rotation), `r_n > q` ([`secondcase_pipeline`]).
pub fn fulltwist_presentation(spec: &TLinkSpec) -> Result<RewriteCertificate> {
    let input = standard_braid(spec);
    let mut steps = vec![Step::Standard {
        spec: spec.clone(),
        word: input.to_inline(),
    }];
    let mut current = spec.clone();
    let raw = loop {
        let Some(top) = current.top() else {
            break standard_braid(&current);
        };
        let (p, q) = (top.r, top.s);
        let r_n = current.lower().top().map_or(0, |t| t.r);
        if q == 1 {
            let next = absorb_trailing_q1(&current)?;
            steps.push(Step::Absorb {
                from: current.clone(),
                to: next.clone(),
            });
            current = next;
        } else if q >= p {
            steps.push(Step::TopTwisted {
                strands: p,
                power: q,
            });
            break standard_braid(&current);
        } else if q >= r_n {
            let word = proposition10_transform(&StackedBraid::from_tlink(&current)?)?;
            steps.push(Step::Rotation {
                p,
                q,
                word: word.to_inline(),
            });
            break word;
        } else {
            let out = secondcase_pipeline(&current)?;
            steps.extend(out.steps);
            break out.word;
        }
    };

    let output = if raw.strands() == 1 {
        raw
    } else {
        let nf = garside_normal_form(&raw);
        let out = extract_full_twist(&raw)
            .map_err(|_| Error::Internal(format!("rewrite of {spec} has inf {} < 2", nf.inf)))?;
        steps.push(Step::GarsideExtraction {
            inf: nf.inf,
            word: out.to_inline(),
        });
        out
    };

    let before = InvariantBundle::of(&input)?;
    let after = InvariantBundle::of(&output)?;
    if !before.same_link_evidence(&after) {
        return Err(Error::Internal(format!(
            "rewrite of {spec} changed invariants: {before:?} vs {after:?}"
        )));
    }
    let cert = RewriteCertificate {
        input_spec: spec.clone(),
        input_word: input.to_string(),
        output_word: output.to_string(),
        step_log: steps,
        fulltwist_witness: witness(&output),
        invariant_evidence: (before, after),
    };
    if !cert.fulltwist_witness.contains_full_twist || !output.is_positive() {
        return Err(Error::Internal(format!(
            "rewrite of {spec} lost its full twist"
        )));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{alexander_polynomial, closure_components, self_linking};

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, l).unwrap()
    }

    fn spec(p: &[(usize, usize)]) -> TLinkSpec {
        TLinkSpec::from_pairs(p).unwrap()
    }

    fn same_link(a: &BraidWord, b: &BraidWord) -> bool {
        closure_components(a) == closure_components(b)
            && self_linking(a) == self_linking(b)
            && alexander_polynomial(a).unwrap() == alexander_polynomial(b).unwrap()
    }

    #[test]
    fn isopote_examples() {
        assert_eq!(isopote_step(&w(2, &[]), 3, 2).unwrap(), w(2, &[1, 1, 1]));
        assert_eq!(isopote_step(&w(2, &[1]), 3, 1).unwrap(), w(2, &[1, 1]));
        let out = isopote_step(&w(2, &[1]), 3, 2).unwrap();
        assert_eq!(out, w(2, &[1, 1, 1, 1]));
        let input = isopote_input(&w(2, &[1]), 3, 2).unwrap();
        assert_eq!(self_linking(&input), 2);
        assert_eq!(self_linking(&out), 2);
        assert!(isopote_step(&w(2, &[1]), 2, 1).is_err());
        assert!(isopote_step(&w(2, &[1]), 4, 3).is_err());
    }

    #[test]
    fn absorb_examples() {
        assert_eq!(
            absorb_trailing_q1(&spec(&[(2, 2), (5, 1)])).unwrap(),
            spec(&[(2, 3)])
        );
        assert_eq!(
            absorb_trailing_q1(&spec(&[(3, 1)])).unwrap(),
            TLinkSpec::unknot()
        );
        let hopf = absorb_trailing_q1(&spec(&[(2, 1), (3, 1)])).unwrap();
        assert_eq!(hopf, spec(&[(2, 2)]));
        assert!(same_link(
            &standard_braid(&spec(&[(2, 1), (3, 1)])),
            &standard_braid(&hopf)
        ));
        assert!(absorb_trailing_q1(&spec(&[(2, 3)])).is_err());
    }

    #[test]
    fn secondcase_examples() {
        let out = secondcase_pipeline(&spec(&[(2, 1), (3, 2)])).unwrap();
        assert_eq!(out.word, w(2, &[1, 1, 1, 1]));
        assert_eq!(out.iterations, 1);
        let out = secondcase_pipeline(&spec(&[(2, 2), (3, 2)])).unwrap();
        assert_eq!(out.word, w(2, &[1; 5]));
        let out = secondcase_pipeline(&spec(&[(2, 1), (4, 2)])).unwrap();
        assert_eq!(out.word, w(2, &[1; 5]));
        assert!(secondcase_pipeline(&spec(&[(3, 2)])).is_err());
        assert!(secondcase_pipeline(&spec(&[(2, 1), (5, 3)])).is_err());
    }

    #[test]
    fn rotation_examples() {
        let input = StackedBraid::from_tlink(&spec(&[(2, 2), (3, 2)])).unwrap();
        let out = proposition10_transform(&input).unwrap();
        assert_eq!(out.strands(), 2);
        assert!(crate::garside::contains_full_twist(&out));
        assert!(same_link(&out, &input.word()));

        let out =
            proposition10_transform(&StackedBraid::from_tlink(&spec(&[(4, 3)])).unwrap()).unwrap();
        assert_eq!(out, standard_braid(&spec(&[(3, 4)])));
        assert!(garside_normal_form(&out).inf >= 2);

        let bad = StackedBraid::from_torus_braids(&[TorusBraidSpec::new(1, 3, 1).unwrap()], 5, 3);
        assert!(bad.is_err());
        let wide = StackedBraid::from_tlink(&spec(&[(4, 1), (5, 3)])).unwrap();
        assert!(proposition10_transform(&wide).is_err());
    }

    #[test]
    fn rotation_degenerate_top() {
        for p in 3..7 {
            let input = StackedBraid::from_tlink(&TLinkSpec::torus(p, p - 1).unwrap()).unwrap();
            let out = proposition10_transform(&input).unwrap();
            assert!(garside_normal_form(&out).inf >= 2);
        }
    }

    #[test]
    fn dispatcher_examples() {
        let c = fulltwist_presentation(&spec(&[(2, 3)])).unwrap();
        assert_eq!(c.fulltwist_witness.inf, 3);
        assert_eq!(c.output().unwrap(), w(2, &[1, 1, 1]));

        let c = fulltwist_presentation(&spec(&[(2, 2), (3, 2)])).unwrap();
        assert_eq!(c.output().unwrap(), w(2, &[1; 5]));
        assert_eq!(c.fulltwist_witness.inf, 5);

        let c = fulltwist_presentation(&spec(&[(2, 1), (5, 1)])).unwrap();
        assert_eq!(c.output().unwrap(), w(2, &[1, 1]));
        assert_eq!(c.fulltwist_witness.inf, 2);
        c.verify().unwrap();

        let c = fulltwist_presentation(&spec(&[(4, 1)])).unwrap();
        assert_eq!(c.output().unwrap(), w(1, &[]));
        assert!(c.fulltwist_witness.contains_full_twist);
    }

    #[test]
    fn secondcase_deep_iteration() {
        // r_n > q forces the isotopy rounds; checked against the invariants
        for p in [
            &[(3, 1), (5, 1), (7, 2)][..],
            &[(4, 1), (6, 1), (9, 2)],
            &[(2, 1), (5, 1), (6, 2)],
            &[(5, 1), (7, 2)],
        ] {
            let s = spec(p);
            let out = secondcase_pipeline(&s).unwrap();
            assert!(same_link(&out.word, &standard_braid(&s)), "{s}");
            assert!(out.iterations <= s.pairs().len());
            fulltwist_presentation(&s).unwrap().verify().unwrap();
        }
    }
}
