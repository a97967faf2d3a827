use proptest::prelude::*;

use tbraid::braid::{
    compose, conjugate, cyclic_shift, destabilize, full_twist, permutation_of, stabilize,
};
use tbraid::garside::{contains_full_twist, extract_full_twist, garside_normal_form};
use tbraid::invariants::{
    alexander_polynomial, closure_components, normalized_bracket, self_linking, BRACKET_CAP,
};
use tbraid::rewrite::{fulltwist_presentation, isopote_input, isopote_step};
use tbraid::satellite::{assemble_satellite, cable, FamilyParams, Framing};
use tbraid::tlink::{standard_braid, transpose_dual};
use tbraid::{BraidWord, TLinkSpec};

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i });
        prop::collection::vec(letter, 0..=max_len)
            .prop_map(move |l| BraidWord::from_signed(n, &l).unwrap())
    })
}

fn positive_braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec(1..n as i32, 0..=max_len)
            .prop_map(move |l| BraidWord::from_signed(n, &l).unwrap())
    })
}

fn tlink(max_r: usize, max_s: usize) -> impl Strategy<Value = TLinkSpec> {
    prop::collection::btree_map(2..=max_r, 1..=max_s, 1..=3)
        .prop_map(|m| TLinkSpec::from_pairs(&m.into_iter().collect::<Vec<_>>()).unwrap())
}

fn same_group_element(a: &BraidWord, b: &BraidWord) -> bool {
    garside_normal_form(a) == garside_normal_form(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_word_represents_the_braid(w in braid(5, 12)) {
        let nf = garside_normal_form(&w);
        prop_assert!(same_group_element(&w, &nf.to_word()));
        prop_assert_eq!(permutation_of(&nf.to_word()), permutation_of(&w));
    }

    #[test]
    fn inverse_cancels(w in braid(5, 12)) {
        let id = BraidWord::identity(w.strands()).unwrap();
        let prod = compose(&w, &w.inverse()).unwrap();
        prop_assert!(same_group_element(&prod, &id));
        prop_assert!(prod.free_reduced().is_empty());
    }

    #[test]
    fn full_twist_is_central(w in braid(5, 10)) {
        let t = full_twist(w.strands()).unwrap();
        prop_assert!(same_group_element(&compose(&t, &w).unwrap(), &compose(&w, &t).unwrap()));
    }

    #[test]
    fn full_twist_is_extractable(w in positive_braid(5, 10)) {
        let t = full_twist(w.strands()).unwrap();
        let tw = compose(&w, &t).unwrap();
        prop_assert!(contains_full_twist(&tw));
        let ex = extract_full_twist(&tw).unwrap();
        prop_assert!(ex.is_positive());
        prop_assert!(same_group_element(&ex, &tw));
        prop_assert_eq!(ex.len(), tw.len());
    }

    #[test]
    fn markov_moves_preserve_invariants(w in braid(4, 10), g in braid(4, 6), k in 0usize..10) {
        let g = BraidWord::from_signed(w.strands(), &g.signed_letters().into_iter().filter(|l| l.unsigned_abs() < w.strands() as u32).collect::<Vec<_>>()).unwrap();
        let alex = alexander_polynomial(&w).unwrap();
        let moved = [conjugate(&w, &g).unwrap(), cyclic_shift(&w, k), stabilize(&w)];
        for m in &moved {
            prop_assert_eq!(closure_components(m), closure_components(&w));
            prop_assert_eq!(self_linking(m), self_linking(&w));
            prop_assert_eq!(alexander_polynomial(m).unwrap(), alex.clone());
        }
        prop_assert_eq!(destabilize(&stabilize(&w)).unwrap(), w.clone());
    }

    #[test]
    fn bracket_is_a_markov_invariant(w in braid(3, 7)) {
        let a = normalized_bracket(&w, BRACKET_CAP).unwrap();
        prop_assert_eq!(normalized_bracket(&stabilize(&w), BRACKET_CAP).unwrap(), a.clone());
        prop_assert_eq!(normalized_bracket(&cyclic_shift(&w, 1), BRACKET_CAP).unwrap(), a);
    }

    #[test]
    fn text_round_trip(w in braid(6, 12)) {
        prop_assert_eq!(w.to_string().parse::<BraidWord>().unwrap(), w.clone());
        prop_assert_eq!(BraidWord::parse_inline(&w.to_inline()).unwrap(), w);
    }

    #[test]
    fn isopote_preserves_closure(b in braid(5, 8), extra in 1usize..3, qseed in 0usize..5) {
        let r = b.strands();
        let p = r + extra;
        let q = 1 + qseed % r;
        let lhs = isopote_step(&b, p, q).unwrap();
        let rhs = isopote_input(&b, p, q).unwrap();
        prop_assert_eq!(closure_components(&lhs), closure_components(&rhs));
        prop_assert_eq!(self_linking(&lhs), self_linking(&rhs));
        prop_assert_eq!(alexander_polynomial(&lhs).unwrap(), alexander_polynomial(&rhs).unwrap());
    }

    #[test]
    fn fulltwist_presentation_is_sound(spec in tlink(7, 6)) {
        let cert = fulltwist_presentation(&spec).unwrap();
        cert.verify().unwrap();
        let out = cert.output().unwrap();
        prop_assert!(out.is_positive());
        prop_assert!(contains_full_twist(&out));
        let input = standard_braid(&spec);
        prop_assert_eq!(alexander_polynomial(&out).unwrap(), alexander_polynomial(&input).unwrap());
        prop_assert!(out.strands() <= input.strands());
    }

    #[test]
    fn duality_preserves_closure(spec in tlink(6, 3)) {
        let dual = transpose_dual(&spec);
        let (w, d) = (standard_braid(&spec), standard_braid(&dual));
        prop_assert_eq!(closure_components(&w), closure_components(&d));
        prop_assert_eq!(alexander_polynomial(&w).unwrap(), alexander_polynomial(&d).unwrap());
    }

    #[test]
    fn cable_lifts_permutations(w in braid(4, 8), b in 2usize..4) {
        let c = cable(&w, b).unwrap();
        prop_assert_eq!(c.strands(), w.strands() * b);
        prop_assert_eq!(c.len(), w.len() * b * b);
        prop_assert_eq!(c.exponent_sum(), w.exponent_sum() * (b * b) as i64);
        let perm = permutation_of(&w);
        let lifted = permutation_of(&c);
        for i in 0..c.strands() {
            prop_assert_eq!(lifted.apply(i), perm.apply(i / b) * b + i % b);
        }
    }

    #[test]
    fn satellite_ledger(a in 2usize..5, b in 2usize..5, k in 1usize..4, d in 0usize..3) {
        let lower: Vec<(usize, usize)> = if d == 0 || b == 2 { vec![] } else { vec![(2, d)] };
        let params = FamilyParams::new(&lower, a, b, k).unwrap();
        let w = assemble_satellite(&params.companion(), &params.pattern().unwrap(), Framing::SeifertZero).unwrap();
        prop_assert_eq!(w.len(), params.predicted_crossings());
        prop_assert!(w.is_positive());
        prop_assert_eq!(w.strands(), params.braid_index());
    }
}
