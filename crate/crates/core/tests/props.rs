//! Property tests for the algebraic invariants of the word, normal-form,
//! band, and profile layers.

use num_rational::Rational64;
use num_traits::Signed;
use proptest::prelude::*;

use braidband::braid::BraidWord;
use braidband::garside::{words_equal, NormalForm};
use braidband::profile::random_admissible;
use braidband::{band_rank_lower, standard_band};

fn word_strategy(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        proptest::collection::vec(
            (1..n as i32, proptest::bool::ANY)
                .prop_map(|(k, neg)| if neg { -k } else { k }),
            0..=max_len,
        )
        .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
    })
}

proptest! {
    #[test]
    fn parse_serialize_round_trip(w in word_strategy(6, 12)) {
        let back = BraidWord::parse(&w.serialize(), w.strands()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn writhe_is_a_homomorphism(a in word_strategy(5, 10), b in word_strategy(5, 10)) {
        prop_assume!(a.strands() == b.strands());
        let ab = a.concat(&b).unwrap();
        prop_assert_eq!(ab.writhe(), a.writhe() + b.writhe());
    }

    #[test]
    fn permutation_is_a_homomorphism(a in word_strategy(5, 10), b in word_strategy(5, 10)) {
        prop_assume!(a.strands() == b.strands());
        let ab = a.concat(&b).unwrap();
        prop_assert_eq!(ab.permutation(), a.permutation().compose(&b.permutation()));
    }

    #[test]
    fn free_reduction_preserves_the_element(w in word_strategy(5, 12)) {
        prop_assert!(words_equal(&w, &w.free_reduce()).unwrap());
    }

    #[test]
    fn inverse_cancels(w in word_strategy(5, 10)) {
        let prod = w.concat(&w.inverse()).unwrap();
        prop_assert!(NormalForm::of(&prod).is_identity());
    }

    #[test]
    fn normal_form_word_round_trip(w in word_strategy(5, 10)) {
        let nf = NormalForm::of(&w);
        prop_assert_eq!(NormalForm::of(&nf.to_word()), nf);
    }

    #[test]
    fn conjugation_preserves_invariants(w in word_strategy(5, 10), g in word_strategy(5, 6)) {
        prop_assume!(w.strands() == g.strands());
        let c = w.conjugate(&g).unwrap();
        prop_assert_eq!(c.writhe(), w.writhe());
        prop_assert_eq!(c.permutation().cycle_type(), w.permutation().cycle_type());
        prop_assert_eq!(c.closure_components(), w.closure_components());
    }

    #[test]
    fn stabilization_preserves_closure_components(w in word_strategy(5, 10), sign in prop_oneof![Just(1i8), Just(-1i8)]) {
        prop_assert_eq!(w.stabilize(sign).closure_components(), w.closure_components());
    }

    #[test]
    fn standard_band_word_has_unit_writhe(n in 2..=6usize, i in 1..=5usize, sign in prop_oneof![Just(1i8), Just(-1i8)]) {
        prop_assume!(i < n);
        let band = standard_band(i, n, sign).unwrap();
        prop_assert_eq!(band.word().writhe(), sign as i64);
    }

    #[test]
    fn band_rank_lower_bounds(w in word_strategy(5, 8)) {
        let lower = band_rank_lower(&w) as i64;
        prop_assert!(lower >= w.writhe().abs());
        prop_assert!(lower >= w.strands() as i64 - w.closure_components() as i64);
    }

    #[test]
    fn admissible_profiles_respect_slope_bounds(
        n in 2..=8usize,
        segments in 1..=6usize,
        seed in any::<u64>(),
    ) {
        let f = random_admissible(n, segments, seed, None);
        let ts: Vec<Rational64> = f.breakpoints().collect();
        for pair in ts.windows(2) {
            let dv = f.eval(pair[1]).unwrap() - f.eval(pair[0]).unwrap();
            let slope = dv / (pair[1] - pair[0]);
            prop_assert!(slope.is_integer());
            prop_assert!(slope.to_integer().abs() <= n as i64);
            prop_assert_eq!((slope.to_integer() - n as i64).rem_euclid(2), 0);
        }
    }

    #[test]
    fn max_gap_dominates_sampled_gaps(
        n in 2..=6usize,
        seed in any::<u64>(),
        num in 0..=16i64,
    ) {
        let f = random_admissible(n, 3, seed, None);
        let (max, _) = f.max_gap();
        let t = Rational64::new(num, 16);
        let trivial = Rational64::from_integer(n as i64) * (t - Rational64::from_integer(1));
        prop_assert!((f.eval(t).unwrap() - trivial).abs() <= max);
    }
}
