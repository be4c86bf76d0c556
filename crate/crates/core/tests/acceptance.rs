//! End-to-end acceptance suite. Each test prints one pass line; a failed
//! assertion is the corresponding fail.

use std::time::Instant;

use num_rational::Rational64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidband::braid::BraidWord;
use braidband::garside::{conjugacy_test, words_equal, NormalForm, DEFAULT_ORBIT_BUDGET};
use braidband::obstruction::{
    finite_order_writhe_filter, ribbon_obstruction, slice_consistency, FiniteOrderVerdict,
    PhiInvariant, Verdict,
};
use braidband::profile::random_admissible;
use braidband::{
    band_rank_lower, band_rank_search, build_surface, standard_band, Band, BandPresentation,
};

fn random_word(rng: &mut ChaCha8Rng, strands: usize, len: usize) -> BraidWord {
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let k = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) { k } else { -k }
        })
        .collect();
    BraidWord::new(strands, letters).expect("letters in range")
}

fn random_presentations(count: usize, seed: u64) -> Vec<BandPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=6usize);
            let c = rng.gen_range(0..=8usize);
            let bands = (0..c)
                .map(|_| {
                    let len = rng.gen_range(0..=4usize);
                    let conjugator = random_word(&mut rng, n, len);
                    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                    Band::new(conjugator, sign)
                })
                .collect();
            BandPresentation::new(n, bands).expect("uniform strand count")
        })
        .collect()
}

#[test]
fn criterion_1_standard_band_calibration() {
    let start = Instant::now();
    for n in 2..=6usize {
        for i in 1..n {
            for sign in [1i8, -1] {
                let band = standard_band(i, n, sign).unwrap();
                let gen = BraidWord::generator(n, i, sign).unwrap();
                assert!(
                    words_equal(&band.word(), &gen).unwrap(),
                    "standard band ({i}, {n}, {sign:+})"
                );
            }
        }
    }
    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 1 over time budget");
    println!("acceptance 1 (standard band calibration): pass");
}

#[test]
fn criterion_2_figure_surface_calibration() {
    let omega = BraidWord::parse("-3 2", 4).unwrap();
    let p = BandPresentation::new(4, vec![Band::new(omega, 1)]).unwrap();
    let s = build_surface(&p);
    let b = &s.bands()[0];
    assert_eq!((b.attach_start, b.attach_end), (1, 4));
    assert_eq!(b.singularities, vec![3]);
    println!("acceptance 2 (surface calibration): pass");
}

#[test]
fn criterion_3_euler_characteristic_identity() {
    for p in random_presentations(500, 0xE0) {
        let s = build_surface(&p);
        let n = p.strands() as i64;
        let c = p.band_count() as i64;
        assert_eq!(s.euler_characteristic(), n - c);
        assert_eq!(s.boundary_components(), p.product().permutation().cycle_count());
    }
    println!("acceptance 3 (Euler characteristic identity): pass");
}

#[test]
fn criterion_4_band_rank_bound() {
    let start = Instant::now();
    for p in random_presentations(500, 0xE0) {
        if p.product().closure_components() == 1 {
            assert!(
                p.band_count() >= p.strands() - 1,
                "knot presentation below the band count bound"
            );
        }
    }
    for n in 2..=5usize {
        let w = BraidWord::new(n, (1..n as i32).collect()).unwrap();
        let found = band_rank_search(&w, 8, 6).expect("presentation exists");
        assert_eq!(found.band_count(), n - 1, "n = {n}");
        assert_eq!(found.band_count(), band_rank_lower(&w));
        assert!(found.validates(&w).unwrap());
    }
    assert!(start.elapsed().as_secs_f64() < 60.0, "criterion 4 over time budget");
    println!("acceptance 4 (band rank bound): pass");
}

// Suite (5)'s generator, shared with criterion 6.
fn suite5_profiles(n: usize, count: usize) -> impl Iterator<Item = braidband::PLProfile> {
    let base = 0x5EED_0000u64 + n as u64;
    (0..count as u64).map(move |i| {
        random_admissible(n, 1 + (i % 6) as usize, base.wrapping_add(i), Some(Rational64::from_integer(-1)))
    })
}

#[test]
fn criterion_5_endpoint_maximum_suite() {
    let start = Instant::now();
    for n in 2..=8usize {
        for f in suite5_profiles(n, 10_000) {
            assert!(f.endpoint_max_holds().unwrap(), "interior maximum at n = {n}");
            let gap0 = (f.eval(Rational64::from_integer(0)).unwrap()
                + Rational64::from_integer(n as i64))
            .abs();
            assert_eq!(gap0, Rational64::from_integer(n as i64 - 1), "gap at 0, n = {n}");
        }
    }
    assert!(start.elapsed().as_secs_f64() < 30.0, "criterion 5 over time budget");
    println!("acceptance 5 (endpoint maximum suite): pass");
}

#[test]
fn criterion_6_no_new_obstructions() {
    for n in 2..=8usize {
        let knot = BraidWord::new(n, (1..n as i32).collect()).unwrap();
        for f in suite5_profiles(n, 10_000) {
            let phi = PhiInvariant::profile_gap(&f);
            let v = ribbon_obstruction(&phi, &knot).unwrap();
            assert_eq!(v.verdict, Verdict::NoObstruction, "n = {n}");
        }
    }
    println!("acceptance 6 (negative-result reproduction): pass");
}

#[test]
fn criterion_7_garside_soundness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6A51);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5usize);
        let len = rng.gen_range(0..=12);
        let w = random_word(&mut rng, n, len);
        let relator: Vec<i32> = match rng.gen_range(0..3) {
            // braid relation: s_k s_{k+1} s_k (s_{k+1} s_k s_{k+1})^{-1}
            0 if n >= 3 => {
                let k = rng.gen_range(1..n - 1) as i32;
                vec![k, k + 1, k, -(k + 1), -k, -(k + 1)]
            }
            // far commutation: s_k s_m s_k^{-1} s_m^{-1}
            1 if n >= 4 => {
                let k = rng.gen_range(1..n - 2) as i32;
                let m = rng.gen_range(k + 2..n as i32);
                vec![k, m, -k, -m]
            }
            // free insertion
            _ => {
                let k = rng.gen_range(1..n) as i32;
                vec![k, -k]
            }
        };
        let at = rng.gen_range(0..=w.len());
        let mut letters = w.letters().to_vec();
        letters.splice(at..at, relator);
        let rewritten = BraidWord::new(n, letters).unwrap();
        assert_eq!(NormalForm::of(&rewritten), NormalForm::of(&w), "rewriting changed the form");
    }
    for _ in 0..200 {
        let n = rng.gen_range(2..=5usize);
        let len_a = rng.gen_range(0..=10);
        let a = random_word(&mut rng, n, len_a);
        let len_g = rng.gen_range(0..=6);
        let g = random_word(&mut rng, n, len_g);
        let b = a.conjugate(&g).unwrap();
        let witness = conjugacy_test(&a, &b, DEFAULT_ORBIT_BUDGET)
            .unwrap()
            .expect("constructed conjugates must test positive");
        assert!(
            words_equal(&a.conjugate(&witness).unwrap(), &b).unwrap(),
            "witness does not verify"
        );
    }
    assert!(start.elapsed().as_secs_f64() < 120.0, "criterion 7 over time budget");
    println!("acceptance 7 (Garside soundness): pass");
}

#[test]
fn criterion_8_writhe_filter() {
    let trefoil = BraidWord::parse("1 1 1", 2).unwrap();
    assert_eq!(
        finite_order_writhe_filter(&trefoil).unwrap(),
        FiniteOrderVerdict::InfiniteOrder
    );
    let report = slice_consistency(&PhiInvariant::abs_writhe(), &trefoil, 2).unwrap();
    assert!(report.rows[0].exceeds, "q = 0 violation not flagged");
    assert!(report.not_slice);
    println!("acceptance 8 (writhe filter): pass");
}
