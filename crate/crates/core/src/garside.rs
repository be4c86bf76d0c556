//! Garside (left-greedy) normal forms and exact conjugacy decisions.
//!
//! The classical Garside structure on the braid group is used: the
//! half-twist `delta` is the Garside element and the simple elements are
//! permutation braids (positive braids in which each pair of strands
//! crosses at most once). A permutation braid is stored as its underlying
//! permutation; its positive word length equals the inversion number.
//!
//! Word equality is decided by comparing normal forms. Conjugacy is
//! decided exactly by computing super summit representatives through
//! cycling and decycling and then enumerating the super summit set,
//! closed under conjugation by simple elements, up to a configurable
//! orbit budget.

use std::collections::{HashMap, VecDeque};

use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on the number of super summit elements explored.
pub const DEFAULT_ORBIT_BUDGET: usize = 1_000_000;

// ---------------------------------------------------------------------------
// Permutation-braid primitives
// ---------------------------------------------------------------------------

/// The half-twist permutation `i -> n - 1 - i`.
pub fn delta(n: usize) -> Permutation {
    Permutation::from_images((0..n).rev().collect())
}

fn transposition(n: usize, k: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.swap(k, k + 1);
    Permutation::from_images(images)
}

/// Number of inversions = positive word length of the permutation braid.
pub fn inversions(p: &Permutation) -> usize {
    let im = p.images();
    let mut count = 0;
    for i in 0..im.len() {
        for j in i + 1..im.len() {
            if im[i] > im[j] {
                count += 1;
            }
        }
    }
    count
}

/// `tau(x) = delta^{-1} x delta` on permutation braids.
fn tau(p: &Permutation) -> Permutation {
    let n = p.size();
    let im = p.images();
    Permutation::from_images((0..n).map(|i| n - 1 - im[n - 1 - i]).collect())
}

/// A positive word for the permutation braid, as 1-based generator indices.
pub fn word_of_simple(p: &Permutation) -> Vec<i32> {
    let mut q = p.clone();
    let mut letters = Vec::with_capacity(inversions(p));
    loop {
        let im = q.images();
        match (0..q.size().saturating_sub(1)).find(|&k| im[k] > im[k + 1]) {
            Some(k) => {
                letters.push((k + 1) as i32);
                q.swap_starts(k);
            }
            None => break,
        }
    }
    letters
}

/// Left gcd of two permutation braids in the prefix order.
///
/// Greedy extraction is sound: an atom dividing both operands divides the
/// meet, and the meet then factors through it.
fn meet(a: &Permutation, b: &Permutation) -> Permutation {
    let n = a.size();
    let mut a = a.clone();
    let mut b = b.clone();
    let mut m = Permutation::identity(n);
    'outer: loop {
        for k in 0..n - 1 {
            if a.image(k) > a.image(k + 1) && b.image(k) > b.image(k + 1) {
                a.swap_starts(k);
                b.swap_starts(k);
                m.apply_adjacent(k);
                continue 'outer;
            }
        }
        break;
    }
    m
}

/// Right complement: `x * complement(x) = delta`.
fn complement(x: &Permutation) -> Permutation {
    x.inverse().compose(&delta(x.size()))
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

/// Left-greedy normal form `delta^inf x_1 ... x_l` with no factor equal to
/// the identity or to `delta`. Structural equality decides word equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: usize,
    infimum: i32,
    factors: Vec<Permutation>,
}

impl NormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn infimum(&self) -> i32 {
        self.infimum
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn supremum(&self) -> i32 {
        self.infimum + self.factors.len() as i32
    }

    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    fn identity(strands: usize) -> Self {
        NormalForm { strands, infimum: 0, factors: Vec::new() }
    }

    /// Normal form of a braid word.
    pub fn of(w: &BraidWord) -> Self {
        let n = w.strands();
        if n == 1 {
            return NormalForm::identity(1);
        }
        let d = delta(n);
        let mut items: Vec<(Permutation, usize)> = Vec::with_capacity(w.len());
        let mut negatives = 0usize;
        for &l in w.letters() {
            let k = l.unsigned_abs() as usize - 1;
            if l > 0 {
                items.push((transposition(n, k), negatives));
            } else {
                negatives += 1;
                // delta * sigma_k^{-1} is the simple with the crossing removed.
                items.push((d.compose(&transposition(n, k)), negatives));
            }
        }
        let factors = items
            .into_iter()
            .map(|(p, seen)| if (negatives - seen) % 2 == 1 { tau(&p) } else { p })
            .collect();
        normalize(n, -(negatives as i32), factors)
    }

    /// A braid word representing this element, `delta` power first.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let mut letters: Vec<i32> = Vec::new();
        if self.infimum != 0 && n > 1 {
            let dw = word_of_simple(&delta(n));
            if self.infimum > 0 {
                for _ in 0..self.infimum {
                    letters.extend_from_slice(&dw);
                }
            } else {
                let inv: Vec<i32> = dw.iter().rev().map(|l| -l).collect();
                for _ in 0..-self.infimum {
                    letters.extend_from_slice(&inv);
                }
            }
        }
        for f in &self.factors {
            letters.extend_from_slice(&word_of_simple(f));
        }
        BraidWord::new(n, letters).expect("normal form letters are in range").free_reduce()
    }
}

fn normalize(strands: usize, mut infimum: i32, mut factors: Vec<Permutation>) -> NormalForm {
    let d = delta(strands);
    factors.retain(|f| !f.is_identity());
    loop {
        let mut changed = false;
        let mut j = 0;
        while j + 1 < factors.len() {
            let s = meet(&complement(&factors[j]), &factors[j + 1]);
            if !s.is_identity() {
                factors[j] = factors[j].compose(&s);
                factors[j + 1] = s.inverse().compose(&factors[j + 1]);
                changed = true;
            }
            j += 1;
        }
        factors.retain(|f| !f.is_identity());
        if !changed {
            break;
        }
    }
    while factors.first() == Some(&d) {
        factors.remove(0);
        infimum += 1;
    }
    debug_assert!(factors.iter().all(|f| f != &d && !f.is_identity()));
    NormalForm { strands, infimum, factors }
}

fn nf_of_simple(strands: usize, s: &Permutation) -> NormalForm {
    if s.is_identity() {
        NormalForm::identity(strands)
    } else if *s == delta(strands) {
        NormalForm { strands, infimum: 1, factors: Vec::new() }
    } else {
        NormalForm { strands, infimum: 0, factors: vec![s.clone()] }
    }
}

fn nf_of_simple_inverse(strands: usize, s: &Permutation) -> NormalForm {
    // s^{-1} = delta^{-1} * (delta s^{-1})
    let r = delta(strands).compose(&s.inverse());
    let mut nf = nf_of_simple(strands, &r);
    nf.infimum -= 1;
    normalize(strands, nf.infimum, nf.factors)
}

fn product(a: &NormalForm, b: &NormalForm) -> NormalForm {
    debug_assert_eq!(a.strands, b.strands);
    let mut factors: Vec<Permutation> = if b.infimum % 2 != 0 {
        a.factors.iter().map(tau).collect()
    } else {
        a.factors.clone()
    };
    factors.extend_from_slice(&b.factors);
    normalize(a.strands, a.infimum + b.infimum, factors)
}

fn conjugate_by_simple(x: &NormalForm, s_nf: &NormalForm, s_inv_nf: &NormalForm) -> NormalForm {
    product(&product(s_inv_nf, x), s_nf)
}

// ---------------------------------------------------------------------------
// Word problem
// ---------------------------------------------------------------------------

/// Exact equality in the braid group.
pub fn words_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch { left: a.strands(), right: b.strands() });
    }
    Ok(NormalForm::of(a) == NormalForm::of(b))
}

// ---------------------------------------------------------------------------
// Conjugacy
// ---------------------------------------------------------------------------

/// Cycling conjugates by the initial factor, decycling by the final one.
/// Both return the conjugating word `h` with `h x h^{-1}` the new element.
fn cycle(x: &NormalForm) -> (NormalForm, BraidWord) {
    let n = x.strands;
    let first = if x.infimum % 2 != 0 { tau(&x.factors[0]) } else { x.factors[0].clone() };
    let a_word =
        BraidWord::new(n, word_of_simple(&first)).expect("simple word in range");
    let next = conjugate_by_simple(x, &nf_of_simple(n, &first), &nf_of_simple_inverse(n, &first));
    (next, a_word.inverse())
}

fn decycle(x: &NormalForm) -> (NormalForm, BraidWord) {
    let n = x.strands;
    let last = x.factors.last().expect("decycle needs a factor").clone();
    let b_word = BraidWord::new(n, word_of_simple(&last)).expect("simple word in range");
    let next = product(
        &product(&nf_of_simple(n, &last), x),
        &nf_of_simple_inverse(n, &last),
    );
    (next, b_word)
}

/// Super summit representative of `w` plus a conjugator `g` with
/// `g w g^{-1}` equal to the representative.
fn summit(w: &BraidWord) -> (NormalForm, BraidWord) {
    let n = w.strands();
    let mut x = NormalForm::of(w);
    let mut g = BraidWord::identity(n);
    if n < 2 {
        return (x, g);
    }
    let bound = n * (n - 1) / 2;
    loop {
        let (inf0, sup0) = (x.infimum, x.supremum());
        // Raise the infimum by cycling.
        let mut stale = 0;
        while stale < bound && !x.factors.is_empty() {
            let before = x.infimum;
            let (next, h) = cycle(&x);
            g = h.concat(&g).expect("same strand count");
            x = next;
            if x.infimum > before {
                stale = 0;
            } else {
                stale += 1;
            }
        }
        // Lower the supremum by decycling.
        let mut stale = 0;
        while stale < bound && !x.factors.is_empty() {
            let before = x.supremum();
            let (next, h) = decycle(&x);
            g = h.concat(&g).expect("same strand count");
            x = next;
            if x.supremum() < before {
                stale = 0;
            } else {
                stale += 1;
            }
        }
        if x.infimum == inf0 && x.supremum() == sup0 {
            break;
        }
    }
    (x, g)
}

struct SimpleTable {
    /// (word of s, nf of s, nf of s^{-1}) for every non-identity simple.
    entries: Vec<(BraidWord, NormalForm, NormalForm)>,
}

impl SimpleTable {
    fn new(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        permute_into(&mut current, 0, &mut perms);
        perms.sort();
        let entries = perms
            .into_iter()
            .map(Permutation::from_images)
            .filter(|p| !p.is_identity())
            .map(|p| {
                let word = BraidWord::new(n, word_of_simple(&p)).expect("in range");
                let nf = nf_of_simple(n, &p);
                let inv = nf_of_simple_inverse(n, &p);
                (word, nf, inv)
            })
            .collect();
        SimpleTable { entries }
    }
}

fn permute_into(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permute_into(current, k + 1, out);
        current.swap(k, i);
    }
}

fn expand_one(
    e: &NormalForm,
    g: &BraidWord,
    table: &SimpleTable,
    inf: i32,
    len: usize,
) -> Vec<(NormalForm, BraidWord)> {
    let mut out = Vec::new();
    for (s_word, s_nf, s_inv_nf) in &table.entries {
        let child = conjugate_by_simple(e, s_nf, s_inv_nf);
        if child.infimum == inf && child.canonical_length() == len {
            let g_child = s_word.inverse().concat(g).expect("same strand count");
            out.push((child, g_child));
        }
    }
    out
}

fn expand_frontier(
    frontier: &[(NormalForm, BraidWord)],
    table: &SimpleTable,
    inf: i32,
    len: usize,
) -> Vec<Vec<(NormalForm, BraidWord)>> {
    #[cfg(feature = "parallel")]
    {
        frontier
            .par_iter()
            .map(|(e, g)| expand_one(e, g, table, inf, len))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        frontier.iter().map(|(e, g)| expand_one(e, g, table, inf, len)).collect()
    }
}

/// Exact conjugacy decision with witness.
///
/// `Ok(Some(g))` means `g a g^{-1}` equals `b` in the group; `Ok(None)`
/// means the elements are not conjugate. Exceeding the orbit budget is an
/// error, distinct from a negative answer.
pub fn conjugacy_test(
    a: &BraidWord,
    b: &BraidWord,
    orbit_budget: usize,
) -> Result<Option<BraidWord>> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch { left: a.strands(), right: b.strands() });
    }
    let n = a.strands();
    // Cheap conjugacy invariants first.
    if a.writhe() != b.writhe() || a.permutation().cycle_type() != b.permutation().cycle_type() {
        return Ok(None);
    }
    let (rep_a, g_a) = summit(a);
    let (rep_b, g_b) = summit(b);
    if rep_a.infimum != rep_b.infimum || rep_a.canonical_length() != rep_b.canonical_length() {
        return Ok(None);
    }
    if rep_a == rep_b {
        return Ok(Some(g_b.inverse().concat(&g_a)?));
    }
    let inf = rep_a.infimum;
    let len = rep_a.canonical_length();
    let table = SimpleTable::new(n);
    let mut seen: HashMap<NormalForm, ()> = HashMap::new();
    seen.insert(rep_a.clone(), ());
    let mut frontier: Vec<(NormalForm, BraidWord)> = vec![(rep_a, g_a)];
    let mut queue_storage: VecDeque<(NormalForm, BraidWord)> = VecDeque::new();
    while !frontier.is_empty() {
        let batches = expand_frontier(&frontier, &table, inf, len);
        for batch in batches {
            for (child, g_child) in batch {
                if seen.contains_key(&child) {
                    continue;
                }
                if child == rep_b {
                    return Ok(Some(g_b.inverse().concat(&g_child)?));
                }
                seen.insert(child.clone(), ());
                if seen.len() > orbit_budget {
                    return Err(Error::BudgetExceeded { budget: orbit_budget });
                }
                queue_storage.push_back((child, g_child));
            }
        }
        frontier = queue_storage.drain(..).collect();
    }
    Ok(None)
}

/// Sequential variant of [`conjugacy_test`] regardless of the `parallel`
/// feature; used for benchmarking the two code paths against each other.
pub fn conjugacy_test_seq(
    a: &BraidWord,
    b: &BraidWord,
    orbit_budget: usize,
) -> Result<Option<BraidWord>> {
    // The parallel path differs only inside expand_frontier and yields the
    // same frontier ordering; run the search on one rayon thread when the
    // feature is on.
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool");
        pool.install(|| conjugacy_test(a, b, orbit_budget))
    }
    #[cfg(not(feature = "parallel"))]
    {
        conjugacy_test(a, b, orbit_budget)
    }
}

// ---------------------------------------------------------------------------
// Band recognition
// ---------------------------------------------------------------------------

/// Outcome of testing whether a braid is conjugate to `sigma_1^{+-1}`.
/// Positive and negative carry a conjugator `omega` with
/// `omega sigma_1^{+-1} omega^{-1}` equal to the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BandKind {
    Positive(BraidWord),
    Negative(BraidWord),
    NotABand,
}

/// Decide whether `w` is a band (Garside-exact).
pub fn is_band(w: &BraidWord, orbit_budget: usize) -> Result<BandKind> {
    if w.strands() < 2 {
        return Err(Error::Precondition("bands need at least 2 strands".into()));
    }
    match w.writhe() {
        1 => {
            let s1 = BraidWord::generator(w.strands(), 1, 1)?;
            Ok(match conjugacy_test(&s1, w, orbit_budget)? {
                Some(g) => BandKind::Positive(g),
                None => BandKind::NotABand,
            })
        }
        -1 => {
            let s1 = BraidWord::generator(w.strands(), 1, -1)?;
            Ok(match conjugacy_test(&s1, w, orbit_budget)? {
                Some(g) => BandKind::Negative(g),
                None => BandKind::NotABand,
            })
        }
        _ => Ok(BandKind::NotABand),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn identity_normal_form() {
        let nf = NormalForm::of(&BraidWord::identity(4));
        assert_eq!(nf.infimum(), 0);
        assert!(nf.factors().is_empty());
    }

    #[test]
    fn braid_relation_equal() {
        assert_eq!(NormalForm::of(&w("1 2 1", 3)), NormalForm::of(&w("2 1 2", 3)));
    }

    #[test]
    fn cancellation_equal() {
        assert_eq!(NormalForm::of(&w("1 -1 2", 3)), NormalForm::of(&w("2", 3)));
    }

    #[test]
    fn far_commutation_equal() {
        assert!(words_equal(&w("1 3", 4), &w("3 1", 4)).unwrap());
    }

    #[test]
    fn distinct_generators_not_equal() {
        assert!(!words_equal(&w("1", 3), &w("2", 3)).unwrap());
    }

    #[test]
    fn strand_mismatch_rejected() {
        assert!(words_equal(&w("1", 2), &w("1", 3)).is_err());
    }

    #[test]
    fn delta_round_trip() {
        for n in 2..=6 {
            let d = delta(n);
            assert_eq!(inversions(&d), n * (n - 1) / 2);
            let letters = word_of_simple(&d);
            assert_eq!(letters.len(), inversions(&d));
            let word = BraidWord::new(n, letters).unwrap();
            assert_eq!(word.permutation(), d);
        }
    }

    #[test]
    fn normal_form_to_word_round_trip() {
        for text in ["1 -2 1 -2", "-1 -1 2 1", "1 2 3 -1 -2 -3", "2 -1 2 -1 2"] {
            let b = w(text, 4);
            let nf = NormalForm::of(&b);
            assert_eq!(NormalForm::of(&nf.to_word()), nf, "round trip failed for {text}");
        }
    }

    #[test]
    fn conjugacy_generators_b3() {
        let g = conjugacy_test(&w("1", 3), &w("2", 3), DEFAULT_ORBIT_BUDGET)
            .unwrap()
            .expect("sigma_1 and sigma_2 are conjugate");
        let conj = w("1", 3).conjugate(&g).unwrap();
        assert!(words_equal(&conj, &w("2", 3)).unwrap());
    }

    #[test]
    fn conjugacy_rejects_opposite_signs() {
        assert_eq!(conjugacy_test(&w("1", 2), &w("-1", 2), 1000).unwrap(), None);
    }

    #[test]
    fn conjugacy_constructed_pair() {
        let base = w("1 -2 1 1", 3);
        let g = w("2 1 -2", 3);
        let conj = base.conjugate(&g).unwrap();
        let witness = conjugacy_test(&base, &conj, DEFAULT_ORBIT_BUDGET)
            .unwrap()
            .expect("conjugate by construction");
        assert!(words_equal(&base.conjugate(&witness).unwrap(), &conj).unwrap());
    }

    #[test]
    fn every_generator_is_a_positive_band() {
        for n in 2..=5 {
            for i in 1..n {
                let s = BraidWord::generator(n, i, 1).unwrap();
                match is_band(&s, DEFAULT_ORBIT_BUDGET).unwrap() {
                    BandKind::Positive(omega) => {
                        let s1 = BraidWord::generator(n, 1, 1).unwrap();
                        let band = s1.conjugate(&omega).unwrap();
                        assert!(words_equal(&band, &s).unwrap());
                    }
                    other => panic!("sigma_{i} in B_{n} classified as {other:?}"),
                }
            }
        }
    }

    #[test]
    fn identity_is_not_a_band() {
        assert_eq!(is_band(&BraidWord::identity(3), 1000).unwrap(), BandKind::NotABand);
    }

    #[test]
    fn constructed_negative_band() {
        let omega = w("2 -1 2", 3);
        let band = w("-1", 3).conjugate(&omega).unwrap();
        assert!(matches!(is_band(&band, DEFAULT_ORBIT_BUDGET).unwrap(), BandKind::Negative(_)));
    }

    #[test]
    fn meet_is_maximal_common_divisor() {
        // Brute-force oracle over all simples of B_4.
        let n = 4;
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        permute_into(&mut current, 0, &mut perms);
        let simples: Vec<Permutation> = perms.into_iter().map(Permutation::from_images).collect();
        let divides = |u: &Permutation, p: &Permutation| -> bool {
            let mut u = u.clone();
            let mut p = p.clone();
            loop {
                let k = (0..n - 1).find(|&k| u.image(k) > u.image(k + 1));
                match k {
                    None => return true,
                    Some(k) => {
                        if p.image(k) <= p.image(k + 1) {
                            return false;
                        }
                        u.swap_starts(k);
                        p.swap_starts(k);
                    }
                }
            }
        };
        for a in simples.iter().step_by(3) {
            for b in simples.iter().step_by(2) {
                let m = meet(a, b);
                assert!(divides(&m, a) && divides(&m, b));
                let best = simples
                    .iter()
                    .filter(|u| divides(u, a) && divides(u, b))
                    .map(inversions)
                    .max()
                    .unwrap();
                assert_eq!(inversions(&m), best);
            }
        }
    }
}
