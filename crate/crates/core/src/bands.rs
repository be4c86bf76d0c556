//! Band presentations and band-rank bracketing.
//!
//! A band is a chosen conjugator word `omega` together with a sign; as a
//! group element it is `omega sigma_1^{+-1} omega^{-1}`. A band
//! presentation is an ordered product of bands. The band rank of a braid
//! is the minimal number of bands in any presentation; it is bracketed
//! here by an exact lower bound (strand/component count and writhe) and a
//! witnessed upper bound found by exhaustive bounded search.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::garside::{self, NormalForm};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A band: strand count, explicit conjugator word, and sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    strands: usize,
    conjugator: BraidWord,
    sign: i8,
}

impl Band {
    pub fn new(conjugator: BraidWord, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "band sign must be +-1");
        Band { strands: conjugator.strands(), conjugator, sign }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn conjugator(&self) -> &BraidWord {
        &self.conjugator
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// The freely reduced word `omega sigma_1^{sign} omega^{-1}`.
    pub fn word(&self) -> BraidWord {
        let core = BraidWord::generator(self.strands, 1, self.sign)
            .expect("sigma_1 exists for strands >= 2");
        core.conjugate(&self.conjugator).expect("same strand count")
    }
}

/// The band equal to `sigma_i^{sign}` via the conjugating word
/// `(sigma_{i-1} sigma_i)(sigma_{i-2} sigma_{i-1}) ... (sigma_1 sigma_2)`.
pub fn standard_band(i: usize, strands: usize, sign: i8) -> Result<Band> {
    if i == 0 || i > strands.saturating_sub(1) {
        return Err(Error::GeneratorOutOfRange { index: i as i32, strands });
    }
    let mut letters = Vec::new();
    for j in (1..i).rev() {
        letters.push(j as i32);
        letters.push((j + 1) as i32);
    }
    Ok(Band::new(BraidWord::new(strands, letters)?, sign))
}

/// An ordered product of bands on a common strand count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct BandPresentation {
    strands: usize,
    bands: Vec<Band>,
}

impl BandPresentation {
    pub fn new(strands: usize, bands: Vec<Band>) -> Result<Self> {
        for b in &bands {
            if b.strands() != strands {
                return Err(Error::StrandMismatch { left: strands, right: b.strands() });
            }
        }
        Ok(BandPresentation { strands, bands })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    /// Left-to-right product of the band words, freely reduced.
    pub fn product(&self) -> BraidWord {
        let mut out = BraidWord::identity(self.strands);
        for b in &self.bands {
            out = out.concat(&b.word()).expect("same strand count");
        }
        out
    }

    /// True iff the product equals `target` in the group.
    pub fn validates(&self, target: &BraidWord) -> Result<bool> {
        garside::words_equal(&self.product(), target)
    }
}

#[derive(Serialize, Deserialize)]
struct BandSpecJson {
    sign: i8,
    conjugator: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    strands: usize,
    bands: Vec<BandSpecJson>,
}

impl From<BandPresentation> for PresentationJson {
    fn from(p: BandPresentation) -> Self {
        PresentationJson {
            strands: p.strands,
            bands: p
                .bands
                .into_iter()
                .map(|b| BandSpecJson { sign: b.sign, conjugator: b.conjugator.letters().to_vec() })
                .collect(),
        }
    }
}

impl TryFrom<PresentationJson> for BandPresentation {
    type Error = Error;

    fn try_from(j: PresentationJson) -> Result<Self> {
        if j.strands < 2 && !j.bands.is_empty() {
            return Err(Error::Precondition("bands need at least 2 strands".into()));
        }
        let bands = j
            .bands
            .into_iter()
            .map(|b| {
                if b.sign != 1 && b.sign != -1 {
                    return Err(Error::Precondition(format!("band sign {} is not +-1", b.sign)));
                }
                Ok(Band::new(BraidWord::new(j.strands, b.conjugator)?, b.sign))
            })
            .collect::<Result<Vec<_>>>()?;
        BandPresentation::new(j.strands, bands)
    }
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

/// Exact lower bound on the band rank: every band changes the writhe by
/// one, and a presentation with fewer than `strands - components` bands
/// would disconnect the closure.
pub fn band_rank_lower(w: &BraidWord) -> usize {
    let component_bound = w.strands() - w.closure_components();
    let writhe_bound = w.writhe().unsigned_abs() as usize;
    component_bound.max(writhe_bound)
}

/// The slice bound `rk_{n+q}(beta^{(q)}) <= (n - 1) + 2q`.
pub fn slice_band_bound(n: usize, q: usize) -> usize {
    assert!(n >= 1);
    (n - 1) + 2 * q
}

/// The presentation that writes each letter as a standard band; witnesses
/// the trivial upper bound `rk <= word length`.
pub fn letters_presentation(w: &BraidWord) -> BandPresentation {
    let bands = w
        .letters()
        .iter()
        .map(|&l| {
            standard_band(l.unsigned_abs() as usize, w.strands(), l.signum() as i8)
                .expect("letter index in range")
        })
        .collect();
    BandPresentation::new(w.strands(), bands).expect("uniform strand count")
}

// ---------------------------------------------------------------------------
// Exhaustive bounded search
// ---------------------------------------------------------------------------

struct BandEntry {
    band: Band,
    word: BraidWord,
    /// The band's permutation, always a transposition.
    perm: Permutation,
}

/// Freely reduced conjugator words in length-lexicographic order, letters
/// ordered `1 < -1 < 2 < -2 < ...`.
fn conjugators(strands: usize, max_len: usize) -> Vec<BraidWord> {
    let mut alphabet = Vec::new();
    for i in 1..strands as i32 {
        alphabet.push(i);
        alphabet.push(-i);
    }
    let mut out = vec![BraidWord::identity(strands)];
    let mut level: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for word in &level {
            for &l in &alphabet {
                if word.last() == Some(&-l) {
                    continue;
                }
                let mut extended = word.clone();
                extended.push(l);
                next.push(extended);
            }
        }
        for letters in &next {
            out.push(BraidWord::new(strands, letters.clone()).expect("letters in range"));
        }
        level = next;
    }
    out
}

/// Bands deduplicated by group element, keeping the earliest conjugator in
/// the canonical order (positive sign before negative at equal conjugator).
fn distinct_bands(strands: usize, max_conjugator_length: usize) -> Vec<BandEntry> {
    let omegas = conjugators(strands, max_conjugator_length);
    let candidates: Vec<(Band, BraidWord, NormalForm)> = {
        let make = |omega: &BraidWord| -> Vec<(Band, BraidWord, NormalForm)> {
            [1i8, -1i8]
                .iter()
                .map(|&sign| {
                    let band = Band::new(omega.clone(), sign);
                    let word = band.word();
                    let nf = NormalForm::of(&word);
                    (band, word, nf)
                })
                .collect()
        };
        #[cfg(feature = "parallel")]
        {
            omegas.par_iter().flat_map_iter(make).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            omegas.iter().flat_map(make).collect()
        }
    };
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let mut out = Vec::new();
    for (band, word, nf) in candidates {
        if seen.insert(nf) {
            let perm = word.permutation();
            out.push(BandEntry { band, word, perm });
        }
    }
    out
}

/// Can `perm` be written as a product of exactly `count` transpositions,
/// and can `writhe` be a sum of exactly `count` signs?
fn feasible(strands: usize, perm: &Permutation, writhe: i64, count: usize) -> bool {
    let t = strands - perm.cycle_count();
    let c = count as i64;
    t <= count
        && (count - t) % 2 == 0
        && writhe.abs() <= c
        && (writhe - c) % 2 == 0
}

struct SearchCtx<'a> {
    entries: &'a [BandEntry],
    index: &'a HashMap<NormalForm, usize>,
}

fn dfs(
    ctx: &SearchCtx<'_>,
    remaining: &BraidWord,
    remaining_nf: &NormalForm,
    rem: usize,
    failed: &mut HashSet<(NormalForm, usize)>,
    acc: &mut Vec<usize>,
) -> bool {
    if rem == 0 {
        return remaining_nf.is_identity();
    }
    if rem == 1 {
        if let Some(&idx) = ctx.index.get(remaining_nf) {
            acc.push(idx);
            return true;
        }
        return false;
    }
    if failed.contains(&(remaining_nf.clone(), rem)) {
        return false;
    }
    let strands = remaining.strands();
    let perm = remaining.permutation();
    let writhe = remaining.writhe();
    for (idx, entry) in ctx.entries.iter().enumerate() {
        let next_perm = entry.perm.compose(&perm);
        let next_writhe = writhe - entry.band.sign() as i64;
        if !feasible(strands, &next_perm, next_writhe, rem - 1) {
            continue;
        }
        let next = entry.word.inverse().concat(remaining).expect("same strand count");
        let next_nf = NormalForm::of(&next);
        acc.push(idx);
        if dfs(ctx, &next, &next_nf, rem - 1, failed, acc) {
            return true;
        }
        acc.pop();
    }
    failed.insert((remaining_nf.clone(), rem));
    false
}

fn search_at_count(
    ctx: &SearchCtx<'_>,
    w: &BraidWord,
    w_nf: &NormalForm,
    count: usize,
) -> Option<Vec<usize>> {
    let strands = w.strands();
    if !feasible(strands, &w.permutation(), w.writhe(), count) {
        return None;
    }
    if count <= 1 {
        let mut acc = Vec::new();
        let mut failed = HashSet::new();
        return dfs(ctx, w, w_nf, count, &mut failed, &mut acc).then_some(acc);
    }
    // Fan out over the first band; each branch is a deterministic
    // sequential DFS, and the earliest successful branch wins.
    let perm = w.permutation();
    let writhe = w.writhe();
    let branch = |(idx, entry): (usize, &BandEntry)| -> Option<Vec<usize>> {
        let next_perm = entry.perm.compose(&perm);
        let next_writhe = writhe - entry.band.sign() as i64;
        if !feasible(strands, &next_perm, next_writhe, count - 1) {
            return None;
        }
        let next = entry.word.inverse().concat(w).expect("same strand count");
        let next_nf = NormalForm::of(&next);
        let mut acc = vec![idx];
        let mut failed = HashSet::new();
        dfs(ctx, &next, &next_nf, count - 1, &mut failed, &mut acc).then_some(acc)
    };
    #[cfg(feature = "parallel")]
    {
        ctx.entries.par_iter().enumerate().find_map_first(branch)
    }
    #[cfg(not(feature = "parallel"))]
    {
        ctx.entries.iter().enumerate().find_map(branch)
    }
}

/// Exhaustive bounded search for a minimal presentation of `w`.
///
/// Band counts are tried in increasing order starting from the exact
/// lower bound, so a returned presentation has minimal band count among
/// all presentations within the budgets. `None` means no presentation
/// exists with at most `max_bands` bands and conjugators of length at
/// most `max_conjugator_length`.
pub fn band_rank_search(
    w: &BraidWord,
    max_bands: usize,
    max_conjugator_length: usize,
) -> Option<BandPresentation> {
    let w = w.free_reduce();
    let lower = band_rank_lower(&w);
    if lower > max_bands {
        return None;
    }
    if w.strands() < 2 {
        return NormalForm::of(&w)
            .is_identity()
            .then(|| BandPresentation::new(w.strands(), Vec::new()).expect("empty"));
    }
    let entries = distinct_bands(w.strands(), max_conjugator_length);
    let index: HashMap<NormalForm, usize> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (NormalForm::of(&e.word), i))
        .collect();
    let ctx = SearchCtx { entries: &entries, index: &index };
    let w_nf = NormalForm::of(&w);
    for count in lower..=max_bands {
        if let Some(picks) = search_at_count(&ctx, &w, &w_nf, count) {
            let bands = picks.iter().map(|&i| entries[i].band.clone()).collect();
            let p = BandPresentation::new(w.strands(), bands).expect("uniform strands");
            debug_assert!(p.validates(&w).unwrap());
            return Some(p);
        }
    }
    None
}

/// Sequential variant of [`band_rank_search`] for benchmarking.
pub fn band_rank_search_seq(
    w: &BraidWord,
    max_bands: usize,
    max_conjugator_length: usize,
) -> Option<BandPresentation> {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool");
        pool.install(|| band_rank_search(w, max_bands, max_conjugator_length))
    }
    #[cfg(not(feature = "parallel"))]
    {
        band_rank_search(w, max_bands, max_conjugator_length)
    }
}

/// A bracket on the band rank: exact lower bound, best witnessed upper
/// bound, and the trivial letter-by-letter witness.
#[derive(Debug, Clone)]
pub struct BandRankBracket {
    pub lower: usize,
    pub witness: Option<BandPresentation>,
    pub trivial_upper: usize,
    pub search_exhausted: bool,
}

impl BandRankBracket {
    /// The bounds meet, so the band rank is known exactly.
    pub fn exact(&self) -> Option<usize> {
        match &self.witness {
            Some(p) if p.band_count() == self.lower => Some(self.lower),
            _ => match self.lower {
                l if l == self.trivial_upper => Some(l),
                _ => None,
            },
        }
    }
}

/// Bracket the band rank of `w` within the given budgets. The trivial
/// upper bound (each letter is a band) is always reported so that budget
/// exhaustion still yields a finite answer.
pub fn band_rank_bracket(
    w: &BraidWord,
    max_bands: usize,
    max_conjugator_length: usize,
) -> BandRankBracket {
    let reduced = w.free_reduce();
    let witness = band_rank_search(&reduced, max_bands, max_conjugator_length);
    BandRankBracket {
        lower: band_rank_lower(&reduced),
        search_exhausted: witness.is_none(),
        trivial_upper: reduced.len(),
        witness,
    }
}
