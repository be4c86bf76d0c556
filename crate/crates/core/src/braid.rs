//! Braid words and the elementary group operations on them.
//!
//! Words are read left to right; a positive letter `k` is the Artin
//! generator crossing the strands in positions `k` and `k+1`, a negative
//! letter is its inverse. The strand count is explicit data on every
//! word: the empty word on `n` strands and the empty word on `n + k`
//! strands are distinct objects.

use crate::error::{Error, Result};

/// Serialize a word as its signed-integer string form, for use with
/// `#[serde(serialize_with = ...)]` on report fields.
pub fn serialize_word<S: serde::Serializer>(
    w: &BraidWord,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.serialize())
}

/// A braid word: a strand count and a sequence of signed generator
/// indices (`k > 0` for the positive generator, `k < 0` for its inverse).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// The identity braid on `n` strands.
    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 1, "strand count must be positive");
        BraidWord { strands, letters: Vec::new() }
    }

    /// Build a word from signed letters, checking every index against the
    /// strand count.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        assert!(strands >= 1, "strand count must be positive");
        for &l in &letters {
            let idx = l.unsigned_abs() as usize;
            if l == 0 || idx > strands.saturating_sub(1) {
                return Err(Error::GeneratorOutOfRange { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// The single generator `sigma_i` (1-based) on `n` strands.
    pub fn generator(strands: usize, i: usize, sign: i8) -> Result<Self> {
        let letter = if sign >= 0 { i as i32 } else { -(i as i32) };
        BraidWord::new(strands, vec![letter])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parse the whitespace-separated signed-integer grammar.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad token `{tok}`")))?;
            if l == 0 {
                return Err(Error::Parse("generator index 0 is not allowed".into()));
            }
            letters.push(l);
        }
        BraidWord::new(strands, letters)
    }

    /// Canonical text form: letters joined by single spaces.
    pub fn serialize(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Delete adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Inverse word: reversed letters with flipped signs, freely reduced.
    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|l| -l).collect();
        BraidWord { strands: self.strands, letters }
    }

    /// Concatenation `self` then `other`, freely reduced.
    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters }.free_reduce())
    }

    /// `g * self * g^{-1}`, freely reduced.
    pub fn conjugate(&self, g: &BraidWord) -> Result<Self> {
        g.concat(self)?.concat(&g.inverse())
    }

    /// Exponent sum of the word.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Image of the word under the projection to the symmetric group.
    /// Letters are applied in word order; signs are ignored.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            p.apply_adjacent(l.unsigned_abs() as usize - 1);
        }
        p
    }

    /// Number of components of the braid closure.
    pub fn closure_components(&self) -> usize {
        self.permutation().cycle_count()
    }

    /// Markov stabilization: include into `B_{n+1}` and append `sigma_n^{sign}`.
    pub fn stabilize(&self, sign: i8) -> Self {
        let n = self.strands;
        let mut letters = self.letters.clone();
        let l = n as i32;
        letters.push(if sign >= 0 { l } else { -l });
        BraidWord { strands: n + 1, letters }
    }

    /// Adjoin `k` trivial strands on the right; letters are unchanged.
    pub fn include(&self, k: usize) -> Self {
        BraidWord { strands: self.strands + k, letters: self.letters.clone() }
    }
}

/// A permutation of `{1, ..., n}`, stored 0-based as `images[start] = end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            assert!(v < images.len() && !seen[v], "images must be a bijection");
            seen[v] = true;
        }
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based position.
    pub fn image(&self, start: usize) -> usize {
        self.images[start]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Swap the strands currently ending at positions `k` and `k + 1`
    /// (0-based), i.e. append the transposition to the word.
    pub fn apply_adjacent(&mut self, k: usize) {
        let a = self.images.iter().position(|&v| v == k).unwrap();
        let b = self.images.iter().position(|&v| v == k + 1).unwrap();
        self.images.swap(a, b);
    }

    /// Swap the images of starting positions `k` and `k + 1` (0-based),
    /// i.e. strip or prepend the transposition at the front of the word.
    pub fn swap_starts(&mut self, k: usize) {
        self.images.swap(k, k + 1);
    }

    /// Composition in word order: `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation { images: self.images.iter().map(|&v| other.images[v]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = 0;
        for start in 0..self.images.len() {
            if !seen[start] {
                cycles += 1;
                let mut v = start;
                while !seen[v] {
                    seen[v] = true;
                    v = self.images[v];
                }
            }
        }
        cycles
    }

    /// Sorted multiset of cycle lengths; a conjugacy invariant.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lens = Vec::new();
        for start in 0..self.images.len() {
            if !seen[start] {
                let mut v = start;
                let mut len = 0;
                while !seen[v] {
                    seen[v] = true;
                    v = self.images[v];
                    len += 1;
                }
                lens.push(len);
            }
        }
        lens.sort_unstable();
        lens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn parse_reads_left_to_right() {
        let b = w("1 -2 1", 3);
        assert_eq!(b.letters(), &[1, -2, 1]);
        assert_eq!(b.serialize(), "1 -2 1");
    }

    #[test]
    fn parse_empty_is_identity() {
        let b = w("", 4);
        assert!(b.is_empty());
        assert_eq!(b, BraidWord::identity(4));
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(matches!(
            BraidWord::parse("3", 3),
            Err(Error::GeneratorOutOfRange { index: 3, strands: 3 })
        ));
        assert!(BraidWord::parse("0", 3).is_err());
        assert!(BraidWord::parse("x", 3).is_err());
    }

    #[test]
    fn free_reduce_cases() {
        assert!(w("1 -1", 2).free_reduce().is_empty());
        assert_eq!(w("1 2 -2 1", 3).free_reduce(), w("1 1", 3));
        assert_eq!(w("1 2", 3).free_reduce(), w("1 2", 3));
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w("1 -2", 3).inverse(), w("2 -1", 3));
    }

    #[test]
    fn conjugate_by_identity() {
        let s1 = w("1", 3);
        assert_eq!(s1.conjugate(&BraidWord::identity(3)).unwrap(), s1);
    }

    #[test]
    fn concat_rejects_strand_mismatch() {
        assert!(w("1", 2).concat(&w("1", 3)).is_err());
    }

    #[test]
    fn writhe_cases() {
        assert_eq!(w("1 2 3", 4).writhe(), 3);
        assert_eq!(BraidWord::identity(5).writhe(), 0);
        assert_eq!(w("1 -2", 3).writhe(), 0);
    }

    #[test]
    fn permutation_single_crossing() {
        let p = w("1", 2).permutation();
        assert_eq!(p.images(), &[1, 0]);
    }

    #[test]
    fn permutation_fig2_calibration() {
        // omega = s3^{-1} s2 in B_4; the image of 2 under pi(omega^{-1}) is 4.
        let omega = w("-3 2", 4);
        let p = omega.inverse().permutation();
        assert_eq!(p.image(1), 3);
    }

    #[test]
    fn permutation_is_word_order_homomorphism() {
        let a = w("1 -2", 3);
        let b = w("2 1", 3);
        let ab = a.concat(&b).unwrap();
        assert_eq!(ab.permutation(), a.permutation().compose(&b.permutation()));
    }

    #[test]
    fn closure_component_cases() {
        assert_eq!(BraidWord::identity(4).closure_components(), 4);
        assert_eq!(w("1 2", 3).closure_components(), 1);
        assert_eq!(w("1 1", 2).closure_components(), 2);
    }

    #[test]
    fn stabilize_cases() {
        let b = BraidWord::identity(2).stabilize(1);
        assert_eq!(b, w("2", 3));
        let c = w("1 1 1", 2);
        assert_eq!(c.stabilize(-1).writhe(), c.writhe() - 1);
        assert_eq!(c.stabilize(1).closure_components(), c.closure_components());
    }

    #[test]
    fn include_cases() {
        let b = w("1", 2);
        assert_eq!(b.include(1), w("1", 3));
        assert_eq!(b.include(0), b);
        assert_eq!(b.include(3).closure_components(), b.closure_components() + 3);
    }
}
