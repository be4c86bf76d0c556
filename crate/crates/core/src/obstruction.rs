//! The abstract φ-invariant obstruction framework: declared-property
//! checking, the derived link invariant `φ(β) - n`, the ribbon threshold
//! test `φ(β) > n - 1`, the slice-consistency sweep over inclusions, and
//! the writhe filter for finite concordance order.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bands::band_rank_search;
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::profile::PLProfile;

/// The properties a candidate invariant may claim. A declaration is a
/// claim to be tested, not a certified fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiProperty {
    /// `φ(β) = φ(β')` whenever `β` and `β'` are conjugate.
    ConjugacyInvariant,
    /// `φ(β±) = φ(β) + 1` for both stabilizations.
    StabilizationAddsOne,
    /// `φ(β)` never exceeds the band count of any presentation of `β`.
    BoundedByBandRank,
    /// Some inclusion `β^(k)` has `φ(β^(k)) ≠ φ(β) + 2k`.
    InclusionNonRigid,
    /// Some representative has `φ(β) > n - 1`.
    ExceedsStrandsMinusOne,
}

impl fmt::Display for PhiProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PhiProperty::ConjugacyInvariant => "conjugacy-invariant",
            PhiProperty::StabilizationAddsOne => "stabilization-adds-one",
            PhiProperty::BoundedByBandRank => "bounded-by-band-rank",
            PhiProperty::InclusionNonRigid => "inclusion-non-rigid",
            PhiProperty::ExceedsStrandsMinusOne => "exceeds-strands-minus-one",
        };
        f.write_str(name)
    }
}

/// A real-valued braid invariant candidate with declared properties.
/// Evaluation is total on valid braid words and exact rational.
#[derive(Clone)]
pub struct PhiInvariant {
    name: String,
    properties: BTreeSet<PhiProperty>,
    eval: Arc<dyn Fn(&BraidWord) -> Rational64 + Send + Sync>,
}

impl fmt::Debug for PhiInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiInvariant")
            .field("name", &self.name)
            .field("properties", &self.properties)
            .finish_non_exhaustive()
    }
}

impl PhiInvariant {
    pub fn new<F>(name: &str, properties: &[PhiProperty], eval: F) -> Self
    where
        F: Fn(&BraidWord) -> Rational64 + Send + Sync + 'static,
    {
        PhiInvariant {
            name: name.to_string(),
            properties: properties.iter().copied().collect(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn declares(&self, p: PhiProperty) -> bool {
        self.properties.contains(&p)
    }

    pub fn declared_properties(&self) -> impl Iterator<Item = PhiProperty> + '_ {
        self.properties.iter().copied()
    }

    pub fn evaluate(&self, w: &BraidWord) -> Rational64 {
        (self.eval)(w)
    }

    fn require(&self, needed: &[PhiProperty]) -> Result<()> {
        let missing: Vec<String> = needed
            .iter()
            .filter(|p| !self.declares(**p))
            .map(|p| p.to_string())
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::MissingProperty { phi: self.name.clone(), missing: missing.join(", ") })
        }
    }

    /// The writhe. Declares stabilization behaviour it does not have:
    /// the negative stabilization subtracts one, so property checking
    /// reports a counterexample.
    pub fn writhe() -> Self {
        PhiInvariant::new(
            "writhe",
            &[
                PhiProperty::ConjugacyInvariant,
                PhiProperty::StabilizationAddsOne,
                PhiProperty::BoundedByBandRank,
            ],
            |w| Rational64::from_integer(w.writhe()),
        )
    }

    /// `|writhe|`: each band contributes `±1` to the writhe, so the
    /// absolute value is bounded by any presentation's band count.
    pub fn abs_writhe() -> Self {
        PhiInvariant::new(
            "abs-writhe",
            &[PhiProperty::ConjugacyInvariant, PhiProperty::BoundedByBandRank],
            |w| Rational64::from_integer(w.writhe().abs()),
        )
    }

    /// `n - c` where `c` counts closure components.
    pub fn strands_minus_components() -> Self {
        PhiInvariant::new(
            "strands-minus-components",
            &[
                PhiProperty::ConjugacyInvariant,
                PhiProperty::StabilizationAddsOne,
                PhiProperty::BoundedByBandRank,
            ],
            |w| Rational64::from_integer(w.strands() as i64 - w.closure_components() as i64),
        )
    }

    /// The profile's gap against the trivial line at `t = 0`, the
    /// filtration-side endpoint. The other endpoint is the writhe side
    /// and is covered separately by [`finite_order_writhe_filter`].
    /// Constant in the braid word: the profile is supplied, not derived.
    pub fn profile_gap(profile: &PLProfile) -> Self {
        let n = Rational64::from_integer(profile.strands() as i64);
        let gap0 = (profile.eval(Rational64::from_integer(0)).expect("0 is in [0, 1]") + n).abs();
        PhiInvariant::new(
            &format!("profile-gap-{}", profile.strands()),
            &[
                PhiProperty::ConjugacyInvariant,
                PhiProperty::StabilizationAddsOne,
                PhiProperty::BoundedByBandRank,
            ],
            move |_| gap0,
        )
    }
}

/// Outcome of testing one declared property against samples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PropertyStatus {
    Pass,
    Fail { counterexample: String },
    Confirmed { witness: String },
    Unchecked { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub phi: String,
    pub samples: usize,
    pub results: Vec<(PhiProperty, PropertyStatus)>,
}

fn check_conjugacy(phi: &PhiInvariant, samples: &[BraidWord], rng: &mut ChaCha8Rng) -> PropertyStatus {
    for w in samples {
        let base = phi.evaluate(w);
        for _ in 0..4 {
            let n = w.strands();
            if n < 2 {
                continue;
            }
            let letters: Vec<i32> = (0..3)
                .map(|_| {
                    let k = rng.gen_range(1..n) as i32;
                    if rng.gen_bool(0.5) { k } else { -k }
                })
                .collect();
            let g = BraidWord::new(n, letters).expect("letters in range");
            let conj = w.conjugate(&g).expect("same strand count");
            if phi.evaluate(&conj) != base {
                return PropertyStatus::Fail {
                    counterexample: format!(
                        "w = \"{}\", g = \"{}\" on {} strands",
                        w.serialize(),
                        g.serialize(),
                        n
                    ),
                };
            }
        }
    }
    PropertyStatus::Pass
}

fn check_stabilization(phi: &PhiInvariant, samples: &[BraidWord]) -> PropertyStatus {
    let one = Rational64::from_integer(1);
    for w in samples {
        let base = phi.evaluate(w);
        for sign in [1i8, -1] {
            if phi.evaluate(&w.stabilize(sign)) != base + one {
                return PropertyStatus::Fail {
                    counterexample: format!(
                        "w = \"{}\" on {} strands, stabilization sign {sign:+}",
                        w.serialize(),
                        w.strands()
                    ),
                };
            }
        }
    }
    PropertyStatus::Pass
}

fn check_band_rank_bound(phi: &PhiInvariant, samples: &[BraidWord]) -> PropertyStatus {
    let mut witnessed = 0usize;
    for w in samples {
        let Some(p) = band_rank_search(w, 4, 2) else { continue };
        witnessed += 1;
        if phi.evaluate(w) > Rational64::from_integer(p.band_count() as i64) {
            return PropertyStatus::Fail {
                counterexample: format!(
                    "w = \"{}\" on {} strands has a {}-band presentation",
                    w.serialize(),
                    w.strands(),
                    p.band_count()
                ),
            };
        }
    }
    if witnessed == 0 {
        PropertyStatus::Unchecked { reason: "no sample produced a search witness".into() }
    } else {
        PropertyStatus::Pass
    }
}

fn check_inclusion(phi: &PhiInvariant, samples: &[BraidWord]) -> PropertyStatus {
    for w in samples {
        let base = phi.evaluate(w);
        for k in 1..=2usize {
            let expected = base + Rational64::from_integer(2 * k as i64);
            if phi.evaluate(&w.include(k)) != expected {
                return PropertyStatus::Confirmed {
                    witness: format!(
                        "w = \"{}\" on {} strands, inclusion k = {k}",
                        w.serialize(),
                        w.strands()
                    ),
                };
            }
        }
    }
    PropertyStatus::Unchecked { reason: "existential, not refutable by sampling".into() }
}

fn check_exceeds(phi: &PhiInvariant, samples: &[BraidWord]) -> PropertyStatus {
    for w in samples {
        if phi.evaluate(w) > Rational64::from_integer(w.strands() as i64 - 1) {
            return PropertyStatus::Confirmed {
                witness: format!("w = \"{}\" on {} strands", w.serialize(), w.strands()),
            };
        }
    }
    PropertyStatus::Unchecked { reason: "existential, witness braid required".into() }
}

/// Test each declared property of `phi` against the samples. Existential
/// properties are only ever confirmed, never refuted, by sampling.
pub fn check_properties(phi: &PhiInvariant, samples: &[BraidWord], seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results = phi
        .declared_properties()
        .map(|p| {
            let status = match p {
                PhiProperty::ConjugacyInvariant => check_conjugacy(phi, samples, &mut rng),
                PhiProperty::StabilizationAddsOne => check_stabilization(phi, samples),
                PhiProperty::BoundedByBandRank => check_band_rank_bound(phi, samples),
                PhiProperty::InclusionNonRigid => check_inclusion(phi, samples),
                PhiProperty::ExceedsStrandsMinusOne => check_exceeds(phi, samples),
            };
            (p, status)
        })
        .collect();
    PropertyReport { phi: phi.name().to_string(), samples: samples.len(), results }
}

/// `φ(β) - n`, well defined on links once conjugacy and stabilization
/// behaviour are declared.
pub fn link_invariant(phi: &PhiInvariant, w: &BraidWord) -> Result<Rational64> {
    phi.require(&[PhiProperty::ConjugacyInvariant, PhiProperty::StabilizationAddsOne])?;
    Ok(phi.evaluate(w) - Rational64::from_integer(w.strands() as i64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotRibbon,
    NoObstruction,
}

/// Result of the threshold test, with the trace of what fired.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionVerdict {
    #[serde(serialize_with = "crate::braid::serialize_word")]
    pub braid: BraidWord,
    pub n: usize,
    pub phi: String,
    #[serde(serialize_with = "serialize_rational")]
    pub phi_value: Rational64,
    #[serde(serialize_with = "serialize_rational")]
    pub link_invariant: Rational64,
    #[serde(serialize_with = "serialize_rational")]
    pub threshold: Rational64,
    pub verdict: Verdict,
    pub evidence: Vec<String>,
}

pub(crate) fn serialize_rational<S: serde::Serializer>(
    r: &Rational64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [*r.numer(), *r.denom()].serialize(s)
}

/// The threshold test: a knot closure with `φ(β) > n - 1` cannot be
/// ribbon, because a ribbon closure admits an `(n - 1)`-band
/// presentation and `φ` is bounded by witnessed band counts.
pub fn ribbon_obstruction(phi: &PhiInvariant, w: &BraidWord) -> Result<ObstructionVerdict> {
    phi.require(&[
        PhiProperty::ConjugacyInvariant,
        PhiProperty::StabilizationAddsOne,
        PhiProperty::BoundedByBandRank,
    ])?;
    let components = w.closure_components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let n = w.strands();
    let phi_value = phi.evaluate(w);
    let threshold = Rational64::from_integer(n as i64 - 1);
    let (verdict, evidence) = if phi_value > threshold {
        (
            Verdict::NotRibbon,
            vec![
                format!("{} = {} exceeds n - 1 = {}", phi.name(), phi_value, threshold),
                "a ribbon closure would admit an (n - 1)-band presentation, \
                 contradicting the band-rank bound on the invariant"
                    .to_string(),
                "verdict holds for the closure, not only this representative".to_string(),
            ],
        )
    } else {
        (
            Verdict::NoObstruction,
            vec![
                format!("{} = {} does not exceed n - 1 = {}", phi.name(), phi_value, threshold),
                "no obstruction from this representative; other representatives \
                 of the same knot may still obstruct"
                    .to_string(),
            ],
        )
    };
    Ok(ObstructionVerdict {
        braid: w.clone(),
        n,
        phi: phi.name().to_string(),
        phi_value,
        link_invariant: phi_value - Rational64::from_integer(n as i64),
        threshold,
        verdict,
        evidence,
    })
}

/// One row of the slice-consistency sweep at inclusion depth `q`.
#[derive(Debug, Clone, Serialize)]
pub struct SliceRow {
    pub q: usize,
    pub strands: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub phi_value: Rational64,
    pub bound: i64,
    #[serde(serialize_with = "serialize_rational")]
    pub margin: Rational64,
    pub exceeds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    #[serde(serialize_with = "crate::braid::serialize_word")]
    pub braid: BraidWord,
    pub phi: String,
    pub rows: Vec<SliceRow>,
    pub not_slice: bool,
}

/// Evaluate `phi` on the inclusions `β^(q)` for `q = 0..=q_max` against
/// the slice band bound `(n - 1) + 2q`. Any exceeding row certifies the
/// closure is not slice.
pub fn slice_consistency(phi: &PhiInvariant, w: &BraidWord, q_max: usize) -> Result<SliceReport> {
    phi.require(&[PhiProperty::BoundedByBandRank])?;
    let n = w.strands();
    let rows: Vec<SliceRow> = (0..=q_max)
        .map(|q| {
            let included = w.include(q);
            let phi_value = phi.evaluate(&included);
            let bound = (n as i64 - 1) + 2 * q as i64;
            SliceRow {
                q,
                strands: included.strands(),
                phi_value,
                bound,
                margin: Rational64::from_integer(bound) - phi_value,
                exceeds: phi_value > Rational64::from_integer(bound),
            }
        })
        .collect();
    let not_slice = rows.iter().any(|r| r.exceeds);
    Ok(SliceReport { braid: w.clone(), phi: phi.name().to_string(), rows, not_slice })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteOrderVerdict {
    PossiblyFiniteOrder,
    InfiniteOrder,
}

/// Writhe filter: a knot of finite concordance order has a representative
/// with `|writhe| ≤ n - 1`, so `|writhe| > n - 1` on this representative
/// rules finite order out for this presentation. Per representative only.
pub fn finite_order_writhe_filter(w: &BraidWord) -> Result<FiniteOrderVerdict> {
    let components = w.closure_components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    if w.writhe().abs() > w.strands() as i64 - 1 {
        Ok(FiniteOrderVerdict::InfiniteOrder)
    } else {
        Ok(FiniteOrderVerdict::PossiblyFiniteOrder)
    }
}
