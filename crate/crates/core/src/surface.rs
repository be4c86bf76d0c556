//! Braided, banded surfaces: disks, half-twisted bands, attachment data,
//! and the ribbon-singularity ledger.
//!
//! Each band starts attached to disk 1 with its moving end at strand
//! position 2. The conjugator word is read backwards one letter at a
//! time; a letter adjacent to the moving end carries it across the
//! neighbouring strand, and letters not adjacent to the end contribute
//! nothing. Positive letters cross the lower-indexed strand over the
//! higher-indexed one. While consecutive crossings keep the same sign the
//! band stays on one side of the disks it passes; a sign change between
//! consecutive moves forces the band through the disk at the position
//! where it switched sides, producing one ribbon singularity there. The
//! final move terminates on the boundary of the target disk and is the
//! attachment. The convention is calibrated two ways: the single-band
//! presentation with conjugator `-3 2` in B_4 attaches to disks 1 and 4
//! and pierces disk 3 exactly once, and the letter-by-letter standard
//! presentation of a positive word yields an imbedded fence surface.

use serde::Serialize;

use crate::bands::BandPresentation;
use crate::braid::BraidWord;

/// One trajectory step of a moving band end: the position it moved to
/// and the sign of the crossing letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrajectoryStep {
    pub position: usize,
    pub crossing_sign: i8,
}

/// Attachment and singularity data for a single band (1-based disks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandGeometry {
    pub index: usize,
    pub attach_start: usize,
    pub attach_end: usize,
    pub trajectory: Vec<TrajectoryStep>,
    /// Disks pierced, with multiplicity, in trajectory order.
    pub singularities: Vec<usize>,
    pub self_intersections: usize,
}

/// The braided, banded surface of a band presentation.
#[derive(Debug, Clone)]
pub struct BandedSurface {
    strands: usize,
    bands: Vec<BandGeometry>,
    source: BandPresentation,
}

impl BandedSurface {
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bands(&self) -> &[BandGeometry] {
        &self.bands
    }

    pub fn source(&self) -> &BandPresentation {
        &self.source
    }

    /// `n - c`: disks minus bands.
    pub fn euler_characteristic(&self) -> i64 {
        self.strands as i64 - self.bands.len() as i64
    }

    /// The surface's boundary braid, i.e. the presentation product.
    pub fn boundary(&self) -> BraidWord {
        self.source.product()
    }

    pub fn boundary_components(&self) -> usize {
        self.boundary().closure_components()
    }
}

fn band_geometry(index: usize, conjugator: &BraidWord) -> BandGeometry {
    // Moving end starts at position 2 (1-based); the fixed end sits on D_1.
    let mut position = 2usize;
    let mut trajectory = Vec::new();
    let mut corridors = Vec::new();
    for &letter in conjugator.letters().iter().rev() {
        let k = letter.unsigned_abs() as usize; // crosses positions k, k+1
        if position == k {
            position = k + 1;
        } else if position == k + 1 {
            position = k;
        } else {
            continue;
        }
        trajectory.push(TrajectoryStep { position, crossing_sign: letter.signum() as i8 });
        corridors.push(k);
    }
    // A sign change between consecutive moves pierces the disk where the
    // band switched sides; the last move is the attachment onto D_{pi_j}.
    let singularities: Vec<usize> = trajectory
        .windows(2)
        .filter(|pair| pair[0].crossing_sign != pair[1].crossing_sign)
        .map(|pair| pair[0].position)
        .collect();
    // A pair of moves through the same corridor lays the band across
    // itself once.
    let mut self_intersections = 0;
    for i in 0..corridors.len() {
        for j in i + 1..corridors.len() {
            if corridors[i] == corridors[j] {
                self_intersections += 1;
            }
        }
    }
    let attach_end = trajectory.last().map_or(2, |s| s.position);
    debug_assert_eq!(attach_end, conjugator.inverse().permutation().image(1) + 1);
    BandGeometry {
        index,
        attach_start: 1,
        attach_end,
        trajectory,
        singularities,
        self_intersections,
    }
}

/// Build the braided, banded surface of a band presentation.
pub fn build_surface(p: &BandPresentation) -> BandedSurface {
    let bands = p
        .bands()
        .iter()
        .enumerate()
        .map(|(i, b)| band_geometry(i + 1, b.conjugator()))
        .collect();
    BandedSurface { strands: p.strands(), bands, source: p.clone() }
}

/// Per-band report row in the summary JSON.
#[derive(Debug, Clone, Serialize)]
pub struct BandSummary {
    pub index: usize,
    pub attach: [usize; 2],
    pub singularities: Vec<usize>,
    pub self_intersections: usize,
}

/// Aggregated surface report with a stable field order.
#[derive(Debug, Clone, Serialize)]
pub struct RibbonSummary {
    pub strands: usize,
    pub bands: Vec<BandSummary>,
    pub total_singularities: usize,
    pub euler_characteristic: i64,
    pub boundary_components: usize,
}

/// Aggregate attachment pairs, singularity counts, Euler characteristic,
/// and boundary data.
pub fn ribbon_summary(s: &BandedSurface) -> RibbonSummary {
    let bands: Vec<BandSummary> = s
        .bands()
        .iter()
        .map(|b| BandSummary {
            index: b.index,
            attach: [b.attach_start, b.attach_end],
            singularities: b.singularities.clone(),
            self_intersections: b.self_intersections,
        })
        .collect();
    let total_singularities = bands.iter().map(|b| b.singularities.len()).sum();
    RibbonSummary {
        strands: s.strands(),
        bands,
        total_singularities,
        euler_characteristic: s.euler_characteristic(),
        boundary_components: s.boundary_components(),
    }
}
