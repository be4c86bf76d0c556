//! Braid words, Garside normal forms, band presentations and band-rank
//! search, braided banded surfaces with ribbon-singularity accounting,
//! exact piecewise-linear profiles, and the φ-invariant obstruction
//! framework for ruling out ribbonness of braid closures.

pub mod bands;
pub mod braid;
pub mod error;
pub mod garside;
pub mod obstruction;
pub mod profile;
pub mod surface;

pub use bands::{
    band_rank_bracket, band_rank_lower, band_rank_search, band_rank_search_seq, slice_band_bound,
    standard_band, Band, BandPresentation, BandRankBracket,
};
pub use braid::{BraidWord, Permutation};
pub use error::{Error, Result};
pub use garside::{
    conjugacy_test, conjugacy_test_seq, is_band, words_equal, BandKind, NormalForm,
    DEFAULT_ORBIT_BUDGET,
};
pub use obstruction::{
    check_properties, finite_order_writhe_filter, link_invariant, ribbon_obstruction,
    slice_consistency, FiniteOrderVerdict, ObstructionVerdict, PhiInvariant, PhiProperty,
    PropertyReport, PropertyStatus, SliceReport, Verdict,
};
pub use profile::{endpoint_sweep, endpoint_sweep_seq, random_admissible, PLProfile};
pub use surface::{build_surface, ribbon_summary, BandedSurface, RibbonSummary};
