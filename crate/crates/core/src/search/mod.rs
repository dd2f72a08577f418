//! Canonical forms, isomorph-free classification and exact extremal
//! searches.

mod canon;
mod classify;
mod extremal;

pub use canon::{
    apply_isometry, are_equivalent, canonical_form, canonical_labeling, CanonicalLabeling,
};
pub use classify::{
    classify_extended_unitrades, ClassFlags, Classification, EquivalenceClass, SearchConfig,
    SUPPORTED_LENGTHS,
};
pub use extremal::{
    max_packing_size, max_twofold_packing_size, min_extended_unitrade_size, PackingSearch,
    PackingSearchResult,
};
