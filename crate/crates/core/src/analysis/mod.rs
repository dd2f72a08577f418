//! Verification predicates and distributions.

mod distribution;
mod packing;
mod profile;
mod unitrade;

pub use distribution::{
    distance_data, distance_data_with, inverse_macwilliams, krawtchouk, krawtchouk_table,
    macwilliams_transform, weight_distribution, DistanceData,
};
pub use packing::{verify_packing, verify_packing_with, PackingReport, Scan};
pub use profile::{pair_profile, PairProfile};
pub use unitrade::{
    average_distance, has_constant_weight_translate, inner_radius, is_antipodal,
    is_bipartite_unitrade, is_extended_unitrade, is_unitrade, oa_strength1_check,
    primary_components, reducibility_certificate, Bipartiteness, Reducibility, UnitradeCheck,
};

pub(crate) use packing::{index_word, word_index};
