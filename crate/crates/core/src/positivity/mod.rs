//! Tits signs, the coordinate chain, regions, and the theorem machinery
//! built on them.

pub mod cells;
pub mod chain;
pub mod signs;
pub mod symbolic;
pub mod theorems;

pub use cells::{
    canonicalize_unipotent, cell_element, decompose_nonneg, suffix_region, CellElement, CellPart,
    Decomposition, SuffixRegion, TorusPart,
};
pub use chain::{beta_chain, phi_forward, phi_inverse, ChainStatus, RegionChain};
pub use signs::{
    applicable_moves, apply_move, predicted_twist_ratio, sign_move, suffix_signs, tits_signs,
    SignMove, SuffixSigns, TitsSigns,
};
pub use symbolic::{region_symbolic, verdicts_agree, Region};
pub use theorems::{
    flag_chain_holds, positive_element, region_transport, region_transport_at, sample_region,
    verify_flag, RegionElement,
};
