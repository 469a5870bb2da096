//! Quasi-Gorenstein certificates, the linking map and chains of links.

mod certify;
mod chains;
mod formulas;
mod link;

pub use certify::{
    build_linking_module, certify_quasi_gorenstein, regular_sequence_in, LinkingData, QGCert,
    QGVerdict,
};
pub use chains::{
    auto_link, certify_for_link, free_reduction_chain, shift_link_chain, sm_link_ideals,
    split_summand_chain, LinkChain,
};
pub use formulas::{
    cohomology_even_check, cohomology_odd_check, double_link_check, even_hilbert_identity,
    even_shift, is_locally_cm, verify_link_formulas, DoubleLinkReport, LinkFormulaReport,
};
pub use link::{joint_window, link, link_back, LinkStep};
