//! Closed-form sides of every identity the crate verifies, the comparison
//! plumbing that turns two series into a pass/fail report, and the Bailey
//! pair machinery.

mod bailey;
mod checks;
mod gf;
mod multisum;
mod report;

pub use bailey::{bailey_check, bailey_transform, check_prop_51, crank_pair, rank_pair, BaileyPair};
pub use checks::{check_fg, check_sstar};
pub use gf::{
    check_bivariate_identity_32, check_bivariate_identity_35, check_degeneration,
    check_stabilization, check_theorem_22, check_theorem_26, classical_gf_eta, classical_gf_mu,
    cs2_series, eq32_sides, eq35_sides, gf_eta_rhs, gf_mu_rhs, rs1_series,
    symmetrized_moment_series,
};
pub use multisum::{
    check_corollary_53, check_theorem_11, check_theorem_11_with_tables, check_theorem_28,
    cor53_closed_form, multisum_core, multisum_with_head, ChainWeight,
};
pub use report::{
    compare_bigint_seq, compare_qseries, compare_zqseries, Mismatch, Status, VerificationReport,
};
