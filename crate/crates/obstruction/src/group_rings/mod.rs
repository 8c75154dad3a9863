//! Degree-capped models of the cohomology rings of BS¹, BH̃ₜ, BG̃ₚ and BDₜ.

pub mod builders;
pub mod maps;
pub mod monomial;
pub mod ring;
pub mod table_io;

pub use builders::{build_ring, default_cap};
pub use maps::{
    bockstein, reduction, restriction_g_to_h, restriction_g_to_s, restriction_h_to_s,
    transfer_table, transfer_table_mod_p, Covering, GammaClass, MapError, RingFamily, RingMap,
    TotalSpace, TransferTable,
};
pub use monomial::{Gen, Monomial};
pub use ring::{Coefficients, GradedElement, RingError, RingId, RingKind, Terms, TruncatedRing};
pub use table_io::{load_ring, read_table, write_table, TableError};
