//! Certificate-producing constructions.
//!
//! Each operation returns a closed set `K` together with the exact measure
//! lost and whatever bound, index table or continuity witness the
//! corresponding statement promises on `K`. Infinite intersections are
//! truncated to a finite ladder; every claim written into a certificate
//! holds exactly.

mod cert;
mod converse;
mod dini;
mod egoroff;
mod first;
mod fourth;
mod lusin;
mod search;

pub use cert::{
    BoundednessCert, Certificate, ContinuityWitness, DecompositionCert, DiniAlgorithm, DiniCert, EgoroffCert,
    EgoroffPath, LusinCert, LusinPath,
};
pub use converse::{
    decomposition_converse_check, egoroff_converse_check, fourth_converse_bound, lusin_converse_check,
    LusinConverseReport, LusinConverseRow,
};
pub use dini::dini_index;
pub use egoroff::{egoroff_classical, egoroff_dini, refine_egoroff};
pub use first::principle1_decompose;
pub use fourth::fourth_principle;
pub use lusin::{continuity_witness, lusin, lusin_classical, lusin_step};

/// Default safety cap on index searches.
pub const DEFAULT_CAP: u64 = 1 << 20;
