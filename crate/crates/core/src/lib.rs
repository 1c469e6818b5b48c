//! Exact Hyper-Zagreb indices for hypergraphs.
//!
//! Contents:
//!
//! * [`hypergraph`]: the [`Hypergraph`] type and its structural predicates,
//!   with `.hg` and JSON encodings in [`io`];
//! * [`indices`]: exact HM1 / HM2 values and per-edge contributions;
//! * [`families`]: extremal families (complete, complete uniform, complete
//!   weak bipartite, sunflowers, hyperstars, hyperpaths) with every known
//!   closed form and a structural cross-check;
//! * [`verify`]: exhaustive enumeration of small hypergraph classes, extremal
//!   scans and a ledger of bound claims;
//! * [`qsar`]: descriptor tables and least-squares bioactivity fits.

mod bits;
mod dsu;

pub mod families;
pub mod hypergraph;
pub mod indices;
pub mod io;
pub mod qsar;
pub mod verify;

pub use families::{closed_form, cross_check, generate, ClosedForm, CrossCheckReport, FamilySpec};
pub use hypergraph::{Bipartition, Edge, Hypergraph, HypergraphError, Vertex};
pub use indices::{edge_contributions, hm1, hm2, EdgeContribution, Index, IndexValue};
