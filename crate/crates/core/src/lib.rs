//! Search-space reduction for single-node conditional causal bandits.
//!
//! * [`graph`]: immutable DAGs and the common-ancestor family.
//! * [`closure`]: LSCA closure, the C4 connector sweep and the Λ-oracle.
//! * [`scm`]: discrete structural causal models, interventions and the
//!   adversarial witness models.
//! * [`bandit`]: the two-level CondIntUCB agent and regret accounting.
//! * [`graphgen`]: random DAGs, target selection and reduction statistics.
//! * [`io`]: edge-list, DOT and BIF-structure readers.

pub mod bandit;
pub mod closure;
pub mod fixtures;
pub mod graph;
pub mod graphgen;
pub mod io;
pub mod scm;

pub use closure::{c4, lsca_closure, mgiss, ConnectorResult};
pub use graph::{Dag, GraphError, NodeId, NodeSet, Path};
