//! Exact verification toolkit for cluster seed mutations, quantum tori,
//! quantum dilogarithm identities and the phase constants of mutation
//! intertwiners.
//!
//! ```
//! use qcluster::seed::{Seed, RelationKind};
//! use qcluster::rewrite::verify_phase_constant;
//!
//! let s = Seed::new(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap();
//! let r = s.detect_relation(0, 1).unwrap();
//! assert_eq!(r.kind, RelationKind::A2);
//! let cert = verify_phase_constant(&s, &r).unwrap();
//! assert!(cert.is_identity());
//! ```

pub mod exact;
pub mod seed;
pub mod classical;
pub mod quantum;
pub mod heisenberg;
pub mod rewrite;
pub mod dilog;
pub mod suite;
