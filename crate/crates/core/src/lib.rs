//! Exact topological invariants of positively curved Eschenburg spaces.
//!
//! An Eschenburg space `E_{k,l}` is the quotient of `SU(3)` by the circle
//! acting through `diag(z^k1, z^k2, z^k3)` on the left and
//! `diag(z^l1, z^l2, z^l3)` on the right. This crate
//!
//! * enumerates the positively curved ones (and the 3-Sasakian subfamily
//!   `E_{a,b,c}`) with a given order `r` of `H^4`,
//! * computes `r`, the linking number `s`, the first Pontrjagin class `p1` and
//!   the Kreck–Stolz invariants `s1, s2, s3, s22` in exact arithmetic,
//! * decides homotopy equivalence, homeomorphism and diffeomorphism of pairs.
//!
//! ```
//! use eschenburg::{invariants::full_record, spaces::ParamPair};
//!
//! let pp = ParamPair::new([79, 49, -50], [46, 32, 0]).unwrap();
//! let rec = full_record(&pp).unwrap();
//! assert_eq!(rec.basic.r_abs, 4001);
//! assert_eq!(rec.basic.s.value, -1502);
//! assert_eq!(rec.ks.unwrap().s2.to_string(), "-1043/8002");
//! ```

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod exact_arith;
pub mod invariants;
pub mod lens_sums;
mod par;
pub mod pipeline;
pub mod spaces;

pub use error::{Error, Result};
pub use exact_arith::{QModZ, SignedResidue, Triple};
