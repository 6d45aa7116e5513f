pub mod arith;
pub mod consts;
pub mod criteria;
pub mod errata;
pub mod error;
pub mod extremal;
pub mod factored;
pub mod foursquares;
pub mod identities;
pub mod mertens;
pub mod num;
pub mod primes;
pub mod ratio;
pub mod report;
pub mod sieve;
pub mod stats;

pub use error::{Error, Result};
pub use factored::{factorize, FactoredInteger};
pub use primes::{ChebyshevKind, PrimeTable};
pub use ratio::ExactRatio;
pub use report::{Criterion, CriterionReport, Mode, Subject, Verdict};
