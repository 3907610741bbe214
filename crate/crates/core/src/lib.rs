//! Exact coalition displacement for Top-k positional scoring elections.
//!
//! Given honest scores, a scoring vector and a coalition of `m` voters, the
//! crate computes the largest number of current winners the coalition can
//! push out of the committee, the interval of cutoffs that certify it, and
//! explicit ballots that achieve it.
//!
//! ```
//! use displace_core::{election::HonestScores, envelope::{maximize_displacement, Strategy}};
//! use displace_core::scoring::ScoringVector;
//!
//! let scores = HonestScores::new(vec![6, 3, 3, 0]).unwrap();
//! let borda = ScoringVector::new(vec![3, 2, 1, 0]).unwrap();
//! let result = maximize_displacement(&scores, &borda, 2, 1, Strategy::Binary).unwrap();
//! assert_eq!(result.k_star, 1);
//! assert_eq!((result.b_min, result.b_max), (Some(4), Some(6)));
//! ```

pub mod ballots;
pub mod baselines;
pub mod data;
pub mod demand;
pub mod election;
pub mod envelope;
pub mod error;
pub mod oracle;
pub mod reference;
pub mod scoring;

pub use error::{Error, Result};
