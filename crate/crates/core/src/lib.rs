//! Exact enumeration and arithmetic of involutions and of permutations with bounded
//! cycle lengths: involution numbers and their partial sums, p-adic valuations,
//! cycle-index polynomials, exponential generating functions, saddle-point
//! asymptotics, and brute-force oracles to check all of it against.

pub mod asymptotic;
pub mod cli;
pub mod cyclecount;
pub mod error;
pub mod exactnum;
pub mod involution;
mod memo;
pub mod oracle;
pub mod partialsum;
pub mod series;
pub mod unipoly;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{ExactInt, ExactRat, Partition};

/// An exact integer as a JSON number, however many digits it has.
pub fn big_to_json(x: &ExactInt) -> serde_json::Value {
    let n: serde_json::Number = x.to_string().parse().expect("integer literal");
    serde_json::Value::Number(n)
}
