//! Exact class numbers of imaginary quadratic extensions `K = F(√−p)` of real
//! quadratic fields `F = ℚ(√d)` with class number one.
//!
//! Three independent routes compute `h_K`:
//!
//! * [`oracle::class_number_direct`] sums Bernoulli polynomial weights over the
//!   whole Shintani set `R_{F,p}` with exact rationals;
//! * [`theorem_one::class_number_thm1`] runs the alternating `Q_F` sum over the
//!   powers of a generator `ρ` of `(O_F/pO_F)^×`;
//! * [`theorem_two::class_number_thm2`] sums `Q_F` over the orbits of the
//!   totally positive fundamental unit acting on `R_{F,p}`, whose common length
//!   is the period of the base-`ε_F` expansion of `1/p`.
//!
//! The crate is `no_std` (it needs `alloc`) and never touches floating point.
//!
//! ```
//! use shintani_core::field::FieldContext;
//! use shintani_core::shintani::ShintaniSet;
//! use shintani_core::theorem_two::class_number_thm2;
//!
//! let field = FieldContext::new(3).unwrap();
//! let set = ShintaniSet::new(&field, 7).unwrap();
//! assert_eq!(class_number_thm2(&set).unwrap().h, 2);
//! ```
#![no_std]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod expansion;
pub mod field;
pub mod oracle;
pub mod residue;
pub mod shintani;
pub mod theorem_one;
pub mod theorem_two;

pub use error::{Error, Result};
pub use field::{EligibilityReport, Failure, FieldContext, QuadInt, QuadRat};
pub use residue::{Generator, ResidueElem, ResidueField};
pub use shintani::{ShintaniCycle, ShintaniPoint, ShintaniSet};
