//! Subsequential finite-state transducers and the tier-based strictly local
//! function classes: exact and brute-force membership deciders, canonical
//! machine builders, and a two-step factorization through a homomorphism.
//!
//! ```
//! use subreg::{Builtin, FunctionHandle, Str, Tier};
//! use subreg::classes::check_tssl;
//!
//! let rs = FunctionHandle::from_machine(Builtin::Syncope.machine());
//! assert_eq!(rs.apply(&Str::parse("C V C V C V").unwrap()).unwrap().to_string(), "C C V C");
//!
//! let tier = Tier::new(rs.actions().unwrap(), ["V:".parse().unwrap(), "V:V".parse().unwrap()]).unwrap();
//! assert!(check_tssl(&rs, 2, &tier).unwrap().member);
//! ```

pub mod builtins;
pub mod classes;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod par;
pub mod random;
pub mod sfst;
pub mod symbols;
pub mod views;

pub use builtins::Builtin;
pub use error::{Error, Result};
pub use sfst::{Sfst, SfstBuilder, StateId, StateLabel};
pub use symbols::{Action, ActionStr, Alphabet, Str, Symbol, Tier};
pub use views::FunctionHandle;
