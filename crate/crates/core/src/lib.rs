//! Exact analysis of the finite-horizon durable-good monopoly game with
//! atomic, unit-demand consumers.
//!
//! A seller with zero marginal cost posts one price per period for `T`
//! periods; each consumer buys at most once and maximizes `v - price`. This
//! crate computes the seller's profit-maximizing strong-Markov subgame
//! perfect equilibrium by backward induction over suffix games, and ships
//! the tools to check it: an exhaustive schedule enumerator, a unilateral
//! deviation checker, profit bounds against the static monopoly, the
//! full-surplus ("Pacman") characterization, and the two-period swap that
//! turns a non-skimming equilibrium into a skimming one.
//!
//! All money is [`Rational`]; nothing is ever rounded.
//!
//! ```
//! use duropoly_core::{solve, Instance, Rational};
//!
//! let inst = Instance::from_integers(&[100, 85, 80, 50], 2).unwrap();
//! let sol = solve(&inst);
//! assert_eq!(sol.profit, Rational::from(260));
//! assert_eq!(sol.prices, vec![Rational::from(80), Rational::from(50)]);
//! ```
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod bounds;
mod error;
pub mod model;
pub mod nonskim;
pub mod oracle;
pub mod pacman;
mod rational;
pub mod solver;
pub mod static_monopoly;

pub use error::{Error, Result};
pub use model::{make_instance, total_surplus, Instance, SubgameRef};
pub use rational::Rational;
pub use solver::{reindexed_subgame, solve, threat_price, DpTables, EquilibriumSolution};
