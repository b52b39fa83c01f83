//! Polynomial identities in nonassociative algebras and dialgebras.
//!
//! This crate represents multilinear (and polarizable nonlinear) polynomial
//! identities over the rationals, implements the KP and BSO transforms that
//! turn algebra identities into dialgebra identities, and decides
//! consequence/equivalence of identities by exact linear algebra over
//! symmetric-group modules.

pub mod bso;
pub mod checker;
pub mod corpus;
pub mod kp;
pub mod macros;
pub mod monomial;
pub mod parser;
pub mod pointed;
pub mod poly;
pub mod qlinalg;
pub mod shape;
pub mod spaces;
pub mod term;
pub mod variety;

pub use monomial::Monomial;
pub use poly::{Coeff, Identity, Polynomial, MAX_DEGREE};
pub use term::{OperationTag, Signature, Term, TermError, Variable};
