//! Reduction systems for symbolic integration of Risch–Norman type.
//!
//! A differential field is modelled by generators t1..tn with a derivation;
//! integration reduces to solving L(u) = f for a polynomial u, where
//! L(t^α) = p(α, t)·t^α. Reduction rules with parametric conditions rewrite
//! monomials modulo the image of L.

pub mod bounds;
pub mod builtin;
pub mod cli;
pub mod completion;
pub mod conditions;
pub mod diffop;
pub mod engine;
pub mod poly;
pub mod rules;
