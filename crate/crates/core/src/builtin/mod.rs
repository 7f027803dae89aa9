//! Built-in example fields and the infinite complete rule families.

mod family;
pub mod fields;

pub use family::{
    airy_b, airy_b0, airy_c, airy_hard_instance, airy_matrix, airy_rules, binomial, builtin_system, cei_a, cei_b, cei_rules_v1,
    cei_rules_v2, double_factorial, family_system, FamilyKind, HardInstanceError, RuleFamily, FAMILY_ID,
};

#[cfg(test)]
mod tests;
