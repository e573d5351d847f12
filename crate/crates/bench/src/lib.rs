//! Inputs shared by the benchmarks.

use splitlab_core::deciders::{encode_cnf, CnfFormula, Literal};
use splitlab_core::engine::DepthFn;
use splitlab_core::enumeration::EnumerationMode;
use splitlab_core::tm::fixtures;
use splitlab_core::{BitString, EngineConfig};

/// The implication chain `x0 ∧ (¬x0 ∨ x1) ∧ ... ∧ ¬x(n-1)`: unsatisfiable,
/// so brute force visits every assignment.
pub fn unsat_chain(n: u32) -> BitString {
    let mut clauses = vec![vec![Literal::pos(0)]];
    for v in 1..n {
        clauses.push(vec![Literal::neg(v - 1), Literal::pos(v)]);
    }
    clauses.push(vec![Literal::neg(n - 1)]);
    encode_cnf(&CnfFormula::new(n, clauses).expect("variables in range"))
}

/// A configuration in which r advances at desk scale.
pub fn accelerated() -> EngineConfig {
    EngineConfig::default()
        .with_exponent(1)
        .with_depth(DepthFn::HalfLog2)
        .with_enumeration(
            EnumerationMode::roster(vec![fixtures::always_reject(), fixtures::copier_query()])
                .expect("fixtures are well formed"),
        )
}
