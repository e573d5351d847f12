use super::EngineConfig;
pub use crate::deciders::ceil_log2;
use crate::enumeration::pow_clock;

/// `T = d^j + j` with `d = depth_fn(i)`, `j = ⌊r_i / k⌋`, saturating. This is
/// also the clock of `M_j` on inputs of length `d`, hence a bound on every
/// oracle query the witness search can issue.
pub fn gate_t(i: u64, r_i: u64, config: &EngineConfig) -> u64 {
    let j = r_i / u64::from(config.k);
    pow_clock(config.depth_fn.eval(i), j).saturating_add(j)
}

/// `T^c` for the default cost, saturating.
pub fn gate_exponent(i: u64, r_i: u64, config: &EngineConfig) -> u64 {
    gate_t(i, r_i, config)
        .checked_pow(config.s_decider.exponent_c)
        .unwrap_or(u64::MAX)
}

/// True when the attempt at step `i` is abandoned (`cost(T) >= i`), so that
/// `r(i+1) = r(i)`.
pub fn gate_fails(i: u64, r_i: u64, config: &EngineConfig) -> bool {
    config.s_decider.cost_fn.reaches(gate_t(i, r_i, config), i)
}
