use super::{EngineError, RTable};

/// Oracle for part `part` as fixed by the table so far:
/// `q ∈ S ∧ r(|q|) ≡ part (mod k)`.
pub fn oracle_answer(part: u32, q: &[bool], table: &RTable) -> Result<bool, EngineError> {
    let k = table.config().k;
    if part >= k {
        return Err(EngineError::PartOutOfRange { part, k });
    }
    let len = q.len() as u64;
    let r = table
        .get(len)
        .ok_or(EngineError::Undetermined { len, known: table.known() })?;
    Ok(r % u64::from(k) == u64::from(part) && table.config().s_decider.decide(q))
}

/// Membership in part `part`, extending the table as far as `|x|`. Deciding
/// S is exponential in `|x|`.
pub fn member_part(x: &[bool], part: u32, table: &mut RTable) -> Result<bool, EngineError> {
    table.extend_to(x.len() as u64)?;
    oracle_answer(part, x, table)
}

/// The polynomial-time separator `D = { x : r(|x|) even }`; only meaningful
/// for a two-way split.
pub fn member_d(x: &[bool], table: &mut RTable) -> Result<bool, EngineError> {
    let k = table.config().k;
    if k != 2 {
        return Err(EngineError::Config(format!("the separator D needs k = 2, got k = {k}")));
    }
    Ok(table.extend_to(x.len() as u64)? % 2 == 0)
}

/// Letter naming part `p`: A, B, C, ...
pub fn part_label(p: u32) -> String {
    if p < 26 {
        char::from(b'A' + p as u8).to_string()
    } else {
        format!("P{p}")
    }
}

/// Inverse of [`part_label`]; also accepts plain part numbers.
pub fn parse_part_label(s: &str) -> Option<u32> {
    let s = s.trim();
    if let Ok(n) = s.parse::<u32>() {
        return Some(n);
    }
    if let Some(n) = s.strip_prefix('P').and_then(|n| n.parse().ok()) {
        return Some(n);
    }
    match s.as_bytes() {
        [c @ b'A'..=b'Z'] => Some(u32::from(c - b'A')),
        [c @ b'a'..=b'z'] => Some(u32::from(c - b'a')),
        _ => None,
    }
}
