//! Reference implementations written against the definitions alone, sharing
//! no code with the library paths they check.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Every bitstring of length at most `max_len`, shortest first, each length
/// in lexicographic order.
pub fn strings_up_to(max_len: usize) -> Vec<Vec<bool>> {
    let mut out = vec![Vec::new()];
    for len in 1..=max_len {
        for v in 0u64..(1 << len) {
            out.push((0..len).rev().map(|b| (v >> b) & 1 == 1).collect());
        }
    }
    out
}

pub fn show(y: &[bool]) -> String {
    if y.is_empty() {
        return "ε".into();
    }
    y.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A clause is a list of `(variable, positive)`.
pub type Clause = Vec<(usize, bool)>;

/// Reads the code grammar by recursive descent over a string rendering.
pub fn decode_formula(y: &[bool]) -> Option<(usize, Vec<Clause>)> {
    let s: String = y.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let n = s.find('0')?;
    if n == 0 {
        return None;
    }
    let width = if n == 1 { 0 } else { format!("{:b}", n - 1).len() };
    let mut rest = &s[n + 1..];
    let mut clauses = Vec::new();
    loop {
        let (head, tail) = rest.split_at_checked(1)?;
        rest = tail;
        if head == "0" {
            break;
        }
        let mut clause = Vec::new();
        loop {
            let (head, tail) = rest.split_at_checked(1)?;
            rest = tail;
            if head == "0" {
                break;
            }
            let (var_bits, tail) = rest.split_at_checked(width)?;
            let (sign, tail) = tail.split_at_checked(1)?;
            rest = tail;
            let var = if width == 0 { 0 } else { usize::from_str_radix(var_bits, 2).ok()? };
            if var >= n {
                return None;
            }
            clause.push((var, sign == "1"));
        }
        if clause.is_empty() {
            return None;
        }
        clauses.push(clause);
    }
    rest.is_empty().then_some((n, clauses))
}

/// DPLL with unit propagation and pure-literal elimination.
pub fn dpll(n: usize, clauses: &[Clause]) -> bool {
    fn simplify(clauses: &[Clause], v: usize, val: bool) -> Vec<Clause> {
        clauses
            .iter()
            .filter(|c| !c.contains(&(v, val)))
            .map(|c| c.iter().copied().filter(|&(w, _)| w != v).collect())
            .collect()
    }
    fn solve(mut clauses: Vec<Clause>, n: usize) -> bool {
        loop {
            if clauses.is_empty() {
                return true;
            }
            if clauses.iter().any(|c| c.is_empty()) {
                return false;
            }
            let unit = clauses.iter().find(|c| c.len() == 1).map(|c| c[0]);
            let pure = || {
                let mut polarity = vec![(false, false); n];
                for &(v, p) in clauses.iter().flatten() {
                    if p {
                        polarity[v].0 = true;
                    } else {
                        polarity[v].1 = true;
                    }
                }
                polarity.iter().position(|&(a, b)| a != b).map(|v| (v, polarity[v].0))
            };
            let Some((v, val)) = unit.or_else(pure) else { break };
            clauses = simplify(&clauses, v, val);
        }
        let (v, _) = clauses[0][0];
        [true, false].into_iter().any(|val| solve(simplify(&clauses, v, val), n))
    }
    solve(clauses.to_vec(), n)
}

pub fn sat_reference(y: &[bool]) -> bool {
    decode_formula(y).is_some_and(|(n, clauses)| dpll(n, &clauses))
}

/// `⌊log2 v⌋` by halving, 0 for `v <= 1`.
pub fn floor_log2(v: u64) -> u64 {
    let (mut v, mut l) = (v, 0);
    while v > 1 {
        v /= 2;
        l += 1;
    }
    l
}

pub fn depth_reference(name: &str, i: u64) -> u64 {
    let dloglog = |i: u64| if i < 2 { 0 } else { floor_log2(floor_log2(i).max(1)) };
    match name {
        "dloglog" => dloglog(i),
        "dlogloglog" => if i < 2 { 0 } else { floor_log2(dloglog(i).max(1)) },
        "log2" => floor_log2(i),
        "half-log2" => floor_log2(i) / 2,
        other => panic!("no reference for depth {other}"),
    }
}

/// `T = d^j + j` with `0^j = 0`, exactly.
pub fn t_reference(d: u64, j: u64) -> BigUint {
    let base = if d == 0 { BigUint::zero() } else { BigUint::from(d).pow(j as u32) };
    base + j
}

/// `2^(T^c) >= i` by materializing the power when `T^c <= 4096`; past
/// that, `2^(T^c) > 2^4096` exceeds every 64-bit `i`.
pub fn gate_reference(i: u64, r_i: u64, k: u64, c: u32, depth: &str) -> bool {
    let t = t_reference(depth_reference(depth, i), r_i / k);
    let e = t.pow(c);
    match e.to_u32().filter(|&e| e <= 4096) {
        Some(e) => (BigUint::one() << e) >= BigUint::from(i),
        None => true,
    }
}

/// Inverse Cantor pairing: `z = (a+b)(a+b+1)/2 + b`.
pub fn unpair_reference(z: &BigUint) -> (BigUint, BigUint) {
    let mut w = (z * 8u32 + 1u32).sqrt();
    w = (w - 1u32) / 2u32;
    let tri = &w * (&w + 1u32) / 2u32;
    let b = z - tri;
    (&w - &b, b)
}

/// Binary expansion of `a`, most significant bit first, empty for 0.
pub fn expansion(a: &BigUint) -> Vec<bool> {
    if a.is_zero() {
        return Vec::new();
    }
    a.to_str_radix(2).chars().map(|c| c == '1').collect()
}

pub fn self_check() {
    // the shortest code word and a contradiction
    assert_eq!(decode_formula(&[true, false, false]), Some((1, vec![])));
    assert!(dpll(1, &[vec![(0, true)]]));
    assert!(!dpll(1, &[vec![(0, true)], vec![(0, false)]]));
    assert!(!dpll(2, &[vec![(0, true), (1, true)], vec![(0, false)], vec![(1, false)]]));
    assert_eq!(unpair_reference(&BigUint::from(7u32)), (BigUint::from(2u32), BigUint::one()));
    assert_eq!(depth_reference("dloglog", 1 << 17), 4);
}
