//! Two functions, neither hard on its own, whose composition decides S.
//!
//! ```text
//! f(x) = 1^(|x|+1)  if x ∈ A          g(z) = 1  if z starts with 1
//!        0x         otherwise                1  if z = 0x with x ∈ B
//!                                            0  otherwise (including z = ε)
//! ```
//!
//! so `g(f(x)) = 1` exactly when `x ∈ A ∪ B = S`. Both are computed here as
//! ordinary functions of the membership handles; as OptP functions each is
//! the lexicographic maximum over the outputs of an NP machine that guesses
//! a membership certificate.

use std::sync::{Arc, Mutex};

use crate::bits::BitString;
use crate::engine::{member_part, EngineError, RTable};

pub type Membership = dyn Fn(&[bool]) -> bool + Send + Sync;

#[derive(Clone)]
pub struct SplitHandles {
    pub member_a: Arc<Membership>,
    pub member_b: Arc<Membership>,
}

impl SplitHandles {
    pub fn new(member_a: Arc<Membership>, member_b: Arc<Membership>) -> Self {
        SplitHandles { member_a, member_b }
    }

    /// Handles for parts 0 and 1 of a two-way engine. The table is extended
    /// on demand behind the lock.
    pub fn from_table(table: RTable) -> Result<Self, EngineError> {
        if table.config().k != 2 {
            return Err(EngineError::Config(format!(
                "composition needs a two-way split, got k = {}",
                table.config().k
            )));
        }
        let shared = Arc::new(Mutex::new(table));
        let part = |p: u32| -> Arc<Membership> {
            let shared = Arc::clone(&shared);
            Arc::new(move |x: &[bool]| {
                let mut t = shared.lock().expect("table lock poisoned");
                member_part(x, p, &mut t).expect("engine failure while deciding membership")
            })
        };
        Ok(SplitHandles { member_a: part(0), member_b: part(1) })
    }

    pub fn chi_s(&self, x: &[bool]) -> bool {
        (self.member_a)(x) || (self.member_b)(x)
    }
}

pub fn f(x: &[bool], h: &SplitHandles) -> BitString {
    if (h.member_a)(x) {
        BitString::ones(x.len() + 1)
    } else {
        BitString::from(x.to_vec()).prefixed(false)
    }
}

pub fn g(z: &[bool], h: &SplitHandles) -> BitString {
    let one = match z.split_first() {
        Some((true, _)) => true,
        Some((false, rest)) => (h.member_b)(rest),
        None => false,
    };
    BitString::from(vec![one])
}

pub fn compose_gf(x: &[bool], h: &SplitHandles) -> bool {
    g(&f(x, h), h)[0]
}
