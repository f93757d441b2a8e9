//! Stern's diatomic sequence and the Calkin-Wilf counting function.
//!
//! `s(0) = 0`, `s(1) = 1`, `s(2n) = s(n)`, `s(2n+1) = s(n) + s(n+1)`, and
//! `fusc(n) = b(n) = s(n+1)`, the number of ways to write `n` as a sum of powers
//! of two with each power used at most twice.

use std::cell::RefCell;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Entries beyond this index are computed without being stored.
pub const MEMO_HORIZON: u64 = 1 << 22;

/// Dense memo of `s(n)`, grown on demand.
#[derive(Clone, Debug)]
pub struct SternTable {
    values: Vec<BigUint>,
}

impl Default for SternTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SternTable {
    pub fn new() -> Self {
        Self {
            values: vec![BigUint::zero(), BigUint::one()],
        }
    }

    /// Number of memoized entries.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    fn fill_to(&mut self, n: usize) {
        while self.values.len() <= n {
            let i = self.values.len();
            let half = i / 2;
            let next = if i.is_multiple_of(2) {
                self.values[half].clone()
            } else {
                &self.values[half] + &self.values[half + 1]
            };
            self.values.push(next);
        }
    }

    /// `s(n)`.
    pub fn get(&mut self, n: u64) -> BigUint {
        if n < MEMO_HORIZON {
            self.fill_to(n as usize);
            self.values[n as usize].clone()
        } else {
            stern_unmemoized(u128::from(n))
        }
    }
}

/// `s(n)` by a single pass over the bits of `n`, no table.
///
/// Keeps the pair `(s(m), s(m+1))` for the prefix `m` of `n` read from the most
/// significant bit: appending a 0 bit gives `(s(m), s(m) + s(m+1))`, a 1 bit
/// gives `(s(m) + s(m+1), s(m+1))`.
pub fn stern_unmemoized(n: u128) -> BigUint {
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one();
    for bit in (0..u128::BITS - n.leading_zeros()).rev() {
        if (n >> bit) & 1 == 1 {
            lo += &hi;
        } else {
            hi += &lo;
        }
    }
    lo
}

thread_local! {
    static TABLE: RefCell<SternTable> = RefCell::new(SternTable::new());
}

/// `s(n)`, memoized in a per-thread table.
pub fn stern(n: u64) -> BigUint {
    TABLE.with(|t| t.borrow_mut().get(n))
}

/// `b(n) = s(n + 1)`.
pub fn fusc(n: u64) -> BigUint {
    match n.checked_add(1) {
        Some(m) => stern(m),
        None => stern_unmemoized(u128::from(n) + 1),
    }
}

/// `s(0), …, s(count - 1)`.
pub fn stern_prefix(count: u64) -> Vec<BigUint> {
    TABLE.with(|t| {
        let mut t = t.borrow_mut();
        (0..count).map(|n| t.get(n)).collect()
    })
}

/// Counts hyperbinary representations of `n` directly: digits in {0, 1, 2}
/// per power of two, scanned from the least significant bit with a carry.
///
/// Shares nothing with the recurrence above; used to cross-check [`fusc`].
pub fn hyperbinary_count_oracle(n: u64) -> BigUint {
    // ways[c] = number of digit choices for the bits seen so far that leave carry c
    let mut ways = [BigUint::one(), BigUint::zero()];
    let mut rest = n;
    loop {
        if rest == 0 {
            // past the top bit a carry of 1 only ever regenerates itself
            return std::mem::take(&mut ways[0]);
        }
        let bit = (rest & 1) as u32;
        let mut next = [BigUint::zero(), BigUint::zero()];
        for (carry, count) in ways.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for digit in 0..=2u32 {
                let total = digit + carry as u32;
                if total % 2 == bit {
                    next[(total / 2) as usize] += count;
                }
            }
        }
        ways = next;
        rest >>= 1;
    }
}
