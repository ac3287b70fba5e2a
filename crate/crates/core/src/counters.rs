//! Higher-order counters.
//!
//! `C_0^1 = 0_1`, `C_1^1 = 1_1`, and for `n >= 1`
//! `C_i^{n+1} = C_0^n b_0 C_1^n b_1 ... C_{τ(n)-1}^n b_{τ(n)-1}` where
//! `b_0 b_1 ...` is the binary expansion of `i` over `{0_{n+1}, 1_{n+1}}`,
//! least significant bit first.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::words::{check_digits, tau_with, RankedSymbol, RankedWord};

/// Identifies `C_i^n`: the `value`-th counter of order `order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CounterId {
    order: u32,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    value: BigUint,
}

impl CounterId {
    /// Checks `order >= 1` and `value < τ(order)`.
    pub fn new(order: u32, value: impl Into<BigUint>) -> Result<Self> {
        Self::new_with(order, value, &Limits::default())
    }

    pub fn new_with(order: u32, value: impl Into<BigUint>, limits: &Limits) -> Result<Self> {
        let value = value.into();
        if order == 0 {
            return Err(Error::InvalidArgument("counter order must be at least 1".into()));
        }
        // value < τ(n) = 2^τ(n-1)  <=>  bits(value) <= τ(n-1)
        let width = tau_with(order - 1, limits)?;
        if BigUint::from(value.bits()) > width {
            return Err(Error::CounterOutOfRange {
                order,
                index: value.to_string(),
            });
        }
        Ok(CounterId { order, value })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }
}

/// `L_1 = 1`, `L_{n+1} = τ(n) (L_n + 1)`.
pub fn counter_length(n: u32) -> Result<BigUint> {
    counter_length_with(n, &Limits::default())
}

pub fn counter_length_with(n: u32, limits: &Limits) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("counter order must be at least 1".into()));
    }
    let mut len = BigUint::one();
    for m in 1..n {
        len = tau_with(m, limits)? * (len + 1u32);
        check_digits(&len, limits.max_digits, "counter length")?;
    }
    Ok(len)
}

/// Materializes `C_i^n`.
pub fn counter(id: &CounterId) -> Result<RankedWord> {
    counter_with(id, &Limits::default())
}

pub fn counter_with(id: &CounterId, limits: &Limits) -> Result<RankedWord> {
    let len = counter_length_with(id.order, limits)?;
    if len > BigUint::from(limits.max_counter_symbols) {
        return Err(Error::resource("counter length", len, limits.max_counter_symbols));
    }
    let cap = len.to_usize().unwrap_or(0);
    let mut out = Vec::with_capacity(cap);
    out.extend(CounterStream::new(id));
    Ok(RankedWord::new(out))
}

/// All `τ(n)` counters of order `n`, in index order.
pub fn all_counters(n: u32) -> Result<Vec<RankedWord>> {
    let limits = Limits::default();
    let count = tau_with(n, &limits)?;
    let count = count
        .to_u64()
        .filter(|&c| c <= 1 << 20)
        .ok_or_else(|| Error::resource("number of counters", count.clone(), 1u64 << 20))?;
    (0..count)
        .map(|i| counter_with(&CounterId::new_with(n, i, &limits)?, &limits))
        .collect()
}

#[derive(Debug, Clone)]
struct Frame {
    order: u32,
    index: BigUint,
    next_sub: u64,
    subs: BigUint,
    awaiting_bit: bool,
}

/// Constant-memory generator for the symbols of a counter.
///
/// Keeps one frame per order; never holds the word itself.
#[derive(Debug, Clone)]
pub struct CounterStream {
    stack: Vec<Frame>,
}

impl CounterStream {
    pub fn new(id: &CounterId) -> Self {
        CounterStream {
            stack: vec![Frame::new(id.order, id.value.clone())],
        }
    }
}

impl Frame {
    fn new(order: u32, index: BigUint) -> Self {
        let subs = if order >= 2 {
            // order - 1 <= 5 for any counter whose index fits in memory
            tau_with(order - 1, &Limits::default()).expect("τ(order-1) exists for a validated counter")
        } else {
            BigUint::zero()
        };
        Frame {
            order,
            index,
            next_sub: 0,
            subs,
            awaiting_bit: false,
        }
    }
}

impl Iterator for CounterStream {
    type Item = RankedSymbol;

    fn next(&mut self) -> Option<RankedSymbol> {
        loop {
            let top = self.stack.last_mut()?;
            if top.order == 1 {
                let bit = u8::from(top.index.bit(0));
                self.stack.pop();
                return Some(RankedSymbol::new(1, bit).unwrap());
            }
            if top.awaiting_bit {
                let sym = RankedSymbol::new(top.order, u8::from(top.index.bit(top.next_sub))).unwrap();
                top.awaiting_bit = false;
                top.next_sub += 1;
                if BigUint::from(top.next_sub) == top.subs {
                    self.stack.pop();
                }
                return Some(sym);
            }
            top.awaiting_bit = true;
            let sub = Frame::new(top.order - 1, BigUint::from(top.next_sub));
            self.stack.push(sub);
        }
    }
}

/// Inverse of [`counter`]: validates the full block structure of an
/// order-`n` counter and returns its index.
///
/// Every symbol except the order-`n` bits is forced by the construction, so
/// the word is compared position by position against `C_0^n` and the first
/// mismatch is reported.
pub fn decode_counter(w: &[RankedSymbol], n: u32) -> Result<BigUint> {
    let template = CounterId::new(n, 0u32)?;
    let fail = |position: usize, reason: String| Error::MalformedCounter {
        order: n,
        position,
        reason,
    };
    let mut expected = CounterStream::new(&template);
    let mut value = BigUint::zero();
    let mut bit_index: u64 = 0;
    for (pos, &s) in w.iter().enumerate() {
        let e = expected
            .next()
            .ok_or_else(|| fail(pos, "trailing symbols after a complete counter".into()))?;
        if e.order() == n {
            if s.order() != n {
                return Err(fail(pos, format!("expected an order-{n} symbol, found {s}")));
            }
            if s.bit() == 1 {
                value.set_bit(bit_index, true);
            }
            bit_index += 1;
        } else if s != e {
            return Err(fail(pos, format!("expected {e}, found {s}")));
        }
    }
    if expected.next().is_some() {
        return Err(fail(w.len(), "unexpected end of word".into()));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u32, i: u64) -> CounterId {
        CounterId::new(n, i).unwrap()
    }

    fn word(s: &str) -> RankedWord {
        s.parse().unwrap()
    }

    #[test]
    fn small_counters() {
        assert_eq!(counter(&id(2, 0)).unwrap(), word("0_1 0_2 1_1 0_2"));
        assert_eq!(counter(&id(1, 1)).unwrap(), word("1_1"));
        assert_eq!(counter(&id(2, 1)).unwrap(), word("0_1 1_2 1_1 0_2"));
        assert_eq!(counter(&id(2, 2)).unwrap(), word("0_1 0_2 1_1 1_2"));
        assert_eq!(counter(&id(2, 3)).unwrap(), word("0_1 1_2 1_1 1_2"));
        assert_eq!(
            counter(&id(3, 11)).unwrap(),
            word("0_1 0_2 1_1 0_2 1_3 0_1 1_2 1_1 0_2 1_3 0_1 0_2 1_1 1_2 0_3 0_1 1_2 1_1 1_2 1_3")
        );
    }

    #[test]
    fn ids_are_range_checked() {
        assert!(CounterId::new(1, 2u32).is_err());
        assert!(CounterId::new(2, 4u32).is_err());
        assert!(CounterId::new(3, 15u32).is_ok());
        assert!(CounterId::new(3, 16u32).is_err());
        assert!(CounterId::new(0, 0u32).is_err());
        // order 6 is addressable, order 7 needs τ(6)
        assert!(CounterId::new(6, 0u32).is_ok());
        assert!(CounterId::new(7, 0u32).unwrap_err().is_resource());
    }

    #[test]
    fn lengths() {
        assert_eq!(counter_length(1).unwrap(), BigUint::from(1u32));
        assert_eq!(counter_length(2).unwrap(), BigUint::from(4u32));
        assert_eq!(counter_length(3).unwrap(), BigUint::from(20u32));
        assert_eq!(counter_length(4).unwrap(), BigUint::from(336u32));
        assert_eq!(counter_length(5).unwrap(), BigUint::from(22_085_632u32));
        for n in 1..=5 {
            assert!(counter_length(n).unwrap() >= tau_with(n - 1, &Limits::default()).unwrap());
        }
    }

    #[test]
    fn materialization_cap() {
        assert_eq!(counter(&id(4, 0)).unwrap().len(), 336);
        assert!(counter(&id(5, 0)).unwrap_err().is_resource());
        let roomy = Limits {
            max_counter_symbols: 30_000_000,
            ..Limits::default()
        };
        assert_eq!(counter_with(&id(5, 0), &roomy).unwrap().len(), 22_085_632);
    }

    #[test]
    fn stream_agrees_with_materialization() {
        let collected: Vec<_> = CounterStream::new(&id(2, 0)).collect();
        assert_eq!(RankedWord::new(collected), counter(&id(2, 0)).unwrap());
        assert_eq!(CounterStream::new(&id(4, 0)).count(), 336);
        for n in 2..=4u32 {
            for i in 0..(1u64 << (1u32 << (n - 1))).min(256) {
                let first = CounterStream::new(&id(n, i)).next().unwrap();
                assert_eq!(first, RankedSymbol::zero(1));
            }
        }
        assert_eq!(CounterStream::new(&id(1, 1)).next(), Some(RankedSymbol::one(1)));
        // The order-6 stream starts like every other counter.
        let head: Vec<_> = CounterStream::new(&id(6, 0)).take(4).collect();
        assert_eq!(RankedWord::new(head), word("0_1 0_2 1_1 0_2"));
    }

    #[test]
    fn decode_round_trip() {
        let c11 = counter(&id(3, 11)).unwrap();
        assert_eq!(decode_counter(&c11, 3).unwrap(), BigUint::from(11u32));
        assert_eq!(decode_counter(&counter(&id(2, 0)).unwrap(), 2).unwrap(), BigUint::zero());
        for i in 0..256u64 {
            let c = counter(&id(4, i)).unwrap();
            assert_eq!(decode_counter(&c, 4).unwrap(), BigUint::from(i));
        }
    }

    #[test]
    fn decode_reports_first_bad_position() {
        let mut c = counter(&id(3, 5)).unwrap().into_symbols();
        c[6] = RankedSymbol::zero(2);
        match decode_counter(&c, 3) {
            Err(Error::MalformedCounter { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        let c = counter(&id(2, 1)).unwrap();
        match decode_counter(&c[..3], 2) {
            Err(Error::MalformedCounter { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        let mut long = c.into_symbols();
        long.push(RankedSymbol::zero(1));
        match decode_counter(&long, 2) {
            Err(Error::MalformedCounter { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(decode_counter(&word("0_2"), 1).is_err());
    }
}
