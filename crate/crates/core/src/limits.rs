//! Caps that guard the exponential and tower-sized computations.

use serde::{Deserialize, Serialize};

/// Resource caps shared by every capped operation.
///
/// Order-4 counters (336 symbols) materialize under the defaults; order-5
/// counters (22 085 632 symbols) need `max_counter_symbols` raised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of decimal digits of any big-integer result.
    pub max_digits: u64,
    /// Largest `n` for which `Z_n` is materialized.
    pub max_zimin_order: u32,
    /// Longest word accepted by `zimin_index`.
    pub max_index_len: usize,
    /// Longest counter (in symbols) that may be materialized.
    pub max_counter_symbols: u64,
    /// Most words any enumeration may return.
    pub max_enumerated: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_digits: 1_000_000,
            max_zimin_order: 25,
            max_index_len: 10_000,
            max_counter_symbols: 10_000_000,
            max_enumerated: 1_000_000,
        }
    }
}
