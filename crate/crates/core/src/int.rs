use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{PrimInt, Unsigned};

/// Unsigned machine integer usable as a label or modulus.
///
/// The number-theoretic layer is written against this trait so the same code
/// serves `u32` label tables and `u64`/`u128` arithmetic where products of
/// critical prime powers can grow past 32 bits.
pub trait Int: PrimInt + Integer + Unsigned + Hash + Debug + Display + Send + Sync + 'static {
    fn from_u64(v: u64) -> Option<Self> {
        <Self as num_traits::NumCast>::from(v)
    }

    fn as_u64(self) -> Option<u64> {
        self.to_u64()
    }
}

impl Int for u8 {}
impl Int for u16 {}
impl Int for u32 {}
impl Int for u64 {}
impl Int for u128 {}
impl Int for usize {}
