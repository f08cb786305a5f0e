//! The fields F₂, F₄, F₁₆ as `GF(2^M)` with elements stored as bit vectors.

use std::fmt;
use std::ops::{Add, Mul};

use crate::coeffring::Char2Field;

/// `GF(2^M)` for `M ∈ {1, 2, 4}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf<const M: u32>(u8);

pub type F2 = Gf<1>;
pub type F4 = Gf<2>;
pub type F16 = Gf<4>;

impl<const M: u32> Gf<M> {
    const MODULUS: u16 = match M {
        1 => 0b10,
        2 => 0b111,
        4 => 0b10011,
        _ => panic!("unsupported extension degree"),
    };

    pub const ORDER: usize = 1 << M;

    pub fn new(bits: u8) -> Self {
        assert!(
            (bits as usize) < Self::ORDER,
            "{bits} is not an element of GF(2^{M})"
        );
        Gf(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn elements() -> impl Iterator<Item = Self> {
        (0..Self::ORDER as u8).map(Gf)
    }

    pub fn nonzero() -> impl Iterator<Item = Self> {
        (1..Self::ORDER as u8).map(Gf)
    }

    pub fn pow(self, mut k: u32) -> Self {
        let mut base = self;
        let mut out = Gf(1);
        while k > 0 {
            if k & 1 == 1 {
                out = out * base;
            }
            base = base * base;
            k >>= 1;
        }
        out
    }
}

impl<const M: u32> Add for Gf<M> {
    type Output = Self;

    // addition in characteristic 2 is xor
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        Gf(self.0 ^ rhs.0)
    }
}

impl<const M: u32> Mul for Gf<M> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut acc: u16 = 0;
        let (a, b) = (self.0 as u16, rhs.0 as u16);
        for i in 0..M {
            if b >> i & 1 == 1 {
                acc ^= a << i;
            }
        }
        for i in (M..2 * M).rev() {
            if acc >> i & 1 == 1 {
                acc ^= Self::MODULUS << (i - M);
            }
        }
        Gf(acc as u8)
    }
}

impl<const M: u32> Char2Field for Gf<M> {
    fn zero() -> Self {
        Gf(0)
    }

    fn one() -> Self {
        Gf(1)
    }

    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(Self::ORDER as u32 - 2))
        }
    }
}

impl<const M: u32> fmt::Debug for Gf<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const M: u32> fmt::Display for Gf<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
