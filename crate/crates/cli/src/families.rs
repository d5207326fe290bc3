//! The six benchmark families and their canonical targets `m_k = P - S - k`.

use std::fmt;
use std::str::FromStr;

use denum_core::{Integer, Result, Semigroup3};
use num_traits::Pow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `<7^k, 11^k, 7^k 11^k - 7^k - 11^k>`
    T1,
    /// `<7^k, 11^k, 11^k + 1>`
    T2,
    /// `<7^k, 11^k, 7^k + 11^(2k)>`
    T3,
    /// `<7^k, 11^k, 7^k + 11^k>`
    T4,
    /// `<1, 7^k, 11^k>`
    T5,
    /// `<1, 7^k, 7^k + 1>`
    T6,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::T1, Family::T2, Family::T3, Family::T4, Family::T5, Family::T6];

    pub fn semigroup(self, k: u32) -> Result<Semigroup3> {
        let s = Integer::from(7u8).pow(k);
        let e = Integer::from(11u8).pow(k);
        let (a, b, c) = match self {
            Family::T1 => (s.clone(), e.clone(), &s * &e - &s - &e),
            Family::T2 => (s, e.clone(), e + 1u32),
            Family::T3 => (s.clone(), e.clone(), &s + &e * &e),
            Family::T4 => (s.clone(), e.clone(), s + e),
            Family::T5 => (Integer::from(1u8), s, e),
            Family::T6 => (Integer::from(1u8), s.clone(), s + 1u32),
        };
        Semigroup3::new(a, b, c)
    }

    /// `P - S - k`.
    pub fn target(t: &Semigroup3, k: u32) -> Integer {
        &t.p - &t.s - k
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}`, expected T1..T6"))
    }
}
