//! Lehmer pairs through their integer parameters `A = (a+b)^2`, `B = ab`,
//! Lehmer sequences, primitive divisors, and the defective-pair data for
//! prime indices 7 and 13.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intmath;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LehmerParams {
    pub a: BigInt,
    pub b: BigInt,
}

impl LehmerParams {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        LehmerParams {
            a: a.into(),
            b: b.into(),
        }
    }

    /// `(a^2 - b^2)^2 = A (A - 4B)`.
    pub fn discriminant_factor(&self) -> BigInt {
        &self.a * (&self.a - &self.b * 4)
    }

    /// Nonzero coprime `A`, `B`, `alpha != +-beta`, and `alpha/beta` not a root of unity.
    pub fn is_lehmer_pair(&self) -> bool {
        if self.a.is_zero() || self.b.is_zero() || !self.a.gcd(&self.b).is_one() {
            return false;
        }
        if self.discriminant_factor().is_zero() {
            return false;
        }
        // A root-of-unity quotient has order at most 12 (degree <= 4).
        !LehmerSequence::new(self).take(12).any(|t| t.is_zero())
    }

    /// Equivalent pairs differ by a factor in {+-1, +-i}: `(A, B)` or `(-A, -B)`.
    pub fn equivalent(&self, other: &LehmerParams) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == -&other.a && self.b == -&other.b)
    }
}

/// Iterator over `u_1, u_2, ...`.
pub struct LehmerSequence {
    step: BigInt,
    b_sq: BigInt,
    /// `[u_{n-3}, u_{n-2}, u_{n-1}, u_n]` window; `n` is the next index minus one.
    window: [BigInt; 4],
    index: u64,
}

impl LehmerSequence {
    pub fn new(params: &LehmerParams) -> Self {
        let step: BigInt = &params.a - &params.b * 2;
        let b_sq = &params.b * &params.b;
        LehmerSequence {
            window: [
                BigInt::one(),
                BigInt::one(),
                &params.a - &params.b,
                step.clone(),
            ],
            step,
            b_sq,
            index: 0,
        }
    }
}

impl Iterator for LehmerSequence {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        self.index += 1;
        if self.index <= 4 {
            return Some(self.window[self.index as usize - 1].clone());
        }
        // u_{n+2} = (A - 2B) u_n - B^2 u_{n-2}
        let next = &self.step * &self.window[2] - &self.b_sq * &self.window[0];
        self.window.rotate_left(1);
        self.window[3] = next.clone();
        Some(next)
    }
}

pub fn lehmer_term(params: &LehmerParams, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok(LehmerSequence::new(params).nth(n as usize - 1).unwrap())
}

/// Removes from `m` every prime it shares with `other`.
fn strip_common(mut m: BigInt, other: &BigInt) -> BigInt {
    let mut g = m.gcd(other);
    while !g.is_one() && !m.is_zero() {
        while (&m % &g).is_zero() {
            m /= &g;
        }
        g = m.gcd(&g);
    }
    m
}

/// Smallest primitive prime divisor of `u_n`, if any.
pub fn primitive_divisor(params: &LehmerParams, n: u64) -> Option<BigInt> {
    if n < 1 {
        return None;
    }
    let terms: Vec<BigInt> = LehmerSequence::new(params).take(n as usize).collect();
    let mut m = terms[n as usize - 1].abs();
    if m.is_zero() {
        return None;
    }
    m = strip_common(m, &params.discriminant_factor());
    for t in &terms[..n as usize - 1] {
        if m.is_one() {
            break;
        }
        if !t.is_zero() {
            m = strip_common(m, t);
        }
    }
    if m.is_one() {
        return None;
    }
    intmath::prime_divisors(&m).into_iter().next().map(BigInt::from)
}

/// A defective pair `((sqrt(a) + sqrt(b))/2, (sqrt(a) - sqrt(b))/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DefectiveEntry {
    pub n: u32,
    pub a: i64,
    pub b: i64,
    /// `alpha * beta = (a - b) / 4`.
    pub y_product: i64,
}

impl DefectiveEntry {
    const fn new(n: u32, a: i64, b: i64) -> Self {
        DefectiveEntry {
            n,
            a,
            b,
            y_product: (a - b) / 4,
        }
    }

    pub fn params(&self) -> LehmerParams {
        LehmerParams::new(self.a, self.y_product)
    }
}

/// Every defective Lehmer pair for prime index 7 < n <= 30 up to equivalence
/// (none exist for 11, 17, 19, 23, 29).
pub const DEFECTIVE: [DefectiveEntry; 7] = [
    DefectiveEntry::new(13, 1, -7),
    DefectiveEntry::new(7, 1, -7),
    DefectiveEntry::new(7, 1, -19),
    DefectiveEntry::new(7, 3, -5),
    DefectiveEntry::new(7, 5, -7),
    DefectiveEntry::new(7, 13, -3),
    DefectiveEntry::new(7, 14, -22),
];

pub fn defective_entries(n: u32) -> impl Iterator<Item = &'static DefectiveEntry> {
    DEFECTIVE.iter().filter(move |e| e.n == n)
}

pub fn is_listed_defective(params: &LehmerParams, n: u32) -> bool {
    defective_entries(n).any(|e| e.params().equivalent(params))
}

/// Values of `y` left open by defective pairs once even `y` is excluded
/// (even `y` forces `C1 C2 = 7 mod 8`).
pub fn defective_y_values(p: u32) -> Vec<i64> {
    let mut ys: Vec<i64> = defective_entries(p)
        .map(|e| e.y_product)
        .filter(|y| y % 2 == 1)
        .collect();
    ys.sort_unstable();
    ys
}
