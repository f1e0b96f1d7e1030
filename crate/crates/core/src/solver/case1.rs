//! Case I: `p` does not divide the class number. The ideal equation descends to
//! `C1 x + d sqrt(-c) = delta^p / C1^m` (`m = (p-1)/2`), and comparing
//! `sqrt(-c)`-coordinates leaves one univariate polynomial `f_s` per divisor
//! `s` of `d'` whose integer roots are the candidate `r`.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};

use super::{quotient_above_one, route, CaseTag, Route, Solution};
use crate::error::{Error, Result};
use crate::lehmer::{lehmer_term, LehmerParams};
use crate::poly::{integer_roots, IntPoly};
use crate::quadfield::QuadElement;
use crate::sieve::EquationInstance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseIPolynomial {
    pub p: u32,
    pub s: i64,
    /// Low to high; degree `p - 1` with leading coefficient `p`.
    pub coeffs: Vec<BigInt>,
    /// `delta = (r + s sqrt(-c)) / 2`, used when `-c = 1 (mod 4)`.
    pub parity_case: bool,
}

impl CaseIPolynomial {
    pub fn poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }
}

/// `f_s(X) = sum_j binom(p, 2j+1) X^(p-1-2j) (-c s^2)^j - K`, where
/// `K = d C1^m / s`, or `2^p d C1^m / s` in the parity case.
pub fn case1_build(inst: &EquationInstance, p: u32, s: i64) -> Result<CaseIPolynomial> {
    inst.require_valid()?;
    if route(inst, p) != Route::CaseI {
        return Err(Error::Routing(format!(
            "p = {p} belongs to the Thue route for (C1, C2) = ({}, {})",
            inst.c1, inst.c2
        )));
    }
    let d_prime = inst.d_prime();
    if s == 0 || !d_prime.is_multiple_of(s.unsigned_abs()) {
        return Err(Error::NotADivisor {
            s: s.to_string(),
            d_prime: d_prime.to_string(),
        });
    }
    let m = (p - 1) / 2;
    let parity_case = inst.half_integral();
    let step = -BigInt::from(inst.c) * s * s;
    let mut coeffs = vec![BigInt::zero(); p as usize];
    let mut step_pow = BigInt::one();
    for j in 0..=m {
        coeffs[(p - 1 - 2 * j) as usize] = binomial(BigInt::from(p), BigInt::from(2 * j + 1)) * &step_pow;
        step_pow *= &step;
    }
    let mut k = BigInt::from(inst.d) * BigInt::from(inst.c1).pow(m);
    if parity_case {
        k <<= p as usize;
    }
    let (k, rem) = k.div_rem(&BigInt::from(s));
    debug_assert!(rem.is_zero(), "s | d' makes the constant integral");
    coeffs[0] -= k;
    Ok(CaseIPolynomial {
        p,
        s,
        coeffs,
        parity_case,
    })
}

/// All integer roots of `f_s`, by Sturm isolation (no factoring needed).
pub fn case1_roots(poly: &CaseIPolynomial) -> Vec<BigInt> {
    let f = poly.poly();
    if f.is_zero() {
        return Vec::new();
    }
    integer_roots(&f)
}

fn delta(inst: &EquationInstance, s: i64, r: &BigInt) -> Option<QuadElement> {
    let k = if inst.half_integral() { 2 } else { 1 };
    QuadElement::new(&inst.field(), r.clone(), BigInt::from(s), k).ok()
}

/// Rebuilds `(x, y)` from a root `r` of `f_s`; `None` when any check fails.
pub fn case1_recover(inst: &EquationInstance, p: u32, s: i64, r: &BigInt) -> Option<Solution> {
    let delta = delta(inst, s, r)?;
    let m = (p - 1) / 2;
    let c1 = BigInt::from(inst.c1);
    let q = delta.pow(p).div_exact(&c1.pow(m))?;
    if q.sqrt_part()? != BigInt::from(inst.d) {
        return None;
    }
    let (x, rem) = q.rational_part()?.div_rem(&c1);
    if !rem.is_zero() || !x.is_positive() {
        return None;
    }
    let y = quotient_above_one(&delta.norm(), &c1)?;
    Solution::new(inst.c1, inst.c2, x, y, p, CaseTag::CaseI, true)
}

/// Consistency checks tying a Case I solution back to its Lehmer pair
/// `alpha = delta / sqrt(C1)`:
/// `A = (alpha + beta)^2` is a nonzero integer coprime to `B = y`,
/// `delta^p - conj(delta)^p = 2 d sqrt(-c) C1^m`, and `u_p = +-d'/s`.
pub fn case1_postcheck(
    inst: &EquationInstance,
    p: u32,
    s: i64,
    r: &BigInt,
    sol: &Solution,
) -> bool {
    let Some(delta) = delta(inst, s, r) else {
        return false;
    };
    let c1 = BigInt::from(inst.c1);
    let m = (p - 1) / 2;
    let numerator = if inst.half_integral() {
        r * r
    } else {
        r * r * 4
    };
    let (a, rem) = numerator.div_rem(&c1);
    if !rem.is_zero() || a.is_zero() || !a.gcd(&sol.y).is_one() {
        return false;
    }
    let dp = delta.pow(p);
    let diff_sqrt = dp.doubled().1 - dp.conj().doubled().1;
    // doubled() carries a factor 2 on both sides of the identity
    if diff_sqrt != BigInt::from(inst.d) * 4 * c1.pow(m) {
        return false;
    }
    let Ok(u) = lehmer_term(&LehmerParams::new(a, sol.y.clone()), p as u64) else {
        return false;
    };
    let target = BigInt::from(inst.d_prime()) / BigInt::from(s);
    u.abs() == target.abs()
}
