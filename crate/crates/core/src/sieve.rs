//! Exponent sieve: the finite set of odd primes `p` for which
//! `C1 x^2 + C2 = y^p` can have a coprime solution.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmath;
use crate::lehmer;
use crate::quadfield::FieldData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationInstance {
    pub c1: u64,
    pub c2: u64,
    pub c: u64,
    pub d: u64,
    /// Why the instance falls outside the supported regime, if it does.
    pub invalid_reason: Option<String>,
}

impl EquationInstance {
    pub fn valid(&self) -> bool {
        self.invalid_reason.is_none()
    }

    pub fn require_valid(&self) -> Result<()> {
        match &self.invalid_reason {
            None => Ok(()),
            Some(reason) => Err(Error::InvalidInstance {
                c1: self.c1.to_string(),
                c2: self.c2.to_string(),
                reason: reason.clone(),
            }),
        }
    }

    pub fn field(&self) -> Arc<FieldData> {
        FieldData::new(self.c).expect("c is squarefree by construction")
    }

    /// `-c = 1 (mod 4)`.
    pub fn half_integral(&self) -> bool {
        self.c % 4 == 3
    }

    /// `d' = d`, or `2d` when `-c = 1 (mod 4)`.
    pub fn d_prime(&self) -> u64 {
        if self.half_integral() {
            2 * self.d
        } else {
            self.d
        }
    }

    /// `C1 C2 / 3` is a perfect square, i.e. `c = 3`.
    pub fn c1c2_over_3_square(&self) -> bool {
        self.c == 3
    }

    pub fn class_number(&self) -> u64 {
        self.field().class_number()
    }
}

pub fn make_instance(c1: u64, c2: u64) -> EquationInstance {
    assert!(c1 >= 1 && c2 >= 1, "C1 and C2 must be positive");
    let n = c1 as u128 * c2 as u128;
    let split = intmath::squarefree_split(&BigUint::from(n));
    let c = split.c.to_u64().expect("c fits in u64");
    let d = split.d.to_u64().expect("d fits in u64");
    let invalid_reason = if !intmath::is_squarefree_u64(c1) {
        Some("C1 is not squarefree".to_string())
    } else if c1.gcd(&c2) != 1 {
        Some("gcd(C1, C2) > 1".to_string())
    } else if n % 8 == 7 {
        Some("C1*C2 = 7 mod 8".to_string())
    } else {
        None
    };
    EquationInstance {
        c1,
        c2,
        c,
        d,
        invalid_reason,
    }
}

/// `B_q = q - (-c/q)`.
pub fn b_q(q: u64, c: u64) -> Result<u64> {
    if q.is_multiple_of(2) || c.is_multiple_of(q) || !intmath::is_prime_u64(q) {
        return Err(Error::BadAuxiliaryPrime {
            q: q.to_string(),
            two_c: (2 * c).to_string(),
        });
    }
    let symbol = intmath::jacobi(&-BigInt::from(c), &BigInt::from(q))?;
    Ok((q as i64 - symbol as i64) as u64)
}

/// Coprime solutions with `p = 7` and `y` in {3, 5, 9}.
pub fn special7_hits(inst: &EquationInstance) -> Vec<(u64, BigInt)> {
    let c1 = BigInt::from(inst.c1);
    let c2 = BigInt::from(inst.c2);
    let mut hits = Vec::new();
    for y in lehmer::defective_y_values(7) {
        let y7 = BigInt::from(y).pow(7);
        let rest = &y7 - &c2;
        if rest <= BigInt::zero() {
            continue;
        }
        let (q, r) = rest.div_rem(&c1);
        if !r.is_zero() {
            continue;
        }
        if let Some(x) = intmath::is_square(&q) {
            if x.is_zero() {
                continue;
            }
            if intmath::gcd3(&(&c1 * &x * &x), &c2, &y7).is_one() {
                hits.push((y as u64, x));
            }
        }
    }
    hits
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BqEntry {
    pub q: u64,
    pub b_q: u64,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentReport {
    pub c1: u64,
    pub c2: u64,
    pub base_primes: Vec<u64>,
    pub special7: Vec<(u64, String)>,
    pub class_number: u64,
    pub class_primes: Vec<u64>,
    pub bq_primes: Vec<BqEntry>,
    pub union: Vec<u64>,
}

pub fn exponent_set(inst: &EquationInstance) -> Result<ExponentReport> {
    inst.require_valid()?;
    let mut union: BTreeSet<u64> = [3, 5].into_iter().collect();

    let special7 = special7_hits(inst);
    if !special7.is_empty() {
        union.insert(7);
    }

    let h = inst.class_number();
    let class_primes: Vec<u64> = intmath::factor_u64(h)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| p > 5)
        .collect();
    union.extend(class_primes.iter().copied());

    let mut bq_primes = Vec::new();
    for (q, _) in intmath::factor_u64(inst.d) {
        if q == 2 || inst.c.is_multiple_of(q) {
            continue;
        }
        let bq = b_q(q, inst.c)?;
        for (p, _) in intmath::factor_u64(bq) {
            if p > 5 {
                bq_primes.push(BqEntry { q, b_q: bq, p });
                union.insert(p);
            }
        }
    }

    Ok(ExponentReport {
        c1: inst.c1,
        c2: inst.c2,
        base_primes: vec![3, 5],
        special7: special7
            .into_iter()
            .map(|(y, x)| (y, x.to_string()))
            .collect(),
        class_number: h,
        class_primes,
        bq_primes,
        union: union.into_iter().collect(),
    })
}
