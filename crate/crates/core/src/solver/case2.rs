//! Case II: `p` divides the class number (or `p = 3`, `c = 3`). For each ideal
//! class `[b]`, `(C1 x + d sqrt(-c)) = a * d^p` with `d * b = (delta)` gives
//! `C1 x + d sqrt(-c) = mu * eps * delta^p / N(b)^p`, where `eps` generates
//! `a * conj(b)^p`. The `sqrt(-c)`-coordinate is a binary form of degree `p`
//! in `(r, s)`, `delta = (r + s sqrt(-c)) / k`: a Thue equation.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};

use super::thue::{ThueProblem, UnitVariant};
use super::{quotient_above_one, route, CaseTag, Route, Solution};
use crate::error::{Error, Result};
use crate::quadfield::{class_representatives, ramified_part, QuadElement};
use crate::sieve::EquationInstance;

/// A Thue equation together with what is needed to turn its solutions back into `(x, y)`.
#[derive(Clone, Debug)]
pub struct Case2Problem {
    pub p: u32,
    pub thue: ThueProblem,
    /// `mu * eps`.
    pub generator: QuadElement,
    /// `N(b)` for the class representative.
    pub rep_norm: BigInt,
}

/// Coefficients of `(r + s w)^p = P + Q w`, `w = sqrt(-c)`, indexed by the power of `r`.
fn binomial_parts(p: u32, c: u64) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut real = vec![BigInt::zero(); p as usize + 1];
    let mut imag = vec![BigInt::zero(); p as usize + 1];
    let minus_c = -BigInt::from(c);
    for k in 0..=p {
        // term binom(p, k) r^(p-k) (s w)^k; w^k = (-c)^(k/2) or w (-c)^((k-1)/2)
        let b = binomial(BigInt::from(p), BigInt::from(k));
        let idx = (p - k) as usize;
        if k % 2 == 0 {
            real[idx] = b * minus_c.pow(k / 2);
        } else {
            imag[idx] = b * minus_c.pow((k - 1) / 2);
        }
    }
    (real, imag)
}

fn unit_variants(inst: &EquationInstance, p: u32, enabled: bool) -> Vec<(UnitVariant, QuadElement)> {
    let field = inst.field();
    let mut out = vec![(UnitVariant::One, QuadElement::one(&field))];
    if enabled && inst.c == 3 && p == 3 {
        let omega = QuadElement::new(&field, BigInt::from(-1), BigInt::one(), 2).unwrap();
        out.push((UnitVariant::Omega, omega.clone()));
        out.push((UnitVariant::OmegaSquared, omega.mul(&omega).unwrap()));
    }
    out
}

pub fn case2_reduce(inst: &EquationInstance, p: u32, unit_variants_on: bool) -> Result<Vec<Case2Problem>> {
    inst.require_valid()?;
    if route(inst, p) != Route::CaseII {
        return Err(Error::Routing(format!(
            "p = {p} belongs to the integer-root route for (C1, C2) = ({}, {})",
            inst.c1, inst.c2
        )));
    }
    let field = inst.field();
    let a = ramified_part(inst.c1, &field)?;
    let k: u32 = if inst.half_integral() { 2 } else { 1 };
    let (real, imag) = binomial_parts(p, inst.c);
    let mut out = Vec::new();
    for b in class_representatives(&field) {
        let j = a.mul(&b.conj().pow(p))?;
        let Some(eps) = j.is_principal() else {
            continue;
        };
        let rep_norm = b.norm();
        for (variant, mu) in unit_variants(inst, p, unit_variants_on) {
            let g = mu.mul(&eps)?;
            let (g1, g2) = (g.u.clone(), g.v.clone());
            // (g1 + g2 w)(P + Q w) has w-coordinate g1 Q + g2 P
            let coeffs: Vec<BigInt> = (0..=p as usize)
                .map(|i| &g1 * &imag[i] + &g2 * &real[i])
                .collect();
            let target = BigInt::from(inst.d) * g.k as u32 * BigInt::from(k).pow(p) * rep_norm.pow(p);
            let mut thue = ThueProblem::new(coeffs, target);
            thue.unit_variant = variant;
            if let Some(thue) = thue.normalized() {
                out.push(Case2Problem {
                    p,
                    thue,
                    generator: g,
                    rep_norm: rep_norm.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Turns a Thue solution back into a verified solution, if it is one.
pub fn case2_recover(
    inst: &EquationInstance,
    problem: &Case2Problem,
    r: i64,
    s: i64,
    complete: bool,
) -> Option<Solution> {
    let field = inst.field();
    let k = if inst.half_integral() { 2 } else { 1 };
    let delta = QuadElement::new(&field, BigInt::from(r), BigInt::from(s), k).ok()?;
    let value = problem
        .generator
        .mul(&delta.pow(problem.p))
        .ok()?
        .div_exact(&problem.rep_norm.pow(problem.p))?;
    if value.sqrt_part()? != BigInt::from(inst.d) {
        return None;
    }
    let (x, rem) = value.rational_part()?.div_rem(&BigInt::from(inst.c1));
    if !rem.is_zero() || !x.is_positive() {
        return None;
    }
    let y = quotient_above_one(&delta.norm(), &problem.rep_norm)?;
    Solution::new(inst.c1, inst.c2, x, y, problem.p, CaseTag::CaseII, complete)
}
