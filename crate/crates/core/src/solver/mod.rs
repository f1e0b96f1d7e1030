//! Resolution of `C1 x^2 + C2 = y^n`: every `n >= 3` reduces to an odd prime
//! or to 4. Odd primes go through the exponent sieve and then either the
//! integer-root route (Case I) or the Thue route (Case II); `n = 4` is the
//! quartic scan (Case III).

mod case1;
mod case2;
mod case3;
mod thue;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::intmath;
use crate::sieve::{exponent_set, make_instance, special7_hits, EquationInstance};

pub use case1::{case1_build, case1_postcheck, case1_recover, case1_roots, CaseIPolynomial};
pub use case2::{case2_recover, case2_reduce, Case2Problem};
pub use case3::{case3_solve, elliptic_point};
pub use thue::{polynomial_roots, thue_solve_bounded, ThueProblem, ThueSolver, UnitVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    CaseI,
    CaseII,
    CaseIII,
    Special7,
    Oracle,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::CaseI => "CaseI",
            CaseTag::CaseII => "CaseII",
            CaseTag::CaseIII => "CaseIII",
            CaseTag::Special7 => "Special7",
            CaseTag::Oracle => "Oracle",
        })
    }
}

/// A verified coprime solution; the constructor rejects anything else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub c1: u64,
    pub c2: u64,
    pub x: BigInt,
    pub y: BigInt,
    pub n: u32,
    pub case: CaseTag,
    pub complete: bool,
}

impl Solution {
    pub fn new(
        c1: u64,
        c2: u64,
        x: BigInt,
        y: BigInt,
        n: u32,
        case: CaseTag,
        complete: bool,
    ) -> Option<Self> {
        if !x.is_positive() || y.abs() <= BigInt::one() || n < 3 {
            return None;
        }
        let lhs_a = BigInt::from(c1) * &x * &x;
        let c2b = BigInt::from(c2);
        let yn = y.pow(n);
        if &lhs_a + &c2b != yn || !intmath::gcd3(&lhs_a, &c2b, &yn).is_one() {
            return None;
        }
        Some(Solution {
            c1,
            c2,
            x,
            y,
            n,
            case,
            complete,
        })
    }

    pub fn value(&self) -> BigInt {
        self.y.pow(self.n)
    }

    /// `(C1, C2, x, y, n)`, the identity used for deduplication and comparison.
    pub fn key(&self) -> (u64, u64, BigInt, BigInt, u32) {
        (self.c1, self.c2, self.x.clone(), self.y.clone(), self.n)
    }

    /// Describes the other shapes of `y^n` when `y` is itself a perfect power.
    pub fn note(&self) -> Option<String> {
        let (base, e) = intmath::perfect_power_decomposition(self.y.magnitude());
        (e > 1).then(|| {
            format!(
                "y = {base}^{e}, so y^{} = {base}^{}",
                self.n,
                e as u64 * self.n as u64
            )
        })
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*{}^2 + {} = {}^{}",
            self.c1, self.x, self.c2, self.y, self.n
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Search box `|r|, |s| <= thue_bound` for every Thue equation.
    pub thue_bound: u64,
    /// Largest `y` scanned for `n = 4`.
    pub case3_bound: u64,
    /// Try `mu` in `{1, omega, omega^2}` when `c = 3` and `p = 3`.
    pub unit_variants: bool,
    /// Mark Thue-route solutions complete, e.g. when an external bound certifies the box.
    pub thue_certified: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            thue_bound: 1_000_000,
            case3_bound: 1_000_000,
            unit_variants: true,
            thue_certified: false,
        }
    }
}

/// Which route handles the odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    CaseI,
    CaseII,
}

pub fn route(inst: &EquationInstance, p: u32) -> Route {
    if inst.class_number().is_multiple_of(p as u64) || (p == 3 && inst.c1c2_over_3_square()) {
        Route::CaseII
    } else {
        Route::CaseI
    }
}

/// All solutions with exponent the odd prime `p`.
pub fn solve_prime(inst: &EquationInstance, p: u32, opts: &SolveOptions) -> Result<Vec<Solution>> {
    let mut out = Vec::new();
    match route(inst, p) {
        Route::CaseI => {
            let d_prime = BigInt::from(inst.d_prime());
            for s in intmath::divisors_signed(&d_prime)? {
                let s = s.to_i64().expect("divisor of d' fits in i64");
                let poly = case1_build(inst, p, s)?;
                for r in case1_roots(&poly) {
                    if let Some(sol) = case1_recover(inst, p, s, &r) {
                        debug_assert!(case1_postcheck(inst, p, s, &r, &sol));
                        out.push(sol);
                    }
                }
            }
        }
        Route::CaseII => {
            for problem in case2_reduce(inst, p, opts.unit_variants)? {
                for (r, s) in thue_solve_bounded(&problem.thue, opts.thue_bound) {
                    if let Some(sol) = case2_recover(inst, &problem, r, s, opts.thue_certified) {
                        out.push(sol);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn case_rank(case: CaseTag) -> u8 {
    match case {
        CaseTag::CaseI => 0,
        CaseTag::CaseII => 1,
        CaseTag::CaseIII => 2,
        CaseTag::Special7 => 3,
        CaseTag::Oracle => 4,
    }
}

/// Sorts by `(x, y, n)` and keeps one record per key, preferring the
/// complete, lower-numbered case.
pub fn dedup_solutions(sols: &mut Vec<Solution>) {
    sols.sort_by(|a, b| {
        a.key()
            .cmp(&b.key())
            .then((!a.complete).cmp(&!b.complete))
            .then(case_rank(a.case).cmp(&case_rank(b.case)))
    });
    sols.dedup_by(|later, earlier| later.key() == earlier.key());
}

/// Every coprime solution with `n` an odd prime or 4, within the configured bounds.
pub fn solve(c1: u64, c2: u64, opts: &SolveOptions) -> Result<Vec<Solution>> {
    let inst = make_instance(c1, c2);
    inst.require_valid()?;
    let report = exponent_set(&inst)?;
    let mut sols = Vec::new();
    for &p in &report.union {
        sols.extend(solve_prime(&inst, p as u32, opts)?);
    }
    sols.extend(case3_solve(&inst, opts.case3_bound));
    for (y, x) in special7_hits(&inst) {
        sols.extend(Solution::new(
            c1,
            c2,
            x,
            BigInt::from(y),
            7,
            CaseTag::Special7,
            true,
        ));
    }
    dedup_solutions(&mut sols);
    Ok(sols)
}

/// Exact `y` with `N = y * norm`, when `y > 1`.
pub(crate) fn quotient_above_one(n: &BigInt, by: &BigInt) -> Option<BigInt> {
    let (q, r) = n.div_rem(by);
    (r.is_zero() && q > BigInt::one()).then_some(q)
}
