//! Dense univariate integer polynomials and exact integer-root finding.
//!
//! Integer roots are isolated with a Sturm sequence of the squarefree part
//! and integer bisection inside the Cauchy root bound, so no factorization
//! of the constant term is ever needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intmath;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i)
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the positive content.
    fn primitive(mut self) -> Self {
        let g = self.content();
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
        }
        self
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` and the sign of that multiplier.
    fn pseudo_rem(&self, b: &IntPoly) -> (IntPoly, bool) {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = 0u32;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + i] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            steps += 1;
        }
        let da = self.degree().unwrap_or(0);
        let total = if da >= db { (da - db + 1) as u32 } else { 0 };
        // Pad so the multiplier is always lc(b)^(da - db + 1).
        for _ in steps..total {
            for c in r.iter_mut() {
                *c *= &lb;
            }
        }
        let negative_multiplier = lb.is_negative() && total % 2 == 1;
        (IntPoly::new(r), negative_multiplier)
    }

    /// Exact quotient `self / b` over Q, scaled to a primitive integer polynomial.
    fn div_primitive(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().unwrap();
        let lb = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let da = self.degree().unwrap();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            // Keep everything integral by scaling the running remainder and quotient.
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for c in q.iter_mut() {
                *c *= &lb;
            }
            let lr = r[k + db].clone() / &lb;
            q[k] = lr.clone();
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] -= &lr * bc;
            }
        }
        let mut out = IntPoly::new(q).primitive();
        if out.leading().is_some_and(|c| c.is_negative()) {
            for c in &mut out.coeffs {
                *c = -&*c;
            }
        }
        out
    }

    /// Sturm chain `p, p', -rem(p, p'), ...` up to positive scaling.
    fn sturm_chain(&self) -> Vec<IntPoly> {
        let mut chain = vec![self.clone(), self.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].degree().unwrap_or(0) == 0 {
                break;
            }
            let (r, neg) = chain[n - 2].pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let mut r = r.primitive();
            if !neg {
                for c in &mut r.coeffs {
                    *c = -&*c;
                }
            }
            chain.push(r);
        }
        chain
    }

    /// Squarefree part, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let chain = self.sturm_chain();
        let g = chain.last().unwrap();
        if g.degree().unwrap_or(0) == 0 {
            let mut out = self.clone().primitive();
            if out.leading().unwrap().is_negative() {
                for c in &mut out.coeffs {
                    *c = -&*c;
                }
            }
            return out;
        }
        self.div_primitive(g)
    }

    /// `1 + max |a_i / a_n|`, rounded up; every complex root is smaller in modulus.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self.leading().unwrap().abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + max.div_ceil(&lead)
    }

    /// Splits off the largest power of `X` dividing the polynomial: `X^k * rest`.
    fn strip_zero_roots(&self) -> (usize, IntPoly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, IntPoly::new(self.coeffs[k..].to_vec()))
    }
}

fn sign_changes(chain: &[IntPoly], x: &BigInt) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots of the squarefree `chain[0]` in `(lo, hi]`.
fn count_roots(chain: &[IntPoly], lo: &BigInt, hi: &BigInt) -> usize {
    sign_changes(chain, lo).saturating_sub(sign_changes(chain, hi))
}

fn isolate(chain: &[IntPoly], lo: BigInt, hi: BigInt, out: &mut Vec<BigInt>) {
    let count = count_roots(chain, &lo, &hi);
    if count == 0 {
        return;
    }
    if &hi - &lo == BigInt::one() {
        if chain[0].eval(&hi).is_zero() {
            out.push(hi);
        }
        return;
    }
    let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
    isolate(chain, lo, mid.clone(), out);
    isolate(chain, mid, hi, out);
}

/// All integer roots, ascending and without multiplicity.
pub fn integer_roots(poly: &IntPoly) -> Vec<BigInt> {
    assert!(!poly.is_zero(), "the zero polynomial has every integer as a root");
    let (k, rest) = poly.strip_zero_roots();
    let mut roots = Vec::new();
    if k > 0 {
        roots.push(BigInt::zero());
    }
    if rest.degree().unwrap_or(0) >= 1 {
        let sf = rest.squarefree_part();
        let chain = sf.sturm_chain();
        let bound = sf.cauchy_bound();
        isolate(&chain, -&bound - 1, bound, &mut roots);
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Rational-root-theorem route: test every signed divisor of the constant term.
/// Needs a factorization of the constant term; meant for small inputs.
pub fn integer_roots_by_divisors(poly: &IntPoly) -> Vec<BigInt> {
    assert!(!poly.is_zero());
    let (k, rest) = poly.strip_zero_roots();
    let mut roots = Vec::new();
    if k > 0 {
        roots.push(BigInt::zero());
    }
    if rest.degree().unwrap_or(0) >= 1 {
        let a0 = &rest.coeffs()[0];
        for d in intmath::divisors_signed(a0).unwrap() {
            if rest.eval(&d).is_zero() {
                roots.push(d);
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn root_examples() {
        // 5X^4 - 20X^2
        let p = IntPoly::from_i64(&[0, 0, -20, 0, 5]);
        assert_eq!(integer_roots(&p), ints(&[-2, 0, 2]));
        let p = IntPoly::from_i64(&[8, 0, -20, 0, 5]);
        assert!(integer_roots(&p).is_empty());
        assert!(integer_roots(&IntPoly::from_i64(&[7])).is_empty());
    }

    #[test]
    fn repeated_and_large_roots() {
        // (X - 3)^3 (X + 1000003)^2 (X^2 + 1)
        let mut p = IntPoly::from_i64(&[1]);
        let mul = |a: &IntPoly, b: &[i64]| {
            let b = IntPoly::from_i64(b);
            let mut out = vec![BigInt::zero(); a.coeffs().len() + b.coeffs().len() - 1];
            for (i, x) in a.coeffs().iter().enumerate() {
                for (j, y) in b.coeffs().iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            IntPoly::new(out)
        };
        for f in [&[-3, 1][..], &[-3, 1], &[-3, 1], &[1_000_003, 1], &[1_000_003, 1], &[1, 0, 1]] {
            p = mul(&p, f);
        }
        assert_eq!(integer_roots(&p), ints(&[-1_000_003, 3]));
        let sf = p.squarefree_part();
        assert_eq!(sf.degree(), Some(4));
    }

    #[test]
    fn huge_constant_term() {
        // X^2 - (10^40 + 7)^2 has roots +-(10^40 + 7) and a constant term we never factor.
        let r: BigInt = BigInt::from(10).pow(40) + 7;
        let p = IntPoly::new(vec![-(&r * &r), BigInt::zero(), BigInt::one()]);
        assert_eq!(integer_roots(&p), vec![-r.clone(), r]);
    }

    proptest! {
        #[test]
        fn sturm_route_matches_divisor_route(
            roots in proptest::collection::vec(-40i64..40, 0..4),
            extra in proptest::collection::vec(-9i64..9, 1..4),
            lead in 1i64..4,
        ) {
            let mut coeffs = vec![BigInt::from(lead)];
            for r in &roots {
                // multiply by (X - r)
                let mut next = vec![BigInt::zero(); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * r;
                }
                coeffs = next;
            }
            // times an arbitrary factor so non-root noise is present
            let mut out = vec![BigInt::zero(); coeffs.len() + extra.len() - 1];
            for (i, c) in coeffs.iter().enumerate() {
                for (j, e) in extra.iter().enumerate() {
                    out[i + j] += c * e;
                }
            }
            let p = IntPoly::new(out);
            prop_assume!(!p.is_zero());
            prop_assert_eq!(integer_roots(&p), integer_roots_by_divisors(&p));
        }
    }
}
