//! Exact integer utilities: factorization, squarefree decomposition,
//! Jacobi symbols, perfect squares and powers, signed divisor lists.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Bases that make Miller-Rabin deterministic below 3.3e24, which covers 2^64.
const MR_BASES_SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
/// Fixed witness set used above 2^64.
const MR_BASES_LARGE: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: BigUint,
    /// `(prime, exponent)` with strictly increasing primes.
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeSplit {
    pub input: BigUint,
    pub c: BigUint,
    pub d: BigUint,
}

/// Miller-Rabin; deterministic below 2^64.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in MR_BASES_LARGE.iter() {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let bases: &[u64] = if n.bits() <= 64 {
        &MR_BASES_SMALL
    } else {
        &MR_BASES_LARGE
    };
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in bases {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of a composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if g == *n {
            // Backtrack one step at a time from the saved position.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

fn factor_cofactor(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = is_square_u(&n) {
        factor_cofactor(r.clone(), out);
        factor_cofactor(r, out);
        return;
    }
    let f = pollard_brent(&n);
    let rest = &n / &f;
    factor_cofactor(f, out);
    factor_cofactor(rest, out);
}

/// Complete factorization: trial division below 10^6, Pollard-Brent above.
pub fn factor(n: &BigUint) -> Factorization {
    assert!(!n.is_zero(), "factor(0) is undefined");
    let mut primes: Vec<BigUint> = Vec::new();
    let mut m = n.clone();
    let mut p: u64 = 2;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        if m.to_u64().is_some_and(|v| v < TRIAL_LIMIT * TRIAL_LIMIT) {
            // No factor below min(sqrt(m), 10^6) remains, so m is prime.
            primes.push(m);
        } else {
            factor_cofactor(m, &mut primes);
        }
    }
    primes.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Factorization {
        value: n.clone(),
        factors,
    }
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor(&BigUint::from(n))
        .factors
        .into_iter()
        .map(|(p, e)| (p.to_u64().unwrap(), e))
        .collect()
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    factor(n.magnitude()).factors.into_iter().map(|(p, _)| p).collect()
}

/// Writes `n = c * d^2` with `c` squarefree.
pub fn squarefree_split(n: &BigUint) -> SquarefreeSplit {
    assert!(!n.is_zero(), "squarefree_split(0) is undefined");
    let mut c = BigUint::one();
    let mut d = BigUint::one();
    for (p, e) in factor(n).factors {
        if e % 2 == 1 {
            c *= &p;
        }
        d *= p.pow(e / 2);
    }
    SquarefreeSplit {
        input: n.clone(),
        c,
        d,
    }
}

pub fn is_squarefree(n: &BigUint) -> bool {
    !n.is_zero() && factor(n).factors.iter().all(|(_, e)| *e == 1)
}

pub fn is_squarefree_u64(n: u64) -> bool {
    is_squarefree(&BigUint::from(n))
}

/// Jacobi symbol `(a / m)` for odd positive `m`.
pub fn jacobi(a: &BigInt, m: &BigInt) -> Result<i8> {
    if m.sign() != Sign::Plus || m.is_even() {
        return Err(Error::EvenModulus(m.to_string()));
    }
    let mut n = m.magnitude().clone();
    let mut a = a.mod_floor(m).magnitude().clone();
    let mut result: i8 = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a %= &n;
    }
    Ok(if n.is_one() { result } else { 0 })
}

pub fn jacobi_i64(a: i64, m: i64) -> Result<i8> {
    jacobi(&BigInt::from(a), &BigInt::from(m))
}

fn is_square_u(n: &BigUint) -> Option<BigUint> {
    // Quick rejection by residues mod 64.
    let low = n.iter_u32_digits().next().unwrap_or(0) & 63;
    if (0x0202_0212_0203_0213u64 >> low) & 1 == 0 {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative square root of `n` when `n` is a perfect square.
pub fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    is_square_u(n.magnitude()).map(BigInt::from)
}

pub fn is_square_u128(n: u128) -> Option<u128> {
    if (0x0202_0212_0203_0213u64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Exact k-th root when `n` is a perfect k-th power.
pub fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    (r.pow(k) == *n).then_some(r)
}

/// Writes `n >= 2` as `base^exp` with `base` not a perfect power.
pub fn perfect_power_decomposition(n: &BigUint) -> (BigUint, u32) {
    let mut base = n.clone();
    let mut exp = 1u32;
    loop {
        let mut reduced = false;
        let max_k = base.bits() as u32;
        for k in 2..=max_k.max(2) {
            if !is_prime_u64(k as u64) {
                continue;
            }
            if let Some(r) = exact_root(&base, k) {
                if r > BigUint::one() {
                    base = r;
                    exp *= k;
                    reduced = true;
                    break;
                }
            }
        }
        if !reduced {
            return (base, exp);
        }
    }
}

/// All divisors of `|n|` with both signs, ordered by absolute value (positive first).
pub fn divisors_signed(n: &BigInt) -> Result<Vec<BigInt>> {
    if n.is_zero() {
        return Err(Error::ZeroDivisors);
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factor(n.magnitude()).factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs
        .into_iter()
        .flat_map(|d| {
            let d = BigInt::from(d);
            [d.clone(), -d]
        })
        .collect())
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}
