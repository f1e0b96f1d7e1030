//! Arithmetic in the maximal order of an imaginary quadratic field
//! `K = Q(sqrt(-c))`: elements, ideals in Hermite normal form, class
//! numbers by reduced-form counting, and principality testing with
//! generator extraction.
//!
//! Internally elements and ideals are written in the integral basis
//! `(1, w)` where `w = sqrt(-c)` when `-c != 1 (mod 4)` and
//! `w = (1 + sqrt(-c)) / 2` otherwise. `w` satisfies `w^2 = t*w - n`
//! with `t = tr(w)` and `n = N(w)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use once_cell::sync::{Lazy, OnceCell};

use crate::error::{Error, Result};
use crate::intmath;

static CLASS_NUMBERS: Lazy<RwLock<HashMap<u64, u64>>> = Lazy::new(|| RwLock::new(HashMap::new()));

#[derive(Debug)]
pub struct FieldData {
    c: u64,
    class_number: OnceCell<u64>,
}

impl PartialEq for FieldData {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}
impl Eq for FieldData {}

impl FieldData {
    pub fn new(c: u64) -> Result<Arc<Self>> {
        if c == 0 || !intmath::is_squarefree_u64(c) {
            return Err(Error::NotSquarefree(c.to_string()));
        }
        Ok(Arc::new(FieldData {
            c,
            class_number: OnceCell::new(),
        }))
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// True when `-c = 1 (mod 4)`, i.e. the ring of integers has half-integral elements.
    pub fn half_integral(&self) -> bool {
        self.c % 4 == 3
    }

    pub fn discriminant(&self) -> i64 {
        if self.half_integral() {
            -(self.c as i64)
        } else {
            -4 * self.c as i64
        }
    }

    pub fn unit_order(&self) -> u32 {
        match self.c {
            1 => 4,
            3 => 6,
            _ => 2,
        }
    }

    pub fn class_number(&self) -> u64 {
        *self.class_number.get_or_init(|| class_number_cached(self.c))
    }

    fn omega_trace(&self) -> BigInt {
        if self.half_integral() {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }

    fn omega_norm(&self) -> BigInt {
        if self.half_integral() {
            BigInt::from((self.c + 1) / 4)
        } else {
            BigInt::from(self.c)
        }
    }

    /// Norm of `x + y*w`.
    fn basis_norm(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * x + self.omega_trace() * x * y + self.omega_norm() * y * y
    }

    /// Product in `(1, w)` coordinates.
    fn basis_mul(&self, a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        // (a0 + a1 w)(b0 + b1 w) with w^2 = t w - n
        let t = self.omega_trace();
        let n = self.omega_norm();
        let ww = &a.1 * &b.1;
        (
            &a.0 * &b.0 - &n * &ww,
            &a.0 * &b.1 + &a.1 * &b.0 + &t * &ww,
        )
    }
}

fn class_number_cached(c: u64) -> u64 {
    if let Some(h) = CLASS_NUMBERS.read().unwrap().get(&c) {
        return *h;
    }
    let h = count_reduced_forms(c);
    CLASS_NUMBERS.write().unwrap().insert(c, h);
    h
}

/// Reduced primitive forms `(a, b, c')` of the field discriminant.
fn reduced_forms(c: u64) -> Vec<(i64, i64, i64)> {
    let d: i64 = if c % 4 == 3 { -(c as i64) } else { -4 * c as i64 };
    let mut forms = Vec::new();
    let a_max = ((-d) / 3).sqrt() + 1;
    for a in 1..=a_max {
        // -a < b <= a with b = D (mod 2)
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let cc = num / (4 * a);
                let ok = cc > a || (cc == a && b >= 0);
                if ok && a.gcd(&b).gcd(&cc) == 1 {
                    forms.push((a, b, cc));
                }
            }
        }
    }
    forms
}

fn count_reduced_forms(c: u64) -> u64 {
    reduced_forms(c).len() as u64
}

/// Class number of the maximal order of `Q(sqrt(-c))`.
pub fn class_number(c: u64) -> Result<u64> {
    if c == 0 || !intmath::is_squarefree_u64(c) {
        return Err(Error::NotSquarefree(c.to_string()));
    }
    Ok(class_number_cached(c))
}

/// `(u + v*sqrt(-c)) / k` with `k` in `{1, 2}`.
#[derive(Clone, Debug)]
pub struct QuadElement {
    pub u: BigInt,
    pub v: BigInt,
    pub k: u8,
    field: Arc<FieldData>,
}

impl PartialEq for QuadElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.u == other.u && self.v == other.v && self.k == other.k
    }
}
impl Eq for QuadElement {}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.v.is_negative() { '-' } else { '+' };
        let body = format!("{} {} {}*sqrt(-{})", self.u, sign, self.v.abs(), self.field.c);
        if self.k == 1 {
            f.write_str(&body)
        } else {
            write!(f, "({})/{}", body, self.k)
        }
    }
}

impl QuadElement {
    pub fn new(field: &Arc<FieldData>, u: BigInt, v: BigInt, k: u8) -> Result<Self> {
        match k {
            1 => {}
            2 => {
                if !field.half_integral() {
                    return Err(Error::InvalidElement(format!(
                        "denominator 2 needs -c = 1 mod 4 (c = {})",
                        field.c
                    )));
                }
                if (&u - &v).is_odd() {
                    return Err(Error::InvalidElement(format!(
                        "({u} + {v}*sqrt(-{}))/2 is not integral",
                        field.c
                    )));
                }
            }
            _ => return Err(Error::InvalidElement(format!("denominator {k}"))),
        }
        Ok(QuadElement {
            u,
            v,
            k,
            field: field.clone(),
        }
        .canonical())
    }

    pub fn from_ints(field: &Arc<FieldData>, u: i64, v: i64) -> Self {
        QuadElement::new(field, BigInt::from(u), BigInt::from(v), 1).unwrap()
    }

    pub fn one(field: &Arc<FieldData>) -> Self {
        QuadElement::from_ints(field, 1, 0)
    }

    pub fn field(&self) -> &Arc<FieldData> {
        &self.field
    }

    fn canonical(mut self) -> Self {
        if self.k == 2 && self.u.is_even() && self.v.is_even() {
            self.u /= 2;
            self.v /= 2;
            self.k = 1;
        }
        self
    }

    /// `N(x) = (u^2 + c v^2) / k^2`; exact because `x` is integral.
    pub fn norm(&self) -> BigInt {
        let n = &self.u * &self.u + BigInt::from(self.field.c) * &self.v * &self.v;
        n / (self.k as u32 * self.k as u32)
    }

    pub fn conj(&self) -> Self {
        QuadElement {
            u: self.u.clone(),
            v: -&self.v,
            k: self.k,
            field: self.field.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        QuadElement {
            u: -&self.u,
            v: -&self.v,
            k: self.k,
            field: self.field.clone(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.field, &other.field)?;
        let c = BigInt::from(self.field.c);
        let mut u = &self.u * &other.u - &c * &self.v * &other.v;
        let mut v = &self.u * &other.v + &self.v * &other.u;
        let mut k = self.k as u32 * other.k as u32;
        if k == 4 {
            // Product of two half-integral elements is integral again.
            debug_assert!(u.is_even() && v.is_even());
            u /= 2;
            v /= 2;
            k = 2;
        }
        Ok(QuadElement {
            u,
            v,
            k: k as u8,
            field: self.field.clone(),
        }
        .canonical())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// `self / n` when that quotient is still integral.
    pub fn div_exact(&self, n: &BigInt) -> Option<Self> {
        if n.is_zero() {
            return None;
        }
        let (qu, ru) = self.u.div_rem(n);
        let (qv, rv) = self.v.div_rem(n);
        if ru.is_zero() && rv.is_zero() {
            return Some(
                QuadElement {
                    u: qu,
                    v: qv,
                    k: self.k,
                    field: self.field.clone(),
                }
                .canonical(),
            );
        }
        // (u + v w)/(k n) may still be half-integral when k = 1.
        if self.k == 1 && self.field.half_integral() {
            // (u + v w)/n = (2u/n + (2v/n) w)/2
            let u2: BigInt = &self.u * 2;
            let v2: BigInt = &self.v * 2;
            let (qu, ru) = u2.div_rem(n);
            let (qv, rv) = v2.div_rem(n);
            if ru.is_zero() && rv.is_zero() {
                return QuadElement::new(&self.field, qu, qv, 2).ok();
            }
        }
        None
    }

    /// Returns `(2u, 2v)` scaled so the element equals `(U + V sqrt(-c)) / 2`.
    pub fn doubled(&self) -> (BigInt, BigInt) {
        if self.k == 2 {
            (self.u.clone(), self.v.clone())
        } else {
            (&self.u * 2, &self.v * 2)
        }
    }

    /// Rational part `u/k` when it is an integer.
    pub fn rational_part(&self) -> Option<BigInt> {
        (self.k == 1 || self.u.is_even()).then(|| &self.u / self.k as u32)
    }

    /// Coefficient of `sqrt(-c)` when it is an integer.
    pub fn sqrt_part(&self) -> Option<BigInt> {
        (self.k == 1 || self.v.is_even()).then(|| &self.v / self.k as u32)
    }

    fn to_basis(&self) -> (BigInt, BigInt) {
        if self.field.half_integral() {
            // (u + v sqrt(-c))/k = a + b (1 + sqrt(-c))/2
            let b = &self.v * (2 / self.k as u32);
            let a = (&self.u * (2 / self.k as u32) - &b) / 2;
            (a, b)
        } else {
            (self.u.clone(), self.v.clone())
        }
    }

    fn from_basis(field: &Arc<FieldData>, a: BigInt, b: BigInt) -> Self {
        if field.half_integral() {
            QuadElement::new(field, a * 2 + &b, b, 2).unwrap()
        } else {
            QuadElement::new(field, a, b, 1).unwrap()
        }
    }
}

fn check_same(a: &Arc<FieldData>, b: &Arc<FieldData>) -> Result<()> {
    if a.c != b.c {
        return Err(Error::FieldMismatch(a.c.to_string(), b.c.to_string()));
    }
    Ok(())
}

/// Lattice `Z*A + Z*(B + C*w)` in Hermite normal form: `A, C > 0`,
/// `C | A`, `C | B`, `0 <= B < A`.
#[derive(Clone, Debug)]
pub struct QuadIdeal {
    a11: BigInt,
    a12: BigInt,
    a22: BigInt,
    field: Arc<FieldData>,
}

impl PartialEq for QuadIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.a11 == other.a11
            && self.a12 == other.a12
            && self.a22 == other.a22
    }
}
impl Eq for QuadIdeal {}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.scale();
        if g.is_one() {
            write!(f, "[{}, ({} + sqrt({}))/2]", self.a(), self.b(), self.field.discriminant())
        } else {
            write!(
                f,
                "{}*[{}, ({} + sqrt({}))/2]",
                g,
                self.a(),
                self.b(),
                self.field.discriminant()
            )
        }
    }
}

/// Hermite normal form of the lattice spanned by `vectors` in `Z^2`.
fn hnf(vectors: &[(BigInt, BigInt)]) -> (BigInt, BigInt, BigInt) {
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let mut c = BigInt::zero();
    for (x, y) in vectors {
        if y.is_zero() {
            a = a.gcd(x);
            continue;
        }
        if c.is_zero() {
            b = x.clone();
            c = y.clone();
            continue;
        }
        let e = c.extended_gcd(y);
        let g = e.gcd.clone();
        let nb = &e.x * &b + &e.y * x;
        // Combination killing the second coordinate.
        let zero_row = (y / &g) * &b - (&c / &g) * x;
        a = a.gcd(&zero_row);
        b = nb;
        c = g;
    }
    if c.is_negative() {
        c = -c;
        b = -b;
    }
    assert!(!a.is_zero() && !c.is_zero(), "lattice is not full rank");
    let b = b.mod_floor(&a);
    (a, b, c)
}

impl QuadIdeal {
    fn from_lattice(field: &Arc<FieldData>, gens: &[(BigInt, BigInt)]) -> Self {
        let (a11, a12, a22) = hnf(gens);
        QuadIdeal {
            a11,
            a12,
            a22,
            field: field.clone(),
        }
    }

    /// Ideal generated (as an O_K-module) by the given elements.
    pub fn generated_by(field: &Arc<FieldData>, elems: &[QuadElement]) -> Result<Self> {
        let omega = (BigInt::zero(), BigInt::one());
        let mut gens = Vec::with_capacity(elems.len() * 2);
        for e in elems {
            check_same(field, &e.field)?;
            let b = e.to_basis();
            gens.push(field.basis_mul(&b, &omega));
            gens.push(b);
        }
        Ok(Self::from_lattice(field, &gens))
    }

    pub fn principal(g: &QuadElement) -> Self {
        Self::generated_by(&g.field, std::slice::from_ref(g)).unwrap()
    }

    pub fn unit(field: &Arc<FieldData>) -> Self {
        Self::principal(&QuadElement::one(field))
    }

    /// `n * O_K` for a positive integer `n`.
    pub fn rational(field: &Arc<FieldData>, n: &BigInt) -> Self {
        Self::principal(&QuadElement::new(field, n.clone(), BigInt::zero(), 1).unwrap())
    }

    /// Primitive ideal `Z*a + Z*(b + sqrt(D))/2`; requires `4a | b^2 - D`.
    pub fn from_ab(field: &Arc<FieldData>, a: &BigInt, b: &BigInt) -> Result<Self> {
        let d = BigInt::from(field.discriminant());
        if !a.is_positive() || !(b * b - &d).is_multiple_of(&(a * 4)) {
            return Err(Error::InvalidElement(format!(
                "[{a}, ({b} + sqrt({d}))/2] is not an ideal"
            )));
        }
        // (b + sqrt(D))/2 in (1, w) coordinates.
        let second = if field.half_integral() {
            ((b - 1) / 2, BigInt::one())
        } else {
            (b / 2, BigInt::one())
        };
        Ok(Self::from_lattice(field, &[(a.clone(), BigInt::zero()), second]))
    }

    pub fn field(&self) -> &Arc<FieldData> {
        &self.field
    }

    /// Largest rational integer dividing the ideal.
    pub fn scale(&self) -> &BigInt {
        &self.a22
    }

    /// `a` of the primitive part `Z*a + Z*(b + sqrt(D))/2`.
    pub fn a(&self) -> BigInt {
        &self.a11 / &self.a22
    }

    /// `b` of the primitive part, normalized to `0 <= b < 2a`.
    pub fn b(&self) -> BigInt {
        let bp = &self.a12 / &self.a22;
        if self.field.half_integral() {
            bp * 2 + 1
        } else {
            bp * 2
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.a11 * &self.a22
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.a11.is_one() && self.a22.is_one()
    }

    fn basis(&self) -> [(BigInt, BigInt); 2] {
        [
            (self.a11.clone(), BigInt::zero()),
            (self.a12.clone(), self.a22.clone()),
        ]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.field, &other.field)?;
        let mut gens = Vec::with_capacity(4);
        for x in self.basis().iter() {
            for y in other.basis().iter() {
                gens.push(self.field.basis_mul(x, y));
            }
        }
        Ok(Self::from_lattice(&self.field, &gens))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadIdeal::unit(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    pub fn conj(&self) -> Self {
        // conj(w) = t - w
        let t = self.field.omega_trace();
        let gens = [
            (self.a11.clone(), BigInt::zero()),
            (&self.a12 + &t * &self.a22, -&self.a22),
        ];
        Self::from_lattice(&self.field, &gens)
    }

    /// Lagrange-reduced basis of the lattice for the norm form.
    fn reduced_basis(&self) -> [(BigInt, BigInt); 2] {
        let f = &self.field;
        let q = |v: &(BigInt, BigInt)| f.basis_norm(&v.0, &v.1);
        let [mut v1, mut v2] = self.basis();
        loop {
            if q(&v1) > q(&v2) {
                std::mem::swap(&mut v1, &mut v2);
            }
            let q1 = q(&v1);
            let sum = (&v1.0 + &v2.0, &v1.1 + &v2.1);
            let cross = q(&sum) - &q1 - q(&v2);
            // Nearest integer to cross / (2 q1).
            let mu = (&cross + &q1).div_floor(&(&q1 * 2));
            if mu.is_zero() {
                break;
            }
            v2 = (&v2.0 - &mu * &v1.0, &v2.1 - &mu * &v1.1);
            if q(&v2) >= q1 {
                break;
            }
        }
        if q(&v1) > q(&v2) {
            std::mem::swap(&mut v1, &mut v2);
        }
        [v1, v2]
    }

    /// All elements of the ideal with norm at most `bound`.
    pub fn elements_of_norm_at_most(&self, bound: &BigInt) -> Vec<QuadElement> {
        let f = &self.field;
        let [v1, v2] = self.reduced_basis();
        let q = |v: &(BigInt, BigInt)| f.basis_norm(&v.0, &v.1);
        // Q(m, n) = qa m^2 + qb m n + qc n^2 in the reduced basis.
        let qa = q(&v1);
        let qc = q(&v2);
        let qb = q(&(&v1.0 + &v2.0, &v1.1 + &v2.1)) - &qa - &qc;
        let disc: BigInt = &qb * &qb - &qa * &qc * 4; // negative
        let neg_disc = -disc;
        let spread: BigInt = &qa * bound * 4 / &neg_disc;
        let n_max: BigInt = spread.sqrt() + 1;
        let mut out = Vec::new();
        let mut n = -n_max.clone();
        while n <= n_max {
            // qa m^2 + (qb n) m + (qc n^2 - bound) <= 0
            let bm = &qb * &n;
            let cm = &qc * &n * &n - bound;
            let dm: BigInt = &bm * &bm - &qa * &cm * 4;
            if !dm.is_negative() {
                let s: BigInt = dm.sqrt() + 1;
                let lo = (-&bm - &s).div_floor(&(&qa * 2));
                let hi = (-&bm + &s).div_ceil(&(&qa * 2));
                let mut m = lo;
                while m <= hi {
                    let x = &m * &v1.0 + &n * &v2.0;
                    let y = &m * &v1.1 + &n * &v2.1;
                    if f.basis_norm(&x, &y) <= *bound {
                        out.push(QuadElement::from_basis(f, x, y));
                    }
                    m += 1;
                }
            }
            n += 1;
        }
        out
    }

    /// A generator when the ideal is principal.
    pub fn is_principal(&self) -> Option<QuadElement> {
        let norm = self.norm();
        self.elements_of_norm_at_most(&norm)
            .into_iter()
            .find(|e| e.norm() == norm)
    }

    /// True when `self` and `other` lie in the same ideal class.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(&other.conj())?.is_principal().is_some())
    }
}

/// The prime ideal above a prime `p | D` (ramified).
fn ramified_prime(field: &Arc<FieldData>, p: &BigInt) -> QuadIdeal {
    let d = BigInt::from(field.discriminant());
    let four_p = p * 4;
    let mut b = BigInt::zero();
    // b^2 = D mod 4p has a solution in [0, 2p).
    while b < p * 2 {
        if (&b * &b - &d).is_multiple_of(&four_p) {
            return QuadIdeal::from_ab(field, p, &b).unwrap();
        }
        b += 1;
    }
    unreachable!("{p} does not ramify in Q(sqrt(-{}))", field.c)
}

/// `a = p_1 ... p_r` for `C1 = p_1 ... p_r`; satisfies `a^2 = C1 O_K`.
pub fn ramified_part(c1: u64, field: &Arc<FieldData>) -> Result<QuadIdeal> {
    if c1 == 0 || !field.c.is_multiple_of(c1) {
        return Err(Error::NotRamified {
            c1: c1.to_string(),
            c: field.c.to_string(),
        });
    }
    let mut ideal = QuadIdeal::unit(field);
    for (p, _) in intmath::factor_u64(c1) {
        ideal = ideal.mul(&ramified_prime(field, &BigInt::from(p)))?;
    }
    Ok(ideal)
}

/// One ideal per class, from the reduced forms of discriminant `D`.
pub fn class_representatives(field: &Arc<FieldData>) -> Vec<QuadIdeal> {
    reduced_forms(field.c)
        .into_iter()
        .map(|(a, b, _)| {
            // form (a, b, c) <-> ideal [a, (-b + sqrt(D))/2]
            let bb = (-b).rem_euclid(2 * a);
            QuadIdeal::from_ab(field, &BigInt::from(a), &BigInt::from(bb)).unwrap()
        })
        .collect()
}

/// Every nonzero integral ideal of norm at most `bound`: `g * [a, (b + sqrt(D))/2]`
/// with `g^2 a <= bound`, `0 <= b < 2a` and `b^2 = D (mod 4a)`.
pub fn ideals_of_norm_at_most(field: &Arc<FieldData>, bound: u64) -> Vec<QuadIdeal> {
    let d = field.discriminant();
    let mut out = Vec::new();
    let mut g = 1u64;
    while g * g <= bound {
        let scale = QuadIdeal::rational(field, &BigInt::from(g));
        for a in 1..=(bound / (g * g)) as i64 {
            for b in 0..2 * a {
                if (b * b - d) % (4 * a) == 0 {
                    let prim = QuadIdeal::from_ab(field, &BigInt::from(a), &BigInt::from(b)).unwrap();
                    out.push(scale.mul(&prim).unwrap());
                }
            }
        }
        g += 1;
    }
    out
}

/// Class number from ideals alone: every class meets the ideals of norm at
/// most the Minkowski bound `(2/pi) sqrt(|D|)`, which are then partitioned by
/// principality of `I * conj(J)`.
pub fn class_number_by_ideals(c: u64) -> Result<u64> {
    let field = FieldData::new(c)?;
    let bound = (2.0 / std::f64::consts::PI * (field.discriminant().unsigned_abs() as f64).sqrt()).floor() as u64;
    let mut reps: Vec<QuadIdeal> = Vec::new();
    for ideal in ideals_of_norm_at_most(&field, bound.max(1)) {
        let mut known = false;
        for r in &reps {
            if ideal.equivalent(r)? {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(ideal);
        }
    }
    Ok(reps.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(f: &Arc<FieldData>, u: i64, v: i64, k: u8) -> QuadElement {
        QuadElement::new(f, BigInt::from(u), BigInt::from(v), k).unwrap()
    }

    #[test]
    fn field_data() {
        let f = FieldData::new(1).unwrap();
        assert_eq!((f.discriminant(), f.unit_order()), (-4, 4));
        let f = FieldData::new(3).unwrap();
        assert_eq!((f.discriminant(), f.unit_order()), (-3, 6));
        let f = FieldData::new(5).unwrap();
        assert_eq!((f.discriminant(), f.unit_order()), (-20, 2));
        assert!(FieldData::new(12).is_err());
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(1).unwrap(), 1);
        assert_eq!(class_number(2).unwrap(), 1);
        assert_eq!(class_number(110).unwrap(), 12);
        assert_eq!(class_number(5).unwrap(), 2);
        assert_eq!(class_number(23).unwrap(), 3);
        assert_eq!(class_number(163).unwrap(), 1);
        assert!(class_number(4).is_err());
        // Heegner numbers are exactly the class-number-one fields.
        let ones: Vec<u64> = (1..200)
            .filter(|&c| intmath::is_squarefree_u64(c))
            .filter(|&c| class_number(c).unwrap() == 1)
            .collect();
        assert_eq!(ones, vec![1, 2, 3, 7, 11, 19, 43, 67, 163]);
    }

    #[test]
    fn element_products() {
        let f2 = FieldData::new(2).unwrap();
        let x = el(&f2, 2, 1, 1);
        assert_eq!(x.mul(&x).unwrap(), el(&f2, 2, 4, 1));
        assert_eq!(x.mul(&QuadElement::one(&f2)).unwrap(), x);
        let f7 = FieldData::new(7).unwrap();
        let a = el(&f7, 1, 1, 2);
        assert_eq!(a.mul(&a.conj()).unwrap(), el(&f7, 2, 0, 1));
        let g = FieldData::new(3).unwrap();
        assert!(el(&f2, 1, 0, 1).mul(&el(&g, 1, 0, 1)).is_err());
    }

    #[test]
    fn element_powers() {
        let f2 = FieldData::new(2).unwrap();
        assert_eq!(el(&f2, -2, 1, 1).pow(5), el(&f2, 88, 4, 1));
        assert_eq!(el(&f2, 2, 1, 1).pow(3), el(&f2, -4, 10, 1));
        let x = el(&f2, 7, -3, 1);
        assert_eq!(x.pow(1), x);
    }

    #[test]
    fn exact_division() {
        let f3 = FieldData::new(3).unwrap();
        // (-80738 + 80738 w) / 161476 = (-1 + w)/2
        let x = el(&f3, -80738, 80738, 1);
        assert_eq!(x.div_exact(&BigInt::from(161476)), Some(el(&f3, -1, 1, 2)));
        assert_eq!(el(&f3, 6, 4, 1).div_exact(&BigInt::from(2)), Some(el(&f3, 3, 2, 1)));
        assert_eq!(el(&f3, 6, 2, 1).div_exact(&BigInt::from(4)), Some(el(&f3, 3, 1, 2)));
        assert_eq!(el(&f3, 6, 4, 1).div_exact(&BigInt::from(4)), None);
        let f2 = FieldData::new(2).unwrap();
        assert_eq!(el(&f2, 6, 4, 1).div_exact(&BigInt::from(4)), None);
        assert_eq!(el(&f2, 6, 4, 1).div_exact(&BigInt::zero()), None);
    }

    #[test]
    fn element_validation() {
        let f2 = FieldData::new(2).unwrap();
        assert!(QuadElement::new(&f2, BigInt::from(1), BigInt::from(1), 2).is_err());
        let f7 = FieldData::new(7).unwrap();
        assert!(QuadElement::new(&f7, BigInt::from(1), BigInt::from(2), 2).is_err());
        assert_eq!(el(&f7, 2, 4, 2), el(&f7, 1, 2, 1));
    }

    #[test]
    fn ideal_examples() {
        let f2 = FieldData::new(2).unwrap();
        let unit = QuadIdeal::unit(&f2);
        let p2 = ramified_part(2, &f2).unwrap();
        assert_eq!(p2.norm(), BigInt::from(2));
        assert_eq!(p2.mul(&unit).unwrap(), p2);
        assert_eq!(p2.mul(&p2).unwrap(), QuadIdeal::rational(&f2, &BigInt::from(2)));
        assert_eq!(ramified_part(1, &f2).unwrap(), unit);
        assert!(ramified_part(3, &f2).is_err());

        let f5 = FieldData::new(5).unwrap();
        let p5 = ramified_part(5, &f5).unwrap();
        assert_eq!(p5.norm(), BigInt::from(5));
        assert_eq!(p5.mul(&p5).unwrap(), QuadIdeal::rational(&f5, &BigInt::from(5)));
    }

    #[test]
    fn principality_examples() {
        let f2 = FieldData::new(2).unwrap();
        let g = QuadIdeal::unit(&f2).is_principal().unwrap();
        assert!(g.is_unit());

        let f5 = FieldData::new(5).unwrap();
        let above2 = ramified_prime(&f5, &BigInt::from(2));
        assert_eq!(above2.norm(), BigInt::from(2));
        assert!(above2.is_principal().is_none());

        let gen = el(&f2, 3, 1, 1);
        let ideal = QuadIdeal::principal(&gen);
        let found = ideal.is_principal().unwrap();
        assert_eq!(found.norm(), BigInt::from(11));
        assert_eq!(QuadIdeal::principal(&found), ideal);
    }

    #[test]
    fn representatives_examples() {
        let f2 = FieldData::new(2).unwrap();
        assert_eq!(class_representatives(&f2), vec![QuadIdeal::unit(&f2)]);
        let f5 = FieldData::new(5).unwrap();
        let reps = class_representatives(&f5);
        assert_eq!(reps.len(), 2);
        assert!(reps[0].is_unit_ideal());
        assert_eq!(reps[1].norm(), BigInt::from(2));
        for c in (1..=200u64).filter(|&c| intmath::is_squarefree_u64(c)) {
            let f = FieldData::new(c).unwrap();
            let reps = class_representatives(&f);
            assert_eq!(reps.len() as u64, f.class_number(), "c = {c}");
            let bound = ((-f.discriminant()) as f64 / 3.0).sqrt();
            for (i, r) in reps.iter().enumerate() {
                assert!(r.norm().to_string().parse::<f64>().unwrap() <= bound + 1e-9);
                for s in &reps[..i] {
                    assert!(!r.equivalent(s).unwrap(), "c = {c}: {r} ~ {s}");
                }
            }
        }
    }

    #[test]
    fn ideal_enumeration_agrees_with_forms() {
        let f = FieldData::new(5).unwrap();
        let ideals = ideals_of_norm_at_most(&f, 6);
        assert!(ideals.iter().all(|i| i.norm() <= BigInt::from(6)));
        // 3 splits in Z[sqrt(-5)]; 2 ramifies, so (2) is the only ideal of norm 4
        assert_eq!(ideals.iter().filter(|i| i.norm() == BigInt::from(3)).count(), 2);
        assert_eq!(ideals.iter().filter(|i| i.norm() == BigInt::from(4)).count(), 1);
        for c in [1u64, 2, 5, 6, 14, 23, 47, 110, 163] {
            assert_eq!(class_number_by_ideals(c).unwrap(), class_number(c).unwrap(), "c = {c}");
        }
    }

    fn small_ideal(f: &Arc<FieldData>, seed: (i64, i64)) -> QuadIdeal {
        QuadIdeal::generated_by(f, &[el(f, seed.0, seed.1, 1), el(f, seed.1 + 3, 2, 1)]).unwrap()
    }

    proptest! {
        #[test]
        fn norm_is_nonnegative_and_multiplicative(u1 in -300i64..300, v1 in -300i64..300,
                                                 u2 in -300i64..300, v2 in -300i64..300,
                                                 ci in 0usize..6) {
            let c = [1u64, 2, 3, 7, 15, 110][ci];
            let f = FieldData::new(c).unwrap();
            let k = if f.half_integral() && (u1 - v1) % 2 == 0 { 2 } else { 1 };
            let x = el(&f, u1, v1, k);
            let y = el(&f, u2, v2, 1);
            prop_assert!(!x.norm().is_negative());
            prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
        }

        #[test]
        fn pow_matches_repeated_mul(u in -50i64..50, v in -50i64..50, p in 1u32..=8, ci in 0usize..4) {
            let c = [2u64, 3, 5, 19][ci];
            let f = FieldData::new(c).unwrap();
            let k = if f.half_integral() && (u - v) % 2 == 0 { 2 } else { 1 };
            let x = el(&f, u, v, k);
            let mut acc = QuadElement::one(&f);
            for _ in 0..p {
                acc = acc.mul(&x).unwrap();
            }
            prop_assert_eq!(x.pow(p), acc);
        }

        #[test]
        fn principal_generator_up_to_unit(u in -700i64..700, v in -40i64..40, ci in 0usize..5) {
            let c = [1u64, 2, 3, 5, 23][ci];
            prop_assume!(u != 0 || v != 0);
            let f = FieldData::new(c).unwrap();
            let g = el(&f, u, v, 1);
            prop_assume!(g.norm() <= BigInt::from(1_000_000));
            let found = QuadIdeal::principal(&g).is_principal().unwrap();
            prop_assert_eq!(found.norm(), g.norm());
            // found / g is a unit: found * conj(g) = unit * N(g)
            let q = found.mul(&g.conj()).unwrap().div_exact(&g.norm()).unwrap();
            prop_assert!(q.is_unit());
        }

        #[test]
        fn ideal_mul_commutative_associative(a in (-20i64..20, -20i64..20), b in (-20i64..20, -20i64..20),
                                             cc in (-20i64..20, -20i64..20), ci in 0usize..4) {
            let c = [5u64, 14, 23, 110][ci];
            let f = FieldData::new(c).unwrap();
            let (i, j, k) = (small_ideal(&f, a), small_ideal(&f, b), small_ideal(&f, cc));
            prop_assert_eq!(i.mul(&j).unwrap(), j.mul(&i).unwrap());
            prop_assert_eq!(i.mul(&j).unwrap().mul(&k).unwrap(), i.mul(&j.mul(&k).unwrap()).unwrap());
            prop_assert_eq!(i.mul(&j).unwrap().norm(), i.norm() * j.norm());
        }
    }
}
