//! Bounded Thue solving: all `(r, s)` with `|r|, |s| <= bound` and `F(r, s) = t`.
//!
//! For each `s != 0`, any solution has `r/s` close to a root of `F(X, 1)`.
//! Two bounds on `|r - theta*s|` are used: the root-separation bound
//! `2^(m-1) t / (|a_m| |s|^(p-1) prod |theta_j - theta_i|)` and the generic
//! `|s| (t / (|a_m| |s|^p))^(1/m)`. Candidates inside the window are checked
//! exactly. When a window is too wide to scan, the column falls back to exact
//! integer-root isolation of `F(X, s) - t`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::poly::{integer_roots, IntPoly};

/// Widest window scanned candidate by candidate before switching to exact roots.
const WINDOW_LIMIT: f64 = 4096.0;
/// Relative separation below which two numeric roots are treated as one cluster.
const CLUSTER_TOL: f64 = 1e-6;
/// Columns of `s` handed to one rayon task.
const CHUNK: i64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum UnitVariant {
    One,
    Omega,
    OmegaSquared,
}

/// `F(r, s) = sum a_i r^i s^(p-i) = t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThueProblem {
    pub degree: u32,
    /// `coeffs[i]` multiplies `r^i s^(degree - i)`.
    pub coeffs: Vec<BigInt>,
    pub target: BigInt,
    pub unit_variant: UnitVariant,
}

impl ThueProblem {
    pub fn new(coeffs: Vec<BigInt>, target: BigInt) -> Self {
        assert!(coeffs.len() >= 2, "form needs degree >= 1");
        assert!(target.is_positive(), "Thue target must be positive");
        ThueProblem {
            degree: coeffs.len() as u32 - 1,
            coeffs,
            target,
            unit_variant: UnitVariant::One,
        }
    }

    pub fn from_i64(coeffs: &[i64], target: i64) -> Self {
        ThueProblem::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::from(target),
        )
    }

    pub fn eval(&self, r: &BigInt, s: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut s_pow = BigInt::one();
        // Horner in r, with s powers attached to the lower coefficients.
        let p = self.degree as usize;
        let mut s_pows = Vec::with_capacity(p + 1);
        for _ in 0..=p {
            s_pows.push(s_pow.clone());
            s_pow *= s;
        }
        for i in (0..=p).rev() {
            acc = acc * r + &self.coeffs[i] * &s_pows[p - i];
        }
        acc
    }

    /// Divides form and target by their common content; `None` when no solution can exist.
    pub fn normalized(mut self) -> Option<Self> {
        use num_integer::Integer;
        let content = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if content.is_zero() || !(&self.target % &content).is_zero() {
            return None;
        }
        if !content.is_one() {
            for c in &mut self.coeffs {
                *c /= &content;
            }
            self.target /= &content;
        }
        Some(self)
    }
}

struct FastForm {
    coeffs: Option<Vec<i128>>,
    target: Option<i128>,
}

impl FastForm {
    fn new(problem: &ThueProblem) -> Self {
        FastForm {
            coeffs: problem.coeffs.iter().map(|c| c.to_i128()).collect(),
            target: problem.target.to_i128(),
        }
    }

    /// `Some(F(r, s) == t)` when the evaluation fits in i128.
    fn check(&self, r: i64, s: i64) -> Option<bool> {
        let coeffs = self.coeffs.as_ref()?;
        let t = self.target?;
        let p = coeffs.len() - 1;
        let (r, s) = (r as i128, s as i128);
        let mut s_pow: i128 = 1;
        let mut acc: i128 = coeffs[p];
        for i in (0..p).rev() {
            s_pow = s_pow.checked_mul(s)?;
            acc = acc
                .checked_mul(r)?
                .checked_add(coeffs[i].checked_mul(s_pow)?)?;
        }
        Some(acc == t)
    }
}

fn ln_abs_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.abs().to_f64().unwrap().ln()
    } else {
        let shift = bits - 64;
        let top = (x.abs() >> shift).to_f64().unwrap();
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// `x * 2^-e` as an f64.
fn scaled_to_f64(x: &BigInt, e: i64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits() as i64;
    let shift = (bits - 60).max(0);
    let top = (x >> shift as u64).to_f64().unwrap();
    let exp = shift - e;
    top * 2f64.powi(exp.clamp(-1074, 1023) as i32)
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Complex roots of `sum coeffs[i] X^i` (Aberth-Ehrlich iteration).
pub fn polynomial_roots(coeffs: &[BigInt]) -> Vec<Complex64> {
    let m = match coeffs.iter().rposition(|c| !c.is_zero()) {
        Some(m) if m >= 1 => m,
        _ => return Vec::new(),
    };
    let coeffs = &coeffs[..=m];
    let max_bits = coeffs.iter().map(|c| c.bits() as i64).max().unwrap();
    let scale = (max_bits - 500).max(0);
    let lead = scaled_to_f64(&coeffs[m], scale);
    let monic: Vec<f64> = coeffs
        .iter()
        .map(|c| scaled_to_f64(c, scale) / lead)
        .collect();

    // Fujiwara-style radius for the starting circle.
    let radius = (0..m)
        .map(|i| monic[i].abs().powf(1.0 / (m - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / m as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for k in 0..m {
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..m)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1e-300));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish.
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *zk);
            let step = p / dp;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    z
}

struct RootWindow {
    re: f64,
    im: f64,
    /// ln of the separation constant `|a_m| prod |theta_j - theta_i|`; `None` inside a cluster.
    ln_sep: Option<f64>,
}

pub struct ThueSolver<'a> {
    problem: &'a ThueProblem,
    fast: FastForm,
    /// Degree in `r` of `F(r, 1)`.
    m: usize,
    roots: Vec<RootWindow>,
    ln_t: f64,
    ln_lead: f64,
}

impl<'a> ThueSolver<'a> {
    pub fn new(problem: &'a ThueProblem) -> Self {
        let m = problem
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0);
        let numeric = polynomial_roots(&problem.coeffs);
        let ln_lead = if m > 0 {
            ln_abs_big(&problem.coeffs[m])
        } else {
            0.0
        };
        let roots = numeric
            .iter()
            .enumerate()
            .map(|(j, tj)| {
                let mut ln_sep = Some(ln_lead);
                for (i, ti) in numeric.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let dist = (tj - ti).norm();
                    if dist <= CLUSTER_TOL * (1.0 + tj.norm()) {
                        ln_sep = None;
                        break;
                    }
                    ln_sep = ln_sep.map(|v| v + dist.ln());
                }
                RootWindow {
                    re: tj.re,
                    im: tj.im,
                    ln_sep,
                }
            })
            .collect();
        ThueSolver {
            problem,
            fast: FastForm::new(problem),
            m,
            roots,
            ln_t: ln_abs_big(&problem.target),
            ln_lead,
        }
    }

    fn is_solution(&self, r: i64, s: i64) -> bool {
        match self.fast.check(r, s) {
            Some(v) => v,
            None => self.problem.eval(&BigInt::from(r), &BigInt::from(s)) == self.problem.target,
        }
    }

    /// Exact integer roots of `F(X, s) - t` within the bound.
    fn exact_column(&self, s: i64, bound: i64, out: &mut Vec<(i64, i64)>) {
        let p = self.problem.degree as usize;
        let sb = BigInt::from(s);
        let mut coeffs: Vec<BigInt> = (0..=p)
            .map(|i| &self.problem.coeffs[i] * sb.pow((p - i) as u32))
            .collect();
        coeffs[0] -= &self.problem.target;
        let poly = IntPoly::new(coeffs);
        if poly.is_zero() {
            out.extend((-bound..=bound).map(|r| (r, s)));
            return;
        }
        for r in integer_roots(&poly) {
            if let Some(r) = r.to_i64() {
                if r.abs() <= bound {
                    out.push((r, s));
                }
            }
        }
    }

    fn column(&self, s: i64, bound: i64, out: &mut Vec<(i64, i64)>) {
        let p = self.problem.degree as usize;
        if s == 0 || self.m == 0 {
            self.exact_column(s, bound, out);
            return;
        }
        let m = self.m as f64;
        let ln_s = (s.unsigned_abs() as f64).ln();
        let ln_generic = ln_s + (self.ln_t - self.ln_lead - p as f64 * ln_s) / m;
        let mut cands: Vec<i64> = Vec::new();
        for root in &self.roots {
            let mut ln_r = ln_generic;
            if let Some(ln_sep) = root.ln_sep {
                let sep = (m - 1.0) * std::f64::consts::LN_2 + self.ln_t - ln_sep
                    - (p as f64 - 1.0) * ln_s;
                ln_r = ln_r.min(sep);
            }
            let radius = ln_r.exp();
            let sf = s as f64;
            let theta_norm = (root.re * root.re + root.im * root.im).sqrt();
            let slack = 1e-6 * (1.0 + theta_norm * sf.abs() + radius);
            if root.im.abs() * sf.abs() > radius + slack {
                continue;
            }
            let center = root.re * sf;
            let lo = (center - radius - slack).ceil().max(-(bound as f64));
            let hi = (center + radius + slack).floor().min(bound as f64);
            if hi < lo {
                continue;
            }
            let width = hi - lo;
            if width.is_nan() || width > WINDOW_LIMIT {
                // A failed root shows up as NaN.
                self.exact_column(s, bound, out);
                return;
            }
            cands.extend((lo as i64)..=(hi as i64));
        }
        cands.sort_unstable();
        cands.dedup();
        out.extend(
            cands
                .into_iter()
                .filter(|&r| self.is_solution(r, s))
                .map(|r| (r, s)),
        );
    }

    pub fn solve(&self, bound: u64) -> Vec<(i64, i64)> {
        let bound = bound.min(i64::MAX as u64 / 2) as i64;
        let chunks: Vec<(i64, i64)> = {
            let mut v = Vec::new();
            let mut lo = -bound;
            while lo <= bound {
                let hi = (lo + CHUNK - 1).min(bound);
                v.push((lo, hi));
                lo = hi + 1;
            }
            v
        };
        let mut found: Vec<(i64, i64)> = chunks
            .par_iter()
            .flat_map_iter(|&(lo, hi)| {
                let mut out = Vec::new();
                for s in lo..=hi {
                    self.column(s, bound, &mut out);
                }
                out
            })
            .collect();
        found.sort_unstable_by_key(|&(r, s)| (s, r));
        found.dedup();
        found
    }
}

/// All `(r, s)` with `|r|, |s| <= bound` and `F(r, s) = t`, ordered by `(s, r)`.
pub fn thue_solve_bounded(problem: &ThueProblem, bound: u64) -> Vec<(i64, i64)> {
    ThueSolver::new(problem).solve(bound)
}
