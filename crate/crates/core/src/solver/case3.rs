//! Case III: `n = 4`. A solution gives the integral point
//! `(X, Y) = (C1 y^2, C1^2 x y)` on `Y^2 = X^3 - C1^2 C2 X`; points are found
//! by scanning `y` up to a bound and checked on the curve.

use num_bigint::BigInt;

use super::{CaseTag, Solution};
use crate::intmath;
use crate::sieve::EquationInstance;

/// `(X, Y)` for a solution of `C1 x^2 + C2 = y^4`.
pub fn elliptic_point(c1: u64, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    let c1 = BigInt::from(c1);
    (&c1 * y * y, &c1 * &c1 * x * y)
}

fn on_curve(c1: u64, c2: u64, point: &(BigInt, BigInt)) -> bool {
    let (x, y) = point;
    let a = BigInt::from(c1).pow(2) * c2;
    y * y == x.pow(3) - a * x
}

/// Solutions with `n = 4` and `2 <= y <= bound`; never marked complete.
pub fn case3_solve(inst: &EquationInstance, bound: u64) -> Vec<Solution> {
    let (c1, c2) = (inst.c1 as u128, inst.c2 as u128);
    let mut out = Vec::new();
    // y^4 = C2 (mod C1) depends only on y mod C1
    let residues: Vec<bool> = (0..c1)
        .map(|t| (t * t % c1) * (t * t % c1) % c1 == c2 % c1)
        .collect();
    for y in 2..=bound as u128 {
        if !residues[(y % c1) as usize] {
            continue;
        }
        let y4 = y * y * y * y;
        if y4 <= c2 {
            continue;
        }
        let Some(x) = intmath::is_square_u128((y4 - c2) / c1) else {
            continue;
        };
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        if let Some(sol) = Solution::new(inst.c1, inst.c2, x, y, 4, CaseTag::CaseIII, false) {
            if on_curve(inst.c1, inst.c2, &elliptic_point(inst.c1, &sol.x, &sol.y)) {
                out.push(sol);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::make_instance;
    use num_traits::ToPrimitive;

    fn pairs(v: &[Solution]) -> Vec<(i64, i64)> {
        v.iter()
            .map(|s| (s.x.to_i64().unwrap(), s.y.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(pairs(&case3_solve(&make_instance(5, 1), 10)), vec![(4, 3)]);
        assert_eq!(pairs(&case3_solve(&make_instance(2, 31), 10)), vec![(5, 3)]);
        assert!(case3_solve(&make_instance(2, 3), 100).is_empty());
        assert!(case3_solve(&make_instance(5, 1), 10).iter().all(|s| !s.complete));
    }

    #[test]
    fn elliptic_model() {
        let p = elliptic_point(5, &BigInt::from(4), &BigInt::from(3));
        assert_eq!(p, (BigInt::from(45), BigInt::from(300)));
        assert!(on_curve(5, 1, &p));
        assert!(!on_curve(5, 2, &p));
    }

    #[test]
    fn several_points_same_curve() {
        // 5x^2 + 61 = y^4 has y = 3, 11, 27
        let got = pairs(&case3_solve(&make_instance(5, 61), 1000));
        assert_eq!(got, vec![(2, 3), (54, 11), (326, 27)]);
    }
}
