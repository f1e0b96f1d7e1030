//! Ground truth: a brute-force solver that shares no algebraic-number-theory
//! code with [`crate::solver`], the `y = 5, n = 7` triple count, and the
//! published solution table (embedded CSV with a checksum).

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::intmath;
use crate::solver::{CaseTag, Solution};

/// Embedded published table: header `C1,C2,x,y,n`, 72 rows.
pub const GOLDEN_CSV: &str = include_str!("../data/golden.csv");
/// SHA-256 of [`GOLDEN_CSV`].
pub const GOLDEN_SHA256: &str = "6f2772754a09bfad7421cbe441ef3d2447c5e4a8ebcd519f5b9f4cf7200f54f7";
pub const GOLDEN_ROWS: usize = 72;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GoldenRow {
    pub c1: u64,
    pub c2: u64,
    pub x: u64,
    pub y: u64,
    pub n: u32,
}

impl GoldenRow {
    pub fn key(&self) -> (u64, u64, BigInt, BigInt, u32) {
        (self.c1, self.c2, self.x.into(), self.y.into(), self.n)
    }

    pub fn holds(&self) -> bool {
        let lhs = BigInt::from(self.c1) * self.x * self.x + self.c2;
        lhs == BigInt::from(self.y).pow(self.n)
    }
}

impl fmt::Display for GoldenRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.c1, self.c2, self.x, self.y, self.n)
    }
}

#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub rows: Vec<GoldenRow>,
    pub sha256: String,
}

impl GoldenTable {
    /// True when the bytes are exactly the published table.
    pub fn is_published(&self) -> bool {
        self.sha256 == GOLDEN_SHA256
    }
}

/// Parses and revalidates a table; every row must satisfy its equation.
pub fn parse_golden(text: &str) -> Result<GoldenTable> {
    let sha256 = hex::encode(Sha256::digest(text.as_bytes()));
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("C1,C2,x,y,n") {
        return Err(Error::Golden("header must be C1,C2,x,y,n".into()));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || Error::Golden(format!("line {}: cannot parse {line:?}", i + 2));
        if fields.len() != 5 {
            return Err(bad());
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
        let row = GoldenRow {
            c1: num(fields[0])?,
            c2: num(fields[1])?,
            x: num(fields[2])?,
            y: num(fields[3])?,
            n: num(fields[4])? as u32,
        };
        if !row.holds() {
            return Err(Error::Golden(format!("line {}: {row} does not satisfy C1 x^2 + C2 = y^n", i + 2)));
        }
        rows.push(row);
    }
    Ok(GoldenTable { rows, sha256 })
}

/// The embedded table; fails loudly on any transcription damage.
pub fn embedded_golden() -> Result<GoldenTable> {
    let table = parse_golden(GOLDEN_CSV)?;
    if !table.is_published() {
        return Err(Error::Golden(format!("checksum mismatch: {}", table.sha256)));
    }
    if table.rows.len() != GOLDEN_ROWS {
        return Err(Error::Golden(format!("expected {GOLDEN_ROWS} rows, found {}", table.rows.len())));
    }
    Ok(table)
}

pub fn load_golden(path: &Path) -> Result<GoldenTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Golden(format!("{}: {e}", path.display())))?;
    parse_golden(&text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `y^n` examined.
    pub value_cap: BigInt,
    pub n_max: u32,
    pub fixed_y: Option<u64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            value_cap: BigInt::from(10u64.pow(12)),
            n_max: 64,
            fixed_y: None,
        }
    }
}

impl OracleConfig {
    pub fn with_cap(cap: impl Into<BigInt>) -> Self {
        OracleConfig {
            value_cap: cap.into(),
            ..OracleConfig::default()
        }
    }
}

fn check(c1: u64, c2: u64, y: &BigInt, n: u32) -> Option<Solution> {
    let rest = y.pow(n) - c2;
    if !rest.is_positive() {
        return None;
    }
    let (q, r) = rest.div_rem(&BigInt::from(c1));
    if !r.is_zero() {
        return None;
    }
    let x = intmath::is_square(&q)?;
    Solution::new(c1, c2, x, y.clone(), n, CaseTag::Oracle, true)
}

/// Every coprime solution with `y^n <= cap` and `3 <= n <= n_max`. Bases are
/// enumerated without perfect powers, and each hit is listed in all its shapes
/// `(b^e, N/e)` with `N/e >= 3`.
pub fn brute_force(c1: u64, c2: u64, config: &OracleConfig) -> Vec<Solution> {
    assert!(c1 >= 1 && c2 >= 1);
    let cap = &config.value_cap;
    if let Some(y) = config.fixed_y {
        let y = BigInt::from(y);
        return (3..=config.n_max)
            .take_while(|&n| &y.pow(n) <= cap)
            .filter_map(|n| check(c1, c2, &y, n))
            .collect();
    }
    // y^3 <= cap bounds every base
    let y_max = cap.magnitude().nth_root(3).to_u64().unwrap_or(u64::MAX);
    let mut sols: Vec<Solution> = (2..=y_max)
        .into_par_iter()
        .filter(|&b| intmath::perfect_power_decomposition(&b.into()).1 == 1)
        .flat_map_iter(|b| {
            let base = BigInt::from(b);
            let mut out = Vec::new();
            let mut n = 3;
            let mut value = base.pow(3);
            while n <= config.n_max && &value <= cap {
                if check(c1, c2, &base, n).is_some() {
                    for e in (1..=n / 3).filter(|e| n % e == 0) {
                        out.extend(check(c1, c2, &base.pow(e), n / e));
                    }
                }
                value *= &base;
                n += 1;
            }
            out
        })
        .collect();
    sols.sort_by_key(|s| s.key());
    sols.dedup_by_key(|s| s.key());
    sols
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleCount {
    pub y: u64,
    pub n: u32,
    /// Squarefree `C1`, `C2 > 0`, `x > 0` only.
    pub unrestricted: u64,
    pub coprime: u64,
    pub mod8: u64,
    /// Both restrictions: the documented reading.
    pub coprime_and_mod8: u64,
}

/// Counts `(C1, x, C2)` with `C1` squarefree and `C1 x^2 + C2 = y^n`, broken
/// down by the gcd and `C1 C2 != 7 (mod 8)` restrictions.
pub fn count_triples(y: u64, n: u32) -> TripleCount {
    let target = BigInt::from(y).pow(n).to_u64().expect("y^n fits in u64");
    let mut count = TripleCount {
        y,
        n,
        unrestricted: 0,
        coprime: 0,
        mod8: 0,
        coprime_and_mod8: 0,
    };
    let mut c1 = 1u64;
    while c1 < target {
        if intmath::is_squarefree_u64(c1) {
            let mut x = 1u64;
            while c1 * x * x < target {
                let c2 = target - c1 * x * x;
                let coprime = (c1 * x * x).gcd(&c2).gcd(&target) == 1;
                let mod8 = (c1 as u128 * c2 as u128) % 8 != 7;
                count.unrestricted += 1;
                count.coprime += coprime as u64;
                count.mod8 += mod8 as u64;
                count.coprime_and_mod8 += (coprime && mod8) as u64;
                x += 1;
            }
        }
        c1 += 1;
    }
    count
}

/// Triples for `y^n = 5^7` under both restrictions.
pub fn count_triples_5_7() -> u64 {
    count_triples(5, 7).coprime_and_mod8
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GoldenDiff {
    pub matched: usize,
    pub missing: Vec<GoldenRow>,
    /// Computed solutions absent from the table, as `C1,C2,x,y,n` rows.
    pub extra: Vec<String>,
}

impl GoldenDiff {
    pub fn is_clean(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

impl fmt::Display for GoldenDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} matched, {} missing, {} extra",
            self.matched,
            self.missing.len(),
            self.extra.len()
        )
    }
}

/// Set comparison on `(C1, C2, x, y, n)`. The full tuple is needed because one
/// value may appear twice in the table (`5*326^2 + 61 = 27^4 = 81^3`).
pub fn golden_diff(computed: &[Solution], rows: &[GoldenRow]) -> GoldenDiff {
    let have: BTreeSet<_> = computed.iter().map(|s| s.key()).collect();
    let want: BTreeSet<_> = rows.iter().map(|r| r.key()).collect();
    let mut diff = GoldenDiff {
        matched: have.intersection(&want).count(),
        ..GoldenDiff::default()
    };
    let mut missing: Vec<GoldenRow> = rows
        .iter()
        .filter(|r| !have.contains(&r.key()))
        .cloned()
        .collect();
    missing.sort();
    missing.dedup();
    diff.missing = missing;
    diff.extra = have
        .difference(&want)
        .map(|(c1, c2, x, y, n)| format!("{c1},{c2},{x},{y},{n}"))
        .collect();
    diff
}

/// Set of `(C1, C2, x, y^n)`: the representation-independent identity.
pub fn value_set(sols: &[Solution]) -> BTreeSet<(u64, u64, BigInt, BigInt)> {
    sols.iter()
        .map(|s| (s.c1, s.c2, s.x.clone(), s.value()))
        .collect()
}

/// True when `n` is 4 or an odd prime: the exponents the solver reports.
pub fn is_reported_exponent(n: u32) -> bool {
    n == 4 || (n % 2 == 1 && intmath::is_prime_u64(n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ramanujan_nagell() {
        let cfg = OracleConfig {
            value_cap: BigInt::from(1u64 << 16),
            n_max: 64,
            fixed_y: Some(2),
        };
        let got: Vec<(u64, u32)> = brute_force(1, 7, &cfg)
            .iter()
            .map(|s| (s.x.to_u64().unwrap(), s.n))
            .collect();
        assert_eq!(got, vec![(1, 3), (3, 4), (5, 5), (11, 7), (181, 15)]);
    }

    #[test]
    fn brute_force_examples() {
        let sols = brute_force(2, 19, &OracleConfig::with_cap(10u64.pow(9)));
        assert!(sols
            .iter()
            .any(|s| s.x == 1429.into() && s.y == 21.into() && s.n == 5));
        assert!(brute_force(2, 3, &OracleConfig::with_cap(10u64.pow(6))).is_empty());
    }

    #[test]
    fn expansions_listed() {
        // 5*326^2 + 61 = 3^12
        let sols = brute_force(5, 61, &OracleConfig::with_cap(10u64.pow(7)));
        let shapes: Vec<(u64, u32)> = sols
            .iter()
            .filter(|s| s.x == 326.into())
            .map(|s| (s.y.to_u64().unwrap(), s.n))
            .collect();
        assert_eq!(shapes, vec![(3, 12), (9, 6), (27, 4), (81, 3)]);
    }

    #[test]
    fn golden_table_loads() {
        let t = embedded_golden().unwrap();
        assert_eq!(t.rows.len(), 72);
        assert!(t.rows.contains(&GoldenRow { c1: 2, c2: 19, x: 1429, y: 21, n: 5 }));
        assert!(t.rows.iter().all(|r| is_reported_exponent(r.n)));
    }

    #[test]
    fn damaged_table_rejected() {
        let bad = GOLDEN_CSV.replace("2,19,1429,21,5", "2,19,1428,21,5");
        assert!(parse_golden(&bad).is_err());
        let edited = GOLDEN_CSV.replace("2,1,11,3,5\n", "");
        let t = parse_golden(&edited).unwrap();
        assert!(!t.is_published());
        assert!(parse_golden("x,y\n").is_err());
    }

    #[test]
    fn count_5_7() {
        let c = count_triples(5, 7);
        assert_eq!(c.coprime_and_mod8, 59893);
        assert_eq!(count_triples_5_7(), 59893);
        assert!(c.coprime <= c.unrestricted && c.mod8 <= c.unrestricted);
    }

    #[test]
    fn count_other_cap_differs() {
        let c = count_triples(3, 7);
        assert_ne!(c.coprime_and_mod8, 59893);
    }

    #[test]
    fn diff_examples() {
        let rows = embedded_golden().unwrap().rows;
        let sols: Vec<Solution> = rows
            .iter()
            .map(|r| {
                Solution::new(r.c1, r.c2, r.x.into(), r.y.into(), r.n, CaseTag::Oracle, true).unwrap()
            })
            .collect();
        let d = golden_diff(&sols, &rows);
        assert!(d.is_clean());
        assert_eq!(d.matched, 72);
        let d = golden_diff(&sols[1..], &rows);
        assert_eq!((d.matched, d.missing.len(), d.extra.len()), (71, 1, 0));
        let d = golden_diff(&sols, &rows[1..]);
        assert_eq!(d.extra, vec!["2,1,11,3,5".to_string()]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn monotone_in_cap(c1 in 1u64..8, c2 in 1u64..60, lo in 1_000u64..50_000, extra in 0u64..200_000) {
            let small = value_set(&brute_force(c1, c2, &OracleConfig::with_cap(lo)));
            let big = value_set(&brute_force(c1, c2, &OracleConfig::with_cap(lo + extra)));
            prop_assert!(small.is_subset(&big));
        }
    }
}
