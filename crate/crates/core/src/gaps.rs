//! Integer combinatorics of codimension gap intervals and rank bands.
//!
//! For `n >= 2` and `kappa >= 1`, the gap interval is
//! `I_kappa = [(kappa-1)n + kappa, kappa*n - kappa(kappa-1)/2 - 1]`, and
//! `kappa0(n)` is the largest `kappa` for which it is nonempty. Rank bands
//! are `[n*kappa - kappa(kappa-1)/2, kappa*n]`. Everything here is a pure
//! integer function, computed by direct scans of the defining inequalities;
//! closed forms are used only as cross-checks in the tests.

use crate::error::Error;
use serde::Serialize;

/// Upper bound keeping every interval computation inside i64.
const MAX_N: u64 = 1_000_000_000;

fn check_n(n: u64) -> Result<(), Error> {
    if n < 2 {
        return Err(Error::NTooSmall {
            n: n as usize,
            min: 2,
        });
    }
    if n > MAX_N {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            detail: format!("n = {n} exceeds the supported maximum {MAX_N}"),
        });
    }
    Ok(())
}

/// Interval endpoints for any `kappa >= 1` (possibly empty when a > b):
/// `a = (kappa-1)n + kappa`, `b = sum_{i=0}^{kappa-1} (n-i) - 1`.
fn interval_endpoints(n: u64, kappa: u64) -> (i64, i64) {
    let n = n as i64;
    let k = kappa as i64;
    let a = (k - 1) * n + k;
    let b = k * n - k * (k - 1) / 2 - 1;
    (a, b)
}

/// The largest `kappa` whose gap interval is nonempty, by direct scan of the
/// defining inequality.
pub fn kappa0(n: u64) -> Result<u64, Error> {
    check_n(n)?;
    let mut k = 1;
    loop {
        let (a, b) = interval_endpoints(n, k + 1);
        if a > b {
            return Ok(k);
        }
        k += 1;
    }
}

/// The gap interval `I_kappa` for `1 <= kappa <= kappa0(n)`.
pub fn gap_interval(n: u64, kappa: u64) -> Result<(u64, u64), Error> {
    check_n(n)?;
    let k0 = kappa0(n)?;
    if kappa < 1 || kappa > k0 {
        return Err(Error::KappaOutOfRange {
            kappa: kappa as usize,
            kappa0: k0 as usize,
        });
    }
    let (a, b) = interval_endpoints(n, kappa);
    Ok((a as u64, b as u64))
}

/// The top of the last gap interval: `D_n = kappa0*n - kappa0(kappa0-1)/2 - 1`.
pub fn d_max(n: u64) -> Result<u64, Error> {
    let k0 = kappa0(n)?;
    let (_, b) = interval_endpoints(n, k0);
    Ok(b as u64)
}

/// The unique `kappa` whose gap interval contains `codim`, if any.
pub fn gap_membership(n: u64, codim: u64) -> Result<Option<u64>, Error> {
    let k0 = kappa0(n)?;
    for kappa in 1..=k0 {
        let (a, b) = interval_endpoints(n, kappa);
        if (a as u64) <= codim && codim <= b as u64 {
            return Ok(Some(kappa));
        }
    }
    Ok(None)
}

/// The maximal flat codimension conjectured for the `kappa`-th gap:
/// `a_kappa - 1 = (kappa-1)n + kappa - 1`.
pub fn hjy_bound(n: u64, kappa: u64) -> Result<u64, Error> {
    check_n(n)?;
    let k0 = kappa0(n)?;
    if kappa < 1 || kappa > k0 {
        return Err(Error::KappaOutOfRange {
            kappa: kappa as usize,
            kappa0: k0 as usize,
        });
    }
    let (a, _) = interval_endpoints(n, kappa);
    Ok((a - 1) as u64)
}

/// Rank band `[n*kappa - kappa(kappa-1)/2, kappa*n]`, defined for every
/// `kappa >= 1` (bands beyond `kappa0` exist but overlap).
pub fn band_bounds(n: u64, kappa: u64) -> (u64, u64) {
    let lower = n * kappa - kappa * (kappa - 1) / 2;
    (lower, kappa * n)
}

/// The threshold of the "large rank" alternative:
/// `(kappa0+1)n - kappa0(kappa0+1)/2 - 1`.
pub fn rank_max_threshold(n: u64) -> Result<u64, Error> {
    let k0 = kappa0(n)?;
    Ok((k0 + 1) * n - k0 * (k0 + 1) / 2 - 1)
}

/// Where a rank sits relative to the conjectured band structure.
///
/// A value can satisfy both a band condition and the large-rank threshold at
/// boundary values; in that case it is reported as the band with the
/// `above_max` flag set rather than choosing one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RankClass {
    Zero,
    Band { kappa: u64, above_max: bool },
    Gap,
    AboveMax,
}

impl std::fmt::Display for RankClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankClass::Zero => write!(f, "Zero"),
            RankClass::Band { kappa, above_max } => {
                if *above_max {
                    write!(f, "Band({kappa}) [above max threshold]")
                } else {
                    write!(f, "Band({kappa})")
                }
            }
            RankClass::Gap => write!(f, "Gap"),
            RankClass::AboveMax => write!(f, "AboveMax"),
        }
    }
}

/// Classify a linear rank against the band structure for dimension `n`.
pub fn classify_rank(n: u64, r: u64) -> Result<RankClass, Error> {
    check_n(n)?;
    if r == 0 {
        return Ok(RankClass::Zero);
    }
    let k0 = kappa0(n)?;
    let above = r >= rank_max_threshold(n)?;
    for kappa in 1..=k0 {
        let (lo, hi) = band_bounds(n, kappa);
        if lo <= r && r <= hi {
            return Ok(RankClass::Band {
                kappa,
                above_max: above,
            });
        }
    }
    if above {
        return Ok(RankClass::AboveMax);
    }
    Ok(RankClass::Gap)
}

/// Smallest `kappa` whose rank band meets the next one, found by scan.
pub fn first_band_overlap(n: u64) -> Result<u64, Error> {
    check_n(n)?;
    let mut kappa = 1;
    loop {
        let (_, hi) = band_bounds(n, kappa);
        let (lo_next, _) = band_bounds(n, kappa + 1);
        if lo_next <= hi {
            return Ok(kappa);
        }
        kappa += 1;
    }
}

/// The full table for one `n`: `kappa0`, every gap interval, and `D_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapTable {
    pub n: u64,
    pub kappa0: u64,
    /// `(a_kappa, b_kappa)` for `kappa = 1..=kappa0`.
    pub intervals: Vec<(u64, u64)>,
    pub d_max: u64,
}

impl GapTable {
    pub fn new(n: u64) -> Result<Self, Error> {
        let k0 = kappa0(n)?;
        let intervals: Vec<(u64, u64)> = (1..=k0)
            .map(|k| {
                let (a, b) = interval_endpoints(n, k);
                (a as u64, b as u64)
            })
            .collect();
        let d_max = intervals.last().expect("kappa0 >= 1").1;
        Ok(GapTable {
            n,
            kappa0: k0,
            intervals,
            d_max,
        })
    }
}
