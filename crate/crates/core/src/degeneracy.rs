//! Degeneracy-sequence combinatorics: the minimal step indices attached to a
//! strictly increasing dimension sequence, the telescoping bound they imply,
//! and the affine-dimension conclusion calculator.
//!
//! Sequences are supplied by callers or generators; nothing here derives the
//! dimensions from an actual CR map. The module verifies the combinatorial
//! implication only: given `0 = d_1 < d_2 < ... < d_{l0}` with the total
//! bounded by the gap-interval top for some band index `kappa`, the summed
//! minimal step indices satisfy `k <= kappa - 1`, and the flat codimension
//! `d + k` stays within the band's bound.

use crate::error::Error;
use crate::gaps;
use serde::Serialize;
use std::fmt;

/// A strictly increasing sequence `0 = d_1 < d_2 < ... < d_{l0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracySequence {
    n: u64,
    dims: Vec<u64>,
}

impl DegeneracySequence {
    pub fn new(n: u64, dims: Vec<u64>) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::NTooSmall {
                n: n as usize,
                min: 2,
            });
        }
        if dims.first() != Some(&0) {
            return Err(Error::ParameterOutOfRange {
                name: "dims",
                detail: "the sequence must start with d_1 = 0".to_string(),
            });
        }
        if !dims.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::ParameterOutOfRange {
                name: "dims",
                detail: "the sequence must be strictly increasing".to_string(),
            });
        }
        Ok(DegeneracySequence { n, dims })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// The stabilized rank `d = d_{l0}`.
    pub fn d(&self) -> u64 {
        *self.dims.last().expect("sequences are nonempty")
    }

    pub fn l0(&self) -> usize {
        self.dims.len()
    }

    /// Consecutive increments `d_l - d_{l-1}` for `l = 2..=l0`.
    pub fn increments(&self) -> Vec<u64> {
        self.dims.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// The non-increasing weight function: `n - j` for `j < n`, else `0`.
pub fn g(n: u64, j: u64) -> u64 {
    n.saturating_sub(j)
}

/// `sum_{j=0}^{k} (n - j)` for `k >= 0`; `0` when called with no terms.
fn partial_sum(n: u64, terms: u64) -> u64 {
    // sum of the first `terms` values n, n-1, ...
    (0..terms).map(|j| g(n, j)).sum()
}

/// Minimal step indices for each increment, their total, and the shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KReport {
    pub n: u64,
    /// `k_l` for `l = 2..=l0`, each minimal with
    /// `d_l - d_{l-1} < sum_{j=0}^{k_l} (n-j)`.
    pub k_values: Vec<u64>,
    /// `k = sum k_l`.
    pub k_total: u64,
    /// `m_l` for `l = 2..=l0`: `m_2 = 0`, `m_l = sum_{i=2}^{l-1} k_i`.
    pub shifts: Vec<u64>,
    /// The band index used in the hypotheses, when one is attached.
    pub kappa: Option<u64>,
}

/// The unique minimal `k_l` per increment: smallest `k` with
/// `increment < sum_{j=0}^{k} (n-j)`, which then also satisfies
/// `increment >= sum_{j=0}^{k-1} (n-j)`. Increments of `n(n+1)/2` or more
/// admit no `k <= n-1` and are rejected.
pub fn minimal_k_sequence(seq: &DegeneracySequence) -> Result<KReport, Error> {
    let n = seq.n();
    let bound = partial_sum(n, n) - 1; // largest representable increment
    let mut k_values = Vec::new();
    for inc in seq.increments() {
        if inc > bound {
            return Err(Error::NoValidK {
                increment: inc as usize,
                bound: bound as usize,
            });
        }
        let k = (0..n)
            .find(|&k| inc < partial_sum(n, k + 1))
            .expect("bound check guarantees a valid k");
        debug_assert!(inc >= partial_sum(n, k));
        k_values.push(k);
    }
    let mut shifts = Vec::with_capacity(k_values.len());
    let mut acc = 0;
    for &k in &k_values {
        shifts.push(acc);
        acc += k;
    }
    Ok(KReport {
        n,
        k_total: k_values.iter().sum(),
        k_values,
        shifts,
        kappa: None,
    })
}

/// Full trace of the telescoping argument for one sequence and band index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KClaimReport {
    pub n: u64,
    pub kappa: u64,
    pub d: u64,
    /// Hypothesis bound: `sum_{i=0}^{kappa-1} (n-i) - 1`.
    pub hypothesis_bound: u64,
    pub increments: Vec<u64>,
    pub k_report: KReport,
    /// `sum_l sum_{j=0}^{k_l - 1} g(j)` (the telescoped lower estimate).
    pub telescoped_sum: u64,
    /// `sum_{i=0}^{k-1} g(i)` (the shifted estimate).
    pub shifted_sum: u64,
    /// `sum_{i=0}^{k-1} (n-i)`: must not exceed `d`.
    pub lower_sum: u64,
    pub claim_bound: u64,
    pub claim_holds: bool,
}

impl fmt::Display for KClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n = {}, kappa = {}, d = {} (hypothesis bound {})",
            self.n, self.kappa, self.d, self.hypothesis_bound
        )?;
        writeln!(f, "increments: {:?}", self.increments)?;
        writeln!(
            f,
            "k_l = {:?}  shifts m_l = {:?}  k = {}",
            self.k_report.k_values, self.k_report.shifts, self.k_report.k_total
        )?;
        writeln!(
            f,
            "telescoped sum {} >= shifted sum {} ; lower sum {} <= d = {}",
            self.telescoped_sum, self.shifted_sum, self.lower_sum, self.d
        )?;
        write!(
            f,
            "claim k = {} <= kappa - 1 = {}: {}",
            self.k_report.k_total,
            self.claim_bound,
            if self.claim_holds { "holds" } else { "VIOLATED" }
        )
    }
}

/// Replay the telescoping argument: under the hypothesis
/// `d <= sum_{i=0}^{kappa-1}(n-i) - 1` with `kappa <= kappa0(n)`, the minimal
/// step indices sum to at most `kappa - 1`. Every intermediate quantity is
/// reported; a violated claim signals an implementation bug, not new
/// mathematics, and the tests treat it that way.
pub fn verify_k_claim(seq: &DegeneracySequence, kappa: u64) -> Result<KClaimReport, Error> {
    let n = seq.n();
    let k0 = gaps::kappa0(n)?;
    if kappa < 1 || kappa > k0 {
        return Err(Error::KappaOutOfRange {
            kappa: kappa as usize,
            kappa0: k0 as usize,
        });
    }
    let hypothesis_bound = partial_sum(n, kappa) - 1;
    if seq.d() > hypothesis_bound {
        return Err(Error::HypothesisViolated {
            detail: format!(
                "d = {} exceeds the hypothesis bound {} for kappa = {}",
                seq.d(),
                hypothesis_bound,
                kappa
            ),
        });
    }
    let mut k_report = minimal_k_sequence(seq)?;
    k_report.kappa = Some(kappa);
    let telescoped_sum: u64 = k_report.k_values.iter().map(|&k| partial_sum(n, k)).sum();
    let shifted_sum: u64 = (0..k_report.k_total).map(|i| g(n, i)).sum();
    let lower_sum = partial_sum(n, k_report.k_total);
    let claim_bound = kappa - 1;
    let claim_holds = k_report.k_total <= claim_bound;
    debug_assert!(telescoped_sum >= shifted_sum);
    debug_assert!(lower_sum <= seq.d());
    Ok(KClaimReport {
        n,
        kappa,
        d: seq.d(),
        hypothesis_bound,
        increments: seq.increments(),
        k_report,
        telescoped_sum,
        shifted_sum,
        lower_sum,
        claim_bound,
        claim_holds,
    })
}

/// The affine-dimension conclusion: a map with stabilized rank `d` and total
/// step index `k < n` has image inside an affine subspace of dimension
/// `n + d + k + 1`.
pub fn theorem_affine_dim(n: u64, d: u64, k: u64) -> Result<u64, Error> {
    if k >= n {
        return Err(Error::ParameterOutOfRange {
            name: "k",
            detail: format!("k = {k} must be below n = {n}"),
        });
    }
    Ok(n + d + k + 1)
}

/// End-to-end replay for a map of codimension `N - n` inside a gap interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub n: u64,
    pub big_n: u64,
    pub codim: u64,
    pub kappa: u64,
    pub d: u64,
    pub k: u64,
    /// Whether the consequence `d <= (kappa-1) n` was assumed as input.
    pub sos_consequence_assumed: bool,
    /// `(kappa-1) n`, the rank bound the assumption provides.
    pub sos_bound: u64,
    pub claim: KClaimReport,
    /// `N_0 = n + d + k`.
    pub n0: u64,
    /// `N_0 - n = d + k`.
    pub flat_codim: u64,
    /// `(kappa-1) n + kappa - 1`.
    pub hjy_bound: u64,
    pub within_bound: bool,
    /// `n + d + k + 1`.
    pub affine_dim: u64,
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "source n = {}, target N = {}, codimension {} in gap interval {}",
            self.n, self.big_n, self.codim, self.kappa
        )?;
        writeln!(f, "{}", self.claim)?;
        if self.sos_consequence_assumed {
            writeln!(f, "assumed rank bound d <= (kappa-1)n = {}", self.sos_bound)?;
        }
        write!(
            f,
            "N0 = {}, flat codimension {} <= bound {}: {} (affine dimension {})",
            self.n0,
            self.flat_codim,
            self.hjy_bound,
            if self.within_bound { "holds" } else { "VIOLATED" },
            self.affine_dim
        )
    }
}

/// Replay the full argument for source dimension `n`, target dimension
/// `big_n`, and a degeneracy sequence: locate the gap interval, check the
/// hypotheses, apply the assumed rank bound when requested, compute the
/// minimal step indices, and compare the flat codimension `d + k` against
/// the interval's bound.
pub fn replay_main_theorem(
    n: u64,
    big_n: u64,
    seq: &DegeneracySequence,
    assume_sos_consequence: bool,
) -> Result<ReplayReport, Error> {
    if big_n < n {
        return Err(Error::ParameterOutOfRange {
            name: "N",
            detail: format!("target dimension {big_n} below source dimension {n}"),
        });
    }
    let codim = big_n - n;
    let Some(kappa) = gaps::gap_membership(n, codim)? else {
        return Err(Error::HypothesisViolated {
            detail: format!("codimension {codim} lies in no gap interval for n = {n}"),
        });
    };
    if seq.d() > codim {
        return Err(Error::HypothesisViolated {
            detail: format!("d = {} exceeds the codimension {}", seq.d(), codim),
        });
    }
    let sos_bound = (kappa - 1) * n;
    if assume_sos_consequence && seq.d() > sos_bound {
        return Err(Error::HypothesisViolated {
            detail: format!(
                "d = {} exceeds the assumed rank bound (kappa-1)n = {}",
                seq.d(),
                sos_bound
            ),
        });
    }
    let claim = verify_k_claim(seq, kappa)?;
    let k = claim.k_report.k_total;
    let d = seq.d();
    let n0 = n + d + k;
    let flat_codim = d + k;
    let bound = gaps::hjy_bound(n, kappa)?;
    let affine_dim = theorem_affine_dim(n, d, k)?;
    Ok(ReplayReport {
        n,
        big_n,
        codim,
        kappa,
        d,
        k,
        sos_consequence_assumed: assume_sos_consequence,
        sos_bound,
        claim,
        n0,
        flat_codim,
        hjy_bound: bound,
        within_bound: flat_codim <= bound,
        affine_dim,
    })
}

/// All valid degeneracy sequences for `n` whose stabilized rank satisfies
/// the hypothesis bound for `kappa`: subsets of `{1, ..., bound}` preceded
/// by the mandatory `d_1 = 0`.
pub fn enumerate_valid_sequences(n: u64, kappa: u64) -> Result<Vec<DegeneracySequence>, Error> {
    let k0 = gaps::kappa0(n)?;
    if kappa < 1 || kappa > k0 {
        return Err(Error::KappaOutOfRange {
            kappa: kappa as usize,
            kappa0: k0 as usize,
        });
    }
    let bound = partial_sum(n, kappa) - 1;
    if bound >= 26 {
        return Err(Error::SearchSpaceTooLarge {
            size: 1u128 << bound,
            ceiling: 1 << 25,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << bound) {
        let mut dims = vec![0u64];
        for v in 1..=bound {
            if mask & (1 << (v - 1)) != 0 {
                dims.push(v);
            }
        }
        out.push(DegeneracySequence::new(n, dims).expect("constructed increasing"));
    }
    Ok(out)
}
