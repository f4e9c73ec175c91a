//! Instance generators and falsification searches for the rank-band laws:
//! exhaustive scans over finite coefficient budgets and seeded randomized
//! trials, with candidate findings re-verified through an independent
//! recomputation path before they are ever reported.
//!
//! Searches never prove anything; they collect evidence. A counterexample
//! candidate surviving re-verification is surfaced loudly (the CLI maps it
//! to a dedicated exit status) because it would be either a library bug or a
//! genuine discovery.

use crate::error::Error;
use crate::gaps::{self, RankClass};
use crate::gen::{self, TestRng};
use crate::hermitian::{
    check_sos_identity, is_sos, signature_decompose, squared_norm_form, HermitianForm, SosOutcome,
};
use crate::instance;
use crate::poly::{PolyMap, Polynomial};
use crate::rank::{linear_rank, tensor_with_z};
use crate::rational::{GaussianRational, Rational};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Default ceiling on the number of enumeration-frontier nodes an exhaustive
/// scan may visit (prefixes of one multiset; the final component is resolved
/// by residual-bucket lookup rather than iteration).
pub const DEFAULT_SCAN_CEILING: u128 = 5_000_000;

/// What the search is hunting for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// Ranks falling in a conjectured gap.
    SosConjecture,
    /// Sub-threshold ranks with a nonzero negative part.
    WeakSos,
    /// Ranks strictly between zero and the dimension.
    HuangLemma,
    /// Ranks outside the band attached to the generator's factor rank.
    GhBand,
}

impl Target {
    pub fn parse(name: &str) -> Result<Self, Error> {
        match name {
            "sos" | "sos-conjecture" => Ok(Target::SosConjecture),
            "weak-sos" | "weaksos" => Ok(Target::WeakSos),
            "huang" | "huang-lemma" => Ok(Target::HuangLemma),
            "gh-band" | "ghband" | "gh" => Ok(Target::GhBand),
            other => Err(Error::Parse {
                detail: format!(
                    "unknown target `{other}` (expected sos, weak-sos, huang, gh-band)"
                ),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Enumerate every map with components from the budget, deduplicated up
    /// to component permutation.
    Exhaustive { max_components: usize },
    /// Seeded random trials; the seed fully determines the output.
    Random { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub max_degree: u32,
    pub coefficient_set: Vec<GaussianRational>,
    pub mode: Mode,
    pub target: Target,
    /// Frontier ceiling for exhaustive scans.
    pub scan_ceiling: u128,
    /// Cap on per-instance reports retained in the output (statistics always
    /// cover everything).
    pub max_reports: usize,
}

impl SearchConfig {
    pub fn new(n: usize, max_degree: u32, target: Target, mode: Mode) -> Self {
        SearchConfig {
            n,
            max_degree,
            coefficient_set: Vec::new(),
            mode,
            target,
            scan_ceiling: DEFAULT_SCAN_CEILING,
            max_reports: 10_000,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.n < 2 {
            return Err(Error::NTooSmall { n: self.n, min: 2 });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Consistent,
    CounterexampleCandidate,
}

/// One analyzed instance that satisfied the SOS identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub id: u64,
    /// Compact description of the map: components, degree.
    pub p_summary: String,
    /// Compact description of the recovered quotient form.
    pub a_summary: String,
    /// Positive side of the decomposition of the quotient.
    pub f_summary: String,
    /// Negative side of the decomposition of the quotient.
    pub g_summary: String,
    pub q_plus: usize,
    pub q_minus: usize,
    pub rank: usize,
    pub classification: RankClass,
    /// Band index expected by the generator, when one applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_kappa: Option<u64>,
    pub verdict: Verdict,
    /// Full instance document, retained for candidates so they can be
    /// replayed independently.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    /// Optional wall-clock microseconds; omitted by default so reports stay
    /// byte-identical across runs of the same seed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_micros: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Multisets enumerated or trials attempted.
    pub examined: u64,
    /// Instances where the SOS identity held (analysis applied).
    pub identities: u64,
    /// Candidate findings that survived re-verification.
    pub candidates: u64,
    /// Candidates failing the independent re-check; must stay zero, anything
    /// else signals an internal bug.
    pub discrepancies: u64,
    /// Linear-rank tallies over identity-satisfying instances.
    pub rank_histogram: BTreeMap<usize, u64>,
    /// Classification tallies over identity-satisfying instances.
    pub class_histogram: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub stats: SearchStats,
    pub reports: Vec<InstanceReport>,
}

impl SearchReport {
    pub fn has_candidates(&self) -> bool {
        self.stats.candidates > 0
    }
}

fn summarize_map(p: &PolyMap) -> String {
    let degree = p
        .components()
        .iter()
        .map(|c| c.degree())
        .max()
        .unwrap_or(-1);
    format!("map[q={}, deg<={}]", p.q(), degree)
}

fn summarize_form(h: &HermitianForm) -> String {
    format!("form[{} canonical terms]", h.num_canonical_terms())
}

struct Analysis {
    report: Option<InstanceReport>,
    identity_held: bool,
    candidate: bool,
    discrepancy: bool,
    rank: Option<usize>,
    class: Option<RankClass>,
}

/// Independent re-verification of a candidate: evaluate the identity at 50
/// random points through the evaluation path, and recompute the rank from
/// scratch with a reversed column scan.
fn reverify(p: &PolyMap, a: &HermitianForm, rank: usize, check_seed: u64) -> bool {
    let mut rng = TestRng::seed_from_u64(check_seed);
    for _ in 0..50 {
        let pt = gen::random_point(&mut rng, p.n());
        let lhs: Rational = p
            .evaluate(&pt)
            .expect("point length matches")
            .iter()
            .map(|v| v.norm_sqr())
            .sum();
        let norm: Rational = pt.iter().map(|v| v.norm_sqr()).sum();
        let rhs = a.evaluate(&pt).expect("point length matches") * norm;
        if lhs != rhs {
            return false;
        }
    }
    let (_, mat) = p.coefficient_matrix();
    mat.rank_reversed_columns() == rank
}

/// Run the full pipeline on one map: identity check, rank, decomposition,
/// classification, target-specific candidate rule, and re-verification.
fn analyze(
    p: &PolyMap,
    config: &SearchConfig,
    id: u64,
    expected_kappa: Option<u64>,
    reverify_seed: u64,
) -> Analysis {
    let none = Analysis {
        report: None,
        identity_held: false,
        candidate: false,
        discrepancy: false,
        rank: None,
        class: None,
    };
    let Ok(a) = check_sos_identity(p) else {
        return none;
    };
    let rank = linear_rank(p).rank;
    let decomp = signature_decompose(&a);
    let n = config.n as u64;
    let classification = gaps::classify_rank(n, rank as u64).expect("config n >= 2");
    let threshold = gaps::rank_max_threshold(n).expect("config n >= 2") as usize;
    let is_candidate = match config.target {
        Target::HuangLemma => rank > 0 && rank < config.n,
        Target::SosConjecture => classification == RankClass::Gap,
        Target::WeakSos => decomp.q_minus() > 0 && rank < threshold,
        Target::GhBand => match expected_kappa {
            Some(kappa) => {
                let (lo, hi) = gaps::band_bounds(n, kappa);
                (rank as u64) < lo || (rank as u64) > hi
            }
            None => false,
        },
    };
    let mut discrepancy = false;
    let verdict = if is_candidate {
        if reverify(p, &a, rank, reverify_seed) {
            Verdict::CounterexampleCandidate
        } else {
            discrepancy = true;
            Verdict::Consistent
        }
    } else {
        Verdict::Consistent
    };
    let instance = if verdict == Verdict::CounterexampleCandidate {
        Some(instance::write_poly_map(p))
    } else {
        None
    };
    Analysis {
        report: Some(InstanceReport {
            id,
            p_summary: summarize_map(p),
            a_summary: summarize_form(&a),
            f_summary: summarize_map(&decomp.f),
            g_summary: summarize_map(&decomp.g),
            q_plus: decomp.q_plus(),
            q_minus: decomp.q_minus(),
            rank,
            classification: classification.clone(),
            expected_kappa,
            verdict,
            instance,
            timing_micros: None,
        }),
        identity_held: true,
        candidate: verdict == Verdict::CounterexampleCandidate,
        discrepancy,
        rank: Some(rank),
        class: Some(classification),
    }
}

fn fold_analysis(stats: &mut SearchStats, reports: &mut Vec<InstanceReport>, a: Analysis, cap: usize) {
    if a.identity_held {
        stats.identities += 1;
        if let Some(r) = a.rank {
            *stats.rank_histogram.entry(r).or_insert(0) += 1;
        }
        if let Some(c) = &a.class {
            *stats.class_histogram.entry(c.to_string()).or_insert(0) += 1;
        }
    }
    if a.candidate {
        stats.candidates += 1;
    }
    if a.discrepancy {
        stats.discrepancies += 1;
    }
    if let Some(report) = a.report {
        // candidates are always retained; consistent reports up to the cap
        if report.verdict == Verdict::CounterexampleCandidate || reports.len() < cap {
            reports.push(report);
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n.saturating_sub(i)) / (i + 1);
    }
    acc
}

/// Multisets of size `k` drawn from `p` items.
fn multiset_count(p: u128, k: u128) -> u128 {
    if k == 0 {
        1
    } else if p == 0 {
        0
    } else {
        binomial(p + k - 1, k)
    }
}

/// Enumerate every polynomial over the monomial/coefficient budget: one
/// coefficient choice from the set per monomial of degree at most
/// `max_degree`.
fn budget_polynomials(n: usize, max_degree: u32, coeffs: &[GaussianRational]) -> Vec<Polynomial> {
    if coeffs.is_empty() {
        return Vec::new();
    }
    let monos = gen::monomials_up_to_degree(n, max_degree);
    let mut out = Vec::new();
    let mut odometer = vec![0usize; monos.len()];
    loop {
        let mut p = Polynomial::zero(n);
        for (slot, &choice) in odometer.iter().enumerate() {
            p.add_term(monos[slot].clone(), coeffs[choice].clone());
        }
        out.push(p);
        // advance
        let mut i = 0;
        loop {
            if i == odometer.len() {
                return out;
            }
            odometer[i] += 1;
            if odometer[i] < coeffs.len() {
                break;
            }
            odometer[i] = 0;
            i += 1;
        }
    }
}

type ResidualKey = Vec<(crate::poly::ExponentVector, crate::poly::ExponentVector, GaussianRational)>;

fn residual_key(h: &HermitianForm) -> ResidualKey {
    h.canonical_terms()
        .map(|((a, b), c)| (a.clone(), b.clone(), c.clone()))
        .collect()
}

fn negate_key(key: &BTreeMap<(crate::poly::ExponentVector, crate::poly::ExponentVector), GaussianRational>) -> ResidualKey {
    key.iter()
        .map(|((a, b), c)| (a.clone(), b.clone(), -c))
        .collect()
}

/// Exhaustively scan all maps with components from the budget (deduplicated
/// up to component permutation), reporting every instance that satisfies the
/// SOS identity. Residuals of the norm division are linear in the form, so
/// the last component of each multiset is found by exact bucket lookup
/// instead of iteration; the ceiling applies to the enumeration frontier.
pub fn exhaustive_scan(config: &SearchConfig) -> Result<SearchReport, Error> {
    config.validate()?;
    let Mode::Exhaustive { max_components } = config.mode else {
        return Err(Error::ParameterOutOfRange {
            name: "mode",
            detail: "exhaustive_scan requires Exhaustive mode".to_string(),
        });
    };
    let polys = budget_polynomials(config.n, config.max_degree, &config.coefficient_set);
    let count = polys.len() as u128;
    // frontier: multiset prefixes of size q-1, the last slot being resolved
    // by bucket lookup
    let mut frontier: u128 = 0;
    for q in 1..=max_components {
        frontier = frontier.saturating_add(multiset_count(count, q as u128 - 1));
    }
    if frontier > config.scan_ceiling {
        return Err(Error::SearchSpaceTooLarge {
            size: frontier,
            ceiling: config.scan_ceiling,
        });
    }

    // residual of |p|^2 under norm division, per budget polynomial
    let residuals: Vec<HermitianForm> = polys
        .par_iter()
        .map(|p| {
            let single = PolyMap::new(p.n(), vec![p.clone()]).expect("dimension matches");
            let h = squared_norm_form(&single);
            let (_, residual) = h.norm_division_with_residual();
            residual
        })
        .collect();
    let mut buckets: HashMap<ResidualKey, Vec<usize>> = HashMap::new();
    for (i, r) in residuals.iter().enumerate() {
        buckets.entry(residual_key(r)).or_default().push(i);
    }

    let mut scan = ScanState {
        polys: &polys,
        residuals: &residuals,
        buckets: &buckets,
        config,
        stats: SearchStats::default(),
        reports: Vec::new(),
        id: 0,
        stack: Vec::new(),
        partial: BTreeMap::new(),
    };
    for q in 1..=max_components {
        scan.recurse(q, 0);
        debug_assert!(scan.stack.is_empty() && scan.partial.is_empty());
    }
    // examined counts the whole deduplicated space, not just the
    // identity-satisfying instances the buckets surfaced
    let mut space: u128 = 0;
    for q in 1..=max_components {
        space = space.saturating_add(multiset_count(count, q as u128));
    }
    scan.stats.examined = space.min(u64::MAX as u128) as u64;
    Ok(SearchReport {
        config: config.clone(),
        stats: scan.stats,
        reports: scan.reports,
    })
}

type PartialResidual =
    BTreeMap<(crate::poly::ExponentVector, crate::poly::ExponentVector), GaussianRational>;

struct ScanState<'a> {
    polys: &'a [Polynomial],
    residuals: &'a [HermitianForm],
    buckets: &'a HashMap<ResidualKey, Vec<usize>>,
    config: &'a SearchConfig,
    stats: SearchStats,
    reports: Vec<InstanceReport>,
    id: u64,
    stack: Vec<usize>,
    partial: PartialResidual,
}

impl ScanState<'_> {
    /// Enumerate multisets of size `q` with indices >= `start`: iterate the
    /// first `q - 1` components, resolve the last one by looking up the
    /// bucket of the negated partial residual.
    fn recurse(&mut self, q: usize, start: usize) {
        if self.stack.len() == q - 1 {
            let needed = negate_key(&self.partial);
            let Some(bucket) = self.buckets.get(&needed) else {
                return;
            };
            // clone the small index list so the lookup borrow ends here
            let bucket = bucket.clone();
            for j in bucket {
                if j < start {
                    continue;
                }
                let mut comps: Vec<Polynomial> =
                    self.stack.iter().map(|&i| self.polys[i].clone()).collect();
                comps.push(self.polys[j].clone());
                let p = PolyMap::new(self.config.n, comps).expect("shared dimension");
                let analysis = analyze(&p, self.config, self.id, None, 0x5eed ^ self.id);
                debug_assert!(analysis.identity_held, "bucket lookup implies the identity");
                fold_analysis(
                    &mut self.stats,
                    &mut self.reports,
                    analysis,
                    self.config.max_reports,
                );
                self.id += 1;
            }
            return;
        }
        for i in start..self.polys.len() {
            self.stack.push(i);
            self.accumulate(i, false);
            self.recurse(q, i);
            self.stack.pop();
            self.accumulate(i, true);
        }
    }

    fn accumulate(&mut self, index: usize, remove: bool) {
        for ((a, b), c) in self.residuals[index].canonical_terms() {
            let key = (a.clone(), b.clone());
            let entry = self
                .partial
                .entry(key.clone())
                .or_insert_with(GaussianRational::zero);
            if remove {
                *entry -= c;
            } else {
                *entry += c;
            }
            if entry.is_zero() {
                self.partial.remove(&key);
            }
        }
    }
}

fn pool_coefficient(rng: &mut TestRng, pool: &[GaussianRational]) -> GaussianRational {
    if pool.is_empty() {
        gen::random_gaussian_rational(rng)
    } else {
        pool[rng.random_range(0..pool.len())].clone()
    }
}

fn random_budget_polynomial(
    rng: &mut TestRng,
    n: usize,
    max_degree: u32,
    max_terms: usize,
    pool: &[GaussianRational],
) -> Polynomial {
    let monos = gen::monomials_up_to_degree(n, max_degree);
    let mut p = Polynomial::zero(n);
    let terms = rng.random_range(1..=max_terms);
    for _ in 0..terms {
        let e = monos[rng.random_range(0..monos.len())].clone();
        p.add_term(e, pool_coefficient(rng, pool));
    }
    p
}

fn gh_factor_with_rng(
    rng: &mut TestRng,
    n: usize,
    kappa: usize,
    degree: u32,
    pool: &[GaussianRational],
) -> Result<PolyMap, Error> {
    let monos = gen::monomials_up_to_degree(n, degree);
    if kappa > monos.len() {
        return Err(Error::RankTargetUnreachable {
            kappa,
            detail: format!(
                "only {} monomials available at degree <= {degree} in {n} variables",
                monos.len()
            ),
        });
    }
    for _ in 0..200 {
        let comps: Vec<Polynomial> = (0..kappa)
            .map(|_| random_budget_polynomial(rng, n, degree, 3, pool))
            .collect();
        let f = PolyMap::new(n, comps).expect("shared dimension");
        if linear_rank(&f).rank == kappa {
            return Ok(f);
        }
    }
    Err(Error::RankTargetUnreachable {
        kappa,
        detail: "rejection sampling budget exhausted".to_string(),
    })
}

/// A generated instance with `A = |F|^2`: the factor `F` with linear rank
/// exactly `kappa`, and `P = F (x) z`, which satisfies `|P|^2 = |F|^2 |z|^2`
/// by construction.
pub fn gen_gh_instance(
    n: usize,
    kappa: usize,
    degree: u32,
    seed: u64,
) -> Result<(PolyMap, PolyMap), Error> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    if kappa == 0 || degree == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "kappa/degree",
            detail: "kappa and degree must be at least 1".to_string(),
        });
    }
    let mut rng = TestRng::seed_from_u64(seed);
    let f = gh_factor_with_rng(&mut rng, n, kappa, degree, &[])?;
    let p = tensor_with_z(&f);
    Ok((f, p))
}

enum TrialInstance {
    /// A map that may or may not satisfy the identity.
    Map(PolyMap, Option<u64>),
    /// This trial produced nothing applicable.
    Skip,
}

/// Generate one trial instance for the given target. For band and lemma
/// targets the instance is built to satisfy the identity (as a tensor with
/// the coordinates, or as the SOS certificate of a product known to be an
/// SOS); raw random maps are mixed in to exercise the rejection path.
fn random_trial(rng: &mut TestRng, config: &SearchConfig) -> Result<TrialInstance, Error> {
    let n = config.n;
    let pool = &config.coefficient_set;
    match config.target {
        Target::GhBand => {
            let k0 = gaps::kappa0(n as u64).expect("config n >= 2") as usize;
            let kappa = rng.random_range(1..=k0);
            let f = gh_factor_with_rng(rng, n, kappa, config.max_degree.max(1), pool)?;
            let expected = linear_rank(&f).rank as u64;
            Ok(TrialInstance::Map(tensor_with_z(&f), Some(expected)))
        }
        Target::WeakSos => {
            // A = |F|^2 - |G|^2 with G != 0; applicable only when A |z|^2
            // turns out to be an SOS, in which case its certificate is P.
            let f = gen::random_nonzero_poly_map(rng, n, config.max_degree, 3, 3);
            let g = gen::random_nonzero_poly_map(rng, n, config.max_degree, 2, 2);
            let a = squared_norm_form(&f)
                .sub(&squared_norm_form(&g))
                .expect("same dimension");
            match is_sos(&a.multiply_by_norm()) {
                SosOutcome::Sos(cert) => Ok(TrialInstance::Map(cert.factor, None)),
                SosOutcome::NotSos(_) => Ok(TrialInstance::Skip),
            }
        }
        Target::HuangLemma | Target::SosConjecture => {
            // rotate through generation recipes to cover different shapes
            match rng.random_range(0..3u32) {
                0 => {
                    // tensor instances: identity holds by construction
                    let f = gen::random_nonzero_poly_map(rng, n, config.max_degree, 3, 3);
                    Ok(TrialInstance::Map(tensor_with_z(&f), None))
                }
                1 => {
                    // certificate of a random squared norm times |z|^2
                    let f = gen::random_nonzero_poly_map(rng, n, config.max_degree, 3, 3);
                    let a = squared_norm_form(&f);
                    match is_sos(&a.multiply_by_norm()) {
                        SosOutcome::Sos(cert) => Ok(TrialInstance::Map(cert.factor, None)),
                        SosOutcome::NotSos(_) => Ok(TrialInstance::Skip),
                    }
                }
                _ => {
                    // raw random Hermitian form; usually rejected
                    let a = gen::random_hermitian_form(rng, n, config.max_degree);
                    match is_sos(&a.multiply_by_norm()) {
                        SosOutcome::Sos(cert) => Ok(TrialInstance::Map(cert.factor, None)),
                        SosOutcome::NotSos(_) => Ok(TrialInstance::Skip),
                    }
                }
            }
        }
    }
}

/// Seeded randomized falsification run. Workers own disjoint RNG streams
/// derived from `(seed, trial index)`, and reports are merged in trial order,
/// so identical configurations produce identical reports.
pub fn falsify(config: &SearchConfig) -> Result<SearchReport, Error> {
    config.validate()?;
    let Mode::Random { trials, seed } = config.mode else {
        return Err(Error::ParameterOutOfRange {
            name: "mode",
            detail: "falsify requires Random mode".to_string(),
        });
    };
    let analyses: Vec<(u64, Result<Analysis, Error>)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = TestRng::seed_from_u64(seed);
            rng.set_stream(trial + 1);
            let outcome = match random_trial(&mut rng, config) {
                Err(e) => Err(e),
                Ok(TrialInstance::Skip) => Ok(Analysis {
                    report: None,
                    identity_held: false,
                    candidate: false,
                    discrepancy: false,
                    rank: None,
                    class: None,
                }),
                Ok(TrialInstance::Map(p, expected)) => Ok(analyze(
                    &p,
                    config,
                    trial,
                    expected,
                    seed ^ trial.rotate_left(17),
                )),
            };
            (trial, outcome)
        })
        .collect();
    let mut stats = SearchStats::default();
    let mut reports = Vec::new();
    for (_, outcome) in analyses {
        stats.examined += 1;
        fold_analysis(&mut stats, &mut reports, outcome?, config.max_reports);
    }
    reports.sort_by_key(|r| r.id);
    Ok(SearchReport {
        config: config.clone(),
        stats,
        reports,
    })
}
