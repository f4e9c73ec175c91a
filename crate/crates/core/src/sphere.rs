//! Polynomial proper ball maps: propriety certification by exact division,
//! classical generators, the affine dimension of the image, and end-to-end
//! gap-conclusion reports.
//!
//! Conventions follow CR dimensions: a map from the sphere in `C^{n+1}` to
//! the sphere in `C^{N+1}` has source CR dimension `n`, target CR dimension
//! `N`, ambient source variables `n + 1`, and `N + 1` components.

use crate::error::Error;
use crate::gaps;
use crate::gen::{random_sphere_point, TestRng};
use crate::hermitian::{squared_norm_form, HermitianForm};
use crate::matrix::Matrix;
use crate::poly::{PolyMap, Polynomial};
use crate::rational::{GaussianRational, Rational};
use num::One;
use rand::SeedableRng;
use serde::Serialize;
use std::fmt;

/// Seed for the deterministic sphere-point sampling used by the affine-hull
/// rank computation.
pub const AFFINE_HULL_SEED: u64 = 0x5053_4f53;

/// A polynomial map between sphere ambients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallMap {
    map: PolyMap,
    source_cr_dim: usize,
    target_cr_dim: usize,
}

impl BallMap {
    /// Wrap a polynomial map with `n + 1` variables and `N + 1` components.
    pub fn new(map: PolyMap) -> Result<Self, Error> {
        if map.n() == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "map",
                detail: "a ball map needs at least one source variable".to_string(),
            });
        }
        if map.q() == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "map",
                detail: "a ball map needs at least one component".to_string(),
            });
        }
        Ok(BallMap {
            source_cr_dim: map.n() - 1,
            target_cr_dim: map.q() - 1,
            map,
        })
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    /// CR dimension `n` of the source sphere.
    pub fn source_cr_dim(&self) -> usize {
        self.source_cr_dim
    }

    /// CR dimension `N` of the target sphere.
    pub fn target_cr_dim(&self) -> usize {
        self.target_cr_dim
    }

    pub fn codimension(&self) -> i64 {
        self.target_cr_dim as i64 - self.source_cr_dim as i64
    }

    /// The identity sphere map on `C^{n+1}`.
    pub fn identity(n: usize) -> Self {
        BallMap::new(PolyMap::coordinates(n + 1)).expect("coordinates form a valid map")
    }
}

/// The standard linear embedding: coordinates followed by `N - n` zeros.
pub fn standard_linear_embedding(n: usize, big_n: usize) -> Result<BallMap, Error> {
    if big_n < n {
        return Err(Error::ParameterOutOfRange {
            name: "N",
            detail: format!("target CR dimension {big_n} below source {n}"),
        });
    }
    let vars = n + 1;
    let mut components: Vec<Polynomial> = (0..vars).map(|i| Polynomial::coordinate(vars, i)).collect();
    components.extend((0..big_n - n).map(|_| Polynomial::zero(vars)));
    BallMap::new(PolyMap::new(vars, components)?)
}

/// The Whitney map `(z_1, ..., z_n, z_1 z_{n+1}, ..., z_n z_{n+1}, z_{n+1}^2)`
/// from the sphere of `C^{n+1}` to the sphere of `C^{2n+1}`.
pub fn whitney_map(n: usize) -> BallMap {
    assert!(n >= 1);
    let vars = n + 1;
    let last = Polynomial::coordinate(vars, n);
    let mut components: Vec<Polynomial> = (0..n).map(|i| Polynomial::coordinate(vars, i)).collect();
    components.extend((0..n).map(|i| &Polynomial::coordinate(vars, i) * &last));
    components.push(&last * &last);
    BallMap::new(PolyMap::new(vars, components).expect("shared variable count"))
        .expect("nonempty map")
}

/// Certify propriety: `|f|^2 - 1` must be exactly divisible by `|z|^2 - 1`,
/// and the Hermitian quotient is returned. On failure, a rational sphere
/// point where `|f|^2 != 1` is searched for and reported.
pub fn is_proper_ball_map(f: &BallMap) -> Result<HermitianForm, Error> {
    let vars = f.map.n();
    let norm_f = squared_norm_form(&f.map);
    let one = HermitianForm::constant(vars, Rational::one());
    let lhs = norm_f.sub(&one).expect("same variables");
    let divisor = HermitianForm::norm_form(vars)
        .sub(&one)
        .expect("same variables");
    if let Some(q) = lhs.to_bipoly().div_exact(&divisor.to_bipoly()) {
        let quotient = HermitianForm::from_bipoly(vars, &q)?;
        debug_assert_eq!(
            quotient.mul(&divisor).unwrap(),
            lhs,
            "division must reproduce the dividend"
        );
        return Ok(quotient);
    }
    // not divisible: find an exact witness on the sphere
    let mut rng = TestRng::seed_from_u64(AFFINE_HULL_SEED ^ 1);
    for _ in 0..10_000 {
        let pt = random_sphere_point(&mut rng, vars);
        let value: Rational = pt.iter().map(|z| z.norm_sqr()).sum();
        debug_assert!(value.is_one());
        let image_norm: Rational = f
            .map
            .evaluate(&pt)
            .expect("point length matches")
            .iter()
            .map(|w| w.norm_sqr())
            .sum();
        if !image_norm.is_one() {
            let coords: Vec<String> = pt.iter().map(|z| z.to_string()).collect();
            return Err(Error::NotProper {
                point: format!("({})", coords.join(", ")),
                value: crate::rational::format_rational(&image_norm),
            });
        }
    }
    Err(Error::NotProper {
        point: "(no witness found in the sample budget)".to_string(),
        value: "!= 1 somewhere on the sphere".to_string(),
    })
}

/// How the affine hull of the image was computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineHullReport {
    /// Affine hull dimension of the image of the sphere.
    pub dimension: usize,
    /// Number of sphere evaluations used.
    pub evaluations: usize,
    /// Rank of the nonconstant coefficient matrix: the hull dimension of the
    /// image of all of source space, an upper bound that the sampled rank
    /// met.
    pub coefficient_rank: usize,
}

/// Dimension of the affine hull of `f(S^n)`, computed exactly by ranking
/// image differences at seeded rational sphere points. The count starts at
/// `4 (N + 2)` and doubles until the sampled rank meets the coefficient-rank
/// upper bound (for a polynomial map the two hulls agree; sampling is used
/// so that the restriction to the sphere is what is actually measured).
pub fn affine_image_dimension(f: &BallMap) -> AffineHullReport {
    let vars = f.map.n();
    // upper bound: rank of the nonconstant parts of the components
    let origin = NonconstantCoefficients::strip_constants(&f.map);
    let coefficient_rank = origin.rank();
    let mut rng = TestRng::seed_from_u64(AFFINE_HULL_SEED);
    let mut count = 4 * (f.target_cr_dim + 2);
    let mut evaluations = 0;
    let mut best = 0;
    for _ in 0..4 {
        let points: Vec<Vec<GaussianRational>> =
            (0..count).map(|_| random_sphere_point(&mut rng, vars)).collect();
        evaluations += points.len();
        let values: Vec<Vec<GaussianRational>> = points
            .iter()
            .map(|p| f.map.evaluate(p).expect("point length matches"))
            .collect();
        let base = &values[0];
        let rows: Vec<Vec<GaussianRational>> = values[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        best = Matrix::from_rows(rows).rank();
        if best >= coefficient_rank {
            break;
        }
        count *= 2;
    }
    AffineHullReport {
        dimension: best,
        evaluations,
        coefficient_rank,
    }
}

/// The components with constant terms removed, as a coefficient matrix
/// whose rank bounds the affine hull dimension.
struct NonconstantCoefficients {
    matrix: Matrix,
}

impl NonconstantCoefficients {
    fn strip_constants(map: &PolyMap) -> Self {
        let stripped: Vec<Polynomial> = map
            .components()
            .iter()
            .map(|c| {
                let mut p = c.clone();
                let e = crate::poly::ExponentVector::zero(map.n());
                let constant = p.coeff(&e);
                if !constant.is_zero() {
                    p.add_term(e, -&constant);
                }
                p
            })
            .collect();
        let stripped = PolyMap::new(map.n(), stripped).expect("same variables");
        let (_, matrix) = stripped.coefficient_matrix();
        NonconstantCoefficients { matrix }
    }

    fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// End-to-end consistency report for one certified proper map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapConclusionReport {
    pub source_cr_dim: usize,
    pub target_cr_dim: usize,
    pub codimension: u64,
    /// The gap interval containing the codimension, if any.
    pub kappa: Option<u64>,
    pub affine_hull: AffineHullReport,
    /// `N_0`: one less than the affine hull dimension.
    pub n0: i64,
    /// `N_0 - n <= (kappa-1)n + kappa - 1`, checked when `kappa` exists.
    pub bound: Option<u64>,
    pub within_bound: Option<bool>,
}

impl fmt::Display for GapConclusionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S^{} -> S^{}: codimension {}",
            self.source_cr_dim, self.target_cr_dim, self.codimension
        )?;
        match self.kappa {
            None => write!(f, ", outside gaps")?,
            Some(k) => write!(f, ", in gap interval {k}")?,
        }
        write!(
            f,
            "; affine hull dimension {} (N0 = {})",
            self.affine_hull.dimension, self.n0
        )?;
        if let (Some(bound), Some(ok)) = (self.bound, self.within_bound) {
            write!(
                f,
                "; flat codimension {} <= {}: {}",
                self.n0 - self.source_cr_dim as i64,
                bound,
                if ok { "holds" } else { "VIOLATED" }
            )?;
        }
        Ok(())
    }
}

/// Certify the map proper, locate its codimension in the gap table, compute
/// the affine hull of the image, and check the flat-codimension bound when a
/// gap interval applies. The report asserts instance consistency only; it
/// never claims the general statement.
pub fn check_gap_conclusion(f: &BallMap) -> Result<GapConclusionReport, Error> {
    is_proper_ball_map(f)?;
    let n = f.source_cr_dim as u64;
    let codim = f.codimension();
    if codim < 0 {
        return Err(Error::ParameterOutOfRange {
            name: "codimension",
            detail: "target CR dimension below source".to_string(),
        });
    }
    let codim = codim as u64;
    // gap tables are defined for source CR dimension at least 2
    let kappa = if n >= 2 {
        gaps::gap_membership(n, codim)?
    } else {
        None
    };
    let affine_hull = affine_image_dimension(f);
    let n0 = affine_hull.dimension as i64 - 1;
    let (bound, within_bound) = match kappa {
        Some(k) => {
            let b = gaps::hjy_bound(n, k)?;
            let ok = n0 - n as i64 <= b as i64;
            (Some(b), Some(ok))
        }
        None => (None, None),
    };
    Ok(GapConclusionReport {
        source_cr_dim: f.source_cr_dim,
        target_cr_dim: f.target_cr_dim,
        codimension: codim,
        kappa,
        affine_hull,
        n0,
        bound,
        within_bound,
    })
}

/// Compose with the standard linear embedding into target CR dimension
/// `big_n` (zero padding).
pub fn pad_with_zeros(f: &BallMap, big_n: usize) -> Result<BallMap, Error> {
    if big_n < f.target_cr_dim {
        return Err(Error::ParameterOutOfRange {
            name: "N",
            detail: format!(
                "cannot pad down from target CR dimension {} to {big_n}",
                f.target_cr_dim
            ),
        });
    }
    let mut components = f.map.components().to_vec();
    components.extend((0..big_n - f.target_cr_dim).map(|_| Polynomial::zero(f.map.n())));
    BallMap::new(PolyMap::new(f.map.n(), components)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExponentVector;

    #[test]
    fn identity_map_is_proper_with_unit_quotient() {
        for n in 1..=3 {
            let f = BallMap::identity(n);
            let q = is_proper_ball_map(&f).unwrap();
            assert_eq!(q, HermitianForm::constant(n + 1, Rational::one()));
        }
    }

    #[test]
    fn whitney_quotient_is_one_plus_last_modulus() {
        for n in 1..=4 {
            let f = whitney_map(n);
            assert_eq!(f.source_cr_dim(), n);
            assert_eq!(f.target_cr_dim(), 2 * n);
            let q = is_proper_ball_map(&f).unwrap();
            let vars = n + 1;
            let mut expected = HermitianForm::constant(vars, Rational::one());
            let last = ExponentVector::unit(vars, n);
            expected.add_pair(last.clone(), last, GaussianRational::one());
            assert_eq!(q, expected);
        }
    }

    #[test]
    fn improper_map_yields_sphere_witness() {
        // (z1, z2, z1): squared norm is |z|^2 + |z1|^2, not 1 on the sphere
        let vars = 2;
        let m = PolyMap::new(
            vars,
            vec![
                Polynomial::coordinate(vars, 0),
                Polynomial::coordinate(vars, 1),
                Polynomial::coordinate(vars, 0),
            ],
        )
        .unwrap();
        let f = BallMap::new(m).unwrap();
        let err = is_proper_ball_map(&f).unwrap_err();
        assert!(matches!(err, Error::NotProper { .. }));
    }

    #[test]
    fn linear_embedding_examples() {
        let id = standard_linear_embedding(2, 2).unwrap();
        assert_eq!(id, BallMap::identity(2));

        let l = standard_linear_embedding(2, 5).unwrap();
        assert_eq!(l.map().q(), 6);
        let q = is_proper_ball_map(&l).unwrap();
        assert_eq!(q, HermitianForm::constant(3, Rational::one()));

        // stacked paddings compose
        let l1 = standard_linear_embedding(2, 4).unwrap();
        let l2 = pad_with_zeros(&l1, 7).unwrap();
        assert_eq!(l2, standard_linear_embedding(2, 7).unwrap());

        assert!(standard_linear_embedding(4, 2).is_err());
    }

    #[test]
    fn padding_preserves_propriety_and_quotient() {
        for n in 1..=3 {
            let f = whitney_map(n);
            let q = is_proper_ball_map(&f).unwrap();
            let padded = pad_with_zeros(&f, f.target_cr_dim() + 3).unwrap();
            let q2 = is_proper_ball_map(&padded).unwrap();
            assert_eq!(q, q2);
        }
    }

    #[test]
    fn affine_dimension_examples() {
        // linear embedding S^2 -> S^5: hull dimension 3
        let l = standard_linear_embedding(2, 5).unwrap();
        let r = affine_image_dimension(&l);
        assert_eq!(r.dimension, 3);
        assert_eq!(r.coefficient_rank, 3);

        // Whitney for n = 1: three independent components
        let w = whitney_map(1);
        assert_eq!(affine_image_dimension(&w).dimension, 3);

        // Whitney hull dimension is 2n + 1 in general
        for n in 1..=3 {
            assert_eq!(affine_image_dimension(&whitney_map(n)).dimension, 2 * n + 1);
        }

        // constant map: image is a point, hull dimension 0
        let c = PolyMap::new(2, vec![Polynomial::one(2)]).unwrap();
        let f = BallMap::new(c).unwrap();
        assert_eq!(affine_image_dimension(&f).dimension, 0);
    }

    #[test]
    fn affine_dimension_invariant_under_padding() {
        for n in 1..=3 {
            let f = whitney_map(n);
            let padded = pad_with_zeros(&f, f.target_cr_dim() + 4).unwrap();
            assert_eq!(
                affine_image_dimension(&f).dimension,
                affine_image_dimension(&padded).dimension
            );
        }
    }

    #[test]
    fn propriety_agrees_with_sphere_sampling() {
        let mut rng = TestRng::seed_from_u64(2718);
        let corpus: Vec<BallMap> = vec![
            BallMap::identity(2),
            standard_linear_embedding(2, 4).unwrap(),
            whitney_map(1),
            whitney_map(2),
        ];
        for f in &corpus {
            is_proper_ball_map(f).unwrap();
            for _ in 0..100 {
                let pt = random_sphere_point(&mut rng, f.map().n());
                let norm: Rational = f
                    .map()
                    .evaluate(&pt)
                    .unwrap()
                    .iter()
                    .map(|w| w.norm_sqr())
                    .sum();
                assert!(norm.is_one());
            }
        }
    }

    #[test]
    fn gap_conclusion_reports() {
        // L: S^2 -> S^4, codimension 2, I_1(2) = {1}: outside gaps
        let l = standard_linear_embedding(2, 4).unwrap();
        let r = check_gap_conclusion(&l).unwrap();
        assert_eq!(r.kappa, None);

        // L: S^4 -> S^7, codimension 3 in I_1(4) = [1,3]: flat, 0 <= 0
        let l = standard_linear_embedding(4, 7).unwrap();
        let r = check_gap_conclusion(&l).unwrap();
        assert_eq!(r.kappa, Some(1));
        assert_eq!(r.n0, 4);
        assert_eq!(r.within_bound, Some(true));

        // Whitney S^2 -> S^4: codimension 2, outside gaps for n = 2
        let w = whitney_map(2);
        let r = check_gap_conclusion(&w).unwrap();
        assert_eq!(r.codimension, 2);
        assert_eq!(r.kappa, None);
    }
}
