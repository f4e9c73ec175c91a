//! Linear rank of polynomial maps, tensor products with the coordinate map,
//! subspace containment, and the quotient-dimension bounds they imply for
//! ranks of maps satisfying an SOS identity.

use crate::error::Error;
use crate::hermitian::{a_t_family, is_sos, SosOutcome};
use crate::poly::{PolyMap, Polynomial};
use crate::rational::Rational;
use serde::Serialize;

/// The linear rank of a map together with an explicit spanning basis for the
/// space spanned by its components.
#[derive(Clone, Debug)]
pub struct RankReport {
    pub rank: usize,
    pub basis: Vec<Polynomial>,
}

/// Exact rank of the span of the components, with a basis read off the
/// reduced row echelon form of the coefficient matrix.
pub fn linear_rank(p: &PolyMap) -> RankReport {
    let (monomials, mat) = p.coefficient_matrix();
    let (rref, pivots) = mat.rref();
    let basis = (0..pivots.len())
        .map(|row| {
            let mut poly = Polynomial::zero(p.n());
            for (col, mono) in monomials.iter().enumerate() {
                poly.add_term(mono.clone(), rref.get(row, col).clone());
            }
            poly
        })
        .collect();
    RankReport {
        rank: pivots.len(),
        basis,
    }
}

/// The tensor product of two maps: all products of components, outer index
/// first, so component `j*q_H + k` is `F^j * H^k`.
pub fn tensor_product(f: &PolyMap, h: &PolyMap) -> Result<PolyMap, Error> {
    if f.n() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: h.n(),
        });
    }
    let mut components = Vec::with_capacity(f.q() * h.q());
    for a in f.components() {
        for b in h.components() {
            components.push(a * b);
        }
    }
    PolyMap::new(f.n(), components)
}

/// Tensor with the coordinate map `(z1, ..., zn)`.
pub fn tensor_with_z(f: &PolyMap) -> PolyMap {
    tensor_product(f, &PolyMap::coordinates(f.n())).expect("dimensions agree by construction")
}

/// `true` iff the span of `a`'s components is contained in the span of
/// `b`'s: stacking `a` on `b` must not increase the rank.
pub fn subspace_contained(a: &PolyMap, b: &PolyMap) -> Result<bool, Error> {
    let stacked = b.stack(a)?;
    Ok(linear_rank(&stacked).rank == linear_rank(b).rank)
}

/// The rank window `dim V_(F(x)z) - dim V_(G(x)z) <= r <= dim V_(F(x)z)`
/// available to any map satisfying an SOS identity with `A = |F|^2 - |G|^2`.
/// Requires the containment `V_(G(x)z) <= V_(F(x)z)`, which is necessary for
/// such an identity to exist at all.
pub fn specrk_bounds(f: &PolyMap, g: &PolyMap) -> Result<(usize, usize), Error> {
    let fz = tensor_with_z(f);
    let gz = tensor_with_z(g);
    if !subspace_contained(&gz, &fz)? {
        return Err(Error::ContainmentViolated);
    }
    let upper = linear_rank(&fz).rank;
    let lower = upper - linear_rank(&gz).rank;
    Ok((lower, upper))
}

/// One sample of the interpolating-family rank profile.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyRankSample {
    /// Parameter value, as an exact rational string.
    pub t: String,
    /// Certificate rank of `A_t * |z|^2`.
    pub rank: usize,
    /// Set when the sampled rank falls below `dim V_(F(x)z)`, i.e. this
    /// sample exhibits cancellation. Reported, never assumed absent.
    pub cancellation: bool,
}

/// Certificate ranks of `A_t * |z|^2` along sampled parameters. Requires
/// every `t` in `[0, 1]` and that the `t = 1` endpoint product is an SOS.
pub fn family_rank_profile(
    f: &PolyMap,
    g: &PolyMap,
    t_samples: &[Rational],
) -> Result<Vec<FamilyRankSample>, Error> {
    let a1 = a_t_family(f, g, &Rational::from_integer(1.into()))?;
    if !is_sos(&a1.multiply_by_norm()).is_sos() {
        return Err(Error::HypothesisViolated {
            detail: "A_1 * |z|^2 is not an SOS, the family profile is undefined".to_string(),
        });
    }
    let generic = linear_rank(&tensor_with_z(f)).rank;
    t_samples
        .iter()
        .map(|t| {
            let at = a_t_family(f, g, t)?;
            match is_sos(&at.multiply_by_norm()) {
                SosOutcome::Sos(cert) => Ok(FamilyRankSample {
                    t: crate::rational::format_rational(t),
                    rank: cert.rank,
                    cancellation: cert.rank < generic,
                }),
                SosOutcome::NotSos(_) => Err(Error::HypothesisViolated {
                    detail: format!("A_t * |z|^2 unexpectedly not an SOS at t = {t}"),
                }),
            }
        })
        .collect()
}
