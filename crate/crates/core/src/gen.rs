//! Seeded random generators for polynomials, maps, Hermitian forms and
//! rational sphere points. Shared by the search harness and the test suites;
//! everything is deterministic given the RNG state.

use crate::hermitian::HermitianForm;
use crate::poly::{ExponentVector, PolyMap, Polynomial};
use crate::rational::{GaussianRational, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The deterministic RNG used throughout the crate.
pub type TestRng = ChaCha8Rng;

/// All exponent vectors in `n` variables of total degree exactly `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<ExponentVector> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if n == 1 {
            prefix.push(d);
            out.push(ExponentVector::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All exponent vectors in `n` variables of total degree `<= d`, in the
/// global monomial order.
pub fn monomials_up_to_degree(n: usize, d: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    for k in 0..=d {
        out.extend(monomials_of_degree(n, k));
    }
    out
}

/// A small random rational with numerator in `-4..=4` and denominator in
/// `1..=3`.
pub fn random_rational(rng: &mut TestRng) -> Rational {
    let numer: i64 = rng.random_range(-4..=4);
    let denom: i64 = rng.random_range(1..=3);
    Rational::new(numer.into(), denom.into())
}

pub fn random_gaussian_rational(rng: &mut TestRng) -> GaussianRational {
    GaussianRational::new(random_rational(rng), random_rational(rng))
}

/// A random polynomial with at most `max_terms` monomials of degree at most
/// `max_degree`. May be zero when colliding terms cancel.
pub fn random_polynomial(rng: &mut TestRng, n: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let monos = monomials_up_to_degree(n, max_degree);
    let mut p = Polynomial::zero(n);
    let terms = rng.random_range(0..=max_terms);
    for _ in 0..terms {
        let e = monos[rng.random_range(0..monos.len())].clone();
        p.add_term(e, random_gaussian_rational(rng));
    }
    p
}

/// A random evaluation point with small rational coordinates.
pub fn random_point(rng: &mut TestRng, n: usize) -> Vec<GaussianRational> {
    (0..n).map(|_| random_gaussian_rational(rng)).collect()
}

/// A random map with `1..=max_components` random components.
pub fn random_poly_map(
    rng: &mut TestRng,
    n: usize,
    max_degree: u32,
    max_components: usize,
    max_terms: usize,
) -> PolyMap {
    let q = rng.random_range(1..=max_components);
    let components = (0..q)
        .map(|_| random_polynomial(rng, n, max_degree, max_terms))
        .collect();
    PolyMap::new(n, components).expect("components share n by construction")
}

/// A random map whose components are all nonzero.
pub fn random_nonzero_poly_map(
    rng: &mut TestRng,
    n: usize,
    max_degree: u32,
    max_components: usize,
    max_terms: usize,
) -> PolyMap {
    let q = rng.random_range(1..=max_components);
    let monos = monomials_up_to_degree(n, max_degree);
    let components = (0..q)
        .map(|_| {
            let mut p = Polynomial::zero(n);
            while p.is_zero() {
                let terms = rng.random_range(1..=max_terms);
                for _ in 0..terms {
                    let e = monos[rng.random_range(0..monos.len())].clone();
                    p.add_term(e, random_gaussian_rational(rng));
                }
            }
            p
        })
        .collect();
    PolyMap::new(n, components).expect("components share n by construction")
}

/// A random Hermitian form built as a random difference of squared norms
/// plus a random real-diagonal perturbation; always exactly Hermitian.
pub fn random_hermitian_form(rng: &mut TestRng, n: usize, max_degree: u32) -> HermitianForm {
    let monos = monomials_up_to_degree(n, max_degree);
    let mut h = HermitianForm::zero(n);
    let pairs = rng.random_range(0..=6);
    for _ in 0..pairs {
        let a = monos[rng.random_range(0..monos.len())].clone();
        let b = monos[rng.random_range(0..monos.len())].clone();
        if a == b {
            h.add_pair(a, b, GaussianRational::from_rational(random_rational(rng)));
        } else {
            h.add_pair(a, b, random_gaussian_rational(rng));
        }
    }
    h
}

/// A random exact rational point on the unit sphere of `C^m`, via the
/// stereographic parametrization of `S^{2m-1}` in `R^{2m}`: with
/// `s = |u|^2`, the point `(2u, 1-s)/(1+s)` has unit norm identically.
pub fn random_sphere_point(rng: &mut TestRng, m: usize) -> Vec<GaussianRational> {
    assert!(m >= 1);
    let dim = 2 * m - 1;
    let u: Vec<Rational> = (0..dim)
        .map(|_| {
            let numer: i64 = rng.random_range(-6..=6);
            let denom: i64 = rng.random_range(1..=5);
            Rational::new(numer.into(), denom.into())
        })
        .collect();
    let s: Rational = u.iter().map(|x| x * x).sum();
    let one = Rational::from_integer(1.into());
    let scale = &one + &s;
    let mut coords: Vec<Rational> = u.iter().map(|x| (x + x) / &scale).collect();
    coords.push((&one - &s) / &scale);
    // pack consecutive real coordinates into complex ones
    (0..m)
        .map(|j| GaussianRational::new(coords[2 * j].clone(), coords[2 * j + 1].clone()))
        .collect()
}

/// A random invertible q x q matrix, for recombination-invariance tests.
pub fn random_invertible_matrix(rng: &mut TestRng, q: usize) -> crate::matrix::Matrix {
    loop {
        let mut m = crate::matrix::Matrix::zeros(q, q);
        for r in 0..q {
            for c in 0..q {
                m.set(r, c, random_gaussian_rational(rng));
            }
        }
        if m.rank() == q {
            return m;
        }
    }
}
