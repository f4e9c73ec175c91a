//! Sparse multivariate polynomials over the Gaussian rationals, and tuples of
//! polynomials (maps). All arithmetic is exact.
//!
//! Monomials are ordered globally in graded lexicographic order (total degree
//! first, then lexicographic with the first variable most significant), so
//! that every basis, Gram matrix and certificate in the crate is reproducible
//! bit for bit.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::rational::GaussianRational;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A monomial exponent vector of fixed length `n` (the ambient dimension).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    /// The constant monomial in `n` variables.
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The single variable `z_{i+1}` in `n` variables.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Total degree: the sum of the entries.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, or `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Concatenate two exponent vectors (used for the doubled-variable view
    /// of Hermitian forms).
    pub fn concat(&self, other: &ExponentVector) -> ExponentVector {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        ExponentVector(e)
    }

    /// Split into the first `n` and remaining entries.
    pub fn split(&self, n: usize) -> (ExponentVector, ExponentVector) {
        (
            ExponentVector(self.0[..n].to_vec()),
            ExponentVector(self.0[n..].to_vec()),
        )
    }
}

impl Ord for ExponentVector {
    /// Graded lexicographic order: lower total degree first; within a degree,
    /// monomials with higher power on earlier variables come first, so for
    /// n = 2 the degree-2 monomials sort as `z1^2, z1 z2, z2^2`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial in `n` complex variables with Gaussian-rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, GaussianRational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(ExponentVector::zero(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, GaussianRational::one())
    }

    /// The coordinate polynomial `z_{i+1}`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        assert!(i < n, "coordinate index {i} out of range for n = {n}");
        let mut p = Polynomial::zero(n);
        p.add_term(ExponentVector::unit(n, i), GaussianRational::one());
        p
    }

    pub fn monomial(n: usize, exponents: ExponentVector, c: GaussianRational) -> Self {
        assert_eq!(exponents.len(), n);
        let mut p = Polynomial::zero(n);
        p.add_term(exponents, c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, with `-1` as the reporting sentinel for the zero
    /// polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Accumulate a term, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, e: ExponentVector, c: GaussianRational) {
        assert_eq!(e.len(), self.n, "exponent vector length != ambient dimension");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn conj_coefficients(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.conj()))
                .collect(),
        }
    }

    /// Exact product, checking ambient dimensions.
    pub fn mul_checked(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = Polynomial::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Exact evaluation by direct summation over the stored terms.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational, Error> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.exponents().iter().enumerate() {
                if exp > 0 {
                    term *= &point[i].pow(exp);
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// The leading term under the global monomial order (largest monomial).
    pub fn leading_term(&self) -> Option<(&ExponentVector, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Exact division by a single divisor under the global monomial order.
    /// Returns the quotient when the division leaves no remainder, otherwise
    /// `None`. For a single divisor this decides divisibility exactly.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.n, divisor.n);
        let (lt_e, lt_c) = divisor.leading_term()?;
        let lt_c_inv = lt_c.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.n);
        loop {
            let Some((e, c)) = rem.leading_term() else {
                return Some(quot);
            };
            let e = e.clone();
            let c = c.clone();
            let q_e = e.checked_sub(lt_e)?;
            let q_c = &c * &lt_c_inv;
            rem.add_term(e, -&c);
            for (de, dc) in divisor.terms.iter() {
                if de != lt_e {
                    rem.add_term(q_e.add(de), -&(&q_c * dc));
                }
            }
            quot.add_term(q_e, q_c);
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.degree() == 0 {
                write!(f, "{c}")?;
            } else if c == &GaussianRational::one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "({c})*{e}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "ambient dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "ambient dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_checked(rhs).expect("ambient dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// An ordered tuple of polynomials sharing one ambient dimension. The empty
/// tuple is allowed and represents the zero map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    n: usize,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(n: usize, components: Vec<Polynomial>) -> Result<Self, Error> {
        for c in &components {
            if c.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.n(),
                });
            }
        }
        Ok(PolyMap { n, components })
    }

    pub fn empty(n: usize) -> Self {
        PolyMap {
            n,
            components: Vec::new(),
        }
    }

    /// The coordinate map `(z1, ..., zn)`.
    pub fn coordinates(n: usize) -> Self {
        PolyMap {
            n,
            components: (0..n).map(|i| Polynomial::coordinate(n, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of components.
    pub fn q(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn push(&mut self, p: Polynomial) {
        assert_eq!(p.n(), self.n);
        self.components.push(p);
    }

    /// Concatenate the components of two maps over the same variables.
    pub fn stack(&self, other: &PolyMap) -> Result<PolyMap, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(PolyMap {
            n: self.n,
            components,
        })
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<Vec<GaussianRational>, Error> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    /// The ordered union of all monomials occurring in any component.
    pub fn monomial_basis(&self) -> Vec<ExponentVector> {
        let set: BTreeSet<ExponentVector> = self
            .components
            .iter()
            .flat_map(|c| c.terms().map(|(e, _)| e.clone()))
            .collect();
        set.into_iter().collect()
    }

    /// The coefficient matrix whose row space is the span of the components:
    /// row `j` holds component `j`'s coefficients over the ordered monomial
    /// basis.
    pub fn coefficient_matrix(&self) -> (Vec<ExponentVector>, Matrix) {
        let basis = self.monomial_basis();
        let index: BTreeMap<&ExponentVector, usize> =
            basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut m = Matrix::zeros(self.q(), basis.len());
        for (row, comp) in self.components.iter().enumerate() {
            for (e, c) in comp.terms() {
                m.set(row, index[e], c.clone());
            }
        }
        (basis, m)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_point, random_polynomial, TestRng};
    use rand::SeedableRng;

    fn z(n: usize, i: usize) -> Polynomial {
        Polynomial::coordinate(n, i)
    }

    #[test]
    fn grlex_order_matches_expected_basis() {
        let e = |v: Vec<u32>| ExponentVector::new(v);
        let mut monos = vec![
            e(vec![0, 2]),
            e(vec![1, 1]),
            e(vec![0, 0]),
            e(vec![2, 0]),
            e(vec![0, 1]),
            e(vec![1, 0]),
        ];
        monos.sort();
        assert_eq!(
            monos,
            vec![
                e(vec![0, 0]),
                e(vec![1, 0]),
                e(vec![0, 1]),
                e(vec![2, 0]),
                e(vec![1, 1]),
                e(vec![0, 2]),
            ]
        );
    }

    #[test]
    fn monomial_product() {
        let p = &z(2, 0) * &z(2, 1);
        let mut expected = Polynomial::zero(2);
        expected.add_term(ExponentVector::new(vec![1, 1]), GaussianRational::one());
        assert_eq!(p, expected);
    }

    #[test]
    fn difference_of_squares() {
        let a = &z(2, 0) + &z(2, 1);
        let b = &z(2, 0) - &z(2, 1);
        let p = &a * &b;
        let mut expected = Polynomial::zero(2);
        expected.add_term(ExponentVector::new(vec![2, 0]), GaussianRational::one());
        expected.add_term(ExponentVector::new(vec![0, 2]), -&GaussianRational::one());
        assert_eq!(p, expected);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let err = z(2, 0).mul_checked(&z(3, 0)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn product_degree_adds() {
        let mut rng = TestRng::seed_from_u64(7);
        for _ in 0..50 {
            let a = random_polynomial(&mut rng, 3, 3, 4);
            let b = random_polynomial(&mut rng, 3, 3, 4);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let p = &a * &b;
            assert_eq!(p.degree(), a.degree() + b.degree());
        }
    }

    /// Point-evaluation oracle: products evaluated at random points agree
    /// with evaluating the factors.
    #[test]
    fn mul_matches_point_evaluation() {
        let mut rng = TestRng::seed_from_u64(42);
        for _ in 0..20 {
            let a = random_polynomial(&mut rng, 3, 3, 5);
            let b = random_polynomial(&mut rng, 3, 3, 5);
            let p = &a * &b;
            for _ in 0..20 {
                let pt = random_point(&mut rng, 3);
                let lhs = p.evaluate(&pt).unwrap();
                let rhs = &a.evaluate(&pt).unwrap() * &b.evaluate(&pt).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        // z1^2 z2 at (2, 3) = 12
        let p = &(&z(2, 0) * &z(2, 0)) * &z(2, 1);
        let pt = [GaussianRational::from_integer(2), GaussianRational::from_integer(3)];
        assert_eq!(p.evaluate(&pt).unwrap(), GaussianRational::from_integer(12));

        // any p at origin -> constant term
        let mut rng = TestRng::seed_from_u64(3);
        for _ in 0..10 {
            let p = random_polynomial(&mut rng, 2, 3, 5);
            let origin = vec![GaussianRational::zero(); 2];
            assert_eq!(
                p.evaluate(&origin).unwrap(),
                p.coeff(&ExponentVector::zero(2))
            );
        }

        // (z1 + i z2) at (1, 1) = 1 + i
        let p = &z(2, 0) + &z(2, 1).scale(&GaussianRational::i());
        let pt = [GaussianRational::one(), GaussianRational::one()];
        assert_eq!(p.evaluate(&pt).unwrap(), GaussianRational::from_integers(1, 1));

        let err = z(2, 0).evaluate(&[GaussianRational::one()]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn coefficient_matrix_examples() {
        // (z1, z2): identity 2x2 over basis [z1, z2]
        let m = PolyMap::coordinates(2);
        let (basis, mat) = m.coefficient_matrix();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], ExponentVector::new(vec![1, 0]));
        assert_eq!(basis[1], ExponentVector::new(vec![0, 1]));
        assert_eq!(mat.rank(), 2);

        // duplicate rows -> rank 1
        let s = &z(2, 0) + &z(2, 1);
        let m = PolyMap::new(2, vec![s.clone(), s]).unwrap();
        let (_, mat) = m.coefficient_matrix();
        assert_eq!(mat.rank(), 1);

        // (z1^2, z1 z2, z1 z2, z2^2): 4x3, rank 3
        let m = PolyMap::new(
            2,
            vec![
                &z(2, 0) * &z(2, 0),
                &z(2, 0) * &z(2, 1),
                &z(2, 0) * &z(2, 1),
                &z(2, 1) * &z(2, 1),
            ],
        )
        .unwrap();
        let (basis, mat) = m.coefficient_matrix();
        assert_eq!(basis.len(), 3);
        assert_eq!((mat.rows(), mat.cols()), (4, 3));
        assert_eq!(mat.rank(), 3);
    }

    /// Ring axioms checked by structural equality on random triples.
    #[test]
    fn ring_axioms_random_triples() {
        let mut rng = TestRng::seed_from_u64(2024);
        for _ in 0..1000 {
            let a = random_polynomial(&mut rng, 2, 3, 3);
            let b = random_polynomial(&mut rng, 2, 3, 3);
            let c = random_polynomial(&mut rng, 2, 3, 3);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a * &b, &b * &a);
        }
    }

    /// evaluate is a ring homomorphism.
    #[test]
    fn evaluate_is_ring_homomorphism() {
        let mut rng = TestRng::seed_from_u64(99);
        for _ in 0..100 {
            let a = random_polynomial(&mut rng, 3, 2, 4);
            let b = random_polynomial(&mut rng, 3, 2, 4);
            let pt = random_point(&mut rng, 3);
            assert_eq!(
                (&a * &b).evaluate(&pt).unwrap(),
                &a.evaluate(&pt).unwrap() * &b.evaluate(&pt).unwrap()
            );
            assert_eq!(
                (&a + &b).evaluate(&pt).unwrap(),
                &a.evaluate(&pt).unwrap() + &b.evaluate(&pt).unwrap()
            );
        }
    }

    #[test]
    fn div_exact_roundtrip_and_failure() {
        let mut rng = TestRng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_polynomial(&mut rng, 2, 2, 3);
            let b = random_polynomial(&mut rng, 2, 2, 3);
            if b.is_zero() {
                continue;
            }
            let p = &a * &b;
            let q = p.div_exact(&b).expect("constructed product must divide");
            assert_eq!(q, a);
        }
        // z1^2 + z2 is not divisible by z1 + 1
        let num = &(&z(2, 0) * &z(2, 0)) + &z(2, 1);
        let den = &z(2, 0) + &Polynomial::one(2);
        assert!(num.div_exact(&den).is_none());
    }
}
