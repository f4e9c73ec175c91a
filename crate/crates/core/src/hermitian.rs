//! Hermitian polynomials `A(z, conj z)`, their unique Gram coefficient
//! matrices, exact SOS certification, multiplication and division by the
//! squared norm, and signature (difference-of-squared-norms) decompositions.
//!
//! A Hermitian form is stored canonically: only coefficient positions
//! `(alpha, beta)` with `alpha <= beta` in the global monomial order are
//! kept, the mirrored coefficient being implied by conjugation, and diagonal
//! coefficients are real. This makes the Gram matrix of a form unique, so
//! "is an SOS" is exactly "the Gram matrix is positive semidefinite", decided
//! here by exact Hermitian congruence elimination with no square roots and
//! no tolerances.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::poly::{ExponentVector, PolyMap, Polynomial};
use crate::rational::{GaussianRational, Rational};
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A real-valued polynomial `sum c_{ab} z^a conj(z)^b` with Hermitian
/// coefficient symmetry `c_{ba} = conj(c_{ab})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    n: usize,
    /// Canonical entries with `a <= b`; mirrors are implied.
    terms: BTreeMap<(ExponentVector, ExponentVector), GaussianRational>,
}

impl HermitianForm {
    pub fn zero(n: usize) -> Self {
        HermitianForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The constant form `r`.
    pub fn constant(n: usize, r: Rational) -> Self {
        let mut h = HermitianForm::zero(n);
        let e = ExponentVector::zero(n);
        h.add_canonical(e.clone(), e, GaussianRational::from_rational(r));
        h
    }

    /// The squared norm `sum_i |z_i|^2`.
    pub fn norm_form(n: usize) -> Self {
        let mut h = HermitianForm::zero(n);
        for i in 0..n {
            let e = ExponentVector::unit(n, i);
            h.add_canonical(e.clone(), e, GaussianRational::one());
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_canonical_terms(&self) -> usize {
        self.terms.len()
    }

    /// Canonical entries (`a <= b`), in the global order.
    pub fn canonical_terms(
        &self,
    ) -> impl Iterator<Item = (&(ExponentVector, ExponentVector), &GaussianRational)> {
        self.terms.iter()
    }

    /// Both triangles, mirrors expanded.
    pub fn full_terms(&self) -> Vec<(ExponentVector, ExponentVector, GaussianRational)> {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for ((a, b), c) in &self.terms {
            out.push((a.clone(), b.clone(), c.clone()));
            if a != b {
                out.push((b.clone(), a.clone(), c.conj()));
            }
        }
        out
    }

    /// The coefficient of `z^a conj(z)^b`, resolving mirrored positions.
    pub fn coeff(&self, a: &ExponentVector, b: &ExponentVector) -> GaussianRational {
        if a <= b {
            self.terms
                .get(&(a.clone(), b.clone()))
                .cloned()
                .unwrap_or_else(GaussianRational::zero)
        } else {
            self.terms
                .get(&(b.clone(), a.clone()))
                .map(|c| c.conj())
                .unwrap_or_else(GaussianRational::zero)
        }
    }

    /// Accumulate onto a canonical slot. Callers must pass `a <= b`.
    fn add_canonical(&mut self, a: ExponentVector, b: ExponentVector, c: GaussianRational) {
        debug_assert!(a <= b, "canonical storage requires a <= b");
        debug_assert!(a != b || c.is_real(), "diagonal coefficients must be real");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
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

    /// Add the Hermitian combination `c z^a conj(z)^b + conj(c) z^b conj(z)^a`
    /// (for `a == b` the single diagonal term, which must be real).
    pub fn add_pair(&mut self, a: ExponentVector, b: ExponentVector, c: GaussianRational) {
        assert_eq!(a.len(), self.n);
        assert_eq!(b.len(), self.n);
        if a == b {
            assert!(c.is_real(), "diagonal coefficients must be real");
            self.add_canonical(a, b, c);
        } else if a < b {
            self.add_canonical(a, b, c);
        } else {
            self.add_canonical(b, a, c.conj());
        }
    }

    /// Build from raw `(a, b, coeff)` records carrying both triangles (or
    /// only the canonical one), validating exact Hermitian symmetry.
    pub fn from_raw_terms(
        n: usize,
        raw: Vec<(ExponentVector, ExponentVector, GaussianRational)>,
    ) -> Result<Self, Error> {
        let mut full: BTreeMap<(ExponentVector, ExponentVector), GaussianRational> =
            BTreeMap::new();
        for (a, b, c) in raw {
            if a.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.len(),
                });
            }
            if b.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.len(),
                });
            }
            let mut cur = full.remove(&(a.clone(), b.clone())).unwrap_or_else(GaussianRational::zero);
            cur += &c;
            if !cur.is_zero() {
                full.insert((a, b), cur);
            }
        }
        let mut h = HermitianForm::zero(n);
        for ((a, b), c) in &full {
            match a.cmp(b) {
                std::cmp::Ordering::Less => {
                    let mirror = full
                        .get(&(b.clone(), a.clone()))
                        .cloned()
                        .unwrap_or_else(GaussianRational::zero);
                    if !mirror.is_zero() && mirror != c.conj() {
                        return Err(Error::Parse {
                            detail: format!(
                                "coefficient at ({a}, {b}) is {c} but its mirror is {mirror}, not the conjugate"
                            ),
                        });
                    }
                    h.add_canonical(a.clone(), b.clone(), c.clone());
                }
                std::cmp::Ordering::Equal => {
                    if !c.is_real() {
                        return Err(Error::Parse {
                            detail: format!("diagonal coefficient at ({a}, {a}) is {c}, not real"),
                        });
                    }
                    h.add_canonical(a.clone(), b.clone(), c.clone());
                }
                std::cmp::Ordering::Greater => {
                    // mirror of a canonical entry; record it if the canonical
                    // side was absent, otherwise it was validated above
                    if !full.contains_key(&(b.clone(), a.clone())) {
                        h.add_canonical(b.clone(), a.clone(), c.conj());
                    }
                }
            }
        }
        Ok(h)
    }

    pub fn add(&self, other: &HermitianForm) -> Result<HermitianForm, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_canonical(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HermitianForm) -> Result<HermitianForm, Error> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// Scale by a real rational (real so that Hermitian symmetry survives).
    pub fn scale(&self, r: &Rational) -> HermitianForm {
        if r.is_zero() {
            return HermitianForm::zero(self.n);
        }
        let factor = GaussianRational::from_rational(r.clone());
        HermitianForm {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * &factor))
                .collect(),
        }
    }

    /// Exact real value at a point. Used as a cross-check oracle against the
    /// structural operations.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<Rational, Error> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        let mono = |e: &ExponentVector| -> GaussianRational {
            let mut acc = GaussianRational::one();
            for (i, &exp) in e.exponents().iter().enumerate() {
                if exp > 0 {
                    acc *= &point[i].pow(exp);
                }
            }
            acc
        };
        let mut acc = GaussianRational::zero();
        for ((a, b), c) in &self.terms {
            let v = &(c * &mono(a)) * &mono(b).conj();
            if a == b {
                acc += &v;
            } else {
                // v + conj(v)
                acc += &v;
                acc += &v.conj();
            }
        }
        debug_assert!(acc.im.is_zero(), "Hermitian form evaluated to a non-real value");
        Ok(acc.re)
    }

    /// Exact product with `sum_i |z_i|^2`. The coefficient rule is
    /// `(A * |z|^2)_{g,d} = sum_i A_{g-e_i, d-e_i}`.
    pub fn multiply_by_norm(&self) -> HermitianForm {
        let mut out = HermitianForm::zero(self.n);
        for ((a, b), c) in &self.terms {
            for i in 0..self.n {
                let ei = ExponentVector::unit(self.n, i);
                out.add_canonical(a.add(&ei), b.add(&ei), c.clone());
            }
        }
        out
    }

    /// Quotient by the squared norm together with the residual: returns
    /// `(A, R)` with `self = A * |z|^2 + R` where `A` is the unique candidate
    /// quotient (the multiplication map is injective, so the quotient is
    /// forced coefficient by coefficient). `R = 0` iff `self` is divisible.
    pub fn norm_division_with_residual(&self) -> (HermitianForm, HermitianForm) {
        let n = self.n;
        // Candidate support: close the shifted support of `self` under the
        // moves that the forced recursion can reach.
        let e1 = ExponentVector::unit(n, 0);
        let mut closure: BTreeSet<(ExponentVector, ExponentVector)> = BTreeSet::new();
        let mut work: Vec<(ExponentVector, ExponentVector)> = Vec::new();
        for (g, d) in self.terms.keys() {
            if let (Some(a), Some(b)) = (g.checked_sub(&e1), d.checked_sub(&e1)) {
                if closure.insert((a.clone(), b.clone())) {
                    work.push((a, b));
                }
            }
        }
        while let Some((a, b)) = work.pop() {
            if a.exponents()[0] == 0 || b.exponents()[0] == 0 {
                continue;
            }
            for j in 1..n {
                let ej = ExponentVector::unit(n, j);
                let a2 = a.checked_sub(&e1).unwrap().add(&ej);
                let b2 = b.checked_sub(&e1).unwrap().add(&ej);
                if closure.insert((a2.clone(), b2.clone())) {
                    work.push((a2, b2));
                }
            }
        }

        // Forced values: A_{a,b} = H_{a+e1,b+e1} - sum_{j>=2} A_{a+e1-ej, b+e1-ej}.
        // References increase the first exponent, so evaluate in descending
        // order of the first exponent of `a`.
        let mut order: Vec<(ExponentVector, ExponentVector)> = closure.into_iter().collect();
        order.sort_by_key(|(a, _)| std::cmp::Reverse(a.exponents()[0]));
        let mut memo: BTreeMap<(ExponentVector, ExponentVector), GaussianRational> =
            BTreeMap::new();
        for (a, b) in order {
            let mut value = self.coeff(&a.add(&e1), &b.add(&e1));
            for j in 1..n {
                if a.exponents()[j] >= 1 && b.exponents()[j] >= 1 {
                    let ej = ExponentVector::unit(n, j);
                    let ra = a.add(&e1).checked_sub(&ej).unwrap();
                    let rb = b.add(&e1).checked_sub(&ej).unwrap();
                    if let Some(v) = memo.get(&(ra, rb)) {
                        value -= v;
                    }
                }
            }
            if !value.is_zero() {
                memo.insert((a, b), value);
            }
        }
        let mut quotient = HermitianForm::zero(n);
        for ((a, b), c) in memo {
            quotient.add_canonical(a, b, c);
        }
        let residual = self
            .sub(&quotient.multiply_by_norm())
            .expect("same ambient dimension");
        (quotient, residual)
    }

    /// Exact quotient by the squared norm when it exists; otherwise the first
    /// inconsistent bidegree block (ordered by total degree, then holomorphic
    /// degree).
    pub fn divide_by_norm(&self) -> Result<HermitianForm, Error> {
        let (quotient, residual) = self.norm_division_with_residual();
        if residual.is_zero() {
            return Ok(quotient);
        }
        let ((a, b), _) = residual
            .terms
            .iter()
            .min_by_key(|((a, b), _)| (a.degree() + b.degree(), a.degree(), (a.clone(), b.clone())))
            .expect("nonzero residual has a term");
        let (r, s) = (a.degree() as usize, b.degree() as usize);
        let shown: Vec<String> = residual
            .canonical_terms()
            .filter(|((x, y), _)| x.degree() as usize == r && y.degree() as usize == s)
            .take(4)
            .map(|((x, y), c)| format!("({c})*{x}*conj({y})"))
            .collect();
        Err(Error::NotDivisible {
            r,
            s,
            residual: shown.join(" + "),
        })
    }

    /// View as an ordinary polynomial in doubled variables, `conj(z)` mapped
    /// to fresh variables. Products and divisibility of Hermitian forms are
    /// ordinary polynomial operations there.
    pub fn to_bipoly(&self) -> Polynomial {
        let mut p = Polynomial::zero(2 * self.n);
        for (a, b, c) in self.full_terms() {
            p.add_term(a.concat(&b), c);
        }
        p
    }

    /// Inverse of [`Self::to_bipoly`], validating Hermitian symmetry.
    pub fn from_bipoly(n: usize, p: &Polynomial) -> Result<Self, Error> {
        if p.n() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: p.n(),
            });
        }
        let raw = p
            .terms()
            .map(|(e, c)| {
                let (a, b) = e.split(n);
                (a, b, c.clone())
            })
            .collect();
        HermitianForm::from_raw_terms(n, raw)
    }

    /// Exact product of two Hermitian forms (the result is Hermitian).
    pub fn mul(&self, other: &HermitianForm) -> Result<HermitianForm, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let prod = &self.to_bipoly() * &other.to_bipoly();
        HermitianForm::from_bipoly(self.n, &prod)
    }

    /// The unique Hermitian coefficient matrix over the ordered union of all
    /// monomials occurring in the form.
    pub fn gram(&self) -> GramMatrix {
        let set: BTreeSet<ExponentVector> = self
            .terms
            .keys()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        let basis: Vec<ExponentVector> = set.into_iter().collect();
        let index: BTreeMap<&ExponentVector, usize> =
            basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut mat = Matrix::zeros(basis.len(), basis.len());
        for ((a, b), c) in &self.terms {
            let (i, j) = (index[a], index[b]);
            mat.set(i, j, c.clone());
            if i != j {
                mat.set(j, i, c.conj());
            }
        }
        GramMatrix {
            n: self.n,
            basis,
            mat,
        }
    }
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a == b {
                if a.degree() == 0 {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})*|{a}|^2")?;
                }
            } else {
                write!(f, "({c})*{a}*conj({b}) + h.c.")?;
            }
        }
        Ok(())
    }
}

/// The unique Hermitian coefficient matrix of a form in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    n: usize,
    basis: Vec<ExponentVector>,
    mat: Matrix,
}

impl GramMatrix {
    pub fn new(n: usize, basis: Vec<ExponentVector>, mat: Matrix) -> Result<Self, Error> {
        if mat.rows() != basis.len() || mat.cols() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: mat.rows(),
            });
        }
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if *mat.get(i, j) != mat.get(j, i).conj() {
                    return Err(Error::Parse {
                        detail: format!("Gram matrix not Hermitian at ({i},{j})"),
                    });
                }
            }
        }
        Ok(GramMatrix { n, basis, mat })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[ExponentVector] {
        &self.basis
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    /// Rebuild the originating form: `sum_{ij} M_ij basis_i conj(basis_j)`.
    pub fn reconstruct(&self) -> HermitianForm {
        let raw = (0..self.size())
            .flat_map(|i| (0..self.size()).map(move |j| (i, j)))
            .map(|(i, j)| {
                (
                    self.basis[i].clone(),
                    self.basis[j].clone(),
                    self.mat.get(i, j).clone(),
                )
            })
            .collect();
        HermitianForm::from_raw_terms(self.n, raw).expect("Gram matrices are Hermitian")
    }
}

/// Pivot scan order for the exact congruence elimination. Any strategy gives
/// the same signature (Sylvester's law); exposing two lets tests check that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    #[default]
    FirstNonzeroDiagonal,
    LastNonzeroDiagonal,
}

/// A weighted-squares certificate: `sum_k w_k |Q^k(z)|^2` reproduces the
/// certified form exactly, with positive rational weights. Weights stand in
/// for the unit squares of the exact square roots that leave the rational
/// field; the span of the factors is what rank statements use, and it is
/// unaffected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosCertificate {
    pub factor: PolyMap,
    pub weights: Vec<Rational>,
    pub rank: usize,
}

impl SosCertificate {
    /// Exact reconstruction of the certified form.
    pub fn reconstruct(&self) -> HermitianForm {
        weighted_squared_norm_form(&self.factor, &self.weights)
    }
}

/// An exact witness of indefiniteness: `v^H G v < 0` over the Gram basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotSosWitness {
    pub basis: Vec<ExponentVector>,
    pub vector: Vec<GaussianRational>,
}

impl NotSosWitness {
    /// The exact value `v^H G v` (strictly negative for a valid witness).
    pub fn quadratic_value(&self, gram: &GramMatrix) -> Rational {
        let gv = gram.mat.mul_vec(&self.vector);
        let mut acc = GaussianRational::zero();
        for (vi, gvi) in self.vector.iter().zip(&gv) {
            acc += &(&vi.conj() * gvi);
        }
        debug_assert!(acc.im.is_zero());
        acc.re
    }
}

/// Outcome of the exact SOS decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SosOutcome {
    Sos(SosCertificate),
    NotSos(NotSosWitness),
}

impl SosOutcome {
    pub fn certificate(&self) -> Option<&SosCertificate> {
        match self {
            SosOutcome::Sos(c) => Some(c),
            SosOutcome::NotSos(_) => None,
        }
    }

    pub fn is_sos(&self) -> bool {
        matches!(self, SosOutcome::Sos(_))
    }
}

enum CongruenceResult {
    /// Processed pivot indices with their real pivot values, plus the final
    /// inverse transform whose pivot columns give `G = sum d_k u_k u_k^H`.
    Diagonal(Vec<(usize, Rational)>, Matrix),
    /// A vector with `v^H G v < 0`, in original coordinates.
    Indefinite(Vec<GaussianRational>),
}

/// Exact Hermitian congruence elimination with diagonal pivoting.
///
/// With `stop_at_negative` set, the elimination halts at the first evidence
/// of indefiniteness (a negative diagonal pivot, or an all-zero diagonal with
/// a surviving off-diagonal entry) and returns a witness. Otherwise it
/// diagonalizes fully, restoring a usable diagonal with a shear when only
/// off-diagonal mass remains.
fn congruence(gram: &Matrix, strategy: PivotStrategy, stop_at_negative: bool) -> CongruenceResult {
    let m = gram.rows();
    let mut w = gram.clone();
    let mut t = Matrix::identity(m); // W = T G T^H
    let mut tinv = Matrix::identity(m); // G = Tinv W Tinv^H
    let mut active: Vec<bool> = vec![true; m];
    let mut pivots: Vec<(usize, Rational)> = Vec::new();

    let diag = |w: &Matrix, p: usize| -> Rational {
        let d = w.get(p, p);
        debug_assert!(d.im.is_zero(), "Hermitian diagonal must be real");
        d.re.clone()
    };

    loop {
        let candidates: Vec<usize> = (0..m)
            .filter(|&p| active[p] && !w.get(p, p).is_zero())
            .collect();
        let pivot = match strategy {
            PivotStrategy::FirstNonzeroDiagonal => candidates.first().copied(),
            PivotStrategy::LastNonzeroDiagonal => candidates.last().copied(),
        };
        let p = match pivot {
            Some(p) => p,
            None => {
                // all active diagonals are zero
                let off = (0..m)
                    .filter(|&i| active[i])
                    .flat_map(|i| {
                        (i + 1..m)
                            .filter(|&j| active[j])
                            .map(move |j| (i, j))
                    })
                    .find(|&(i, j)| !w.get(i, j).is_zero());
                let Some((i, j)) = off else {
                    break; // remaining block is zero: done
                };
                let c = w.get(i, j).clone();
                if stop_at_negative {
                    // v0 = e_i - conj(c) e_j gives v0^H W v0 = -2|c|^2 < 0
                    let mut v0 = vec![GaussianRational::zero(); m];
                    v0[i] = GaussianRational::one();
                    v0[j] = -&c.conj();
                    let witness = apply_conj_transpose(&t, &v0);
                    return CongruenceResult::Indefinite(witness);
                }
                // shear row_i += c * row_j turns W_ii into 2|c|^2 > 0
                shear(&mut w, &mut t, &mut tinv, i, j, &c);
                continue;
            }
        };
        let d = diag(&w, p);
        if stop_at_negative && d.is_negative() {
            let mut v0 = vec![GaussianRational::zero(); m];
            v0[p] = GaussianRational::one();
            let witness = apply_conj_transpose(&t, &v0);
            return CongruenceResult::Indefinite(witness);
        }
        // eliminate row/column p against the pivot
        let d_g = GaussianRational::from_rational(d.clone());
        let d_inv = d_g.inv().expect("pivot is nonzero");
        let multipliers: Vec<(usize, GaussianRational)> = (0..m)
            .filter(|&i| active[i] && i != p && !w.get(i, p).is_zero())
            .map(|i| (i, w.get(i, p) * &d_inv))
            .collect();
        for (i, mi) in &multipliers {
            row_op(&mut w, *i, p, mi);
            row_op(&mut t, *i, p, mi);
            // W <- (I - m E_ip) W (I - m E_ip)^H: also the column update
            for r in 0..m {
                let delta = &mi.conj() * w.get(r, p);
                let v = w.get(r, *i) - &delta;
                w.set(r, *i, v);
            }
            // Tinv <- Tinv (I + m E_ip): column p gains m * column i
            for r in 0..m {
                let delta = mi * tinv.get(r, *i);
                let v = tinv.get(r, p) + &delta;
                tinv.set(r, p, v);
            }
        }
        active[p] = false;
        pivots.push((p, d));
    }
    CongruenceResult::Diagonal(pivots, tinv)
}

/// `row_i -= m * row_p`
fn row_op(mat: &mut Matrix, i: usize, p: usize, m: &GaussianRational) {
    for c in 0..mat.cols() {
        let delta = m * mat.get(p, c);
        let v = mat.get(i, c) - &delta;
        mat.set(i, c, v);
    }
}

/// Congruence shear `row_i += c * row_j` (and the mirrored column update),
/// tracked in the transform and its inverse.
fn shear(w: &mut Matrix, t: &mut Matrix, tinv: &mut Matrix, i: usize, j: usize, c: &GaussianRational) {
    let m = w.rows();
    let neg = -c;
    for col in 0..m {
        let delta = c * w.get(j, col);
        let v = w.get(i, col) + &delta;
        w.set(i, col, v);
    }
    for row in 0..m {
        let delta = &c.conj() * w.get(row, j);
        let v = w.get(row, i) + &delta;
        w.set(row, i, v);
    }
    for col in 0..m {
        let delta = c * t.get(j, col);
        let v = t.get(i, col) + &delta;
        t.set(i, col, v);
    }
    // Tinv <- Tinv (I - c E_ij): column j loses c * column i
    for row in 0..m {
        let delta = &neg * tinv.get(row, i);
        let v = tinv.get(row, j) + &delta;
        tinv.set(row, j, v);
    }
}

/// `T^H v`
fn apply_conj_transpose(t: &Matrix, v: &[GaussianRational]) -> Vec<GaussianRational> {
    (0..t.cols())
        .map(|k| {
            let mut acc = GaussianRational::zero();
            for (p, vp) in v.iter().enumerate() {
                if !vp.is_zero() {
                    acc += &(&t.get(p, k).conj() * vp);
                }
            }
            acc
        })
        .collect()
}

fn factors_from_pivots(
    gram: &GramMatrix,
    pivots: &[(usize, Rational)],
    tinv: &Matrix,
) -> Vec<(Rational, Polynomial)> {
    pivots
        .iter()
        .map(|(p, d)| {
            let mut q = Polynomial::zero(gram.n);
            for (i, e) in gram.basis.iter().enumerate() {
                q.add_term(e.clone(), tinv.get(i, *p).clone());
            }
            (d.clone(), q)
        })
        .collect()
}

/// Decide exactly whether a Hermitian form is a (weighted) sum of squared
/// moduli, returning either a certificate or an indefiniteness witness.
pub fn is_sos(h: &HermitianForm) -> SosOutcome {
    is_sos_with_strategy(h, PivotStrategy::default())
}

pub fn is_sos_with_strategy(h: &HermitianForm, strategy: PivotStrategy) -> SosOutcome {
    let gram = h.gram();
    match congruence(&gram.mat, strategy, true) {
        CongruenceResult::Indefinite(vector) => SosOutcome::NotSos(NotSosWitness {
            basis: gram.basis.clone(),
            vector,
        }),
        CongruenceResult::Diagonal(pivots, tinv) => {
            let parts = factors_from_pivots(&gram, &pivots, &tinv);
            let rank = parts.len();
            let mut weights = Vec::with_capacity(rank);
            let mut comps = Vec::with_capacity(rank);
            for (d, q) in parts {
                debug_assert!(d.is_positive());
                weights.push(d);
                comps.push(q);
            }
            let factor = PolyMap::new(h.n, comps).expect("factors share the ambient dimension");
            SosOutcome::Sos(SosCertificate {
                factor,
                weights,
                rank,
            })
        }
    }
}

/// An exact congruence diagonalization split into its positive and negative
/// squares: `sum wplus_j |F^j|^2 - sum wminus_k |G^k|^2` equals the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureDecomposition {
    pub f: PolyMap,
    pub wplus: Vec<Rational>,
    pub g: PolyMap,
    pub wminus: Vec<Rational>,
}

impl SignatureDecomposition {
    pub fn q_plus(&self) -> usize {
        self.f.q()
    }

    pub fn q_minus(&self) -> usize {
        self.g.q()
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.q_plus(), self.q_minus())
    }

    /// Exact reconstruction of the decomposed form.
    pub fn reconstruct(&self) -> HermitianForm {
        let plus = weighted_squared_norm_form(&self.f, &self.wplus);
        let minus = weighted_squared_norm_form(&self.g, &self.wminus);
        plus.sub(&minus).expect("same ambient dimension")
    }
}

/// Exact congruence diagonalization of the Gram matrix into a difference of
/// weighted squared norms. The signature is pivot-strategy independent.
pub fn signature_decompose(h: &HermitianForm) -> SignatureDecomposition {
    signature_decompose_with_strategy(h, PivotStrategy::default())
}

pub fn signature_decompose_with_strategy(
    h: &HermitianForm,
    strategy: PivotStrategy,
) -> SignatureDecomposition {
    let gram = h.gram();
    let CongruenceResult::Diagonal(pivots, tinv) = congruence(&gram.mat, strategy, false) else {
        unreachable!("full diagonalization never reports indefiniteness");
    };
    let parts = factors_from_pivots(&gram, &pivots, &tinv);
    let mut f = Vec::new();
    let mut wplus = Vec::new();
    let mut g = Vec::new();
    let mut wminus = Vec::new();
    for (d, q) in parts {
        if d.is_positive() {
            wplus.push(d);
            f.push(q);
        } else {
            wminus.push(-d);
            g.push(q);
        }
    }
    SignatureDecomposition {
        f: PolyMap::new(h.n, f).expect("components share n"),
        wplus,
        g: PolyMap::new(h.n, g).expect("components share n"),
        wminus,
    }
}

/// `|P|^2 = sum_k P^k conj(P^k)`, expanded exactly.
pub fn squared_norm_form(p: &PolyMap) -> HermitianForm {
    let ones = vec![Rational::from_integer(1.into()); p.q()];
    weighted_squared_norm_form(p, &ones)
}

/// `sum_k w_k P^k conj(P^k)` with real weights.
pub fn weighted_squared_norm_form(p: &PolyMap, weights: &[Rational]) -> HermitianForm {
    assert_eq!(p.q(), weights.len(), "one weight per component");
    let mut h = HermitianForm::zero(p.n());
    for (comp, w) in p.components().iter().zip(weights) {
        if w.is_zero() {
            continue;
        }
        let wg = GaussianRational::from_rational(w.clone());
        let terms: Vec<(&ExponentVector, &GaussianRational)> = comp.terms().collect();
        for (i, (ea, ca)) in terms.iter().enumerate() {
            // BTreeMap iteration is ascending, so ea < eb for j > i.
            h.add_canonical(
                (*ea).clone(),
                (*ea).clone(),
                GaussianRational::from_rational(ca.norm_sqr() * w),
            );
            for (eb, cb) in terms.iter().skip(i + 1) {
                let coeff = &(*ca * &cb.conj()) * &wg;
                h.add_canonical((*ea).clone(), (*eb).clone(), coeff);
            }
        }
    }
    h
}

/// Recover the Hermitian quotient `A` with `|P|^2 = A * |z|^2`, when the
/// squared norm of the map is divisible by the squared norm of the
/// coordinates.
pub fn check_sos_identity(p: &PolyMap) -> Result<HermitianForm, Error> {
    squared_norm_form(p).divide_by_norm()
}

/// The interpolating family `|F|^2 - t |G|^2` for `0 <= t <= 1`.
pub fn a_t_family(f: &PolyMap, g: &PolyMap, t: &Rational) -> Result<HermitianForm, Error> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    if t.is_negative() || t > &Rational::from_integer(1.into()) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            detail: format!("t = {t} outside [0, 1]"),
        });
    }
    let hf = squared_norm_form(f);
    let hg = squared_norm_form(g).scale(t);
    hf.sub(&hg)
}
