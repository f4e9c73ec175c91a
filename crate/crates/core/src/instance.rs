//! Instance file formats. Polynomial maps and Hermitian forms are exchanged
//! as JSON documents with exact decimal-free rational strings; parsing
//! rejects malformed rationals and wrong-length exponent vectors.
//!
//! A map file looks like
//! `{"n": 2, "components": [[{"e": [1, 0], "re": "1", "im": "0"}], ...]}`
//! and a Hermitian form file like
//! `{"n": 2, "terms": [{"a": [1, 0], "b": [0, 1], "re": "1/2", "im": "0"}]}`,
//! where the writer only emits canonical `a <= b` entries.

use crate::error::Error;
use crate::hermitian::HermitianForm;
use crate::poly::{ExponentVector, PolyMap, Polynomial};
use crate::rational::{format_rational, GaussianRational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRecord {
    pub e: Vec<u32>,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyMapFile {
    pub n: usize,
    pub components: Vec<Vec<TermRecord>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HermitianTermRecord {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HermitianFormFile {
    pub n: usize,
    pub terms: Vec<HermitianTermRecord>,
}

fn check_exponents(n: usize, e: &[u32]) -> Result<ExponentVector, Error> {
    if e.len() != n {
        return Err(Error::Parse {
            detail: format!(
                "exponent vector {:?} has length {}, expected {}",
                e,
                e.len(),
                n
            ),
        });
    }
    Ok(ExponentVector::new(e.to_vec()))
}

impl PolyMapFile {
    pub fn from_map(map: &PolyMap) -> Self {
        PolyMapFile {
            n: map.n(),
            components: map
                .components()
                .iter()
                .map(|c| {
                    c.terms()
                        .map(|(e, coeff)| TermRecord {
                            e: e.exponents().to_vec(),
                            re: format_rational(&coeff.re),
                            im: format_rational(&coeff.im),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn into_map(self) -> Result<PolyMap, Error> {
        let mut components = Vec::with_capacity(self.components.len());
        for terms in &self.components {
            let mut p = Polynomial::zero(self.n);
            for t in terms {
                let e = check_exponents(self.n, &t.e)?;
                p.add_term(e, GaussianRational::parse_pair(&t.re, &t.im)?);
            }
            components.push(p);
        }
        PolyMap::new(self.n, components)
    }
}

impl HermitianFormFile {
    pub fn from_form(form: &HermitianForm) -> Self {
        HermitianFormFile {
            n: form.n(),
            terms: form
                .canonical_terms()
                .map(|((a, b), coeff)| HermitianTermRecord {
                    a: a.exponents().to_vec(),
                    b: b.exponents().to_vec(),
                    re: format_rational(&coeff.re),
                    im: format_rational(&coeff.im),
                })
                .collect(),
        }
    }

    pub fn into_form(self) -> Result<HermitianForm, Error> {
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let a = check_exponents(self.n, &t.a)?;
            let b = check_exponents(self.n, &t.b)?;
            raw.push((a, b, GaussianRational::parse_pair(&t.re, &t.im)?));
        }
        HermitianForm::from_raw_terms(self.n, raw)
    }
}

/// Parse a polynomial map instance document.
pub fn parse_poly_map(text: &str) -> Result<PolyMap, Error> {
    let file: PolyMapFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        detail: e.to_string(),
    })?;
    file.into_map()
}

/// Serialize a polynomial map instance document.
pub fn write_poly_map(map: &PolyMap) -> String {
    serde_json::to_string_pretty(&PolyMapFile::from_map(map)).expect("serialization cannot fail")
}

/// Parse a Hermitian form instance document.
pub fn parse_hermitian_form(text: &str) -> Result<HermitianForm, Error> {
    let file: HermitianFormFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        detail: e.to_string(),
    })?;
    file.into_form()
}

/// Serialize a Hermitian form instance document (canonical entries only).
pub fn write_hermitian_form(form: &HermitianForm) -> String {
    serde_json::to_string_pretty(&HermitianFormFile::from_form(form))
        .expect("serialization cannot fail")
}
