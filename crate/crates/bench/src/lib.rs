//! Benchmark-only crate; see `benches/core_ops.rs`. Shared fixture helpers
//! live here so the bench target stays small.

use rand::SeedableRng;
use sosgap_core::gen::{random_hermitian_form, random_nonzero_poly_map, TestRng};
use sosgap_core::{HermitianForm, PolyMap};

pub fn fixture_maps(count: usize, n: usize, degree: u32) -> Vec<PolyMap> {
    let mut rng = TestRng::seed_from_u64(0xBE7C);
    (0..count)
        .map(|_| random_nonzero_poly_map(&mut rng, n, degree, 4, 3))
        .collect()
}

pub fn fixture_forms(count: usize, n: usize, degree: u32) -> Vec<HermitianForm> {
    let mut rng = TestRng::seed_from_u64(0xBE7D);
    (0..count)
        .map(|_| random_hermitian_form(&mut rng, n, degree))
        .collect()
}
