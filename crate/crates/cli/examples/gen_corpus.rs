//! Regenerate the instance corpus under `corpus/`. Run from the workspace
//! root:
//!
//! ```text
//! cargo run -p sosgap-cli --example gen_corpus
//! ```

use sosgap_core::instance::write_poly_map;
use sosgap_core::poly::{PolyMap, Polynomial};
use sosgap_core::rank::tensor_with_z;
use sosgap_core::sphere::{standard_linear_embedding, whitney_map, BallMap};
use std::path::Path;

fn write(dir: &Path, name: &str, map: &PolyMap) {
    let path = dir.join(name);
    std::fs::write(&path, write_poly_map(map)).expect("corpus file written");
    println!("wrote {}", path.display());
}

fn main() {
    let dir = Path::new("corpus");
    std::fs::create_dir_all(dir).expect("corpus directory");

    // proper ball maps
    write(dir, "identity_s2.inst", BallMap::identity(2).map());
    write(
        dir,
        "linear_s2_s5.inst",
        standard_linear_embedding(2, 5).unwrap().map(),
    );
    write(
        dir,
        "linear_s4_s7.inst",
        standard_linear_embedding(4, 7).unwrap().map(),
    );
    for n in 1..=4 {
        write(dir, &format!("whitney_s{n}.inst"), whitney_map(n).map());
    }

    // a map that is not proper: component repeated
    let improper = PolyMap::new(
        2,
        vec![
            Polynomial::coordinate(2, 0),
            Polynomial::coordinate(2, 1),
            Polynomial::coordinate(2, 0),
        ],
    )
    .unwrap();
    write(dir, "improper_repeat.inst", &improper);

    // SOS-identity instances
    write(
        dir,
        "tensor_coords_n2.inst",
        &tensor_with_z(&PolyMap::coordinates(2)),
    );
    let z1 = Polynomial::coordinate(2, 0);
    let z2 = Polynomial::coordinate(2, 1);
    let cubes = PolyMap::new(2, vec![&(&z1 * &z1) * &z1, &(&z2 * &z2) * &z2]).unwrap();
    // quotient |z1|^4 - |z1 z2|^2 + |z2|^4 has signature (2, 1)
    write(dir, "cubes_n2.inst", &cubes);
    // the decomposition factors of that quotient: the family profile over
    // these has generic rank 4 with a rank-2 cancellation at t = 1
    let squares = PolyMap::new(2, vec![&z1 * &z1, &z2 * &z2]).unwrap();
    write(dir, "squares_f_n2.inst", &squares);
    let cross = PolyMap::new(2, vec![&z1 * &z2]).unwrap();
    write(dir, "cross_g_n2.inst", &cross);
    // a single coordinate does not satisfy the identity for n = 2
    let single = PolyMap::new(2, vec![Polynomial::coordinate(2, 0)]).unwrap();
    write(dir, "no_identity_n2.inst", &single);
}
