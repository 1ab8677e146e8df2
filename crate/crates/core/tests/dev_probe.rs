//! Development probe: runs the pipeline over small enumerated instances
//! and prints the first failures with full detail. Kept cheap; the real
//! gates live in the acceptance suite.

use orthonet_core::harness::{check_instance, enumerate_tree_polycubes};

#[test]
fn exhaustive_small() {
    let shapes = enumerate_tree_polycubes(3);
    let mut failures = 0;
    for o in &shapes {
        if let Err(f) = check_instance(o) {
            failures += 1;
            if failures <= 8 {
                eprintln!("FAIL {:?} [{}] {}", f.positions, f.stage, f.detail);
            }
        }
    }
    assert_eq!(failures, 0, "{failures}/{} instances failed", shapes.len());
}
