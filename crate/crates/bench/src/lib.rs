//! Shared inputs for the criterion benchmarks.

use gradet::random::{instance_rng, invertible_matrix, parity_sorted_degrees, same_parity_degrees};
use gradet::{presets, GradedMatrix};

/// Invertible degree-0 matrix of size n over a preset, fixed by `seed`.
pub fn degree_zero_matrix(preset: &str, n: usize, seed: u64) -> GradedMatrix {
    let alg = presets::preset(preset).expect("known preset");
    let mut rng = instance_rng(seed, "bench", n);
    let nu = same_parity_degrees(&alg, n, &mut rng);
    invertible_matrix(&alg, &nu, &alg.group().zero(), &mut rng).expect("an invertible instance")
}

/// Invertible parity-sorted degree-0 matrix with r0 even and r1 odd rows.
pub fn super_matrix(preset: &str, r0: usize, r1: usize, seed: u64) -> GradedMatrix {
    let alg = presets::preset(preset).expect("known preset");
    let mut rng = instance_rng(seed, "bench-super", r0 * 16 + r1);
    let nu = parity_sorted_degrees(&alg, r0, r1, &mut rng);
    invertible_matrix(&alg, &nu, &alg.group().zero(), &mut rng).expect("an invertible instance")
}
