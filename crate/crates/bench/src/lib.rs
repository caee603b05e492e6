//! Fixtures shared by the benchmarks.

use factorq::edgelist::generate_synthetic;
use factorq::{Graph, Statevector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Normalized state with seeded random amplitudes.
pub fn random_state(qubits: usize, seed: u64) -> Statevector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps: Vec<Complex64> =
        (0..1usize << qubits).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    Statevector::from_amplitudes(amps).expect("power-of-two length")
}

/// Seeded `G(n, p)` graph.
pub fn graph(nodes: usize, density: f64, seed: u64) -> Graph {
    generate_synthetic(nodes, density, seed).expect("density in range")
}
