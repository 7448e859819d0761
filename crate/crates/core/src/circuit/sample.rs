use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CircuitParams, CouplerTuning, JpoSpec};
use crate::constants::{angular, FEMTOFARAD, GHZ, MHZ};

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Seeded random circuits: capacitances log-uniform in [1, 1000] fF with
/// C / C_J below 0.05, n in 1..=10, alpha below 0.9 / n, omega in
/// 2pi [4, 12] GHz and Omega in 2pi [5, 100] MHz.
pub fn random_circuits(seed: u64, count: usize) -> Vec<CircuitParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c_j = log_uniform(&mut rng, 1.0, 1000.0) * FEMTOFARAD;
            let c = c_j * log_uniform(&mut rng, 1e-3, 0.05);
            let c_g = log_uniform(&mut rng, 1.0, 1000.0) * FEMTOFARAD;
            let n = rng.gen_range(1..=10u32);
            let alpha = rng.gen_range(0.0..0.9) / n as f64;
            let omega = angular(rng.gen_range(4.0..12.0) * GHZ);
            let detuning = angular(rng.gen_range(5.0..100.0) * MHZ);
            let pump_phases = [0; 4].map(|_| rng.gen_range(-3.0..3.0));
            CircuitParams {
                c_j,
                c,
                c_g,
                n,
                alpha,
                jpo: JpoSpec::Frequency(omega),
                coupler: CouplerTuning::Detuning(detuning),
                delta_e_j: None,
                pump_freqs: None,
                pump_phases,
            }
        })
        .collect()
}
