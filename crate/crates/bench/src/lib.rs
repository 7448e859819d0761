//! Shared fixtures for the criterion benches.

use fourbody_core::CircuitParams;

/// Parameter sets spanning the coupling strengths used in the benches.
pub fn coupling_ladder() -> Vec<CircuitParams> {
    [1.0, 0.5, 0.25]
        .iter()
        .map(|scale| {
            let mut p = CircuitParams::fig2();
            p.c *= scale;
            p
        })
        .collect()
}
