//! Physical constants (exact SI 2019 values) and unit helpers.

pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

pub const FEMTOFARAD: f64 = 1e-15;
pub const GHZ: f64 = 1e9;
pub const MHZ: f64 = 1e6;

/// Angular frequency for an ordinary frequency in Hz.
pub fn angular(hz: f64) -> f64 {
    TWO_PI * hz
}

/// Ordinary frequency in Hz for an angular frequency.
pub fn per_two_pi(rad_per_s: f64) -> f64 {
    rad_per_s / TWO_PI
}
