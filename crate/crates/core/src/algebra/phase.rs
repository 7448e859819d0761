use std::fmt;

use num_traits::Zero;

use super::scalar::{rational, Rational};

/// Time dependence `exp(i (f . w t + phase . theta))` where the frequency
/// basis is (w_p1, w_p2, w_p3, w_p4, w_+, w_-) and the phase basis is the
/// four pump phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseTag {
    pub freq: [Rational; 6],
    pub phase: [Rational; 4],
}

impl Default for PhaseTag {
    fn default() -> Self {
        Self::ZERO
    }
}

const R0: Rational = Rational::new_raw(0, 1);

impl PhaseTag {
    pub const ZERO: PhaseTag = PhaseTag {
        freq: [R0; 6],
        phase: [R0; 4],
    };

    /// Tag of `exp(sign * i (w_pk t + theta_k))`.
    pub fn pump(k: usize, sign: i64) -> Self {
        let mut t = Self::ZERO;
        t.freq[k] = rational(sign, 1);
        t.phase[k] = rational(sign, 1);
        t
    }

    pub fn new(freq: [Rational; 6], phase: [Rational; 4]) -> Self {
        PhaseTag { freq, phase }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = *self;
        for (a, b) in t.freq.iter_mut().zip(other.freq.iter()) {
            *a += b;
        }
        for (a, b) in t.phase.iter_mut().zip(other.phase.iter()) {
            *a += b;
        }
        t
    }

    pub fn neg(&self) -> Self {
        PhaseTag {
            freq: self.freq.map(|x| -x),
            phase: self.phase.map(|x| -x),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.freq.iter().chain(self.phase.iter()).all(Zero::is_zero)
    }

    /// Stationary iff the frequency vector is a multiple of (1, 1, -1, -1, 0, 0),
    /// the only combination annulled by the pump constraint.
    pub fn is_stationary(&self) -> bool {
        let f = &self.freq;
        f[4].is_zero() && f[5].is_zero() && f[0] == f[1] && f[2] == f[3] && f[0] == -f[2]
    }

    /// Frequency-only comparison.
    pub fn same_frequency(&self, other: &Self) -> bool {
        self.freq == other.freq
    }
}

impl fmt::Display for PhaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Rational]| {
            v.iter()
                .map(|r| {
                    if *r.denom() == 1 {
                        r.numer().to_string()
                    } else {
                        format!("{}/{}", r.numer(), r.denom())
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "f=({}) th=({})", show(&self.freq), show(&self.phase))
    }
}
