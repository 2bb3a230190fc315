//! Channel parameterizations for the two-user, two-antenna broadcast setting.
//!
//! The transmitter may know either the four link quality ratios directly
//! (magnitude-only CSIT) or the full complex channel matrix (needed by the
//! full-CSIT baselines). Link qualities are `g_ij = (P/2)|h_ij|^2`, i.e. the
//! direct entries act as SNRs and the cross entries as INRs.

use num_complex::Complex64;

use crate::Error;

const TAU: f64 = 2.0 * std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// Total transmit power budget, split evenly across the two antennas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    total: f64,
}

impl PowerBudget {
    /// Create a budget with total power `total` (linear units).
    ///
    /// Panics if `total` is not a positive finite number.
    pub fn new(total: f64) -> Self {
        assert!(
            total.is_finite() && total > 0.0,
            "total power must be positive and finite, got {total}"
        );
        Self { total }
    }

    /// Total transmit power.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Per-antenna power cap, always `total / 2` for two antennas.
    pub fn per_antenna(&self) -> f64 {
        self.total / 2.0
    }
}

/// The four link quality ratios `g_ij = (P/2)|h_ij|^2` (linear, dimensionless).
///
/// This is the only channel knowledge the non-coherent scheme uses. The first
/// index is the receiver, the second the transmit antenna.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGains {
    pub g11: f64,
    pub g12: f64,
    pub g21: f64,
    pub g22: f64,
}

impl LinkGains {
    /// Panics unless all four gains are finite and non-negative.
    pub fn new(g11: f64, g12: f64, g21: f64, g22: f64) -> Self {
        for (name, g) in [("g11", g11), ("g12", g12), ("g21", g21), ("g22", g22)] {
            assert!(g.is_finite() && g >= 0.0, "{name} must be finite and >= 0, got {g}");
        }
        Self { g11, g12, g21, g22 }
    }

    /// Direct gain of user 1 (`snr_1`).
    pub fn snr1(&self) -> f64 {
        self.g11
    }

    /// Direct gain of user 2 (`snr_2`).
    pub fn snr2(&self) -> f64 {
        self.g22
    }

    /// Cross gain seen by user 1 (`inr_1`).
    pub fn inr1(&self) -> f64 {
        self.g12
    }

    /// Cross gain seen by user 2 (`inr_2`).
    pub fn inr2(&self) -> f64 {
        self.g21
    }

    /// Total received quality of user 1, `(P/2)·‖h_1‖²`.
    pub fn row1_sum(&self) -> f64 {
        self.g11 + self.g12
    }

    /// Total received quality of user 2, `(P/2)·‖h_2‖²`.
    pub fn row2_sum(&self) -> f64 {
        self.g21 + self.g22
    }

    /// Gains with the two transmit antennas relabeled (columns swapped).
    ///
    /// The private-message-to-antenna pairing is a free design choice for the
    /// transmitter; sweeping both pairings costs one extra evaluation.
    pub fn antennas_swapped(&self) -> Self {
        Self {
            g11: self.g12,
            g12: self.g11,
            g21: self.g22,
            g22: self.g21,
        }
    }
}

/// One complex channel entry stored as magnitude and phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    magnitude: f64,
    phase: f64,
}

impl Polar {
    /// Panics if `magnitude` is negative or either value is non-finite.
    /// The phase is normalized into `[0, 2π)`.
    pub fn new(magnitude: f64, phase: f64) -> Self {
        assert!(
            magnitude.is_finite() && magnitude >= 0.0,
            "magnitude must be finite and >= 0, got {magnitude}"
        );
        assert!(phase.is_finite(), "phase must be finite, got {phase}");
        let mut phase = phase % TAU;
        if phase < 0.0 {
            phase += TAU;
        }
        Self { magnitude, phase }
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.magnitude, self.phase)
    }
}

/// Full 2x2 complex channel matrix; required by the full-CSIT baselines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexChannel {
    pub h11: Polar,
    pub h12: Polar,
    pub h21: Polar,
    pub h22: Polar,
}

impl ComplexChannel {
    pub fn new(h11: Polar, h12: Polar, h21: Polar, h22: Polar) -> Self {
        Self { h11, h12, h21, h22 }
    }

    /// Build from magnitude and phase arrays ordered `[h11, h12, h21, h22]`.
    pub fn from_parts(magnitudes: [f64; 4], phases: [f64; 4]) -> Self {
        Self {
            h11: Polar::new(magnitudes[0], phases[0]),
            h12: Polar::new(magnitudes[1], phases[1]),
            h21: Polar::new(magnitudes[2], phases[2]),
            h22: Polar::new(magnitudes[3], phases[3]),
        }
    }

    /// Row of the channel matrix for one receiver, as complex amplitudes.
    pub fn row(&self, user: User) -> [Complex64; 2] {
        match user {
            User::One => [self.h11.to_complex(), self.h12.to_complex()],
            User::Two => [self.h21.to_complex(), self.h22.to_complex()],
        }
    }

    /// Row magnitudes for one receiver.
    pub fn row_magnitudes(&self, user: User) -> [f64; 2] {
        match user {
            User::One => [self.h11.magnitude(), self.h12.magnitude()],
            User::Two => [self.h21.magnitude(), self.h22.magnitude()],
        }
    }
}

/// Receiver index in the two-user setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum User {
    One,
    Two,
}

/// Gains for the symmetric configuration `snr_1 = snr_2`, `inr_1 = inr_2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricGains {
    pub snr: f64,
    pub inr: f64,
}

impl SymmetricGains {
    /// Panics unless both gains are finite and non-negative.
    pub fn new(snr: f64, inr: f64) -> Self {
        assert!(snr.is_finite() && snr >= 0.0, "snr must be finite and >= 0, got {snr}");
        assert!(inr.is_finite() && inr >= 0.0, "inr must be finite and >= 0, got {inr}");
        Self { snr, inr }
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Link qualities `g_ij = (P/2)|h_ij|^2` from a complex channel and a power
/// budget. The output depends only on the entry magnitudes.
pub fn gains_from_channel(ch: &ComplexChannel, p: &PowerBudget) -> LinkGains {
    let half = p.per_antenna();
    let sq = |e: &Polar| half * e.magnitude() * e.magnitude();
    LinkGains::new(sq(&ch.h11), sq(&ch.h12), sq(&ch.h21), sq(&ch.h22))
}

/// Power ratio from decibels: `10^(x_db/10)`.
pub fn db_to_linear(x_db: f64) -> f64 {
    10.0_f64.powf(x_db / 10.0)
}

/// Decibels from a power ratio. Rejects non-positive input.
pub fn linear_to_db(x: f64) -> Result<f64, Error> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::NonPositive { name: "linear value", value: x });
    }
    Ok(10.0 * x.log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn test_gains_unit_magnitudes() {
        let ch = ComplexChannel::from_parts([1.0; 4], [0.0; 4]);
        let g = gains_from_channel(&ch, &PowerBudget::new(2.0));
        assert_eq!((g.g11, g.g12, g.g21, g.g22), (1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn test_gains_single_entry() {
        let ch = ComplexChannel::from_parts([1.0, 0.0, 0.0, 0.0], [0.0; 4]);
        let g = gains_from_channel(&ch, &PowerBudget::new(20.0));
        assert_eq!(g.g11, 10.0);
        assert_eq!((g.g12, g.g21, g.g22), (0.0, 0.0, 0.0));
    }

    #[test]
    fn test_gains_mixed_magnitudes() {
        // |h11|=sqrt(2), |h12|=1, |h21|=1, |h22|=sqrt(2), P=10 -> (10, 5, 5, 10)
        let s2 = 2.0_f64.sqrt();
        let ch = ComplexChannel::from_parts([s2, 1.0, 1.0, s2], [0.1, 0.2, 0.3, 0.4]);
        let g = gains_from_channel(&ch, &PowerBudget::new(10.0));
        assert!((g.g11 - 10.0).abs() < 1e-12);
        assert!((g.g12 - 5.0).abs() < 1e-12);
        assert!((g.g21 - 5.0).abs() < 1e-12);
        assert!((g.g22 - 10.0).abs() < 1e-12);
    }

    #[test]
    fn test_phase_invariance() {
        // identical gains for any phase assignment with fixed magnitudes
        let mags = [1.3, 0.4, 2.2, 0.9];
        let p = PowerBudget::new(3.7);
        let reference = gains_from_channel(&ComplexChannel::from_parts(mags, [0.0; 4]), &p);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let phases = [
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..TAU),
            ];
            let g = gains_from_channel(&ComplexChannel::from_parts(mags, phases), &p);
            assert_eq!(g, reference, "gains must not depend on phases");
        }
    }

    #[test]
    fn test_power_scaling() {
        let mags = [1.3, 0.4, 2.2, 0.9];
        let ch = ComplexChannel::from_parts(mags, [0.0; 4]);
        let g1 = gains_from_channel(&ch, &PowerBudget::new(1.5));
        let g2 = gains_from_channel(&ch, &PowerBudget::new(3.0));
        assert_eq!(g2.g11, 2.0 * g1.g11);
        assert_eq!(g2.g12, 2.0 * g1.g12);
        assert_eq!(g2.g21, 2.0 * g1.g21);
        assert_eq!(g2.g22, 2.0 * g1.g22);
    }

    #[test]
    fn test_db_conversions() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((db_to_linear(15.0) - 31.6228).abs() < 1e-4);
        for x_db in -30..=30 {
            let x = f64::from(x_db);
            let rt = linear_to_db(db_to_linear(x)).unwrap();
            assert!((rt - x).abs() < 1e-12, "round trip failed at {x} dB");
        }
        assert!(linear_to_db(0.0).is_err());
        assert!(linear_to_db(-1.0).is_err());
    }

    #[test]
    fn test_phase_normalization() {
        let e = Polar::new(1.0, -std::f64::consts::PI);
        assert!((e.phase() - std::f64::consts::PI).abs() < 1e-12);
        assert!(e.phase() >= 0.0 && e.phase() < TAU);
    }

    #[test]
    fn test_antennas_swapped() {
        let g = LinkGains::new(1.0, 2.0, 3.0, 4.0);
        let s = g.antennas_swapped();
        assert_eq!((s.g11, s.g12, s.g21, s.g22), (2.0, 1.0, 4.0, 3.0));
    }

    #[test]
    #[should_panic(expected = "must be positive")]
    fn test_power_budget_rejects_zero() {
        let _ = PowerBudget::new(0.0);
    }
}
