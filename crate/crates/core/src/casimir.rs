//! One-dimensional vacuum energy between two points a distance `d` apart.
//!
//! The standing modes `k_n = n pi / d`, `n >= 1`, have zero-point energies
//! `hbar omega_n / 2`, so the ground state energy is `(pi hbar c / 2d) * sum_n n`.
//! The divergent sum is replaced by its regularized value, never summed.

use core::f64::consts::PI;

use crate::exact::Rational;
use crate::regularized::sum_powers;
use crate::Error;

pub const HBAR_SI: f64 = 1.054_571_817e-34;
pub const C_SI: f64 = 299_792_458.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Units {
    /// `hbar = c = 1`.
    Natural,
    Si,
}

impl Units {
    pub fn as_str(self) -> &'static str {
        match self {
            Units::Natural => "natural",
            Units::Si => "si",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CavityConfig {
    pub d: f64,
    pub c: f64,
    pub hbar: f64,
    pub units: Units,
}

impl CavityConfig {
    pub fn new(d: f64, c: f64, hbar: f64) -> Result<Self, Error> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(d) {
            return Err(Error::InvalidArgument("separation d must be positive and finite"));
        }
        if !positive(c) || !positive(hbar) {
            return Err(Error::InvalidArgument("c and hbar must be positive and finite"));
        }
        Ok(CavityConfig { d, c, hbar, units: Units::Natural })
    }

    pub fn natural(d: f64) -> Result<Self, Error> {
        CavityConfig::new(d, 1.0, 1.0)
    }

    pub fn si(d: f64) -> Result<Self, Error> {
        Ok(CavityConfig { units: Units::Si, ..CavityConfig::new(d, C_SI, HBAR_SI)? })
    }

    pub fn with_units(d: f64, units: Units) -> Result<Self, Error> {
        match units {
            Units::Natural => CavityConfig::natural(d),
            Units::Si => CavityConfig::si(d),
        }
    }

    fn with_d(&self, d: f64) -> Self {
        CavityConfig { d, ..*self }
    }
}

/// `k_n = n pi / d`.
pub fn mode_wavenumber(n: i64, cfg: &CavityConfig) -> Result<f64, Error> {
    if n < 1 {
        return Err(Error::InvalidArgument("mode index must be at least 1"));
    }
    Ok(n as f64 * PI / cfg.d)
}

/// `omega_n = c k_n`.
pub fn angular_frequency(n: i64, cfg: &CavityConfig) -> Result<f64, Error> {
    Ok(cfg.c * mode_wavenumber(n, cfg)?)
}

/// `(pi hbar c / 2d) * sum` for a given value of the regularized `1 + 2 + 3 + ...`.
pub fn ground_state_energy_from(sum_of_n: &Rational, cfg: &CavityConfig) -> f64 {
    PI * cfg.hbar * cfg.c / (2.0 * cfg.d) * sum_of_n.to_f64()
}

/// `-pi hbar c / (24 d)`.
pub fn ground_state_energy(cfg: &CavityConfig) -> f64 {
    let sum = sum_powers(1).expect("k = 1 is always valid").value;
    ground_state_energy_from(&sum, cfg)
}

/// `dE/dd = pi hbar c / (24 d^2)`, from the same regularized value.
pub fn casimir_force(cfg: &CavityConfig) -> f64 {
    -ground_state_energy(cfg) / cfg.d
}

/// Central difference `(E(d+h) - E(d-h)) / 2h`.
pub fn force_finite_difference(cfg: &CavityConfig, h: f64) -> f64 {
    (ground_state_energy(&cfg.with_d(cfg.d + h)) - ground_state_energy(&cfg.with_d(cfg.d - h))) / (2.0 * h)
}
