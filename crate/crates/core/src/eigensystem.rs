//! Energy eigenstates of the punctured disk threaded by a flux line.
//!
//! With Dirichlet conditions at the puncture and at the rim, the eigenstates
//! are `phi_mn(r) e^{i m theta}` where `phi_mn` is a Bessel function of order
//! `|M| = |m - beta|` scaled so that its `n`-th zero sits on the rim.

use core::f64::consts::PI;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_j, bessel_j_pair, bessel_zero, Order, ZeroIndex, NU_MAX};
use crate::error::{Error, Result};
use crate::numerics::{integrate_panels, QuadratureSpec};

/// Physical constants of the problem. `beta` is the dimensionless flux
/// `q eta / (hbar c)`; the charge, the flux strength and the speed of light
/// only ever enter through it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct PhysicalConfig {
    pub hbar: f64,
    pub mu: f64,
    pub radius: f64,
    pub beta: f64,
}

impl PhysicalConfig {
    pub fn new(hbar: f64, mu: f64, radius: f64, beta: f64) -> Result<Self> {
        for (what, v) in [("hbar", hbar), ("mass", mu), ("radius", radius)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(what, v));
            }
        }
        if !beta.is_finite() {
            return Err(Error::domain("beta", beta));
        }
        Ok(PhysicalConfig {
            hbar,
            mu,
            radius,
            beta,
        })
    }

    /// `hbar = mu = R = 1`.
    pub fn dimensionless(beta: f64) -> Self {
        PhysicalConfig {
            hbar: 1.0,
            mu: 1.0,
            radius: 1.0,
            beta,
        }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        PhysicalConfig { beta, ..self }
    }

    /// `hbar^2 / (2 mu R^2)`, the energy unit multiplying `gamma^2`.
    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mu * self.radius * self.radius)
    }

    /// Factor `mu R^3 / hbar` turning a local current into its dimensionless form.
    pub fn current_scale(&self) -> f64 {
        self.mu * self.radius * self.radius * self.radius / self.hbar
    }
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        PhysicalConfig::dimensionless(0.0)
    }
}

/// Quantum numbers of one eigenstate together with its kinetic angular
/// momentum `M = m - beta` and the Bessel zero fixing its energy.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Mode {
    pub m: i64,
    pub n: u32,
    pub beta: f64,
    pub kinetic: f64,
    pub gamma: f64,
}

impl Mode {
    /// Bessel order `|M|`.
    pub fn order(&self) -> Order {
        Order::new(self.kinetic.abs()).expect("validated at construction")
    }
}

pub fn make_mode(m: i64, n: u32, cfg: &PhysicalConfig) -> Result<Mode> {
    let kinetic = m as f64 - cfg.beta;
    if kinetic == 0.0 {
        return Err(Error::InvalidMode { m, beta: cfg.beta });
    }
    if kinetic.abs() > NU_MAX {
        return Err(Error::domain("|m - beta|", kinetic.abs()));
    }
    let order = Order::new(kinetic.abs())?;
    let gamma = bessel_zero(order, ZeroIndex::new(n)?)?;
    Ok(Mode {
        m,
        n,
        beta: cfg.beta,
        kinetic,
        gamma,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Energy {
    pub value: f64,
}

/// `E = hbar^2 gamma^2 / (2 mu R^2)`.
pub fn energy(mode: &Mode, cfg: &PhysicalConfig) -> Energy {
    Energy {
        value: cfg.energy_scale() * mode.gamma * mode.gamma,
    }
}

/// Normalized radial function of one eigenstate. The `1 / |J_{|M|+1}(gamma)|`
/// normalization is computed once here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialEigenstate {
    mode: Mode,
    cfg: PhysicalConfig,
    norm_factor: f64,
}

impl RadialEigenstate {
    pub fn new(mode: Mode, cfg: PhysicalConfig) -> Result<Self> {
        if mode.beta != cfg.beta {
            return Err(Error::ConfigMismatch);
        }
        let upper = Order::new(mode.kinetic.abs() + 1.0)?;
        let edge = bessel_j(upper, mode.gamma)?.abs();
        let norm_factor = 1.0 / (cfg.radius * libm::sqrt(PI) * edge);
        Ok(RadialEigenstate {
            mode,
            cfg,
            norm_factor,
        })
    }

    pub fn from_quantum_numbers(m: i64, n: u32, cfg: PhysicalConfig) -> Result<Self> {
        RadialEigenstate::new(make_mode(m, n, &cfg)?, cfg)
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn config(&self) -> &PhysicalConfig {
        &self.cfg
    }

    pub fn norm_factor(&self) -> f64 {
        self.norm_factor
    }

    pub fn energy(&self) -> Energy {
        energy(&self.mode, &self.cfg)
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if r > 0.0 && r <= self.cfg.radius {
            Ok(())
        } else {
            Err(Error::domain("radius", r))
        }
    }

    /// `phi_mn(r)` for `0 < r <= R`.
    pub fn phi(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let x = self.mode.gamma * r / self.cfg.radius;
        Ok(self.norm_factor * bessel_j(self.mode.order(), x)?)
    }

    /// `phi_mn(r)` and its radial derivative.
    pub fn phi_with_slope(&self, r: f64) -> Result<(f64, f64)> {
        self.check_radius(r)?;
        let k = self.mode.gamma / self.cfg.radius;
        let (j, jp) = bessel_j_pair(self.mode.order(), k * r)?;
        Ok((self.norm_factor * j, self.norm_factor * k * jp))
    }
}

/// Initial panel count for radial integrals over `[a, b]` of products of
/// radial functions with the given zeros: about two panels per half-wave.
pub(crate) fn radial_panels(gamma_max: f64, a: f64, b: f64, radius: f64) -> usize {
    let waves = gamma_max * (b - a) / (radius * PI);
    libm::ceil(2.0 * waves).max(4.0) as usize
}

pub(crate) fn radial_quadrature() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        max_subdivisions: 50_000,
    }
}

/// Inner product `<psi_1 | psi_2>` over the disk. The angular integral
/// vanishes identically unless the azimuthal numbers agree.
pub fn overlap(s1: &RadialEigenstate, s2: &RadialEigenstate) -> Result<f64> {
    if s1.cfg != s2.cfg {
        return Err(Error::ConfigMismatch);
    }
    if s1.mode.m != s2.mode.m {
        return Ok(0.0);
    }
    let radius = s1.cfg.radius;
    let panels = radial_panels(s1.mode.gamma.max(s2.mode.gamma), 0.0, radius, radius);
    let mut failure = None;
    let integral = integrate_panels(
        |r| {
            if r <= 0.0 {
                return 0.0;
            }
            match (s1.phi(r), s2.phi(r)) {
                (Ok(a), Ok(b)) => r * a * b,
                (Err(e), _) | (_, Err(e)) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        radius,
        panels,
        radial_quadrature(),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(2.0 * PI * integral?)
}
