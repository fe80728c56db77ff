//! Probability currents of superpositions and their minima over the
//! coefficients of a degenerate two-state superposition.
//!
//! Everything is evaluated on the ray `theta = 0`; rotational symmetry makes
//! that sufficient for sections and transfers. [`current_at`] still accepts
//! any angle.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::degeneracy::DegeneratePair;
use crate::eigensystem::{
    make_mode, radial_panels, radial_quadrature, Mode, PhysicalConfig, RadialEigenstate,
};
use crate::error::{Error, Result};
use crate::numerics::{integrate_panels, QuadratureSpec};

/// Tolerance on `sum |c|^2 = 1`.
pub const NORM_TOL: f64 = 1e-12;

/// Coefficients `c1 = cos(theta/2)`, `c2 = e^{i phase} sin(theta/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct MixingParams {
    pub theta_mix: f64,
    pub phase: f64,
}

impl MixingParams {
    pub const FIRST: MixingParams = MixingParams {
        theta_mix: 0.0,
        phase: 0.0,
    };
    pub const SECOND: MixingParams = MixingParams {
        theta_mix: PI,
        phase: 0.0,
    };

    /// The phase is reduced into `[0, 2 pi)`.
    pub fn new(theta_mix: f64, phase: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta_mix) {
            return Err(Error::domain("mixing angle", theta_mix));
        }
        if !phase.is_finite() {
            return Err(Error::domain("phase", phase));
        }
        let mut phase = libm::fmod(phase, TAU);
        if phase < 0.0 {
            phase += TAU;
        }
        if phase >= TAU {
            phase = 0.0;
        }
        Ok(MixingParams { theta_mix, phase })
    }

    pub fn coefficients(&self) -> (Complex64, Complex64) {
        let (s, c) = libm::sincos(0.5 * self.theta_mix);
        (Complex64::new(c, 0.0), Complex64::from_polar(s, self.phase))
    }
}

/// `f = |c1|^2 A + |c2|^2 B + Re(c1* c2) C`.
pub fn quadratic_form(a: f64, b: f64, c: f64, mix: MixingParams) -> f64 {
    let (c1, c2) = mix.coefficients();
    c1.norm_sqr() * a + c2.norm_sqr() * b + (c1.conj() * c2).re * c
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct QuadraticMin {
    pub value: f64,
    pub optimal: MixingParams,
}

/// Minimum of [`quadratic_form`] over normalized coefficients,
/// `(A + B - sqrt((A - B)^2 + C^2)) / 2`.
pub fn quadratic_form_min(a: f64, b: f64, c: f64) -> QuadraticMin {
    if c == 0.0 {
        let theta_mix = if a <= b { 0.0 } else { PI };
        return QuadraticMin {
            value: a.min(b),
            optimal: MixingParams {
                theta_mix,
                phase: 0.0,
            },
        };
    }
    let root = libm::hypot(a - b, c);
    let sum = a + b;
    let value = if sum > 0.0 {
        // equal to the textbook form, without the cancellation
        (4.0 * a * b - c * c) / (2.0 * (sum + root))
    } else {
        0.5 * (sum - root)
    };
    let theta_mix = PI - libm::atan2(c.abs(), a - b);
    let phase = if c > 0.0 { PI } else { 0.0 };
    QuadraticMin {
        value,
        optimal: MixingParams { theta_mix, phase },
    }
}

/// `0 < r1 < r2 <= R`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RadialSection {
    pub r1: f64,
    pub r2: f64,
}

impl RadialSection {
    pub fn new(r1: f64, r2: f64, radius: f64) -> Result<Self> {
        if !(r1 > 0.0 && r1 < r2 && r2 <= radius) {
            return Err(Error::InvalidInput("section needs 0 < r1 < r2 <= R"));
        }
        Ok(RadialSection { r1, r2 })
    }

    fn check(&self, cfg: &PhysicalConfig) -> Result<()> {
        RadialSection::new(self.r1, self.r2, cfg.radius).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TransferSpec {
    pub section: RadialSection,
    pub duration: f64,
}

impl TransferSpec {
    pub fn new(section: RadialSection, duration: f64) -> Result<Self> {
        if !(duration > 0.0 && duration.is_finite()) {
            return Err(Error::domain("transfer time", duration));
        }
        Ok(TransferSpec { section, duration })
    }
}

/// A degenerate pair bound to physical units, with both states built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegenerateSystem {
    pair: DegeneratePair,
    first: RadialEigenstate,
    second: RadialEigenstate,
}

impl DegenerateSystem {
    pub fn new(pair: DegeneratePair, units: &PhysicalConfig) -> Result<Self> {
        let (first, second) = pair.states(units)?;
        Ok(DegenerateSystem {
            pair,
            first,
            second,
        })
    }

    pub fn pair(&self) -> &DegeneratePair {
        &self.pair
    }

    pub fn states(&self) -> (&RadialEigenstate, &RadialEigenstate) {
        (&self.first, &self.second)
    }

    pub fn config(&self) -> &PhysicalConfig {
        self.first.config()
    }

    fn kinetic(&self) -> (f64, f64) {
        (self.first.mode().kinetic, self.second.mode().kinetic)
    }

    /// `(A, B, C)` of the local current at `r`, without the `hbar / (mu r)` factor.
    fn local_form(&self, r: f64) -> Result<(f64, f64, f64, f64, f64)> {
        let (p, q) = (self.first.phi(r)?, self.second.phi(r)?);
        let (m, mp) = self.kinetic();
        Ok((m * p * p, mp * q * q, (m + mp) * p * q, p, q))
    }
}

/// Finite superposition `sum_k c_k phi_k(r) e^{i m_k theta}` of eigenstates
/// sharing one flux.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    terms: Vec<(RadialEigenstate, Complex64)>,
    cfg: PhysicalConfig,
}

impl Superposition {
    /// Modes with `M < 0` are rejected unless `allow_negative_kinetic` is set.
    pub fn new(
        terms: &[(Mode, Complex64)],
        cfg: PhysicalConfig,
        allow_negative_kinetic: bool,
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("empty superposition"));
        }
        let norm: f64 = terms.iter().map(|(_, c)| c.norm_sqr()).sum();
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(Error::domain("coefficient norm", norm));
        }
        let mut states = Vec::with_capacity(terms.len());
        for &(mode, c) in terms {
            if mode.kinetic < 0.0 && !allow_negative_kinetic {
                return Err(Error::InvalidMode {
                    m: mode.m,
                    beta: mode.beta,
                });
            }
            states.push((RadialEigenstate::new(mode, cfg)?, c));
        }
        Ok(Superposition { terms: states, cfg })
    }

    /// Two-state superposition of a degenerate system.
    pub fn degenerate(sys: &DegenerateSystem, mix: MixingParams) -> Self {
        let (c1, c2) = mix.coefficients();
        Superposition {
            terms: alloc::vec![(sys.first, c1), (sys.second, c2)],
            cfg: *sys.config(),
        }
    }

    /// Two-state superposition built from quantum numbers, degenerate or not.
    pub fn two_state(
        first: (i64, u32),
        second: (i64, u32),
        mix: MixingParams,
        cfg: PhysicalConfig,
    ) -> Result<Self> {
        let (c1, c2) = mix.coefficients();
        let a = make_mode(first.0, first.1, &cfg)?;
        let b = make_mode(second.0, second.1, &cfg)?;
        Superposition::new(&[(a, c1), (b, c2)], cfg, false)
    }

    pub fn terms(&self) -> &[(RadialEigenstate, Complex64)] {
        &self.terms
    }

    pub fn config(&self) -> &PhysicalConfig {
        &self.cfg
    }

    /// `Psi`, `d Psi / dr` and `d Psi / d theta` at time `t`.
    fn field(&self, r: f64, theta: f64, t: f64) -> Result<(Complex64, Complex64, Complex64)> {
        let mut psi = Complex64::new(0.0, 0.0);
        let mut d_r = psi;
        let mut d_theta = psi;
        for (state, c) in &self.terms {
            let (phi, slope) = state.phi_with_slope(r)?;
            let m = state.mode().m as f64;
            let angle = m * theta - state.energy().value * t / self.cfg.hbar;
            let w = c * Complex64::from_polar(1.0, angle);
            psi += w * phi;
            d_r += w * slope;
            d_theta += w * Complex64::new(0.0, m) * phi;
        }
        Ok((psi, d_r, d_theta))
    }

    /// `(1 / 2 pi) int |Psi|^2 d theta`: cross terms between different `m` drop out.
    fn angular_density(&self, r: f64, t: f64) -> Result<f64> {
        let mut total = 0.0;
        for (i, (state, _)) in self.terms.iter().enumerate() {
            let m = state.mode().m;
            if self.terms[..i].iter().any(|(s, _)| s.mode().m == m) {
                continue;
            }
            let mut amp = Complex64::new(0.0, 0.0);
            for (s, c) in self.terms.iter().filter(|(s, _)| s.mode().m == m) {
                let angle = -s.energy().value * t / self.cfg.hbar;
                amp += c * Complex64::from_polar(s.phi(r)?, angle);
            }
            total += amp.norm_sqr();
        }
        Ok(total)
    }

    /// `int_0^{2 pi} d theta int_0^R r |Psi|^2 dr` at time `t`.
    pub fn total_probability(&self, t: f64) -> Result<f64> {
        let radius = self.cfg.radius;
        let gamma = self
            .terms
            .iter()
            .map(|(s, _)| s.mode().gamma)
            .fold(0.0, f64::max);
        let panels = radial_panels(gamma, 0.0, radius, radius);
        let value = guarded_integral(
            |r| self.angular_density(r, t).map(|d| r * d),
            0.0,
            radius,
            panels,
            radial_quadrature(),
        )?;
        Ok(TAU * value)
    }
}

/// Radial and azimuthal components of the probability current.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CurrentDensity {
    pub radial: f64,
    pub azimuthal: f64,
}

/// `j_r = (hbar/mu) Im(Psi* dPsi/dr)`,
/// `j_a = (hbar/(mu r)) [Im(Psi* dPsi/dtheta) - beta |Psi|^2]`.
pub fn current_at(s: &Superposition, r: f64, theta: f64, t: f64) -> Result<CurrentDensity> {
    let (psi, d_r, d_theta) = s.field(r, theta, t)?;
    let cfg = &s.cfg;
    let scale = cfg.hbar / cfg.mu;
    Ok(CurrentDensity {
        radial: scale * (psi.conj() * d_r).im,
        azimuthal: scale / r * ((psi.conj() * d_theta).im - cfg.beta * psi.norm_sqr()),
    })
}

/// The time-independent azimuthal current of a degenerate superposition.
pub fn j_a_degenerate(sys: &DegenerateSystem, mix: MixingParams, r: f64) -> Result<f64> {
    let (a, b, c, _, _) = sys.local_form(r)?;
    let cfg = sys.config();
    Ok(cfg.hbar / (cfg.mu * r) * quadratic_form(a, b, c, mix))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct LocalMin {
    pub value: f64,
    /// Same minimum through `sqrt([M^2 phi^2 + M'^2 phi'^2][phi^2 + phi'^2])`.
    pub value_alt: f64,
    pub optimal: MixingParams,
}

/// Minimum of the local azimuthal current over normalized coefficients.
pub fn min_local_current(sys: &DegenerateSystem, r: f64) -> Result<LocalMin> {
    let (a, b, c, p, q) = sys.local_form(r)?;
    let (m, mp) = sys.kinetic();
    let cfg = sys.config();
    let scale = cfg.hbar / (cfg.mu * r);
    let min = quadratic_form_min(a, b, c);
    let (p2, q2) = (p * p, q * q);
    let alt = 0.5 * (a + b - libm::sqrt((m * m * p2 + mp * mp * q2) * (p2 + q2)));
    Ok(LocalMin {
        value: scale * min.value,
        value_alt: scale * alt,
        optimal: min.optimal,
    })
}

/// Runs a quadrature whose integrand may fail, surfacing the first failure.
fn guarded_integral<F>(mut f: F, a: f64, b: f64, panels: usize, spec: QuadratureSpec) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut failure = None;
    let value = integrate_panels(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        a,
        b,
        panels,
        spec,
    );
    match failure {
        Some(e) => Err(e),
        None => value,
    }
}

/// `S = R^2 int_{r1}^{r2} phi_1 phi_2 / r dr`.
pub fn s_integral(e1: &RadialEigenstate, e2: &RadialEigenstate, sec: RadialSection) -> Result<f64> {
    if e1.config() != e2.config() {
        return Err(Error::ConfigMismatch);
    }
    let cfg = e1.config();
    sec.check(cfg)?;
    let gamma = e1.mode().gamma.max(e2.mode().gamma);
    let panels = radial_panels(gamma, sec.r1, sec.r2, cfg.radius);
    let integral = guarded_integral(
        |r| Ok(e1.phi(r)? * e2.phi(r)? / r),
        sec.r1,
        sec.r2,
        panels,
        radial_quadrature(),
    )?;
    Ok(cfg.radius * cfg.radius * integral)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct IntegratedMinResult {
    pub min_j: f64,
    /// Same minimum through `(A + B)^2 + rho` under the root.
    pub min_j_alt: f64,
    pub rho: f64,
    pub s11: f64,
    pub s22: f64,
    pub s12: f64,
    pub optimal: MixingParams,
}

fn s_triple(sys: &DegenerateSystem, sec: RadialSection) -> Result<(f64, f64, f64)> {
    let (a, b) = sys.states();
    Ok((
        s_integral(a, a, sec)?,
        s_integral(b, b, sec)?,
        s_integral(a, b, sec)?,
    ))
}

fn integrated_scale(cfg: &PhysicalConfig) -> f64 {
    cfg.hbar / (cfg.mu * cfg.radius * cfg.radius)
}

/// Section-integrated azimuthal current for given coefficients.
pub fn integrated_current(
    sys: &DegenerateSystem,
    mix: MixingParams,
    sec: RadialSection,
) -> Result<f64> {
    let (s11, s22, s12) = s_triple(sys, sec)?;
    let (m, mp) = sys.kinetic();
    let form = quadratic_form(m * s11, mp * s22, (m + mp) * s12, mix);
    Ok(integrated_scale(sys.config()) * form)
}

pub fn min_integrated_current(
    sys: &DegenerateSystem,
    sec: RadialSection,
) -> Result<IntegratedMinResult> {
    let (s11, s22, s12) = s_triple(sys, sec)?;
    let (m, mp) = sys.kinetic();
    let (a, b, c) = (m * s11, mp * s22, (m + mp) * s12);
    let rho = c * c - 4.0 * m * mp * s11 * s22;
    let scale = integrated_scale(sys.config());
    let min = quadratic_form_min(a, b, c);
    let alt = 0.5 * (a + b - libm::sqrt((a + b) * (a + b) + rho));
    Ok(IntegratedMinResult {
        min_j: scale * min.value,
        min_j_alt: scale * alt,
        rho,
        s11,
        s22,
        s12,
        optimal: min.optimal,
    })
}

/// `Delta = T * J`, exact for a degenerate superposition.
pub fn probability_transfer(
    sys: &DegenerateSystem,
    mix: MixingParams,
    spec: TransferSpec,
) -> Result<f64> {
    Ok(spec.duration * integrated_current(sys, mix, spec.section)?)
}

fn time_quadrature() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-9,
        max_subdivisions: 10_000,
    }
}

/// `Delta` by direct quadrature of the section current over `[-T/2, T/2]`.
/// Works for any superposition.
pub fn probability_transfer_timeint(s: &Superposition, spec: TransferSpec) -> Result<f64> {
    let cfg = s.cfg;
    let sec = spec.section;
    sec.check(&cfg)?;
    let gamma = s
        .terms
        .iter()
        .map(|(e, _)| e.mode().gamma)
        .fold(0.0, f64::max);
    let r_panels = radial_panels(gamma, sec.r1, sec.r2, cfg.radius);

    let energies: Vec<f64> = s.terms.iter().map(|(e, _)| e.energy().value).collect();
    let lo = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let half_periods = (hi - lo) * spec.duration / (PI * cfg.hbar);
    let t_panels = libm::ceil(2.0 * half_periods).max(1.0) as usize;

    let half = 0.5 * spec.duration;
    guarded_integral(
        |t| {
            guarded_integral(
                |r| current_at(s, r, 0.0, t).map(|j| j.azimuthal),
                sec.r1,
                sec.r2,
                r_panels,
                radial_quadrature(),
            )
        },
        -half,
        half,
        t_panels,
        time_quadrature(),
    )
}
