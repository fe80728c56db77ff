//! Bessel functions of the first kind `J_nu(x)` for real order `nu >= 0`,
//! their derivatives, and their positive zeros.
//!
//! Evaluation picks one of two routes:
//!
//! * the ascending power series when `x^2 / 4 <= nu + 1`, where every term is
//!   smaller than the previous one and no cancellation occurs;
//! * otherwise the continued fraction for `J'/J` at order `nu`, a downward
//!   recurrence to an order just below the turning point, and Steed's complex
//!   continued fraction, which fixes the normalization via the Wronskian.
//!
//! The second route stays accurate deep in the evanescent region (`x << nu`)
//! and across the turning point, where the series cancels catastrophically.

use core::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest supported order.
pub const NU_MAX: f64 = 600.0;
/// Largest supported argument.
pub const X_MAX: f64 = 2000.0;
/// Largest supported zero index.
pub const N_MAX: u32 = 300;

const FPMIN: f64 = 1e-300;
const RESCALE: f64 = 1e250;
const CF_MAX_ITERATIONS: usize = 200_000;

/// A non-negative real order.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && (0.0..=NU_MAX).contains(&nu) {
            Ok(Order(nu))
        } else {
            Err(Error::domain("Bessel order", nu))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// One-based index of a positive zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZeroIndex(u32);

impl ZeroIndex {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=N_MAX).contains(&n) {
            Ok(ZeroIndex(n))
        } else {
            Err(Error::domain("zero index", n as f64))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 && x <= X_MAX {
        Ok(())
    } else {
        Err(Error::domain("Bessel argument", x))
    }
}

/// `J_nu(x)`.
pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    bessel_j_pair(nu, x).map(|(j, _)| j)
}

/// `J_nu'(x)`, equal to `(nu / x) J_nu(x) - J_{nu+1}(x)`.
pub fn bessel_j_derivative(nu: Order, x: f64) -> Result<f64> {
    bessel_j_pair(nu, x).map(|(_, jp)| jp)
}

/// `(J_nu(x), J_nu'(x))` computed together.
pub fn bessel_j_pair(nu: Order, x: f64) -> Result<(f64, f64)> {
    check_argument(x)?;
    let nu = nu.value();
    if 0.25 * x * x <= nu + 1.0 {
        Ok(series(nu, x))
    } else {
        steed(nu, x)
    }
}

fn series(nu: f64, x: f64) -> (f64, f64) {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut dsum = nu;
    let mut k = 1.0;
    loop {
        term *= q / (k * (nu + k));
        sum += term;
        dsum += (nu + 2.0 * k) * term;
        if term.abs() <= 0.25 * f64::EPSILON * sum.abs() {
            break;
        }
        k += 1.0;
    }
    let prefactor = if nu == 0.0 {
        1.0
    } else {
        libm::exp(nu * libm::log(0.5 * x) - libm::lgamma(nu + 1.0))
    };
    (prefactor * sum, prefactor * dsum / x)
}

fn steed(nu: f64, x: f64) -> Result<(f64, f64)> {
    // number of downward steps: stop just below the turning point so that
    // Steed's fraction converges at the lower order
    let steps = if nu > x {
        libm::floor(nu - x + 1.5) as usize
    } else {
        0
    };
    let mu = nu - steps as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1: h = J'_nu / J_nu, tracking the sign of J_nu relative to J_{nu-1}.
    let mut sign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for i in 1..CF_MAX_ITERATIONS {
        let b = (nu + i as f64) * xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            sign = -sign;
        }
        if (del - 1.0).abs() < f64::EPSILON {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("continued fraction for J'/J"));
    }

    // unnormalized downward recurrence from nu to mu
    let mut jl = sign;
    let mut jpl = h * jl;
    let mut j_top = jl;
    let mut jp_top = jpl;
    for k in 0..steps {
        let t = (nu - k as f64) * xi * jl + jpl;
        jpl = (nu - (k + 1) as f64) * xi * t - jl;
        jl = t;
        if jl.abs() > RESCALE {
            let s = 1.0 / RESCALE;
            jl *= s;
            jpl *= s;
            j_top *= s;
            jp_top *= s;
        }
    }
    if jl == 0.0 {
        jl = f64::EPSILON;
    }
    let f = jpl / jl;

    // CF2: p + iq = (J' + iY') / (J + iY) at order mu
    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    converged = false;
    for i in 2..CF_MAX_ITERATIONS {
        a += 2.0 * (i - 1) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < f64::EPSILON {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("Steed continued fraction"));
    }

    let w = xi2 / PI;
    let gam = (p - f) / q;
    let j_mu = libm::sqrt(w / ((p - f) * gam + q)).copysign(jl);
    let scale = j_mu / jl;
    Ok((j_top * scale, jp_top * scale))
}

/// Leading zeros of the Airy function `Ai`.
const AIRY_ZEROS: [f64; 10] = [
    -2.338_107_410_459_767,
    -4.087_949_444_130_970_6,
    -5.520_559_828_095_551,
    -6.786_708_090_071_759,
    -7.944_133_587_120_853,
    -9.022_650_853_340_98,
    -10.040_174_341_558_086,
    -11.008_524_303_733_263,
    -11.936_015_563_236_262,
    -12.828_776_752_865_757,
];

fn airy_zero(k: u32) -> f64 {
    if let Some(&a) = AIRY_ZEROS.get(k as usize - 1) {
        return a;
    }
    let t = 3.0 * PI / 8.0 * (4.0 * k as f64 - 1.0);
    let t2 = 1.0 / (t * t);
    -libm::pow(t, 2.0 / 3.0)
        * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0))))
}

/// McMahon's large-zero expansion; used for small orders.
fn mcmahon(nu: f64, n: u32) -> f64 {
    let b = (n as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 1.0 / (8.0 * b);
    let e2 = e * e;
    let m1 = mu - 1.0;
    b - m1
        * e
        * (1.0
            + e2 * (4.0 * (7.0 * mu - 31.0) / 3.0
                + e2 * (32.0 * (83.0 * mu * mu - 982.0 * mu + 3779.0) / 15.0
                    + e2 * 64.0
                        * (6949.0 * mu * mu * mu - 153_855.0 * mu * mu + 1_585_743.0 * mu
                            - 6_277_237.0)
                        / 105.0)))
}

/// Uniform asymptotic estimate in terms of Airy zeros; used for `nu >= 1`.
fn uniform_estimate(nu: f64, n: u32) -> f64 {
    let zeta = libm::pow(nu, -2.0 / 3.0) * airy_zero(n);
    let w = 2.0 / 3.0 * libm::pow(-zeta, 1.5);
    // solve sqrt(z^2 - 1) - arcsec(z) = w for z > 1; the left side increases in z
    let phase = |z: f64| libm::sqrt(z * z - 1.0) - libm::acos(1.0 / z) - w;
    let mut lo = 1.0;
    let mut hi = w + 0.5 * PI + 1.0;
    let mut z = 1.0 + libm::pow(2.0, -1.0 / 3.0) * (-zeta);
    if !(z > lo && z < hi) {
        z = 0.5 * (lo + hi);
    }
    for _ in 0..100 {
        let g = phase(z);
        if g > 0.0 {
            hi = z;
        } else {
            lo = z;
        }
        let slope = libm::sqrt(z * z - 1.0) / z;
        let mut next = z - g / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - z).abs() <= 4.0 * f64::EPSILON * z {
            z = next;
            break;
        }
        z = next;
    }
    let z2m1 = z * z - 1.0;
    let h2 = libm::sqrt(4.0 * zeta / (1.0 - z * z));
    let b0 = -5.0 / (48.0 * zeta * zeta)
        + (5.0 / (24.0 * libm::pow(z2m1, 1.5)) + 1.0 / (8.0 * libm::sqrt(z2m1)))
            / libm::sqrt(-zeta);
    nu * z + 0.5 * z * h2 * b0 / nu
}

/// Asymptotic estimate of the `n`-th positive zero of `J_nu`.
pub fn zero_estimate(nu: Order, n: ZeroIndex) -> f64 {
    let nu = nu.value();
    if nu < 1.0 {
        mcmahon(nu, n.get())
    } else {
        uniform_estimate(nu, n.get())
    }
}

/// Half-width of the local search window around the asymptotic estimate. Any
/// two consecutive zeros of `J_nu`, `nu >= 0`, are more than 3.1 apart, so the
/// window can hold at most one zero.
const WINDOW: f64 = 1.2;

/// The `n`-th positive zero `gamma_{nu,n}` of `J_nu`.
pub fn bessel_zero(nu: Order, n: ZeroIndex) -> Result<f64> {
    let guess = zero_estimate(nu, n);
    let lo = (guess - WINDOW).max(0.5 * guess);
    let hi = guess + WINDOW;
    if hi > X_MAX {
        return Err(Error::domain(
            "Bessel zero beyond supported argument",
            guess,
        ));
    }
    let f_lo = bessel_j(nu, lo)?;
    let f_hi = bessel_j(nu, hi)?;
    if f_lo * f_hi < 0.0 {
        refine_zero(nu, lo, hi, f_lo, guess)
    } else {
        scan_zero(nu, n)
    }
}

/// Counts sign changes from the origin outwards. Slow but index-safe.
fn scan_zero(nu: Order, n: ZeroIndex) -> Result<f64> {
    // J_nu > 0 on (0, nu], since the first zero exceeds nu
    let mut x = nu.value().max(0.5);
    let mut fx = bessel_j(nu, x)?;
    let mut seen = 0;
    loop {
        let next = x + 1.0;
        if next > X_MAX {
            return Err(Error::domain("Bessel zero beyond supported argument", next));
        }
        let f_next = bessel_j(nu, next)?;
        if fx * f_next <= 0.0 {
            seen += 1;
            if seen == n.get() {
                return refine_zero(nu, x, next, fx, 0.5 * (x + next));
            }
        }
        x = next;
        fx = f_next;
    }
}

/// Newton iteration safeguarded by bisection inside a sign-change bracket.
fn refine_zero(nu: Order, mut lo: f64, mut hi: f64, f_lo: f64, start: f64) -> Result<f64> {
    let lo_positive = f_lo > 0.0;
    let mut x = if start > lo && start < hi {
        start
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..100 {
        let (j, jp) = bessel_j_pair(nu, x)?;
        if j == 0.0 {
            return Ok(x);
        }
        if (j > 0.0) == lo_positive {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - j / jp;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Convergence("Bessel zero refinement"))
}
