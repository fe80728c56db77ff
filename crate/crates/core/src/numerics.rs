//! Scalar root finding and adaptive one-dimensional quadrature.
//!
//! Both routines are deterministic: identical inputs always produce
//! bit-identical outputs, which the catalog and golden-file checks rely on.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::error::{Error, Result};

/// An interval known to enclose a sign change of some function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let finite = lo.is_finite() && hi.is_finite() && f_lo.is_finite() && f_hi.is_finite();
        if !finite || lo >= hi || f_lo * f_hi > 0.0 {
            return Err(Error::NoSignChange { lo, hi });
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and validates the sign change.
    pub fn evaluate<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Result<Self> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Bracket::new(lo, hi, f_lo, f_hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Root location together with the number of function evaluations spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootEstimate {
    pub x: f64,
    pub iterations: u32,
}

const ROOT_MAX_ITERATIONS: u32 = 200;

/// Brent's method: inverse quadratic / secant steps safeguarded by bisection.
pub fn find_root<F: FnMut(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    find_root_counted(f, bracket, tol).map(|r| r.x)
}

pub fn find_root_counted<F: FnMut(f64) -> f64>(
    mut f: F,
    bracket: Bracket,
    tol: f64,
) -> Result<RootEstimate> {
    if !(tol > 0.0) {
        return Err(Error::domain("root tolerance", tol));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if fa == 0.0 {
        return Ok(RootEstimate {
            x: a,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(RootEstimate {
            x: b,
            iterations: 0,
        });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for iteration in 1..=ROOT_MAX_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(RootEstimate {
                x: b,
                iterations: iteration,
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::Convergence(
                "non-finite function value inside bracket",
            ));
        }
    }
    Err(Error::MaxIterations {
        iterations: ROOT_MAX_ITERATIONS,
    })
}

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::domain("abs_tol", abs_tol));
        }
        if !(rel_tol > 0.0) {
            return Err(Error::domain("rel_tol", rel_tol));
        }
        if max_subdivisions == 0 {
            return Err(Error::InvalidInput("max_subdivisions must be at least 1"));
        }
        Ok(QuadratureSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 20_000,
        }
    }
}

/// Positive half of the 15-point Gauss–Legendre rule on [-1, 1].
const GL15: [(f64, f64); 8] = [
    (0.0, 0.202_578_241_925_561_272_88),
    (0.201_194_093_997_434_522_3, 0.198_431_485_327_111_576_46),
    (0.394_151_347_077_563_369_9, 0.186_161_000_015_562_211_03),
    (0.570_972_172_608_538_847_54, 0.166_269_205_816_993_933_55),
    (0.724_417_731_360_170_047_42, 0.139_570_677_926_154_314_45),
    (0.848_206_583_410_427_216_2, 0.107_159_220_467_171_935_01),
    (0.937_273_392_400_705_904_31, 0.070_366_047_488_108_124_709),
    (0.987_992_518_020_485_428_49, 0.030_753_241_996_117_268_355),
];

/// Number of nodes of the fixed per-panel rule.
pub const GAUSS_NODES: usize = 15;

/// Fixed 15-point Gauss–Legendre rule on a single panel.
pub fn gauss_legendre<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = GL15[0].1 * f(mid);
    for &(x, w) in &GL15[1..] {
        let dx = half * x;
        sum += w * (f(mid - dx) + f(mid + dx));
    }
    sum * half
}

struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    error: f64,
}

impl Panel {
    fn build<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, whole: f64) -> Self {
        let mid = 0.5 * (a + b);
        let left = gauss_legendre(f, a, mid);
        let right = gauss_legendre(f, mid, b);
        let error = (left + right - whole).abs();
        Panel {
            a,
            b,
            left,
            right,
            error,
        }
    }

    fn value(&self) -> f64 {
        self.left + self.right
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken on position so the refinement order is fully deterministic
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Adaptive Gauss–Legendre quadrature of `f` over `[a, b]`, starting from a single panel.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, spec: QuadratureSpec) -> Result<f64> {
    integrate_panels(f, a, b, 1, spec)
}

/// Like [`integrate`] but starts from `panels` equal panels. Oscillatory
/// integrands should start with at least a few panels per oscillation.
///
/// Each panel's error is estimated by comparing the rule on the panel with
/// the rule on its two halves; the panel with the largest estimate is split
/// until the total estimate drops below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    spec: QuadratureSpec,
) -> Result<f64> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput("integration bounds must satisfy a < b"));
    }
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut heap = BinaryHeap::with_capacity(2 * panels);
    for i in 0..panels {
        let lo = a + width * i as f64;
        let hi = if i + 1 == panels {
            b
        } else {
            a + width * (i + 1) as f64
        };
        let whole = gauss_legendre(&mut f, lo, hi);
        heap.push(Panel::build(&mut f, lo, hi, whole));
    }

    let mut subdivisions = 0usize;
    loop {
        let (total, error) = heap
            .iter()
            .fold((0.0, 0.0), |(t, e), p| (t + p.value(), e + p.error));
        if !total.is_finite() || !error.is_finite() {
            return Err(Error::Convergence("non-finite integrand"));
        }
        if error <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(total);
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::MaxSubdivisions {
                subdivisions,
                error_estimate: error,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // panel collapsed to adjacent floats; nothing left to refine
            return Err(Error::MaxSubdivisions {
                subdivisions,
                error_estimate: error,
            });
        }
        heap.push(Panel::build(&mut f, worst.a, mid, worst.left));
        heap.push(Panel::build(&mut f, mid, worst.b, worst.right));
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn tight() -> QuadratureSpec {
        QuadratureSpec::new(1e-14, 1e-14, 10_000).unwrap()
    }

    #[test]
    fn sqrt_two() {
        let f = |x: f64| x * x - 2.0;
        let mut g = f;
        let b = Bracket::evaluate(&mut g, 1.0, 2.0).unwrap();
        let x = find_root(f, b, 1e-14).unwrap();
        assert!((x - core::f64::consts::SQRT_2).abs() <= 1e-14, "{x}");
    }

    #[test]
    fn odd_function_root_is_zero() {
        let b = Bracket::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let x = find_root(|x| x, b, 1e-15).unwrap();
        assert!(x.abs() < 1e-15);
    }

    #[test]
    fn invalid_brackets() {
        assert!(matches!(
            Bracket::new(1.0, 2.0, 1.0, 3.0),
            Err(Error::NoSignChange { .. })
        ));
        assert!(matches!(
            Bracket::new(2.0, 1.0, -1.0, 3.0),
            Err(Error::NoSignChange { .. })
        ));
        let b = Bracket::new(0.0, 1.0, -1.0, 1.0).unwrap();
        assert!(find_root(|x| x - 0.5, b, 0.0).is_err());
    }

    #[test]
    fn root_is_deterministic() {
        let f = |x: f64| libm::cos(x) - x;
        let b = Bracket::new(0.0, 1.0, 1.0, libm::cos(1.0) - 1.0).unwrap();
        let r1 = find_root_counted(f, b, 1e-13).unwrap();
        let r2 = find_root_counted(f, b, 1e-13).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn simple_integrals() {
        let v = integrate(|x| x, 0.0, 1.0, tight()).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        let v = integrate(libm::sin, 0.0, PI, tight()).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn polynomial_exactness_on_one_panel() {
        // degree 29 = 2 * 15 - 1
        let mut f = |x: f64| x.powi(29) + 3.0 * x.powi(28) - x.powi(7) + 0.5;
        let v = gauss_legendre(&mut f, 0.0, 1.0);
        let exact = 1.0 / 30.0 + 3.0 / 29.0 - 1.0 / 8.0 + 0.5;
        assert!(((v - exact) / exact).abs() < 1e-14);
    }

    #[test]
    fn bad_bounds_and_spec() {
        assert!(integrate(|x| x, 1.0, 1.0, tight()).is_err());
        assert!(QuadratureSpec::new(0.0, 1e-10, 10).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 0).is_err());
    }

    #[test]
    fn subdivision_cap_is_reported() {
        let spec = QuadratureSpec::new(1e-15, 1e-15, 3).unwrap();
        let err = integrate(|x| libm::sin(200.0 * x), 0.0, 10.0, spec).unwrap_err();
        assert!(matches!(err, Error::MaxSubdivisions { .. }));
    }

    #[test]
    fn oscillatory_integral_with_initial_panels() {
        let v = integrate_panels(|x| libm::cos(100.0 * x), 0.0, 1.0, 32, tight()).unwrap();
        assert!((v - libm::sin(100.0) / 100.0).abs() < 1e-13);
    }

    proptest::proptest! {
        #[test]
        fn integrate_is_linear(
            p in proptest::collection::vec(-5.0f64..5.0, 1..8),
            q in proptest::collection::vec(-5.0f64..5.0, 1..8),
            alpha in -3.0f64..3.0,
            beta in -3.0f64..3.0,
        ) {
            let spec = QuadratureSpec::new(1e-12, 1e-12, 1000).unwrap();
            let poly = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k);
            let lhs = integrate(|x| alpha * poly(&p, x) + beta * poly(&q, x), -1.0, 2.0, spec).unwrap();
            let rhs = alpha * integrate(|x| poly(&p, x), -1.0, 2.0, spec).unwrap()
                + beta * integrate(|x| poly(&q, x), -1.0, 2.0, spec).unwrap();
            let scale = 1.0 + lhs.abs();
            proptest::prop_assert!((lhs - rhs).abs() <= 10.0 * 1e-12 * scale);
        }
    }
}
