//! Small numerical tools shared by the measurement and analytic modules:
//! Richardson-extrapolated central differences, golden-section minimisation
//! and bisection.

use crate::error::{invalid, Result};

/// Relative step of the central difference, scaled by `max(1, |x|)`.
pub const DERIVATIVE_STEP: f64 = 1e-5;

/// Derivative of every component of `f` at `x`.
///
/// Uses central differences at steps `h` and `h/2` and one level of
/// Richardson extrapolation, leaving an `O(h⁴)` truncation error.
pub fn central_derivative<const N: usize, F>(f: F, x: f64) -> Result<[f64; N]>
where
    F: Fn(f64) -> Result<[f64; N]>,
{
    let h = DERIVATIVE_STEP * libm::fmax(1.0, libm::fabs(x));
    let coarse = difference(&f, x, h)?;
    let fine = difference(&f, x, 0.5 * h)?;
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    Ok(out)
}

fn difference<const N: usize, F>(f: &F, x: f64, h: f64) -> Result<[f64; N]>
where
    F: Fn(f64) -> Result<[f64; N]>,
{
    let plus = f(x + h)?;
    let minus = f(x - h)?;
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = (plus[i] - minus[i]) / (2.0 * h);
    }
    Ok(out)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimiser of a unimodal `f` on `[lo, hi]`, located to within `tol`.
pub fn golden_section_min<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(invalid("golden-section bracket must satisfy lo < hi"));
    }
    if !(tol > 0.0) {
        return Err(invalid("golden-section tolerance must be positive"));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    // the bracket may have collapsed onto an endpoint minimum
    let mid = 0.5 * (a + b);
    let candidates = [(lo, f(lo)), (hi, f(hi)), (mid, f(mid))];
    let best = candidates
        .iter()
        .fold(candidates[2], |best, &c| if c.1 < best.1 { c } else { best });
    Ok(best.0)
}

/// Root of `f` on `[lo, hi]` by bisection, given a sign change between the
/// endpoints. Stops once the bracket is narrower than `tol`.
pub fn bisect<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(invalid("bisection bracket has no sign change"));
    }
    let negative_at_lo = fa < 0.0;
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == negative_at_lo {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
