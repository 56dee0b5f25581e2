//! Scalar root bracketing and one-dimensional minimisation.

use crate::error::{Error, Result};

/// Bisection on a sign-changing bracket `[lo, hi]`.
///
/// Iterates until the bracket is narrower than `xtol` (absolute) or stops
/// shrinking in floating point.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::domain(format!(
            "bracket [{lo}, {hi}] does not change sign ({f_lo:e}, {f_hi:e})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a local minimum of a unimodal `f` on `[a, b]`.
///
/// Returns `(x_min, f(x_min))` once the bracket is narrower than `xtol`.
pub fn golden_section_min<F>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > xtol {
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
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let root = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((root - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisect_rejects_bad_bracket() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(bisect(|x| x, 1.0, 0.0, 1e-12).is_err());
    }

    #[test]
    fn golden_section_parabola() {
        let (x, fx) = golden_section_min(|x| (x - 0.3) * (x - 0.3) + 2.0, -1.0, 4.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-12);
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.8, 6.0, 400);
        assert_eq!(v.len(), 400);
        assert_eq!(v[0], 0.8);
        assert_eq!(v[399], 6.0);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }
}
