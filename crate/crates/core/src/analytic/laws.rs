use crate::{Error, EvalGrid, Result};

/// `1 - e^-t`, accurate for small `t`.
pub fn exp_law(t: f64) -> f64 {
    -libm::expm1(-t)
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("p must lie in (0, 1)".into()))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeTime(t))
    }
}

/// `ln e_p` for `e_p = (1 - p)^(-1/p)`.
fn log_ep(p: f64) -> f64 {
    -libm::log1p(-p) / p
}

/// `(1 - e_p^-t) / ln e_p` with `e_p = (1 - p)^(-1/p)`. Tends to the
/// exponential law as `p -> 0`.
///
/// This is the continuous relaxation of [`lemma0_sharp_bound`] and lies
/// below it by at most a factor `1 - p`; see the tests.
pub fn lemma0_bound(p: f64, t: f64) -> Result<f64> {
    check_p(p)?;
    check_t(t)?;
    let c = log_ep(p);
    Ok(-libm::expm1(-t * c) / c)
}

/// `int_0^t (1 - p)^floor(s / p) ds`, the exact supremum of `G(t)` over all
/// mixtures with weights `p (1 - p)^(k-1)` of laws with means `k`. The
/// supremum is attained by the family of unit masses at `k`.
pub fn lemma0_sharp_bound(p: f64, t: f64) -> Result<f64> {
    check_p(p)?;
    check_t(t)?;
    let m = libm::floor(t / p);
    let qm = libm::exp(m * libm::log1p(-p));
    Ok(1.0 - qm + (t - m * p) * qm)
}

/// `min(1, lemma0_bound(p, t) + p t)`.
pub fn gp_envelope(p: f64, t: f64) -> Result<f64> {
    Ok((lemma0_bound(p, t)? + p * t).min(1.0))
}

/// Largest `p` with `gp_envelope(p, t) - (1 - e^-t) <= eps` on every grid
/// point, found by bisection to machine precision.
pub fn envelope_threshold(eps: f64, grid: &EvalGrid) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    let excess = |p: f64| -> Result<f64> {
        let mut worst = f64::NEG_INFINITY;
        for &t in grid.points() {
            worst = worst.max(gp_envelope(p, t)? - exp_law(t));
        }
        Ok(worst)
    };
    let mut lo = 1e-15;
    let mut hi = 1.0 - 1e-15;
    if excess(lo)? > eps {
        return Err(Error::InvalidParameter(
            "no admissible p on this grid".into(),
        ));
    }
    if excess(hi)? <= eps {
        return Ok(hi);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid)? <= eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `E[R_B] = 1 / mu(B)` for an ergodic process.
pub fn kac_expectation(mu: f64) -> Result<f64> {
    if mu > 0.0 && mu <= 1.0 {
        Ok(1.0 / mu)
    } else {
        Err(Error::InvalidParameter("measure must lie in (0, 1]".into()))
    }
}
