//! Differential cross sections, the scaled figure observable
//! y = 2πp|f|², absorption counting, and the Parseval consistency check
//! on the correction series.
//!
//! The total elastic cross section is deliberately not exposed: the
//! AB-type tails keep |S_m − 1| from vanishing, so both ∫|f|²dφ over the
//! full circle and Σ|S_m − 1|² diverge. Only angular densities and the
//! f_w Parseval identity are meaningful.

use crate::amplitude::{f_total, f_w, AmplitudeBreakdown, SumSpec};
use crate::error::{Error, Result};
use crate::params::{ChannelBounds, OrderNu, ScatterParams, WireModel};
use crate::specfun::{quad, Complex};
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// One row of an angular scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub phi: f64,
    /// 2πp·|f|², the p-invariant plotted observable.
    pub y: f64,
    pub f: Complex,
    pub f_ab_mod: Complex,
    pub f_w: Complex,
    pub tail_bound: f64,
}

/// An angle grid with per-angle amplitudes and scaled cross sections.
#[derive(Debug, Clone)]
pub struct AngularScan {
    pub params: ScatterParams,
    pub wire: WireModel,
    pub p: f64,
    pub rows: Vec<ScanRow>,
}

fn row_from_breakdown(b: &AmplitudeBreakdown, p: f64) -> ScanRow {
    ScanRow {
        phi: b.phi,
        y: TAU * p * b.f_total.norm_sqr(),
        f: b.f_total,
        f_ab_mod: b.f_ab_mod,
        f_w: b.f_w,
        tail_bound: b.tail_bound,
    }
}

/// Scaled differential cross section 2πp·|f(φ)|² (absorbing wires).
pub fn scaled_dcs(
    params: &ScatterParams,
    bounds: &ChannelBounds,
    wire: &WireModel,
    phi: f64,
    p: f64,
    spec: &SumSpec,
) -> Result<f64> {
    let b = f_total(params, bounds, wire, phi, p, spec)?;
    Ok(TAU * p * b.f_total.norm_sqr())
}

/// Evaluate a full angular scan; rows come back ordered by the input grid
/// regardless of the parallel evaluation order.
pub fn angular_scan(
    params: &ScatterParams,
    bounds: &ChannelBounds,
    wire: &WireModel,
    p: f64,
    grid: &[f64],
    spec: &SumSpec,
) -> Result<AngularScan> {
    let rows: Result<Vec<ScanRow>> = grid
        .par_iter()
        .map(|&phi| f_total(params, bounds, wire, phi, p, spec).map(|b| row_from_breakdown(&b, p)))
        .collect();
    Ok(AngularScan {
        params: *params,
        wire: *wire,
        p,
        rows: rows?,
    })
}

/// Absorption cross section σ_abs = absorbed_count/p (each absorbed
/// channel contributes exactly 1 through the 2-D partial-wave identity
/// σ_abs = (1/p)Σ(1 − |S_m|²); elastic channels contribute 0).
pub fn sigma_absorption(
    params: &ScatterParams,
    bounds: &ChannelBounds,
    wire: &WireModel,
    p: f64,
) -> Result<f64> {
    let _ = params;
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!("p must be > 0, got {p}")));
    }
    if !wire.is_absorbing() {
        return Err(Error::Unsupported(
            "sigma_absorption applies to absorbing wires only; reflecting-wire \
             scattering is elastic"
                .into(),
        ));
    }
    Ok(bounds.absorbed_count as f64 / p)
}

// --- Parseval check -------------------------------------------------------

/// ψ'(x) (trigamma) by recurrence into the asymptotic region.
fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 8.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 / 42.0))))
}

/// ψ'''(x) (pentagamma) by recurrence into the asymptotic region.
fn pentagamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 8.0 {
        acc += 6.0 / (x * x * x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let inv3 = inv2 * inv;
    acc + inv3 * (2.0 + inv * (3.0 + inv * (2.0 - inv2 * (1.0 - (4.0 / 3.0) * inv2))))
}

/// |δΣ coefficient|² at channel offset m of one of the two sums:
/// 4 sin²(πχ/2), χ = c²/(m ∓ β + ν).
fn coeff_sq(m: i64, sign_beta: f64, params: &ScatterParams) -> f64 {
    let c_sq = params.coupling_sq();
    let d = m as f64 + sign_beta * params.beta;
    let idx = if sign_beta < 0.0 { m } else { -m };
    let nu = crate::params::nu_squared(idx, params).max(0.0).sqrt();
    let chi = c_sq / (d + nu);
    let s = (0.5 * PI * chi).sin();
    4.0 * s * s
}

/// Σ_m |c_m|² over one δΣ side, from `start`, with the analytic tail
/// beyond `m_top` restored through polygamma asymptotics.
fn coeff_sq_sum(start: i64, sign_beta: f64, params: &ScatterParams) -> f64 {
    let c_sq = params.coupling_sq();
    let m_top = ((100.0 * c_sq) as i64).max(20_000).max(start + 100);
    let mut acc = 0.0;
    for m in start..=m_top {
        acc += coeff_sq(m, sign_beta, params);
    }
    let alpha = (m_top + 1) as f64 + sign_beta * params.beta;
    let t1 = trigamma(alpha);
    let t3 = pentagamma(alpha);
    let c4 = c_sq * c_sq;
    let c6 = c4 * c_sq;
    let c8 = c4 * c4;
    acc + PI * PI * c4 / 4.0 * t1 + PI * PI * c6 / 48.0 * t3
        - PI.powi(4) * c8 / 1152.0 * t3
}

/// Relative Parseval gap of the correction series:
/// | ∫|f_w|²dφ − (1/p)Σ|c_m|² | / (1/p)Σ|c_m|².
///
/// The integral excludes a sliver |φ| < 1e−9 around the forward direction;
/// the sliver's possible contribution, bounded through the small-angle
/// |ln φ| growth of f_w, is added to the numerator so the reported gap is
/// conservative.
pub fn parseval_gap(
    params: &ScatterParams,
    bounds: &ChannelBounds,
    p: f64,
    spec: &SumSpec,
) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!("p must be > 0, got {p}")));
    }
    let c_sq = params.coupling_sq();

    // Coefficient side.
    let (start_up, start_down) = if bounds.is_empty() {
        (1, 1)
    } else {
        if bounds.m_minus < 0 || bounds.m_plus < 0 {
            return Err(Error::Unsupported(
                "parseval_gap needs an absorbed interval containing m = 0".into(),
            ));
        }
        (bounds.m_plus + 1, bounds.m_minus + 1)
    };
    let mut sum_sq = coeff_sq_sum(start_up, -1.0, params) + coeff_sq_sum(start_down, 1.0, params);
    if bounds.is_empty() {
        let nu0 = OrderNu::new(0, params);
        let s0 = Complex::from_polar(1.0, -PI * nu0.magnitude);
        sum_sq += (s0 - crate::amplitude::ab_phase(params.beta, 0)).norm_sqr();
    }
    let rhs = sum_sq / p;

    if rhs == 0.0 {
        return Ok(0.0);
    }

    // Integral side. Per-angle f_w tolerance scales with the expected
    // |ln φ| growth so the forward panels stay cheap.
    let phi_cut = 1e-9;
    let fw_abs = |phi: f64| -> Result<f64> {
        let est = (1.0 + c_sq * (1.0 + (1.0 / phi.abs()).ln().max(0.0))) / (TAU * p).sqrt();
        let mut local = *spec;
        local.tol = (1e-7 * est).max(1e-13);
        local.m_cap = local.m_cap.max(16_000_000);
        let (w, _, _) = f_w(params, bounds, phi, p, &local)?;
        Ok(w.norm_sqr())
    };
    let tol_quad = 1e-6 * rhs;
    let (integral, quad_err) = quad::integrate_segments(
        |phi| Complex::new(fw_abs(phi).unwrap_or(f64::NAN), 0.0),
        &[(-PI, -phi_cut), (phi_cut, PI)],
        tol_quad,
        6000,
    )?;
    let lhs = integral.re;
    if !lhs.is_finite() {
        return Err(Error::Accuracy(
            "f_w evaluation failed inside the Parseval quadrature".into(),
        ));
    }

    // Sliver bound from |δΣ| ≤ πc²(|ln φ| + C₀).
    let c0 = 5.0;
    let ell = (1.0 / phi_cut).ln();
    let poly = ell * ell + 2.0 * ell + 2.0 + 2.0 * c0 * (ell + 1.0) + c0 * c0;
    let sliver = PI * c_sq * c_sq / p * phi_cut * poly;

    Ok(((lhs - rhs).abs() + sliver + quad_err) / rhs)
}
