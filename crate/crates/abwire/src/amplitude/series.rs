//! Summation engine for the slowly convergent oscillatory tails
//! Σ_{m ≥ m₀} g(m)·e^{imφ} with smooth g(m) = O(1/m).
//!
//! Terms are summed directly while g still varies quickly (near the channel
//! threshold g oscillates in m), then the smooth tail is handled in two
//! layers: the known 1/m asymptote is subtracted and restored through a
//! closed form for Σ e^{imφ}/m, and the O(1/m²) remainder is summed by an
//! iterated Abel transformation built from forward differences,
//!
//!   Σ_{k≥0} g_k z^k = Σ_{j<J} (Δ^j g)_0 z^j/(1−z)^{j+1}
//!                   + (z/(1−z))^J Σ_{k≥0} (Δ^J g)_k z^k,
//!
//! whose remainder is bounded by |1−z|^{−J}·Σ|Δ^J g|. The depth J and the
//! direct-region length adapt until the certified bound meets the target.

use crate::error::{Error, Result};
use crate::specfun::{digamma, quad, Complex};
use std::f64::consts::{PI, TAU};

const J_MAX: usize = 12;
const WINDOW: usize = 48;
const WLEN: usize = J_MAX + WINDOW;
const FIRST_SPAN: i64 = 32;

/// How Σ_{m>M} e^{imφ}/m is restored after the 1/m subtraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormRoute {
    /// −ln(1−e^{iφ}) minus the partial sum (exact elementary form).
    Log,
    /// The digamma-plus-oscillatory-integral identity for
    /// Σ_{k≥0} e^{ikφ}/(k+α).
    Digamma,
    /// No subtraction; the difference transform works on the raw tail.
    None,
}

pub struct SumOutcome {
    pub value: Complex,
    pub terms_used: usize,
    pub bound: f64,
}

fn phase(mphi: f64) -> Complex {
    Complex::from_polar(1.0, mphi.rem_euclid(TAU))
}

/// Σ_{k≥0} e^{ikφ}/(k+α) for 0 < φ ≤ π via the digamma identity:
/// β(α)e^{iα(π−φ)} + ½ e^{−iαφ} ∫_φ^π e^{i(α−1/2)t}/sin(t/2) dt,
/// β(α) = [ψ((α+1)/2) − ψ(α/2)]/2.
fn lerch_unit_digamma(alpha: f64, phi: f64) -> Result<Complex> {
    debug_assert!(phi > 0.0 && phi <= PI + 1e-12);
    let beta_alpha = 0.5 * (digamma(0.5 * (alpha + 1.0))? - digamma(0.5 * alpha)?);
    let lead = beta_alpha * phase(alpha * (PI - phi));
    if phi >= PI {
        return Ok(lead);
    }
    let omega = alpha - 0.5;
    let (integral, _err) = quad::integrate(
        |t: f64| phase(omega * t) / (0.5 * t).sin(),
        phi,
        PI,
        1e-12,
        20_000,
    )?;
    Ok(lead + 0.5 * phase(-alpha * phi) * integral)
}

/// Σ_{m>m0} e^{imφ}/m by the requested route; `partial` must hold
/// Σ_{m=1}^{m0} e^{imφ}/m when the Log route is used.
fn log_tail(route: ClosedFormRoute, phi: f64, m0: i64, partial: Complex) -> Result<Complex> {
    match route {
        ClosedFormRoute::Log => {
            let z = phase(phi);
            Ok(-(Complex::new(1.0, 0.0) - z).ln() - partial)
        }
        ClosedFormRoute::Digamma => {
            // Normalize into (0, π] and conjugate when the frequency is
            // negative: Σ e^{im(−φ)}/m = conj(Σ e^{imφ}/m).
            let mut r = phi.rem_euclid(TAU);
            let mut conj = false;
            if r > PI {
                r = TAU - r;
                conj = true;
            }
            let alpha = (m0 + 1) as f64;
            let lerch = lerch_unit_digamma(alpha, r)?;
            let val = phase(phi * alpha) * if conj { lerch.conj() } else { lerch };
            Ok(val)
        }
        ClosedFormRoute::None => Ok(Complex::new(0.0, 0.0)),
    }
}

/// Iterated-difference transform of Σ_{k≥0} gt(s0+k) z^k from a window of
/// tail values; returns the transform value (without the z^{s0} factor)
/// and its certified remainder bound, minimized over the depth J.
fn diff_transform(gt: &[Complex], s0: i64, z: Complex) -> (Complex, f64) {
    let one_minus_z = Complex::new(1.0, 0.0) - z;
    let amp = 1.0 / one_minus_z.norm();
    let mut row: Vec<Complex> = gt.to_vec();
    let mut head = Complex::new(0.0, 0.0);
    let mut zfac = one_minus_z.inv();
    let mut amp_pow = 1.0f64;
    let mut best_val = Complex::new(0.0, 0.0);
    let mut best_bound = f64::INFINITY;

    for j in 0..J_MAX {
        head += row[0] * zfac;
        let cnt = WLEN - j - 1;
        for i in 0..cnt {
            row[i] = row[i + 1] - row[i];
        }
        let level = (j + 1) as f64;
        amp_pow *= amp;
        let wsum: f64 = row[..cnt].iter().map(|c| c.norm()).sum();
        // Power-law extension past the window: for Δ^J g ~ C·m^{−(J+1)} the
        // rest of the sum is ≈ last·m_end/J; factor 2 of headroom.
        let last = row[cnt - 1].norm();
        let beyond = 2.0 * last * (s0 as f64 + WLEN as f64) / level;
        let bound = amp_pow * (wsum + beyond);
        if bound < best_bound {
            best_bound = bound;
            best_val = head;
        }
        zfac *= z / one_minus_z;
    }
    (best_val, best_bound)
}

/// Σ_{m ≥ m_start} g(m)·e^{imφ} to absolute accuracy `tol`, with a
/// certified truncation bound. `sub_coeff` is the 1/m-tail coefficient of
/// g (ignored for `ClosedFormRoute::None`).
pub fn oscillatory_sum<G: Fn(i64) -> Complex>(
    g: G,
    m_start: i64,
    phi: f64,
    sub_coeff: Complex,
    route: ClosedFormRoute,
    tol: f64,
    m_cap: i64,
) -> Result<SumOutcome> {
    let z = phase(phi);
    let subtracting = route != ClosedFormRoute::None;
    let mut terms_used = 0usize;

    // Running Σ_{m=1}^{m_next−1} z^m/m for the Log closed form.
    let mut partial_log = Complex::new(0.0, 0.0);
    if route == ClosedFormRoute::Log {
        let mut zp = z;
        for m in 1..m_start {
            partial_log += zp / m as f64;
            zp *= z;
            if m % 4096 == 0 {
                zp = phase(phi * (m + 1) as f64);
            }
        }
    }

    let mut direct = Complex::new(0.0, 0.0);
    let mut m_next = m_start;
    let mut zp = phase(phi * m_start as f64);
    let mut span = FIRST_SPAN;

    loop {
        let m0 = m_start - 1 + span;
        while m_next <= m0 {
            direct += g(m_next) * zp;
            if route == ClosedFormRoute::Log {
                partial_log += zp / m_next as f64;
            }
            terms_used += 1;
            m_next += 1;
            zp *= z;
            if m_next % 4096 == 0 {
                zp = phase(phi * m_next as f64);
            }
        }

        let s0 = m0 + 1;
        if s0 + WLEN as i64 > m_cap {
            return Err(Error::CapExceeded(format!(
                "oscillatory sum reached m_cap = {m_cap} before meeting tol = {tol:.3e} \
                 (phi = {phi:.6}, m_start = {m_start})"
            )));
        }
        let gt: Vec<Complex> = (0..WLEN)
            .map(|k| {
                let m = s0 + k as i64;
                terms_used += 1;
                let mut v = g(m);
                if subtracting {
                    v -= sub_coeff / m as f64;
                }
                v
            })
            .collect();
        let (tval, bound) = diff_transform(&gt, s0, z);
        if bound <= tol {
            let tail = phase(phi * s0 as f64) * tval;
            let closed = if subtracting {
                sub_coeff * log_tail(route, phi, m0, partial_log)?
            } else {
                Complex::new(0.0, 0.0)
            };
            return Ok(SumOutcome {
                value: direct + tail + closed,
                terms_used,
                bound,
            });
        }
        span *= 2;
    }
}

/// Polynomial (Neville) extrapolation of complex values to h = 0.
pub fn neville_at_zero(points: &[(f64, Complex)]) -> Complex {
    let n = points.len();
    let mut tbl: Vec<Complex> = points.iter().map(|&(_, v)| v).collect();
    let hs: Vec<f64> = points.iter().map(|&(h, _)| h).collect();
    for level in 1..n {
        for i in 0..(n - level) {
            let h_lo = hs[i];
            let h_hi = hs[i + level];
            tbl[i] = (tbl[i + 1] * (0.0 - h_lo) - tbl[i] * (0.0 - h_hi)) / (h_hi - h_lo);
        }
    }
    tbl[0]
}
