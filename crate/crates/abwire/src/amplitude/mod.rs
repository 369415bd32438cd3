//! Scattering-amplitude assembly: the exact and modified Aharonov–Bohm
//! closed forms, the rapidly converging correction series, the total
//! amplitude for absorbing wires, and an Abel-summation oracle for the
//! defining partial-wave sum.

mod series;

pub use series::neville_at_zero;
pub use series::ClosedFormRoute;

use crate::error::{Error, Result};
use crate::params::{channel_bounds, ChannelBounds, OrderNu, ScatterParams, WireModel};
use crate::specfun::Complex;
use series::oscillatory_sum;
use std::f64::consts::{FRAC_PI_4, PI, TAU};

/// Angles closer than this to the forward direction (mod 2π) are rejected;
/// the amplitude diverges there. Scan drivers apply the larger default
/// `DEFAULT_PHI_MIN`.
pub const PHI_HARD_FLOOR: f64 = 1e-12;
/// Default minimum scattering angle for scans and the CLI.
pub const DEFAULT_PHI_MIN: f64 = 1e-6;

/// Tail acceleration for the correction series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accel {
    /// Subtract the iπ(β²+γ²)/(2m) asymptote and restore it through the
    /// elementary −ln(1−e^{iφ}) closed form (default).
    LogSubtraction,
    /// Same subtraction, restored through the digamma identity for
    /// Σ e^{ikφ}/(k+α); kept as an independent cross-check route.
    DigammaFormula,
    /// No subtraction; the difference transform alone carries the tail.
    None,
}

impl Accel {
    fn route(self) -> ClosedFormRoute {
        match self {
            Accel::LogSubtraction => ClosedFormRoute::Log,
            Accel::DigammaFormula => ClosedFormRoute::Digamma,
            Accel::None => ClosedFormRoute::None,
        }
    }
}

/// Truncation control for the correction series.
#[derive(Debug, Clone, Copy)]
pub struct SumSpec {
    /// Absolute truncation tolerance on f_w.
    pub tol: f64,
    /// Safety cap on the channel index.
    pub m_cap: i64,
    pub accel: Accel,
}

impl SumSpec {
    pub fn new(tol: f64) -> Self {
        SumSpec {
            tol,
            m_cap: 4_000_000,
            accel: Accel::LogSubtraction,
        }
    }

    pub fn with_accel(mut self, accel: Accel) -> Self {
        self.accel = accel;
        self
    }

    fn validate(&self, bounds: &ChannelBounds) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tol must be > 0, got {}",
                self.tol
            )));
        }
        if self.m_cap < bounds.m_plus + 10 {
            return Err(Error::InvalidParameter(format!(
                "m_cap = {} must be at least m_plus + 10 = {}",
                self.m_cap,
                bounds.m_plus + 10
            )));
        }
        Ok(())
    }
}

impl Default for SumSpec {
    fn default() -> Self {
        SumSpec::new(1e-8)
    }
}

/// The amplitude at one angle, split into the modified-AB closed form and
/// the correction series, with truncation diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct AmplitudeBreakdown {
    pub phi: f64,
    pub f_ab_mod: Complex,
    pub f_w: Complex,
    /// f_ab_mod + f_w, exactly.
    pub f_total: Complex,
    pub terms_used: usize,
    /// Certified upper bound on the truncation error of `f_w`.
    pub tail_bound: f64,
}

/// e^{−iπ/4}/√(2πp), the universal amplitude prefactor.
fn prefactor(p: f64) -> Complex {
    Complex::from_polar(1.0 / (TAU * p).sqrt(), -FRAC_PI_4)
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "wavenumber p must be > 0, got {p}"
        )))
    }
}

fn check_phi(phi: f64) -> Result<()> {
    if !phi.is_finite() || phi.abs() >= TAU {
        return Err(Error::Domain(format!(
            "scattering angle must satisfy 0 < |phi| < 2*pi, got {phi}"
        )));
    }
    if phi.abs() < PHI_HARD_FLOOR || TAU - phi.abs() < PHI_HARD_FLOOR {
        return Err(Error::Domain(format!(
            "amplitude diverges in the forward direction (phi = {phi:e})"
        )));
    }
    Ok(())
}

/// The bounds the amplitude split supports: empty, or an interval
/// containing m = 0.
fn check_bounds_for_split(bounds: &ChannelBounds) -> Result<()> {
    if bounds.is_empty() || (bounds.m_minus >= 0 && bounds.m_plus >= 0) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "absorbed interval [{}, {}] does not contain m = 0; the split \
             amplitude forms assume the removed block straddles the origin",
            -bounds.m_minus, bounds.m_plus
        )))
    }
}

/// Exact Aharonov–Bohm amplitude
/// f_AB(φ) = −e^{−iπ/4}/√(2πp) · e^{iφ/2} · sin πβ / sin(φ/2).
pub fn f_ab_exact(beta: f64, phi: f64, p: f64) -> Result<Complex> {
    check_phi(phi)?;
    check_p(p)?;
    let half = 0.5 * phi;
    Ok(-prefactor(p) * Complex::from_polar(1.0, half) * (PI * beta).sin() / half.sin())
}

/// The AB phase function e^{iπ(m−|m−β|)} (unit modulus, no channels
/// removed); the partial-wave content of `f_ab_exact`.
pub fn ab_phase(beta: f64, m: i64) -> Complex {
    let mf = m as f64;
    Complex::from_polar(1.0, PI * (mf - (mf - beta).abs()))
}

/// Modified AB amplitude: the AB closed form with its sin πβ factor
/// angle-modulated by the removed block of channels,
/// −e^{−iπ/4}/√(2πp) · e^{i(m₊−m₋)φ/2} · sin(πβ + (m₊+m₋+1)φ/2)/sin(φ/2).
///
/// With an empty absorbed set the closed form does not apply (it is derived
/// with at least channel m = 0 removed); the full AB partial-wave sum is
/// then Abel-summed instead, which reproduces `f_ab_exact`.
pub fn f_ab_mod(
    params: &ScatterParams,
    bounds: &ChannelBounds,
    phi: f64,
    p: f64,
) -> Result<Complex> {
    check_phi(phi)?;
    check_p(p)?;
    check_bounds_for_split(bounds)?;
    if bounds.is_empty() {
        let beta = params.beta;
        let (v, _resid) = abel_partial_wave(|m| Ok(ab_phase(beta, m)), phi, p, None)?;
        return Ok(v);
    }
    let k = bounds.absorbed_count as f64;
    let skew = 0.5 * (bounds.m_plus - bounds.m_minus) as f64;
    let half = 0.5 * phi;
    Ok(-prefactor(p)
        * Complex::from_polar(1.0, skew * phi)
        * (PI * params.beta + k * half).sin()
        / half.sin())
}

/// Term coefficient of δΣ₁ without the e^{iπβ} prefactor:
/// e^{iπχ} − 1 with χ = c²/(m − β + ν(m)).
fn delta_term_up(m: i64, beta: f64, c_sq: f64, params: &ScatterParams) -> Complex {
    let d = m as f64 - beta;
    let nu = crate::params::nu_squared(m, params).max(0.0).sqrt();
    let chi = c_sq / (d + nu);
    let theta = PI * chi;
    Complex::new(-2.0 * (0.5 * theta).sin().powi(2), theta.sin())
}

/// Term coefficient of δΣ₂ without the e^{−iπβ} prefactor:
/// e^{iπχ̃} − 1 with χ̃ = c²/(m + β + ν̃(m)), ν̃(m) = ν(−m).
fn delta_term_down(m: i64, beta: f64, c_sq: f64, params: &ScatterParams) -> Complex {
    let d = m as f64 + beta;
    let nu = crate::params::nu_squared(-m, params).max(0.0).sqrt();
    let chi = c_sq / (d + nu);
    let theta = PI * chi;
    Complex::new(-2.0 * (0.5 * theta).sin().powi(2), theta.sin())
}

/// The correction series f_w(φ): the two δΣ sums over the elastic channels
/// beyond the removed block, after subtraction of their AB asymptotes.
///
/// Returns (value, terms_used, certified tail bound).
pub fn f_w(
    params: &ScatterParams,
    bounds: &ChannelBounds,
    phi: f64,
    p: f64,
    spec: &SumSpec,
) -> Result<(Complex, usize, f64)> {
    check_phi(phi)?;
    check_p(p)?;
    check_bounds_for_split(bounds)?;
    spec.validate(bounds)?;

    let beta = params.beta;
    let c_sq = params.coupling_sq();
    let pref = prefactor(p);

    let empty = bounds.is_empty();
    if empty && beta.abs() > 0.5 {
        return Err(Error::Unsupported(format!(
            "empty absorbed set with |beta| = {} > 1/2: the AB splitting \
             identity needs |m − β| = m − β on the summation range",
            beta.abs()
        )));
    }

    let (start_up, start_down) = if empty {
        (1, 1)
    } else {
        (bounds.m_plus + 1, bounds.m_minus + 1)
    };

    // Tolerances in δΣ units; split between the two sums.
    let tol_sigma = 0.5 * spec.tol * (TAU * p).sqrt();
    let sub = Complex::new(0.0, 0.5 * PI * c_sq);
    let route = spec.accel.route();

    let up = oscillatory_sum(
        |m| delta_term_up(m, beta, c_sq, params),
        start_up,
        phi,
        sub,
        route,
        tol_sigma,
        spec.m_cap,
    )?;
    let down = oscillatory_sum(
        |m| delta_term_down(m, beta, c_sq, params),
        start_down,
        -phi,
        sub,
        route,
        tol_sigma,
        spec.m_cap,
    )?;

    let e_up = Complex::from_polar(1.0, PI * beta);
    let mut delta_sigma = e_up * up.value + e_up.conj() * down.value;
    if empty {
        // The m = 0 channel is not removed; its correction term
        // (S₀ − S₀^AB) enters explicitly.
        let nu0 = OrderNu::new(0, params);
        let s0 = Complex::from_polar(1.0, -PI * nu0.magnitude);
        delta_sigma += s0 - ab_phase(beta, 0);
    }

    let value = pref * delta_sigma;
    let bound = (up.bound + down.bound) / (TAU * p).sqrt();
    Ok((value, up.terms_used + down.terms_used, bound))
}

/// Total absorbing-wire amplitude f = f_ab_mod + f_w.
///
/// Only the absorbing wire models are supported: the splitting is derived
/// for absorption. For `FiniteAbsorbing` the caller-provided bounds must
/// come from the ⌊a⌋ rule and must cover the fall-to-center interval.
pub fn f_total(
    params: &ScatterParams,
    bounds: &ChannelBounds,
    wire: &WireModel,
    phi: f64,
    p: f64,
    spec: &SumSpec,
) -> Result<AmplitudeBreakdown> {
    wire.validate()?;
    if !wire.is_absorbing() {
        return Err(Error::Unsupported(
            "f_total assembles the absorbing-wire splitting; the reflecting \
             wire is only reachable through abel_partial_wave"
                .into(),
        ));
    }
    if let WireModel::FiniteAbsorbing { .. } = wire {
        let fall = channel_bounds(params, &WireModel::ThinAbsorbing)?;
        if !fall.is_empty() && (fall.m_plus > bounds.m_plus || fall.m_minus > bounds.m_minus) {
            return Err(Error::Unsupported(format!(
                "finite absorbing wire bounds [{}, {}] do not cover the \
                 fall-to-center interval [{}, {}]",
                -bounds.m_minus, bounds.m_plus, -fall.m_minus, fall.m_plus
            )));
        }
    }
    let ab = f_ab_mod(params, bounds, phi, p)?;
    let (w, terms_used, tail_bound) = f_w(params, bounds, phi, p, spec)?;
    Ok(AmplitudeBreakdown {
        phi,
        f_ab_mod: ab,
        f_w: w,
        f_total: ab + w,
        terms_used,
        tail_bound,
    })
}

/// Default Abel radius schedule r = 1 − 2^{−k}, k = 4..12.
fn default_abel_schedule() -> Vec<f64> {
    (4..=12).map(|k| 1.0 - 2f64.powi(-k)).collect()
}

/// Brute-force oracle for the defining partial-wave sum
/// f(φ) = e^{−iπ/4}/√(2πp) · Σ_m (S_m − 1) r^{|m|} e^{imφ}, r → 1⁻.
///
/// Evaluates the Abel-regularized sum on the radius schedule and
/// extrapolates polynomially in h = 1 − r to h = 0. Returns the value and
/// the extrapolation residual; residuals above 1e−6 are an error.
pub fn abel_partial_wave<F>(
    s_m: F,
    phi: f64,
    p: f64,
    r_schedule: Option<&[f64]>,
) -> Result<(Complex, f64)>
where
    F: Fn(i64) -> Result<Complex>,
{
    check_phi(phi)?;
    check_p(p)?;
    let schedule: Vec<f64> = match r_schedule {
        Some(s) => {
            if s.len() < 3 || s.iter().any(|&r| !(0.0 < r && r < 1.0)) {
                return Err(Error::InvalidParameter(
                    "r_schedule needs at least 3 radii inside (0, 1)".into(),
                ));
            }
            s.to_vec()
        }
        None => default_abel_schedule(),
    };

    let one = Complex::new(1.0, 0.0);
    let mut points: Vec<(f64, Complex)> = Vec::with_capacity(schedule.len());
    for &r in &schedule {
        // Truncate where the geometric envelope is below 2.5e-11·(1−r).
        let m_max = ((2.5e-11 * (1.0 - r)).ln() / r.ln()).ceil() as i64;
        let zr_up = r * Complex::from_polar(1.0, phi);
        let zr_dn = r * Complex::from_polar(1.0, -phi);
        let mut acc = s_m(0)? - one;
        let mut wp = zr_up;
        let mut wn = zr_dn;
        for m in 1..=m_max {
            acc += (s_m(m)? - one) * wp + (s_m(-m)? - one) * wn;
            wp *= zr_up;
            wn *= zr_dn;
            if m % 4096 == 0 {
                let rm = (m + 1) as f64;
                let rad = r.powf(rm);
                wp = rad * Complex::from_polar(1.0, (rm * phi).rem_euclid(TAU));
                wn = rad * Complex::from_polar(1.0, (-rm * phi).rem_euclid(TAU));
            }
        }
        points.push((1.0 - r, prefactor(p) * acc));
    }

    let full = neville_at_zero(&points);
    let reduced = neville_at_zero(&points[..points.len() - 1]);
    let residual = (full - reduced).norm();
    if residual > 1e-6 {
        return Err(Error::NonConvergence(format!(
            "Abel extrapolation residual {residual:.3e} exceeds 1e-6 at phi = {phi}"
        )));
    }
    Ok((full, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{channel_bounds, Coupling};
    use crate::smatrix::s_matrix;

    fn sp(beta: f64, gamma: f64) -> ScatterParams {
        ScatterParams::new(beta, gamma).unwrap()
    }

    fn bounds_thin(p: &ScatterParams) -> ChannelBounds {
        channel_bounds(p, &WireModel::ThinAbsorbing).unwrap()
    }

    #[test]
    fn ab_exact_vanishes_at_integer_beta() {
        for &b in &[-2.0f64, 0.0, 1.0, 3.0] {
            let f = f_ab_exact(b, 1.1, 1.0).unwrap();
            assert!(f.norm() < 1e-15);
        }
    }

    #[test]
    fn ab_exact_backscattering_value() {
        // β = 1/2, φ = π, p = 1: −e^{−iπ/4}·e^{iπ/2}/√(2π).
        let f = f_ab_exact(0.5, PI, 1.0).unwrap();
        let expect = -Complex::from_polar(1.0, -FRAC_PI_4)
            * Complex::from_polar(1.0, 0.5 * PI)
            / TAU.sqrt();
        assert!((f - expect).norm() < 1e-15);
        assert!((f.norm() - 1.0 / TAU.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ab_exact_symmetry_under_beta_phi_flip() {
        for &(b, phi) in &[(0.3, 0.7), (0.8, 2.1), (1.7, -1.2)] {
            let f1 = f_ab_exact(b, phi, 1.0).unwrap();
            let f2 = f_ab_exact(-b, -phi, 1.0).unwrap();
            assert!((f1.norm() - f2.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn ab_exact_rejects_forward() {
        assert!(f_ab_exact(0.5, 0.0, 1.0).is_err());
        assert!(f_ab_exact(0.5, 1e-13, 1.0).is_err());
    }

    #[test]
    fn ab_mod_zero_at_modulation_node() {
        // (β, γ) = (0.5, 5.1): K = 10, sin(π/2 + 10·π/4) = sin(3π) = 0.
        let p = sp(0.5, 5.1);
        let b = bounds_thin(&p);
        let f = f_ab_mod(&p, &b, 0.5 * PI, 1.0).unwrap();
        assert!(f.norm() < 1e-10, "|f_ab_mod| = {}", f.norm());
    }

    #[test]
    fn ab_mod_single_channel_plateau() {
        // β = 0, tiny γ: only channel 0 removed, f_ab_mod = −pref.
        let p = sp(0.0, 0.05);
        let b = bounds_thin(&p);
        assert_eq!(b.absorbed_count, 1);
        for &phi in &[0.3f64, 1.0, 2.4] {
            let f = f_ab_mod(&p, &b, phi, 1.0).unwrap();
            assert!((f + prefactor(1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn ab_mod_empty_set_reduces_to_ab_exact() {
        let p = sp(0.3, 0.0);
        let b = bounds_thin(&p);
        assert!(b.is_empty());
        for &phi in &[0.4f64, 1.3] {
            let f = f_ab_mod(&p, &b, phi, 1.0).unwrap();
            let exact = f_ab_exact(0.3, phi, 1.0).unwrap();
            assert!((f - exact).norm() < 1e-7, "phi = {phi}");
        }
    }

    #[test]
    fn f_w_zero_coupling_vanishes() {
        let p = sp(0.0, 0.0);
        let b = bounds_thin(&p);
        let (w, _, bound) = f_w(&p, &b, 0.8, 1.0, &SumSpec::default()).unwrap();
        assert!(w.norm() < 1e-14);
        assert!(bound < 1e-8);
    }

    #[test]
    fn f_w_term_magnitude_law() {
        // |term_m| = 2|sin(πχ/2)| → π c²/(2m) as m → ∞.
        let p = sp(0.5, 5.1);
        let c_sq = p.coupling_sq();
        for &m in &[100i64, 1000, 10000] {
            let t = delta_term_up(m, p.beta, c_sq, &p).norm();
            let asym = PI * c_sq / (2.0 * m as f64);
            let ratio = t / asym;
            assert!(
                (ratio - 1.0).abs() < 5.0 / m as f64,
                "m = {m}: ratio = {ratio}"
            );
        }
    }

    #[test]
    fn f_w_accel_routes_agree() {
        let p = sp(0.0, 2.0);
        let b = bounds_thin(&p);
        let spec_log = SumSpec::new(1e-10);
        let spec_dig = SumSpec::new(1e-10).with_accel(Accel::DigammaFormula);
        let (w1, _, _) = f_w(&p, &b, 0.5, 1.0, &spec_log).unwrap();
        let (w2, _, _) = f_w(&p, &b, 0.5, 1.0, &spec_dig).unwrap();
        assert!((w1 - w2).norm() < 1e-8, "{w1} vs {w2}");
    }

    #[test]
    fn f_w_tail_bound_certifies() {
        for &(beta, gamma) in &[(0.0, 2.0), (0.5, 5.1), (0.9, 12.3)] {
            let p = sp(beta, gamma);
            let b = bounds_thin(&p);
            for &phi in &[0.2f64, 0.7, 2.8] {
                let spec = SumSpec::new(1e-6);
                let tight = SumSpec::new(1e-7);
                let (w1, _, bound) = f_w(&p, &b, phi, 1.0, &spec).unwrap();
                let (w2, _, _) = f_w(&p, &b, phi, 1.0, &tight).unwrap();
                assert!(
                    (w1 - w2).norm() <= bound + 1e-12,
                    "({beta}, {gamma}, {phi}): |Δ| = {} > bound = {bound}",
                    (w1 - w2).norm()
                );
            }
        }
    }

    #[test]
    fn f_total_composition_at_modulation_node() {
        let p = sp(0.5, 5.1);
        let b = bounds_thin(&p);
        let spec = SumSpec::default();
        let out = f_total(&p, &b, &WireModel::ThinAbsorbing, 0.5 * PI, 1.0, &spec).unwrap();
        assert!((out.f_total - out.f_w).norm() < 1e-10);
        assert!((out.f_total - (out.f_ab_mod + out.f_w)).norm() == 0.0);
    }

    #[test]
    fn f_total_invariant_under_beta_phi_flip() {
        let spec = SumSpec::new(1e-10);
        let p1 = sp(0.5, 5.1);
        let p2 = p1.beta_flipped();
        let b1 = bounds_thin(&p1);
        let b2 = bounds_thin(&p2);
        for &phi in &[0.4f64, 1.5] {
            let a = f_total(&p1, &b1, &WireModel::ThinAbsorbing, phi, 1.0, &spec).unwrap();
            let b = f_total(&p2, &b2, &WireModel::ThinAbsorbing, -phi, 1.0, &spec).unwrap();
            assert!((a.f_total - b.f_total).norm() < 1e-9, "phi = {phi}");
        }
    }

    #[test]
    fn f_total_scales_as_inverse_sqrt_p() {
        let p = sp(0.5, 5.1);
        let b = bounds_thin(&p);
        let spec = SumSpec::new(1e-11);
        let phi = 0.9;
        let f1 = f_total(&p, &b, &WireModel::ThinAbsorbing, phi, 1.0, &spec)
            .unwrap()
            .f_total;
        for &pw in &[0.5f64, 2.0] {
            let fp = f_total(&p, &b, &WireModel::ThinAbsorbing, phi, pw, &spec)
                .unwrap()
                .f_total;
            assert!(((fp * pw.sqrt()) - f1).norm() < 1e-10);
        }
    }

    #[test]
    fn f_total_rejects_reflecting() {
        let p = sp(0.5, 5.1);
        let b = bounds_thin(&p);
        let r = f_total(
            &p,
            &b,
            &WireModel::Reflecting { a: 1.0 },
            0.5,
            1.0,
            &SumSpec::default(),
        );
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn abel_no_scattering_gives_zero() {
        let (v, _) = abel_partial_wave(|_| Ok(Complex::new(1.0, 0.0)), 0.7, 1.0, None).unwrap();
        assert!(v.norm() < 1e-9);
    }

    #[test]
    fn abel_single_absorbed_channel_is_flat() {
        let s = |m: i64| {
            Ok(if m == 0 {
                Complex::new(0.0, 0.0)
            } else {
                Complex::new(1.0, 0.0)
            })
        };
        for &phi in &[0.5f64, 1.9] {
            let (v, _) = abel_partial_wave(s, phi, 1.0, None).unwrap();
            assert!((v + prefactor(1.0)).norm() < 1e-8, "phi = {phi}");
        }
    }

    #[test]
    fn abel_reproduces_ab_closed_form() {
        let beta = 0.3;
        let (v, _) = abel_partial_wave(|m| Ok(ab_phase(beta, m)), 1.0, 1.0, None).unwrap();
        let exact = f_ab_exact(beta, 1.0, 1.0).unwrap();
        assert!((v - exact).norm() < 1e-6, "{v} vs {exact}");
    }

    #[test]
    fn splitting_identity_smoke() {
        // Abel sum over the thin-absorbing S equals f_ab_mod + f_w.
        for &(beta, gamma) in &[(0.0, 2.0), (0.5, 5.1)] {
            let p = sp(beta, gamma);
            let b = bounds_thin(&p);
            let wire = WireModel::ThinAbsorbing;
            let phi = 0.7;
            let spec = SumSpec::new(1e-9);
            let direct = abel_partial_wave(
                |m| Ok(s_matrix(m, &p, &wire)?.s),
                phi,
                1.0,
                None,
            )
            .unwrap()
            .0;
            let split = f_total(&p, &b, &wire, phi, 1.0, &spec).unwrap().f_total;
            assert!(
                (direct - split).norm() < 1e-5,
                "({beta}, {gamma}): {direct} vs {split}"
            );
        }
    }

    #[test]
    fn gauge_periodicity_in_decoupled_mode() {
        let spec = SumSpec::new(1e-10);
        let p1 = ScatterParams::decoupled(0.2, 5.3).unwrap();
        let p2 = ScatterParams::decoupled(1.2, 5.3).unwrap();
        assert!(matches!(p1.coupling, Coupling::Decoupled { .. }));
        let b1 = bounds_thin(&p1);
        let b2 = bounds_thin(&p2);
        assert_eq!(b2.m_plus, b1.m_plus + 1);
        assert_eq!(b2.m_minus, b1.m_minus - 1);
        for &phi in &[0.5f64, 1.5] {
            let f1 = f_total(&p1, &b1, &WireModel::ThinAbsorbing, phi, 1.0, &spec)
                .unwrap()
                .f_total;
            let f2 = f_total(&p2, &b2, &WireModel::ThinAbsorbing, phi, 1.0, &spec)
                .unwrap()
                .f_total;
            assert!(
                (f1.norm() - f2.norm()).abs() < 1e-8,
                "phi = {phi}: {} vs {}",
                f1.norm(),
                f2.norm()
            );
        }
    }

    #[test]
    fn f_w_small_angle_log_slope_carries_cos_pi_beta() {
        // β = 0: Im(e^{iπ/4}√(2πp)·f_w) grows like −π c² ln φ;
        // β = 1/2: the log coefficient vanishes.
        let spec = SumSpec::new(1e-9);
        let strip = |beta: f64, phi: f64| -> f64 {
            let p = sp(beta, 2.0);
            let b = bounds_thin(&p);
            let (w, _, _) = f_w(&p, &b, phi, 1.0, &spec).unwrap();
            (Complex::from_polar(TAU.sqrt(), FRAC_PI_4) * w).im
        };
        let (phi1, phi2) = (1e-4, 1e-3);
        let slope0 = (strip(0.0, phi2) - strip(0.0, phi1)) / (phi2.ln() - phi1.ln());
        let slope_half = (strip(0.5, phi2) - strip(0.5, phi1)) / (phi2.ln() - phi1.ln());
        let c_sq = 4.0;
        assert!(
            (slope0 + PI * c_sq).abs() < 0.05 * PI * c_sq,
            "slope0 = {slope0}, expect ≈ {}",
            -PI * c_sq
        );
        assert!(slope_half.abs() < 0.05 * slope0.abs());
    }
}
