//! Per-channel phase functions S_m and phase shifts δ_m for the absorbing
//! and reflecting wire models.

use crate::error::{Error, Result};
use crate::params::{channel_bounds, ChannelKind, OrderNu, ScatterParams, WireModel};
use crate::specfun::{bessel_jy, hankel1, imag_order_integral, Complex};
use std::f64::consts::PI;

/// One channel's phase function.
#[derive(Debug, Clone, Copy)]
pub struct PhaseEntry {
    pub m: i64,
    /// S_m = e^{2iδ_m} for elastic channels, 0 for absorbed ones.
    pub s: Complex,
    /// δ_m (defined mod π); `None` for absorbed channels.
    pub delta: Option<f64>,
    pub channel_kind: ChannelKind,
}

fn unit_phase(theta: f64) -> Complex {
    Complex::new(0.0, theta).exp()
}

/// S_m for the elastic channels of an absorbing wire:
/// S = e^{iπ(m−ν)}, δ = π(m−ν)/2 (unimodular by construction).
fn absorbing_elastic(m: i64, nu: &OrderNu) -> PhaseEntry {
    let delta = 0.5 * PI * (m as f64 - nu.magnitude);
    PhaseEntry {
        m,
        s: unit_phase(2.0 * delta),
        delta: Some(delta),
        channel_kind: nu.kind,
    }
}

/// The phase function of channel m.
///
/// Absorbing wires: S = 0 on the absorbed set, e^{iπ(m−ν)} elsewhere.
/// Reflecting wire of scaled radius a: for ν² ≥ 0,
/// S = −e^{iπ(m−ν)}·H⁽²⁾_ν(a)/H⁽¹⁾_ν(a), with H⁽²⁾ computed as the complex
/// conjugate of H⁽¹⁾ (real order, real argument); for ν² < 0,
/// S = e^{iπm}·conj(I_ν(a))/I_ν(a) through the imaginary-order integral,
/// with the branch ν = +i|ν| (the value is independent of that sign).
pub fn s_matrix(m: i64, params: &ScatterParams, wire: &WireModel) -> Result<PhaseEntry> {
    wire.validate()?;
    let nu = OrderNu::new(m, params);
    match *wire {
        WireModel::ThinAbsorbing => {
            let bounds = channel_bounds(params, wire)?;
            if bounds.contains(m) {
                Ok(PhaseEntry {
                    m,
                    s: Complex::new(0.0, 0.0),
                    delta: None,
                    channel_kind: nu.kind,
                })
            } else {
                Ok(absorbing_elastic(m, &nu))
            }
        }
        WireModel::FiniteAbsorbing { a } => {
            let fa = a.floor() as i64;
            if -fa <= m && m <= fa {
                Ok(PhaseEntry {
                    m,
                    s: Complex::new(0.0, 0.0),
                    delta: None,
                    channel_kind: nu.kind,
                })
            } else if nu.is_absorbed() {
                Err(Error::Unsupported(format!(
                    "finite absorbing wire with a = {a} does not cover the \
                     fall-to-center channel m = {m}; the large-radius rule \
                     requires p·rho0 to exceed the absorbed interval"
                )))
            } else {
                Ok(absorbing_elastic(m, &nu))
            }
        }
        WireModel::Reflecting { a } => match nu.kind {
            ChannelKind::Elastic | ChannelKind::Threshold => {
                let h1 = hankel1(nu.magnitude, a)?;
                let s = -unit_phase(PI * (m as f64 - nu.magnitude)) * h1.conj() / h1;
                let delta = 0.5 * s.arg();
                Ok(PhaseEntry {
                    m,
                    s,
                    delta: Some(delta),
                    channel_kind: nu.kind,
                })
            }
            ChannelKind::Absorbed => {
                let i = imag_order_integral(nu.magnitude, a)?;
                let s = unit_phase(PI * m as f64) * i.conj() / i;
                let delta = 0.5 * s.arg();
                Ok(PhaseEntry {
                    m,
                    s,
                    delta: Some(delta),
                    channel_kind: nu.kind,
                })
            }
        },
    }
}

/// Hard-core parameter μ_m(a) = J_ν(a)/H⁽¹⁾_ν(a) of the reflecting wire
/// (only defined for ν² ≥ 0). Satisfies μ_m = (1 − e^{−iπ(m−ν)} S_m)/2.
pub fn hardcore_mu(m: i64, params: &ScatterParams, a: f64) -> Result<Complex> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("require a > 0, got {a}")));
    }
    let nu = OrderNu::new(m, params);
    if nu.is_absorbed() {
        return Err(Error::Domain(format!(
            "hardcore_mu is not defined on the fall-to-center interval (m = {m}, nu^2 = {})",
            nu.nu_sq
        )));
    }
    let b = bessel_jy(nu.magnitude, a)?;
    let h1 = Complex::new(b.j, b.y);
    Ok(Complex::new(b.j, 0.0) / h1)
}

/// Low-energy (a ≪ 1) limit of the reflecting-wire phase shift.
///
/// ν² ≥ 0 channels: δ = π(m−ν)/2, independent of a. Fall-to-center
/// channels: δ = πm/2 + arctan[tan(|ν| ln(a/2))·tan(π|ν|/2)] on the
/// principal branch; only differences mod π are physical.
pub fn low_energy_delta(m: i64, params: &ScatterParams, a: f64) -> f64 {
    let nu = OrderNu::new(m, params);
    match nu.kind {
        ChannelKind::Elastic | ChannelKind::Threshold => 0.5 * PI * (m as f64 - nu.magnitude),
        ChannelKind::Absorbed => {
            let mu = nu.magnitude;
            0.5 * PI * m as f64 + ((mu * (0.5 * a).ln()).tan() * (0.5 * PI * mu).tan()).atan()
        }
    }
}
