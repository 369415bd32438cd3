//! Physical inputs, dimensionless field parameters, the channel spectrum
//! ν²(m) and the absorbed-channel interval.

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (CODATA 2018).
pub const HBAR: f64 = 1.054_571_817e-34;

/// SI inputs describing an experimental configuration: a neutral atom of
/// polarizability `alpha` scattering off a charged wire (line charge
/// parameter `kappa`, radial field E = κ/2πρ) in a uniform axial magnetic
/// field `b_field`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalInputs {
    /// Electric polarizability, C·m²/V.
    pub alpha: f64,
    /// Wire voltage parameter κ, V. Mutually exclusive with
    /// `e_field_at_surface`.
    pub kappa: Option<f64>,
    /// Field strength at the wire surface ρ₀, V/m. Requires `rho0`;
    /// translates to κ = 2π·ρ₀·E.
    pub e_field_at_surface: Option<f64>,
    /// Magnetic flux density, T.
    pub b_field: f64,
    /// Atom rest mass, kg.
    pub m0: f64,
    /// Wire radius, m.
    pub rho0: Option<f64>,
}

impl PhysicalInputs {
    /// The effective κ in volts, resolving the E-field alternative.
    pub fn kappa_volts(&self) -> Result<f64> {
        match (self.kappa, self.e_field_at_surface) {
            (Some(k), None) => Ok(k),
            (None, Some(e)) => {
                let rho0 = self.rho0.ok_or_else(|| {
                    Error::InvalidParameter(
                        "e_field_at_surface requires rho0 to derive kappa".into(),
                    )
                })?;
                Ok(2.0 * std::f64::consts::PI * rho0 * e)
            }
            (Some(_), Some(_)) => Err(Error::InvalidParameter(
                "provide exactly one of kappa / e_field_at_surface, got both".into(),
            )),
            (None, None) => Err(Error::InvalidParameter(
                "provide exactly one of kappa / e_field_at_surface, got neither".into(),
            )),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::InvalidParameter("alpha must be > 0".into()));
        }
        if !(self.m0 > 0.0) {
            return Err(Error::InvalidParameter("m0 must be > 0".into()));
        }
        if !(self.b_field >= 0.0) {
            return Err(Error::InvalidParameter("b_field must be >= 0".into()));
        }
        if let Some(r) = self.rho0 {
            if !(r > 0.0) {
                return Err(Error::InvalidParameter("rho0 must be > 0".into()));
            }
        }
        let kappa = self.kappa_volts()?;
        if !(kappa >= 0.0) {
            return Err(Error::InvalidParameter("kappa must be >= 0".into()));
        }
        Ok(())
    }
}

/// Coupling between the magnetic parameter β and the channel spectrum.
///
/// `Exact` keeps the magnetic-mass contribution, ν² = m² − 2mβ − γ².
/// `Decoupled` drops it and uses an independent wire strength γ̃,
/// ν² = (m−β)² − γ̃²; in this mode observables are periodic in β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Exact,
    Decoupled { gamma_tilde: f64 },
}

/// Dimensionless scattering parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterParams {
    /// Magnetic field parameter β = ακB/(2πℏ); any real.
    pub beta: f64,
    /// Wire parameter γ = κ√(αM₀)/(2πℏ) ≥ 0.
    pub gamma: f64,
    /// Magnetic-mass ratio ε = β²/γ² = αB²/M₀ with SI polarizability
    /// (the Gaussian form carries an extra 1/c², absorbed here the same
    /// way as in β). Bookkeeping only: the exact ν² already absorbs it.
    pub epsilon: f64,
    pub coupling: Coupling,
}

impl ScatterParams {
    /// Exact-mode parameters from raw dimensionless values.
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "require finite beta and gamma >= 0, got beta={beta}, gamma={gamma}"
            )));
        }
        Ok(ScatterParams {
            beta,
            gamma,
            epsilon: 0.0,
            coupling: Coupling::Exact,
        })
    }

    /// Decoupled-mode parameters with an independent γ̃.
    pub fn decoupled(beta: f64, gamma_tilde: f64) -> Result<Self> {
        if !(gamma_tilde >= 0.0) || !gamma_tilde.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "require finite beta and gamma_tilde >= 0, got beta={beta}, gamma_tilde={gamma_tilde}"
            )));
        }
        Ok(ScatterParams {
            beta,
            gamma: 0.0,
            epsilon: 0.0,
            coupling: Coupling::Decoupled { gamma_tilde },
        })
    }

    /// The squared coupling constant entering the correction series and the
    /// closed amplitude forms: β² + γ² in exact mode, γ̃² in decoupled mode.
    pub fn coupling_sq(&self) -> f64 {
        match self.coupling {
            Coupling::Exact => self.beta * self.beta + self.gamma * self.gamma,
            Coupling::Decoupled { gamma_tilde } => gamma_tilde * gamma_tilde,
        }
    }

    /// Parameters with the sign of β flipped (observables are invariant
    /// under (β, φ) → (−β, −φ)).
    pub fn beta_flipped(&self) -> Self {
        ScatterParams {
            beta: -self.beta,
            ..*self
        }
    }
}

/// Classification of a channel by the sign of ν².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// ν² > 0: ordinary elastic channel.
    Elastic,
    /// ν² = 0 within tolerance: threshold channel, treated as elastic with
    /// the ν → 0 limit of the phase.
    Threshold,
    /// ν² < 0: fall-to-center channel.
    Absorbed,
}

/// Effective partial-wave order for one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderNu {
    pub m: i64,
    pub nu_sq: f64,
    pub kind: ChannelKind,
    /// √|ν²| ≥ 0 (the order itself when elastic, |ν| when absorbed).
    pub magnitude: f64,
}

impl OrderNu {
    pub fn new(m: i64, params: &ScatterParams) -> Self {
        let nu_sq = nu_squared(m, params);
        let tol = nu_sq_zero_tolerance(m, params);
        let kind = if nu_sq.abs() < tol {
            ChannelKind::Threshold
        } else if nu_sq > 0.0 {
            ChannelKind::Elastic
        } else {
            ChannelKind::Absorbed
        };
        let magnitude = if kind == ChannelKind::Threshold {
            0.0
        } else {
            nu_sq.abs().sqrt()
        };
        OrderNu {
            m,
            nu_sq,
            kind,
            magnitude,
        }
    }

    pub fn is_absorbed(&self) -> bool {
        self.kind == ChannelKind::Absorbed
    }
}

/// Tolerance below which ν² counts as zero (threshold channel).
fn nu_sq_zero_tolerance(m: i64, params: &ScatterParams) -> f64 {
    let m2 = (m as f64) * (m as f64);
    let g2 = match params.coupling {
        Coupling::Exact => params.gamma * params.gamma,
        Coupling::Decoupled { gamma_tilde } => gamma_tilde * gamma_tilde,
    };
    1e-12 * m2.max(g2).max(1.0)
}

/// Wire model: how the fall-to-center channels are terminated at the wire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WireModel {
    /// Vanishingly thin, totally absorbing wire: S_m = 0 exactly on the
    /// fall-to-center interval.
    ThinAbsorbing,
    /// Totally absorbing wire of finite scaled radius a = pρ₀ ≫ 1: every
    /// channel with |m| ≤ ⌊a⌋ is absorbed.
    FiniteAbsorbing { a: f64 },
    /// Totally reflecting wire of scaled radius a = pρ₀ (hard core).
    Reflecting { a: f64 },
}

impl WireModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WireModel::ThinAbsorbing => Ok(()),
            WireModel::FiniteAbsorbing { a } | WireModel::Reflecting { a } => {
                if a > 0.0 && a.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "wire radius parameter a must be > 0, got {a}"
                    )))
                }
            }
        }
    }

    pub fn is_absorbing(&self) -> bool {
        matches!(
            self,
            WireModel::ThinAbsorbing | WireModel::FiniteAbsorbing { .. }
        )
    }
}

/// The absorbed-channel interval [−m_minus, m_plus].
///
/// `m_minus` can be negative in degenerate configurations (γ = 0 with large
/// β, or decoupled mode with γ̃ < |β|) where the interval does not reach
/// m = 0; `absorbed_count` = m_plus + m_minus + 1 still holds. An empty set
/// is represented by `absorbed_count` = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelBounds {
    pub m_minus: i64,
    pub m_plus: i64,
    pub absorbed_count: usize,
}

impl ChannelBounds {
    pub fn empty() -> Self {
        ChannelBounds {
            m_minus: 0,
            m_plus: 0,
            absorbed_count: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.absorbed_count == 0
    }

    /// True when channel m is in the absorbed set.
    pub fn contains(&self, m: i64) -> bool {
        !self.is_empty() && -self.m_minus <= m && m <= self.m_plus
    }

    /// Iterator over the absorbed channel indices.
    pub fn iter(&self) -> impl Iterator<Item = i64> {
        let range = if self.is_empty() {
            1..=0
        } else {
            -self.m_minus..=self.m_plus
        };
        range
    }
}

/// Derive the dimensionless parameters from SI inputs.
///
/// β = ακB/(2πℏ), γ = κ√(αM₀)/(2πℏ), ε = β²/γ² = αB²/M₀.
pub fn derive_params(phys: &PhysicalInputs) -> Result<ScatterParams> {
    phys.validate()?;
    let kappa = phys.kappa_volts()?;
    let two_pi_hbar = 2.0 * std::f64::consts::PI * HBAR;
    let beta = phys.alpha * kappa * phys.b_field / two_pi_hbar;
    let gamma = kappa * (phys.alpha * phys.m0).sqrt() / two_pi_hbar;
    let epsilon = phys.alpha * phys.b_field * phys.b_field / phys.m0;
    Ok(ScatterParams {
        beta,
        gamma,
        epsilon,
        coupling: Coupling::Exact,
    })
}

/// The channel spectrum ν²(m).
///
/// Exact mode: m² − 2mβ − γ² (identical to (m−β)² − γ² − β²; the magnetic
/// mass cancels the β² term). Decoupled mode: (m−β)² − γ̃².
pub fn nu_squared(m: i64, params: &ScatterParams) -> f64 {
    let mf = m as f64;
    match params.coupling {
        Coupling::Exact => mf * mf - 2.0 * mf * params.beta - params.gamma * params.gamma,
        Coupling::Decoupled { gamma_tilde } => {
            let d = mf - params.beta;
            d * d - gamma_tilde * gamma_tilde
        }
    }
}

/// The absorbed-channel interval for a given wire model.
///
/// Thin/reflecting wires: the maximal interval of m with ν²(m) < 0 (strict,
/// thresholds excluded), found by an integer sign scan outward from the
/// minimizer m ≈ β. Finite absorbing wires: m_plus = m_minus = ⌊a⌋.
pub fn channel_bounds(params: &ScatterParams, wire: &WireModel) -> Result<ChannelBounds> {
    wire.validate()?;
    if let WireModel::FiniteAbsorbing { a } = *wire {
        let fa = a.floor() as i64;
        return Ok(ChannelBounds {
            m_minus: fa,
            m_plus: fa,
            absorbed_count: (2 * fa + 1) as usize,
        });
    }

    let absorbed = |m: i64| OrderNu::new(m, params).is_absorbed();

    // ν²(m) is a parabola in m with minimizer at m = β; check its two
    // integer neighbors.
    let lo = params.beta.floor() as i64;
    let center = if absorbed(lo) {
        lo
    } else if absorbed(lo + 1) {
        lo + 1
    } else {
        return Ok(ChannelBounds::empty());
    };

    let mut m_hi = center;
    while absorbed(m_hi + 1) {
        m_hi += 1;
    }
    let mut m_lo = center;
    while absorbed(m_lo - 1) {
        m_lo -= 1;
    }

    Ok(ChannelBounds {
        m_minus: -m_lo,
        m_plus: m_hi,
        absorbed_count: (m_hi - m_lo + 1) as usize,
    })
}

/// Floor-formula values m_± = ⌊√(β²+γ²) ± β⌋ (exact mode), kept as a
/// cross-check away from integer boundaries.
pub fn channel_bounds_floor_formula(params: &ScatterParams) -> (i64, i64) {
    let (b, root) = match params.coupling {
        Coupling::Exact => (
            params.beta,
            (params.beta * params.beta + params.gamma * params.gamma).sqrt(),
        ),
        Coupling::Decoupled { gamma_tilde } => (params.beta, gamma_tilde),
    };
    ((root - b).floor() as i64, (root + b).floor() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(beta: f64, gamma: f64) -> ScatterParams {
        ScatterParams::new(beta, gamma).unwrap()
    }

    #[test]
    fn nu_squared_m0_is_minus_gamma_sq() {
        for &(b, g) in &[(0.0, 1.0), (0.5, 5.1), (-2.0, 0.3)] {
            assert_eq!(nu_squared(0, &sp(b, g)), -g * g);
        }
    }

    #[test]
    fn nu_squared_direct_arithmetic() {
        assert_eq!(nu_squared(3, &sp(0.5, 2.0)), 9.0 - 3.0 - 4.0);
        let p = sp(0.5, 5.1);
        assert!((nu_squared(5, &p) - (-6.01)).abs() < 1e-12);
        assert!((nu_squared(6, &p) - 3.99).abs() < 1e-12);
    }

    #[test]
    fn channel_bounds_examples() {
        let b = channel_bounds(&sp(0.5, 5.1), &WireModel::ThinAbsorbing).unwrap();
        assert_eq!((b.m_minus, b.m_plus, b.absorbed_count), (4, 5, 10));

        let b = channel_bounds(&sp(0.0, 0.0), &WireModel::ThinAbsorbing).unwrap();
        assert!(b.is_empty());

        let b = channel_bounds(&sp(0.3, 1.0), &WireModel::FiniteAbsorbing { a: 7.9 }).unwrap();
        assert_eq!((b.m_minus, b.m_plus, b.absorbed_count), (7, 7, 15));
    }

    #[test]
    fn threshold_channel_is_not_absorbed() {
        // beta = 0.8, gamma = 0: nu^2(0) = 0 exactly, nu^2(1) = -0.6.
        let b = channel_bounds(&sp(0.8, 0.0), &WireModel::ThinAbsorbing).unwrap();
        assert_eq!(b.absorbed_count, 1);
        assert_eq!(b.m_plus, 1);
        assert_eq!(b.m_minus, -1);
        assert!(b.contains(1));
        assert!(!b.contains(0));
    }

    #[test]
    fn derive_params_zero_field() {
        let phys = PhysicalInputs {
            alpha: 1e-39,
            kappa: Some(6.28e4),
            e_field_at_surface: None,
            b_field: 0.0,
            m0: 1.44e-25,
            rho0: None,
        };
        let p = derive_params(&phys).unwrap();
        assert_eq!(p.beta, 0.0);
        assert_eq!(p.epsilon, 0.0);
        assert!(p.gamma > 0.0);
    }

    #[test]
    fn derive_params_realization() {
        // alpha = 1e-39 C·m²/V, rho0 = 1 mm, E = 1e7 V/m, B = 5 T.
        let phys = PhysicalInputs {
            alpha: 1e-39,
            kappa: None,
            e_field_at_surface: Some(1e7),
            b_field: 5.0,
            m0: 1.44e-25,
            rho0: Some(1e-3),
        };
        let p = derive_params(&phys).unwrap();
        let kappa = 2.0 * std::f64::consts::PI * 1e-3 * 1e7;
        assert!((kappa - 6.283185307179586e4).abs() < 1e-6);
        let expected_beta = 1e-39 * kappa * 5.0 / (2.0 * std::f64::consts::PI * HBAR);
        assert!((p.beta - expected_beta).abs() < 1e-15);
        // Order 0.5, close to the quoted 0.48.
        assert!((p.beta - 0.48).abs() < 0.015, "beta = {}", p.beta);
        // epsilon * gamma^2 == beta^2.
        let rel = (p.epsilon * p.gamma * p.gamma - p.beta * p.beta).abs() / (p.beta * p.beta);
        assert!(rel < 1e-12, "rel = {rel}");
    }

    #[test]
    fn derive_params_rejects_bad_inputs() {
        let base = PhysicalInputs {
            alpha: 1e-39,
            kappa: Some(1e4),
            e_field_at_surface: None,
            b_field: 1.0,
            m0: 1e-25,
            rho0: None,
        };
        assert!(derive_params(&PhysicalInputs { alpha: 0.0, ..base }).is_err());
        assert!(derive_params(&PhysicalInputs { m0: -1.0, ..base }).is_err());
        assert!(derive_params(&PhysicalInputs {
            kappa: None,
            ..base
        })
        .is_err());
        assert!(derive_params(&PhysicalInputs {
            e_field_at_surface: Some(1e7),
            ..base
        })
        .is_err());
    }

    #[test]
    fn wire_model_validation() {
        assert!(WireModel::Reflecting { a: 0.0 }.validate().is_err());
        assert!(WireModel::FiniteAbsorbing { a: -1.0 }.validate().is_err());
        assert!(WireModel::Reflecting { a: 2.0 }.validate().is_ok());
    }

    proptest! {
        #[test]
        fn nu_sq_matches_algebraic_identity(beta in -3.0f64..3.0, gamma in 0.0f64..60.0, m in -200i64..200) {
            let p = sp(beta, gamma);
            let direct = nu_squared(m, &p);
            let d = m as f64 - beta;
            let alt = d * d - gamma * gamma - beta * beta;
            let scale = direct.abs().max(alt.abs()).max(1.0);
            prop_assert!((direct - alt).abs() <= 1e-12 * scale);
        }

        #[test]
        fn bounds_strictly_negative_inside_nonnegative_outside(
            beta in -3.0f64..3.0, gamma in 0.0f64..60.0
        ) {
            let p = sp(beta, gamma);
            let b = channel_bounds(&p, &WireModel::ThinAbsorbing).unwrap();
            if b.is_empty() {
                let lo = beta.floor() as i64;
                prop_assert!(nu_squared(lo, &p) >= -nu_sq_zero_tolerance(lo, &p));
                prop_assert!(nu_squared(lo + 1, &p) >= -nu_sq_zero_tolerance(lo + 1, &p));
            } else {
                for m in b.iter() {
                    prop_assert!(OrderNu::new(m, &p).is_absorbed());
                }
                prop_assert!(!OrderNu::new(b.m_plus + 1, &p).is_absorbed());
                prop_assert!(!OrderNu::new(-b.m_minus - 1, &p).is_absorbed());
            }
        }

        #[test]
        fn bounds_swap_under_beta_flip(beta in -3.0f64..3.0, gamma in 0.0f64..60.0) {
            let p = sp(beta, gamma);
            let q = sp(-beta, gamma);
            let bp = channel_bounds(&p, &WireModel::ThinAbsorbing).unwrap();
            let bq = channel_bounds(&q, &WireModel::ThinAbsorbing).unwrap();
            prop_assert_eq!(bp.m_plus, bq.m_minus);
            prop_assert_eq!(bp.m_minus, bq.m_plus);
            prop_assert_eq!(bp.absorbed_count, bq.absorbed_count);
        }

        #[test]
        fn bounds_match_floor_formula_away_from_integers(
            beta in -3.0f64..3.0, gamma in 0.01f64..60.0
        ) {
            let p = sp(beta, gamma);
            let root = (beta * beta + gamma * gamma).sqrt();
            let dist_plus = ((root + beta) - (root + beta).round()).abs();
            let dist_minus = ((root - beta) - (root - beta).round()).abs();
            prop_assume!(dist_plus > 1e-6 && dist_minus > 1e-6);
            let b = channel_bounds(&p, &WireModel::ThinAbsorbing).unwrap();
            let (fm, fp) = channel_bounds_floor_formula(&p);
            prop_assert_eq!(b.m_plus, fp);
            prop_assert_eq!(b.m_minus, fm);
        }
    }
}
