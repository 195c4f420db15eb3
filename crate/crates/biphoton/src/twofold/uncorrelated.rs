//! Closed-form interference models for spectrally uncorrelated photon
//! pairs, driven by the temporal-mode indistinguishability I(tau).

use super::{InterferencePattern, PatternKind};
use crate::numerics::Axis;
use crate::{Error, Result};

/// The indistinguishability `I(tau) = exp[-(dw tau)^2 / 2]` of two photons
/// delayed by `tau`, for a source of spectral width `delta_omega`.
///
/// Normalized so that I(0) = 1, which the Schmidt-pair split
/// sqrt(I) b1 + sqrt(1-I) b2 requires.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndistinguishabilityCurve {
    delta_omega: f64,
}

impl IndistinguishabilityCurve {
    pub fn new(delta_omega: f64) -> Result<Self> {
        if !(delta_omega > 0.0) || !delta_omega.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "spectral width must be positive (got {delta_omega})"
            )));
        }
        Ok(Self { delta_omega })
    }

    pub fn delta_omega(&self) -> f64 {
        self.delta_omega
    }

    pub fn evaluate(&self, tau: f64) -> f64 {
        let x = self.delta_omega * tau;
        (-0.5 * x * x).exp()
    }
}

/// Uncorrelated-model HOM dip, `P(tau) = (1 - I(tau)) / 2`.
pub fn hom_uncorrelated(
    curve: &IndistinguishabilityCurve,
    tau_axis: &Axis,
) -> Result<InterferencePattern> {
    let values = tau_axis
        .values()
        .map(|t| 0.5 * (1.0 - curve.evaluate(t)))
        .collect();
    InterferencePattern::from_values(*tau_axis, values, PatternKind::Hom)
}

/// Uncorrelated-model N00N fringe, `P11(tau) = [1 + I(tau) cos(2 w tau)] / 2`,
/// oscillating at twice the carrier frequency `center`.
pub fn noon_uncorrelated(
    curve: &IndistinguishabilityCurve,
    center: f64,
    tau_axis: &Axis,
) -> Result<InterferencePattern> {
    if !(center > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "carrier frequency must be positive (got {center})"
        )));
    }
    let values = tau_axis
        .values()
        .map(|t| 0.5 * (1.0 + curve.evaluate(t) * (2.0 * center * t).cos()))
        .collect();
    InterferencePattern::from_values(*tau_axis, values, PatternKind::Noon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{gaussian_jsa, GridSpec};
    use crate::twofold::{hom_pattern, noon_pattern};
    use approx::assert_abs_diff_eq;

    #[test]
    fn indistinguishability_is_even_bounded_and_unity_at_zero() {
        let c = IndistinguishabilityCurve::new(2.0).unwrap();
        assert_eq!(c.evaluate(0.0), 1.0);
        for t in [0.1, 0.7, 3.0, 25.0] {
            let v = c.evaluate(t);
            assert!((0.0..=1.0).contains(&v));
            assert_abs_diff_eq!(v, c.evaluate(-t), epsilon = 0.0);
        }
    }

    #[test]
    fn hom_endpoints() {
        let c = IndistinguishabilityCurve::new(1.0).unwrap();
        let tau = Axis::linspace(-30.0, 30.0, 61).unwrap();
        let p = hom_uncorrelated(&c, &tau).unwrap();
        assert_eq!(p.value_at(0.0), 0.0);
        assert_abs_diff_eq!(p.values()[0], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn noon_starts_at_one_and_decays_to_half() {
        let c = IndistinguishabilityCurve::new(1.0).unwrap();
        let tau = Axis::linspace(0.0, 40.0, 4001).unwrap();
        let p = noon_uncorrelated(&c, 5.0, &tau).unwrap();
        assert_eq!(p.values()[0], 1.0);
        let tail = &p.values()[3800..];
        for v in tail {
            assert_abs_diff_eq!(*v, 0.5, epsilon = 1e-3);
        }
    }

    #[test]
    fn matches_the_jsa_engine_on_the_matching_separable_gaussian() {
        // gaussian_jsa(s, s) corresponds to delta_omega = s.
        let s = 1.1;
        let jsa = gaussian_jsa(s, s, (30.0, 30.0), &GridSpec::new(256, 12.0 * s)).unwrap();
        let curve = IndistinguishabilityCurve::new(s).unwrap();

        let tau = Axis::linspace(-4.0 / s, 4.0 / s, 41).unwrap();
        let exact = hom_uncorrelated(&curve, &tau).unwrap();
        let engine = hom_pattern(&jsa, &tau).unwrap();
        for (a, b) in exact.values().iter().zip(engine.values().iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-4);
        }

        let fringe_axis = Axis::linspace(0.0, 1.5 / s, 301).unwrap();
        let exact = noon_uncorrelated(&curve, 30.0, &fringe_axis).unwrap();
        let engine = noon_pattern(&jsa, &fringe_axis).unwrap();
        for (a, b) in exact.values().iter().zip(engine.values().iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-3);
        }
    }
}
