//! Built-in coordinate models.
//!
//! * `paper-page`: the paper region of the Bourgeois spinal open book,
//!   `s dx + cos θ dq1 + sin θ dq2` on `(s, x, θ, q1, q2)` with `s ∈ [1, 2]`.
//! * `paper-spine`: the spine region, `dz + p1 dq1 + p2 dq2` on
//!   `(z, p1, q1, p2, q2)`, sampled on the box `|p_i| ≤ 0.7` inside the unit disc.
//! * [`CobordismParams`]: the collar `[0,1] × ∂X × S²` over an annulus page with
//!   `d[e^t (λ + dx + χ(t) ρ dH)] + ω_S`.
//! * [`LargeKModel`]: `K dφ + λ_ψ` on an annulus mapping-torus chart, where
//!   `λ_ψ = s dθ − A χ(φ) dH` interpolates between `λ` and `λ − A dH`.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, FormError};
use crate::expr::Expr;
use crate::form::{Axis, Chart, FormField};

/// A 1-form on an odd-dimensional chart, to be checked for the contact condition.
#[derive(Clone, Debug)]
pub struct ContactModel {
    pub name: String,
    pub form: FormField<Expr>,
    pub resolution: Vec<usize>,
}

impl ContactModel {
    pub fn new(name: &str, form: FormField<Expr>) -> ContactModel {
        let resolution = form.chart().default_resolution();
        ContactModel {
            name: name.to_string(),
            form,
            resolution,
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.form.chart()
    }

    pub fn paper_page() -> ContactModel {
        let chart = Chart::new(vec![
            Axis::interval("s", 1.0, 2.0),
            Axis::periodic("x", TAU),
            Axis::periodic("theta", TAU),
            Axis::periodic("q1", TAU),
            Axis::periodic("q2", TAU),
        ])
        .expect("static chart");
        let form = FormField::parse_terms(
            &chart,
            1,
            &[
                (vec!["x"], "s"),
                (vec!["q1"], "cos(theta)"),
                (vec!["q2"], "sin(theta)"),
            ],
        )
        .expect("static form");
        ContactModel::new("paper-page", form)
    }

    pub fn paper_spine() -> ContactModel {
        let chart = Chart::new(vec![
            Axis::periodic("z", TAU),
            Axis::interval("p1", -0.7, 0.7),
            Axis::periodic("q1", TAU),
            Axis::interval("p2", -0.7, 0.7),
            Axis::periodic("q2", TAU),
        ])
        .expect("static chart");
        let form = FormField::parse_terms(
            &chart,
            1,
            &[(vec!["z"], "1"), (vec!["q1"], "p1"), (vec!["q2"], "p2")],
        )
        .expect("static form");
        ContactModel::new("paper-spine", form)
    }

    /// `paper-page` or `paper-spine`.
    pub fn builtin(name: &str) -> Option<ContactModel> {
        match name.to_ascii_lowercase().as_str() {
            "paper-page" | "page" => Some(ContactModel::paper_page()),
            "paper-spine" | "spine" => Some(ContactModel::paper_spine()),
            _ => None,
        }
    }
}

/// Compactly supported bump on the annulus `s ∈ [s_lo, s_hi]`, modulated in θ.
fn annulus_bump(s: &Expr, theta: &Expr, amplitude: f64, support: (f64, f64), ramp: f64) -> Expr {
    let (lo, hi) = support;
    let rise = s.clone().cut(lo, lo + ramp);
    let fall = Expr::one() - s.clone().cut(hi - ramp, hi);
    let modulation = Expr::one() + theta.clone().cos().scale(0.5);
    Expr::product([Expr::Const(amplitude), rise, fall, modulation])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CobordismParams {
    /// Annulus page `s ∈ [page_inner, page_outer]`, with `λ = s dθ`.
    pub page_inner: f64,
    pub page_outer: f64,
    /// Amplitude of the interpolating function `H`.
    pub amplitude: f64,
    /// `H` is supported in `[h_support.0, h_support.1]`, ramping over `h_ramp`.
    pub h_support: (f64, f64),
    pub h_ramp: f64,
    /// `χ(t) = 1 − cut(t; chi_ramp.0, chi_ramp.1)`: 1 near 0, 0 near 1.
    pub chi_ramp: (f64, f64),
    /// `ρ = cut(z; −rho_width, 0)` in the height `z` normal to the equator.
    pub rho_width: f64,
    pub sphere_area: f64,
    /// Polar caps of this angular radius are left to the other sphere chart.
    pub cap_angle: f64,
    /// Per-axis samples on `(t, s, θ, x, u, v)`, used for each sphere chart.
    pub resolution: Vec<usize>,
}

impl Default for CobordismParams {
    fn default() -> Self {
        CobordismParams {
            page_inner: 1.0,
            page_outer: 2.0,
            amplitude: 0.1,
            h_support: (1.2, 1.8),
            h_ramp: 0.2,
            chi_ramp: (0.25, 0.75),
            rho_width: 0.3,
            sphere_area: 4.0 * PI,
            cap_angle: PI / 8.0,
            resolution: vec![8, 8, 8, 8, 8, 4],
        }
    }
}

impl CobordismParams {
    pub fn validate(&self) -> Result<(), FormError> {
        let finite = [
            self.page_inner,
            self.page_outer,
            self.amplitude,
            self.h_support.0,
            self.h_support.1,
            self.h_ramp,
            self.chi_ramp.0,
            self.chi_ramp.1,
            self.rho_width,
            self.sphere_area,
            self.cap_angle,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(invalid("cobordism", "parameters must be finite"));
        }
        if !(0.0 < self.page_inner && self.page_inner < self.page_outer) {
            return Err(invalid("page", "need 0 < page_inner < page_outer"));
        }
        let (lo, hi) = self.h_support;
        if !(self.h_ramp > 0.0
            && self.page_inner < lo
            && lo + self.h_ramp <= hi - self.h_ramp
            && hi < self.page_outer)
        {
            return Err(invalid(
                "h_support",
                "H must be supported in the open annulus with room for both ramps",
            ));
        }
        let (a, b) = self.chi_ramp;
        if !(0.0 < a && a < b && b < 1.0) {
            return Err(invalid(
                "chi_ramp",
                "chi must be 1 near t = 0 and 0 near t = 1 (need 0 < a < b < 1)",
            ));
        }
        if !(self.rho_width > 0.0 && self.rho_width < 1.0) {
            return Err(invalid("rho_width", "must lie in (0, 1)"));
        }
        if self.sphere_area <= 0.0 {
            return Err(invalid("sphere_area", "must be positive"));
        }
        if !(self.cap_angle > 0.0 && self.cap_angle < PI / 4.0) {
            return Err(invalid(
                "cap_angle",
                "must lie in (0, pi/4) so the two sphere charts cover S^2",
            ));
        }
        if self.resolution.len() != 6 || self.resolution.contains(&0) {
            return Err(invalid("resolution", "need six positive entries"));
        }
        Ok(())
    }

    /// Symplectic form on the two sphere charts: `"polar"` uses the height
    /// `z = cos u`, `"equatorial"` is rotated so that `z = sin u cos v`.
    pub fn forms(&self) -> Result<Vec<(String, FormField<Expr>)>, FormError> {
        self.validate()?;
        let chart = Chart::new(vec![
            Axis::interval("t", 0.0, 1.0),
            Axis::interval("s", self.page_inner, self.page_outer),
            Axis::periodic("theta", TAU),
            Axis::periodic("x", TAU),
            Axis::interval("u", self.cap_angle, PI - self.cap_angle),
            Axis::periodic("v", TAU),
        ])?;
        let [t, s, theta, _x, u, v] = [0, 1, 2, 3, 4, 5].map(Expr::var);
        let h = annulus_bump(&s, &theta, self.amplitude, self.h_support, self.h_ramp);
        let chi = Expr::one() - t.clone().cut(self.chi_ramp.0, self.chi_ramp.1);
        let heights = [
            ("polar", u.clone().cos()),
            ("equatorial", u.clone().sin() * v.clone().cos()),
        ];
        let area = self.sphere_area / (4.0 * PI);
        let omega_s =
            FormField::from_terms(&chart, 2, [(vec![4, 5], u.clone().sin().scale(area))])?;
        let et = t.clone().exp();
        let mut out = Vec::new();
        for (label, z) in heights {
            let rho = z.cut(-self.rho_width, 0.0);
            let weight = Expr::product([et.clone(), chi.clone(), rho]);
            // e^t (s dθ + dx + χ ρ (H_s ds + H_θ dθ))
            let beta = FormField::from_terms(
                &chart,
                1,
                [
                    (vec![1], weight.clone() * h.diff(1)),
                    (vec![2], et.clone() * s.clone() + weight.clone() * h.diff(2)),
                    (vec![3], et.clone()),
                ],
            )?;
            out.push((label.to_string(), beta.d()?.add(&omega_s)?));
        }
        Ok(out)
    }
}

/// `α_K = K dφ + s dθ − A χ(φ) dH` on `(s, θ, φ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LargeKModel {
    pub amplitude: f64,
    pub page_inner: f64,
    pub page_outer: f64,
    pub h_support: (f64, f64),
    pub h_ramp: f64,
    pub phi_ramp: (f64, f64),
}

impl Default for LargeKModel {
    fn default() -> Self {
        LargeKModel {
            amplitude: 1.0,
            page_inner: 1.0,
            page_outer: 2.0,
            h_support: (1.2, 1.8),
            h_ramp: 0.2,
            phi_ramp: (0.2, 0.8),
        }
    }
}

impl LargeKModel {
    pub fn with_amplitude(amplitude: f64) -> LargeKModel {
        LargeKModel {
            amplitude,
            ..LargeKModel::default()
        }
    }

    pub fn chart(&self) -> Result<Arc<Chart>, FormError> {
        Chart::new(vec![
            Axis::interval("s", self.page_inner, self.page_outer),
            Axis::periodic("theta", TAU),
            Axis::interval("phi", 0.0, 1.0),
        ])
    }

    pub fn form(&self, k: f64) -> Result<FormField<Expr>, FormError> {
        if !self.amplitude.is_finite() || !k.is_finite() {
            return Err(invalid("large_k", "amplitude and K must be finite"));
        }
        let (lo, hi) = self.h_support;
        if !(self.page_inner < lo && lo + self.h_ramp <= hi - self.h_ramp && hi < self.page_outer) {
            return Err(invalid(
                "h_support",
                "H must be supported in the open annulus",
            ));
        }
        let chart = self.chart()?;
        let [s, theta, phi] = [0, 1, 2].map(Expr::var);
        let h = annulus_bump(&s, &theta, self.amplitude, self.h_support, self.h_ramp);
        let chi = phi.cut(self.phi_ramp.0, self.phi_ramp.1);
        FormField::from_terms(
            &chart,
            1,
            [
                (vec![0], -(chi.clone() * h.diff(0))),
                (vec![1], s - chi * h.diff(1)),
                (vec![2], Expr::Const(k)),
            ],
        )
    }
}
