//! Radial Schrödinger operator with an Aharonov-Bohm flux (inverse-square
//! potential): special solutions, boundary constants, the theta-family
//! resolvent for k = 0, and k = -1 boundary algebra.

use crate::dirac::{bisect, scaled};
use crate::error::{Error, Result};
use crate::params::{check_alpha, check_positive, ExtParam, KernelEval};
use crate::radial::{fit_powers, quad_from_origin, RadialFn, RadialGrid};
use crate::specfun::{bessel_i, bessel_k, cos_pi, gamma, Order};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

pub use crate::dirac::FIT_WINDOW;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodParams {
    alpha: f64,
    m: f64,
    k: i32,
}

impl SchrodParams {
    pub fn new(alpha: f64, m: f64, k: i32) -> Result<Self> {
        check_alpha(alpha)?;
        check_positive("m", m)?;
        Ok(SchrodParams { alpha, m, k })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    /// Bessel order alpha + k + 1/2 of the special solutions.
    pub fn order(&self) -> f64 {
        self.alpha + self.k as f64 + 0.5
    }

    /// Coefficient (alpha+k)(alpha+k+1) of 1/r^2.
    pub fn coupling(&self) -> f64 {
        let s = self.alpha + self.k as f64;
        s * (s + 1.0)
    }

    fn require_k0(&self) -> Result<()> {
        if self.k != 0 {
            return Err(Error::Domain(format!(
                "operation defined for the k = 0 block only, got k = {}",
                self.k
            )));
        }
        Ok(())
    }

    // k = -1 has the same radial operator as (-alpha, 0)
    fn boundary_equivalent(&self) -> Result<SchrodParams> {
        match self.k {
            0 => Ok(*self),
            -1 => Ok(SchrodParams { alpha: -self.alpha, m: self.m, k: 0 }),
            k => Err(Error::Domain(format!(
                "boundary data exist for k in {{-1, 0}} only, got k = {k}"
            ))),
        }
    }
}

fn check_lambda(lam: f64) -> Result<()> {
    if !(lam > 0.0 && lam.is_finite()) {
        return Err(Error::Domain(format!("lambda = {lam} must be positive")));
    }
    Ok(())
}

/// sqrt(2 m lambda).
pub fn kappa(p: &SchrodParams, lam: f64) -> Result<f64> {
    check_lambda(lam)?;
    Ok((2.0 * p.m * lam).sqrt())
}

/// Evaluator of sqrt(r) K_nu(kappa r) or the regular sqrt(r) I_|nu|(kappa r).
#[derive(Debug, Clone)]
pub struct SchrodSolution {
    regular: bool,
    kappa: f64,
    order: Order,
}

impl SchrodSolution {
    pub fn at(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("r = {r} must be positive")));
        }
        let z = self.kappa * r;
        let v = if self.regular { bessel_i(self.order, z)? } else { bessel_k(self.order, z)? };
        Ok(r.sqrt() * v)
    }

    pub fn rate(&self) -> f64 {
        self.kappa
    }

    pub fn sample(&self, grid: Arc<RadialGrid>) -> Result<RadialFn> {
        RadialFn::try_from_fn(grid, |r| Ok(self.at(r)?.into()))
    }
}

/// Decaying solution Phi = sqrt(r) K_{alpha+k+1/2}(r sqrt(2 m lambda)).
pub fn phi_s(p: &SchrodParams, lam: f64) -> Result<SchrodSolution> {
    Ok(SchrodSolution { regular: false, kappa: kappa(p, lam)?, order: Order::new(p.order())? })
}

/// Solution regular at the origin, sqrt(r) I_{|alpha+k+1/2|}(r sqrt(2 m lambda)).
pub fn f_s(p: &SchrodParams, lam: f64) -> Result<SchrodSolution> {
    Ok(SchrodSolution {
        regular: true,
        kappa: kappa(p, lam)?,
        order: Order::new(p.order().abs())?,
    })
}

/// Phi ~ A r^{-(alpha+k)} + B r^{1+alpha+k}; F ~ C r^{1+alpha+k}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodAsymptotics {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

pub fn asympt_constants_s(p: &SchrodParams, lam: f64) -> Result<SchrodAsymptotics> {
    check_lambda(lam)?;
    let s = p.alpha + p.k as f64;
    let ml = p.m * lam;
    Ok(SchrodAsymptotics {
        a: 2f64.powf(s / 2.0 - 0.75) * ml.powf(-s / 2.0 - 0.25) * gamma(s + 0.5)?,
        b: 2f64.powf(-s / 2.0 - 1.25) * ml.powf(s / 2.0 + 0.25) * gamma(-s - 0.5)?,
        c: 2f64.powf(-s / 2.0 - 0.25) * ml.powf(s / 2.0 + 0.25) / gamma(s + 1.5)?,
    })
}

const NORM_PANELS: usize = 48;
const NORM_ORDER: usize = 12;

/// ||Phi||^2 by Gauss panel quadrature in ln r with a power-law piece at the
/// origin, verified against a run with doubled panels.
pub fn phi_norm_sq_s(p: &SchrodParams, lam: f64) -> Result<f64> {
    let nu = p.order();
    if nu.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "Phi is not square integrable for |alpha+k+1/2| = {} >= 1",
            nu.abs()
        )));
    }
    let phi = phi_s(p, lam)?;
    let kap = phi.rate();
    let run = |panels: usize| -> Result<f64> {
        let grid = Arc::new(RadialGrid::gauss_panels(1e-8 / kap, 40.0 / kap, panels, NORM_ORDER)?);
        let f = RadialFn::try_from_fn(grid, |r| Ok(phi.at(r)?.powi(2).into()))?;
        Ok(quad_from_origin(&f, 1.0 - 2.0 * nu.abs())?.re)
    };
    let coarse = run(NORM_PANELS)?;
    let fine = run(2 * NORM_PANELS)?;
    if (fine - coarse).abs() > 1e-10 * fine {
        return Err(Error::NonConvergence(format!(
            "norm quadrature unstable under refinement: {coarse} vs {fine}"
        )));
    }
    Ok(fine)
}

/// Denominator of tau for finite theta.
pub fn tau_denominator_s(p: &SchrodParams, lam: f64, theta: f64) -> Result<f64> {
    let (sec, coef) = tau_terms(p, lam)?;
    Ok(sec + coef * theta)
}

fn tau_terms(p: &SchrodParams, lam: f64) -> Result<(f64, f64)> {
    p.require_k0()?;
    check_lambda(lam)?;
    let a = p.alpha;
    Ok((
        PI / cos_pi(a),
        2f64.powf(0.5 + a) * (p.m * lam).powf(-0.5 - a) * gamma(0.5 + a)? * gamma(1.5 + a)?,
    ))
}

/// Prefactor of the rank-one part of the theta-family resolvent.
pub fn tau_s(p: &SchrodParams, lam: f64, theta: ExtParam) -> Result<f64> {
    let (sec, coef) = tau_terms(p, lam)?;
    let t = match theta {
        ExtParam::Infinite => return Ok(0.0),
        ExtParam::Finite(t) => t,
    };
    let d = sec + coef * t;
    if d.abs() <= 1e-13 * (sec + (coef * t).abs()) {
        return Err(Error::Pole(format!(
            "tau denominator vanishes at lambda = {lam}, theta = {t}"
        )));
    }
    Ok(2.0 / d)
}

/// Green kernel of the Friedrichs extension, 2m[Phi(r)F(rho) 1_{rho<r} + F(r)Phi(rho) 1_{rho>r}].
#[derive(Debug, Clone)]
pub struct SchrodKernel {
    phi: SchrodSolution,
    f: SchrodSolution,
    two_m: f64,
}

pub fn green_s(p: &SchrodParams, lam: f64) -> Result<SchrodKernel> {
    Ok(SchrodKernel { phi: phi_s(p, lam)?, f: f_s(p, lam)?, two_m: 2.0 * p.m })
}

impl KernelEval for SchrodKernel {
    type Value = f64;

    fn eval(&self, r: f64, rho: f64) -> Result<f64> {
        if !(r > 0.0 && rho > 0.0) {
            return Err(Error::Domain(format!("kernel arguments ({r}, {rho}) must be positive")));
        }
        let (lo, hi) = if rho < r { (rho, r) } else { (r, rho) };
        Ok(self.two_m * self.phi.at(hi)? * self.f.at(lo)?)
    }
}

/// (1/2m)(-f'' + (alpha+k)(alpha+k+1) f/r^2).
pub fn apply_schrod(p: &SchrodParams, f: &RadialFn) -> Result<RadialFn> {
    let d2 = f.grid().diff(f.values(), 2)?;
    let q = p.coupling();
    let h = 0.5 / p.m;
    let vals = f
        .grid()
        .nodes()
        .iter()
        .zip(f.values())
        .zip(&d2)
        .map(|((&r, &v), &dd)| (-dd + v * (q / (r * r))) * h)
        .collect();
    RadialFn::new(f.grid().clone(), vals)
}

/// Resolvent (S + lambda)^{-1} applied to g. theta = inf gives the Friedrichs
/// extension (any k); finite theta needs k = 0. The grid must be log-uniform.
pub fn resolvent_s(p: &SchrodParams, lam: f64, theta: ExtParam, g: &RadialFn) -> Result<RadialFn> {
    let tau = match theta {
        ExtParam::Infinite => 0.0,
        t => tau_s(p, lam, t)?,
    };
    let grid = g.grid().clone();
    let phi = phi_s(p, lam)?.sample(grid.clone())?;
    let f = f_s(p, lam)?.sample(grid.clone())?;
    let n = grid.len();
    let fg: Vec<Complex64> = (0..n).map(|i| f.values()[i] * g.values()[i]).collect();
    let pg: Vec<Complex64> = (0..n).map(|i| phi.values()[i] * g.values()[i]).collect();
    let left = grid.cumulative(&fg)?;
    let right = grid.cumulative_rev(&pg)?;
    let proj = right[0];
    let two_m = 2.0 * p.m;
    let vals = (0..n)
        .map(|i| {
            let ph = phi.values()[i];
            (ph * left[i] + f.values()[i] * right[i] + ph * (tau * proj)) * two_m
        })
        .collect();
    RadialFn::new(grid, vals)
}

/// Componentwise backward error of `u` as a solution of (S + lambda) u = g:
/// the largest value over [`RadialGrid::residual_range`] of
/// |res_i| / (max|g| + (|A| |u|)_i), where |A| is the discrete operator with
/// absolute coefficients.
pub fn residual_s(p: &SchrodParams, lam: f64, u: &RadialFn, g: &RadialFn) -> Result<f64> {
    let grid = u.grid();
    if grid.nodes() != g.grid().nodes() {
        return Err(Error::Shape("solution and source live on different grids".into()));
    }
    let su = apply_schrod(p, u)?;
    let d2 = grid.diff_scale(u.values(), 2)?;
    let q = p.coupling().abs();
    let h = 0.5 / p.m;
    let gmax = g.max_abs();
    let mut worst: f64 = 0.0;
    for i in grid.residual_range() {
        let r = grid.nodes()[i];
        let v = u.values()[i];
        let res = su.values()[i] + v * lam - g.values()[i];
        let scale = h * (d2[i] + q / (r * r) * v.norm()) + lam * v.norm() + gmax;
        worst = worst.max(scaled(res.norm(), scale));
    }
    Ok(worst)
}

/// Bound-state energy -lambda* of the theta extension (k = 0), if any.
pub fn bound_state_s(p: &SchrodParams, theta: ExtParam) -> Result<Option<f64>> {
    p.require_k0()?;
    let t = match theta {
        ExtParam::Infinite => return Ok(None),
        ExtParam::Finite(t) => t,
    };
    if t == 0.0 {
        return Ok(None);
    }
    // lambda* scales exactly like |theta|^{1/(1/2+alpha)}/m
    let scale = t.abs().powf(1.0 / (0.5 + p.alpha)) / p.m;
    let (lo, hi) = (1e-8 * scale, 1e4 * scale);
    let den = |l: f64| tau_denominator_s(p, l, t);
    const PROBES: usize = 256;
    let ratio = (hi / lo).ln();
    let mut prev_l = lo;
    let mut prev_d = den(lo)?;
    for j in 1..PROBES {
        let l = lo * (ratio * j as f64 / (PROBES - 1) as f64).exp();
        let d = den(l)?;
        if d == 0.0 {
            return Ok(Some(-l));
        }
        if prev_d.signum() != d.signum() {
            return Ok(Some(-bisect(den, prev_l, l, prev_d)?));
        }
        prev_l = l;
        prev_d = d;
    }
    Ok(None)
}

/// First node (-theta)^{-1/(1+2alpha)} of r^{-alpha} + theta r^{1+alpha}.
pub fn scattering_length_s(p: &SchrodParams, theta: f64) -> Result<f64> {
    p.require_k0()?;
    if !(theta < 0.0) {
        return Err(Error::Domain(format!(
            "scattering length needs theta < 0, got {theta}"
        )));
    }
    Ok((-theta).powf(-1.0 / (1.0 + 2.0 * p.alpha)))
}

/// Leading and subleading short-distance coefficients: (a0, a1) of r^{-alpha}, r^{1+alpha}
/// for k = 0, or (b0, b1) of r^{alpha}, r^{1-alpha} for k = -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodBoundaryData {
    pub lead: Complex64,
    pub sublead: Complex64,
}

/// Boundary data of c0 Phi + c1 (Friedrichs resolvent of Phi).
pub fn boundary_from_coeffs_s(
    p: &SchrodParams,
    lam: f64,
    c0: Complex64,
    c1: Complex64,
) -> Result<SchrodBoundaryData> {
    let q = p.boundary_equivalent()?;
    let k = asympt_constants_s(&q, lam)?;
    let w = 2.0 * q.m * k.c * phi_norm_sq_s(&q, lam)?;
    Ok(SchrodBoundaryData { lead: c0 * k.a, sublead: c0 * k.b + c1 * w })
}

/// Extension parameter (theta for k = 0, nu for k = -1) of the data c1 = omega c0.
pub fn theta_of_omega(p: &SchrodParams, lam: f64, omega: ExtParam) -> Result<ExtParam> {
    let q = p.boundary_equivalent()?;
    let o = match omega {
        ExtParam::Infinite => return Ok(ExtParam::Infinite),
        ExtParam::Finite(o) => o,
    };
    let k = asympt_constants_s(&q, lam)?;
    let w = 2.0 * q.m * k.c * phi_norm_sq_s(&q, lam)?;
    Ok(ExtParam::Finite((k.b + o * w) / k.a))
}

/// Windowed least-squares fit of the short-distance data of sampled u.
pub fn extract_boundary_s(p: &SchrodParams, u: &RadialFn) -> Result<SchrodBoundaryData> {
    let q = p.boundary_equivalent()?;
    let a = q.alpha;
    let x = fit_powers(u.grid(), u.values(), FIT_WINDOW, &[-a, 1.0 + a, 2.0 - a])?;
    Ok(SchrodBoundaryData { lead: x[0], sublead: x[1] })
}
