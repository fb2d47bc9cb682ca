//! Radial Dirac operator with an Aharonov-Bohm flux: special solutions,
//! boundary constants, resolvent of the gamma family and related algebra.

use crate::error::{Error, Result};
use crate::params::{check_alpha, check_positive, ExtParam, KernelEval};
use crate::radial::{fit_powers, RadialGrid, RadialSpinor};
use crate::schrod::{apply_schrod, SchrodParams};
use crate::specfun::{bessel_i, bessel_k, cos_pi, gamma, Order};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Window for short-distance coefficient fits.
pub const FIT_WINDOW: (f64, f64) = (1e-4, 1e-3);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracParams {
    alpha: f64,
    m: f64,
    c: f64,
    k: i32,
}

impl DiracParams {
    pub fn new(alpha: f64, m: f64, c: f64, k: i32) -> Result<Self> {
        check_alpha(alpha)?;
        check_positive("m", m)?;
        check_positive("c", c)?;
        Ok(DiracParams { alpha, m, c, k })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    /// Rest energy m c^2.
    pub fn rest_energy(&self) -> f64 {
        self.m * self.c * self.c
    }

    /// Width 2mc^2 of the spectral gap.
    pub fn gap_width(&self) -> f64 {
        2.0 * self.rest_energy()
    }

    pub fn shift(&self, lambda: f64) -> Result<SpectralShift> {
        SpectralShift::new(self, lambda)
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
}

/// Spectral parameter lambda with 0 < lambda < 2mc^2.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SpectralShift(f64);

impl SpectralShift {
    pub fn new(p: &DiracParams, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < p.gap_width()) {
            return Err(Error::Gap(format!(
                "lambda = {lambda} not in (0, {})",
                p.gap_width()
            )));
        }
        Ok(SpectralShift(lambda))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// sqrt(2mc^2 - lambda)/c.
pub fn mu(p: &DiracParams, lam: SpectralShift) -> Result<f64> {
    let l = SpectralShift::new(p, lam.0)?.0;
    Ok((p.gap_width() - l).sqrt() / p.c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Decaying,
    Regular,
}

/// Pointwise evaluator of the decaying solution Phi or the regular solution F.
#[derive(Debug, Clone)]
pub struct DiracSolution {
    kind: Kind,
    c: f64,
    mu: f64,
    sqrt_lam: f64,
    upper: Order,
    lower: Order,
}

impl DiracSolution {
    fn new(kind: Kind, p: &DiracParams, lam: SpectralShift) -> Result<Self> {
        p.require_k0()?;
        let mu = mu(p, lam)?;
        Ok(DiracSolution {
            kind,
            c: p.c,
            mu,
            sqrt_lam: lam.0.sqrt(),
            upper: Order::new(p.alpha + 0.5)?,
            lower: Order::new(p.alpha - 0.5)?,
        })
    }

    /// Exponential rate mu sqrt(lambda).
    pub fn rate(&self) -> f64 {
        self.mu * self.sqrt_lam
    }

    pub fn at(&self, r: f64) -> Result<[Complex64; 2]> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("r = {r} must be positive")));
        }
        let z = self.rate() * r;
        let s = r.sqrt();
        let pre = self.c * self.mu * s / self.sqrt_lam;
        Ok(match self.kind {
            Kind::Decaying => [
                Complex64::new(0.0, -pre * bessel_k(self.upper, z)?),
                Complex64::new(s * bessel_k(self.lower, z)?, 0.0),
            ],
            Kind::Regular => [
                Complex64::new(0.0, pre * bessel_i(self.upper, z)?),
                Complex64::new(s * bessel_i(self.lower, z)?, 0.0),
            ],
        })
    }

    pub fn sample(&self, grid: Arc<RadialGrid>) -> Result<RadialSpinor> {
        RadialSpinor::try_from_fn(grid, |r| self.at(r))
    }
}

/// Decaying special solution Phi.
pub fn phi_d(p: &DiracParams, lam: SpectralShift) -> Result<DiracSolution> {
    DiracSolution::new(Kind::Decaying, p, lam)
}

/// Regular special solution F.
pub fn f_d(p: &DiracParams, lam: SpectralShift) -> Result<DiracSolution> {
    DiracSolution::new(Kind::Regular, p, lam)
}

/// Short-distance constants: Phi ~ (A r^{-alpha}, B r^{alpha}), F lower ~ C r^{alpha}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracAsymptotics {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

pub fn asympt_constants_d(p: &DiracParams, lam: SpectralShift) -> Result<DiracAsymptotics> {
    p.require_k0()?;
    let mu = mu(p, lam)?;
    let al = p.alpha;
    let sl = lam.0.sqrt();
    let z = mu * sl;
    let a = -I * (2f64.powf(al - 0.5) * p.c * mu * z.powf(-0.5 - al) * gamma(0.5 + al)? / sl);
    let b = 2f64.powf(-0.5 - al) * z.powf(al - 0.5) * gamma(0.5 - al)?;
    let c = 2f64.powf(0.5 - al) * z.powf(al - 0.5) / gamma(0.5 + al)?;
    Ok(DiracAsymptotics { a, b: b.into(), c: c.into() })
}

/// Closed-form ||Phi||^2.
pub fn phi_norm_sq_d(p: &DiracParams, lam: SpectralShift) -> Result<f64> {
    p.require_k0()?;
    let mu = mu(p, lam)?;
    let l = lam.0;
    let cs = cos_pi(p.alpha);
    Ok(PI * (1.0 + 2.0 * p.alpha) * p.c * p.c / (4.0 * l * l * cs)
        + PI * (1.0 - 2.0 * p.alpha) / (4.0 * l * mu * mu * cs))
}

/// Denominator of tau for finite gamma.
pub fn tau_denominator_d(p: &DiracParams, lam: SpectralShift, gamma_: f64) -> Result<f64> {
    let (sec, g) = tau_terms(p, lam)?;
    Ok(sec + g * gamma_)
}

// (pi sec(pi alpha), coefficient of gamma) in the tau denominator
fn tau_terms(p: &DiracParams, lam: SpectralShift) -> Result<(f64, f64)> {
    p.require_k0()?;
    let mu = mu(p, lam)?;
    let al = p.alpha;
    let z = mu * lam.0.sqrt();
    let g = gamma(0.5 + al)?;
    Ok((
        PI / cos_pi(al),
        4f64.powf(al) * mu * mu * z.powf(-1.0 - 2.0 * al) * g * g * p.c,
    ))
}

/// Prefactor of the rank-one part of the gamma-family resolvent.
pub fn tau_d(p: &DiracParams, lam: SpectralShift, gamma_: ExtParam) -> Result<f64> {
    let (sec, coef) = tau_terms(p, lam)?;
    let g = match gamma_ {
        ExtParam::Infinite => return Ok(0.0),
        ExtParam::Finite(g) => g,
    };
    let d = sec + coef * g;
    if d.abs() <= 1e-13 * (sec + (coef * g).abs()) {
        return Err(Error::Pole(format!(
            "tau denominator vanishes at lambda = {}, gamma = {g}",
            lam.0
        )));
    }
    Ok(2.0 / d)
}

/// Green kernel of the distinguished (gamma = inf) extension.
#[derive(Debug, Clone)]
pub struct DiracKernel {
    phi: DiracSolution,
    f: DiracSolution,
    pref: f64,
}

pub fn green_d(p: &DiracParams, lam: SpectralShift) -> Result<DiracKernel> {
    Ok(DiracKernel {
        phi: phi_d(p, lam)?,
        f: f_d(p, lam)?,
        pref: -lam.0 / (p.c * p.c),
    })
}

fn outer(u: [Complex64; 2], v: [Complex64; 2]) -> [[Complex64; 2]; 2] {
    [
        [u[0] * v[0].conj(), u[0] * v[1].conj()],
        [u[1] * v[0].conj(), u[1] * v[1].conj()],
    ]
}

impl KernelEval for DiracKernel {
    type Value = [[Complex64; 2]; 2];

    fn eval(&self, r: f64, rho: f64) -> Result<Self::Value> {
        if !(r > 0.0 && rho > 0.0) {
            return Err(Error::Domain(format!("kernel arguments ({r}, {rho}) must be positive")));
        }
        let m = if rho < r {
            outer(self.phi.at(r)?, self.f.at(rho)?)
        } else {
            outer(self.f.at(r)?, self.phi.at(rho)?)
        };
        Ok(m.map(|row| row.map(|x| x * self.pref)))
    }
}

/// Action of the radial Dirac block on sampled data (any k).
pub fn apply_dirac(p: &DiracParams, f: &RadialSpinor) -> Result<RadialSpinor> {
    let g = f.grid();
    let du = g.diff(f.upper(), 1)?;
    let dl = g.diff(f.lower(), 1)?;
    let mc2 = p.rest_energy();
    let s = p.alpha + p.k as f64;
    let c = p.c;
    let n = g.len();
    let mut up = Vec::with_capacity(n);
    let mut lo = Vec::with_capacity(n);
    for i in 0..n {
        let r = g.nodes()[i];
        let fu = f.upper()[i];
        let fl = f.lower()[i];
        up.push(fu * mc2 + I * c * (-dl[i] + fl * (s / r)));
        lo.push(-I * c * (du[i] + fu * (s / r)) - fl * mc2);
    }
    RadialSpinor::new(g.clone(), up, lo)
}

/// Resolvent (h - mc^2 + lambda)^{-1} of the gamma-family extension applied to g.
/// The sample grid must be log-uniform.
pub fn resolvent_d(
    p: &DiracParams,
    lam: SpectralShift,
    gamma_: ExtParam,
    g: &RadialSpinor,
) -> Result<RadialSpinor> {
    let tau = tau_d(p, lam, gamma_)?;
    let grid = g.grid().clone();
    let phi = phi_d(p, lam)?.sample(grid.clone())?;
    let f = f_d(p, lam)?.sample(grid.clone())?;
    let n = grid.len();
    let fg: Vec<Complex64> = (0..n)
        .map(|i| f.upper()[i].conj() * g.upper()[i] + f.lower()[i].conj() * g.lower()[i])
        .collect();
    let pg: Vec<Complex64> = (0..n)
        .map(|i| phi.upper()[i].conj() * g.upper()[i] + phi.lower()[i].conj() * g.lower()[i])
        .collect();
    let left = grid.cumulative(&fg)?;
    let right = grid.cumulative_rev(&pg)?;
    let proj = right[0];
    let pref = lam.0 / (p.c * p.c);
    let mut up = Vec::with_capacity(n);
    let mut lo = Vec::with_capacity(n);
    for i in 0..n {
        let rank_one = phi.upper()[i] * (tau * proj);
        up.push(-(phi.upper()[i] * left[i] + f.upper()[i] * right[i]) * pref + rank_one * pref);
        let rank_one = phi.lower()[i] * (tau * proj);
        lo.push(-(phi.lower()[i] * left[i] + f.lower()[i] * right[i]) * pref + rank_one * pref);
    }
    RadialSpinor::new(grid, up, lo)
}

/// Range of spectral parameters probed by [`gap_eigenvalue_d`], as fractions of 2mc^2.
pub const GAP_SCAN_RANGE: (f64, f64) = (1e-14, 1.0 - 1e-12);
const GAP_SCAN_PROBES: usize = 256;

/// Componentwise backward error of `u` as a solution of (h - mc^2 + lambda) u = g:
/// the largest value over [`RadialGrid::residual_range`] of
/// |res_i| / (max|g| + (|A| |u|)_i), where |A| is the discrete operator with
/// absolute coefficients.
pub fn residual_d(
    p: &DiracParams,
    lam: SpectralShift,
    u: &RadialSpinor,
    g: &RadialSpinor,
) -> Result<f64> {
    let grid = u.grid();
    if grid.nodes() != g.grid().nodes() {
        return Err(Error::Shape("solution and source live on different grids".into()));
    }
    let hu = apply_dirac(p, u)?;
    let su = grid.diff_scale(u.upper(), 1)?;
    let sl = grid.diff_scale(u.lower(), 1)?;
    let l = lam.value();
    let shift = p.rest_energy() - l;
    let s = (p.alpha + p.k as f64).abs();
    let c = p.c;
    let gmax = g.max_abs();
    let mut worst: f64 = 0.0;
    for i in grid.residual_range() {
        let r = grid.nodes()[i];
        let (fu, fl) = (u.upper()[i], u.lower()[i]);
        let ru = hu.upper()[i] - fu * shift - g.upper()[i];
        let rl = hu.lower()[i] - fl * shift - g.lower()[i];
        let au = l * fu.norm() + c * (sl[i] + s / r * fl.norm()) + gmax;
        let al = (p.gap_width() - l) * fl.norm() + c * (su[i] + s / r * fu.norm()) + gmax;
        worst = worst.max(scaled(ru.norm(), au)).max(scaled(rl.norm(), al));
    }
    Ok(worst)
}

pub(crate) fn scaled(res: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        res / scale
    } else if res == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// lambda* in the gap where the tau denominator vanishes; h - mc^2 then has the
/// eigenvalue -lambda*. Absent for gamma = inf or when no sign change is found.
pub fn gap_eigenvalue_d(p: &DiracParams, gamma_: ExtParam) -> Result<Option<SpectralShift>> {
    p.require_k0()?;
    let g = match gamma_ {
        ExtParam::Infinite => return Ok(None),
        ExtParam::Finite(g) => g,
    };
    let w = p.gap_width();
    let den = |l: f64| -> Result<f64> { tau_denominator_d(p, SpectralShift(l), g) };
    let (lo, hi) = (w * GAP_SCAN_RANGE.0, w * GAP_SCAN_RANGE.1);
    let ratio = (hi / lo).ln();
    let mut prev_l = lo;
    let mut prev_d = den(lo)?;
    for j in 1..GAP_SCAN_PROBES {
        let l = lo * (ratio * j as f64 / (GAP_SCAN_PROBES - 1) as f64).exp();
        let d = den(l)?;
        if d == 0.0 {
            return Ok(Some(SpectralShift(l)));
        }
        if prev_d.signum() != d.signum() {
            return Ok(Some(SpectralShift(bisect(den, prev_l, l, prev_d)?)));
        }
        prev_l = l;
        prev_d = d;
    }
    Ok(None)
}

/// Bisection to relative width 1e-12 (then a few more halvings to the float limit).
pub(crate) fn bisect(
    f: impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
) -> Result<f64> {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b || (b - a) <= 1e-15 * b.abs() {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Node of the upper component of the zero-energy solution for gamma < 0.
pub fn scattering_length_d(p: &DiracParams, gamma_: f64) -> Result<f64> {
    p.require_k0()?;
    if !(gamma_ < 0.0) {
        return Err(Error::Domain(format!(
            "scattering length needs gamma < 0, got {gamma_}"
        )));
    }
    let e = 1.0 + 2.0 * p.alpha;
    Ok((-e / (2.0 * p.m * p.c * gamma_)).powf(1.0 / e))
}

/// Zero-energy solution (r^{-alpha} + 2mc gamma/(2alpha+1) r^{alpha+1}, -i gamma r^alpha).
pub fn zero_energy_d(p: &DiracParams, gamma_: f64, r: f64) -> Result<[Complex64; 2]> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r = {r} must be positive")));
    }
    let a = p.alpha;
    let up = r.powf(-a) + 2.0 * p.m * p.c * gamma_ / (2.0 * a + 1.0) * r.powf(a + 1.0);
    Ok([up.into(), -I * gamma_ * r.powf(a)])
}

// (lambda/c^2) C ||Phi||^2
fn norm_weight(p: &DiracParams, lam: SpectralShift, k: &DiracAsymptotics) -> Result<Complex64> {
    Ok(k.c * (lam.0 / (p.c * p.c) * phi_norm_sq_d(p, lam)?))
}

/// gamma as a function of the von Neumann slope beta (c1 = beta c0).
pub fn beta_gamma_map(p: &DiracParams, lam: SpectralShift, beta: ExtParam) -> Result<ExtParam> {
    let k = asympt_constants_d(p, lam)?;
    let b = match beta {
        ExtParam::Infinite => return Ok(ExtParam::Infinite),
        ExtParam::Finite(b) => b,
    };
    let x = norm_weight(p, lam, &k)?;
    let g = (x * b - k.b) / (I * k.a);
    Ok(ExtParam::Finite(g.re))
}

/// Inverse of [`beta_gamma_map`].
pub fn gamma_beta_map(p: &DiracParams, lam: SpectralShift, gamma_: ExtParam) -> Result<ExtParam> {
    let k = asympt_constants_d(p, lam)?;
    let g = match gamma_ {
        ExtParam::Infinite => return Ok(ExtParam::Infinite),
        ExtParam::Finite(g) => g,
    };
    let x = norm_weight(p, lam, &k)?;
    Ok(ExtParam::Finite(((I * k.a * g + k.b) / x).re))
}

/// Coefficients of r^{-alpha} (upper) and r^{alpha} (lower) at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracBoundaryData {
    pub g0: Complex64,
    pub g1: Complex64,
}

/// Boundary data of c0 Phi + c1 (distinguished-extension resolvent of Phi).
pub fn boundary_from_coeffs_d(
    p: &DiracParams,
    lam: SpectralShift,
    c0: Complex64,
    c1: Complex64,
) -> Result<DiracBoundaryData> {
    let k = asympt_constants_d(p, lam)?;
    let x = norm_weight(p, lam, &k)?;
    Ok(DiracBoundaryData { g0: c0 * k.a, g1: c0 * k.b - c1 * x })
}

/// Windowed least-squares estimate of (g0, g1) from samples.
pub fn extract_boundary_d(p: &DiracParams, u: &RadialSpinor) -> Result<DiracBoundaryData> {
    let s = extract_square_data(p, u)?;
    Ok(DiracBoundaryData { g0: s.a0, g1: s.b0 })
}

/// Short-distance coefficients u_+ ~ a0 r^{-alpha} + a1 r^{1+alpha},
/// u_- ~ b0 r^{alpha} + b1 r^{1-alpha}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareData {
    pub a0: Complex64,
    pub a1: Complex64,
    pub b0: Complex64,
    pub b1: Complex64,
}

/// Fit of [`SquareData`] over [`FIT_WINDOW`].
pub fn extract_square_data(p: &DiracParams, u: &RadialSpinor) -> Result<SquareData> {
    let a = p.alpha;
    let up = fit_powers(u.grid(), u.upper(), FIT_WINDOW, &[-a, 1.0 + a])?;
    let lo = fit_powers(u.grid(), u.lower(), FIT_WINDOW, &[a, 1.0 - a])?;
    Ok(SquareData { a0: up[0], a1: up[1], b0: lo[0], b1: lo[1] })
}

/// Given (a0, b1), the coefficients (b0, a1) making u_+ = a0 r^{-alpha} + a1 r^{1+alpha},
/// u_- = b0 r^{alpha} + b1 r^{1-alpha} a domain element of the square.
pub fn square_bc_map(
    p: &DiracParams,
    gamma_: ExtParam,
    a0: Complex64,
    b1: Complex64,
) -> Result<(Complex64, Complex64)> {
    p.require_k0()?;
    match gamma_ {
        ExtParam::Infinite => {
            if a0 != Complex64::new(0.0, 0.0) || b1 != Complex64::new(0.0, 0.0) {
                return Err(Error::Supersymmetry(
                    "gamma = inf requires a0 = 0 and b1 = 0".into(),
                ));
            }
            Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)))
        }
        ExtParam::Finite(g) => {
            let al = p.alpha;
            let b0 = -I * g * a0;
            let a1 = -I * g * (2.0 * I * a0 * p.m * p.c + b1 * (1.0 - 2.0 * al)) / (2.0 * al + 1.0);
            Ok((b0, a1))
        }
    }
}

/// Schrödinger k = 0 extensions (theta of S_alpha, theta of S_{-alpha}) whose direct
/// sum is the square of the gamma extension. Only gamma in {0, inf} reduce.
pub fn reduced_pair(p: &DiracParams, gamma_: ExtParam) -> Result<(ExtParam, ExtParam)> {
    p.require_k0()?;
    match gamma_ {
        ExtParam::Finite(0.0) => Ok((ExtParam::Finite(0.0), ExtParam::Infinite)),
        ExtParam::Infinite => Ok((ExtParam::Infinite, ExtParam::Finite(0.0))),
        ExtParam::Finite(g) => Err(Error::Supersymmetry(format!(
            "gamma = {g} does not reduce to a direct sum"
        ))),
    }
}

/// Domain element of the square times the cutoff exp(-r^2). `free` holds the
/// free short-distance coefficients: (a0, b1) for finite gamma, completed by
/// [`square_bc_map`], or (a1, b0) for gamma = inf, where a0 = b1 = 0.
pub fn square_domain_function(
    p: &DiracParams,
    gamma_: ExtParam,
    free: (Complex64, Complex64),
    grid: Arc<RadialGrid>,
) -> Result<RadialSpinor> {
    let zero = Complex64::new(0.0, 0.0);
    let (a0, a1, b0, b1) = match gamma_ {
        ExtParam::Infinite => (zero, free.0, free.1, zero),
        ExtParam::Finite(_) => {
            let (b0, a1) = square_bc_map(p, gamma_, free.0, free.1)?;
            (free.0, a1, b0, free.1)
        }
    };
    let a = p.alpha;
    RadialSpinor::from_fn(grid, |r| {
        let cut = (-r * r).exp();
        [
            (a0 * r.powf(-a) + a1 * r.powf(1.0 + a)) * cut,
            (b0 * r.powf(a) + b1 * r.powf(1.0 - a)) * cut,
        ]
    })
}

/// Relative L^2 mismatch, over the residual range, between h(h u) and
/// 2mc^2 (S_alpha u_+ (+) S_{-alpha} u_-) + m^2c^4 u.
pub fn square_residual(p: &DiracParams, u: &RadialSpinor) -> Result<f64> {
    p.require_k0()?;
    let hh = apply_dirac(p, &apply_dirac(p, u)?)?;
    let su = apply_schrod(&SchrodParams::new(p.alpha, p.m, 0)?, &u.upper_fn())?;
    let sl = apply_schrod(&SchrodParams::new(-p.alpha, p.m, 0)?, &u.lower_fn())?;
    let two = 2.0 * p.rest_energy();
    let m2c4 = p.rest_energy() * p.rest_energy();
    let g = u.grid();
    let (mut num, mut den) = (0.0, 0.0);
    for i in g.residual_range() {
        let w = g.weights()[i];
        let ru = su.values()[i] * two + u.upper()[i] * m2c4;
        let rl = sl.values()[i] * two + u.lower()[i] * m2c4;
        num += w * ((hh.upper()[i] - ru).norm_sqr() + (hh.lower()[i] - rl).norm_sqr());
        den += w * (ru.norm_sqr() + rl.norm_sqr());
    }
    Ok(scaled(num.sqrt(), den.sqrt()))
}
