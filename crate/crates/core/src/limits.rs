//! Non-relativistic limit c -> inf: coupling schedules and convergence tables
//! comparing the Dirac family against its Schrödinger counterpart.

use crate::dirac::{
    bisect, f_d, gap_eigenvalue_d, phi_d, scattering_length_d, tau_d, zero_energy_d, DiracParams,
    DiracSolution, SpectralShift,
};
use crate::error::{Error, Result};
use crate::params::{check_alpha, check_positive, ExtParam};
use crate::radial::{fmt, RadialGrid};
use crate::schrod::{
    bound_state_s, f_s, phi_s, scattering_length_s, tau_s, SchrodParams, SchrodSolution,
};
use num_complex::Complex64;
use rayon::prelude::*;
use std::io::{Read, Write};
use std::sync::Arc;

pub const DEFAULT_C_SWEEP: [f64; 7] = [10.0, 31.6, 100.0, 316.0, 1000.0, 3162.0, 10000.0];

/// Points used for the rank-one kernel comparison.
pub const RANK_ONE_SAMPLE: [f64; 10] = [0.1, 0.15, 0.25, 0.4, 0.6, 1.0, 1.5, 2.5, 4.0, 6.0];

/// Minimum distance between lambda and a gap eigenvalue along a sweep.
pub const COLLISION_TOL: f64 = 1e-6;

const POWER_ITERATIONS: usize = 50;
const POWER_STAGNATION: f64 = 1e-10;

/// gamma(c) = theta (1 + 2 alpha) / (2 m c), with theta = inf giving inf.
pub fn gamma_schedule(theta: ExtParam, alpha: f64, m: f64, c: f64) -> ExtParam {
    match theta {
        ExtParam::Infinite => ExtParam::Infinite,
        ExtParam::Finite(t) => ExtParam::Finite(t * (1.0 + 2.0 * alpha) / (2.0 * m * c)),
    }
}

/// Positron-side schedule gamma(c) = 2 m c / ((1 - 2 alpha) theta); theta = inf gives 0.
pub fn positron_gamma_schedule(theta: ExtParam, alpha: f64, m: f64, c: f64) -> Result<ExtParam> {
    match theta {
        ExtParam::Infinite => Ok(ExtParam::Finite(0.0)),
        ExtParam::Finite(0.0) => Err(Error::InvalidParameter(
            "positron schedule needs theta != 0".into(),
        )),
        ExtParam::Finite(t) => Ok(ExtParam::Finite(2.0 * m * c / ((1.0 - 2.0 * alpha) * t))),
    }
}

fn check_sweep(c_values: &[f64]) -> Result<()> {
    if c_values.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "c sweep needs at least 4 values, got {}",
            c_values.len()
        )));
    }
    for &c in c_values {
        check_positive("c", c)?;
    }
    if c_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("c values must be strictly increasing".into()));
    }
    if c_values[c_values.len() - 1] < 100.0 * c_values[0] {
        return Err(Error::InvalidParameter("c sweep must span at least two decades".into()));
    }
    Ok(())
}

/// Parameters of a limit sweep. Construction checks the gap condition
/// lambda < 2mc^2 at every c.
#[derive(Debug, Clone)]
pub struct LimitRun {
    theta: ExtParam,
    alpha: f64,
    m: f64,
    lambda: f64,
    c_values: Vec<f64>,
    grid: Arc<RadialGrid>,
}

impl LimitRun {
    pub fn new(theta: ExtParam, alpha: f64, m: f64, lambda: f64, c_values: Vec<f64>) -> Result<Self> {
        check_alpha(alpha)?;
        check_positive("m", m)?;
        check_positive("lambda", lambda)?;
        check_sweep(&c_values)?;
        for &c in &c_values {
            if lambda >= 2.0 * m * c * c {
                return Err(Error::Gap(format!(
                    "lambda = {lambda} not below 2mc^2 = {} at c = {c}",
                    2.0 * m * c * c
                )));
            }
        }
        let grid = Arc::new(default_norm_grid(m, lambda)?);
        Ok(LimitRun { theta, alpha, m, lambda, c_values, grid })
    }

    /// Replace the quadrature grid used by [`resolvent_norm_limit`].
    pub fn with_grid(mut self, grid: Arc<RadialGrid>) -> Self {
        self.grid = grid;
        self
    }

    pub fn theta(&self) -> ExtParam {
        self.theta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn c_values(&self) -> &[f64] {
        &self.c_values
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    fn dirac(&self, c: f64) -> Result<(DiracParams, SpectralShift, ExtParam)> {
        let p = DiracParams::new(self.alpha, self.m, c, 0)?;
        let lam = p.shift(self.lambda)?;
        Ok((p, lam, gamma_schedule(self.theta, self.alpha, self.m, c)))
    }

    fn schrod(&self) -> Result<SchrodParams> {
        SchrodParams::new(self.alpha, self.m, 0)
    }
}

/// Gauss panels over [1e-6, 40] decay lengths of the limiting kernel: four per
/// decade below one decay length, width 1/4 of a decay length beyond.
pub fn default_norm_grid(m: f64, lambda: f64) -> Result<RadialGrid> {
    let ell = 1.0 / (2.0 * m * lambda).sqrt();
    let mut breaks: Vec<f64> = (0..24).map(|i| ell * 10f64.powf(-6.0 + 0.25 * i as f64)).collect();
    breaks.extend((0..=156).map(|i| ell * (1.0 + 0.25 * i as f64)));
    RadialGrid::gauss_breaks(breaks, 8)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub c: f64,
    pub metric: f64,
    /// d log(metric) / d log(c) against the previous row.
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn from_metrics(c_values: &[f64], metrics: &[f64]) -> Result<Self> {
        if c_values.len() != metrics.len() {
            return Err(Error::Shape(format!(
                "{} c values but {} metrics",
                c_values.len(),
                metrics.len()
            )));
        }
        let rows = (0..c_values.len())
            .map(|i| ConvergenceRow {
                c: c_values[i],
                metric: metrics[i],
                slope: (i > 0)
                    .then(|| local_slope(c_values[i - 1], metrics[i - 1], c_values[i], metrics[i]))
                    .flatten(),
            })
            .collect();
        Ok(ConvergenceTable { rows })
    }

    pub fn rows(&self) -> &[ConvergenceRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn metrics(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.metric).collect()
    }

    /// Last metric over first metric.
    pub fn final_ratio(&self) -> f64 {
        match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) => b.metric / a.metric,
            _ => f64::NAN,
        }
    }

    /// Each entry at most (1 + tol) times its predecessor.
    pub fn is_decreasing(&self, tol: f64) -> bool {
        self.rows.windows(2).all(|w| w[1].metric <= (1.0 + tol) * w[0].metric)
    }

    pub fn max_metric(&self) -> f64 {
        self.rows.iter().map(|r| r.metric).fold(0.0, f64::max)
    }

    /// Least-squares log-log slope over rows with c >= c_from.
    pub fn fitted_slope(&self, c_from: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.c >= c_from && r.metric > 0.0)
            .map(|r| (r.c.ln(), r.metric.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some(sxy / sxx)
    }

    /// CSV with header `c,metric,slope`; the slope field is empty when undefined.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["c", "metric", "slope"])?;
        for r in &self.rows {
            let slope = r.slope.map(fmt).unwrap_or_default();
            wr.write_record([fmt(r.c), fmt(r.metric), slope])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(rd: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(rd);
        let header = rdr.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["c", "metric", "slope"] {
            return Err(Error::Io(format!("unexpected header {header:?}")));
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let num = |s: &str| {
                s.parse::<f64>().map_err(|e| Error::Io(format!("bad number {s:?}: {e}")))
            };
            let slope = match rec.get(2) {
                Some("") | None => None,
                Some(s) => Some(num(s)?),
            };
            rows.push(ConvergenceRow { c: num(&rec[0])?, metric: num(&rec[1])?, slope });
        }
        Ok(ConvergenceTable { rows })
    }
}

fn local_slope(c0: f64, m0: f64, c1: f64, m1: f64) -> Option<f64> {
    (m0 > 0.0 && m1 > 0.0).then(|| (m1 / m0).ln() / (c1 / c0).ln())
}

fn sweep(c_values: &[f64], f: impl Fn(f64) -> Result<f64> + Sync) -> Result<ConvergenceTable> {
    let metrics = c_values.par_iter().map(|&c| f(c)).collect::<Result<Vec<f64>>>()?;
    ConvergenceTable::from_metrics(c_values, &metrics)
}

/// |tau_D(gamma(c), c) - tau_S(theta)| along the sweep.
pub fn tau_limit(run: &LimitRun) -> Result<ConvergenceTable> {
    let ts = tau_s(&run.schrod()?, run.lambda, run.theta)?;
    sweep(&run.c_values, |c| {
        let (p, lam, g) = run.dirac(c)?;
        Ok((tau_d(&p, lam, g)? - ts).abs())
    })
}

/// Part of a 2x2 block operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    Full,
    UpperLeft,
    LowerRight,
    OffDiagonal,
}

impl Block {
    fn entries(self) -> &'static [(usize, usize)] {
        match self {
            Block::Full => &[(0, 0), (0, 1), (1, 0), (1, 1)],
            Block::UpperLeft => &[(0, 0)],
            Block::LowerRight => &[(1, 1)],
            Block::OffDiagonal => &[(0, 1), (1, 0)],
        }
    }
}

/// Largest entrywise difference between (lambda/c^2) Phi_D(r) Phi_D(rho)^* and
/// 2m Phi_S(r) Phi_S(rho) (+) 0 over [`RANK_ONE_SAMPLE`] squared.
pub fn rank_one_limit(run: &LimitRun) -> Result<ConvergenceTable> {
    rank_one_limit_block(run, Block::Full)
}

pub fn rank_one_limit_block(run: &LimitRun, block: Block) -> Result<ConvergenceTable> {
    let ps = phi_s(&run.schrod()?, run.lambda)?;
    let s: Vec<f64> = RANK_ONE_SAMPLE.iter().map(|&r| ps.at(r)).collect::<Result<_>>()?;
    let two_m = 2.0 * run.m;
    sweep(&run.c_values, |c| {
        let (p, lam, _) = run.dirac(c)?;
        let pd = phi_d(&p, lam)?;
        let d: Vec<[Complex64; 2]> = RANK_ONE_SAMPLE.iter().map(|&r| pd.at(r)).collect::<Result<_>>()?;
        let w = run.lambda / (c * c);
        let mut worst: f64 = 0.0;
        for i in 0..RANK_ONE_SAMPLE.len() {
            for j in 0..RANK_ONE_SAMPLE.len() {
                for &(a, b) in block.entries() {
                    let mut diff = d[i][a] * d[j][b].conj() * w;
                    if (a, b) == (0, 0) {
                        diff -= two_m * s[i] * s[j];
                    }
                    worst = worst.max(diff.norm());
                }
            }
        }
        Ok(worst)
    })
}

/// Samples of the special solutions on the quadrature nodes, times sqrt(weight).
struct Sampled<T> {
    phi: Vec<T>,
    f: Vec<T>,
}

fn sample_d(grid: &RadialGrid, phi: &DiracSolution, f: &DiracSolution) -> Result<Sampled<[Complex64; 2]>> {
    let mut out = Sampled { phi: Vec::with_capacity(grid.len()), f: Vec::with_capacity(grid.len()) };
    for (&r, &w) in grid.nodes().iter().zip(grid.weights()) {
        let sw = w.sqrt();
        out.phi.push(phi.at(r)?.map(|x| x * sw));
        out.f.push(f.at(r)?.map(|x| x * sw));
    }
    Ok(out)
}

fn sample_s(grid: &RadialGrid, phi: &SchrodSolution, f: &SchrodSolution) -> Result<Sampled<f64>> {
    let mut out = Sampled { phi: Vec::with_capacity(grid.len()), f: Vec::with_capacity(grid.len()) };
    for (&r, &w) in grid.nodes().iter().zip(grid.weights()) {
        let sw = w.sqrt();
        out.phi.push(phi.at(r)? * sw);
        out.f.push(f.at(r)? * sw);
    }
    Ok(out)
}

fn dot(a: [Complex64; 2], b: [Complex64; 2]) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Weighted Nystrom matrix of the difference of the two resolvents, applied
/// matrix-free. Both kernels are separable off the diagonal, so a product costs
/// two prefix sums; the diagonal takes the mean of the two one-sided limits.
struct DifferenceOperator {
    d: Sampled<[Complex64; 2]>,
    s: Sampled<f64>,
    pref_d: f64,
    tau_d: f64,
    two_m: f64,
    tau_s: f64,
}

impl DifferenceOperator {
    fn apply(&self, x: &[[Complex64; 2]]) -> Vec<[Complex64; 2]> {
        let n = x.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut y = vec![[zero; 2]; n];

        // Dirac: -(lambda/c^2)[Phi(r) F(rho)^* 1_{rho<r} + F(r) Phi(rho)^* 1_{rho>r}] + tau (lambda/c^2) Phi Phi^*
        let fx: Vec<Complex64> = (0..n).map(|j| dot(self.d.f[j], x[j])).collect();
        let px: Vec<Complex64> = (0..n).map(|j| dot(self.d.phi[j], x[j])).collect();
        let above = tail_sums(&px);
        let total = above[0] + px[0];
        let mut below = zero;
        for i in 0..n {
            let (ph, f) = (self.d.phi[i], self.d.f[i]);
            for a in 0..2 {
                let green = ph[a] * (below + 0.5 * fx[i]) + f[a] * (above[i] + 0.5 * px[i]);
                y[i][a] = (ph[a] * (self.tau_d * total) - green) * self.pref_d;
            }
            below += fx[i];
        }

        // Schrodinger on the upper component: 2m[Phi(r>) F(r<)] + 2m tau Phi Phi
        let fx: Vec<Complex64> = (0..n).map(|j| x[j][0] * self.s.f[j]).collect();
        let px: Vec<Complex64> = (0..n).map(|j| x[j][0] * self.s.phi[j]).collect();
        let above = tail_sums(&px);
        let total = above[0] + px[0];
        let mut below = zero;
        for i in 0..n {
            let (ph, f) = (self.s.phi[i], self.s.f[i]);
            let green = (below + 0.5 * fx[i]) * ph + (above[i] + 0.5 * px[i]) * f;
            y[i][0] -= (green + total * (self.tau_s * ph)) * self.two_m;
            below += fx[i];
        }
        y
    }

    fn apply_block(&self, x: &[[Complex64; 2]], block: Block) -> Vec<[Complex64; 2]> {
        let zero = Complex64::new(0.0, 0.0);
        let mask = |v: &[[Complex64; 2]], keep: [bool; 2]| -> Vec<[Complex64; 2]> {
            v.iter()
                .map(|e| [if keep[0] { e[0] } else { zero }, if keep[1] { e[1] } else { zero }])
                .collect()
        };
        match block {
            Block::Full => self.apply(x),
            Block::UpperLeft => mask(&self.apply(&mask(x, [true, false])), [true, false]),
            Block::LowerRight => mask(&self.apply(&mask(x, [false, true])), [false, true]),
            Block::OffDiagonal => {
                let a = mask(&self.apply(&mask(x, [false, true])), [true, false]);
                let b = mask(&self.apply(&mask(x, [true, false])), [false, true]);
                a.iter().zip(&b).map(|(u, v)| [u[0] + v[0], u[1] + v[1]]).collect()
            }
        }
    }
}

/// out[i] = sum of v[j] over j > i, accumulated from the far end.
fn tail_sums(v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for i in (0..v.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] + v[i + 1];
    }
    out
}

fn vec_norm(v: &[[Complex64; 2]]) -> f64 {
    v.iter().map(|e| e[0].norm_sqr() + e[1].norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value of a Hermitian operator by power iteration on its square.
fn spectral_norm(apply: impl Fn(&[[Complex64; 2]]) -> Vec<[Complex64; 2]>, n: usize) -> f64 {
    // deterministic start with components in every direction
    let mut v: Vec<[Complex64; 2]> = (0..n)
        .map(|i| {
            let t = i as f64;
            [Complex64::new(1.0 + 0.5 * (0.7 * t).sin(), 0.3), Complex64::new(0.8, 0.5 * (1.3 * t).cos())]
        })
        .collect();
    let nv = vec_norm(&v);
    v.iter_mut().for_each(|e| *e = e.map(|x| x / nv));
    let mut est = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let w = apply(&apply(&v));
        let nw = vec_norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        v = w.into_iter().map(|e| e.map(|x| x / nw)).collect();
        let done = (nw - est).abs() <= POWER_STAGNATION * nw;
        est = nw;
        if done {
            break;
        }
    }
    est.sqrt()
}

fn check_collision(run: &LimitRun, c: f64) -> Result<()> {
    let (p, _, g) = run.dirac(c)?;
    if let Some(star) = gap_eigenvalue_d(&p, g)? {
        if (star.value() - run.lambda).abs() <= COLLISION_TOL {
            return Err(Error::EigenvalueCollision { lambda: run.lambda, eigenvalue: star.value(), c });
        }
    }
    Ok(())
}

fn difference_operator(run: &LimitRun, c: f64) -> Result<DifferenceOperator> {
    let (p, lam, g) = run.dirac(c)?;
    let ps = run.schrod()?;
    Ok(DifferenceOperator {
        d: sample_d(&run.grid, &phi_d(&p, lam)?, &f_d(&p, lam)?)?,
        s: sample_s(&run.grid, &phi_s(&ps, run.lambda)?, &f_s(&ps, run.lambda)?)?,
        pref_d: run.lambda / (c * c),
        tau_d: tau_d(&p, lam, g)?,
        two_m: 2.0 * run.m,
        tau_s: tau_s(&ps, run.lambda, run.theta)?,
    })
}

/// Operator norm of the discretized resolvent difference
/// (h(gamma(c)) - mc^2 + lambda)^{-1} - (S(theta) + lambda)^{-1} (+) 0.
pub fn resolvent_norm_limit(run: &LimitRun) -> Result<ConvergenceTable> {
    resolvent_norm_limit_block(run, Block::Full)
}

pub fn resolvent_norm_limit_block(run: &LimitRun, block: Block) -> Result<ConvergenceTable> {
    for &c in &run.c_values {
        check_collision(run, c)?;
    }
    let n = run.grid.len();
    sweep(&run.c_values, |c| {
        let op = difference_operator(run, c)?;
        Ok(spectral_norm(|x| op.apply_block(x, block), n))
    })
}

/// |(-lambda*_D(c)) - E_S| where lambda*_D is the gap eigenvalue shift under the
/// schedule and E_S the Schrödinger bound state.
pub fn eigenvalue_limit(theta: f64, alpha: f64, m: f64, c_values: &[f64]) -> Result<ConvergenceTable> {
    if !(theta < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eigenvalue limit needs theta < 0, got {theta}"
        )));
    }
    check_sweep(c_values)?;
    let ps = SchrodParams::new(alpha, m, 0)?;
    let es = bound_state_s(&ps, ExtParam::Finite(theta))?
        .ok_or_else(|| Error::NonConvergence(format!("no bound state found for theta = {theta}")))?;
    sweep(c_values, |c| {
        let p = DiracParams::new(alpha, m, c, 0)?;
        let g = gamma_schedule(ExtParam::Finite(theta), alpha, m, c);
        let star = gap_eigenvalue_d(&p, g)?.ok_or(Error::MissingEigenvalue { c })?;
        Ok((-star.value() - es).abs())
    })
}

/// Positron-side prefactor limit through the (alpha, gamma) -> (-alpha, 1/gamma)
/// equivalence: |tau_D(-alpha, 1/gamma(c), c) - tau_S(-alpha, theta)|.
pub fn positron_tau_limit(
    theta: ExtParam,
    alpha: f64,
    m: f64,
    lambda: f64,
    c_values: &[f64],
) -> Result<ConvergenceTable> {
    check_alpha(alpha)?;
    check_positive("m", m)?;
    check_positive("lambda", lambda)?;
    check_sweep(c_values)?;
    positron_gamma_schedule(theta, alpha, m, 1.0)?;
    let ts = tau_s(&SchrodParams::new(-alpha, m, 0)?, lambda, theta)?;
    sweep(c_values, |c| {
        let p = DiracParams::new(-alpha, m, c, 0)?;
        let lam = p.shift(lambda)?;
        let g = positron_gamma_schedule(theta, alpha, m, c)?.reciprocal();
        Ok((tau_d(&p, lam, g)? - ts).abs())
    })
}

/// First candidate lambda that lies in the gap at the smallest c and keeps a
/// relative distance of at least 10% from every gap eigenvalue along the sweep.
pub fn select_lambda(
    theta: ExtParam,
    alpha: f64,
    m: f64,
    c_values: &[f64],
    candidates: &[f64],
) -> Result<f64> {
    check_sweep(c_values)?;
    let stars = c_values
        .par_iter()
        .map(|&c| {
            let p = DiracParams::new(alpha, m, c, 0)?;
            Ok(gap_eigenvalue_d(&p, gamma_schedule(theta, alpha, m, c))?.map(|s| s.value()))
        })
        .collect::<Result<Vec<Option<f64>>>>()?;
    let top = 2.0 * m * c_values[0] * c_values[0];
    candidates
        .iter()
        .copied()
        .find(|&l| l > 0.0 && l < top && stars.iter().flatten().all(|&s| (l - s).abs() >= 0.1 * s))
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no candidate lambda in {candidates:?} keeps clear of the gap eigenvalues {stars:?}"
            ))
        })
}

/// One c of the scattering-length comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringRow {
    pub c: f64,
    pub gamma: f64,
    pub r_dirac: f64,
    pub r_schrod: f64,
    /// First sign change of the upper zero-energy component, located numerically.
    pub node: f64,
}

impl ScatteringRow {
    pub fn rel_diff(&self) -> f64 {
        (self.r_dirac - self.r_schrod).abs() / self.r_schrod
    }

    pub fn node_rel_err(&self) -> f64 {
        (self.node - self.r_schrod).abs() / self.r_schrod
    }
}

const NODE_SCAN: (f64, f64, usize) = (1e-8, 1e8, 1601);

/// Scattering lengths of both families along the schedule (theta < 0), with an
/// independent numeric node of the Dirac zero-energy solution.
pub fn scattering_length_limit(theta: f64, alpha: f64, m: f64, c_values: &[f64]) -> Result<Vec<ScatteringRow>> {
    if !(theta < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "scattering length needs theta < 0, got {theta}"
        )));
    }
    check_sweep(c_values)?;
    let r_schrod = scattering_length_s(&SchrodParams::new(alpha, m, 0)?, theta)?;
    c_values.par_iter().map(|&c| {
        let p = DiracParams::new(alpha, m, c, 0)?;
        let gamma = gamma_schedule(ExtParam::Finite(theta), alpha, m, c)
            .finite()
            .expect("finite theta gives finite gamma");
        let up = |r: f64| -> Result<f64> { Ok(zero_energy_d(&p, gamma, r)?[0].re) };
        let (lo, hi, n) = NODE_SCAN;
        let step = (hi / lo).ln() / (n - 1) as f64;
        let mut prev = (lo, up(lo)?);
        let mut node = None;
        for j in 1..n {
            let r = lo * (step * j as f64).exp();
            let v = up(r)?;
            if v.signum() != prev.1.signum() {
                node = Some(bisect(up, prev.0, r, prev.1)?);
                break;
            }
            prev = (r, v);
        }
        let node = node.ok_or_else(|| Error::NonConvergence(format!("no node of the zero-energy solution at c = {c}")))?;
        Ok(ScatteringRow { c, gamma, r_dirac: scattering_length_d(&p, gamma)?, r_schrod, node })
    }).collect()
}
