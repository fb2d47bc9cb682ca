//! Grids, quadrature and differentiation on the half-line.
//!
//! Two layouts are supported. Log-uniform grids carry a high-order
//! interpolatory rule in t = ln r, cumulative integrals and finite
//! differences. Gauss panel grids place Gauss-Legendre nodes between
//! log-spaced breakpoints and are meant for plain quadrature.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::io::{Read, Write};
use std::sync::Arc;

/// Default number of nodes of [`RadialGrid::default_for_decay`].
pub const DEFAULT_NODES: usize = 2048;
/// Default inner edge of [`RadialGrid::default_for_decay`].
pub const DEFAULT_R_MIN: f64 = 1e-6;
/// The default outer edge is this many decay lengths.
pub const DEFAULT_DECAY_LENGTHS: f64 = 60.0;

/// Nodes dropped at each end when forming interior norms of differentiated data.
pub const EDGE_NODES: usize = 4;
/// Residual norms of resolvent output skip r < RESIDUAL_CUTOFF * r_min. Closer to
/// the origin the solution is a difference of nearly equal singular terms and
/// its samples carry relative rounding far above machine precision.
pub const RESIDUAL_CUTOFF: f64 = 1e3;

const MIN_NODES_PER_DECADE: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Layout {
    /// Nodes e^{t_0 + i h}.
    LogUniform { step: f64 },
    /// Gauss-Legendre nodes of the given order on each of `panels` log-spaced panels.
    GaussPanels { panels: usize, order: usize },
    /// Gauss-Legendre nodes (in log r) on panels with the given breakpoints.
    GaussBreaks { breaks: Vec<f64>, order: usize },
    /// Arbitrary increasing nodes with trapezoid weights (used for imported data).
    Irregular,
}

#[derive(Debug, Clone)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    // integration limits; differ from the end nodes on panel grids
    span: (f64, f64),
    layout: Layout,
}

fn check_range(r_min: f64, r_max: f64) -> Result<()> {
    if !(r_min > 0.0 && r_min.is_finite() && r_max.is_finite() && r_min < r_max) {
        return Err(Error::Grid(format!(
            "need 0 < r_min < r_max < inf, got [{r_min}, {r_max}]"
        )));
    }
    Ok(())
}

fn panel_rule(breaks: &[f64], order: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(order);
    let n = (breaks.len() - 1) * order;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for w in breaks.windows(2) {
        let (a, dt) = (w[0].ln(), (w[1] / w[0]).ln());
        for (x, wt) in gx.iter().zip(&gw) {
            let r = (a + 0.5 * dt * (x + 1.0)).exp();
            nodes.push(r);
            weights.push(0.5 * dt * wt * r);
        }
    }
    (nodes, weights)
}

fn check_density(r_min: f64, r_max: f64, n: usize) -> Result<()> {
    let decades = (r_max / r_min).log10();
    if (n as f64) < MIN_NODES_PER_DECADE * decades {
        return Err(Error::Grid(format!(
            "{n} nodes over {decades:.2} decades is below {MIN_NODES_PER_DECADE} per decade"
        )));
    }
    Ok(())
}

// Integrals over [j, j+1] of the Lagrange basis on nodes 0..=5, j = 0..=4.
fn lagrange6_rules() -> [[f64; 6]; 5] {
    let gx = [-(0.6f64).sqrt(), 0.0, (0.6f64).sqrt()];
    let gw = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    let mut out = [[0.0; 6]; 5];
    for (j, row) in out.iter_mut().enumerate() {
        for (m, w) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for q in 0..3 {
                let s = j as f64 + 0.5 + 0.5 * gx[q];
                let mut l = 1.0;
                for o in 0..6 {
                    if o != m {
                        l *= (s - o as f64) / (m as f64 - o as f64);
                    }
                }
                acc += 0.5 * gw[q] * l;
            }
            *w = acc;
        }
    }
    out
}

// Window start and local position of interval [i, i+1] on an n-node grid.
fn interval_window(i: usize, n: usize) -> (usize, usize) {
    let s = i.saturating_sub(2).min(n - 6);
    (s, i - s)
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j as f64 + 1.0) * z * p2 - j as f64 * p3) / (j as f64 + 1.0);
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

impl RadialGrid {
    /// `n` nodes uniformly spaced in ln r, endpoints included.
    pub fn log_uniform(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        check_range(r_min, r_max)?;
        if n < 6 {
            return Err(Error::Grid(format!("log-uniform grid needs >= 6 nodes, got {n}")));
        }
        check_density(r_min, r_max, n)?;
        let t0 = r_min.ln();
        let h = (r_max.ln() - t0) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| (t0 + h * i as f64).exp()).collect();
        nodes[0] = r_min;
        nodes[n - 1] = r_max;
        let rules = lagrange6_rules();
        let mut weights = vec![0.0; n];
        for i in 0..n - 1 {
            let (s, j) = interval_window(i, n);
            for m in 0..6 {
                weights[s + m] += h * rules[j][m];
            }
        }
        for (w, r) in weights.iter_mut().zip(&nodes) {
            *w *= r;
        }
        Ok(RadialGrid { nodes, weights, span: (r_min, r_max), layout: Layout::LogUniform { step: h } })
    }

    /// Gauss-Legendre panels in t = ln r between log-spaced breakpoints.
    pub fn gauss_panels(r_min: f64, r_max: f64, panels: usize, order: usize) -> Result<Self> {
        check_range(r_min, r_max)?;
        if panels == 0 || order == 0 {
            return Err(Error::Grid("panel grid needs panels >= 1 and order >= 1".into()));
        }
        check_density(r_min, r_max, panels * order)?;
        let t0 = r_min.ln();
        let dt = (r_max.ln() - t0) / panels as f64;
        let breaks: Vec<f64> = (0..=panels).map(|p| (t0 + dt * p as f64).exp()).collect();
        let (nodes, weights) = panel_rule(&breaks, order);
        Ok(RadialGrid {
            nodes,
            weights,
            span: (r_min, r_max),
            layout: Layout::GaussPanels { panels, order },
        })
    }

    /// Gauss-Legendre panels between consecutive `breaks` (strictly increasing, positive).
    pub fn gauss_breaks(breaks: Vec<f64>, order: usize) -> Result<Self> {
        if breaks.len() < 2 || order == 0 {
            return Err(Error::Grid("need at least one panel and order >= 1".into()));
        }
        if !(breaks[0] > 0.0) || breaks.windows(2).any(|w| !(w[1] > w[0])) || !breaks[breaks.len() - 1].is_finite() {
            return Err(Error::Grid("panel breaks must be positive, finite and increasing".into()));
        }
        let (nodes, weights) = panel_rule(&breaks, order);
        let span = (breaks[0], breaks[breaks.len() - 1]);
        Ok(RadialGrid { nodes, weights, span, layout: Layout::GaussBreaks { breaks, order } })
    }

    /// Grid from arbitrary nodes. Log-uniform spacing is detected and gets the
    /// high-order rule; anything else falls back to trapezoid weights.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        let n = nodes.len();
        if n < 2 {
            return Err(Error::Grid("need at least 2 nodes".into()));
        }
        if nodes.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::Grid("nodes must be positive and finite".into()));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Grid("nodes must be strictly increasing".into()));
        }
        if n >= 6 {
            let h = (nodes[n - 1] / nodes[0]).ln() / (n - 1) as f64;
            let uniform = nodes
                .windows(2)
                .all(|w| ((w[1] / w[0]).ln() - h).abs() <= 1e-9 * h.abs().max(1e-300));
            if uniform {
                return Self::log_uniform(nodes[0], nodes[n - 1], n);
            }
        }
        check_density(nodes[0], nodes[n - 1], n)?;
        let mut weights = vec![0.0; n];
        for i in 0..n - 1 {
            let d = 0.5 * (nodes[i + 1] - nodes[i]);
            weights[i] += d;
            weights[i + 1] += d;
        }
        let span = (nodes[0], nodes[n - 1]);
        Ok(RadialGrid { nodes, weights, span, layout: Layout::Irregular })
    }

    /// Log-uniform grid on [1e-6, 60/decay] with 2048 nodes.
    pub fn default_for_decay(decay: f64) -> Result<Self> {
        if !(decay > 0.0 && decay.is_finite()) {
            return Err(Error::Grid(format!("decay rate must be positive, got {decay}")));
        }
        Self::log_uniform(DEFAULT_R_MIN, DEFAULT_DECAY_LENGTHS / decay, DEFAULT_NODES)
    }

    /// Same range with the log step halved (log-uniform) or the panel count
    /// doubled (Gauss panels). Old log-uniform nodes are a subset of the new ones.
    pub fn refined(&self) -> Result<Self> {
        match &self.layout {
            Layout::LogUniform { .. } => {
                Self::log_uniform(self.r_min(), self.r_max(), 2 * self.len() - 1)
            }
            Layout::GaussPanels { panels, order } => {
                Self::gauss_panels(self.span.0, self.span.1, 2 * panels, *order)
            }
            Layout::GaussBreaks { breaks, order } => {
                let mut finer = Vec::with_capacity(2 * breaks.len() - 1);
                for w in breaks.windows(2) {
                    finer.push(w[0]);
                    finer.push((w[0] * w[1]).sqrt());
                }
                finer.push(breaks[breaks.len() - 1]);
                Self::gauss_breaks(finer, *order)
            }
            Layout::Irregular => {
                let mut nodes = Vec::with_capacity(2 * self.len() - 1);
                for w in self.nodes.windows(2) {
                    nodes.push(w[0]);
                    nodes.push((w[0] * w[1]).sqrt());
                }
                nodes.push(self.r_max());
                Self::from_nodes(nodes)
            }
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Lower integration limit (the first node except on panel grids).
    pub fn r_min(&self) -> f64 {
        self.span.0
    }

    /// Upper integration limit.
    pub fn r_max(&self) -> f64 {
        self.span.1
    }

    /// Index range used for interior norms: drops [`EDGE_NODES`] at each end.
    pub fn interior(&self) -> std::ops::Range<usize> {
        let hi = self.len().saturating_sub(EDGE_NODES);
        EDGE_NODES.min(hi)..hi
    }

    /// [`RadialGrid::interior`] without the nodes below [`RESIDUAL_CUTOFF`] * r_min.
    pub fn residual_range(&self) -> std::ops::Range<usize> {
        let range = self.interior();
        let cut = RESIDUAL_CUTOFF * self.r_min();
        let lo = self.nodes.partition_point(|&r| r < cut).max(range.start);
        lo.min(range.end)..range.end
    }

    /// Step in ln r for log-uniform grids.
    pub fn log_step(&self) -> Option<f64> {
        match self.layout {
            Layout::LogUniform { step } => Some(step),
            _ => None,
        }
    }

    pub fn is_log_uniform(&self) -> bool {
        self.log_step().is_some()
    }

    fn require_log_uniform(&self, what: &str) -> Result<f64> {
        self.log_step()
            .ok_or_else(|| Error::Grid(format!("{what} needs a log-uniform grid")))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::Shape(format!(
                "{len} samples on a grid of {} nodes",
                self.len()
            )));
        }
        Ok(())
    }

    /// Weighted sum over the grid.
    pub fn integrate(&self, values: &[Complex64]) -> Result<Complex64> {
        self.check_len(values.len())?;
        Ok(values.iter().zip(&self.weights).map(|(v, w)| v * w).sum())
    }

    /// Running integral from r_min to each node (log-uniform grids only).
    pub fn cumulative(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        let h = self.require_log_uniform("cumulative integration")?;
        self.check_len(values.len())?;
        let n = self.len();
        let rules = lagrange6_rules();
        let y: Vec<Complex64> = values.iter().zip(&self.nodes).map(|(v, r)| v * r).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n - 1 {
            let (s, j) = interval_window(i, n);
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..6 {
                acc += y[s + m] * rules[j][m];
            }
            out[i + 1] = out[i] + acc * h;
        }
        Ok(out)
    }

    /// Running integral from each node to r_max (log-uniform grids only).
    pub fn cumulative_rev(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        let h = self.require_log_uniform("cumulative integration")?;
        self.check_len(values.len())?;
        let n = self.len();
        let rules = lagrange6_rules();
        let y: Vec<Complex64> = values.iter().zip(&self.nodes).map(|(v, r)| v * r).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..n - 1).rev() {
            let (s, j) = interval_window(i, n);
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..6 {
                acc += y[s + m] * rules[j][m];
            }
            out[i] = out[i + 1] + acc * h;
        }
        Ok(out)
    }

    /// First or second r-derivative by 4th-order differences in ln r.
    pub fn diff(&self, values: &[Complex64], order: u8) -> Result<Vec<Complex64>> {
        let h = self.require_log_uniform("differentiation")?;
        self.check_len(values.len())?;
        if self.len() < 6 {
            return Err(Error::Grid("differentiation needs >= 6 nodes".into()));
        }
        let ft = diff_t1(values, h);
        match order {
            1 => Ok(ft.iter().zip(&self.nodes).map(|(d, r)| d / r).collect()),
            2 => {
                let ftt = diff_t2(values, h);
                Ok(ftt
                    .iter()
                    .zip(&ft)
                    .zip(&self.nodes)
                    .map(|((a, b), r)| (a - b) / (r * r))
                    .collect())
            }
            _ => Err(Error::Domain(format!("derivative order {order} not in {{1, 2}}"))),
        }
    }
}

impl RadialGrid {
    /// Stencil magnitudes matching [`RadialGrid::diff`]: the derivative formula
    /// applied with every coefficient replaced by its absolute value and every
    /// sample by its modulus. Bounds how far rounding in `values` can move the
    /// computed derivative.
    pub fn diff_scale(&self, values: &[Complex64], order: u8) -> Result<Vec<f64>> {
        let h = self.require_log_uniform("differentiation")?;
        self.check_len(values.len())?;
        if self.len() < 6 {
            return Err(Error::Grid("differentiation needs >= 6 nodes".into()));
        }
        let a: Vec<f64> = values.iter().map(|v| v.norm()).collect();
        let t1 = abs_stencil(&a, &D1_ROWS, 12.0 * h);
        match order {
            1 => Ok(t1.iter().zip(&self.nodes).map(|(d, r)| d / r).collect()),
            2 => {
                let t2 = abs_stencil(&a, &D2_ROWS, 12.0 * h * h);
                Ok(t2
                    .iter()
                    .zip(&t1)
                    .zip(&self.nodes)
                    .map(|((x, y), r)| (x + y) / (r * r))
                    .collect())
            }
            _ => Err(Error::Domain(format!("derivative order {order} not in {{1, 2}}"))),
        }
    }
}

// Rows: first edge node, second edge node, centred (offsets -2..=2).
const D1_ROWS: [[f64; 6]; 3] = [
    [25.0, 48.0, 36.0, 16.0, 3.0, 0.0],
    [3.0, 10.0, 18.0, 6.0, 1.0, 0.0],
    [1.0, 8.0, 0.0, 8.0, 1.0, 0.0],
];
const D2_ROWS: [[f64; 6]; 3] = [
    [45.0, 154.0, 214.0, 156.0, 61.0, 10.0],
    [10.0, 15.0, 4.0, 14.0, 6.0, 1.0],
    [1.0, 16.0, 30.0, 16.0, 1.0, 0.0],
];

fn abs_stencil(a: &[f64], rows: &[[f64; 6]; 3], den: f64) -> Vec<f64> {
    let n = a.len();
    let m = |i: usize| a[i];
    let edge = |row: &[f64; 6], at: &dyn Fn(usize) -> f64| {
        row.iter().enumerate().map(|(j, c)| c * at(j)).sum::<f64>() / den
    };
    let mut d = vec![0.0; n];
    for i in 2..n - 2 {
        d[i] = (0..5).map(|j| rows[2][j] * m(i + j - 2)).sum::<f64>() / den;
    }
    d[0] = edge(&rows[0], &|j| m(j));
    d[1] = edge(&rows[1], &|j| m(j));
    d[n - 1] = edge(&rows[0], &|j| m(n - 1 - j));
    d[n - 2] = edge(&rows[1], &|j| m(n - 1 - j));
    d
}

fn diff_t1(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    let s = 1.0 / (12.0 * h);
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * s;
    }
    d[0] = (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * s;
    d[1] = (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * s;
    let e = n - 1;
    d[e] = -(f[e] * -25.0 + f[e - 1] * 48.0 - f[e - 2] * 36.0 + f[e - 3] * 16.0 - f[e - 4] * 3.0) * s;
    d[e - 1] = -(f[e] * -3.0 - f[e - 1] * 10.0 + f[e - 2] * 18.0 - f[e - 3] * 6.0 + f[e - 4]) * s;
    d
}

fn diff_t2(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    let s = 1.0 / (12.0 * h * h);
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        d[i] = (-f[i - 2] + f[i - 1] * 16.0 - f[i] * 30.0 + f[i + 1] * 16.0 - f[i + 2]) * s;
    }
    let one_sided = |g: &dyn Fn(usize) -> Complex64| {
        (
            (g(0) * 45.0 - g(1) * 154.0 + g(2) * 214.0 - g(3) * 156.0 + g(4) * 61.0 - g(5) * 10.0) * s,
            (g(0) * 10.0 - g(1) * 15.0 - g(2) * 4.0 + g(3) * 14.0 - g(4) * 6.0 + g(5)) * s,
        )
    };
    let (a, b) = one_sided(&|i| f[i]);
    d[0] = a;
    d[1] = b;
    let e = n - 1;
    let (a, b) = one_sided(&|i| f[e - i]);
    d[e] = a;
    d[e - 1] = b;
    d
}

/// Least-squares coefficients of `values` against powers r^{p_j} over nodes in
/// `window`. Columns are rescaled to the window's upper edge before an
/// orthogonal (modified Gram-Schmidt) solve.
pub fn fit_powers(
    grid: &RadialGrid,
    values: &[Complex64],
    window: (f64, f64),
    exponents: &[f64],
) -> Result<Vec<Complex64>> {
    grid.check_len(values.len())?;
    let idx: Vec<usize> = (0..grid.len())
        .filter(|&i| grid.nodes[i] >= window.0 && grid.nodes[i] <= window.1)
        .collect();
    let p = exponents.len();
    if idx.len() < p + 2 {
        return Err(Error::Grid(format!(
            "only {} nodes in fit window [{}, {}]",
            idx.len(),
            window.0,
            window.1
        )));
    }
    let r_ref = window.1;
    let mut cols: Vec<Vec<f64>> = exponents
        .iter()
        .map(|e| idx.iter().map(|&i| (grid.nodes[i] / r_ref).powf(*e)).collect())
        .collect();
    let mut rhs: Vec<Complex64> = idx.iter().map(|&i| values[i]).collect();
    // QR by modified Gram-Schmidt, applied to the right-hand side as we go
    let mut rmat = vec![vec![0.0; p]; p];
    let mut qtb = vec![Complex64::new(0.0, 0.0); p];
    for j in 0..p {
        for k in 0..j {
            let d: f64 = cols[k].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
            rmat[k][j] = d;
            let ck = cols[k].clone();
            for (x, q) in cols[j].iter_mut().zip(&ck) {
                *x -= d * q;
            }
        }
        let nrm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm == 0.0 {
            return Err(Error::Domain("degenerate fit basis".into()));
        }
        rmat[j][j] = nrm;
        for x in cols[j].iter_mut() {
            *x /= nrm;
        }
        let d: Complex64 = cols[j].iter().zip(&rhs).map(|(q, b)| b * q).sum();
        qtb[j] = d;
        for (b, q) in rhs.iter_mut().zip(&cols[j]) {
            *b -= d * q;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); p];
    for j in (0..p).rev() {
        let mut s = qtb[j];
        for k in j + 1..p {
            s -= x[k] * rmat[j][k];
        }
        x[j] = s / rmat[j][j];
    }
    Ok(x
        .into_iter()
        .zip(exponents)
        .map(|(c, e)| c / r_ref.powf(*e))
        .collect())
}

/// Complex samples of a scalar function on a grid.
#[derive(Debug, Clone)]
pub struct RadialFn {
    grid: Arc<RadialGrid>,
    values: Vec<Complex64>,
}

impl RadialFn {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<Complex64>) -> Result<Self> {
        grid.check_len(values.len())?;
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain("non-finite sample".into()));
        }
        Ok(RadialFn { grid, values })
    }

    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.nodes.iter().map(|&r| f(r)).collect();
        Self::new(grid, values)
    }

    pub fn try_from_fn(
        grid: Arc<RadialGrid>,
        f: impl Fn(f64) -> Result<Complex64>,
    ) -> Result<Self> {
        let values = grid.nodes.iter().map(|&r| f(r)).collect::<Result<Vec<_>>>()?;
        Self::new(grid, values)
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let n = grid.len();
        RadialFn { grid, values: vec![Complex64::new(0.0, 0.0); n] }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn scale(&self, a: Complex64) -> Self {
        RadialFn { grid: self.grid.clone(), values: self.values.iter().map(|v| v * a).collect() }
    }

    pub fn add(&self, other: &RadialFn) -> Result<Self> {
        self.grid.check_len(other.values.len())?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(RadialFn { grid: self.grid.clone(), values })
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let values = self.grid.nodes.iter().zip(&self.values).map(|(&r, &v)| f(r, v)).collect();
        RadialFn { grid: self.grid.clone(), values }
    }

    pub fn diff(&self, order: u8) -> Result<RadialFn> {
        Ok(RadialFn { grid: self.grid.clone(), values: self.grid.diff(&self.values, order)? })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// L^2 norm over the interior nodes (see [`RadialGrid::interior`]).
    pub fn l2_interior(&self) -> f64 {
        interior_sq(&self.grid, &self.values).sqrt()
    }

    /// L^2 norm over the whole grid.
    pub fn l2(&self) -> f64 {
        quad(&self.map(|_, v| v.norm_sqr().into())).re.sqrt()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["r", "re", "im"])?;
        for (r, v) in self.grid.nodes.iter().zip(&self.values) {
            wr.write_record([fmt(*r), fmt(v.re), fmt(v.im)])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(rd: R) -> Result<Self> {
        let (nodes, cols) = read_columns(rd, 2)?;
        let values = cols[0].clone();
        Self::new(Arc::new(RadialGrid::from_nodes(nodes)?), values)
    }
}

/// Two-component complex samples (upper, lower) on a grid.
#[derive(Debug, Clone)]
pub struct RadialSpinor {
    grid: Arc<RadialGrid>,
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
}

impl RadialSpinor {
    pub fn new(grid: Arc<RadialGrid>, upper: Vec<Complex64>, lower: Vec<Complex64>) -> Result<Self> {
        grid.check_len(upper.len())?;
        grid.check_len(lower.len())?;
        if upper.iter().chain(&lower).any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain("non-finite sample".into()));
        }
        Ok(RadialSpinor { grid, upper, lower })
    }

    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> [Complex64; 2]) -> Result<Self> {
        let (upper, lower) = grid.nodes.iter().map(|&r| f(r)).map(|[a, b]| (a, b)).unzip();
        Self::new(grid, upper, lower)
    }

    pub fn try_from_fn(
        grid: Arc<RadialGrid>,
        f: impl Fn(f64) -> Result<[Complex64; 2]>,
    ) -> Result<Self> {
        let mut upper = Vec::with_capacity(grid.len());
        let mut lower = Vec::with_capacity(grid.len());
        for &r in &grid.nodes {
            let [a, b] = f(r)?;
            upper.push(a);
            lower.push(b);
        }
        Self::new(grid, upper, lower)
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let n = grid.len();
        let z = vec![Complex64::new(0.0, 0.0); n];
        RadialSpinor { grid, upper: z.clone(), lower: z }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn upper(&self) -> &[Complex64] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex64] {
        &self.lower
    }

    pub fn upper_fn(&self) -> RadialFn {
        RadialFn { grid: self.grid.clone(), values: self.upper.clone() }
    }

    pub fn lower_fn(&self) -> RadialFn {
        RadialFn { grid: self.grid.clone(), values: self.lower.clone() }
    }

    pub fn from_components(upper: &RadialFn, lower: &RadialFn) -> Result<Self> {
        Self::new(upper.grid.clone(), upper.values.clone(), lower.values.clone())
    }

    pub fn scale(&self, a: Complex64) -> Self {
        RadialSpinor {
            grid: self.grid.clone(),
            upper: self.upper.iter().map(|v| v * a).collect(),
            lower: self.lower.iter().map(|v| v * a).collect(),
        }
    }

    pub fn add(&self, other: &RadialSpinor) -> Result<Self> {
        self.grid.check_len(other.upper.len())?;
        Ok(RadialSpinor {
            grid: self.grid.clone(),
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a + b).collect(),
            lower: self.lower.iter().zip(&other.lower).map(|(a, b)| a + b).collect(),
        })
    }

    /// Pointwise max of |upper| and |lower|.
    pub fn max_abs(&self) -> f64 {
        self.upper.iter().chain(&self.lower).map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// L^2 norm over the interior nodes (see [`RadialGrid::interior`]).
    pub fn l2_interior(&self) -> f64 {
        (interior_sq(&self.grid, &self.upper) + interior_sq(&self.grid, &self.lower)).sqrt()
    }

    pub fn l2(&self) -> f64 {
        self.upper_fn().l2().hypot(self.lower_fn().l2())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["r", "re_upper", "im_upper", "re_lower", "im_lower"])?;
        for i in 0..self.grid.len() {
            wr.write_record([
                fmt(self.grid.nodes[i]),
                fmt(self.upper[i].re),
                fmt(self.upper[i].im),
                fmt(self.lower[i].re),
                fmt(self.lower[i].im),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(rd: R) -> Result<Self> {
        let (nodes, mut cols) = read_columns(rd, 4)?;
        let lower = cols.pop().unwrap_or_default();
        let upper = cols.pop().unwrap_or_default();
        Self::new(Arc::new(RadialGrid::from_nodes(nodes)?), upper, lower)
    }
}

fn interior_sq(grid: &RadialGrid, v: &[Complex64]) -> f64 {
    grid.interior().map(|i| v[i].norm_sqr() * grid.weights[i]).sum()
}

pub(crate) fn fmt(x: f64) -> String {
    // shortest round-trip representation
    format!("{x:e}")
}

fn read_columns<R: Read>(rd: R, ncols: usize) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let mut rdr = csv::Reader::from_reader(rd);
    let mut nodes = Vec::new();
    let mut cols = vec![Vec::new(); ncols / 2];
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != ncols + 1 {
            return Err(Error::Shape(format!(
                "expected {} columns, found {}",
                ncols + 1,
                rec.len()
            )));
        }
        let nums = rec
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Io(format!("bad number: {e}")))?;
        nodes.push(nums[0]);
        for (c, col) in cols.iter_mut().enumerate() {
            col.push(Complex64::new(nums[1 + 2 * c], nums[2 + 2 * c]));
        }
    }
    Ok((nodes, cols))
}

/// Integral of a sampled function over the grid.
pub fn quad(f: &RadialFn) -> Complex64 {
    f.values.iter().zip(&f.grid.weights).map(|(v, w)| v * w).sum()
}

/// Integral over (0, r_max], adding the piece on (0, r_min) from the power law
/// f ~ f(r_min)(r/r_min)^p.
pub fn quad_from_origin(f: &RadialFn, edge_exponent: f64) -> Result<Complex64> {
    if !(edge_exponent > -1.0) {
        return Err(Error::Domain(format!(
            "edge exponent {edge_exponent} is not integrable at the origin"
        )));
    }
    let lo = f.grid.r_min();
    let r0 = f.grid.nodes[0];
    let p = edge_exponent;
    Ok(quad(f) + f.values[0] * (r0.powf(-p) * lo.powf(p + 1.0) / (p + 1.0)))
}

/// L^2 inner product <f, g> (antilinear in f).
pub fn inner(f: &RadialFn, g: &RadialFn) -> Result<Complex64> {
    f.grid.check_len(g.values.len())?;
    Ok(f.values
        .iter()
        .zip(&g.values)
        .zip(&f.grid.weights)
        .map(|((a, b), w)| a.conj() * b * w)
        .sum())
}

/// L^2 inner product of spinors.
pub fn inner_spinor(f: &RadialSpinor, g: &RadialSpinor) -> Result<Complex64> {
    Ok(inner(&f.upper_fn(), &g.upper_fn())? + inner(&f.lower_fn(), &g.lower_fn())?)
}
