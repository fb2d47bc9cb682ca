//! Angular decomposition of fields on a polar grid into radial blocks and the
//! block-wise action of the two-dimensional operators.
//!
//! Scalar fields: block k carries the e^{ik theta} mode,
//! b_k(r) = sqrt(r) (2 pi)^{-1/2} int e^{-ik theta} f(r, theta) d theta.
//! Spinor fields: block k carries e^{ik theta} in the upper and
//! e^{i(k-1) theta} in the lower component. With these labels block k of the
//! AB operators is the radial operator of `dirac` / `schrod` at the same k.

use crate::dirac::{apply_dirac, DiracParams};
use crate::error::{Error, Result};
use crate::radial::{fmt, RadialFn, RadialGrid, RadialSpinor};
use crate::schrod::{apply_schrod, SchrodParams};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use std::io::{Read, Write};
use std::sync::Arc;

pub const MIN_N_THETA: usize = 16;

/// Input of [`apply_2d_via_blocks`] must vanish below this multiple of r_min.
pub const SUPPORT_MARGIN: f64 = 10.0;

/// Samples on the product of a radial grid and n_theta equispaced angles
/// theta_j = 2 pi j / n_theta, with one or two components.
#[derive(Debug, Clone)]
pub struct PolarField {
    grid: Arc<RadialGrid>,
    n_theta: usize,
    // values[c][i * n_theta + j]
    values: Vec<Vec<Complex64>>,
}

fn check_n_theta(n: usize) -> Result<()> {
    if n < MIN_N_THETA || !n.is_power_of_two() {
        return Err(Error::Shape(format!(
            "n_theta must be a power of two >= {MIN_N_THETA}, got {n}"
        )));
    }
    Ok(())
}

impl PolarField {
    pub fn new(grid: Arc<RadialGrid>, n_theta: usize, values: Vec<Vec<Complex64>>) -> Result<Self> {
        check_n_theta(n_theta)?;
        if !(values.len() == 1 || values.len() == 2) {
            return Err(Error::Shape(format!("1 or 2 components expected, got {}", values.len())));
        }
        let want = grid.len() * n_theta;
        for v in &values {
            if v.len() != want {
                return Err(Error::Shape(format!("{} samples, expected {want}", v.len())));
            }
            if v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::Domain("non-finite sample".into()));
            }
        }
        Ok(PolarField { grid, n_theta, values })
    }

    pub fn scalar_from_fn(
        grid: Arc<RadialGrid>,
        n_theta: usize,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        check_n_theta(n_theta)?;
        let v = Self::sample(&grid, n_theta, f);
        Self::new(grid, n_theta, vec![v])
    }

    pub fn spinor_from_fn(
        grid: Arc<RadialGrid>,
        n_theta: usize,
        f: impl Fn(f64, f64) -> [Complex64; 2],
    ) -> Result<Self> {
        check_n_theta(n_theta)?;
        let up = Self::sample(&grid, n_theta, |r, t| f(r, t)[0]);
        let lo = Self::sample(&grid, n_theta, |r, t| f(r, t)[1]);
        Self::new(grid, n_theta, vec![up, lo])
    }

    fn sample(grid: &RadialGrid, n_theta: usize, f: impl Fn(f64, f64) -> Complex64) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(grid.len() * n_theta);
        for &r in grid.nodes() {
            for j in 0..n_theta {
                v.push(f(r, theta(j, n_theta)));
            }
        }
        v
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn components(&self) -> usize {
        self.values.len()
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        &self.values[c]
    }

    pub fn at(&self, c: usize, i: usize, j: usize) -> Complex64 {
        self.values[c][i * self.n_theta + j]
    }

    /// Discrete polar L^2 norm, sum_i w_i r_i (2 pi / n) sum_j |f_ij|^2 over components.
    pub fn l2(&self) -> f64 {
        self.l2_over(0..self.grid.len())
    }

    /// As [`PolarField::l2`], restricted to radial nodes in `range`.
    pub fn l2_over(&self, range: std::ops::Range<usize>) -> f64 {
        let dth = 2.0 * PI / self.n_theta as f64;
        let mut s = 0.0;
        for i in range {
            let wr = self.grid.weights()[i] * self.grid.nodes()[i] * dth;
            for v in &self.values {
                s += wr * v[i * self.n_theta..(i + 1) * self.n_theta].iter().map(|z| z.norm_sqr()).sum::<f64>();
            }
        }
        s.sqrt()
    }

    /// Difference with another field on the same grid.
    pub fn sub(&self, other: &PolarField) -> Result<PolarField> {
        if self.n_theta != other.n_theta
            || self.components() != other.components()
            || self.grid.nodes() != other.grid.nodes()
        {
            return Err(Error::Shape("fields live on different grids".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(PolarField { grid: self.grid.clone(), n_theta: self.n_theta, values })
    }

    /// CSV with columns r, theta, then re/im per component.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        if self.components() == 1 {
            wr.write_record(["r", "theta", "re", "im"])?;
        } else {
            wr.write_record(["r", "theta", "re_upper", "im_upper", "re_lower", "im_lower"])?;
        }
        for (i, &r) in self.grid.nodes().iter().enumerate() {
            for j in 0..self.n_theta {
                let mut rec = vec![fmt(r), fmt(theta(j, self.n_theta))];
                for v in &self.values {
                    let z = v[i * self.n_theta + j];
                    rec.push(fmt(z.re));
                    rec.push(fmt(z.im));
                }
                wr.write_record(&rec)?;
            }
        }
        wr.flush()?;
        Ok(())
    }

    /// Inverse of [`PolarField::write_csv`]. Rows must come r-major with the
    /// angles of each r in increasing order.
    pub fn read_csv<R: Read>(rd: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(rd);
        let ncomp = match rdr.headers()?.len() {
            4 => 1,
            6 => 2,
            n => return Err(Error::Io(format!("expected 4 or 6 columns, got {n}"))),
        };
        let mut rs: Vec<f64> = Vec::new();
        let mut values = vec![Vec::new(); ncomp];
        let mut count = 0usize;
        for rec in rdr.records() {
            let rec = rec?;
            let num = |k: usize| -> Result<f64> {
                rec[k].parse::<f64>().map_err(|e| Error::Io(format!("bad number {:?}: {e}", &rec[k])))
            };
            let r = num(0)?;
            if rs.last() != Some(&r) {
                rs.push(r);
            }
            for (c, v) in values.iter_mut().enumerate() {
                v.push(Complex64::new(num(2 + 2 * c)?, num(3 + 2 * c)?));
            }
            count += 1;
        }
        if rs.is_empty() || !count.is_multiple_of(rs.len()) {
            return Err(Error::Shape("rows do not form a product grid".into()));
        }
        let grid = Arc::new(RadialGrid::from_nodes(rs)?);
        let n_theta = count / grid.len();
        PolarField::new(grid, n_theta, values)
    }
}

fn theta(j: usize, n: usize) -> f64 {
    2.0 * PI * j as f64 / n as f64
}

/// Radial blocks k_min, k_min + 1, ... of a decomposed field.
#[derive(Debug, Clone)]
pub struct BlockStack<T> {
    k_min: i32,
    n_theta: usize,
    blocks: Vec<T>,
}

impl<T> BlockStack<T> {
    /// k = -n/2 .. n/2 - 1 for n = n_theta.
    pub fn new(n_theta: usize, blocks: Vec<T>) -> Result<Self> {
        check_n_theta(n_theta)?;
        if blocks.len() != n_theta {
            return Err(Error::Shape(format!("{} blocks for n_theta = {n_theta}", blocks.len())));
        }
        Ok(BlockStack { k_min: -(n_theta as i32) / 2, n_theta, blocks })
    }

    pub fn k_range(&self) -> std::ops::RangeInclusive<i32> {
        self.k_min..=self.k_min + self.blocks.len() as i32 - 1
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn block(&self, k: i32) -> Option<&T> {
        let idx = k.checked_sub(self.k_min)?;
        usize::try_from(idx).ok().and_then(|i| self.blocks.get(i))
    }

    pub fn blocks(&self) -> &[T] {
        &self.blocks
    }

    /// (k, block) pairs in increasing k.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &T)> {
        self.blocks.iter().enumerate().map(move |(i, b)| (self.k_min + i as i32, b))
    }
}

fn fft_rows(data: &mut [Complex64], n: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    data.par_chunks_mut(n).for_each(|row| fft.process(row));
}

/// Fourier coefficients of one component: out[k - k_min][i] for mode k + shift.
fn analyse(f: &PolarField, c: usize, shift: i32) -> Vec<Vec<Complex64>> {
    let n = f.n_theta;
    let nr = f.grid.len();
    let mut data = f.values[c].clone();
    fft_rows(&mut data, n, false);
    let norm = (2.0 * PI).sqrt() / n as f64;
    let k_min = -(n as i32) / 2;
    (0..n as i32)
        .map(|b| {
            let mode = (k_min + b + shift).rem_euclid(n as i32) as usize;
            (0..nr).map(|i| data[i * n + mode] * (f.grid.nodes()[i].sqrt() * norm)).collect()
        })
        .collect()
}

/// Inverse of [`analyse`].
fn synthesise(grid: &RadialGrid, n: usize, coeffs: &[&[Complex64]], shift: i32) -> Vec<Complex64> {
    let nr = grid.len();
    let k_min = -(n as i32) / 2;
    let mut data = vec![Complex64::new(0.0, 0.0); nr * n];
    let norm = 1.0 / (2.0 * PI).sqrt();
    for (b, col) in coeffs.iter().enumerate() {
        let mode = (k_min + b as i32 + shift).rem_euclid(n as i32) as usize;
        for i in 0..nr {
            data[i * n + mode] = col[i] * (norm / grid.nodes()[i].sqrt());
        }
    }
    fft_rows(&mut data, n, true);
    data
}

pub fn decompose_scalar(f: &PolarField) -> Result<BlockStack<RadialFn>> {
    if f.components() != 1 {
        return Err(Error::Shape("scalar decomposition needs a 1-component field".into()));
    }
    let blocks = analyse(f, 0, 0)
        .into_iter()
        .map(|v| RadialFn::new(f.grid.clone(), v))
        .collect::<Result<Vec<_>>>()?;
    BlockStack::new(f.n_theta, blocks)
}

pub fn reconstruct_scalar(b: &BlockStack<RadialFn>) -> Result<PolarField> {
    let grid = b.blocks[0].grid().clone();
    let cols: Vec<&[Complex64]> = b.blocks.iter().map(|x| x.values()).collect();
    let v = synthesise(&grid, b.n_theta, &cols, 0);
    PolarField::new(grid, b.n_theta, vec![v])
}

pub fn decompose_spinor(f: &PolarField) -> Result<BlockStack<RadialSpinor>> {
    if f.components() != 2 {
        return Err(Error::Shape("spinor decomposition needs a 2-component field".into()));
    }
    let up = analyse(f, 0, 0);
    let lo = analyse(f, 1, -1);
    let blocks = up
        .into_iter()
        .zip(lo)
        .map(|(u, l)| RadialSpinor::new(f.grid.clone(), u, l))
        .collect::<Result<Vec<_>>>()?;
    BlockStack::new(f.n_theta, blocks)
}

pub fn reconstruct_spinor(b: &BlockStack<RadialSpinor>) -> Result<PolarField> {
    let grid = b.blocks[0].grid().clone();
    let up: Vec<&[Complex64]> = b.blocks.iter().map(|x| x.upper()).collect();
    let lo: Vec<&[Complex64]> = b.blocks.iter().map(|x| x.lower()).collect();
    let u = synthesise(&grid, b.n_theta, &up, 0);
    let l = synthesise(&grid, b.n_theta, &lo, -1);
    PolarField::new(grid, b.n_theta, vec![u, l])
}

/// Two-dimensional operator applied through its blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Operator2d {
    /// Dirac operator with rest energy included.
    Dirac { alpha: f64, m: f64, c: f64 },
    /// (1/2m) (-i grad - A)^2.
    Schrod { alpha: f64, m: f64 },
}

fn check_support(f: &PolarField) -> Result<()> {
    let cut = SUPPORT_MARGIN * f.grid.r_min();
    let n = f.n_theta;
    for (i, &r) in f.grid.nodes().iter().enumerate() {
        if r >= cut {
            break;
        }
        if f.values.iter().any(|v| v[i * n..(i + 1) * n].iter().any(|z| *z != Complex64::new(0.0, 0.0))) {
            return Err(Error::Domain(format!(
                "field must vanish below {cut} (= {SUPPORT_MARGIN} r_min), nonzero at r = {r}"
            )));
        }
    }
    Ok(())
}

pub fn apply_2d_via_blocks(f: &PolarField, op: Operator2d) -> Result<PolarField> {
    check_support(f)?;
    match op {
        Operator2d::Schrod { alpha, m } => {
            let b = decompose_scalar(f)?;
            let out = b
                .blocks
                .par_iter()
                .enumerate()
                .map(|(i, x)| apply_schrod(&SchrodParams::new(alpha, m, b.k_min + i as i32)?, x))
                .collect::<Result<Vec<_>>>()?;
            reconstruct_scalar(&BlockStack::new(b.n_theta, out)?)
        }
        Operator2d::Dirac { alpha, m, c } => {
            let b = decompose_spinor(f)?;
            let out = b
                .blocks
                .par_iter()
                .enumerate()
                .map(|(i, x)| apply_dirac(&DiracParams::new(alpha, m, c, b.k_min + i as i32)?, x))
                .collect::<Result<Vec<_>>>()?;
            reconstruct_spinor(&BlockStack::new(b.n_theta, out)?)
        }
    }
}

/// Cartesian finite-difference form of the 2D operators, used as an
/// independent check of the block route.
pub mod stencil {
    use super::*;

    /// Vector potential -(alpha + 1/2)(-y, x)/(x^2 + y^2).
    pub fn vector_potential(alpha: f64, x: f64, y: f64) -> (f64, f64) {
        let s = -(alpha + 0.5) / (x * x + y * y);
        (-y * s, x * s)
    }

    /// Kinetic momenta (Pi_1 psi, Pi_2 psi), Pi = -i grad - A, by central differences.
    fn momenta(psi: &dyn Fn(f64, f64) -> Complex64, alpha: f64, x: f64, y: f64, h: f64) -> (Complex64, Complex64) {
        let i = Complex64::new(0.0, 1.0);
        let dx = (psi(x + h, y) - psi(x - h, y)) / (2.0 * h);
        let dy = (psi(x, y + h) - psi(x, y - h)) / (2.0 * h);
        let (a1, a2) = vector_potential(alpha, x, y);
        let p = psi(x, y);
        (-i * dx - p * a1, -i * dy - p * a2)
    }

    /// (1/2m)(-i grad - A)^2 psi at (x, y), 5-point Laplacian with step h.
    pub fn schrod(psi: &dyn Fn(f64, f64) -> Complex64, alpha: f64, m: f64, x: f64, y: f64, h: f64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        let p = psi(x, y);
        let lap = (psi(x + h, y) + psi(x - h, y) + psi(x, y + h) + psi(x, y - h) - p * 4.0) / (h * h);
        let dx = (psi(x + h, y) - psi(x - h, y)) / (2.0 * h);
        let dy = (psi(x, y + h) - psi(x, y - h)) / (2.0 * h);
        let (a1, a2) = vector_potential(alpha, x, y);
        // div A = 0
        (-lap + (dx * a1 + dy * a2) * (2.0 * i) + p * (a1 * a1 + a2 * a2)) / (2.0 * m)
    }

    /// [[mc^2, c(Pi_1 + i Pi_2)], [c(Pi_1 - i Pi_2), -mc^2]] psi at (x, y).
    pub fn dirac(
        psi: &dyn Fn(f64, f64) -> [Complex64; 2],
        alpha: f64,
        m: f64,
        c: f64,
        x: f64,
        y: f64,
        h: f64,
    ) -> [Complex64; 2] {
        let i = Complex64::new(0.0, 1.0);
        let up = |x: f64, y: f64| psi(x, y)[0];
        let lo = |x: f64, y: f64| psi(x, y)[1];
        let (u1, u2) = momenta(&up, alpha, x, y, h);
        let (l1, l2) = momenta(&lo, alpha, x, y, h);
        let mc2 = m * c * c;
        let v = psi(x, y);
        [v[0] * mc2 + (l1 + i * l2) * c, (u1 - i * u2) * c - v[1] * mc2]
    }

    /// The operator evaluated at every polar node with r in `range`; other
    /// radial rows are zero.
    pub fn on_polar_grid(
        grid: Arc<RadialGrid>,
        n_theta: usize,
        range: std::ops::Range<usize>,
        components: usize,
        eval: impl Fn(f64, f64) -> [Complex64; 2] + Sync,
    ) -> Result<PolarField> {
        let nr = grid.len();
        let rows: Vec<Vec<[Complex64; 2]>> = (0..nr)
            .into_par_iter()
            .map(|i| {
                let r = grid.nodes()[i];
                (0..n_theta)
                    .map(|j| {
                        if range.contains(&i) {
                            let t = theta(j, n_theta);
                            eval(r * t.cos(), r * t.sin())
                        } else {
                            [Complex64::new(0.0, 0.0); 2]
                        }
                    })
                    .collect()
            })
            .collect();
        let values = (0..components)
            .map(|c| rows.iter().flat_map(|row| row.iter().map(move |z| z[c])).collect())
            .collect();
        PolarField::new(grid, n_theta, values)
    }
}
