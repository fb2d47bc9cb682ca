use crate::config::{Family, Opts};
use abnrl::dirac::{
    gap_eigenvalue_d, phi_d, reduced_pair, residual_d, resolvent_d, square_bc_map, square_domain_function,
    square_residual, DiracParams,
};
use abnrl::error::{Error, Result};
use abnrl::limits::{
    eigenvalue_limit, positron_tau_limit, rank_one_limit_block, resolvent_norm_limit_block,
    scattering_length_limit, tau_limit, Block, ConvergenceTable, LimitRun,
};
use abnrl::params::ExtParam;
use abnrl::partialwave::{
    apply_2d_via_blocks, decompose_scalar, decompose_spinor, reconstruct_scalar, reconstruct_spinor, stencil,
    Operator2d, PolarField,
};
use abnrl::radial::{RadialFn, RadialGrid, RadialSpinor, DEFAULT_DECAY_LENGTHS, DEFAULT_NODES, DEFAULT_R_MIN};
use abnrl::schrod::{bound_state_s, phi_s, residual_s, resolvent_s, SchrodParams};
use num_complex::Complex64;
use std::sync::Arc;

/// CSV table plus a one-line summary.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub summary: String,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new(), summary: String::new() }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }
}

fn num(x: f64) -> String {
    format!("{:e}", x + 0.0)
}

fn ext(x: ExtParam) -> String {
    match x {
        ExtParam::Finite(v) => num(v),
        ExtParam::Infinite => "inf".into(),
    }
}

fn convergence(name: &str, t: &ConvergenceTable) -> Table {
    let mut out = Table::new(&["c", "metric", "slope"]);
    for row in t.rows() {
        out.rows.push(vec![num(row.c), num(row.metric), row.slope.map(num).unwrap_or_default()]);
    }
    let slope = t.fitted_slope(t.rows()[0].c).map(num).unwrap_or_else(|| "n/a".into());
    out.summary = format!(
        "{name}: final/first = {}, decreasing = {}, slope = {slope}",
        num(t.final_ratio()),
        t.is_decreasing(0.05)
    );
    out
}

pub fn eig(o: &Opts) -> Result<Table> {
    let family = o.family()?;
    let alpha = o.alpha()?;
    let mut t = Table::new(&["family", "alpha", "param", "energy"]);
    let (param, energy, expected) = match family {
        Family::Schrod => {
            let theta = o.theta()?;
            let p = SchrodParams::new(alpha, o.m(), 0)?;
            (theta, bound_state_s(&p, theta)?, theta.finite().is_some_and(|x| x < 0.0))
        }
        Family::Dirac => {
            let gamma = o.gamma()?;
            let p = DiracParams::new(alpha, o.m(), o.c(), 0)?;
            let e = gap_eigenvalue_d(&p, gamma)?.map(|s| -s.value());
            (gamma, e, gamma.finite().is_some_and(|x| x < 0.0))
        }
    };
    let name = match family {
        Family::Dirac => "dirac",
        Family::Schrod => "schrod",
    };
    match energy {
        Some(e) => t.rows.push(vec![name.into(), num(alpha), ext(param), num(e)]),
        None if expected => return Err(Error::MissingEigenvalue { c: o.c() }),
        None => {}
    }
    t.summary = format!("eig: {} eigenvalue(s)", t.rows.len());
    Ok(t)
}

pub fn scatlen(o: &Opts) -> Result<Table> {
    let rows = scattering_length_limit(o.finite_theta()?, o.alpha()?, o.m(), &o.c_sweep())?;
    let mut t = Table::new(&["c", "gamma", "r_dirac", "r_schrod", "rel_diff", "node", "node_rel_err"]);
    let (mut worst, mut worst_node) = (0.0f64, 0.0f64);
    for r in &rows {
        worst = worst.max(r.rel_diff());
        worst_node = worst_node.max(r.node_rel_err());
        t.rows.push(vec![
            num(r.c),
            num(r.gamma),
            num(r.r_dirac),
            num(r.r_schrod),
            num(r.rel_diff()),
            num(r.node),
            num(r.node_rel_err()),
        ]);
    }
    t.summary = format!("scatlen: max rel diff = {}, max node error = {}", num(worst), num(worst_node));
    Ok(t)
}

fn run(o: &Opts) -> Result<LimitRun> {
    LimitRun::new(o.theta()?, o.alpha()?, o.m(), o.lambda.unwrap_or(1.0), o.c_sweep())
}

fn block(o: &Opts) -> Block {
    o.block.map(Block::from).unwrap_or(Block::Full)
}

pub fn tau_limit_cmd(o: &Opts) -> Result<Table> {
    Ok(convergence("tau-limit", &tau_limit(&run(o)?)?))
}

pub fn kernel_limit(o: &Opts) -> Result<Table> {
    Ok(convergence("kernel-limit", &rank_one_limit_block(&run(o)?, block(o))?))
}

pub fn norm_limit(o: &Opts) -> Result<Table> {
    Ok(convergence("norm-limit", &resolvent_norm_limit_block(&run(o)?, block(o))?))
}

pub fn eig_limit(o: &Opts) -> Result<Table> {
    Ok(convergence("eig-limit", &eigenvalue_limit(o.finite_theta()?, o.alpha()?, o.m(), &o.c_sweep())?))
}

pub fn positron_limit(o: &Opts) -> Result<Table> {
    let t = positron_tau_limit(o.theta()?, o.alpha()?, o.m(), o.lambda.unwrap_or(1.0), &o.c_sweep())?;
    Ok(convergence("positron-limit", &t))
}

/// Smooth bump in log r, supported on [e^{-2.5}, e^{2.5}].
fn bump(r: f64) -> f64 {
    let s = r.ln() / 2.5;
    if s.abs() < 1.0 {
        (-1.0 / (1.0 - s * s)).exp()
    } else {
        0.0
    }
}

fn grids(o: &Opts, decay: f64) -> Result<[Arc<RadialGrid>; 2]> {
    let g = RadialGrid::log_uniform(DEFAULT_R_MIN, DEFAULT_DECAY_LENGTHS / decay, o.nodes.unwrap_or(DEFAULT_NODES))?;
    let fine = g.refined()?;
    Ok([Arc::new(g), Arc::new(fine)])
}

pub fn resolvent_check(o: &Opts) -> Result<Table> {
    let family = o.family()?;
    let alpha = o.alpha()?;
    let mut t = Table::new(&["family", "alpha", "param", "nodes", "residual", "residual_refined", "ratio"]);
    let mut worst = 0.0f64;
    let mut worst_ratio = f64::INFINITY;
    let nodes = o.nodes.unwrap_or(DEFAULT_NODES);
    match family {
        Family::Dirac => {
            let p = DiracParams::new(alpha, o.m(), o.c(), 0)?;
            let lam = p.shift(o.lambda.unwrap_or(0.4))?;
            let gs = grids(o, phi_d(&p, lam)?.rate())?;
            let params = o.params_or(&[ExtParam::Infinite, ExtParam::Finite(0.0), ExtParam::Finite(-0.7), ExtParam::Finite(-2.0)]);
            for g in params {
                let mut res = [0.0; 2];
                for (k, grid) in gs.iter().enumerate() {
                    let src = RadialSpinor::from_fn(grid.clone(), |r| {
                        [Complex64::new(bump(r), 0.3 * bump(r)), Complex64::new(0.0, -r * bump(r))]
                    })?;
                    res[k] = residual_d(&p, lam, &resolvent_d(&p, lam, g, &src)?, &src)?;
                }
                worst = worst.max(res[0]);
                worst_ratio = worst_ratio.min(res[0] / res[1]);
                t.rows.push(vec!["dirac".into(), num(alpha), ext(g), nodes.to_string(), num(res[0]), num(res[1]), num(res[0] / res[1])]);
            }
        }
        Family::Schrod => {
            let p = SchrodParams::new(alpha, o.m(), 0)?;
            let lam = o.lambda.unwrap_or(0.3);
            let gs = grids(o, phi_s(&p, lam)?.rate())?;
            let params = o.params_or(&[ExtParam::Infinite, ExtParam::Finite(0.0), ExtParam::Finite(1.0), ExtParam::Finite(-1.0)]);
            for th in params {
                let mut res = [0.0; 2];
                for (k, grid) in gs.iter().enumerate() {
                    let src = RadialFn::from_fn(grid.clone(), |r| Complex64::new(bump(r), 0.5 * bump(r)))?;
                    res[k] = residual_s(&p, lam, &resolvent_s(&p, lam, th, &src)?, &src)?;
                }
                worst = worst.max(res[0]);
                worst_ratio = worst_ratio.min(res[0] / res[1]);
                t.rows.push(vec!["schrod".into(), num(alpha), ext(th), nodes.to_string(), num(res[0]), num(res[1]), num(res[0] / res[1])]);
            }
        }
    }
    t.summary = format!("resolvent-check: max residual = {}, min refinement ratio = {}", num(worst), num(worst_ratio));
    Ok(t)
}

/// Gaussian ring times a smooth cutoff, supported in [0.6, 3.4].
fn ring(r: f64) -> f64 {
    let s = (r - 2.0) / 1.4;
    if s.abs() >= 1.0 {
        return 0.0;
    }
    (-(r - 2.0).powi(2) / (2.0 * 0.25 * 0.25) + 1.0 - 1.0 / (1.0 - s * s)).exp()
}

fn ring_scalar(x: f64, y: f64) -> Complex64 {
    let t = y.atan2(x);
    let a = Complex64::new(1.0, 0.0) + Complex64::from_polar(0.5, t) + Complex64::from_polar(0.3, -2.0 * t);
    a * ring(x.hypot(y))
}

fn ring_spinor(x: f64, y: f64) -> [Complex64; 2] {
    let t = y.atan2(x);
    let r = ring(x.hypot(y));
    [r * (Complex64::new(1.0, 0.0) + Complex64::from_polar(0.4, 2.0 * t)), r * Complex64::from_polar(0.7, -t)]
}

fn polar<T>(f: impl Fn(f64, f64) -> T) -> impl Fn(f64, f64) -> T {
    move |r, t| f(r * t.cos(), r * t.sin())
}

const STENCIL_STEP: f64 = 1e-3;

pub fn pw_roundtrip(o: &Opts) -> Result<Table> {
    let alpha = o.alpha.unwrap_or(0.25);
    abnrl::params::check_alpha(alpha)?;
    let n_theta = o.n_theta.unwrap_or(32);
    let grid = Arc::new(RadialGrid::log_uniform(0.05, 8.0, o.nodes.unwrap_or(DEFAULT_NODES))?);
    let range = {
        let lo = grid.nodes().iter().position(|&r| r > 0.8).unwrap_or(0);
        let hi = grid.nodes().iter().position(|&r| r > 3.5).unwrap_or(grid.len());
        lo..hi
    };
    let (m, c) = (o.m(), o.c());
    let mut t = Table::new(&["check", "value", "tolerance", "pass"]);
    let mut push = |name: &str, v: f64, tol: f64| {
        t.rows.push(vec![name.into(), num(v), num(tol), (v < tol).to_string()]);
    };

    let f = PolarField::scalar_from_fn(grid.clone(), n_theta, polar(ring_scalar))?;
    let b = decompose_scalar(&f)?;
    push("roundtrip_scalar", reconstruct_scalar(&b)?.sub(&f)?.l2() / f.l2(), 1e-12);
    let blocks: f64 = b.blocks().iter().map(|x| x.l2().powi(2)).sum();
    push("parseval_scalar", (f.l2().powi(2) - blocks).abs() / f.l2().powi(2), 1e-10);

    let s = PolarField::spinor_from_fn(grid.clone(), n_theta, polar(ring_spinor))?;
    let bs = decompose_spinor(&s)?;
    push("roundtrip_spinor", reconstruct_spinor(&bs)?.sub(&s)?.l2() / s.l2(), 1e-12);
    let blocks: f64 = bs.blocks().iter().map(|x| x.l2().powi(2)).sum();
    push("parseval_spinor", (s.l2().powi(2) - blocks).abs() / s.l2().powi(2), 1e-10);

    let k0 = 2;
    let pure = PolarField::scalar_from_fn(grid.clone(), n_theta, |r, th| Complex64::from_polar(ring(r), k0 as f64 * th))?;
    let out = decompose_scalar(&apply_2d_via_blocks(&pure, Operator2d::Schrod { alpha, m })?)?;
    push("leakage_schrod", leakage(out.iter().map(|(k, x)| (k, x.l2())), k0), 1e-8);
    let pure = PolarField::spinor_from_fn(grid.clone(), n_theta, |r, th| {
        [Complex64::from_polar(ring(r), k0 as f64 * th), Complex64::from_polar(0.5 * ring(r), (k0 - 1) as f64 * th)]
    })?;
    let out = decompose_spinor(&apply_2d_via_blocks(&pure, Operator2d::Dirac { alpha, m, c })?)?;
    push("leakage_dirac", leakage(out.iter().map(|(k, x)| (k, x.l2())), k0), 1e-8);

    let via = apply_2d_via_blocks(&f, Operator2d::Schrod { alpha, m })?;
    let direct = stencil::on_polar_grid(grid.clone(), n_theta, range.clone(), 1, |x, y| {
        [stencil::schrod(&ring_scalar, alpha, m, x, y, STENCIL_STEP), Complex64::new(0.0, 0.0)]
    })?;
    push("stencil_schrod", via.sub(&direct)?.l2_over(range.clone()) / direct.l2_over(range.clone()), 1e-4);
    let via = apply_2d_via_blocks(&s, Operator2d::Dirac { alpha, m, c })?;
    let direct = stencil::on_polar_grid(grid.clone(), n_theta, range.clone(), 2, |x, y| {
        stencil::dirac(&ring_spinor, alpha, m, c, x, y, STENCIL_STEP)
    })?;
    push("stencil_dirac", via.sub(&direct)?.l2_over(range.clone()) / direct.l2_over(range.clone()), 1e-4);

    let failed = t.rows.iter().filter(|r| r[3] == "false").count();
    t.summary = format!("pw-roundtrip: {} of {} checks pass", t.rows.len() - failed, t.rows.len());
    Ok(t)
}

/// Relative norm outside block k0.
fn leakage(norms: impl Iterator<Item = (i32, f64)>, k0: i32) -> f64 {
    let (mut inside, mut outside) = (0.0, 0.0);
    for (k, n) in norms {
        if k == k0 {
            inside += n * n;
        } else {
            outside += n * n;
        }
    }
    (outside / (inside + outside)).sqrt()
}

pub fn square_check(o: &Opts) -> Result<Table> {
    let alpha = o.alpha()?;
    let p = DiracParams::new(alpha, o.m(), o.c(), 0)?;
    let grid = Arc::new(RadialGrid::default_for_decay(1.0)?);
    let mut t = Table::new(&["gamma", "a0", "b1", "b0", "a1", "theta_upper", "theta_lower", "residual"]);
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut worst = 0.0f64;
    for g in o.params_or(&[ExtParam::Finite(0.0), ExtParam::Infinite, ExtParam::Finite(-1.0)]) {
        let (a0, b1, b0, a1) = match g {
            ExtParam::Infinite => (zero, zero, half, one),
            ExtParam::Finite(_) => {
                let (b0, a1) = square_bc_map(&p, g, one, half)?;
                (one, half, b0, a1)
            }
        };
        let free = if g.is_infinite() { (a1, b0) } else { (a0, b1) };
        let u = square_domain_function(&p, g, free, grid.clone())?;
        let res = square_residual(&p, &u)?;
        worst = worst.max(res);
        let (tu, tl) = match reduced_pair(&p, g) {
            Ok((a, b)) => (ext(a), ext(b)),
            Err(Error::Supersymmetry(_)) => (String::new(), String::new()),
            Err(e) => return Err(e),
        };
        t.rows.push(vec![ext(g), cplx(a0), cplx(b1), cplx(b0), cplx(a1), tu, tl, num(res)]);
    }
    t.summary = format!("square-check: max residual = {}", num(worst));
    Ok(t)
}

fn cplx(z: Complex64) -> String {
    format!("{:e}{:+e}i", z.re + 0.0, z.im + 0.0)
}
