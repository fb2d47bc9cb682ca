//! Gamma function and modified Bessel functions of the first and second kind.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
const RGAMMA1: [f64; 29] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_9,
    -0.042_002_635_034_095_24,
    0.166_538_611_382_291_48,
    -0.042_197_734_555_544_33,
    -0.009_621_971_527_876_973,
    0.007_218_943_246_663_1,
    -0.001_165_167_591_859_065_2,
    -0.000_215_241_674_114_950_98,
    0.000_128_050_282_388_116_2,
    -0.000_020_134_854_780_788_24,
    -1.250_493_482_142_670_6e-6,
    1.133_027_231_981_696e-6,
    -2.056_338_416_977_607e-7,
    6.116_095_104_481_416e-9,
    5.002_007_644_469_223e-9,
    -1.181_274_570_487_02e-9,
    1.043_426_711_691_100_5e-10,
    7.782_263_439_905_071e-12,
    -3.696_805_618_642_206e-12,
    5.100_370_287_454_476e-13,
    -2.058_326_053_566_506_6e-14,
    -5.348_122_539_423_018e-15,
    1.226_778_628_238_260_8e-15,
    -1.181_259_301_697_458_8e-16,
    1.186_692_254_751_600_4e-18,
    1.412_380_655_318_031_9e-18,
    -2.298_745_684_435_37e-19,
];

/// Largest Bessel order magnitude accepted by [`Order::new`].
pub const MAX_ORDER: f64 = 2.5;

/// Bessel order with |nu| <= 5/2.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu.abs() > MAX_ORDER + 1e-12 {
            return Err(Error::Domain(format!(
                "Bessel order {nu} outside [-{MAX_ORDER}, {MAX_ORDER}]"
            )));
        }
        Ok(Order(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// sin(pi x) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(pi x), exact at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn lanczos(x: f64) -> f64 {
    // Gamma(x) for x >= 0.5
    let z = x - 1.0;
    let mut s = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * s
}

/// Gamma function. Poles at 0, -1, -2, ... give [`Error::Pole`].
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole(format!("gamma at non-positive integer {x}")));
    }
    if x.fract() == 0.0 && x <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if x < 0.5 {
        Ok(PI / (sin_pi(x) * lanczos(1.0 - x)))
    } else {
        Ok(lanczos(x))
    }
}

/// 1/Gamma(x), zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    match gamma(x) {
        Ok(g) => 1.0 / g,
        Err(_) => 0.0,
    }
}

// Returns (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) for |mu| <= 1/2.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut odd = 0.0;
    let mut even = 0.0;
    let mut p = 1.0;
    // odd accumulates a_j mu^(j-1), even accumulates a_j mu^j
    for (j, a) in RGAMMA1.iter().enumerate() {
        if j % 2 == 0 {
            even += a * p;
        } else {
            odd += a * p;
            p *= mu * mu;
        }
    }
    let gampl = even + mu * odd;
    let gammi = even - mu * odd;
    (-odd, even, gampl, gammi)
}

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const XMIN: f64 = 2.0;

// I_nu(x), K_nu(x) for nu >= 0, x > 0.
fn bessel_ik_nonneg(nu: f64, x: f64) -> Result<(f64, f64)> {
    let nl = (nu + 0.5).floor() as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // I'_nu / I_nu by continued fraction (modified Lentz)
    let mut h = nu * xi;
    if h < FPMIN {
        h = FPMIN;
    }
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "Bessel continued fraction at nu={nu}, x={x}"
        )));
    }

    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let ril1 = ril;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;

    let (mut rkmu, mut rk1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        // p = 0.5 e^e Gamma(1+mu), q = 0.5 e^-e Gamma(1-mu)
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut cc = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * ff;
            sum += del;
            let del1 = cc * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence(format!(
                "Bessel K series at nu={nu}, x={x}"
            )));
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut ok = false;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence(format!(
                "Bessel K continued fraction at nu={nu}, x={x}"
            )));
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }

    let rkmup = xmu * xi * rkmu - rk1;
    // The Wronskian step cancels badly at small x when xmu < 0.
    let ri = if x < 2.0 {
        i_series(nu, x)
    } else {
        let rimu = xi / (f * rkmu - rkmup);
        rimu * ril1 / ril
    };
    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    Ok((ri, rkmu))
}

/// Ascending series, nu >= 0.
fn i_series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = (0.5 * x).powf(nu) * rgamma(nu + 1.0);
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() < EPS * sum.abs() {
            break;
        }
    }
    sum
}

fn check_arg(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel argument must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

/// (I_nu(x), K_nu(x)) for x > 0.
pub fn bessel_ik(nu: Order, x: f64) -> Result<(f64, f64)> {
    check_arg(x)?;
    let v = nu.value();
    let (i, k) = bessel_ik_nonneg(v.abs(), x)?;
    if v >= 0.0 {
        Ok((i, k))
    } else {
        // I_{-v} = I_v + (2/pi) sin(v pi) K_v,  K_{-v} = K_v
        Ok((i + 2.0 / PI * sin_pi(v.abs()) * k, k))
    }
}

/// Modified Bessel function of the first kind.
pub fn bessel_i(nu: Order, x: f64) -> Result<f64> {
    Ok(bessel_ik(nu, x)?.0)
}

/// Modified Bessel function of the second kind.
pub fn bessel_k(nu: Order, x: f64) -> Result<f64> {
    Ok(bessel_ik(nu, x)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn gamma_small_integers_and_halves() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
    }

    #[test]
    fn gamma_poles() {
        for x in [0.0, -1.0, -2.0, -7.0] {
            assert!(matches!(gamma(x), Err(Error::Pole(_))));
        }
        assert_eq!(rgamma(-3.0), 0.0);
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for n in -5..=5 {
            assert_eq!(sin_pi(n as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-1.5) - 1.0).abs() < 1e-16);
        assert!((cos_pi(0.3) - (0.3 * PI).cos()).abs() < 1e-15);
    }

    #[test]
    fn temme_gammas_at_zero() {
        let (g1, g2, gp, gm) = temme_gammas(0.0);
        assert!((g1 + 0.577_215_664_901_532_9).abs() < 1e-15);
        assert_eq!(g2, 1.0);
        assert_eq!(gp, 1.0);
        assert_eq!(gm, 1.0);
    }

    #[test]
    fn temme_gammas_consistent_with_gamma() {
        for mu in [-0.5, -0.3, -0.01, 0.02, 0.25, 0.5] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            let rp = 1.0 / gamma(1.0 + mu).unwrap();
            let rm = 1.0 / gamma(1.0 - mu).unwrap();
            assert!((gp - rp).abs() < 1e-15, "{mu}");
            assert!((gm - rm).abs() < 1e-15, "{mu}");
            assert!((g2 - 0.5 * (rm + rp)).abs() < 1e-15);
            assert!((g1 - (rm - rp) / (2.0 * mu)).abs() < 1e-12);
        }
    }

    #[test]
    fn half_integer_closed_forms() {
        for x in [1e-3, 0.4, 1.0, 3.0, 20.0] {
            let k = bessel_k(Order::new(0.5).unwrap(), x).unwrap();
            assert!(rel(k, (PI / (2.0 * x)).sqrt() * (-x).exp()) < 1e-14);
            let i = bessel_i(Order::new(0.5).unwrap(), x).unwrap();
            assert!(rel(i, (2.0 / (PI * x)).sqrt() * x.sinh()) < 1e-13);
            let im = bessel_i(Order::new(-0.5).unwrap(), x).unwrap();
            assert!(rel(im, (2.0 / (PI * x)).sqrt() * x.cosh()) < 1e-13);
        }
    }

    #[test]
    fn i_small_argument_relative_accuracy() {
        for x in [1e-9, 1e-7, 1.3e-6, 1e-4, 0.3, 1.99, 2.01] {
            let i = bessel_i(Order::new(0.5).unwrap(), x).unwrap();
            assert!(rel(i, (2.0 / (PI * x)).sqrt() * x.sinh()) < 1e-14, "{x}");
            let i = bessel_i(Order::new(1.5).unwrap(), x).unwrap();
            let exact = (2.0 / (PI * x)).sqrt() * (x.cosh() - x.sinh() / x);
            if x > 1e-4 {
                assert!(rel(i, exact) < 1e-11, "{x}");
            }
        }
    }

    #[test]
    fn order_bounds() {
        assert!(Order::new(2.5).is_ok());
        assert!(Order::new(-2.5).is_ok());
        assert!(matches!(Order::new(2.6), Err(Error::Domain(_))));
        assert!(matches!(Order::new(f64::NAN), Err(Error::Domain(_))));
        let o = Order::new(0.3).unwrap();
        assert!(matches!(bessel_k(o, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_i(o, -1.0), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn wronskian(nu in -2.5f64..2.5, lx in -3.0f64..1.7) {
            let x = 10f64.powf(lx);
            let o = Order::new(nu).unwrap();
            let o1 = Order::new(if nu + 1.0 > 2.5 { nu - 1.0 } else { nu + 1.0 }).unwrap();
            let (i0, k0) = bessel_ik(o, x).unwrap();
            let (i1, k1) = bessel_ik(o1, x).unwrap();
            // I_v K_{v+1} + I_{v+1} K_v = 1/x, or the shifted form for v-1
            let w = i0 * k1 + i1 * k0;
            let scale = (i0 * k1).abs() + (i1 * k0).abs();
            prop_assert!((w * x - 1.0).abs() < 1e-13 * scale * x + 1e-13, "nu={} x={} w*x={}", nu, x, w * x);
        }

        #[test]
        fn gamma_reflection(a in -0.499f64..0.499) {
            let lhs = gamma(0.5 + a).unwrap() * gamma(0.5 - a).unwrap();
            let rhs = PI / cos_pi(a);
            prop_assert!(rel(lhs, rhs) < 1e-13);
        }

        #[test]
        fn gamma_recurrence(x in -5.5f64..20.0) {
            prop_assume!((x - x.round()).abs() > 1e-3 && (x + 1.0 - (x + 1.0).round()).abs() > 1e-3);
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            prop_assert!(rel(lhs, rhs) < 1e-13);
        }

        #[test]
        fn k_recurrence(nu in -1.4f64..1.4, lx in -2.0f64..1.5) {
            let x = 10f64.powf(lx);
            let km = bessel_k(Order::new(nu - 1.0).unwrap(), x).unwrap();
            let k0 = bessel_k(Order::new(nu).unwrap(), x).unwrap();
            let kp = bessel_k(Order::new(nu + 1.0).unwrap(), x).unwrap();
            // K_{v+1} - K_{v-1} = (2v/x) K_v
            prop_assert!(((kp - km) - 2.0 * nu / x * k0).abs() <= 1e-12 * kp.abs().max(km.abs()));
        }
    }
}
