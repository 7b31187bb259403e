//! Standard normal density, distribution function and quantile.
//!
//! `Φ` is evaluated through `erfc` (the FreeBSD/musl rational approximations
//! shipped by `libm`, accurate to about one ulp). `Φ⁻¹` is Wichura's AS241
//! (PPND16), relative error about 1e-16, followed by one Newton step.

// AS241 coefficients are kept exactly as published.
#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub fn pdf(z: f64) -> f64 {
    if z.is_infinite() {
        return 0.0;
    }
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// `Φ(z)`.
pub fn cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// `1 − Φ(z)`, accurate in the upper tail.
pub fn sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

const A: [f64; 8] = [
    3.387_132_872_796_366_608,
    133.141_667_891_784_377_45,
    1_971.590_950_306_551_442_7,
    13_731.693_765_509_461_125,
    45_921.953_931_549_871_457,
    67_265.770_927_008_700_853,
    33_430.575_583_588_128_105,
    2_509.080_928_730_122_672_7,
];
const B: [f64; 8] = [
    1.0,
    42.313_330_701_600_911_252,
    687.187_007_492_057_908_3,
    5_394.196_021_424_751_107_7,
    21_213.794_301_586_595_867,
    39_307.895_800_092_710_61,
    28_729.085_735_721_942_674,
    5_226.495_278_852_545_925,
];
const C: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_9,
    5.769_497_221_460_691_405_5,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    0.241_780_725_177_450_611_77,
    0.022_723_844_989_269_184_583_3,
    7.745_450_142_783_414_076_4e-4,
];
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_4,
    0.689_767_334_985_100_004_55,
    0.148_103_976_427_480_074_59,
    0.015_198_666_563_616_457_196_6,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_24e-9,
];
const E: [f64; 8] = [
    6.657_904_643_501_103_777_2,
    5.463_784_911_164_114_369_9,
    1.784_826_539_917_291_335_8,
    0.296_560_571_828_504_891_23,
    0.026_532_189_526_576_123_093,
    0.001_242_660_947_388_078_438_6,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const F: [f64; 8] = [
    1.0,
    0.599_832_206_555_887_937_69,
    0.136_929_880_922_735_805_31,
    0.014_875_361_290_850_614_852_5,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];

fn poly(c: &[f64; 8], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

fn as241(p: f64) -> f64 {
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let r = (-r.ln()).sqrt();
    let v = if r <= 5.0 {
        poly(&C, r - 1.6) / poly(&D, r - 1.6)
    } else {
        poly(&E, r - 5.0) / poly(&F, r - 5.0)
    };
    if q < 0.0 {
        -v
    } else {
        v
    }
}

/// `Φ⁻¹(p)`, with `Φ⁻¹(0) = −∞` and `Φ⁻¹(1) = +∞`.
pub fn quantile(p: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "probability {p} outside [0, 1]");
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    if p > 0.5 {
        return -lower_quantile(1.0 - p);
    }
    lower_quantile(p)
}

/// `Φ⁻¹(1 − q)` computed from the upper-tail mass `q` directly.
pub fn upper_quantile(q: f64) -> f64 {
    assert!((0.0..=1.0).contains(&q), "probability {q} outside [0, 1]");
    if q == 0.0 {
        return f64::INFINITY;
    }
    if q == 1.0 {
        return f64::NEG_INFINITY;
    }
    -lower_quantile(q)
}

fn lower_quantile(p: f64) -> f64 {
    let z = as241(p);
    let d = pdf(z);
    if d > 0.0 {
        // one Newton step on Φ(z) = p
        z - (cdf(z) - p) / d
    } else {
        z
    }
}

/// `∫ z φ(z) dz` over `[za, zb]`, i.e. `φ(za) − φ(zb)`.
pub fn first_moment_between(za: f64, zb: f64) -> f64 {
    pdf(za) - pdf(zb)
}

/// `∫ z² φ(z) dz` over `[za, zb]`.
///
/// The antiderivative is `G(z) = Φ(z) − zφ(z)`. For `z > 0` it is written as
/// `1 − (1 − Φ(z) + zφ(z))` so upper-tail differences keep their precision.
pub fn second_moment_between(za: f64, zb: f64) -> f64 {
    let lower = |z: f64| if z.is_infinite() { cdf(z) } else { cdf(z) - z * pdf(z) };
    let upper = |z: f64| if z.is_infinite() { sf(z) } else { sf(z) + z * pdf(z) };
    if za >= 0.0 {
        upper(za) - upper(zb)
    } else if zb <= 0.0 {
        lower(zb) - lower(za)
    } else {
        (0.5 - lower(za)) + (0.5 - upper(zb))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(cdf(0.0), 0.5);
        assert!((cdf(1.96) - 0.975_002_104_851_780_1).abs() < 1e-15);
        assert!((quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-14);
        assert!((quantile(1e-10) + 6.361_340_902_404_056).abs() < 1e-12);
        assert!((pdf(0.0) - 0.398_942_280_401_432_7).abs() < 1e-16);
        assert_eq!(quantile(0.0), f64::NEG_INFINITY);
        assert_eq!(quantile(1.0), f64::INFINITY);
    }

    #[test]
    fn quantile_inverts_cdf() {
        for i in 1..1000 {
            let p = i as f64 / 1000.0;
            assert!((cdf(quantile(p)) - p).abs() < 1e-15, "p = {p}");
        }
        for k in 1..300 {
            let q = 10f64.powi(-k);
            let z = upper_quantile(q);
            assert!(((sf(z) - q) / q).abs() < 1e-12, "q = {q}");
        }
    }

    #[test]
    fn moment_closed_forms() {
        let inf = f64::INFINITY;
        assert!((second_moment_between(-inf, inf) - 1.0).abs() < 1e-15);
        assert_eq!(first_moment_between(-inf, inf), 0.0);
        assert!((second_moment_between(-inf, 0.0) - 0.5).abs() < 1e-16);
        assert!((second_moment_between(0.0, inf) - 0.5).abs() < 1e-16);
        // additivity across the split point
        let (a, b, c) = (-0.7, 0.4, 2.5);
        let whole = second_moment_between(a, c);
        let parts = second_moment_between(a, b) + second_moment_between(b, c);
        assert!((whole - parts).abs() < 1e-15);
    }
}
