#![allow(clippy::excessive_precision)]

use slalom::elliptic::{
    agm, complete_k, elementary_slalom_bounds, log_sweep, rect_extremal_length, rect_sides, verify_log_bounds, Method,
};

/// Double-double number `hi + lo`.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        Dd {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn norm(self) -> Dd {
        let s = self.hi + self.lo;
        Dd {
            hi: s,
            lo: self.lo - (s - self.hi),
        }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        Dd {
            hi: s.hi,
            lo: s.lo + self.lo + o.lo,
        }
        .norm()
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(Dd { hi: -o.hi, lo: -o.lo })
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Dd {
            hi: p,
            lo: e + self.hi * o.lo + self.lo * o.hi,
        }
        .norm()
    }

    fn half(self) -> Dd {
        Dd {
            hi: 0.5 * self.hi,
            lo: 0.5 * self.lo,
        }
    }

    fn sqrt(self) -> Dd {
        let s = Dd::new(self.hi.sqrt());
        // one Newton step doubles the number of correct digits
        let r = self.sub(s.mul(s));
        s.add(Dd::new(r.hi / (2.0 * s.hi)))
    }
}

/// Gauss's iteration carried out in double-double arithmetic.
fn agm_oracle(a: f64, b: f64) -> Dd {
    let (mut a, mut b) = (Dd::new(a), Dd::new(b));
    for _ in 0..12 {
        let next_a = a.add(b).half();
        let next_b = a.mul(b).sqrt();
        a = next_a;
        b = next_b;
    }
    a
}

/// Composite Gauss–Legendre (5 points) on `n` equal panels.
fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let x = [0.0, 0.538_469_310_105_683_1, 0.906_179_845_938_664_0];
    let w = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / n as f64;
    (0..n)
        .map(|i| {
            let c = a + (i as f64 + 0.5) * h;
            let r = 0.5 * h;
            let mut s = w[0] * f(c);
            for j in 1..3 {
                s += w[j] * (f(c - r * x[j]) + f(c + r * x[j]));
            }
            s * r
        })
        .sum()
}

#[test]
fn agm_matches_double_double_gauss_iteration() {
    let oracle = agm_oracle(1.0, 0.5);
    // reference value carried to 30 digits elsewhere: 0.728395515523453434593216191632
    assert!((oracle.hi - 0.728_395_515_523_453_4).abs() < 2e-16);
    assert!((oracle.hi + oracle.lo - 0.728_395_515_523_453_434_593).abs() < 1e-16);
    let got = agm(1.0, 0.5).unwrap();
    assert!((got - oracle.hi).abs() <= 2e-16, "{got} vs {}", oracle.hi);
    for (a, b) in [(1.0, 1e-6), (3.0, 7.0), (0.1, 0.2)] {
        let o = agm_oracle(a, b);
        assert!((agm(a, b).unwrap() - o.hi).abs() <= 4e-16 * o.hi, "agm({a},{b})");
    }
}

#[test]
fn agm_fixed_point_on_random_inputs() {
    let mut x = 0.37;
    for _ in 0..50 {
        x = (x * 9301.0 + 49297.0) % 233280.0 / 1000.0 + 1e-3;
        assert!((agm(x, x).unwrap() - x).abs() <= 1e-15 * x);
    }
}

#[test]
fn complete_k_matches_quadrature() {
    for k in [std::f64::consts::FRAC_1_SQRT_2, 0.1, 0.5, 0.9, 0.99] {
        let oracle = gauss_legendre(
            |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(),
            0.0,
            std::f64::consts::FRAC_PI_2,
            200,
        );
        let got = complete_k(k).unwrap();
        assert!((got - oracle).abs() < 1e-12, "k = {k}: {got} vs {oracle}");
    }
}

#[test]
fn complete_k_is_increasing_and_unbounded() {
    let ks: Vec<f64> = (0..100).map(|i| i as f64 / 100.0).collect();
    let vals: Vec<f64> = ks.iter().map(|&k| complete_k(k).unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[0] < w[1]));
    assert!(complete_k(1.0 - 1e-15).unwrap() > 18.0);
}

#[test]
fn methods_agree_on_reference_grid() {
    for m in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1e4] {
        let c = rect_extremal_length(m, Method::ClosedForm).unwrap();
        let q = rect_extremal_length(m, Method::Quadrature).unwrap();
        assert!((c.extremal_length - q.extremal_length).abs() < 1e-8, "M = {m}");
        assert!((c.extremal_length * c.conformal_module - 1.0).abs() < 1e-14);
        assert!((q.extremal_length * q.conformal_module - 1.0).abs() < 1e-14);
    }
}

#[test]
fn pinned_regression_values() {
    // values also reproduced with 30-digit arithmetic
    let cases = [
        (0.1, 0.830_644_062_458_878_2),
        (0.5, 1.279_261_571_171_006_5),
        (1.0, 1.563_401_922_696_111_5),
        (2.0, 1.900_670_240_005_453_5),
        (10.0, 2.820_384_353_416_586),
        (1e4, 7.187_330_221_746_354),
    ];
    for (m, expected) in cases {
        let got = rect_extremal_length(m, Method::ClosedForm).unwrap().extremal_length;
        assert!((got - expected).abs() < 1e-12 * expected, "M = {m}: {got}");
    }
}

#[test]
fn extremal_length_is_increasing_and_continuous() {
    let grid: Vec<f64> = (0..=400).map(|i| 0.05 * i as f64).collect();
    let vals: Vec<f64> = grid
        .iter()
        .map(|&m| rect_extremal_length(m, Method::ClosedForm).unwrap().extremal_length)
        .collect();
    assert_eq!(vals[0], 0.0);
    assert!(vals.windows(2).all(|w| w[0] < w[1]));
    for w in vals[1..].windows(2) {
        assert!(w[1] - w[0] < 0.15);
    }
    // at M = 0 the approach is only logarithmic
    let near_zero: Vec<f64> = (1..=12)
        .map(|j| {
            rect_extremal_length(10f64.powi(-j), Method::ClosedForm)
                .unwrap()
                .extremal_length
        })
        .collect();
    assert!(near_zero.windows(2).all(|w| w[0] > w[1]));
    assert!(near_zero[11] < 0.2);
    assert!(
        rect_extremal_length(2.0, Method::Quadrature).unwrap().extremal_length
            > rect_extremal_length(1.0, Method::Quadrature).unwrap().extremal_length
    );
}

#[test]
fn transposed_rectangle_inverts_extremal_length() {
    for m in [0.3, 3.0, 300.0] {
        for method in [Method::ClosedForm, Method::Quadrature] {
            let s = rect_sides(m, method).unwrap();
            assert!((s.extremal_length() * s.transposed().extremal_length() - 1.0).abs() < 1e-15);
        }
    }
}

#[test]
fn log_bound_single_sample() {
    let r = verify_log_bounds(&[0.5]).unwrap();
    let expected = rect_extremal_length(0.5, Method::ClosedForm).unwrap().extremal_length / 1.5f64.ln();
    assert_eq!(r.ratio_min, expected);
    assert_eq!(r.ratio_max, expected);
}

#[test]
fn log_bound_sweep_and_duplicates() {
    let sweep = [0.5, 1.0, 10.0, 100.0, 1000.0, 1e4];
    let r = verify_log_bounds(&sweep).unwrap();
    assert!(r.ratio_min > 0.0 && r.ratio_min <= r.ratio_max);
    assert!(r.spread() < 5.0);
    let mut doubled = sweep.to_vec();
    doubled.extend_from_slice(&[1e4, 0.5, 10.0]);
    let d = verify_log_bounds(&doubled).unwrap();
    assert_eq!((d.ratio_min, d.ratio_max), (r.ratio_min, r.ratio_max));
    let again = verify_log_bounds(&sweep).unwrap();
    assert_eq!(again, r);
}

#[test]
fn log_ratio_decreases_across_sweep() {
    let ms = log_sweep(0.5, 1e4, 120);
    let ratios: Vec<f64> = ms
        .iter()
        .map(|&m| rect_extremal_length(m, Method::ClosedForm).unwrap().extremal_length / m.ln_1p())
        .collect();
    assert!(ratios.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn slalom_bound_example() {
    let b = elementary_slalom_bounds(0, 11).unwrap();
    assert_eq!(b.m_param, 5.0);
    let log6 = 6f64.ln();
    assert!((b.log_term - log6).abs() < 1e-15);
    assert!(b.rect_upper >= 0.3 * log6 && b.rect_upper <= 5.0 * log6);
    assert!((b.rect_upper - 2.407_770_175_446_251).abs() < 1e-12);
}
