mod common;

use common::{q, qf, recurrence_solve, residues, QRhs, Q};
use padic_ode::dsol::harness::{random_solution, rhs_for_solution, sharpness, trial_rng};
use padic_ode::dsol::{dsol, newton_step, plan};
use padic_ode::{stats, Error, PadicContext, RhsSpec, TruncSeries};
use rand::Rng;

#[test]
fn newton_step_exp_example() {
    // y' = 1 + y, y = e^t - 1; every denominator up to 7! is prime to 11
    let ctx = PadicContext::new(11, 8).unwrap();
    let lin = RhsSpec::polynomial_i64(&[1, 1]).unwrap();
    let exact = recurrence_solve(&[q(1)], &QRhs::Poly(vec![q(1), q(1)]), 7);
    let mut fact = q(1);
    for (k, c) in exact.iter().enumerate().skip(1) {
        fact *= q(k as i64);
        assert_eq!(*c, q(1) / &fact);
    }
    let u = TruncSeries::new(&ctx, &residues(&exact[..4], 11, 8));
    let g = TruncSeries::one(&ctx, 7);
    let next = newton_step(&g, &lin, &u, 7).unwrap();
    assert_eq!(next.reps(), residues(&exact, 11, 8));
}

#[test]
fn newton_step_doubles_correct_order() {
    let hs = [
        (RhsSpec::polynomial_i64(&[1, 1]).unwrap(), QRhs::Poly(vec![q(1), q(1)])),
        (RhsSpec::polynomial_i64(&[1, 2, 1]).unwrap(), QRhs::Poly(vec![q(1), q(2), q(1)])),
        (RhsSpec::rational_i64(&[1], &[1, -1]).unwrap(), QRhs::Rational(vec![q(1)], vec![q(1), q(-1)])),
        (
            RhsSpec::polynomial(vec![q(1), qf(1, 3), qf(-2, 7)]).unwrap(),
            QRhs::Poly(vec![q(1), qf(1, 3), qf(-2, 7)]),
        ),
    ];
    let mut rng = trial_rng(5, 0);
    let (p, lambda) = (17u64, 20u32);
    let ctx = PadicContext::new(p, lambda).unwrap();
    for trial in 0..40 {
        let (h, hq) = &hs[trial % hs.len()];
        let k = rng.gen_range(1..=8usize);
        let n = 2 * k - 1;
        let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
        let gq: Vec<Q> = g.iter().map(|&c| q(c)).collect();
        let exact = recurrence_solve(&gq, hq, n);
        // u agrees with the solution mod t^k and is arbitrary above
        let mut u = residues(&exact[..k], p, lambda);
        u.extend((k..=n).map(|_| rng.gen_range(0..1000u64).into()));
        let u = TruncSeries::new(&ctx, &u);
        let next = newton_step(&TruncSeries::from_i64s(&ctx, &g), h, &u, n).unwrap();
        assert_eq!(next.reps(), residues(&exact, p, lambda), "trial {trial}, k = {k}");
    }
}

#[test]
fn dsol_matches_recurrence() {
    let mut rng = trial_rng(6, 0);
    let h = RhsSpec::rational_i64(&[1, 3], &[1, -1]).unwrap();
    let hq = QRhs::Rational(vec![q(1), q(3)], vec![q(1), q(-1)]);
    for (p, lambda) in [(13u64, 4u32), (29, 3)] {
        let ctx = PadicContext::new(p, lambda).unwrap();
        for _ in 0..10 {
            let n = rng.gen_range(1..12usize);
            let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let exact = recurrence_solve(&g.iter().map(|&c| q(c)).collect::<Vec<_>>(), &hq, n);
            let sol = dsol(&TruncSeries::from_i64s(&ctx, &g), &h, n).unwrap();
            assert_eq!(sol.series.reps(), residues(&exact, p, lambda));
        }
    }
}

#[test]
fn dsol_recovers_random_solutions() {
    let hs = [
        RhsSpec::polynomial_i64(&[1, 1]).unwrap(),
        RhsSpec::polynomial_i64(&[1, 2, 1]).unwrap(),
        RhsSpec::rational_i64(&[1], &[1, -1]).unwrap(),
        RhsSpec::sqrt_rational_i64(&[1, 1], &[1, 0, 1]).unwrap(),
    ];
    for (i, (p, kappa, n)) in [(3u64, 2u32, 40usize), (5, 1, 130), (7, 3, 60), (11, 2, 200)].into_iter().enumerate() {
        let pl = plan(kappa, n as u64, p).unwrap();
        let ctx = PadicContext::new(p, pl.lambda).unwrap();
        for (j, h) in hs.iter().enumerate() {
            let y = random_solution(&ctx, n + 1, &mut trial_rng(i as u64, j));
            let g = rhs_for_solution(&y, h).unwrap();
            let sol = dsol(&g, h, n).unwrap();
            assert_eq!(sol.guaranteed_precision, kappa);
            assert!(sol.series.congruent(&y, kappa, n + 1).unwrap());
        }
    }
}

#[test]
fn rational_solution_oracle() {
    // y = t + t^2/2 at p = 3 with h = 1 + u: g = y'/(1 + y)
    let (p, lambda, n) = (3u64, 5u32, 9usize);
    let ctx = PadicContext::new(p, lambda).unwrap();
    let y = [q(0), q(1), qf(1, 2)];
    let hq = QRhs::Poly(vec![q(1), q(1)]);
    let hy = hq.eval(&y, n);
    let dy = [q(1), q(1)];
    let gq = common::qmul(&dy, &common::qinv(&hy, n), n);
    let g = TruncSeries::new(&ctx, &residues(&gq, p, lambda));
    let sol = dsol(&g, &RhsSpec::polynomial_i64(&[1, 1]).unwrap(), n).unwrap();
    let mut want = residues(&y, p, lambda);
    want.resize(n + 1, 0u32.into());
    let want = TruncSeries::new(&ctx, &want);
    assert_eq!(sol.guaranteed_precision, 3);
    assert!(sol.series.congruent(&want, 3, n + 1).unwrap());
}

#[test]
fn divisions_are_by_small_indices_only() {
    let h = RhsSpec::rational_i64(&[1, 1], &[1, -2]).unwrap();
    for (p, n) in [(5u64, 100usize), (2, 64), (3, 81)] {
        let pl = plan(2, n as u64, p).unwrap();
        let ctx = PadicContext::new(p, pl.lambda).unwrap();
        let y = random_solution(&ctx, n + 1, &mut trial_rng(9, n));
        let g = rhs_for_solution(&y, &h).unwrap();
        stats::reset();
        let sol = dsol(&g, &h, n).unwrap();
        let c = stats::snapshot();
        assert!(sol.series.congruent(&y, 2, n + 1).unwrap());
        assert_eq!(c.nonunit_divisions, 0, "{c:?}");
        assert_eq!(c.unit_divisions, 0, "{c:?}");
        assert!(c.max_integration_divisor as usize <= n, "{c:?}");
        assert!(c.integration_divisions > 0 && c.series_mults > 0);
        assert!(c.unit_inversions > 0);
    }
}

#[test]
fn sharpness_family() {
    for (p, s, lambda) in [(2u64, 1u32, 3u32), (2, 3, 6), (3, 2, 4), (5, 1, 2), (5, 2, 5), (7, 1, 4), (3, 4, 6)] {
        let r = sharpness(p, s, lambda).unwrap();
        assert!(r.inputs_congruent);
        assert_eq!(r.lost_digits, s, "{r:?}");
        assert!(r.solve_within_guarantee, "{r:?}");
    }
    assert!(sharpness(5, 2, 2).is_err());
}

#[test]
fn error_reporting() {
    let ctx = PadicContext::new(3, 4).unwrap();
    let lin = RhsSpec::polynomial_i64(&[1, 1]).unwrap();
    // e^t - 1 has 1/3! at t^3
    assert_eq!(dsol(&TruncSeries::one(&ctx, 5), &lin, 5).unwrap_err(), Error::NonIntegralCoefficient(3));
    assert!(matches!(dsol(&TruncSeries::one(&ctx, 2), &lin, 5), Err(Error::Precondition(_))));
    assert_eq!(plan(1, 8, 2).unwrap_err(), Error::KappaTooSmall { p: 2, kappa: 1 });
}
