//! Worked examples with independently known answers, run by `padic-ode selftest`.

use padic_ode::apps::{bench_plan, composed_product, newton_series, recover_from_newton_series, MonicPoly};
use padic_ode::dsol::harness::{oracle_equivalence_suite, sharpness, OracleCase};
use padic_ode::dsol::{dsol, newton_step, plan};
use padic_ode::{Error, Exec, PadicContext, RhsSpec, TruncSeries, ZpElt};

type Check = (&'static str, fn() -> Result<bool, Error>);

fn ctx(p: u64, lambda: u32) -> PadicContext {
    PadicContext::new(p, lambda).expect("valid context")
}

const CHECKS: &[Check] = &[
    ("fixed division 5/10 mod 125", || {
        let c = ctx(5, 3);
        Ok(ZpElt::from_u64(&c, 5).fixed_div(&ZpElt::from_u64(&c, 10))?.rep() == 13u32.into())
    }),
    ("inverse of 1+2t mod 7", || {
        let c = ctx(7, 1);
        Ok(TruncSeries::from_u64s(&c, &[1, 2, 0]).invert()? == TruncSeries::from_u64s(&c, &[1, 5, 4]))
    }),
    ("square root of 1+t mod 25", || {
        let c = ctx(5, 2);
        Ok(TruncSeries::from_u64s(&c, &[1, 1, 0]).sqrt_unit()? == TruncSeries::from_u64s(&c, &[1, 13, 3]))
    }),
    ("1/(1-u) at u = t+t^2 mod 7", || {
        let c = ctx(7, 1);
        let h = RhsSpec::rational_i64(&[1], &[1, -1])?;
        Ok(h.compose(&TruncSeries::from_u64s(&c, &[0, 1, 1, 0]))? == TruncSeries::from_u64s(&c, &[1, 1, 2, 3]))
    }),
    ("newton step for (1+y)^2", || {
        let c = ctx(5, 3);
        let h = RhsSpec::polynomial_i64(&[1, 2, 1])?;
        let u = TruncSeries::from_u64s(&c, &[0, 1]);
        Ok(newton_step(&TruncSeries::one(&c, 3), &h, &u, 3)? == TruncSeries::from_u64s(&c, &[0, 1, 1, 1]))
    }),
    ("solve y' = (1+y)^2 to order 7", || {
        let c = ctx(5, 3);
        let y = dsol(&TruncSeries::one(&c, 7), &RhsSpec::polynomial_i64(&[1, 2, 1])?, 7)?;
        Ok(y.series == TruncSeries::from_u64s(&c, &[0, 1, 1, 1, 1, 1, 1, 1]) && y.guaranteed_precision == 2)
    }),
    ("precision plan for n = 417124", || {
        let pl = plan(1, 417_124, 5)?;
        Ok(pl.lambda == 9 && pl.mu_lambda == 72 && bench_plan(5, 104_281)? == (72, 9))
    }),
    ("sharpness loses exactly s digits", || {
        Ok([(5, 1, 3), (3, 2, 4), (2, 2, 4)].iter().all(|&(p, s, l)| sharpness(p, s, l).map(|r| r.lost_digits == s).unwrap_or(false)))
    }),
    ("newton sums of t^2 - 3t + 2", || {
        let c = ctx(7, 2);
        let f = MonicPoly::from_i64s(&c, &[2, -3]);
        let h = newton_series(&f, 4).series;
        Ok(h == TruncSeries::from_u64s(&c, &[3, 5, 9, 17]) && recover_from_newton_series(&h, 2)?.poly == f)
    }),
    ("composed product (t^2+4) and (t+3) over F_5", || {
        let c = ctx(5, 1);
        let fg = composed_product(&MonicPoly::from_u64s(&c, &[4, 0]), &MonicPoly::from_u64s(&c, &[3]))?;
        Ok(fg == MonicPoly::from_u64s(&c, &[1, 0]))
    }),
    ("random solutions recovered", || {
        let h = RhsSpec::rational_i64(&[1], &[1, -1])?;
        let cases: Vec<OracleCase> =
            (0..20).map(|i| OracleCase { p: [3, 5, 7, 11][i % 4], lambda: 6, n: 60, h: h.clone(), seed: i as u64 }).collect();
        Ok(oracle_equivalence_suite(&cases, Exec::default()) == 0)
    }),
];

/// Runs every check, printing one line each; returns the number of failures.
pub fn run() -> usize {
    let mut failed = 0;
    for (name, check) in CHECKS {
        let ok = matches!(check(), Ok(true));
        if !ok {
            failed += 1;
        }
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
    }
    println!("selftest: {} of {} checks passed", CHECKS.len() - failed, CHECKS.len());
    failed
}
