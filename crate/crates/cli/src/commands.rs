use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use qentropy::entropy::{Family, Order};
use qentropy::estimators::{swap_test_sample, ShotPlan};
use qentropy::inequality::{scan_qstar as scan, sort_results, CheckResult, GridSpec, SUITE};
use qentropy::reduction::{
    build_instance, emit_instance, min_n, parse_instance, synthesize_bqp_instance, verify_instance, ReductionError,
};

use crate::report::{
    write_checks_csv, write_qstar_csv, CheckRecord, EstimateRecord, InstanceRecord, QStarRecord, Report,
};
use crate::states::spec_state;
use crate::{BuildArgs, RunArgs, ScanArgs, SwapArgs, VerifyArgs};

pub fn verify_inequalities(a: &VerifyArgs) -> Result<bool> {
    let grid = GridSpec::uniform(a.x_points)?.with_slack(a.slack)?.with_random_orders(a.random_orders, a.seed);
    let mut results: Vec<CheckResult> = SUITE.par_iter().flat_map_iter(|group| group(&grid)).collect();
    sort_results(&mut results);
    if !a.only.is_empty() {
        if let Some(bad) = a.only.iter().find(|id| !results.iter().any(|r| &r.claim == *id)) {
            let known: Vec<&str> = results.iter().map(|r| r.claim.as_str()).collect();
            bail!("unknown claim id `{bad}`; known ids: {}", known.join(", "));
        }
        results.retain(|r| a.only.contains(&r.claim));
    }
    let mut report = Report::new("verify-inequalities");
    report.checks = results.iter().map(CheckRecord::from).collect();
    let report = report.finish();
    for c in &report.checks {
        eprintln!("{} {:<36} margin {}", if c.pass { "PASS" } else { "FAIL" }, c.claim, c.margin);
    }
    report.write(a.report.as_deref())?;
    if let Some(p) = &a.csv {
        write_checks_csv(p, &report.checks)?;
    }
    Ok(report.pass)
}

fn family_order(family: &str, order: &str) -> Result<(Family, Order)> {
    let family: Family = family.parse()?;
    let order: Order = order.parse()?;
    Ok((family, order))
}

pub fn build(a: &BuildArgs) -> Result<bool> {
    let (family, order) = family_order(&a.family, &a.order)?;
    if order == Order::Zero {
        bail!("{}; use `swap-test` for rank detection", ReductionError::OrderZero);
    }
    let min = min_n(family, order)?;
    if a.n < min {
        bail!("n = {} is below the minimum n = {min} for {family} order {order}", a.n);
    }
    let bqp = synthesize_bqp_instance(a.n as usize - 1, a.accept_prob)?;
    let inst = build_instance(&bqp, family, order)?;
    let text = emit_instance(&inst);
    match &a.out {
        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    eprintln!("{family} order {order}, n = {}: t = {:.16e}, g = {:.16e}, label {}", a.n, inst.tg.t, inst.tg.g, inst.label);
    Ok(true)
}

pub fn run(a: &RunArgs) -> Result<bool> {
    let text = std::fs::read_to_string(&a.instance).with_context(|| format!("reading {}", a.instance.display()))?;
    let inst = parse_instance(&text).with_context(|| format!("parsing {}", a.instance.display()))?;
    let v = verify_instance(&inst)?;
    let id = a.instance.file_stem().map_or_else(|| "instance".into(), |s| s.to_string_lossy().into_owned());
    let mut report = Report::new("run");
    report.instances.push(InstanceRecord {
        id,
        family: inst.family.to_string(),
        order: inst.order.to_string(),
        n: inst.n(),
        t: inst.tg.t.into(),
        g: inst.tg.g.into(),
        entropy: v.entropy.into(),
        rank: v.rank,
        label: inst.label.to_string(),
        verdict: v.verdict.to_string(),
        margin: v.margin.into(),
        pass: v.consistent_with(inst.label),
    });
    let report = report.finish();
    eprintln!("verdict {} (label {}, entropy {:.16e})", v.verdict, inst.label, v.entropy);
    report.write(a.report.as_deref())?;
    Ok(report.pass)
}

pub fn swap_test(a: &SwapArgs) -> Result<bool> {
    let (s0, s1) = match a.states.as_slice() {
        [one] => (one, one),
        [x, y] => (x, y),
        _ => bail!("give one or two --state specs"),
    };
    let (rho0, rho1) = (spec_state(s0)?, spec_state(s1)?);
    let plan = ShotPlan::new(a.shots, a.seed)?;
    let sample = swap_test_sample(&rho0, &rho1, &plan)?;
    let exact = rho0.trace_product(&rho1)?;
    let bound = 5.0 / (a.shots as f64).sqrt();
    let mut report = Report::new("swap-test");
    report.estimates.push(EstimateRecord {
        state0: s0.clone(),
        state1: s1.clone(),
        shots: a.shots,
        seed: a.seed,
        zeros: sample.zeros,
        ones: sample.ones,
        p_zero: sample.p_zero.into(),
        exact: exact.into(),
        estimate: sample.estimate.into(),
        bound: bound.into(),
        pass: (sample.estimate - exact).abs() <= bound,
    });
    let report = report.finish();
    eprintln!("Tr(rho0 rho1): estimate {:.6}, exact {:.6} ({} of {} zeros)", sample.estimate, exact, sample.zeros, a.shots);
    report.write(a.report.as_deref())?;
    Ok(report.pass)
}

pub fn scan_qstar(a: &ScanArgs) -> Result<bool> {
    if a.x_points < 3 {
        bail!("--x-points must be at least 3");
    }
    if !(a.q_lo > 0.0 && a.q_lo < a.q_hi && a.q_hi.is_finite()) {
        bail!("need 0 < q-lo < q-hi < inf");
    }
    let last = (a.x_points - 1) as f64;
    let xs: Vec<f64> = (0..a.x_points).map(|i| i as f64 / last).collect();
    let points: Vec<_> = xs.par_iter().flat_map_iter(|&x| scan(&[x], a.q_lo, a.q_hi, a.samples)).collect();
    let mut report = Report::new("scan-qstar");
    report.qstar = points
        .iter()
        .map(|p| QStarRecord { x: p.x.into(), q_star: p.q_star.into(), ratio: p.ratio.into(), in_two_three: p.in_two_three })
        .collect();
    let report = report.finish();
    let inside = points.iter().filter(|p| p.in_two_three).count();
    eprintln!("{inside} of {} minimizers lie in [2, 3]", points.len());
    report.write(a.report.as_deref())?;
    if let Some(p) = &a.csv {
        write_qstar_csv(p, &report.qstar)?;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emitted_suite_report_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        let args = VerifyArgs {
            x_points: 101,
            slack: 1e-9,
            random_orders: 2,
            seed: 5,
            only: Vec::new(),
            report: Some(path.clone()),
            csv: None,
        };
        verify_inequalities(&args).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(Report::from_json(&text).unwrap().to_json(), text);
    }
}
