//! Acceptance criteria, run in order with one PASS/FAIL line each.
//! Exits non-zero if any criterion fails.

mod common;

use common::{quadrature_d2, random_law, rational};
use coxdes::charfn::audit;
use coxdes::coxeter::Family;
use coxdes::distribution::{
    brute_force_t_distribution, dihedral_brute_force, dihedral_t_distribution, product_t_distribution,
};
use coxdes::enumerate::{enumerate, ExceptionalTable, TableSet, DEFAULT_CAP};
use coxdes::harness::{parse_spec, run_experiment, run_experiment_with, write_report, Format, Mode, RunOptions, SequenceSpec};
use coxdes::sampling::{sample_batch, SeededRng};
use coxdes::wasserstein::{check_mallows_sum_inequality, d2_discrete, d2_to_normal};
use coxdes::{CoxeterGroup, DiscreteDistribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn group(s: &str) -> CoxeterGroup {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("{what} took {elapsed:.1?}, limit {limit:?}"))
}

fn descent_ground_truth() -> Outcome {
    let start = Instant::now();
    let mut names: Vec<String> = (1..=6).map(|p| format!("A{p}")).collect();
    names.extend((2..=4).map(|p| format!("B{p}")));
    names.push("D4".into());
    names.extend((3..=20).map(|m| format!("I2({m})")));
    names.extend(["H3".into(), "F4".into()]);
    let mut elements = 0;
    for name in &names {
        let g = group(name);
        for w in enumerate(&g, 10_000).map_err(|e| e.to_string())?.iter() {
            ensure(w.descent_set() == w.descent_set_by_length(), || format!("{name}: mismatch at {w}"))?;
            elements += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(60), "descent check")?;
    Ok(format!("{} groups, {elements} elements", names.len()))
}

fn classification_orders() -> Outcome {
    let mut parts = Vec::new();
    for (family, expected) in [(Family::H3, 120), (Family::F4, 1152), (Family::H4, 14_400), (Family::E6, 51_840)] {
        let start = Instant::now();
        let t = ExceptionalTable::build(family, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(t.len() == expected, || format!("|{family:?}| = {}, expected {expected}", t.len()))?;
        within(elapsed, Duration::from_secs(300), &format!("{family:?}"))?;
        parts.push(format!("|{family:?}|={}", t.len()));
    }
    Ok(parts.join(" "))
}

fn dihedral_closed_form() -> Outcome {
    for m in 3..=12u32 {
        let mi = m as i64;
        let expected = DiscreteDistribution::new([
            (rational(0, 1), rational(1, 2 * mi)),
            (rational(2, 1), rational(mi - 1, mi)),
            (rational(4, 1), rational(1, 2 * mi)),
        ])
        .unwrap();
        let law = dihedral_t_distribution(m);
        ensure(law == expected, || format!("I2({m}) closed form"))?;
        ensure(dihedral_brute_force(m) == expected, || format!("I2({m}) brute force"))?;
        let via_elements = brute_force_t_distribution(&group(&format!("I2({m})")), DEFAULT_CAP).unwrap();
        ensure(via_elements == expected, || format!("I2({m}) element enumeration"))?;
        ensure(law.exact_moments().variance == rational(4, mi), || format!("I2({m}) variance"))?;
    }
    Ok("m = 3..12".into())
}

fn convolution_equals_enumeration() -> Outcome {
    for name in ["A2xB2", "A1xI2(5)xA2", "I2(3)xI2(4)"] {
        let g = group(name);
        let conv = product_t_distribution(&g, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let brute = brute_force_t_distribution(&g, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(conv == brute, || format!("{name}: laws differ"))?;
    }
    Ok("A2xB2, A1xI2(5)xA2, I2(3)xI2(4)".into())
}

fn metric_correctness() -> Outcome {
    let zero = DiscreteDistribution::point_mass(rational(0, 1));
    let d0 = d2_to_normal(&zero);
    ensure((d0 - 1.0).abs() <= 1e-9, || format!("d2(delta_0, Z) = {d0}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let (a, b) = (rng.gen_range(-10_000..10_000), rng.gen_range(-10_000..10_000));
        let d = d2_discrete(
            &DiscreteDistribution::point_mass(rational(a, 1)),
            &DiscreteDistribution::point_mass(rational(b, 1)),
        );
        ensure((d - (a - b).abs() as f64).abs() <= 1e-12, || format!("d2(delta_{a}, delta_{b}) = {d}"))?;
    }
    let mut worst_triangle = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let law = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..10);
            random_law(rng, n, 25)
        };
        let (x, y, z) = (law(&mut rng), law(&mut rng), law(&mut rng));
        let excess = d2_discrete(&x, &z) - d2_discrete(&x, &y) - d2_discrete(&y, &z);
        worst_triangle = worst_triangle.max(excess);
    }
    ensure(worst_triangle <= 1e-9, || format!("triangle inequality off by {worst_triangle}"))?;
    let mut worst_quad: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(2..12);
        let d = random_law(&mut rng, n, 15).standardize().unwrap();
        let gap = (d2_to_normal(&d) - quadrature_d2(&d.real_support(), &d.real_probs())).abs();
        worst_quad = worst_quad.max(gap);
    }
    ensure(worst_quad <= 1e-6, || format!("quadrature disagreement {worst_quad}"))?;
    Ok(format!("triangle slack {worst_triangle:.2e}, quadrature gap {worst_quad:.2e}"))
}

/// Standardized laws for the weighted-sum audit: random small laws and
/// t-laws of small groups, with support sizes kept so the sum law stays
/// enumerable.
fn audit_law(rng: &mut ChaCha8Rng, max_points: usize) -> DiscreteDistribution {
    const GROUPS: [&str; 5] = ["A1", "I2(3)", "I2(7)", "A2", "B2"];
    if rng.gen_bool(0.3) {
        let name = GROUPS[rng.gen_range(0..GROUPS.len())];
        let law = product_t_distribution(&group(name), DEFAULT_CAP).unwrap();
        if law.len() <= max_points {
            return law.standardize().unwrap();
        }
    }
    let n = rng.gen_range(2..=max_points.max(2));
    random_law(rng, n, 12).standardize().unwrap()
}

fn mallows_sum_audit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = f64::NEG_INFINITY;
    for trial in 0..1000 {
        let k = rng.gen_range(1..=10);
        let max_points = (200_000f64.powf(1.0 / k as f64) as usize).clamp(2, 8);
        let laws: Vec<_> = (0..k).map(|_| audit_law(&mut rng, max_points)).collect();
        let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = raw.iter().map(|a| a * a).sum::<f64>().sqrt();
        let coeffs: Vec<f64> = raw.iter().map(|a| a / norm).collect();
        let c = check_mallows_sum_inequality(&laws, &coeffs).map_err(|e| format!("trial {trial}: {e}"))?;
        worst = worst.max(c.lhs - c.rhs);
        ensure(c.lhs <= c.rhs + 1e-9, || format!("trial {trial}: lhs {} > rhs {}", c.lhs, c.rhs))?;
    }
    Ok(format!("1000 instances, worst lhs-rhs {worst:.3e}"))
}

fn outcome_line(o: &audit::AuditOutcome) -> String {
    format!("{} {}/{} ok (worst lhs-rhs {:.2e})", o.name, o.checks - o.violations, o.checks, o.worst_excess)
}

fn lindeberg_audit() -> Outcome {
    let start = Instant::now();
    let (full, simple) = audit::lindeberg_grid().map_err(|e| e.to_string())?;
    let random = audit::simplified_random(audit::RANDOM_TRIALS, audit::AUDIT_SEED).map_err(|e| e.to_string())?;
    for o in [&full, &simple, &random] {
        ensure(o.passed(), || outcome_line(o))?;
    }
    within(start.elapsed(), Duration::from_secs(120), "grid audit")?;
    Ok([&full, &simple, &random].map(outcome_line).join("; "))
}

fn product_and_lipschitz_audits() -> Outcome {
    let product = audit::product_random(audit::RANDOM_TRIALS, audit::AUDIT_SEED + 1).map_err(|e| e.to_string())?;
    let lipschitz = audit::lipschitz_random(audit::RANDOM_TRIALS, audit::AUDIT_SEED + 2).map_err(|e| e.to_string())?;
    for o in [&product, &lipschitz] {
        ensure(o.passed() && o.checks >= 1000, || outcome_line(o))?;
    }
    Ok(format!("{}; {}", outcome_line(&product), outcome_line(&lipschitz)))
}

fn desk_scale_normality() -> Outcome {
    let start = Instant::now();
    let powers: Vec<CoxeterGroup> = (1..=40).map(|n| group(&vec!["I2(3)"; n].join("x"))).collect();
    let r = run_experiment(&SequenceSpec::new("dihedral", powers, Mode::Exact)).map_err(|e| e.to_string())?;
    for (i, row) in r.rows.iter().enumerate() {
        let expected = num_rational::BigRational::new((4 * (i as i64 + 1)).into(), 3.into()).to_string();
        ensure(row.variance_exact.as_deref() == Some(expected.as_str()), || {
            format!("n = {}: variance {:?}", i + 1, row.variance_exact)
        })?;
    }
    let (d5, d40) = (r.rows[4].d2.unwrap(), r.rows[39].d2.unwrap());
    ensure(d40 < d5 && d40 < 0.15, || format!("I2(3)^n: d2 at 5 = {d5}, at 40 = {d40}"))?;

    let symmetric: Vec<CoxeterGroup> = (2..=9).map(|p| group(&format!("A{p}"))).collect();
    let r = run_experiment(&SequenceSpec::new("symmetric", symmetric, Mode::Exact)).map_err(|e| e.to_string())?;
    let d2: Vec<f64> = r.rows.iter().map(|r| r.d2.unwrap()).collect();
    let (first, last) = (d2[0], d2[d2.len() - 1]);
    ensure(last < first && last < 0.2, || format!("A_p: d2 at p = 2 is {first}, at p = 9 is {last}"))?;

    let mut mixed = SequenceSpec::new("mixed", vec![group(&format!("A40x{}", ["I2(3)"; 10].join("x")))], Mode::Montecarlo);
    mixed.samples = 1_000_000;
    mixed.seed = 2024;
    let r = run_experiment(&mixed).map_err(|e| e.to_string())?;
    let ks = r.rows[0].ks.unwrap();
    ensure(ks < 0.05, || format!("A40 x I2(3)^10: KS = {ks}"))?;
    within(start.elapsed(), Duration::from_secs(600), "desk-scale runs")?;
    Ok(format!("I2(3)^n d2 {d5:.4} -> {d40:.4}; A_p d2 {first:.4} -> {last:.4}; Monte Carlo KS {ks:.4}"))
}

fn determinism_and_throughput() -> Outcome {
    let spec = parse_spec(
        r#"{"name":"det","groups":["A40xI2(3)","A12","B9xH3","D7xF4","A100"],"mode":"auto","samples":200000,"seed":11,"cap":100000}"#,
    )
    .map_err(|e| e.to_string())?;
    let csv = |threads: usize| -> Result<Vec<u8>, String> {
        let opts = RunOptions { threads: Some(threads), ..Default::default() };
        let r = run_experiment_with(&spec, &opts).map_err(|e| e.to_string())?;
        let mut out = Vec::new();
        write_report(&r, Format::Csv, &mut out).map_err(|e| e.to_string())?;
        Ok(out)
    };
    let one = csv(1)?;
    for threads in [4, 8] {
        ensure(csv(threads)? == one, || format!("report at {threads} threads differs from 1 thread"))?;
    }
    let g = group("A100");
    let tables = TableSet::new();
    let n = 1_000_000;
    sample_batch(&g, 10_000, &SeededRng::new(0), &tables).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let ts = sample_batch(&g, n, &SeededRng::new(1), &tables).map_err(|e| e.to_string())?;
    let rate = ts.len() as f64 / start.elapsed().as_secs_f64();
    ensure(rate >= 1e5, || format!("throughput {rate:.0} samples/s on A100"))?;
    Ok(format!("identical CSV at 1/4/8 threads; A100 throughput {rate:.3e} samples/s"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("descent ground truth", descent_ground_truth),
        ("classification orders", classification_orders),
        ("dihedral closed form", dihedral_closed_form),
        ("convolution equals enumeration", convolution_equals_enumeration),
        ("metric correctness", metric_correctness),
        ("weighted-sum inequality audit", mallows_sum_audit),
        ("Lindeberg-bound audit", lindeberg_audit),
        ("product and Lipschitz audits", product_and_lipschitz_audits),
        ("normality at desk scale", desk_scale_normality),
        ("determinism and throughput", determinism_and_throughput),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
