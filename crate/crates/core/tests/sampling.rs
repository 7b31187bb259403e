use coxdes::enumerate::{enumerate, TableSet, DEFAULT_CAP};
use coxdes::sampling::{sample_batch, Sampler, SeededRng};
use coxdes::CoxeterGroup;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn group(s: &str) -> CoxeterGroup {
    s.parse().unwrap()
}

/// Pearson statistic of `per_cell · |W|` draws against the uniform law,
/// compared with the 0.999 quantile.
fn chi_square_uniform(name: &str, per_cell: usize, seed: u64) {
    let g = group(name);
    let table = enumerate(&g, DEFAULT_CAP).unwrap();
    let tables = TableSet::for_group(&g, DEFAULT_CAP, None).unwrap();
    let mut sampler = Sampler::new(&g, &tables).unwrap();
    let mut rng = SeededRng::new(seed).rng();
    let cells = table.len();
    let mut counts = vec![0u64; cells];
    for _ in 0..per_cell * cells {
        let w = sampler.sample(&mut rng);
        counts[table.index_of(&w).expect("sampled element is in the group")] += 1;
    }
    let expected = per_cell as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let critical = ChiSquared::new((cells - 1) as f64).unwrap().inverse_cdf(0.999);
    assert!(stat < critical, "{name}: chi-square {stat} >= {critical}");
}

#[test]
fn uniform_on_a4() {
    chi_square_uniform("A4", 100, 1);
}

#[test]
fn uniform_on_b3() {
    chi_square_uniform("B3", 200, 2);
}

#[test]
fn uniform_on_d4() {
    chi_square_uniform("D4", 100, 3);
}

#[test]
fn uniform_on_i2_6() {
    chi_square_uniform("I2(6)", 1000, 4);
}

#[test]
fn uniform_on_h3() {
    chi_square_uniform("H3", 100, 5);
}

#[test]
fn uniform_on_product() {
    chi_square_uniform("A2xB2xA1", 50, 6);
}

fn batch_with_threads(g: &CoxeterGroup, n: usize, threads: usize) -> Vec<u32> {
    let tables = TableSet::for_group(g, DEFAULT_CAP, None).unwrap();
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(|| sample_batch(g, n, &SeededRng::with_stream(42, 3), &tables).unwrap())
}

#[test]
fn batches_do_not_depend_on_thread_count() {
    let g = group("A12xB5xI2(7)xF4");
    let one = batch_with_threads(&g, 50_000, 1);
    assert_eq!(one, batch_with_threads(&g, 50_000, 4));
    assert_eq!(one, batch_with_threads(&g, 50_000, 8));
}

#[test]
fn streams_and_seeds_differ() {
    let g = group("A20");
    let t = TableSet::new();
    let a = sample_batch(&g, 1000, &SeededRng::with_stream(1, 0), &t).unwrap();
    let b = sample_batch(&g, 1000, &SeededRng::with_stream(1, 1), &t).unwrap();
    let c = sample_batch(&g, 1000, &SeededRng::with_stream(2, 0), &t).unwrap();
    assert_ne!(a, b);
    assert_ne!(a, c);
}

#[test]
fn sampled_t_stays_in_range() {
    let g = group("D6xH3xI2(11)");
    let tables = TableSet::for_group(&g, DEFAULT_CAP, None).unwrap();
    let ts = sample_batch(&g, 20_000, &SeededRng::new(8), &tables).unwrap();
    assert!(ts.iter().all(|&t| t as usize <= 2 * g.rank()));
    let mean = ts.iter().map(|&t| t as f64).sum::<f64>() / ts.len() as f64;
    assert!((mean - g.rank() as f64).abs() < 0.1, "{mean}");
}
