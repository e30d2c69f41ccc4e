use std::time::{Duration, Instant};

use labudde_core::{charpoly_hess, DenseMatrix, Reducer};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::{BenchArgs, CliError, CliResult};

/// Timings for one order, or the fitted exponents when `n` is `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: Option<usize>,
    pub stage1: f64,
    pub stage2: f64,
    pub total: f64,
}

fn gaussian(n: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / (n as f64).sqrt();
    let data = (0..n * n)
        .map(|_| {
            let x: f64 = StandardNormal.sample(&mut rng);
            x * scale
        })
        .collect();
    DenseMatrix::new(n, data).expect("finite entries")
}

fn min_time<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let v = std::hint::black_box(f());
        best = best.min(start.elapsed());
        last = Some(v);
    }
    (best, last.expect("reps >= 1"))
}

/// Least-squares slope of `log t` against `log n`.
fn exponent(ns: &[usize], ts: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = ts.iter().map(|t| t.max(f64::MIN_POSITIVE).ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn bench(args: &BenchArgs) -> CliResult<Vec<BenchRow>> {
    if args.sizes.len() < 2 {
        return Err(CliError::Usage("--sizes needs at least two values".into()));
    }
    if let Some(n) = args.sizes.iter().find(|&&n| n < 2) {
        return Err(CliError::Usage(format!("size {n} is below 2")));
    }
    let distinct = args.sizes.iter().any(|&n| n != args.sizes[0]);
    if !distinct {
        return Err(CliError::Usage("--sizes needs two distinct values".into()));
    }
    let reps = args.reps.max(1);
    let reducer = Reducer::default();
    let mut rows = Vec::with_capacity(args.sizes.len() + 1);
    for &n in &args.sizes {
        let a = gaussian(n, args.seed.wrapping_add(n as u64));
        let (t1, form) = min_time(reps, || reducer.hessenberg(&a));
        let h = form?.h;
        let (t2, r) = min_time(reps, || charpoly_hess(&h, n));
        r?;
        let (s1, s2) = (t1.as_secs_f64(), t2.as_secs_f64());
        rows.push(BenchRow {
            n: Some(n),
            stage1: s1,
            stage2: s2,
            total: s1 + s2,
        });
    }
    let col = |f: fn(&BenchRow) -> f64| rows.iter().map(f).collect::<Vec<_>>();
    let (c1, c2, ct) = (col(|r| r.stage1), col(|r| r.stage2), col(|r| r.total));
    rows.push(BenchRow {
        n: None,
        stage1: exponent(&args.sizes, &c1),
        stage2: exponent(&args.sizes, &c2),
        total: exponent(&args.sizes, &ct),
    });
    Ok(rows)
}
