use std::io::Write;

use serde::Serialize;

use crate::{BenchRow, CliResult, ComputeOutput, SeriesPoint};

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn write_compute_csv(out: &mut dyn Write, res: &ComputeOutput) -> CliResult<()> {
    writeln!(out, "k,coeff,bound,exact,abs_err,rel_err")?;
    for r in &res.rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.k,
            num(r.coeff),
            opt(r.bound),
            opt(r.exact),
            opt(r.abs_err),
            opt(r.rel_err)
        )?;
    }
    Ok(())
}

pub fn write_series_csv(out: &mut dyn Write, points: &[SeriesPoint]) -> CliResult<()> {
    writeln!(out, "experiment,series,k,value")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{}",
            p.experiment,
            p.series,
            p.k,
            num(p.value)
        )?;
    }
    Ok(())
}

pub fn write_bench_csv(out: &mut dyn Write, rows: &[BenchRow]) -> CliResult<()> {
    writeln!(out, "n,stage1_seconds,stage2_seconds,total_seconds")?;
    for r in rows {
        let n =
            r.n.map_or_else(|| "exponent".to_string(), |n| n.to_string());
        writeln!(
            out,
            "{n},{},{},{}",
            num(r.stage1),
            num(r.stage2),
            num(r.total)
        )?;
    }
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}
