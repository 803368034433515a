//! Load a daily CSV, apply the quality policy and print summary statistics.
//!
//! cargo run --example load_and_summarize -- data.csv [date_column] [value_column]
//!
//! Without arguments a synthetic series is written to a temp file first.

use skillhorizon::series::{load_csv, quality_filter, summary_stats, write_csv_file, CsvSpec, QualityPolicy};
use skillhorizon::synth::{generate, SynthSpec};

fn main() -> skillhorizon::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let tmp = tempfile::tempdir()?;
    let (path, spec) = match args.as_slice() {
        [p] => (p.into(), CsvSpec::default()),
        [p, d, v, ..] => (p.into(), CsvSpec::new(d, v)),
        _ => {
            let p = tmp.path().join("synthetic.csv");
            let s = SynthSpec { missing_rate: 0.05, ..SynthSpec::default() };
            write_csv_file(&generate(&s)?, &p, &CsvSpec::default())?;
            (p, CsvSpec::default())
        }
    };
    let raw = load_csv(&path, &spec)?;
    let (series, report) = quality_filter(&raw, &QualityPolicy::default());
    println!("{} .. {} ({} slots)", series.start_date(), series.end_date(), series.len());
    println!(
        "retained {}/{} ({:.1}%), calendar coverage {:.1}%",
        report.retained_count,
        report.raw_count,
        100.0 * report.retention_fraction,
        100.0 * report.calendar_retention
    );
    for (year, cov) in &report.per_year_coverage {
        println!("  {year}: {:.1}%", 100.0 * cov);
    }
    let stats = summary_stats(&series, 50.0)?;
    println!(
        "mean {:.2}  median {:.2}  max {:.2}  share > {} = {:.3}",
        stats.mean, stats.median, stats.max, stats.threshold, stats.exceedance_fraction
    );
    Ok(())
}
