//! Monte Carlo reproduction of the example tables.

use std::io::Write;

use gof_core::stats::{kuiper_u, kuiper_v, w_statistic};
use gof_core::suites::{self, ExampleSuite};
use gof_core::Result;
use rayon::prelude::*;

/// Mixed into a trial seed to get the alternative stream.
pub const ALT_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;

pub const DEFAULT_N: [usize; 5] = [10, 100, 1_000, 10_000, 100_000];

pub const COLUMNS: [&str; 8] = ["u0", "u1", "v0", "v1", "w0", "w1", "log10_sig_u1", "log10_sig_v1"];

/// Seed of the null draws in trial `i`.
pub fn trial_seed(base: u64, i: usize) -> u64 {
    base.wrapping_add(i as u64)
}

/// Seed of the alternative draws for a trial seed.
pub fn alternative_seed(trial_seed: u64) -> u64 {
    trial_seed ^ ALT_STREAM
}

/// All statistics of one trial. Index 0 is the null sample from `p`,
/// index 1 the alternative sample from `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialStats {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
    pub w0: f64,
    pub w1: f64,
    pub log10_sig_u1: f64,
    pub log10_sig_v1: f64,
}

impl TrialStats {
    pub fn values(&self) -> [f64; 8] {
        [
            self.u0,
            self.u1,
            self.v0,
            self.v1,
            self.w0,
            self.w1,
            self.log10_sig_u1,
            self.log10_sig_v1,
        ]
    }
}

/// Median and quartiles over trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Summary {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Summary {
            median: quantile(&v, 0.5),
            q1: quantile(&v, 0.25),
            q3: quantile(&v, 0.75),
        }
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

// linear interpolation between order statistics
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = q * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// One row of a table: per-column summaries over trials.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub n: usize,
    pub trials: usize,
    pub u0: Summary,
    pub u1: Summary,
    pub v0: Summary,
    pub v1: Summary,
    pub w0: Summary,
    pub w1: Summary,
    pub log10_sig_u1: Summary,
    pub log10_sig_v1: Summary,
}

impl TableRow {
    fn from_trials(n: usize, t: &[TrialStats]) -> TableRow {
        let col = |k: usize| Summary::of(&t.iter().map(|s| s.values()[k]).collect::<Vec<_>>());
        TableRow {
            n,
            trials: t.len(),
            u0: col(0),
            u1: col(1),
            v0: col(2),
            v1: col(3),
            w0: col(4),
            w1: col(5),
            log10_sig_u1: col(6),
            log10_sig_v1: col(7),
        }
    }

    pub fn summaries(&self) -> [Summary; 8] {
        [
            self.u0,
            self.u1,
            self.v0,
            self.v1,
            self.w0,
            self.w1,
            self.log10_sig_u1,
            self.log10_sig_v1,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub example: String,
    pub seed: u64,
    pub rows: Vec<TableRow>,
    /// Per-trial statistics, one vector per row.
    pub detail: Vec<Vec<TrialStats>>,
}

/// Runs `trials` trials at every `n` of `n_list` for the named suite.
///
/// Trial `i` draws its null sample with seed `seed + i` and its alternative
/// sample with [`alternative_seed`] of that. Trials run in parallel; results
/// keep trial order.
pub fn run_table(example: &str, n_list: &[usize], seed: u64, trials: usize) -> Result<Table> {
    let suite = suites::builtin(example)?;
    let mut rows = Vec::with_capacity(n_list.len());
    let mut detail = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let stats = (0..trials)
            .into_par_iter()
            .map(|i| run_trial(suite, n, trial_seed(seed, i)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(TableRow::from_trials(n, &stats));
        detail.push(stats);
    }
    Ok(Table {
        example: example.to_string(),
        seed,
        rows,
        detail,
    })
}

/// The statistics of a single trial.
pub fn run_trial(suite: &ExampleSuite, n: usize, seed: u64) -> Result<TrialStats> {
    let h = suite.hypothesis()?;
    let null = h.cdf().sample(n, seed, suite.p.name());
    let alt = suite.q.sample(n, alternative_seed(seed));
    let u0 = kuiper_u(&null, h.cdf())?;
    let u1 = kuiper_u(&alt, h.cdf())?;
    let v0 = kuiper_v(&null, h)?;
    let v1 = kuiper_v(&alt, h)?;
    Ok(TrialStats {
        u0: u0.statistic,
        u1: u1.statistic,
        v0: v0.statistic,
        v1: v1.statistic,
        w0: w_statistic(&null, h)?.w,
        w1: w_statistic(&alt, h)?.w,
        log10_sig_u1: u1.log10_pvalue,
        log10_sig_v1: v1.log10_pvalue,
    })
}

fn display(column: usize, v: f64) -> String {
    if column >= 6 {
        format!("{:.0}", v.round() + 0.0)
    } else {
        format!("{v:.2e}")
    }
}

impl Table {
    /// Summary CSV: for every column the rounded median, the raw median and
    /// the quartiles.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["example".to_string(), "n".into(), "trials".into()];
        for c in COLUMNS {
            header.extend([c.to_string(), format!("{c}_raw"), format!("{c}_q1"), format!("{c}_q3")]);
        }
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![self.example.clone(), row.n.to_string(), row.trials.to_string()];
            for (k, s) in row.summaries().iter().enumerate() {
                rec.extend([display(k, s.median), s.median.to_string(), s.q1.to_string(), s.q3.to_string()]);
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Per-trial CSV with full-precision values.
    pub fn write_detail_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["example", "n", "trial", "seed"];
        header.extend(COLUMNS);
        w.write_record(&header)?;
        for (row, stats) in self.rows.iter().zip(&self.detail) {
            for (i, s) in stats.iter().enumerate() {
                let mut rec = vec![
                    self.example.clone(),
                    row.n.to_string(),
                    i.to_string(),
                    trial_seed(self.seed, i).to_string(),
                ];
                rec.extend(s.values().iter().map(|v| v.to_string()));
                w.write_record(&rec)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}
