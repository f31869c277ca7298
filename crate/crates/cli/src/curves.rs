//! CSV dumps of `p`, `P` and `R` for plotting.

use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::{ensure, Context};
use gof_core::suites;

fn write_xy(path: &Path, rows: &[(f64, f64)]) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["x", "value"])?;
    for (x, v) in rows {
        w.write_record([x.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let m = (points - 1) as f64;
    (0..points).map(move |i| if i + 1 == points { hi } else { lo + (hi - lo) * i as f64 / m })
}

/// Writes `<name>_pdf.csv`, `<name>_cdf.csv` and `<name>_df.csv` into `dir`.
///
/// `pdf` and `cdf` cover the support of `p`; `df` covers `[0, 1.05 max p]`.
/// Every atom of `R` gets two rows at its level, the left limit first.
pub fn emit_curves(example: &str, points: usize, dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    ensure!(points >= 2, "--points must be at least 2");
    let suite = suites::builtin(example)?;
    let h = suite.hypothesis()?;
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let support = suite.p.support();

    let pdf: Vec<(f64, f64)> = grid(support.lo(), support.hi(), points)
        .map(|x| (x, suite.p.pdf_at(x)))
        .collect();
    let cdf: Vec<(f64, f64)> = grid(support.lo(), support.hi(), points)
        .map(|x| (x, h.cdf().eval(x)))
        .collect();

    let r = h.rearranged();
    let atoms = r.atoms();
    let mut df = Vec::with_capacity(points + 2 * atoms.len());
    let mut next = 0;
    for x in grid(0.0, 1.05 * r.max_p(), points) {
        while next < atoms.len() && atoms[next].level <= x {
            let a = atoms[next].level;
            df.push((a, r.left_limit(a)));
            df.push((a, r.value(a)));
            next += 1;
        }
        if df.last().is_some_and(|&(y, _)| y == x) {
            continue;
        }
        df.push((x, r.value(x)));
    }

    let paths = ["pdf", "cdf", "df"].map(|k| dir.join(format!("{example}_{k}.csv")));
    write_xy(&paths[0], &pdf)?;
    write_xy(&paths[1], &cdf)?;
    write_xy(&paths[2], &df)?;
    Ok(paths.to_vec())
}
