use std::fmt::Write as _;

use super::{KuiperResult, WResult};

/// Statistics computed for one sample against one density.
#[derive(Debug, Clone, Default)]
pub struct TestReport {
    pub density: String,
    pub source: String,
    pub seed: Option<u64>,
    pub generator: Option<String>,
    pub n: usize,
    pub u: Option<KuiperResult>,
    pub v: Option<KuiperResult>,
    pub w: Option<WResult>,
    pub w_tilde: Option<f64>,
    /// Draws that fell outside the density's support.
    pub outside_support: usize,
    /// True when `p(X)` has atoms, so the `V` significance is conservative.
    pub atoms: bool,
}

const CSV_COLUMNS: [&str; 16] = [
    "density",
    "source",
    "seed",
    "generator",
    "n",
    "u",
    "u_d_plus",
    "u_d_minus",
    "u_log10_p",
    "v",
    "v_d_plus",
    "v_d_minus",
    "v_log10_p",
    "w",
    "w_min_index",
    "w_tilde",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl TestReport {
    /// True when at least one statistic is present.
    pub fn is_populated(&self) -> bool {
        self.u.is_some() || self.v.is_some() || self.w.is_some() || self.w_tilde.is_some()
    }

    /// Flat `key=value` lines.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            if !v.is_empty() {
                let _ = writeln!(out, "{k}={v}");
            }
        };
        kv("density", self.density.clone());
        kv("source", self.source.clone());
        kv("seed", opt(self.seed));
        kv("generator", opt(self.generator.as_deref()));
        kv("n", self.n.to_string());
        for (name, k) in [("u", &self.u), ("v", &self.v)] {
            if let Some(k) = k {
                kv(name, k.statistic.to_string());
                kv(&format!("{name}_d_plus"), k.d_plus.to_string());
                kv(&format!("{name}_d_minus"), k.d_minus.to_string());
                kv(&format!("{name}_log10_p"), k.log10_pvalue.to_string());
            }
        }
        if self.v.is_some() && self.atoms {
            kv("v_note", "p(X) has atoms; the V significance is conservative".into());
        }
        if let Some(w) = &self.w {
            kv("w", w.w.to_string());
            kv("w_min_index", w.min_index.to_string());
            kv("w_confidence", w.confidence_lower_bound.to_string());
        }
        kv("w_tilde", opt(self.w_tilde));
        if self.outside_support > 0 {
            kv("outside_support", self.outside_support.to_string());
        }
        out
    }

    pub fn csv_header() -> String {
        CSV_COLUMNS.join(",")
    }

    pub fn csv_row(&self) -> String {
        let k = |r: &Option<KuiperResult>| -> [String; 4] {
            match r {
                Some(r) => [
                    r.statistic.to_string(),
                    r.d_plus.to_string(),
                    r.d_minus.to_string(),
                    r.log10_pvalue.to_string(),
                ],
                None => Default::default(),
            }
        };
        let mut fields = vec![
            self.density.clone(),
            self.source.clone(),
            opt(self.seed),
            opt(self.generator.as_deref()),
            self.n.to_string(),
        ];
        fields.extend(k(&self.u));
        fields.extend(k(&self.v));
        fields.push(opt(self.w.map(|w| w.w)));
        fields.push(opt(self.w.map(|w| w.min_index)));
        fields.push(opt(self.w_tilde));
        fields.join(",")
    }

    /// Human-readable summary, one line per statistic.
    pub fn verdicts(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for (name, k) in [("U", &self.u), ("V", &self.v)] {
            if let Some(k) = k {
                lines.push(format!(
                    "{name} = {:.4}, significance level about 10^{:.1}",
                    k.statistic, k.log10_pvalue
                ));
            }
        }
        if let Some(w) = &self.w {
            if w.w <= 1.0 {
                lines.push(format!(
                    "W = {:.3e}: at least {}% confidence that the draws do not arise from {}",
                    w.w,
                    percent(w.confidence_lower_bound),
                    self.density
                ));
            } else {
                lines.push(format!("W = {:.3e}: no evidence against {} (W > 1)", w.w, self.density));
            }
        }
        if let Some(t) = self.w_tilde {
            lines.push(format!("W~ = {t:.4}"));
        }
        if self.outside_support > 0 {
            lines.push(format!(
                "warning: {} draw(s) outside the support of {}, treated as p(X) = 0",
                self.outside_support, self.density
            ));
        }
        lines
    }
}

/// `100 c` rounded down to five decimals, trailing zeros dropped.
fn percent(c: f64) -> String {
    let scaled = (c * 1e7).floor() / 1e5;
    let s = format!("{scaled:.5}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_rounds_down() {
        assert_eq!(percent(1.0 - 2.5e-7), "99.99997");
        assert_eq!(percent(0.75), "75");
        assert_eq!(percent(0.0), "0");
    }

    #[test]
    fn csv_row_matches_header() {
        let r = TestReport {
            density: "d".into(),
            n: 3,
            w_tilde: Some(0.5),
            ..Default::default()
        };
        assert_eq!(r.csv_row().split(',').count(), TestReport::csv_header().split(',').count());
        assert!(r.is_populated());
        assert!(r.to_key_value().contains("w_tilde=0.5\n"));
    }
}
