use std::fmt;

/// Work limit on `n · trials` summed over the table rows.
pub const DEFAULT_MAX_WORK: u64 = 1_000_000_000;
/// Largest `n` run without an explicit override.
pub const DEFAULT_MAX_N: usize = 100_000;
pub const ENV_VAR: &str = "GOF_MAX_WORK";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkRefused {
    pub reason: String,
}

impl fmt::Display for WorkRefused {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; set {ENV_VAR} to raise the limit", self.reason)
    }
}

impl std::error::Error for WorkRefused {}

/// Checks a table request against the resource guard.
///
/// `max_work` is the value of `GOF_MAX_WORK`, if set. Without it, rows with
/// `n > 10^5` are refused as well.
pub fn check_work(n_list: &[usize], trials: usize, max_work: Option<u64>) -> Result<(), WorkRefused> {
    let work: u128 = n_list.iter().map(|&n| n as u128 * trials as u128).sum();
    let limit = max_work.unwrap_or(DEFAULT_MAX_WORK);
    if work > limit as u128 {
        return Err(WorkRefused {
            reason: format!("n * trials totals {work}, above the limit {limit}"),
        });
    }
    if max_work.is_none() {
        if let Some(&n) = n_list.iter().find(|&&n| n > DEFAULT_MAX_N) {
            return Err(WorkRefused {
                reason: format!("n = {n} is above {DEFAULT_MAX_N}"),
            });
        }
    }
    Ok(())
}

/// Reads `GOF_MAX_WORK`. Unparseable values are an error.
pub fn max_work_from_env() -> anyhow::Result<Option<u64>> {
    match std::env::var(ENV_VAR) {
        Ok(v) => {
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| anyhow::anyhow!("{ENV_VAR}={v:?} is not a number"))?;
            anyhow::ensure!(v >= 0.0, "{ENV_VAR} must not be negative");
            Ok(Some(v as u64))
        }
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_limits() {
        assert!(check_work(&[10, 100_000], 33, None).is_ok());
        assert!(check_work(&[1_000_000], 1, None).is_err());
        assert!(check_work(&[100_000], 20_000, None).is_err());
        assert!(check_work(&[1_000_000], 10, Some(10_000_000)).is_ok());
        assert!(check_work(&[1_000_000], 11, Some(10_000_000)).is_err());
    }
}
