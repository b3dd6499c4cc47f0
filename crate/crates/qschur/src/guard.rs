//! Scale guards. Defaults keep every command interactive; environment
//! variables raise or lower them.

use qschur_core::oracle::OracleConfig;
use qschur_core::{Error, Window};

pub const ENV_MAX_Q: &str = "QSCHUR_MAX_Q";
pub const ENV_MAX_R: &str = "QSCHUR_MAX_R";
pub const ENV_MAX_WINDOW: &str = "QSCHUR_MAX_WINDOW";
pub const ENV_MAX_VERIFY_WINDOW: &str = "QSCHUR_MAX_VERIFY_WINDOW";
pub const ENV_MAX_WEIGHT_R: &str = "QSCHUR_MAX_WEIGHT_R";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Flag counting: field size, degree and window width.
    pub oracle: OracleConfig,
    /// Presentation and basis checks: window width; degree shares `oracle.max_r`.
    pub max_verify_window: usize,
    /// Weight tables: size of the partition.
    pub max_weight_r: i64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { oracle: OracleConfig::default(), max_verify_window: 5, max_weight_r: 4 }
    }
}

fn read<T: std::str::FromStr>(lookup: &impl Fn(&str) -> Option<String>, key: &str, dflt: T) -> Result<T, Error> {
    match lookup(key) {
        None => Ok(dflt),
        Some(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{key}={s:?} is not a nonnegative integer"))),
    }
}

impl Guards {
    pub fn from_env() -> Result<Self, Error> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, Error> {
        let d = Guards::default();
        Ok(Guards {
            oracle: OracleConfig {
                max_q: read(&lookup, ENV_MAX_Q, d.oracle.max_q)?,
                max_r: read(&lookup, ENV_MAX_R, d.oracle.max_r)?,
                max_window: read(&lookup, ENV_MAX_WINDOW, d.oracle.max_window)?,
            },
            max_verify_window: read(&lookup, ENV_MAX_VERIFY_WINDOW, d.max_verify_window)?,
            max_weight_r: read(&lookup, ENV_MAX_WEIGHT_R, d.max_weight_r)?,
        })
    }

    pub fn check_verify(&self, w: &Window, r: i64) -> Result<(), Error> {
        if w.len() > self.max_verify_window || r > self.oracle.max_r {
            return Err(Error::ScaleGuard(format!(
                "window {w} with r={r} exceeds |window|<={}, r<={} (set {ENV_MAX_VERIFY_WINDOW} / {ENV_MAX_R})",
                self.max_verify_window, self.oracle.max_r
            )));
        }
        Ok(())
    }

    pub fn check_weights(&self, r: i64) -> Result<(), Error> {
        if r > self.max_weight_r {
            return Err(Error::ScaleGuard(format!("partition of {r} exceeds {} (set {ENV_MAX_WEIGHT_R})", self.max_weight_r)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let g = Guards::from_lookup(|k| (k == ENV_MAX_Q).then(|| "5".to_string())).unwrap();
        assert_eq!(g.oracle.max_q, 5);
        assert_eq!(g.oracle.max_r, 3);
        assert!(Guards::from_lookup(|_| Some("x".into())).is_err());
        let w = Window::new(-3, 3).unwrap();
        assert!(Guards::default().check_verify(&w, 2).is_err());
    }
}
