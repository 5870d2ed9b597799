use std::fmt;
use std::str::FromStr;

use gce_core::{check_purity_constraints_with_tol, estimate_with_tol};

use crate::format::{sig, LogBase};

pub const HEADER: &str = "mu_i,mu,region,en_min,en_max,en_avg,rel_err";

/// Inclusive grid `start, start + step, ..., <= stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridRange {
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for GridRange {
    type Err = String;

    /// `START:STOP:STEP`, or a single value.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<_, _>>()?;
        let range = match parts[..] {
            [v] => Self { start: v, stop: v, step: 1.0 },
            [start, stop, step] => Self { start, stop, step },
            _ => return Err(format!("expected START:STOP:STEP or a single value, got {s:?}")),
        };
        let valid = range.step > 0.0 && range.stop >= range.start && range.start.is_finite() && range.stop.is_finite();
        if !valid {
            return Err(format!("need finite START <= STOP and STEP > 0, got {s:?}"));
        }
        Ok(range)
    }
}

impl fmt::Display for GridRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// Symmetric-marginal grid; rows ordered by `mu_i` then `mu`.
#[derive(Debug, Clone, Copy)]
pub struct SweepGrid {
    pub mu_i: GridRange,
    pub mu: GridRange,
}

pub fn render(grid: &SweepGrid, tol: f64, base: LogBase) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    let mus = grid.mu.values();
    for mu_i in grid.mu_i.values() {
        for &mu in &mus {
            out.push_str(&row(mu_i, mu, tol, base));
            out.push('\n');
        }
    }
    out
}

fn row(mu_i: f64, mu: f64, tol: f64, base: LogBase) -> String {
    if check_purity_constraints_with_tol(mu_i, mu_i, mu, tol).is_err() {
        return format!("{},{},unphysical,,,,", sig(mu_i), sig(mu));
    }
    let e = estimate_with_tol(mu_i, mu_i, mu, tol).expect("constraints checked above");
    format!(
        "{},{},{},{},{},{},{}",
        sig(mu_i),
        sig(mu),
        e.region,
        sig(base.convert(e.en_min)),
        sig(base.convert(e.en_max)),
        sig(base.convert(e.en_avg)),
        sig(e.rel_err)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ranges() {
        let r: GridRange = "0.05:1:0.05".parse().unwrap();
        assert_eq!(r.values().len(), 20);
        assert!((r.values()[19] - 1.0).abs() < 1e-12);
        let single: GridRange = "0.5".parse().unwrap();
        assert_eq!(single.values(), vec![0.5]);
        assert!("1:0:0.1".parse::<GridRange>().is_err());
        assert!("0:1:0".parse::<GridRange>().is_err());
        assert!("0:1".parse::<GridRange>().is_err());
        assert!("a:1:0.1".parse::<GridRange>().is_err());
    }

    #[test]
    fn unphysical_points_are_kept() {
        let grid = SweepGrid { mu_i: "0.5".parse().unwrap(), mu: "0.2:0.3:0.1".parse().unwrap() };
        let csv = render(&grid, 1e-9, LogBase::E);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], HEADER);
        assert_eq!(lines[1], "0.5,0.2,unphysical,,,,");
        assert!(lines[2].starts_with("0.5,0.3,separable,0,0,0,0"));
    }
}
