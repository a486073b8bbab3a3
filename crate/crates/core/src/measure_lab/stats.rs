use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Pearson statistic `Σ (O_i − N p_i)² / (N p_i)`.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Result<f64> {
    if observed.len() != expected.len() {
        return Err(Error::Domain(format!(
            "{} observed cells against {} expected",
            observed.len(),
            expected.len()
        )));
    }
    let total: u64 = observed.iter().sum();
    if total == 0 {
        return Err(Error::Domain("no observations".into()));
    }
    let mass: f64 = expected.iter().sum();
    if (mass - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("expected probabilities sum to {mass}")));
    }
    let n = total as f64;
    observed.iter().zip(expected).try_fold(0.0, |acc, (&o, &p)| {
        if p.is_nan() || p <= 0.0 {
            return Err(Error::Domain("expected probability of a cell is zero".into()));
        }
        let e = n * p;
        let d = o as f64 - e;
        Ok(acc + d * d / e)
    })
}

/// Pearson independence statistic of a contingency table and its degrees of
/// freedom `(r − 1)(c − 1)`, using the empirical margins.
pub fn contingency_chi_square(table: &[Vec<u64>]) -> Result<(f64, usize)> {
    let rows = table.len();
    let cols = table.first().map_or(0, Vec::len);
    if rows < 2 || cols < 2 || table.iter().any(|r| r.len() != cols) {
        return Err(Error::Domain("contingency table must be at least 2x2 and rectangular".into()));
    }
    let row_sums: Vec<f64> = table.iter().map(|r| r.iter().sum::<u64>() as f64).collect();
    let col_sums: Vec<f64> = (0..cols).map(|c| table.iter().map(|r| r[c]).sum::<u64>() as f64).collect();
    let n: f64 = row_sums.iter().sum();
    if row_sums.iter().chain(&col_sums).any(|&s| s == 0.0) {
        return Err(Error::Domain("empty row or column in contingency table".into()));
    }
    let mut stat = 0.0;
    for (r, row) in table.iter().enumerate() {
        for (c, &o) in row.iter().enumerate() {
            let e = row_sums[r] * col_sums[c] / n;
            stat += (o as f64 - e).powi(2) / e;
        }
    }
    Ok((stat, (rows - 1) * (cols - 1)))
}

/// Quantile of the chi-square distribution with `df` degrees of freedom.
pub fn chi_square_quantile(df: usize, q: f64) -> f64 {
    ChiSquared::new(df as f64).expect("df ≥ 1").inverse_cdf(q)
}

/// `|freq − p| / sqrt(p(1−p)/n)` for `hits` successes out of `n`.
pub fn binomial_z(hits: u64, n: u64, p: f64) -> f64 {
    let n = n as f64;
    (hits as f64 / n - p).abs() / (p * (1.0 - p) / n).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_square_examples() {
        assert_eq!(chi_square(&[50, 50], &[0.5, 0.5]).unwrap(), 0.0);
        assert_eq!(chi_square(&[30, 10, 60], &[0.3, 0.1, 0.6]).unwrap(), 0.0);
        assert!((chi_square(&[60, 40], &[0.5, 0.5]).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(chi_square(&[17], &[1.0]).unwrap(), 0.0);
    }

    #[test]
    fn chi_square_errors() {
        assert!(matches!(chi_square(&[1, 2], &[1.0, 0.0]), Err(Error::Domain(_))));
        assert!(matches!(chi_square(&[0, 0], &[0.5, 0.5]), Err(Error::Domain(_))));
        assert!(chi_square(&[1], &[0.5, 0.5]).is_err());
        assert!(chi_square(&[1, 1], &[0.5, 0.6]).is_err());
    }

    #[test]
    fn quantiles_match_tables() {
        // standard tables: χ²_{0.999}(1) = 10.828, (5) = 20.515, (9) = 27.877
        assert!((chi_square_quantile(1, 0.999) - 10.828).abs() < 1e-3);
        assert!((chi_square_quantile(5, 0.999) - 20.515).abs() < 1e-3);
        assert!((chi_square_quantile(9, 0.999) - 27.877).abs() < 1e-3);
    }

    #[test]
    fn contingency_independent_table() {
        let (s, df) = contingency_chi_square(&[vec![10, 20], vec![20, 40]]).unwrap();
        assert!(s.abs() < 1e-12);
        assert_eq!(df, 1);
        let (s, _) = contingency_chi_square(&[vec![30, 0], vec![0, 30]]).unwrap();
        assert!((s - 60.0).abs() < 1e-9);
    }
}
