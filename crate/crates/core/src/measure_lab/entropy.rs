use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

pub const FACTORIAL_CURVE_MAX: usize = 20;
pub const YOUNG_CURVE_MAX: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrameKind {
    Factorial,
    Young,
}

impl FromStr for FrameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "factorial" => Ok(FrameKind::Factorial),
            "young" => Ok(FrameKind::Young),
            other => Err(Error::Parse(format!("unknown frame kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyPoint {
    pub n: usize,
    pub q_n: BigUint,
    pub ln_qn_over_n: f64,
}

/// Partition sizes `q_n` with the normalized entropy `ln(q_n)/n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyCurve {
    pub kind: FrameKind,
    pub points: Vec<EntropyPoint>,
}

impl EntropyCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,q_n,ln_qn_over_n\n");
        for p in &self.points {
            out.push_str(&format!("{},{},{:.17e}\n", p.n, p.q_n, p.ln_qn_over_n));
        }
        out
    }
}

impl fmt::Display for EntropyCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

fn ln_big(q: &BigUint) -> f64 {
    // q_n stays well inside f64 range for the capped n.
    q.to_f64().expect("finite").ln()
}

/// Points for `n = 1..=n_max`; young `q_n` counts standard tableaux with `n` cells.
pub fn entropy_curve(kind: FrameKind, n_max: usize) -> Result<EntropyCurve> {
    let cap = match kind {
        FrameKind::Factorial => FACTORIAL_CURVE_MAX,
        FrameKind::Young => YOUNG_CURVE_MAX,
    };
    if n_max < 2 {
        return Err(Error::Domain(format!("n_max must be at least 2, got {n_max}")));
    }
    if n_max > cap {
        return Err(Error::Resource(format!("n_max {n_max} exceeds the cap {cap} for {kind:?}")));
    }
    let mut qs: Vec<BigUint> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let q = match kind {
            FrameKind::Factorial => qs.last().map_or(BigUint::one(), |p| p * n),
            // involutions: I(n) = I(n-1) + (n-1) I(n-2)
            FrameKind::Young => match n {
                1 => BigUint::one(),
                2 => BigUint::from(2u32),
                _ => &qs[n - 2] + &qs[n - 3] * (n - 1),
            },
        };
        qs.push(q);
    }
    let points = qs
        .into_iter()
        .enumerate()
        .map(|(i, q_n)| {
            let n = i + 1;
            EntropyPoint { n, ln_qn_over_n: ln_big(&q_n) / n as f64, q_n }
        })
        .collect();
    Ok(EntropyCurve { kind, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{partitions, young_graph};

    #[test]
    fn factorial_values() {
        let c = entropy_curve(FrameKind::Factorial, 10).unwrap();
        let p = &c.points[9];
        assert_eq!(p.q_n, BigUint::from(3_628_800u32));
        assert!((p.ln_qn_over_n - 1.5104).abs() < 1e-4);
        assert!((c.points[1].ln_qn_over_n - 0.3466).abs() < 1e-4);
    }

    #[test]
    fn young_counts_match_hook_lengths() {
        let c = entropy_curve(FrameKind::Young, 9).unwrap();
        for p in &c.points {
            let sum: BigUint = partitions(p.n).iter().map(|d| d.dimension()).sum();
            assert_eq!(p.q_n, sum, "n = {}", p.n);
        }
        let g = young_graph(8).unwrap();
        assert_eq!(c.points[7].q_n, g.total_paths(8));
        assert_eq!(c.points[7].q_n, BigUint::from(764u32));
    }

    #[test]
    fn caps() {
        assert!(matches!(entropy_curve(FrameKind::Factorial, 21), Err(Error::Resource(_))));
        assert!(matches!(entropy_curve(FrameKind::Young, 41), Err(Error::Resource(_))));
        assert!(entropy_curve(FrameKind::Young, 40).is_ok());
        assert!(entropy_curve(FrameKind::Factorial, 1).is_err());
    }

    #[test]
    fn nondecreasing_and_csv() {
        for kind in [FrameKind::Factorial, FrameKind::Young] {
            let c = entropy_curve(kind, 20).unwrap();
            assert!(c.points.windows(2).all(|w| w[0].q_n <= w[1].q_n));
        }
        let csv = entropy_curve(FrameKind::Factorial, 3).unwrap().to_csv();
        assert!(csv.starts_with("n,q_n,ln_qn_over_n\n1,1,"));
        assert_eq!(csv.lines().count(), 4);
    }
}
