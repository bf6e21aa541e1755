use serde::{Deserialize, Serialize};
use std::fmt;

/// Piecewise-linear membership function.
///
/// A triangle `(a, b, c)` is the trapezoid `(a, b, b, c)`. Coincident
/// breakpoints give vertical shoulders, so `tri(0, 0, 5)` is 1 at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MembershipFunction {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
}

impl MembershipFunction {
    pub fn triangular(a: f64, b: f64, c: f64) -> Self {
        MembershipFunction::Triangular { a, b, c }
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Self {
        MembershipFunction::Trapezoidal { a, b, c, d }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            MembershipFunction::Triangular { a, b, c } => vec![a, b, c],
            MembershipFunction::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
        }
    }

    fn corners(&self) -> (f64, f64, f64, f64) {
        match *self {
            MembershipFunction::Triangular { a, b, c } => (a, b, b, c),
            MembershipFunction::Trapezoidal { a, b, c, d } => (a, b, c, d),
        }
    }

    /// Breakpoints are finite and non-decreasing.
    pub fn is_well_formed(&self) -> bool {
        let bp = self.breakpoints();
        bp.iter().all(|v| v.is_finite()) && bp.windows(2).all(|w| w[0] <= w[1])
    }

    /// Degree of membership of `x`, always in `[0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        let (a, b, c, d) = self.corners();
        if x < a || x > d {
            0.0
        } else if x >= b && x <= c {
            1.0
        } else if x < b {
            ((x - a) / (b - a)).clamp(0.0, 1.0)
        } else {
            ((d - x) / (d - c)).clamp(0.0, 1.0)
        }
    }
}

impl fmt::Display for MembershipFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MembershipFunction::Triangular { a, b, c } => write!(f, "tri({a}, {b}, {c})"),
            MembershipFunction::Trapezoidal { a, b, c, d } => {
                write!(f, "trap({a}, {b}, {c}, {d})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_peak_edges_and_support() {
        let mid = MembershipFunction::triangular(0.0, 5.0, 10.0);
        assert_eq!(mid.eval(5.0), 1.0);
        assert_eq!(mid.eval(2.5), 0.5);
        assert_eq!(mid.eval(7.5), 0.5);
        assert_eq!(mid.eval(0.0), 0.0);
        let left = MembershipFunction::triangular(0.0, 0.0, 5.0);
        assert_eq!(left.eval(7.0), 0.0);
        assert_eq!(left.eval(0.0), 1.0);
        let right = MembershipFunction::triangular(5.0, 10.0, 10.0);
        assert_eq!(right.eval(10.0), 1.0);
    }

    #[test]
    fn trapezoid_core_is_flat() {
        let t = MembershipFunction::trapezoidal(1.0, 2.0, 4.0, 8.0);
        assert_eq!(t.eval(3.0), 1.0);
        assert_eq!(t.eval(1.5), 0.5);
        assert_eq!(t.eval(6.0), 0.5);
        assert_eq!(t.eval(9.0), 0.0);
    }

    #[test]
    fn well_formedness() {
        assert!(MembershipFunction::triangular(0.0, 0.0, 0.0).is_well_formed());
        assert!(!MembershipFunction::triangular(0.0, 6.0, 5.0).is_well_formed());
        assert!(!MembershipFunction::trapezoidal(0.0, f64::NAN, 1.0, 2.0).is_well_formed());
    }

    proptest! {
        #[test]
        fn eval_stays_in_unit_interval(
            mut bp in proptest::collection::vec(-100.0f64..100.0, 4),
            x in -200.0f64..200.0,
        ) {
            bp.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let tri = MembershipFunction::triangular(bp[0], bp[1], bp[2]);
            let trap = MembershipFunction::trapezoidal(bp[0], bp[1], bp[2], bp[3]);
            for mf in [tri, trap] {
                let v = mf.eval(x);
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }
}
