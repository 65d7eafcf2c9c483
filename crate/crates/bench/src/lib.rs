//! Benchmark inputs shared by the criterion targets.

use upq_core::{HitchinPairType, Rational};

/// Types with `p + q ≤ 5` and `|a|, |b| ≤ 3`.
pub fn small_types() -> Vec<HitchinPairType> {
    let mut out = Vec::new();
    for p in 1..=4 {
        for q in 1..=(5 - p) {
            for a in -3..=3 {
                for b in -3..=3 {
                    out.push(HitchinPairType::new(p, q, a, b).expect("positive ranks"));
                }
            }
        }
    }
    out
}

pub fn symmetric_interval(half_width: i64) -> (Rational, Rational) {
    (Rational::from_integer(-half_width), Rational::from_integer(half_width))
}
