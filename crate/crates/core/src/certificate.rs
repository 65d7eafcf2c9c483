//! Irreducibility certificates for moduli of K-twisted U(p,q)-Hitchin pairs.
//!
//! The certificate evaluates the numerical hypotheses of the irreducibility
//! criterion exactly, with the strict and non-strict inequalities as stated:
//!
//! * `|τ| ≤ min{p,q}(2g-2)`, and either
//! * (1) `a/p - b/q > -(2g-2)`, `q ≤ p` and
//!   `0 ≤ α < 2pq/(pq - q² + p + q)·(b/q - a/p - (2g-2)) + (2g-2)`, or
//! * (2) `a/p - b/q < 2g-2`, `p ≤ q` and
//!   `2pq/(pq - p² + p + q)·(b/q - a/p + (2g-2)) - (2g-2) < α ≤ 0`.
//!
//! When these hold the closure of the stable locus is irreducible; if also
//! `gcd(p+q, a+b) = 1` the whole moduli space is.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{toledo, HitchinPairType};
use crate::rational::Rational;

/// An interval of α-values with independently open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaWindow {
    pub lower: Rational,
    pub upper: Rational,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl AlphaWindow {
    pub fn is_empty(&self) -> bool {
        match self.lower.cmp(&self.upper) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => !(self.lower_closed && self.upper_closed),
            std::cmp::Ordering::Less => false,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lower_closed { x >= &self.lower } else { x > &self.lower };
        let below = if self.upper_closed { x <= &self.upper } else { x < &self.upper };
        above && below
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub degree_condition: bool,
    pub rank_condition: bool,
    pub alpha_window: AlphaWindow,
    pub window_empty: bool,
    pub alpha_in_window: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityCertificate {
    #[serde(rename = "type")]
    pub pair_type: HitchinPairType,
    pub genus: u32,
    pub alpha: Rational,
    pub tau: Rational,
    /// `min{p,q}(2g-2)`
    pub tau_bound: Rational,
    pub tau_bound_ok: bool,
    pub condition1: ConditionCheck,
    pub condition2: ConditionCheck,
    pub closure_irreducible: bool,
    pub gcd_coprime: bool,
    pub fully_irreducible: bool,
}

pub fn irreducibility_certificate(
    t: &HitchinPairType,
    genus: u32,
    alpha: &Rational,
) -> Result<IrreducibilityCertificate> {
    if genus < 2 {
        return Err(Error::GenusHypothesis(genus));
    }
    let p = i64::from(t.p());
    let q = i64::from(t.q());
    let k = Rational::from_integer(2 * i64::from(genus) - 2);
    let tau = toledo(t);
    let tau_bound = Rational::from_integer(p.min(q)) * &k;
    let tau_bound_ok = tau.abs() <= tau_bound;

    // a/p - b/q
    let slope_gap = Rational::new(t.a(), p)? - Rational::new(t.b(), q)?;
    let two_pq = Rational::from_integer(2 * p * q);

    let window1 = AlphaWindow {
        lower: Rational::zero(),
        upper: &two_pq / Rational::from_integer(p * q - q * q + p + q) * (-&slope_gap - &k) + &k,
        lower_closed: true,
        upper_closed: false,
    };
    let condition1 = condition(slope_gap > -&k, q <= p, window1, alpha);

    let window2 = AlphaWindow {
        lower: &two_pq / Rational::from_integer(p * q - p * p + p + q) * (-&slope_gap + &k) - &k,
        upper: Rational::zero(),
        lower_closed: false,
        upper_closed: true,
    };
    let condition2 = condition(slope_gap < k, p <= q, window2, alpha);

    let closure_irreducible = tau_bound_ok && (condition1.holds || condition2.holds);
    let gcd_coprime = (p + q).gcd(&t.total_degree()) == 1;
    let fully_irreducible = closure_irreducible && gcd_coprime;
    debug_assert!(!fully_irreducible || closure_irreducible);

    Ok(IrreducibilityCertificate {
        pair_type: *t,
        genus,
        alpha: alpha.clone(),
        tau,
        tau_bound,
        tau_bound_ok,
        condition1,
        condition2,
        closure_irreducible,
        gcd_coprime,
        fully_irreducible,
    })
}

fn condition(
    degree_condition: bool,
    rank_condition: bool,
    alpha_window: AlphaWindow,
    alpha: &Rational,
) -> ConditionCheck {
    let alpha_in_window = alpha_window.contains(alpha);
    ConditionCheck {
        degree_condition,
        rank_condition,
        window_empty: alpha_window.is_empty(),
        alpha_window,
        alpha_in_window,
        holds: degree_condition && rank_condition && alpha_in_window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn t(p: u32, q: u32, a: i64, b: i64) -> HitchinPairType {
        HitchinPairType::new(p, q, a, b).unwrap()
    }

    #[test]
    fn coprime_rank_one_pair() {
        let c = irreducibility_certificate(&t(1, 1, -1, 0), 2, &Rational::zero()).unwrap();
        assert_eq!(c.tau, ratio(-1, 1));
        assert!(c.tau_bound_ok);
        assert!(c.condition1.holds);
        assert_eq!(c.condition1.alpha_window.lower, Rational::zero());
        assert_eq!(c.condition1.alpha_window.upper, ratio(1, 1));
        assert!(c.condition1.alpha_window.lower_closed);
        assert!(!c.condition1.alpha_window.upper_closed);
        assert!(c.closure_irreducible);
        assert!(c.gcd_coprime);
        assert!(c.fully_irreducible);
    }

    #[test]
    fn degenerate_windows() {
        let c = irreducibility_certificate(&t(1, 1, 0, 0), 2, &Rational::zero()).unwrap();
        assert_eq!(c.tau, Rational::zero());
        assert!(c.tau_bound_ok);
        assert!(c.condition1.window_empty);
        assert!(c.condition2.window_empty);
        assert_eq!(c.condition1.alpha_window.upper, Rational::zero());
        assert_eq!(c.condition2.alpha_window.lower, Rational::zero());
        assert!(!c.condition1.holds && !c.condition2.holds);
        assert!(!c.closure_irreducible);
        assert!(!c.fully_irreducible);
    }

    #[test]
    fn toledo_out_of_range() {
        for alpha in [ratio(-3, 1), Rational::zero(), ratio(1, 2), ratio(4, 1)] {
            let c = irreducibility_certificate(&t(1, 1, 3, 0), 2, &alpha).unwrap();
            assert_eq!(c.tau.abs(), ratio(3, 1));
            assert!(!c.tau_bound_ok);
            assert!(!c.closure_irreducible);
        }
    }

    #[test]
    fn genus_hypothesis() {
        assert_eq!(
            irreducibility_certificate(&t(1, 1, 0, 0), 1, &Rational::zero()),
            Err(Error::GenusHypothesis(1))
        );
    }

    #[test]
    fn alpha_outside_window() {
        // window [0, 1) for (1,1,-1,0) at g = 2; α = 1 is excluded
        let c = irreducibility_certificate(&t(1, 1, -1, 0), 2, &ratio(1, 1)).unwrap();
        assert!(!c.condition1.alpha_in_window);
        // condition 2 window (a/p - b/q = -1): 1·(1 + 2) - 2 = 1 < α ≤ 0 is empty
        assert!(c.condition2.window_empty);
        assert!(!c.closure_irreducible);
    }

    #[test]
    fn mirror_condition() {
        // (1,1,1,0): condition 2 with window (-1, 0]
        let c = irreducibility_certificate(&t(1, 1, 1, 0), 2, &ratio(-1, 2)).unwrap();
        assert_eq!(c.condition2.alpha_window.lower, ratio(-1, 1));
        assert!(c.condition2.holds);
        assert!(!c.condition1.holds);
        assert!(c.fully_irreducible);
    }

    #[test]
    fn not_coprime() {
        // a + b = 0 shares the factor p + q
        let c = irreducibility_certificate(&t(2, 1, 0, 0), 3, &Rational::zero()).unwrap();
        assert!(!c.gcd_coprime);
        assert!(!c.fully_irreducible);
    }

    #[test]
    fn window_emptiness() {
        let w = AlphaWindow {
            lower: Rational::zero(),
            upper: Rational::zero(),
            lower_closed: true,
            upper_closed: true,
        };
        assert!(!w.is_empty());
        assert!(w.contains(&Rational::zero()));
    }
}
