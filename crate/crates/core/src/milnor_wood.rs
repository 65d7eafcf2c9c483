//! Milnor–Wood bounds on the Toledo invariant of α-semistable pairs.
//!
//! Two forms are provided: [`rank_bounds`], which depends on the ranks of
//! the Higgs fields, and [`regime_bounds`], the rank-free consequence that
//! splits the α-line into three regimes at `α = ±deg L`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{toledo, HiggsRankPair, HitchinPairType};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `α ≤ -deg L`
    I,
    /// `-deg L ≤ α ≤ deg L`
    II,
    /// `deg L ≤ α`
    III,
}

/// Closed interval `[lower, upper]` of exact rationals, or the infeasible
/// state when the computed lower bound exceeds the upper one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum BoundInterval {
    Closed {
        lower: Rational,
        upper: Rational,
        regime_label: Option<Regime>,
    },
    /// No value satisfies both bounds; the raw bounds are kept for reporting.
    Infeasible {
        lower_bound: Rational,
        upper_bound: Rational,
        regime_label: Option<Regime>,
    },
}

impl BoundInterval {
    pub fn from_bounds(lower: Rational, upper: Rational, regime_label: Option<Regime>) -> Self {
        if lower <= upper {
            Self::Closed {
                lower,
                upper,
                regime_label,
            }
        } else {
            Self::Infeasible {
                lower_bound: lower,
                upper_bound: upper,
                regime_label,
            }
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Closed { .. })
    }

    /// The computed lower bound, whether or not the interval is feasible.
    pub fn lower_bound(&self) -> &Rational {
        match self {
            Self::Closed { lower, .. } => lower,
            Self::Infeasible { lower_bound, .. } => lower_bound,
        }
    }

    pub fn upper_bound(&self) -> &Rational {
        match self {
            Self::Closed { upper, .. } => upper,
            Self::Infeasible { upper_bound, .. } => upper_bound,
        }
    }

    pub fn regime(&self) -> Option<Regime> {
        match self {
            Self::Closed { regime_label, .. } | Self::Infeasible { regime_label, .. } => {
                *regime_label
            }
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Self::Closed { lower, upper, .. } => lower <= x && x <= upper,
            Self::Infeasible { .. } => false,
        }
    }

    /// Closed intervals only.
    pub fn width(&self) -> Option<Rational> {
        match self {
            Self::Closed { lower, upper, .. } => Some(upper - lower),
            Self::Infeasible { .. } => None,
        }
    }

    /// Same bounds with the regime tag dropped.
    pub fn untagged(&self) -> Self {
        Self::from_bounds(self.lower_bound().clone(), self.upper_bound().clone(), None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum MwVerdict {
    Pass,
    /// `margin` is the positive distance from τ to the violated bound.
    Fail { side: Side, margin: Rational },
}

impl MwVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }
}

/// `2pq/(p+q)`; zero when either rank is.
pub(crate) fn weighted_rank(p: u32, q: u32) -> Rational {
    let (p, q) = (i64::from(p), i64::from(q));
    Rational::new(2 * p * q, p + q).expect("positive total rank")
}

/// `min{p,q}·|p-q|/(p+q)`.
fn asym_weight(p: u32, q: u32) -> Rational {
    let (p, q) = (i64::from(p), i64::from(q));
    Rational::new(p.min(q) * (p - q).abs(), p + q).expect("positive total rank")
}

/// Bounds in terms of the Higgs field ranks, valid for any twist degree:
///
/// `-rk(β)·deg L + α(rk(β) - 2pq/(p+q)) ≤ τ ≤ rk(γ)·deg L + α(rk(γ) - 2pq/(p+q))`.
pub fn rank_bounds(
    t: &HitchinPairType,
    deg_l: i64,
    alpha: &Rational,
    ranks: &HiggsRankPair,
) -> Result<BoundInterval> {
    ranks.validate_for(t)?;
    let k = weighted_rank(t.p(), t.q());
    let deg_l = Rational::from_integer(deg_l);
    let rb = Rational::from_integer(ranks.rk_beta);
    let rg = Rational::from_integer(ranks.rk_gamma);
    let lower = -(&rb * &deg_l) + alpha * (&rb - &k);
    let upper = &rg * &deg_l + alpha * (&rg - &k);
    Ok(BoundInterval::from_bounds(lower, upper, None))
}

pub(crate) struct RegimeFormulas {
    /// Lower bound of regimes i and ii.
    pub lower_low: Rational,
    /// Lower bound of regime iii.
    pub lower_high: Rational,
    /// Upper bound of regime i.
    pub upper_low: Rational,
    /// Upper bound of regimes ii and iii.
    pub upper_high: Rational,
}

/// All regime formulas at one α. Ranks may be zero here (used for
/// sub-types with an empty side); `p + q ≥ 1` is required.
pub(crate) fn regime_formulas(p: u32, q: u32, deg_l: i64, alpha: &Rational) -> RegimeFormulas {
    let m = Rational::from_integer(p.min(q));
    let deg_l = Rational::from_integer(deg_l);
    let s = asym_weight(p, q);
    let k = weighted_rank(p, q);
    let shift = alpha * &s;
    RegimeFormulas {
        lower_low: -(&shift) - &m * &deg_l,
        lower_high: -(alpha * &k),
        upper_low: -(alpha * &k),
        upper_high: &m * &deg_l - shift,
    }
}

pub(crate) fn regime_of(deg_l: i64, alpha: &Rational) -> Regime {
    let d = Rational::from_integer(deg_l);
    if alpha < &-(&d) {
        Regime::I
    } else if alpha > &d {
        Regime::III
    } else {
        Regime::II
    }
}

/// Rank-free bounds for `deg L ≥ 0`.
///
/// With `m = min{p,q}`:
///
/// * regime i (`α ≤ -deg L`): `m(-α|p-q|/(p+q) - deg L) ≤ τ ≤ -α·2pq/(p+q)`
/// * regime ii: `m(-α|p-q|/(p+q) - deg L) ≤ τ ≤ m(deg L - α|p-q|/(p+q))`
/// * regime iii (`deg L ≤ α`): `-α·2pq/(p+q) ≤ τ ≤ m(deg L - α|p-q|/(p+q))`
///
/// At `α = ±deg L` regime ii is reported.
pub fn regime_bounds(p: u32, q: u32, deg_l: i64, alpha: &Rational) -> Result<BoundInterval> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidType(format!(
            "ranks must be positive, got p = {p}, q = {q}"
        )));
    }
    if deg_l < 0 {
        return Err(Error::NegativeTwist(deg_l));
    }
    Ok(regime_bounds_unchecked(p, q, deg_l, alpha))
}

pub(crate) fn regime_bounds_unchecked(p: u32, q: u32, deg_l: i64, alpha: &Rational) -> BoundInterval {
    let f = regime_formulas(p, q, deg_l, alpha);
    let regime = regime_of(deg_l, alpha);
    let (lower, upper) = match regime {
        Regime::I => (f.lower_low, f.upper_low),
        Regime::II => {
            let d = Rational::from_integer(deg_l);
            if alpha == &-(&d) {
                debug_assert_eq!(f.upper_low, f.upper_high, "regimes i/ii disagree at -deg L");
            }
            if alpha == &d {
                debug_assert_eq!(f.lower_low, f.lower_high, "regimes ii/iii disagree at deg L");
            }
            (f.lower_low, f.upper_high)
        }
        Regime::III => (f.lower_high, f.upper_high),
    };
    BoundInterval::from_bounds(lower, upper, Some(regime))
}

/// Bounds of one named regime, evaluated at any α. Used to compare adjacent
/// regimes at their shared boundary.
pub fn regime_formula(p: u32, q: u32, deg_l: i64, alpha: &Rational, regime: Regime) -> BoundInterval {
    let f = regime_formulas(p, q, deg_l, alpha);
    let (lower, upper) = match regime {
        Regime::I => (f.lower_low, f.upper_low),
        Regime::II => (f.lower_low, f.upper_high),
        Regime::III => (f.lower_high, f.upper_high),
    };
    BoundInterval::from_bounds(lower, upper, Some(regime))
}

/// Whether τ of `t` lies in the bound interval. With `ranks` the
/// rank-dependent bounds are used, otherwise the regime bounds (which need
/// `deg L ≥ 0`). Membership only; no existence claim is made.
pub fn mw_check(
    t: &HitchinPairType,
    deg_l: i64,
    alpha: &Rational,
    ranks: Option<&HiggsRankPair>,
) -> Result<MwVerdict> {
    let interval = match ranks {
        Some(r) => rank_bounds(t, deg_l, alpha, r)?,
        None => regime_bounds(t.p(), t.q(), deg_l, alpha)?,
    };
    Ok(verdict_for(&toledo(t), &interval))
}

/// An infeasible interval fails every τ: the lower side is reported when τ
/// is below it, otherwise the upper side.
pub fn verdict_for(tau: &Rational, interval: &BoundInterval) -> MwVerdict {
    let lower = interval.lower_bound();
    let upper = interval.upper_bound();
    if tau < lower {
        MwVerdict::Fail {
            side: Side::Lower,
            margin: lower - tau,
        }
    } else if tau > upper {
        MwVerdict::Fail {
            side: Side::Upper,
            margin: tau - upper,
        }
    } else {
        MwVerdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn t(p: u32, q: u32, a: i64, b: i64) -> HitchinPairType {
        HitchinPairType::new(p, q, a, b).unwrap()
    }

    fn closed(lower: Rational, upper: Rational) -> (Rational, Rational) {
        (lower, upper)
    }

    fn bounds(b: &BoundInterval) -> (Rational, Rational) {
        (b.lower_bound().clone(), b.upper_bound().clone())
    }

    #[test]
    fn rank_bounds_examples() {
        let b = rank_bounds(&t(1, 1, 0, 0), 2, &Rational::zero(), &HiggsRankPair::new(1, 1)).unwrap();
        assert_eq!(bounds(&b), closed(ratio(-2, 1), ratio(2, 1)));

        for (p, q) in [(1, 1), (3, 2), (2, 5)] {
            for deg_l in [-3, 0, 4] {
                let b = rank_bounds(&t(p, q, 1, 1), deg_l, &Rational::zero(), &HiggsRankPair::new(0, 0))
                    .unwrap();
                assert_eq!(bounds(&b), closed(Rational::zero(), Rational::zero()));
            }
        }

        let b = rank_bounds(&t(2, 1, 0, 0), 1, &ratio(3, 1), &HiggsRankPair::new(1, 1)).unwrap();
        assert_eq!(bounds(&b), closed(ratio(-2, 1), ratio(0, 1)));
        assert!(b.is_feasible());
    }

    #[test]
    fn rank_bounds_can_be_infeasible() {
        // lower = -1 + (-3)(1 - 1), upper = 0 + (-3)(0 - 1)
        let b = rank_bounds(&t(1, 1, 0, 0), 1, &ratio(-3, 1), &HiggsRankPair::new(1, 0)).unwrap();
        assert_eq!(bounds(&b), closed(ratio(-1, 1), ratio(3, 1)));
        // both sides 3·(0 - 1)
        let b = rank_bounds(&t(1, 1, 0, 0), 1, &ratio(3, 1), &HiggsRankPair::new(0, 0)).unwrap();
        assert_eq!(bounds(&b), closed(ratio(-3, 1), ratio(-3, 1)));
        assert!(b.is_feasible());
        // negative twist: lower = 2, upper = -2
        let b = rank_bounds(&t(1, 1, 0, 0), -2, &Rational::zero(), &HiggsRankPair::new(1, 1)).unwrap();
        assert!(!b.is_feasible());
        assert_eq!(bounds(&b), closed(ratio(2, 1), ratio(-2, 1)));
        assert!(!b.contains(&Rational::zero()));
        assert_eq!(b.width(), None);
    }

    #[test]
    fn rank_bounds_reject_large_ranks() {
        let err = rank_bounds(&t(2, 1, 0, 0), 1, &Rational::zero(), &HiggsRankPair::new(2, 0));
        assert!(matches!(err, Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn regime_bounds_examples() {
        let b = regime_bounds(1, 1, 2, &Rational::zero()).unwrap();
        assert_eq!(bounds(&b), closed(ratio(-2, 1), ratio(2, 1)));
        assert_eq!(b.regime(), Some(Regime::II));

        let i = regime_formula(2, 1, 1, &ratio(-1, 1), Regime::I);
        let ii = regime_formula(2, 1, 1, &ratio(-1, 1), Regime::II);
        assert_eq!(i.upper_bound(), &ratio(4, 3));
        assert_eq!(ii.upper_bound(), &ratio(4, 3));

        for p in 1..=4 {
            for deg_l in 0..=3 {
                let b = regime_bounds(p, p, deg_l, &Rational::zero()).unwrap();
                let m = i64::from(p) * deg_l;
                assert_eq!(bounds(&b), closed(ratio(-m, 1), ratio(m, 1)));
            }
        }
    }

    #[test]
    fn regime_labels() {
        assert_eq!(regime_bounds(2, 1, 1, &ratio(-2, 1)).unwrap().regime(), Some(Regime::I));
        assert_eq!(regime_bounds(2, 1, 1, &ratio(-1, 1)).unwrap().regime(), Some(Regime::II));
        assert_eq!(regime_bounds(2, 1, 1, &ratio(1, 1)).unwrap().regime(), Some(Regime::II));
        assert_eq!(regime_bounds(2, 1, 1, &ratio(3, 2)).unwrap().regime(), Some(Regime::III));
    }

    #[test]
    fn regime_bounds_need_nonnegative_twist() {
        assert_eq!(
            regime_bounds(1, 1, -1, &Rational::zero()),
            Err(Error::NegativeTwist(-1))
        );
    }

    #[test]
    fn mw_check_examples() {
        let v = mw_check(&t(1, 1, 1, 0), 2, &Rational::zero(), None).unwrap();
        assert_eq!(v, MwVerdict::Pass);

        let v = mw_check(&t(1, 1, 3, 0), 2, &Rational::zero(), None).unwrap();
        assert_eq!(
            v,
            MwVerdict::Fail {
                side: Side::Upper,
                margin: ratio(1, 1)
            }
        );

        let v = mw_check(&t(1, 1, -3, 0), 2, &Rational::zero(), None).unwrap();
        assert_eq!(
            v,
            MwVerdict::Fail {
                side: Side::Lower,
                margin: ratio(1, 1)
            }
        );

        // τ = 0 sits in every symmetric interval at α = 0
        let v = mw_check(&t(3, 2, 3, 2), 0, &Rational::zero(), None).unwrap();
        assert_eq!(v, MwVerdict::Pass);

        let err = mw_check(&t(1, 1, 0, 0), -1, &Rational::zero(), None);
        assert_eq!(err, Err(Error::NegativeTwist(-1)));

        // with ranks, a negative twist is fine
        let v = mw_check(&t(1, 1, 0, 0), -1, &Rational::zero(), Some(&HiggsRankPair::new(0, 0)));
        assert_eq!(v.unwrap(), MwVerdict::Pass);
    }

    #[test]
    fn infeasible_interval_fails() {
        let interval = BoundInterval::from_bounds(ratio(2, 1), ratio(-2, 1), None);
        assert!(!interval.is_feasible());
        assert!(matches!(
            verdict_for(&Rational::zero(), &interval),
            MwVerdict::Fail { side: Side::Lower, .. }
        ));
        assert!(matches!(
            verdict_for(&ratio(5, 2), &interval),
            MwVerdict::Fail { side: Side::Upper, .. }
        ));
    }

    #[test]
    fn verdict_serializes_with_tag() {
        let v = MwVerdict::Fail {
            side: Side::Upper,
            margin: ratio(1, 1),
        };
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"verdict":"fail","side":"upper","margin":"1/1"}"#);
        let b = regime_bounds(1, 1, 2, &Rational::zero()).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(
            json,
            r#"{"state":"closed","lower":"-2/1","upper":"2/1","regime_label":"ii"}"#
        );
        assert_eq!(serde_json::from_str::<BoundInterval>(&json).unwrap(), b);
    }
}
