//! Critical values of the stability parameter and the chambers between them.
//!
//! For a type `t = (p, q, a, b)` a value α is critical when some sub-type
//! `t' = (p', q', a', b')` with `p'/(p'+q') ≠ p/(p+q)` has the same α-slope
//! as `t`. The α-slope of a sub-type depends only on `(p', q', d')` with
//! `d' = a' + b'`, so walls are witnessed by those triples.
//!
//! For fixed `(p', q')`, writing `r' = p' + q'`, `n = p + q`, the equation
//! is linear and gives
//!
//! ```text
//! α(d') = ((a + b)·r' - d'·n) / (p'·n - p·r')
//! ```
//!
//! which is affine in `d'`. Inverting it at the ends of `[lo, hi]` gives the
//! exact range of `d'` to scan, so no degree cutoff is needed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::milnor_wood::regime_bounds_unchecked;
use crate::model::{GeometryContext, HitchinPairType};
use crate::rational::Rational;

/// Numerical data `(p', q', d')` of a sub-type, serialized as a
/// three-element array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32, i64)", into = "(u32, u32, i64)")]
pub struct WallWitness {
    pub p_sub: u32,
    pub q_sub: u32,
    pub d_sub: i64,
}

impl From<(u32, u32, i64)> for WallWitness {
    fn from((p_sub, q_sub, d_sub): (u32, u32, i64)) -> Self {
        Self { p_sub, q_sub, d_sub }
    }
}

impl From<WallWitness> for (u32, u32, i64) {
    fn from(w: WallWitness) -> Self {
        (w.p_sub, w.q_sub, w.d_sub)
    }
}

impl WallWitness {
    pub fn new(p_sub: u32, q_sub: u32, d_sub: i64) -> Self {
        Self { p_sub, q_sub, d_sub }
    }

    pub fn rank(&self) -> u32 {
        self.p_sub + self.q_sub
    }

    /// Rank bounds of a proper, non-zero sub-type of `t`.
    pub fn check_ranks(&self, t: &HitchinPairType) -> Result<()> {
        if !rank_pair_admissible(t, self.p_sub, self.q_sub) {
            return Err(Error::InvalidWitness(format!(
                "({}, {}) is not a proper non-zero rank pair of ({}, {})",
                self.p_sub,
                self.q_sub,
                t.p(),
                t.q()
            )));
        }
        Ok(())
    }
}

fn rank_pair_admissible(t: &HitchinPairType, p_sub: u32, q_sub: u32) -> bool {
    let r = p_sub + q_sub;
    p_sub <= t.p() && q_sub <= t.q() && r >= 1 && r < t.total_rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub alpha: Rational,
    /// Sorted, deduplicated, non-empty.
    pub witnesses: Vec<WallWitness>,
}

/// Open interval between consecutive walls. An end that is an end of the
/// scanned interval (and not itself a wall) belongs to the chamber and is
/// marked closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Chamber {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    #[serde(rename = "type")]
    pub pair_type: HitchinPairType,
    pub interval: (Rational, Rational),
    pub walls: Vec<Wall>,
    pub witness_counts: Vec<usize>,
    pub chambers: Vec<Chamber>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WallOptions {
    /// Keep only witnesses admitting a degree split whose sub-type satisfies
    /// the rank-free Milnor–Wood bounds at the wall.
    pub mw_filter: bool,
    pub ctx: Option<GeometryContext>,
}

impl WallOptions {
    pub fn filtered(ctx: GeometryContext) -> Self {
        Self {
            mw_filter: true,
            ctx: Some(ctx),
        }
    }
}

/// `p'·n - p·r'`; zero exactly when the rank ratios agree.
fn ratio_gap(t: &HitchinPairType, p_sub: u32, q_sub: u32) -> i64 {
    i64::from(p_sub) * i64::from(t.total_rank()) - i64::from(t.p()) * i64::from(p_sub + q_sub)
}

/// The unique α at which the witness has the same α-slope as `t`, or `None`
/// when its rank ratio equals that of `t`.
pub fn wall_alpha(t: &HitchinPairType, w: &WallWitness) -> Result<Option<Rational>> {
    w.check_ranks(t)?;
    let gap = ratio_gap(t, w.p_sub, w.q_sub);
    if gap == 0 {
        return Ok(None);
    }
    let num = BigInt::from(t.total_degree()) * BigInt::from(w.rank())
        - BigInt::from(w.d_sub) * BigInt::from(t.total_rank());
    Ok(Some(Rational::new(num, gap)?))
}

/// All walls in the closed interval `[lo, hi]`, sorted by α, with witnesses
/// of equal α merged.
pub fn enumerate_walls(
    t: &HitchinPairType,
    lo: &Rational,
    hi: &Rational,
    opts: &WallOptions,
) -> Result<Vec<Wall>> {
    if lo > hi {
        return Err(Error::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let filter_deg_l = if opts.mw_filter {
        match opts.ctx {
            Some(ctx) if ctx.twist_degree() >= 0 => Some(ctx.twist_degree()),
            _ => return Err(Error::MissingFilterContext),
        }
    } else {
        None
    };

    let families: Vec<(u32, u32)> = (0..=t.p())
        .flat_map(|ps| (0..=t.q()).map(move |qs| (ps, qs)))
        .filter(|&(ps, qs)| rank_pair_admissible(t, ps, qs) && ratio_gap(t, ps, qs) != 0)
        .collect();

    let found: Vec<Vec<(Rational, WallWitness)>> = families
        .par_iter()
        .map(|&(ps, qs)| family_walls(t, ps, qs, lo, hi, filter_deg_l))
        .collect::<Result<_>>()?;

    let mut merged: BTreeMap<Rational, Vec<WallWitness>> = BTreeMap::new();
    for (alpha, w) in found.into_iter().flatten() {
        merged.entry(alpha).or_default().push(w);
    }
    Ok(merged
        .into_iter()
        .map(|(alpha, mut witnesses)| {
            witnesses.sort();
            witnesses.dedup();
            Wall { alpha, witnesses }
        })
        .collect())
}

fn family_walls(
    t: &HitchinPairType,
    p_sub: u32,
    q_sub: u32,
    lo: &Rational,
    hi: &Rational,
    filter_deg_l: Option<i64>,
) -> Result<Vec<(Rational, WallWitness)>> {
    let gap = Rational::from_integer(ratio_gap(t, p_sub, q_sub));
    let n = Rational::from_integer(t.total_rank());
    let base = Rational::from_integer(t.total_degree() * i64::from(p_sub + q_sub));
    // d'(α) = ((a + b)·r' - α·gap) / n
    let degree_at = |alpha: &Rational| (&base - alpha * &gap) / &n;
    let (d_lo, d_hi) = {
        let x = degree_at(lo);
        let y = degree_at(hi);
        if x <= y { (x, y) } else { (y, x) }
    };
    let first = to_i64(d_lo.ceil())?;
    let last = to_i64(d_hi.floor())?;

    let mut out = Vec::new();
    for d_sub in first..=last {
        let w = WallWitness::new(p_sub, q_sub, d_sub);
        let alpha = wall_alpha(t, &w)?.expect("ratio gap is non-zero");
        debug_assert!(&alpha >= lo && &alpha <= hi);
        if let Some(deg_l) = filter_deg_l {
            if !witness_passes_filter(&w, deg_l, &alpha) {
                continue;
            }
        }
        out.push((alpha, w));
    }
    Ok(out)
}

fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::DegreeOverflow(x.to_string()))
}

/// Whether some split `a' + b' = d'` gives a sub-type whose Toledo invariant
/// lies in its own rank-free bounds at α.
///
/// A side of rank zero has degree zero, so the split is forced and `τ' = 0`.
/// Otherwise `τ'(a') = 2a' - 2p'd'/r'` is affine in `a'`, and the admissible
/// `a'` form a closed rational interval that must contain an integer.
pub fn witness_passes_filter(w: &WallWitness, deg_l: i64, alpha: &Rational) -> bool {
    let bounds = regime_bounds_unchecked(w.p_sub, w.q_sub, deg_l, alpha);
    if !bounds.is_feasible() {
        return false;
    }
    if w.p_sub == 0 || w.q_sub == 0 {
        return bounds.contains(&Rational::zero());
    }
    let offset = Rational::new(2 * i64::from(w.p_sub) * w.d_sub, i64::from(w.rank()))
        .expect("positive rank");
    let half = Rational::new(1, 2).expect("non-zero");
    let a_min = (bounds.lower_bound() + &offset) * &half;
    let a_max = (bounds.upper_bound() + &offset) * &half;
    a_min.ceil() <= a_max.floor()
}

/// Walls in `[lo, hi]` and the chambers between them.
pub fn chamber_report(
    t: &HitchinPairType,
    lo: &Rational,
    hi: &Rational,
    opts: &WallOptions,
) -> Result<ChamberReport> {
    let walls = enumerate_walls(t, lo, hi, opts)?;
    let chambers = chambers_between(lo, hi, &walls);
    Ok(ChamberReport {
        pair_type: *t,
        interval: (lo.clone(), hi.clone()),
        witness_counts: walls.iter().map(|w| w.witnesses.len()).collect(),
        walls,
        chambers,
    })
}

/// Components of `[lo, hi]` minus the wall points.
fn chambers_between(lo: &Rational, hi: &Rational, walls: &[Wall]) -> Vec<Chamber> {
    let mut chambers = Vec::with_capacity(walls.len() + 1);
    let mut start = lo.clone();
    let mut start_closed = true;
    for wall in walls {
        if wall.alpha == start {
            start_closed = false;
            continue;
        }
        chambers.push(Chamber {
            lo: start,
            hi: wall.alpha.clone(),
            lo_closed: start_closed,
            hi_closed: false,
        });
        start = wall.alpha.clone();
        start_closed = false;
    }
    let at_wall = walls.last().is_some_and(|w| &w.alpha == hi);
    if !at_wall && (&start < hi || start_closed) {
        chambers.push(Chamber {
            lo: start,
            hi: hi.clone(),
            lo_closed: start_closed,
            hi_closed: true,
        });
    }
    chambers
}
