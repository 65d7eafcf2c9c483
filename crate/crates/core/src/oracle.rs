//! Slow, independent re-derivations used as ground truth in tests and by the
//! `selftest` command.
//!
//! [`brute_force_walls`] does not share code with [`crate::walls`]: it scans
//! every sub-type within a degree bound and locates each root from two
//! evaluations of the quiver α-slope. [`envelope_bounds`] recovers the
//! rank-free Milnor–Wood bounds by optimizing the rank-dependent ones over
//! all Higgs field ranks.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::irreducibility_certificate;
use crate::error::{Error, Result};
use crate::milnor_wood::{rank_bounds, regime_bounds, BoundInterval};
use crate::model::{
    alpha_slope_quiver, alpha_slope_upq, alpha_to_c_pair, compare_at, toledo, toledo_from_slopes,
    HiggsRankPair, HitchinPairType, ParameterVector, QuiverNumericalType, VertexData,
};
use crate::rational::Rational;
use crate::walls::{enumerate_walls, Wall, WallOptions, WallWitness};

/// Smallest degree bound that covers every wall in `[lo, hi]`.
///
/// A witness `(p', q', d')` has its wall at α with
/// `d'·n = (a+b)·r' - α·(p'·n - p·r')`. Since `r' < n` and
/// `|p'·n - p·r'| ≤ p·n`, this gives `|d'| ≤ |a+b| + p·max(|lo|, |hi|)`.
pub fn required_degree_bound(t: &HitchinPairType, lo: &Rational, hi: &Rational) -> BigInt {
    let reach = std::cmp::max(lo.abs(), hi.abs());
    let bound = Rational::from_integer(t.total_degree().abs())
        + Rational::from_integer(t.p()) * reach;
    bound.ceil()
}

/// Walls in `[lo, hi]` by exhaustive scan over all `|d'| ≤ degree_bound`.
/// Refuses to run when the bound could miss a wall.
pub fn brute_force_walls(
    t: &HitchinPairType,
    lo: &Rational,
    hi: &Rational,
    degree_bound: u64,
) -> Result<Vec<Wall>> {
    if lo > hi {
        return Err(Error::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let required = required_degree_bound(t, lo, hi);
    if BigInt::from(degree_bound) < required {
        return Err(Error::InsufficientDegreeBound {
            given: degree_bound,
            required: required.to_string(),
        });
    }
    let bound = i64::try_from(degree_bound).map_err(|_| Error::DegreeOverflow(degree_bound.to_string()))?;
    let whole = t.doubled_quiver_type();
    let whole_ratio = Rational::new(t.p(), t.total_rank())?;
    let at = |alpha: Rational| ParameterVector::new(vec![alpha, Rational::zero()]);

    let mut found: BTreeMap<Rational, Vec<WallWitness>> = BTreeMap::new();
    for p_sub in 0..=t.p() {
        for q_sub in 0..=t.q() {
            let r_sub = p_sub + q_sub;
            if r_sub == 0 || r_sub >= t.total_rank() {
                continue;
            }
            if Rational::new(p_sub, r_sub)? == whole_ratio {
                continue;
            }
            for d_sub in -bound..=bound {
                // any split of d' gives the same α-slope
                let sub = QuiverNumericalType::new(vec![
                    VertexData {
                        rank: p_sub,
                        degree: d_sub,
                    },
                    VertexData {
                        rank: q_sub,
                        degree: 0,
                    },
                ])?;
                // μ_α(sub) - μ_α(whole) is affine in α
                let f0 = alpha_slope_quiver(&sub, &at(Rational::zero()))?
                    - alpha_slope_quiver(&whole, &at(Rational::zero()))?;
                let f1 = alpha_slope_quiver(&sub, &at(Rational::one()))?
                    - alpha_slope_quiver(&whole, &at(Rational::one()))?;
                let rate = f1 - &f0;
                let root = (-f0)
                    .checked_div(&rate)
                    .expect("distinct rank ratios give a non-constant difference");
                if &root >= lo && &root <= hi {
                    found
                        .entry(root)
                        .or_default()
                        .push(WallWitness::new(p_sub, q_sub, d_sub));
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(alpha, mut witnesses)| {
            witnesses.sort();
            Wall { alpha, witnesses }
        })
        .collect())
}

/// Rank-free Milnor–Wood bounds obtained by scanning every Higgs field rank
/// in `0..=min(p,q)`: the upper bound is the largest rank-dependent upper
/// bound, the lower bound the smallest rank-dependent lower bound.
pub fn envelope_bounds(p: u32, q: u32, deg_l: i64, alpha: &Rational) -> Result<BoundInterval> {
    if deg_l < 0 {
        return Err(Error::NegativeTwist(deg_l));
    }
    let t = HitchinPairType::new(p, q, 0, 0)?;
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for r in 0..=t.min_rank() {
        let b = rank_bounds(&t, deg_l, alpha, &HiggsRankPair::new(r, r))?;
        let lo = b.lower_bound().clone();
        let hi = b.upper_bound().clone();
        if lower.as_ref().is_none_or(|cur| &lo < cur) {
            lower = Some(lo);
        }
        if upper.as_ref().is_none_or(|cur| &hi > cur) {
            upper = Some(hi);
        }
    }
    Ok(BoundInterval::from_bounds(
        lower.expect("rank 0 is always scanned"),
        upper.expect("rank 0 is always scanned"),
        None,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFailure {
    pub trial: u64,
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub passed: u64,
    pub failures: Vec<CaseFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub trials: u64,
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
}

type Case = fn(&mut ChaCha8Rng) -> std::result::Result<(), (String, String)>;

const SUITES: &[(&str, Case)] = &[
    ("translation_invariance", translation_case),
    ("duality", duality_case),
    ("specialization", specialization_case),
    ("chern_weil_round_trip", chern_weil_case),
    ("degree_condition_implication", degree_condition_case),
    ("envelope_identity", envelope_case),
    ("wall_oracle_agreement", wall_oracle_case),
];

/// Runs every randomized invariant suite for `trials` cases each.
///
/// Case `i` of suite `s` draws from a ChaCha8 stream seeded with `seed` on
/// stream number `s·2³² + i`, so reports depend only on `(seed, trials)` and
/// not on scheduling. Failures carry the reproducing input.
pub fn property_driver(seed: u64, trials: u64) -> Result<SelfTestReport> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let suites: Vec<SuiteReport> = SUITES
        .iter()
        .enumerate()
        .map(|(s, &(name, case))| {
            let failures: Vec<CaseFailure> = (0..trials)
                .into_par_iter()
                .filter_map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(((s as u64) << 32) | i);
                    case(&mut rng).err().map(|(input, detail)| CaseFailure {
                        trial: i,
                        input,
                        detail,
                    })
                })
                .collect();
            SuiteReport {
                name: name.to_string(),
                cases: trials,
                passed: trials - failures.len() as u64,
                failures,
            }
        })
        .collect();
    let all_passed = suites.iter().all(|s| s.failures.is_empty());
    Ok(SelfTestReport {
        seed,
        trials,
        suites,
        all_passed,
    })
}

fn rand_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    let den = rng.random_range(1..=6_i64);
    let num = rng.random_range(-span * den..=span * den);
    Rational::new(num, den).expect("positive denominator")
}

fn rand_type(rng: &mut ChaCha8Rng) -> HitchinPairType {
    let p = rng.random_range(1..=8);
    let q = rng.random_range(1..=8);
    let a = rng.random_range(-20..=20);
    let b = rng.random_range(-20..=20);
    HitchinPairType::new(p, q, a, b).expect("positive ranks")
}

fn rand_quiver_type(rng: &mut ChaCha8Rng, vertices: usize) -> QuiverNumericalType {
    loop {
        let data: Vec<VertexData> = (0..vertices)
            .map(|_| VertexData {
                rank: rng.random_range(0..=4),
                degree: rng.random_range(-10..=10),
            })
            .collect();
        if let Ok(e) = QuiverNumericalType::new(data) {
            return e;
        }
    }
}

fn check(ok: bool, input: impl FnOnce() -> String, detail: &str) -> std::result::Result<(), (String, String)> {
    if ok {
        Ok(())
    } else {
        Err((input(), detail.to_string()))
    }
}

fn translation_case(rng: &mut ChaCha8Rng) -> std::result::Result<(), (String, String)> {
    let n = rng.random_range(1..=5);
    let sub = rand_quiver_type(rng, n);
    let whole = rand_quiver_type(rng, n);
    let alpha = ParameterVector::new((0..n).map(|_| rand_rational(rng, 10)).collect());
    let shift = rand_rational(rng, 10);
    let moved = alpha.translated(&shift);
    let input = || format!("sub={sub:?} whole={whole:?} alpha={alpha:?} shift={shift}");
    for e in [&sub, &whole] {
        let before = alpha_slope_quiver(e, &alpha).map_err(|err| (input(), err.to_string()))?;
        let after = alpha_slope_quiver(e, &moved).map_err(|err| (input(), err.to_string()))?;
        check(after == before + &shift, input, "slope did not shift by the constant")?;
    }
    let s0 = compare_at(&sub, &whole, &alpha).map_err(|err| (input(), err.to_string()))?;
    let s1 = compare_at(&sub, &whole, &moved).map_err(|err| (input(), err.to_string()))?;
    check(s0 == s1, input, "comparison changed under translation")
}

fn duality_case(rng: &mut ChaCha8Rng) -> std::result::Result<(), (String, String)> {
    let t = rand_type(rng);
    let deg_l = rng.random_range(0..=6);
    let alpha = rand_rational(rng, deg_l + 3);
    let input = || format!("type={t:?} degL={deg_l} alpha={alpha}");
    check(toledo(&t) == -toledo(&t.swapped()), input, "toledo is not odd under swap")?;
    check(toledo(&t) == toledo_from_slopes(&t), input, "toledo formulas disagree")?;
    let b = regime_bounds(t.p(), t.q(), deg_l, &alpha).map_err(|e| (input(), e.to_string()))?;
    let d = regime_bounds(t.q(), t.p(), deg_l, &-&alpha).map_err(|e| (input(), e.to_string()))?;
    check(
        d.lower_bound() == &-b.upper_bound() && d.upper_bound() == &-b.lower_bound(),
        input,
        "bounds are not reflected under swap",
    )
}

fn specialization_case(rng: &mut ChaCha8Rng) -> std::result::Result<(), (String, String)> {
    let t = rand_type(rng);
    let alpha = rand_rational(rng, 10);
    let input = || format!("type={t:?} alpha={alpha}");
    let via_quiver = alpha_slope_quiver(&t.doubled_quiver_type(), &ParameterVector::upq(&alpha))
        .map_err(|e| (input(), e.to_string()))?;
    check(alpha_slope_upq(&t, &alpha) == via_quiver, input, "pair slope differs from quiver slope")
}

fn chern_weil_case(rng: &mut ChaCha8Rng) -> std::result::Result<(), (String, String)> {
    let t = rand_type(rng);
    let alpha = rand_rational(rng, 10);
    let input = || format!("type={t:?} alpha={alpha}");
    let (c1, c2) = alpha_to_c_pair(&t, &alpha);
    let n = Rational::from_integer(t.total_rank());
    let avg = Rational::from_integer(t.p()) / &n * &c1 + Rational::from_integer(t.q()) / &n * &c2;
    let mu = Rational::new(t.total_degree(), t.total_rank()).expect("positive rank");
    check(&c2 - &c1 == alpha, input, "c2 - c1 differs from alpha")?;
    check(avg == mu, input, "weighted average differs from the slope")
}

fn degree_condition_case(rng: &mut ChaCha8Rng) -> std::result::Result<(), (String, String)> {
    // draw until the Toledo bound holds; a and b range over a box wide enough
    // to reach both ends of the bound
    let (t, genus) = loop {
        let p = rng.random_range(1..=8_u32);
        let q = rng.random_range(1..=8_u32);
        if p == q {
            continue;
        }
        let genus = rng.random_range(2..=5_u32);
        let k = 2 * i64::from(genus) - 2;
        let reach = i64::from(p.max(q)) * k;
        let a = rng.random_range(-reach..=reach);
        let b = rng.random_range(-reach..=reach);
        let t = HitchinPairType::new(p, q, a, b).expect("positive ranks");
        let bound = Rational::from_integer(i64::from(p.min(q)) * k);
        if toledo(&t).abs() <= bound {
            break (t, genus);
        }
    };
    let input = || format!("type={t:?} genus={genus}");
    let cert = irreducibility_certificate(&t, genus, &Rational::zero()).map_err(|e| (input(), e.to_string()))?;
    let relevant = if t.q() <= t.p() {
        cert.condition1.degree_condition
    } else {
        cert.condition2.degree_condition
    };
    check(cert.tau_bound_ok && relevant, input, "Toledo bound holds but the degree condition fails")
}

fn envelope_case(rng: &mut ChaCha8Rng) -> std::result::Result<(), (String, String)> {
    let p = rng.random_range(1..=8_u32);
    let q = rng.random_range(1..=8_u32);
    let deg_l = rng.random_range(0..=6_i64);
    // hit the regime boundaries exactly a quarter of the time
    let alpha = match rng.random_range(0..8) {
        0 => Rational::from_integer(-deg_l),
        1 => Rational::from_integer(deg_l),
        _ => rand_rational(rng, deg_l + 3),
    };
    let input = || format!("p={p} q={q} degL={deg_l} alpha={alpha}");
    let formula = regime_bounds(p, q, deg_l, &alpha).map_err(|e| (input(), e.to_string()))?;
    let scan = envelope_bounds(p, q, deg_l, &alpha).map_err(|e| (input(), e.to_string()))?;
    check(formula.untagged() == scan, input, "regime bounds differ from the rank envelope")
}

fn wall_oracle_case(rng: &mut ChaCha8Rng) -> std::result::Result<(), (String, String)> {
    let p = rng.random_range(1..=3_u32);
    let q = rng.random_range(1..=3_u32);
    let t = HitchinPairType::new(p, q, rng.random_range(-3..=3), rng.random_range(-3..=3))
        .expect("positive ranks");
    let x = rand_rational(rng, 6);
    let y = rand_rational(rng, 6);
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let input = || format!("type={t:?} interval=[{lo}, {hi}]");
    let fast = enumerate_walls(&t, &lo, &hi, &WallOptions::default()).map_err(|e| (input(), e.to_string()))?;
    let bound = required_degree_bound(&t, &lo, &hi);
    let bound = u64::try_from(bound).map_err(|e| (input(), e.to_string()))?;
    let slow = brute_force_walls(&t, &lo, &hi, bound).map_err(|e| (input(), e.to_string()))?;
    check(fast == slow, input, "enumeration differs from brute force")?;
    for wall in &fast {
        for w in &wall.witnesses {
            if !crossing_is_strict(&t, w, &wall.alpha) {
                return Err((input(), format!("witness {w:?} does not cross at {}", wall.alpha)));
            }
        }
    }
    Ok(())
}

/// Whether the sub-type's α-slope equals that of `t` at `alpha` and changes
/// side strictly across it (checked at `alpha ± 1/1000`).
pub fn crossing_is_strict(t: &HitchinPairType, w: &WallWitness, alpha: &Rational) -> bool {
    let Ok(sub) = QuiverNumericalType::from_pairs(&[(w.p_sub, w.d_sub), (w.q_sub, 0)]) else {
        return false;
    };
    let whole = t.doubled_quiver_type();
    let eps = Rational::new(1, 1000).expect("non-zero");
    let sign = |a: Rational| compare_at(&sub, &whole, &ParameterVector::upq(&a)).ok();
    let at = sign(alpha.clone());
    let below = sign(alpha - &eps);
    let above = sign(alpha + &eps);
    at == Some(Ordering::Equal)
        && matches!(
            (below, above),
            (Some(Ordering::Less), Some(Ordering::Greater)) | (Some(Ordering::Greater), Some(Ordering::Less))
        )
}
