//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use upq_core::milnor_wood::regime_formula;
use upq_core::oracle::required_degree_bound;
use upq_core::{
    brute_force_walls, enumerate_walls, envelope_bounds, irreducibility_certificate, property_driver, ratio,
    regime_bounds, HitchinPairType, Rational, Regime, SelfTestReport, WallOptions, WallWitness,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("wall enumeration equals brute force on all small types", wall_sweep),
        ("canonical instance (1,1,1,0) on [-2,2] has walls {-1, 1}", canonical_instance),
        ("rank-free bounds equal the rank envelope on the full grid", envelope_identity),
        ("adjacent regimes agree at alpha = -degL and alpha = degL", regime_continuity),
        ("alpha = 0 bounds are [-min(p,q) degL, min(p,q) degL]", alpha_zero_bounds),
        ("irreducibility certificates for the three reference types", certificates),
        ("Toledo bound implies the degree condition when p != q", degree_condition),
        ("translation invariance and duality on seeded random inputs", translation_and_duality),
        ("walls and selftest output is byte-identical across runs and thread counts", determinism),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn wall_sweep() -> Outcome {
    let start = Instant::now();
    let (lo, hi) = (ratio(-6, 1), ratio(6, 1));
    let mut types = 0;
    let mut walls = 0;
    for p in 1..=4_u32 {
        for q in 1..=(5 - p) {
            for a in -3..=3 {
                for b in -3..=3 {
                    let t = HitchinPairType::new(p, q, a, b).unwrap();
                    let fast = enumerate_walls(&t, &lo, &hi, &WallOptions::default()).map_err(|e| e.to_string())?;
                    let bound = u64::try_from(required_degree_bound(&t, &lo, &hi)).unwrap();
                    let slow = brute_force_walls(&t, &lo, &hi, bound).map_err(|e| e.to_string())?;
                    ensure(fast == slow, || format!("mismatch for {t:?}"))?;
                    types += 1;
                    walls += fast.len();
                }
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{types} types, {walls} walls, {elapsed:.2?}"))
}

fn canonical_instance() -> Outcome {
    let t = HitchinPairType::new(1, 1, 1, 0).unwrap();
    let walls = enumerate_walls(&t, &ratio(-2, 1), &ratio(2, 1), &WallOptions::default()).map_err(|e| e.to_string())?;
    let got: Vec<(Rational, Vec<WallWitness>)> = walls.into_iter().map(|w| (w.alpha, w.witnesses)).collect();
    let want = vec![
        (ratio(-1, 1), vec![WallWitness::new(0, 1, 0), WallWitness::new(1, 0, 1)]),
        (ratio(1, 1), vec![WallWitness::new(0, 1, 1), WallWitness::new(1, 0, 0)]),
    ];
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("exact".to_string())
}

/// 41 equally spaced points on `[-deg L - 2, deg L + 2]`.
fn alpha_grid(deg_l: i64) -> Vec<Rational> {
    let lo = Rational::from_integer(-deg_l - 2);
    let step = Rational::new(2 * deg_l + 4, 40).unwrap();
    (0..=40).map(|i| &lo + Rational::from_integer(i) * &step).collect()
}

fn envelope_identity() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for p in 1..=8_u32 {
        for q in 1..=8_u32 {
            for deg_l in 0..=4_i64 {
                for alpha in alpha_grid(deg_l) {
                    let formula = regime_bounds(p, q, deg_l, &alpha).map_err(|e| e.to_string())?;
                    let scan = envelope_bounds(p, q, deg_l, &alpha).map_err(|e| e.to_string())?;
                    ensure(formula.untagged() == scan, || format!("p={p} q={q} degL={deg_l} alpha={alpha}"))?;
                    cases += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{cases} cases, {elapsed:.2?}"))
}

fn regime_continuity() -> Outcome {
    let mut cases = 0;
    for p in 1..=8_u32 {
        for q in 1..=8_u32 {
            for deg_l in 0..=4_i64 {
                for (alpha, left, right) in [
                    (Rational::from_integer(-deg_l), Regime::I, Regime::II),
                    (Rational::from_integer(deg_l), Regime::II, Regime::III),
                ] {
                    let l = regime_formula(p, q, deg_l, &alpha, left).untagged();
                    let r = regime_formula(p, q, deg_l, &alpha, right).untagged();
                    ensure(l == r, || format!("p={p} q={q} degL={deg_l} at {alpha}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} boundary points"))
}

fn alpha_zero_bounds() -> Outcome {
    let mut cases = 0;
    for p in 1..=8_u32 {
        for q in 1..=8_u32 {
            for deg_l in 0..=4_i64 {
                let b = regime_bounds(p, q, deg_l, &Rational::zero()).map_err(|e| e.to_string())?;
                let m = i64::from(p.min(q)) * deg_l;
                ensure(
                    b.lower_bound() == &Rational::from_integer(-m) && b.upper_bound() == &Rational::from_integer(m),
                    || format!("p={p} q={q} degL={deg_l}: {b:?}"),
                )?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn certificates() -> Outcome {
    let t = |p, q, a, b| HitchinPairType::new(p, q, a, b).unwrap();
    let c = irreducibility_certificate(&t(1, 1, -1, 0), 2, &Rational::zero()).map_err(|e| e.to_string())?;
    ensure(c.closure_irreducible && c.fully_irreducible, || format!("(1,1,-1,0): {c:?}"))?;
    let c = irreducibility_certificate(&t(1, 1, 0, 0), 2, &Rational::zero()).map_err(|e| e.to_string())?;
    ensure(!c.closure_irreducible, || format!("(1,1,0,0): {c:?}"))?;
    let c = irreducibility_certificate(&t(1, 1, 3, 0), 2, &Rational::zero()).map_err(|e| e.to_string())?;
    ensure(!c.tau_bound_ok, || format!("(1,1,3,0): {c:?}"))?;
    Ok("3 of 3".to_string())
}

/// Seed 0, 1000 cases per suite; shared by the criteria that read it.
fn driver_report() -> Result<&'static SelfTestReport, String> {
    static REPORT: OnceLock<Result<SelfTestReport, String>> = OnceLock::new();
    REPORT
        .get_or_init(|| property_driver(0, 1000).map_err(|e| e.to_string()))
        .as_ref()
        .map_err(Clone::clone)
}

fn suite_clean(report: &SelfTestReport, name: &str) -> Result<u64, String> {
    let suite = report
        .suites
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| format!("suite {name} missing"))?;
    ensure(suite.cases == 1000, || format!("{name} ran {} cases", suite.cases))?;
    ensure(suite.failures.is_empty(), || format!("{name}: {:?}", suite.failures.first()))?;
    Ok(suite.cases)
}

fn degree_condition() -> Outcome {
    let report = driver_report()?;
    let n = suite_clean(report, "degree_condition_implication")?;
    Ok(format!("{n} conditioned types, 0 counterexamples"))
}

fn translation_and_duality() -> Outcome {
    let report = driver_report()?;
    let a = suite_clean(report, "translation_invariance")?;
    let b = suite_clean(report, "duality")?;
    Ok(format!("{a} quiver instances, {b} duality cases"))
}

fn upq(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_upq"))
        .args(args)
        .env_remove("UPQ_FORMAT")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let walls = ["walls", "--type", "3,2,1,-2", "--interval", "-6,6"];
    let selftest = ["selftest", "--seed", "0", "--trials", "200"];
    let mut runs = 0;
    for base in [&walls[..], &selftest[..]] {
        let reference = upq(base)?;
        for _ in 0..2 {
            ensure(upq(base)? == reference, || format!("{base:?} differs between runs"))?;
            runs += 1;
        }
        for threads in ["1", "4"] {
            let mut args = base.to_vec();
            args.extend(["--threads", threads]);
            ensure(upq(&args)? == reference, || format!("{base:?} differs with {threads} threads"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} repeated runs identical"))
}
