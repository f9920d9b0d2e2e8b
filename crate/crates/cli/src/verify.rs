//! Desk-scale self-check: oracle comparisons and property suites over fresh
//! random instances, reported as a pass/fail table.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use trustrec::oracle::{grid_max_on_sphere, simulate_profit};
use trustrec::{
    dice, dice_sphere, expected_profit_linear, expected_profit_multinomial, gain_lower_bound,
    solve_linear, solve_multinomial, weak_gain_bound, ProfitVector64, PurchaseModel,
    RatingVector64, SearchConfig, SolveReport64,
};

pub const DEFAULT_TAUS: [f64; 4] = [0.5, 0.7, 0.9, 0.99];
const M: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Moves the linear solution halfway back toward the ball's center.
    ShrinkLinearStep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub resolution: usize,
    pub trials: u64,
    pub seed: u64,
    pub taus: Vec<f64>,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            resolution: 100_000,
            trials: 100_000,
            seed: 0,
            taus: DEFAULT_TAUS.to_vec(),
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, failures: usize, total: usize) -> Self {
        Self {
            name: name.into(),
            passed: failures == 0,
            detail: format!("{failures} failures in {total} cases"),
        }
    }
}

type Outcome = Result<CheckResult, trustrec::Error>;
type Check = fn(&VerifyConfig, &mut ChaCha8Rng) -> Result<Vec<CheckResult>, trustrec::Error>;

const CHECKS: [Check; 9] = [
    dice_properties,
    sphere_equivalence,
    linear_vs_grid,
    gain_bound,
    bound_ordering,
    lagrange_stationarity,
    reduction_identity,
    multinomial_vs_grid,
    monte_carlo,
];

/// Runs every check. Each gets its own generator derived from `cfg.seed`, so
/// results do not depend on scheduling.
pub fn verify(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, trustrec::Error> {
    if cfg.taus.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
        return Err(trustrec::Error::InvalidConfig(
            "verification thresholds must lie in (0, 1)".into(),
        ));
    }
    let per_check: Vec<_> = CHECKS
        .par_iter()
        .enumerate()
        .map(|(i, check)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
            check(cfg, &mut rng)
        })
        .collect();
    let mut out = Vec::new();
    for rows in per_check {
        out.extend(rows?);
    }
    Ok(out)
}

pub fn render_table(results: &[CheckResult]) -> String {
    let width = results
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut s = format!("{:<width$}  RESULT  DETAIL\n", "CHECK");
    for r in results {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{:<width$}  {verdict:<6}  {}", r.name, r.detail);
    }
    s
}

fn rv(v: Vec<f64>) -> RatingVector64 {
    RatingVector64::unbounded(v, M).expect("finite ratings")
}

fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> (RatingVector64, ProfitVector64) {
    let c = (0..n).map(|_| rng.random_range(0.2..M)).collect();
    let p = (0..n).map(|_| rng.random_range(0.1..10.0)).collect();
    (rv(c), ProfitVector64::new(p).expect("positive profits"))
}

fn linear(
    cfg: &VerifyConfig,
    c: &RatingVector64,
    p: &ProfitVector64,
    tau: f64,
) -> Result<SolveReport64, trustrec::Error> {
    let mut rep = solve_linear(c, p, tau)?;
    if cfg.fault == Some(Fault::ShrinkLinearStep) {
        let center = dice_sphere(c, tau)?.center;
        let shrunk = rep
            .recommendation
            .values()
            .iter()
            .zip(center)
            .map(|(r, o)| o + 0.5 * (r - o))
            .collect();
        rep.recommendation = rv(shrunk);
        rep.achieved_similarity = dice(c, &rep.recommendation)?;
        rep.expected_profit = expected_profit_linear(p, &rep.recommendation)?;
        rep.gain_ratio = (rep.expected_profit - rep.baseline_profit) / rep.baseline_profit;
    }
    Ok(rep)
}

fn dice_properties(
    _: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    let total = 10_000;
    let mut failures = 0;
    for _ in 0..total {
        let n = rng.random_range(1..=50);
        let c: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..M)).collect();
        let mut r: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..M)).collect();
        if c.iter().all(|&x| x == 0.0) {
            continue;
        }
        let cv = rv(c.clone());
        let d = dice(&cv, &rv(r.clone()))?;
        let self_sim = dice(&cv, &cv)?;
        for (ri, ci) in r.iter_mut().zip(&c) {
            if *ci > 0.0 {
                *ri = 0.0;
            }
        }
        let disjoint = if r.iter().any(|&x| x > 0.0) {
            dice(&cv, &rv(r))?
        } else {
            0.0
        };
        let ok = (0.0..=1.0).contains(&d) && (self_sim - 1.0).abs() < 1e-12 && disjoint == 0.0;
        failures += usize::from(!ok);
    }
    Ok(vec![CheckResult::new("dice_properties", failures, total)])
}

fn sphere_equivalence(
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    let per_tau = 10_000;
    let mut failures = 0;
    for &tau in &cfg.taus {
        for _ in 0..per_tau {
            let n = rng.random_range(1..=10);
            let (c, _) = random_instance(rng, n);
            let ball = dice_sphere(&c, tau)?;
            let r: Vec<f64> = ball
                .center
                .iter()
                .map(|o| o + rng.random_range(-1.5..1.5) * ball.radius())
                .collect();
            let d = dice(&c, &rv(r.clone()))?;
            if (d - tau).abs() > 1e-9 && (d >= tau) != ball.contains(&r) {
                failures += 1;
            }
        }
    }
    Ok(vec![CheckResult::new(
        "sphere_equivalence",
        failures,
        per_tau * cfg.taus.len(),
    )])
}

fn linear_vs_grid(
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    let total = 10;
    let mut failures = 0;
    for k in 0..total {
        let tau = cfg.taus[k % cfg.taus.len()];
        let (c, p) = random_instance(rng, 2 + k % 2);
        let rep = linear(cfg, &c, &p, tau)?;
        let grid = grid_max_on_sphere(&c, &p, tau, PurchaseModel::Linear, cfg.resolution)?;
        let rel = (rep.expected_profit - grid.profit).abs() / grid.profit;
        let on_surface = (rep.achieved_similarity - tau).abs() <= 1e-9;
        failures += usize::from(rel > 1e-3 || !on_surface);
    }
    Ok(vec![CheckResult::new("linear_vs_grid", failures, total)])
}

fn gain_bound(
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    let per_tau = 200;
    cfg.taus
        .iter()
        .map(|&tau| {
            let bound = gain_lower_bound(tau)?;
            let mut failures = 0;
            for k in 0..per_tau {
                let (c, p) = random_instance(rng, 1 + k % 8);
                let rep = linear(cfg, &c, &p, tau)?;
                failures += usize::from(rep.gain_ratio < bound - 1e-9);
                let scale = rng.random_range(0.5..4.0);
                let prop = ProfitVector64::new(c.values().iter().map(|x| x * scale).collect())?;
                let tight = linear(cfg, &c, &prop, tau)?;
                failures += usize::from((tight.gain_ratio - bound).abs() > 1e-9);
            }
            Ok(CheckResult::new(
                format!("gain_bound[tau={tau}]"),
                failures,
                2 * per_tau,
            ))
        })
        .collect()
}

fn bound_ordering(
    cfg: &VerifyConfig,
    _: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    cfg.taus
        .iter()
        .map(|&tau| -> Outcome {
            let (strong, weak) = (gain_lower_bound(tau)?, weak_gain_bound(tau)?);
            Ok(CheckResult {
                name: format!("bound_ordering[tau={tau}]"),
                passed: weak <= strong,
                detail: format!("weak {weak:.6} <= strong {strong:.6}"),
            })
        })
        .collect()
}

fn lagrange_stationarity(
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    let total = 100;
    let mut failures = 0;
    for k in 0..total {
        let tau = cfg.taus[k % cfg.taus.len()];
        let (c, p) = random_instance(rng, 1 + k % 6);
        let rep = linear(cfg, &c, &p, tau)?;
        let lambda = rep.lambda.unwrap_or(f64::NAN);
        let bad = p
            .values()
            .iter()
            .zip(rep.recommendation.values())
            .zip(c.values())
            .any(|((pi, ri), ci)| {
                let residual = pi / M - 2.0 * lambda * (ri - ci / tau);
                residual.is_nan() || residual.abs() > 1e-9 * (1.0 + pi)
            });
        failures += usize::from(bad);
    }
    Ok(vec![CheckResult::new(
        "lagrange_stationarity",
        failures,
        total,
    )])
}

fn reduction_identity(
    _: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    let total = 10_000;
    let mut failures = 0;
    for _ in 0..total {
        let n = rng.random_range(1..=10);
        let (r, p) = random_instance(rng, n);
        let v = rng.random_range(0.0..10.0);
        let e = expected_profit_multinomial(&p, &r)?;
        let s: f64 = p
            .values()
            .iter()
            .zip(r.values())
            .map(|(pi, ri)| (pi - v) * ri)
            .sum();
        let scale = p
            .values()
            .iter()
            .zip(r.values())
            .map(|(pi, ri)| (pi + v) * ri)
            .sum::<f64>();
        if (e - v).abs() * r.sum() > 1e-12 * scale && (e >= v) != (s >= 0.0) {
            failures += 1;
        }
    }
    Ok(vec![CheckResult::new(
        "reduction_identity",
        failures,
        total,
    )])
}

fn multinomial_vs_grid(
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    let total = 10;
    let mut failures = 0;
    for k in 0..total {
        let tau = cfg.taus[k % cfg.taus.len()];
        let (c, p) = random_instance(rng, 2 + k % 2);
        let search = SearchConfig::relative(&p, 1e-6)?;
        let rep = solve_multinomial(&c, &p, tau, &search)?;
        let grid = grid_max_on_sphere(&c, &p, tau, PurchaseModel::Multinomial, cfg.resolution)?;
        let floor = grid.profit - search.epsilon() - 1e-3 * grid.profit;
        let steps_ok = rep.search.as_ref().is_some_and(|s| s.steps <= s.step_bound);
        failures += usize::from(rep.expected_profit < floor || !steps_ok);
    }
    Ok(vec![CheckResult::new(
        "multinomial_vs_grid",
        failures,
        total,
    )])
}

fn monte_carlo(
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>, trustrec::Error> {
    let fixtures = 5;
    [PurchaseModel::Linear, PurchaseModel::Multinomial]
        .into_iter()
        .map(|model| -> Outcome {
            let mut failures = 0;
            for _ in 0..fixtures {
                let n = rng.random_range(1..=6);
                let (r, p) = random_instance(rng, n);
                let seed = rng.random();
                let est = simulate_profit(&p, &r, model, cfg.trials, seed)?;
                let exact = model.expected_profit(&p, &r)?;
                failures += usize::from(!est.agrees_with(exact, 4.0));
            }
            Ok(CheckResult::new(
                format!("monte_carlo[{}]", model.name()),
                failures,
                fixtures,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig {
            resolution: 20_000,
            trials: 20_000,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn clean_run_passes() {
        let results = verify(&quick()).unwrap();
        assert!(
            results.iter().all(|r| r.passed),
            "{}",
            render_table(&results)
        );
        assert!(
            results
                .iter()
                .filter(|r| r.name.starts_with("bound_ordering"))
                .count()
                == 4
        );
    }

    #[test]
    fn fault_is_caught() {
        let cfg = VerifyConfig {
            fault: Some(Fault::ShrinkLinearStep),
            ..quick()
        };
        let results = verify(&cfg).unwrap();
        let failed: Vec<_> = results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.name.as_str())
            .collect();
        assert!(failed.contains(&"linear_vs_grid"), "{failed:?}");
    }

    #[test]
    fn table_layout() {
        let t = render_table(&[
            CheckResult::new("x", 0, 3),
            CheckResult::new("longer", 1, 3),
        ]);
        assert_eq!(
            t,
            "CHECK   RESULT  DETAIL\nx       PASS    0 failures in 3 cases\nlonger  FAIL    1 failures in 3 cases\n"
        );
    }

    #[test]
    fn rejects_bad_thresholds() {
        let cfg = VerifyConfig {
            taus: vec![1.0],
            ..quick()
        };
        assert!(verify(&cfg).is_err());
    }
}
