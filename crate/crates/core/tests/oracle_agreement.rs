use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trustrec::oracle::{finite_diff_gradient, grid_max_on_sphere, simulate_profit};
use trustrec::*;

const M: f64 = 5.0;

fn rv(v: &[f64]) -> RatingVector64 {
    RatingVector::unbounded(v.to_vec(), M).unwrap()
}

fn pv(v: &[f64]) -> ProfitVector64 {
    ProfitVector::new(v.to_vec()).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> (RatingVector64, ProfitVector64) {
    let c: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..M)).collect();
    let p: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..10.0)).collect();
    (rv(&c), pv(&p))
}

fn random_point_in_ball(rng: &mut ChaCha8Rng, s: &SphereRegion64) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..s.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
        if d.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            let r = s.radius();
            return s.center.iter().zip(&d).map(|(o, x)| o + r * x).collect();
        }
    }
}

#[test]
fn linear_example_matches_fine_grid() {
    let c = rv(&[4.0, 2.0]);
    let p = pv(&[1.0, 3.0]);
    let rep = solve_linear(&c, &p, 0.9).unwrap();
    let g = grid_max_on_sphere(&c, &p, 0.9, PurchaseModel::Linear, 1_000_000).unwrap();
    for (a, b) in rep.recommendation.values().iter().zip(g.point.values()) {
        assert!((a - b).abs() < 1e-3, "{a} vs {b}");
    }
    assert!(g.profit <= rep.expected_profit * (1.0 + 1e-12));
}

#[test]
fn linear_beats_interior_samples_and_matches_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..24 {
        let n = 1 + k % 4;
        let (c, p) = random_instance(&mut rng, n);
        let tau = rng.random_range(0.5..0.99);
        let rep = solve_linear(&c, &p, tau).unwrap();
        let s = dice_sphere(&c, tau).unwrap();
        for _ in 0..10_000 {
            let r = rv(&random_point_in_ball(&mut rng, &s));
            assert!(expected_profit_linear(&p, &r).unwrap() <= rep.expected_profit);
        }
        if n <= 3 {
            let g = grid_max_on_sphere(&c, &p, tau, PurchaseModel::Linear, 200_000).unwrap();
            let rel = (rep.expected_profit - g.profit) / rep.expected_profit;
            assert!((-1e-12..1e-4).contains(&rel), "n={n} rel={rel}");
        }
    }
}

#[test]
fn linear_objective_has_no_interior_stationary_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (c, p) = random_instance(&mut rng, 4);
    let s = dice_sphere(&c, 0.8).unwrap();
    for _ in 0..100 {
        let r = random_point_in_ball(&mut rng, &s);
        let g = finite_diff_gradient(|x| expected_profit_linear(&p, &rv(x)).unwrap(), &r, 1e-5)
            .unwrap();
        for (gi, pi) in g.iter().zip(p.values()) {
            assert!((gi - pi / M).abs() < 1e-6);
        }
    }
}

#[test]
fn dice_gradient_vanishes_at_customer() {
    let c = rv(&[4.0, 2.0, 3.5]);
    let g = finite_diff_gradient(|x| dice(&c, &rv(x)).unwrap(), c.values(), 1e-5).unwrap();
    assert!(g.iter().all(|x| x.abs() < 1e-8), "{g:?}");
}

#[test]
fn multinomial_gradient_nonzero_with_distinct_profits() {
    let p = pv(&[1.0, 3.0]);
    let f = |x: &[f64]| expected_profit_multinomial(&p, &rv(x)).unwrap();
    // At r = (a, a): ∂E/∂r_i = (p_i - E) / Σr = (p_i - 2) / 2a.
    let g = finite_diff_gradient(f, &[2.0, 2.0], 1e-5).unwrap();
    assert!(
        (g[0] + 0.25).abs() < 1e-8 && (g[1] - 0.25).abs() < 1e-8,
        "{g:?}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (c, p) = random_instance(&mut rng, 3);
    let s = dice_sphere(&c, 0.7).unwrap();
    for _ in 0..100 {
        let r = random_point_in_ball(&mut rng, &s);
        if r.iter().any(|&x| x <= 1e-3) {
            continue;
        }
        let g = finite_diff_gradient(
            |x| expected_profit_multinomial(&p, &rv(x)).unwrap(),
            &r,
            1e-6,
        )
        .unwrap();
        assert!(g.iter().map(|x| x * x).sum::<f64>() > 1e-12);
    }
}

#[test]
fn multinomial_example_matches_fine_grid() {
    let c = rv(&[4.0, 2.0]);
    let p = pv(&[1.0, 3.0]);
    let cfg = SearchConfig::new(1e-6).unwrap();
    let rep = solve_multinomial(&c, &p, 0.9, &cfg).unwrap();
    let g = grid_max_on_sphere(&c, &p, 0.9, PurchaseModel::Multinomial, 1_000_000).unwrap();
    assert!((rep.expected_profit - g.profit).abs() < 1e-4);
    assert!(g.profit <= rep.expected_profit + 1e-6 + 1e-3 * g.profit);

    // The ball holds points beating E_p(c) = 5/3, and decide finds one.
    assert!(g.profit > 5.0 / 3.0);
    assert!(decide(&c, &p, 0.9, 5.0 / 3.0).unwrap().feasible);
}

#[test]
fn jaccard_ball_agrees_with_measure_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = rv(&[1.0, 0.0]);
    let tau = 0.5;
    let s = jaccard_sphere(&c, tau).unwrap();
    let mut inside = 0;
    for _ in 0..1_000_000 {
        let r = [rng.random_range(0.0..4.0), rng.random_range(0.0..2.0)];
        let j = jaccard(&c, &rv(&r)).unwrap();
        if (j - tau).abs() <= 1e-9 {
            continue;
        }
        assert_eq!(j >= tau, s.contains(&r), "r = {r:?}");
        inside += usize::from(j >= tau);
    }
    assert!(inside > 10_000);
}

#[test]
fn simulation_agrees_with_analytic_profit() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut hits = [0usize; 2];
    for seed in 0..100u64 {
        let n = rng.random_range(1..=5);
        let r: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..M)).collect();
        let p: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..10.0)).collect();
        let (r, p) = (rv(&r), pv(&p));
        for (slot, model) in [PurchaseModel::Linear, PurchaseModel::Multinomial]
            .into_iter()
            .enumerate()
        {
            let est = simulate_profit(&p, &r, model, 20_000, seed).unwrap();
            let exact = model.expected_profit(&p, &r).unwrap();
            hits[slot] += usize::from(est.agrees_with(exact, 3.0));
        }
    }
    assert!(hits.iter().all(|&h| h >= 99), "{hits:?}");
}
