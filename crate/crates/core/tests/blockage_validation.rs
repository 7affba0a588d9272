//! Cross-module checks: the analytical blockage probability against fully
//! geometric scenes, and schedule independence of the parallel paths.

use ceilsim::blockage::{BlockageMode, BlockageModel, BodyGeometry};
use ceilsim::engine::{
    run_batch, sweep, validate_blockage, Scenario, ScenarioTable, SimulationConfig, SweepSpec,
    UePlacement,
};
use ceilsim::geometry::Point2;

fn explicit_config(r0: f64, n_b: u64, scenes: u64) -> SimulationConfig {
    let mut cfg = SimulationConfig::baseline();
    cfg.delta = 20.0;
    cfg.trials = scenes;
    cfg.seed = 3;
    cfg.ue_placement = UePlacement::FixedPoint(Point2::new(200.0, 200.0));
    cfg.blockage = BlockageModel::new(
        BodyGeometry::new(0.4, 0.4, r0).unwrap(),
        n_b as f64 / (400.0 * 400.0),
        BlockageMode::ExplicitBodies,
    )
    .unwrap();
    cfg.scenario_label = format!("explicit-{r0}-{n_b}");
    cfg
}

#[test]
fn explicit_scenes_match_analytic_within_model_allowance() {
    let edges: Vec<f64> = (0..=25).map(|k| k as f64 * 4.0).collect();
    for (r0, n_b) in [(0.3, 500u64), (0.0, 1000)] {
        let cfg = explicit_config(r0, n_b, 20_000);
        let rows = validate_blockage(&cfg, &edges).unwrap();
        assert!(rows.len() >= 5);
        for row in &rows {
            // Monte Carlo noise plus the documented 0.01 model allowance for
            // the fixed-UE protocol against the uniform-UE analytics.
            let bound = 3.0 * row.stderr + 0.01;
            assert!(
                (row.analytic - row.empirical).abs() <= bound,
                "r0={r0} NB={n_b} d={:.1}: analytic {:.4} empirical {:.4} bound {bound:.4}",
                row.d_a,
                row.analytic,
                row.empirical
            );
        }
    }
}

#[test]
fn validation_is_schedule_independent() {
    let cfg = explicit_config(0.3, 300, 4000);
    let edges: Vec<f64> = (0..=20).map(|k| k as f64 * 5.0).collect();
    let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let pool3 = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let a = pool1.install(|| validate_blockage(&cfg, &edges)).unwrap();
    let b = pool3.install(|| validate_blockage(&cfg, &edges)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn sweep_is_reproducible() {
    let mut base = SimulationConfig::baseline();
    base.trials = 500;
    base.venue = ceilsim::geometry::Venue::new(200.0).unwrap();
    let spec = SweepSpec {
        deltas: vec![40.0, 80.0],
        ap_beamwidths: vec![60f64.to_radians(), 120f64.to_radians()],
        ue_beamwidths: vec![45f64.to_radians()],
        scenarios: vec![Scenario::EmptyHand, Scenario::CrowdedPocket],
    };
    let table = ScenarioTable::defaults();
    let a = sweep(&base, &spec, &table).unwrap();
    let b = sweep(&base, &spec, &table).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.grid.rows.len(), 8);
    assert_eq!(a.optimal.len(), 4);
    // Every optimum equals the best coverage among its grid rows.
    for opt in &a.optimal {
        let best = a
            .grid
            .rows
            .iter()
            .filter(|r| r.delta == opt.delta && r.scenario == opt.scenario)
            .map(|r| r.coverage)
            .fold(0.0f64, f64::max);
        assert_eq!(opt.peak_coverage, best);
    }
}

#[test]
fn batch_metrics_are_consistent_with_their_own_trials() {
    let mut cfg = SimulationConfig::baseline();
    cfg.delta = 40.0;
    cfg.trials = 1500;
    let row = run_batch(&cfg).unwrap();
    assert!(row.coverage >= 0.0 && row.coverage <= 1.0);
    assert!(row.ase > 0.0);
    assert_eq!(row.trials, 1500);
    assert_eq!(row.scenario, "empty-hand");
    // Half-widths shrink with more trials.
    cfg.trials = 6000;
    let wider = run_batch(&cfg).unwrap();
    assert!(wider.coverage_ci_halfwidth < row.coverage_ci_halfwidth + 1e-12);
}
