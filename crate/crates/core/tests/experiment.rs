use manet_sim::experiment::{
    run_cell, run_plan, run_trace, select_sessions, select_sessions_in, CellKey, ExperimentPlan,
    SessionWindow,
};
use manet_sim::mobility::MobilityModel;

fn chi_square(counts: &[usize], expected: f64) -> f64 {
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

fn pair_index(a: usize, b: usize, n: usize) -> usize {
    let (lo, hi) = (a.min(b), a.max(b));
    // Row-major index into the strict upper triangle.
    lo * n - lo * (lo + 1) / 2 + (hi - lo - 1)
}

#[test]
fn session_pairs_are_uniform() {
    let n = 6;
    let pairs = n * (n - 1) / 2;
    let draws = 15_000;
    let mut counts = vec![0; pairs];
    let mut forward = 0;
    for seed in 0..draws {
        let s = select_sessions(seed, n, 1).unwrap()[0];
        counts[pair_index(s.source, s.destination, n)] += 1;
        forward += (s.source < s.destination) as usize;
    }
    // df = 14, p = 0.001 critical value 36.12
    let stat = chi_square(&counts, draws as f64 / pairs as f64);
    assert!(stat < 36.12, "chi-square {stat} for pair counts {counts:?}");
    let share = forward as f64 / draws as f64;
    assert!((share - 0.5).abs() < 0.02, "orientation share {share}");
}

#[test]
fn session_pairs_within_a_trace_are_distinct_and_uniform() {
    let n = 6;
    let mut counts = vec![0; 15];
    let trials = 6000;
    for seed in 0..trials {
        let sessions = select_sessions(seed, n, 5).unwrap();
        let mut seen: Vec<usize> = sessions
            .iter()
            .map(|s| pair_index(s.source, s.destination, n))
            .collect();
        for &p in &seen {
            counts[p] += 1;
        }
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 5);
    }
    // Every pair is included with probability 5/15.
    let stat = chi_square(&counts, trials as f64 / 3.0);
    assert!(stat < 36.12, "chi-square {stat}");
}

#[test]
fn start_times_are_uniform_over_sample_instants() {
    let window = SessionWindow::default();
    let slots = 77; // 1.00, 1.25, ..., 20.00 s
    let mut counts = vec![0; slots];
    for seed in 0..400 {
        for s in select_sessions_in(seed, 50, 40, &window).unwrap() {
            assert!((4..=80).contains(&s.start_snapshot));
            counts[s.start_snapshot - 4] += 1;
        }
    }
    // df = 76, p = 0.001 critical value 117.2
    let stat = chi_square(&counts, 16_000.0 / slots as f64);
    assert!(stat < 117.2, "chi-square {stat}");
}

fn small_plan() -> ExperimentPlan {
    ExperimentPlan {
        densities: vec![20, 40],
        velocities: vec![5.0, 20.0],
        traces_per_cell: 2,
        sessions_per_trace: 4,
        duration: 30.0,
        ..ExperimentPlan::default()
    }
}

#[test]
fn run_plan_is_deterministic_and_ordered() {
    let plan = small_plan();
    let a = run_plan(&plan).unwrap();
    let b = run_plan(&plan).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 12);
    let keys: Vec<CellKey> = a.iter().map(|c| c.key).collect();
    assert_eq!(keys, plan.cells());
    for cell in &a {
        assert_eq!(cell.dominance_violations, 0);
        assert_eq!(cell.sessions, 8);
    }
}

#[test]
fn sub_plan_matches_full_plan_cell() {
    let plan = small_plan();
    let full = run_plan(&plan).unwrap();
    let key = CellKey {
        model: MobilityModel::CitySection,
        density: 40,
        velocity: 20.0,
    };
    let sub = ExperimentPlan {
        models: vec![key.model],
        densities: vec![key.density],
        velocities: vec![key.velocity],
        ..plan.clone()
    };
    let only = run_plan(&sub).unwrap();
    assert_eq!(only.len(), 1);
    assert_eq!(Some(&only[0]), full.iter().find(|c| c.key == key));
    assert_eq!(only[0], run_cell(&plan, key).unwrap());
}

#[test]
fn strategies_share_trace_and_sessions() {
    let plan = small_plan();
    let key = plan.cells()[0];
    let run = run_trace(&plan, key, 1).unwrap();
    assert_eq!(run.trace_seed, key.trace_seed(plan.base_seed, 1));
    for ((ora, lora), s) in run.ora_paths.iter().zip(&run.lora_paths).zip(&run.sessions) {
        assert_eq!(ora.session, *s);
        assert_eq!(lora.session, *s);
        assert_eq!(ora.len(), lora.len());
    }
    assert_eq!(run.ora_cds.len(), run.lora_cds.len());
}

#[test]
fn changing_base_seed_changes_results() {
    let plan = small_plan();
    let other = ExperimentPlan {
        base_seed: plan.base_seed + 1,
        ..plan.clone()
    };
    let key = plan.cells()[3];
    assert_ne!(run_cell(&plan, key).unwrap(), run_cell(&other, key).unwrap());
}
