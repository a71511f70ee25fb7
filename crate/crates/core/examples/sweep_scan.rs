//! Highest and average cut as a function of the per-trial sweep budget.
//! Every rung reuses the same trial seeds.

use gsetkit::campaign::{scan_csv, sweep_scan, CampaignConfig};
use gsetkit::instance::{generate_torus, TorusSpec};
use gsetkit::solver::{default_config, SolverKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate_torus(&TorusSpec::new(6, 6, 9)?)?;
    let config = CampaignConfig {
        instance_name: inst.name().to_string(),
        solver: default_config(SolverKind::SimulatedAnnealing, 10, 0),
        num_trials: 50,
        master_seed: 1,
        targets: vec![],
        sweep_scan: Some(vec![3, 10, 30, 100, 300]),
    };
    let rows = sweep_scan(&inst, &config)?;
    print!("{}", scan_csv(&rows));
    Ok(())
}
