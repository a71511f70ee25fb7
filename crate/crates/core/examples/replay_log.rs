//! Write a campaign log, interrupt it, resume it, then re-run single lines
//! of the log and recompute the summary from the file alone.

use gsetkit::campaign::{read_log, summarize, Campaign, CampaignConfig};
use gsetkit::instance::{generate_torus, TorusSpec};
use gsetkit::metrics::{TargetSpec, DEFAULT_SWEEP_TIME_S};
use gsetkit::solver::{default_config, SolverKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let log = dir.path().join("campaign.log");
    let inst = generate_torus(&TorusSpec::new(5, 5, 4)?)?;
    let mut config = CampaignConfig {
        instance_name: inst.name().to_string(),
        solver: default_config(SolverKind::SimulatedAnnealing, 60, 0),
        num_trials: 10,
        master_seed: 77,
        targets: vec![TargetSpec::new("cut>=16", 16.0, 0.99)?],
        sweep_scan: None,
    };

    // First 10 trials, then "resume" to 40: only 30 new trials run.
    Campaign::new(&inst, &config).log_to(&log).run()?;
    config.num_trials = 40;
    let live = Campaign::new(&inst, &config).workers(4).log_to(&log).keep_spins(true).run()?;

    let text = std::fs::read_to_string(&log)?;
    println!("{} log lines, e.g.\n{}", text.lines().count(), text.lines().nth(1).unwrap_or(""));

    let records = read_log(&log)?;
    for record in records.iter().step_by(13) {
        let again = record.replay(&inst)?;
        println!("trial {:>2}: logged {} replayed {}", record.trial, record.best_cut, again.best_cut);
        assert_eq!(again.best_cut, record.best_cut);
    }

    let offline = summarize(&records, &config.targets, DEFAULT_SWEEP_TIME_S)?;
    assert!(offline.eq_ignoring_timing(&live.summary));
    print!("{}", offline.to_csv());
    Ok(())
}
