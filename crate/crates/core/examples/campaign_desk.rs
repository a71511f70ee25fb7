//! A desk-scale benchmark campaign: 100 seeded annealing trials on a small
//! torus, scored against the exact optimum and a 90% quality target.

use gsetkit::campaign::{Campaign, CampaignConfig};
use gsetkit::instance::{generate_torus, TorusSpec};
use gsetkit::metrics::{format_duration, TargetSpec};
use gsetkit::oracle::exact_max_cut;
use gsetkit::solver::{default_config, SolverKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate_torus(&TorusSpec::new(4, 6, 5)?)?;
    let optimum = exact_max_cut(&inst)?.cut;
    let config = CampaignConfig {
        instance_name: inst.name().to_string(),
        solver: default_config(SolverKind::SimulatedAnnealing, 5, 0),
        num_trials: 100,
        master_seed: 2025,
        targets: vec![
            TargetSpec::from_quality(0.9, optimum, 0.99)?,
            TargetSpec::new("optimum", optimum as f64, 0.99)?,
        ],
        sweep_scan: None,
    };

    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let summary = Campaign::new(&inst, &config).workers(workers).run()?.summary;
    print!("{}", summary.to_kv());

    let (worst, mean, best) = summary.quality_range(optimum)?;
    println!(
        "quality: {:.2}% .. {:.2}% (mean {:.2}%)",
        100.0 * worst,
        100.0 * best,
        100.0 * mean
    );
    for t in &summary.targets {
        if let Some(hw) = t.metrics.hw_ttt_s {
            println!("{}: projected {} on 2 ns/sweep hardware", t.target.label, format_duration(hw));
        }
    }
    print!("{}", summary.histogram_csv());
    Ok(())
}
