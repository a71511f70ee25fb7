//! Single trials of both solver kinds, plus a custom acceptance policy
//! plugged into the same sweep loop.

use gsetkit::campaign::TrialRecord;
use gsetkit::instance::{generate_torus, TorusSpec};
use gsetkit::oracle::exact_max_cut;
use gsetkit::solver::{default_config, run_trial, run_with_policy, AcceptancePolicy, SolverKind};

/// Zero-temperature descent that also takes sideways moves.
struct Plateau;

impl AcceptancePolicy for Plateau {
    fn accept(&mut self, delta: i64, _uniform: f64) -> bool {
        delta >= 0
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate_torus(&TorusSpec::new(4, 6, 8)?)?;
    let optimum = exact_max_cut(&inst)?.cut;
    println!("{} optimum={optimum}", inst.name());

    for kind in [SolverKind::GreedyLocalSearch, SolverKind::SimulatedAnnealing] {
        let config = default_config(kind, 200, 42);
        let result = run_trial(&inst, &config)?;
        println!("{}", TrialRecord::from_result(0, inst.name(), &config, &result, true));
    }

    let plateau = run_with_policy(&inst, 200, 42, &mut Plateau)?;
    println!("plateau best_cut={} after {} sweeps", plateau.best_cut, plateau.sweeps_executed);
    Ok(())
}
