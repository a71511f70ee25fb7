//! How many trials are needed, and how long that takes on hardware doing
//! one sweep every 2 ns, for a range of success probabilities.

use gsetkit::metrics::{format_duration, project_hw_ttt, repetitions_to_target, sweeps_to_target, DEFAULT_SWEEP_TIME_S};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sweeps_per_trial = 100_000;
    println!("p_s     r(99%)    r(99.9%)  stt(99%)      hardware");
    for p in [0.01, 0.03, 0.1, 0.34, 0.5, 0.86, 0.99, 1.0] {
        let r = repetitions_to_target(p, 0.99)?;
        let r3 = repetitions_to_target(p, 0.999)?;
        let stt = sweeps_to_target(sweeps_per_trial, r);
        let hw = project_hw_ttt(stt, DEFAULT_SWEEP_TIME_S);
        println!("{p:<7} {r:<9.3} {r3:<9.3} {stt:<13.0} {}", format_duration(hw));
    }
    match repetitions_to_target(0.0, 0.99) {
        Ok(r) => println!("p_s=0 gives r={r}"),
        Err(e) => println!("p_s=0: {e}"),
    }
    Ok(())
}
