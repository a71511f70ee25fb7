//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! The golden-solution criteria need the original G72/G77/G81 instance
//! files; point `GSET_DIR` at a directory holding them (named `G72`,
//! `G72.txt`, `g72` or `g72.txt`).

mod common;

use std::path::PathBuf;
use std::time::Instant;

use gsetkit::campaign::{read_log, Campaign, CampaignConfig};
use gsetkit::codec::{apply_substitutions, decode_hex, SolutionText, Substitution};
use gsetkit::eval::{cut_value, flip_delta_cut, format_quality_pct, ising_energy, solution_quality};
use gsetkit::instance::{generate_torus, parse_gset, TorusSpec};
use gsetkit::metrics::{
    project_hw_ttt, repetitions_to_target, round_significant, speedup, sweeps_to_target, TargetSpec,
    DEFAULT_SWEEP_TIME_S, REFERENCE_ROWS,
};
use gsetkit::oracle::exact_max_cut;
use gsetkit::registry::Registry;
use gsetkit::rng::SeededRng;
use gsetkit::solver::{default_config, run_trial, SolverKind};
use gsetkit::{ProblemInstance, SpinConfiguration};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Golden {
    name: &'static str,
    solution: &'static str,
    cut: i64,
    energy: i64,
}

// Cut and energy of each published solution.
const GOLDEN: [Golden; 3] = [
    Golden {
        name: "G72",
        solution: include_str!("../data/solutions/G72.hex"),
        cut: 7008,
        energy: -14022,
    },
    Golden {
        name: "G77",
        solution: include_str!("../data/solutions/G77.hex"),
        cut: 9940,
        energy: -19672,
    },
    Golden {
        name: "G81",
        solution: include_str!("../data/solutions/G81.hex"),
        cut: 14060,
        energy: -28086,
    },
];

fn gset_file(name: &str) -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os("GSET_DIR")?);
    let lower = name.to_lowercase();
    [name.to_string(), format!("{name}.txt"), lower.clone(), format!("{lower}.txt")]
        .into_iter()
        .map(|f| dir.join(f))
        .find(|p| p.is_file())
}

fn load_gset(name: &str) -> Option<ProblemInstance> {
    let path = gset_file(name)?;
    let text = std::fs::read_to_string(path).ok()?;
    parse_gset(&text).ok().map(|g| g.with_name(name))
}

/// Same string read with the least significant bit of each digit first.
fn decode_lsb_first(hex: &str, n: usize) -> Option<SpinConfiguration> {
    let mut bits = Vec::with_capacity(hex.len() * 4);
    for c in hex.chars() {
        let d = c.to_digit(16)?;
        bits.extend((0..4).map(|b| d >> b & 1 == 1));
    }
    (bits.len() >= n).then(|| SpinConfiguration::from_bits(bits.into_iter().take(n)))
}

fn golden_one(g: &Golden, notes: &mut Vec<String>) -> bool {
    let text = SolutionText::parse(g.solution);
    let n = text.n.expect("solution header carries n");
    let mut digits = text.digits.clone();
    let mut ok = true;

    if let Err(e) = decode_hex(&digits, n) {
        notes.push(format!("{}: {e}", g.name));
        ok = false;
    }
    if digits.contains('l') {
        let (fixed, changes) = apply_substitutions(&digits, &["l=1".parse::<Substitution>().unwrap()]);
        let at: Vec<_> = changes.iter().map(|c| c.0).collect();
        let after = match decode_hex(&fixed, n) {
            Ok(_) => "decodes".to_string(),
            Err(e) => e.to_string(),
        };
        notes.push(format!("{}: with l=1 at {at:?}: {after}", g.name));
        digits = fixed;
    }

    let Some(inst) = load_gset(g.name) else {
        notes.push(format!("{}: instance file not found (GSET_DIR)", g.name));
        return false;
    };
    let Ok(config) = decode_hex(&digits, n) else {
        return false;
    };
    let start = Instant::now();
    let cut = cut_value(&inst, &config).unwrap();
    let energy = ising_energy(&inst, &config).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    notes.push(format!("{}: cut={cut} energy={energy} in {elapsed:.3}s", g.name));
    if cut != g.cut || energy != g.energy {
        if let Some(lsb) = decode_lsb_first(&digits, n) {
            let lsb_cut = cut_value(&inst, &lsb).unwrap();
            notes.push(format!("{}: LSB-first reading gives cut={lsb_cut}", g.name));
        }
        ok = false;
    }
    ok && elapsed < 1.0
}

fn c1_golden_validation() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for g in &GOLDEN {
        ok &= golden_one(g, &mut notes);
    }
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn c2_cut_energy_identity() -> Outcome {
    let registry = Registry::embedded();
    let mut notes = Vec::new();
    let mut ok = true;
    for (g, expected_w) in GOLDEN.iter().zip([-6i64, 208, 34]) {
        // W = H + 2 * cut from the published pair.
        let w = g.energy + 2 * g.cut;
        let entry = registry.get(g.name).unwrap();
        ok &= w == expected_w
            && entry.best_known_cut == g.cut
            && entry.best_known_energy == Some(g.energy);
        match load_gset(g.name) {
            Some(inst) => {
                notes.push(format!("{}: W={w}, file sums to {}", g.name, inst.total_weight()));
                ok &= inst.total_weight() == w;
                let digits = apply_substitutions(
                    &SolutionText::parse(g.solution).digits,
                    &["l=1".parse::<Substitution>().unwrap()],
                )
                .0;
                match decode_hex(&digits, inst.n()) {
                    Ok(c) => {
                        let (cut, h) = (cut_value(&inst, &c).unwrap(), ising_energy(&inst, &c).unwrap());
                        ok &= h == inst.total_weight() - 2 * cut && cut == g.cut;
                    }
                    Err(e) => {
                        notes.push(format!("{}: golden solution unusable: {e}", g.name));
                        ok = false;
                    }
                }
            }
            None => {
                notes.push(format!("{}: W={w} from the published pair; instance file not found (GSET_DIR)", g.name));
                ok = false;
            }
        }
    }
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn c3_table_metrics() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for row in REFERENCE_ROWS.iter() {
        let p = row.successes as f64 / row.trials as f64;
        let r = repetitions_to_target(p, 0.99).unwrap();
        let oracle_r = (0.01f64.ln() / (1.0 - p).ln()).max(1.0);
        let stt = sweeps_to_target(row.sweeps_per_trial, r);
        let err = (stt - row.printed_stt).abs() / row.printed_stt;
        if !row.consistent {
            notes.push(format!(
                "{} {} excluded: computed {stt:.0} vs printed {:.0}",
                row.instance, row.target, row.printed_stt
            ));
            continue;
        }
        let hw = project_hw_ttt(stt, DEFAULT_SWEEP_TIME_S);
        let hw_rounded = round_significant(hw, row.hw_sig_figs);
        let hw_ok = (hw_rounded - row.printed_hw_ttt_s).abs() <= 1e-12;
        let row_ok = (r - oracle_r).abs() < 1e-12 && err < 0.01 && hw_ok;
        notes.push(format!(
            "{} {}: stt={stt:.0} ({:+.2}%), hw={:.3} ms",
            row.instance,
            row.target,
            100.0 * (stt - row.printed_stt) / row.printed_stt,
            hw * 1e3
        ));
        ok &= row_ok;
        if let (Some(reference), Some(printed)) = (row.reference_ttt_s, row.printed_speedup) {
            let s = speedup(reference, row.printed_ttt_s).unwrap();
            let s_ok = (s - printed).abs() / printed < 0.01;
            notes.push(format!("{} speedup {s:.0}x", row.instance));
            ok &= s_ok;
        }
    }
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn c4_quality_thresholds() -> Outcome {
    let printed = [(7008, 7000.99), (9940, 9930.06), (14060, 14045.94)];
    let mut notes = Vec::new();
    let mut ok = true;
    for (best, threshold) in printed {
        let t = TargetSpec::from_quality(0.999, best, 0.99).unwrap().target_cut;
        let rounded = (t * 100.0).round() / 100.0;
        notes.push(format!("{best}: {t:.3}"));
        ok &= (rounded - threshold).abs() < 1e-9;
    }
    let pct = format_quality_pct(solution_quality(14058, 14060).unwrap());
    notes.push(format!("14058/14060 = {pct}"));
    ok &= pct == "99.986%";
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn c5_property_suite() -> Outcome {
    let mut rng = SeededRng::new(0x5eed, 0);
    let mut failures = Vec::new();

    // (a) adjacency evaluator against the dense double loop, every configuration.
    for _ in 0..20 {
        let n = 2 + rng.below(11) as u32;
        let inst = random_instance(&mut rng, n, 0.4, 3);
        let w = dense(&inst);
        for code in 0..1u64 << n {
            let s = spins_of(code, n as usize);
            let c = SpinConfiguration::new(s.clone()).unwrap();
            if cut_value(&inst, &c).unwrap() != naive_cut(&w, &s)
                || ising_energy(&inst, &c).unwrap() != naive_energy(&w, &s)
            {
                failures.push(format!("(a) n={n} code={code}"));
                break;
            }
        }
    }

    // (b) running cut under 1,000 random flips.
    for _ in 0..20 {
        let n = 2 + rng.below(30) as u32;
        let inst = random_instance(&mut rng, n, 0.3, 5);
        let mut c = random_config(&mut rng, n as usize);
        let mut running = cut_value(&inst, &c).unwrap();
        for step in 1..=1000 {
            let k = 1 + rng.below(n as u64) as u32;
            running += flip_delta_cut(&inst, &c, k).unwrap();
            c.flip(k);
            if running != cut_value(&inst, &c).unwrap() {
                failures.push(format!("(b) n={n} step={step}"));
                break;
            }
        }
    }

    // (c) codec round trip.
    for _ in 0..1000 {
        let n = 1 + rng.below(64) as usize;
        let c = random_config(&mut rng, n);
        if decode_hex(&c.to_hex(), n).as_ref() != Ok(&c) {
            failures.push(format!("(c) n={n}"));
        }
    }

    // (d) global flip.
    for _ in 0..50 {
        let n = 1 + rng.below(40) as u32;
        let inst = random_instance(&mut rng, n, 0.3, 4);
        let c = random_config(&mut rng, n as usize);
        let f = c.global_flip();
        if cut_value(&inst, &c) != cut_value(&inst, &f) || ising_energy(&inst, &c) != ising_energy(&inst, &f) {
            failures.push(format!("(d) n={n}"));
        }
    }

    // (e) oracle against brute force, and above every solver trial.
    for _ in 0..20 {
        let n = 1 + rng.below(12) as u32;
        let inst = random_instance(&mut rng, n, 0.5, 3);
        if exact_max_cut(&inst).unwrap().cut != naive_max_cut(&inst) {
            failures.push(format!("(e) oracle n={n}"));
        }
    }
    for (rows, cols) in [(3, 3), (3, 5), (4, 4), (4, 5), (4, 6)] {
        let inst = generate_torus(&TorusSpec::new(rows, cols, rng.next_u64()).unwrap()).unwrap();
        let best = exact_max_cut(&inst).unwrap().cut;
        for seed in 0..10 {
            for kind in [SolverKind::GreedyLocalSearch, SolverKind::SimulatedAnnealing] {
                if run_trial(&inst, &default_config(kind, 30, seed)).unwrap().best_cut > best {
                    failures.push(format!("(e) bound {rows}x{cols} {kind} seed={seed}"));
                }
            }
        }
    }

    // (f) torus shape.
    for _ in 0..10 {
        let (rows, cols) = (3 + rng.below(10) as u32, 3 + rng.below(10) as u32);
        let inst = generate_torus(&TorusSpec::new(rows, cols, rng.next_u64()).unwrap()).unwrap();
        let regular = (1..=inst.n() as u32).all(|v| inst.degree(v) == 4);
        let unit = inst.edges().iter().all(|e| e.w.abs() == 1);
        if !regular || !unit || inst.m() != 2 * (rows * cols) as usize {
            failures.push(format!("(f) {rows}x{cols}"));
        }
    }

    if failures.is_empty() {
        Ok("(a)-(f) hold".into())
    } else {
        Err(failures.join(", "))
    }
}

fn c6_desk_campaign() -> Outcome {
    let start = Instant::now();
    let inst = generate_torus(&TorusSpec::new(4, 4, 1).unwrap()).unwrap();
    let optimum = exact_max_cut(&inst).unwrap().cut;
    let config = CampaignConfig {
        instance_name: inst.name().to_string(),
        solver: default_config(SolverKind::SimulatedAnnealing, 50, 0),
        num_trials: 100,
        master_seed: 2025,
        targets: vec![TargetSpec::new("optimum", optimum as f64, 0.99).unwrap()],
        sweep_scan: None,
    };
    let serial = Campaign::new(&inst, &config).run().map_err(|e| e.to_string())?.summary;
    let parallel = Campaign::new(&inst, &config)
        .workers(4)
        .run()
        .map_err(|e| e.to_string())?
        .summary;
    let elapsed = start.elapsed().as_secs_f64();
    let hits = serial.targets[0].successes;
    let same = serial.eq_ignoring_timing(&parallel);
    let detail = format!("optimum={optimum}, {hits}/100 trials reached it, serial==parallel: {same}, {elapsed:.2}s");
    if hits >= 80 && same && elapsed < 10.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c7_sweep_ladder() -> Outcome {
    let inst = generate_torus(&TorusSpec::new(5, 5, 1).unwrap()).unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    for kind in [SolverKind::SimulatedAnnealing, SolverKind::GreedyLocalSearch] {
        let config = CampaignConfig {
            instance_name: inst.name().to_string(),
            solver: default_config(kind, 10, 0),
            num_trials: 100,
            master_seed: 7,
            targets: vec![],
            sweep_scan: Some(vec![10, 30, 100, 300]),
        };
        let rows = gsetkit::campaign::sweep_scan(&inst, &config).map_err(|e| e.to_string())?;
        let monotone = rows.windows(2).all(|w| w[0].highest_cut <= w[1].highest_cut);
        let above = rows.iter().all(|r| r.highest_cut as f64 >= r.average_cut);
        ok &= monotone && above;
        let curve: Vec<String> = rows
            .iter()
            .map(|r| format!("{}:{}/{:.2}", r.sweeps, r.highest_cut, r.average_cut))
            .collect();
        notes.push(format!("{kind} {}", curve.join(" ")));
    }
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn c8_replay() -> Outcome {
    let inst = generate_torus(&TorusSpec::new(5, 5, 3).unwrap()).unwrap();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut mismatches = 0;
    let mut lines = 0;
    for kind in [SolverKind::SimulatedAnnealing, SolverKind::GreedyLocalSearch] {
        let config = CampaignConfig {
            instance_name: inst.name().to_string(),
            solver: default_config(kind, 40, 0),
            num_trials: 25,
            master_seed: 99,
            targets: vec![],
            sweep_scan: None,
        };
        let log = dir.path().join(format!("{kind}.log"));
        Campaign::new(&inst, &config)
            .workers(3)
            .keep_spins(true)
            .log_to(&log)
            .run()
            .map_err(|e| e.to_string())?;
        for record in read_log(&log).map_err(|e| e.to_string())? {
            lines += 1;
            let again = record.replay(&inst).map_err(|e| e.to_string())?;
            let spins = record.best_spins(inst.n()).unwrap().map_err(|e| e.to_string())?;
            if again.best_cut != record.best_cut || again.best_spins != spins {
                mismatches += 1;
            }
        }
    }
    let detail = format!("{lines} log lines replayed, {mismatches} mismatches");
    if mismatches == 0 && lines == 50 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden solutions decode and evaluate exactly", c1_golden_validation),
        ("cut/energy identity pins total weight", c2_cut_energy_identity),
        ("published campaign metrics reproduce", c3_table_metrics),
        ("quality thresholds", c4_quality_thresholds),
        ("offline property suite", c5_property_suite),
        ("desk-scale campaign", c6_desk_campaign),
        ("sweep ladder shape", c7_sweep_ladder),
        ("log replay", c8_replay),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
