//! Generate a seeded ±1 torus, solve it exactly and poke at single flips.

use gsetkit::eval::{cut_value, flip_delta_cut, ising_energy};
use gsetkit::instance::{generate_torus, TorusSpec};
use gsetkit::oracle::exact_max_cut;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = TorusSpec::new(4, 5, 3)?;
    let inst = generate_torus(&spec)?;
    println!(
        "{}: n={} m={} total_weight={}",
        inst.name(),
        inst.n(),
        inst.m(),
        inst.total_weight()
    );

    let exact = exact_max_cut(&inst)?;
    let energy = ising_energy(&inst, &exact.config)?;
    println!("optimum cut={} energy={} spins={}", exact.cut, energy, exact.config);

    // At an optimum no single flip can raise the cut.
    let deltas: Vec<i64> = (1..=inst.n() as u32)
        .map(|k| flip_delta_cut(&inst, &exact.config, k))
        .collect::<Result<_, _>>()?;
    println!("single-flip deltas: {deltas:?}");
    assert!(deltas.iter().all(|&d| d <= 0));

    let mut worse = exact.config.clone();
    worse.flip(1);
    println!("flip vertex 1 -> cut {}", cut_value(&inst, &worse)?);

    // The same instance in Gset text, ready for other tools.
    print!("{}", inst.to_gset_string().lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
