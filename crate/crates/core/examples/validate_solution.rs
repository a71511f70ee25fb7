//! Decode a hex solution string and score it against an instance.
//!
//! With no arguments this runs on a synthetic torus and then shows what the
//! strict decoder says about the shipped G81 string. With arguments it
//! validates a real pair:
//!
//! ```text
//! cargo run --example validate_solution -- path/to/G81 data/solutions/G81.hex
//! ```

use gsetkit::codec::{apply_substitutions, decode_hex, SolutionText, Substitution};
use gsetkit::instance::{generate_torus, InstanceSource, TorusSpec};
use gsetkit::oracle::exact_max_cut;
use gsetkit::registry::Registry;
use gsetkit::{load_instance, EvaluationReport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [instance, solution] = args.as_slice() {
        let inst = load_instance(&InstanceSource::parse(instance)?)?;
        let text = SolutionText::parse(&std::fs::read_to_string(solution)?);
        let config = decode_hex(&text.digits, inst.n())?;
        let best = Registry::embedded().get(inst.name()).map(|e| e.best_known_cut);
        println!("{}", EvaluationReport::evaluate(&inst, &config, best)?);
        return Ok(());
    }

    // Round trip on a 4x4 torus: optimum -> solution file -> report.
    let inst = generate_torus(&TorusSpec::new(4, 4, 11)?)?;
    let exact = exact_max_cut(&inst)?;
    let file = SolutionText::render(&exact.config, inst.name());
    print!("{file}");
    let parsed = SolutionText::parse(&file);
    let config = decode_hex(&parsed.digits, inst.n())?;
    println!("{}", EvaluationReport::evaluate(&inst, &config, Some(exact.cut))?);

    // The shipped G81 string is rejected; the substitution has to be asked for.
    let g81 = SolutionText::parse(include_str!("../data/solutions/G81.hex"));
    let n = g81.n.unwrap_or(20_000);
    if let Err(e) = decode_hex(&g81.digits, n) {
        println!("G81 as shipped: {e}");
    }
    let sub: Substitution = "l=1".parse()?;
    let (fixed, changes) = apply_substitutions(&g81.digits, &[sub]);
    println!("G81 after {sub}: {} change(s) at {:?}", changes.len(), changes);
    match decode_hex(&fixed, n) {
        Ok(_) => println!("G81 decodes"),
        Err(e) => println!("G81 still rejected: {e}"),
    }
    Ok(())
}
