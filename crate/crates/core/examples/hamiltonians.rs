// Prints the Pauli expansions of the cost and mixer operators.
//
// cargo run --example hamiltonians

use qaoa_mis::hamiltonian::mis_mixer_unsimplified;
use qaoa_mis::prelude::*;

pub fn run_example() -> Result<usize> {
    let ring = NamedGraph::SquareRing.build();
    println!("max-cut cost:\n{}\n", maxcut_cost(&ring).simplified());
    println!("mis cost:\n{}\n", mis_cost(&ring));
    let mixer = mis_mixer(&ring);
    println!("mis mixer ({} terms, {} before merging):\n{mixer}", mixer.terms().len(), mis_mixer_unsimplified(&ring).terms().len());
    Ok(mixer.terms().len())
}

fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
