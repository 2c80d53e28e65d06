// Draws measurement shots from an optimised state instead of reading the
// analytic probabilities.
//
// cargo run --release --example shot_sampling

use qaoa_mis::prelude::*;
use qaoa_mis::simulator::sample_counts;

pub fn run_example() -> Result<Vec<usize>> {
    let g = NamedGraph::SquareRing.build();
    let out = vqe_optimize(Problem::MaxCut, &g, &VqeRunConfig::new(2, 10, 11))?;
    let probs = &out.best().distribution;
    let shots = 4096;
    let counts = sample_counts(probs, shots, 42)?;
    for (x, (&c, &p)) in counts.iter().zip(probs).enumerate() {
        if c > 0 {
            println!("{}  {c:>5}  ({:.4} sampled, {p:.4} exact)", NodeSubset::from_index(4, x as u64), c as f64 / shots as f64);
        }
    }
    Ok(counts)
}

fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
