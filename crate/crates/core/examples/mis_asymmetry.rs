// On K(2,3) the constrained mixer started from the empty set favours the
// larger side of the bipartition even though both sides are independent.
//
// cargo run --release --example mis_asymmetry

use qaoa_mis::prelude::*;

pub fn run_example() -> Result<Vec<f64>> {
    let g = NamedGraph::K23.build();
    let cfg = VqeRunConfig::new(4, 20, 7).with_initial_state("00000".parse()?);
    let out = vqe_optimize(Problem::Mis, &g, &cfg)?;

    let mut ranked: Vec<(usize, f64)> = out.averaged_distribution.iter().copied().enumerate().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!("p=4, {} restarts, leakage {:.1e}", out.restarts.len(), out.feasibility_leakage);
    for &(x, prob) in ranked.iter().take(5) {
        let s = NodeSubset::from_index(5, x as u64);
        let tag = if g.is_independent(&s)? { "" } else { "  (infeasible)" };
        println!("  {s}  {prob:.4}{tag}");
    }
    Ok(out.averaged_distribution)
}

fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
