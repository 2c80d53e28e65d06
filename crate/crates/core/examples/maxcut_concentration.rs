// Optimises Max-Cut from the uniform superposition at increasing depth and
// reports how much averaged probability lands on the optimal cuts.
//
// cargo run --release --example maxcut_concentration

use qaoa_mis::prelude::*;

pub fn run_example() -> Result<Vec<(String, usize, f64)>> {
    let mut rows = Vec::new();
    for name in NamedGraph::ALL {
        let g = name.build();
        let optimum = brute_force_optimum(Problem::MaxCut, &g)?;
        for p in [1, 3, 6] {
            let out = vqe_optimize(Problem::MaxCut, &g, &VqeRunConfig::new(p, 20, 7))?;
            let mass: f64 = optimum.optimizers.iter().map(|s| out.averaged_distribution[s.index() as usize]).sum();
            println!(
                "{name:<12} p={p:<2} ratio {:.4}  P(optimal cuts) {mass:.4}",
                out.approximation_ratio()
            );
            rows.push((name.to_string(), p, mass));
        }
    }
    Ok(rows)
}

fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
