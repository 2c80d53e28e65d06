// Brute-force optima for the built-in graphs, and a spot check of the fast
// simulator against dense matrix exponentials.
//
// cargo run --release --example oracle_check

use qaoa_mis::prelude::*;

pub fn run_example() -> Result<f64> {
    let params = AnsatzParams::new(vec![0.4, 1.3], vec![2.1, 0.7])?;
    let mut worst: f64 = 0.0;
    for name in NamedGraph::ALL {
        let g = name.build();
        for problem in Problem::ALL {
            let opt = brute_force_optimum(problem, &g)?;
            let optimizers: Vec<String> = opt.optimizers.iter().map(ToString::to_string).collect();
            let inst = Instance::new(problem, &g, None)?;
            let fast = inst.evolve(&params)?;
            let dense = reference_evolve(&problem.cost(&g), &problem.mixer(&g), &params, &inst.initial)?;
            let err = fast.distance(&dense);
            worst = worst.max(err);
            println!("{problem:<6} {name:<12} C_max {:<4} {:?}  |psi - psi_ref| {err:.1e}", opt.optimal_value, optimizers);
        }
    }
    Ok(worst)
}

fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
