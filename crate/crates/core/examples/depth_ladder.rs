// Grows the circuit one layer at a time, seeding each depth with the previous
// optimum padded by an identity layer.
//
// cargo run --release --example depth_ladder

use qaoa_mis::prelude::*;

pub fn run_example() -> Result<Vec<f64>> {
    let ring = NamedGraph::SquareRing.build();
    let mut values = Vec::new();
    let mut warm: Option<AnsatzParams> = None;
    for p in 1..=4 {
        let mut cfg = VqeRunConfig::new(p, 10, 3);
        cfg.warm_start = warm.take();
        let out = vqe_optimize(Problem::Mis, &ring, &cfg)?;
        let best = out.best();
        println!("p={p}  F* = {:.6}  gammas {:.3?}  betas {:.3?}", best.expectation, best.params.gammas, best.params.betas);
        values.push(best.expectation);
        warm = Some(best.params.clone());
    }
    Ok(values)
}

fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
