// Depth-one approximation ratio on the square ring as a function of the
// mixer angle, for every independent-set starting state.
//
// cargo run --release --example initial_state_sweep

use qaoa_mis::prelude::*;

pub fn run_example() -> Result<Vec<(String, f64, f64)>> {
    let ring = NamedGraph::SquareRing.build();
    let grid = beta_grid(200);
    let mut maxima = Vec::new();
    for s in ring.enumerate_feasible()? {
        let inst = Instance::new(Problem::Mis, &ring, Some(InitialState::Basis(s)))?;
        let curve = sweep_p1(&inst.cost_diag, &inst.engine, &inst.initial, inst.c_max, &grid)?;
        let (beta, best) = curve.iter().copied().fold((0.0, f64::NEG_INFINITY), |a, v| if v.1 > a.1 { v } else { a });
        println!("init {s}  max ratio {best:.4} at beta {beta:.3}");
        maxima.push((s.to_string(), beta, best));
    }
    Ok(maxima)
}

fn main() -> Result<()> {
    run_example()?;
    Ok(())
}
