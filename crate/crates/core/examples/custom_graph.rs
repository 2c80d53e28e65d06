// Weighted independent set on a graph read from an edge list.
//
// cargo run --release --example custom_graph [path/to/edges.txt]

use qaoa_mis::prelude::*;

const HOUSE: &str = "\
# five-node house: square 1-2-3-4 with roof node 5 over 3 and 4
5 6
1 2
2 3
3 4
4 1
3 5
4 5
";

pub fn run_example(path: Option<&str>) -> Result<f64> {
    let g = match path {
        Some(p) => Graph::load_edge_list(p)?,
        None => Graph::from_edge_list(HOUSE)?.with_node_weights(vec![1.0, 1.0, 1.0, 1.0, 2.5])?,
    };
    let opt = brute_force_optimum(Problem::Mis, &g)?;
    println!("{} nodes, {} edges, best weight {}", g.num_nodes(), g.edges().len(), opt.optimal_value);

    let out = vqe_optimize(Problem::Mis, &g, &VqeRunConfig::new(3, 10, 1))?;
    let best = out.best();
    println!("p=3 ratio {:.4}, leakage {:.1e}", out.approximation_ratio(), out.feasibility_leakage);
    for s in &opt.optimizers {
        println!("  optimum {s}: P = {:.4}", best.distribution[s.index() as usize]);
    }
    Ok(out.approximation_ratio())
}

fn main() -> Result<()> {
    let path = std::env::args().nth(1);
    run_example(path.as_deref())?;
    Ok(())
}
