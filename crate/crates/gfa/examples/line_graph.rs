//! Line graphs with harmonic-mean-style weights
//! w' = 2·w_e·w_f / (w_e + w_f) on adjacent edge pairs.

use gfa::graph::{line_graph, WeightedGraph};
use gfa::{Scalar, ScalarDomain};

fn main() -> gfa::Result<()> {
    // path with weights 1 and 3 → a single line-graph edge of weight 3/2
    let mut g = WeightedGraph::new(ScalarDomain::Rational, 3);
    g.add_edge_w(0, 1, Scalar::rational(1, 1))?;
    g.add_edge_w(1, 2, Scalar::rational(3, 1))?;
    let lg = line_graph(&g)?;
    println!("path (1, 3):");
    for (a, b) in lg.graph.edges() {
        println!(
            "  line nodes {:?} ~ {:?}, weight {}",
            lg.origin[a],
            lg.origin[b],
            lg.graph.weight(a, b)
        );
    }

    // the line graph of a uniform triangle is again a uniform triangle
    let k3 = WeightedGraph::complete(ScalarDomain::Rational, 3, Scalar::rational(1, 1))?;
    let lg = line_graph(&k3)?;
    println!(
        "\nK3 uniform: line graph has {} nodes, {} edges, all weights {}",
        lg.graph.n(),
        lg.graph.edge_count(),
        lg.graph.weight(0, 1)
    );

    // a vanishing denominator w_e + w_f is a domain error, named precisely
    let mut bad = WeightedGraph::new(ScalarDomain::Real, 3);
    bad.add_edge_w(0, 1, Scalar::Real(1.0))?;
    bad.add_edge_w(1, 2, Scalar::Real(-1.0))?;
    match line_graph(&bad) {
        Err(e) => println!("\npath (1, -1): {e}"),
        Ok(_) => unreachable!("zero denominator must be rejected"),
    }
    Ok(())
}
