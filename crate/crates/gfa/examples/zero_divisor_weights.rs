//! Beck zero-divisor graphs of Z_n and the search for Jacobi-admissible
//! zero-divisor weighings of a triangle.

use gfa::graph::WeightedGraph;
use gfa::ring_weights::{
    modulus_qualifies, smallest_qualifying_modulus, weighing_search, zero_divisor_graph,
};
use gfa::{Scalar, ScalarDomain};

fn main() -> gfa::Result<()> {
    let z30 = zero_divisor_graph(30)?;
    println!(
        "zdg(30): {} vertices, {} edges, girth {:?}, all non-nilpotent: {}",
        z30.vertices.len(),
        z30.edges.len(),
        z30.girth,
        z30.all_non_nilpotent
    );

    let z6 = zero_divisor_graph(6)?;
    println!("zdg(6): vertices {:?}, edges {:?}, girth {:?}", z6.vertices, z6.edges, z6.girth);

    for n in [12, 30, 210] {
        let q = modulus_qualifies(n)?;
        println!(
            "n = {n}: {} distinct primes {:?} → qualifies: {}",
            q.c, q.factorization, q.qualifies
        );
    }
    println!("smallest qualifying modulus: {}", smallest_qualifying_modulus());

    // every admissible weighing of K3 by non-nilpotent zero divisors of Z_30
    let k3 = WeightedGraph::complete(ScalarDomain::Real, 3, Scalar::Real(1.0))?;
    let solutions = weighing_search(&k3, 30, None, false)?;
    println!("\nK3 mod 30: {} admissible weighings; first few:", solutions.len());
    for sol in solutions.iter().take(5) {
        let tuple: Vec<u64> = sol.assignment.values().copied().collect();
        println!("  {tuple:?}");
    }
    let target: Vec<u64> = vec![6, 10, 15];
    let found = solutions
        .iter()
        .any(|s| s.assignment.values().copied().collect::<Vec<_>>() == target);
    println!("contains (6, 10, 15): {found}");
    Ok(())
}
