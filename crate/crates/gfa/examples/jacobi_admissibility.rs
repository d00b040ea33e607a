//! Where the Jacobi identity holds: uniform complete graphs, triangles
//! weighted by zero divisors of Z_30, and where it fails: a bare path.
//! Also the edge-split bracket [·,·]_{A−B}.

use gfa::graph::WeightedGraph;
use gfa::lie::{jacobi_admissibility, jacobiator, jacobiator_brute, split_bracket, JacobiMode};
use gfa::{Scalar, ScalarDomain};

fn main() -> gfa::Result<()> {
    let k4 = WeightedGraph::complete(ScalarDomain::Real, 4, Scalar::Real(2.0))?;
    let report = jacobi_admissibility(&k4, JacobiMode::Full)?;
    println!("K4 uniform, full mode: admissible = {}", report.admissible);

    let p3 = WeightedGraph::path(ScalarDomain::Real, 3, Scalar::Real(1.0))?;
    let report = jacobi_admissibility(&p3, JacobiMode::Full)?;
    println!("\nP3, full mode: admissible = {}", report.admissible);
    for (triple, jac) in &report.violations {
        println!(
            "  violation at {triple:?}: Jac = {:?}",
            jac.values().iter().map(|s| s.to_string()).collect::<Vec<_>>()
        );
    }
    // the distance-2 pair (0,2) is excluded in restricted mode
    let restricted = jacobi_admissibility(&p3, JacobiMode::Restricted)?;
    println!("P3, restricted mode: admissible = {}", restricted.admissible);

    // closed form and the double-bracket cyclic sum agree
    assert_eq!(jacobiator(&p3, 0, 1, 2)?, jacobiator_brute(&p3, 0, 1, 2)?);

    // the paper's flagship ring-weighted triangle: 6·10 ≡ 6·15 ≡ 10·15 ≡ 0 (mod 30)
    let z30 = WeightedGraph::triangle(
        ScalarDomain::Zmod(30),
        Scalar::zmod(6, 30),
        Scalar::zmod(10, 30),
        Scalar::zmod(15, 30),
    )?;
    let report = jacobi_admissibility(&z30, JacobiMode::Full)?;
    println!("\nZ_30 triangle (6,10,15): admissible = {}", report.admissible);

    // splitting the edges flips signs on the complement; over Z_30 the
    // result stays admissible, over the reals it breaks
    let split = split_bracket(&z30, &[(0, 1)])?;
    let report = jacobi_admissibility(split.graph(), JacobiMode::Full)?;
    println!(
        "Z_30 split A = {{(0,1)}} → weights (6, {}, {}): admissible = {}",
        split.graph().weight(0, 2),
        split.graph().weight(1, 2),
        report.admissible
    );

    let k3 = WeightedGraph::complete(ScalarDomain::Real, 3, Scalar::Real(1.0))?;
    let split = split_bracket(&k3, &[(0, 1)])?;
    let report = jacobi_admissibility(split.graph(), JacobiMode::Full)?;
    println!("real K3 split A = {{(0,1)}}: admissible = {}", report.admissible);
    Ok(())
}
