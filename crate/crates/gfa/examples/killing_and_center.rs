//! Structure constants, adjoint matrices, Killing form, center, and the
//! independent-set reading of the Cartan rank.

use gfa::calculus::{base_function, NodeFunction};
use gfa::graph::{max_independent_set, IndepVariant, WeightedGraph};
use gfa::lie::{ad_matrix, killing_form, center, structure_constants};
use gfa::{Scalar, ScalarDomain};

fn main() -> gfa::Result<()> {
    let g = WeightedGraph::complete(ScalarDomain::Rational, 3, Scalar::rational(1, 1))?;

    let sc = structure_constants(&g);
    println!("structure constants f_ab^a = w_ab, f_ab^b = −w_ab:");
    for (&(a, b), (fa, fb)) in &sc.entries {
        println!("  ({a},{b}): ({fa}, {fb})");
    }

    // ad of the constant function is −Δ
    let ones = NodeFunction::ones(ScalarDomain::Rational, 3);
    let ad1 = ad_matrix(&g, &ones)?;
    println!("\nad_1 (equals −Δ):");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| ad1.get(i, j).to_string()).collect();
        println!("  {row:?}");
    }

    let k = killing_form(&g)?;
    println!("\nKilling form B_ab = tr(ad_a · ad_b):");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| k.matrix.get(i, j).to_string()).collect();
        println!("  {row:?}");
    }
    println!("det B = {} → nondegenerate: {}", k.determinant, k.nondegenerate);

    let z = center(&g)?;
    println!("\ncenter dimension: {}", z.len());

    // edgeless graphs are abelian: the whole space is central
    let edgeless = WeightedGraph::new(ScalarDomain::Rational, 3);
    println!("edgeless-graph center dimension: {}", center(&edgeless)?.len());

    // Cartan-rank reading: both independent-set variants, side by side
    let c5 = WeightedGraph::cycle(ScalarDomain::Rational, 5, Scalar::rational(1, 1))?;
    let ind = max_independent_set(&c5, IndepVariant::Independent)?;
    let two = max_independent_set(&c5, IndepVariant::TwoPacking)?;
    println!("\nC5: maximum independent set {ind:?}, maximum two-packing {two:?}");

    // base functions on an independent set commute pairwise
    let f0 = base_function(&c5, ind[0])?;
    let f1 = base_function(&c5, ind[1])?;
    assert!(gfa::lie::bracket(&c5, &f0, &f1)?.is_zero());
    println!("base functions on the independent set commute");
    Ok(())
}
