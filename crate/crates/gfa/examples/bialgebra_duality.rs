//! The bialgebra layer: co-bracket, the duality pairing that defines it,
//! the classical Yang-Baxter residual, and co-adjoint / Manin brackets.

use gfa::bialgebra::{
    cobracket, coadjoint_actions, manin_bracket, pairing_duality_check, ybe_check,
    DualNodeFunction,
};
use gfa::calculus::{laplacian_apply, NodeFunction};
use gfa::graph::WeightedGraph;
use gfa::{Scalar, ScalarDomain};

fn main() -> gfa::Result<()> {
    let g = WeightedGraph::triangle(
        ScalarDomain::Rational,
        Scalar::rational(1, 2),
        Scalar::rational(2, 3),
        Scalar::rational(-3, 4),
    )?;

    let h = NodeFunction::from_i64(ScalarDomain::Rational, &[2, -1, 5]);
    let co = cobracket(&g, &h)?;
    println!("[h]_ij = w_ij (h_i − h_j):");
    for (&(i, j), v) in co.iter() {
        println!("  [h]({i},{j}) = {v}");
    }

    // ⟨[f,p], h⟩_V = ⟨f⊗p, [h]⟩_E for any symmetric weights
    let f = NodeFunction::from_i64(ScalarDomain::Rational, &[1, 4, -3]);
    let p = NodeFunction::from_i64(ScalarDomain::Rational, &[0, 2, 7]);
    let residual = pairing_duality_check(&g, &f, &p, &h)?;
    println!("\nduality pairing residual: {residual}");
    assert!(residual.is_zero());

    // classical Yang-Baxter for r = 1_a⊗1_b − 1_b⊗1_a
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let res = ybe_check(&g, a, b)?;
        println!("YBE residual for basis pair ({a},{b}): zero = {}", res.zero);
    }

    // with x = constant 1 the co-adjoint action is the +Laplacian
    let ones = NodeFunction::ones(ScalarDomain::Rational, 3);
    let xi = DualNodeFunction::from_i64(ScalarDomain::Rational, &[1, 2, 3]);
    let (ad_x_xi, _) = coadjoint_actions(&g, &ones, &xi)?;
    assert_eq!(ad_x_xi.coefficients(), &laplacian_apply(&g, xi.coefficients())?);
    println!("\nad*_1 ξ = +Δξ, entrywise");

    let x = NodeFunction::from_i64(ScalarDomain::Rational, &[3, 0, -1]);
    let (g_part, g_star_part) = manin_bracket(&g, &x, &xi)?;
    println!(
        "[x, ξ]_𝔞: g-component {:?}, g*-component {:?}",
        g_part.values().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        g_star_part
            .coefficients()
            .values()
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
    );
    Ok(())
}
