//! Fokker-Planck on the triangle: the evolution matrix, its structurally
//! vanishing determinant, closed-form stability coefficients, and the
//! constant-weight analysis with the disputed negative-w threshold.

use gfa::fokker_planck::{
    constant_weight_analysis, fp_matrix, gaussian_ansatz, paper_b, paper_c,
    stationarity_and_stability, weight_scan, AnsatzParams, Delta2Coeff, FpCoefficients,
};
use gfa::graph::WeightedGraph;
use gfa::{Scalar, ScalarDomain};

fn main() -> gfa::Result<()> {
    let g = WeightedGraph::complete(ScalarDomain::Rational, 3, Scalar::rational(1, 1))?;
    let coeffs = FpCoefficients::uniform(ScalarDomain::Rational, 3, 1, 1);

    let m = fp_matrix(&g, &coeffs, Delta2Coeff::OneEighth)?;
    println!("M (uniform w = a = b = 1), exact entries:");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| m.get(i, j).to_string()).collect();
        println!("  {row:?}");
    }
    println!("det M = {} (exact)", m.determinant()?);
    println!("trace = {} = closed-form b = {}", m.trace(), paper_b(&g, &coeffs)?);
    println!("closed-form c = {}", paper_c(&g, &coeffs)?);

    let g_real = WeightedGraph::complete(ScalarDomain::Real, 3, Scalar::Real(1.0))?;
    let coeffs_real = FpCoefficients::uniform(ScalarDomain::Real, 3, 1, 1);
    let report = stationarity_and_stability(&g_real, &coeffs_real, Delta2Coeff::OneEighth)?;
    println!("\neigenvalues: {:?}", report.eigenvalues);
    println!("stationary: {}, stable: {}, strict b² > 4c: {}", report.stationary, report.stable, report.discriminant_ok);
    for note in &report.notes {
        println!("  note: {note}");
    }

    // constant-weight closed form and the conflicting printed threshold
    let cw = constant_weight_analysis(-1.0, 0.5, 1.0)?;
    println!(
        "\nw = -1, a = 0.5, b = 1: nonzero eigenvalue μ = {}, stable = {}",
        cw.mu, cw.stable
    );
    println!(
        "computed stability threshold a < {} vs printed {} — both reported",
        cw.threshold, cw.paper_threshold
    );

    // det M ≡ 0 along any one-edge weight family: the scan says so
    let scan = weight_scan(&g_real, &coeffs_real, (0, 1), 0.1, 10.0, 25, Delta2Coeff::OneEighth)?;
    println!(
        "\nscan of det over w01 ∈ [0.1, 10]: identically singular = {}, isolated roots = {:?}",
        scan.identically_singular, scan.roots
    );

    // the Gaussian ansatz is normalized by construction
    let gi = gaussian_ansatz(&g_real, &AnsatzParams::new(1.0, 0.0)?, 0)?;
    println!("\ngaussian ansatz g_0 = {gi:?} (sums to {})", gi.iter().sum::<f64>());
    Ok(())
}
