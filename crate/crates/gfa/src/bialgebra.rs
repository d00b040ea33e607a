//! The Lie bialgebra layer: co-bracket, the node/edge duality pairing,
//! the classical Yang-Baxter check for the basis r-matrix, co-adjoint
//! actions, and the Manin-double bracket.

use crate::calculus::{base_function, EdgeFunction, NodeFunction};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::lie::bracket;
use crate::scalar::{Scalar, ScalarDomain};

/// Node cap for the dense rank-3 Yang-Baxter tensors.
pub const YBE_CAP: usize = 32;

/// Coefficients over the dual basis `1*_i`. Structurally a dense vector
/// like [`NodeFunction`]; the separate type keeps `g` and `g*` elements
/// from mixing.
#[derive(Debug, Clone, PartialEq)]
pub struct DualNodeFunction(NodeFunction);

impl DualNodeFunction {
    pub fn new(inner: NodeFunction) -> Self {
        DualNodeFunction(inner)
    }

    pub fn from_i64(domain: ScalarDomain, values: &[i64]) -> Self {
        DualNodeFunction(NodeFunction::from_i64(domain, values))
    }

    pub fn coefficients(&self) -> &NodeFunction {
        &self.0
    }

    pub fn into_coefficients(self) -> NodeFunction {
        self.0
    }
}

/// Co-bracket `[h]_ij = w_ij (h_i − h_j)`, the graph difference operator
/// rediscovered up to sign; antisymmetric under orientation reversal.
pub fn cobracket(g: &WeightedGraph, h: &NodeFunction) -> Result<EdgeFunction> {
    if h.domain() != g.domain() || h.len() != g.n() {
        return Err(Error::domain(
            "cobracket: node function incompatible with graph".to_string(),
        ));
    }
    let mut out = EdgeFunction::new(g.domain());
    for (u, v) in g.edges() {
        for (i, j) in [(u, v), (v, u)] {
            let diff = h.get(i).sub(h.get(j));
            out.set(i, j, g.weight(i, j).mul(&diff));
        }
    }
    Ok(out)
}

/// Residual of `⟨[f,p], h⟩_V − ⟨f⊗p, [h]⟩_E` with `(f⊗p)_ij = f_i p_j`
/// on ordered adjacent pairs; identically zero for symmetric weights.
pub fn pairing_duality_check(
    g: &WeightedGraph,
    f: &NodeFunction,
    p: &NodeFunction,
    h: &NodeFunction,
) -> Result<Scalar> {
    let lhs = crate::calculus::inner_product_nodes(&bracket(g, f, p)?, h)?;
    let co = cobracket(g, h)?;
    let mut rhs = Scalar::zero(g.domain());
    for (u, v) in g.edges() {
        for (i, j) in [(u, v), (v, u)] {
            rhs = rhs.add(&f.get(i).mul(p.get(j)).mul(&co.get(i, j)));
        }
    }
    Ok(lhs.sub(&rhs))
}

/// Summary of the three-term classical Yang-Baxter sum for the basis
/// r-matrix `r = 1_a⊗1_b − 1_b⊗1_a`.
#[derive(Debug, Clone)]
pub struct YbeResidual {
    pub zero: bool,
    pub nonzero_entries: usize,
    pub max_magnitude: f64,
}

/// Evaluate `[r12,r13] + [r12,r23] + [r13,r23]` as a dense rank-3 tensor
/// over the node basis and summarize the residual (expected zero).
pub fn ybe_check(g: &WeightedGraph, a: usize, b: usize) -> Result<YbeResidual> {
    if a == b {
        return Err(Error::domain(format!("ybe check needs distinct nodes, got ({a},{b})")));
    }
    if g.n() > YBE_CAP {
        return Err(Error::size_cap(format!(
            "ybe check capped at {YBE_CAP} nodes (got {})",
            g.n()
        )));
    }
    let n = g.n();
    let fa = base_function(g, a)?;
    let fb = base_function(g, b)?;
    // r = Σ_s sign_s x_s ⊗ y_s
    let terms: [(i64, &NodeFunction, &NodeFunction); 2] = [(1, &fa, &fb), (-1, &fb, &fa)];
    let mut tensor = vec![Scalar::zero(g.domain()); n * n * n];
    let mut accumulate = |coeffs: [&NodeFunction; 3], sign: i64| {
        let s = Scalar::from_i64(g.domain(), sign);
        for i in 0..n {
            let ci = coeffs[0].get(i);
            if ci.is_zero() {
                continue;
            }
            for j in 0..n {
                let cj = coeffs[1].get(j);
                if cj.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let ck = coeffs[2].get(k);
                    if ck.is_zero() {
                        continue;
                    }
                    let idx = (i * n + j) * n + k;
                    let add = ci.mul(cj).mul(ck).mul(&s);
                    tensor[idx] = tensor[idx].add(&add);
                }
            }
        }
    };
    for (s1, x1, y1) in terms {
        for (s2, x2, y2) in terms {
            let sign = s1 * s2;
            // [r12, r13] = Σ [x1,x2] ⊗ y1 ⊗ y2
            accumulate([&bracket(g, x1, x2)?, y1, y2], sign);
            // [r12, r23] = Σ x1 ⊗ [y1,x2] ⊗ y2
            accumulate([x1, &bracket(g, y1, x2)?, y2], sign);
            // [r13, r23] = Σ x1 ⊗ x2 ⊗ [y1,y2]
            accumulate([x1, x2, &bracket(g, y1, y2)?], sign);
        }
    }
    let tolerance = if g.domain().is_exact() { 0.0 } else { 1e-12 };
    let nonzero_entries = tensor
        .iter()
        .filter(|s| s.magnitude() > tolerance)
        .count();
    let max_magnitude = tensor.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    Ok(YbeResidual {
        zero: nonzero_entries == 0,
        nonzero_entries,
        max_magnitude,
    })
}

/// Both co-adjoint actions:
/// `(ad*_x ξ)(i) = ξ_i Σ_j w_ij x_j − Σ_j w_ij x_j ξ_j` and symmetrically
/// for `ad*_ξ x`. These are graph Laplacians with redefined weights
/// (`w_ij x_j`, resp. `w_ij ξ_j`), positive sign.
pub fn coadjoint_actions(
    g: &WeightedGraph,
    x: &NodeFunction,
    xi: &DualNodeFunction,
) -> Result<(DualNodeFunction, NodeFunction)> {
    let xi_c = xi.coefficients();
    if x.domain() != g.domain() || xi_c.domain() != g.domain() {
        return Err(Error::domain("coadjoint: domain mismatch".to_string()));
    }
    if x.len() != g.n() || xi_c.len() != g.n() {
        return Err(Error::domain("coadjoint: length mismatch".to_string()));
    }
    let mut ad_x_xi = NodeFunction::zeros(g.domain(), g.n());
    let mut ad_xi_x = NodeFunction::zeros(g.domain(), g.n());
    for i in 0..g.n() {
        let mut wx = Scalar::zero(g.domain()); // Σ_j w_ij x_j
        let mut wx_xi = Scalar::zero(g.domain()); // Σ_j w_ij x_j ξ_j
        let mut wxi = Scalar::zero(g.domain()); // Σ_j w_ij ξ_j
        let mut wxi_x = Scalar::zero(g.domain()); // Σ_j w_ij ξ_j x_j
        for j in g.neighbors(i) {
            let w = g.weight(i, j);
            wx = wx.add(&w.mul(x.get(j)));
            wx_xi = wx_xi.add(&w.mul(x.get(j)).mul(xi_c.get(j)));
            wxi = wxi.add(&w.mul(xi_c.get(j)));
            wxi_x = wxi_x.add(&w.mul(xi_c.get(j)).mul(x.get(j)));
        }
        ad_x_xi.set(i, xi_c.get(i).mul(&wx).sub(&wx_xi));
        ad_xi_x.set(i, x.get(i).mul(&wxi).sub(&wxi_x));
    }
    Ok((DualNodeFunction(ad_x_xi), ad_xi_x))
}

/// Manin-triple mixed bracket `[x, ξ]_𝔞 = −Δ_ξ(x) + Δ_x(ξ)`, returned as
/// the pair (component in g, component in g*).
pub fn manin_bracket(
    g: &WeightedGraph,
    x: &NodeFunction,
    xi: &DualNodeFunction,
) -> Result<(NodeFunction, DualNodeFunction)> {
    let (ad_x_xi, ad_xi_x) = coadjoint_actions(g, x, xi)?;
    Ok((ad_xi_x.neg(), ad_x_xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::laplacian_apply;

    fn k3() -> WeightedGraph {
        WeightedGraph::complete(ScalarDomain::Real, 3, Scalar::Real(1.0)).unwrap()
    }

    fn z30_triangle() -> WeightedGraph {
        WeightedGraph::triangle(
            ScalarDomain::Zmod(30),
            Scalar::zmod(6, 30),
            Scalar::zmod(10, 30),
            Scalar::zmod(15, 30),
        )
        .unwrap()
    }

    #[test]
    fn cobracket_of_base_function() {
        let g = k3();
        let co = cobracket(&g, &base_function(&g, 0).unwrap()).unwrap();
        assert_eq!(co.get(0, 1), Scalar::Real(1.0));
        assert_eq!(co.get(0, 2), Scalar::Real(1.0));
        assert_eq!(co.get(1, 0), Scalar::Real(-1.0));
        assert_eq!(co.get(2, 0), Scalar::Real(-1.0));
        assert_eq!(co.get(1, 2), Scalar::Real(0.0));
    }

    #[test]
    fn cobracket_constant_vanishes() {
        let g = k3();
        let h = NodeFunction::ones(ScalarDomain::Real, 3);
        assert!(cobracket(&g, &h).unwrap().is_zero());
    }

    #[test]
    fn cobracket_z30_values() {
        let g = z30_triangle();
        let co = cobracket(&g, &base_function(&g, 0).unwrap()).unwrap();
        assert_eq!(co.get(0, 1), Scalar::zmod(6, 30));
        assert_eq!(co.get(0, 2), Scalar::zmod(10, 30));
        // antisymmetry under orientation reversal
        assert_eq!(co.get(1, 0), Scalar::zmod(24, 30));
    }

    #[test]
    fn cobracket_antisymmetric_everywhere() {
        let g = z30_triangle();
        let h = NodeFunction::from_i64(ScalarDomain::Zmod(30), &[3, 17, 8]);
        let co = cobracket(&g, &h).unwrap();
        for (u, v) in g.edges() {
            assert_eq!(co.get(u, v), co.get(v, u).neg());
        }
    }

    #[test]
    fn duality_pairing_zero_on_random_rationals() {
        let g = WeightedGraph::complete(ScalarDomain::Rational, 3, Scalar::rational(2, 3)).unwrap();
        let f = NodeFunction::from_i64(ScalarDomain::Rational, &[1, -2, 4]);
        let p = NodeFunction::from_i64(ScalarDomain::Rational, &[3, 5, -1]);
        let h = NodeFunction::from_i64(ScalarDomain::Rational, &[2, 0, 7]);
        assert!(pairing_duality_check(&g, &f, &p, &h).unwrap().is_zero());
    }

    #[test]
    fn duality_pairing_trivial_cases() {
        let g = k3();
        let f = NodeFunction::from_i64(ScalarDomain::Real, &[1, 2, 3]);
        let constant = NodeFunction::ones(ScalarDomain::Real, 3);
        assert!(pairing_duality_check(&g, &f, &f, &constant).unwrap().is_zero());
        assert!(pairing_duality_check(&g, &f, &f, &f).unwrap().is_zero());
    }

    #[test]
    fn ybe_zero_on_k3_and_z30() {
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            assert!(ybe_check(&k3(), a, b).unwrap().zero);
            assert!(ybe_check(&z30_triangle(), a, b).unwrap().zero);
        }
    }

    #[test]
    fn ybe_zero_on_edgeless_graph() {
        let g = WeightedGraph::new(ScalarDomain::Rational, 3);
        assert!(ybe_check(&g, 0, 2).unwrap().zero);
    }

    #[test]
    fn ybe_rejects_equal_nodes() {
        assert!(ybe_check(&k3(), 1, 1).is_err());
    }

    #[test]
    fn coadjoint_with_constant_is_positive_laplacian() {
        let g = k3();
        let x = NodeFunction::ones(ScalarDomain::Real, 3);
        let xi = DualNodeFunction::from_i64(ScalarDomain::Real, &[1, 2, 3]);
        let (ad_x_xi, _) = coadjoint_actions(&g, &x, &xi).unwrap();
        let lap = laplacian_apply(&g, xi.coefficients()).unwrap();
        assert_eq!(ad_x_xi.coefficients(), &lap);
        assert_eq!(
            ad_x_xi.coefficients().values(),
            &[Scalar::Real(-3.0), Scalar::Real(0.0), Scalar::Real(3.0)]
        );
    }

    #[test]
    fn coadjoint_constant_xi_and_x_vanishes() {
        let g = k3();
        let x = NodeFunction::ones(ScalarDomain::Real, 3);
        let xi = DualNodeFunction::new(NodeFunction::ones(ScalarDomain::Real, 3));
        let (ad_x_xi, ad_xi_x) = coadjoint_actions(&g, &x, &xi).unwrap();
        assert!(ad_x_xi.coefficients().is_zero());
        assert!(ad_xi_x.is_zero());
    }

    #[test]
    fn manin_bracket_with_constant_x() {
        let g = k3();
        let x = NodeFunction::ones(ScalarDomain::Real, 3);
        let xi = DualNodeFunction::from_i64(ScalarDomain::Real, &[1, 2, 3]);
        let (g_part, g_star_part) = manin_bracket(&g, &x, &xi).unwrap();
        assert!(g_part.is_zero());
        let lap = laplacian_apply(&g, xi.coefficients()).unwrap();
        assert_eq!(g_star_part.coefficients(), &lap);
    }

    #[test]
    fn manin_bracket_zero_xi() {
        let g = k3();
        let x = NodeFunction::from_i64(ScalarDomain::Real, &[1, 5, -2]);
        let xi = DualNodeFunction::new(NodeFunction::zeros(ScalarDomain::Real, 3));
        let (g_part, g_star_part) = manin_bracket(&g, &x, &xi).unwrap();
        assert!(g_part.is_zero());
        assert!(g_star_part.coefficients().is_zero());
    }

    #[test]
    fn manin_bracket_matches_brute_force_sums() {
        let g = k3();
        let x = base_function(&g, 0).unwrap();
        let xi = DualNodeFunction::new(base_function(&g, 1).unwrap());
        let (g_part, g_star_part) = manin_bracket(&g, &x, &xi).unwrap();
        // brute-force the displayed formulas
        for i in 0..3 {
            let mut wx = 0.0;
            let mut wx_xi = 0.0;
            let mut wxi = 0.0;
            let mut wxi_x = 0.0;
            for j in 0..3 {
                let w = match g.weight(i, j) {
                    Scalar::Real(w) => w,
                    _ => unreachable!(),
                };
                let xj = if j == 0 { 1.0 } else { 0.0 };
                let xij = if j == 1 { 1.0 } else { 0.0 };
                wx += w * xj;
                wx_xi += w * xj * xij;
                wxi += w * xij;
                wxi_x += w * xij * xj;
            }
            let xi_i = if i == 1 { 1.0 } else { 0.0 };
            let x_i = if i == 0 { 1.0 } else { 0.0 };
            let expect_star = xi_i * wx - wx_xi;
            let expect_g = -(x_i * wxi - wxi_x);
            assert_eq!(g_star_part.coefficients().get(i), &Scalar::Real(expect_star));
            assert_eq!(g_part.get(i), &Scalar::Real(expect_g));
        }
    }

    #[test]
    fn cobracket_linear_combination_recovers_bracket() {
        // [f,p](i) = Σ_j ([f]_ij p_i − f_i [p]_ij)
        let g = WeightedGraph::complete(ScalarDomain::Rational, 4, Scalar::rational(3, 2)).unwrap();
        let f = NodeFunction::from_i64(ScalarDomain::Rational, &[1, -2, 0, 3]);
        let p = NodeFunction::from_i64(ScalarDomain::Rational, &[2, 1, -1, 5]);
        let cf = cobracket(&g, &f).unwrap();
        let cp = cobracket(&g, &p).unwrap();
        let direct = bracket(&g, &f, &p).unwrap();
        for i in 0..4 {
            let mut acc = Scalar::zero(ScalarDomain::Rational);
            for j in g.neighbors(i) {
                acc = acc.add(&cf.get(i, j).mul(p.get(i)));
                acc = acc.sub(&f.get(i).mul(&cp.get(i, j)));
            }
            assert_eq!(&acc, direct.get(i));
        }
    }
}
