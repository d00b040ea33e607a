//! The Lie algebra of graph functions: bracket, adjoint matrices,
//! Jacobiator and admissibility over fields and residue rings, structure
//! constants, Killing form, center, the second-order Leibniz rule, and
//! edge-split brackets.

use std::collections::BTreeMap;

use crate::calculus::{base_function, laplacian_apply, NodeFunction};
use crate::error::{Error, Result};
use crate::graph::{Pair, WeightedGraph};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Node cap for the dense Killing-form trace products.
pub const KILLING_CAP: usize = 64;

/// `[f,h]_i = Σ_j w_ij (f_i h_j − f_j h_i)`. In debug builds the result is
/// cross-checked against the Laplacian form `(Δf)_i h_i − f_i (Δh)_i`.
pub fn bracket(g: &WeightedGraph, f: &NodeFunction, h: &NodeFunction) -> Result<NodeFunction> {
    if f.domain() != g.domain() || h.domain() != g.domain() {
        return Err(Error::domain(format!(
            "bracket domain mismatch: graph {}, arguments {} and {}",
            g.domain(),
            f.domain(),
            h.domain()
        )));
    }
    if f.len() != g.n() || h.len() != g.n() {
        return Err(Error::domain(format!(
            "bracket length mismatch: graph n={}, arguments {} and {}",
            g.n(),
            f.len(),
            h.len()
        )));
    }
    let mut out = NodeFunction::zeros(g.domain(), g.n());
    for i in 0..g.n() {
        let mut acc = Scalar::zero(g.domain());
        for j in g.neighbors(i) {
            let term = f.get(i).mul(h.get(j)).sub(&f.get(j).mul(h.get(i)));
            acc = acc.add(&g.weight(i, j).mul(&term));
        }
        out.set(i, acc);
    }
    debug_assert!({
        let alt = bracket_laplacian_form(g, f, h)?;
        let scale = 1.0 + out.max_magnitude().max(alt.max_magnitude());
        out.sub(&alt).max_magnitude() <= if g.domain().is_exact() { 0.0 } else { 1e-9 * scale }
    });
    Ok(out)
}

/// The same bracket computed through the Laplacian: `(Δf)·h − f·(Δh)`
/// pointwise.
pub fn bracket_laplacian_form(
    g: &WeightedGraph,
    f: &NodeFunction,
    h: &NodeFunction,
) -> Result<NodeFunction> {
    let lf = laplacian_apply(g, f)?;
    let lh = laplacian_apply(g, h)?;
    Ok(lf.pointwise_mul(h).sub(&f.pointwise_mul(&lh)))
}

/// Matrix of `ad_f : h ↦ [f, h]` in the base-function basis; column `b`
/// is `[f, 1_b]`. For the constant function the result is `−Δ`.
pub fn ad_matrix(g: &WeightedGraph, f: &NodeFunction) -> Result<DenseMatrix> {
    let n = g.n();
    let mut m = DenseMatrix::zeros(g.domain(), n, n);
    for b in 0..n {
        let col = bracket(g, f, &base_function(g, b)?)?;
        for i in 0..n {
            m.set(i, b, col.get(i).clone());
        }
    }
    Ok(m)
}

/// Closed-form Jacobiator of three base functions:
/// `w_bc(w_ab − w_ac) 1_a + w_ac(w_bc − w_ab) 1_b + w_ab(w_ac − w_bc) 1_c`.
pub fn jacobiator(g: &WeightedGraph, a: usize, b: usize, c: usize) -> Result<NodeFunction> {
    if a == b || b == c || a == c {
        return Err(Error::domain(format!(
            "jacobiator needs three distinct nodes, got ({a},{b},{c})"
        )));
    }
    if a >= g.n() || b >= g.n() || c >= g.n() {
        return Err(Error::domain(format!(
            "node triple ({a},{b},{c}) out of range for n={}",
            g.n()
        )));
    }
    let wab = g.weight(a, b);
    let wac = g.weight(a, c);
    let wbc = g.weight(b, c);
    let mut out = NodeFunction::zeros(g.domain(), g.n());
    out.set(a, wbc.mul(&wab.sub(&wac)));
    out.set(b, wac.mul(&wbc.sub(&wab)));
    out.set(c, wab.mul(&wac.sub(&wbc)));
    Ok(out)
}

/// Brute-force Jacobiator `[1_a,[1_b,1_c]] + [1_b,[1_c,1_a]] + [1_c,[1_a,1_b]]`,
/// the independent cross-check for the closed form.
pub fn jacobiator_brute(g: &WeightedGraph, a: usize, b: usize, c: usize) -> Result<NodeFunction> {
    let fa = base_function(g, a)?;
    let fb = base_function(g, b)?;
    let fc = base_function(g, c)?;
    let t1 = bracket(g, &fa, &bracket(g, &fb, &fc)?)?;
    let t2 = bracket(g, &fb, &bracket(g, &fc, &fa)?)?;
    let t3 = bracket(g, &fc, &bracket(g, &fa, &fb)?)?;
    Ok(t1.add(&t2).add(&t3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiMode {
    /// Quantify over all distinct node triples.
    Full,
    /// Only triples whose pairwise hop distances are all 1 or greater
    /// than 2 (distance-2 pairs excluded).
    Restricted,
}

impl JacobiMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            JacobiMode::Full => "full",
            JacobiMode::Restricted => "restricted",
        }
    }
}

#[derive(Debug, Clone)]
pub struct JacobiReport {
    pub mode: JacobiMode,
    pub admissible: bool,
    pub violations: Vec<([usize; 3], NodeFunction)>,
    /// Zero threshold applied to Jacobiator entries (0 for exact domains).
    pub tolerance: f64,
}

/// Magnitude below which a floating residual counts as zero, scaled by
/// the squared weight magnitudes entering the Jacobiator.
fn jacobi_tolerance(g: &WeightedGraph) -> f64 {
    if g.domain().is_exact() {
        return 0.0;
    }
    let wmax = g
        .edges()
        .into_iter()
        .map(|(u, v)| g.weight(u, v).magnitude())
        .fold(0.0, f64::max);
    1e-12 * (wmax * wmax).max(1.0)
}

fn jacobi_triples(g: &WeightedGraph, mode: JacobiMode) -> Vec<[usize; 3]> {
    let n = g.n();
    let dist = match mode {
        JacobiMode::Full => None,
        JacobiMode::Restricted => Some(g.distance_matrix()),
    };
    let pair_ok = |d: &Vec<Vec<Option<usize>>>, u: usize, v: usize| match d[u][v] {
        Some(k) => k == 1 || k > 2,
        None => true, // unreachable pairs are at distance > 2
    };
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some(d) = &dist {
                    if !(pair_ok(d, a, b) && pair_ok(d, a, c) && pair_ok(d, b, c)) {
                        continue;
                    }
                }
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Check the Jacobi identity over all (or all restricted) node triples.
/// `threads > 1` splits the triple list across workers; the merged result
/// is deterministic.
pub fn jacobi_admissibility_threaded(
    g: &WeightedGraph,
    mode: JacobiMode,
    threads: usize,
) -> Result<JacobiReport> {
    let triples = jacobi_triples(g, mode);
    let tolerance = jacobi_tolerance(g);
    let check = |triple: &[usize; 3]| -> Result<Option<([usize; 3], NodeFunction)>> {
        let jac = jacobiator(g, triple[0], triple[1], triple[2])?;
        let is_violation = if tolerance == 0.0 {
            !jac.is_zero()
        } else {
            jac.max_magnitude() > tolerance
        };
        Ok(is_violation.then_some((*triple, jac)))
    };
    let mut violations = Vec::new();
    if threads <= 1 || triples.len() < 64 {
        for t in &triples {
            if let Some(v) = check(t)? {
                violations.push(v);
            }
        }
    } else {
        let chunk = triples.len().div_ceil(threads);
        let results: Vec<Result<Vec<_>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = triples
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        let mut local = Vec::new();
                        for t in part {
                            if let Some(v) = check(t)? {
                                local.push(v);
                            }
                        }
                        Ok(local)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for r in results {
            violations.extend(r?);
        }
        violations.sort_by_key(|(t, _)| *t);
    }
    Ok(JacobiReport {
        mode,
        admissible: violations.is_empty(),
        violations,
        tolerance,
    })
}

pub fn jacobi_admissibility(g: &WeightedGraph, mode: JacobiMode) -> Result<JacobiReport> {
    jacobi_admissibility_threaded(g, mode, 1)
}

/// Structure constants read off `[1_a,1_b] = w_ab 1_a − w_ab 1_b`:
/// for each edge `a < b`, the pair `(f_ab^a, f_ab^b) = (w_ab, −w_ab)`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub entries: BTreeMap<Pair, (Scalar, Scalar)>,
}

impl StructureConstants {
    /// `(f_ab^a, f_ab^b)` for an ordered node pair. Swapping the lower
    /// indices negates each constant with a fixed upper index, so the
    /// returned tuple is `(w_ab, −w_ab)` in either order.
    pub fn get(&self, a: usize, b: usize) -> Option<(Scalar, Scalar)> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.entries.get(&key).cloned()
    }
}

pub fn structure_constants(g: &WeightedGraph) -> StructureConstants {
    let entries = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let w = g.weight(a, b);
            ((a, b), (w.clone(), w.neg()))
        })
        .collect();
    StructureConstants { entries }
}

#[derive(Debug, Clone)]
pub struct KillingReport {
    pub matrix: DenseMatrix,
    pub determinant: Scalar,
    pub nondegenerate: bool,
}

/// Killing form `B_ab = trace(ad_{1_a} · ad_{1_b})` with an exact
/// determinant over the exact domains.
pub fn killing_form(g: &WeightedGraph) -> Result<KillingReport> {
    let n = g.n();
    if n > KILLING_CAP {
        return Err(Error::size_cap(format!(
            "Killing form capped at {KILLING_CAP} nodes (got {n})"
        )));
    }
    let ads: Vec<DenseMatrix> = (0..n)
        .map(|a| ad_matrix(g, &base_function(g, a)?))
        .collect::<Result<_>>()?;
    let mut b = DenseMatrix::zeros(g.domain(), n, n);
    for p in 0..n {
        for q in p..n {
            // trace(A B) = sum_ij A_ij B_ji
            let mut acc = Scalar::zero(g.domain());
            for i in 0..n {
                for j in 0..n {
                    acc = acc.add(&ads[p].get(i, j).mul(ads[q].get(j, i)));
                }
            }
            b.set(p, q, acc.clone());
            b.set(q, p, acc);
        }
    }
    let determinant = b.determinant()?;
    let nondegenerate = if g.domain().is_exact() {
        !determinant.is_zero()
    } else {
        // scale-aware threshold: det grows like entry^n
        let scale = b.max_magnitude().max(1.0).powi(n as i32);
        determinant.magnitude() > 1e-10 * scale
    };
    Ok(KillingReport {
        matrix: b,
        determinant,
        nondegenerate,
    })
}

/// Basis of the center: the joint kernel of `f ↦ [f, 1_b]` over all `b`,
/// computed from the vertically stacked action matrices.
pub fn center(g: &WeightedGraph) -> Result<Vec<NodeFunction>> {
    let n = g.n();
    let mut stacked = DenseMatrix::zeros(g.domain(), n * n, n);
    for b in 0..n {
        let one_b = base_function(g, b)?;
        for k in 0..n {
            let col = bracket(g, &base_function(g, k)?, &one_b)?;
            for i in 0..n {
                stacked.set(b * n + i, k, col.get(i).clone());
            }
        }
    }
    let basis = stacked.null_space()?;
    basis
        .into_iter()
        .map(|v| NodeFunction::new(g.domain(), v))
        .collect()
}

/// Residual of the second-order Leibniz rule
/// `ad_f²[p,q] − [ad_f²p, q] − 2[ad_f p, ad_f q] − [p, ad_f²q]`;
/// vanishes on Jacobi-admissible graphs.
pub fn second_order_leibniz_check(
    g: &WeightedGraph,
    f: &NodeFunction,
    p: &NodeFunction,
    q: &NodeFunction,
) -> Result<NodeFunction> {
    let two = Scalar::from_i64(g.domain(), 2);
    let ad = |x: &NodeFunction, y: &NodeFunction| bracket(g, x, y);
    let lhs = ad(f, &ad(f, &ad(p, q)?)?)?;
    let t1 = ad(&ad(f, &ad(f, p)?)?, q)?;
    let t2 = ad(&ad(f, p)?, &ad(f, q)?)?.scale(&two);
    let t3 = ad(p, &ad(f, &ad(f, q)?)?)?;
    Ok(lhs.sub(&t1).sub(&t2).sub(&t3))
}

/// Bracket for an edge split: weights keep their sign on `A` and flip on
/// the complement, giving `[·,·]_{A−B} = [·,·]_A − [·,·]_B`.
#[derive(Debug, Clone)]
pub struct SplitBracket {
    reweighted: WeightedGraph,
}

impl SplitBracket {
    pub fn graph(&self) -> &WeightedGraph {
        &self.reweighted
    }

    pub fn bracket(&self, f: &NodeFunction, h: &NodeFunction) -> Result<NodeFunction> {
        bracket(&self.reweighted, f, h)
    }
}

pub fn split_bracket(g: &WeightedGraph, part_a: &[Pair]) -> Result<SplitBracket> {
    let mut in_a = std::collections::BTreeSet::new();
    for &(u, v) in part_a {
        if !g.has_edge(u, v) {
            return Err(Error::domain(format!(
                "edge partition contains non-edge ({u},{v})"
            )));
        }
        in_a.insert(if u < v { (u, v) } else { (v, u) });
    }
    let mut reweighted = WeightedGraph::new(g.domain(), g.n());
    for (u, v) in g.edges() {
        let w = g.weight(u, v);
        let w = if in_a.contains(&(u, v)) { w } else { w.neg() };
        // a flipped weight can only vanish in characteristic 2
        if w.is_zero() {
            return Err(Error::domain(format!(
                "flipped weight on ({u},{v}) vanishes in {}",
                g.domain()
            )));
        }
        reweighted.add_edge_w(u, v, w)?;
    }
    Ok(SplitBracket { reweighted })
}
