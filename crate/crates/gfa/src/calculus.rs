//! Discrete calculus on graph functions: base functions, inner products,
//! the difference operator `d`, its dual `d*`, the Laplacian `Δ = d*d`,
//! and the defect-corrected Leibniz identity that `d` obeys.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::DenseMatrix;
use crate::scalar::{Scalar, ScalarDomain};

/// Dense function on graph nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeFunction {
    domain: ScalarDomain,
    values: Vec<Scalar>,
}

impl NodeFunction {
    pub fn new(domain: ScalarDomain, values: Vec<Scalar>) -> Result<Self> {
        for (i, v) in values.iter().enumerate() {
            if v.domain() != domain {
                return Err(Error::domain(format!(
                    "value {i} has domain {}, expected {domain}",
                    v.domain()
                )));
            }
        }
        Ok(NodeFunction { domain, values })
    }

    pub fn zeros(domain: ScalarDomain, n: usize) -> Self {
        NodeFunction {
            domain,
            values: vec![Scalar::zero(domain); n],
        }
    }

    pub fn constant(domain: ScalarDomain, n: usize, value: Scalar) -> Self {
        NodeFunction {
            domain,
            values: vec![value; n],
        }
    }

    pub fn ones(domain: ScalarDomain, n: usize) -> Self {
        Self::constant(domain, n, Scalar::one(domain))
    }

    pub fn from_i64(domain: ScalarDomain, values: &[i64]) -> Self {
        NodeFunction {
            domain,
            values: values.iter().map(|&k| Scalar::from_i64(domain, k)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.values[i]
    }

    pub fn set(&mut self, i: usize, v: Scalar) {
        debug_assert_eq!(v.domain(), self.domain);
        self.values[i] = v;
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn add(&self, rhs: &NodeFunction) -> NodeFunction {
        assert_eq!(self.len(), rhs.len());
        NodeFunction {
            domain: self.domain,
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &NodeFunction) -> NodeFunction {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> NodeFunction {
        NodeFunction {
            domain: self.domain,
            values: self.values.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> NodeFunction {
        NodeFunction {
            domain: self.domain,
            values: self.values.iter().map(|v| v.mul(s)).collect(),
        }
    }

    /// Pointwise product.
    pub fn pointwise_mul(&self, rhs: &NodeFunction) -> NodeFunction {
        assert_eq!(self.len(), rhs.len());
        NodeFunction {
            domain: self.domain,
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.values.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({ "values": self.values.iter().map(Scalar::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(domain: ScalarDomain, v: &Value) -> Result<NodeFunction> {
        let arr = v
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("node function JSON needs a \"values\" array"))?;
        let values = arr
            .iter()
            .map(|x| Scalar::from_json(domain, x))
            .collect::<Result<Vec<_>>>()?;
        NodeFunction::new(domain, values)
    }
}

/// Sparse function on ordered adjacent pairs; both orientations of an
/// edge are independent entries.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFunction {
    domain: ScalarDomain,
    values: BTreeMap<(usize, usize), Scalar>,
}

impl EdgeFunction {
    pub fn new(domain: ScalarDomain) -> Self {
        EdgeFunction {
            domain,
            values: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.values
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.domain))
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.domain(), self.domain);
        self.values.insert((i, j), v);
    }

    /// Entries in ascending ordered-pair order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Scalar::is_zero)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.values.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn neg(&self) -> EdgeFunction {
        EdgeFunction {
            domain: self.domain,
            values: self
                .values
                .iter()
                .map(|(&k, v)| (k, v.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &EdgeFunction) -> EdgeFunction {
        let mut out = self.clone();
        for (&(i, j), v) in rhs.values.iter() {
            let cur = out.get(i, j);
            out.set(i, j, cur.sub(v));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "values": self
                .values
                .iter()
                .map(|(&(i, j), v)| json!({"i": i, "j": j, "v": v.to_json()}))
                .collect::<Vec<_>>()
        })
    }

    pub fn from_json(domain: ScalarDomain, v: &Value) -> Result<EdgeFunction> {
        let arr = v
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("edge function JSON needs a \"values\" array"))?;
        let mut out = EdgeFunction::new(domain);
        for (idx, entry) in arr.iter().enumerate() {
            let i = entry
                .get("i")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::parse(format!("values[{idx}]: missing \"i\"")))?;
            let j = entry
                .get("j")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::parse(format!("values[{idx}]: missing \"j\"")))?;
            let v = entry
                .get("v")
                .ok_or_else(|| Error::parse(format!("values[{idx}]: missing \"v\"")))?;
            out.set(i as usize, j as usize, Scalar::from_json(domain, v)?);
        }
        Ok(out)
    }
}

fn check_same_domain(a: ScalarDomain, b: ScalarDomain, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::domain(format!("{what}: domain {a} vs {b}")));
    }
    Ok(())
}

fn check_len(g: &WeightedGraph, f: &NodeFunction) -> Result<()> {
    check_same_domain(g.domain(), f.domain(), "graph vs node function")?;
    if f.len() != g.n() {
        return Err(Error::domain(format!(
            "node function has length {}, graph has {} nodes",
            f.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Kronecker base function `1_a`.
pub fn base_function(g: &WeightedGraph, a: usize) -> Result<NodeFunction> {
    if a >= g.n() {
        return Err(Error::domain(format!(
            "node index {a} out of range for n={}",
            g.n()
        )));
    }
    let mut f = NodeFunction::zeros(g.domain(), g.n());
    f.set(a, Scalar::one(g.domain()));
    Ok(f)
}

/// `⟨f, g⟩_V = Σ_i f_i g_i`.
pub fn inner_product_nodes(f: &NodeFunction, g: &NodeFunction) -> Result<Scalar> {
    check_same_domain(f.domain(), g.domain(), "inner product")?;
    if f.len() != g.len() {
        return Err(Error::domain(format!(
            "inner product length mismatch: {} vs {}",
            f.len(),
            g.len()
        )));
    }
    let mut acc = Scalar::zero(f.domain());
    for (a, b) in f.values().iter().zip(g.values()) {
        acc = acc.add(&a.mul(b));
    }
    Ok(acc)
}

/// `⟨F, G⟩_E` summed over ordered adjacent pairs.
pub fn inner_product_edges(g: &WeightedGraph, big_f: &EdgeFunction, big_g: &EdgeFunction) -> Result<Scalar> {
    check_same_domain(big_f.domain(), big_g.domain(), "edge inner product")?;
    check_same_domain(g.domain(), big_f.domain(), "graph vs edge function")?;
    let mut acc = Scalar::zero(g.domain());
    for (u, v) in g.edges() {
        for (i, j) in [(u, v), (v, u)] {
            acc = acc.add(&big_f.get(i, j).mul(&big_g.get(i, j)));
        }
    }
    Ok(acc)
}

fn require_gamma(g: &WeightedGraph, op: &str) -> Result<()> {
    if !g.has_gamma() {
        return Err(Error::domain(format!(
            "{op} needs directed weights: supply gamma_uv/gamma_vu instead of w"
        )));
    }
    if let Some(&(u, v)) = g.edges_without_gamma().first() {
        return Err(Error::domain(format!(
            "{op} needs gamma on every edge; edge ({u},{v}) only carries w"
        )));
    }
    Ok(())
}

/// Difference operator `(df)(i,j) = γ_ij (f_j − f_i)` on every ordered
/// adjacent pair.
pub fn difference_d(g: &WeightedGraph, f: &NodeFunction) -> Result<EdgeFunction> {
    require_gamma(g, "difference operator d")?;
    check_len(g, f)?;
    let mut out = EdgeFunction::new(g.domain());
    for (u, v) in g.edges() {
        for (i, j) in [(u, v), (v, u)] {
            let diff = f.get(j).sub(f.get(i));
            out.set(i, j, g.gamma(i, j).mul(&diff));
        }
    }
    Ok(out)
}

/// Dual operator `(d*F)(i) = Σ_j (F_ji γ_ji − F_ij γ_ij)`, adjoint to `d`
/// under the two inner products.
pub fn codifference_dstar(g: &WeightedGraph, big_f: &EdgeFunction) -> Result<NodeFunction> {
    require_gamma(g, "codifference operator d*")?;
    check_same_domain(g.domain(), big_f.domain(), "graph vs edge function")?;
    let mut out = NodeFunction::zeros(g.domain(), g.n());
    for i in 0..g.n() {
        let mut acc = Scalar::zero(g.domain());
        for j in g.neighbors(i) {
            let incoming = big_f.get(j, i).mul(&g.gamma(j, i));
            let outgoing = big_f.get(i, j).mul(&g.gamma(i, j));
            acc = acc.add(&incoming.sub(&outgoing));
        }
        out.set(i, acc);
    }
    Ok(out)
}

/// Laplacian matrix from the symmetric weights: `Δf_i = Σ_j w_ij (f_i − f_j)`.
pub fn laplacian(g: &WeightedGraph) -> DenseMatrix {
    let n = g.n();
    let mut m = DenseMatrix::zeros(g.domain(), n, n);
    for i in 0..n {
        m.set(i, i, g.node_strength(i));
        for j in g.neighbors(i) {
            m.set(i, j, g.weight(i, j).neg());
        }
    }
    m
}

/// Pointwise Laplacian application, avoiding the matrix build.
pub fn laplacian_apply(g: &WeightedGraph, f: &NodeFunction) -> Result<NodeFunction> {
    check_len(g, f)?;
    let mut out = NodeFunction::zeros(g.domain(), g.n());
    for i in 0..g.n() {
        let mut acc = Scalar::zero(g.domain());
        for j in g.neighbors(i) {
            let diff = f.get(i).sub(f.get(j));
            acc = acc.add(&g.weight(i, j).mul(&diff));
        }
        out.set(i, acc);
    }
    Ok(out)
}

/// Matrix of `d*∘d`, built column by column; equals [`laplacian`] exactly
/// whenever gamma is present on every edge.
pub fn laplacian_from_d(g: &WeightedGraph) -> Result<DenseMatrix> {
    require_gamma(g, "d*d factorization")?;
    let n = g.n();
    let mut m = DenseMatrix::zeros(g.domain(), n, n);
    for b in 0..n {
        let col = codifference_dstar(g, &difference_d(g, &base_function(g, b)?)?)?;
        for i in 0..n {
            m.set(i, b, col.get(i).clone());
        }
    }
    Ok(m)
}

/// Residual of `d(fh)_ij − f_i dh_ij − h_i df_ij − (1/γ_ij) df_ij dh_ij`
/// per ordered edge; identically zero in exact arithmetic.
pub fn leibniz_defect_check(
    g: &WeightedGraph,
    f: &NodeFunction,
    h: &NodeFunction,
) -> Result<EdgeFunction> {
    require_gamma(g, "Leibniz defect identity")?;
    check_len(g, f)?;
    check_len(g, h)?;
    let df = difference_d(g, f)?;
    let dh = difference_d(g, h)?;
    let dfh = difference_d(g, &f.pointwise_mul(h))?;
    let mut out = EdgeFunction::new(g.domain());
    for (u, v) in g.edges() {
        for (i, j) in [(u, v), (v, u)] {
            let gamma = g.gamma(i, j);
            let inv_gamma = gamma.inv().map_err(|e| {
                Error::domain(format!("gamma on ({i},{j}) not invertible: {e}"))
            })?;
            let rhs = f
                .get(i)
                .mul(&dh.get(i, j))
                .add(&h.get(i).mul(&df.get(i, j)))
                .add(&inv_gamma.mul(&df.get(i, j)).mul(&dh.get(i, j)));
            out.set(i, j, dfh.get(i, j).sub(&rhs));
        }
    }
    Ok(out)
}
