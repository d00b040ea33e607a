//! Weighted-graph data model: symmetric weights `w`, optional directed
//! weights `gamma`, the JSON wire format, and structural queries
//! (triangles, girth, hop distances, independent sets, line graph).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarDomain};

/// Node cap for the exact independent-set search.
pub const INDEPSET_CAP: usize = 40;

/// Ordered pair key, only ever stored with `u < v` for symmetric maps.
pub type Pair = (usize, usize);

fn sorted(u: usize, v: usize) -> Pair {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A finite graph without loops or multi-edges. `w` holds the symmetric
/// weight of every edge; `gamma` (when present) holds the directed weights
/// the difference operator needs, with `w_{ij} = γ_ij² + γ_ji²` derived.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    domain: ScalarDomain,
    labels: Option<Vec<String>>,
    w: BTreeMap<Pair, Scalar>,
    gamma: BTreeMap<Pair, Scalar>, // keyed on ordered (i, j), zero entries absent
}

impl WeightedGraph {
    pub fn new(domain: ScalarDomain, n: usize) -> Self {
        WeightedGraph {
            n,
            domain,
            labels: None,
            w: BTreeMap::new(),
            gamma: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::parse(format!(
                "expected {} labels, got {}",
                self.n,
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::parse(format!("self-loop at node {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::parse(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        Ok(())
    }

    /// Insert an edge with an explicit symmetric weight.
    pub fn add_edge_w(&mut self, u: usize, v: usize, w: Scalar) -> Result<()> {
        self.check_pair(u, v)?;
        if w.domain() != self.domain {
            return Err(Error::domain(format!(
                "weight on ({u},{v}) has domain {}, graph is {}",
                w.domain(),
                self.domain
            )));
        }
        if w.is_zero() {
            return Err(Error::parse(format!(
                "zero weight on edge ({u},{v}); omit the edge instead"
            )));
        }
        self.w.insert(sorted(u, v), w);
        Ok(())
    }

    /// Insert an edge by its directed weights; the symmetric weight is
    /// derived as `γ_uv² + γ_vu²`.
    pub fn add_edge_gamma(
        &mut self,
        u: usize,
        v: usize,
        gamma_uv: Option<Scalar>,
        gamma_vu: Option<Scalar>,
    ) -> Result<()> {
        self.check_pair(u, v)?;
        let mut derived = Scalar::zero(self.domain);
        let mut any = false;
        for (g, (a, b)) in [(&gamma_uv, (u, v)), (&gamma_vu, (v, u))] {
            if let Some(g) = g {
                if g.domain() != self.domain {
                    return Err(Error::domain(format!(
                        "gamma on ({a},{b}) has domain {}, graph is {}",
                        g.domain(),
                        self.domain
                    )));
                }
                if g.is_zero() {
                    return Err(Error::parse(format!(
                        "zero gamma on ({a},{b}); omit the field instead"
                    )));
                }
                derived = derived.add(&g.mul(g));
                any = true;
            }
        }
        if !any {
            return Err(Error::parse(format!(
                "edge ({u},{v}) needs w or at least one gamma"
            )));
        }
        if derived.is_zero() {
            return Err(Error::domain(format!(
                "derived weight γ_uv² + γ_vu² vanishes on ({u},{v}); the edge would be inconsistent"
            )));
        }
        if let Some(g) = gamma_uv {
            self.gamma.insert((u, v), g);
        }
        if let Some(g) = gamma_vu {
            self.gamma.insert((v, u), g);
        }
        self.w.insert(sorted(u, v), derived);
        Ok(())
    }

    /// Symmetric weight of the unordered pair, zero when not an edge.
    pub fn weight(&self, u: usize, v: usize) -> Scalar {
        if u == v {
            return Scalar::zero(self.domain);
        }
        self.w
            .get(&sorted(u, v))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.domain))
    }

    /// Directed weight γ_uv, zero when absent.
    pub fn gamma(&self, u: usize, v: usize) -> Scalar {
        self.gamma
            .get(&(u, v))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.domain))
    }

    pub fn has_gamma(&self) -> bool {
        !self.gamma.is_empty()
    }

    /// Edges lacking any directed weight; the difference operator refuses
    /// to run while this is non-empty.
    pub fn edges_without_gamma(&self) -> Vec<Pair> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| !self.gamma.contains_key(&(u, v)) && !self.gamma.contains_key(&(v, u)))
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.w.contains_key(&sorted(u, v))
    }

    /// Unordered edges, ascending.
    pub fn edges(&self) -> Vec<Pair> {
        self.w.keys().cloned().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.w.len()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.has_edge(i, j)).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    /// Node strength `w_i = Σ_j w_ij`.
    pub fn node_strength(&self, i: usize) -> Scalar {
        let mut acc = Scalar::zero(self.domain);
        for j in self.neighbors(i) {
            acc = acc.add(&self.weight(i, j));
        }
        acc
    }

    /// Copy with one symmetric weight replaced (or removed when zero);
    /// drops gamma, which cannot stay consistent under reweighting.
    pub fn with_edge_weight(&self, u: usize, v: usize, w: Scalar) -> Result<WeightedGraph> {
        let mut g = self.clone();
        g.gamma.clear();
        if w.is_zero() {
            g.w.remove(&sorted(u, v));
            Ok(g)
        } else {
            g.add_edge_w(u, v, w)?;
            Ok(g)
        }
    }

    // ----- constructors used by tests, examples and the CLI -----

    pub fn complete(domain: ScalarDomain, n: usize, w: Scalar) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new(domain, n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge_w(u, v, w.clone())?;
            }
        }
        Ok(g)
    }

    pub fn path(domain: ScalarDomain, n: usize, w: Scalar) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new(domain, n);
        for u in 0..n.saturating_sub(1) {
            g.add_edge_w(u, u + 1, w.clone())?;
        }
        Ok(g)
    }

    pub fn cycle(domain: ScalarDomain, n: usize, w: Scalar) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::path(domain, n, w.clone())?;
        if n > 2 {
            g.add_edge_w(n - 1, 0, w)?;
        }
        Ok(g)
    }

    /// Triangle with the three weights (w01, w02, w12).
    pub fn triangle(domain: ScalarDomain, w01: Scalar, w02: Scalar, w12: Scalar) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new(domain, 3);
        g.add_edge_w(0, 1, w01)?;
        g.add_edge_w(0, 2, w02)?;
        g.add_edge_w(1, 2, w12)?;
        Ok(g)
    }

    // ----- structural queries -----

    /// Breadth-first hop distances from `src`; `None` marks unreachable.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n).map(|s| self.bfs_distances(s)).collect()
    }

    /// All node triples that are pairwise adjacent, ascending.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for &(u, v) in self.w.keys() {
            for t in v + 1..self.n {
                if self.has_edge(u, t) && self.has_edge(v, t) {
                    out.push([u, v, t]);
                }
            }
        }
        out.sort();
        out
    }

    /// Length of the shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for src in 0..self.n {
            if best == Some(3) {
                break; // nothing shorter exists in a simple graph
            }
            // BFS recording parents; a visited non-parent neighbour closes
            // a cycle through levels dist[u] + dist[v] + 1
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[src] = 0;
            let mut queue = std::collections::VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let cycle = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    pub fn structure_report(&self) -> StructureReport {
        StructureReport {
            triangles: self.triangles(),
            girth: self.girth(),
            distance: self.distance_matrix(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub triangles: Vec<[usize; 3]>,
    pub girth: Option<usize>,
    pub distance: Vec<Vec<Option<usize>>>,
}

// ----- independent sets -----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndepVariant {
    /// No two members adjacent.
    Independent,
    /// No two members adjacent or sharing a neighbour (pairwise hop
    /// distance at least 3).
    TwoPacking,
}

/// Exact maximum independent set (or two-packing) via branch and bound
/// with a greedy clique-cover bound. Among maximum sets the
/// lexicographically smallest node sequence is returned.
pub fn max_independent_set(g: &WeightedGraph, variant: IndepVariant) -> Result<Vec<usize>> {
    if g.n() > INDEPSET_CAP {
        return Err(Error::size_cap(format!(
            "exact independent-set search capped at {INDEPSET_CAP} nodes (got {}); use the greedy fallback flag",
            g.n()
        )));
    }
    let adj = conflict_matrix(g, variant);
    Ok(exact_mis(&adj))
}

/// Greedy fallback for graphs above the exact cap: repeatedly take the
/// lowest-degree (then lowest-index) compatible node.
pub fn greedy_independent_set(g: &WeightedGraph, variant: IndepVariant) -> Vec<usize> {
    let adj = conflict_matrix(g, variant);
    let n = adj.len();
    let mut alive: Vec<bool> = vec![true; n];
    let mut chosen = Vec::new();
    loop {
        let mut best: Option<(usize, usize)> = None; // (degree, node)
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let deg = (0..n).filter(|&u| alive[u] && adj[v][u]).count();
            if best.map_or(true, |(bd, _)| deg < bd) {
                best = Some((deg, v));
            }
        }
        let Some((_, v)) = best else { break };
        chosen.push(v);
        alive[v] = false;
        for u in 0..n {
            if adj[v][u] {
                alive[u] = false;
            }
        }
    }
    chosen.sort();
    chosen
}

fn conflict_matrix(g: &WeightedGraph, variant: IndepVariant) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.w.keys() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    if variant == IndepVariant::TwoPacking {
        for c in 0..n {
            let nb = g.neighbors(c);
            for (a, &u) in nb.iter().enumerate() {
                for &v in &nb[a + 1..] {
                    adj[u][v] = true;
                    adj[v][u] = true;
                }
            }
        }
    }
    adj
}

fn exact_mis(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    // include-first DFS in ascending node order visits candidate sets in
    // lexicographic order, so the first set of a new maximum size is the
    // lexicographically smallest of that size
    fn clique_cover_bound(adj: &[Vec<bool>], rest: &[usize]) -> usize {
        let mut remaining: Vec<usize> = rest.to_vec();
        let mut cliques = 0;
        while let Some(&seed) = remaining.first() {
            let mut clique = vec![seed];
            remaining.retain(|&v| v != seed);
            let mut i = 0;
            while i < remaining.len() {
                let v = remaining[i];
                if clique.iter().all(|&c| adj[c][v]) {
                    clique.push(v);
                    remaining.remove(i);
                } else {
                    i += 1;
                }
            }
            cliques += 1;
        }
        cliques
    }
    fn dfs(
        adj: &[Vec<bool>],
        candidates: Vec<usize>,
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if candidates.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        if current.len() + clique_cover_bound(adj, &candidates) <= best.len() {
            return;
        }
        let v = candidates[0];
        // include v
        let filtered: Vec<usize> = candidates[1..]
            .iter()
            .copied()
            .filter(|&u| !adj[v][u])
            .collect();
        current.push(v);
        dfs(adj, filtered, current, best);
        current.pop();
        // exclude v
        dfs(adj, candidates[1..].to_vec(), current, best);
    }
    dfs(adj, (0..n).collect(), &mut current, &mut best);
    best
}

// ----- line graph -----

#[derive(Debug, Clone)]
pub struct LineGraphResult {
    pub graph: WeightedGraph,
    /// Unordered input edge each new node stands for.
    pub origin: Vec<Pair>,
}

/// Line graph with harmonic-mean-style weights
/// `w' = 2 w_e w_f / (w_e + w_f)` on adjacent edge pairs.
pub fn line_graph(g: &WeightedGraph) -> Result<LineGraphResult> {
    let edges = g.edges();
    let mut lg = WeightedGraph::new(g.domain(), edges.len());
    let two = Scalar::from_i64(g.domain(), 2);
    for (a, &(u1, v1)) in edges.iter().enumerate() {
        for (offset, &(u2, v2)) in edges[a + 1..].iter().enumerate() {
            let b = a + 1 + offset;
            let shares = u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2;
            if !shares {
                continue;
            }
            let we = g.weight(u1, v1);
            let wf = g.weight(u2, v2);
            let denom = we.add(&wf);
            let weight = two.mul(&we).mul(&wf).div(&denom).map_err(|e| {
                Error::domain(format!(
                    "line-graph weight for edge pair ({u1},{v1})~({u2},{v2}): {e}"
                ))
            })?;
            if weight.is_zero() {
                return Err(Error::domain(format!(
                    "line-graph weight vanishes on edge pair ({u1},{v1})~({u2},{v2})"
                )));
            }
            lg.add_edge_w(a, b, weight)?;
        }
    }
    Ok(LineGraphResult { graph: lg, origin: edges })
}

// ----- JSON wire format -----

/// Parse the graph JSON document described in the crate docs:
/// `{"scalar": {...}, "n": int, "labels"?: [...], "edges": [{"u","v", "w" | "gamma_uv"/"gamma_vu"}]}`.
pub fn parse_graph(bytes: &[u8]) -> Result<WeightedGraph> {
    let doc: Value =
        serde_json::from_slice(bytes).map_err(|e| Error::parse(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::parse("graph document must be a JSON object"))?;
    let scalar = obj
        .get("scalar")
        .ok_or_else(|| Error::parse("missing \"scalar\" field"))?;
    let domain: ScalarDomain = serde_json::from_value(scalar.clone())
        .map_err(|e| Error::parse(format!("scalar: {e}")))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("missing or non-integer \"n\""))? as usize;
    let mut g = WeightedGraph::new(domain, n);
    if let Some(labels) = obj.get("labels") {
        let labels: Vec<String> = serde_json::from_value(labels.clone())
            .map_err(|e| Error::parse(format!("labels: {e}")))?;
        g.set_labels(labels)?;
    }
    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("missing \"edges\" array"))?;
    for (idx, e) in edges.iter().enumerate() {
        let at = |msg: String| Error::parse(format!("edges[{idx}]: {msg}"));
        let eo = e
            .as_object()
            .ok_or_else(|| at("edge entry must be an object".into()))?;
        let u = eo
            .get("u")
            .and_then(Value::as_u64)
            .ok_or_else(|| at("missing integer \"u\"".into()))? as usize;
        let v = eo
            .get("v")
            .and_then(Value::as_u64)
            .ok_or_else(|| at("missing integer \"v\"".into()))? as usize;
        let w = eo.get("w");
        let guv = eo.get("gamma_uv");
        let gvu = eo.get("gamma_vu");
        if g.has_edge(u, v) {
            return Err(at(format!("duplicate edge ({u},{v})")));
        }
        match (w, guv.is_some() || gvu.is_some()) {
            (Some(_), true) => {
                return Err(at(format!(
                    "edge ({u},{v}) must carry either w or the gamma pair, not both"
                )))
            }
            (Some(w), false) => {
                let w = Scalar::from_json(domain, w).map_err(|e| at(e.to_string()))?;
                g.add_edge_w(u, v, w).map_err(|e| at(e.to_string()))?;
            }
            (None, true) => {
                let guv = guv
                    .map(|x| Scalar::from_json(domain, x))
                    .transpose()
                    .map_err(|e| at(e.to_string()))?;
                let gvu = gvu
                    .map(|x| Scalar::from_json(domain, x))
                    .transpose()
                    .map_err(|e| at(e.to_string()))?;
                g.add_edge_gamma(u, v, guv, gvu)
                    .map_err(|e| at(e.to_string()))?;
            }
            (None, false) => {
                return Err(at(format!("edge ({u},{v}) needs w or a gamma pair")))
            }
        }
    }
    Ok(g)
}

/// Canonical serialization, the inverse of [`parse_graph`] on exact
/// domains. Edges are emitted ascending.
pub fn serialize_graph(g: &WeightedGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let mut e = serde_json::Map::new();
            e.insert("u".into(), json!(u));
            e.insert("v".into(), json!(v));
            let guv = g.gamma(u, v);
            let gvu = g.gamma(v, u);
            if guv.is_zero() && gvu.is_zero() {
                e.insert("w".into(), g.weight(u, v).to_json());
            } else {
                if !guv.is_zero() {
                    e.insert("gamma_uv".into(), guv.to_json());
                }
                if !gvu.is_zero() {
                    e.insert("gamma_vu".into(), gvu.to_json());
                }
            }
            Value::Object(e)
        })
        .collect();
    let mut out = serde_json::Map::new();
    out.insert("scalar".into(), serde_json::to_value(g.domain()).unwrap());
    out.insert("n".into(), json!(g.n()));
    if let Some(labels) = g.labels() {
        out.insert("labels".into(), json!(labels));
    }
    out.insert("edges".into(), Value::Array(edges));
    Value::Object(out)
}
