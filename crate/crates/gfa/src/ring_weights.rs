//! Zero-divisor graphs of `Z_n` (Beck's construction), qualification of
//! moduli, and the search for Jacobi-admissible zero-divisor weighings of
//! a user graph.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Pair, WeightedGraph};
use crate::lie::{jacobi_admissibility, JacobiMode};
use crate::scalar::{factorize, radical, Scalar, ScalarDomain};

/// Modulus cap for the zero-divisor graph construction.
pub const ZDG_MODULUS_CAP: u64 = 1_000_000;

/// Edge-count cap for the exhaustive weighing search.
pub const WEIGHING_EDGE_CAP: usize = 16;

#[derive(Debug, Clone)]
pub struct ZdgReport {
    pub modulus: u64,
    /// Nonzero zero-divisors, ascending.
    pub vertices: Vec<u64>,
    /// Pairs `x < y` with `x·y ≡ 0 (mod n)`, ascending.
    pub edges: Vec<(u64, u64)>,
    pub girth: Option<usize>,
    pub all_non_nilpotent: bool,
}

/// Beck's zero-divisor graph of `Z_n`: vertices are the nonzero zero
/// divisors, edges join pairs with vanishing product.
pub fn zero_divisor_graph(n: u64) -> Result<ZdgReport> {
    if !(2..=ZDG_MODULUS_CAP).contains(&n) {
        return Err(Error::domain(format!(
            "zero-divisor graph modulus must lie in 2..={ZDG_MODULUS_CAP}, got {n}"
        )));
    }
    let vertices: Vec<u64> = (1..n).filter(|&x| num::integer::gcd(x, n) > 1).collect();
    let index: BTreeMap<u64, usize> = vertices.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut edges = Vec::new();
    let mut adj = vec![Vec::new(); vertices.len()];
    for &x in &vertices {
        // y must be a multiple of n / gcd(x, n)
        let step = n / num::integer::gcd(x, n);
        let mut y = step;
        while y < n {
            if y > x {
                edges.push((x, y));
                let (a, b) = (index[&x], index[&y]);
                adj[a].push(b);
                adj[b].push(a);
            }
            y += step;
        }
    }
    edges.sort_unstable();
    let rad = radical(n);
    let all_non_nilpotent = vertices.iter().all(|&x| x % rad != 0);
    Ok(ZdgReport {
        modulus: n,
        vertices,
        edges,
        girth: girth_of_adjacency(&adj),
        all_non_nilpotent,
    })
}

/// Shortest cycle length over an adjacency list: one BFS per start node
/// with early exit once a triangle is seen.
fn girth_of_adjacency(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for src in 0..n {
        if best == Some(3) {
            break;
        }
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
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

#[derive(Debug, Clone)]
pub struct ModulusReport {
    pub modulus: u64,
    pub qualifies: bool,
    pub factorization: Vec<(u64, u32)>,
    /// Number of distinct primes.
    pub c: usize,
}

/// A modulus qualifies when it has at least three distinct prime factors.
pub fn modulus_qualifies(n: u64) -> Result<ModulusReport> {
    if n < 2 {
        return Err(Error::domain(format!("modulus must be >= 2, got {n}")));
    }
    let factorization = factorize(n);
    let c = factorization.len();
    Ok(ModulusReport {
        modulus: n,
        qualifies: c >= 3,
        factorization,
        c,
    })
}

/// Smallest modulus with at least three distinct prime factors, scanning
/// upward from 2.
pub fn smallest_qualifying_modulus() -> u64 {
    (2..).find(|&n| factorize(n).len() >= 3).unwrap()
}

#[derive(Debug, Clone)]
pub struct WeighingSolution {
    pub modulus: u64,
    /// Residue per edge, keyed by the sorted edge list of the input graph.
    pub assignment: BTreeMap<Pair, u64>,
    /// False when the exploratory nilpotent pool was enabled and used.
    pub conforming: bool,
}

impl WeighingSolution {
    /// Materialize the weighted graph this assignment describes.
    pub fn to_graph(&self, topology: &WeightedGraph) -> Result<WeightedGraph> {
        let domain = ScalarDomain::zmod(self.modulus)?;
        let mut g = WeightedGraph::new(domain, topology.n());
        for (&(u, v), &w) in &self.assignment {
            g.add_edge_w(u, v, Scalar::zmod(w, self.modulus))?;
        }
        Ok(g)
    }
}

/// Exhaustive backtracking search for edge weighings of `topology` by
/// zero divisors of `Z_n` that satisfy the Jacobi identity on every node
/// triple. Candidates are non-nilpotent unless `include_nilpotent` is
/// set. Solutions come in ascending lexicographic order of the residue
/// tuple over the sorted edge list and are re-verified through
/// [`jacobi_admissibility`] before being returned.
pub fn weighing_search(
    topology: &WeightedGraph,
    n: u64,
    limit: Option<usize>,
    include_nilpotent: bool,
) -> Result<Vec<WeighingSolution>> {
    weighing_search_threaded(topology, n, limit, include_nilpotent, 1)
}

pub fn weighing_search_threaded(
    topology: &WeightedGraph,
    n: u64,
    limit: Option<usize>,
    include_nilpotent: bool,
    threads: usize,
) -> Result<Vec<WeighingSolution>> {
    ScalarDomain::zmod(n)?;
    let edges = topology.edges();
    if edges.len() > WEIGHING_EDGE_CAP {
        return Err(Error::size_cap(format!(
            "exhaustive weighing search capped at {WEIGHING_EDGE_CAP} edges (got {}); use the --sample flag for random search",
            edges.len()
        )));
    }
    let rad = radical(n);
    let candidates: Vec<u64> = (1..n)
        .filter(|&x| num::integer::gcd(x, n) > 1)
        .filter(|&x| include_nilpotent || x % rad != 0)
        .collect();
    if candidates.is_empty() || edges.is_empty() {
        return Ok(Vec::new());
    }

    // triples of nodes with at least one edge among the pairs, and the
    // position in `edges` of each present pair; a triple is checkable once
    // its last present edge is assigned
    let edge_pos: BTreeMap<Pair, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut triples_at: Vec<Vec<[Option<usize>; 3]>> = vec![Vec::new(); edges.len()];
    let nn = topology.n();
    for a in 0..nn {
        for b in a + 1..nn {
            for c in b + 1..nn {
                // pair order: (a,b), (a,c), (b,c)
                let pos = [
                    edge_pos.get(&(a, b)).copied(),
                    edge_pos.get(&(a, c)).copied(),
                    edge_pos.get(&(b, c)).copied(),
                ];
                if let Some(last) = pos.iter().flatten().max() {
                    triples_at[*last].push(pos);
                }
            }
        }
    }

    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let submod = |a: u64, b: u64| (a + n - b) % n;
    // Jacobi congruences for weights (wab, wac, wbc), absent edges = 0:
    //   wbc (wab − wac) ≡ 0, wac (wbc − wab) ≡ 0, wab (wac − wbc) ≡ 0
    let triple_ok = |assign: &[u64], pos: &[Option<usize>; 3]| {
        let wab = pos[0].map_or(0, |k| assign[k]);
        let wac = pos[1].map_or(0, |k| assign[k]);
        let wbc = pos[2].map_or(0, |k| assign[k]);
        mulmod(wbc, submod(wab, wac)) == 0
            && mulmod(wac, submod(wbc, wab)) == 0
            && mulmod(wab, submod(wac, wbc)) == 0
    };

    let search_from = |first: u64| -> Vec<Vec<u64>> {
        let mut found = Vec::new();
        let mut assign = vec![0u64; edges.len()];
        fn rec(
            k: usize,
            edges_len: usize,
            candidates: &[u64],
            triples_at: &[Vec<[Option<usize>; 3]>],
            assign: &mut Vec<u64>,
            ok: &dyn Fn(&[u64], &[Option<usize>; 3]) -> bool,
            found: &mut Vec<Vec<u64>>,
        ) {
            if k == edges_len {
                found.push(assign.clone());
                return;
            }
            for &cand in candidates {
                assign[k] = cand;
                if triples_at[k].iter().all(|pos| ok(assign, pos)) {
                    rec(k + 1, edges_len, candidates, triples_at, assign, ok, found);
                }
            }
        }
        assign[0] = first;
        if triples_at[0].iter().all(|pos| triple_ok(&assign, pos)) {
            rec(1, edges.len(), &candidates, &triples_at, &mut assign, &triple_ok, &mut found);
        }
        found
    };

    let mut tuples: Vec<Vec<u64>> = Vec::new();
    if threads <= 1 || candidates.len() < 2 {
        for &first in &candidates {
            tuples.extend(search_from(first));
            if limit.is_some_and(|l| tuples.len() >= l) {
                break;
            }
        }
    } else {
        // partition on the first edge's candidate; merge preserves order
        let results: Vec<Vec<Vec<u64>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = candidates
                .chunks(candidates.len().div_ceil(threads))
                .map(|part| scope.spawn(move || part.iter().flat_map(|&f| search_from(f)).collect()))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for r in results {
            tuples.extend(r);
        }
    }
    if let Some(l) = limit {
        tuples.truncate(l);
    }

    let mut out = Vec::new();
    for tuple in tuples {
        let assignment: BTreeMap<Pair, u64> =
            edges.iter().copied().zip(tuple.iter().copied()).collect();
        let sol = WeighingSolution {
            modulus: n,
            assignment,
            conforming: tuple.iter().all(|&x| x % rad != 0),
        };
        // re-verify through the full admissibility machinery
        let g = sol.to_graph(topology)?;
        let report = jacobi_admissibility(&g, JacobiMode::Full)?;
        if !report.admissible {
            return Err(Error::domain(format!(
                "internal inconsistency: pruned assignment {:?} failed full re-verification",
                sol.assignment
            )));
        }
        out.push(sol);
    }
    Ok(out)
}

/// Random-assignment fallback for topologies above the exhaustive cap:
/// draws `attempts` residue tuples from a seeded generator and keeps the
/// distinct ones that satisfy all Jacobi congruences.
pub fn weighing_sample(
    topology: &WeightedGraph,
    n: u64,
    attempts: usize,
    seed: u64,
    include_nilpotent: bool,
) -> Result<Vec<WeighingSolution>> {
    ScalarDomain::zmod(n)?;
    let edges = topology.edges();
    let rad = radical(n);
    let candidates: Vec<u64> = (1..n)
        .filter(|&x| num::integer::gcd(x, n) > 1)
        .filter(|&x| include_nilpotent || x % rad != 0)
        .collect();
    if candidates.is_empty() || edges.is_empty() {
        return Ok(Vec::new());
    }
    // xorshift64*; deterministic for a fixed seed
    let mut state = seed.wrapping_mul(2685821657736338717).max(1);
    let mut next = move || {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        state = state.wrapping_mul(2685821657736338717);
        state
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..attempts {
        let tuple: Vec<u64> = (0..edges.len())
            .map(|_| candidates[(next() % candidates.len() as u64) as usize])
            .collect();
        if !seen.insert(tuple.clone()) {
            continue;
        }
        let assignment: BTreeMap<Pair, u64> =
            edges.iter().copied().zip(tuple.iter().copied()).collect();
        let sol = WeighingSolution {
            modulus: n,
            assignment,
            conforming: tuple.iter().all(|&x| x % rad != 0),
        };
        let g = sol.to_graph(topology)?;
        if jacobi_admissibility(&g, JacobiMode::Full)?.admissible {
            out.push(sol);
        }
    }
    out.sort_by(|a, b| a.assignment.values().cmp(b.assignment.values()));
    Ok(out)
}
