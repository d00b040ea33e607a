//! Subcommand dispatcher behind the `gfa` binary.
//!
//! Contract: JSON report on stdout (pretty behind `--pretty`), one-line
//! machine-parsable error JSON on stderr, exit codes 0 success / 2 parse
//! or schema error / 3 domain error / 4 failed `--assert` / 5 size cap.
//! Output is byte-deterministic for fixed inputs.

use clap::{Args, Parser, Subcommand};
use nalgebra::Complex;
use serde_json::{json, Value};

use crate::bialgebra::{cobracket, manin_bracket, ybe_check, DualNodeFunction};
use crate::calculus::{laplacian, laplacian_from_d, NodeFunction};
use crate::error::{Error, Result};
use crate::fokker_planck::{
    constant_weight_analysis, fp_matrix, stationarity_and_stability, weight_scan, Delta2Coeff,
    FpCoefficients,
};
use crate::graph::{
    greedy_independent_set, line_graph, max_independent_set, parse_graph, serialize_graph,
    IndepVariant, WeightedGraph,
};
use crate::lie::{bracket, bracket_laplacian_form, center, killing_form, JacobiMode};
use crate::report::{agrees_rel, Report};
use crate::ring_weights::{modulus_qualifies, weighing_sample, weighing_search_threaded, zero_divisor_graph};
use crate::scalar::{Scalar, ScalarDomain};
use crate::schrodinger::{
    dirichlet_check, formal_energies, formal_matrix_gap, neumann_relation, plane_wave,
    polarization_condition, regular_uniform_energy, spectral_solve, neighbor_norm_sq,
    NeumannOutcome, QuantumParams, WaveCoefficients,
};

type C64 = Complex<f64>;

#[derive(Parser, Debug)]
#[command(name = "gfa", version, about = "Lie algebra and bialgebra toolkit for functions on weighted graphs")]
pub struct Cli {
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Worker threads for jacobi / zdg-weights / scan (GFA_THREADS is the
    /// fallback; default 1).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi admissibility over all (or restricted) node triples.
    Jacobi(JacobiArgs),
    /// Bracket of two node functions.
    Bracket(BracketArgs),
    /// Laplacian matrix, with the d*d factorization check when gamma is present.
    Laplacian(GraphOnlyArgs),
    /// Killing form, determinant, and the nondegeneracy juxtaposition.
    Killing(GraphOnlyArgs),
    /// Basis of the center from the stacked null space.
    Center(GraphOnlyArgs),
    /// Co-bracket of a node function.
    Cobracket(CobracketArgs),
    /// Classical Yang-Baxter residual for a basis r-matrix.
    Ybe(YbeArgs),
    /// Manin-double bracket of x and a dual element.
    Manin(ManinArgs),
    /// Zero-divisor graph of Z_n.
    Zdg(ZdgArgs),
    /// Jacobi-admissible zero-divisor weighings of a graph.
    #[command(name = "zdg-weights")]
    ZdgWeights(ZdgWeightsArgs),
    /// Free-particle Schrödinger analysis.
    #[command(name = "schr", alias = "schrodinger")]
    Schr(SchrArgs),
    /// Fokker-Planck stationarity and stability.
    Fpe(FpeArgs),
    /// Line graph with harmonic-mean weights.
    Linegraph(GraphOnlyArgs),
    /// Maximum independent set and two-packing, side by side.
    Indepset(IndepsetArgs),
}

#[derive(Args, Debug)]
pub struct GraphOnlyArgs {
    /// Graph JSON document.
    pub graph: std::path::PathBuf,
}

#[derive(Args, Debug)]
pub struct JacobiArgs {
    pub graph: std::path::PathBuf,
    /// full: every triple; restricted: pairwise distances 1 or > 2 only.
    #[arg(long, default_value = "full")]
    pub mode: String,
    /// Exit 4 when the identity fails.
    #[arg(long)]
    pub assert: bool,
}

#[derive(Args, Debug)]
pub struct BracketArgs {
    pub graph: std::path::PathBuf,
    /// Left node function JSON.
    #[arg(long)]
    pub left: std::path::PathBuf,
    /// Right node function JSON.
    #[arg(long)]
    pub right: std::path::PathBuf,
}

#[derive(Args, Debug)]
pub struct CobracketArgs {
    pub graph: std::path::PathBuf,
    /// Node function JSON.
    #[arg(long = "h")]
    pub function: std::path::PathBuf,
}

#[derive(Args, Debug)]
pub struct YbeArgs {
    pub graph: std::path::PathBuf,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    /// Exit 4 when the residual is nonzero.
    #[arg(long)]
    pub assert: bool,
}

#[derive(Args, Debug)]
pub struct ManinArgs {
    pub graph: std::path::PathBuf,
    /// Node function JSON for x ∈ g.
    #[arg(long)]
    pub x: std::path::PathBuf,
    /// Node function JSON for ξ ∈ g* (dual coefficients).
    #[arg(long)]
    pub xi: std::path::PathBuf,
}

#[derive(Args, Debug)]
pub struct ZdgArgs {
    pub modulus: u64,
}

#[derive(Args, Debug)]
pub struct ZdgWeightsArgs {
    pub graph: std::path::PathBuf,
    #[arg(long)]
    pub modulus: u64,
    /// Stop after this many solutions.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Allow nilpotent residues (solutions are marked non-conforming).
    #[arg(long)]
    pub include_nilpotent: bool,
    /// Random sampling fallback: number of attempts (for topologies above
    /// the exhaustive cap).
    #[arg(long)]
    pub sample: Option<usize>,
    /// Seed for --sample.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SchrArgs {
    pub graph: std::path::PathBuf,
    #[arg(long)]
    pub hbar: f64,
    #[arg(long)]
    pub mass: f64,
    /// Evolve to this time and report Ψ(t).
    #[arg(long)]
    pub t: Option<f64>,
    /// Initial state as a complex node function JSON; defaults to the
    /// constant ground state.
    #[arg(long)]
    pub psi0: Option<std::path::PathBuf>,
    /// Run the boundary-condition checks at this node.
    #[arg(long)]
    pub check_boundary: Option<usize>,
    /// Coefficients {"A": [[re,im],...], "B": [...]} for the boundary check.
    #[arg(long)]
    pub coeffs: Option<std::path::PathBuf>,
    /// Include eigenmodes in the report.
    #[arg(long)]
    pub modes: bool,
}

#[derive(Args, Debug)]
pub struct FpeArgs {
    pub graph: std::path::PathBuf,
    /// Drift coefficients a (node function JSON).
    #[arg(long)]
    pub drift: std::path::PathBuf,
    /// Diffusion coefficients b (node function JSON).
    #[arg(long)]
    pub diffusion: std::path::PathBuf,
    /// Coefficient on Δ²: 1/8 (printed convention, default) or 1/4.
    #[arg(long, default_value = "1/8")]
    pub delta2_coeff: String,
    /// det-scan along one edge weight: U,V LO HI STEPS.
    #[arg(long, num_args = 4, value_names = ["EDGE", "LO", "HI", "STEPS"])]
    pub scan: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct IndepsetArgs {
    pub graph: std::path::PathBuf,
    /// Greedy fallback for graphs above the exact cap.
    #[arg(long)]
    pub greedy: bool,
}

/// Assertion failures surface as exit 4 after the report is printed.
struct AssertionFailed(String);

fn read_file(path: &std::path::Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &std::path::Path) -> Result<WeightedGraph> {
    parse_graph(&read_file(path)?)
}

fn read_node_function(path: &std::path::Path, domain: ScalarDomain) -> Result<NodeFunction> {
    let bytes = read_file(path)?;
    let v: Value = serde_json::from_slice(&bytes)
        .map_err(|e| Error::parse(format!("{}: invalid JSON: {e}", path.display())))?;
    NodeFunction::from_json(domain, &v)
}

fn read_complex_vector(path: &std::path::Path, n: usize) -> Result<Vec<C64>> {
    let f = read_node_function(path, ScalarDomain::Complex)?;
    if f.len() != n {
        return Err(Error::domain(format!(
            "{}: expected {n} values, got {}",
            path.display(),
            f.len()
        )));
    }
    Ok(f.values().iter().map(|s| s.to_c64().unwrap()).collect())
}

fn node_fn_json(f: &NodeFunction) -> Value {
    f.to_json()
}

fn c64_json(z: &C64) -> Value {
    json!([z.re, z.im])
}

fn c64_vec_json(v: &[C64]) -> Value {
    Value::Array(v.iter().map(c64_json).collect())
}

fn f64_vec_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| json!(x)).collect())
}

fn threads_from(cli_threads: Option<usize>) -> usize {
    cli_threads
        .or_else(|| {
            std::env::var("GFA_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(1)
        .max(1)
}

/// Entry point used by the binary: returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version on stdout with code 0
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprintln!(
                "{}",
                json!({"error": {"code": 2, "kind": "usage", "message": e.to_string()}})
            );
            return 2;
        }
    };
    let pretty = cli.pretty;
    let threads = threads_from(cli.threads);
    match dispatch(cli.command, threads) {
        Ok((report, assertion)) => {
            println!("{}", report.render(pretty));
            match assertion {
                Some(AssertionFailed(msg)) => {
                    eprintln!(
                        "{}",
                        json!({"error": {"code": 4, "kind": "assertion", "message": msg}})
                    );
                    4
                }
                None => 0,
            }
        }
        Err(err) => {
            let (code, kind) = match &err {
                Error::Parse(_) => (2, "parse"),
                Error::Domain(_) => (3, "domain"),
                Error::SizeCap(_) => (5, "size-cap"),
            };
            eprintln!(
                "{}",
                json!({"error": {"code": code, "kind": kind, "message": err.to_string()}})
            );
            code
        }
    }
}

fn dispatch(command: Command, threads: usize) -> Result<(Report, Option<AssertionFailed>)> {
    match command {
        Command::Jacobi(args) => cmd_jacobi(args, threads),
        Command::Bracket(args) => cmd_bracket(args).map(|r| (r, None)),
        Command::Laplacian(args) => cmd_laplacian(args).map(|r| (r, None)),
        Command::Killing(args) => cmd_killing(args).map(|r| (r, None)),
        Command::Center(args) => cmd_center(args).map(|r| (r, None)),
        Command::Cobracket(args) => cmd_cobracket(args).map(|r| (r, None)),
        Command::Ybe(args) => cmd_ybe(args),
        Command::Manin(args) => cmd_manin(args).map(|r| (r, None)),
        Command::Zdg(args) => cmd_zdg(args).map(|r| (r, None)),
        Command::ZdgWeights(args) => cmd_zdg_weights(args, threads).map(|r| (r, None)),
        Command::Schr(args) => cmd_schr(args).map(|r| (r, None)),
        Command::Fpe(args) => cmd_fpe(args).map(|r| (r, None)),
        Command::Linegraph(args) => cmd_linegraph(args).map(|r| (r, None)),
        Command::Indepset(args) => cmd_indepset(args).map(|r| (r, None)),
    }
}

fn cmd_jacobi(args: JacobiArgs, threads: usize) -> Result<(Report, Option<AssertionFailed>)> {
    let g = read_graph(&args.graph)?;
    let mode = match args.mode.as_str() {
        "full" => JacobiMode::Full,
        "restricted" => JacobiMode::Restricted,
        other => return Err(Error::parse(format!("unknown jacobi mode {other:?}"))),
    };
    let report = crate::lie::jacobi_admissibility_threaded(&g, mode, threads)?;
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|(t, jac)| {
            json!({
                "triple": [t[0], t[1], t[2]],
                "jacobiator": jac.values().iter().map(Scalar::to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut out = Report::new(
        "jacobi",
        json!({
            "admissible": report.admissible,
            "mode": report.mode.as_str(),
            "tolerance": report.tolerance,
            "violations": violations,
        }),
    );
    if mode == JacobiMode::Restricted {
        out.warn(
            "restricted mode keeps triples whose pairwise hop distances are all 1 or greater than 2; \
             distance-2 pairs are excluded by convention",
        );
    }
    let assertion = (args.assert && !report.admissible).then(|| {
        AssertionFailed(format!(
            "jacobi identity fails on {} triple(s)",
            report.violations.len()
        ))
    });
    Ok((out, assertion))
}

fn cmd_bracket(args: BracketArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let f = read_node_function(&args.left, g.domain())?;
    let h = read_node_function(&args.right, g.domain())?;
    let result = bracket(&g, &f, &h)?;
    let alt = bracket_laplacian_form(&g, &f, &h)?;
    let consistent = if g.domain().is_exact() {
        result == alt
    } else {
        result.sub(&alt).max_magnitude() <= 1e-9 * (1.0 + result.max_magnitude())
    };
    Ok(Report::new(
        "bracket",
        json!({
            "result": node_fn_json(&result),
            "laplacian_form_consistent": consistent,
        }),
    ))
}

fn cmd_laplacian(args: GraphOnlyArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let lap = laplacian(&g);
    let dstar_d_matches = if g.has_gamma() && g.edges_without_gamma().is_empty() {
        let ldd = laplacian_from_d(&g)?;
        Some(if g.domain().is_exact() {
            ldd == lap
        } else {
            ldd.sub(&lap).max_magnitude() <= 1e-12 * (1.0 + lap.max_magnitude())
        })
    } else {
        None
    };
    Ok(Report::new(
        "laplacian",
        json!({
            "matrix": lap.to_json(),
            "symmetric": lap.is_symmetric(),
            "dstar_d_matches": dstar_d_matches,
        }),
    ))
}

fn cmd_killing(args: GraphOnlyArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let k = killing_form(&g)?;
    let mut out = Report::new(
        "killing",
        json!({
            "killing": k.matrix.to_json(),
            "determinant": k.determinant.to_json(),
            "nondegenerate": k.nondegenerate,
        }),
    );
    out.compare(
        "killing.nondegeneracy-claim",
        k.determinant.to_json(),
        json!("nondegenerate for real nonnegative or non-nilpotent weights (printed claim)"),
        None,
    );
    out.warn(
        "the printed nondegeneracy claim conflicts with computed determinants (already zero on uniform K2/K3); \
         only the computed determinant is asserted",
    );
    Ok(out)
}

fn cmd_center(args: GraphOnlyArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let basis = center(&g)?;
    let mut out = Report::new(
        "center",
        json!({
            "dimension": basis.len(),
            "basis": basis.iter().map(node_fn_json).collect::<Vec<_>>(),
        }),
    );
    if !g.is_connected() {
        out.warn(
            "graph is disconnected: the trivial-center argument assumes connectivity; \
             the basis above is exactly the computed null space",
        );
    }
    Ok(out)
}

fn cmd_cobracket(args: CobracketArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let h = read_node_function(&args.function, g.domain())?;
    let co = cobracket(&g, &h)?;
    Ok(Report::new("cobracket", co.to_json()))
}

fn cmd_ybe(args: YbeArgs) -> Result<(Report, Option<AssertionFailed>)> {
    let g = read_graph(&args.graph)?;
    let res = ybe_check(&g, args.a, args.b)?;
    let report = Report::new(
        "ybe",
        json!({
            "a": args.a,
            "b": args.b,
            "zero": res.zero,
            "nonzero_entries": res.nonzero_entries,
            "max_magnitude": res.max_magnitude,
        }),
    );
    let assertion = (args.assert && !res.zero).then(|| {
        AssertionFailed(format!(
            "classical Yang-Baxter residual has {} nonzero entries",
            res.nonzero_entries
        ))
    });
    Ok((report, assertion))
}

fn cmd_manin(args: ManinArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let x = read_node_function(&args.x, g.domain())?;
    let xi = DualNodeFunction::new(read_node_function(&args.xi, g.domain())?);
    let (g_part, g_star_part) = manin_bracket(&g, &x, &xi)?;
    Ok(Report::new(
        "manin",
        json!({
            "g_component": node_fn_json(&g_part),
            "g_star_component": node_fn_json(g_star_part.coefficients()),
        }),
    ))
}

fn cmd_zdg(args: ZdgArgs) -> Result<Report> {
    let z = zero_divisor_graph(args.modulus)?;
    let q = modulus_qualifies(args.modulus)?;
    Ok(Report::new(
        "zdg",
        json!({
            "modulus": z.modulus,
            "vertices": z.vertices,
            "edges": z.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "girth": z.girth,
            "all_non_nilpotent": z.all_non_nilpotent,
            "qualifies": q.qualifies,
            "distinct_primes": q.c,
            "factorization": q
                .factorization
                .iter()
                .map(|&(p, e)| json!([p, e]))
                .collect::<Vec<_>>(),
        }),
    ))
}

fn cmd_zdg_weights(args: ZdgWeightsArgs, threads: usize) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let (solutions, method) = match args.sample {
        Some(attempts) => (
            weighing_sample(&g, args.modulus, attempts, args.seed, args.include_nilpotent)?,
            "sample",
        ),
        None => (
            weighing_search_threaded(
                &g,
                args.modulus,
                args.limit,
                args.include_nilpotent,
                threads,
            )?,
            "exhaustive",
        ),
    };
    let sols: Vec<Value> = solutions
        .iter()
        .map(|s| {
            json!({
                "assignment": s
                    .assignment
                    .iter()
                    .map(|(&(u, v), &w)| json!({"u": u, "v": v, "w": w}))
                    .collect::<Vec<_>>(),
                "conforming": s.conforming,
            })
        })
        .collect();
    Ok(Report::new(
        "zdg-weights",
        json!({
            "modulus": args.modulus,
            "method": method,
            "count": sols.len(),
            "solutions": sols,
        }),
    ))
}

fn cmd_schr(args: SchrArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let params = QuantumParams::from_graph(&g, args.hbar, args.mass)?;
    // read every input file before computing
    let psi0 = args
        .psi0
        .as_deref()
        .map(|p| read_complex_vector(p, g.n()))
        .transpose()?;
    let coeffs = args
        .coeffs
        .as_deref()
        .map(|p| -> Result<WaveCoefficients> {
            let bytes = read_file(p)?;
            let v: Value = serde_json::from_slice(&bytes)
                .map_err(|e| Error::parse(format!("coeffs: invalid JSON: {e}")))?;
            let get = |key: &str| -> Result<Vec<C64>> {
                v.get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::parse(format!("coeffs JSON needs array {key:?}")))?
                    .iter()
                    .map(|x| {
                        Scalar::from_json(ScalarDomain::Complex, x).map(|s| s.to_c64().unwrap())
                    })
                    .collect()
            };
            WaveCoefficients::new(get("A")?, get("B")?)
        })
        .transpose()?;

    let sol = spectral_solve(&g, &params)?;
    let formal = formal_energies(&g, &params);
    let levels = sol.levels();

    let wavevectors: Vec<Value> = (0..g.n())
        .map(|a| match plane_wave(&g, &params, a) {
            Ok(w) => f64_vec_json(&w.wavevector),
            Err(_) => Value::Null, // isolated anchor
        })
        .collect();
    let norms_full: Vec<Value> = (0..g.n())
        .map(|a| match plane_wave(&g, &params, a) {
            Ok(w) => json!(w.full_norm_sq()),
            Err(_) => Value::Null,
        })
        .collect();
    let norms_neighbor: Vec<Value> = (0..g.n())
        .map(|a| match plane_wave(&g, &params, a) {
            Ok(w) => json!(neighbor_norm_sq(&params, &w)),
            Err(_) => Value::Null,
        })
        .collect();
    let gaps: Vec<Value> = (0..g.n())
        .map(|a| match formal_matrix_gap(&g, &params, a) {
            Ok(gap) => c64_vec_json(&gap),
            Err(_) => Value::Null,
        })
        .collect();
    let polarization = polarization_condition(&g, &params);

    let mut result = json!({
        "energies": f64_vec_json(&sol.energies),
        "levels": levels.iter().map(|&(e, m)| json!([e, m])).collect::<Vec<_>>(),
        "formal_energies": f64_vec_json(&formal),
        "wavevectors": wavevectors,
        "plane_wave_norm_sq": {"full": norms_full, "neighbor_restricted": norms_neighbor},
        "formal_vs_matrix_gap": gaps,
        "polarization": {
            "constant": polarization.constant,
            "per_node": f64_vec_json(&polarization.per_node),
        },
    });
    if args.modes {
        result["modes"] = Value::Array(sol.modes.iter().map(|m| f64_vec_json(m)).collect());
    }
    if let Some(t) = args.t {
        let n = g.n();
        let psi0 = psi0.clone().unwrap_or_else(|| {
            let a = 1.0 / (n as f64).sqrt();
            vec![C64::new(a, 0.0); n]
        });
        let psi_t = sol.evolve(&psi0, t);
        result["psi_t"] = c64_vec_json(&psi_t);
        result["t"] = json!(t);
    }
    if let Some(c) = args.check_boundary {
        let n = g.n();
        let default_coeffs = || {
            let a = 1.0 / (2.0 * n as f64).sqrt();
            WaveCoefficients::new(vec![C64::new(a, 0.0); n], vec![C64::new(a, 0.0); n])
        };
        let coeffs = match coeffs {
            Some(c) => c,
            None => default_coeffs()?,
        };
        let dirichlet = dirichlet_check(&g, &params, &coeffs, c)?;
        let psi_for_neumann = psi0.unwrap_or_else(|| {
            let a = 1.0 / (n as f64).sqrt();
            vec![C64::new(a, 0.0); n]
        });
        let neumann = match neumann_relation(&g, &params, &psi_for_neumann, c)? {
            NeumannOutcome::Determined { value, empty_sum } => json!({
                "kind": "determined", "value": c64_json(&value), "empty_sum": empty_sum,
            }),
            NeumannOutcome::UndeterminedWithConstraint { residual } => json!({
                "kind": "undetermined-with-constraint", "residual": c64_json(&residual),
            }),
        };
        result["boundary"] = json!({
            "node": c,
            "dirichlet": {
                "family": dirichlet.family.as_str(),
                "details": dirichlet.details,
            },
            "neumann": neumann,
        });
    }

    let mut out = Report::new("schr", result);
    let top_spectral = sol.energies.last().copied().unwrap_or(0.0);
    let top_formal = formal.iter().cloned().fold(0.0, f64::max);
    out.compare(
        "schr.energy",
        json!(top_spectral),
        json!(top_formal),
        Some(agrees_rel(top_spectral, top_formal, 1e-9)),
    );
    if let Some(e) = regular_uniform_energy(&params) {
        out.compare(
            "schr.energy.regular-uniform",
            json!(top_spectral),
            json!(e),
            Some(agrees_rel(top_spectral, e, 1e-9)),
        );
    }
    out.warn(
        "formal plane-wave energies follow the first-order derivation rule, not the matrix \
         Hamiltonian; the spectral/formal gap is reported, not reconciled",
    );
    out.warn(
        "plane-wave normalization is ambiguous: the full-vertex squared norm is n/deg(a), the \
         neighbour-restricted one is 1; both are reported",
    );
    Ok(out)
}

fn parse_delta2(s: &str) -> Result<Delta2Coeff> {
    match s {
        "1/8" => Ok(Delta2Coeff::OneEighth),
        "1/4" => Ok(Delta2Coeff::OneQuarter),
        other => Err(Error::parse(format!(
            "unknown --delta2-coeff {other:?}; expected 1/8 or 1/4"
        ))),
    }
}

fn cmd_fpe(args: FpeArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let drift = read_node_function(&args.drift, g.domain())?;
    let diffusion = read_node_function(&args.diffusion, g.domain())?;
    let delta2 = parse_delta2(&args.delta2_coeff)?;
    let scan_args = args
        .scan
        .as_ref()
        .map(|raw| -> Result<((usize, usize), f64, f64, usize)> {
            let edge_str = raw[0].trim_start_matches("edge=");
            let (u, v) = edge_str
                .split_once(',')
                .ok_or_else(|| Error::parse(format!("bad scan edge {:?}", raw[0])))?;
            let u: usize = u.trim().parse().map_err(|_| Error::parse("bad scan edge node"))?;
            let v: usize = v.trim().parse().map_err(|_| Error::parse("bad scan edge node"))?;
            let lo: f64 = raw[1].parse().map_err(|_| Error::parse("bad scan lo"))?;
            let hi: f64 = raw[2].parse().map_err(|_| Error::parse("bad scan hi"))?;
            let steps: usize = raw[3].parse().map_err(|_| Error::parse("bad scan steps"))?;
            Ok(((u, v), lo, hi, steps))
        })
        .transpose()?;

    let coeffs = FpCoefficients::new(drift, diffusion)?;
    let report = stationarity_and_stability(&g, &coeffs, delta2)?;
    let exact_det = if g.domain() == ScalarDomain::Rational {
        Some(fp_matrix(&g, &coeffs, delta2)?.determinant()?.to_json())
    } else {
        None
    };

    let mut result = json!({
        "delta2_coeff": delta2.as_str(),
        "matrix": report
            .matrix
            .row_iter()
            .map(|r| Value::Array(r.iter().map(|&x| json!(x)).collect()))
            .collect::<Vec<_>>(),
        "det": report.det,
        "exact_det": exact_det,
        "trace_b": report.trace_b,
        "sym2_c": report.sym2_c,
        "paper_b": report.paper_b,
        "paper_c": report.paper_c,
        "eigenvalues": report.eigenvalues.iter().map(c64_json).collect::<Vec<_>>(),
        "stationary": report.stationary,
        "stable": report.stable,
        "discriminant_ok": report.discriminant_ok,
        "notes": report.notes,
    });

    if let Some((edge, lo, hi, steps)) = scan_args {
        let scan = weight_scan(&g, &coeffs, edge, lo, hi, steps, delta2)?;
        result["scan"] = json!({
            "edge": [edge.0, edge.1],
            "lo": lo,
            "hi": hi,
            "steps": steps,
            "roots": f64_vec_json(&scan.roots),
            "identically_singular": scan.identically_singular,
        });
    }

    let mut out = Report::new("fpe", result);
    if let (Some(pb), Some(pc)) = (report.paper_b, report.paper_c) {
        out.compare(
            "fpe.b",
            json!(report.trace_b),
            json!(pb),
            Some(agrees_rel(report.trace_b, pb, 1e-9)),
        );
        out.compare(
            "fpe.c",
            json!(report.sym2_c),
            json!(pc),
            Some(agrees_rel(report.sym2_c, pc, 1e-9)),
        );
    }
    // constant-weight triangle: closed-form eigenvalue and the disputed
    // negative-w threshold
    let uniform_weight = {
        let edges = g.edges();
        let ws: Option<Vec<f64>> = edges
            .iter()
            .map(|&(u, v)| g.weight(u, v).to_f64())
            .collect();
        ws.and_then(|ws| {
            let Some((&first, rest)) = ws.split_first() else {
                return None;
            };
            rest.iter()
                .all(|w| (w - first).abs() <= 1e-12 * first.abs().max(1.0))
                .then_some(first)
        })
    };
    let uniform_ab = {
        let a0 = coeffs.drift.get(0).to_f64();
        let b0 = coeffs.diffusion.get(0).to_f64();
        match (a0, b0) {
            (Some(a0), Some(b0)) => {
                let all = coeffs
                    .drift
                    .values()
                    .iter()
                    .all(|x| x.to_f64() == Some(a0))
                    && coeffs
                        .diffusion
                        .values()
                        .iter()
                        .all(|x| x.to_f64() == Some(b0));
                all.then_some((a0, b0))
            }
            _ => None,
        }
    };
    if g.n() == 3 && g.edge_count() == 3 {
        if let (Some(w), Some((a, b))) = (uniform_weight, uniform_ab) {
            if w != 0.0 {
                let cw = constant_weight_analysis(w, a, b)?;
                out.compare(
                    "fpe.constant-weight-eigenvalue",
                    json!(report.eigenvalues.last().map(|z| z.re)),
                    json!(cw.mu),
                    Some(agrees_rel(
                        report.eigenvalues.last().map(|z| z.re).unwrap_or(0.0),
                        cw.mu,
                        1e-8,
                    )),
                );
                if w < 0.0 {
                    out.compare(
                        "fpe.neg-w-threshold",
                        json!(cw.threshold),
                        json!(cw.paper_threshold),
                        None,
                    );
                    out.warn(
                        "the printed negative-w stability bound (63/40)·b·|w| conflicts with the \
                         eigenvalues of the printed matrix (threshold (3/4)·b·|w|, opposite \
                         direction); both are emitted, neither asserted",
                    );
                }
            }
        }
    }
    Ok(out)
}

fn cmd_linegraph(args: GraphOnlyArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let lg = line_graph(&g)?;
    Ok(Report::new(
        "linegraph",
        json!({
            "graph": serialize_graph(&lg.graph),
            "origin": lg.origin.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
        }),
    ))
}

fn cmd_indepset(args: IndepsetArgs) -> Result<Report> {
    let g = read_graph(&args.graph)?;
    let (independent, two_packing, method) = if args.greedy {
        (
            greedy_independent_set(&g, IndepVariant::Independent),
            greedy_independent_set(&g, IndepVariant::TwoPacking),
            "greedy",
        )
    } else {
        (
            max_independent_set(&g, IndepVariant::Independent)?,
            max_independent_set(&g, IndepVariant::TwoPacking)?,
            "exact",
        )
    };
    let (ind_size, tp_size) = (independent.len(), two_packing.len());
    let mut out = Report::new(
        "indepset",
        json!({
            "method": method,
            "independent": {"nodes": independent, "size": ind_size},
            "two_packing": {"nodes": two_packing, "size": tp_size},
        }),
    );
    out.warn(
        "the Cartan-rank reading is ambiguous between plain independence and two-packing \
         (no common neighbours); both variants are reported side by side",
    );
    Ok(out)
}
