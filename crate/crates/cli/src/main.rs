//! Command-line front end: catalog listing, verification, analysis,
//! gluing, bounds, stabilizers, block intersections, and plot-data export.
//!
//! Exit codes: 0 on success/pass, 1 on verification failure, 2 on usage or
//! data errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use borderrank::block_intersect::{intersect_block_segre, Block, BlockComponent};
use borderrank::bounds::{glue, strassen_lower_bound, upper_bound_table, BoundConfig};
use borderrank::catalog::{
    self, apply_errata, load_algorithm, load_errata, save_algorithm, BorderRankAlgorithm,
};
use borderrank::exact::rational::Rational;
use borderrank::geometry::{classify_line, limit_plane, line_configuration_report};
use borderrank::symmetry::{
    check_discrete_symmetry, plane_stabilizer, ActionTarget, AlgebraKind, LieAlgebraSpec, Summand,
};
use borderrank::tensor::{bclrs_tensor, format_vector, mat_mul_tensor, Group, SymmetryMove, Tensor};
use borderrank::verify::{
    first_order_certificate, jet_tables, limit_points, order_profile, verify_against_named_target,
};

#[derive(Parser)]
#[command(
    name = "brmm",
    about = "exact analysis of border rank algorithms for small matrix multiplication tensors",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries with verification status.
    Catalog,
    /// Verify an entry or algorithm file against its named target.
    Verify(EntryArgs),
    /// Limit points, jet tables, order profile, limit plane and line
    /// configuration of an entry.
    Analyze(EntryArgs),
    /// Glue two one-entry-deleted algorithms into a full matmul algorithm.
    Glue {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Write the glued algorithm to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Strassen commutator lower bound for a named tensor.
    Bounds {
        /// Tensor spec: `bclrs:3` or `matmul:4,2,2`.
        #[arg(long)]
        tensor: String,
        #[arg(long, default_value_t = borderrank::bounds::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = borderrank::bounds::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = borderrank::bounds::DEFAULT_SAMPLE_RANGE)]
        range: u64,
        /// Also print the bound table up to this n.
        #[arg(long)]
        table: Option<usize>,
    },
    /// Stabilizer and orbit dimensions of an algorithm's limit plane.
    Stabilizer {
        /// Plane spec: `entry:bclr`, `glue:bclr,bclr`, or `file:path.json`.
        #[arg(long)]
        plane: String,
        /// Algebra spec, one token per matrix group U:V:W from
        /// {gl, sl, t, gu}, e.g. `sl:sl:sl` or `gu:t:sl`.
        #[arg(long)]
        algebra: String,
    },
    /// Intersection of the limit plane with a 2x2x2 coordinate block.
    Intersect {
        #[arg(long)]
        entry: String,
        /// Block spec `x^1_2,x^2_1;y^2_1,y^2_2;z^1_2,z^2_2`; defaults to the
        /// block spanned by the limit configuration when it is 2x2x2.
        #[arg(long)]
        block: Option<String>,
        #[arg(long)]
        raw: bool,
    },
    /// Discrete symmetry check on an entry.
    Symmetry {
        #[arg(long)]
        entry: String,
        /// Moves applied left to right, joined by `+`: `tcyc`, `cyc`, or
        /// basis permutations like `swapW:1,0`.
        #[arg(long)]
        moves: String,
    },
    /// Export sampled rational points of the limit configuration for
    /// external plotting.
    ExportPlotData {
        #[arg(long)]
        entry: String,
        #[arg(long)]
        out: String,
    },
}

#[derive(Args)]
struct EntryArgs {
    /// Catalog entry id (see `catalog`).
    #[arg(long)]
    entry: Option<String>,
    /// Load the algorithm from a file instead of the catalog.
    #[arg(long)]
    file: Option<String>,
    /// Skip the curated errata overlay.
    #[arg(long)]
    raw: bool,
    /// Extra errata overlay files to apply after the curated one.
    #[arg(long)]
    errata: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

/// Resolves an entry: catalog directory override via BRMM_CATALOG_DIR, then
/// the built-in catalog. Returns the id, algorithm and applied-edit lines.
fn load_entry_algorithm(
    args: &EntryArgs,
) -> Result<(String, BorderRankAlgorithm, Vec<String>), AnyError> {
    let (id, mut alg, mut applied) = if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)?;
        (path.clone(), load_algorithm(&text)?, Vec::new())
    } else {
        let id = args
            .entry
            .clone()
            .ok_or("one of --entry or --file is required")?;
        let from_dir = std::env::var("BRMM_CATALOG_DIR").ok().and_then(|dir| {
            let path = format!("{dir}/{id}.json");
            std::path::Path::new(&path)
                .exists()
                .then_some((dir, path))
        });
        match from_dir {
            Some((dir, path)) => {
                let alg = load_algorithm(&std::fs::read_to_string(&path)?)?;
                let overlay_path = format!("{dir}/errata/{id}.json");
                let (alg, applied) = if !args.raw && std::path::Path::new(&overlay_path).exists() {
                    let overlay = load_errata(&std::fs::read_to_string(&overlay_path)?)?;
                    apply_errata(&alg, &overlay)?
                } else {
                    (alg, Vec::new())
                };
                (id, alg, applied)
            }
            None => {
                let entry = catalog::entry(&id)?;
                let (alg, applied) = entry.load(args.raw)?;
                (id.clone(), alg, applied)
            }
        }
    };
    for path in &args.errata {
        let overlay = load_errata(&std::fs::read_to_string(path)?)?;
        let (next, more) = apply_errata(&alg, &overlay)?;
        alg = next;
        applied.extend(more);
    }
    Ok((id, alg, applied))
}

fn run(cli: &Cli) -> Result<ExitCode, AnyError> {
    match &cli.command {
        Command::Catalog => cmd_catalog(cli.json),
        Command::Verify(args) => cmd_verify(cli.json, args),
        Command::Analyze(args) => cmd_analyze(cli.json, args),
        Command::Glue { left, right, out } => cmd_glue(cli.json, left, right, out.as_deref()),
        Command::Bounds {
            tensor,
            trials,
            seed,
            range,
            table,
        } => cmd_bounds(cli.json, tensor, *trials, *seed, *range, *table),
        Command::Stabilizer { plane, algebra } => cmd_stabilizer(cli.json, plane, algebra),
        Command::Intersect { entry, block, raw } => {
            cmd_intersect(cli.json, entry, block.as_deref(), *raw)
        }
        Command::Symmetry { entry, moves } => cmd_symmetry(cli.json, entry, moves),
        Command::ExportPlotData { entry, out } => cmd_export(entry, out),
    }
}

fn cmd_catalog(json: bool) -> Result<ExitCode, AnyError> {
    let mut rows = Vec::new();
    for e in catalog::entries() {
        let (alg, edits) = e.load(false)?;
        let report = verify_against_named_target(&alg)?;
        rows.push((e, alg, edits, report));
    }
    if json {
        let value = serde_json::Value::Array(
            rows.iter()
                .map(|(e, alg, edits, report)| {
                    serde_json::json!({
                        "id": e.id,
                        "summary": e.summary,
                        "target": alg.target.describe(),
                        "terms": alg.term_count(),
                        "order": alg.order,
                        "curated_edits": edits.len(),
                        "status": if report.passed() { "pass" } else { "fail" },
                        "orientation": report.orientation,
                        "notes": e.notes,
                    })
                })
                .collect(),
        );
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!(
            "{:<14} {:<14} {:>5} {:>5} {:>6} {:<8} orientation",
            "id", "target", "terms", "order", "edits", "status"
        );
        for (e, alg, edits, report) in &rows {
            println!(
                "{:<14} {:<14} {:>5} {:>5} {:>6} {:<8} {}",
                e.id,
                alg.target.describe(),
                alg.term_count(),
                alg.order,
                edits.len(),
                if report.passed() { "pass" } else { "fail" },
                report.orientation
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn tensor_json(alg: &BorderRankAlgorithm, t: &Tensor<Rational>) -> serde_json::Value {
    serde_json::Value::Array(
        t.iter()
            .map(|(idx, v)| {
                serde_json::json!({
                    "idx": idx,
                    "labels": [
                        alg.space.format_label(0, idx[0]),
                        alg.space.format_label(1, idx[1]),
                        alg.space.format_label(2, idx[2]),
                    ],
                    "val": v.to_string(),
                })
            })
            .collect(),
    )
}

fn cmd_verify(json: bool, args: &EntryArgs) -> Result<ExitCode, AnyError> {
    let (id, alg, applied) = load_entry_algorithm(args)?;
    let report = verify_against_named_target(&alg)?;
    let pass = report.passed();
    if json {
        let residual = report.residual.as_ref().map(|r| tensor_json(&alg, r));
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "entry": id,
                "applied_errata": applied,
                "status": if pass { "pass" } else { "fail" },
                "order": report.checked_order,
                "orientation": report.orientation,
                "term_count": report.term_count,
                "generic_rank": report.generic_rank,
                "first_failure_power": report.first_failure_power,
                "residual": residual,
                "higher_order_powers": report.higher_order_powers,
            }))?
        );
    } else {
        for line in &applied {
            println!("errata: {line}");
        }
        println!(
            "{id}: {} (order {}, target orientation: {}, generic term rank {}/{})",
            if pass { "pass" } else { "FAIL" },
            report.checked_order,
            report.orientation,
            report.generic_rank,
            report.term_count
        );
        if let Some(k) = report.first_failure_power {
            println!("first failure at t^{k}");
        }
        if let Some(res) = &report.residual {
            println!("residual ({} entries):", res.num_entries());
            for (idx, v) in res.iter() {
                println!(
                    "  {} (x) {} (x) {} = {}",
                    alg.space.format_label(0, idx[0]),
                    alg.space.format_label(1, idx[1]),
                    alg.space.format_label(2, idx[2]),
                    v
                );
            }
        }
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_analyze(json: bool, args: &EntryArgs) -> Result<ExitCode, AnyError> {
    let (id, alg, applied) = load_entry_algorithm(args)?;
    let report = verify_against_named_target(&alg)?;
    let limits = limit_points(&alg)?;
    let jets = jet_tables(&alg);
    let profile = order_profile(&alg);
    let plane = limit_plane(&alg)?;
    let honest: Vec<_> = limits.iter().filter_map(|l| l.point.clone()).collect();
    let config = line_configuration_report(&alg.space, &honest);
    let target = report
        .passed()
        .then(|| alg.target_candidates().ok())
        .flatten()
        .and_then(|cands| cands.into_iter().find(|(n, _)| *n == report.orientation));
    let certificate = if alg.order <= 1 {
        target
            .as_ref()
            .map(|(_, t)| first_order_certificate(&alg, t))
            .transpose()?
    } else {
        None
    };

    if json {
        let fmt_vec = |f: usize, v: &[Rational]| format_vector(&alg.space, f, v);
        let value = serde_json::json!({
            "entry": id,
            "applied_errata": applied,
            "status": if report.passed() { "pass" } else { "fail" },
            "limit_points": limits.iter().map(|l| serde_json::json!({
                "term": l.term,
                "zero_limit": l.point.is_none(),
                "point": l.point.as_ref().map(|p| [fmt_vec(0, &p.a), fmt_vec(1, &p.b), fmt_vec(2, &p.c)]),
            })).collect::<Vec<_>>(),
            "jets": jets.rows.iter().map(|row| serde_json::json!({
                "term": row.term,
                "first": [fmt_vec(0, &row.first[0]), fmt_vec(1, &row.first[1]), fmt_vec(2, &row.first[2])],
                "second": [fmt_vec(0, &row.second[0]), fmt_vec(1, &row.second[1]), fmt_vec(2, &row.second[2])],
            })).collect::<Vec<_>>(),
            "factor_orders": profile.factor_orders,
            "limit_plane_dim": plane.dim(),
            "config_lines": config.lines.iter().map(|cl| serde_json::json!({
                "members": cl.members.iter().map(|m| m + 1).collect::<Vec<_>>(),
                "kind": cl.tag.as_ref().map(|t| t.kind.to_string()),
                "pencil_type": cl.tag.as_ref().and_then(|t| t.pencil_type.clone()),
                "special": cl.tag.as_ref().map(|t| t.special),
                "rank_defect": cl.rank_defect,
            })).collect::<Vec<_>>(),
            "config_span_dim": config.span_dim,
            "certificate": certificate.as_ref().map(|c| serde_json::json!({
                "total_matches": c.total_matches,
                "groups": c.groups.iter().map(|g| serde_json::json!({
                    "terms": g.terms,
                    "membership": g.membership,
                    "zero": g.contribution.is_zero(),
                })).collect::<Vec<_>>(),
            })),
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        for line in &applied {
            println!("errata: {line}");
        }
        println!(
            "== {id}: verification {}",
            if report.passed() { "pass" } else { "FAIL" }
        );
        println!("\n-- limit points (projectively normalized)");
        for l in &limits {
            match &l.point {
                Some(p) => println!(
                    "p{}(0) = [{}] (x) [{}] (x) [{}]",
                    l.term,
                    format_vector(&alg.space, 0, &p.a),
                    format_vector(&alg.space, 1, &p.b),
                    format_vector(&alg.space, 2, &p.c)
                ),
                None => println!("p{}(0) = 0 (zero limit, flagged)", l.term),
            }
        }
        println!("\n-- tangent vectors (a', b', c') per term");
        for row in &jets.rows {
            println!(
                "p{}: {} | {} | {}",
                row.term,
                format_vector(&alg.space, 0, &row.first[0]),
                format_vector(&alg.space, 1, &row.first[1]),
                format_vector(&alg.space, 2, &row.first[2])
            );
        }
        println!("\n-- second-order vectors (a'', b'', c'') per term");
        for row in &jets.rows {
            println!(
                "p{}: {} | {} | {}",
                row.term,
                format_vector(&alg.space, 0, &row.second[0]),
                format_vector(&alg.space, 1, &row.second[1]),
                format_vector(&alg.space, 2, &row.second[2])
            );
        }
        println!("\n-- order profile (per factor entry; . = unused, X = deleted)");
        print_factor_orders(&alg, &profile.factor_orders);
        println!("\n-- limit plane: dimension {}", plane.dim());
        println!(
            "\n-- line configuration ({} points, span dim {})",
            config.point_count, config.span_dim
        );
        for cl in &config.lines {
            let tag = cl
                .tag
                .as_ref()
                .map(|t| {
                    format!(
                        "{}{}{}",
                        t.kind,
                        t.pencil_type
                            .as_ref()
                            .map(|p| format!(",{p}"))
                            .unwrap_or_default(),
                        if t.special { " special" } else { "" }
                    )
                })
                .unwrap_or_else(|| "untyped".into());
            println!(
                "line ({tag}): terms {:?}, rank defect {}",
                cl.members.iter().map(|m| m + 1).collect::<Vec<_>>(),
                cl.rank_defect
            );
        }
        if let Some(cert) = &certificate {
            println!(
                "\n-- first-order certificate: target matched = {}",
                cert.total_matches
            );
            for g in &cert.groups {
                println!(
                    "group {:?}: {} {}",
                    g.terms,
                    if g.contribution.is_zero() {
                        "zero contribution"
                    } else {
                        "tangent contribution"
                    },
                    if g.membership {
                        "(membership certified)"
                    } else {
                        "(MEMBERSHIP FAILED)"
                    }
                );
            }
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_factor_orders(alg: &BorderRankAlgorithm, orders: &[Vec<Option<i64>>; 3]) {
    let Some(st) = alg.space.structure.as_ref() else {
        return;
    };
    for f in 0..3 {
        let (rows, cols) = st.pair_dims()[f];
        println!("factor {}:", ["A", "B", "C"][f]);
        for r in 1..=rows {
            let mut line = String::from("  ");
            for c in 1..=cols {
                let cell = match st.index_of(f, (r, c)) {
                    Some(i) => match orders[f][i] {
                        Some(o) => o.to_string(),
                        None => ".".into(),
                    },
                    None => "X".into(),
                };
                line.push_str(&format!("{cell:>3}"));
            }
            println!("{line}");
        }
    }
}

fn cmd_glue(json: bool, left: &str, right: &str, out: Option<&str>) -> Result<ExitCode, AnyError> {
    let load = |id: &str| -> Result<BorderRankAlgorithm, AnyError> {
        Ok(catalog::entry(id)?.load(false)?.0)
    };
    let (glued, report) = glue(&load(left)?, &load(right)?)?;
    let text = save_algorithm(&glued);
    if let Some(path) = out {
        std::fs::write(path, &text)?;
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "left": left,
                "right": right,
                "terms": glued.term_count(),
                "order": glued.order,
                "target": glued.target.describe(),
                "left_map": report.left_map,
                "right_map": report.right_map,
                "shared_row": report.shared_row,
                "written": out,
            }))?
        );
    } else {
        println!(
            "glued {left} + {right} -> {} with {} terms at order {} (verified)",
            glued.target.describe(),
            glued.term_count(),
            glued.order
        );
        for l in report.left_map.iter() {
            println!("left:  {l}");
        }
        for r in report.right_map.iter() {
            println!("right: {r}");
        }
        if let Some(path) = out {
            println!("written to {path}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_tensor_spec(spec: &str) -> Result<Tensor<Rational>, AnyError> {
    if let Some(m) = spec.strip_prefix("bclrs:") {
        return Ok(bclrs_tensor(m.trim().parse()?)?);
    }
    if let Some(dims) = spec.strip_prefix("matmul:") {
        let parts: Vec<usize> = dims
            .split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<_, _>>()?;
        if parts.len() == 3 {
            return Ok(mat_mul_tensor(parts[0], parts[1], parts[2]));
        }
    }
    Err(format!("unknown tensor spec `{spec}` (use bclrs:M or matmul:U,V,W)").into())
}

fn cmd_bounds(
    json: bool,
    tensor: &str,
    trials: usize,
    seed: u64,
    range: u64,
    table: Option<usize>,
) -> Result<ExitCode, AnyError> {
    let t = parse_tensor_spec(tensor)?;
    let cfg = BoundConfig {
        trials,
        sample_range: range,
        seed,
    };
    let report = strassen_lower_bound(&t, &cfg)?;
    let table_rows = table.map(upper_bound_table);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "tensor": tensor,
                "bound": report.bound,
                "contracted_factor": (["A","B","C"][report.contracted_factor]),
                "commutator_rank": report.commutator_rank,
                "base_dim": report.base_dim,
                "trials": report.trials_run,
                "seed": report.seed,
                "table": table_rows.as_ref().map(|rows| rows.iter().map(|r| serde_json::json!({
                    "n": r.n, "lower": r.lower, "upper": r.upper, "known": r.known_exact,
                })).collect::<Vec<_>>()),
            }))?
        );
    } else {
        println!(
            "border rank of {tensor} >= {} (commutator rank {} against a {}-dim base, contracted factor {}, {} trials, seed {})",
            report.bound,
            report.commutator_rank,
            report.base_dim,
            ["A", "B", "C"][report.contracted_factor],
            report.trials_run,
            report.seed
        );
        if let Some(rows) = table_rows {
            println!("{:>4} {:>6} {:>6}  known", "n", "3n", "upper");
            for r in rows {
                println!(
                    "{:>4} {:>6} {:>6}  {}",
                    r.n,
                    r.lower,
                    r.upper,
                    r.known_exact.map(|k| k.to_string()).unwrap_or_default()
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_algebra_spec(spec: &str, uvw: [usize; 3]) -> Result<LieAlgebraSpec, AnyError> {
    let tokens: Vec<&str> = spec.split(':').collect();
    if tokens.len() != 3 {
        return Err("algebra spec needs three tokens, e.g. sl:sl:sl".into());
    }
    let groups = [Group::U, Group::V, Group::W];
    let mut summands = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        let kind = match *tok {
            "gl" => AlgebraKind::Gl,
            "sl" => AlgebraKind::Sl,
            "t" => AlgebraKind::Torus,
            "gu" => AlgebraKind::BlockDiagonal,
            other => return Err(format!("unknown algebra token `{other}`").into()),
        };
        summands.push(Summand {
            target: ActionTarget::Structured(groups[i]),
            kind,
            n: uvw[i],
        });
    }
    Ok(LieAlgebraSpec::new(summands))
}

fn cmd_stabilizer(json: bool, plane: &str, algebra: &str) -> Result<ExitCode, AnyError> {
    let alg = if let Some(id) = plane.strip_prefix("entry:") {
        catalog::entry(id)?.load(false)?.0
    } else if let Some(id) = plane.strip_prefix("raw-entry:") {
        catalog::entry(id)?.load(true)?.0
    } else if let Some(pair) = plane.strip_prefix("glue:") {
        let (l, r) = pair
            .split_once(',')
            .ok_or("glue plane spec needs two ids, e.g. glue:bclr,bclr")?;
        let left = catalog::entry(l.trim())?.load(false)?.0;
        let right = catalog::entry(r.trim())?.load(false)?.0;
        glue(&left, &right)?.0
    } else if let Some(pair) = plane.strip_prefix("glue-raw:") {
        // glues the curves exactly as printed, without the verification
        // gate: the plane of the uncorrected data
        let (l, r) = pair
            .split_once(',')
            .ok_or("glue plane spec needs two ids, e.g. glue-raw:bclr,bclr")?;
        let left = catalog::entry(l.trim())?.load(true)?.0;
        let right = catalog::entry(r.trim())?.load(true)?.0;
        borderrank::bounds::glue_curves(&left, &right)?.0
    } else if let Some(path) = plane.strip_prefix("file:") {
        load_algorithm(&std::fs::read_to_string(path)?)?
    } else {
        return Err(format!("unknown plane spec `{plane}`").into());
    };
    let e = limit_plane(&alg)?;
    let st = alg
        .space
        .structure
        .as_ref()
        .ok_or("stabilizer needs a matmul-structured space")?;
    let spec = parse_algebra_spec(algebra, st.uvw)?;
    let report = plane_stabilizer(&spec, &alg.space, &e)?;
    let kernel_desc: Vec<String> = report
        .kernel_basis
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !borderrank::tensor::Scalar::is_zero(*c))
                .map(|(i, c)| format!("{} {}", c, report.generator_labels[i]))
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "plane": plane,
                "plane_dim": e.dim(),
                "algebra": algebra,
                "algebra_dim": report.algebra_dim,
                "stab_dim": report.stab_dim,
                "orbit_dim": report.orbit_dim,
                "kernel_is_diagonal": report.kernel_is_diagonal,
                "kernel_basis": kernel_desc,
            }))?
        );
    } else {
        println!(
            "plane {plane} (dim {}) under {algebra} (dim {}): stab {}, orbit {}",
            e.dim(),
            report.algebra_dim,
            report.stab_dim,
            report.orbit_dim
        );
        println!(
            "kernel basis is {}diagonal",
            if report.kernel_is_diagonal { "" } else { "NOT " }
        );
        for d in &kernel_desc {
            println!("  {d}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_block_spec(alg: &BorderRankAlgorithm, spec: &str) -> Result<Block, AnyError> {
    let parts: Vec<&str> = spec.split(';').collect();
    if parts.len() != 3 {
        return Err("block spec needs three `;`-separated label pairs".into());
    }
    let mut coords = [[0usize; 2]; 3];
    for (f, part) in parts.iter().enumerate() {
        let labels: Vec<&str> = part.split(',').map(str::trim).collect();
        if labels.len() != 2 {
            return Err("each factor needs two labels".into());
        }
        for (i, label) in labels.iter().enumerate() {
            let (lf, idx) = alg.space.parse_label(label)?;
            if lf != f {
                return Err(format!("label {label} belongs to a different factor").into());
            }
            coords[f][i] = idx;
        }
    }
    Ok(Block { coords })
}

/// The coordinate block spanned by the limit configuration, when each factor
/// touches exactly two coordinates.
fn configuration_block(alg: &BorderRankAlgorithm) -> Result<Block, AnyError> {
    let limits = limit_points(alg)?;
    let mut coords = [[0usize; 2]; 3];
    for f in 0..3 {
        let mut used: Vec<usize> = Vec::new();
        for l in &limits {
            if let Some(p) = &l.point {
                for (i, c) in p.factor(f).iter().enumerate() {
                    if !borderrank::tensor::Scalar::is_zero(c) && !used.contains(&i) {
                        used.push(i);
                    }
                }
            }
        }
        used.sort_unstable();
        if used.len() != 2 {
            return Err(format!(
                "limit configuration spans {} coordinates in factor {f}; pass --block explicitly",
                used.len()
            )
            .into());
        }
        coords[f] = [used[0], used[1]];
    }
    Ok(Block { coords })
}

fn cmd_intersect(
    json: bool,
    entry: &str,
    block: Option<&str>,
    raw: bool,
) -> Result<ExitCode, AnyError> {
    let (alg, _) = catalog::entry(entry)?.load(raw)?;
    let block = match block {
        Some(spec) => parse_block_spec(&alg, spec)?,
        None => configuration_block(&alg)?,
    };
    let e = limit_plane(&alg)?;
    let comps = intersect_block_segre(&e, &alg.space, &block)?;
    let describe = |c: &BlockComponent| -> serde_json::Value {
        match c {
            BlockComponent::FullBlock => serde_json::json!({"type": "full-block"}),
            BlockComponent::SubSegre { fixed_factor, point } => serde_json::json!({
                "type": "sub-segre",
                "fixed_factor": (["A","B","C"][*fixed_factor]),
                "point": format_vector(&alg.space, *fixed_factor, point),
            }),
            BlockComponent::LineFamily { moving, axes, curve } => serde_json::json!({
                "type": "line-family",
                "moving": (["A","B","C"][*moving]),
                "axes": [(["A","B","C"][axes.0]), (["A","B","C"][axes.1])],
                "curve": curve.iter().map(|row| row.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            BlockComponent::Line(l) => {
                let tag = classify_line(&alg.space, l);
                serde_json::json!({
                    "type": "line",
                    "moving": (["A","B","C"][l.moving]),
                    "kind": tag.as_ref().map(|t| t.kind.to_string()),
                    "pencil_type": tag.as_ref().and_then(|t| t.pencil_type.clone()),
                    "special": tag.as_ref().map(|t| t.special),
                    "fixed": (0..3).filter_map(|f| l.fixed[f].as_ref().map(|v| format_vector(&alg.space, f, v))).collect::<Vec<_>>(),
                })
            }
            BlockComponent::Point(p) => serde_json::json!({
                "type": "point",
                "point": [
                    format_vector(&alg.space, 0, &p.a),
                    format_vector(&alg.space, 1, &p.b),
                    format_vector(&alg.space, 2, &p.c),
                ],
            }),
            BlockComponent::Unresolved(note) => serde_json::json!({
                "type": "unresolved",
                "note": note,
            }),
        }
    };
    if json {
        let value: Vec<serde_json::Value> = comps.iter().map(describe).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Array(value))?
        );
    } else {
        println!("intersection with the block has {} component(s):", comps.len());
        for c in &comps {
            println!("  {}", serde_json::to_string(&describe(c))?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_moves(spec: &str) -> Result<Vec<SymmetryMove>, AnyError> {
    let mut out = Vec::new();
    for tok in spec.split('+') {
        let tok = tok.trim();
        if tok == "tcyc" {
            out.push(SymmetryMove::TransposeCycle);
        } else if tok == "cyc" {
            out.push(SymmetryMove::Cyclic);
        } else if let Some(rest) = tok.strip_prefix("swap") {
            let (group, perm) = rest
                .split_once(':')
                .ok_or("permutation move looks like swapU:1,0")?;
            let group = match group {
                "U" => Group::U,
                "V" => Group::V,
                "W" => Group::W,
                other => return Err(format!("unknown group `{other}`").into()),
            };
            let perm: Vec<usize> = perm
                .split(',')
                .map(|p| p.trim().parse())
                .collect::<Result<_, _>>()?;
            out.push(SymmetryMove::Permute(group, perm));
        } else {
            return Err(format!("unknown move `{tok}`").into());
        }
    }
    Ok(out)
}

fn cmd_symmetry(json: bool, entry: &str, moves: &str) -> Result<ExitCode, AnyError> {
    let (alg, _) = catalog::entry(entry)?.load(false)?;
    let moves = parse_moves(moves)?;
    let report = check_discrete_symmetry(&alg, &moves)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "entry": entry,
                "curve_matches": report.curve_matches.iter().map(|m| m.as_ref().map(|(j, s)| serde_json::json!({
                    "term": j + 1, "scale": s.to_string(),
                }))).collect::<Vec<_>>(),
                "limit_matches": report.limit_matches.iter().map(|m| m.map(|j| j + 1)).collect::<Vec<_>>(),
                "line_matches": report.line_matches.iter().enumerate().map(|(i, m)| serde_json::json!({
                    "line": i,
                    "members": report.config.lines[i].members.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "image": m,
                })).collect::<Vec<_>>(),
            }))?
        );
    } else {
        println!("term-level matches (image of p_i equals scale * p_j):");
        for (i, m) in report.curve_matches.iter().enumerate() {
            match m {
                Some((j, s)) => println!("  p{} -> {} * p{}", i + 1, s, j + 1),
                None => println!("  p{} -> (no exact curve match)", i + 1),
            }
        }
        println!("limit-point matches (projective):");
        for (i, m) in report.limit_matches.iter().enumerate() {
            match m {
                Some(j) => println!("  p{}(0) -> p{}(0)", i + 1, j + 1),
                None => println!("  p{}(0) -> (no match)", i + 1),
            }
        }
        println!("configuration-line matches:");
        for (i, m) in report.line_matches.iter().enumerate() {
            let members: Vec<usize> =
                report.config.lines[i].members.iter().map(|m| m + 1).collect();
            match m {
                Some(j) => println!(
                    "  line {i} (terms {members:?}) -> line {j} (terms {:?})",
                    report.config.lines[*j]
                        .members
                        .iter()
                        .map(|m| m + 1)
                        .collect::<Vec<_>>()
                ),
                None => println!("  line {i} (terms {members:?}) -> (no match)"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(entry: &str, out: &str) -> Result<ExitCode, AnyError> {
    let (alg, _) = catalog::entry(entry)?.load(false)?;
    let limits = limit_points(&alg)?;
    let honest: Vec<_> = limits.iter().filter_map(|l| l.point.clone()).collect();
    let config = line_configuration_report(&alg.space, &honest);
    let mut lines = Vec::new();
    for cl in &config.lines {
        let mut samples = Vec::new();
        for (s, t) in [(1i64, 0i64), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (3, 1)] {
            let p = cl.line.point_at(&[
                Rational::from_integer(s.into()),
                Rational::from_integer(t.into()),
            ]);
            samples.push(serde_json::json!({
                "pencil": [s, t],
                "a": p.a.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "b": p.b.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "c": p.c.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            }));
        }
        lines.push(serde_json::json!({
            "members": cl.members.iter().map(|m| m + 1).collect::<Vec<_>>(),
            "kind": cl.tag.as_ref().map(|t| t.kind.to_string()),
            "samples": samples,
        }));
    }
    let value = serde_json::json!({
        "entry": entry,
        "points": limits.iter().map(|l| serde_json::json!({
            "term": l.term,
            "zero_limit": l.point.is_none(),
            "a": l.point.as_ref().map(|p| p.a.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
            "b": l.point.as_ref().map(|p| p.b.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
            "c": l.point.as_ref().map(|p| p.c.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
        })).collect::<Vec<_>>(),
        "lines": lines,
    });
    std::fs::write(out, serde_json::to_string_pretty(&value)?)?;
    println!("wrote plot data for {entry} to {out}");
    Ok(ExitCode::SUCCESS)
}
