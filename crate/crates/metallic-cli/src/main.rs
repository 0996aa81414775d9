//! `metallic` — command-line front end for the metallic numeration and
//! tree-navigation library.
//!
//! The subcommands mirror the library surface: `seq` prints prefixes of the
//! level-size sequences, `encode`/`decode`/`inc`/`dec` operate on codes in
//! either numeration system, `tree` dumps a built tree as text, JSON or
//! Graphviz DOT, `path` runs the code-driven root-path algorithms
//! (optionally diffing them against the father-chain oracle), `neighbours`
//! lists the tiles around a node in either tiling, `audit-tables` compares
//! the closed-form neighbour formulas against the tree, and `verify` runs
//! the library's cross-checks over a parameter range.
//!
//! Exit codes: 0 on success, 1 on a computation or verification failure,
//! 2 on a usage error. Output is deterministic: the same arguments produce
//! byte-identical stdout (the one exception is `verify`, whose records
//! carry wall-clock timings).

mod verify;

use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use metallic_trees::codes::{AnyCode, System};
use metallic_trees::navigation::{
    self, neighbours, path_black_metallic, path_black_nzm, path_oracle, path_white_metallic,
    path_white_nzm, PathStep, TilingKind,
};
use metallic_trees::sequences::{SequenceTable, TreeKind};
use metallic_trees::trees::{Assignment, Tree};
use metallic_trees::Params;

/// Metallic numeration systems and hyperbolic-tiling tree navigation.
#[derive(Parser)]
#[command(name = "metallic", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a range of the level-size sequences.
    Seq(SeqArgs),
    /// Encode a natural number as a code.
    Encode(ValueArgs),
    /// Decode a code back to its natural number.
    Decode(CodeArgs),
    /// Increment a code by one.
    Inc(CodeArgs),
    /// Decrement a code by one.
    Dec(CodeArgs),
    /// Build a tree prefix and dump it.
    Tree(TreeArgs),
    /// Compute the root-to-node path from a code.
    Path(PathArgs),
    /// List the neighbours of a tile.
    Neighbours(NeighbourArgs),
    /// Audit the closed-form neighbour tables against the tree.
    AuditTables(AuditArgs),
    /// Run the full cross-check suite over a parameter range.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Metallic,
    Nzm,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> System {
        match s {
            SystemArg::Metallic => System::Metallic,
            SystemArg::Nzm => System::Nzm,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KindArg {
    White,
    Black,
}

impl From<KindArg> for TreeKind {
    fn from(k: KindArg) -> TreeKind {
        match k {
            KindArg::White => TreeKind::White,
            KindArg::Black => TreeKind::Black,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct SeqArgs {
    /// Tree parameter, p >= 5.
    #[arg(long)]
    p: u32,
    /// Inclusive index range, e.g. 0..6.
    #[arg(long)]
    n: String,
    /// Which sequence: white level sizes or black level sizes.
    #[arg(long, value_enum, default_value_t = KindArg::White)]
    kind: KindArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ValueArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum)]
    system: SystemArg,
    /// The natural number to encode (decimal).
    value: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum)]
    system: SystemArg,
    /// The code, digits separated by commas (e.g. 1,0,0).
    code: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TreeArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Black-son assignment: leftmost, penultimate, rightmost, mid:K or
    /// random:SEED.
    #[arg(long, default_value = "rightmost")]
    assign: String,
    /// Number of levels below the root.
    #[arg(long)]
    depth: u32,
    /// Code system used for the `code` column and DOT labels.
    #[arg(long, value_enum, default_value_t = SystemArg::Metallic)]
    system: SystemArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Safety cap on the number of nodes built.
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    /// The code-driven sliding-window algorithm.
    Paper,
    /// The father-chain walk on a built tree.
    Oracle,
    /// Run both and diff them.
    Both,
}

#[derive(Args)]
struct PathArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, value_enum)]
    system: SystemArg,
    /// The node's code, digits separated by commas.
    #[arg(long)]
    code: String,
    #[arg(long, value_enum, default_value_t = AlgoArg::Paper)]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
}

#[derive(Args)]
struct NeighbourArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Tiling: p4 for {p,4} or p23 for {p+2,3}.
    #[arg(long)]
    tiling: String,
    /// The tile's node number.
    #[arg(long)]
    num: u64,
    #[arg(long, value_enum, default_value_t = SystemArg::Metallic)]
    system: SystemArg,
    #[arg(long, default_value = "rightmost")]
    assign: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Inclusive range of p values, e.g. 5..9.
    #[arg(long)]
    p_range: String,
    #[arg(long, default_value_t = 5)]
    depth: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Seq(args) => cmd_seq(args),
        Cmd::Encode(args) => cmd_encode(args),
        Cmd::Decode(args) => cmd_decode(args),
        Cmd::Inc(args) => cmd_step(args, true),
        Cmd::Dec(args) => cmd_step(args, false),
        Cmd::Tree(args) => cmd_tree(args),
        Cmd::Path(args) => cmd_path(args),
        Cmd::Neighbours(args) => cmd_neighbours(args),
        Cmd::AuditTables(args) => cmd_audit(args),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

// ---------------------------------------------------------------------------
// Shared argument helpers
// ---------------------------------------------------------------------------

fn params(p: u32) -> Result<Params> {
    Params::new(p).map_err(|e| anyhow!("{e}"))
}

/// Parses an inclusive `a..b` range.
fn parse_range(text: &str) -> Result<(u32, u32)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("range must look like a..b, got {text:?}"))?;
    let lo: u32 = lo.trim().parse().context("range start")?;
    let hi: u32 = hi.trim().parse().context("range end")?;
    if lo > hi {
        bail!("empty range {text:?}");
    }
    Ok((lo, hi))
}

/// Parses an assignment name: the three fixed ranks, `mid:K` or
/// `random:SEED`.
fn parse_assign(text: &str) -> Result<Assignment> {
    match text {
        "leftmost" => Ok(Assignment::Leftmost),
        "penultimate" => Ok(Assignment::Penultimate),
        "rightmost" => Ok(Assignment::Rightmost),
        _ => {
            if let Some(k) = text.strip_prefix("mid:") {
                Ok(Assignment::Mid(k.parse().context("mid rank")?))
            } else if let Some(seed) = text.strip_prefix("random:") {
                Ok(Assignment::Random(seed.parse().context("random seed")?))
            } else {
                bail!(
                    "unknown assignment {text:?} \
                     (expected leftmost, penultimate, rightmost, mid:K or random:SEED)"
                )
            }
        }
    }
}

fn build_tree(
    params: Params,
    kind: TreeKind,
    assign: &str,
    depth: u32,
    max_nodes: u64,
) -> Result<Tree> {
    let assignment = parse_assign(assign)?;
    Ok(Tree::build(params, kind, assignment, depth, max_nodes)?)
}

fn kind_name(kind: TreeKind) -> &'static str {
    match kind {
        TreeKind::White => "white",
        TreeKind::Black => "black",
    }
}

fn system_name(system: System) -> &'static str {
    match system {
        System::Metallic => "metallic",
        System::Nzm => "nzm",
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

// ---------------------------------------------------------------------------
// seq
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SeqOut {
    p: u32,
    kind: &'static str,
    n: [u32; 2],
    values: Vec<String>,
}

fn cmd_seq(args: SeqArgs) -> Result<u8> {
    let params = params(args.p)?;
    let (lo, hi) = parse_range(&args.n)?;
    let kind: TreeKind = args.kind.into();
    let mut table = SequenceTable::new(params);
    let values: Vec<String> = (lo..=hi)
        .map(|n| match kind {
            TreeKind::White => table.metallic(n as usize).to_string(),
            TreeKind::Black => table.black(n as usize).to_string(),
        })
        .collect();
    match args.format {
        Format::Text => println!("{}", values.join(",")),
        Format::Json => print_json(&SeqOut {
            p: args.p,
            kind: kind_name(kind),
            n: [lo, hi],
            values,
        })?,
        Format::Dot => bail!("seq has no dot format"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// encode / decode / inc / dec
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CodeOut {
    p: u32,
    system: &'static str,
    value: String,
    code: String,
}

fn code_output(format: Format, p: u32, system: System, value: &BigUint, code: &str) -> Result<()> {
    match format {
        Format::Text => println!("{code}"),
        Format::Json => print_json(&CodeOut {
            p,
            system: system_name(system),
            value: value.to_string(),
            code: code.to_string(),
        })?,
        Format::Dot => bail!("codes have no dot format"),
    }
    Ok(())
}

fn cmd_encode(args: ValueArgs) -> Result<u8> {
    let params = params(args.p)?;
    let system: System = args.system.into();
    let value: BigUint = args.value.parse().context("value must be a decimal natural")?;
    let code = AnyCode::encode(params, system, &value)?;
    code_output(args.format, args.p, system, &value, &code.to_string())?;
    Ok(0)
}

fn cmd_decode(args: CodeArgs) -> Result<u8> {
    let params = params(args.p)?;
    let system: System = args.system.into();
    let code = AnyCode::parse(params, system, &args.code)?;
    let value = code.value();
    match args.format {
        Format::Text => println!("{value}"),
        Format::Json => print_json(&CodeOut {
            p: args.p,
            system: system_name(system),
            value: value.to_string(),
            code: code.to_string(),
        })?,
        Format::Dot => bail!("codes have no dot format"),
    }
    Ok(0)
}

fn cmd_step(args: CodeArgs, up: bool) -> Result<u8> {
    let params = params(args.p)?;
    let system: System = args.system.into();
    let out = match (system, up) {
        (System::Metallic, true) => {
            metallic_trees::codes::MetallicCode::parse(params, &args.code)?.inc().to_string()
        }
        (System::Metallic, false) => {
            metallic_trees::codes::MetallicCode::parse(params, &args.code)?.dec()?.to_string()
        }
        (System::Nzm, true) => {
            metallic_trees::codes::NzmCode::parse(params, &args.code)?.inc().to_string()
        }
        (System::Nzm, false) => {
            metallic_trees::codes::NzmCode::parse(params, &args.code)?.dec()?.to_string()
        }
    };
    let value = AnyCode::parse(params, system, &out)?.value();
    code_output(args.format, args.p, system, &value, &out)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// tree
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TreeNodeOut {
    num: u64,
    level: u32,
    status: String,
    father: Option<u64>,
    black_rank: u32,
    code: String,
    nzm: String,
}

#[derive(Serialize)]
struct TreeOut {
    p: u32,
    kind: &'static str,
    assign: String,
    depth: u32,
    nodes: Vec<TreeNodeOut>,
}

fn cmd_tree(args: TreeArgs) -> Result<u8> {
    let params = params(args.p)?;
    let kind: TreeKind = args.kind.into();
    let system: System = args.system.into();
    let tree = build_tree(params, kind, &args.assign, args.depth, args.max_nodes)?;
    match args.format {
        Format::Text => {
            println!(
                "# tree p={} kind={} assign={} depth={}",
                args.p,
                kind_name(kind),
                tree.assignment().label(),
                args.depth
            );
            println!("# num level status father rank black_rank code nzm");
            for n in 0..=tree.depth() {
                for node in tree.level(n) {
                    let father = node
                        .father
                        .map_or_else(|| "-".to_string(), |f| f.to_string());
                    println!(
                        "{} {} {} {} {} {} {} {}",
                        node.num,
                        node.level,
                        node.status,
                        father,
                        node.rank(&tree),
                        node.black_rank,
                        tree.metallic_code(node.num)?,
                        tree.nzm_code(node.num)?,
                    );
                }
            }
        }
        Format::Json => {
            let mut nodes = Vec::new();
            for n in 0..=tree.depth() {
                for node in tree.level(n) {
                    nodes.push(TreeNodeOut {
                        num: node.num,
                        level: node.level,
                        status: node.status.to_string(),
                        father: node.father,
                        black_rank: node.black_rank,
                        code: tree.metallic_code(node.num)?.to_string(),
                        nzm: tree.nzm_code(node.num)?.to_string(),
                    });
                }
            }
            print_json(&TreeOut {
                p: args.p,
                kind: kind_name(kind),
                assign: tree.assignment().label(),
                depth: args.depth,
                nodes,
            })?;
        }
        Format::Dot => {
            println!("digraph tree {{");
            println!("  rankdir=TB;");
            println!("  node [shape=circle, fontname=\"monospace\"];");
            for n in 0..=tree.depth() {
                for node in tree.level(n) {
                    let code = tree.code(node.num, system)?;
                    let fill = match node.status {
                        metallic_trees::trees::Status::Black => {
                            ", style=filled, fillcolor=black, fontcolor=white"
                        }
                        metallic_trees::trees::Status::White => "",
                    };
                    println!(
                        "  n{} [label=\"{}\\n{}\"{}];",
                        node.num, node.num, code, fill
                    );
                }
            }
            for n in 0..tree.depth() {
                for node in tree.level(n) {
                    for son in tree.sons(node.num)? {
                        println!(
                            "  n{} -> n{} [label=\"{}\"];",
                            node.num,
                            son.num,
                            son.rank(&tree)
                        );
                    }
                }
            }
            println!("}}");
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// path
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PathOut {
    p: u32,
    kind: &'static str,
    system: &'static str,
    code: String,
    algo: &'static str,
    path: Vec<PathStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Vec<PathStep>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

fn path_text(steps: &[PathStep]) -> String {
    steps
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" -> ")
}

/// Runs the code-driven algorithm for the given tree kind and system.
fn paper_path(params: Params, kind: TreeKind, system: System, code: &str) -> Result<Vec<PathStep>> {
    Ok(match (kind, system) {
        (TreeKind::White, System::Metallic) => {
            path_white_metallic(params, &metallic_trees::codes::MetallicCode::parse(params, code)?)?
        }
        (TreeKind::White, System::Nzm) => {
            path_white_nzm(params, &metallic_trees::codes::NzmCode::parse(params, code)?)?
        }
        (TreeKind::Black, System::Metallic) => {
            path_black_metallic(params, &metallic_trees::codes::MetallicCode::parse(params, code)?)?
        }
        (TreeKind::Black, System::Nzm) => {
            path_black_nzm(params, &metallic_trees::codes::NzmCode::parse(params, code)?)?
        }
    })
}

/// Builds a rightmost-assignment tree just deep enough to hold the node and
/// walks its father chain.
fn oracle_path(
    params: Params,
    kind: TreeKind,
    system: System,
    code: &str,
    max_nodes: u64,
) -> Result<Vec<PathStep>> {
    let value = AnyCode::parse(params, system, code)?.value();
    let num: u64 = value
        .clone()
        .try_into()
        .map_err(|_| anyhow!("node number {value} exceeds the oracle's range"))?;
    if num == 0 {
        bail!("the zero code names no node");
    }
    let level = metallic_trees::sequences::level_of(params, &value, kind) as u32;
    let tree = Tree::build(params, kind, Assignment::Rightmost, level, max_nodes)?;
    Ok(path_oracle(&tree, num)?)
}

fn cmd_path(args: PathArgs) -> Result<u8> {
    let params = params(args.p)?;
    let kind: TreeKind = args.kind.into();
    let system: System = args.system.into();
    let (algo, path, oracle): (&'static str, Vec<PathStep>, Option<Vec<PathStep>>) = match args.algo
    {
        AlgoArg::Paper => ("paper", paper_path(params, kind, system, &args.code)?, None),
        AlgoArg::Oracle => (
            "oracle",
            oracle_path(params, kind, system, &args.code, args.max_nodes)?,
            None,
        ),
        AlgoArg::Both => {
            let paper = paper_path(params, kind, system, &args.code)?;
            let oracle = oracle_path(params, kind, system, &args.code, args.max_nodes)?;
            ("both", paper, Some(oracle))
        }
    };
    let matches = oracle.as_ref().map(|o| *o == path);
    match args.format {
        Format::Text => {
            println!("{}", path_text(&path));
            if let Some(o) = &oracle {
                if matches != Some(true) {
                    println!("oracle: {}", path_text(o));
                    println!("MISMATCH");
                } else {
                    println!("oracle agrees");
                }
            }
        }
        Format::Json => print_json(&PathOut {
            p: args.p,
            kind: kind_name(kind),
            system: system_name(system),
            code: args.code.clone(),
            algo,
            path,
            oracle,
            matches,
        })?,
        Format::Dot => bail!("paths have no dot format"),
    }
    Ok(if matches == Some(false) { 1 } else { 0 })
}

// ---------------------------------------------------------------------------
// neighbours
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct NeighboursOut {
    p: u32,
    kind: &'static str,
    tiling: TilingKind,
    num: u64,
    system: &'static str,
    neighbours: Vec<navigation::NeighbourEntry>,
}

fn cmd_neighbours(args: NeighbourArgs) -> Result<u8> {
    let params = params(args.p)?;
    let kind: TreeKind = args.kind.into();
    let system: System = args.system.into();
    let tiling = TilingKind::from_str(&args.tiling).map_err(|e| anyhow!(e))?;
    let level =
        metallic_trees::sequences::level_of(params, &BigUint::from(args.num.max(1)), kind) as u32;
    let tree = build_tree(params, kind, &args.assign, level + 1, args.max_nodes)?;
    let entries = neighbours(&tree, args.num, tiling, system)?;
    match args.format {
        Format::Text => {
            println!(
                "# neighbours p={} kind={} tiling={} num={} system={}",
                args.p,
                kind_name(kind),
                tiling,
                args.num,
                system_name(system)
            );
            for e in &entries {
                match (e.num, &e.code) {
                    (Some(n), Some(c)) => println!("side {}: {} num={} code={}", e.index, e.role, n, c),
                    _ => println!("side {}: {}", e.index, e.role),
                }
            }
        }
        Format::Json => print_json(&NeighboursOut {
            p: args.p,
            kind: kind_name(kind),
            tiling,
            num: args.num,
            system: system_name(system),
            neighbours: entries,
        })?,
        Format::Dot => bail!("neighbours have no dot format"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// audit-tables
// ---------------------------------------------------------------------------

fn cmd_audit(args: AuditArgs) -> Result<u8> {
    let params = params(args.p)?;
    let mut reports = Vec::new();
    // One report per (tree, code system, tiling): the four closed-form
    // neighbour tables, each read in both tilings.
    let combos = [
        (TreeKind::White, System::Nzm),
        (TreeKind::White, System::Metallic),
        (TreeKind::Black, System::Metallic),
        (TreeKind::Black, System::Nzm),
    ];
    for (kind, system) in combos {
        let tree = Tree::build(params, kind, Assignment::Rightmost, args.depth, args.max_nodes)?;
        for tiling in [TilingKind::P4, TilingKind::PPlus23] {
            reports.push(navigation::table_audit(&tree, tiling, system)?);
        }
    }
    match args.format {
        Format::Json => print_json(&reports)?,
        Format::Text => {
            for r in &reports {
                println!(
                    "table kind={} system={} tiling={} p={} levels={} mismatches={}",
                    kind_name(r.kind),
                    system_name(r.system),
                    r.tiling,
                    r.p,
                    r.levels,
                    r.total_mismatches
                );
                for row in &r.rows {
                    println!(
                        "  {}: {} match, {} mismatch, {} skipped",
                        row.row, row.matches, row.mismatches, row.skipped
                    );
                }
                for note in &r.notes {
                    println!("  note: {note}");
                }
            }
        }
        Format::Dot => bail!("audits have no dot format"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let (lo, hi) = parse_range(&args.p_range)?;
    if lo < 5 {
        bail!("p must be at least 5");
    }
    let report = verify::run(&verify::Options {
        p_lo: lo,
        p_hi: hi,
        depth: args.depth,
        max_nodes: args.max_nodes,
    })?;
    match args.format {
        Format::Text => {
            for rec in &report.records {
                let mut line = format!("{} {} p={}", rec.status, rec.check_id, rec.p);
                if let Some(d) = rec.detail() {
                    line.push_str(&format!(" [{d}]"));
                }
                line.push_str(&format!(" ({} ms)", rec.millis));
                println!("{line}");
                for w in &rec.witnesses {
                    println!("  witness: {w}");
                }
            }
            if report.failed == 0 {
                println!("all {} checks passed", report.records.len());
            } else {
                println!("{} of {} checks FAILED", report.failed, report.records.len());
            }
        }
        Format::Json => print_json(&report)?,
        Format::Dot => bail!("verify has no dot format"),
    }
    Ok(if report.failed == 0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing_is_inclusive_and_validated() {
        assert_eq!(parse_range("0..3").unwrap(), (0, 3));
        assert_eq!(parse_range("5..5").unwrap(), (5, 5));
        assert!(parse_range("7..5").is_err());
        assert!(parse_range("5").is_err());
    }

    #[test]
    fn assignment_names_round_trip_through_labels() {
        for name in ["leftmost", "penultimate", "rightmost", "mid:2", "random:9"] {
            assert_eq!(parse_assign(name).unwrap().label(), name);
        }
        assert!(parse_assign("middle").is_err());
        assert!(parse_assign("mid:x").is_err());
    }
}
