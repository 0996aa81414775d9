//! The cross-check suite behind `metallic verify`.
//!
//! Each check exercises one slice of the library over a whole parameter
//! range and reports pass/fail per `p`, with witnesses for failures. Two
//! checks deliberately assert a *negative*: the non-zero-minimal system
//! has no preferred-son digit off the rightmost assignment, and the
//! published closed-form neighbour tables disagree with the tree on their
//! father rows — those records pass exactly when the expected divergence
//! is reproduced, so a silently "fixed" table would be flagged.

use std::time::Instant;

use anyhow::Result;
use serde::Serialize;

use metallic_trees::codes::{MetallicCode, NzmCode, System};
use metallic_trees::navigation::{
    self, neighbours, path_black_metallic, path_black_nzm, path_oracle, path_white_metallic,
    path_white_nzm, Role, TilingKind,
};
use metallic_trees::sequences::{SequenceTable, TreeKind};
use metallic_trees::trees::{apartness, Assignment, Status, Tree};
use metallic_trees::Params;

/// What to verify: an inclusive `p` range, a tree depth, and the node cap.
pub struct Options {
    pub p_lo: u32,
    pub p_hi: u32,
    pub depth: u32,
    pub max_nodes: u64,
}

/// One check outcome for one `p` (and optionally one tree kind /
/// assignment / code system).
#[derive(Serialize)]
pub struct CheckRecord {
    pub check_id: &'static str,
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<&'static str>,
    pub depth: u32,
    /// `pass`, `fail` or `skipped`.
    pub status: &'static str,
    pub witnesses: Vec<String>,
    pub millis: u64,
}

impl CheckRecord {
    /// Compact tag string for one-line text output.
    pub fn detail(&self) -> Option<String> {
        let parts: Vec<String> = [
            self.kind.map(str::to_string),
            self.system.map(str::to_string),
            self.assignment.clone(),
        ]
        .into_iter()
        .flatten()
        .collect();
        if parts.is_empty() {
            None
        } else {
            Some(parts.join(" "))
        }
    }
}

/// The whole suite's result; `failed == 0` means exit code 0.
#[derive(Serialize)]
pub struct VerifyReport {
    pub p_range: [u32; 2],
    pub depth: u32,
    pub failed: usize,
    pub records: Vec<CheckRecord>,
}

/// A check body returns its witnesses; an empty list is a pass.
type Witnesses = Vec<String>;

struct Ctx {
    p: u32,
    params: Params,
    depth: u32,
    max_nodes: u64,
    records: Vec<CheckRecord>,
}

impl Ctx {
    fn tree(&self, kind: TreeKind, assignment: Assignment, depth: u32) -> Result<Tree> {
        Ok(Tree::build(self.params, kind, assignment, depth, self.max_nodes)?)
    }

    /// Runs one check body under a timer and records the outcome. A body
    /// error (e.g. the node cap) records a failure with the error text.
    fn check<F>(
        &mut self,
        check_id: &'static str,
        kind: Option<TreeKind>,
        assignment: Option<Assignment>,
        system: Option<System>,
        body: F,
    ) where
        F: FnOnce(&Ctx) -> Result<Witnesses>,
    {
        let start = Instant::now();
        let (status, witnesses) = match body(self) {
            Ok(w) if w.is_empty() => ("pass", w),
            Ok(w) => ("fail", w),
            Err(e) => ("fail", vec![format!("error: {e:#}")]),
        };
        self.records.push(CheckRecord {
            check_id,
            p: self.p,
            kind: kind.map(kind_name),
            assignment: assignment.map(|a| a.label()),
            system: system.map(system_name),
            depth: self.depth,
            status,
            witnesses: witnesses.into_iter().take(5).collect(),
            millis: start.elapsed().as_millis() as u64,
        });
    }
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

/// The assignment sample shared by the structural checks: the three named
/// ranks, one interior constant rank and one seeded random rule.
fn assignment_sample() -> [Assignment; 5] {
    [
        Assignment::Leftmost,
        Assignment::Penultimate,
        Assignment::Rightmost,
        Assignment::Mid(2),
        Assignment::Random(1),
    ]
}

/// Runs every check for every `p` in the range and sorts the records by
/// `(check_id, p, tags)`.
pub fn run(opts: &Options) -> Result<VerifyReport> {
    let mut records = Vec::new();
    for p in opts.p_lo..=opts.p_hi {
        let params = Params::new(p)?;
        let mut ctx = Ctx {
            p,
            params,
            depth: opts.depth,
            max_nodes: opts.max_nodes,
            records: Vec::new(),
        };
        check_sequences(&mut ctx);
        check_increment_chain(&mut ctx);
        check_structure(&mut ctx);
        check_preferred_metallic(&mut ctx);
        check_preferred_nzm(&mut ctx);
        check_apartness(&mut ctx);
        check_gaps(&mut ctx);
        check_black_suite(&mut ctx);
        check_marked_subtrees(&mut ctx);
        check_rule_audits(&mut ctx);
        check_paths(&mut ctx);
        check_neighbour_structure(&mut ctx);
        check_table_audits(&mut ctx);
        records.extend(ctx.records);
    }
    records.sort_by(|a, b| {
        (a.check_id, a.p, a.kind, a.system, &a.assignment)
            .cmp(&(b.check_id, b.p, b.kind, b.system, &b.assignment))
    });
    let failed = records.iter().filter(|r| r.status == "fail").count();
    Ok(VerifyReport {
        p_range: [opts.p_lo, opts.p_hi],
        depth: opts.depth,
        failed,
        records,
    })
}

// ---------------------------------------------------------------------------
// The individual checks
// ---------------------------------------------------------------------------

/// Level-size recurrences, the cumulative identity between the black and
/// white sequences, and the white cumulative sums, up to index 12.
fn check_sequences(ctx: &mut Ctx) {
    ctx.check("sequences-recurrences", None, None, None, |ctx| {
        let mut w = Vec::new();
        let mut table = SequenceTable::new(ctx.params);
        let coeff = ctx.params.x();
        for n in 0..=10usize {
            let m2 = table.metallic(n + 2);
            let want = table.metallic(n + 1) * coeff - table.metallic(n);
            if m2 != want {
                w.push(format!("m[{}] breaks the recurrence", n + 2));
            }
            let b2 = table.black(n + 2);
            let want = table.black(n + 1) * coeff - table.black(n);
            if b2 != want {
                w.push(format!("b[{}] breaks the recurrence", n + 2));
            }
        }
        for n in 0..=12usize {
            let bsum = table.cumulative_black(n);
            if bsum != table.metallic(n) {
                w.push(format!("sum of b[0..={n}] != m[{n}]"));
            }
            let msum: num_bigint::BigUint = (0..=n).map(|k| table.metallic(k)).sum();
            if msum != table.cumulative_white(n) {
                w.push(format!("cumulative white sum wrong at {n}"));
            }
        }
        Ok(w)
    });
}

/// A 2000-step increment chain in each system: values advance by one,
/// every code stays canonical (re-validated from raw digits), and `dec`
/// undoes `inc`.
fn check_increment_chain(ctx: &mut Ctx) {
    let steps = 2000u32;
    ctx.check("codes-increment-chain", None, None, Some(System::Metallic), |ctx| {
        let mut w = Vec::new();
        let mut code = MetallicCode::zero(ctx.params);
        for k in 1..=steps {
            let next = code.inc();
            if next.value() != k.into() {
                w.push(format!("inc at step {k} has value {}", next.value()));
                break;
            }
            if MetallicCode::from_digits(ctx.params, next.digits().to_vec()).is_err() {
                w.push(format!("non-canonical code at step {k}: {next}"));
                break;
            }
            if next.dec().ok().as_ref() != Some(&code) {
                w.push(format!("dec does not undo inc at step {k}"));
                break;
            }
            code = next;
        }
        Ok(w)
    });
    ctx.check("codes-increment-chain", None, None, Some(System::Nzm), |ctx| {
        let mut w = Vec::new();
        let mut code = NzmCode::encode(ctx.params, &1u32.into())?;
        for k in 2..=steps {
            let next = code.inc();
            if next.value() != k.into() {
                w.push(format!("inc at step {k} has value {}", next.value()));
                break;
            }
            if NzmCode::from_digits(ctx.params, next.digits().to_vec()).is_err() {
                w.push(format!("non-canonical code at step {k}: {next}"));
                break;
            }
            if next.dec().ok().as_ref() != Some(&code) {
                w.push(format!("dec does not undo inc at step {k}"));
                break;
            }
            code = next;
        }
        Ok(w)
    });
}

/// Tree shape under every sampled assignment: level sizes match the
/// sequences, each level's black-node count equals the previous level's
/// size, and codes decode back to the node number.
fn check_structure(ctx: &mut Ctx) {
    for assignment in assignment_sample() {
        for kind in [TreeKind::White, TreeKind::Black] {
            ctx.check("trees-structure", Some(kind), Some(assignment), None, |ctx| {
                let mut w = Vec::new();
                let tree = ctx.tree(kind, assignment, ctx.depth)?;
                let mut table = SequenceTable::new(ctx.params);
                for n in 0..=ctx.depth {
                    let size = tree.level(n).len();
                    let want = match kind {
                        TreeKind::White => table.metallic(n as usize),
                        TreeKind::Black => table.black(n as usize),
                    };
                    if num_bigint::BigUint::from(size) != want {
                        w.push(format!("level {n} has {size} nodes, expected {want}"));
                    }
                    if n > 0 {
                        let blacks = tree
                            .level(n)
                            .iter()
                            .filter(|nd| nd.status == Status::Black)
                            .count();
                        let fathers = tree.level(n - 1).len();
                        if blacks != fathers {
                            w.push(format!("level {n}: {blacks} black nodes, expected {fathers}"));
                        }
                    }
                }
                // Sampled decode round trip in both systems.
                for num in (1..=tree.last_num()).step_by(7) {
                    for system in [System::Metallic, System::Nzm] {
                        let code = tree.code(num, system)?;
                        if code.value() != num.into() {
                            w.push(format!("node {num}: {system_name} code decodes wrong",
                                system_name = system_name(system)));
                        }
                    }
                }
                Ok(w)
            });
        }
    }
}

/// The metallic 0-son is preferred in the white tree under *every*
/// assignment, and the resulting 0-branch lands on the level sizes.
fn check_preferred_metallic(ctx: &mut Ctx) {
    for assignment in assignment_sample() {
        ctx.check(
            "trees-preferred-son-metallic",
            Some(TreeKind::White),
            Some(assignment),
            Some(System::Metallic),
            |ctx| {
                let mut w = Vec::new();
                let tree = ctx.tree(TreeKind::White, assignment, ctx.depth)?;
                let report = tree.check_preferred_son(System::Metallic, 0)?;
                if !report.holds {
                    for wit in report.witnesses.iter().take(3) {
                        w.push(format!("node {} has {} matching sons", wit.num, wit.matching_sons));
                    }
                }
                let branch = tree.zero_branch(ctx.depth)?;
                let mut table = SequenceTable::new(ctx.params);
                for (n, &num) in branch.iter().enumerate() {
                    if num_bigint::BigUint::from(num) != table.metallic(n) {
                        w.push(format!("0-branch node {num} at depth {n} is not m[{n}]"));
                    }
                }
                Ok(w)
            },
        );
    }
}

/// The nzm 1-son is preferred only under the rightmost assignment: it
/// holds there and is witnessed broken under leftmost and penultimate.
fn check_preferred_nzm(ctx: &mut Ctx) {
    ctx.check(
        "trees-preferred-son-nzm",
        Some(TreeKind::White),
        None,
        Some(System::Nzm),
        |ctx| {
            let mut w = Vec::new();
            let depth = ctx.depth.min(4);
            let tree = ctx.tree(TreeKind::White, Assignment::Rightmost, depth)?;
            if !tree.check_preferred_son(System::Nzm, 1)?.holds {
                w.push("rightmost: 1-son property broken".into());
            }
            for assignment in [Assignment::Leftmost, Assignment::Penultimate] {
                let tree = ctx.tree(TreeKind::White, assignment, depth)?;
                let report = tree.check_preferred_son(System::Nzm, 1)?;
                if report.holds || report.witnesses.is_empty() {
                    w.push(format!("{}: expected witnessed failure", assignment.label()));
                }
            }
            Ok(w)
        },
    );
}

/// First-son offsets between the leftmost build and every other sampled
/// assignment stay in {0,1}, and consecutive nodes move by the
/// colour-difference step.
fn check_apartness(ctx: &mut Ctx) {
    for alpha in [
        Assignment::Penultimate,
        Assignment::Rightmost,
        Assignment::Mid(2),
        Assignment::Random(1),
    ] {
        ctx.check("trees-apartness", Some(TreeKind::White), Some(alpha), None, |ctx| {
            let mut w = Vec::new();
            let depth = ctx.depth.min(4);
            let l = ctx.tree(TreeKind::White, Assignment::Leftmost, depth)?;
            let a = ctx.tree(TreeKind::White, alpha, depth)?;
            for n in 0..depth {
                let nums: Vec<u64> = l.level(n).iter().map(|nd| nd.num).collect();
                for &num in &nums {
                    let delta = apartness(&l, &a, num)?;
                    if !(0..=1).contains(&delta) {
                        w.push(format!("node {num}: offset {delta} outside 0..=1"));
                    }
                }
                for pair in nums.windows(2) {
                    let step = apartness(&l, &a, pair[1])? - apartness(&l, &a, pair[0])?;
                    let expected = match (l.node(pair[0])?.status, a.node(pair[0])?.status) {
                        (Status::White, Status::Black) => -1,
                        (Status::Black, Status::White) => 1,
                        _ => 0,
                    };
                    if step != expected {
                        w.push(format!("node {}: step {step}, expected {expected}", pair[0]));
                    }
                }
            }
            Ok(w)
        });
    }
}

/// Distances between consecutive marker-signature nodes are `p−3` or
/// `p−2`, with `p−3` exactly on the doubled-marker suffix.
fn check_gaps(ctx: &mut Ctx) {
    for (system, marker) in [(System::Metallic, 0), (System::Nzm, 1)] {
        ctx.check("trees-gap-audit", Some(TreeKind::White), None, Some(system), |ctx| {
            let mut w = Vec::new();
            let tree = ctx.tree(TreeKind::White, Assignment::Rightmost, ctx.depth)?;
            for level in 2..=ctx.depth {
                for entry in tree.zero_node_gap_audit(level, system, marker)? {
                    if !entry.criterion_ok {
                        w.push(format!(
                            "level {level} node {} (code {}): gap {}",
                            entry.num, entry.code, entry.gap
                        ));
                    }
                }
            }
            Ok(w)
        });
    }
}

/// The black tree's preferred-son landscape: the metallic 0-son holds
/// under rightmost, splits into 0-or-2 matches under leftmost, and no nzm
/// digit is preferred under either assignment.
fn check_black_suite(ctx: &mut Ctx) {
    ctx.check(
        "trees-black-preferred-son",
        Some(TreeKind::Black),
        None,
        None,
        |ctx| {
            let mut w = Vec::new();
            let depth = ctx.depth.min(4);
            let rho = ctx.tree(TreeKind::Black, Assignment::Rightmost, depth)?;
            if !rho.check_preferred_son(System::Metallic, 0)?.holds {
                w.push("rightmost metallic: 0-son property broken".into());
            }
            let lambda = ctx.tree(TreeKind::Black, Assignment::Leftmost, depth)?;
            let report = lambda.check_preferred_son(System::Metallic, 0)?;
            if report.holds {
                w.push("leftmost metallic: unexpectedly holds".into());
            }
            for wit in &report.witnesses {
                if wit.matching_sons != 0 && wit.matching_sons != 2 {
                    w.push(format!(
                        "leftmost metallic: node {} has {} matching sons (expected 0 or 2)",
                        wit.num, wit.matching_sons
                    ));
                    break;
                }
            }
            for assignment in [Assignment::Rightmost, Assignment::Leftmost] {
                let tree = ctx.tree(TreeKind::Black, assignment, depth)?;
                for digit in 1..=ctx.params.x() {
                    let report = tree.check_preferred_son(System::Nzm, digit)?;
                    if report.holds || report.witnesses.is_empty() {
                        w.push(format!(
                            "{} nzm digit {digit}: expected witnessed failure",
                            assignment.label()
                        ));
                    }
                }
            }
            Ok(w)
        },
    );
}

/// The marker-signature nodes of each tree form a numbering-preserving
/// copy of the tree one level up.
fn check_marked_subtrees(ctx: &mut Ctx) {
    let cases = [
        (TreeKind::White, System::Metallic, 0),
        (TreeKind::White, System::Nzm, 1),
        (TreeKind::Black, System::Metallic, 0),
    ];
    for (kind, system, marker) in cases {
        ctx.check("trees-marked-subtrees", Some(kind), None, Some(system), |ctx| {
            let tree = ctx.tree(kind, Assignment::Rightmost, ctx.depth)?;
            let report = tree.extract_marked_subtree(system, marker)?;
            Ok(if report.isomorphic {
                Vec::new()
            } else {
                report.mismatches.into_iter().take(3).collect()
            })
        });
    }
}

/// Every supported closed-form son table matches the tree it describes.
fn check_rule_audits(ctx: &mut Ctx) {
    let cases = [
        (TreeKind::White, Assignment::Leftmost, System::Metallic),
        (TreeKind::White, Assignment::Penultimate, System::Metallic),
        (TreeKind::White, Assignment::Rightmost, System::Metallic),
        (TreeKind::White, Assignment::Rightmost, System::Nzm),
        (TreeKind::Black, Assignment::Leftmost, System::Metallic),
        (TreeKind::Black, Assignment::Rightmost, System::Metallic),
        (TreeKind::Black, Assignment::Leftmost, System::Nzm),
        (TreeKind::Black, Assignment::Rightmost, System::Nzm),
    ];
    for (kind, assignment, system) in cases {
        ctx.check("trees-rule-audits", Some(kind), Some(assignment), Some(system), |ctx| {
            let depth = ctx.depth.min(4);
            let tree = ctx.tree(kind, assignment, depth)?;
            let report = tree.rule_audit(system)?;
            // The black-tree leftmost nzm table is only valid through
            // level 3: deeper, signature-d black nodes and the whites
            // right after them follow different rows. That divergence is
            // expected report content, not a failure — but it must be
            // reproduced, and the shallow levels must still conform.
            if kind == TreeKind::Black
                && assignment == Assignment::Leftmost
                && system == System::Nzm
            {
                let mut w = Vec::new();
                let shallow = ctx.tree(kind, assignment, depth.min(3))?;
                if !shallow.rule_audit(system)?.conforming {
                    w.push("diverges already at levels <= 2".into());
                }
                if depth >= 4 && report.conforming {
                    w.push("expected the known level-3 divergence, audit is clean".into());
                }
                return Ok(w);
            }
            Ok(if report.conforming {
                Vec::new()
            } else {
                report
                    .entries
                    .iter()
                    .filter(|e| !e.conform)
                    .take(3)
                    .map(|e| format!("node {} ({}) does not conform", e.num, e.class))
                    .collect()
            })
        });
    }
}

/// The four code-driven path algorithms equal the father-chain oracle on
/// every node of the rightmost-assignment trees.
fn check_paths(ctx: &mut Ctx) {
    for kind in [TreeKind::White, TreeKind::Black] {
        for system in [System::Metallic, System::Nzm] {
            ctx.check("navigation-paths-oracle", Some(kind), None, Some(system), |ctx| {
                let mut w = Vec::new();
                let depth = ctx.depth.min(5);
                let tree = ctx.tree(kind, Assignment::Rightmost, depth)?;
                for num in 1..=tree.last_num() {
                    let expect = path_oracle(&tree, num)?;
                    let got = match (kind, system) {
                        (TreeKind::White, System::Metallic) => {
                            path_white_metallic(ctx.params, &tree.metallic_code(num)?)?
                        }
                        (TreeKind::White, System::Nzm) => {
                            path_white_nzm(ctx.params, &tree.nzm_code(num)?)?
                        }
                        (TreeKind::Black, System::Metallic) => {
                            path_black_metallic(ctx.params, &tree.metallic_code(num)?)?
                        }
                        (TreeKind::Black, System::Nzm) => {
                            path_black_nzm(ctx.params, &tree.nzm_code(num)?)?
                        }
                    };
                    if got != expect {
                        w.push(format!("node {num}: algorithm disagrees with the oracle"));
                        if w.len() >= 3 {
                            break;
                        }
                    }
                }
                Ok(w)
            });
        }
    }
}

/// Side counts and the mutual roles (father/son, prev/next) of the
/// neighbour layout, in both tilings.
fn check_neighbour_structure(ctx: &mut Ctx) {
    for kind in [TreeKind::White, TreeKind::Black] {
        for tiling in [TilingKind::P4, TilingKind::PPlus23] {
            ctx.check("navigation-neighbour-structure", Some(kind), None, None, |ctx| {
                let mut w = Vec::new();
                let depth = ctx.depth.min(4);
                let tree = ctx.tree(kind, Assignment::Rightmost, depth)?;
                let want_sides = match tiling {
                    TilingKind::P4 => ctx.p,
                    TilingKind::PPlus23 => ctx.p + 2,
                };
                for n in 0..depth {
                    for node in tree.level(n) {
                        let entries = neighbours(&tree, node.num, tiling, System::Metallic)?;
                        if entries.len() as u32 != want_sides {
                            w.push(format!("node {}: {} sides", node.num, entries.len()));
                            continue;
                        }
                        for e in &entries {
                            match e.role {
                                // A son's own neighbour list must name us as father.
                                Role::Son(_) if node.level + 1 < depth => {
                                    let son = e.num.unwrap();
                                    let back = neighbours(&tree, son, tiling, System::Metallic)?;
                                    if back[0].num != Some(node.num) {
                                        w.push(format!("son {son} does not point back"));
                                    }
                                }
                                Role::SameLevelNext => {
                                    if e.num != Some(node.num + 1) {
                                        w.push(format!("node {}: bad next", node.num));
                                    }
                                }
                                Role::SameLevelPrev => {
                                    if e.num != Some(node.num - 1) {
                                        w.push(format!("node {}: bad prev", node.num));
                                    }
                                }
                                _ => {}
                            }
                        }
                        if w.len() >= 3 {
                            return Ok(w);
                        }
                    }
                }
                Ok(w)
            });
        }
    }
}

/// The closed-form neighbour tables against the tree. The black-tree
/// metallic table must match exactly; the white-tree tables and the
/// black-tree nzm table must reproduce their known father/uncle-row
/// divergence (and nothing else) — see the module docs.
fn check_table_audits(ctx: &mut Ctx) {
    for (kind, system) in [
        (TreeKind::White, System::Nzm),
        (TreeKind::White, System::Metallic),
        (TreeKind::Black, System::Metallic),
        (TreeKind::Black, System::Nzm),
    ] {
        ctx.check("navigation-table-audits", Some(kind), None, Some(system), |ctx| {
            let mut w = Vec::new();
            let tree = ctx.tree(kind, Assignment::Rightmost, ctx.depth.min(5))?;
            for tiling in [TilingKind::P4, TilingKind::PPlus23] {
                let report = navigation::table_audit(&tree, tiling, system)?;
                let exact = kind == TreeKind::Black && system == System::Metallic;
                if exact && report.total_mismatches != 0 {
                    w.push(format!("{tiling}: {} mismatches, expected none", report.total_mismatches));
                }
                if kind == TreeKind::White {
                    // Only the father and black-uncle rows may diverge.
                    for row in &report.rows {
                        let divergent =
                            row.row.ends_with("/father") || row.row.ends_with("/uncle");
                        if !divergent && row.mismatches != 0 {
                            w.push(format!("{tiling} row {}: unexpected mismatches", row.row));
                        }
                    }
                    // The published father rows disagree with the tree; a
                    // clean audit here would mean the divergence was lost.
                    let father_mismatches: u64 = report
                        .rows
                        .iter()
                        .filter(|r| r.row.ends_with("/father"))
                        .map(|r| r.mismatches)
                        .sum();
                    if father_mismatches == 0 {
                        w.push(format!("{tiling}: father-row divergence not reproduced"));
                    }
                }
                if kind == TreeKind::Black && system == System::Nzm {
                    // Here only the father rows are known-exact; the other
                    // rows carry documented divergences.
                    for row in &report.rows {
                        if row.row.ends_with("/father") && row.mismatches != 0 {
                            w.push(format!("{tiling} row {}: father row diverged", row.row));
                        }
                    }
                }
            }
            Ok(w)
        });
    }
}
