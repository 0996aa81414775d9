//! End-to-end acceptance suite.
//!
//! Eleven numbered criteria cover the whole surface: sequences, code
//! arithmetic, preferred sons in both systems and both trees, assignment
//! apartness, marker gaps, marked-subtree isomorphisms, the path
//! algorithms against the breadth-first oracle, the neighbour layout with
//! its closed-form table audits, and the CLI itself. Each criterion is
//! one test that prints a single `ACCEPTANCE <n> PASS` line on success.

use std::process::Command;

use num_bigint::BigUint;

use metallic_trees::codes::{MetallicCode, NzmCode, System};
use metallic_trees::navigation::{
    self, neighbours, path_black_metallic, path_black_nzm, path_oracle, path_white_metallic,
    path_white_nzm, Role, TilingKind,
};
use metallic_trees::sequences::{SequenceTable, TreeKind};
use metallic_trees::trees::{apartness, Assignment, Status, Tree};
use metallic_trees::Params;

fn params(p: u32) -> Params {
    Params::new(p).unwrap()
}

fn build(p: u32, kind: TreeKind, assignment: Assignment, depth: u32) -> Tree {
    Tree::build(params(p), kind, assignment, depth, 10_000_000).unwrap()
}

/// The named assignments, every constant rank, and 25 seeded random rules.
fn full_assignment_set(p: u32) -> Vec<Assignment> {
    let mut set = vec![
        Assignment::Leftmost,
        Assignment::Penultimate,
        Assignment::Rightmost,
    ];
    set.extend((1..=p - 3).map(Assignment::Mid));
    set.extend((0..25).map(Assignment::Random));
    set
}

#[test]
fn criterion_01_sequence_recurrences() {
    for p in 5..=12u32 {
        let mut t = SequenceTable::new(params(p));
        let coeff = p - 2;
        for n in 0..=10usize {
            assert_eq!(
                t.metallic(n + 2),
                t.metallic(n + 1) * coeff - t.metallic(n),
                "p={p} m[{}]",
                n + 2
            );
            assert_eq!(
                t.black(n + 2),
                t.black(n + 1) * coeff - t.black(n),
                "p={p} b[{}]",
                n + 2
            );
            assert_eq!(
                t.cumulative_white(n + 2),
                t.cumulative_white(n + 1) * coeff - t.cumulative_white(n) + 1u32,
                "p={p} M[{}]",
                n + 2
            );
        }
        for n in 0..=12usize {
            assert_eq!(t.cumulative_black(n), t.metallic(n), "p={p} B[{n}] = m[{n}]");
        }
    }
    println!("ACCEPTANCE 1 PASS: sequence recurrences and B_n = m_n for p in 5..=12, n <= 12");
}

#[test]
fn criterion_02_increment_chains() {
    for p in 5..=12u32 {
        let q = params(p);
        let mut code = MetallicCode::zero(q);
        for n in 1..=10_000u32 {
            code = code.inc();
            assert_eq!(code, MetallicCode::encode(q, &n.into()), "p={p} metallic step {n}");
            // Canonical by construction: re-validating the raw digits
            // proves no forbidden factor ever appears.
            MetallicCode::from_digits(q, code.digits().to_vec()).unwrap();
            assert_eq!(code.dec().unwrap().value(), (n - 1).into(), "p={p} dec at {n}");
        }
        let mut code = NzmCode::encode(q, &1u32.into()).unwrap();
        for n in 2..=10_000u32 {
            code = code.inc();
            assert_eq!(code, NzmCode::encode(q, &n.into()).unwrap(), "p={p} nzm step {n}");
            NzmCode::from_digits(q, code.digits().to_vec()).unwrap();
            assert_eq!(code.dec().unwrap().value(), (n - 1).into(), "p={p} nzm dec at {n}");
        }
    }
    println!("ACCEPTANCE 2 PASS: 10^4-step increment chains match encode, dec undoes inc, p in 5..=12");
}

#[test]
fn criterion_03_metallic_preferred_son_universal() {
    for p in [5u32, 6, 7, 9, 12] {
        let mut t = SequenceTable::new(params(p));
        for assignment in full_assignment_set(p) {
            let tree = build(p, TreeKind::White, assignment, 5);
            let report = tree.check_preferred_son(System::Metallic, 0).unwrap();
            assert!(
                report.holds,
                "p={p} {}: {} witnesses",
                assignment.label(),
                report.witnesses.len()
            );
            let branch = tree.zero_branch(5).unwrap();
            for (n, &num) in branch.iter().enumerate() {
                assert_eq!(BigUint::from(num), t.metallic(n), "p={p} 0-branch depth {n}");
            }
        }
    }
    println!("ACCEPTANCE 3 PASS: metallic 0-son unique under every assignment, 0-branch is 1, m_1..m_5");
}

#[test]
fn criterion_04_nzm_preferred_son_needs_rightmost() {
    for p in [5u32, 7, 9] {
        let tree = build(p, TreeKind::White, Assignment::Rightmost, 5);
        assert!(
            tree.check_preferred_son(System::Nzm, 1).unwrap().holds,
            "p={p} rightmost"
        );
        for assignment in [Assignment::Leftmost, Assignment::Penultimate] {
            let tree = build(p, TreeKind::White, assignment, 5);
            let report = tree.check_preferred_son(System::Nzm, 1).unwrap();
            assert!(!report.holds, "p={p} {}", assignment.label());
            assert!(
                !report.witnesses.is_empty(),
                "p={p} {}: failure must be witnessed",
                assignment.label()
            );
        }
    }
    println!("ACCEPTANCE 4 PASS: nzm 1-son holds under rightmost only, violations witnessed");
}

#[test]
fn criterion_05_apartness_bounds_and_step_law() {
    for p in [5u32, 6, 7, 9, 12] {
        let depth = if p >= 9 { 4 } else { 5 };
        let l = build(p, TreeKind::White, Assignment::Leftmost, depth);
        for alpha in full_assignment_set(p) {
            let a = build(p, TreeKind::White, alpha, depth);
            for n in 0..depth {
                let nums: Vec<u64> = l.level(n).iter().map(|nd| nd.num).collect();
                for &num in &nums {
                    let delta = apartness(&l, &a, num).unwrap();
                    assert!(
                        (0..=1).contains(&delta),
                        "p={p} {} node {num}: delta {delta}",
                        alpha.label()
                    );
                }
                for w in nums.windows(2) {
                    let step = apartness(&l, &a, w[1]).unwrap() - apartness(&l, &a, w[0]).unwrap();
                    let expected = match (
                        l.node(w[0]).unwrap().status,
                        a.node(w[0]).unwrap().status,
                    ) {
                        (Status::White, Status::Black) => -1,
                        (Status::Black, Status::White) => 1,
                        _ => 0,
                    };
                    assert_eq!(step, expected, "p={p} {} node {}", alpha.label(), w[0]);
                }
            }
        }
    }
    println!("ACCEPTANCE 5 PASS: apartness in {{0,1}} with the node-by-node step law, full assignment set");
}

#[test]
fn criterion_06_marker_gap_laws() {
    for p in [5u32, 7, 9] {
        let tree = build(p, TreeKind::White, Assignment::Rightmost, 6);
        for (system, marker) in [(System::Metallic, 0u32), (System::Nzm, 1)] {
            let mut seen = 0usize;
            for level in 2..=6u32 {
                for entry in tree.zero_node_gap_audit(level, system, marker).unwrap() {
                    assert!(
                        entry.criterion_ok,
                        "p={p} {system:?} level {level} node {} (code {}): gap {}",
                        entry.num, entry.code, entry.gap
                    );
                    seen += 1;
                }
            }
            assert!(seen > 0, "p={p} {system:?}: no gaps audited");
        }
    }
    println!("ACCEPTANCE 6 PASS: marker gaps in {{p-3, p-2}} with the exact doubled-suffix criterion, levels 2..6");
}

#[test]
fn criterion_07_black_tree_preferred_son_landscape() {
    for p in [5u32, 6, 7, 9, 12] {
        // Rightmost assignment: the metallic 0-son property holds.
        let rho = build(p, TreeKind::Black, Assignment::Rightmost, 5);
        assert!(
            rho.check_preferred_son(System::Metallic, 0).unwrap().holds,
            "p={p} rightmost metallic"
        );
        // Leftmost assignment: counting signature-0 sons per interior
        // node gives 0 for the leftmost node of a level, 2 for the
        // rightmost, and 1 everywhere else (root excepted).
        let lambda = build(p, TreeKind::Black, Assignment::Leftmost, 5);
        for n in 1..5u32 {
            let first = lambda.level_start(n);
            let last = first + lambda.level(n).len() as u64 - 1;
            for node in lambda.level(n) {
                let zero_sons = lambda
                    .sons(node.num)
                    .unwrap()
                    .iter()
                    .filter(|s| {
                        lambda.metallic_code(s.num).unwrap().signature() == 0
                    })
                    .count();
                let expected = if node.num == first {
                    0
                } else if node.num == last {
                    2
                } else {
                    1
                };
                assert_eq!(
                    zero_sons, expected,
                    "p={p} node {} (level {n}): signature-0 sons",
                    node.num
                );
            }
        }
        // nzm codes: no digit is preferred under any assignment.
        let x = p - 2;
        for assignment in full_assignment_set(p) {
            let tree = build(p, TreeKind::Black, assignment, 4);
            for digit in 1..=x {
                let report = tree.check_preferred_son(System::Nzm, digit).unwrap();
                assert!(!report.holds, "p={p} {} nzm digit {digit}", assignment.label());
                assert!(
                    !report.witnesses.is_empty(),
                    "p={p} {} nzm digit {digit}: unwitnessed",
                    assignment.label()
                );
            }
        }
    }
    println!("ACCEPTANCE 7 PASS: black-tree preferred sons — rightmost metallic holds, leftmost 0/2 pattern, nzm fails witnessed for every digit and assignment");
}

#[test]
fn criterion_08_marked_subtree_isomorphisms() {
    for p in [5u32, 7, 9] {
        let cases = [
            (TreeKind::White, System::Metallic, 0u32),
            (TreeKind::White, System::Nzm, 1),
            (TreeKind::Black, System::Metallic, 0),
        ];
        for (kind, system, marker) in cases {
            let tree = build(p, kind, Assignment::Rightmost, 5);
            let report = tree.extract_marked_subtree(system, marker).unwrap();
            assert!(
                report.isomorphic,
                "p={p} {kind:?} {system:?} marker {marker}: {:?}",
                report.mismatches
            );
            // Condition (0): marker counts on levels 1..=5 equal the
            // host's level sizes 0..=4 — the depth-4 original.
            let expected: Vec<u64> = (0..5u32).map(|n| tree.level(n).len() as u64).collect();
            assert_eq!(report.marked_counts, expected, "p={p} {kind:?} {system:?}");
        }
    }
    println!("ACCEPTANCE 8 PASS: the three marked subtrees at depth 5 replicate the depth-4 original");
}

#[test]
fn criterion_09_path_algorithms_equal_oracle() {
    for p in [5u32, 7, 9] {
        for kind in [TreeKind::White, TreeKind::Black] {
            let tree = build(p, kind, Assignment::Rightmost, 6);
            for num in 1..=tree.last_num() {
                let expect = path_oracle(&tree, num).unwrap();
                let metallic = tree.metallic_code(num).unwrap();
                let nzm = tree.nzm_code(num).unwrap();
                let (got_m, got_n) = match kind {
                    TreeKind::White => (
                        path_white_metallic(params(p), &metallic).unwrap(),
                        path_white_nzm(params(p), &nzm).unwrap(),
                    ),
                    TreeKind::Black => (
                        path_black_metallic(params(p), &metallic).unwrap(),
                        path_black_nzm(params(p), &nzm).unwrap(),
                    ),
                };
                assert_eq!(got_m, expect, "p={p} {kind:?} node {num} metallic path");
                assert_eq!(got_n, expect, "p={p} {kind:?} node {num} nzm path");
            }
        }
    }
    println!("ACCEPTANCE 9 PASS: all four path algorithms equal the breadth-first oracle, p in {{5,7,9}}, levels 0..6");
}

#[test]
fn criterion_10_neighbour_layout_and_table_audits() {
    for p in [5u32, 7, 9] {
        for kind in [TreeKind::White, TreeKind::Black] {
            let tree = build(p, kind, Assignment::Rightmost, 6);
            for tiling in [TilingKind::P4, TilingKind::PPlus23] {
                let want_sides = match tiling {
                    TilingKind::P4 => p,
                    TilingKind::PPlus23 => p + 2,
                } as usize;
                for n in 0..6u32 {
                    for node in tree.level(n) {
                        let entries =
                            neighbours(&tree, node.num, tiling, System::Metallic).unwrap();
                        assert_eq!(entries.len(), want_sides, "p={p} node {}", node.num);
                        for e in &entries {
                            if let Role::Son(_) = e.role {
                                if node.level + 1 < 6 {
                                    let back = neighbours(
                                        &tree,
                                        e.num.unwrap(),
                                        tiling,
                                        System::Metallic,
                                    )
                                    .unwrap();
                                    assert_eq!(back[0].role, Role::Father);
                                    assert_eq!(
                                        back[0].num,
                                        Some(node.num),
                                        "p={p}: son {} must point back to {}",
                                        e.num.unwrap(),
                                        node.num
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        // The black-tree metallic table matches the tree exactly.
        let black = build(p, TreeKind::Black, Assignment::Rightmost, 5);
        for tiling in [TilingKind::P4, TilingKind::PPlus23] {
            let report = navigation::table_audit(&black, tiling, System::Metallic).unwrap();
            assert_eq!(report.total_mismatches, 0, "p={p} {tiling} black metallic");
        }
        // The white-tree tables must reproduce the documented father-row
        // discrepancy, deterministically: the report is the acceptance
        // object, so two runs must serialize identically.
        let white = build(p, TreeKind::White, Assignment::Rightmost, 5);
        for system in [System::Metallic, System::Nzm] {
            for tiling in [TilingKind::P4, TilingKind::PPlus23] {
                let report = navigation::table_audit(&white, tiling, system).unwrap();
                let father_mismatches: u64 = report
                    .rows
                    .iter()
                    .filter(|r| r.row.ends_with("/father"))
                    .map(|r| r.mismatches)
                    .sum();
                assert!(
                    father_mismatches > 0,
                    "p={p} {tiling} white {system:?}: father discrepancy not reported"
                );
                let again = navigation::table_audit(&white, tiling, system).unwrap();
                assert_eq!(
                    serde_json::to_string(&report).unwrap(),
                    serde_json::to_string(&again).unwrap(),
                    "p={p} {tiling} white {system:?}: audit not deterministic"
                );
            }
        }
    }
    println!("ACCEPTANCE 10 PASS: side counts and role symmetry to level 5; black metallic table exact; white father discrepancy reported deterministically");
}

#[test]
fn criterion_11_cli_golden_and_verify() {
    let bin = env!("CARGO_BIN_EXE_metallic");
    let golden_dir = format!("{}/tests/golden", env!("CARGO_MANIFEST_DIR"));
    let cases: &[(&str, &[&str])] = &[
        ("encode-p5.txt", &["encode", "--p", "5", "--system", "metallic", "8"]),
        ("decode-p5.txt", &["decode", "--p", "5", "--system", "metallic", "1,0,0"]),
        (
            "tree-p5-white-text.txt",
            &["tree", "--p", "5", "--kind", "white", "--assign", "rightmost", "--depth", "2"],
        ),
        (
            "tree-p9-black-text.txt",
            &["tree", "--p", "9", "--kind", "black", "--assign", "rightmost", "--depth", "2"],
        ),
        (
            "path-p5.txt",
            &["path", "--p", "5", "--kind", "white", "--system", "metallic", "--code", "2,1", "--algo", "both"],
        ),
        (
            "path-p9.txt",
            &["path", "--p", "9", "--kind", "black", "--system", "nzm", "--code", "2,3", "--algo", "both"],
        ),
        (
            "neighbours-p5.txt",
            &["neighbours", "--p", "5", "--kind", "white", "--tiling", "p4", "--num", "3"],
        ),
    ];
    for (name, args) in cases {
        let out = Command::new(bin).args(*args).output().unwrap();
        assert!(out.status.success(), "{name}: {:?}", out.status);
        let expected = std::fs::read_to_string(format!("{golden_dir}/{name}")).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{name}");
    }
    let out = Command::new(bin)
        .args(["verify", "--p-range", "5..9", "--depth", "5"])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "verify must exit 0; stdout tail: {}",
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .rev()
            .take(8)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!("ACCEPTANCE 11 PASS: golden-file equality at p in {{5,9}} and verify 5..9 depth 5 exits 0");
}
