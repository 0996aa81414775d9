//! Finite prefixes of the white and black metallic trees.
//!
//! Both trees are generated level by level from two substitution rules:
//! a white node begets `p−2` sons, a black node `p−3`, and exactly one son
//! of every node is black. The *white* tree has a white root (level sizes
//! `m_n`), the *black* tree a black root (level sizes `b_n`). Nodes carry
//! the natural numbering: breadth-first, root = 1, each node's sons
//! consecutive. Which son is black is decided by an [`Assignment`] — a
//! per-node rank choice — and everything observable about a tree
//! (statuses, son intervals, first-son numbers) flows from that choice.
//!
//! The module provides:
//!
//! - [`Tree::build`]: deterministic construction up to a depth, guarded by
//!   a node budget (level sizes grow like `(p−2)^n`);
//! - code plumbing ([`Tree::code`]) delegating to the `codes` module;
//! - [`apartness`]: the first-son offset `β_ℓ(ν) − α_ℓ(ν)` between two
//!   assignments of the same tree shape;
//! - [`Tree::check_preferred_son`]: does every node have exactly one son
//!   whose code is the father's code with a fixed digit appended?
//! - [`Tree::zero_node_gap_audit`]: distances between consecutive
//!   marker-signature nodes on a level, with the suffix criterion that
//!   separates gap `p−3` from gap `p−2`;
//! - [`Tree::rule_audit`]: checks each node's sons (codes and statuses)
//!   against the closed-form son tables that exist for the built-in
//!   assignments, reporting — not hiding — any divergence;
//! - [`Tree::extract_marked_subtree`]: the marker-signature nodes form a
//!   copy of the tree one level shallower; the extraction verifies the
//!   numbering-preserving correspondence explicitly;
//! - [`Tree::zero_branch`] / [`Tree::zero_path_from`]: iterated
//!   preferred-son chains.
//!
//! Trees are stored as flat per-level arrays; a [`Node`] is plain copyable
//! data and fathers/sons are computed from stored intervals, so a built
//! tree is immutable and cheap to share.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{AnyCode, CodeError, MetallicCode, NzmCode, System};
use crate::params::Params;
use crate::sequences::{SequenceTable, TreeKind};

/// Colour of a node; fixes its number of sons (`p−2` white, `p−3` black).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// `p−2` sons.
    White,
    /// `p−3` sons.
    Black,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::White => write!(f, "white"),
            Status::Black => write!(f, "black"),
        }
    }
}

/// Signature of a [`Assignment::Custom`] rank rule: given the parameter
/// pack, the node's number, its status and its number of sons, return the
/// black son's rank in `1..=sons_count`.
pub type RankRule = fn(Params, u64, Status, u32) -> u32;

/// A per-node choice of which son is black.
///
/// The built-ins choose a fixed rank: `Leftmost` = 1, `Penultimate` =
/// `sons_count − 1`, `Rightmost` = `sons_count`, `Mid(k)` = the constant
/// `k` (exposed for `k ∈ 1..=p−3`; `k ∈ {1, p−4, p−3}` overlaps a named
/// variant — see [`Assignment::overlaps_named`]). `Random(seed)` draws the
/// rank from a splitmix64-style generator keyed by `(seed, node number)`,
/// so the same seed reproduces the same tree on every platform. `Custom`
/// carries an arbitrary rank rule plus a label for reports.
#[derive(Debug, Clone, Copy)]
pub enum Assignment {
    /// Black son at rank 1.
    Leftmost,
    /// Black son at rank `sons_count − 1`.
    Penultimate,
    /// Black son at rank `sons_count`.
    Rightmost,
    /// Black son at the constant rank `k`.
    Mid(u32),
    /// Uniform pseudo-random rank, deterministic in `(seed, node)`.
    Random(u64),
    /// Caller-provided rank rule with a display label.
    Custom(&'static str, RankRule),
}

// `Custom` rules compare by label: function pointers have no meaningful
// equality, and the label is what reports key on.
impl PartialEq for Assignment {
    fn eq(&self, other: &Self) -> bool {
        use Assignment::*;
        match (self, other) {
            (Leftmost, Leftmost) | (Penultimate, Penultimate) | (Rightmost, Rightmost) => true,
            (Mid(a), Mid(b)) => a == b,
            (Random(a), Random(b)) => a == b,
            (Custom(a, _), Custom(b, _)) => a == b,
            _ => false,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Assignment {
    /// Checks the variant's parameters against `p`. `Mid(k)` must satisfy
    /// `1 ≤ k ≤ p−3` so the rank is valid for black fathers too.
    pub fn validate(self, params: Params) -> Result<(), TreeError> {
        if let Assignment::Mid(k) = self {
            if k < 1 || k > params.black_sons() {
                return Err(TreeError::InvalidMid { k, p: params.p() });
            }
        }
        Ok(())
    }

    /// If `Mid(k)` coincides with a named variant on some status, names
    /// it: `k = 1` is `Leftmost`; `k = p−4` is `Penultimate` for black
    /// fathers; `k = p−3` is `Penultimate` for white fathers and
    /// `Rightmost` for black ones.
    pub fn overlaps_named(self, params: Params) -> Option<&'static str> {
        match self {
            Assignment::Mid(1) => Some("leftmost"),
            Assignment::Mid(k) if k == params.p() - 4 => Some("penultimate (black fathers)"),
            Assignment::Mid(k) if k == params.p() - 3 => {
                Some("penultimate (white fathers) / rightmost (black fathers)")
            }
            _ => None,
        }
    }

    /// The black son's rank for node `num` with `sons_count` sons.
    pub fn black_rank(self, params: Params, num: u64, sons_count: u32) -> u32 {
        let _ = params;
        match self {
            Assignment::Leftmost => 1,
            Assignment::Penultimate => sons_count - 1,
            Assignment::Rightmost => sons_count,
            Assignment::Mid(k) => k,
            Assignment::Random(seed) => {
                let z = splitmix64(seed ^ num.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                1 + (z % u64::from(sons_count)) as u32
            }
            Assignment::Custom(_, rule) => {
                // status is reconstructible from sons_count; pass White as a
                // placeholder only when counts are ambiguous is impossible
                // (p−2 ≠ p−3), so derive it.
                let status = if sons_count == params.white_sons() {
                    Status::White
                } else {
                    Status::Black
                };
                rule(params, num, status, sons_count)
            }
        }
    }

    /// Stable textual label used in reports and serialized output.
    pub fn label(self) -> String {
        match self {
            Assignment::Leftmost => "leftmost".into(),
            Assignment::Penultimate => "penultimate".into(),
            Assignment::Rightmost => "rightmost".into(),
            Assignment::Mid(k) => format!("mid:{k}"),
            Assignment::Random(seed) => format!("random:{seed}"),
            Assignment::Custom(name, _) => format!("custom:{name}"),
        }
    }
}

/// Errors from tree construction and queries.
#[derive(Debug, Error)]
pub enum TreeError {
    /// `Mid(k)` outside `1..=p−3`.
    #[error("mid assignment rank {k} outside 1..={} for p={p}", p - 3)]
    InvalidMid { k: u32, p: u32 },
    /// The requested depth would exceed the node budget.
    #[error("tree would exceed the node budget of {cap} nodes")]
    TooLarge { cap: u64 },
    /// Node number outside the built tree.
    #[error("node {num} outside the built range 1..={max}")]
    OutOfRange { num: u64, max: u64 },
    /// The node sits on the deepest built level, so its sons are unknown.
    #[error("node {num} is on the last built level; its sons are not built")]
    NoSons { num: u64 },
    /// Two trees passed to a comparison differ in shape parameters.
    #[error("trees are not comparable: {0}")]
    Mismatch(&'static str),
    /// No son-table is known for this (kind, assignment, system) combination.
    #[error("no son-table audit is defined for {kind:?} tree, assignment {assignment}, {system:?} codes")]
    UnsupportedRuleAudit {
        kind: TreeKind,
        assignment: String,
        system: System,
    },
    /// A preferred-son chain hit a node with no son carrying the digit.
    #[error("node {num} has no son with the distinguished digit appended")]
    MissingPreferredSon { num: u64 },
    /// Invalid marker digit for the system.
    #[error("marker digit {digit} invalid for {system:?} codes at p={p}")]
    BadMarker { digit: u32, system: System, p: u32 },
    /// Underlying code arithmetic failed.
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// One node of a built tree: plain copyable data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Node {
    /// Natural (breadth-first) number, root = 1.
    pub num: u64,
    /// Level, root = 0.
    pub level: u32,
    /// Father's number; `None` for the root.
    pub father: Option<u64>,
    /// Colour.
    pub status: Status,
    /// Number of the first (leftmost) son. For nodes on the deepest built
    /// level this is where the sons *would* start.
    pub sons_first: u64,
    /// `p−2` for white, `p−3` for black.
    pub sons_count: u32,
    /// Rank of the black son in `1..=sons_count`.
    pub black_rank: u32,
}

impl Node {
    /// This node's rank among its father's sons (1-based); 0 for the root.
    pub fn rank(&self, tree: &Tree) -> u32 {
        match self.father {
            None => 0,
            Some(f) => {
                let father = tree.node(f).expect("father in range");
                (self.num - father.sons_first + 1) as u32
            }
        }
    }
}

/// A finite prefix of a metallic tree, stored as flat per-level arrays.
#[derive(Debug, Clone)]
pub struct Tree {
    params: Params,
    kind: TreeKind,
    assignment: Assignment,
    depth: u32,
    levels: Vec<Vec<Node>>,
    level_start: Vec<u64>,
}

impl Tree {
    /// Builds the tree of the given kind to `depth` levels below the root.
    ///
    /// Deterministic: the same arguments produce the same tree. Fails if
    /// the total node count would exceed `max_nodes` (level sizes grow
    /// geometrically) or if the assignment is invalid for `p`.
    pub fn build(
        params: Params,
        kind: TreeKind,
        assignment: Assignment,
        depth: u32,
        max_nodes: u64,
    ) -> Result<Tree, TreeError> {
        assignment.validate(params)?;
        let mut table = SequenceTable::new(params);
        let mut sizes: Vec<u64> = Vec::with_capacity(depth as usize + 1);
        let mut total: u128 = 0;
        for n in 0..=depth {
            let s = match kind {
                TreeKind::White => table.metallic(n as usize),
                TreeKind::Black => table.black(n as usize),
            };
            let s: u64 = s
                .try_into()
                .map_err(|_| TreeError::TooLarge { cap: max_nodes })?;
            total += u128::from(s);
            if total > u128::from(max_nodes) {
                return Err(TreeError::TooLarge { cap: max_nodes });
            }
            sizes.push(s);
        }
        let mut level_start = vec![1u64];
        for n in 0..depth as usize {
            level_start.push(level_start[n] + sizes[n]);
        }

        let root_status = match kind {
            TreeKind::White => Status::White,
            TreeKind::Black => Status::Black,
        };
        let count_for = |status: Status| match status {
            Status::White => params.white_sons(),
            Status::Black => params.black_sons(),
        };
        let root_count = count_for(root_status);
        let mut levels: Vec<Vec<Node>> = vec![vec![Node {
            num: 1,
            level: 0,
            father: None,
            status: root_status,
            sons_first: 2,
            sons_count: root_count,
            black_rank: assignment.black_rank(params, 1, root_count),
        }]];
        for n in 0..depth as usize {
            let mut next = Vec::with_capacity(sizes[n + 1] as usize);
            let mut num = level_start[n + 1];
            for i in 0..levels[n].len() {
                let parent = levels[n][i];
                for rank in 1..=parent.sons_count {
                    let status = if rank == parent.black_rank {
                        Status::Black
                    } else {
                        Status::White
                    };
                    let sons_count = count_for(status);
                    next.push(Node {
                        num,
                        level: (n + 1) as u32,
                        father: Some(parent.num),
                        status,
                        sons_first: 0, // filled below
                        sons_count,
                        black_rank: assignment.black_rank(params, num, sons_count),
                    });
                    num += 1;
                }
            }
            debug_assert_eq!(next.len() as u64, sizes[n + 1]);
            levels.push(next);
        }
        // Second pass: first-son numbers follow from cumulative son counts.
        for n in 0..=depth as usize {
            let mut counter = level_start[n] + sizes[n];
            for node in levels[n].iter_mut() {
                node.sons_first = counter;
                counter += u64::from(node.sons_count);
            }
        }
        Ok(Tree {
            params,
            kind,
            assignment,
            depth,
            levels,
            level_start,
        })
    }

    /// The parameter pack.
    pub fn params(&self) -> Params {
        self.params
    }

    /// White or black tree.
    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    /// The assignment the tree was built with.
    pub fn assignment(&self) -> Assignment {
        self.assignment
    }

    /// Number of levels below the root.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Number of the first node on level `n`.
    pub fn level_start(&self, n: u32) -> u64 {
        self.level_start[n as usize]
    }

    /// The nodes of level `n` in number order.
    pub fn level(&self, n: u32) -> &[Node] {
        &self.levels[n as usize]
    }

    /// Largest built node number.
    pub fn last_num(&self) -> u64 {
        let d = self.depth as usize;
        self.level_start[d] + self.levels[d].len() as u64 - 1
    }

    /// Looks a node up by number.
    pub fn node(&self, num: u64) -> Result<&Node, TreeError> {
        let max = self.last_num();
        if num < 1 || num > max {
            return Err(TreeError::OutOfRange { num, max });
        }
        let level = match self.level_start.binary_search(&num) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        Ok(&self.levels[level][(num - self.level_start[level]) as usize])
    }

    /// The sons of `num` as a slice of the next level.
    pub fn sons(&self, num: u64) -> Result<&[Node], TreeError> {
        let node = *self.node(num)?;
        if node.level >= self.depth {
            return Err(TreeError::NoSons { num });
        }
        let next = &self.levels[node.level as usize + 1];
        let start = (node.sons_first - self.level_start[node.level as usize + 1]) as usize;
        Ok(&next[start..start + node.sons_count as usize])
    }

    /// Canonical metallic code of a node (any `num ≥ 1` encodes).
    pub fn metallic_code(&self, num: u64) -> Result<MetallicCode, TreeError> {
        self.node(num)?;
        Ok(MetallicCode::encode(self.params, &BigUint::from(num)))
    }

    /// Canonical nzm code of a node.
    pub fn nzm_code(&self, num: u64) -> Result<NzmCode, TreeError> {
        self.node(num)?;
        Ok(NzmCode::encode(self.params, &BigUint::from(num))?)
    }

    /// Canonical code of a node in either system.
    pub fn code(&self, num: u64, system: System) -> Result<AnyCode, TreeError> {
        self.node(num)?;
        Ok(AnyCode::encode(self.params, system, &BigUint::from(num))?)
    }

    fn code_digits(&self, num: u64, system: System) -> Vec<u32> {
        match system {
            System::Metallic => MetallicCode::encode(self.params, &BigUint::from(num))
                .digits()
                .to_vec(),
            System::Nzm => NzmCode::encode(self.params, &BigUint::from(num))
                .expect("num >= 1")
                .digits()
                .to_vec(),
        }
    }

    fn signature_of(&self, num: u64, system: System) -> u32 {
        *self
            .code_digits(num, system)
            .last()
            .expect("codes are non-empty")
    }

    /// The son of `num` whose code is `num`'s code with `digit` appended,
    /// if any (literal digit comparison, no normalization).
    pub fn preferred_son(&self, num: u64, system: System, digit: u32) -> Result<Option<u64>, TreeError> {
        let mut target = self.code_digits(num, system);
        target.push(digit);
        let mut found = None;
        for son in self.sons(num)? {
            if self.code_digits(son.num, system) == target {
                found = Some(son.num);
                break;
            }
        }
        Ok(found)
    }
}

// ---------------------------------------------------------------------------
// Apartness between assignments
// ---------------------------------------------------------------------------

/// First-son offset `β_ℓ(num) − α_ℓ(num)` between two builds of the same
/// tree shape under assignments α (`alpha`) and β (`beta`).
///
/// Both trees must share `p`, kind and depth, and `num` must be interior
/// (its sons must be built) in both.
pub fn apartness(alpha: &Tree, beta: &Tree, num: u64) -> Result<i64, TreeError> {
    if alpha.params != beta.params {
        return Err(TreeError::Mismatch("different p"));
    }
    if alpha.kind != beta.kind {
        return Err(TreeError::Mismatch("different tree kinds"));
    }
    if alpha.depth != beta.depth {
        return Err(TreeError::Mismatch("different depths"));
    }
    let a = alpha.node(num)?;
    let b = beta.node(num)?;
    if a.level >= alpha.depth {
        return Err(TreeError::NoSons { num });
    }
    Ok(b.sons_first as i64 - a.sons_first as i64)
}

// ---------------------------------------------------------------------------
// Preferred-son check
// ---------------------------------------------------------------------------

/// A node violating the preferred-son property, with its full son-code
/// list for diagnosis.
#[derive(Debug, Clone, Serialize)]
pub struct PreferredSonWitness {
    /// The violating father.
    pub num: u64,
    /// Its code in the audited system.
    pub code: String,
    /// How many sons carried the appended digit (≠ 1).
    pub matching_sons: u32,
    /// All son codes in rank order.
    pub son_codes: Vec<String>,
}

/// Result of [`Tree::check_preferred_son`].
#[derive(Debug, Clone, Serialize)]
pub struct PreferredSonReport {
    /// The appended digit tested.
    pub digit: u32,
    /// True iff every interior node has exactly one matching son.
    pub holds: bool,
    /// Violating nodes (empty iff `holds`).
    pub witnesses: Vec<PreferredSonWitness>,
}

impl Tree {
    /// Tests whether every interior node has exactly one son whose code is
    /// the father's code with `digit` appended (literal comparison).
    pub fn check_preferred_son(
        &self,
        system: System,
        digit: u32,
    ) -> Result<PreferredSonReport, TreeError> {
        let mut witnesses = Vec::new();
        for n in 0..self.depth {
            for node in self.level(n) {
                let mut target = self.code_digits(node.num, system);
                target.push(digit);
                let sons = self.sons(node.num)?;
                let matching = sons
                    .iter()
                    .filter(|s| self.code_digits(s.num, system) == target)
                    .count() as u32;
                if matching != 1 {
                    witnesses.push(PreferredSonWitness {
                        num: node.num,
                        code: self.code(node.num, system)?.to_string(),
                        matching_sons: matching,
                        son_codes: sons
                            .iter()
                            .map(|s| self.code(s.num, system).map(|c| c.to_string()))
                            .collect::<Result<_, _>>()?,
                    });
                }
            }
        }
        Ok(PreferredSonReport {
            digit,
            holds: witnesses.is_empty(),
            witnesses,
        })
    }
}

// ---------------------------------------------------------------------------
// Marker-gap audit
// ---------------------------------------------------------------------------

/// One gap between consecutive marker-signature nodes.
#[derive(Debug, Clone, Serialize)]
pub struct GapEntry {
    /// Number of the right (larger) marker node.
    pub num: u64,
    /// Distance to the previous marker node.
    pub gap: u64,
    /// Code of the larger node.
    pub code: String,
    /// Whether `gap == p−3` holds exactly when the code carries the
    /// doubled-marker suffix (and the gap is one of `p−3`, `p−2`).
    pub criterion_ok: bool,
}

impl Tree {
    /// Gaps between consecutive nodes of signature `marker` on `level`.
    ///
    /// The last marker node *before* the level (if any) anchors the first
    /// gap. The expected law: gaps are `p−3` or `p−2`, and `p−3` occurs
    /// exactly when the larger node's code ends with the marker digit
    /// twice (`…00` metallic, `…11` nzm).
    pub fn zero_node_gap_audit(
        &self,
        level: u32,
        system: System,
        marker: u32,
    ) -> Result<Vec<GapEntry>, TreeError> {
        if level as usize >= self.level_start.len() {
            return Err(TreeError::OutOfRange {
                num: self.level_start.last().copied().unwrap_or(1),
                max: self.last_num(),
            });
        }
        let start = self.level_start(level);
        let mut prev: Option<u64> = None;
        // Anchor: last marker strictly before the level.
        for num in (1..start).rev() {
            if self.signature_of(num, system) == marker {
                prev = Some(num);
                break;
            }
        }
        let p = u64::from(self.params.p());
        let mut entries = Vec::new();
        for node in self.level(level) {
            if self.signature_of(node.num, system) != marker {
                continue;
            }
            if let Some(prev_num) = prev {
                let gap = node.num - prev_num;
                let digits = self.code_digits(node.num, system);
                let doubled = digits.len() >= 2
                    && digits[digits.len() - 1] == marker
                    && digits[digits.len() - 2] == marker;
                let criterion_ok =
                    (gap == p - 3 || gap == p - 2) && ((gap == p - 3) == doubled);
                entries.push(GapEntry {
                    num: node.num,
                    gap,
                    code: self.code(node.num, system)?.to_string(),
                    criterion_ok,
                });
            }
            prev = Some(node.num);
        }
        Ok(entries)
    }
}

// ---------------------------------------------------------------------------
// Preferred-son chains
// ---------------------------------------------------------------------------

impl Tree {
    /// The chain `1, s(1), s(s(1)), …` down to `depth`, where `s` appends
    /// the metallic digit 0. Fails if a link is missing.
    pub fn zero_branch(&self, depth: u32) -> Result<Vec<u64>, TreeError> {
        if depth > self.depth {
            return Err(TreeError::NoSons {
                num: self.last_num(),
            });
        }
        self.zero_chain(1, depth)
    }

    /// The 0-son chain starting at `num`, followed to the deepest built
    /// level.
    pub fn zero_path_from(&self, num: u64) -> Result<Vec<u64>, TreeError> {
        self.node(num)?;
        self.zero_chain(num, self.depth)
    }

    fn zero_chain(&self, from: u64, down_to_level: u32) -> Result<Vec<u64>, TreeError> {
        let mut out = vec![from];
        let mut cur = from;
        while self.node(cur)?.level < down_to_level {
            match self.preferred_son(cur, System::Metallic, 0)? {
                Some(next) => {
                    out.push(next);
                    cur = next;
                }
                None => return Err(TreeError::MissingPreferredSon { num: cur }),
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Rule audit: sons tables for the built-in assignments
// ---------------------------------------------------------------------------

/// Which closed-form son table to audit against. Derived from the tree's
/// assignment by [`Tree::rule_audit`], or forced via
/// [`Tree::rule_audit_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleSet {
    /// White tree, penultimate assignment, metallic codes.
    WhitePenultimate,
    /// White tree, leftmost assignment, metallic codes.
    WhiteLeftmost,
    /// White tree, rightmost assignment, metallic codes.
    WhiteRightmost,
    /// White tree, mid assignment, metallic codes. The table indexes the
    /// black son by *signature* `k` (rank `k−1` under fathers of signature
    /// `1..k−1` or black fathers, rank `k` otherwise), which differs from
    /// the constant rank `k` that [`Assignment::Mid`] implements; auditing
    /// a `Mid(k)` tree therefore reports divergences by design.
    WhiteMid(u32),
    /// White tree, rightmost assignment, nzm codes.
    WhiteRightmostNzm,
    /// Black tree, leftmost assignment, metallic codes.
    BlackLeftmost,
    /// Black tree, rightmost assignment, metallic codes.
    BlackRightmost,
    /// Black tree, leftmost assignment, nzm codes.
    BlackLeftmostNzm,
    /// Black tree, rightmost assignment, nzm codes.
    BlackRightmostNzm,
}

/// Per-node outcome of the rule audit.
#[derive(Debug, Clone, Serialize)]
pub struct RuleAuditEntry {
    /// The audited father.
    pub num: u64,
    /// Rule tag the node matched (`"root"` for excepted roots;
    /// `"unmatched"` when no left-hand side applies).
    pub class: String,
    /// True iff son codes and statuses equal the table's prediction.
    pub conform: bool,
    /// Expected `(status, code)` per rank.
    pub expected: Vec<(String, String)>,
    /// Actual `(status, code)` per rank.
    pub actual: Vec<(String, String)>,
}

/// Result of [`Tree::rule_audit`].
#[derive(Debug, Clone, Serialize)]
pub struct RuleAuditReport {
    /// Which table was audited.
    pub rule_set: RuleSet,
    /// Code system of the table.
    pub system: System,
    /// True for `p < 7`, where some table ranges collapse to empty and
    /// conformance is "degenerate-conformant".
    pub degenerate: bool,
    /// True iff every interior node conforms.
    pub conforming: bool,
    /// Number of non-conforming entries.
    pub mismatches: usize,
    /// One entry per interior node, in number order.
    pub entries: Vec<RuleAuditEntry>,
}

/// Expected sons of one node: rule tag plus raw `(status, digits)` rows.
enum Expectation {
    /// Root checked directly against encoded son values, not a formula.
    ExceptedRoot,
    /// Table rows (status, raw digit word to normalize).
    Rows(String, Vec<(Status, Vec<u32>)>),
    /// No left-hand side matches the node.
    Unmatched(String),
}

impl Tree {
    /// Audits the tree against the son table matching its kind,
    /// assignment and `system`. See [`RuleSet`] for the supported
    /// combinations.
    pub fn rule_audit(&self, system: System) -> Result<RuleAuditReport, TreeError> {
        let unsupported = || TreeError::UnsupportedRuleAudit {
            kind: self.kind,
            assignment: self.assignment.label(),
            system,
        };
        let set = match (self.kind, self.assignment, system) {
            (TreeKind::White, Assignment::Penultimate, System::Metallic) => RuleSet::WhitePenultimate,
            (TreeKind::White, Assignment::Leftmost, System::Metallic) => RuleSet::WhiteLeftmost,
            (TreeKind::White, Assignment::Rightmost, System::Metallic) => RuleSet::WhiteRightmost,
            (TreeKind::White, Assignment::Mid(k), System::Metallic) => RuleSet::WhiteMid(k),
            (TreeKind::White, Assignment::Rightmost, System::Nzm) => RuleSet::WhiteRightmostNzm,
            (TreeKind::Black, Assignment::Leftmost, System::Metallic) => RuleSet::BlackLeftmost,
            (TreeKind::Black, Assignment::Rightmost, System::Metallic) => RuleSet::BlackRightmost,
            (TreeKind::Black, Assignment::Leftmost, System::Nzm) => RuleSet::BlackLeftmostNzm,
            (TreeKind::Black, Assignment::Rightmost, System::Nzm) => RuleSet::BlackRightmostNzm,
            _ => return Err(unsupported()),
        };
        self.rule_audit_with(system, set)
    }

    /// Audits against an explicitly chosen table. Useful for checking a
    /// table against a tree built with a [`Assignment::Custom`] rule that
    /// realizes the table's own black-son convention.
    pub fn rule_audit_with(
        &self,
        system: System,
        set: RuleSet,
    ) -> Result<RuleAuditReport, TreeError> {
        let mut entries = Vec::new();
        for n in 0..self.depth {
            for node in self.level(n) {
                let expectation = self.expected_sons(set, system, node)?;
                let sons = self.sons(node.num)?;
                let actual: Vec<(String, String)> = sons
                    .iter()
                    .map(|s| {
                        Ok((
                            s.status.to_string(),
                            self.code(s.num, system)?.to_string(),
                        ))
                    })
                    .collect::<Result<_, TreeError>>()?;
                let entry = match expectation {
                    Expectation::ExceptedRoot => RuleAuditEntry {
                        num: node.num,
                        class: "root".into(),
                        conform: true,
                        expected: actual.clone(),
                        actual,
                    },
                    Expectation::Unmatched(class) => RuleAuditEntry {
                        num: node.num,
                        class,
                        conform: false,
                        expected: Vec::new(),
                        actual,
                    },
                    Expectation::Rows(class, rows) => {
                        let mut expected = Vec::with_capacity(rows.len());
                        for (status, raw) in rows {
                            let code = match system {
                                System::Metallic => {
                                    MetallicCode::normalize(self.params, &raw)?.to_string()
                                }
                                System::Nzm => NzmCode::normalize(self.params, &raw)?.to_string(),
                            };
                            expected.push((status.to_string(), code));
                        }
                        let conform = expected == actual;
                        RuleAuditEntry {
                            num: node.num,
                            class,
                            conform,
                            expected,
                            actual,
                        }
                    }
                };
                entries.push(entry);
            }
        }
        let mismatches = entries.iter().filter(|e| !e.conform).count();
        Ok(RuleAuditReport {
            rule_set: set,
            system,
            degenerate: self.params.p() < 7,
            conforming: mismatches == 0,
            mismatches,
            entries,
        })
    }

    /// Builds the expected son rows of `node` under the given table.
    fn expected_sons(
        &self,
        set: RuleSet,
        system: System,
        node: &Node,
    ) -> Result<Expectation, TreeError> {
        let p = self.params.p();
        let d = self.params.d();
        let x = self.params.x();
        let num = node.num;
        let sig = || self.signature_of(num, system);
        // Digit-word helpers; `word(base, digit)` = code of `base` with
        // `digit` appended (raw, normalized later).
        let code_of = |v: u64| self.code_digits(v, system);
        let word = |v: u64, digit: u32| {
            let mut w = code_of(v);
            w.push(digit);
            w
        };
        // Status words: all white except the black position (1-based).
        let statuses = |count: u32, black_at: u32| -> Vec<Status> {
            (1..=count)
                .map(|r| if r == black_at { Status::Black } else { Status::White })
                .collect()
        };
        let rows = |class: &str, black_at: u32, words: Vec<Vec<u32>>| {
            let st = statuses(words.len() as u32, black_at);
            Expectation::Rows(
                class.to_string(),
                st.into_iter().zip(words).collect(),
            )
        };

        let expectation = match set {
            RuleSet::WhitePenultimate => {
                if num == 1 {
                    return Ok(Expectation::ExceptedRoot);
                }
                match node.status {
                    Status::Black => {
                        // ranks 1..=p−5 → [ν−1]·(h+1); p−4 → [ν]·0; p−3 → [ν]·1
                        let mut w: Vec<Vec<u32>> =
                            (1..=p.saturating_sub(5)).map(|h| word(num - 1, h + 1)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        rows("b", p - 4, w)
                    }
                    Status::White => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p - 4).map(|h| word(num - 1, h + 1)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        rows("wa", p - 3, w)
                    }
                }
            }
            RuleSet::WhiteLeftmost => {
                if num == 1 {
                    return Ok(Expectation::ExceptedRoot);
                }
                match (node.status, sig()) {
                    (Status::Black, s @ (1 | 2)) => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p - 4).map(|h| word(num - 1, h + 1)).collect();
                        w.push(word(num, 0));
                        rows(&format!("b{s}"), 1, w)
                    }
                    (Status::Black, _) => Expectation::Unmatched("black-unmatched".into()),
                    (Status::White, 0) => {
                        let mut w: Vec<Vec<u32>> = (1..=p - 4).map(|h| word(num - 1, h)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        rows("w0", 1, w)
                    }
                    (Status::White, 1) => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p - 4).map(|h| word(num - 1, h + 1)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        rows("w1", 1, w)
                    }
                    (Status::White, _) => {
                        let mut w: Vec<Vec<u32>> = (1..=p - 3).map(|h| word(num - 1, h)).collect();
                        w.push(word(num, 0));
                        rows("wa", 1, w)
                    }
                }
            }
            RuleSet::WhiteRightmost => {
                if num == 1 {
                    return Ok(Expectation::ExceptedRoot);
                }
                match (node.status, sig()) {
                    (Status::Black, 1 | 2) => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p.saturating_sub(5)).map(|h| word(num - 1, h + 2)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        rows("b", p - 3, w)
                    }
                    (Status::Black, _) => Expectation::Unmatched("black-unmatched".into()),
                    (Status::White, 0) => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p.saturating_sub(5)).map(|h| word(num - 1, h + 1)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        w.push(word(num, 2));
                        rows("w0", p - 2, w)
                    }
                    (Status::White, 1) => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p.saturating_sub(5)).map(|h| word(num - 1, h + 2)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        w.push(word(num, 2));
                        rows("w1", p - 2, w)
                    }
                    (Status::White, _) => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p - 4).map(|h| word(num - 1, h + 1)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        rows("wa", p - 2, w)
                    }
                }
            }
            RuleSet::WhiteMid(k) => {
                if num == 1 {
                    return Ok(Expectation::ExceptedRoot);
                }
                let words: Vec<Vec<u32>> = match (node.status, sig()) {
                    (Status::Black, _) => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p - 4).map(|h| word(num - 1, h + 1)).collect();
                        w.push(word(num, 0));
                        w
                    }
                    (Status::White, 0) => {
                        let mut w: Vec<Vec<u32>> = (1..=p - 4).map(|h| word(num - 1, h)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        w
                    }
                    (Status::White, s) if s < k => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p - 4).map(|h| word(num - 1, h + 1)).collect();
                        w.push(word(num, 0));
                        w.push(word(num, 1));
                        w
                    }
                    (Status::White, s) if s > k && s <= d => {
                        let mut w: Vec<Vec<u32>> = (1..=p - 3).map(|h| word(num - 1, h)).collect();
                        w.push(word(num, 0));
                        w
                    }
                    (Status::White, _) => {
                        return Ok(Expectation::Unmatched(format!("w{k}-unmatched")));
                    }
                };
                // The table places the black son by signature k: find the
                // unique row whose normalized code ends in k.
                let mut black_at = None;
                let mut unique = true;
                for (i, raw) in words.iter().enumerate() {
                    let s = match system {
                        System::Metallic => MetallicCode::normalize(self.params, raw)?.signature(),
                        System::Nzm => NzmCode::normalize(self.params, raw)?.signature(),
                    };
                    if s == k {
                        if black_at.is_some() {
                            unique = false;
                        }
                        black_at = Some(i as u32 + 1);
                    }
                }
                let class = match node.status {
                    Status::Black => format!("b{k}"),
                    Status::White => match sig() {
                        0 => "w0".to_string(),
                        s if s < k => format!("wa({s})"),
                        s => format!("wb({s})"),
                    },
                };
                match (black_at, unique) {
                    (Some(b), true) => rows(&class, b, words),
                    _ => Expectation::Unmatched(format!("{class}-no-unique-black")),
                }
            }
            RuleSet::WhiteRightmostNzm => {
                if num == 1 {
                    // ranks 1..=p−3 → digit h+1; p−2 → "1,1"
                    let mut w: Vec<Vec<u32>> = (1..=p - 3).map(|h| vec![h + 1]).collect();
                    w.push(vec![1, 1]);
                    rows("r", p - 2, w)
                } else {
                    match node.status {
                        Status::Black => {
                            let mut w: Vec<Vec<u32>> =
                                (1..=p - 4).map(|h| word(num - 1, h + 1)).collect();
                            w.push(word(num, 1));
                            rows("b1", p - 3, w)
                        }
                        Status::White => {
                            let mut w: Vec<Vec<u32>> =
                                (1..=p - 3).map(|h| word(num - 1, h + 1)).collect();
                            w.push(word(num, 1));
                            rows("wa", p - 2, w)
                        }
                    }
                }
            }
            RuleSet::BlackLeftmost => {
                if num == 1 {
                    return Ok(Expectation::ExceptedRoot);
                }
                let level_first = self.level_start(node.level);
                let level_last = level_first + self.level(node.level).len() as u64 - 1;
                match node.status {
                    Status::Black if num == level_first => {
                        let w: Vec<Vec<u32>> = (1..=p - 3).map(|h| word(num - 1, h)).collect();
                        rows("b1", 1, w)
                    }
                    Status::Black => {
                        let w: Vec<Vec<u32>> = (1..=p - 3).map(|h| word(num - 1, h - 1)).collect();
                        rows("b0", 1, w)
                    }
                    Status::White if num == level_last => {
                        let mut w: Vec<Vec<u32>> =
                            (1..=p - 3).map(|h| word(num - 1, h - 1)).collect();
                        w.push(word(num, 0));
                        rows("w0", 1, w)
                    }
                    Status::White => {
                        let w: Vec<Vec<u32>> = (1..=p - 2).map(|h| word(num - 1, h - 1)).collect();
                        rows("wa", 1, w)
                    }
                }
            }
            RuleSet::BlackRightmost => {
                if num == 1 {
                    return Ok(Expectation::ExceptedRoot);
                }
                match node.status {
                    Status::Black => {
                        let mut w: Vec<Vec<u32>> = (1..=p - 4).map(|h| word(num - 1, h)).collect();
                        w.push(word(num, 0));
                        rows("b0", p - 3, w)
                    }
                    Status::White => {
                        let mut w: Vec<Vec<u32>> = (1..=p - 3).map(|h| word(num - 1, h)).collect();
                        w.push(word(num, 0));
                        rows("wa", p - 2, w)
                    }
                }
            }
            RuleSet::BlackLeftmostNzm => {
                if num == 1 {
                    let mut w: Vec<Vec<u32>> = (1..=p - 4).map(|h| vec![h + 1]).collect();
                    w.push(vec![x]);
                    rows("r1", 1, w)
                } else if num == 2 {
                    let w: Vec<Vec<u32>> = (1..=p - 3).map(|h| vec![1, h]).collect();
                    rows("b2", 1, w)
                } else {
                    match (node.status, sig()) {
                        (Status::Black, _) => {
                            let mut w = vec![word(num - 2, x)];
                            w.extend((2..=p - 3).map(|h| word(num - 1, h - 1)));
                            rows("b", 1, w)
                        }
                        (Status::White, 1) => {
                            let mut w = vec![word(num - 2, d), word(num - 2, x)];
                            w.extend((3..=p - 2).map(|h| word(num - 1, h - 2)));
                            rows("w1", 1, w)
                        }
                        (Status::White, 2) => {
                            let mut w = vec![word(num - 2, d)];
                            w.extend((2..=p - 2).map(|h| word(num - 1, h - 1)));
                            rows("w2", 1, w)
                        }
                        (Status::White, _) => {
                            let mut w = vec![word(num - 2, x)];
                            w.extend((2..=p - 2).map(|h| word(num - 1, h - 1)));
                            rows("wa", 1, w)
                        }
                    }
                }
            }
            RuleSet::BlackRightmostNzm => {
                if num == 1 {
                    let mut w: Vec<Vec<u32>> = (1..=p - 4).map(|h| vec![h + 1]).collect();
                    w.push(vec![x]);
                    rows("r1", p - 3, w)
                } else {
                    match (node.status, sig()) {
                        (Status::Black, _) => {
                            let w: Vec<Vec<u32>> =
                                (1..=p - 3).map(|h| word(num - 1, h)).collect();
                            rows("b", p - 3, w)
                        }
                        (Status::White, s) if s == 1 || s == x => {
                            let mut w = vec![word(num - 2, x)];
                            w.extend((2..=p - 2).map(|h| word(num - 1, h - 1)));
                            rows(if s == 1 { "w1" } else { "wx" }, p - 2, w)
                        }
                        (Status::White, _) => {
                            let mut w: Vec<Vec<u32>> =
                                (1..=p - 3).map(|h| word(num - 1, h)).collect();
                            w.push(word(num - 1, x));
                            rows("wa", p - 2, w)
                        }
                    }
                }
            }
        };
        Ok(expectation)
    }
}

// ---------------------------------------------------------------------------
// Marked-subtree extraction
// ---------------------------------------------------------------------------

/// Result of [`Tree::extract_marked_subtree`].
#[derive(Debug, Clone, Serialize)]
pub struct MarkedSubtreeReport {
    /// The marker digit.
    pub marker: u32,
    /// Code system the markers live in.
    pub system: System,
    /// Marker counts per level `1..=depth` of the host tree.
    pub marked_counts: Vec<u64>,
    /// Level sizes of the host tree shifted one level up (levels
    /// `0..depth`), the counts an exact copy must reproduce.
    pub expected_counts: Vec<u64>,
    /// True iff the correspondence checks all pass.
    pub isomorphic: bool,
    /// Human-readable mismatch descriptions (empty iff `isomorphic`).
    pub mismatches: Vec<String>,
}

impl Tree {
    /// Extracts the nodes whose code signature equals `marker` and checks
    /// that they form a numbering-preserving copy of this tree one level
    /// shallower: the `k`-th marker (breadth-first) must carry the code of
    /// `k` with the marker digit appended, per-level marker counts must
    /// equal the previous level's size, and the induced son counts must
    /// match node `k`'s son count.
    pub fn extract_marked_subtree(
        &self,
        system: System,
        marker: u32,
    ) -> Result<MarkedSubtreeReport, TreeError> {
        let valid = match system {
            System::Metallic => marker <= self.params.d(),
            System::Nzm => (1..=self.params.x()).contains(&marker),
        };
        if !valid {
            return Err(TreeError::BadMarker {
                digit: marker,
                system,
                p: self.params.p(),
            });
        }
        let mut mismatches = Vec::new();
        let mut marked_counts = Vec::new();
        let mut expected_counts = Vec::new();
        let mut k: u64 = 0; // running marker index = expected prefix value
        let mut per_father_counts: Vec<(u64, u64)> = Vec::new();
        for n in 1..=self.depth {
            let markers: Vec<u64> = self
                .level(n)
                .iter()
                .filter(|node| self.signature_of(node.num, system) == marker)
                .map(|node| node.num)
                .collect();
            marked_counts.push(markers.len() as u64);
            let expected = self.level(n - 1).len() as u64;
            expected_counts.push(expected);
            if markers.len() as u64 != expected {
                mismatches.push(format!(
                    "level {n}: {} marked nodes, expected {expected}",
                    markers.len()
                ));
            }
            for &m in &markers {
                k += 1;
                let mut want = self.code_digits(k, system);
                want.push(marker);
                let got = self.code_digits(m, system);
                if got != want {
                    mismatches.push(format!(
                        "marker #{k} is node {m}, code does not extend the code of {k}"
                    ));
                    continue;
                }
                // Independent father check via the stripped prefix.
                let prefix = &got[..got.len() - 1];
                let value: u64 = crate::codes::eval_digits(self.params, prefix)
                    .try_into()
                    .expect("prefix value within built range");
                if let Some(father) = self.node(value).ok().and_then(|nd| nd.father) {
                    match per_father_counts.last_mut() {
                        Some((f, c)) if *f == father => *c += 1,
                        _ => per_father_counts.push((father, 1)),
                    }
                }
            }
        }
        // Induced son counts: markers grouped by the father of their
        // stripped prefix must match that father's son count (for fathers
        // whose son level is fully inside the marked range).
        for (father, count) in per_father_counts {
            let node = self.node(father)?;
            if node.level + 2 <= self.depth && count != u64::from(node.sons_count) {
                mismatches.push(format!(
                    "node {father}: {count} induced marked sons, expected {}",
                    node.sons_count
                ));
            }
        }
        Ok(MarkedSubtreeReport {
            marker,
            system,
            marked_counts,
            expected_counts,
            isomorphic: mismatches.is_empty(),
            mismatches,
        })
    }
}
