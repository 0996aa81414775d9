//! Root paths and tiling neighbourhoods.
//!
//! This module connects the trees of [`crate::trees`] to the hyperbolic
//! tilings `{p,4}` and `{p+2,3}`: a sector of `{p,4}` (a strip of
//! `{p+2,3}`) is in bijection with the white (black) tree under the
//! rightmost assignment, so tree queries answer geometric ones.
//!
//! Three families of operations live here:
//!
//! 1. **Root paths.** [`path_oracle`] walks the father links of a built
//!    tree and is the ground truth. The four functions
//!    [`path_white_metallic`], [`path_white_nzm`], [`path_black_metallic`]
//!    and [`path_black_nzm`] compute the same path *from the code alone*,
//!    without building a tree, by a digit-driven sliding window: the
//!    window holds the already-known paths of the node `μ` denoted by the
//!    consumed prefix and of its successor `μ+1` (plus `μ+2` in the black
//!    nzm case, whose son rules reach back two nodes). Each next digit
//!    `a` identifies the child as a son of one window node at a rank read
//!    off the per-class son rules, and the window slides to the child and
//!    its successors. Successors are cheap because breadth-first
//!    numbering makes son intervals of consecutive fathers adjacent: the
//!    successor of a non-last son is the next sibling, and the successor
//!    of a last son is the first son of the father's successor.
//!
//! 2. **Neighbours.** [`neighbours`] lists, for a tile of `{p,4}` or
//!    `{p+2,3}`, the code of the node behind each of its `p` (resp.
//!    `p+2`) sides, computed from the tree: father, black son of the
//!    predecessor, sons in rank order, the same-level neighbours `ν±1`
//!    (only in `{p+2,3}`), and for black tiles the successor of the
//!    father. Sides that leave the sector/strip are reported as
//!    [`Role::External`] with no code.
//!
//! 3. **Formula audit.** [`table_audit`] re-evaluates the closed-form
//!    neighbour formulas (expressions in `[ν]`, `[ν±1]`, `[ν−2]`, and the
//!    code `q` obtained by dropping the last digit of `[ν]`) for every
//!    interior node and tallies matches against [`neighbours`]. The
//!    known discrepancies — the white-tree father rows, which are off by
//!    two in value, and one duplicated row in the `{p,4}` black-tree
//!    column — are *reported*, never patched over: the audit's job is to
//!    document exactly where the closed forms and the tree disagree.
//!
//! All path algorithms are linear in the code length up to the cost of
//! maintaining the successor codes (an increment per digit).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::codes::{eval_digits, AnyCode, CodeError, MetallicCode, NzmCode, System};
use crate::params::Params;
use crate::sequences::TreeKind;
use crate::trees::{Assignment, Status, Tree, TreeError};

/// Errors from path construction, neighbour queries, and audits.
#[derive(Debug, Error)]
pub enum NavError {
    /// A tree query failed (node/sons out of the built range, …).
    #[error(transparent)]
    Tree(#[from] TreeError),
    /// A code operation failed.
    #[error(transparent)]
    Code(#[from] CodeError),
    /// The code was built for a different `p` than the query.
    #[error("code is for p = {got}, query is for p = {expected}")]
    ParamsMismatch {
        /// `p` of the query.
        expected: u32,
        /// `p` of the code.
        got: u32,
    },
    /// The zero code denotes no node.
    #[error("the zero code does not denote a node")]
    Zero,
    /// No son rule places this digit from the current window; the input
    /// cannot be the canonical code of a node.
    #[error("digit {digit} cannot be placed from the current window")]
    Placement {
        /// The unplaceable digit.
        digit: u32,
    },
    /// The formula audit only describes trees under the rightmost
    /// assignment.
    #[error("table audit requires the rightmost assignment, tree uses `{assignment}`")]
    NotRightmost {
        /// Label of the assignment actually used.
        assignment: String,
    },
}

// ---------------------------------------------------------------------------
// Path steps
// ---------------------------------------------------------------------------

/// Colour of a path step ([`StepStatus::Root`] for the first step only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepStatus {
    /// The root of the tree (rank 0 by convention).
    Root,
    /// A white node.
    White,
    /// A black node.
    Black,
}

/// One step of a root path: the node's colour and its rank among its
/// father's sons (leftmost = 1; the root carries rank 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathStep {
    /// Colour of the node reached by this step.
    pub status: StepStatus,
    /// Rank among the father's sons; `1 ..= p−2` under a white father,
    /// `1 ..= p−3` under a black one, `0` for the root.
    pub rank: u32,
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            StepStatus::Root => write!(f, "root"),
            StepStatus::White => write!(f, "white:{}", self.rank),
            StepStatus::Black => write!(f, "black:{}", self.rank),
        }
    }
}

const ROOT_STEP: PathStep = PathStep { status: StepStatus::Root, rank: 0 };

fn step(status: Status, rank: u32) -> PathStep {
    let status = match status {
        Status::White => StepStatus::White,
        Status::Black => StepStatus::Black,
    };
    PathStep { status, rank }
}

/// Ground-truth root path of a built tree node: the father chain, ranks
/// taken from the breadth-first son intervals.
pub fn path_oracle(tree: &Tree, num: u64) -> Result<Vec<PathStep>, NavError> {
    let mut steps = Vec::new();
    let mut cur = *tree.node(num)?;
    while let Some(f) = cur.father {
        let father = tree.node(f)?;
        let rank = (cur.num - father.sons_first + 1) as u32;
        steps.push(step(cur.status, rank));
        cur = *father;
    }
    steps.push(ROOT_STEP);
    steps.reverse();
    Ok(steps)
}

// ---------------------------------------------------------------------------
// Sliding-window path construction
// ---------------------------------------------------------------------------

/// A window node: its (already final) root path and its colour. The root
/// is recognisable by a path of length 1.
#[derive(Clone)]
struct Win {
    path: Vec<PathStep>,
    status: Status,
}

impl Win {
    fn root(status: Status) -> Win {
        Win { path: vec![ROOT_STEP], status }
    }

    fn is_root(&self) -> bool {
        self.path.len() == 1
    }

    fn child(&self, status: Status, rank: u32) -> Win {
        let mut path = self.path.clone();
        path.push(step(status, rank));
        Win { path, status }
    }

    /// Number of sons (the root's colour is stored, so this is uniform).
    fn fanout(&self, params: Params) -> u32 {
        match self.status {
            Status::White => params.white_sons(),
            Status::Black => params.black_sons(),
        }
    }
}

/// Son of `f` at `rank`, black exactly when it is the last son
/// (rightmost assignment).
fn son_of(params: Params, f: &Win, rank: u32) -> Win {
    let status = if rank == f.fanout(params) {
        Status::Black
    } else {
        Status::White
    };
    f.child(status, rank)
}

/// Classes of a white-tree node under the metallic son rules: colour plus
/// the distinguished signatures 0 and 1. The root behaves like `Wa`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum WClass {
    B,
    W0,
    W1,
    Wa,
}

fn wclass(status: Status, sig: u32, is_root: bool) -> WClass {
    if is_root {
        WClass::Wa
    } else if status == Status::Black {
        WClass::B
    } else {
        match sig {
            0 => WClass::W0,
            1 => WClass::W1,
            _ => WClass::Wa,
        }
    }
}

/// Path to the node with the given metallic code in the white tree under
/// the rightmost assignment.
///
/// Digit placement, windowed on `(μ, μ+1)` with `μ` the node of the
/// consumed prefix (classes as in [`WClass`], `μ` of class `wa` also
/// covering the root):
///
/// - digit 0 → son of `μ`, rank `p−4` (`b`/`w0`/`w1`) or `p−3` (`wa`);
/// - digit 1 → son of `μ`, rank `p−3` (`b`/`w0`/`w1`) or `p−2` (`wa`);
/// - digit 2 under `w0`/`w1` → son of `μ`, rank `p−2`;
/// - digit `a ≥ 2` otherwise → son of `μ+1`, rank `a−2` if `μ+1` is of
///   class `b`/`w1`, else `a−1`.
pub fn path_white_metallic(
    params: Params,
    code: &MetallicCode,
) -> Result<Vec<PathStep>, NavError> {
    if code.params().p() != params.p() {
        return Err(NavError::ParamsMismatch {
            expected: params.p(),
            got: code.params().p(),
        });
    }
    if code.is_zero() {
        return Err(NavError::Zero);
    }
    let digits = code.digits();
    let p = params.p();
    let v = digits[0];

    let (mut mu, mut mu1) = if v == 1 {
        let root = Win::root(Status::White);
        let two = son_of(params, &root, 1);
        (root, two)
    } else {
        let root = Win::root(Status::White);
        (son_of(params, &root, v - 1), son_of(params, &root, v))
    };

    for (k, &a) in digits.iter().enumerate().skip(1) {
        let prefix = MetallicCode::from_digits(params, digits[..k].to_vec())?;
        let cls0 = wclass(mu.status, prefix.signature(), mu.is_root());
        let cls1 = wclass(mu1.status, prefix.inc().signature(), false);

        let (father_is_mu, rank) = match a {
            0 => (true, if cls0 == WClass::Wa { p - 3 } else { p - 4 }),
            1 => (true, if cls0 == WClass::Wa { p - 2 } else { p - 3 }),
            2 if matches!(cls0, WClass::W0 | WClass::W1) => (true, p - 2),
            _ => {
                let shift = if matches!(cls1, WClass::B | WClass::W1) { 2 } else { 1 };
                if a < shift + 1 {
                    return Err(NavError::Placement { digit: a });
                }
                (false, a - shift)
            }
        };

        let f = if father_is_mu { &mu } else { &mu1 };
        let nu = son_of(params, f, rank);
        let nu1 = if rank < f.fanout(params) {
            son_of(params, f, rank + 1)
        } else {
            // Last son: its successor is the first son of the father's
            // successor, which is μ+1 (a son of μ+1 is never last).
            son_of(params, &mu1, 1)
        };
        mu = nu;
        mu1 = nu1;
    }
    Ok(mu.path)
}

/// Path to the node with the given nzm code in the white tree under the
/// rightmost assignment.
///
/// Placement on `(μ, μ+1)`: digit 1 → last (black) son of `μ`; digit
/// `a ≥ 2` → son of `μ+1` at rank `a−1` (under a black `μ+1` the digit
/// is at most `p−3`).
pub fn path_white_nzm(params: Params, code: &NzmCode) -> Result<Vec<PathStep>, NavError> {
    if code.params().p() != params.p() {
        return Err(NavError::ParamsMismatch {
            expected: params.p(),
            got: code.params().p(),
        });
    }
    let digits = code.digits();
    let v = digits[0];

    let root = Win::root(Status::White);
    let (mut mu, mut mu1) = if v == 1 {
        (root.clone(), son_of(params, &root, 1))
    } else {
        (son_of(params, &root, v - 1), son_of(params, &root, v))
    };

    for &a in &digits[1..] {
        let (father_is_mu, rank) = if a == 1 {
            (true, mu.fanout(params))
        } else {
            if mu1.status == Status::Black && a - 1 > params.black_sons() - 1 {
                return Err(NavError::Placement { digit: a });
            }
            (false, a - 1)
        };
        let f = if father_is_mu { &mu } else { &mu1 };
        let nu = son_of(params, f, rank);
        let nu1 = if rank < f.fanout(params) {
            son_of(params, f, rank + 1)
        } else {
            son_of(params, &mu1, 1)
        };
        mu = nu;
        mu1 = nu1;
    }
    Ok(mu.path)
}

/// Path to the node with the given metallic code in the black tree under
/// the rightmost assignment.
///
/// Placement on `(μ, μ+1)`: digit 0 → last (black) son of `μ`; digit
/// `a ≥ 1` → son of `μ+1` at rank `a` (under a black `μ+1` the digit is
/// at most `p−4`).
pub fn path_black_metallic(
    params: Params,
    code: &MetallicCode,
) -> Result<Vec<PathStep>, NavError> {
    if code.params().p() != params.p() {
        return Err(NavError::ParamsMismatch {
            expected: params.p(),
            got: code.params().p(),
        });
    }
    if code.is_zero() {
        return Err(NavError::Zero);
    }
    let digits = code.digits();
    let v = digits[0];

    let root = Win::root(Status::Black);
    let (mut mu, mut mu1) = if v == 1 {
        (root.clone(), son_of(params, &root, 1))
    } else {
        (son_of(params, &root, v - 1), son_of(params, &root, v))
    };

    for &a in &digits[1..] {
        let (father_is_mu, rank) = if a == 0 {
            (true, mu.fanout(params))
        } else {
            if mu1.status == Status::Black && a > params.black_sons() - 1 {
                return Err(NavError::Placement { digit: a });
            }
            (false, a)
        };
        let f = if father_is_mu { &mu } else { &mu1 };
        let nu = son_of(params, f, rank);
        let nu1 = if rank < f.fanout(params) {
            son_of(params, f, rank + 1)
        } else {
            son_of(params, &mu1, 1)
        };
        mu = nu;
        mu1 = nu1;
    }
    Ok(mu.path)
}

/// Path to the node with the given nzm code in the black tree under the
/// rightmost assignment.
///
/// The black-tree nzm son rules reach back two nodes (a `w1`/`wx` node's
/// first son is coded on `[ν−2]`), so the window is `(μ, μ+1, μ+2)`.
/// Placement: digit `a ≤ p−3` → son of `μ+1`, rank `a` (`μ+1` black or
/// of signature `∉ {1, x}`) or `a+1` (`μ+1` white of signature 1 or
/// `x`); digit `x = p−2` → last son of a signature-neutral white `μ+1`,
/// else first son of `μ+2`.
pub fn path_black_nzm(params: Params, code: &NzmCode) -> Result<Vec<PathStep>, NavError> {
    if code.params().p() != params.p() {
        return Err(NavError::ParamsMismatch {
            expected: params.p(),
            got: code.params().p(),
        });
    }
    let digits = code.digits();
    let p = params.p();
    let x = params.x();

    // Level-one nodes are 2..p−2; the values p−1 and p already sit on
    // level two, as the first two sons of node 2.
    let node_for = |t: u32| -> Win {
        let root = Win::root(Status::Black);
        if t == 1 {
            root
        } else if t <= p - 2 {
            son_of(params, &root, t - 1)
        } else {
            let two = son_of(params, &root, 1);
            son_of(params, &two, t - (p - 1) + 1)
        }
    };

    let v = digits[0];
    let mut mu = node_for(v);
    let mut mu1 = node_for(v + 1);
    let mut mu2 = node_for(v + 2);

    // `w1`/`wx` white nodes (signature 1 or x) shift son ranks by one.
    let shifted = |w: &Win, sig: u32| w.status == Status::White && (sig == 1 || sig == x);

    for (k, &a) in digits.iter().enumerate().skip(1) {
        let prefix = NzmCode::from_digits(params, digits[..k].to_vec())?;
        let succ1 = prefix.inc();
        let sig1 = succ1.signature();
        let sig2 = succ1.inc().signature();

        let (father, rank): (&Win, u32) = if a < x {
            let rank = if shifted(&mu1, sig1) { a + 1 } else { a };
            (&mu1, rank)
        } else if mu1.status == Status::White && !shifted(&mu1, sig1) {
            (&mu1, p - 2)
        } else {
            if !shifted(&mu2, sig2) {
                return Err(NavError::Placement { digit: a });
            }
            (&mu2, 1)
        };
        if rank > father.fanout(params) {
            return Err(NavError::Placement { digit: a });
        }

        let father_is_mu1 = std::ptr::eq(father, &mu1);
        let nu = son_of(params, father, rank);
        // Successors: sons of consecutive fathers are consecutive, so
        // walk on through the father's remaining sons, then μ+2's.
        let (nu1, nu2) = if father_is_mu1 {
            let avail = father.fanout(params) - rank;
            match avail {
                0 => (son_of(params, &mu2, 1), son_of(params, &mu2, 2)),
                1 => (son_of(params, father, rank + 1), son_of(params, &mu2, 1)),
                _ => (
                    son_of(params, father, rank + 1),
                    son_of(params, father, rank + 2),
                ),
            }
        } else {
            (son_of(params, &mu2, 2), son_of(params, &mu2, 3))
        };
        mu = nu;
        mu1 = nu1;
        mu2 = nu2;
    }
    Ok(mu.path)
}

// ---------------------------------------------------------------------------
// Neighbours
// ---------------------------------------------------------------------------

/// Which tiling a neighbour query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TilingKind {
    /// `{p,4}` — every tile has `p` sides.
    #[serde(rename = "p4")]
    P4,
    /// `{p+2,3}` — every tile has `p+2` sides.
    #[serde(rename = "p_plus_2_3")]
    PPlus23,
}

impl fmt::Display for TilingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingKind::P4 => write!(f, "p4"),
            TilingKind::PPlus23 => write!(f, "p_plus_2_3"),
        }
    }
}

impl FromStr for TilingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p4" => Ok(TilingKind::P4),
            "p23" | "p_plus_2_3" => Ok(TilingKind::PPlus23),
            other => Err(format!("unknown tiling `{other}` (expected p4 or p23)")),
        }
    }
}

/// What a neighbouring tile is, relative to the queried one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// The father in the tree.
    Father,
    /// The son of the given rank.
    Son(u32),
    /// The black son of the same-level predecessor `ν−1`.
    BlackSonOfPredecessor,
    /// `ν−1` itself (only a neighbour in `{p+2,3}`).
    SameLevelPrev,
    /// `ν+1` itself (only a neighbour in `{p+2,3}`).
    SameLevelNext,
    /// The father's successor (a neighbour of black tiles only).
    UncleNext,
    /// A tile outside the sector/strip; it has no code here.
    External,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Father => write!(f, "father"),
            Role::Son(j) => write!(f, "son:{j}"),
            Role::BlackSonOfPredecessor => write!(f, "black-son-of-predecessor"),
            Role::SameLevelPrev => write!(f, "same-level-prev"),
            Role::SameLevelNext => write!(f, "same-level-next"),
            Role::UncleNext => write!(f, "uncle-next"),
            Role::External => write!(f, "external"),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One side of a tile: its side number, the role of the tile behind it,
/// and that tile's code (absent for external sides).
#[derive(Debug, Clone, Serialize)]
pub struct NeighbourEntry {
    /// Side number, counted from 1.
    pub index: u32,
    /// Relation of the neighbouring tile to the queried one.
    pub role: Role,
    /// Node number of the neighbour, when it lies inside the
    /// sector/strip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num: Option<u64>,
    /// Canonical code of the neighbour in the requested system.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
}

/// The neighbours of tile `num` in the given tiling, computed from the
/// tree (ground truth, not the closed-form tables).
///
/// Side layout, counter-clockwise from the father:
/// `{p,4}`: father, black son of `ν−1`, sons in rank order, and for
/// black tiles the father's successor on the last side.
/// `{p+2,3}`: father, `ν−1`, black son of `ν−1`, sons, `ν+1`, and for
/// black tiles the father's successor.
///
/// The node's sons must be inside the built depth.
pub fn neighbours(
    tree: &Tree,
    num: u64,
    tiling: TilingKind,
    system: System,
) -> Result<Vec<NeighbourEntry>, NavError> {
    let node = *tree.node(num)?;
    let sons = tree.sons(num)?;
    let p = tree.params().p();

    let level_first = tree.level_start(node.level);
    let level_last = level_first + tree.level(node.level).len() as u64 - 1;

    let mut entries: Vec<NeighbourEntry> = Vec::new();
    let mut push = |role: Role, target: Option<u64>| -> Result<(), NavError> {
        let index = entries.len() as u32 + 1;
        let entry = match target {
            Some(n) => NeighbourEntry {
                index,
                role,
                num: Some(n),
                code: Some(tree.code(n, system)?.to_string()),
            },
            None => NeighbourEntry { index, role, num: None, code: None },
        };
        entries.push(entry);
        Ok(())
    };

    push(Role::Father, node.father)?;
    if tiling == TilingKind::PPlus23 {
        let prev = (num > level_first).then(|| num - 1);
        push(Role::SameLevelPrev, prev)?;
    }
    let bsp = if num > level_first {
        let prev = tree.node(num - 1)?;
        Some(prev.sons_first + prev.black_rank as u64 - 1)
    } else {
        None
    };
    push(Role::BlackSonOfPredecessor, bsp)?;
    for (j, son) in sons.iter().enumerate() {
        push(Role::Son(j as u32 + 1), Some(son.num))?;
    }
    if tiling == TilingKind::PPlus23 {
        let next = (num < level_last).then(|| num + 1);
        push(Role::SameLevelNext, next)?;
    }
    if node.status == Status::Black {
        let uncle = match node.father {
            Some(f) => {
                let fnode = tree.node(f)?;
                let f_last =
                    tree.level_start(fnode.level) + tree.level(fnode.level).len() as u64 - 1;
                (f < f_last).then(|| f + 1)
            }
            None => None,
        };
        push(Role::UncleNext, uncle)?;
    }

    // Absent targets are sides that leave the sector/strip.
    for e in &mut entries {
        if e.num.is_none() {
            e.role = Role::External;
        }
    }

    let expected = match tiling {
        TilingKind::P4 => p,
        TilingKind::PPlus23 => p + 2,
    };
    debug_assert_eq!(entries.len() as u32, expected);
    Ok(entries)
}

// ---------------------------------------------------------------------------
// Formula audit
// ---------------------------------------------------------------------------

/// First disagreement between a printed formula row and the tree.
#[derive(Debug, Clone, Serialize)]
pub struct TableMismatch {
    /// Node on which the disagreement occurred.
    pub num: u64,
    /// Side number of the disagreeing entry.
    pub side: u32,
    /// Canonical form of the formula's value.
    pub formula: String,
    /// Code of the true neighbour behind that side.
    pub truth: String,
}

/// Tally for one formula row (one node class × one side group).
#[derive(Debug, Clone, Serialize)]
pub struct TableRowStat {
    /// Row label, `class/row-kind`.
    pub row: String,
    /// Nodes on which formula and tree agree.
    pub matches: u64,
    /// Nodes on which they disagree.
    pub mismatches: u64,
    /// Nodes on which the comparison is undefined (external truth,
    /// formula reaching before the root, or a skipped duplicate row).
    pub skipped: u64,
    /// First disagreement, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<TableMismatch>,
}

/// Result of [`table_audit`]: per-row match statistics plus free-form
/// notes about rows that need a special reading.
#[derive(Debug, Clone, Serialize)]
pub struct TableAuditReport {
    /// `p` of the audited tree.
    pub p: u32,
    /// Which tree the table describes.
    pub kind: TreeKind,
    /// Code system of the table.
    pub system: System,
    /// Tiling whose side numbering the table uses.
    pub tiling: TilingKind,
    /// Levels audited (`1 ..= depth−1`).
    pub levels: u32,
    /// Total mismatches across all rows.
    pub total_mismatches: u64,
    /// Per-row tallies, in class order then side order.
    pub rows: Vec<TableRowStat>,
    /// Special-reading notes.
    pub notes: Vec<String>,
}

/// One evaluated formula row for one node.
struct RowEval {
    class: &'static str,
    kind: &'static str,
    side: u32,
    /// Value of the formula, `None` when it is undefined (reaches before
    /// the root) or deliberately skipped.
    value: Option<u64>,
    /// Skip comparison entirely (duplicated printed row).
    skip: bool,
}

fn row(class: &'static str, kind: &'static str, side: u32, value: Option<u64>) -> RowEval {
    RowEval { class, kind, side, value, skip: false }
}

/// Evaluates the closed-form neighbour formulas of the audited tree's
/// table against [`neighbours`] for every interior node and reports
/// per-row statistics. Mismatches are report content, not errors; the
/// tree must use the rightmost assignment.
pub fn table_audit(
    tree: &Tree,
    tiling: TilingKind,
    system: System,
) -> Result<TableAuditReport, NavError> {
    if tree.assignment() != Assignment::Rightmost {
        return Err(NavError::NotRightmost { assignment: tree.assignment().label() });
    }
    let params = tree.params();
    let p = params.p();
    let d = params.d();
    let x = params.x();

    let canon = |v: u64| -> Option<String> {
        AnyCode::encode(params, system, &BigUint::from(v)).ok().map(|c| c.to_string())
    };
    let digits_of = |t: u64| -> Option<Vec<u32>> {
        match AnyCode::encode(params, system, &BigUint::from(t)) {
            Ok(AnyCode::Metallic(c)) => Some(c.digits().to_vec()),
            Ok(AnyCode::Nzm(c)) => Some(c.digits().to_vec()),
            Err(_) => None,
        }
    };
    let eval = |word: &[u32]| -> Option<u64> { u64::try_from(eval_digits(params, word)).ok() };

    let mut rows: Vec<TableRowStat> = Vec::new();
    let mut notes: Vec<Vec<String>> = Vec::new();
    let mut tally =
        |class: &str, kind: &str, outcome: i8, mismatch: Option<TableMismatch>| {
            let label = format!("{class}/{kind}");
            let stat = match rows.iter_mut().find(|r| r.row == label) {
                Some(s) => s,
                None => {
                    rows.push(TableRowStat {
                        row: label,
                        matches: 0,
                        mismatches: 0,
                        skipped: 0,
                        first_mismatch: None,
                    });
                    rows.last_mut().unwrap()
                }
            };
            match outcome {
                1 => stat.matches += 1,
                -1 => {
                    stat.mismatches += 1;
                    if stat.first_mismatch.is_none() {
                        stat.first_mismatch = mismatch;
                    }
                }
                _ => stat.skipped += 1,
            }
        };

    let depth = tree.depth();
    let levels = depth.saturating_sub(1);
    let mut total_mismatches = 0u64;
    let mut duplicate_note = false;

    for level in 1..=levels {
        for node in tree.level(level) {
            let nu = node.num;
            let code = digits_of(nu).expect("built nodes have codes");
            let sig = *code.last().unwrap();

            // q: the node's code with the last digit dropped.
            let q = |k: i64| -> Option<u64> {
                if code.len() < 2 {
                    return None;
                }
                let base = eval(&code[..code.len() - 1])? as i64;
                u64::try_from(base + k).ok().filter(|&v| v > 0)
            };
            // [ν+k] for the same-level neighbours and the printed
            // `[ν+1]` rows.
            let nv = |k: i64| -> Option<u64> { u64::try_from(nu as i64 + k).ok().filter(|&v| v > 0) };
            // [ν+off] with one digit appended.
            let ap = |off: i64, digit: u32| -> Option<u64> {
                let t = u64::try_from(nu as i64 + off).ok().filter(|&v| v > 0)?;
                let mut word = digits_of(t)?;
                word.push(digit);
                eval(&word)
            };

            let mut evals: Vec<RowEval> = Vec::new();
            match (tree.kind(), system) {
                // White tree, nzm codes.
                (TreeKind::White, System::Nzm) => match node.status {
                    Status::White => match tiling {
                        TilingKind::P4 => {
                            evals.push(row("w", "father", 1, q(-1)));
                            evals.push(row("w", "bsp", 2, ap(-1, 1)));
                            for side in 3..=p - 1 {
                                evals.push(row("w", "sons-prev", side, ap(-1, side - 1)));
                            }
                            evals.push(row("w", "sons-self", p, ap(0, 1)));
                        }
                        TilingKind::PPlus23 => {
                            evals.push(row("w", "father", 1, q(-1)));
                            evals.push(row("w", "prev", 2, nv(-1)));
                            evals.push(row("w", "bsp", 3, ap(-1, 1)));
                            for side in 4..=p {
                                evals.push(row("w", "sons-prev", side, ap(-1, side - 2)));
                            }
                            evals.push(row("w", "sons-self", p + 1, ap(0, 1)));
                            evals.push(row("w", "next", p + 2, nv(1)));
                        }
                    },
                    Status::Black => match tiling {
                        TilingKind::P4 => {
                            evals.push(row("b", "father", 1, q(0)));
                            evals.push(row("b", "bsp", 2, ap(-1, 1)));
                            for side in 3..=p - 2 {
                                evals.push(row("b", "sons-prev", side, ap(-1, side - 1)));
                            }
                            evals.push(row("b", "sons-self", p - 1, ap(0, 1)));
                            evals.push(row("b", "uncle", p, q(1)));
                        }
                        TilingKind::PPlus23 => {
                            evals.push(row("b", "father", 1, q(-1)));
                            evals.push(row("b", "prev", 2, nv(-1)));
                            evals.push(row("b", "bsp", 3, ap(-1, 1)));
                            for side in 4..=p - 1 {
                                evals.push(row("b", "sons-prev", side, ap(-1, side - 2)));
                            }
                            evals.push(row("b", "sons-self", p, ap(0, 1)));
                            evals.push(row("b", "next", p + 1, nv(1)));
                            evals.push(row("b", "uncle", p + 2, q(1)));
                        }
                    },
                },
                // White tree, metallic codes.
                (TreeKind::White, System::Metallic) => {
                    let class = match (node.status, sig) {
                        (Status::Black, _) => "b",
                        (Status::White, 0) => "w0",
                        (Status::White, 1) => "w1",
                        (Status::White, _) => "wa",
                    };
                    // (bsp digit, [ν−1]-row sides as (side, digit) pairs,
                    // trailing [ν]·j digits, has-uncle)
                    let bsp_digit = if class == "w1" || class == "b" { 2 } else { 1 };
                    let prev_rows: Vec<(u32, u32)> = match class {
                        "wa" => (2..=p - 3).map(|i| (i + 1, i)).collect(),
                        "w0" => (2..=p.saturating_sub(4)).map(|i| (i + 1, i)).collect(),
                        _ => (3..=p - 3).map(|i| (i, i)).collect(),
                    };
                    let selfs: Vec<u32> = match class {
                        "wa" => vec![0, 1],
                        "b" => vec![0, 1],
                        _ => vec![0, 1, 2],
                    };
                    let off = if tiling == TilingKind::PPlus23 { 1 } else { 0 };
                    evals.push(row(class, "father", 1, q(-1)));
                    if tiling == TilingKind::PPlus23 {
                        evals.push(row(class, "prev", 2, nv(-1)));
                    }
                    evals.push(row(class, "bsp", 2 + off, ap(-1, bsp_digit)));
                    for &(side, digit) in &prev_rows {
                        evals.push(row(class, "sons-prev", side + off, ap(-1, digit)));
                    }
                    let mut side = prev_rows.last().map(|&(s, _)| s).unwrap_or(2) + 1 + off;
                    for &digit in &selfs {
                        evals.push(row(class, "sons-self", side, ap(0, digit)));
                        side += 1;
                    }
                    if tiling == TilingKind::PPlus23 {
                        if class == "b" {
                            evals.push(row(class, "next", side, nv(1)));
                            evals.push(row(class, "uncle", side + 1, q(0)));
                        } else {
                            evals.push(row(class, "next", side, nv(1)));
                        }
                    } else if class == "b" {
                        evals.push(row(class, "uncle", side, q(0)));
                    }
                }
                // Black tree, metallic codes.
                (TreeKind::Black, System::Metallic) => match node.status {
                    Status::White => match tiling {
                        TilingKind::P4 => {
                            evals.push(row("wa", "father", 1, q(1)));
                            evals.push(row("wa", "bsp", 2, ap(-1, 0)));
                            for side in 3..=p - 1 {
                                evals.push(row("wa", "sons-prev", side, ap(-1, side - 2)));
                            }
                            evals.push(row("wa", "sons-self", p, ap(0, 0)));
                        }
                        TilingKind::PPlus23 => {
                            evals.push(row("wa", "father", 1, q(1)));
                            evals.push(row("wa", "prev", 2, nv(-1)));
                            evals.push(row("wa", "bsp", 3, ap(-1, 0)));
                            for side in 4..=p {
                                evals.push(row("wa", "sons-prev", side, ap(-1, side - 3)));
                            }
                            evals.push(row("wa", "sons-self", p + 1, ap(0, 0)));
                            evals.push(row("wa", "next", p + 2, nv(1)));
                        }
                    },
                    Status::Black => match tiling {
                        TilingKind::P4 => {
                            evals.push(row("b0", "father", 1, q(0)));
                            evals.push(row("b0", "bsp", 2, ap(-1, 0)));
                            for side in 3..=p - 1 {
                                evals.push(row("b0", "sons-prev", side, ap(-1, side - 2)));
                            }
                            // The printed side-p row repeats the black
                            // son where the tree has the uncle; recorded
                            // as a note, not compared.
                            evals.push(RowEval {
                                class: "b0",
                                kind: "duplicate-b-son",
                                side: p,
                                value: None,
                                skip: true,
                            });
                            if !duplicate_note {
                                duplicate_note = true;
                                notes.push(vec![format!(
                                    "{{p,4}} b0 side {p}: the printed row repeats the black \
                                     son formula [nu]*0 (already matched at side {}); the \
                                     tree's neighbour there is the father's successor. The \
                                     row is skipped rather than counted as a mismatch.",
                                    p - 1
                                )]);
                            }
                        }
                        TilingKind::PPlus23 => {
                            evals.push(row("b0", "father", 1, q(0)));
                            evals.push(row("b0", "prev", 2, nv(-1)));
                            evals.push(row("b0", "bsp", 3, ap(-1, 0)));
                            for side in 4..=p - 1 {
                                evals.push(row("b0", "sons-prev", side, ap(-1, side - 3)));
                            }
                            evals.push(row("b0", "sons-self", p, ap(0, 0)));
                            evals.push(row("b0", "next", p + 1, nv(1)));
                            evals.push(row("b0", "uncle", p + 2, q(1)));
                        }
                    },
                },
                // Black tree, nzm codes.
                (TreeKind::Black, System::Nzm) => {
                    let class = match (node.status, sig) {
                        (Status::Black, _) => "b",
                        (Status::White, 1) => "w1",
                        (Status::White, s) if s == x => "wx",
                        (Status::White, _) => "wa",
                    };
                    let off = if tiling == TilingKind::PPlus23 { 1 } else { 0 };
                    let father_shift = if class == "wx" { 2 } else { 1 };
                    evals.push(row(class, "father", 1, q(father_shift)));
                    if tiling == TilingKind::PPlus23 {
                        evals.push(row(class, "prev", 2, nv(-1)));
                    }
                    match class {
                        "w1" | "wx" => {
                            evals.push(row(class, "bsp", 2 + off, ap(-2, d)));
                            evals.push(row(class, "first-son", 3 + off, ap(-2, x)));
                            for i in 1..=p - 4 {
                                evals.push(row(class, "sons-prev", i + 3 + off, ap(-1, i)));
                            }
                            evals.push(row(class, "sons-self", p + off, ap(-1, d)));
                        }
                        _ => {
                            evals.push(row(class, "bsp", 2 + off, ap(-2, x)));
                            for i in 1..=p - 3 {
                                evals.push(row(class, "sons-prev", i + 2 + off, ap(-1, i)));
                            }
                            if class == "wa" {
                                evals.push(row(class, "sons-self", p + off, ap(-1, x)));
                            } else if tiling == TilingKind::P4 {
                                // {p,4} black column prints [ν+1] on the
                                // uncle side.
                                evals.push(row(class, "uncle", p, nv(1)));
                            }
                        }
                    }
                    if tiling == TilingKind::PPlus23 {
                        evals.push(row(class, "next", p + 1, nv(1)));
                        if class == "b" {
                            evals.push(row(class, "uncle", p + 2, q(2)));
                        }
                    }
                }
            }

            let truth = neighbours(tree, nu, tiling, system)?;
            for e in evals {
                if e.skip {
                    tally(e.class, e.kind, 0, None);
                    continue;
                }
                let entry = &truth[e.side as usize - 1];
                if entry.role == Role::External {
                    tally(e.class, e.kind, 0, None);
                    continue;
                }
                match e.value.and_then(canon) {
                    None => tally(e.class, e.kind, 0, None),
                    Some(formula) => {
                        let truth_code = entry.code.clone().unwrap_or_default();
                        if formula == truth_code {
                            tally(e.class, e.kind, 1, None);
                        } else {
                            total_mismatches += 1;
                            tally(
                                e.class,
                                e.kind,
                                -1,
                                Some(TableMismatch {
                                    num: nu,
                                    side: e.side,
                                    formula,
                                    truth: truth_code,
                                }),
                            );
                        }
                    }
                }
            }
        }
    }

    Ok(TableAuditReport {
        p,
        kind: tree.kind(),
        system,
        tiling,
        levels,
        total_mismatches,
        rows,
        notes: notes.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::Assignment;

    fn params(p: u32) -> Params {
        Params::new(p).unwrap()
    }

    fn wtree(p: u32, depth: u32) -> Tree {
        Tree::build(params(p), TreeKind::White, Assignment::Rightmost, depth, 1_000_000)
            .unwrap()
    }

    fn btree(p: u32, depth: u32) -> Tree {
        Tree::build(params(p), TreeKind::Black, Assignment::Rightmost, depth, 1_000_000)
            .unwrap()
    }

    fn w(rank: u32) -> PathStep {
        PathStep { status: StepStatus::White, rank }
    }

    fn b(rank: u32) -> PathStep {
        PathStep { status: StepStatus::Black, rank }
    }

    #[test]
    fn oracle_examples() {
        let t = wtree(5, 3);
        assert_eq!(path_oracle(&t, 1).unwrap(), vec![ROOT_STEP]);
        assert_eq!(path_oracle(&t, 7).unwrap(), vec![ROOT_STEP, w(1), b(3)]);
        let t = btree(5, 3);
        assert_eq!(path_oracle(&t, 8).unwrap(), vec![ROOT_STEP, b(2), b(2)]);
    }

    #[test]
    fn white_metallic_examples() {
        let p = params(5);
        let code = MetallicCode::parse(p, "2,1").unwrap();
        assert_eq!(
            path_white_metallic(p, &code).unwrap(),
            vec![ROOT_STEP, w(1), b(3)]
        );
        let code = MetallicCode::parse(p, "1").unwrap();
        assert_eq!(path_white_metallic(p, &code).unwrap(), vec![ROOT_STEP]);
        let p9 = params(9);
        let code = MetallicCode::parse(p9, "1,0").unwrap();
        assert_eq!(path_white_metallic(p9, &code).unwrap(), vec![ROOT_STEP, w(6)]);
    }

    #[test]
    fn white_nzm_examples() {
        let p = params(5);
        let t = wtree(5, 3);
        for (text, num) in [("2,2", 8u64), ("1", 1), ("1,1,1", 12)] {
            let code = NzmCode::parse(p, text).unwrap();
            assert_eq!(
                path_white_nzm(p, &code).unwrap(),
                path_oracle(&t, num).unwrap(),
                "code {text}"
            );
        }
    }

    #[test]
    fn black_metallic_examples() {
        let p = params(5);
        let t = btree(5, 3);
        let code = MetallicCode::parse(p, "1,0,0").unwrap();
        assert_eq!(
            path_black_metallic(p, &code).unwrap(),
            path_oracle(&t, 8).unwrap()
        );
        let code = MetallicCode::parse(p, "1").unwrap();
        assert_eq!(path_black_metallic(p, &code).unwrap(), vec![ROOT_STEP]);
        // Node 2 is the first (white) son of the root.
        let code = MetallicCode::parse(p, "2").unwrap();
        assert_eq!(path_black_metallic(p, &code).unwrap(), vec![ROOT_STEP, w(1)]);
    }

    #[test]
    fn black_nzm_examples() {
        let p = params(5);
        let t = btree(5, 3);
        for (text, num) in [("1,3", 6u64), ("2,2", 8), ("1", 1), ("3,2", 11)] {
            let code = NzmCode::parse(p, text).unwrap();
            assert_eq!(
                path_black_nzm(p, &code).unwrap(),
                path_oracle(&t, num).unwrap(),
                "code {text}"
            );
        }
    }

    #[test]
    fn zero_code_is_rejected() {
        let p = params(5);
        let zero = MetallicCode::zero(p);
        assert!(matches!(path_white_metallic(p, &zero), Err(NavError::Zero)));
        assert!(matches!(path_black_metallic(p, &zero), Err(NavError::Zero)));
    }

    #[test]
    fn params_mismatch_is_rejected() {
        let code = MetallicCode::parse(params(5), "2,1").unwrap();
        assert!(matches!(
            path_white_metallic(params(7), &code),
            Err(NavError::ParamsMismatch { expected: 7, got: 5 })
        ));
    }

    fn check_all_paths(p: u32, depth: u32) {
        let pp = params(p);
        let wt = wtree(p, depth);
        for num in 1..=wt.last_num() {
            let oracle = path_oracle(&wt, num).unwrap();
            let mc = wt.metallic_code(num).unwrap();
            assert_eq!(
                path_white_metallic(pp, &mc).unwrap(),
                oracle,
                "white metallic p={p} num={num}"
            );
            let nz = wt.nzm_code(num).unwrap();
            assert_eq!(
                path_white_nzm(pp, &nz).unwrap(),
                oracle,
                "white nzm p={p} num={num}"
            );
        }
        let bt = btree(p, depth);
        for num in 1..=bt.last_num() {
            let oracle = path_oracle(&bt, num).unwrap();
            let mc = bt.metallic_code(num).unwrap();
            assert_eq!(
                path_black_metallic(pp, &mc).unwrap(),
                oracle,
                "black metallic p={p} num={num}"
            );
            let nz = bt.nzm_code(num).unwrap();
            assert_eq!(
                path_black_nzm(pp, &nz).unwrap(),
                oracle,
                "black nzm p={p} num={num}"
            );
        }
    }

    #[test]
    fn paths_match_oracle_p5() {
        check_all_paths(5, 6);
    }

    #[test]
    fn paths_match_oracle_p7() {
        check_all_paths(7, 5);
    }

    #[test]
    fn paths_match_oracle_p9() {
        check_all_paths(9, 4);
    }

    #[test]
    fn path_length_tracks_code_length() {
        // The path has level+1 nodes and the code has level or level+1
        // digits, so the path is never more than one node longer than
        // the code; both lengths occur.
        let t = wtree(7, 5);
        let p = params(7);
        let mut equal = 0u64;
        let mut longer = 0u64;
        for num in 2..=t.last_num() {
            let code = t.metallic_code(num).unwrap();
            let len = path_white_metallic(p, &code).unwrap().len();
            match len.checked_sub(code.digits().len()) {
                Some(0) => equal += 1,
                Some(1) => longer += 1,
                _ => panic!("num={num}: path {len} vs code {}", code.digits().len()),
            }
        }
        assert!(equal > 0 && longer > 0);
    }

    #[test]
    fn neighbour_example_p4() {
        let t = wtree(5, 3);
        let n = neighbours(&t, 3, TilingKind::P4, System::Metallic).unwrap();
        assert_eq!(n.len(), 5);
        assert_eq!(n[0].role, Role::Father);
        assert_eq!(n[0].code.as_deref(), Some("1"));
        assert_eq!(n[1].role, Role::BlackSonOfPredecessor);
        assert_eq!(n[1].num, Some(7));
        assert_eq!(n[1].code.as_deref(), Some("2,1"));
        let sons: Vec<(u64, &str)> = n[2..5]
            .iter()
            .map(|e| (e.num.unwrap(), e.code.as_deref().unwrap()))
            .collect();
        assert_eq!(sons, vec![(8, "1,0,0"), (9, "1,0,1"), (10, "1,0,2")]);
    }

    #[test]
    fn neighbour_example_p23() {
        let t = wtree(5, 3);
        let n = neighbours(&t, 3, TilingKind::PPlus23, System::Metallic).unwrap();
        assert_eq!(n.len(), 7);
        assert_eq!(n[1].role, Role::SameLevelPrev);
        assert_eq!(n[1].num, Some(2));
        assert_eq!(n[1].code.as_deref(), Some("2"));
        assert_eq!(n[6].role, Role::SameLevelNext);
        assert_eq!(n[6].num, Some(4));
        assert_eq!(n[6].code.as_deref(), Some("1,1"));
    }

    #[test]
    fn root_non_son_sides_are_external() {
        let t = wtree(5, 2);
        let n = neighbours(&t, 1, TilingKind::P4, System::Metallic).unwrap();
        assert_eq!(n.len(), 5);
        assert_eq!(n[0].role, Role::External);
        assert_eq!(n[1].role, Role::External);
        assert!(n[2..].iter().all(|e| matches!(e.role, Role::Son(_))));
        let n = neighbours(&t, 1, TilingKind::PPlus23, System::Metallic).unwrap();
        assert_eq!(
            n.iter().filter(|e| e.role == Role::External).count(),
            4 // father, prev, black-son-of-predecessor, next
        );
    }

    #[test]
    fn side_counts_and_indices() {
        for (tree, p) in [(wtree(7, 4), 7u32), (btree(7, 4), 7)] {
            for level in 0..tree.depth() {
                for node in tree.level(level) {
                    let n4 = neighbours(&tree, node.num, TilingKind::P4, System::Metallic)
                        .unwrap();
                    assert_eq!(n4.len() as u32, p);
                    let n23 =
                        neighbours(&tree, node.num, TilingKind::PPlus23, System::Nzm).unwrap();
                    assert_eq!(n23.len() as u32, p + 2);
                    for (i, e) in n23.iter().enumerate() {
                        assert_eq!(e.index as usize, i + 1);
                        assert_eq!(e.code.is_none(), e.role == Role::External);
                    }
                }
            }
        }
    }

    #[test]
    fn neighbour_symmetry() {
        // Son/father and prev/next pairs are mutual.
        for tree in [wtree(5, 4), btree(5, 4), wtree(7, 3), btree(7, 3)] {
            for level in 0..tree.depth() - 1 {
                for node in tree.level(level) {
                    let mine =
                        neighbours(&tree, node.num, TilingKind::PPlus23, System::Metallic)
                            .unwrap();
                    for e in &mine {
                        let Some(other) = e.num else { continue };
                        let other_node = tree.node(other).unwrap();
                        if other_node.level + 1 > tree.depth() {
                            continue;
                        }
                        let theirs =
                            neighbours(&tree, other, TilingKind::PPlus23, System::Metallic)
                                .unwrap();
                        match e.role {
                            Role::Son(_) => {
                                assert_eq!(theirs[0].role, Role::Father);
                                assert_eq!(theirs[0].num, Some(node.num));
                            }
                            Role::SameLevelNext => {
                                assert_eq!(theirs[1].role, Role::SameLevelPrev);
                                assert_eq!(theirs[1].num, Some(node.num));
                            }
                            Role::Father => {
                                assert!(theirs
                                    .iter()
                                    .any(|t| matches!(t.role, Role::Son(_))
                                        && t.num == Some(node.num)));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn black_metallic_table_is_exact() {
        for p in [5, 7, 9] {
            let t = btree(p, 4);
            for tiling in [TilingKind::P4, TilingKind::PPlus23] {
                let report = table_audit(&t, tiling, System::Metallic).unwrap();
                assert_eq!(
                    report.total_mismatches, 0,
                    "p={p} tiling={tiling}: {:?}",
                    report
                        .rows
                        .iter()
                        .filter(|r| r.mismatches > 0)
                        .collect::<Vec<_>>()
                );
                assert!(report.rows.iter().any(|r| r.matches > 0));
            }
        }
    }

    #[test]
    fn black_metallic_table_p4_duplicate_row_is_noted() {
        let t = btree(5, 4);
        let report = table_audit(&t, TilingKind::P4, System::Metallic).unwrap();
        assert!(!report.notes.is_empty());
        let dup = report.rows.iter().find(|r| r.row == "b0/duplicate-b-son").unwrap();
        assert!(dup.skipped > 0);
        assert_eq!(dup.matches + dup.mismatches, 0);
    }

    #[test]
    fn white_tables_flag_father_rows() {
        for p in [5, 7, 9] {
            let t = wtree(p, 4);
            for system in [System::Metallic, System::Nzm] {
                let report = table_audit(&t, TilingKind::P4, system).unwrap();
                // Every white-class father row disagrees with the tree;
                // the black {p,4} nzm father row is exact.
                for r in &report.rows {
                    if r.row.ends_with("/father") {
                        if system == System::Nzm && r.row == "b/father" {
                            assert_eq!(r.mismatches, 0, "p={p} {}", r.row);
                            assert!(r.matches > 0);
                        } else {
                            assert!(r.mismatches > 0, "p={p} {system:?} {}", r.row);
                            assert!(r.first_mismatch.is_some());
                        }
                    } else if r.row.ends_with("/sons-prev") || r.row.ends_with("/sons-self") {
                        assert_eq!(r.mismatches, 0, "p={p} {system:?} {}", r.row);
                    }
                }
            }
        }
    }

    #[test]
    fn white_table_audit_is_deterministic() {
        let t = wtree(7, 4);
        let a = serde_json::to_string(&table_audit(&t, TilingKind::P4, System::Metallic).unwrap())
            .unwrap();
        let b = serde_json::to_string(&table_audit(&t, TilingKind::P4, System::Metallic).unwrap())
            .unwrap();
        assert_eq!(a, b);
        assert!(a.contains("first_mismatch"));
    }

    #[test]
    fn black_nzm_table_reports() {
        let t = btree(7, 4);
        for tiling in [TilingKind::P4, TilingKind::PPlus23] {
            let report = table_audit(&t, tiling, System::Nzm).unwrap();
            // Father rows of all four classes are exact in this table.
            for r in &report.rows {
                if r.row.ends_with("/father") {
                    assert_eq!(r.mismatches, 0, "{tiling} {}", r.row);
                    assert!(r.matches > 0, "{tiling} {}", r.row);
                }
            }
        }
        // The {p,4} black column prints [nu+1] on the uncle side, where
        // the tree has the father's successor: a documented mismatch.
        let report = table_audit(&t, TilingKind::P4, System::Nzm).unwrap();
        let uncle = report.rows.iter().find(|r| r.row == "b/uncle").unwrap();
        assert!(uncle.mismatches > 0);
        // The {p+2,3} column's uncle row is value-exact.
        let report = table_audit(&t, TilingKind::PPlus23, System::Nzm).unwrap();
        let uncle = report.rows.iter().find(|r| r.row == "b/uncle").unwrap();
        assert_eq!(uncle.mismatches, 0);
    }

    #[test]
    fn audit_requires_rightmost() {
        let t = Tree::build(params(5), TreeKind::White, Assignment::Leftmost, 3, 1_000_000)
            .unwrap();
        assert!(matches!(
            table_audit(&t, TilingKind::P4, System::Metallic),
            Err(NavError::NotRightmost { .. })
        ));
    }

    #[test]
    fn skipped_entries_at_level_boundaries() {
        // Leftmost nodes have external predecessors, so [nu-1]-based rows
        // are skipped there.
        let t = btree(5, 4);
        let report = table_audit(&t, TilingKind::P4, System::Metallic).unwrap();
        let skipped: u64 = report.rows.iter().map(|r| r.skipped).sum();
        assert!(skipped > 0);
    }

    #[test]
    fn tiling_kind_round_trip() {
        assert_eq!("p4".parse::<TilingKind>().unwrap(), TilingKind::P4);
        assert_eq!("p23".parse::<TilingKind>().unwrap(), TilingKind::PPlus23);
        assert_eq!(TilingKind::PPlus23.to_string(), "p_plus_2_3");
        assert!("p5".parse::<TilingKind>().is_err());
    }
}
