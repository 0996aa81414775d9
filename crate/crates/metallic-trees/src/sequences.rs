//! Exact integer tables of the metallic sequences.
//!
//! Three interlocking sequences anchor all node numbering in this crate
//! (everything below is for a fixed `p ≥ 5`):
//!
//! - the *white metallic sequence* `m`: level sizes of the white tree,
//!   `m_0 = 1`, `m_1 = p−2`, `m_{n+2} = (p−2)·m_{n+1} − m_n`;
//! - the *black metallic sequence* `b`: level sizes of the black tree,
//!   same recurrence with `b_0 = 1`, `b_1 = p−3`;
//! - the *cumulative count* `M_n = Σ_{k≤n} m_k`: the number of the
//!   rightmost node on level `n` of the white tree. It satisfies
//!   `M_{n+2} = (p−2)·M_{n+1} − M_n + 1`.
//!
//! The cumulative black count needs no table of its own: `Σ_{k≤n} b_k = m_n`
//! exactly, so the rightmost node of level `n` in the black tree is `m_n`.
//!
//! All values are `BigUint`; the sequences grow like `(p−2)^n`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::params::Params;

/// Which of the two trees (and hence which level-size sequence) a query
/// refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeKind {
    /// White tree: level sizes `m_n`, rightmost node of level `n` is `M_n`.
    White,
    /// Black tree: level sizes `b_n`, rightmost node of level `n` is `m_n`.
    Black,
}

/// Memoized table of `m`, `b` and `M` up to a common length.
///
/// The table is grow-on-demand through `&mut self` (callers that share a
/// table across threads should pre-grow it with [`SequenceTable::ensure`]
/// and then share it read-only; entries are never mutated once written).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    params: Params,
    m: Vec<BigUint>,
    b: Vec<BigUint>,
    mcum: Vec<BigUint>,
}

impl SequenceTable {
    /// Creates a table holding the seed values `m_0, m_1`, `b_0, b_1`,
    /// `M_0, M_1`.
    pub fn new(params: Params) -> Self {
        let p2 = BigUint::from(params.x()); // p − 2
        let p3 = BigUint::from(params.d()); // p − 3
        SequenceTable {
            params,
            m: vec![BigUint::one(), p2.clone()],
            b: vec![BigUint::one(), p3],
            mcum: vec![BigUint::one(), &p2 + 1u32],
        }
    }

    /// The parameter pack this table was built for.
    pub fn params(&self) -> Params {
        self.params
    }

    /// Extends all three sequences so indices `0..=n` are available.
    pub fn ensure(&mut self, n: usize) {
        let coeff = BigUint::from(self.params.x());
        while self.m.len() <= n {
            let k = self.m.len();
            let next_m = &coeff * &self.m[k - 1] - &self.m[k - 2];
            self.mcum.push(&self.mcum[k - 1] + &next_m);
            self.m.push(next_m);
            let next_b = &coeff * &self.b[k - 1] - &self.b[k - 2];
            self.b.push(next_b);
        }
    }

    /// `m_n`, the white metallic sequence.
    pub fn metallic(&mut self, n: usize) -> BigUint {
        self.ensure(n);
        self.m[n].clone()
    }

    /// `b_n`, the black metallic sequence.
    pub fn black(&mut self, n: usize) -> BigUint {
        self.ensure(n);
        self.b[n].clone()
    }

    /// `M_n = Σ_{k≤n} m_k`, the number of the rightmost white node on
    /// level `n`.
    pub fn cumulative_white(&mut self, n: usize) -> BigUint {
        self.ensure(n);
        self.mcum[n].clone()
    }

    /// `Σ_{k≤n} b_k`, the number of the rightmost black-tree node on level
    /// `n`. Equals `m_n`; computed as the actual partial sum so the
    /// identity stays testable against [`SequenceTable::metallic`].
    pub fn cumulative_black(&mut self, n: usize) -> BigUint {
        self.ensure(n);
        self.b[..=n].iter().sum()
    }

    /// Borrowing accessor for `m_n`; the index must already be ensured.
    pub fn m(&self, n: usize) -> &BigUint {
        &self.m[n]
    }

    /// Borrowing accessor for `M_n`; the index must already be ensured.
    pub fn mcum(&self, n: usize) -> &BigUint {
        &self.mcum[n]
    }

    /// Borrowing accessor for `b_n`; the index must already be ensured.
    pub fn b(&self, n: usize) -> &BigUint {
        &self.b[n]
    }

    /// The level on which node `num ≥ 1` sits.
    ///
    /// Level 0 is the root `{1}`; level `n ≥ 1` of the white tree spans
    /// `M_{n−1}+1 ..= M_n`, of the black tree `m_{n−1}+1 ..= m_n`.
    pub fn level_of(&mut self, num: &BigUint, kind: TreeKind) -> usize {
        assert!(!num.is_zero(), "node numbers start at 1");
        let mut n = 0;
        loop {
            self.ensure(n);
            let boundary = match kind {
                TreeKind::White => &self.mcum[n],
                TreeKind::Black => &self.m[n],
            };
            if num <= boundary {
                return n;
            }
            n += 1;
        }
    }
}

/// Convenience one-shot `m_n` (builds a throwaway table).
pub fn metallic(params: Params, n: usize) -> BigUint {
    SequenceTable::new(params).metallic(n)
}

/// Convenience one-shot `b_n`.
pub fn black(params: Params, n: usize) -> BigUint {
    SequenceTable::new(params).black(n)
}

/// Convenience one-shot `M_n`.
pub fn cumulative_white(params: Params, n: usize) -> BigUint {
    SequenceTable::new(params).cumulative_white(n)
}

/// Convenience one-shot level lookup; see [`SequenceTable::level_of`].
pub fn level_of(params: Params, num: &BigUint, kind: TreeKind) -> usize {
    SequenceTable::new(params).level_of(num, kind)
}
