//! # metallic-trees — metallic numeration systems and tree navigation
//!
//! A library for the combinatorics of *metallic trees*: the infinite
//! bi-coloured trees generated by the substitution rules
//!
//! ```text
//! b → b w^(p−4)        w → b w^(p−3)        (p ≥ 5)
//! ```
//!
//! together with the two positional numeration systems they induce and the
//! navigation primitives they provide for the hyperbolic tilings `{p,4}` and
//! `{p+2,3}`.
//!
//! Module overview:
//! - [`params`]:     the tiling parameter `p` and the derived digit constants.
//! - [`sequences`]:  exact big-integer tables of the white/black metallic
//!                   sequences, cumulative counts, and level-boundary lookup.
//! - [`codes`]:      both digit systems — *metallic* codes (digits `0..p−3`,
//!                   forbidden factor `d c* d`) and *nzm* codes (non-zero
//!                   digits `1..p−2`, forbidden factor `x d* x`) — with
//!                   evaluation, encoding, normalization, increment,
//!                   decrement, and cross-conversion.
//! - [`trees`]:      level-indexed generation of white/black trees under
//!                   pluggable black-son assignments, plus the structural
//!                   checks (preferred son, apartness, gap audits, rule
//!                   conformance, marked-subtree isomorphisms).
//! - [`navigation`]: root-path construction (four digit-driven algorithms
//!                   plus a breadth-first oracle) and neighbour-code
//!                   computation for `{p,4}` and `{p+2,3}`, with audits of
//!                   the closed-form neighbour formulas.
//!
//! **Determinism.** Everything here is a pure function of its inputs. The
//! only randomness is the seeded per-node generator behind
//! [`trees::Assignment::Random`], a splitmix64-style mix that produces the
//! same tree for the same seed on every platform.
//!
//! **Exactness.** All sequence values and code evaluations use arbitrary
//! precision (`num-bigint`); the sequences grow like `(p−2)^n`, so fixed
//! width would overflow around `n ≈ 12` already for moderate `p`. Node
//! numbers inside built trees are `u64` because builds are capped by an
//! explicit node budget long before that range matters.

pub mod codes;
pub mod navigation;
pub mod params;
pub mod sequences;
pub mod trees;

pub use params::Params;
