//! Finite Zappa–Szép (knit) products of cyclic groups.
//!
//! A *matched pair* of finite groups is a pair (H, K) together with two actions
//!
//! * σ : K × H → H, written `k · h`, and
//! * θ : K × H → K, written `k^h`,
//!
//! satisfying six compatibility conditions (see [`pair::validate_matched_pair`]).
//! From a matched pair one builds the Zappa–Szép product G = H ⋈ K on the carrier
//! H × K with multiplication
//!
//! ```text
//! (h, k)(h', k') = (h (k · h'), k^{h'} k')
//! ```
//!
//! Both factors embed in G and every element factors uniquely as a product of an
//! H-part and a K-part; conversely any group with an exact factorization G = HK,
//! H ∩ K = 1, arises this way. Semidirect and direct products are the degenerate
//! cases where one or both actions are trivial.
//!
//! This crate provides, for groups small enough to hold as multiplication tables:
//!
//! * [`group`] — dense multiplication tables, cyclic groups, element orders,
//!   subgroup tests, unit groups of Z_m;
//! * [`pair`] — matched-pair validation, product construction, recovery of a
//!   matched pair from an internal exact factorization, semidirect detection;
//! * [`maps`] — tables of maps between groups and the pointwise algebra
//!   (φ + ψ, ηφ, φ · ψ, φ^ψ) used to manipulate them;
//! * [`aut`] — brute-force enumeration of Aut(G) for two-generated products,
//!   and the correspondence between automorphisms and 2 × 2 matrices
//!   (α β; γ δ) of maps acting on the two factors;
//! * [`families`] — the distinguished subsets P, Q, R, S, X, Y, Z of component
//!   maps and the matrix subgroups A, B, C, D, E, F, M they generate inside the
//!   matrix realization of Aut(G), with decomposition checks Aut(G) = ABCD and
//!   semidirect-chain checks such as (C ⋊ M) ⋊ B;
//! * [`l2`] — the family Z₄ ⋈ Z_m (generators a, b with a·b = b³, a^b = a^{2t+1},
//!   a²·b = b, (a²)^b = a^{2s}), parameter enumeration, closed-form action
//!   tables, and predicted automorphism group orders per parameter stratum;
//! * [`m3`] — the family Z_{p²} ⋈ Z_m for odd primes p (a·b = b^t, a^b = a^{pr+1}
//!   with t = 1 + λp), likewise;
//! * [`verify`] — claim harnesses combining the above into per-parameter-point
//!   reports (axioms, correspondence, decompositions, chains, order match);
//! * [`io`] — JSON serialization of tables and reports for the CLI.
//!
//! Everything is exact integer arithmetic on element indices; there are no
//! floating-point quantities anywhere. All enumerations are deterministic:
//! automorphisms are listed identity-first in lexicographic permutation order,
//! and sweeps emit rows in canonical parameter order regardless of parallelism.

pub mod aut;
pub mod error;
pub mod families;
pub mod group;
pub mod io;
pub mod l2;
pub mod m3;
pub mod maps;
pub mod nt;
pub mod pair;
pub mod verify;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Default ceiling on |G| for brute-force automorphism searches.
///
/// Overridable per call site via [`aut::brute_force_aut_capped`], or globally
/// for the CLI through the `ZAPPA_MAX_GROUP_ORDER` environment variable.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 512;

/// The effective scale cap: `ZAPPA_MAX_GROUP_ORDER` from the environment if
/// set to a positive integer, else [`DEFAULT_MAX_GROUP_ORDER`].
pub fn max_group_order() -> usize {
    std::env::var("ZAPPA_MAX_GROUP_ORDER")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_GROUP_ORDER)
}
