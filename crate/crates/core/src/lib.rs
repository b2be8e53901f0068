//! Additive systems for the nonnegative integers.
//!
//! An additive system is a family of sets `(A_i)`, each containing 0 and at
//! least one other element, such that every nonnegative integer is a sum
//! `a_1 + a_2 + ...` with `a_i ∈ A_i` (finitely many nonzero) in exactly one
//! way. The canonical examples are British number systems: for radices
//! `g_i >= 2` with partial products `G_i`, the blocks `G_{i-1} * [0, g_i)`.
//!
//! The crate works with exact integers throughout and certifies claims about
//! infinite objects only up to explicit bounds:
//!
//! * [`sets`]: finite digit sets, symbolic infinite sets, sumsets, direct sums, dilation.
//! * [`system`] and [`verify`]: additive systems, representation counting,
//!   bounded verification, encode/decode, and peeling off a leading interval.
//! * [`transform`]: British number systems, contraction, dilation, the
//!   interval-partition criterion and windowed limits.
//! * [`decompose`]: direct-sum factorizations of finite sets and systems,
//!   indecomposability and prime refinement of radix sequences.
//! * [`document`] and [`cli`]: the JSON system format and the `addsys` command line.

pub mod cli;
pub mod decompose;
pub mod document;
pub mod radix;
pub mod sets;
pub mod system;
pub mod transform;
pub mod verify;

/// Arbitrary-precision nonnegative integer.
pub type Nat = num_bigint::BigUint;

pub use decompose::{
    classify_system, decompose_set, decompose_set_bruteforce, decompose_system, interval_decompositions,
    is_indecomposable_set, poly_identity_check, refine_to_prime_radices, solve_ax_interval, Classification,
    Decomposition, PrimeRefinement,
};
pub use radix::{IndexSet, RadixSeq, RadixTail};
pub use sets::{dilate_set, elements_below, is_direct_sum, normalize_digit_set, sumset, DigitSet, SetExpr};
pub use system::{AdditiveSystem, Assignment};
pub use transform::{
    bns_from_radices, contract, contracted_bns_radices, dilate_by_sequence, dilate_system, is_interval_partition,
    stabilized_limit, Partition, WindowLimit,
};
pub use verify::{count_representations, decode, encode, peel, verify_additive, CounterExample, PeelResult};
