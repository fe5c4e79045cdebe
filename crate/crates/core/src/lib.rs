//! Near-normal sequences NN(n): quadruples (A;B;C;D) of ±1 sequences with
//! |A| = |B| = n + 1, |C| = |D| = n (n even), B determined by A, and
//! autocorrelations summing to a delta function.
//!
//! The crate covers exact sequence arithmetic ([`seq`]), the digit encoding
//! ([`codec`]), the transformation group and NN moves ([`transform`]),
//! canonical forms ([`canon`]), exhaustive classification ([`classify`]) and
//! the published representatives with their verifier ([`tables`]).

pub mod canon;
pub mod classify;
pub mod codec;
pub mod error;
pub mod seq;
pub mod tables;
pub mod transform;

pub use canon::{canonicalize, is_canonical, CanonicalWitness};
pub use classify::{
    build_npaf_index, enumerate_bs_canonical, enumerate_nn_classes, partition_nn, ClassRecord,
    NpafIndex, MAX_SEARCH_N,
};
pub use codec::{decode_nn, decode_pair, encode_nn, encode_pair, NnCode};
pub use error::{Error, Result};
pub use seq::{is_near_normal, BinarySeq, BsQuadruple, NnQuadruple, NpafVector, Slot};
pub use tables::{table1_rows, verify_row, verify_table, TableRow};
pub use transform::{
    apply_generator, apply_group_element, apply_nn_move, nn_neighbors, orbit_bfs, BsGroup,
    Generator, GroupElem, MoveSet, NnMove,
};
