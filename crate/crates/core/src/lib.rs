//! Streaming erasure codes for channels that lose either one burst of up to
//! `B` packets or up to `N` scattered packets inside every sliding window of
//! length `W`, with every message recoverable at most `T` packets after it
//! was sent.
//!
//! The crate builds an `(n, k)` block code over GF(p²) with `k = T − N + 1`
//! and `n = k + B`, whose rate `k/n` equals the channel capacity
//! `(T − N + 1)/(T + B − N + 1)`, then lifts it to a convolutional streaming
//! code by diagonal interleaving. The base prime `p` grows linearly with
//! `T`, so the field order `p²` grows only quadratically.
//!
//! Modules follow the pipeline:
//!
//! * [`gf`] — GF(p) and GF(p²) arithmetic,
//! * [`linalg`] — dense matrices, elimination, Cauchy/MDS machinery,
//! * [`construction`] — the generator-matrix family and parity check,
//! * [`channel`] — the sliding-window loss model and pattern enumeration,
//! * [`decoder`] — delay-constrained block decoding plus a brute-force
//!   oracle,
//! * [`streaming`] — diagonal interleaving and the packet-level state
//!   machines,
//! * [`verify`] — executable checks for every structural claim the code
//!   relies on.
//!
//! The crate is `no_std` (with `alloc`); all I/O, file formats and the CLI
//! live in the companion `windfec-cli` crate.

#![cfg_attr(not(test), no_std)]
// Coding loops index by symbol/message position; the position is the
// domain object, so range loops read better than enumerate adapters here.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod channel;
pub mod construction;
pub mod decoder;
pub mod gf;
pub mod linalg;
pub mod streaming;
pub mod verify;
