//! File formats and helpers behind the `windfec` binary: the text dump of
//! the code's matrix family, the binary packet-trace format, message files,
//! and lossless byte↔symbol packing.

pub mod bytepack;
pub mod dump;
pub mod msgfile;
pub mod trace;

/// A malformed input file, pointing at the first offending byte.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("byte {offset}: {msg}")]
pub struct FormatError {
    pub offset: u64,
    pub msg: String,
}

impl FormatError {
    pub fn new(offset: u64, msg: impl Into<String>) -> Self {
        Self { offset, msg: msg.into() }
    }
}
