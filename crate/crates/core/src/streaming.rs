//! Diagonal interleaving: the block code lifted to an (n, k, n−1, T)
//! convolutional streaming code.
//!
//! Packet symbol x_t[j] carries position j of the block codeword whose
//! diagonal starts at time t − j, so one lost packet erases one symbol in
//! each of n overlapping diagonals, and the block decoder recovers every
//! message component by its per-symbol deadline. Messages before time 0 are
//! zero by convention, which makes every pre-stream symbol a known zero.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::construction::CodeTables;
use crate::decoder::{BlockDecoder, Symbol};
use crate::gf::ExtElem;
use crate::linalg::FieldMatrix;

/// One channel packet: all n symbols of one time index, or a whole-packet
/// erasure. The channel loses packets, never single symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packet {
    pub seq: u64,
    pub payload: Option<Vec<ExtElem>>,
}

impl Packet {
    pub fn lost(seq: u64) -> Self {
        Self { seq, payload: None }
    }

    pub fn is_erased(&self) -> bool {
        self.payload.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamError {
    WrongMessageLength { expected: usize, got: usize },
    WrongPayloadLength { expected: usize, got: usize },
    /// Packets must arrive in sequence order, exactly once.
    OutOfOrder { expected: u64, got: u64 },
}

impl fmt::Display for StreamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamError::WrongMessageLength { expected, got } => {
                write!(f, "message must carry {expected} symbols, got {got}")
            }
            StreamError::WrongPayloadLength { expected, got } => {
                write!(f, "payload must carry {expected} symbols, got {got}")
            }
            StreamError::OutOfOrder { expected, got } => {
                write!(f, "expected seq {expected}, got {got}")
            }
        }
    }
}

impl core::error::Error for StreamError {}

/// The n per-lag generator matrices of the convolutional form
/// x_i = Σ_l s_{i−l}·G_l. Lag l places g_{r, l+r} at column l + r, so the
/// supports are disjoint across lags and the matrices sum back to G.
pub fn conv_generators(tables: &CodeTables) -> Vec<FieldMatrix> {
    let params = tables.params();
    let (k, n) = (params.msg_len(), params.block_len());
    let g = tables.generator();
    let field = tables.field();
    (0..n)
        .map(|lag| {
            FieldMatrix::from_fn(field, k, n, |r, c| {
                if c == lag + r {
                    g[(r, c)]
                } else {
                    field.zero()
                }
            })
        })
        .collect()
}

/// Convolutional encoder over the infinite message sequence.
pub struct StreamEncoder<'a> {
    tables: &'a CodeTables,
    conv: Vec<FieldMatrix>,
    /// s_{i−1}, s_{i−2}, .. , s_{i−(n−1)}; shorter during warm-up.
    history: VecDeque<Vec<ExtElem>>,
    clock: u64,
}

impl<'a> StreamEncoder<'a> {
    pub fn new(tables: &'a CodeTables) -> Self {
        Self {
            tables,
            conv: conv_generators(tables),
            history: VecDeque::new(),
            clock: 0,
        }
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    /// Emit the packet for the next time index:
    /// x_i = Σ_{l=0}^{n−1} s_{i−l}·G_l with zero messages before time 0.
    pub fn encode_step(&mut self, msg: &[ExtElem]) -> Result<Packet, StreamError> {
        let params = self.tables.params();
        let (k, n) = (params.msg_len(), params.block_len());
        if msg.len() != k {
            return Err(StreamError::WrongMessageLength { expected: k, got: msg.len() });
        }
        let f = self.tables.field();
        let mut payload = self.conv[0].vec_mul(msg);
        for (lag, past) in self.history.iter().enumerate() {
            let part = self.conv[lag + 1].vec_mul(past);
            for (acc, v) in payload.iter_mut().zip(part) {
                *acc = f.add(*acc, v);
            }
        }
        self.history.push_front(msg.to_vec());
        self.history.truncate(n - 1);
        let seq = self.clock;
        self.clock += 1;
        Ok(Packet { seq, payload: Some(payload) })
    }
}

/// One emitted message: every component of s_i, due at time i + T.
/// Components stay `None` only when the loss pattern exceeded the channel
/// model and recovery failed — a deadline miss.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedMessage {
    pub seq: u64,
    pub symbols: Vec<Option<ExtElem>>,
    /// Time index at which the last component recovered; `None` while any
    /// component is missing. Never exceeds seq + T.
    pub ready: Option<u64>,
}

impl DecodedMessage {
    pub fn is_complete(&self) -> bool {
        self.symbols.iter().all(Option::is_some)
    }

    pub fn message(&self) -> Option<Vec<ExtElem>> {
        self.symbols.iter().copied().collect()
    }

    /// Packets waited beyond the message's own time index.
    pub fn delay(&self) -> Option<u64> {
        self.ready.map(|r| r.saturating_sub(self.seq))
    }
}

/// Streaming decoder: one incremental block decoder per diagonal.
pub struct StreamDecoder<'a> {
    tables: &'a CodeTables,
    /// Diagonal start time → its block decoder. Warm-up diagonals have
    /// negative start times and pre-known zero symbols.
    diagonals: BTreeMap<i64, BlockDecoder<'a>>,
    clock: u64,
}

impl<'a> StreamDecoder<'a> {
    pub fn new(tables: &'a CodeTables) -> Self {
        Self { tables, diagonals: BTreeMap::new(), clock: 0 }
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    fn diagonal(&mut self, start: i64) -> &mut BlockDecoder<'a> {
        let tables = self.tables;
        self.diagonals.entry(start).or_insert_with(|| {
            let mut dec = BlockDecoder::new_lenient(tables);
            if start < 0 {
                // symbols emitted before time 0 are all-zero combinations
                // of the zero-padded messages
                let zero = tables.field().zero();
                for pos in 0..(-start) as usize {
                    dec.push_symbol(pos, Symbol::Present(zero));
                }
            }
            dec
        })
    }

    /// Consume the packet (or loss marker) for the next time index and
    /// return the message falling due now, if any. Message s_i is emitted
    /// exactly at clock i + T.
    pub fn decode_step(&mut self, packet: Packet) -> Result<Vec<DecodedMessage>, StreamError> {
        let params = *self.tables.params();
        let (k, n, delay) = (params.msg_len(), params.block_len(), params.delay());
        if packet.seq != self.clock {
            return Err(StreamError::OutOfOrder { expected: self.clock, got: packet.seq });
        }
        if let Some(p) = &packet.payload {
            if p.len() != n {
                return Err(StreamError::WrongPayloadLength { expected: n, got: p.len() });
            }
        }
        let t = self.clock as i64;

        // one symbol lands in each of the n diagonals crossing time t
        for pos in 0..n {
            let start = t - pos as i64;
            if start < -((n as i64) - 1) {
                continue;
            }
            let sym = match &packet.payload {
                Some(p) => Symbol::Present(p[pos]),
                None => Symbol::Erased,
            };
            self.diagonal(start).push_symbol(pos, sym);
        }

        // run every diagonal up to its current block-local time
        for (&start, dec) in self.diagonals.iter_mut() {
            let block_time = (t - start) as usize;
            if block_time < n {
                dec.advance(block_time.min(n - 1)).expect("lenient decoding");
            }
        }

        let mut due = Vec::new();
        if t >= delay as i64 {
            let msg_seq = t - delay as i64;
            let mut ready: Option<i64> = Some(i64::MIN);
            let symbols: Vec<Option<ExtElem>> = (0..k)
                .map(|r| {
                    let start = msg_seq - r as i64;
                    let rec = self
                        .diagonals
                        .get(&start)
                        .and_then(|dec| dec.recovered(r).copied());
                    match rec {
                        Some(rec) => {
                            let at = start + rec.time as i64;
                            ready = ready.map(|cur| cur.max(at));
                            Some(rec.value)
                        }
                        None => {
                            ready = None;
                            None
                        }
                    }
                })
                .collect();
            due.push(DecodedMessage {
                seq: msg_seq as u64,
                symbols,
                ready: ready.map(|r| r.max(0) as u64),
            });
        }

        // a diagonal is dead once every message drawing on it has been
        // emitted, i.e. after time start + (k−1) + T
        let horizon = t - (delay + k - 1) as i64;
        self.diagonals.retain(|&start, _| start >= horizon);

        self.clock += 1;
        Ok(due)
    }
}
