//! Delay-constrained block decoding.
//!
//! [`BlockDecoder`] implements the structured procedure: it walks message
//! indices in order and, per index, classifies the erasures inside that
//! index's deadline window as one burst or as isolated losses, then picks
//! the matching recovery route (trivial read-off, MDS₂ group solve plus
//! α-cancellation, shortened-MDS₁ solve, or the affine α-cancellation).
//! Every route only reads symbols at or before the index's deadline
//! min(l+T, n−1), so the same decoder drives both whole-block decoding and
//! the per-diagonal incremental decoding of the streaming layer.
//!
//! [`oracle_decode`] is the independent ground truth: a symbol is decodable
//! iff it is uniquely determined by the non-erased symbols inside its
//! deadline, decided by rank alone. The verification suite holds the
//! structured decoder to exact agreement with it.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::channel::ErasurePattern;
use crate::construction::{CodeParams, CodeTables};
use crate::gf::ExtElem;
use crate::linalg::{FieldMatrix, Solution};

/// One received position: a value or an erasure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Present(ExtElem),
    Erased,
}

/// A full received block of n symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedBlock {
    symbols: Vec<Symbol>,
}

impl ReceivedBlock {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self { symbols }
    }

    /// Apply an erasure pattern to a codeword.
    pub fn from_codeword(codeword: &[ExtElem], pattern: &ErasurePattern) -> Self {
        let symbols = codeword
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                if pattern.contains(j) {
                    Symbol::Erased
                } else {
                    Symbol::Present(x)
                }
            })
            .collect();
        Self { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, j: usize) -> Symbol {
        self.symbols[j]
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn erased_pattern(&self) -> ErasurePattern {
        let coords: Vec<usize> = self
            .symbols
            .iter()
            .enumerate()
            .filter_map(|(j, s)| matches!(s, Symbol::Erased).then_some(j))
            .collect();
        ErasurePattern::new(&coords, self.symbols.len()).expect("indices in range")
    }
}

/// Latest time index at which u[l] must be produced: min(l + T, n − 1).
pub fn decode_deadline(l: usize, params: &CodeParams) -> usize {
    params.deadline(l)
}

/// Which route produced a recovered symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeMethod {
    /// The symbol's own position arrived; prefix cancellation only.
    Trivial,
    /// Group solve through the MDS₂ sub-code (burst path and the tail
    /// induction).
    BurstMds2,
    /// Solve through a shortened MDS₁ sub-code (arbitrary losses with the
    /// α column erased).
    ArbitraryMds1,
    /// Cancellation against the α column; `pivot` is the divided-by
    /// coefficient, which must stay outside the base field.
    AlphaCancel { pivot: ExtElem },
    /// Brute-force fallback for patterns outside the admissible model.
    Oracle,
}

impl fmt::Display for DecodeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeMethod::Trivial => write!(f, "trivial"),
            DecodeMethod::BurstMds2 => write!(f, "burst-mds2"),
            DecodeMethod::ArbitraryMds1 => write!(f, "arbitrary-mds1"),
            DecodeMethod::AlphaCancel { .. } => write!(f, "alpha-cancel"),
            DecodeMethod::Oracle => write!(f, "oracle"),
        }
    }
}

/// A recovered message symbol with its recovery time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Recovered {
    pub value: ExtElem,
    /// Time index at which the last ingredient became available.
    pub time: usize,
    pub method: DecodeMethod,
}

/// Per-index outcome of decoding one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeReport {
    entries: Vec<Option<Recovered>>,
    warnings: Vec<String>,
}

impl DecodeReport {
    pub fn recovered(&self, l: usize) -> Option<&Recovered> {
        self.entries[l].as_ref()
    }

    pub fn entries(&self) -> &[Option<Recovered>] {
        &self.entries
    }

    pub fn all_recovered(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }

    /// The decoded message when complete.
    pub fn message(&self) -> Option<Vec<ExtElem>> {
        self.entries.iter().map(|e| e.map(|r| r.value)).collect()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeError {
    WrongLength { expected: usize, got: usize },
    /// Erasures inside the window starting at `window_start` fit neither
    /// one burst of ≤ B nor ≤ N arbitrary losses.
    Inadmissible { window_start: usize, window_end: usize, erasures: usize },
    /// The structured procedure hit a state its guarantees rule out.
    Internal(&'static str),
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeError::WrongLength { expected, got } => {
                write!(f, "expected {expected} symbols, got {got}")
            }
            DecodeError::Inadmissible { window_start, window_end, erasures } => write!(
                f,
                "inadmissible pattern: window [{window_start}, {window_end}] holds {erasures} \
                 erasures in neither burst nor isolated form"
            ),
            DecodeError::Internal(msg) => write!(f, "internal decoder failure: {msg}"),
        }
    }
}

impl core::error::Error for DecodeError {}

/// Outcome of the brute-force decoder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Decoded(ExtElem),
    Undecodable,
}

/// Is u[l] uniquely determined by the non-erased symbols up to `horizon`?
///
/// Solves u·G restricted to those columns; u[l] is determined iff every
/// left-null vector of the restricted generator vanishes at coordinate l,
/// equivalently iff l is a pivot whose reduced row touches no free column.
pub fn oracle_decode_at(
    tables: &CodeTables,
    block: &ReceivedBlock,
    l: usize,
    horizon: usize,
) -> OracleOutcome {
    let params = tables.params();
    let k = params.msg_len();
    let field = tables.field();
    let horizon = horizon.min(params.block_len() - 1);
    let mut rows: Vec<Vec<ExtElem>> = Vec::new();
    for j in 0..=horizon {
        if let Symbol::Present(x) = block.get(j) {
            let mut row: Vec<ExtElem> = (0..k).map(|i| tables.generator()[(i, j)]).collect();
            row.push(x);
            rows.push(row);
        }
    }
    let system = FieldMatrix::from_rows(field, rows).expect("uniform rows");
    let (red, pivots) = system.rref();
    if pivots.contains(&k) {
        // received symbols are not consistent with any codeword
        return OracleOutcome::Undecodable;
    }
    let Some(rho) = pivots.iter().position(|&c| c == l) else {
        return OracleOutcome::Undecodable;
    };
    for c in 0..k {
        if c != l && !red[(rho, c)].is_zero() {
            return OracleOutcome::Undecodable;
        }
    }
    OracleOutcome::Decoded(red[(rho, k)])
}

/// Oracle at the standard deadline min(l + T, n − 1).
pub fn oracle_decode(tables: &CodeTables, block: &ReceivedBlock, l: usize) -> OracleOutcome {
    oracle_decode_at(tables, block, l, tables.params().deadline(l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SymbolState {
    Pending,
    Present(ExtElem),
    Erased,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// Errors propagate; inadmissible input is rejected.
    Strict,
    /// Failed steps fall back to the oracle and leave a warning.
    Lenient,
}

struct Residual {
    value: ExtElem,
    /// Unknown message indices with nonzero coefficient at this column.
    support: Vec<usize>,
    /// Latest recovery time among the substituted known symbols.
    dep_time: usize,
}

/// Incremental decoder for one block.
///
/// Feed symbols with [`push_symbol`](Self::push_symbol) as they arrive and
/// call [`advance`](Self::advance) with the current block-local time; each
/// message index is decoded exactly when its deadline passes, reading
/// nothing beyond it.
pub struct BlockDecoder<'a> {
    tables: &'a CodeTables,
    symbols: Vec<SymbolState>,
    entries: Vec<Option<Recovered>>,
    warnings: Vec<String>,
    next_index: usize,
    mode: Mode,
}

impl<'a> BlockDecoder<'a> {
    pub fn new_strict(tables: &'a CodeTables) -> Self {
        Self::new(tables, Mode::Strict)
    }

    pub fn new_lenient(tables: &'a CodeTables) -> Self {
        Self::new(tables, Mode::Lenient)
    }

    fn new(tables: &'a CodeTables, mode: Mode) -> Self {
        let params = tables.params();
        Self {
            tables,
            symbols: vec![SymbolState::Pending; params.block_len()],
            entries: vec![None; params.msg_len()],
            warnings: Vec::new(),
            next_index: 0,
            mode,
        }
    }

    pub fn push_symbol(&mut self, pos: usize, sym: Symbol) {
        debug_assert_eq!(self.symbols[pos], SymbolState::Pending, "double feed at {pos}");
        self.symbols[pos] = match sym {
            Symbol::Present(x) => SymbolState::Present(x),
            Symbol::Erased => SymbolState::Erased,
        };
    }

    pub fn value(&self, l: usize) -> Option<ExtElem> {
        self.entries[l].map(|r| r.value)
    }

    pub fn recovered(&self, l: usize) -> Option<&Recovered> {
        self.entries[l].as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Decode every message index whose deadline is ≤ `block_time`.
    pub fn advance(&mut self, block_time: usize) -> Result<(), DecodeError> {
        let k = self.tables.params().msg_len();
        while self.next_index < k && self.tables.params().deadline(self.next_index) <= block_time {
            let l = self.next_index;
            if self.entries[l].is_none() {
                if let Err(cause) = self.step(l) {
                    match self.mode {
                        Mode::Strict => return Err(cause),
                        Mode::Lenient => self.oracle_fallback(l, cause),
                    }
                }
            }
            self.next_index += 1;
        }
        Ok(())
    }

    pub fn into_report(self) -> DecodeReport {
        DecodeReport { entries: self.entries, warnings: self.warnings }
    }

    fn record(&mut self, l: usize, value: ExtElem, time: usize, method: DecodeMethod) {
        debug_assert!(self.entries[l].is_none());
        self.entries[l] = Some(Recovered { value, time, method });
    }

    fn oracle_fallback(&mut self, l: usize, cause: DecodeError) {
        let deadline = self.tables.params().deadline(l);
        let view: Vec<Symbol> = self
            .symbols
            .iter()
            .map(|s| match s {
                SymbolState::Present(x) => Symbol::Present(*x),
                _ => Symbol::Erased,
            })
            .collect();
        let block = ReceivedBlock::new(view);
        match oracle_decode_at(self.tables, &block, l, deadline) {
            OracleOutcome::Decoded(value) => {
                self.warnings
                    .push(format!("u[{l}]: structured path unavailable ({cause}); oracle used"));
                self.record(l, value, deadline, DecodeMethod::Oracle);
            }
            OracleOutcome::Undecodable => {
                self.warnings
                    .push(format!("u[{l}]: unrecoverable by deadline {deadline} ({cause})"));
            }
        }
    }

    /// The remaining equation at column j once known symbols are cancelled.
    fn residual(&self, j: usize) -> Option<Residual> {
        let SymbolState::Present(x) = self.symbols[j] else {
            return None;
        };
        let f = self.tables.field();
        let g = self.tables.generator();
        let mut value = x;
        let mut support = Vec::new();
        let mut dep_time = 0;
        for i in 0..self.tables.params().msg_len() {
            let coeff = g[(i, j)];
            if coeff.is_zero() {
                continue;
            }
            match self.entries[i] {
                Some(r) => {
                    value = f.sub(value, f.mul(coeff, r.value));
                    dep_time = dep_time.max(r.time);
                }
                None => support.push(i),
            }
        }
        Some(Residual { value, support, dep_time })
    }

    /// Solve for `unknowns` from usable columns ≤ `max_col`, earliest first.
    ///
    /// A column is usable when it is present and its residual touches only
    /// `unknowns`. Equations are kept only when they raise the rank, so the
    /// reported time is the earliest the system closes.
    fn solve_group(
        &mut self,
        unknowns: &[usize],
        max_col: usize,
        method: DecodeMethod,
    ) -> Result<(), DecodeError> {
        if unknowns.is_empty() {
            return Ok(());
        }
        let f = self.tables.field();
        let need = unknowns.len();
        let mut coeffs: Vec<Vec<ExtElem>> = Vec::with_capacity(need);
        let mut rhs: Vec<ExtElem> = Vec::with_capacity(need);
        let mut time = 0usize;
        let mut rank = 0usize;
        for j in 0..=max_col {
            let Some(res) = self.residual(j) else {
                continue;
            };
            if res.support.is_empty() || !res.support.iter().all(|i| unknowns.contains(i)) {
                continue;
            }
            let row: Vec<ExtElem> = unknowns
                .iter()
                .map(|&i| self.tables.generator()[(i, j)])
                .collect();
            coeffs.push(row);
            let new_rank = FieldMatrix::from_rows(f, coeffs.clone())
                .expect("uniform rows")
                .rank();
            if new_rank == rank {
                coeffs.pop();
                continue;
            }
            rank = new_rank;
            rhs.push(res.value);
            time = time.max(j).max(res.dep_time);
            if rank == need {
                break;
            }
        }
        if rank < need {
            return Err(DecodeError::Internal("group system never reached full rank"));
        }
        let system = FieldMatrix::from_rows(f, coeffs).expect("uniform rows");
        let Ok(Solution::Unique(values)) = system.solve(&rhs) else {
            return Err(DecodeError::Internal("full-rank group system failed to solve"));
        };
        for (&i, &v) in unknowns.iter().zip(values.iter()) {
            self.record(i, v, time, method);
        }
        Ok(())
    }

    /// u[l] from the α column once everything else it touches is known.
    fn alpha_cancel_direct(&mut self, l: usize) -> Result<(), DecodeError> {
        let f = self.tables.field();
        let col = l + self.tables.params().delay();
        let res = self
            .residual(col)
            .ok_or(DecodeError::Internal("alpha column unexpectedly erased"))?;
        if res.support != [l] {
            return Err(DecodeError::Internal("alpha column still touches other unknowns"));
        }
        let pivot = self.tables.generator()[(l, col)];
        let value = f
            .div(res.value, pivot)
            .ok_or(DecodeError::Internal("alpha pivot is zero"))?;
        let time = col.max(res.dep_time);
        self.record(l, value, time, DecodeMethod::AlphaCancel { pivot });
        Ok(())
    }

    /// The arbitrary-loss route when x[l] is erased but x[l+T] arrived and
    /// the MDS₂ group is still unknown: express every later symbol as an
    /// affine function of u[l] from the shortened MDS₁ sub-code, then cancel
    /// them from the α column. Base-field cancellation cannot null the α
    /// part, so the pivot stays invertible and outside the base field.
    fn alpha_cancel_affine(&mut self, l: usize) -> Result<(), DecodeError> {
        let params = self.tables.params();
        let f = self.tables.field();
        let g = self.tables.generator();
        let (k, delay) = (params.msg_len(), params.delay());
        let rest: Vec<usize> = (l + 1..k).collect();
        if rest.iter().any(|&i| self.entries[i].is_some()) {
            return Err(DecodeError::Internal("affine route with a partially known tail"));
        }
        // Stage 1: from present columns in [l+1, T−1], solve
        //   A·P = rhs  and  A·D = −c
        // so that u[i] = P_i + D_i·u[l] for every i in `rest`.
        let need = rest.len();
        let mut coeffs: Vec<Vec<ExtElem>> = Vec::with_capacity(need);
        let mut rhs_p: Vec<ExtElem> = Vec::with_capacity(need);
        let mut rhs_d: Vec<ExtElem> = Vec::with_capacity(need);
        let mut time = 0usize;
        let mut rank = 0usize;
        for j in l + 1..delay {
            let Some(res) = self.residual(j) else {
                continue;
            };
            if !res.support.iter().all(|&i| i == l || rest.contains(&i)) {
                // touches an earlier symbol that never recovered
                continue;
            }
            let row: Vec<ExtElem> = rest.iter().map(|&i| g[(i, j)]).collect();
            coeffs.push(row);
            let new_rank = if need == 0 {
                0
            } else {
                FieldMatrix::from_rows(f, coeffs.clone()).expect("uniform rows").rank()
            };
            if new_rank == rank {
                coeffs.pop();
                continue;
            }
            rank = new_rank;
            rhs_p.push(res.value);
            rhs_d.push(f.neg(g[(l, j)]));
            time = time.max(j).max(res.dep_time);
            if rank == need {
                break;
            }
        }
        if rank < need {
            return Err(DecodeError::Internal("affine stage never reached full rank"));
        }
        let (part, dirs) = if need == 0 {
            (Vec::new(), Vec::new())
        } else {
            let system = FieldMatrix::from_rows(f, coeffs).expect("uniform rows");
            let Ok(Solution::Unique(part)) = system.solve(&rhs_p) else {
                return Err(DecodeError::Internal("affine particular solve failed"));
            };
            let Ok(Solution::Unique(dirs)) = system.solve(&rhs_d) else {
                return Err(DecodeError::Internal("affine direction solve failed"));
            };
            (part, dirs)
        };
        // Stage 2: substitute into the α column.
        let col = l + delay;
        let res = self
            .residual(col)
            .ok_or(DecodeError::Internal("alpha column unexpectedly erased"))?;
        let mut pivot = g[(l, col)];
        let mut value = res.value;
        for (t, &i) in rest.iter().enumerate() {
            let coeff = g[(i, col)];
            if coeff.is_zero() {
                continue;
            }
            pivot = f.add(pivot, f.mul(coeff, dirs[t]));
            value = f.sub(value, f.mul(coeff, part[t]));
        }
        if f.is_in_base(pivot) {
            return Err(DecodeError::Internal("alpha pivot collapsed into the base field"));
        }
        let u = f.div(value, pivot).expect("pivot has nonzero extension part");
        let time = time.max(col).max(res.dep_time);
        self.record(l, u, time, DecodeMethod::AlphaCancel { pivot });
        Ok(())
    }

    fn step(&mut self, l: usize) -> Result<(), DecodeError> {
        let params = *self.tables.params();
        let (k, b, nn) = (params.msg_len(), params.max_burst(), params.max_isolated());
        let hi = params.deadline(l);
        debug_assert!(
            self.symbols[l..=hi].iter().all(|s| *s != SymbolState::Pending),
            "advance called before the deadline window was fed"
        );
        let erased: Vec<usize> = (l..=hi)
            .filter(|&j| self.symbols[j] == SymbolState::Erased)
            .collect();
        let count = erased.len();
        let contiguous =
            count == 0 || erased[count - 1] - erased[0] + 1 == count;
        if count > nn && !(contiguous && count <= b) {
            return Err(DecodeError::Inadmissible {
                window_start: l,
                window_end: hi,
                erasures: count,
            });
        }

        if let SymbolState::Present(_) = self.symbols[l] {
            // prefix cancellation leaves u[l] alone on its own column
            let res = self.residual(l).expect("present");
            if res.support != [l] {
                return Err(DecodeError::Internal("unknown symbols before the current index"));
            }
            let pivot = self.tables.generator()[(l, l)];
            let value = self
                .tables
                .field()
                .div(res.value, pivot)
                .ok_or(DecodeError::Internal("zero diagonal in the generator"))?;
            self.record(l, value, l.max(res.dep_time), DecodeMethod::Trivial);
            return Ok(());
        }

        let group_lo = b - nn + 1;
        if l < group_lo {
            let group: Vec<usize> = (group_lo..k).collect();
            let group_known = group.iter().all(|&i| self.entries[i].is_some());
            if count > nn {
                // one burst starting at l; the group's clean columns close
                // by l+T−1 and the α column at l+T finishes u[l]
                if !group_known {
                    let unknowns: Vec<usize> =
                        group.iter().copied().filter(|&i| self.entries[i].is_none()).collect();
                    if unknowns.len() != group.len() {
                        return Err(DecodeError::Internal("partially known group"));
                    }
                    self.solve_group(&unknowns, l + params.delay() - 1, DecodeMethod::BurstMds2)?;
                }
                return self.alpha_cancel_direct(l);
            }
            // arbitrary losses
            if self.symbols[l + params.delay()] == SymbolState::Erased {
                // ≤ N−1 erasures remain before the deadline: the shortened
                // MDS₁ code recovers the whole tail from columns ≤ T−1
                let unknowns: Vec<usize> = (l..k).filter(|&i| self.entries[i].is_none()).collect();
                return self.solve_group(
                    &unknowns,
                    params.delay() - 1,
                    DecodeMethod::ArbitraryMds1,
                );
            }
            if group_known {
                return self.alpha_cancel_direct(l);
            }
            return self.alpha_cancel_affine(l);
        }

        // tail induction: everything before l is known, so what is left is a
        // shortened MDS₂ code that corrects any B erasures by time n−1
        let unknowns: Vec<usize> = (l..k).filter(|&i| self.entries[i].is_none()).collect();
        if unknowns.first() != Some(&l) {
            return Err(DecodeError::Internal("tail step with u[l] already known"));
        }
        self.solve_group(&unknowns, params.block_len() - 1, DecodeMethod::BurstMds2)
    }
}

/// Decode a full block with the structured procedure, rejecting patterns
/// outside the admissible model.
pub fn structured_decode(
    tables: &CodeTables,
    block: &ReceivedBlock,
) -> Result<DecodeReport, DecodeError> {
    let n = tables.params().block_len();
    if block.len() != n {
        return Err(DecodeError::WrongLength { expected: n, got: block.len() });
    }
    let mut dec = BlockDecoder::new_strict(tables);
    for (j, &s) in block.symbols().iter().enumerate() {
        dec.push_symbol(j, s);
    }
    dec.advance(n - 1)?;
    Ok(dec.into_report())
}

/// Decode a full block, falling back to the oracle (with a warning) for
/// indices the structured procedure cannot serve. Inadmissible but still
/// determined symbols come back tagged [`DecodeMethod::Oracle`].
pub fn decode_block(tables: &CodeTables, block: &ReceivedBlock) -> Result<DecodeReport, DecodeError> {
    let n = tables.params().block_len();
    if block.len() != n {
        return Err(DecodeError::WrongLength { expected: n, got: block.len() });
    }
    let mut dec = BlockDecoder::new_lenient(tables);
    for (j, &s) in block.symbols().iter().enumerate() {
        dec.push_symbol(j, s);
    }
    dec.advance(n - 1).expect("lenient mode does not fail");
    Ok(dec.into_report())
}
