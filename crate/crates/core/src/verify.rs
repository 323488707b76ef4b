//! Executable verification of every structural claim the code rests on:
//! the four column-independence conditions on the parity-check matrix, the
//! MDS/rank/row-span properties of the matrix family, and exhaustive
//! recovery-by-deadline over all single-event erasure patterns with the
//! structured decoder held to exact agreement with the brute-force oracle.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{enumerate_block_patterns, ChannelError, ErasurePattern};
use crate::construction::{capacity, derive_params, rate, CodeParams, CodeTables};
use crate::decoder::{
    oracle_decode_at, structured_decode, OracleOutcome, ReceivedBlock,
};
use crate::gf::{ExtElem, QuadExtField};
use crate::linalg::{binomial, Combinations, FieldMatrix, LinalgError, Solution};
use crate::streaming::conv_generators;

/// Certificate of a linear dependence: Σ coefficients[i]·h_{columns[i]} = 0
/// with at least one nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub columns: Vec<usize>,
    pub coefficients: Vec<ExtElem>,
}

/// One verified claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub name: String,
    pub passed: bool,
    /// Informational rows record alternative readings and degenerate
    /// shapes; they never gate a verdict.
    pub informational: bool,
    pub note: Option<String>,
    /// Present on every failed independence check.
    pub witness: Option<Witness>,
}

impl ConditionReport {
    fn pass(name: String) -> Self {
        Self { name, passed: true, informational: false, note: None, witness: None }
    }

    fn fail(name: String, witness: Option<Witness>) -> Self {
        Self { name, passed: false, informational: false, note: None, witness }
    }

    fn info(name: String, passed: bool, note: String) -> Self {
        Self { name, passed, informational: true, note: Some(note), witness: None }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.passed, self.informational) {
            (true, false) => "pass",
            (false, false) => "FAIL",
            (true, true) => "info-pass",
            (false, true) => "info",
        };
        write!(f, "{}: {}", self.name, verdict)?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyError {
    GuardExceeded { required: u128, bound: u128 },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::GuardExceeded { required, bound } => {
                write!(f, "check needs {required} cases, bound is {bound}")
            }
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<ChannelError> for VerifyError {
    fn from(e: ChannelError) -> Self {
        match e {
            ChannelError::GuardExceeded { required, bound } => {
                VerifyError::GuardExceeded { required, bound }
            }
            other => unreachable!("verification passes validated inputs: {other}"),
        }
    }
}

impl From<LinalgError> for VerifyError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::GuardExceeded { required, bound } => {
                VerifyError::GuardExceeded { required, bound }
            }
            other => unreachable!("verification passes validated inputs: {other}"),
        }
    }
}

/// Guard for the subset enumerations in R1/R2.
pub const SUBSET_GUARD: u128 = 100_000;

/// H⁽ˡ⁾ as the top-left (N+l) × (l+T+1) slice of H.
fn parity_slice(h: &FieldMatrix, params: &CodeParams, l: usize) -> FieldMatrix {
    h.block(0..params.max_isolated() + l, 0..l + params.delay() + 1)
}

/// Is `target` outside the span of `set`? On failure, returns the
/// dependence certificate.
fn independent_of(
    m: &FieldMatrix,
    target: usize,
    set: &[usize],
) -> Result<(), Witness> {
    let set_matrix = m.select_cols(set);
    let target_col: Vec<ExtElem> = (0..m.rows()).map(|r| m[(r, target)]).collect();
    match set_matrix.solve(&target_col).expect("shapes agree") {
        Solution::Inconsistent => Ok(()),
        Solution::Unique(c) | Solution::Underdetermined(c) => {
            let f = m.field();
            let mut columns = vec![target];
            let mut coefficients = vec![f.one()];
            for (&j, &cj) in set.iter().zip(c.iter()) {
                columns.push(j);
                coefficients.push(f.neg(cj));
            }
            Err(Witness { columns, coefficients })
        }
    }
}

/// Are the columns in `set` linearly independent? On failure, returns a
/// nontrivial null combination.
fn columns_independent(m: &FieldMatrix, set: &[usize]) -> Result<(), Witness> {
    let sub = m.select_cols(set);
    if sub.rank() == set.len() {
        return Ok(());
    }
    let null = sub.null_space();
    debug_assert!(null.rows() > 0);
    Err(Witness { columns: set.to_vec(), coefficients: null.row(0).to_vec() })
}

/// Condition B1: in every H⁽ˡ⁾ for 0 ≤ l ≤ B−N, column l is independent of
/// the following B−1 columns.
pub fn check_b1(h: &FieldMatrix, params: &CodeParams) -> Vec<ConditionReport> {
    let (b, nn) = (params.max_burst(), params.max_isolated());
    let mut out = Vec::new();
    for l in 0..=b - nn {
        let slice = parity_slice(h, params, l);
        let set: Vec<usize> = (l + 1..l + b).collect();
        let name = format!("B1[l={l}]");
        out.push(match independent_of(&slice, l, &set) {
            Ok(()) => ConditionReport::pass(name),
            Err(w) => ConditionReport::fail(name, Some(w)),
        });
    }
    out
}

/// Condition R1: in every H⁽ˡ⁾, column l is independent of every set of
/// N−1 columns drawn from the T columns after it.
pub fn check_r1(
    h: &FieldMatrix,
    params: &CodeParams,
) -> Result<Vec<ConditionReport>, VerifyError> {
    let (b, nn, t) = (params.max_burst(), params.max_isolated(), params.delay());
    let required = binomial(t, nn - 1);
    if required > SUBSET_GUARD {
        return Err(VerifyError::GuardExceeded { required, bound: SUBSET_GUARD });
    }
    let mut out = Vec::new();
    for l in 0..=b - nn {
        let slice = parity_slice(h, params, l);
        let candidates: Vec<usize> = (l + 1..=l + t).collect();
        let name = format!("R1[l={l}]");
        let mut verdict = ConditionReport::pass(name.clone());
        let mut sel = Combinations::new(candidates.len(), nn - 1);
        while let Some(idx) = sel.next() {
            let set: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
            if let Err(w) = independent_of(&slice, l, &set) {
                verdict = ConditionReport::fail(name.clone(), Some(w));
                break;
            }
        }
        out.push(verdict);
    }
    Ok(out)
}

/// Condition B2 in the B-column reading: for B−N+1 ≤ l ≤ T−N+1, the columns
/// h_l .. h_{l+B−1} of the full H are independent. The literal B+1-column
/// reading contradicts rank(H) = B and is reported informationally.
pub fn check_b2(h: &FieldMatrix, params: &CodeParams) -> Vec<ConditionReport> {
    let (b, nn, t) = (params.max_burst(), params.max_isolated(), params.delay());
    let n = params.block_len();
    let mut out = Vec::new();
    for l in b - nn + 1..=t - nn + 1 {
        let set: Vec<usize> = (l..l + b).collect();
        let name = format!("B2[l={l}]");
        out.push(match columns_independent(h, &set) {
            Ok(()) => ConditionReport::pass(name),
            Err(w) => ConditionReport::fail(name, Some(w)),
        });
        // wide reading: one more column, necessarily dependent since H has
        // only B rows
        let wide: Vec<usize> = (l..=(l + b).min(n - 1)).collect();
        if wide.len() > b {
            let passed = columns_independent(h, &wide).is_ok();
            out.push(ConditionReport::info(
                format!("B2-wide[l={l}]"),
                passed,
                "B+1-column reading; dependence is expected since rank(H) = B".to_string(),
            ));
        }
    }
    out
}

/// Condition R2: every set of N columns drawn from h_{B−N+1} .. h_{n−1} is
/// independent. The nominal upper index T+B−N+1 equals n and is clamped.
pub fn check_r2(
    h: &FieldMatrix,
    params: &CodeParams,
) -> Result<Vec<ConditionReport>, VerifyError> {
    let (b, nn, t) = (params.max_burst(), params.max_isolated(), params.delay());
    let n = params.block_len();
    let lo = b - nn + 1;
    let hi = (t + b - nn + 1).min(n - 1);
    let candidates: Vec<usize> = (lo..=hi).collect();
    let required = binomial(candidates.len(), nn);
    if required > SUBSET_GUARD {
        return Err(VerifyError::GuardExceeded { required, bound: SUBSET_GUARD });
    }
    let mut verdict = ConditionReport::pass("R2".to_string());
    let mut sel = Combinations::new(candidates.len(), nn);
    while let Some(idx) = sel.next() {
        let set: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
        if let Err(w) = columns_independent(h, &set) {
            verdict = ConditionReport::fail("R2".to_string(), Some(w));
            break;
        }
    }
    let mut out = vec![verdict];
    if t + b - nn + 1 > n - 1 {
        out.push(ConditionReport::info(
            "R2-range".to_string(),
            true,
            format!("upper index {} clamped to n-1 = {}", t + b - nn + 1, n - 1),
        ));
    }
    Ok(out)
}

/// Every size-`dim` column subset of `m` is independent (the generator-side
/// MDS criterion). Returns the first dependent subset as a witness.
fn generator_is_mds(m: &FieldMatrix) -> Result<(), Witness> {
    let dim = m.rows();
    let mut sel = Combinations::new(m.cols(), dim);
    while let Some(cols) = sel.next() {
        let cols = cols.to_vec();
        columns_independent(m, &cols)?;
    }
    Ok(())
}

fn mds_report(name: &str, m: &FieldMatrix, guard: u128) -> ConditionReport {
    if m.rows() == 0 {
        return ConditionReport::info(
            name.to_string(),
            true,
            "empty sub-code (T = B)".to_string(),
        );
    }
    let required = binomial(m.cols(), m.rows());
    if required > guard {
        return ConditionReport::info(
            name.to_string(),
            true,
            format!("skipped: {required} subsets exceed the {guard} guard"),
        );
    }
    match generator_is_mds(m) {
        Ok(()) => ConditionReport::pass(name.to_string()),
        Err(w) => ConditionReport::fail(name.to_string(), Some(w)),
    }
}

/// The structural properties of the matrix family: the two sub-codes and
/// the banded generator are MDS, the lower-right corner has full expected
/// rank for every column subset, the top rows of the spreading inverse's
/// corner lie in the span of its last N−1 rows, the f-block diagonal keeps
/// a nonzero extension part, the convolutional decomposition sums back to
/// G, the parity check annihilates the code, and the first T systematic
/// columns stay in the base field.
pub fn check_code_properties(tables: &CodeTables) -> Vec<ConditionReport> {
    let params = tables.params();
    let f = tables.field();
    let (k, n, t, b, nn) = (
        params.msg_len(),
        params.block_len(),
        params.delay(),
        params.max_burst(),
        params.max_isolated(),
    );
    let mut out = Vec::new();

    let mds1 = tables.mds1();
    let dims_ok = mds1.rows() == k && mds1.cols() == k + nn - 1;
    let mut rep = mds_report("mds1", &mds1, SUBSET_GUARD);
    if !dims_ok {
        rep = ConditionReport::fail("mds1".to_string(), None)
            .with_note("unexpected dimensions".to_string());
    }
    out.push(rep.with_note(format!("({}, {}) over GF({})", mds1.cols(), mds1.rows(), f.prime())));

    let mds2 = tables.mds2();
    let rep = mds_report("mds2", &mds2, SUBSET_GUARD);
    out.push(if mds2.rows() == 0 {
        rep
    } else {
        rep.with_note(format!("({}, {}) over GF({})", mds2.cols(), mds2.rows(), f.prime()))
    });

    out.push(mds_report("banded-mds", tables.banded(), SUBSET_GUARD));

    // lower-right (T−B)×B corner of G: rank min(T−B, B), and every
    // w-column subset has rank min(T−B, w)
    let name = "corner-rank".to_string();
    if t == b {
        out.push(ConditionReport::info(name, true, "empty corner (T = B)".to_string()));
    } else {
        let corner = tables.generator().block(k - (t - b)..k, n - b..n);
        let mut ok = corner.rank() == (t - b).min(b);
        'outer: for w in 1..=b {
            let mut sel = Combinations::new(b, w);
            while let Some(cols) = sel.next() {
                if corner.select_cols(cols).rank() != (t - b).min(w) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        out.push(if ok {
            ConditionReport::pass(name)
        } else {
            ConditionReport::fail(name, None)
        });
    }

    // the first B−N+1 rows of the upper-right block of M⁻¹ lie in the row
    // span of its last N−1 rows
    let name = "spreading-inv-rowspan".to_string();
    if t == b {
        out.push(ConditionReport::info(name, true, "empty block (T = B)".to_string()));
    } else {
        let rows = b.min(k);
        let block = tables.spreading_inv().block(0..rows, k - (t - b)..k);
        let head = rows.saturating_sub(nn - 1);
        if head == 0 || nn == 1 {
            out.push(ConditionReport::info(
                name,
                true,
                "no rows outside the spanning tail".to_string(),
            ));
        } else {
            let tail = block.block(head..rows, 0..t - b);
            let ok = (0..head).all(|i| tail.row_space_contains(block.row(i)));
            out.push(if ok {
                ConditionReport::pass(name)
            } else {
                ConditionReport::fail(name, None)
            });
        }
    }

    // f_{i,i}(α) keeps a nonzero extension coefficient
    let ok = (0..=b - nn).all(|i| tables.systematic()[(i, k + nn - 1 + i)].ext_coeff() != 0);
    out.push(if ok {
        ConditionReport::pass("f-diagonal".to_string())
    } else {
        ConditionReport::fail("f-diagonal".to_string(), None)
    });

    // Σ_l G_l equals G entrywise
    let convs = conv_generators(tables);
    let mut sum = FieldMatrix::zeros(f, k, n);
    for m in &convs {
        for r in 0..k {
            for c in 0..n {
                let v = f.add(sum[(r, c)], m[(r, c)]);
                sum.set(r, c, v);
            }
        }
    }
    out.push(if &sum == tables.generator() {
        ConditionReport::pass("conv-sum".to_string())
    } else {
        ConditionReport::fail("conv-sum".to_string(), None)
    });

    // H annihilates both generator forms
    let ht = tables.parity_check().transpose();
    let zero = |m: &FieldMatrix| (0..m.rows()).all(|r| m.row(r).iter().all(|e| e.is_zero()));
    let ok = zero(&tables.systematic().mul(&ht)) && zero(&tables.generator().mul(&ht));
    out.push(if ok {
        ConditionReport::pass("parity-orthogonal".to_string())
    } else {
        ConditionReport::fail("parity-orthogonal".to_string(), None)
    });

    // the first T systematic columns equal G'' and stay in the base field
    let ok = (0..k).all(|i| {
        (0..t).all(|j| {
            let e = tables.systematic()[(i, j)];
            e == tables.base_mds()[(i, j)] && f.is_in_base(e)
        })
    });
    out.push(if ok {
        ConditionReport::pass("systematic-base-columns".to_string())
    } else {
        ConditionReport::fail("systematic-base-columns".to_string(), None)
    });

    out
}

/// rank(A·B) ≤ min(rank A, rank B) and Sylvester's bound
/// rank(A·B) ≥ rank A + rank B − L on random base-field pairs.
pub fn check_rank_inequalities(
    field: QuadExtField,
    pairs: usize,
    seed: u64,
) -> ConditionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = |rows: usize, cols: usize| {
        FieldMatrix::from_fn(field, rows, cols, |_, _| {
            field.elem(rng.random_range(0..field.prime() as u64), 0)
        })
    };
    for i in 0..pairs {
        let k = (i % 5) + 1;
        let l = (i % 6) + 1;
        let m = (i % 4) + 2;
        let a = random(k, l);
        let b = random(l, m);
        let (ra, rb, rab) = (a.rank(), b.rank(), a.mul(&b).rank());
        if rab > ra.min(rb) || rab + l < ra + rb {
            return ConditionReport::fail("rank-inequalities".to_string(), None)
                .with_note(format!("pair {i}: rank(AB)={rab}, rank A={ra}, rank B={rb}, L={l}"));
        }
    }
    ConditionReport::pass("rank-inequalities".to_string())
        .with_note(format!("{pairs} random pairs over GF({})", field.prime()))
}

/// How a (pattern, index) pair failed verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// Even the brute-force oracle cannot pin the symbol by its horizon.
    OracleUndecodable { horizon: usize },
    /// The structured decoder rejected or errored on the whole pattern.
    StructuredError(String),
    /// Structured recovery landed after the deadline.
    MissedDeadline { time: usize, deadline: usize },
    /// Structured value disagrees with the injected message or the oracle.
    WrongValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryFailure {
    pub pattern: ErasurePattern,
    pub index: Option<usize>,
    pub kind: FailureKind,
}

impl fmt::Display for RecoveryFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pattern {}", self.pattern)?;
        if let Some(l) = self.index {
            write!(f, " u[{l}]")?;
        }
        match &self.kind {
            FailureKind::OracleUndecodable { horizon } => {
                write!(f, ": not determined by time {horizon}")
            }
            FailureKind::StructuredError(e) => write!(f, ": structured decode failed: {e}"),
            FailureKind::MissedDeadline { time, deadline } => {
                write!(f, ": recovered at {time}, deadline {deadline}")
            }
            FailureKind::WrongValue => write!(f, ": recovered value is wrong"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryReport {
    /// Erasure patterns examined.
    pub patterns: usize,
    /// (pattern, index) pairs examined.
    pub checks: usize,
    pub failures: Vec<RecoveryFailure>,
}

impl RecoveryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustive recovery over every single-event block pattern.
///
/// With `deadline_slack` = 0 this is the executable achievability claim:
/// for every pattern and every index, the structured decoder recovers the
/// symbol by min(l+T, n−1), agreeing with the oracle. A positive slack
/// tightens every horizon by that many steps and probes only oracle
/// decodability — the tightness control, expected to fail for B > N.
pub fn check_recovery_exhaustive(
    tables: &CodeTables,
    deadline_slack: usize,
) -> Result<RecoveryReport, VerifyError> {
    let params = tables.params();
    let (k, n) = (params.msg_len(), params.block_len());
    let patterns =
        enumerate_block_patterns(n, params.max_burst(), params.max_isolated())?;
    let f = tables.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for pattern in &patterns {
        let msg: Vec<ExtElem> = (0..k)
            .map(|_| {
                f.elem(
                    rng.random_range(0..f.prime() as u64),
                    rng.random_range(0..f.prime() as u64),
                )
            })
            .collect();
        let block = ReceivedBlock::from_codeword(&tables.encode(&msg), pattern);

        if deadline_slack > 0 {
            for l in 0..k {
                checks += 1;
                let horizon =
                    (l + params.delay().saturating_sub(deadline_slack)).min(n - 1);
                if oracle_decode_at(tables, &block, l, horizon) == OracleOutcome::Undecodable {
                    failures.push(RecoveryFailure {
                        pattern: pattern.clone(),
                        index: Some(l),
                        kind: FailureKind::OracleUndecodable { horizon },
                    });
                }
            }
            continue;
        }

        let report = match structured_decode(tables, &block) {
            Ok(r) => r,
            Err(e) => {
                checks += k;
                failures.push(RecoveryFailure {
                    pattern: pattern.clone(),
                    index: None,
                    kind: FailureKind::StructuredError(e.to_string()),
                });
                continue;
            }
        };
        for l in 0..k {
            checks += 1;
            let deadline = params.deadline(l);
            let oracle = oracle_decode_at(tables, &block, l, deadline);
            let fail = |kind| RecoveryFailure {
                pattern: pattern.clone(),
                index: Some(l),
                kind,
            };
            match (report.recovered(l), oracle) {
                (Some(rec), OracleOutcome::Decoded(v)) => {
                    if rec.value != msg[l] || v != msg[l] {
                        failures.push(fail(FailureKind::WrongValue));
                    } else if rec.time > deadline {
                        failures.push(fail(FailureKind::MissedDeadline {
                            time: rec.time,
                            deadline,
                        }));
                    }
                }
                (_, OracleOutcome::Undecodable) => {
                    failures.push(fail(FailureKind::OracleUndecodable { horizon: deadline }));
                }
                (None, _) => {
                    failures.push(fail(FailureKind::StructuredError(
                        "no recovery recorded".to_string(),
                    )));
                }
            }
        }
    }
    Ok(RecoveryReport { patterns: patterns.len(), checks, failures })
}

/// Everything verified at one parameter point.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub params: CodeParams,
    pub conditions: Vec<ConditionReport>,
    pub recovery: RecoveryReport,
}

impl PointReport {
    /// True when every gating condition and the recovery sweep pass.
    pub fn passed(&self) -> bool {
        self.conditions
            .iter()
            .all(|c| c.passed || c.informational)
            && self.recovery.passed()
    }
}

/// Run the full condition-and-recovery suite at one parameter point.
pub fn verify_point(params: CodeParams) -> Result<PointReport, VerifyError> {
    let tables = CodeTables::build(params);
    let h = tables.parity_check();
    let mut conditions = Vec::new();
    if rate(&params) != capacity(&params) {
        conditions.push(ConditionReport::fail("rate-capacity".to_string(), None));
    } else {
        conditions.push(ConditionReport::pass("rate-capacity".to_string()));
    }
    conditions.extend(check_b1(h, &params));
    conditions.extend(check_r1(h, &params)?);
    conditions.extend(check_b2(h, &params));
    conditions.extend(check_r2(h, &params)?);
    conditions.extend(check_code_properties(&tables));
    let recovery = check_recovery_exhaustive(&tables, 0)?;
    Ok(PointReport { params, conditions, recovery })
}

/// All (T, B, N) with t_max ≥ T ≥ B ≥ N ≥ 1, in lexicographic order.
pub fn grid(t_max: usize) -> Vec<CodeParams> {
    let mut out = Vec::new();
    for t in 1..=t_max {
        for b in 1..=t {
            for n in 1..=b {
                out.push(derive_params(t, b, n, None).expect("grid point is valid"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> CodeTables {
        CodeTables::build(derive_params(6, 4, 3, None).unwrap())
    }

    #[test]
    fn conditions_pass_on_worked_example() {
        let t = worked_example();
        let p = t.params();
        let h = t.parity_check();
        let b1 = check_b1(h, p);
        assert_eq!(b1.len(), 2); // l in {0, 1}
        assert!(b1.iter().all(|c| c.passed));
        let r1 = check_r1(h, p).unwrap();
        assert!(r1.iter().all(|c| c.passed));
        let b2 = check_b2(h, p);
        assert!(b2.iter().filter(|c| !c.informational).all(|c| c.passed));
        // the wide reading is informational and indeed dependent
        assert!(b2
            .iter()
            .filter(|c| c.informational)
            .all(|c| !c.passed));
        let r2 = check_r2(h, p).unwrap();
        assert!(r2.iter().all(|c| c.passed));
    }

    #[test]
    fn r2_subsets_inside_burst_windows_follow_b2() {
        // every N-subset of R2's range that fits inside one B-window of
        // B2's range is independent whenever that B2 window passed
        let t = worked_example();
        let p = t.params();
        let h = t.parity_check();
        let (b, nn, tt, n) = (p.max_burst(), p.max_isolated(), p.delay(), p.block_len());
        assert!(check_b2(h, p).iter().filter(|c| !c.informational).all(|c| c.passed));
        for l in b - nn + 1..=tt - nn + 1 {
            let window: Vec<usize> = (l..(l + b).min(n)).collect();
            let mut sel = Combinations::new(window.len(), nn);
            while let Some(idx) = sel.next() {
                let set: Vec<usize> = idx.iter().map(|&i| window[i]).collect();
                assert_eq!(h.select_cols(&set).rank(), nn, "subset {set:?} of window {l}");
            }
        }
    }

    #[test]
    fn single_l_when_burst_equals_isolated() {
        let t = CodeTables::build(derive_params(3, 2, 2, None).unwrap());
        assert_eq!(check_b1(t.parity_check(), t.params()).len(), 1);
    }

    #[test]
    fn corrupted_parity_fails_with_witness() {
        let t = worked_example();
        let p = t.params();
        let f = t.field();
        // zero out every extension part of H: exactly the α contribution
        let mut h = t.parity_check().clone();
        for r in 0..h.rows() {
            for c in 0..h.cols() {
                let e = h[(r, c)];
                if e.ext_coeff() != 0 {
                    h.set(r, c, f.elem(e.base_coeff() as u64, 0));
                }
            }
        }
        let b1 = check_b1(&h, p);
        let failed: Vec<_> = b1.iter().filter(|c| !c.passed).collect();
        assert!(!failed.is_empty());
        for c in failed {
            let w = c.witness.as_ref().expect("failures carry witnesses");
            // the witness really certifies a vanishing combination
            let slice = parity_slice(&h, p, 0);
            let l = 0;
            if c.name == format!("B1[l={l}]") {
                let mut sum = vec![f.zero(); slice.rows()];
                for (&col, &coef) in w.columns.iter().zip(&w.coefficients) {
                    for (r, acc) in sum.iter_mut().enumerate() {
                        *acc = f.add(*acc, f.mul(coef, slice[(r, col)]));
                    }
                }
                assert!(sum.iter().all(|e| e.is_zero()));
            }
        }
        let r1 = check_r1(&h, p).unwrap();
        assert!(r1.iter().any(|c| !c.passed && c.witness.is_some()));
    }

    #[test]
    fn code_properties_pass_on_worked_example() {
        let t = worked_example();
        let props = check_code_properties(&t);
        for c in &props {
            assert!(c.passed || c.informational, "{c}");
        }
        let mds1 = props.iter().find(|c| c.name == "mds1").unwrap();
        assert_eq!(mds1.note.as_deref(), Some("(6, 4) over GF(11)"));
        let mds2 = props.iter().find(|c| c.name == "mds2").unwrap();
        assert_eq!(mds2.note.as_deref(), Some("(6, 2) over GF(11)"));
    }

    #[test]
    fn rank_inequalities_on_random_pairs() {
        let f = QuadExtField::new(11).unwrap();
        let rep = check_rank_inequalities(f, 200, 99);
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn recovery_exhaustive_small_points() {
        // (2,1,1): every pattern, every index
        let t = CodeTables::build(derive_params(2, 1, 1, None).unwrap());
        let rep = check_recovery_exhaustive(&t, 0).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures.first());
        assert_eq!(rep.patterns, 4); // ∅, {0}, {1}, {2}
        let t = worked_example();
        let rep = check_recovery_exhaustive(&t, 0).unwrap();
        assert_eq!(rep.patterns, 98);
        assert!(rep.passed(), "{}", rep.failures[0]);
    }

    #[test]
    fn tightened_deadline_fails_on_worked_example() {
        let t = worked_example();
        let rep = check_recovery_exhaustive(&t, 1).unwrap();
        assert!(!rep.passed(), "T−1 deadlines must be infeasible for B > N");
    }

    #[test]
    fn stripping_alpha_breaks_recovery() {
        let t = worked_example().strip_extension_block();
        let rep = check_recovery_exhaustive(&t, 0).unwrap();
        assert!(!rep.passed(), "without α the burst deadline cannot be met");
    }

    #[test]
    fn grid_enumeration_counts() {
        assert_eq!(grid(2).len(), 1 + 3); // T=1: 1 point; T=2: (1,1),(2,1),(2,2)
        assert_eq!(grid(9).len(), 165);
    }

    #[test]
    fn verify_point_passes_on_worked_example() {
        let rep = verify_point(derive_params(6, 4, 3, None).unwrap()).unwrap();
        assert!(rep.passed());
    }
}
