//! The sliding-window loss model: every window of length W contains either
//! one burst of at most B consecutive erasures or at most N erasures at
//! arbitrary positions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construction::CodeParams;
use crate::linalg::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelError {
    /// A coordinate fell outside [0, block_len).
    CoordinateOutOfRange { coord: usize, block_len: usize },
    /// Enumeration would exceed its guard.
    GuardExceeded { required: u128, bound: u128 },
    /// W ≥ 1, B ≥ N ≥ 1 violated.
    BadSpec,
}

impl fmt::Display for ChannelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelError::CoordinateOutOfRange { coord, block_len } => {
                write!(f, "coordinate {coord} outside block of length {block_len}")
            }
            ChannelError::GuardExceeded { required, bound } => {
                write!(f, "enumeration needs {required} patterns, bound is {bound}")
            }
            ChannelError::BadSpec => write!(f, "window spec must satisfy W >= 1, B >= N >= 1"),
        }
    }
}

impl core::error::Error for ChannelError {}

/// Erased coordinates within one block, kept sorted and unique.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ErasurePattern {
    erased: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(coords: &[usize], block_len: usize) -> Result<Self, ChannelError> {
        for &c in coords {
            if c >= block_len {
                return Err(ChannelError::CoordinateOutOfRange { coord: c, block_len });
            }
        }
        let mut erased = coords.to_vec();
        erased.sort_unstable();
        erased.dedup();
        Ok(Self { erased })
    }

    pub fn empty() -> Self {
        Self { erased: Vec::new() }
    }

    pub fn burst(start: usize, len: usize, block_len: usize) -> Result<Self, ChannelError> {
        let coords: Vec<usize> = (start..start + len).collect();
        Self::new(&coords, block_len)
    }

    pub fn contains(&self, coord: usize) -> bool {
        self.erased.binary_search(&coord).is_ok()
    }

    pub fn len(&self) -> usize {
        self.erased.len()
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.erased
    }

    /// True when the erased set forms one contiguous run (or is empty).
    pub fn is_contiguous(&self) -> bool {
        match (self.erased.first(), self.erased.last()) {
            (Some(&a), Some(&b)) => b - a + 1 == self.erased.len(),
            _ => true,
        }
    }
}

impl fmt::Display for ErasurePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.erased.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// The (W, B, N) admissibility rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlidingWindowSpec {
    window: usize,
    max_burst: usize,
    max_isolated: usize,
}

impl SlidingWindowSpec {
    pub fn new(window: usize, max_burst: usize, max_isolated: usize) -> Result<Self, ChannelError> {
        if window < 1 || max_isolated < 1 || max_burst < max_isolated {
            return Err(ChannelError::BadSpec);
        }
        Ok(Self { window, max_burst, max_isolated })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn max_burst(&self) -> usize {
        self.max_burst
    }

    pub fn max_isolated(&self) -> usize {
        self.max_isolated
    }
}

impl From<&CodeParams> for SlidingWindowSpec {
    fn from(p: &CodeParams) -> Self {
        // Parameter validation already guarantees W > T ≥ B ≥ N ≥ 1.
        Self {
            window: p.window(),
            max_burst: p.max_burst(),
            max_isolated: p.max_isolated(),
        }
    }
}

/// Guard for [`enumerate_block_patterns`]: block length and pattern count.
pub const ENUMERATION_MAX_BLOCK: usize = 24;
pub const ENUMERATION_MAX_PATTERNS: u128 = 2_000_000;

/// Every erasure pattern a block can see from a single loss event: all
/// contiguous runs of length 1..=B plus all coordinate sets of size 0..=N,
/// deduplicated, in (size, lexicographic) order.
pub fn enumerate_block_patterns(
    block_len: usize,
    max_burst: usize,
    max_isolated: usize,
) -> Result<Vec<ErasurePattern>, ChannelError> {
    if block_len > ENUMERATION_MAX_BLOCK {
        return Err(ChannelError::GuardExceeded {
            required: block_len as u128,
            bound: ENUMERATION_MAX_BLOCK as u128,
        });
    }
    let mut required: u128 = 0;
    for s in 0..=max_isolated.min(block_len) {
        required += binomial(block_len, s);
    }
    for b in 1..=max_burst.min(block_len) {
        required += (block_len - b + 1) as u128;
    }
    if required > ENUMERATION_MAX_PATTERNS {
        return Err(ChannelError::GuardExceeded {
            required,
            bound: ENUMERATION_MAX_PATTERNS,
        });
    }

    let mut out: Vec<ErasurePattern> = Vec::new();
    out.push(ErasurePattern::empty());
    for b in 1..=max_burst.min(block_len) {
        for s in 0..=block_len - b {
            out.push(ErasurePattern::burst(s, b, block_len).expect("in range"));
        }
    }
    for s in 1..=max_isolated.min(block_len) {
        let mut subset_sel = crate::linalg::Combinations::new(block_len, s);
        while let Some(coords) = subset_sel.next() {
            out.push(ErasurePattern::new(coords, block_len).expect("in range"));
        }
    }
    out.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    out.dedup();
    Ok(out)
}

/// The first window that breaks the (W, B, N) rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowViolation {
    /// Start index of the violating window.
    pub start: usize,
    /// Erasure count inside it.
    pub erasures: usize,
}

impl fmt::Display for WindowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window starting at {} holds {} erasures in neither burst nor isolated form",
            self.start, self.erasures
        )
    }
}

/// Check every length-W window: either at most N erasures anywhere, or at
/// most B erasures all consecutive. Trailing part-windows are implied by the
/// last full window and are not re-checked.
pub fn check_admissible(seq: &[bool], spec: &SlidingWindowSpec) -> Result<(), WindowViolation> {
    let w = spec.window;
    let last_start = seq.len().saturating_sub(w);
    for start in 0..=last_start {
        let stop = (start + w).min(seq.len());
        let erased: Vec<usize> = (start..stop).filter(|&i| seq[i]).collect();
        let count = erased.len();
        if count <= spec.max_isolated {
            continue;
        }
        let contiguous = erased.last().unwrap() - erased[0] + 1 == count;
        if contiguous && count <= spec.max_burst {
            continue;
        }
        return Err(WindowViolation { start, erasures: count });
    }
    Ok(())
}

pub fn is_admissible(seq: &[bool], spec: &SlidingWindowSpec) -> bool {
    check_admissible(seq, spec).is_ok()
}

/// Knobs for the constructive sampler.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    /// Probability of starting a loss event at an eligible step.
    /// Zero yields the all-clear sequence.
    pub event_rate: f64,
    /// Probability that an event is a burst rather than isolated erasures.
    pub burst_fraction: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self { event_rate: 0.05, burst_fraction: 0.5 }
    }
}

/// Deterministic, admissible-by-construction loss sequence.
///
/// Events (a burst of 1..=B, or 1..=N erasures scattered over one window)
/// are separated by at least W−1 clear slots, so no window can see two
/// events; rejection sampling is never needed.
pub fn sample_sequence(
    spec: &SlidingWindowSpec,
    len: usize,
    seed: u64,
    cfg: &SampleConfig,
) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![false; len];
    let mut t = 0usize;
    while t < len {
        if rng.random::<f64>() >= cfg.event_rate {
            t += 1;
            continue;
        }
        let last = if rng.random::<f64>() < cfg.burst_fraction {
            let b = rng.random_range(1..=spec.max_burst);
            let end = (t + b).min(len);
            out[t..end].iter_mut().for_each(|s| *s = true);
            end - 1
        } else {
            let count = rng.random_range(1..=spec.max_isolated);
            let mut offsets = Vec::with_capacity(count);
            while offsets.len() < count {
                let o = rng.random_range(0..spec.window);
                if !offsets.contains(&o) {
                    offsets.push(o);
                }
            }
            offsets.sort_unstable();
            let mut last = t;
            for o in offsets {
                if t + o < len {
                    out[t + o] = true;
                    last = t + o;
                }
            }
            last
        };
        // guard gap: at least W−1 clear slots after the event's last erasure
        t = last + spec.window;
    }
    out
}
