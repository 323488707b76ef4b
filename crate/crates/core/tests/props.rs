//! Property tests for the library-wide invariants.

#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use windfec_core::channel::{
    check_admissible, sample_sequence, ErasurePattern, SampleConfig, SlidingWindowSpec,
};
use windfec_core::construction::{derive_params, CodeTables};
use windfec_core::decoder::{structured_decode, ReceivedBlock};
use windfec_core::gf::{ExtElem, QuadExtField};
use windfec_core::linalg::{FieldMatrix, Solution};
use windfec_core::streaming::StreamEncoder;

/// Small odd primes used to spot-check field behavior.
const PRIMES: [u32; 6] = [3, 5, 7, 11, 13, 17];

fn arb_params() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=7).prop_flat_map(|t| {
        (1usize..=t).prop_flat_map(move |b| (1usize..=b).prop_map(move |n| (t, b, n)))
    })
}

fn arb_elem(p: u32) -> impl Strategy<Value = (u64, u64)> {
    (0..p as u64, 0..p as u64)
}

proptest! {
    #[test]
    fn field_axioms(pi in 0usize..PRIMES.len(), xs in prop::collection::vec((0u64..10_000, 0u64..10_000), 3)) {
        let f = QuadExtField::new(PRIMES[pi]).unwrap();
        let e: Vec<ExtElem> = xs.iter().map(|&(a, b)| f.elem(a, b)).collect();
        let (x, y, z) = (e[0], e[1], e[2]);
        prop_assert_eq!(f.add(x, y), f.add(y, x));
        prop_assert_eq!(f.mul(x, y), f.mul(y, x));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), f.zero());
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
    }

    #[test]
    fn elem_text_form_round_trips(pi in 0usize..PRIMES.len(), coeffs in (0u64..100, 0u64..100)) {
        let f = QuadExtField::new(PRIMES[pi]).unwrap();
        let x = f.elem(coeffs.0, coeffs.1);
        let text = format!("{x}");
        prop_assert_eq!(f.parse_elem(&text).unwrap(), x);
        prop_assert_eq!(f.elem_from_le_bytes(x.to_le_bytes()).unwrap(), x);
    }

    #[test]
    fn unique_solutions_substitute_back(
        seed_entries in prop::collection::vec(arb_elem(11), 9),
        rhs_entries in prop::collection::vec(arb_elem(11), 3),
    ) {
        let f = QuadExtField::new(11).unwrap();
        let a = FieldMatrix::from_fn(f, 3, 3, |r, c| {
            let (x, y) = seed_entries[r * 3 + c];
            f.elem(x, y)
        });
        let b: Vec<ExtElem> = rhs_entries.iter().map(|&(x, y)| f.elem(x, y)).collect();
        match a.solve(&b).unwrap() {
            Solution::Unique(x) => {
                let back = a.transpose().vec_mul(&x);
                prop_assert_eq!(back, b);
                prop_assert_eq!(a.rank(), 3);
            }
            Solution::Underdetermined(x) => {
                let back = a.transpose().vec_mul(&x);
                prop_assert_eq!(back, b);
                prop_assert!(a.rank() < 3);
            }
            Solution::Inconsistent => prop_assert!(a.rank() < 3),
        }
    }

    #[test]
    fn single_event_blocks_decode_to_the_message(
        (t, b, n) in arb_params(),
        msg_seed in 0u64..1_000_000,
        event in (0usize..2, 0usize..16, 1usize..16),
    ) {
        let params = derive_params(t, b, n, None).unwrap();
        let tables = CodeTables::build(params);
        let f = tables.field();
        let block_len = params.block_len();
        // derive a deterministic message from the seed
        let msg: Vec<ExtElem> = (0..params.msg_len())
            .map(|i| f.elem(msg_seed.wrapping_mul(31).wrapping_add(i as u64), msg_seed.wrapping_add(7 * i as u64)))
            .collect();
        // one event: a burst (kind 0) or a scatter of <= N losses (kind 1)
        let (kind, at, size) = event;
        let pattern = if kind == 0 {
            let len = 1 + size % b;
            let start = at % (block_len - len + 1);
            ErasurePattern::burst(start, len, block_len).unwrap()
        } else {
            let count = 1 + size % n;
            let coords: Vec<usize> = (0..count).map(|i| (at + i * (block_len / count).max(1)) % block_len).collect();
            ErasurePattern::new(&coords, block_len).unwrap()
        };
        let block = ReceivedBlock::from_codeword(&tables.encode(&msg), &pattern);
        let report = structured_decode(&tables, &block).unwrap();
        for l in 0..params.msg_len() {
            let rec = report.recovered(l).unwrap();
            prop_assert_eq!(rec.value, msg[l]);
            prop_assert!(rec.time <= params.deadline(l));
        }
    }

    #[test]
    fn sampled_sequences_are_admissible(
        (t, b, n) in arb_params(),
        seed in 0u64..10_000,
        rate in 0.0f64..0.9,
        mix in 0.0f64..=1.0,
    ) {
        let spec = SlidingWindowSpec::new(t + 1, b, n).unwrap();
        let cfg = SampleConfig { event_rate: rate, burst_fraction: mix };
        let seq = sample_sequence(&spec, 500, seed, &cfg);
        prop_assert!(check_admissible(&seq, &spec).is_ok());
    }

    #[test]
    fn encoder_equals_diagonal_construction(
        (t, b, n) in arb_params(),
        seed in 0u64..100_000,
    ) {
        let params = derive_params(t, b, n, None).unwrap();
        let tables = CodeTables::build(params);
        let f = tables.field();
        let (k, block_len) = (params.msg_len(), params.block_len());
        let steps = 3 * block_len;
        let msgs: Vec<Vec<ExtElem>> = (0..steps)
            .map(|i| {
                (0..k)
                    .map(|r| f.elem(seed.wrapping_add((i * k + r) as u64).wrapping_mul(2654435761), seed.wrapping_add(r as u64)))
                    .collect()
            })
            .collect();
        let mut enc = StreamEncoder::new(&tables);
        let packets: Vec<_> = msgs.iter().map(|m| enc.encode_step(m).unwrap()).collect();
        let zero = vec![f.zero(); k];
        for (i, packet) in packets.iter().enumerate() {
            let payload = packet.payload.as_ref().unwrap();
            for pos in 0..block_len {
                let start = i as i64 - pos as i64;
                let diag: Vec<ExtElem> = (0..k)
                    .map(|r| {
                        let idx = start + r as i64;
                        if idx < 0 || idx as usize >= steps {
                            zero[r]
                        } else {
                            msgs[idx as usize][r]
                        }
                    })
                    .collect();
                prop_assert_eq!(payload[pos], tables.encode(&diag)[pos]);
            }
        }
    }
}
