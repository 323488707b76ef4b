//! Binary packet-trace format.
//!
//! Header: 8-byte magic `WFECTRC1`, then p, r, T, B, N, W as little-endian
//! u32. Records follow until end of file: seq as little-endian u64, one
//! flag byte (0 = present, 1 = erased), and, when present, the n payload
//! symbols as pairs of little-endian u32 coefficients.

use std::io::{self, Read, Write};

use windfec_core::construction::{derive_params, CodeParams};
use windfec_core::gf::QuadExtField;
use windfec_core::streaming::Packet;

use crate::FormatError;

pub const MAGIC: [u8; 8] = *b"WFECTRC1";

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Malformed(#[from] FormatError),
}

/// Serialize the header for a parameter set.
pub fn write_header<W: Write>(w: &mut W, params: &CodeParams, field: QuadExtField) -> io::Result<()> {
    w.write_all(&MAGIC)?;
    for v in [
        field.prime(),
        field.nonresidue(),
        params.delay() as u32,
        params.max_burst() as u32,
        params.max_isolated() as u32,
        params.window() as u32,
    ] {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Append one packet record.
pub fn write_packet<W: Write>(w: &mut W, params: &CodeParams, packet: &Packet) -> io::Result<()> {
    w.write_all(&packet.seq.to_le_bytes())?;
    match &packet.payload {
        Some(symbols) => {
            assert_eq!(symbols.len(), params.block_len(), "payload must be full");
            w.write_all(&[0u8])?;
            for s in symbols {
                w.write_all(&s.to_le_bytes())?;
            }
        }
        None => w.write_all(&[1u8])?,
    }
    Ok(())
}

/// Incremental reader tracking its byte offset for error reporting.
pub struct TraceReader<R: Read> {
    inner: R,
    offset: u64,
    params: CodeParams,
    field: QuadExtField,
}

impl<R: Read> TraceReader<R> {
    /// Read and validate the header.
    pub fn new(mut inner: R) -> Result<Self, TraceError> {
        let mut offset = 0u64;
        let mut magic = [0u8; 8];
        read_exact_at(&mut inner, &mut magic, &mut offset, "magic")?;
        if magic != MAGIC {
            return Err(FormatError::new(0, "not a windfec packet trace (bad magic)").into());
        }
        let mut fields = [0u32; 6];
        for f in fields.iter_mut() {
            let mut buf = [0u8; 4];
            read_exact_at(&mut inner, &mut buf, &mut offset, "header")?;
            *f = u32::from_le_bytes(buf);
        }
        let [p, r, t, b, n, w] = fields;
        let params = derive_params(t as usize, b as usize, n as usize, Some(w as usize))
            .map_err(|e| FormatError::new(8, e.to_string()))?;
        if p != params.prime() {
            return Err(FormatError::new(
                8,
                format!("stored prime {p} does not match derived prime {}", params.prime()),
            )
            .into());
        }
        let field = QuadExtField::from_parts(p, r).map_err(|e| FormatError::new(12, e.to_string()))?;
        Ok(Self { inner, offset, params, field })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn field(&self) -> QuadExtField {
        self.field
    }

    /// Byte offset of the next unread record.
    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// Next record, or `None` at a clean end of file.
    pub fn next_packet(&mut self) -> Result<Option<Packet>, TraceError> {
        let mut seq_buf = [0u8; 8];
        let record_at = self.offset;
        match self.inner.read(&mut seq_buf)? {
            0 => return Ok(None),
            8 => {}
            got => {
                // partial read: pull the remainder or fail with the offset
                self.offset += got as u64;
                let mut rest = vec![0u8; 8 - got];
                self.inner.read_exact(&mut rest).map_err(|_| {
                    FormatError::new(record_at, "truncated record: incomplete seq")
                })?;
                seq_buf[got..].copy_from_slice(&rest);
            }
        }
        self.offset = record_at + 8;
        let seq = u64::from_le_bytes(seq_buf);
        let mut flag = [0u8; 1];
        read_exact_at(&mut self.inner, &mut flag, &mut self.offset, "flag byte")?;
        match flag[0] {
            1 => Ok(Some(Packet::lost(seq))),
            0 => {
                let n = self.params.block_len();
                let mut payload = Vec::with_capacity(n);
                for _ in 0..n {
                    let mut buf = [0u8; 8];
                    read_exact_at(&mut self.inner, &mut buf, &mut self.offset, "payload symbol")?;
                    let at = self.offset - 8;
                    let sym = self
                        .field
                        .elem_from_le_bytes(buf)
                        .map_err(|e| FormatError::new(at, e.to_string()))?;
                    payload.push(sym);
                }
                Ok(Some(Packet { seq, payload: Some(payload) }))
            }
            other => Err(FormatError::new(
                self.offset - 1,
                format!("flag byte must be 0 or 1, got {other}"),
            )
            .into()),
        }
    }
}

fn read_exact_at<R: Read>(
    r: &mut R,
    buf: &mut [u8],
    offset: &mut u64,
    what: &str,
) -> Result<(), TraceError> {
    let at = *offset;
    r.read_exact(buf)
        .map_err(|e| match e.kind() {
            io::ErrorKind::UnexpectedEof => {
                TraceError::Malformed(FormatError::new(at, format!("truncated {what}")))
            }
            _ => TraceError::Io(e),
        })?;
    *offset += buf.len() as u64;
    Ok(())
}

/// Sniff whether a byte stream starts like a trace.
pub fn looks_like_trace(bytes: &[u8]) -> bool {
    bytes.len() >= MAGIC.len() && bytes[..MAGIC.len()] == MAGIC
}

#[cfg(test)]
mod tests {
    use super::*;
    use windfec_core::construction::{derive_params, CodeTables};
    use windfec_core::streaming::StreamEncoder;

    #[test]
    fn round_trip_preserves_every_byte() {
        let params = derive_params(6, 4, 3, None).unwrap();
        let tables = CodeTables::build(params);
        let f = tables.field();
        let mut enc = StreamEncoder::new(&tables);
        let mut packets = Vec::new();
        for i in 0..20u64 {
            let msg: Vec<_> = (0..4).map(|r| f.elem(i + r, r)).collect();
            let mut p = enc.encode_step(&msg).unwrap();
            if i % 7 == 3 {
                p = Packet::lost(p.seq);
            }
            packets.push(p);
        }
        let mut bytes = Vec::new();
        write_header(&mut bytes, &params, f).unwrap();
        for p in &packets {
            write_packet(&mut bytes, &params, p).unwrap();
        }
        let mut reader = TraceReader::new(&bytes[..]).unwrap();
        assert_eq!(reader.params(), &params);
        let mut back = Vec::new();
        while let Some(p) = reader.next_packet().unwrap() {
            back.push(p);
        }
        assert_eq!(back, packets);
        // re-serialization is identical
        let mut again = Vec::new();
        write_header(&mut again, &params, f).unwrap();
        for p in &back {
            write_packet(&mut again, &params, p).unwrap();
        }
        assert_eq!(again, bytes);
    }

    #[test]
    fn corrupt_traces_report_byte_offsets() {
        let params = derive_params(2, 1, 1, None).unwrap();
        let field = params.field();
        let mut bytes = Vec::new();
        write_header(&mut bytes, &params, field).unwrap();
        write_packet(&mut bytes, &params, &Packet::lost(0)).unwrap();
        // bad flag byte
        let mut bad = bytes.clone();
        let flag_at = bad.len() - 1;
        bad[flag_at] = 9;
        let mut r = TraceReader::new(&bad[..]).unwrap();
        match r.next_packet() {
            Err(TraceError::Malformed(e)) => assert_eq!(e.offset, flag_at as u64),
            other => panic!("expected malformed error, got {other:?}"),
        }
        // truncated seq
        let mut r = TraceReader::new(&bytes[..bytes.len() - 5]).unwrap();
        assert!(matches!(r.next_packet(), Err(TraceError::Malformed(_))));
        // wrong magic
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(TraceReader::new(&bad[..]).is_err());
        // non-canonical coefficient inside a payload
        let mut bytes = Vec::new();
        write_header(&mut bytes, &params, field).unwrap();
        let payload = vec![field.zero(); params.block_len()];
        write_packet(&mut bytes, &params, &Packet { seq: 0, payload: Some(payload) }).unwrap();
        let last8 = bytes.len() - 8;
        bytes[last8..last8 + 4].copy_from_slice(&u32::MAX.to_le_bytes());
        let mut r = TraceReader::new(&bytes[..]).unwrap();
        match r.next_packet() {
            Err(TraceError::Malformed(e)) => assert_eq!(e.offset, last8 as u64),
            other => panic!("expected malformed error, got {other:?}"),
        }
    }
}
