//! Message files and single-block symbol files.
//!
//! A message file holds one message per line: k symbols in the `a+b*w`
//! text form, space separated. A block file holds the n received symbols of
//! one block, whitespace separated, with `?` marking an erasure.

use windfec_core::decoder::{ReceivedBlock, Symbol};
use windfec_core::gf::{ExtElem, QuadExtField};

use crate::FormatError;

/// Parse a message file: `msg_len` symbols per non-empty line.
pub fn parse_messages(
    text: &str,
    field: QuadExtField,
    msg_len: usize,
) -> Result<Vec<Vec<ExtElem>>, FormatError> {
    let mut out = Vec::new();
    let mut offset = 0u64;
    for line in text.split_inclusive('\n') {
        let at = offset;
        offset += line.len() as u64;
        let line = line.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() {
            continue;
        }
        let symbols: Result<Vec<ExtElem>, FormatError> = line
            .split_whitespace()
            .map(|tok| {
                field
                    .parse_elem(tok)
                    .map_err(|e| FormatError::new(at, format!("bad symbol `{tok}`: {e}")))
            })
            .collect();
        let symbols = symbols?;
        if symbols.len() != msg_len {
            return Err(FormatError::new(
                at,
                format!("line has {} symbols, expected {msg_len}", symbols.len()),
            ));
        }
        out.push(symbols);
    }
    Ok(out)
}

/// Serialize messages, one line each, in the canonical text form.
pub fn write_messages(messages: &[Vec<ExtElem>]) -> String {
    let mut out = String::new();
    for msg in messages {
        let row: Vec<String> = msg.iter().map(|s| s.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse a single received block: exactly `block_len` tokens, `?` = erased.
pub fn parse_block(
    text: &str,
    field: QuadExtField,
    block_len: usize,
) -> Result<ReceivedBlock, FormatError> {
    let mut symbols = Vec::new();
    let mut offset = 0u64;
    for tok in text.split_inclusive(char::is_whitespace) {
        let at = offset;
        offset += tok.len() as u64;
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        if tok == "?" {
            symbols.push(Symbol::Erased);
        } else {
            let sym = field
                .parse_elem(tok)
                .map_err(|e| FormatError::new(at, format!("bad symbol `{tok}`: {e}")))?;
            symbols.push(Symbol::Present(sym));
        }
    }
    if symbols.len() != block_len {
        return Err(FormatError::new(
            offset,
            format!("block has {} symbols, expected {block_len}", symbols.len()),
        ));
    }
    Ok(ReceivedBlock::new(symbols))
}
