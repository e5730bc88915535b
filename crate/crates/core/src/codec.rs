//! Bit-packed encoding of symbol sequences with a [`Codebook`].
//!
//! Payload layout: the magic `MPR1`, the symbol count as a big-endian `u64`,
//! then the concatenated codewords packed most-significant-bit first, with the
//! final byte zero-padded.

use crate::error::{Error, Result};
use crate::model::Codebook;

pub const MAGIC: &[u8; 4] = b"MPR1";
const HEADER_LEN: usize = 12;
/// Cap on the declared count when symbols cost zero bits.
const MAX_FREE_SYMBOLS: u64 = 1 << 32;

#[derive(Debug, Default)]
struct BitWriter {
    bytes: Vec<u8>,
    used: u8,
}

impl BitWriter {
    fn push(&mut self, bit: bool) {
        if self.used == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().expect("pushed above") |= 0x80 >> self.used;
        }
        self.used = (self.used + 1) % 8;
    }
}

/// Encodes 0-based caller-order symbol indices.
pub fn encode(codebook: &Codebook, symbols: &[usize]) -> Result<Vec<u8>> {
    let mut out = BitWriter::default();
    out.bytes.extend_from_slice(MAGIC);
    out.bytes.extend_from_slice(&(symbols.len() as u64).to_be_bytes());
    for &s in symbols {
        let word = codebook
            .codewords()
            .get(s)
            .ok_or_else(|| Error::UnknownSymbol((s + 1).to_string()))?;
        for b in word.bytes() {
            out.push(b == b'1');
        }
    }
    Ok(out.bytes)
}

/// Binary trie over the codewords; `children[node][bit]`.
struct Trie {
    children: Vec<[Option<usize>; 2]>,
    symbol: Vec<Option<usize>>,
}

impl Trie {
    fn new(codebook: &Codebook) -> Self {
        let mut trie = Trie {
            children: vec![[None, None]],
            symbol: vec![None],
        };
        for (s, word) in codebook.codewords().iter().enumerate() {
            let mut node = 0;
            for b in word.bytes() {
                let bit = usize::from(b == b'1');
                node = match trie.children[node][bit] {
                    Some(next) => next,
                    None => {
                        trie.children.push([None, None]);
                        trie.symbol.push(None);
                        let next = trie.children.len() - 1;
                        trie.children[node][bit] = Some(next);
                        next
                    }
                };
            }
            trie.symbol[node] = Some(s);
        }
        trie
    }
}

/// Decodes a payload back into 0-based caller-order symbol indices.
pub fn decode(codebook: &Codebook, payload: &[u8]) -> Result<Vec<usize>> {
    if payload.len() < HEADER_LEN || &payload[..4] != MAGIC {
        return Err(Error::CorruptPayload("missing MPR1 header".into()));
    }
    let count = u64::from_be_bytes(payload[4..HEADER_LEN].try_into().expect("8 bytes"));
    let body = &payload[HEADER_LEN..];
    let total_bits = body.len() as u64 * 8;
    let shortest = codebook.lengths().as_slice().iter().copied().min().unwrap_or(0) as u64;
    let affordable = total_bits.checked_div(shortest).unwrap_or(MAX_FREE_SYMBOLS);
    if count > affordable {
        return Err(Error::CorruptPayload(format!(
            "declared {count} symbols but the bitstream cannot hold them"
        )));
    }

    let trie = Trie::new(codebook);
    let bit_at = |pos: u64| body[(pos / 8) as usize] & (0x80 >> (pos % 8)) != 0;
    let mut pos = 0u64;
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let mut node = 0;
        while trie.symbol[node].is_none() {
            if pos >= total_bits {
                return Err(Error::CorruptPayload("bitstream ends inside a codeword".into()));
            }
            let bit = usize::from(bit_at(pos));
            pos += 1;
            node = trie.children[node][bit]
                .ok_or_else(|| Error::CorruptPayload(format!("no codeword matches bits ending at {pos}")))?;
        }
        out.push(trie.symbol[node].expect("loop exits on a leaf"));
    }
    if body.len() as u64 != pos.div_ceil(8) {
        return Err(Error::CorruptPayload("trailing bytes after the last codeword".into()));
    }
    if (pos..total_bits).any(bit_at) {
        return Err(Error::CorruptPayload("nonzero padding bits".into()));
    }
    Ok(out)
}
