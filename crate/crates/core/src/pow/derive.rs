//! Bit-exact expansion of a message digest into field digits.

use sha2::{Digest, Sha256};

use crate::ff::Prime;

pub const LABEL_S: u8 = 0x01;
pub const LABEL_X: u8 = 0x02;
/// Used in place of [`LABEL_S`] when the first draw of `s` is all zero.
pub const LABEL_S_RETRY: u8 = 0x03;

pub(crate) fn digest(message: &[u8]) -> [u8; 32] {
    Sha256::digest(message).into()
}

/// Digits from the bytes of `SHA-256(digest ‖ label ‖ counter_be32)`,
/// `counter = 0, 1, ...`; a byte `b` is kept iff `b < p·⌊256/p⌋` and yields `b mod p`.
#[derive(Clone, Debug)]
pub struct DigitStream {
    digest: [u8; 32],
    label: u8,
    p: u32,
    limit: u32,
    counter: u32,
    block: [u8; 32],
    pos: usize,
}

impl DigitStream {
    /// `p` must be at most 256.
    pub fn new(digest: [u8; 32], label: u8, p: Prime) -> Self {
        let p = p.get();
        assert!(p <= 256, "byte sampling needs p <= 256");
        DigitStream {
            digest,
            label,
            p,
            limit: p * (256 / p),
            counter: 0,
            block: [0; 32],
            pos: 32,
        }
    }

    fn refill(&mut self) {
        let mut h = Sha256::new();
        h.update(self.digest);
        h.update([self.label]);
        h.update(self.counter.to_be_bytes());
        self.block = h.finalize().into();
        self.counter = self.counter.checked_add(1).expect("digit stream exhausted");
        self.pos = 0;
    }
}

impl Iterator for DigitStream {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.pos == self.block.len() {
                self.refill();
            }
            let b = self.block[self.pos] as u32;
            self.pos += 1;
            if b < self.limit {
                return Some(b % self.p);
            }
        }
    }
}

/// `n` digits under [`LABEL_S`]; if they are all zero, successive `n`-digit
/// draws from the [`LABEL_S_RETRY`] stream until one is nonzero.
pub fn derive_s(digest: &[u8; 32], p: Prime, n: usize) -> Vec<u32> {
    let s: Vec<u32> = DigitStream::new(*digest, LABEL_S, p).take(n).collect();
    if s.iter().any(|&d| d != 0) {
        return s;
    }
    let mut retry = DigitStream::new(*digest, LABEL_S_RETRY, p);
    loop {
        let s: Vec<u32> = retry.by_ref().take(n).collect();
        if s.iter().any(|&d| d != 0) {
            return s;
        }
    }
}

/// `k` digits under [`LABEL_X`].
pub fn derive_x(digest: &[u8; 32], p: Prime, k: usize) -> Vec<u32> {
    DigitStream::new(*digest, LABEL_X, p).take(k).collect()
}
