//! Bitsliced GF(3) rows.
//!
//! Each block of 64 columns is a pair of words `(one, two)`: bit k of `one`
//! is set iff the entry is 1, bit k of `two` iff it is 2. Addition is a
//! handful of boolean operations per 64 entries and negation swaps the two
//! words, so rows are always fully reduced.

use super::Packing;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Gf3Packing {
    blocks: usize,
}

impl Gf3Packing {
    pub(crate) fn new(cols: usize) -> Self {
        Gf3Packing {
            blocks: cols.div_ceil(64),
        }
    }
}

#[inline(always)]
fn add(a1: u64, a2: u64, b1: u64, b2: u64) -> (u64, u64) {
    let na = !(a1 | a2);
    let nb = !(b1 | b2);
    let r1 = (a1 & nb) | (na & b1) | (a2 & b2);
    let r2 = (a2 & nb) | (na & b2) | (a1 & b1);
    (r1, r2)
}

impl Packing for Gf3Packing {
    fn row_words(&self) -> usize {
        2 * self.blocks
    }

    fn max_pending(&self) -> u32 {
        u32::MAX
    }

    #[inline]
    fn get(&self, row: &[u64], col: usize) -> u32 {
        let (b, k) = (col / 64, col % 64);
        ((row[2 * b] >> k) & 1) as u32 | ((((row[2 * b + 1] >> k) & 1) as u32) << 1)
    }

    fn set(&self, row: &mut [u64], col: usize, v: u32) {
        let (b, k) = (col / 64, col % 64);
        let bit = 1u64 << k;
        row[2 * b] &= !bit;
        row[2 * b + 1] &= !bit;
        match v % 3 {
            1 => row[2 * b] |= bit,
            2 => row[2 * b + 1] |= bit,
            _ => {}
        }
    }

    #[inline]
    fn axpy(&self, dst: &mut [u64], src: &[u64], c: u32, from_col: usize) {
        let start = 2 * (from_col / 64);
        let (dst, src) = (&mut dst[start..], &src[start..]);
        if c % 3 == 1 {
            for (d, s) in dst.chunks_exact_mut(2).zip(src.chunks_exact(2)) {
                let (r1, r2) = add(d[0], d[1], s[0], s[1]);
                d[0] = r1;
                d[1] = r2;
            }
        } else if c % 3 == 2 {
            for (d, s) in dst.chunks_exact_mut(2).zip(src.chunks_exact(2)) {
                let (r1, r2) = add(d[0], d[1], s[1], s[0]);
                d[0] = r1;
                d[1] = r2;
            }
        }
    }

    fn scale(&self, row: &mut [u64], c: u32, from_col: usize) {
        match c % 3 {
            0 => row.fill(0),
            2 => {
                for pair in row[2 * (from_col / 64)..].chunks_exact_mut(2) {
                    pair.swap(0, 1);
                }
            }
            _ => {}
        }
    }

    fn reduce(&self, _row: &mut [u64], _from_col: usize) {}

    fn first_nonzero(&self, row: &[u64], from_col: usize) -> Option<usize> {
        let b0 = from_col / 64;
        for b in b0..self.blocks {
            let mut w = row[2 * b] | row[2 * b + 1];
            if b == b0 {
                w &= !0u64 << (from_col % 64);
            }
            if w != 0 {
                return Some(64 * b + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_table() {
        // all nine pairs, replicated across a word at different bit offsets
        let enc = |v: u32| -> (u64, u64) { ((v == 1) as u64, (v == 2) as u64) };
        for a in 0..3u32 {
            for b in 0..3u32 {
                let (a1, a2) = enc(a);
                let (b1, b2) = enc(b);
                let (r1, r2) = add(a1 << 17, a2 << 17, b1 << 17, b2 << 17);
                assert_eq!(((r1 >> 17) & 1) as u32 + 2 * ((r2 >> 17) & 1) as u32, (a + b) % 3);
                assert_eq!((r1 | r2) & !(1 << 17), 0);
            }
        }
    }

    #[test]
    fn row_ops() {
        let pk = Gf3Packing::new(130);
        let mut a = vec![0u64; pk.row_words()];
        let mut b = vec![0u64; pk.row_words()];
        for c in 0..130 {
            pk.set(&mut a, c, (c % 3) as u32);
            pk.set(&mut b, c, ((c / 3) % 3) as u32);
        }
        pk.axpy(&mut a, &b, 2, 0);
        for c in 0..130 {
            assert_eq!(pk.get(&a, c), ((c % 3) as u32 + 2 * ((c / 3) % 3) as u32) % 3);
        }
        assert_eq!(pk.first_nonzero(&a, 0), Some(1));
        let mut z = vec![0u64; pk.row_words()];
        pk.set(&mut z, 129, 2);
        assert_eq!(pk.first_nonzero(&z, 65), Some(129));
        pk.scale(&mut z, 2, 0);
        assert_eq!(pk.get(&z, 129), 1);
    }
}
