//! Packed rows for any odd prime, several residues per word.
//!
//! A lane is `b` bits wide with the top bit kept clear as a guard. Row
//! additions `dst += c * src` are plain word arithmetic and are allowed to
//! leave lanes unreduced; after at most `max_pending` of them a lane
//! reduction brings every lane back into `[0, p)`. The bound is chosen so a
//! lane never reaches the guard bit:
//!
//! `(p - 1) + max_pending * (p - 1)^2 <= 2^(b-1) - 1`.

use super::Packing;

#[derive(Clone, Debug)]
pub(crate) struct SwarPacking {
    p: u64,
    lane_bits: u32,
    lanes: usize,
    words: usize,
    max_pending: u32,
    guard: u64,
    lane_mask: u64,
    /// `p << k` replicated into every lane, largest shift first.
    steps: Vec<u64>,
}

/// Smallest lane width in {4, 8, 16, 32} that admits one delayed addition.
pub(crate) fn lane_bits_for(p: u32) -> Option<u32> {
    let p = p as u64;
    let need = (p - 1) + (p - 1) * (p - 1);
    [4u32, 8, 16, 32].into_iter().find(|&b| need < (1u64 << (b - 1)))
}

impl SwarPacking {
    pub(crate) fn new(cols: usize, p: u32) -> Self {
        let lane_bits = lane_bits_for(p).expect("prime too large for packed lanes");
        Self::with_lane_bits(cols, p, lane_bits)
    }

    pub(crate) fn with_lane_bits(cols: usize, p: u32, lane_bits: u32) -> Self {
        let p = p as u64;
        let top = (1u64 << (lane_bits - 1)) - 1;
        let sq = (p - 1) * (p - 1);
        assert!(p - 1 + sq <= top, "lane width {lane_bits} too narrow for p = {p}");
        let max_pending = ((top - (p - 1)) / sq).min(u32::MAX as u64) as u32;
        let vmax = (p - 1) + max_pending as u64 * sq;
        let lanes = (64 / lane_bits) as usize;
        let replicate = |v: u64| (0..lanes).fold(0u64, |acc, i| acc | (v << (i as u32 * lane_bits)));
        let mut steps = Vec::new();
        let mut k = 0;
        while (p << (k + 1)) <= vmax {
            k += 1;
        }
        for s in (0..=k).rev() {
            steps.push(replicate(p << s));
        }
        SwarPacking {
            p,
            lane_bits,
            lanes,
            words: cols.div_ceil(lanes),
            max_pending,
            guard: replicate(1u64 << (lane_bits - 1)),
            lane_mask: (1u64 << lane_bits) - 1,
            steps,
        }
    }

    pub(crate) fn lane_bits(&self) -> u32 {
        self.lane_bits
    }

    #[inline]
    fn locate(&self, col: usize) -> (usize, u32) {
        (col / self.lanes, (col % self.lanes) as u32 * self.lane_bits)
    }

    #[inline]
    fn reduce_word(&self, mut v: u64) -> u64 {
        let shift = self.lane_bits - 1;
        for &pk in &self.steps {
            let t = (v | self.guard).wrapping_sub(pk);
            let keep = t & self.guard;
            let mask = keep - (keep >> shift);
            v = (v & !mask) | (t & mask);
        }
        v
    }
}

impl Packing for SwarPacking {
    fn row_words(&self) -> usize {
        self.words
    }

    fn max_pending(&self) -> u32 {
        self.max_pending
    }

    #[inline]
    fn get(&self, row: &[u64], col: usize) -> u32 {
        let (w, s) = self.locate(col);
        (((row[w] >> s) & self.lane_mask) % self.p) as u32
    }

    fn set(&self, row: &mut [u64], col: usize, v: u32) {
        let (w, s) = self.locate(col);
        row[w] = (row[w] & !(self.lane_mask << s)) | (((v as u64) % self.p) << s);
    }

    #[inline]
    fn axpy(&self, dst: &mut [u64], src: &[u64], c: u32, from_col: usize) {
        let c = c as u64 % self.p;
        if c == 0 {
            return;
        }
        let start = from_col / self.lanes;
        for (d, &s) in dst[start..].iter_mut().zip(&src[start..]) {
            *d += s * c;
        }
    }

    fn scale(&self, row: &mut [u64], c: u32, from_col: usize) {
        let c = c as u64 % self.p;
        let start = from_col / self.lanes;
        for w in &mut row[start..] {
            *w = self.reduce_word(*w * c);
        }
    }

    fn reduce(&self, row: &mut [u64], from_col: usize) {
        let start = from_col / self.lanes;
        for w in &mut row[start..] {
            *w = self.reduce_word(*w);
        }
    }

    fn first_nonzero(&self, row: &[u64], from_col: usize) -> Option<usize> {
        let (w0, s0) = self.locate(from_col);
        for (w, &word) in row.iter().enumerate().skip(w0) {
            let word = if w == w0 { word & (!0u64 << s0) } else { word };
            if word != 0 {
                return Some(w * self.lanes + (word.trailing_zeros() / self.lane_bits) as usize);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::super::Packing;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lane_widths() {
        assert_eq!(lane_bits_for(3), Some(4));
        assert_eq!(lane_bits_for(5), Some(8));
        assert_eq!(lane_bits_for(7), Some(8));
        assert_eq!(lane_bits_for(11), Some(8));
        assert_eq!(lane_bits_for(13), Some(16));
        let pk = SwarPacking::new(10, 5);
        assert_eq!(pk.max_pending(), 7);
        assert_eq!(SwarPacking::new(10, 7).max_pending(), 3);
        assert_eq!(SwarPacking::new(10, 3).max_pending(), 1);
    }

    proptest! {
        #[test]
        fn delayed_reduction_matches_scalar(
            p in prop::sample::select(vec![3u32, 5, 7, 11, 13, 31, 101]),
            seed in prop::collection::vec((0u32..1000, 0u32..1000), 1..40),
        ) {
            let cols = 37;
            let pk = SwarPacking::new(cols, p);
            let mut acc = vec![0u64; pk.row_words()];
            let mut expect = vec![0u64; cols];
            let mut pending = 0;
            for (i, &(a, c)) in seed.iter().enumerate() {
                let mut src = vec![0u64; pk.row_words()];
                for col in 0..cols {
                    let v = (a as usize * 7 + col * (i + 3)) as u32 % p;
                    pk.set(&mut src, col, v);
                    expect[col] = (expect[col] + v as u64 * (c % p) as u64) % p as u64;
                }
                pk.axpy(&mut acc, &src, c, 0);
                pending += 1;
                for col in 0..cols {
                    prop_assert_eq!(pk.get(&acc, col) as u64, expect[col]);
                }
                if pending == pk.max_pending() {
                    pk.reduce(&mut acc, 0);
                    pending = 0;
                    for col in 0..cols {
                        let (w, s) = pk.locate(col);
                        prop_assert!(((acc[w] >> s) & pk.lane_mask) < p as u64);
                    }
                }
            }
        }
    }
}
