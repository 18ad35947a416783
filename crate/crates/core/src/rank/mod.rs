//! Exact rank over GF(p).
//!
//! Two elimination paths share the packed row kernels: an in-memory
//! forward elimination over the whole matrix, and a streaming insertion
//! into a reduced echelon basis whose memory is bounded by the rank.

mod gf3;
mod swar;

use crate::error::{Error, Result};
use crate::field::{is_prime, pow_mod};
use crate::incidence::SparseIncidenceMatrix;

use gf3::Gf3Packing;
use swar::SwarPacking;

/// Row operations on packed rows. Callers track pending additions per row
/// and call `reduce` once `max_pending` is reached; `get` is exact either
/// way, while `first_nonzero` and use as an `axpy` source require a
/// reduced row.
pub(crate) trait Packing {
    fn row_words(&self) -> usize;
    fn max_pending(&self) -> u32;
    fn get(&self, row: &[u64], col: usize) -> u32;
    fn set(&self, row: &mut [u64], col: usize, v: u32);
    /// `dst += c * src`, skipping words before the one holding `from_col`.
    fn axpy(&self, dst: &mut [u64], src: &[u64], c: u32, from_col: usize);
    fn scale(&self, row: &mut [u64], c: u32, from_col: usize);
    fn reduce(&self, row: &mut [u64], from_col: usize);
    fn first_nonzero(&self, row: &[u64], from_col: usize) -> Option<usize>;
}

/// Which row kernel backs a packed matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// Two bit planes per 64 entries; p = 3 only.
    Bitsliced3,
    /// Residues in guarded lanes with delayed reduction; any odd prime.
    Lanes,
}

#[derive(Clone, Debug)]
enum Packer {
    Gf3(Gf3Packing),
    Swar(SwarPacking),
}

macro_rules! with_packer {
    ($packer:expr, $pk:ident => $body:expr) => {
        match $packer {
            Packer::Gf3($pk) => $body,
            Packer::Swar($pk) => $body,
        }
    };
}

fn make_packer(cols: usize, p: u32, kernel: Kernel) -> Result<Packer> {
    if !is_prime(p as u64) {
        return Err(Error::CompositeP(p as u64));
    }
    match kernel {
        Kernel::Bitsliced3 if p == 3 => Ok(Packer::Gf3(Gf3Packing::new(cols))),
        Kernel::Bitsliced3 => Err(Error::UnsupportedCharacteristic(p)),
        Kernel::Lanes => match swar::lane_bits_for(p) {
            Some(_) => Ok(Packer::Swar(SwarPacking::new(cols, p))),
            None => Err(Error::TooLarge {
                what: "prime for packed lanes",
                size: p as u128,
                limit: 46_341,
            }),
        },
    }
}

fn default_kernel(p: u32) -> Kernel {
    if p == 3 {
        Kernel::Bitsliced3
    } else {
        Kernel::Lanes
    }
}

#[inline]
fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// A dense matrix over GF(p) with packed rows.
#[derive(Clone, Debug)]
pub struct DenseRowPacked {
    rows: usize,
    cols: usize,
    p: u32,
    packer: Packer,
    data: Vec<u64>,
}

impl DenseRowPacked {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Result<Self> {
        Self::zeros_with_kernel(rows, cols, p, default_kernel(p))
    }

    pub fn zeros_with_kernel(rows: usize, cols: usize, p: u32, kernel: Kernel) -> Result<Self> {
        let packer = make_packer(cols, p, kernel)?;
        let w = with_packer!(&packer, pk => pk.row_words());
        Ok(DenseRowPacked {
            rows,
            cols,
            p,
            packer,
            data: vec![0; rows * w],
        })
    }

    /// Packs residues (reduced mod p on entry).
    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32, kernel: Kernel) -> Result<Self> {
        let mut m = Self::zeros_with_kernel(rows.len(), cols, p, kernel)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v % p != 0 {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn from_incidence(m: &SparseIncidenceMatrix, kernel: Kernel) -> Result<Self> {
        let mut d = Self::zeros_with_kernel(m.rows(), m.cols(), m.modulus(), kernel)?;
        for i in 0..m.rows() {
            for &c in m.row(i) {
                d.set(i, c as usize, 1);
            }
        }
        Ok(d)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn kernel(&self) -> Kernel {
        match self.packer {
            Packer::Gf3(_) => Kernel::Bitsliced3,
            Packer::Swar(_) => Kernel::Lanes,
        }
    }

    /// Lane width in bits for the lane kernel (2 bits per entry, split
    /// across planes, for the bitsliced one).
    pub fn bits_per_entry(&self) -> u32 {
        match &self.packer {
            Packer::Gf3(_) => 2,
            Packer::Swar(pk) => pk.lane_bits(),
        }
    }

    fn row_words(&self) -> usize {
        with_packer!(&self.packer, pk => pk.row_words())
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let w = self.row_words();
        with_packer!(&self.packer, pk => pk.get(&self.data[i * w..(i + 1) * w], j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let w = self.row_words();
        let row = &mut self.data[i * w..(i + 1) * w];
        with_packer!(&self.packer, pk => pk.set(row, j, v))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Rank by forward elimination of a copy.
    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        with_packer!(&self.packer, pk => eliminate(pk, &mut data, self.rows, self.cols, self.p))
    }
}

/// Forward Gaussian elimination in place; returns the rank.
fn eliminate<P: Packing>(pk: &P, data: &mut [u64], nrows: usize, cols: usize, p: u32) -> usize {
    let w = pk.row_words();
    if w == 0 {
        return 0;
    }
    let max_pending = pk.max_pending();
    let mut pending = vec![0u32; nrows];
    let mut rank = 0;
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| pk.get(&data[i * w..(i + 1) * w], col) != 0) else {
            continue;
        };
        if piv != rank {
            let (a, b) = data.split_at_mut(piv * w);
            a[rank * w..(rank + 1) * w].swap_with_slice(&mut b[..w]);
            pending.swap(piv, rank);
        }
        let (head, tail) = data.split_at_mut((rank + 1) * w);
        let prow = &mut head[rank * w..];
        if pending[rank] > 0 {
            pk.reduce(prow, col);
        }
        let lead = pk.get(prow, col);
        pk.scale(prow, inv_mod(lead, p), col);
        let prow = &*prow;
        for (row, pend) in tail.chunks_exact_mut(w).zip(&mut pending[rank + 1..]) {
            let c = pk.get(row, col);
            if c != 0 {
                pk.axpy(row, prow, p - c, col);
                *pend += 1;
                if *pend >= max_pending {
                    pk.reduce(row, col);
                    *pend = 0;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over GF(p) of an incidence matrix, by in-memory elimination.
pub fn rank_mod_p(m: &SparseIncidenceMatrix) -> usize {
    DenseRowPacked::from_incidence(m, default_kernel(m.modulus()))
        .expect("incidence modulus is a validated prime")
        .rank()
}

/// Rank over GF(p) of a general matrix of residues.
pub fn rank_dense(rows: &[Vec<u32>], cols: usize, p: u32) -> Result<usize> {
    Ok(DenseRowPacked::from_rows(rows, cols, p, default_kernel(p))?.rank())
}

/// Incremental rank: rows are inserted one at a time into a fully reduced
/// echelon basis, so memory is `rank * cols` packed entries regardless of
/// how many rows are fed.
#[derive(Clone, Debug)]
pub struct StreamingRank {
    cols: usize,
    p: u32,
    packer: Packer,
    basis: Vec<u64>,
    pivots: Vec<usize>,
    scratch: Vec<u64>,
    seen: usize,
}

impl StreamingRank {
    pub fn new(cols: usize, p: u32) -> Result<Self> {
        Self::with_kernel(cols, p, default_kernel(p))
    }

    pub fn with_kernel(cols: usize, p: u32, kernel: Kernel) -> Result<Self> {
        let packer = make_packer(cols, p, kernel)?;
        let w = with_packer!(&packer, pk => pk.row_words());
        Ok(StreamingRank {
            cols,
            p,
            packer,
            basis: Vec::new(),
            pivots: Vec::new(),
            scratch: vec![0; w],
            seen: 0,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows_seen(&self) -> usize {
        self.seen
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Inserts a 0/1 row given by its sorted support. Returns whether the
    /// rank grew.
    pub fn insert_support(&mut self, support: &[u32]) -> Result<bool> {
        if let Some(&c) = support.iter().find(|&&c| c as usize >= self.cols) {
            return Err(Error::Range {
                what: "column index",
                value: c as i64,
                lo: 0,
                hi: self.cols as i64 - 1,
            });
        }
        let mut v = std::mem::take(&mut self.scratch);
        v.fill(0);
        with_packer!(&self.packer, pk => {
            for &c in support {
                pk.set(&mut v, c as usize, 1);
            }
        });
        Ok(self.absorb(v))
    }

    /// Inserts a row of residues. Returns whether the rank grew.
    pub fn insert_dense(&mut self, row: &[u32]) -> Result<bool> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        let mut v = std::mem::take(&mut self.scratch);
        v.fill(0);
        with_packer!(&self.packer, pk => {
            for (j, &x) in row.iter().enumerate() {
                if x % self.p != 0 {
                    pk.set(&mut v, j, x);
                }
            }
        });
        Ok(self.absorb(v))
    }

    fn absorb(&mut self, mut v: Vec<u64>) -> bool {
        let grew = with_packer!(&self.packer, pk => {
            insert_row(pk, self.p, &mut self.basis, &mut self.pivots, &mut v)
        });
        self.scratch = v;
        self.seen += 1;
        grew
    }
}

fn insert_row<P: Packing>(pk: &P, p: u32, basis: &mut Vec<u64>, pivots: &mut Vec<usize>, v: &mut [u64]) -> bool {
    let w = pk.row_words();
    let max_pending = pk.max_pending();
    let mut pending = 0u32;
    // The basis is fully reduced, so each pivot entry of v is unaffected by
    // subtracting the other basis rows and the order is immaterial.
    for (b, &c) in basis.chunks_exact(w).zip(pivots.iter()) {
        let x = pk.get(v, c);
        if x != 0 {
            pk.axpy(v, b, p - x, c);
            pending += 1;
            if pending >= max_pending {
                pk.reduce(v, 0);
                pending = 0;
            }
        }
    }
    if pending > 0 {
        pk.reduce(v, 0);
    }
    let Some(c) = pk.first_nonzero(v, 0) else {
        return false;
    };
    let lead = pk.get(v, c);
    pk.scale(v, inv_mod(lead, p), c);
    for b in basis.chunks_exact_mut(w) {
        let x = pk.get(b, c);
        if x != 0 {
            pk.axpy(b, v, p - x, c);
            pk.reduce(b, c);
        }
    }
    basis.extend_from_slice(v);
    pivots.push(c);
    true
}

/// Rank of a stream of 0/1 rows (given by their supports) over GF(p).
pub fn rank_streaming<I, R>(row_source: I, cols: usize, p: u32) -> Result<usize>
where
    I: IntoIterator<Item = R>,
    R: AsRef<[u32]>,
{
    let mut s = StreamingRank::new(cols, p)?;
    for row in row_source {
        s.insert_support(row.as_ref())?;
        if s.rank() == cols {
            break;
        }
    }
    Ok(s.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::geometry::SymplecticSpace;
    use crate::incidence::build_incidence;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Plain scalar elimination, the reference for the packed kernels.
    fn scalar_rank(rows: &[Vec<u32>], cols: usize, p: u32) -> usize {
        let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| (v % p) as u64).collect()).collect();
        let p = p as u64;
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = pow_mod(m[rank][col], p - 2, p);
            for i in rank + 1..m.len() {
                let f = m[i][col] * inv % p;
                if f != 0 {
                    for j in col..cols {
                        m[i][j] = (m[i][j] + (p - f) * m[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn transpose(rows: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
        (0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, p: u32) -> Vec<Vec<u32>> {
        (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..p)).collect()).collect()
    }

    /// k random rows followed by random combinations of them, shuffled.
    fn planted(rng: &mut ChaCha8Rng, k: usize, extra: usize, c: usize, p: u32) -> Vec<Vec<u32>> {
        let base = random_matrix(rng, k, c, p);
        let mut rows = base.clone();
        for _ in 0..extra {
            let coef: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            rows.push((0..c).map(|j| (0..k).map(|i| coef[i] * base[i][j]).sum::<u32>() % p).collect());
        }
        for i in (1..rows.len()).rev() {
            rows.swap(i, rng.gen_range(0..=i));
        }
        rows
    }

    fn all_paths(rows: &[Vec<u32>], cols: usize, p: u32) -> Vec<usize> {
        let mut out = vec![DenseRowPacked::from_rows(rows, cols, p, Kernel::Lanes).unwrap().rank()];
        if p == 3 {
            out.push(DenseRowPacked::from_rows(rows, cols, p, Kernel::Bitsliced3).unwrap().rank());
        }
        for kernel in [Kernel::Lanes, Kernel::Bitsliced3] {
            if kernel == Kernel::Bitsliced3 && p != 3 {
                continue;
            }
            let mut s = StreamingRank::with_kernel(cols, p, kernel).unwrap();
            for r in rows {
                s.insert_dense(r).unwrap();
            }
            out.push(s.rank());
        }
        out
    }

    #[test]
    fn small_cases() {
        let id: Vec<Vec<u32>> = (0..70).map(|i| (0..70).map(|j| (i == j) as u32).collect()).collect();
        assert!(all_paths(&id, 70, 3).iter().all(|&r| r == 70));
        assert!(all_paths(&id, 70, 5).iter().all(|&r| r == 70));
        let ones = vec![vec![1u32; 3]; 3];
        assert!(all_paths(&ones, 3, 3).iter().all(|&r| r == 1));
        assert_eq!(rank_dense(&[], 4, 3).unwrap(), 0);
        assert_eq!(rank_dense(&[vec![0; 5]], 5, 7).unwrap(), 0);
        assert!(matches!(rank_dense(&[vec![1]], 1, 9), Err(Error::CompositeP(9))));
    }

    #[test]
    fn gq33_rank_by_both_paths() {
        let s = SymplecticSpace::new(2, FieldSpec::new(3, 1).unwrap()).unwrap();
        let a = build_incidence(&s, 2).unwrap();
        assert_eq!(rank_mod_p(&a), 25);
        assert_eq!(rank_streaming(a.row_data(), a.cols(), 3).unwrap(), 25);
        assert_eq!(rank_streaming(a.row_data().iter().rev(), a.cols(), 3).unwrap(), 25);
        let doubled = a.row_data().iter().chain(a.row_data().iter());
        assert_eq!(rank_streaming(doubled, a.cols(), 3).unwrap(), 25);
        assert_eq!(rank_mod_p(&a.transpose()), 25);
        let lanes = DenseRowPacked::from_incidence(&a, Kernel::Lanes).unwrap();
        assert_eq!(lanes.rank(), 25);
    }

    #[test]
    fn planted_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [3u32, 5, 7, 11, 13] {
            for (k, extra, c) in [(1, 5, 9), (10, 30, 64), (40, 60, 130), (65, 10, 70)] {
                let rows = planted(&mut rng, k, extra, c, p);
                let expect = scalar_rank(&rows, c, p);
                assert!(expect <= k);
                // k random rows are independent with overwhelming probability
                // for these sizes except when they nearly fill the space.
                if c >= k + 5 {
                    assert_eq!(expect, k, "p={p} k={k}");
                }
                assert!(all_paths(&rows, c, p).iter().all(|&r| r == expect), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn transpose_invariance_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for p in [3u32, 5] {
            let rows = planted(&mut rng, 700, 500, 1200, p);
            let t = transpose(&rows, 1200);
            let a = rank_dense(&rows, 1200, p).unwrap();
            let b = rank_dense(&t, 1200, p).unwrap();
            assert_eq!(a, 700);
            assert_eq!(a, b);
            let mut s = StreamingRank::new(1200, p).unwrap();
            for r in &t {
                s.insert_dense(r).unwrap();
            }
            assert_eq!(s.rank(), 700);
        }
    }

    #[test]
    fn streaming_rejects_bad_rows() {
        let mut s = StreamingRank::new(4, 3).unwrap();
        assert!(s.insert_support(&[4]).is_err());
        assert!(s.insert_dense(&[1, 2]).is_err());
        assert!(s.insert_support(&[0, 3]).unwrap());
        assert!(!s.insert_dense(&[2, 0, 0, 2]).unwrap());
        assert_eq!((s.rank(), s.rows_seen()), (1, 2));
    }

    #[test]
    fn packed_get_set() {
        for (p, kernel) in [(3, Kernel::Bitsliced3), (3, Kernel::Lanes), (7, Kernel::Lanes), (31, Kernel::Lanes)] {
            let mut m = DenseRowPacked::zeros_with_kernel(3, 100, p, kernel).unwrap();
            for j in 0..100 {
                m.set(1, j, j as u32);
            }
            for j in 0..100 {
                assert_eq!(m.get(1, j), j as u32 % p);
                assert_eq!(m.get(0, j), 0);
            }
        }
        assert!(DenseRowPacked::zeros_with_kernel(1, 1, 5, Kernel::Bitsliced3).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn packed_ranks_match_scalar(
            p in prop::sample::select(vec![3u32, 5, 7, 11]),
            r in 1usize..24,
            c in 1usize..90,
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // sparse-ish entries so ranks below full occur
            let rows: Vec<Vec<u32>> = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(0.2) { rng.gen_range(1..p) } else { 0 }).collect())
                .collect();
            let expect = scalar_rank(&rows, c, p);
            prop_assert!(expect <= r.min(c));
            for got in all_paths(&rows, c, p) {
                prop_assert_eq!(got, expect);
            }
            prop_assert_eq!(rank_dense(&transpose(&rows, c), r, p).unwrap(), expect);
        }
    }
}
