//! The symplectic space V = GF(q)^{2m}, its projective points, and its
//! totally isotropic and coisotropic subspaces.
//!
//! Coordinates are ordered `(x_1, ..., x_m, y_m, ..., y_1)` against the
//! basis `(e_1, ..., e_m, f_m, ..., f_1)`, so coordinate `k` pairs with its
//! mirror `2m - 1 - k` and the Gram matrix is an antidiagonal block.

use crate::error::{check_range, Error, Result};
use crate::field::{FieldSpec, Gf};

/// A projective point, normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<Gf>,
}

impl ProjectivePoint {
    /// Normalizes a nonzero vector; `None` for the zero vector.
    pub fn from_vector(field: &FieldSpec, v: &[Gf]) -> Option<Self> {
        let lead = v.iter().copied().find(|c| !c.is_zero())?;
        let inv = field.inv(lead).ok()?;
        Some(ProjectivePoint {
            coords: v.iter().map(|&c| field.mul(c, inv)).collect(),
        })
    }

    pub fn coords(&self) -> &[Gf] {
        &self.coords
    }
}

/// A subspace of GF(q)^n in reduced row echelon form.
///
/// The RREF is the canonical representative, so equality and ordering of
/// `Subspace` values are equality and lexicographic order of the RREF
/// entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Vec<Gf>>,
    n: usize,
}

impl Subspace {
    /// Canonicalizes the span of `generators` (which may be dependent).
    pub fn from_generators(field: &FieldSpec, n: usize, generators: &[Vec<Gf>]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let mut rows = generators.to_vec();
        rref(field, &mut rows);
        Ok(Subspace { rows, n })
    }

    pub fn zero(n: usize) -> Self {
        Subspace { rows: Vec::new(), n }
    }

    pub fn whole(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Gf::ONE } else { Gf::ZERO }).collect())
            .collect();
        Subspace { rows, n }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// The RREF generator rows.
    pub fn rows(&self) -> &[Vec<Gf>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|c| !c.is_zero()).expect("RREF rows are nonzero"))
            .collect()
    }

    pub fn contains(&self, field: &FieldSpec, v: &[Gf]) -> bool {
        // Reduce v against the RREF rows; it lies in the span iff nothing
        // is left.
        let mut v = v.to_vec();
        for (row, piv) in self.rows.iter().zip(self.pivots()) {
            let c = v[piv];
            if !c.is_zero() {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    pub fn is_subspace_of(&self, field: &FieldSpec, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(field, r))
    }

    /// Linear forms (as coefficient rows) whose common zero set is this
    /// subspace, in RREF.
    pub fn annihilator(&self, field: &FieldSpec) -> Subspace {
        let basis = null_space(field, &self.rows, self.n);
        Subspace::from_generators(field, self.n, &basis).expect("null space vectors have length n")
    }

    /// All projective points of the subspace. Each combination with first
    /// nonzero coefficient 1 is already normalized because the generator
    /// pivots increase.
    pub fn points(&self, field: &FieldSpec) -> Vec<ProjectivePoint> {
        let r = self.dim();
        let mut out = Vec::new();
        for lead in 0..r {
            let tail = r - lead - 1;
            for_each_tuple(field, tail, |coeffs| {
                let mut v = self.rows[lead].clone();
                for (row, &c) in self.rows[lead + 1..].iter().zip(coeffs) {
                    if !c.is_zero() {
                        for (x, &y) in v.iter_mut().zip(row) {
                            *x = field.add(*x, field.mul(c, y));
                        }
                    }
                }
                out.push(ProjectivePoint { coords: v });
            });
        }
        out
    }
}

/// V with the standard alternating form.
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    m: usize,
    field: FieldSpec,
}

impl SymplecticSpace {
    pub fn new(m: usize, field: FieldSpec) -> Result<Self> {
        check_range("m", m as i64, 2, 64)?;
        Ok(SymplecticSpace { m, field })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Index of the coordinate paired with `k` by the form.
    #[inline]
    pub fn mirror(&self, k: usize) -> usize {
        2 * self.m - 1 - k
    }

    /// `<u, v> = sum_i (x_i(u) y_i(v) - y_i(u) x_i(v))`.
    pub fn form(&self, u: &[Gf], v: &[Gf]) -> Result<Gf> {
        let n = self.dim();
        for w in [u, v] {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
        }
        Ok(self.form_unchecked(u, v))
    }

    #[inline]
    fn form_unchecked(&self, u: &[Gf], v: &[Gf]) -> Gf {
        let f = &self.field;
        let mut acc = Gf::ZERO;
        for k in 0..self.m {
            let j = self.mirror(k);
            acc = f.add(acc, f.sub(f.mul(u[k], v[j]), f.mul(u[j], v[k])));
        }
        acc
    }

    /// `<e_k, w>` for the k-th standard basis vector.
    #[inline]
    fn form_basis(&self, k: usize, w: &[Gf]) -> Gf {
        let j = self.mirror(k);
        if k < self.m {
            w[j]
        } else {
            self.field.neg(w[j])
        }
    }

    /// Gram matrix `G[i][j] = <b_i, b_j>`.
    pub fn gram(&self) -> Vec<Vec<Gf>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut e = vec![Gf::ZERO; n];
                        e[j] = Gf::ONE;
                        self.form_basis(i, &e)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_totally_isotropic(&self, w: &Subspace) -> bool {
        let rows = w.rows();
        rows.iter()
            .enumerate()
            .all(|(i, a)| rows[i + 1..].iter().all(|b| self.form_unchecked(a, b).is_zero()))
    }

    /// All points of PG(2m-1, q), sorted by coordinates.
    pub fn points(&self) -> Vec<ProjectivePoint> {
        let mut pts = Subspace::whole(self.dim()).points(&self.field);
        pts.sort();
        pts
    }

    /// `W^perp` in canonical form.
    pub fn perp(&self, w: &Subspace) -> Subspace {
        let f = &self.field;
        let n = self.dim();
        // v lies in W^perp iff <w, v> = 0 for every generator w; the
        // functional v -> <w, v> has coefficients -<e_k, w>.
        let forms: Vec<Vec<Gf>> = w
            .rows()
            .iter()
            .map(|row| (0..n).map(|k| f.neg(self.form_basis(k, row))).collect())
            .collect();
        let mut forms_rref = forms;
        rref(f, &mut forms_rref);
        let basis = null_space(f, &forms_rref, n);
        Subspace::from_generators(f, n, &basis).expect("null space vectors have length n")
    }

    /// Totally isotropic r-subspaces, 1 <= r <= m, in canonical order.
    ///
    /// Rows are chosen from the last (largest pivot) to the first. Each new
    /// row has a smaller pivot, is zero on the pivots already chosen, and
    /// must be orthogonal to the chosen rows; that last condition is an
    /// affine system in the free entries, whose solutions are enumerated
    /// directly.
    pub fn isotropic_subspaces(&self, r: usize) -> Result<Vec<Subspace>> {
        check_range("r", r as i64, 1, self.m as i64)?;
        let mut out = Vec::new();
        let mut chosen: Vec<(usize, Vec<Gf>)> = Vec::new();
        self.extend_isotropic(r, self.dim(), &mut chosen, &mut out);
        out.sort();
        Ok(out)
    }

    fn extend_isotropic(
        &self,
        r: usize,
        pivot_bound: usize,
        chosen: &mut Vec<(usize, Vec<Gf>)>,
        out: &mut Vec<Subspace>,
    ) {
        let n = self.dim();
        let f = &self.field;
        if chosen.len() == r {
            let rows = chosen.iter().rev().map(|(_, row)| row.clone()).collect();
            out.push(Subspace { rows, n });
            return;
        }
        let still_needed = r - chosen.len() - 1;
        for c in still_needed..pivot_bound {
            let free: Vec<usize> = (c + 1..n).filter(|k| chosen.iter().all(|(p, _)| p != k)).collect();
            let a: Vec<Vec<Gf>> = chosen
                .iter()
                .map(|(_, w)| free.iter().map(|&k| self.form_basis(k, w)).collect())
                .collect();
            let b: Vec<Gf> = chosen.iter().map(|(_, w)| f.neg(self.form_basis(c, w))).collect();
            let Some((particular, kernel)) = solve_affine(f, &a, &b, free.len()) else {
                continue;
            };
            for_each_tuple(f, kernel.len(), |coeffs| {
                let mut x = particular.clone();
                for (kv, &cf) in kernel.iter().zip(coeffs) {
                    if !cf.is_zero() {
                        for (xi, &ki) in x.iter_mut().zip(kv) {
                            *xi = f.add(*xi, f.mul(cf, ki));
                        }
                    }
                }
                let mut row = vec![Gf::ZERO; n];
                row[c] = Gf::ONE;
                for (&k, &xv) in free.iter().zip(&x) {
                    row[k] = xv;
                }
                chosen.push((c, row));
                self.extend_isotropic(r, c, chosen, out);
                chosen.pop();
            });
        }
    }

    /// Subspaces `W^perp` for totally isotropic W of dimension `2m - r`,
    /// m+1 <= r <= 2m-1, in canonical order.
    pub fn coisotropic_subspaces(&self, r: usize) -> Result<Vec<Subspace>> {
        check_range("r", r as i64, self.m as i64 + 1, 2 * self.m as i64 - 1)?;
        let mut out: Vec<Subspace> = self
            .isotropic_subspaces(self.dim() - r)?
            .iter()
            .map(|w| self.perp(w))
            .collect();
        out.sort();
        Ok(out)
    }

    /// The flats of dimension r used as incidence rows: isotropic for
    /// r <= m, coisotropic above.
    pub fn flats(&self, r: usize) -> Result<Vec<Subspace>> {
        check_range("r", r as i64, 1, 2 * self.m as i64 - 1)?;
        if r <= self.m {
            self.isotropic_subspaces(r)
        } else {
            self.coisotropic_subspaces(r)
        }
    }
}

/// `<u, v>` on `space`.
pub fn symplectic_form(space: &SymplecticSpace, u: &[Gf], v: &[Gf]) -> Result<Gf> {
    space.form(u, v)
}

pub fn enumerate_points(space: &SymplecticSpace) -> Vec<ProjectivePoint> {
    space.points()
}

pub fn enumerate_isotropic(space: &SymplecticSpace, r: usize) -> Result<Vec<Subspace>> {
    space.isotropic_subspaces(r)
}

pub fn perp(space: &SymplecticSpace, w: &Subspace) -> Subspace {
    space.perp(w)
}

pub fn enumerate_coisotropic(space: &SymplecticSpace, r: usize) -> Result<Vec<Subspace>> {
    space.coisotropic_subspaces(r)
}

/// All r-dimensional subspaces of GF(q)^n, in canonical order.
pub fn all_subspaces(field: &FieldSpec, n: usize, r: usize) -> Result<Vec<Subspace>> {
    check_range("r", r as i64, 0, n as i64)?;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(r);
    choose_pivots(n, r, 0, &mut pivots, &mut |piv| {
        let slots: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (p + 1..n).filter(|k| !piv.contains(k)).map(move |k| (i, k)))
            .collect();
        for_each_tuple(field, slots.len(), |vals| {
            let mut rows = vec![vec![Gf::ZERO; n]; r];
            for (i, &p) in piv.iter().enumerate() {
                rows[i][p] = Gf::ONE;
            }
            for (&(i, k), &v) in slots.iter().zip(vals) {
                rows[i][k] = v;
            }
            out.push(Subspace { rows, n });
        });
    });
    out.sort();
    Ok(out)
}

fn choose_pivots(n: usize, r: usize, start: usize, acc: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if acc.len() == r {
        emit(acc);
        return;
    }
    for c in start..n {
        if n - c < r - acc.len() {
            break;
        }
        acc.push(c);
        choose_pivots(n, r, c + 1, acc, emit);
        acc.pop();
    }
}

/// Calls `f` on every k-tuple over the field, in odometer order (last
/// entry fastest).
pub fn for_each_tuple(field: &FieldSpec, k: usize, mut f: impl FnMut(&[Gf])) {
    let q = field.q();
    let mut t = vec![Gf::ZERO; k];
    loop {
        f(&t);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i].0 += 1;
            if t[i].0 < q {
                break;
            }
            t[i] = Gf::ZERO;
        }
    }
}

/// In-place RREF; zero rows are dropped. Returns the pivot columns.
pub fn rref(field: &FieldSpec, rows: &mut Vec<Vec<Gf>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = field.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let c = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(c, p));
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{v : row . v = 0 for every row}` given rows already in RREF.
pub fn null_space(field: &FieldSpec, rref_rows: &[Vec<Gf>], n: usize) -> Vec<Vec<Gf>> {
    let pivots: Vec<usize> = rref_rows
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero RREF row"))
        .collect();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Gf::ZERO; n];
            v[free] = Gf::ONE;
            for (row, &p) in rref_rows.iter().zip(&pivots) {
                v[p] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Solves `a x = b` (a has `nvars` columns). Returns a particular solution
/// and a kernel basis, or `None` if inconsistent.
pub fn solve_affine(field: &FieldSpec, a: &[Vec<Gf>], b: &[Gf], nvars: usize) -> Option<(Vec<Gf>, Vec<Vec<Gf>>)> {
    let mut aug: Vec<Vec<Gf>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.contains(&nvars) {
        return None;
    }
    let mut particular = vec![Gf::ZERO; nvars];
    for (row, &p) in aug.iter().zip(&pivots) {
        particular[p] = row[nvars];
    }
    let coeff_rows: Vec<Vec<Gf>> = aug.iter().map(|r| r[..nvars].to_vec()).collect();
    Some((particular, null_space(field, &coeff_rows, nvars)))
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (q.pow(n - i) - 1) / (q.pow(i + 1) - 1);
    }
    acc
}

/// Number of totally isotropic r-subspaces of the 2m-dimensional
/// symplectic space over GF(q).
pub fn isotropic_count(m: u32, r: u32, q: u64) -> u128 {
    let prod: u128 = (m - r + 1..=m).map(|i| (q as u128).pow(i) + 1).product();
    gaussian_binomial(m, r, q) * prod
}

/// Integer key of a coordinate vector, read base q with the first
/// coordinate most significant; monotone in the lexicographic order.
pub fn vector_key(field: &FieldSpec, v: &[Gf]) -> u64 {
    let q = field.q() as u64;
    v.iter().fold(0u64, |acc, c| acc * q + c.0 as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn space(m: usize, p: u32, t: u32) -> SymplecticSpace {
        SymplecticSpace::new(m, FieldSpec::new(p, t).unwrap()).unwrap()
    }

    fn basis(n: usize, k: usize) -> Vec<Gf> {
        let mut v = vec![Gf::ZERO; n];
        v[k] = Gf::ONE;
        v
    }

    #[test]
    fn form_on_basis() {
        let s = space(2, 3, 1);
        let (e1, e2, f1) = (basis(4, 0), basis(4, 1), basis(4, 3));
        assert_eq!(s.form(&e1, &f1).unwrap(), Gf::ONE);
        assert_eq!(s.form(&f1, &e1).unwrap(), Gf(2));
        assert_eq!(s.form(&e1, &e2).unwrap(), Gf::ZERO);
        assert!(matches!(s.form(&e1, &[Gf::ZERO; 3]), Err(Error::DimensionMismatch { .. })));
        let g = s.gram();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g[i][j], s.field().neg(g[j][i]));
            }
        }
    }

    #[test]
    fn form_is_alternating() {
        let s = space(3, 3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let u: Vec<Gf> = (0..6).map(|_| Gf(rng.gen_range(0..9))).collect();
            assert_eq!(s.form(&u, &u).unwrap(), Gf::ZERO);
        }
    }

    #[test]
    fn point_counts() {
        assert_eq!(space(2, 3, 1).points().len(), 40);
        assert_eq!(space(2, 3, 2).points().len(), 820);
        assert_eq!(space(3, 3, 1).points().len(), 364);
        let pts = space(2, 3, 1).points();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        // normalization count: nonzero vectors / (q - 1)
        assert_eq!((3u32.pow(4) - 1) / 2, 40);
    }

    #[test]
    fn isotropic_counts_match_closed_forms() {
        for (m, p, t) in [(2usize, 3u32, 1u32), (2, 3, 2), (2, 5, 1), (3, 3, 1)] {
            let s = space(m, p, t);
            let q = s.field().q() as u64;
            for r in 1..=m {
                let subs = s.isotropic_subspaces(r).unwrap();
                assert_eq!(subs.len() as u128, isotropic_count(m as u32, r as u32, q), "m={m} q={q} r={r}");
                assert!(subs.iter().all(|w| w.dim() == r && s.is_totally_isotropic(w)));
                assert!(subs.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(space(3, 3, 1).isotropic_subspaces(3).unwrap().len(), 1120);
        assert_eq!(isotropic_count(3, 2, 3), 3640);
    }

    #[test]
    fn isotropic_lines_by_filtering_all_lines() {
        let s = space(2, 3, 1);
        let filtered: Vec<Subspace> = all_subspaces(s.field(), 4, 2)
            .unwrap()
            .into_iter()
            .filter(|w| s.is_totally_isotropic(w))
            .collect();
        assert_eq!(filtered.len(), 40);
        assert_eq!(filtered, s.isotropic_subspaces(2).unwrap());
    }

    #[test]
    fn exhaustive_pairwise_isotropy() {
        let s = space(2, 3, 2);
        for w in s.isotropic_subspaces(2).unwrap() {
            let pts = w.points(s.field());
            assert_eq!(pts.len(), 10);
            for a in &pts {
                for b in &pts {
                    assert!(s.form(a.coords(), b.coords()).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn perps_of_points_are_distinct_hyperplanes() {
        let s = space(2, 3, 1);
        let mut hyper: Vec<Subspace> = s
            .points()
            .iter()
            .map(|pt| s.perp(&Subspace::from_generators(s.field(), 4, &[pt.coords().to_vec()]).unwrap()))
            .collect();
        assert!(hyper.iter().all(|h| h.dim() == 3));
        hyper.sort();
        hyper.dedup();
        assert_eq!(hyper.len(), 40);
        assert_eq!(hyper, s.coisotropic_subspaces(3).unwrap());
    }

    #[test]
    fn perp_is_an_involution_on_random_subspaces() {
        let s = space(3, 3, 2);
        let f = s.field();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let k = rng.gen_range(0..=6);
            let gens: Vec<Vec<Gf>> = (0..k).map(|_| (0..6).map(|_| Gf(rng.gen_range(0..9))).collect()).collect();
            let w = Subspace::from_generators(f, 6, &gens).unwrap();
            let wp = s.perp(&w);
            assert_eq!(wp.dim(), 6 - w.dim());
            assert_eq!(s.perp(&wp), w);
        }
    }

    #[test]
    fn isotropic_inside_own_perp_and_coisotropic_contains_perp() {
        let s = space(3, 3, 1);
        for w in s.isotropic_subspaces(2).unwrap().iter().take(200) {
            assert!(w.is_subspace_of(s.field(), &s.perp(w)));
        }
        let co = s.coisotropic_subspaces(4).unwrap();
        assert_eq!(co.len(), 3640);
        for u in co.iter().take(200) {
            assert!(s.perp(u).is_subspace_of(s.field(), u));
        }
    }

    #[test]
    fn canonical_form_is_generator_independent() {
        let s = space(2, 3, 2);
        let f = s.field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for w in s.isotropic_subspaces(2).unwrap().iter().step_by(37) {
            // random invertible recombination of the generators
            loop {
                let (a, b, c, d) = (Gf(rng.gen_range(0..9)), Gf(rng.gen_range(0..9)), Gf(rng.gen_range(0..9)), Gf(rng.gen_range(0..9)));
                if f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
                    continue;
                }
                let r = w.rows();
                let comb = |x: Gf, y: Gf| -> Vec<Gf> { (0..4).map(|k| f.add(f.mul(x, r[0][k]), f.mul(y, r[1][k]))).collect() };
                let again = Subspace::from_generators(f, 4, &[comb(a, b), comb(c, d), comb(a, b)]).unwrap();
                assert_eq!(&again, w);
                break;
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let s = space(2, 3, 1);
        assert!(s.isotropic_subspaces(0).is_err());
        assert!(s.isotropic_subspaces(3).is_err());
        assert!(s.coisotropic_subspaces(2).is_err());
        assert!(s.coisotropic_subspaces(4).is_err());
        assert!(SymplecticSpace::new(1, FieldSpec::new(3, 1).unwrap()).is_err());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 2, 3), 1);
        assert_eq!(gaussian_binomial(3, 2, 3), 13);
        assert_eq!(gaussian_binomial(6, 2, 3), 11011);
        assert_eq!(all_subspaces(&FieldSpec::new(3, 1).unwrap(), 4, 2).unwrap().len(), 130);
    }
}
