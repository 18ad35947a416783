//! Sp(V) acting on k[V], its group ring, and operators on the (x_1, y_1)
//! plane.
//!
//! A matrix g acts on vectors by `v -> g v`. On functions,
//! `(g f)(v) = f(g^T v)`, which is a left action: `(gh) f = g (h f)`.
//! Concretely `g f` substitutes for each variable `z_k` the linear form
//! `sum_i g[i][k] z_i` read off column k.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use super::{FunctionOnV, Lab};
use crate::error::{Error, Result};
use crate::field::Gf;
use crate::geometry::SymplecticSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    rows: Vec<Vec<Gf>>,
}

impl GroupElement {
    /// Checks `g^T J g = J` for the Gram matrix J.
    pub fn new(lab: &Lab, rows: Vec<Vec<Gf>>) -> Result<Self> {
        let n = lab.vars();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(c) = rows.iter().flatten().find(|c| c.0 >= lab.q()) {
            return Err(Error::Range {
                what: "matrix entry",
                value: c.0 as i64,
                lo: 0,
                hi: lab.q() as i64 - 1,
            });
        }
        let g = GroupElement { rows };
        let fs = lab.field();
        let gram = space(lab).gram();
        for i in 0..n {
            for j in 0..n {
                let mut acc = Gf::ZERO;
                for a in 0..n {
                    for b in 0..n {
                        if !gram[a][b].is_zero() {
                            acc = fs.add(acc, fs.mul(fs.mul(g.rows[a][i], gram[a][b]), g.rows[b][j]));
                        }
                    }
                }
                if acc != gram[i][j] {
                    return Err(Error::NotSymplectic);
                }
            }
        }
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            rows: (0..n)
                .map(|i| (0..n).map(|j| if i == j { Gf::ONE } else { Gf::ZERO }).collect())
                .collect(),
        }
    }

    /// `v -> v + c <v, u> u`.
    pub fn transvection(lab: &Lab, u: &[Gf], c: Gf) -> Result<Self> {
        let n = lab.vars();
        let sp = space(lab);
        let fs = lab.field();
        let mut rows = Self::identity(n).rows;
        for k in 0..n {
            let mut e = vec![Gf::ZERO; n];
            e[k] = Gf::ONE;
            let s = fs.mul(c, sp.form(&e, u)?);
            for i in 0..n {
                rows[i][k] = fs.add(rows[i][k], fs.mul(s, u[i]));
            }
        }
        Self::new(lab, rows)
    }

    /// `x_1 -> x_1 + mu y_1`, everything else fixed.
    pub fn shear_x(lab: &Lab, mu: Gf) -> Self {
        let n = lab.vars();
        let mut g = Self::identity(n);
        g.rows[n - 1][0] = mu;
        g
    }

    /// `y_1 -> y_1 + mu x_1`, everything else fixed.
    pub fn shear_y(lab: &Lab, mu: Gf) -> Self {
        let n = lab.vars();
        let mut g = Self::identity(n);
        g.rows[0][n - 1] = mu;
        g
    }

    pub fn rows(&self) -> &[Vec<Gf>] {
        &self.rows
    }

    pub fn mul(&self, lab: &Lab, other: &GroupElement) -> GroupElement {
        let n = self.rows.len();
        let fs = lab.field();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Gf::ZERO, |acc, k| fs.add(acc, fs.mul(self.rows[i][k], other.rows[k][j])))
                    })
                    .collect()
            })
            .collect();
        GroupElement { rows }
    }

    pub fn apply_vector(&self, lab: &Lab, v: &[Gf]) -> Vec<Gf> {
        let fs = lab.field();
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(Gf::ZERO, |acc, (&a, &x)| fs.add(acc, fs.mul(a, x))))
            .collect()
    }

    pub fn transpose(&self) -> GroupElement {
        let n = self.rows.len();
        GroupElement {
            rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i]).collect()).collect(),
        }
    }

    fn column(&self, k: usize) -> Vec<Gf> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    fn column_is_unit(&self, k: usize) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r[k] == if i == k { Gf::ONE } else { Gf::ZERO })
    }

    /// True if g fixes every coordinate outside {x_1, y_1} and maps that
    /// plane's two variables into their own span.
    pub fn is_plane(&self) -> bool {
        let n = self.rows.len();
        (1..n - 1).all(|k| self.column_is_unit(k))
            && [0, n - 1].iter().all(|&k| (1..n - 1).all(|i| self.rows[i][k].is_zero()))
    }
}

fn space(lab: &Lab) -> SymplecticSpace {
    SymplecticSpace::new(lab.params().m as usize, lab.field().clone()).expect("m >= 2")
}

impl Lab {
    /// `g f` by linear substitution of variables.
    pub fn act(&self, g: &GroupElement, f: &FunctionOnV) -> Result<FunctionOnV> {
        if f.params() != self.params() {
            return Err(Error::ContextMismatch);
        }
        let n = self.vars();
        if g.rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.rows.len(),
            });
        }
        let moved: Vec<usize> = (0..n).filter(|&k| !g.column_is_unit(k)).collect();
        let forms: HashMap<usize, FunctionOnV> = moved.iter().map(|&k| (k, self.linear_form(&g.column(k)))).collect();
        let mut powers: HashMap<(usize, u32), FunctionOnV> = HashMap::new();
        let mut out = self.zero();
        for (e, &c) in f.terms() {
            let mut base = e.clone();
            for &k in &moved {
                base[k] = 0;
            }
            let mut term = self.monomial_unchecked(base, c);
            for &k in &moved {
                if e[k] > 0 {
                    let pw = power_cached(self, &mut powers, &forms[&k], k, e[k])?;
                    term = self.reduce_and_multiply(&term, &pw)?;
                }
            }
            for (ex, &cx) in term.terms() {
                self.add_term(&mut out, ex.clone(), cx);
            }
        }
        Ok(out)
    }

    /// `g f` by evaluating f at `g^T v` and interpolating.
    pub fn act_by_values(&self, g: &GroupElement, f: &FunctionOnV) -> Result<FunctionOnV> {
        let vals = self.values(f)?;
        let gt = g.transpose();
        let out: Vec<Gf> = (0..self.space_size())
            .map(|i| {
                let w = gt.apply_vector(self, &self.vector(i));
                vals[self.vector_index(&w) as usize]
            })
            .collect();
        self.from_values(&out)
    }

    /// Transvections along `e_k` and `e_k + e_l` with coefficients running
    /// over a GF(p)-basis of GF(q).
    pub fn sp_generators(&self) -> Vec<GroupElement> {
        let n = self.vars();
        let fs = self.field();
        let w = fs.primitive();
        let scalars: Vec<Gf> = (0..self.params().t).map(|i| fs.pow(w, i as u64)).collect();
        let mut dirs = Vec::new();
        for k in 0..n {
            let mut u = vec![Gf::ZERO; n];
            u[k] = Gf::ONE;
            dirs.push(u.clone());
            for l in k + 1..n {
                let mut v = u.clone();
                v[l] = Gf::ONE;
                dirs.push(v);
            }
        }
        let mut out = Vec::new();
        for u in &dirs {
            for &c in &scalars {
                out.push(GroupElement::transvection(self, u, c).expect("transvections are symplectic"));
            }
        }
        out
    }

    /// Size of the group generated by `gens`, stopping once `limit` is
    /// exceeded.
    pub fn closure_order(&self, gens: &[GroupElement], limit: usize) -> usize {
        let id = GroupElement::identity(self.vars());
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = s.mul(self, &g);
                if seen.insert(h.clone()) {
                    if seen.len() > limit {
                        return seen.len();
                    }
                    queue.push_back(h);
                }
            }
        }
        seen.len()
    }
}

fn power_cached(
    lab: &Lab,
    cache: &mut HashMap<(usize, u32), FunctionOnV>,
    form: &FunctionOnV,
    k: usize,
    e: u32,
) -> Result<FunctionOnV> {
    if let Some(p) = cache.get(&(k, e)) {
        return Ok(p.clone());
    }
    let p = if e == 1 {
        form.clone()
    } else {
        let prev = power_cached(lab, cache, form, k, e - 1)?;
        lab.reduce_and_multiply(&prev, form)?
    };
    cache.insert((k, e), p.clone());
    Ok(p)
}

/// A formal combination `sum c_g g` in the group ring k[Sp(V)].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    n: usize,
    terms: BTreeMap<GroupElement, Gf>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> Self {
        GroupRingElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, c: Gf) -> Self {
        Self::from_terms(n, [(c, GroupElement::identity(n))], None)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Gf, GroupElement)>, lab: Option<&Lab>) -> Self {
        let mut out = Self::zero(n);
        for (c, g) in terms {
            out.add_term(lab, g, c);
        }
        out
    }

    fn add_term(&mut self, lab: Option<&Lab>, g: GroupElement, c: Gf) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            None => {
                self.terms.insert(g, c);
            }
            Some(old) => {
                let s = lab.expect("field needed to merge terms").field().add(*old, c);
                if s.is_zero() {
                    self.terms.remove(&g);
                } else {
                    *old = s;
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Gf> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, lab: &Lab, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (g, &c) in &other.terms {
            out.add_term(Some(lab), g.clone(), c);
        }
        out
    }

    pub fn scale(&self, lab: &Lab, c: Gf) -> GroupRingElement {
        let mut out = Self::zero(self.n);
        for (g, &x) in &self.terms {
            out.add_term(Some(lab), g.clone(), lab.field().mul(x, c));
        }
        out
    }

    pub fn mul(&self, lab: &Lab, other: &GroupRingElement) -> GroupRingElement {
        let mut out = Self::zero(self.n);
        for (g, &a) in &self.terms {
            for (h, &b) in &other.terms {
                out.add_term(Some(lab), g.mul(lab, h), lab.field().mul(a, b));
            }
        }
        out
    }

    /// `sum c_g (g f)`, one substitution per group element.
    pub fn apply(&self, lab: &Lab, f: &FunctionOnV) -> Result<FunctionOnV> {
        let mut out = lab.zero();
        for (g, &c) in &self.terms {
            out = lab.add(&out, &lab.scale(&lab.act(g, f)?, c))?;
        }
        Ok(out)
    }

    pub fn compile_plane(&self, lab: &Lab) -> Result<PlaneOperator> {
        PlaneOperator::from_group_ring(lab, self)
    }
}

/// A linear operator on k[V] that only touches the variables x_1 and y_1,
/// stored as the images of the q^2 monomials `x_1^a y_1^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneOperator {
    q: u32,
    images: Vec<BTreeMap<(u32, u32), Gf>>,
}

impl PlaneOperator {
    pub fn identity(lab: &Lab) -> Self {
        let q = lab.q();
        PlaneOperator {
            q,
            images: (0..q * q)
                .map(|i| BTreeMap::from([((i / q, i % q), Gf::ONE)]))
                .collect(),
        }
    }

    pub fn scalar(lab: &Lab, c: Gf) -> Self {
        Self::identity(lab).scale(lab, c)
    }

    pub fn image(&self, a: u32, b: u32) -> &BTreeMap<(u32, u32), Gf> {
        &self.images[(a * self.q + b) as usize]
    }

    pub fn from_group_ring(lab: &Lab, x: &GroupRingElement) -> Result<Self> {
        let q = lab.q();
        let n = lab.vars();
        let fs = lab.field();
        let mut images = vec![BTreeMap::new(); (q * q) as usize];
        for (g, &c) in &x.terms {
            if !g.is_plane() {
                return Err(Error::OutsidePlane);
            }
            // x_1 -> g00 x_1 + g10 y_1, y_1 -> g01 x_1 + g11 y_1
            let lx = [(1, 0, g.rows[0][0]), (0, 1, g.rows[n - 1][0])];
            let ly = [(1, 0, g.rows[0][n - 1]), (0, 1, g.rows[n - 1][n - 1])];
            let mut px = vec![BTreeMap::from([((0, 0), Gf::ONE)])];
            let mut py = vec![BTreeMap::from([((0, 0), Gf::ONE)])];
            for e in 1..q as usize {
                px.push(plane_mul_linear(lab, &px[e - 1], &lx));
                py.push(plane_mul_linear(lab, &py[e - 1], &ly));
            }
            for a in 0..q {
                for b in 0..q {
                    let img = &mut images[(a * q + b) as usize];
                    for (&(i1, j1), &c1) in &px[a as usize] {
                        for (&(i2, j2), &c2) in &py[b as usize] {
                            let key = (lab.reduce_exp(i1 + i2), lab.reduce_exp(j1 + j2));
                            plane_add(lab, img, key, fs.mul(c, fs.mul(c1, c2)));
                        }
                    }
                }
            }
        }
        Ok(PlaneOperator { q, images })
    }

    /// `self` after `other`.
    pub fn compose(&self, lab: &Lab, other: &PlaneOperator) -> PlaneOperator {
        let fs = lab.field();
        let images = other
            .images
            .iter()
            .map(|img| {
                let mut out = BTreeMap::new();
                for (&(a, b), &c) in img {
                    for (&key, &d) in self.image(a, b) {
                        plane_add(lab, &mut out, key, fs.mul(c, d));
                    }
                }
                out
            })
            .collect();
        PlaneOperator { q: self.q, images }
    }

    pub fn add(&self, lab: &Lab, other: &PlaneOperator) -> PlaneOperator {
        let mut images = self.images.clone();
        for (img, o) in images.iter_mut().zip(&other.images) {
            for (&key, &c) in o {
                plane_add(lab, img, key, c);
            }
        }
        PlaneOperator { q: self.q, images }
    }

    pub fn scale(&self, lab: &Lab, c: Gf) -> PlaneOperator {
        let images = self
            .images
            .iter()
            .map(|img| {
                img.iter()
                    .map(|(&k, &x)| (k, lab.field().mul(x, c)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        PlaneOperator { q: self.q, images }
    }

    pub fn apply(&self, lab: &Lab, f: &FunctionOnV) -> Result<FunctionOnV> {
        if f.params() != lab.params() {
            return Err(Error::ContextMismatch);
        }
        let n = lab.vars();
        let mut out = lab.zero();
        for (e, &c) in f.terms() {
            for (&(a, b), &d) in self.image(e[0], e[n - 1]) {
                let mut ex = e.clone();
                ex[0] = a;
                ex[n - 1] = b;
                lab.add_term(&mut out, ex, lab.field().mul(c, d));
            }
        }
        Ok(out)
    }
}

fn plane_add(lab: &Lab, img: &mut BTreeMap<(u32, u32), Gf>, key: (u32, u32), c: Gf) {
    if c.is_zero() {
        return;
    }
    let s = lab.field().add(img.get(&key).copied().unwrap_or(Gf::ZERO), c);
    if s.is_zero() {
        img.remove(&key);
    } else {
        img.insert(key, s);
    }
}

fn plane_mul_linear(
    lab: &Lab,
    poly: &BTreeMap<(u32, u32), Gf>,
    form: &[(u32, u32, Gf); 2],
) -> BTreeMap<(u32, u32), Gf> {
    let mut out = BTreeMap::new();
    for (&(a, b), &c) in poly {
        for &(da, db, k) in form {
            if !k.is_zero() {
                let key = (lab.reduce_exp(a + da), lab.reduce_exp(b + db));
                plane_add(lab, &mut out, key, lab.field().mul(c, k));
            }
        }
    }
    out
}
