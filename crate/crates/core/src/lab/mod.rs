//! k[V] as an explicit algebra of functions on V = GF(q)^{2m}.
//!
//! A function is a sparse combination of basis monomials, each exponent in
//! `[0, q-1]`. Products reduce exponents with `x^q = x`, which keeps
//! `x^{q-1}` distinct from `x^0`, so the representation is the unique
//! polynomial of degree below q in each variable.

pub mod basis;
pub mod group;
pub mod operators;
pub mod verify;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Gf};
use crate::types::Params;

pub use basis::{
    char_function, expand_in_symplectic_basis, symplectic_basis, tau, Digit, Expansion, SymplecticBasisFunction,
};
pub use group::{GroupElement, GroupRingElement, PlaneOperator};
pub use operators::{digit_projector, digit_projector_group_ring, mirror_shift_operator, shift_operator, shift_closed_form};
pub use verify::{run_suites, verify_lemmas, CheckResult, LemmaLedger, Suite, VerifyOptions};

/// Largest `q^{2m}` for which whole-space value tables are built.
pub const MAX_TABLE: u64 = 1 << 24;

/// A function on V as a map from exponent vectors to nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionOnV {
    params: Params,
    terms: BTreeMap<Vec<u32>, Gf>,
}

impl FunctionOnV {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Gf> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Gf {
        self.terms.get(exps).copied().unwrap_or(Gf::ZERO)
    }
}

/// Arithmetic context for one (m, p, t).
#[derive(Clone, Debug)]
pub struct Lab {
    params: Params,
    field: FieldSpec,
}

impl Lab {
    pub fn new(params: Params) -> Result<Self> {
        Ok(Lab {
            field: FieldSpec::new(params.p, params.t)?,
            params,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn vars(&self) -> usize {
        self.params.vars()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Coordinate index of x_i (1-based i).
    pub fn x(&self, i: usize) -> usize {
        i - 1
    }

    /// Coordinate index of y_i (1-based i).
    pub fn y(&self, i: usize) -> usize {
        self.vars() - i
    }

    pub fn zero(&self) -> FunctionOnV {
        FunctionOnV {
            params: self.params,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: Gf) -> FunctionOnV {
        self.monomial_unchecked(vec![0; self.vars()], c)
    }

    pub fn one(&self) -> FunctionOnV {
        self.constant(Gf::ONE)
    }

    pub fn monomial(&self, exps: &[u32], c: Gf) -> Result<FunctionOnV> {
        if exps.len() != self.vars() {
            return Err(Error::DimensionMismatch {
                expected: self.vars(),
                found: exps.len(),
            });
        }
        if let Some(&e) = exps.iter().find(|&&e| e >= self.q()) {
            return Err(Error::Range {
                what: "exponent",
                value: e as i64,
                lo: 0,
                hi: self.q() as i64 - 1,
            });
        }
        Ok(self.monomial_unchecked(exps.to_vec(), c))
    }

    pub(crate) fn monomial_unchecked(&self, exps: Vec<u32>, c: Gf) -> FunctionOnV {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        FunctionOnV {
            params: self.params,
            terms,
        }
    }

    pub fn variable(&self, k: usize) -> FunctionOnV {
        let mut e = vec![0; self.vars()];
        e[k] = 1;
        self.monomial_unchecked(e, Gf::ONE)
    }

    /// `sum_k coeffs[k] z_k`.
    pub fn linear_form(&self, coeffs: &[Gf]) -> FunctionOnV {
        let mut f = self.zero();
        for (k, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; self.vars()];
                e[k] = 1;
                f.terms.insert(e, c);
            }
        }
        f
    }

    fn check(&self, f: &FunctionOnV) -> Result<()> {
        if f.params != self.params {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub(crate) fn add_term(&self, f: &mut FunctionOnV, exps: Vec<u32>, c: Gf) {
        if c.is_zero() {
            return;
        }
        match f.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, f: &FunctionOnV, g: &FunctionOnV) -> Result<FunctionOnV> {
        self.check(f)?;
        self.check(g)?;
        let mut out = f.clone();
        for (e, &c) in &g.terms {
            self.add_term(&mut out, e.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, f: &FunctionOnV, c: Gf) -> FunctionOnV {
        let mut out = self.zero();
        if c.is_zero() {
            return out;
        }
        out.terms = f.terms.iter().map(|(e, &x)| (e.clone(), self.field.mul(x, c))).collect();
        out
    }

    pub fn sub(&self, f: &FunctionOnV, g: &FunctionOnV) -> Result<FunctionOnV> {
        self.add(f, &self.scale(g, self.field.neg(Gf::ONE)))
    }

    /// Exponent sum with `x^q = x`: anything at or above q drops by q-1.
    #[inline]
    pub(crate) fn reduce_exp(&self, mut e: u32) -> u32 {
        let q = self.q();
        while e >= q {
            e -= q - 1;
        }
        e
    }

    /// Pointwise product as functions on V.
    pub fn reduce_and_multiply(&self, f: &FunctionOnV, g: &FunctionOnV) -> Result<FunctionOnV> {
        self.check(f)?;
        self.check(g)?;
        let mut out = self.zero();
        for (ea, &ca) in &f.terms {
            for (eb, &cb) in &g.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(&a, &b)| self.reduce_exp(a + b)).collect();
                self.add_term(&mut out, e, self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, f: &FunctionOnV, mut n: u64) -> Result<FunctionOnV> {
        let mut acc = self.one();
        let mut base = f.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.reduce_and_multiply(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.reduce_and_multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn evaluate(&self, f: &FunctionOnV, v: &[Gf]) -> Result<Gf> {
        self.check(f)?;
        if v.len() != self.vars() {
            return Err(Error::DimensionMismatch {
                expected: self.vars(),
                found: v.len(),
            });
        }
        let fs = &self.field;
        Ok(f.terms.iter().fold(Gf::ZERO, |acc, (e, &c)| {
            let term = e.iter().zip(v).fold(c, |t, (&k, &x)| fs.mul(t, fs.pow(x, k as u64)));
            fs.add(acc, term)
        }))
    }

    /// Number of vectors in V.
    pub fn space_size(&self) -> u64 {
        (self.q() as u64).pow(self.vars() as u32)
    }

    fn check_table(&self) -> Result<usize> {
        let size = self.space_size();
        if size > MAX_TABLE {
            return Err(Error::TooLarge {
                what: "value table",
                size: size as u128,
                limit: MAX_TABLE as u128,
            });
        }
        Ok(size as usize)
    }

    /// The vector with index `idx`, read base q with the first coordinate
    /// most significant.
    pub fn vector(&self, mut idx: u64) -> Vec<Gf> {
        let q = self.q() as u64;
        let mut v = vec![Gf::ZERO; self.vars()];
        for k in (0..self.vars()).rev() {
            v[k] = Gf((idx % q) as u32);
            idx /= q;
        }
        v
    }

    pub fn vector_index(&self, v: &[Gf]) -> u64 {
        let q = self.q() as u64;
        v.iter().fold(0, |acc, c| acc * q + c.0 as u64)
    }

    /// Applies a q x q matrix along every axis of a q^n table.
    fn transform_axes(&self, table: &mut [Gf], mat: &[Vec<Gf>]) {
        let q = self.q() as usize;
        let n = self.vars();
        let fs = &self.field;
        let mut line = vec![Gf::ZERO; q];
        for axis in 0..n {
            let stride = q.pow((n - 1 - axis) as u32);
            let block = stride * q;
            for base in (0..table.len()).step_by(block) {
                for off in 0..stride {
                    for (i, slot) in line.iter_mut().enumerate() {
                        *slot = table[base + off + i * stride];
                    }
                    for (o, row) in mat.iter().enumerate() {
                        let mut acc = Gf::ZERO;
                        for (&a, &x) in row.iter().zip(&line) {
                            if !x.is_zero() && !a.is_zero() {
                                acc = fs.add(acc, fs.mul(a, x));
                            }
                        }
                        table[base + off + o * stride] = acc;
                    }
                }
            }
        }
    }

    /// Values of f at every vector, indexed as in [`Lab::vector`].
    pub fn values(&self, f: &FunctionOnV) -> Result<Vec<Gf>> {
        self.check(f)?;
        let size = self.check_table()?;
        let q = self.q() as u64;
        let mut table = vec![Gf::ZERO; size];
        for (e, &c) in &f.terms {
            let idx = e.iter().fold(0u64, |acc, &k| acc * q + k as u64);
            table[idx as usize] = c;
        }
        // eval[x][e] = x^e
        let eval: Vec<Vec<Gf>> = (0..self.q())
            .map(|x| (0..self.q()).map(|e| self.field.pow(Gf(x), e as u64)).collect())
            .collect();
        self.transform_axes(&mut table, &eval);
        Ok(table)
    }

    /// The unique reduced polynomial with the given values.
    pub fn from_values(&self, values: &[Gf]) -> Result<FunctionOnV> {
        let size = self.check_table()?;
        if values.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: values.len(),
            });
        }
        let fs = &self.field;
        let q = self.q();
        let minus_one = fs.neg(Gf::ONE);
        // c_0 = F(0); c_e = -sum_{x != 0} F(x) x^{-e} for 0 < e < q-1;
        // c_{q-1} = -sum_x F(x).
        let interp: Vec<Vec<Gf>> = (0..q)
            .map(|e| {
                (0..q)
                    .map(|x| {
                        if e == 0 {
                            if x == 0 { Gf::ONE } else { Gf::ZERO }
                        } else if e == q - 1 {
                            minus_one
                        } else if x == 0 {
                            Gf::ZERO
                        } else {
                            fs.neg(fs.pow(fs.inv(Gf(x)).expect("nonzero"), e as u64))
                        }
                    })
                    .collect()
            })
            .collect();
        let mut table = values.to_vec();
        self.transform_axes(&mut table, &interp);
        let mut f = self.zero();
        for (idx, &c) in table.iter().enumerate() {
            if !c.is_zero() {
                let exps = self.vector(idx as u64).iter().map(|g| g.0).collect();
                f.terms.insert(exps, c);
            }
        }
        Ok(f)
    }

    /// Every basis monomial exponent vector, in index order.
    pub fn all_monomials(&self) -> Result<Vec<Vec<u32>>> {
        let size = self.check_table()?;
        Ok((0..size as u64).map(|i| self.vector(i).iter().map(|g| g.0).collect()).collect())
    }
}
