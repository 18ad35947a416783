//! The involution tau on the middle degree, symplectic basis functions, and
//! characteristic functions of subspaces.
//!
//! In the truncated ring with exponents below p, the degree m(p-1) part is
//! spanned by `X^alpha Y^beta` with `|alpha| + |beta| = m(p-1)`, and
//!
//! `tau(X^alpha Y^beta) = (-1)^{|beta|} alpha! beta! X^{beta-bar} Y^{alpha-bar}`,
//!
//! where `alpha-bar = (p-1-a_i)`. S+ is its `(-1)^m` eigenspace. Eigenbases:
//! `x^alpha y^{alpha-bar}` (always in S+), and for `alpha != beta-bar`
//! `x^alpha y^beta +- (-1)^{|beta|+m} alpha! beta! x^{beta-bar} y^{alpha-bar}`
//! (`+` in S+). A symplectic basis function is `prod_j f_j^{p^j}` with each
//! digit `f_j` a monomial, or one of these when `lambda_j = m(p-1)`.

use std::collections::{BTreeMap, BTreeSet};

use super::{FunctionOnV, Lab};
use crate::error::{check_range, Error, Result};
use crate::field::{factorial_mod_p, pow_mod, Gf};
use crate::geometry::Subspace;
use crate::types::{h_type_from_lambda, signed_leq, LambdaType, Params, SignedHType};

pub(crate) fn sign(p: u32, odd: bool) -> u32 {
    if odd {
        p - 1
    } else {
        1
    }
}

pub(crate) fn mulp(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn invp(p: u32, a: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

fn fact_prod(p: u32, v: &[u32]) -> u32 {
    v.iter().fold(1, |acc, &a| mulp(p, acc, factorial_mod_p(a as u64, p)))
}

pub(crate) fn bar(p: u32, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&a| p - 1 - a).collect()
}

/// `tau(X^alpha Y^beta)` as `(coefficient mod p, alpha', beta')`.
pub fn tau(m: u32, p: u32, alpha: &[u32], beta: &[u32]) -> Result<(u32, Vec<u32>, Vec<u32>)> {
    for v in [alpha, beta] {
        if v.len() != m as usize {
            return Err(Error::DimensionMismatch {
                expected: m as usize,
                found: v.len(),
            });
        }
        for &a in v {
            check_range("digit exponent", a as i64, 0, p as i64 - 1)?;
        }
    }
    let deg: u32 = alpha.iter().chain(beta).sum();
    if deg != m * (p - 1) {
        return Err(Error::Degree {
            expected: m * (p - 1),
            found: deg,
        });
    }
    let wb: u32 = beta.iter().sum();
    let c = mulp(p, sign(p, wb % 2 == 1), mulp(p, fact_prod(p, alpha), fact_prod(p, beta)));
    Ok((c, bar(p, beta), bar(p, alpha)))
}

/// The coefficient c in `x^alpha y^beta +- c x^{beta-bar} y^{alpha-bar}`.
fn pair_coeff(m: u32, p: u32, alpha: &[u32], beta: &[u32]) -> u32 {
    let wb: u32 = beta.iter().sum();
    mulp(p, sign(p, (wb + m) % 2 == 1), mulp(p, fact_prod(p, alpha), fact_prod(p, beta)))
}

/// Exponents in coordinate order `x_1..x_m, y_m..y_1` from `(alpha, beta)`.
pub(crate) fn coords(alpha: &[u32], beta: &[u32]) -> Vec<u32> {
    let m = alpha.len();
    let mut e = alpha.to_vec();
    e.extend((0..m).map(|k| beta[m - 1 - k]));
    e
}

pub(crate) fn split(e: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let m = e.len() / 2;
    (e[..m].to_vec(), (0..m).map(|i| e[2 * m - 1 - i]).collect())
}

/// One p-adic digit of a symplectic basis function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Digit {
    /// A plain monomial, exponents in coordinate order.
    Monomial(Vec<u32>),
    /// `x^alpha y^{alpha-bar}`.
    Fixed(Vec<u32>),
    /// `x^alpha y^beta +- c x^{beta-bar} y^{alpha-bar}`, with `(alpha, beta)`
    /// the smaller of the two exponent pairs.
    Paired { alpha: Vec<u32>, beta: Vec<u32>, plus: bool },
}

impl Digit {
    /// Terms as `(coordinate exponents, coefficient mod p)`.
    pub fn terms(&self, m: u32, p: u32) -> Vec<(Vec<u32>, u32)> {
        match self {
            Digit::Monomial(e) => vec![(e.clone(), 1)],
            Digit::Fixed(a) => vec![(coords(a, &bar(p, a)), 1)],
            Digit::Paired { alpha, beta, plus } => {
                let c = pair_coeff(m, p, alpha, beta);
                let c = if *plus { c } else { (p - c) % p };
                vec![(coords(alpha, beta), 1), (coords(&bar(p, beta), &bar(p, alpha)), c)]
            }
        }
    }

    pub fn degree(&self, p: u32) -> u32 {
        self.terms(1, p)[0].0.iter().sum()
    }

    /// True for digits in S+.
    pub fn is_plus(&self) -> bool {
        matches!(self, Digit::Fixed(_) | Digit::Paired { plus: true, .. })
    }
}

/// `prod_j digits[j]^{p^j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticBasisFunction {
    pub digits: Vec<Digit>,
}

impl SymplecticBasisFunction {
    pub fn lambda(&self, params: &Params) -> LambdaType {
        let lambda: Vec<u32> = self.digits.iter().map(|d| d.degree(params.p)).collect();
        let total: u64 = lambda
            .iter()
            .enumerate()
            .map(|(j, &l)| l as u64 * (params.p as u64).pow(j as u32))
            .sum();
        LambdaType {
            lambda,
            d: total % (params.q() - 1),
        }
    }

    pub fn signed_type(&self, params: &Params) -> Result<SignedHType> {
        let s = h_type_from_lambda(params, &self.lambda(params))?;
        let eps = self
            .digits
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_plus())
            .fold(0u64, |acc, (j, _)| acc | 1 << j);
        Ok(SignedHType { s, eps })
    }

    pub fn expand(&self, lab: &Lab) -> FunctionOnV {
        let params = lab.params();
        let (m, p) = (params.m, params.p);
        let mut acc: Vec<(Vec<u32>, u32)> = vec![(vec![0; lab.vars()], 1)];
        for (j, d) in self.digits.iter().enumerate() {
            let scale = p.pow(j as u32);
            let mut next = Vec::new();
            for (e, c) in &acc {
                for (de, dc) in d.terms(m, p) {
                    let ex = e.iter().zip(&de).map(|(&a, &b)| a + b * scale).collect();
                    next.push((ex, mulp(p, *c, dc)));
                }
            }
            acc = next;
        }
        let mut f = lab.zero();
        for (e, c) in acc {
            lab.add_term(&mut f, e, Gf(c));
        }
        f
    }
}

pub(crate) fn compositions(parts: usize, cap: u32, total: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=cap.min(total) {
        for mut rest in compositions(parts - 1, cap, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub(crate) fn digit_options(params: &Params, lambda: u32) -> Vec<Digit> {
    let (m, p) = (params.m as usize, params.p);
    if lambda != params.mid() {
        return compositions(2 * m, p - 1, lambda).into_iter().map(Digit::Monomial).collect();
    }
    let mut out = Vec::new();
    for e in compositions(2 * m, p - 1, lambda) {
        let (alpha, beta) = split(&e);
        let (ab, bb) = (bar(p, &beta), bar(p, &alpha));
        if beta == bb {
            out.push(Digit::Fixed(alpha));
        } else if (alpha.clone(), beta.clone()) < (ab, bb) {
            for plus in [true, false] {
                out.push(Digit::Paired {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    plus,
                });
            }
        }
    }
    out
}

/// All symplectic basis functions of type `lambda`.
pub fn symplectic_basis(params: &Params, lambda: &[u32]) -> Result<Vec<SymplecticBasisFunction>> {
    if lambda.len() != params.t as usize {
        return Err(Error::DimensionMismatch {
            expected: params.t as usize,
            found: lambda.len(),
        });
    }
    for &l in lambda {
        check_range("lambda_j", l as i64, 0, params.top() as i64)?;
    }
    let mut out = vec![Vec::new()];
    for &l in lambda {
        let opts = digit_options(params, l);
        out = out
            .into_iter()
            .flat_map(|pre: Vec<Digit>| {
                opts.iter().map(move |d| {
                    let mut v = pre.clone();
                    v.push(d.clone());
                    v
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(|digits| SymplecticBasisFunction { digits }).collect())
}

/// Coordinates of a function in the symplectic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    params: Params,
    pub coeffs: BTreeMap<SymplecticBasisFunction, Gf>,
}

impl Expansion {
    pub fn signed_types(&self) -> Result<BTreeSet<SignedHType>> {
        self.coeffs.keys().map(|b| b.signed_type(&self.params)).collect()
    }

    /// Types in the support with nothing in the support strictly above.
    pub fn maximal_types(&self) -> Result<Vec<SignedHType>> {
        let types = self.signed_types()?;
        Ok(types
            .iter()
            .filter(|a| !types.iter().any(|b| b != *a && signed_leq(&self.params, a, b)))
            .cloned()
            .collect())
    }

    /// Reassembles the function.
    pub fn to_function(&self, lab: &Lab) -> FunctionOnV {
        let mut f = lab.zero();
        for (b, &c) in &self.coeffs {
            f = lab.add(&f, &lab.scale(&b.expand(lab), c)).expect("same context");
        }
        f
    }
}

/// Rewrites one digit monomial in the digit eigenbasis.
fn digit_expansion(params: &Params, e: &[u32]) -> Vec<(Digit, u32)> {
    let (m, p) = (params.m, params.p);
    let deg: u32 = e.iter().sum();
    if deg != params.mid() {
        return vec![(Digit::Monomial(e.to_vec()), 1)];
    }
    let (alpha, beta) = split(e);
    let (ab, bb) = (bar(p, &beta), bar(p, &alpha));
    if beta == bb {
        return vec![(Digit::Fixed(alpha), 1)];
    }
    let half = invp(p, 2);
    let own = (alpha.clone(), beta.clone()) < (ab.clone(), bb.clone());
    let (ra, rb) = if own { (alpha, beta) } else { (ab, bb) };
    let mk = |plus| Digit::Paired {
        alpha: ra.clone(),
        beta: rb.clone(),
        plus,
    };
    if own {
        // v = (P + M) / 2
        vec![(mk(true), half), (mk(false), half)]
    } else {
        // w = (P - M) / (2c)
        let k = mulp(p, half, invp(p, pair_coeff(m, p, &ra, &rb)));
        vec![(mk(true), k), (mk(false), (p - k) % p)]
    }
}

pub fn expand_in_symplectic_basis(lab: &Lab, f: &FunctionOnV) -> Result<Expansion> {
    if f.params() != lab.params() {
        return Err(Error::ContextMismatch);
    }
    let params = *lab.params();
    let fs = lab.field();
    let t = params.t as usize;
    let mut coeffs: BTreeMap<SymplecticBasisFunction, Gf> = BTreeMap::new();
    for (e, &c) in f.terms() {
        let dig: Vec<Vec<u32>> = e.iter().map(|&x| params.digits(x as u64)).collect();
        let mut acc: Vec<(Vec<Digit>, u32)> = vec![(Vec::new(), 1)];
        for j in 0..t {
            let ej: Vec<u32> = dig.iter().map(|d| d[j]).collect();
            let opts = digit_expansion(&params, &ej);
            acc = acc
                .into_iter()
                .flat_map(|(pre, k)| {
                    opts.iter().map(move |(d, dk)| {
                        let mut v = pre.clone();
                        v.push(d.clone());
                        (v, mulp(params.p, k, *dk))
                    })
                })
                .collect();
        }
        for (digits, k) in acc {
            let add = fs.mul(c, Gf(k));
            let entry = coeffs.entry(SymplecticBasisFunction { digits }).or_insert(Gf::ZERO);
            *entry = fs.add(*entry, add);
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(Expansion { params, coeffs })
}

/// `chi_W = prod (1 - l^{q-1})` over a basis of linear forms vanishing on W.
pub fn char_function(lab: &Lab, w: &Subspace) -> Result<FunctionOnV> {
    if w.ambient_dim() != lab.vars() {
        return Err(Error::DimensionMismatch {
            expected: lab.vars(),
            found: w.ambient_dim(),
        });
    }
    let mut chi = lab.one();
    for form in w.annihilator(lab.field()).rows() {
        let l = lab.linear_form(form);
        let lq = lab.pow(&l, lab.q() as u64 - 1)?;
        chi = lab.reduce_and_multiply(&chi, &lab.sub(&lab.one(), &lq)?)?;
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::DimensionTable;
    use crate::geometry::SymplecticSpace;
    use crate::rank::rank_dense;
    use num_traits::ToPrimitive;

    fn lab(m: u32, p: u32, t: u32) -> Lab {
        Lab::new(Params::new(m, p, t).unwrap()).unwrap()
    }

    fn mid_monomials(m: u32, p: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
        compositions(2 * m as usize, p - 1, m * (p - 1))
            .into_iter()
            .map(|e| split(&e))
            .collect()
    }

    #[test]
    fn tau_is_an_involution() {
        for (m, p) in [(2, 3), (2, 5), (3, 3), (2, 7)] {
            for (a, b) in mid_monomials(m, p) {
                let (c1, a1, b1) = tau(m, p, &a, &b).unwrap();
                let (c2, a2, b2) = tau(m, p, &a1, &b1).unwrap();
                assert_eq!((mulp(p, c1, c2), a2, b2), (1, a, b));
            }
        }
        assert!(matches!(tau(2, 3, &[1, 0], &[0, 0]), Err(Error::Degree { .. })));
    }

    /// Dimension of the `(-1)^m` eigenspace from the rank of `tau - (-1)^m`.
    fn plus_dim_by_rank(m: u32, p: u32) -> usize {
        let basis = mid_monomials(m, p);
        let index: BTreeMap<_, _> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let ev = sign(p, m % 2 == 1);
        let n = basis.len();
        let mut rows = vec![vec![0u32; n]; n];
        for (i, (a, b)) in basis.iter().enumerate() {
            let (c, a1, b1) = tau(m, p, a, b).unwrap();
            let k = index[&(a1, b1)];
            rows[k][i] = (rows[k][i] + c) % p;
            rows[i][i] = (rows[i][i] + p - ev) % p;
        }
        n - rank_dense(&rows, n, p).unwrap()
    }

    #[test]
    fn eigenspace_dimensions() {
        for (m, p) in [(2, 3), (2, 5), (3, 3), (3, 5), (2, 7)] {
            let table = DimensionTable::new(m, p).unwrap();
            let plus = plus_dim_by_rank(m, p);
            assert_eq!(plus as u64, table.plus().to_u64().unwrap(), "m={m} p={p}");
            let opts = digit_options(&Params::new(m, p, 1).unwrap(), m * (p - 1));
            assert_eq!(opts.iter().filter(|d| d.is_plus()).count(), plus);
            assert_eq!(opts.len() as u64, table.get((m * (p - 1)) as i64).to_u64().unwrap());
        }
    }

    #[test]
    fn basis_digits_are_eigenvectors() {
        for (m, p) in [(2, 3), (2, 5), (3, 3)] {
            let ev = sign(p, m % 2 == 1);
            for d in digit_options(&Params::new(m, p, 1).unwrap(), m * (p - 1)) {
                let terms = d.terms(m, p);
                let mut image: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
                for (e, c) in &terms {
                    let (a, b) = split(e);
                    let (tc, a1, b1) = tau(m, p, &a, &b).unwrap();
                    let slot = image.entry(coords(&a1, &b1)).or_insert(0);
                    *slot = (*slot + mulp(p, *c, tc)) % p;
                }
                let lambda = if d.is_plus() { ev } else { (p - ev) % p };
                for (e, c) in &terms {
                    assert_eq!(image[e], mulp(p, lambda, *c), "{d:?}");
                }
            }
        }
    }

    #[test]
    fn basis_per_type_is_independent_and_counted() {
        let params = Params::new(2, 3, 2).unwrap();
        let l = lab(2, 3, 2);
        let table = DimensionTable::new(2, 3).unwrap();
        for l0 in 0..=8 {
            for l1 in 0..=8 {
                let basis = symplectic_basis(&params, &[l0, l1]).unwrap();
                let expect = (table.get(l0 as i64) * table.get(l1 as i64)).to_u64().unwrap();
                assert_eq!(basis.len() as u64, expect);
                let funcs: Vec<FunctionOnV> = basis.iter().map(|b| b.expand(&l)).collect();
                let monos: BTreeSet<Vec<u32>> = funcs.iter().flat_map(|f| f.terms().keys().cloned()).collect();
                assert_eq!(monos.len() as u64, expect);
                let index: BTreeMap<_, _> = monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
                let rows: Vec<Vec<u32>> = funcs
                    .iter()
                    .map(|f| {
                        let mut r = vec![0; monos.len()];
                        for (e, c) in f.terms() {
                            r[index[e]] = c.0;
                        }
                        r
                    })
                    .collect();
                assert_eq!(rank_dense(&rows, monos.len(), 3).unwrap() as u64, expect);
            }
        }
    }

    #[test]
    fn expansion_round_trips() {
        let l = lab(2, 3, 2);
        for e in [[8, 0, 0, 0], [4, 4, 4, 4], [2, 7, 0, 3], [1, 1, 1, 1], [5, 5, 3, 3]] {
            let f = l.monomial(&e, Gf(2)).unwrap();
            let ex = expand_in_symplectic_basis(&l, &f).unwrap();
            assert_eq!(ex.to_function(&l), f);
        }
        for lambda in [[4u32, 4], [4, 2], [6, 4]] {
            for b in symplectic_basis(l.params(), &lambda).unwrap() {
                let ex = expand_in_symplectic_basis(&l, &b.expand(&l)).unwrap();
                assert_eq!(ex.coeffs.len(), 1);
                assert_eq!(ex.coeffs[&b], Gf::ONE);
            }
        }
    }

    #[test]
    fn char_function_of_subspace() {
        let l = lab(2, 3, 1);
        let sp = SymplecticSpace::new(2, l.field().clone()).unwrap();
        for w in sp.isotropic_subspaces(2).unwrap().iter().take(5) {
            let chi = char_function(&l, w).unwrap();
            for (i, v) in l.values(&chi).unwrap().into_iter().enumerate() {
                let inside = w.contains(l.field(), &l.vector(i as u64));
                assert_eq!(v, if inside { Gf::ONE } else { Gf::ZERO });
            }
        }
    }
}
