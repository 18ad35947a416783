//! Types of basis monomials, H-types, and the signed posets built on them.
//!
//! A basis monomial `prod z_i^{b_i}` of k[V] (each `b_i < q`) has p-adic
//! digits `a_{ij}`; its type is the tuple of digit sums `lambda_j`. Types
//! are in bijection with H-types `s` through
//! `lambda_j = p s_{j+1} - s_j + d_j`, indices mod t, where `d` is the
//! grading class of the total degree modulo `q - 1`.

use std::fmt;

use crate::error::{check_range, Error, Result};
use crate::field::is_prime;

/// The triple (m, p, t) fixing V = GF(p^t)^{2m}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub m: u32,
    pub p: u32,
    pub t: u32,
}

impl Params {
    pub fn new(m: u32, p: u32, t: u32) -> Result<Self> {
        check_range("m", m as i64, 2, 16)?;
        check_range("t", t as i64, 1, 32)?;
        if !is_prime(p as u64) {
            return Err(Error::CompositeP(p as u64));
        }
        if p == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        let q = (p as u64).checked_pow(t).filter(|&q| q <= u32::MAX as u64);
        if q.is_none() {
            return Err(Error::TooLarge {
                what: "q = p^t",
                size: (p as u128).saturating_pow(t),
                limit: u32::MAX as u128,
            });
        }
        Ok(Params { m, p, t })
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.t)
    }

    /// Number of variables, 2m.
    pub fn vars(&self) -> usize {
        2 * self.m as usize
    }

    /// Largest digit sum, 2m(p-1).
    pub fn top(&self) -> u32 {
        2 * self.m * (self.p - 1)
    }

    /// The middle degree m(p-1), where the S+/S- split happens.
    pub fn mid(&self) -> u32 {
        self.m * (self.p - 1)
    }

    /// The t base-p digits of `n`, least significant first.
    pub fn digits(&self, mut n: u64) -> Vec<u32> {
        (0..self.t)
            .map(|_| {
                let d = (n % self.p as u64) as u32;
                n /= self.p as u64;
                d
            })
            .collect()
    }

    #[inline]
    fn next(&self, j: usize) -> usize {
        (j + 1) % self.t as usize
    }
}

/// Exponent vector of a basis monomial, ordered `x_1..x_m, y_m..y_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialExponents {
    pub b: Vec<u32>,
}

impl MonomialExponents {
    pub fn new(params: &Params, b: Vec<u32>) -> Result<Self> {
        if b.len() != params.vars() {
            return Err(Error::DimensionMismatch {
                expected: params.vars(),
                found: b.len(),
            });
        }
        let q = params.q();
        if let Some(&e) = b.iter().find(|&&e| e as u64 >= q) {
            return Err(Error::Range {
                what: "exponent",
                value: e as i64,
                lo: 0,
                hi: q as i64 - 1,
            });
        }
        Ok(MonomialExponents { b })
    }

    /// `a[i][j]`, the j-th digit of `b_i`.
    pub fn digits(&self, params: &Params) -> Vec<Vec<u32>> {
        self.b.iter().map(|&e| params.digits(e as u64)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaType {
    pub lambda: Vec<u32>,
    /// Least nonnegative residue of the total degree mod q - 1.
    pub d: u64,
}

/// An H-type together with its grading class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HType {
    pub s: Vec<u32>,
    pub d: u64,
}

impl HType {
    /// Componentwise order.
    pub fn leq(&self, other: &HType) -> bool {
        self.s.iter().zip(&other.s).all(|(a, b)| a <= b)
    }

    /// Digit sum `|s|`.
    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }
}

impl fmt::Display for HType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.s.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(s, eps)` with `eps` a subset of J(s), stored as a bit mask over digit
/// positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedHType {
    pub s: HType,
    pub eps: u64,
}

impl SignedHType {
    pub fn eps_positions(&self) -> Vec<usize> {
        mask_positions(self.eps)
    }
}

impl fmt::Display for SignedHType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.eps_positions().iter().map(usize::to_string).collect();
        write!(f, "{} {{{}}}", self.s, parts.join(","))
    }
}

pub fn mask_positions(mask: u64) -> Vec<usize> {
    (0..64).filter(|&j| mask >> j & 1 == 1).collect()
}

pub fn type_of(params: &Params, f: &MonomialExponents) -> LambdaType {
    let mut lambda = vec![0u32; params.t as usize];
    for row in f.digits(params) {
        for (l, a) in lambda.iter_mut().zip(row) {
            *l += a;
        }
    }
    let total: u64 = f.b.iter().map(|&e| e as u64).sum();
    LambdaType {
        lambda,
        d: total % (params.q() - 1),
    }
}

/// Solves `(q-1) s_i = sum_j (lambda_j - d_j) p^{(j-i) mod t}`.
pub fn h_type_from_lambda(params: &Params, lt: &LambdaType) -> Result<HType> {
    let t = params.t as usize;
    if lt.lambda.len() != t {
        return Err(Error::DimensionMismatch {
            expected: t,
            found: lt.lambda.len(),
        });
    }
    let dd = params.digits(lt.d);
    let p = params.p as i128;
    let q1 = params.q() as i128 - 1;
    let mut s = Vec::with_capacity(t);
    for i in 0..t {
        let num: i128 = (0..t)
            .map(|j| (lt.lambda[j] as i128 - dd[j] as i128) * p.pow(((j + t - i) % t) as u32))
            .sum();
        if num % q1 != 0 || num < 0 {
            return Err(Error::NonIntegralSolution);
        }
        s.push((num / q1) as u32);
    }
    Ok(HType { s, d: lt.d })
}

/// `lambda_j = p s_{j+1} - s_j + d_j`; `None` if some entry is negative.
pub fn lambda_from_h_type(params: &Params, h: &HType) -> Option<LambdaType> {
    let dd = params.digits(h.d);
    let lambda = (0..params.t as usize)
        .map(|j| {
            let v = params.p as i64 * h.s[params.next(j)] as i64 - h.s[j] as i64 + dd[j] as i64;
            u32::try_from(v).ok()
        })
        .collect::<Option<Vec<u32>>>()?;
    Some(LambdaType { lambda, d: h.d })
}

fn lambda_valid(params: &Params, h: &HType) -> bool {
    lambda_from_h_type(params, h).is_some_and(|lt| lt.lambda.iter().all(|&l| l <= params.top()))
}

/// H (for d = 0) or H[d] (d > 0), in lexicographic order.
///
/// For d = 0 the entries range over [1, 2m-1]; the two extra members of
/// H[0], all-0 and all-2m, are not included (see [`h_zero_extras`]).
pub fn enumerate_h(params: &Params, d: u64) -> Result<Vec<HType>> {
    check_range("d", d as i64, 0, params.q() as i64 - 2)?;
    let lo = if d == 0 { 1 } else { 0 };
    let hi = 2 * params.m - 1;
    let t = params.t as usize;
    let mut out = Vec::new();
    let mut s = vec![lo; t];
    loop {
        let h = HType { s: s.clone(), d };
        if lambda_valid(params, &h) {
            out.push(h);
        }
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            s[i] += 1;
            if s[i] <= hi {
                break;
            }
            s[i] = lo;
        }
    }
}

/// The two H-types added to H to form H[0]: the constants and the
/// top-degree monomial.
pub fn h_zero_extras(params: &Params) -> [HType; 2] {
    let t = params.t as usize;
    [
        HType { s: vec![0; t], d: 0 },
        HType {
            s: vec![2 * params.m; t],
            d: 0,
        },
    ]
}

/// `{s' in H[d] : s' <= s}`.
pub fn ideal_below(params: &Params, s: &HType) -> Result<Vec<HType>> {
    Ok(enumerate_h(params, s.d)?.into_iter().filter(|x| x.leq(s)).collect())
}

/// J(s) = `{ j : lambda_j = m(p-1) }` as a bit mask.
pub fn j_set(params: &Params, s: &HType) -> u64 {
    let lt = lambda_from_h_type(params, s).expect("valid H-type");
    lt.lambda
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == params.mid())
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// Z(s', s) = `{ j : s'_j = s_j, s'_{j+1} = s_{j+1}, lambda_j(s) = m(p-1) }`.
pub fn z_set(params: &Params, lower: &HType, upper: &HType) -> u64 {
    let lt = lambda_from_h_type(params, upper).expect("valid H-type");
    (0..params.t as usize)
        .filter(|&j| {
            let n = params.next(j);
            lower.s[j] == upper.s[j] && lower.s[n] == upper.s[n] && lt.lambda[j] == params.mid()
        })
        .fold(0, |acc, j| acc | 1 << j)
}

/// `(s', eps') <= (s, eps)` iff `s' <= s` and the signs agree on Z(s', s).
pub fn signed_leq(params: &Params, a: &SignedHType, b: &SignedHType) -> bool {
    if a.s.d != b.s.d || !a.s.leq(&b.s) {
        return false;
    }
    let z = z_set(params, &a.s, &b.s);
    a.eps & z == b.eps & z
}

/// S (d = 0, over H) or S[d]: every H-type with every sign subset of J(s).
pub fn enumerate_signed(params: &Params, d: u64) -> Result<Vec<SignedHType>> {
    let mut out = Vec::new();
    for s in enumerate_h(params, d)? {
        let j = j_set(params, &s);
        // all submasks of j, ascending
        let mut sub = 0u64;
        loop {
            out.push(SignedHType { s: s.clone(), eps: sub });
            if sub == j {
                break;
            }
            sub = (sub.wrapping_sub(j)) & j;
        }
    }
    out.sort();
    Ok(out)
}

pub fn is_signed_member(params: &Params, a: &SignedHType) -> bool {
    lambda_valid(params, &a.s)
        && a.s.s.len() == params.t as usize
        && a.eps & !j_set(params, &a.s) == 0
}

pub fn signed_ideal_below(params: &Params, a: &SignedHType) -> Result<Vec<SignedHType>> {
    if !is_signed_member(params, a) {
        return Err(Error::Range {
            what: "signed H-type sign mask",
            value: a.eps as i64,
            lo: 0,
            hi: j_set(params, &a.s) as i64,
        });
    }
    Ok(enumerate_signed(params, a.s.d)?
        .into_iter()
        .filter(|x| signed_leq(params, x, a))
        .collect())
}

/// Covering pairs `(i, j)` (element i covered by element j) of the signed
/// order restricted to `elems`.
pub fn covering_pairs(params: &Params, elems: &[SignedHType]) -> Vec<(usize, usize)> {
    let n = elems.len();
    let less = |i: usize, j: usize| i != j && signed_leq(params, &elems[i], &elems[j]);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if less(i, j) && !(0..n).any(|k| less(i, k) && less(k, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Hasse diagram of the signed order on `elems` in DOT, bottom to top.
pub fn hasse_dot(params: &Params, elems: &[SignedHType]) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, e) in elems.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{e}\"];\n"));
    }
    for (i, j) in covering_pairs(params, elems) {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}
