//! Exact arithmetic in GF(p^t).
//!
//! Elements are stored in the polynomial basis over the deterministic
//! modulus: the first monic irreducible of degree t when monic polynomials
//! are scanned in the same order as field elements (compare the highest
//! non-leading coefficient first, then downward). An element is
//! encoded as the integer `c_0 + c_1 p + ... + c_{t-1} p^{t-1}`, so the
//! natural integer order of encodings is the enumeration order: 0 first,
//! 1 second.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which lookup tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

/// Fields this small get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

/// An element of GF(p^t), encoded as its coefficient vector read base p.
///
/// A `Gf` only has meaning relative to a [`FieldSpec`]; use [`FieldElement`]
/// when the field must travel with the value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Whether a field is requested for general arithmetic or for the odd
/// characteristic geometry and formula paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMode {
    Arithmetic,
    Geometry,
}

struct Inner {
    p: u32,
    t: u32,
    q: u32,
    /// c_0, ..., c_{t-1}, 1
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1)
    exp: Vec<u32>,
    /// log[a] for a != 0
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    pow_p: Vec<u32>,
}

/// GF(p^t) with its deterministic modulus and arithmetic tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p())
            .field("t", &self.t())
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.t == other.inner.t)
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^t). In [`FieldMode::Geometry`] the characteristic must be odd.
pub fn build_field(p: u32, t: u32, mode: FieldMode) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::CompositeP(p as u64));
    }
    if p == 2 && mode == FieldMode::Geometry {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    if t == 0 {
        return Err(Error::Range {
            what: "t",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let q = (p as u64).checked_pow(t).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::TooLarge {
        what: "field order",
        size: (p as u128).saturating_pow(t),
        limit: MAX_FIELD_ORDER as u128,
    })? as u32;
    let modulus = smallest_irreducible(p, t as usize);
    Ok(FieldSpec::from_modulus(p, t, q, modulus))
}

impl FieldSpec {
    /// Shorthand for `build_field(p, t, FieldMode::Arithmetic)`.
    pub fn new(p: u32, t: u32) -> Result<Self> {
        build_field(p, t, FieldMode::Arithmetic)
    }

    fn from_modulus(p: u32, t: u32, q: u32, modulus: Vec<u32>) -> Self {
        let tu = t as usize;
        let mul_slow = |a: u32, b: u32| -> u32 {
            let pa = decode(a, p, tu);
            let pb = decode(b, p, tu);
            encode(&poly_mulmod(&pa, &pb, &modulus, p), p)
        };

        // Primitive element: smallest encoding of multiplicative order q-1.
        let mut exp = Vec::new();
        if q == 2 {
            exp = vec![1];
        } else {
            for g in 2..q {
                exp.clear();
                let mut x = 1u32;
                let mut order = 0;
                loop {
                    exp.push(x);
                    x = mul_slow(x, g);
                    order += 1;
                    if x == 1 {
                        break;
                    }
                }
                if order == q - 1 {
                    break;
                }
            }
        }
        debug_assert_eq!(exp.len(), (q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();

        let add_slow = |a: u32, b: u32| -> u32 {
            let mut r = 0u32;
            let mut base = 1u32;
            let (mut a, mut b) = (a, b);
            for _ in 0..t {
                r += ((a % p + b % p) % p) * base;
                a /= p;
                b /= p;
                base = base.wrapping_mul(p);
            }
            r
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let mut r = 0u32;
                let mut base = 1u32;
                let mut a = a;
                for _ in 0..t {
                    r += ((p - a % p) % p) * base;
                    a /= p;
                    base = base.wrapping_mul(p);
                }
                r
            })
            .collect();
        let add = (q <= ADD_TABLE_LIMIT && t > 1).then(|| {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = add_slow(a, b);
                }
            }
            table
        });

        let mut inner = Inner {
            p,
            t,
            q,
            modulus,
            exp: doubled,
            log,
            neg,
            add,
            pow_p: Vec::new(),
        };
        let pow_p = (0..q)
            .map(|a| pow_with(&inner, a, p as u64))
            .collect();
        inner.pow_p = pow_p;
        FieldSpec {
            inner: Arc::new(inner),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn t(&self) -> u32 {
        self.inner.t
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients `(c_0, ..., c_{t-1}, 1)`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Human-readable modulus, e.g. `X^2 + 1`.
    pub fn modulus_string(&self) -> String {
        poly_to_string(&self.inner.modulus)
    }

    /// The primitive element used for the log tables.
    pub fn primitive(&self) -> Gf {
        Gf(self.inner.exp[1.min(self.inner.exp.len() - 1)])
    }

    #[inline]
    pub fn zero(&self) -> Gf {
        Gf::ZERO
    }

    #[inline]
    pub fn one(&self) -> Gf {
        Gf::ONE
    }

    /// All q elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.q()).map(Gf)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Gf> {
        (1..self.q()).map(Gf)
    }

    /// Embeds an integer through the prime field.
    pub fn from_int(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Gf> {
        if coeffs.len() != self.t() as usize {
            return Err(Error::DimensionMismatch {
                expected: self.t() as usize,
                found: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::Range {
                what: "coefficient",
                value: c as i64,
                lo: 0,
                hi: self.p() as i64 - 1,
            });
        }
        Ok(Gf(encode(coeffs, self.p())))
    }

    pub fn coeffs(&self, a: Gf) -> Vec<u32> {
        decode(a.0, self.p(), self.t() as usize)
    }

    /// True when `a` lies in the prime subfield.
    #[inline]
    pub fn in_prime_field(&self, a: Gf) -> bool {
        a.0 < self.p()
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        let inner = &*self.inner;
        if inner.t == 1 {
            let s = a.0 + b.0;
            return Gf(if s >= inner.p { s - inner.p } else { s });
        }
        match &inner.add {
            Some(table) => Gf(table[(a.0 * inner.q + b.0) as usize]),
            None => {
                let p = inner.p;
                let (mut x, mut y) = (a.0, b.0);
                let mut r = 0u32;
                let mut base = 1u32;
                while x > 0 || y > 0 {
                    let s = x % p + y % p;
                    r += (if s >= p { s - p } else { s }) * base;
                    x /= p;
                    y /= p;
                    base *= p;
                }
                Gf(r)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        Gf(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let inner = &*self.inner;
        Gf(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.inner;
        let l = inner.log[a.0 as usize];
        Ok(Gf(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` with the convention `0^0 = 1`.
    pub fn pow(&self, a: Gf, n: u64) -> Gf {
        Gf(pow_with(&self.inner, a.0, n))
    }

    /// `a^p`.
    #[inline]
    pub fn frobenius(&self, a: Gf) -> Gf {
        Gf(self.inner.pow_p[a.0 as usize])
    }

    /// Discrete log base [`FieldSpec::primitive`].
    pub fn log(&self, a: Gf) -> Option<u32> {
        (!a.is_zero()).then(|| self.inner.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Gf) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.q() - 1) as u64;
        Some(n / num_integer::gcd(l, n))
    }

    /// Wraps a raw value in a [`FieldElement`] bound to this field.
    pub fn element(&self, a: Gf) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: a,
        }
    }
}

fn pow_with(inner: &Inner, a: u32, n: u64) -> u32 {
    if n == 0 {
        return 1;
    }
    if a == 0 {
        return 0;
    }
    let order = (inner.q - 1) as u64;
    let l = (inner.log[a as usize] as u64 * (n % order)) % order;
    inner.exp[l as usize]
}

/// A field element that carries its field, for checked mixed-field use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: Gf,
}

/// Operations accepted by [`field_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
    Frobenius,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> Gf {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q() as u64,
                right: other.field.q() as u64,
            });
        }
        Ok(())
    }

    fn wrap(&self, v: Gf) -> FieldElement {
        self.field.element(v)
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, n))
    }

    pub fn frobenius(&self) -> FieldElement {
        self.wrap(self.field.frobenius(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut c = self.coeffs();
        while c.len() > 1 && *c.last().unwrap() == 0 {
            c.pop();
        }
        if c.len() == 1 {
            return write!(f, "{}", c[0]);
        }
        f.write_str(&poly_to_string(&c))
    }
}

/// Binary operations take `b`; unary ones (`Inv`, `Pow`, `Frobenius`)
/// ignore it apart from the field check.
pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    a.same_field(b)?;
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Pow(n) => Ok(a.pow(n)),
        FieldOp::Frobenius => Ok(a.frobenius()),
    }
}

/// The elements of the field in enumeration order.
pub fn enumerate_field(spec: &FieldSpec) -> Vec<FieldElement> {
    spec.elements().map(|a| spec.element(a)).collect()
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p64, k % p64);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binomial_mod(ni, ki, p64) % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

/// `a! mod p`.
pub fn factorial_mod_p(a: u64, p: u32) -> u32 {
    let p = p as u64;
    if a >= p {
        return 0;
    }
    (1..=a).fold(1u64, |acc, i| acc * i % p) as u32
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            r = r * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    r
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn decode(mut a: u32, p: u32, t: usize) -> Vec<u32> {
    let mut c = vec![0u32; t];
    for slot in c.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    c
}

fn poly_to_string(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &ci) in c.iter().enumerate().rev() {
        if ci == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "X".to_string(),
            _ => format!("X^{i}"),
        };
        terms.push(match (ci, i) {
            (_, 0) => ci.to_string(),
            (1, _) => mono,
            _ => format!("{ci}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

// Dense polynomials over GF(p), lowest degree first, trimmed.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm] as u64, p as u64 - 2, p as u64) as u32;
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = ((r[idx] as u64 + (p - factor) as u64 * m[i] as u64) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(r.into_iter().map(|x| x as u32).collect())
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let t = m.len() - 1;
    let mut r = poly_rem(&poly_mul(a, b, p), m, p);
    r.resize(t, 0);
    r
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or: f of degree t is irreducible iff gcd(X^{p^i} - X, f) = 1 for
/// all 1 <= i <= t/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let t = f.len() - 1;
    if t == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 0..t / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u32];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem(&poly_mul(&acc, &base, p), f, p);
            }
            base = poly_rem(&poly_mul(&base, &base, p), f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of degree `t` in encoding order
/// (`c_{t-1}` most significant, `c_0` least). Degree 1 gives `X`.
fn smallest_irreducible(p: u32, t: usize) -> Vec<u32> {
    if t == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(t as u32);
    for n in 0..total {
        let mut coeffs = vec![0u32; t + 1];
        let mut rest = n;
        for i in 0..t {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[t] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Irreducibility by exhaustive trial division: an independent check of
    /// the modulus scan.
    fn brute_irreducible(f: &[u32], p: u32) -> bool {
        let t = f.len() - 1;
        for deg in 1..=t / 2 {
            for n in 0..(p as u64).pow(deg as u32) {
                let mut g = vec![0u32; deg + 1];
                let mut rest = n;
                for c in g.iter_mut().take(deg) {
                    *c = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                g[deg] = 1;
                if poly_rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn deterministic_moduli() {
        assert_eq!(FieldSpec::new(3, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(FieldSpec::new(3, 3).unwrap().modulus(), &[1, 2, 0, 1]);
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus_string(), "X^2 + 1");
    }

    #[test]
    fn modulus_is_first_irreducible_in_scan_order() {
        for (p, t) in [(3u32, 2usize), (3, 3), (5, 2), (7, 2), (3, 4), (5, 3)] {
            let found = smallest_irreducible(p, t);
            assert!(brute_irreducible(&found, p));
            let total = (p as u64).pow(t as u32);
            for n in 0..total {
                let mut c = vec![0u32; t + 1];
                let mut rest = n;
                for i in 0..t {
                    c[i] = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                c[t] = 1;
                if c == found {
                    break;
                }
                assert!(!brute_irreducible(&c, p), "{c:?} precedes {found:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(matches!(FieldSpec::new(9, 1), Err(Error::CompositeP(9))));
        assert!(matches!(
            build_field(2, 3, FieldMode::Geometry),
            Err(Error::UnsupportedCharacteristic(2))
        ));
        assert!(build_field(2, 3, FieldMode::Arithmetic).is_ok());
    }

    #[test]
    fn gf9_products() {
        let f = FieldSpec::new(3, 2).unwrap();
        let x = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(x, x), Gf(2));
        assert_eq!(f.inv(Gf::ONE).unwrap(), Gf::ONE);
        assert!(matches!(f.inv(Gf::ZERO), Err(Error::DivisionByZero)));
        for a in f.elements() {
            assert_eq!(f.frobenius(f.frobenius(a)), a);
        }
    }

    #[test]
    fn enumeration_order() {
        let f = FieldSpec::new(3, 1).unwrap();
        let els: Vec<_> = enumerate_field(&f).iter().map(|e| e.value().0).collect();
        assert_eq!(els, vec![0, 1, 2]);
        let f9 = FieldSpec::new(3, 2).unwrap();
        let els = enumerate_field(&f9);
        assert_eq!(els.len(), 9);
        assert_eq!(els[0].value(), Gf::ZERO);
        assert_eq!(els[1].value(), Gf::ONE);
    }

    #[test]
    fn gf27_is_cyclic() {
        let f = FieldSpec::new(3, 3).unwrap();
        // Order by repeated multiplication, not through the log tables.
        let has_generator = f.nonzero_elements().any(|g| {
            let mut x = g;
            let mut n = 1;
            while x != Gf::ONE {
                x = f.mul(x, g);
                n += 1;
            }
            n == 26
        });
        assert!(has_generator);
    }

    #[test]
    fn fermat_and_cyclic_group_exhaustive() {
        for (p, t) in [(3u32, 1u32), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2)] {
            let f = FieldSpec::new(p, t).unwrap();
            let q = f.q() as u64;
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a);
                // independent of pow(): iterate frobenius t times
                let mut b = a;
                for _ in 0..t {
                    b = f.frobenius(b);
                }
                assert_eq!(b, a);
            }
            assert!(f.nonzero_elements().any(|a| f.order(a) == Some(q - 1)));
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let f25 = FieldSpec::new(5, 2).unwrap();
        let a = f9.element(Gf(4));
        let b = f25.element(Gf(4));
        assert!(matches!(
            field_arithmetic(&a, &b, FieldOp::Add),
            Err(Error::FieldMismatch { left: 9, right: 25 })
        ));
        let c = field_arithmetic(&a, &a, FieldOp::Mul).unwrap();
        assert_eq!(c.value(), f9.mul(Gf(4), Gf(4)));
    }

    #[test]
    fn lucas() {
        // C(10, 3) = 120 = 0 mod 3; C(7, 2) = 21 = 1 mod 5
        assert_eq!(binomial_mod_p(10, 3, 3), 0);
        assert_eq!(binomial_mod_p(7, 2, 5), 1);
        for n in 0..60u64 {
            for k in 0..=n {
                let mut exact = 1u128;
                for i in 0..k {
                    exact = exact * (n - i) as u128 / (i + 1) as u128;
                }
                for p in [3u32, 5, 7] {
                    assert_eq!(binomial_mod_p(n, k, p) as u128, exact % p as u128);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn fields() -> Vec<FieldSpec> {
            [(3, 1), (3, 2), (3, 3), (5, 2), (7, 1), (3, 5)]
                .iter()
                .map(|&(p, t)| FieldSpec::new(p, t).unwrap())
                .collect()
        }

        proptest! {
            #[test]
            fn ring_axioms(idx in 0usize..6, a in 0u32..243, b in 0u32..243, c in 0u32..243) {
                let f = &fields()[idx];
                let q = f.q();
                let (a, b, c) = (Gf(a % q), Gf(b % q), Gf(c % q));
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
                if !a.is_zero() {
                    prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
                }
            }

            #[test]
            fn frobenius_is_additive(idx in 0usize..6, a in 0u32..243, b in 0u32..243) {
                let f = &fields()[idx];
                let (a, b) = (Gf(a % f.q()), Gf(b % f.q()));
                prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }
}
