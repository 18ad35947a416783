//! Machine checks of the shift, projector and tau identities, recorded as a
//! ledger of named checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::{compositions, coords, digit_options, mulp, sign, split, symplectic_basis, tau};
use super::group::PlaneOperator;
use super::operators::{
    digit_projector, digit_projector_group_ring, mirror_shift_operator, projector_selects, shift_closed_form,
    shift_operator,
};
use super::{FunctionOnV, Lab};
use crate::dims::DimensionTable;
use crate::error::Result;
use crate::field::{binomial_mod_p, Gf};
use crate::rank::rank_dense;
use crate::types::Params;

use num_traits::ToPrimitive;

/// How hard to look.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Enumerate every monomial when `q^{2m}` is at most this.
    pub exhaustive_limit: u64,
    /// Random monomials drawn otherwise.
    pub samples: usize,
    pub seed: u64,
    /// Flatten projectors into the group ring when q is at most this.
    pub flatten_limit: u32,
    /// Largest per-type basis size checked for independence.
    pub basis_limit: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_limit: 6561,
            samples: 500,
            seed: 0x5eed,
            flatten_limit: 9,
            basis_limit: 2000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub skipped: u64,
    pub exhaustive: bool,
    /// At most a few failing cases, rendered for humans.
    pub counterexamples: Vec<String>,
}

impl CheckResult {
    fn new(name: &str, exhaustive: bool) -> Self {
        CheckResult {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            skipped: 0,
            exhaustive,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < 5 {
                self.counterexamples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaLedger {
    pub params: Params,
    pub checks: Vec<CheckResult>,
}

impl LemmaLedger {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn monomials(lab: &Lab, opts: &VerifyOptions) -> Result<(Vec<Vec<u32>>, bool)> {
    if lab.space_size() <= opts.exhaustive_limit {
        return Ok((lab.all_monomials()?, true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let q = lab.q();
    let out = (0..opts.samples)
        .map(|_| (0..lab.vars()).map(|_| rng.gen_range(0..q)).collect())
        .collect();
    Ok((out, false))
}

/// `h_l(j)` closed form: `-C(b, l p^j) x_1^{a + l p^j} y_1^{b - l p^j}`.
fn mirror_closed_form(lab: &Lab, l: u32, j: u32, f: &FunctionOnV) -> FunctionOnV {
    let p = lab.params().p;
    let step = l * p.pow(j);
    let n = lab.vars();
    let fs = lab.field();
    let mut out = lab.zero();
    for (e, &c) in f.terms() {
        let b = e[n - 1];
        let binom = binomial_mod_p(b as u64, step as u64, p);
        if b < step || binom == 0 {
            continue;
        }
        let mut ex = e.clone();
        ex[n - 1] = b - step;
        ex[0] = lab.reduce_exp(e[0] + step);
        lab.add_term(&mut out, ex, fs.neg(fs.mul(c, Gf(binom))));
    }
    out
}

fn check_shifts(lab: &Lab, monos: &[Vec<u32>], exhaustive: bool) -> Result<Vec<CheckResult>> {
    let params = *lab.params();
    let mut shift = CheckResult::new("shift-operator", exhaustive);
    let mut mirror = CheckResult::new("mirror-shift-operator", exhaustive);
    for j in 0..params.t {
        for l in 1..params.p {
            let g = shift_operator(lab, l, j)?;
            let h = mirror_shift_operator(lab, l, j)?;
            for e in monos {
                let f = lab.monomial(e, Gf::ONE)?;
                let direct = g.apply(lab, &f)?;
                shift.record(direct == shift_closed_form(lab, l, j, &f)?, || format!("l={l} j={j} e={e:?}"));
                let direct = h.apply(lab, &f)?;
                mirror.record(direct == mirror_closed_form(lab, l, j, &f), || format!("l={l} j={j} e={e:?}"));
            }
        }
    }
    Ok(vec![shift, mirror])
}

fn check_projectors(lab: &Lab, monos: &[Vec<u32>], exhaustive: bool, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let params = *lab.params();
    let p = params.p;
    let mut select = CheckResult::new("digit-projector-selection", exhaustive);
    let mut idem = CheckResult::new("digit-projector-idempotent", exhaustive);
    let mut ortho = CheckResult::new("digit-projector-orthogonal", exhaustive);
    let mut flat = CheckResult::new("digit-projector-group-ring", true);
    let mut interior = CheckResult::new("digit-projector-selection-interior", exhaustive);
    let mut fixed = CheckResult::new("group-ring-fixed-functions", true);
    let q = lab.q();
    let n = lab.vars();
    // 1 and delta_0 = (1 - x_1^{q-1})(1 - y_1^{q-1}) are Sp-fixed, so any
    // group ring element scales both by the sum of its coefficients.
    let one = lab.one();
    let mut delta = lab.zero();
    let top = q - 1;
    for (a, b, c) in [(0, 0, 1), (top, 0, -1), (0, top, -1), (top, top, 1)] {
        let mut e = vec![0; n];
        e[0] = a;
        e[n - 1] = b;
        lab.add_term(&mut delta, e, lab.field().from_int(c));
    }
    for j in 0..params.t {
        let mut ops: Vec<((u32, u32), PlaneOperator)> = Vec::new();
        for a in 0..p {
            for b in 0..p {
                ops.push(((a, b), digit_projector(lab, a, b, j)?));
            }
        }
        for ((a, b), op) in &ops {
            for e in monos {
                let f = lab.monomial(e, Gf::ONE)?;
                let out = op.apply(lab, &f)?;
                let keep = projector_selects(lab, *a, *b, j, e);
                let expect = if keep { f.clone() } else { lab.zero() };
                select.record(out == expect, || format!("({a},{b}) j={j} e={e:?}"));
                if e[0] < q - 1 && e[n - 1] < q - 1 {
                    interior.record(out == expect, || format!("({a},{b}) j={j} e={e:?}"));
                }
                idem.record(op.apply(lab, &out)? == out, || format!("({a},{b}) j={j} e={e:?}"));
            }
        }
        for ((a, b), op) in &ops {
            let s = op.apply(lab, &one)?.coeff(&vec![0; n]);
            let ok = op.apply(lab, &one)? == lab.scale(&one, s) && op.apply(lab, &delta)? == lab.scale(&delta, s);
            fixed.record(ok, || format!("({a},{b}) j={j}"));
        }
        // Distinct selection classes annihilate each other.
        for ((a, b), op) in &ops {
            for ((c, d), other) in &ops {
                let same = (c, d) == (a, b) || (*c, *d) == (p - 1 - b, p - 1 - a);
                if same {
                    continue;
                }
                let prod = op.compose(lab, other);
                let zero = (0..lab.q()).all(|x| (0..lab.q()).all(|y| prod.image(x, y).is_empty()));
                ortho.record(zero, || format!("({a},{b})({c},{d}) j={j}"));
            }
        }
        if lab.q() <= opts.flatten_limit {
            for ((a, b), op) in &ops {
                if a + b > p - 1 {
                    continue;
                }
                let ring = digit_projector_group_ring(lab, *a, *b, j)?;
                flat.record(ring.compile_plane(lab)? == *op, || format!("({a},{b}) j={j}"));
            }
        } else {
            flat.skipped += 1;
        }
    }
    Ok(vec![select, interior, idem, ortho, flat, fixed])
}

fn check_tau(params: &Params) -> Result<Vec<CheckResult>> {
    let (m, p) = (params.m, params.p);
    let mut inv = CheckResult::new("tau-involution", true);
    let mut eig = CheckResult::new("tau-eigenbasis", true);
    let mut count = CheckResult::new("tau-eigenspace-dimension", true);
    for e in compositions(2 * m as usize, p - 1, params.mid()) {
        let (a, b) = split(&e);
        let (c1, a1, b1) = tau(m, p, &a, &b)?;
        let (c2, a2, b2) = tau(m, p, &a1, &b1)?;
        inv.record((mulp(p, c1, c2), &a2, &b2) == (1, &a, &b), || format!("{a:?} {b:?}"));
    }
    let ev = sign(p, m % 2 == 1);
    let opts = digit_options(params, params.mid());
    for d in &opts {
        let terms = d.terms(m, p);
        let mut ok = true;
        for (e, c) in &terms {
            let (a, b) = split(e);
            let (tc, a1, b1) = tau(m, p, &a, &b)?;
            let target = coords(&a1, &b1);
            let lambda = if d.is_plus() { ev } else { (p - ev) % p };
            let have = terms.iter().find(|(x, _)| *x == target).map(|(_, k)| *k).unwrap_or(0);
            ok &= mulp(p, *c, tc) == mulp(p, lambda, have);
        }
        eig.record(ok, || format!("{d:?}"));
    }
    let table = DimensionTable::new(m, p)?;
    let plus = opts.iter().filter(|d| d.is_plus()).count() as u64;
    let total = opts.len() as u64;
    count.record(table.plus().to_u64() == Some(plus), || format!("S+ count {plus}"));
    count.record(table.get(params.mid() as i64).to_u64() == Some(total), || format!("total {total}"));
    Ok(vec![inv, eig, count])
}

fn check_basis(lab: &Lab, opts: &VerifyOptions) -> Result<CheckResult> {
    let params = *lab.params();
    let table = DimensionTable::new(params.m, params.p)?;
    let mut res = CheckResult::new("symplectic-basis", true);
    let t = params.t as usize;
    let top = params.top();
    let mut lambda = vec![0u32; t];
    loop {
        let expect: u64 = lambda
            .iter()
            .map(|&l| table.get(l as i64).to_u64().unwrap_or(u64::MAX))
            .fold(1u64, |a, b| a.saturating_mul(b));
        if expect > opts.basis_limit {
            res.skipped += 1;
            res.exhaustive = false;
        } else {
            let basis = symplectic_basis(&params, &lambda)?;
            let funcs: Vec<FunctionOnV> = basis.iter().map(|b| b.expand(lab)).collect();
            let mut monos: Vec<Vec<u32>> = funcs.iter().flat_map(|f| f.terms().keys().cloned()).collect();
            monos.sort();
            monos.dedup();
            let rows: Vec<Vec<u32>> = funcs
                .iter()
                .map(|f| {
                    let mut r = vec![0; monos.len()];
                    for (e, c) in f.terms() {
                        r[monos.binary_search(e).expect("collected above")] = c.0;
                    }
                    r
                })
                .collect();
            let rank = rank_dense(&rows, monos.len(), params.p)? as u64;
            let plus_ok = basis.iter().all(|b| {
                b.signed_type(&params).is_ok_and(|s| {
                    let mid = (0..t).filter(|&j| lambda[j] == params.mid()).fold(0u64, |a, j| a | 1 << j);
                    s.eps & !mid == 0
                })
            });
            let ok = basis.len() as u64 == expect && monos.len() as u64 == expect && rank == expect && plus_ok;
            res.record(ok, || format!("lambda={lambda:?}: {} functions, rank {rank}, expected {expect}", basis.len()));
        }
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(res);
            }
            i -= 1;
            lambda[i] += 1;
            if lambda[i] <= top {
                break;
            }
            lambda[i] = 0;
        }
    }
}

/// Groups of checks that can be run separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Shift,
    Projector,
    Tau,
    Basis,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Shift, Suite::Projector, Suite::Tau, Suite::Basis];
}

pub fn run_suites(params: Params, opts: &VerifyOptions, suites: &[Suite]) -> Result<LemmaLedger> {
    let lab = Lab::new(params)?;
    let (monos, exhaustive) = monomials(&lab, opts)?;
    let mut checks = Vec::new();
    for suite in suites {
        match suite {
            Suite::Shift => checks.extend(check_shifts(&lab, &monos, exhaustive)?),
            Suite::Projector => checks.extend(check_projectors(&lab, &monos, exhaustive, opts)?),
            Suite::Tau => checks.extend(check_tau(&params)?),
            Suite::Basis => checks.push(check_basis(&lab, opts)?),
        }
    }
    Ok(LemmaLedger { params, checks })
}

/// Runs every check for (m, p, t).
pub fn verify_lemmas(params: Params, opts: &VerifyOptions) -> Result<LemmaLedger> {
    run_suites(params, opts, &Suite::ALL)
}
