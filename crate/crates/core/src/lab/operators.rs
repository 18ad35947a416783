//! Shift operators and digit projectors in the group ring.
//!
//! With `g_mu: x_1 -> x_1 + mu y_1` and `h_mu: y_1 -> y_1 + mu x_1`,
//!
//! `g_l(j) = sum_{mu != 0} mu^{l p^j} g_{1/mu}`, and `h_l(j)` likewise.
//!
//! `g_l(j)` sends `x_1^a y_1^b * rest` to
//! `-C(a, l p^j) x_1^{a - l p^j} y_1^{b + l p^j} * rest`, and
//! `C(a, l p^j) = C(a_j, l) mod p` picks out the j-th digit of a.
//!
//! The digit projector for `(alpha, beta)` with `alpha + beta <= p - 1` is
//!
//! `-C(alpha + beta, beta)^{-1} g_beta h_{alpha + beta} g_alpha
//!  prod_{alpha + beta < gamma + delta < p} (1 - P_{gamma, delta})`,
//!
//! with `g_0 = h_0 = -1`. Pairs with `alpha + beta > p - 1` use the
//! complementary pair `(p - 1 - beta, p - 1 - alpha)`, which has the same
//! projector.

use std::collections::HashMap;

use super::group::{GroupElement, GroupRingElement, PlaneOperator};
use super::{FunctionOnV, Lab};
use crate::error::{check_range, Result};
use crate::field::{binomial_mod_p, Gf};

fn check_args(lab: &Lab, l: u32, lo: i64, j: u32) -> Result<()> {
    let p = lab.params().p;
    check_range("l", l as i64, lo, p as i64 - 1)?;
    check_range("j", j as i64, 0, lab.params().t as i64 - 1)?;
    Ok(())
}

fn shift_sum(lab: &Lab, l: u32, j: u32, mirror: bool) -> GroupRingElement {
    let fs = lab.field();
    let e = l as u64 * (lab.params().p as u64).pow(j);
    let terms = fs.nonzero_elements().map(|mu| {
        let inv = fs.inv(mu).expect("nonzero");
        let g = if mirror {
            GroupElement::shear_y(lab, inv)
        } else {
            GroupElement::shear_x(lab, inv)
        };
        (fs.pow(mu, e), g)
    });
    GroupRingElement::from_terms(lab.vars(), terms.collect::<Vec<_>>(), Some(lab))
}

/// `g_l(j)` for `1 <= l <= p - 1`.
pub fn shift_operator(lab: &Lab, l: u32, j: u32) -> Result<GroupRingElement> {
    check_args(lab, l, 1, j)?;
    Ok(shift_sum(lab, l, j, false))
}

/// `h_l(j)` for `1 <= l <= p - 1`.
pub fn mirror_shift_operator(lab: &Lab, l: u32, j: u32) -> Result<GroupRingElement> {
    check_args(lab, l, 1, j)?;
    Ok(shift_sum(lab, l, j, true))
}

/// The image of f under `g_l(j)` from the closed form.
pub fn shift_closed_form(lab: &Lab, l: u32, j: u32, f: &FunctionOnV) -> Result<FunctionOnV> {
    check_args(lab, l, 1, j)?;
    let p = lab.params().p;
    let step = l * p.pow(j);
    let n = lab.vars();
    let fs = lab.field();
    let mut out = lab.zero();
    for (e, &c) in f.terms() {
        let a = e[0];
        let binom = binomial_mod_p(a as u64, step as u64, p);
        if a < step || binom == 0 {
            continue;
        }
        let mut ex = e.clone();
        ex[0] = a - step;
        ex[n - 1] = lab.reduce_exp(e[n - 1] + step);
        lab.add_term(&mut out, ex, fs.neg(fs.mul(c, Gf(binom))));
    }
    Ok(out)
}

trait Algebra {
    type Op: Clone;
    fn scalar(&self, c: Gf) -> Self::Op;
    fn shift(&self, l: u32, mirror: bool) -> Self::Op;
    fn mul(&self, a: &Self::Op, b: &Self::Op) -> Self::Op;
    fn add(&self, a: &Self::Op, b: &Self::Op) -> Self::Op;
}

struct Ring<'a> {
    lab: &'a Lab,
    j: u32,
}

impl Algebra for Ring<'_> {
    type Op = GroupRingElement;

    fn scalar(&self, c: Gf) -> GroupRingElement {
        GroupRingElement::scalar(self.lab.vars(), c)
    }

    fn shift(&self, l: u32, mirror: bool) -> GroupRingElement {
        if l == 0 {
            self.scalar(self.lab.field().neg(Gf::ONE))
        } else {
            shift_sum(self.lab, l, self.j, mirror)
        }
    }

    fn mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        a.mul(self.lab, b)
    }

    fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        a.add(self.lab, b)
    }
}

struct Plane<'a> {
    lab: &'a Lab,
    j: u32,
}

impl Algebra for Plane<'_> {
    type Op = PlaneOperator;

    fn scalar(&self, c: Gf) -> PlaneOperator {
        PlaneOperator::scalar(self.lab, c)
    }

    fn shift(&self, l: u32, mirror: bool) -> PlaneOperator {
        if l == 0 {
            self.scalar(self.lab.field().neg(Gf::ONE))
        } else {
            PlaneOperator::from_group_ring(self.lab, &shift_sum(self.lab, l, self.j, mirror))
                .expect("shears stay in the plane")
        }
    }

    fn mul(&self, a: &PlaneOperator, b: &PlaneOperator) -> PlaneOperator {
        a.compose(self.lab, b)
    }

    fn add(&self, a: &PlaneOperator, b: &PlaneOperator) -> PlaneOperator {
        a.add(self.lab, b)
    }
}

fn projector<A: Algebra>(
    alg: &A,
    lab: &Lab,
    alpha: u32,
    beta: u32,
    memo: &mut HashMap<(u32, u32), A::Op>,
) -> A::Op {
    let top = lab.params().p - 1;
    let (alpha, beta) = if alpha + beta > top {
        (top - beta, top - alpha)
    } else {
        (alpha, beta)
    };
    if let Some(op) = memo.get(&(alpha, beta)) {
        return op.clone();
    }
    let fs = lab.field();
    let s = alpha + beta;
    let c = fs.neg(fs.inv(Gf(binomial_mod_p(s as u64, beta as u64, lab.params().p))).expect("s < p"));
    let mut op = alg.mul(
        &alg.scalar(c),
        &alg.mul(&alg.shift(beta, false), &alg.mul(&alg.shift(s, true), &alg.shift(alpha, false))),
    );
    let minus_one = alg.scalar(fs.neg(Gf::ONE));
    for total in s + 1..=top {
        for gamma in 0..=total {
            let inner = projector(alg, lab, gamma, total - gamma, memo);
            let factor = alg.add(&alg.scalar(Gf::ONE), &alg.mul(&minus_one, &inner));
            op = alg.mul(&op, &factor);
        }
    }
    memo.insert((alpha, beta), op.clone());
    op
}

fn check_pair(lab: &Lab, alpha: u32, beta: u32, j: u32) -> Result<()> {
    let top = lab.params().p as i64 - 1;
    check_range("alpha", alpha as i64, 0, top)?;
    check_range("beta", beta as i64, 0, top)?;
    check_range("j", j as i64, 0, lab.params().t as i64 - 1)
}

/// The projector onto monomials whose j-th digits of `(b(x_1), b(y_1))`
/// are `(alpha, beta)` or `(p-1-beta, p-1-alpha)`, as a plane operator.
pub fn digit_projector(lab: &Lab, alpha: u32, beta: u32, j: u32) -> Result<PlaneOperator> {
    check_pair(lab, alpha, beta, j)?;
    Ok(projector(&Plane { lab, j }, lab, alpha, beta, &mut HashMap::new()))
}

/// The same projector expanded into an explicit group ring element.
/// Its support can reach `|SL_2(q)|`, so keep q small.
pub fn digit_projector_group_ring(lab: &Lab, alpha: u32, beta: u32, j: u32) -> Result<GroupRingElement> {
    check_pair(lab, alpha, beta, j)?;
    Ok(projector(&Ring { lab, j }, lab, alpha, beta, &mut HashMap::new()))
}

/// Whether the projector for `(alpha, beta)` at digit j keeps the monomial
/// with exponents `e`.
pub fn projector_selects(lab: &Lab, alpha: u32, beta: u32, j: u32, e: &[u32]) -> bool {
    let p = lab.params().p;
    let n = lab.vars();
    let a = lab.params().digits(e[0] as u64)[j as usize];
    let b = lab.params().digits(e[n - 1] as u64)[j as usize];
    (a, b) == (alpha, beta) || (a, b) == (p - 1 - beta, p - 1 - alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Params;

    fn lab(m: u32, p: u32, t: u32) -> Lab {
        Lab::new(Params::new(m, p, t).unwrap()).unwrap()
    }

    #[test]
    fn shift_closed_form_small_cases() {
        let l = lab(2, 3, 1);
        let f = l.monomial(&[2, 1, 0, 0], Gf::ONE).unwrap();
        // -C(2,1) x1 y1
        let expect = l.monomial(&[1, 1, 0, 1], Gf(1)).unwrap();
        assert_eq!(shift_closed_form(&l, 1, 0, &f).unwrap(), expect);
        let g = shift_operator(&l, 1, 0).unwrap();
        assert_eq!(g.apply(&l, &f).unwrap(), expect);
        let none = l.monomial(&[0, 2, 2, 2], Gf::ONE).unwrap();
        assert!(shift_closed_form(&l, 1, 0, &none).unwrap().is_zero());
        assert!(shift_operator(&l, 0, 0).is_err());
        assert!(shift_operator(&l, 1, 1).is_err());
    }

    #[test]
    fn flattened_projectors_match_structured_ones() {
        let l = lab(2, 3, 2);
        for j in 0..2 {
            for (a, b) in [(0, 0), (1, 0), (1, 1), (2, 0), (0, 2)] {
                let ring = digit_projector_group_ring(&l, a, b, j).unwrap();
                assert_eq!(
                    ring.compile_plane(&l).unwrap(),
                    digit_projector(&l, a, b, j).unwrap(),
                    "({a},{b}) at digit {j}"
                );
            }
        }
    }

    #[test]
    fn projectors_select_digits_away_from_top_exponent() {
        let l = lab(2, 3, 2);
        for j in 0..2 {
            for a in 0..3 {
                for b in 0..3 {
                    let op = digit_projector(&l, a, b, j).unwrap();
                    for x in 0..8 {
                        for y in 0..8 {
                            let e = [x, 0, 0, y];
                            let img = op.image(x, y);
                            if projector_selects(&l, a, b, j, &e) {
                                assert_eq!(img.len(), 1);
                                assert_eq!(img.get(&(x, y)), Some(&Gf::ONE));
                            } else {
                                assert!(img.is_empty(), "({a},{b}) j={j} {e:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn top_exponent_cases_cannot_all_be_selected() {
        // 1 and delta_0 are Sp-fixed, so every group ring element scales
        // them by the same factor; selection would need different factors.
        let l = lab(2, 3, 2);
        let fs = l.field().clone();
        let mut delta = l.zero();
        for (a, b, c) in [(0, 0, 1), (8, 0, -1), (0, 8, -1), (8, 8, 1)] {
            l.add_term(&mut delta, vec![a, 0, 0, b], fs.from_int(c));
        }
        let x = shift_operator(&l, 1, 0).unwrap().mul(&l, &mirror_shift_operator(&l, 2, 1).unwrap());
        let s = x.terms().values().fold(Gf::ZERO, |acc, &c| fs.add(acc, c));
        assert_eq!(x.apply(&l, &l.one()).unwrap(), l.constant(s));
        assert_eq!(x.apply(&l, &delta).unwrap(), l.scale(&delta, s));
        for a in 0..3 {
            for b in 0..3 {
                let sel: Vec<bool> = [[0, 0], [8, 0], [0, 8], [8, 8]]
                    .iter()
                    .map(|&[x, y]| projector_selects(&l, a, b, 0, &[x, 0, 0, y]))
                    .collect();
                assert!(sel.iter().all(|&v| !v) || sel.iter().any(|&v| v != sel[0]), "({a},{b})");
            }
        }
    }
}
