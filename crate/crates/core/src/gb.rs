//! Buchberger's algorithm for submodules of free modules `S^r` over a
//! polynomial ring, under a position-over-term order (lower component index
//! is larger). Ideals are the rank-one case.
//!
//! Syzygies and lifting coefficients are obtained from the same engine by
//! appending tag components: a generator `g_i` is encoded as `(g_i ; e_i)` with
//! the tag block ordered below the ambient block, so basis elements whose
//! leading term sits in the tag block have vanishing ambient part.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::ops::Range;

use crate::coeff::{Coeff, Field};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub field: Field,
    pub order: MonomialOrder,
    pub nvars: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VTerm {
    pub comp: usize,
    pub mon: Monomial,
    pub coeff: Coeff,
}

/// A sparse element of a free module, terms strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    terms: Vec<VTerm>,
}

fn cmp_pos(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => order.cmp(a.1, b.1),
        o => o,
    }
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[VTerm] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    /// Places `col[k]` in component `offset + k`.
    pub fn from_column(col: &[Polynomial], offset: usize) -> Vector {
        let mut terms = Vec::new();
        for (k, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(VTerm { comp: offset + k, mon: m.clone(), coeff: c.clone() });
            }
        }
        Vector { terms }
    }

    /// `e_comp` scaled by a polynomial.
    pub fn from_poly(p: &Polynomial, comp: usize) -> Vector {
        Vector {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| VTerm { comp, mon: m.clone(), coeff: c.clone() })
                .collect(),
        }
    }

    pub fn concat(mut self, other: Vector) -> Vector {
        debug_assert!(match (self.terms.last(), other.terms.first()) {
            (Some(a), Some(b)) => a.comp < b.comp,
            _ => true,
        });
        self.terms.extend(other.terms);
        self
    }

    /// Components in `range`, re-based to start at zero.
    pub fn to_column(&self, range: Range<usize>, ctx: Ctx) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); range.len()];
        for t in &self.terms {
            if range.contains(&t.comp) {
                buckets[t.comp - range.start].push((t.mon.clone(), t.coeff.clone()));
            }
        }
        buckets
            .into_iter()
            .map(|ts| Polynomial::from_sorted(ctx.field, ctx.order, ctx.nvars, ts))
            .collect()
    }

    pub fn is_zero_in(&self, range: Range<usize>) -> bool {
        !self.terms.iter().any(|t| range.contains(&t.comp))
    }

    fn monic(mut self) -> Vector {
        if let Some(l) = self.terms.first() {
            if !l.coeff.is_one() {
                let inv = l.coeff.inv();
                for t in &mut self.terms {
                    t.coeff = t.coeff.mul(&inv);
                }
            }
        }
        self
    }

    /// `self - c * m * other`.
    fn sub_scaled(&self, c: &Coeff, m: &Monomial, other: &Vector, order: MonomialOrder) -> Vector {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(usize, Monomial, Coeff)> =
            other.terms.iter().map(|t| (t.comp, t.mon.mul(m), t.coeff.mul(c))).collect();
        while i < self.terms.len() && j < shifted.len() {
            let a = &self.terms[i];
            let b = &shifted[j];
            match cmp_pos(order, (a.comp, &a.mon), (b.0, &b.1)) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(VTerm { comp: b.0, mon: b.1.clone(), coeff: b.2.neg() });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a.coeff.sub(&b.2);
                    if !v.is_zero() {
                        out.push(VTerm { comp: a.comp, mon: a.mon.clone(), coeff: v });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(shifted[j..].iter().map(|b| VTerm { comp: b.0, mon: b.1.clone(), coeff: b.2.neg() }));
        Vector { terms: out }
    }
}

fn find_reducer<'a>(basis: &'a [Vector], t: &VTerm) -> Option<&'a Vector> {
    basis.iter().find(|g| {
        let l = g.lead().expect("basis elements are nonzero");
        l.comp == t.comp && l.mon.divides(&t.mon)
    })
}

/// Reduces until the leading term is irreducible (or the vector vanishes).
pub fn top_reduce(mut v: Vector, basis: &[Vector], order: MonomialOrder) -> Vector {
    while let Some(t) = v.terms.first() {
        let Some(g) = find_reducer(basis, t) else { break };
        let l = g.lead().unwrap();
        let m = l.mon.quotient_of(&t.mon);
        let c = t.coeff.div(&l.coeff);
        v = v.sub_scaled(&c, &m, g, order);
    }
    v
}

/// Full normal form: no term of the result is divisible by a basis lead.
pub fn normal_form(mut v: Vector, basis: &[Vector], order: MonomialOrder) -> Vector {
    let mut done: Vec<VTerm> = Vec::new();
    loop {
        v = top_reduce(v, basis, order);
        if v.terms.is_empty() {
            break;
        }
        done.push(v.terms.remove(0));
    }
    Vector { terms: done }
}

/// Reduced Gröbner basis of the submodule generated by `gens`. The result is
/// sorted by decreasing leading term.
pub fn groebner(gens: Vec<Vector>, ctx: Ctx) -> Vec<Vector> {
    let order = ctx.order;
    let ideal_mode = gens.iter().all(|g| g.terms.iter().all(|t| t.comp == 0));
    let mut basis: Vec<Vector> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u32, u64, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut seq: u64 = 0;

    let mut push_element = |basis: &mut Vec<Vector>,
                            heap: &mut BinaryHeap<Reverse<(u32, u64, usize, usize)>>,
                            pending: &mut HashSet<(usize, usize)>,
                            v: Vector| {
        let v = v.monic();
        let new = basis.len();
        let lv = v.lead().unwrap().clone();
        for (k, g) in basis.iter().enumerate() {
            let lg = g.lead().unwrap();
            if lg.comp != lv.comp {
                continue;
            }
            let lcm = lg.mon.lcm(&lv.mon);
            heap.push(Reverse((lcm.degree(), seq, k, new)));
            seq += 1;
            pending.insert((k, new));
        }
        basis.push(v);
    };

    for g in gens {
        let r = top_reduce(g, &basis, order);
        if !r.is_zero() {
            push_element(&mut basis, &mut heap, &mut pending, r);
        }
    }

    while let Some(Reverse((_, _, i, j))) = heap.pop() {
        pending.remove(&(i, j));
            let li = basis[i].lead().unwrap().clone();
        let lj = basis[j].lead().unwrap().clone();
        if ideal_mode && li.mon.coprime(&lj.mon) {
            continue;
        }
        let lcm = li.mon.lcm(&lj.mon);
        let chain = basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let lk = g.lead().unwrap();
            lk.comp == li.comp
                && lk.mon.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let mi = li.mon.quotient_of(&lcm);
        let mj = lj.mon.quotient_of(&lcm);
        // S = mi * g_i - mj * g_j, both monic
        let si = Vector::zero().sub_scaled(&ctx.field.from_i64(-1), &mi, &basis[i], order);
        let s = si.sub_scaled(&ctx.field.one(), &mj, &basis[j], order);
        let r = top_reduce(s, &basis, order);
        if !r.is_zero() {
            push_element(&mut basis, &mut heap, &mut pending, r);
        }
    }

    interreduce(basis, order)
}

/// Minimalizes and tail-reduces a Gröbner basis.
fn interreduce(basis: Vec<Vector>, order: MonomialOrder) -> Vec<Vector> {
    let mut minimal: Vec<Vector> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lg = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            if k == idx {
                return false;
            }
            let lh = h.lead().unwrap();
            lh.comp == lg.comp && lh.mon.divides(&lg.mon) && (lh.mon != lg.mon || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let g = &minimal[idx];
        let head = Vector { terms: vec![g.terms[0].clone()] };
        let tail = Vector { terms: g.terms[1..].to_vec() };
        let others: Vec<Vector> =
            minimal.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, h)| h.clone()).collect();
        let tail = normal_form(tail, &others, order);
        // reduction only produces terms below the head
        reduced.push(Vector { terms: head.terms.into_iter().chain(tail.terms).collect() });
    }
    reduced.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        cmp_pos(order, (lb.comp, &lb.mon), (la.comp, &la.mon))
    });
    reduced
}

/// A Gröbner basis of `span(tracked) + span(untracked)` remembering, for the
/// tracked generators, how each basis element is expressed in them.
#[derive(Clone, Debug)]
pub struct TrackedBasis {
    ctx: Ctx,
    ambient: usize,
    ntracked: usize,
    basis: Vec<Vector>,
}

impl TrackedBasis {
    /// `tracked` and `untracked` are vectors in components `0..ambient`.
    pub fn new(tracked: &[Vector], untracked: &[Vector], ambient: usize, ctx: Ctx) -> Self {
        let mut gens = Vec::with_capacity(tracked.len() + untracked.len());
        let one = Polynomial::one(ctx.field, ctx.order, ctx.nvars);
        for (k, v) in tracked.iter().enumerate() {
            gens.push(v.clone().concat(Vector::from_poly(&one, ambient + k)));
        }
        gens.extend(untracked.iter().cloned());
        let basis = groebner(gens, ctx);
        TrackedBasis { ctx, ambient, ntracked: tracked.len(), basis }
    }

    /// Generators of all coefficient vectors `c` with `sum c_k tracked_k` in
    /// the span of the untracked vectors.
    pub fn syzygies(&self) -> Vec<Vec<Polynomial>> {
        let tags = self.ambient..self.ambient + self.ntracked;
        self.basis
            .iter()
            .filter(|g| g.lead().map(|l| l.comp >= self.ambient).unwrap_or(false))
            .map(|g| g.to_column(tags.clone(), self.ctx))
            .collect()
    }

    /// Coefficients `c` with `v - sum c_k tracked_k` in the untracked span.
    pub fn solve(&self, v: &Vector) -> Option<Vec<Polynomial>> {
        let r = top_reduce_ambient(v.clone(), &self.basis, self.ctx.order, self.ambient);
        if !r.is_zero_in(0..self.ambient) {
            return None;
        }
        let tags = self.ambient..self.ambient + self.ntracked;
        Some(r.to_column(tags, self.ctx).into_iter().map(|p| p.neg()).collect())
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.solve(v).is_some()
    }
}

/// Reduces while the leading term lies in the ambient block.
fn top_reduce_ambient(mut v: Vector, basis: &[Vector], order: MonomialOrder, ambient: usize) -> Vector {
    let mut kept: Vec<VTerm> = Vec::new();
    loop {
        v = top_reduce(v, basis, order);
        match v.terms.first() {
            Some(t) if t.comp < ambient => kept.push(v.terms.remove(0)),
            _ => break,
        }
    }
    if kept.is_empty() {
        v
    } else {
        let mut terms = kept;
        terms.extend(v.terms);
        Vector { terms }
    }
}

/// A plain (untracked) Gröbner basis of a submodule, for membership tests.
#[derive(Clone, Debug)]
pub struct SubmoduleBasis {
    order: MonomialOrder,
    basis: Vec<Vector>,
}

impl SubmoduleBasis {
    pub fn new(gens: Vec<Vector>, ctx: Ctx) -> Self {
        SubmoduleBasis { order: ctx.order, basis: groebner(gens, ctx) }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        top_reduce(v.clone(), &self.basis, self.order).is_zero()
    }

    pub fn reduce(&self, v: &Vector) -> Vector {
        normal_form(v.clone(), &self.basis, self.order)
    }

    pub fn elements(&self) -> &[Vector] {
        &self.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(nvars: usize, order: MonomialOrder) -> Ctx {
        Ctx { field: Field::Rationals, order, nvars }
    }

    fn poly(c: Ctx, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            c.field,
            c.order,
            c.nvars,
            terms.iter().map(|(k, e)| (Monomial::from_exponents(e), c.field.from_i64(*k))),
        )
    }

    #[test]
    fn lex_basis_of_hyperbola_and_parabola() {
        let c = ctx(2, MonomialOrder::Lex);
        let f = poly(c, &[(1, &[2, 0]), (-1, &[0, 1])]);
        let g = poly(c, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let gb = groebner(vec![Vector::from_poly(&f, 0), Vector::from_poly(&g, 0)], c);
        let names = vec!["x".to_string(), "y".to_string()];
        let shown: Vec<String> = gb.iter().map(|v| v.to_column(0..1, c)[0].format(&names)).collect();
        assert_eq!(shown, vec!["x - y^2", "y^3 - 1"]);
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let c = ctx(2, MonomialOrder::DegRevLex);
        let x = poly(c, &[(1, &[1, 0])]);
        let y = poly(c, &[(1, &[0, 1])]);
        let tb = TrackedBasis::new(&[Vector::from_poly(&x, 0), Vector::from_poly(&y, 0)], &[], 1, c);
        let syz = tb.syzygies();
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        assert!(x.mul(&s[0]).add(&y.mul(&s[1])).is_zero());
        assert!(!s[0].is_zero() && !s[1].is_zero());
    }

    #[test]
    fn solve_returns_cofactors() {
        let c = ctx(2, MonomialOrder::DegRevLex);
        let x = poly(c, &[(1, &[1, 0])]);
        let y = poly(c, &[(1, &[0, 1])]);
        let target = poly(c, &[(3, &[2, 1]), (-2, &[0, 3])]);
        let tb = TrackedBasis::new(&[Vector::from_poly(&x, 0), Vector::from_poly(&y, 0)], &[], 1, c);
        let co = tb.solve(&Vector::from_poly(&target, 0)).unwrap();
        assert_eq!(x.mul(&co[0]).add(&y.mul(&co[1])), target);
        assert!(tb.solve(&Vector::from_poly(&Polynomial::one(c.field, c.order, 2), 0)).is_none());
    }
}
