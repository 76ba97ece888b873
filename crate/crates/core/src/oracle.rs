//! Reference computations that avoid Gröbner bases entirely: dense linear
//! algebra on graded slices of `S/J` for Koszul (co)homology, and
//! combinatorics of variable covers for monomial ideals.

use std::collections::HashMap;

use crate::coeff::{Coeff, Field};
use crate::module::monomials_of_degree;
use crate::poly::{Monomial, Polynomial};

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Coeff>>) -> usize {
    let mut r = 0;
    let ncols = rows.first().map(|v| v.len()).unwrap_or(0);
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for k in c..ncols {
            rows[r][k] = rows[r][k].mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..ncols {
                    let t = rows[r][k].mul(&f);
                    rows[i][k] = rows[i][k].sub(&t);
                }
            }
        }
        r += 1;
    }
    r
}

/// `(S/J)_d` for a homogeneous `J`: the monomials of degree `d`, a reduced
/// echelon basis of `J_d`, and the non-pivot monomials as a basis of the
/// quotient.
struct Slice {
    index: HashMap<Monomial, usize>,
    pivots: Vec<(usize, Vec<Coeff>)>,
    free: Vec<usize>,
    monomials: Vec<Monomial>,
}

impl Slice {
    fn new(field: Field, nvars: usize, gens: &[Polynomial], d: i64) -> Slice {
        if d < 0 {
            return Slice { index: HashMap::new(), pivots: vec![], free: vec![], monomials: vec![] };
        }
        let monomials = monomials_of_degree(nvars, d as u32);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = monomials.len();
        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        for g in gens {
            let e = g.total_degree().unwrap() as i64;
            if e > d {
                continue;
            }
            for m in monomials_of_degree(nvars, (d - e) as u32) {
                let mut row = vec![field.zero(); n];
                for (t, c) in g.terms() {
                    row[index[&t.mul(&m)]] = c.clone();
                }
                rows.push(row);
            }
        }
        let mut pivots: Vec<(usize, Vec<Coeff>)> = Vec::new();
        for mut row in rows {
            for (p, prow) in &pivots {
                if !row[*p].is_zero() {
                    let f = row[*p].clone();
                    for k in 0..n {
                        row[k] = row[k].sub(&prow[k].mul(&f));
                    }
                }
            }
            if let Some(p) = (0..n).find(|&k| !row[k].is_zero()) {
                let inv = row[p].inv();
                for v in row.iter_mut() {
                    *v = v.mul(&inv);
                }
                for (_, prow) in pivots.iter_mut() {
                    if !prow[p].is_zero() {
                        let f = prow[p].clone();
                        for k in 0..n {
                            prow[k] = prow[k].sub(&row[k].mul(&f));
                        }
                    }
                }
                pivots.push((p, row));
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.0).collect();
        let free = (0..n).filter(|k| !pivot_cols.contains(k)).collect();
        Slice { index, pivots, free, monomials }
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates in the quotient basis of a polynomial of this degree.
    fn coords(&self, field: Field, p: &Polynomial) -> Vec<Coeff> {
        let mut v = vec![field.zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            let k = self.index[m];
            v[k] = v[k].add(c);
        }
        for (p, prow) in &self.pivots {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for k in 0..v.len() {
                    v[k] = v[k].sub(&prow[k].mul(&f));
                }
            }
        }
        self.free.iter().map(|&k| v[k].clone()).collect()
    }
}

/// Graded pieces of `S/J` over a polynomial ring `S`, for homogeneous `J`.
pub struct GradedQuotient {
    field: Field,
    nvars: usize,
    gens: Vec<Polynomial>,
    slices: HashMap<i64, Slice>,
}

impl GradedQuotient {
    pub fn new(field: Field, nvars: usize, gens: Vec<Polynomial>) -> Self {
        assert!(gens.iter().all(|g| g.is_homogeneous()), "oracle needs homogeneous relations");
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        GradedQuotient { field, nvars, gens, slices: HashMap::new() }
    }

    fn slice(&mut self, d: i64) -> &Slice {
        let (field, nvars) = (self.field, self.nvars);
        let gens = &self.gens;
        self.slices.entry(d).or_insert_with(|| Slice::new(field, nvars, gens, d))
    }

    pub fn dim(&mut self, d: i64) -> usize {
        self.slice(d).dim()
    }

    /// Basis monomials of `(S/J)_d`.
    fn basis(&mut self, d: i64) -> Vec<Monomial> {
        let s = self.slice(d);
        s.free.iter().map(|&k| s.monomials[k].clone()).collect()
    }

    fn coords(&mut self, d: i64, p: &Polynomial) -> Vec<Coeff> {
        let field = self.field;
        let s = self.slice(d);
        if p.is_zero() {
            return vec![field.zero(); s.dim()];
        }
        s.coords(field, p)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn degree_of(f: &[Polynomial], t: &[usize]) -> i64 {
    t.iter().map(|&i| f[i].total_degree().unwrap_or(0) as i64).sum()
}

/// Which component `(T, m)` of `⊕_T Q_{e_T}` the basis element `k` is.
fn blocks(q: &mut GradedQuotient, sets: &[Vec<usize>], deg: impl Fn(&[usize]) -> i64) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (s, t) in sets.iter().enumerate() {
        for m in q.basis(deg(t)) {
            out.push((s, m));
        }
    }
    out
}

fn term(f: &Polynomial, m: &Monomial, sign: bool) -> Polynomial {
    let c = if sign { f.field().one().neg() } else { f.field().one() };
    f.mul_term(m, &c)
}

/// Matrix (rows = source basis) of the Koszul differential
/// `K_k ⊗ Q -> K_{k-1} ⊗ Q` in internal degree `d`, with
/// `d(e_T) = Σ_p (-1)^p f_{t_p} e_{T \ t_p}`.
fn homology_matrix(q: &mut GradedQuotient, f: &[Polynomial], k: usize, d: i64) -> Vec<Vec<Coeff>> {
    let n = f.len();
    let src_sets = subsets(n, k);
    let dst_sets = subsets(n, k - 1);
    let src = blocks(q, &src_sets, |t| d - degree_of(f, t));
    let dst_offsets: Vec<usize> = {
        let mut off = 0;
        dst_sets
            .iter()
            .map(|t| {
                let o = off;
                off += q.dim(d - degree_of(f, t));
                o
            })
            .collect()
    };
    let dst_dim: usize = dst_sets.iter().map(|t| q.dim(d - degree_of(f, t))).sum();
    let mut rows = Vec::new();
    for (s, m) in src {
        let t = &src_sets[s];
        let mut row = vec![q.field.zero(); dst_dim];
        for (pos, &i) in t.iter().enumerate() {
            let rest: Vec<usize> = t.iter().copied().filter(|&x| x != i).collect();
            let target = dst_sets.iter().position(|u| *u == rest).unwrap();
            let e = d - degree_of(f, &rest);
            let p = term(&f[i], &m, pos % 2 == 1);
            let c = q.coords(e, &p);
            for (k, v) in c.into_iter().enumerate() {
                let slot = &mut row[dst_offsets[target] + k];
                *slot = slot.add(&v);
            }
        }
        rows.push(row);
    }
    rows
}

/// Matrix of `Hom(K_k, Q) -> Hom(K_{k+1}, Q)` in internal degree `d`.
fn cohomology_matrix(q: &mut GradedQuotient, f: &[Polynomial], k: usize, d: i64) -> Vec<Vec<Coeff>> {
    let n = f.len();
    let src_sets = subsets(n, k);
    let dst_sets = subsets(n, k + 1);
    let src = blocks(q, &src_sets, |t| d + degree_of(f, t));
    let mut dst_offsets = Vec::new();
    let mut off = 0;
    for u in &dst_sets {
        dst_offsets.push(off);
        off += q.dim(d + degree_of(f, u));
    }
    let mut rows = Vec::new();
    for (s, m) in src {
        let t = &src_sets[s];
        let mut row = vec![q.field.zero(); off];
        for (ui, u) in dst_sets.iter().enumerate() {
            if !t.iter().all(|x| u.contains(x)) {
                continue;
            }
            let (pos, &extra) = u.iter().enumerate().find(|(_, x)| !t.contains(x)).unwrap();
            let p = term(&f[extra], &m, pos % 2 == 1);
            let c = q.coords(d + degree_of(f, u), &p);
            for (k, v) in c.into_iter().enumerate() {
                let slot = &mut row[dst_offsets[ui] + k];
                *slot = slot.add(&v);
            }
        }
        rows.push(row);
    }
    rows
}

/// `dim_k H_i(f; S/J)_d` for each `d` in `degrees`.
pub fn koszul_homology_dims(q: &mut GradedQuotient, f: &[Polynomial], i: usize, degrees: impl Iterator<Item = i64>) -> Vec<usize> {
    let n = f.len();
    degrees
        .map(|d| {
            if i > n {
                return 0;
            }
            let dim: usize = subsets(n, i).iter().map(|t| q.dim(d - degree_of(f, t))).sum();
            let out = if i >= 1 { rank(homology_matrix(q, f, i, d)) } else { 0 };
            let inc = if i < n { rank(homology_matrix(q, f, i + 1, d)) } else { 0 };
            dim - out - inc
        })
        .collect()
}

/// `dim_k H^i(f; S/J)_d` for each `d` in `degrees`.
pub fn koszul_cohomology_dims(q: &mut GradedQuotient, f: &[Polynomial], i: usize, degrees: impl Iterator<Item = i64>) -> Vec<usize> {
    let n = f.len();
    degrees
        .map(|d| {
            if i > n {
                return 0;
            }
            let dim: usize = subsets(n, i).iter().map(|t| q.dim(d + degree_of(f, t))).sum();
            let out = if i < n { rank(cohomology_matrix(q, f, i, d)) } else { 0 };
            let inc = if i >= 1 { rank(cohomology_matrix(q, f, i - 1, d)) } else { 0 };
            dim - out - inc
        })
        .collect()
}

/// Variable subsets as bitmasks.
pub type VarSet = u32;

fn support(m: &Monomial) -> VarSet {
    m.0.iter().enumerate().filter(|(_, e)| **e > 0).fold(0, |acc, (i, _)| acc | (1 << i))
}

/// Minimal primes of a monomial ideal: minimal variable sets meeting the
/// support of every generator. The unit ideal has none.
pub fn monomial_minimal_primes(nvars: usize, gens: &[Monomial]) -> Vec<VarSet> {
    let supports: Vec<VarSet> = gens.iter().map(support).collect();
    if supports.contains(&0) {
        return vec![];
    }
    let covers: Vec<VarSet> = (0..(1u32 << nvars)).filter(|s| supports.iter().all(|g| g & s != 0)).collect();
    covers.iter().copied().filter(|&s| !covers.iter().any(|&t| t != s && t & s == t)).collect()
}

/// A monomial ideal lies in the prime generated by the variables in `p`.
fn monomial_ideal_in_prime(gens: &[Monomial], p: VarSet) -> bool {
    gens.iter().all(|g| support(g) & p != 0)
}

/// `⋃ V(J) ⊆ ⋃ V(I)` over monomial pieces, decided on minimal primes.
pub fn monomial_thomason_contains(nvars: usize, x: &[Vec<Monomial>], y: &[Vec<Monomial>]) -> bool {
    y.iter().all(|j| {
        monomial_minimal_primes(nvars, j).iter().all(|&p| x.iter().any(|i| monomial_ideal_in_prime(i, p)))
    })
}

/// Membership in a monomial ideal: every term is divisible by a generator.
pub fn monomial_member(f: &Polynomial, gens: &[Monomial]) -> bool {
    f.terms().iter().all(|(m, _)| gens.iter().any(|g| g.divides(m)))
}
