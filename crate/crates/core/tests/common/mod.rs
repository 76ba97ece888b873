#![allow(dead_code)]

use proptest::prelude::*;
use tiltkit::matrix::FreeMap;
use tiltkit::module::{FPModule, ModuleMap};
use tiltkit::{Ideal, Monomial, Polynomial, Ring};

pub const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn ring(n: usize) -> Ring {
    Ring::polynomial(&NAMES[..n])
}

pub fn mono(r: &Ring, e: &[u32]) -> Polynomial {
    Polynomial::monomial(r.field(), r.order(), Monomial::from_exponents(e), r.field().one())
}

pub fn monomial_ideal(r: &Ring, gens: &[Vec<u32>]) -> Ideal {
    Ideal::new(r, gens.iter().map(|e| mono(r, e)).collect()).unwrap()
}

pub fn monomials(gens: &[Vec<u32>]) -> Vec<Monomial> {
    gens.iter().map(|e| Monomial::from_exponents(e)).collect()
}

/// A nonconstant exponent vector.
pub fn exponent(n: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, n).prop_filter("nonconstant", |e| e.iter().any(|&x| x > 0))
}

/// Generators of a monomial ideal in `n` variables.
pub fn monomial_gens(n: usize, max_gens: usize, max: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(exponent(n, max), 1..=max_gens)
}

/// `(n, generators)` with `n` in `1..=max_vars`.
pub fn sized_gens(max_vars: usize, max_gens: usize, max: u32) -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (1..=max_vars).prop_flat_map(move |n| (Just(n), monomial_gens(n, max_gens, max)))
}

/// Polynomials with small integer coefficients.
pub fn polynomial(n: usize, max_terms: usize, max: u32) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0..=max, n)), 0..=max_terms)
}

pub fn build_poly(r: &Ring, terms: &[(i64, Vec<u32>)]) -> Polynomial {
    terms.iter().fold(r.zero(), |acc, (c, e)| acc.add(&mono(r, e).scale(&r.field().from_i64(*c))))
}

pub fn sub_maps(a: &FreeMap, b: &FreeMap) -> FreeMap {
    let entries = (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j).sub(b.get(i, j))).collect()).collect();
    FreeMap::new(a.ring(), a.rows(), a.cols(), entries).unwrap()
}

/// Two module maps with the same source and target agree.
pub fn same_map(a: &ModuleMap, b: &ModuleMap) -> bool {
    let d = sub_maps(a.matrix(), b.matrix());
    ModuleMap::new(a.source().clone(), a.target().clone(), d).unwrap().is_zero()
}

pub fn cyclic(r: &Ring, gens: &[Vec<u32>]) -> FPModule {
    FPModule::cyclic(&monomial_ideal(r, gens))
}

/// `M ⊕ N` with the block diagonal presentation.
pub fn direct_sum(m: &FPModule, n: &FPModule) -> FPModule {
    let r = m.ring();
    let (a, b) = (m.presentation(), n.presentation());
    let rows = a.rows() + b.rows();
    let cols = a.cols() + b.cols();
    let mut entries = vec![vec![r.zero(); cols]; rows];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            entries[i][j] = a.get(i, j).clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            entries[a.rows() + i][a.cols() + j] = b.get(i, j).clone();
        }
    }
    let degrees = match (m.degrees(), n.degrees()) {
        (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
        _ => None,
    };
    FPModule::with_degrees(FreeMap::new(r, rows, cols, entries).unwrap(), degrees)
}
