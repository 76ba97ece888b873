//! Rings `k[x_1..x_n]/Q` and their finitely generated ideals.
//!
//! All Gröbner computation happens in the ambient polynomial ring; the
//! quotient relations `Q` are adjoined to every ideal and submodule.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};
use crate::gb::{self, Ctx, Vector};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

#[derive(Debug)]
struct RingData {
    field: Field,
    variables: Vec<String>,
    order: MonomialOrder,
    quotient: Vec<Polynomial>,
    quotient_basis: OnceLock<Vec<Polynomial>>,
}

/// A shared handle to a ring description. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.variables == other.0.variables
                && self.0.order == other.0.order
                && self.0.quotient == other.0.quotient)
    }
}
impl Eq for Ring {}

#[derive(Serialize)]
pub struct RingSummary {
    pub field: Field,
    pub variables: Vec<String>,
    pub order: MonomialOrder,
    pub quotient: Vec<String>,
}

impl Ring {
    pub fn new(field: Field, variables: Vec<String>, order: MonomialOrder) -> Result<Self> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Ring(Arc::new(RingData {
            field,
            variables,
            order,
            quotient: Vec::new(),
            quotient_basis: OnceLock::new(),
        })))
    }

    /// `QQ[vars]` with the default order.
    pub fn polynomial(vars: &[&str]) -> Self {
        Self::new(Field::Rationals, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::default())
            .expect("distinct variables")
    }

    /// The quotient of this ring by further relations.
    pub fn quotient(&self, relations: Vec<Polynomial>) -> Result<Self> {
        for r in &relations {
            self.check_poly(r)?;
        }
        let mut quotient = self.0.quotient.clone();
        quotient.extend(relations.into_iter().filter(|r| !r.is_zero()));
        Ok(Ring(Arc::new(RingData {
            field: self.0.field,
            variables: self.0.variables.clone(),
            order: self.0.order,
            quotient,
            quotient_basis: OnceLock::new(),
        })))
    }

    pub fn field(&self) -> Field {
        self.0.field
    }
    pub fn variables(&self) -> &[String] {
        &self.0.variables
    }
    pub fn nvars(&self) -> usize {
        self.0.variables.len()
    }
    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }
    pub fn relations(&self) -> &[Polynomial] {
        &self.0.quotient
    }
    pub fn is_polynomial_ring(&self) -> bool {
        self.0.quotient.is_empty()
    }

    pub fn ctx(&self) -> Ctx {
        Ctx { field: self.0.field, order: self.0.order, nvars: self.nvars() }
    }

    /// Reduced Gröbner basis of the quotient relations.
    pub fn quotient_basis(&self) -> &[Polynomial] {
        self.0.quotient_basis.get_or_init(|| {
            let gens = self.0.quotient.iter().map(|p| Vector::from_poly(p, 0)).collect();
            gb::groebner(gens, self.ctx()).iter().map(|v| v.to_column(0..1, self.ctx()).remove(0)).collect()
        })
    }

    /// True when the ring is the zero ring.
    pub fn is_zero_ring(&self) -> bool {
        self.quotient_basis().iter().any(|g| g.is_nonzero_constant())
    }

    /// Canonical representative modulo the quotient relations.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.0.quotient.is_empty() || p.is_zero() {
            return p.clone();
        }
        let basis: Vec<Vector> = self.quotient_basis().iter().map(|g| Vector::from_poly(g, 0)).collect();
        gb::normal_form(Vector::from_poly(p, 0), &basis, self.order()).to_column(0..1, self.ctx()).remove(0)
    }

    /// `q * e_j` for every quotient basis element and every component `j < rank`.
    pub fn relation_vectors(&self, rank: usize) -> Vec<Vector> {
        let mut out = Vec::new();
        for j in 0..rank {
            for q in self.quotient_basis() {
                out.push(Vector::from_poly(q, j));
            }
        }
        out
    }

    /// True when `k[x]/Q` is finite-dimensional over `k`: every variable has a
    /// pure power among the leading monomials of the quotient basis.
    pub fn is_finite_dimensional(&self) -> bool {
        let leads: Vec<&Monomial> = self.quotient_basis().iter().filter_map(|g| g.leading().map(|t| &t.0)).collect();
        (0..self.nvars()).all(|i| {
            leads.iter().any(|m| m.0.iter().enumerate().all(|(k, &e)| (k == i) == (e > 0)) || m.is_one())
        })
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field(), self.order(), self.nvars())
    }
    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.field(), self.order(), self.nvars())
    }
    pub fn constant(&self, c: Coeff) -> Polynomial {
        Polynomial::constant(self.field(), self.order(), self.nvars(), c)
    }
    pub fn int(&self, n: i64) -> Polynomial {
        self.constant(self.field().from_i64(n))
    }
    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field(), self.order(), self.nvars(), i)
    }
    pub fn var_named(&self, name: &str) -> Option<Polynomial> {
        self.0.variables.iter().position(|v| v == name).map(|i| self.var(i))
    }

    pub fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() || p.field() != self.field() || p.order() != self.order() {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.format(&self.0.variables)
    }

    /// Ring text in the DSL syntax, e.g. `QQ[x,y]/(x^2)`.
    pub fn describe(&self) -> String {
        let mut s = format!("{}[{}]", self.field(), self.0.variables.join(","));
        if !self.0.quotient.is_empty() {
            let rels: Vec<String> = self.0.quotient.iter().map(|p| self.format(p)).collect();
            s.push_str(&format!("/({})", rels.join(", ")));
        }
        s
    }

    pub fn summary(&self) -> RingSummary {
        RingSummary {
            field: self.field(),
            variables: self.0.variables.clone(),
            order: self.order(),
            quotient: self.0.quotient.iter().map(|p| self.format(p)).collect(),
        }
    }

    /// The same ring with one more variable appended (used for the
    /// auxiliary-variable radical test).
    fn with_extra_variable(&self) -> Ring {
        let n = self.nvars() + 1;
        let mut vars = self.0.variables.clone();
        let mut name = "t_".to_string();
        while vars.contains(&name) {
            name.push('_');
        }
        vars.push(name);
        Ring(Arc::new(RingData {
            field: self.field(),
            variables: vars,
            order: self.order(),
            quotient: self.0.quotient.iter().map(|p| p.reembed(self.order(), n)).collect(),
            quotient_basis: OnceLock::new(),
        }))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A finitely generated ideal with a lazily computed reduced Gröbner basis of
/// `I + Q`.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    basis: Arc<OnceLock<Vec<Polynomial>>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl Ideal {
    /// Generators that vanish modulo the quotient relations are dropped.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check_poly(g)?;
        }
        let generators = generators.into_iter().filter(|g| !ring.reduce(g).is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators, basis: Arc::new(OnceLock::new()) })
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::new(ring, vec![ring.one()]).expect("constant lives in the ring")
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal::new(ring, vec![]).expect("empty generator list")
    }

    /// The ideal generated by the named variables, in order.
    pub fn variables(ring: &Ring, names: &[&str]) -> Self {
        let gens = names.iter().map(|n| ring.var_named(n).expect("declared variable")).collect();
        Ideal::new(ring, gens).expect("variables live in the ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis of `I + Q`, computed once.
    pub fn groebner(&self) -> &[Polynomial] {
        self.basis.get_or_init(|| {
            let ctx = self.ring.ctx();
            let gens = self
                .generators
                .iter()
                .chain(self.ring.quotient_basis())
                .map(|p| Vector::from_poly(p, 0))
                .collect();
            gb::groebner(gens, ctx).iter().map(|v| v.to_column(0..1, ctx).remove(0)).collect()
        })
    }

    fn basis_vectors(&self) -> Vec<Vector> {
        self.groebner().iter().map(|g| Vector::from_poly(g, 0)).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ctx = self.ring.ctx();
        gb::normal_form(Vector::from_poly(f, 0), &self.basis_vectors(), ctx.order).to_column(0..1, ctx).remove(0)
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        self.ring.check_poly(f)?;
        Ok(self.normal_form(f).is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_nonzero_constant())
    }

    /// Zero in `R`, i.e. contained in the quotient relations.
    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// `f^n ∈ I` for some `n`, decided by `1 ∈ I + (1 - t f)` over `R[t]`.
    pub fn radical_member(&self, f: &Polynomial) -> Result<bool> {
        self.ring.check_poly(f)?;
        let big = self.ring.with_extra_variable();
        let n = big.nvars();
        let t = big.var(n - 1);
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.reembed(big.order(), n)).collect();
        gens.push(big.one().sub(&t.mul(&f.reembed(big.order(), n))));
        Ok(Ideal::new(&big, gens)?.is_unit())
    }

    /// Smallest `n <= max` with `f^n ∈ I`.
    pub fn nilpotency_witness(&self, f: &Polynomial, max: u32) -> Result<Option<u32>> {
        self.ring.check_poly(f)?;
        let mut p = f.clone();
        for n in 1..=max {
            if self.member(&p)? {
                return Ok(Some(n));
            }
            p = p.mul(f);
        }
        Ok(None)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        for g in &other.generators {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// `other ⊆ √self`.
    pub fn radical_contains(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        for g in &other.generators {
            if !self.radical_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.mul(b)))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `I^j` generated by all `j`-fold products of generators, without
    /// repetition (multisets of generator indices).
    pub fn power(&self, j: u32) -> Result<Ideal> {
        if j < 1 {
            return Err(Error::InvalidArgument("ideal power requires j >= 1".into()));
        }
        let n = self.generators.len();
        let mut gens = Vec::new();
        let mut idx = vec![0usize; j as usize];
        if n > 0 {
            loop {
                let mut p = self.ring.one();
                for &k in &idx {
                    p = p.mul(&self.generators[k]);
                }
                gens.push(p);
                // next non-decreasing index tuple
                let mut pos = idx.len();
                loop {
                    if pos == 0 {
                        return Ideal::new(&self.ring, gens);
                    }
                    pos -= 1;
                    if idx[pos] + 1 < n {
                        let v = idx[pos] + 1;
                        for slot in &mut idx[pos..] {
                            *slot = v;
                        }
                        break;
                    }
                }
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `(x_1^j, ..., x_n^j)` for the stored generators.
    pub fn generator_powers(&self, j: u32) -> Ideal {
        Ideal::new(&self.ring, self.generators.iter().map(|g| g.pow(j)).collect()).expect("same ring")
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn format(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| self.ring.format(g)).collect();
        format!("({})", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Ring {
        Ring::polynomial(&["x", "y"])
    }

    #[test]
    fn membership_basics() {
        let r = r2();
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert!(i.member(&x.mul(&x)).unwrap());
        assert!(!i.member(&y).unwrap());
        let z = Ideal::zero(&r);
        assert!(z.groebner().is_empty());
        assert!(!z.member(&r.one()).unwrap());
    }

    #[test]
    fn lex_groebner_and_member() {
        let r = Ring::new(Field::Rationals, vec!["x".into(), "y".into()], MonomialOrder::Lex).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.mul(&x).sub(&y), x.mul(&y).sub(&r.one())]).unwrap();
        let shown: Vec<String> = i.groebner().iter().map(|g| r.format(g)).collect();
        assert_eq!(shown, vec!["x - y^2", "y^3 - 1"]);
        assert!(i.member(&x.sub(&y.mul(&y))).unwrap());
        // both generator sets have the same normal forms on a few probes
        let j = Ideal::new(&r, vec![x.sub(&y.mul(&y)), y.pow(3).sub(&r.one())]).unwrap();
        assert!(i.same_ideal(&j).unwrap());
    }

    #[test]
    fn radical_membership() {
        let r = r2();
        let (x, y) = (r.var(0), r.var(1));
        let x2 = Ideal::new(&r, vec![x.mul(&x)]).unwrap();
        assert!(x2.radical_member(&x).unwrap());
        let ix = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert!(!ix.radical_member(&y).unwrap());
        let s = x.add(&y);
        let i = Ideal::new(&r, vec![s.pow(3), x.clone()]).unwrap();
        assert!(i.radical_member(&s).unwrap());
        assert_eq!(i.nilpotency_witness(&s, 8).unwrap(), Some(3));
    }

    #[test]
    fn ideal_operations() {
        let r = r2();
        let ix = Ideal::variables(&r, &["x"]);
        let iy = Ideal::variables(&r, &["y"]);
        assert_eq!(ix.sum(&iy).unwrap().format(), "(x, y)");
        assert_eq!(ix.product(&iy).unwrap().format(), "(x*y)");
        let m = Ideal::variables(&r, &["x", "y"]);
        assert_eq!(m.power(2).unwrap().format(), "(x^2, x*y, y^2)");
        assert!(m.power(0).is_err());
    }

    #[test]
    fn quotient_drops_vanishing_generators() {
        let r = Ring::polynomial(&["x"]);
        let x = r.var(0);
        let s = r.quotient(vec![x.mul(&x)]).unwrap();
        let i = Ideal::new(&s, vec![s.var(0).mul(&s.var(0)), s.var(0)]).unwrap();
        assert_eq!(i.generators().len(), 1);
        assert!(s.is_finite_dimensional());
        assert!(!r.is_finite_dimensional());
    }
}
