//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::coeff::{Coeff, Field};

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Drops or appends variables; appended exponents are zero.
    pub fn resized(&self, nvars: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(nvars, 0);
        Monomial(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => {
                let da = a.degree();
                let db = b.degree();
                if da != db {
                    return da.cmp(&db);
                }
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::DegRevLex => "degrevlex",
        }
    }
}

/// A polynomial whose terms are kept sorted by decreasing monomial order, with
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    order: MonomialOrder,
    nvars: usize,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(field: Field, order: MonomialOrder, nvars: usize) -> Self {
        Polynomial { field, order, nvars, terms: Vec::new() }
    }

    pub fn constant(field: Field, order: MonomialOrder, nvars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(field, order, nvars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn one(field: Field, order: MonomialOrder, nvars: usize) -> Self {
        Self::constant(field, order, nvars, field.one())
    }

    pub fn var(field: Field, order: MonomialOrder, nvars: usize, i: usize) -> Self {
        Self::monomial(field, order, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(field: Field, order: MonomialOrder, m: Monomial, c: Coeff) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(field, order, nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(
        field: Field,
        order: MonomialOrder,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { field, order, nvars, terms }
    }

    /// Assumes `terms` is already strictly decreasing and zero-free.
    pub(crate) fn from_sorted(field: Field, order: MonomialOrder, nvars: usize, terms: Vec<(Monomial, Coeff)>) -> Self {
        Polynomial { field, order, nvars, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }
    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    /// A nonzero constant, hence a unit in any nonzero ring over the field.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.field, self.order, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect();
        Self::from_sorted(self.field, self.order, self.nvars, terms)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.field, self.order, self.nvars);
        }
        // multiplication by a monomial preserves any monomial order
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect();
        Self::from_sorted(self.field, self.order, self.nvars, terms)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match self.order.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), if negate { b.1.neg() } else { b.1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a.1.sub(&b.1) } else { a.1.add(&b.1) };
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { c.neg() } else { c.clone() })),
        );
        Self::from_sorted(self.field, self.order, self.nvars, out)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field, self.order, self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let prods = self
            .terms
            .iter()
            .flat_map(|(m, a)| other.terms.iter().map(move |(n, b)| (m.mul(n), a.mul(b))));
        Self::from_terms(self.field, self.order, self.nvars, prods)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Self::one(self.field, self.order, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Re-sorts under another order or a different number of variables; new
    /// variables receive exponent zero, dropped ones must be absent.
    pub fn reembed(&self, order: MonomialOrder, nvars: usize) -> Polynomial {
        Self::from_terms(
            self.field,
            order,
            nvars,
            self.terms.iter().map(|(m, c)| (m.resized(nvars), c.clone())),
        )
    }

    /// Substitutes `x_i -> x_i^k` for every variable.
    pub fn power_substitute(&self, k: u32) -> Polynomial {
        Self::from_terms(self.field, self.order, self.nvars, self.terms.iter().map(|(m, c)| (m.pow(k), c.clone())))
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, names);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&mono),
                (false, true) => {
                    let _ = write!(s, "{abs}");
                }
                (false, false) => {
                    let _ = write!(s, "{abs}*{mono}");
                }
            }
        }
        s
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn degrevlex_ties_break_on_last_variable() {
        let o = MonomialOrder::DegRevLex;
        let xy = Monomial::from_exponents(&[1, 1, 0]);
        let xz = Monomial::from_exponents(&[1, 0, 1]);
        let y2 = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(o.cmp(&xy, &xz), Ordering::Greater);
        assert_eq!(o.cmp(&y2, &xz), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&xz, &y2), Ordering::Greater);
    }

    #[test]
    fn arithmetic_and_format() {
        let o = MonomialOrder::DegRevLex;
        let x = Polynomial::var(q(), o, 2, 0);
        let y = Polynomial::var(q(), o, 2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.format(&names), "x^2 - y^2");
        assert!(p.sub(&p).is_zero());
        assert!(p.is_homogeneous());
        let half = Polynomial::constant(q(), o, 2, Coeff::Q(num_rational::BigRational::new(1.into(), 2.into())));
        assert_eq!(half.mul(&x).format(&names), "1/2*x");
    }
}
