//! Bounded complexes of finite free modules, homologically indexed:
//! `d_k: C_k -> C_{k-1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gb::{TrackedBasis, Vector};
use crate::matrix::{FreeMap, MatrixRecord};
use crate::module::{FPModule, Resolution, Subquotient, syzygies};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variance {
    /// `H_i(X ⊗ M)`.
    Tensor,
    /// `H^i(Hom(X, M))`.
    Hom,
}

#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d_{lo+k+1}`.
    diffs: Vec<FreeMap>,
    degrees: Option<Vec<Vec<i64>>>,
}

impl PartialEq for FreeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.ranks == other.ranks && self.diffs == other.diffs
    }
}

impl FreeComplex {
    /// Terms `C_lo .. C_{lo + ranks.len() - 1}` with `diffs[k] = d_{lo+k+1}`.
    /// Rejects mismatched shapes and `d ∘ d ≠ 0`.
    pub fn new(ring: &Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<FreeMap>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidArgument("a complex needs at least one term".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::Shape("expected one differential between each pair of terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::Shape(format!("differential d_{} has the wrong shape", lo + k as i64 + 1)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].compose(&diffs[k])?.is_zero() {
                return Err(Error::NotAComplex(lo + k as i64));
            }
        }
        Ok(FreeComplex { ring: ring.clone(), lo, ranks, diffs, degrees: None })
    }

    /// Attaches internal gradings of the terms, kept only when every
    /// differential is homogeneous of degree zero with respect to them.
    pub fn with_degrees(mut self, degrees: Option<Vec<Vec<i64>>>) -> Self {
        self.degrees = degrees.filter(|all| {
            all.len() == self.ranks.len()
                && all.iter().zip(&self.ranks).all(|(d, &r)| d.len() == r)
                && self.diffs.iter().enumerate().all(|(k, d)| {
                    d.column_degrees(&all[k])
                        .iter()
                        .zip(&all[k + 1])
                        .all(|(c, &want)| c.map(|c| c == want).unwrap_or(true))
                })
        });
        self
    }

    /// `R^rank` in degree `k`.
    pub fn single(ring: &Ring, rank: usize, k: i64) -> Self {
        FreeComplex { ring: ring.clone(), lo: k, ranks: vec![rank], diffs: vec![], degrees: Some(vec![vec![0; rank]]) }
    }

    /// `0 -> R --f--> R -> 0` in degrees 1, 0.
    pub fn two_term(ring: &Ring, f: &Polynomial) -> Self {
        let d = FreeMap::row_vector(ring, vec![ring.reduce(f)]);
        let degrees = if f.is_homogeneous() && crate::module::ring_is_graded(ring) {
            f.total_degree().map(|e| vec![vec![0], vec![e as i64]])
        } else {
            None
        };
        FreeComplex { ring: ring.clone(), lo: 0, ranks: vec![1, 1], diffs: vec![d], degrees }
    }

    pub fn from_resolution(res: &Resolution) -> Self {
        let ranks = res.ranks();
        let diffs = (1..ranks.len()).map(|k| res.differential(k)).collect();
        let degrees = (0..ranks.len()).map(|k| res.degrees(k)).collect::<Option<Vec<_>>>();
        FreeComplex { ring: res.ring().clone(), lo: 0, ranks, diffs, degrees }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.ranks[(k - self.lo) as usize]
        }
    }

    /// `d_k`, the zero map of the right shape outside the stored range.
    pub fn differential(&self, k: i64) -> FreeMap {
        if k > self.lo && k <= self.hi() {
            self.diffs[(k - self.lo - 1) as usize].clone()
        } else {
            FreeMap::zero(&self.ring, self.rank(k - 1), self.rank(k))
        }
    }

    pub fn term_degrees(&self, k: i64) -> Option<Vec<i64>> {
        let all = self.degrees.as_ref()?;
        if k < self.lo || k > self.hi() {
            return Some(vec![]);
        }
        Some(all[(k - self.lo) as usize].clone())
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    /// Total complex with `d(a ⊗ b) = d(a) ⊗ b + (-1)^{|a|} a ⊗ d(b)`. The
    /// summands `X_p ⊗ Y_q` of a total term are ordered by decreasing `p`,
    /// and `e_s ⊗ f_u` is indexed `s * rank(Y_q) + u` inside its summand.
    pub fn tensor(&self, other: &FreeComplex) -> Result<FreeComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // blocks[n] lists (p, q, offset)
        let blocks: Vec<Vec<(i64, i64, usize)>> = (lo..=hi)
            .map(|n| {
                let mut off = 0;
                let mut v = Vec::new();
                for p in (self.lo..=self.hi()).rev() {
                    let q = n - p;
                    if q < other.lo || q > other.hi() {
                        continue;
                    }
                    v.push((p, q, off));
                    off += self.rank(p) * other.rank(q);
                }
                v
            })
            .collect();
        let total = |n: i64| -> usize {
            blocks[(n - lo) as usize].iter().map(|&(p, q, _)| self.rank(p) * other.rank(q)).sum()
        };
        let find = |n: i64, p: i64| -> Option<usize> {
            blocks[(n - lo) as usize].iter().find(|b| b.0 == p).map(|b| b.2)
        };
        let ranks: Vec<usize> = (lo..=hi).map(total).collect();
        let mut diffs = Vec::new();
        for n in lo + 1..=hi {
            let mut m = FreeMap::zero(&self.ring, total(n - 1), total(n));
            for &(p, q, src) in &blocks[(n - lo) as usize] {
                let (rp, rq) = (self.rank(p), other.rank(q));
                if let Some(dst) = find(n - 1, p - 1) {
                    let dx = self.differential(p);
                    let rq_t = other.rank(q);
                    for s in 0..rp {
                        for t in 0..self.rank(p - 1) {
                            let e = dx.get(t, s);
                            if e.is_zero() {
                                continue;
                            }
                            for u in 0..rq {
                                m.set(dst + t * rq_t + u, src + s * rq + u, e.clone());
                            }
                        }
                    }
                }
                if let Some(dst) = find(n - 1, p) {
                    let dy = other.differential(q);
                    let rq1 = other.rank(q - 1);
                    let sign = if p.rem_euclid(2) == 1 { -1 } else { 1 };
                    for s in 0..rp {
                        for u in 0..rq {
                            for v in 0..rq1 {
                                let e = dy.get(v, u);
                                if e.is_zero() {
                                    continue;
                                }
                                let e = if sign < 0 { e.neg() } else { e.clone() };
                                m.set(dst + s * rq1 + v, src + s * rq + u, e);
                            }
                        }
                    }
                }
            }
            diffs.push(m);
        }
        let degrees = match (&self.degrees, &other.degrees) {
            (Some(_), Some(_)) => (lo..=hi)
                .map(|n| {
                    let mut d = Vec::new();
                    for &(p, q, _) in &blocks[(n - lo) as usize] {
                        let (a, b) = (self.term_degrees(p)?, other.term_degrees(q)?);
                        for x in &a {
                            for y in &b {
                                d.push(x + y);
                            }
                        }
                    }
                    Some(d)
                })
                .collect::<Option<Vec<_>>>(),
            _ => None,
        };
        Ok(FreeComplex::new(&self.ring, lo, ranks, diffs)?.with_degrees(degrees))
    }

    /// `Hom(X, R)` reindexed homologically: term `-k` is `C_k^*` and the
    /// differentials are transposes.
    pub fn dualize(&self) -> FreeComplex {
        let lo = -self.hi();
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        let diffs: Vec<FreeMap> = self.diffs.iter().rev().map(|d| d.transpose()).collect();
        let degrees = self
            .degrees
            .as_ref()
            .map(|all| all.iter().rev().map(|d| d.iter().map(|x| -x).collect()).collect());
        FreeComplex { ring: self.ring.clone(), lo, ranks, diffs, degrees }
    }

    /// `X_{≥n}` closed off by the corner `im d_n` in degree `n - 1`.
    pub fn truncate_geq(&self, n: i64) -> Truncation {
        let start = n.max(self.lo);
        let free = if start > self.hi() {
            FreeComplex::single(&self.ring, 0, n)
        } else {
            let ranks: Vec<usize> = (start..=self.hi()).map(|k| self.rank(k)).collect();
            let diffs = (start + 1..=self.hi()).map(|k| self.differential(k)).collect();
            let degrees = self
                .degrees
                .as_ref()
                .map(|_| (start..=self.hi()).map(|k| self.term_degrees(k).unwrap()).collect());
            FreeComplex { ring: self.ring.clone(), lo: start, ranks, diffs, degrees }
        };
        let dn = self.differential(n);
        let corner_pres = syzygies(&dn);
        let corner = FPModule::with_degrees(corner_pres, self.term_degrees(n));
        Truncation { n, free, corner }
    }

    /// `H_i(X ⊗ M)` or `H^i(Hom(X, M))`; zero outside the degree range.
    pub fn homology_with_coefficients(&self, m: &FPModule, i: i64, variance: Variance) -> Result<Subquotient> {
        if self.ring != *m.ring() {
            return Err(Error::RingMismatch);
        }
        let b = m.rank();
        let p = m.presentation();
        let ri = self.rank(i);
        match variance {
            Variance::Tensor => {
                let out = self.differential(i).kron_identity(b);
                let out_rel = p.identity_kron(self.rank(i - 1)).column_vectors();
                let inc = self.differential(i + 1).kron_identity(b);
                let in_rel = p.identity_kron(ri).column_vectors();
                let degrees = combine(self.term_degrees(i), m.degrees(), 1);
                Ok(Subquotient::homology(&self.ring, ri * b, Some(&out), &out_rel, Some(&inc), &in_rel, degrees.as_deref()))
            }
            Variance::Hom => {
                let out = self.differential(i + 1).transpose().kron_identity(b);
                let out_rel = p.identity_kron(self.rank(i + 1)).column_vectors();
                let inc = self.differential(i).transpose().kron_identity(b);
                let in_rel = p.identity_kron(ri).column_vectors();
                let degrees = combine(self.term_degrees(i), m.degrees(), -1);
                Ok(Subquotient::homology(&self.ring, ri * b, Some(&out), &out_rel, Some(&inc), &in_rel, degrees.as_deref()))
            }
        }
    }

    pub fn record(&self) -> ComplexRecord {
        ComplexRecord {
            degrees: (self.lo..=self.hi()).collect(),
            ranks: self.ranks.clone(),
            matrices: self.diffs.iter().map(MatrixRecord::from).collect(),
        }
    }
}

/// Generator degrees of `C_i ⊗ M` (`sign = 1`) or `Hom(C_i, M)` (`sign = -1`).
fn combine(term: Option<Vec<i64>>, module: Option<&[i64]>, sign: i64) -> Option<Vec<i64>> {
    let (t, m) = (term?, module?);
    Some(t.iter().flat_map(|a| m.iter().map(move |c| c + sign * a)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexRecord {
    pub degrees: Vec<i64>,
    pub ranks: Vec<usize>,
    pub matrices: Vec<MatrixRecord>,
}

/// `X_{≥n}`: the free terms of degree `≥ n` followed by `im d_n` in degree
/// `n - 1`, presented as the cokernel of the syzygies of `d_n`.
#[derive(Clone, Debug)]
pub struct Truncation {
    n: i64,
    free: FreeComplex,
    corner: FPModule,
}

impl Truncation {
    pub fn n(&self) -> i64 {
        self.n
    }
    pub fn free_part(&self) -> &FreeComplex {
        &self.free
    }
    pub fn corner(&self) -> &FPModule {
        &self.corner
    }

    /// `H_i(X_{≥n} ⊗ M)`. The corner tensored with `M` is presented by
    /// `[syz(d_n) ⊗ I | I ⊗ P_M]`, and `X_n ⊗ M` maps onto it identically.
    pub fn homology_tensor(&self, m: &FPModule, i: i64) -> Result<Subquotient> {
        let ring = self.free.ring();
        if ring != m.ring() {
            return Err(Error::RingMismatch);
        }
        let b = m.rank();
        if i < self.n - 1 {
            return Ok(Subquotient::homology(ring, 0, None, &[], None, &[], None));
        }
        let corner_rel: Vec<Vector> = {
            let mut v = self.corner.presentation().kron_identity(b).column_vectors();
            v.extend(m.presentation().identity_kron(self.corner.rank()).column_vectors());
            v
        };
        if i == self.n - 1 {
            let rn = self.free.rank(self.n);
            let onto = FreeMap::identity(ring, rn * b);
            return Ok(Subquotient::homology(ring, rn * b, None, &[], Some(&onto), &corner_rel, None));
        }
        if i == self.n {
            let ri = self.free.rank(i);
            let out = FreeMap::identity(ring, ri * b);
            let inc = self.free.differential(i + 1).kron_identity(b);
            let in_rel = m.presentation().identity_kron(ri).column_vectors();
            let degrees = combine(self.free.term_degrees(i), m.degrees(), 1);
            return Ok(Subquotient::homology(ring, ri * b, Some(&out), &corner_rel, Some(&inc), &in_rel, degrees.as_deref()));
        }
        self.free.homology_with_coefficients(m, i, Variance::Tensor)
    }
}

/// Maps `f_k: X_k -> Y_k` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    lo: i64,
    maps: Vec<FreeMap>,
}

impl ChainMap {
    /// `maps[k]` is `f_{lo + k}`; degrees outside are zero maps, and
    /// commutativity is checked only through the last supplied degree.
    pub fn new(source: FreeComplex, target: FreeComplex, lo: i64, maps: Vec<FreeMap>) -> Result<Self> {
        let cm = ChainMap { source, target, lo, maps };
        for (k, f) in cm.maps.iter().enumerate() {
            let d = cm.lo + k as i64;
            if f.rows() != cm.target.rank(d) || f.cols() != cm.source.rank(d) {
                return Err(Error::Shape(format!("chain map component {d} has the wrong shape")));
            }
        }
        let a = cm.source.lo.min(cm.target.lo);
        let b = cm.source.hi().max(cm.target.hi()).min(cm.lo + cm.maps.len() as i64 - 1);
        for k in a + 1..=b {
            let left = cm.target.differential(k).compose(&cm.component(k))?;
            let right = cm.component(k - 1).compose(&cm.source.differential(k))?;
            if !left_minus_right_zero(&left, &right) {
                return Err(Error::InvalidArgument(format!("chain map does not commute at degree {k}")));
            }
        }
        Ok(cm)
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }
    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn component(&self, k: i64) -> FreeMap {
        if k >= self.lo && ((k - self.lo) as usize) < self.maps.len() {
            self.maps[(k - self.lo) as usize].clone()
        } else {
            FreeMap::zero(self.source.ring(), self.target.rank(k), self.source.rank(k))
        }
    }

    /// `H_i(X ⊗ M) -> H_i(Y ⊗ M)` between the given homology objects.
    pub fn induced_tensor(&self, from: &Subquotient, to: &Subquotient, m: &FPModule, i: i64) -> Result<crate::module::ModuleMap> {
        from.induced_map(to, &self.component(i).kron_identity(m.rank()))
    }

    /// `H^i(Hom(Y, M)) -> H^i(Hom(X, M))` between the given homology objects.
    pub fn induced_hom(&self, from: &Subquotient, to: &Subquotient, m: &FPModule, i: i64) -> Result<crate::module::ModuleMap> {
        from.induced_map(to, &self.component(i).transpose().kron_identity(m.rank()))
    }
}

/// Extends `f0: X_0 -> P_0` to a chain map `X -> P` through degree `upto`,
/// solving `d^P_k f_k = f_{k-1} d^X_k` column by column. The source must
/// start in degree 0 and the image of `f0 ∘ d^X_1` must lie in `im d^P_1`.
pub fn lift_to_resolution(source: &FreeComplex, target: &Resolution, f0: FreeMap, upto: usize) -> Result<ChainMap> {
    let ring = source.ring().clone();
    let mut maps = vec![f0];
    for deg in 1..=upto {
        let d = target.differential(deg);
        let images = maps[deg - 1].compose(&source.differential(deg as i64))?;
        let tb = TrackedBasis::new(&d.column_vectors(), &ring.relation_vectors(d.rows()), d.rows(), ring.ctx());
        let mut cols = Vec::with_capacity(images.cols());
        for c in 0..images.cols() {
            let coeffs = tb.solve(&Vector::from_column(&images.column(c), 0)).ok_or(Error::LiftingFailure(deg))?;
            cols.push(coeffs.iter().map(|c| ring.reduce(c)).collect::<Vec<_>>());
        }
        maps.push(FreeMap::from_columns(&ring, target.rank(deg), &cols));
    }
    ChainMap::new(source.clone(), FreeComplex::from_resolution(target), 0, maps)
}

fn left_minus_right_zero(a: &FreeMap, b: &FreeMap) -> bool {
    (0..a.rows()).all(|r| (0..a.cols()).all(|c| a.ring().reduce(&a.get(r, c).sub(b.get(r, c))).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ideal;

    fn kxy() -> (Ring, FreeComplex) {
        let r = Ring::polynomial(&["x", "y"]);
        let k = FreeComplex::two_term(&r, &r.var(0)).tensor(&FreeComplex::two_term(&r, &r.var(1))).unwrap();
        (r, k)
    }

    #[test]
    fn koszul_signs() {
        let (r, k) = kxy();
        assert_eq!(k.ranks(), &[1, 2, 1]);
        assert_eq!(k.differential(1).to_strings(), vec![vec!["x", "y"]]);
        assert_eq!(k.differential(2).to_strings(), vec![vec!["-y"], vec!["x"]]);
        let kk = FreeComplex::two_term(&r, &r.var(0)).tensor(&FreeComplex::two_term(&r, &r.var(0))).unwrap();
        assert_eq!(kk.differential(2).to_strings(), vec![vec!["-x"], vec!["x"]]);
        let unit = k.tensor(&FreeComplex::single(&r, 1, 0)).unwrap();
        assert_eq!(unit, k);
        assert_eq!(k.term_degrees(2), Some(vec![2]));
    }

    #[test]
    fn rejects_non_complexes() {
        let r = Ring::polynomial(&["x"]);
        let x = FreeMap::row_vector(&r, vec![r.var(0)]);
        let err = FreeComplex::new(&r, 0, vec![1, 1, 1], vec![x.clone(), x]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex(1)));
    }

    #[test]
    fn duals() {
        let (_, k) = kxy();
        let d = k.dualize();
        assert_eq!((d.lo(), d.hi()), (-2, 0));
        assert_eq!(d.differential(0).to_strings(), vec![vec!["x"], vec!["y"]]);
        assert_eq!(d.differential(-1).to_strings(), vec![vec!["-y", "x"]]);
        assert_eq!(d.dualize(), k);
    }

    #[test]
    fn homology_examples() {
        let (r, k) = kxy();
        let rr = FPModule::free(&r, 1);
        let h0 = k.homology_with_coefficients(&rr, 0, Variance::Tensor).unwrap();
        assert!(h0.module().is_cyclic_iso(&Ideal::variables(&r, &["x", "y"])).unwrap());
        for i in [1, 2, 3, -1] {
            assert!(k.homology_with_coefficients(&rr, i, Variance::Tensor).unwrap().is_zero());
        }
        let zero = FPModule::zero(&r);
        assert!(k.homology_with_coefficients(&zero, 0, Variance::Tensor).unwrap().is_zero());

        let r1 = Ring::polynomial(&["x"]);
        let ix = Ideal::variables(&r1, &["x"]);
        let kx = FreeComplex::two_term(&r1, &r1.var(0));
        let h1 = kx.homology_with_coefficients(&FPModule::cyclic(&ix), 1, Variance::Hom).unwrap();
        assert!(h1.module().is_cyclic_iso(&ix).unwrap());
    }

    #[test]
    fn truncation() {
        let (r, k) = kxy();
        let t = k.truncate_geq(1);
        assert_eq!(t.free_part().ranks(), &[2, 1]);
        assert!(t.corner().is_cyclic_iso(&Ideal::zero(&r)).is_ok());
        let rr = FPModule::free(&r, 1);
        for i in -1..=3 {
            assert!(t.homology_tensor(&rr, i).unwrap().is_zero(), "degree {i}");
        }
        let same = k.truncate_geq(0);
        assert_eq!(same.free_part(), &k);
        assert!(same.corner().is_zero());
    }
}
