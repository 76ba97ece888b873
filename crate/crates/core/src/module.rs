//! Finitely presented modules, syzygies, partial free resolutions, Ext and Tor.
//!
//! A module is the cokernel of its presentation matrix. Every computation
//! adjoins the quotient relations `Q·e_j` of the ring implicitly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gb::{SubmoduleBasis, TrackedBasis, Vector};
use crate::matrix::{FreeMap, MatrixRecord};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{Ideal, Ring};

/// Default cap on resolution length.
pub const DEFAULT_RESOLUTION_LENGTH: usize = 8;

#[derive(Clone, Debug)]
pub struct FPModule {
    ring: Ring,
    presentation: FreeMap,
    degrees: Option<Vec<i64>>,
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}

/// Homogeneous quotient relations, so graded notions make sense.
pub fn ring_is_graded(ring: &Ring) -> bool {
    ring.relations().iter().all(|q| q.is_homogeneous())
}

impl FPModule {
    /// Cokernel of `presentation`; generator degrees are inferred when the
    /// presentation admits a grading.
    pub fn new(presentation: FreeMap) -> Self {
        let degrees = if ring_is_graded(presentation.ring()) { presentation.infer_row_degrees(None) } else { None };
        FPModule { ring: presentation.ring().clone(), presentation, degrees }
    }

    /// Cokernel with explicitly supplied generator degrees (checked).
    pub fn with_degrees(presentation: FreeMap, degrees: Option<Vec<i64>>) -> Self {
        let degrees = degrees.filter(|d| {
            d.len() == presentation.rows()
                && ring_is_graded(presentation.ring())
                && presentation.column_degrees(d).iter().all(|c| c.is_some())
        });
        FPModule { ring: presentation.ring().clone(), presentation, degrees }
    }

    pub fn free(ring: &Ring, rank: usize) -> Self {
        Self::with_degrees(FreeMap::zero(ring, rank, 0), Some(vec![0; rank]))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, 0)
    }

    /// `R/I`, presented by the generators of `I` followed by the quotient
    /// relations of the ring.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let ring = ideal.ring();
        let mut row: Vec<Polynomial> = ideal.generators().to_vec();
        row.extend(ring.relations().iter().cloned());
        Self::new(FreeMap::row_vector(ring, row))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn presentation(&self) -> &FreeMap {
        &self.presentation
    }
    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.presentation.rows()
    }
    pub fn degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }
    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    /// Presentation columns plus `Q·e_j`.
    pub fn relation_vectors(&self) -> Vec<Vector> {
        let mut rels = self.presentation.column_vectors();
        rels.extend(self.ring.relation_vectors(self.rank()));
        rels
    }

    pub fn relation_basis(&self) -> SubmoduleBasis {
        SubmoduleBasis::new(self.relation_vectors(), self.ring.ctx())
    }

    /// Every generator lies in the span of the relations.
    pub fn is_zero(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        let basis = self.relation_basis();
        let one = self.ring.one();
        (0..self.rank()).all(|j| basis.contains(&Vector::from_poly(&one, j)))
    }

    /// An isomorphic module with unit pivots eliminated.
    pub fn pruned(&self) -> FPModule {
        prune_presentation(&self.presentation, self.degrees.as_deref()).module
    }

    /// `M ⊗ N = coker [P_M ⊗ I | I ⊗ P_N]`, generators `u ⊗ v` indexed `u * b + v`.
    pub fn tensor(&self, other: &FPModule) -> Result<FPModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let b = other.rank();
        let left = self.presentation.kron_identity(b);
        let right = other.presentation.identity_kron(self.rank());
        let degrees = match (&self.degrees, &other.degrees) {
            (Some(a), Some(c)) => Some(a.iter().flat_map(|x| c.iter().map(move |y| x + y)).collect()),
            _ => None,
        };
        Ok(FPModule::with_degrees(left.hcat(&right)?, degrees))
    }

    /// Isomorphic to `R/I`: after pruning there is one generator and the
    /// relation entries generate `I + Q`.
    pub fn is_cyclic_iso(&self, ideal: &Ideal) -> Result<bool> {
        if self.ring != *ideal.ring() {
            return Err(Error::RingMismatch);
        }
        let p = self.pruned();
        match p.rank() {
            0 => Ok(ideal.is_unit()),
            1 => {
                let rel = Ideal::new(&self.ring, p.presentation.row(0))?;
                rel.same_ideal(ideal)
            }
            _ => Ok(false),
        }
    }

    /// `dim_k M_d` for `d` in `lo..=hi`, for graded modules.
    pub fn hilbert_function(&self, lo: i64, hi: i64) -> Option<Vec<usize>> {
        let degrees = self.degrees.as_ref()?;
        let basis = self.relation_basis();
        let leads: Vec<(usize, Monomial)> =
            basis.elements().iter().map(|v| v.lead().map(|t| (t.comp, t.mon.clone())).unwrap()).collect();
        let n = self.ring.nvars();
        Some(
            (lo..=hi)
                .map(|d| {
                    let mut count = 0;
                    for (j, &shift) in degrees.iter().enumerate() {
                        let e = d - shift;
                        if e < 0 {
                            continue;
                        }
                        for m in monomials_of_degree(n, e as u32) {
                            if !leads.iter().any(|(c, l)| *c == j && l.divides(&m)) {
                                count += 1;
                            }
                        }
                    }
                    count
                })
                .collect(),
        )
    }

    pub fn record(&self) -> ModuleRecord {
        ModuleRecord {
            generators: self.rank(),
            relations: MatrixRecord::from(&self.presentation),
            degrees: self.degrees.clone(),
            is_zero: self.is_zero(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleRecord {
    pub generators: usize,
    pub relations: MatrixRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i64>>,
    pub is_zero: bool,
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// decreasing lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Result of eliminating unit pivots from a presentation.
pub struct Pruned {
    pub module: FPModule,
    /// Original generator indices that survive, in order.
    pub kept: Vec<usize>,
    /// Rewrites original generator coordinates into the surviving ones
    /// (`kept.len() x original`).
    pub express: FreeMap,
}

/// Finds a unit entry, preferring the lowest column then row.
fn find_unit(m: &FreeMap) -> Option<(usize, usize)> {
    (0..m.cols()).find_map(|c| (0..m.rows()).find(|&r| m.get(r, c).is_nonzero_constant()).map(|r| (r, c)))
}

/// Clears row `r` of `m` using the unit in column `c`, then drops both.
fn eliminate(m: &FreeMap, r: usize, c: usize) -> FreeMap {
    let ring = m.ring().clone();
    let u_inv = m.get(r, c).constant_value().unwrap().inv();
    let pivot_col = m.column(c);
    let mut cols = Vec::new();
    for c2 in 0..m.cols() {
        if c2 == c {
            continue;
        }
        let f = m.get(r, c2).scale(&u_inv);
        let col: Vec<Polynomial> = (0..m.rows())
            .filter(|&r2| r2 != r)
            .map(|r2| ring.reduce(&m.get(r2, c2).sub(&f.mul(&pivot_col[r2]))))
            .collect();
        cols.push(col);
    }
    FreeMap::from_columns(&ring, m.rows() - 1, &cols).without_zero_columns()
}

pub fn prune_presentation(p: &FreeMap, degrees: Option<&[i64]>) -> Pruned {
    let ring = p.ring().clone();
    let mut cur = p.reduced().without_zero_columns();
    let mut kept: Vec<usize> = (0..p.rows()).collect();
    let mut express = FreeMap::identity(&ring, p.rows());
    while let Some((r, c)) = find_unit(&cur) {
        let u_inv = cur.get(r, c).constant_value().unwrap().inv();
        // g_r = -(1/u) * sum_{r' != r} cur[r'][c] g_r'
        let mut rows = Vec::new();
        for r2 in 0..cur.rows() {
            if r2 == r {
                continue;
            }
            let f = cur.get(r2, c).scale(&u_inv);
            rows.push(
                (0..express.cols())
                    .map(|o| ring.reduce(&express.get(r2, o).sub(&f.mul(express.get(r, o)))))
                    .collect::<Vec<_>>(),
            );
        }
        let ncols = express.cols();
        express = FreeMap::new(&ring, rows.len(), ncols, rows).expect("consistent shape");
        cur = eliminate(&cur, r, c);
        kept.remove(r);
    }
    let degrees = degrees.map(|d| kept.iter().map(|&k| d[k]).collect());
    Pruned { module: FPModule::with_degrees(cur, degrees), kept, express }
}

/// Generators of the kernel of `f` over `R`.
pub fn syzygies(f: &FreeMap) -> FreeMap {
    kernel_modulo(f, &[])
}

/// Generators of `{v : f v ∈ span(relations) + Q·R^rows}`.
pub fn kernel_modulo(f: &FreeMap, relations: &[Vector]) -> FreeMap {
    let ring = f.ring();
    if f.cols() == 0 {
        return FreeMap::zero(ring, 0, 0);
    }
    if f.rows() == 0 {
        return FreeMap::identity(ring, f.cols());
    }
    let mut untracked = relations.to_vec();
    untracked.extend(ring.relation_vectors(f.rows()));
    let tb = TrackedBasis::new(&f.column_vectors(), &untracked, f.rows(), ring.ctx());
    let cols: Vec<Vec<Polynomial>> =
        tb.syzygies().into_iter().map(|c| normalize_sign(c.iter().map(|p| ring.reduce(p)).collect())).collect();
    FreeMap::from_columns(ring, f.cols(), &cols).without_zero_columns()
}

/// Scales a column so its last nonzero entry has leading coefficient one.
fn normalize_sign(col: Vec<Polynomial>) -> Vec<Polynomial> {
    match col.iter().rev().find(|p| !p.is_zero()).and_then(|p| p.leading()).map(|(_, c)| c.clone()) {
        Some(c) if !c.is_one() => {
            let inv = c.inv();
            col.iter().map(|p| p.scale(&inv)).collect()
        }
        _ => col,
    }
}

/// A subquotient `Z / (Z ∩ B)` of a finitely generated ambient module,
/// together with the data needed to express ambient cycles in its generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    module: FPModule,
    generators: FreeMap,
    solver: TrackedBasis,
    express: FreeMap,
}

impl Subquotient {
    /// Homology at a term `C` of a sequence `A --inc--> C --out--> D` where
    /// each term is a quotient of a free module: `ker(out) / im(inc)`.
    /// `out_relations` and `in_relations` are the relations of `D` and `C`.
    pub fn homology(
        ring: &Ring,
        ambient: usize,
        out: Option<&FreeMap>,
        out_relations: &[Vector],
        inc: Option<&FreeMap>,
        in_relations: &[Vector],
        ambient_degrees: Option<&[i64]>,
    ) -> Subquotient {
        let cycles = match out {
            Some(out) if out.rows() > 0 => kernel_modulo(out, out_relations),
            _ => FreeMap::identity(ring, ambient),
        };
        Self::from_cycles(ring, ambient, cycles, inc, in_relations, ambient_degrees)
    }

    /// `span(cycles) / (span(cycles) ∩ (span(inc) + relations))`.
    pub fn from_cycles(
        ring: &Ring,
        ambient: usize,
        cycles: FreeMap,
        inc: Option<&FreeMap>,
        in_relations: &[Vector],
        ambient_degrees: Option<&[i64]>,
    ) -> Subquotient {
        let cycles = cycles.without_zero_columns();
        let mut boundaries = in_relations.to_vec();
        if let Some(inc) = inc {
            boundaries.extend(inc.column_vectors());
        }
        boundaries.extend(ring.relation_vectors(ambient));
        let solver = TrackedBasis::new(&cycles.column_vectors(), &boundaries, ambient, ring.ctx());
        let rels: Vec<Vec<Polynomial>> =
            solver.syzygies().into_iter().map(|c| c.iter().map(|p| ring.reduce(p)).collect()).collect();
        let presentation = FreeMap::from_columns(ring, cycles.cols(), &rels);
        let degrees = ambient_degrees
            .and_then(|d| cycles.column_degrees(d).into_iter().collect::<Option<Vec<i64>>>());
        let pruned = prune_presentation(&presentation, degrees.as_deref());
        Subquotient { module: pruned.module, generators: cycles.select_columns(&pruned.kept), solver, express: pruned.express }
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }
    pub fn into_module(self) -> FPModule {
        self.module
    }
    /// Ambient representatives of the module generators, as columns.
    pub fn generators(&self) -> &FreeMap {
        &self.generators
    }
    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    /// Coordinates of an ambient cycle in the module generators.
    pub fn solve(&self, v: &[Polynomial]) -> Option<Vec<Polynomial>> {
        let raw = self.solver.solve(&Vector::from_column(v, 0))?;
        Some(self.express.apply(&raw))
    }

    /// `Some(true)` when an ambient cycle represents zero, `None` when it is
    /// not a cycle.
    pub fn is_zero_element(&self, v: &[Polynomial]) -> Option<bool> {
        let coords = self.solve(v)?;
        Some(self.module.relation_basis().contains(&Vector::from_column(&coords, 0)))
    }

    /// The map on subquotients induced by an ambient map sending cycles to
    /// cycles and boundaries to boundaries.
    pub fn induced_map(&self, target: &Subquotient, ambient_map: &FreeMap) -> Result<ModuleMap> {
        let mut cols = Vec::with_capacity(self.generators.cols());
        for z in self.generators.columns() {
            let image = ambient_map.apply(&z);
            let coords = target
                .solve(&image)
                .ok_or_else(|| Error::InvalidArgument("ambient map does not preserve cycles".into()))?;
            cols.push(coords);
        }
        let matrix = FreeMap::from_columns(self.module.ring(), target.module.rank(), &cols);
        ModuleMap::new(self.module.clone(), target.module.clone(), matrix)
    }
}

/// A homomorphism of finitely presented modules given on generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: FPModule,
    target: FPModule,
    matrix: FreeMap,
}

impl ModuleMap {
    pub fn new(source: FPModule, target: FPModule, matrix: FreeMap) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Shape("module map matrix does not match generator counts".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }
    pub fn target(&self) -> &FPModule {
        &self.target
    }
    pub fn matrix(&self) -> &FreeMap {
        &self.matrix
    }

    /// Well defined: relations of the source map into relations of the target.
    pub fn is_well_defined(&self) -> bool {
        let basis = self.target.relation_basis();
        self.matrix
            .compose(self.source.presentation())
            .map(|m| m.column_vectors().iter().all(|v| basis.contains(v)))
            .unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        if self.matrix.cols() == 0 || self.matrix.rows() == 0 {
            return true;
        }
        let basis = self.target.relation_basis();
        self.matrix.column_vectors().iter().all(|v| basis.contains(v))
    }

    pub fn cokernel(&self) -> FPModule {
        let pres = self.matrix.hcat(self.target.presentation()).expect("row counts agree");
        FPModule::with_degrees(pres, self.target.degrees.clone())
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }

    /// Kernel generators as coordinate columns over the source generators.
    pub fn kernel_generators(&self) -> FreeMap {
        if self.target.rank() == 0 {
            return FreeMap::identity(self.source.ring(), self.source.rank());
        }
        kernel_modulo(&self.matrix, &self.target.presentation().column_vectors())
    }

    pub fn is_injective(&self) -> bool {
        let gens = self.kernel_generators();
        if gens.cols() == 0 {
            return true;
        }
        let basis = self.source.relation_basis();
        gens.column_vectors().iter().all(|v| basis.contains(v))
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(first.source.clone(), self.target.clone(), self.matrix.compose(&first.matrix)?)
    }
}

/// A free resolution `F_len -> ... -> F_1 -> F_0 -> M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Ring,
    f0_rank: usize,
    /// `maps[k]` is `d_{k+1}: F_{k+1} -> F_k`.
    maps: Vec<FreeMap>,
    degrees: Option<Vec<Vec<i64>>>,
    length: usize,
    finite: bool,
}

impl Resolution {
    /// Resolves `module` up to `length`, eliminating unit pivots (so graded
    /// inputs over a polynomial ring get minimal resolutions). With
    /// `keep_generators` the generators of `F_0` are left as presented.
    pub fn new(module: &FPModule, length: usize, keep_generators: bool) -> Resolution {
        let ring = module.ring().clone();
        let (mut d1, mut f0_degrees) = if keep_generators {
            (module.presentation().reduced().without_zero_columns(), module.degrees().map(|d| d.to_vec()))
        } else {
            let p = module.pruned();
            (p.presentation().clone(), p.degrees().map(|d| d.to_vec()))
        };
        if !keep_generators {
            f0_degrees = f0_degrees.filter(|d| d.len() == d1.rows());
        }
        let f0_rank = d1.rows();
        let mut maps: Vec<FreeMap> = Vec::new();
        let mut finite = false;
        if length == 0 {
            let degrees = f0_degrees.map(|d| vec![d]);
            return Resolution { ring, f0_rank, maps, degrees, length, finite: d1.cols() == 0 };
        }
        if d1.cols() == 0 {
            finite = true;
        }
        maps.push(std::mem::replace(&mut d1, FreeMap::zero(&ring, 0, 0)));
        // compute one level past `length` so the last kept map is pruned too
        let mut k = 1;
        while !finite && k <= length {
            let mut next = syzygies(&maps[k - 1]);
            while let Some((r, c)) = find_unit(&next) {
                next = eliminate(&next, r, c);
                let prev = &maps[k - 1];
                let keep: Vec<usize> = (0..prev.cols()).filter(|&j| j != r).collect();
                maps[k - 1] = prev.select_columns(&keep);
            }
            if next.cols() == 0 {
                finite = true;
            }
            maps.push(next);
            k += 1;
        }
        if maps.len() > length {
            maps.truncate(length);
        }
        while maps.last().map(|m| m.cols() == 0).unwrap_or(false) {
            maps.pop();
        }
        let degrees = f0_degrees.and_then(|d0| {
            if !ring_is_graded(&ring) {
                return None;
            }
            let mut all = vec![d0];
            for m in &maps {
                let next: Option<Vec<i64>> = m.column_degrees(all.last().unwrap()).into_iter().collect();
                all.push(next?);
            }
            Some(all)
        });
        Resolution { ring, f0_rank, maps, degrees, length, finite }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Requested length.
    pub fn length(&self) -> usize {
        self.length
    }

    /// True when some computed syzygy module vanished, so the resolution is
    /// complete and all later terms are zero.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn rank(&self, k: usize) -> usize {
        if k == 0 {
            self.f0_rank
        } else {
            self.maps.get(k - 1).map(|m| m.cols()).unwrap_or(0)
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.maps.len()).map(|k| self.rank(k)).collect()
    }

    /// `d_k: F_k -> F_{k-1}` for `k >= 1`.
    pub fn differential(&self, k: usize) -> FreeMap {
        match self.maps.get(k - 1) {
            Some(m) => m.clone(),
            None => FreeMap::zero(&self.ring, self.rank(k - 1), self.rank(k)),
        }
    }

    pub fn degrees(&self, k: usize) -> Option<Vec<i64>> {
        match &self.degrees {
            Some(all) => Some(all.get(k).cloned().unwrap_or_default()),
            None => None,
        }
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    /// Largest `k` with `F_k ≠ 0` (an upper bound on projective dimension,
    /// exact for minimal graded resolutions). `None` if not known to be finite.
    pub fn length_bound(&self) -> Option<usize> {
        if !self.finite {
            return None;
        }
        Some((0..=self.maps.len()).rev().find(|&k| self.rank(k) > 0).unwrap_or(0))
    }

    /// Terms `F_{i+1}, F_i, F_{i-1}` are available.
    fn check_index(&self, i: usize) -> Result<()> {
        if i + 1 > self.length && !self.finite {
            return Err(Error::ResolutionTooShort { needed: i, limit: self.length });
        }
        Ok(())
    }

    /// `Ext^i(M, N)` as the cohomology of `Hom(F, N)` at `i`.
    pub fn ext(&self, n: &FPModule, i: usize) -> Result<Subquotient> {
        if self.ring != *n.ring() {
            return Err(Error::RingMismatch);
        }
        self.check_index(i)?;
        let b = n.rank();
        let ri = self.rank(i);
        let out = self.differential(i + 1).transpose().kron_identity(b);
        let out_rel = n.presentation().identity_kron(self.rank(i + 1)).column_vectors();
        let inc = if i >= 1 { Some(self.differential(i).transpose().kron_identity(b)) } else { None };
        let in_rel = n.presentation().identity_kron(ri).column_vectors();
        let degrees = match (self.degrees(i), n.degrees()) {
            (Some(fd), Some(nd)) => Some(fd.iter().flat_map(|a| nd.iter().map(move |c| c - a)).collect::<Vec<_>>()),
            _ => None,
        };
        Ok(Subquotient::homology(&self.ring, ri * b, Some(&out), &out_rel, inc.as_ref(), &in_rel, degrees.as_deref()))
    }

    /// `Tor_i(M, N)` as the homology of `F ⊗ N` at `i`.
    pub fn tor(&self, n: &FPModule, i: usize) -> Result<Subquotient> {
        if self.ring != *n.ring() {
            return Err(Error::RingMismatch);
        }
        self.check_index(i)?;
        let b = n.rank();
        let ri = self.rank(i);
        let out = if i >= 1 { Some(self.differential(i).kron_identity(b)) } else { None };
        let out_rel = if i >= 1 { n.presentation().identity_kron(self.rank(i - 1)).column_vectors() } else { vec![] };
        let inc = self.differential(i + 1).kron_identity(b);
        let in_rel = n.presentation().identity_kron(ri).column_vectors();
        let degrees = match (self.degrees(i), n.degrees()) {
            (Some(fd), Some(nd)) => Some(fd.iter().flat_map(|a| nd.iter().map(move |c| a + c)).collect::<Vec<_>>()),
            _ => None,
        };
        Ok(Subquotient::homology(&self.ring, ri * b, out.as_ref(), &out_rel, Some(&inc), &in_rel, degrees.as_deref()))
    }
}

/// `Ext^i_R(M, N)` from a resolution of length `i + 1`; indices beyond
/// `limit - 1` are refused.
pub fn ext(m: &FPModule, n: &FPModule, i: usize, limit: usize) -> Result<Subquotient> {
    if i + 1 > limit {
        return Err(Error::ResolutionTooShort { needed: i, limit });
    }
    Resolution::new(m, i + 1, false).ext(n, i)
}

/// `Tor_i^R(M, N)` from a resolution of length `i + 1`.
pub fn tor(m: &FPModule, n: &FPModule, i: usize, limit: usize) -> Result<Subquotient> {
    if i + 1 > limit {
        return Err(Error::ResolutionTooShort { needed: i, limit });
    }
    Resolution::new(m, i + 1, false).tor(n, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Ring {
        Ring::polynomial(&["x", "y"])
    }

    #[test]
    fn cyclic_presentations() {
        let r = r2();
        let m = FPModule::cyclic(&Ideal::variables(&r, &["x", "y"]));
        assert_eq!(m.presentation().to_strings(), vec![vec!["x", "y"]]);
        let free = FPModule::cyclic(&Ideal::zero(&r));
        assert_eq!((free.rank(), free.presentation().cols()), (1, 0));
        let r1 = Ring::polynomial(&["x"]);
        let s = r1.quotient(vec![r1.var(0).pow(2)]).unwrap();
        let c = FPModule::cyclic(&Ideal::variables(&s, &["x"]));
        assert_eq!(c.presentation().to_strings(), vec![vec!["x", "x^2"]]);
        assert!(c.is_cyclic_iso(&Ideal::variables(&s, &["x"])).unwrap());
    }

    #[test]
    fn syzygies_of_examples() {
        let r = r2();
        let f = FreeMap::row_vector(&r, vec![r.var(0), r.var(1)]);
        let s = syzygies(&f);
        assert_eq!(s.cols(), 1);
        assert!(f.compose(&s).unwrap().is_zero());
        assert_eq!(s.column(0), vec![r.var(1).neg(), r.var(0)]);
        assert_eq!(syzygies(&FreeMap::identity(&r, 3)).cols(), 0);

        let r1 = Ring::polynomial(&["x"]);
        let q = r1.quotient(vec![r1.var(0).pow(2)]).unwrap();
        let s = syzygies(&FreeMap::row_vector(&q, vec![q.var(0)]));
        assert_eq!(s.to_strings(), vec![vec!["x"]]);
    }

    #[test]
    fn zero_tests() {
        let r = r2();
        assert!(FPModule::new(FreeMap::identity(&r, 2)).is_zero());
        assert!(!FPModule::cyclic(&Ideal::variables(&r, &["x"])).is_zero());
        let r1 = Ring::polynomial(&["x"]);
        let x = r1.var(0);
        assert!(FPModule::new(FreeMap::row_vector(&r1, vec![x.clone(), r1.one().sub(&x)])).is_zero());
    }

    #[test]
    fn resolutions_have_expected_shapes() {
        let r = r2();
        let rx = FPModule::cyclic(&Ideal::variables(&r, &["x"]));
        let res = Resolution::new(&rx, 2, false);
        assert_eq!(res.ranks(), vec![1, 1]);
        assert!(res.is_finite());
        let m = FPModule::cyclic(&Ideal::variables(&r, &["x", "y"]));
        let res = Resolution::new(&m, 3, false);
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert_eq!(res.length_bound(), Some(2));
        let free = FPModule::free(&r, 2);
        assert_eq!(Resolution::new(&free, 3, false).ranks(), vec![2]);
    }

    #[test]
    fn ext_and_tor_examples() {
        let r = r2();
        let ix = Ideal::variables(&r, &["x"]);
        let rx = FPModule::cyclic(&ix);
        let rr = FPModule::free(&r, 1);
        assert!(ext(&rx, &rr, 0, 8).unwrap().is_zero());
        let e1 = ext(&rx, &rr, 1, 8).unwrap();
        assert!(!e1.is_zero());
        assert!(e1.module().is_cyclic_iso(&ix).unwrap());
        assert!(ext(&rr, &rx, 1, 8).unwrap().is_zero());
        let t1 = tor(&rx, &rx, 1, 8).unwrap();
        assert!(t1.module().is_cyclic_iso(&ix).unwrap());
        assert!(tor(&rx, &rr, 1, 8).unwrap().is_zero());
        let t0 = tor(&rx, &FPModule::cyclic(&Ideal::variables(&r, &["y"])), 0, 8).unwrap();
        assert!(t0.module().is_cyclic_iso(&Ideal::variables(&r, &["x", "y"])).unwrap());
        assert!(matches!(ext(&rx, &rr, 8, 8), Err(Error::ResolutionTooShort { .. })));
    }
}
