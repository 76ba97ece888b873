//! Koszul complexes of generator systems, Koszul (co)homology, grade with
//! two independent certificates, the comparison map from Ext to Koszul
//! cohomology, and the modules `S_{I,k}`.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{Value, json};

use crate::complex::{ChainMap, FreeComplex, Variance, lift_to_resolution};
use crate::error::{Error, Result};
use crate::matrix::{FreeMap, MatrixRecord};
use crate::module::{FPModule, ModuleMap, Resolution, Subquotient};
use crate::poly::Polynomial;
use crate::ring::{Ideal, Ring};

/// The Koszul complex of an ordered generator list, with the subset of
/// generators labelling each basis element.
#[derive(Clone, Debug)]
pub struct KoszulData {
    ring: Ring,
    generators: Vec<Polynomial>,
    complex: FreeComplex,
    labels: Vec<Vec<Vec<usize>>>,
}

impl KoszulData {
    /// `K(x_1) ⊗ ... ⊗ K(x_n)` for the stored generators of `ideal`.
    pub fn new(ideal: &Ideal) -> Self {
        Self::from_generators(ideal.ring(), ideal.generators().to_vec())
    }

    /// Koszul complex of an explicit list; zero entries are kept.
    pub fn from_generators(ring: &Ring, generators: Vec<Polynomial>) -> Self {
        let mut complex = FreeComplex::single(ring, 1, 0);
        let mut labels: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
        for (j, g) in generators.iter().enumerate() {
            complex = complex.tensor(&FreeComplex::two_term(ring, g)).expect("same ring, d∘d = 0");
            // summands of degree n: (n, 0) then (n - 1, 1)
            let top = labels.len();
            let mut next = Vec::with_capacity(top + 1);
            for n in 0..=top {
                let mut v: Vec<Vec<usize>> = if n < top { labels[n].clone() } else { vec![] };
                if n >= 1 {
                    v.extend(labels[n - 1].iter().map(|s| {
                        let mut s = s.clone();
                        s.push(j);
                        s
                    }));
                }
                next.push(v);
            }
            labels = next;
        }
        KoszulData { ring: ring.clone(), generators, complex, labels }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }
    /// Generator subsets indexing the basis of `K_k`.
    pub fn labels(&self, k: usize) -> &[Vec<usize>] {
        self.labels.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }
    pub fn len(&self) -> usize {
        self.generators.len()
    }
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `H_i(x; M)`.
    pub fn homology(&self, m: &FPModule, i: usize) -> Result<Subquotient> {
        self.complex.homology_with_coefficients(m, i as i64, Variance::Tensor)
    }

    /// `H^i(x; M)`.
    pub fn cohomology(&self, m: &FPModule, i: usize) -> Result<Subquotient> {
        self.complex.homology_with_coefficients(m, i as i64, Variance::Hom)
    }

    /// Smallest `i ≤ upto` with `H^i(x; M) ≠ 0`.
    pub fn first_nonzero_cohomology(&self, m: &FPModule, upto: usize) -> Result<Option<usize>> {
        for i in 0..=upto {
            if !self.cohomology(m, i)?.is_zero() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

pub fn koszul_homology(ideal: &Ideal, m: &FPModule, i: usize) -> Result<Subquotient> {
    KoszulData::new(ideal).homology(m, i)
}

pub fn koszul_cohomology(ideal: &Ideal, m: &FPModule, i: usize) -> Result<Subquotient> {
    KoszulData::new(ideal).cohomology(m, i)
}

/// A single checked claim.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>, holds: bool) -> Self {
        Certificate { claim: claim.into(), holds, detail: None }
    }
    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<V: Serialize> {
    pub hypothesis_checked: bool,
    pub hypothesis_holds: bool,
    pub verdict: V,
    pub certificates: Vec<Certificate>,
}

/// A grade value, or the bound when every checked index vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradeValue {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for GradeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeValue::Exact(n) => write!(f, "{n}"),
            GradeValue::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl Serialize for GradeValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GradeValue::Exact(n) => s.serialize_u64(*n as u64),
            GradeValue::AtLeast(_) => s.serialize_str(&self.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradeReport {
    pub grade: GradeValue,
    pub bound: usize,
    pub koszul_side: GradeValue,
    pub ext_side: GradeValue,
    pub certificates: Vec<Certificate>,
}

/// Default bound for grade: one more than the number of generators, since
/// Koszul cohomology vanishes above that.
pub fn default_grade_bound(ideal: &Ideal) -> usize {
    ideal.generators().len() + 1
}

/// Grade of `I` on `M`, computed from Koszul cohomology and again from
/// `Ext^i(R/I, M)`; disagreement is an error.
pub fn grade(ideal: &Ideal, m: &FPModule, bound: usize) -> Result<GradeReport> {
    if bound < 1 {
        return Err(Error::InvalidArgument("grade bound must be at least 1".into()));
    }
    if ideal.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let k = KoszulData::new(ideal);
    let res = Resolution::new(&FPModule::cyclic(ideal), bound, false);
    let mut certificates = Vec::new();
    let mut koszul_side = None;
    let mut ext_side = None;
    for i in 0..bound {
        if koszul_side.is_none() {
            let zero = k.cohomology(m, i)?.is_zero();
            certificates.push(Certificate::new(format!("H^{i}(I; M) = 0"), zero));
            if !zero {
                koszul_side = Some(i);
            }
        }
        if ext_side.is_none() {
            let zero = res.ext(m, i)?.is_zero();
            certificates.push(Certificate::new(format!("Ext^{i}(R/I, M) = 0"), zero));
            if !zero {
                ext_side = Some(i);
            }
        }
        if koszul_side.is_some() && ext_side.is_some() {
            break;
        }
    }
    let value = |v: Option<usize>| v.map(GradeValue::Exact).unwrap_or(GradeValue::AtLeast(bound));
    let (ks, es) = (value(koszul_side), value(ext_side));
    if ks != es {
        return Err(Error::CertificateMismatch(format!("Koszul side gives {ks}, Ext side gives {es}")));
    }
    Ok(GradeReport { grade: ks, bound, koszul_side: ks, ext_side: es, certificates })
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceEntry {
    pub module: usize,
    pub first_nonzero_original: Option<usize>,
    pub first_nonzero_alternative: Option<usize>,
    pub agree: bool,
}

/// Compares `H^i(x; M) = 0 for i ≤ ℓ` between the stored generators of `I`
/// and `alt`, for each coefficient module.
pub fn generator_invariance(
    ideal: &Ideal,
    alt: &[Polynomial],
    ell: usize,
    modules: &[FPModule],
) -> Result<Report<Vec<InvarianceEntry>>> {
    let alt_ideal = Ideal::new(ideal.ring(), alt.to_vec())?;
    let same = ideal.same_ideal(&alt_ideal)?;
    if !same {
        return Err(Error::GeneratorMismatch);
    }
    let kx = KoszulData::new(ideal);
    let ky = KoszulData::from_generators(ideal.ring(), alt.iter().map(|p| ideal.ring().reduce(p)).collect());
    let mut entries = Vec::new();
    let mut certificates = vec![Certificate::new("alternative generators generate I", true)];
    for (idx, m) in modules.iter().enumerate() {
        let a = kx.first_nonzero_cohomology(m, ell)?;
        let b = ky.first_nonzero_cohomology(m, ell)?;
        let agree = a == b;
        certificates.push(Certificate::new(format!("vanishing ranges up to {ell} agree for module {idx}"), agree));
        entries.push(InvarianceEntry { module: idx, first_nonzero_original: a, first_nonzero_alternative: b, agree });
        if !agree {
            return Err(Error::CertificateMismatch(format!(
                "vanishing ranges up to {ell} differ for module {idx}: {a:?} vs {b:?}"
            )));
        }
    }
    Ok(Report { hypothesis_checked: true, hypothesis_holds: true, verdict: entries, certificates })
}

/// Lifts the identity of `R/I` to a chain map `K(I) -> P` into a resolution
/// of `R/I` whose `F_0` is `R`.
pub fn lift_koszul(k: &KoszulData, p: &Resolution, upto: usize) -> Result<ChainMap> {
    lift_to_resolution(k.complex(), p, FreeMap::identity(k.ring(), 1), upto)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonVerdict {
    pub n: usize,
    pub ext_generators: usize,
    pub koszul_generators: usize,
    pub map: MatrixRecord,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
}

/// The induced map `Ext^n(R/I, M) -> H^n(I; M)` together with an
/// isomorphism verdict. When `Ext^i(R/I, M) = 0` for `i < n` a
/// non-isomorphism is an error.
pub fn compare_ext_koszul(ideal: &Ideal, m: &FPModule, n: usize) -> Result<(Report<ComparisonVerdict>, ModuleMap)> {
    if ideal.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let k = KoszulData::new(ideal);
    let p = Resolution::new(&FPModule::cyclic(ideal), n + 1, true);
    let mut certificates = Vec::new();
    let mut hypothesis = true;
    for i in 0..n {
        let zero = p.ext(m, i)?.is_zero();
        certificates.push(Certificate::new(format!("Ext^{i}(R/I, M) = 0"), zero));
        hypothesis &= zero;
    }
    let phi = lift_koszul(&k, &p, n + 1)?;
    certificates.push(Certificate::new(format!("chain map K(I) -> P lifted through degree {}", n + 1), true));
    let ext = p.ext(m, n)?;
    let koz = k.cohomology(m, n)?;
    let map = phi.induced_hom(&ext, &koz, m, n as i64)?;
    let (injective, surjective) = (map.is_injective(), map.is_surjective());
    let iso = injective && surjective;
    certificates.push(Certificate::new("kernel of the comparison map is zero", injective));
    certificates.push(Certificate::new("cokernel of the comparison map is zero", surjective));
    if hypothesis && !iso {
        return Err(Error::CertificateMismatch(format!(
            "comparison map in degree {n} is not an isomorphism although lower Ext vanishes"
        )));
    }
    let verdict = ComparisonVerdict {
        n,
        ext_generators: ext.module().rank(),
        koszul_generators: koz.module().rank(),
        map: MatrixRecord::from(map.matrix()),
        injective,
        surjective,
        iso,
    };
    Ok((Report { hypothesis_checked: true, hypothesis_holds: hypothesis, verdict, certificates }, map))
}

/// `S_{I,k} = coker(d_k^*)` for the Koszul complex of the stored generators.
#[derive(Clone, Debug)]
pub struct SModule {
    pub ideal: Ideal,
    pub k: usize,
    pub module: FPModule,
}

pub fn s_module(ideal: &Ideal, k: usize) -> Result<SModule> {
    let n = ideal.generators().len();
    if k < 1 || k > n {
        return Err(Error::IndexOutOfRange { index: k as i64, lo: 1, hi: n as i64 });
    }
    let kd = KoszulData::new(ideal);
    let c = kd.complex();
    let pres = c.differential(k as i64).transpose();
    let degrees = c.term_degrees(k as i64).map(|d| d.iter().map(|x| -x).collect());
    Ok(SModule { ideal: ideal.clone(), k, module: FPModule::with_degrees(pres, degrees) })
}

/// Projective dimension: exact for graded resolutions over a polynomial
/// ring, an interval otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum PdValue {
    Exact { value: usize },
    Interval { lower: usize, upper: Option<usize> },
}

#[derive(Clone, Debug, Serialize)]
pub struct SModuleVerdict {
    pub n: usize,
    pub tail_exact: Option<bool>,
    pub resolution_ranks: Vec<usize>,
    pub pd: Option<PdValue>,
    pub pd_equals_n: Option<bool>,
    pub status: &'static str,
}

/// Checks the hypothesis `Ext^i(R/I, R) = 0` for `i < n`, then the exactness
/// of the dualized Koszul tail `F_0^* -> ... -> F_n^*` and the projective
/// dimension of `S_{I,n}`.
pub fn s_module_pd_check(ideal: &Ideal, n: usize, resolution_limit: usize) -> Result<Report<SModuleVerdict>> {
    let s = s_module(ideal, n)?;
    let ring = ideal.ring();
    let rr = FPModule::free(ring, 1);
    let p = Resolution::new(&FPModule::cyclic(ideal), n, false);
    let mut certificates = Vec::new();
    let mut hypothesis = true;
    for i in 0..n {
        let zero = p.ext(&rr, i)?.is_zero();
        certificates.push(Certificate::new(format!("Ext^{i}(R/I, R) = 0"), zero));
        hypothesis &= zero;
    }
    if !hypothesis {
        let verdict = SModuleVerdict {
            n,
            tail_exact: None,
            resolution_ranks: vec![],
            pd: None,
            pd_equals_n: None,
            status: "hypothesis fails",
        };
        return Ok(Report { hypothesis_checked: true, hypothesis_holds: false, verdict, certificates });
    }
    let kd = KoszulData::new(ideal);
    let dual = kd.complex().dualize();
    // cohomology of Hom(K, R) at 0..n-1 is the homology of the dual tail
    let mut exact = true;
    for i in 0..n {
        let zero = dual.homology_with_coefficients(&rr, -(i as i64), Variance::Tensor)?.is_zero();
        certificates.push(Certificate::new(format!("dualized Koszul tail exact at F_{i}^*"), zero));
        exact &= zero;
    }
    let limit = resolution_limit.max(n + 1);
    let res = Resolution::new(&s.module, limit, false);
    let minimal = res.is_graded() && ring.is_polynomial_ring();
    let pd = match res.length_bound() {
        Some(len) if minimal => PdValue::Exact { value: len },
        upper => {
            let top = upper.unwrap_or(limit.saturating_sub(1));
            let lower = (0..=top.min(limit - 1)).rev().find(|&i| res.ext(&rr, i).map(|e| !e.is_zero()).unwrap_or(false));
            PdValue::Interval { lower: lower.unwrap_or(0), upper }
        }
    };
    let pd_equals_n = match &pd {
        PdValue::Exact { value } => Some(*value == n),
        PdValue::Interval { lower, upper } => {
            if *lower > n || upper.map(|u| u < n).unwrap_or(false) {
                Some(false)
            } else if *lower == n && *upper == Some(n) {
                Some(true)
            } else {
                None
            }
        }
    };
    certificates.push(
        Certificate::new(format!("pd S_{{I,{n}}} = {n}"), pd_equals_n == Some(true))
            .with_detail(json!({ "ranks": res.ranks(), "minimal": minimal })),
    );
    let verdict = SModuleVerdict {
        n,
        tail_exact: Some(exact),
        resolution_ranks: res.ranks(),
        pd: Some(pd),
        pd_equals_n,
        status: if exact && pd_equals_n == Some(true) { "certified" } else { "not certified" },
    };
    Ok(Report { hypothesis_checked: true, hypothesis_holds: true, verdict, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(names: &[&str]) -> Ring {
        Ring::polynomial(names)
    }

    #[test]
    fn koszul_shapes_and_labels() {
        let q = r(&["x"]);
        let k = KoszulData::new(&Ideal::variables(&q, &["x"]));
        assert_eq!(k.complex().ranks(), &[1, 1]);
        let q = r(&["x", "y", "z"]);
        let k = KoszulData::new(&Ideal::variables(&q, &["x", "y", "z"]));
        assert_eq!(k.complex().ranks(), &[1, 3, 3, 1]);
        assert_eq!(k.labels(1), &[vec![0], vec![1], vec![2]]);
        assert_eq!(k.labels(2), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        // d_1 sends e_{i} to x_i
        let d1 = k.complex().differential(1);
        for (c, s) in k.labels(1).iter().enumerate() {
            assert_eq!(d1.get(0, c), &q.var(s[0]));
        }
        let unit = KoszulData::new(&Ideal::unit(&q));
        let rr = FPModule::free(&q, 1);
        for i in 0..=1 {
            assert!(unit.homology(&rr, i).unwrap().is_zero());
        }
    }

    #[test]
    fn cohomology_examples() {
        let q = r(&["x", "y"]);
        let i = Ideal::variables(&q, &["x", "y"]);
        let rr = FPModule::free(&q, 1);
        let k = KoszulData::new(&i);
        assert!(k.cohomology(&rr, 0).unwrap().is_zero());
        assert!(k.cohomology(&rr, 1).unwrap().is_zero());
        assert!(k.cohomology(&rr, 2).unwrap().module().is_cyclic_iso(&i).unwrap());
        let mx = FPModule::cyclic(&Ideal::variables(&q, &["x"]));
        assert!(k.cohomology(&mx, 0).unwrap().is_zero());
        let h1 = k.cohomology(&mx, 1).unwrap();
        assert_eq!(h1.module().hilbert_function(-3, 3).unwrap().iter().sum::<usize>(), 1);
        assert!(k.cohomology(&mx, 2).unwrap().module().is_cyclic_iso(&i).unwrap());
    }

    #[test]
    fn generators_annihilate_homology() {
        let q = r(&["x", "y"]);
        let (x, y) = (q.var(0), q.var(1));
        let i = Ideal::new(&q, vec![x.mul(&y), y.pow(2)]).unwrap();
        let m = FPModule::cyclic(&Ideal::new(&q, vec![x.pow(2)]).unwrap());
        let k = KoszulData::new(&i);
        for deg in 0..=2 {
            for variance in [Variance::Tensor, Variance::Hom] {
                let h = k.complex().homology_with_coefficients(&m, deg, variance).unwrap();
                for z in h.generators().columns() {
                    for g in i.generators() {
                        let gz: Vec<Polynomial> = z.iter().map(|p| q.reduce(&p.mul(g))).collect();
                        assert_eq!(h.is_zero_element(&gz), Some(true));
                    }
                }
            }
        }
    }

    #[test]
    fn grade_examples() {
        let q = r(&["x", "y"]);
        let i = Ideal::variables(&q, &["x", "y"]);
        let g = grade(&i, &FPModule::free(&q, 1), 3).unwrap();
        assert_eq!(g.grade, GradeValue::Exact(2));
        let ix = Ideal::variables(&q, &["x"]);
        assert_eq!(grade(&ix, &FPModule::cyclic(&ix), 2).unwrap().grade, GradeValue::Exact(0));
        let q3 = r(&["x", "y", "z"]);
        let i3 = Ideal::variables(&q3, &["x", "y", "z"]);
        assert_eq!(grade(&i3, &FPModule::free(&q3, 1), 4).unwrap().grade, GradeValue::Exact(3));
        assert_eq!(grade(&i, &FPModule::free(&q, 1), 2).unwrap().grade, GradeValue::AtLeast(2));
        assert_eq!(serde_json::to_string(&GradeValue::AtLeast(2)).unwrap(), "\">=2\"");
    }

    #[test]
    fn invariance() {
        let q = r(&["x", "y"]);
        let (x, y) = (q.var(0), q.var(1));
        let i = Ideal::variables(&q, &["x", "y"]);
        let rr = FPModule::free(&q, 1);
        let rep = generator_invariance(&i, &[x.clone(), x.add(&y)], 1, std::slice::from_ref(&rr)).unwrap();
        assert!(rep.verdict[0].agree);
        assert_eq!(rep.verdict[0].first_nonzero_original, None);
        let rep = generator_invariance(&i, &[x.clone(), y.clone(), x.add(&y)], 1, &[rr.clone()]).unwrap();
        assert!(rep.verdict[0].agree);
        assert!(matches!(generator_invariance(&i, &[x], 1, &[rr]), Err(Error::GeneratorMismatch)));
    }

    #[test]
    fn comparison_map() {
        let q = r(&["x", "y"]);
        let i = Ideal::variables(&q, &["x", "y"]);
        let rr = FPModule::free(&q, 1);
        for n in 0..=2 {
            let (rep, _) = compare_ext_koszul(&i, &rr, n).unwrap();
            assert!(rep.hypothesis_holds);
            assert!(rep.verdict.iso, "n = {n}");
        }
        let ix = Ideal::variables(&q, &["x"]);
        let (rep, _) = compare_ext_koszul(&ix, &FPModule::cyclic(&ix), 1).unwrap();
        assert!(!rep.hypothesis_holds);
        let (rep, _) = compare_ext_koszul(&ix, &FPModule::cyclic(&ix), 0).unwrap();
        assert!(rep.verdict.iso);
    }

    #[test]
    fn s_modules() {
        let q1 = r(&["x"]);
        let ix = Ideal::variables(&q1, &["x"]);
        assert!(s_module(&ix, 1).unwrap().module.is_cyclic_iso(&ix).unwrap());
        let q = r(&["x", "y"]);
        let i = Ideal::variables(&q, &["x", "y"]);
        assert_eq!(s_module(&i, 2).unwrap().module.presentation().to_strings(), vec![vec!["-y", "x"]]);
        assert!(s_module(&Ideal::unit(&q), 1).unwrap().module.is_zero());
        assert!(s_module(&i, 3).is_err());

        let rep = s_module_pd_check(&i, 2, 8).unwrap();
        assert!(rep.hypothesis_holds);
        assert_eq!(rep.verdict.pd, Some(PdValue::Exact { value: 2 }));
        assert_eq!(rep.verdict.tail_exact, Some(true));
        let rep = s_module_pd_check(&Ideal::variables(&q, &["x"]), 1, 8).unwrap();
        assert_eq!(rep.verdict.pd, Some(PdValue::Exact { value: 1 }));
        let s = q1.quotient(vec![q1.var(0).pow(2)]).unwrap();
        let rep = s_module_pd_check(&Ideal::variables(&s, &["x"]), 1, 8).unwrap();
        assert!(!rep.hypothesis_holds);
        assert_eq!(rep.verdict.status, "hypothesis fails");
    }
}
