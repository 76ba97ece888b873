//! Thomason sets given by finitely many closed pieces, Gabriel bases,
//! characteristic sequences, and membership in the associated tilting and
//! cotilting classes for finitely presented modules.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::koszul::{Report, SModule, SModuleVerdict, s_module, s_module_pd_check};
use crate::module::{FPModule, ModuleRecord, Resolution};
use crate::ring::{Ideal, Ring};

/// `⋃_a V(I_a)` over finitely many finitely generated ideals.
#[derive(Clone, Debug)]
pub struct ThomasonSet {
    ring: Ring,
    pieces: Vec<Ideal>,
}

impl ThomasonSet {
    pub fn new(ring: &Ring, pieces: Vec<Ideal>) -> Result<Self> {
        if pieces.iter().any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(ThomasonSet { ring: ring.clone(), pieces })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn pieces(&self) -> &[Ideal] {
        &self.pieces
    }

    /// Every piece is the unit ideal.
    pub fn is_empty(&self) -> bool {
        self.pieces.iter().all(|p| p.is_unit())
    }

    /// `V(J) ⊆ ⋃_a V(I_a)`, i.e. `∏_a I_a ⊆ √J`, checked on the products of
    /// one generator from each piece.
    pub fn contains_closed(&self, j: &Ideal) -> Result<bool> {
        if j.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if j.is_unit() {
            return Ok(true);
        }
        let mut products = vec![self.ring.one()];
        for piece in &self.pieces {
            let gens = piece.generators();
            if gens.is_empty() {
                // V(0) is everything
                return Ok(true);
            }
            let mut next = Vec::with_capacity(products.len() * gens.len());
            for p in &products {
                for g in gens {
                    next.push(self.ring.reduce(&p.mul(g)));
                }
            }
            products = next;
        }
        for p in &products {
            if !j.radical_member(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &ThomasonSet) -> Result<bool> {
        if other.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        for j in &other.pieces {
            if !self.contains_closed(j)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn record(&self) -> ThomasonRecord {
        ThomasonRecord { pieces: self.pieces.iter().map(|p| p.format()).collect(), empty: self.is_empty() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThomasonRecord {
    pub pieces: Vec<String>,
    pub empty: bool,
}

/// `Y ⊆ X`.
pub fn thomason_contains(x: &ThomasonSet, y: &ThomasonSet) -> Result<bool> {
    x.contains(y)
}

/// A finite basis of a Gabriel topology of finite type.
#[derive(Clone, Debug)]
pub struct GabrielBasis {
    ring: Ring,
    basis: Vec<Ideal>,
}

impl GabrielBasis {
    pub fn new(ring: &Ring, basis: Vec<Ideal>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidArgument("a Gabriel basis needs at least one ideal".into()));
        }
        if basis.iter().any(|b| b.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(GabrielBasis { ring: ring.clone(), basis })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn basis(&self) -> &[Ideal] {
        &self.basis
    }

    /// The Thomason set of the torsion class: pieces are the basis ideals.
    pub fn thomason(&self) -> ThomasonSet {
        ThomasonSet { ring: self.ring.clone(), pieces: self.basis.clone() }
    }

    /// Filter membership of a finitely generated ideal.
    pub fn contains_ideal(&self, j: &Ideal) -> Result<bool> {
        self.thomason().contains_closed(j)
    }
}

pub fn thomason_of_torsion_class(g: &GabrielBasis) -> ThomasonSet {
    g.thomason()
}

/// `(𝒢_0, ..., 𝒢_{n-1})`.
#[derive(Clone, Debug)]
pub struct CharacteristicSequence {
    ring: Ring,
    entries: Vec<GabrielBasis>,
    valid: Arc<OnceLock<bool>>,
}

impl CharacteristicSequence {
    pub fn new(ring: &Ring, entries: Vec<GabrielBasis>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("a characteristic sequence needs at least one entry".into()));
        }
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(CharacteristicSequence { ring: ring.clone(), entries, valid: Arc::new(OnceLock::new()) })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn entries(&self) -> &[GabrielBasis] {
        &self.entries
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Outcome of a previous validation, if any.
    pub fn validation(&self) -> Option<bool> {
        self.valid.get().copied()
    }

    /// An unvalidated sequence over the same ring.
    pub fn with_entries(&self, entries: Vec<GabrielBasis>) -> Result<Self> {
        Self::new(&self.ring, entries)
    }

    fn require_valid(&self) -> Result<()> {
        match self.validation() {
            Some(true) => Ok(()),
            _ => Err(Error::UnvalidatedSequence),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentCheck {
    pub i: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailedTriple {
    pub i: usize,
    pub ideal: String,
    pub basis_index: usize,
    pub j: usize,
    pub ext: ModuleRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub length: usize,
    /// `X_i ⊇ X_{i+1}` for each `i`.
    pub descending: Vec<ContainmentCheck>,
    pub failures: Vec<FailedTriple>,
}

/// Checks `X_0 ⊇ X_1 ⊇ ...` and `Ext^j(R/I, R) = 0` for every basis ideal
/// `I` of `𝒢_i` and `j ≤ i`, listing every failed `(i, I, j)`. The outcome is
/// remembered on the sequence.
pub fn validate_characteristic_sequence(seq: &CharacteristicSequence, resolution_limit: usize) -> Result<ValidationReport> {
    let n = seq.len();
    if n > resolution_limit {
        return Err(Error::ResolutionTooShort { needed: n - 1, limit: resolution_limit });
    }
    let ring = &seq.ring;
    let mut descending = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let holds = seq.entries[i].thomason().contains(&seq.entries[i + 1].thomason())?;
        descending.push(ContainmentCheck { i, holds });
    }
    let rr = FPModule::free(ring, 1);
    let mut failures = Vec::new();
    for (i, g) in seq.entries.iter().enumerate() {
        for (b, ideal) in g.basis().iter().enumerate() {
            let res = Resolution::new(&FPModule::cyclic(ideal), i + 1, false);
            for j in 0..=i {
                let ext = res.ext(&rr, j)?;
                if !ext.is_zero() {
                    failures.push(FailedTriple {
                        i,
                        ideal: ideal.format(),
                        basis_index: b,
                        j,
                        ext: ext.module().record(),
                    });
                }
            }
        }
    }
    let valid = descending.iter().all(|c| c.holds) && failures.is_empty();
    let _ = seq.valid.set(valid);
    Ok(ValidationReport { valid, length: n, descending, failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipWitness {
    pub i: usize,
    pub ideal: String,
    pub basis_index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub member: bool,
    pub witness: Option<MembershipWitness>,
    pub checked: usize,
}

fn membership(seq: &CharacteristicSequence, m: &FPModule, tor: bool) -> Result<MembershipReport> {
    seq.require_valid()?;
    if m.ring() != &seq.ring {
        return Err(Error::RingMismatch);
    }
    let mut checked = 0;
    for (i, g) in seq.entries.iter().enumerate() {
        for (b, ideal) in g.basis().iter().enumerate() {
            let res = Resolution::new(&FPModule::cyclic(ideal), i + 1, false);
            let group = if tor { res.tor(m, i)? } else { res.ext(m, i)? };
            checked += 1;
            if !group.is_zero() {
                return Ok(MembershipReport {
                    member: false,
                    witness: Some(MembershipWitness { i, ideal: ideal.format(), basis_index: b }),
                    checked,
                });
            }
        }
    }
    Ok(MembershipReport { member: true, witness: None, checked })
}

/// `Tor_i(R/I, M) = 0` for every basis ideal `I` of `𝒢_i`, `i < n`.
pub fn tilting_membership(seq: &CharacteristicSequence, m: &FPModule) -> Result<MembershipReport> {
    membership(seq, m, true)
}

/// `Ext^i(R/I, M) = 0` for every basis ideal `I` of `𝒢_i`, `i < n`.
pub fn cotilting_membership(seq: &CharacteristicSequence, m: &FPModule) -> Result<MembershipReport> {
    membership(seq, m, false)
}

#[derive(Clone, Debug)]
pub struct ResolvingGenerator {
    pub i: usize,
    pub basis_index: usize,
    pub module: SModule,
    pub pd: Report<SModuleVerdict>,
}

/// `S_{I,i+1}` for each basis ideal `I` of `𝒢_i` (unit ideals contribute
/// nothing), each with its projective-dimension report.
pub fn resolving_generators(seq: &CharacteristicSequence, resolution_limit: usize) -> Result<Vec<ResolvingGenerator>> {
    seq.require_valid()?;
    let mut out = Vec::new();
    for (i, g) in seq.entries.iter().enumerate() {
        for (b, ideal) in g.basis().iter().enumerate() {
            if ideal.is_unit() {
                continue;
            }
            let module = s_module(ideal, i + 1)?;
            let pd = s_module_pd_check(ideal, i + 1, resolution_limit)?;
            out.push(ResolvingGenerator { i, basis_index: b, module, pd });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeEntry {
    pub ideal: String,
    pub proper: bool,
    pub hom_nonzero: bool,
    /// Annihilator generators witnessing `Hom(R/I, R) ≠ 0`.
    pub annihilator: Vec<String>,
    pub contradiction: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub ring: String,
    pub consistent: bool,
    pub entries: Vec<ProbeEntry>,
}

/// Over a finite-dimensional ring, every proper finitely generated ideal
/// has `Hom(R/I, R) ≠ 0`; any proper candidate with zero Hom is flagged.
pub fn perfect_ring_triviality_probe(ring: &Ring, candidates: &[Ideal]) -> Result<ProbeReport> {
    if !ring.is_finite_dimensional() {
        return Err(Error::NotFiniteDimensional);
    }
    let rr = FPModule::free(ring, 1);
    let mut entries = Vec::new();
    for ideal in candidates {
        if ideal.ring() != ring {
            return Err(Error::RingMismatch);
        }
        let proper = !ideal.is_unit();
        let hom = Resolution::new(&FPModule::cyclic(ideal), 1, false).ext(&rr, 0)?;
        let hom_nonzero = !hom.is_zero();
        let annihilator = hom.generators().columns().into_iter().flatten().map(|p| ring.format(&p)).collect();
        entries.push(ProbeEntry {
            ideal: ideal.format(),
            proper,
            hom_nonzero,
            annihilator,
            contradiction: proper && !hom_nonzero,
        });
    }
    let consistent = entries.iter().all(|e| !e.contradiction);
    Ok(ProbeReport { ring: ring.describe(), consistent, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Ring {
        Ring::polynomial(&["x", "y"])
    }

    fn seq(r: &Ring, entries: &[&[&[&str]]]) -> CharacteristicSequence {
        let entries = entries
            .iter()
            .map(|basis| {
                let ideals = basis.iter().map(|names| Ideal::variables(r, names)).collect();
                GabrielBasis::new(r, ideals).unwrap()
            })
            .collect();
        CharacteristicSequence::new(r, entries).unwrap()
    }

    #[test]
    fn thomason_examples() {
        let r = r2();
        let v = |names: &[&str]| ThomasonSet::new(&r, vec![Ideal::variables(&r, names)]).unwrap();
        assert!(v(&["x"]).contains(&v(&["x", "y"])).unwrap());
        assert!(!v(&["x", "y"]).contains(&v(&["x"])).unwrap());
        let xy = Ideal::new(&r, vec![r.var(0).mul(&r.var(1))]).unwrap();
        let union = ThomasonSet::new(&r, vec![Ideal::variables(&r, &["x"]), Ideal::variables(&r, &["y"])]).unwrap();
        assert!(union.contains(&ThomasonSet::new(&r, vec![xy]).unwrap()).unwrap());
        let empty = GabrielBasis::new(&r, vec![Ideal::unit(&r)]).unwrap().thomason();
        assert!(empty.is_empty());
        assert!(v(&["x"]).contains(&empty).unwrap());
    }

    #[test]
    fn validation() {
        let r = r2();
        let good = seq(&r, &[&[&["x", "y"]], &[&["x", "y"]]]);
        assert!(matches!(tilting_membership(&good, &FPModule::free(&r, 1)), Err(Error::UnvalidatedSequence)));
        let rep = validate_characteristic_sequence(&good, 8).unwrap();
        assert!(rep.valid);
        let bad = seq(&r, &[&[&["x"]], &[&["x"]]]);
        let rep = validate_characteristic_sequence(&bad, 8).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.failures.len(), 1);
        let f = &rep.failures[0];
        assert_eq!((f.i, f.ideal.as_str(), f.j), (1, "(x)", 1));
        let trivial = CharacteristicSequence::new(&r, vec![GabrielBasis::new(&r, vec![Ideal::unit(&r)]).unwrap()]).unwrap();
        assert!(validate_characteristic_sequence(&trivial, 8).unwrap().valid);
    }

    #[test]
    fn memberships() {
        let r = r2();
        let s = seq(&r, &[&[&["x", "y"]], &[&["x", "y"]]]);
        validate_characteristic_sequence(&s, 8).unwrap();
        let rr = FPModule::free(&r, 1);
        let t = tilting_membership(&s, &rr).unwrap();
        assert!(!t.member);
        assert_eq!(t.witness.as_ref().map(|w| (w.i, w.ideal.clone())), Some((0, "(x, y)".to_string())));
        let m = FPModule::new(crate::matrix::FreeMap::row_vector(&r, vec![r.one().sub(&r.var(0))]));
        assert!(tilting_membership(&s, &m).unwrap().member);
        assert!(cotilting_membership(&s, &rr).unwrap().member);
        let k = FPModule::cyclic(&Ideal::variables(&r, &["x", "y"]));
        let c = cotilting_membership(&s, &k).unwrap();
        assert_eq!(c.witness.map(|w| w.i), Some(0));

        let gens = resolving_generators(&s, 8).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].module.k, 1);
        assert_eq!(gens[1].pd.verdict.pd_equals_n, Some(true));
        let one = seq(&r, &[&[&["x"]]]);
        validate_characteristic_sequence(&one, 8).unwrap();
        let gens = resolving_generators(&one, 8).unwrap();
        assert!(gens[0].module.module.is_cyclic_iso(&Ideal::variables(&r, &["x"])).unwrap());
    }

    #[test]
    fn perfect_probe() {
        let r1 = Ring::polynomial(&["x"]);
        let s = r1.quotient(vec![r1.var(0).pow(2)]).unwrap();
        let rep = perfect_ring_triviality_probe(&s, &[Ideal::variables(&s, &["x"]), Ideal::unit(&s)]).unwrap();
        assert!(rep.consistent);
        assert!(rep.entries[0].hom_nonzero);
        assert_eq!(rep.entries[0].annihilator, vec!["x"]);
        assert!(!rep.entries[1].proper);
        let p = r2();
        let (x, y) = (p.var(0), p.var(1));
        let t = p.quotient(vec![x.pow(2), x.mul(&y), y.pow(2)]).unwrap();
        let rep = perfect_ring_triviality_probe(&t, &[Ideal::variables(&t, &["x", "y"])]).unwrap();
        assert!(rep.entries[0].hom_nonzero);
        assert!(matches!(perfect_ring_triviality_probe(&p, &[]), Err(Error::NotFiniteDimensional)));
    }
}
