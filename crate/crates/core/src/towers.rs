//! Towers of Koszul (co)homology over generator powers and of Ext/Tor over
//! ideal powers, pro-zero diagnostics, and vanishing verdicts for Čech and
//! local (co)homology reduced to finite Koszul and Ext/Tor computations.

use serde::Serialize;
use serde_json::{Value, json};

use crate::complex::{ChainMap, lift_to_resolution};
use crate::error::{Error, Result};
use crate::koszul::KoszulData;
use crate::matrix::{FreeMap, MatrixRecord};
use crate::module::{FPModule, ModuleMap, Resolution};
use crate::poly::Polynomial;
use crate::ring::Ideal;

/// Default truncation depth for towers.
pub const DEFAULT_TOWER_DEPTH: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Maps go from level `j` to level `j + 1`.
    Direct,
    /// Maps go from level `j + 1` to level `j`.
    Inverse,
}

/// Levels `j = 1..=J` and the connecting maps between consecutive levels;
/// `maps[j - 1]` joins levels `j` and `j + 1`.
#[derive(Clone, Debug)]
pub struct Tower {
    direction: Direction,
    levels: Vec<FPModule>,
    maps: Vec<ModuleMap>,
}

impl Tower {
    pub fn new(direction: Direction, levels: Vec<FPModule>, maps: Vec<ModuleMap>) -> Result<Self> {
        if levels.is_empty() || maps.len() + 1 != levels.len() {
            return Err(Error::Shape("a tower needs one map between consecutive levels".into()));
        }
        for (j, f) in maps.iter().enumerate() {
            let (src, dst) = match direction {
                Direction::Direct => (&levels[j], &levels[j + 1]),
                Direction::Inverse => (&levels[j + 1], &levels[j]),
            };
            if f.source().rank() != src.rank() || f.target().rank() != dst.rank() {
                return Err(Error::Shape(format!("connecting map {} does not match its levels", j + 1)));
            }
            if !f.is_well_defined() {
                return Err(Error::InvalidArgument(format!("connecting map {} is not well defined", j + 1)));
            }
        }
        Ok(Tower { direction, levels, maps })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
    pub fn depth(&self) -> usize {
        self.levels.len()
    }
    /// Level `j`, counted from 1.
    pub fn level(&self, j: usize) -> &FPModule {
        &self.levels[j - 1]
    }
    pub fn levels(&self) -> &[FPModule] {
        &self.levels
    }
    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    /// For an inverse tower, the composite from level `k` down to level `i`.
    pub fn composite(&self, k: usize, i: usize) -> Result<ModuleMap> {
        if self.direction != Direction::Inverse {
            return Err(Error::DirectionMismatch("composite needs an inverse tower"));
        }
        if i < 1 || k < i || k > self.depth() {
            return Err(Error::IndexOutOfRange { index: k as i64, lo: i as i64, hi: self.depth() as i64 });
        }
        let level = self.level(i).clone();
        let id = FreeMap::identity(level.ring(), level.rank());
        let mut acc = ModuleMap::new(level.clone(), level, id)?;
        for j in i..k {
            acc = acc.compose(&self.maps[j - 1])?;
        }
        Ok(acc)
    }

    /// Whether every connecting map is surjective.
    pub fn surjective_maps(&self) -> Vec<bool> {
        self.maps.iter().map(|f| f.is_surjective()).collect()
    }

    pub fn record(&self) -> TowerRecord {
        TowerRecord {
            direction: self.direction,
            levels: self
                .levels
                .iter()
                .map(|m| LevelRecord {
                    rank: m.rank(),
                    relations: MatrixRecord::from(m.presentation()),
                    is_zero: m.is_zero(),
                })
                .collect(),
            maps: self.maps.iter().map(|f| MatrixRecord::from(f.matrix())).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelRecord {
    pub rank: usize,
    pub relations: MatrixRecord,
    pub is_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerRecord {
    pub direction: Direction,
    pub levels: Vec<LevelRecord>,
    pub maps: Vec<MatrixRecord>,
}

fn check_depth(depth: usize) -> Result<()> {
    if depth < 1 {
        return Err(Error::InvalidArgument("tower depth must be at least 1".into()));
    }
    Ok(())
}

/// The chain map `K(x^{j+1}) -> K(x^j)` sending `e_S` to `(∏_{i∈S} x_i) e_S`.
fn koszul_power_map(upper: &KoszulData, lower: &KoszulData, base: &[Polynomial]) -> Result<ChainMap> {
    let ring = upper.ring();
    let n = base.len();
    let maps = (0..=n)
        .map(|k| {
            let diag = lower
                .labels(k)
                .iter()
                .map(|s| s.iter().fold(ring.one(), |acc, &i| ring.reduce(&acc.mul(&base[i]))))
                .collect();
            FreeMap::diagonal(ring, diag)
        })
        .collect();
    ChainMap::new(upper.complex().clone(), lower.complex().clone(), 0, maps)
}

/// `H_i(x^j; M)` as an inverse tower, or `H^i(x^j; M)` as a direct tower
/// when `cohomology` is set, for `j = 1..=depth`.
pub fn koszul_power_tower(ideal: &Ideal, m: &FPModule, i: usize, depth: usize, cohomology: bool) -> Result<Tower> {
    check_depth(depth)?;
    if ideal.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = ideal.ring();
    let base: Vec<Polynomial> = ideal.generators().to_vec();
    let complexes: Vec<KoszulData> = (1..=depth as u32)
        .map(|j| KoszulData::from_generators(ring, base.iter().map(|g| ring.reduce(&g.pow(j))).collect()))
        .collect();
    let homs = complexes
        .iter()
        .map(|k| if cohomology { k.cohomology(m, i) } else { k.homology(m, i) })
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::new();
    for j in 0..depth.saturating_sub(1) {
        let phi = koszul_power_map(&complexes[j + 1], &complexes[j], &base)?;
        let f = if cohomology {
            phi.induced_hom(&homs[j], &homs[j + 1], m, i as i64)?
        } else {
            phi.induced_tensor(&homs[j + 1], &homs[j], m, i as i64)?
        };
        maps.push(f);
    }
    let direction = if cohomology { Direction::Direct } else { Direction::Inverse };
    Tower::new(direction, homs.into_iter().map(|h| h.into_module()).collect(), maps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerFunctor {
    Ext,
    Tor,
}

/// `Ext^i(R/I^j, M)` (direct) or `Tor_i(R/I^j, M)` (inverse) for
/// `j = 1..=depth`, with maps induced by `R/I^{j+1} -> R/I^j`.
pub fn ideal_power_tower(ideal: &Ideal, m: &FPModule, i: usize, depth: usize, functor: PowerFunctor) -> Result<Tower> {
    let (tower, _) = ideal_power_tower_with_lifts(ideal, m, i, depth, functor)?;
    Ok(tower)
}

/// Resolutions of `R/I^j` and lifts of the projections, used by the tower.
pub struct PowerLifts {
    pub resolutions: Vec<Resolution>,
    /// `lifts[j - 1]` lifts `R/I^{j+1} -> R/I^j`.
    pub lifts: Vec<ChainMap>,
}

pub fn ideal_power_tower_with_lifts(
    ideal: &Ideal,
    m: &FPModule,
    i: usize,
    depth: usize,
    functor: PowerFunctor,
) -> Result<(Tower, PowerLifts)> {
    check_depth(depth)?;
    if ideal.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = ideal.ring();
    let resolutions: Vec<Resolution> = (1..=depth as u32)
        .map(|j| Ok(Resolution::new(&FPModule::cyclic(&ideal.power(j)?), i + 1, true)))
        .collect::<Result<_>>()?;
    let groups = resolutions
        .iter()
        .map(|p| match functor {
            PowerFunctor::Ext => p.ext(m, i),
            PowerFunctor::Tor => p.tor(m, i),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut lifts = Vec::new();
    let mut maps = Vec::new();
    for j in 0..depth.saturating_sub(1) {
        let source = crate::complex::FreeComplex::from_resolution(&resolutions[j + 1]);
        let lift = lift_to_resolution(&source, &resolutions[j], FreeMap::identity(ring, 1), i + 1)?;
        let f = match functor {
            PowerFunctor::Ext => lift.induced_hom(&groups[j], &groups[j + 1], m, i as i64)?,
            PowerFunctor::Tor => lift.induced_tensor(&groups[j + 1], &groups[j], m, i as i64)?,
        };
        maps.push(f);
        lifts.push(lift);
    }
    let direction = match functor {
        PowerFunctor::Ext => Direction::Direct,
        PowerFunctor::Tor => Direction::Inverse,
    };
    let tower = Tower::new(direction, groups.into_iter().map(|g| g.into_module()).collect(), maps)?;
    Ok((tower, PowerLifts { resolutions, lifts }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Value3 {
    Vanishes,
    Nonvanishes,
    Inconclusive,
}

/// Pro-zero evidence for the first levels of an inverse tower.
#[derive(Clone, Debug, Serialize)]
pub struct ProZeroVerdict {
    /// Every level `i ≤ levels` is killed by a composite from some level
    /// `k ≤ depth`.
    pub pro_zero_upto: bool,
    pub value: Value3,
    pub levels: usize,
    pub depth: usize,
    /// `(i, k)` with the composite from level `k` to level `i` zero.
    pub witnesses: Vec<(usize, usize)>,
    /// Levels with no witness within the tower.
    pub unwitnessed: Vec<usize>,
}

/// Witnesses are searched up to this multiple of the certified depth.
pub const WITNESS_HORIZON: usize = 2;

/// Looks for zero composites `level k -> level i` with `i ≤ levels` and
/// `i ≤ k ≤ depth`. A missing witness is inconclusive rather than a failure.
pub fn pro_zero_upto(t: &Tower, levels: usize) -> Result<ProZeroVerdict> {
    if t.direction != Direction::Inverse {
        return Err(Error::DirectionMismatch("pro-zero test needs an inverse tower"));
    }
    let depth = t.depth();
    if levels > depth {
        return Err(Error::IndexOutOfRange { index: levels as i64, lo: 0, hi: depth as i64 });
    }
    let mut witnesses = Vec::new();
    let mut unwitnessed = Vec::new();
    for i in 1..=levels {
        let mut found = None;
        for k in i..=depth {
            if t.composite(k, i)?.is_zero() {
                found = Some(k);
                break;
            }
        }
        match found {
            Some(k) => witnesses.push((i, k)),
            None => unwitnessed.push(i),
        }
    }
    let ok = unwitnessed.is_empty();
    Ok(ProZeroVerdict {
        pro_zero_upto: ok,
        value: if ok { Value3::Vanishes } else { Value3::Inconclusive },
        levels,
        depth,
        witnesses,
        unwitnessed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProregularityEntry {
    pub index: usize,
    pub verdict: ProZeroVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProregularityReport {
    pub depth: usize,
    pub all_pro_zero: bool,
    pub entries: Vec<ProregularityEntry>,
}

/// Pro-zero tests of `H_i(x^j; R)` for `1 ≤ i ≤ #generators`, certifying
/// levels `j ≤ depth` from towers of `WITNESS_HORIZON * depth` levels.
pub fn weakly_proregular_upto(ideal: &Ideal, depth: usize) -> Result<ProregularityReport> {
    if depth < 2 {
        return Err(Error::InvalidArgument("weak proregularity probe needs depth at least 2".into()));
    }
    let rr = FPModule::free(ideal.ring(), 1);
    let mut entries = Vec::new();
    for i in 1..=ideal.generators().len() {
        let tower = koszul_power_tower(ideal, &rr, i, WITNESS_HORIZON * depth, false)?;
        entries.push(ProregularityEntry { index: i, verdict: pro_zero_upto(&tower, depth)? });
    }
    let all = entries.iter().all(|e| e.verdict.pro_zero_upto);
    Ok(ProregularityReport { depth, all_pro_zero: all, entries })
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingVerdict {
    pub value: Value3,
    pub reduction: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// First index whose finite check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    pub checks: Vec<IndexCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexCheck {
    pub index: usize,
    pub zero: bool,
}

impl VanishingVerdict {
    pub fn vanishes(&self) -> bool {
        self.value == Value3::Vanishes
    }
}

fn verdict_from_checks(checks: Vec<IndexCheck>, reduction: Vec<String>) -> VanishingVerdict {
    let witness = checks.iter().find(|c| !c.zero).map(|c| c.index);
    VanishingVerdict {
        value: if witness.is_some() { Value3::Nonvanishes } else { Value3::Vanishes },
        reduction,
        depth: None,
        witness,
        checks,
        evidence: None,
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument("vanishing range must contain index 0 (n >= 1)".into()));
    }
    Ok(())
}

/// `Ȟ^i(I; M) = 0 for i < n`, decided by the Koszul cohomology of `I`.
pub fn cech_cohomology_vanishes(ideal: &Ideal, m: &FPModule, n: usize) -> Result<VanishingVerdict> {
    check_n(n)?;
    let k = KoszulData::new(ideal);
    let mut checks = Vec::new();
    for i in 0..n {
        let zero = k.cohomology(m, i)?.is_zero();
        checks.push(IndexCheck { index: i, zero });
        if !zero {
            break;
        }
    }
    Ok(verdict_from_checks(
        checks,
        vec![
            format!("H^i(I; M) computed from the Koszul complex for i < {n}"),
            format!("Čech cohomology below {n} vanishes exactly when Koszul cohomology below {n} vanishes"),
        ],
    ))
}

/// `Ȟ_i(I; M) = 0 for i < n`, decided by Koszul homology. When the finite
/// checks pass, the maps of the tower `H_n(x^j; M)` are tested for
/// surjectivity up to `depth` as evidence that its `lim^1` vanishes.
pub fn cech_homology_vanishes(ideal: &Ideal, m: &FPModule, n: usize, depth: usize) -> Result<VanishingVerdict> {
    check_n(n)?;
    let k = KoszulData::new(ideal);
    let mut checks = Vec::new();
    for i in 0..n {
        let zero = k.homology(m, i)?.is_zero();
        checks.push(IndexCheck { index: i, zero });
        if !zero {
            break;
        }
    }
    let mut reduction = vec![
        format!("H_i(I; M) computed from the Koszul complex for i < {n}"),
        format!("Čech homology below {n} vanishes exactly when Koszul homology below {n} vanishes"),
    ];
    let mut v = verdict_from_checks(checks, vec![]);
    if v.vanishes() && depth >= 1 {
        let tower = koszul_power_tower(ideal, m, n, depth, false)?;
        let surj = tower.surjective_maps();
        let all = surj.iter().all(|&s| s);
        if all {
            reduction.push(format!("lim^1 of H_{n}(x^j; M) vanishes: maps surjective, witnessed up to {depth}"));
        } else {
            reduction.push(format!("lim^1 of H_{n}(x^j; M): surjectivity not witnessed up to {depth}"));
        }
        v.depth = Some(depth);
        v.evidence = Some(json!({ "tower_index": n, "surjective_maps": surj, "witnessed": all }));
    }
    v.reduction = reduction;
    Ok(v)
}

/// Koszul homology vanishing on an arbitrary index range, without any
/// Čech reduction.
pub fn koszul_homology_vanishes_in(ideal: &Ideal, m: &FPModule, lo: usize, hi: usize) -> Result<VanishingVerdict> {
    let k = KoszulData::new(ideal);
    let mut checks = Vec::new();
    for i in lo..=hi {
        let zero = k.homology(m, i)?.is_zero();
        checks.push(IndexCheck { index: i, zero });
    }
    Ok(verdict_from_checks(checks, vec![format!("H_i(I; M) computed from the Koszul complex for {lo} ≤ i ≤ {hi}")]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Homology,
    Cohomology,
}

/// `L_iΛ_I(M) = 0` (homology side) or `R^iΓ_I(M) = 0` (cohomology side) for
/// `i < n`, reduced to Tor or Ext vanishing against `R/I`. The cohomology
/// side first requires `Ext^j(R/I, R) = 0` for `j < n`.
pub fn local_vanishing(ideal: &Ideal, m: &FPModule, n: usize, side: Side, depth: usize) -> Result<VanishingVerdict> {
    check_n(n)?;
    let ring = ideal.ring();
    let cyclic = FPModule::cyclic(ideal);
    let res = Resolution::new(&cyclic, n, false);
    if side == Side::Cohomology {
        let rr = FPModule::free(ring, 1);
        for j in 0..n {
            if !res.ext(&rr, j)?.is_zero() {
                return Ok(VanishingVerdict {
                    value: Value3::Inconclusive,
                    reduction: vec![format!("hypothesis Ext^j(R/I, R) = 0 for j < {n} fails at j = {j}")],
                    depth: None,
                    witness: None,
                    checks: vec![],
                    evidence: None,
                });
            }
        }
    }
    let mut checks = Vec::new();
    for i in 0..n {
        let zero = match side {
            Side::Homology => res.tor(m, i)?.is_zero(),
            Side::Cohomology => res.ext(m, i)?.is_zero(),
        };
        checks.push(IndexCheck { index: i, zero });
        if !zero {
            break;
        }
    }
    let reduction = match side {
        Side::Homology => vec![
            format!("Tor_i(R/I, M) computed for i < {n}"),
            format!("local homology below {n} vanishes exactly when Tor_i(R/I, M) does"),
        ],
        Side::Cohomology => vec![
            format!("hypothesis Ext^j(R/I, R) = 0 for j < {n} holds"),
            format!("Ext^i(R/I, M) computed for i < {n}"),
            format!("local cohomology below {n} vanishes exactly when Ext^i(R/I, M) does"),
        ],
    };
    let mut v = verdict_from_checks(checks, reduction);
    if depth >= 1 {
        let functor = if side == Side::Homology { PowerFunctor::Tor } else { PowerFunctor::Ext };
        let mut stabilization = Vec::new();
        for i in 0..n {
            let tower = ideal_power_tower(ideal, m, i, depth, functor)?;
            stabilization.push(json!({
                "index": i,
                "levels_zero": tower.levels().iter().map(|l| l.is_zero()).collect::<Vec<_>>(),
                "maps_surjective": tower.surjective_maps(),
            }));
        }
        v.depth = Some(depth);
        v.evidence = Some(json!({ "towers": stabilization }));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn witness_ring() -> Ring {
        let p = Ring::polynomial(&["x", "y"]);
        let (x, y) = (p.var(0), p.var(1));
        p.quotient(vec![y.pow(2), x.mul(&y)]).unwrap()
    }

    #[test]
    fn koszul_towers() {
        let r1 = Ring::polynomial(&["x"]);
        let ix = Ideal::variables(&r1, &["x"]);
        let t = koszul_power_tower(&ix, &FPModule::free(&r1, 1), 1, 3, false).unwrap();
        assert!(t.levels().iter().all(|l| l.is_zero()));

        let s = witness_ring();
        let ix = Ideal::variables(&s, &["x"]);
        let t = koszul_power_tower(&ix, &FPModule::free(&s, 1), 1, 3, false).unwrap();
        let xy = Ideal::variables(&s, &["x", "y"]);
        for l in t.levels() {
            assert!(l.is_cyclic_iso(&xy).unwrap());
        }
        assert!(t.maps().iter().all(|f| f.is_zero()));
        assert!(!pro_zero_upto(&t, 3).unwrap().pro_zero_upto);
        let v = pro_zero_upto(&t, 2).unwrap();
        assert!(v.pro_zero_upto);
        assert_eq!(v.witnesses, vec![(1, 2), (2, 3)]);

        let r = Ring::polynomial(&["x", "y"]);
        let i = Ideal::variables(&r, &["x"]);
        let m = FPModule::free(&r, 1);
        let t0 = koszul_power_tower(&i, &m, 0, 3, false).unwrap();
        for (j, l) in t0.levels().iter().enumerate() {
            assert!(l.is_cyclic_iso(&Ideal::new(&r, vec![r.var(0).pow(j as u32 + 1)]).unwrap()).unwrap());
        }
        assert!(t0.surjective_maps().iter().all(|&b| b));
    }

    #[test]
    fn power_towers() {
        let r1 = Ring::polynomial(&["x"]);
        let ix = Ideal::variables(&r1, &["x"]);
        let rr = FPModule::free(&r1, 1);
        let e0 = ideal_power_tower(&ix, &rr, 0, 3, PowerFunctor::Ext).unwrap();
        assert!(e0.levels().iter().all(|l| l.is_zero()));
        let e1 = ideal_power_tower(&ix, &rr, 1, 3, PowerFunctor::Ext).unwrap();
        for (j, l) in e1.levels().iter().enumerate() {
            assert!(l.is_cyclic_iso(&ix.power(j as u32 + 1).unwrap()).unwrap());
        }
        let t0 = ideal_power_tower(&ix, &rr, 0, 3, PowerFunctor::Tor).unwrap();
        assert_eq!(t0.direction(), Direction::Inverse);
        assert!(t0.surjective_maps().iter().all(|&b| b));
    }

    #[test]
    fn pro_zero_cases() {
        let r1 = Ring::polynomial(&["x"]);
        let ix = Ideal::variables(&r1, &["x"]);
        let m = FPModule::cyclic(&ix);
        let id = FreeMap::identity(&r1, 1);
        let f = ModuleMap::new(m.clone(), m.clone(), id).unwrap();
        let t = Tower::new(Direction::Inverse, vec![m.clone(), m.clone(), m.clone()], vec![f.clone(), f]).unwrap();
        let v = pro_zero_upto(&t, 2).unwrap();
        assert!(!v.pro_zero_upto);
        assert_eq!(v.unwitnessed, vec![1, 2]);
        assert_eq!(v.value, Value3::Inconclusive);
        let z = FPModule::zero(&r1);
        let zf = ModuleMap::new(z.clone(), z.clone(), FreeMap::zero(&r1, 0, 0)).unwrap();
        let t = Tower::new(Direction::Inverse, vec![z.clone(), z], vec![zf]).unwrap();
        assert!(pro_zero_upto(&t, 2).unwrap().pro_zero_upto);
        assert!(pro_zero_upto(&t, 3).is_err());
        let d = Tower::new(Direction::Direct, vec![m], vec![]).unwrap();
        assert!(matches!(pro_zero_upto(&d, 1), Err(Error::DirectionMismatch(_))));
    }

    #[test]
    fn proregularity() {
        let r = Ring::polynomial(&["x", "y"]);
        let rep = weakly_proregular_upto(&Ideal::variables(&r, &["x", "y"]), 3).unwrap();
        assert!(rep.all_pro_zero);
        let s = witness_ring();
        let rep = weakly_proregular_upto(&Ideal::variables(&s, &["x"]), 3).unwrap();
        assert!(rep.all_pro_zero);
        assert_eq!(rep.entries[0].verdict.witnesses[0], (1, 2));
        assert!(weakly_proregular_upto(&Ideal::unit(&r), 2).unwrap().all_pro_zero);
        let lagged = Ideal::new(&r, vec![r.var(0).pow(2), r.var(0).mul(&r.var(1))]).unwrap();
        let rep = weakly_proregular_upto(&lagged, 4).unwrap();
        assert!(rep.all_pro_zero);
        assert_eq!(rep.entries[0].verdict.witnesses, vec![(1, 2), (2, 3), (3, 5), (4, 6)]);
    }

    #[test]
    fn cech_and_local() {
        let r = Ring::polynomial(&["x", "y"]);
        let i = Ideal::variables(&r, &["x", "y"]);
        let rr = FPModule::free(&r, 1);
        assert!(cech_cohomology_vanishes(&i, &rr, 2).unwrap().vanishes());
        assert!(!cech_cohomology_vanishes(&i, &FPModule::cyclic(&i), 1).unwrap().vanishes());
        assert!(cech_cohomology_vanishes(&Ideal::variables(&r, &["x"]), &rr, 1).unwrap().vanishes());

        let ry = FPModule::cyclic(&Ideal::variables(&r, &["y"]));
        assert!(!cech_homology_vanishes(&Ideal::variables(&r, &["x"]), &ry, 1, 2).unwrap().vanishes());
        let zero = FPModule::cyclic(&Ideal::unit(&r));
        let v = cech_homology_vanishes(&i, &zero, 3, 2).unwrap();
        assert!(v.vanishes());
        assert!(v.reduction.iter().any(|s| s.contains("witnessed up to 2")));
        assert!(!cech_homology_vanishes(&i, &rr, 1, 2).unwrap().vanishes());
        assert!(koszul_homology_vanishes_in(&i, &rr, 1, 2).unwrap().vanishes());

        let v = local_vanishing(&i, &rr, 2, Side::Homology, 2).unwrap();
        assert_eq!((v.value, v.witness), (Value3::Nonvanishes, Some(0)));
        let x = r.var(0);
        let m = FPModule::new(FreeMap::row_vector(&r, vec![r.one().sub(&x)]));
        assert!(local_vanishing(&i, &m, 1, Side::Homology, 2).unwrap().vanishes());
        assert!(local_vanishing(&i, &rr, 2, Side::Cohomology, 2).unwrap().vanishes());
        let v = local_vanishing(&Ideal::variables(&r, &["x"]), &rr, 2, Side::Cohomology, 0).unwrap();
        assert_eq!(v.value, Value3::Inconclusive);
    }
}
