//! The acceptance battery: ten seeded suites, each reduced to a pass/fail
//! line plus the list of failing cases. Output is deterministic for a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::koszul::{self, GradeValue, KoszulData, PdValue};
use crate::module::{FPModule, Resolution};
use crate::oracle::{self, GradedQuotient};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{Ideal, Ring};
use crate::session::{RunOptions, Session, Status};
use crate::spectrum::{self, CharacteristicSequence, GabrielBasis, ThomasonSet};
use crate::towers::{self, Side};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

impl BatteryReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new() }
    }
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
    fn record<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
    fn finish(self, id: usize, title: &'static str) -> CriterionReport {
        CriterionReport { id, title, passed: self.failures.is_empty() && self.cases > 0, cases: self.cases, failures: self.failures }
    }
}

pub type Suite = fn(&mut ChaCha8Rng) -> CriterionReport;

/// The suites in order, numbered from 1.
pub const SUITES: [(&str, Suite); 10] = [
    ("koszul-regular", koszul_regular),
    ("grade", grade_double),
    ("comparison", comparison),
    ("class-equality", class_equality),
    ("s-module", s_module),
    ("thomason-oracle", thomason_oracle),
    ("proregularity", proregularity),
    ("validator", validator),
    ("membership-consistency", membership_consistency),
    ("determinism", determinism),
];

/// Runs every suite. Each gets its own generator derived from the seed so
/// that suites can also be run alone with the same cases.
pub fn run_battery(seed: u64) -> BatteryReport {
    let criteria: Vec<CriterionReport> = (0..SUITES.len()).map(|k| run_suite(seed, k)).collect();
    BatteryReport { seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

pub fn run_suite(seed: u64, k: usize) -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64 + 1) << 32));
    (SUITES[k].1)(&mut rng)
}

fn var_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if n <= 4 {
        NAMES[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn poly_ring(n: usize) -> Ring {
    let names = var_names(n);
    Ring::polynomial(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>())
}

fn mono_poly(r: &Ring, m: &Monomial) -> Polynomial {
    Polynomial::monomial(r.field(), r.order(), m.clone(), r.field().one())
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_exp: u32) -> Monomial {
    loop {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if e.iter().any(|&x| x > 0) {
            return Monomial::from_exponents(&e);
        }
    }
}

fn random_monomials(rng: &mut ChaCha8Rng, n: usize, max_gens: usize, max_exp: u32) -> Vec<Monomial> {
    let k = rng.gen_range(1..=max_gens);
    (0..k).map(|_| random_monomial(rng, n, max_exp)).collect()
}

fn monomial_ideal(r: &Ring, gens: &[Monomial]) -> Ideal {
    Ideal::new(r, gens.iter().map(|m| mono_poly(r, m)).collect()).expect("same ring")
}

/// Fixed monomial ideals followed by seeded random ones, in at most three
/// variables.
fn monomial_battery(rng: &mut ChaCha8Rng, random: usize) -> Vec<(Ring, Vec<Monomial>)> {
    let m = |e: &[u32]| Monomial::from_exponents(e);
    let mut out = vec![
        (1, vec![m(&[1])]),
        (1, vec![m(&[2])]),
        (2, vec![m(&[1, 0]), m(&[0, 1])]),
        (2, vec![m(&[1, 1])]),
        (2, vec![m(&[2, 0]), m(&[1, 1])]),
        (2, vec![m(&[1, 0]), m(&[0, 2])]),
        (3, vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]),
        (3, vec![m(&[1, 1, 0]), m(&[0, 1, 1])]),
        (3, vec![m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 1, 1])]),
    ];
    for _ in 0..random {
        let n = rng.gen_range(1..=3);
        out.push((n, random_monomials(rng, n, 3, 2)));
    }
    out.into_iter().map(|(n, g)| (poly_ring(n), g)).collect()
}

/// `R` and `R/(m)` for a seeded monomial `m`.
fn coefficient_modules(rng: &mut ChaCha8Rng, r: &Ring) -> Vec<(String, FPModule)> {
    let m = random_monomial(rng, r.nvars(), 1);
    let q = monomial_ideal(r, &[m]);
    vec![("R".into(), FPModule::free(r, 1)), (format!("R/{}", q.format()), FPModule::cyclic(&q))]
}

fn koszul_regular(_: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    for c in 1..=4 {
        let r = poly_ring(c);
        let ideal = Ideal::new(&r, (0..c).map(|i| r.var(i)).collect()).expect("variables");
        let k = KoszulData::new(&ideal);
        let rr = FPModule::free(&r, 1);
        let mut q = GradedQuotient::new(r.field(), c, vec![]);
        for i in 0..=c {
            let Some(h) = t.record(k.homology(&rr, i), || format!("c={c} H_{i}")) else { continue };
            if i == 0 {
                let iso = h.module().is_cyclic_iso(&ideal).unwrap_or(false);
                t.check(iso, || format!("c={c}: H_0 is not R/I"));
            } else {
                t.check(h.is_zero(), || format!("c={c}: H_{i} nonzero"));
            }
            let oracle = oracle::koszul_homology_dims(&mut q, k.generators(), i, 0..=6);
            let engine = h.module().hilbert_function(0, 6);
            t.check(engine.as_ref() == Some(&oracle), || format!("c={c} H_{i}: engine {engine:?}, oracle {oracle:?}"));
        }
    }
    t.finish(1, "Koszul homology of regular sequences, with graded-slice oracle")
}

/// Grade of a monomial ideal on a polynomial ring is its height, the least
/// size of a minimal prime.
fn monomial_height(n: usize, gens: &[Monomial]) -> usize {
    oracle::monomial_minimal_primes(n, gens).iter().map(|p| p.count_ones() as usize).min().unwrap_or(n)
}

fn grade_double(rng: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    for (r, gens) in monomial_battery(rng, 14) {
        let ideal = monomial_ideal(&r, &gens);
        for (name, m) in coefficient_modules(rng, &r) {
            let bound = koszul::default_grade_bound(&ideal);
            let what = || format!("grade {} on {name}", ideal.format());
            let Some(g) = t.record(koszul::grade(&ideal, &m, bound), what) else { continue };
            t.check(g.koszul_side == g.ext_side, what);
            if name == "R" {
                let h = monomial_height(r.nvars(), &gens);
                t.check(g.grade == GradeValue::Exact(h), || format!("grade {} on R is {}, height {h}", ideal.format(), g.grade));
            }
        }
    }
    t.finish(2, "grade from Koszul cohomology equals grade from Ext")
}

fn comparison(rng: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    for (r, gens) in monomial_battery(rng, 6) {
        let ideal = monomial_ideal(&r, &gens);
        for (name, m) in coefficient_modules(rng, &r) {
            for n in 0..=2 {
                let what = || format!("compare {} {name} {n}", ideal.format());
                let Some((rep, _)) = t.record(koszul::compare_ext_koszul(&ideal, &m, n), what) else { continue };
                if rep.hypothesis_holds {
                    t.check(rep.verdict.iso, what);
                }
            }
        }
    }
    t.finish(3, "Ext-to-Koszul comparison map is an isomorphism under its hypothesis")
}

fn class_equality(rng: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    for (r, gens) in monomial_battery(rng, 6) {
        let ideal = monomial_ideal(&r, &gens);
        let k = KoszulData::new(&ideal);
        let res = Resolution::new(&FPModule::cyclic(&ideal), 3, false);
        for (name, m) in coefficient_modules(rng, &r) {
            let what = || format!("{} on {name}", ideal.format());
            let groups: Result<Vec<[bool; 4]>> = (0..3)
                .map(|i| {
                    Ok([
                        res.ext(&m, i)?.is_zero(),
                        k.cohomology(&m, i)?.is_zero(),
                        res.tor(&m, i)?.is_zero(),
                        k.homology(&m, i)?.is_zero(),
                    ])
                })
                .collect();
            let Some(z) = t.record(groups, what) else { continue };
            for n in 1..=3 {
                let all = |c: usize| z[..n].iter().all(|g| g[c]);
                t.check(all(0) == all(1), || format!("{}: Ext/Koszul cohomology disagree below {n}", what()));
                t.check(all(2) == all(3), || format!("{}: Tor/Koszul homology disagree below {n}", what()));
            }
        }
    }
    t.finish(4, "vanishing classes of Ext and Koszul cohomology, Tor and Koszul homology")
}

fn s_module(_: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    for c in 2..=3 {
        let r = poly_ring(c);
        let ideal = Ideal::new(&r, (0..c).map(|i| r.var(i)).collect()).expect("variables");
        for n in 1..=c {
            let what = || format!("S_{{{},{n}}}", ideal.format());
            let Some(rep) = t.record(koszul::s_module_pd_check(&ideal, n, 8), what) else { continue };
            let v = &rep.verdict;
            t.check(rep.hypothesis_holds && v.tail_exact == Some(true), || format!("{}: tail not exact", what()));
            t.check(v.pd == Some(PdValue::Exact { value: n }), || format!("{}: pd {:?}", what(), v.pd));
        }
    }
    t.finish(5, "S-modules: exact dual Koszul tail and pd = n")
}

fn thomason_oracle(rng: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    for case in 0..120 {
        let n = rng.gen_range(1..=4);
        let r = poly_ring(n);
        let pieces = |rng: &mut ChaCha8Rng| -> Vec<Vec<Monomial>> {
            let k = rng.gen_range(1..=2);
            (0..k).map(|_| random_monomials(rng, n, 3, 2)).collect()
        };
        let (xs, ys) = (pieces(rng), pieces(rng));
        let set = |ps: &[Vec<Monomial>]| ThomasonSet::new(&r, ps.iter().map(|g| monomial_ideal(&r, g)).collect());
        let what = || format!("case {case}");
        let Some((x, y)) = t.record(set(&xs).and_then(|x| Ok((x, set(&ys)?))), what) else { continue };
        let Some(engine) = t.record(spectrum::thomason_contains(&x, &y), what) else { continue };
        let expected = oracle::monomial_thomason_contains(n, &xs, &ys);
        t.check(engine == expected, || format!("case {case}: engine {engine}, oracle {expected}"));
    }
    t.finish(6, "Thomason containment against minimal-prime combinatorics")
}

fn proregularity(rng: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    let mut ideals: Vec<(Ring, Vec<Monomial>)> = monomial_battery(rng, 0).into_iter().take(7).collect();
    for _ in 0..3 {
        let n = rng.gen_range(1..=2);
        ideals.push((poly_ring(n), random_monomials(rng, n, 2, 2)));
    }
    for (r, gens) in &ideals {
        let ideal = monomial_ideal(r, gens);
        let what = || format!("proreg {}", ideal.format());
        let Some(rep) = t.record(towers::weakly_proregular_upto(&ideal, 4), what) else { continue };
        t.check(rep.all_pro_zero, what);
    }
    let witness = (|| -> Result<bool> {
        let base = Ring::polynomial(&["x", "y"]);
        let (x, y) = (base.var(0), base.var(1));
        let r = base.quotient(vec![y.mul(&y), x.mul(&y)])?;
        let ideal = Ideal::new(&r, vec![r.var(0)])?;
        let tower = towers::koszul_power_tower(&ideal, &FPModule::free(&r, 1), 1, 4, false)?;
        let v = towers::pro_zero_upto(&tower, 3)?;
        Ok(!tower.level(1).is_zero() && tower.composite(2, 1)?.is_zero() && v.witnesses.first() == Some(&(1, 2)))
    })();
    if let Some(ok) = t.record(witness, || "witness ideal (x) over QQ[x,y]/(y^2, x*y)".into()) {
        t.check(ok, || "no one-step-zero certificate for (x) over QQ[x,y]/(y^2, x*y)".into());
    }
    t.finish(7, "weak proregularity up to depth 4, with a one-step-zero witness")
}

fn sequence(r: &Ring, entries: &[Vec<Vec<&str>>]) -> Result<CharacteristicSequence> {
    let bases = entries
        .iter()
        .map(|b| GabrielBasis::new(r, b.iter().map(|names| Ideal::variables(r, names)).collect()))
        .collect::<Result<Vec<_>>>()?;
    CharacteristicSequence::new(r, bases)
}

fn validator(_: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    let r = poly_ring(2);
    let run = || -> Result<(bool, Vec<(usize, String, usize, bool)>)> {
        let good = sequence(&r, &[vec![vec!["x", "y"]], vec![vec!["x", "y"]]])?;
        let good = spectrum::validate_characteristic_sequence(&good, 8)?.valid;
        let bad = sequence(&r, &[vec![vec!["x"]], vec![vec!["x"]]])?;
        let rep = spectrum::validate_characteristic_sequence(&bad, 8)?;
        let x = Ideal::variables(&r, &["x"]);
        let mut fails = Vec::new();
        for f in &rep.failures {
            let ext = Resolution::new(&FPModule::cyclic(&x), 2, false).ext(&FPModule::free(&r, 1), f.j)?;
            fails.push((f.i, f.ideal.clone(), f.j, ext.module().is_cyclic_iso(&x)?));
        }
        Ok((good, fails))
    };
    if let Some((good, fails)) = t.record(run(), || "validator".into()) {
        t.check(good, || "((x,y),(x,y)) does not validate".into());
        t.check(fails == vec![(1, "(x)".to_string(), 1, true)], || format!("((x),(x)) failures {fails:?}"));
    }
    let probe = (|| -> Result<bool> {
        let base = Ring::polynomial(&["x"]);
        let r = base.quotient(vec![base.var(0).pow(2)])?;
        let p = spectrum::perfect_ring_triviality_probe(&r, &[Ideal::new(&r, vec![r.var(0)])?])?;
        Ok(p.consistent && p.entries[0].hom_nonzero)
    })();
    if let Some(ok) = t.record(probe, || "perfect-ring probe".into()) {
        t.check(ok, || "Hom(R/(x), R) = 0 over QQ[x]/(x^2)".into());
    }
    t.finish(8, "characteristic-sequence validator and perfect-ring probe")
}

fn membership_consistency(rng: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    let cases: Vec<(usize, Vec<Vec<Vec<&str>>>)> = vec![
        (2, vec![vec![vec!["x", "y"]], vec![vec!["x", "y"]]]),
        (2, vec![vec![vec!["x"]]]),
        (2, vec![vec![vec!["x"], vec!["y"]]]),
        (2, vec![vec![vec!["x"]], vec![vec!["x", "y"]]]),
        (3, vec![vec![vec!["x", "y", "z"]], vec![vec!["x", "y", "z"]], vec![vec!["x", "y", "z"]]]),
        (3, vec![vec![vec!["x"], vec!["y", "z"]], vec![vec!["y", "z"]]]),
    ];
    for (n, entries) in &cases {
        let r = poly_ring(*n);
        let Some(seq) = t.record(sequence(&r, entries), || format!("sequence {entries:?}")) else { continue };
        let Some(rep) = t.record(spectrum::validate_characteristic_sequence(&seq, 8), || format!("validate {entries:?}"))
        else {
            continue;
        };
        t.check(rep.valid, || format!("{entries:?} expected valid"));
        let mut modules = vec![("R".to_string(), FPModule::free(&r, 1))];
        let vars: Vec<String> = var_names(*n);
        for v in &vars {
            let i = Ideal::variables(&r, &[v.as_str()]);
            modules.push((format!("R/{}", i.format()), FPModule::cyclic(&i)));
        }
        modules.push(("R/(m)".into(), FPModule::cyclic(&Ideal::variables(&r, &vars.iter().map(|s| s.as_str()).collect::<Vec<_>>()))));
        for _ in 0..2 {
            let m = random_monomial(rng, *n, 2);
            let i = monomial_ideal(&r, &[m]);
            modules.push((format!("R/{}", i.format()), FPModule::cyclic(&i)));
        }
        for (name, m) in &modules {
            let what = || format!("{entries:?} on {name}");
            let Some(c) = t.record(membership_reductions(&seq, m), what) else { continue };
            t.check(c.tilt == c.cech_h && c.tilt == c.local_h, || format!("{}: tilting {c:?}", what()));
            t.check(c.cotilt == c.cech_coh && c.cotilt == c.local_coh, || format!("{}: cotilting {c:?}", what()));
        }
    }
    t.finish(9, "membership verdicts agree with Čech and local (co)homology reductions")
}

#[derive(Debug)]
#[allow(dead_code)]
struct Verdicts {
    tilt: bool,
    cech_h: bool,
    local_h: bool,
    cotilt: bool,
    cech_coh: bool,
    local_coh: bool,
}

/// Membership through Tor/Ext against the reductions to Čech and local
/// (co)homology vanishing for each basis ideal of `𝒢_i` in degrees `≤ i`.
fn membership_reductions(seq: &CharacteristicSequence, m: &FPModule) -> Result<Verdicts> {
    let tilt = spectrum::tilting_membership(seq, m)?.member;
    let cotilt = spectrum::cotilting_membership(seq, m)?.member;
    let mut v = Verdicts { tilt, cotilt, cech_h: true, local_h: true, cech_coh: true, local_coh: true };
    for (i, g) in seq.entries().iter().enumerate() {
        for ideal in g.basis() {
            v.cech_h &= towers::cech_homology_vanishes(ideal, m, i + 1, 0)?.vanishes();
            v.cech_coh &= towers::cech_cohomology_vanishes(ideal, m, i + 1)?.vanishes();
            v.local_h &= decided(towers::local_vanishing(ideal, m, i + 1, Side::Homology, 0)?)?;
            v.local_coh &= decided(towers::local_vanishing(ideal, m, i + 1, Side::Cohomology, 0)?)?;
        }
    }
    Ok(v)
}

fn decided(v: towers::VanishingVerdict) -> Result<bool> {
    match v.value {
        towers::Value3::Inconclusive => Err(Error::CertificateMismatch("local vanishing inconclusive on a valid sequence".into())),
        _ => Ok(v.vanishes()),
    }
}

const DETERMINISM_SESSION: &str = "ring R = QQ[x,y];\nideal I = (x,y) in R;\nideal J = (x) in R;\n\
module M = coker [[x, y]] in R;\nseq T = ((x,y),(x,y)) in R;\nseq U = ((x),(x)) in R;\n\
groebner I;\ngrade I R;\nkoszul I;\next J R 1;\ntor I M 1;\nsmodule I 2;\nthomason I <= J;\n\
validate T;\nvalidate U;\nmember-tilt T M;\nmember-cotilt T M;\nproreg I depth 3;\n\
cech-h J M 1;\ncech-coh I R 2;\nlocal-h I M 1;\n";

fn determinism(_: &mut ChaCha8Rng) -> CriterionReport {
    let mut t = Tally::new();
    let opts = RunOptions::default();
    let render = || -> std::result::Result<(String, String), String> {
        let s = Session::parse(DETERMINISM_SESSION).map_err(|e| e.to_string())?;
        let out = s.run_all(&opts);
        if let Some(bad) = out.iter().find(|r| r.status != Status::Ok) {
            return Err(format!("{}: {:?}", bad.command, bad.message));
        }
        Ok((serde_json::to_string(&out).expect("serializable"), s.serialize()))
    };
    match (render(), render()) {
        (Ok((a, sa)), Ok((b, _))) => {
            t.check(a == b, || "session JSON differs between runs".into());
            let again = Session::parse(&sa).map(|s| s.serialize());
            t.check(again.as_deref() == Ok(sa.as_str()), || "session text does not round-trip".into());
            let v: Value = serde_json::from_str(&a).expect("valid JSON");
            t.check(v[1]["payload"]["grade"] == 2, || "grade I R is not 2".into());
        }
        (Err(e), _) | (_, Err(e)) => t.check(false, || e),
    }
    match Session::parse("ring R = QQ[x,y];\nideal I = (x,,y) in R;") {
        Err(e) => t.check((e.code(), e.line, e.column) == ("parse-error", 2, 14), || format!("double comma reported as {e}")),
        Ok(_) => t.check(false, || "double comma accepted".into()),
    }
    t.finish(10, "deterministic session output and parse-error contract")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_seeded() {
        let a = run_suite(7, 5);
        let b = run_suite(7, 5);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.passed, "{:?}", a.failures);
    }
}
