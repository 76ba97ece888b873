mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tiltkit::complex::{ChainMap, FreeComplex};
use tiltkit::koszul::{self, KoszulData};
use tiltkit::matrix::FreeMap;
use tiltkit::module::{self, FPModule, ModuleMap};
use tiltkit::oracle::{self, GradedQuotient};
use tiltkit::spectrum::{self, CharacteristicSequence, GabrielBasis, ThomasonSet};
use tiltkit::towers::{self, PowerFunctor};
use tiltkit::{Ideal, Ring};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn hilbert(m: &FPModule, hi: i64) -> Vec<usize> {
    m.hilbert_function(-2, hi).expect("graded")
}

fn thomason(r: &Ring, pieces: &[Vec<Vec<u32>>]) -> ThomasonSet {
    ThomasonSet::new(r, pieces.iter().map(|g| monomial_ideal(r, g)).collect()).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn normal_form_is_idempotent((n, gens) in sized_gens(3, 3, 3), terms in polynomial(3, 5, 4)) {
        let r = ring(n);
        let i = monomial_ideal(&r, &gens);
        let terms: Vec<_> = terms.into_iter().map(|(c, e)| (c, e[..n].to_vec())).collect();
        let f = build_poly(&r, &terms);
        let nf = i.normal_form(&f);
        prop_assert_eq!(i.normal_form(&nf), nf.clone());
        prop_assert!(i.member(&f.sub(&nf)).unwrap());
    }

    #[test]
    fn monomial_membership_matches_divisibility((n, gens) in sized_gens(4, 4, 3), e in prop::collection::vec(0u32..=4, 4)) {
        let r = ring(n);
        let i = monomial_ideal(&r, &gens);
        let f = mono(&r, &e[..n]);
        prop_assert_eq!(i.member(&f).unwrap(), oracle::monomial_member(&f, &monomials(&gens)));
    }

    #[test]
    fn square_is_self_product((n, gens) in sized_gens(3, 3, 2)) {
        let r = ring(n);
        let i = monomial_ideal(&r, &gens);
        prop_assert!(i.power(2).unwrap().same_ideal(&i.product(&i).unwrap()).unwrap());
    }

    #[test]
    fn thomason_order_is_reflexive_and_transitive(
        a in prop::collection::vec(monomial_gens(3, 2, 2), 1..=2),
        b in prop::collection::vec(monomial_gens(3, 2, 2), 1..=2),
        c in prop::collection::vec(monomial_gens(3, 2, 2), 1..=2),
    ) {
        let r = ring(3);
        let (x, y, z) = (thomason(&r, &a), thomason(&r, &b), thomason(&r, &c));
        prop_assert!(x.contains(&x).unwrap());
        if x.contains(&y).unwrap() && y.contains(&z).unwrap() {
            prop_assert!(x.contains(&z).unwrap());
        }
        let ma: Vec<_> = a.iter().map(|g| monomials(g)).collect();
        let mb: Vec<_> = b.iter().map(|g| monomials(g)).collect();
        prop_assert_eq!(spectrum::thomason_contains(&x, &y).unwrap(), oracle::monomial_thomason_contains(3, &ma, &mb));
    }

    #[test]
    fn gabriel_basis_contains_products_and_overideals(basis in prop::collection::vec(monomial_gens(3, 2, 2), 1..=2), extra in exponent(3, 2)) {
        let r = ring(3);
        let ideals: Vec<Ideal> = basis.iter().map(|g| monomial_ideal(&r, g)).collect();
        let g = GabrielBasis::new(&r, ideals.clone()).unwrap();
        let prod = ideals.iter().skip(1).fold(ideals[0].clone(), |acc, i| acc.product(i).unwrap());
        prop_assert!(g.contains_ideal(&prod).unwrap());
        let bigger = ideals[0].sum(&monomial_ideal(&r, &[extra])).unwrap();
        prop_assert!(g.contains_ideal(&bigger).unwrap());
        prop_assert!(g.contains_ideal(&Ideal::unit(&r)).unwrap());
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn koszul_homology_matches_slice_oracle((n, gens) in sized_gens(3, 3, 2), quot in exponent(3, 2)) {
        let r = ring(n);
        let f: Vec<_> = gens.iter().map(|e| mono(&r, e)).collect();
        let q = &quot[..n];
        let qgens = if q.iter().any(|&x| x > 0) { vec![quot[..n].to_vec()] } else { vec![] };
        let m = cyclic(&r, &qgens);
        let k = KoszulData::from_generators(&r, f.clone());
        let mut oracle_q = GradedQuotient::new(r.field(), n, qgens.iter().map(|e| mono(&r, e)).collect());
        for i in 0..=f.len() {
            let engine = hilbert(k.homology(&m, i).unwrap().module(), 5);
            let expect = oracle::koszul_homology_dims(&mut oracle_q, &f, i, -2..=5);
            prop_assert_eq!(&engine, &expect, "H_{}", i);
            let engine = hilbert(k.cohomology(&m, i).unwrap().module(), 5);
            let expect = oracle::koszul_cohomology_dims(&mut oracle_q, &f, i, -2..=5);
            prop_assert_eq!(&engine, &expect, "H^{}", i);
        }
    }

    #[test]
    fn koszul_self_duality((n, gens) in sized_gens(3, 3, 2)) {
        let r = ring(n);
        let f: Vec<_> = gens.iter().map(|e| mono(&r, e)).collect();
        let c = f.len();
        let shift: i64 = f.iter().map(|p| p.total_degree().unwrap() as i64).sum();
        let m = FPModule::free(&r, 1);
        let k = KoszulData::from_generators(&r, f);
        for i in 0..=c {
            let hom = k.homology(&m, i).unwrap().module().hilbert_function(-12, 12).unwrap();
            let coh = k.cohomology(&m, c - i).unwrap().module().hilbert_function(-12 - shift, 12 - shift).unwrap();
            prop_assert_eq!(hom, coh, "H_{} against H^{}", i, c - i);
        }
    }

    #[test]
    fn tor_is_symmetric((n, a) in sized_gens(3, 2, 2), b in monomial_gens(3, 2, 2)) {
        let r = ring(n);
        let b: Vec<Vec<u32>> = b.into_iter().map(|e| e[..n].to_vec()).filter(|e| e.iter().any(|&x| x > 0)).collect();
        let (m, nmod) = (cyclic(&r, &a), cyclic(&r, &b));
        for i in 0..=n {
            let x = module::tor(&m, &nmod, i, 8).unwrap();
            let y = module::tor(&nmod, &m, i, 8).unwrap();
            prop_assert_eq!(hilbert(x.module(), 8), hilbert(y.module(), 8), "Tor_{}", i);
        }
    }

    #[test]
    fn ext_tor_ignore_generator_order((n, gens) in sized_gens(3, 3, 2), seed in any::<u64>(), quot in exponent(3, 1)) {
        let r = ring(n);
        let mut perm = gens.clone();
        let len = perm.len();
        perm.rotate_left((seed as usize) % len);
        if seed & 1 == 1 {
            perm.reverse();
        }
        let q = quot[..n].to_vec();
        let coeff = if q.iter().any(|&x| x > 0) { cyclic(&r, &[q]) } else { FPModule::free(&r, 1) };
        let (a, b) = (cyclic(&r, &gens), cyclic(&r, &perm));
        for i in 0..=n {
            let x = module::ext(&a, &coeff, i, 8).unwrap();
            let y = module::ext(&b, &coeff, i, 8).unwrap();
            prop_assert_eq!(hilbert(x.module(), 6), hilbert(y.module(), 6), "Ext^{}", i);
            let x = module::tor(&a, &coeff, i, 8).unwrap();
            let y = module::tor(&b, &coeff, i, 8).unwrap();
            prop_assert_eq!(hilbert(x.module(), 6), hilbert(y.module(), 6), "Tor_{}", i);
        }
    }
}

/// Random `h_k: S_k -> T_{k+1}` with entries in `{0, ±x_v}`.
fn homotopy(r: &Ring, s: &FreeComplex, t: &FreeComplex, upto: usize, seed: u64) -> Vec<FreeMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..=upto)
        .map(|k| {
            let (rows, cols) = (t.rank(k as i64 + 1), s.rank(k as i64));
            let entries = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| match rng.gen_range(0..4) {
                            0 => r.var(rng.gen_range(0..r.nvars())),
                            1 => r.var(rng.gen_range(0..r.nvars())).neg(),
                            _ => r.zero(),
                        })
                        .collect()
                })
                .collect();
            FreeMap::new(r, rows, cols, entries).unwrap()
        })
        .collect()
}

fn add(a: &FreeMap, b: &FreeMap) -> FreeMap {
    let entries = (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j).add(b.get(i, j))).collect()).collect();
    FreeMap::new(a.ring(), a.rows(), a.cols(), entries).unwrap()
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn tor_tower_maps_ignore_the_chosen_lift((n, gens) in sized_gens(2, 2, 2), i in 0usize..=2, seed in any::<u64>()) {
        let r = ring(n);
        let ideal = monomial_ideal(&r, &gens);
        let m = cyclic(&r, &[vec![1; n]]);
        let (tower, lifts) = towers::ideal_power_tower_with_lifts(&ideal, &m, i, 3, PowerFunctor::Tor).unwrap();
        for j in 0..2 {
            let (src_res, tgt_res) = (&lifts.resolutions[j + 1], &lifts.resolutions[j]);
            let s = FreeComplex::from_resolution(src_res);
            let t = FreeComplex::from_resolution(tgt_res);
            let h = homotopy(&r, &s, &t, i, seed ^ j as u64);
            let lift = &lifts.lifts[j];
            let maps: Vec<FreeMap> = (0..=i)
                .map(|k| {
                    let mut f = add(&lift.component(k as i64), &t.differential(k as i64 + 1).compose(&h[k]).unwrap());
                    if k > 0 {
                        f = add(&f, &h[k - 1].compose(&s.differential(k as i64)).unwrap());
                    }
                    f
                })
                .collect();
            let perturbed = ChainMap::new(s.clone(), t.clone(), 0, maps).unwrap();
            let from = src_res.tor(&m, i).unwrap();
            let to = tgt_res.tor(&m, i).unwrap();
            let g = perturbed.induced_tensor(&from, &to, &m, i as i64).unwrap();
            prop_assert!(same_map(&g, &tower.maps()[j]), "level {} map changed under homotopy", j);
        }
    }

    #[test]
    fn membership_is_additive(seq_gens in prop::collection::vec(monomial_gens(2, 2, 1), 1..=2), a in monomial_gens(2, 2, 2), b in monomial_gens(2, 2, 2)) {
        let r = ring(2);
        let entries = seq_gens.iter().map(|g| GabrielBasis::new(&r, vec![monomial_ideal(&r, g)]).unwrap()).collect();
        let seq = CharacteristicSequence::new(&r, entries).unwrap();
        if !spectrum::validate_characteristic_sequence(&seq, 8).unwrap().valid {
            return Ok(());
        }
        let (ma, mb) = (cyclic(&r, &a), cyclic(&r, &b));
        let sum = direct_sum(&ma, &mb);
        for tilt in [true, false] {
            let member = |m: &FPModule| {
                if tilt { spectrum::tilting_membership(&seq, m) } else { spectrum::cotilting_membership(&seq, m) }
                    .unwrap()
                    .member
            };
            prop_assert_eq!(member(&sum), member(&ma) && member(&mb));
        }
    }

    #[test]
    fn s_module_has_pd_n(n in 1usize..=3, k in 1usize..=3) {
        let r = ring(n);
        let ideal = Ideal::variables(&r, &NAMES[..n]);
        let n_check = k.min(n);
        let report = koszul::s_module_pd_check(&ideal, n_check, 8).unwrap();
        prop_assert!(report.hypothesis_holds);
        prop_assert_eq!(report.verdict.tail_exact, Some(true));
        prop_assert_eq!(report.verdict.pd_equals_n, Some(true));
    }

    #[test]
    fn comparison_map_is_iso_under_hypothesis((n, gens) in sized_gens(3, 3, 2), k in 0usize..=2) {
        let r = ring(n);
        let ideal = monomial_ideal(&r, &gens);
        let m = FPModule::free(&r, 1);
        let (report, map): (_, ModuleMap) = koszul::compare_ext_koszul(&ideal, &m, k).unwrap();
        if report.hypothesis_holds {
            prop_assert!(report.verdict.iso);
            prop_assert!(map.is_iso());
        }
    }
}
