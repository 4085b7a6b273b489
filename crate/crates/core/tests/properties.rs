//! Randomized properties of the library on small groups built from random
//! cocycles: bilinear part + carries + coboundary.

use orbitkit::lazard::{group_cocycle, lemma_identities, lie_cocycles, rename};
use orbitkit::{
    burnside_table, group_of, lie_ring_of, match_tables, verify, Catalog, Class2Group, Cocycle, FinAbGroup, GroupSpec,
    OneChain, OrbitMethod, Suite,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C_SHAPES: &[&[u64]] = &[&[3], &[9], &[3, 3], &[5], &[3, 9], &[5, 5], &[7]];
const A_SHAPES: &[&[u64]] = &[&[3], &[9], &[5], &[3, 3]];

fn random_cocycle(seed: u64) -> Cocycle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = FinAbGroup::new(C_SHAPES[rng.gen_range(0..C_SHAPES.len())].to_vec()).unwrap();
    let a = FinAbGroup::new(A_SHAPES[rng.gen_range(0..A_SHAPES.len())].to_vec()).unwrap();
    let (kc, ka) = (c.rank(), a.rank());
    let mut matrix = vec![vec![vec![0i64; ka]; kc]; kc];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for (t, v) in cell.iter_mut().enumerate() {
                let g = num_integer::gcd(c.moduli()[i], c.moduli()[j]);
                let target = a.moduli()[t];
                *v = (target / num_integer::gcd(target, g)) as i64 * rng.gen_range(0..target as i64);
            }
        }
    }
    let mut psi = Cocycle::from_bilinear(&c, &a, &matrix).unwrap();
    for axis in 0..kc {
        let value = a.element_at(rng.gen_range(0..a.size()));
        psi = psi.add(&Cocycle::carry(&c, &a, axis, &value));
    }
    psi.add_coboundary(&OneChain::random(&c, &a, &mut rng, false))
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generated_cocycles_are_valid(seed in any::<u64>()) {
        prop_assert!(random_cocycle(seed).is_valid());
    }

    #[test]
    fn lie_cocycles_round_trip(seed in any::<u64>()) {
        let psi = random_cocycle(seed);
        let (phi, eta) = lie_cocycles(&psi).unwrap();
        prop_assert!(phi.is_symmetric() && phi.is_valid());
        prop_assert!(eta.is_valid());
        prop_assert_eq!(group_cocycle(&phi, &eta).unwrap(), psi);
    }

    #[test]
    fn normal_forms_are_cohomologous_and_shaped(seed in any::<u64>()) {
        let psi = random_cocycle(seed);
        let centered = psi.center();
        prop_assert!(centered.cocycle.is_centered());
        prop_assert_eq!(&psi.add_coboundary(&centered.chain), &centered.cocycle);
        let equalized = psi.equalize().unwrap();
        prop_assert!(equalized.cocycle.is_centered() && equalized.cocycle.is_equalized());
        prop_assert_eq!(&psi.add_coboundary(&equalized.chain), &equalized.cocycle);
    }

    #[test]
    fn normal_form_properties_transfer_to_lie_cocycles(seed in any::<u64>()) {
        let psi = random_cocycle(seed);
        for candidate in [psi.clone(), psi.center().cocycle, psi.equalize().unwrap().cocycle] {
            let (phi, eta) = lie_cocycles(&candidate).unwrap();
            prop_assert_eq!(phi.is_centered(), candidate.is_centered());
            prop_assert_eq!(phi.is_equalized(), candidate.is_equalized());
            prop_assert_eq!(eta.is_nondegenerate(), candidate.is_nondegenerate());
        }
    }

    #[test]
    fn renaming_carries_one_group_onto_the_other(seed in any::<u64>()) {
        let psi = random_cocycle(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let q = OneChain::random(psi.c(), psi.a(), &mut rng, true);
        let b = Class2Group::new(psi.clone()).unwrap();
        let shifted = Class2Group::new(psi.add_coboundary(&q)).unwrap();
        let (ring, ring2) = (lie_ring_of(&b).unwrap(), lie_ring_of(&shifted).unwrap());
        let a = b.a();
        let elems: Vec<_> = b.elements().collect();
        for _ in 0..200 {
            let x = &elems[rng.gen_range(0..elems.len())];
            let y = &elems[rng.gen_range(0..elems.len())];
            let (rx, ry) = (rename(a, &q, x), rename(a, &q, y));
            prop_assert_eq!(shifted.mul(&rx, &ry), rename(a, &q, &b.mul(x, y)));
            prop_assert_eq!(ring2.add(&rx, &ry), rename(a, &q, &ring.add(x, y)));
            prop_assert_eq!(ring2.bracket(&rx, &ry), rename(a, &q, &ring.bracket(x, y)));
        }
    }

    #[test]
    fn group_and_ring_functors_are_inverse(seed in any::<u64>()) {
        let b = Class2Group::new(random_cocycle(seed)).unwrap();
        let ring = lie_ring_of(&b).unwrap();
        let back = group_of(&ring).unwrap();
        prop_assert_eq!(back.mul_table().unwrap(), b.mul_table().unwrap());
        prop_assert_eq!(lie_ring_of(&back).unwrap(), ring);
        prop_assert!(lemma_identities(&b, usize::MAX, 0, 0).is_ok());
    }

    #[test]
    fn additive_coordinates_are_a_group_isomorphism(seed in any::<u64>()) {
        let b = Class2Group::new(random_cocycle(seed)).unwrap();
        let method = OrbitMethod::new(&b).unwrap();
        let (ring, additive) = (method.ring(), method.additive());
        prop_assert_eq!(additive.group().order(), b.order());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let elems: Vec<_> = b.elements().collect();
        for x in &elems {
            prop_assert_eq!(&additive.from_coords(&additive.to_coords(x)), x);
            let y = &elems[rng.gen_range(0..elems.len())];
            let sum = additive.group().add(&additive.to_coords(x), &additive.to_coords(y));
            prop_assert_eq!(additive.to_coords(&ring.add(x, y)), sum);
        }
    }

    #[test]
    fn coadjoint_action_is_a_left_action(seed in any::<u64>()) {
        let b = Class2Group::new(random_cocycle(seed)).unwrap();
        let method = OrbitMethod::new(&b).unwrap();
        let chars: Vec<_> = method.characters().collect();
        let elems: Vec<_> = b.elements().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let x = &elems[rng.gen_range(0..elems.len())];
            let y = &elems[rng.gen_range(0..elems.len())];
            let chi = &chars[rng.gen_range(0..chars.len())];
            prop_assert_eq!(method.coad(&b.mul(x, y), chi), method.coad(x, &method.coad(y, chi)));
            prop_assert!(method.coad_by_definition_matches(x, chi));
        }
    }

    #[test]
    fn orbit_table_is_a_character_table(seed in any::<u64>()) {
        let b = Class2Group::new(random_cocycle(seed)).unwrap();
        let method = OrbitMethod::new(&b).unwrap();
        let report = method.duality_count_check().unwrap();
        prop_assert_eq!(report.coad_orbits, report.conjugacy_classes);
        let table = method.character_table().unwrap();
        prop_assert!(table.first_orthogonality_violation().is_none());
        prop_assert!(table.degree_sum_matches());
        prop_assert!(table.rows_distinct());
        for orbit in &table.orbits {
            prop_assert!(method.stabilizer_lemma_holds(orbit));
        }
    }

    #[test]
    fn spec_export_round_trips(seed in any::<u64>()) {
        let b = Class2Group::new(random_cocycle(seed)).unwrap();
        let json = GroupSpec::from_group(&b).to_json();
        let rebuilt = GroupSpec::from_json(&json).unwrap().build().unwrap();
        prop_assert_eq!(rebuilt.mul_table().unwrap(), b.mul_table().unwrap());
    }
}

#[test]
fn oracle_agrees_on_random_small_groups() {
    for seed in 0..6 {
        let b = Class2Group::new(random_cocycle(seed)).unwrap();
        let table = OrbitMethod::new(&b).unwrap().character_table().unwrap();
        let oracle = burnside_table(&b, seed).unwrap();
        let report = match_tables(&table, &oracle).unwrap();
        assert!(report.max_deviation < 1e-6, "seed {seed}: {}", report.max_deviation);
    }
}

#[test]
fn full_verification_passes_on_catalog_groups() {
    for g in Catalog::listing().into_iter().filter(|g| g.order() <= 125) {
        let report = verify(&g.build().unwrap(), Suite::All, 3);
        let failures: Vec<_> = report.failures().map(|c| c.name).collect();
        assert!(report.passed, "{g}: {failures:?}");
    }
}

#[test]
fn verification_is_deterministic() {
    let b = Catalog::heisenberg(3).unwrap();
    assert_eq!(verify(&b, Suite::All, 9).to_json(), verify(&b, Suite::All, 9).to_json());
}
