use mlat::congruence::{con_m, id_saturated_family, is_id_saturated, sat_closure};
use mlat::duality::{dual_algebra, quantifier_spectrum, sigma_iso, MqSpace};
use mlat::lattice::{check_hom, up_set_lattice, validate_lattice};
use mlat::monadic::{enumerate_monadic, enumerate_quantifiers, simple_pair, validate_monadic, MonadicLattice};
use mlat::poset::{BinRelation, EquivRelation, FinitePoset, Relation};
use mlat::{ElementSet, Limits};
use proptest::prelude::*;

fn poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|(n, bits, perm)| {
                let mut gens = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            gens.push((perm[i], perm[j]));
                        }
                        k += 1;
                    }
                }
                FinitePoset::from_index_pairs(n, &gens).unwrap()
            })
    })
}

fn space(max: usize) -> impl Strategy<Value = MqSpace> {
    poset(max).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), proptest::collection::vec(0..n, n))
            .prop_map(|(p, labels)| MqSpace::unchecked(p, EquivRelation::from_labels(&labels).unwrap()).unwrap())
    })
}

fn relation(n: usize) -> impl Strategy<Value = BinRelation> {
    proptest::collection::vec(0..1u64 << n, n)
        .prop_map(move |rows| BinRelation::from_rows(rows.into_iter().map(|b| ElementSet::from_bits(n, b)).collect()).unwrap())
}

/// A poset with an m-lattice structure on its up-set lattice, chosen by index.
fn monadic(max: usize) -> impl Strategy<Value = MonadicLattice> {
    (poset(max), any::<prop::sample::Index>()).prop_map(|(p, idx)| {
        let all = enumerate_monadic(&up_set_lattice(&p), &Limits::default()).unwrap();
        all[idx.index(all.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closures_are_closure_operators(p in poset(6), a in 0..64u64, b in 0..64u64) {
        let n = p.len();
        let s = ElementSet::from_bits(n, a & ((1 << n) - 1));
        let t = s.union(ElementSet::from_bits(n, b & ((1 << n) - 1)));
        let up = p.up_set(s).unwrap();
        let down = p.down_set(s).unwrap();
        prop_assert_eq!(p.up_set(up).unwrap(), up);
        prop_assert_eq!(p.down_set(down).unwrap(), down);
        prop_assert!(s.is_subset(&up) && s.is_subset(&down));
        prop_assert!(up.is_subset(&p.up_set(t).unwrap()));
    }

    #[test]
    fn up_sets_form_a_sublattice(p in poset(5)) {
        let ups = p.all_up_sets();
        for a in &ups {
            for b in &ups {
                prop_assert!(ups.contains(&a.union(*b)));
                prop_assert!(ups.contains(&a.intersection(*b)));
            }
        }
        prop_assert!(ups.contains(&ElementSet::empty(p.len())));
        prop_assert!(ups.contains(&p.all()));
    }

    #[test]
    fn up_set_lattice_is_distributive_with_one_prime_filter_per_point(p in poset(5)) {
        let l = up_set_lattice(&p);
        prop_assert!(validate_lattice(&l).passes());
        prop_assert_eq!(l.prime_filters().unwrap().len(), p.len());
        let id: Vec<usize> = (0..l.len()).collect();
        prop_assert!(check_hom(&l, &l, &id).unwrap().is_lattice_hom());
    }

    #[test]
    fn prime_filters_are_principal_at_join_irreducibles(p in poset(5)) {
        let l = up_set_lattice(&p);
        let mut from_ji: Vec<ElementSet> = l.join_irreducibles().iter().map(|j| l.principal_filter(j)).collect();
        from_ji.sort();
        let found: Vec<ElementSet> = l.prime_filters().unwrap().into_iter().map(|f| f.members).collect();
        prop_assert_eq!(found, from_ji);
    }

    #[test]
    fn image_distributes_over_union(x in space(6), a in 0..64u64, b in 0..64u64) {
        let n = x.len();
        let s = ElementSet::from_bits(n, a & ((1 << n) - 1));
        let t = ElementSet::from_bits(n, b & ((1 << n) - 1));
        let e = x.eq();
        prop_assert_eq!(e.image(s.union(t)).unwrap(), e.image(s).unwrap().union(e.image(t).unwrap()));
    }

    #[test]
    fn composition_is_associative((r, s, t) in (1..=5usize).prop_flat_map(|n| (relation(n), relation(n), relation(n)))) {
        let left = r.compose(&s).unwrap().compose(&t).unwrap();
        let right = r.compose(&s.compose(&t).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn monadic_operations_fix_each_others_ranges(m in monadic(4)) {
        let l = m.lattice();
        let (nabla, delta) = (m.nabla(), m.delta());
        let nr = m.nabla_range();
        let dr = m.delta_range();
        prop_assert!(nr.contains(l.bottom()) && dr.contains(l.top()));
        for a in nr.iter() {
            for b in nr.iter() {
                prop_assert!(nr.contains(l.join(a, b)));
            }
            prop_assert_eq!(delta[a], a);
        }
        for a in dr.iter() {
            for b in dr.iter() {
                prop_assert!(dr.contains(l.meet(a, b)));
            }
            prop_assert_eq!(nabla[a], a);
        }
        for x in 0..l.len() {
            for y in 0..l.len() {
                if l.leq(x, y) {
                    prop_assert!(l.leq(nabla[x], nabla[y]) && l.leq(delta[x], delta[y]));
                }
            }
        }
    }

    #[test]
    fn simple_pair_is_recognized(p in poset(5)) {
        let l = up_set_lattice(&p);
        let (n, d) = simple_pair(&l).unwrap();
        prop_assert!(MonadicLattice::new(l, n, d).unwrap().is_simple_pair());
    }

    #[test]
    fn quantifiers_extend_to_m_lattices(p in poset(4), idx in any::<prop::sample::Index>()) {
        let l = up_set_lattice(&p);
        let qs = enumerate_quantifiers(&l);
        let nabla = &qs[idx.index(qs.len())];
        let s = quantifier_spectrum(&l, nabla).unwrap();
        prop_assert!(s.space.is_mq_space());
        let d = dual_algebra(&s.space).unwrap();
        // Carry △_E back to L along σ.
        let sigma: Vec<usize> = (0..l.len()).map(|a| d.index_of(s.sigma(a)).unwrap()).collect();
        let delta: Vec<usize> = (0..l.len())
            .map(|a| sigma.iter().position(|&i| i == d.algebra.delta()[sigma[a]]).unwrap())
            .collect();
        prop_assert!(validate_monadic(&l, nabla, &delta).unwrap().passes());
    }

    #[test]
    fn sigma_verifies(m in monadic(4)) {
        prop_assert!(sigma_iso(&m).is_ok());
    }

    #[test]
    fn saturated_closure_is_a_closure(x in space(5), a in 0..32u64, b in 0..32u64) {
        prop_assume!(x.is_mq_space());
        let n = x.len();
        let s = ElementSet::from_bits(n, a & ((1 << n) - 1));
        let t = s.union(ElementSet::from_bits(n, b & ((1 << n) - 1)));
        let c = sat_closure(&x, s);
        prop_assert!(s.is_subset(&c));
        prop_assert_eq!(sat_closure(&x, c), c);
        prop_assert!(is_id_saturated(&x, c));
        prop_assert!(c.is_subset(&sat_closure(&x, t)));
        let fam = id_saturated_family(&x, &Limits::default()).unwrap();
        prop_assert_eq!(fam.sets.contains(&s), c == s);
    }

    #[test]
    fn finite_e1_implies_mq1(x in space(5)) {
        let e1 = x.e1_failure().is_none();
        prop_assert_eq!(e1, x.is_mq_space());
    }

    #[test]
    fn congruences_match_the_oracle(m in monadic(4)) {
        prop_assume!(m.len() <= 12);
        let c = con_m(&m, &Limits::default()).unwrap();
        prop_assert_eq!(c.len(), c.family.len());
    }

    #[test]
    fn permuting_a_space_preserves_its_conditions(x in space(5), seed in any::<u64>()) {
        let n = x.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let y = x.permuted(&perm);
        prop_assert_eq!(x.is_mq_space(), y.is_mq_space());
        prop_assert_eq!(
            id_saturated_family(&x, &Limits::default()).unwrap().len(),
            id_saturated_family(&y, &Limits::default()).unwrap().len()
        );
    }
}
