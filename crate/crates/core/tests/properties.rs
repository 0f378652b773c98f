//! Property suites for the algebraic laws of the calculus.

use finconv_core::bitmat::BitMatrix;
use finconv_core::carrier::{Carrier, SetMap};
use finconv_core::filters::{pullback, pushforward, FiniteFilter};
use finconv_core::spaces::{
    coproduct, final_structure, lattice_join, lattice_meet, product, quotient, reflect_top,
    PseudoSpace, SpaceMap,
};
use proptest::prelude::*;

fn carrier(n: usize, prefix: char) -> Carrier {
    Carrier::new((0..n).map(|i| format!("{prefix}{i}"))).expect("labels distinct")
}

fn space_from_bits(n: usize, bits: &[bool], prefix: char) -> PseudoSpace {
    let mut conv = BitMatrix::identity(n);
    let mut k = 0;
    for a in 0..n {
        for x in 0..n {
            if a != x {
                if bits[k % bits.len().max(1)] {
                    conv.set(a, x, true);
                }
                k += 1;
            }
        }
    }
    PseudoSpace::from_relation(carrier(n, prefix), conv)
}

prop_compose! {
    fn small_space(prefix: char)(n in 1..=4usize)
        (n in Just(n), bits in prop::collection::vec(any::<bool>(), (n * n).max(1)))
        -> PseudoSpace
    {
        space_from_bits(n, &bits, prefix)
    }
}

prop_compose! {
    fn set_map_instance()(n in 1..=4usize, m in 1..=3usize)
        (n in Just(n), m in Just(m), targets in prop::collection::vec(0..3usize, 4))
        -> SetMap
    {
        let dom = carrier(n, 'a');
        let cod = carrier(m, 'q');
        let map = (0..n).map(|i| targets[i] % m).collect();
        SetMap::from_indices(dom, cod, map).expect("assignment in range")
    }
}

proptest! {
    /// Pushforward along a composite equals composed pushforwards, and
    /// ultrafilters stay ultrafilters.
    #[test]
    fn pushforward_functoriality(
        g in set_map_instance(),
        second in prop::collection::vec(0..3usize, 3),
        k in 1..=3usize,
        core_bits in prop::collection::vec(any::<bool>(), 4),
    ) {
        let mid = g.cod().clone();
        let cod = carrier(k, 'r');
        let f = SetMap::from_indices(
            mid.clone(),
            cod,
            (0..mid.len()).map(|i| second[i % second.len()] % k).collect(),
        ).expect("assignment in range");

        let n = g.dom().len();
        let core: Vec<usize> = (0..n).filter(|&i| core_bits[i]).collect();
        let core = if core.is_empty() { vec![0] } else { core };
        let filter = FiniteFilter::from_core(g.dom().clone(), core).expect("nonempty");

        let composite = f.compose(&g).expect("composable");
        let lhs = pushforward(&composite, &filter).expect("carriers line up");
        let rhs = pushforward(&f, &pushforward(&g, &filter).expect("ok")).expect("ok");
        prop_assert_eq!(&lhs, &rhs);
        if filter.is_ultrafilter() {
            prop_assert!(lhs.is_ultrafilter());
        }
    }

    /// Whenever the pullback is defined, the original filter is contained in
    /// the pushforward of the pullback; ultrafilters give equality and then
    /// the image of the domain belongs to the filter.
    #[test]
    fn pullback_lemma(
        f in set_map_instance(),
        core_bits in prop::collection::vec(any::<bool>(), 3),
    ) {
        let k = f.cod().len();
        let core: Vec<usize> = (0..k).filter(|&i| core_bits[i]).collect();
        let core = if core.is_empty() { vec![0] } else { core };
        let filter = FiniteFilter::from_core(f.cod().clone(), core).expect("nonempty");

        if let Some(pulled) = pullback(&f, &filter).expect("carriers line up") {
            let back = pushforward(&f, &pulled).expect("carriers line up");
            prop_assert!(filter.is_contained_in(&back));
            if filter.is_ultrafilter() {
                prop_assert_eq!(&back, &filter);
                let image = f.image(&(0..f.dom().len()).collect::<Vec<_>>());
                prop_assert!(filter.contains(&image));
            }
        }
    }

    /// Coarser principal filters converge wherever finer ones do: shrinking
    /// the core can only help convergence.
    #[test]
    fn filter_refinement_monotone(
        s in small_space('a'),
        core_bits in prop::collection::vec(any::<bool>(), 4),
        x in 0..4usize,
    ) {
        let n = s.len();
        let x = x % n;
        let core: Vec<usize> = (0..n).filter(|&i| core_bits[i]).collect();
        let core = if core.is_empty() { vec![0] } else { core };
        let big = FiniteFilter::from_core(s.carrier().clone(), core.clone()).expect("nonempty");
        let small = FiniteFilter::from_core(s.carrier().clone(), vec![core[0]]).expect("nonempty");
        if s.converges(&big, x).expect("same carrier") {
            prop_assert!(s.converges(&small, x).expect("same carrier"));
        }
    }

    /// Every construction yields a reflexive structure.
    #[test]
    fn constructions_are_reflexive(
        x in small_space('a'),
        y in small_space('u'),
        target in 0..3usize,
    ) {
        prop_assert!(product(&x, &y).relation().is_reflexive());
        prop_assert!(coproduct(&[&x, &y]).relation().is_reflexive());
        prop_assert!(reflect_top(&x).relation().is_reflexive());

        let k = (target % x.len()) + 1;
        let q = SetMap::from_indices(
            x.carrier().clone(),
            carrier(k, 'q'),
            (0..x.len()).map(|i| i % k).collect(),
        ).expect("assignment in range");
        prop_assert!(quotient(&x, &q).expect("surjective").relation().is_reflexive());
    }

    /// Meet and join bracket their arguments in the structure lattice and
    /// are commutative.
    #[test]
    fn lattice_laws(bits_a in prop::collection::vec(any::<bool>(), 16),
                    bits_b in prop::collection::vec(any::<bool>(), 16),
                    n in 1..=4usize) {
        let a = space_from_bits(n, &bits_a, 'a');
        let b = PseudoSpace::from_relation(
            a.carrier().clone(),
            space_from_bits(n, &bits_b, 'a').relation().clone(),
        );
        let c = a.carrier().clone();
        let meet = lattice_meet(c.clone(), &[&a, &b]).expect("same carrier");
        let join = lattice_join(c.clone(), &[&a, &b]).expect("same carrier");
        prop_assert!(meet.relation().is_subset(a.relation()));
        prop_assert!(meet.relation().is_subset(b.relation()));
        prop_assert!(a.relation().is_subset(join.relation()));
        prop_assert!(b.relation().is_subset(join.relation()));
        prop_assert_eq!(meet, lattice_meet(c.clone(), &[&b, &a]).expect("same carrier"));
        prop_assert_eq!(join, lattice_join(c, &[&b, &a]).expect("same carrier"));
    }

    /// The reflector is idempotent and monotone, and the identity into the
    /// reflection is continuous.
    #[test]
    fn reflector_laws(x in small_space('a'), extra in prop::collection::vec(any::<bool>(), 16)) {
        let rx = reflect_top(&x);
        prop_assert_eq!(&reflect_top(&rx), &rx);
        prop_assert!(x.relation().is_subset(rx.relation()));

        let mut bigger = x.relation().clone();
        let n = x.len();
        for a in 0..n {
            for b in 0..n {
                if extra[(a * n + b) % extra.len()] {
                    bigger.set(a, b, true);
                }
            }
        }
        let y = PseudoSpace::from_relation(x.carrier().clone(), bigger);
        prop_assert!(rx.relation().is_subset(reflect_top(&y).relation()));
    }

    /// Continuity of a raw map agrees with the literal edge quantifier.
    #[test]
    fn continuity_matches_edge_quantifier(
        x in small_space('a'),
        y in small_space('u'),
        targets in prop::collection::vec(0..4usize, 4),
    ) {
        let assignment: Vec<usize> = (0..x.len()).map(|i| targets[i] % y.len()).collect();
        let f = SpaceMap::from_indices(x.clone(), y.clone(), assignment.clone())
            .expect("assignment in range");
        let mut literal = true;
        for a in 0..x.len() {
            for p in 0..x.len() {
                if x.conv(a, p) && !y.conv(assignment[a], assignment[p]) {
                    literal = false;
                }
            }
        }
        prop_assert_eq!(f.is_continuous(), literal);
    }

    /// A quotient along the identity assignment recovers the space, and the
    /// final structure along an isomorphic relabeling is an isomorphism.
    #[test]
    fn quotient_unit_law(x in small_space('a')) {
        let id = SetMap::identity(x.carrier().clone());
        prop_assert_eq!(&quotient(&x, &id).expect("identity is surjective"), &x);
        let fin = final_structure(x.carrier().clone(), &[(&x, &id)]);
        prop_assert_eq!(&fin, &x);
    }
}
