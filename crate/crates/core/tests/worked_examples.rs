use mlcheck_core::classify::{
    self, check_one_absorbing, classify_element, is_one_absorbing, is_primary, is_prime, is_two_absorbing,
    min_primes, principal_status, profile, radical, Failure,
};
use mlcheck_core::constructions::{
    direct_product, divisor_lattice, field, flat_diamond, localize, localize_at_prime, quotient, three_chain,
};
use mlcheck_core::factor::{
    classify_factorization_lattice, factor_closure, factorization, local_domain_equivalences,
    local_tafl_characterization, oafl_characterization, prufer_zpi_equivalence, ClassClosures, FactorClass,
};
use mlcheck_core::ring::{build_ring, ideal_lattice, ring_zn, RingPresentation};
use mlcheck_core::{Axiom, Elem, Lattice, LatticeSpec};

fn at(l: &Lattice, name: &str) -> Elem {
    l.lookup(name).unwrap_or_else(|| panic!("no element {name}"))
}

fn names(l: &Lattice, xs: impl IntoIterator<Item = Elem>) -> Vec<String> {
    let mut v: Vec<String> = xs.into_iter().map(|x| l.name(x)).collect();
    v.sort();
    v
}

fn local_ring() -> Lattice {
    let p = RingPresentation::new(4, vec![0, 0, 1]).with_relation(vec![0, 2]);
    ideal_lattice(&build_ring(&p).unwrap()).unwrap().lattice
}

#[test]
fn order_and_arithmetic() {
    let d12 = divisor_lattice(12).unwrap();
    let fd = flat_diamond();
    assert_eq!(d12.join([at(&d12, "4"), at(&d12, "6")]), at(&d12, "2"));
    assert_eq!(d12.meet([at(&d12, "2"), at(&d12, "3")]), at(&d12, "6"));
    assert_eq!(fd.join([at(&fd, "b"), at(&fd, "c")]), at(&fd, "d"));
    assert_eq!(fd.meet([at(&fd, "b"), at(&fd, "c")]), at(&fd, "a"));
    assert_eq!(fd.join([]), fd.bottom());
    assert_eq!(fd.meet([]), fd.top());
    assert_eq!(d12.residual(at(&d12, "4"), at(&d12, "2")), at(&d12, "2"));
    assert_eq!(fd.residual(at(&fd, "c"), at(&fd, "b")), at(&fd, "d"));
    for x in fd.elements() {
        assert_eq!(fd.residual(x, fd.top()), x);
    }
    assert_eq!(fd.stable_power(at(&fd, "d")), (2, at(&fd, "a")));
    assert_eq!(fd.stable_power(fd.top()), (1, fd.top()));
    let d8 = divisor_lattice(8).unwrap();
    assert_eq!(d8.stable_power(at(&d8, "2")), (3, at(&d8, "8")));
}

#[test]
fn validation_outcomes() {
    let fd = flat_diamond();
    assert_eq!(fd.size(), 6);
    assert_eq!(field().size(), 2);
    let bad = LatticeSpec {
        size: 3,
        order: vec![(0, 1), (1, 2)],
        mul: vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 2]],
        names: None,
    };
    let report = Lattice::validate(&bad).unwrap_err();
    assert!(report.violates(Axiom::Monotonicity) || report.violates(Axiom::Distributivity));
    assert!(report.violates(Axiom::ProductBelowMeet));
}

#[test]
fn canonical_forms() {
    let fd = flat_diamond();
    let shuffled = fd.relabel(&[3, 5, 0, 2, 1, 4]);
    assert_eq!(fd.canonical_form().certificate(), shuffled.canonical_form().certificate());
    assert!(!fd.is_isomorphic(&divisor_lattice(12).unwrap()));
    assert!(!three_chain(true).is_isomorphic(&three_chain(false)));
}

#[test]
fn flat_diamond_elements() {
    let fd = flat_diamond();
    let primes = classify::primes(&fd);
    assert_eq!(names(&fd, primes), ["0", "d"]);
    let b = at(&fd, "b");
    assert!(!is_prime(&fd, b) && is_primary(&fd, b) && is_two_absorbing(&fd, b) && is_one_absorbing(&fd, b));
    let oa = fd.elements().filter(|&x| is_one_absorbing(&fd, x));
    assert_eq!(names(&fd, oa), ["0", "a", "b", "c", "d"]);
    let st = principal_status(&fd, b);
    assert!(st.weak_meet && !st.weak_join);
    assert_eq!(radical(&fd, b), at(&fd, "d"));
    assert_eq!(min_primes(&fd, at(&fd, "a")), vec![at(&fd, "d")]);
    let c = classify_element(&fd, b);
    assert!(c.is_proper && !c.is_prime && c.is_primary && c.is_two_absorbing && c.is_one_absorbing);
    assert!(!c.is_principal() && !c.is_nilpotent && !c.is_comparable);
    assert_eq!(c.primary_radical, Some(at(&fd, "d")));
}

#[test]
fn divisor_lattice_elements() {
    let d12 = divisor_lattice(12).unwrap();
    assert_eq!(names(&d12, d12.elements()), ["1", "12", "2", "3", "4", "6"]);
    assert!(!is_prime(&d12, at(&d12, "4")));
    assert!(!is_primary(&d12, at(&d12, "6")));
    assert_eq!(
        classify::check_two_absorbing(&d12, at(&d12, "12")).map_err(|f| matches!(f, Failure::Triple(..))),
        Err(true)
    );
    let (two, three, twelve) = (at(&d12, "2"), at(&d12, "3"), at(&d12, "12"));
    // 2 * 2 * 3 lands in (12) with no pair product in it.
    assert!(d12.leq(d12.product([two, two, three]), twelve));
    assert!(!d12.leq(d12.mul(two, two), twelve) && !d12.leq(d12.mul(two, three), twelve));
    for x in d12.elements() {
        let st = principal_status(&d12, x);
        assert!(st.meet && st.join && st.weak_meet && st.weak_join);
    }
    assert_eq!(radical(&d12, twelve), at(&d12, "6"));
    assert_eq!(names(&d12, min_primes(&d12, twelve)), ["2", "3"]);
    for p in classify::primes(&d12) {
        assert_eq!(min_primes(&d12, p), vec![p]);
        assert!(is_primary(&d12, p));
    }

    let d240 = divisor_lattice(240).unwrap();
    assert_eq!(d240.size(), 20);
    let (fifteen, eight) = (at(&d240, "15"), at(&d240, "8"));
    assert!(is_two_absorbing(&d240, fifteen) && !is_one_absorbing(&d240, fifteen));
    assert!(is_primary(&d240, eight) && !is_one_absorbing(&d240, eight));
    let (a, b, c) = (at(&d240, "3"), at(&d240, "2"), at(&d240, "5"));
    assert!(d240.leq(d240.product([a, b, c]), fifteen));
    assert!(!d240.leq(d240.mul(a, b), fifteen) && !d240.leq(c, fifteen));
    let two = at(&d240, "2");
    assert!(d240.leq(d240.product([two, two, two]), eight) && !d240.leq(d240.mul(two, two), eight));
    assert!(check_one_absorbing(&d240, eight).is_err());

    let d8 = divisor_lattice(8).unwrap();
    let c = classify_element(&d8, at(&d8, "2"));
    assert!(c.is_prime && c.is_maximal && c.is_one_absorbing && c.is_two_absorbing && c.is_primary);
    assert!(c.is_principal() && c.is_nilpotent && c.is_comparable);
    assert_eq!(divisor_lattice(13).unwrap().size(), 2);
}

#[test]
fn top_conventions() {
    for l in [field(), flat_diamond(), divisor_lattice(12).unwrap()] {
        let c = classify_element(&l, l.top());
        assert!(!c.is_proper && !c.is_prime && !c.is_primary && !c.is_two_absorbing && !c.is_one_absorbing);
        assert_eq!(c.radical, l.top());
        let st = principal_status(&l, l.top());
        assert!(st.meet && st.join && st.weak_meet && st.weak_join);
    }
}

#[test]
fn profiles() {
    let p = profile(&flat_diamond());
    assert!(p.is_quasi_local && p.is_domain && !p.is_principally_generated && !p.is_field);
    assert_eq!(p.maximal, Some(4));
    assert_eq!(p.dimension, 1);
    assert_eq!(p.principal_elements, vec![0, 5]);

    let p = profile(&field());
    assert!(p.is_field && p.is_principally_generated && p.is_domain);
    assert_eq!(p.dimension, 0);
    assert!(classify_factorization_lattice(&field()).is_zpi());

    let d12 = divisor_lattice(12).unwrap();
    let p = profile(&d12);
    assert_eq!(names(&d12, p.maximal_elements.clone()), ["2", "3"]);
    assert_eq!(p.dimension, 0);
    assert!(p.is_principally_generated && p.is_prufer && !p.is_quasi_local);
    assert_eq!(p.jacobson, at(&d12, "6"));
}

#[test]
fn quotients_and_localizations() {
    let d12 = divisor_lattice(12).unwrap();
    let (q, log) = quotient(&d12, at(&d12, "6")).unwrap();
    assert!(q.is_isomorphic(&divisor_lattice(6).unwrap()));
    assert_eq!(log.map[at(&d12, "12")], q.bottom());

    let fd = flat_diamond();
    let (q, _) = quotient(&fd, at(&fd, "a")).unwrap();
    assert_eq!(q.size(), 5);
    for x in q.proper_elements() {
        for y in q.proper_elements() {
            assert_eq!(q.mul(x, y), q.bottom());
        }
    }

    let (same, _) = localize(&fd, &[fd.top()]).unwrap();
    assert!(same.is_isomorphic(&fd));
    let (f, _) = localize_at_prime(&fd, fd.bottom()).unwrap();
    assert!(f.is_isomorphic(&field()));
    // Z/12 localized at (2) is Z/4, whose ideals form a 3-chain.
    let (loc, log) = localize_at_prime(&d12, at(&d12, "2")).unwrap();
    assert!(loc.is_isomorphic(&divisor_lattice(4).unwrap()));
    assert_eq!(names(&d12, log.embedding.clone()), ["1", "2", "4"]);
}

#[test]
fn products() {
    let ff = direct_product(&field(), &field()).unwrap();
    assert_eq!(ff.size(), 4);
    let nonzero_proper: Vec<Elem> = ff.proper_elements().filter(|&x| x != ff.bottom()).collect();
    assert_eq!(nonzero_proper, classify::primes(&ff));
    let d36 = divisor_lattice(36).unwrap();
    let d4xd9 = direct_product(&divisor_lattice(4).unwrap(), &divisor_lattice(9).unwrap()).unwrap();
    assert!(d4xd9.is_isomorphic(&d36));
    let fd = flat_diamond();
    assert_eq!(direct_product(&fd, &field()).unwrap().size(), 12);
}

#[test]
fn closures_and_witnesses() {
    let f = field();
    assert_eq!(factor_closure(&f, FactorClass::Prime).reached().count(), 2);
    let d12 = divisor_lattice(12).unwrap();
    assert_eq!(factor_closure(&d12, FactorClass::Prime).reached().count(), 6);
    let w = factorization(&d12, at(&d12, "12"), FactorClass::Prime).unwrap();
    assert_eq!(names(&d12, w.factors.clone()), ["2", "2", "3"]);
    assert!(factorization(&d12, d12.top(), FactorClass::OneAbsorbing).unwrap().factors.is_empty());

    let fd = flat_diamond();
    let reach = factor_closure(&fd, FactorClass::Prime);
    assert_eq!(names(&fd, reach.reached()), ["0", "1", "a", "d"]);
    assert!(factorization(&fd, at(&fd, "b"), FactorClass::Prime).is_none());
    assert_eq!(factorization(&fd, at(&fd, "b"), FactorClass::OneAbsorbing).unwrap().factors, [at(&fd, "b")]);
}

#[test]
fn lattice_level_factorization() {
    let fd = classify_factorization_lattice(&flat_diamond());
    assert!(fd.is_oafl() && fd.is_tafl() && !fd.is_zpi());
    let d12 = classify_factorization_lattice(&divisor_lattice(12).unwrap());
    assert!(d12.is_zpi() && d12.is_q_lattice() && d12.is_tafl() && d12.is_oafl() && d12.is_ptafl() && d12.is_poafl());
    let lr = classify_factorization_lattice(&local_ring());
    assert!(lr.is_oafl() && !lr.is_zpi());
}

fn characterizations(l: &Lattice) -> (mlcheck_core::factor::OaflCharacterization, mlcheck_core::factor::LocalTaflCharacterization) {
    let elements = classify::classify_all(l);
    let p = profile(l);
    let closures = ClassClosures::new(l, &elements);
    let f = closures.profile(l, &p.principal_elements);
    (oafl_characterization(l, &p, &closures, &f), local_tafl_characterization(l, &p, &f))
}

#[test]
fn fast_paths_on_examples() {
    let d8 = divisor_lattice(8).unwrap();
    let (o, t) = characterizations(&d8);
    assert!(o.applicable && o.zpi && o.nilpotent_local && !o.local_domain && o.oafl && o.agrees());
    assert!(t.applicable && !t.domain && t.tafl && t.ptafl && t.dimension == 0 && t.agrees());

    let lr = local_ring();
    let (o, t) = characterizations(&lr);
    assert!(o.applicable && !o.zpi && o.nilpotent_local && !o.local_domain && o.oafl && o.agrees());
    assert!(t.applicable && t.tafl && t.ptafl && t.dimension == 0 && t.agrees());

    let (o, t) = characterizations(&flat_diamond());
    assert!(!o.applicable && !t.applicable);

    let (o, t) = characterizations(&field());
    assert!(o.agrees() && t.tafl && t.dimension == 0);
}

#[test]
fn equivalences_on_examples() {
    let d12 = divisor_lattice(12).unwrap();
    let p = profile(&d12);
    let e = prufer_zpi_equivalence(&p, &classify_factorization_lattice(&d12));
    assert!(e.applicable && e.zpi && e.prufer_oafl && e.prufer_poafl);

    let lr = local_ring();
    let p = profile(&lr);
    let e = prufer_zpi_equivalence(&p, &classify_factorization_lattice(&lr));
    assert!(e.applicable && !p.is_prufer && !e.zpi && !e.prufer_poafl && e.agrees());

    let f = field();
    let eq = local_domain_equivalences(&f, &profile(&f), &classify_factorization_lattice(&f));
    assert!(eq.applicable && eq.statements.iter().all(|&s| s));
    let fd = flat_diamond();
    assert!(!local_domain_equivalences(&fd, &profile(&fd), &classify_factorization_lattice(&fd)).applicable);
}

#[test]
fn rings() {
    assert_eq!(ring_zn(12).unwrap().size(), 12);
    assert_eq!(build_ring(&RingPresentation::new(16, vec![4, 0, 1])).unwrap().size(), 256);
    let lr = build_ring(&RingPresentation::new(4, vec![0, 0, 1]).with_relation(vec![0, 2])).unwrap();
    assert_eq!(lr.size(), 8);
    assert_eq!(ideal_lattice(&ring_zn(7).unwrap()).unwrap().lattice.size(), 2);
}
