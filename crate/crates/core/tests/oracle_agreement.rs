mod common;

use common::*;
use mlcheck_core::classify::{self, classify_element};
use mlcheck_core::factor::{factor_closure, FactorClass};

#[test]
fn join_meet_residual_match_scans() {
    for (name, l) in corpus() {
        assert_eq!(l.top(), top(&l), "{name}");
        assert_eq!(l.bottom(), bottom(&l), "{name}");
        for a in elems(&l) {
            for b in elems(&l) {
                assert_eq!(l.join2(a, b), join(&l, &[a, b]), "{name} join {a} {b}");
                assert_eq!(l.meet2(a, b), meet(&l, &[a, b]), "{name} meet {a} {b}");
                assert_eq!(l.residual(a, b), residual(&l, a, b), "{name} residual {a} {b}");
            }
        }
    }
}

#[test]
fn element_predicates_match_definitions() {
    for (name, l) in corpus() {
        for x in elems(&l) {
            let c = classify_element(&l, x);
            assert_eq!(c.is_prime, prime(&l, x), "{name} prime {x}");
            assert_eq!(c.is_primary, primary(&l, x), "{name} primary {x}");
            assert_eq!(c.is_two_absorbing, two_absorbing(&l, x), "{name} ta {x}");
            assert_eq!(c.is_one_absorbing, one_absorbing(&l, x), "{name} oa {x}");
            assert_eq!(c.principal.meet, meet_principal(&l, x), "{name} meet principal {x}");
            assert_eq!(c.principal.join, join_principal(&l, x), "{name} join principal {x}");
            assert_eq!(c.radical, radical(&l, x), "{name} radical {x}");
            assert_eq!(classify::radical_by_powers(&l, x), c.radical, "{name} radical by powers {x}");
        }
    }
}

#[test]
fn failure_witnesses_are_genuine() {
    for (name, l) in corpus() {
        for x in l.proper_elements() {
            if let Err(f) = classify::check_two_absorbing(&l, x) {
                let w = f.elements();
                let (a, b, c) = (w[0], w[1], w[2]);
                assert!(l.leq(l.product([a, b, c]), x), "{name} {x}");
                assert!(!l.leq(l.mul(a, b), x) && !l.leq(l.mul(a, c), x) && !l.leq(l.mul(b, c), x));
            }
            if let Err(f) = classify::check_one_absorbing(&l, x) {
                let w = f.elements();
                let (a, b, c) = (w[0], w[1], w[2]);
                assert!(l.is_proper(a) && l.is_proper(b) && l.is_proper(c), "{name} {x}");
                assert!(l.leq(l.product([a, b, c]), x) && !l.leq(l.mul(a, b), x) && !l.leq(c, x));
            }
            if let Err(f) = classify::check_prime(&l, x) {
                let w = f.elements();
                assert!(l.leq(l.mul(w[0], w[1]), x) && !l.leq(w[0], x) && !l.leq(w[1], x));
            }
        }
    }
}

#[test]
fn closures_match_naive_fixpoint() {
    for (name, l) in corpus() {
        for class in FactorClass::ALL {
            let members: Vec<_> = elems(&l).into_iter().filter(|&x| class.admits(&l, x)).collect();
            let naive = products_of(&l, &members);
            let r = factor_closure(&l, class);
            for x in elems(&l) {
                assert_eq!(r.contains(x), naive[x], "{name} {class} {x}");
            }
        }
    }
}
