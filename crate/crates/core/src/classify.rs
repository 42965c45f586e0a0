//! Element predicates and lattice-level structure.
//!
//! Every predicate is an exhaustive check that reports a witness when it
//! fails. The loops go through residuals rather than over all triples:
//! for fixed `a, b` the set `{c : abc <= x}` is the down-set of
//! `(x : ab)`, so a bad `c` exists iff `(x : ab)` itself is bad.

use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::{Elem, Lattice};

/// Why an element fails a predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Failure {
    /// The element is the top; absorbing predicates need proper elements.
    NotProper,
    /// Two elements violating a two-variable law.
    Pair(Elem, Elem),
    /// Three elements violating a three-variable law.
    Triple(Elem, Elem, Elem),
}

impl Failure {
    pub fn elements(&self) -> Vec<Elem> {
        match *self {
            Failure::NotProper => Vec::new(),
            Failure::Pair(a, b) => vec![a, b],
            Failure::Triple(a, b, c) => vec![a, b, c],
        }
    }
}

pub type Check = Result<(), Failure>;

/// `ab <= x` implies `a <= x` or `b <= x`. Witness `(a, b)` with `ab <= x`.
pub fn check_prime(l: &Lattice, x: Elem) -> Check {
    if !l.is_proper(x) {
        return Err(Failure::NotProper);
    }
    for a in l.elements().filter(|&a| !l.leq(a, x)) {
        let b = l.residual(x, a);
        if !l.leq(b, x) {
            return Err(Failure::Pair(a, b));
        }
    }
    Ok(())
}

pub fn is_prime(l: &Lattice, x: Elem) -> bool {
    check_prime(l, x).is_ok()
}

pub fn is_maximal(l: &Lattice, x: Elem) -> bool {
    l.is_proper(x) && l.proper_elements().all(|y| !l.lt(x, y))
}

/// All prime elements, in index order.
pub fn primes(l: &Lattice) -> Vec<Elem> {
    l.elements().filter(|&p| is_prime(l, p)).collect()
}

pub fn maximal_elements(l: &Lattice) -> Vec<Elem> {
    l.elements().filter(|&m| is_maximal(l, m)).collect()
}

/// Meet of the primes above `x` (the top when there are none).
pub fn radical(l: &Lattice, x: Elem) -> Elem {
    l.meet(l.elements().filter(|&p| l.leq(x, p) && is_prime(l, p)))
}

/// Join of all `y` with some power below `x`.
pub fn radical_by_powers(l: &Lattice, x: Elem) -> Elem {
    l.join(l.elements().filter(|&y| l.leq(l.stable_power(y).1, x)))
}

/// Primes above `x` that are minimal among such primes.
pub fn min_primes(l: &Lattice, x: Elem) -> Vec<Elem> {
    let above: Vec<Elem> = l.elements().filter(|&p| l.leq(x, p) && is_prime(l, p)).collect();
    above
        .iter()
        .copied()
        .filter(|&p| !above.iter().any(|&q| l.lt(q, p)))
        .collect()
}

fn check_primary_with_radical(l: &Lattice, q: Elem, rad: Elem) -> Check {
    if !l.is_proper(q) {
        return Err(Failure::NotProper);
    }
    for a in l.elements().filter(|&a| !l.leq(a, q)) {
        let b = l.residual(q, a);
        if !l.leq(b, rad) {
            return Err(Failure::Pair(a, b));
        }
    }
    Ok(())
}

/// `ab <= q` implies `a <= q` or `b <= rad(q)`.
pub fn check_primary(l: &Lattice, q: Elem) -> Check {
    check_primary_with_radical(l, q, radical(l, q))
}

pub fn is_primary(l: &Lattice, q: Elem) -> bool {
    check_primary(l, q).is_ok()
}

/// 2-absorbing: `abc <= x` implies `ab <= x`, `ac <= x` or `bc <= x`.
pub fn check_two_absorbing(l: &Lattice, x: Elem) -> Check {
    if !l.is_proper(x) {
        return Err(Failure::NotProper);
    }
    for a in l.elements() {
        let xa = l.residual(x, a);
        for b in a..l.size() {
            let ab = l.mul(a, b);
            if l.leq(ab, x) {
                continue;
            }
            let c = l.residual(x, ab);
            if !l.leq(c, xa) && !l.leq(c, l.residual(x, b)) {
                return Err(Failure::Triple(a, b, c));
            }
        }
    }
    Ok(())
}

pub fn is_two_absorbing(l: &Lattice, x: Elem) -> bool {
    check_two_absorbing(l, x).is_ok()
}

/// 1-absorbing prime: for proper `a, b, c`, `abc <= x` implies `ab <= x` or
/// `c <= x`.
pub fn check_one_absorbing(l: &Lattice, x: Elem) -> Check {
    if !l.is_proper(x) {
        return Err(Failure::NotProper);
    }
    for a in l.proper_elements() {
        for b in l.proper_elements().filter(|&b| b >= a) {
            let ab = l.mul(a, b);
            if l.leq(ab, x) {
                continue;
            }
            // ab is not below x, so (x : ab) is proper.
            let c = l.residual(x, ab);
            if !l.leq(c, x) {
                return Err(Failure::Triple(a, b, c));
            }
        }
    }
    Ok(())
}

pub fn is_one_absorbing(l: &Lattice, x: Elem) -> bool {
    check_one_absorbing(l, x).is_ok()
}

/// `a ^ be = ((a : e) ^ b) e` for all `a, b`.
pub fn check_meet_principal(l: &Lattice, e: Elem) -> Check {
    for a in l.elements() {
        let ae = l.residual(a, e);
        for b in l.elements() {
            if l.meet2(a, l.mul(b, e)) != l.mul(l.meet2(ae, b), e) {
                return Err(Failure::Pair(a, b));
            }
        }
    }
    Ok(())
}

/// `((a v be) : e) = (a : e) v b` for all `a, b`.
pub fn check_join_principal(l: &Lattice, e: Elem) -> Check {
    for a in l.elements() {
        let ae = l.residual(a, e);
        for b in l.elements() {
            if l.residual(l.join2(a, l.mul(b, e)), e) != l.join2(ae, b) {
                return Err(Failure::Pair(a, b));
            }
        }
    }
    Ok(())
}

/// `a ^ e = (a : e) e` for all `a`. The witness repeats `a`.
pub fn check_weak_meet_principal(l: &Lattice, e: Elem) -> Check {
    match l
        .elements()
        .find(|&a| l.meet2(a, e) != l.mul(l.residual(a, e), e))
    {
        Some(a) => Err(Failure::Pair(a, a)),
        None => Ok(()),
    }
}

/// `(be : e) = (0 : e) v b` for all `b`. The witness repeats `b`.
pub fn check_weak_join_principal(l: &Lattice, e: Elem) -> Check {
    let ann = l.residual(l.bottom(), e);
    match l
        .elements()
        .find(|&b| l.residual(l.mul(b, e), e) != l.join2(ann, b))
    {
        Some(b) => Err(Failure::Pair(b, b)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PrincipalStatus {
    pub meet: bool,
    pub join: bool,
    pub weak_meet: bool,
    pub weak_join: bool,
}

impl PrincipalStatus {
    pub fn principal(&self) -> bool {
        self.meet && self.join
    }

    pub fn weak_principal(&self) -> bool {
        self.weak_meet && self.weak_join
    }
}

pub fn principal_status(l: &Lattice, e: Elem) -> PrincipalStatus {
    PrincipalStatus {
        meet: check_meet_principal(l, e).is_ok(),
        join: check_join_principal(l, e).is_ok(),
        weak_meet: check_weak_meet_principal(l, e).is_ok(),
        weak_join: check_weak_join_principal(l, e).is_ok(),
    }
}

pub fn is_principal(l: &Lattice, e: Elem) -> bool {
    check_meet_principal(l, e).is_ok() && check_join_principal(l, e).is_ok()
}

pub fn is_comparable(l: &Lattice, x: Elem) -> bool {
    l.elements().all(|y| l.comparable(x, y))
}

/// Every flag and derived element attached to one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClassification {
    pub element: Elem,
    pub is_proper: bool,
    pub is_prime: bool,
    pub is_maximal: bool,
    pub is_primary: bool,
    pub is_two_absorbing: bool,
    pub is_one_absorbing: bool,
    pub principal: PrincipalStatus,
    /// Every element of a finite lattice is compact.
    pub is_compact: bool,
    pub is_nilpotent: bool,
    pub is_comparable: bool,
    pub radical: Elem,
    pub min_primes: Vec<Elem>,
    /// The radical, when the element is primary.
    pub primary_radical: Option<Elem>,
}

impl ElementClassification {
    pub fn is_principal(&self) -> bool {
        self.principal.principal()
    }

    pub fn is_weak_principal(&self) -> bool {
        self.principal.weak_principal()
    }
}

/// Absorbing-type flags of the top are false; principality, nilpotency and
/// comparability are reported as they are.
pub fn classify_element(l: &Lattice, x: Elem) -> ElementClassification {
    let proper = l.is_proper(x);
    let rad = radical(l, x);
    let primary = proper && check_primary_with_radical(l, x, rad).is_ok();
    ElementClassification {
        element: x,
        is_proper: proper,
        is_prime: proper && is_prime(l, x),
        is_maximal: is_maximal(l, x),
        is_primary: primary,
        is_two_absorbing: proper && is_two_absorbing(l, x),
        is_one_absorbing: proper && is_one_absorbing(l, x),
        principal: principal_status(l, x),
        is_compact: true,
        is_nilpotent: l.is_nilpotent(x),
        is_comparable: is_comparable(l, x),
        radical: rad,
        min_primes: min_primes(l, x),
        primary_radical: primary.then_some(rad),
    }
}

pub fn classify_all(l: &Lattice) -> Vec<ElementClassification> {
    l.elements().map(|x| classify_element(l, x)).collect()
}

/// Lattice-level invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeProfile {
    pub maximal_elements: Vec<Elem>,
    pub primes: Vec<Elem>,
    pub principal_elements: Vec<Elem>,
    /// Meet of the maximal elements.
    pub jacobson: Elem,
    /// Links in the longest strict chain of primes.
    pub dimension: usize,
    pub is_field: bool,
    pub is_quasi_local: bool,
    /// The unique maximal element of a quasi-local lattice.
    pub maximal: Option<Elem>,
    pub is_domain: bool,
    pub is_principally_generated: bool,
    /// Every compact element principal; finitely, every element.
    pub is_prufer: bool,
    /// Every element compact; always true finitely.
    pub is_noetherian: bool,
    /// `m^2` comparable to every element (false unless quasi-local).
    pub m_squared_comparable: bool,
}

/// Longest strict chain among `primes`, counted in links.
pub fn prime_dimension(l: &Lattice, primes: &[Elem]) -> usize {
    let mut sorted = primes.to_vec();
    sorted.sort_by_key(|&p| l.down_set(p).count_ones(..));
    let mut len = vec![0usize; sorted.len()];
    for i in 0..sorted.len() {
        for k in 0..i {
            if l.lt(sorted[k], sorted[i]) {
                len[i] = len[i].max(len[k] + 1);
            }
        }
    }
    len.into_iter().max().unwrap_or(0)
}

/// `x` is the join of the principal elements below it.
pub fn is_join_of_principals(l: &Lattice, principal: &[Elem], x: Elem) -> bool {
    l.join(principal.iter().copied().filter(|&p| l.leq(p, x))) == x
}

pub fn profile(l: &Lattice) -> LatticeProfile {
    let maximal_elements = maximal_elements(l);
    let primes = primes(l);
    let principal_elements: Vec<Elem> = l.elements().filter(|&e| is_principal(l, e)).collect();
    let maximal = match maximal_elements.as_slice() {
        [m] => Some(*m),
        _ => None,
    };
    let m_squared_comparable = maximal.is_some_and(|m| is_comparable(l, l.mul(m, m)));
    LatticeProfile {
        jacobson: l.meet(maximal_elements.iter().copied()),
        dimension: prime_dimension(l, &primes),
        is_field: l.size() == 2,
        is_quasi_local: maximal.is_some(),
        maximal,
        is_domain: primes.contains(&l.bottom()),
        is_principally_generated: l
            .elements()
            .all(|x| is_join_of_principals(l, &principal_elements, x)),
        is_prufer: principal_elements.len() == l.size(),
        is_noetherian: true,
        m_squared_comparable,
        maximal_elements,
        primes,
        principal_elements,
    }
}
