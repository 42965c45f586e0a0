//! Executable checks of the structure theory of OA- and TA-elements.
//!
//! Each property has a hypothesis filter and an assertion. A lattice that
//! fails the filter is skipped; one that passes counts as a hypothesis hit
//! and is either consistent with the assertion or yields a witness.
//! Implications count the antecedent as hypothesis; equivalences count
//! only the standing assumptions.

use mlcheck_core::analysis::LatticeAnalysis;
use mlcheck_core::classify::{self, is_one_absorbing};
use mlcheck_core::constructions::{self, direct_product_with_cap, localize_at_prime, quotient};
use mlcheck_core::factor::{factor_closure, FactorClass};
use mlcheck_core::{Elem, Lattice};

/// One corpus member with its precomputed analysis.
pub struct Subject<'a> {
    pub id: &'a str,
    pub lattice: &'a Lattice,
    pub analysis: &'a LatticeAnalysis,
    /// Element cap for lattices built during a check.
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Skipped,
    Holds,
    Violated(String),
}

pub struct PropertyDescriptor {
    pub id: &'static str,
    /// Formal statement being checked.
    pub anchor: &'static str,
    /// The filter, in words.
    pub hypothesis: &'static str,
    pub mandatory: bool,
    pub check: fn(&Subject) -> Outcome,
}

impl std::fmt::Debug for PropertyDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PropertyDescriptor")
            .field("id", &self.id)
            .field("mandatory", &self.mandatory)
            .finish()
    }
}

pub const MANDATORY: [&str; 7] = ["P2.8", "P2.10", "P2.15", "P3.3", "P3.11/3.12", "T4.13", "T4.14"];

/// Products built by the closure checks stay below this many factors' worth.
const PRODUCT_SOURCE_LIMIT: usize = 48;

fn skip_unless(cond: bool) -> Option<Outcome> {
    (!cond).then_some(Outcome::Skipped)
}

fn verdict(failure: Option<String>) -> Outcome {
    match failure {
        Some(w) => Outcome::Violated(w),
        None => Outcome::Holds,
    }
}

fn nm(l: &Lattice, x: Elem) -> String {
    l.name(x)
}

fn is_tafl(l: &Lattice) -> bool {
    factor_closure(l, FactorClass::TwoAbsorbing).first_missing(l.elements()).is_none()
}

fn is_oafl(l: &Lattice) -> bool {
    factor_closure(l, FactorClass::OneAbsorbing).first_missing(l.elements()).is_none()
}

impl Subject<'_> {
    fn oa(&self, x: Elem) -> bool {
        self.analysis.elements[x].is_one_absorbing
    }

    fn prime(&self, x: Elem) -> bool {
        self.analysis.elements[x].is_prime
    }

    fn principal(&self, x: Elem) -> bool {
        self.analysis.elements[x].is_principal()
    }

    fn oa_elements(&self) -> Vec<Elem> {
        self.analysis.one_absorbing()
    }

    fn oa_not_prime(&self) -> Vec<Elem> {
        self.analysis.select(|c| c.is_one_absorbing && !c.is_prime)
    }

    fn primes(&self) -> &[Elem] {
        &self.analysis.profile.primes
    }

    fn pg(&self) -> bool {
        self.analysis.profile.is_principally_generated
    }

    fn maximal(&self) -> Option<Elem> {
        self.analysis.profile.maximal
    }

    fn square(&self, x: Elem) -> Elem {
        self.lattice.mul(x, x)
    }

    /// Minimal elements among the primes that are not maximal.
    fn minimal_nonmaximal_primes(&self) -> Vec<Elem> {
        let l = self.lattice;
        let maxes = &self.analysis.profile.maximal_elements;
        let nonmax: Vec<Elem> = self.primes().iter().copied().filter(|p| !maxes.contains(p)).collect();
        nonmax
            .iter()
            .copied()
            .filter(|&p| !nonmax.iter().any(|&q| l.lt(q, p)))
            .collect()
    }

    fn nonzero_proper(&self) -> impl Iterator<Item = Elem> + '_ {
        let l = self.lattice;
        l.proper_elements().filter(move |&x| x != l.bottom())
    }

    fn pair_joins_factor(&self) -> bool {
        self.analysis.oafl_characterization(self.lattice).principal_pair_joins
    }
}

fn radical_of_oa(s: &Subject) -> Outcome {
    let l = s.lattice;
    let oa = s.oa_elements();
    if let Some(o) = skip_unless(!oa.is_empty()) {
        return o;
    }
    verdict(oa.into_iter().find_map(|x| {
        let r = s.analysis.elements[x].radical;
        if !s.prime(r) {
            Some(format!("x={}: radical {} not prime", nm(l, x), nm(l, r)))
        } else if !l.leq(s.square(r), x) {
            Some(format!("x={}: radical squared {} not below x", nm(l, x), nm(l, s.square(r))))
        } else {
            None
        }
    }))
}

fn residuals_of_oa(s: &Subject) -> Outcome {
    let l = s.lattice;
    let pairs: Vec<(Elem, Elem)> = s
        .oa_elements()
        .into_iter()
        .flat_map(|x| l.proper_elements().filter(move |&a| !l.leq(a, x)).map(move |a| (x, a)))
        .collect();
    if let Some(o) = skip_unless(!pairs.is_empty()) {
        return o;
    }
    verdict(pairs.into_iter().find_map(|(x, a)| {
        let r = l.residual(x, a);
        (!s.prime(r)).then(|| format!("x={} a={}: (x:a)={} not prime", nm(l, x), nm(l, a), nm(l, r)))
    }))
}

/// `x` primary with radical `p` and `(p^2:a) <= x` for all `a <= p`,
/// `a` not below `x`.
fn primary_residual_condition(s: &Subject) -> Outcome {
    let l = s.lattice;
    let candidates: Vec<Elem> = s
        .analysis
        .select(|c| c.is_primary)
        .into_iter()
        .filter(|&x| {
            let p = s.analysis.elements[x].radical;
            let p2 = s.square(p);
            l.down_set(p)
                .ones()
                .filter(|&a| !l.leq(a, x))
                .all(|a| l.leq(l.residual(p2, a), x))
        })
        .collect();
    if let Some(o) = skip_unless(!candidates.is_empty()) {
        return o;
    }
    verdict(
        candidates
            .into_iter()
            .find(|&x| !s.oa(x))
            .map(|x| format!("x={} satisfies the residual condition but is not OA", nm(l, x))),
    )
}

fn oa_not_prime_forces_local(s: &Subject) -> Outcome {
    let witnesses = s.oa_not_prime();
    if let Some(o) = skip_unless(!witnesses.is_empty()) {
        return o;
    }
    if s.analysis.profile.is_quasi_local {
        Outcome::Holds
    } else {
        Outcome::Violated(format!(
            "x={} is OA, not prime; maximal elements {}",
            nm(s.lattice, witnesses[0]),
            s.lattice.describe(&s.analysis.profile.maximal_elements)
        ))
    }
}

fn local_oa_criterion(s: &Subject) -> Outcome {
    let l = s.lattice;
    let Some(m) = s.maximal() else {
        return Outcome::Skipped;
    };
    let m2 = s.square(m);
    verdict(l.proper_elements().find_map(|x| {
        let predicted = s.prime(x) || (l.leq(m2, x) && l.lt(x, m));
        (predicted != s.oa(x)).then(|| format!("x={}: OA={} but criterion={}", nm(l, x), s.oa(x), predicted))
    }))
}

fn non_prime_oa_existence(s: &Subject) -> Outcome {
    let exists = s.oa_not_prime().first().copied();
    let local = s.maximal().filter(|&m| s.square(m) != m);
    match (exists, local) {
        (Some(_), Some(_)) | (None, None) => Outcome::Holds,
        (Some(x), None) => Outcome::Violated(format!(
            "x={} is OA and not prime, but L is not quasi-local with m^2 != m",
            nm(s.lattice, x)
        )),
        (None, Some(m)) => Outcome::Violated(format!(
            "quasi-local with m={} and m^2 != m, yet every OA element is prime",
            nm(s.lattice, m)
        )),
    }
}

fn all_proper_oa(s: &Subject) -> Outcome {
    let l = s.lattice;
    if let Some(o) = skip_unless(s.pg()) {
        return o;
    }
    let m = s.analysis.profile.jacobson;
    let first_non_oa = l.proper_elements().find(|&x| !s.oa(x));
    let first_principal_non_oa = l.proper_elements().find(|&x| s.principal(x) && !s.oa(x));
    let s3 = s.analysis.profile.is_quasi_local && s.square(m) == l.bottom();
    let st = [first_non_oa.is_none(), first_principal_non_oa.is_none(), s3];
    if st.iter().all(|&b| b == st[0]) {
        Outcome::Holds
    } else {
        Outcome::Violated(format!(
            "all proper OA={} (first failure {:?}); all proper principal OA={} (first failure {:?}); quasi-local with m^2=0: {}",
            st[0],
            first_non_oa.map(|x| nm(l, x)),
            st[1],
            first_principal_non_oa.map(|x| nm(l, x)),
            st[2]
        ))
    }
}

fn nonzero_oa_dimension_zero(s: &Subject) -> Outcome {
    let l = s.lattice;
    let join_pg = {
        let jp: Vec<Elem> = l.elements().filter(|&e| s.analysis.elements[e].principal.join).collect();
        l.elements().all(|x| classify::is_join_of_principals(l, &jp, x))
    };
    if let Some(o) = skip_unless(join_pg && s.nonzero_proper().all(|x| s.oa(x))) {
        return o;
    }
    let dim = s.analysis.profile.dimension;
    verdict((dim != 0).then(|| format!("every nonzero proper element is OA but dim={dim}")))
}

fn oa_above_square(s: &Subject) -> Outcome {
    let l = s.lattice;
    let Some(m) = s.maximal() else {
        return Outcome::Skipped;
    };
    if let Some(o) = skip_unless(s.pg() && s.analysis.profile.m_squared_comparable) {
        return o;
    }
    let m2 = s.square(m);
    let above: Vec<Elem> = s
        .analysis
        .profile
        .principal_elements
        .iter()
        .copied()
        .filter(|&x| l.leq(m2, x))
        .collect();
    let chain_pair = above
        .iter()
        .flat_map(|&x| above.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| !l.comparable(x, y));
    let odd_oa = s.oa_elements().into_iter().find(|&a| !s.prime(a) && a != m2);
    match (chain_pair, odd_oa) {
        (None, None) | (Some(_), Some(_)) => Outcome::Holds,
        (Some((x, y)), None) => Outcome::Violated(format!(
            "principals {} and {} above m^2 incomparable, yet every OA is prime or m^2",
            nm(l, x),
            nm(l, y)
        )),
        (None, Some(a)) => Outcome::Violated(format!(
            "principals above m^2 form a chain, yet {} is OA, not prime and not m^2",
            nm(l, a)
        )),
    }
}

fn meet_join_of_non_prime_oa(s: &Subject) -> Outcome {
    let l = s.lattice;
    let xs = s.oa_not_prime();
    if let Some(o) = skip_unless(!xs.is_empty()) {
        return o;
    }
    verdict(xs.iter().flat_map(|&x| xs.iter().map(move |&y| (x, y))).find_map(|(x, y)| {
        let (mt, jn) = (l.meet2(x, y), l.join2(x, y));
        if !s.oa(mt) {
            Some(format!("x={} y={}: meet {} not OA", nm(l, x), nm(l, y), nm(l, mt)))
        } else if !s.oa(jn) {
            Some(format!("x={} y={}: join {} not OA", nm(l, x), nm(l, y), nm(l, jn)))
        } else {
            None
        }
    }))
}

fn zero_oa(s: &Subject) -> Outcome {
    let l = s.lattice;
    let lhs = s.oa(l.bottom());
    let rhs = s.analysis.profile.is_domain || s.maximal().is_some_and(|m| s.square(m) == l.bottom());
    verdict((lhs != rhs).then(|| format!("0 OA={lhs}, domain or m^2=0: {rhs}")))
}

fn ta_is_oa(s: &Subject) -> Outcome {
    let l = s.lattice;
    let ta_not_oa = s.analysis.select(|c| c.is_two_absorbing && !c.is_one_absorbing).first().copied();
    let primes = s.primes();
    let incomparable = primes
        .iter()
        .flat_map(|&p| primes.iter().map(move |&q| (p, q)))
        .find(|&(p, q)| !l.comparable(p, q));
    let cond_b_failure = s.maximal().and_then(|m| {
        s.analysis.two_absorbing().into_iter().find_map(|x| {
            s.analysis.elements[x]
                .min_primes
                .iter()
                .find(|&&p| x != p && p != m)
                .map(|&p| (x, p))
        })
    });
    let conditions = incomparable.is_none() && s.maximal().is_some() && cond_b_failure.is_none();
    match (ta_not_oa, conditions) {
        (None, true) | (Some(_), false) => Outcome::Holds,
        (Some(x), true) => Outcome::Violated(format!(
            "primes form a chain and minimal primes behave, yet {} is TA and not OA",
            nm(l, x)
        )),
        (None, false) => Outcome::Violated(match (incomparable, cond_b_failure) {
            (Some((p, q)), _) => format!("every TA is OA, yet primes {} and {} are incomparable", nm(l, p), nm(l, q)),
            (None, Some((x, p))) => format!(
                "every TA is OA, yet TA element {} has minimal prime {} that is neither x nor m",
                nm(l, x),
                nm(l, p)
            ),
            (None, None) => "every TA is OA, yet L is not quasi-local".to_string(),
        }),
    }
}

fn oa_in_quotient(s: &Subject) -> Outcome {
    let l = s.lattice;
    let pairs: Vec<(Elem, Elem)> = s
        .primes()
        .iter()
        .flat_map(|&p| s.oa_elements().into_iter().filter(move |&x| l.leq(p, x)).map(move |x| (p, x)))
        .collect();
    if let Some(o) = skip_unless(!pairs.is_empty()) {
        return o;
    }
    let mut current: Option<(Elem, Lattice, Vec<Elem>)> = None;
    for (p, x) in pairs {
        if current.as_ref().is_none_or(|c| c.0 != p) {
            match quotient(l, p) {
                Ok((q, log)) => current = Some((p, q, log.map)),
                Err(e) => return Outcome::Violated(format!("L/{} could not be built: {e}", nm(l, p))),
            }
        }
        let (_, q, map) = current.as_ref().expect("quotient built above");
        if !is_one_absorbing(q, map[x]) {
            return Outcome::Violated(format!("x={} is not OA in L/{}", nm(l, x), nm(l, p)));
        }
    }
    Outcome::Holds
}

fn oa_in_localization(s: &Subject) -> Outcome {
    let l = s.lattice;
    let pairs: Vec<(Elem, Elem)> = s
        .primes()
        .iter()
        .flat_map(|&p| s.oa_elements().into_iter().filter(move |&x| l.leq(x, p)).map(move |x| (p, x)))
        .collect();
    if let Some(o) = skip_unless(!pairs.is_empty()) {
        return o;
    }
    let mut current: Option<(Elem, Lattice, Vec<Elem>)> = None;
    for (p, x) in pairs {
        if current.as_ref().is_none_or(|c| c.0 != p) {
            match localize_at_prime(l, p) {
                Ok((q, log)) => current = Some((p, q, log.map)),
                Err(e) => return Outcome::Violated(format!("L_{} could not be built: {e}", nm(l, p))),
            }
        }
        let (_, q, map) = current.as_ref().expect("localization built above");
        if !is_one_absorbing(q, map[x]) {
            return Outcome::Violated(format!("x_p is not OA in L_p for x={} p={}", nm(l, x), nm(l, p)));
        }
    }
    Outcome::Holds
}

fn nonzero_oa_structure(s: &Subject) -> Outcome {
    let l = s.lattice;
    if let Some(o) = skip_unless(s.pg()) {
        return o;
    }
    let lhs = s.nonzero_proper().all(|x| s.oa(x));
    let two_fields = constructions::direct_product(&constructions::field(), &constructions::field())
        .is_ok_and(|ff| ff.is_isomorphic(l));
    let local = s.maximal().is_some_and(|m| {
        m == s.analysis.elements[l.bottom()].radical
            && s.nonzero_proper()
                .filter(|&x| s.principal(x))
                .all(|x| l.leq(s.square(m), x))
    });
    let rhs = two_fields || local;
    verdict((lhs != rhs).then(|| {
        format!("every nonzero proper element OA: {lhs}; product of two fields: {two_fields}; nil local condition: {local}")
    }))
}

fn oa_all_prime_field(s: &Subject) -> Outcome {
    if let Some(o) = skip_unless(s.pg() && s.analysis.profile.is_quasi_local) {
        return o;
    }
    let odd = s.oa_not_prime().first().copied();
    let field = s.analysis.profile.is_field;
    verdict((odd.is_none() != field).then(|| match odd {
        Some(x) => format!("field, yet {} is OA and not prime", nm(s.lattice, x)),
        None => "every OA element is prime, yet L is not a field".to_string(),
    }))
}

fn tafl_closure(s: &Subject) -> Outcome {
    let l = s.lattice;
    let tafl = s.analysis.factorization.is_tafl();
    let small = l.size() <= PRODUCT_SOURCE_LIMIT;
    if let Some(o) = skip_unless(tafl || small) {
        return o;
    }
    if tafl {
        for &p in s.primes() {
            match quotient(l, p) {
                Ok((q, _)) if !is_tafl(&q) => return Outcome::Violated(format!("L/{} is not a TAFL", nm(l, p))),
                Err(e) => return Outcome::Violated(format!("L/{}: {e}", nm(l, p))),
                _ => {}
            }
            match localize_at_prime(l, p) {
                Ok((q, _)) if !is_tafl(&q) => return Outcome::Violated(format!("L_{} is not a TAFL", nm(l, p))),
                Err(e) => return Outcome::Violated(format!("L_{}: {e}", nm(l, p))),
                _ => {}
            }
        }
    }
    if small {
        for (name, other) in [("field", constructions::field()), ("nil-chain", constructions::three_chain(true))] {
            match direct_product_with_cap(l, &other, s.cap) {
                Ok(prod) => {
                    if is_tafl(&prod) != tafl {
                        return Outcome::Violated(format!("L is TAFL={tafl} but L x {name} is TAFL={}", !tafl));
                    }
                }
                Err(e) => return Outcome::Violated(format!("L x {name}: {e}")),
            }
        }
    }
    Outcome::Holds
}

fn ctafl_closure(s: &Subject) -> Outcome {
    let l = s.lattice;
    let f = &s.analysis.factorization;
    let prufer = s.analysis.profile.is_prufer;
    if let Some(o) = skip_unless(f.is_ctafl() || prufer) {
        return o;
    }
    if prufer && f.is_ctafl() != f.is_ptafl() {
        return Outcome::Violated(format!("Pruefer, CTAFL={} but PTAFL={}", f.is_ctafl(), f.is_ptafl()));
    }
    if f.is_ctafl() {
        for &p in s.primes() {
            match localize_at_prime(l, p) {
                Ok((q, _)) if !is_tafl(&q) => return Outcome::Violated(format!("L_{} is not a CTAFL", nm(l, p))),
                Err(e) => return Outcome::Violated(format!("L_{}: {e}", nm(l, p))),
                _ => {}
            }
            match quotient(l, p) {
                Ok((q, _)) if !is_tafl(&q) => return Outcome::Violated(format!("L/{} is not a CTAFL", nm(l, p))),
                Err(e) => return Outcome::Violated(format!("L/{}: {e}", nm(l, p))),
                _ => {}
            }
        }
    }
    Outcome::Holds
}

fn radical_square_comparable(s: &Subject) -> Outcome {
    let l = s.lattice;
    let f = &s.analysis.factorization;
    let maxes = &s.analysis.profile.maximal_elements;
    let targets: Vec<Elem> = l
        .proper_elements()
        .filter(|&x| maxes.contains(&s.analysis.elements[x].radical))
        .filter(|&x| f.is_tafl() || (f.is_ptafl() && s.principal(x)))
        .collect();
    if let Some(o) = skip_unless(!targets.is_empty()) {
        return o;
    }
    verdict(targets.into_iter().find_map(|x| {
        let r2 = s.square(s.analysis.elements[x].radical);
        (!l.comparable(x, r2)).then(|| format!("x={} incomparable with radical squared {}", nm(l, x), nm(l, r2)))
    }))
}

fn dimension_at_most_one(s: &Subject, hypothesis: bool, what: &str) -> Outcome {
    if let Some(o) = skip_unless(hypothesis) {
        return o;
    }
    let dim = s.analysis.profile.dimension;
    verdict((dim > 1).then(|| format!("{what}, yet dim={dim}")))
}

fn pg_tafl_dimension(s: &Subject) -> Outcome {
    dimension_at_most_one(s, s.pg() && s.analysis.factorization.is_tafl(), "principally generated TAFL")
}

fn prufer_tafl_domain_zpi(s: &Subject) -> Outcome {
    let p = &s.analysis.profile;
    if let Some(o) = skip_unless(s.analysis.factorization.is_tafl() && p.is_prufer && p.is_domain) {
        return o;
    }
    verdict(
        s.analysis
            .factorization
            .zpi
            .counterexample
            .map(|x| format!("{} has no prime factorization", nm(s.lattice, x))),
    )
}

fn local_domain_tafl_criterion(s: &Subject) -> Outcome {
    let l = s.lattice;
    let p = &s.analysis.profile;
    let Some(m) = p.maximal else {
        return Outcome::Skipped;
    };
    let powers_vanish = l.stable_power(m).1 == l.bottom();
    if let Some(o) = skip_unless(s.pg() && p.is_domain && p.dimension <= 1 && p.m_squared_comparable && powers_vanish) {
        return o;
    }
    verdict(
        s.analysis
            .factorization
            .tafl
            .counterexample
            .map(|x| format!("{} has no TA-factorization", nm(l, x))),
    )
}

fn local_tafl(s: &Subject) -> Outcome {
    let c = s.analysis.local_tafl_characterization(s.lattice);
    if let Some(o) = skip_unless(c.applicable) {
        return o;
    }
    verdict((!c.agrees()).then(|| format!("{c:?}")))
}

fn proper_elements_powers_of_m(s: &Subject) -> Outcome {
    let l = s.lattice;
    let p = &s.analysis.profile;
    let Some(m) = p.maximal else {
        return Outcome::Skipped;
    };
    if let Some(o) = skip_unless(p.is_prufer && p.is_domain && s.analysis.factorization.is_tafl()) {
        return o;
    }
    let mut powers = vec![m];
    loop {
        let next = l.mul(*powers.last().expect("nonempty"), m);
        if powers.contains(&next) {
            break;
        }
        powers.push(next);
    }
    verdict(
        l.proper_elements()
            .find(|x| !powers.contains(x))
            .map(|x| format!("{} is not a power of m", nm(l, x))),
    )
}

fn oafl_consequences(s: &Subject) -> Outcome {
    let l = s.lattice;
    let f = &s.analysis.factorization;
    if let Some(o) = skip_unless(f.is_oafl()) {
        return o;
    }
    if let Some(x) = f.q_lattice.counterexample {
        return Outcome::Violated(format!("OAFL, yet {} has no primary factorization", nm(l, x)));
    }
    if let Some(x) = f.tafl.counterexample {
        return Outcome::Violated(format!("OAFL, yet {} has no TA-factorization", nm(l, x)));
    }
    for &p in s.primes() {
        match localize_at_prime(l, p) {
            Ok((q, _)) if !is_oafl(&q) => return Outcome::Violated(format!("L_{} is not an OAFL", nm(l, p))),
            Err(e) => return Outcome::Violated(format!("L_{}: {e}", nm(l, p))),
            _ => {}
        }
        match quotient(l, p) {
            Ok((q, _)) if !is_oafl(&q) => return Outcome::Violated(format!("L/{} is not an OAFL", nm(l, p))),
            Err(e) => return Outcome::Violated(format!("L/{}: {e}", nm(l, p))),
            _ => {}
        }
    }
    Outcome::Holds
}

fn pg_oafl_dimension(s: &Subject) -> Outcome {
    dimension_at_most_one(s, s.pg() && s.analysis.factorization.is_oafl(), "principally generated OAFL")
}

fn local_oafl_sufficient(s: &Subject) -> Outcome {
    let l = s.lattice;
    let p = &s.analysis.profile;
    let Some(m) = p.maximal else {
        return Outcome::Skipped;
    };
    let shape = l.is_nilpotent(m) || (p.is_domain && l.stable_power(m).1 == l.bottom());
    if let Some(o) = skip_unless(s.pg() && p.m_squared_comparable && shape) {
        return o;
    }
    if let Some(x) = s.analysis.factorization.oafl.counterexample {
        return Outcome::Violated(format!("{} has no OA-factorization", nm(l, x)));
    }
    let pr = &s.analysis.closures.principal_one_absorbing;
    verdict(
        p.principal_elements
            .iter()
            .find(|&&x| l.is_proper(x) && !pr.contains(x))
            .map(|&x| format!("principal {} is not a product of principal OA elements", nm(l, x))),
    )
}

fn coafl_minimal_primes_weak_meet(s: &Subject) -> Outcome {
    let l = s.lattice;
    if let Some(o) = skip_unless(s.analysis.profile.is_quasi_local && s.analysis.factorization.is_coafl()) {
        return o;
    }
    verdict(
        s.minimal_nonmaximal_primes()
            .into_iter()
            .find(|&p| !s.analysis.elements[p].principal.weak_meet)
            .map(|p| format!("minimal nonmaximal prime {} is not weak meet principal", nm(l, p))),
    )
}

fn prufer_coafl_poafl(s: &Subject) -> Outcome {
    let f = &s.analysis.factorization;
    if let Some(o) = skip_unless(s.analysis.profile.is_prufer) {
        return o;
    }
    verdict((f.is_coafl() != f.is_poafl()).then(|| format!("COAFL={} POAFL={}", f.is_coafl(), f.is_poafl())))
}

fn poafl_minimal_primes_principal(s: &Subject) -> Outcome {
    let l = s.lattice;
    if let Some(o) = skip_unless(s.analysis.profile.is_quasi_local && s.pg() && s.analysis.factorization.is_poafl()) {
        return o;
    }
    verdict(
        s.minimal_nonmaximal_primes()
            .into_iter()
            .find(|&p| !s.principal(p))
            .map(|p| format!("minimal nonmaximal prime {} is not principal", nm(l, p))),
    )
}

fn pair_joins_local(s: &Subject) -> Outcome {
    let l = s.lattice;
    let p = &s.analysis.profile;
    if let Some(o) = skip_unless(p.is_quasi_local && s.pg() && s.pair_joins_factor()) {
        return o;
    }
    if let Some(&q) = p.primes.iter().find(|&&q| !p.maximal_elements.contains(&q) && !s.principal(q)) {
        return Outcome::Violated(format!("nonmaximal prime {} is not principal", nm(l, q)));
    }
    verdict((p.dimension > 2).then(|| format!("dim={}", p.dimension)))
}

fn pair_joins_dimension(s: &Subject) -> Outcome {
    dimension_at_most_one(
        s,
        s.pg() && s.pair_joins_factor(),
        "joins of principal pairs are OA-factorizable",
    )
}

fn pair_joins_dimension_one_domain(s: &Subject) -> Outcome {
    let p = &s.analysis.profile;
    if let Some(o) = skip_unless(p.is_quasi_local && s.pg() && s.pair_joins_factor() && p.dimension == 1) {
        return o;
    }
    verdict((!p.is_domain).then(|| "dim=1 and pair joins factor, yet 0 is not prime".to_string()))
}

fn oafl_structure(s: &Subject) -> Outcome {
    let c = s.analysis.oafl_characterization(s.lattice);
    if let Some(o) = skip_unless(c.applicable) {
        return o;
    }
    verdict((!c.agrees()).then(|| {
        let pair = c
            .principal_pair_counterexample
            .map(|(a, b)| format!(" (unfactorable join of {} and {})", nm(s.lattice, a), nm(s.lattice, b)))
            .unwrap_or_default();
        format!(
            "OAFL={} COAFL={} pair joins={}{pair} ZPI={} nilpotent local={} local domain={}",
            c.oafl, c.coafl, c.principal_pair_joins, c.zpi, c.nilpotent_local, c.local_domain
        )
    }))
}

fn prufer_zpi(s: &Subject) -> Outcome {
    let c = s.analysis.prufer_zpi_equivalence();
    if let Some(o) = skip_unless(c.applicable) {
        return o;
    }
    verdict((!c.agrees()).then(|| format!("{c:?}")))
}

fn local_domain_equivalences(s: &Subject) -> Outcome {
    let c = s.analysis.local_domain_equivalences(s.lattice);
    if let Some(o) = skip_unless(c.applicable) {
        return o;
    }
    verdict((!c.agrees()).then(|| format!("statements {:?}", c.statements)))
}

macro_rules! property {
    ($id:expr, $anchor:expr, $hyp:expr, $check:expr) => {
        PropertyDescriptor {
            id: $id,
            anchor: $anchor,
            hypothesis: $hyp,
            mandatory: false,
            check: $check,
        }
    };
}

/// All registered properties, in report order.
pub fn registry() -> Vec<PropertyDescriptor> {
    let mut v = vec![
        property!("P2.5.1", "x OA => sqrt(x) prime and sqrt(x)^2 <= x", "some OA element", radical_of_oa),
        property!("P2.5.2", "x OA, a proper, a !<= x => (x:a) prime", "some OA x and proper a !<= x", residuals_of_oa),
        property!(
            "P2.5.3",
            "x p-primary, (p^2:a) <= x for all a <= p with a !<= x => x OA",
            "some primary x meeting the residual condition",
            primary_residual_condition
        ),
        property!("P2.7", "some OA element not prime => L quasi-local", "some OA element not prime", oa_not_prime_forces_local),
        property!("P2.8", "(L,m) quasi-local, x proper: x OA <=> x prime or m^2 <= x < m", "quasi-local", local_oa_criterion),
        property!("P2.9", "some OA element not prime <=> L quasi-local with m^2 != m", "none", non_prime_oa_existence),
        property!(
            "P2.10",
            "L principally generated, m = J(L): every proper x OA <=> every proper principal x OA <=> L quasi-local and m^2 = 0",
            "principally generated",
            all_proper_oa
        ),
        property!(
            "P2.11",
            "L join-principally generated, every nonzero proper x OA => dim L = 0",
            "join-principally generated, every nonzero proper element OA",
            nonzero_oa_dimension_zero
        ),
        property!(
            "P2.12",
            "L principally generated, (L,m) quasi-local, m^2 comparable: principals above m^2 form a chain <=> every OA element is prime or m^2",
            "principally generated, quasi-local, m^2 comparable",
            oa_above_square
        ),
        property!("P2.13", "x, y OA and not prime => x meet y and x join y OA", "some OA element not prime", meet_join_of_non_prime_oa),
        property!("P2.14", "0 OA <=> L domain or (L,m) quasi-local with m^2 = 0", "none", zero_oa),
        property!(
            "P2.15",
            "every TA element OA <=> primes pairwise comparable and, for x TA and p in min(x), x = p or p = m",
            "none",
            ta_is_oa
        ),
        property!("P2.16", "x OA, p prime, p <= x => x OA in L/p", "some OA x above a prime", oa_in_quotient),
        property!("P2.17", "x OA, p prime, x <= p => x_p OA in L_p", "some OA x below a prime", oa_in_localization),
        property!(
            "P2.18",
            "L principally generated: every nonzero proper x OA <=> L = F x F for fields F, or (L,m) quasi-local with m = sqrt(0) and m^2 <= x for all nonzero proper principal x",
            "principally generated",
            nonzero_oa_structure
        ),
        property!(
            "P2.19",
            "L principally generated, quasi-local, Noetherian: every OA element prime <=> L field",
            "principally generated, quasi-local",
            oa_all_prime_field
        ),
        property!(
            "P3.2",
            "L TAFL, p prime => L/p, L_p TAFL; L1 x L2 TAFL <=> L1, L2 TAFL",
            "TAFL, or small enough for products with a field and a nilpotent chain",
            tafl_closure
        ),
        property!(
            "P3.6",
            "L CTAFL, p prime => L_p CTAFL and L/p CTAFL (p compact); L Pruefer => (CTAFL <=> PTAFL)",
            "CTAFL or Pruefer",
            ctafl_closure
        ),
        property!(
            "P3.3",
            "x proper, sqrt(x) maximal, and L TAFL (or L PTAFL and x principal) => x <= sqrt(x)^2 or sqrt(x)^2 <= x",
            "TAFL with such an x, or PTAFL with such a principal x",
            radical_square_comparable
        ),
        property!("P3.4", "L principally generated TAFL => dim L <= 1", "principally generated TAFL", pg_tafl_dimension),
        property!("P3.5", "L TAFL, Pruefer, domain => L ZPI", "TAFL Pruefer domain", prufer_tafl_domain_zpi),
        property!(
            "P3.10",
            "(L,m) quasi-local principally generated domain, dim L <= 1, m^2 comparable, meet of m^n = 0 => L TAFL",
            "quasi-local principally generated domain, dim <= 1, m^2 comparable, powers of m vanish",
            local_domain_tafl_criterion
        ),
        property!(
            "P3.11/3.12",
            "(L,m) quasi-local principally generated: domain => (TAFL <=> dim <= 1 and PTAFL, and then m^2 comparable and meet of m^n = 0); not domain => (TAFL <=> dim = 0 and PTAFL)",
            "quasi-local, principally generated",
            local_tafl
        ),
        property!(
            "P3.13",
            "(L,m) quasi-local, every element principal, TAFL domain => every proper x = m^k",
            "quasi-local Pruefer TAFL domain",
            proper_elements_powers_of_m
        ),
        property!(
            "P4.2",
            "L OAFL, p prime => L Q-lattice, TAFL; L_p and L/p OAFL",
            "OAFL",
            oafl_consequences
        ),
        property!("P4.3", "L principally generated OAFL => dim L <= 1", "principally generated OAFL", pg_oafl_dimension),
        property!(
            "P4.4",
            "(L,m) quasi-local principally generated, m^2 comparable, m nilpotent or (domain and meet of m^n = 0) => OAFL and every proper principal is a product of principal OA elements",
            "quasi-local principally generated, m^2 comparable, m nilpotent or local domain with vanishing powers",
            local_oafl_sufficient
        ),
        property!(
            "P4.6",
            "L quasi-local COAFL => every minimal nonmaximal prime weak meet principal",
            "quasi-local COAFL",
            coafl_minimal_primes_weak_meet
        ),
        property!("P4.7", "L Pruefer => (COAFL <=> POAFL)", "Pruefer", prufer_coafl_poafl),
        property!(
            "P4.8",
            "L quasi-local principally generated POAFL => every minimal nonmaximal prime principal",
            "quasi-local principally generated POAFL",
            poafl_minimal_primes_principal
        ),
        property!(
            "P4.9",
            "(L,m) quasi-local principally generated, joins of principal pairs OA-factorizable => nonmaximal primes principal, dim L <= 2",
            "quasi-local principally generated with OA-factorizable principal pair joins",
            pair_joins_local
        ),
        property!(
            "P4.10",
            "L principally generated, joins of principal pairs OA-factorizable => dim L <= 1",
            "principally generated with OA-factorizable principal pair joins",
            pair_joins_dimension
        ),
        property!(
            "P4.11",
            "(L,m) quasi-local principally generated, joins of principal pairs OA-factorizable, dim L = 1 => L domain",
            "quasi-local principally generated, pair joins OA-factorizable, dim = 1",
            pair_joins_dimension_one_domain
        ),
        property!(
            "T4.13",
            "L principally generated, m = J(L): OAFL <=> COAFL <=> principal pair joins OA-factorizable <=> ZPI or (quasi-local, m^2 comparable, m nilpotent) or (quasi-local domain, m^2 comparable, meet of m^n = 0)",
            "principally generated",
            oafl_structure
        ),
        property!(
            "T4.14",
            "L principally generated: ZPI <=> Pruefer OAFL <=> Pruefer POAFL",
            "principally generated",
            prufer_zpi
        ),
        property!(
            "T4.15",
            "(L,m) quasi-local principally generated domain: OAFL <=> TAFL <=> COAFL <=> CTAFL with ACC on primes <=> dim <= 1 and POAFL <=> dim <= 1 and PTAFL <=> dim <= 1, m^2 comparable, meet of m^n = 0",
            "quasi-local principally generated domain",
            local_domain_equivalences
        ),
    ];
    for p in &mut v {
        p.mandatory = MANDATORY.contains(&p.id);
    }
    v
}

pub fn lookup(id: &str) -> Option<PropertyDescriptor> {
    registry().into_iter().find(|p| p.id == id)
}

/// Evaluates one property on one lattice, computing the analysis.
pub fn evaluate(p: &PropertyDescriptor, id: &str, l: &Lattice, cap: usize) -> Outcome {
    let analysis = LatticeAnalysis::new(l);
    (p.check)(&Subject {
        id,
        lattice: l,
        analysis: &analysis,
        cap,
    })
}
