//! Factorization into prime, primary, 2-absorbing and 1-absorbing elements.
//!
//! Products of members of a class form a finite submonoid, so "has a
//! factorization" is reachability from the top under multiplication by
//! class members. A breadth-first closure gives minimal factor counts; ties
//! are broken towards the lexicographically smallest factor sequence.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::classify::{self, ElementClassification, LatticeProfile};
use crate::lattice::{Elem, Lattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorClass {
    Prime,
    Primary,
    TwoAbsorbing,
    OneAbsorbing,
    /// 1-absorbing and principal.
    PrincipalOneAbsorbing,
}

impl FactorClass {
    pub const ALL: [FactorClass; 5] = [
        FactorClass::Prime,
        FactorClass::Primary,
        FactorClass::TwoAbsorbing,
        FactorClass::OneAbsorbing,
        FactorClass::PrincipalOneAbsorbing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FactorClass::Prime => "prime",
            FactorClass::Primary => "primary",
            FactorClass::TwoAbsorbing => "ta",
            FactorClass::OneAbsorbing => "oa",
            FactorClass::PrincipalOneAbsorbing => "principal-oa",
        }
    }

    pub fn parse(s: &str) -> Option<FactorClass> {
        FactorClass::ALL.into_iter().find(|c| c.as_str() == s)
    }

    pub fn admits(self, l: &Lattice, x: Elem) -> bool {
        match self {
            FactorClass::Prime => classify::is_prime(l, x),
            FactorClass::Primary => classify::is_primary(l, x),
            FactorClass::TwoAbsorbing => classify::is_two_absorbing(l, x),
            FactorClass::OneAbsorbing => classify::is_one_absorbing(l, x),
            FactorClass::PrincipalOneAbsorbing => {
                classify::is_one_absorbing(l, x) && classify::is_principal(l, x)
            }
        }
    }

    /// Same as [`FactorClass::admits`], read off a precomputed classification.
    pub fn admits_classified(self, c: &ElementClassification) -> bool {
        match self {
            FactorClass::Prime => c.is_prime,
            FactorClass::Primary => c.is_primary,
            FactorClass::TwoAbsorbing => c.is_two_absorbing,
            FactorClass::OneAbsorbing => c.is_one_absorbing,
            FactorClass::PrincipalOneAbsorbing => c.is_one_absorbing && c.is_principal(),
        }
    }
}

impl fmt::Display for FactorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A product decomposition of `target` into members of `class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub target: Elem,
    pub class: FactorClass,
    /// Empty exactly for the top.
    pub factors: Vec<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("factors multiply to {product}, not {target}")]
    WrongProduct { target: Elem, product: Elem },
    #[error("factor {0} is not in the class")]
    FactorOutsideClass(Elem),
}

impl FactorizationWitness {
    /// Re-multiplies the factors and re-runs the class predicate on each.
    pub fn verify(&self, l: &Lattice) -> Result<(), WitnessError> {
        let product = l.product(self.factors.iter().copied());
        if product != self.target {
            return Err(WitnessError::WrongProduct {
                target: self.target,
                product,
            });
        }
        match self.factors.iter().find(|&&f| !self.class.admits(l, f)) {
            Some(&f) => Err(WitnessError::FactorOutsideClass(f)),
            None => Ok(()),
        }
    }
}

/// Everything reachable from the top by multiplying with class members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachSet {
    class: FactorClass,
    members: Vec<Elem>,
    depth: Vec<Option<usize>>,
    /// Shortest, then lexicographically smallest, factor sequence.
    best: Vec<Option<Vec<Elem>>>,
}

impl ReachSet {
    pub fn new(l: &Lattice, class: FactorClass) -> ReachSet {
        let members: Vec<Elem> = l.elements().filter(|&x| class.admits(l, x)).collect();
        ReachSet::from_members(l, class, members)
    }

    /// Closure over an already known member list (ascending indices).
    pub fn from_members(l: &Lattice, class: FactorClass, members: Vec<Elem>) -> ReachSet {
        let n = l.size();
        let mut depth = vec![None; n];
        let mut best: Vec<Option<Vec<Elem>>> = vec![None; n];
        depth[l.top()] = Some(0);
        best[l.top()] = Some(Vec::new());
        let mut layer = vec![l.top()];
        let mut d = 0;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &y in &layer {
                for &f in &members {
                    let z = l.mul(f, y);
                    if depth[z].is_none() {
                        depth[z] = Some(d + 1);
                        next.push(z);
                    }
                }
            }
            for &y in &layer {
                let tail = best[y].clone().expect("layer element has a witness");
                for &f in &members {
                    let z = l.mul(f, y);
                    if depth[z] != Some(d + 1) {
                        continue;
                    }
                    let mut cand = Vec::with_capacity(tail.len() + 1);
                    cand.push(f);
                    cand.extend_from_slice(&tail);
                    if best[z].as_ref().is_none_or(|b| cand < *b) {
                        best[z] = Some(cand);
                    }
                }
            }
            next.sort_unstable();
            layer = next;
            d += 1;
        }
        ReachSet {
            class,
            members,
            depth,
            best,
        }
    }

    pub fn class(&self) -> FactorClass {
        self.class
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.depth[x].is_some()
    }

    pub fn reached(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.depth.len()).filter(|&x| self.contains(x))
    }

    /// Minimal number of factors, if `x` is reachable.
    pub fn depth(&self, x: Elem) -> Option<usize> {
        self.depth[x]
    }

    /// First factor and the remaining product of the chosen witness.
    pub fn predecessor(&self, l: &Lattice, x: Elem) -> Option<(Elem, Elem)> {
        let seq = self.best[x].as_ref()?;
        let (&first, rest) = seq.split_first()?;
        Some((first, l.product(rest.iter().copied())))
    }

    pub fn witness(&self, x: Elem) -> Option<FactorizationWitness> {
        self.best[x].as_ref().map(|f| FactorizationWitness {
            target: x,
            class: self.class,
            factors: f.clone(),
        })
    }

    /// First element of `among` that is not reachable.
    pub fn first_missing<I: IntoIterator<Item = Elem>>(&self, among: I) -> Option<Elem> {
        among.into_iter().find(|&x| !self.contains(x))
    }
}

pub fn factor_closure(l: &Lattice, class: FactorClass) -> ReachSet {
    ReachSet::new(l, class)
}

pub fn factorization(l: &Lattice, x: Elem, class: FactorClass) -> Option<FactorizationWitness> {
    ReachSet::new(l, class).witness(x)
}

/// Holds when `counterexample` is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FactorizationVerdict {
    /// Smallest element index without a factorization, among those required.
    pub counterexample: Option<Elem>,
}

impl FactorizationVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Lattice-level factorization flags.
///
/// Every element of a finite lattice is compact, so the compact variants
/// coincide with the unrestricted ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizationProfile {
    pub zpi: FactorizationVerdict,
    pub q_lattice: FactorizationVerdict,
    pub tafl: FactorizationVerdict,
    pub oafl: FactorizationVerdict,
    pub ptafl: FactorizationVerdict,
    pub poafl: FactorizationVerdict,
    pub ctafl: FactorizationVerdict,
    pub coafl: FactorizationVerdict,
}

impl FactorizationProfile {
    pub fn is_zpi(&self) -> bool {
        self.zpi.holds()
    }
    pub fn is_q_lattice(&self) -> bool {
        self.q_lattice.holds()
    }
    pub fn is_tafl(&self) -> bool {
        self.tafl.holds()
    }
    pub fn is_oafl(&self) -> bool {
        self.oafl.holds()
    }
    pub fn is_ptafl(&self) -> bool {
        self.ptafl.holds()
    }
    pub fn is_poafl(&self) -> bool {
        self.poafl.holds()
    }
    pub fn is_ctafl(&self) -> bool {
        self.ctafl.holds()
    }
    pub fn is_coafl(&self) -> bool {
        self.coafl.holds()
    }
}

/// The four closures the lattice-level flags are read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassClosures {
    pub prime: ReachSet,
    pub primary: ReachSet,
    pub two_absorbing: ReachSet,
    pub one_absorbing: ReachSet,
    pub principal_one_absorbing: ReachSet,
}

impl ClassClosures {
    pub fn new(l: &Lattice, elements: &[ElementClassification]) -> ClassClosures {
        let build = |class: FactorClass| {
            let members = elements
                .iter()
                .filter(|c| class.admits_classified(c))
                .map(|c| c.element)
                .collect();
            ReachSet::from_members(l, class, members)
        };
        ClassClosures {
            prime: build(FactorClass::Prime),
            primary: build(FactorClass::Primary),
            two_absorbing: build(FactorClass::TwoAbsorbing),
            one_absorbing: build(FactorClass::OneAbsorbing),
            principal_one_absorbing: build(FactorClass::PrincipalOneAbsorbing),
        }
    }

    pub fn get(&self, class: FactorClass) -> &ReachSet {
        match class {
            FactorClass::Prime => &self.prime,
            FactorClass::Primary => &self.primary,
            FactorClass::TwoAbsorbing => &self.two_absorbing,
            FactorClass::OneAbsorbing => &self.one_absorbing,
            FactorClass::PrincipalOneAbsorbing => &self.principal_one_absorbing,
        }
    }

    pub fn profile(&self, l: &Lattice, principal: &[Elem]) -> FactorizationProfile {
        let all = |r: &ReachSet| FactorizationVerdict {
            counterexample: r.first_missing(l.elements()),
        };
        let principals = |r: &ReachSet| FactorizationVerdict {
            counterexample: r.first_missing(principal.iter().copied()),
        };
        let tafl = all(&self.two_absorbing);
        let oafl = all(&self.one_absorbing);
        FactorizationProfile {
            zpi: all(&self.prime),
            q_lattice: all(&self.primary),
            tafl,
            oafl,
            ptafl: principals(&self.two_absorbing),
            poafl: principals(&self.one_absorbing),
            ctafl: tafl,
            coafl: oafl,
        }
    }
}

pub fn classify_factorization_lattice(l: &Lattice) -> FactorizationProfile {
    let elements = classify::classify_all(l);
    let principal: Vec<Elem> = elements.iter().filter(|c| c.is_principal()).map(|c| c.element).collect();
    ClassClosures::new(l, &elements).profile(l, &principal)
}

/// OAFL status of a principally generated lattice compared against its
/// structural characterization. `m` is the meet of the maximal elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OaflCharacterization {
    /// Principally generated.
    pub applicable: bool,
    pub zpi: bool,
    /// Quasi-local, `m^2` comparable, `m` nilpotent.
    pub nilpotent_local: bool,
    /// Quasi-local domain, `m^2` comparable, powers of `m` meet to `0`.
    pub local_domain: bool,
    /// Every join of two principal elements has an OA-factorization.
    pub principal_pair_joins: bool,
    /// First join of two principals without an OA-factorization.
    pub principal_pair_counterexample: Option<(Elem, Elem)>,
    pub oafl: bool,
    pub coafl: bool,
}

impl OaflCharacterization {
    pub fn fast_path(&self) -> bool {
        self.zpi || self.nilpotent_local || self.local_domain
    }

    pub fn agrees(&self) -> bool {
        !self.applicable
            || (self.fast_path() == self.oafl && self.oafl == self.coafl && self.oafl == self.principal_pair_joins)
    }
}

pub fn oafl_characterization(
    l: &Lattice,
    profile: &LatticeProfile,
    closures: &ClassClosures,
    factorization: &FactorizationProfile,
) -> OaflCharacterization {
    let (m2_comparable, nilpotent, powers_vanish) = match profile.maximal {
        Some(m) => (
            profile.m_squared_comparable,
            l.is_nilpotent(m),
            l.stable_power(m).1 == l.bottom(),
        ),
        None => (false, false, false),
    };
    let oa = &closures.one_absorbing;
    let principals = &profile.principal_elements;
    let principal_pair_counterexample = principals
        .iter()
        .flat_map(|&a| principals.iter().filter(move |&&b| b >= a).map(move |&b| (a, b)))
        .find(|&(a, b)| !oa.contains(l.join2(a, b)));
    OaflCharacterization {
        applicable: profile.is_principally_generated,
        zpi: factorization.is_zpi(),
        nilpotent_local: profile.is_quasi_local && m2_comparable && nilpotent,
        local_domain: profile.is_quasi_local && profile.is_domain && m2_comparable && powers_vanish,
        principal_pair_joins: principal_pair_counterexample.is_none(),
        principal_pair_counterexample,
        oafl: factorization.is_oafl(),
        coafl: factorization.is_coafl(),
    }
}

/// TAFL status of a quasi-local principally generated lattice against
/// dimension and the principal-element restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalTaflCharacterization {
    pub applicable: bool,
    pub domain: bool,
    pub dimension: usize,
    pub tafl: bool,
    pub ptafl: bool,
    /// In a domain that is a TAFL: `m^2` comparable and powers of `m` meet
    /// to `0`. `None` when not required.
    pub consequences: Option<bool>,
}

impl LocalTaflCharacterization {
    /// `dim <= 1` and PTAFL for domains, `dim = 0` and PTAFL otherwise.
    pub fn predicted(&self) -> bool {
        let dim_ok = if self.domain {
            self.dimension <= 1
        } else {
            self.dimension == 0
        };
        dim_ok && self.ptafl
    }

    pub fn agrees(&self) -> bool {
        !self.applicable || (self.predicted() == self.tafl && self.consequences != Some(false))
    }
}

pub fn local_tafl_characterization(
    l: &Lattice,
    profile: &LatticeProfile,
    factorization: &FactorizationProfile,
) -> LocalTaflCharacterization {
    let applicable = profile.is_quasi_local && profile.is_principally_generated;
    let tafl = factorization.is_tafl();
    let consequences = match profile.maximal {
        Some(m) if applicable && profile.is_domain && tafl => {
            Some(profile.m_squared_comparable && l.stable_power(m).1 == l.bottom())
        }
        _ => None,
    };
    LocalTaflCharacterization {
        applicable,
        domain: profile.is_domain,
        dimension: profile.dimension,
        tafl,
        ptafl: factorization.is_ptafl(),
        consequences,
    }
}

/// ZPI versus Prüfer OAFL versus Prüfer POAFL, for principally generated
/// lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PruferZpiEquivalence {
    pub applicable: bool,
    pub zpi: bool,
    pub prufer_oafl: bool,
    pub prufer_poafl: bool,
}

impl PruferZpiEquivalence {
    pub fn agrees(&self) -> bool {
        !self.applicable || (self.zpi == self.prufer_oafl && self.zpi == self.prufer_poafl)
    }
}

pub fn prufer_zpi_equivalence(profile: &LatticeProfile, factorization: &FactorizationProfile) -> PruferZpiEquivalence {
    PruferZpiEquivalence {
        applicable: profile.is_principally_generated,
        zpi: factorization.is_zpi(),
        prufer_oafl: profile.is_prufer && factorization.is_oafl(),
        prufer_poafl: profile.is_prufer && factorization.is_poafl(),
    }
}

/// Seven statements that coincide for quasi-local principally generated
/// domains, in this order: OAFL; TAFL; COAFL; CTAFL with ACC on primes;
/// `dim <= 1` and POAFL; `dim <= 1` and PTAFL; `dim <= 1`, `m^2`
/// comparable and powers of `m` meeting to `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalDomainEquivalences {
    pub applicable: bool,
    pub statements: [bool; 7],
}

impl LocalDomainEquivalences {
    pub fn agrees(&self) -> bool {
        !self.applicable || self.statements.iter().all(|&s| s == self.statements[0])
    }
}

pub fn local_domain_equivalences(
    l: &Lattice,
    profile: &LatticeProfile,
    factorization: &FactorizationProfile,
) -> LocalDomainEquivalences {
    let applicable = profile.is_quasi_local && profile.is_principally_generated && profile.is_domain;
    let low_dim = profile.dimension <= 1;
    let powers_vanish = profile
        .maximal
        .is_some_and(|m| l.stable_power(m).1 == l.bottom());
    // The ascending chain condition holds in any finite lattice.
    let acc_on_primes = true;
    LocalDomainEquivalences {
        applicable,
        statements: [
            factorization.is_oafl(),
            factorization.is_tafl(),
            factorization.is_coafl(),
            factorization.is_ctafl() && acc_on_primes,
            low_dim && factorization.is_poafl(),
            low_dim && factorization.is_ptafl(),
            low_dim && profile.m_squared_comparable && powers_vanish,
        ],
    }
}
