//! Everything the property checks read about one lattice, computed once.

use alloc::vec::Vec;

use crate::classify::{self, ElementClassification, LatticeProfile};
use crate::factor::{
    self, ClassClosures, FactorizationProfile, LocalDomainEquivalences, LocalTaflCharacterization,
    OaflCharacterization, PruferZpiEquivalence,
};
use crate::lattice::{Elem, Lattice};

#[derive(Debug, Clone)]
pub struct LatticeAnalysis {
    pub elements: Vec<ElementClassification>,
    pub profile: LatticeProfile,
    pub closures: ClassClosures,
    pub factorization: FactorizationProfile,
}

impl LatticeAnalysis {
    pub fn new(l: &Lattice) -> LatticeAnalysis {
        let elements = classify::classify_all(l);
        let profile = classify::profile(l);
        let closures = ClassClosures::new(l, &elements);
        let factorization = closures.profile(l, &profile.principal_elements);
        LatticeAnalysis {
            elements,
            profile,
            closures,
            factorization,
        }
    }

    pub fn element(&self, x: Elem) -> &ElementClassification {
        &self.elements[x]
    }

    pub fn select(&self, pred: impl Fn(&ElementClassification) -> bool) -> Vec<Elem> {
        self.elements.iter().filter(|c| pred(c)).map(|c| c.element).collect()
    }

    pub fn one_absorbing(&self) -> Vec<Elem> {
        self.select(|c| c.is_one_absorbing)
    }

    pub fn two_absorbing(&self) -> Vec<Elem> {
        self.select(|c| c.is_two_absorbing)
    }

    pub fn oafl_characterization(&self, l: &Lattice) -> OaflCharacterization {
        factor::oafl_characterization(l, &self.profile, &self.closures, &self.factorization)
    }

    pub fn local_tafl_characterization(&self, l: &Lattice) -> LocalTaflCharacterization {
        factor::local_tafl_characterization(l, &self.profile, &self.factorization)
    }

    pub fn prufer_zpi_equivalence(&self) -> PruferZpiEquivalence {
        factor::prufer_zpi_equivalence(&self.profile, &self.factorization)
    }

    pub fn local_domain_equivalences(&self, l: &Lattice) -> LocalDomainEquivalences {
        factor::local_domain_equivalences(l, &self.profile, &self.factorization)
    }
}
