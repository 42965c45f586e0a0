//! Counterexample search over the enumerated small lattices.
//!
//! Lattices are visited by size, then in canonical order, so the first
//! counterexample found is the smallest one.

use mlcheck_core::analysis::LatticeAnalysis;
use mlcheck_core::enumerate::{enumerate_multiplicative_lattices, EnumerationError};
use mlcheck_core::{Elem, Lattice};

#[derive(Debug, Clone, Copy)]
pub struct Conjecture {
    pub id: &'static str,
    pub statement: &'static str,
    search: fn(&Lattice, &LatticeAnalysis, &mut u64) -> Option<Vec<Elem>>,
}

#[derive(Debug, thiserror::Error)]
pub enum HuntError {
    #[error("unknown conjecture `{0}`")]
    Unknown(String),
    #[error("enumeration: {0}")]
    Enumeration(#[from] EnumerationError),
}

#[derive(Debug, Clone)]
pub enum HuntOutcome {
    Counterexample {
        lattice_id: String,
        lattice: Box<Lattice>,
        /// Elements named by the conjecture, in its order.
        witness: Vec<Elem>,
        examined: usize,
    },
    /// Every lattice up to the bound satisfies the conjecture.
    Clean { examined: usize },
    /// Stopped before covering the search space.
    BudgetExhausted { examined: usize, spent: u64 },
}

fn pairs_of(elems: &[Elem], spent: &mut u64, bad: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i..] {
            *spent += 1;
            if bad(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

fn single(a: &LatticeAnalysis, spent: &mut u64, bad: impl Fn(&mlcheck_core::classify::ElementClassification) -> bool) -> Option<Vec<Elem>> {
    *spent += a.elements.len() as u64;
    a.elements.iter().find(|c| bad(c)).map(|c| vec![c.element])
}

pub const CONJECTURES: [Conjecture; 7] = [
    Conjecture {
        id: "meet-of-OA-is-OA",
        statement: "x, y OA => x meet y OA",
        search: |l, a, spent| {
            let oa = a.one_absorbing();
            pairs_of(&oa, spent, |x, y| !a.elements[l.meet2(x, y)].is_one_absorbing)
        },
    },
    Conjecture {
        id: "join-of-OA-is-OA",
        statement: "x, y OA, x join y proper => x join y OA",
        search: |l, a, spent| {
            let oa = a.one_absorbing();
            pairs_of(&oa, spent, |x, y| {
                let j = l.join2(x, y);
                l.is_proper(j) && !a.elements[j].is_one_absorbing
            })
        },
    },
    Conjecture {
        id: "ta-implies-oa",
        statement: "x TA => x OA",
        search: |_, a, spent| single(a, spent, |c| c.is_two_absorbing && !c.is_one_absorbing),
    },
    Conjecture {
        id: "primary-implies-oa",
        statement: "x primary => x OA",
        search: |_, a, spent| single(a, spent, |c| c.is_primary && !c.is_one_absorbing),
    },
    Conjecture {
        id: "prime-implies-oa",
        statement: "x prime => x OA",
        search: |_, a, spent| single(a, spent, |c| c.is_prime && !c.is_one_absorbing),
    },
    Conjecture {
        id: "oa-implies-ta",
        statement: "x OA => x TA",
        search: |_, a, spent| single(a, spent, |c| c.is_one_absorbing && !c.is_two_absorbing),
    },
    Conjecture {
        id: "oa-implies-primary",
        statement: "x OA => x primary",
        search: |_, a, spent| single(a, spent, |c| c.is_one_absorbing && !c.is_primary),
    },
];

pub fn conjecture(id: &str) -> Result<Conjecture, HuntError> {
    CONJECTURES
        .iter()
        .find(|c| c.id == id)
        .copied()
        .ok_or_else(|| HuntError::Unknown(id.to_string()))
}

impl Conjecture {
    /// Counterexample elements in `l`, if any.
    pub fn refute(&self, l: &Lattice) -> Option<Vec<Elem>> {
        let a = LatticeAnalysis::new(l);
        (self.search)(l, &a, &mut 0)
    }
}

/// Searches all lattices with at most `max_order` elements. `budget`
/// bounds the number of candidate elements or pairs inspected.
pub fn hunt(c: &Conjecture, max_order: usize, budget: u64) -> Result<HuntOutcome, HuntError> {
    let mut lattices = Vec::new();
    enumerate_multiplicative_lattices(max_order, |l| lattices.push(l))?;
    let total = lattices.len();
    let mut spent = 0u64;
    let mut index_in_order = 0usize;
    let mut last_size = 0usize;
    for (examined, l) in lattices.into_iter().enumerate() {
        if l.size() != last_size {
            last_size = l.size();
            index_in_order = 0;
        }
        if spent >= budget {
            return Ok(HuntOutcome::BudgetExhausted { examined, spent });
        }
        let a = LatticeAnalysis::new(&l);
        if let Some(witness) = (c.search)(&l, &a, &mut spent) {
            return Ok(HuntOutcome::Counterexample {
                lattice_id: format!("enum:n{}:{:03}", l.size(), index_in_order),
                lattice: Box::new(l),
                witness,
                examined: examined + 1,
            });
        }
        index_in_order += 1;
    }
    Ok(HuntOutcome::Clean { examined: total })
}
