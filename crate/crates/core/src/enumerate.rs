//! Exhaustive enumeration of small multiplicative lattices up to isomorphism.
//!
//! Two strategies are provided so their counts can be cross-checked:
//!
//! * [`Strategy::OrderFirst`] enumerates lattice orders up to isomorphism,
//!   then for each order only the products of join-irreducible elements
//!   (a multiplication that distributes over joins is determined by them),
//!   pruned by monotonicity and `ab <= a ^ b`. Deduplication uses
//!   [`Lattice::canonical_form`].
//! * [`Strategy::TableFirst`] walks every naturally labelled order and every
//!   table entry below the meet, and deduplicates by minimising the encoding
//!   over all permutations of the non-extremal elements. It does not use the
//!   canonical-form search and is only offered up to order 5.
//!
//! Lattices are emitted by increasing size, then by canonical certificate,
//! each relabelled into its canonical labelling.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::{self, Elem, Lattice, OrderTables, ValidationReport};

pub const MAX_ENUMERATION_ORDER: usize = 7;
pub const MAX_TABLE_FIRST_ORDER: usize = 5;
pub const DEFAULT_ENUMERATION_ORDER: usize = 5;
/// Default cap on complete candidate tables examined.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    OrderFirst,
    TableFirst,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("order {requested} exceeds the supported maximum {max}")]
    OrderTooLarge { requested: usize, max: usize },
    #[error("budget exhausted after {examined} candidate tables")]
    BudgetExceeded { examined: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// `per_order[k]` lattices of exactly `k` elements.
    pub per_order: Vec<usize>,
    pub candidates: u64,
}

impl EnumerationStats {
    pub fn total(&self) -> usize {
        self.per_order.iter().sum()
    }
}

/// Order-first enumeration of all multiplicative lattices with
/// `2..=max_order` elements, with the default budget.
pub fn enumerate_multiplicative_lattices<F: FnMut(Lattice)>(
    max_order: usize,
    emit: F,
) -> Result<EnumerationStats, EnumerationError> {
    enumerate_with(Strategy::OrderFirst, max_order, DEFAULT_BUDGET, emit)
}

/// Collects the enumeration into a vector.
pub fn all_multiplicative_lattices(max_order: usize) -> Result<Vec<Lattice>, EnumerationError> {
    let mut out = Vec::new();
    enumerate_multiplicative_lattices(max_order, |l| out.push(l))?;
    Ok(out)
}

pub fn enumerate_with<F: FnMut(Lattice)>(
    strategy: Strategy,
    max_order: usize,
    budget: u64,
    mut emit: F,
) -> Result<EnumerationStats, EnumerationError> {
    let max = match strategy {
        Strategy::OrderFirst => MAX_ENUMERATION_ORDER,
        Strategy::TableFirst => MAX_TABLE_FIRST_ORDER,
    };
    if max_order > max {
        return Err(EnumerationError::OrderTooLarge {
            requested: max_order,
            max,
        });
    }
    let mut stats = EnumerationStats {
        per_order: vec![0; max_order + 1],
        candidates: 0,
    };
    for n in 2..=max_order {
        let found = match strategy {
            Strategy::OrderFirst => order_first(n, budget, &mut stats.candidates)?,
            Strategy::TableFirst => table_first(n, budget, &mut stats.candidates)?,
        };
        // The count comes from each strategy's own deduplication; sorting by
        // canonical certificate only fixes the emission order.
        stats.per_order[n] = found.len();
        let mut sorted: Vec<(Vec<u16>, Lattice)> = found
            .into_iter()
            .map(|l| {
                let cf = l.canonical_form();
                let canon = l.relabel(cf.labeling());
                (cf.into_certificate(), canon)
            })
            .collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, l) in sorted {
            emit(l);
        }
    }
    Ok(stats)
}

/// Strict relations on the middle elements `1..=n-2` that only relate a
/// smaller index to a larger one, closed transitively, with bottom `0` and
/// top `n - 1` added. Every finite poset has such a labelling.
fn natural_orders(n: usize) -> Vec<OrderTables> {
    let middle: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = middle
        .iter()
        .flat_map(|&i| middle.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let rel = |i: usize, j: usize| {
            pairs
                .iter()
                .position(|&p| p == (i, j))
                .is_some_and(|k| mask & (1 << k) != 0)
        };
        let transitive = pairs.iter().all(|&(i, j)| {
            !rel(i, j) || middle.iter().filter(|&&k| k > j).all(|&k| !rel(j, k) || rel(i, k))
        });
        if !transitive {
            continue;
        }
        let mut gens: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(i, j)| rel(i, j)).collect();
        for x in 1..n {
            gens.push((0, x));
        }
        for x in 0..n - 1 {
            gens.push((x, n - 1));
        }
        let mut report = ValidationReport::default();
        if let Some(ord) = lattice::order_tables(n, &gens, &mut report) {
            out.push(ord);
        }
    }
    out
}

fn order_key(n: usize, ord: &OrderTables) -> Vec<u16> {
    crate::canonical::canonical_structure(n, &ord.up, None).into_certificate()
}

fn finish(n: usize, ord: &OrderTables, mul: Vec<u16>) -> Option<Lattice> {
    let mut report = ValidationReport::default();
    lattice::check_multiplication(n, ord, &mul, &mut report);
    if !report.is_empty() {
        return None;
    }
    let copy = OrderTables {
        up: ord.up.clone(),
        down: ord.down.clone(),
        join: ord.join.clone(),
        meet: ord.meet.clone(),
        bottom: ord.bottom,
        top: ord.top,
    };
    Some(Lattice::from_checked(n, copy, mul, None))
}

fn charge(counter: &mut u64, budget: u64) -> Result<(), EnumerationError> {
    *counter += 1;
    if *counter > budget {
        return Err(EnumerationError::BudgetExceeded { examined: *counter });
    }
    Ok(())
}

struct JoinIrreducibleSearch<'a> {
    n: usize,
    ord: &'a OrderTables,
    irr: Vec<Elem>,
    /// Unordered pairs of positions in `irr`.
    pairs: Vec<(usize, usize)>,
    values: Vec<Option<Elem>>,
    budget: u64,
    found: Vec<Lattice>,
}

impl JoinIrreducibleSearch<'_> {
    fn leq(&self, a: Elem, b: Elem) -> bool {
        self.ord.up[a].contains(b)
    }

    fn value(&self, i: usize, k: usize) -> Option<Elem> {
        let key = if i <= k { (i, k) } else { (k, i) };
        let pos = self.pairs.iter().position(|&p| p == key).expect("pair");
        self.values[pos]
    }

    /// Monotonicity against every already-assigned pair.
    fn consistent(&self, i: usize, k: usize, v: Elem) -> bool {
        for &(i2, k2) in &self.pairs {
            let Some(w) = self.value(i2, k2) else { continue };
            for (a, b) in [(i2, k2), (k2, i2)] {
                let below = self.leq(self.irr[a], self.irr[i]) && self.leq(self.irr[b], self.irr[k]);
                let above = self.leq(self.irr[i], self.irr[a]) && self.leq(self.irr[k], self.irr[b]);
                if (below && !self.leq(w, v)) || (above && !self.leq(v, w)) {
                    return false;
                }
            }
        }
        true
    }

    fn table(&self) -> Vec<u16> {
        let n = self.n;
        let (bottom, top) = (self.ord.bottom, self.ord.top);
        let below: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..self.irr.len()).filter(|&i| self.leq(self.irr[i], x)).collect())
            .collect();
        let mut mul = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = if x == top {
                    y
                } else if y == top {
                    x
                } else {
                    let mut acc = bottom;
                    for &i in &below[x] {
                        for &k in &below[y] {
                            let p = self.value(i, k).expect("complete assignment");
                            acc = self.ord.join[acc * n + p] as usize;
                        }
                    }
                    acc
                };
                mul[x * n + y] = v as u16;
            }
        }
        mul
    }

    fn run(&mut self, depth: usize, counter: &mut u64) -> Result<(), EnumerationError> {
        if depth == self.pairs.len() {
            charge(counter, self.budget)?;
            if let Some(l) = finish(self.n, self.ord, self.table()) {
                self.found.push(l);
            }
            return Ok(());
        }
        let (i, k) = self.pairs[depth];
        let m = self.ord.meet[self.irr[i] * self.n + self.irr[k]] as usize;
        let candidates: Vec<Elem> = self.ord.down[m].ones().collect();
        for v in candidates {
            if self.consistent(i, k, v) {
                self.values[depth] = Some(v);
                self.run(depth + 1, counter)?;
                self.values[depth] = None;
            }
        }
        Ok(())
    }
}

fn order_first(n: usize, budget: u64, counter: &mut u64) -> Result<Vec<Lattice>, EnumerationError> {
    let mut reps: BTreeMap<Vec<u16>, OrderTables> = BTreeMap::new();
    for ord in natural_orders(n) {
        reps.entry(order_key(n, &ord)).or_insert(ord);
    }
    let mut found = Vec::new();
    for ord in reps.values() {
        let irr: Vec<Elem> = (0..n)
            .filter(|&x| x != ord.bottom && x != ord.top)
            .filter(|&x| {
                // Exactly one lower cover.
                let strictly_below: Vec<usize> = ord.down[x].ones().filter(|&y| y != x).collect();
                strictly_below
                    .iter()
                    .filter(|&&y| !strictly_below.iter().any(|&z| z != y && ord.up[y].contains(z)))
                    .count()
                    == 1
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..irr.len())
            .flat_map(|i| (i..irr.len()).map(move |k| (i, k)))
            .collect();
        let mut search = JoinIrreducibleSearch {
            n,
            ord,
            values: vec![None; pairs.len()],
            irr,
            pairs,
            budget,
            found: Vec::new(),
        };
        search.run(0, counter)?;
        found.extend(search.found);
    }
    let mut unique: BTreeMap<Vec<u16>, Lattice> = BTreeMap::new();
    for l in found {
        unique.entry(l.canonical_form().into_certificate()).or_insert(l);
    }
    Ok(unique.into_values().collect())
}

/// Encoding of `(order, table)` under `perm` (old -> new).
fn encode(n: usize, ord: &OrderTables, mul: &[u16], perm: &[usize]) -> Vec<u16> {
    let mut inv = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let mut out = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(u16::from(ord.up[inv[i]].contains(inv[j])));
        }
    }
    for i in 0..n {
        for j in 0..n {
            out.push(perm[mul[inv[i] * n + inv[j]] as usize] as u16);
        }
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn table_first(n: usize, budget: u64, counter: &mut u64) -> Result<Vec<Lattice>, EnumerationError> {
    let middle: Vec<usize> = (1..n - 1).collect();
    let perms: Vec<Vec<usize>> = permutations(&middle)
        .into_iter()
        .map(|image| {
            let mut p = vec![0; n];
            p[n - 1] = n - 1;
            for (k, &m) in middle.iter().enumerate() {
                p[m] = image[k];
            }
            p
        })
        .collect();
    let pairs: Vec<(usize, usize)> = middle
        .iter()
        .flat_map(|&i| middle.iter().filter(move |&&k| k >= i).map(move |&k| (i, k)))
        .collect();
    let mut unique: BTreeMap<Vec<u16>, Lattice> = BTreeMap::new();
    for ord in natural_orders(n) {
        let choices: Vec<Vec<usize>> = pairs
            .iter()
            .map(|&(i, k)| ord.down[ord.meet[i * n + k] as usize].ones().collect())
            .collect();
        let mut digits = vec![0usize; pairs.len()];
        loop {
            charge(counter, budget)?;
            let mut mul = vec![0u16; n * n];
            for x in 0..n {
                mul[(n - 1) * n + x] = x as u16;
                mul[x * n + n - 1] = x as u16;
            }
            for (p, &(i, k)) in pairs.iter().enumerate() {
                let v = choices[p][digits[p]] as u16;
                mul[i * n + k] = v;
                mul[k * n + i] = v;
            }
            if let Some(l) = finish(n, &ord, mul.clone()) {
                let key = perms
                    .iter()
                    .map(|p| encode(n, &ord, &mul, p))
                    .min()
                    .expect("at least one permutation");
                unique.entry(key).or_insert(l);
            }
            // Odometer over the choice lists.
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < choices[pos].len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    Ok(unique.into_values().collect())
}
