//! Canonical labelling of finite lattices up to isomorphism.
//!
//! Colour refinement over the order relation and the multiplication table,
//! followed by individualisation and backtracking. The certificate is the
//! lexicographically smallest relabelled encoding found over all leaves of
//! the search tree, so two structures are isomorphic iff their certificates
//! are equal.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::lattice::{Elem, Lattice};

/// A canonical relabelling and the certificate it produces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    certificate: Vec<u16>,
    /// `labeling[old] = new`.
    labeling: Vec<Elem>,
}

impl CanonicalForm {
    pub fn certificate(&self) -> &[u16] {
        &self.certificate
    }

    pub fn labeling(&self) -> &[Elem] {
        &self.labeling
    }

    pub fn into_certificate(self) -> Vec<u16> {
        self.certificate
    }
}

impl Lattice {
    /// Canonical form with respect to order- and multiplication-preserving
    /// bijections.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.size();
        let up: Vec<FixedBitSet> = self.elements().map(|a| self.up_set(a).clone()).collect();
        let mul: Vec<u16> = self
            .elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .map(|(a, b)| self.mul(a, b) as u16)
            .collect();
        canonical_structure(n, &up, Some(&mul))
    }

    /// Canonical form of the underlying order only.
    pub fn order_canonical_form(&self) -> CanonicalForm {
        let up: Vec<FixedBitSet> = self.elements().map(|a| self.up_set(a).clone()).collect();
        canonical_structure(self.size(), &up, None)
    }

    pub fn is_isomorphic(&self, other: &Lattice) -> bool {
        self.size() == other.size() && self.canonical_form().certificate == other.canonical_form().certificate
    }
}

struct Structure<'a> {
    n: usize,
    up: &'a [FixedBitSet],
    mul: Option<&'a [u16]>,
}

impl Structure<'_> {
    fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    fn mul(&self, a: usize, b: usize) -> u16 {
        match self.mul {
            Some(m) => m[a * self.n + b],
            None => 0,
        }
    }

    fn relation(&self, a: usize, b: usize) -> u32 {
        match (a == b, self.leq(a, b), self.leq(b, a)) {
            (true, _, _) => 0,
            (false, true, _) => 1,
            (false, _, true) => 2,
            _ => 3,
        }
    }
}

/// Replaces arbitrary sortable keys by their dense rank.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present") as u32)
        .collect()
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn initial_colors(s: &Structure<'_>) -> Vec<u32> {
    let keys: Vec<[u32; 4]> = (0..s.n)
        .map(|x| {
            let above = s.up[x].count_ones(..) as u32;
            let below = (0..s.n).filter(|&y| s.leq(y, x)).count() as u32;
            let (fixed, idem) = match s.mul {
                Some(_) => (
                    (0..s.n).filter(|&y| s.mul(x, y) as usize == x).count() as u32,
                    u32::from(s.mul(x, x) as usize == x),
                ),
                None => (0, 0),
            };
            [below, above, fixed, idem]
        })
        .collect();
    rank(&keys)
}

/// Own colour plus the sorted colours seen through each neighbour.
type RefineKey = (u32, Vec<(u32, u32, u32)>);

fn refine(s: &Structure<'_>, mut colors: Vec<u32>) -> Vec<u32> {
    let mut count = distinct(&colors);
    loop {
        let keys: Vec<RefineKey> = (0..s.n)
            .map(|x| {
                let mut nb: Vec<(u32, u32, u32)> = (0..s.n)
                    .map(|y| {
                        let prod = if s.mul.is_some() {
                            colors[s.mul(x, y) as usize]
                        } else {
                            0
                        };
                        (s.relation(x, y), colors[y], prod)
                    })
                    .collect();
                nb.sort_unstable();
                (colors[x], nb)
            })
            .collect();
        colors = rank(&keys);
        let next = distinct(&colors);
        if next == count {
            return colors;
        }
        count = next;
    }
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let keys: Vec<(u32, u32)> = colors
        .iter()
        .enumerate()
        .map(|(x, &c)| (c, u32::from(x != v)))
        .collect();
    rank(&keys)
}

fn certificate(s: &Structure<'_>, labeling: &[usize]) -> Vec<u16> {
    let n = s.n;
    let mut inv = vec![0usize; n];
    for (old, &new) in labeling.iter().enumerate() {
        inv[new] = old;
    }
    let mut cert = Vec::with_capacity(1 + 2 * n * n);
    cert.push(n as u16);
    for i in 0..n {
        for j in 0..n {
            cert.push(u16::from(s.leq(inv[i], inv[j])));
        }
    }
    if s.mul.is_some() {
        for i in 0..n {
            for j in 0..n {
                cert.push(labeling[s.mul(inv[i], inv[j]) as usize] as u16);
            }
        }
    }
    cert
}

fn search(s: &Structure<'_>, colors: Vec<u32>, best: &mut Option<CanonicalForm>) {
    let colors = refine(s, colors);
    if distinct(&colors) == s.n {
        let labeling: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let cert = certificate(s, &labeling);
        let better = match best {
            Some(b) => cert < b.certificate,
            None => true,
        };
        if better {
            *best = Some(CanonicalForm {
                certificate: cert,
                labeling,
            });
        }
        return;
    }
    // First non-singleton cell, by colour.
    let mut counts = vec![0usize; s.n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let target = counts.iter().position(|&k| k > 1).expect("non-discrete colouring") as u32;
    for v in (0..s.n).filter(|&x| colors[x] == target) {
        search(s, individualize(&colors, v), best);
    }
}

pub(crate) fn canonical_structure(n: usize, up: &[FixedBitSet], mul: Option<&[u16]>) -> CanonicalForm {
    let s = Structure { n, up, mul };
    let mut best = None;
    search(&s, initial_colors(&s), &mut best);
    best.expect("search reaches at least one leaf")
}
