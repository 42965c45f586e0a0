//! Finite commutative rings `Z/n[x]/(f, r_1, ..., r_k)` and their ideal
//! lattices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::constructions::{self, ConstructionError};
use crate::lattice::{Elem, Lattice, LatticeSpec, ValidationReport, DEFAULT_SIZE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("modulus {0} is below 2")]
    BadModulus(u64),
    #[error("defining polynomial is not monic of positive degree")]
    NotMonic,
    #[error("ring would have {size} elements, above the cap {cap}")]
    TooLarge { size: u64, cap: usize },
    #[error("the relations generate the unit ideal")]
    Trivial,
    #[error("table shape does not match {0} elements")]
    TableShape(usize),
    #[error("ring axiom `{axiom}` fails at {witness:?}")]
    Axiom { axiom: &'static str, witness: Vec<usize> },
    #[error("{count} ideals exceed the cap {cap}")]
    TooManyIdeals { count: usize, cap: usize },
    #[error("ideal lattice failed validation: {0}")]
    Lattice(ValidationReport),
    #[error("no ring element named `{0}`")]
    UnknownElement(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// `Z/modulus [x] / (poly, relations...)`. Coefficient lists are low degree
/// first. An empty `poly` denotes `Z/modulus` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    pub modulus: u64,
    pub poly: Vec<u64>,
    pub relations: Vec<Vec<u64>>,
}

impl RingPresentation {
    pub fn zn(n: u64) -> RingPresentation {
        RingPresentation {
            modulus: n,
            poly: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn new(modulus: u64, poly: Vec<u64>) -> RingPresentation {
        RingPresentation {
            modulus,
            poly,
            relations: Vec::new(),
        }
    }

    pub fn with_relation(mut self, rel: Vec<u64>) -> RingPresentation {
        self.relations.push(rel);
        self
    }

    /// Human-readable form, e.g. `Z/4[x]/(x^2,2x)`.
    pub fn describe(&self) -> String {
        if self.poly.is_empty() && self.relations.is_empty() {
            return format!("Z/{}", self.modulus);
        }
        let poly = if self.poly.is_empty() { vec![0, 1] } else { self.poly.clone() };
        let mut gens = vec![poly_name(&poly, self.modulus)];
        gens.extend(self.relations.iter().map(|r| poly_name(r, self.modulus)));
        format!("Z/{}[x]/({})", self.modulus, gens.join(","))
    }
}

fn poly_name(coeffs: &[u64], n: u64) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        let c = c % n;
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Coefficient-vector arithmetic modulo `(n, f)` with `f` monic of degree `d`.
struct PolyArith {
    n: u64,
    f: Vec<u64>,
    d: usize,
}

impl PolyArith {
    fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut c = vec![0; self.d];
        for slot in c.iter_mut() {
            *slot = idx as u64 % self.n;
            idx /= self.n as usize;
        }
        c
    }

    fn encode(&self, c: &[u64]) -> usize {
        c.iter().rev().fold(0usize, |acc, &x| acc * self.n as usize + x as usize)
    }

    fn reduce(&self, p: &[u64]) -> Vec<u64> {
        let mut p: Vec<u64> = p.iter().map(|&c| c % self.n).collect();
        for k in (self.d..p.len()).rev() {
            let c = p[k];
            if c == 0 {
                continue;
            }
            // x^k = x^(k-d) * x^d and x^d = -(f_0 + ... + f_{d-1} x^{d-1}).
            for i in 0..self.d {
                let sub = c * self.f[i] % self.n;
                p[k - self.d + i] = (p[k - self.d + i] + self.n - sub) % self.n;
            }
            p[k] = 0;
        }
        p.resize(self.d, 0);
        p
    }

    #[cfg(test)]
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut p = vec![0u64; 2 * self.d];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                p[i + j] = (p[i + j] + x * y) % self.n;
            }
        }
        self.reduce(&p)
    }

    /// Index of `a + b`, without allocating.
    fn add_index(&self, a: &[u64], b: &[u64]) -> usize {
        a.iter()
            .zip(b)
            .rev()
            .fold(0usize, |acc, (x, y)| acc * self.n as usize + ((x + y) % self.n) as usize)
    }

    /// Index of `a * b`, without allocating. Degrees stay below 16 because
    /// `n^d` is capped by `u16::MAX`.
    fn mul_index(&self, a: &[u64], b: &[u64]) -> usize {
        let d = self.d;
        let mut p = [0u64; 32];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                p[i + j] = (p[i + j] + x * y) % self.n;
            }
        }
        for k in (d..2 * d).rev() {
            let c = p[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                let sub = c * self.f[i] % self.n;
                p[k - d + i] = (p[k - d + i] + self.n - sub) % self.n;
            }
        }
        self.encode(&p[..d])
    }
}

/// A finite commutative ring with identity, by tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    zero: usize,
    one: usize,
    names: Vec<String>,
}

impl FiniteRing {
    /// Checks the commutative-ring-with-identity axioms.
    pub fn from_tables(
        size: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: usize,
        one: usize,
        names: Vec<String>,
    ) -> Result<FiniteRing, RingError> {
        if size == 0
            || add.len() != size * size
            || mul.len() != size * size
            || names.len() != size
            || zero >= size
            || one >= size
            || add.iter().chain(&mul).any(|&v| v as usize >= size)
        {
            return Err(RingError::TableShape(size));
        }
        let r = FiniteRing {
            size,
            add,
            mul,
            zero,
            one,
            names,
        };
        r.check_axioms()?;
        Ok(r)
    }

    fn check_axioms(&self) -> Result<(), RingError> {
        let n = self.size;
        let fail = |axiom: &'static str, witness: Vec<usize>| Err(RingError::Axiom { axiom, witness });
        if n == 1 {
            return fail("nontrivial", vec![0]);
        }
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return fail("additive identity", vec![a]);
            }
            if self.mul(a, self.one) != a {
                return fail("multiplicative identity", vec![a]);
            }
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return fail("additive inverse", vec![a]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", vec![a, b]);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity", vec![a, b]);
                }
            }
        }
        // Three-variable laws are reduced to a generating set `g` of the
        // additive monoid: Light's test for `+`; additivity of `y -> a*y`
        // against `g` gives distributivity; then `(ab)c` and `a(bc)` are
        // additive in each argument, so agreeing on `g^3` suffices.
        let g = self.additive_generators();
        for &s in &g {
            for a in 0..n {
                for b in 0..n {
                    if self.add(self.add(a, s), b) != self.add(a, self.add(s, b)) {
                        return fail("additive associativity", vec![a, s, b]);
                    }
                    if self.mul(a, self.add(b, s)) != self.add(self.mul(a, b), self.mul(a, s)) {
                        return fail("distributivity", vec![a, b, s]);
                    }
                }
            }
        }
        for &a in &g {
            for &b in &g {
                for &c in &g {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("associativity", vec![a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set: every element is `g_1 + (g_2 + (... + g_k))`
    /// for generators `g_i`.
    fn additive_generators(&self) -> Vec<usize> {
        let n = self.size;
        let mut gens = Vec::new();
        let mut covered = FixedBitSet::with_capacity(n);
        for e in 0..n {
            if covered.contains(e) {
                continue;
            }
            gens.push(e);
            covered = FixedBitSet::with_capacity(n);
            let mut queue: Vec<usize> = gens.clone();
            for &g in &gens {
                covered.insert(g);
            }
            while let Some(y) = queue.pop() {
                for &g in &gens {
                    let z = self.add(g, y);
                    if !covered.contains(z) {
                        covered.insert(z);
                        queue.push(z);
                    }
                }
            }
        }
        gens
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The ideal `aR`.
    pub fn principal_ideal(&self, a: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size);
        for r in 0..self.size {
            s.insert(self.mul(a, r));
        }
        s
    }

    /// `I + J` for ideals given as member sets.
    pub fn ideal_sum(&self, i: &FixedBitSet, j: &FixedBitSet) -> FixedBitSet {
        let mut out = i.clone();
        for y in j.ones() {
            // Each pass adds a whole coset of `i`, so a member already present
            // means its coset is present.
            if out.contains(y) {
                continue;
            }
            for x in i.ones() {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    /// The ideal generated by `gens`.
    pub fn ideal_generated(&self, gens: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.size);
        acc.insert(self.zero);
        for &g in gens {
            acc = self.ideal_sum(&acc, &self.principal_ideal(g));
        }
        acc
    }
}

pub fn build_ring(p: &RingPresentation) -> Result<FiniteRing, RingError> {
    build_ring_with_cap(p, DEFAULT_SIZE_CAP)
}

pub fn build_ring_with_cap(p: &RingPresentation, cap: usize) -> Result<FiniteRing, RingError> {
    if p.modulus < 2 {
        return Err(RingError::BadModulus(p.modulus));
    }
    let n = p.modulus;
    let f = if p.poly.is_empty() {
        vec![0, 1]
    } else {
        if p.poly.len() < 2 || p.poly.last().map(|&c| c % n) != Some(1) {
            return Err(RingError::NotMonic);
        }
        p.poly.iter().map(|&c| c % n).collect()
    };
    let d = f.len() - 1;
    let full = (n as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if full > cap as u128 {
        return Err(RingError::TooLarge {
            size: u64::try_from(full).unwrap_or(u64::MAX),
            cap,
        });
    }
    let full = full as usize;
    let arith = PolyArith { n, f, d };
    let elems: Vec<Vec<u64>> = (0..full).map(|i| arith.decode(i)).collect();

    // The ideal generated by the relations, as a member set of the full ring.
    let mut rel_ideal = FixedBitSet::with_capacity(full);
    rel_ideal.insert(0);
    for rel in &p.relations {
        let r = arith.reduce(rel);
        let mut principal = FixedBitSet::with_capacity(full);
        for e in &elems {
            principal.insert(arith.mul_index(&r, e));
        }
        let mut sum = rel_ideal.clone();
        for y in principal.ones() {
            if sum.contains(y) {
                continue;
            }
            for x in rel_ideal.ones() {
                sum.insert(arith.add_index(&elems[x], &elems[y]));
            }
        }
        rel_ideal = sum;
    }
    let one = arith.encode(&arith.reduce(&[1]));
    if rel_ideal.contains(one) {
        return Err(RingError::Trivial);
    }

    // Cosets of the relation ideal, each represented by its smallest index.
    let mut rep = vec![usize::MAX; full];
    let mut reps = Vec::new();
    for y in 0..full {
        if rep[y] != usize::MAX {
            continue;
        }
        reps.push(y);
        for x in rel_ideal.ones() {
            rep[arith.add_index(&elems[x], &elems[y])] = y;
        }
    }
    let mut position = vec![usize::MAX; full];
    for (i, &r) in reps.iter().enumerate() {
        position[r] = i;
    }
    let class = |x: usize| position[rep[x]];
    let size = reps.len();
    let mut add = vec![0u16; size * size];
    let mut mul = vec![0u16; size * size];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            add[i * size + j] = class(arith.add_index(&elems[a], &elems[b])) as u16;
            mul[i * size + j] = class(arith.mul_index(&elems[a], &elems[b])) as u16;
        }
    }
    let names = reps.iter().map(|&r| poly_name(&elems[r], n)).collect();
    FiniteRing::from_tables(size, add, mul, class(0), class(one), names)
}

pub fn ring_zn(n: u64) -> Result<FiniteRing, RingError> {
    build_ring(&RingPresentation::zn(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    /// A generating set of minimal size.
    pub generators: Vec<usize>,
    pub members: FixedBitSet,
}

impl Ideal {
    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The lattice of ideals; `ideals[i]` is lattice element `i`.
#[derive(Debug, Clone)]
pub struct IdealLatticeResult {
    pub lattice: Lattice,
    pub ideals: Vec<Ideal>,
}

impl IdealLatticeResult {
    /// Lattice element of the ideal with these members.
    pub fn find(&self, members: &FixedBitSet) -> Option<Elem> {
        self.ideals.iter().position(|i| &i.members == members)
    }

    /// Lattice element of the ideal generated by the named ring elements.
    pub fn generated_by(&self, ring: &FiniteRing, names: &[&str]) -> Result<Elem, RingError> {
        let gens = names
            .iter()
            .map(|&s| ring.lookup(s).ok_or_else(|| RingError::UnknownElement(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self
            .find(&ring.ideal_generated(&gens))
            .expect("every ideal is enumerated"))
    }
}

fn block_key(s: &FixedBitSet) -> Vec<usize> {
    s.ones().collect()
}

pub fn ideal_lattice(r: &FiniteRing) -> Result<IdealLatticeResult, RingError> {
    ideal_lattice_with_cap(r, DEFAULT_SIZE_CAP)
}

pub fn ideal_lattice_with_cap(r: &FiniteRing, cap: usize) -> Result<IdealLatticeResult, RingError> {
    let n = r.size();
    let principal: Vec<FixedBitSet> = (0..n).map(|a| r.principal_ideal(a)).collect();
    // Distinct principal ideals, each with its smallest generator.
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut ideals: Vec<Ideal> = Vec::new();
    let mut principal_gens = Vec::new();
    for (a, p) in principal.iter().enumerate() {
        if let alloc::collections::btree_map::Entry::Vacant(v) = seen.entry(block_key(p)) {
            v.insert(ideals.len());
            principal_gens.push(a);
            ideals.push(Ideal {
                generators: vec![a],
                members: p.clone(),
            });
        }
    }
    // Breadth-first closure under adding one principal ideal at a time, so
    // the first generating set found has minimal size.
    let mut next = 0;
    while next < ideals.len() {
        for &g in &principal_gens {
            if ideals[next].members.contains(g) {
                continue;
            }
            let sum = r.ideal_sum(&ideals[next].members, &principal[g]);
            if let alloc::collections::btree_map::Entry::Vacant(v) = seen.entry(block_key(&sum)) {
                v.insert(ideals.len());
                let mut generators = ideals[next].generators.clone();
                generators.push(g);
                ideals.push(Ideal { generators, members: sum });
                if ideals.len() > cap {
                    return Err(RingError::TooManyIdeals {
                        count: ideals.len(),
                        cap,
                    });
                }
            }
        }
        next += 1;
    }
    ideals.sort_by_cached_key(|i| (i.len(), block_key(&i.members)));
    for i in &mut ideals {
        // The zero ideal is generated by nothing else.
        if i.len() == 1 {
            i.generators = vec![r.zero()];
        }
    }

    let k = ideals.len();
    let index: BTreeMap<Vec<usize>, usize> = ideals
        .iter()
        .enumerate()
        .map(|(i, id)| (block_key(&id.members), i))
        .collect();
    let principal_index: Vec<usize> = principal.iter().map(|p| index[&block_key(p)]).collect();
    let subset = |a: usize, b: usize| ideals[a].members.is_subset(&ideals[b].members);
    // Ideals are sorted by size, so the first one containing both is the sum.
    let join = |a: usize, b: usize| (0..k).find(|&c| subset(a, c) && subset(b, c)).expect("unit ideal");
    let mut order = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a != b && subset(a, b) {
                order.push((a, b));
            }
        }
    }
    let mut mul = vec![vec![0usize; k]; k];
    for a in 0..k {
        for b in a..k {
            let mut acc = 0;
            for &g in &ideals[a].generators {
                for &h in &ideals[b].generators {
                    acc = join(acc, principal_index[r.mul(g, h)]);
                }
            }
            mul[a][b] = acc;
            mul[b][a] = acc;
        }
    }
    let names = ideals
        .iter()
        .map(|i| {
            let gens: Vec<&str> = i.generators.iter().map(|&g| r.name(g)).collect();
            format!("({})", gens.join(","))
        })
        .collect();
    let spec = LatticeSpec {
        size: k,
        order,
        mul,
        names: Some(names),
    };
    let lattice = Lattice::validate_with_cap(&spec, cap).map_err(RingError::Lattice)?;
    Ok(IdealLatticeResult { lattice, ideals })
}

/// A named element of a surrogate lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurrogateTarget {
    pub label: String,
    pub element: Elem,
}

/// A finite lattice standing in for an infinite one, with the elements of
/// interest located.
#[derive(Debug, Clone)]
pub struct SurrogateExample {
    pub name: String,
    /// What the surrogate replaces; claims about the infinite original are
    /// not implied by anything computed here.
    pub note: &'static str,
    pub lattice: Lattice,
    pub targets: Vec<SurrogateTarget>,
}

/// `Z[x]/(x^2 + c, 2^k)`.
fn quadratic_mod_power_of_two(c: u64, k: u32) -> Result<(FiniteRing, IdealLatticeResult), RingError> {
    let n = 1u64 << k;
    let ring = build_ring(&RingPresentation::new(n, vec![c % n, 0, 1]))?;
    let lat = ideal_lattice(&ring)?;
    Ok((ring, lat))
}

/// Finite stand-ins for the ideal lattices of the integers, `Z[sqrt(-7)]`
/// and `Z[2i]`, the latter two reduced modulo `2^k`.
pub fn surrogate_examples(k: u32) -> Result<Vec<SurrogateExample>, RingError> {
    let d240 = constructions::divisor_lattice(240)?;
    let by_name = |l: &Lattice, s: &str| SurrogateTarget {
        label: s.to_string(),
        element: l.lookup(s).expect("divisor present"),
    };
    let targets = vec![by_name(&d240, "15"), by_name(&d240, "8")];
    let mut out = vec![SurrogateExample {
        name: "divisor:240".to_string(),
        note: "ideals of Z containing 240",
        lattice: d240,
        targets,
    }];

    let n = 1u64 << k;
    let (ring, lat) = quadratic_mod_power_of_two(7, k)?;
    let target = lat.generated_by(&ring, &["3", "1+x"])?;
    out.push(SurrogateExample {
        name: format!("Z[x]/(x^2+7,{n})"),
        note: "ideals of Z[sqrt(-7)] containing 2^k; (3, 1+x) is its image of (3, 1+sqrt(-7))",
        lattice: lat.lattice,
        targets: vec![SurrogateTarget {
            label: "(3,1+x)".to_string(),
            element: target,
        }],
    });

    let (ring, lat) = quadratic_mod_power_of_two(4, k)?;
    let target = lat.generated_by(&ring, &["2+x"])?;
    out.push(SurrogateExample {
        name: format!("Z[x]/(x^2+4,{n})"),
        note: "ideals of Z[2i] containing 2^k; x stands for 2i",
        lattice: lat.lattice,
        targets: vec![SurrogateTarget {
            label: "(2+x)".to_string(),
            element: target,
        }],
    });
    Ok(out)
}
