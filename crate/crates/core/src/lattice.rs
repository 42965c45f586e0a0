//! Finite multiplicative lattices.
//!
//! A [`Lattice`] is a finite complete lattice with a commutative, associative
//! multiplication whose identity is the top element and which distributes over
//! joins (including the empty join, so `x * 0 = 0`). Values are only obtained
//! through [`Lattice::validate`], which closes the generating order, checks
//! every axiom and precomputes join, meet and residual tables.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

/// Index of an element inside a [`Lattice`].
pub type Elem = usize;

/// Default maximum number of elements accepted by validation.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Tables are stored as `u16`, so no cap may exceed this.
pub const MAX_SIZE_CAP: usize = u16::MAX as usize;

/// Raw description of a lattice, as read from a file or produced by a
/// construction before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpec {
    pub size: usize,
    /// Generating pairs `(i, j)` meaning `i <= j`; closed transitively.
    pub order: Vec<(Elem, Elem)>,
    /// `mul[r][c]` is the product of elements `r` and `c`.
    pub mul: Vec<Vec<Elem>>,
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Empty lattice, or more elements than the configured cap.
    Size,
    /// Order pair or product entry out of range.
    IndexRange,
    /// Multiplication table is not `size x size`.
    TableShape,
    /// Wrong name count, duplicate or malformed name.
    Names,
    /// The closed order contains a cycle.
    Antisymmetry,
    Bottom,
    Top,
    Join,
    Meet,
    Commutativity,
    Associativity,
    /// `top * x = x`.
    Identity,
    /// `x * (a v b) = x*a v x*b`.
    Distributivity,
    /// `x * bottom = bottom`.
    ZeroProduct,
    /// `a <= b` implies `x*a <= x*b`.
    Monotonicity,
    /// `a*b <= a ^ b`.
    ProductBelowMeet,
}

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Size => "size",
            Axiom::IndexRange => "index-range",
            Axiom::TableShape => "table-shape",
            Axiom::Names => "names",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Bottom => "bottom",
            Axiom::Top => "top",
            Axiom::Join => "join",
            Axiom::Meet => "meet",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Identity => "identity",
            Axiom::Distributivity => "distributivity",
            Axiom::ZeroProduct => "zero-product",
            Axiom::Monotonicity => "monotonicity",
            Axiom::ProductBelowMeet => "product-below-meet",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One violated axiom together with the lexicographically first witness
/// (element indices; meaning depends on the axiom).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, thiserror::Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: Axiom, witness: &[usize]) {
        self.violations.push(Violation {
            axiom,
            witness: witness.to_vec(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid multiplicative lattice");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} violated at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

/// A validated finite multiplicative lattice. Immutable after construction.
#[derive(Clone)]
pub struct Lattice {
    size: usize,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<u16>,
    meet: Vec<u16>,
    mul: Vec<u16>,
    residual: Vec<u16>,
    bottom: Elem,
    top: Elem,
    names: Option<Vec<String>>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("size", &self.size)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .field("names", &self.names)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Lattice {
    /// Equality of labelled structures, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.up == other.up && self.mul == other.mul
    }
}

impl Eq for Lattice {}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '#')
}

/// Reflexive-transitive closure of the generating pairs, as up-sets.
pub(crate) fn close_order(size: usize, pairs: &[(Elem, Elem)]) -> Vec<FixedBitSet> {
    let mut up: Vec<FixedBitSet> = (0..size)
        .map(|i| {
            let mut s = FixedBitSet::with_capacity(size);
            s.insert(i);
            s
        })
        .collect();
    for &(a, b) in pairs {
        up[a].insert(b);
    }
    // Warshall over rows: if a <= k then a <= everything above k.
    for k in 0..size {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
    up
}

fn transpose(size: usize, up: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let mut down = vec![FixedBitSet::with_capacity(size); size];
    for (a, row) in up.iter().enumerate() {
        for b in row.ones() {
            down[b].insert(a);
        }
    }
    down
}

/// Least element of a set given as an intersection of up-sets, if any.
fn least_of(set: &FixedBitSet, up: &[FixedBitSet]) -> Option<Elem> {
    set.ones().find(|&c| set.is_subset(&up[c]))
}

fn greatest_of(set: &FixedBitSet, down: &[FixedBitSet]) -> Option<Elem> {
    set.ones().find(|&c| set.is_subset(&down[c]))
}

/// Order-only data shared by validation and the enumerator.
pub(crate) struct OrderTables {
    pub up: Vec<FixedBitSet>,
    pub down: Vec<FixedBitSet>,
    pub join: Vec<u16>,
    pub meet: Vec<u16>,
    pub bottom: Elem,
    pub top: Elem,
}

/// Closes the order and computes join/meet tables, recording order
/// violations into `report`. Returns `None` if any were found.
pub(crate) fn order_tables(
    size: usize,
    pairs: &[(Elem, Elem)],
    report: &mut ValidationReport,
) -> Option<OrderTables> {
    let up = close_order(size, pairs);
    let before = report.violations.len();
    'outer: for a in 0..size {
        for b in up[a].ones() {
            if b != a && up[b].contains(a) {
                report.push(Axiom::Antisymmetry, &[a, b]);
                break 'outer;
            }
        }
    }
    if report.violations.len() > before {
        return None;
    }
    let down = transpose(size, &up);
    let bottom = (0..size).find(|&i| up[i].count_ones(..) == size);
    let top = (0..size).find(|&i| down[i].count_ones(..) == size);
    if bottom.is_none() {
        report.push(Axiom::Bottom, &[]);
    }
    if top.is_none() {
        report.push(Axiom::Top, &[]);
    }
    let mut join = vec![0u16; size * size];
    let mut meet = vec![0u16; size * size];
    let mut missing_join = None;
    let mut missing_meet = None;
    for a in 0..size {
        for b in a..size {
            let mut ub = up[a].clone();
            ub.intersect_with(&up[b]);
            match least_of(&ub, &up) {
                Some(j) => {
                    join[a * size + b] = j as u16;
                    join[b * size + a] = j as u16;
                }
                None => {
                    missing_join.get_or_insert((a, b));
                }
            }
            let mut lb = down[a].clone();
            lb.intersect_with(&down[b]);
            match greatest_of(&lb, &down) {
                Some(m) => {
                    meet[a * size + b] = m as u16;
                    meet[b * size + a] = m as u16;
                }
                None => {
                    missing_meet.get_or_insert((a, b));
                }
            }
        }
    }
    if let Some((a, b)) = missing_join {
        report.push(Axiom::Join, &[a, b]);
    }
    if let Some((a, b)) = missing_meet {
        report.push(Axiom::Meet, &[a, b]);
    }
    if report.violations.len() > before {
        return None;
    }
    Some(OrderTables {
        up,
        down,
        join,
        meet,
        bottom: bottom?,
        top: top?,
    })
}

/// Checks the multiplication axioms against closed order tables. Every
/// violated axiom is reported once, with its first witness.
pub(crate) fn check_multiplication(
    size: usize,
    ord: &OrderTables,
    mul: &[u16],
    report: &mut ValidationReport,
) {
    let m = |a: usize, b: usize| mul[a * size + b] as usize;
    let leq = |a: usize, b: usize| ord.up[a].contains(b);
    let j = |a: usize, b: usize| ord.join[a * size + b] as usize;
    let mt = |a: usize, b: usize| ord.meet[a * size + b] as usize;

    let first2 = |pred: &dyn Fn(usize, usize) -> bool| -> Option<[usize; 2]> {
        for a in 0..size {
            for b in 0..size {
                if pred(a, b) {
                    return Some([a, b]);
                }
            }
        }
        None
    };
    let first3 = |pred: &dyn Fn(usize, usize, usize) -> bool| -> Option<[usize; 3]> {
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if pred(a, b, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    };

    if let Some(w) = first2(&|a, b| m(a, b) != m(b, a)) {
        report.push(Axiom::Commutativity, &w);
    }
    if let Some(w) = first3(&|a, b, c| m(m(a, b), c) != m(a, m(b, c))) {
        report.push(Axiom::Associativity, &w);
    }
    if let Some(x) = (0..size).find(|&x| m(ord.top, x) != x || m(x, ord.top) != x) {
        report.push(Axiom::Identity, &[x]);
    }
    if let Some(x) = (0..size).find(|&x| m(x, ord.bottom) != ord.bottom) {
        report.push(Axiom::ZeroProduct, &[x]);
    }
    if let Some(w) = first3(&|x, a, b| m(x, j(a, b)) != j(m(x, a), m(x, b))) {
        report.push(Axiom::Distributivity, &w);
    }
    if let Some(w) = first3(&|x, a, b| leq(a, b) && !leq(m(x, a), m(x, b))) {
        report.push(Axiom::Monotonicity, &w);
    }
    if let Some(w) = first2(&|a, b| !leq(m(a, b), mt(a, b))) {
        report.push(Axiom::ProductBelowMeet, &w);
    }
}

fn residual_table(size: usize, ord: &OrderTables, mul: &[u16]) -> Vec<u16> {
    let mut res = vec![0u16; size * size];
    for a in 0..size {
        for b in 0..size {
            // {x : x*b <= a} is join-closed by distributivity; fold its join.
            let mut acc = ord.bottom;
            for x in 0..size {
                if ord.up[mul[x * size + b] as usize].contains(a) {
                    acc = ord.join[acc * size + x] as usize;
                }
            }
            res[a * size + b] = acc as u16;
        }
    }
    res
}

impl Lattice {
    /// Validates `spec` with the default size cap.
    pub fn validate(spec: &LatticeSpec) -> Result<Lattice, ValidationReport> {
        Self::validate_with_cap(spec, DEFAULT_SIZE_CAP)
    }

    pub fn validate_with_cap(spec: &LatticeSpec, cap: usize) -> Result<Lattice, ValidationReport> {
        let mut report = ValidationReport::default();
        let n = spec.size;
        if n == 0 || n > cap.min(MAX_SIZE_CAP) {
            report.push(Axiom::Size, &[n]);
            return Err(report);
        }
        if let Some(&(a, b)) = spec.order.iter().find(|&&(a, b)| a >= n || b >= n) {
            report.push(Axiom::IndexRange, &[a, b]);
        }
        if spec.mul.len() != n || spec.mul.iter().any(|row| row.len() != n) {
            report.push(Axiom::TableShape, &[spec.mul.len()]);
        } else {
            'range: for (r, row) in spec.mul.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    if v >= n {
                        report.push(Axiom::IndexRange, &[r, c, v]);
                        break 'range;
                    }
                }
            }
        }
        if let Some(names) = &spec.names {
            if names.len() != n {
                report.push(Axiom::Names, &[names.len()]);
            } else if let Some(i) = names.iter().position(|s| !valid_name(s)) {
                report.push(Axiom::Names, &[i]);
            } else {
                'dup: for i in 0..n {
                    for k in i + 1..n {
                        if names[i] == names[k] {
                            report.push(Axiom::Names, &[i, k]);
                            break 'dup;
                        }
                    }
                }
            }
        }
        if !report.is_empty() {
            return Err(report);
        }

        let ord = match order_tables(n, &spec.order, &mut report) {
            Some(ord) => ord,
            None => return Err(report),
        };
        let mul: Vec<u16> = spec
            .mul
            .iter()
            .flat_map(|row| row.iter().map(|&v| v as u16))
            .collect();
        check_multiplication(n, &ord, &mul, &mut report);
        if !report.is_empty() {
            return Err(report);
        }
        Ok(Self::from_checked(n, ord, mul, spec.names.clone()))
    }

    pub(crate) fn from_checked(
        size: usize,
        ord: OrderTables,
        mul: Vec<u16>,
        names: Option<Vec<String>>,
    ) -> Lattice {
        let residual = residual_table(size, &ord, &mul);
        Lattice {
            size,
            up: ord.up,
            down: ord.down,
            join: ord.join,
            meet: ord.meet,
            mul,
            residual,
            bottom: ord.bottom,
            top: ord.top,
            names,
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn is_proper(&self, x: Elem) -> bool {
        x != self.top
    }

    pub fn proper_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&x| x != self.top)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{b : a <= b}`.
    pub fn up_set(&self, a: Elem) -> &FixedBitSet {
        &self.up[a]
    }

    /// `{b : b <= a}`.
    pub fn down_set(&self, a: Elem) -> &FixedBitSet {
        &self.down[a]
    }

    #[inline]
    pub fn join2(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size + b] as Elem
    }

    #[inline]
    pub fn meet2(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.size + b] as Elem
    }

    /// Supremum of `xs`; the empty join is the bottom element.
    pub fn join<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join2(acc, x))
    }

    /// Infimum of `xs`; the empty meet is the top element.
    pub fn meet<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet2(acc, x))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b] as Elem
    }

    /// Product of `xs`; the empty product is the top element.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.mul(acc, x))
    }

    /// `a^k`, with `a^0 = top`.
    pub fn power(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(self.top, |acc, _| self.mul(acc, a))
    }

    /// `(a : b)`, the largest `x` with `x * b <= a`.
    #[inline]
    pub fn residual(&self, a: Elem, b: Elem) -> Elem {
        self.residual[a * self.size + b] as Elem
    }

    /// Smallest `k >= 1` with `a^k = a^(k+1)` and that value, which is the
    /// meet of all powers of `a`.
    pub fn stable_power(&self, a: Elem) -> (usize, Elem) {
        let mut k = 1;
        let mut cur = a;
        loop {
            let next = self.mul(cur, a);
            if next == cur {
                return (k, cur);
            }
            cur = next;
            k += 1;
        }
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.stable_power(a).1 == self.bottom
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: Elem) -> Vec<Elem> {
        self.down[a]
            .ones()
            .filter(|&b| b != a && !self.down[a].ones().any(|c| c != a && c != b && self.lt(b, c)))
            .collect()
    }

    /// Elements covering `a`.
    pub fn upper_covers(&self, a: Elem) -> Vec<Elem> {
        self.up[a]
            .ones()
            .filter(|&b| b != a && !self.up[a].ones().any(|c| c != a && c != b && self.lt(c, b)))
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display token for `x`: its name, or the index.
    pub fn name(&self, x: Elem) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Resolves a name, or a decimal index when no name matches.
    pub fn lookup(&self, token: &str) -> Option<Elem> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|s| s == token) {
                return Some(i);
            }
        }
        token.parse::<usize>().ok().filter(|&i| i < self.size)
    }

    pub fn with_names(mut self, names: Option<Vec<String>>) -> Lattice {
        if let Some(ns) = &names {
            assert_eq!(ns.len(), self.size, "one name per element");
        }
        self.names = names;
        self
    }

    /// Generating order pairs (the covering relation) and full table.
    pub fn to_spec(&self) -> LatticeSpec {
        let mut order = Vec::new();
        for a in self.elements() {
            for b in self.upper_covers(a) {
                order.push((a, b));
            }
        }
        let mul = (0..self.size)
            .map(|r| (0..self.size).map(|c| self.mul(r, c)).collect())
            .collect();
        LatticeSpec {
            size: self.size,
            order,
            mul,
            names: self.names.clone(),
        }
    }

    /// The isomorphic lattice in which old element `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[Elem]) -> Lattice {
        assert_eq!(perm.len(), self.size);
        let mut inv = vec![usize::MAX; self.size];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        assert!(inv.iter().all(|&i| i != usize::MAX), "not a permutation");
        let mut order = Vec::new();
        for a in self.elements() {
            for b in self.up[a].ones() {
                order.push((perm[a], perm[b]));
            }
        }
        let mul = (0..self.size)
            .map(|r| (0..self.size).map(|c| perm[self.mul(inv[r], inv[c])]).collect())
            .collect();
        let names = self
            .names
            .as_ref()
            .map(|ns| (0..self.size).map(|i| ns[inv[i]].clone()).collect());
        let spec = LatticeSpec {
            size: self.size,
            order,
            mul,
            names,
        };
        Lattice::validate_with_cap(&spec, MAX_SIZE_CAP).expect("relabeling preserves validity")
    }

    /// Element `x` rendered with its name for reports.
    pub fn describe(&self, xs: &[Elem]) -> String {
        let parts: Vec<String> = xs.iter().map(|&x| self.name(x)).collect();
        format!("[{}]", parts.join(", "))
    }
}
