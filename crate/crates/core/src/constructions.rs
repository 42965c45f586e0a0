//! Quotients, localizations, products and concrete lattices.
//!
//! Every construction produces a [`LatticeSpec`] and runs it back through
//! validation, so a returned lattice is known to satisfy all axioms.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::classify::{self, Failure};
use crate::lattice::{Elem, Lattice, LatticeSpec, ValidationReport, DEFAULT_SIZE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("multiplicative set does not contain the top element")]
    MissingTop,
    #[error("multiplicative set is not closed: {0} * {1} is missing")]
    NotMultiplicativelyClosed(Elem, Elem),
    #[error("element {0} is not prime ({1:?})")]
    NotPrime(Elem, Failure),
    #[error("result would have {size} elements, cap is {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("divisor lattices need n >= 2, got {0}")]
    BadModulus(u64),
    #[error("construction produced an invalid lattice: {0}")]
    Invalid(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionKind {
    /// `L/a = {b : a <= b}` with `c o d = cd v a`.
    Quotient { by: Elem },
    /// `L_S = {a_S}` with `a o b = (ab)_S`.
    Localization { set: Vec<Elem> },
}

/// How the elements of a constructed lattice relate to its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMorphismLog {
    pub kind: ConstructionKind,
    pub source_size: usize,
    /// `map[source] = target`: `b -> b v a` for quotients, `a -> a_S` for
    /// localizations.
    pub map: Vec<Elem>,
    /// `embedding[target]` is the source element it was built from.
    pub embedding: Vec<Elem>,
}

fn revalidate(spec: &LatticeSpec) -> Result<Lattice, ConstructionError> {
    Lattice::validate_with_cap(spec, crate::lattice::MAX_SIZE_CAP).map_err(ConstructionError::Invalid)
}

fn subspec<F: Fn(Elem, Elem) -> Elem>(l: &Lattice, members: &[Elem], product: F) -> LatticeSpec {
    let pos = |x: Elem| members.binary_search(&x).expect("closed under the product");
    let mut order = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for (k, &b) in members.iter().enumerate() {
            if i != k && l.leq(a, b) {
                order.push((i, k));
            }
        }
    }
    let mul = members
        .iter()
        .map(|&a| members.iter().map(|&b| pos(product(a, b))).collect())
        .collect();
    LatticeSpec {
        size: members.len(),
        order,
        mul,
        names: l.names().map(|_| members.iter().map(|&x| l.name(x)).collect()),
    }
}

/// `L/a`.
pub fn quotient(l: &Lattice, a: Elem) -> Result<(Lattice, LatticeMorphismLog), ConstructionError> {
    let members: Vec<Elem> = l.up_set(a).ones().collect();
    let spec = subspec(l, &members, |c, d| l.join2(l.mul(c, d), a));
    let q = revalidate(&spec)?;
    let map = l
        .elements()
        .map(|b| members.binary_search(&l.join2(b, a)).expect("b v a lies above a"))
        .collect();
    Ok((
        q,
        LatticeMorphismLog {
            kind: ConstructionKind::Quotient { by: a },
            source_size: l.size(),
            map,
            embedding: members,
        },
    ))
}

/// `a_S`, the join of all `x` with `xs <= a` for some `s` in `set`.
pub fn saturate(l: &Lattice, set: &[Elem], a: Elem) -> Elem {
    l.join(set.iter().map(|&s| l.residual(a, s)))
}

/// Checks that `set` contains the top and is closed under multiplication.
pub fn check_multiplicative(l: &Lattice, set: &[Elem]) -> Result<(), ConstructionError> {
    if !set.contains(&l.top()) {
        return Err(ConstructionError::MissingTop);
    }
    for &a in set {
        for &b in set {
            if !set.contains(&l.mul(a, b)) {
                return Err(ConstructionError::NotMultiplicativelyClosed(a, b));
            }
        }
    }
    Ok(())
}

/// `L_S` for a multiplicatively closed `set`.
pub fn localize(l: &Lattice, set: &[Elem]) -> Result<(Lattice, LatticeMorphismLog), ConstructionError> {
    check_multiplicative(l, set)?;
    let sat: Vec<Elem> = l.elements().map(|a| saturate(l, set, a)).collect();
    let mut members = sat.clone();
    members.sort_unstable();
    members.dedup();
    let spec = subspec(l, &members, |a, b| sat[l.mul(a, b)]);
    let loc = revalidate(&spec)?;
    let map = sat
        .iter()
        .map(|s| members.binary_search(s).expect("saturated"))
        .collect();
    let mut set = set.to_vec();
    set.sort_unstable();
    Ok((
        loc,
        LatticeMorphismLog {
            kind: ConstructionKind::Localization { set },
            source_size: l.size(),
            map,
            embedding: members,
        },
    ))
}

/// `L_p`, localizing at `{x : x not <= p}`.
pub fn localize_at_prime(l: &Lattice, p: Elem) -> Result<(Lattice, LatticeMorphismLog), ConstructionError> {
    classify::check_prime(l, p).map_err(|f| ConstructionError::NotPrime(p, f))?;
    let set: Vec<Elem> = l.elements().filter(|&x| !l.leq(x, p)).collect();
    localize(l, &set)
}

pub fn direct_product(a: &Lattice, b: &Lattice) -> Result<Lattice, ConstructionError> {
    direct_product_with_cap(a, b, DEFAULT_SIZE_CAP)
}

/// Componentwise order and multiplication; `(i, j)` has index
/// `i * |b| + j`.
pub fn direct_product_with_cap(a: &Lattice, b: &Lattice, cap: usize) -> Result<Lattice, ConstructionError> {
    let (na, nb) = (a.size(), b.size());
    let size = na * nb;
    if size > cap {
        return Err(ConstructionError::TooLarge { size, cap });
    }
    let idx = |i: Elem, j: Elem| i * nb + j;
    let mut order = Vec::new();
    for i in a.elements() {
        for j in b.elements() {
            for i2 in a.upper_covers(i) {
                order.push((idx(i, j), idx(i2, j)));
            }
            for j2 in b.upper_covers(j) {
                order.push((idx(i, j), idx(i, j2)));
            }
        }
    }
    let mut mul = vec![vec![0; size]; size];
    for i in a.elements() {
        for j in b.elements() {
            for i2 in a.elements() {
                for j2 in b.elements() {
                    mul[idx(i, j)][idx(i2, j2)] = idx(a.mul(i, i2), b.mul(j, j2));
                }
            }
        }
    }
    let names = (a.names().is_some() || b.names().is_some()).then(|| {
        let mut ns = Vec::with_capacity(size);
        for i in a.elements() {
            for j in b.elements() {
                ns.push(format!("({},{})", a.name(i), b.name(j)));
            }
        }
        ns
    });
    revalidate(&LatticeSpec {
        size,
        order,
        mul,
        names,
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn divisor_lattice(n: u64) -> Result<Lattice, ConstructionError> {
    divisor_lattice_with_cap(n, DEFAULT_SIZE_CAP)
}

/// Ideal lattice of `Z/n` in divisor form: element `d` stands for the ideal
/// `(d)`, so `d1 <= d2` iff `d2 | d1`, the join is the gcd, the meet the lcm
/// and `d1 * d2 = gcd(d1 d2, n)`. The bottom is `n`, the top `1`; elements
/// are indexed by increasing divisor and named by their value.
pub fn divisor_lattice_with_cap(n: u64, cap: usize) -> Result<Lattice, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::BadModulus(n));
    }
    let mut divisors = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            divisors.push(d);
            if d * d != n {
                divisors.push(n / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();
    if divisors.len() > cap {
        return Err(ConstructionError::TooLarge {
            size: divisors.len(),
            cap,
        });
    }
    let pos = |v: u64| divisors.binary_search(&v).expect("divisor of n");
    let mut order = Vec::new();
    for (i, &a) in divisors.iter().enumerate() {
        for (k, &b) in divisors.iter().enumerate() {
            if i != k && a % b == 0 {
                order.push((i, k));
            }
        }
    }
    let mul = divisors
        .iter()
        .map(|&a| {
            divisors
                .iter()
                .map(|&b| pos(gcd(((a as u128 * b as u128) % n as u128) as u64, n)))
                .collect()
        })
        .collect();
    revalidate(&LatticeSpec {
        size: divisors.len(),
        order,
        mul,
        names: Some(divisors.iter().map(|d| d.to_string()).collect()),
    })
}

/// The two-element lattice `{0, 1}`.
pub fn field() -> Lattice {
    revalidate(&LatticeSpec {
        size: 2,
        order: vec![(0, 1)],
        mul: vec![vec![0, 0], vec![0, 1]],
        names: Some(vec!["0".into(), "1".into()]),
    })
    .expect("field is valid")
}

/// The chain `0 < m < 1` with `m^2 = 0` (`nil = true`) or `m^2 = m`.
pub fn three_chain(nil: bool) -> Lattice {
    let sq = if nil { 0 } else { 1 };
    revalidate(&LatticeSpec {
        size: 3,
        order: vec![(0, 1), (1, 2)],
        mul: vec![vec![0, 0, 0], vec![0, sq, 1], vec![0, 1, 2]],
        names: Some(vec!["0".into(), "m".into(), "1".into()]),
    })
    .expect("three-chain is valid")
}

/// Six elements `0 < a < b, c < d < 1` where every product of two elements
/// of `{a, b, c, d}` is `a`. Indices follow `0, a, b, c, d, 1`.
pub fn flat_diamond() -> Lattice {
    let names: Vec<String> = ["0", "a", "b", "c", "d", "1"].iter().map(|s| s.to_string()).collect();
    let order = vec![(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)];
    let mul = (0..6)
        .map(|r| {
            (0..6)
                .map(|c| match (r, c) {
                    (0, _) | (_, 0) => 0,
                    (5, x) | (x, 5) => x,
                    _ => 1,
                })
                .collect()
        })
        .collect();
    revalidate(&LatticeSpec {
        size: 6,
        order,
        mul,
        names: Some(names),
    })
    .expect("flat diamond is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lattice_of_twelve() {
        let d = divisor_lattice(12).unwrap();
        assert_eq!(d.size(), 6);
        assert_eq!(d.name(d.bottom()), "12");
        assert_eq!(d.name(d.top()), "1");
        let e = |s: &str| d.lookup(s).unwrap();
        assert_eq!(d.join2(e("4"), e("6")), e("2"));
        assert_eq!(d.meet2(e("2"), e("3")), e("6"));
        assert_eq!(d.mul(e("2"), e("6")), e("12"));
        assert_eq!(d.residual(e("4"), e("2")), e("2"));
    }

    #[test]
    fn bad_arguments() {
        assert_eq!(divisor_lattice(1).unwrap_err(), ConstructionError::BadModulus(1));
        assert!(matches!(
            divisor_lattice_with_cap(240, 8),
            Err(ConstructionError::TooLarge { size: 20, cap: 8 })
        ));
        let d = divisor_lattice(12).unwrap();
        assert!(matches!(localize_at_prime(&d, d.lookup("4").unwrap()), Err(ConstructionError::NotPrime(..))));
        assert_eq!(localize(&d, &[d.bottom()]).unwrap_err(), ConstructionError::MissingTop);
        let two = d.lookup("2").unwrap();
        assert!(matches!(
            localize(&d, &[d.top(), two]),
            Err(ConstructionError::NotMultiplicativelyClosed(..))
        ));
        assert!(matches!(
            direct_product_with_cap(&d, &d, 30),
            Err(ConstructionError::TooLarge { size: 36, cap: 30 })
        ));
    }

    #[test]
    fn quotient_by_bottom_is_identity() {
        let l = flat_diamond();
        let (q, log) = quotient(&l, l.bottom()).unwrap();
        assert_eq!(q, l);
        assert_eq!(log.map, (0..6).collect::<Vec<_>>());
    }
}
