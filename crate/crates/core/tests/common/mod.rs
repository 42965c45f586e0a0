//! Brute-force oracles written straight from the definitions, sharing no code
//! with the library beyond `leq` and `mul` table lookups.

#![allow(dead_code)]

use mlcheck_core::constructions::{divisor_lattice, field, flat_diamond, three_chain};
use mlcheck_core::enumerate::all_multiplicative_lattices;
use mlcheck_core::ring::{build_ring, ideal_lattice, RingPresentation};
use mlcheck_core::{Elem, Lattice};

pub fn elems(l: &Lattice) -> Vec<Elem> {
    (0..l.size()).collect()
}

/// Top: the element above everything.
pub fn top(l: &Lattice) -> Elem {
    elems(l).into_iter().find(|&t| elems(l).iter().all(|&x| l.leq(x, t))).unwrap()
}

pub fn bottom(l: &Lattice) -> Elem {
    elems(l).into_iter().find(|&b| elems(l).iter().all(|&x| l.leq(b, x))).unwrap()
}

/// Least upper bound by scanning all upper bounds.
pub fn join(l: &Lattice, xs: &[Elem]) -> Elem {
    let ubs: Vec<Elem> = elems(l).into_iter().filter(|&u| xs.iter().all(|&x| l.leq(x, u))).collect();
    *ubs.iter().find(|&&u| ubs.iter().all(|&v| l.leq(u, v))).unwrap()
}

pub fn meet(l: &Lattice, xs: &[Elem]) -> Elem {
    let lbs: Vec<Elem> = elems(l).into_iter().filter(|&u| xs.iter().all(|&x| l.leq(u, x))).collect();
    *lbs.iter().find(|&&u| lbs.iter().all(|&v| l.leq(v, u))).unwrap()
}

pub fn residual(l: &Lattice, a: Elem, b: Elem) -> Elem {
    let xs: Vec<Elem> = elems(l).into_iter().filter(|&x| l.leq(l.mul(x, b), a)).collect();
    join(l, &xs)
}

pub fn proper(l: &Lattice, x: Elem) -> bool {
    x != top(l)
}

pub fn prime(l: &Lattice, p: Elem) -> bool {
    proper(l, p)
        && elems(l).iter().all(|&a| {
            elems(l)
                .iter()
                .all(|&b| !l.leq(l.mul(a, b), p) || l.leq(a, p) || l.leq(b, p))
        })
}

pub fn radical(l: &Lattice, x: Elem) -> Elem {
    let above: Vec<Elem> = elems(l).into_iter().filter(|&p| prime(l, p) && l.leq(x, p)).collect();
    meet(l, &above)
}

pub fn primary(l: &Lattice, q: Elem) -> bool {
    let r = radical(l, q);
    proper(l, q)
        && elems(l).iter().all(|&a| {
            elems(l)
                .iter()
                .all(|&b| !l.leq(l.mul(a, b), q) || l.leq(a, q) || l.leq(b, r))
        })
}

pub fn two_absorbing(l: &Lattice, x: Elem) -> bool {
    let e = elems(l);
    proper(l, x)
        && e.iter().all(|&a| {
            e.iter().all(|&b| {
                e.iter().all(|&c| {
                    !l.leq(l.mul(l.mul(a, b), c), x)
                        || l.leq(l.mul(a, b), x)
                        || l.leq(l.mul(a, c), x)
                        || l.leq(l.mul(b, c), x)
                })
            })
        })
}

pub fn one_absorbing(l: &Lattice, x: Elem) -> bool {
    let e: Vec<Elem> = elems(l).into_iter().filter(|&y| proper(l, y)).collect();
    proper(l, x)
        && e.iter().all(|&a| {
            e.iter().all(|&b| {
                e.iter()
                    .all(|&c| !l.leq(l.mul(l.mul(a, b), c), x) || l.leq(l.mul(a, b), x) || l.leq(c, x))
            })
        })
}

pub fn meet_principal(l: &Lattice, e: Elem) -> bool {
    elems(l).iter().all(|&a| {
        elems(l)
            .iter()
            .all(|&b| meet(l, &[a, l.mul(b, e)]) == l.mul(meet(l, &[residual(l, a, e), b]), e))
    })
}

pub fn join_principal(l: &Lattice, e: Elem) -> bool {
    elems(l).iter().all(|&a| {
        elems(l)
            .iter()
            .all(|&b| residual(l, join(l, &[a, l.mul(b, e)]), e) == join(l, &[residual(l, a, e), b]))
    })
}

pub fn principal(l: &Lattice, e: Elem) -> bool {
    meet_principal(l, e) && join_principal(l, e)
}

/// Everything expressible as a product of members, by naive fixpoint.
pub fn products_of(l: &Lattice, members: &[Elem]) -> Vec<bool> {
    let mut reach = vec![false; l.size()];
    reach[top(l)] = true;
    loop {
        let mut changed = false;
        for y in elems(l) {
            if !reach[y] {
                continue;
            }
            for &f in members {
                let z = l.mul(f, y);
                if !reach[z] {
                    reach[z] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return reach;
        }
    }
}

/// A small mixed corpus: every multiplicative lattice up to order 5,
/// several divisor lattices, the built-ins and a few ideal lattices.
pub fn corpus() -> Vec<(String, Lattice)> {
    let mut out: Vec<(String, Lattice)> = all_multiplicative_lattices(5)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(i, l)| (format!("enum:{i}"), l))
        .collect();
    for n in [2u64, 4, 6, 8, 12, 16, 30, 36, 72, 240] {
        out.push((format!("divisor:{n}"), divisor_lattice(n).unwrap()));
    }
    out.push(("field".into(), field()));
    out.push(("chain-nil".into(), three_chain(true)));
    out.push(("chain-idem".into(), three_chain(false)));
    out.push(("flat-diamond".into(), flat_diamond()));
    let local = RingPresentation::new(4, vec![0, 0, 1]).with_relation(vec![0, 2]);
    out.push(("Z/4[x]/(x^2,2x)".into(), ideal_lattice(&build_ring(&local).unwrap()).unwrap().lattice));
    let z4x = RingPresentation::new(4, vec![0, 0, 1]);
    out.push(("Z/4[x]/(x^2)".into(), ideal_lattice(&build_ring(&z4x).unwrap()).unwrap().lattice));
    out
}
