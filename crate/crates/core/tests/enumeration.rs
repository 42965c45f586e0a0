use mlcheck_core::enumerate::{enumerate_with, Strategy, DEFAULT_BUDGET};
use mlcheck_core::Lattice;

#[test]
fn hand_counts_at_small_orders() {
    let mut seen = Vec::new();
    let stats = enumerate_with(Strategy::OrderFirst, 3, DEFAULT_BUDGET, |l| seen.push(l)).unwrap();
    assert_eq!(stats.per_order[2], 1);
    assert_eq!(stats.per_order[3], 2);
    // The two 3-chains: m^2 = 0 and m^2 = m.
    let squares: Vec<bool> = seen[1..]
        .iter()
        .map(|l| {
            let m = l.proper_elements().find(|&x| x != l.bottom()).unwrap();
            l.mul(m, m) == m
        })
        .collect();
    assert_eq!(squares.len(), 2);
    assert!(squares.contains(&true) && squares.contains(&false));
}

#[test]
fn both_strategies_agree_through_order_five() {
    let mut a: Vec<Lattice> = Vec::new();
    let mut b: Vec<Lattice> = Vec::new();
    let sa = enumerate_with(Strategy::OrderFirst, 5, DEFAULT_BUDGET, |l| a.push(l)).unwrap();
    let sb = enumerate_with(Strategy::TableFirst, 5, DEFAULT_BUDGET, |l| b.push(l)).unwrap();
    assert_eq!(sa.per_order, sb.per_order);
    assert_eq!(sa.per_order, vec![0, 0, 1, 2, 7, 26]);
    assert_eq!(a, b);
}

#[test]
fn emitted_lattices_are_valid_distinct_and_ordered() {
    let mut all = Vec::new();
    enumerate_with(Strategy::OrderFirst, 6, DEFAULT_BUDGET, |l| all.push(l)).unwrap();
    let mut certs = Vec::new();
    for l in &all {
        assert_eq!(&Lattice::validate(&l.to_spec()).unwrap(), l);
        let cf = l.canonical_form();
        // Emitted in canonical labelling.
        assert_eq!(cf.labeling(), (0..l.size()).collect::<Vec<_>>().as_slice());
        certs.push((l.size(), cf.into_certificate()));
    }
    let mut sorted = certs.clone();
    sorted.sort();
    assert_eq!(certs, sorted);
    sorted.dedup();
    assert_eq!(sorted.len(), certs.len());
}
