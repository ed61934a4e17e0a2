//! The shared fixture corpus: small algebras and cover systems used across
//! the test suites and exposed to the CLI's self-checks.

use crate::algebra::Algebra;
use crate::cover::{CoverBackend, CoverSystem};
use crate::order::{FinitePreorder, LatticeOrder};
use crate::representation::canonical_cover_system;

/// An n-element chain with generic names `e0 ⊑ e1 ⊑ ...`.
pub fn chain_lattice(n: usize) -> LatticeOrder {
    named_chain((0..n).map(|i| format!("e{i}")).collect())
}

fn named_chain(names: Vec<String>) -> LatticeOrder {
    let n = names.len();
    let pairs: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    LatticeOrder::new(FinitePreorder::from_pairs(names, &pairs).unwrap()).unwrap()
}

/// The diamond M2: bottom, two incomparable atoms, top.
pub fn diamond_lattice() -> LatticeOrder {
    let names = vec!["e0".into(), "e1".into(), "e2".into(), "e3".into()];
    let pairs = [(0, 1), (0, 2), (1, 3), (2, 3)];
    LatticeOrder::new(FinitePreorder::from_pairs(names, &pairs).unwrap()).unwrap()
}

/// The one-element modal FL-algebra: every table is forced.
pub fn one1() -> Algebra {
    let order = named_chain(vec!["e".into()]);
    Algebra::new("ONE1", order, vec![vec![0]], 0, Some(0), Some(vec![0]), Some(vec![0])).unwrap()
}

/// Two-element Boolean algebra: fusion is meet, unit is top, modalities are
/// the identity, zero is bottom.
pub fn bool2() -> Algebra {
    let order = named_chain(vec!["bot".into(), "top".into()]);
    let fusion = (0..2).map(|a| (0..2).map(|b| order.meet2(a, b)).collect()).collect();
    Algebra::new("BOOL2", order, fusion, 1, Some(0), Some(vec![0, 1]), Some(vec![0, 1])).unwrap()
}

/// Three-element Lukasiewicz chain {zero, half, one}: a⊙b = max(0, a+b-1),
/// !a collapses everything below one to zero, ?a collapses everything above
/// zero to one.
pub fn luk3() -> Algebra {
    let order = named_chain(vec!["zero".into(), "half".into(), "one".into()]);
    let fusion = (0..3usize)
        .map(|a| (0..3usize).map(|b| (a + b).saturating_sub(2)).collect())
        .collect();
    Algebra::new("LUK3", order, fusion, 2, Some(0), Some(vec![0, 0, 2]), Some(vec![0, 2, 2]))
        .unwrap()
}

/// Three-element Heyting chain: fusion is meet, unit is top, zero is bottom,
/// storage is the identity. Not classical: double negation fails at mid.
pub fn heyting3() -> Algebra {
    let order = named_chain(vec!["bot".into(), "mid".into(), "top".into()]);
    let fusion = (0..3).map(|a| (0..3).map(|b| order.meet2(a, b)).collect()).collect();
    Algebra::new("HEYT3", order, fusion, 2, Some(0), Some(vec![0, 1, 2]), None).unwrap()
}

/// COV2: two points under the identity preorder, with listed covers
/// a⊳{a}, b⊳{b}, a⊳{b}.
pub fn cov2() -> CoverSystem {
    let pre = FinitePreorder::from_pairs(vec!["a".into(), "b".into()], &[]).unwrap();
    CoverSystem {
        name: "COV2".into(),
        pre,
        backend: CoverBackend::Extensional(vec![(0, 0b01), (1, 0b10), (0, 0b10)]),
        dot: None,
        epsilon: None,
        zero: None,
        i_set: None,
        r: None,
    }
}

/// RCOV1: the one-point residuated cover system.
pub fn rcov1() -> CoverSystem {
    let pre = FinitePreorder::from_pairs(vec!["eps".into()], &[]).unwrap();
    CoverSystem {
        name: "RCOV1".into(),
        pre,
        backend: CoverBackend::Extensional(vec![(0, 0b1)]),
        dot: Some(vec![vec![0]]),
        epsilon: Some(0),
        zero: None,
        i_set: None,
        r: None,
    }
}

/// RCOV1 extended trivially with 0 = ∅, I = {ε}, R = {(ε,ε)}.
pub fn rcov1_modal() -> CoverSystem {
    CoverSystem { zero: Some(0), i_set: Some(0b1), r: Some(vec![0b1]), ..rcov1() }
}

/// The canonical cover system of an algebra fixture.
pub fn canonical_of(a: &Algebra) -> CoverSystem {
    canonical_cover_system(a)
}
