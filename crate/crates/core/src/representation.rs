//! The canonical construction: from a finite modal FL-algebra to the cover
//! system over its own carrier with reversed order and lattice-join covers,
//! and machine verification that the algebra of propositions of that system
//! reproduces the original algebra under x ↦ ↑x.

use crate::algebra::Algebra;
use crate::cover::{CoverBackend, CoverError, CoverSystem};
use crate::order::{FinitePreorder, Mask};
use crate::report::AxiomReport;

/// Build the canonical cover system of `a`: points are the elements, x ≼ y
/// iff y ⊑ x, x ⊳ C iff x ⊑ ⨆C, fusion and unit are carried over, and the
/// modal parts (when present) are 0 ↦ {x : x ⊑ 0}, I = range of !,
/// R = {(x,y) : x ⊑ ?y}.
pub fn canonical_cover_system(a: &Algebra) -> CoverSystem {
    let n = a.len();
    let names: Vec<String> = (0..n).map(|i| a.name_of(i).to_string()).collect();
    // ↑x under ≼ is the ⊑-down-set of x.
    let up: Vec<Mask> = (0..n).map(|x| a.down_set(x)).collect();
    let pre = FinitePreorder::from_relation(names, up).expect("carrier already validated");

    let zero = a.zero.map(|z| a.down_set(z));
    let i_set = a
        .bang
        .as_ref()
        .map(|bang| (0..n).fold(0 as Mask, |m, x| m | 1 << bang[x]));
    let r = a.quest.as_ref().map(|quest| {
        (0..n)
            .map(|x| (0..n).filter(|&y| a.leq(x, quest[y])).fold(0 as Mask, |m, y| m | 1 << y))
            .collect()
    });

    CoverSystem {
        name: format!("S^{}", a.name),
        pre,
        backend: CoverBackend::LatticeJoin(a.order.clone()),
        dot: Some(a.fusion.clone()),
        epsilon: Some(a.unit),
        zero,
        i_set,
        r,
    }
}

/// Verify that x ↦ ↑x is an isomorphism between `a` and the proposition
/// algebra of its canonical system, clause by clause. A failure signals an
/// implementation bug: the representation theorem guarantees success.
pub fn verify_representation(a: &Algebra) -> Result<AxiomReport, CoverError> {
    let s = canonical_cover_system(a);
    let p = s.prop_algebra()?;
    let n = a.len();
    let mut report = AxiomReport::new();

    let up = |x: usize| s.pre.up_of(x);
    let el = |x: usize| format!("({})", a.name_of(x));

    // (i) x ↦ ↑x is a bijection onto Prop(S^A).
    let mut bijection = Vec::new();
    let mut image = Vec::new();
    for x in 0..n {
        match p.index_of(up(x)) {
            Some(i) if !image.contains(&i) => image.push(i),
            _ => bijection.push(el(x)),
        }
    }
    if image.len() != p.props.len() {
        bijection.push("(map not onto)".into());
    }
    report.record("repr.bijection", bijection);
    if !report.passed() {
        return Ok(report);
    }
    let idx = |x: usize| p.index_of(up(x)).unwrap();

    // (ii) order-invariance.
    let mut order = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if a.leq(x, y) != (up(x) & !up(y) == 0) {
                order.push(format!("({},{})", a.name_of(x), a.name_of(y)));
            }
        }
    }
    report.record("repr.order", order);

    // (iii) fusion, (vi) residuals, joins and meets preserved.
    let (mut fusion, mut residuals, mut joins, mut meets) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for x in 0..n {
        for y in 0..n {
            let (ix, iy) = (idx(x), idx(y));
            if p.algebra.fuse(ix, iy) != idx(a.fuse(x, y)) {
                fusion.push(format!("({},{})", a.name_of(x), a.name_of(y)));
            }
            if p.algebra.resl(ix, iy) != idx(a.resl(x, y))
                || p.algebra.resr(ix, iy) != idx(a.resr(x, y))
            {
                residuals.push(format!("({},{})", a.name_of(x), a.name_of(y)));
            }
            if p.algebra.order.join2(ix, iy) != idx(a.order.join2(x, y)) {
                joins.push(format!("({},{})", a.name_of(x), a.name_of(y)));
            }
            if p.algebra.order.meet2(ix, iy) != idx(a.order.meet2(x, y)) {
                meets.push(format!("({},{})", a.name_of(x), a.name_of(y)));
            }
        }
    }
    report.record("repr.fusion", fusion);
    report.record("repr.residuals", residuals);
    report.record("repr.joins", joins);
    report.record("repr.meets", meets);

    // (iv) constants.
    report.record(
        "repr.unit",
        if p.algebra.unit == idx(a.unit) { Vec::new() } else { vec![el(a.unit)] },
    );
    let mut bounds = Vec::new();
    if p.algebra.top() != idx(a.top()) {
        bounds.push(el(a.top()));
    }
    if p.algebra.bot() != idx(a.bot()) {
        bounds.push(el(a.bot()));
    }
    report.record("repr.bounds", bounds);
    if let Some(z) = a.zero {
        report.record(
            "repr.zero",
            if p.algebra.zero == Some(idx(z)) { Vec::new() } else { vec![el(z)] },
        );
    }

    // (v) the modality equations, both as point sets and through the tables.
    if let (Some(bang), Some(i_mask)) = (&a.bang, s.i_set) {
        let (mut eq6, mut eq8, mut table) = (Vec::new(), Vec::new(), Vec::new());
        for x in 0..n {
            if up(bang[x]) != s.j(s.up(up(x) & i_mask)) {
                eq6.push(el(x));
            }
            if bang[x] != a.order.join_set(s.up(up(x) & i_mask)) {
                eq8.push(el(x));
            }
            if p.algebra.bang.as_ref().unwrap()[idx(x)] != idx(bang[x]) {
                table.push(el(x));
            }
        }
        report.record("repr.eq6", eq6);
        report.record("repr.eq8", eq8);
        report.record("repr.bang-table", table);
    }
    if let Some(quest) = &a.quest {
        let (mut eq7, mut table) = (Vec::new(), Vec::new());
        for x in 0..n {
            if up(quest[x]) != s.diamond(up(x)) {
                eq7.push(el(x));
            }
            if p.algebra.quest.as_ref().unwrap()[idx(x)] != idx(quest[x]) {
                table.push(el(x));
            }
        }
        report.record("repr.eq7", eq7);
        report.record("repr.quest-table", table);
    }
    Ok(report)
}

/// The canonical system of any finite algebra must be strong.
pub fn verify_strong(a: &Algebra) -> Result<bool, CoverError> {
    canonical_cover_system(a).is_strong()
}
