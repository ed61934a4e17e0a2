//! Orthogonality, the two negations, the derived consumption modality
//! -l!-r, and the classical/Grishin structure.
//!
//! Negations are computed along two independent routes and cross-checked:
//! from residual tables on algebras, and from the orthogonality relation
//! z ⊥ y iff z·y ∈ 0 on cover systems.

use crate::algebra::{Algebra, AlgebraError};
use crate::cover::{CoverError, CoverSystem, UP_SET_ENUM_LIMIT};
use crate::order::{bits, Mask};
use crate::report::AxiomReport;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NegationError {
    #[error("the four -!- variants disagree at {0}")]
    VariantMismatch(String),
    #[error("fusion is not commutative (at {0})")]
    NotCommutative(String),
    #[error("cover system is not classical")]
    NotClassical,
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// z ⊥ y iff z·y ∈ 0.
pub fn ortho(s: &CoverSystem, zero: Mask, z: usize, y: usize) -> bool {
    zero >> s.fuse(z, y) & 1 == 1
}

/// -l X = {z : z ⊥ X}.
pub fn neg_left(s: &CoverSystem, zero: Mask, x: Mask) -> Mask {
    (0..s.len())
        .filter(|&z| bits(x).all(|y| ortho(s, zero, z, y)))
        .fold(0, |m, z| m | 1 << z)
}

/// -r X = {z : X ⊥ z}.
pub fn neg_right(s: &CoverSystem, zero: Mask, x: Mask) -> Mask {
    (0..s.len())
        .filter(|&z| bits(x).all(|y| ortho(s, zero, y, z)))
        .fold(0, |m, z| m | 1 << z)
}

/// X ⇒l Y = {z : z·X ⊆ Y}, the set-level residual. Independent route for
/// the negations: -l X must equal X ⇒l 0.
pub fn impl_left(s: &CoverSystem, x: Mask, y: Mask) -> Mask {
    (0..s.len())
        .filter(|&z| s.product(1 << z, x) & !y == 0)
        .fold(0, |m, z| m | 1 << z)
}

/// X ⇒r Y = {z : X·z ⊆ Y}.
pub fn impl_right(s: &CoverSystem, x: Mask, y: Mask) -> Mask {
    (0..s.len())
        .filter(|&z| s.product(x, 1 << z) & !y == 0)
        .fold(0, |m, z| m | 1 << z)
}

/// The three orthogonality properties of a residuated cover system with a
/// distinguished zero, checked exhaustively.
pub fn check_ortho_props(s: &CoverSystem) -> Result<AxiomReport, NegationError> {
    let zero = s.zero_or_err()?;
    s.dot_or_err()?;
    let eps = s.epsilon_or_err()?;
    let n = s.len();
    let mut report = AxiomReport::new();

    let mut factor = Vec::new();
    for z in 0..n {
        for y in 0..n {
            if ortho(s, zero, z, y) != ortho(s, zero, s.fuse(z, y), eps) {
                factor.push(format!("({},{})", s.name_of(z), s.name_of(y)));
            }
        }
    }
    report.record("ortho.factors-through-epsilon", factor);

    let perp_eps: Mask =
        (0..n).filter(|&z| ortho(s, zero, z, eps)).fold(0, |m, z| m | 1 << z);
    report.record(
        "ortho.monotonic",
        bits(s.up(perp_eps) & !perp_eps).map(|y| format!("({})", s.name_of(y))).collect(),
    );
    report.record(
        "ortho.local",
        bits(s.j(perp_eps) & !perp_eps).map(|x| format!("({})", s.name_of(x))).collect(),
    );
    Ok(report)
}

/// The basic negation inequalities of any FL-algebra, plus the composed
/// contrapositive inequality, all exhaustive.
pub fn check_negation_identities(a: &Algebra) -> Result<AxiomReport, NegationError> {
    let zero = a.zero_or_err()?;
    let n = a.len();
    let nl = |x: usize| a.resl(x, zero);
    let nr = |x: usize| a.resr(x, zero);
    let mut report = AxiomReport::new();
    let el = |x: usize| format!("({})", a.name_of(x));

    report.record(
        "neg.double-intro",
        (0..n).filter(|&x| !a.leq(x, nl(nr(x))) || !a.leq(x, nr(nl(x)))).map(el).collect(),
    );
    let mut antitone = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if a.leq(x, y) && (!a.leq(nl(y), nl(x)) || !a.leq(nr(y), nr(x))) {
                antitone.push(format!("({},{})", a.name_of(x), a.name_of(y)));
            }
        }
    }
    report.record("neg.antitone", antitone);
    report.record(
        "neg.unit",
        if nl(a.unit) == zero && nr(a.unit) == zero { Vec::new() } else { vec![el(a.unit)] },
    );
    report.record(
        "neg.unit-below-neg-zero",
        if a.leq(a.unit, a.order.meet2(nl(zero), nr(zero))) { Vec::new() } else { vec![el(zero)] },
    );
    let mut contra = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !a.leq(a.resr(x, y), a.resl(nr(y), nr(x)))
                || !a.leq(a.resl(x, y), a.resr(nl(y), nl(x)))
            {
                contra.push(format!("({},{})", a.name_of(x), a.name_of(y)));
            }
        }
    }
    report.record("neg.contrapositive", contra);
    let mut eq13 = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !a.leq(a.resl(x, y), a.resr(a.resl(y, z), a.resl(x, z))) {
                    eq13.push(format!("({},{},{})", a.name_of(x), a.name_of(y), a.name_of(z)));
                }
            }
        }
    }
    report.record("neg.composed-contrapositive", eq13);
    Ok(report)
}

/// The table a ↦ -l!-r a. All four negation placements must coincide; a
/// mismatch signals a bug, not bad input.
pub fn dual_quest(a: &Algebra) -> Result<Vec<usize>, NegationError> {
    let zero = a.zero_or_err()?;
    let bang = a.bang_or_err()?.clone();
    let nl = |x: usize| a.resl(x, zero);
    let nr = |x: usize| a.resr(x, zero);
    let mut table = Vec::with_capacity(a.len());
    for x in 0..a.len() {
        let v = nl(bang[nr(x)]);
        let variants = [nr(bang[nl(x)]), nl(bang[nl(x)]), nr(bang[nr(x)])];
        if variants.iter().any(|&w| w != v) {
            return Err(NegationError::VariantMismatch(a.name_of(x).to_string()));
        }
        table.push(v);
    }
    Ok(table)
}

/// Theorem: -l!-r is always a consumption modality over a storage modality.
pub fn check_theorem5(a: &Algebra) -> Result<AxiomReport, NegationError> {
    let table = dual_quest(a)?;
    let mut with_dual = a.clone();
    with_dual.quest = Some(table);
    Ok(with_dual.check_modal_fl()?)
}

/// Is the system classical, i.e. j↑X = -l-r X = -r-l X? Quantified over all
/// up-sets (which is equivalent to all subsets), then spot-checked on 100
/// random arbitrary subsets with the given seed.
pub fn check_classical(s: &CoverSystem, seed: u64) -> Result<bool, NegationError> {
    let zero = s.zero_or_err()?;
    s.dot_or_err()?;
    if s.len() > UP_SET_ENUM_LIMIT {
        return Err(CoverError::ComplexityBound(format!(
            "{} points exceeds the up-set enumeration limit {UP_SET_ENUM_LIMIT}",
            s.len()
        ))
        .into());
    }
    for x in s.pre.up_sets() {
        let jx = s.j(x);
        if neg_left(s, zero, neg_right(s, zero, x)) != jx
            || neg_right(s, zero, neg_left(s, zero, x)) != jx
        {
            return Ok(false);
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..100 {
        let x: Mask = rng.gen_range(0..=s.full());
        let jux = s.j(s.up(x));
        assert!(
            neg_left(s, zero, neg_right(s, zero, x)) == jux
                && neg_right(s, zero, neg_left(s, zero, x)) == jux,
            "classicality held on up-sets but failed on arbitrary subset {}",
            s.pre.set_name(x)
        );
    }
    Ok(true)
}

/// Both sides of the classical-FL/Grishin equivalence: double-negation
/// elimination on the left, Lambek's conditions on the right. The booleans
/// agree on every FL-algebra.
pub fn check_grishin_equivalence(a: &Algebra) -> Result<(bool, bool), NegationError> {
    let zero = a.zero_or_err()?;
    let n = a.len();
    let nl = |x: usize| a.resl(x, zero);
    let nr = |x: usize| a.resr(x, zero);

    let classical = (0..n).all(|x| nl(nr(x)) == x && nr(nl(x)) == x);

    let lambek = nl(a.unit) == nr(a.unit)
        && (0..n).all(|x| {
            (0..n).all(|y| {
                let leq = a.leq(x, y);
                leq == a.leq(a.fuse(x, nr(y)), zero)
                    && leq == a.leq(a.fuse(nl(y), x), zero)
                    && a.resl(x, y) == nl(a.fuse(x, nr(y)))
                    && a.resr(x, y) == nr(a.fuse(nl(y), x))
            })
        });
    Ok((classical, lambek))
}

/// Girard's consumption modality (X^⊥ ∩ I)^⊥ on a classical commutative
/// system. Callers cross-check it against -l!-r in the proposition algebra.
pub fn girard_quest(s: &CoverSystem, x: Mask, seed: u64) -> Result<Mask, NegationError> {
    let zero = s.zero_or_err()?;
    let i_set = s.i_or_err()?;
    let dot = s.dot_or_err()?;
    let n = s.len();
    for a in 0..n {
        for b in 0..n {
            if dot[a][b] != dot[b][a] {
                return Err(NegationError::NotCommutative(format!(
                    "({},{})",
                    s.name_of(a),
                    s.name_of(b)
                )));
            }
        }
    }
    if !check_classical(s, seed)? {
        return Err(NegationError::NotClassical);
    }
    let perp = |m: Mask| neg_left(s, zero, m);
    Ok(perp(perp(x) & i_set))
}
