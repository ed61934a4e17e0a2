//! Acceptance gate: one test per criterion, each printing a single
//! `ACCEPTANCE <n> ... PASS` line when it holds. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use flc_core::enumerate::{enumerate_lemma3_bases, enumerate_modal_fl, enumerate_residuated, enumerate_storage};
use flc_core::fixtures;
use flc_core::logic::{parse_formula, random_formula, Formula, Signature, Term};
use flc_core::negation;
use flc_core::order::bits;
use flc_core::representation::{canonical_cover_system, verify_representation, verify_strong};
use flc_core::{algebra::Algebra, cover::CoverSystem, logic::Model};
use std::collections::HashMap;
use std::time::Instant;

fn seed() -> u64 {
    std::env::var("FLC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0xF1C)
}

/// All algebra fixtures carrying a full modal FL structure.
fn modal_fixtures() -> Vec<Algebra> {
    vec![fixtures::one1(), fixtures::bool2(), fixtures::luk3()]
}

/// All modal FL-cover-system fixtures: the extensional one-point system and
/// the canonical systems of the modal fixtures.
fn modal_cover_fixtures() -> Vec<CoverSystem> {
    let mut out = vec![fixtures::rcov1_modal()];
    out.extend(modal_fixtures().iter().map(canonical_cover_system));
    out
}

#[test]
fn criterion_1_fixture_soundness() {
    let start = Instant::now();
    for a in [fixtures::bool2(), fixtures::luk3()] {
        let t = Instant::now();
        assert!(a.check_residuated_lattice().passed(), "{}", a.name);
        assert!(a.check_storage().unwrap().passed(), "{}", a.name);
        assert!(a.check_modal_fl().unwrap().passed(), "{}", a.name);
        assert!(t.elapsed().as_secs() < 1, "{} took too long", a.name);
    }
    println!("ACCEPTANCE 1 fixture-soundness PASS ({:?})", start.elapsed());
}

#[test]
fn criterion_2_lemma1_derivability() {
    let start = Instant::now();
    let mut corpus: Vec<Algebra> = modal_fixtures();
    corpus.push(fixtures::heyting3());
    for n in 1..=3 {
        corpus.extend(enumerate_storage(n).unwrap());
    }
    for a in &corpus {
        assert!(a.check_storage().unwrap().passed(), "{} is not a storage algebra", a.name);
        let r = a.check_lemma1().unwrap();
        assert!(r.passed(), "Lemma 1 failed on {}:\n{r}", a.name);
    }
    assert!(start.elapsed().as_secs() < 300, "n=3 sweep exceeded 5 minutes");
    println!("ACCEPTANCE 2 lemma1-derivability PASS ({} algebras, {:?})", corpus.len(), start.elapsed());
}

#[test]
fn criterion_3_lemma2_and_lemma3() {
    let start = Instant::now();
    let mut corpus: Vec<Algebra> = modal_fixtures();
    for n in 1..=3 {
        corpus.extend(enumerate_modal_fl(n).unwrap());
    }
    for a in &corpus {
        assert!(a.check_modal_fl().unwrap().passed(), "{}", a.name);
        let r = a.check_lemma2().unwrap();
        assert!(r.passed(), "Lemma 2 failed on {}:\n{r}", a.name);
    }
    let mut bases = 0usize;
    for n in 1..=3 {
        for base in enumerate_lemma3_bases(n).unwrap() {
            bases += 1;
            for quest in base.unary_tables() {
                let (c1, rest) = base.check_lemma3_equivalence(&quest).unwrap();
                assert_eq!(
                    c1, rest,
                    "Lemma 3 biconditional failed on {} with candidate {quest:?}",
                    base.name
                );
            }
        }
    }
    println!("ACCEPTANCE 3 lemma2-lemma3 PASS ({bases} bases, {:?})", start.elapsed());
}

#[test]
fn criterion_4_theorem2_finite_scale() {
    let start = Instant::now();
    for s in modal_cover_fixtures() {
        let p = s.prop_algebra().unwrap();
        let r = p.algebra.check_modal_fl().unwrap();
        assert!(r.passed(), "Prop({}) failed:\n{r}", s.name);
        // zero is the distinguished proposition
        assert_eq!(p.props[p.algebra.zero.unwrap()], s.zero.unwrap(), "{}", s.name);
        // ! and ? are exactly the Theorem-2 tables, recomputed here
        let (i_set, bang, quest) = (s.i_set.unwrap(), p.algebra.bang.as_ref().unwrap(), p.algebra.quest.as_ref().unwrap());
        for (i, &x) in p.props.iter().enumerate() {
            assert_eq!(p.props[bang[i]], s.j(s.up(x & i_set)), "{}", s.name);
            assert_eq!(p.props[quest[i]], s.diamond(x), "{}", s.name);
        }
    }
    println!("ACCEPTANCE 4 theorem2 PASS ({:?})", start.elapsed());
}

#[test]
fn criterion_5_theorem3_round_trip() {
    let start = Instant::now();
    let mut corpus: Vec<Algebra> = vec![fixtures::bool2(), fixtures::luk3()];
    for n in 1..=3 {
        corpus.extend(enumerate_modal_fl(n).unwrap());
    }
    for a in &corpus {
        let r = verify_representation(a).unwrap();
        assert!(r.passed(), "representation of {} failed:\n{r}", a.name);
        assert!(verify_strong(a).unwrap(), "{} canonical system not strong", a.name);
    }
    println!("ACCEPTANCE 5 theorem3-round-trip PASS ({} algebras, {:?})", corpus.len(), start.elapsed());
}

#[test]
fn criterion_6_negation_suite() {
    let start = Instant::now();
    // negation identities on every fixture with a zero
    for a in [fixtures::one1(), fixtures::bool2(), fixtures::luk3(), fixtures::heyting3()] {
        let r = negation::check_negation_identities(&a).unwrap();
        assert!(r.passed(), "{}:\n{r}", a.name);
    }
    // orthogonality properties on every cover fixture with fusion and zero
    for s in modal_cover_fixtures() {
        let r = negation::check_ortho_props(&s).unwrap();
        assert!(r.passed(), "{}:\n{r}", s.name);
    }
    // Lemma 5 / Theorem 5 across every storage algebra of size ≤ 3 under
    // every choice of zero
    let mut swept = 0usize;
    let mut storage: Vec<Algebra> = modal_fixtures();
    for n in 1..=3 {
        storage.extend(enumerate_storage(n).unwrap());
    }
    for base in &storage {
        for zero in 0..base.len() {
            let mut a = base.clone();
            a.zero = Some(zero);
            a.quest = None;
            let dual = negation::dual_quest(&a).expect("Lemma 5 variants must coincide");
            assert_eq!(dual.len(), a.len());
            let r = negation::check_theorem5(&a).unwrap();
            assert!(r.passed(), "Theorem 5 failed on {} with zero {zero}:\n{r}", a.name);
            swept += 1;
        }
    }
    println!("ACCEPTANCE 6 negation-suite PASS ({swept} storage/zero pairs, {:?})", start.elapsed());
}

#[test]
fn criterion_7_classical_structure() {
    let start = Instant::now();
    // Grishin equivalence: exhaustive biconditional on all FL-algebras of
    // size ≤ 3 (every residuated base under every zero)
    let mut swept = 0usize;
    for n in 1..=3 {
        for base in enumerate_residuated(n).unwrap() {
            for zero in 0..base.len() {
                let mut a = base.clone();
                a.zero = Some(zero);
                let (dne, lambek) = negation::check_grishin_equivalence(&a).unwrap();
                assert_eq!(dne, lambek, "{} with zero {zero}", a.name);
                swept += 1;
            }
        }
    }
    assert!(negation::check_classical(&canonical_cover_system(&fixtures::bool2()), seed()).unwrap());
    assert!(negation::check_classical(&canonical_cover_system(&fixtures::luk3()), seed()).unwrap());
    assert!(!negation::check_classical(&canonical_cover_system(&fixtures::heyting3()), seed()).unwrap());
    // Girard's consumption modality in the commutative classical fixtures
    for a in [fixtures::bool2(), fixtures::luk3()] {
        let s = canonical_cover_system(&a);
        let p = s.prop_algebra().unwrap();
        let dual = negation::dual_quest(&p.algebra).unwrap();
        for (i, &x) in p.props.iter().enumerate() {
            assert_eq!(
                negation::girard_quest(&s, x, seed()).unwrap(),
                p.props[dual[i]],
                "{} at proposition {i}",
                a.name
            );
        }
    }
    println!("ACCEPTANCE 7 classical-structure PASS ({swept} FL-algebras, {:?})", start.elapsed());
}

fn canonical_model(a: &Algebra, pred_value: u32) -> Model {
    let s = canonical_cover_system(a);
    let sig = Signature { constants: vec![], predicates: vec![("P".into(), 1)] };
    let mut pred = HashMap::new();
    pred.insert("P".to_string(), HashMap::from([(vec![0], pred_value)]));
    Model::new(s, vec!["u".into()], sig, HashMap::new(), pred).unwrap()
}

#[test]
fn criterion_8_semantic_agreement() {
    let start = Instant::now();
    let bool2 = canonical_model(&fixtures::bool2(), 0b01);
    let luk3 = canonical_model(&fixtures::luk3(), 0b011);
    for (name, m) in [("BOOL2", &bool2), ("LUK3", &luk3)] {
        let r = m.check_semantic_agreement(seed()).unwrap();
        assert!(r.passed(), "{name}:\n{r}");
    }
    assert!(start.elapsed().as_secs() < 30, "semantic agreement exceeded 30 s");
    println!("ACCEPTANCE 8 semantic-agreement PASS ({:?})", start.elapsed());
}

#[test]
fn criterion_9_parser() {
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    let start = Instant::now();
    let sig = Signature {
        constants: vec!["u".into(), "c0".into()],
        predicates: vec![("p".into(), 0), ("P".into(), 1), ("Q".into(), 2)],
    };
    let mut rng = StdRng::seed_from_u64(seed());
    for i in 0..1000 {
        let f = random_formula(&mut rng, &sig, 1 + i % 6);
        let printed = f.to_string();
        let back = parse_formula(&printed, &sig).expect("printed formula must reparse");
        assert_eq!(back, f, "round trip failed on `{printed}`");
    }
    let p = || Box::new(Formula::Atom("p".into(), vec![]));
    assert_eq!(
        parse_formula("!(p ->l p)", &sig).unwrap(),
        Formula::Bang(Box::new(Formula::ImpL(p(), p())))
    );
    assert_eq!(parse_formula("negl p", &sig).unwrap(), Formula::ImpL(p(), Box::new(Formula::Zero)));
    assert_eq!(parse_formula("negr p", &sig).unwrap(), Formula::negr(Formula::Atom("p".into(), vec![])));
    assert_eq!(
        parse_formula("forall x. P(x) | 0", &sig).unwrap(),
        Formula::Forall(
            "x".into(),
            Box::new(Formula::Or(
                Box::new(Formula::Atom("P".into(), vec![Term::Var("x".into())])),
                Box::new(Formula::Zero)
            ))
        )
    );
    println!("ACCEPTANCE 9 parser PASS ({:?})", start.elapsed());
}

/// Cross-cutting invariants of §8 used as oracles for criteria 6–7: the
/// triple-orthogonal collapse and the biperp closure identity on the
/// commutative classical fixtures, over every subset.
#[test]
fn section8_orthogonality_invariants() {
    for a in [fixtures::bool2(), fixtures::luk3()] {
        let s = canonical_cover_system(&a);
        let zero = s.zero.unwrap();
        let perp = |m| negation::neg_left(&s, zero, m);
        for x in 0..=s.full() {
            assert_eq!(perp(perp(perp(x))), perp(x));
            assert_eq!(perp(perp(x)), s.j(s.up(x)));
        }
    }
}

/// The §8 negations computed from orthogonality agree with the residual
/// route X ⇒i 0 on every proposition of every modal cover fixture.
#[test]
fn section8_negations_cross_check() {
    for s in modal_cover_fixtures() {
        let zero = s.zero.unwrap();
        for x in s.enumerate_propositions().unwrap() {
            assert_eq!(negation::neg_left(&s, zero, x), negation::impl_left(&s, x, zero));
            assert_eq!(negation::neg_right(&s, zero, x), negation::impl_right(&s, x, zero));
        }
        let _ = bits(zero).count();
    }
}
