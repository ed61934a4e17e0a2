//! Models over modal FL-cover systems and the satisfaction relation.
//!
//! Quantification is substitutional: the signature is extended with the
//! universe members as constants, and the ∀/∃ clauses range over all
//! substitution instances.

use super::formula::{Formula, LogicError, Signature, Term};
use crate::cover::{CoverSystem, PropAlgebra};
use crate::order::{bits, Mask};
use crate::report::AxiomReport;
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct Model {
    pub system: CoverSystem,
    pub universe: Vec<String>,
    pub sig: Signature,
    /// constant name -> universe index; universe members map to themselves.
    pub const_interp: HashMap<String, usize>,
    /// predicate name -> (argument tuple of universe indices -> proposition).
    pub pred_interp: HashMap<String, HashMap<Vec<usize>, Mask>>,
}

impl Model {
    /// Validate and build a model: nonempty universe, all constants
    /// interpreted, every predicate total over U^n with proposition values.
    pub fn new(
        system: CoverSystem,
        universe: Vec<String>,
        sig: Signature,
        const_interp: HashMap<String, usize>,
        pred_interp: HashMap<String, HashMap<Vec<usize>, Mask>>,
    ) -> Result<Self, LogicError> {
        if universe.is_empty() {
            return Err(LogicError::BadModel("universe must be nonempty".into()));
        }
        // the satisfaction clauses need every modal part of the system
        system.dot_or_err()?;
        system.epsilon_or_err()?;
        system.zero_or_err()?;
        system.i_or_err()?;
        system.r_or_err()?;
        let u = universe.len();
        let mut const_interp = const_interp;
        for c in &sig.constants {
            match const_interp.get(c) {
                Some(&i) if i < u => {}
                Some(_) => {
                    return Err(LogicError::BadModel(format!("constant `{c}` out of range")))
                }
                None => return Err(LogicError::BadModel(format!("constant `{c}` uninterpreted"))),
            }
        }
        // extend the signature to ℒ^U: universe members become constants
        let mut sig = sig;
        for (i, name) in universe.iter().enumerate() {
            if !sig.is_constant(name) {
                sig.constants.push(name.clone());
            }
            const_interp.insert(name.clone(), i);
        }
        for (p, arity) in &sig.predicates {
            let table = pred_interp
                .get(p)
                .ok_or_else(|| LogicError::BadModel(format!("predicate `{p}` uninterpreted")))?;
            let expected = u.pow(*arity as u32);
            if table.len() != expected {
                return Err(LogicError::BadModel(format!(
                    "predicate `{p}` table has {} entries, needs {expected}",
                    table.len()
                )));
            }
            for (args, &mask) in table {
                if args.len() != *arity || args.iter().any(|&a| a >= u) {
                    return Err(LogicError::BadModel(format!("bad argument tuple for `{p}`")));
                }
                if !system.is_proposition(mask) {
                    return Err(LogicError::BadModel(format!(
                        "value of `{p}` at {args:?} is not a proposition"
                    )));
                }
            }
        }
        Ok(Model { system, universe, sig, const_interp, pred_interp })
    }

    fn resolve(&self, t: &Term) -> Result<usize, LogicError> {
        match t {
            Term::Var(v) => Err(LogicError::FreeVariable(v.clone())),
            Term::Const(c) => self
                .const_interp
                .get(c)
                .copied()
                .ok_or_else(|| LogicError::UnknownTerm(c.clone())),
        }
    }

    /// ⟦φ⟧ for a sentence of ℒ^U, memoized bottom-up over subsentences.
    pub fn truth_set(&self, phi: &Formula) -> Result<Mask, LogicError> {
        let mut memo = HashMap::new();
        self.eval(phi, &mut memo)
    }

    fn eval(&self, phi: &Formula, memo: &mut HashMap<Formula, Mask>) -> Result<Mask, LogicError> {
        if let Some(&m) = memo.get(phi) {
            return Ok(m);
        }
        let s = &self.system;
        let m = match phi {
            Formula::Atom(p, args) => {
                let idx: Vec<usize> =
                    args.iter().map(|t| self.resolve(t)).collect::<Result<_, _>>()?;
                *self
                    .pred_interp
                    .get(p)
                    .and_then(|t| t.get(&idx))
                    .ok_or_else(|| LogicError::UnknownSymbol(p.clone()))?
            }
            Formula::Top => s.full(),
            Formula::Bot => s.j(0),
            Formula::One => s.pre.up_of(s.epsilon_or_err()?),
            Formula::Zero => s.zero_or_err()?,
            Formula::And(a, b) => self.eval(a, memo)? & self.eval(b, memo)?,
            Formula::Or(a, b) => s.j(self.eval(a, memo)? | self.eval(b, memo)?),
            Formula::ImpL(a, b) => {
                let (x, y) = (self.eval(a, memo)?, self.eval(b, memo)?);
                crate::negation::impl_left(s, x, y)
            }
            Formula::ImpR(a, b) => {
                let (x, y) = (self.eval(a, memo)?, self.eval(b, memo)?);
                crate::negation::impl_right(s, x, y)
            }
            Formula::Forall(v, body) => {
                let mut acc = s.full();
                for c in &self.universe {
                    acc &= self.eval(&body.substitute(v, c), memo)?;
                }
                acc
            }
            Formula::Exists(v, body) => {
                let mut acc = 0;
                for c in &self.universe {
                    acc |= self.eval(&body.substitute(v, c), memo)?;
                }
                s.j(acc)
            }
            Formula::Bang(a) => {
                let x = self.eval(a, memo)?;
                s.j(s.up(x & s.i_or_err()?))
            }
            Formula::Quest(a) => s.diamond(self.eval(a, memo)?),
        };
        memo.insert(phi.clone(), m);
        Ok(m)
    }

    /// M,x ⊨ φ: membership in the truth set.
    pub fn satisfies(&self, x: usize, phi: &Formula) -> Result<bool, LogicError> {
        Ok(self.truth_set(phi)? >> x & 1 == 1)
    }

    /// Truth in the model. A sentence is true when its truth set is all of
    /// S; an open formula is true when every substitution instance with
    /// universe members is.
    pub fn is_true(&self, phi: &Formula) -> Result<bool, LogicError> {
        let mut instances = vec![phi.clone()];
        for v in phi.free_vars() {
            instances = instances
                .iter()
                .flat_map(|f| self.universe.iter().map(|c| f.substitute(&v, c)))
                .collect();
        }
        for inst in instances {
            if self.truth_set(&inst)? != self.system.full() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All closed atomic sentences of the model: P(u1,...,un) over U^n.
    pub fn ground_atoms(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        for (p, arity) in &self.sig.predicates {
            let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..*arity {
                tuples = tuples
                    .iter()
                    .flat_map(|t| {
                        (0..self.universe.len()).map(move |u| {
                            let mut t = t.clone();
                            t.push(u);
                            t
                        })
                    })
                    .collect();
            }
            for t in tuples {
                out.push(Formula::Atom(
                    p.clone(),
                    t.iter().map(|&u| Term::Const(self.universe[u].clone())).collect(),
                ));
            }
        }
        out
    }

    /// Evaluate a sentence while cross-checking every subsentence against
    /// the proposition-algebra tables; mismatches are pushed into `bad`
    /// under the connective's check id.
    fn agree(
        &self,
        phi: &Formula,
        p: &PropAlgebra,
        bad: &mut HashMap<&'static str, Vec<String>>,
    ) -> Result<Mask, LogicError> {
        fn mismatch(bad: &mut HashMap<&'static str, Vec<String>>, id: &'static str, phi: &Formula) {
            bad.entry(id).or_default().push(format!("({phi})"));
        }
        let s = &self.system;
        let value = self.truth_set(phi)?;
        let expected: Option<usize> = match phi {
            Formula::Atom(..) => None,
            Formula::Top => Some(p.algebra.top()),
            Formula::Bot => Some(p.algebra.bot()),
            Formula::One => Some(p.algebra.unit),
            Formula::Zero => p.algebra.zero,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::ImpL(a, b) | Formula::ImpR(a, b) => {
                let (xa, xb) = (self.agree(a, p, bad)?, self.agree(b, p, bad)?);
                match (p.index_of(xa), p.index_of(xb)) {
                    (Some(i), Some(j)) => Some(match phi {
                        Formula::And(..) => p.algebra.order.meet2(i, j),
                        Formula::Or(..) => p.algebra.order.join2(i, j),
                        Formula::ImpL(..) => p.algebra.resl(i, j),
                        _ => p.algebra.resr(i, j),
                    }),
                    _ => None,
                }
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let mut idx: Mask = 0;
                for c in &self.universe {
                    let inst = self.agree(&body.substitute(v, c), p, bad)?;
                    match p.index_of(inst) {
                        Some(i) => idx |= 1 << i,
                        None => return Ok(value),
                    }
                }
                Some(match phi {
                    Formula::Forall(..) => p.algebra.order.meet_set(idx),
                    _ => p.algebra.order.join_set(idx),
                })
            }
            Formula::Bang(a) => {
                let xa = self.agree(a, p, bad)?;
                p.index_of(xa).map(|i| p.algebra.bang.as_ref().unwrap()[i])
            }
            Formula::Quest(a) => {
                let xa = self.agree(a, p, bad)?;
                p.index_of(xa).map(|i| p.algebra.quest.as_ref().unwrap()[i])
            }
        };
        if !s.is_proposition(value) {
            mismatch(bad, "sem.proposition", phi);
        }
        if let Some(i) = expected {
            if p.props[i] != value {
                let id = match phi {
                    Formula::Top | Formula::Bot | Formula::One | Formula::Zero => "sem.constants",
                    Formula::And(..) => "sem.and",
                    Formula::Or(..) => "sem.or",
                    Formula::ImpL(..) => "sem.impl",
                    Formula::ImpR(..) => "sem.impr",
                    Formula::Forall(..) => "sem.forall",
                    Formula::Exists(..) => "sem.exists",
                    Formula::Bang(..) => "sem.bang",
                    Formula::Quest(..) => "sem.quest",
                    Formula::Atom(..) => unreachable!(),
                };
                mismatch(bad, id, phi);
            }
        }
        Ok(value)
    }

    /// Check that the satisfaction clauses agree with the proposition
    /// algebra: exhaustively over all sentences of depth ≤ 3 generated from
    /// the model's ground atoms and constants (with single-variable ∀/∃
    /// sentences layered on the depth ≤ 2 suite), plus 100 seeded random
    /// sentences of depth ≤ 5.
    pub fn check_semantic_agreement(&self, seed: u64) -> Result<AxiomReport, LogicError> {
        let p = self.system.prop_algebra()?;
        let mut bad: HashMap<&'static str, Vec<String>> = HashMap::new();

        let leaves: Vec<Formula> = [Formula::Top, Formula::Bot, Formula::One, Formula::Zero]
            .into_iter()
            .chain(self.ground_atoms())
            .collect();
        let mut suite = leaves.clone();
        let grow = |layer: &[Formula]| {
            let mut next = layer.to_vec();
            for a in layer {
                next.push(Formula::Bang(Box::new(a.clone())));
                next.push(Formula::Quest(Box::new(a.clone())));
                for b in layer {
                    let (a, b) = (Box::new(a.clone()), Box::new(b.clone()));
                    next.push(Formula::And(a.clone(), b.clone()));
                    next.push(Formula::Or(a.clone(), b.clone()));
                    next.push(Formula::ImpL(a.clone(), b.clone()));
                    next.push(Formula::ImpR(a, b));
                }
            }
            next
        };
        let depth2 = grow(&suite);
        suite = grow(&depth2);
        // quantified sentences: inside every depth ≤ 2 context, generalize
        // each predicate's occurrences to its open atom P(v0,...) and close
        // with each quantifier
        for (pr, arity) in &self.sig.predicates {
            if *arity == 0 {
                continue;
            }
            let open = Formula::Atom(
                pr.clone(),
                (0..*arity)
                    .map(|i| {
                        if i == 0 {
                            Term::Var("v0".into())
                        } else {
                            Term::Const(self.universe[0].clone())
                        }
                    })
                    .collect(),
            );
            for f in &depth2 {
                let ctx = generalize_atoms(f, pr, &open);
                suite.push(Formula::Forall("v0".into(), Box::new(ctx.clone())));
                suite.push(Formula::Exists("v0".into(), Box::new(ctx)));
            }
        }
        for phi in &suite {
            self.agree(phi, &p, &mut bad)?;
        }

        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..100 {
            let phi = super::formula::random_formula(&mut rng, &self.sig, 5);
            // close any leftover free variables by universal generalization
            let mut phi = phi;
            for v in phi.free_vars() {
                phi = Formula::Forall(v, Box::new(phi));
            }
            self.agree(&phi, &p, &mut bad)?;
        }

        let mut report = AxiomReport::new();
        for id in [
            "sem.proposition",
            "sem.constants",
            "sem.and",
            "sem.or",
            "sem.impl",
            "sem.impr",
            "sem.forall",
            "sem.exists",
            "sem.bang",
            "sem.quest",
        ] {
            report.record(id, bad.remove(id).unwrap_or_default());
        }
        Ok(report)
    }
}

/// Replace every atom of predicate `pred` in `f` by the open atom `open`.
fn generalize_atoms(f: &Formula, pred: &str, open: &Formula) -> Formula {
    let go = |x: &Formula| Box::new(generalize_atoms(x, pred, open));
    match f {
        Formula::Atom(p, _) if p == pred => open.clone(),
        Formula::Atom(..) | Formula::Top | Formula::Bot | Formula::One | Formula::Zero => {
            f.clone()
        }
        Formula::And(a, b) => Formula::And(go(a), go(b)),
        Formula::Or(a, b) => Formula::Or(go(a), go(b)),
        Formula::ImpL(a, b) => Formula::ImpL(go(a), go(b)),
        Formula::ImpR(a, b) => Formula::ImpR(go(a), go(b)),
        Formula::Forall(v, b) => Formula::Forall(v.clone(), go(b)),
        Formula::Exists(v, b) => Formula::Exists(v.clone(), go(b)),
        Formula::Bang(a) => Formula::Bang(go(a)),
        Formula::Quest(a) => Formula::Quest(go(a)),
    }
}

/// Convenience: points of a truth set as sorted names.
pub fn point_names(system: &CoverSystem, mask: Mask) -> Vec<String> {
    bits(mask).map(|x| system.name_of(x).to_string()).collect()
}
