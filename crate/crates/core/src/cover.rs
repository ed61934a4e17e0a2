//! Finite cover systems through modal FL-cover systems: the `j` operator,
//! enumeration of propositions (localised up-sets), and the construction of
//! the proposition algebra.

use crate::algebra::{Algebra, AlgebraError};
use crate::order::{bits, FinitePreorder, LatticeOrder, Mask, OrderError};
use crate::report::AxiomReport;
use thiserror::Error;

/// Cap on the number of choice functions examined by the Transitivity check.
pub const CHOICE_FUNCTION_BOUND: u64 = 1_000_000;

/// Carrier limit for checks that enumerate all up-sets.
pub const UP_SET_ENUM_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("complexity bound exceeded: {0}")]
    ComplexityBound(String),
    #[error("field `{0}` is missing")]
    Missing(&'static str),
    #[error("operation left the proposition carrier: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// How the cover relation ⊳ is realised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverBackend {
    /// Explicitly listed (point, cover) pairs; ⊳ holds exactly for these.
    Extensional(Vec<(usize, Mask)>),
    /// x ⊳ C iff x ⊑ ⨆C in the referenced lattice on the same carrier.
    /// The ⊳ relation is never materialized; quantifications over covers use
    /// the ⨆ closed form.
    LatticeJoin(LatticeOrder),
}

/// A finite cover system, optionally extended with the residuated and modal
/// structure (fusion/unit, then zero/I/R). Checkers demand the parts they
/// need; everything is immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSystem {
    pub name: String,
    /// The refinement preorder ≼ on points.
    pub pre: FinitePreorder,
    pub backend: CoverBackend,
    /// Fusion · on points.
    pub dot: Option<Vec<Vec<usize>>>,
    /// Monoid identity ε.
    pub epsilon: Option<usize>,
    /// The distinguished proposition 0 (a point set).
    pub zero: Option<Mask>,
    /// The submonoid I of idempotent central elements below 1.
    pub i_set: Option<Mask>,
    /// R as successor masks: `r[x]` = {y : xRy}.
    pub r: Option<Vec<Mask>>,
}

impl CoverSystem {
    pub fn len(&self) -> usize {
        self.pre.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pre.is_empty()
    }

    pub fn full(&self) -> Mask {
        self.pre.full()
    }

    pub fn name_of(&self, x: usize) -> &str {
        self.pre.name(x)
    }

    pub fn dot_or_err(&self) -> Result<&Vec<Vec<usize>>, CoverError> {
        self.dot.as_ref().ok_or(CoverError::Missing("fusion"))
    }

    pub fn epsilon_or_err(&self) -> Result<usize, CoverError> {
        self.epsilon.ok_or(CoverError::Missing("epsilon"))
    }

    pub fn zero_or_err(&self) -> Result<Mask, CoverError> {
        self.zero.ok_or(CoverError::Missing("zero"))
    }

    pub fn i_or_err(&self) -> Result<Mask, CoverError> {
        self.i_set.ok_or(CoverError::Missing("I"))
    }

    pub fn r_or_err(&self) -> Result<&Vec<Mask>, CoverError> {
        self.r.as_ref().ok_or(CoverError::Missing("R"))
    }

    pub fn fuse(&self, x: usize, y: usize) -> usize {
        self.dot.as_ref().expect("fusion table")[x][y]
    }

    /// Pointwise product X·Y = {x·y : x∈X, y∈Y}.
    pub fn product(&self, x: Mask, y: Mask) -> Mask {
        let mut out = 0;
        for a in bits(x) {
            for b in bits(y) {
                out |= 1 << self.fuse(a, b);
            }
        }
        out
    }

    /// x ⊳ C, dispatched on the backend.
    pub fn covered_by(&self, x: usize, c: Mask) -> bool {
        match &self.backend {
            CoverBackend::Extensional(list) => list.iter().any(|&(p, m)| p == x && m == c),
            CoverBackend::LatticeJoin(lat) => lat.leq(x, lat.join_set(c)),
        }
    }

    /// jX = {x : ∃C (x ⊳ C ⊆ X)}. For the lattice-join backend this is the
    /// closed form {x : x ⊑ ⨆X}.
    pub fn j(&self, x: Mask) -> Mask {
        match &self.backend {
            CoverBackend::Extensional(list) => list
                .iter()
                .filter(|&&(_, c)| c & !x == 0)
                .fold(0, |acc, &(p, _)| acc | 1 << p),
            CoverBackend::LatticeJoin(lat) => {
                let join = lat.join_set(x);
                (0..self.len()).filter(|&p| lat.leq(p, join)).fold(0, |acc, p| acc | 1 << p)
            }
        }
    }

    pub fn up(&self, x: Mask) -> Mask {
        self.pre.up_closure(x)
    }

    /// A proposition is a localised up-set: X = ↑X and jX ⊆ X.
    pub fn is_proposition(&self, x: Mask) -> bool {
        self.pre.is_up_set(x) && self.j(x) & !x == 0
    }

    /// The covers quantified over by the exhaustive checkers: the listed ones
    /// for the extensional backend; for lattice-join, all covers of size ≤ 3
    /// (the axioms there hold by construction; this is a spot sample).
    fn covers_of(&self, x: usize) -> Vec<Mask> {
        match &self.backend {
            CoverBackend::Extensional(list) => {
                list.iter().filter(|&&(p, _)| p == x).map(|&(_, c)| c).collect()
            }
            CoverBackend::LatticeJoin(_) => small_subsets(self.len(), 3)
                .filter(|&c| self.covered_by(x, c))
                .collect(),
        }
    }

    /// ⟨R⟩X = {x : ∃y (xRy ∧ y ∈ X)}.
    pub fn diamond(&self, x: Mask) -> Mask {
        let r = self.r.as_ref().expect("R relation");
        (0..self.len()).filter(|&p| r[p] & x != 0).fold(0, |acc, p| acc | 1 << p)
    }

    /// All propositions, in a deterministic order: ascending mask value for
    /// the extensional backend (bounded to 12 points); the principal up-sets
    /// ↑x in carrier order for the lattice-join backend (any size).
    pub fn enumerate_propositions(&self) -> Result<Vec<Mask>, CoverError> {
        match &self.backend {
            CoverBackend::Extensional(_) => {
                if self.len() > UP_SET_ENUM_LIMIT {
                    return Err(CoverError::ComplexityBound(format!(
                        "{} points exceeds the up-set enumeration limit {UP_SET_ENUM_LIMIT}",
                        self.len()
                    )));
                }
                Ok(self
                    .pre
                    .up_sets()
                    .into_iter()
                    .filter(|&x| self.j(x) & !x == 0)
                    .collect())
            }
            CoverBackend::LatticeJoin(_) => {
                let mut out = Vec::new();
                for x in 0..self.len() {
                    let p = self.pre.up_of(x);
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Existence, Transitivity, Refinement. For the extensional backend the
    /// Transitivity check ranges over all choice functions assigning a listed
    /// cover to each member, capped at [`CHOICE_FUNCTION_BOUND`].
    pub fn check_cover_axioms(&self) -> Result<AxiomReport, CoverError> {
        let n = self.len();
        let mut report = AxiomReport::new();
        let sampled = matches!(self.backend, CoverBackend::LatticeJoin(_));

        if let CoverBackend::LatticeJoin(lat) = &self.backend {
            // The §6 closed forms presume ≼ is the reversed lattice order.
            let mut bad = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if self.pre.leq(x, y) != lat.leq(y, x) {
                        bad.push(format!("({},{})", self.name_of(x), self.name_of(y)));
                    }
                }
            }
            report.record("cover.lattice-backend-order", bad);
        }

        let mut existence = Vec::new();
        for x in 0..n {
            let upx = self.pre.up_of(x);
            if !self.covers_of(x).iter().any(|&c| c & !upx == 0) {
                existence.push(format!("({})", self.name_of(x)));
            }
        }
        let note = if sampled { "verified-by-theorem+sample" } else { "exhaustive" };
        report.record_note("cover.existence", existence, note);

        let mut transitivity = Vec::new();
        let mut budget = CHOICE_FUNCTION_BOUND;
        for x in 0..n {
            for c in self.covers_of(x) {
                let members: Vec<usize> = bits(c).collect();
                let options: Vec<Vec<Mask>> =
                    members.iter().map(|&y| self.covers_of(y)).collect();
                if options.iter().any(|o| o.is_empty()) {
                    continue; // no choice function exists, hypothesis is vacuous
                }
                let count: u64 = options.iter().map(|o| o.len() as u64).product();
                if count > budget {
                    return Err(CoverError::ComplexityBound(format!(
                        "transitivity at {} needs {count} choice functions",
                        self.name_of(x)
                    )));
                }
                budget -= count;
                let mut idx = vec![0usize; members.len()];
                loop {
                    let union: Mask =
                        idx.iter().enumerate().fold(0, |acc, (i, &k)| acc | options[i][k]);
                    if !self.covered_by(x, union) {
                        transitivity.push(format!(
                            "({},{} via {})",
                            self.name_of(x),
                            self.pre.set_name(c),
                            self.pre.set_name(union)
                        ));
                    }
                    let mut i = 0;
                    loop {
                        if i == members.len() {
                            break;
                        }
                        idx[i] += 1;
                        if idx[i] < options[i].len() {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                    if idx.iter().all(|&k| k == 0) {
                        break;
                    }
                }
            }
        }
        report.record_note("cover.transitivity", transitivity, note);

        let mut refinement = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !self.pre.leq(x, y) {
                    continue;
                }
                for c in self.covers_of(x) {
                    let upc = self.up(c);
                    if !self.covers_of(y).iter().any(|&c2| c2 & !upc == 0) {
                        refinement.push(format!(
                            "({},{},{})",
                            self.name_of(x),
                            self.name_of(y),
                            self.pre.set_name(c)
                        ));
                    }
                }
            }
        }
        report.record_note("cover.refinement", refinement, note);
        Ok(report)
    }

    /// Pomonoid laws, the two residuated-cover bullets, and the derived
    /// combined form (reported separately: with passing bullets a failure of
    /// it indicates an internal error).
    pub fn check_residuated_cover(&self) -> Result<AxiomReport, CoverError> {
        let dot = self.dot_or_err()?.clone();
        let eps = self.epsilon_or_err()?;
        let n = self.len();
        let mut report = AxiomReport::new();

        let mut assoc = Vec::new();
        let mut mono = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if dot[a][dot[b][c]] != dot[dot[a][b]][c] {
                        assoc.push(format!(
                            "({},{},{})",
                            self.name_of(a),
                            self.name_of(b),
                            self.name_of(c)
                        ));
                    }
                    if self.pre.leq(b, c)
                        && (!self.pre.leq(dot[a][b], dot[a][c])
                            || !self.pre.leq(dot[b][a], dot[c][a]))
                    {
                        mono.push(format!(
                            "({},{},{})",
                            self.name_of(a),
                            self.name_of(b),
                            self.name_of(c)
                        ));
                    }
                }
            }
        }
        report.record("rcover.associativity", assoc);
        report.record(
            "rcover.identity",
            (0..n)
                .filter(|&a| dot[eps][a] != a || dot[a][eps] != a)
                .map(|a| format!("({})", self.name_of(a)))
                .collect(),
        );
        report.record("rcover.monotonicity", mono);

        let mut preserves = Vec::new();
        for x in 0..n {
            for c in self.covers_of(x) {
                for y in 0..n {
                    let cy: Mask = bits(c).fold(0, |m, a| m | 1 << dot[a][y]);
                    let yc: Mask = bits(c).fold(0, |m, a| m | 1 << dot[y][a]);
                    if !self.covered_by(dot[x][y], cy) || !self.covered_by(dot[y][x], yc) {
                        preserves.push(format!(
                            "({},{},{})",
                            self.name_of(x),
                            self.pre.set_name(c),
                            self.name_of(y)
                        ));
                    }
                }
            }
        }
        report.record("rcover.fusion-preserves-covering", preserves);

        // Refinement of ε is local, i.e. ↑ε is localised: j↑ε ⊆ ↑ε.
        let upe = self.pre.up_of(eps);
        report.record(
            "rcover.epsilon-local",
            bits(self.j(upe) & !upe).map(|x| format!("({})", self.name_of(x))).collect(),
        );

        // Derived: x⊳C and y⊳D imply x·y ⊳ C·D.
        let mut derived = Vec::new();
        for x in 0..n {
            for c in self.covers_of(x) {
                for y in 0..n {
                    for d in self.covers_of(y) {
                        if !self.covered_by(dot[x][y], self.product(c, d)) {
                            derived.push(format!(
                                "({},{},{},{})",
                                self.name_of(x),
                                self.pre.set_name(c),
                                self.name_of(y),
                                self.pre.set_name(d)
                            ));
                        }
                    }
                }
            }
        }
        report.record("rcover.derived-product-covering", derived);
        Ok(report)
    }

    /// The ten bullets of the modal FL-cover system definition, exhaustively.
    /// Modal Localisation is checked over all up-sets X (sufficient for
    /// closure of propositions under the diamond), bounded to 12 points.
    pub fn check_modal_fl_cover(&self) -> Result<AxiomReport, CoverError> {
        let dot = self.dot_or_err()?.clone();
        let eps = self.epsilon_or_err()?;
        let zero = self.zero_or_err()?;
        let i_set = self.i_or_err()?;
        let r = self.r_or_err()?.clone();
        let n = self.len();
        let mut report = AxiomReport::new();
        let rel = |x: usize, y: usize| r[x] >> y & 1 == 1;

        report.record(
            "mcover.zero-is-proposition",
            if self.is_proposition(zero) {
                Vec::new()
            } else {
                vec![self.pre.set_name(zero)]
            },
        );
        report.record(
            "mcover.i-below-unit",
            bits(i_set & !self.pre.up_of(eps)).map(|x| format!("({})", self.name_of(x))).collect(),
        );

        let mut submonoid = Vec::new();
        if i_set >> eps & 1 == 0 {
            submonoid.push(format!("(ε={} not in I)", self.name_of(eps)));
        }
        for a in bits(i_set) {
            for b in bits(i_set) {
                if i_set >> dot[a][b] & 1 == 0 {
                    submonoid.push(format!("({},{})", self.name_of(a), self.name_of(b)));
                }
            }
        }
        report.record("mcover.i-submonoid", submonoid);

        report.record(
            "mcover.i-covers-epsilon",
            if self.covered_by(eps, i_set) {
                Vec::new()
            } else {
                vec![format!("({})", self.name_of(eps))]
            },
        );

        let mut idem = Vec::new();
        for x in bits(i_set) {
            if dot[x][x] != x {
                idem.push(format!("({})", self.name_of(x)));
            }
            for y in 0..n {
                if dot[x][y] != dot[y][x] {
                    idem.push(format!("({},{})", self.name_of(x), self.name_of(y)));
                }
            }
        }
        report.record("mcover.i-idempotent-central", idem);

        let mut confluence = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !self.pre.leq(x, y) {
                    continue;
                }
                for z in bits(r[x]) {
                    if r[y] & self.pre.up_of(z) == 0 {
                        confluence.push(format!(
                            "({},{},{})",
                            self.name_of(x),
                            self.name_of(y),
                            self.name_of(z)
                        ));
                    }
                }
            }
        }
        report.record("mcover.confluence", confluence);

        if n > UP_SET_ENUM_LIMIT {
            return Err(CoverError::ComplexityBound(format!(
                "{n} points exceeds the up-set enumeration limit {UP_SET_ENUM_LIMIT}"
            )));
        }
        let mut localisation = Vec::new();
        for x_set in self.pre.up_sets() {
            let dia = self.diamond(x_set);
            let jx = self.j(x_set);
            for p in bits(self.j(dia)) {
                if r[p] & jx == 0 {
                    localisation.push(format!("({},{})", self.name_of(p), self.pre.set_name(x_set)));
                }
            }
        }
        report.record_note("mcover.modal-localisation", localisation, "over-up-sets");

        let mut rmono = Vec::new();
        for x in bits(i_set) {
            for y in 0..n {
                for z in bits(r[y]) {
                    if !rel(dot[x][y], dot[x][z]) || !rel(dot[y][x], dot[z][x]) {
                        rmono.push(format!(
                            "({},{},{})",
                            self.name_of(x),
                            self.name_of(y),
                            self.name_of(z)
                        ));
                    }
                }
            }
        }
        report.record("mcover.r-monotonicity", rmono);

        report.record(
            "mcover.r-reflexive",
            (0..n).filter(|&x| !rel(x, x)).map(|x| format!("({})", self.name_of(x))).collect(),
        );
        let mut trans = Vec::new();
        for x in 0..n {
            for y in bits(r[x]) {
                for z in bits(r[y]) {
                    if !rel(x, z) {
                        trans.push(format!(
                            "({},{},{})",
                            self.name_of(x),
                            self.name_of(y),
                            self.name_of(z)
                        ));
                    }
                }
            }
        }
        report.record("mcover.r-transitive", trans);

        let mut zup = Vec::new();
        for x in 0..n {
            if r[x] & zero != 0 && zero >> x & 1 == 0 {
                zup.push(format!("({})", self.name_of(x)));
            }
        }
        report.record("mcover.r-into-zero", zup);

        let mut zdown = Vec::new();
        for x in bits(zero) {
            if !bits(r[x]).any(|y| self.covered_by(y, 0)) {
                zdown.push(format!("({})", self.name_of(x)));
            }
        }
        report.record("mcover.zero-reaches-empty-cover", zdown);
        Ok(report)
    }

    /// Build the algebra of propositions: carrier Prop(S) with the Theorem-1
    /// operations and, when 0/I/R are present, the Theorem-2 modalities.
    pub fn prop_algebra(&self) -> Result<PropAlgebra, CoverError> {
        let eps = self.epsilon_or_err()?;
        self.dot_or_err()?;
        let props = self.enumerate_propositions()?;
        let index = |m: Mask| -> Result<usize, CoverError> {
            props
                .iter()
                .position(|&p| p == m)
                .ok_or_else(|| CoverError::NotClosed(self.pre.set_name(m)))
        };

        let names: Vec<String> = props.iter().map(|&p| self.pre.set_name(p)).collect();
        let np = props.len();
        let mut pairs = Vec::new();
        for i in 0..np {
            for k in 0..np {
                if props[i] & !props[k] == 0 {
                    pairs.push((i, k));
                }
            }
        }
        let order = LatticeOrder::new(FinitePreorder::from_pairs(names, &pairs)?)?;

        let mut fusion = vec![vec![0usize; np]; np];
        for i in 0..np {
            for k in 0..np {
                fusion[i][k] = index(self.j(self.up(self.product(props[i], props[k]))))?;
            }
        }
        let unit = index(self.pre.up_of(eps))?;

        let zero = match self.zero {
            Some(z) => Some(index(z)?),
            None => None,
        };
        let bang = match self.i_set {
            Some(i_mask) => {
                let mut t = Vec::with_capacity(np);
                for &p in &props {
                    t.push(index(self.j(self.up(p & i_mask)))?);
                }
                Some(t)
            }
            None => None,
        };
        let quest = match &self.r {
            Some(_) => {
                let mut t = Vec::with_capacity(np);
                for &p in &props {
                    t.push(index(self.diamond(p))?);
                }
                Some(t)
            }
            None => None,
        };

        let algebra = Algebra::new(&format!("Prop({})", self.name), order, fusion, unit, zero, bang, quest)?;
        Ok(PropAlgebra { algebra, props })
    }

    /// Strong: X⊙Y = ↑(X·Y) already, with no j needed.
    pub fn is_strong(&self) -> Result<bool, CoverError> {
        self.dot_or_err()?;
        let props = self.enumerate_propositions()?;
        for &x in &props {
            for &y in &props {
                let upxy = self.up(self.product(x, y));
                if self.j(upxy) != upxy {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The proposition algebra together with the witness list of localised
/// up-sets that form its carrier.
#[derive(Debug, Clone)]
pub struct PropAlgebra {
    pub algebra: Algebra,
    /// `props[i]` is the point set carried by algebra element `i`.
    pub props: Vec<Mask>,
}

impl PropAlgebra {
    pub fn index_of(&self, m: Mask) -> Option<usize> {
        self.props.iter().position(|&p| p == m)
    }
}

/// Subsets of `0..n` of size at most `k`, ascending by mask value.
fn small_subsets(n: usize, k: u32) -> impl Iterator<Item = Mask> {
    let full = crate::order::full_mask(n);
    (0..=full).filter(move |m| m.count_ones() <= k)
}
