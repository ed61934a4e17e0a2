//! Finite preorders, lattice orders, and subsets-as-bitmasks: the kernel
//! every other module builds on.
//!
//! Points are indices `0..n` into a name table; a subset of the carrier is a
//! [`Mask`] (bit `i` set iff point `i` is a member). Carriers are capped at
//! [`MAX_POINTS`] so that subset enumeration stays feasible.

use crate::report::AxiomReport;
use thiserror::Error;

/// A subset of the carrier, as a characteristic bitmask.
pub type Mask = u32;

/// Soft carrier limit: subset-enumerating checks refuse above this.
pub const MAX_POINTS: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("carrier has {0} points, limit is {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("point set {0:#b} is not over a carrier of {1} points")]
    CarrierMismatch(Mask, usize),
    #[error("relation is not a lattice order: {0}")]
    NotALattice(String),
    #[error("duplicate point name `{0}`")]
    DuplicateName(String),
}

/// Iterate the point indices of a mask.
pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

pub fn full_mask(n: usize) -> Mask {
    if n == 32 { !0 } else { (1u32 << n) - 1 }
}

/// A finite preorder: reflexive transitive relation `leq` over named points.
/// `leq(x, y)` is read "y refines x" (x ≼ y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePreorder {
    names: Vec<String>,
    /// `up[x]` = mask of all y with x ≼ y.
    up: Vec<Mask>,
}

impl FinitePreorder {
    /// Build from an explicit relation, exactly as given (no closure applied).
    pub fn from_relation(names: Vec<String>, up: Vec<Mask>) -> Result<Self, OrderError> {
        let n = names.len();
        if n > MAX_POINTS {
            return Err(OrderError::TooManyPoints(n));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(OrderError::DuplicateName(a.clone()));
            }
        }
        assert_eq!(up.len(), n);
        let full = full_mask(n);
        for &m in &up {
            if m & !full != 0 {
                return Err(OrderError::CarrierMismatch(m, n));
            }
        }
        Ok(FinitePreorder { names, up })
    }

    /// Build from generating pairs; the reflexive-transitive closure is
    /// precomputed so that all downstream checks are table lookups.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let n = names.len();
        let mut up = vec![0 as Mask; n];
        for i in 0..n {
            up[i] |= 1 << i;
        }
        for &(a, b) in pairs {
            up[a] |= 1 << b;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        Self::from_relation(names, up)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    /// x ≼ y.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    /// ↑X = {y : ∃x∈X, x ≼ y}, the smallest up-set including X.
    pub fn up_closure(&self, x: Mask) -> Mask {
        bits(x).fold(0, |acc, i| acc | self.up[i])
    }

    /// ↑x for a single point.
    pub fn up_of(&self, x: usize) -> Mask {
        self.up[x]
    }

    pub fn is_up_set(&self, x: Mask) -> bool {
        self.up_closure(x) == x
    }

    /// All up-sets of the carrier, ascending by mask value.
    pub fn up_sets(&self) -> Vec<Mask> {
        (0..=self.full()).filter(|&m| self.is_up_set(m)).collect()
    }

    /// Render a mask as `{a,b}` using point names.
    pub fn set_name(&self, m: Mask) -> String {
        let names: Vec<&str> = bits(m).map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Validate reflexivity and transitivity, listing every violation.
    pub fn check_preorder(&self) -> AxiomReport {
        let n = self.len();
        let mut report = AxiomReport::new();
        let mut refl = Vec::new();
        for x in 0..n {
            if !self.leq(x, x) {
                refl.push(format!("({})", self.name(x)));
            }
        }
        report.record("preorder.reflexivity", refl);
        let mut trans = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        trans.push(format!("({},{},{})", self.name(x), self.name(y), self.name(z)));
                    }
                }
            }
        }
        report.record("preorder.transitivity", trans);
        report
    }
}

/// A finite bounded lattice order: an antisymmetric preorder in which every
/// pair (hence every subset) has a least upper bound and greatest lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeOrder {
    pre: FinitePreorder,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl LatticeOrder {
    /// Validate the lattice axioms on `pre` and precompute join/meet tables.
    pub fn new(pre: FinitePreorder) -> Result<Self, OrderError> {
        let report = Self::check_lattice(&pre);
        if !report.passed() {
            let first = report.failures().next().unwrap();
            return Err(OrderError::NotALattice(format!(
                "{}{}",
                first.id,
                first.witnesses.first().map(|w| format!(" at {w}")).unwrap_or_default()
            )));
        }
        let n = pre.len();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                join[x][y] = Self::lub(&pre, x, y).unwrap();
                meet[x][y] = Self::glb(&pre, x, y).unwrap();
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| pre.leq(b, x))).unwrap();
        let top = (0..n).find(|&t| (0..n).all(|x| pre.leq(x, t))).unwrap();
        Ok(LatticeOrder { pre, join, meet, bottom, top })
    }

    fn lub(pre: &FinitePreorder, x: usize, y: usize) -> Option<usize> {
        let n = pre.len();
        let ubs: Vec<usize> = (0..n).filter(|&u| pre.leq(x, u) && pre.leq(y, u)).collect();
        let least: Vec<usize> =
            ubs.iter().copied().filter(|&u| ubs.iter().all(|&v| pre.leq(u, v))).collect();
        match least.as_slice() {
            [u] => Some(*u),
            _ => None,
        }
    }

    fn glb(pre: &FinitePreorder, x: usize, y: usize) -> Option<usize> {
        let n = pre.len();
        let lbs: Vec<usize> = (0..n).filter(|&l| pre.leq(l, x) && pre.leq(l, y)).collect();
        let greatest: Vec<usize> =
            lbs.iter().copied().filter(|&l| lbs.iter().all(|&v| pre.leq(v, l))).collect();
        match greatest.as_slice() {
            [l] => Some(*l),
            _ => None,
        }
    }

    /// Validate preorder axioms, antisymmetry, and existence/uniqueness of
    /// binary joins and meets, with witnesses for every violation.
    pub fn check_lattice(pre: &FinitePreorder) -> AxiomReport {
        let mut report = pre.check_preorder();
        let n = pre.len();
        let mut antisym = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if pre.leq(x, y) && pre.leq(y, x) {
                    antisym.push(format!("({},{})", pre.name(x), pre.name(y)));
                }
            }
        }
        report.record("lattice.antisymmetry", antisym);
        if report.passed() {
            let mut joins = Vec::new();
            let mut meets = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if Self::lub(pre, x, y).is_none() {
                        joins.push(format!("({},{})", pre.name(x), pre.name(y)));
                    }
                    if Self::glb(pre, x, y).is_none() {
                        meets.push(format!("({},{})", pre.name(x), pre.name(y)));
                    }
                }
            }
            report.record("lattice.joins-exist", joins);
            report.record("lattice.meets-exist", meets);
            let bottom = (0..n).any(|b| (0..n).all(|x| pre.leq(b, x)));
            report.record(
                "lattice.bounded",
                if bottom || n == 0 { Vec::new() } else { vec!["(no least element)".into()] },
            );
        }
        report
    }

    pub fn pre(&self) -> &FinitePreorder {
        &self.pre
    }

    pub fn len(&self) -> usize {
        self.pre.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pre.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.pre.name(i)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.pre.leq(x, y)
    }

    pub fn join2(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    pub fn meet2(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// ⨆X; the empty join is the least element.
    pub fn join_set(&self, x: Mask) -> usize {
        bits(x).fold(self.bottom, |acc, i| self.join[acc][i])
    }

    /// ⨅X; the empty meet is the greatest element.
    pub fn meet_set(&self, x: Mask) -> usize {
        bits(x).fold(self.top, |acc, i| self.meet[acc][i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chain(n: usize) -> FinitePreorder {
        let names = (0..n).map(|i| format!("e{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        FinitePreorder::from_pairs(names, &pairs).unwrap()
    }

    fn discrete(n: usize) -> FinitePreorder {
        let names = (0..n).map(|i| format!("e{i}")).collect();
        FinitePreorder::from_pairs(names, &[]).unwrap()
    }

    #[test]
    fn up_closure_on_chain() {
        let p = chain(2);
        assert_eq!(p.up_closure(0b01), 0b11);
        assert_eq!(p.up_closure(0), 0);
    }

    #[test]
    fn up_closure_discrete_is_identity() {
        let p = discrete(3);
        assert_eq!(p.up_closure(0b001), 0b001);
    }

    #[test]
    fn is_up_set_on_chain() {
        let p = chain(2);
        assert!(p.is_up_set(0b10));
        assert!(!p.is_up_set(0b01));
        assert!(p.is_up_set(0));
        assert!(p.is_up_set(p.full()));
    }

    #[test]
    fn join_on_chains() {
        let two = LatticeOrder::new(chain(2)).unwrap();
        assert_eq!(two.join_set(0b11), 1);
        assert_eq!(two.join_set(0), 0); // empty join is bottom
        // Lukasiewicz 3-chain {0, 1/2, 1}: join of {0, 1/2} is pairwise max.
        let three = LatticeOrder::new(chain(3)).unwrap();
        let oracle = bits(0b011).max().unwrap();
        assert_eq!(three.join_set(0b011), oracle);
        assert_eq!(three.join_set(0b011), 1);
    }

    #[test]
    fn check_preorder_missing_reflexivity() {
        let names = vec!["a".to_string()];
        let p = FinitePreorder::from_relation(names, vec![0]).unwrap();
        let r = p.check_preorder();
        assert!(!r.passed());
        assert_eq!(r.find("preorder.reflexivity").unwrap().witnesses, vec!["(a)"]);
    }

    #[test]
    fn check_lattice_antisymmetry_fails_on_cycle() {
        let names = vec!["a".to_string(), "b".to_string()];
        let p = FinitePreorder::from_pairs(names, &[(0, 1), (1, 0)]).unwrap();
        let r = LatticeOrder::check_lattice(&p);
        assert!(!r.find("lattice.antisymmetry").unwrap().pass);
    }

    #[test]
    fn check_lattice_valid_chain_passes() {
        assert!(LatticeOrder::check_lattice(&chain(3)).passed());
    }

    #[test]
    fn join_singleton_and_split() {
        let l = LatticeOrder::new(chain(4)).unwrap();
        for x in 0..4u32 {
            assert_eq!(l.join_set(1 << x), x as usize);
        }
        // join(X∪Y) = join({join X, join Y})
        for x in 0..16u32 {
            for y in 0..16u32 {
                let split = l.join2(l.join_set(x), l.join_set(y));
                assert_eq!(l.join_set(x | y), split);
            }
        }
    }

    proptest! {
        #[test]
        fn up_closure_is_closure_operator(rel in proptest::collection::vec(0u32..16, 4), x in 0u32..16, y in 0u32..16) {
            let names = (0..4).map(|i| format!("e{i}")).collect();
            let pairs: Vec<(usize, usize)> = (0..4)
                .flat_map(|a| bits(rel[a]).map(move |b| (a, b)))
                .collect();
            let p = FinitePreorder::from_pairs(names, &pairs).unwrap();
            let (x, y) = (x & p.full(), y & p.full());
            let ux = p.up_closure(x);
            prop_assert_eq!(x & ux, x); // X ⊆ ↑X
            prop_assert_eq!(p.up_closure(ux), ux); // idempotent
            prop_assert!(p.is_up_set(ux));
            if x & y == x {
                prop_assert_eq!(ux & p.up_closure(y), ux); // monotone
            }
        }
    }
}
