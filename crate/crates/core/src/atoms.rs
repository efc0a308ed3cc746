//! Direct evaluators for the tree-independent predicate layer, plus a
//! brute-force evaluator for arbitrary quantified formulas over
//! subsumption, the undefined-count order and equality.
//!
//! The direct evaluators are the production path. The brute-force
//! evaluator expands quantifiers over all `3^n` partial instances and is
//! only usable below a configured dimension bound; it exists so that every
//! derived predicate can be checked against its defining formula.

use std::collections::HashMap;

use crate::formula::ast::{Formula, Term};
use crate::model::{Cell, PartialInstance};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AtomsError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("argument must be a full instance: {0}")]
    NotFull(PartialInstance),
    #[error("brute-force bound exceeded: dimension {n} > bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("formula is not in the atomic layer over subsumption and pref: {0}")]
    NotAtomicLayer(String),
    #[error("unbound variable {0}")]
    UnboundVariable(String),
}

fn check_dims(e1: &PartialInstance, e2: &PartialInstance) -> Result<(), AtomsError> {
    if e1.dimension() != e2.dimension() {
        return Err(AtomsError::DimensionMismatch(e1.dimension(), e2.dimension()));
    }
    Ok(())
}

/// `e1 ⊆ e2`: every defined feature of `e1` has the same value in `e2`.
pub fn subsumes(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    check_dims(e1, e2)?;
    Ok(e1
        .cells()
        .iter()
        .zip(e2.cells())
        .all(|(&a, &b)| a == Cell::Bot || a == b))
}

/// `e1 ⪯ e2`: `e1` has at least as many undefined features as `e2`.
pub fn card_le(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    check_dims(e1, e2)?;
    Ok(e1.bot_count() >= e2.bot_count())
}

pub fn full(e: &PartialInstance) -> bool {
    e.is_full()
}

/// No feature is defined with different values in both.
pub fn cons(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    check_dims(e1, e2)?;
    Ok(e1
        .cells()
        .iter()
        .zip(e2.cells())
        .all(|(&a, &b)| a == Cell::Bot || b == Cell::Bot || a == b))
}

/// Same undefined features.
pub fn suf(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    check_dims(e1, e2)?;
    Ok(e1
        .cells()
        .iter()
        .zip(e2.cells())
        .all(|(&a, &b)| (a == Cell::Bot) == (b == Cell::Bot)))
}

/// Least upper bound under subsumption; `None` when the two instances are
/// inconsistent. Quantified definitions rely on the `None` case, so it is a
/// result, not an error.
pub fn join(e1: &PartialInstance, e2: &PartialInstance) -> Result<Option<PartialInstance>, AtomsError> {
    check_dims(e1, e2)?;
    let mut cells = Vec::with_capacity(e1.dimension());
    for (&a, &b) in e1.cells().iter().zip(e2.cells()) {
        cells.push(match (a, b) {
            (Cell::Bot, other) => other,
            (other, Cell::Bot) => other,
            (a, b) if a == b => a,
            _ => return Ok(None),
        });
    }
    Ok(Some(PartialInstance::new(cells)))
}

/// Greatest lower bound under subsumption; always exists.
pub fn meet(e1: &PartialInstance, e2: &PartialInstance) -> Result<PartialInstance, AtomsError> {
    check_dims(e1, e2)?;
    let cells = e1
        .cells()
        .iter()
        .zip(e2.cells())
        .map(|(&a, &b)| if a == b { a } else { Cell::Bot })
        .collect();
    Ok(PartialInstance::new(cells))
}

/// Alias for [`meet`].
pub fn glb(e1: &PartialInstance, e2: &PartialInstance) -> Result<PartialInstance, AtomsError> {
    meet(e1, e2)
}

pub fn hamming(e1: &PartialInstance, e2: &PartialInstance) -> Result<usize, AtomsError> {
    check_dims(e1, e2)?;
    for e in [e1, e2] {
        if !e.is_full() {
            return Err(AtomsError::NotFull(e.clone()));
        }
    }
    Ok(e1.cells().iter().zip(e2.cells()).filter(|(a, b)| a != b).count())
}

/// Hamming distance from `e1` to `e2` is at most the distance to `e3`.
/// All three must be full.
pub fn leh(e1: &PartialInstance, e2: &PartialInstance, e3: &PartialInstance) -> Result<bool, AtomsError> {
    Ok(hamming(e1, e2)? <= hamming(e1, e3)?)
}

/// All features undefined.
pub fn undef(e: &PartialInstance) -> bool {
    e.bot_count() == e.dimension()
}

/// Exactly one feature defined.
pub fn single(e: &PartialInstance) -> bool {
    e.dimension() - e.bot_count() == 1
}

/// Disjoint defined feature sets.
pub fn comp(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    check_dims(e1, e2)?;
    Ok(e1
        .cells()
        .iter()
        .zip(e2.cells())
        .all(|(&a, &b)| a == Cell::Bot || b == Cell::Bot))
}

/// The defined features of `e2` are exactly the undefined features of `e1`.
pub fn max_comp(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    check_dims(e1, e2)?;
    Ok(e1
        .cells()
        .iter()
        .zip(e2.cells())
        .all(|(&a, &b)| (a == Cell::Bot) != (b == Cell::Bot)))
}

/// Every defined feature of `e2` is defined in `e1`.
pub fn rel(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    check_dims(e1, e2)?;
    Ok(e1
        .cells()
        .iter()
        .zip(e2.cells())
        .all(|(&a, &b)| b == Cell::Bot || a != Cell::Bot))
}

/// `rel` holds and no single-feature extension of `e2` keeps it; written as
/// the literal maximality condition rather than the defined-set equality it
/// collapses to.
pub fn max_rel(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    if !rel(e1, e2)? {
        return Ok(false);
    }
    for i in e2.bot_set() {
        if rel(e1, &e2.with(i, Cell::Zero))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both define exactly one feature, the same one, with opposite values.
pub fn opp(e1: &PartialInstance, e2: &PartialInstance) -> Result<bool, AtomsError> {
    Ok(single(e1) && single(e2) && !cons(e1, e2)?)
}

/// Default dimension bound for brute-force evaluation.
pub const DEFAULT_GROUND_BOUND: usize = 8;

/// All `3^n` partial instances, in lexicographic cell order with
/// `0 < 1 < ⊥` per cell, first cell most significant.
pub fn enumerate_instances(n: usize) -> Vec<PartialInstance> {
    let mut out = Vec::with_capacity(3usize.pow(n as u32));
    let mut current = vec![Cell::Zero; n];
    loop {
        out.push(PartialInstance::new(current.clone()));
        // Increment as a base-3 counter.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] = match current[i] {
                Cell::Zero => Cell::One,
                Cell::One => Cell::Bot,
                Cell::Bot => {
                    current[i] = Cell::Zero;
                    continue;
                }
            };
            break;
        }
    }
}

/// Evaluates a closed-or-bound formula over `{⊆, ⪯, =}` by exhaustive
/// quantifier expansion at dimension `n`. Rejects predicates and guards;
/// expand them to their defining formulas first.
pub fn eval_ground_atomic(
    f: &Formula,
    n: usize,
    env: &HashMap<String, PartialInstance>,
    bound: usize,
) -> Result<bool, AtomsError> {
    let eval = GroundEvaluator::new(n, bound)?;
    eval.eval(f, env)
}

/// Reusable brute-force evaluator: materializes the universe once and
/// memoizes closed subformula results across calls.
pub struct GroundEvaluator {
    n: usize,
    universe: Vec<PartialInstance>,
    index: HashMap<PartialInstance, u32>,
}

impl GroundEvaluator {
    pub fn new(n: usize, bound: usize) -> Result<GroundEvaluator, AtomsError> {
        if n > bound {
            return Err(AtomsError::BoundExceeded { n, bound });
        }
        let universe = enumerate_instances(n);
        let index = universe.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        Ok(GroundEvaluator { n, universe, index })
    }

    pub fn universe(&self) -> &[PartialInstance] {
        &self.universe
    }

    pub fn eval(&self, f: &Formula, env: &HashMap<String, PartialInstance>) -> Result<bool, AtomsError> {
        // Index the subformulas so results can be memoized per node.
        let mut nodes = Vec::new();
        index_nodes(f, &mut nodes);
        let ids: HashMap<*const Formula, usize> =
            nodes.iter().enumerate().map(|(i, &p)| (p as *const Formula, i)).collect();
        let free: Vec<Vec<String>> = nodes
            .iter()
            .map(|p| {
                let mut vars = p.free_vars();
                vars.sort();
                vars
            })
            .collect();
        let mut env_ix: HashMap<String, u32> = HashMap::new();
        for (name, value) in env {
            if value.dimension() != self.n {
                return Err(AtomsError::DimensionMismatch(value.dimension(), self.n));
            }
            let ix = self
                .index
                .get(value)
                .copied()
                .expect("dimension-checked instance is in the universe");
            env_ix.insert(name.clone(), ix);
        }
        let mut memo: HashMap<(usize, Vec<u32>), bool> = HashMap::new();
        self.eval_node(f, &ids, &free, &mut env_ix, &mut memo)
    }

    fn eval_node(
        &self,
        f: &Formula,
        ids: &HashMap<*const Formula, usize>,
        free: &[Vec<String>],
        env: &mut HashMap<String, u32>,
        memo: &mut HashMap<(usize, Vec<u32>), bool>,
    ) -> Result<bool, AtomsError> {
        let id = ids[&(f as *const Formula)];
        let key: Vec<u32> = free[id]
            .iter()
            .map(|v| env.get(v).copied().ok_or_else(|| AtomsError::UnboundVariable(v.clone())))
            .collect::<Result<_, _>>()?;
        if let Some(&hit) = memo.get(&(id, key.clone())) {
            return Ok(hit);
        }
        let value = match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Sub(a, b) => subsumes(self.term(a, env)?, self.term(b, env)?)?,
            Formula::CardLe(a, b) => card_le(self.term(a, env)?, self.term(b, env)?)?,
            Formula::Eq(a, b) => self.term(a, env)? == self.term(b, env)?,
            Formula::Pred(name, _) => {
                return Err(AtomsError::NotAtomicLayer(format!("predicate {name} not expanded")));
            }
            Formula::GuardedExists(..) | Formula::GuardedForall(..) => {
                return Err(AtomsError::NotAtomicLayer("guarded quantifier".into()));
            }
            Formula::Not(g) => !self.eval_node(g, ids, free, env, memo)?,
            Formula::And(a, b) => {
                self.eval_node(a, ids, free, env, memo)? && self.eval_node(b, ids, free, env, memo)?
            }
            Formula::Or(a, b) => {
                self.eval_node(a, ids, free, env, memo)? || self.eval_node(b, ids, free, env, memo)?
            }
            Formula::Implies(a, b) => {
                !self.eval_node(a, ids, free, env, memo)? || self.eval_node(b, ids, free, env, memo)?
            }
            Formula::Iff(a, b) => {
                self.eval_node(a, ids, free, env, memo)? == self.eval_node(b, ids, free, env, memo)?
            }
            Formula::Exists(v, g) => {
                let shadowed = env.remove(v);
                let mut found = false;
                for ix in 0..self.universe.len() as u32 {
                    env.insert(v.clone(), ix);
                    if self.eval_node(g, ids, free, env, memo)? {
                        found = true;
                        break;
                    }
                }
                restore(env, v, shadowed);
                found
            }
            Formula::Forall(v, g) => {
                let shadowed = env.remove(v);
                let mut holds = true;
                for ix in 0..self.universe.len() as u32 {
                    env.insert(v.clone(), ix);
                    if !self.eval_node(g, ids, free, env, memo)? {
                        holds = false;
                        break;
                    }
                }
                restore(env, v, shadowed);
                holds
            }
        };
        memo.insert((id, key), value);
        Ok(value)
    }

    fn term<'a>(&'a self, t: &'a Term, env: &HashMap<String, u32>) -> Result<&'a PartialInstance, AtomsError> {
        match t {
            Term::Const(c) => {
                if c.dimension() != self.n {
                    return Err(AtomsError::DimensionMismatch(c.dimension(), self.n));
                }
                Ok(c)
            }
            Term::Var(v) => {
                let ix = env.get(v).ok_or_else(|| AtomsError::UnboundVariable(v.clone()))?;
                Ok(&self.universe[*ix as usize])
            }
        }
    }
}

fn restore(env: &mut HashMap<String, u32>, var: &str, old: Option<u32>) {
    match old {
        Some(ix) => {
            env.insert(var.to_string(), ix);
        }
        None => {
            env.remove(var);
        }
    }
}

fn index_nodes<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    out.push(f);
    match f {
        Formula::True
        | Formula::False
        | Formula::Sub(..)
        | Formula::CardLe(..)
        | Formula::Eq(..)
        | Formula::Pred(..) => {}
        Formula::Not(g)
        | Formula::Exists(_, g)
        | Formula::Forall(_, g)
        | Formula::GuardedExists(_, _, g)
        | Formula::GuardedForall(_, _, g) => index_nodes(g, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            index_nodes(a, out);
            index_nodes(b, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ast::{self, Term};

    fn pi(text: &str) -> PartialInstance {
        PartialInstance::parse(text).unwrap()
    }

    #[test]
    fn subsumes_basics() {
        assert!(subsumes(&pi("(1,?)"), &pi("(1,0)")).unwrap());
        assert!(!subsumes(&pi("(1,?)"), &pi("(0,0)")).unwrap());
        let e = pi("(1,0,?)");
        assert!(subsumes(&e, &e).unwrap());
        assert!(matches!(subsumes(&pi("(1)"), &pi("(1,0)")), Err(AtomsError::DimensionMismatch(1, 2))));
    }

    #[test]
    fn card_le_basics() {
        assert!(card_le(&pi("(?,?)"), &pi("(1,?)")).unwrap());
        assert!(!card_le(&pi("(1,0)"), &pi("(?,?)")).unwrap());
        let e = pi("(1,?)");
        assert!(card_le(&e, &e).unwrap());
    }

    #[test]
    fn full_basics() {
        assert!(full(&pi("(1,0)")));
        assert!(!full(&pi("(1,?)")));
        assert!(full(&PartialInstance::new(vec![])));
    }

    #[test]
    fn cons_basics() {
        assert!(cons(&pi("(1,?)"), &pi("(?,0)")).unwrap());
        assert!(!cons(&pi("(1,?)"), &pi("(0,?)")).unwrap());
        for e in enumerate_instances(2) {
            assert!(cons(&pi("(?,?)"), &e).unwrap());
        }
    }

    #[test]
    fn suf_basics() {
        assert!(suf(&pi("(1,?)"), &pi("(0,?)")).unwrap());
        assert!(!suf(&pi("(1,?)"), &pi("(1,0)")).unwrap());
        let e = pi("(?,1,?)");
        assert!(suf(&e, &e).unwrap());
    }

    #[test]
    fn join_and_meet_examples() {
        assert_eq!(join(&pi("(1,0,?,?)"), &pi("(1,?,?,1)")).unwrap(), Some(pi("(1,0,?,1)")));
        assert_eq!(join(&pi("(1,?)"), &pi("(0,0)")).unwrap(), None);
        let e = pi("(1,?,0)");
        assert_eq!(join(&e, &PartialInstance::all_bot(3)).unwrap(), Some(e.clone()));

        assert_eq!(meet(&pi("(1,0,?,?)"), &pi("(1,?,?,1)")).unwrap(), pi("(1,?,?,?)"));
        assert_eq!(meet(&pi("(1,?)"), &pi("(0,0)")).unwrap(), pi("(?,?)"));
        assert_eq!(meet(&e, &e).unwrap(), e);
    }

    #[test]
    fn join_is_least_upper_bound() {
        // Exhaustive at n = 3: join is an upper bound and below every other
        // upper bound; meet symmetrically.
        let all = enumerate_instances(3);
        for e1 in &all {
            for e2 in &all {
                match join(e1, e2).unwrap() {
                    Some(j) => {
                        assert!(subsumes(e1, &j).unwrap() && subsumes(e2, &j).unwrap());
                        for z in &all {
                            if subsumes(e1, z).unwrap() && subsumes(e2, z).unwrap() {
                                assert!(subsumes(&j, z).unwrap());
                            }
                        }
                    }
                    None => assert!(!cons(e1, e2).unwrap()),
                }
                let m = meet(e1, e2).unwrap();
                assert!(subsumes(&m, e1).unwrap() && subsumes(&m, e2).unwrap());
                for z in &all {
                    if subsumes(z, e1).unwrap() && subsumes(z, e2).unwrap() {
                        assert!(subsumes(z, &m).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn leh_basics() {
        assert!(leh(&pi("(1,1)"), &pi("(1,0)"), &pi("(0,0)")).unwrap());
        assert!(!leh(&pi("(1,1)"), &pi("(0,0)"), &pi("(1,0)")).unwrap());
        let e = pi("(1,0)");
        assert!(leh(&e, &e, &pi("(0,1)")).unwrap());
        assert!(matches!(leh(&pi("(1,?)"), &e, &e), Err(AtomsError::NotFull(_))));
    }

    #[test]
    fn extras_basics() {
        assert!(comp(&pi("(1,?)"), &pi("(?,0)")).unwrap());
        assert!(!comp(&pi("(1,?)"), &pi("(1,?)")).unwrap());
        assert!(max_comp(&pi("(1,?)"), &pi("(?,0)")).unwrap());
        assert!(!max_comp(&pi("(1,?)"), &pi("(?,?)")).unwrap());
        assert!(opp(&pi("(1,?)"), &pi("(0,?)")).unwrap());
        assert!(!opp(&pi("(1,?)"), &pi("(?,0)")).unwrap());
        assert!(undef(&pi("(?,?)")));
        assert!(single(&pi("(0,?)")));
        assert!(!single(&pi("(0,1)")));
    }

    #[test]
    fn max_rel_is_same_defined_set() {
        for n in 1..=4 {
            let all = enumerate_instances(n);
            for e1 in &all {
                for e2 in &all {
                    assert_eq!(max_rel(e1, e2).unwrap(), suf(e1, e2).unwrap(), "{e1} {e2}");
                }
            }
        }
    }

    #[test]
    fn subsumption_is_partial_order() {
        let all = enumerate_instances(3);
        for a in &all {
            assert!(subsumes(a, a).unwrap());
            for b in &all {
                if subsumes(a, b).unwrap() && subsumes(b, a).unwrap() {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if subsumes(a, b).unwrap() && subsumes(b, c).unwrap() {
                        assert!(subsumes(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn card_le_is_total_preorder() {
        let all = enumerate_instances(3);
        for a in &all {
            for b in &all {
                assert!(card_le(a, b).unwrap() || card_le(b, a).unwrap());
                for c in &all {
                    if card_le(a, b).unwrap() && card_le(b, c).unwrap() {
                        assert!(card_le(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn ground_eval_full_definition() {
        // full(x) as ∀y (x ⊆ y → y ⊆ x).
        let def = ast::forall(
            "y",
            ast::implies(ast::sub(Term::var("x"), Term::var("y")), ast::sub(Term::var("y"), Term::var("x"))),
        );
        let mut env = HashMap::new();
        env.insert("x".to_string(), pi("(1,0)"));
        assert!(eval_ground_atomic(&def, 2, &env, DEFAULT_GROUND_BOUND).unwrap());
        for e in enumerate_instances(3) {
            let mut env = HashMap::new();
            env.insert("x".to_string(), e.clone());
            assert_eq!(eval_ground_atomic(&def, 3, &env, DEFAULT_GROUND_BOUND).unwrap(), full(&e));
        }
    }

    #[test]
    fn ground_eval_respects_bound() {
        let f = ast::exists("y", ast::sub(Term::var("y"), Term::var("y")));
        let env = HashMap::new();
        assert!(matches!(
            eval_ground_atomic(&f, 9, &env, DEFAULT_GROUND_BOUND),
            Err(AtomsError::BoundExceeded { n: 9, bound: 8 })
        ));
    }

    #[test]
    fn enumerate_is_complete_and_duplicate_free() {
        let all = enumerate_instances(4);
        assert_eq!(all.len(), 81);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 81);
    }
}
