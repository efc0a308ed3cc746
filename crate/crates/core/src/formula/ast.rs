//! Formula AST shared by the parser, simplifier, encoder, engine and oracle.

use std::collections::BTreeSet;
use std::fmt;

use crate::model::{Guard, PartialInstance};

/// A term is a query variable or a partial-instance constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(PartialInstance),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

/// Formulas over partial instances.
///
/// The three structural atoms are subsumption, the undefined-count order
/// `pref`, and equality. Named predicates ([`Formula::Pred`]) cover the rest
/// of the catalog: tree-independent predicates such as `full` or `suf`,
/// model predicates such as `allpos` or `node`, and macros such as `sr`
/// that the library expands before evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// `lhs ⊆ rhs`: rhs agrees with lhs on all of lhs's defined features.
    Sub(Term, Term),
    /// `lhs ⪯ rhs`: lhs has at least as many undefined features as rhs.
    CardLe(Term, Term),
    Eq(Term, Term),
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    GuardedExists(Guard, String, Box<Formula>),
    GuardedForall(Guard, String, Box<Formula>),
}

/// A minimization query: the ρ-least `target` satisfying `objective`.
///
/// `objective` mentions the distinguished variable and any number of
/// parameters; `order` is an atomic formula comparing `order_vars.0` to
/// `order_vars.1`, possibly with its own parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptFormula {
    pub objective: Formula,
    pub target: String,
    pub order: Formula,
    pub order_vars: (String, String),
}

impl OptFormula {
    /// Parameters of the objective: its free variables minus the target.
    pub fn objective_params(&self) -> Vec<String> {
        self.objective.free_vars().into_iter().filter(|v| *v != self.target).collect()
    }

    /// Parameters of the order: its free variables minus the compared pair.
    pub fn order_params(&self) -> Vec<String> {
        self.order
            .free_vars()
            .into_iter()
            .filter(|v| *v != self.order_vars.0 && *v != self.order_vars.1)
            .collect()
    }
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    Formula::Iff(Box::new(a), Box::new(b))
}

pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
    Formula::Exists(v.into(), Box::new(f))
}

pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
    Formula::Forall(v.into(), Box::new(f))
}

pub fn sub(a: Term, b: Term) -> Formula {
    Formula::Sub(a, b)
}

pub fn card_le(a: Term, b: Term) -> Formula {
    Formula::CardLe(a, b)
}

pub fn pred(name: &str, args: Vec<Term>) -> Formula {
    Formula::Pred(name.into(), args)
}

/// Conjunction of a list, `true` when empty.
pub fn and_all(fs: Vec<Formula>) -> Formula {
    let mut it = fs.into_iter();
    match it.next() {
        None => Formula::True,
        Some(first) => it.fold(first, and),
    }
}

/// Disjunction of a list, `false` when empty.
pub fn or_all(fs: Vec<Formula>) -> Formula {
    let mut it = fs.into_iter();
    match it.next() {
        None => Formula::False,
        Some(first) => it.fold(first, or),
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SubstError {
    #[error("cannot substitute for {0}: it is bound in the formula")]
    BoundVariable(String),
}

impl Formula {
    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>, seen: &mut BTreeSet<String>) {
            let mut term = |t: &Term| {
                if let Term::Var(v) = t {
                    if !bound.contains(v) && seen.insert(v.clone()) {
                        out.push(v.clone());
                    }
                }
            };
            match f {
                Formula::True | Formula::False => {}
                Formula::Sub(a, b) | Formula::CardLe(a, b) | Formula::Eq(a, b) => {
                    term(a);
                    term(b);
                }
                Formula::Pred(_, args) => args.iter().for_each(term),
                Formula::Not(g) => walk(g, bound, out, seen),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    walk(a, bound, out, seen);
                    walk(b, bound, out, seen);
                }
                Formula::Exists(v, g)
                | Formula::Forall(v, g)
                | Formula::GuardedExists(_, v, g)
                | Formula::GuardedForall(_, v, g) => {
                    bound.push(v.clone());
                    walk(g, bound, out, seen);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out, &mut BTreeSet::new());
        out
    }

    /// Variables bound by some quantifier in the formula.
    pub fn bound_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            match f {
                Formula::Exists(v, _)
                | Formula::Forall(v, _)
                | Formula::GuardedExists(_, v, _)
                | Formula::GuardedForall(_, v, _) => {
                    out.insert(v.clone());
                }
                _ => {}
            }
            true
        });
        out
    }

    /// Replaces free occurrences of `var` with the constant `value`.
    /// Substituting a variable that is bound anywhere in the formula is an
    /// error; substituting an unknown variable is a no-op.
    pub fn substitute(&self, var: &str, value: &PartialInstance) -> Result<Formula, SubstError> {
        if self.bound_vars().contains(var) {
            return Err(SubstError::BoundVariable(var.to_string()));
        }
        Ok(self.substitute_free(var, value))
    }

    /// Replacement without the bound-name check; shadowing is respected.
    pub(crate) fn substitute_free(&self, var: &str, value: &PartialInstance) -> Formula {
        let term = |t: &Term| match t {
            Term::Var(v) if v == var => Term::Const(value.clone()),
            other => other.clone(),
        };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Sub(a, b) => Formula::Sub(term(a), term(b)),
            Formula::CardLe(a, b) => Formula::CardLe(term(a), term(b)),
            Formula::Eq(a, b) => Formula::Eq(term(a), term(b)),
            Formula::Pred(name, args) => Formula::Pred(name.clone(), args.iter().map(term).collect()),
            Formula::Not(g) => not(g.substitute_free(var, value)),
            Formula::And(a, b) => and(a.substitute_free(var, value), b.substitute_free(var, value)),
            Formula::Or(a, b) => or(a.substitute_free(var, value), b.substitute_free(var, value)),
            Formula::Implies(a, b) => implies(a.substitute_free(var, value), b.substitute_free(var, value)),
            Formula::Iff(a, b) => iff(a.substitute_free(var, value), b.substitute_free(var, value)),
            Formula::Exists(v, g) if v == var => Formula::Exists(v.clone(), g.clone()),
            Formula::Forall(v, g) if v == var => Formula::Forall(v.clone(), g.clone()),
            Formula::GuardedExists(gd, v, g) if v == var => Formula::GuardedExists(*gd, v.clone(), g.clone()),
            Formula::GuardedForall(gd, v, g) if v == var => Formula::GuardedForall(*gd, v.clone(), g.clone()),
            Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(g.substitute_free(var, value))),
            Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(g.substitute_free(var, value))),
            Formula::GuardedExists(gd, v, g) => {
                Formula::GuardedExists(*gd, v.clone(), Box::new(g.substitute_free(var, value)))
            }
            Formula::GuardedForall(gd, v, g) => {
                Formula::GuardedForall(*gd, v.clone(), Box::new(g.substitute_free(var, value)))
            }
        }
    }

    /// Pre-order visit; the callback returns false to skip a subtree.
    pub fn walk(&self, visit: &mut impl FnMut(&Formula) -> bool) {
        if !visit(self) {
            return;
        }
        match self {
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
            | Formula::GuardedForall(_, _, g) => g.walk(visit),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        let mut count = 0;
        self.walk(&mut |_| {
            count += 1;
            true
        });
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Term {
        Term::var(name)
    }

    #[test]
    fn free_vars_of_binary_pred() {
        let f = pred("sr", vec![v("x"), v("y")]);
        assert_eq!(f.free_vars(), vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn substitute_shrinks_free_vars() {
        let f = exists("z", and(sub(v("z"), v("y")), pred("sr", vec![v("x"), v("z")])));
        let c = PartialInstance::parse("(1,0)").unwrap();
        let g = f.substitute("y", &c).unwrap();
        assert_eq!(g.free_vars(), vec!["x".to_string()]);
    }

    #[test]
    fn substitute_unknown_is_noop() {
        let f = sub(v("x"), v("y"));
        let c = PartialInstance::parse("(1,0)").unwrap();
        assert_eq!(f.substitute("q", &c).unwrap(), f);
    }

    #[test]
    fn substitute_bound_is_error() {
        let f = exists("x", sub(v("x"), v("y")));
        let c = PartialInstance::parse("(1,0)").unwrap();
        assert_eq!(f.substitute("x", &c), Err(SubstError::BoundVariable("x".into())));
    }
}
