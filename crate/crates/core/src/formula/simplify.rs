//! Tree-independent rewriting: double negation, truth-value identities and
//! constant folding of ground syntactic atoms.

use crate::atoms;
use crate::formula::ast::{Formula, Term};
use crate::formula::library::{self, PredKind};
use crate::model::PartialInstance;

fn const_args(args: &[Term]) -> Option<Vec<&PartialInstance>> {
    args.iter()
        .map(|t| match t {
            Term::Const(c) => Some(c),
            Term::Var(_) => None,
        })
        .collect()
}

/// Simplifies while preserving truth under every environment and tree.
pub fn simplify(f: &Formula) -> Formula {
    match f {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Sub(a, b) => fold_binary(f, a, b, |x, y| atoms::subsumes(x, y).ok()),
        Formula::CardLe(a, b) => fold_binary(f, a, b, |x, y| atoms::card_le(x, y).ok()),
        Formula::Eq(a, b) => fold_binary(f, a, b, |x, y| Some(x == y)),
        Formula::Pred(name, args) => {
            let is_syntactic =
                matches!(library::lookup(name).map(|d| d.kind), Some(PredKind::Syntactic));
            if is_syntactic {
                if let Some(cs) = const_args(args) {
                    if let Ok(v) = library::eval_syntactic(name, &cs) {
                        return lit(v);
                    }
                }
            }
            f.clone()
        }
        Formula::Not(g) => match simplify(g) {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        },
        Formula::And(a, b) => match (simplify(a), simplify(b)) {
            (Formula::False, _) | (_, Formula::False) => Formula::False,
            (Formula::True, g) | (g, Formula::True) => g,
            (a, b) => Formula::And(Box::new(a), Box::new(b)),
        },
        Formula::Or(a, b) => match (simplify(a), simplify(b)) {
            (Formula::True, _) | (_, Formula::True) => Formula::True,
            (Formula::False, g) | (g, Formula::False) => g,
            (a, b) => Formula::Or(Box::new(a), Box::new(b)),
        },
        Formula::Implies(a, b) => match (simplify(a), simplify(b)) {
            (Formula::False, _) | (_, Formula::True) => Formula::True,
            (Formula::True, g) => g,
            (g, Formula::False) => simplify(&Formula::Not(Box::new(g))),
            (a, b) => Formula::Implies(Box::new(a), Box::new(b)),
        },
        Formula::Iff(a, b) => match (simplify(a), simplify(b)) {
            (Formula::True, g) | (g, Formula::True) => g,
            (Formula::False, g) | (g, Formula::False) => simplify(&Formula::Not(Box::new(g))),
            (a, b) => Formula::Iff(Box::new(a), Box::new(b)),
        },
        Formula::Exists(v, g) => match simplify(g) {
            // The universe is never empty, so a constant body decides it.
            Formula::False => Formula::False,
            Formula::True => Formula::True,
            other => Formula::Exists(v.clone(), Box::new(other)),
        },
        Formula::Forall(v, g) => match simplify(g) {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            other => Formula::Forall(v.clone(), Box::new(other)),
        },
        // Guard sets can be empty (no positive leaf), so only the direction
        // that is sound for the empty set folds.
        Formula::GuardedExists(gd, v, g) => match simplify(g) {
            Formula::False => Formula::False,
            other => Formula::GuardedExists(*gd, v.clone(), Box::new(other)),
        },
        Formula::GuardedForall(gd, v, g) => match simplify(g) {
            Formula::True => Formula::True,
            other => Formula::GuardedForall(*gd, v.clone(), Box::new(other)),
        },
    }
}

fn fold_binary(
    f: &Formula,
    a: &Term,
    b: &Term,
    eval: impl Fn(&PartialInstance, &PartialInstance) -> Option<bool>,
) -> Formula {
    if let (Term::Const(x), Term::Const(y)) = (a, b) {
        if let Some(v) = eval(x, y) {
            return lit(v);
        }
    }
    f.clone()
}

fn lit(v: bool) -> Formula {
    if v {
        Formula::True
    } else {
        Formula::False
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ast::{self, pred};

    fn c(text: &str) -> Term {
        Term::Const(PartialInstance::parse(text).unwrap())
    }

    #[test]
    fn double_negation() {
        let p = pred("full", vec![Term::var("x")]);
        let f = ast::not(ast::not(p.clone()));
        assert_eq!(simplify(&f), p);
    }

    #[test]
    fn folds_constant_atoms() {
        assert_eq!(simplify(&Formula::Sub(c("(1,0,?)"), c("(1,1,1)"))), Formula::False);
        assert_eq!(simplify(&Formula::Sub(c("(1,?,?)"), c("(1,1,1)"))), Formula::True);
        assert_eq!(simplify(&pred("full", vec![c("(1,0)")])), Formula::True);
    }

    #[test]
    fn boolean_identities() {
        let p = pred("full", vec![Term::var("x")]);
        assert_eq!(simplify(&ast::and(p.clone(), Formula::True)), p);
        assert_eq!(simplify(&ast::and(p.clone(), Formula::False)), Formula::False);
        assert_eq!(simplify(&ast::implies(Formula::True, p.clone())), p);
        assert_eq!(simplify(&ast::implies(p.clone(), Formula::False)), ast::not(p.clone()));
        assert_eq!(simplify(&ast::or(p.clone(), Formula::True)), Formula::True);
    }

    #[test]
    fn folds_quantifiers_over_constant_bodies() {
        let f = ast::exists("q", ast::not(Formula::Sub(c("(1,?)"), c("(1,0)"))));
        assert_eq!(simplify(&f), Formula::False);
        let g = Formula::GuardedExists(
            crate::model::Guard::PosLeaf,
            "q".into(),
            Box::new(Formula::False),
        );
        assert_eq!(simplify(&g), Formula::False);
        // GuardedForall over true folds; GuardedExists over true must not.
        let h = Formula::GuardedExists(crate::model::Guard::PosLeaf, "q".into(), Box::new(Formula::True));
        assert_eq!(simplify(&h), h.clone());
    }
}
