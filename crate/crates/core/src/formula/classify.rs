//! Well-formedness classes for formulas.
//!
//! - `Atomic`: anything over `{⊆, ⪯, =}` and the syntactic catalog, with
//!   unrestricted quantification.
//! - `Guarded`: atomic pieces, model predicates and guarded quantifiers,
//!   closed under Boolean combination; evaluable in polynomial time by
//!   guard expansion.
//! - `Quantified`: Boolean combinations of guarded formulas and
//!   single-kind unguarded quantifier blocks over guarded bodies. Each
//!   block may be existential or universal but blocks do not alternate,
//!   keeping every truth value one SAT call away.

use crate::formula::ast::Formula;
use crate::formula::library::{self, PredKind};
use crate::formula::printer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaClass {
    Atomic,
    Guarded,
    Quantified,
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("{rule}: in `{formula}`")]
pub struct ClassifyError {
    pub rule: String,
    pub formula: String,
}

impl ClassifyError {
    pub fn new(rule: &str, at: &Formula) -> ClassifyError {
        ClassifyError { rule: rule.into(), formula: printer::print(at) }
    }
}

/// True when the formula touches only the syntactic vocabulary.
pub fn is_atomic(f: &Formula) -> bool {
    let mut ok = true;
    f.walk(&mut |g| {
        match g {
            Formula::Pred(name, _) => {
                ok &= matches!(library::lookup(name).map(|d| d.kind), Some(PredKind::Syntactic));
            }
            Formula::GuardedExists(..) | Formula::GuardedForall(..) => ok = false,
            _ => {}
        }
        ok
    });
    ok
}

fn is_guarded(f: &Formula) -> bool {
    if is_atomic(f) {
        return true;
    }
    match f {
        Formula::True | Formula::False | Formula::Sub(..) | Formula::CardLe(..) | Formula::Eq(..) => true,
        Formula::Pred(name, _) => library::lookup(name)
            .map(|d| matches!(d.kind, PredKind::Syntactic | PredKind::Model))
            .unwrap_or(false),
        Formula::Not(g) => is_guarded(g),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            is_guarded(a) && is_guarded(b)
        }
        Formula::GuardedExists(_, _, g) | Formula::GuardedForall(_, _, g) => is_guarded(g),
        // An unguarded quantifier is only admissible inside a fully atomic
        // subformula, which the entry check already covered.
        Formula::Exists(..) | Formula::Forall(..) => false,
    }
}

/// Classifies a formula after macro expansion, or reports the broken rule.
pub fn classify(f: &Formula) -> Result<FormulaClass, ClassifyError> {
    let expanded = library::expand_macros(f)
        .map_err(|e| ClassifyError { rule: e.to_string(), formula: printer::print(f) })?;
    if is_atomic(&expanded) {
        return Ok(FormulaClass::Atomic);
    }
    if is_guarded(&expanded) {
        return Ok(FormulaClass::Guarded);
    }
    check_quantified(&expanded)?;
    Ok(FormulaClass::Quantified)
}

fn check_quantified(f: &Formula) -> Result<(), ClassifyError> {
    if is_guarded(f) {
        return Ok(());
    }
    match f {
        Formula::Not(g) => check_quantified(g),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            check_quantified(a)?;
            check_quantified(b)
        }
        Formula::Exists(_, _) => {
            let mut body = f;
            while let Formula::Exists(_, g) = body {
                body = g;
            }
            if is_guarded(body) {
                Ok(())
            } else if matches!(body, Formula::Forall(..)) {
                Err(ClassifyError::new(
                    "quantifier blocks must not alternate outside the atomic layer",
                    f,
                ))
            } else {
                Err(ClassifyError::new(
                    "existential block must cover a guarded formula",
                    f,
                ))
            }
        }
        Formula::Forall(_, _) => {
            let mut body = f;
            while let Formula::Forall(_, g) = body {
                body = g;
            }
            if is_guarded(body) {
                Ok(())
            } else if matches!(body, Formula::Exists(..)) {
                Err(ClassifyError::new(
                    "quantifier blocks must not alternate outside the atomic layer",
                    f,
                ))
            } else {
                Err(ClassifyError::new(
                    "universal block must cover a guarded formula",
                    f,
                ))
            }
        }
        Formula::GuardedExists(..) | Formula::GuardedForall(..) => Err(ClassifyError::new(
            "guarded quantifier over a non-guarded body",
            f,
        )),
        _ => Err(ClassifyError::new("not a well-formed query", f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ast::{self, pred, Term};
    use crate::formula::parser::{parse, Query};

    fn class_of(text: &str) -> FormulaClass {
        match parse(text).unwrap() {
            Query::Formula(f) => classify(&f).unwrap(),
            Query::Opt(_) => panic!("expected formula"),
        }
    }

    #[test]
    fn classes_of_library_templates() {
        // Syntactic predicates and the orders are atomic.
        assert_eq!(class_of("full(x)"), FormulaClass::Atomic);
        assert_eq!(class_of("suf(x, y)"), FormulaClass::Atomic);
        assert_eq!(class_of("rho1(x, y)"), FormulaClass::Atomic);
        assert_eq!(class_of("rho2(v1, v2, x, y)"), FormulaClass::Atomic);
        assert_eq!(class_of("rho3(u, y, z)"), FormulaClass::Atomic);
        assert_eq!(class_of("rho4(u, y, z)"), FormulaClass::Atomic);
        assert_eq!(class_of("nf(x, v1, v2)"), FormulaClass::Atomic);
        assert_eq!(class_of("pr(x, y)"), FormulaClass::Atomic);
        assert_eq!(class_of("leh(x, y, z)"), FormulaClass::Atomic);

        // Model predicates and the guarded queries are guarded.
        assert_eq!(class_of("allpos(x)"), FormulaClass::Guarded);
        assert_eq!(class_of("sr(x, y)"), FormulaClass::Guarded);
        assert_eq!(class_of("dfs(x)"), FormulaClass::Guarded);
        assert_eq!(class_of("csr(u1, u2, x)"), FormulaClass::Guarded);
        assert_eq!(class_of("nsr(u, x1, x)"), FormulaClass::Guarded);

        // Minimality templates need one unguarded block.
        assert_eq!(class_of("minimalsr(x, y)"), FormulaClass::Quantified);
        assert_eq!(class_of("minimumsr(x, y)"), FormulaClass::Quantified);
        assert_eq!(class_of("minimaldfs(x)"), FormulaClass::Quantified);
        assert_eq!(class_of("minimumcr(x, y)"), FormulaClass::Quantified);
        assert_eq!(class_of("maximumca(u, x)"), FormulaClass::Quantified);
        assert_eq!(class_of("exists y, sr(x, y)"), FormulaClass::Quantified);
    }

    #[test]
    fn alternation_is_rejected_outside_atoms() {
        let f = ast::forall("a", ast::exists("b", pred("sr", vec![Term::var("a"), Term::var("b")])));
        let err = classify(&f).unwrap_err();
        assert!(err.rule.contains("alternate"), "{err}");

        let atomic_alt = ast::forall("a", ast::exists("b", ast::sub(Term::var("a"), Term::var("b"))));
        assert_eq!(classify(&atomic_alt).unwrap(), FormulaClass::Atomic);
    }

    #[test]
    fn quantified_body_must_be_guarded() {
        // ∃x over a formula that itself contains an unguarded ∀ over a
        // model predicate is not expressible without alternation.
        let f = ast::exists(
            "a",
            ast::and(
                pred("allpos", vec![Term::var("a")]),
                ast::forall("b", pred("allneg", vec![Term::var("b")])),
            ),
        );
        assert!(classify(&f).is_err());
    }
}
