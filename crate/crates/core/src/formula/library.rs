//! Named predicate registry: the syntactic catalog, the model predicates,
//! and the macro templates for the standard explainability queries.
//!
//! Three strata:
//! - **Syntactic** predicates (`full`, `cons`, `suf`, `leh`, ...) are
//!   tree-independent, carry a direct evaluator, and count as atomic for
//!   classification. Each also has a defining formula over `{⊆, ⪯, =}`
//!   alone, used by the brute-force referee.
//! - **Model** predicates (`node`, `posleaf`, `allpos`, `pos`, ...) consult
//!   the tree. They stay primitive in the AST; their guarded defining
//!   formulas are exposed for cross-checks.
//! - **Macros** (`sr`, `dfs`, `minimumcr`, the orders `rho1..rho4`, ...)
//!   expand to formulas over the first two strata before anything else
//!   happens.

use crate::atoms;
use crate::formula::ast::{
    and, and_all, exists, forall, iff, implies, not, or_all, pred, Formula, OptFormula, Term,
};
use crate::model::{DecisionTree, Guard, PartialInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredKind {
    Syntactic,
    Model,
    Macro,
}

pub struct PredDef {
    pub name: &'static str,
    pub arity: usize,
    pub kind: PredKind,
}

const PREDS: &[PredDef] = &[
    PredDef { name: "full", arity: 1, kind: PredKind::Syntactic },
    PredDef { name: "cons", arity: 2, kind: PredKind::Syntactic },
    PredDef { name: "suf", arity: 2, kind: PredKind::Syntactic },
    PredDef { name: "leh", arity: 3, kind: PredKind::Syntactic },
    PredDef { name: "undef", arity: 1, kind: PredKind::Syntactic },
    PredDef { name: "single", arity: 1, kind: PredKind::Syntactic },
    PredDef { name: "comp", arity: 2, kind: PredKind::Syntactic },
    PredDef { name: "maxcomp", arity: 2, kind: PredKind::Syntactic },
    PredDef { name: "rel", arity: 2, kind: PredKind::Syntactic },
    PredDef { name: "maxrel", arity: 2, kind: PredKind::Syntactic },
    PredDef { name: "opp", arity: 2, kind: PredKind::Syntactic },
    PredDef { name: "glb", arity: 3, kind: PredKind::Syntactic },
    PredDef { name: "joineq", arity: 3, kind: PredKind::Syntactic },
    PredDef { name: "meeteq", arity: 3, kind: PredKind::Syntactic },
    PredDef { name: "pr", arity: 2, kind: PredKind::Syntactic },
    PredDef { name: "node", arity: 1, kind: PredKind::Model },
    PredDef { name: "posleaf", arity: 1, kind: PredKind::Model },
    PredDef { name: "negleaf", arity: 1, kind: PredKind::Model },
    PredDef { name: "leaf", arity: 1, kind: PredKind::Model },
    PredDef { name: "allpos", arity: 1, kind: PredKind::Model },
    PredDef { name: "allneg", arity: 1, kind: PredKind::Model },
    PredDef { name: "pos", arity: 1, kind: PredKind::Model },
    PredDef { name: "neg", arity: 1, kind: PredKind::Model },
    PredDef { name: "subset", arity: 2, kind: PredKind::Macro },
    PredDef { name: "spref", arity: 2, kind: PredKind::Macro },
    PredDef { name: "nf", arity: 3, kind: PredKind::Macro },
    PredDef { name: "sr", arity: 2, kind: PredKind::Macro },
    PredDef { name: "minimalsr", arity: 2, kind: PredKind::Macro },
    PredDef { name: "minimumsr", arity: 2, kind: PredKind::Macro },
    PredDef { name: "dfs", arity: 1, kind: PredKind::Macro },
    PredDef { name: "minimaldfs", arity: 1, kind: PredKind::Macro },
    PredDef { name: "minimumcr", arity: 2, kind: PredKind::Macro },
    PredDef { name: "maximumca", arity: 2, kind: PredKind::Macro },
    PredDef { name: "csr", arity: 3, kind: PredKind::Macro },
    PredDef { name: "nsr", arity: 3, kind: PredKind::Macro },
    PredDef { name: "rho1", arity: 2, kind: PredKind::Macro },
    PredDef { name: "rho2", arity: 4, kind: PredKind::Macro },
    PredDef { name: "rho3", arity: 3, kind: PredKind::Macro },
    PredDef { name: "rho4", arity: 3, kind: PredKind::Macro },
];

pub fn lookup(name: &str) -> Option<&'static PredDef> {
    let lower = name.to_ascii_lowercase();
    PREDS.iter().find(|p| p.name == lower)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LibraryError {
    #[error("unknown predicate {0}")]
    UnknownPred(String),
    #[error("predicate {name} expects {expected} arguments, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("predicate {0} has no defining formula over the atomic vocabulary")]
    NoAtomicDefinition(String),
}

/// `a ⊂ b`.
pub fn strictly_sub(a: Term, b: Term) -> Formula {
    and(Formula::Sub(a.clone(), b.clone()), not(Formula::Sub(b, a)))
}

/// `a ≺ b`: strictly fewer defined features in `a`.
pub fn strictly_prec(a: Term, b: Term) -> Formula {
    and(Formula::CardLe(a.clone(), b.clone()), not(Formula::CardLe(b, a)))
}

fn check_arity(name: &str, args: &[Term], expected: usize) -> Result<(), LibraryError> {
    if args.len() != expected {
        return Err(LibraryError::Arity { name: name.to_string(), expected, got: args.len() });
    }
    Ok(())
}

/// One step of macro expansion. Bound variables introduced by expansions are
/// `__`-prefixed (the parser reserves that prefix), so user variables can
/// never be captured.
fn expand_macro(name: &str, args: &[Term]) -> Result<Formula, LibraryError> {
    let v = |t: &Term| t.clone();
    let f = match name {
        "subset" => strictly_sub(v(&args[0]), v(&args[1])),
        "spref" => strictly_prec(v(&args[0]), v(&args[1])),
        "nf" => {
            // nf(x, v1, v2): with v1, v2 the two single-feature constants
            // probing one feature, x is undefined there.
            let (x, c1, c2) = (v(&args[0]), v(&args[1]), v(&args[2]));
            and(not(Formula::Sub(c1, x.clone())), not(Formula::Sub(c2, x)))
        }
        "sr" => {
            let (x, y) = (v(&args[0]), v(&args[1]));
            and_all(vec![
                pred("full", vec![x.clone()]),
                Formula::Sub(y.clone(), x.clone()),
                implies(pred("pos", vec![x.clone()]), pred("allpos", vec![y.clone()])),
                implies(not(pred("pos", vec![x])), pred("allneg", vec![y])),
            ])
        }
        "minimalsr" => {
            let (x, y) = (v(&args[0]), v(&args[1]));
            let z = Term::var("__msr_z");
            and(
                pred("sr", vec![x.clone(), y.clone()]),
                forall(
                    "__msr_z",
                    implies(strictly_sub(z.clone(), y), not(pred("sr", vec![x, z]))),
                ),
            )
        }
        "minimumsr" => {
            let (x, y) = (v(&args[0]), v(&args[1]));
            let z = Term::var("__mmsr_z");
            and(
                pred("sr", vec![x.clone(), y.clone()]),
                forall(
                    "__mmsr_z",
                    implies(strictly_prec(z.clone(), y), not(pred("sr", vec![x, z]))),
                ),
            )
        }
        "dfs" => {
            let x = v(&args[0]);
            let y = Term::var("__dfs_y");
            let z = Term::var("__dfs_z");
            let w = Term::var("__dfs_w");
            let witness = exists(
                "__dfs_w",
                and_all(vec![
                    pred("suf", vec![x, w.clone()]),
                    pred("cons", vec![w.clone(), y.clone()]),
                    pred("cons", vec![w, z.clone()]),
                ]),
            );
            Formula::GuardedForall(
                Guard::Node,
                "__dfs_y".into(),
                Box::new(implies(
                    pred("allpos", vec![y]),
                    Formula::GuardedForall(
                        Guard::Node,
                        "__dfs_z".into(),
                        Box::new(implies(pred("allneg", vec![z]), not(witness))),
                    ),
                )),
            )
        }
        "minimaldfs" => {
            let x = v(&args[0]);
            let y = Term::var("__mdfs_y");
            and(
                pred("dfs", vec![x.clone()]),
                forall(
                    "__mdfs_y",
                    implies(strictly_sub(y.clone(), x), not(pred("dfs", vec![y]))),
                ),
            )
        }
        "minimumcr" => {
            let (x, y) = (v(&args[0]), v(&args[1]));
            let z = Term::var("__mcr_z");
            and_all(vec![
                pred("full", vec![x.clone()]),
                pred("full", vec![y.clone()]),
                not(iff(pred("pos", vec![x.clone()]), pred("pos", vec![y.clone()]))),
                forall(
                    "__mcr_z",
                    implies(
                        and(
                            pred("full", vec![z.clone()]),
                            not(iff(pred("pos", vec![x.clone()]), pred("pos", vec![z.clone()]))),
                        ),
                        pred("leh", vec![x, y, z]),
                    ),
                ),
            ])
        }
        "maximumca" => {
            // Truth-valued form: x satisfies "same class as u" and no y does
            // so at strictly larger Hamming distance from u.
            let (u, x) = (v(&args[0]), v(&args[1]));
            let same = |a: Term| {
                and_all(vec![
                    pred("full", vec![u.clone()]),
                    pred("full", vec![a.clone()]),
                    iff(pred("pos", vec![u.clone()]), pred("pos", vec![a])),
                ])
            };
            let y = Term::var("__mca_y");
            and(
                same(x.clone()),
                forall(
                    "__mca_y",
                    implies(same(y.clone()), not(pred("rho4", vec![u, y, x]))),
                ),
            )
        }
        "csr" => {
            let (u1, u2, x) = (v(&args[0]), v(&args[1]), v(&args[2]));
            and(pred("sr", vec![u1, x.clone()]), pred("sr", vec![u2, x]))
        }
        "nsr" => {
            let (u, x1, x) = (v(&args[0]), v(&args[1]), v(&args[2]));
            and_all(vec![
                pred("sr", vec![u.clone(), x.clone()]),
                pred("sr", vec![u, x1.clone()]),
                not(Formula::Sub(x1, x)),
            ])
        }
        "rho1" => strictly_sub(v(&args[0]), v(&args[1])),
        "rho2" => {
            // Subsumption order that disregards the feature singled out by
            // the constants bound to v1, v2.
            let (c1, c2, x, y) = (v(&args[0]), v(&args[1]), v(&args[2]), v(&args[3]));
            let a = Term::var("__r2_a");
            let b = Term::var("__r2_b");
            let nf = |t: Term| pred("nf", vec![t, c1.clone(), c2.clone()]);
            exists(
                "__r2_a",
                exists(
                    "__r2_b",
                    and_all(vec![
                        implies(nf(x.clone()), Formula::Eq(x.clone(), a.clone())),
                        implies(
                            not(nf(x.clone())),
                            and(pred("pr", vec![a.clone(), x.clone()]), nf(a.clone())),
                        ),
                        implies(
                            not(nf(y.clone())),
                            and(pred("pr", vec![b.clone(), y.clone()]), nf(b.clone())),
                        ),
                        implies(nf(y.clone()), Formula::Eq(y, b.clone())),
                        strictly_sub(a, b),
                    ]),
                ),
            )
        }
        "rho3" => {
            let (u, y, z) = (v(&args[0]), v(&args[1]), v(&args[2]));
            and(
                pred("leh", vec![u.clone(), y.clone(), z.clone()]),
                not(pred("leh", vec![u, z, y])),
            )
        }
        "rho4" => pred("rho3", vec![v(&args[0]), v(&args[2]), v(&args[1])]),
        _ => unreachable!("expand_macro called on non-macro"),
    };
    Ok(f)
}

/// Recursively expands every macro predicate, checking arity along the way.
pub fn expand_macros(f: &Formula) -> Result<Formula, LibraryError> {
    let out = match f {
        Formula::Pred(name, args) => {
            let def = lookup(name).ok_or_else(|| LibraryError::UnknownPred(name.clone()))?;
            check_arity(def.name, args, def.arity)?;
            match def.kind {
                PredKind::Macro => {
                    let expanded = expand_macro(def.name, args)?;
                    expand_macros(&expanded)?
                }
                _ => Formula::Pred(def.name.to_string(), args.clone()),
            }
        }
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Sub(a, b) => Formula::Sub(a.clone(), b.clone()),
        Formula::CardLe(a, b) => Formula::CardLe(a.clone(), b.clone()),
        Formula::Eq(a, b) => Formula::Eq(a.clone(), b.clone()),
        Formula::Not(g) => not(expand_macros(g)?),
        Formula::And(a, b) => and(expand_macros(a)?, expand_macros(b)?),
        Formula::Or(a, b) => Formula::Or(Box::new(expand_macros(a)?), Box::new(expand_macros(b)?)),
        Formula::Implies(a, b) => implies(expand_macros(a)?, expand_macros(b)?),
        Formula::Iff(a, b) => iff(expand_macros(a)?, expand_macros(b)?),
        Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(expand_macros(g)?)),
        Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(expand_macros(g)?)),
        Formula::GuardedExists(gd, v, g) => Formula::GuardedExists(*gd, v.clone(), Box::new(expand_macros(g)?)),
        Formula::GuardedForall(gd, v, g) => Formula::GuardedForall(*gd, v.clone(), Box::new(expand_macros(g)?)),
    };
    Ok(out)
}

/// Defining formula of a syntactic predicate over `{⊆, ⪯, =}` alone.
pub fn atomic_definition(name: &str, args: &[Term]) -> Result<Formula, LibraryError> {
    let def = lookup(name).ok_or_else(|| LibraryError::UnknownPred(name.to_string()))?;
    check_arity(def.name, args, def.arity)?;
    let v = |i: usize| args[i].clone();
    let f = match def.name {
        "full" => {
            let q = Term::var("__d_q");
            forall(
                "__d_q",
                implies(Formula::Sub(v(0), q.clone()), Formula::Sub(q, v(0))),
            )
        }
        "cons" => {
            let q = Term::var("__d_q");
            exists("__d_q", and(Formula::Sub(v(0), q.clone()), Formula::Sub(v(1), q)))
        }
        "undef" => {
            let q = Term::var("__d_q");
            not(exists("__d_q", strictly_sub(q, v(0))))
        }
        "single" => {
            let q = Term::var("__d_q");
            and(
                exists("__d_q", strictly_sub(q.clone(), v(0))),
                forall(
                    "__d_q",
                    implies(strictly_sub(q.clone(), v(0)), atomic_definition("undef", &[q])?),
                ),
            )
        }
        "opp" => {
            let q = Term::var("__d_q");
            and_all(vec![
                atomic_definition("single", &[v(0)])?,
                atomic_definition("single", &[v(1)])?,
                not(exists("__d_q", and(Formula::Sub(v(0), q.clone()), Formula::Sub(v(1), q)))),
            ])
        }
        "suf" => {
            // Same undefined features, stated through opposite single-feature
            // probes: every opposite pair (u, v) relates to x and y in one of
            // the five compatible ways.
            let (x, y) = (v(0), v(1));
            let u = Term::var("__d_u");
            let w = Term::var("__d_w");
            let inn = |a: &Term, b: &Term| Formula::Sub(a.clone(), b.clone());
            let not_in = |a: &Term, b: &Term| not(Formula::Sub(a.clone(), b.clone()));
            let cases = or_all(vec![
                and_all(vec![inn(&u, &x), inn(&u, &y), not_in(&w, &x), not_in(&w, &y)]),
                and_all(vec![inn(&w, &x), inn(&w, &y), not_in(&u, &x), not_in(&u, &y)]),
                and_all(vec![inn(&u, &x), inn(&w, &y), not_in(&u, &y), not_in(&w, &x)]),
                and_all(vec![inn(&u, &y), inn(&w, &x), not_in(&u, &x), not_in(&w, &y)]),
                and_all(vec![not_in(&u, &x), not_in(&u, &y), not_in(&w, &x), not_in(&w, &y)]),
            ]);
            forall(
                "__d_u",
                forall(
                    "__d_w",
                    implies(atomic_definition("opp", &[u.clone(), w.clone()])?, cases),
                ),
            )
        }
        "glb" | "meeteq" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let w = Term::var("__d_w");
            and_all(vec![
                Formula::Sub(z.clone(), x.clone()),
                Formula::Sub(z.clone(), y.clone()),
                forall(
                    "__d_w",
                    implies(
                        and(Formula::Sub(w.clone(), x), Formula::Sub(w.clone(), y)),
                        Formula::Sub(w, z),
                    ),
                ),
            ])
        }
        "joineq" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let w = Term::var("__d_w");
            and_all(vec![
                Formula::Sub(x.clone(), z.clone()),
                Formula::Sub(y.clone(), z.clone()),
                not(exists(
                    "__d_w",
                    and_all(vec![
                        Formula::Sub(x, w.clone()),
                        Formula::Sub(y, w.clone()),
                        strictly_sub(w, z),
                    ]),
                )),
            ])
        }
        "comp" => {
            let (x, y) = (v(0), v(1));
            let w = Term::var("__d_cw");
            let z = Term::var("__d_cz");
            exists(
                "__d_cw",
                exists(
                    "__d_cz",
                    and_all(vec![
                        atomic_definition("undef", &[z.clone()])?,
                        atomic_definition("joineq", &[x.clone(), y.clone(), w])?,
                        atomic_definition("meeteq", &[x, y, z])?,
                    ]),
                ),
            )
        }
        "maxcomp" => {
            let (x, y) = (v(0), v(1));
            let z = Term::var("__d_mz");
            and(
                atomic_definition("comp", &[x.clone(), y.clone()])?,
                not(exists(
                    "__d_mz",
                    and(strictly_sub(y, z.clone()), atomic_definition("comp", &[x, z])?),
                )),
            )
        }
        "rel" => {
            let (x, y) = (v(0), v(1));
            let z = Term::var("__d_rz");
            not(exists(
                "__d_rz",
                and_all(vec![
                    Formula::Sub(z.clone(), y),
                    atomic_definition("single", &[z.clone()])?,
                    atomic_definition("comp", &[x, z])?,
                ]),
            ))
        }
        "maxrel" => {
            let (x, y) = (v(0), v(1));
            let z = Term::var("__d_xz");
            and(
                atomic_definition("rel", &[x.clone(), y.clone()])?,
                not(exists(
                    "__d_xz",
                    and(strictly_sub(y, z.clone()), atomic_definition("rel", &[x, z])?),
                )),
            )
        }
        "leh" => {
            let (x, y, z) = (v(0), v(1), v(2));
            let w1 = Term::var("__d_w1");
            let w2 = Term::var("__d_w2");
            and_all(vec![
                atomic_definition("full", &[x.clone()])?,
                atomic_definition("full", &[y.clone()])?,
                atomic_definition("full", &[z.clone()])?,
                exists(
                    "__d_w1",
                    exists(
                        "__d_w2",
                        and_all(vec![
                            atomic_definition("glb", &[x.clone(), y, w1.clone()])?,
                            atomic_definition("glb", &[x, z, w2.clone()])?,
                            Formula::CardLe(w2, w1),
                        ]),
                    ),
                ),
            ])
        }
        "pr" => {
            let (x, y) = (v(0), v(1));
            let z = Term::var("__d_pz");
            and(
                strictly_sub(x.clone(), y.clone()),
                not(exists(
                    "__d_pz",
                    and(strictly_sub(x, z.clone()), strictly_sub(z, y)),
                )),
            )
        }
        other => return Err(LibraryError::NoAtomicDefinition(other.to_string())),
    };
    Ok(f)
}

/// Guarded defining formula of a model predicate, for cross-checks against
/// the direct evaluators. `node`, `posleaf` and `negleaf` are the guards
/// themselves and have no definition.
pub fn guarded_definition(name: &str, args: &[Term]) -> Result<Formula, LibraryError> {
    let def = lookup(name).ok_or_else(|| LibraryError::UnknownPred(name.to_string()))?;
    check_arity(def.name, args, def.arity)?;
    let v = |i: usize| args[i].clone();
    let f = match def.name {
        "leaf" => {
            let q = Term::var("__g_q");
            and(
                pred("node", vec![v(0)]),
                Formula::GuardedForall(
                    Guard::Node,
                    "__g_q".into(),
                    Box::new(implies(Formula::Sub(v(0), q.clone()), Formula::Sub(q, v(0)))),
                ),
            )
        }
        "allpos" | "allneg" => {
            let leaf_kind = if def.name == "allpos" { "posleaf" } else { "negleaf" };
            let q = Term::var("__g_q");
            Formula::GuardedForall(
                Guard::Node,
                "__g_q".into(),
                Box::new(implies(
                    and(pred("leaf", vec![q.clone()]), pred("cons", vec![v(0), q.clone()])),
                    pred(leaf_kind, vec![q]),
                )),
            )
        }
        "pos" => and(pred("full", vec![v(0)]), pred("allpos", vec![v(0)])),
        "neg" => and(pred("full", vec![v(0)]), pred("allneg", vec![v(0)])),
        other => return Err(LibraryError::NoAtomicDefinition(other.to_string())),
    };
    Ok(f)
}

/// Expands macros and then syntactic predicates down to `{⊆, ⪯, =}`.
/// Errors on model predicates and guards.
pub fn expand_to_pure(f: &Formula) -> Result<Formula, LibraryError> {
    let f = expand_macros(f)?;
    fn go(f: &Formula) -> Result<Formula, LibraryError> {
        Ok(match f {
            Formula::Pred(name, args) => {
                let def = lookup(name).ok_or_else(|| LibraryError::UnknownPred(name.clone()))?;
                match def.kind {
                    PredKind::Syntactic => go(&atomic_definition(def.name, args)?)?,
                    _ => return Err(LibraryError::NoAtomicDefinition(name.clone())),
                }
            }
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Sub(a, b) => Formula::Sub(a.clone(), b.clone()),
            Formula::CardLe(a, b) => Formula::CardLe(a.clone(), b.clone()),
            Formula::Eq(a, b) => Formula::Eq(a.clone(), b.clone()),
            Formula::Not(g) => not(go(g)?),
            Formula::And(a, b) => and(go(a)?, go(b)?),
            Formula::Or(a, b) => Formula::Or(Box::new(go(a)?), Box::new(go(b)?)),
            Formula::Implies(a, b) => implies(go(a)?, go(b)?),
            Formula::Iff(a, b) => iff(go(a)?, go(b)?),
            Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(go(g)?)),
            Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(go(g)?)),
            Formula::GuardedExists(..) | Formula::GuardedForall(..) => {
                return Err(LibraryError::NoAtomicDefinition("guarded quantifier".into()));
            }
        })
    }
    go(&f)
}

/// Evaluates a ground syntactic predicate with its direct evaluator.
pub fn eval_syntactic(name: &str, args: &[&PartialInstance]) -> Result<bool, atoms::AtomsError> {
    Ok(match name {
        "full" => atoms::full(args[0]),
        "cons" => atoms::cons(args[0], args[1])?,
        "suf" => atoms::suf(args[0], args[1])?,
        // As a formula, leh is false off the full instances.
        "leh" => {
            args.iter().all(|e| e.is_full())
                && atoms::hamming(args[0], args[1])? <= atoms::hamming(args[0], args[2])?
        }
        "undef" => atoms::undef(args[0]),
        "single" => atoms::single(args[0]),
        "comp" => atoms::comp(args[0], args[1])?,
        "maxcomp" => atoms::max_comp(args[0], args[1])?,
        "rel" => atoms::rel(args[0], args[1])?,
        "maxrel" => atoms::max_rel(args[0], args[1])?,
        "opp" => atoms::opp(args[0], args[1])?,
        "glb" | "meeteq" => &atoms::meet(args[0], args[1])? == args[2],
        "joineq" => atoms::join(args[0], args[1])?.as_ref() == Some(args[2]),
        "pr" => {
            atoms::subsumes(args[0], args[1])?
                && args[0]
                    .cells()
                    .iter()
                    .zip(args[1].cells())
                    .filter(|(a, b)| !a.is_defined() && b.is_defined())
                    .count()
                    == 1
        }
        other => panic!("eval_syntactic on {other}"),
    })
}

/// Evaluates a ground model predicate against the tree.
pub fn eval_model_pred(
    name: &str,
    args: &[&PartialInstance],
    tree: &DecisionTree,
    cache: &ModelPredCache,
) -> Result<bool, crate::model::ModelError> {
    let e = args[0];
    if e.dimension() != tree.dimension() {
        return Err(crate::model::ModelError::DimensionMismatch {
            got: e.dimension(),
            expected: tree.dimension(),
        });
    }
    Ok(match name {
        "node" => cache.nodes.contains(e),
        "posleaf" => cache.pos_leaves.contains(e),
        "negleaf" => cache.neg_leaves.contains(e),
        "leaf" => cache.pos_leaves.contains(e) || cache.neg_leaves.contains(e),
        "allpos" => tree.forces_positive(e)?,
        "allneg" => tree.forces_negative(e)?,
        "pos" => e.is_full() && tree.forces_positive(e)?,
        "neg" => e.is_full() && tree.forces_negative(e)?,
        other => panic!("eval_model_pred on {other}"),
    })
}

/// Precomputed guard-instance sets of one tree.
pub struct ModelPredCache {
    pub nodes: std::collections::HashSet<PartialInstance>,
    pub pos_leaves: std::collections::HashSet<PartialInstance>,
    pub neg_leaves: std::collections::HashSet<PartialInstance>,
}

impl ModelPredCache {
    pub fn new(tree: &DecisionTree) -> ModelPredCache {
        ModelPredCache {
            nodes: tree.guard_instances(Guard::Node).into_iter().collect(),
            pos_leaves: tree.guard_instances(Guard::PosLeaf).into_iter().collect(),
            neg_leaves: tree.guard_instances(Guard::NegLeaf).into_iter().collect(),
        }
    }
}

/// The truth-valued query templates, by canonical name and arity. Used by
/// test corpora and the REPL listing.
pub fn boolean_templates() -> Vec<(&'static str, usize)> {
    vec![
        ("full", 1),
        ("cons", 2),
        ("suf", 2),
        ("leh", 3),
        ("allpos", 1),
        ("allneg", 1),
        ("pos", 1),
        ("neg", 1),
        ("leaf", 1),
        ("node", 1),
        ("posleaf", 1),
        ("negleaf", 1),
        ("sr", 2),
        ("minimalsr", 2),
        ("minimumsr", 2),
        ("dfs", 1),
        ("minimaldfs", 1),
        ("minimumcr", 2),
        ("maximumca", 2),
        ("csr", 3),
        ("nsr", 3),
        ("nf", 3),
        ("pr", 2),
        ("rho1", 2),
        ("rho2", 4),
        ("rho3", 3),
        ("rho4", 3),
    ]
}

/// Builds the minimization form of a named query. The target variable is
/// `x`; the order compares `__y` against `__z`.
pub fn opt_template(name: &str) -> Option<OptFormula> {
    let x = Term::var("x");
    let u = Term::var("u");
    let oy = Term::var("__y");
    let oz = Term::var("__z");
    let (objective, order) = match name.to_ascii_lowercase().as_str() {
        "minimalsr" => (pred("sr", vec![u, x]), strictly_sub(oy, oz)),
        "minimumsr" => (pred("sr", vec![u, x]), strictly_prec(oy, oz)),
        "minimaldfs" | "dfs" => (pred("dfs", vec![x]), strictly_sub(oy, oz)),
        "minimumcr" => (
            and_all(vec![
                pred("full", vec![u.clone()]),
                pred("full", vec![x]),
                not(iff(pred("pos", vec![u.clone()]), pred("pos", vec![Term::var("x")]))),
            ]),
            pred("rho3", vec![u, oy, oz]),
        ),
        "maximumca" => (
            and_all(vec![
                pred("full", vec![u.clone()]),
                pred("full", vec![x]),
                iff(pred("pos", vec![u.clone()]), pred("pos", vec![Term::var("x")])),
            ]),
            pred("rho4", vec![u, oy, oz]),
        ),
        "csr" => (
            pred("csr", vec![Term::var("u1"), Term::var("u2"), x]),
            strictly_sub(oy, oz),
        ),
        "nsr" => (
            pred("nsr", vec![u, Term::var("x1"), x]),
            strictly_sub(oy, oz),
        ),
        _ => return None,
    };
    Some(OptFormula { objective, target: "x".into(), order, order_vars: ("__y".into(), "__z".into()) })
}
