//! Canonical textual form. Binary connectives are fully parenthesized, so
//! printed output always parses back to the same AST.

use crate::formula::ast::{Formula, OptFormula, Term};
use crate::formula::parser::Query;

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

pub fn print(f: &Formula) -> String {
    match f {
        Formula::True => "true".into(),
        Formula::False => "false".into(),
        Formula::Sub(a, b) => format!("{a} <= {b}"),
        Formula::CardLe(a, b) => format!("pref({a}, {b})"),
        Formula::Eq(a, b) => format!("{a} = {b}"),
        Formula::Pred(name, args) => {
            let args: Vec<String> = args.iter().map(print_term).collect();
            format!("{name}({})", args.join(", "))
        }
        Formula::Not(g) => format!("not {}", wrap(g)),
        Formula::And(a, b) => format!("({} and {})", print(a), print(b)),
        Formula::Or(a, b) => format!("({} or {})", print(a), print(b)),
        Formula::Implies(a, b) => format!("({} implies {})", print(a), print(b)),
        Formula::Iff(a, b) => format!("({} iff {})", print(a), print(b)),
        Formula::Exists(v, g) => format!("exists {v}, {}", print(g)),
        Formula::Forall(v, g) => format!("forall {v}, {}", print(g)),
        Formula::GuardedExists(gd, v, g) => format!("exists {gd} {v}, {}", print(g)),
        Formula::GuardedForall(gd, v, g) => format!("forall {gd} {v}, {}", print(g)),
    }
}

// Atoms and already-grouped formulas need no extra parentheses after `not`.
fn wrap(f: &Formula) -> String {
    match f {
        Formula::Sub(..) | Formula::Eq(..) => format!("({})", print(f)),
        Formula::Exists(..) | Formula::Forall(..) | Formula::GuardedExists(..) | Formula::GuardedForall(..) => {
            format!("({})", print(f))
        }
        _ => print(f),
    }
}

pub fn print_opt(opt: &OptFormula) -> String {
    format!("min[{}, {}]", print(&opt.objective), print(&opt.order))
}

pub fn print_query(q: &Query) -> String {
    match q {
        Query::Formula(f) => print(f),
        Query::Opt(o) => print_opt(o),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parser::parse;

    // parse ∘ print is the identity on printed forms.
    fn round_trip(text: &str) {
        let q1 = parse(text).unwrap();
        let p1 = print_query(&q1);
        let q2 = parse(&p1).unwrap();
        assert_eq!(q1, q2, "through {p1}");
        assert_eq!(print_query(&q2), p1);
    }

    #[test]
    fn print_parse_fixpoint() {
        round_trip("exists y, SR(x, y)");
        round_trip("min[SR(u, x), subset(y, z)]");
        round_trip("forall node q, (allpos(q) implies not leaf(q))");
        round_trip("not (x <= y) and pref(x, y)");
        round_trip("(1,0,?) <= (1,0,1) iff true");
        round_trip("exists q, q = (0,?)");
    }
}
