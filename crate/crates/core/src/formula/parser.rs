//! Surface syntax.
//!
//! Keyword-based ASCII grammar. Connectives are `not`, `and`, `or`,
//! `implies`, `iff` (precedence in that order, `implies` right-associative).
//! Quantifiers read `exists x, ...` / `forall x, ...`, optionally guarded:
//! `exists node x, ...`, `forall posleaf y, ...`. The quantifier body
//! extends as far right as possible. Constants are cell tuples like
//! `(1,0,?,1)` with `?` for an undefined feature. Atoms are `a <= b`
//! (subsumption), `a < b` (proper subsumption), `a = b`, `pref(a, b)`,
//! or any named predicate `sr(x, y)`. A minimization query is
//! `min[objective, order]` where the objective's distinguished variable is
//! named `x` and the order compares `y` to `z`; remaining free variables
//! are parameters.

use std::fmt;

use crate::formula::ast::{Formula, OptFormula, Term};
use crate::formula::classify::{self, FormulaClass};
use crate::formula::library;
use crate::model::{Guard, PartialInstance};

/// A parsed query: a truth-valued formula or a minimization.
#[derive(Debug, Clone, PartialEq)]
pub enum Query {
    Formula(Formula),
    Opt(OptFormula),
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Library(#[from] library::LibraryError),
    #[error("not well-formed: {0}")]
    Classify(#[from] classify::ClassifyError),
    #[error("minimization objective does not mention the distinguished variable x")]
    OptMissingTarget,
    #[error("minimization order must mention exactly the compared variables y and z")]
    OptBadOrderVars,
    #[error("minimization order must be an atomic formula over subsumption and pref, got {0:?}")]
    OptOrderNotAtomic(FormulaClass),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Const(PartialInstance),
    KwExists,
    KwForall,
    KwNot,
    KwAnd,
    KwOr,
    KwImplies,
    KwIff,
    KwMin,
    KwTrue,
    KwFalse,
    Guard(Guard),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Le,
    Lt,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Const(c) => write!(f, "{c}"),
            Tok::KwExists => write!(f, "exists"),
            Tok::KwForall => write!(f, "forall"),
            Tok::KwNot => write!(f, "not"),
            Tok::KwAnd => write!(f, "and"),
            Tok::KwOr => write!(f, "or"),
            Tok::KwImplies => write!(f, "implies"),
            Tok::KwIff => write!(f, "iff"),
            Tok::KwMin => write!(f, "min"),
            Tok::KwTrue => write!(f, "true"),
            Tok::KwFalse => write!(f, "false"),
            Tok::Guard(g) => write!(f, "{g}"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::Comma => write!(f, ","),
            Tok::Le => write!(f, "<="),
            Tok::Lt => write!(f, "<"),
            Tok::Eq => write!(f, "="),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> u8 {
        let b = self.src[self.pos];
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        b
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let (line, col) = (self.line, self.col);
            let b = self.src[self.pos];
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'(' => {
                    // A parenthesis opens either a constant or a group;
                    // constants contain only cells, commas and whitespace.
                    if let Some(end) = self.constant_end() {
                        let text: String = self.src[self.pos..=end].iter().map(|&b| b as char).collect();
                        let c = PartialInstance::parse(&text).map_err(|e| self.error(e.to_string()))?;
                        while self.pos <= end {
                            self.bump();
                        }
                        out.push((Tok::Const(c), line, col));
                    } else {
                        self.bump();
                        out.push((Tok::LParen, line, col));
                    }
                }
                b')' => {
                    self.bump();
                    out.push((Tok::RParen, line, col));
                }
                b'[' => {
                    self.bump();
                    out.push((Tok::LBracket, line, col));
                }
                b']' => {
                    self.bump();
                    out.push((Tok::RBracket, line, col));
                }
                b',' => {
                    self.bump();
                    out.push((Tok::Comma, line, col));
                }
                b'=' => {
                    self.bump();
                    out.push((Tok::Eq, line, col));
                }
                b'<' => {
                    self.bump();
                    if self.pos < self.src.len() && self.src[self.pos] == b'=' {
                        self.bump();
                        out.push((Tok::Le, line, col));
                    } else {
                        out.push((Tok::Lt, line, col));
                    }
                }
                b if b.is_ascii_alphabetic() || b == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len() {
                        let c = self.src[self.pos];
                        if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    let word: String = self.src[start..self.pos].iter().map(|&b| b as char).collect();
                    let tok = match word.to_ascii_lowercase().as_str() {
                        "exists" => Tok::KwExists,
                        "forall" => Tok::KwForall,
                        "not" => Tok::KwNot,
                        "and" => Tok::KwAnd,
                        "or" => Tok::KwOr,
                        "implies" => Tok::KwImplies,
                        "iff" => Tok::KwIff,
                        "min" => Tok::KwMin,
                        "true" => Tok::KwTrue,
                        "false" => Tok::KwFalse,
                        "node" => Tok::Guard(Guard::Node),
                        "posleaf" => Tok::Guard(Guard::PosLeaf),
                        "negleaf" => Tok::Guard(Guard::NegLeaf),
                        _ => {
                            if word.starts_with("__") {
                                return Err(ParseError::Syntax {
                                    line,
                                    col,
                                    msg: format!("identifiers starting with __ are reserved: {word}"),
                                });
                            }
                            Tok::Ident(word)
                        }
                    };
                    out.push((tok, line, col));
                }
                other => {
                    return Err(self.error(format!("unexpected character {:?}", other as char)));
                }
            }
        }
        Ok(out)
    }

    /// If the text starting at the current `(` is a constant literal,
    /// returns the index of its closing parenthesis.
    fn constant_end(&self) -> Option<usize> {
        let mut i = self.pos + 1;
        let mut cells = 0;
        while i < self.src.len() {
            match self.src[i] {
                b'0' | b'1' | b'?' => cells += 1,
                b',' | b' ' | b'\t' => {}
                b')' => return if cells > 0 { Some(i) } else { None },
                _ => return None,
            }
            i += 1;
        }
        None
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t.map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1))
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax { line, col, msg: msg.into() }
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(ref t) if t == want => Ok(()),
            Some(t) => Err(self.error(format!("expected {want}, found {t}"))),
            None => Err(self.error(format!("expected {want}, found end of input"))),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.iff_level()
    }

    fn iff_level(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implies_level()?;
        while matches!(self.peek(), Some(Tok::KwIff)) {
            self.next();
            let rhs = self.implies_level()?;
            lhs = crate::formula::ast::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies_level(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or_level()?;
        if matches!(self.peek(), Some(Tok::KwImplies)) {
            self.next();
            let rhs = self.implies_level()?;
            return Ok(crate::formula::ast::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_level(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and_level()?;
        while matches!(self.peek(), Some(Tok::KwOr)) {
            self.next();
            let rhs = self.and_level()?;
            lhs = crate::formula::ast::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_level(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek(), Some(Tok::KwAnd)) {
            self.next();
            let rhs = self.unary()?;
            lhs = crate::formula::ast::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::KwNot) => {
                self.next();
                Ok(crate::formula::ast::not(self.unary()?))
            }
            Some(Tok::KwExists) | Some(Tok::KwForall) => self.quantifier(),
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, ParseError> {
        let is_exists = matches!(self.next(), Some(Tok::KwExists));
        let guard = if let Some(Tok::Guard(g)) = self.peek() {
            let g = *g;
            self.next();
            Some(g)
        } else {
            None
        };
        let var = match self.next() {
            Some(Tok::Ident(v)) => v,
            other => {
                return Err(self.error(format!(
                    "expected variable name after quantifier, found {}",
                    other.map(|t| t.to_string()).unwrap_or_else(|| "end of input".into())
                )));
            }
        };
        self.expect(&Tok::Comma)?;
        let body = self.formula()?;
        Ok(match (is_exists, guard) {
            (true, None) => Formula::Exists(var, Box::new(body)),
            (false, None) => Formula::Forall(var, Box::new(body)),
            (true, Some(g)) => Formula::GuardedExists(g, var, Box::new(body)),
            (false, Some(g)) => Formula::GuardedForall(g, var, Box::new(body)),
        })
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::KwTrue) => {
                self.next();
                Ok(Formula::True)
            }
            Some(Tok::KwFalse) => {
                self.next();
                Ok(Formula::False)
            }
            Some(Tok::LParen) => {
                self.next();
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Const(c)) => {
                self.next();
                self.infix_rest(Term::Const(c))
            }
            Some(Tok::Ident(name)) => {
                self.next();
                if matches!(self.peek(), Some(Tok::LParen)) {
                    self.next();
                    let mut args = vec![self.term()?];
                    while matches!(self.peek(), Some(Tok::Comma)) {
                        self.next();
                        args.push(self.term()?);
                    }
                    self.expect(&Tok::RParen)?;
                    Ok(Self::named_atom(name, args))
                } else {
                    self.infix_rest(Term::Var(name))
                }
            }
            Some(t) => Err(self.error(format!("expected a formula, found {t}"))),
            None => Err(self.error("expected a formula, found end of input")),
        }
    }

    fn named_atom(name: String, args: Vec<Term>) -> Formula {
        match (name.to_ascii_lowercase().as_str(), args.len()) {
            ("subseteq", 2) => {
                let mut it = args.into_iter();
                Formula::Sub(it.next().unwrap(), it.next().unwrap())
            }
            ("pref", 2) => {
                let mut it = args.into_iter();
                Formula::CardLe(it.next().unwrap(), it.next().unwrap())
            }
            _ => Formula::Pred(name.to_ascii_lowercase(), args),
        }
    }

    fn infix_rest(&mut self, lhs: Term) -> Result<Formula, ParseError> {
        match self.next() {
            Some(Tok::Le) => Ok(Formula::Sub(lhs, self.term()?)),
            Some(Tok::Lt) => {
                let rhs = self.term()?;
                Ok(library::strictly_sub(lhs, rhs))
            }
            Some(Tok::Eq) => Ok(Formula::Eq(lhs, self.term()?)),
            other => Err(self.error(format!(
                "expected <=, < or = after term, found {}",
                other.map(|t| t.to_string()).unwrap_or_else(|| "end of input".into())
            ))),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Some(Tok::Ident(v)) => Ok(Term::Var(v)),
            Some(Tok::Const(c)) => Ok(Term::Const(c)),
            other => Err(self.error(format!(
                "expected a variable or constant, found {}",
                other.map(|t| t.to_string()).unwrap_or_else(|| "end of input".into())
            ))),
        }
    }

    fn query(&mut self) -> Result<Query, ParseError> {
        if matches!(self.peek(), Some(Tok::KwMin)) {
            self.next();
            self.expect(&Tok::LBracket)?;
            let objective = self.formula()?;
            self.expect(&Tok::Comma)?;
            let order = self.formula()?;
            self.expect(&Tok::RBracket)?;
            return Ok(Query::Opt(OptFormula {
                objective,
                target: "x".into(),
                order,
                order_vars: ("y".into(), "z".into()),
            }));
        }
        Ok(Query::Formula(self.formula()?))
    }
}

/// Parses and checks a query: syntax, predicate arities, well-formedness
/// class, and for minimizations the variable conventions.
pub fn parse(text: &str) -> Result<Query, ParseError> {
    let query = parse_syntax(text)?;
    match &query {
        Query::Formula(f) => {
            classify::classify(f)?;
        }
        Query::Opt(opt) => {
            if !opt.objective.free_vars().contains(&opt.target) {
                return Err(ParseError::OptMissingTarget);
            }
            let order_frees = opt.order.free_vars();
            if !order_frees.contains(&opt.order_vars.0) || !order_frees.contains(&opt.order_vars.1) {
                return Err(ParseError::OptBadOrderVars);
            }
            let objective_class = classify::classify(&opt.objective)?;
            if objective_class == FormulaClass::Quantified {
                return Err(classify::ClassifyError::new(
                    "minimization objective must be quantifier-free outside guards",
                    &opt.objective,
                )
                .into());
            }
            let order_class = classify::classify(&opt.order)?;
            if order_class != FormulaClass::Atomic {
                return Err(ParseError::OptOrderNotAtomic(order_class));
            }
        }
    }
    Ok(query)
}

/// Syntax-only parse; still validates predicate names and arities.
pub fn parse_syntax(text: &str) -> Result<Query, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    if toks.is_empty() {
        return Err(ParseError::Syntax { line: 1, col: 1, msg: "empty query".into() });
    }
    let mut parser = Parser { toks, pos: 0 };
    let query = parser.query()?;
    if parser.pos < parser.toks.len() {
        let t = parser.peek().unwrap().clone();
        return Err(parser.error(format!("trailing input starting at {t}")));
    }
    match &query {
        Query::Formula(f) => {
            library::expand_macros(f)?;
        }
        Query::Opt(opt) => {
            library::expand_macros(&opt.objective)?;
            library::expand_macros(&opt.order)?;
        }
    }
    Ok(query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ast::pred;

    #[test]
    fn parses_prefix_query() {
        let q = parse("exists y, SR(x, y)").unwrap();
        match q {
            Query::Formula(Formula::Exists(v, body)) => {
                assert_eq!(v, "y");
                assert_eq!(*body, pred("sr", vec![Term::var("x"), Term::var("y")]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_min_query() {
        let q = parse("min[SR(u, x), subset(y, z)]").unwrap();
        match q {
            Query::Opt(opt) => {
                assert_eq!(opt.objective, pred("sr", vec![Term::var("u"), Term::var("x")]));
                assert_eq!(opt.target, "x");
                assert_eq!(opt.order_vars, ("y".into(), "z".into()));
                assert_eq!(opt.objective_params(), vec!["u".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_alternation_outside_atoms() {
        let err = parse("forall y, exists z, SR(y, z)").unwrap_err();
        assert!(matches!(err, ParseError::Classify(_)), "{err}");
        // Alternation fully inside the atomic layer is fine.
        parse("forall y, exists z, y <= z").unwrap();
    }

    #[test]
    fn parses_guards_and_constants() {
        let q = parse("exists node v, cons((1,0,?), v)").unwrap();
        match q {
            Query::Formula(Formula::GuardedExists(Guard::Node, v, _)) => assert_eq!(v, "v"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("(1,?) <= (1,0)").is_ok());
    }

    #[test]
    fn reports_positions() {
        let err = parse("exists y,\n  SR(x y)").unwrap_err();
        match err {
            ParseError::Syntax { line, col, .. } => {
                assert_eq!(line, 2);
                assert!(col > 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_arity_and_unknown_preds() {
        assert!(matches!(
            parse("sr(x)"),
            Err(ParseError::Library(library::LibraryError::Arity { .. }))
        ));
        assert!(matches!(
            parse("frobnicate(x)"),
            Err(ParseError::Library(library::LibraryError::UnknownPred(_)))
        ));
    }
}
