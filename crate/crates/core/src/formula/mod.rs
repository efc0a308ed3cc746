//! Query language: AST, parser, printer, simplifier, predicate library,
//! well-formedness classes and the strict-order check.

pub mod ast;
pub mod classify;
pub mod library;
pub mod order;
pub mod parser;
pub mod printer;
pub mod simplify;

pub use ast::{Formula, OptFormula, Term};
pub use classify::{classify, FormulaClass};
pub use parser::{parse, ParseError, Query};
pub use printer::{print, print_opt, print_query};
pub use simplify::simplify;
