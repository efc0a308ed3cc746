//! Query engine for explainability questions over binary decision trees.
//!
//! The crate evaluates logical queries about what a decision tree has
//! learned: sufficient reasons for a classification, determinant feature
//! sets, the minimum change that flips an output, and so on. Queries are
//! written in a small first-order language over partial instances (vectors
//! in `{0,1,?}^n`), lowered to CNF, and discharged with a SAT solver. A
//! brute-force referee over the full structure of partial instances backs
//! every answer at small dimension.
//!
//! Module map:
//! - [`model`] — decision trees, partial instances, JSON persistence.
//! - [`atoms`] — direct evaluators for the syntactic predicate layer.
//! - [`formula`] — AST, parser, simplifier, query library, order checks.
//! - [`encoder`] — CNF lowering (circuits, Tseitin, guard expansion, DIMACS).
//! - [`sat`] — embedded CDCL solver and external DIMACS solver driver.
//! - [`engine`] — SAT-call orchestration for evaluation and optimization.
//! - [`oracle`] — exhaustive ground-truth semantics at small dimension.

pub mod atoms;
pub mod encoder;
pub mod engine;
pub mod fixtures;
pub mod formula;
pub mod model;
pub mod oracle;
pub mod sat;

pub use model::{Cell, DecisionTree, Instance, PartialInstance};
