//! Decision trees and partial instances.
//!
//! A partial instance is a vector over `{0, 1, ⊥}` of fixed dimension;
//! `⊥` (printed `?`) marks an undefined feature. A decision tree classifies
//! full instances by walking from the root: each internal node tests one
//! feature and no feature repeats along a root-to-leaf path. Features are
//! 1-indexed in files and messages, 0-indexed in memory.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// One ternary cell of a partial instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Zero,
    One,
    Bot,
}

impl Cell {
    pub fn from_bit(b: bool) -> Cell {
        if b {
            Cell::One
        } else {
            Cell::Zero
        }
    }

    pub fn is_defined(self) -> bool {
        self != Cell::Bot
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Zero => write!(f, "0"),
            Cell::One => write!(f, "1"),
            Cell::Bot => write!(f, "?"),
        }
    }
}

/// A vector in `{0,1,⊥}^n`. The dimension is fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialInstance {
    cells: Vec<Cell>,
}

impl PartialInstance {
    pub fn new(cells: Vec<Cell>) -> PartialInstance {
        PartialInstance { cells }
    }

    /// All-undefined instance of dimension `n`.
    pub fn all_bot(n: usize) -> PartialInstance {
        PartialInstance { cells: vec![Cell::Bot; n] }
    }

    /// Builds from bits, producing a full instance.
    pub fn from_bits(bits: &[bool]) -> PartialInstance {
        PartialInstance { cells: bits.iter().map(|&b| Cell::from_bit(b)).collect() }
    }

    /// Parses a compact text form like `(1,0,?,1)` or `10?1`.
    pub fn parse(text: &str) -> Result<PartialInstance, ModelError> {
        let inner = text.trim();
        let inner = inner.strip_prefix('(').unwrap_or(inner);
        let inner = inner.strip_suffix(')').unwrap_or(inner);
        let mut cells = Vec::new();
        for piece in inner.chars().filter(|c| !c.is_whitespace() && *c != ',') {
            cells.push(match piece {
                '0' => Cell::Zero,
                '1' => Cell::One,
                '?' | '*' => Cell::Bot,
                other => {
                    return Err(ModelError::BadInstanceLiteral(other));
                }
            });
        }
        if cells.is_empty() {
            return Err(ModelError::EmptyInstanceLiteral);
        }
        Ok(PartialInstance { cells })
    }

    pub fn dimension(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Cell at 0-indexed feature `i`.
    pub fn get(&self, i: usize) -> Cell {
        self.cells[i]
    }

    pub fn set(&mut self, i: usize, c: Cell) {
        self.cells[i] = c;
    }

    /// Returns a copy with feature `i` set to `c`.
    pub fn with(&self, i: usize, c: Cell) -> PartialInstance {
        let mut out = self.clone();
        out.cells[i] = c;
        out
    }

    /// 0-indexed features whose value is `⊥`.
    pub fn bot_set(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i] == Cell::Bot).collect()
    }

    pub fn bot_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == Cell::Bot).count()
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(|c| c.is_defined())
    }

    /// All completions (every `⊥` replaced by `0` or `1`), in binary
    /// counting order over the undefined positions.
    pub fn completions(&self) -> Vec<PartialInstance> {
        let bots = self.bot_set();
        let mut out = Vec::with_capacity(1 << bots.len());
        for mask in 0u64..(1u64 << bots.len()) {
            let mut c = self.clone();
            for (k, &i) in bots.iter().enumerate() {
                c.cells[i] = Cell::from_bit(mask >> k & 1 == 1);
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for PartialInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A partial instance with an empty bot set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance(PartialInstance);

impl Instance {
    pub fn new(e: PartialInstance) -> Result<Instance, ModelError> {
        if e.is_full() {
            Ok(Instance(e))
        } else {
            Err(ModelError::NotFull(e))
        }
    }

    pub fn as_partial(&self) -> &PartialInstance {
        &self.0
    }

    pub fn into_partial(self) -> PartialInstance {
        self.0
    }
}

pub type NodeId = usize;

/// A node of the arena: either an internal test or a labeled leaf.
/// `feature` is 0-indexed; `child0`/`child1` follow the edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Internal { feature: usize, child0: NodeId, child1: NodeId },
    Leaf { label: bool },
}

/// Guards restrict quantification to tree-represented instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Guard {
    /// Instances `e_u` of every node.
    Node,
    /// Instances of leaves labeled true.
    PosLeaf,
    /// Instances of leaves labeled false.
    NegLeaf,
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::Node => write!(f, "node"),
            Guard::PosLeaf => write!(f, "posleaf"),
            Guard::NegLeaf => write!(f, "negleaf"),
        }
    }
}

/// Rooted labeled binary tree classifying full instances of a fixed
/// dimension. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTree {
    dimension: usize,
    root: NodeId,
    nodes: Vec<Node>,
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("dimension mismatch: instance has {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("instance has undefined features: {0}")]
    NotFull(PartialInstance),
    #[error("bad character {0:?} in instance literal")]
    BadInstanceLiteral(char),
    #[error("empty instance literal")]
    EmptyInstanceLiteral,
    #[error("leaf budget {leaves} exceeds 2^{dimension}")]
    LeafBudget { leaves: usize, dimension: usize },
    #[error("malformed model file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl DecisionTree {
    /// Validates the arena: tree shape, feature ranges, child links and
    /// feature-distinct root-to-leaf paths.
    pub fn new(dimension: usize, root: NodeId, nodes: Vec<Node>) -> Result<DecisionTree, ModelError> {
        let t = DecisionTree { dimension, root, nodes };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.nodes.is_empty() {
            return Err(ModelError::InvalidTree("no nodes".into()));
        }
        if self.root >= self.nodes.len() {
            return Err(ModelError::UnknownNode(self.root));
        }
        let mut parent_count = vec![0usize; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            if let Node::Internal { feature, child0, child1 } = node {
                if *feature >= self.dimension {
                    return Err(ModelError::InvalidTree(format!(
                        "node {id} tests feature {} outside 1..={}",
                        feature + 1,
                        self.dimension
                    )));
                }
                for &c in [child0, child1] {
                    if c >= self.nodes.len() {
                        return Err(ModelError::InvalidTree(format!("node {id} has dangling child {c}")));
                    }
                    parent_count[c] += 1;
                }
            }
        }
        for (id, &count) in parent_count.iter().enumerate() {
            if id == self.root && count != 0 {
                return Err(ModelError::InvalidTree("root has a parent".into()));
            }
            if id != self.root && count != 1 {
                return Err(ModelError::InvalidTree(format!(
                    "node {id} has {count} parents, expected 1"
                )));
            }
        }
        // Reachability plus path distinctness in one walk.
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![(self.root, Vec::<usize>::new())];
        while let Some((id, path)) = stack.pop() {
            seen[id] = true;
            if let Node::Internal { feature, child0, child1 } = &self.nodes[id] {
                if path.contains(feature) {
                    return Err(ModelError::InvalidTree(format!(
                        "feature {} repeats on a root-to-leaf path",
                        feature + 1
                    )));
                }
                let mut next = path.clone();
                next.push(*feature);
                stack.push((*child0, next.clone()));
                stack.push((*child1, next));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(ModelError::InvalidTree("disconnected node".into()));
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> Result<&Node, ModelError> {
        self.nodes.get(id).ok_or(ModelError::UnknownNode(id))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }

    /// Node ids in pre-order (node before children, 0-edge before 1-edge).
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            out.push(id);
            if let Node::Internal { child0, child1, .. } = &self.nodes[id] {
                stack.push(*child1);
                stack.push(*child0);
            }
        }
        out
    }

    /// Classifies a full instance by following its unique root-to-leaf path.
    pub fn classify(&self, e: &Instance) -> Result<bool, ModelError> {
        let e = e.as_partial();
        if e.dimension() != self.dimension {
            return Err(ModelError::DimensionMismatch { got: e.dimension(), expected: self.dimension });
        }
        let mut id = self.root;
        loop {
            match &self.nodes[id] {
                Node::Leaf { label } => return Ok(*label),
                Node::Internal { feature, child0, child1 } => {
                    id = match e.get(*feature) {
                        Cell::Zero => *child0,
                        Cell::One => *child1,
                        Cell::Bot => unreachable!("full instance"),
                    };
                }
            }
        }
    }

    /// The instance represented by node `u`: defined exactly on the features
    /// tested strictly above `u`, with the edge values of `u`'s root path.
    pub fn node_instance(&self, u: NodeId) -> Result<PartialInstance, ModelError> {
        if u >= self.nodes.len() {
            return Err(ModelError::UnknownNode(u));
        }
        let path = self.path_to(u);
        let mut e = PartialInstance::all_bot(self.dimension);
        for (feature, bit) in path {
            e.set(feature, Cell::from_bit(bit));
        }
        Ok(e)
    }

    /// (feature, edge-bit) pairs along the root path to `u`, excluding `u`.
    fn path_to(&self, u: NodeId) -> Vec<(usize, bool)> {
        // Parent links are not stored; recover the path by search from root.
        fn walk(t: &DecisionTree, id: NodeId, u: NodeId, acc: &mut Vec<(usize, bool)>) -> bool {
            if id == u {
                return true;
            }
            if let Node::Internal { feature, child0, child1 } = &t.nodes[id] {
                acc.push((*feature, false));
                if walk(t, *child0, u, acc) {
                    return true;
                }
                acc.pop();
                acc.push((*feature, true));
                if walk(t, *child1, u, acc) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        let mut acc = Vec::new();
        walk(self, self.root, u, &mut acc);
        acc
    }

    /// Every `e_u` matching the guard, deduplicated, in pre-order.
    pub fn guard_instances(&self, guard: Guard) -> Vec<PartialInstance> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for id in self.preorder() {
            let matches = match (&self.nodes[id], guard) {
                (_, Guard::Node) => true,
                (Node::Leaf { label: true }, Guard::PosLeaf) => true,
                (Node::Leaf { label: false }, Guard::NegLeaf) => true,
                _ => false,
            };
            if matches {
                let e = self.node_instance(id).expect("preorder id");
                if seen.insert(e.clone()) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// True iff every completion of `e` classifies positive. Walks only the
    /// part of the tree consistent with `e`.
    pub fn forces_positive(&self, e: &PartialInstance) -> Result<bool, ModelError> {
        self.forces(e, true)
    }

    /// True iff every completion of `e` classifies negative.
    pub fn forces_negative(&self, e: &PartialInstance) -> Result<bool, ModelError> {
        self.forces(e, false)
    }

    fn forces(&self, e: &PartialInstance, wanted: bool) -> Result<bool, ModelError> {
        if e.dimension() != self.dimension {
            return Err(ModelError::DimensionMismatch { got: e.dimension(), expected: self.dimension });
        }
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            match &self.nodes[id] {
                Node::Leaf { label } => {
                    if *label != wanted {
                        return Ok(false);
                    }
                }
                Node::Internal { feature, child0, child1 } => match e.get(*feature) {
                    Cell::Zero => stack.push(*child0),
                    Cell::One => stack.push(*child1),
                    Cell::Bot => {
                        stack.push(*child0);
                        stack.push(*child1);
                    }
                },
            }
        }
        Ok(true)
    }

    /// Grows a random full binary tree with exactly `leaves` leaves by
    /// repeatedly splitting a uniformly chosen expandable leaf on a uniformly
    /// chosen feature unused on its path. Leaf labels are fair coin flips.
    /// Deterministic per seed.
    pub fn random(dimension: usize, leaves: usize, seed: u64) -> Result<DecisionTree, ModelError> {
        assert!(dimension >= 1, "dimension must be at least 1");
        assert!(leaves >= 1, "leaf budget must be at least 1");
        if dimension < 64 && leaves > (1usize << dimension) {
            return Err(ModelError::LeafBudget { leaves, dimension });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut nodes = vec![Node::Leaf { label: rng.gen::<bool>() }];
        // Leaves still below depth `dimension`, with the features used on
        // their paths.
        let mut expandable: Vec<(NodeId, Vec<usize>)> = vec![(0, Vec::new())];
        let mut leaf_count = 1;
        while leaf_count < leaves {
            let pick = rng.gen_range(0..expandable.len());
            let (id, used) = expandable.swap_remove(pick);
            let free: Vec<usize> = (0..dimension).filter(|f| !used.contains(f)).collect();
            let feature = *free.choose(&mut rng).expect("expandable leaf has a free feature");
            let child0 = nodes.len();
            nodes.push(Node::Leaf { label: rng.gen::<bool>() });
            let child1 = nodes.len();
            nodes.push(Node::Leaf { label: rng.gen::<bool>() });
            nodes[id] = Node::Internal { feature, child0, child1 };
            let mut next_used = used;
            next_used.push(feature);
            if next_used.len() < dimension {
                expandable.push((child0, next_used.clone()));
                expandable.push((child1, next_used));
            }
            leaf_count += 1;
        }
        DecisionTree::new(dimension, 0, nodes)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<DecisionTree, ModelError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<DecisionTree, ModelError> {
        let raw: RawTree = serde_json::from_str(text).map_err(|e| ModelError::Malformed(e.to_string()))?;
        let count = raw.nodes.len();
        let mut nodes: Vec<Option<Node>> = vec![None; count];
        for rn in raw.nodes {
            if rn.id >= count {
                return Err(ModelError::Malformed(format!("node id {} not dense in 0..{}", rn.id, count)));
            }
            if nodes[rn.id].is_some() {
                return Err(ModelError::Malformed(format!("duplicate node id {}", rn.id)));
            }
            let node = match rn.kind.as_str() {
                "internal" => {
                    let feature = rn
                        .feature
                        .ok_or_else(|| ModelError::Malformed(format!("internal node {} missing feature", rn.id)))?;
                    if feature == 0 || feature > raw.dimension {
                        return Err(ModelError::Malformed(format!(
                            "node {}: feature {} outside 1..={}",
                            rn.id, feature, raw.dimension
                        )));
                    }
                    Node::Internal {
                        feature: feature - 1,
                        child0: rn
                            .child0
                            .ok_or_else(|| ModelError::Malformed(format!("internal node {} missing child0", rn.id)))?,
                        child1: rn
                            .child1
                            .ok_or_else(|| ModelError::Malformed(format!("internal node {} missing child1", rn.id)))?,
                    }
                }
                "leaf" => Node::Leaf {
                    label: rn
                        .label
                        .ok_or_else(|| ModelError::Malformed(format!("leaf node {} missing label", rn.id)))?,
                },
                other => {
                    return Err(ModelError::Malformed(format!("node {}: unknown kind {other:?}", rn.id)));
                }
            };
            nodes[rn.id] = Some(node);
        }
        let nodes: Vec<Node> = nodes.into_iter().map(|n| n.expect("dense ids checked")).collect();
        DecisionTree::new(raw.dimension, raw.root, nodes)
    }

    pub fn to_json(&self) -> String {
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| match n {
                Node::Internal { feature, child0, child1 } => RawNode {
                    id,
                    kind: "internal".into(),
                    feature: Some(feature + 1),
                    child0: Some(*child0),
                    child1: Some(*child1),
                    label: None,
                },
                Node::Leaf { label } => RawNode {
                    id,
                    kind: "leaf".into(),
                    feature: None,
                    child0: None,
                    child1: None,
                    label: Some(*label),
                },
            })
            .collect();
        let raw = RawTree { dimension: self.dimension, root: self.root, nodes };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    dimension: usize,
    root: NodeId,
    nodes: Vec<RawNode>,
}

#[derive(Serialize, Deserialize)]
struct RawNode {
    id: usize,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    feature: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    child0: Option<NodeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    child1: Option<NodeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn inst(text: &str) -> Instance {
        Instance::new(PartialInstance::parse(text).unwrap()).unwrap()
    }

    fn pi(text: &str) -> PartialInstance {
        PartialInstance::parse(text).unwrap()
    }

    #[test]
    fn classify_sample_tree() {
        let t = fixtures::sample_tree_4d();
        assert_eq!(t.node_count(), 17);
        assert_eq!(t.dimension(), 4);
        assert!(t.classify(&inst("(0,0,1,1)")).unwrap());
        assert!(!t.classify(&inst("(0,1,1,0)")).unwrap());
    }

    #[test]
    fn classify_constant_tree() {
        let t = DecisionTree::new(3, 0, vec![Node::Leaf { label: true }]).unwrap();
        assert!(t.classify(&inst("(0,1,0)")).unwrap());
        assert!(t.classify(&inst("(1,1,1)")).unwrap());
    }

    #[test]
    fn classify_rejects_dimension_mismatch() {
        let t = fixtures::sample_tree_4d();
        assert!(matches!(
            t.classify(&inst("(0,1)")),
            Err(ModelError::DimensionMismatch { got: 2, expected: 4 })
        ));
    }

    #[test]
    fn node_instances_of_sample_tree() {
        let t = fixtures::sample_tree_4d();
        assert_eq!(t.node_instance(fixtures::SAMPLE_NODE_U).unwrap(), pi("(?,0,?,?)"));
        assert_eq!(t.node_instance(fixtures::SAMPLE_LEAF_V).unwrap(), pi("(0,1,0,0)"));
        assert_eq!(t.node_instance(t.root()).unwrap(), PartialInstance::all_bot(4));
        assert!(matches!(t.node_instance(99), Err(ModelError::UnknownNode(99))));
    }

    #[test]
    fn guard_instances_of_sample_tree() {
        // Frozen from walking the sample tree by hand: five true leaves.
        let t = fixtures::sample_tree_4d();
        let pos = t.guard_instances(Guard::PosLeaf);
        let expected: Vec<PartialInstance> =
            ["(0,0,0,?)", "(0,0,1,1)", "(1,0,?,1)", "(0,1,0,0)", "(?,1,?,1)"].iter().map(|s| pi(s)).collect();
        assert_eq!(pos.len(), 5);
        for e in &expected {
            assert!(pos.contains(e), "missing {e}");
        }
        let neg = t.guard_instances(Guard::NegLeaf);
        assert_eq!(neg.len(), 4);
        assert_eq!(t.guard_instances(Guard::Node).len(), 17);
    }

    #[test]
    fn guard_instances_single_leaf() {
        let t = DecisionTree::new(2, 0, vec![Node::Leaf { label: true }]).unwrap();
        assert_eq!(t.guard_instances(Guard::Node), vec![PartialInstance::all_bot(2)]);
        assert_eq!(t.guard_instances(Guard::PosLeaf), vec![PartialInstance::all_bot(2)]);
        assert!(t.guard_instances(Guard::NegLeaf).is_empty());

        let f = DecisionTree::new(2, 0, vec![Node::Leaf { label: false }]).unwrap();
        assert!(f.guard_instances(Guard::PosLeaf).is_empty());
    }

    #[test]
    fn node_instance_extends_parent_by_one() {
        let t = DecisionTree::random(6, 12, 7).unwrap();
        for id in t.preorder() {
            if let Node::Internal { feature, child0, child1 } = t.node(id).unwrap() {
                let parent = t.node_instance(id).unwrap();
                for (&c, bit) in [(child0, false), (child1, true)] {
                    let child = t.node_instance(*c).unwrap();
                    assert_eq!(child.get(*feature), Cell::from_bit(bit));
                    let mut back = child.clone();
                    back.set(*feature, Cell::Bot);
                    assert_eq!(back, parent);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = fixtures::sample_tree_4d();
        let text = t.to_json();
        let back = DecisionTree::from_json(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.node_count(), 17);
    }

    #[test]
    fn json_rejects_bad_trees() {
        assert!(matches!(DecisionTree::from_json(""), Err(ModelError::Malformed(_))));
        // Repeated feature on a path.
        let bad = r#"{"dimension":2,"root":0,"nodes":[
            {"id":0,"kind":"internal","feature":1,"child0":1,"child1":2},
            {"id":1,"kind":"internal","feature":1,"child0":3,"child1":4},
            {"id":2,"kind":"leaf","label":true},
            {"id":3,"kind":"leaf","label":false},
            {"id":4,"kind":"leaf","label":true}]}"#;
        match DecisionTree::from_json(bad) {
            Err(ModelError::InvalidTree(msg)) => assert!(msg.contains("repeats")),
            other => panic!("expected invalid tree, got {other:?}"),
        }
        // Dangling child id.
        let dangling = r#"{"dimension":1,"root":0,"nodes":[
            {"id":0,"kind":"internal","feature":1,"child0":1,"child1":9},
            {"id":1,"kind":"leaf","label":true}]}"#;
        assert!(DecisionTree::from_json(dangling).is_err());
    }

    #[test]
    fn random_tree_shape() {
        let t = DecisionTree::random(4, 1, 0).unwrap();
        assert_eq!(t.node_count(), 1);

        let t = DecisionTree::random(100, 1001, 3).unwrap();
        assert_eq!(t.leaf_count(), 1001);
        assert_eq!(t.node_count(), 2 * 1001 - 1);

        let a = DecisionTree::random(9, 40, 11).unwrap();
        let b = DecisionTree::random(9, 40, 11).unwrap();
        assert_eq!(a, b);

        assert!(matches!(DecisionTree::random(2, 5, 0), Err(ModelError::LeafBudget { .. })));
    }

    #[test]
    fn every_full_instance_reaches_one_leaf() {
        let t = DecisionTree::random(5, 10, 21).unwrap();
        for e in PartialInstance::all_bot(5).completions() {
            let e = Instance::new(e).unwrap();
            t.classify(&e).unwrap();
        }
    }

    #[test]
    fn forces_positive_matches_completions() {
        let t = fixtures::sample_tree_4d();
        let e = pi("(0,0,?,1)");
        let by_enum = e
            .completions()
            .into_iter()
            .all(|c| t.classify(&Instance::new(c).unwrap()).unwrap());
        assert_eq!(t.forces_positive(&e).unwrap(), by_enum);
    }
}
