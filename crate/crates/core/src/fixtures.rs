//! Hand-built trees used across tests, docs and the benchmark harness.

use crate::model::{DecisionTree, Node, NodeId};

/// Id of the internal node `u` (left child of the root) in [`sample_tree_4d`].
pub const SAMPLE_NODE_U: NodeId = 1;
/// Id of the true leaf `v` at depth 4 in [`sample_tree_4d`].
pub const SAMPLE_LEAF_V: NodeId = 15;

/// A dimension-4 tree with 17 nodes exercising every structural case:
/// unbalanced depth, an unused feature on some paths, and both labels.
///
/// Feature tests by node (features 1-indexed here):
///
/// ```text
///            [2]
///       0/        \1
///      [1]        [4]
///    0/   \1    0/   \1
///   [3]   [4]  [3]    T
///  0/ \1 0/ \1 0/ \1
///  T [4] F  T [1]  F
///   0/ \1    0/ \1
///   F   T    T   F
/// ```
pub fn sample_tree_4d() -> DecisionTree {
    let nodes = vec![
        /* 0 */ Node::Internal { feature: 1, child0: 1, child1: 2 },
        /* 1 */ Node::Internal { feature: 0, child0: 3, child1: 4 },
        /* 2 */ Node::Internal { feature: 3, child0: 5, child1: 6 },
        /* 3 */ Node::Internal { feature: 2, child0: 7, child1: 8 },
        /* 4 */ Node::Internal { feature: 3, child0: 9, child1: 10 },
        /* 5 */ Node::Internal { feature: 2, child0: 11, child1: 12 },
        /* 6 */ Node::Leaf { label: true },
        /* 7 */ Node::Leaf { label: true },
        /* 8 */ Node::Internal { feature: 3, child0: 13, child1: 14 },
        /* 9 */ Node::Leaf { label: false },
        /* 10 */ Node::Leaf { label: true },
        /* 11 */ Node::Internal { feature: 0, child0: 15, child1: 16 },
        /* 12 */ Node::Leaf { label: false },
        /* 13 */ Node::Leaf { label: false },
        /* 14 */ Node::Leaf { label: true },
        /* 15 */ Node::Leaf { label: true },
        /* 16 */ Node::Leaf { label: false },
    ];
    DecisionTree::new(4, 0, nodes).expect("sample tree is valid")
}

/// The two-block model of dimension `n + p`: an instance is positive iff
/// its first `n` features are all 1 or its last `p` features are all 1.
/// The all-ones instance has exactly two minimal sufficient reasons, one
/// per block.
pub fn two_block_tree(n: usize, p: usize) -> DecisionTree {
    assert!(n >= 1 && p >= 1);
    let dim = n + p;
    let mut nodes: Vec<Node> = Vec::new();

    // Chain over the second block: any 0 falls to a false leaf.
    fn second_chain(nodes: &mut Vec<Node>, features: &[usize]) -> NodeId {
        let (first, rest) = features.split_first().expect("non-empty block");
        let ok = if rest.is_empty() {
            nodes.push(Node::Leaf { label: true });
            nodes.len() - 1
        } else {
            second_chain(nodes, rest)
        };
        nodes.push(Node::Leaf { label: false });
        let fail = nodes.len() - 1;
        nodes.push(Node::Internal { feature: *first, child0: fail, child1: ok });
        nodes.len() - 1
    }

    // Chain over the first block: any 0 re-checks the second block.
    fn first_chain(nodes: &mut Vec<Node>, features: &[usize], second: &[usize]) -> NodeId {
        let (first, rest) = features.split_first().expect("non-empty block");
        let ok = if rest.is_empty() {
            nodes.push(Node::Leaf { label: true });
            nodes.len() - 1
        } else {
            first_chain(nodes, rest, second)
        };
        let fallback = second_chain(nodes, second);
        nodes.push(Node::Internal { feature: *first, child0: fallback, child1: ok });
        nodes.len() - 1
    }

    let block1: Vec<usize> = (0..n).collect();
    let block2: Vec<usize> = (n..dim).collect();
    let root = first_chain(&mut nodes, &block1, &block2);
    DecisionTree::new(dim, root, nodes).expect("two-block tree is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Instance, PartialInstance};

    #[test]
    fn two_block_semantics() {
        let t = two_block_tree(2, 2);
        for e in PartialInstance::all_bot(4).completions() {
            let bits: Vec<bool> = e.cells().iter().map(|c| *c == crate::Cell::One).collect();
            let expected = (bits[0] && bits[1]) || (bits[2] && bits[3]);
            let got = t.classify(&Instance::new(e).unwrap()).unwrap();
            assert_eq!(got, expected, "at {bits:?}");
        }
    }
}
