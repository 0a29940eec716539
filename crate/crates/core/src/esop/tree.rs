//! Ternary-tree cube storage and the rotate/merge minimizer.
//!
//! A tree of bound `n` stores a set of `n`-symbol cubes as root-to-leaf
//! paths, one level per variable. Minimization alternates two steps:
//!
//! * [`merge_leaves`]: a node whose only children are a `0` leaf and a `1`
//!   leaf is replaced by a single `-` leaf (`a·b ⊕ a·b' = a`).
//! * [`rotate`]: the root level is cut off and its symbol appended below the
//!   leaves of each detached subtree, which are then merged back together.
//!   The effect is a cyclic left shift of every cube, which brings a new
//!   variable to the leaf level where the merge rule can see it.
//!
//! After `n` rotations every variable has visited the leaf level once and
//! the original order is restored.

use super::cover::EsopCover;
use super::cube::{Cube, Trit};
use crate::error::{Error, Result};

/// A node of a ternary tree; one optional child per symbol.
///
/// Whether a childless node is a leaf depends on its depth, so the node
/// alone does not know: see [`TernaryTree`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TernaryNode {
    children: [Option<Box<TernaryNode>>; 3],
}

impl TernaryNode {
    pub fn new() -> TernaryNode {
        TernaryNode::default()
    }

    #[inline]
    pub fn child(&self, t: Trit) -> Option<&TernaryNode> {
        self.children[t.index()].as_deref()
    }

    #[inline]
    pub fn child_mut(&mut self, t: Trit) -> Option<&mut TernaryNode> {
        self.children[t.index()].as_deref_mut()
    }

    #[inline]
    pub fn lo(&self) -> Option<&TernaryNode> {
        self.child(Trit::Zero)
    }

    #[inline]
    pub fn dc(&self) -> Option<&TernaryNode> {
        self.child(Trit::DontCare)
    }

    #[inline]
    pub fn hi(&self) -> Option<&TernaryNode> {
        self.child(Trit::One)
    }

    #[inline]
    pub fn has_children(&self) -> bool {
        self.children.iter().any(Option::is_some)
    }

    /// Removes and returns the child on `t`.
    pub fn take_child(&mut self, t: Trit) -> Option<Box<TernaryNode>> {
        self.children[t.index()].take()
    }

    pub fn set_child(&mut self, t: Trit, node: Option<Box<TernaryNode>>) {
        self.children[t.index()] = node;
    }

    /// Follows `path` from this node, creating missing nodes.
    fn insert_path(&mut self, path: impl Iterator<Item = Trit>) -> bool {
        let mut node = self;
        let mut created = false;
        for t in path {
            let slot = &mut node.children[t.index()];
            if slot.is_none() {
                created = true;
            }
            node = slot.get_or_insert_with(Default::default);
        }
        created
    }

    /// Number of nodes in the subtree, this one included.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().flatten().map(|c| c.node_count()).sum::<usize>()
    }

    /// Number of leaves in a subtree whose leaves sit `height` levels below.
    pub fn leaf_count(&self, height: usize) -> usize {
        if height == 0 {
            return 1;
        }
        self.children.iter().flatten().map(|c| c.leaf_count(height - 1)).sum()
    }
}

/// A set of cubes stored as a ternary trie.
///
/// `var_order[level]` names the original variable stored at that level; it
/// starts as the identity and shifts left by one on every [`rotate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryTree {
    root: Option<Box<TernaryNode>>,
    num_vars: usize,
    var_order: Vec<usize>,
    collisions: usize,
}

impl TernaryTree {
    pub fn empty(num_vars: usize) -> TernaryTree {
        TernaryTree {
            root: None,
            num_vars,
            var_order: (0..num_vars).collect(),
            collisions: 0,
        }
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    #[inline]
    pub fn var_order(&self) -> &[usize] {
        &self.var_order
    }

    pub fn root(&self) -> Option<&TernaryNode> {
        self.root.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    /// Number of rotations (mod `num_vars`) the tree is away from the
    /// original variable order.
    pub fn rotation_offset(&self) -> usize {
        self.var_order.first().copied().unwrap_or(0)
    }

    /// Count of leaf pairs that landed on the same path during a merge.
    ///
    /// Rotation never produces these; a nonzero value means the stored set
    /// no longer has the XOR semantics of the input.
    pub fn collisions(&self) -> usize {
        self.collisions
    }

    /// Number of stored cubes.
    pub fn cube_count(&self) -> usize {
        self.root.as_ref().map_or(0, |r| r.leaf_count(self.num_vars))
    }

    pub fn node_count(&self) -> usize {
        self.root.as_ref().map_or(0, |r| r.node_count())
    }

    /// All root-to-leaf paths in the tree's current level order, visiting
    /// children `0`, `-`, `1`.
    pub fn paths(&self) -> Vec<Cube> {
        let mut out = Vec::new();
        if let Some(root) = &self.root {
            let mut prefix = Cube::universe(0);
            collect_paths(root, self.num_vars, &mut prefix, &mut out);
        }
        out
    }
}

fn collect_paths(node: &TernaryNode, height: usize, prefix: &mut Cube, out: &mut Vec<Cube>) {
    if height == 0 {
        out.push(*prefix);
        return;
    }
    for t in Trit::ALL {
        if let Some(child) = node.child(t) {
            let saved = *prefix;
            prefix.push(t);
            collect_paths(child, height - 1, prefix, out);
            *prefix = saved;
        }
    }
}

/// Stores every cube of `cover` as a path.
pub fn build_tree(cover: &EsopCover) -> Result<TernaryTree> {
    let n = cover.num_vars();
    let mut tree = TernaryTree::empty(n);
    for cube in cover.cubes() {
        if cube.len() != n {
            return Err(Error::MalformedCover(format!(
                "cube {cube} has {} symbols, cover has {n} variables",
                cube.len()
            )));
        }
        let root = tree.root.get_or_insert_with(Default::default);
        // A zero-variable cover holds at most the empty cube.
        if !root.insert_path(cube.trits()) && n > 0 {
            return Err(Error::MalformedCover(format!("duplicate cube {cube}")));
        }
    }
    Ok(tree)
}

/// Applies the complement rule to every eligible node; returns the number of
/// merges. Each merge removes exactly one cube.
pub fn merge_leaves(tree: &mut TernaryTree) -> usize {
    match tree.root.as_deref_mut() {
        Some(root) => merge_leaves_at(root, tree.num_vars),
        None => 0,
    }
}

fn merge_leaves_at(node: &mut TernaryNode, height: usize) -> usize {
    if height == 0 {
        return 0;
    }
    if height == 1 && node.dc().is_none() && node.lo().is_some() && node.hi().is_some() {
        node.set_child(Trit::Zero, None);
        node.set_child(Trit::One, None);
        node.set_child(Trit::DontCare, Some(Box::default()));
        return 1;
    }
    let mut merges = 0;
    for t in Trit::ALL {
        if let Some(child) = node.child_mut(t) {
            merges += merge_leaves_at(child, height - 1);
        }
    }
    merges
}

/// Hangs a `symbol` child under every leaf of a subtree whose leaves are
/// `height` levels below `node`. The subtree's height grows by one.
pub fn append_all(node: Option<&mut TernaryNode>, symbol: Trit, height: usize) {
    let Some(node) = node else { return };
    if height == 0 {
        node.set_child(symbol, Some(Box::default()));
        return;
    }
    for t in Trit::ALL {
        append_all(node.child_mut(t), symbol, height - 1);
    }
}

/// Union of two subtrees of equal `height`, reusing `t1`'s nodes.
///
/// Two leaves on the same path merge into one and bump `collisions`.
pub fn merge_trees(
    t1: Option<Box<TernaryNode>>,
    t2: Option<Box<TernaryNode>>,
    height: usize,
    collisions: &mut usize,
) -> Option<Box<TernaryNode>> {
    match (t1, t2) {
        (None, t2) => t2,
        (t1, None) => t1,
        (Some(t1), Some(_)) if height == 0 => {
            *collisions += 1;
            Some(t1)
        }
        (Some(mut t1), Some(mut t2)) => {
            for t in Trit::ALL {
                let merged = merge_trees(t1.take_child(t), t2.take_child(t), height - 1, collisions);
                t1.set_child(t, merged);
            }
            Some(t1)
        }
    }
}

/// Cuts the root level off and reattaches it below the leaves, shifting
/// every cube left by one symbol.
pub fn rotate(mut tree: TernaryTree) -> TernaryTree {
    let n = tree.num_vars;
    assert!(n >= 1, "cannot rotate a zero-variable tree");
    let Some(mut root) = tree.root.take() else {
        tree.var_order.rotate_left(1);
        return tree;
    };
    let mut lo = root.take_child(Trit::Zero);
    let mut dc = root.take_child(Trit::DontCare);
    let mut hi = root.take_child(Trit::One);
    append_all(lo.as_deref_mut(), Trit::Zero, n - 1);
    append_all(dc.as_deref_mut(), Trit::DontCare, n - 1);
    append_all(hi.as_deref_mut(), Trit::One, n - 1);

    // Each detached subtree had height n - 1; appending restored it to n.
    let mut collisions = 0;
    let rest = merge_trees(dc, hi, n, &mut collisions);
    tree.root = merge_trees(lo, rest, n, &mut collisions);
    tree.collisions += collisions;
    tree.var_order.rotate_left(1);
    tree
}

/// Reads the stored cubes back as a cover.
///
/// Fails if the tree is mid-way through a rotation cycle, since the levels
/// would not line up with the original variables.
pub fn traverse(tree: &TernaryTree) -> Result<EsopCover> {
    let offset = tree.rotation_offset();
    if offset != 0 {
        return Err(Error::RotatedTree(offset));
    }
    Ok(EsopCover::from_parts_unchecked(tree.num_vars, tree.paths()))
}

/// Counters gathered during one [`minimize_with_stats`] run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinimizeStats {
    pub merges: usize,
    pub rotations: usize,
    pub collisions: usize,
}

/// Runs the full minimizer: `num_vars` rounds of merge-then-rotate, one
/// final merge, then traversal.
pub fn minimize(cover: &EsopCover) -> EsopCover {
    minimize_with_stats(cover).0
}

pub fn minimize_with_stats(cover: &EsopCover) -> (EsopCover, MinimizeStats) {
    let mut tree = build_tree(cover).expect("EsopCover invariants guarantee a well-formed tree");
    let mut stats = MinimizeStats::default();
    for _ in 0..cover.num_vars() {
        stats.merges += merge_leaves(&mut tree);
        tree = rotate(tree);
        stats.rotations += 1;
    }
    stats.merges += merge_leaves(&mut tree);
    stats.collisions = tree.collisions();
    debug_assert_eq!(stats.collisions, 0);
    let out = traverse(&tree).expect("a full rotation cycle restores the variable order");
    (out, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(n: usize, cubes: &[&str]) -> EsopCover {
        EsopCover::parse_cubes(n, cubes).unwrap()
    }

    fn strings(cubes: &[Cube]) -> Vec<String> {
        cubes.iter().map(|c| c.to_string()).collect()
    }

    fn single(height: usize, cube: &str) -> Option<Box<TernaryNode>> {
        let mut root = TernaryNode::new();
        let c: Cube = cube.parse().unwrap();
        assert_eq!(c.len(), height);
        root.insert_path(c.trits());
        Some(Box::new(root))
    }

    fn paths_of(node: &TernaryNode, height: usize) -> Vec<String> {
        let mut out = Vec::new();
        collect_paths(node, height, &mut Cube::universe(0), &mut out);
        strings(&out)
    }

    #[test]
    fn build_three_minterm_shape() {
        let tree = build_tree(&cover(2, &["00", "01", "10"])).unwrap();
        let root = tree.root().unwrap();
        let lo = root.lo().unwrap();
        assert!(lo.lo().is_some() && lo.hi().is_some() && lo.dc().is_none());
        let hi = root.hi().unwrap();
        assert!(hi.lo().is_some() && hi.hi().is_none() && hi.dc().is_none());
        assert!(root.dc().is_none());
        assert_eq!(tree.var_order(), &[0, 1]);
    }

    #[test]
    fn build_mixed_cube_shape() {
        let tree = build_tree(&cover(2, &["0-", "10", "11"])).unwrap();
        let root = tree.root().unwrap();
        assert!(root.lo().unwrap().dc().is_some());
        assert!(root.hi().unwrap().lo().is_some());
        assert!(root.hi().unwrap().hi().is_some());
        assert_eq!(tree.node_count(), 6);
        assert_eq!(tree.cube_count(), 3);
    }

    #[test]
    fn build_empty() {
        let tree = build_tree(&EsopCover::empty(3)).unwrap();
        assert!(tree.is_empty());
        assert!(tree.paths().is_empty());
        assert!(traverse(&tree).unwrap().is_empty());
    }

    #[test]
    fn merge_leaves_hi_pair() {
        let mut tree = build_tree(&cover(2, &["0-", "10", "11"])).unwrap();
        assert_eq!(merge_leaves(&mut tree), 1);
        assert_eq!(strings(&tree.paths()), ["0-", "1-"]);
    }

    #[test]
    fn merge_leaves_three_minterms() {
        let mut tree = build_tree(&cover(2, &["00", "01", "10"])).unwrap();
        assert_eq!(merge_leaves(&mut tree), 1);
        assert_eq!(strings(&tree.paths()), ["0-", "10"]);
    }

    #[test]
    fn merge_leaves_single_minterm() {
        let mut tree = build_tree(&cover(2, &["01"])).unwrap();
        let before = tree.clone();
        assert_eq!(merge_leaves(&mut tree), 0);
        assert_eq!(tree, before);
    }

    #[test]
    fn merge_leaves_skips_when_dc_present() {
        // 00 ⊕ 0- ⊕ 01 cancels to zero, but the rule only fires without a dc leaf.
        let mut tree = build_tree(&cover(2, &["00", "0-", "01"])).unwrap();
        assert_eq!(merge_leaves(&mut tree), 0);
        assert_eq!(tree.cube_count(), 3);
    }

    #[test]
    fn merge_leaves_is_single_pass() {
        // After 000+001 -> 00-, the pair 00-/01- is not merged in the same pass
        // because merges only happen at the leaf level.
        let mut tree = build_tree(&cover(3, &["000", "001", "010", "011"])).unwrap();
        assert_eq!(merge_leaves(&mut tree), 2);
        assert_eq!(strings(&tree.paths()), ["00-", "01-"]);
    }

    #[test]
    fn append_all_dc_leaf() {
        let mut node = single(1, "-").unwrap();
        append_all(Some(&mut node), Trit::Zero, 1);
        assert_eq!(paths_of(&node, 2), ["-0"]);

        let mut node = single(1, "-").unwrap();
        append_all(Some(&mut node), Trit::One, 1);
        assert_eq!(paths_of(&node, 2), ["-1"]);

        append_all(None, Trit::One, 3);
    }

    #[test]
    fn append_all_every_leaf_once() {
        let tree = build_tree(&cover(2, &["00", "0-", "11"])).unwrap();
        let mut root = tree.root.clone().unwrap();
        append_all(Some(&mut root), Trit::DontCare, 2);
        assert_eq!(paths_of(&root, 3), ["00-", "0--", "11-"]);
    }

    #[test]
    fn merge_trees_base_cases() {
        let mut c = 0;
        let t = single(2, "-1");
        assert_eq!(merge_trees(t.clone(), None, 2, &mut c), t);
        assert_eq!(merge_trees(None, t.clone(), 2, &mut c), t);
        assert_eq!(merge_trees(None, None, 2, &mut c), None);
        assert_eq!(c, 0);
    }

    #[test]
    fn merge_trees_union() {
        let mut c = 0;
        let merged = merge_trees(single(2, "-0"), single(2, "-1"), 2, &mut c).unwrap();
        assert_eq!(paths_of(&merged, 2), ["-0", "-1"]);
        assert_eq!(c, 0);
    }

    #[test]
    fn merge_trees_counts_collisions() {
        let mut c = 0;
        let merged = merge_trees(single(2, "10"), single(2, "10"), 2, &mut c).unwrap();
        assert_eq!(paths_of(&merged, 2), ["10"]);
        assert_eq!(c, 1);
    }

    #[test]
    fn rotate_split_and_merge() {
        let tree = build_tree(&cover(2, &["0-", "1-"])).unwrap();
        let r = rotate(tree);
        assert_eq!(strings(&r.paths()), ["-0", "-1"]);
        assert_eq!(r.var_order(), &[1, 0]);
        assert!(traverse(&r).is_err());
    }

    #[test]
    fn rotate_fixes_universe() {
        let r = rotate(build_tree(&cover(2, &["--"])).unwrap());
        assert_eq!(strings(&r.paths()), ["--"]);
    }

    #[test]
    fn rotate_shifts_each_cube() {
        let r = rotate(build_tree(&cover(2, &["0-", "10"])).unwrap());
        let mut got = strings(&r.paths());
        got.sort();
        assert_eq!(got, ["-0", "01"]);
    }

    #[test]
    fn rotate_single_var() {
        let r = rotate(build_tree(&cover(1, &["0", "1"])).unwrap());
        assert_eq!(strings(&r.paths()), ["0", "1"]);
        assert_eq!(r.var_order(), &[0]);
    }

    #[test]
    fn traverse_order() {
        let tree = build_tree(&cover(2, &["11", "10", "0-"])).unwrap();
        assert_eq!(traverse(&tree).unwrap().cube_strings(), ["0-", "10", "11"]);
    }

    #[test]
    fn minimize_examples() {
        assert_eq!(minimize(&cover(2, &["00", "01", "10"])).cube_strings(), ["0-", "10"]);
        assert_eq!(minimize(&cover(2, &["0-", "10", "11"])).cube_strings(), ["--"]);
        assert!(minimize(&EsopCover::empty(2)).is_empty());
        assert_eq!(minimize(&cover(2, &["01"])).cube_strings(), ["01"]);
    }

    #[test]
    fn minimize_zero_vars() {
        let c = EsopCover::new(0, vec![Cube::universe(0)]).unwrap();
        assert_eq!(minimize(&c), c);
    }

    #[test]
    fn minimize_full_cube() {
        let all: Vec<Cube> = (0..16).map(|i| Cube::minterm(4, i)).collect();
        let c = EsopCover::new(4, all).unwrap();
        let (m, stats) = minimize_with_stats(&c);
        assert_eq!(m.cube_strings(), ["----"]);
        assert_eq!(stats.merges, 15);
        assert_eq!(stats.rotations, 4);
        assert_eq!(stats.collisions, 0);
    }
}
