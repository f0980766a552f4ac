//! Hash-consed binary cylinder trees.
//!
//! A clopen set is a finite binary tree whose leaves are `EMPTY` or `FULL`;
//! the path to a `FULL` leaf is a cylinder of the set. Nodes are interned in a
//! process-wide table so structurally equal subtrees share one id, which makes
//! equality O(1) and keeps sets like `σ^-n(wΩ)` (2^n cylinders) linear in
//! size. A reduced tree never contains `split(EMPTY, EMPTY)` or
//! `split(FULL, FULL)`, so reduced trees correspond one-to-one with canonical
//! prefix-free, sibling-merged word sets.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Node(u32);

pub(crate) const EMPTY: Node = Node(0);
pub(crate) const FULL: Node = Node(1);

struct Store {
    children: Vec<(Node, Node)>,
    index: HashMap<(Node, Node), Node>,
}

fn store() -> &'static RwLock<Store> {
    static STORE: OnceLock<RwLock<Store>> = OnceLock::new();
    STORE.get_or_init(|| {
        RwLock::new(Store {
            // Slots 0 and 1 are the terminals; their children are never read.
            children: vec![(EMPTY, EMPTY), (FULL, FULL)],
            index: HashMap::new(),
        })
    })
}

impl Node {
    pub(crate) fn is_terminal(self) -> bool {
        self.0 < 2
    }

    pub(crate) fn children(self) -> Option<(Node, Node)> {
        if self.is_terminal() {
            None
        } else {
            let s = store().read().expect("tree store poisoned");
            Some(s.children[self.0 as usize])
        }
    }

    pub(crate) fn child(self, bit: bool) -> Node {
        match self.children() {
            None => self,
            Some((z, o)) => {
                if bit {
                    o
                } else {
                    z
                }
            }
        }
    }
}

/// The reduced node with the given children.
pub(crate) fn split(zero: Node, one: Node) -> Node {
    if zero == one && zero.is_terminal() {
        return zero;
    }
    {
        let s = store().read().expect("tree store poisoned");
        if let Some(&n) = s.index.get(&(zero, one)) {
            return n;
        }
    }
    let mut s = store().write().expect("tree store poisoned");
    if let Some(&n) = s.index.get(&(zero, one)) {
        return n;
    }
    let id = u32::try_from(s.children.len()).expect("tree store exhausted");
    let n = Node(id);
    s.children.push((zero, one));
    s.index.insert((zero, one), n);
    n
}

/// Node with the single cylinder `bits` below it, leading to `leaf`.
pub(crate) fn path(bits: &[bool], leaf: Node) -> Node {
    bits.iter().rev().fold(leaf, |acc, &b| {
        if b {
            split(EMPTY, acc)
        } else {
            split(acc, EMPTY)
        }
    })
}

/// Replaces every `FULL` leaf of `a` by `leaf`.
pub(crate) fn graft(a: Node, leaf: Node) -> Node {
    fn rec(a: Node, leaf: Node, memo: &mut HashMap<Node, Node>) -> Node {
        match a {
            EMPTY => return EMPTY,
            FULL => return leaf,
            _ => {}
        }
        if let Some(&n) = memo.get(&a) {
            return n;
        }
        let (z, o) = a.children().expect("inner node");
        let n = split(rec(z, leaf, memo), rec(o, leaf, memo));
        memo.insert(a, n);
        n
    }
    rec(a, leaf, &mut HashMap::new())
}

/// Intersection of all subtrees of `a` at depth `len`.
pub(crate) fn meet_at_depth(a: Node, len: usize) -> Node {
    fn rec(a: Node, len: usize, memo: &mut HashMap<(Node, usize), Node>) -> Node {
        if len == 0 || a.is_terminal() {
            return a;
        }
        if let Some(&n) = memo.get(&(a, len)) {
            return n;
        }
        let (z, o) = a.children().expect("inner node");
        let zz = rec(z, len - 1, memo);
        let n = if zz == EMPTY {
            EMPTY
        } else {
            apply(BinOp::Intersect, zz, rec(o, len - 1, memo))
        };
        memo.insert((a, len), n);
        n
    }
    rec(a, len, &mut HashMap::new())
}

#[derive(Clone, Copy)]
pub(crate) enum BinOp {
    Union,
    Intersect,
    Difference,
}

pub(crate) fn apply(op: BinOp, a: Node, b: Node) -> Node {
    let mut memo = HashMap::new();
    apply_rec(op, a, b, &mut memo)
}

fn apply_rec(op: BinOp, a: Node, b: Node, memo: &mut HashMap<(Node, Node), Node>) -> Node {
    match op {
        BinOp::Union => {
            if a == FULL || b == FULL {
                return FULL;
            }
            if a == EMPTY || a == b {
                return b;
            }
            if b == EMPTY {
                return a;
            }
        }
        BinOp::Intersect => {
            if a == EMPTY || b == EMPTY {
                return EMPTY;
            }
            if a == FULL || a == b {
                return b;
            }
            if b == FULL {
                return a;
            }
        }
        BinOp::Difference => {
            if a == EMPTY || b == FULL || a == b {
                return EMPTY;
            }
            if b == EMPTY {
                return a;
            }
            if a == FULL {
                return complement(b);
            }
        }
    }
    if let Some(&n) = memo.get(&(a, b)) {
        return n;
    }
    let (a0, a1) = a.children().unwrap_or((a, a));
    let (b0, b1) = b.children().unwrap_or((b, b));
    let z = apply_rec(op, a0, b0, memo);
    let o = apply_rec(op, a1, b1, memo);
    let n = split(z, o);
    memo.insert((a, b), n);
    n
}

pub(crate) fn complement(a: Node) -> Node {
    fn rec(a: Node, memo: &mut HashMap<Node, Node>) -> Node {
        if a == EMPTY {
            return FULL;
        }
        if a == FULL {
            return EMPTY;
        }
        if let Some(&n) = memo.get(&a) {
            return n;
        }
        let (z, o) = a.children().expect("inner node");
        let n = split(rec(z, memo), rec(o, memo));
        memo.insert(a, n);
        n
    }
    rec(a, &mut HashMap::new())
}

/// Length of the longest cylinder (0 for the terminals).
pub(crate) fn depth(a: Node) -> usize {
    fn rec(a: Node, memo: &mut HashMap<Node, usize>) -> usize {
        let Some((z, o)) = a.children() else {
            return 0;
        };
        if let Some(&d) = memo.get(&a) {
            return d;
        }
        let d = 1 + rec(z, memo).max(rec(o, memo));
        memo.insert(a, d);
        d
    }
    rec(a, &mut HashMap::new())
}

/// Number of cylinders in the canonical word list (saturating).
pub(crate) fn cylinder_count(a: Node) -> u64 {
    fn rec(a: Node, memo: &mut HashMap<Node, u64>) -> u64 {
        match a {
            EMPTY => 0,
            FULL => 1,
            _ => {
                if let Some(&c) = memo.get(&a) {
                    return c;
                }
                let (z, o) = a.children().expect("inner node");
                let c = rec(z, memo).saturating_add(rec(o, memo));
                memo.insert(a, c);
                c
            }
        }
    }
    rec(a, &mut HashMap::new())
}

/// Canonical cylinders below `a`, depth-first.
pub(crate) fn cylinders(a: Node) -> Vec<Vec<bool>> {
    fn rec(a: Node, prefix: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        match a {
            EMPTY => {}
            FULL => out.push(prefix.clone()),
            _ => {
                let (z, o) = a.children().expect("inner node");
                prefix.push(false);
                rec(z, prefix, out);
                prefix.pop();
                prefix.push(true);
                rec(o, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(a, &mut Vec::new(), &mut out);
    out
}

/// Descend along `bits`; returns the subtree reached (a terminal if the walk
/// leaves the tree early).
pub(crate) fn descend(mut a: Node, bits: &[bool]) -> Node {
    for &b in bits {
        if a.is_terminal() {
            break;
        }
        a = a.child(b);
    }
    a
}

/// Membership of any sequence extending `bits`: `Some(true)` if every such
/// sequence is in the set, `Some(false)` if none is, `None` if undecided.
pub(crate) fn decide(a: Node, bits: &[bool]) -> Option<bool> {
    match descend(a, bits) {
        FULL => Some(true),
        EMPTY => Some(false),
        _ => None,
    }
}
