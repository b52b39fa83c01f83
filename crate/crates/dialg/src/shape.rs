//! Association types: the tree skeletons of monomials.
//!
//! Shapes of a fixed degree are enumerated once in a deterministic order and
//! then referred to by index. The order restricts, at degree 4, to the
//! conventional listing ((ab)c)d, (a(bc))d, (ab)(cd), a(b(cd)), a((bc)d).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Tree skeleton of a monomial; all nodes share one arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeTree {
    Leaf,
    Node(Vec<ShapeTree>),
}

impl ShapeTree {
    pub fn degree(&self) -> usize {
        match self {
            ShapeTree::Leaf => 1,
            ShapeTree::Node(children) => children.iter().map(ShapeTree::degree).sum(),
        }
    }

    pub fn binary(left: ShapeTree, right: ShapeTree) -> ShapeTree {
        ShapeTree::Node(vec![left, right])
    }

    /// Mirror image (binary trees only).
    fn mirrored(&self) -> ShapeTree {
        match self {
            ShapeTree::Leaf => ShapeTree::Leaf,
            ShapeTree::Node(children) => {
                let mut rev: Vec<ShapeTree> = children.iter().map(|c| c.mirrored()).collect();
                rev.reverse();
                ShapeTree::Node(rev)
            }
        }
    }

    /// Leaf spans `(start, end)` per node in preorder, paired with the
    /// start of each child. Used when assigning operation tags.
    pub fn for_each_node<F: FnMut(&ShapeTree, usize)>(&self, f: &mut F) {
        fn walk<F: FnMut(&ShapeTree, usize)>(t: &ShapeTree, start: usize, f: &mut F) {
            if let ShapeTree::Node(children) = t {
                f(t, start);
                let mut pos = start;
                for c in children {
                    walk(c, pos, f);
                    pos += c.degree();
                }
            }
        }
        walk(self, 0, f);
    }
}

/// Binary shapes of the given degree, in the fixed enumeration order.
///
/// The enumeration lists splits with larger left side first; left factors
/// recurse with this same order, right factors with its mirror image. This
/// puts a(b(cd)) before a((bc)d) at degree 4.
fn enumerate_binary(degree: usize) -> Vec<ShapeTree> {
    if degree == 1 {
        return vec![ShapeTree::Leaf];
    }
    let mut out = Vec::new();
    for left_size in (1..degree).rev() {
        let rights: Vec<ShapeTree> = enumerate_binary(degree - left_size)
            .iter()
            .map(|s| s.mirrored())
            .collect();
        for left in enumerate_binary(left_size) {
            for right in &rights {
                out.push(ShapeTree::binary(left.clone(), right.clone()));
            }
        }
    }
    out
}

/// Shapes of `degree` leaves with all nodes of the given arity, enumerated
/// deterministically. Arity 2 uses the binary order documented above; for
/// higher arity the order is by decreasing first-argument size, recursively.
pub fn shapes(arity: u8, degree: usize) -> &'static [ShapeTree] {
    type ShapeCache = Mutex<HashMap<(u8, usize), &'static [ShapeTree]>>;
    static CACHE: OnceLock<ShapeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(list) = guard.get(&(arity, degree)) {
        return list;
    }
    let list: Vec<ShapeTree> = if arity == 2 {
        enumerate_binary(degree)
    } else {
        enumerate_nary(arity, degree)
    };
    let leaked: &'static [ShapeTree] = Box::leak(list.into_boxed_slice());
    guard.insert((arity, degree), leaked);
    leaked
}

fn enumerate_nary(arity: u8, degree: usize) -> Vec<ShapeTree> {
    if degree == 1 {
        return vec![ShapeTree::Leaf];
    }
    let k = arity as usize;
    let mut out = Vec::new();
    // compositions of `degree` into k parts, larger first parts first
    fn compositions(
        total: usize,
        parts: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 1 {
            if total >= 1 {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in (1..=total.saturating_sub(parts - 1)).rev() {
            prefix.push(first);
            compositions(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut comps = Vec::new();
    compositions(degree, k, &mut Vec::new(), &mut comps);
    for comp in comps {
        let child_lists: Vec<Vec<ShapeTree>> =
            comp.iter().map(|&d| enumerate_nary(arity, d)).collect();
        let mut stack: Vec<Vec<ShapeTree>> = vec![Vec::new()];
        for list in &child_lists {
            let mut next = Vec::new();
            for partial in &stack {
                for item in list {
                    let mut p = partial.clone();
                    p.push(item.clone());
                    next.push(p);
                }
            }
            stack = next;
        }
        for children in stack {
            out.push(ShapeTree::Node(children));
        }
    }
    out
}

/// Index of a shape within `shapes(arity, degree)`.
pub fn shape_index(arity: u8, shape: &ShapeTree) -> u16 {
    let degree = shape.degree();
    shapes(arity, degree)
        .iter()
        .position(|s| s == shape)
        .expect("shape missing from enumeration") as u16
}

pub fn catalan(n: usize) -> usize {
    // binomial(2n, n) / (n + 1), small n only
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * (2 * (n as u128) - i) / (i + 1);
    }
    (c / (n as u128 + 1)) as usize
}
