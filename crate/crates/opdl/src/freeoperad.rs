//! Monomial combinatorics of the free operad on two binary generators:
//! labeled planar binary trees, signed canonical forms under declared
//! commutativity/anticommutativity, association types, ordered multilinear
//! bases, the symmetric-group action, and cubic-consequence grafting.

use crate::polyring::Polynomial;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Symmetry of a binary generator under its argument swap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    None,
    Commutative,
    Anticommutative,
}

/// Rendering symbol for a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpSymbol {
    /// `uv` (juxtaposition)
    Juxt,
    /// `u·v`
    Dot,
    /// `[u,v]`
    Bracket,
    /// `u∘v`
    Circ,
    /// `u•v`
    Bullet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub symbol: OpSymbol,
    pub symmetry: Symmetry,
}

/// How the ordered monomial basis is laid out.
///
/// `PatternBlocks` is the layout used for the two-associative-products and
/// associative-magmatic cases: operation-pattern blocks with the argument
/// permutations as the minor index. `Structural` sorts by association type
/// (root operation by the signature's precedence, then shapes with the larger
/// left subtree first, recursively) with lexicographic argument words as the
/// minor index; this reproduces the printed mixed-case bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisStyle {
    PatternBlocks,
    Structural,
}

/// Two binary generators plus the conventions that pin down basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub gens: [GeneratorSpec; 2],
    /// whether argument permutations are part of the monomial basis
    pub symmetric: bool,
    /// which generator's root comes first in the association-type order
    pub type_first: u8,
    pub style: BasisStyle,
}

impl Signature {
    pub fn symmetry(&self, op: u8) -> Symmetry {
        self.gens[op as usize].symmetry
    }

    fn op_rank(&self, op: u8) -> u8 {
        if op == self.type_first {
            0
        } else {
            1
        }
    }
}

/// A labeled planar binary tree: internal vertices carry a generator index,
/// leaves carry argument symbols `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Tree {
    Leaf(u8),
    Node(u8, Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(op: u8, left: Tree, right: Tree) -> Tree {
        Tree::Node(op, Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Leaf labels in left-to-right order.
    pub fn leaf_word(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u8>) {
        match self {
            Tree::Leaf(x) => out.push(*x),
            Tree::Node(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Apply a permutation to the argument symbols (not the positions).
    pub fn relabel(&self, perm: &[u8]) -> Tree {
        match self {
            Tree::Leaf(x) => Tree::Leaf(perm[*x as usize]),
            Tree::Node(op, l, r) => Tree::node(*op, l.relabel(perm), r.relabel(perm)),
        }
    }

    /// Replace each leaf by a subtree.
    pub fn substitute_leaves(&self, subs: &[Tree]) -> Tree {
        match self {
            Tree::Leaf(x) => subs[*x as usize].clone(),
            Tree::Node(op, l, r) => {
                Tree::node(*op, l.substitute_leaves(subs), r.substitute_leaves(subs))
            }
        }
    }
}

/// Association-type comparison: generator precedence at the root, then the
/// larger left subtree first, then recursively. Leaf labels are ignored.
pub fn type_cmp(sig: &Signature, a: &Tree, b: &Tree) -> Ordering {
    match (a, b) {
        (Tree::Leaf(_), Tree::Leaf(_)) => Ordering::Equal,
        (Tree::Leaf(_), Tree::Node(..)) => Ordering::Less,
        (Tree::Node(..), Tree::Leaf(_)) => Ordering::Greater,
        (Tree::Node(o1, l1, r1), Tree::Node(o2, l2, r2)) => sig
            .op_rank(*o1)
            .cmp(&sig.op_rank(*o2))
            .then_with(|| l2.leaves().cmp(&l1.leaves()))
            .then_with(|| type_cmp(sig, l1, l2))
            .then_with(|| type_cmp(sig, r1, r2)),
    }
}

/// Order used when sorting the two children of a symmetric vertex: larger
/// subtree first, then association type, then argument word.
fn child_cmp(sig: &Signature, a: &Tree, b: &Tree) -> Ordering {
    b.leaves()
        .cmp(&a.leaves())
        .then_with(|| type_cmp(sig, a, b))
        .then_with(|| a.leaf_word().cmp(&b.leaf_word()))
}

/// Reduce a tree to its canonical representative, swapping children at
/// commutative vertices (sign unchanged) and anticommutative vertices (sign
/// negated). Idempotent; the sign is +1 whenever no generator is
/// anticommutative.
pub fn canonicalize(sig: &Signature, t: &Tree) -> (i8, Tree) {
    match t {
        Tree::Leaf(_) => (1, t.clone()),
        Tree::Node(op, l, r) => {
            let (sl, lc) = canonicalize(sig, l);
            let (sr, rc) = canonicalize(sig, r);
            let mut sign = sl * sr;
            let node = match sig.symmetry(*op) {
                Symmetry::None => Tree::node(*op, lc, rc),
                Symmetry::Commutative => {
                    if child_cmp(sig, &lc, &rc) == Ordering::Greater {
                        Tree::node(*op, rc, lc)
                    } else {
                        Tree::node(*op, lc, rc)
                    }
                }
                Symmetry::Anticommutative => {
                    if child_cmp(sig, &lc, &rc) == Ordering::Greater {
                        sign = -sign;
                        Tree::node(*op, rc, lc)
                    } else {
                        Tree::node(*op, lc, rc)
                    }
                }
            };
            (sign, node)
        }
    }
}

/// Basis position together with the sign picked up by canonicalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedIndex {
    pub sign: i8,
    pub index: usize,
}

/// Ordered multilinear monomial basis of one arity, with canonical-form lookup.
#[derive(Clone, Debug)]
pub struct BasisTable {
    pub sig: Signature,
    pub arity: usize,
    pub monomials: Vec<Tree>,
    index: HashMap<Tree, usize>,
}

impl BasisTable {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn tree(&self, idx: usize) -> &Tree {
        &self.monomials[idx]
    }

    /// Canonicalize an arbitrary tree of the table's arity and locate it.
    pub fn canonical_index(&self, t: &Tree) -> SignedIndex {
        let (sign, canon) = canonicalize(&self.sig, t);
        let index = *self
            .index
            .get(&canon)
            .unwrap_or_else(|| panic!("tree not in basis: {canon:?}"));
        SignedIndex { sign, index }
    }

    /// The signed action of an argument permutation on a basis element.
    pub fn act(&self, perm: &[u8], idx: usize) -> SignedIndex {
        self.canonical_index(&self.monomials[idx].relabel(perm))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// All op-labeled planar binary trees whose in-order leaf word is `word`.
fn trees_on_word(word: &[u8]) -> Vec<Tree> {
    if word.len() == 1 {
        return vec![Tree::Leaf(word[0])];
    }
    let mut out = Vec::new();
    for split in 1..word.len() {
        for l in trees_on_word(&word[..split]) {
            for r in trees_on_word(&word[split..]) {
                for op in 0..2u8 {
                    out.push(Tree::node(op, l.clone(), r.clone()));
                }
            }
        }
    }
    out
}

/// Canonical association types of the given arity, in type order.
/// Supported through arity 6 (larger arities are only a counting concern).
pub fn association_types(sig: &Signature, arity: usize) -> Vec<Tree> {
    assert!((2..=6).contains(&arity), "association types supported for arity 2..6");
    let word = vec![0u8; arity];
    let mut set: BTreeSet<Tree> = BTreeSet::new();
    for t in trees_on_word(&word) {
        let (_, canon) = canonicalize(sig, &t);
        set.insert(canon);
    }
    let mut types: Vec<Tree> = set.into_iter().collect();
    types.sort_by(|a, b| type_cmp(sig, a, b));
    types
}

/// Assign the letters of `word` to the leaves of a type tree, left to right.
fn label_type(ty: &Tree, word: &[u8]) -> Tree {
    fn rec(ty: &Tree, word: &[u8], pos: &mut usize) -> Tree {
        match ty {
            Tree::Leaf(_) => {
                let t = Tree::Leaf(word[*pos]);
                *pos += 1;
                t
            }
            Tree::Node(op, l, r) => {
                let lt = rec(l, word, pos);
                let rt = rec(r, word, pos);
                Tree::node(*op, lt, rt)
            }
        }
    }
    let mut pos = 0;
    rec(ty, word, &mut pos)
}

/// The eight arity-3 operation patterns `(root, inner, left-shape?)` in the
/// fixed order used by the two-associative-products bases.
const PATTERNS3: [(u8, u8, bool); 8] = [
    (0, 0, true),
    (0, 0, false),
    (1, 1, true),
    (1, 1, false),
    (1, 0, true),
    (1, 0, false),
    (0, 1, true),
    (0, 1, false),
];

fn pattern3_tree(root: u8, inner: u8, left_shape: bool) -> Tree {
    if left_shape {
        Tree::node(root, Tree::node(inner, Tree::Leaf(0), Tree::Leaf(1)), Tree::Leaf(2))
    } else {
        Tree::node(root, Tree::Leaf(0), Tree::node(inner, Tree::Leaf(1), Tree::Leaf(2)))
    }
}

/// The 40 arity-4 monomials of the pattern-blocks layout, identity labeling:
/// for each root operation, first the arity-3 basis grafted on the left of a
/// final argument, then the four two-two products, then grafted on the right.
fn pattern4_monomials() -> Vec<Tree> {
    let b3: Vec<Tree> = PATTERNS3
        .iter()
        .map(|&(r, i, ls)| pattern3_tree(r, i, ls))
        .collect();
    let mut out = Vec::new();
    for root in 0..2u8 {
        for m in &b3 {
            out.push(Tree::node(root, m.clone(), Tree::Leaf(3)));
        }
        for (p, q) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            out.push(Tree::node(
                root,
                Tree::node(p, Tree::Leaf(0), Tree::Leaf(1)),
                Tree::node(q, Tree::Leaf(2), Tree::Leaf(3)),
            ));
        }
        for m in &b3 {
            out.push(Tree::node(root, Tree::Leaf(0), m.relabel(&[1, 2, 3])));
        }
    }
    out
}

/// Build the complete ordered multilinear basis of the given arity.
pub fn enumerate_basis(sig: &Signature, arity: usize) -> BasisTable {
    assert!(arity == 3 || arity == 4, "bases are built for arities 3 and 4");
    let monomials: Vec<Tree> = match sig.style {
        BasisStyle::PatternBlocks => {
            let blocks: Vec<Tree> = if arity == 3 {
                PATTERNS3.iter().map(|&(r, i, ls)| pattern3_tree(r, i, ls)).collect()
            } else {
                pattern4_monomials()
            };
            let perms: Vec<Vec<u8>> = if sig.symmetric {
                permutations(arity)
            } else {
                vec![(0..arity as u8).collect()]
            };
            let mut out = Vec::new();
            for b in &blocks {
                for p in &perms {
                    let t = b.relabel(p);
                    debug_assert_eq!(canonicalize(sig, &t), (1, t.clone()));
                    out.push(t);
                }
            }
            out
        }
        BasisStyle::Structural => {
            let types = association_types(sig, arity);
            let perms = permutations(arity);
            let mut out = Vec::new();
            for ty in &types {
                for word in &perms {
                    let t = label_type(ty, word);
                    let (sign, canon) = canonicalize(sig, &t);
                    if sign == 1 && canon == t {
                        out.push(t);
                    }
                }
            }
            out
        }
    };
    let index: HashMap<Tree, usize> =
        monomials.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    assert_eq!(index.len(), monomials.len(), "duplicate basis monomials");
    BasisTable { sig: *sig, arity, monomials, index }
}

/// Sparse row over a basis with polynomial entries, sorted by column.
pub type SparseRow = Vec<(usize, Polynomial)>;

/// Normalize a list of (column, coefficient) contributions into a sparse row.
pub fn collect_row(ncols: usize, contributions: Vec<(usize, Polynomial)>) -> SparseRow {
    let mut dense: HashMap<usize, Polynomial> = HashMap::new();
    let mut nvars = 0;
    for (col, p) in contributions {
        assert!(col < ncols);
        nvars = p.nvars();
        dense
            .entry(col)
            .and_modify(|q| *q = q.add(&p))
            .or_insert(p);
    }
    let _ = nvars;
    let mut row: SparseRow = dense.into_iter().filter(|(_, p)| !p.is_zero()).collect();
    row.sort_by_key(|(c, _)| *c);
    row
}

/// Apply an argument permutation to a sparse row over `table`.
pub fn act_row(table: &BasisTable, perm: &[u8], row: &SparseRow) -> SparseRow {
    let mut contributions = Vec::with_capacity(row.len());
    for (col, coeff) in row {
        let si = table.act(perm, *col);
        let c = if si.sign < 0 { coeff.neg() } else { coeff.clone() };
        contributions.push((si.index, c));
    }
    collect_row(table.len(), contributions)
}

/// The ten cubic consequences of an arity-3 relation: substitute a product
/// for one argument (three slots, two operations) or compose the relation
/// into either side of either product. Order: slot-major substitutions with
/// the first generator before the second, then right-composition by each
/// operation, then left-composition.
pub fn graft_consequences(
    rel: &SparseRow,
    basis3: &BasisTable,
    basis4: &BasisTable,
) -> Vec<SparseRow> {
    let leaf = Tree::Leaf;
    let mut out = Vec::with_capacity(10);
    // substitutions: argument k replaced by op(k, k+1), later arguments shifted
    for slot in 0..3usize {
        for op in 0..2u8 {
            let mut subs: Vec<Tree> = Vec::with_capacity(3);
            for arg in 0..3usize {
                let base = if arg < slot { arg } else { arg + 1 } as u8;
                if arg == slot {
                    subs.push(Tree::node(op, leaf(arg as u8), leaf(arg as u8 + 1)));
                } else {
                    subs.push(leaf(base));
                }
            }
            out.push(graft_with(rel, basis3, basis4, |t| t.substitute_leaves(&subs)));
        }
    }
    // outer compositions: rel(w,x,y) op z, then w op rel(x,y,z)
    for op in 0..2u8 {
        out.push(graft_with(rel, basis3, basis4, |t| {
            Tree::node(op, t.clone(), leaf(3))
        }));
    }
    for op in 0..2u8 {
        out.push(graft_with(rel, basis3, basis4, |t| {
            Tree::node(op, leaf(0), t.relabel(&[1, 2, 3]))
        }));
    }
    // reorder to: substitutions, right-composition op0, op1, left op0, op1
    // (already in that order)
    out
}

fn graft_with<F: Fn(&Tree) -> Tree>(
    rel: &SparseRow,
    basis3: &BasisTable,
    basis4: &BasisTable,
    f: F,
) -> SparseRow {
    let mut contributions = Vec::with_capacity(rel.len());
    for (col, coeff) in rel {
        let grafted = f(basis3.tree(*col));
        let si = basis4.canonical_index(&grafted);
        let c = if si.sign < 0 { coeff.neg() } else { coeff.clone() };
        contributions.push((si.index, c));
    }
    collect_row(basis4.len(), contributions)
}

/// Render a tree monomial in the paper-like notation, with the given
/// argument names.
pub fn render_tree(sig: &Signature, t: &Tree, names: &[&str]) -> String {
    fn operand(sig: &Signature, t: &Tree, names: &[&str]) -> String {
        match t {
            Tree::Leaf(_) => render_inner(sig, t, names),
            Tree::Node(op, ..) if sig.gens[*op as usize].symbol == OpSymbol::Bracket => {
                render_inner(sig, t, names)
            }
            _ => format!("({})", render_inner(sig, t, names)),
        }
    }
    fn render_inner(sig: &Signature, t: &Tree, names: &[&str]) -> String {
        match t {
            Tree::Leaf(x) => names[*x as usize].to_string(),
            Tree::Node(op, l, r) => {
                let ls = operand(sig, l, names);
                let rs = operand(sig, r, names);
                match sig.gens[*op as usize].symbol {
                    OpSymbol::Juxt => format!("{ls}{rs}"),
                    OpSymbol::Dot => format!("{ls}·{rs}"),
                    OpSymbol::Circ => format!("{ls}∘{rs}"),
                    OpSymbol::Bullet => format!("{ls}•{rs}"),
                    OpSymbol::Bracket => format!("[{},{}]", render_inner(sig, l, names), render_inner(sig, r, names)),
                }
            }
        }
    }
    render_inner(sig, t, names)
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symmetry::None => write!(f, "none"),
            Symmetry::Commutative => write!(f, "commutative"),
            Symmetry::Anticommutative => write!(f, "anticommutative"),
        }
    }
}
