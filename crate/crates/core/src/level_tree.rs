// SPDX-License-Identifier: Apache-2.0

//! Dynamic level tree over `Y = ceil(w_1) - x_1, ..., ceil(w_n) - x_n`.
//!
//! Every node stands for a level interval. An internal node covers a maximal
//! index range whose weights all lie below its level; its children are the
//! leaves attaining the maximum of that range plus one internal node for
//! each gap between them, so all children of a node share one level
//! (`child_level`). The root covers everything at a level above every weight.
//!
//! Each internal node carries
//!
//! ```text
//! load(u) = ceil((load(u_1) + ... + load(u_k)) / 2^min(ceil(log2 n), level(u) - child_level(u)))
//! ```
//!
//! and the minimax cost of `Y` is `child_level(root) + ceil(log2(sum of the
//! root's child loads))`.
//!
//! `set(i)` lowers leaf `i` by one and repairs the tree around that leaf and
//! along its path to the root. Parent links are resolved through a
//! union-find, so merging two sibling intervals is one `union` instead of
//! re-parenting their children. Every other modification is journaled and
//! `undo` replays the journal of the latest `set` backwards, deunioning
//! where needed.

use std::cell::Cell;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::minimax::{ceil_log2, ceil_shift, check_int_weights};
use crate::union_find::UnionFind;

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Leaf,
    Internal,
    Root,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Node {
    kind: NodeKind,
    level: i64,
    /// Shared level of the children; unused for leaves.
    child_level: i64,
    load: u64,
    /// Sum of the children's loads; unused for leaves.
    sum: u64,
    /// Raw parent id, resolved through the union-find.
    parent: u32,
    prev: u32,
    next: u32,
    first: u32,
    last: u32,
}

impl Node {
    fn leaf(level: i64) -> Self {
        Node {
            kind: NodeKind::Leaf,
            level,
            child_level: level,
            load: 1,
            sum: 0,
            parent: NIL,
            prev: NIL,
            next: NIL,
            first: NIL,
            last: NIL,
        }
    }

    fn internal(level: i64, child_level: i64) -> Self {
        Node { kind: NodeKind::Internal, child_level, load: 0, ..Node::leaf(level) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Kind,
    Level,
    ChildLevel,
    Load,
    Sum,
    Parent,
    Prev,
    Next,
    First,
    Last,
}

/// Journal entry. Node updates record only the fields that changed, with
/// the old value stored as raw bits.
#[derive(Clone, Copy, Debug)]
enum Change {
    Field(u32, Field, u64),
    Created,
    Union,
    Root(u32),
    Bit(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TreeCounters {
    pub sets: u64,
    pub undos: u64,
    pub cost_queries: u64,
    pub finds: u64,
    pub unions: u64,
    pub deunions: u64,
    pub nodes_created: u64,
}

#[derive(Serialize)]
struct NodeDump {
    id: u32,
    kind: NodeKind,
    live: bool,
    level: i64,
    load: u64,
    children: Vec<u32>,
    parent: Option<u32>,
}

#[derive(Serialize)]
struct TreeDump {
    root: u32,
    nodes: Vec<NodeDump>,
    bits: Vec<u8>,
    weights: Vec<i64>,
    journal_depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    cost: Option<i64>,
}

fn restore(n: &mut Node, field: Field, bits: u64) {
    match field {
        Field::Kind => {
            n.kind = match bits {
                0 => NodeKind::Leaf,
                1 => NodeKind::Internal,
                _ => NodeKind::Root,
            }
        }
        Field::Level => n.level = bits as i64,
        Field::ChildLevel => n.child_level = bits as i64,
        Field::Load => n.load = bits,
        Field::Sum => n.sum = bits,
        Field::Parent => n.parent = bits as u32,
        Field::Prev => n.prev = bits as u32,
        Field::Next => n.next = bits as u32,
        Field::First => n.first = bits as u32,
        Field::Last => n.last = bits as u32,
    }
}

/// Pending run of siblings during construction.
struct Pending {
    level: i64,
    first: u32,
    last: u32,
    sum: u64,
}

#[derive(Clone, Debug)]
pub struct LevelTree {
    ceil: Vec<i64>,
    settable: Vec<bool>,
    bits: Vec<bool>,
    nodes: Vec<Node>,
    uf: UnionFind,
    root: u32,
    cap: u64,
    journal: Vec<Change>,
    segments: Vec<usize>,
    sets: u64,
    undos: u64,
    created: u64,
    cost_queries: Cell<u64>,
}

impl LevelTree {
    /// Builds the tree for real weights with all bits clear, so
    /// `Y = ceil(w)`. Positions with integral weights cannot be set.
    pub fn build(w: &[f64]) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::Empty);
        }
        let mut ceil = Vec::with_capacity(w.len());
        let mut settable = Vec::with_capacity(w.len());
        for (index, &x) in w.iter().enumerate() {
            let c = x.ceil();
            if !x.is_finite() || c.abs() > crate::minimax::MAX_ABS_WEIGHT as f64 {
                return Err(Error::WeightOutOfRange { index, value: x });
            }
            ceil.push(c as i64);
            settable.push(x - x.floor() > 0.0);
        }
        Self::from_ceilings(ceil, settable)
    }

    /// Builds the tree for integer weights; no position can be set.
    pub fn from_int(y: &[i64]) -> Result<Self> {
        Self::from_ceilings(y.to_vec(), vec![false; y.len()])
    }

    /// Builds the tree for `Y = ceil` where `settable[i]` tells whether
    /// `set(i)` is allowed.
    pub fn from_ceilings(ceil: Vec<i64>, settable: Vec<bool>) -> Result<Self> {
        check_int_weights(&ceil)?;
        if ceil.len() != settable.len() {
            return Err(Error::LengthMismatch { left: ceil.len(), right: settable.len() });
        }
        if ceil.len() >= NIL as usize / 4 {
            return Err(Error::IndexOutOfRange { index: ceil.len(), n: NIL as usize / 4 });
        }
        let n = ceil.len();
        let cap = ceil_log2(n as u64) as u64;
        let mut nodes: Vec<Node> = Vec::with_capacity(2 * n + 1);
        nodes.extend(ceil.iter().map(|&y| Node::leaf(y)));
        let sentinel = ceil.iter().max().unwrap() + cap as i64 + 2;

        fn append(nodes: &mut [Node], run: &mut Pending, x: u32) {
            nodes[x as usize].prev = run.last;
            nodes[run.last as usize].next = x;
            run.last = x;
            run.sum += nodes[x as usize].load;
        }
        fn close(nodes: &mut Vec<Node>, run: Pending, level: i64, cap: u64) -> u32 {
            let id = nodes.len() as u32;
            let mut node = Node::internal(level, run.level);
            node.first = run.first;
            node.last = run.last;
            node.sum = run.sum;
            node.load = ceil_shift(run.sum, cap.min((level - run.level) as u64));
            nodes.push(node);
            let mut c = run.first;
            while c != NIL {
                nodes[c as usize].parent = id;
                c = nodes[c as usize].next;
            }
            id
        }
        let single = |x: u32, level: i64, load: u64| Pending { level, first: x, last: x, sum: load };

        let mut stack: Vec<Pending> = Vec::new();
        for (i, &yi) in ceil.iter().enumerate() {
            while stack.last().is_some_and(|top| top.level < yi) {
                let top = stack.pop().unwrap();
                let target = stack.last().map_or(yi, |b| b.level.min(yi));
                let id = close(&mut nodes, top, target, cap);
                match stack.last_mut() {
                    Some(b) if b.level == target => append(&mut nodes, b, id),
                    _ => stack.push(single(id, target, nodes[id as usize].load)),
                }
            }
            match stack.last_mut() {
                Some(top) if top.level == yi => append(&mut nodes, top, i as u32),
                _ => stack.push(single(i as u32, yi, 1)),
            }
        }
        while stack.len() > 1 {
            let top = stack.pop().unwrap();
            let below = stack.last_mut().unwrap();
            let target = below.level;
            let id = close(&mut nodes, top, target, cap);
            append(&mut nodes, below, id);
        }
        let root = close(&mut nodes, stack.pop().unwrap(), sentinel, cap);
        nodes[root as usize].kind = NodeKind::Root;
        nodes[root as usize].load = 1;

        Ok(LevelTree {
            bits: vec![false; n],
            ceil,
            settable,
            uf: UnionFind::new(nodes.len()),
            nodes,
            root,
            cap,
            journal: Vec::new(),
            segments: Vec::new(),
            sets: 0,
            undos: 0,
            created: 0,
            cost_queries: Cell::new(0),
        })
    }

    pub fn len(&self) -> usize {
        self.ceil.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ceil.is_empty()
    }

    /// Current integer weights `ceil(w_i) - x_i`.
    pub fn weights(&self) -> Vec<i64> {
        self.ceil.iter().zip(&self.bits).map(|(&c, &x)| c - x as i64).collect()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_set(&self, i: usize) -> bool {
        self.bits.get(i).copied().unwrap_or(false)
    }

    pub fn is_settable(&self, i: usize) -> bool {
        self.settable.get(i).copied().unwrap_or(false)
    }

    /// Number of `set` operations that have not been undone.
    pub fn journal_depth(&self) -> usize {
        self.segments.len()
    }

    /// Minimax cost of the current weights.
    pub fn cost(&self) -> i64 {
        self.cost_queries.set(self.cost_queries.get() + 1);
        let root = &self.nodes[self.root as usize];
        root.child_level + ceil_log2(root.sum) as i64
    }

    pub fn counters(&self) -> TreeCounters {
        TreeCounters {
            sets: self.sets,
            undos: self.undos,
            cost_queries: self.cost_queries.get(),
            finds: self.uf.finds(),
            unions: self.uf.unions(),
            deunions: self.uf.deunions(),
            nodes_created: self.created,
        }
    }

    /// Sets `x_i` to 1, lowering `y_i` by one.
    pub fn set(&mut self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange { index: i, n: self.len() });
        }
        if !self.settable[i] {
            return Err(Error::IntegralWeight(i));
        }
        if self.bits[i] {
            return Err(Error::AlreadySet(i));
        }
        self.segments.push(self.journal.len());
        self.journal.push(Change::Bit(i));
        self.bits[i] = true;
        self.sets += 1;

        let v = i as u32;
        let m = self.node(v).level;
        self.write(v, |n| n.level = m - 1);
        let u = self.parent_of(v);
        let (a, b) = (self.node(v).prev, self.node(v).next);
        let a_int = a != NIL && self.node(a).kind != NodeKind::Leaf;
        let b_int = b != NIL && self.node(b).kind != NodeKind::Leaf;
        // An internal sibling whose children sit one level below `v`'s old
        // level merges with `v` instead of being lowered.
        let a_lift = a_int && self.node(a).child_level == m - 1;
        let b_lift = b_int && self.node(b).child_level == m - 1;
        let alone =
            (a == NIL || (a_int && self.node(a).prev == NIL)) && (b == NIL || (b_int && self.node(b).next == NIL));

        let top = if alone {
            // `v` was the only maximum under `u`: the whole range drops to
            // `m - 1`, and gaps already at that level dissolve into `u`.
            let mut u = u;
            if a_int {
                if a_lift {
                    u = self.absorb(a, u)?;
                } else {
                    self.relevel(a, m - 1);
                }
            }
            if b_int {
                if b_lift {
                    u = self.absorb(b, u)?;
                } else {
                    self.relevel(b, m - 1);
                }
            }
            self.write(u, |n| n.child_level = m - 1);
            u
        } else {
            // `u` keeps other maxima: `v` and its gap neighbours form one
            // gap at level `m`.
            let g = match (a_lift, b_lift) {
                (true, true) => {
                    self.move_to_back(v, a);
                    self.merge_adjacent(a, b, u)?
                }
                (true, false) => {
                    self.move_to_back(v, a);
                    if b_int {
                        self.move_to_back(b, a);
                        self.relevel(b, m - 1);
                    }
                    a
                }
                (false, true) => {
                    self.move_to_front(v, b);
                    if a_int {
                        self.move_to_front(a, b);
                        self.relevel(a, m - 1);
                    }
                    b
                }
                (false, false) => {
                    let g = self.create_internal(m, m - 1);
                    self.insert_before(g, u, if a_int { a } else { v });
                    for x in [a, v, b] {
                        if x == v || (x != NIL && self.node(x).kind != NodeKind::Leaf) {
                            self.move_to_back(x, g);
                        }
                    }
                    for x in [a, b] {
                        if x != NIL && self.node(x).kind != NodeKind::Leaf {
                            self.relevel(x, m - 1);
                        }
                    }
                    g
                }
            };
            self.refresh(g);
            u
        };

        let mut x = top;
        while self.node(x).kind != NodeKind::Root && self.refresh(x) {
            x = self.parent_of(x);
        }
        Ok(())
    }

    /// Drops the undo history: the current state becomes the base that
    /// `undo` can no longer go past.
    pub fn commit(&mut self) {
        self.journal.clear();
        self.segments.clear();
        self.uf.commit();
    }

    /// Reverts the most recent `set` that has not been undone.
    pub fn undo(&mut self) -> Result<()> {
        let start = self.segments.pop().ok_or(Error::NothingToUndo)?;
        while self.journal.len() > start {
            match self.journal.pop().unwrap() {
                Change::Field(id, field, old) => restore(&mut self.nodes[id as usize], field, old),
                Change::Created => {
                    self.nodes.pop();
                    self.uf.pop();
                }
                Change::Union => self.uf.deunion()?,
                Change::Root(r) => self.root = r,
                Change::Bit(i) => self.bits[i] = false,
            }
        }
        self.undos += 1;
        Ok(())
    }

    fn node(&self, id: u32) -> &Node {
        &self.nodes[id as usize]
    }

    fn parent_of(&self, id: u32) -> u32 {
        self.uf.find(self.node(id).parent)
    }

    fn write(&mut self, id: u32, f: impl FnOnce(&mut Node)) {
        let slot = &mut self.nodes[id as usize];
        let old = *slot;
        f(slot);
        let new = *slot;
        let journal = &mut self.journal;
        let mut log = |changed: bool, field: Field, bits: u64| {
            if changed {
                journal.push(Change::Field(id, field, bits));
            }
        };
        log(old.kind != new.kind, Field::Kind, old.kind as u64);
        log(old.level != new.level, Field::Level, old.level as u64);
        log(old.child_level != new.child_level, Field::ChildLevel, old.child_level as u64);
        log(old.load != new.load, Field::Load, old.load);
        log(old.sum != new.sum, Field::Sum, old.sum);
        log(old.parent != new.parent, Field::Parent, old.parent as u64);
        log(old.prev != new.prev, Field::Prev, old.prev as u64);
        log(old.next != new.next, Field::Next, old.next as u64);
        log(old.first != new.first, Field::First, old.first as u64);
        log(old.last != new.last, Field::Last, old.last as u64);
    }

    fn union(&mut self, a: u32, b: u32) -> Result<u32> {
        let r = self.uf.union(a, b)?;
        self.journal.push(Change::Union);
        Ok(r)
    }

    fn create_internal(&mut self, level: i64, child_level: i64) -> u32 {
        let id = self.nodes.len() as u32;
        self.nodes.push(Node::internal(level, child_level));
        let uf_id = self.uf.push();
        debug_assert_eq!(uf_id, id);
        self.journal.push(Change::Created);
        self.created += 1;
        id
    }

    /// Recomputes the load of an internal node and pushes the difference
    /// into its parent's sum. Returns whether the load changed.
    fn refresh(&mut self, x: u32) -> bool {
        let nd = *self.node(x);
        if nd.kind != NodeKind::Internal {
            return false;
        }
        let shift = self.cap.min((nd.level - nd.child_level) as u64);
        let load = ceil_shift(nd.sum, shift);
        if load == nd.load {
            return false;
        }
        self.write(x, |n| n.load = load);
        let p = self.parent_of(x);
        self.write(p, |n| n.sum = n.sum - nd.load + load);
        true
    }

    fn relevel(&mut self, x: u32, level: i64) {
        self.write(x, |n| n.level = level);
        self.refresh(x);
    }

    fn unlink(&mut self, x: u32) {
        let p = self.parent_of(x);
        let Node { prev, next, load, .. } = *self.node(x);
        if prev != NIL {
            self.write(prev, |n| n.next = next);
        } else {
            self.write(p, |n| n.first = next);
        }
        if next != NIL {
            self.write(next, |n| n.prev = prev);
        } else {
            self.write(p, |n| n.last = prev);
        }
        self.write(p, |n| n.sum -= load);
    }

    fn move_to_back(&mut self, x: u32, p: u32) {
        self.unlink(x);
        let last = self.node(p).last;
        let load = self.node(x).load;
        self.write(x, |n| {
            n.parent = p;
            n.prev = last;
            n.next = NIL;
        });
        if last != NIL {
            self.write(last, |n| n.next = x);
        } else {
            self.write(p, |n| n.first = x);
        }
        self.write(p, |n| {
            n.last = x;
            n.sum += load;
        });
    }

    fn move_to_front(&mut self, x: u32, p: u32) {
        self.unlink(x);
        let first = self.node(p).first;
        let load = self.node(x).load;
        self.write(x, |n| {
            n.parent = p;
            n.prev = NIL;
            n.next = first;
        });
        if first != NIL {
            self.write(first, |n| n.prev = x);
        } else {
            self.write(p, |n| n.last = x);
        }
        self.write(p, |n| {
            n.first = x;
            n.sum += load;
        });
    }

    /// Links the detached node `x` into `p`'s child list before `before`.
    fn insert_before(&mut self, x: u32, p: u32, before: u32) {
        let prev = self.node(before).prev;
        let load = self.node(x).load;
        self.write(x, |n| {
            n.parent = p;
            n.prev = prev;
            n.next = before;
        });
        self.write(before, |n| n.prev = x);
        if prev != NIL {
            self.write(prev, |n| n.next = x);
        } else {
            self.write(p, |n| n.first = x);
        }
        self.write(p, |n| n.sum += load);
    }

    /// Replaces the internal child `x` of `y` by `x`'s children and unions
    /// the two. Returns the node now playing `y`'s role.
    fn absorb(&mut self, x: u32, y: u32) -> Result<u32> {
        let xn = *self.node(x);
        let (p, q, f, l) = (xn.prev, xn.next, xn.first, xn.last);
        if p != NIL {
            self.write(p, |n| n.next = f);
        } else {
            self.write(y, |n| n.first = f);
        }
        self.write(f, |n| n.prev = p);
        self.write(l, |n| n.next = q);
        if q != NIL {
            self.write(q, |n| n.prev = l);
        } else {
            self.write(y, |n| n.last = l);
        }
        self.write(y, |n| n.sum = n.sum - xn.load + xn.sum);
        let r = self.union(x, y)?;
        if r != y {
            self.take_over(r, y);
        }
        Ok(r)
    }

    /// Concatenates adjacent siblings `a` and `b` (children of `u`) into a
    /// single node through one union.
    fn merge_adjacent(&mut self, a: u32, b: u32, u: u32) -> Result<u32> {
        let (an, bn) = (*self.node(a), *self.node(b));
        debug_assert_eq!(an.next, b);
        debug_assert_eq!(an.child_level, bn.child_level);
        self.write(an.last, |n| n.next = bn.first);
        self.write(bn.first, |n| n.prev = an.last);
        let r = self.union(a, b)?;
        let merged = Node {
            kind: NodeKind::Internal,
            level: an.level,
            child_level: an.child_level,
            load: an.load + bn.load,
            sum: an.sum + bn.sum,
            parent: u,
            prev: an.prev,
            next: bn.next,
            first: an.first,
            last: bn.last,
        };
        self.write(r, |n| *n = merged);
        if an.prev != NIL {
            self.write(an.prev, |n| n.next = r);
        } else {
            self.write(u, |n| n.first = r);
        }
        if bn.next != NIL {
            self.write(bn.next, |n| n.prev = r);
        } else {
            self.write(u, |n| n.last = r);
        }
        Ok(r)
    }

    /// Moves `y`'s record onto the representative `r` and repoints `y`'s
    /// siblings and parent (or the root handle) at `r`.
    fn take_over(&mut self, r: u32, y: u32) {
        let yn = *self.node(y);
        self.write(r, |n| *n = yn);
        if yn.kind == NodeKind::Root {
            self.journal.push(Change::Root(self.root));
            self.root = r;
            return;
        }
        let pp = self.uf.find(yn.parent);
        if yn.prev != NIL {
            self.write(yn.prev, |n| n.next = r);
        } else {
            self.write(pp, |n| n.first = r);
        }
        if yn.next != NIL {
            self.write(yn.next, |n| n.prev = r);
        } else {
            self.write(pp, |n| n.last = r);
        }
    }

    fn children(&self, id: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut c = self.node(id).first;
        while c != NIL {
            out.push(c);
            c = self.node(c).next;
        }
        out
    }

    fn is_live(&self, id: u32) -> bool {
        self.node(id).kind == NodeKind::Leaf || self.uf.find(id) == id && self.reachable(id)
    }

    fn reachable(&self, id: u32) -> bool {
        // A node that was created and then absorbed keeps `find(id) == id`
        // only while it is live, but retired records can linger in the arena.
        let mut x = id;
        for _ in 0..=self.nodes.len() {
            if x == self.root {
                return true;
            }
            let p = self.node(x).parent;
            if p == NIL {
                return false;
            }
            x = self.uf.find(p);
        }
        false
    }

    /// Deterministic JSON snapshot of the whole arena, the bit vector and
    /// the journal depth.
    pub fn serialize(&self) -> String {
        serde_json::to_string(&self.dump(false)).expect("level tree dump serializes")
    }

    /// Like [`serialize`](Self::serialize) but pretty-printed and with the
    /// current cost.
    pub fn dump_json(&self) -> serde_json::Value {
        serde_json::to_value(self.dump(true)).expect("level tree dump serializes")
    }

    fn dump(&self, with_cost: bool) -> TreeDump {
        let nodes = (0..self.nodes.len() as u32)
            .map(|id| {
                let nd = self.node(id);
                let live = self.is_live(id);
                NodeDump {
                    id,
                    kind: nd.kind,
                    live,
                    level: nd.level,
                    load: nd.load,
                    children: if live && nd.kind != NodeKind::Leaf { self.children(id) } else { Vec::new() },
                    parent: (live && nd.kind != NodeKind::Root).then(|| self.parent_of(id)),
                }
            })
            .collect();
        TreeDump {
            root: self.root,
            nodes,
            bits: self.bits.iter().map(|&b| b as u8).collect(),
            weights: self.weights(),
            journal_depth: self.segments.len(),
            cost: with_cost.then(|| {
                let root = self.node(self.root);
                root.child_level + ceil_log2(root.sum) as i64
            }),
        }
    }

    /// Shape of the live tree: a leaf prints its index, an internal node
    /// prints `level[child_level: children]`, the root prints `*` as level.
    pub fn outline(&self) -> String {
        let mut out = String::new();
        self.outline_into(self.root, &mut out);
        out
    }

    fn outline_into(&self, id: u32, out: &mut String) {
        let nd = self.node(id);
        match nd.kind {
            NodeKind::Leaf => write!(out, "{id}").unwrap(),
            kind => {
                if kind == NodeKind::Root {
                    out.push('*');
                } else {
                    write!(out, "{}", nd.level).unwrap();
                }
                write!(out, "[{}:", nd.child_level).unwrap();
                for c in self.children(id) {
                    out.push(' ');
                    self.outline_into(c, out);
                }
                out.push(']');
            }
        }
    }

    /// Loads of the live internal nodes in preorder, root excluded.
    pub fn internal_loads(&self) -> Vec<(i64, u64)> {
        let mut out = Vec::new();
        let mut todo = vec![self.root];
        while let Some(id) = todo.pop() {
            let nd = self.node(id);
            if nd.kind == NodeKind::Internal {
                out.push((nd.level, nd.load));
            }
            if nd.kind != NodeKind::Leaf {
                let mut ch = self.children(id);
                ch.reverse();
                todo.extend(ch);
            }
        }
        out
    }

    /// Full structural audit: sibling links, parent resolution, levels,
    /// loads and sums, leaf order, and the gap shape (no two internal
    /// siblings adjacent, at least one leaf under every internal node).
    pub fn audit(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        let y = self.weights();
        let mut next_leaf = 0usize;
        let mut todo = vec![self.root];
        let mut order = Vec::new();
        if self.node(self.root).kind != NodeKind::Root {
            return fail(format!("root {} is not marked as root", self.root));
        }
        while let Some(id) = todo.pop() {
            let nd = *self.node(id);
            if nd.kind == NodeKind::Leaf {
                order.push(id);
                continue;
            }
            if self.uf.find(id) != id {
                return fail(format!("node {id} is reachable but not a representative"));
            }
            let ch = self.children(id);
            if ch.is_empty() {
                return fail(format!("internal node {id} has no children"));
            }
            if self.node(nd.last).next != NIL || *ch.last().unwrap() != nd.last {
                return fail(format!("node {id}: broken last-child link"));
            }
            let mut sum = 0u64;
            let mut has_leaf = false;
            let mut prev = NIL;
            let mut prev_internal = false;
            for &c in &ch {
                let cn = self.node(c);
                if cn.prev != prev {
                    return fail(format!("node {c}: prev link {} != {prev}", cn.prev));
                }
                if self.parent_of(c) != id {
                    return fail(format!("node {c}: parent resolves to {}", self.parent_of(c)));
                }
                if cn.level != nd.child_level {
                    return fail(format!("node {c}: level {} != {}", cn.level, nd.child_level));
                }
                let internal = cn.kind != NodeKind::Leaf;
                if internal && prev_internal {
                    return fail(format!("node {id}: adjacent internal children"));
                }
                has_leaf |= !internal;
                prev_internal = internal;
                prev = c;
                sum += cn.load;
            }
            if !has_leaf {
                return fail(format!("node {id}: no leaf attains the child level"));
            }
            if sum != nd.sum {
                return fail(format!("node {id}: sum {} != {sum}", nd.sum));
            }
            if nd.level <= nd.child_level {
                return fail(format!("node {id}: level {} <= child level", nd.level));
            }
            if nd.kind == NodeKind::Internal {
                let want = ceil_shift(sum, self.cap.min((nd.level - nd.child_level) as u64));
                if nd.load != want {
                    return fail(format!("node {id}: load {} != {want}", nd.load));
                }
            }
            todo.extend(ch.iter().rev());
        }
        for &leaf in &order {
            let nd = self.node(leaf);
            if leaf as usize != next_leaf {
                return fail(format!("leaf {leaf} out of order (expected {next_leaf})"));
            }
            if nd.load != 1 || nd.level != y[next_leaf] {
                return fail(format!("leaf {leaf}: load {} level {}", nd.load, nd.level));
            }
            next_leaf += 1;
        }
        if next_leaf != self.len() {
            return fail(format!("visited {next_leaf} of {} leaves", self.len()));
        }
        Ok(())
    }
}
