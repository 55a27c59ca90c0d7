// SPDX-License-Identifier: Apache-2.0

//! Union-find with LIFO deunion.
//!
//! Union by rank, no path compression: `find` never mutates, so reversing
//! the latest union restores the exact previous parent and rank arrays.

use std::cell::Cell;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct UnionRecord {
    child: u32,
    root: u32,
    bumped: bool,
}

#[derive(Clone, Debug, Default)]
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    journal: Vec<UnionRecord>,
    finds: Cell<u64>,
    unions: u64,
    deunions: u64,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind { parent: (0..len as u32).collect(), rank: vec![0; len], ..Default::default() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Adds a fresh singleton and returns its id.
    pub fn push(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.rank.push(0);
        id
    }

    /// Removes the most recently pushed element, which must be a singleton.
    pub(crate) fn pop(&mut self) {
        let id = self.parent.len() as u32 - 1;
        debug_assert_eq!(self.parent[id as usize], id);
        debug_assert!(self.journal.iter().all(|r| r.root != id));
        self.parent.pop();
        self.rank.pop();
    }

    pub fn find(&self, mut x: u32) -> u32 {
        self.finds.set(self.finds.get() + 1);
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Links the sets of `a` and `b`; returns the new representative.
    pub fn union(&mut self, a: u32, b: u32) -> Result<u32> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return Err(Error::SameSet(a, b));
        }
        let (root, child) = if self.rank[ra as usize] >= self.rank[rb as usize] { (ra, rb) } else { (rb, ra) };
        let bumped = self.rank[root as usize] == self.rank[child as usize];
        self.parent[child as usize] = root;
        if bumped {
            self.rank[root as usize] += 1;
        }
        self.journal.push(UnionRecord { child, root, bumped });
        self.unions += 1;
        Ok(root)
    }

    /// Reverses the most recent union that has not been reversed yet.
    pub fn deunion(&mut self) -> Result<()> {
        let rec = self.journal.pop().ok_or(Error::NoUnion)?;
        self.parent[rec.child as usize] = rec.child;
        if rec.bumped {
            self.rank[rec.root as usize] -= 1;
        }
        self.deunions += 1;
        Ok(())
    }

    /// Makes every union so far permanent.
    pub fn commit(&mut self) {
        self.journal.clear();
    }

    /// Number of live (not deunioned) unions.
    pub fn depth(&self) -> usize {
        self.journal.len()
    }

    pub fn same(&self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn finds(&self) -> u64 {
        self.finds.get()
    }

    pub fn unions(&self) -> u64 {
        self.unions
    }

    pub fn deunions(&self) -> u64 {
        self.deunions
    }

    /// Raw parent links, for snapshot comparisons in tests.
    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    pub fn ranks(&self) -> &[u8] {
        &self.rank
    }
}
