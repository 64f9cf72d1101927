//! Partition of lexicon entries into paradigms.

/// Union-find forest with path compression and union by size.
#[derive(Debug, Clone, Default)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Adds a singleton set and returns its element.
    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[i] != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    /// Joins the sets of `i` and `j`; returns false if they were already joined.
    pub fn union(&mut self, i: usize, j: usize) -> bool {
        let (mut a, mut b) = (self.find(i), self.find(j));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Read-only paradigm lookup. Every entry maps to the smallest id in its
/// class, so paradigm numbers do not depend on union order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParadigmIndex {
    rep: Vec<usize>,
}

impl ParadigmIndex {
    /// Every entry in its own paradigm.
    pub fn singletons(len: usize) -> Self {
        ParadigmIndex {
            rep: (0..len).collect(),
        }
    }

    pub fn from_links(len: usize, links: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut sets = DisjointSets::new(len);
        for (a, b) in links {
            sets.union(a, b);
        }
        let mut smallest = vec![usize::MAX; len];
        for id in 0..len {
            let root = sets.find(id);
            smallest[root] = smallest[root].min(id);
        }
        let rep = (0..len).map(|id| smallest[sets.find(id)]).collect();
        ParadigmIndex { rep }
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn paradigm(&self, id: usize) -> usize {
        self.rep[id]
    }

    pub fn same_paradigm(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    /// Appends a new entry to the paradigm of `source`. Returns the new id.
    pub fn push_member(&mut self, source: usize) -> usize {
        let id = self.rep.len();
        self.rep.push(self.rep[source]);
        id
    }

    pub fn push_singleton(&mut self) -> usize {
        let id = self.rep.len();
        self.rep.push(id);
        id
    }
}
