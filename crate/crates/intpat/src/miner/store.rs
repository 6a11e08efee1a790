//! Stores of already-accepted generators, keyed by extent.
//!
//! The generator miner asks one question: does the store hold a generator
//! with this exact extent that subsumes the candidate? Keying by extent
//! subsumes the support comparison — equal support plus subsumption forces
//! equal images — and the subsumption check also catches exact duplicates.
//!
//! Two interchangeable implementations are provided: a hash map over
//! extents, and a prefix tree storing each extent as a word of object
//! indices with the generator list at the word's end. The trie trades
//! memory for lookup locality; both must behave identically.

use std::collections::HashMap;

/// Interval bounds as indices into the attribute ranges.
pub type BoundRanks = (u32, u32);

/// `e ⊑ c`: every interval of `c` lies inside the matching interval of `e`.
fn subsumes(e: &[BoundRanks], c: &[BoundRanks]) -> bool {
    e.iter()
        .zip(c)
        .all(|(&(elo, ehi), &(clo, chi))| elo <= clo && chi <= ehi)
}

/// Associative store from extents to the generators of that class.
pub trait GeneratorStore {
    /// Rejects `pattern` when a stored generator under `extent` subsumes
    /// it (returns false, no mutation); otherwise stores it and returns
    /// true. `extent` must be sorted.
    fn check_and_insert(&mut self, extent: &[u32], pattern: &[BoundRanks]) -> bool;

    /// Total number of stored generators.
    fn pattern_count(&self) -> usize;
}

/// Which store implementation backs a mining run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoreKind {
    Trie,
    Hash,
}

impl StoreKind {
    pub fn create(self) -> Box<dyn GeneratorStore> {
        match self {
            StoreKind::Trie => Box::new(TrieStore::new()),
            StoreKind::Hash => Box::new(HashStore::new()),
        }
    }
}

impl std::fmt::Display for StoreKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StoreKind::Trie => "trie",
            StoreKind::Hash => "hash",
        })
    }
}

/// Hash map keyed by the extent.
#[derive(Debug, Default)]
pub struct HashStore {
    classes: HashMap<Box<[u32]>, Vec<Box<[BoundRanks]>>>,
    count: usize,
}

impl HashStore {
    pub fn new() -> HashStore {
        HashStore::default()
    }
}

impl GeneratorStore for HashStore {
    fn check_and_insert(&mut self, extent: &[u32], pattern: &[BoundRanks]) -> bool {
        let class = self.classes.entry(extent.into()).or_default();
        if class.iter().any(|e| subsumes(e, pattern)) {
            return false;
        }
        class.push(pattern.into());
        self.count += 1;
        true
    }

    fn pattern_count(&self) -> usize {
        self.count
    }
}

#[derive(Debug, Default)]
struct TrieNode {
    /// Sorted by object index.
    children: Vec<(u32, usize)>,
    /// Generators of the extent spelled by the path ending here.
    patterns: Vec<Box<[BoundRanks]>>,
}

/// Prefix tree over extents written as sorted object-index words.
#[derive(Debug)]
pub struct TrieStore {
    nodes: Vec<TrieNode>,
    count: usize,
}

impl TrieStore {
    pub fn new() -> TrieStore {
        TrieStore {
            nodes: vec![TrieNode::default()],
            count: 0,
        }
    }

    fn walk(&mut self, word: &[u32]) -> usize {
        let mut node = 0;
        for &object in word {
            node = match self.nodes[node]
                .children
                .binary_search_by_key(&object, |&(o, _)| o)
            {
                Ok(pos) => self.nodes[node].children[pos].1,
                Err(pos) => {
                    self.nodes.push(TrieNode::default());
                    let next = self.nodes.len() - 1;
                    self.nodes[node].children.insert(pos, (object, next));
                    next
                }
            };
        }
        node
    }
}

impl Default for TrieStore {
    fn default() -> TrieStore {
        TrieStore::new()
    }
}

impl GeneratorStore for TrieStore {
    fn check_and_insert(&mut self, extent: &[u32], pattern: &[BoundRanks]) -> bool {
        debug_assert!(extent.windows(2).all(|w| w[0] < w[1]), "extent sorted");
        let node = self.walk(extent);
        if self.nodes[node]
            .patterns
            .iter()
            .any(|e| subsumes(e, pattern))
        {
            return false;
        }
        self.nodes[node].patterns.push(pattern.into());
        self.count += 1;
        true
    }

    fn pattern_count(&self) -> usize {
        self.count
    }
}
