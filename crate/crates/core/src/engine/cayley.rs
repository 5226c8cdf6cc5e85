//! Breadth-first search of a Cayley graph, with elements keyed by the images
//! of a base. Any point tuple whose pointwise stabilizer in the group is
//! trivial works as a key, so elements never have to be stored in full.

use alloc::vec;
use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};

use super::perm::Perm;
use super::EngineError;

pub struct CayleyBfs {
    width: usize,
    tuples: Vec<u32>,
    parent: Vec<u32>,
    via: Vec<u32>,
    layer_ends: Vec<usize>,
    index: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl CayleyBfs {
    /// Explores from the identity (whose key is `points`) along right
    /// multiplication by `gens`. Fails once more than `cap` elements are found.
    pub fn run(points: &[u32], gens: &[Perm], cap: usize) -> Result<Self, EngineError> {
        let width = points.len();
        let mut bfs = Self {
            width,
            tuples: Vec::new(),
            parent: Vec::new(),
            via: Vec::new(),
            layer_ends: Vec::new(),
            index: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        };
        bfs.insert(points, u32::MAX, u32::MAX);
        let mut buf = vec![0u32; width];
        let mut head = 0;
        let mut layer_end = 1;
        while head < bfs.len() {
            let node = head;
            head += 1;
            for (gi, g) in gens.iter().enumerate() {
                for (b, &x) in buf.iter_mut().zip(bfs.tuple(node)) {
                    *b = g.apply(x);
                }
                if bfs.find(&buf).is_none() {
                    if bfs.len() >= cap {
                        return Err(EngineError::CapExceeded {
                            what: "Cayley graph search",
                            size: bfs.len() as u128 + 1,
                            cap: cap as u128,
                        });
                    }
                    bfs.insert(&buf.clone(), node as u32, gi as u32);
                }
            }
            if head == layer_end {
                bfs.layer_ends.push(layer_end);
                layer_end = bfs.len();
            }
        }
        Ok(bfs)
    }

    fn insert(&mut self, t: &[u32], parent: u32, via: u32) {
        let id = self.parent.len() as u32;
        let h = self.hasher.hash_one(t);
        self.tuples.extend_from_slice(t);
        self.parent.push(parent);
        self.via.push(via);
        let Self {
            index,
            tuples,
            hasher,
            width,
            ..
        } = self;
        let w = *width;
        index.insert_unique(h, id, |&j| {
            hasher.hash_one(&tuples[j as usize * w..(j as usize + 1) * w])
        });
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[u32] {
        &self.tuples[i * self.width..(i + 1) * self.width]
    }

    pub fn find(&self, t: &[u32]) -> Option<usize> {
        let h = self.hasher.hash_one(t);
        self.index
            .find(h, |&j| self.tuple(j as usize) == t)
            .map(|&j| j as usize)
    }

    /// Node reached from `i` by the generator `g`.
    pub fn step(&self, i: usize, g: &Perm) -> Option<usize> {
        let t: Vec<u32> = self.tuple(i).iter().map(|&x| g.apply(x)).collect();
        self.find(&t)
    }

    /// BFS tree parent and the generator leading from it to `i`.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        (self.parent[i] != u32::MAX).then(|| (self.parent[i] as usize, self.via[i] as usize))
    }

    /// Generator indices along the BFS tree path from the identity to `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while self.parent[i] != u32::MAX {
            w.push(self.via[i] as usize);
            i = self.parent[i] as usize;
        }
        w.reverse();
        w
    }

    pub fn element(&self, i: usize, gens: &[Perm], degree: usize) -> Perm {
        let mut x = Perm::identity(degree);
        for k in self.word(i) {
            x.then_assign(&gens[k]);
        }
        x
    }

    /// Number of elements at each distance from the identity.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.layer_ends
            .iter()
            .map(|&e| {
                let s = e - prev;
                prev = e;
                s
            })
            .collect()
    }

    pub fn depth(&self, i: usize) -> usize {
        self.layer_ends.partition_point(|&e| e <= i)
    }
}
