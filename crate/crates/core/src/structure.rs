//! Unlabelled models used internally by the evaluator and the search.
//!
//! Valuations are bitmasks over a fixed atom universe (at most 64 atoms), and
//! successor lists are stored contiguously. Copies built by forgetting are laid
//! out copy-major, so world `w` of copy `c` has index `c * n + w`.

use crate::error::{Error, Result};
use crate::formula::{Atom, Clause};
use crate::kripke::{KripkeModel, WorldSet};

pub(crate) const MAX_UNIVERSE: usize = 64;

/// The change a copy makes to a world's valuation: `v ↦ (v & !clear) | set`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Mask {
    pub clear: u64,
    pub set: u64,
}

impl Mask {
    pub const IDENTITY: Mask = Mask { clear: 0, set: 0 };

    /// Falsifies every literal of `clause`. Atoms outside the universe are ignored.
    pub fn falsifying(clause: &Clause, universe: &[Atom]) -> Mask {
        let mut m = Mask::IDENTITY;
        for lit in clause.literals() {
            if let Ok(bit) = universe.binary_search(&lit.atom) {
                if lit.positive {
                    m.clear |= 1 << bit;
                } else {
                    m.set |= 1 << bit;
                }
            }
        }
        m
    }

    pub fn apply(self, v: u64) -> u64 {
        (v & !self.clear) | self.set
    }
}

pub(crate) fn check_universe(len: usize) -> Result<()> {
    if len > MAX_UNIVERSE {
        return Err(Error::AtomCap {
            atoms: len,
            cap: MAX_UNIVERSE,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Structure {
    offsets: Vec<u32>,
    targets: Vec<u32>,
    val: Vec<u64>,
}

impl Structure {
    /// Builds from successor lists, which must be sorted and duplicate free.
    pub fn from_successors(succ: &[Vec<u32>], val: Vec<u64>) -> Structure {
        debug_assert_eq!(succ.len(), val.len());
        let mut offsets = Vec::with_capacity(succ.len() + 1);
        let mut targets = Vec::with_capacity(succ.iter().map(Vec::len).sum());
        offsets.push(0);
        for s in succ {
            targets.extend_from_slice(s);
            offsets.push(targets.len() as u32);
        }
        Structure {
            offsets,
            targets,
            val,
        }
    }

    pub fn from_model(m: &KripkeModel, universe: &[Atom]) -> Structure {
        let succ: Vec<Vec<u32>> = (0..m.len())
            .map(|w| m.successors(w).iter().map(|&v| v as u32).collect())
            .collect();
        let val = (0..m.len())
            .map(|w| {
                m.valuation(w)
                    .iter()
                    .filter_map(|a| universe.binary_search(a).ok())
                    .fold(0u64, |acc, bit| acc | 1 << bit)
            })
            .collect();
        Structure::from_successors(&succ, val)
    }

    pub fn len(&self) -> usize {
        self.val.len()
    }

    pub fn successors(&self, w: usize) -> &[u32] {
        &self.targets[self.offsets[w] as usize..self.offsets[w + 1] as usize]
    }

    #[cfg(test)]
    pub fn valuation(&self, w: usize) -> u64 {
        self.val[w]
    }

    pub fn atom_extension(&self, bit: usize) -> WorldSet {
        WorldSet::from_fn(self.len(), |w| self.val[w] >> bit & 1 == 1)
    }

    pub fn boxed(&self, set: &WorldSet) -> WorldSet {
        WorldSet::from_fn(self.len(), |w| {
            self.successors(w).iter().all(|&v| set.contains(v as usize))
        })
    }

    /// `copies` copies of the model, where `(c, w)` sees `(d, v)` for every
    /// `d` whenever `w` sees `v`, and carries valuation `mask(c, w)` applied to `w`'s.
    pub fn layered(&self, copies: usize, mask: impl Fn(usize, usize) -> Mask) -> Structure {
        let n = self.len();
        let total = n * copies;
        let mut offsets = Vec::with_capacity(total + 1);
        let mut targets = Vec::with_capacity(self.targets.len() * copies * copies);
        let mut val = Vec::with_capacity(total);
        offsets.push(0u32);
        for c in 0..copies {
            for w in 0..n {
                for d in 0..copies {
                    let base = (d * n) as u32;
                    targets.extend(self.successors(w).iter().map(|&v| base + v));
                }
                offsets.push(targets.len() as u32);
                val.push(mask(c, w).apply(self.val[w]));
            }
        }
        Structure {
            offsets,
            targets,
            val,
        }
    }

    /// Keeps the worlds in `keep`; returns the new index of each kept world
    /// (`u32::MAX` for dropped ones). `None` when nothing survives.
    pub fn restrict(&self, keep: &WorldSet) -> Option<(Structure, Vec<u32>)> {
        let mut index = vec![u32::MAX; self.len()];
        let mut next = 0u32;
        for w in keep.iter() {
            index[w] = next;
            next += 1;
        }
        if next == 0 {
            return None;
        }
        let mut succ = Vec::with_capacity(next as usize);
        let mut val = Vec::with_capacity(next as usize);
        for w in keep.iter() {
            succ.push(
                self.successors(w)
                    .iter()
                    .filter(|&&v| index[v as usize] != u32::MAX)
                    .map(|&v| index[v as usize])
                    .collect::<Vec<u32>>(),
            );
            val.push(self.val[w]);
        }
        Some((Structure::from_successors(&succ, val), index))
    }
}
