//! Kripke models and the relation-level machinery that does not involve forgetting.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};

/// A set of worlds of one model, indexed like the model's worlds. Stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    len: usize,
    words: Vec<u64>,
}

impl WorldSet {
    pub fn empty(n: usize) -> WorldSet {
        WorldSet {
            len: n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> WorldSet {
        let mut s = WorldSet {
            len: n,
            words: vec![u64::MAX; n.div_ceil(64)],
        };
        s.trim();
        s
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> WorldSet {
        let mut s = WorldSet::empty(n);
        for w in 0..n {
            if f(w) {
                s.insert(w);
            }
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn contains(&self, w: usize) -> bool {
        debug_assert!(w < self.len);
        self.words[w / 64] >> (w % 64) & 1 == 1
    }

    pub fn insert(&mut self, w: usize) {
        self.words[w / 64] |= 1 << (w % 64);
    }

    pub fn remove(&mut self, w: usize) {
        self.words[w / 64] &= !(1 << (w % 64));
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }

    fn zip_with(mut self, other: &WorldSet, op: impl Fn(u64, u64) -> u64) -> WorldSet {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a = op(*a, *b));
        self.trim();
        self
    }

    pub fn complement(mut self) -> WorldSet {
        self.words.iter_mut().for_each(|w| *w = !*w);
        self.trim();
        self
    }

    pub fn intersect(self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a | b)
    }

    /// `¬self ∪ other`
    pub fn implies(self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| !a | b)
    }

    pub fn iff(self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| !(a ^ b))
    }

    /// Worlds `start..start + len`, renumbered from zero.
    pub fn slice(&self, start: usize, len: usize) -> WorldSet {
        debug_assert!(start + len <= self.len);
        if start.is_multiple_of(64) {
            let mut s = WorldSet {
                len,
                words: self.words[start / 64..][..len.div_ceil(64)].to_vec(),
            };
            s.trim();
            return s;
        }
        WorldSet::from_fn(len, |w| self.contains(start + w))
    }

    /// The first `n` worlds; the original copy inside a model whose copies are laid out copy-major.
    pub fn prefix(&self, n: usize) -> WorldSet {
        self.slice(0, n)
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite Kripke model with string-labelled worlds. Worlds are also addressed by
/// their position in [`KripkeModel::labels`]; missing valuation entries mean no atom is true.
#[derive(Clone, PartialEq, Eq)]
pub struct KripkeModel {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<Vec<usize>>,
    valuation: Vec<BTreeSet<Atom>>,
}

impl KripkeModel {
    /// Builds a model from labelled parts, checking that every referenced world is declared.
    pub fn new<W, E, V>(worlds: W, edges: E, valuation: V) -> Result<KripkeModel>
    where
        W: IntoIterator,
        W::Item: Into<String>,
        E: IntoIterator<Item = (String, String)>,
        V: IntoIterator<Item = (String, Vec<Atom>)>,
    {
        let labels: Vec<String> = worlds.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidModel("a model needs at least one world".into()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidModel(format!("world {l:?} declared twice")));
            }
        }
        let lookup = |l: &str, role: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::InvalidModel(format!("{role} refers to undeclared world {l:?}")))
        };
        let mut succ = vec![Vec::new(); labels.len()];
        for (a, b) in edges {
            let (a, b) = (lookup(&a, "relation")?, lookup(&b, "relation")?);
            succ[a].push(b);
        }
        let mut val = vec![BTreeSet::new(); labels.len()];
        for (w, atoms) in valuation {
            let w = lookup(&w, "valuation")?;
            val[w].extend(atoms);
        }
        Ok(KripkeModel::from_parts(labels, succ, val))
    }

    /// Trusted constructor for transforms; sorts and deduplicates successor lists.
    pub(crate) fn from_parts(
        labels: Vec<String>,
        mut succ: Vec<Vec<usize>>,
        valuation: Vec<BTreeSet<Atom>>,
    ) -> KripkeModel {
        debug_assert_eq!(labels.len(), succ.len());
        debug_assert_eq!(labels.len(), valuation.len());
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        KripkeModel {
            labels,
            index,
            succ,
            valuation,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, w: usize) -> &str {
        &self.labels[w]
    }

    pub fn world(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require_world(&self, label: &str) -> Result<usize> {
        self.world(label)
            .ok_or_else(|| Error::UnknownWorld(label.to_string()))
    }

    pub fn successors(&self, w: usize) -> &[usize] {
        &self.succ[w]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<Atom> {
        &self.valuation[w]
    }

    pub fn holds(&self, w: usize, atom: &Atom) -> bool {
        self.valuation[w].contains(atom)
    }

    /// Every atom true somewhere in the model.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.valuation.iter().flatten().cloned().collect()
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    pub fn atom_extension(&self, atom: &Atom) -> WorldSet {
        WorldSet::from_fn(self.len(), |w| self.valuation[w].contains(atom))
    }

    /// Worlds all of whose successors lie in `set`.
    pub fn boxed(&self, set: &WorldSet) -> WorldSet {
        WorldSet::from_fn(self.len(), |w| self.succ[w].iter().all(|&v| set.contains(v)))
    }

    /// The submodel on the worlds in `keep`, with the new index of each old world.
    /// `None` when nothing is kept.
    pub(crate) fn restrict(&self, keep: &WorldSet) -> Option<(KripkeModel, Vec<Option<usize>>)> {
        let mut new_index = vec![None; self.len()];
        let mut labels = Vec::new();
        let mut valuation = Vec::new();
        for w in keep.iter() {
            new_index[w] = Some(labels.len());
            labels.push(self.labels[w].clone());
            valuation.push(self.valuation[w].clone());
        }
        if labels.is_empty() {
            return None;
        }
        let mut succ = vec![Vec::new(); labels.len()];
        for (a, b) in self.edges() {
            if let (Some(na), Some(nb)) = (new_index[a], new_index[b]) {
                succ[na].push(nb);
            }
        }
        Some((KripkeModel::from_parts(labels, succ, valuation), new_index))
    }

    pub fn at(self, label: &str) -> Result<PointedModel> {
        PointedModel::new(self, label)
    }
}

impl fmt::Debug for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("KripkeModel");
        let worlds: Vec<String> = (0..self.len())
            .map(|w| {
                let atoms: Vec<&str> = self.valuation[w].iter().map(Atom::name).collect();
                format!("{}:{{{}}}", self.labels[w], atoms.join(","))
            })
            .collect();
        let edges: Vec<String> = self
            .edges()
            .map(|(a, b)| format!("{}->{}", self.labels[a], self.labels[b]))
            .collect();
        s.field("worlds", &worlds).field("edges", &edges).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointedModel {
    pub model: KripkeModel,
    pub point: usize,
}

impl PointedModel {
    pub fn new(model: KripkeModel, label: &str) -> Result<PointedModel> {
        let point = model.require_world(label)?;
        Ok(PointedModel { model, point })
    }

    pub fn at_index(model: KripkeModel, point: usize) -> Result<PointedModel> {
        if point >= model.len() {
            return Err(Error::UnknownWorld(format!("#{point}")));
        }
        Ok(PointedModel { model, point })
    }

    pub fn point_label(&self) -> &str {
        self.model.label(self.point)
    }
}

fn unsupported(f: &Formula) -> Error {
    Error::Unsupported(format!("{f} is outside the basic modal fragment"))
}

/// Truth set of a basic modal formula (connectives and `K` only).
pub fn extension(model: &KripkeModel, f: &Formula) -> Result<WorldSet> {
    let n = model.len();
    Ok(match f {
        Formula::Top => WorldSet::full(n),
        Formula::Atom(a) => model.atom_extension(a),
        Formula::Not(a) => extension(model, a)?.complement(),
        Formula::And(a, b) => extension(model, a)?.intersect(&extension(model, b)?),
        Formula::Or(a, b) => extension(model, a)?.union(&extension(model, b)?),
        Formula::Implies(a, b) => extension(model, a)?.implies(&extension(model, b)?),
        Formula::Iff(a, b) => extension(model, a)?.iff(&extension(model, b)?),
        Formula::Know(a) => model.boxed(&extension(model, a)?),
        Formula::Dynamic(..) => return Err(unsupported(f)),
    })
}

/// Basic satisfaction at the world labelled `world`.
pub fn eval_basic(model: &KripkeModel, world: &str, f: &Formula) -> Result<bool> {
    let w = model.require_world(world)?;
    if !f.is_basic() {
        return Err(unsupported(f));
    }
    Ok(extension(model, f)?.contains(w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameProperty {
    Serial,
    Reflexive,
    Transitive,
    Symmetric,
    Euclidean,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 5] = [
        FrameProperty::Serial,
        FrameProperty::Reflexive,
        FrameProperty::Transitive,
        FrameProperty::Symmetric,
        FrameProperty::Euclidean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameProperty::Serial => "serial",
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Symmetric => "symmetric",
            FrameProperty::Euclidean => "euclidean",
        }
    }

    pub fn holds(self, m: &KripkeModel) -> bool {
        let n = m.len();
        match self {
            FrameProperty::Serial => (0..n).all(|w| !m.successors(w).is_empty()),
            FrameProperty::Reflexive => (0..n).all(|w| m.has_edge(w, w)),
            FrameProperty::Symmetric => m.edges().all(|(a, b)| m.has_edge(b, a)),
            FrameProperty::Transitive => m
                .edges()
                .all(|(a, b)| m.successors(b).iter().all(|&c| m.has_edge(a, c))),
            FrameProperty::Euclidean => (0..n).all(|w| {
                let s = m.successors(w);
                s.iter().all(|&u| s.iter().all(|&v| m.has_edge(u, v)))
            }),
        }
    }
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn frame_properties(m: &KripkeModel) -> BTreeSet<FrameProperty> {
    FrameProperty::ALL
        .into_iter()
        .filter(|p| p.holds(m))
        .collect()
}

/// The classes of frames the search and the random generator can be restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameClass {
    K,
    T,
    K4,
    K5,
    S4,
    S5,
    Serial,
}

impl FrameClass {
    pub const ALL: [FrameClass; 7] = [
        FrameClass::K,
        FrameClass::T,
        FrameClass::K4,
        FrameClass::K5,
        FrameClass::S4,
        FrameClass::S5,
        FrameClass::Serial,
    ];

    pub fn required(self) -> &'static [FrameProperty] {
        use FrameProperty::*;
        match self {
            FrameClass::K => &[],
            FrameClass::T => &[Reflexive],
            FrameClass::K4 => &[Transitive],
            FrameClass::K5 => &[Euclidean],
            FrameClass::S4 => &[Reflexive, Transitive],
            FrameClass::S5 => &[Reflexive, Symmetric, Transitive],
            FrameClass::Serial => &[Serial],
        }
    }

    pub fn admits(self, m: &KripkeModel) -> bool {
        self.required().iter().all(|p| p.holds(m))
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::K => "K",
            FrameClass::T => "T",
            FrameClass::K4 => "K4",
            FrameClass::K5 => "K5",
            FrameClass::S4 => "S4",
            FrameClass::S5 => "S5",
            FrameClass::Serial => "serial",
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<FrameClass> {
        FrameClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s) || (s.eq_ignore_ascii_case("d") && *c == FrameClass::Serial))
            .ok_or_else(|| Error::InvalidSearch(format!("unknown frame class {s:?}")))
    }
}

/// The largest bisimulation between the two models, as a matrix indexed by
/// `(world of a, world of b)`.
pub fn greatest_bisimulation(a: &KripkeModel, b: &KripkeModel) -> Vec<Vec<bool>> {
    let mut rel: Vec<Vec<bool>> = (0..a.len())
        .map(|x| (0..b.len()).map(|y| a.valuation(x) == b.valuation(y)).collect())
        .collect();
    loop {
        let mut changed = false;
        for x in 0..a.len() {
            for y in 0..b.len() {
                if !rel[x][y] {
                    continue;
                }
                let zig = a
                    .successors(x)
                    .iter()
                    .all(|&x2| b.successors(y).iter().any(|&y2| rel[x2][y2]));
                let zag = b
                    .successors(y)
                    .iter()
                    .all(|&y2| a.successors(x).iter().any(|&x2| rel[x2][y2]));
                if !(zig && zag) {
                    rel[x][y] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

pub fn bisimilar(p: &PointedModel, q: &PointedModel) -> bool {
    greatest_bisimulation(&p.model, &q.model)[p.point][q.point]
}

/// Colour refinement over the disjoint union of both models. Worlds with
/// different final colours cannot correspond under any isomorphism.
fn refine_colours(a: &KripkeModel, b: &KripkeModel) -> (Vec<usize>, Vec<usize>) {
    let worlds: Vec<(&KripkeModel, usize)> = (0..a.len())
        .map(|w| (a, w))
        .chain((0..b.len()).map(|w| (b, w)))
        .collect();
    let preds = |m: &KripkeModel| {
        let mut p = vec![Vec::new(); m.len()];
        for (x, y) in m.edges() {
            p[y].push(x);
        }
        p
    };
    let (pa, pb) = (preds(a), preds(b));
    let initial: Vec<(Vec<&str>, bool)> = worlds
        .iter()
        .map(|&(m, w)| {
            (
                m.valuation(w).iter().map(Atom::name).collect(),
                m.has_edge(w, w),
            )
        })
        .collect();
    let mut colour = densify(&initial);
    let mut classes = colour.iter().collect::<BTreeSet<_>>().len();
    loop {
        let offset_b = a.len();
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = worlds
            .iter()
            .enumerate()
            .map(|(i, &(m, w))| {
                let (base, pred) = if i < offset_b { (0, &pa) } else { (offset_b, &pb) };
                let mut out: Vec<usize> = m.successors(w).iter().map(|&v| colour[base + v]).collect();
                let mut inc: Vec<usize> = pred[w].iter().map(|&v| colour[base + v]).collect();
                out.sort_unstable();
                inc.sort_unstable();
                (colour[i], out, inc)
            })
            .collect();
        let next = densify(&keys);
        let next_classes = next.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let split = colour.split_off(a.len());
    (colour, split)
}

fn densify<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let ids: BTreeMap<K, usize> = keys
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    keys.iter().map(|k| ids[k]).collect()
}

/// A bijection from `a`'s worlds onto `b`'s preserving the relation and the
/// valuation in both directions, keyed by world label. `Ok(None)` when the
/// models are not isomorphic.
pub fn isomorphic(
    a: &KripkeModel,
    b: &KripkeModel,
    max_worlds: usize,
) -> Result<Option<BTreeMap<String, String>>> {
    let n = a.len().max(b.len());
    if n > max_worlds {
        return Err(Error::Cap {
            what: "isomorphism search worlds",
            requested: n as u128,
            cap: max_worlds as u128,
        });
    }
    if a.len() != b.len() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let (ca, cb) = refine_colours(a, b);
    let hist = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if hist(&ca) != hist(&cb) {
        return Ok(None);
    }
    // Most constrained worlds first.
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &ca {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&w| (class_size[&ca[w]], w));

    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    if extend_iso(a, b, &ca, &cb, &order, 0, &mut map, &mut used) {
        Ok(Some(
            map.iter()
                .enumerate()
                .map(|(x, &y)| (a.label(x).to_string(), b.label(y).to_string()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    a: &KripkeModel,
    b: &KripkeModel,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in 0..b.len() {
        if used[y] || cb[y] != ca[x] || a.valuation(x) != b.valuation(y) {
            continue;
        }
        if a.has_edge(x, x) != b.has_edge(y, y) {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let v = map[u];
            a.has_edge(x, u) == b.has_edge(y, v) && a.has_edge(u, x) == b.has_edge(v, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend_iso(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// The submodel on the worlds reachable from the point (including the point).
pub fn generated_submodel(p: &PointedModel) -> PointedModel {
    let m = &p.model;
    let mut seen = WorldSet::empty(m.len());
    let mut queue = VecDeque::from([p.point]);
    seen.insert(p.point);
    while let Some(w) = queue.pop_front() {
        for &v in m.successors(w) {
            if !seen.contains(v) {
                seen.insert(v);
                queue.push_back(v);
            }
        }
    }
    let (model, index) = m.restrict(&seen).expect("the point is always kept");
    PointedModel {
        model,
        point: index[p.point].expect("the point is always kept"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| Atom::new(n).unwrap()).collect()
    }

    fn model(worlds: &[(&str, &[&str])], edges: &[(&str, &str)]) -> KripkeModel {
        KripkeModel::new(
            worlds.iter().map(|(w, _)| w.to_string()),
            edges.iter().map(|(a, b)| (a.to_string(), b.to_string())),
            worlds.iter().map(|(w, v)| (w.to_string(), atoms(v))),
        )
        .unwrap()
    }

    fn example1() -> KripkeModel {
        model(&[("w0", &["p"]), ("w1", &["p"])], &[("w0", "w0"), ("w0", "w1")])
    }

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn construction_errors() {
        let none: [(String, String); 0] = [];
        let nov: [(String, Vec<Atom>); 0] = [];
        assert!(KripkeModel::new(Vec::<String>::new(), none.clone(), nov.clone()).is_err());
        assert!(KripkeModel::new(["a", "a"], none.clone(), nov.clone()).is_err());
        assert!(KripkeModel::new(["a"], [("a".to_string(), "b".to_string())], nov).is_err());
        assert!(KripkeModel::new(["a"], none, [("z".to_string(), vec![])]).is_err());
    }

    #[test]
    fn basic_satisfaction() {
        let m = example1();
        assert!(eval_basic(&m, "w0", &f("K p")).unwrap());
        assert!(eval_basic(&m, "w1", &f("T")).unwrap());
        assert!(eval_basic(&m, "w1", &f("K F")).unwrap());
        assert!(!eval_basic(&m, "w0", &f("K F")).unwrap());
        assert!(eval_basic(&m, "w0", &f("<K> p & (p -> K p) & (p <-> p)")).unwrap());
        assert!(matches!(
            eval_basic(&m, "nope", &f("T")),
            Err(Error::UnknownWorld(_))
        ));
        assert!(matches!(
            eval_basic(&m, "w0", &f("[fw p] T")),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn extensions() {
        let m = example1();
        assert_eq!(extension(&m, &f("p")).unwrap().iter().collect::<Vec<_>>(), [0, 1]);
        assert!(extension(&m, &f("T")).unwrap().is_full());
        assert!(extension(&m, &f("F")).unwrap().is_empty());
    }

    #[test]
    fn frame_property_examples() {
        let loop1 = model(&[("a", &[])], &[("a", "a")]);
        assert_eq!(frame_properties(&loop1).len(), 5);
        let props = frame_properties(&example1());
        assert!(!props.contains(&FrameProperty::Serial));
        assert!(!props.contains(&FrameProperty::Reflexive));
        assert!(props.contains(&FrameProperty::Transitive));
        assert!(!props.contains(&FrameProperty::Symmetric));
        // w0's successors are w0 and w1, but w1 -> w0 is missing.
        assert!(!props.contains(&FrameProperty::Euclidean));
        let full = model(
            &[("a", &[]), ("b", &[])],
            &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
        );
        assert_eq!(frame_properties(&full).len(), 5);
        assert!(FrameClass::S5.admits(&full));
        assert!(!FrameClass::T.admits(&example1()));
        assert!(FrameClass::K4.admits(&example1()));
    }

    #[test]
    fn frame_class_names() {
        for c in FrameClass::ALL {
            assert_eq!(c.name().parse::<FrameClass>().unwrap(), c);
        }
        assert!("S7".parse::<FrameClass>().is_err());
    }

    #[test]
    fn bisimulation_examples() {
        let m = example1();
        let p = m.clone().at("w0").unwrap();
        assert!(bisimilar(&p, &p));
        let dup = model(
            &[("w0", &["p"]), ("w1", &["p"]), ("w1b", &["p"])],
            &[("w0", "w0"), ("w0", "w1"), ("w0", "w1b")],
        );
        assert!(bisimilar(&p, &dup.at("w0").unwrap()));
        let q = m.at("w1").unwrap();
        assert!(!bisimilar(&p, &q));
    }

    #[test]
    fn isomorphism_examples() {
        let m = example1();
        let id = isomorphic(&m, &m, 12).unwrap().unwrap();
        assert_eq!(id["w0"], "w0");
        assert_eq!(id["w1"], "w1");
        let other = model(&[("w0", &["p"]), ("w1", &[])], &[("w0", "w0"), ("w0", "w1")]);
        assert_eq!(isomorphic(&m, &other, 12).unwrap(), None);
        let renamed = model(&[("b", &["p"]), ("a", &["p"])], &[("a", "a"), ("a", "b")]);
        let map = isomorphic(&m, &renamed, 12).unwrap().unwrap();
        assert_eq!(map["w0"], "a");
        assert_eq!(map["w1"], "b");
        assert!(isomorphic(&m, &m, 1).unwrap_err().is_cap());
    }

    #[test]
    fn generated_submodels() {
        let m = example1();
        let whole = generated_submodel(&m.clone().at("w0").unwrap());
        assert_eq!(whole.model, m);
        let leaf = generated_submodel(&m.at("w1").unwrap());
        assert_eq!(leaf.model.len(), 1);
        assert_eq!(leaf.model.edge_count(), 0);
        assert_eq!(leaf.point_label(), "w1");
    }
}
