//! Complexes of flat tangles with dotted-cobordism differentials.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::cobordism::{compose_morphisms, identity, Cycles, FlatTangle, Gluing, Label, Morphism, Smoothing};
use crate::error::{Error, Result};

/// A bigraded complex over the cobordism category of a tangle with boundary
/// points labelled by `labels`. Differentials raise `h2` by 2 and preserve
/// total quantum grading. Objects are addressed by index; removed objects
/// leave holes until [`TangleComplex::compact`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TangleComplex {
    labels: Vec<Label>,
    objects: Vec<FlatTangle>,
    alive: Vec<bool>,
    out: Vec<BTreeMap<usize, Morphism>>,
    inc: Vec<BTreeSet<usize>>,
    live: usize,
}

impl TangleComplex {
    pub fn new(labels: Vec<Label>) -> Self {
        TangleComplex { labels, ..Default::default() }
    }

    /// The complex of the empty tangle: one empty object in degree (0, 0).
    pub fn unit() -> Self {
        let mut c = Self::new(vec![]);
        c.add_object(FlatTangle::new(Smoothing::empty(), 0, 0));
        c
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Rename boundary labels position by position.
    pub fn relabel(&mut self, labels: Vec<Label>) -> Result<()> {
        if labels.len() != self.labels.len() {
            return Err(Error::BoundaryMismatch(format!(
                "relabel with {} labels, complex has {}",
                labels.len(),
                self.labels.len()
            )));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn add_object(&mut self, obj: FlatTangle) -> usize {
        assert_eq!(obj.smoothing.len(), self.labels.len(), "object boundary size");
        self.objects.push(obj);
        self.alive.push(true);
        self.out.push(BTreeMap::new());
        self.inc.push(BTreeSet::new());
        self.live += 1;
        self.objects.len() - 1
    }

    /// Number of live objects.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Upper bound for object indices (including removed ones).
    pub fn capacity(&self) -> usize {
        self.objects.len()
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    pub fn object(&self, i: usize) -> &FlatTangle {
        &self.objects[i]
    }

    pub fn objects(&self) -> impl Iterator<Item = (usize, &FlatTangle)> {
        self.objects.iter().enumerate().filter(|(i, _)| self.alive[*i])
    }

    pub fn entry(&self, from: usize, to: usize) -> Option<&Morphism> {
        self.out[from].get(&to)
    }

    pub fn out_entries(&self, from: usize) -> &BTreeMap<usize, Morphism> {
        &self.out[from]
    }

    pub fn in_sources(&self, to: usize) -> &BTreeSet<usize> {
        &self.inc[to]
    }

    /// Set the differential entry `from → to`; a zero morphism deletes it.
    pub fn set_entry(&mut self, from: usize, to: usize, m: Morphism) {
        if m.is_zero() {
            self.out[from].remove(&to);
            self.inc[to].remove(&from);
        } else {
            self.out[from].insert(to, m);
            self.inc[to].insert(from);
        }
    }

    pub fn add_to_entry(&mut self, from: usize, to: usize, m: &Morphism) {
        let sum = match self.out[from].get(&to) {
            Some(old) => old.add(m),
            None => m.clone(),
        };
        self.set_entry(from, to, sum);
    }

    /// Remove an object together with all entries touching it.
    pub fn remove_object(&mut self, i: usize) {
        if !self.alive[i] {
            return;
        }
        for j in std::mem::take(&mut self.out[i]).into_keys() {
            self.inc[j].remove(&i);
        }
        for j in std::mem::take(&mut self.inc[i]) {
            self.out[j].remove(&i);
        }
        self.alive[i] = false;
        self.live -= 1;
    }

    /// Renumber live objects consecutively, preserving order.
    pub fn compact(&mut self) {
        if self.live == self.objects.len() {
            return;
        }
        let mut map = vec![usize::MAX; self.objects.len()];
        let mut next = 0;
        for (i, m) in map.iter_mut().enumerate() {
            if self.alive[i] {
                *m = next;
                next += 1;
            }
        }
        let mut c = TangleComplex::new(self.labels.clone());
        for (i, obj) in self.objects() {
            let k = c.add_object(obj.clone());
            debug_assert_eq!(k, map[i]);
        }
        for i in 0..self.objects.len() {
            if self.alive[i] {
                for (j, m) in &self.out[i] {
                    c.out[map[i]].insert(map[*j], m.clone());
                    c.inc[map[*j]].insert(map[i]);
                }
            }
        }
        *self = c;
    }

    pub fn shift(&self, dh2: i32, dq2: i32) -> TangleComplex {
        let mut c = self.clone();
        for o in c.objects.iter_mut() {
            o.h2 += dh2;
            o.q2 += dq2;
        }
        c
    }

    pub fn entry_count(&self) -> usize {
        self.out.iter().map(|m| m.len()).sum()
    }

    /// Check the grading rules for every entry and `d∘d = 0`.
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.objects() {
            for (&j, m) in &self.out[i] {
                let b = &self.objects[j];
                if b.h2 != a.h2 + 2 {
                    return Err(Error::Invariant(format!("entry {i}->{j} goes from h2={} to h2={}", a.h2, b.h2)));
                }
                let cyc = Cycles::of(&a.smoothing, &b.smoothing);
                for &(mask, _) in m.terms() {
                    if 2 * cyc.degree(mask) + b.q2 - a.q2 != 0 {
                        return Err(Error::Invariant(format!("entry {i}->{j} does not preserve quantum grading")));
                    }
                }
            }
        }
        let bad = (0..self.objects.len()).into_par_iter().find_first(|&i| {
            if !self.alive[i] {
                return false;
            }
            let mut acc: BTreeMap<usize, Morphism> = BTreeMap::new();
            for (&j, g) in &self.out[i] {
                for (&k, f) in &self.out[j] {
                    let fg = compose_morphisms(
                        &self.objects[i].smoothing,
                        &self.objects[j].smoothing,
                        &self.objects[k].smoothing,
                        f,
                        g,
                    );
                    let e = acc.entry(k).or_default();
                    *e = e.add(&fg);
                }
            }
            acc.values().any(|m| !m.is_zero())
        });
        match bad {
            Some(i) => Err(Error::Invariant(format!("d∘d ≠ 0 starting at object {i}"))),
            None => Ok(()),
        }
    }

    /// JSON debug dump: objects with shifts and entries as term lists.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Obj {
            index: usize,
            matching: Vec<(usize, usize)>,
            circles: u32,
            h2: i32,
            q2: i32,
        }
        #[derive(Serialize)]
        struct Entry<'a> {
            from: usize,
            to: usize,
            terms: &'a [(u64, i64)],
        }
        let objects: Vec<Obj> = self
            .objects()
            .map(|(index, o)| Obj {
                index,
                matching: o.smoothing.pairs(),
                circles: o.smoothing.circles(),
                h2: o.h2,
                q2: o.q2,
            })
            .collect();
        let entries: Vec<Entry> = self
            .objects()
            .flat_map(|(i, _)| self.out[i].iter().map(move |(&j, m)| Entry { from: i, to: j, terms: m.terms() }))
            .collect();
        serde_json::json!({ "labels": self.labels, "objects": objects, "differential": entries })
    }
}

/// Two-object complex of one crossing `X[a,b,c,d]`: the 0-smoothing (a–b, c–d)
/// at (−1, −1), the 1-smoothing (a–d, b–c) at (+1, +1), joined by a saddle.
pub fn crossing_complex(edges: [Label; 4]) -> TangleComplex {
    let mut c = TangleComplex::new(edges.to_vec());
    let zero = Smoothing::from_pairs(4, &[(0, 1), (2, 3)], 0).unwrap();
    let one = Smoothing::from_pairs(4, &[(0, 3), (1, 2)], 0).unwrap();
    let i = c.add_object(FlatTangle::new(zero, -1, -1));
    let j = c.add_object(FlatTangle::new(one, 1, 1));
    c.set_entry(i, j, Morphism::scalar(1));
    c
}

/// Complex of a free arc with both ends open.
pub fn arc_complex(a: Label, b: Label) -> TangleComplex {
    let mut c = TangleComplex::new(vec![a, b]);
    c.add_object(FlatTangle::new(Smoothing::from_pairs(2, &[(0, 1)], 0).unwrap(), 0, 0));
    c
}

/// Complex of a crossingless circle.
pub fn circle_complex() -> TangleComplex {
    let mut c = TangleComplex::new(vec![]);
    c.add_object(FlatTangle::new(Smoothing::circle(), 0, 0));
    c
}

/// Sign of the right factor's differential in a tensor product.
fn koszul(h2: i32) -> i64 {
    if h2.div_euclid(2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Planar tensor product: boundary points with equal labels are joined.
/// The result's boundary keeps the unmatched points, left ones first.
pub fn tensor(a: &TangleComplex, b: &TangleComplex) -> Result<TangleComplex> {
    let gluing = Gluing::new(&a.labels, &b.labels)?;
    let mut c = TangleComplex::new(gluing.labels().to_vec());
    let ai: Vec<usize> = a.objects().map(|(i, _)| i).collect();
    let bi: Vec<usize> = b.objects().map(|(i, _)| i).collect();
    let mut index = vec![vec![usize::MAX; b.objects.len()]; a.objects.len()];
    let mut glued = vec![];
    for &x in &ai {
        for &y in &bi {
            let (oa, ob) = (&a.objects[x], &b.objects[y]);
            let g = gluing.glue(&oa.smoothing, &ob.smoothing);
            index[x][y] = c.add_object(FlatTangle::new(g.smoothing.clone(), oa.h2 + ob.h2, oa.q2 + ob.q2));
            glued.push(g);
        }
    }
    let glued_of = |x: usize, y: usize| &glued[index[x][y]];
    let ida: Vec<Option<Morphism>> =
        (0..a.objects.len()).map(|x| a.alive[x].then(|| identity(&a.objects[x].smoothing))).collect();
    let idb: Vec<Option<Morphism>> =
        (0..b.objects.len()).map(|y| b.alive[y].then(|| identity(&b.objects[y].smoothing))).collect();
    let entries: Vec<Vec<(usize, usize, Morphism)>> = ai
        .par_iter()
        .map(|&x| {
            let mut v = vec![];
            let oa = &a.objects[x];
            for &y in &bi {
                let ob = &b.objects[y];
                let src = glued_of(x, y);
                for (&x2, f) in &a.out[x] {
                    let oa2 = &a.objects[x2];
                    let m = gluing.tensor(
                        &oa.smoothing,
                        &oa2.smoothing,
                        f,
                        &ob.smoothing,
                        &ob.smoothing,
                        idb[y].as_ref().unwrap(),
                        src,
                        glued_of(x2, y),
                    );
                    v.push((index[x][y], index[x2][y], m));
                }
                let s = koszul(oa.h2);
                for (&y2, g) in &b.out[y] {
                    let ob2 = &b.objects[y2];
                    let m = gluing.tensor(
                        &oa.smoothing,
                        &oa.smoothing,
                        ida[x].as_ref().unwrap(),
                        &ob.smoothing,
                        &ob2.smoothing,
                        g,
                        src,
                        glued_of(x, y2),
                    );
                    v.push((index[x][y], index[x][y2], m.scaled(s)));
                }
            }
            v
        })
        .collect();
    for (i, j, m) in entries.into_iter().flatten() {
        c.add_to_entry(i, j, &m);
    }
    Ok(c)
}
