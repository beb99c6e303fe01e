//! Planar link and tangle diagrams in PD form.
//!
//! A crossing lists its four edges counterclockwise, starting with an edge
//! of the under-strand. Its 0-smoothing joins slots 0–1 and 2–3, its
//! 1-smoothing joins 0–3 and 1–2.

mod braid;
mod cable;
mod decompose;
mod pd;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};

pub use braid::{add_kink, braid_closure, disjoint_union, KinkSign};
pub use cable::{cable, CabledDiagram, CutSite, OpenSite, Strand};
pub use decompose::{decompose, Piece, TangleDecomposition};
pub use pd::parse_pd;

pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Crossing {
    pub edges: [EdgeId; 4],
}

impl Crossing {
    pub fn new(a: EdgeId, b: EdgeId, c: EdgeId, d: EdgeId) -> Self {
        Crossing { edges: [a, b, c, d] }
    }

    pub const ZERO_SMOOTHING: [(usize, usize); 2] = [(0, 1), (2, 3)];
    pub const ONE_SMOOTHING: [(usize, usize); 2] = [(0, 3), (1, 2)];
}

/// A crossing slot: `(crossing index, position 0..4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub crossing: usize,
    pub pos: u8,
}

impl Slot {
    pub fn new(crossing: usize, pos: u8) -> Self {
        Slot { crossing, pos }
    }

    fn opposite(self) -> Slot {
        Slot { crossing: self.crossing, pos: (self.pos + 2) % 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Edges in traversal order.
    pub edges: Vec<EdgeId>,
    pub color: u32,
    pub framing: i64,
    pub writhe: i64,
    pub basepoint: EdgeId,
    /// True for a crossingless circle.
    pub is_circle: bool,
}

/// Closed link diagram with per-component color, framing and basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    circles: Vec<EdgeId>,
    components: Vec<Component>,
    /// `[tail, head]` of every crossing edge, in traversal orientation.
    ends: BTreeMap<EdgeId, [Slot; 2]>,
    comp_of_edge: BTreeMap<EdgeId, usize>,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>, circles: Vec<EdgeId>) -> Result<Self> {
        let mut occ: BTreeMap<EdgeId, Vec<Slot>> = BTreeMap::new();
        for (i, x) in crossings.iter().enumerate() {
            for (p, &e) in x.edges.iter().enumerate() {
                occ.entry(e).or_default().push(Slot::new(i, p as u8));
            }
        }
        for (e, v) in &occ {
            if v.len() != 2 {
                return Err(Error::InvalidDiagram(format!("edge {e} has {} endpoints, expected 2", v.len())));
            }
        }
        let mut circle_set = BTreeSet::new();
        for &c in &circles {
            if occ.contains_key(&c) || !circle_set.insert(c) {
                return Err(Error::InvalidDiagram(format!("circle id {c} reused")));
            }
        }
        check_planar(&crossings, &occ)?;

        let other_end = |e: EdgeId, s: Slot| -> Slot {
            let v = &occ[&e];
            if v[0] == s {
                v[1]
            } else {
                v[0]
            }
        };
        let mut ends: BTreeMap<EdgeId, [Slot; 2]> = BTreeMap::new();
        let mut comp_of_edge = BTreeMap::new();
        let mut components = vec![];
        let mut all: Vec<EdgeId> = occ.keys().copied().chain(circles.iter().copied()).collect();
        all.sort_unstable();
        for &e0 in &all {
            if comp_of_edge.contains_key(&e0) {
                continue;
            }
            let k = components.len();
            let mut edges = vec![];
            if circle_set.contains(&e0) {
                edges.push(e0);
                comp_of_edge.insert(e0, k);
            } else {
                let start = occ[&e0][0];
                let mut e = e0;
                let mut tail = start;
                loop {
                    let head = other_end(e, tail);
                    ends.insert(e, [tail, head]);
                    comp_of_edge.insert(e, k);
                    edges.push(e);
                    tail = head.opposite();
                    e = crossings[tail.crossing].edges[tail.pos as usize];
                    if e == e0 && tail == start {
                        break;
                    }
                    if comp_of_edge.contains_key(&e) {
                        return Err(Error::InvalidDiagram(format!("edge {e} traversed twice")));
                    }
                }
            }
            components.push(Component {
                basepoint: *edges.iter().min().unwrap(),
                is_circle: circle_set.contains(&e0),
                edges,
                color: 1,
                framing: 0,
                writhe: 0,
            });
        }
        let mut d = LinkDiagram { crossings, circles, components, ends, comp_of_edge };
        for (i, x) in d.crossings.iter().enumerate() {
            let k0 = d.comp_of_edge[&x.edges[0]];
            let k1 = d.comp_of_edge[&x.edges[1]];
            if k0 == k1 {
                d.components[k0].writhe += d.crossing_sign(i);
            }
        }
        for c in d.components.iter_mut() {
            c.framing = c.writhe;
        }
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn circles(&self) -> &[EdgeId] {
        &self.circles
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, e: EdgeId) -> Option<usize> {
        self.comp_of_edge.get(&e).copied()
    }

    pub fn ends(&self, e: EdgeId) -> Option<[Slot; 2]> {
        self.ends.get(&e).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.comp_of_edge.keys().copied()
    }

    pub fn max_edge(&self) -> EdgeId {
        self.comp_of_edge.keys().next_back().copied().unwrap_or(0)
    }

    pub fn colors(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.color).collect()
    }

    /// Sign of a crossing with respect to the traversal orientation.
    pub fn crossing_sign(&self, i: usize) -> i64 {
        let x = &self.crossings[i];
        let under_ac = self.ends[&x.edges[0]][1] == Slot::new(i, 0);
        let over_db = self.ends[&x.edges[3]][1] == Slot::new(i, 3);
        if under_ac == over_db {
            1
        } else {
            -1
        }
    }

    pub fn set_color(&mut self, k: usize, color: u32) -> Result<()> {
        if color < 1 {
            return Err(Error::InvalidDiagram(format!("color {color} < 1")));
        }
        self.component_mut(k)?.color = color;
        Ok(())
    }

    pub fn set_colors(&mut self, colors: &[u32]) -> Result<()> {
        if colors.len() != self.components.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} colors given for {} components",
                colors.len(),
                self.components.len()
            )));
        }
        for (k, &c) in colors.iter().enumerate() {
            self.set_color(k, c)?;
        }
        Ok(())
    }

    pub fn set_framing(&mut self, k: usize, framing: i64) -> Result<()> {
        self.component_mut(k)?.framing = framing;
        Ok(())
    }

    pub fn set_basepoint(&mut self, k: usize, e: EdgeId) -> Result<()> {
        if self.comp_of_edge.get(&e) != Some(&k) {
            return Err(Error::InvalidDiagram(format!("basepoint edge {e} is not on component {}", k + 1)));
        }
        self.component_mut(k)?.basepoint = e;
        Ok(())
    }

    fn component_mut(&mut self, k: usize) -> Result<&mut Component> {
        let n = self.components.len();
        self.components
            .get_mut(k)
            .ok_or_else(|| Error::InvalidDiagram(format!("component {} out of range (have {n})", k + 1)))
    }

    pub fn to_tangle(&self) -> Tangle {
        Tangle { crossings: self.crossings.clone(), circles: self.circles.clone(), free_arcs: vec![], boundary: vec![] }
    }

    /// PD text accepted by [`parse_pd`].
    pub fn to_pd(&self) -> String {
        let mut s = String::new();
        for x in &self.crossings {
            let e = x.edges;
            s.push_str(&format!("X[{},{},{},{}]\n", e[0], e[1], e[2], e[3]));
        }
        for c in &self.circles {
            s.push_str(&format!("circle[{c}]\n"));
        }
        for (k, c) in self.components.iter().enumerate() {
            if c.color != 1 {
                s.push_str(&format!("color {} = {}\n", k + 1, c.color));
            }
            if c.framing != c.writhe {
                s.push_str(&format!("framing {} = {}\n", k + 1, c.framing));
            }
            if c.basepoint != *c.edges.iter().min().unwrap() {
                s.push_str(&format!("basepoint {} = {}\n", k + 1, c.basepoint));
            }
        }
        s
    }
}

fn check_planar(crossings: &[Crossing], occ: &BTreeMap<EdgeId, Vec<Slot>>) -> Result<()> {
    let n = crossings.len();
    if n == 0 {
        return Ok(());
    }
    let other = |s: Slot| -> Slot {
        let v = &occ[&crossings[s.crossing].edges[s.pos as usize]];
        if v[0] == s {
            v[1]
        } else {
            v[0]
        }
    };
    let mut seen = vec![[false; 4]; n];
    let mut faces = 0;
    for i in 0..n {
        for p in 0..4u8 {
            if seen[i][p as usize] {
                continue;
            }
            faces += 1;
            let mut s = Slot::new(i, p);
            while !seen[s.crossing][s.pos as usize] {
                seen[s.crossing][s.pos as usize] = true;
                let t = other(s);
                s = Slot::new(t.crossing, (t.pos + 1) % 4);
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for v in occ.values() {
        let (a, b) = (find(&mut parent, v[0].crossing), find(&mut parent, v[1].crossing));
        parent[a] = b;
    }
    let graph_components = (0..n).filter(|&i| find(&mut parent, i) == i).count() as i64;
    let euler = n as i64 - 2 * n as i64 + faces;
    if euler != 2 * graph_components {
        return Err(Error::InvalidDiagram(format!(
            "edge pairing is not planar (V-E+F = {euler}, expected {})",
            2 * graph_components
        )));
    }
    Ok(())
}

/// Diagram possibly with boundary: crossings, closed circles, crossingless
/// arcs, and the labels of boundary edge ends.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tangle {
    pub crossings: Vec<Crossing>,
    pub circles: Vec<EdgeId>,
    pub free_arcs: Vec<(EdgeId, EdgeId)>,
    pub boundary: Vec<EdgeId>,
}

impl Tangle {
    /// Edge labels and how often they occur among crossing slots and arc ends.
    pub fn label_counts(&self) -> BTreeMap<EdgeId, usize> {
        let mut m = BTreeMap::new();
        for x in &self.crossings {
            for &e in &x.edges {
                *m.entry(e).or_insert(0) += 1;
            }
        }
        for &(a, b) in &self.free_arcs {
            *m.entry(a).or_insert(0) += 1;
            *m.entry(b).or_insert(0) += 1;
        }
        m
    }

    /// Labels occurring exactly once, i.e. the open ends.
    pub fn open_ends(&self) -> Vec<EdgeId> {
        self.label_counts().into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_components() {
        let d = LinkDiagram::new(vec![Crossing::new(4, 1, 3, 2), Crossing::new(2, 3, 1, 4)], vec![]).unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.components()[0].edges, vec![1, 2]);
        assert_eq!(d.components()[1].edges, vec![3, 4]);
        assert!(d.components().iter().all(|c| c.writhe == 0 && c.framing == 0));
    }

    #[test]
    fn kinks_have_opposite_signs() {
        let pos = LinkDiagram::new(vec![Crossing::new(1, 1, 2, 2)], vec![]).unwrap();
        let neg = LinkDiagram::new(vec![Crossing::new(1, 2, 2, 1)], vec![]).unwrap();
        assert_eq!(pos.components().len(), 1);
        assert_eq!(pos.components()[0].writhe, 1);
        assert_eq!(neg.components()[0].writhe, -1);
    }

    #[test]
    fn rejects_bad_diagrams() {
        assert!(LinkDiagram::new(vec![Crossing::new(1, 3, 2, 4)], vec![]).is_err());
        // every edge used twice but not embeddable in the plane
        assert!(LinkDiagram::new(vec![Crossing::new(1, 2, 1, 2)], vec![]).is_err());
        assert!(LinkDiagram::new(vec![], vec![1, 1]).is_err());
    }

    #[test]
    fn basepoint_must_be_on_component() {
        let mut d = LinkDiagram::new(vec![Crossing::new(4, 1, 3, 2), Crossing::new(2, 3, 1, 4)], vec![]).unwrap();
        assert!(d.set_basepoint(0, 2).is_ok());
        assert!(d.set_basepoint(0, 3).is_err());
        assert!(d.set_color(1, 0).is_err());
    }
}
