use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

use super::braid::braid_crossing;
use super::{Crossing, EdgeId, LinkDiagram, Slot, Tangle};

/// One parallel strand at a cut-site. `tail` is the crossing slot where the
/// strand's edge starts (in the cut-site direction); `None` on a circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Strand {
    pub edge: EdgeId,
    pub tail: Option<Slot>,
}

/// The lifted basepoint of one component: its parallel copies, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutSite {
    pub component: usize,
    pub color: u32,
    pub strands: Vec<Strand>,
}

/// Labels of an opened cut-site: strand `p` runs from `bottom[p]` to `top[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSite {
    pub bottom: Vec<EdgeId>,
    pub top: Vec<EdgeId>,
}

/// Blackboard cable of a colored diagram, with twist regions inserted so far.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CabledDiagram {
    pub diagram: LinkDiagram,
    pub sites: Vec<CutSite>,
    pub twist_regions: Vec<Vec<usize>>,
    crossings: Vec<Crossing>,
    circles: Vec<EdgeId>,
    next_edge: EdgeId,
}

/// Replace every component `k` by `color(k)` parallel copies.
pub fn cable(link: &LinkDiagram) -> Result<CabledDiagram> {
    let mut next: EdgeId = 1;
    let mut copy: BTreeMap<(EdgeId, u32), EdgeId> = BTreeMap::new();
    let mut circles = vec![];
    for comp in link.components() {
        for &e in &comp.edges {
            for t in 0..comp.color {
                copy.insert((e, t), next);
                if comp.is_circle {
                    circles.push(next);
                }
                next += 1;
            }
        }
    }
    let color_of = |e: EdgeId| link.components()[link.component_of(e).unwrap()].color;
    let mut crossings = vec![];
    let mut tails: BTreeMap<EdgeId, Slot> = BTreeMap::new();
    for (xi, x) in link.crossings().iter().enumerate() {
        let [a, b, c, d] = x.edges;
        let (c1, c2) = (color_of(a), color_of(b));
        let enters = |e: EdgeId, pos: u8| link.ends(e).unwrap()[1] == Slot::new(xi, pos);
        let leaves = |e: EdgeId, pos: u8| link.ends(e).unwrap()[0] == Slot::new(xi, pos);
        let frame = |same: bool, i: u32, n: u32| if same { i } else { n - 1 - i };

        let base = crossings.len();
        let at = |i: u32, j: u32| base + (i * c2 + j) as usize;
        let mut fresh = || {
            next += 1;
            next - 1
        };
        // vertical lines are the copies of the under-strand a→c, horizontal of b→d
        let mut v = vec![vec![0; c2 as usize + 1]; c1 as usize];
        let mut h = vec![vec![0; c1 as usize + 1]; c2 as usize];
        for i in 0..c1 {
            let ca = copy[&(a, frame(enters(a, 0), i, c1))];
            let cc = copy[&(c, frame(leaves(c, 2), i, c1))];
            v[i as usize][0] = ca;
            v[i as usize][c2 as usize] = cc;
            for k in 1..c2 {
                v[i as usize][k as usize] = fresh();
            }
            if leaves(a, 0) {
                tails.insert(ca, Slot::new(at(i, 0), 0));
            }
            if leaves(c, 2) {
                tails.insert(cc, Slot::new(at(i, c2 - 1), 2));
            }
        }
        for j in 0..c2 {
            let cd = copy[&(d, frame(leaves(d, 3), j, c2))];
            let cb = copy[&(b, frame(enters(b, 1), j, c2))];
            h[j as usize][0] = cd;
            h[j as usize][c1 as usize] = cb;
            for k in 1..c1 {
                h[j as usize][k as usize] = fresh();
            }
            if leaves(d, 3) {
                tails.insert(cd, Slot::new(at(0, j), 3));
            }
            if leaves(b, 1) {
                tails.insert(cb, Slot::new(at(c1 - 1, j), 1));
            }
        }
        for i in 0..c1 as usize {
            for j in 0..c2 as usize {
                crossings.push(Crossing::new(v[i][j], h[j][i + 1], v[i][j + 1], h[j][i]));
            }
        }
    }
    let sites = link
        .components()
        .iter()
        .enumerate()
        .map(|(k, comp)| CutSite {
            component: k,
            color: comp.color,
            strands: (0..comp.color)
                .map(|t| {
                    let edge = copy[&(comp.basepoint, t)];
                    Strand { edge, tail: tails.get(&edge).copied() }
                })
                .collect(),
        })
        .collect();
    let diagram = LinkDiagram::new(crossings.clone(), circles.clone())?;
    Ok(CabledDiagram {
        diagram,
        twist_regions: vec![vec![]; link.components().len()],
        sites,
        crossings,
        circles,
        next_edge: next,
    })
}

impl CabledDiagram {
    fn fresh(&mut self) -> EdgeId {
        self.next_edge += 1;
        self.next_edge - 1
    }

    /// Insert `t` rows of `σ_1 ⋯ σ_{n-1}` at cut-site `site`, where `n` must be
    /// its strand count. Adds `t(n-1)` positive crossings whose all-0
    /// resolution is the identity braid.
    pub fn insert_twists(&mut self, site: usize, n: usize, t: usize) -> Result<()> {
        let strands =
            self.sites.get(site).ok_or_else(|| Error::InvalidDiagram(format!("no cut-site {site}")))?.strands.clone();
        if strands.len() != n {
            return Err(Error::InvalidDiagram(format!("cut-site {site} has {} strands, not {n}", strands.len())));
        }
        if n < 2 || t == 0 {
            return Ok(());
        }
        let mut cur = Vec::with_capacity(n);
        for s in &strands {
            match s.tail {
                Some(slot) => {
                    let b = self.fresh();
                    self.crossings[slot.crossing].edges[slot.pos as usize] = b;
                    cur.push(b);
                }
                None => {
                    self.circles.retain(|&c| c != s.edge);
                    cur.push(s.edge);
                }
            }
        }
        let mut top_slot = vec![None; n];
        for _ in 0..t {
            for i in 0..n - 1 {
                let (tl, tr) = (self.fresh(), self.fresh());
                let x = self.crossings.len();
                self.crossings.push(braid_crossing(true, cur[i], cur[i + 1], tl, tr));
                self.twist_regions[self.sites[site].component].push(x);
                cur[i] = tl;
                cur[i + 1] = tr;
                top_slot[i] = Some(Slot::new(x, 2));
                top_slot[i + 1] = Some(Slot::new(x, 1));
            }
        }
        for (p, s) in strands.iter().enumerate() {
            let slot = top_slot[p].expect("every strand passes a crossing");
            self.crossings[slot.crossing].edges[slot.pos as usize] = s.edge;
            self.sites[site].strands[p].tail = Some(slot);
        }
        self.diagram = LinkDiagram::new(self.crossings.clone(), self.circles.clone())?;
        Ok(())
    }

    /// Cut the given sites open. Returns the resulting tangle and, per site,
    /// the labels of the new boundary ends.
    pub fn open_sites(&self, which: &[usize]) -> Result<(Tangle, Vec<OpenSite>)> {
        let mut me = self.clone();
        let mut opened = vec![];
        let mut free_arcs = vec![];
        for &site in which {
            let strands =
                me.sites.get(site).ok_or_else(|| Error::InvalidDiagram(format!("no cut-site {site}")))?.strands.clone();
            let mut os = OpenSite { bottom: vec![], top: vec![] };
            for s in &strands {
                let b = me.fresh();
                match s.tail {
                    Some(slot) => me.crossings[slot.crossing].edges[slot.pos as usize] = b,
                    None => {
                        me.circles.retain(|&c| c != s.edge);
                        free_arcs.push((b, s.edge));
                    }
                }
                os.bottom.push(b);
                os.top.push(s.edge);
            }
            opened.push(os);
        }
        let mut t = Tangle { crossings: me.crossings, circles: me.circles, free_arcs, boundary: vec![] };
        t.boundary = opened.iter().flat_map(|o| o.bottom.iter().chain(o.top.iter()).copied()).collect();
        Ok((t, opened))
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}
