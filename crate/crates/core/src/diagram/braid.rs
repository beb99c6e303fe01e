use crate::error::{Error, Result};

use super::{Crossing, EdgeId, LinkDiagram};

/// PD crossing for a braid generator with the given bottom and top edges.
/// Positive generators have the identity braid as their 0-smoothing.
pub(crate) fn braid_crossing(positive: bool, bl: EdgeId, br: EdgeId, tl: EdgeId, tr: EdgeId) -> Crossing {
    if positive {
        Crossing::new(br, tr, tl, bl)
    } else {
        Crossing::new(bl, br, tr, tl)
    }
}

/// Closure of a braid word on `n` strands; letter `±i` is `σ_i^{±1}`.
pub fn braid_closure(n: usize, word: &[i32]) -> Result<LinkDiagram> {
    if n == 0 {
        return Err(Error::InvalidDiagram("braid on zero strands".into()));
    }
    let mut cur: Vec<EdgeId> = (1..=n as EdgeId).collect();
    let mut next = n as EdgeId + 1;
    let mut crossings = vec![];
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= n {
            return Err(Error::InvalidDiagram(format!("generator {g} out of range for {n} strands")));
        }
        let (tl, tr) = (next, next + 1);
        next += 2;
        crossings.push(braid_crossing(g > 0, cur[i - 1], cur[i], tl, tr));
        cur[i - 1] = tl;
        cur[i] = tr;
    }
    let mut circles = vec![];
    for (p, &e) in cur.iter().enumerate() {
        let start = p as EdgeId + 1;
        if e == start {
            circles.push(start);
        } else {
            for x in crossings.iter_mut() {
                for s in x.edges.iter_mut() {
                    if *s == e {
                        *s = start;
                    }
                }
            }
        }
    }
    LinkDiagram::new(crossings, circles)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinkSign {
    Positive,
    Negative,
}

/// Insert a Reidemeister I loop on edge `e`. Colors and basepoints are kept;
/// framings reset to the new self-writhe.
pub fn add_kink(d: &LinkDiagram, e: EdgeId, sign: KinkSign) -> Result<LinkDiagram> {
    d.component_of(e).ok_or_else(|| Error::InvalidDiagram(format!("no edge {e}")))?;
    let mut crossings = d.crossings().to_vec();
    let mut circles = d.circles().to_vec();
    let l = d.max_edge() + 1;
    let q = if let Some([_, head]) = d.ends(e) {
        let q = l + 1;
        crossings[head.crossing].edges[head.pos as usize] = q;
        q
    } else {
        circles.retain(|&c| c != e);
        e
    };
    crossings.push(match sign {
        KinkSign::Positive => Crossing::new(q, e, l, l),
        KinkSign::Negative => Crossing::new(e, l, l, q),
    });
    let mut out = LinkDiagram::new(crossings, circles)?;
    carry_settings(d, &mut out, 0)?;
    Ok(out)
}

fn carry_settings(from: &LinkDiagram, to: &mut LinkDiagram, offset: EdgeId) -> Result<()> {
    for c in from.components() {
        let min = *c.edges.iter().min().unwrap() + offset;
        let k = to.component_of(min).expect("component survives relabelling");
        to.set_color(k, c.color)?;
        to.set_basepoint(k, c.basepoint + offset)?;
    }
    Ok(())
}

/// Split union; edge ids of `b` are shifted past those of `a`.
pub fn disjoint_union(a: &LinkDiagram, b: &LinkDiagram) -> Result<LinkDiagram> {
    let off = a.max_edge();
    let mut crossings = a.crossings().to_vec();
    crossings.extend(b.crossings().iter().map(|x| {
        let e = x.edges;
        Crossing::new(e[0] + off, e[1] + off, e[2] + off, e[3] + off)
    }));
    let mut circles = a.circles().to_vec();
    circles.extend(b.circles().iter().map(|c| c + off));
    let mut out = LinkDiagram::new(crossings, circles)?;
    carry_settings(a, &mut out, 0)?;
    carry_settings(b, &mut out, off)?;
    Ok(out)
}
