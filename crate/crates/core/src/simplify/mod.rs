//! Delooping, Gauss elimination and the scanning fold.

mod cube;

use std::collections::BTreeSet;

use crate::cobordism::{compose_morphisms, Cycles, FlatTangle};
use crate::complex::{arc_complex, circle_complex, crossing_complex, tensor, TangleComplex};
use crate::diagram::{Piece, TangleDecomposition};
use crate::error::{Error, Result};

pub use cube::{naive_cube, DEFAULT_CROSSING_LIMIT};

/// Default per-step object cap.
pub const DEFAULT_OBJECT_CAP: usize = 1 << 20;

/// Object cap from `CKH_OBJECT_CAP`, falling back to [`DEFAULT_OBJECT_CAP`].
pub fn object_cap_from_env() -> usize {
    std::env::var("CKH_OBJECT_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_OBJECT_CAP)
}

/// Replace every object carrying closed circles by circle-free copies with
/// quantum shifts `±2` per circle (doubled units).
pub fn deloop(c: &TangleComplex) -> TangleComplex {
    let mut c = c.clone();
    let mut work: Vec<usize> = c.objects().filter(|(_, o)| o.smoothing.circles() > 0).map(|(i, _)| i).collect();
    work.reverse();
    while let Some(x) = work.pop() {
        let obj = c.object(x).clone();
        let k = obj.smoothing.circles();
        let smaller = obj.smoothing.with_circles(k - 1);
        let plus = c.add_object(FlatTangle::new(smaller.clone(), obj.h2, obj.q2 + 2));
        let minus = c.add_object(FlatTangle::new(smaller.clone(), obj.h2, obj.q2 - 2));
        let sources: Vec<usize> = c.in_sources(x).iter().copied().collect();
        for w in sources {
            let f = c.entry(w, x).unwrap().clone();
            let pos = Cycles::of(&c.object(w).smoothing, &obj.smoothing).tgt_circle(k as usize - 1);
            c.set_entry(w, plus, f.remove_bit(pos, false));
            c.set_entry(w, minus, f.remove_bit(pos, true));
        }
        let targets: Vec<(usize, _)> = c.out_entries(x).iter().map(|(&z, m)| (z, m.clone())).collect();
        for (z, g) in targets {
            let pos = Cycles::of(&obj.smoothing, &c.object(z).smoothing).src_circle(k as usize - 1);
            c.set_entry(plus, z, g.remove_bit(pos, true));
            c.set_entry(minus, z, g.remove_bit(pos, false));
        }
        c.remove_object(x);
        if k > 1 {
            work.push(minus);
            work.push(plus);
        }
    }
    c.compact();
    c
}

/// Whether `m: a → b` is `±1` times an isomorphism; returns the sign.
fn unit_iso(a: &FlatTangle, b: &FlatTangle, m: &crate::cobordism::Morphism) -> Option<i64> {
    if a.q2 != b.q2 || a.smoothing != b.smoothing || a.smoothing.circles() != 0 {
        return None;
    }
    m.unit_scalar()
}

/// Cancel isomorphism entries until none remain, lowest
/// `(h2, source, target)` first.
pub fn gauss_eliminate(c: &TangleComplex) -> TangleComplex {
    let mut c = c.clone();
    gauss_in_place(&mut c);
    c.compact();
    c
}

fn gauss_in_place(c: &mut TangleComplex) {
    let mut work: BTreeSet<(i32, usize)> = c.objects().map(|(i, o)| (o.h2, i)).collect();
    while let Some((_, x)) = work.pop_first() {
        if !c.is_alive(x) {
            continue;
        }
        let ox = c.object(x);
        let found = c.out_entries(x).iter().find_map(|(&y, m)| unit_iso(ox, c.object(y), m).map(|s| (y, s)));
        let Some((y, s)) = found else { continue };
        let ws: Vec<usize> = c.in_sources(y).iter().copied().filter(|&w| w != x).collect();
        let zs: Vec<usize> = c.out_entries(x).keys().copied().filter(|&z| z != y).collect();
        for &w in &ws {
            let beta = c.entry(w, y).unwrap().clone();
            for &z in &zs {
                let gamma = c.entry(x, z).unwrap();
                let upd = compose_morphisms(
                    &c.object(w).smoothing,
                    &c.object(y).smoothing,
                    &c.object(z).smoothing,
                    gamma,
                    &beta,
                )
                .scaled(-s);
                c.add_to_entry(w, z, &upd);
            }
            work.insert((c.object(w).h2, w));
        }
        c.remove_object(x);
        c.remove_object(y);
    }
}

/// Options for [`scan`].
#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub object_cap: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { object_cap: object_cap_from_env() }
    }
}

/// Object counts observed while scanning.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// Objects right after each tensor step, before reduction.
    pub peak_per_step: Vec<usize>,
    /// Objects after each step's reduction.
    pub reduced_per_step: Vec<usize>,
}

impl ScanStats {
    pub fn max_objects(&self) -> usize {
        self.peak_per_step.iter().copied().max().unwrap_or(0)
    }
}

fn reduce(c: &TangleComplex) -> TangleComplex {
    let mut d = deloop(c);
    gauss_in_place(&mut d);
    d.compact();
    d
}

/// Fold the pieces into one complex, delooping and eliminating after every
/// gluing. `blocks[id]` supplies the complex of `Piece::Block { id, .. }`,
/// whose labels must match the piece.
pub fn scan(
    dec: &TangleDecomposition,
    blocks: &[TangleComplex],
    opts: &ScanOptions,
) -> Result<(TangleComplex, ScanStats)> {
    let mut acc = TangleComplex::unit();
    let mut stats = ScanStats::default();
    for (step, piece) in dec.pieces.iter().enumerate() {
        let next = match piece {
            Piece::Crossing { crossing, .. } => crossing_complex(crossing.edges),
            Piece::Region { crossings } => {
                let inner = TangleDecomposition {
                    pieces: crossings.iter().map(|&(index, crossing)| Piece::Crossing { index, crossing }).collect(),
                    widths: vec![],
                };
                scan(&inner, &[], opts)?.0
            }
            Piece::Arc { ends } => arc_complex(ends[0], ends[1]),
            Piece::Circle { .. } => circle_complex(),
            Piece::Block { id, labels } => {
                let b =
                    blocks.get(*id).ok_or_else(|| Error::Invariant(format!("no complex supplied for block {id}")))?;
                if b.labels() != labels.as_slice() {
                    return Err(Error::BoundaryMismatch(format!("block {id} labels differ from the decomposition")));
                }
                b.clone()
            }
        };
        let product = acc.len().saturating_mul(next.len());
        if product > opts.object_cap {
            return Err(Error::ResourceCap { step, objects: product, cap: opts.object_cap });
        }
        let t = tensor(&acc, &next)?;
        stats.peak_per_step.push(t.len());
        acc = reduce(&t);
        stats.reduced_per_step.push(acc.len());
        log::debug!("scan step {step}: {} -> {} objects", t.len(), acc.len());
    }
    Ok((acc, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::{Morphism, Smoothing};
    use crate::diagram::{braid_closure, decompose};

    #[test]
    fn deloop_circle() {
        let c = deloop(&circle_complex());
        let mut g: Vec<(i32, i32)> = c.objects().map(|(_, o)| (o.h2, o.q2)).collect();
        g.sort();
        assert_eq!(g, vec![(0, -2), (0, 2)]);
        assert!(c.objects().all(|(_, o)| o.smoothing.is_empty()));
        let x = crossing_complex([1, 2, 3, 4]);
        assert_eq!(deloop(&x), x);
    }

    #[test]
    fn gauss_cancels_identity() {
        let mut c = TangleComplex::new(vec![]);
        let a = c.add_object(FlatTangle::new(Smoothing::empty(), 0, 0));
        let b = c.add_object(FlatTangle::new(Smoothing::empty(), 2, 0));
        c.set_entry(a, b, Morphism::scalar(-1));
        assert!(gauss_eliminate(&c).is_empty());
        let x = crossing_complex([1, 2, 3, 4]);
        assert_eq!(gauss_eliminate(&x), x);
    }

    #[test]
    fn unknot_scan() {
        let u = braid_closure(1, &[]).unwrap().to_tangle();
        let (c, _) = scan(&decompose(&u, &[], &[]), &[], &ScanOptions::default()).unwrap();
        let mut g: Vec<(i32, i32)> = c.objects().map(|(_, o)| (o.h2, o.q2)).collect();
        g.sort();
        assert_eq!(g, vec![(0, -2), (0, 2)]);
        assert_eq!(c.entry_count(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let k = braid_closure(2, &[1, 1, 1]).unwrap().to_tangle();
        let r = scan(&decompose(&k, &[], &[]), &[], &ScanOptions { object_cap: 3 });
        assert!(matches!(r, Err(Error::ResourceCap { .. })));
    }
}
