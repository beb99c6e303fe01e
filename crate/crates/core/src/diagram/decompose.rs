use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Crossing, EdgeId, Tangle};

/// A unit of the scanning sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Piece {
    Crossing {
        index: usize,
        crossing: Crossing,
    },
    /// Several crossings handled as one pre-reduced piece (twist regions).
    Region {
        crossings: Vec<(usize, Crossing)>,
    },
    Arc {
        ends: [EdgeId; 2],
    },
    Circle {
        edge: EdgeId,
    },
    /// An externally supplied complex, referenced by position.
    Block {
        id: usize,
        labels: Vec<EdgeId>,
    },
}

impl Piece {
    /// Boundary labels with multiplicity (a loop edge appears twice).
    pub fn labels(&self) -> Vec<EdgeId> {
        match self {
            Piece::Crossing { crossing, .. } => crossing.edges.to_vec(),
            Piece::Region { crossings } => {
                let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
                for (_, x) in crossings {
                    for &e in &x.edges {
                        *count.entry(e).or_insert(0) += 1;
                    }
                }
                count.into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect()
            }
            Piece::Arc { ends } => ends.to_vec(),
            Piece::Circle { .. } => vec![],
            Piece::Block { labels, .. } => labels.clone(),
        }
    }

    fn open_labels(&self) -> Vec<EdgeId> {
        let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for e in self.labels() {
            *count.entry(e).or_insert(0) += 1;
        }
        count.into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect()
    }

    pub fn crossing_indices(&self) -> Vec<usize> {
        match self {
            Piece::Crossing { index, .. } => vec![*index],
            Piece::Region { crossings } => crossings.iter().map(|(i, _)| *i).collect(),
            _ => vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangleDecomposition {
    pub pieces: Vec<Piece>,
    /// Open boundary size after each piece is glued on.
    pub widths: Vec<usize>,
}

impl TangleDecomposition {
    pub fn max_width(&self) -> usize {
        self.widths.iter().copied().max().unwrap_or(0)
    }

    /// Crossings of all pieces in sweep order.
    pub fn crossings(&self) -> Vec<(usize, Crossing)> {
        self.pieces
            .iter()
            .flat_map(|p| match p {
                Piece::Crossing { index, crossing } => vec![(*index, *crossing)],
                Piece::Region { crossings } => crossings.clone(),
                _ => vec![],
            })
            .collect()
    }

    /// Reassemble the tangle the pieces came from.
    pub fn recompose(&self) -> Tangle {
        let mut crossings = self.crossings();
        crossings.sort_by_key(|(i, _)| *i);
        let mut t = Tangle { crossings: crossings.into_iter().map(|(_, x)| x).collect(), ..Default::default() };
        for p in &self.pieces {
            match p {
                Piece::Arc { ends } => t.free_arcs.push((ends[0], ends[1])),
                Piece::Circle { edge } => t.circles.push(*edge),
                _ => {}
            }
        }
        t.boundary = t.open_ends();
        t
    }
}

/// Greedy sweep: at each step glue the piece that closes the most open ends
/// net of the ends it opens, ties broken by position. `regions` become
/// single multi-crossing pieces; `blocks` are extra pieces with the given
/// boundary labels. Circles go last.
pub fn decompose(t: &Tangle, regions: &[Vec<usize>], blocks: &[Vec<EdgeId>]) -> TangleDecomposition {
    let in_region: BTreeSet<usize> = regions.iter().flatten().copied().collect();
    let mut pool: Vec<Piece> = vec![];
    for (id, labels) in blocks.iter().enumerate() {
        pool.push(Piece::Block { id, labels: labels.clone() });
    }
    for r in regions.iter().filter(|r| !r.is_empty()) {
        pool.push(Piece::Region { crossings: r.iter().map(|&i| (i, t.crossings[i])).collect() });
    }
    for (index, &crossing) in t.crossings.iter().enumerate() {
        if !in_region.contains(&index) {
            pool.push(Piece::Crossing { index, crossing });
        }
    }
    for &(a, b) in &t.free_arcs {
        pool.push(Piece::Arc { ends: [a, b] });
    }
    let opens: Vec<Vec<EdgeId>> = pool.iter().map(|p| p.open_labels()).collect();
    let mut used = vec![false; pool.len()];
    let mut open: BTreeSet<EdgeId> = BTreeSet::new();
    let mut pieces = vec![];
    let mut widths = vec![];
    for _ in 0..pool.len() {
        let mut best: Option<(i64, usize)> = None;
        for (i, labels) in opens.iter().enumerate() {
            if used[i] {
                continue;
            }
            let shared = labels.iter().filter(|e| open.contains(e)).count() as i64;
            let score = if open.is_empty() { 0 } else { 2 * shared - labels.len() as i64 };
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, i));
            }
        }
        let (_, i) = best.unwrap();
        used[i] = true;
        for e in &opens[i] {
            if !open.remove(e) {
                open.insert(*e);
            }
        }
        pieces.push(pool[i].clone());
        widths.push(open.len());
    }
    for &edge in &t.circles {
        pieces.push(Piece::Circle { edge });
        widths.push(open.len());
    }
    TangleDecomposition { pieces, widths }
}

#[cfg(test)]
mod tests {
    use super::super::{braid_closure, cable};
    use super::*;

    #[test]
    fn single_pieces() {
        let k = braid_closure(2, &[1]).unwrap().to_tangle();
        let d = decompose(&k, &[], &[]);
        assert_eq!(d.pieces.len(), 1);
        assert_eq!(d.widths, vec![0]);
        let u = braid_closure(1, &[]).unwrap().to_tangle();
        let d = decompose(&u, &[], &[]);
        assert_eq!(d.pieces, vec![Piece::Circle { edge: 1 }]);
    }

    #[test]
    fn braid_closure_width() {
        let t = braid_closure(2, &[1, 1, 1, 1]).unwrap().to_tangle();
        let d = decompose(&t, &[], &[]);
        assert_eq!(d.pieces.len(), 4);
        assert!(d.max_width() <= 4, "{:?}", d.widths);
        assert_eq!(*d.widths.last().unwrap(), 0);
    }

    #[test]
    fn recompose_round_trip() {
        let mut k = braid_closure(2, &[1, 1, 1]).unwrap();
        k.set_color(0, 2).unwrap();
        let mut c = cable(&k).unwrap();
        c.insert_twists(0, 2, 3).unwrap();
        let t = c.diagram.to_tangle();
        for regions in [vec![], c.twist_regions.clone()] {
            let d = decompose(&t, &regions, &[]);
            assert_eq!(d.recompose(), t);
            let mut idx: Vec<usize> = d.pieces.iter().flat_map(|p| p.crossing_indices()).collect();
            idx.sort();
            assert_eq!(idx, (0..t.crossings.len()).collect::<Vec<_>>());
        }
    }
}
