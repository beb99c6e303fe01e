use std::collections::BTreeMap;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::homology::BigradedComplex;

/// Default crossing limit of [`naive_cube`].
pub const DEFAULT_CROSSING_LIMIT: usize = 12;

struct State {
    /// Circle of each edge (by edge position), numbered by first appearance.
    circle_of: Vec<usize>,
    circles: usize,
    /// Generator index of each dot pattern (bit set = v₋).
    index: Vec<usize>,
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// The full cube of resolutions with the rank-2 Frobenius algebra
/// (`v₊` of degree +1, `v₋` of degree −1), no reduction. The state with `k`
/// 1-smoothings sits at `h2 = 2k − n`; the edge changing coordinate `i`
/// carries the sign `(−1)^(number of 1s before i)`.
pub fn naive_cube(d: &LinkDiagram, limit: usize) -> Result<BigradedComplex> {
    let n = d.crossings().len();
    if n > limit {
        return Err(Error::CrossingLimit { crossings: n, limit });
    }
    if d.colors().iter().any(|&c| c != 1) {
        return Err(Error::UnsupportedColor("the cube is built for color 1 only".into()));
    }
    let edges: Vec<u32> = d.edges().collect();
    let pos: BTreeMap<u32, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let xs: Vec<[usize; 4]> = d.crossings().iter().map(|x| x.edges.map(|e| pos[&e])).collect();
    let mut out = BigradedComplex::new();
    let mut states = Vec::with_capacity(1 << n);
    for s in 0usize..(1 << n) {
        let mut parent: Vec<usize> = (0..edges.len()).collect();
        for (i, e) in xs.iter().enumerate() {
            let pairs = if s >> i & 1 == 0 { [(e[0], e[1]), (e[2], e[3])] } else { [(e[0], e[3]), (e[1], e[2])] };
            for (a, b) in pairs {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let mut label = BTreeMap::new();
        let circle_of: Vec<usize> = (0..edges.len())
            .map(|e| {
                let r = find(&mut parent, e);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect();
        let circles = label.len();
        let h2 = 2 * s.count_ones() as i32 - n as i32;
        let index = (0..1usize << circles)
            .map(|mask| {
                let minus = mask.count_ones() as i32;
                out.add_generators(h2, h2 + 2 * (circles as i32 - 2 * minus), 1)
            })
            .collect();
        states.push(State { circle_of, circles, index });
    }
    for s in 0usize..(1 << n) {
        let h2 = 2 * s.count_ones() as i32 - n as i32;
        for (i, e) in xs.iter().enumerate() {
            if s >> i & 1 == 1 {
                continue;
            }
            let t = s | 1 << i;
            let sign = if (s & ((1 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let (from, to) = (&states[s], &states[t]);
            // image of each circle of `from` not touching crossing i
            let mut image = vec![usize::MAX; from.circles];
            for (edge, &c) in from.circle_of.iter().enumerate() {
                image[c] = to.circle_of[edge];
            }
            let (c1, c2) = (from.circle_of[e[0]], from.circle_of[e[2]]);
            for mask in 0usize..(1 << from.circles) {
                let q2 = h2 + 2 * (from.circles as i32 - 2 * mask.count_ones() as i32);
                let mut rest = 0usize;
                for c in (0..from.circles).filter(|&c| c != c1 && c != c2) {
                    if mask >> c & 1 == 1 {
                        rest |= 1 << image[c];
                    }
                }
                let col = from.index[mask];
                let mut emit = |m2: usize| out.add_entry(h2, q2, col, to.index[m2], sign);
                if c1 != c2 {
                    let c = image[c1];
                    match (mask >> c1 & 1, mask >> c2 & 1) {
                        (0, 0) => emit(rest),
                        (1, 1) => {}
                        _ => emit(rest | 1 << c),
                    }
                } else {
                    let (a, b) = (to.circle_of[e[0]], to.circle_of[e[1]]);
                    if mask >> c1 & 1 == 0 {
                        emit(rest | 1 << a);
                        emit(rest | 1 << b);
                    } else {
                        emit(rest | 1 << a | 1 << b);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_pd};
    use crate::homology::{cohomology, Group};

    #[test]
    fn unknot() {
        let c = naive_cube(&braid_closure(1, &[]).unwrap(), DEFAULT_CROSSING_LIMIT).unwrap();
        let g = cohomology(&c).unwrap();
        assert_eq!(g.get(0, -1), Group::free(1));
        assert_eq!(g.get(0, 1), Group::free(1));
        assert_eq!(g.total_rank(), 2);
    }

    #[test]
    fn kink_and_hopf_ranks() {
        let k = naive_cube(&parse_pd("X[1,1,2,2]").unwrap(), 12).unwrap();
        k.check_d2().unwrap();
        assert_eq!(cohomology(&k).unwrap().total_rank(), 2);
        let h = naive_cube(&parse_pd("X[4,1,3,2] X[2,3,1,4]").unwrap(), 12).unwrap();
        h.check_d2().unwrap();
        assert_eq!(cohomology(&h).unwrap().total_rank(), 4);
    }

    #[test]
    fn limit() {
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert!(matches!(naive_cube(&t, 2), Err(Error::CrossingLimit { crossings: 3, limit: 2 })));
    }
}
