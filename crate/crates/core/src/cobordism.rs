//! Flat tangles and dotted cobordisms between them.
//!
//! Relations: sphere = 0, dotted sphere = 1, two dots = 0, and neck-cutting
//! (cylinder = dot on top + dot on bottom). Under these relations every
//! cobordism between smoothings `A` and `B` on the same `2m` boundary points
//! reduces to a combination of "disc" cobordisms: one disc per cycle of the
//! closed 1-manifold `A ∪ B`, each disc carrying zero or one dot. A term is
//! therefore a bitmask over those cycles (bit set = dotted disc) with an
//! integer coefficient, and this basis is the canonical form.
//!
//! Cycle indexing for a pair `(A, B)`: first the cycles through boundary
//! points, ordered by their smallest point, then the closed circles of `A`,
//! then the closed circles of `B`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Coeff = i64;
pub type Label = u32;

/// Crossingless matching of `2m` boundary points plus a number of closed circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Smoothing {
    partner: Vec<u16>,
    circles: u32,
}

impl Smoothing {
    pub fn new(partner: Vec<u16>, circles: u32) -> Result<Self> {
        let n = partner.len();
        for (i, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= n || p == i || partner[p] as usize != i {
                return Err(Error::Invariant(format!("not a perfect matching: {partner:?}")));
            }
        }
        Ok(Smoothing { partner, circles })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)], circles: u32) -> Result<Self> {
        let mut partner = vec![u16::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n || partner[a] != u16::MAX || partner[b] != u16::MAX {
                return Err(Error::Invariant(format!("bad pairs {pairs:?} on {n} points")));
            }
            partner[a] = b as u16;
            partner[b] = a as u16;
        }
        Self::new(partner, circles)
    }

    pub fn empty() -> Self {
        Smoothing { partner: vec![], circles: 0 }
    }

    pub fn circle() -> Self {
        Smoothing { partner: vec![], circles: 1 }
    }

    /// Number of boundary points.
    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty() && self.circles == 0
    }

    pub fn arcs(&self) -> usize {
        self.partner.len() / 2
    }

    #[inline]
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn circles(&self) -> u32 {
        self.circles
    }

    pub fn with_circles(&self, circles: u32) -> Self {
        Smoothing { partner: self.partner.clone(), circles }
    }

    pub fn without_circles(&self) -> Self {
        Smoothing { partner: self.partner.clone(), circles: 0 }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter(|&p| p < self.partner(p)).map(|p| (p, self.partner(p))).collect()
    }

    /// Noncrossing with respect to the boundary order `0..2m`.
    pub fn is_noncrossing(&self) -> bool {
        let pairs = self.pairs();
        pairs.iter().all(|&(a, b)| pairs.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }
}

impl fmt::Display for Smoothing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "[{}]", pairs.join(" "))?;
        if self.circles > 0 {
            write!(f, "+{}o", self.circles)?;
        }
        Ok(())
    }
}

/// A smoothing placed in a complex, with its grading shift in doubled units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FlatTangle {
    pub smoothing: Smoothing,
    pub h2: i32,
    pub q2: i32,
}

impl FlatTangle {
    pub fn new(smoothing: Smoothing, h2: i32, q2: i32) -> Self {
        FlatTangle { smoothing, h2, q2 }
    }
}

/// The cycles of `A ∪ B` for two smoothings on the same boundary.
#[derive(Clone, Debug)]
pub struct Cycles {
    point: Vec<u16>,
    rep: Vec<u16>,
    src_circles: usize,
    tgt_circles: usize,
}

impl Cycles {
    pub fn of(a: &Smoothing, b: &Smoothing) -> Self {
        assert_eq!(a.len(), b.len(), "cycles of smoothings with different boundaries");
        let n = a.len();
        let mut point = vec![u16::MAX; n];
        let mut rep = vec![];
        for p in 0..n {
            if point[p] != u16::MAX {
                continue;
            }
            let idx = rep.len() as u16;
            rep.push(p as u16);
            let mut cur = p;
            loop {
                point[cur] = idx;
                let q = a.partner(cur);
                point[q] = idx;
                cur = b.partner(q);
                if cur == p {
                    break;
                }
            }
        }
        let c = Cycles { point, rep, src_circles: a.circles() as usize, tgt_circles: b.circles() as usize };
        assert!(c.count() <= 64, "more than 64 cycles in a cobordism");
        c
    }

    pub fn count(&self) -> usize {
        self.rep.len() + self.src_circles + self.tgt_circles
    }

    pub fn arc_cycles(&self) -> usize {
        self.rep.len()
    }

    #[inline]
    pub fn of_point(&self, p: usize) -> usize {
        self.point[p] as usize
    }

    pub fn rep(&self, cycle: usize) -> usize {
        self.rep[cycle] as usize
    }

    pub fn src_circle(&self, i: usize) -> usize {
        self.rep.len() + i
    }

    pub fn tgt_circle(&self, i: usize) -> usize {
        self.rep.len() + self.src_circles + i
    }

    /// Quantum degree (plain units) of the disc term with the given dots.
    pub fn degree(&self, mask: u64) -> i32 {
        self.count() as i32 - (self.point.len() / 2) as i32 - 2 * mask.count_ones() as i32
    }
}

/// Integer combination of canonical disc cobordisms; terms sorted by mask,
/// no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    terms: Vec<(u64, Coeff)>,
}

impl Morphism {
    pub fn zero() -> Self {
        Morphism { terms: vec![] }
    }

    pub fn scalar(c: Coeff) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (u64, Coeff)>>(terms: I) -> Self {
        let mut acc: BTreeMap<u64, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = e.checked_add(c).expect("coefficient overflow");
        }
        Morphism { terms: acc.into_iter().filter(|&(_, c)| c != 0).collect() }
    }

    pub fn terms(&self) -> &[(u64, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the morphism is `c` times the empty-dot term with `c = ±1`.
    pub fn unit_scalar(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [(0, c)] if c.abs() == 1 => Some(*c),
            _ => None,
        }
    }

    pub fn scaled(&self, s: Coeff) -> Self {
        if s == 0 {
            return Self::zero();
        }
        Morphism {
            terms: self.terms.iter().map(|&(m, c)| (m, c.checked_mul(s).expect("coefficient overflow"))).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).copied())
    }

    /// Keep terms whose bit `pos` equals `dotted`, then delete that bit,
    /// moving higher bits down by one.
    pub fn remove_bit(&self, pos: usize, dotted: bool) -> Morphism {
        let bit = 1u64 << pos;
        let low = bit - 1;
        Morphism {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m & bit != 0) == dotted)
                .map(|&(m, c)| ((m & low) | ((m >> 1) & !low), c))
                .collect(),
        }
    }
}

/// Identity cobordism on a smoothing in canonical form: a strip per arc and a
/// neck-cut cylinder per circle.
pub fn identity(x: &Smoothing) -> Morphism {
    let cyc = Cycles::of(x, x);
    let mut terms = vec![(0u64, 1 as Coeff)];
    for i in 0..x.circles() as usize {
        let s = 1u64 << cyc.src_circle(i);
        let t = 1u64 << cyc.tgt_circle(i);
        terms = terms.iter().flat_map(|&(m, c)| [(m | s, c), (m | t, c)]).collect();
    }
    Morphism::from_terms(terms)
}

/// Reduction recipe for a surface assembled from two families of discs
/// ("left" and "right" nodes) glued along intervals and circles.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    left_mask: Vec<u64>,
    right_mask: Vec<u64>,
    out_mask: Vec<u64>,
    out_count: Vec<u32>,
    chi: Vec<i32>,
}

impl Plan {
    /// `gluings` are `(node, node, χ change)`; `out_nodes[o]` is the node on
    /// whose disc the output cycle `o` runs.
    pub(crate) fn build(n_left: usize, n_right: usize, gluings: &[(usize, usize, i32)], out_nodes: &[usize]) -> Plan {
        let n = n_left + n_right;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b, _) in gluings {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comp_of = vec![usize::MAX; n];
        let mut ncomp = 0;
        for x in 0..n {
            let r = find(&mut parent, x);
            if comp_of[r] == usize::MAX {
                comp_of[r] = ncomp;
                ncomp += 1;
            }
            comp_of[x] = comp_of[r];
        }
        let mut plan = Plan {
            left_mask: vec![0; ncomp],
            right_mask: vec![0; ncomp],
            out_mask: vec![0; ncomp],
            out_count: vec![0; ncomp],
            chi: vec![0; ncomp],
        };
        for (x, &c) in comp_of.iter().enumerate().take(n) {
            plan.chi[c] += 1;
            if x < n_left {
                plan.left_mask[c] |= 1 << x;
            } else {
                plan.right_mask[c] |= 1 << (x - n_left);
            }
        }
        for &(a, _, w) in gluings {
            plan.chi[comp_of[a]] += w;
        }
        for (o, &node) in out_nodes.iter().enumerate() {
            let c = comp_of[node];
            plan.out_mask[c] |= 1 << o;
            plan.out_count[c] += 1;
        }
        plan
    }

    pub(crate) fn apply(&self, l: &Morphism, r: &Morphism) -> Morphism {
        let mut acc: BTreeMap<u64, Coeff> = BTreeMap::new();
        let mut cur: Vec<(u64, Coeff)> = Vec::new();
        let mut next: Vec<(u64, Coeff)> = Vec::new();
        for &(ml, cl) in l.terms() {
            'pair: for &(mr, cr) in r.terms() {
                let mut coeff = cl.checked_mul(cr).expect("coefficient overflow");
                cur.clear();
                cur.push((0, 1));
                for c in 0..self.chi.len() {
                    let dots =
                        (ml & self.left_mask[c]).count_ones() as i32 + (mr & self.right_mask[c]).count_ones() as i32;
                    let k = self.out_count[c] as i32;
                    let two_g = 2 - self.chi[c] - k;
                    debug_assert!(two_g >= 0 && two_g % 2 == 0, "bad surface: chi={} k={k}", self.chi[c]);
                    let g = two_g / 2;
                    let d = dots + g;
                    if d >= 2 {
                        continue 'pair;
                    }
                    if g > 0 {
                        coeff = coeff.checked_mul(1 << g).expect("coefficient overflow");
                    }
                    let out = self.out_mask[c];
                    if d == 1 {
                        for t in cur.iter_mut() {
                            t.0 |= out;
                        }
                    } else {
                        if k == 0 {
                            continue 'pair;
                        }
                        if k > 1 {
                            next.clear();
                            for &(m, s) in cur.iter() {
                                let mut bits = out;
                                while bits != 0 {
                                    let b = bits & bits.wrapping_neg();
                                    next.push((m | (out & !b), s));
                                    bits &= bits - 1;
                                }
                            }
                            std::mem::swap(&mut cur, &mut next);
                        }
                    }
                }
                for &(m, s) in cur.iter() {
                    let e = acc.entry(m).or_insert(0);
                    *e = e.checked_add(s * coeff).expect("coefficient overflow");
                }
            }
        }
        Morphism { terms: acc.into_iter().filter(|&(_, c)| c != 0).collect() }
    }
}

/// Vertical composition `f ∘ g` for `g: a → b`, `f: b → c`.
pub fn compose_morphisms(a: &Smoothing, b: &Smoothing, c: &Smoothing, f: &Morphism, g: &Morphism) -> Morphism {
    if f.is_zero() || g.is_zero() {
        return Morphism::zero();
    }
    let ab = Cycles::of(a, b);
    let bc = Cycles::of(b, c);
    let ac = Cycles::of(a, c);
    let nl = ab.count();
    let mut glue = Vec::with_capacity(b.arcs() + b.circles() as usize);
    for (p, q) in b.pairs() {
        debug_assert_eq!(ab.of_point(p), ab.of_point(q));
        glue.push((ab.of_point(p), nl + bc.of_point(p), -1));
    }
    for i in 0..b.circles() as usize {
        glue.push((ab.tgt_circle(i), nl + bc.src_circle(i), 0));
    }
    let mut out = Vec::with_capacity(ac.count());
    for o in 0..ac.arc_cycles() {
        out.push(ab.of_point(ac.rep(o)));
    }
    for i in 0..a.circles() as usize {
        out.push(ab.src_circle(i));
    }
    for i in 0..c.circles() as usize {
        out.push(nl + bc.tgt_circle(i));
    }
    Plan::build(nl, bc.count(), &glue, &out).apply(g, f)
}

/// Where a closed circle of a glued smoothing came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleOrigin {
    /// Formed by the gluing; passes through the given combined position.
    Formed(usize),
    Left(usize),
    Right(usize),
}

/// Identification data for placing two tangles side by side and joining
/// boundary points that carry the same label.
#[derive(Clone, Debug)]
pub struct Gluing {
    n_left: usize,
    link: Vec<Option<usize>>,
    new_boundary: Vec<usize>,
    labels: Vec<Label>,
}

impl Gluing {
    /// Points of the left boundary must carry distinct labels. A label
    /// occurring twice on the right (a loop edge) joins those two points.
    pub fn new(left: &[Label], right: &[Label]) -> Result<Gluing> {
        let nl = left.len();
        let n = nl + right.len();
        let mut link = vec![None; n];
        let mut seen: BTreeMap<Label, usize> = BTreeMap::new();
        for (i, &l) in left.iter().enumerate() {
            if seen.insert(l, i).is_some() {
                return Err(Error::BoundaryMismatch(format!("label {l} repeated on left boundary")));
            }
        }
        let mut seen_right: BTreeMap<Label, usize> = BTreeMap::new();
        for (j, &l) in right.iter().enumerate() {
            let x = nl + j;
            if let Some(&i) = seen.get(&l) {
                if link[i].is_some() {
                    return Err(Error::BoundaryMismatch(format!("label {l} used three times")));
                }
                link[i] = Some(x);
                link[x] = Some(i);
            } else if let Some(&y) = seen_right.get(&l) {
                if link[y].is_some() {
                    return Err(Error::BoundaryMismatch(format!("label {l} used three times")));
                }
                link[y] = Some(x);
                link[x] = Some(y);
            } else {
                seen_right.insert(l, x);
            }
        }
        let new_boundary: Vec<usize> = (0..n).filter(|&x| link[x].is_none()).collect();
        let labels = new_boundary.iter().map(|&x| if x < nl { left[x] } else { right[x - nl] }).collect();
        Ok(Gluing { n_left: nl, link, new_boundary, labels })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn glue(&self, a: &Smoothing, e: &Smoothing) -> Glued {
        let nl = self.n_left;
        let n = self.link.len();
        assert_eq!(a.len() + e.len(), n, "gluing applied to smoothings of the wrong size");
        let arc = |x: usize| if x < nl { a.partner(x) } else { nl + e.partner(x - nl) };
        let mut out_index = vec![usize::MAX; n];
        for (i, &x) in self.new_boundary.iter().enumerate() {
            out_index[x] = i;
        }
        let mut visited = vec![false; n];
        let mut partner = vec![0u16; self.new_boundary.len()];
        for (i, &x0) in self.new_boundary.iter().enumerate() {
            if visited[x0] {
                continue;
            }
            let mut x = x0;
            loop {
                visited[x] = true;
                let y = arc(x);
                visited[y] = true;
                if let Some(z) = self.link[y] {
                    x = z;
                } else {
                    let j = out_index[y];
                    partner[i] = j as u16;
                    partner[j] = i as u16;
                    break;
                }
            }
        }
        let mut origins = vec![];
        for x0 in 0..n {
            if visited[x0] {
                continue;
            }
            origins.push(CircleOrigin::Formed(x0));
            let mut x = x0;
            loop {
                visited[x] = true;
                let y = arc(x);
                visited[y] = true;
                x = self.link[y].expect("closed path through an unlinked point");
                if x == x0 {
                    break;
                }
            }
        }
        origins.extend((0..a.circles() as usize).map(CircleOrigin::Left));
        origins.extend((0..e.circles() as usize).map(CircleOrigin::Right));
        Glued { smoothing: Smoothing { partner, circles: origins.len() as u32 }, origins }
    }

    /// Planar product of `f: a → b` (left) and `g: e → e2` (right).
    #[allow(clippy::too_many_arguments)]
    pub fn tensor(
        &self,
        a: &Smoothing,
        b: &Smoothing,
        f: &Morphism,
        e: &Smoothing,
        e2: &Smoothing,
        g: &Morphism,
        src: &Glued,
        tgt: &Glued,
    ) -> Morphism {
        if f.is_zero() || g.is_zero() {
            return Morphism::zero();
        }
        let nl = self.n_left;
        let ab = Cycles::of(a, b);
        let ee = Cycles::of(e, e2);
        let nleft_nodes = ab.count();
        let node = |x: usize| if x < nl { ab.of_point(x) } else { nleft_nodes + ee.of_point(x - nl) };
        let mut glue = vec![];
        for x in 0..self.link.len() {
            if let Some(y) = self.link[x] {
                if x < y {
                    glue.push((node(x), node(y), -1));
                }
            }
        }
        let outc = Cycles::of(&src.smoothing, &tgt.smoothing);
        let mut out = Vec::with_capacity(outc.count());
        for o in 0..outc.arc_cycles() {
            out.push(node(self.new_boundary[outc.rep(o)]));
        }
        for origin in &src.origins {
            out.push(match *origin {
                CircleOrigin::Formed(x) => node(x),
                CircleOrigin::Left(j) => ab.src_circle(j),
                CircleOrigin::Right(j) => nleft_nodes + ee.src_circle(j),
            });
        }
        for origin in &tgt.origins {
            out.push(match *origin {
                CircleOrigin::Formed(x) => node(x),
                CircleOrigin::Left(j) => ab.tgt_circle(j),
                CircleOrigin::Right(j) => nleft_nodes + ee.tgt_circle(j),
            });
        }
        Plan::build(nleft_nodes, ee.count(), &glue, &out).apply(f, g)
    }
}

#[derive(Clone, Debug)]
pub struct Glued {
    pub smoothing: Smoothing,
    pub origins: Vec<CircleOrigin>,
}

/// A morphism together with its source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DottedCobSum {
    pub source: Smoothing,
    pub target: Smoothing,
    pub morphism: Morphism,
}

impl DottedCobSum {
    pub fn new(source: Smoothing, target: Smoothing, morphism: Morphism) -> Result<Self> {
        if source.len() != target.len() {
            return Err(Error::BoundaryMismatch(format!("{} vs {} boundary points", source.len(), target.len())));
        }
        let cyc = Cycles::of(&source, &target);
        if morphism.terms().iter().any(|&(m, _)| cyc.count() < 64 && m >> cyc.count() != 0) {
            return Err(Error::Invariant("term refers to a cycle that does not exist".into()));
        }
        Ok(DottedCobSum { source, target, morphism })
    }

    pub fn identity(x: &Smoothing) -> Self {
        DottedCobSum { source: x.clone(), target: x.clone(), morphism: identity(x) }
    }

    /// Quantum degree shared by all terms, `None` when zero or inhomogeneous.
    pub fn degree(&self) -> Option<i32> {
        let cyc = Cycles::of(&self.source, &self.target);
        let mut degs = self.morphism.terms().iter().map(|&(m, _)| cyc.degree(m));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &DottedCobSum) -> Result<DottedCobSum> {
        if g.target != self.source {
            return Err(Error::BoundaryMismatch(format!("compose: {} != {}", g.target, self.source)));
        }
        let m = compose_morphisms(&g.source, &g.target, &self.target, &self.morphism, &g.morphism);
        Ok(DottedCobSum { source: g.source.clone(), target: self.target.clone(), morphism: m })
    }

    /// Full evaluation of a cobordism between empty tangles.
    pub fn closed_value(&self) -> Option<Coeff> {
        if !self.source.is_empty() || !self.target.is_empty() {
            return None;
        }
        Some(self.morphism.terms().first().map(|t| t.1).unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc() -> Smoothing {
        Smoothing::from_pairs(2, &[(0, 1)], 0).unwrap()
    }

    #[test]
    fn smoothing_validation() {
        assert!(Smoothing::new(vec![1, 0], 0).is_ok());
        assert!(Smoothing::new(vec![0, 1], 0).is_err());
        assert!(Smoothing::new(vec![1, 2, 0], 0).is_err());
        let s = Smoothing::from_pairs(4, &[(0, 2), (1, 3)], 0).unwrap();
        assert!(!s.is_noncrossing());
        assert!(Smoothing::from_pairs(4, &[(0, 3), (1, 2)], 0).unwrap().is_noncrossing());
    }

    #[test]
    fn identity_is_neutral() {
        let a = arc();
        let ao = Smoothing::from_pairs(2, &[(0, 1)], 1).unwrap();
        let split = DottedCobSum::new(a.clone(), ao.clone(), Morphism::from_terms([(0b01, 1), (0b10, 1)])).unwrap();
        assert_eq!(split.degree(), Some(-1));
        let left = DottedCobSum::identity(&ao).compose(&split).unwrap();
        let right = split.compose(&DottedCobSum::identity(&a)).unwrap();
        assert_eq!(left, split);
        assert_eq!(right, split);
    }

    #[test]
    fn two_dots_vanish() {
        // dot on the arc, composed with itself
        let a = arc();
        let dot = DottedCobSum::new(a.clone(), a.clone(), Morphism::from_terms([(1, 1)])).unwrap();
        assert_eq!(dot.degree(), Some(-2));
        assert!(dot.compose(&dot).unwrap().morphism.is_zero());
    }

    #[test]
    fn split_then_merge_is_twice_the_dot() {
        let a = arc();
        let ao = Smoothing::from_pairs(2, &[(0, 1)], 1).unwrap();
        // cycles of (a, ao): the arc cycle (bit 0) and the circle (bit 1)
        let split = DottedCobSum::new(a.clone(), ao.clone(), Morphism::from_terms([(0b01, 1), (0b10, 1)])).unwrap();
        let merge = DottedCobSum::new(ao.clone(), a.clone(), Morphism::from_terms([(0b01, 1), (0b10, 1)])).unwrap();
        let c = merge.compose(&split).unwrap();
        assert_eq!(c.morphism.terms(), &[(1, 2)]);
    }

    #[test]
    fn closed_surfaces() {
        let e = Smoothing::empty();
        let o = Smoothing::circle();
        let cup = DottedCobSum::new(e.clone(), o.clone(), Morphism::from_terms([(0, 1)])).unwrap();
        let dcup = DottedCobSum::new(e.clone(), o.clone(), Morphism::from_terms([(1, 1)])).unwrap();
        let cap = DottedCobSum::new(o.clone(), e.clone(), Morphism::from_terms([(0, 1)])).unwrap();
        assert_eq!(cap.compose(&cup).unwrap().closed_value(), Some(0));
        assert_eq!(cap.compose(&dcup).unwrap().closed_value(), Some(1));
        assert_eq!(dcup.degree(), Some(-1));
        // torus = cap ∘ (merge ∘ split) ∘ cup evaluates to 2
        let oo = Smoothing { partner: vec![], circles: 2 };
        // cycles of (o, oo): src circle 0, tgt circles 1, 2; connected pants
        let split =
            DottedCobSum::new(o.clone(), oo.clone(), Morphism::from_terms([(0b110, 1), (0b011, 1), (0b101, 1)]))
                .unwrap();
        let merge =
            DottedCobSum::new(oo.clone(), o.clone(), Morphism::from_terms([(0b110, 1), (0b011, 1), (0b101, 1)]))
                .unwrap();
        let t = cap.compose(&merge.compose(&split).unwrap().compose(&cup).unwrap()).unwrap();
        assert_eq!(t.closed_value(), Some(2));
    }

    #[test]
    fn gluing_forms_circles() {
        let g = Gluing::new(&[1, 2], &[1, 2]).unwrap();
        let r = g.glue(&arc(), &arc());
        assert_eq!(r.smoothing, Smoothing::circle());
        assert_eq!(r.origins, vec![CircleOrigin::Formed(0)]);
        let g = Gluing::new(&[1, 2], &[2, 3]).unwrap();
        let r = g.glue(&arc(), &arc());
        assert_eq!(r.smoothing.len(), 2);
        assert_eq!(g.labels(), &[1, 3]);
        assert!(Gluing::new(&[1, 1], &[]).is_err());
    }
}
