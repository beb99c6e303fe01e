//! Bigraded integer cohomology via elimination and Smith normal form.

mod format;
mod poly;
mod snf;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::TangleComplex;
use crate::error::{Error, Result};

pub use format::{grading_key, groups_from_json, groups_to_csv, groups_to_json, groups_to_table, parse_grading_key};
pub use poly::{graded_euler, kauffman_bracket, LaurentPoly};
pub use snf::{is_prime, prime_powers};

/// Doubled bidegree `(h2, q2)`.
type Grading = (i32, i32);

/// `(row, column, value)` of a sparse matrix.
type Entry = (usize, usize, i64);

/// Free cochain groups in doubled bidegrees `(h2, q2)` with integer
/// differentials raising `h2` by 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedComplex {
    ranks: BTreeMap<(i32, i32), usize>,
    /// Keyed by source bidegree: `(row in target, column in source, value)`.
    entries: BTreeMap<(i32, i32), Vec<Entry>>,
}

impl BigradedComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `n` generators in bidegree `(h2, q2)`; returns the index of the first.
    pub fn add_generators(&mut self, h2: i32, q2: i32, n: usize) -> usize {
        let r = self.ranks.entry((h2, q2)).or_insert(0);
        *r += n;
        *r - n
    }

    /// Differential coefficient from generator `col` in `(h2, q2)` to
    /// generator `row` in `(h2 + 2, q2)`; repeated calls accumulate.
    pub fn add_entry(&mut self, h2: i32, q2: i32, col: usize, row: usize, v: i64) {
        if v != 0 {
            self.entries.entry((h2, q2)).or_default().push((row, col, v));
        }
    }

    pub fn rank(&self, h2: i32, q2: i32) -> usize {
        self.ranks.get(&(h2, q2)).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    fn q2_values(&self) -> BTreeSet<i32> {
        self.ranks.keys().map(|&(_, q)| q).collect()
    }

    /// Dense matrix of the differential leaving `(h2, q2)`.
    pub fn matrix(&self, h2: i32, q2: i32) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.rank(h2, q2)]; self.rank(h2 + 2, q2)];
        for &(r, c, v) in self.entries.get(&(h2, q2)).map(|v| v.as_slice()).unwrap_or(&[]) {
            m[r][c] = m[r][c].checked_add(v).expect("coefficient overflow");
        }
        m
    }

    /// `d∘d = 0` as integer matrices.
    pub fn check_d2(&self) -> Result<()> {
        for &(h2, q2) in self.ranks.keys() {
            let a = self.matrix(h2, q2);
            let b = self.matrix(h2 + 2, q2);
            for row in &b {
                for c in 0..self.rank(h2, q2) {
                    let s: i128 = row.iter().zip(a.iter()).map(|(&x, ar)| x as i128 * ar[c] as i128).sum();
                    if s != 0 {
                        return Err(Error::Invariant(format!("d∘d ≠ 0 at ({h2}, {q2})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Chain-level graded Euler characteristic.
    pub fn chain_euler(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(h2, q2), &n) in &self.ranks {
            p.add_term(q2, euler_sign(h2) * n as i64);
        }
        p
    }

    /// Convert a fully reduced closed-tangle complex: every object is a
    /// generator and every entry a scalar.
    pub fn from_tangle_complex(c: &TangleComplex) -> Result<Self> {
        if !c.labels().is_empty() {
            return Err(Error::BoundaryMismatch("complex has open boundary".into()));
        }
        let mut out = Self::new();
        let mut index = vec![usize::MAX; c.capacity()];
        for (i, o) in c.objects() {
            if !o.smoothing.is_empty() {
                return Err(Error::Invariant("closed complex still contains circles".into()));
            }
            index[i] = out.add_generators(o.h2, o.q2, 1);
        }
        for (i, o) in c.objects() {
            for (&j, m) in c.out_entries(i) {
                let v = match m.terms() {
                    [(0, v)] => *v,
                    _ => return Err(Error::Invariant("non-scalar entry between empty objects".into())),
                };
                out.add_entry(o.h2, o.q2, index[i], index[j], v);
            }
        }
        Ok(out)
    }

    fn slice(&self, q2: i32) -> Slice {
        let mut s = Slice::default();
        let mut first = BTreeMap::new();
        for (&(h2, q), &n) in &self.ranks {
            if q != q2 {
                continue;
            }
            first.insert(h2, s.h2.len());
            for _ in 0..n {
                s.h2.push(h2);
                s.out.push(BTreeMap::new());
                s.inc.push(BTreeSet::new());
            }
        }
        for (&(h2, q), list) in &self.entries {
            if q != q2 {
                continue;
            }
            for &(r, c, v) in list {
                let (i, j) = (first[&h2] + c, first[&(h2 + 2)] + r);
                s.add(i, j, v as i128);
            }
        }
        s
    }
}

fn euler_sign(h2: i32) -> i64 {
    if h2.div_euclid(2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// One quantum degree of a complex, as a sparse matrix over all generators.
#[derive(Default)]
struct Slice {
    h2: Vec<i32>,
    out: Vec<BTreeMap<usize, i128>>,
    inc: Vec<BTreeSet<usize>>,
}

impl Slice {
    fn add(&mut self, i: usize, j: usize, v: i128) {
        let e = self.out[i].entry(j).or_insert(0);
        *e += v;
        if *e == 0 {
            self.out[i].remove(&j);
            self.inc[j].remove(&i);
        } else {
            self.inc[j].insert(i);
        }
    }

    /// Cancel unit entries; returns the surviving generators.
    fn reduce_units(&mut self) -> Result<Vec<usize>> {
        let n = self.h2.len();
        let mut alive = vec![true; n];
        let mut work: BTreeSet<(i32, usize)> = (0..n).map(|i| (self.h2[i], i)).collect();
        while let Some((_, x)) = work.pop_first() {
            if !alive[x] {
                continue;
            }
            let Some((&y, &c)) = self.out[x].iter().find(|(_, &v)| v == 1 || v == -1) else { continue };
            let ws: Vec<(usize, i128)> =
                self.inc[y].iter().filter(|&&w| w != x).map(|&w| (w, self.out[w][&y])).collect();
            let zs: Vec<(usize, i128)> = self.out[x].iter().filter(|(&z, _)| z != y).map(|(&z, &v)| (z, v)).collect();
            for &(w, b) in &ws {
                for &(z, g) in &zs {
                    let v = g
                        .checked_mul(b)
                        .and_then(|v| v.checked_mul(c))
                        .ok_or_else(|| Error::Invariant("coefficient overflow".into()))?;
                    self.add(w, z, -v);
                }
                work.insert((self.h2[w], w));
            }
            for v in [x, y] {
                alive[v] = false;
                for j in std::mem::take(&mut self.out[v]).into_keys() {
                    self.inc[j].remove(&v);
                }
                for j in std::mem::take(&mut self.inc[v]) {
                    self.out[j].remove(&v);
                }
            }
        }
        Ok((0..n).filter(|&i| alive[i]).collect())
    }

    /// Dense matrices of the differentials between surviving generators, per h2.
    fn blocks(&self, keep: &[usize]) -> BTreeMap<i32, (Vec<usize>, Vec<usize>)> {
        let mut by_h: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for &i in keep {
            by_h.entry(self.h2[i]).or_default().push(i);
        }
        by_h.iter().map(|(&h, src)| (h, (src.clone(), by_h.get(&(h + 2)).cloned().unwrap_or_default()))).collect()
    }

    fn dense(&self, src: &[usize], tgt: &[usize]) -> Vec<Vec<i128>> {
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(k, &t)| (t, k)).collect();
        let mut m = vec![vec![0i128; src.len()]; tgt.len()];
        for (c, &s) in src.iter().enumerate() {
            for (&t, &v) in &self.out[s] {
                if let Some(&r) = pos.get(&t) {
                    m[r][c] = v;
                }
            }
        }
        m
    }
}

/// A finitely generated abelian group: free rank plus prime-power torsion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        Group { rank, torsion: vec![] }
    }

    pub fn with_torsion(rank: usize, mut torsion: Vec<u64>) -> Self {
        torsion.sort_unstable();
        Group { rank, torsion }
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = vec![];
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Cohomology groups keyed by doubled bidegree `(h2, q2)`; zero groups are
/// not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedGroups {
    groups: BTreeMap<(i32, i32), Group>,
}

impl BigradedGroups {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_doubled(&mut self, h2: i32, q2: i32, g: Group) {
        if g.is_zero() {
            self.groups.remove(&(h2, q2));
        } else {
            self.groups.insert((h2, q2), g);
        }
    }

    /// Insert in plain gradings `(i, j)`.
    pub fn insert(&mut self, i: i32, j: i32, g: Group) {
        self.insert_doubled(2 * i, 2 * j, g)
    }

    pub fn get_doubled(&self, h2: i32, q2: i32) -> Group {
        self.groups.get(&(h2, q2)).cloned().unwrap_or_default()
    }

    /// Group in plain gradings `(i, j)`.
    pub fn get(&self, i: i32, j: i32) -> Group {
        self.get_doubled(2 * i, 2 * j)
    }

    pub fn iter_doubled(&self) -> impl Iterator<Item = (&(i32, i32), &Group)> {
        self.groups.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.groups.keys().all(|&(h, q)| h % 2 == 0 && q % 2 == 0)
    }

    /// Groups in plain gradings; fails on half-integral bidegrees.
    pub fn plain(&self) -> Result<BTreeMap<(i32, i32), Group>> {
        self.groups
            .iter()
            .map(|(&(h2, q2), g)| {
                if h2 % 2 != 0 || q2 % 2 != 0 {
                    Err(Error::NonIntegral { h2, q2 })
                } else {
                    Ok(((h2 / 2, q2 / 2), g.clone()))
                }
            })
            .collect()
    }

    /// Shift all bidegrees by doubled amounts.
    pub fn shifted(&self, dh2: i32, dq2: i32) -> Self {
        BigradedGroups { groups: self.groups.iter().map(|(&(h, q), g)| ((h + dh2, q + dq2), g.clone())).collect() }
    }

    /// Restrict to doubled quantum degrees in `lo..=hi`.
    pub fn window_doubled(&self, lo: i32, hi: i32) -> Self {
        BigradedGroups {
            groups: self
                .groups
                .iter()
                .filter(|(&(_, q), _)| lo <= q && q <= hi)
                .map(|(k, g)| (*k, g.clone()))
                .collect(),
        }
    }

    /// Restrict to plain quantum degrees in `lo..=hi`.
    pub fn window(&self, lo: i32, hi: i32) -> Self {
        self.window_doubled(2 * lo, 2 * hi)
    }

    /// Doubled quantum degrees that carry a nonzero group.
    pub fn q2_support(&self) -> BTreeSet<i32> {
        self.groups.keys().map(|&(_, q)| q).collect()
    }

    /// Degreewise direct sum with `other`.
    pub fn extend(&mut self, other: &BigradedGroups) {
        for (&(h2, q2), g) in &other.groups {
            let mine = self.get_doubled(h2, q2);
            let torsion = mine.torsion.iter().chain(&g.torsion).copied().collect();
            self.insert_doubled(h2, q2, Group::with_torsion(mine.rank + g.rank, torsion));
        }
    }

    /// Total free rank.
    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.rank).sum()
    }
}

/// Integral cohomology of a bigraded complex.
pub fn cohomology(c: &BigradedComplex) -> Result<BigradedGroups> {
    let qs: Vec<i32> = c.q2_values().into_iter().collect();
    let parts: Vec<Result<Vec<(Grading, Group)>>> = qs
        .par_iter()
        .map(|&q2| {
            let mut s = c.slice(q2);
            let keep = s.reduce_units()?;
            let blocks = s.blocks(&keep);
            let mut out_rank: BTreeMap<i32, usize> = BTreeMap::new();
            let mut torsion_in: BTreeMap<i32, Vec<u64>> = BTreeMap::new();
            for (&h2, (src, tgt)) in &blocks {
                let m = s.dense(src, tgt);
                let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                let diag = snf::diagonal(big);
                out_rank.insert(h2, diag.len());
                let t = torsion_in.entry(h2 + 2).or_default();
                for d in diag.iter().filter(|d| **d > BigInt::from(1)) {
                    for pk in prime_powers(d) {
                        t.push(pk.to_u64().ok_or_else(|| Error::Invariant("torsion exceeds u64".into()))?);
                    }
                }
            }
            let mut res = vec![];
            for (&h2, (src, _)) in &blocks {
                let rank = src.len() - out_rank[&h2] - out_rank.get(&(h2 - 2)).copied().unwrap_or(0);
                let g = Group::with_torsion(rank, torsion_in.remove(&h2).unwrap_or_default());
                res.push(((h2, q2), g));
            }
            Ok(res)
        })
        .collect();
    let mut g = BigradedGroups::new();
    for p in parts {
        for ((h2, q2), grp) in p? {
            g.insert_doubled(h2, q2, grp);
        }
    }
    Ok(g)
}

/// Dimensions of cohomology with coefficients in the field with `p`
/// elements, keyed by doubled bidegree (zero entries omitted).
pub fn mod_p_cohomology(c: &BigradedComplex, p: u64) -> Result<BTreeMap<(i32, i32), usize>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut out = BTreeMap::new();
    let mut rank_out: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for &(h2, q2) in c.ranks.keys() {
        rank_out.insert((h2, q2), snf::rank_mod_p(&c.matrix(h2, q2), p));
    }
    for (&(h2, q2), &n) in &c.ranks {
        let dim = n - rank_out[&(h2, q2)] - rank_out.get(&(h2 - 2, q2)).copied().unwrap_or(0);
        if dim > 0 {
            out.insert((h2, q2), dim);
        }
    }
    Ok(out)
}

/// Mod-`p` dimensions predicted from integral groups by universal coefficients.
pub fn uct_prediction(g: &BigradedGroups, p: u64) -> BTreeMap<(i32, i32), usize> {
    let mut out: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (&(h2, q2), grp) in &g.groups {
        let tors = grp.torsion.iter().filter(|&&t| t % p == 0).count();
        *out.entry((h2, q2)).or_insert(0) += grp.rank + tors;
        if tors > 0 {
            *out.entry((h2 - 2, q2)).or_insert(0) += tors;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times(k: i64) -> BigradedComplex {
        let mut c = BigradedComplex::new();
        c.add_generators(0, 0, 1);
        c.add_generators(2, 0, 1);
        c.add_entry(0, 0, 0, 0, k);
        c
    }

    #[test]
    fn multiplication_by_two() {
        let g = cohomology(&times(2)).unwrap();
        assert_eq!(g.get(1, 0), Group::with_torsion(0, vec![2]));
        assert!(g.get(0, 0).is_zero());
        let d2 = mod_p_cohomology(&times(2), 2).unwrap();
        assert_eq!(d2.values().copied().collect::<Vec<_>>(), vec![1, 1]);
        assert!(mod_p_cohomology(&times(2), 3).unwrap().is_empty());
        assert_eq!(uct_prediction(&g, 2), d2);
        assert!(mod_p_cohomology(&times(2), 4).is_err());
    }

    #[test]
    fn zero_differential_is_free() {
        let mut c = BigradedComplex::new();
        c.add_generators(0, 2, 3);
        c.add_generators(2, 4, 1);
        let g = cohomology(&c).unwrap();
        assert_eq!(g.get(0, 1), Group::free(3));
        assert_eq!(g.get(1, 2), Group::free(1));
    }

    #[test]
    fn composite_torsion_splits() {
        let g = cohomology(&times(12)).unwrap();
        assert_eq!(g.get(1, 0).torsion, vec![3, 4]);
        assert_eq!(g.get(1, 0).to_string(), "Z/3+Z/4");
        let g = cohomology(&times(-1)).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn plain_rejects_half_integers() {
        let mut g = BigradedGroups::new();
        g.insert_doubled(1, 3, Group::free(1));
        assert!(matches!(g.plain(), Err(Error::NonIntegral { h2: 1, q2: 3 })));
    }
}
