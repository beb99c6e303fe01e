//! Colored cohomology from twisted cables and from the truncated projector.

use serde::Serialize;

use crate::cobordism::{FlatTangle, Smoothing};
use crate::complex::TangleComplex;
use crate::diagram::{cable, decompose, CabledDiagram, Crossing, LinkDiagram, Piece, TangleDecomposition};
use crate::error::{Error, Result};
use crate::homology::{cohomology, BigradedComplex, BigradedGroups, Group};
use crate::simplify::{scan, ScanOptions, ScanStats};

/// Twist counts and the overall doubled bigrading shift of an approximant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximantSpec {
    /// Twist units per component (`c·units` rows of `σ₁⋯σ_{c−1}`).
    pub units: Vec<usize>,
    pub shift_h2: i32,
    pub shift_q2: i32,
}

/// Doubled shift relating a 2-cable approximant whose framing is `Δf` below
/// the diagram's writhe to the approximant of the unkinked diagram with `Δf`
/// fewer twist units: `⟨D^r⟩ = h^{Δf} q^{3Δf} ⟨D′^{r−Δf}⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FramingShift {
    pub dh2: i32,
    pub dq2: i32,
    pub absorbed_units: i64,
}

pub fn framing_shift_2cable(df: i64) -> FramingShift {
    FramingShift { dh2: 2 * df as i32, dq2: 6 * df as i32, absorbed_units: df }
}

/// The cable of `link` with `c(k)·units[k]` rows of twists at each lifted
/// basepoint, and its shift `Σ units[k]·c(k)(c(k)−1)` (doubled).
pub fn approximant_with_units(link: &LinkDiagram, units: &[usize]) -> Result<(CabledDiagram, ApproximantSpec)> {
    let comps = link.components();
    if units.len() != comps.len() {
        return Err(Error::InvalidDiagram(format!("{} twist counts for {} components", units.len(), comps.len())));
    }
    let mut cd = cable(link)?;
    let mut shift = 0i32;
    for (k, comp) in comps.iter().enumerate() {
        let c = comp.color as usize;
        if c >= 2 {
            cd.insert_twists(k, c, c * units[k])?;
            shift += (units[k] * c * (c - 1)) as i32;
        }
    }
    let units = comps.iter().zip(units).map(|(comp, &u)| if comp.color >= 2 { u } else { 0 }).collect();
    Ok((cd, ApproximantSpec { units, shift_h2: shift, shift_q2: shift }))
}

/// The `r`-th approximant with the same twist count on every component.
pub fn approximant(link: &LinkDiagram, r: usize) -> Result<(CabledDiagram, ApproximantSpec)> {
    approximant_with_units(link, &vec![r; link.components().len()])
}

/// Per-component `writhe − framing`; nonzero values are only supported on
/// 2-colored components.
pub fn framing_offsets(link: &LinkDiagram) -> Result<Vec<i64>> {
    link.components()
        .iter()
        .enumerate()
        .map(|(k, comp)| {
            let df = comp.writhe - comp.framing;
            if df != 0 && comp.color != 2 {
                Err(Error::UnsupportedColor(format!(
                    "component {} has framing {} but writhe {}; framing changes are supported on 2-colored components only",
                    k + 1,
                    comp.framing,
                    comp.writhe
                )))
            } else {
                Ok(df)
            }
        })
        .collect()
}

/// Total doubled shift from the framing offsets, at the level of groups.
fn framing_group_shift(offsets: &[i64]) -> (i32, i32) {
    // ⟨D^r⟩ = h^{Δf} q^{3Δf} ⟨D′^{r−Δf}⟩ and the normalizations differ by (Δf, Δf)
    let s: i64 = offsets.iter().sum();
    let f = framing_shift_2cable(s);
    (f.dh2 + 2 * s as i32, f.dq2 + 2 * s as i32)
}

fn reduce_closed(
    dec: &TangleDecomposition,
    blocks: &[TangleComplex],
    opts: &ScanOptions,
) -> Result<(BigradedGroups, ScanStats)> {
    let (c, stats) = scan(dec, blocks, opts)?;
    let bc = BigradedComplex::from_tangle_complex(&c)?;
    Ok((cohomology(&bc)?, stats))
}

/// Reduced cochain complex of a closed color-1 diagram.
pub fn khovanov_complex(link: &LinkDiagram, opts: &ScanOptions) -> Result<(BigradedComplex, ScanStats)> {
    if link.colors().iter().any(|&c| c != 1) {
        return Err(Error::UnsupportedColor(
            "plain cohomology expects color 1 everywhere; use the colored pipeline".into(),
        ));
    }
    let (c, stats) = scan(&decompose(&link.to_tangle(), &[], &[]), &[], opts)?;
    Ok((BigradedComplex::from_tangle_complex(&c)?, stats))
}

/// Integral cohomology of a closed color-1 diagram via scanning.
pub fn khovanov(link: &LinkDiagram, opts: &ScanOptions) -> Result<(BigradedGroups, ScanStats)> {
    let (c, stats) = khovanov_complex(link, opts)?;
    Ok((cohomology(&c)?, stats))
}

/// Shifted cohomology of the approximant with the given twist units, with
/// the diagram taken as is (no framing correction).
pub fn approximant_kh(link: &LinkDiagram, units: &[usize], opts: &ScanOptions) -> Result<(BigradedGroups, ScanStats)> {
    let (cd, spec) = approximant_with_units(link, units)?;
    let dec = decompose(&cd.diagram.to_tangle(), &cd.twist_regions, &[]);
    let (g, stats) = reduce_closed(&dec, &[], opts)?;
    Ok((g.shifted(spec.shift_h2, spec.shift_q2), stats))
}

/// Doubled minimum quantum degree over the reduced cable with every
/// twisted cut-site left open; each of the `m` open arcs of an object is
/// allowed −1.
pub fn away_part_min_q(link: &LinkDiagram, opts: &ScanOptions) -> Result<i32> {
    let cd = cable(link)?;
    let sites: Vec<usize> = (0..cd.sites.len()).filter(|&k| cd.sites[k].color >= 2).collect();
    let (t, _) = cd.open_sites(&sites)?;
    let (c, _) = scan(&decompose(&t, &[], &[]), &[], opts)?;
    c.objects()
        .map(|(_, o)| o.q2 - o.smoothing.len() as i32)
        .min()
        .ok_or_else(|| Error::Invariant("away part reduced to the zero complex".into()))
}

/// Doubled bound `B(r)` for the given colors, twist units and `Q₀`.
pub fn bound_b2(colors: &[u32], units: &[usize], q0_2: i32) -> Option<i32> {
    colors
        .iter()
        .zip(units)
        .filter(|(&c, _)| c >= 2)
        .map(|(&c, &u)| 2 * (2 * c as i32 * (u as i32 - 1) + 1) + q0_2)
        .min()
}

/// Smallest `r ≥ 1` (at least every `offset`) with `j ≤ B(r) − 2`, where
/// component `k` has `r − offsets[k]` twist units. Returns `(r, B2)`;
/// `(0, None)` when no component carries a color above 1.
pub fn certified_r_for(colors: &[u32], offsets: &[i64], q0_2: i32, j2: i32) -> (usize, Option<i32>) {
    if colors.iter().all(|&c| c < 2) {
        return (0, None);
    }
    let start = offsets.iter().copied().max().unwrap_or(0).max(1) as usize;
    let mut r = start;
    loop {
        let units: Vec<usize> = offsets.iter().map(|&o| (r as i64 - o) as usize).collect();
        let b2 = bound_b2(colors, &units, q0_2).unwrap();
        if j2 <= b2 - 4 {
            return (r, Some(b2));
        }
        r += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Certified,
    Empirical,
    Fixed,
}

/// Per-quantum-degree record of how a group was obtained (doubled units).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub j2: i32,
    pub r: usize,
    pub method: Method,
    pub b2: Option<i32>,
    pub q0_2: Option<i32>,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        let num = |x2: i32| -> serde_json::Value {
            if x2 % 2 == 0 {
                (x2 / 2).into()
            } else {
                (x2 as f64 / 2.0).into()
            }
        };
        let mut v = serde_json::json!({
            "j": num(self.j2),
            "r": self.r,
            "method": self.method,
        });
        if let Some(b) = self.b2 {
            v["B"] = num(b);
        }
        if let Some(q) = self.q0_2 {
            v["Q0"] = num(q);
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Certified,
    /// Increase `r` from its minimum until `k` consecutive results agree.
    Empirical(usize),
    Fixed(usize),
}

/// Largest `r` tried in empirical mode.
pub const EMPIRICAL_MAX_R: usize = 40;

#[derive(Clone, Debug)]
pub struct ColoredResult {
    pub groups: BigradedGroups,
    pub certificates: Vec<Certificate>,
    pub r: usize,
    pub stats: ScanStats,
}

/// Colored cohomology on the plain window `jmin..=jmax`. Framings below the
/// writhe on 2-colored components are handled by absorbing twist units.
pub fn colored_kh(link: &LinkDiagram, jmin: i32, jmax: i32, mode: Mode, opts: &ScanOptions) -> Result<ColoredResult> {
    let colors = link.colors();
    let offsets = framing_offsets(link)?;
    let (fh, fq) = framing_group_shift(&offsets);
    let min_r = offsets.iter().copied().max().unwrap_or(0).max(0) as usize;
    let has_twists = colors.iter().any(|&c| c >= 2);
    let at = |r: usize| -> Result<(BigradedGroups, ScanStats)> {
        if r < min_r {
            return Err(Error::InvalidDiagram(format!(
                "r = {r} is below the {min_r} twist units absorbed by the framing"
            )));
        }
        let units: Vec<usize> = offsets.iter().map(|&o| (r as i64 - o) as usize).collect();
        let (g, s) = approximant_kh(link, &units, opts)?;
        let g = g.shifted(fh, fq).window(jmin, jmax);
        g.plain()?;
        Ok((g, s))
    };
    let js = (2 * jmin..=2 * jmax).step_by(2);
    match mode {
        Mode::Fixed(r) => {
            let (groups, stats) = at(r)?;
            let certificates =
                js.map(|j2| Certificate { j2, r, method: Method::Fixed, b2: None, q0_2: None }).collect();
            Ok(ColoredResult { groups, certificates, r, stats })
        }
        Mode::Certified => {
            let (r, b2, q0_2) = if has_twists {
                let q0_2 = away_part_min_q(link, opts)?;
                let (r, b2) = certified_r_for(&colors, &offsets, q0_2, 2 * jmax - fq);
                (r, b2, Some(q0_2))
            } else {
                (0, None, None)
            };
            let (groups, stats) = at(r)?;
            // certificates are stated in the coordinates of the output
            let certificates = js
                .map(|j2| Certificate {
                    j2,
                    r,
                    method: Method::Certified,
                    b2: b2.map(|b| b + fq),
                    q0_2: q0_2.map(|q| q + fq),
                })
                .collect();
            Ok(ColoredResult { groups, certificates, r, stats })
        }
        Mode::Empirical(k) => {
            let k = k.max(1);
            let mut history: Vec<BigradedGroups> = vec![];
            let mut r = min_r;
            loop {
                let (g, stats) = at(r)?;
                history.push(g);
                let n = history.len();
                let settled = !has_twists || (n >= k && history[n - k..].iter().all(|h| *h == history[n - 1]));
                if settled {
                    let certificates =
                        js.map(|j2| Certificate { j2, r, method: Method::Empirical, b2: None, q0_2: None }).collect();
                    return Ok(ColoredResult { groups: history.pop().unwrap(), certificates, r, stats });
                }
                if r >= EMPIRICAL_MAX_R {
                    return Err(Error::Invariant(format!("no stabilization up to r = {EMPIRICAL_MAX_R}")));
                }
                r += 1;
            }
        }
    }
}

/// Labels of the projector's boundary: bottom-left, bottom-right,
/// top-left, top-right.
pub const P2_LABELS: [u32; 4] = [1, 2, 3, 4];

/// Reduced complex of the 2-braid `σ₁^N` shifted by doubled `(N, N)`: the
/// identity at `(0, 0)` and a turnback at doubled `(2d, 4d − 2)` for each
/// `1 ≤ d ≤ N`. Boundary labels are [`P2_LABELS`].
pub fn truncated_p2(n: usize, opts: &ScanOptions) -> Result<TangleComplex> {
    let [bl, br, tl, tr] = P2_LABELS;
    let identity = Smoothing::from_pairs(4, &[(0, 2), (1, 3)], 0)?;
    let turnback = Smoothing::from_pairs(4, &[(0, 1), (2, 3)], 0)?;
    let c = if n == 0 {
        let mut c = TangleComplex::new(P2_LABELS.to_vec());
        c.add_object(FlatTangle::new(identity.clone(), 0, 0));
        c
    } else {
        let mut cur = (bl, br);
        let mut next = 5;
        let mut pieces = vec![];
        for i in 0..n {
            let top = if i + 1 == n { (tl, tr) } else { (next, next + 1) };
            next += 2;
            pieces.push(Piece::Crossing { index: i, crossing: Crossing::new(cur.1, top.1, top.0, cur.0) });
            cur = top;
        }
        let (c, _) = scan(&TangleDecomposition { pieces, widths: vec![] }, &[], opts)?;
        c.shift(n as i32, n as i32)
    };
    // canonical boundary order
    let pos: Vec<usize> = P2_LABELS.iter().map(|l| c.labels().iter().position(|x| x == l).unwrap()).collect();
    let mut out = TangleComplex::new(P2_LABELS.to_vec());
    for (_, o) in c.objects() {
        let pairs: Vec<(usize, usize)> = o
            .smoothing
            .pairs()
            .into_iter()
            .map(|(a, b)| (pos.iter().position(|&p| p == a).unwrap(), pos.iter().position(|&p| p == b).unwrap()))
            .collect();
        out.add_object(FlatTangle::new(Smoothing::from_pairs(4, &pairs, 0)?, o.h2, o.q2));
    }
    let map: Vec<usize> = c.objects().map(|(i, _)| i).collect();
    for (a, &i) in map.iter().enumerate() {
        for (&j, m) in c.out_entries(i) {
            let b = map.iter().position(|&x| x == j).unwrap();
            out.set_entry(a, b, m.clone());
        }
    }
    let mut pattern: Vec<(i32, i32, bool)> =
        out.objects().map(|(_, o)| (o.h2, o.q2, o.smoothing == identity)).collect();
    pattern.sort();
    let expected: Vec<(i32, i32, bool)> =
        (0..=n as i32).map(|d| if d == 0 { (0, 0, true) } else { (2 * d, 4 * d - 2, false) }).collect();
    if pattern != expected || out.objects().any(|(_, o)| o.smoothing != identity && o.smoothing != turnback) {
        return Err(Error::Invariant(format!("truncated projector at N = {n} has unexpected objects {pattern:?}")));
    }
    Ok(out)
}

fn projector_groups(link: &LinkDiagram, n: usize, opts: &ScanOptions) -> Result<(BigradedGroups, ScanStats)> {
    let cd = cable(link)?;
    let sites: Vec<usize> = (0..cd.sites.len()).filter(|&k| cd.sites[k].color == 2).collect();
    let (t, opened) = cd.open_sites(&sites)?;
    let p = truncated_p2(n, opts)?;
    let mut blocks = vec![];
    let mut labels = vec![];
    for o in &opened {
        let map = [o.bottom[0], o.bottom[1], o.top[0], o.top[1]];
        let mut b = p.clone();
        b.relabel(p.labels().iter().map(|&l| map[(l - 1) as usize]).collect())?;
        labels.push(b.labels().to_vec());
        blocks.push(b);
    }
    reduce_closed(&decompose(&t, &[], &labels), &blocks, opts)
}

/// Colored cohomology with the truncated projector glued in at every
/// 2-colored cut-site. Fails if truncation levels `N` and `N + 2` disagree on
/// the window.
pub fn colored_kh_via_projector(
    link: &LinkDiagram,
    n: usize,
    jmin: i32,
    jmax: i32,
    opts: &ScanOptions,
) -> Result<BigradedGroups> {
    if let Some(c) = link.colors().into_iter().find(|&c| c > 2) {
        return Err(Error::UnsupportedColor(format!("projector route supports colors ≤ 2, got {c}")));
    }
    let offsets = framing_offsets(link)?;
    let (fh, fq) = framing_group_shift(&offsets);
    if link.colors().iter().all(|&c| c == 1) {
        return Ok(khovanov(link, opts)?.0.window(jmin, jmax));
    }
    let (a, _) = projector_groups(link, n, opts)?;
    let (b, _) = projector_groups(link, n + 2, opts)?;
    let a = a.shifted(fh, fq).window(jmin, jmax);
    a.plain()?;
    if a != b.shifted(fh, fq).window(jmin, jmax) {
        return Err(Error::TruncationInsufficient { n, suggested: n + 4 });
    }
    Ok(a)
}

/// A detected periodicity `G^{i,j} = G^{i+Δi, j+Δq}` for all `j ≥ onset`
/// inside the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Period {
    pub dq: i32,
    pub di: i32,
    pub onset: i32,
}

/// All `(Δq ≤ max_period, |Δi| ≤ 2Δq)` periodicities of the groups on the
/// plain window `jmin..=jmax`, each with its minimal onset; a period is
/// reported only if it is checked on at least `Δq` quantum degrees.
pub fn detect_tail_periodicity(g: &BigradedGroups, jmin: i32, jmax: i32, max_period: i32) -> Result<Vec<Period>> {
    let width = jmax - jmin + 1;
    if max_period < 1 || width < 3 * max_period {
        return Err(Error::WindowTooNarrow(format!(
            "window {jmin}..={jmax} has {width} quantum degrees, need at least {}",
            3 * max_period.max(1)
        )));
    }
    let plain = g.window(jmin, jmax).plain()?;
    let row = |j: i32| -> Vec<(i32, Group)> {
        plain.iter().filter(|(&(_, q), _)| q == j).map(|(&(i, _), grp)| (i, grp.clone())).collect()
    };
    let mut out = vec![];
    for dq in 1..=max_period {
        for di in -2 * dq..=2 * dq {
            let mut onset = jmin;
            for j in (jmin..=jmax - dq).rev() {
                let a = row(j);
                let b: Vec<(i32, Group)> = row(j + dq).into_iter().map(|(i, grp)| (i - di, grp)).collect();
                if a != b {
                    onset = j + 1;
                    break;
                }
            }
            if jmax - dq - onset + 1 >= dq {
                out.push(Period { dq, di, onset });
            }
        }
    }
    out.sort_by_key(|p| (p.onset, p.dq, p.di));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid_closure;

    #[test]
    fn shift_arithmetic() {
        let mut u = braid_closure(1, &[]).unwrap();
        u.set_color(0, 2).unwrap();
        let (cd, spec) = approximant(&u, 3).unwrap();
        assert_eq!((cd.crossing_count(), spec.shift_h2), (6, 6));
        u.set_color(0, 3).unwrap();
        let (cd, spec) = approximant(&u, 2).unwrap();
        assert_eq!((cd.crossing_count(), spec.shift_q2), (12, 12));
        let (cd, spec) = approximant(&u, 0).unwrap();
        assert_eq!((cd.crossing_count(), spec.shift_q2), (0, 0));
    }

    #[test]
    fn certified_r_arithmetic() {
        assert_eq!(certified_r_for(&[2], &[0], -8, 20).0, 5);
        assert_eq!(certified_r_for(&[2], &[0], 0, -4).0, 1);
        assert_eq!(certified_r_for(&[3, 1], &[0, 0], -12, 10).0, 3);
        assert_eq!(certified_r_for(&[1], &[0], -2, 100), (0, None));
    }

    #[test]
    fn framing_shift_values() {
        assert_eq!(framing_shift_2cable(3), FramingShift { dh2: 6, dq2: 18, absorbed_units: 3 });
        assert_eq!(framing_shift_2cable(0), FramingShift { dh2: 0, dq2: 0, absorbed_units: 0 });
        assert_eq!(framing_shift_2cable(1), FramingShift { dh2: 2, dq2: 6, absorbed_units: 1 });
    }

    #[test]
    fn projector_patterns() {
        let opts = ScanOptions::default();
        assert_eq!(truncated_p2(0, &opts).unwrap().len(), 1);
        let p = truncated_p2(2, &opts).unwrap();
        let mut g: Vec<(i32, i32)> = p.objects().map(|(_, o)| (o.h2, o.q2)).collect();
        g.sort();
        assert_eq!(g, vec![(0, 0), (2, 2), (4, 6)]);
        assert_eq!(truncated_p2(5, &opts).unwrap().len(), 6);
        p.validate().unwrap();
    }

    #[test]
    fn periodicity_of_zero_groups() {
        let g = BigradedGroups::new();
        let p = detect_tail_periodicity(&g, 0, 8, 2).unwrap();
        assert_eq!(p.len(), 5 + 9);
        assert!(p.iter().all(|p| p.onset == 0));
        assert!(detect_tail_periodicity(&g, 0, 4, 2).is_err());
    }
}
