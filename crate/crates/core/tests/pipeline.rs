mod common;

use common::*;

#[test]
fn scan_matches_cube_on_corpus() {
    let corpus = corpus();
    assert!(corpus.len() >= 20);
    for (name, d) in &corpus {
        assert_eq!(scan_kh(d), cube_kh(d), "{name}");
    }
}

use ckh_core::colored::approximant_kh;
use ckh_core::diagram::{braid_closure, decompose, parse_pd, LinkDiagram};
use ckh_core::homology::{cohomology, graded_euler, kauffman_bracket, mod_p_cohomology, uct_prediction};
use ckh_core::simplify::{naive_cube, scan, ScanOptions};

/// Braid words related by one Reidemeister II or III move.
const MOVE_PAIRS: &[(usize, &[i32], &[i32])] = &[
    (2, &[1, -1], &[]),
    (2, &[1, 1, 1, -1, 1], &[1, 1, 1]),
    (3, &[1, 2, -2, 1, 1], &[1, 1, 1]),
    (3, &[1, 2, 1], &[2, 1, 2]),
    (3, &[-1, -2, -1, 2], &[-2, -1, -2, 2]),
    (3, &[1, 2, 1, -2, -2], &[2, 1, 2, -2, -2]),
    (3, &[-1, 2, 1], &[2, 1, -2]),
];

#[test]
fn reidemeister_two_and_three_pairs() {
    for &(n, a, b) in MOVE_PAIRS {
        let (da, db) = (braid_closure(n, a).unwrap(), braid_closure(n, b).unwrap());
        assert_eq!(scan_kh(&da), scan_kh(&db), "{a:?} vs {b:?}");
    }
}

#[test]
fn scan_is_deterministic() {
    for (name, d) in corpus() {
        let run = || {
            let (c, stats) = scan(&decompose(&d.to_tangle(), &[], &[]), &[], &ScanOptions::default()).unwrap();
            (c.to_json(), stats)
        };
        assert_eq!(run(), run(), "{name}");
    }
}

#[test]
fn homology_consistency_on_corpus() {
    for (name, d) in corpus() {
        let c = scan_complex(&d);
        c.check_d2().unwrap();
        let g = cohomology(&c).unwrap();
        assert_eq!(graded_euler(&g, None), c.chain_euler(), "{name}");
        assert_eq!(kauffman_bracket(&d).unwrap(), graded_euler(&g, None), "{name}");
        for p in [2, 3, 5] {
            let dims = mod_p_cohomology(&c, p).unwrap();
            let dims: std::collections::BTreeMap<_, _> = dims.into_iter().filter(|&(_, v)| v > 0).collect();
            assert_eq!(dims, uct_prediction(&g, p), "{name} mod {p}");
        }
        let cube = naive_cube(&d, 12).unwrap();
        cube.check_d2().unwrap();
        assert_eq!(cube.chain_euler(), c.chain_euler(), "{name}");
    }
}

#[test]
fn known_torsion() {
    // T(2,5) carries two Z/2 summands; the figure-eight is thin of determinant 5
    let g = scan_kh(&braid_closure(2, &[1; 5]).unwrap());
    let torsion: Vec<_> = g.iter_doubled().filter(|(_, grp)| !grp.torsion.is_empty()).collect();
    assert_eq!(torsion.len(), 2);
    assert!(torsion.iter().all(|(_, grp)| grp.torsion == vec![2]));
    let f = scan_kh(&parse_pd(FIGURE_EIGHT).unwrap());
    assert_eq!(f.total_rank(), 6);
}

/// Largest object count after any tensor step, recorded on the reference
/// implementation; runs must stay within a factor 2.
const BASELINES: &[(&str, usize)] = &[
    ("T(2,3)", 6),
    ("T(2,-7)", 14),
    ("4_1", 10),
    ("5_2", 14),
    ("6_1", 18),
    ("granny", 18),
    ("square", 18),
    ("hopf", 4),
    ("fig8 braid", 10),
];

#[test]
fn telemetry_within_baselines() {
    let corpus = corpus();
    for &(name, base) in BASELINES {
        let d = &corpus.iter().find(|(n, _)| n == name).unwrap().1;
        let (_, s) = scan(&decompose(&d.to_tangle(), &[], &[]), &[], &ScanOptions::default()).unwrap();
        assert!(s.max_objects() <= 2 * base, "{name}: {} objects, baseline {base}", s.max_objects());
    }
    let colored = |pd: &str, colors: &[u32], r: usize| -> usize {
        let mut d: LinkDiagram = parse_pd(pd).unwrap();
        d.set_colors(colors).unwrap();
        approximant_kh(&d, &vec![r; colors.len()], &ScanOptions::default()).unwrap().1.max_objects()
    };
    for (pd, colors, r, base) in [
        ("circle[1]", vec![3], 5, 44),
        ("circle[1]", vec![2], 6, 24),
        ("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", vec![2], 8, 158),
        (HOPF, vec![2, 1], 6, 76),
    ] {
        let m = colored(pd, &colors, r);
        assert!(m <= 2 * base, "{pd} {colors:?} r={r}: {m} objects, baseline {base}");
    }
}

#[test]
fn cube_agrees_on_small_cables() {
    let opts = ScanOptions::default();
    let mut u = braid_closure(1, &[]).unwrap();
    u.set_color(0, 2).unwrap();
    for r in 0..=4 {
        let (cd, spec) = ckh_core::colored::approximant(&u, r).unwrap();
        let cube = cohomology(&naive_cube(&cd.diagram, 12).unwrap()).unwrap();
        let (g, _) = approximant_kh(&u, &[r], &opts).unwrap();
        assert_eq!(g, cube.shifted(spec.shift_h2, spec.shift_q2), "r = {r}");
    }
}
