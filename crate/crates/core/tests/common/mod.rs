#![allow(dead_code)]

use ckh_core::diagram::{add_kink, braid_closure, decompose, parse_pd, KinkSign, LinkDiagram};
use ckh_core::homology::{cohomology, BigradedComplex, BigradedGroups};
use ckh_core::simplify::{naive_cube, scan, ScanOptions};

pub const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
pub const FIVE_TWO: &str = "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]";
pub const SIX_ONE: &str = "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]";
pub const HOPF: &str = "X[4,1,3,2] X[2,3,1,4]";

/// Closed diagrams with at most 10 crossings.
pub fn corpus() -> Vec<(String, LinkDiagram)> {
    let mut v = vec![];
    for k in 1..=7usize {
        v.push((format!("T(2,{k})"), braid_closure(2, &vec![1; k]).unwrap()));
        v.push((format!("T(2,-{k})"), braid_closure(2, &vec![-1; k]).unwrap()));
    }
    v.push(("4_1".into(), parse_pd(FIGURE_EIGHT).unwrap()));
    v.push(("5_2".into(), parse_pd(FIVE_TWO).unwrap()));
    v.push(("6_1".into(), parse_pd(SIX_ONE).unwrap()));
    v.push(("granny".into(), braid_closure(3, &[1, 1, 1, 2, 2, 2]).unwrap()));
    v.push(("square".into(), braid_closure(3, &[1, 1, 1, -2, -2, -2]).unwrap()));
    v.push(("unlink2".into(), braid_closure(2, &[]).unwrap()));
    v.push(("unlink3".into(), braid_closure(3, &[]).unwrap()));
    v.push(("kink+".into(), parse_pd("X[1,1,2,2]").unwrap()));
    v.push(("kink-".into(), parse_pd("X[1,2,2,1]").unwrap()));
    v.push(("hopf".into(), parse_pd(HOPF).unwrap()));
    let u = braid_closure(1, &[]).unwrap();
    let k2 = add_kink(&add_kink(&u, 1, KinkSign::Positive).unwrap(), 1, KinkSign::Negative).unwrap();
    v.push(("kinked unknot".into(), k2));
    v.push(("fig8 braid".into(), braid_closure(3, &[1, -2, 1, -2]).unwrap()));
    v
}

pub fn scan_complex(d: &LinkDiagram) -> BigradedComplex {
    let dec = decompose(&d.to_tangle(), &[], &[]);
    let (c, _) = scan(&dec, &[], &ScanOptions::default()).unwrap();
    c.validate().unwrap();
    BigradedComplex::from_tangle_complex(&c).unwrap()
}

pub fn scan_kh(d: &LinkDiagram) -> BigradedGroups {
    cohomology(&scan_complex(d)).unwrap()
}

pub fn cube_kh(d: &LinkDiagram) -> BigradedGroups {
    cohomology(&naive_cube(d, 12).unwrap()).unwrap()
}
