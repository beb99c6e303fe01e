//! One line per acceptance criterion: `PASS` or `FAIL`, with details.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command;
use std::time::Instant;

use ckh_core::colored::{colored_kh, colored_kh_via_projector, detect_tail_periodicity, ColoredResult, Mode};
use ckh_core::diagram::{braid_closure, disjoint_union, parse_pd, LinkDiagram};
use ckh_core::homology::{graded_euler, groups_from_json, kauffman_bracket, BigradedGroups, Group, LaurentPoly};
use ckh_core::simplify::ScanOptions;

/// Criteria expected to fail. The trefoil item asserts the framing shift
/// in the direction opposite to the one computed; the reversed relation is
/// checked alongside.
const EXPECTED_FAILURES: &[&str] = &["2-colored trefoil"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(checks: &[(&str, bool)]) -> Outcome {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let detail = if failed.is_empty() {
        checks.iter().map(|c| c.0).collect::<Vec<_>>().join("; ")
    } else {
        format!("failed: {}", failed.join("; "))
    };
    Outcome { pass: failed.is_empty(), detail }
}

fn opts() -> ScanOptions {
    ScanOptions::default()
}

fn colored(pd: &str, colors: &[u32], framing: Option<i64>) -> LinkDiagram {
    let mut d = parse_pd(pd).unwrap();
    d.set_colors(colors).unwrap();
    if let Some(f) = framing {
        d.set_framing(0, f).unwrap();
    }
    d
}

const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";

/// Certified runs, kept for the stability criterion.
struct Runs(Vec<(String, LinkDiagram, i32, i32, ColoredResult)>);

impl Runs {
    fn certified(&mut self, name: &str, d: &LinkDiagram, lo: i32, hi: i32) -> BigradedGroups {
        let res = colored_kh(d, lo, hi, Mode::Certified, &opts()).unwrap();
        let g = res.groups.clone();
        self.0.push((name.to_string(), d.clone(), lo, hi, res));
        g
    }
}

/// Known groups of the 3-colored unknot on `lo..=hi`.
fn three_colored_unknot(lo: i32, hi: i32) -> BigradedGroups {
    let mut g = BigradedGroups::new();
    let z = || Group::free(1);
    let z2 = || Group::with_torsion(0, vec![2]);
    g.insert(0, -3, z());
    g.insert(0, -1, z());
    g.insert(2, 1, z());
    g.insert(3, 3, z2());
    g.insert(4, 3, z());
    for j in 0..10 {
        g.insert(3 + 4 * j, 6 * j + 5, z());
        g.insert(4 + 4 * j, 6 * j + 5, z());
        if j >= 1 {
            g.insert(1 + 4 * j, 6 * j + 1, z());
            g.insert(2 + 4 * j, 6 * j + 1, z());
            g.insert(1 + 4 * j, 6 * j + 3, z());
            g.insert(3 + 4 * j, 6 * j + 3, z2());
            g.insert(4 + 4 * j, 6 * j + 3, z());
        }
    }
    g.window(lo, hi)
}

fn three_colored_unknot_via_cli() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ckh-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("unknot.pd");
    std::fs::write(&file, "circle[1]\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ckh"))
        .args(["--format", "json", "colored"])
        .arg(&file)
        .args(["--colors", "3", "--qmin", "-3", "--qmax", "17", "--mode", "certified"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let g = groups_from_json(&v).unwrap();
    let certs = v["certificates"].as_array().map(|a| a.len()).unwrap_or(0);
    outcome(&[
        ("exit 0", out.status.success()),
        ("every group of the table on -3..17", g == three_colored_unknot(-3, 17)),
        ("Z/2 at j=3, 9, 15", [(3, 3), (7, 9), (11, 15)].iter().all(|&(i, j)| g.get(i, j).torsion == vec![2])),
        ("21 certificates", certs == 21),
    ])
}

fn two_colored_unknot(runs: &mut Runs) -> Outcome {
    let u2 = colored("circle[1]", &[2], None);
    let g = runs.certified("U2", &u2, -2, 18);
    let row = |j: i32| -> Vec<(i32, Group)> {
        g.iter_doubled().filter(|(&(_, q2), _)| q2 == 2 * j).map(|(&(h2, _), grp)| (h2 / 2, grp.clone())).collect()
    };
    let torsion_rows = (4..=18).step_by(4).all(|j| {
        let r = row(j);
        r.len() == 1 && r[0].1 == Group::with_torsion(0, vec![2]) && r[0].0 == j / 2 + 1
    });
    let free_rows = (6..=18).step_by(4).all(|j| {
        let r = row(j);
        r == vec![(j / 2, Group::free(1)), (j / 2 + 1, Group::free(1))]
    });
    let euler = graded_euler(&g, Some((-2, 18))) == LaurentPoly::from_plain(-2, &[1, 0, 1, 0, 1]);
    let period =
        detect_tail_periodicity(&g, -2, 18, 4).map(|p| p.iter().any(|p| p.dq == 4 && p.di == 2)).unwrap_or(false);
    outcome(&[
        ("single Z at (0,-2)", row(-2) == vec![(0, Group::free(1))]),
        ("Euler q^-2 + 1 + q^2", euler),
        ("one Z/2 per j = 0 mod 4, at i = j/2 + 1", torsion_rows),
        ("two Z per j = 2 mod 4, at i = j/2, j/2 + 1", free_rows),
        ("period (4, 2)", period),
    ])
}

fn trefoil(runs: &mut Runs) -> Outcome {
    let t0 = colored(TREFOIL, &[2], Some(0));
    let t3 = colored(TREFOIL, &[2], None);
    let u2 = colored("circle[1]", &[2], None);
    let fixed = |d: &LinkDiagram, lo: i32, hi: i32| colored_kh(d, lo, hi, Mode::Fixed(8), &opts()).unwrap().groups;
    // (a) literally: Kh(T^0)^{i,j} = Kh(T^3)^{i+6,j+12}
    let a0 = fixed(&t0, 2, 24);
    let literal = a0 == fixed(&t3, 14, 36).shifted(-12, -24);
    let reversed = a0 == fixed(&t3, -10, 12).shifted(12, 24);
    // (b) at r = 8 as stated, and at the certified r
    let b8 = fixed(&t0, 26, 34) == fixed(&u2, 26, 34);
    let bc = runs.certified("T0", &t0, 26, 34) == runs.certified("U2", &u2, 26, 34);
    let c = fixed(&t0, 16, 16).get(9, 16).torsion.contains(&4);
    let mut o = outcome(&[
        ("(a) Kh(T0)^{i,j} = Kh(T3)^{i+6,j+12}", literal),
        ("(b) T0 = U2 on 26..34 at r=8", b8),
        ("(b) T0 = U2 on 26..34 certified", bc),
        ("(c) Z/4 at j=16", c),
    ]);
    o.detail.push_str(&format!(
        " | reversed relation Kh(T0)^{{i,j}} = Kh(T3)^{{i-6,j-12}}: {}",
        if reversed { "holds" } else { "fails" }
    ));
    o
}

fn hopf(runs: &mut Runs) -> Outcome {
    let h = colored(common::HOPF, &[2, 1], None);
    let mut u = disjoint_union(&parse_pd("circle[1]").unwrap(), &parse_pd("circle[1]").unwrap()).unwrap();
    u.set_colors(&[2, 1]).unwrap();
    let gh = runs.certified("H21", &h, -5, 13);
    let gu = runs.certified("U21", &u, -5, 13);
    let bottom: Vec<_> = gh.iter_doubled().filter(|(&(_, q2), _)| q2 == -10).collect();
    outcome(&[
        ("H21 = U21 on 7..13", gh.window(7, 13) == gu.window(7, 13)),
        ("single Z at (-2,-5)", bottom.len() == 1 && gh.get(-2, -5) == Group::free(1)),
    ])
}

fn oracle() -> Outcome {
    let corpus = common::corpus();
    let bad: Vec<String> =
        corpus.iter().filter(|(_, d)| common::scan_kh(d) != common::cube_kh(d)).map(|(n, _)| n.clone()).collect();
    outcome(&[
        (&format!("{} diagrams", corpus.len()), corpus.len() >= 20),
        (
            &format!("scan = cube{}", if bad.is_empty() { String::new() } else { format!(" except {bad:?}") }),
            bad.is_empty(),
        ),
    ])
}

fn routes() -> Outcome {
    let u2 = colored("circle[1]", &[2], None);
    let t0 = colored(TREFOIL, &[2], Some(0));
    let agree = |d: &LinkDiagram, lo: i32, hi: i32| {
        let twist = colored_kh(d, lo, hi, Mode::Certified, &opts()).unwrap().groups;
        colored_kh_via_projector(d, 12, lo, hi, &opts()).map(|p| p == twist).unwrap_or(false)
    };
    outcome(&[("U2 on -2..10", agree(&u2, -2, 10)), ("T0 on 2..16", agree(&t0, 2, 16))])
}

fn invariance(runs: &mut Runs) -> Outcome {
    const PAIRS: &[(usize, &[i32], &[i32])] = &[
        (2, &[1, -1], &[]),
        (2, &[1, 1, 1, -1, 1], &[1, 1, 1]),
        (3, &[1, 2, -2, 1, 1], &[1, 1, 1]),
        (3, &[1, 2, 1], &[2, 1, 2]),
        (3, &[-1, -2, -1, 2], &[-2, -1, -2, 2]),
        (3, &[1, 2, 1, -2, -2], &[2, 1, 2, -2, -2]),
        (3, &[-1, 2, 1], &[2, 1, -2]),
    ];
    let moves = PAIRS.iter().all(|&(n, a, b)| {
        common::scan_kh(&braid_closure(n, a).unwrap()) == common::scan_kh(&braid_closure(n, b).unwrap())
    });
    let h = colored(common::HOPF, &[2, 1], None);
    let base = runs.certified("H21", &h, -5, 13);
    let basepoints = [(0usize, 2u32), (1, 4)].iter().all(|&(k, e)| {
        let mut m = h.clone();
        m.set_basepoint(k, e).unwrap();
        runs.certified("H21 moved", &m, -5, 13) == base
    });
    let unstable: Vec<String> = runs
        .0
        .iter()
        .filter(|(_, d, lo, hi, res)| {
            let next = colored_kh(d, *lo, *hi, Mode::Fixed(res.r + 1), &opts()).unwrap();
            next.groups != res.groups
        })
        .map(|(n, ..)| n.clone())
        .collect();
    outcome(&[
        (&format!("{} R2/R3 pairs", PAIRS.len()), moves),
        ("basepoint relocation on H21", basepoints),
        (&format!("r vs r+1 on {} certified runs", runs.0.len()), unstable.is_empty()),
    ])
}

fn decategorification() -> Outcome {
    let bracket =
        common::corpus().iter().all(|(_, d)| kauffman_bracket(d).unwrap() == graded_euler(&common::scan_kh(d), None));
    let euler = [(1u32, -1, 1), (2, -2, 18), (3, -3, 17)].iter().all(|&(c, lo, hi)| {
        let d = colored("circle[1]", &[c], None);
        let g = colored_kh(&d, lo, hi, Mode::Certified, &opts()).unwrap().groups;
        let coeffs: Vec<i64> = (0..=2 * c).map(|k| (k % 2 == 0) as i64).collect();
        graded_euler(&g, Some((lo, hi))) == LaurentPoly::from_plain(-(c as i32), &coeffs)
    });
    outcome(&[("bracket = Euler on the corpus", bracket), ("colored Euler of U1, U2, U3", euler)])
}

fn main() {
    let mut runs = Runs(vec![]);
    let mut results: Vec<(&str, Outcome, f64)> = vec![];
    let mut record = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        results.push((name, o, t.elapsed().as_secs_f64()));
    };
    record("3-colored unknot table", &mut three_colored_unknot_via_cli);
    record("2-colored unknot pattern", &mut || two_colored_unknot(&mut runs));
    record("2-colored trefoil", &mut || trefoil(&mut runs));
    record("(2,1)-Hopf vs unlink", &mut || hopf(&mut runs));
    record("Oracle equivalence", &mut oracle);
    record("Route agreement", &mut routes);
    record("Invariance suite", &mut || invariance(&mut runs));
    record("Decategorification", &mut decategorification);
    for (name, o, secs) in &results {
        println!("{} {name} ({secs:.2}s): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let passed = results.iter().filter(|r| r.1.pass).count();
    println!("{passed}/{} passed; expected failures: {}", results.len(), EXPECTED_FAILURES.join(", "));
    for (name, o, _) in &results {
        let expected_fail = EXPECTED_FAILURES.contains(name);
        assert!(o.pass || expected_fail, "{name}: {}", o.detail);
        if expected_fail && !o.pass {
            assert!(o.detail.ends_with("holds"), "{name}: {}", o.detail);
        }
    }
}
