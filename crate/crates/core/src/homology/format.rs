use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

use super::{BigradedGroups, Group};

/// A doubled grading as text: `n` when even, `n/2` otherwise.
pub fn grading_key(x2: i32) -> String {
    if x2 % 2 == 0 {
        (x2 / 2).to_string()
    } else {
        format!("{x2}/2")
    }
}

/// Inverse of [`grading_key`]; returns the doubled value.
pub fn parse_grading_key(s: &str) -> Option<i32> {
    match s.split_once('/') {
        Some((n, "2")) => n.trim().parse::<i32>().ok().filter(|v| v % 2 != 0),
        Some(_) => None,
        None => s.trim().parse::<i32>().ok().map(|v| 2 * v),
    }
}

/// `{"<j>": {"<i>": {"rank": r, "torsion": ["2", ...]}}}`
pub fn groups_to_json(g: &BigradedGroups) -> Value {
    let mut by_j: BTreeMap<i32, Map<String, Value>> = BTreeMap::new();
    for (&(h2, q2), grp) in g.iter_doubled() {
        let torsion: Vec<String> = grp.torsion.iter().map(|t| t.to_string()).collect();
        by_j.entry(q2).or_default().insert(grading_key(h2), json!({ "rank": grp.rank, "torsion": torsion }));
    }
    Value::Object(by_j.into_iter().map(|(q2, m)| (grading_key(q2), Value::Object(m))).collect())
}

/// Accepts either the bare group map or an object with a `"groups"` field.
pub fn groups_from_json(v: &Value) -> Result<BigradedGroups> {
    let bad = |msg: String| Error::Parse { line: 0, msg };
    let map = match v.get("groups") {
        Some(inner) => inner,
        None => v,
    }
    .as_object()
    .ok_or_else(|| bad("expected an object of quantum degrees".into()))?;
    let mut g = BigradedGroups::new();
    for (jk, row) in map {
        let q2 = parse_grading_key(jk).ok_or_else(|| bad(format!("bad quantum degree `{jk}`")))?;
        let row = row.as_object().ok_or_else(|| bad(format!("row {jk} is not an object")))?;
        for (ik, cell) in row {
            let h2 = parse_grading_key(ik).ok_or_else(|| bad(format!("bad homological degree `{ik}`")))?;
            let rank =
                cell.get("rank").and_then(Value::as_u64).ok_or_else(|| bad(format!("missing rank at ({ik}, {jk})")))?
                    as usize;
            let torsion = match cell.get("torsion") {
                None => vec![],
                Some(t) => t
                    .as_array()
                    .ok_or_else(|| bad("torsion must be a list".into()))?
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => s.parse::<u64>().ok(),
                        Value::Number(n) => n.as_u64(),
                        _ => None,
                    })
                    .collect::<Option<Vec<u64>>>()
                    .ok_or_else(|| bad(format!("bad torsion at ({ik}, {jk})")))?,
            };
            g.insert_doubled(h2, q2, Group::with_torsion(rank, torsion));
        }
    }
    Ok(g)
}

/// Rows `j,i,rank,torsion` with torsion orders joined by `;`.
pub fn groups_to_csv(g: &BigradedGroups) -> String {
    let mut rows: Vec<(i32, i32, &Group)> = g.iter_doubled().map(|(&(h, q), grp)| (q, h, grp)).collect();
    rows.sort_by_key(|&(q, h, _)| (q, h));
    let mut s = String::from("j,i,rank,torsion\n");
    for (q2, h2, grp) in rows {
        let t: Vec<String> = grp.torsion.iter().map(|t| t.to_string()).collect();
        s.push_str(&format!("{},{},{},{}\n", grading_key(q2), grading_key(h2), grp.rank, t.join(";")));
    }
    s
}

/// Grid with one row per quantum degree and one column per homological degree.
pub fn groups_to_table(g: &BigradedGroups) -> String {
    if g.is_empty() {
        return "(all groups vanish)\n".into();
    }
    let hs: BTreeSet<i32> = g.iter_doubled().map(|(&(h, _), _)| h).collect();
    let qs: BTreeSet<i32> = g.iter_doubled().map(|(&(_, q), _)| q).collect();
    let cells: Vec<Vec<String>> = qs
        .iter()
        .rev()
        .map(|&q| {
            let mut row = vec![grading_key(q)];
            for &h in &hs {
                let grp = g.get_doubled(h, q);
                row.push(if grp.is_zero() { ".".into() } else { grp.to_string() });
            }
            row
        })
        .collect();
    let mut header = vec!["j \\ i".to_string()];
    header.extend(hs.iter().map(|&h| grading_key(h)));
    let widths: Vec<usize> =
        (0..header.len()).map(|k| cells.iter().map(|r| r[k].len()).chain([header[k].len()]).max().unwrap()).collect();
    let line = |row: &[String]| {
        row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut s = line(&header);
    s.push('\n');
    for r in &cells {
        s.push_str(&line(r));
        s.push('\n');
    }
    s
}
