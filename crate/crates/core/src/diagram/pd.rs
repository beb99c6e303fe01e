use crate::error::{Error, Result};

use super::{Crossing, EdgeId, LinkDiagram};

enum Setting {
    Color(usize, i64),
    Framing(usize, i64),
    Basepoint(usize, i64),
}

/// Parse the PD text format:
///
/// ```text
/// # trefoil
/// X[1,5,2,4] X[3,1,4,6]
/// X[5,3,6,2]
/// circle[7]
/// color 1 = 2
/// framing 1 = 0
/// basepoint 1 = 3
/// ```
///
/// Several `X[...]` may share a line and a surrounding `PD[...]` is ignored.
/// Components are numbered from 1 in order of their smallest edge id.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut crossings = vec![];
    let mut circles = vec![];
    let mut settings = vec![];
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let lower = line.to_ascii_lowercase();
        if let Some(rest) =
            ["color", "colour", "framing", "basepoint"].iter().find_map(|kw| lower.strip_prefix(kw).map(|r| (*kw, r)))
        {
            let (kw, body) = rest;
            let (k, v) = body.split_once('=').ok_or_else(|| err(format!("expected `{kw} <component> = <value>`")))?;
            let k: usize = k.trim().parse().map_err(|_| err(format!("bad component index `{}`", k.trim())))?;
            let v: i64 = v.trim().parse().map_err(|_| err(format!("bad value `{}`", v.trim())))?;
            if k == 0 {
                return Err(err("components are numbered from 1".into()));
            }
            settings.push((
                line_no,
                match kw {
                    "framing" => Setting::Framing(k - 1, v),
                    "basepoint" => Setting::Basepoint(k - 1, v),
                    _ => Setting::Color(k - 1, v),
                },
            ));
            continue;
        }
        let mut s = line;
        if let Some(inner) = s.strip_prefix("PD[").and_then(|r| r.strip_suffix(']')) {
            s = inner;
        }
        let mut rest = s.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let (head, is_circle) = if let Some(r) = rest.strip_prefix("X[") {
                (r, false)
            } else if let Some(r) = rest.strip_prefix("circle[") {
                (r, true)
            } else {
                return Err(err(format!("unexpected input `{rest}`")));
            };
            let close = head.find(']').ok_or_else(|| err("missing `]`".into()))?;
            let ids = head[..close]
                .split(',')
                .map(|t| {
                    let t = t.trim();
                    match t.parse::<EdgeId>() {
                        Ok(v) if v > 0 => Ok(v),
                        _ => Err(err(format!("bad edge id `{t}`"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if is_circle {
                if ids.len() != 1 {
                    return Err(err("circle[] takes one id".into()));
                }
                circles.push(ids[0]);
            } else {
                if ids.len() != 4 {
                    return Err(err(format!("X[] takes 4 edge ids, got {}", ids.len())));
                }
                crossings.push(Crossing::new(ids[0], ids[1], ids[2], ids[3]));
            }
            rest = &head[close + 1..];
        }
    }
    let mut d = LinkDiagram::new(crossings, circles)?;
    for (line, s) in settings {
        let err = |msg: String| Error::Parse { line, msg };
        match s {
            Setting::Color(k, v) => {
                if v < 1 {
                    return Err(err(format!("color {v} < 1")));
                }
                d.set_color(k, v as u32).map_err(|e| err(e.to_string()))?
            }
            Setting::Framing(k, v) => d.set_framing(k, v).map_err(|e| err(e.to_string()))?,
            Setting::Basepoint(k, v) => d.set_basepoint(k, v as EdgeId).map_err(|e| err(e.to_string()))?,
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_inputs() {
        let d = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!((d.crossings().len(), d.components().len()), (1, 1));
        let u = parse_pd("circle[1]\n").unwrap();
        assert_eq!((u.crossings().len(), u.components().len()), (0, 1));
    }

    #[test]
    fn hopf_with_settings() {
        let d = parse_pd("# hopf\nPD[X[4,1,3,2], X[2,3,1,4]]\ncolor 2 = 2\nbasepoint 2 = 4\n").unwrap();
        assert_eq!(d.crossings().len(), 2);
        assert_eq!(d.colors(), vec![1, 2]);
        assert_eq!(d.components()[1].basepoint, 4);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_pd("X[1,1,2,2]\nY[3]\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_pd("circle[1]\ncolor 1 = 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_pd("X[1,2,3]").is_err());
        assert!(matches!(parse_pd("X[1,3,2,4]"), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn pd_round_trip() {
        let d = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\ncolor 1 = 2\nframing 1 = 0\n").unwrap();
        let e = parse_pd(&d.to_pd()).unwrap();
        assert_eq!(d, e);
    }
}
