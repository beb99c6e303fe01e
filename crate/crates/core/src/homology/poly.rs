use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

use super::{euler_sign, BigradedGroups};

/// Laurent polynomial in `q` with integer coefficients. Exponents are stored
/// doubled so that half-integral powers are representable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Σ coeffs[k] q^(lo + k)` in plain exponents.
    pub fn from_plain(lo: i32, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(2 * (lo + k as i32), c);
        }
        p
    }

    /// Add `c q^(e2/2)`.
    pub fn add_term(&mut self, e2: i32, c: i64) {
        let v = self.terms.entry(e2).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e2);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^(e2/2)`.
    pub fn coeff_doubled(&self, e2: i32) -> i64 {
        self.terms.get(&e2).copied().unwrap_or(0)
    }

    pub fn terms_doubled(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut p = Self::zero();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &other.terms {
                p.add_term(a + b, x * y);
            }
        }
        p
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e2, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let sep = if k > 0 { " " } else { "" };
            let mag = c.unsigned_abs();
            let exp = if e2 % 2 == 0 { format!("{}", e2 / 2) } else { format!("{e2}/2") };
            let body = match (mag, e2) {
                (m, 0) => m.to_string(),
                (1, 2) => "q".into(),
                (1, _) => format!("q^{exp}"),
                (m, 2) => format!("{m}q"),
                (m, _) => format!("{m}q^{exp}"),
            };
            if k > 0 {
                write!(f, "{sep}{sign} {body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
        }
        Ok(())
    }
}

/// `Σ (−1)^i rank(i, j) q^j`, torsion ignored; `window` bounds `j` (plain,
/// inclusive). For half-integral `i` the sign uses `⌊i⌋`.
pub fn graded_euler(g: &BigradedGroups, window: Option<(i32, i32)>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (&(h2, q2), grp) in g.iter_doubled() {
        if let Some((lo, hi)) = window {
            if q2 < 2 * lo || q2 > 2 * hi {
                continue;
            }
        }
        p.add_term(q2, euler_sign(h2) * grp.rank as i64);
    }
    p
}

/// Largest diagram accepted by [`kauffman_bracket`].
pub const BRACKET_CROSSING_LIMIT: usize = 24;

/// State sum with the crossing-complex conventions: a state with `k`
/// 1-smoothings out of `n` crossings sits at `h2 = q2 = 2k − n` and each of
/// its circles contributes `q + q⁻¹`.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    if d.colors().iter().any(|&c| c != 1) {
        return Err(Error::UnsupportedColor("the bracket is defined for color 1 only".into()));
    }
    let n = d.crossings().len();
    if n > BRACKET_CROSSING_LIMIT {
        return Err(Error::CrossingLimit { crossings: n, limit: BRACKET_CROSSING_LIMIT });
    }
    let edges: Vec<u32> = d.edges().collect();
    let index: BTreeMap<u32, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut by_circles: BTreeMap<(i32, usize), i64> = BTreeMap::new();
    for state in 0u64..(1u64 << n) {
        let mut parent: Vec<usize> = (0..edges.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = edges.len();
        for (i, x) in d.crossings().iter().enumerate() {
            let e = x.edges.map(|e| index[&e]);
            let pairs = if state >> i & 1 == 0 { [(e[0], e[1]), (e[2], e[3])] } else { [(e[0], e[3]), (e[1], e[2])] };
            for (a, b) in pairs {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    comps -= 1;
                }
            }
        }
        let k = state.count_ones() as i32;
        *by_circles.entry((2 * k - n as i32, comps)).or_insert(0) += 1;
    }
    let circle = {
        let mut c = LaurentPoly::zero();
        c.add_term(2, 1);
        c.add_term(-2, 1);
        c
    };
    let mut total = LaurentPoly::zero();
    for ((h2, comps), mult) in by_circles {
        let mut t = LaurentPoly::zero();
        t.add_term(h2, euler_sign(h2) * mult);
        for _ in 0..comps {
            t = t.mul(&circle);
        }
        for (e, c) in t.terms_doubled() {
            total.add_term(e, c);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid_closure;

    #[test]
    fn bracket_of_unlinks() {
        let u = braid_closure(1, &[]).unwrap();
        assert_eq!(kauffman_bracket(&u).unwrap(), LaurentPoly::from_plain(-1, &[1, 0, 1]));
        let u2 = braid_closure(2, &[]).unwrap();
        assert_eq!(kauffman_bracket(&u2).unwrap(), LaurentPoly::from_plain(-2, &[1, 0, 2, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(LaurentPoly::from_plain(-2, &[1, 0, 1, 0, 1]).to_string(), "q^-2 + 1 + q^2");
        let mut p = LaurentPoly::zero();
        p.add_term(3, -2);
        p.add_term(2, 1);
        assert_eq!(p.to_string(), "q - 2q^3/2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
