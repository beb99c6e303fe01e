use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonalize a dense integer matrix by unimodular row and column
/// operations and return the absolute values of the nonzero diagonal
/// entries. The product of their prime-power factorizations is the
/// cokernel's torsion; their count is the rank.
pub fn diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = vec![];
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut moved = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0].iter_mut().zip(top[t].iter()).skip(t) {
                    *x -= &q * y;
                }
                if !r.is_zero() {
                    a.swap(t, i);
                    moved = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                if !r.is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Prime-power factors of `n > 0`, by increasing prime.
pub fn prime_powers(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = vec![];
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut pk = BigInt::from(1);
            while (&n % &p).is_zero() {
                n /= &p;
                pk *= &p;
            }
            out.push(pk);
        }
        p += 1;
    }
    if n > BigInt::from(1) {
        out.push(n);
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Rank of a matrix over the field with `p` elements.
pub fn rank_mod_p(a: &[Vec<i64>], p: u64) -> usize {
    let p = p as i128;
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(p)).collect()).collect();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let inv = |x: i128| {
        // Fermat inverse
        let (mut b, mut e, mut r) = (x, p - 2, 1i128);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pr);
        let iv = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * iv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                let (top, rest) = if r < rank {
                    let (a, b) = m.split_at_mut(rank);
                    (&mut a[r], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&mut b[0], &a[rank])
                };
                for (x, y) in top.iter_mut().zip(rest.iter()) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn diagonal_entries() {
        let d = diagonal(big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        let prod: BigInt = d.iter().product();
        assert_eq!(prod, BigInt::from(144));
        assert_eq!(d.len(), 3);
        assert_eq!(diagonal(big(&[&[0, 0], &[0, 0]])), vec![]);
        assert_eq!(diagonal(big(&[&[2, 3]])), vec![BigInt::from(1)]);
    }

    #[test]
    fn factorization() {
        let f: Vec<i64> = prime_powers(&BigInt::from(360)).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(f, vec![8, 9, 5]);
        assert!(is_prime(2) && is_prime(97) && !is_prime(1) && !is_prime(91));
    }

    #[test]
    fn ranks_mod_p() {
        let a = vec![vec![2, 4], vec![1, 2]];
        assert_eq!(rank_mod_p(&a, 2), 1);
        assert_eq!(rank_mod_p(&[vec![2]], 2), 0);
        assert_eq!(rank_mod_p(&[vec![2]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![1, 0], vec![0, 3]], 3), 1);
    }
}
