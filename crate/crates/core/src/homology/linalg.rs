//! Exact ranks over prime fields.

use crate::error::{Error, Result};

/// A prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field(u32);

impl Field {
    pub const GF2: Field = Field(2);
    pub const GF32003: Field = Field(32003);

    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(Field(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        self.0
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::GF2
    }
}

impl TryFrom<u32> for Field {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.0
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Rank over GF(2) of the rows, each a bitset of `words` 64-bit words.
pub fn rank_gf2(rows: &mut [Vec<u64>]) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len() * 64);
    // pivot[c] = index of a reduced row whose lowest set bit is column c
    let mut pivot: Vec<Option<usize>> = vec![None; cols];
    for i in 0..rows.len() {
        while let Some(c) = lowest_bit(&rows[i]) {
            match pivot[c] {
                Some(p) => {
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[p]) {
                        *x ^= y;
                    }
                }
                None => {
                    pivot[c] = Some(i);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

/// Rank over GF(p) of a dense matrix with entries in `0..p`.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = mod_pow(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let factor = m[r][c];
                let (pivot_row, row) = if r < rank {
                    let (a, b) = m.split_at_mut(rank);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[rank], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(Field::new(2).is_ok());
        assert!(Field::new(32003).is_ok());
        assert!(matches!(Field::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(Field::new(32001), Err(Error::NotPrime(32001))));
        assert!(serde_json::from_str::<Field>("4").is_err());
        assert_eq!(serde_json::from_str::<Field>("3").unwrap().characteristic(), 3);
    }

    #[test]
    fn gf2_rank() {
        let mut rows = vec![vec![0b011u64], vec![0b110], vec![0b101]];
        assert_eq!(rank_gf2(&mut rows), 2);
        let mut id: Vec<Vec<u64>> = (0..70)
            .map(|i| {
                let mut r = vec![0u64; 2];
                r[i / 64] |= 1 << (i % 64);
                r
            })
            .collect();
        assert_eq!(rank_gf2(&mut id), 70);
        assert_eq!(rank_gf2(&mut []), 0);
    }

    #[test]
    fn modp_rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2: singular mod 2 only
        let m = |p: u64| vec![vec![1, 1], vec![1, p - 1]];
        assert_eq!(rank_mod_p(m(2), 2), 1);
        assert_eq!(rank_mod_p(m(3), 3), 2);
        assert_eq!(rank_mod_p(m(32003), 32003), 2);
        assert_eq!(rank_mod_p(vec![vec![0, 0], vec![0, 0]], 5), 0);
    }
}
