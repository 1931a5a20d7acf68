//! Dense linear algebra over F₂.

use alloc::vec;
use alloc::vec::Vec;

/// A row of bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut r = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            r.set(i, b);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Solves `A x = b` over F₂, where `rows[k]` is row `k` of `A` with `n`
/// unknowns. Returns one solution (free variables set to zero) or `None`.
pub fn solve(rows: &[BitRow], rhs: &[bool], n: usize) -> Option<Vec<bool>> {
    assert_eq!(rows.len(), rhs.len());
    // augmented matrix: column n holds the right-hand side
    let mut m: Vec<BitRow> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut a = BitRow::zeros(n + 1);
            for i in 0..n {
                a.set(i, r.get(i));
            }
            a.set(n, b);
            a
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&k| m[k].get(col)) else {
            continue;
        };
        m.swap(row, p);
        let pivot_row = m[row].clone();
        for (k, r) in m.iter_mut().enumerate() {
            if k != row && r.get(col) {
                r.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| r.get(n)) {
        return None;
    }
    let mut x = vec![false; n];
    for (k, &col) in pivots.iter().enumerate() {
        x[col] = m[k].get(n);
    }
    Some(x)
}

/// Rank of a set of rows.
pub fn rank(rows: &[BitRow], n: usize) -> usize {
    let mut m = rows.to_vec();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&k| m[k].get(col)) else {
            continue;
        };
        m.swap(r, p);
        let pr = m[r].clone();
        for k in r + 1..m.len() {
            if m[k].get(col) {
                m[k].xor_assign(&pr);
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system() {
        // x0 + x1 = 1, x1 + x2 = 0, x0 + x2 = 1
        let rows = [
            BitRow::from_bools(&[true, true, false]),
            BitRow::from_bools(&[false, true, true]),
            BitRow::from_bools(&[true, false, true]),
        ];
        let x = solve(&rows, &[true, false, true], 3).unwrap();
        assert_eq!(x[0] ^ x[1], true);
        assert_eq!(x[1] ^ x[2], false);
        assert!(solve(&rows, &[true, true, true], 3).is_none());
        assert_eq!(rank(&rows, 3), 2);
    }
}
