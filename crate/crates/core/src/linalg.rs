//! Linear algebra over GF(2) on `u32` bit vectors (bit `i` = coordinate `i + 1`).

use alloc::vec::Vec;

/// Rank of a family of bit vectors.
pub fn rank(vectors: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

pub fn is_independent(vectors: &[u32]) -> bool {
    rank(vectors) == vectors.len()
}

/// Whether `target` lies in the GF(2)-span of `vectors`.
pub fn span_contains(vectors: &[u32], target: u32) -> bool {
    let mut with = vectors.to_vec();
    with.push(target);
    rank(&with) == rank(vectors)
}

/// XOR of the vectors selected by the bits of `mask`.
pub fn combination(vectors: &[u32], mask: u32) -> u32 {
    vectors
        .iter()
        .enumerate()
        .filter(|(i, _)| (mask >> i) & 1 == 1)
        .fold(0, |acc, (_, &v)| acc ^ v)
}

#[inline]
pub fn parity(x: u32) -> u8 {
    (x.count_ones() & 1) as u8
}

/// Square matrix over GF(2) acting on row vectors: `x -> xA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: u32,
    rows: Vec<u32>,
}

impl BitMatrix {
    pub fn identity(n: u32) -> Self {
        BitMatrix {
            n,
            rows: (0..n).map(|i| 1 << i).collect(),
        }
    }

    /// Row `i` is the image of the `i`-th unit vector.
    pub fn from_rows(n: u32, rows: Vec<u32>) -> Self {
        assert_eq!(rows.len(), n as usize);
        BitMatrix { n, rows }
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Entry in row `i`, column `j`.
    pub fn get(&self, i: u32, j: u32) -> u8 {
        ((self.rows[i as usize] >> j) & 1) as u8
    }

    /// `xA`.
    pub fn apply(&self, x: u32) -> u32 {
        combination(&self.rows, x)
    }

    pub fn is_invertible(&self) -> bool {
        is_independent(&self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_span() {
        assert_eq!(rank(&[1, 2, 3]), 2);
        assert!(is_independent(&[1, 2, 4]));
        assert!(!is_independent(&[5, 3, 6]));
        assert!(span_contains(&[2, 4], 6));
        assert!(!span_contains(&[2, 4], 1));
        assert!(span_contains(&[], 0));
    }

    #[test]
    fn matrix_application() {
        let id = BitMatrix::identity(4);
        for x in 0..16 {
            assert_eq!(id.apply(x), x);
        }
        let swap = BitMatrix::from_rows(2, alloc::vec![2, 1]);
        assert_eq!(swap.apply(1), 2);
        assert_eq!(swap.get(0, 1), 1);
        assert!(swap.is_invertible());
        assert!(!BitMatrix::from_rows(2, alloc::vec![3, 3]).is_invertible());
    }
}
