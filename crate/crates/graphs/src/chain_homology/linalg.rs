//! Exact ranks of integer matrices.

use graphchi_core::exactnum::BigInt;

/// Sparse integer matrix in coordinate form, entries sorted by (row, col).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    /// Sums duplicate coordinates and drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, i64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, i64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}×{cols}");
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        SparseMatrix { rows, cols, entries }
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            m[r][c] = v;
        }
        m
    }

    pub fn negated(&self) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|&(r, c, v)| (r, c, -v)).collect() }
    }

    /// self · other, exactly.
    pub fn product(&self, other: &SparseMatrix) -> Vec<Vec<BigInt>> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = vec![vec![BigInt::new(); other.cols]; self.rows];
        for &(i, k, a) in &self.entries {
            for &(k2, j, b) in &other.entries {
                if k == k2 {
                    out[i][j] += BigInt::from(a) * b;
                }
            }
        }
        out
    }

    /// Coordinate-list dump, one `row col value` line per nonzero entry.
    pub fn to_coordinate_text(&self) -> String {
        self.entries.iter().map(|(r, c, v)| format!("{r} {c} {v}\n")).collect()
    }
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn rank_exact(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = BigInt::from(&a[i][j] * &a[rank][c]) - BigInt::from(&a[i][c] * &a[rank][j]);
                a[i][j] = v.div_exact(&prev);
            }
            a[i][c] = BigInt::new();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank over Z/p by Gaussian elimination; never exceeds the rational rank.
pub fn rank_mod_p(m: &[Vec<i64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let f = inv(a[rank][c]);
        for i in rank + 1..rows {
            if a[i][c] == 0 {
                continue;
            }
            let t = mulmod(a[i][c], f);
            for j in c..cols {
                let s = mulmod(t, a[rank][j]);
                a[i][j] = (a[i][j] + p - s) % p;
            }
        }
        rank += 1;
    }
    rank
}

pub const CHECK_PRIMES: [u64; 2] = [2_147_483_647, 4_294_967_291];
