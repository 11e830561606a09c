//! Column-sparse matrices over 𝔽₂.
//!
//! Every map this crate builds is homogeneous of quantum degree zero, so an
//! entry between generators of quantum gradings `j_src`, `j_tgt` is either
//! zero or `H^{(j_tgt − j_src)/2}`. A single bit per entry therefore
//! encodes a matrix over `𝔽₂[H]` exactly, and bit arithmetic reproduces
//! polynomial arithmetic.

/// Column `c` lists the (sorted, distinct) rows with a nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseBits {
    pub rows: usize,
    pub cols: Vec<Vec<u32>>,
}

/// Symmetric difference of two sorted lists.
pub fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Sorts and cancels repeated entries in pairs.
pub fn normalize(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl SparseBits {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseBits { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseBits { rows: n, cols: (0..n as u32).map(|i| vec![i]).collect() }
    }

    /// Columns given as unsorted lists with multiplicity mod 2.
    pub fn from_cols(rows: usize, cols: Vec<Vec<u32>>) -> Self {
        SparseBits { rows, cols: cols.into_iter().map(normalize).collect() }
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cols[c].binary_search(&(r as u32)).is_ok()
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        let col = &mut self.cols[c];
        match col.binary_search(&(r as u32)) {
            Ok(k) => {
                col.remove(k);
            }
            Err(k) => col.insert(k, r as u32),
        }
    }

    /// Image of a vector given by its support.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let mut acc: Vec<u32> = Vec::new();
        for &c in v {
            acc.extend_from_slice(&self.cols[c as usize]);
        }
        normalize(acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseBits) -> SparseBits {
        assert_eq!(self.cols.len(), other.rows, "dimension mismatch");
        SparseBits { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &SparseBits) -> SparseBits {
        assert_eq!((self.rows, self.cols.len()), (other.rows, other.cols.len()));
        SparseBits {
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| xor_sorted(a, b)).collect(),
        }
    }

    /// Entries `(row, col)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols.iter().enumerate().flat_map(|(c, rows)| rows.iter().map(move |&r| (r as usize, c)))
    }

    /// Keeps rows and columns flagged in `keep_rows`/`keep_cols`,
    /// renumbering them densely.
    pub fn restrict(&self, keep_rows: &[bool], keep_cols: &[bool]) -> SparseBits {
        let mut new_index = vec![u32::MAX; self.rows];
        let mut k = 0u32;
        for (r, &keep) in keep_rows.iter().enumerate() {
            if keep {
                new_index[r] = k;
                k += 1;
            }
        }
        let cols = self
            .cols
            .iter()
            .zip(keep_cols)
            .filter(|(_, &keep)| keep)
            .map(|(col, _)| col.iter().filter(|&&r| keep_rows[r as usize]).map(|&r| new_index[r as usize]).collect())
            .collect();
        SparseBits { rows: k as usize, cols }
    }

    pub fn transpose(&self) -> SparseBits {
        let mut cols = vec![Vec::new(); self.rows];
        for (r, c) in self.entries() {
            cols[r].push(c as u32);
        }
        SparseBits { rows: self.cols.len(), cols }
    }
}
