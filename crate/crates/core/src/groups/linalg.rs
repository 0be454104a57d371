//! Row reduction over a prime field. Entries are kept reduced in `0..p`.

pub(crate) fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

pub(crate) fn sub(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

pub(crate) fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    // Fermat: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// `row -= factor * pivot_row`
fn axpy(row: &mut [u32], factor: u32, pivot_row: &[u32], p: u32) {
    if factor == 0 {
        return;
    }
    for (r, &q) in row.iter_mut().zip(pivot_row) {
        *r = sub(*r, mul(factor, q, p), p);
    }
}

/// Reduced row echelon form in place; zero rows are dropped. Returns the
/// pivot column of each remaining row.
pub(crate) fn rref(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let scale = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul(*x, scale, p);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                axpy(row, f, &pivot, p);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Reduces `v` against an RREF basis with the given pivots. The result is
/// zero iff `v` lies in the row space, and is the canonical representative
/// of the coset `v + rowspace` otherwise.
pub(crate) fn reduce(v: &mut [u32], basis: &[Vec<u32>], pivots: &[usize], p: u32) {
    for (row, &c) in basis.iter().zip(pivots) {
        let f = v[c];
        axpy(v, f, row, p);
    }
}

/// Basis of `{x : rows · xᵀ = 0}` for a matrix with `ncols` columns.
pub(crate) fn right_nullspace(rows: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u32; ncols];
            x[f] = 1;
            for (row, &c) in m.iter().zip(&pivots) {
                x[c] = sub(0, row[f], p);
            }
            x
        })
        .collect()
}

/// Basis of `{c : c · rows = 0}`.
pub(crate) fn left_nullspace(rows: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let nrows = rows.len();
    let transposed: Vec<Vec<u32>> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect();
    right_nullspace(&transposed, nrows, p)
}

/// Row vector times matrix.
pub(crate) fn vec_mat(v: &[u32], m: &[Vec<u32>], p: u32) -> Vec<u32> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut out = vec![0u64; ncols];
    for (&a, row) in v.iter().zip(m) {
        if a == 0 {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(row) {
            *o = (*o + a as u64 * b as u64) % p as u64;
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

pub(crate) fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    a.iter().map(|row| vec_mat(row, b, p)).collect()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
