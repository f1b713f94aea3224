//! Finite binary relations stored as boolean matrices.

/// Reflexive-transitive closure of `pairs` on `0..n` (Warshall).
pub(crate) fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        rel[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    rel
}

/// First pair `(a, b)` with `a != b`, `a <= b` and `b <= a`.
pub(crate) fn antisymmetry_violation(rel: &[Vec<bool>]) -> Option<(usize, usize)> {
    let n = rel.len();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| rel[a][b] && rel[b][a])
}

/// Pairs of a relation, row-major.
#[cfg(test)]
pub(crate) fn pairs(rel: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = rel.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rel[a][b] {
                out.push((a, b));
            }
        }
    }
    out
}

/// Indices ordered so that `a <= b` implies `a` comes first.
pub(crate) fn linear_extension(rel: &[Vec<bool>]) -> Vec<usize> {
    let n = rel.len();
    let mut idx: Vec<usize> = (0..n).collect();
    // the number of strict lower bounds is strictly monotone along the order
    idx.sort_by_key(|&x| ((0..n).filter(|&y| y != x && rel[y][x]).count(), x));
    idx
}

/// Hasse covers of a partial order.
pub(crate) fn covers(rel: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = rel.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rel[a][b] {
                let between = (0..n).any(|c| c != a && c != b && rel[a][c] && rel[c][b]);
                if !between {
                    out.push((a, b));
                }
            }
        }
    }
    out
}
