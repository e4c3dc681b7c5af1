//! Dense helpers on `&[f64]` coordinate slices.
//!
//! Everything here works in arbitrary (small) dimension; the heavier
//! decompositions go through nalgebra.

use nalgebra::DMatrix;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[inline]
pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `y += alpha * x`
#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale(v: &[f64], s: f64) -> Vec<f64> {
    v.iter().map(|x| x * s).collect()
}

pub fn normalized(v: &[f64]) -> Option<Vec<f64>> {
    let n = norm(v);
    if n > 0.0 && n.is_finite() {
        Some(v.iter().map(|x| x / n).collect())
    } else {
        None
    }
}

/// Modified Gram-Schmidt. Vectors whose residual norm falls below `tol`
/// (relative to their original norm, or absolutely when the original is
/// tiny) are dropped. Returns an orthonormal basis of the span.
pub fn orthonormal_basis(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let scale = norm(v);
        if scale <= tol {
            continue;
        }
        let mut r = v.clone();
        // two passes for stability
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&r, b);
                axpy(-c, b, &mut r);
            }
        }
        let rn = norm(&r);
        if rn > tol * scale.max(1.0) {
            basis.push(r.iter().map(|x| x / rn).collect());
        }
    }
    basis
}

/// Unit vector orthogonal to every member of an orthonormal `basis`,
/// chosen from the coordinate axis with the largest residual.
pub fn complement_vector(basis: &[Vec<f64>], dim: usize) -> Option<Vec<f64>> {
    let mut best: Option<(f64, Vec<f64>)> = None;
    for k in 0..dim {
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        for _ in 0..2 {
            for b in basis {
                let c = dot(&e, b);
                axpy(-c, b, &mut e);
            }
        }
        let n = norm(&e);
        if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
            best = Some((n, e));
        }
    }
    let (n, v) = best?;
    if n < 1e-8 {
        return None;
    }
    Some(v.iter().map(|x| x / n).collect())
}

/// Orthonormal basis of the orthogonal complement of `basis` in R^dim.
pub fn complement_basis(basis: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut all = basis.to_vec();
    let start = all.len();
    for k in 0..dim {
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        all.push(e);
    }
    let full = orthonormal_basis(&all, 1e-10);
    full.into_iter().skip(start).collect()
}

/// Singular values of the matrix whose rows are `rows`.
pub fn singular_values(rows: &[Vec<f64>], dim: usize) -> Vec<f64> {
    if rows.is_empty() || dim == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_fn(rows.len(), dim, |r, c| rows[r][c]);
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank with singular values thresholded relative to the largest.
pub fn rank(rows: &[Vec<f64>], dim: usize, rel_tol: f64) -> usize {
    let s = singular_values(rows, dim);
    match s.first() {
        Some(&smax) if smax > 0.0 => s.iter().filter(|&&x| x > rel_tol * smax).count(),
        _ => 0,
    }
}

/// Affine rank of a point set (dimension of its affine hull).
pub fn affine_rank(points: &[&[f64]], rel_tol: f64) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let dim = points[0].len();
    let rows: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    rank(&rows, dim, rel_tol)
}

/// m-dimensional volume of the simplex with the given m+1 vertices.
pub fn simplex_volume(vertices: &[&[f64]]) -> f64 {
    let m = vertices.len().saturating_sub(1);
    if m == 0 {
        return 1.0;
    }
    let edges: Vec<Vec<f64>> = vertices[1..].iter().map(|v| sub(v, vertices[0])).collect();
    let gram = DMatrix::from_fn(m, m, |r, c| dot(&edges[r], &edges[c]));
    let det = gram.determinant().max(0.0);
    let fact: f64 = (1..=m).map(|k| k as f64).product();
    det.sqrt() / fact
}

/// Least-squares slope of `y` against `x`, with the RMS residual.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { f64::NAN };
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - (intercept + slope * a);
            r * r
        })
        .sum();
    (slope, intercept, (rss / n).sqrt())
}
