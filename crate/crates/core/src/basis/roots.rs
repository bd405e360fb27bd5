//! Characteristic roots: companion-matrix eigenvalues, Newton polishing,
//! multiplicity clustering and conjugate pairing.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::poly::Polynomial;
use crate::error::{LpError, Result};

/// Default relative distance below which two computed roots are one repeated root.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;
const NEWTON_STEPS: usize = 8;
const CONJUGATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Roots of a real polynomial with multiplicities. Non-real roots come in
/// conjugate pairs of equal multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet(Vec<Root>);

impl RootSet {
    pub fn new(roots: Vec<Root>) -> Result<Self> {
        if roots.is_empty() {
            return Err(LpError::InvalidArgument("root set is empty".into()));
        }
        for r in &roots {
            if r.multiplicity == 0 {
                return Err(LpError::InvalidArgument(
                    "root multiplicity must be positive".into(),
                ));
            }
            if !(r.value.re.is_finite() && r.value.im.is_finite()) {
                return Err(LpError::InvalidArgument("root is not finite".into()));
            }
            if r.value.im != 0.0 {
                let partner = r.value.conj();
                let scale = r.value.norm() * CONJUGATE_TOL;
                let paired = roots.iter().any(|q| {
                    q.multiplicity == r.multiplicity && (q.value - partner).norm() <= scale
                });
                if !paired {
                    return Err(LpError::InvalidArgument(format!(
                        "root {} has no conjugate of multiplicity {}",
                        r.value, r.multiplicity
                    )));
                }
            }
        }
        Ok(Self(roots))
    }

    pub fn roots(&self) -> &[Root] {
        &self.0
    }

    /// Total multiplicity, the degree of the polynomial the roots came from.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|r| r.multiplicity).sum()
    }
}

/// Finds all roots of a monic real polynomial.
///
/// Computed roots are merged into their centroid with summed multiplicity when a
/// group of `m` of them lies within `cluster_tol^(1/m)` of each other, relative to
/// the centroid's modulus. Every reported root satisfies
/// `|poly(r)| <= 1e-6 (1 + |r|)^p`.
pub fn find_roots(poly: &Polynomial, cluster_tol: f64) -> Result<RootSet> {
    if !(cluster_tol > 0.0 && cluster_tol.is_finite()) {
        return Err(LpError::InvalidArgument(format!(
            "cluster tolerance must be positive, got {cluster_tol}"
        )));
    }
    let p = poly.degree();
    let mut eig = eigenvalues(poly)?;
    polish(poly, &mut eig);
    let clusters = polish_multiple(poly, cluster(&eig, cluster_tol), cluster_tol);
    let roots = pair_conjugates(clusters, cluster_tol, poly)?;

    for r in &roots {
        let residual = poly.eval_complex(r.value).norm();
        let allowed = 1e-6 * (1.0 + r.value.norm()).powi(p as i32);
        if !(residual <= allowed) {
            return Err(LpError::NumericFailure(format!(
                "root {} of {poly} has residual {residual:e} (allowed {allowed:e})",
                r.value
            )));
        }
    }
    RootSet::new(roots)
}

fn eigenvalues(poly: &Polynomial) -> Result<Vec<Complex64>> {
    let c = poly.coefficients();
    let p = poly.degree();
    if p == 1 {
        return Ok(vec![Complex64::new(-c[1], 0.0)]);
    }
    let mut m = DMatrix::<f64>::zeros(p, p);
    for j in 0..p {
        m[(0, j)] = -c[j + 1];
    }
    for i in 1..p {
        m[(i, i - 1)] = 1.0;
    }
    balance(&mut m);
    let schur = Schur::try_new(m, SCHUR_EPS, SCHUR_MAX_ITER).ok_or_else(|| {
        LpError::NumericFailure(format!("eigenvalue iteration did not converge for {poly}"))
    })?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Diagonal similarity scaling by powers of two so row and column norms are comparable.
fn balance(m: &mut DMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let n = m.nrows();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += m[(j, i)].abs();
                    row += m[(i, j)].abs();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let sum = col + row;
            let mut f = 1.0;
            let mut g = row / RADIX;
            while col < g {
                f *= RADIX;
                col *= RADIX * RADIX;
            }
            g = row * RADIX;
            while col > g {
                f /= RADIX;
                col /= RADIX * RADIX;
            }
            if (col + row) / f < 0.95 * sum {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Newton refinement that never increases the residual and never moves a root
/// more than half-way towards its nearest neighbour.
fn polish(poly: &Polynomial, roots: &mut [Complex64]) {
    let snapshot = roots.to_vec();
    for (i, z) in roots.iter_mut().enumerate() {
        let reach = snapshot
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, w)| (*w - snapshot[i]).norm())
            .fold(f64::INFINITY, f64::min)
            * 0.5;
        let mut current = *z;
        let mut residual = poly.eval_complex(current).norm();
        for _ in 0..NEWTON_STEPS {
            let (value, slope) = poly.eval_with_derivative(current);
            if slope.norm() == 0.0 || residual == 0.0 {
                break;
            }
            let next = current - value / slope;
            let next_residual = poly.eval_complex(next).norm();
            if !(next_residual < residual) || (next - snapshot[i]).norm() > reach {
                break;
            }
            current = next;
            residual = next_residual;
        }
        *z = current;
    }
}

/// Agglomerative clustering: the closest pair of groups merges while the merged
/// group of `m` roots has diameter at most `tol^(1/m)` relative to its centroid.
/// An `m`-fold root moves by about `δ^(1/m)` under a coefficient perturbation `δ`.
fn cluster(values: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = values.iter().map(|&z| vec![z]).collect();
    loop {
        let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let (a, b) = (centroid(&groups[i]), centroid(&groups[j]));
                let scale = a.norm().max(b.norm());
                candidates.push(((a - b).norm() / scale, i, j));
            }
        }
        candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
        let merge = candidates.into_iter().find_map(|(_, i, j)| {
            let merged: Vec<Complex64> = groups[i].iter().chain(&groups[j]).copied().collect();
            mergeable(&merged, tol).then_some((i, j, merged))
        });
        let Some((i, j, merged)) = merge else { break };
        groups.swap_remove(j);
        groups[i] = merged;
    }
    groups.iter().map(|g| (centroid(g), g.len())).collect()
}

/// An `m`-fold root is a simple root of the `(m-1)`-th derivative, where Newton
/// converges quickly from the centroid. Steps stay within the cluster radius.
fn polish_multiple(
    poly: &Polynomial,
    clusters: Vec<(Complex64, usize)>,
    tol: f64,
) -> Vec<(Complex64, usize)> {
    clusters
        .into_iter()
        .map(|(z, m)| {
            if m < 2 {
                return (z, m);
            }
            let d = derivative(poly.coefficients(), m - 1);
            let dd = derivative(&d, 1);
            let reach = tol.powf(1.0 / m as f64) * z.norm();
            let mut current = z;
            let mut residual = horner(&d, current).norm();
            for _ in 0..NEWTON_STEPS {
                let slope = horner(&dd, current);
                if slope.norm() == 0.0 || residual == 0.0 {
                    break;
                }
                let next = current - horner(&d, current) / slope;
                let next_residual = horner(&d, next).norm();
                if !(next_residual < residual) || (next - z).norm() > reach {
                    break;
                }
                current = next;
                residual = next_residual;
            }
            (current, m)
        })
        .collect()
}

/// Coefficients (highest degree first) of the `k`-th derivative.
fn derivative(c: &[f64], k: usize) -> Vec<f64> {
    let degree = c.len() - 1;
    c[..c.len() - k]
        .iter()
        .enumerate()
        .map(|(i, &ci)| {
            let j = degree - i;
            (0..k).fold(ci, |acc, t| acc * (j - t) as f64)
        })
        .collect()
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &ci| acc * z + ci)
}

fn centroid(group: &[Complex64]) -> Complex64 {
    group.iter().sum::<Complex64>() / group.len() as f64
}

fn mergeable(group: &[Complex64], tol: f64) -> bool {
    let scale = centroid(group).norm();
    let reach = tol.powf(1.0 / group.len() as f64) * scale;
    group
        .iter()
        .enumerate()
        .all(|(i, a)| group[i + 1..].iter().all(|b| (a - b).norm() <= reach))
}

fn pair_conjugates(
    clusters: Vec<(Complex64, usize)>,
    tol: f64,
    poly: &Polynomial,
) -> Result<Vec<Root>> {
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (z, m) in clusters {
        if z.im.abs() <= tol * z.norm() {
            real.push(Root {
                value: Complex64::new(z.re, 0.0),
                multiplicity: m,
            });
        } else if z.im > 0.0 {
            upper.push((z, m));
        } else {
            lower.push((z, m));
        }
    }
    if upper.len() != lower.len() {
        return Err(LpError::NumericFailure(format!(
            "complex roots of {poly} do not pair into conjugates"
        )));
    }
    let mut out = real;
    for (z, m) in upper {
        let (idx, _) = lower
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let da = (a.1 .0.conj() - z).norm();
                let db = (b.1 .0.conj() - z).norm();
                da.total_cmp(&db)
            })
            .expect("counts match");
        let (w, mw) = lower.swap_remove(idx);
        if mw != m {
            return Err(LpError::NumericFailure(format!(
                "conjugate roots of {poly} have unequal multiplicities ({m} vs {mw})"
            )));
        }
        let v = (z + w.conj()) * 0.5;
        out.push(Root {
            value: v,
            multiplicity: m,
        });
        out.push(Root {
            value: v.conj(),
            multiplicity: m,
        });
    }
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(b.value.im.total_cmp(&a.value.im))
    });
    Ok(out)
}
