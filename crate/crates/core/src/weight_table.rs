//! The weights `ϖ'_i = (1 - w0) ϖ_i` in the cascade basis, their row
//! normalization, the index set `𝔄` and the linear forms `L_i`.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::cascade::Cascade;
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Solution};
use crate::rational::{q, qf};
use crate::rootsys::{RootSystem, Weight};

pub fn varpi_prime(rs: &RootSystem, i: usize) -> Weight {
    let w = rs.fundamental_weight(i);
    w.sub(&rs.w0_image(w))
}

/// Solves `ϖ'_i = Σ_j k_ij ξ_j` exactly; every coefficient must be an integer.
pub fn solve_k_matrix(rs: &RootSystem, cascade: &Cascade) -> Result<Vec<Vec<i64>>> {
    let n = rs.rank();
    let m = cascade.m();
    // Columns are the ξ_j.
    let mut a = RatMatrix::zeros(n, m);
    for (j, xi) in cascade.xis.iter().enumerate() {
        for r in 0..n {
            a.set(r, j, q(xi.0[r]));
        }
    }
    (0..n)
        .map(|i| {
            let target = varpi_prime(rs, i);
            match a.solve(&target.0) {
                Solution::Unique(x) => x
                    .iter()
                    .map(|c| {
                        crate::rational::as_i64(c).ok_or_else(|| {
                            Error::fatal(format!("ϖ'{} has non-integral coefficient {}", i + 1, c))
                        })
                    })
                    .collect(),
                Solution::Inconsistent => Err(Error::fatal(format!(
                    "ϖ'{} is not in the span of the cascade",
                    i + 1
                ))),
                Solution::Underdetermined(..) => {
                    Err(Error::fatal("cascade roots are linearly dependent"))
                }
            }
        })
        .collect()
}

/// Divides each row by its gcd, which must be 1 or 2.
pub fn normalize_k(k: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let mut kp = Vec::with_capacity(k.len());
    let mut gcds = Vec::with_capacity(k.len());
    for (i, row) in k.iter().enumerate() {
        let g = row.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g != 1 && g != 2 {
            return Err(Error::fatal(format!("row {} of k has gcd {}", i + 1, g)));
        }
        kp.push(row.iter().map(|x| x / g).collect());
        gcds.push(g);
    }
    Ok((kp, gcds))
}

/// Rows `{i : i <= φ(i)}`, one per φ-orbit (0-based).
pub fn distinct_rows(phi: &[usize]) -> Vec<usize> {
    (0..phi.len()).filter(|&i| i <= phi[i]).collect()
}

/// Determinant of the selected `m × m` block of `k'`, which must be ±1.
pub fn unimodularity_check(k_prime: &[Vec<i64>], rows: &[usize]) -> Result<i64> {
    let sub: Vec<Vec<i64>> = rows.iter().map(|&i| k_prime[i].clone()).collect();
    if sub.is_empty() || sub.iter().any(|r| r.len() != sub.len()) {
        return Err(Error::fatal(format!(
            "row selection of size {} is not square against {} columns",
            sub.len(),
            sub.first().map_or(0, |r| r.len())
        )));
    }
    let det = RatMatrix::from_i64(&sub).det();
    if det == q(1) {
        Ok(1)
    } else if det == q(-1) {
        Ok(-1)
    } else {
        Err(Error::fatal(format!("det k' = {det}, expected ±1")))
    }
}

/// One representative (the smaller index) of each 2-element φ-orbit. Fixed
/// points are excluded, so the set is empty when `w0 = -id`.
pub fn select_a_set(phi: &[usize]) -> Vec<usize> {
    (0..phi.len()).filter(|&i| i < phi[i]).collect()
}

/// `L_i = (ϖ_i + w0 ϖ_i) / 2` for `i ∈ 𝔄`.
pub fn l_weights(rs: &RootSystem, a_set: &[usize]) -> Vec<(usize, Weight)> {
    a_set
        .iter()
        .map(|&i| {
            let w = rs.fundamental_weight(i);
            (i, w.add(&rs.w0_image(w)).scale(&qf(1, 2)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KTable {
    pub k: Vec<Vec<i64>>,
    pub k_prime: Vec<Vec<i64>>,
    pub row_gcds: Vec<i64>,
    pub det_sign: i64,
    /// 0-based φ permutation.
    #[serde(skip)]
    pub phi: Vec<usize>,
    /// 0-based rows used for `Q_1..Q_m`.
    #[serde(skip)]
    pub rows: Vec<usize>,
    /// 0-based `𝔄`.
    #[serde(skip)]
    pub a_set: Vec<usize>,
    #[serde(skip)]
    pub l: Vec<(usize, Weight)>,
}

impl KTable {
    pub fn build(rs: &RootSystem, cascade: &Cascade) -> Result<KTable> {
        let phi = rs.diagram_automorphism_phi()?;
        let k = solve_k_matrix(rs, cascade)?;
        let (k_prime, row_gcds) = normalize_k(&k)?;
        let rows = distinct_rows(&phi);
        let det_sign = unimodularity_check(&k_prime, &rows)?;
        let a_set = select_a_set(&phi);
        if a_set.len() != rs.rank() - cascade.m() {
            return Err(Error::fatal(format!(
                "|𝔄| = {} but n - m = {}",
                a_set.len(),
                rs.rank() - cascade.m()
            )));
        }
        for i in 0..rs.rank() {
            if k[i] != k[phi[i]] {
                return Err(Error::fatal(format!(
                    "rows {} and φ({}) of k differ",
                    i + 1,
                    i + 1
                )));
            }
        }
        let l = l_weights(rs, &a_set);
        for (i, li) in &l {
            for xi in &cascade.xis {
                if !rs.inner(li, &xi.to_weight()).is_zero() {
                    return Err(Error::fatal(format!("L{} is not orthogonal to {}", i + 1, xi)));
                }
            }
        }
        if !l.is_empty() {
            let mat = RatMatrix::from_rows(l.iter().map(|(_, w)| w.0.clone()).collect());
            if mat.rank() != l.len() {
                return Err(Error::fatal("the L_i are linearly dependent"));
            }
        }
        Ok(KTable {
            k,
            k_prime,
            row_gcds,
            det_sign,
            phi,
            rows,
            a_set,
            l,
        })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Weight `η` of `Q` built from row `i` of `k'`.
    pub fn eta(&self, cascade: &Cascade, i: usize) -> Weight {
        let n = cascade.xis.first().map_or(0, |x| x.0.len());
        let mut w = Weight::zero(n);
        for (j, &c) in self.k_prime[i].iter().enumerate() {
            if c != 0 {
                w = w.add(&cascade.xis[j].to_weight().scale(&q(c)));
            }
        }
        w
    }
}

/// Renders `Σ c_j ξ_j` the way the tables print it.
pub fn format_xi_combination(coeffs: &[i64]) -> String {
    let mut parts = Vec::new();
    for (j, &c) in coeffs.iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(format!("ξ{}", j + 1)),
            -1 => parts.push(format!("-ξ{}", j + 1)),
            _ => parts.push(format!("{}ξ{}", c, j + 1)),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn weight_pq(w: &Weight) -> Vec<String> {
    w.0.iter().map(crate::rational::to_pq).collect()
}
