//! Corner minors of `exp(t x̃)` for `A_n`: an oracle for the invariants that
//! does not go through the reduction.
//!
//! A point of `n^*` is the lower triangular matrix `X` with
//! `X_{ji} = s_γ e_γ` for `γ = ε_i - ε_j`, where `s_γ = ±1` make
//! `e_γ ↦ s_γ E_{ij}` a Lie algebra isomorphism onto strictly upper
//! triangular matrices. For `b^*` the diagonal is `y_r = h_r - h_{r-1}`
//! (`h_0 = h_{n+1} = 0`), since `h_j` pairs with the `j`-th fundamental
//! coweight.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::StructureConstants;
use crate::polyalg::{Flavor, PoissonContext, Polynomial, RationalFunction};
use crate::rational::q;
use crate::rootsys::{RootSystem, TypeLabel};
use crate::weight_table::{l_weights, select_a_set, varpi_prime};

pub const MAX_MATRIX: usize = 8;

/// `Σ_{j ≤ order} t^j x̃^j / j!`; `coeffs[j]` is the matrix at `t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSeries {
    pub size: usize,
    pub coeffs: Vec<Vec<Vec<Polynomial>>>,
}

impl MatrixSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Entry `(r, c)` as a series in `t`.
    pub fn entry(&self, r: usize, c: usize) -> Vec<Polynomial> {
        self.coeffs.iter().map(|m| m[r][c].clone()).collect()
    }
}

fn mat_mul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>], nvars: usize) -> Vec<Vec<Polynomial>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Polynomial::zero(nvars);
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s = s.add(&a[i][k].mul(&b[k][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn exp_series(x: &[Vec<Polynomial>], order: usize) -> Result<MatrixSeries> {
    let size = x.len();
    if size > MAX_MATRIX {
        return Err(Error::GuardExceeded {
            what: "matrix size".into(),
            size,
            limit: MAX_MATRIX,
        });
    }
    let nvars = x
        .iter()
        .flatten()
        .next()
        .map_or(0, Polynomial::nvars);
    let ident: Vec<Vec<Polynomial>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        Polynomial::one(nvars)
                    } else {
                        Polynomial::zero(nvars)
                    }
                })
                .collect()
        })
        .collect();
    let mut coeffs = vec![ident];
    for j in 1..=order {
        let next = mat_mul(coeffs.last().unwrap(), x, nvars);
        let inv = q(1) / q(j as i64);
        coeffs.push(
            next.into_iter()
                .map(|row| row.into_iter().map(|p| p.scale(&inv)).collect())
                .collect(),
        );
    }
    Ok(MatrixSeries { size, coeffs })
}

type Series = Vec<Polynomial>;

fn series_mul(a: &Series, b: &Series, order: usize, nvars: usize) -> Series {
    let mut out = vec![Polynomial::zero(nvars); order + 1];
    for (i, p) in a.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, r) in b.iter().enumerate() {
            if i + j > order {
                break;
            }
            if !r.is_zero() {
                out[i + j] = out[i + j].add(&p.mul(r));
            }
        }
    }
    out
}

/// Determinant of a matrix of truncated series, by cofactor expansion.
fn series_det(m: &[Vec<Series>], order: usize, nvars: usize) -> Series {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = vec![Polynomial::zero(nvars); order + 1];
    for c in 0..n {
        if m[0][c].iter().all(Polynomial::is_zero) {
            continue;
        }
        let minor: Vec<Vec<Series>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect();
        let term = series_mul(&m[0][c], &series_det(&minor, order, nvars), order, nvars);
        for (k, p) in term.into_iter().enumerate() {
            out[k] = if c % 2 == 0 { out[k].add(&p) } else { out[k].sub(&p) };
        }
    }
    out
}

/// Which `i × i` corner of `exp(t x̃)` realizes `S_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corner {
    /// Last `i` rows, first `i` columns.
    BottomLeft,
    /// First `i` rows, last `i` columns.
    TopRight,
}

pub fn corner_minor(series: &MatrixSeries, i: usize, corner: Corner) -> Series {
    let n = series.size;
    let (rows, cols): (Vec<usize>, Vec<usize>) = match corner {
        Corner::BottomLeft => ((n - i..n).collect(), (0..i).collect()),
        Corner::TopRight => ((0..i).collect(), (n - i..n).collect()),
    };
    let nvars = series.coeffs[0][0][0].nvars();
    let m: Vec<Vec<Series>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| series.entry(r, c)).collect())
        .collect();
    series_det(&m, series.order(), nvars)
}

/// Matrix realization of `n^*` or `b^*` for `A_n`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub size: usize,
    pub ctx: PoissonContext,
    /// `x̃` with entries over the context's variables.
    pub matrix: Vec<Vec<Polynomial>>,
    /// `s_γ` per positive root index.
    pub signs: Vec<i64>,
}

fn check_type_a(rs: &RootSystem) -> Result<()> {
    if rs.cartan_type().label != TypeLabel::A {
        return Err(Error::OutOfScope(format!(
            "spherical oracle covers A_n only, got {}",
            rs.cartan_type()
        )));
    }
    Ok(())
}

/// `γ = ε_a - ε_b` as a 0-based pair `(a, b)`, `a < b`.
fn matrix_slot(r: &crate::rootsys::Root) -> (usize, usize) {
    let a = r.0.iter().position(|&c| c != 0).unwrap();
    let b = a + r.0.iter().filter(|&&c| c != 0).count() + 1;
    (a, b - 1)
}

/// Signs `s_γ` with `e_γ ↦ s_γ E_{ab}` a homomorphism; checked on all pairs.
pub fn sign_map(rs: &RootSystem, sc: &StructureConstants) -> Result<Vec<i64>> {
    check_type_a(rs)?;
    let roots = rs.positive_roots();
    let mut s = vec![0i64; roots.len()];
    for (g, r) in roots.iter().enumerate() {
        if r.height() == 1 {
            s[g] = 1;
            continue;
        }
        // γ = α_a + (ε_{a+1} - ε_b); [E_{a,a+1}, E_{a+1,b}] = E_{ab}.
        let (a, _) = matrix_slot(r);
        let alpha = crate::rootsys::Root::simple(rs.rank(), a);
        let i = rs.root_index(&alpha).unwrap();
        let j = rs.root_index(&r.sub(&alpha)).unwrap();
        let n = sc.n(i, j);
        s[g] = s[j] * n;
    }
    for i in 0..roots.len() {
        for j in 0..roots.len() {
            let (a, b) = matrix_slot(&roots[i]);
            let (c, d) = matrix_slot(&roots[j]);
            // [s_i E_ab, s_j E_cd] = s_i s_j (δ_bc E_ad - δ_da E_cb).
            let expect = if b == c {
                Some((s[i] * s[j], (a, d)))
            } else if d == a {
                Some((-s[i] * s[j], (c, b)))
            } else {
                None
            };
            let got = sc
                .bracket(i, j)
                .filter(|(n, _)| *n != 0)
                .map(|(n, k)| (n * s[k], matrix_slot(&roots[k])));
            if got != expect {
                return Err(Error::fatal("sign map is not a homomorphism"));
            }
        }
    }
    Ok(s)
}

impl Realization {
    pub fn new(rs: &RootSystem, sc: &StructureConstants, borel: bool) -> Result<Self> {
        check_type_a(rs)?;
        let signs = sign_map(rs, sc)?;
        let ctx = if borel {
            PoissonContext::borel(sc)
        } else {
            PoissonContext::nilpotent(sc)
        };
        let size = rs.rank() + 1;
        let nv = ctx.nvars();
        let mut m = vec![vec![Polynomial::zero(nv); size]; size];
        for (g, r) in rs.positive_roots().iter().enumerate() {
            let (a, b) = matrix_slot(r);
            m[b][a] = ctx.var(g).scale(&q(signs[g]));
        }
        if borel {
            let np = rs.positive_roots().len();
            let h = |j: usize| -> Polynomial {
                if j == 0 || j == size {
                    Polynomial::zero(nv)
                } else {
                    ctx.var(np + j - 1)
                }
            };
            for (r, row) in m.iter_mut().enumerate() {
                row[r] = h(r + 1).sub(&h(r));
            }
        }
        Ok(Realization {
            size,
            ctx,
            matrix: m,
            signs,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalExpansion {
    pub i: usize,
    pub k: usize,
    pub corner: Corner,
    pub s0: Polynomial,
    pub s1: Polynomial,
}

fn expansion_in(real: &Realization, i: usize, corner: Corner) -> Result<Option<(usize, Polynomial, Polynomial)>> {
    let n = real.size;
    let order = n;
    let series = exp_series(&real.matrix, order)?;
    let minor = corner_minor(&series, i, corner);
    let Some(k) = minor.iter().position(|p| !p.is_zero()) else {
        return Ok(None);
    };
    if order < k + 1 {
        return Err(Error::fatal("series truncated below the first coefficient"));
    }
    Ok(Some((k, minor[k].clone(), minor[k + 1].clone())))
}

/// Lowest two coefficients of `S_i(exp t x̃) = t^k (S_{i0} + t S_{i1} + ...)`.
///
/// The corner is the first one whose nilpotent `S_{i0}` is nonzero, has
/// weight `ϖ'_i` and is invariant.
pub fn spherical_expansion(
    rs: &RootSystem,
    sc: &StructureConstants,
    i: usize,
    include_cartan: bool,
) -> Result<SphericalExpansion> {
    check_type_a(rs)?;
    if i == 0 || i > rs.rank() {
        return Err(Error::InvalidArgument(format!("index {i} outside 1..={}", rs.rank())));
    }
    let corner = select_corner(rs, sc, i)?;
    let real = Realization::new(rs, sc, include_cartan)?;
    let (k, s0, s1) = expansion_in(&real, i, corner)?
        .ok_or_else(|| Error::fatal("selected corner minor vanishes"))?;
    Ok(SphericalExpansion {
        i,
        k,
        corner,
        s0,
        s1,
    })
}

pub fn select_corner(rs: &RootSystem, sc: &StructureConstants, i: usize) -> Result<Corner> {
    let real = Realization::new(rs, sc, false)?;
    let target = varpi_prime(rs, i - 1).to_root().map(|r| r.0);
    for corner in [Corner::BottomLeft, Corner::TopRight] {
        let Some((_, s0, _)) = expansion_in(&real, i, corner)? else {
            continue;
        };
        if real.ctx.homogeneous_weight(&s0) != target {
            continue;
        }
        let f = RationalFunction::from_poly(s0);
        if crate::reduction::verify_ad_invariance(
            &f,
            &real.ctx,
            crate::reduction::Generators::AllPositive,
            crate::par::Mode::Sequential,
        )? {
            return Ok(corner);
        }
    }
    Err(Error::fatal(format!("no corner realizes S_{i}")))
}

/// `P_i = S_{i0}` of the nilpotent expansion, checked invariant.
pub fn lowest_coefficient_p(rs: &RootSystem, sc: &StructureConstants, i: usize) -> Result<Polynomial> {
    Ok(spherical_expansion(rs, sc, i, false)?.s0)
}

/// `J_i = S_{i1} / S_{i0}` over `b^*` for `i ∈ 𝔄` (1-based `i`).
pub fn compute_j(rs: &RootSystem, sc: &StructureConstants, i: usize) -> Result<RationalFunction> {
    check_type_a(rs)?;
    let a = select_a_set(&rs.diagram_automorphism_phi()?);
    if !a.contains(&(i - 1)) {
        return Err(Error::InvalidArgument(format!("index {i} is not in 𝔄")));
    }
    let e = spherical_expansion(rs, sc, i, true)?;
    RationalFunction::from_poly(e.s1).div_poly(&e.s0, 1)
}

/// `S_{i1} = L_i(y) S_{i0} + R_i(x)`.
#[derive(Clone, Debug)]
pub struct S1Structure {
    pub i: usize,
    pub l_form: Polynomial,
    pub s0: Polynomial,
    pub r: Polynomial,
}

/// `L(y) = Σ_j <L, α_j^∨> h_j` in the Borel context.
pub fn linear_form(rs: &RootSystem, ctx: &PoissonContext, w: &crate::rootsys::Weight) -> Polynomial {
    let np = ctx.root_vars();
    let mut p = Polynomial::zero(ctx.nvars());
    for j in 0..rs.rank() {
        p = p.add(&ctx.var(np + j).scale(&rs.coroot_pairing(w, j)));
    }
    p
}

pub fn check_s1_structure(rs: &RootSystem, sc: &StructureConstants, i: usize) -> Result<S1Structure> {
    check_type_a(rs)?;
    let a = select_a_set(&rs.diagram_automorphism_phi()?);
    if !a.contains(&(i - 1)) {
        return Err(Error::InvalidArgument(format!("index {i} is not in 𝔄")));
    }
    let nil = spherical_expansion(rs, sc, i, false)?;
    let bor = spherical_expansion(rs, sc, i, true)?;
    let ctx = PoissonContext::borel(sc);
    if ctx.flavor() != Flavor::Borel {
        return Err(Error::fatal("expected a Borel context"));
    }
    let np = ctx.root_vars();
    let nv = ctx.nvars();
    // Nilpotent polynomials embed with the h-exponents zero.
    let embed = |p: &Polynomial| {
        Polynomial::from_terms(
            nv,
            p.terms().map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nv, 0);
                (crate::polyalg::Monomial(e), c.clone())
            }),
        )
    };
    let s0 = embed(&nil.s0);
    if bor.s0 != s0 || bor.k != nil.k {
        return Err(Error::fatal("Borel zero term differs from the nilpotent one"));
    }
    let h_degree = |m: &crate::polyalg::Monomial| m.0[np..].iter().map(|&e| e as u32).sum::<u32>();
    let mut lin = Polynomial::zero(nv);
    let mut free = Polynomial::zero(nv);
    for (m, c) in bor.s1.terms() {
        match h_degree(m) {
            0 => free.add_term(m.clone(), c.clone()),
            1 => lin.add_term(m.clone(), c.clone()),
            _ => return Err(Error::fatal("S_i1 has terms of degree > 1 in h")),
        }
    }
    let l = l_weights(rs, &[i - 1]).remove(0).1;
    let lf = linear_form(rs, &ctx, &l);
    if lin != lf.mul(&s0) {
        return Err(Error::fatal(format!("y-linear part of S_{i}1 is not L_{i}(y)·S_{i}0")));
    }
    Ok(S1Structure {
        i,
        l_form: lf,
        s0,
        r: free,
    })
}

/// Whether `a = c · b` or `a = c · b²` for some scalar `c`.
pub fn matches_q_or_square(p: &Polynomial, qq: &Polynomial) -> Option<u32> {
    if p.scalar_multiple_of(qq).is_some() {
        Some(1)
    } else if p.scalar_multiple_of(&qq.pow(2)).is_some() {
        Some(2)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::chevalley_constants;
    use crate::rational::qf;

    fn sys(s: &str) -> (RootSystem, StructureConstants) {
        let rs = RootSystem::new(s.parse().unwrap()).unwrap();
        let sc = chevalley_constants(&rs).unwrap();
        (rs, sc)
    }

    fn var_of(rs: &RootSystem, v: &[i64]) -> usize {
        rs.root_index(&crate::rootsys::Root(v.to_vec())).unwrap()
    }

    #[test]
    fn series_examples() {
        let x = vec![
            vec![Polynomial::zero(1), Polynomial::zero(1)],
            vec![Polynomial::var(1, 0), Polynomial::zero(1)],
        ];
        let s = exp_series(&x, 2).unwrap();
        assert_eq!(s.entry(1, 0), vec![Polynomial::zero(1), Polynomial::var(1, 0), Polynomial::zero(1)]);
        // 3×3 strictly lower with x21, x31, x32 as variables 0, 1, 2.
        let v = |i| Polynomial::var(3, i);
        let z = Polynomial::zero(3);
        let x = vec![
            vec![z.clone(), z.clone(), z.clone()],
            vec![v(0), z.clone(), z.clone()],
            vec![v(1), v(2), z.clone()],
        ];
        let s = exp_series(&x, 3).unwrap();
        assert_eq!(s.entry(2, 0)[1], v(1));
        assert_eq!(s.entry(2, 0)[2], v(2).mul(&v(0)).scale(&qf(1, 2)));
        let d = vec![vec![Polynomial::var(1, 0)]];
        let s = exp_series(&d, 3).unwrap();
        assert_eq!(s.entry(0, 0)[3], Polynomial::var(1, 0).pow(3).scale(&qf(1, 6)));
        let big = vec![vec![Polynomial::zero(1); 9]; 9];
        assert!(exp_series(&big, 1).is_err());
    }

    #[test]
    fn corner_examples() {
        let (rs, sc) = sys("A2");
        let x31 = var_of(&rs, &[1, 1]);
        let e = spherical_expansion(&rs, &sc, 1, false).unwrap();
        assert_eq!(e.k, 1);
        assert_eq!(e.corner, Corner::BottomLeft);
        assert!(e.s0.scalar_multiple_of(&Polynomial::var(3, x31)).is_some());
        let e = spherical_expansion(&rs, &sc, 2, false).unwrap();
        assert_eq!(e.k, 1);
        assert!(e.s0.scalar_multiple_of(&Polynomial::var(3, x31)).is_some());
        let (rs, sc) = sys("A3");
        let e = spherical_expansion(&rs, &sc, 2, false).unwrap();
        assert_eq!(e.k, 2);
        assert_eq!(e.s0.len(), 2);
        let (rs, sc) = sys("A1");
        assert!(lowest_coefficient_p(&rs, &sc, 1).unwrap().scalar_multiple_of(&Polynomial::var(1, 0)).is_some());
        let (rs, sc) = sys("B2");
        assert!(matches!(spherical_expansion(&rs, &sc, 1, false), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn j_for_a2() {
        let (rs, sc) = sys("A2");
        let st = check_s1_structure(&rs, &sc, 1).unwrap();
        let ctx = PoissonContext::borel(&sc);
        let np = 3;
        // L_1(y) = (y1 + y3)/2 = (h1 - (-h2))/2 ... in h-coordinates: (h1 - h2)/2.
        let expect = ctx.var(np).sub(&ctx.var(np + 1)).scale(&qf(1, 2));
        assert_eq!(st.l_form, expect);
        let j = compute_j(&rs, &sc, 1).unwrap();
        assert!(crate::reduction::verify_ad_invariance(
            &j,
            &ctx,
            crate::reduction::Generators::Borel,
            crate::par::Mode::Sequential
        )
        .unwrap());
        assert!(compute_j(&rs, &sc, 2).is_err());
        let (rs, sc) = sys("A1");
        assert!(check_s1_structure(&rs, &sc, 1).is_err());
    }
}
