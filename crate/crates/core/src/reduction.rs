//! Iterated Heisenberg reduction: the invariants `Z_1..Z_m` of `n`, their
//! monomial combinations `Q_i`, and the checks around them.
//!
//! Level by level the highest live root `ξ` spans, with its singular roots, a
//! Heisenberg ideal. Every other live root vector is corrected by the
//! Hamiltonian of its adjoint action on that ideal, so that the corrected
//! vectors commute with the ideal and satisfy the brackets of the residual
//! nilradical. `T` records the corrected vectors in the original coordinates.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cascade::Cascade;
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Solution};
use crate::par::{self, Mode};
use crate::polyalg::{Flavor, Monomial, PoissonContext, Polynomial, RationalFunction};
use crate::rational::{q, qf, Q};
use crate::rootsys::{Root, RootSystem};
use crate::weight_table::{varpi_prime, KTable};

/// Variables of one Heisenberg ideal: `{x_k, y_k} = c_k z`, all other
/// brackets among them zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergFrame {
    pub z: usize,
    pub pairs: Vec<(usize, usize, Q)>,
    /// Live variables outside the frame.
    pub residual: Vec<usize>,
}

impl HeisenbergFrame {
    /// Checks the Heisenberg relations against `ctx` and records the `c_k`.
    pub fn new(
        ctx: &PoissonContext,
        z: usize,
        pairs: &[(usize, usize)],
        residual: Vec<usize>,
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(pairs.len());
        for &(x, y) in pairs {
            match ctx.bracket_vars(x, y) {
                Some((c, k)) if *k == z && !c.is_zero() => out.push((x, y, c.clone())),
                _ => {
                    return Err(Error::fatal(format!(
                        "{{{}, {}}} is not a multiple of {}",
                        ctx.names()[x],
                        ctx.names()[y],
                        ctx.names()[z]
                    )))
                }
            }
        }
        let frame = HeisenbergFrame {
            z,
            pairs: out,
            residual,
        };
        let vars = frame.vars();
        for (a, &u) in vars.iter().enumerate() {
            if ctx.bracket_vars(u, z).is_some() {
                return Err(Error::fatal(format!("{} does not commute with z", ctx.names()[u])));
            }
            for &v in &vars[a + 1..] {
                let paired = frame
                    .pairs
                    .iter()
                    .any(|&(x, y, _)| (x, y) == (u, v) || (y, x) == (u, v));
                if !paired && ctx.bracket_vars(u, v).is_some() {
                    return Err(Error::fatal(format!(
                        "unpaired frame variables {} and {} do not commute",
                        ctx.names()[u],
                        ctx.names()[v]
                    )));
                }
            }
        }
        Ok(frame)
    }

    /// `x_1, y_1, x_2, y_2, ...`
    pub fn vars(&self) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(x, y, _)| [x, y]).collect()
    }
}

/// Frame of `ξ` among the live positive roots: pairs `(α, ξ - α)` with `α`
/// before `ξ - α` in the root order.
pub fn heisenberg_frame(
    rs: &RootSystem,
    ctx: &PoissonContext,
    live: &[bool],
    xi: &Root,
) -> Result<HeisenbergFrame> {
    let z = rs
        .root_index(xi)
        .filter(|&i| live[i])
        .ok_or_else(|| Error::NotPositiveRoot(xi.0.clone()))?;
    let roots = rs.positive_roots();
    let mut pairs = Vec::new();
    let mut in_frame = vec![false; roots.len()];
    in_frame[z] = true;
    for (a, alpha) in roots.iter().enumerate() {
        if !live[a] || a == z {
            continue;
        }
        if let Some(b) = rs.root_index(&xi.sub(alpha)) {
            if live[b] && a < b {
                pairs.push((a, b));
                in_frame[a] = true;
                in_frame[b] = true;
            }
        }
    }
    let residual = (0..roots.len()).filter(|&i| live[i] && !in_frame[i]).collect();
    HeisenbergFrame::new(ctx, z, &pairs, residual)
}

/// `a_D = z^{-1} · ½ Σ_k (x_k D(y_k) - y_k D(x_k)) / c_k`, checked against
/// `{a_D, v} = D(v)` on every frame variable.
///
/// `d(v)` must return `D(v)`, a linear form in the frame variables.
pub fn hamiltonian_of_derivation(
    ctx: &PoissonContext,
    frame: &HeisenbergFrame,
    d: impl Fn(usize) -> Polynomial,
) -> Result<RationalFunction> {
    let quad = hamiltonian_numerator(ctx, frame, &d);
    check_hamiltonian(ctx, frame, &quad, &d)?;
    RationalFunction::from_poly(quad).div_poly(&ctx.var(frame.z), 1)
}

fn hamiltonian_numerator(
    ctx: &PoissonContext,
    frame: &HeisenbergFrame,
    d: &impl Fn(usize) -> Polynomial,
) -> Polynomial {
    let mut quad = Polynomial::zero(ctx.nvars());
    for (x, y, c) in &frame.pairs {
        let t = ctx.var(*x).mul(&d(*y)).sub(&ctx.var(*y).mul(&d(*x)));
        quad = quad.add(&t.scale(&(qf(1, 2) / c)));
    }
    quad
}

fn check_hamiltonian(
    ctx: &PoissonContext,
    frame: &HeisenbergFrame,
    quad: &Polynomial,
    d: &impl Fn(usize) -> Polynomial,
) -> Result<()> {
    let z = ctx.var(frame.z);
    for v in frame.vars() {
        if ctx.bracket(quad, &ctx.var(v))? != z.mul(&d(v)) {
            return Err(Error::fatal(format!(
                "derivation is not Hamiltonian on {}",
                ctx.names()[v]
            )));
        }
    }
    if !ctx.bracket(quad, &z)?.is_zero() {
        return Err(Error::fatal("Hamiltonian does not commute with z"));
    }
    Ok(())
}

/// The same Hamiltonian from the defining linear system over all quadratic
/// monomials in the frame variables. Fails unless the solution is unique.
pub fn hamiltonian_by_solve(
    ctx: &PoissonContext,
    frame: &HeisenbergFrame,
    d: impl Fn(usize) -> Polynomial,
) -> Result<RationalFunction> {
    let n = ctx.nvars();
    let vars = frame.vars();
    let mut basis: Vec<Polynomial> = Vec::new();
    for (a, &u) in vars.iter().enumerate() {
        for &v in &vars[a..] {
            basis.push(ctx.var(u).mul(&ctx.var(v)));
        }
    }
    let z = ctx.var(frame.z);
    // One equation per (frame variable, output monomial).
    let mut images: Vec<Vec<Polynomial>> = Vec::new();
    let mut targets: Vec<Polynomial> = Vec::new();
    for &v in &vars {
        images.push(
            basis
                .iter()
                .map(|b| ctx.bracket(b, &ctx.var(v)))
                .collect::<Result<_>>()?,
        );
        targets.push(z.mul(&d(v)));
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for (img, tgt) in images.iter().zip(&targets) {
        let mut monos: Vec<Monomial> = img
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .chain(tgt.terms().map(|(m, _)| m.clone()))
            .collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            rows.push(img.iter().map(|p| p.coeff(&m)).collect());
            rhs.push(tgt.coeff(&m));
        }
    }
    if basis.is_empty() {
        return if targets.iter().all(Polynomial::is_zero) {
            Ok(RationalFunction::zero(n))
        } else {
            Err(Error::fatal("empty frame with nonzero derivation"))
        };
    }
    if rows.is_empty() {
        rows.push(vec![Q::zero(); basis.len()]);
        rhs.push(Q::zero());
    }
    let sol = match RatMatrix::from_rows(rows).solve(&rhs) {
        Solution::Unique(x) => x,
        Solution::Underdetermined(_, k) => {
            return Err(Error::fatal(format!("Hamiltonian not unique: nullity {k}")))
        }
        Solution::Inconsistent => return Err(Error::fatal("D is not a derivation of the frame")),
    };
    let mut quad = Polynomial::zero(n);
    for (b, c) in basis.iter().zip(&sol) {
        quad = quad.add(&b.scale(c));
    }
    RationalFunction::from_poly(quad).div_poly(&z, 1)
}

/// `ẽ_β = e_β - a_β` with `a_β` the Hamiltonian of `ad e_β` on the frame;
/// the result commutes with every frame variable.
pub fn embed_complement(
    ctx: &PoissonContext,
    frame: &HeisenbergFrame,
    beta: usize,
) -> Result<RationalFunction> {
    let a = hamiltonian_of_derivation(ctx, frame, |v| {
        ctx.bracket(&ctx.var(beta), &ctx.var(v)).expect("same ring")
    })?;
    let e = RationalFunction::from_poly(ctx.var(beta)).sub(&a);
    let mut vars = frame.vars();
    vars.push(frame.z);
    for v in vars {
        let b = ctx.bracket_rf(&e, &RationalFunction::from_poly(ctx.var(v)))?;
        if !b.is_zero() {
            return Err(Error::fatal(format!(
                "corrected {} does not commute with {}",
                ctx.names()[beta],
                ctx.names()[v]
            )));
        }
    }
    Ok(e)
}

/// One reduction level in the coordinates of its own nilradical.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub frame: HeisenbergFrame,
    /// Nonzero corrections `(β, a_β)` with `a_β = z^{-1}·quad_β`.
    pub corrections: Vec<(usize, Polynomial)>,
}

/// Frames and Hamiltonians of all levels, independent of any substitution.
pub fn reduction_steps(
    rs: &RootSystem,
    ctx: &PoissonContext,
    cascade: &Cascade,
    mode: Mode,
) -> Result<Vec<ReductionStep>> {
    let np = rs.positive_roots().len();
    let mut live = vec![true; np];
    let mut out = Vec::with_capacity(cascade.m());
    for step in &cascade.steps {
        let frame = heisenberg_frame(rs, ctx, &live, &step.xi)?;
        let mut sing: Vec<usize> = frame.vars();
        sing.sort();
        let mut expect: Vec<usize> = step
            .singular
            .iter()
            .map(|r| rs.root_index(r).unwrap())
            .collect();
        expect.sort();
        if sing != expect {
            return Err(Error::fatal(format!(
                "frame of {} does not match its singular roots",
                step.xi
            )));
        }
        let corr = par::map(mode, &frame.residual, |&beta| {
            let d = |v: usize| ctx.bracket(&ctx.var(beta), &ctx.var(v)).expect("same ring");
            if frame.vars().iter().all(|&v| d(v).is_zero()) {
                return Ok(None);
            }
            let quad = hamiltonian_numerator(ctx, &frame, &d);
            check_hamiltonian(ctx, &frame, &quad, &d)?;
            Ok(Some((beta, quad)))
        });
        let corrections = corr
            .into_iter()
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        live[frame.z] = false;
        for v in frame.vars() {
            live[v] = false;
        }
        out.push(ReductionStep { frame, corrections });
    }
    Ok(out)
}

/// Composition order of the level maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Update the images of the live variables after each level.
    Incremental,
    /// Build `Z_i` from `e_{ξ_i}` by applying the level maps innermost first.
    Nested,
}

/// Raw (unnormalized) `Z_1..Z_m` in original coordinates.
pub fn cascade_invariants_raw(
    rs: &RootSystem,
    ctx: &PoissonContext,
    cascade: &Cascade,
    order: Order,
    mode: Mode,
) -> Result<Vec<RationalFunction>> {
    let steps = reduction_steps(rs, ctx, cascade, mode)?;
    let n = ctx.nvars();
    match order {
        Order::Incremental => {
            let mut t: Vec<RationalFunction> =
                (0..n).map(|i| RationalFunction::from_poly(ctx.var(i))).collect();
            let mut zs = Vec::with_capacity(steps.len());
            for st in &steps {
                let z = t[st.frame.z].clone();
                let zinv = z.recip()?;
                let updated = par::map(mode, &st.corrections, |(beta, quad)| {
                    let a = RationalFunction::compose(quad, n, |i| &t[i]).mul(&zinv);
                    (*beta, t[*beta].sub(&a))
                });
                for (beta, v) in updated {
                    t[beta] = v;
                }
                zs.push(z);
            }
            Ok(zs)
        }
        Order::Nested => {
            let ident: Vec<RationalFunction> =
                (0..n).map(|i| RationalFunction::from_poly(ctx.var(i))).collect();
            let maps: Vec<Vec<RationalFunction>> = steps
                .iter()
                .map(|st| {
                    let mut m = ident.clone();
                    let zinv = RationalFunction::one(n).div_poly(&ctx.var(st.frame.z), 1)?;
                    for (beta, quad) in &st.corrections {
                        let a = RationalFunction::from_poly(quad.clone()).mul(&zinv);
                        m[*beta] = m[*beta].sub(&a);
                    }
                    Ok(m)
                })
                .collect::<Result<_>>()?;
            let idx: Vec<usize> = steps.iter().map(|s| s.frame.z).collect();
            par::map(mode, &(0..steps.len()).collect::<Vec<_>>(), |&i| {
                let mut f = ident[idx[i]].clone();
                for m in maps[..i].iter().rev() {
                    f = f.compose_rf(n, |j| &m[j])?;
                }
                Ok(f)
            })
            .into_iter()
            .collect()
        }
    }
}

/// Per-element bookkeeping of an invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// 1-based cascade step (for `Z`) or fundamental index (for `Q`).
    pub index: usize,
    pub weight: Vec<i64>,
    /// `k'` row used (only for `Q`).
    pub k_row: Option<Vec<i64>>,
    /// `"varpi'"` or `"varpi'/2"` (only for `Q`).
    pub eta: Option<String>,
}

#[derive(Clone, Debug)]
pub struct InvariantSet {
    pub zs: Vec<RationalFunction>,
    pub qs: Vec<Polynomial>,
    pub z_info: Vec<Provenance>,
    pub q_info: Vec<Provenance>,
}

/// Weight of a weight-homogeneous rational function.
pub fn rf_weight(ctx: &PoissonContext, f: &RationalFunction) -> Option<Vec<i64>> {
    let mut w = ctx.homogeneous_weight(f.numerator())?;
    for (g, e) in f.denominator_factors() {
        let wg = ctx.homogeneous_weight(g)?;
        for (a, b) in w.iter_mut().zip(wg) {
            *a -= *e as i64 * b;
        }
    }
    Some(w)
}

/// `Z_1..Z_m`, leading coefficient `+1`, each checked for weight `ξ_i` and
/// for `{e_α, Z_i} = 0` over all positive `α`.
pub fn cascade_invariants(
    rs: &RootSystem,
    ctx: &PoissonContext,
    cascade: &Cascade,
    mode: Mode,
) -> Result<(Vec<RationalFunction>, Vec<Provenance>)> {
    let raw = cascade_invariants_raw(rs, ctx, cascade, Order::Incremental, mode)?;
    let mut zs = Vec::with_capacity(raw.len());
    let mut info = Vec::with_capacity(raw.len());
    for (i, z) in raw.iter().enumerate() {
        let (z, _) = z.normalized();
        let w = rf_weight(ctx, &z)
            .ok_or_else(|| Error::fatal(format!("Z{} is not weight-homogeneous", i + 1)))?;
        if w != cascade.xis[i].0 {
            return Err(Error::fatal(format!("Z{} has weight {:?}", i + 1, w)));
        }
        if !verify_ad_invariance(&z, ctx, Generators::AllPositive, mode)? {
            return Err(Error::fatal(format!("Z{} is not invariant", i + 1)));
        }
        zs.push(z);
        info.push(Provenance {
            index: i + 1,
            weight: w,
            k_row: None,
            eta: None,
        });
    }
    Ok((zs, info))
}

/// `Q_i = Π_j Z_j^{k'_ij}` for the selected rows, cleared to polynomials and
/// normalized to leading coefficient `+1`.
pub fn assemble_q(
    rs: &RootSystem,
    ctx: &PoissonContext,
    cascade: &Cascade,
    zs: &[RationalFunction],
    kt: &KTable,
) -> Result<(Vec<Polynomial>, Vec<Provenance>)> {
    let n = ctx.nvars();
    let mut qs = Vec::with_capacity(kt.rows.len());
    let mut info = Vec::with_capacity(kt.rows.len());
    for &i in &kt.rows {
        let row = &kt.k_prime[i];
        let mut f = RationalFunction::one(n);
        for (z, &e) in zs.iter().zip(row) {
            if e > 0 {
                f = f.mul(&z.pow(e as u32));
            } else if e < 0 {
                f = f.div(&z.pow((-e) as u32))?;
            }
        }
        let p = f.clear_to_polynomial().ok_or_else(|| {
            Error::fatal(format!("Q from row {} does not clear to a polynomial", i + 1))
        })?;
        let p = p.normalize_sign_and_scale();
        let w = ctx
            .homogeneous_weight(&p)
            .ok_or_else(|| Error::fatal(format!("Q{} is not weight-homogeneous", i + 1)))?;
        let eta = kt.eta(cascade, i);
        if eta.to_root().map(|r| r.0) != Some(w.clone()) {
            return Err(Error::fatal(format!("Q{} has weight {:?}", i + 1, w)));
        }
        let vp = varpi_prime(rs, i);
        let label = if eta == vp {
            "varpi'"
        } else if eta.scale(&q(2)) == vp {
            "varpi'/2"
        } else {
            return Err(Error::fatal(format!("η{} is neither ϖ' nor ϖ'/2", i + 1)));
        };
        qs.push(p);
        info.push(Provenance {
            index: i + 1,
            weight: w,
            k_row: Some(row.clone()),
            eta: Some(label.into()),
        });
    }
    Ok((qs, info))
}

pub fn invariant_set(
    rs: &RootSystem,
    ctx: &PoissonContext,
    cascade: &Cascade,
    kt: &KTable,
    mode: Mode,
) -> Result<InvariantSet> {
    let (zs, z_info) = cascade_invariants(rs, ctx, cascade, mode)?;
    let (qs, q_info) = assemble_q(rs, ctx, cascade, &zs, kt)?;
    Ok(InvariantSet {
        zs,
        qs,
        z_info,
        q_info,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generators {
    /// Simple root vectors; they generate `n`.
    Simple,
    AllPositive,
    /// All positive root vectors and `h_1..h_n` (Borel contexts only).
    Borel,
}

/// `{v, f} = 0` for every generator `v`.
pub fn verify_ad_invariance(
    f: &RationalFunction,
    ctx: &PoissonContext,
    gens: Generators,
    mode: Mode,
) -> Result<bool> {
    let idx: Vec<usize> = match gens {
        Generators::Simple => generator_vars(ctx),
        Generators::AllPositive => (0..ctx.root_vars()).collect(),
        Generators::Borel => (0..ctx.nvars()).collect(),
    };
    let results = par::map(mode, &idx, |&i| {
        ctx.bracket_rf(&RationalFunction::from_poly(ctx.var(i)), f)
            .map(|b| b.is_zero())
    });
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Variables generating the algebra: simple root vectors, plus the Cartan
/// part in the Borel case.
pub fn generator_vars(ctx: &PoissonContext) -> Vec<usize> {
    let n = ctx.nvars();
    let mut g: Vec<usize> = (0..ctx.root_vars())
        .filter(|&i| ctx.monomial_weight(&Monomial::var(n, i)).iter().sum::<i64>() == 1)
        .collect();
    if ctx.flavor() == Flavor::Borel {
        g.extend(ctx.root_vars()..n);
    }
    g
}

pub const BRUTE_FORCE_LIMIT: usize = 100_000;

/// A weight-graded piece of the invariant ring found by linear algebra.
#[derive(Clone, Debug)]
pub struct InvariantComponent {
    pub degree: u32,
    pub weight: Vec<i64>,
    pub basis: Vec<Polynomial>,
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d as u16, &mut vec![0; nvars], &mut out);
    out
}

fn binom(n: usize, k: usize) -> usize {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r.min(usize::MAX as u128) as usize
}

/// Basis of invariants of degree `1..=d`, by exact kernels of
/// `f ↦ {e_α, f}` (`α` simple) on every (degree, weight) component.
pub fn brute_force_invariants(
    ctx: &PoissonContext,
    degree_bound: u32,
    mode: Mode,
) -> Result<Vec<InvariantComponent>> {
    let n = ctx.nvars();
    let total = binom(n + degree_bound as usize, degree_bound as usize);
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "monomial count".into(),
            size: total,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let gens = generator_vars(ctx);
    let mut pieces: Vec<(u32, Vec<i64>, Vec<Monomial>)> = Vec::new();
    for d in 1..=degree_bound {
        let mut by_w: std::collections::BTreeMap<Vec<i64>, Vec<Monomial>> = Default::default();
        for m in monomials_of_degree(n, d) {
            by_w.entry(ctx.monomial_weight(&m)).or_default().push(m);
        }
        for (w, ms) in by_w {
            pieces.push((d, w, ms));
        }
    }
    let comps = par::map(mode, &pieces, |(d, w, ms)| {
        let polys: Vec<Polynomial> = ms.iter().map(|m| Polynomial::term(m.clone(), q(1))).collect();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for &g in &gens {
            let imgs: Vec<Polynomial> = polys
                .iter()
                .map(|p| ctx.bracket(&ctx.var(g), p))
                .collect::<Result<_>>()?;
            let mut out: Vec<Monomial> = imgs
                .iter()
                .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
                .collect();
            out.sort();
            out.dedup();
            for m in out {
                rows.push(imgs.iter().map(|p| p.coeff(&m)).collect());
            }
        }
        let kernel = if rows.is_empty() {
            (0..ms.len())
                .map(|i| (0..ms.len()).map(|j| if i == j { q(1) } else { Q::zero() }).collect())
                .collect()
        } else {
            RatMatrix::from_rows(rows).kernel()
        };
        let basis = kernel
            .into_iter()
            .map(|v: Vec<Q>| {
                Polynomial::from_terms(n, ms.iter().cloned().zip(v)).normalize_sign_and_scale()
            })
            .collect::<Vec<_>>();
        Ok(InvariantComponent {
            degree: *d,
            weight: w.clone(),
            basis,
        })
    });
    Ok(comps
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|c| !c.basis.is_empty())
        .collect())
}

/// Exponents `s ≥ 0` with `weight = Σ s_i wt(Q_i)`, if any.
fn q_exponents(q_weights: &[Vec<i64>], weight: &[i64]) -> Option<Vec<u32>> {
    let m = q_weights.len();
    let r = weight.len();
    let mut a = RatMatrix::zeros(r, m);
    for (j, w) in q_weights.iter().enumerate() {
        for i in 0..r {
            a.set(i, j, q(w[i]));
        }
    }
    let b: Vec<Q> = weight.iter().map(|&x| q(x)).collect();
    match a.solve(&b) {
        Solution::Unique(s) => s
            .iter()
            .map(|x| crate::rational::as_i64(x).and_then(|v| u32::try_from(v).ok()))
            .collect(),
        _ => None,
    }
}

/// Every brute-force component is spanned by the monomial `Π Q_i^{s_i}` of
/// its weight: at most one basis element, equal to it up to scalar.
pub fn membership_check(comps: &[InvariantComponent], qs: &[Polynomial], ctx: &PoissonContext) -> Result<bool> {
    let ws: Vec<Vec<i64>> = qs
        .iter()
        .map(|p| ctx.homogeneous_weight(p).ok_or_else(|| Error::fatal("Q not homogeneous")))
        .collect::<Result<_>>()?;
    for c in comps {
        let Some(s) = q_exponents(&ws, &c.weight) else {
            return Ok(false);
        };
        if c.basis.len() != 1 {
            return Ok(false);
        }
        let mut mono = Polynomial::one(ctx.nvars());
        for (p, &e) in qs.iter().zip(&s) {
            mono = mono.mul(&p.pow(e));
        }
        if c.basis[0].scalar_multiple_of(&mono).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub const SAMPLE_RANGE: i64 = 99;
pub const SAMPLE_RETRIES: usize = 50;

/// Integer point in `[-99, 99]^n` where none of `avoid` vanishes or has a pole.
pub fn generic_point(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    avoid: &[RationalFunction],
) -> Result<Vec<Q>> {
    for _ in 0..SAMPLE_RETRIES {
        let p: Vec<Q> = (0..nvars)
            .map(|_| q(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
            .collect();
        let ok = avoid
            .iter()
            .all(|f| matches!(f.evaluate(&p), Ok(v) if !v.is_zero()));
        if ok {
            return Ok(p);
        }
    }
    Err(Error::DegenerateSample(SAMPLE_RETRIES))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank of `({x_a, x_b})(point)`.
pub fn poisson_generic_rank(ctx: &PoissonContext, point: &[Q]) -> usize {
    RatMatrix::from_rows(ctx.matrix_at(point)).rank()
}

/// Rank of the Jacobian of `fs` at `point`.
pub fn jacobian_rank(fs: &[Polynomial], point: &[Q]) -> Result<usize> {
    if fs.is_empty() {
        return Ok(0);
    }
    let n = fs[0].nvars();
    let rows = fs
        .iter()
        .map(|f| (0..n).map(|i| f.derivative(i).evaluate(point)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_rows(rows).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::kostant_cascade;
    use crate::liealg::chevalley_constants;

    fn setup(s: &str) -> (RootSystem, PoissonContext, Cascade, KTable) {
        let rs = RootSystem::new(s.parse().unwrap()).unwrap();
        let sc = chevalley_constants(&rs).unwrap();
        let ctx = PoissonContext::nilpotent(&sc);
        let c = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &c).unwrap();
        (rs, ctx, c, kt)
    }

    fn heis() -> PoissonContext {
        let names = vec!["x".into(), "y".into(), "z".into()];
        PoissonContext::custom(names, &[(0, 1, q(1), 2)]).unwrap()
    }

    #[test]
    fn frames() {
        let (rs, ctx, _, _) = setup("A2");
        let live = vec![true; 3];
        let f = heisenberg_frame(&rs, &ctx, &live, &Root(vec![1, 1])).unwrap();
        assert_eq!(f.z, 2);
        assert_eq!(f.pairs.len(), 1);
        let (rs, ctx, _, _) = setup("B2");
        let f = heisenberg_frame(&rs, &ctx, &[true; 4], &Root(vec![1, 2])).unwrap();
        let (x, y, _) = &f.pairs[0];
        assert_eq!((&rs.positive_roots()[*x], &rs.positive_roots()[*y]), (&Root(vec![0, 1]), &Root(vec![1, 1])));
        assert_eq!(f.residual, vec![rs.root_index(&Root(vec![1, 0])).unwrap()]);
        let (rs, ctx, _, _) = setup("G2");
        let f = heisenberg_frame(&rs, &ctx, &[true; 6], &Root(vec![3, 2])).unwrap();
        assert_eq!(f.pairs.len(), 2);
    }

    #[test]
    fn hamiltonians_on_heisenberg() {
        let ctx = heis();
        let f = HeisenbergFrame::new(&ctx, 2, &[(0, 1)], vec![]).unwrap();
        let (x, y, z) = (ctx.var(0), ctx.var(1), ctx.var(2));
        let zero = hamiltonian_of_derivation(&ctx, &f, |_| Polynomial::zero(3)).unwrap();
        assert!(zero.is_zero());
        let d1 = |v: usize| if v == 0 { x.clone() } else { y.neg() };
        let a = hamiltonian_of_derivation(&ctx, &f, d1).unwrap();
        let expect = RationalFunction::from_poly(x.mul(&y)).div_poly(&z, 1).unwrap();
        assert_eq!(a.scalar_multiple_of(&expect), Some(q(-1)));
        assert_eq!(hamiltonian_by_solve(&ctx, &f, d1).unwrap(), a);
        let d2 = |v: usize| if v == 0 { y.clone() } else { Polynomial::zero(3) };
        let a = hamiltonian_of_derivation(&ctx, &f, d2).unwrap();
        let expect = RationalFunction::from_poly(y.pow(2)).div_poly(&z, 1).unwrap();
        assert_eq!(a.scalar_multiple_of(&expect), Some(qf(-1, 2)));
        assert_eq!(hamiltonian_by_solve(&ctx, &f, d2).unwrap(), a);
        // Not a derivation: D(x) = z leaves the frame.
        assert!(hamiltonian_of_derivation(&ctx, &f, |v| if v == 0 { z.clone() } else { Polynomial::zero(3) }).is_err());
    }

    #[test]
    fn embedding_b2() {
        let (rs, ctx, _, _) = setup("B2");
        let f = heisenberg_frame(&rs, &ctx, &[true; 4], &Root(vec![1, 2])).unwrap();
        let a1 = rs.root_index(&Root(vec![1, 0])).unwrap();
        let e = embed_complement(&ctx, &f, a1).unwrap();
        let a = RationalFunction::from_poly(ctx.var(a1)).sub(&e);
        let e12 = rs.root_index(&Root(vec![1, 1])).unwrap();
        let shape = RationalFunction::from_poly(ctx.var(e12).pow(2))
            .div_poly(&ctx.var(f.z), 1)
            .unwrap();
        assert!(a.scalar_multiple_of(&shape).is_some());
    }

    #[test]
    fn closed_form_matches_solve() {
        for s in ["A3", "B3", "C3", "G2", "D4"] {
            let (rs, ctx, c, _) = setup(s);
            let steps = reduction_steps(&rs, &ctx, &c, Mode::Sequential).unwrap();
            for st in &steps {
                for (beta, quad) in &st.corrections {
                    let d = |v: usize| ctx.bracket(&ctx.var(*beta), &ctx.var(v)).unwrap();
                    let solved = hamiltonian_by_solve(&ctx, &st.frame, d).unwrap();
                    let closed = RationalFunction::from_poly(quad.clone())
                        .div_poly(&ctx.var(st.frame.z), 1)
                        .unwrap();
                    assert_eq!(solved, closed, "{s}");
                }
            }
        }
    }

    #[test]
    fn small_invariants() {
        let (rs, ctx, c, kt) = setup("A2");
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Sequential).unwrap();
        assert_eq!(inv.zs, vec![RationalFunction::from_poly(ctx.var(2))]);
        let (rs, ctx, _, _) = setup("A1");
        let c = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &c).unwrap();
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Sequential).unwrap();
        assert_eq!(inv.qs, vec![ctx.var(0)]);
        let (rs, ctx, c, kt) = setup("B2");
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Sequential).unwrap();
        assert_eq!(inv.z_info[1].weight, vec![1, 0]);
        assert_eq!(inv.q_info[0].weight, vec![2, 2]);
        let (rs, ctx, c, kt) = setup("G2");
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Sequential).unwrap();
        let z1 = inv.zs[0].clear_to_polynomial().unwrap();
        assert!(inv.qs.contains(&z1));
    }

    #[test]
    fn orders_agree() {
        for s in ["A3", "B2", "C3", "G2"] {
            let (rs, ctx, c, _) = setup(s);
            let a = cascade_invariants_raw(&rs, &ctx, &c, Order::Incremental, Mode::Sequential).unwrap();
            let b = cascade_invariants_raw(&rs, &ctx, &c, Order::Nested, Mode::Parallel).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!(x.value_eq(y), "{s}");
            }
        }
    }

    #[test]
    fn invariance_modes() {
        let (rs, ctx, c, kt) = setup("A3");
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Parallel).unwrap();
        for qq in &inv.qs {
            let f = RationalFunction::from_poly(qq.clone());
            assert!(verify_ad_invariance(&f, &ctx, Generators::Simple, Mode::Sequential).unwrap());
            assert!(verify_ad_invariance(&f, &ctx, Generators::AllPositive, Mode::Parallel).unwrap());
        }
        let one = RationalFunction::one(ctx.nvars());
        assert!(verify_ad_invariance(&one, &ctx, Generators::Simple, Mode::Sequential).unwrap());
        let (rs2, ctx2, _, _) = setup("A2");
        let a1 = rs2.root_index(&Root(vec![1, 0])).unwrap();
        let e = RationalFunction::from_poly(ctx2.var(a1));
        assert!(!verify_ad_invariance(&e, &ctx2, Generators::Simple, Mode::Sequential).unwrap());
        let _ = rs;
    }

    #[test]
    fn brute_force_small() {
        let (_, ctx, _, _) = setup("A2");
        let comps = brute_force_invariants(&ctx, 1, Mode::Sequential).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].basis, vec![ctx.var(2)]);
        let (_, ctx, _, _) = setup("A1");
        let comps = brute_force_invariants(&ctx, 3, Mode::Sequential).unwrap();
        assert_eq!(comps.len(), 3);
        let (_, ctx, _, _) = setup("E6");
        assert!(matches!(
            brute_force_invariants(&ctx, 5, Mode::Sequential),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn ranks() {
        let (rs, ctx, c, kt) = setup("G2");
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Sequential).unwrap();
        let mut r = rng(0);
        let p = generic_point(&mut r, ctx.nvars(), &inv.zs).unwrap();
        assert_eq!(poisson_generic_rank(&ctx, &p), 4);
        assert_eq!(jacobian_rank(&inv.qs, &p).unwrap(), 2);
        let (_, ctx, _, _) = setup("A1");
        assert_eq!(poisson_generic_rank(&ctx, &[q(5)]), 0);
    }
}
