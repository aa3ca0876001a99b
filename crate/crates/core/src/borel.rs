//! Invariants of the coadjoint action of the Borel subalgebra.

use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cascade::{kostant_cascade, Cascade};
use crate::error::{Error, Result};
use crate::liealg::{chevalley_constants, StructureConstants};
use crate::linalg::RatMatrix;
use crate::par::Mode;
use crate::polyalg::{Monomial, PoissonContext, Polynomial, RationalFunction};
use crate::rational::{q, Q};
use crate::reduction::{
    brute_force_invariants, generic_point, invariant_set, poisson_generic_rank, rf_weight,
    verify_ad_invariance, Generators, InvariantSet,
};
use crate::rootsys::{RootSystem, TypeLabel, Weight};
use crate::spherical::compute_j;
use crate::weight_table::KTable;

/// Everything the Borel checks need for one system.
#[derive(Clone, Debug)]
pub struct BorelContext {
    pub rs: RootSystem,
    pub sc: StructureConstants,
    pub ctx: PoissonContext,
    pub nil: PoissonContext,
    pub cascade: Cascade,
    pub kt: KTable,
}

impl BorelContext {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let sc = chevalley_constants(rs)?;
        let ctx = PoissonContext::borel(&sc);
        let nil = PoissonContext::nilpotent(&sc);
        let cascade = kostant_cascade(rs);
        let kt = KTable::build(rs, &cascade)?;
        let bc = BorelContext {
            rs: rs.clone(),
            sc,
            ctx,
            nil,
            cascade,
            kt,
        };
        bc.check_brackets()?;
        Ok(bc)
    }

    /// The bracket on `n` agrees with the nilpotent context, and
    /// `{h_j, e_α} = α(h_j) e_α` with `α(h_j)` the `j`-th simple coordinate.
    fn check_brackets(&self) -> Result<()> {
        let np = self.ctx.root_vars();
        for i in 0..np {
            for j in 0..np {
                if self.ctx.bracket_vars(i, j) != self.nil.bracket_vars(i, j) {
                    return Err(Error::fatal("Borel bracket differs on n"));
                }
            }
        }
        for (a, r) in self.rs.positive_roots().iter().enumerate() {
            for j in 0..self.rs.rank() {
                let want = (r.0[j] != 0).then(|| (q(r.0[j]), a));
                if self.ctx.bracket_vars(np + j, a).cloned() != want {
                    return Err(Error::fatal("Cartan action on root vectors is wrong"));
                }
            }
        }
        Ok(())
    }

    /// A nilpotent polynomial as a Borel one (h-exponents zero).
    pub fn embed(&self, p: &Polynomial) -> Polynomial {
        let nv = self.ctx.nvars();
        Polynomial::from_terms(
            nv,
            p.terms().map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(nv, 0);
                (Monomial(e), c.clone())
            }),
        )
    }

    pub fn embed_rf(&self, f: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(
            self.embed(f.numerator()),
            f.denominator_factors()
                .iter()
                .map(|(g, e)| (self.embed(g), *e))
                .collect(),
        )
    }

    pub fn phi_is_identity(&self) -> bool {
        self.kt.a_set.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialInvariantReport {
    pub degree_bound: u32,
    pub constants_only: bool,
    /// Nonconstant invariants found, by increasing degree.
    #[serde(skip)]
    pub basis: Vec<Polynomial>,
}

/// Kernel of all generator brackets on polynomials of degree `1..=d`.
pub fn no_polynomial_invariants_check(
    ctx: &PoissonContext,
    degree_bound: u32,
    mode: Mode,
) -> Result<PolynomialInvariantReport> {
    let comps = brute_force_invariants(ctx, degree_bound, mode)?;
    let basis: Vec<Polynomial> = comps.into_iter().flat_map(|c| c.basis).collect();
    Ok(PolynomialInvariantReport {
        degree_bound,
        constants_only: basis.is_empty(),
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldStatus {
    /// `φ = id`: only constants.
    Trivial,
    /// Explicit `J_i`, checked.
    Verified,
    /// `φ ≠ id` outside type A: count and forms only.
    OutOfScope,
}

#[derive(Clone, Debug)]
pub struct FieldInvariants {
    pub status: FieldStatus,
    /// 0-based `𝔄`.
    pub a_set: Vec<usize>,
    pub l_forms: Vec<Weight>,
    pub generators: Vec<RationalFunction>,
    /// Jacobian rank of the generators at a generic point.
    pub jacobian_rank: Option<usize>,
}

fn rf_jacobian_rank(fs: &[RationalFunction], point: &[Q]) -> Result<usize> {
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

/// Points where every `Z_i`, `Q_i` and `J_i` is defined and nonzero.
fn avoid_list(bc: &BorelContext, inv: &InvariantSet, js: &[RationalFunction]) -> Result<Vec<RationalFunction>> {
    let mut v = Vec::new();
    for z in &inv.zs {
        v.push(bc.embed_rf(z)?);
    }
    for p in &inv.qs {
        v.push(RationalFunction::from_poly(bc.embed(p)));
    }
    for j in js {
        v.push(RationalFunction::from_poly(j.denominator()));
    }
    Ok(v)
}

pub fn borel_field_invariants(bc: &BorelContext, rng: &mut ChaCha8Rng, mode: Mode) -> Result<FieldInvariants> {
    let a_set = bc.kt.a_set.clone();
    let l_forms: Vec<Weight> = bc.kt.l.iter().map(|(_, w)| w.clone()).collect();
    if a_set.is_empty() {
        return Ok(FieldInvariants {
            status: FieldStatus::Trivial,
            a_set,
            l_forms,
            generators: Vec::new(),
            jacobian_rank: Some(0),
        });
    }
    if bc.rs.cartan_type().label != TypeLabel::A {
        return Ok(FieldInvariants {
            status: FieldStatus::OutOfScope,
            a_set,
            l_forms,
            generators: Vec::new(),
            jacobian_rank: None,
        });
    }
    let mut js = Vec::new();
    for &i in &a_set {
        let j = compute_j(&bc.rs, &bc.sc, i + 1)?;
        if rf_weight(&bc.ctx, &j) != Some(vec![0; bc.rs.rank()]) {
            return Err(Error::fatal(format!("J_{} is not of weight zero", i + 1)));
        }
        if !verify_ad_invariance(&j, &bc.ctx, Generators::Borel, mode)? {
            return Err(Error::fatal(format!("J_{} is not invariant", i + 1)));
        }
        js.push(j);
    }
    let avoid: Vec<RationalFunction> = js.iter().map(|j| RationalFunction::from_poly(j.denominator())).collect();
    let pt = generic_point(rng, bc.ctx.nvars(), &avoid)?;
    let rank = rf_jacobian_rank(&js, &pt)?;
    Ok(FieldInvariants {
        status: FieldStatus::Verified,
        a_set,
        l_forms,
        generators: js,
        jacobian_rank: Some(rank),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub flavor: String,
    pub dim: usize,
    pub rank: usize,
    pub expected_rank: usize,
    /// Rank of the differentials of the invariants at the point.
    pub invariant_rank: Option<usize>,
    pub expected_invariant_rank: usize,
    pub point: Vec<String>,
}

impl RankCheck {
    pub fn passed(&self) -> bool {
        self.rank == self.expected_rank
            && self.invariant_rank.map_or(true, |r| r == self.expected_invariant_rank)
    }
}

/// Rank of the Borel Poisson matrix at `point` against `dim b - |𝔄|`.
pub fn borel_index_check(bc: &BorelContext, point: &[Q]) -> RankCheck {
    let dim = bc.ctx.nvars();
    RankCheck {
        flavor: "borel".into(),
        dim,
        rank: poisson_generic_rank(&bc.ctx, point),
        expected_rank: dim - bc.kt.a_set.len(),
        invariant_rank: None,
        expected_invariant_rank: 0,
        point: point.iter().map(crate::rational::to_pq).collect(),
    }
}

/// Orbit dimension at `point` against the number of independent invariants
/// cut out there (`Q_i` on `n^*`, `J_i` on `b^*`).
pub fn orbit_level_set_check(
    ctx: &PoissonContext,
    invariants: &[RationalFunction],
    expected_invariants: usize,
    point: &[Q],
) -> Result<RankCheck> {
    let dim = ctx.nvars();
    let rank = poisson_generic_rank(ctx, point);
    let ir = rf_jacobian_rank(invariants, point)?;
    Ok(RankCheck {
        flavor: format!("{:?}", ctx.flavor()).to_lowercase(),
        dim,
        rank,
        expected_rank: dim - expected_invariants,
        invariant_rank: Some(ir),
        expected_invariant_rank: expected_invariants,
        point: point.iter().map(crate::rational::to_pq).collect(),
    })
}

#[derive(Clone, Debug)]
pub struct BorelReport {
    pub polynomial: PolynomialInvariantReport,
    pub field: FieldInvariants,
    /// `|𝔄|`: the index of `b`.
    pub index: usize,
    pub rank_checks: Vec<RankCheck>,
}

/// All Borel statements at `samples` generic points.
pub fn borel_report(
    rs: &RootSystem,
    degree_bound: u32,
    samples: usize,
    rng: &mut ChaCha8Rng,
    mode: Mode,
) -> Result<BorelReport> {
    let bc = BorelContext::new(rs)?;
    let polynomial = no_polynomial_invariants_check(&bc.ctx, degree_bound, mode)?;
    let field = borel_field_invariants(&bc, rng, mode)?;
    let inv = invariant_set(&bc.rs, &bc.nil, &bc.cascade, &bc.kt, mode)?;
    let avoid = avoid_list(&bc, &inv, &field.generators)?;
    let qs: Vec<RationalFunction> = inv.qs.iter().cloned().map(RationalFunction::from_poly).collect();
    let mut rank_checks = Vec::new();
    for _ in 0..samples {
        let pt = generic_point(rng, bc.ctx.nvars(), &avoid)?;
        let np = bc.nil.nvars();
        rank_checks.push(orbit_level_set_check(&bc.nil, &qs, qs.len(), &pt[..np])?);
        if field.status == FieldStatus::OutOfScope {
            rank_checks.push(borel_index_check(&bc, &pt));
        } else {
            rank_checks.push(orbit_level_set_check(&bc.ctx, &field.generators, bc.kt.a_set.len(), &pt)?);
        }
    }
    Ok(BorelReport {
        polynomial,
        index: bc.kt.a_set.len(),
        field,
        rank_checks,
    })
}

/// Whether every sampled value is nonzero: a cheap check that `point` lies in
/// the open set where the level-set statements apply.
pub fn is_generic(fs: &[RationalFunction], point: &[Q]) -> bool {
    fs.iter().all(|f| matches!(f.evaluate(point), Ok(v) if !v.is_zero()))
}
