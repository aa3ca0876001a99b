//! Report assembly shared by the command-line front end and the tests.
//!
//! Every subcommand produces a [`Section`]: a JSON payload, named checks and
//! pre-rendered text and LaTeX. JSON objects use `serde_json`'s sorted maps,
//! so output is byte-stable.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::borel::{borel_report, FieldStatus};
use crate::cascade::{kostant_cascade, Cascade};
use crate::error::{Error, Result};
use crate::fixtures::check_against_golden;
use crate::liealg::{chevalley_constants, StructureConstants, CONVENTION};
use crate::par::Mode;
use crate::polyalg::{PoissonContext, Polynomial, RationalFunction};
use crate::rational::to_pq;
use crate::reduction::{
    generic_point, invariant_set, jacobian_rank, poisson_generic_rank, verify_ad_invariance,
    Generators, InvariantSet,
};
use crate::rootsys::{format_epsilon, RootSystem, TypeLabel, Weight};
use crate::spherical::{check_s1_structure, compute_j, lowest_coefficient_p, matches_q_or_square, spherical_expansion};
use crate::weight_table::{format_xi_combination, weight_pq, KTable};

/// Largest `dim n` the reduction runs on without `--force`.
pub const MAX_DIM_NILPOTENT: usize = 36;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Discrepancy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn with(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Section {
    pub results: Value,
    pub checks: Vec<Check>,
    pub text: String,
    pub latex: String,
}

impl Section {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub convention: &'static str,
    pub table_hash: String,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub algebra: String,
    pub results: Value,
    pub checks: Vec<Check>,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

pub fn provenance(sc: &StructureConstants, seed: u64) -> Provenance {
    Provenance {
        version: env!("CARGO_PKG_VERSION"),
        convention: CONVENTION,
        table_hash: sc.table_hash(),
        seed,
    }
}

fn weight_json(w: &Weight) -> Value {
    json!(weight_pq(w))
}

fn q_matrix_latex(rows: &[Vec<i64>]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", body.join(" \\\\ "))
}

pub fn roots_section(rs: &RootSystem) -> Section {
    let ct = rs.cartan_type();
    let results = json!({
        "type": ct.label.letter().to_string(),
        "rank": ct.rank,
        "cartan_matrix": rs.cartan_matrix(),
        "positive_roots": rs.positive_roots(),
        "fundamental_weights": rs.fundamental_weights().iter().map(weight_json).collect::<Vec<_>>(),
    });
    let mut text = format!("{ct}: {} positive roots\n", rs.positive_roots().len());
    for row in rs.cartan_matrix() {
        text.push_str(&format!("  {row:?}\n"));
    }
    for (i, r) in rs.positive_roots().iter().enumerate() {
        text.push_str(&format!("  {:>3}  {}\n", i, r));
    }
    for (i, w) in rs.fundamental_weights().iter().enumerate() {
        text.push_str(&format!("  varpi{} = {}\n", i + 1, w));
    }
    let latex = format!("A = {}\n", q_matrix_latex(rs.cartan_matrix()));
    let checks = vec![Check::new(
        "positive-root-count",
        rs.positive_roots().len() == rs.dim_nilpotent(),
        format!("{}", rs.positive_roots().len()),
    )];
    Section {
        results,
        checks,
        text,
        latex,
    }
}

fn describe_xi(rs: &RootSystem, r: &crate::rootsys::Root) -> String {
    match rs.root_epsilon(r) {
        Some(e) => format!("{r} = {}", format_epsilon(&e)),
        None => r.to_string(),
    }
}

pub fn cascade_section(rs: &RootSystem, c: &Cascade) -> Section {
    let results = json!({
        "xis": c.xis,
        "m": c.m(),
        "steps": c.steps,
    });
    let mut text = format!("{}: m = {}\n", rs.cartan_type(), c.m());
    let mut latex = String::from("\\begin{array}{ll}\n");
    for (j, s) in c.steps.iter().enumerate() {
        text.push_str(&format!(
            "  xi{} = {}  (level {}, {} singular)\n",
            j + 1,
            describe_xi(rs, &s.xi),
            s.level,
            s.singular.len()
        ));
        latex.push_str(&format!("\\xi_{{{}}} & {} \\\\\n", j + 1, root_latex(rs, &s.xi)));
    }
    latex.push_str("\\end{array}\n");
    let v = c.verify(rs);
    let checks = vec![Check::new(
        "cascade-structure",
        v.is_ok(),
        v.err().map_or("strongly orthogonal, partitions positive roots".into(), |e| e.to_string()),
    )];
    Section {
        results,
        checks,
        text,
        latex,
    }
}

fn root_latex(rs: &RootSystem, r: &crate::rootsys::Root) -> String {
    if let Some(e) = rs.root_epsilon(r) {
        let mut s = String::new();
        for (i, &c) in e.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let a = c.abs();
            let coef = if a == 1 { String::new() } else { a.to_string() };
            s.push_str(&format!("{sign}{coef}\\varepsilon_{{{}}}", i + 1));
        }
        return s;
    }
    let mut s = String::new();
    for (i, &c) in r.0.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('+');
        }
        if c != 1 {
            s.push_str(&c.to_string());
        }
        s.push_str(&format!("\\alpha_{{{}}}", i + 1));
    }
    s
}

fn xi_latex(coeffs: &[i64]) -> String {
    format_xi_combination(coeffs)
        .split(" + ")
        .map(|t| match t.split_once('ξ') {
            Some((c, j)) => format!("{c}\\xi_{{{j}}}"),
            None => t.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn ktable_section(rs: &RootSystem, c: &Cascade, kt: &KTable, check_paper: bool) -> Section {
    let mut results = json!({
        "k": kt.k,
        "k_prime": kt.k_prime,
        "row_gcds": kt.row_gcds,
        "det_sign": kt.det_sign,
        "a_set": kt.a_set.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "L": kt.l.iter().map(|(_, w)| weight_json(w)).collect::<Vec<_>>(),
        "rows": kt.rows.iter().map(|i| i + 1).collect::<Vec<_>>(),
    });
    let mut text = format!("{}: varpi' in the cascade basis\n", rs.cartan_type());
    let mut latex = String::from("\\begin{array}{ll}\n");
    for (i, row) in kt.k.iter().enumerate() {
        text.push_str(&format!(
            "  varpi'{} = {}   (gcd {})\n",
            i + 1,
            format_xi_combination(row),
            kt.row_gcds[i]
        ));
        latex.push_str(&format!("\\varpi'_{{{}}} & {} \\\\\n", i + 1, xi_latex(row)));
    }
    latex.push_str("\\end{array}\n");
    for (i, w) in &kt.l {
        text.push_str(&format!("  L{} = {}\n", i + 1, w));
    }
    let mut checks = vec![
        Check::new(
            "row-gcds",
            kt.row_gcds.iter().all(|g| *g == 1 || *g == 2),
            format!("{:?}", kt.row_gcds),
        ),
        Check::new("unimodular", kt.det_sign.abs() == 1, format!("det k' = {}", kt.det_sign)),
        Check::new(
            "index",
            kt.a_set.len() == rs.rank() - c.m(),
            format!("|A| = {}", kt.a_set.len()),
        ),
    ];
    if check_paper {
        match check_against_golden(rs, c, kt) {
            Some(pc) => {
                let status = if pc.matches {
                    Status::Pass
                } else {
                    Status::Discrepancy
                };
                let detail = if pc.matches {
                    format!("matches {}", pc.source)
                } else {
                    pc.discrepancies
                        .iter()
                        .map(|d| match d.row {
                            Some(r) => format!("{} {}: printed {} computed {}", d.kind, r, d.printed, d.computed),
                            None => format!("{}: printed {} computed {}", d.kind, d.printed, d.computed),
                        })
                        .collect::<Vec<_>>()
                        .join("; ")
                };
                for d in &pc.discrepancies {
                    text.push_str(&format!(
                        "  discrepancy ({}{}): printed {} / computed {}\n",
                        d.kind,
                        d.row.map_or(String::new(), |r| format!(" {r}")),
                        d.printed,
                        d.computed
                    ));
                }
                results["golden"] = serde_json::to_value(&pc).expect("serializable");
                checks.push(Check::with("golden-table", status, detail));
            }
            None => checks.push(Check::with("golden-table", Status::Skipped, "no fixture for this rank")),
        }
    }
    Section {
        results,
        checks,
        text,
        latex,
    }
}

/// Rejects reductions that are too large to attempt without `--force`.
pub fn reduction_guard(rs: &RootSystem, force: bool) -> Result<()> {
    if force {
        return Ok(());
    }
    let dim = rs.dim_nilpotent();
    if rs.cartan_type().label == TypeLabel::E {
        return Err(Error::GuardExceeded {
            what: format!("{} reduction without --force, dim n", rs.cartan_type()),
            size: dim,
            limit: 0,
        });
    }
    if dim > MAX_DIM_NILPOTENT {
        return Err(Error::GuardExceeded {
            what: "dim n".into(),
            size: dim,
            limit: MAX_DIM_NILPOTENT,
        });
    }
    Ok(())
}

fn poly_json(p: &Polynomial) -> Value {
    serde_json::to_value(p.to_records()).expect("serializable")
}

fn rf_json(f: &RationalFunction) -> Value {
    serde_json::to_value(f.to_record()).expect("serializable")
}

/// `Q_i`, `Z_i` and, with `verify`, the invariance, independence, rank and
/// oracle checks at a point drawn from `rng`.
pub fn invariants_section(
    rs: &RootSystem,
    sc: &StructureConstants,
    c: &Cascade,
    kt: &KTable,
    verify: bool,
    rng: &mut ChaCha8Rng,
    mode: Mode,
) -> Result<(Section, InvariantSet)> {
    let ctx = PoissonContext::nilpotent(sc);
    let inv = invariant_set(rs, &ctx, c, kt, mode)?;
    let names = ctx.names();
    let latex_names = ctx.latex_names();
    let m = inv.qs.len();
    let q_weights: Vec<Value> = inv
        .q_info
        .iter()
        .map(|p| {
            json!({
                "index": p.index,
                "eta": p.eta,
                "k_row": p.k_row,
                "xi_combination": p.k_row.as_ref().map(|r| format_xi_combination(r)),
                "weight": p.weight,
            })
        })
        .collect();
    let mut results = json!({
        "variables": names,
        "zs": inv.zs.iter().map(rf_json).collect::<Vec<_>>(),
        "qs": inv.qs.iter().map(poly_json).collect::<Vec<_>>(),
        "weights": {
            "z": inv.z_info.iter().map(|p| p.weight.clone()).collect::<Vec<_>>(),
            "q": q_weights,
        },
    });
    let mut text = format!("{}: m = {}\n", rs.cartan_type(), m);
    let mut latex = String::new();
    for (j, z) in inv.zs.iter().enumerate() {
        text.push_str(&format!("  Z{} = {}\n", j + 1, z.to_text(names)));
    }
    for (p, info) in inv.qs.iter().zip(&inv.q_info) {
        let row = info.k_row.as_deref().unwrap_or(&[]);
        text.push_str(&format!(
            "  Q{} [{}; {}] = {}\n",
            info.index,
            format_xi_combination(row),
            info.eta.as_deref().unwrap_or(""),
            p.to_text(names)
        ));
        latex.push_str(&format!("Q_{{{}}} &= {} \\\\\n", info.index, p.to_latex(latex_names)));
    }
    let mut checks = Vec::new();
    if verify {
        let inv_ok = inv.qs.iter().try_fold(true, |acc, p| {
            verify_ad_invariance(&RationalFunction::from_poly(p.clone()), &ctx, Generators::AllPositive, mode)
                .map(|b| acc && b)
        })?;
        checks.push(Check::new("invariance", inv_ok, "{e_a, Q_i} = 0 for all positive a"));
        let avoid: Vec<RationalFunction> = inv
            .zs
            .iter()
            .cloned()
            .chain(inv.qs.iter().cloned().map(RationalFunction::from_poly))
            .collect();
        let pt = generic_point(rng, ctx.nvars(), &avoid)?;
        let jr = jacobian_rank(&inv.qs, &pt)?;
        checks.push(Check::new("independence", jr == m, format!("Jacobian rank {jr}, m = {m}")));
        let pr = poisson_generic_rank(&ctx, &pt);
        let want = ctx.nvars() - m;
        checks.push(Check::new("rank", pr == want, format!("Poisson rank {pr}, dim n - m = {want}")));
        results["sample_point"] = json!(pt.iter().map(to_pq).collect::<Vec<_>>());
        if rs.cartan_type().label == TypeLabel::A && rs.rank() + 1 <= crate::spherical::MAX_MATRIX {
            let mut detail = Vec::new();
            let mut ok = true;
            for (p, info) in inv.qs.iter().zip(&inv.q_info) {
                let pi = lowest_coefficient_p(rs, sc, info.index)?;
                match matches_q_or_square(&pi, p) {
                    Some(e) => detail.push(format!("P{} ~ Q{}^{}", info.index, info.index, e)),
                    None => {
                        ok = false;
                        detail.push(format!("P{} does not match Q{}", info.index, info.index));
                    }
                }
            }
            checks.push(Check::new("P_vs_Q", ok, detail.join(", ")));
        } else {
            checks.push(Check::with("P_vs_Q", Status::Skipped, "corner-minor oracle covers A_n only"));
        }
    }
    Ok((
        Section {
            results,
            checks,
            text,
            latex,
        },
        inv,
    ))
}

pub fn spherical_section(rs: &RootSystem, sc: &StructureConstants, i: usize, borel: bool) -> Result<Section> {
    let e = spherical_expansion(rs, sc, i, borel)?;
    let ctx = if borel {
        PoissonContext::borel(sc)
    } else {
        PoissonContext::nilpotent(sc)
    };
    let names = ctx.names();
    let mut results = json!({
        "i": i,
        "k": e.k,
        "corner": e.corner,
        "variables": names,
        "s0": poly_json(&e.s0),
        "s1": poly_json(&e.s1),
    });
    let mut text = format!(
        "{} S_{}: k = {}, corner {:?}\n  S{}0 = {}\n  S{}1 = {}\n",
        rs.cartan_type(),
        i,
        e.k,
        e.corner,
        i,
        e.s0.to_text(names),
        i,
        e.s1.to_text(names)
    );
    let ln = ctx.latex_names();
    let mut latex = format!(
        "S_{{{i}0}} &= {} \\\\\nS_{{{i}1}} &= {} \\\\\n",
        e.s0.to_latex(ln),
        e.s1.to_latex(ln)
    );
    let mut checks = Vec::new();
    let in_a = {
        let kt_a = crate::weight_table::select_a_set(&rs.diagram_automorphism_phi()?);
        kt_a.contains(&(i - 1))
    };
    if borel && in_a {
        let j = compute_j(rs, sc, i)?;
        let ok = verify_ad_invariance(&j, &ctx, Generators::Borel, Mode::Parallel)?;
        checks.push(Check::new("J-invariance", ok, "{v, J} = 0 for all v in b"));
        let st = check_s1_structure(rs, sc, i);
        checks.push(Check::new(
            "S1-structure",
            st.is_ok(),
            st.as_ref().err().map_or("y-linear part is L(y) S0".into(), |e| e.to_string()),
        ));
        text.push_str(&format!("  J{} = {}\n", i, j.to_text(names)));
        latex.push_str(&format!("J_{{{i}}} &= {} \\\\\n", j.to_latex(ln)));
        results["J"] = rf_json(&j);
    }
    Ok(Section {
        results,
        checks,
        text,
        latex,
    })
}

pub fn borel_section(
    rs: &RootSystem,
    degree_bound: u32,
    samples: usize,
    rng: &mut ChaCha8Rng,
    mode: Mode,
) -> Result<Section> {
    let r = borel_report(rs, degree_bound, samples, rng, mode)?;
    let sc = chevalley_constants(rs)?;
    let ctx = PoissonContext::borel(&sc);
    let names = ctx.names();
    let poly = if r.polynomial.constants_only {
        json!("constants-only")
    } else {
        json!(r.polynomial.basis.iter().map(poly_json).collect::<Vec<_>>())
    };
    let field: Vec<Value> = r.field.generators.iter().map(rf_json).collect();
    let results = json!({
        "polynomial_invariants": poly,
        "degree_bound": degree_bound,
        "field_invariants": field,
        "field_status": r.field.status,
        "a_set": r.field.a_set.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "L": r.field.l_forms.iter().map(weight_json).collect::<Vec<_>>(),
        "index": r.index,
        "rank_checks": r.rank_checks,
    });
    let mut text = format!(
        "{} Borel: index {}, polynomial invariants up to degree {}: {}\n",
        rs.cartan_type(),
        r.index,
        degree_bound,
        if r.polynomial.constants_only { "constants only" } else { "nonconstant found" }
    );
    let mut latex = String::new();
    for (k, j) in r.field.generators.iter().enumerate() {
        let i = r.field.a_set[k] + 1;
        text.push_str(&format!("  J{} = {}\n", i, j.to_text(names)));
        latex.push_str(&format!("J_{{{i}}} &= {} \\\\\n", j.to_latex(ctx.latex_names())));
    }
    for rc in &r.rank_checks {
        text.push_str(&format!(
            "  {} rank {} (expected {}), invariant rank {:?} (expected {})\n",
            rc.flavor, rc.rank, rc.expected_rank, rc.invariant_rank, rc.expected_invariant_rank
        ));
    }
    let mut checks = vec![Check::new(
        "polynomial-invariants",
        r.polynomial.constants_only,
        format!("degree <= {degree_bound}"),
    )];
    checks.push(match r.field.status {
        FieldStatus::Trivial => Check::new("field-invariants", true, "w0 = -id: constants only"),
        FieldStatus::Verified => Check::new(
            "field-invariants",
            r.field.jacobian_rank == Some(r.index),
            format!("{} invariant J_i, Jacobian rank {:?}", r.field.generators.len(), r.field.jacobian_rank),
        ),
        FieldStatus::OutOfScope => Check::with(
            "field-invariants",
            Status::Skipped,
            format!("generators defined, oracle out of scope ({} expected)", r.index),
        ),
    });
    let ok = r.rank_checks.iter().all(|c| c.passed());
    checks.push(Check::new("rank-checks", ok, format!("{} samples", samples)));
    Ok(Section {
        results,
        checks,
        text,
        latex,
    })
}

/// Shared setup for the subcommands.
pub struct Pipeline {
    pub rs: RootSystem,
    pub sc: StructureConstants,
    pub cascade: Cascade,
    pub kt: KTable,
}

impl Pipeline {
    pub fn new(rs: RootSystem) -> Result<Self> {
        let sc = chevalley_constants(&rs)?;
        let cascade = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &cascade)?;
        Ok(Pipeline { rs, sc, cascade, kt })
    }
}

/// Cascade, k-table against the golden tables, verified invariants and the Borel
/// checks. Guarded stages are skipped, not rejected.
pub fn verify_all_section(
    p: &Pipeline,
    force: bool,
    degree_bound: u32,
    samples: usize,
    rng: &mut ChaCha8Rng,
    mode: Mode,
) -> Result<Section> {
    let mut out = Section {
        results: json!({}),
        ..Default::default()
    };
    let add = |name: &str, s: Section, out: &mut Section| {
        out.results[name] = s.results;
        out.checks.extend(s.checks.into_iter().map(|mut c| {
            c.name = format!("{name}/{}", c.name);
            c
        }));
        out.text.push_str(&s.text);
        out.latex.push_str(&s.latex);
    };
    add("cascade", cascade_section(&p.rs, &p.cascade), &mut out);
    add("ktable", ktable_section(&p.rs, &p.cascade, &p.kt, true), &mut out);
    match reduction_guard(&p.rs, force) {
        Ok(()) => {
            let (s, _) = invariants_section(&p.rs, &p.sc, &p.cascade, &p.kt, true, rng, mode)?;
            add("invariants", s, &mut out);
            match borel_section(&p.rs, degree_bound, samples, rng, mode) {
                Ok(s) => add("borel", s, &mut out),
                Err(e @ Error::GuardExceeded { .. }) => {
                    out.checks.push(Check::with("borel", Status::Skipped, e.to_string()));
                }
                Err(e) => return Err(e),
            }
        }
        Err(e) => {
            out.checks.push(Check::with("invariants", Status::Skipped, e.to_string()));
            out.checks.push(Check::with("borel", Status::Skipped, e.to_string()));
        }
    }
    Ok(out)
}
