//! One line per acceptance criterion. Criteria 1 and 2 cannot pass as
//! stated (the printed tables contain the deviations pinned below); they are
//! reported as FAIL and the run only errors if the observed set changes.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kostant::borel::{borel_field_invariants, borel_index_check, no_polynomial_invariants_check, BorelContext, FieldStatus};
use kostant::cascade::kostant_cascade;
use kostant::fixtures::{check_against_golden, test_population};
use kostant::liealg::chevalley_constants;
use kostant::par::Mode;
use kostant::polyalg::{PoissonContext, RationalFunction};
use kostant::reduction::{
    brute_force_invariants, generic_point, invariant_set, jacobian_rank, membership_check,
    poisson_generic_rank, rng, verify_ad_invariance, Generators,
};
use kostant::rootsys::{RootSystem, TypeLabel};
use kostant::spherical::{check_s1_structure, linear_form, lowest_coefficient_p, matches_q_or_square};
use kostant::weight_table::{varpi_prime, KTable};

type Outcome = Result<String, String>;

fn sys(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap()).unwrap()
}

fn expected_m(rs: &RootSystem) -> usize {
    let n = rs.rank();
    match rs.cartan_type().label {
        TypeLabel::A => (n + 1) / 2,
        TypeLabel::B | TypeLabel::C => n,
        TypeLabel::D => 2 * (n / 2),
        TypeLabel::G => 2,
        TypeLabel::F => 4,
        TypeLabel::E => [4, 7, 8][n - 6],
    }
}

/// `(type, kind, row)` of every discrepancy of the given kinds.
fn discrepancies(kinds: &[&str]) -> BTreeSet<(String, String, Option<usize>)> {
    let mut out = BTreeSet::new();
    for ct in test_population() {
        let rs = RootSystem::new(ct).unwrap();
        let c = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &c).unwrap();
        if let Some(pc) = check_against_golden(&rs, &c, &kt) {
            for d in pc.discrepancies {
                if kinds.contains(&d.kind.as_str()) {
                    out.insert((ct.to_string(), d.kind, d.row));
                }
            }
        }
    }
    out
}

fn set(items: &[(&str, &str, Option<usize>)]) -> BTreeSet<(String, String, Option<usize>)> {
    items.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), *c)).collect()
}

fn fmt_set(s: &BTreeSet<(String, String, Option<usize>)>) -> String {
    s.iter()
        .map(|(t, k, r)| format!("{t} {k} {}", r.map_or("-".into(), |r| r.to_string())))
        .collect::<Vec<_>>()
        .join(", ")
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    if e > limit {
        Err(format!("took {e:?}, limit {limit:?}"))
    } else {
        Ok(e)
    }
}

/// Returns the criterion outcome and whether it matches the analysed state.
fn criterion_1() -> (Outcome, bool) {
    let t = Instant::now();
    for ct in test_population() {
        let rs = RootSystem::new(ct).unwrap();
        let c = kostant_cascade(&rs);
        if c.m() != expected_m(&rs) {
            return (Err(format!("{ct}: m = {}", c.m())), false);
        }
        if let Err(e) = c.verify(&rs) {
            return (Err(format!("{ct}: {e}")), false);
        }
    }
    let got = discrepancies(&["cascade", "xi"]);
    let el = within(t, Duration::from_secs(1));
    let pinned = set(&[("E7", "xi", Some(2))]);
    let analysed = got == pinned && el.is_ok();
    let out = match (got.is_empty(), el) {
        (true, Ok(e)) => Ok(format!("all cascades match, m per family ({e:?})")),
        (_, Err(e)) => Err(e),
        (false, Ok(e)) => Err(format!("printed xi not reproduced: {} ({e:?})", fmt_set(&got))),
    };
    (out, analysed)
}

fn criterion_2() -> (Outcome, bool) {
    let t = Instant::now();
    let mut types = test_population();
    types.sort();
    types.dedup();
    for ct in &types {
        let rs = RootSystem::new(*ct).unwrap();
        let c = kostant_cascade(&rs);
        let kt = match KTable::build(&rs, &c) {
            Ok(k) => k,
            Err(e) => return (Err(format!("{ct}: {e}")), false),
        };
        if !kt.row_gcds.iter().all(|g| *g == 1 || *g == 2) || kt.det_sign.abs() != 1 {
            return (Err(format!("{ct}: gcds {:?} det {}", kt.row_gcds, kt.det_sign)), false);
        }
    }
    let got = discrepancies(&["row"]);
    let el = within(t, Duration::from_secs(1));
    let intended = set(&[("E8", "row", Some(2))]);
    let pinned = set(&[
        ("D4", "row", Some(3)),
        ("D4", "row", Some(4)),
        ("D6", "row", Some(5)),
        ("D6", "row", Some(6)),
        ("E8", "row", Some(2)),
    ]);
    let analysed = got == pinned && el.is_ok();
    let out = match el {
        Err(e) => Err(e),
        Ok(e) if got == intended => Ok(format!("gcds in {{1,2}}, det ±1, only E8 row 2 differs ({e:?})")),
        Ok(e) => Err(format!("row discrepancies beyond E8 row 2: {} ({e:?})", fmt_set(&got))),
    };
    (out, analysed)
}

const CRIT3: [&str; 8] = ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"];

fn criterion_3() -> Outcome {
    let t = Instant::now();
    for s in CRIT3 {
        let rs = sys(s);
        let sc = chevalley_constants(&rs).unwrap();
        let ctx = PoissonContext::nilpotent(&sc);
        let c = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &c).unwrap();
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Parallel).map_err(|e| format!("{s}: {e}"))?;
        for (p, info) in inv.qs.iter().zip(&inv.q_info) {
            let f = RationalFunction::from_poly(p.clone());
            if !verify_ad_invariance(&f, &ctx, Generators::AllPositive, Mode::Parallel).unwrap() {
                return Err(format!("{s}: Q{} not invariant", info.index));
            }
            let vp = varpi_prime(&rs, info.index - 1);
            let w = ctx.homogeneous_weight(p).ok_or(format!("{s}: Q{} inhomogeneous", info.index))?;
            let w2: Vec<i64> = w.iter().map(|x| 2 * x).collect();
            let vpi = vp.to_root().unwrap().0;
            if w != vpi && w2 != vpi {
                return Err(format!("{s}: Q{} weight {:?}", info.index, w));
            }
        }
        let avoid: Vec<RationalFunction> = inv.zs.clone();
        let pt = generic_point(&mut rng(3), ctx.nvars(), &avoid).unwrap();
        let r = jacobian_rank(&inv.qs, &pt).unwrap();
        if r != c.m() {
            return Err(format!("{s}: Jacobian rank {r}, m = {}", c.m()));
        }
    }
    let e = within(t, Duration::from_secs(60))?;
    Ok(format!("{} algebras invariant, weights in {{varpi', varpi'/2}}, Jacobian rank m ({e:?})", CRIT3.len()))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    for s in ["A2", "A3", "A4"] {
        let rs = sys(s);
        let sc = chevalley_constants(&rs).unwrap();
        let ctx = PoissonContext::nilpotent(&sc);
        let c = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &c).unwrap();
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Parallel).unwrap();
        for i in 1..=rs.rank() {
            let p = lowest_coefficient_p(&rs, &sc, i).map_err(|e| format!("{s}: {e}"))?;
            let row = kt.phi[i - 1].min(i - 1);
            let k = kt.rows.iter().position(|&r| r == row).unwrap();
            if matches_q_or_square(&p, &inv.qs[k]).is_none() {
                return Err(format!("{s}: P{i} is not Q or Q^2 up to scalar"));
            }
        }
    }
    let e = within(t, Duration::from_secs(10))?;
    Ok(format!("P_i ~ Q_i or Q_i^2 for A2..A4 ({e:?})"))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    for (s, d) in [("A2", 4), ("A3", 3), ("B2", 4), ("G2", 3)] {
        let rs = sys(s);
        let sc = chevalley_constants(&rs).unwrap();
        let ctx = PoissonContext::nilpotent(&sc);
        let c = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &c).unwrap();
        let inv = invariant_set(&rs, &ctx, &c, &kt, Mode::Parallel).unwrap();
        let comps = brute_force_invariants(&ctx, d, Mode::Parallel).map_err(|e| e.to_string())?;
        if !membership_check(&comps, &inv.qs, &ctx).unwrap() {
            return Err(format!("{s}: brute-force invariant outside K[Q]"));
        }
    }
    let e = within(t, Duration::from_secs(120))?;
    Ok(format!("every brute-force invariant is a monomial in the Q_i ({e:?})"))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut g = rng(6);
    for s in CRIT3 {
        let rs = sys(s);
        let sc = chevalley_constants(&rs).unwrap();
        let ctx = PoissonContext::nilpotent(&sc);
        let m = kostant_cascade(&rs).m();
        for _ in 0..5 {
            let pt = generic_point(&mut g, ctx.nvars(), &[]).unwrap();
            let r = poisson_generic_rank(&ctx, &pt);
            if r != ctx.nvars() - m {
                return Err(format!("{s}: rank {r}, dim n - m = {}", ctx.nvars() - m));
            }
        }
    }
    for (s, want) in [("B2", 6), ("A2", 4), ("A3", 8)] {
        let bc = BorelContext::new(&sys(s)).unwrap();
        for _ in 0..5 {
            let pt = generic_point(&mut g, bc.ctx.nvars(), &[]).unwrap();
            let rc = borel_index_check(&bc, &pt);
            if rc.rank != want || !rc.passed() {
                return Err(format!("{s} Borel: rank {}", rc.rank));
            }
        }
    }
    let e = within(t, Duration::from_secs(60))?;
    Ok(format!("nilpotent rank dim n - m, Borel rank dim b - |A|, 5 points each ({e:?})"))
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    for s in ["A2", "B2"] {
        let bc = BorelContext::new(&sys(s)).unwrap();
        let r = no_polynomial_invariants_check(&bc.ctx, 4, Mode::Parallel).map_err(|e| e.to_string())?;
        if !r.constants_only {
            return Err(format!("{s}: nonconstant Borel invariant"));
        }
    }
    let mut g = rng(7);
    for s in ["B2", "C3", "G2"] {
        let f = borel_field_invariants(&BorelContext::new(&sys(s)).unwrap(), &mut g, Mode::Parallel).unwrap();
        if f.status != FieldStatus::Trivial || !f.generators.is_empty() {
            return Err(format!("{s}: field invariants not trivial"));
        }
    }
    for s in ["A2", "A3", "A4"] {
        let rs = sys(s);
        let want = rs.rank() - kostant_cascade(&rs).m();
        let f = borel_field_invariants(&BorelContext::new(&rs).unwrap(), &mut g, Mode::Parallel)
            .map_err(|e| format!("{s}: {e}"))?;
        if f.status != FieldStatus::Verified || f.generators.len() != want || f.jacobian_rank != Some(want) {
            return Err(format!("{s}: {} J_i, Jacobian rank {:?}", f.generators.len(), f.jacobian_rank));
        }
    }
    let e = within(t, Duration::from_secs(120))?;
    Ok(format!("constants only, [] for w0 = -id, n - m independent J_i ({e:?})"))
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for s in ["A2", "A3", "A4"] {
        let rs = sys(s);
        let sc = chevalley_constants(&rs).unwrap();
        let c = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &c).unwrap();
        let ctx = PoissonContext::borel(&sc);
        for (i, l) in &kt.l {
            let st = check_s1_structure(&rs, &sc, i + 1).map_err(|e| format!("{s} i={}: {e}", i + 1))?;
            if st.l_form != linear_form(&rs, &ctx, l) {
                return Err(format!("{s}: L{} differs from the weight table", i + 1));
            }
            count += 1;
        }
    }
    Ok(format!("S_i1 = L_i(y) S_i0 + R_i(x) for {count} indices"))
}

fn criterion_9() -> Outcome {
    // Deterministic replay of the property suites in tests/properties.rs.
    let mut g = rng(9);
    let mut count = 0;
    for s in ["A3", "B2", "G2", "C3"] {
        let rs = sys(s);
        let sc = chevalley_constants(&rs).unwrap();
        if !sc.jacobi_holds(false) || !sc.jacobi_holds(true) {
            return Err(format!("{s}: Jacobi fails on the basis"));
        }
        for ctx in [PoissonContext::nilpotent(&sc), PoissonContext::borel(&sc)] {
            for _ in 0..5 {
                let f = random_poly(&mut g, ctx.nvars());
                let h = random_poly(&mut g, ctx.nvars());
                let k = random_poly(&mut g, ctx.nvars());
                let b = |x: &_, y: &_| ctx.bracket(x, y).unwrap();
                let j = b(&f, &b(&h, &k)).add(&b(&h, &b(&k, &f))).add(&b(&k, &b(&f, &h)));
                if !j.is_zero() {
                    return Err(format!("{s}: Jacobi fails on polynomials"));
                }
                count += 1;
            }
        }
    }
    for ct in test_population() {
        let rs = RootSystem::new(ct).unwrap();
        for w in rs.fundamental_weights() {
            if rs.w0_image(&rs.w0_image(w)) != *w {
                return Err(format!("{ct}: w0 is not an involution"));
            }
        }
        let c = kostant_cascade(&rs);
        for (i, a) in c.xis.iter().enumerate() {
            for b in &c.xis[i + 1..] {
                if rs.inner_roots(a, b) != 0 || rs.is_root(&a.add(b)) || rs.is_root(&a.sub(b)) {
                    return Err(format!("{ct}: {a} and {b} not strongly orthogonal"));
                }
            }
        }
        let kt = KTable::build(&rs, &c).unwrap();
        for (i, l) in &kt.l {
            if c.xis.iter().any(|x| !num_traits::Zero::is_zero(&rs.inner(l, &x.to_weight()))) {
                return Err(format!("{ct}: L{} not orthogonal to the cascade", i + 1));
            }
        }
    }
    Ok(format!("Jacobi ({count} triples), w0 involution, strong orthogonality, L ⊥ ξ"))
}

fn random_poly(g: &mut rand_chacha::ChaCha8Rng, n: usize) -> kostant::polyalg::Polynomial {
    use rand::Rng;
    let mut p = kostant::polyalg::Polynomial::zero(n);
    for _ in 0..3 {
        let e: Vec<u16> = (0..n).map(|_| if g.gen_bool(0.3) { g.gen_range(0..3) } else { 0 }).collect();
        let c: i64 = g.gen_range(-5..=5);
        p.add_term(kostant::polyalg::Monomial(e), kostant::rational::q(c));
    }
    p
}

fn main() -> ExitCode {
    let mut ok = true;
    let mut line = |n: usize, out: Outcome, analysed: bool| {
        match &out {
            Ok(d) => println!("criterion {n}: PASS  {d}"),
            Err(d) => println!("criterion {n}: FAIL  {d}"),
        }
        ok &= analysed;
    };
    let (o, a) = criterion_1();
    line(1, o, a);
    let (o, a) = criterion_2();
    line(2, o, a);
    let o = criterion_3();
    let a = o.is_ok();
    line(3, o, a);
    for (n, f) in [(4, criterion_4 as fn() -> Outcome), (5, criterion_5), (6, criterion_6), (7, criterion_7), (8, criterion_8), (9, criterion_9)] {
        let o = f();
        let a = o.is_ok();
        line(n, o, a);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: outcome differs from the analysed state");
        ExitCode::FAILURE
    }
}
