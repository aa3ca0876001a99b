//! Property suites that do not touch the reduction pipeline.

use kostant::cascade::kostant_cascade;
use kostant::fixtures::test_population;
use kostant::liealg::chevalley_constants;
use kostant::polyalg::{Monomial, PoissonContext, Polynomial};
use kostant::rational::q;
use kostant::rootsys::{RootSystem, Weight};
use kostant::weight_table::KTable;
use num_traits::Zero;
use proptest::prelude::*;

const CONTEXTS: [&str; 5] = ["A3", "B2", "G2", "C3", "A1"];

fn context(i: usize, borel: bool) -> PoissonContext {
    let rs = RootSystem::new(CONTEXTS[i].parse().unwrap()).unwrap();
    let sc = chevalley_constants(&rs).unwrap();
    if borel {
        PoissonContext::borel(&sc)
    } else {
        PoissonContext::nilpotent(&sc)
    }
}

fn poly(n: usize, terms: &[(Vec<u16>, i64)]) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for (e, c) in terms {
        let mut e = e.clone();
        e.resize(n, 0);
        p.add_term(Monomial(e), q(*c));
    }
    p
}

fn terms() -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u16..3, 0..9), -6i64..=6), 1..4)
}

fn system() -> impl Strategy<Value = RootSystem> {
    let types = test_population();
    (0..types.len()).prop_map(move |i| RootSystem::new(types[i]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi(i in 0..CONTEXTS.len(), borel: bool, a in terms(), b in terms(), c in terms()) {
        let ctx = context(i, borel);
        let n = ctx.nvars();
        let (f, g, h) = (poly(n, &a), poly(n, &b), poly(n, &c));
        let br = |x: &Polynomial, y: &Polynomial| ctx.bracket(x, y).unwrap();
        let j = br(&f, &br(&g, &h)).add(&br(&g, &br(&h, &f))).add(&br(&h, &br(&f, &g)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric_and_leibniz(i in 0..CONTEXTS.len(), a in terms(), b in terms(), c in terms()) {
        let ctx = context(i, false);
        let n = ctx.nvars();
        let (f, g, h) = (poly(n, &a), poly(n, &b), poly(n, &c));
        prop_assert_eq!(ctx.bracket(&f, &g).unwrap(), ctx.bracket(&g, &f).unwrap().neg());
        let lhs = ctx.bracket(&f, &g.mul(&h)).unwrap();
        let rhs = ctx.bracket(&f, &g).unwrap().mul(&h).add(&g.mul(&ctx.bracket(&f, &h).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn w0_is_an_involution(rs in system(), coeffs in prop::collection::vec(-4i64..=4, 8)) {
        let mut w = Weight::zero(rs.rank());
        for (j, c) in coeffs.iter().take(rs.rank()).enumerate() {
            w = w.add(&rs.fundamental_weight(j).scale(&q(*c)));
        }
        prop_assert_eq!(rs.w0_image(&rs.w0_image(&w)), w.clone());
        prop_assert_eq!(rs.inner(&rs.w0_image(&w), &rs.w0_image(&w)), rs.inner(&w, &w));
    }

    #[test]
    fn w0_maps_positive_to_negative(rs in system()) {
        for r in rs.positive_roots() {
            let img = rs.w0_image(&r.to_weight()).neg().to_root().unwrap();
            prop_assert!(rs.is_positive_root(&img));
        }
    }

    #[test]
    fn cascade_is_strongly_orthogonal(rs in system()) {
        let c = kostant_cascade(&rs);
        for (i, a) in c.xis.iter().enumerate() {
            for b in &c.xis[i + 1..] {
                prop_assert_eq!(rs.inner_roots(a, b), 0);
                prop_assert!(!rs.is_root(&a.add(b)));
                prop_assert!(!rs.is_root(&a.sub(b)));
            }
        }
    }

    #[test]
    fn l_is_orthogonal_to_the_cascade(rs in system()) {
        let c = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &c).unwrap();
        for (_, l) in &kt.l {
            for x in &c.xis {
                prop_assert!(rs.inner(l, &x.to_weight()).is_zero());
            }
        }
    }
}
