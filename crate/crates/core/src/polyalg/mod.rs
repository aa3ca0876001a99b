//! Exact sparse polynomials and rational functions over `Q` with a linear
//! Poisson bracket.

mod poisson;
mod polynomial;
mod ratfun;

pub use poisson::{Flavor, PoissonContext};
pub use polynomial::{Monomial, Polynomial, TermRecord};
pub use ratfun::{FactorRecord, RationalFunction, RationalRecord};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::liealg::chevalley_constants;
    use crate::rational::{q, qf};
    use crate::rootsys::RootSystem;

    fn ctx(s: &str, borel: bool) -> PoissonContext {
        let rs = RootSystem::new(s.parse().unwrap()).unwrap();
        let sc = chevalley_constants(&rs).unwrap();
        if borel {
            PoissonContext::borel(&sc)
        } else {
            PoissonContext::nilpotent(&sc)
        }
    }

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn arithmetic_and_order() {
        let (a, b) = (x(2, 0), x(2, 1));
        let f = a.mul(&b).sub(&Polynomial::one(2));
        assert_eq!(f.evaluate(&[q(2), q(3)]).unwrap(), q(5));
        assert_eq!(f.add(&b).sub(&b), f);
        // Graded order: x1 x2 leads, x1^2 beats x1 x2.
        assert_eq!(f.leading_term().unwrap().0, &Monomial(vec![1, 1]));
        assert!(Monomial(vec![2, 0]) > Monomial(vec![1, 1]));
        assert!(Monomial(vec![0, 2]) > Monomial(vec![1, 0]));
        let g = a.pow(2).mul(&b);
        assert_eq!(g.div_exact(&a).unwrap(), a.mul(&b));
        assert_eq!(a.div_exact(&b), None);
        let sq = a.pow(2).sub(&Polynomial::one(2));
        let lin = a.sub(&Polynomial::one(2));
        assert_eq!(sq.div_exact(&lin).unwrap(), a.add(&Polynomial::one(2)));
    }

    #[test]
    fn records_roundtrip() {
        let f = x(3, 0).mul(&x(3, 2)).scale(&qf(-1, 2)).add(&x(3, 1));
        let recs = f.to_records();
        assert_eq!(recs[0].coeff, "-1/2");
        assert_eq!(Polynomial::from_records(3, &recs).unwrap(), f);
        let json = serde_json::to_string(&recs).unwrap();
        assert_eq!(
            json,
            r#"[{"exponents":[1,0,1],"coeff":"-1/2"},{"exponents":[0,1,0],"coeff":"1/1"}]"#
        );
    }

    #[test]
    fn rational_functions() {
        let n = 1;
        let xx = x(n, 0);
        let one = Polynomial::one(n);
        // Direct construction keeps the factor, so the removable point is a pole.
        let r = RationalFunction::new(xx.pow(2).sub(&one), vec![(xx.sub(&one), 1)]).unwrap();
        assert_eq!(r.evaluate(&[q(1)]), Err(Error::Pole));
        assert_eq!(r.evaluate(&[q(2)]).unwrap(), q(3));
        assert_eq!(r.clear_to_polynomial().unwrap(), xx.add(&one));
        // Arithmetic cancels.
        assert!(r.clone().reduce().is_polynomial());
        let two = Polynomial::var(2, 0).pow(2).mul(&Polynomial::var(2, 1));
        let t = RationalFunction::from_poly(two).div_poly(&Polynomial::var(2, 0), 1).unwrap();
        assert_eq!(t.clear_to_polynomial().unwrap(), Polynomial::var(2, 0).mul(&Polynomial::var(2, 1)));
        let u = RationalFunction::from_poly(Polynomial::var(2, 0))
            .div_poly(&Polynomial::var(2, 1), 1)
            .unwrap();
        assert_eq!(u.clear_to_polynomial(), None);
        let back = u.mul_poly(&Polynomial::var(2, 1));
        assert_eq!(back, RationalFunction::from_poly(Polynomial::var(2, 0)));
        // Leading coefficient goes to the numerator.
        let v = RationalFunction::from_poly(Polynomial::one(2))
            .div_poly(&Polynomial::var(2, 1).scale(&q(2)), 1)
            .unwrap();
        assert_eq!(v.numerator(), &Polynomial::constant(2, qf(1, 2)));
    }

    #[test]
    fn bracket_examples() {
        let c = ctx("A2", false);
        let n = c.nvars();
        // Variables: e[a2], e[a1], e[a1+a2].
        let (e2, e1, e12) = (c.var(0), c.var(1), c.var(2));
        let b = c.bracket(&e1, &e2).unwrap();
        assert_eq!(b, e12.scale(&q(-1)));
        assert!(c.bracket(&e1, &Polynomial::one(n)).unwrap().is_zero());
        let lhs = c.bracket(&e1.mul(&e2), &e1).unwrap();
        assert_eq!(lhs, e1.mul(&e12));
        assert_eq!(c.homogeneous_weight(&e1.mul(&e2)), Some(vec![1, 1]));
        let bad = Polynomial::var(n + 1, 0);
        assert!(matches!(c.bracket(&bad, &e1), Err(Error::VariableMismatch { .. })));
        // Borel: {h1, e[a1]} = e[a1].
        let cb = ctx("A2", true);
        assert_eq!(cb.bracket(&cb.var(3), &cb.var(1)).unwrap(), cb.var(1));
        assert!(cb.bracket(&cb.var(4), &cb.var(1)).unwrap().is_zero());
    }

    #[test]
    fn rational_bracket_matches_leibniz() {
        // {1/x3, e} computed both ways in the Heisenberg algebra of B2's n.
        let c = ctx("B2", false);
        let n = c.nvars();
        let z = c.var(n - 1);
        let inv = RationalFunction::from_poly(Polynomial::one(n)).div_poly(&z, 1).unwrap();
        for i in 0..n {
            let e = RationalFunction::from_poly(c.var(i));
            let lhs = c.bracket_rf(&inv, &e).unwrap();
            let rhs = RationalFunction::from_poly(c.bracket(&z, &c.var(i)).unwrap().neg())
                .div_poly(&z, 2)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        // The rational bracket restricted to polynomials is the polynomial one.
        let f = c.var(0).mul(&c.var(1));
        let g = c.var(1).pow(2);
        assert_eq!(
            c.bracket_rf(&f.clone().into(), &g.clone().into()).unwrap(),
            RationalFunction::from_poly(c.bracket(&f, &g).unwrap())
        );
    }

    #[test]
    fn custom_heisenberg() {
        let names = vec!["p".to_string(), "q".to_string(), "z".to_string()];
        let c = PoissonContext::custom(names, &[(0, 1, q(1), 2)]).unwrap();
        let (p, qq) = (c.var(0), c.var(1));
        assert_eq!(c.bracket(&p, &qq).unwrap(), c.var(2));
        assert!(c.bracket(&c.var(2), &p).unwrap().is_zero());
    }
}
