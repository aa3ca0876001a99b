use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Q;

use super::polynomial::{Polynomial, TermRecord};

/// `numerator / Π factor^exponent` with monic, pairwise distinct factors of
/// positive degree.
///
/// Cancellation only ever tries exact division of the numerator by a tracked
/// factor; there is no general gcd. Arithmetic reduces its result, while
/// [`RationalFunction::new`] keeps the factors it is given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Vec<(Polynomial, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorRecord {
    pub factor: Vec<TermRecord>,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalRecord {
    pub numerator: Vec<TermRecord>,
    pub denominator: Vec<FactorRecord>,
}

impl RationalFunction {
    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    /// `num / Π f^e` without cancellation. Zero factors are rejected.
    pub fn new(num: Polynomial, factors: Vec<(Polynomial, u32)>) -> Result<Self> {
        let mut r = Self::from_poly(num);
        for (f, e) in factors {
            if f.is_zero() {
                return Err(Error::Pole);
            }
            r.push_factor(f, e);
        }
        Ok(r)
    }

    fn push_factor(&mut self, f: Polynomial, e: u32) {
        if e == 0 {
            return;
        }
        let (f, lc) = f.monic();
        // Constants move into the numerator.
        self.num = self.num.scale(&num_traits::pow::pow(lc.recip(), e as usize));
        if f.is_constant() {
            return;
        }
        match self.den.iter_mut().find(|(g, _)| *g == f) {
            Some((_, k)) => *k += e,
            None => {
                self.den.push((f, e));
                self.den.sort_by(|a, b| a.0.cmp(&b.0));
            }
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(Polynomial, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> Polynomial {
        let mut d = Polynomial::one(self.num.nvars());
        for (f, e) in &self.den {
            d = d.mul(&f.pow(*e));
        }
        d
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Cancels tracked factors that divide the numerator exactly.
    pub fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (f, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.div_exact(f) {
                    Some(qt) => {
                        self.num = qt;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
        self
    }

    /// Brings `self` and `other` to the same denominator; returns the two
    /// numerators and the shared factor list.
    fn common(&self, other: &Self) -> (Polynomial, Polynomial, Vec<(Polynomial, u32)>) {
        let mut factors: Vec<(Polynomial, u32)> = self.den.clone();
        for (g, e) in &other.den {
            match factors.iter_mut().find(|(f, _)| f == g) {
                Some((_, k)) => *k = (*k).max(*e),
                None => factors.push((g.clone(), *e)),
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let lift = |r: &Self| {
            let mut n = r.num.clone();
            for (f, e) in &factors {
                let have = r.den.iter().find(|(g, _)| g == f).map_or(0, |x| x.1);
                if *e > have {
                    n = n.mul(&f.pow(e - have));
                }
            }
            n
        };
        (lift(self), lift(other), factors)
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b, den) = self.common(other);
        RationalFunction { num: a.add(&b), den }.reduce()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        RationalFunction {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
        .reduce()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let mut r = RationalFunction {
            num: self.num.mul(&other.num),
            den: self.den.clone(),
        };
        for (g, e) in &other.den {
            r.push_factor(g.clone(), *e);
        }
        r.reduce()
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        RationalFunction {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
        .reduce()
    }

    /// `self / p^e`, tracking `p` as a denominator factor.
    pub fn div_poly(&self, p: &Polynomial, e: u32) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Pole);
        }
        let mut r = self.clone();
        r.push_factor(p.clone(), e);
        Ok(r.reduce())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = RationalFunction {
            num: self.num.pow(e),
            den: Vec::new(),
        };
        for (f, k) in &self.den {
            r.den.push((f.clone(), k * e));
        }
        r.den.retain(|(_, k)| *k > 0);
        r
    }

    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        let mut d = Q::one();
        for (f, e) in &self.den {
            let v = f.evaluate(point)?;
            if v.is_zero() {
                return Err(Error::Pole);
            }
            d *= num_traits::pow::pow(v, *e as usize);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    /// The polynomial equal to `self`, if the denominator divides exactly.
    pub fn clear_to_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_empty() {
            return Some(self.num.clone());
        }
        if self.num.is_zero() {
            return Some(self.num.clone());
        }
        self.num.div_exact(&self.denominator())
    }

    /// `∂/∂x_i` by the quotient rule.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = RationalFunction {
            num: self.num.derivative(i),
            den: self.den.clone(),
        };
        for (f, e) in &self.den {
            let df = f.derivative(i);
            if df.is_zero() {
                continue;
            }
            let mut t = RationalFunction {
                num: self.num.mul(&df).scale(&crate::rational::q(-(*e as i64))),
                den: self.den.clone(),
            };
            t.push_factor(f.clone(), 1);
            out = RationalFunction::add(&out, &t);
        }
        out.reduce()
    }

    /// `1 / self`; the numerator becomes a tracked factor.
    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Pole);
        }
        let mut n = Polynomial::one(self.nvars());
        for (f, e) in &self.den {
            n = n.mul(&f.pow(*e));
        }
        let mut r = Self::from_poly(n);
        r.push_factor(self.num.clone(), 1);
        Ok(r.reduce())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Equality as elements of the fraction field.
    pub fn value_eq(&self, other: &Self) -> bool {
        self.num.mul(&other.denominator()) == other.num.mul(&self.denominator())
    }

    /// `Some(c)` with `self = c · other` in the fraction field.
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<Q> {
        self.num
            .mul(&other.denominator())
            .scalar_multiple_of(&other.num.mul(&self.denominator()))
    }

    /// Rescales so the numerator's leading coefficient is `+1`; returns the
    /// factor that was divided out.
    pub fn normalized(&self) -> (Self, Q) {
        let (num, c) = self.num.monic();
        (
            RationalFunction {
                num,
                den: self.den.clone(),
            },
            c,
        )
    }

    /// Substitutes `x_i ↦ image(i)` into a polynomial.
    pub fn compose<'a>(
        p: &Polynomial,
        nvars: usize,
        image: impl Fn(usize) -> &'a RationalFunction,
    ) -> RationalFunction {
        let mut powers: std::collections::BTreeMap<(usize, u16), RationalFunction> =
            std::collections::BTreeMap::new();
        let mut out = Self::zero(nvars);
        for (m, c) in p.terms() {
            let mut t = Self::from_poly(Polynomial::constant(nvars, c.clone()));
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| image(i).pow(e as u32));
                t = t.mul(pw);
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitutes `x_i ↦ image(i)` into `self`.
    pub fn compose_rf<'a>(
        &self,
        nvars: usize,
        image: impl Fn(usize) -> &'a RationalFunction + Copy,
    ) -> Result<RationalFunction> {
        let mut out = Self::compose(&self.num, nvars, image);
        for (f, e) in &self.den {
            let d = Self::compose(f, nvars, image).pow(*e);
            out = out.div(&d)?;
        }
        Ok(out)
    }

    pub fn to_record(&self) -> RationalRecord {
        RationalRecord {
            numerator: self.num.to_records(),
            denominator: self
                .den
                .iter()
                .map(|(f, e)| FactorRecord {
                    factor: f.to_records(),
                    exponent: *e,
                })
                .collect(),
        }
    }

    pub fn to_text(&self, names: &[String]) -> String {
        if self.den.is_empty() {
            return self.num.to_text(names);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, e)| {
                let base = if f.len() == 1 {
                    f.to_text(names)
                } else {
                    format!("({})", f.to_text(names))
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        format!("({}) / ({})", self.num.to_text(names), den.join("*"))
    }

    pub fn to_latex(&self, names: &[String]) -> String {
        if self.den.is_empty() {
            return self.num.to_latex(names);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, e)| {
                let base = if f.len() == 1 {
                    f.to_latex(names)
                } else {
                    format!("({})", f.to_latex(names))
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{{{e}}}")
                }
            })
            .collect();
        format!("\\frac{{{}}}{{{}}}", self.num.to_latex(names), den.join(" "))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}
