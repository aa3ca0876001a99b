use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{parse_pq, q, to_pq, Q};

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then the first differing exponent (a larger exponent on an earlier
/// variable is larger).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over `Q` in a fixed number of variables. No zero
/// coefficient is ever stored, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Ord for Polynomial {
    /// Compares term lists from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u16>,
    pub coeff: String,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(m.0.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Q> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Q::zero))
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.last_key_value()
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// Whether every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Monomial::degree);
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check(other);
        let (a, b) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: std::collections::HashMap<Monomial, Q> =
            std::collections::HashMap::with_capacity(a.len() * b.len());
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            out.terms.insert(d, c * q(e as i64));
        }
        out
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow::pow(x.clone(), e as usize);
                }
            }
            s += t;
        }
        Ok(s)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Division by a single polynomial has a unique remainder, so a nonzero
    /// remainder is a proof of non-divisibility.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        self.check(d);
        let (lm, lc) = d.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut r = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = r.leading_term() {
            let t = m.div(&lm)?;
            let tc = c / &lc;
            r = r.sub(&d.mul_term(&t, &tc));
            quot.add_term(t, tc);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> (Polynomial, Q) {
        match self.leading_term() {
            None => (self.clone(), Q::one()),
            Some((_, c)) => {
                let c = c.clone();
                (self.scale(&c.recip()), c)
            }
        }
    }

    /// Rescales so the leading coefficient is `+1`.
    pub fn normalize_sign_and_scale(&self) -> Polynomial {
        self.monic().0
    }

    /// `Some(c)` with `self = c · other`.
    pub fn scalar_multiple_of(&self, other: &Polynomial) -> Option<Q> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.len() != other.len() {
            return None;
        }
        let (m, c) = self.leading_term()?;
        let c = c / other.terms.get(m)?;
        (other.scale(&c) == *self).then_some(c)
    }

    /// Replaces every variable `x_i` by `images[i]` (over the same ring).
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        let n = images.first().map_or(self.nvars, |p| p.nvars);
        let mut cache: BTreeMap<(usize, u16), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(n);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let p = cache
                        .entry((i, e))
                        .or_insert_with(|| images[i].pow(e as u32))
                        .clone();
                    t = t.mul(&p);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Canonical record list, leading term first.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRecord {
                exponents: m.0.clone(),
                coeff: to_pq(c),
            })
            .collect()
    }

    pub fn from_records(nvars: usize, recs: &[TermRecord]) -> Result<Polynomial> {
        let mut p = Polynomial::zero(nvars);
        for r in recs {
            if r.exponents.len() != nvars {
                return Err(Error::VariableMismatch {
                    expected: nvars,
                    got: r.exponents.len(),
                });
            }
            let c = parse_pq(&r.coeff)
                .ok_or_else(|| Error::InvalidArgument(format!("bad coefficient {}", r.coeff)))?;
            p.add_term(Monomial(r.exponents.clone()), c);
        }
        Ok(p)
    }

    /// Human-readable form with the given variable names, leading term first.
    pub fn to_text(&self, names: &[String]) -> String {
        self.render(names, false)
    }

    pub fn to_latex(&self, names: &[String]) -> String {
        self.render(names, true)
    }

    fn render(&self, names: &[String], latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = &names[i];
                factors.push(match (e, latex) {
                    (1, _) => base.clone(),
                    (_, true) => format!("{base}^{{{e}}}"),
                    (_, false) => format!("{base}^{e}"),
                });
            }
            let coeff = if latex && !a.is_integer() {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            } else {
                a.to_string()
            };
            if factors.is_empty() {
                s.push_str(&coeff);
            } else {
                if !a.is_one() {
                    s.push_str(&coeff);
                    s.push_str(if latex { " " } else { "*" });
                }
                s.push_str(&factors.join(if latex { " " } else { "*" }));
            }
        }
        s
    }

    /// Default names `x1..xn`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text(&Polynomial::default_names(self.nvars)))
    }
}
