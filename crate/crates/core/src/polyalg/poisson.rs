use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::StructureConstants;
use crate::rational::{q, Q};
use crate::rootsys::Root;

use super::polynomial::{Monomial, Polynomial};
use super::ratfun::RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Nilpotent,
    Borel,
    Custom,
}

/// A linear Poisson structure: `{x_i, x_j} = c x_k` or zero.
#[derive(Clone, Debug)]
pub struct PoissonContext {
    flavor: Flavor,
    names: Vec<String>,
    latex: Vec<String>,
    weights: Vec<Vec<i64>>,
    table: Vec<Vec<Option<(Q, usize)>>>,
    roots: usize,
}

fn root_name(r: &Root) -> String {
    format!("e[{r}]")
}

fn root_latex(r: &Root) -> String {
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
    format!("e_{{{s}}}")
}

impl PoissonContext {
    /// `S(n)` with variables `e_α` in the order of positive roots.
    pub fn nilpotent(sc: &StructureConstants) -> Self {
        let np = sc.roots().len();
        let mut table = vec![vec![None; np]; np];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if let Some((c, k)) = sc.bracket(i, j) {
                    if c != 0 {
                        *slot = Some((q(c), k));
                    }
                }
            }
        }
        PoissonContext {
            flavor: Flavor::Nilpotent,
            names: sc.roots().iter().map(root_name).collect(),
            latex: sc.roots().iter().map(root_latex).collect(),
            weights: sc.roots().iter().map(|r| r.0.clone()).collect(),
            table,
            roots: np,
        }
    }

    /// `S(b)`: the `e_α` followed by `h_1..h_n`.
    pub fn borel(sc: &StructureConstants) -> Self {
        let np = sc.roots().len();
        let n = sc.rank();
        let dim = np + n;
        let mut table = vec![vec![None; dim]; dim];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = sc
                    .borel_bracket(i, j)
                    .into_iter()
                    .next()
                    .map(|(k, c)| (c, k));
            }
        }
        let mut names: Vec<String> = sc.roots().iter().map(root_name).collect();
        names.extend((1..=n).map(|j| format!("h{j}")));
        let mut latex: Vec<String> = sc.roots().iter().map(root_latex).collect();
        latex.extend((1..=n).map(|j| format!("h_{{{j}}}")));
        let mut weights: Vec<Vec<i64>> = sc.roots().iter().map(|r| r.0.clone()).collect();
        weights.extend((0..n).map(|_| vec![0; n]));
        PoissonContext {
            flavor: Flavor::Borel,
            names,
            latex,
            weights,
            table,
            roots: np,
        }
    }

    /// An arbitrary linear bracket given by `(i, j, c, k)` meaning
    /// `{x_i, x_j} = c x_k`, with `{x_j, x_i}` filled in by antisymmetry.
    pub fn custom(names: Vec<String>, brackets: &[(usize, usize, Q, usize)]) -> Result<Self> {
        let n = names.len();
        let mut table = vec![vec![None; n]; n];
        for (i, j, c, k) in brackets {
            if *i >= n || *j >= n || *k >= n || i == j {
                return Err(Error::InvalidArgument(format!("bad bracket ({i}, {j})")));
            }
            table[*i][*j] = Some((c.clone(), *k));
            table[*j][*i] = Some((-c, *k));
        }
        Ok(PoissonContext {
            flavor: Flavor::Custom,
            latex: names.clone(),
            weights: vec![Vec::new(); n],
            names,
            table,
            roots: n,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Number of root-vector variables (all of them outside the Borel case).
    pub fn root_vars(&self) -> usize {
        self.roots
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn latex_names(&self) -> &[String] {
        &self.latex
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn bracket_vars(&self, i: usize, j: usize) -> Option<&(Q, usize)> {
        self.table[i][j].as_ref()
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableMismatch {
                expected: self.nvars(),
                got: p.nvars(),
            });
        }
        Ok(())
    }

    /// `{f, g} = Σ ∂_i f ∂_j g {x_i, x_j}`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let n = self.nvars();
        let sf = f.support();
        let sg = g.support();
        let df: Vec<(usize, Polynomial)> = sf.iter().map(|&i| (i, f.derivative(i))).collect();
        let dg: Vec<(usize, Polynomial)> = sg.iter().map(|&j| (j, g.derivative(j))).collect();
        let mut out = Polynomial::zero(n);
        for (i, fi) in &df {
            // Collect the coefficient of each x_k first to save products.
            let mut by_k: Vec<Option<Polynomial>> = vec![None; n];
            for (j, gj) in &dg {
                if let Some((c, k)) = &self.table[*i][*j] {
                    let t = gj.scale(c);
                    by_k[*k] = Some(match by_k[*k].take() {
                        None => t,
                        Some(acc) => acc.add(&t),
                    });
                }
            }
            for (k, acc) in by_k.into_iter().enumerate() {
                if let Some(acc) = acc {
                    if acc.is_zero() {
                        continue;
                    }
                    out = out.add(&fi.mul(&acc).mul_term(&Monomial::var(n, k), &q(1)));
                }
            }
        }
        Ok(out)
    }

    /// Quotient-rule bracket of rational functions. With `f = N/Π F^e` and
    /// `g = M/Π G^h` it expands `{N,M}`, `{F,M}`, `{N,G}` and `{F,G}`.
    pub fn bracket_rf(&self, f: &RationalFunction, g: &RationalFunction) -> Result<RationalFunction> {
        let n = self.nvars();
        let base = |p: &Polynomial| RationalFunction::from_poly(p.clone());
        let nm = f.numerator();
        let mm = g.numerator();
        let df = f.denominator_factors();
        let dg = g.denominator_factors();
        let mut out = base(&self.bracket(nm, mm)?);
        for (fk, e) in df {
            let t = self.bracket(fk, mm)?.mul(nm).scale(&q(-(*e as i64)));
            out = out.add(&base(&t).div_poly(fk, 1)?);
        }
        for (gl, h) in dg {
            let t = self.bracket(nm, gl)?.mul(mm).scale(&q(-(*h as i64)));
            out = out.add(&base(&t).div_poly(gl, 1)?);
        }
        if !df.is_empty() && !dg.is_empty() {
            let nmm = nm.mul(mm);
            for (fk, e) in df {
                for (gl, h) in dg {
                    let b = self.bracket(fk, gl)?;
                    if b.is_zero() {
                        continue;
                    }
                    let t = b.mul(&nmm).scale(&q((*e as i64) * (*h as i64)));
                    out = out.add(&base(&t).div_poly(fk, 1)?.div_poly(gl, 1)?);
                }
            }
        }
        let den = RationalFunction::new(Polynomial::one(n), df.iter().chain(dg).cloned().collect())?;
        Ok(out.mul(&den))
    }

    /// Weight of a monomial: the sum of its variables' roots.
    pub fn monomial_weight(&self, m: &Monomial) -> Vec<i64> {
        let r = self.weights.first().map_or(0, |w| w.len());
        let mut w = vec![0; r];
        for (i, &e) in m.0.iter().enumerate() {
            for (acc, c) in w.iter_mut().zip(&self.weights[i]) {
                *acc += e as i64 * c;
            }
        }
        w
    }

    /// The common weight of all terms, if there is one.
    pub fn homogeneous_weight(&self, p: &Polynomial) -> Option<Vec<i64>> {
        let mut it = p.terms().map(|(m, _)| self.monomial_weight(m));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Whether `{x_i, f} = 0` for every variable `x_i` in `idx`.
    pub fn is_central_for(&self, f: &Polynomial, idx: &[usize]) -> Result<bool> {
        for &i in idx {
            if !self.bracket(&self.var(i), f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The bracket matrix `({x_i, x_j})(p)` at a point.
    pub fn matrix_at(&self, point: &[Q]) -> Vec<Vec<Q>> {
        let n = self.nvars();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match &self.table[i][j] {
                        Some((c, k)) => c * &point[*k],
                        None => Q::zero(),
                    })
                    .collect()
            })
            .collect()
    }
}
