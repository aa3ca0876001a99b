//! The Kostant cascade: take the highest root of each irreducible component,
//! delete it together with its singular roots, and recurse on what is left.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rootsys::{highest_root_of, Root, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeStep {
    pub xi: Root,
    /// Recursion depth at which `xi` was produced (0 for the highest root).
    pub level: usize,
    pub singular: Vec<Root>,
    /// Simple roots of each irreducible component of the residual system of
    /// this step's component.
    pub residual_simple_systems: Vec<Vec<Root>>,
    /// Positive roots of the residual system of this step's component.
    #[serde(skip)]
    pub residual: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cascade {
    pub xis: Vec<Root>,
    pub steps: Vec<CascadeStep>,
}

impl Cascade {
    pub fn m(&self) -> usize {
        self.xis.len()
    }

    /// Checks strong orthogonality, linear independence, the partition of
    /// `Δ^+`, `w0(ξ) = -ξ` and the parity of `dim n - m`.
    pub fn verify(&self, rs: &RootSystem) -> Result<()> {
        for (i, a) in self.xis.iter().enumerate() {
            for b in &self.xis[i + 1..] {
                if rs.is_root(&a.add(b)) || rs.is_root(&a.sub(b)) {
                    return Err(Error::fatal(format!(
                        "cascade roots {a} and {b} are not strongly orthogonal"
                    )));
                }
            }
        }
        let mat = RatMatrix::from_i64(&self.xis.iter().map(|r| r.0.clone()).collect::<Vec<_>>());
        if mat.rank() != self.m() {
            return Err(Error::fatal("cascade roots are linearly dependent"));
        }
        let mut covered: Vec<&Root> = Vec::new();
        for s in &self.steps {
            covered.push(&s.xi);
            covered.extend(s.singular.iter());
        }
        covered.sort();
        let before = covered.len();
        covered.dedup();
        if covered.len() != before || covered.len() != rs.positive_roots().len() {
            return Err(Error::fatal(
                "cascade steps do not partition the positive roots",
            ));
        }
        for xi in &self.xis {
            if rs.w0_image(&xi.to_weight()) != xi.to_weight().neg() {
                return Err(Error::fatal(format!("w0({xi}) != -{xi}")));
            }
        }
        if (rs.positive_roots().len() - self.m()) % 2 != 0 {
            return Err(Error::fatal("dim n - m is odd"));
        }
        Ok(())
    }
}

/// `{α ∈ Δ^+ : ξ - α ∈ Δ^+}`.
pub fn singular_roots(rs: &RootSystem, xi: &Root) -> Result<Vec<Root>> {
    if !rs.is_positive_root(xi) {
        return Err(Error::NotPositiveRoot(xi.0.clone()));
    }
    Ok(singular_roots_in(rs.positive_roots(), xi))
}

/// Singular roots of `xi` inside an arbitrary closed subset of positive roots.
pub fn singular_roots_in(roots: &[Root], xi: &Root) -> Vec<Root> {
    roots
        .iter()
        .filter(|a| {
            let d = xi.sub(a);
            !d.is_zero() && roots.contains(&d)
        })
        .cloned()
        .collect()
}

/// Splits a set of positive roots into irreducible components (connected
/// under non-orthogonality). Components keep the input order.
pub fn components(rs: &RootSystem, roots: &[Root]) -> Vec<Vec<Root>> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let nx = p[c];
            p[c] = r;
            c = nx;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if rs.inner_roots(&roots[i], &roots[j]) != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Root>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(roots[i].clone()),
            None => groups.push((r, vec![roots[i].clone()])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Indecomposable elements of a positive system.
pub fn simple_system(roots: &[Root]) -> Vec<Root> {
    roots
        .iter()
        .filter(|r| {
            !roots
                .iter()
                .any(|a| a != *r && roots.contains(&r.sub(a)))
        })
        .cloned()
        .collect()
}

/// Ordering of cascade roots produced at the same recursion level: lexicographic
/// descending in epsilon coordinates for the classical types, in simple-root
/// coordinates otherwise.
fn level_order(rs: &RootSystem, a: &Root, b: &Root) -> Ordering {
    match (rs.root_epsilon(a), rs.root_epsilon(b)) {
        (Some(ea), Some(eb)) => eb.cmp(&ea),
        _ => b.0.cmp(&a.0),
    }
}

pub fn kostant_cascade(rs: &RootSystem) -> Cascade {
    let mut steps: Vec<CascadeStep> = Vec::new();
    let mut level_components = components(rs, rs.positive_roots());
    let mut level = 0;
    while !level_components.is_empty() {
        let mut this_level = Vec::new();
        let mut next = Vec::new();
        for comp in &level_components {
            let xi = highest_root_of(comp).expect("components are irreducible and nonempty");
            let singular = singular_roots_in(comp, &xi);
            let residual: Vec<Root> = comp
                .iter()
                .filter(|r| **r != xi && !singular.contains(r))
                .cloned()
                .collect();
            let comps = components(rs, &residual);
            let residual_simple_systems = comps.iter().map(|c| simple_system(c)).collect();
            next.extend(comps);
            this_level.push(CascadeStep {
                xi,
                level,
                singular,
                residual_simple_systems,
                residual,
            });
        }
        this_level.sort_by(|a, b| level_order(rs, &a.xi, &b.xi));
        steps.extend(this_level);
        level_components = next;
        level += 1;
    }
    Cascade {
        xis: steps.iter().map(|s| s.xi.clone()).collect(),
        steps,
    }
}
