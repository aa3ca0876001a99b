//! Root systems of the simple types in Bourbaki numbering.
//!
//! All coordinates are over the simple-root basis. The epsilon presentation of
//! the classical types exists only for display and for comparing against
//! tables written in that basis.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn letter(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, TypeLabel::A | TypeLabel::B | TypeLabel::C | TypeLabel::D)
    }
}

/// An admissible `(type, rank)` pair such as `G2` or `D5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub label: TypeLabel,
    pub rank: usize,
}

impl CartanType {
    pub fn new(label: TypeLabel, rank: usize) -> Result<Self> {
        let ok = match label {
            TypeLabel::A => rank >= 1,
            TypeLabel::B => rank >= 2,
            TypeLabel::C => rank >= 3,
            TypeLabel::D => rank >= 4,
            TypeLabel::E => (6..=8).contains(&rank),
            TypeLabel::F => rank == 4,
            TypeLabel::G => rank == 2,
        };
        if ok {
            Ok(CartanType { label, rank })
        } else {
            Err(Error::InadmissibleType(format!("{}{}", label.letter(), rank)))
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InadmissibleType(s.to_string());
        let mut chars = s.chars();
        let label = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => TypeLabel::A,
            Some('B') => TypeLabel::B,
            Some('C') => TypeLabel::C,
            Some('D') => TypeLabel::D,
            Some('E') => TypeLabel::E,
            Some('F') => TypeLabel::F,
            Some('G') => TypeLabel::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(label, rank)
    }
}

/// A root: integer coordinates over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.iter().map(|&a| q(a)).collect())
    }

    /// `true` if every coordinate is at least the other's.
    pub fn dominates(&self, other: &Root) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.0.iter().map(|&c| q(c)), "a")
    }
}

/// A weight: rational coordinates over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![Q::zero(); rank])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    /// The weight as a root, when all coordinates are integers.
    pub fn to_root(&self) -> Option<Root> {
        self.0
            .iter()
            .map(crate::rational::as_i64)
            .collect::<Option<Vec<_>>>()
            .map(Root)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.0.iter().cloned(), "a")
    }
}

pub(crate) fn write_combination(
    f: &mut fmt::Formatter<'_>,
    coeffs: impl Iterator<Item = Q>,
    symbol: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        if a != q(1) {
            write!(f, "{}", a)?;
        }
        write!(f, "{}{}", symbol, i + 1)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ctype: CartanType,
    /// `cartan[i][j] = <α_i^∨, α_j>`.
    cartan: Vec<Vec<i64>>,
    /// Invariant form on simple roots, short roots of squared length 2.
    gram: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    index: HashMap<Root, usize>,
    fundamental_weights: Vec<Weight>,
    w0_fundamental: Vec<Weight>,
}

pub fn build_root_system(label: TypeLabel, rank: usize) -> Result<RootSystem> {
    RootSystem::new(CartanType::new(label, rank)?)
}

fn gram_matrix(ct: CartanType) -> Vec<Vec<i64>> {
    let n = ct.rank;
    let mut g = vec![vec![0i64; n]; n];
    let edge = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match ct.label {
        TypeLabel::A => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                edge(&mut g, i, i + 1, -1);
            }
        }
        TypeLabel::B => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 2 } else { 4 };
            }
            for i in 0..n - 1 {
                edge(&mut g, i, i + 1, -2);
            }
        }
        TypeLabel::C => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 4 } else { 2 };
            }
            for i in 0..n - 1 {
                edge(&mut g, i, i + 1, if i + 2 == n { -2 } else { -1 });
            }
        }
        TypeLabel::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                edge(&mut g, i, i + 1, -1);
            }
            edge(&mut g, n - 3, n - 1, -1);
        }
        TypeLabel::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            // 1-3-4-5-6-7-8 with 2 attached to 4 (1-based).
            edge(&mut g, 0, 2, -1);
            edge(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                edge(&mut g, i, i + 1, -1);
            }
        }
        TypeLabel::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            edge(&mut g, 0, 1, -2);
            edge(&mut g, 1, 2, -2);
            edge(&mut g, 2, 3, -1);
        }
        TypeLabel::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            edge(&mut g, 0, 1, -3);
        }
    }
    g
}

impl RootSystem {
    pub fn new(ctype: CartanType) -> Result<RootSystem> {
        let gram = gram_matrix(ctype);
        let n = ctype.rank;
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let mut positive_roots: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
        let mut index: HashMap<Root, usize> = positive_roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let mut layer: Vec<Root> = positive_roots.clone();
        while !layer.is_empty() {
            let mut next: Vec<Root> = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let alpha = Root::simple(n, i);
                    // Length of the α_i-string below β.
                    let mut p = 0i64;
                    let mut down = beta.sub(&alpha);
                    while index.contains_key(&down) {
                        p += 1;
                        down = down.sub(&alpha);
                    }
                    let pairing: i64 = (0..n).map(|k| beta.0[k] * cartan[i][k]).sum();
                    if p - pairing > 0 {
                        let up = beta.add(&alpha);
                        if !index.contains_key(&up) {
                            index.insert(up.clone(), usize::MAX);
                            next.push(up);
                        }
                    }
                }
            }
            positive_roots.extend(next.iter().cloned());
            layer = next;
        }
        positive_roots.sort_by(|a, b| (a.height(), &a.0).cmp(&(b.height(), &b.0)));
        let index = positive_roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();

        // ϖ_i solves Σ_k c_k cartan[j][k] = δ_ij.
        let cm = crate::linalg::RatMatrix::from_i64(&cartan);
        let mut fundamental_weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![Q::zero(); n];
            e[i] = q(1);
            match cm.solve(&e) {
                crate::linalg::Solution::Unique(c) => fundamental_weights.push(Weight(c)),
                _ => return Err(Error::fatal("singular Cartan matrix")),
            }
        }

        let mut rs = RootSystem {
            ctype,
            cartan,
            gram,
            positive_roots,
            index,
            fundamental_weights,
            w0_fundamental: Vec::new(),
        };
        rs.w0_fundamental = rs
            .fundamental_weights
            .iter()
            .map(|w| rs.antidominant_representative(w))
            .collect();
        Ok(rs)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Positive roots ordered by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    pub fn fundamental_weight(&self, i: usize) -> &Weight {
        &self.fundamental_weights[i]
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_positive_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    /// Membership in the full root system `Δ = Δ^+ ∪ -Δ^+`.
    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&r.neg())
    }

    /// `(λ, μ)` in the invariant form with short roots of squared length 2.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.gram[i][j] != 0 && !b.0[j].is_zero() {
                    s += &a.0[i] * &b.0[j] * q(self.gram[i][j]);
                }
            }
        }
        s
    }

    pub fn inner_roots(&self, a: &Root, b: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += a.0[i] * b.0[j] * self.gram[i][j];
            }
        }
        s
    }

    /// `<λ, α_j^∨>`.
    pub fn coroot_pairing(&self, lambda: &Weight, j: usize) -> Q {
        lambda
            .0
            .iter()
            .zip(&self.cartan[j])
            .filter(|(_, &a)| a != 0)
            .map(|(c, &a)| c * q(a))
            .sum()
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        (0..self.rank()).all(|j| !self.coroot_pairing(lambda, j).is_negative())
    }

    pub fn is_antidominant(&self, lambda: &Weight) -> bool {
        (0..self.rank()).all(|j| !self.coroot_pairing(lambda, j).is_positive())
    }

    pub fn reflect(&self, lambda: &Weight, i: usize) -> Weight {
        let p = self.coroot_pairing(lambda, i);
        let mut out = lambda.clone();
        out.0[i] -= p;
        out
    }

    /// The antidominant element of the Weyl orbit of `λ`, obtained by applying
    /// simple reflections while some coroot pairing is positive.
    pub fn antidominant_representative(&self, lambda: &Weight) -> Weight {
        let mut cur = lambda.clone();
        loop {
            let Some(i) = (0..self.rank()).find(|&i| self.coroot_pairing(&cur, i).is_positive())
            else {
                return cur;
            };
            cur = self.reflect(&cur, i);
        }
    }

    /// Images `w0(ϖ_i)`; for dominant weights `w0` gives the antidominant
    /// representative of the orbit.
    pub fn w0_fundamental(&self) -> &[Weight] {
        &self.w0_fundamental
    }

    /// `w0(λ)`, extended linearly from the fundamental weights.
    pub fn w0_image(&self, lambda: &Weight) -> Weight {
        let images = &self.w0_fundamental;
        let mut out = Weight::zero(self.rank());
        for (j, img) in images.iter().enumerate() {
            let c = self.coroot_pairing(lambda, j);
            if !c.is_zero() {
                out = out.add(&img.scale(&c));
            }
        }
        out
    }

    /// The permutation `φ` (0-based) with `w0(ϖ_i) = -ϖ_{φ(i)}`.
    pub fn diagram_automorphism_phi(&self) -> Result<Vec<usize>> {
        self.w0_fundamental
            .iter()
            .enumerate()
            .map(|(i, img)| {
                let neg = img.neg();
                self.fundamental_weights
                    .iter()
                    .position(|w| *w == neg)
                    .ok_or_else(|| {
                        Error::fatal(format!(
                            "w0(ϖ{}) = {} is not a negated fundamental weight",
                            i + 1,
                            img
                        ))
                    })
            })
            .collect()
    }

    /// `true` iff `w0 = -id`.
    pub fn w0_is_minus_identity(&self) -> bool {
        self.diagram_automorphism_phi()
            .map(|p| p.iter().enumerate().all(|(i, &j)| i == j))
            .unwrap_or(false)
    }

    pub fn highest_root(&self) -> Result<Root> {
        highest_root_of(&self.positive_roots)
    }

    /// Epsilon presentation (Bourbaki) of a simple-root vector for the
    /// classical types; `None` otherwise.
    pub fn epsilon_coords(&self, coords: &[Q]) -> Option<Vec<Q>> {
        let n = self.rank();
        let label = self.ctype.label;
        if !label.is_classical() {
            return None;
        }
        let dim = if label == TypeLabel::A { n + 1 } else { n };
        let mut e = vec![Q::zero(); dim];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let last = i + 1 == n;
            match (label, last) {
                (TypeLabel::B, true) => e[i] += c,
                (TypeLabel::C, true) => e[i] += c * q(2),
                (TypeLabel::D, true) => {
                    e[n - 2] += c;
                    e[n - 1] += c;
                }
                _ => {
                    e[i] += c;
                    e[i + 1] -= c;
                }
            }
        }
        Some(e)
    }

    pub fn root_epsilon(&self, r: &Root) -> Option<Vec<i64>> {
        let w = r.to_weight();
        self.epsilon_coords(&w.0)?
            .iter()
            .map(crate::rational::as_i64)
            .collect()
    }

    pub fn dim_nilpotent(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn dim_borel(&self) -> usize {
        self.positive_roots.len() + self.rank()
    }
}

/// The unique root of maximal height in an irreducible positive system,
/// checked to dominate every other root coordinatewise.
pub fn highest_root_of(roots: &[Root]) -> Result<Root> {
    let top = roots
        .iter()
        .max_by(|a, b| (a.height(), &a.0).cmp(&(b.height(), &b.0)))
        .ok_or(Error::EmptySystem)?;
    if let Some(bad) = roots.iter().find(|r| !top.dominates(r)) {
        return Err(Error::fatal(format!(
            "no highest root: {} does not dominate {} (reducible system?)",
            top, bad
        )));
    }
    Ok(top.clone())
}

/// Display helper for epsilon vectors, e.g. `e1-e2`.
pub fn format_epsilon(e: &[i64]) -> String {
    struct W<'a>(&'a [i64]);
    impl fmt::Display for W<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_combination(f, self.0.iter().map(|&c| q(c)), "e")
        }
    }
    W(e).to_string()
}
