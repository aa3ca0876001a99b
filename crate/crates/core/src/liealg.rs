//! Chevalley structure constants of `n` and the Cartan action on `b = h ⊕ n`.
//!
//! Constants are found height by height. For each positive root `γ` the
//! extraspecial pair (smallest first root in the height-lex order) gets
//! `+(p+1)`; every other pair summing to `γ` follows from the four-root
//! relation of a Chevalley basis and constants of lower height.

use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rational::{as_i64, q, Q};
use crate::rootsys::{Root, RootSystem};

pub const CONVENTION: &str = "chevalley/extraspecial-positive/height-lex";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    roots: Vec<Root>,
    /// `sum[i][j]` is the index of `roots[i] + roots[j]` when it is a positive root.
    sum: Vec<Vec<Option<usize>>>,
    /// Dense `N_{α_i, α_j}`, zero when the sum is not a root.
    table: Vec<Vec<i64>>,
}

/// One nonzero entry `[e_α, e_β] = N e_{α+β}` with `α` before `β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantEntry {
    pub alpha: Root,
    pub beta: Root,
    pub n: i64,
}

/// `p + 1` with `p` the largest integer such that `β - pα ∈ Δ ∪ {0}`.
pub fn string_magnitude(rs: &RootSystem, alpha: &Root, beta: &Root) -> i64 {
    let mut p = 0;
    let mut cur = beta.sub(alpha);
    while cur.is_zero() || rs.is_root(&cur) {
        p += 1;
        cur = cur.sub(alpha);
    }
    p + 1
}

/// Partially filled table with the sign rules of a Chevalley basis used to
/// reach constants involving negative roots.
struct Builder<'a> {
    rs: &'a RootSystem,
    table: Vec<Vec<i64>>,
}

impl Builder<'_> {
    fn norm(&self, r: &Root) -> Q {
        q(self.rs.inner_roots(r, r))
    }

    fn positive(&self, r: &Root) -> bool {
        r.0.iter().any(|&c| c > 0)
    }

    /// `N_{x,y}` for arbitrary roots, from positive constants of lower height.
    fn n(&self, x: &Root, y: &Root) -> Q {
        let z = x.add(y);
        if z.is_zero() || !self.rs.is_root(&z) {
            return Q::zero();
        }
        match (self.positive(x), self.positive(y)) {
            (true, true) => {
                let i = self.rs.root_index(x).unwrap();
                let j = self.rs.root_index(y).unwrap();
                q(self.table[i][j])
            }
            (false, false) => -self.n(&x.neg(), &y.neg()),
            (false, true) => -self.n(y, x),
            (true, false) => {
                if self.positive(&z) {
                    // (x, y, -z) sums to zero.
                    -(self.norm(&z) / self.norm(x)) * self.n(&y.neg(), &z)
                } else {
                    (self.norm(&z) / self.norm(y)) * self.n(&z.neg(), x)
                }
            }
        }
    }
}

pub fn chevalley_constants(rs: &RootSystem) -> Result<StructureConstants> {
    let roots = rs.positive_roots().to_vec();
    let np = roots.len();
    let mut sum = vec![vec![None; np]; np];
    for i in 0..np {
        for j in 0..np {
            sum[i][j] = rs.root_index(&roots[i].add(&roots[j]));
        }
    }
    // pairs[g] lists (i, j), i < j, with roots[i] + roots[j] = roots[g].
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); np];
    for i in 0..np {
        for j in i + 1..np {
            if let Some(g) = sum[i][j] {
                pairs[g].push((i, j));
            }
        }
    }
    let mut b = Builder {
        rs,
        table: vec![vec![0i64; np]; np],
    };
    // Roots are sorted by height, so every constant used below is final.
    for g in 0..np {
        let Some(&(a1, b1)) = pairs[g].first() else {
            continue;
        };
        // The extraspecial pair has the smallest first root.
        let n1 = string_magnitude(rs, &roots[a1], &roots[b1]);
        let mut values = vec![n1];
        let xi = &roots[g];
        let (x1, y1) = (&roots[a1], &roots[b1]);
        for &(i, j) in &pairs[g][1..] {
            let (al, be) = (&roots[i], &roots[j]);
            // Four-root relation on (α1, β1, -α, -β).
            let mut s = Q::zero();
            let d = y1.sub(al);
            if !d.is_zero() && rs.is_root(&d) {
                s += b.n(y1, &al.neg()) * b.n(x1, &be.neg()) / b.norm(&d);
            }
            let d = x1.sub(al);
            if !d.is_zero() && rs.is_root(&d) {
                s += b.n(&al.neg(), x1) * b.n(y1, &be.neg()) / b.norm(&d);
            }
            let v = b.norm(xi) / q(n1) * s;
            let v = as_i64(&v).ok_or_else(|| {
                Error::fatal(format!("non-integral constant N({al}, {be}) = {v}"))
            })?;
            let expect = string_magnitude(rs, al, be);
            if v.abs() != expect {
                return Err(Error::fatal(format!(
                    "|N({al}, {be})| = {} but the string gives {expect}",
                    v.abs()
                )));
            }
            values.push(v);
        }
        for (&(i, j), v) in pairs[g].iter().zip(values) {
            b.table[i][j] = v;
            b.table[j][i] = -v;
        }
    }
    Ok(StructureConstants {
        rank: rs.rank(),
        roots,
        sum,
        table: b.table,
    })
}

impl StructureConstants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// `[e_i, e_j] = c e_k` as `(c, k)` by positive-root index.
    pub fn bracket(&self, i: usize, j: usize) -> Option<(i64, usize)> {
        let k = self.sum[i][j]?;
        Some((self.table[i][j], k))
    }

    pub fn n(&self, i: usize, j: usize) -> i64 {
        self.table[i][j]
    }

    /// `α(h_j)` for the fundamental coweight basis, i.e. the `j`-th simple
    /// coordinate of `α`.
    pub fn cartan_pairing(&self, h: usize, root: usize) -> Q {
        q(self.roots[root].0[h])
    }

    /// Nonzero constants with the first root earlier in the order.
    pub fn entries(&self) -> Vec<ConstantEntry> {
        let np = self.roots.len();
        let mut out = Vec::new();
        for i in 0..np {
            for j in i + 1..np {
                if self.table[i][j] != 0 {
                    out.push(ConstantEntry {
                        alpha: self.roots[i].clone(),
                        beta: self.roots[j].clone(),
                        n: self.table[i][j],
                    });
                }
            }
        }
        out
    }

    /// SHA-256 of the canonical entry list, in hex.
    pub fn table_hash(&self) -> String {
        let mut h = Sha256::new();
        for e in self.entries() {
            h.update(format!("{:?}|{:?}|{}\n", e.alpha.0, e.beta.0, e.n).as_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Bracket of two basis vectors of `b`: indices `0..np` are `e_α`, then
    /// `h_1..h_n`. Returns a sparse vector.
    pub fn borel_bracket(&self, a: usize, b: usize) -> Vec<(usize, Q)> {
        let np = self.roots.len();
        match (a < np, b < np) {
            (true, true) => self
                .bracket(a, b)
                .filter(|(c, _)| *c != 0)
                .map(|(c, k)| vec![(k, q(c))])
                .unwrap_or_default(),
            (false, true) => {
                let c = self.cartan_pairing(a - np, b);
                if c.is_zero() {
                    vec![]
                } else {
                    vec![(b, c)]
                }
            }
            (true, false) => {
                let c = self.cartan_pairing(b - np, a);
                if c.is_zero() {
                    vec![]
                } else {
                    vec![(a, -c)]
                }
            }
            (false, false) => vec![],
        }
    }

    /// Exhaustive Jacobi identity on basis triples of `b` (or `n` only).
    pub fn jacobi_holds(&self, borel: bool) -> bool {
        let dim = self.roots.len() + if borel { self.rank } else { 0 };
        let br = |u: &[(usize, Q)], b: usize| -> Vec<(usize, Q)> {
            let mut out: Vec<(usize, Q)> = Vec::new();
            for (k, c) in u {
                for (kk, cc) in self.borel_bracket(*k, b) {
                    out.push((kk, c * cc));
                }
            }
            out
        };
        for a in 0..dim {
            for b in a + 1..dim {
                for c in b + 1..dim {
                    let mut acc = vec![Q::zero(); dim];
                    // [[a,b],c] + [[b,c],a] + [[c,a],b]
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (k, v) in br(&self.borel_bracket(x, y), z) {
                            acc[k] += v;
                        }
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
