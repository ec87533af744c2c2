//! Integral lattices given by a Gram matrix over named basis elements.
//!
//! Inputs are machine integers; every derived quantity (pairings,
//! determinants, inertia) is computed with arbitrary-precision integers or
//! rationals, so nothing here can silently overflow or round.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{big, rat_int, to_i64};

/// A rank-n integral symmetric bilinear form over named basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeLiteral", into = "LatticeLiteral")]
pub struct Lattice {
    id: String,
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
    even: bool,
}

/// Wire form of a lattice: `{"id", "basis", "gram", "even"?}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeLiteral {
    #[serde(default)]
    pub id: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub even: Option<bool>,
}

impl TryFrom<LatticeLiteral> for Lattice {
    type Error = Error;

    fn try_from(lit: LatticeLiteral) -> Result<Self> {
        let lattice = Lattice::new(lit.id, lit.basis, lit.gram)?;
        match lit.even {
            Some(true) if !lattice.even => Err(Error::input(format!(
                "lattice `{}` is flagged even but has an odd diagonal entry",
                lattice.id
            ))),
            _ => Ok(lattice),
        }
    }
}

impl From<Lattice> for LatticeLiteral {
    fn from(l: Lattice) -> Self {
        LatticeLiteral { id: l.id, basis: l.basis, gram: l.gram, even: Some(l.even) }
    }
}

/// Integer coordinates of a class in the named basis of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeClass {
    pub lattice: String,
    pub coords: Vec<i64>,
}

impl LatticeClass {
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Inertia of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// An n×n integer matrix whose columns are the new basis vectors written in
/// the old basis. Always unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    columns: Vec<Vec<i64>>,
}

impl BasisChange {
    pub fn from_columns(columns: Vec<Vec<i64>>) -> Result<Self> {
        check_square(&columns, "basis change")?;
        let det = determinant(&columns);
        if det.abs() != BigInt::one() {
            return Err(Error::input(format!(
                "basis change is not unimodular (determinant {det}); its columns span a sublattice of index {}",
                det.abs()
            )));
        }
        Ok(BasisChange { columns })
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n)
            .map(|j| (0..n).map(|i| i64::from(i == j)).collect())
            .collect();
        BasisChange { columns }
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Entry in row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.columns[j][i]
    }

    /// The inverse change, which is integral because the matrix is unimodular.
    pub fn inverse(&self) -> Result<BasisChange> {
        let n = self.rank();
        // Adjugate / determinant, with det = ±1.
        let det = determinant(&self.columns);
        let mut inv_cols = vec![vec![0i64; n]; n];
        for r in 0..n {
            for c in 0..n {
                // inverse(r, c) = (-1)^(r+c) · det(M without row c, column r) / det
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&rr| rr != c)
                    .map(|rr| (0..n).filter(|&cc| cc != r).map(|cc| self.entry(rr, cc)).collect())
                    .collect();
                let mut cof = determinant(&minor);
                if (r + c) % 2 == 1 {
                    cof = -cof;
                }
                inv_cols[c][r] = to_i64(&(cof * &det), "inverse entry")?;
            }
        }
        Ok(BasisChange { columns: inv_cols })
    }

    /// Composition `self · other` (apply `other` in the new coordinates).
    pub fn compose(&self, other: &BasisChange) -> Result<BasisChange> {
        let n = self.rank();
        let mut cols = vec![vec![0i64; n]; n];
        for (j, col) in cols.iter_mut().enumerate() {
            for (i, entry) in col.iter_mut().enumerate() {
                let s: BigInt = (0..n).map(|k| big(self.entry(i, k)) * big(other.entry(k, j))).sum();
                *entry = to_i64(&s, "composed basis entry")?;
            }
        }
        Ok(BasisChange { columns: cols })
    }
}

/// A full-rank sublattice together with its index in the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub lattice: Lattice,
    pub index: BigInt,
}

fn check_square(m: &[Vec<i64>], what: &str) -> Result<()> {
    if m.is_empty() {
        return Err(Error::input(format!("{what} must have rank at least 1")));
    }
    if m.iter().any(|row| row.len() != m.len()) {
        return Err(Error::input(format!("{what} is not square")));
    }
    Ok(())
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

impl Lattice {
    pub fn new(id: impl Into<String>, basis: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let id = id.into();
        check_square(&gram, "Gram matrix")?;
        if basis.len() != gram.len() {
            return Err(Error::input(format!(
                "lattice `{id}` names {} basis elements but its Gram matrix has rank {}",
                basis.len(),
                gram.len()
            )));
        }
        for i in 0..gram.len() {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::input(format!(
                        "Gram matrix of `{id}` is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let even = gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0);
        Ok(Lattice { id, basis, gram, even })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn class(&self, coords: Vec<i64>) -> Result<LatticeClass> {
        if coords.len() != self.rank() {
            return Err(Error::input(format!(
                "class has {} coordinates but lattice `{}` has rank {}",
                coords.len(),
                self.id,
                self.rank()
            )));
        }
        Ok(LatticeClass { lattice: self.id.clone(), coords })
    }

    /// The basis element with the given name.
    pub fn generator(&self, name: &str) -> Result<LatticeClass> {
        let i = self
            .basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::input(format!("lattice `{}` has no basis element `{name}`", self.id)))?;
        self.class((0..self.rank()).map(|j| i64::from(j == i)).collect())
    }

    pub fn zero(&self) -> LatticeClass {
        LatticeClass { lattice: self.id.clone(), coords: vec![0; self.rank()] }
    }

    fn check_member(&self, c: &LatticeClass) -> Result<()> {
        if c.coords.len() != self.rank() {
            return Err(Error::input(format!(
                "rank mismatch: class {c} has {} coordinates, lattice `{}` has rank {}",
                c.coords.len(),
                self.id,
                self.rank()
            )));
        }
        if !c.lattice.is_empty() && c.lattice != self.id {
            return Err(Error::input(format!(
                "class {c} belongs to lattice `{}`, not `{}`",
                c.lattice, self.id
            )));
        }
        Ok(())
    }

    /// `uᵀ · gram · v`.
    pub fn pair(&self, u: &LatticeClass, v: &LatticeClass) -> Result<BigInt> {
        self.check_member(u)?;
        self.check_member(v)?;
        Ok(self.pair_coords(&u.coords, &v.coords))
    }

    pub(crate) fn pair_coords(&self, u: &[i64], v: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row: BigInt = self.gram[i].iter().zip(v).map(|(&g, &vj)| big(g) * big(vj)).sum();
            acc += big(ui) * row;
        }
        acc
    }

    pub fn self_intersection(&self, c: &LatticeClass) -> Result<BigInt> {
        self.pair(c, c)
    }

    /// Integer combination `Σ kᵢ·cᵢ` of classes of this lattice.
    pub fn combine(&self, terms: &[(i64, &LatticeClass)]) -> Result<LatticeClass> {
        let mut acc = vec![BigInt::zero(); self.rank()];
        for (k, c) in terms {
            self.check_member(c)?;
            for (a, &x) in acc.iter_mut().zip(&c.coords) {
                *a += big(*k) * big(x);
            }
        }
        let coords = acc.iter().map(|a| to_i64(a, "class coordinate")).collect::<Result<_>>()?;
        self.class(coords)
    }

    /// Gram matrix of the classes `cols` (each written in this lattice's basis).
    fn transformed_gram(&self, cols: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        let n = cols.len();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = to_i64(&self.pair_coords(&cols[i], &cols[j]), "transformed Gram entry")?;
                out[i][j] = v;
                out[j][i] = v;
            }
        }
        Ok(out)
    }

    /// Lattice with Gram `Tᵀ·gram·T` in a new named basis.
    pub fn change_basis(&self, t: &BasisChange, names: Vec<String>) -> Result<Lattice> {
        if t.rank() != self.rank() {
            return Err(Error::input(format!(
                "basis change has rank {} but lattice `{}` has rank {}",
                t.rank(),
                self.id,
                self.rank()
            )));
        }
        let gram = self.transformed_gram(t.columns())?;
        Lattice::new(self.id.clone(), names, gram)
    }

    /// [`change_basis`](Self::change_basis) from raw columns; fails unless the
    /// columns form a unimodular matrix.
    pub fn change_basis_columns(&self, columns: Vec<Vec<i64>>, names: Vec<String>) -> Result<Lattice> {
        let t = BasisChange::from_columns(columns)?;
        self.change_basis(&t, names)
    }

    /// Gram matrix of the span of `columns`, which must be linearly
    /// independent, together with the index of that span.
    pub fn span(&self, id: impl Into<String>, columns: Vec<Vec<i64>>, names: Vec<String>) -> Result<Sublattice> {
        check_square(&columns, "spanning set")?;
        if columns.len() != self.rank() {
            return Err(Error::input("spanning set must have full rank"));
        }
        let det = determinant(&columns);
        if det.is_zero() {
            return Err(Error::input("spanning classes are linearly dependent"));
        }
        let gram = self.transformed_gram(&columns)?;
        Ok(Sublattice { lattice: Lattice::new(id, names, gram)?, index: det.abs() })
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gram)
    }

    /// Inertia by symmetric Gaussian elimination over ℚ.
    pub fn signature(&self) -> Signature {
        signature_of(&self.gram)
    }

    /// Arithmetic genus `1 + c²/2` of a curve class on a K3 surface.
    pub fn k3_adjunction_genus(&self, c: &LatticeClass) -> Result<BigInt> {
        let c2 = self.self_intersection(c)?;
        if c2.is_odd_int() {
            return Err(Error::input(format!(
                "class {c} has odd self-intersection {c2}; lattice `{}` is not even on it",
                self.id
            )));
        }
        Ok(BigInt::one() + c2 / 2)
    }
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        num_integer::Integer::is_odd(self)
    }
}

/// Inertia of an integer symmetric matrix.
///
/// Diagonalizes by congruence over ℚ. A zero pivot with a nonzero off-diagonal
/// entry `a_ij` is repaired by adding row/column `j` to row/column `i`, which
/// makes the new diagonal entry `a_jj + 2a_ij` (or `2a_ij` when both are 0)
/// nonzero for at least one choice of sign.
pub fn signature_of(gram: &[Vec<i64>]) -> Signature {
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| rat_int(&big(x))).collect())
        .collect();
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    while !a.is_empty() {
        let n = a.len();
        let pivot = match (0..n).find(|&i| !a[i][i].is_zero()) {
            Some(p) => Some(p),
            None => {
                // All diagonal entries vanish; find a nonzero off-diagonal one.
                let pair = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                pair.map(|(i, j)| {
                    // Row/col i += row/col j: a_ii becomes 2 a_ij (a_jj = 0).
                    for k in 0..n {
                        let v = a[j][k].clone();
                        a[i][k] += v;
                    }
                    for k in 0..n {
                        let v = a[k][j].clone();
                        a[k][i] += v;
                    }
                    i
                })
            }
        };
        let Some(p) = pivot else {
            sig.zero += n;
            break;
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        let next: Vec<Vec<BigRational>> = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &a[i][j] - &a[i][p] * &a[p][j] / &d)
                    .collect()
            })
            .collect();
        a = next;
    }
    sig
}

/// Genus `1 + (c² + c·K)/2` of a curve class on a smooth surface. A
/// non-integral value means the inputs cannot come from an actual curve.
pub fn surface_adjunction(c_self: i64, c_dot_k: i64) -> BigRational {
    BigRational::new(big(c_self) + big(c_dot_k), big(2)) + BigRational::one()
}

/// Adjunction solved for the self-intersection: `c² = 2g − 2 − c·K`.
pub fn self_intersection_for_genus(genus: i64, c_dot_k: i64) -> BigInt {
    big(2) * big(genus) - 2 - big(c_dot_k)
}
