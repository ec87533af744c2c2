//! Exact enumeration of `{x ∈ ℤⁿ : v·x = t, x² = s}` when the orthogonal
//! complement of the linear form is negative definite.
//!
//! The affine slice is parametrized as `x = U·(t/g, y)` with `U` unimodular
//! and `vᵀU = (g, 0, …, 0)`. On the free coordinates `y` the condition
//! `x² = s` becomes `(y − m)ᵀ B (y − m) = R` for a positive-definite `B`,
//! which is solved by Fincke–Pohst descent over the LDLᵀ factorization of
//! `B` with exact integer windows at every level.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, integers_within, rat_int};
use crate::lattice::Lattice;

pub(crate) struct SliceSolver {
    /// Columns of `U`; `x = Σ y_j · unimodular[j]`.
    unimodular: Vec<Vec<BigInt>>,
    gcd: BigInt,
    g00: BigRational,
    /// Unit lower-triangular factor of `B`, row-major.
    l: Vec<Vec<BigRational>>,
    d: Vec<BigRational>,
    /// `B⁻¹ b` where `b = G'[1.., 0]`.
    binv_b: Vec<BigRational>,
    /// `bᵀ B⁻¹ b`.
    b_binv_b: BigRational,
}

impl SliceSolver {
    /// Prepare the solver for the linear form `x ↦ form·x` on `lattice`.
    pub(crate) fn new(lattice: &Lattice, form: &[BigInt]) -> Result<Self> {
        let n = lattice.rank();
        debug_assert_eq!(form.len(), n);
        let (gcd, unimodular) = reduce_linear_form(form)?;

        let gram: Vec<Vec<BigInt>> = lattice.gram().iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect();
        let pair = |u: &[BigInt], v: &[BigInt]| -> BigInt {
            let mut acc = BigInt::zero();
            for i in 0..n {
                if u[i].is_zero() {
                    continue;
                }
                let row: BigInt = (0..n).map(|j| &gram[i][j] * &v[j]).sum();
                acc += &u[i] * row;
            }
            acc
        };
        let k = n - 1;
        let g00 = rat_int(&pair(&unimodular[0], &unimodular[0]));
        let b: Vec<BigRational> = (1..n).map(|j| rat_int(&pair(&unimodular[j], &unimodular[0]))).collect();
        // B = −(kernel block of UᵀGU)
        let bmat: Vec<Vec<BigRational>> = (1..n)
            .map(|i| (1..n).map(|j| -rat_int(&pair(&unimodular[i], &unimodular[j]))).collect())
            .collect();

        let (l, d) = ldl(&bmat).ok_or_else(|| {
            Error::capability(
                "the complement of the height class is not negative definite; slices are not finite (lattice signature must be (1, n−1))",
            )
        })?;

        // Solve B z = b via L, D, Lᵀ.
        let mut y = vec![BigRational::zero(); k];
        for i in 0..k {
            let mut v = b[i].clone();
            for j in 0..i {
                v -= &l[i][j] * &y[j];
            }
            y[i] = v;
        }
        for i in 0..k {
            y[i] = &y[i] / &d[i];
        }
        let mut z = vec![BigRational::zero(); k];
        for i in (0..k).rev() {
            let mut v = y[i].clone();
            for j in i + 1..k {
                v -= &l[j][i] * &z[j];
            }
            z[i] = v;
        }
        let b_binv_b = b.iter().zip(&z).map(|(x, y)| x * y).sum();
        Ok(SliceSolver { unimodular, gcd, g00, l, d, binv_b: z, b_binv_b })
    }

    /// All `x` with `form·x = value` and `x² = self_int`, as coordinate vectors.
    pub(crate) fn solve(&self, value: &BigInt, self_int: &BigInt) -> Vec<Vec<BigInt>> {
        let (y0, rem) = value.div_rem(&self.gcd);
        if !rem.is_zero() {
            return Vec::new();
        }
        let y0r = rat_int(&y0);
        let y0sq = &y0r * &y0r;
        let radius = &self.g00 * &y0sq - rat_int(self_int) + &y0sq * &self.b_binv_b;
        if radius.is_negative() {
            return Vec::new();
        }
        let center: Vec<BigRational> = self.binv_b.iter().map(|c| c * &y0r).collect();
        let k = self.d.len();
        let mut free = vec![BigInt::zero(); k];
        let mut out = Vec::new();
        if k == 0 {
            if radius.is_zero() {
                out.push(self.assemble(&y0, &free));
            }
            return out;
        }
        self.descend(k - 1, &radius, &center, &mut free, &y0, &mut out);
        out
    }

    fn descend(
        &self,
        level: usize,
        remaining: &BigRational,
        center: &[BigRational],
        free: &mut [BigInt],
        y0: &BigInt,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        // Shifted center for this coordinate given the deeper ones.
        let mut c = center[level].clone();
        for j in level + 1..free.len() {
            c -= &self.l[j][level] * (rat_int(&free[j]) - &center[j]);
        }
        let window = remaining / &self.d[level];
        for y in integers_within(&c, &window) {
            let dev = rat_int(&y) - &c;
            let next = remaining - &self.d[level] * &dev * &dev;
            free[level] = y;
            if level == 0 {
                if next.is_zero() {
                    out.push(self.assemble(y0, free));
                }
            } else {
                self.descend(level - 1, &next, center, free, y0, out);
            }
        }
        free[level] = BigInt::zero();
    }

    fn assemble(&self, y0: &BigInt, free: &[BigInt]) -> Vec<BigInt> {
        let n = self.unimodular.len();
        let mut x: Vec<BigInt> = self.unimodular[0].iter().map(|u| u * y0).collect();
        for (j, f) in free.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for i in 0..n {
                x[i] += &self.unimodular[j + 1][i] * f;
            }
        }
        x
    }
}

/// Column-reduce the row vector `form` to `(g, 0, …, 0)` with `g > 0`,
/// returning `g` and the columns of the unimodular transform.
pub(crate) fn reduce_linear_form(form: &[BigInt]) -> Result<(BigInt, Vec<Vec<BigInt>>)> {
    let n = form.len();
    if form.iter().all(|x| x.is_zero()) {
        return Err(Error::input("linear form is identically zero"));
    }
    let mut w: Vec<BigInt> = form.to_vec();
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !w[i].is_zero()).collect();
        if nonzero.len() == 1 {
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| w[i].abs()).unwrap();
        for &j in &nonzero {
            if j == p {
                continue;
            }
            let q = w[j].div_floor(&w[p]);
            let step = &q * &w[p];
            w[j] -= step;
            let cp = cols[p].clone();
            for (cj, cpi) in cols[j].iter_mut().zip(&cp) {
                *cj -= &q * cpi;
            }
        }
    }
    let p = (0..n).find(|&i| !w[i].is_zero()).unwrap();
    w.swap(0, p);
    cols.swap(0, p);
    if w[0].is_negative() {
        w[0] = -&w[0];
        for c in cols[0].iter_mut() {
            *c = -&*c;
        }
    }
    Ok((w[0].clone(), cols))
}

/// LDLᵀ of a symmetric matrix; `None` unless it is positive definite.
fn ldl(b: &[Vec<BigRational>]) -> Option<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
    let k = b.len();
    let mut l = vec![vec![BigRational::zero(); k]; k];
    let mut d = vec![BigRational::zero(); k];
    for j in 0..k {
        let mut dj = b[j][j].clone();
        for m in 0..j {
            dj -= &l[j][m] * &l[j][m] * &d[m];
        }
        if !dj.is_positive() {
            return None;
        }
        l[j][j] = BigRational::one();
        for i in j + 1..k {
            let mut v = b[i][j].clone();
            for m in 0..j {
                v -= &l[i][m] * &l[j][m] * &d[m];
            }
            l[i][j] = v / &dj;
        }
        d[j] = dj;
    }
    Some((l, d))
}
