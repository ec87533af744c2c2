//! Nefness scans and very-ampleness obstructions for polarizations on K3
//! lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, CertificateData, CertificateKind};
use super::discriminant::{discriminant_certificate, DiscriminantVerdict, QuadFamily};
use super::slice::{reduce_linear_form, SliceSolver};
use super::{enumerate_with_heights, linear_form, ClassQuery, Execution, Relation};
use crate::error::{Error, Result};
use crate::exact::{big, to_i64};
use crate::lattice::{Lattice, LatticeClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefVerdict {
    pub nef: bool,
    /// Number of (−2)-classes inspected.
    pub checked: usize,
    /// Classes `Γ` with `Γ·candidate < 0`, with that pairing.
    pub violations: Vec<(LatticeClass, i64)>,
    pub certificate: Certificate,
}

impl NefVerdict {
    pub fn witness(&self) -> Option<&LatticeClass> {
        self.violations.first().map(|(c, _)| c)
    }
}

/// Scan the (−2)-classes `Γ` with `1 ≤ Γ·ample ≤ height_max` for `Γ·candidate < 0`.
///
/// For a class of positive square on a K3 surface, nefness only has to be
/// tested against smooth rational curves, which is what this scan covers up
/// to the height bound. The verdict is always bound-limited.
pub fn nef_check(lattice: &Lattice, candidate: &LatticeClass, ample: &LatticeClass, height_max: i64) -> Result<NefVerdict> {
    let c2 = lattice.self_intersection(candidate)?;
    if !c2.is_positive() {
        return Err(Error::capability(format!(
            "candidate {candidate} has square {c2} ≤ 0; the reduction to (−2)-curves needs a positive square"
        )));
    }
    let q = ClassQuery::new(-2, ample.coords.clone(), height_max);
    let found = enumerate_with_heights(lattice, &q, Execution::Parallel)?;
    let mut violations = Vec::new();
    for hc in &found {
        let p = lattice.pair(&hc.class, candidate)?;
        if p.is_negative() {
            violations.push((hc.class.clone(), to_i64(&p, "pairing")?));
        }
    }
    Ok(NefVerdict {
        nef: violations.is_empty(),
        checked: found.len(),
        violations,
        certificate: Certificate::bound_limited(ample.coords.clone(), height_max),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectivityPartition {
    /// Classes with positive degree against the ample class.
    pub potentially_effective: Vec<LatticeClass>,
    /// Classes with `c·ample ≤ 0`, with that pairing as witness.
    pub excluded: Vec<(LatticeClass, i64)>,
}

/// Split classes by the sign of their degree against an ample class.
pub fn neg2_effective_filter(lattice: &Lattice, classes: &[LatticeClass], ample: &LatticeClass) -> Result<EffectivityPartition> {
    let mut out = EffectivityPartition { potentially_effective: Vec::new(), excluded: Vec::new() };
    for c in classes {
        let d = lattice.pair(c, ample)?;
        if d.is_positive() {
            out.potentially_effective.push(c.clone());
        } else {
            out.excluded.push((c.clone(), to_i64(&d, "degree")?));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    /// `M² = 0`, `M·F = 1`.
    IsotropicDegreeOne,
    /// `M² = 0`, `M·F = 2`.
    IsotropicDegreeTwo,
    /// `M² = −2`, `M·F = 0`.
    OrthogonalMinusTwo,
    /// `M² = −2`, `M·F = 0`, `1 ≤ M·ample ≤ height_max`.
    EffectiveOrthogonalMinusTwo,
}

impl ObstructionKind {
    pub const ALL: [ObstructionKind; 4] = [
        ObstructionKind::IsotropicDegreeOne,
        ObstructionKind::IsotropicDegreeTwo,
        ObstructionKind::OrthogonalMinusTwo,
        ObstructionKind::EffectiveOrthogonalMinusTwo,
    ];

    pub fn self_int(self) -> i64 {
        match self {
            ObstructionKind::IsotropicDegreeOne | ObstructionKind::IsotropicDegreeTwo => 0,
            _ => -2,
        }
    }

    pub fn degree(self) -> i64 {
        match self {
            ObstructionKind::IsotropicDegreeOne => 1,
            ObstructionKind::IsotropicDegreeTwo => 2,
            _ => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ObstructionKind::IsotropicDegreeOne => "M²=0, M·F=1",
            ObstructionKind::IsotropicDegreeTwo => "M²=0, M·F=2",
            ObstructionKind::OrthogonalMinusTwo => "M²=−2, M·F=0",
            ObstructionKind::EffectiveOrthogonalMinusTwo => "M²=−2, M·F=0, M effective",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCase {
    pub kind: ObstructionKind,
    pub classes: Vec<LatticeClass>,
    pub certificate: Certificate,
}

/// Search for the classes that would prevent `f` from being very ample.
///
/// The three numerical cases are decided for all integers whenever possible
/// (congruence, then discriminant elimination on rank-3 lattices, then an
/// exhaustive `F`-slice); the fourth case is the height-bounded search for
/// effective orthogonal (−2)-classes. With `height_max = 0` nothing is
/// searched and every case is reported as bound-limited.
pub fn saint_donat_obstructions(
    lattice: &Lattice,
    f: &LatticeClass,
    ample: &LatticeClass,
    height_max: i64,
) -> Result<Vec<ObstructionCase>> {
    lattice.pair(f, ample)?;
    if height_max <= 0 {
        return Ok(ObstructionKind::ALL
            .iter()
            .map(|&kind| ObstructionCase {
                kind,
                classes: Vec::new(),
                certificate: Certificate::bound_limited(ample.coords.clone(), height_max.max(0)),
            })
            .collect());
    }
    let mut out = Vec::new();
    for kind in ObstructionKind::ALL {
        let case = if kind == ObstructionKind::EffectiveOrthogonalMinusTwo {
            bounded_case(lattice, f, ample, kind, height_max)?
        } else {
            match certify_slice(lattice, &f.coords, kind.degree(), kind.self_int())? {
                Some((classes, certificate)) => ObstructionCase { kind, classes, certificate },
                None => bounded_case(lattice, f, ample, kind, height_max)?,
            }
        };
        out.push(case);
    }
    Ok(out)
}

fn bounded_case(
    lattice: &Lattice,
    f: &LatticeClass,
    ample: &LatticeClass,
    kind: ObstructionKind,
    height_max: i64,
) -> Result<ObstructionCase> {
    let q = ClassQuery::new(kind.self_int(), ample.coords.clone(), height_max)
        .with_constraint(f.coords.clone(), Relation::Equal(kind.degree()));
    let classes = enumerate_with_heights(lattice, &q, Execution::Parallel)?.into_iter().map(|h| h.class).collect();
    Ok(ObstructionCase { kind, classes, certificate: Certificate::bound_limited(ample.coords.clone(), height_max) })
}

/// Decide `{x : f·x = value, x² = self_int}` for all integers, if one of the
/// unconditional arguments applies.
pub(crate) fn certify_slice(
    lattice: &Lattice,
    f: &[i64],
    value: i64,
    self_int: i64,
) -> Result<Option<(Vec<LatticeClass>, Certificate)>> {
    let form_big = linear_form(lattice, f);
    let form: Vec<i64> = form_big.iter().map(|x| to_i64(x, "linear form")).collect::<Result<_>>()?;
    if form.iter().all(|&x| x == 0) {
        return Ok(None);
    }
    let g = form.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if value.rem_euclid(g) != 0 {
        let certificate = Certificate {
            kind: CertificateKind::Parity,
            data: CertificateData::Congruence { linear_form: form, target: value, modulus: g, residue: value.rem_euclid(g) },
        };
        return Ok(Some((Vec::new(), certificate)));
    }

    if lattice.rank() == 3 {
        if let Some(param) = eliminate(lattice, &form, value, self_int)? {
            if let DiscriminantVerdict::Certified(w) = discriminant_certificate(param.family)? {
                let mut classes = Vec::new();
                for &(a, b) in &w.solutions {
                    classes.push(lattice.class(param.point(a, b)?)?);
                }
                for c in &classes {
                    debug_assert_eq!(lattice.self_intersection(c)?, big(self_int));
                }
                classes.sort();
                let certificate = Certificate { kind: CertificateKind::Discriminant, data: CertificateData::Discriminant(w) };
                return Ok(Some((classes, certificate)));
            }
        }
    }

    match SliceSolver::new(lattice, &form_big) {
        Ok(solver) => {
            let mut classes = solver
                .solve(&big(value), &big(self_int))
                .into_iter()
                .map(|x| {
                    let coords = x.iter().map(|v| to_i64(v, "class coordinate")).collect::<Result<Vec<_>>>()?;
                    lattice.class(coords)
                })
                .collect::<Result<Vec<_>>>()?;
            classes.sort();
            let certificate = Certificate {
                kind: CertificateKind::EnumerationExhaustive,
                data: CertificateData::Slice { linear_form: form, value, self_int },
            };
            Ok(Some((classes, certificate)))
        }
        Err(Error::Capability(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Affine parametrization `x = p + a·u + b·w` of a rank-3 slice together with
/// the quadratic family `x² − self_int = 0` in `(a, b)`.
struct Parametrization {
    p: Vec<BigInt>,
    u: Vec<BigInt>,
    w: Vec<BigInt>,
    family: QuadFamily,
}

impl Parametrization {
    fn point(&self, a: i64, b: i64) -> Result<Vec<i64>> {
        (0..self.p.len())
            .map(|i| to_i64(&(&self.p[i] + big(a) * &self.u[i] + big(b) * &self.w[i]), "class coordinate"))
            .collect()
    }
}

fn eliminate(lattice: &Lattice, form: &[i64], value: i64, self_int: i64) -> Result<Option<Parametrization>> {
    let n = form.len();
    let g = form.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let reduced: Vec<i64> = form.iter().map(|x| x / g).collect();
    let k = value / g;
    let unit = |i: usize| -> Vec<BigInt> { (0..n).map(|j| big(i64::from(i == j))).collect() };

    let (p, u, w) = if let Some(j) = (0..n).rev().find(|&j| reduced[j].abs() == 1) {
        // x_j = s·(k − Σ_{i≠j} v_i x_i) with s = v_j = ±1.
        let s = reduced[j];
        let free: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let mut p = vec![BigInt::zero(); n];
        p[j] = big(s * k);
        let dir = |i: usize| {
            let mut d = unit(i);
            d[j] = big(-s * reduced[i]);
            d
        };
        (p, dir(free[0]), dir(free[1]))
    } else {
        let form_big: Vec<BigInt> = reduced.iter().map(|&x| big(x)).collect();
        let (_, cols) = reduce_linear_form(&form_big)?;
        let p = cols[0].iter().map(|c| c * big(k)).collect();
        (p, cols[1].clone(), cols[2].clone())
    };

    let gram = lattice.gram();
    let dot = |x: &[BigInt], y: &[BigInt]| -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &x[i] * big(gram[i][j]) * &y[j];
            }
        }
        acc
    };
    let (uu, ww) = (dot(&u, &u), dot(&w, &w));
    let (p, u, w) = if uu.is_zero() && !ww.is_zero() { (p, w, u) } else { (p, u, w) };
    let mut coeffs = [
        dot(&u, &u),
        big(2) * dot(&p, &u),
        big(2) * dot(&u, &w),
        dot(&p, &p) - big(self_int),
        big(2) * dot(&p, &w),
        dot(&w, &w),
    ];
    if coeffs[0].is_zero() {
        return Ok(None);
    }
    let content = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if coeffs[0].is_negative() { big(-1) } else { big(1) };
    for c in coeffs.iter_mut() {
        *c = &*c / &content * &sign;
    }
    let c: Vec<i64> = coeffs.iter().map(|x| to_i64(x, "family coefficient")).collect::<Result<_>>()?;
    let family = QuadFamily::new(c[0], c[1], c[2], c[3], c[4], c[5]);
    Ok(Some(Parametrization { p, u, w, family }))
}
