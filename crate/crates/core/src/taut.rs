//! Divisor classes in the λ, δᵢ, ψⱼ basis on moduli of stable pointed curves,
//! test curves coming from fibred surfaces, and intersection numbers between
//! them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dimension::RegistryDivisor;
use crate::error::{Error, Result};
use crate::exact::{big, rat, rat_int, rational_string, rational_vec};

fn boundary_count(g: u32) -> usize {
    g as usize / 2 + 1
}

/// `coeff_lambda·λ + Σ coeff_delta[i]·δᵢ + Σ coeff_psi[j]·ψⱼ` on `M̄_{g,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TautDivisor {
    pub g: u32,
    #[serde(default)]
    pub n: u32,
    #[serde(with = "rational_string")]
    pub lambda: BigRational,
    #[serde(with = "rational_vec")]
    pub delta: Vec<BigRational>,
    #[serde(default, with = "rational_vec")]
    pub psi: Vec<BigRational>,
}

impl TautDivisor {
    pub fn new(g: u32, n: u32, lambda: BigRational, delta: Vec<BigRational>, psi: Vec<BigRational>) -> Result<Self> {
        let d = TautDivisor { g, n, lambda, delta, psi };
        d.validate()?;
        Ok(d)
    }

    pub fn zero(g: u32, n: u32) -> Self {
        TautDivisor {
            g,
            n,
            lambda: BigRational::zero(),
            delta: vec![BigRational::zero(); boundary_count(g)],
            psi: vec![BigRational::zero(); n as usize],
        }
    }

    /// The class `δ₀`.
    pub fn delta0(g: u32, n: u32) -> Self {
        let mut d = TautDivisor::zero(g, n);
        d.delta[0] = rat(1, 1);
        d
    }

    pub fn validate(&self) -> Result<()> {
        if self.delta.len() != boundary_count(self.g) {
            return Err(Error::input(format!(
                "genus {} needs δ₀..δ_{} ({} coefficients), got {}",
                self.g,
                self.g / 2,
                boundary_count(self.g),
                self.delta.len()
            )));
        }
        if self.psi.len() != self.n as usize {
            return Err(Error::input(format!("{} marked points need {} ψ coefficients, got {}", self.n, self.n, self.psi.len())));
        }
        Ok(())
    }
}

/// Intersection numbers of a one-parameter family with λ, δᵢ, ψⱼ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub g: u32,
    #[serde(default)]
    pub n: u32,
    pub lambda: i64,
    pub delta: Vec<i64>,
    #[serde(default)]
    pub psi: Vec<i64>,
}

impl CurveRecord {
    pub fn new(g: u32, n: u32, lambda: i64, delta: Vec<i64>, psi: Vec<i64>) -> Result<Self> {
        let r = CurveRecord { g, n, lambda, delta, psi };
        r.validate()?;
        Ok(r)
    }

    pub fn zero(g: u32, n: u32) -> Self {
        CurveRecord { g, n, lambda: 0, delta: vec![0; boundary_count(g)], psi: vec![0; n as usize] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.delta.len() != boundary_count(self.g) {
            return Err(Error::input(format!(
                "genus {} needs δ₀..δ_{} ({} entries), got {}",
                self.g,
                self.g / 2,
                boundary_count(self.g),
                self.delta.len()
            )));
        }
        if self.psi.len() != self.n as usize {
            return Err(Error::input(format!("{} marked points need {} ψ entries, got {}", self.n, self.n, self.psi.len())));
        }
        Ok(())
    }
}

/// A genus-`g` fibration over ℙ¹ with disjoint sections, obtained by
/// blowing up the base locus of a pencil.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilSpec {
    pub chi: i64,
    pub g: u32,
    pub section_self_ints: Vec<i64>,
    pub all_fibres_irreducible: bool,
}

pub const PENCIL_ASSUMPTIONS: &[&str] = &[
    "sections are pairwise disjoint",
    "every fibre is a nodal curve",
    "the base of the fibration is ℙ¹ and the general fibre is smooth",
];

pub fn pencil_lambda(p: &PencilSpec) -> i64 {
    p.chi + p.g as i64 - 1
}

/// Number of nodes in fibres, `c₂ + 4(g − 1)`, valid only when every fibre
/// is irreducible.
pub fn pencil_delta0(p: &PencilSpec, c2: i64) -> Result<i64> {
    if !p.all_fibres_irreducible {
        return Err(Error::capability(
            "δ₀ = c₂ + 4(g − 1) counts nodes only when all fibres are irreducible; the flag is unset",
        ));
    }
    Ok(c2 + 4 * (p.g as i64 - 1))
}

pub fn pencil_psi(section_self_int: i64) -> i64 {
    -section_self_int
}

impl PencilSpec {
    /// The curve in `M̄_{g,n}` traced by the fibration, `n` = number of sections.
    pub fn record(&self, c2: i64) -> Result<CurveRecord> {
        let mut delta = vec![0; boundary_count(self.g)];
        delta[0] = pencil_delta0(self, c2)?;
        CurveRecord::new(
            self.g,
            self.section_self_ints.len() as u32,
            pencil_lambda(self),
            delta,
            self.section_self_ints.iter().map(|&e| pencil_psi(e)).collect(),
        )
    }
}

/// Glue the two marked points of a family in `M̄_{g,2}` into a node,
/// giving a family in `M̄_{g+1}`.
///
/// Boundary indices `i ≥ 1` keep their values; indices that only exist in
/// genus `g + 1` start at zero.
pub fn clutch_pushforward(r: &CurveRecord) -> Result<CurveRecord> {
    r.validate()?;
    if r.n != 2 {
        return Err(Error::input(format!("clutching needs exactly 2 marked points, got {}", r.n)));
    }
    let g = r.g + 1;
    let mut delta = vec![0; boundary_count(g)];
    delta[0] = r.delta[0] - r.psi[0] - r.psi[1];
    delta[1..r.delta.len()].copy_from_slice(&r.delta[1..]);
    CurveRecord::new(g, 0, r.lambda, delta, Vec::new())
}

/// `K = 13λ − 2δ₀ − 3δ₁ − 2δ₂ − ⋯ − 2δ_{⌊g/2⌋}` on `M̄_g`.
pub fn canonical_class(g: u32) -> Result<TautDivisor> {
    if g < 4 {
        return Err(Error::input(format!("canonical class formula is used for g ≥ 4, got {g}")));
    }
    let mut delta = vec![rat(-2, 1); boundary_count(g)];
    delta[1] = rat(-3, 1);
    TautDivisor::new(g, 0, rat(13, 1), delta, Vec::new())
}

pub fn intersect(c: &CurveRecord, d: &TautDivisor) -> Result<BigRational> {
    c.validate()?;
    d.validate()?;
    if (c.g, c.n) != (d.g, d.n) {
        return Err(Error::input(format!("curve lives on M_{},{} but divisor on M_{},{}", c.g, c.n, d.g, d.n)));
    }
    let mut acc = &d.lambda * rat_int(&big(c.lambda));
    for (x, a) in c.delta.iter().chain(&c.psi).zip(d.delta.iter().chain(&d.psi)) {
        acc += a * rat_int(&big(*x));
    }
    Ok(acc)
}

/// `(c·δ₀)/(c·λ)`, a lower bound for the slope of any effective divisor
/// not containing the image of a family sweeping `Δ₀`.
pub fn slope_lower_bound(c: &CurveRecord) -> Result<BigRational> {
    c.validate()?;
    if c.lambda <= 0 {
        return Err(Error::input(format!("c·λ = {} must be positive", c.lambda)));
    }
    Ok(BigRational::new(big(c.delta[0]), big(c.lambda)))
}

/// Comparison `bᵢ ≥ b₀` for `i ≥ 1` on the divisors in question, taken from
/// outside this crate.
pub const BOUNDARY_COMPARISON_CITATION: &str =
    "external comparison theorem: bᵢ ≥ b₀ for i ≥ 1, so s(D) = a/b₀";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeResult {
    #[serde(with = "rational_string")]
    pub slope: BigRational,
    /// Which `bᵢ` realised the minimum, or `None` under the comparison flag.
    pub min_index: Option<usize>,
    pub note: String,
}

/// `s(D) = a / min bᵢ` for `D = aλ − Σ bᵢδᵢ`.
///
/// With `assume_comparison` the minimum is taken to be `b₀` and the
/// citation is recorded in the note.
pub fn slope_of_divisor(d: &TautDivisor, assume_comparison: bool) -> Result<SlopeResult> {
    d.validate()?;
    if d.n != 0 {
        return Err(Error::input("slope is defined on M̄_g without marked points"));
    }
    let b: Vec<BigRational> = d.delta.iter().map(|x| -x).collect();
    if let Some(i) = b.iter().position(|x| x.is_negative()) {
        return Err(Error::capability(format!("b_{i} = {} < 0: the slope definition does not apply", b[i])));
    }
    if !b[0].is_positive() {
        return Err(Error::capability("b₀ must be positive"));
    }
    if assume_comparison {
        return Ok(SlopeResult {
            slope: &d.lambda / &b[0],
            min_index: None,
            note: BOUNDARY_COMPARISON_CITATION.to_string(),
        });
    }
    let (i, m) = b.iter().enumerate().min_by(|x, y| x.1.cmp(y.1).then(x.0.cmp(&y.0))).unwrap();
    Ok(SlopeResult { slope: &d.lambda / m, min_index: Some(i), note: format!("minimum attained at b_{i}") })
}

/// Slope of a registry divisor, for which only `a` and `b₀` are known.
pub fn slope_of_registry_divisor(d: &RegistryDivisor, assume_comparison: bool) -> Result<SlopeResult> {
    if !assume_comparison {
        return Err(Error::capability(format!(
            "{} records only a and b₀; its slope needs the bᵢ ≥ b₀ comparison flag",
            d.name
        )));
    }
    if !d.b0.is_positive() {
        return Err(Error::input("b₀ must be positive"));
    }
    let mut note = BOUNDARY_COMPARISON_CITATION.to_string();
    if let Some(extra) = &d.note {
        note = format!("{note}; {extra}");
    }
    Ok(SlopeResult { slope: &d.a / &d.b0, min_index: None, note })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityLine {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GeneralTypeVerdict {
    /// `K` is not big: no decomposition ample + effective exists.
    Issued { lines: Vec<InequalityLine>, assumptions: Vec<String> },
    Refused { failing: String, lines: Vec<InequalityLine> },
}

impl GeneralTypeVerdict {
    pub fn issued(&self) -> bool {
        matches!(self, GeneralTypeVerdict::Issued { .. })
    }

    pub fn lines(&self) -> &[InequalityLine] {
        match self {
            GeneralTypeVerdict::Issued { lines, .. } | GeneralTypeVerdict::Refused { lines, .. } => lines,
        }
    }
}

pub const SWEEPING_ASSUMPTIONS: &[&str] = &[
    "the family sweeps Δ₀: it meets every effective divisor not containing Δ₀ non-negatively",
    "pluricanonical forms extend over the singularities of M̄_g",
    "ample classes are positive on every curve (Kleiman)",
];

/// Replay of the argument that a family sweeping `Δ₀` with `c·K = 0` and
/// `c·δ₀ > 0` prevents `K` from being big.
pub fn general_type_obstruction(c: &CurveRecord, g: u32) -> Result<GeneralTypeVerdict> {
    if c.g != g || c.n != 0 {
        return Err(Error::input(format!("record lives on M_{},{}, expected M_{g}", c.g, c.n)));
    }
    let k = canonical_class(g)?;
    let ck = intersect(c, &k)?;
    let cd0 = big(c.delta[0]);
    let mut lines = Vec::new();

    let zero = ck.is_zero();
    lines.push(InequalityLine { statement: format!("c·K = {ck} = 0"), holds: zero });
    let positive = cd0 > BigInt::zero();
    lines.push(InequalityLine { statement: format!("c·δ₀ = {cd0} > 0"), holds: positive });
    // K ≡ αδ₀ + D with D effective, Δ₀ ⊄ D: c·K = α(c·δ₀) + c·D with c·D ≥ 0.
    let alpha_forced = zero && positive;
    lines.push(InequalityLine {
        statement: format!("0 = α·{cd0} + c·D with c·D ≥ 0 forces α = 0"),
        holds: alpha_forced,
    });
    // K ≡ A + E with A ample, E effective: c·K = c·A + c·E ≥ c·A > 0.
    let contradiction = zero && alpha_forced;
    lines.push(InequalityLine {
        statement: format!("{ck} = c·A + c·E ≥ c·A > 0 is impossible"),
        holds: contradiction,
    });

    if let Some(fail) = lines.iter().find(|l| !l.holds) {
        return Ok(GeneralTypeVerdict::Refused { failing: fail.statement.clone(), lines });
    }
    Ok(GeneralTypeVerdict::Issued { lines, assumptions: SWEEPING_ASSUMPTIONS.iter().map(|s| s.to_string()).collect() })
}
