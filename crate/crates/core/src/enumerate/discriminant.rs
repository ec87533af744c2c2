//! Nonexistence certificates for integer points on conics via the
//! discriminant of a one-parameter family.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{big, exact_sqrt, integers_within, rat_int, to_i64};

/// The family `q_b(a) = α·a² + (β₁b+β₀)·a + (γ₂b²+γ₁b+γ₀) = 0` over ℤ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadFamily {
    pub alpha: i64,
    pub beta0: i64,
    pub beta1: i64,
    pub gamma0: i64,
    pub gamma1: i64,
    pub gamma2: i64,
}

impl QuadFamily {
    pub fn new(alpha: i64, beta0: i64, beta1: i64, gamma0: i64, gamma1: i64, gamma2: i64) -> Self {
        QuadFamily { alpha, beta0, beta1, gamma0, gamma1, gamma2 }
    }

    pub fn coeffs(&self) -> [i64; 6] {
        [self.alpha, self.beta0, self.beta1, self.gamma0, self.gamma1, self.gamma2]
    }

    pub fn eval(&self, a: i64, b: i64) -> BigInt {
        let (a, b) = (big(a), big(b));
        big(self.alpha) * &a * &a
            + (big(self.beta1) * &b + big(self.beta0)) * &a
            + big(self.gamma2) * &b * &b
            + big(self.gamma1) * &b
            + big(self.gamma0)
    }

    /// Coefficients `[b², b, 1]` of `disc(b) = (β₁b+β₀)² − 4α(γ₂b²+γ₁b+γ₀)`.
    pub fn discriminant_poly(&self) -> [i64; 3] {
        let (al, b0, b1) = (self.alpha as i128, self.beta0 as i128, self.beta1 as i128);
        let (g0, g1, g2) = (self.gamma0 as i128, self.gamma1 as i128, self.gamma2 as i128);
        let c = [b1 * b1 - 4 * al * g2, 2 * b0 * b1 - 4 * al * g1, b0 * b0 - 4 * al * g0];
        c.map(|x| i64::try_from(x).expect("discriminant coefficient exceeds i64"))
    }

    pub fn text(&self) -> String {
        format!(
            "{}a² + ({}b + {})a + ({}b² + {}b + {}) = 0",
            self.alpha, self.beta1, self.beta0, self.gamma2, self.gamma1, self.gamma0
        )
    }
}

/// A completed discriminant argument: the only parameters `b` with
/// `disc(b) ≥ 0` are `admissible_b`, and among those the integer solutions
/// are exactly `solutions`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantWitness {
    pub family: QuadFamily,
    pub disc_poly: [i64; 3],
    pub admissible_b: Vec<i64>,
    pub solutions: Vec<(i64, i64)>,
}

impl DiscriminantWitness {
    pub fn summary(&self) -> String {
        format!(
            "{}; disc(b) = {}; disc(b) ≥ 0 only for b ∈ {:?}; integer solutions {:?}",
            self.family.text(),
            poly_text(&self.disc_poly),
            self.admissible_b,
            self.solutions
        )
    }
}

pub fn poly_text(c: &[i64; 3]) -> String {
    let mut parts = Vec::new();
    if c[0] != 0 {
        parts.push(format!("{}b²", c[0]));
    }
    if c[1] != 0 {
        parts.push(format!("{}b", c[1]));
    }
    if c[2] != 0 || parts.is_empty() {
        parts.push(c[2].to_string());
    }
    parts.join("+").replace("+-", "−").replace('-', "−")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DiscriminantVerdict {
    Certified(DiscriminantWitness),
    /// `disc(b) ≥ 0` for infinitely many `b`; no finite argument exists.
    Refused { disc_poly: [i64; 3], reason: String },
}

/// Decide the integer solutions of a quadratic family, or refuse.
pub fn discriminant_certificate(family: QuadFamily) -> Result<DiscriminantVerdict> {
    if family.alpha == 0 {
        return Err(Error::input("α = 0: the family is not quadratic in a"));
    }
    let disc = family.discriminant_poly();
    let [c2, c1, c0] = disc;
    let admissible: Vec<BigInt> = if c2 < 0 {
        // c2·b² + c1·b + c0 ≥ 0  ⟺  (b + c1/(2c2))² ≤ (c1² − 4c2c0)/(4c2²)
        let center = BigRational::new(big(-c1), big(2 * c2));
        let radius_sq = BigRational::new(big(c1) * big(c1) - big(4) * big(c2) * big(c0), big(4) * big(c2) * big(c2));
        integers_within(&center, &radius_sq)
    } else if c2 == 0 && c1 == 0 && c0 < 0 {
        Vec::new()
    } else {
        let reason = if c2 > 0 {
            "disc(b) has positive leading coefficient".to_string()
        } else if c2 == 0 && c1 != 0 {
            "disc(b) is linear, so it is nonnegative on a half-line".to_string()
        } else {
            "disc(b) is a nonnegative constant".to_string()
        };
        return Ok(DiscriminantVerdict::Refused { disc_poly: disc, reason });
    };

    let mut solutions = Vec::new();
    let mut admissible_b = Vec::new();
    for b in &admissible {
        let b64 = to_i64(b, "parameter b")?;
        admissible_b.push(b64);
        let d = big(c2) * b * b + big(c1) * b + big(c0);
        debug_assert!(!d.is_negative());
        let Some(r) = exact_sqrt(&d) else { continue };
        let lin = big(family.beta1) * b + big(family.beta0);
        let two_alpha = big(2 * family.alpha);
        let mut roots = vec![-&lin + &r];
        if !r.is_zero() {
            roots.push(-&lin - &r);
        }
        for num in roots {
            let q = rat_int(&num) / rat_int(&two_alpha);
            if q.is_integer() {
                solutions.push((to_i64(&q.to_integer(), "root a")?, b64));
            }
        }
    }
    solutions.sort_unstable();
    solutions.dedup();
    Ok(DiscriminantVerdict::Certified(DiscriminantWitness { family, disc_poly: disc, admissible_b, solutions }))
}
