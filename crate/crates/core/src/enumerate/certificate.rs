use std::fmt;

use serde::{Deserialize, Serialize};

use super::discriminant::DiscriminantWitness;

/// How strong a nonexistence (or completeness) claim is.
///
/// Everything except [`BoundLimited`](CertificateKind::BoundLimited) holds for
/// all integers, not only for a searched box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    EnumerationExhaustive,
    Discriminant,
    Parity,
    BoundLimited,
}

impl CertificateKind {
    pub fn is_unconditional(self) -> bool {
        self != CertificateKind::BoundLimited
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::EnumerationExhaustive => "enumeration-exhaustive",
            CertificateKind::Discriminant => "discriminant",
            CertificateKind::Parity => "parity",
            CertificateKind::BoundLimited => "bound-limited",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The witness backing a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CertificateData {
    /// The affine slice `{x : form·x = value, x² = self_int}` is finite
    /// (negative-definite complement) and was enumerated completely.
    Slice { linear_form: Vec<i64>, value: i64, self_int: i64 },
    /// `form·x = target` is impossible because `modulus` divides every
    /// coefficient but leaves `target` with nonzero `residue`.
    Congruence { linear_form: Vec<i64>, target: i64, modulus: i64, residue: i64 },
    /// Elimination to a one-parameter quadratic family whose discriminant
    /// is negative outside a finite window of parameters.
    Discriminant(DiscriminantWitness),
    /// Search restricted to `1 <= x·height_class <= height_max`.
    HeightBound { height_class: Vec<i64>, height_max: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub data: CertificateData,
}

impl Certificate {
    pub fn bound_limited(height_class: Vec<i64>, height_max: i64) -> Self {
        Certificate {
            kind: CertificateKind::BoundLimited,
            data: CertificateData::HeightBound { height_class, height_max },
        }
    }

    pub fn summary(&self) -> String {
        match &self.data {
            CertificateData::Slice { linear_form, value, self_int } => {
                format!("exhaustive slice {} = {value}, x² = {self_int}", linear_text(linear_form))
            }
            CertificateData::Congruence { linear_form, target, modulus, .. } => {
                format!("{} = {target} has no integer solution ({modulus} divides every coefficient)", linear_text(linear_form))
            }
            CertificateData::Discriminant(w) => w.summary(),
            CertificateData::HeightBound { height_max, .. } => format!("searched 1 ≤ height ≤ {height_max} only"),
        }
    }
}

/// Renders `6a+14b+2c` style linear forms (variables a, b, c, … in order).
pub fn linear_text(form: &[i64]) -> String {
    const VARS: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
    let mut s = String::new();
    for (i, &k) in form.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let var = VARS.get(i).copied().unwrap_or("x");
        if !s.is_empty() {
            s.push(if k < 0 { '-' } else { '+' });
        } else if k < 0 {
            s.push('-');
        }
        if k.abs() != 1 {
            s.push_str(&k.abs().to_string());
        }
        s.push_str(var);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
