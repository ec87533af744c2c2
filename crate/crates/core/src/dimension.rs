//! Dimension counts: Brill–Noether numbers, Riemann–Roch and Serre duality on
//! curves, moduli and Hurwitz space dimensions, and a registry of declared
//! dimensions of special loci.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational_string;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModuliSpace {
    /// `M_{g,n}`; `n = 0` is `M_g`.
    Curves { g: i64, #[serde(default)] n: i64 },
    /// Degree-`k` simply branched covers of the line by genus-`g` curves.
    Hurwitz { g: i64, k: i64 },
    /// A locus whose dimension is declared, not computed.
    Special { name: String, dim: i64 },
}

impl ModuliSpace {
    pub fn curves(g: i64) -> Self {
        ModuliSpace::Curves { g, n: 0 }
    }

    pub fn pointed(g: i64, n: i64) -> Self {
        ModuliSpace::Curves { g, n }
    }

    pub fn hurwitz(g: i64, k: i64) -> Self {
        ModuliSpace::Hurwitz { g, k }
    }

    pub fn dim(&self) -> Result<i64> {
        match *self {
            ModuliSpace::Curves { g, n } => {
                if g < 2 || n < 0 {
                    return Err(Error::input(format!("dim M_{{{g},{n}}} = 3g − 3 + n needs g ≥ 2 and n ≥ 0")));
                }
                Ok(3 * g - 3 + n)
            }
            ModuliSpace::Hurwitz { g, k } => {
                if g < 0 || k < 1 {
                    return Err(Error::input("Hurwitz space needs g ≥ 0 and k ≥ 1"));
                }
                // branch points 2g + 2k − 2, minus dim PGL₂
                Ok(2 * g + 2 * k - 5)
            }
            ModuliSpace::Special { dim, .. } => Ok(dim),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModuliSpace::Curves { g, n: 0 } => format!("M_{g}"),
            ModuliSpace::Curves { g, n } => format!("M_{g},{n}"),
            ModuliSpace::Hurwitz { g, k } => format!("H_{g},{k}"),
            ModuliSpace::Special { name, .. } => name.clone(),
        }
    }
}

/// Brill–Noether number `g − (r+1)(g − d + r)`.
pub fn rho(g: i64, r: i64, d: i64) -> Result<i64> {
    if g < 0 {
        return Err(Error::input("genus must be nonnegative"));
    }
    Ok(g - (r + 1) * (g - d + r))
}

/// `h⁰ = d − g + 1 + h¹`.
pub fn riemann_roch_curve(g: i64, d: i64, h1: i64) -> i64 {
    d - g + 1 + h1
}

/// `h⁰(K − D) = g − 1 − deg D + h⁰(D)`.
pub fn serre_special_sections(g: i64, deg_d: i64, h0_d: i64) -> i64 {
    g - 1 - deg_d + h0_d
}

/// Quadrics containing the image of `|L|`: `dim Sym² H⁰(L) − h⁰(L²)`.
///
/// Assumes the multiplication map `Sym² H⁰(L) → H⁰(L²)` is surjective.
pub fn quadric_count(h0_l: i64, h0_l2: i64) -> Result<i64> {
    let n = h0_l * (h0_l + 1) / 2 - h0_l2;
    if h0_l < 0 || n < 0 {
        return Err(Error::input(format!("h⁰(L) = {h0_l}, h⁰(L²) = {h0_l2}: negative quadric count {n}")));
    }
    Ok(n)
}

pub const QUADRIC_COUNT_ASSUMPTION: &str = "Sym² H⁰(L) → H⁰(L²) is surjective";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperVerdict {
    pub proper: bool,
    pub bound: i64,
    pub target: i64,
}

/// Whether a family of dimension `dim_sub` with fibres of dimension
/// `fibre_dim` misses a general point of a `dim_target`-dimensional space.
pub fn proper_subvariety_check(dim_sub: i64, fibre_dim: i64, dim_target: i64) -> ProperVerdict {
    let bound = dim_sub + fibre_dim;
    ProperVerdict { proper: bound < dim_target, bound, target: dim_target }
}

/// `{m ≥ 2 : m² ≤ c_self}`.
pub fn multiplicity_options(c_self: i64) -> BTreeSet<i64> {
    (2..).take_while(|m| m * m <= c_self).collect()
}

/// Conditions imposed by points on a system with `h0_before` sections,
/// given the sections `h0_after` that survive them.
pub fn conditions_imposed(h0_before: i64, h0_after: i64) -> Result<i64> {
    if h0_after > h0_before || h0_after < 0 {
        return Err(Error::input(format!("h⁰ cannot go from {h0_before} to {h0_after}")));
    }
    Ok(h0_before - h0_after)
}

/// Projective dimension of a linear system; `None` when it is empty.
pub fn pencil_dimension(h0_total: i64, conditions: i64) -> Option<i64> {
    let d = h0_total - conditions - 1;
    (d >= 0).then_some(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialLocus {
    pub name: String,
    pub declared_dim: i64,
    pub source: String,
}

impl SpecialLocus {
    pub fn space(&self) -> ModuliSpace {
        ModuliSpace::Special { name: self.name.clone(), dim: self.declared_dim }
    }
}

/// A divisor class `aλ − b₀δ₀ − ⋯` known only through `a` and `b₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryDivisor {
    pub name: String,
    pub g: i64,
    #[serde(with = "rational_string")]
    pub a: BigRational,
    #[serde(with = "rational_string")]
    pub b0: BigRational,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_decimal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    #[serde(default)]
    pub loci: Vec<SpecialLocus>,
    #[serde(default)]
    pub divisors: Vec<RegistryDivisor>,
}

const BUNDLED_REGISTRY: &str = include_str!("../data/registry.json");

impl Registry {
    pub fn bundled() -> Self {
        serde_json::from_str(BUNDLED_REGISTRY).expect("bundled registry parses")
    }

    /// Add entries; a name that is already present is an input error.
    pub fn extend(&mut self, other: Registry) -> Result<()> {
        for l in other.loci {
            if self.locus(&l.name).is_some() {
                return Err(Error::input(format!("locus {} is already registered", l.name)));
            }
            self.loci.push(l);
        }
        for d in other.divisors {
            if self.divisor(&d.name).is_some() {
                return Err(Error::input(format!("divisor {} is already registered", d.name)));
            }
            self.divisors.push(d);
        }
        Ok(())
    }

    pub fn locus(&self, name: &str) -> Option<&SpecialLocus> {
        self.loci.iter().find(|l| l.name == name)
    }

    pub fn divisor(&self, name: &str) -> Option<&RegistryDivisor> {
        self.divisors.iter().find(|d| d.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn moduli_dimensions_are_coherent() {
        let h159 = ModuliSpace::hurwitz(15, 9).dim().unwrap();
        assert_eq!(h159, 43);
        assert_eq!(h159 - 2, 41);
        assert_eq!(ModuliSpace::curves(15).dim().unwrap(), 42);
        assert_eq!(ModuliSpace::curves(15).dim().unwrap() - 1, 41);
        assert_eq!(ModuliSpace::pointed(15, 2).dim().unwrap(), 44);
        assert_eq!(ModuliSpace::curves(16).dim().unwrap(), 45);
        // K3 moduli with a rank-3 lattice polarization
        assert_eq!(20 - 3, 17);
        assert!(ModuliSpace::curves(1).dim().is_err());
    }

    #[test]
    fn registry_loci() {
        let reg = Registry::bundled();
        let triple = reg.locus("H^triple_12,9").unwrap();
        assert_eq!(triple.declared_dim, ModuliSpace::curves(12).dim().unwrap() - 1);
        let four = reg.locus("H^four_14,9").unwrap();
        assert_eq!(four.declared_dim, ModuliSpace::curves(14).dim().unwrap());
        assert_eq!(triple.space().dim().unwrap() + 2, 34);
        let z = reg.divisor("Z_16").unwrap();
        assert_eq!(&z.a / &z.b0, rat(407, 61));
    }

    #[test]
    fn registry_extension_rejects_duplicates() {
        let mut reg = Registry::bundled();
        let extra: Registry = serde_json::from_str(r#"{"loci":[{"name":"X","declared_dim":3,"source":"test"}]}"#).unwrap();
        reg.extend(extra.clone()).unwrap();
        assert_eq!(reg.locus("X").unwrap().declared_dim, 3);
        assert!(reg.extend(extra).is_err());
    }

    #[test]
    fn brill_noether() {
        assert_eq!(rho(15, 1, 9), Ok(1));
        assert_eq!(rho(15, 6, 19), Ok(1));
        assert_eq!(rho(2, 0, 2), Ok(2));
        assert_eq!(rho(7, 0, 0), Ok(0));
        assert!(rho(-1, 0, 0).is_err());
    }

    #[test]
    fn riemann_roch_and_quadrics() {
        assert_eq!(riemann_roch_curve(15, 38, 0), 24);
        assert_eq!(riemann_roch_curve(9, 16, 1), 9);
        // h¹(L) = h⁰(K − L) = h⁰(A) = 2 for the residual pencil A of degree 9.
        let h1 = serre_special_sections(15, 19, 7);
        assert_eq!(h1, 2);
        assert_eq!(riemann_roch_curve(15, 19, h1), 7);
        assert_eq!(quadric_count(7, 24), Ok(4));
        assert_eq!(quadric_count(6, 21), Ok(0));
        assert!(quadric_count(3, 10).is_err());
    }

    #[test]
    fn serre_ledger() {
        assert_eq!(serre_special_sections(12, 6, 1), 6);
        let wide = serre_special_sections(12, 3, 1);
        assert_eq!(wide, 9);
        assert_eq!(pencil_dimension(wide, 6), Some(2));
        assert_eq!(serre_special_sections(10, 0, 1), 10);
    }

    #[test]
    fn subvarieties_and_multiplicities() {
        assert!(proper_subvariety_check(39, 2, 42).proper);
        assert!(proper_subvariety_check(34, 0, 42).proper);
        assert!(!proper_subvariety_check(42, 0, 42).proper);
        assert_eq!(multiplicity_options(9), BTreeSet::from([2, 3]));
        assert_eq!(multiplicity_options(4), BTreeSet::from([2]));
        assert_eq!(multiplicity_options(25), BTreeSet::from([2, 3, 4, 5]));
        assert!(multiplicity_options(3).is_empty());
        // x, y impose h⁰(A) − h⁰(A(−x−y)) = 2 − 1 conditions
        let imposed = conditions_imposed(2, 1).unwrap();
        assert_eq!(pencil_dimension(3, imposed), Some(1));
        assert_eq!(pencil_dimension(3, 2), Some(0));
        assert!(conditions_imposed(1, 2).is_err());
        assert_eq!(pencil_dimension(3, 0), Some(2));
        assert_eq!(pencil_dimension(3, 4), None);
    }

    #[test]
    fn residuation_symmetry_exhaustive() {
        for g in 0..=20 {
            for d in 0..=2 * g - 2 {
                for r in 0..=d {
                    let residual_r = g - d + r - 1;
                    assert_eq!(rho(g, r, d), rho(g, residual_r, 2 * g - 2 - d), "g={g} r={r} d={d}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn riemann_roch_agrees_with_serre_duality(g in 0i64..40, d in -10i64..90, h0 in 0i64..40) {
            // h¹(D) = h⁰(K − D), so both routes to h⁰(D) must agree.
            let h1 = serre_special_sections(g, d, h0);
            prop_assert_eq!(riemann_roch_curve(g, d, h1), h0);
            // and to h⁰(K − D) from the residual side
            let residual_h1 = h0;
            prop_assert_eq!(riemann_roch_curve(g, 2 * g - 2 - d, residual_h1), h1);
        }

        #[test]
        fn multiplicities_match_inequality(c in -5i64..500) {
            let naive: BTreeSet<i64> = (2..=c.max(2)).filter(|m| m * m <= c).collect();
            prop_assert_eq!(multiplicity_options(c), naive);
        }
    }
}
