//! Bounded enumeration of lattice classes and nonexistence certificates.
//!
//! Classes are enumerated one height slice `{c : c·h = t}` at a time. On a
//! lattice of signature `(1, n−1)` with `h² > 0` each slice carries a
//! negative-definite form, so every slice search is finite and complete;
//! only the range of heights is a bound.

mod certificate;
mod discriminant;
mod obstructions;
mod slice;

pub use certificate::{linear_text, Certificate, CertificateData, CertificateKind};
pub use discriminant::{discriminant_certificate, poly_text, DiscriminantVerdict, DiscriminantWitness, QuadFamily};
pub use obstructions::{
    nef_check, neg2_effective_filter, saint_donat_obstructions, EffectivityPartition, NefVerdict, ObstructionCase,
    ObstructionKind,
};

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{big, to_i64};
use crate::lattice::{Lattice, LatticeClass};
use slice::SliceSolver;

/// Relation of a linear constraint `class·x REL bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rel", content = "bound")]
pub enum Relation {
    #[serde(rename = ">=")]
    AtLeast(i64),
    #[serde(rename = "<=")]
    AtMost(i64),
    #[serde(rename = "=")]
    Equal(i64),
    #[serde(rename = "in")]
    InSet(Vec<i64>),
}

impl Relation {
    pub fn holds(&self, value: &BigInt) -> bool {
        match self {
            Relation::AtLeast(b) => *value >= big(*b),
            Relation::AtMost(b) => *value <= big(*b),
            Relation::Equal(b) => *value == big(*b),
            Relation::InSet(set) => set.iter().any(|b| *value == big(*b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub class: Vec<i64>,
    #[serde(flatten)]
    pub relation: Relation,
}

/// Classes `c` with `c² = self_int`, every constraint satisfied and
/// `1 ≤ c·height_class ≤ height_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassQuery {
    pub self_int: i64,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    pub height_class: Vec<i64>,
    pub height_max: i64,
}

impl ClassQuery {
    pub fn new(self_int: i64, height_class: Vec<i64>, height_max: i64) -> Self {
        ClassQuery { self_int, constraints: Vec::new(), height_class, height_max }
    }

    pub fn with_constraint(mut self, class: Vec<i64>, relation: Relation) -> Self {
        self.constraints.push(Constraint { class, relation });
        self
    }
}

/// Whether slices are solved on the rayon pool. Output is identical.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Serial,
    Parallel,
}

/// One enumerated class with its height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightedClass {
    pub class: LatticeClass,
    pub height: i64,
}

pub fn enumerate_classes(lattice: &Lattice, query: &ClassQuery, execution: Execution) -> Result<Vec<LatticeClass>> {
    Ok(enumerate_with_heights(lattice, query, execution)?.into_iter().map(|h| h.class).collect())
}

/// [`enumerate_classes`] keeping the height of each class.
pub fn enumerate_with_heights(
    lattice: &Lattice,
    query: &ClassQuery,
    execution: Execution,
) -> Result<Vec<HeightedClass>> {
    let h = lattice.class(query.height_class.clone())?;
    let h2 = lattice.self_intersection(&h)?;
    if !h2.is_positive() {
        return Err(Error::input(format!("height class {h} has h² = {h2} ≤ 0")));
    }
    for c in &query.constraints {
        lattice.class(c.class.clone())?;
    }
    if query.height_max < 1 {
        return Ok(Vec::new());
    }
    let form = linear_form(lattice, &query.height_class);
    let solver = SliceSolver::new(lattice, &form)?;
    let target = big(query.self_int);

    let run_slice = |t: i64| -> Result<Vec<HeightedClass>> {
        let mut found = Vec::new();
        for x in solver.solve(&big(t), &target) {
            let coords = x.iter().map(|v| to_i64(v, "class coordinate")).collect::<Result<Vec<_>>>()?;
            let class = lattice.class(coords)?;
            debug_assert_eq!(lattice.self_intersection(&class)?, target);
            if satisfies(lattice, &class, &query.constraints) {
                found.push(HeightedClass { class, height: t });
            }
        }
        Ok(found)
    };

    let slices: Vec<Vec<HeightedClass>> = match execution {
        Execution::Serial => (1..=query.height_max).map(run_slice).collect::<Result<_>>()?,
        Execution::Parallel => (1..=query.height_max).into_par_iter().map(run_slice).collect::<Result<_>>()?,
    };
    let mut out: Vec<HeightedClass> = slices.into_iter().flatten().collect();
    // Re-verify on the public pairing before publishing anything.
    for hc in &out {
        if lattice.self_intersection(&hc.class)? != target || lattice.pair(&hc.class, &h)? != big(hc.height) {
            return Err(Error::capability(format!("internal check failed for {}", hc.class)));
        }
    }
    out.sort_by(|a, b| a.class.coords.cmp(&b.class.coords));
    Ok(out)
}

/// The linear form `x ↦ c·x` as a coefficient vector (`gram · c`).
pub(crate) fn linear_form(lattice: &Lattice, c: &[i64]) -> Vec<BigInt> {
    lattice
        .gram()
        .iter()
        .map(|row| row.iter().zip(c).map(|(&g, &x)| big(g) * big(x)).sum())
        .collect()
}

fn satisfies(lattice: &Lattice, class: &LatticeClass, constraints: &[Constraint]) -> bool {
    constraints
        .iter()
        .all(|c| c.relation.holds(&lattice.pair_coords(&class.coords, &c.class)))
}
