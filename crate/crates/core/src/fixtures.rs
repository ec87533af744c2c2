//! Named lattices and surfaces used by scenarios, tests and the CLI.

use crate::lattice::{Lattice, LatticeClass};
use crate::surface::{double_cover_surface, k3_invariants, SurfaceInvariants};

/// Coordinates of `2H` in the `(D, E, R)` basis of [`der_sublattice`].
pub const DER_TWO_H: [i64; 3] = [1, 1, -1];
/// Coordinates of `F` in the `(D, E, R)` basis of [`der_sublattice`].
pub const DER_F: [i64; 3] = [1, 0, -1];

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Rank-3 lattice on `H, F, R` with `H² = 8`, `F² = 4`, `R² = −2`.
pub fn def_1_3() -> Lattice {
    Lattice::new("def-1-3", names(&["H", "F", "R"]), vec![vec![8, 9, 1], vec![9, 4, 2], vec![1, 2, -2]])
        .expect("fixture lattice is valid")
}

/// `D = F + R`, `E = 2H − F`, `R` as columns in `(H, F, R)` coordinates.
pub fn der_columns() -> Vec<Vec<i64>> {
    vec![vec![0, 1, 1], vec![2, -1, 0], vec![0, 0, 1]]
}

/// The index-2 sublattice spanned by `D, E, R`.
pub fn der_sublattice() -> Lattice {
    def_1_3()
        .span("der-sublattice", der_columns(), names(&["D", "E", "R"]))
        .expect("fixture columns are independent")
        .lattice
}

/// `E = 2H − F` on a lattice with generators `H` and `F`.
pub fn class_e(l: &Lattice) -> LatticeClass {
    let h = l.generator("H").expect("lattice has H");
    let f = l.generator("F").expect("lattice has F");
    l.combine(&[(2, &h), (-1, &f)]).expect("same lattice")
}

/// Degree-8 K3 surface.
pub fn k3_genus5() -> SurfaceInvariants {
    k3_invariants().with_degree(8)
}

/// Double cover of [`k3_genus5`] branched along a smooth member of `|2H|`.
pub fn canonical_double_cover() -> SurfaceInvariants {
    double_cover_surface(&k3_genus5(), 8, 8, 6).expect("fixture cover is consistent").surface
}

pub fn lattice_by_id(id: &str) -> Option<Lattice> {
    match id {
        "def-1-3" => Some(def_1_3()),
        "der-sublattice" => Some(der_sublattice()),
        _ => None,
    }
}

pub fn surface_by_id(id: &str) -> Option<SurfaceInvariants> {
    match id {
        "k3-genus5" => Some(k3_genus5()),
        "canonical-double-cover" => Some(canonical_double_cover()),
        _ => None,
    }
}

pub const LATTICE_IDS: &[&str] = &["def-1-3", "der-sublattice"];
pub const SURFACE_IDS: &[&str] = &["k3-genus5", "canonical-double-cover"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_resolve() {
        for id in LATTICE_IDS {
            assert_eq!(lattice_by_id(id).unwrap().id(), *id);
        }
        for id in SURFACE_IDS {
            assert!(surface_by_id(id).unwrap().noether_holds());
        }
        assert!(lattice_by_id("nope").is_none());
    }

    #[test]
    fn sublattice_coordinates_of_h_and_f() {
        let full = def_1_3();
        let sub = der_sublattice();
        // Map (D, E, R) coordinates back to (H, F, R).
        let back = |x: &[i64; 3]| -> Vec<i64> {
            let cols = der_columns();
            (0..3).map(|i| (0..3).map(|j| cols[j][i] * x[j]).sum()).collect()
        };
        assert_eq!(back(&DER_TWO_H), vec![2, 0, 0]);
        assert_eq!(back(&DER_F), vec![0, 1, 0]);
        let two_h = sub.class(DER_TWO_H.to_vec()).unwrap();
        assert_eq!(sub.self_intersection(&two_h).unwrap(), 4 * full.self_intersection(&full.generator("H").unwrap()).unwrap());
    }
}
