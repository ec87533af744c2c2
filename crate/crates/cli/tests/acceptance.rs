//! Acceptance run: one PASS/FAIL line per criterion, with wall-clock limits.
//!
//! A criterion listed in `KNOWN_UNATTAINABLE` still runs in full and still
//! prints FAIL; it only stops that FAIL from turning the exit status red.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use moduli_audit::dimension::{
    multiplicity_options, pencil_dimension, proper_subvariety_check, quadric_count, rho, riemann_roch_curve,
    serre_special_sections, ModuliSpace, Registry,
};
use moduli_audit::enumerate::{
    enumerate_classes, enumerate_with_heights, nef_check, saint_donat_obstructions, CertificateData, CertificateKind,
    ClassQuery, Execution, ObstructionKind, QuadFamily,
};
use moduli_audit::exact::{big, rat};
use moduli_audit::fixtures;
use moduli_audit::lattice::{determinant, self_intersection_for_genus, signature_of, BasisChange, Lattice, LatticeClass};
use moduli_audit::surface::{
    blow_up, complete_intersection, double_cover_surface, k3_invariants, nodal_union_genus, ramification_for_genus,
    riemann_hurwitz, split_component_self_intersection, tangent_cover_split, SurfaceInvariants,
    EXCEPTIONAL_SELF_INTERSECTION,
};
use moduli_audit::taut::{
    canonical_class, clutch_pushforward, general_type_obstruction, intersect, pencil_delta0, pencil_lambda,
    slope_lower_bound, CurveRecord, PencilSpec,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(
    1,
    "the target Gram has determinant 4·det, so no unimodular change reaches it; span() with the same columns does",
)];

const TOTAL_LIMIT: Duration = Duration::from_secs(10);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn int(x: &BigInt) -> i64 {
    i64::try_from(x).expect("fits in i64")
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

// 1 ----------------------------------------------------------------------

fn basis_change() -> Outcome {
    let l = fixtures::def_1_3();
    let target = vec![vec![6, 14, 0], vec![14, 0, 0], vec![0, 0, -2]];
    match l.change_basis_columns(fixtures::der_columns(), names(&["D", "E", "R"])) {
        Ok(changed) => {
            ensure(changed.gram() == target.as_slice(), format!("gram {:?}", changed.gram()))?;
            Ok("((6,14,0),(14,0,0),(0,0,−2))".into())
        }
        Err(e) => {
            let det_t = determinant(&fixtures::der_columns());
            let via_span = l.span("der", fixtures::der_columns(), names(&["D", "E", "R"])).map_err(|e| e.to_string())?;
            Err(format!(
                "change_basis refuses ({e}); det T = {det_t}, det target = {} vs det lattice = {}; span gives {:?} with index {}",
                determinant(&target),
                l.determinant(),
                via_span.lattice.gram(),
                via_span.index
            ))
        }
    }
}

// 2 ----------------------------------------------------------------------

fn signatures() -> Outcome {
    for l in [fixtures::def_1_3(), fixtures::der_sublattice()] {
        let s = l.signature();
        ensure((s.positive, s.negative, s.zero) == (1, 2, 0), format!("{} has signature {s}", l.id()))?;
    }
    Ok("(1,2,0) on both Gram matrices".into())
}

// 3 ----------------------------------------------------------------------

/// `x² − self_int` on the slice `6a + 14b + 2c = value` of the sublattice,
/// as a polynomial in `(a, b)` recovered by interpolation and normalised.
fn interpolated_family(l: &Lattice, f: &[i64], value: i64, self_int: i64) -> QuadFamily {
    let form: Vec<i64> = (0..3).map(|j| (0..3).map(|i| f[i] * l.gram()[i][j]).sum()).collect();
    assert!(form[2] != 0);
    let q = |a: i64, b: i64| -> i64 {
        let rest = value - form[0] * a - form[1] * b;
        assert_eq!(rest % form[2], 0, "slice must be solvable for c");
        let x = l.class(vec![a, b, rest / form[2]]).unwrap();
        int(&l.self_intersection(&x).unwrap()) - self_int
    };
    let f0 = q(0, 0);
    let (pa, ma, pb, mb) = (q(1, 0), q(-1, 0), q(0, 1), q(0, -1));
    let (ca, d) = ((pa + ma - 2 * f0) / 2, (pa - ma) / 2);
    let (cb, e) = ((pb + mb - 2 * f0) / 2, (pb - mb) / 2);
    let cab = q(1, 1) - ca - cb - d - e - f0;
    let mut c = [ca, d, cab, f0, e, cb];
    let g = c.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    let s = if ca < 0 { -g } else { g };
    for x in &mut c {
        *x /= s;
    }
    QuadFamily::new(c[0], c[1], c[2], c[3], c[4], c[5])
}

fn textbook_discriminant(fam: &QuadFamily) -> [i64; 3] {
    let [al, b0, b1, g0, g1, g2] = fam.coeffs();
    [b1 * b1 - 4 * al * g2, 2 * b0 * b1 - 4 * al * g1, b0 * b0 - 4 * al * g0]
}

fn very_ampleness() -> Outcome {
    let l = fixtures::der_sublattice();
    let f = l.class(fixtures::DER_F.to_vec()).unwrap();
    let two_h = l.class(fixtures::DER_TWO_H.to_vec()).unwrap();
    let cases = saint_donat_obstructions(&l, &f, &two_h, 50).map_err(|e| e.to_string())?;
    ensure(cases.len() == 4, "four cases")?;
    for c in &cases {
        ensure(c.classes.is_empty(), format!("{:?} found {:?}", c.kind, c.classes))?;
    }
    let by_kind = |k: ObstructionKind| cases.iter().find(|c| c.kind == k).unwrap();

    let one = by_kind(ObstructionKind::IsotropicDegreeOne);
    ensure(one.certificate.kind == CertificateKind::Parity, "degree one is not a parity certificate")?;
    match &one.certificate.data {
        CertificateData::Congruence { linear_form, target, modulus, .. } => {
            ensure(linear_form == &vec![6, 14, 2] && *target == 1 && *modulus == 2, "congruence is not 6a+14b+2c = 1 mod 2")?
        }
        other => return Err(format!("degree one data {other:?}")),
    }

    // Published polynomials; the oracle family is rebuilt from the Gram matrix.
    let expected = [
        (ObstructionKind::IsotropicDegreeTwo, 2, 0, [-392, 0, 12]),
        (ObstructionKind::OrthogonalMinusTwo, 0, -2, [-392, 0, 24]),
    ];
    for (kind, value, self_int, poly) in expected {
        let case = by_kind(kind);
        ensure(case.certificate.kind == CertificateKind::Discriminant, format!("{kind:?} is not a discriminant certificate"))?;
        let CertificateData::Discriminant(w) = &case.certificate.data else {
            return Err(format!("{kind:?} carries no discriminant witness"));
        };
        let oracle = interpolated_family(&l, &fixtures::DER_F, value, self_int);
        ensure(w.family == oracle, format!("{kind:?}: family {:?}, oracle {:?}", w.family, oracle))?;
        ensure(textbook_discriminant(&oracle) == poly, format!("{kind:?}: oracle disc {:?}", textbook_discriminant(&oracle)))?;
        ensure(w.disc_poly == poly, format!("{kind:?}: disc {:?}", w.disc_poly))?;
        ensure(w.solutions.is_empty(), format!("{kind:?}: solutions {:?}", w.solutions))?;
    }
    let effective = by_kind(ObstructionKind::EffectiveOrthogonalMinusTwo);
    ensure(effective.certificate.kind == CertificateKind::BoundLimited, "effective case must be bound-limited")?;

    // Box |a|,|b|,|c| ≤ 1000; for each (a, b) at most one c meets the linear condition.
    let g = l.gram();
    let mut hits = Vec::new();
    for a in -1000i64..=1000 {
        for b in -1000i64..=1000 {
            for (value, self_int) in [(1, 0), (2, 0), (0, -2)] {
                let rest = value - 6 * a - 14 * b;
                if rest % 2 != 0 || (rest / 2).abs() > 1000 {
                    continue;
                }
                let x = [a, b, rest / 2];
                let sq: i64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| x[i] * g[i][j] * x[j]).sum();
                if sq == self_int {
                    hits.push(x);
                }
            }
        }
    }
    ensure(hits.is_empty(), format!("brute force found {hits:?}"))?;
    Ok("all four cases empty; parity 6a+14b+2c = 1, disc −392b²+12, disc −392b²+24, effective bound-limited; box ±1000 clean".into())
}

// 4 ----------------------------------------------------------------------

/// Coordinate bounds for `{x : x² = −2, 1 ≤ x·h ≤ t_max}` from the positive
/// definite form `P(x) = 2(x·h)²/h² − x²`.
fn box_radius(l: &Lattice, h: &[i64], t_max: i64) -> Vec<i64> {
    let g: Vec<Vec<f64>> = l.gram().iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let hv: Vec<f64> = (0..3).map(|j| (0..3).map(|i| h[i] as f64 * g[i][j]).sum()).collect();
    let h2: f64 = (0..3).map(|i| h[i] as f64 * hv[i]).sum();
    let p: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| 2.0 * hv[i] * hv[j] / h2 - g[i][j]).collect()).collect();
    let det = p[0][0] * (p[1][1] * p[2][2] - p[1][2] * p[2][1]) - p[0][1] * (p[1][0] * p[2][2] - p[1][2] * p[2][0])
        + p[0][2] * (p[1][0] * p[2][1] - p[1][1] * p[2][0]);
    assert!(det > 0.0);
    let cof = |i: usize| {
        let (a, b) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        p[a][a] * p[b][b] - p[a][b] * p[b][a]
    };
    let p_max = 2.0 * (t_max * t_max) as f64 / h2 + 2.0;
    (0..3).map(|i| (p_max * cof(i) / det).sqrt().floor() as i64 + 1).collect()
}

fn nefness() -> Outcome {
    let l = fixtures::def_1_3();
    let h = l.generator("H").unwrap();
    let f = l.generator("F").unwrap();
    let v = nef_check(&l, &f, &h, 30).map_err(|e| e.to_string())?;
    ensure(v.nef, format!("violations {:?}", v.violations))?;
    ensure(v.checked > 0, "no (−2)-classes inspected")?;

    let q = ClassQuery::new(-2, h.coords.clone(), 10);
    let mut fast = enumerate_classes(&l, &q, Execution::Serial).map_err(|e| e.to_string())?;
    let r = box_radius(&l, &h.coords, 10);
    let mut naive: Vec<LatticeClass> = Vec::new();
    for x in -r[0]..=r[0] {
        for y in -r[1]..=r[1] {
            for z in -r[2]..=r[2] {
                let c = l.class(vec![x, y, z]).unwrap();
                let t = int(&l.pair(&c, &h).unwrap());
                if (1..=10).contains(&t) && l.self_intersection(&c).unwrap() == big(-2) {
                    naive.push(c);
                }
            }
        }
    }
    fast.sort();
    naive.sort();
    ensure(fast == naive, format!("enumerator {} classes, box {} classes", fast.len(), naive.len()))?;
    Ok(format!("{} (−2)-classes up to height 30, none negative on F; height ≤ 10 matches box ({} classes)", v.checked, naive.len()))
}

// 5, 6, 8 ----------------------------------------------------------------

/// Everything from the K3 lattice to the family in genus 16. Only the
/// lattice and the shape of the construction go in.
struct Pipeline {
    k3_genera: (i64, i64, i64),
    surface: SurfaceInvariants,
    blown: SurfaceInvariants,
    base_points: i64,
    genus_c_prime: i64,
    genus_c: i64,
    r_self: (i64, i64),
    h0_pullbacks: (i64, i64),
    record: CurveRecord,
    gamma: CurveRecord,
    noether_each_step: bool,
}

fn pipeline() -> Result<Pipeline, String> {
    let e = |x: moduli_audit::Error| x.to_string();
    let l = fixtures::def_1_3();
    let (h, f, r) = (l.generator("H").unwrap(), l.generator("F").unwrap(), l.generator("R").unwrap());
    let class_e = fixtures::class_e(&l);
    let genus = |c: &LatticeClass| int(&l.k3_adjunction_genus(c).unwrap());
    let k3_genera = (genus(&f), genus(&r), genus(&class_e));
    let pair = |u: &LatticeClass, v: &LatticeClass| int(&l.pair(u, v).unwrap());

    let h2 = pair(&h, &h);
    let base = k3_invariants().with_degree(h2);
    let h0_h = genus(&h) + 1;
    let cover = double_cover_surface(&base, h2, h2, h0_h).map_err(e)?;
    let s = cover.surface;
    let ci = complete_intersection(&[2, 2, 2, 2], cover.h0_pullback - 1).map_err(e)?;
    ensure(ci.degree == s.k2 && ci.canonical_twist == 1, "complete intersection disagrees with the cover")?;

    // C′ double covers the curve in |F|, branched where it meets the branch curve in |2H|.
    let two_h = l.combine(&[(2, &h)]).unwrap();
    let genus_c_prime = riemann_hurwitz(genus(&f), 2, pair(&f, &two_h)).map_err(e)?;
    let split = tangent_cover_split(1).map_err(e)?;
    let genus_r = genus(&r);
    let genus_c = nodal_union_genus(&[genus_c_prime, genus_r], &vec![(0, 1); split.components() as usize]).map_err(e)?;
    // K_S = σ*H, so C·K = 2·F·H + R·H.
    let r_dot_k = pair(&r, &h);
    let c_dot_k = 2 * pair(&f, &h) + r_dot_k;
    let base_points = int(&self_intersection_for_genus(genus_c, c_dot_k));
    let r_self = (
        int(&self_intersection_for_genus(genus_r, r_dot_k)),
        split_component_self_intersection(pair(&r, &r), split.meeting_points()),
    );
    let blown = blow_up(&s, base_points).map_err(e)?;

    let spec = PencilSpec {
        chi: blown.chi,
        g: genus_c as u32,
        section_self_ints: vec![EXCEPTIONAL_SELF_INTERSECTION; 2],
        all_fibres_irreducible: true,
    };
    let record = spec.record(blown.c2).map_err(e)?;
    ensure(record.lambda == pencil_lambda(&spec), "record λ")?;
    ensure(record.delta[0] == pencil_delta0(&spec, blown.c2).map_err(e)?, "record δ₀")?;
    let gamma = clutch_pushforward(&record).map_err(e)?;

    Ok(Pipeline {
        k3_genera,
        surface: s,
        blown,
        base_points,
        genus_c_prime,
        genus_c,
        r_self,
        h0_pullbacks: (cover.h0_pullback, cover.h0_pullback_double),
        record,
        gamma,
        noether_each_step: base.noether_holds() && s.noether_holds() && blown.noether_holds(),
    })
}

fn surface_ledger() -> Outcome {
    let p = pipeline()?;
    let (s, t) = (p.surface, p.blown);
    ensure((s.chi, s.k2) == (8, 16), format!("cover (χ, K²) = ({}, {})", s.chi, s.k2))?;
    ensure(p.base_points == 9, format!("blow up {} points", p.base_points))?;
    ensure((t.chi, t.k2, t.c2) == (8, 7, 89), format!("blow-up ({}, {}, {})", t.chi, t.k2, t.c2))?;
    ensure(t.c2 == 12 * 8 - 7 && t.k2 == s.k2 - 9, "c₂ = 12·8 − 7, K² drops by 9")?;
    ensure(p.noether_each_step, "Noether fails somewhere")?;
    Ok(format!(
        "({}, {}, {}) → blow up {} → ({}, {}, {}); Noether at every step",
        s.chi, s.k2, s.c2, p.base_points, t.chi, t.k2, t.c2
    ))
}

fn genus_ledger() -> Outcome {
    let p = pipeline()?;
    ensure(riemann_hurwitz(3, 2, 18) == Ok(14), "riemann_hurwitz(3, 2, 18)")?;
    ensure(p.genus_c_prime == 14, format!("g(C′) = {}", p.genus_c_prime))?;
    ensure(p.genus_c == 15, format!("g(C) = {}", p.genus_c))?;
    ensure(p.gamma.g == 16, format!("clutched genus {}", p.gamma.g))?;
    ensure(nodal_union_genus(&[15], &[(0, 0)]) == Ok(16), "self-node raises the genus")?;
    ensure(p.r_self == (-3, -3), format!("R² by adjunction / by splitting = {:?}", p.r_self))?;
    ensure(p.k3_genera == (3, 0, 1), format!("k3 genera {:?}", p.k3_genera))?;
    Ok("14, 15, 16; R² = −3 two ways; (F, R, E) genera (3, 0, 1)".into())
}

fn moduli_pencil() -> Outcome {
    let p = pipeline()?;
    let (r, gamma) = (&p.record, &p.gamma);
    ensure(r.lambda == 22 && r.delta[0] == 145 && r.psi == vec![1, 1], format!("pencil record {r:?}"))?;
    let mut delta = vec![0; 9];
    delta[0] = 143;
    ensure(gamma.lambda == 22 && gamma.delta == delta, format!("clutched {gamma:?}"))?;
    let k = canonical_class(gamma.g).map_err(|e| e.to_string())?;
    let gk = intersect(gamma, &k).map_err(|e| e.to_string())?;
    ensure(gk == rat(0, 1) && 13 * gamma.lambda - 2 * gamma.delta[0] == 0, format!("Γ·K = {gk}"))?;
    let slope = slope_lower_bound(gamma).map_err(|e| e.to_string())?;
    ensure(slope == rat(13, 2), format!("slope bound {slope}"))?;
    let verdict = general_type_obstruction(gamma, gamma.g).map_err(|e| e.to_string())?;
    ensure(verdict.issued(), format!("obstruction refused: {verdict:?}"))?;
    Ok("λ 22, δ₀ 145 → 143, ψ (1,1); Γ·K = 0; slope ≥ 13/2; obstruction issued".into())
}

// 7 ----------------------------------------------------------------------

fn dimension_ledger() -> Outcome {
    let e = |x: moduli_audit::Error| x.to_string();
    let p = pipeline()?;
    let g = p.genus_c;
    let reg = Registry::bundled();
    let h15_9 = ModuliSpace::hurwitz(g, 9).dim().map_err(e)?;
    let m15 = ModuliSpace::curves(g).dim().map_err(e)?;
    let dim_s = h15_9 - 2;
    let y1 = reg.locus("H^triple_12,9").ok_or("H^triple_12,9 missing")?.declared_dim + 2;
    let h_four = reg.locus("H^four_14,9").ok_or("H^four_14,9 missing")?.declared_dim;
    let branch = ramification_for_genus(g, 0, 9).map_err(e)?;
    let got = (h15_9, m15, dim_s, y1, h_four, branch);
    ensure(got == (43, 42, 41, 34, 39, 46), format!("dimensions {got:?}"))?;
    ensure(rho(g, 1, 9) == Ok(1), "ρ(15,1,9)")?;
    let deg_l = 2 * g - 2 - 9;
    let h0_l = riemann_roch_curve(g, deg_l, 2);
    let h0_l2 = riemann_roch_curve(g, 2 * deg_l, 0);
    ensure(h0_l2 == 24, format!("h⁰(L²) = {h0_l2}"))?;
    let q_s = quadric_count(p.h0_pullbacks.0, p.h0_pullbacks.1).map_err(e)?;
    let q_c = quadric_count(h0_l, h0_l2).map_err(e)?;
    ensure((q_s, q_c) == (4, 4), format!("quadrics ({q_s}, {q_c})"))?;
    let simple = serre_special_sections(12, 3, 1);
    let triple = serre_special_sections(12, 6, 1);
    let plane = pencil_dimension(simple, triple);
    ensure((simple, triple, plane) == (9, 6, Some(2)), format!("Serre ledger ({simple}, {triple}, {plane:?})"))?;
    ensure(multiplicity_options(p.base_points) == BTreeSet::from([2, 3]), "multiplicities")?;
    ensure(proper_subvariety_check(h_four, 2, m15).proper, "H^four + 2 < dim M₁₅")?;
    Ok("(43, 42, 41, 34, 39, 46); ρ = 1; h⁰(L²) = 24; quadrics 4, 4; Serre (9, 6, ℙ²); {2,3}; proper".into())
}

// 9 ----------------------------------------------------------------------

fn unimodular() -> impl Strategy<Value = BasisChange> {
    proptest::collection::vec((0usize..3, 0usize..3, -4i64..=4, any::<bool>()), 1..8).prop_map(|ops| {
        let mut m = vec![vec![1i64, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        for (i, j, k, flip) in ops {
            if i != j {
                for r in 0..3 {
                    m[j][r] += k * m[i][r];
                }
            }
            if flip {
                for r in 0..3 {
                    m[i][r] = -m[i][r];
                }
            }
        }
        BasisChange::from_columns(m).unwrap()
    })
}

fn property_suites() -> Outcome {
    let lattices = [fixtures::def_1_3(), fixtures::der_sublattice()];
    let coords = || proptest::collection::vec(-10_000i64..10_000, 3);

    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&(0usize..2, coords(), coords(), coords(), -50i64..50), |(li, u, v, w, s)| {
            let l = &lattices[li];
            let (u, v, w) = (l.class(u).unwrap(), l.class(v).unwrap(), l.class(w).unwrap());
            prop_assert_eq!(l.pair(&u, &v).unwrap(), l.pair(&v, &u).unwrap());
            let lhs = l.pair(&l.combine(&[(1, &u), (s, &w)]).unwrap(), &v).unwrap();
            prop_assert_eq!(lhs, l.pair(&u, &v).unwrap() + big(s) * l.pair(&w, &v).unwrap());
            Ok(())
        })
        .map_err(|e| format!("pairing: {e}"))?;

    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner
        .run(&(0usize..2, unimodular()), |(li, t)| {
            let l = &lattices[li];
            let changed = l.change_basis(&t, names(&["x", "y", "z"])).unwrap();
            prop_assert_eq!(signature_of(changed.gram()), l.signature());
            Ok(())
        })
        .map_err(|e| format!("signature: {e}"))?;

    let mut runner = TestRunner::new(Config { cases: 500, failure_persistence: None, ..Config::default() });
    runner
        .run(&(-5i64..20, 0i64..4, -20i64..40, 0i64..30, 0i64..30), |(chi, q, k2, a, b)| {
            let s = SurfaceInvariants::from_q_pg_k2(q, chi - 1 + q, k2, None);
            prop_assert_eq!(blow_up(&s, a + b).unwrap(), blow_up(&blow_up(&s, a).unwrap(), b).unwrap());
            Ok(())
        })
        .map_err(|e| format!("blow-up: {e}"))?;

    for g in 0..=20 {
        for d in 0..=2 * g - 2 {
            for r in 0..=d {
                ensure(rho(g, r, d) == rho(g, g - d + r - 1, 2 * g - 2 - d), format!("ρ residuation g={g} r={r} d={d}"))?;
            }
        }
    }

    let queries = [
        (fixtures::def_1_3(), vec![1, 0, 0]),
        (fixtures::der_sublattice(), fixtures::DER_TWO_H.to_vec()),
    ];
    for (l, h) in &queries {
        for self_int in -6..=6 {
            let q = ClassQuery::new(self_int, h.clone(), 14);
            let a = enumerate_with_heights(l, &q, Execution::Serial).unwrap();
            let b = enumerate_with_heights(l, &q, Execution::Parallel).unwrap();
            ensure(a == b, format!("parallel differs on {} x² = {self_int}", l.id()))?;
        }
    }
    let args = ["enumerate", "--lattice", "der-sublattice", "--self-int", "-2", "--height", "1,1,-1", "--height-max", "40"];
    let serial = Command::new(env!("CARGO_BIN_EXE_moduli-audit")).args(args).output().map_err(|e| e.to_string())?;
    let parallel = Command::new(env!("CARGO_BIN_EXE_moduli-audit"))
        .args(args)
        .arg("--parallel")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(serial.stdout == parallel.stdout, "--parallel output differs")?;
    Ok("pairing ×1000, signature ×100, blow-up ×500, ρ residuation g ≤ 20, --parallel byte-identical".into())
}

// 10 ---------------------------------------------------------------------

fn honest_failure() -> Outcome {
    let run = |text: &str| -> Result<(Option<i32>, String), String> {
        let mut f = tempfile::Builder::new().suffix(".json").tempfile().map_err(|e| e.to_string())?;
        f.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
        let o = Command::new(env!("CARGO_BIN_EXE_moduli-audit"))
            .args(["run", f.path().to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        Ok((o.status.code(), String::from_utf8_lossy(&o.stdout).into_owned()))
    };
    let (code, out) = run(
        r#"{"fixtures": {"p": {"chi": 8, "g": 15, "section_self_ints": [-1, -1], "all_fibres_irreducible": true}},
            "checks": [{"id": "gamma-lambda", "claim": "Γ·λ = 21", "op": "pencil_lambda", "args": {"pencil": "@p"}, "expect": 21}]}"#,
    )?;
    ensure(code == Some(1), format!("Γ·λ = 21 exited {code:?}"))?;
    ensure(out.contains("diff: expected 21, computed 22"), "no diff line")?;

    let (code, out) = run(
        r#"{"checks": [{"id": "none-above", "claim": "no (−2)-class of degree 7 on F", "op": "enumerate",
            "args": {"lattice": "def-1-3", "self_int": -2, "height_class": [1, 0, 0], "height_max": 4,
                     "constraints": [{"class": [0, 1, 0], "rel": "=", "bound": 7}]},
            "expect": []}]}"#,
    )?;
    ensure(code == Some(0), format!("bounded claim exited {code:?}"))?;
    let line = out.lines().find(|l| l.contains("none-above")).ok_or("bounded check missing from report")?;
    ensure(line.trim_start().starts_with("PASS-BOUNDED"), format!("bounded claim reported as {line:?}"))?;
    Ok("Γ·λ = 21 exits 1 with a diff; bounded nonexistence reports PASS-BOUNDED".into())
}

// ------------------------------------------------------------------------

fn main() {
    let ms = Duration::from_millis;
    let criteria: Vec<Criterion> = vec![
        (1, "basis change", Some(ms(1)), basis_change),
        (2, "signature", None, signatures),
        (3, "very-ampleness obstructions", Some(ms(2000)), very_ampleness),
        (4, "nefness", Some(ms(5000)), nefness),
        (5, "surface ledger", None, surface_ledger),
        (6, "genus ledger", None, genus_ledger),
        (7, "dimension ledger", None, dimension_ledger),
        (8, "moduli pencil", None, moduli_pencil),
        (9, "property suites", None, property_suites),
        (10, "honest failure", None, honest_failure),
    ];

    let start = Instant::now();
    let mut unexpected = Vec::new();
    for (n, name, limit, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
            (o, _) => o,
        };
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == n);
        match (&outcome, known) {
            (Ok(detail), None) => println!("PASS  {n:>2} {name:<28} {:>10.3?}  {detail}", elapsed),
            (Ok(detail), Some(_)) => {
                println!("PASS  {n:>2} {name:<28} {:>10.3?}  {detail} (listed as unattainable; update the list)", elapsed);
                unexpected.push(n);
            }
            (Err(why), Some((_, analysis))) => {
                println!("FAIL  {n:>2} {name:<28} {:>10.3?}  {why} [known: {analysis}]", elapsed)
            }
            (Err(why), None) => {
                println!("FAIL  {n:>2} {name:<28} {:>10.3?}  {why}", elapsed);
                unexpected.push(n);
            }
        }
    }
    let total = start.elapsed();
    if total > TOTAL_LIMIT {
        println!("FAIL  total {total:.3?} exceeds {TOTAL_LIMIT:?}");
        unexpected.push(0);
    } else {
        println!("PASS  total {total:.3?} within {TOTAL_LIMIT:?}");
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
