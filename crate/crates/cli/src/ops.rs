//! Named operations a scenario check can call. Each returns its value
//! together with the instantiated formula, the inputs it read, any
//! geometric assumptions it relies on and the strength of its certificate.

use moduli_audit::dimension::{self, ModuliSpace};
use moduli_audit::enumerate::{
    discriminant_certificate, enumerate_with_heights, nef_check, poly_text, saint_donat_obstructions, ClassQuery,
    Constraint, DiscriminantVerdict, Execution, ObstructionKind, QuadFamily,
};
use moduli_audit::exact::{fmt_decimal, fmt_rational, parse_rational};
use moduli_audit::lattice::{self_intersection_for_genus, BasisChange};
use moduli_audit::surface::{self, SurfaceInvariants};
use moduli_audit::taut::{self, CurveRecord, PencilSpec, TautDivisor};
use moduli_audit::{CertificateKind, Error, Lattice};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::scenario::Context;

#[derive(Clone, Debug, PartialEq)]
pub struct OpOutput {
    pub value: Value,
    pub formula: String,
    pub inputs: Vec<(String, String)>,
    pub assumptions: Vec<String>,
    pub certificate: Option<CertificateKind>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpError {
    /// Bad arguments or references: the scenario itself is wrong.
    Input(String),
    /// The operation declined to certify (method not applicable).
    Refused(String),
}

impl From<Error> for OpError {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(m) => OpError::Input(m),
            Error::Capability(m) => OpError::Refused(m),
        }
    }
}

type OpResult = Result<OpOutput, OpError>;

pub const OPS: &[(&str, &str)] = &[
    ("gram", "Gram matrix of a lattice"),
    ("change_basis", "Gram matrix after a unimodular change of basis"),
    ("span", "Gram matrix and index of the span of given classes"),
    ("signature", "(positive, negative, zero) inertia"),
    ("determinant", "determinant of the Gram matrix"),
    ("combine", "integer combination of classes"),
    ("pair", "intersection number u·v"),
    ("self_intersection", "c²"),
    ("k3_genus", "arithmetic genus 1 + c²/2 on a K3"),
    ("enumerate", "classes of given square in a height range"),
    ("nef_check", "scan (−2)-classes for negative pairing"),
    ("saint_donat", "very-ampleness obstructions"),
    ("discriminant", "discriminant certificate for a quadratic family"),
    ("double_cover", "invariants of a double cover branched in |2L|"),
    ("complete_intersection", "degree and canonical twist"),
    ("blow_up", "blow up points"),
    ("noether", "c₂ = 12χ − K²"),
    ("riemann_hurwitz", "genus of a cover"),
    ("ramification_for_genus", "ramification of a cover"),
    ("nodal_union_genus", "arithmetic genus of a nodal union"),
    ("tangent_cover_split", "preimage of a rational curve under a double cover"),
    ("self_intersection_for_genus", "C² from adjunction"),
    ("split_component_self_intersection", "R² of a split pullback component"),
    ("sum", "sum of integers, minus optional terms"),
    ("value", "pass a referenced value through unchanged"),
    ("rank", "rank of a lattice"),
    ("moduli_dim", "dimension of M_g,n or a Hurwitz space"),
    ("special_locus", "registry-declared dimension"),
    ("rho", "Brill–Noether number"),
    ("riemann_roch_curve", "h⁰ = d − g + 1 + h¹"),
    ("quadric_count", "quadrics containing a curve or surface"),
    ("serre_special_sections", "h⁰(K − D)"),
    ("conditions_imposed", "conditions imposed by points"),
    ("proper_subvariety_check", "dimension bound strictly below target"),
    ("multiplicity_options", "{m ≥ 2 : m² ≤ C²}"),
    ("pencil_dimension", "projective dimension of a linear system"),
    ("pencil_lambda", "λ-degree of a fibration"),
    ("pencil_delta0", "δ₀-degree of a fibration"),
    ("pencil_psi", "ψ-degree of a section"),
    ("pencil_record", "curve record of a fibration"),
    ("clutch", "glue two marked points"),
    ("canonical_class", "K of M̄_g"),
    ("delta0_class", "the class δ₀"),
    ("intersect", "curve · divisor"),
    ("slope_lower_bound", "(c·δ₀)/(c·λ)"),
    ("slope_of_divisor", "a / min bᵢ"),
    ("registry_slope", "a / b₀ of a registry divisor"),
    ("decimal", "truncated decimal of a rational"),
    ("general_type_obstruction", "K not big along a sweeping family"),
];

fn arg<T: DeserializeOwned>(args: &Value, key: &str) -> Result<T, OpError> {
    let v = args.get(key).ok_or_else(|| OpError::Input(format!("missing argument {key:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| OpError::Input(format!("argument {key:?}: {e}")))
}

fn opt_arg<T: DeserializeOwned>(args: &Value, key: &str) -> Result<Option<T>, OpError> {
    match args.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => arg(args, key).map(Some),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn big_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => json!(i),
        Err(_) => json!(x.to_string()),
    }
}

fn out(value: Value, formula: String) -> OpOutput {
    OpOutput { value, formula, inputs: Vec::new(), assumptions: Vec::new(), certificate: None }
}

impl OpOutput {
    fn input(mut self, name: &str, v: impl ToString) -> Self {
        self.inputs.push((name.to_string(), v.to_string()));
        self
    }

    fn assume<S: ToString>(mut self, items: impl IntoIterator<Item = S>) -> Self {
        self.assumptions.extend(items.into_iter().map(|s| s.to_string()));
        self
    }

    fn certified(mut self, kind: CertificateKind) -> Self {
        self.certificate = Some(kind);
        self
    }
}

fn lattice<'a>(ctx: &'a Context, args: &Value) -> Result<&'a Lattice, OpError> {
    let id: String = arg(args, "lattice")?;
    ctx.lattice(&id).map_err(|e| OpError::Input(e.0))
}

fn names_for(args: &Value, n: usize) -> Result<Vec<String>, OpError> {
    Ok(opt_arg(args, "names")?.unwrap_or_else(|| (0..n).map(|i| format!("e{i}")).collect()))
}

fn rational(args: &Value, key: &str) -> Result<num_rational::BigRational, OpError> {
    let v: Value = arg(args, key)?;
    let s = match v {
        Value::String(s) => s,
        Value::Number(n) => n.to_string(),
        other => return Err(OpError::Input(format!("argument {key:?}: {other} is not a rational"))),
    };
    Ok(parse_rational(&s)?)
}

fn json_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn run_op(name: &str, args: &Value, ctx: &Context) -> OpResult {
    match name {
        "gram" => {
            let l = lattice(ctx, args)?;
            Ok(out(to_value(&l.gram()), format!("Gram({})", l.id())).input("lattice", l.id()))
        }
        "change_basis" => {
            let l = lattice(ctx, args)?;
            let cols: Vec<Vec<i64>> = arg(args, "columns")?;
            let t = BasisChange::from_columns(cols.clone())?;
            let changed = l.change_basis(&t, names_for(args, cols.len())?)?;
            Ok(out(to_value(&changed.gram()), "Tᵀ G T".into()).input("lattice", l.id()).input("T columns", json!(cols)))
        }
        "span" => {
            let l = lattice(ctx, args)?;
            let cols: Vec<Vec<i64>> = arg(args, "columns")?;
            let id: String = opt_arg(args, "id")?.unwrap_or_else(|| format!("{}-span", l.id()));
            let sub = l.span(id, cols.clone(), names_for(args, cols.len())?)?;
            Ok(out(
                json!({"gram": sub.lattice.gram(), "index": big_value(&sub.index)}),
                format!("Tᵀ G T with |det T| = {}", sub.index),
            )
            .input("lattice", l.id())
            .input("columns", json!(cols)))
        }
        "signature" => {
            let l = lattice(ctx, args)?;
            let s = l.signature();
            Ok(out(json!([s.positive, s.negative, s.zero]), format!("inertia of Gram({})", l.id())).input("lattice", l.id()))
        }
        "determinant" => {
            let l = lattice(ctx, args)?;
            Ok(out(big_value(&l.determinant()), format!("det Gram({})", l.id())).input("lattice", l.id()))
        }
        "combine" => {
            let l = lattice(ctx, args)?;
            let terms: Vec<(i64, Vec<i64>)> = arg(args, "terms")?;
            let classes = terms.iter().map(|(_, c)| l.class(c.clone())).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<(i64, &_)> = terms.iter().zip(&classes).map(|((k, _), c)| (*k, c)).collect();
            let c = l.combine(&refs)?;
            let text = terms.iter().map(|(k, c)| format!("{k}·{c:?}")).collect::<Vec<_>>().join(" + ");
            Ok(out(json!(c.coords), format!("{text} = {}", c)).input("lattice", l.id()))
        }
        "pair" => {
            let l = lattice(ctx, args)?;
            let u = l.class(arg(args, "u")?)?;
            let v = l.class(arg(args, "v")?)?;
            let p = l.pair(&u, &v)?;
            Ok(out(big_value(&p), format!("{u}·{v} = {p}")).input("lattice", l.id()))
        }
        "self_intersection" => {
            let l = lattice(ctx, args)?;
            let c = l.class(arg(args, "class")?)?;
            let p = l.self_intersection(&c)?;
            Ok(out(big_value(&p), format!("{c}² = {p}")).input("lattice", l.id()))
        }
        "k3_genus" => {
            let l = lattice(ctx, args)?;
            let c = l.class(arg(args, "class")?)?;
            let c2 = l.self_intersection(&c)?;
            let g = l.k3_adjunction_genus(&c)?;
            Ok(out(big_value(&g), format!("g = 1 + {c2}/2 = {g}")).input("lattice", l.id()).input("class", &c))
        }
        "enumerate" => {
            let (l, q) = match opt_arg::<String>(args, "query")? {
                Some(id) => {
                    let nq = ctx.queries.get(&id).ok_or_else(|| OpError::Input(format!("unknown query {id:?}")))?;
                    (ctx.lattice(&nq.lattice).map_err(|e| OpError::Input(e.0))?, nq.query.clone())
                }
                None => {
                    let l = lattice(ctx, args)?;
                    let mut q = ClassQuery::new(arg(args, "self_int")?, arg(args, "height_class")?, arg(args, "height_max")?);
                    q.constraints = opt_arg::<Vec<Constraint>>(args, "constraints")?.unwrap_or_default();
                    (l, q)
                }
            };
            let exec = if opt_arg(args, "parallel")?.unwrap_or(false) { Execution::Parallel } else { Execution::Serial };
            let found = enumerate_with_heights(l, &q, exec)?;
            let value: Vec<Value> = found.iter().map(|h| json!({"class": h.class.coords, "height": h.height})).collect();
            Ok(out(
                Value::Array(value),
                format!("{{c : c² = {}, 1 ≤ c·{:?} ≤ {}}}", q.self_int, q.height_class, q.height_max),
            )
            .input("lattice", l.id())
            .certified(CertificateKind::BoundLimited))
        }
        "nef_check" => {
            let l = lattice(ctx, args)?;
            let cand = l.class(arg(args, "candidate")?)?;
            let ample = l.class(arg(args, "ample")?)?;
            let hmax: i64 = arg(args, "height_max")?;
            let v = nef_check(l, &cand, &ample, hmax)?;
            let viol: Vec<Value> = v.violations.iter().map(|(c, p)| json!({"class": c.coords, "pairing": p})).collect();
            Ok(out(
                json!({"nef": v.nef, "checked": v.checked, "violations": viol}),
                format!("Γ·{cand} ≥ 0 for all Γ² = −2, 1 ≤ Γ·{ample} ≤ {hmax}"),
            )
            .input("lattice", l.id())
            .certified(v.certificate.kind))
        }
        "saint_donat" => {
            let l = lattice(ctx, args)?;
            let f = l.class(arg(args, "f")?)?;
            let ample = l.class(arg(args, "ample")?)?;
            let hmax: i64 = arg(args, "height_max")?;
            let case: Option<ObstructionKind> = opt_arg(args, "case")?;
            let cases = saint_donat_obstructions(l, &f, &ample, hmax)?;
            let render = |c: &moduli_audit::enumerate::ObstructionCase| {
                json!({
                    "case": c.kind,
                    "found": c.classes.iter().map(|x| x.coords.clone()).collect::<Vec<_>>(),
                    "certificate": c.certificate.kind,
                    "witness": c.certificate.summary(),
                    "data": c.certificate.data,
                })
            };
            let selected: Vec<_> = cases.iter().filter(|c| case.is_none_or(|k| k == c.kind)).collect();
            let weakest = selected.iter().map(|c| c.certificate.kind).max();
            let formula = selected
                .iter()
                .map(|c| format!("{}: {}", c.kind.label(), c.certificate.summary()))
                .collect::<Vec<_>>()
                .join("; ");
            let value = match case {
                Some(_) => render(selected[0]),
                None => Value::Array(selected.iter().map(|c| render(c)).collect()),
            };
            let mut o = out(value, formula).input("lattice", l.id()).input("F", &f).input("height class", &ample);
            o.certificate = weakest;
            Ok(o)
        }
        "discriminant" => {
            #[derive(serde::Deserialize)]
            #[serde(untagged)]
            enum FamilyArg {
                Coeffs([i64; 6]),
                Named(QuadFamily),
            }
            let fam = match arg::<FamilyArg>(args, "family")? {
                FamilyArg::Coeffs(c) => QuadFamily::new(c[0], c[1], c[2], c[3], c[4], c[5]),
                FamilyArg::Named(f) => f,
            };
            match discriminant_certificate(fam)? {
                DiscriminantVerdict::Certified(w) => Ok(out(
                    json!({"disc": poly_text(&w.disc_poly), "admissible_b": w.admissible_b, "solutions": w.solutions}),
                    w.summary(),
                )
                .certified(CertificateKind::Discriminant)),
                DiscriminantVerdict::Refused { disc_poly, reason } => {
                    Err(OpError::Refused(format!("disc(b) = {}: {reason}", poly_text(&disc_poly))))
                }
            }
        }
        "double_cover" => {
            let base: SurfaceInvariants = arg(args, "base")?;
            let (l2, kl2, h0): (i64, i64, i64) = (arg(args, "l_self")?, arg(args, "k_plus_l_self")?, arg(args, "h0_base_l")?);
            let dc = surface::double_cover_surface(&base, l2, kl2, h0)?;
            let s = dc.surface;
            Ok(out(
                to_value(&dc),
                format!(
                    "χ = {} + ({} + ({} + {})/2) = {}; K² = 2·{kl2} = {}; h⁰(σ*L) = {h0} + 1 = {}; h⁰(2σ*L) = {}",
                    base.chi, base.chi, l2, dc.k_dot_l, s.chi, s.k2, dc.h0_pullback, dc.h0_pullback_double
                ),
            )
            .input("L²", l2)
            .input("(K+L)²", kl2)
            .input("h⁰(L)", h0)
            .assume(&dc.assumptions))
        }
        "complete_intersection" => {
            let d: Vec<i64> = arg(args, "multidegrees")?;
            let n: i64 = arg(args, "ambient_dim")?;
            let ci = surface::complete_intersection(&d, n)?;
            Ok(out(
                to_value(&ci),
                format!("degree ∏dᵢ = {}; ω = O(Σdᵢ − {}) = O({})", ci.degree, n + 1, ci.canonical_twist),
            )
            .input("multidegrees", json!(d)))
        }
        "blow_up" => {
            let s: SurfaceInvariants = arg(args, "surface")?;
            let n: i64 = arg(args, "points")?;
            let t = surface::blow_up(&s, n)?;
            Ok(out(to_value(&t), format!("K² = {} − {n} = {}; c₂ = 12·{} − {} = {}", s.k2, t.k2, t.chi, t.k2, t.c2))
                .input("points", n))
        }
        "noether" => {
            let s: SurfaceInvariants = arg(args, "surface")?;
            Ok(out(json!(s.noether_holds()), format!("{} = 12·{} − {}", s.c2, s.chi, s.k2)))
        }
        "riemann_hurwitz" => {
            let (gb, d, r): (i64, i64, i64) = (arg(args, "g_base")?, arg(args, "degree")?, arg(args, "ramification")?);
            let g = surface::riemann_hurwitz(gb, d, r)?;
            Ok(out(json!(g), format!("2g − 2 = {d}·(2·{gb} − 2) + {r}, g = {g}")))
        }
        "ramification_for_genus" => {
            let (g, gb, d): (i64, i64, i64) = (arg(args, "g")?, arg(args, "g_base")?, arg(args, "degree")?);
            let r = surface::ramification_for_genus(g, gb, d)?;
            Ok(out(json!(r), format!("(2·{g} − 2) − {d}·(2·{gb} − 2) = {r}")))
        }
        "nodal_union_genus" => {
            let comps: Vec<i64> = arg(args, "components")?;
            let nodes: Vec<(usize, usize)> = arg(args, "nodes")?;
            let g = surface::nodal_union_genus(&comps, &nodes)?;
            let sum: i64 = comps.iter().sum();
            Ok(out(json!(g), format!("{sum} + {} − {} + 1 = {g}", nodes.len(), comps.len())))
        }
        "tangent_cover_split" => {
            let b: i64 = arg(args, "branch_points")?;
            let t = surface::tangent_cover_split(b)?;
            Ok(out(
                json!({"shape": t, "components": t.components(), "meeting_points": t.meeting_points()}),
                format!("{b} branch points: {}", t.describe()),
            ))
        }
        "self_intersection_for_genus" => {
            let (g, ck): (i64, i64) = (arg(args, "genus")?, arg(args, "c_dot_k")?);
            let c2 = self_intersection_for_genus(g, ck);
            Ok(out(big_value(&c2), format!("C² = 2·{g} − 2 − {ck} = {c2}")))
        }
        "split_component_self_intersection" => {
            let (b, m): (i64, i64) = (arg(args, "base_self")?, arg(args, "meeting")?);
            let r = surface::split_component_self_intersection(b, m);
            Ok(out(json!(r), format!("2·({b}) = 2R² + 2·{m}, R² = {r}")))
        }
        "sum" => {
            let terms: Vec<i64> = arg(args, "terms")?;
            let minus: Vec<i64> = opt_arg(args, "minus")?.unwrap_or_default();
            let s: i64 = terms.iter().sum::<i64>() - minus.iter().sum::<i64>();
            let mut text = terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + ");
            for m in &minus {
                text.push_str(&format!(" − {m}"));
            }
            Ok(out(json!(s), format!("{} = {s}", text.replace("+ -", "− "))))
        }
        "value" => {
            let v: Value = arg(args, "value")?;
            Ok(out(v.clone(), format!("= {}", render(&v))))
        }
        "rank" => {
            let l = lattice(ctx, args)?;
            Ok(out(json!(l.rank()), format!("rank {}", l.id())).input("lattice", l.id()))
        }
        "moduli_dim" => {
            let sp: ModuliSpace = arg(args, "space")?;
            let d = sp.dim()?;
            let formula = match &sp {
                ModuliSpace::Curves { g, n } => format!("dim {} = 3·{g} − 3 + {n} = {d}", sp.label()),
                ModuliSpace::Hurwitz { g, k } => format!("dim {} = 2·{g} + 2·{k} − 5 = {d}", sp.label()),
                ModuliSpace::Special { .. } => format!("dim {} = {d} (declared)", sp.label()),
            };
            Ok(out(json!(d), formula))
        }
        "special_locus" => {
            let name: String = arg(args, "name")?;
            let l = ctx.registry.locus(&name).ok_or_else(|| OpError::Input(format!("no registry locus {name:?}")))?;
            Ok(out(json!(l.declared_dim), format!("dim {name} = {} (declared)", l.declared_dim)).assume([&l.source]))
        }
        "rho" => {
            let (g, r, d): (i64, i64, i64) = (arg(args, "g")?, arg(args, "r")?, arg(args, "d")?);
            let v = dimension::rho(g, r, d)?;
            Ok(out(json!(v), format!("ρ = {g} − {}·({g} − {d} + {r}) = {v}", r + 1)))
        }
        "riemann_roch_curve" => {
            let (g, d, h1): (i64, i64, i64) = (arg(args, "g")?, arg(args, "d")?, arg(args, "h1")?);
            let v = dimension::riemann_roch_curve(g, d, h1);
            Ok(out(json!(v), format!("h⁰ = {d} − {g} + 1 + {h1} = {v}")))
        }
        "quadric_count" => {
            let (a, b): (i64, i64) = (arg(args, "h0_l")?, arg(args, "h0_l2")?);
            let v = dimension::quadric_count(a, b)?;
            Ok(out(json!(v), format!("{} − {b} = {v}", a * (a + 1) / 2)).assume([dimension::QUADRIC_COUNT_ASSUMPTION]))
        }
        "serre_special_sections" => {
            let (g, d, h0): (i64, i64, i64) = (arg(args, "g")?, arg(args, "deg_d")?, arg(args, "h0_d")?);
            let v = dimension::serre_special_sections(g, d, h0);
            Ok(out(json!(v), format!("h⁰(K − D) = {g} − 1 − {d} + {h0} = {v}")))
        }
        "conditions_imposed" => {
            let (a, b): (i64, i64) = (arg(args, "h0_before")?, arg(args, "h0_after")?);
            let v = dimension::conditions_imposed(a, b)?;
            Ok(out(json!(v), format!("{a} − {b} = {v}")))
        }
        "proper_subvariety_check" => {
            let (s, f, t): (i64, i64, i64) = (arg(args, "dim_sub")?, arg(args, "fibre_dim")?, arg(args, "dim_target")?);
            let v = dimension::proper_subvariety_check(s, f, t);
            let rel = if v.proper { "<" } else { "≥" };
            Ok(out(to_value(&v), format!("{s} + {f} = {} {rel} {t}", v.bound)))
        }
        "multiplicity_options" => {
            let c: i64 = arg(args, "c_self")?;
            let v = dimension::multiplicity_options(c);
            Ok(out(to_value(&v), format!("{{m ≥ 2 : m² ≤ {c}}}")))
        }
        "pencil_dimension" => {
            let (h, c): (i64, i64) = (arg(args, "h0_total")?, arg(args, "conditions")?);
            let v = dimension::pencil_dimension(h, c);
            Ok(out(to_value(&v), format!("{h} − {c} − 1")))
        }
        "pencil_lambda" => {
            let p: PencilSpec = arg(args, "pencil")?;
            let v = taut::pencil_lambda(&p);
            Ok(out(json!(v), format!("λ = {} + {} − 1 = {v}", p.chi, p.g)).assume(taut::PENCIL_ASSUMPTIONS))
        }
        "pencil_delta0" => {
            let p: PencilSpec = arg(args, "pencil")?;
            let c2: i64 = arg(args, "c2")?;
            let v = taut::pencil_delta0(&p, c2)?;
            Ok(out(json!(v), format!("δ₀ = {c2} + 4·{} = {v}", p.g as i64 - 1))
                .assume(taut::PENCIL_ASSUMPTIONS)
                .assume(["all fibres are irreducible"]))
        }
        "pencil_psi" => {
            let e: i64 = arg(args, "section_self_int")?;
            let v = taut::pencil_psi(e);
            Ok(out(json!(v), format!("ψ = −E² = {v}")))
        }
        "pencil_record" => {
            let p: PencilSpec = arg(args, "pencil")?;
            let c2: i64 = arg(args, "c2")?;
            let r = p.record(c2)?;
            Ok(out(to_value(&r), format!("(λ, δ₀, ψ) = ({}, {}, {:?})", r.lambda, r.delta[0], r.psi))
                .assume(taut::PENCIL_ASSUMPTIONS))
        }
        "clutch" => {
            let r: CurveRecord = arg(args, "record")?;
            let c = taut::clutch_pushforward(&r)?;
            let (a, b) = (r.psi.first().copied().unwrap_or(0), r.psi.get(1).copied().unwrap_or(0));
            Ok(out(to_value(&c), format!("δ₀ = {} − {a} − {b} = {}; λ = {}", r.delta[0], c.delta[0], c.lambda))
                .assume(["fibres avoid Δ₁, …, Δ_⌊g/2⌋"]))
        }
        "canonical_class" => {
            let g: u32 = arg(args, "g")?;
            let k = taut::canonical_class(g)?;
            Ok(out(to_value(&k), format!("K = 13λ − 2δ₀ − 3δ₁ − 2δ₂ − ⋯ − 2δ_{}", g / 2)))
        }
        "delta0_class" => {
            let g: u32 = arg(args, "g")?;
            Ok(out(to_value(&TautDivisor::delta0(g, 0)), "δ₀".into()))
        }
        "intersect" => {
            let c: CurveRecord = arg(args, "curve")?;
            let d: TautDivisor = arg(args, "divisor")?;
            let v = taut::intersect(&c, &d)?;
            let mut terms = vec![format!("{}·{}", fmt_rational(&d.lambda), c.lambda)];
            for (x, a) in c.delta.iter().chain(&c.psi).zip(d.delta.iter().chain(&d.psi)) {
                if *x != 0 {
                    terms.push(format!("{}·{x}", fmt_rational(a)));
                }
            }
            Ok(out(json!(fmt_rational(&v)), format!("{} = {}", terms.join(" + ").replace("+ -", "− "), fmt_rational(&v))))
        }
        "slope_lower_bound" => {
            let c: CurveRecord = arg(args, "curve")?;
            let v = taut::slope_lower_bound(&c)?;
            Ok(out(json!(fmt_rational(&v)), format!("{}/{} = {} = {}", c.delta[0], c.lambda, fmt_rational(&v), fmt_decimal(&v, 4)))
                .assume(["the family sweeps Δ₀"]))
        }
        "slope_of_divisor" => {
            let d: TautDivisor = arg(args, "divisor")?;
            let flag: bool = opt_arg(args, "assume_comparison")?.unwrap_or(false);
            let s = taut::slope_of_divisor(&d, flag)?;
            Ok(out(json!(fmt_rational(&s.slope)), format!("s = {} = {}", fmt_rational(&s.slope), fmt_decimal(&s.slope, 4)))
                .assume([s.note]))
        }
        "registry_slope" => {
            let name: String = arg(args, "name")?;
            let flag: bool = opt_arg(args, "assume_comparison")?.unwrap_or(false);
            let d = ctx.registry.divisor(&name).ok_or_else(|| OpError::Input(format!("no registry divisor {name:?}")))?;
            let s = taut::slope_of_registry_divisor(d, flag)?;
            let printed = d.printed_decimal.clone().map(|p| format!(" (printed {p})")).unwrap_or_default();
            Ok(out(
                json!(fmt_rational(&s.slope)),
                format!("s({name}) = {}/{} = {}{printed}", fmt_rational(&d.a), fmt_rational(&d.b0), fmt_decimal(&s.slope, 4)),
            )
            .assume([s.note, d.source.clone()]))
        }
        "decimal" => {
            let x = rational(args, "value")?;
            let digits: usize = opt_arg(args, "digits")?.unwrap_or(4);
            let s = fmt_decimal(&x, digits);
            Ok(out(json!(s), format!("{} = {s}", fmt_rational(&x))))
        }
        "general_type_obstruction" => {
            let c: CurveRecord = arg(args, "curve")?;
            let g: u32 = arg(args, "g")?;
            match taut::general_type_obstruction(&c, g)? {
                taut::GeneralTypeVerdict::Issued { lines, assumptions } => {
                    let text: Vec<String> = lines.iter().map(|l| l.statement.clone()).collect();
                    Ok(out(json!("issued"), text.join("; ")).assume(assumptions))
                }
                taut::GeneralTypeVerdict::Refused { failing, .. } => Err(OpError::Refused(format!("fails at: {failing}"))),
            }
        }
        other => Err(OpError::Input(format!("unknown operation {other:?}"))),
    }
}

/// Compact rendering used in report lines.
pub fn render(v: &Value) -> String {
    match v {
        Value::Object(m) => render_object(m),
        other => json_text(other),
    }
}

fn render_object(m: &Map<String, Value>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {}", render(v))).collect();
    format!("{{{}}}", parts.join(", "))
}
