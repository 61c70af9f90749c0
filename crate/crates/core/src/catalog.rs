//! Built-in structure-equation fixtures.
//!
//! The catalog carries the classical 3-dimensional examples (Iwasawa,
//! Nakamura, SL(2,ℂ) quotients, the nilmanifold on 𝔥₁₅ and its solvable
//! companion), Ugarte's two 6-dimensional nilpotent families, the solvable
//! algebras 𝔤₁–𝔤₁₀ with closed (3,0)-form after Fino–Otal–Ugarte and
//! Tolcachier, and two 7-dimensional contact fixtures (a higher Iwasawa
//! analogue and a fibred construction over a 4l-dimensional base).
//!
//! Parameter constraints that are irrational in nature (|E| = 1 with
//! arbitrary angle, x ∈ ℝ⁺) are served by Gaussian-rational points that
//! satisfy them exactly, e.g. E = 3/5 + 4/5·i; the documented test grids
//! below record that restriction.

use crate::exterior::{Form, Mono};
use crate::invariant::{apply_differential, DiffOp, InvariantForm, LieCS};
use crate::scalars::Gq;
use num::Zero;
use std::fmt;

/// A named parameter value: a scalar or a keyword (e.g. `base=abelian`).
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Scalar(Gq),
    Text(String),
}

impl ParamValue {
    pub fn scalar(&self) -> Option<&Gq> {
        match self {
            ParamValue::Scalar(s) => Some(s),
            ParamValue::Text(_) => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            ParamValue::Scalar(s) => s.to_text(),
            ParamValue::Text(t) => t.clone(),
        }
    }
}

/// Parameter schema entry of a catalog id.
#[derive(Clone, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    /// Human-readable constraint, also the message on rejection.
    pub constraint: &'static str,
    /// `None` means required.
    pub default: Option<ParamValue>,
}

/// Registry entry: id, note on what the equations are, parameter schema.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub summary: &'static str,
    pub params: Vec<ParamSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogError {
    UnknownId(String),
    UnknownParam { id: String, name: String },
    MissingParam { id: String, name: String },
    BadParam { id: String, name: String, constraint: String },
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownId(id) => write!(f, "unknown catalog id {id:?}"),
            CatalogError::UnknownParam { id, name } => {
                write!(f, "catalog id {id:?} has no parameter {name:?}")
            }
            CatalogError::MissingParam { id, name } => {
                write!(f, "catalog id {id:?} requires parameter {name:?}")
            }
            CatalogError::BadParam { id, name, constraint } => {
                write!(f, "parameter {name:?} of {id:?} violates: {constraint}")
            }
        }
    }
}

impl std::error::Error for CatalogError {}

fn gq(k: i64) -> Gq {
    Gq::from_int(k)
}

fn sp(name: &'static str, constraint: &'static str, default: Option<ParamValue>) -> ParamSpec {
    ParamSpec { name, constraint, default }
}

/// The full registry, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: "torus",
            summary: "complex torus: all structure equations vanish",
            params: vec![sp("n", "positive integer at most 60", Some(ParamValue::Scalar(gq(3))))],
        },
        CatalogEntry {
            id: "iwasawa",
            summary: "Iwasawa manifold (complex Heisenberg group): dphi3 = -phi1^phi2",
            params: vec![],
        },
        CatalogEntry {
            id: "nakamura",
            summary: "Nakamura solvmanifold: dphi2 = phi1^phi2, dphi3 = -phi1^phi3",
            params: vec![],
        },
        CatalogEntry {
            id: "sl2c",
            summary: "quotient of SL(2,C): dphi1 = phi2^phi3 and cyclic",
            params: vec![],
        },
        CatalogEntry {
            id: "h15",
            summary: "non complex-parallelisable nilmanifold on h15: dphi2 = phi1^phi1b, dphi3 = phi1^phi2",
            params: vec![],
        },
        CatalogEntry {
            id: "ex5",
            summary: "non complex-parallelisable solvmanifold on g8: dphi2 = phi1^phi2 + phi1^phi1b, dphi3 = -phi1^phi3 + phi1^phi1b",
            params: vec![],
        },
        CatalogEntry {
            id: "uga07_a",
            summary: "Ugarte's non-nilpotent-J family on 6-dim nilpotent algebras",
            params: vec![
                sp("E", "|E|^2 = 1 exactly", None),
                sp("A", "any Gaussian rational", Some(ParamValue::Scalar(gq(0)))),
                sp("b", "real and nonzero", None),
            ],
        },
        CatalogEntry {
            id: "uga07_b",
            summary: "Ugarte's nilpotent-J family on 6-dim nilpotent algebras",
            params: vec![
                sp("eps", "0 or 1", None),
                sp("rho", "0 or 1", None),
                sp("A", "any Gaussian rational", Some(ParamValue::Scalar(gq(0)))),
                sp("B", "any Gaussian rational", Some(ParamValue::Scalar(gq(0)))),
                sp("C", "any Gaussian rational", Some(ParamValue::Scalar(gq(0)))),
                sp("D", "any Gaussian rational", Some(ParamValue::Scalar(gq(0)))),
            ],
        },
        CatalogEntry {
            id: "g1_g2",
            summary: "solvable g1 / g2^alpha: dphi1 = A*phi1^(phi3+phi3b), dphi2 = -A*phi2^(phi3+phi3b)",
            params: vec![sp("A", "|A|^2 = 1 exactly", None)],
        },
        CatalogEntry {
            id: "g3",
            summary: "solvable g3 family",
            params: vec![sp("x", "real and nonzero", None)],
        },
        CatalogEntry {
            id: "g4_g7",
            summary: "solvable g4..g7 family",
            params: vec![
                sp("A", "|A|^2 = 1 exactly; Re A = 0 when G11 or G22 is nonzero, Im A = 0 when G12 is nonzero (d^2 = 0)", None),
                sp("G11", "real", Some(ParamValue::Scalar(gq(0)))),
                sp("G12", "any Gaussian rational", Some(ParamValue::Scalar(gq(0)))),
                sp("G22", "real; (G11,G12,G22) != (0,0,0)", Some(ParamValue::Scalar(gq(0)))),
            ],
        },
        CatalogEntry {
            id: "g8_J",
            summary: "complex structure J on g8: dphi1 = 2i*phi1^phi3 + phi3^phi3b, dphi2 = -2i*phi2^phi3",
            params: vec![],
        },
        CatalogEntry {
            id: "g8_Jprime",
            summary: "complex structure J' on g8: as J but dphi2 = -2i*phi2^phi3 + phi3^phi3b",
            params: vec![],
        },
        CatalogEntry {
            id: "g8_JA",
            summary: "complex structures J_A on g8; A = -i recovers the Nakamura equations",
            params: vec![sp("A", "Im A != 0", None)],
        },
        CatalogEntry { id: "g9", summary: "solvable g9 (unique complex structure)", params: vec![] },
        CatalogEntry { id: "g10", summary: "solvable g10 (unique complex structure)", params: vec![] },
        CatalogEntry {
            id: "ex52",
            summary: "7-dim nilpotent analogue of the Iwasawa manifold with a holomorphic 3-contact structure",
            params: vec![sp("eps", "0 or 1", None)],
        },
        CatalogEntry {
            id: "ex53",
            summary: "(4l+3)-dim nilmanifold fibred over a 4l-dim base Y with Gamma = Omega^phi_(4l+3)",
            params: vec![
                sp("l", "positive integer at most 14", Some(ParamValue::Scalar(gq(1)))),
                sp("base", "\"abelian\" or \"nilpotent\"", Some(ParamValue::Text("abelian".into()))),
                sp("sigma", "coefficient of the d-closed (2,0)-form sigma*phi1^phi2 on Y", Some(ParamValue::Scalar(gq(0)))),
            ],
        },
    ]
}

pub fn entry(id: &str) -> Result<CatalogEntry, CatalogError> {
    entries()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CatalogError::UnknownId(id.to_string()))
}

/// The FOU15/Tol25 classification list swept by the solvable existence question.
pub fn solvable_classification_ids() -> &'static [&'static str] {
    &["g1_g2", "g3", "g4_g7", "g8_J", "g8_Jprime", "g8_JA", "g9", "g10"]
}

/// Resolve provided parameters against the schema (defaults filled in,
/// unknown names rejected). Returns values in schema order.
fn resolve_params(
    entry: &CatalogEntry,
    provided: &[(String, ParamValue)],
) -> Result<Vec<(String, ParamValue)>, CatalogError> {
    for (name, _) in provided {
        if !entry.params.iter().any(|p| p.name == name) {
            return Err(CatalogError::UnknownParam { id: entry.id.into(), name: name.clone() });
        }
    }
    let mut out = Vec::new();
    for p in &entry.params {
        let v = provided.iter().find(|(n, _)| n == p.name).map(|(_, v)| v.clone());
        match v.or_else(|| p.default.clone()) {
            Some(v) => out.push((p.name.to_string(), v)),
            None => {
                return Err(CatalogError::MissingParam { id: entry.id.into(), name: p.name.into() })
            }
        }
    }
    Ok(out)
}

struct Params<'a> {
    id: &'a str,
    values: Vec<(String, ParamValue)>,
}

impl<'a> Params<'a> {
    fn scalar(&self, name: &str) -> Result<Gq, CatalogError> {
        let v = &self.values.iter().find(|(n, _)| n == name).expect("resolved").1;
        v.scalar().cloned().ok_or_else(|| CatalogError::BadParam {
            id: self.id.into(),
            name: name.into(),
            constraint: "expected a scalar value".into(),
        })
    }

    fn text(&self, name: &str) -> String {
        self.values.iter().find(|(n, _)| n == name).expect("resolved").1.render()
    }

    fn check(&self, name: &str, ok: bool, constraint: &str) -> Result<(), CatalogError> {
        if ok {
            Ok(())
        } else {
            Err(CatalogError::BadParam {
                id: self.id.into(),
                name: name.into(),
                constraint: constraint.into(),
            })
        }
    }
}

fn un2(i: usize, j: usize) -> Mono {
    Mono { un: (1 << (i - 1)) | (1 << (j - 1)), bar: 0 }
}

fn mixed(i: usize, j: usize) -> Mono {
    Mono { un: 1 << (i - 1), bar: 1 << (j - 1) }
}

fn form(n: usize, terms: &[(Gq, Mono)]) -> InvariantForm {
    let mut f = Form::zero(n);
    for (c, m) in terms {
        f.add_term(*m, c.clone());
    }
    f
}

fn is_small_int(s: &Gq) -> Option<i64> {
    use num::ToPrimitive;
    if !s.im.is_zero() || !num::One::is_one(s.re.denom()) {
        return None;
    }
    s.re.numer().to_i64()
}

/// Instantiate a catalog entry. Parameters are checked against the schema
/// constraints exactly; the violated constraint is named on rejection.
pub fn catalog_get(id: &str, provided: &[(String, ParamValue)]) -> Result<LieCS, CatalogError> {
    let lie = catalog_build(id, provided)?;
    // Uniform admissibility gate: the displayed families presuppose actual
    // Lie algebras with integrable J, so parameter combinations breaking
    // d² = 0 or introducing (0,2) terms are inadmissible.
    for k in 1..=lie.n {
        if !apply_differential(&lie, DiffOp::D, lie.d_phi(k)).is_zero() {
            return Err(CatalogError::BadParam {
                id: id.into(),
                name: format!("d^2 phi{k}"),
                constraint: "structure equations must satisfy d^2 = 0".into(),
            });
        }
        if !lie.d_phi(k).bidegree_part(0, 2).is_zero() {
            return Err(CatalogError::BadParam {
                id: id.into(),
                name: format!("dphi{k}"),
                constraint: "no (0,2) term allowed (integrability)".into(),
            });
        }
    }
    Ok(lie)
}

fn catalog_build(id: &str, provided: &[(String, ParamValue)]) -> Result<LieCS, CatalogError> {
    let entry = entry(id)?;
    let values = resolve_params(&entry, provided)?;
    let p = Params { id, values };
    let one = Gq::one();
    let i = Gq::i();
    match id {
        "torus" => {
            let n = p.scalar("n")?;
            let n = is_small_int(&n).filter(|&k| (1..=60).contains(&k)).ok_or_else(|| {
                CatalogError::BadParam {
                    id: id.into(),
                    name: "n".into(),
                    constraint: "positive integer at most 60".into(),
                }
            })?;
            let n = n as usize;
            Ok(LieCS::with_default_names(n, vec![Form::zero(n); n]))
        }
        "iwasawa" => {
            let n = 3;
            let d3 = form(n, &[(-&one, un2(1, 2))]);
            Ok(LieCS::with_default_names(n, vec![Form::zero(n), Form::zero(n), d3]))
        }
        "nakamura" => {
            let n = 3;
            let d2 = form(n, &[(one.clone(), un2(1, 2))]);
            let d3 = form(n, &[(-&one, un2(1, 3))]);
            Ok(LieCS::with_default_names(n, vec![Form::zero(n), d2, d3]))
        }
        "sl2c" => {
            let n = 3;
            let d1 = form(n, &[(one.clone(), un2(2, 3))]);
            let d2 = form(n, &[(-&one, un2(1, 3))]);
            let d3 = form(n, &[(one.clone(), un2(1, 2))]);
            Ok(LieCS::with_default_names(n, vec![d1, d2, d3]))
        }
        "h15" => {
            let n = 3;
            let d2 = form(n, &[(one.clone(), mixed(1, 1))]);
            let d3 = form(n, &[(one.clone(), un2(1, 2))]);
            Ok(LieCS::with_default_names(n, vec![Form::zero(n), d2, d3]))
        }
        "ex5" => {
            let n = 3;
            let d2 = form(n, &[(one.clone(), un2(1, 2)), (one.clone(), mixed(1, 1))]);
            let d3 = form(n, &[(-&one, un2(1, 3)), (one.clone(), mixed(1, 1))]);
            Ok(LieCS::with_default_names(n, vec![Form::zero(n), d2, d3]))
        }
        "uga07_a" => {
            let e = p.scalar("E")?;
            let a = p.scalar("A")?;
            let b = p.scalar("b")?;
            p.check("E", num::One::is_one(&e.norm_sq()), "|E|^2 = 1 exactly")?;
            p.check("b", b.is_real() && !b.is_zero(), "real and nonzero")?;
            let n = 3;
            let ib = &i * &b;
            let d2 = form(n, &[(e.clone(), un2(1, 3)), (one.clone(), mixed(1, 3))]);
            let d3 = form(
                n,
                &[
                    (a, mixed(1, 1)),
                    (ib.clone(), mixed(1, 2)),
                    (-&(&ib * &e.conj()), mixed(2, 1)),
                ],
            );
            Ok(LieCS::with_default_names(n, vec![Form::zero(n), d2, d3]))
        }
        "uga07_b" => {
            let eps = p.scalar("eps")?;
            let rho = p.scalar("rho")?;
            let zero_or_one = |s: &Gq| s.is_zero() || s.is_one();
            p.check("eps", zero_or_one(&eps), "0 or 1")?;
            p.check("rho", zero_or_one(&rho), "0 or 1")?;
            let a = p.scalar("A")?;
            let b = p.scalar("B")?;
            let c = p.scalar("C")?;
            let d = p.scalar("D")?;
            let n = 3;
            let om = &one - &eps; // 1 − ε
            let d2 = form(n, &[(eps.clone(), mixed(1, 1))]);
            let d3 = form(
                n,
                &[
                    (rho, un2(1, 2)),
                    (&om * &a, mixed(1, 1)),
                    (b, mixed(1, 2)),
                    (c, mixed(2, 1)),
                    (&om * &d, mixed(2, 2)),
                ],
            );
            Ok(LieCS::with_default_names(n, vec![Form::zero(n), d2, d3]))
        }
        "g1_g2" => {
            let a = p.scalar("A")?;
            p.check("A", num::One::is_one(&a.norm_sq()), "|A|^2 = 1 exactly")?;
            let n = 3;
            let d1 = form(n, &[(a.clone(), un2(1, 3)), (a.clone(), mixed(1, 3))]);
            let d2 = form(n, &[(-&a, un2(2, 3)), (-&a, mixed(2, 3))]);
            Ok(LieCS::with_default_names(n, vec![d1, d2, Form::zero(n)]))
        }
        "g3" => {
            let x = p.scalar("x")?;
            p.check("x", x.is_real() && !x.is_zero(), "real and nonzero")?;
            let n = 3;
            let half = Gq::from_frac(1, 2);
            let xi = &x * &i;
            // i/(4x)
            let iq = &i / &(&x * &gq(4));
            let d2 = form(
                n,
                &[
                    (-&half, un2(1, 3)),
                    (-&(&half + &xi), mixed(1, 3)),
                    (xi.clone(), mixed(3, 1)),
                ],
            );
            let d3 = form(
                n,
                &[
                    (half.clone(), un2(1, 2)),
                    (&half - &iq, mixed(1, 2)),
                    (iq.clone(), mixed(2, 1)),
                ],
            );
            Ok(LieCS::with_default_names(n, vec![Form::zero(n), d2, d3]))
        }
        "g4_g7" => {
            let a = p.scalar("A")?;
            let g11 = p.scalar("G11")?;
            let g12 = p.scalar("G12")?;
            let g22 = p.scalar("G22")?;
            p.check("A", num::One::is_one(&a.norm_sq()), "|A|^2 = 1 exactly")?;
            p.check("G11", g11.is_real(), "real")?;
            p.check(
                "G22",
                g22.is_real() && !(g11.is_zero() && g12.is_zero() && g22.is_zero()),
                "real; (G11,G12,G22) != (0,0,0)",
            )?;
            let n = 3;
            let d1 = form(n, &[(a.clone(), un2(1, 3)), (a.clone(), mixed(1, 3))]);
            let d2 = form(n, &[(-&a, un2(2, 3)), (-&a, mixed(2, 3))]);
            let d3 = form(
                n,
                &[
                    (g11, mixed(1, 1)),
                    (g12.clone(), mixed(1, 2)),
                    (g12.conj(), mixed(2, 1)),
                    (g22, mixed(2, 2)),
                ],
            );
            Ok(LieCS::with_default_names(n, vec![d1, d2, d3]))
        }
        "g8_J" | "g8_Jprime" => {
            let n = 3;
            let twoi = &gq(2) * &i;
            let d1 = form(n, &[(twoi.clone(), un2(1, 3)), (one.clone(), mixed(3, 3))]);
            let mut d2_terms = vec![(-&twoi, un2(2, 3))];
            if id == "g8_Jprime" {
                d2_terms.push((one.clone(), mixed(3, 3)));
            }
            let d2 = form(n, &d2_terms);
            Ok(LieCS::with_default_names(n, vec![d1, d2, Form::zero(n)]))
        }
        "g8_JA" => {
            let a = p.scalar("A")?;
            p.check("A", !a.im.is_zero(), "Im A != 0")?;
            let n = 3;
            let am = &a - &i;
            let ap = &a + &i;
            let d1 = form(n, &[(-&am, un2(1, 3)), (-&ap, mixed(1, 3))]);
            let d2 = form(n, &[(am.clone(), un2(2, 3)), (ap.clone(), mixed(2, 3))]);
            Ok(LieCS::with_default_names(n, vec![d1, d2, Form::zero(n)]))
        }
        "g9" => {
            let n = 3;
            let ih = &i * &Gq::from_frac(1, 2);
            let half = Gq::from_frac(1, 2);
            let d1 = form(n, &[(-&one, mixed(3, 3))]);
            let d2 = form(
                n,
                &[(ih.clone(), un2(1, 2)), (half, mixed(1, 3)), (-&ih, mixed(2, 1))],
            );
            let d3 = form(n, &[(-&ih, un2(1, 3)), (ih.clone(), mixed(3, 1))]);
            Ok(LieCS::with_default_names(n, vec![d1, d2, d3]))
        }
        "g10" => {
            let n = 3;
            let d1 = form(
                n,
                &[(one.clone(), un2(1, 3)), (-&one, mixed(1, 3)), (one.clone(), mixed(3, 2))],
            );
            let d2 = form(n, &[(-&one, un2(2, 3)), (one.clone(), mixed(2, 3))]);
            Ok(LieCS::with_default_names(n, vec![d1, d2, Form::zero(n)]))
        }
        "ex52" => {
            let eps = p.scalar("eps")?;
            p.check("eps", eps.is_zero() || eps.is_one(), "0 or 1")?;
            let n = 7;
            let d3 = form(n, &[(one.clone(), un2(1, 2))]);
            let d4 = form(n, &[(one.clone(), un2(1, 3))]);
            let d5 = form(n, &[(one.clone(), un2(2, 3))]);
            let d6 = form(n, &[(eps, un2(2, 5))]);
            let d7 = form(n, &[(one.clone(), un2(2, 6))]);
            Ok(LieCS::with_default_names(
                n,
                vec![Form::zero(n), Form::zero(n), d3, d4, d5, d6, d7],
            ))
        }
        "ex53" => {
            let l = p.scalar("l")?;
            let l = is_small_int(&l).filter(|&k| (1..=14).contains(&k)).ok_or_else(|| {
                CatalogError::BadParam {
                    id: id.into(),
                    name: "l".into(),
                    constraint: "positive integer at most 14 (n = 4l+3 stays within the 60-index coframe bound)".into(),
                }
            })? as usize;
            let base = p.text("base");
            let sigma = p.scalar("sigma")?;
            let nb = 4 * l;
            let mut base_diff = vec![Form::zero(nb); nb];
            match base.as_str() {
                "abelian" => {}
                "nilpotent" => {
                    base_diff[nb - 1] = form(nb, &[(one.clone(), un2(1, 2))]);
                }
                _ => {
                    return Err(CatalogError::BadParam {
                        id: id.into(),
                        name: "base".into(),
                        constraint: "\"abelian\" or \"nilpotent\"".into(),
                    })
                }
            }
            let base_lie = LieCS::with_default_names(nb, base_diff);
            let omega = standard_omega(l);
            let sigma_form = form(nb, &[(sigma, un2(1, 2))]);
            let (lie, _) = ex53_assemble(l, &base_lie, &omega, &sigma_form)
                .map_err(|constraint| CatalogError::BadParam {
                    id: id.into(),
                    name: "sigma".into(),
                    constraint,
                })?;
            Ok(lie)
        }
        _ => Err(CatalogError::UnknownId(id.to_string())),
    }
}

/// Ω = φ₁∧…∧φ_{2l} + φ_{2l+1}∧…∧φ_{4l} on the 4l-dimensional base.
pub fn standard_omega(l: usize) -> InvariantForm {
    let nb = 4 * l;
    let mut first = Mono::ONE;
    for k in 1..=2 * l {
        first.un |= 1 << (k - 1);
    }
    let mut second = Mono::ONE;
    for k in 2 * l + 1..=4 * l {
        second.un |= 1 << (k - 1);
    }
    form(nb, &[(Gq::one(), first), (Gq::one(), second)])
}

/// Assemble the (4l+3)-dimensional fibred fixture from a user-supplied
/// 4l-dimensional base: dφ_{4l+1} = dφ_{4l+2} = 0 and
/// dφ_{4l+3} = φ_{4l+1}∧φ_{4l+2} + σ. Returns the table together with
/// Γ = Ω∧φ_{4l+3}. Errors (with a constraint message) when σ is not d-closed
/// on the base or dimensions disagree.
pub fn ex53_assemble(
    l: usize,
    base: &LieCS,
    omega: &InvariantForm,
    sigma: &InvariantForm,
) -> Result<(LieCS, InvariantForm), String> {
    let nb = 4 * l;
    if base.n != nb {
        return Err(format!("base must have complex dimension 4l = {nb}"));
    }
    if !apply_differential(base, DiffOp::D, sigma).is_zero() {
        return Err("sigma must be d-closed on the base".to_string());
    }
    for (m, _) in sigma.terms() {
        if m.degree() != 2 || m.q() != 0 {
            return Err("sigma must be a (2,0)-form".to_string());
        }
    }
    let n = nb + 3;
    let lift = |f: &InvariantForm| -> InvariantForm {
        let mut out = Form::zero(n);
        for (m, c) in f.terms() {
            out.add_term(*m, c.clone());
        }
        out
    };
    let mut diff: Vec<InvariantForm> = (1..=nb).map(|k| lift(base.d_phi(k))).collect();
    diff.push(Form::zero(n)); // dφ_{4l+1}
    diff.push(Form::zero(n)); // dφ_{4l+2}
    let mut top = Form::zero(n);
    top.add_term(un2(nb + 1, nb + 2), Gq::one());
    let top = top.add(&lift(sigma));
    diff.push(top);
    let lie = LieCS::with_default_names(n, diff);
    let phi_last = lie.phi(n);
    let gamma = lift(omega).wedge(&phi_last);
    Ok((lie, gamma))
}

/// The contact witness Γ displayed for an entry, with its p, when one exists
/// at the given parameters.
pub fn contact_witness(
    id: &str,
    provided: &[(String, ParamValue)],
) -> Result<Option<(usize, InvariantForm)>, CatalogError> {
    let entry = entry(id)?;
    let values = resolve_params(&entry, provided)?;
    let p = Params { id, values };
    let lie = catalog_get(id, provided)?;
    let w = match id {
        "iwasawa" | "h15" => Some((1, lie.phi(3))),
        "nakamura" => Some((1, lie.phi(2).add(&lie.phi(3)))),
        "sl2c" => Some((1, lie.phi(1))),
        "ex5" => Some((1, lie.phi(2).sub(&lie.phi(3)))),
        "g8_Jprime" => Some((1, lie.phi(1).sub(&lie.phi(2)))),
        "g8_JA" => {
            let a = p.scalar("A")?;
            if a == -Gq::i() {
                Some((1, lie.phi(1).add(&lie.phi(2))))
            } else {
                None
            }
        }
        "uga07_b" => {
            let eps = p.scalar("eps")?;
            let rho = p.scalar("rho")?;
            let a = p.scalar("A")?;
            let b = p.scalar("B")?;
            let c = p.scalar("C")?;
            let d = p.scalar("D")?;
            let iwasawa_case = rho.is_one()
                && eps.is_zero()
                && a.is_zero()
                && b.is_zero()
                && c.is_zero()
                && d.is_zero();
            let h15_case = eps.is_one() && rho.is_one() && b.is_zero() && c.is_zero();
            if iwasawa_case || h15_case {
                Some((1, lie.phi(3)))
            } else {
                None
            }
        }
        "ex52" => {
            let w = lie
                .phi(4)
                .wedge(&lie.phi(5))
                .add(&lie.phi(5).wedge(&lie.phi(6)))
                .add(&lie.phi(6).wedge(&lie.phi(7)));
            Some((3, lie.phi(3).wedge(&w)))
        }
        "ex53" => {
            let l = is_small_int(&p.scalar("l")?).unwrap() as usize;
            let omega = standard_omega(l);
            let mut lifted = Form::zero(lie.n);
            for (m, c) in omega.terms() {
                lifted.add_term(*m, c.clone());
            }
            Some((2 * l + 1, lifted.wedge(&lie.phi(lie.n))))
        }
        _ => None,
    };
    Ok(w)
}

/// Documented admissible-parameter grids, used by the validation sweep and
/// the classification sweeps. Unit-modulus points are exact rational points
/// on the circle (1, i, 3/5+4/5i, -1).
pub fn test_grid(id: &str) -> Vec<Vec<(String, ParamValue)>> {
    let s = |v: Gq| ParamValue::Scalar(v);
    let named = |pairs: &[(&str, Gq)]| -> Vec<(String, ParamValue)> {
        pairs.iter().map(|(n, v)| (n.to_string(), s(v.clone()))).collect()
    };
    let e_points = [gq(1), Gq::i(), Gq::new(
        num::rational::BigRational::new(3.into(), 5.into()),
        num::rational::BigRational::new(4.into(), 5.into()),
    )];
    match id {
        "torus" => vec![named(&[("n", gq(3))])],
        "iwasawa" | "nakamura" | "sl2c" | "h15" | "ex5" | "g8_J" | "g8_Jprime" | "g9" | "g10" => {
            vec![vec![]]
        }
        "uga07_a" => {
            let mut out = Vec::new();
            for e in &e_points {
                for a in [gq(0), gq(1), Gq::i()] {
                    for b in [gq(1), gq(-1), gq(2)] {
                        out.push(named(&[("E", e.clone()), ("A", a.clone()), ("b", b)]));
                    }
                }
            }
            out
        }
        "uga07_b" => {
            let mut out = Vec::new();
            for eps in 0..=1i64 {
                for rho in 0..=1i64 {
                    for a in 0..=1i64 {
                        for b in 0..=1i64 {
                            for c in 0..=1i64 {
                                for d in 0..=1i64 {
                                    out.push(named(&[
                                        ("eps", gq(eps)),
                                        ("rho", gq(rho)),
                                        ("A", gq(a)),
                                        ("B", gq(b)),
                                        ("C", gq(c)),
                                        ("D", gq(d)),
                                    ]));
                                }
                            }
                        }
                    }
                }
            }
            out
        }
        "g1_g2" => e_points.iter().chain([gq(-1)].iter()).map(|a| named(&[("A", a.clone())])).collect(),
        "g3" => [gq(1), gq(2), Gq::from_frac(1, 2)].iter().map(|x| named(&[("x", x.clone())])).collect(),
        "g4_g7" => {
            // d² = 0 ties A to the G-pattern: imaginary A with diagonal G,
            // real A with off-diagonal G.
            let mut out = Vec::new();
            for (a, g11, g12, g22) in [
                (Gq::i(), gq(1), gq(0), gq(0)),
                (Gq::i(), gq(0), gq(0), gq(1)),
                (Gq::i(), gq(1), gq(0), gq(-1)),
                (-Gq::i(), gq(2), gq(0), gq(0)),
                (gq(1), gq(0), gq(1), gq(0)),
                (gq(1), gq(0), Gq::i(), gq(0)),
                (gq(-1), gq(0), Gq::from_ints(1, 1), gq(0)),
            ] {
                out.push(named(&[("A", a), ("G11", g11), ("G12", g12), ("G22", g22)]));
            }
            out
        }
        "g8_JA" => [-Gq::i(), Gq::i(), &gq(2) * &Gq::i(), Gq::from_ints(1, -1)]
            .iter()
            .map(|a| named(&[("A", a.clone())]))
            .collect(),
        "ex52" => vec![named(&[("eps", gq(0))]), named(&[("eps", gq(1))])],
        "ex53" => vec![
            vec![
                ("l".to_string(), s(gq(1))),
                ("base".to_string(), ParamValue::Text("abelian".into())),
                ("sigma".to_string(), s(gq(0))),
            ],
            vec![
                ("l".to_string(), s(gq(1))),
                ("base".to_string(), ParamValue::Text("nilpotent".into())),
                ("sigma".to_string(), s(gq(0))),
            ],
            vec![
                ("l".to_string(), s(gq(1))),
                ("base".to_string(), ParamValue::Text("abelian".into())),
                ("sigma".to_string(), s(gq(1))),
            ],
        ],
        _ => vec![vec![]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::validate;

    #[test]
    fn every_entry_validates_on_its_grid() {
        for e in entries() {
            for params in test_grid(e.id) {
                let lie = catalog_get(e.id, &params).unwrap_or_else(|err| {
                    panic!("{} with {params:?}: {err}", e.id)
                });
                let rep = validate(&lie);
                assert!(
                    rep.jacobi_ok && rep.integrable,
                    "{} with {params:?} fails validation: {rep:?}",
                    e.id
                );
            }
        }
    }

    #[test]
    fn complex_parallelisable_entries_detected() {
        for id in ["iwasawa", "nakamura", "sl2c"] {
            let rep = validate(&catalog_get(id, &[]).unwrap());
            assert!(rep.complex_parallelisable, "{id} is complex parallelisable");
        }
        for id in ["h15", "ex5"] {
            let rep = validate(&catalog_get(id, &[]).unwrap());
            assert!(!rep.complex_parallelisable, "{id} is not complex parallelisable");
        }
    }

    #[test]
    fn nilpotency_and_solvability_flags() {
        let rep = validate(&catalog_get("iwasawa", &[]).unwrap());
        assert!(rep.nilpotent && rep.solvable);
        assert_eq!(rep.lower_central_series_dims, vec![6, 2, 0]);
        let rep = validate(&catalog_get("nakamura", &[]).unwrap());
        assert!(!rep.nilpotent && rep.solvable);
        let rep = validate(&catalog_get("sl2c", &[]).unwrap());
        assert!(!rep.nilpotent && !rep.solvable);
        let rep = validate(&catalog_get("h15", &[]).unwrap());
        assert!(rep.nilpotent);
        let rep = validate(&catalog_get("ex52", &[("eps".into(), ParamValue::Scalar(gq(1)))]).unwrap());
        assert!(rep.nilpotent);
    }

    #[test]
    fn parameter_constraints_enforced() {
        // |E| != 1
        let err = catalog_get(
            "uga07_a",
            &[
                ("E".into(), ParamValue::Scalar(gq(2))),
                ("b".into(), ParamValue::Scalar(gq(1))),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, CatalogError::BadParam { ref name, .. } if name == "E"), "{err}");
        // b imaginary
        let err = catalog_get(
            "uga07_a",
            &[
                ("E".into(), ParamValue::Scalar(gq(1))),
                ("b".into(), ParamValue::Scalar(Gq::i())),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, CatalogError::BadParam { ref name, .. } if name == "b"));
        // Im A = 0 for J_A
        let err =
            catalog_get("g8_JA", &[("A".into(), ParamValue::Scalar(gq(1)))]).unwrap_err();
        assert!(matches!(err, CatalogError::BadParam { ref name, .. } if name == "A"));
        // x = 0 for g3
        let err = catalog_get("g3", &[("x".into(), ParamValue::Scalar(gq(0)))]).unwrap_err();
        assert!(matches!(err, CatalogError::BadParam { ref name, .. } if name == "x"));
        // unknown id and unknown param
        assert!(matches!(catalog_get("nope", &[]), Err(CatalogError::UnknownId(_))));
        assert!(matches!(
            catalog_get("iwasawa", &[("z".into(), ParamValue::Scalar(gq(1)))]),
            Err(CatalogError::UnknownParam { .. })
        ));
        // missing required param
        assert!(matches!(
            catalog_get("uga07_a", &[("E".into(), ParamValue::Scalar(gq(1)))]),
            Err(CatalogError::MissingParam { ref name, .. }) if name == "b"
        ));
    }

    #[test]
    fn ex52_displayed_equations() {
        let lie = catalog_get("ex52", &[("eps".into(), ParamValue::Scalar(gq(1)))]).unwrap();
        assert_eq!(lie.n, 7);
        assert_eq!(lie.d_phi(6), &form(7, &[(Gq::one(), un2(2, 5))]));
        assert_eq!(lie.d_phi(7), &form(7, &[(Gq::one(), un2(2, 6))]));
    }

    #[test]
    fn ex53_is_7_dim_with_top_equation() {
        let lie = catalog_get("ex53", &[]).unwrap();
        assert_eq!(lie.n, 7);
        assert_eq!(lie.d_phi(7), &form(7, &[(Gq::one(), un2(5, 6))]));
        // and sigma enters the top equation
        let lie = catalog_get("ex53", &[("sigma".into(), ParamValue::Scalar(gq(1)))]).unwrap();
        assert_eq!(
            lie.d_phi(7),
            &form(7, &[(Gq::one(), un2(5, 6)), (Gq::one(), un2(1, 2))])
        );
    }

    #[test]
    fn g8_ja_at_minus_i_is_nakamura_shaped() {
        let lie =
            catalog_get("g8_JA", &[("A".into(), ParamValue::Scalar(-Gq::i()))]).unwrap();
        let twoi = &gq(2) * &Gq::i();
        assert_eq!(lie.d_phi(1), &form(3, &[(twoi.clone(), un2(1, 3))]));
        assert_eq!(lie.d_phi(2), &form(3, &[(-&twoi, un2(2, 3))]));
        assert!(lie.d_phi(3).is_zero());
    }

    #[test]
    fn uga07_b_example_point_matches_h15_table() {
        let params: Vec<(String, ParamValue)> = [
            ("eps", 1),
            ("rho", 1),
            ("A", 1),
            ("B", 0),
            ("C", 0),
            ("D", 1),
        ]
        .iter()
        .map(|(n, v)| (n.to_string(), ParamValue::Scalar(gq(*v))))
        .collect();
        let lie = catalog_get("uga07_b", &params).unwrap();
        let h15 = catalog_get("h15", &[]).unwrap();
        assert_eq!(lie.diff, h15.diff, "ε=1 kills the A and D terms");
    }
}
