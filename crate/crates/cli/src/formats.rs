//! File formats and textual grammars owned by the CLI.
//!
//! Structure files are JSON documents describing a differential table; form
//! expressions are the one-line grammar `c*phi1^phi2b + ...` used on the
//! command line (tangent-valued forms end each term with an `xi{k}` factor).
//! Scalars use the textual forms of the scalar module; a coefficient
//! containing an interior sign must be parenthesised, e.g. `(1/2+3/4*i)*phi1`.

use pcontact_core::exterior::{Form, Mono, VectorForm};
use pcontact_core::invariant::{InvariantForm, InvariantVectorForm, LieCS};
use pcontact_core::scalars::Gq;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(msg.into()))
}

// ---------------------------------------------------------------------------
// structure files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: CoeffJson,
    factors: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct StructureJson {
    name: String,
    n: usize,
    basis: Vec<String>,
    d: serde_json::Map<String, Value>,
}

/// Parse a structure file. The table is checked for well-formedness only;
/// run [`pcontact_core::invariant::validate`] for the mathematical gates.
pub fn parse_structure(text: &str) -> Result<LieCS, FormatError> {
    let doc: StructureJson =
        serde_json::from_str(text).map_err(|e| FormatError(format!("invalid JSON: {e}")))?;
    let n = doc.n;
    if n == 0 || n > 60 {
        return err(format!("n = {n} out of range"));
    }
    if doc.basis.len() != n {
        return err(format!("basis has {} labels, expected n = {n}", doc.basis.len()));
    }
    let mut diff = vec![Form::zero(n); n];
    for (key, value) in &doc.d {
        let k: usize = key
            .parse()
            .map_err(|_| FormatError(format!("d key {key:?} is not an index")))?;
        if k < 1 || k > n {
            return err(format!("d key {k} out of range 1..{n}"));
        }
        let terms: Vec<TermJson> = serde_json::from_value(value.clone())
            .map_err(|e| FormatError(format!("d.{k}: {e}")))?;
        let mut f = Form::zero(n);
        for (ti, t) in terms.iter().enumerate() {
            let re = Gq::parse_text(&t.coeff.re)
                .map_err(|e| FormatError(format!("d.{k}[{ti}].coeff.re: {e}")))?;
            let im = Gq::parse_text(&t.coeff.im)
                .map_err(|e| FormatError(format!("d.{k}[{ti}].coeff.im: {e}")))?;
            if !re.is_real() || !im.is_real() {
                return err(format!("d.{k}[{ti}]: coeff components must be rational"));
            }
            let coeff = Gq::new(re.re, im.re);
            if t.factors.len() != 2 {
                return err(format!(
                    "d.{k}[{ti}]: expected 2 factors, found {}",
                    t.factors.len()
                ));
            }
            let parse_factor = |s: &str| -> Result<(usize, bool), FormatError> {
                let (body, barred) = match s.strip_suffix('b') {
                    Some(b) => (b, true),
                    None => (s, false),
                };
                let idx: usize = body
                    .parse()
                    .map_err(|_| FormatError(format!("d.{k}[{ti}]: bad factor {s:?}")))?;
                if idx < 1 || idx > n {
                    return err(format!("d.{k}[{ti}]: factor {s:?} out of range"));
                }
                Ok((idx, barred))
            };
            let (i1, b1) = parse_factor(&t.factors[0])?;
            let (i2, b2) = parse_factor(&t.factors[1])?;
            // canonical order: unbarred before barred, ascending within a kind
            let canonical = match (b1, b2) {
                (false, true) => true,
                (true, false) => false,
                _ => i1 < i2,
            };
            if !canonical {
                return err(format!(
                    "d.{k}[{ti}]: factors [{:?}, {:?}] are not canonically ordered",
                    t.factors[0], t.factors[1]
                ));
            }
            let mono = match (b1, b2) {
                (false, false) => Mono { un: (1 << (i1 - 1)) | (1 << (i2 - 1)), bar: 0 },
                (false, true) => Mono { un: 1 << (i1 - 1), bar: 1 << (i2 - 1) },
                (true, true) => Mono { un: 0, bar: (1 << (i1 - 1)) | (1 << (i2 - 1)) },
                (true, false) => unreachable!("rejected above"),
            };
            f.add_term(mono, coeff);
        }
        diff[k - 1] = f;
    }
    Ok(LieCS::new(n, doc.basis, diff))
}

fn rat_text(r: &pcontact_core::Rational) -> String {
    pcontact_core::scalars::rational_text(r)
}

/// Emit the canonical structure file for a table: keys in numeric order,
/// terms in canonical monomial order, scalars in canonical text form.
pub fn emit_structure(name: &str, lie: &LieCS) -> String {
    let mut d = serde_json::Map::new();
    for k in 1..=lie.n {
        let f = lie.d_phi(k);
        if f.is_zero() {
            continue;
        }
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let mut factors: Vec<String> =
                m.un_indices().iter().map(|i| i.to_string()).collect();
            factors.extend(m.bar_indices().iter().map(|i| format!("{i}b")));
            terms.push(TermJson {
                coeff: CoeffJson { re: rat_text(&c.re), im: rat_text(&c.im) },
                factors,
            });
        }
        d.insert(k.to_string(), serde_json::to_value(terms).unwrap());
    }
    let doc = StructureJson { name: name.to_string(), n: lie.n, basis: lie.names.clone(), d };
    let mut out = serde_json::to_string_pretty(&doc).unwrap();
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// form expressions
// ---------------------------------------------------------------------------

enum TermBody {
    Scalar(Gq),
    Mono { coeff: Gq, mono: Mono, xi: Option<usize> },
}

/// Split an expression into signed terms at top-level +/- (parentheses
/// protect scalar-internal signs).
fn split_terms(expr: &str) -> Result<Vec<(bool, String)>, FormatError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut neg = false;
    let mut seen_any = false;
    for (i, ch) in expr.chars().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return err("unbalanced ')'");
                }
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if i == 0 || cur.trim().is_empty() && !seen_any {
                    // leading sign of the first term
                    if ch == '-' {
                        neg = !neg;
                    }
                    seen_any = true;
                } else if cur.trim().is_empty() {
                    return err(format!("empty term before {ch:?}"));
                } else {
                    out.push((neg, cur.trim().to_string()));
                    cur = String::new();
                    neg = ch == '-';
                }
            }
            _ => {
                if !ch.is_whitespace() {
                    seen_any = true;
                }
                cur.push(ch);
            }
        }
    }
    if depth != 0 {
        return err("unbalanced '('");
    }
    if cur.trim().is_empty() {
        return err("trailing operator or empty expression");
    }
    out.push((neg, cur.trim().to_string()));
    Ok(out)
}

fn parse_term(n: usize, body: &str, allow_xi: bool) -> Result<TermBody, FormatError> {
    // optional scalar prefix
    let body = body.trim();
    let (scalar, rest) = if let Some(stripped) = body.strip_prefix('(') {
        let close = stripped
            .find(')')
            .ok_or_else(|| FormatError("unbalanced '(' in term".into()))?;
        let scalar = Gq::parse_text(&stripped[..close]).map_err(|e| FormatError(e.to_string()))?;
        let rest = stripped[close + 1..].trim_start_matches('*').trim();
        (scalar, rest)
    } else {
        match body.find(|c| c == 'p' || c == 'x') {
            Some(0) | None => (Gq::one(), body),
            Some(pos) => {
                let raw = body[..pos].trim_end_matches('*').trim();
                let scalar = if raw.is_empty() {
                    Gq::one()
                } else {
                    Gq::parse_text(raw).map_err(|e| FormatError(e.to_string()))?
                };
                (scalar, body[pos..].trim())
            }
        }
    };
    if rest.is_empty() {
        return Ok(TermBody::Scalar(scalar));
    }
    let mut mono = Mono::ONE;
    let mut sign = false;
    let mut xi = None;
    let mut degree_seen: Vec<(bool, usize)> = Vec::new();
    for factor in rest.split('^') {
        let factor = factor.trim();
        if let Some(idx) = factor.strip_prefix("xi") {
            if !allow_xi {
                return err(format!("xi factor {factor:?} not allowed in a scalar form"));
            }
            if xi.is_some() {
                return err("more than one xi factor in a term");
            }
            let k: usize =
                idx.parse().map_err(|_| FormatError(format!("bad factor {factor:?}")))?;
            if k < 1 || k > n {
                return err(format!("xi index {k} out of range 1..{n}"));
            }
            xi = Some(k);
            continue;
        }
        if xi.is_some() {
            return err("the xi factor must come last in a term");
        }
        let Some(idx) = factor.strip_prefix("phi") else {
            return err(format!("bad factor {factor:?}"));
        };
        let (body, barred) = match idx.strip_suffix('b') {
            Some(b) => (b, true),
            None => (idx, false),
        };
        let k: usize = body.parse().map_err(|_| FormatError(format!("bad factor {factor:?}")))?;
        if k < 1 || k > n {
            return err(format!("phi index {k} out of range 1..{n}"));
        }
        degree_seen.push((barred, k));
        let single = if barred { Mono::single_bar(k) } else { Mono::single_un(k) };
        match pcontact_core::exterior::mono_wedge(mono, single) {
            Some((m2, s)) => {
                mono = m2;
                sign ^= s;
            }
            None => return err(format!("repeated factor {factor:?}")),
        }
    }
    let coeff = if sign { -scalar } else { scalar };
    Ok(TermBody::Mono { coeff, mono, xi })
}

/// Parse a scalar-valued form expression.
pub fn parse_form(n: usize, expr: &str) -> Result<InvariantForm, FormatError> {
    let mut out = Form::zero(n);
    for (neg, term) in split_terms(expr)? {
        match parse_term(n, &term, false)? {
            TermBody::Scalar(c) => {
                let c = if neg { -c } else { c };
                out.add_term(Mono::ONE, c);
            }
            TermBody::Mono { coeff, mono, .. } => {
                let c = if neg { -coeff } else { coeff };
                out.add_term(mono, c);
            }
        }
    }
    Ok(out)
}

/// Parse a tangent-valued form expression; every term must end with `xi{k}`.
pub fn parse_vector_form(n: usize, expr: &str) -> Result<InvariantVectorForm, FormatError> {
    let mut out = VectorForm::zero(n);
    for (neg, term) in split_terms(expr)? {
        match parse_term(n, &term, true)? {
            TermBody::Mono { coeff, mono, xi: Some(k) } => {
                let c = if neg { -coeff } else { coeff };
                out.add_component(k, Form::from_term(n, mono, c));
            }
            TermBody::Scalar(c) if c.is_zero() => {}
            _ => return err(format!("term {term:?} lacks an xi factor")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcontact_core::catalog::catalog_get;

    #[test]
    fn structure_round_trip_iwasawa() {
        let lie = catalog_get("iwasawa", &[]).unwrap();
        let text = emit_structure("iwasawa", &lie);
        let parsed = parse_structure(&text).unwrap();
        assert_eq!(parsed, lie);
        // emit(parse(file)) is byte-identical for canonical files
        assert_eq!(emit_structure("iwasawa", &parsed), text);
    }

    #[test]
    fn structure_rejects_bad_term_with_name() {
        let bad = r#"{"name":"x","n":3,"basis":["a","b","c"],
            "d":{"3":[{"coeff":{"re":"1","im":"0"},"factors":["2","1"]}]}}"#;
        let e = parse_structure(bad).unwrap_err();
        assert!(e.0.contains("canonically ordered"), "{e}");
        let bad = r#"{"name":"x","n":3,"basis":["a","b","c"],
            "d":{"3":[{"coeff":{"re":"1/0","im":"0"},"factors":["1","2"]}]}}"#;
        let e = parse_structure(bad).unwrap_err();
        assert!(e.0.contains("d.3[0].coeff.re"), "{e}");
        let bad = r#"{"name":"x","n":3,"basis":["a","b","c"],
            "d":{"9":[]}}"#;
        assert!(parse_structure(bad).is_err());
    }

    #[test]
    fn form_expressions() {
        let f = parse_form(3, "phi3").unwrap();
        assert_eq!(f, Form::from_term(3, Mono::single_un(3), Gq::one()));
        let f = parse_form(3, "-phi1^phi2 + 2*phi3^phi1b").unwrap();
        assert_eq!(*f.coeff(&Mono { un: 0b011, bar: 0 }).unwrap(), -Gq::one());
        assert_eq!(*f.coeff(&Mono { un: 0b100, bar: 0b001 }).unwrap(), Gq::from_int(2));
        // reordering sign
        let g = parse_form(3, "phi2^phi1").unwrap();
        assert_eq!(g, parse_form(3, "-phi1^phi2").unwrap());
        // parenthesised complex scalar
        let f = parse_form(3, "(3/5+4/5*i)*phi1").unwrap();
        let c = f.coeff(&Mono::single_un(1)).unwrap();
        assert_eq!(c.to_text(), "3/5+4/5*i");
        // round-trip with the renderer
        let h = parse_form(3, "phi1^phi2 - 2*phi3^phi1b").unwrap();
        let s = pcontact_core::exterior::render_form(&h, "phi", None);
        assert_eq!(parse_form(3, &s).unwrap(), h);
    }

    #[test]
    fn vector_form_expressions() {
        let v = parse_vector_form(3, "phi1b^xi1 + phi2b^xi2").unwrap();
        assert_eq!(v.component(1).unwrap(), &Form::from_term(3, Mono::single_bar(1), Gq::one()));
        assert_eq!(v.component(2).unwrap(), &Form::from_term(3, Mono::single_bar(2), Gq::one()));
        let v = parse_vector_form(3, "-xi3").unwrap();
        assert_eq!(v.component(3).unwrap(), &Form::from_term(3, Mono::ONE, -Gq::one()));
        assert!(parse_vector_form(3, "phi1b").is_err(), "missing xi factor");
        assert!(parse_form(3, "phi1^xi1").is_err(), "xi illegal in scalar forms");
        // renderer round-trip
        let s = pcontact_core::exterior::render_vector_form(&v, "phi");
        assert_eq!(parse_vector_form(3, &s).unwrap(), v);
    }

    #[test]
    fn expression_errors() {
        assert!(parse_form(3, "").is_err());
        assert!(parse_form(3, "phi1 +").is_err());
        assert!(parse_form(3, "phi9").is_err());
        assert!(parse_form(3, "phi1^phi1").is_err());
        assert!(parse_form(3, "wedge").is_err());
        assert!(parse_form(3, "(1/2").is_err());
    }
}
