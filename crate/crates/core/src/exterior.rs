//! Generic exterior algebra on a coframe φ_1,…,φ_n and its conjugates.
//!
//! A basis monomial is φ_I∧φ̄_J with strictly increasing index tuples, all
//! unbarred factors first (ascending), then all barred factors (ascending).
//! Tuples are stored as bitmasks, so every sign is an inversion count.
//!
//! The coefficient ring is generic: scalars ℚ(i) give the invariant forms of
//! a Lie algebra, polynomials in z, z̄ give the flat-model forms on ℂ^n. Both
//! worlds therefore share one set of wedge/contraction sign conventions:
//! the interior product acts from the left, and contraction by a
//! vector-valued (0,q)-form wedges the form part on the left.

use std::collections::BTreeMap;
use std::fmt;

/// Coefficient ring operations needed by the form algebra.
pub trait Coeff: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coeff for crate::scalars::Gq {
    fn is_zero(&self) -> bool {
        crate::scalars::Gq::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Exterior monomial φ_I∧φ̄_J; bit k−1 set in `un`/`bar` means index k present.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono {
    pub un: u64,
    pub bar: u64,
}

impl Mono {
    pub const ONE: Mono = Mono { un: 0, bar: 0 };

    pub fn p(&self) -> usize {
        self.un.count_ones() as usize
    }

    pub fn q(&self) -> usize {
        self.bar.count_ones() as usize
    }

    pub fn degree(&self) -> usize {
        self.p() + self.q()
    }

    pub fn single_un(k: usize) -> Mono {
        Mono { un: 1 << (k - 1), bar: 0 }
    }

    pub fn single_bar(k: usize) -> Mono {
        Mono { un: 0, bar: 1 << (k - 1) }
    }

    /// 1-based indices of the unbarred factors, ascending.
    pub fn un_indices(&self) -> Vec<usize> {
        bits(self.un)
    }

    /// 1-based indices of the barred factors, ascending.
    pub fn bar_indices(&self) -> Vec<usize> {
        bits(self.bar)
    }
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        out.push(k + 1);
        m &= m - 1;
    }
    out
}

/// Parity of the inversion count when the sorted set `b` is appended after the
/// sorted set `a` and the concatenation is re-sorted: Σ_{y∈b} |{x∈a : x > y}|.
fn merge_parity(a: u64, b: u64) -> bool {
    let mut parity = false;
    let mut m = b;
    while m != 0 {
        let y = m.trailing_zeros();
        let above = a >> (y + 1);
        if above.count_ones() % 2 == 1 {
            parity = !parity;
        }
        m &= m - 1;
    }
    parity
}

/// Wedge of two monomials: `None` on a repeated factor, else the merged
/// monomial and the sign (true = negative).
pub fn mono_wedge(a: Mono, b: Mono) -> Option<(Mono, bool)> {
    if a.un & b.un != 0 || a.bar & b.bar != 0 {
        return None;
    }
    // move b's unbarred block left past a's barred block
    let mut parity = (a.q() * b.p()) % 2 == 1;
    parity ^= merge_parity(a.un, b.un);
    parity ^= merge_parity(a.bar, b.bar);
    Some((Mono { un: a.un | b.un, bar: a.bar | b.bar }, parity))
}

/// Left interior product by the basis vector ξ_k (kills barred factors of
/// nothing: ξ_k pairs only with φ_k). `None` when φ_k is absent.
pub fn mono_contract_un(m: Mono, k: usize) -> Option<(Mono, bool)> {
    let bit = 1u64 << (k - 1);
    if m.un & bit == 0 {
        return None;
    }
    let below = m.un & (bit - 1);
    Some((Mono { un: m.un & !bit, bar: m.bar }, below.count_ones() % 2 == 1))
}

/// Conjugation at the monomial level: φ_I∧φ̄_J ↦ (−1)^{|I||J|} φ_J∧φ̄_I.
pub fn mono_conj(m: Mono) -> (Mono, bool) {
    (Mono { un: m.bar, bar: m.un }, (m.p() * m.q()) % 2 == 1)
}

/// A (generally inhomogeneous) element of the exterior algebra with
/// coefficients in `C`. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Form<C: Coeff> {
    pub n: usize,
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> Form<C> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 60, "coframe too large for bitmask encoding");
        Form { n, terms: BTreeMap::new() }
    }

    pub fn from_term(n: usize, m: Mono, c: C) -> Self {
        let mut f = Form::zero(n);
        f.add_term(m, c);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            (m.un | m.bar) >> self.n == 0,
            "monomial index out of range for n = {}",
            self.n
        );
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        out.add_assign_form(other);
        out
    }

    /// In-place sum, used by the accumulation loops.
    pub fn add_assign_form(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        for (m, c) in other.terms() {
            self.add_term(*m, c.clone());
        }
    }

    /// Accumulate `a ∧ b` into `self` without building the product form.
    pub fn add_wedge_of(&mut self, a: &Self, b: &Self) {
        assert_eq!(a.n, b.n, "dimension mismatch");
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((m, negative)) = mono_wedge(*ma, *mb) {
                    let c = ca.mul(cb);
                    self.add_term(m, if negative { c.neg() } else { c });
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Form { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        let mut out = Form::zero(self.n);
        for (m, x) in self.terms() {
            out.add_term(*m, x.mul(c));
        }
        out
    }

    /// Graded-commutative product in the canonical-order sign convention.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Form::zero(self.n);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if let Some((m, negative)) = mono_wedge(*ma, *mb) {
                    let c = ca.mul(cb);
                    out.add_term(m, if negative { c.neg() } else { c });
                }
            }
        }
        out
    }

    /// Left interior product ξ_k⌟·, an antiderivation of degree −1.
    pub fn contract_xi(&self, k: usize) -> Self {
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms() {
            if let Some((m2, negative)) = mono_contract_un(*m, k) {
                out.add_term(m2, if negative { c.neg() } else { c.clone() });
            }
        }
        out
    }

    /// The component of pure bidegree (p,q).
    pub fn bidegree_part(&self, p: usize, q: usize) -> Self {
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms() {
            if m.p() == p && m.q() == q {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// `Some((p,q))` when every term has the same bidegree (the zero form is
    /// homogeneous of any bidegree and reports `None`).
    pub fn homogeneous_bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let pq = (first.p(), first.q());
        for m in it {
            if (m.p(), m.q()) != pq {
                return None;
            }
        }
        Some(pq)
    }

    /// All bidegrees present.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.terms.keys().map(|m| (m.p(), m.q())).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Coordinates with respect to an explicit monomial basis (missing
    /// monomials contribute nothing; panics if a term is outside the basis —
    /// callers pass a complete basis of the relevant bidegree).
    pub fn coordinates(&self, basis: &[Mono], zero: &C) -> Vec<C> {
        let mut out = vec![zero.clone(); basis.len()];
        let index: BTreeMap<Mono, usize> =
            basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        for (m, c) in self.terms() {
            let i = *index.get(m).unwrap_or_else(|| panic!("term {m:?} outside basis"));
            out[i] = c.clone();
        }
        out
    }
}

/// A `T^{1,0}`-valued form: one coefficient form per frame vector ξ_k.
/// Zero components are omitted; all components of a well-formed value share
/// one bidegree (enforced where the operations require it).
#[derive(Clone, PartialEq, Eq)]
pub struct VectorForm<C: Coeff> {
    pub n: usize,
    comps: BTreeMap<usize, Form<C>>,
}

impl<C: Coeff> VectorForm<C> {
    pub fn zero(n: usize) -> Self {
        VectorForm { n, comps: BTreeMap::new() }
    }

    pub fn from_component(n: usize, k: usize, f: Form<C>) -> Self {
        let mut v = VectorForm::zero(n);
        v.add_component(k, f);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_component(&mut self, k: usize, f: Form<C>) {
        assert!(k >= 1 && k <= self.n, "frame index out of range");
        if f.is_zero() {
            return;
        }
        match self.comps.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&f);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn component(&self, k: usize) -> Option<&Form<C>> {
        self.comps.get(&k)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Form<C>)> {
        self.comps.iter().map(|(k, f)| (*k, f))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, f) in other.components() {
            out.add_component(k, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        VectorForm { n: self.n, comps: self.comps.iter().map(|(k, f)| (*k, f.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = VectorForm::zero(self.n);
        for (k, f) in self.components() {
            out.add_component(k, f.scale(c));
        }
        out
    }

    /// θ⌟u := Σ_k (component_k) ∧ (ξ_k⌟u), form part wedged on the left.
    pub fn contract_into(&self, u: &Form<C>) -> Form<C> {
        assert_eq!(self.n, u.n, "dimension mismatch");
        let mut out = Form::zero(self.n);
        for (k, f) in self.components() {
            let inner = u.contract_xi(k);
            if !inner.is_zero() {
                out.add_wedge_of(f, &inner);
            }
        }
        out
    }

    /// Shared form bidegree (0,q) of the components, `None` for the zero value
    /// or mixed components.
    pub fn form_bidegree(&self) -> Option<(usize, usize)> {
        let mut result: Option<(usize, usize)> = None;
        for (_, f) in self.components() {
            match (result, f.homogeneous_bidegree()) {
                (_, None) => return None,
                (None, Some(pq)) => result = Some(pq),
                (Some(a), Some(b)) if a == b => {}
                _ => return None,
            }
        }
        result
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_form(self, "phi", None))
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_form(self, "phi", None))
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for VectorForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_vector_form(self, "phi"))
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for VectorForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_vector_form(self, "phi"))
    }
}

/// Render a form in the CLI grammar, e.g. `-1*phi1^phi2 + 2*phi3^phi1b`.
/// Coefficients that are not plain `c` tokens get parenthesised.
pub fn render_form<C: Coeff + fmt::Display>(
    form: &Form<C>,
    stem: &str,
    names: Option<&[String]>,
) -> String {
    if form.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (m, c) in form.terms() {
        let mono = render_mono(*m, stem, names);
        let coeff = c.to_string();
        let coeff = if needs_parens(&coeff) { format!("({coeff})") } else { coeff };
        let s = if mono.is_empty() {
            coeff
        } else if coeff == "1" {
            mono
        } else if coeff == "-1" {
            format!("-{mono}")
        } else {
            format!("{coeff}*{mono}")
        };
        parts.push(s);
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(stripped) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

fn needs_parens(c: &str) -> bool {
    c.bytes().skip(1).any(|b| b == b'+' || b == b'-') || c.contains('*')
}

pub fn render_mono(m: Mono, stem: &str, names: Option<&[String]>) -> String {
    let name = |k: usize| -> String {
        match names {
            Some(ns) => ns[k - 1].clone(),
            None => format!("{stem}{k}"),
        }
    };
    let mut factors: Vec<String> = m.un_indices().iter().map(|&k| name(k)).collect();
    factors.extend(m.bar_indices().iter().map(|&k| format!("{}b", name(k))));
    factors.join("^")
}

/// Render a vector form, e.g. `phi1b^xi1 - phi2b^xi3`; the frame factor comes last.
pub fn render_vector_form<C: Coeff + fmt::Display>(v: &VectorForm<C>, stem: &str) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, f) in v.components() {
        for (m, c) in f.terms() {
            let mono = render_mono(*m, stem, None);
            let coeff = c.to_string();
            let coeff = if needs_parens(&coeff) { format!("({coeff})") } else { coeff };
            let tail = if mono.is_empty() { format!("xi{k}") } else { format!("{mono}^xi{k}") };
            let s = match coeff.as_str() {
                "1" => tail,
                "-1" => format!("-{tail}"),
                _ => format!("{coeff}*{tail}"),
            };
            parts.push(s);
        }
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(stripped) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

/// All monomials of bidegree (p,q), ordered lexicographically by the unbarred
/// tuple then the barred tuple. This is the fixed basis used for every matrix.
pub fn basis_pq(n: usize, p: usize, q: usize) -> Vec<Mono> {
    let uns = subsets(n, p);
    let bars = subsets(n, q);
    let mut out = Vec::with_capacity(uns.len() * bars.len());
    for u in &uns {
        for b in &bars {
            out.push(Mono { un: *u, bar: *b });
        }
    }
    out
}

/// k-subsets of {1..n} as bitmasks in lexicographic order of the index tuples.
pub fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(n: usize, k: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n {
            if n - i + 1 < k {
                break;
            }
            rec(n, k - 1, i + 1, acc | (1 << (i - 1)), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 1, 0, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Gq;

    fn phi(n: usize, k: usize) -> Form<Gq> {
        Form::from_term(n, Mono::single_un(k), Gq::one())
    }

    fn phibar(n: usize, k: usize) -> Form<Gq> {
        Form::from_term(n, Mono::single_bar(k), Gq::one())
    }

    #[test]
    fn wedge_antisymmetry() {
        let a = phi(3, 1);
        let b = phi(3, 2);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        assert_eq!(ba, ab.neg(), "φ₂∧φ₁ = −φ₁∧φ₂");
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn wedge_canonical_order_sign() {
        // φ̄₁∧φ₂ = −φ₂∧φ̄₁
        let a = phibar(3, 1);
        let b = phi(3, 2);
        let left = a.wedge(&b);
        let canonical = Form::from_term(3, Mono { un: 0b10, bar: 0b01 }, -Gq::one());
        assert_eq!(left, canonical);
    }

    #[test]
    fn contraction_is_left_antiderivation() {
        // ξ₂⌟(φ₁∧φ₂) = −φ₁
        let u = phi(3, 1).wedge(&phi(3, 2));
        assert_eq!(u.contract_xi(2), phi(3, 1).neg());
        assert_eq!(u.contract_xi(1), phi(3, 2));
        assert!(u.contract_xi(3).is_zero());
        // barred factors are transparent to ξ contraction
        let v = phi(3, 1).wedge(&phibar(3, 2));
        assert_eq!(v.contract_xi(1), phibar(3, 2));
    }

    #[test]
    fn vector_contraction_wedges_on_the_left() {
        // (φ̄₂⊗ξ₁)⌟(φ₁∧φ₂) = φ̄₂∧φ₂ = −φ₂∧φ̄₂
        let n = 2;
        let theta = VectorForm::from_component(n, 1, phibar(n, 2));
        let u = phi(n, 1).wedge(&phi(n, 2));
        let expected = Form::from_term(n, Mono { un: 0b10, bar: 0b10 }, -Gq::one());
        assert_eq!(theta.contract_into(&u), expected);
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(subsets(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(basis_pq(3, 1, 1).len(), 9);
        assert_eq!(basis_pq(7, 3, 0).len(), 35);
        assert_eq!(basis_pq(3, 4, 0).len(), 0);
    }

    #[test]
    fn rendering() {
        let u = phi(3, 1).wedge(&phi(3, 2)).sub(&phi(3, 3).wedge(&phibar(3, 1)).scale(&Gq::from_int(2)));
        assert_eq!(render_form(&u, "phi", None), "phi1^phi2 - 2*phi3^phi1b");
        let i_coeff = phi(3, 1).scale(&Gq::i());
        assert_eq!(render_form(&i_coeff, "phi", None), "(1*i)*phi1");
    }
}
