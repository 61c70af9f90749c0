//! Left-invariant forms on a Lie algebra with complex structure.
//!
//! A [`LieCS`] stores the structure equations dφ_k of a (1,0)-coframe; d
//! extends to the whole exterior algebra as an antiderivation with
//! dφ̄_k := conj(dφ_k). On a validated table d² = 0 (the Jacobi identity) and
//! no dφ_k has a (0,2) part (integrability of the complex structure), so
//! d = ∂ + ∂̄ with ∂² = ∂̄² = 0 and ∂∂̄ + ∂̄∂ = 0.
//!
//! On top of the bare calculus the module provides the Lie derivative
//! L_θ = [∂, θ⌟·] with respect to a tangent-valued (0,s)-form, the
//! (1,0)-Lie derivative L¹⁰_ξ = [∂, ξ⌟·], the canonical ∂̄ on tangent-valued
//! forms and the Lie bracket of tangent-valued forms. The bracket here is the
//! invariant-side formula; the coordinate bracket in [`crate::polyforms`] is
//! the independent oracle it is tested against.

use crate::exterior::{basis_pq, mono_conj, Form, Mono, VectorForm};
use crate::scalars::Gq;

/// Invariant scalar-valued form (coefficients in ℚ(i)).
pub type InvariantForm = Form<Gq>;

/// Invariant tangent-valued form: an element of Λ^{0,q} ⊗ g^{1,0}
/// (general components are allowed; the calculus checks degrees where needed).
pub type InvariantVectorForm = VectorForm<Gq>;

/// A Lie algebra with complex structure, described by the differentials of a
/// (1,0)-coframe φ_1,…,φ_n.
#[derive(Clone, Debug, PartialEq)]
pub struct LieCS {
    pub n: usize,
    pub names: Vec<String>,
    /// dφ_k as a 2-form; entry k−1 is dφ_k.
    pub diff: Vec<InvariantForm>,
}

/// One choice of differential operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiffOp {
    D,
    Del,
    DelBar,
}

/// Outcome of [`validate`]; failures are data, not errors.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub jacobi_ok: bool,
    /// Indices k with d²φ_k ≠ 0, together with the nonzero residual.
    pub jacobi_failures: Vec<(usize, InvariantForm)>,
    pub integrable: bool,
    /// Indices k whose dφ_k has a (0,2) part, with that part.
    pub integrability_failures: Vec<(usize, InvariantForm)>,
    pub complex_parallelisable: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    /// Complex dimensions of the lower central series of the complexified
    /// algebra: dim g ⊇ dim `[g,g]` ⊇ dim `[g,[g,g]]` ⊇ …, until stable or zero.
    pub lower_central_series_dims: Vec<usize>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.jacobi_ok && self.integrable
    }
}

impl LieCS {
    /// Build a table; every dφ_k must be a 2-form on the same coframe.
    pub fn new(n: usize, names: Vec<String>, diff: Vec<InvariantForm>) -> Self {
        assert_eq!(names.len(), n);
        assert_eq!(diff.len(), n);
        for d in &diff {
            assert_eq!(d.n, n, "differential with wrong ambient dimension");
            for (m, _) in d.terms() {
                assert_eq!(m.degree(), 2, "dφ_k must be a 2-form");
            }
        }
        LieCS { n, names, diff }
    }

    /// Table with default names phi1..phin.
    pub fn with_default_names(n: usize, diff: Vec<InvariantForm>) -> Self {
        let names = (1..=n).map(|k| format!("phi{k}")).collect();
        LieCS::new(n, names, diff)
    }

    pub fn zero_form(&self) -> InvariantForm {
        Form::zero(self.n)
    }

    /// φ_k as a form.
    pub fn phi(&self, k: usize) -> InvariantForm {
        Form::from_term(self.n, Mono::single_un(k), Gq::one())
    }

    /// φ̄_k as a form.
    pub fn phibar(&self, k: usize) -> InvariantForm {
        Form::from_term(self.n, Mono::single_bar(k), Gq::one())
    }

    /// dφ_k from the table.
    pub fn d_phi(&self, k: usize) -> &InvariantForm {
        &self.diff[k - 1]
    }

    /// dφ̄_k := conj(dφ_k).
    pub fn d_phibar(&self, k: usize) -> InvariantForm {
        conj(&self.diff[k - 1])
    }

    /// Structure coefficient of φ_i∧φ_j (i<j) in dφ_k.
    fn a_coeff(&self, k: usize, i: usize, j: usize) -> Gq {
        let m = Mono { un: (1 << (i - 1)) | (1 << (j - 1)), bar: 0 };
        self.diff[k - 1].coeff(&m).cloned().unwrap_or_else(Gq::zero)
    }

    /// Structure coefficient of φ_i∧φ̄_j in dφ_k.
    fn b_coeff(&self, k: usize, i: usize, j: usize) -> Gq {
        let m = Mono { un: 1 << (i - 1), bar: 1 << (j - 1) };
        self.diff[k - 1].coeff(&m).cloned().unwrap_or_else(Gq::zero)
    }

    /// The g^{1,0} Lie bracket `[ξ_i, ξ_j]` read off the structure equations via
    /// dα(X,Y) = −α(`[X,Y]`); requires an integrable table so the bracket stays
    /// in g^{1,0}. Returned as frame coefficients.
    pub fn bracket_frame(&self, i: usize, j: usize) -> Vec<Gq> {
        if i == j {
            return vec![Gq::zero(); self.n];
        }
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        (1..=self.n)
            .map(|k| {
                let c = -&self.a_coeff(k, a, b);
                if sign { -&c } else { c }
            })
            .collect()
    }

    /// ∂̄ of the frame vector ξ_i: the invariant element of Λ^{0,1}⊗g^{1,0}
    /// with (∂̄ξ_i)(ξ̄_j) = pr^{1,0}[ξ̄_j, ξ_i], i.e. Σ_{j,k} b^k_{ij} φ̄_j⊗ξ_k
    /// where b^k_{ij} is the φ_i∧φ̄_j coefficient of dφ_k.
    pub fn delbar_xi(&self, i: usize) -> InvariantVectorForm {
        let mut out = VectorForm::zero(self.n);
        for k in 1..=self.n {
            for j in 1..=self.n {
                let b = self.b_coeff(k, i, j);
                if !b.is_zero() {
                    out.add_component(k, Form::from_term(self.n, Mono::single_bar(j), b));
                }
            }
        }
        out
    }
}

/// Conjugation: φ_I∧φ̄_J ↦ (−1)^{|I||J|} φ_J∧φ̄_I with conjugated coefficient.
/// An involution that commutes with d.
pub fn conj(u: &InvariantForm) -> InvariantForm {
    let mut out = Form::zero(u.n);
    for (m, c) in u.terms() {
        let (m2, negative) = mono_conj(*m);
        let c2 = c.conj();
        out.add_term(m2, if negative { -&c2 } else { c2 });
    }
    out
}

/// d, ∂ or ∂̄ of an invariant form, extended from the table as an
/// antiderivation. ∂ keeps the (p+1,q) part of d on each (p,q) term and ∂̄ the
/// (p,q+1) part, also for inhomogeneous inputs.
pub fn apply_differential(lie: &LieCS, op: DiffOp, u: &InvariantForm) -> InvariantForm {
    assert_eq!(u.n, lie.n, "dimension mismatch");
    let mut out = Form::zero(lie.n);
    for (m, c) in u.terms() {
        let dm = d_monomial(lie, *m);
        let keep = |mm: &Mono| match op {
            DiffOp::D => true,
            DiffOp::Del => mm.p() == m.p() + 1,
            DiffOp::DelBar => mm.q() == m.q() + 1,
        };
        for (mm, cc) in dm.terms() {
            if keep(mm) {
                out.add_term(*mm, cc * c);
            }
        }
    }
    out
}

/// d of a single basis monomial: Σ over factors, with the antiderivation sign
/// (−1)^{position} and the factor's table differential wedged in place.
fn d_monomial(lie: &LieCS, m: Mono) -> InvariantForm {
    let mut out = Form::zero(lie.n);
    let un = m.un_indices();
    let bar = m.bar_indices();
    let total = un.len() + bar.len();
    for pos in 0..total {
        let (dfactor, rest) = if pos < un.len() {
            let k = un[pos];
            (lie.d_phi(k).clone(), Mono { un: m.un & !(1 << (k - 1)), bar: m.bar })
        } else {
            let k = bar[pos - un.len()];
            (lie.d_phibar(k), Mono { un: m.un, bar: m.bar & !(1 << (k - 1)) })
        };
        if dfactor.is_zero() {
            continue;
        }
        // (−1)^pos (dfactor) ∧ (m with the factor removed); the removed factor
        // sits at `pos` in canonical order, but the sign of re-inserting
        // dfactor at the front is exactly (−1)^pos because dfactor has even…
        // degree 2, so it commutes past the earlier factors: wedge in front.
        let rest_form = Form::from_term(lie.n, rest, Gq::one());
        let term = dfactor.wedge(&rest_form);
        out = if pos % 2 == 1 { out.add(&term.neg()) } else { out.add(&term) };
    }
    out
}

/// Contraction of an invariant form by a frame coefficient vector
/// ξ = Σ c_k ξ_k.
pub fn contract_vector(coeffs: &[Gq], u: &InvariantForm) -> InvariantForm {
    let mut out = Form::zero(u.n);
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&u.contract_xi(k + 1).scale(c));
        }
    }
    out
}

/// L_θ u := ∂(θ⌟u) − (−1)^{s+1} θ⌟∂u for θ of bidegree (0,s); for s = 1 this
/// is ∂(θ⌟u) − θ⌟∂u, matching ∂(θ⌟u) = L_θ u + θ⌟∂u.
pub fn lie_derivative(
    lie: &LieCS,
    theta: &InvariantVectorForm,
    u: &InvariantForm,
) -> InvariantForm {
    let s = theta.form_bidegree().map_or(1, |(_, q)| q);
    let a = apply_differential(lie, DiffOp::Del, &theta.contract_into(u));
    let b = theta.contract_into(&apply_differential(lie, DiffOp::Del, u));
    if (s + 1) % 2 == 1 {
        a.add(&b)
    } else {
        a.sub(&b)
    }
}

/// L¹⁰_ξ u := ∂(ξ⌟u) + ξ⌟∂u for an invariant (1,0)-vector ξ (frame coefficients).
pub fn lie10_derivative(lie: &LieCS, xi: &[Gq], u: &InvariantForm) -> InvariantForm {
    let a = apply_differential(lie, DiffOp::Del, &contract_vector(xi, u));
    let b = contract_vector(xi, &apply_differential(lie, DiffOp::Del, u));
    a.add(&b)
}

/// Canonical ∂̄ of a tangent-valued form:
/// ∂̄(ᾱ⊗X) = (∂̄ᾱ)⊗X + (−1)^q ᾱ∧(∂̄X), with ∂̄X from [`LieCS::delbar_xi`].
pub fn delbar_vform(lie: &LieCS, theta: &InvariantVectorForm) -> InvariantVectorForm {
    let mut out = VectorForm::zero(lie.n);
    for (k, alpha) in theta.components() {
        out.add_component(k, apply_differential(lie, DiffOp::DelBar, alpha));
        let q = alpha.homogeneous_bidegree().map_or(0, |(_, q)| q);
        let dxk = lie.delbar_xi(k);
        for (l, gamma) in dxk.components() {
            let w = alpha.wedge(gamma);
            out.add_component(l, if q % 2 == 1 { w.neg() } else { w });
        }
    }
    out
}

/// Invariant Lie bracket of tangent-valued forms:
/// `[ᾱ⊗X, β̄⊗Y] = ᾱ∧β̄⊗[X,Y] + ᾱ∧(X⌟∂β̄)⊗Y − (−1)^{pq} β̄∧(Y⌟∂ᾱ)⊗X`,
/// extended bilinearly over the frame.
pub fn bracket_inv(
    lie: &LieCS,
    phi: &InvariantVectorForm,
    psi: &InvariantVectorForm,
) -> InvariantVectorForm {
    let p = phi.form_bidegree().map_or(0, |(_, q)| q);
    let q = psi.form_bidegree().map_or(0, |(_, q)| q);
    let sign_pq = (p * q) % 2 == 1;
    let mut out = VectorForm::zero(lie.n);
    for (k, alpha) in phi.components() {
        for (l, beta) in psi.components() {
            // ᾱ∧β̄ ⊗ [ξ_k, ξ_l]
            let ab = alpha.wedge(beta);
            if !ab.is_zero() {
                for (m, c) in lie.bracket_frame(k, l).iter().enumerate() {
                    if !c.is_zero() {
                        out.add_component(m + 1, ab.scale(c));
                    }
                }
            }
            // ᾱ∧(ξ_k⌟∂β̄) ⊗ ξ_l
            let del_beta = apply_differential(lie, DiffOp::Del, beta);
            let t = alpha.wedge(&del_beta.contract_xi(k));
            out.add_component(l, t);
            // −(−1)^{pq} β̄∧(ξ_l⌟∂ᾱ) ⊗ ξ_k
            let del_alpha = apply_differential(lie, DiffOp::Del, alpha);
            let t = beta.wedge(&del_alpha.contract_xi(l));
            out.add_component(k, if sign_pq { t } else { t.neg() });
        }
    }
    out
}

/// Full validation of a table: Jacobi (d² = 0 with dφ̄ := conj dφ),
/// integrability (no (0,2) parts), complex parallelisability (only (2,0)
/// parts), and the nilpotency/solvability ladders of the complexified algebra.
pub fn validate(lie: &LieCS) -> ValidationReport {
    let mut jacobi_failures = Vec::new();
    for k in 1..=lie.n {
        let ddk = apply_differential(lie, DiffOp::D, lie.d_phi(k));
        if !ddk.is_zero() {
            jacobi_failures.push((k, ddk));
        }
    }
    let mut integrability_failures = Vec::new();
    let mut complex_parallelisable = true;
    for k in 1..=lie.n {
        let bad = lie.d_phi(k).bidegree_part(0, 2);
        if !bad.is_zero() {
            integrability_failures.push((k, bad));
        }
        if !lie.d_phi(k).bidegree_part(1, 1).is_zero()
            || !lie.d_phi(k).bidegree_part(0, 2).is_zero()
        {
            complex_parallelisable = false;
        }
    }

    let (nilpotent, solvable, lcs) = series_flags(lie);

    ValidationReport {
        jacobi_ok: jacobi_failures.is_empty(),
        jacobi_failures,
        integrable: integrability_failures.is_empty(),
        integrability_failures,
        complex_parallelisable,
        nilpotent,
        solvable,
        lower_central_series_dims: lcs,
    }
}

/// Nilpotency and solvability of the complexified Lie algebra recovered from
/// the table. Basis: ξ_1..ξ_n, ξ̄_1..ξ̄_n; all brackets come from dα(X,Y) = −α([X,Y])
/// applied to φ_k and φ̄_k = conj.
fn series_flags(lie: &LieCS) -> (bool, bool, Vec<usize>) {
    use crate::linalg::{Matrix, Subspace};
    let n = lie.n;
    let dim = 2 * n;
    // bracket_table[i][j] = [e_i, e_j] as a coefficient vector, where
    // e_1..e_n = ξ, e_{n+1}..e_{2n} = ξ̄.
    let eval2 = |form: &InvariantForm, x: usize, y: usize| -> Gq {
        // value of a 2-form on (e_x, e_y)
        let mut acc = Gq::zero();
        for (m, c) in form.terms() {
            let fs: Vec<(bool, usize)> = m
                .un_indices()
                .iter()
                .map(|&k| (false, k))
                .chain(m.bar_indices().iter().map(|&k| (true, k)))
                .collect();
            debug_assert_eq!(fs.len(), 2);
            let pair = |(barred, k): (bool, usize), e: usize| -> bool {
                if e <= n { !barred && k == e } else { barred && k == e - n }
            };
            let d11 = pair(fs[0], x) && pair(fs[1], y);
            let d12 = pair(fs[0], y) && pair(fs[1], x);
            if d11 {
                acc += c;
            }
            if d12 {
                acc += &-c;
            }
        }
        acc
    };
    let mut table = vec![vec![vec![Gq::zero(); dim]; dim]; dim];
    for x in 0..dim {
        for y in (x + 1)..dim {
            let mut v = vec![Gq::zero(); dim];
            for k in 1..=n {
                // φ_k([e_x,e_y]) = −dφ_k(e_x,e_y); φ̄_k likewise via conj
                v[k - 1] = -&eval2(lie.d_phi(k), x + 1, y + 1);
                v[n + k - 1] = -&eval2(&lie.d_phibar(k), x + 1, y + 1);
            }
            table[x][y] = v.clone();
            table[y][x] = v.iter().map(|c| -c).collect();
        }
    }
    let bracket_spaces = |a: &Subspace, b: &Subspace| -> Subspace {
        let mut gens: Vec<Vec<Gq>> = Vec::new();
        for u in &a.basis {
            for w in &b.basis {
                let mut v = vec![Gq::zero(); dim];
                for (x, cu) in u.iter().enumerate() {
                    if cu.is_zero() {
                        continue;
                    }
                    for (y, cw) in w.iter().enumerate() {
                        if cw.is_zero() {
                            continue;
                        }
                        let f = cu * cw;
                        for t in 0..dim {
                            if !table[x][y][t].is_zero() {
                                let d = &f * &table[x][y][t];
                                v[t] = &v[t] + &d;
                            }
                        }
                    }
                }
                gens.push(v);
            }
        }
        Subspace::from_span(dim, &gens)
    };

    let full = {
        let id = Matrix::identity(dim);
        Subspace { ambient: dim, basis: (0..dim).map(|i| id.row(i).to_vec()).collect() }
    };

    // lower central series; the iteration cap guards tables whose "bracket"
    // fails Jacobi (the flags are only meaningful on valid tables anyway)
    let mut lcs_dims = vec![dim];
    let mut cur = full.clone();
    let mut nilpotent = false;
    for _ in 0..=dim {
        let next = bracket_spaces(&full, &cur);
        if next.dim() == 0 {
            lcs_dims.push(0);
            nilpotent = true;
            break;
        }
        if next == cur {
            break;
        }
        lcs_dims.push(next.dim());
        cur = next;
    }

    // derived series
    let mut der = full;
    let mut solvable = false;
    for _ in 0..=dim {
        let next = bracket_spaces(&der, &der);
        if next.dim() == 0 {
            solvable = true;
            break;
        }
        if next == der {
            break;
        }
        der = next;
    }

    (nilpotent, solvable, lcs_dims)
}

/// Random invariant data, used by property tests and the bridge suite.
/// Coefficients are drawn uniformly from {−2,…,2} + {−2,…,2}i.
pub mod random {
    use super::*;
    use rand_core::RngCore;

    pub fn small_gq(rng: &mut impl RngCore) -> Gq {
        let re = (rng.next_u32() % 5) as i64 - 2;
        let im = (rng.next_u32() % 5) as i64 - 2;
        Gq::from_ints(re, im)
    }

    /// Random homogeneous (p,q)-form.
    pub fn form(rng: &mut impl RngCore, n: usize, p: usize, q: usize) -> InvariantForm {
        let mut out = Form::zero(n);
        for m in basis_pq(n, p, q) {
            out.add_term(m, small_gq(rng));
        }
        out
    }

    /// Random tangent-valued (0,q)-form.
    pub fn vform(rng: &mut impl RngCore, n: usize, q: usize) -> InvariantVectorForm {
        let mut out = VectorForm::zero(n);
        for k in 1..=n {
            out.add_component(k, form(rng, n, 0, q));
        }
        out
    }

    /// Random frame coefficient vector (an invariant (1,0)-vector).
    pub fn vector(rng: &mut impl RngCore, n: usize) -> Vec<Gq> {
        (0..n).map(|_| small_gq(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn iwasawa() -> LieCS {
        catalog::catalog_get("iwasawa", &[]).unwrap()
    }

    fn h15() -> LieCS {
        catalog::catalog_get("h15", &[]).unwrap()
    }

    #[test]
    fn iwasawa_validates() {
        let lie = iwasawa();
        let rep = validate(&lie);
        assert!(rep.jacobi_ok);
        assert!(rep.integrable);
        assert!(rep.nilpotent);
        assert!(rep.solvable);
        assert!(rep.complex_parallelisable);
    }

    #[test]
    fn explicit_02_term_is_not_integrable() {
        // dφ₁ = φ̄₂∧φ̄₃
        let n = 3;
        let mut d1 = Form::zero(n);
        d1.add_term(Mono { un: 0, bar: 0b110 }, Gq::one());
        let lie = LieCS::with_default_names(n, vec![d1, Form::zero(n), Form::zero(n)]);
        let rep = validate(&lie);
        assert!(!rep.integrable);
        assert_eq!(rep.integrability_failures.len(), 1);
        assert_eq!(rep.integrability_failures[0].0, 1);
    }

    #[test]
    fn jacobi_failure_detected() {
        // dφ₁ = −φ₁∧φ₃, dφ₂ = 0, dφ₃ = −φ₁∧φ₂ ⇒ d²φ₃ = −φ₁∧φ₂∧φ₃ ≠ 0
        let n = 3;
        let mut d1 = Form::zero(n);
        d1.add_term(Mono { un: 0b101, bar: 0 }, -Gq::one());
        let mut d3 = Form::zero(n);
        d3.add_term(Mono { un: 0b011, bar: 0 }, -Gq::one());
        let lie = LieCS::with_default_names(n, vec![d1, Form::zero(n), d3]);
        let rep = validate(&lie);
        assert!(!rep.jacobi_ok);
        let (k, res) = &rep.jacobi_failures[0];
        assert_eq!(*k, 3);
        let mut expected = Form::zero(n);
        expected.add_term(Mono { un: 0b111, bar: 0 }, -Gq::one());
        assert_eq!(res, &expected);
    }

    #[test]
    fn iwasawa_del_phi3() {
        let lie = iwasawa();
        let d = apply_differential(&lie, DiffOp::Del, &lie.phi(3));
        let mut expected = Form::zero(3);
        expected.add_term(Mono { un: 0b011, bar: 0 }, -Gq::one());
        assert_eq!(d, expected, "∂φ₃ = −φ₁∧φ₂");
        assert!(apply_differential(&lie, DiffOp::DelBar, &lie.phi(3)).is_zero());
    }

    #[test]
    fn h15_del_phibar2() {
        let lie = h15();
        let d = apply_differential(&lie, DiffOp::Del, &lie.phibar(2));
        // ∂φ̄₂ = −φ₁∧φ̄₁
        let mut expected = Form::zero(3);
        expected.add_term(Mono { un: 0b001, bar: 0b001 }, -Gq::one());
        assert_eq!(d, expected);
        // and ∂̄(−φ₂) equals it
        let d2 = apply_differential(&lie, DiffOp::DelBar, &lie.phi(2).neg());
        assert_eq!(d2, expected);
    }

    #[test]
    fn wedge_displayed_values() {
        // Nakamura: (φ₂+φ₃)∧∂(φ₂+φ₃) = 2 φ₁∧φ₂∧φ₃
        let lie = catalog::catalog_get("nakamura", &[]).unwrap();
        let g = lie.phi(2).add(&lie.phi(3));
        let top = Mono { un: 0b111, bar: 0 };
        let u = g.wedge(&apply_differential(&lie, DiffOp::Del, &g));
        assert_eq!(u, Form::from_term(3, top, Gq::from_int(2)));
        // solvable companion: (φ₂−φ₃)∧(φ₁∧(φ₂+φ₃)) = −2 φ₁∧φ₂∧φ₃
        let lie = catalog::catalog_get("ex5", &[]).unwrap();
        let left = lie.phi(2).sub(&lie.phi(3));
        let right = lie.phi(1).wedge(&lie.phi(2).add(&lie.phi(3)));
        assert_eq!(left.wedge(&right), Form::from_term(3, top, Gq::from_int(-2)));
        // SL(2,C): ∂α = β∧γ
        let lie = catalog::catalog_get("sl2c", &[]).unwrap();
        assert_eq!(
            apply_differential(&lie, DiffOp::Del, &lie.phi(1)),
            lie.phi(2).wedge(&lie.phi(3))
        );
    }

    #[test]
    fn conj_is_involution_and_fixes_real_11() {
        let lie = iwasawa();
        assert_eq!(conj(&lie.phi(1)), lie.phibar(1));
        let u = lie.phi(1).wedge(&lie.phi(2));
        assert_eq!(conj(&u), lie.phibar(1).wedge(&lie.phibar(2)));
        let real11 = lie.phi(1).wedge(&lie.phibar(1)).scale(&Gq::i());
        assert_eq!(conj(&real11), real11, "i·φ₁∧φ̄₁ is real");
        assert_eq!(conj(&conj(&u)), u);
    }

    #[test]
    fn lie_derivative_examples() {
        let lie = iwasawa();
        // θ = φ̄₁⊗ξ₃, u = φ₃ → 0
        let theta = VectorForm::from_component(3, 3, lie.phibar(1));
        assert!(lie_derivative(&lie, &theta, &lie.phi(3)).is_zero());
        // θ = φ̄₁⊗ξ₁, u = φ₃ → φ̄₁∧φ₂ = −φ₂∧φ̄₁
        let theta = VectorForm::from_component(3, 1, lie.phibar(1));
        let got = lie_derivative(&lie, &theta, &lie.phi(3));
        let expected = lie.phi(2).wedge(&lie.phibar(1)).neg();
        assert_eq!(got, expected);
        // θ = 0 → 0
        let zero = VectorForm::zero(3);
        assert!(lie_derivative(&lie, &zero, &lie.phi(3)).is_zero());
    }

    #[test]
    fn lie10_examples() {
        let lie = iwasawa();
        let e3 = [Gq::zero(), Gq::zero(), Gq::one()];
        assert!(lie10_derivative(&lie, &e3, &lie.phi(1).wedge(&lie.phi(2))).is_zero());
        let e1 = [Gq::one(), Gq::zero(), Gq::zero()];
        assert_eq!(lie10_derivative(&lie, &e1, &lie.phi(3)), lie.phi(2).neg());
        let zero = [Gq::zero(), Gq::zero(), Gq::zero()];
        assert!(lie10_derivative(&lie, &zero, &lie.phi(3)).is_zero());
    }

    #[test]
    fn delbar_vform_examples() {
        let lie = iwasawa();
        for k in 1..=3 {
            assert!(lie.delbar_xi(k).is_zero(), "complex parallelisable ⇒ ∂̄ξ_k = 0");
        }
        let theta = VectorForm::from_component(3, 3, lie.phibar(3));
        let got = delbar_vform(&lie, &theta);
        let expected = VectorForm::from_component(
            3,
            3,
            lie.phibar(1).wedge(&lie.phibar(2)).neg(),
        );
        assert_eq!(got, expected, "∂̄(φ̄₃⊗ξ₃) = −φ̄₁∧φ̄₂⊗ξ₃");
        assert!(delbar_vform(&lie, &VectorForm::zero(3)).is_zero());
        // h15: ∂̄ξ₁ = φ̄₁⊗ξ₂
        let lie = h15();
        let got = lie.delbar_xi(1);
        let expected = VectorForm::from_component(3, 2, lie.phibar(1));
        assert_eq!(got, expected);
    }

    #[test]
    fn bracket_inv_examples() {
        let lie = iwasawa();
        assert_eq!(
            lie.bracket_frame(1, 2),
            vec![Gq::zero(), Gq::zero(), Gq::one()],
            "[ξ₁,ξ₂] = ξ₃"
        );
        let t1 = VectorForm::from_component(3, 1, lie.phibar(1));
        let t2 = VectorForm::from_component(3, 2, lie.phibar(2));
        let br = bracket_inv(&lie, &t1, &t2);
        let expected =
            VectorForm::from_component(3, 3, lie.phibar(1).wedge(&lie.phibar(2)));
        assert_eq!(br, expected, "[φ̄₁⊗ξ₁, φ̄₂⊗ξ₂] = φ̄₁∧φ̄₂⊗ξ₃");
        assert!(bracket_inv(&lie, &t1, &t1).is_zero());
    }
}
