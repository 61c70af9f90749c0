//! p-contact deformations and the constructive order-two pipeline.
//!
//! The deformation space consists of tangent Dolbeault classes `[θ]` with
//! `[θ⌟Γ]_∂̄ = 0` and θ⌟∂Γ E₂-closed. For such a class the pipeline produces
//! a prepared representative ψ₁ (with ψ₁⌟u_Γ both ∂- and ∂̄-closed) and then
//! a solution ψ₂ of the order-two Maurer–Cartan equation `∂̄ψ₂ = ½[ψ₁,ψ₁]` with
//! ψ₂⌟u_Γ ∂-exact. Every solve takes the deterministic RREF particular
//! solution; correctness is certified by the exact residuals carried in the
//! certificate, so any valid solver choice passes. Unsolvable steps return a
//! structured obstruction naming the failed equation with a cokernel
//! certificate; for the canonical representative only, no claim is made about
//! other representatives.

use crate::cohomology::{cy_iso, page1_check, InvariantComplex};
use crate::contact::{is_p_contact, ContactError};
use crate::exterior::{basis_pq, Form, Mono, VectorForm};
use crate::invariant::{
    apply_differential, bracket_inv, delbar_vform, DiffOp, InvariantForm, InvariantVectorForm,
    LieCS,
};
use crate::linalg::{column_space, rref_solve, Matrix, Subspace};
use crate::scalars::Gq;

/// One member of the deformation space, with the witnesses for its two
/// membership conditions.
#[derive(Clone, Debug)]
pub struct DeformationClass {
    pub theta1: InvariantVectorForm,
    pub delbar_closed: bool,
    /// `[θ⌟Γ]_∂̄ = 0`, witnessed by `contraction_potential`.
    pub class_of_contraction_vanishes: bool,
    /// α with θ⌟Γ = ∂̄α.
    pub contraction_potential: Option<InvariantForm>,
    /// θ⌟∂Γ ∈ Z₂^{p,1}, witnessed by `z2_witness`.
    pub z2_membership: bool,
    /// δ₀ with ∂(θ⌟∂Γ) = ∂̄δ₀.
    pub z2_witness: Option<InvariantForm>,
}

/// Basis of the p-contact deformation space inside tangent Dolbeault classes.
#[derive(Clone, Debug)]
pub struct DeformationSpace {
    pub p: usize,
    pub dimension: usize,
    pub classes: Vec<DeformationClass>,
    /// dim H^{0,1}(T) before the two membership conditions cut it down.
    pub tangent_h01: usize,
}

/// A residual value: exactly zero on every successful certificate.
#[derive(Clone, Debug)]
pub enum Residual {
    Scalar(InvariantForm),
    Vector(InvariantVectorForm),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Scalar(f) => f.is_zero(),
            Residual::Vector(v) => v.is_zero(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Residual::Scalar(f) => crate::exterior::render_form(f, "phi", None),
            Residual::Vector(v) => crate::exterior::render_vector_form(v, "phi"),
        }
    }
}

/// Everything the order-two pipeline produced, with named exact residuals.
#[derive(Clone, Debug)]
pub struct DeformationCertificate {
    pub theta1: InvariantVectorForm,
    /// η₁ = Γ∧(θ₁⌟∂Γ).
    pub eta1: InvariantForm,
    /// ζ₁ with ∂η₁ = ∂∂̄ζ₁.
    pub zeta1: InvariantForm,
    /// Prepared representative: ψ₁ = T_Γ^{-1}(η₁ − ∂̄ζ₁).
    pub psi1: InvariantVectorForm,
    /// α with ψ₁⌟Γ = ∂̄α.
    pub alpha: InvariantForm,
    /// `[ψ₁,ψ₁]`.
    pub bracket: InvariantVectorForm,
    /// β with `[ψ₁,ψ₁]⌟Γ = ∂̄β` (cohomological integrability witness).
    pub beta: InvariantForm,
    /// δ with ∂(ψ₁⌟∂Γ) = ∂̄δ.
    pub delta: InvariantForm,
    /// Φ₂ with `∂̄∂Φ₂ = ½[ψ₁,ψ₁]⌟u_Γ`.
    pub phi2: InvariantForm,
    /// ψ₂ = T_Γ^{-1}(∂Φ₂), the order-two solution.
    pub psi2: InvariantVectorForm,
    /// Named checks, all expected exactly zero.
    pub residuals: Vec<(String, Residual)>,
}

impl DeformationCertificate {
    pub fn all_residuals_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

/// Structured failure of a pipeline solve.
#[derive(Clone, Debug)]
pub struct Obstruction {
    /// Names the failed proof step, e.g. "Step 1: ∂η₁ = ∂∂̄ζ₁ unsolvable".
    pub step: String,
    /// Canonical reduction of the right-hand side modulo the image of the
    /// failed map: a nonzero cokernel witness.
    pub certificate: InvariantForm,
    /// Whether the page-1 identity holds at the bidegree the step needs.
    pub page1_note: Option<String>,
    /// This verdict concerns the pipeline's canonical representative only.
    pub scope_note: &'static str,
}

#[derive(Clone, Debug)]
pub enum DeformError {
    Contact(ContactError),
    /// θ₁ is not a tangent-valued (0,1)-form.
    WrongThetaDegree,
    /// θ₁ is not ∂̄-closed, so it represents no tangent class.
    NotDelbarClosed,
    Obstructed(Box<Obstruction>),
}

impl std::fmt::Display for DeformError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeformError::Contact(e) => write!(f, "{e}"),
            DeformError::WrongThetaDegree => {
                write!(f, "theta1 must be a tangent-valued (0,1)-form")
            }
            DeformError::NotDelbarClosed => write!(f, "theta1 is not delbar-closed"),
            DeformError::Obstructed(o) => {
                write!(f, "{} (canonical representative failed)", o.step)
            }
        }
    }
}

impl std::error::Error for DeformError {}

impl From<ContactError> for DeformError {
    fn from(e: ContactError) -> Self {
        DeformError::Contact(e)
    }
}

fn form_coords(f: &InvariantForm, basis: &[Mono]) -> Vec<Gq> {
    f.coordinates(basis, &Gq::zero())
}

/// Solve `map · x = rhs`; `Ok(particular)` or the canonical cokernel
/// reduction of `rhs` as the error witness.
fn solve_or_cokernel(
    map: &Matrix,
    rhs: &[Gq],
    cod_basis: &[Mono],
    n: usize,
) -> Result<Vec<Gq>, InvariantForm> {
    let sol = rref_solve(map, Some(rhs));
    if let Some(x) = sol.particular {
        return Ok(x);
    }
    let image = column_space(map);
    let red = image.reduce(rhs);
    let mut w = Form::zero(n);
    for (i, c) in red.iter().enumerate() {
        w.add_term(cod_basis[i], c.clone());
    }
    Err(w)
}

/// Membership flags of a representative θ against Γ, with witnesses.
pub fn class_flags(
    lie: &LieCS,
    gamma: &InvariantForm,
    theta: &InvariantVectorForm,
) -> DeformationClass {
    let cx = InvariantComplex::new(lie);
    let n = lie.n;
    let p = (n - 1) / 2;
    let delbar_closed = delbar_vform(lie, theta).is_zero();
    let dg = apply_differential(lie, DiffOp::Del, gamma);

    // [θ⌟Γ]_∂̄ = 0 ⇔ θ⌟Γ ∈ Im(∂̄ : Λ^{p−1,0} → Λ^{p−1,1})
    let tg = theta.contract_into(gamma);
    let basis_p11 = basis_pq(n, p - 1, 1);
    let m = cx.mat_delbar(p - 1, 0);
    let alpha = solve_or_cokernel(&m, &form_coords(&tg, &basis_p11), &basis_p11, n).ok().map(
        |x| {
            let b = basis_pq(n, p - 1, 0);
            cx.form_from_coords(&b, &x)
        },
    );

    // θ⌟∂Γ ∈ Z₂^{p,1}: ∂̄(θ⌟∂Γ) = 0 and ∂(θ⌟∂Γ) ∈ Im ∂̄
    let tdg = theta.contract_into(&dg);
    let delbar_tdg_zero = apply_differential(lie, DiffOp::DelBar, &tdg).is_zero();
    let del_tdg = apply_differential(lie, DiffOp::Del, &tdg);
    let basis_up = basis_pq(n, p + 1, 1);
    let m = cx.mat_delbar(p + 1, 0);
    let delta0 = solve_or_cokernel(&m, &form_coords(&del_tdg, &basis_up), &basis_up, n)
        .ok()
        .map(|x| cx.form_from_coords(&basis_pq(n, p + 1, 0), &x));

    DeformationClass {
        theta1: theta.clone(),
        delbar_closed,
        class_of_contraction_vanishes: alpha.is_some(),
        contraction_potential: alpha.clone(),
        z2_membership: delbar_tdg_zero && delta0.is_some(),
        z2_witness: delta0,
    }
}

/// Compute a basis of the p-contact deformation space: tangent Dolbeault
/// representatives intersected with the two linear membership conditions.
pub fn deformation_space(
    lie: &LieCS,
    gamma: &InvariantForm,
) -> Result<DeformationSpace, DeformError> {
    let check = is_p_contact(lie, gamma)?;
    if let Some(cond) = check.failed_condition {
        return Err(DeformError::Contact(ContactError::NotContact(cond)));
    }
    let n = lie.n;
    let p = (n - 1) / 2;
    let cx = InvariantComplex::new(lie);
    let tangent = crate::cohomology::dolbeault_tangent(lie);
    let reps = &tangent.representatives[1];
    let m = reps.len();
    if m == 0 {
        return Ok(DeformationSpace { p, dimension: 0, classes: vec![], tangent_h01: 0 });
    }
    let dg = apply_differential(lie, DiffOp::Del, gamma);

    // condition (a): combo⌟Γ ∈ Im ∂̄ on Λ^{p−1,1}
    let basis_a = basis_pq(n, p - 1, 1);
    let cols_a: Vec<Vec<Gq>> =
        reps.iter().map(|t| form_coords(&t.contract_into(gamma), &basis_a)).collect();
    let map_a = Matrix::from_cols(basis_a.len(), &cols_a);
    let im_a = column_space(&cx.mat_delbar(p - 1, 0));
    let sub_a = Subspace::preimage_under(&map_a, &im_a);

    // condition (b): ∂(combo⌟∂Γ) ∈ Im ∂̄ on Λ^{p+1,1}
    let basis_b = basis_pq(n, p + 1, 1);
    let cols_b: Vec<Vec<Gq>> = reps
        .iter()
        .map(|t| {
            form_coords(
                &apply_differential(lie, DiffOp::Del, &t.contract_into(&dg)),
                &basis_b,
            )
        })
        .collect();
    let map_b = Matrix::from_cols(basis_b.len(), &cols_b);
    let im_b = column_space(&cx.mat_delbar(p + 1, 0));
    let sub_b = Subspace::preimage_under(&map_b, &im_b);

    let sub = sub_a.intersect(&sub_b);
    let mut classes = Vec::new();
    for t in &sub.basis {
        let mut theta = VectorForm::zero(n);
        for (i, c) in t.iter().enumerate() {
            if !c.is_zero() {
                theta = theta.add(&reps[i].scale(c));
            }
        }
        classes.push(class_flags(lie, gamma, &theta));
    }
    Ok(DeformationSpace { p, dimension: sub.dim(), classes, tangent_h01: m })
}

/// The image of the deformation space under the cohomological Calabi–Yau
/// isomorphism: classes `[Γ∧(θ⌟∂Γ)]` in
/// H^{2p,1}, with the bookkeeping that (θ⌟Γ)∧∂Γ is ∂̄-exact.
#[derive(Clone, Debug)]
pub struct ImageSpace {
    /// η = Γ∧(θ⌟∂Γ) per input class.
    pub images: Vec<InvariantForm>,
    /// ∂̄-potential of (θ⌟Γ)∧∂Γ per class (α∧∂Γ for the class's α).
    pub exactness_potentials: Vec<Option<InvariantForm>>,
    /// Canonical representatives of a basis of the image subspace of
    /// H^{2p,1}_∂̄.
    pub class_basis: Vec<InvariantForm>,
    pub dimension: usize,
}

pub fn image_space(
    lie: &LieCS,
    gamma: &InvariantForm,
    classes: &[DeformationClass],
) -> ImageSpace {
    let n = lie.n;
    let dg = apply_differential(lie, DiffOp::Del, gamma);
    let cx = InvariantComplex::new(lie);
    let mut images = Vec::new();
    let mut pots = Vec::new();
    for c in classes {
        let eta = gamma.wedge(&c.theta1.contract_into(&dg));
        images.push(eta);
        pots.push(c.contraction_potential.as_ref().map(|a| a.wedge(&dg)));
    }
    // reduce the images into H^{2p,1} = ker ∂̄ / Im ∂̄ on Λ^{n−1,1}
    let basis = basis_pq(n, n - 1, 1);
    let im_delbar = column_space(&cx.mat_delbar(n - 1, 0));
    let coords: Vec<Vec<Gq>> = images.iter().map(|f| form_coords(f, &basis)).collect();
    let span = im_delbar.sum(&Subspace::from_span(basis.len(), &coords));
    let reps = im_delbar.complement_reps_in(&span);
    let class_basis: Vec<InvariantForm> =
        reps.iter().map(|v| cx.form_from_coords(&basis, v)).collect();
    let dimension = class_basis.len();
    ImageSpace { images, exactness_potentials: pots, class_basis, dimension }
}

fn vform_scale_half(v: &InvariantVectorForm) -> InvariantVectorForm {
    v.scale(&Gq::from_frac(1, 2))
}

/// Run the order-two pipeline on one representative θ₁ of a deformation
/// class. See the module docs for the construction; every named residual in
/// the certificate is exactly zero on success.
pub fn order2(
    lie: &LieCS,
    gamma: &InvariantForm,
    theta1: &InvariantVectorForm,
) -> Result<DeformationCertificate, DeformError> {
    let n = lie.n;
    let p = (n - 1) / 2;
    let cx = InvariantComplex::new(lie);
    let iso1 = cy_iso(lie, gamma, 1)?;
    let u = iso1.u_gamma.clone();
    if !theta1.is_zero() && theta1.form_bidegree() != Some((0, 1)) {
        return Err(DeformError::WrongThetaDegree);
    }
    if !delbar_vform(lie, theta1).is_zero() {
        return Err(DeformError::NotDelbarClosed);
    }
    let dg = apply_differential(lie, DiffOp::Del, gamma);
    let mut residuals: Vec<(String, Residual)> = Vec::new();

    // --- Step 1: prepare ψ₁ ---
    let tdg = theta1.contract_into(&dg);
    let eta1 = gamma.wedge(&tdg);
    residuals.push((
        "delbar_eta1".into(),
        Residual::Scalar(apply_differential(lie, DiffOp::DelBar, &eta1)),
    ));
    if p % 2 == 1 {
        residuals.push((
            "parity_delGamma_wedge_theta1_delGamma".into(),
            Residual::Scalar(dg.wedge(&tdg)),
        ));
    }
    // η₁ ∈ Z₂^{2p,1}, rechecked: ∂η₁ ∈ Im ∂̄
    let del_eta1 = apply_differential(lie, DiffOp::Del, &eta1);
    let basis_n1 = basis_pq(n, n, 1);
    {
        let im = column_space(&cx.mat_delbar(n, 0));
        let red = im.reduce(&form_coords(&del_eta1, &basis_n1));
        residuals.push((
            "eta1_in_Z2".into(),
            Residual::Scalar(cx.form_from_coords(&basis_n1, &red)),
        ));
    }
    // solve ∂η₁ = ∂∂̄ζ₁ for ζ₁ ∈ Λ^{n−1,0}
    let map_ddbar = cx.mat_del(n - 1, 1).matmul(&cx.mat_delbar(n - 1, 0));
    let zeta1 = match solve_or_cokernel(&map_ddbar, &form_coords(&del_eta1, &basis_n1), &basis_n1, n)
    {
        Ok(x) => cx.form_from_coords(&basis_pq(n, n - 1, 0), &x),
        Err(cert) => {
            let p1 = page1_check(lie);
            let note = format!(
                "page-1 identity at bidegree ({},1): {}",
                2 * p,
                if p1.holds[2 * p][1] { "holds" } else { "fails" }
            );
            return Err(DeformError::Obstructed(Box::new(Obstruction {
                step: "Step 1: ∂η₁ = ∂∂̄ζ₁ unsolvable".into(),
                certificate: cert,
                page1_note: Some(note),
                scope_note: "canonical representative failed",
            })));
        }
    };
    let psi1_u = eta1.sub(&apply_differential(lie, DiffOp::DelBar, &zeta1));
    let psi1 = iso1.invert_form(lie, &psi1_u);
    residuals.push((
        "zeta1_solves".into(),
        Residual::Scalar(del_eta1.sub(&apply_differential(
            lie,
            DiffOp::Del,
            &apply_differential(lie, DiffOp::DelBar, &zeta1),
        ))),
    ));
    residuals.push((
        "psi1_u_matches".into(),
        Residual::Scalar(psi1.contract_into(&u).sub(&psi1_u)),
    ));
    residuals.push(("delbar_psi1".into(), Residual::Vector(delbar_vform(lie, &psi1))));
    residuals.push((
        "del_psi1_u".into(),
        Residual::Scalar(apply_differential(lie, DiffOp::Del, &psi1_u)),
    ));
    residuals.push((
        "delbar_psi1_u".into(),
        Residual::Scalar(apply_differential(lie, DiffOp::DelBar, &psi1_u)),
    ));
    // [ψ₁] = [θ₁] in tangent Dolbeault
    {
        let tb = cx.tangent_basis(1);
        let diff = psi1.sub(theta1);
        let coords = cx.vform_coords(&tb, &diff);
        let im = column_space(&cx.mat_delbar_tangent(0));
        let red = im.reduce(&coords);
        residuals.push((
            "psi1_class_eq_theta1".into(),
            Residual::Vector(cx.vform_from_coords(&tb, &red)),
        ));
    }

    // --- Step 2: solve the order-two equation ---
    let bracket = bracket_inv(lie, &psi1, &psi1);
    let half_bracket_u = vform_scale_half(&bracket).contract_into(&u);
    // Tian–Todorov: ½[ψ₁,ψ₁]⌟u = −½∂(ψ₁⌟(ψ₁⌟u))
    residuals.push((
        "tian_todorov".into(),
        Residual::Scalar(half_bracket_u.add(
            &apply_differential(lie, DiffOp::Del, &psi1.contract_into(&psi1.contract_into(&u)))
                .scale(&Gq::from_frac(1, 2)),
        )),
    ));
    // α with ψ₁⌟Γ = ∂̄α
    let psi1_gamma = psi1.contract_into(gamma);
    let basis_a = basis_pq(n, p - 1, 1);
    let alpha = match solve_or_cokernel(
        &cx.mat_delbar(p - 1, 0),
        &form_coords(&psi1_gamma, &basis_a),
        &basis_a,
        n,
    ) {
        Ok(x) => cx.form_from_coords(&basis_pq(n, p - 1, 0), &x),
        Err(cert) => {
            return Err(DeformError::Obstructed(Box::new(Obstruction {
                step: "Step 2: ψ₁⌟Γ = ∂̄α unsolvable".into(),
                certificate: cert,
                page1_note: None,
                scope_note: "canonical representative failed",
            })))
        }
    };
    residuals.push((
        "alpha_solves".into(),
        Residual::Scalar(psi1_gamma.sub(&apply_differential(lie, DiffOp::DelBar, &alpha))),
    ));
    // β with [ψ₁,ψ₁]⌟Γ = ∂̄β (cohomological integrability)
    let br_gamma = bracket.contract_into(gamma);
    let basis_bg = basis_pq(n, p - 1, 2);
    let beta = match solve_or_cokernel(
        &cx.mat_delbar(p - 1, 1),
        &form_coords(&br_gamma, &basis_bg),
        &basis_bg,
        n,
    ) {
        Ok(x) => cx.form_from_coords(&basis_pq(n, p - 1, 1), &x),
        Err(cert) => {
            return Err(DeformError::Obstructed(Box::new(Obstruction {
                step: "Step 2: [ψ₁,ψ₁]⌟Γ = ∂̄β unsolvable (cohomological integrability)".into(),
                certificate: cert,
                page1_note: None,
                scope_note: "canonical representative failed",
            })))
        }
    };
    residuals.push((
        "beta_solves".into(),
        Residual::Scalar(br_gamma.sub(&apply_differential(lie, DiffOp::DelBar, &beta))),
    ));
    // δ with ∂(ψ₁⌟∂Γ) = ∂̄δ
    let psi1_dg = psi1.contract_into(&dg);
    let del_psi1_dg = apply_differential(lie, DiffOp::Del, &psi1_dg);
    let basis_d = basis_pq(n, p + 1, 1);
    let delta = match solve_or_cokernel(
        &cx.mat_delbar(p + 1, 0),
        &form_coords(&del_psi1_dg, &basis_d),
        &basis_d,
        n,
    ) {
        Ok(x) => cx.form_from_coords(&basis_pq(n, p + 1, 0), &x),
        Err(cert) => {
            return Err(DeformError::Obstructed(Box::new(Obstruction {
                step: "Step 2: ∂(ψ₁⌟∂Γ) = ∂̄δ unsolvable".into(),
                certificate: cert,
                page1_note: None,
                scope_note: "canonical representative failed",
            })))
        }
    };
    residuals.push((
        "delta_solves".into(),
        Residual::Scalar(del_psi1_dg.sub(&apply_differential(lie, DiffOp::DelBar, &delta))),
    ));
    // the two Claims of the construction, rechecked as identities
    {
        let lhs = br_gamma.add(&psi1.contract_into(&psi1_dg));
        let inner = apply_differential(lie, DiffOp::Del, &psi1.contract_into(&alpha)).sub(
            &psi1
                .contract_into(&apply_differential(lie, DiffOp::Del, &alpha))
                .scale(&Gq::from_int(2)),
        );
        let rhs = apply_differential(lie, DiffOp::DelBar, &inner);
        residuals.push(("claim_bracket_gamma".into(), Residual::Scalar(lhs.sub(&rhs))));
    }
    {
        let lhs = bracket.contract_into(&dg);
        let rhs = psi1
            .contract_into(&del_psi1_dg)
            .scale(&Gq::from_int(2))
            .sub(&apply_differential(lie, DiffOp::Del, &psi1.contract_into(&psi1_dg)));
        residuals.push(("claim_bracket_del_gamma".into(), Residual::Scalar(lhs.sub(&rhs))));
    }
    // Φ₂ with ∂̄∂Φ₂ = ½[ψ₁,ψ₁]⌟u_Γ
    let basis_f = basis_pq(n, n - 1, 2);
    let map = cx.mat_delbar(n - 1, 1).matmul(&cx.mat_del(n - 2, 1));
    let phi2 = match solve_or_cokernel(&map, &form_coords(&half_bracket_u, &basis_f), &basis_f, n) {
        Ok(x) => cx.form_from_coords(&basis_pq(n, n - 2, 1), &x),
        Err(cert) => {
            let p1 = page1_check(lie);
            let note = format!(
                "page-1 identity at bidegree ({},2): {}",
                n - 2,
                if p1.holds[n - 2][2] { "holds" } else { "fails" }
            );
            return Err(DeformError::Obstructed(Box::new(Obstruction {
                step: "Step 2: ∂̄∂Φ₂ = ½[ψ₁,ψ₁]⌟u_Γ unsolvable".into(),
                certificate: cert,
                page1_note: Some(note),
                scope_note: "canonical representative failed",
            })))
        }
    };
    let del_phi2 = apply_differential(lie, DiffOp::Del, &phi2);
    let psi2 = iso1.invert_form(lie, &del_phi2);
    residuals.push((
        "phi2_solves".into(),
        Residual::Scalar(
            apply_differential(lie, DiffOp::DelBar, &del_phi2).sub(&half_bracket_u),
        ),
    ));
    residuals.push((
        "psi2_u_is_del_phi2".into(),
        Residual::Scalar(psi2.contract_into(&u).sub(&del_phi2)),
    ));
    residuals.push((
        "maurer_cartan_order2".into(),
        Residual::Vector(delbar_vform(lie, &psi2).sub(&vform_scale_half(&bracket))),
    ));
    residuals.push((
        "del_psi2_u".into(),
        Residual::Scalar(apply_differential(lie, DiffOp::Del, &psi2.contract_into(&u))),
    ));

    Ok(DeformationCertificate {
        theta1: theta1.clone(),
        eta1,
        zeta1,
        psi1,
        alpha,
        bracket,
        beta,
        delta,
        phi2,
        psi2,
        residuals,
    })
}

/// Best-effort continuation of the Maurer–Cartan recursion
/// `∂̄ψ_ν = ½ Σ_{μ} [ψ_μ, ψ_{ν−μ}]` beyond order two: stops with an obstruction
/// report at the first unsolvable order (nothing beyond ν = 2 is claimed).
#[derive(Clone, Debug)]
pub struct OrderNuResult {
    /// ψ₁, ψ₂, …, up to the last solvable order ≤ nu_max.
    pub psis: Vec<InvariantVectorForm>,
    /// The order that failed and the cokernel witness, if any.
    pub obstruction: Option<(usize, InvariantVectorForm)>,
}

pub fn order_nu(
    lie: &LieCS,
    gamma: &InvariantForm,
    theta1: &InvariantVectorForm,
    nu_max: usize,
) -> Result<OrderNuResult, DeformError> {
    let cert = order2(lie, gamma, theta1)?;
    let mut psis = vec![cert.psi1.clone(), cert.psi2.clone()];
    let cx = InvariantComplex::new(lie);
    let tb1 = cx.tangent_basis(1);
    let tb2 = cx.tangent_basis(2);
    let map = cx.mat_delbar_tangent(1);
    for nu in 3..=nu_max {
        let mut rhs = VectorForm::zero(lie.n);
        for mu in 1..nu {
            rhs = rhs.add(&bracket_inv(lie, &psis[mu - 1], &psis[nu - mu - 1]));
        }
        let rhs = vform_scale_half(&rhs);
        let coords = cx.vform_coords(&tb2, &rhs);
        let sol = rref_solve(&map, Some(&coords));
        match sol.particular {
            Some(x) => psis.push(cx.vform_from_coords(&tb1, &x)),
            None => {
                let im = column_space(&map);
                let red = im.reduce(&coords);
                return Ok(OrderNuResult {
                    psis,
                    obstruction: Some((nu, cx.vform_from_coords(&tb2, &red))),
                });
            }
        }
    }
    Ok(OrderNuResult { psis, obstruction: None })
}

/// Residuals of the Tian–Todorov identities for a ∂-closed top form u.
#[derive(Clone, Debug)]
pub struct TTReport {
    /// `[θ₁,θ₂]⌟u + ∂(θ₁⌟(θ₂⌟u)) − θ₁⌟∂(θ₂⌟u) − θ₂⌟∂(θ₁⌟u)`; an identity for
    /// any ∂-closed u.
    pub generalized_residual: InvariantForm,
    /// Whether ∂(θ₁⌟u) = ∂(θ₂⌟u) = 0, enabling the classical form.
    pub classical_applicable: bool,
    /// `[θ₁,θ₂]⌟u + ∂(θ₁⌟(θ₂⌟u))`, asserted only when applicable.
    pub classical_residual: Option<InvariantForm>,
}

/// Verify the (generalised) Tian–Todorov identity against u.
pub fn tt_verify(
    lie: &LieCS,
    u: &InvariantForm,
    theta1: &InvariantVectorForm,
    theta2: &InvariantVectorForm,
) -> TTReport {
    debug_assert!(apply_differential(lie, DiffOp::Del, u).is_zero(), "tt_verify needs ∂u = 0");
    let br = bracket_inv(lie, theta1, theta2);
    let t2u = theta2.contract_into(u);
    let t1u = theta1.contract_into(u);
    let generalized = br
        .contract_into(u)
        .add(&apply_differential(lie, DiffOp::Del, &theta1.contract_into(&t2u)))
        .sub(&theta1.contract_into(&apply_differential(lie, DiffOp::Del, &t2u)))
        .sub(&theta2.contract_into(&apply_differential(lie, DiffOp::Del, &t1u)));
    let applicable = apply_differential(lie, DiffOp::Del, &t1u).is_zero()
        && apply_differential(lie, DiffOp::Del, &t2u).is_zero();
    let classical = if applicable {
        Some(
            br.contract_into(u)
                .add(&apply_differential(lie, DiffOp::Del, &theta1.contract_into(&t2u))),
        )
    } else {
        None
    };
    TTReport {
        generalized_residual: generalized,
        classical_applicable: applicable,
        classical_residual: classical,
    }
}

/// Outcome of the per-instance cohomological-integrability check
/// `[ψ₁,ψ₁]⌟Γ = ∂̄β`.
#[derive(Clone, Debug)]
pub struct CohIntReport {
    pub beta: Option<InvariantForm>,
    /// Cokernel witness when no β exists (an obstruction report, not an error).
    pub obstruction: Option<InvariantForm>,
}

pub fn coh_int_check(
    lie: &LieCS,
    gamma: &InvariantForm,
    psi1: &InvariantVectorForm,
) -> CohIntReport {
    let n = lie.n;
    let p = (n - 1) / 2;
    let cx = InvariantComplex::new(lie);
    let br = bracket_inv(lie, psi1, psi1);
    let rhs = br.contract_into(gamma);
    let basis = basis_pq(n, p - 1, 2);
    match solve_or_cokernel(&cx.mat_delbar(p - 1, 1), &form_coords(&rhs, &basis), &basis, n) {
        Ok(x) => CohIntReport {
            beta: Some(cx.form_from_coords(&basis_pq(n, p - 1, 1), &x)),
            obstruction: None,
        },
        Err(w) => CohIntReport { beta: None, obstruction: Some(w) },
    }
}

/// For odd p, ∂Γ∧(θ⌟∂Γ) = 0 for every tangent-valued (0,1)-form θ.
pub fn parity_identity_residual(
    lie: &LieCS,
    gamma: &InvariantForm,
    theta: &InvariantVectorForm,
) -> InvariantForm {
    let dg = apply_differential(lie, DiffOp::Del, gamma);
    dg.wedge(&theta.contract_into(&dg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;
    use crate::contact::simple_vform;
    use crate::invariant::random;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    fn iwasawa() -> LieCS {
        catalog_get("iwasawa", &[]).unwrap()
    }

    #[test]
    fn iwasawa_space_is_four_dimensional() {
        let lie = iwasawa();
        let sp = deformation_space(&lie, &lie.phi(3)).unwrap();
        assert_eq!(sp.tangent_h01, 6);
        assert_eq!(sp.dimension, 4);
        for c in &sp.classes {
            assert!(c.delbar_closed);
            assert!(c.class_of_contraction_vanishes);
            assert!(c.z2_membership);
        }
    }

    #[test]
    fn membership_examples() {
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let yes = class_flags(&lie, &gamma, &simple_vform(&lie, 1, 1));
        assert!(yes.class_of_contraction_vanishes && yes.z2_membership);
        let no = class_flags(&lie, &gamma, &simple_vform(&lie, 1, 3));
        assert!(!no.class_of_contraction_vanishes, "[φ̄₁]_∂̄ ≠ 0 in the invariant complex");
        let zero = class_flags(&lie, &gamma, &VectorForm::zero(3));
        assert!(zero.class_of_contraction_vanishes && zero.z2_membership);
    }

    #[test]
    fn order2_on_single_class() {
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let theta = simple_vform(&lie, 1, 1);
        let cert = order2(&lie, &gamma, &theta).unwrap();
        assert!(cert.zeta1.is_zero());
        assert_eq!(cert.psi1, theta, "ψ₁ = θ₁ here");
        assert!(cert.bracket.is_zero());
        assert!(cert.psi2.is_zero());
        assert!(cert.all_residuals_zero(), "{:?}", cert.residuals);
    }

    #[test]
    fn order2_with_nonzero_bracket() {
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let theta = simple_vform(&lie, 1, 1).add(&simple_vform(&lie, 2, 2));
        let cert = order2(&lie, &gamma, &theta).unwrap();
        // [ψ₁,ψ₁] = 2 φ̄₁∧φ̄₂ ⊗ ξ₃
        let expected =
            VectorForm::from_component(3, 3, lie.phibar(1).wedge(&lie.phibar(2)))
                .scale(&Gq::from_int(2));
        assert_eq!(cert.bracket, expected);
        assert!(!cert.psi2.is_zero());
        assert!(cert.all_residuals_zero(), "{:?}", cert.residuals);
        // ∂̄ψ₂ = ½[ψ₁,ψ₁] independently
        let mc = delbar_vform(&lie, &cert.psi2).sub(&vform_scale_half(&cert.bracket));
        assert!(mc.is_zero());
    }

    #[test]
    fn order2_zero_class_gives_zero_certificate() {
        let lie = iwasawa();
        let cert = order2(&lie, &lie.phi(3), &VectorForm::zero(3)).unwrap();
        assert!(cert.eta1.is_zero());
        assert!(cert.psi1.is_zero());
        assert!(cert.psi2.is_zero());
        assert!(cert.all_residuals_zero());
    }

    #[test]
    fn coh_int_examples() {
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let psi = simple_vform(&lie, 1, 1).add(&simple_vform(&lie, 2, 2));
        let r = coh_int_check(&lie, &gamma, &psi);
        // [ψ,ψ]⌟γ = 2φ̄₁∧φ̄₂ = ∂̄(−2φ̄₃)
        assert_eq!(r.beta.unwrap(), lie.phibar(3).scale(&Gq::from_int(-2)));
        // zero bracket ⇒ β = 0
        let r = coh_int_check(&lie, &gamma, &simple_vform(&lie, 1, 1));
        assert!(r.beta.unwrap().is_zero());
    }

    #[test]
    fn coh_int_obstruction_is_reported_not_thrown() {
        // Unsolvable-potential fixture found by searching small instances:
        // on Iwasawa, ψ = φ̄₁⊗ξ₁ + φ̄₃⊗ξ₂ has [ψ,ψ] = 2 φ̄₁∧φ̄₃ ⊗ ξ₃, so
        // [ψ,ψ]⌟γ = 2 φ̄₁∧φ̄₃ while the invariant Im ∂̄ in Λ^{0,2} is spanned
        // by φ̄₁∧φ̄₂ alone. No β exists; the cokernel class is the witness.
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let psi = simple_vform(&lie, 1, 1).add(&simple_vform(&lie, 3, 2));
        let r = coh_int_check(&lie, &gamma, &psi);
        assert!(r.beta.is_none());
        let w = r.obstruction.unwrap();
        let expected = lie.phibar(1).wedge(&lie.phibar(3)).scale(&Gq::from_int(2));
        assert_eq!(w, expected, "cokernel witness 2 φ̄₁∧φ̄₃");
    }

    #[test]
    fn tt_verify_examples() {
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let u = gamma.wedge(&apply_differential(&lie, DiffOp::Del, &gamma));
        let t1 = simple_vform(&lie, 1, 1);
        let r = tt_verify(&lie, &u, &t1, &t1);
        assert!(r.generalized_residual.is_zero());
        assert!(r.classical_applicable);
        assert!(r.classical_residual.unwrap().is_zero());
        // θ₂ = 0
        let r = tt_verify(&lie, &u, &t1, &VectorForm::zero(3));
        assert!(r.generalized_residual.is_zero());
        // nonzero sides: θ₁ = φ̄₁⊗ξ₁, θ₂ = φ̄₂⊗ξ₂
        let t2 = simple_vform(&lie, 2, 2);
        let br = bracket_inv(&lie, &t1, &t2);
        assert!(!br.contract_into(&u).is_zero(), "sides are nonzero");
        let r = tt_verify(&lie, &u, &t1, &t2);
        assert!(r.generalized_residual.is_zero());
        assert!(r.classical_applicable);
        assert!(r.classical_residual.unwrap().is_zero());
    }

    #[test]
    fn parity_identity_for_odd_p() {
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let theta = random::vform(&mut rng, 3, 1);
            assert!(parity_identity_residual(&lie, &gamma, &theta).is_zero());
        }
    }

    #[test]
    fn space_is_representative_independent() {
        // replacing θ by θ + ∂̄ξ must not change the membership flags; h15 has
        // nonzero ∂̄ on invariant vectors, so the test is not vacuous there.
        let lie = catalog_get("h15", &[]).unwrap();
        let gamma = lie.phi(3);
        let tangent = crate::cohomology::dolbeault_tangent(&lie);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut nontrivial = false;
        for rep in &tangent.representatives[1] {
            // ∂̄-closed by construction; random ∂̄-closed combinations too
            let c = random::small_gq(&mut rng);
            let theta = rep.scale(&c);
            assert!(delbar_vform(&lie, &theta).is_zero());
            let xi = random::vector(&mut rng, 3);
            let mut xiv = VectorForm::zero(3);
            for (k, c) in xi.iter().enumerate() {
                xiv.add_component(k + 1, Form::from_term(3, Mono::ONE, c.clone()));
            }
            let shift = delbar_vform(&lie, &xiv);
            if !shift.is_zero() {
                nontrivial = true;
            }
            let a = class_flags(&lie, &gamma, &theta);
            let b = class_flags(&lie, &gamma, &theta.add(&shift));
            assert_eq!(a.class_of_contraction_vanishes, b.class_of_contraction_vanishes);
            assert_eq!(a.z2_membership, b.z2_membership);
        }
        assert!(nontrivial, "at least one shift must be nonzero for the test to bite");
    }

    #[test]
    fn image_space_identity_per_class() {
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let sp = deformation_space(&lie, &gamma).unwrap();
        let im = image_space(&lie, &gamma, &sp.classes);
        let u = gamma.wedge(&apply_differential(&lie, DiffOp::Del, &gamma));
        let dg = apply_differential(&lie, DiffOp::Del, &gamma);
        for (c, (eta, pot)) in
            sp.classes.iter().zip(im.images.iter().zip(im.exactness_potentials.iter()))
        {
            // θ⌟u = (θ⌟Γ)∧∂Γ + Γ∧(θ⌟∂Γ), exactly
            let lhs = c.theta1.contract_into(&u);
            let rhs = c.theta1.contract_into(&gamma).wedge(&dg).add(eta);
            assert_eq!(lhs, rhs);
            // (θ⌟Γ)∧∂Γ = ∂̄(α∧∂Γ)
            let pot = pot.as_ref().unwrap();
            assert_eq!(
                c.theta1.contract_into(&gamma).wedge(&dg),
                apply_differential(&lie, DiffOp::DelBar, pot)
            );
        }
        assert!(im.dimension <= sp.dimension);
        // θ = 0 maps to 0
        let zero = class_flags(&lie, &gamma, &VectorForm::zero(3));
        let im0 = image_space(&lie, &gamma, &[zero]);
        assert!(im0.images[0].is_zero());
    }

    #[test]
    fn order_nu_continues_past_two() {
        let lie = iwasawa();
        let gamma = lie.phi(3);
        let theta = simple_vform(&lie, 1, 1).add(&simple_vform(&lie, 2, 2));
        let r = order_nu(&lie, &gamma, &theta, 4).unwrap();
        assert!(r.obstruction.is_none());
        assert_eq!(r.psis.len(), 4);
        // every solved order satisfies its equation
        for nu in 2..=4usize {
            let mut rhs = VectorForm::zero(3);
            for mu in 1..nu {
                rhs = rhs.add(&bracket_inv(&lie, &r.psis[mu - 1], &r.psis[nu - mu - 1]));
            }
            let rhs = vform_scale_half(&rhs);
            assert_eq!(delbar_vform(&lie, &r.psis[nu - 1]), rhs, "order {nu}");
        }
    }
}
