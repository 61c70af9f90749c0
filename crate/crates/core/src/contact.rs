//! Holomorphic p-contact and p-no-contact structures on invariant complexes.
//!
//! On a Lie algebra with complex structure of complex dimension n = 2p+1, a
//! (p,0)-form Γ is p-contact when ∂̄Γ = 0 and Γ∧∂Γ ≠ 0, and p-no-contact when
//! ∂̄Γ = 0 and ∂Γ = Γ∧ζ for some (1,0)-form ζ. Since the coframe trivialises
//! the bundle, an invariant top-degree form is nowhere zero on the quotient
//! iff its single coefficient is nonzero; that one scalar decides "at every
//! point". All verdicts here are invariant-level.

use crate::exterior::{basis_pq, Form, Mono, VectorForm};
use crate::invariant::{
    apply_differential, conj, contract_vector, lie_derivative, DiffOp, InvariantForm,
    InvariantVectorForm, LieCS,
};
use crate::linalg::{kernel_space, rref_solve, Matrix, Subspace};
use crate::scalars::Gq;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum ContactError {
    /// n must equal 2p+1.
    DimensionParity { n: usize, p: usize },
    /// The form does not have the required pure bidegree.
    WrongBidegree { expected: (usize, usize), found: Option<(usize, usize)> },
    /// A p-contact structure was required; carries the failed condition.
    NotContact(String),
}

impl fmt::Display for ContactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContactError::DimensionParity { n, p } => {
                write!(f, "dimension {n} is not 2p+1 for p = {p}")
            }
            ContactError::WrongBidegree { expected, found } => write!(
                f,
                "form has bidegree {found:?}, expected ({},{})",
                expected.0, expected.1
            ),
            ContactError::NotContact(cond) => {
                write!(f, "not a p-contact structure: {cond}")
            }
        }
    }
}

impl std::error::Error for ContactError {}

/// A checked p-contact structure with its cached derived data.
#[derive(Clone, Debug)]
pub struct ContactStructure {
    pub lie: LieCS,
    pub p: usize,
    pub gamma: InvariantForm,
    pub d_gamma: InvariantForm,
    /// u_Γ = Γ∧∂Γ, the induced nonvanishing (n,0)-form.
    pub u_gamma: InvariantForm,
    /// The single coefficient of u_Γ on φ_1∧…∧φ_n.
    pub top_coefficient: Gq,
}

impl ContactStructure {
    /// Validate the two contact conditions and cache ∂Γ and u_Γ.
    pub fn new(lie: &LieCS, gamma: &InvariantForm) -> Result<Self, ContactError> {
        let check = is_p_contact(lie, gamma)?;
        if let Some(cond) = check.failed_condition {
            return Err(ContactError::NotContact(cond));
        }
        let p = (lie.n - 1) / 2;
        let d_gamma = apply_differential(lie, DiffOp::Del, gamma);
        let u_gamma = gamma.wedge(&d_gamma);
        Ok(ContactStructure {
            lie: lie.clone(),
            p,
            gamma: gamma.clone(),
            d_gamma,
            u_gamma,
            top_coefficient: check.top_coefficient,
        })
    }
}

/// Verdict of the p-contact test.
#[derive(Clone, Debug)]
pub struct ContactCheck {
    pub holds: bool,
    pub top_coefficient: Gq,
    /// Which of (a) ∂̄Γ = 0, (b) Γ∧∂Γ ≠ 0 failed, when `holds` is false.
    pub failed_condition: Option<String>,
}

fn top_un_mono(n: usize) -> Mono {
    Mono { un: (1u64 << n) - 1, bar: 0 }
}

fn expect_bidegree(
    lie: &LieCS,
    gamma: &InvariantForm,
    pq: (usize, usize),
) -> Result<(), ContactError> {
    if gamma.is_zero() {
        return Ok(());
    }
    match gamma.homogeneous_bidegree() {
        Some(found) if found == pq => Ok(()),
        found => Err(ContactError::WrongBidegree { expected: pq, found }),
    }
    .and_then(|()| {
        if lie.n == 2 * pq.0 + 1 {
            Ok(())
        } else {
            Err(ContactError::DimensionParity { n: lie.n, p: pq.0 })
        }
    })
}

/// Decide whether Γ is a holomorphic p-contact structure: (a) ∂̄Γ = 0 and
/// (b) the coefficient of Γ∧∂Γ on the top (n,0) monomial is nonzero.
pub fn is_p_contact(lie: &LieCS, gamma: &InvariantForm) -> Result<ContactCheck, ContactError> {
    let p = (lie.n.max(1) - 1) / 2;
    expect_bidegree(lie, gamma, (p, 0))?;
    let delbar_ok = apply_differential(lie, DiffOp::DelBar, gamma).is_zero();
    let u = gamma.wedge(&apply_differential(lie, DiffOp::Del, gamma));
    let top = u.coeff(&top_un_mono(lie.n)).cloned().unwrap_or_else(Gq::zero);
    let failed = if !delbar_ok {
        Some("(a) delbar Gamma != 0".to_string())
    } else if top.is_zero() {
        Some("(b) Gamma^(del Gamma) = 0".to_string())
    } else {
        None
    };
    Ok(ContactCheck { holds: failed.is_none(), top_coefficient: top, failed_condition: failed })
}

/// Verdict of the p-no-contact test.
#[derive(Clone, Debug)]
pub struct NoContactCheck {
    pub holds: bool,
    /// Deterministic particular solution of ∂Γ = Γ∧ζ.
    pub zeta: Option<InvariantForm>,
    pub failed_condition: Option<String>,
}

/// Decide whether Γ is a holomorphic p-no-contact structure: ∂̄Γ = 0 and the
/// linear system ∂Γ = Γ∧ζ is solvable for an invariant (1,0)-form ζ.
pub fn is_p_no_contact(lie: &LieCS, gamma: &InvariantForm) -> Result<NoContactCheck, ContactError> {
    let p = (lie.n.max(1) - 1) / 2;
    expect_bidegree(lie, gamma, (p, 0))?;
    if !apply_differential(lie, DiffOp::DelBar, gamma).is_zero() {
        return Ok(NoContactCheck {
            holds: false,
            zeta: None,
            failed_condition: Some("(a) delbar Gamma != 0".to_string()),
        });
    }
    let basis = basis_pq(lie.n, p + 1, 0);
    let cols: Vec<Vec<Gq>> = (1..=lie.n)
        .map(|k| gamma.wedge(&lie.phi(k)).coordinates(&basis, &Gq::zero()))
        .collect();
    let a = Matrix::from_cols(basis.len(), &cols);
    let rhs = apply_differential(lie, DiffOp::Del, gamma).coordinates(&basis, &Gq::zero());
    let sol = rref_solve(&a, Some(&rhs));
    match sol.particular {
        Some(z) => {
            let mut zeta = Form::zero(lie.n);
            for (k, c) in z.iter().enumerate() {
                zeta.add_term(Mono::single_un(k + 1), c.clone());
            }
            Ok(NoContactCheck { holds: true, zeta: Some(zeta), failed_condition: None })
        }
        None => Ok(NoContactCheck {
            holds: false,
            zeta: None,
            failed_condition: Some("(b) del Gamma = Gamma^zeta unsolvable".to_string()),
        }),
    }
}

/// Outcome of the invariant existence decision.
#[derive(Clone, Debug)]
pub struct ExistsResult {
    pub exists: bool,
    pub witness: Option<InvariantForm>,
    /// RREF-canonical basis of V = ker ∂̄ ∩ Λ^{p,0}.
    pub closed_basis: Vec<InvariantForm>,
    /// Polarization matrix B(v_i,v_j) = coeff(v_i∧∂v_j + v_j∧∂v_i); existence
    /// is equivalent to B ≠ 0, and the all-zero matrix is the negative
    /// certificate.
    pub polarization: Matrix,
    /// Scope marker: the decision quantifies over invariant forms only.
    pub invariant_level: bool,
}

/// Decide existence of an invariant holomorphic p-contact structure by
/// polarizing the quadratic form Q(Γ) = coeff(Γ∧∂Γ) on V = ker ∂̄ ∩ Λ^{p,0}.
pub fn contact_exists(lie: &LieCS, p: usize) -> Result<ExistsResult, ContactError> {
    if lie.n != 2 * p + 1 {
        return Err(ContactError::DimensionParity { n: lie.n, p });
    }
    let n = lie.n;
    let dom = basis_pq(n, p, 0);
    let cod = basis_pq(n, p, 1);
    let cols: Vec<Vec<Gq>> = dom
        .iter()
        .map(|m| {
            let f = Form::from_term(n, *m, Gq::one());
            apply_differential(lie, DiffOp::DelBar, &f).coordinates(&cod, &Gq::zero())
        })
        .collect();
    let v_space = kernel_space(&Matrix::from_cols(cod.len(), &cols));
    let basis_forms: Vec<InvariantForm> = v_space
        .basis
        .iter()
        .map(|coords| {
            let mut f = Form::zero(n);
            for (i, c) in coords.iter().enumerate() {
                f.add_term(dom[i], c.clone());
            }
            f
        })
        .collect();
    let top = top_un_mono(n);
    let topc = |f: &InvariantForm| f.coeff(&top).cloned().unwrap_or_else(Gq::zero);
    let m = basis_forms.len();
    let mut pol = Matrix::zero(m, m);
    let dels: Vec<InvariantForm> =
        basis_forms.iter().map(|f| apply_differential(lie, DiffOp::Del, f)).collect();
    for i in 0..m {
        for j in 0..m {
            let b = &topc(&basis_forms[i].wedge(&dels[j])) + &topc(&basis_forms[j].wedge(&dels[i]));
            pol[(i, j)] = b;
        }
    }
    // Q(v_i) = B(v_i,v_i)/2; witness: first diagonal hit, else first pair sum
    let mut witness = None;
    for idx in 0..m {
        if !pol[(idx, idx)].is_zero() {
            witness = Some(basis_forms[idx].clone());
            break;
        }
    }
    if witness.is_none() {
        'outer: for idx in 0..m {
            for j in (idx + 1)..m {
                if !pol[(idx, j)].is_zero() {
                    witness = Some(basis_forms[idx].add(&basis_forms[j]));
                    break 'outer;
                }
            }
        }
    }
    Ok(ExistsResult {
        exists: witness.is_some(),
        witness,
        closed_basis: basis_forms,
        polarization: pol,
        invariant_level: true,
    })
}

/// A subspace handed back as explicit coefficient tuples over a stated basis.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub ambient: String,
    pub basis: Vec<Vec<Gq>>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The kernels `F_Γ = {ξ : ξ⌟Γ = 0}` and `G_Γ = {ξ : ξ⌟∂Γ = 0}` inside the
/// invariant (1,0)-vectors, as RREF-canonical bases over the frame ξ_1..ξ_n.
pub fn kernels(lie: &LieCS, gamma: &InvariantForm) -> (SubspaceBasis, SubspaceBasis) {
    let f = contraction_kernel(lie, gamma);
    let dg = apply_differential(lie, DiffOp::Del, gamma);
    let g = contraction_kernel(lie, &dg);
    (
        SubspaceBasis { ambient: format!("xi frame, dim {}", lie.n), basis: f.basis },
        SubspaceBasis { ambient: format!("xi frame, dim {}", lie.n), basis: g.basis },
    )
}

fn contraction_kernel(lie: &LieCS, target: &InvariantForm) -> Subspace {
    let n = lie.n;
    // coordinates over the union of monomials hit by any ξ_k⌟target
    let images: Vec<InvariantForm> = (1..=n).map(|k| target.contract_xi(k)).collect();
    let mut monos: Vec<Mono> = images.iter().flat_map(|f| f.terms().map(|(m, _)| *m)).collect();
    monos.sort_unstable();
    monos.dedup();
    if monos.is_empty() {
        return Subspace::full(n);
    }
    let cols: Vec<Vec<Gq>> = images.iter().map(|f| f.coordinates(&monos, &Gq::zero())).collect();
    kernel_space(&Matrix::from_cols(monos.len(), &cols))
}

/// Verdict of the foliation-integrability test for F_Γ.
#[derive(Clone, Debug)]
pub struct FoliationCheck {
    pub closed_under_bracket: bool,
    /// Indices (into the F basis) of the first violating pair, with the
    /// nonzero contraction `[v_i,v_j]⌟Γ`.
    pub violating_pair: Option<(usize, usize, InvariantForm)>,
}

/// Test `[F_Γ, F_Γ] ⊆ F_Γ` on all basis pairs: `[v,w]⌟Γ` must vanish.
pub fn foliation_check(lie: &LieCS, gamma: &InvariantForm) -> FoliationCheck {
    let (f, _) = kernels(lie, gamma);
    for (i, v) in f.basis.iter().enumerate() {
        for (j, w) in f.basis.iter().enumerate().skip(i + 1) {
            let mut br = vec![Gq::zero(); lie.n];
            for (a, ca) in v.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (b, cb) in w.iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    let factor = ca * cb;
                    for (t, c) in lie.bracket_frame(a + 1, b + 1).iter().enumerate() {
                        if !c.is_zero() {
                            let d = &factor * c;
                            br[t] = &br[t] + &d;
                        }
                    }
                }
            }
            let contracted = contract_vector(&br, gamma);
            if !contracted.is_zero() {
                return FoliationCheck {
                    closed_under_bracket: false,
                    violating_pair: Some((i, j, contracted)),
                };
            }
        }
    }
    FoliationCheck { closed_under_bracket: true, violating_pair: None }
}

/// Horizontal/vertical classification flags of a tangent-valued form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFormClass {
    pub horizontal: bool,
    pub vertical: bool,
    pub constantly_horizontal: bool,
    pub constantly_vertical: bool,
    /// The ∂-condition and the L_θ-condition formulations must agree; this
    /// records that both were computed and did.
    pub formulations_agree: bool,
}

/// Classify θ against Γ: horizontal ⇔ θ⌟Γ = 0, vertical ⇔ θ⌟∂Γ = 0; the
/// "constantly" flags add ∂(θ⌟∂Γ) = 0 resp. ∂(θ⌟Γ) = 0. Both the ∂-form and
/// the L_θ-form of the conditions are evaluated.
pub fn classify_vform(
    lie: &LieCS,
    gamma: &InvariantForm,
    theta: &InvariantVectorForm,
) -> VFormClass {
    let dg = apply_differential(lie, DiffOp::Del, gamma);
    let cg = theta.contract_into(gamma);
    let cdg = theta.contract_into(&dg);
    let horizontal = cg.is_zero();
    let vertical = cdg.is_zero();
    let ch = horizontal && apply_differential(lie, DiffOp::Del, &cdg).is_zero();
    let cv = vertical && apply_differential(lie, DiffOp::Del, &cg).is_zero();
    // second formulation via the Lie derivative
    let ch2 = horizontal && lie_derivative(lie, theta, &dg).is_zero();
    let cv2 = vertical && lie_derivative(lie, theta, gamma).is_zero();
    VFormClass {
        horizontal,
        vertical,
        constantly_horizontal: ch,
        constantly_vertical: cv,
        formulations_agree: ch == ch2 && cv == cv2,
    }
}

/// The incompatibility identity and the volume form it protects.
#[derive(Clone, Debug)]
pub struct IncompatReport {
    /// i^{(p+1)²}∂Γ∧∂̄Γ̄ − ∂∂̄(−i^{(p+1)²}Γ∧Γ̄); identically zero whenever
    /// ∂̄Γ = 0.
    pub residual: InvariantForm,
    /// dV_Γ = i^{n²}(Γ∧∂Γ)∧(Γ̄∧∂̄Γ̄).
    pub dv_gamma: InvariantForm,
    pub dv_nonzero: bool,
}

/// Evaluate the ∂∂̄-exactness identity behind the incompatibility of contact
/// structures with ∂∂̄-closed positive currents, and the volume form dV_Γ.
pub fn obs_incompat_identity(lie: &LieCS, gamma: &InvariantForm) -> IncompatReport {
    let n = lie.n;
    let p = (n - 1) / 2;
    let gbar = conj(gamma);
    let del_g = apply_differential(lie, DiffOp::Del, gamma);
    let delbar_gbar = apply_differential(lie, DiffOp::DelBar, &gbar);
    let unit = Gq::i_pow(((p + 1) * (p + 1)) as i64);
    let lhs = del_g.wedge(&delbar_gbar).scale(&unit);
    let inner = gamma.wedge(&gbar).scale(&-&unit);
    let rhs = apply_differential(lie, DiffOp::Del, &apply_differential(lie, DiffOp::DelBar, &inner));
    let residual = lhs.sub(&rhs);
    let dv = gamma
        .wedge(&del_g)
        .wedge(&gbar.wedge(&delbar_gbar))
        .scale(&Gq::i_pow((n * n) as i64));
    let top = Mono { un: (1u64 << n) - 1, bar: (1u64 << n) - 1 };
    let dv_nonzero = dv.coeff(&top).is_some_and(|c| !c.is_zero());
    IncompatReport { residual, dv_gamma: dv, dv_nonzero }
}

/// Convenience: θ = φ̄_a ⊗ ξ_k.
pub fn simple_vform(lie: &LieCS, a: usize, k: usize) -> InvariantVectorForm {
    VectorForm::from_component(lie.n, k, lie.phibar(a))
}
