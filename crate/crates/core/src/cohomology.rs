//! Cohomology of the invariant complex: Dolbeault and de Rham groups, the
//! E₂-closed/E₂-exact spaces, Frölicher spectral pages and the page-1
//! criterion, plus the Calabi–Yau isomorphism T_Γ = ·⌟u_Γ.
//!
//! Everything is finite-dimensional exact linear algebra over ℚ(i). Higher
//! spectral pages come from the filtered-complex sub-quotient recursion with
//! `Z_r^{p,q} = F^p K^{p+q} ∩ d^{-1}(F^{p+r} K^{p+q+1})`; no Hodge-theoretic
//! shortcuts. All dimensions are invariant-level quantities.

use crate::contact::{is_p_contact, ContactError, SubspaceBasis};
use crate::exterior::{basis_pq, render_mono, Form, Mono, VectorForm};
use crate::invariant::{
    apply_differential, delbar_vform, DiffOp, InvariantForm, InvariantVectorForm, LieCS,
};
use crate::linalg::{column_space, invert, kernel_space, Matrix, Subspace};
use crate::scalars::Gq;

/// Scope marker attached to every report: these are invariant-complex
/// quantities, equal to manifold cohomology only where comparison theorems
/// apply.
pub const SCOPE: &str = "invariant-level";

/// Cohomology dimensions and canonical representatives.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub scope: &'static str,
    /// Scalar Dolbeault dims h^{p,q}, indexed `h[p][q]`; `None` for de Rham-only
    /// reports.
    pub h: Option<Vec<Vec<usize>>>,
    /// RREF-canonical Dolbeault representatives per bidegree.
    pub representatives: Option<Vec<Vec<Vec<InvariantForm>>>>,
    /// Betti numbers b_0..b_{2n} of (Λ g*_ℂ, d).
    pub betti: Vec<usize>,
    /// χ = Σ (−1)^k b_k (always 0 on an invariant complex).
    pub euler: i64,
}

/// Tangent-valued Dolbeault data H^{0,q}(T^{1,0}).
#[derive(Clone, Debug)]
pub struct TangentCohomology {
    pub scope: &'static str,
    pub hq: Vec<usize>,
    pub representatives: Vec<Vec<InvariantVectorForm>>,
}

/// Matrices of the three differentials between fixed monomial bases.
pub struct InvariantComplex<'a> {
    pub lie: &'a LieCS,
}

impl<'a> InvariantComplex<'a> {
    pub fn new(lie: &'a LieCS) -> Self {
        InvariantComplex { lie }
    }

    pub fn n(&self) -> usize {
        self.lie.n
    }

    pub fn basis(&self, p: usize, q: usize) -> Vec<Mono> {
        basis_pq(self.lie.n, p, q)
    }

    pub fn form_from_coords(&self, basis: &[Mono], coords: &[Gq]) -> InvariantForm {
        let mut f = Form::zero(self.lie.n);
        for (i, c) in coords.iter().enumerate() {
            f.add_term(basis[i], c.clone());
        }
        f
    }

    /// Matrix of ∂ : Λ^{p,q} → Λ^{p+1,q}.
    pub fn mat_del(&self, p: usize, q: usize) -> Matrix {
        self.mat_op(DiffOp::Del, p, q, p + 1, q)
    }

    /// Matrix of ∂̄ : Λ^{p,q} → Λ^{p,q+1}.
    pub fn mat_delbar(&self, p: usize, q: usize) -> Matrix {
        self.mat_op(DiffOp::DelBar, p, q, p, q + 1)
    }

    fn mat_op(&self, op: DiffOp, p: usize, q: usize, tp: usize, tq: usize) -> Matrix {
        let dom = self.basis(p, q);
        let cod = self.basis(tp, tq);
        let cols: Vec<Vec<Gq>> = dom
            .iter()
            .map(|m| {
                let f = Form::from_term(self.lie.n, *m, Gq::one());
                apply_differential(self.lie, op, &f).coordinates(&cod, &Gq::zero())
            })
            .collect();
        Matrix::from_cols(cod.len(), &cols)
    }

    /// Basis of Λ^{0,q} ⊗ g^{1,0}: pairs (k, J) ordered frame-major.
    pub fn tangent_basis(&self, q: usize) -> Vec<(usize, Mono)> {
        let mut out = Vec::new();
        for k in 1..=self.lie.n {
            for m in self.basis(0, q) {
                out.push((k, m));
            }
        }
        out
    }

    pub fn vform_from_coords(
        &self,
        basis: &[(usize, Mono)],
        coords: &[Gq],
    ) -> InvariantVectorForm {
        let mut v = VectorForm::zero(self.lie.n);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let (k, m) = basis[i];
                v.add_component(k, Form::from_term(self.lie.n, m, c.clone()));
            }
        }
        v
    }

    pub fn vform_coords(&self, basis: &[(usize, Mono)], v: &InvariantVectorForm) -> Vec<Gq> {
        let mut out = vec![Gq::zero(); basis.len()];
        let index: std::collections::BTreeMap<(usize, Mono), usize> =
            basis.iter().enumerate().map(|(i, km)| (*km, i)).collect();
        for (k, f) in v.components() {
            for (m, c) in f.terms() {
                let i = *index
                    .get(&(k, *m))
                    .unwrap_or_else(|| panic!("vector-form term outside basis"));
                out[i] = c.clone();
            }
        }
        out
    }

    /// Matrix of the tangent-valued ∂̄ : Λ^{0,q}⊗T → Λ^{0,q+1}⊗T.
    pub fn mat_delbar_tangent(&self, q: usize) -> Matrix {
        let dom = self.tangent_basis(q);
        let cod = self.tangent_basis(q + 1);
        let cols: Vec<Vec<Gq>> = dom
            .iter()
            .map(|(k, m)| {
                let v = VectorForm::from_component(
                    self.lie.n,
                    *k,
                    Form::from_term(self.lie.n, *m, Gq::one()),
                );
                self.vform_coords(&cod, &delbar_vform(self.lie, &v))
            })
            .collect();
        Matrix::from_cols(cod.len(), &cols)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Scalar Dolbeault cohomology of the invariant complex, with Betti numbers.
pub fn dolbeault(lie: &LieCS) -> CohomologyReport {
    let cx = InvariantComplex::new(lie);
    let n = lie.n;
    let mut h = vec![vec![0usize; n + 1]; n + 1];
    let mut reps = vec![vec![Vec::new(); n + 1]; n + 1];
    for p in 0..=n {
        for q in 0..=n {
            let ker = kernel_space(&cx.mat_delbar(p, q));
            let img = if q == 0 {
                Subspace::zero(binomial(n, p) * binomial(n, q))
            } else {
                column_space(&cx.mat_delbar(p, q - 1))
            };
            h[p][q] = ker.dim() - img.dim();
            let basis = cx.basis(p, q);
            reps[p][q] = img
                .complement_reps_in(&ker)
                .iter()
                .map(|coords| cx.form_from_coords(&basis, coords))
                .collect();
        }
    }
    let betti = betti_numbers(lie);
    let euler = euler_of(&betti);
    CohomologyReport { scope: SCOPE, h: Some(h), representatives: Some(reps), betti, euler }
}

/// Tangent Dolbeault cohomology H^{0,q}(T^{1,0}) of the invariant complex.
pub fn dolbeault_tangent(lie: &LieCS) -> TangentCohomology {
    let cx = InvariantComplex::new(lie);
    let n = lie.n;
    let mut hq = Vec::new();
    let mut reps = Vec::new();
    for q in 0..=n {
        let ker = kernel_space(&cx.mat_delbar_tangent(q));
        let img = if q == 0 {
            Subspace::zero(n * binomial(n, q))
        } else {
            column_space(&cx.mat_delbar_tangent(q - 1))
        };
        hq.push(ker.dim() - img.dim());
        let basis = cx.tangent_basis(q);
        reps.push(
            img.complement_reps_in(&ker)
                .iter()
                .map(|coords| cx.vform_from_coords(&basis, coords))
                .collect(),
        );
    }
    TangentCohomology { scope: SCOPE, hq, representatives: reps }
}

/// Betti numbers of the full de Rham complex (Λ g*_ℂ, d).
pub fn betti_numbers(lie: &LieCS) -> Vec<usize> {
    let n = lie.n;
    let mut out = Vec::new();
    for k in 0..=2 * n {
        let ker = kernel_space(&total_d_matrix(lie, k));
        let img = if k == 0 {
            Subspace::zero(total_basis(n, 0).len())
        } else {
            column_space(&total_d_matrix(lie, k - 1))
        };
        out.push(ker.dim() - img.dim());
    }
    out
}

fn euler_of(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

/// de Rham cohomology of the invariant complex.
pub fn derham(lie: &LieCS) -> CohomologyReport {
    let betti = betti_numbers(lie);
    let euler = euler_of(&betti);
    CohomologyReport { scope: SCOPE, h: None, representatives: None, betti, euler }
}

/// Monomials of total degree k, hol-degree descending then basis order;
/// F^p K^k is a coordinate prefix in this ordering.
pub fn total_basis(n: usize, k: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let lo = k.saturating_sub(n);
    let hi = k.min(n);
    for p in (lo..=hi).rev() {
        out.extend(basis_pq(n, p, k - p));
    }
    out
}

fn total_d_matrix(lie: &LieCS, k: usize) -> Matrix {
    let dom = total_basis(lie.n, k);
    let cod = total_basis(lie.n, k + 1);
    let cols: Vec<Vec<Gq>> = dom
        .iter()
        .map(|m| {
            let f = Form::from_term(lie.n, *m, Gq::one());
            apply_differential(lie, DiffOp::D, &f).coordinates(&cod, &Gq::zero())
        })
        .collect();
    Matrix::from_cols(cod.len(), &cols)
}

/// `{x ∈ F^{pmin} K^k : dx ∈ F^{tmin} K^{k+1}}` as a subspace of K^k.
fn zr_space(lie: &LieCS, pmin: isize, k: isize, tmin: isize) -> Subspace {
    let n = lie.n as isize;
    if k < 0 || k > 2 * n {
        return Subspace::zero(0);
    }
    let k = k as usize;
    let dom = total_basis(lie.n, k);
    if dom.is_empty() {
        return Subspace::zero(0);
    }
    // coordinates allowed in F^{pmin}
    let allowed: Vec<usize> = dom
        .iter()
        .enumerate()
        .filter(|(_, m)| (m.p() as isize) >= pmin)
        .map(|(i, _)| i)
        .collect();
    let cod = total_basis(lie.n, k + 1);
    let d = total_d_matrix(lie, k);
    // rows of d outside F^{tmin} must vanish
    let bad_rows: Vec<usize> = cod
        .iter()
        .enumerate()
        .filter(|(_, m)| (m.p() as isize) < tmin)
        .map(|(i, _)| i)
        .collect();
    let mut constraint = Matrix::zero(bad_rows.len(), allowed.len());
    for (r, &row) in bad_rows.iter().enumerate() {
        for (c, &col) in allowed.iter().enumerate() {
            constraint[(r, c)] = d[(row, col)].clone();
        }
    }
    let ker = kernel_space(&constraint);
    // embed back into K^k coordinates
    let vs: Vec<Vec<Gq>> = ker
        .basis
        .iter()
        .map(|v| {
            let mut full = vec![Gq::zero(); dom.len()];
            for (c, &col) in allowed.iter().enumerate() {
                full[col] = v[c].clone();
            }
            full
        })
        .collect();
    Subspace::from_span(dom.len(), &vs)
}

/// One Frölicher page.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    /// `dims[p][q]` = dim E_r^{p,q}.
    pub dims: Vec<Vec<usize>>,
}

/// Frölicher pages E_1..E_{r_max} and the stabilization index.
#[derive(Clone, Debug)]
pub struct FrolicherReport {
    pub scope: &'static str,
    pub pages: Vec<SpectralPage>,
    /// Smallest r with E_r = E_∞ among the computed pages.
    pub stabilization: usize,
}

/// Compute pages E_1..E_{r_max} of the Frölicher spectral sequence by the
/// filtered-complex sub-quotient recursion. With the default cap r_max = 2n
/// the final page is E_∞ (differentials vanish identically once r > n).
pub fn frolicher(lie: &LieCS, r_max: usize) -> FrolicherReport {
    let n = lie.n;
    let mut pages = Vec::new();
    for r in 1..=r_max {
        let mut dims = vec![vec![0usize; n + 1]; n + 1];
        for p in 0..=n {
            for q in 0..=n {
                dims[p][q] = e_r_dim(lie, p, q, r);
            }
        }
        pages.push(SpectralPage { r, dims });
    }
    let last = pages.last().expect("r_max >= 1").dims.clone();
    let mut stabilization = pages.len();
    for page in pages.iter().rev() {
        if page.dims == last {
            stabilization = page.r;
        } else {
            break;
        }
    }
    FrolicherReport { scope: SCOPE, pages, stabilization }
}

fn e_r_dim(lie: &LieCS, p: usize, q: usize, r: usize) -> usize {
    let (p, q, r) = (p as isize, q as isize, r as isize);
    let k = p + q;
    let num = zr_space(lie, p, k, p + r);
    if num.dim() == 0 {
        return 0;
    }
    let den_a = zr_space(lie, p + 1, k, p + r);
    let den_b = {
        let src = zr_space(lie, p - r + 1, k - 1, p);
        if k - 1 < 0 || src.dim() == 0 {
            Subspace::zero(num.ambient)
        } else {
            src.image_under(&total_d_matrix(lie, (k - 1) as usize))
        }
    };
    let den = den_a.sum(&den_b);
    debug_assert!(num.contains_subspace(&den), "spectral denominator not inside numerator");
    num.dim() - den.dim()
}

/// The E₂-closed and E₂-exact subspaces of Λ^{p,q}:
/// `Z₂ = {u : ∂̄u = 0, ∂u ∈ Im ∂̄}` and `C₂ = ∂(ker ∂̄) + Im ∂̄`.
pub fn z2_c2_spaces(lie: &LieCS, p: usize, q: usize) -> (Subspace, Subspace) {
    let cx = InvariantComplex::new(lie);
    let n = lie.n;
    let dim_pq = binomial(n, p) * binomial(n, q);
    let ker_delbar = kernel_space(&cx.mat_delbar(p, q));
    let img_delbar_up = if q == 0 {
        Subspace::zero(binomial(n, p + 1) * binomial(n, q))
    } else {
        column_space(&cx.mat_delbar(p + 1, q - 1))
    };
    let z2 = if p == n {
        // ∂ lands in degree n+1 = 0, no condition beyond ∂̄-closedness
        ker_delbar
    } else {
        let pre = Subspace::preimage_under(&cx.mat_del(p, q), &img_delbar_up);
        ker_delbar.intersect(&pre)
    };
    let c2_del_part = if p == 0 {
        Subspace::zero(dim_pq)
    } else {
        kernel_space(&cx.mat_delbar(p - 1, q)).image_under(&cx.mat_del(p - 1, q))
    };
    let c2_delbar_part = if q == 0 {
        Subspace::zero(dim_pq)
    } else {
        column_space(&cx.mat_delbar(p, q - 1))
    };
    let c2 = c2_del_part.sum(&c2_delbar_part);
    (z2, c2)
}

/// Z₂ and C₂ as explicit coefficient bases over the (p,q) monomial basis.
pub fn z2_c2(lie: &LieCS, p: usize, q: usize) -> (SubspaceBasis, SubspaceBasis) {
    let (z2, c2) = z2_c2_spaces(lie, p, q);
    let label = format!(
        "Lambda^({p},{q}) basis: {}",
        basis_pq(lie.n, p, q)
            .iter()
            .map(|m| render_mono(*m, "phi", None))
            .collect::<Vec<_>>()
            .join(", ")
    );
    (
        SubspaceBasis { ambient: label.clone(), basis: z2.basis },
        SubspaceBasis { ambient: label, basis: c2.basis },
    )
}

/// Per-bidegree outcome of the page-1 identity ∂(Z₂^{p,q}) = Im(∂∂̄).
#[derive(Clone, Debug)]
pub struct Page1Report {
    pub scope: &'static str,
    /// `holds[p][q]` for 0 ≤ p,q ≤ n.
    pub holds: Vec<Vec<bool>>,
    pub all_hold: bool,
    pub e2_degenerates: bool,
    /// First failing bidegree with a canonical certificate in
    /// ∂(Z₂^{p,q}) \ Im(∂∂̄).
    pub failure: Option<(usize, usize, InvariantForm)>,
}

/// Check ∂(Z₂^{p,q}) = Im(∂∂̄) in every bidegree (the inclusion ⊇ holds
/// always; only ⊆ can fail) and whether the Frölicher sequence degenerates
/// at E₂. These two consequences are all that is checked here; purity of the
/// de Rham structure is outside the scope of this report.
pub fn page1_check(lie: &LieCS) -> Page1Report {
    let cx = InvariantComplex::new(lie);
    let n = lie.n;
    let mut holds = vec![vec![true; n + 1]; n + 1];
    let mut failure = None;
    for p in 0..=n {
        for q in 0..=n {
            if p == n {
                continue; // ∂ vanishes out of Λ^{n,q}
            }
            let (z2, _) = z2_c2_spaces(lie, p, q);
            let del_z2 = z2.image_under(&cx.mat_del(p, q));
            let im_ddbar = if q == 0 {
                Subspace::zero(binomial(n, p + 1) * binomial(n, q))
            } else {
                let m = cx.mat_del(p, q).matmul(&cx.mat_delbar(p, q - 1));
                column_space(&m)
            };
            debug_assert!(
                del_z2.contains_subspace(&im_ddbar),
                "the inclusion Im(del delbar) ⊆ del(Z2) must hold on any table"
            );
            let ok = im_ddbar.contains_subspace(&del_z2);
            holds[p][q] = ok;
            if !ok && failure.is_none() {
                let basis = cx.basis(p + 1, q);
                let cert = del_z2
                    .basis
                    .iter()
                    .find(|v| !im_ddbar.contains(v))
                    .map(|v| cx.form_from_coords(&basis, v))
                    .expect("a failing bidegree has a witness basis vector");
                failure = Some((p, q, cert));
            }
        }
    }
    let fr = frolicher(lie, 2 * n.max(1));
    let e2 = fr.pages.iter().find(|pg| pg.r == 2).expect("page 2 computed");
    let e2_degenerates = e2.dims == fr.pages.last().unwrap().dims;
    let all_hold = holds.iter().all(|row| row.iter().all(|&b| b));
    Page1Report { scope: SCOPE, holds, all_hold, e2_degenerates, failure }
}

/// The Calabi–Yau isomorphism T_Γ(θ) = θ⌟u_Γ from Λ^{0,q}⊗g^{1,0} to
/// Λ^{n−1,q}, as an explicit matrix with its inverse.
#[derive(Clone, Debug)]
pub struct CYIso {
    pub q: usize,
    pub u_gamma: InvariantForm,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

impl CYIso {
    /// θ ↦ θ⌟u_Γ.
    pub fn apply(&self, lie: &LieCS, theta: &InvariantVectorForm) -> InvariantForm {
        let _ = lie;
        theta.contract_into(&self.u_gamma)
    }

    /// The unique θ with θ⌟u_Γ = w.
    pub fn invert_form(&self, lie: &LieCS, w: &InvariantForm) -> InvariantVectorForm {
        let cx = InvariantComplex::new(lie);
        let n = lie.n;
        let basis = basis_pq(n, n - 1, self.q);
        let coords = w.coordinates(&basis, &Gq::zero());
        let theta_coords = self.inverse.apply(&coords);
        cx.vform_from_coords(&cx.tangent_basis(self.q), &theta_coords)
    }
}

/// Build T_Γ at form degree q. Errors when Γ is not p-contact (the matrix is
/// singular exactly then).
pub fn cy_iso(lie: &LieCS, gamma: &InvariantForm, q: usize) -> Result<CYIso, ContactError> {
    let check = is_p_contact(lie, gamma)?;
    let d_gamma = apply_differential(lie, DiffOp::Del, gamma);
    let u_gamma = gamma.wedge(&d_gamma);
    let cx = InvariantComplex::new(lie);
    let n = lie.n;
    let dom = cx.tangent_basis(q);
    let cod = basis_pq(n, n - 1, q);
    let cols: Vec<Vec<Gq>> = dom
        .iter()
        .map(|(k, m)| {
            let v = VectorForm::from_component(n, *k, Form::from_term(n, *m, Gq::one()));
            v.contract_into(&u_gamma).coordinates(&cod, &Gq::zero())
        })
        .collect();
    let matrix = Matrix::from_cols(cod.len(), &cols);
    match invert(&matrix) {
        Some(inverse) if check.holds => Ok(CYIso { q, u_gamma, matrix, inverse }),
        _ => Err(ContactError::WrongBidegree {
            // singular T_Γ means the contact precondition failed upstream
            expected: ((n - 1) / 2, 0),
            found: gamma.homogeneous_bidegree(),
        }),
    }
}
