use pcontact_core::catalog::catalog_get;
use pcontact_core::exterior::VectorForm;
use pcontact_core::invariant::*;
use pcontact_core::scalars::Gq;
fn main() {
    // hand computation: on h15, [φ̄₂⊗ξ₁, φ̄₂⊗ξ₂]
    //   = φ̄₂∧φ̄₂⊗[ξ₁,ξ₂] + φ̄₂∧(ξ₁⌟∂φ̄₂)⊗ξ₂ − (−1)^{1}φ̄₂∧(ξ₂⌟∂φ̄₂)⊗ξ₁
    //   = 0 + φ̄₂∧(−φ̄₁)⊗ξ₂ + 0 = φ̄₁∧φ̄₂⊗ξ₂
    let lie = catalog_get("h15", &[]).unwrap();
    let a = VectorForm::from_component(3, 1, lie.phibar(2));
    let b = VectorForm::from_component(3, 2, lie.phibar(2));
    let br = bracket_inv(&lie, &a, &b);
    println!("[phi2b o xi1, phi2b o xi2] = {br}");
    // hand: sl2c L10_{xi1}(phi1^phi2) = ∂(φ₂) + ξ₁⌟∂(φ₁∧φ₂) = −φ₁∧φ₃ + 0
    let lie = catalog_get("sl2c", &[]).unwrap();
    let xi1 = [Gq::one(), Gq::zero(), Gq::zero()];
    let u = lie.phi(1).wedge(&lie.phi(2));
    println!("L10_xi1(phi1^phi2) = {}", lie10_derivative(&lie, &xi1, &u));
}
