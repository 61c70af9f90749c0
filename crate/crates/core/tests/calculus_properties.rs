//! Property suites for the invariant calculus, quantified over the whole
//! catalog and seeded random forms.

use pcontact_core::catalog::{catalog_get, entries, test_grid};
use pcontact_core::exterior::{Form, Mono, VectorForm};
use pcontact_core::invariant::{
    apply_differential, bracket_inv, conj, delbar_vform, lie10_derivative, lie_derivative, random,
    validate, DiffOp, InvariantVectorForm, LieCS,
};
use pcontact_core::scalars::Gq;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn catalog_models() -> Vec<(String, LieCS)> {
    let mut out = Vec::new();
    for e in entries() {
        for (i, params) in test_grid(e.id).iter().enumerate() {
            let lie = catalog_get(e.id, params).unwrap();
            out.push((format!("{}#{i}", e.id), lie));
        }
    }
    out
}

fn random_bidegree(rng: &mut impl RngCore, n: usize) -> (usize, usize) {
    ((rng.next_u32() as usize) % (n + 1), (rng.next_u32() as usize) % (n + 1))
}

#[test]
fn differentials_square_to_zero_across_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (name, lie) in catalog_models() {
        assert!(validate(&lie).ok(), "{name}");
        for _ in 0..4 {
            let (p, q) = random_bidegree(&mut rng, lie.n);
            let u = random::form(&mut rng, lie.n, p, q);
            let d = |v: &_| apply_differential(&lie, DiffOp::D, v);
            let del = |v: &_| apply_differential(&lie, DiffOp::Del, v);
            let delbar = |v: &_| apply_differential(&lie, DiffOp::DelBar, v);
            assert_eq!(d(&u), del(&u).add(&delbar(&u)), "{name}: d = ∂ + ∂̄");
            assert!(d(&d(&u)).is_zero(), "{name}: d² = 0");
            assert!(del(&del(&u)).is_zero(), "{name}: ∂² = 0");
            assert!(delbar(&delbar(&u)).is_zero(), "{name}: ∂̄² = 0");
            assert!(
                del(&delbar(&u)).add(&delbar(&del(&u))).is_zero(),
                "{name}: ∂∂̄ + ∂̄∂ = 0"
            );
        }
    }
}

#[test]
fn conjugation_is_involutive_and_commutes_with_d() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, lie) in catalog_models() {
        for _ in 0..4 {
            let (p, q) = random_bidegree(&mut rng, lie.n);
            let u = random::form(&mut rng, lie.n, p, q);
            assert_eq!(conj(&conj(&u)), u, "{name}");
            let d = |v: &_| apply_differential(&lie, DiffOp::D, v);
            assert_eq!(conj(&d(&u)), d(&conj(&u)), "{name}: conj∘d = d∘conj");
        }
    }
}

#[test]
fn contraction_is_an_antiderivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (name, lie) in catalog_models().into_iter().filter(|(_, l)| l.n <= 4) {
        for _ in 0..6 {
            let (p, q) = random_bidegree(&mut rng, lie.n);
            let (r, s) = random_bidegree(&mut rng, lie.n);
            let u = random::form(&mut rng, lie.n, p, q);
            let v = random::form(&mut rng, lie.n, r, s);
            for k in 1..=lie.n {
                let lhs = u.wedge(&v).contract_xi(k);
                let t = u.wedge(&v.contract_xi(k));
                let rhs = u
                    .contract_xi(k)
                    .wedge(&v)
                    .add(&if (p + q) % 2 == 1 { t.neg() } else { t });
                assert_eq!(lhs, rhs, "{name}: ξ_{k}⌟ antiderivation");
            }
        }
    }
}

#[test]
fn delbar_contraction_identities_hold() {
    // ∂̄(ξ⌟u) = (∂̄ξ)⌟u − ξ⌟(∂̄u) and ∂̄(θ⌟u) = (∂̄θ)⌟u + θ⌟(∂̄u)
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    for (name, lie) in catalog_models().into_iter().filter(|(_, l)| l.n <= 4) {
        let delbar = |v: &_| apply_differential(&lie, DiffOp::DelBar, v);
        for _ in 0..6 {
            let (p, q) = random_bidegree(&mut rng, lie.n);
            let u = random::form(&mut rng, lie.n, p, q);
            // single frame vectors
            for k in 1..=lie.n {
                let xi = VectorForm::from_component(
                    lie.n,
                    k,
                    Form::from_term(lie.n, Mono::ONE, Gq::one()),
                );
                let lhs = delbar(&u.contract_xi(k));
                let rhs = delbar_vform(&lie, &xi)
                    .contract_into(&u)
                    .sub(&delbar(&u).contract_xi(k));
                assert_eq!(lhs, rhs, "{name}: ∂̄(ξ_{k}⌟u) identity");
            }
            // tangent-valued (0,1)-forms
            let theta = random::vform(&mut rng, lie.n, 1);
            let lhs = delbar(&theta.contract_into(&u));
            let rhs = delbar_vform(&lie, &theta)
                .contract_into(&u)
                .add(&theta.contract_into(&delbar(&u)));
            assert_eq!(lhs, rhs, "{name}: ∂̄(θ⌟u) identity");
        }
    }
}

#[test]
fn lie_derivative_properties_on_invariant_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (name, lie) in catalog_models().into_iter().filter(|(_, l)| l.n <= 3) {
        let del = |v: &_| apply_differential(&lie, DiffOp::Del, v);
        let delbar = |v: &_| apply_differential(&lie, DiffOp::DelBar, v);
        for _ in 0..6 {
            let (p, q) = random_bidegree(&mut rng, lie.n);
            let (r, s) = random_bidegree(&mut rng, lie.n);
            let u = random::form(&mut rng, lie.n, p, q);
            let v = random::form(&mut rng, lie.n, r, s);
            let theta = random::vform(&mut rng, lie.n, 1);
            let chi = random::vform(&mut rng, lie.n, 1);
            let lt = |w: &_| lie_derivative(&lie, &theta, w);
            let lc = |w: &_| lie_derivative(&lie, &chi, w);
            // Leibniz
            let lhs = lt(&u.wedge(&v));
            let t = u.wedge(&lt(&v));
            let rhs = lt(&u).wedge(&v).add(&if (p + q) % 2 == 1 { t.neg() } else { t });
            assert_eq!(lhs, rhs, "{name}: L_θ Leibniz");
            // L_θ∂ = −∂L_θ
            assert!(lt(&del(&u)).add(&del(&lt(&u))).is_zero(), "{name}: L_θ∂ = −∂L_θ");
            // when ∂̄θ = 0: L_θ∂̄ = −∂̄L_θ
            if delbar_vform(&lie, &theta).is_zero() {
                assert!(
                    lt(&delbar(&u)).add(&delbar(&lt(&u))).is_zero(),
                    "{name}: L_θ∂̄ = −∂̄L_θ for ∂̄-closed θ"
                );
            }
            // [θ⌟·, L_ψ] = [θ,ψ]⌟·
            let br = bracket_inv(&lie, &theta, &chi);
            let lhs = theta.contract_into(&lc(&u)).sub(&lc(&theta.contract_into(&u)));
            assert_eq!(lhs, br.contract_into(&u), "{name}: [θ⌟·,L_ψ] = [θ,ψ]⌟·");
            // [L_θ, L_ψ] = L_[θ,ψ]
            let lhs = lt(&lc(&u)).add(&lc(&lt(&u)));
            let rhs = lie_derivative(&lie, &br, &u);
            assert_eq!(lhs, rhs, "{name}: [L_θ,L_ψ] = L_[θ,ψ]");
        }
    }
}

#[test]
fn invariant_bracket_satisfies_the_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    for (name, lie) in catalog_models().into_iter().filter(|(_, l)| l.n <= 3) {
        for _ in 0..6 {
            let dp = (rng.next_u32() as usize) % 2;
            let dq = (rng.next_u32() as usize) % 2;
            let dr = (rng.next_u32() as usize) % 2;
            let phi = random::vform(&mut rng, lie.n, dp);
            let psi = random::vform(&mut rng, lie.n, dq);
            let tau = random::vform(&mut rng, lie.n, dr);
            // anti-commutation
            let lhs = bracket_inv(&lie, &phi, &psi);
            let rhs = bracket_inv(&lie, &psi, &phi);
            let res = if (dp * dq) % 2 == 1 { lhs.sub(&rhs) } else { lhs.add(&rhs) };
            assert!(res.is_zero(), "{name}: bracket anti-commutation");
            // ∂̄-Leibniz
            let lhs = delbar_vform(&lie, &bracket_inv(&lie, &phi, &psi));
            let a = bracket_inv(&lie, &delbar_vform(&lie, &phi), &psi);
            let b = bracket_inv(&lie, &phi, &delbar_vform(&lie, &psi));
            let rhs = if dp % 2 == 1 { a.sub(&b) } else { a.add(&b) };
            assert_eq!(lhs, rhs, "{name}: bracket ∂̄-Leibniz");
            // Jacobi
            let t1 = bracket_inv(&lie, &bracket_inv(&lie, &phi, &psi), &tau);
            let t2 = bracket_inv(&lie, &bracket_inv(&lie, &psi, &tau), &phi);
            let t3 = bracket_inv(&lie, &bracket_inv(&lie, &tau, &phi), &psi);
            let sgn = |e: usize, v: InvariantVectorForm| if e % 2 == 1 { v.neg() } else { v };
            let res = sgn(dp * dr, t1).add(&sgn(dq * dp, t2)).add(&sgn(dr * dq, t3));
            assert!(res.is_zero(), "{name}: bracket Jacobi");
        }
    }
}

#[test]
fn lie10_matches_bracket_on_vectors() {
    // [L¹⁰_ξ, η⌟·] = [ξ,η]⌟· specialised to frame vectors, via the table
    let lie = catalog_get("sl2c", &[]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..8 {
        let xi = random::vector(&mut rng, 3);
        let u = random::form(&mut rng, 3, 2, 1);
        // d(du) = 0 exercised through lie10 composition instead:
        // L¹⁰ is a derivation commuting with ∂ on ∂-closed forms
        let l = lie10_derivative(&lie, &xi, &u);
        let del = |v: &_| apply_differential(&lie, DiffOp::Del, v);
        assert_eq!(lie10_derivative(&lie, &xi, &del(&u)), del(&l), "L¹⁰_ξ commutes with ∂");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(
        (an, ad) in (-50i64..50, 1i64..20),
        (bn, bd) in (-50i64..50, 1i64..20),
        (ci, di) in (-50i64..50, 1i64..20),
    ) {
        let x = Gq::new(
            pcontact_core::Rational::new(an.into(), ad.into()),
            pcontact_core::Rational::new(ci.into(), di.into()),
        );
        let y = Gq::new(
            pcontact_core::Rational::new(bn.into(), bd.into()),
            pcontact_core::Rational::new(di.into(), ad.into()),
        );
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) / &y, x);
        }
    }

    #[test]
    fn wedge_is_graded_commutative(
        seed in 0u64..1000,
        p in 0usize..3,
        q in 0usize..3,
        r in 0usize..3,
        s in 0usize..3,
    ) {
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random::form(&mut rng, n, p, q);
        let v = random::form(&mut rng, n, r, s);
        let uv = u.wedge(&v);
        let vu = v.wedge(&u);
        let sign = ((p + q) * (r + s)) % 2 == 1;
        prop_assert_eq!(uv, if sign { vu.neg() } else { vu });
    }

    #[test]
    fn wedge_is_associative(seed in 0u64..1000) {
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random::form(&mut rng, n, 1, 0);
        let v = random::form(&mut rng, n, 0, 1);
        let w = random::form(&mut rng, n, 1, 1);
        prop_assert_eq!(u.wedge(&v).wedge(&w), u.wedge(&v.wedge(&w)));
    }
}

#[test]
fn operator_identities_on_the_seven_dim_fixture() {
    // the Lie-derivative commutators also hold beyond dimension 3
    let lie = catalog_get("ex52", &[("eps".to_string(),
        pcontact_core::catalog::ParamValue::Scalar(Gq::from_int(1)))]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..2 {
        let u = random::form(&mut rng, 7, 2, 1);
        let theta = random::vform(&mut rng, 7, 1);
        let chi = random::vform(&mut rng, 7, 1);
        let lt = |w: &_| lie_derivative(&lie, &theta, w);
        let lc = |w: &_| lie_derivative(&lie, &chi, w);
        let br = bracket_inv(&lie, &theta, &chi);
        let lhs = theta.contract_into(&lc(&u)).sub(&lc(&theta.contract_into(&u)));
        assert_eq!(lhs, br.contract_into(&u));
        let lhs = lt(&lc(&u)).add(&lc(&lt(&u)));
        assert_eq!(lhs, lie_derivative(&lie, &br, &u));
    }
}
