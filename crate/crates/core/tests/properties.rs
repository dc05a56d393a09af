use std::sync::Arc;

use paraunitary::normal_form::{factorize_lossless, factorize_pure, fraction_form, multiply_out};
use paraunitary::order::{
    as_generator, compare, in_interval, interval_complement, lattice_join, lattice_meet, le, omega, omega_inverse,
    right_divides,
};
use paraunitary::random::InstanceRng;
use paraunitary::{json, Field, GroupElement, LaurentMat, LaurentPoly, QuadSpace, Rational, Subspace};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

fn space(r: &mut InstanceRng, max_n: u64) -> Arc<QuadSpace> {
    let n = 1 + r.below(max_n) as usize;
    r.gram(n)
}

/// Brute-force kernel membership: `φ v` has no positive layers.
fn annihilates(phi: &GroupElement, v: &paraunitary::LaurentVec) -> bool {
    phi.apply(v).unwrap().degree().is_none_or(|d| d <= 0)
}

/// Determinant of a Laurent matrix by cofactor expansion (n <= 4).
fn det(m: &LaurentMat) -> LaurentPoly {
    fn go(m: &LaurentMat, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        if rows.is_empty() {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = m.get(rows[0], c) * &go(m, &rows[1..], &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.dim()).collect();
    go(m, &idx, &idx)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn kernel_matches_brute_force(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 3);
        let len = r.below(5) as usize;
        let (us, phi) = r.generator_product(&s, len);
        let k = omega(&phi).unwrap();
        for v in k.basis_vectors() {
            prop_assert!(annihilates(&phi, &v));
        }
        // dim_k ker φ = -valuation(det φ) = sum of codim U_i
        let expected: usize = us.iter().map(|u| s.dim() - u.dim()).sum();
        prop_assert_eq!(k.dim(), expected);
        let d = det(phi.mat());
        prop_assert_eq!(d.valuation(), d.degree());
        prop_assert_eq!(-d.valuation().unwrap(), expected as i64);
        prop_assert!(k.is_shift_closed());
        prop_assert_eq!(omega_inverse(&k).unwrap(), phi);
    }

    #[test]
    fn divisibility_is_inclusion(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 3);
        let len_a = 1 + r.below(3) as usize;
        let (_, a) = r.generator_product(&s, len_a);
        let len_b = r.below(3) as usize;
        let (_, b) = r.generator_product(&s, len_b);
        let ba = &b * &a;
        prop_assert!(right_divides(&a, &ba).unwrap());
        prop_assert!(omega(&ba).unwrap().contains(&omega(&a).unwrap()).unwrap());
        let len_c = 1 + r.below(3) as usize;
        let (_, c) = r.generator_product(&s, len_c);
        prop_assert_eq!(
            right_divides(&c, &ba).unwrap(),
            omega(&ba).unwrap().contains(&omega(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn meet_and_join_are_bounds(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 3);
        let len_x = r.below(4) as usize;
        let x = r.pure_element(&s, len_x, 2);
        let len_y = r.below(4) as usize;
        let y = r.pure_element(&s, len_y, 2);
        let m = lattice_meet(&x, &y).unwrap();
        let j = lattice_join(&x, &y).unwrap();
        prop_assert!(le(&m, &x).unwrap() && le(&m, &y).unwrap());
        prop_assert!(le(&x, &j).unwrap() && le(&y, &j).unwrap());
        // any common lower bound of the form (lower) * x lies below the meet
        let (_, z) = r.generator_product(&s, 2);
        let w = lattice_meet(&(&z * &x), &y).unwrap();
        prop_assert!(le(&w, &m).unwrap());
        prop_assert_eq!(compare(&x, &y).unwrap() == paraunitary::OrderRelation::LessEq, m == x && x != y);
    }

    #[test]
    fn interval_is_the_generators(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 4);
        let u = r.subspace(&s);
        let p = GroupElement::generator(&u);
        prop_assert!(in_interval(&p).unwrap());
        prop_assert_eq!(as_generator(&p).unwrap(), u.clone());
        prop_assert_eq!(interval_complement(&p).unwrap(), GroupElement::generator(&u.orthocomplement()));
        let w = r.subspace(&s);
        let pw = &p * &GroupElement::generator(&w);
        prop_assert_eq!(in_interval(&pw).unwrap(), u.rel_top(&w).unwrap());
        if u.rel_top(&w).unwrap() {
            prop_assert_eq!(pw, GroupElement::generator(&u.meet(&w).unwrap()));
        }
    }

    #[test]
    fn normal_form_round_trip(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 3);
        let len = r.below(7) as usize;
        let (_, phi) = r.generator_product(&s, len);
        let nf = factorize_pure(&phi).unwrap();
        prop_assert!(nf.check_adjacency().is_ok());
        prop_assert!(nf.len() <= len);
        prop_assert!(nf.factors.iter().all(|u| !u.is_full()));
        prop_assert_eq!(multiply_out(&nf).unwrap(), phi.clone());
        prop_assert_eq!(factorize_pure(&multiply_out(&nf).unwrap()).unwrap(), nf.clone());
        // leftmost factor is the image of the constant coefficient
        if let Some(first) = nf.factors.first() {
            prop_assert_eq!(first, &Subspace::image_of(&s, &phi.mat().coefficient(0)));
        }
        let len_h = 1 + r.below(3) as usize;
        let h = r.orthogonal(&s, len_h);
        let lossless = factorize_lossless(&(&phi * &h.iota())).unwrap();
        prop_assert_eq!(&lossless.factors, &nf.factors);
        prop_assert_eq!(lossless.tail, h);
    }

    #[test]
    fn fraction_form_splits_pure_elements(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 3);
        let len_x = r.below(4) as usize;
        let x = r.pure_element(&s, len_x, 3);
        let (k, sigma) = fraction_form(&x).unwrap();
        prop_assert!(k >= 0);
        prop_assert!(sigma.degree() <= 0);
        prop_assert_eq!(sigma.shift(k), x);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 3);
        let len_phi = r.below(4) as usize;
        let (_, phi) = r.generator_product(&s, len_phi);
        let text = json::to_line(&json::encode_element(&phi));
        prop_assert_eq!(json::decode_element(&text, None).unwrap(), phi.clone());
        let nf = factorize_pure(&phi).unwrap();
        let text = json::to_line(&json::encode_normal_form(&nf, None));
        prop_assert_eq!(json::decode_normal_form(&text, None).unwrap(), nf);
        let k = omega(&phi).unwrap();
        let text = json::to_line(&json::encode_submodule(&k));
        prop_assert_eq!(json::decode_submodule(&text, None).unwrap(), k);
    }

    #[test]
    fn specializations_are_homomorphisms(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 4);
        let (_, a) = r.generator_product(&s, 2);
        let b = &a * &r.orthogonal(&s, 2).iota();
        let c = r.pure_element(&s, 2, 1);
        let ab = &b * &c;
        prop_assert_eq!(ab.epsilon1(), b.epsilon1().try_mul(&c.epsilon1()).unwrap());
        prop_assert_eq!(ab.epsilon_minus1(), b.epsilon_minus1().try_mul(&c.epsilon_minus1()).unwrap());
        let v = r.laurent_vector(s.dim(), -2, 2);
        let form = s.extended_form(&v, &v).unwrap();
        prop_assert_eq!(form.is_zero(), v.is_zero());
        if !v.is_zero() {
            // b̃(v, v) has a positive t^0 coefficient for positive definite b
            prop_assert!(form.coeff(0) > Rational::from_i64(0));
        }
    }

    #[test]
    fn kernels_satisfy_the_modular_law(seed in any::<u64>()) {
        let mut r = InstanceRng::new(seed);
        let s = space(&mut r, 3);
        let (_, a) = r.generator_product(&s, 2);
        let (_, b) = r.generator_product(&s, 2);
        let (_, c) = r.generator_product(&s, 3);
        let m = omega(&a).unwrap();
        let p = omega(&(&b * &a)).unwrap();
        let n = omega(&c).unwrap();
        prop_assert!(p.contains(&m).unwrap());
        let lhs = m.sum(&n.intersect(&p).unwrap()).unwrap();
        let rhs = m.sum(&n).unwrap().intersect(&p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
