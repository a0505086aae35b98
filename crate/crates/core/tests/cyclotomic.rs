mod common;

use common::{close, embed, root, FLOAT_TOL};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use psc_moduli::cyclotomic::{cyclotomic_polynomial, euler_phi, root_of_unity, CyclotomicElement};
use psc_moduli::rational::{integer, ratio};

/// `Φ_n` by brute force: `x^n − 1` divided by `Φ_d` for every proper divisor
/// `d`, using schoolbook long division on `i64` coefficients.
fn phi_oracle(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let den = phi_oracle(d);
        let mut quot = vec![0i64; num.len() - den.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = num[i + den.len() - 1];
            quot[i] = c;
            for (j, &b) in den.iter().enumerate() {
                num[i + j] -= c * b;
            }
        }
        assert!(num.iter().all(|&x| x == 0));
        num = quot;
    }
    num
}

#[test]
fn cyclotomic_polynomials_match_division_oracle() {
    for n in 1..=60 {
        let got: Vec<BigInt> = cyclotomic_polynomial(n);
        let want: Vec<BigInt> = phi_oracle(n).into_iter().map(BigInt::from).collect();
        assert_eq!(got, want, "Φ_{n}");
        assert_eq!(got.len() - 1, euler_phi(n) as usize);
    }
    assert_eq!(phi_oracle(6), vec![1, -1, 1]);
}

#[test]
fn small_field_reductions() {
    assert_eq!(
        root_of_unity(6, 2),
        CyclotomicElement::from_integer_coeffs(6, &[-1, 1])
    );
    assert_eq!(
        &root_of_unity(6, 1) * &root_of_unity(6, 1),
        root_of_unity(6, 2)
    );
    assert_eq!(root_of_unity(3, 1).lift(6).unwrap(), root_of_unity(6, 2));
    assert_eq!(
        root_of_unity(2, 1),
        CyclotomicElement::from_rational(2, integer(-1))
    );
    assert_eq!(
        &root_of_unity(4, 1) * &root_of_unity(4, 3),
        CyclotomicElement::one(4)
    );
}

#[test]
fn inverses_and_rationality() {
    let u = &root_of_unity(6, 1) - &CyclotomicElement::one(6);
    assert_eq!(&u.inverse().unwrap() * &u, CyclotomicElement::one(6));
    assert_eq!(root_of_unity(9, 1).inverse().unwrap(), root_of_unity(9, 8));
    let s = (1..5).fold(CyclotomicElement::zero(5), |acc, k| {
        &acc + &root_of_unity(5, k)
    });
    assert_eq!(s.as_rational().unwrap(), integer(-1));
    assert_eq!(
        CyclotomicElement::zero(7).as_rational().unwrap(),
        ratio(0, 1)
    );
    assert!(root_of_unity(6, 1).as_rational().is_err());
}

#[test]
fn embedding_of_roots() {
    let (re, im) = root_of_unity(4, 1).approx_complex();
    assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    assert_eq!(CyclotomicElement::one(11).approx_complex(), (1.0, 0.0));
}

fn element(order: u32) -> impl Strategy<Value = CyclotomicElement> {
    prop::collection::vec((-20i64..=20, 1i64..=6), order as usize).prop_map(move |cs| {
        CyclotomicElement::from_coeffs(order, cs.into_iter().map(|(a, b)| ratio(a, b)).collect())
    })
}

fn order_and_pair(
) -> impl Strategy<Value = (CyclotomicElement, CyclotomicElement, CyclotomicElement)> {
    prop::sample::select(vec![3u32, 4, 5, 7, 8, 9, 12, 15, 22])
        .prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(common::proptest_config(96))]

    #[test]
    fn field_axioms((a, b, c) in order_and_pair()) {
        let zero = CyclotomicElement::zero(a.order());
        let one = CyclotomicElement::one(a.order());
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), zero.clone());
        prop_assert_eq!(&a * &one, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), one);
            prop_assert_eq!(b.checked_div(&a).unwrap().checked_mul(&a).unwrap(), b.clone());
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism((a, b, _c) in order_and_pair()) {
        prop_assert!(close(embed(&(&a + &b)), embed(&a) + embed(&b), FLOAT_TOL));
        prop_assert!(close(embed(&(&a * &b)), embed(&a) * embed(&b), FLOAT_TOL));
        let (re, im) = a.approx_complex();
        prop_assert!(close(num_complex::Complex64::new(re, im), embed(&a), FLOAT_TOL));
    }

    #[test]
    fn galois_action_composes((a, b, _c) in order_and_pair(), j in 1i64..40, k in 1i64..40) {
        let n = a.order() as i64;
        prop_assume!(j.gcd(&n) == 1 && k.gcd(&n) == 1);
        let gj = |e: &CyclotomicElement| e.galois(j).unwrap();
        prop_assert_eq!(gj(&a).galois(k).unwrap(), a.galois(j * k).unwrap());
        prop_assert_eq!(gj(&(&a * &b)), &gj(&a) * &gj(&b));
        prop_assert_eq!(gj(&(&a + &b)), &gj(&a) + &gj(&b));
        // Embedding the conjugate root: σ_j(ζ) ↦ e^{2πij/n}.
        prop_assert!(close(embed(&gj(&root_of_unity(n as u32, 1))), root(n as u32, j), FLOAT_TOL));
    }

    #[test]
    fn galois_orbit_sums_are_rational((a, _b, _c) in order_and_pair()) {
        let n = a.order() as i64;
        let trace = (1..n).filter(|k| k.gcd(&n) == 1).fold(CyclotomicElement::zero(n as u32), |acc, k| &acc + &a.galois(k).unwrap());
        let norm = (1..n).filter(|k| k.gcd(&n) == 1).fold(CyclotomicElement::one(n as u32), |acc, k| &acc * &a.galois(k).unwrap());
        prop_assert!(trace.as_rational().is_ok());
        prop_assert!(norm.as_rational().is_ok());
    }

    #[test]
    fn lifting_is_a_homomorphism((a, b, _c) in order_and_pair(), m in 1u32..4) {
        let target = a.order() * m;
        prop_assert_eq!((&a * &b).lift(target).unwrap(), &a.lift(target).unwrap() * &b.lift(target).unwrap());
        prop_assert!(close(embed(&a.lift(target).unwrap()), embed(&a), FLOAT_TOL));
    }
}
