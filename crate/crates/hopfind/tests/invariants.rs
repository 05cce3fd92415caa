//! Cross-module invariants exercised on every built-in family instance:
//! the three evaluation routes agree on a wide range of levels, and the
//! computed minimal polynomials divide their theoretical annihilators.

use hopfind::cyclotomic::{lcm64, CycNumber};
use hopfind::hopf::{
    cyclic_cayley, gr_uqsl2, group_algebra, s3_cayley, taft, HopfAlgebra,
};
use hopfind::indicators::{
    indicator_integral_range, indicator_trace_range, special_values, Side,
};
use hopfind::sequences::{phi_and_big_phi, CycPolynomial};

fn builtins() -> Vec<HopfAlgebra> {
    vec![
        group_algebra(&cyclic_cayley(2)).unwrap(),
        group_algebra(&cyclic_cayley(6)).unwrap(),
        group_algebra(&s3_cayley()).unwrap(),
        taft(2, &CycNumber::root_of_unity(2, 1)).unwrap(),
        taft(3, &CycNumber::zeta(3)).unwrap(),
        taft(4, &CycNumber::zeta(4)).unwrap(),
        taft(5, &CycNumber::zeta(5)).unwrap(),
        gr_uqsl2(3, &CycNumber::zeta(3)).unwrap(),
        gr_uqsl2(5, &CycNumber::zeta(5)).unwrap(),
    ]
}

/// Trace, left-integral and right-integral evaluation agree exactly on
/// n in [-10, 30]; values stay in the ring generated by the
/// |n|·ord(S^2)-th roots of unity with conductor dividing
/// |n|·ord(S^2)·conductor(H) after minimization.
#[test]
fn method_agreement_on_builtins() {
    for h in builtins() {
        let trace = indicator_trace_range(&h, -10, 30);
        let left = indicator_integral_range(&h, -10, 30, Side::Left).unwrap();
        let right = indicator_integral_range(&h, -10, 30, Side::Right).unwrap();
        let ord_s2 = special_values(&h).unwrap().ord_s2;
        for ((t, l), r) in trace.iter().zip(&left).zip(&right) {
            assert_eq!(t.value, l.value, "{} left at n={}", h.name(), t.n);
            assert_eq!(t.value, r.value, "{} right at n={}", h.name(), t.n);
            let bound = t.n.unsigned_abs() * ord_s2 * h.conductor();
            if bound > 0 {
                assert_eq!(
                    lcm64(t.value.conductor(), bound),
                    bound,
                    "{} conductor at n={}",
                    h.name(),
                    t.n
                );
            } else {
                assert!(t.value.as_rational().is_some());
            }
        }
    }
}

/// The antipode of a group algebra is an involution.
#[test]
fn group_antipode_squares_to_identity() {
    for table in [cyclic_cayley(6), s3_cayley()] {
        let h = group_algebra(&table).unwrap();
        let s = h.antipode_matrix();
        assert!(s.matmul(s).is_identity());
    }
}

/// For a cyclic group algebra both sequences have exact period N and no
/// shorter recurrence: phi = Phi = X^N - 1.
#[test]
fn cyclic_group_min_polys() {
    for n in [2u64, 3, 6] {
        let h = group_algebra(&cyclic_cayley(n as usize)).unwrap();
        let pair = phi_and_big_phi(&h, None).unwrap();
        let expect = CycPolynomial::x_pow_minus_one(n);
        assert_eq!(pair.phi, expect, "phi of kZ/{n}");
        assert_eq!(pair.big_phi, expect, "Phi of kZ/{n}");
    }
}

/// The computed annihilators divide the theoretical bound polynomial
/// `(X^e - 1)^loewy` supplied by the family metadata.
#[test]
fn min_polys_divide_family_bounds() {
    for h in builtins() {
        let hint = h.recurrence_hint().expect("built-in family");
        let pair = phi_and_big_phi(&h, None).unwrap();
        let base = CycPolynomial::x_pow_minus_one(hint.exponent);
        let mut bound_poly = CycPolynomial::one();
        for _ in 0..hint.loewy {
            bound_poly = bound_poly.mul(&base);
        }
        assert!(
            pair.big_phi.divides(&bound_poly),
            "{}: Phi does not divide (X^{} - 1)^{}",
            h.name(),
            hint.exponent,
            hint.loewy
        );
        assert!(pair.phi.divides(&pair.big_phi), "{}", h.name());
    }
}
