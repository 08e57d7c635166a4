use num_traits::Zero;
use proptest::prelude::*;

use cgr::bd::{bd_r_matrix, cg_triple};
use cgr::carrier::nilpotent_exp_action;
use cgr::cg::{cg_closed_form, phi_twist_op};
use cgr::cyb::{cyb_failures, find_lambda};
use cgr::linalg::{rank, span_basis};
use cgr::poly::{dunkl_monomial, dunkl_y, elements_v, CherednikParams, LaurentPoly2, PolyOperator};
use cgr::scalar::{format_scalar, frac, gcd, parse_scalar, Scalar};
use cgr::tensor::{all_indices, MatrixN, SparseOp2, WedgeElement};

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| frac(p, q))
}

fn wedge(n: usize) -> impl Strategy<Value = WedgeElement> {
    let idx = (1..=n, 1..=n);
    prop::collection::vec((idx.clone(), idx, small_rational()), 0..8).prop_map(move |terms| {
        let mut w = WedgeElement::zero(n);
        for ((a, b), (c, d), v) in terms {
            w.add_term([a, b], [c, d], v);
        }
        w
    })
}

fn matrix(n: usize) -> impl Strategy<Value = MatrixN> {
    prop::collection::vec(((1..=n, 1..=n), small_rational()), 0..6).prop_map(move |es| {
        let mut m = MatrixN::zero(n);
        for ((i, j), v) in es {
            m.add_entry(i, j, v);
        }
        m
    })
}

fn strictly_upper(n: usize) -> impl Strategy<Value = MatrixN> {
    matrix(n).prop_map(move |m| {
        let mut u = MatrixN::zero(n);
        for ((i, j), v) in m.entries() {
            if i < j {
                u.add_entry(*i, *j, v.clone());
            }
        }
        u
    })
}

fn coprime_pair(nmax: usize) -> impl Strategy<Value = (usize, usize)> {
    (2..=nmax)
        .prop_flat_map(|n| (1..n, Just(n)))
        .prop_filter("coprime", |(m, n)| gcd(*m as i64, *n as i64) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn wedge_ops_are_antisymmetric(w in wedge(4)) {
        let op = w.to_op();
        prop_assert_eq!(op.swap_conjugate(), op.scale(&frac(-1, 1)));
    }

    #[test]
    fn wedge_to_op_is_linear(a in wedge(3), b in wedge(3), s in small_rational()) {
        prop_assert_eq!(a.add(&b.scale(&s)).to_op(), a.to_op().add(&b.to_op().scale(&s)).unwrap());
    }

    #[test]
    fn self_commutator_vanishes(w in wedge(3)) {
        let op = w.to_op();
        prop_assert!(op.commutator(&op).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip(w in wedge(4)) {
        let op = w.to_op();
        let text = op.to_json();
        let back = SparseOp2::from_json(&text).unwrap();
        prop_assert_eq!(&back, &op);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn scalar_text_round_trip(x in small_rational()) {
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn span_basis_is_idempotent_and_independent(ms in prop::collection::vec(matrix(3), 0..7)) {
        let b = span_basis(&ms);
        prop_assert_eq!(span_basis(&b), b.clone());
        let rows: Vec<Vec<Scalar>> = b.iter().map(MatrixN::to_coords).collect();
        prop_assert_eq!(rank(&rows), b.len());
        let all: Vec<Vec<Scalar>> = ms.iter().map(MatrixN::to_coords).collect();
        prop_assert_eq!(rank(&all), b.len());
    }

    #[test]
    fn closed_form_matches_bd((m, n) in coprime_pair(10)) {
        let r = cg_closed_form(m, n).unwrap();
        prop_assert_eq!(&r, &bd_r_matrix(n - m, n).unwrap().to_op());
        prop_assert!(r.is_antisymmetric());
        prop_assert!(r.first_leg_slices().values().all(|s| s.trace().is_zero()));
        prop_assert_eq!(phi_twist_op(&r), cg_closed_form(n - m, n).unwrap());
    }

    #[test]
    fn precedence_is_a_strict_order((m, n) in coprime_pair(9)) {
        let t = cg_triple(m, n).unwrap();
        let table = t.order_table();
        let roots = t.positive_roots();
        for a in &roots {
            prop_assert!(!table.precedes(a, a, false));
            prop_assert!(table.precedes(a, a, true));
            for b in &roots {
                if !table.precedes(a, b, false) {
                    continue;
                }
                for c in &roots {
                    if table.precedes(b, c, false) {
                        prop_assert!(table.precedes(a, c, false));
                    }
                }
            }
        }
    }

    #[test]
    fn dunkl_kernels_match_monomial_formulas(
        kappa in small_rational(),
        c0 in small_rational(),
        c1 in small_rational(),
        j in 0i64..=8,
        l in 0i64..=8,
    ) {
        for m in [1u8, 2] {
            let p = CherednikParams::new(m, kappa.clone(), c0.clone(), c1.clone()).unwrap();
            for i in [1u8, 2] {
                prop_assert_eq!(dunkl_y(&p, i).unwrap().apply_monomial(j, l).unwrap(), dunkl_monomial(&p, i, j, l));
            }
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(
        terms in prop::collection::vec(((-4i64..=4, -4i64..=4), small_rational()), 0..6),
        c in prop_oneof![Just(1i8), Just(-1i8)],
    ) {
        let mut p = LaurentPoly2::zero();
        for ((a, b), v) in terms {
            p.add_term([a, b], v);
        }
        let lin = PolyOperator::x1() - PolyOperator::x2().scaled(frac(i64::from(c), 1));
        let q = lin.apply(&p).unwrap();
        prop_assert_eq!(PolyOperator::DivLinear(c).apply(&q).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lambda_is_orbit_invariant(x in strictly_upper(4), s in small_rational(), m in prop_oneof![Just(1usize), Just(3)]) {
        let r = cg_closed_form(m, 4).unwrap();
        let moved = nilpotent_exp_action(&x, &s, &r).unwrap();
        prop_assert_eq!(find_lambda(&moved).unwrap(), find_lambda(&r).unwrap());
    }

    #[test]
    fn v_combinations_are_triangular(coeffs in prop::collection::vec(small_rational(), 4)) {
        let v = elements_v(5).unwrap();
        let mut w = SparseOp2::zero(5);
        for (vi, c) in v.iter().zip(&coeffs) {
            w = w.add(&vi.scale(c)).unwrap();
        }
        prop_assert_eq!(cyb_failures(&w, &Scalar::zero(), &all_indices::<3>(5)).unwrap(), 0);
    }

    #[test]
    fn boundary_top_coefficient_is_triangular(x in strictly_upper(4), m in prop_oneof![Just(1usize), Just(3)]) {
        // exp(tX).r = Σ t^k ad_X^k r / k! keeps ⟨⟨r_t, r_t⟩⟩ fixed, so the top coefficient is triangular.
        let r = cg_closed_form(m, 4).unwrap();
        let mut top = r.clone();
        loop {
            let next = top.ad_action(&x).unwrap();
            if next.is_zero() {
                break;
            }
            top = next;
        }
        if top != r {
            prop_assert_eq!(cyb_failures(&top, &Scalar::zero(), &all_indices::<3>(4)).unwrap(), 0);
        }
    }
}
