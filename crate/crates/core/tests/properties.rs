use proptest::prelude::*;
use qschur_core::hecke::{gen_on_tensor, schur_on_tensor, tensor_act, HeckeElem, Perm, TensorElem};
use qschur_core::matrix::{enum_xi, OrderCmp};
use qschur_core::quantum::{evaluate_word, Token};
use qschur_core::ring::{balanced_binom, gauss2};
use qschur_core::schur::{multiply, structure_constants, SchurElem};
use qschur_core::{IntMatZ, Laurent, Window};

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..5)
        .prop_map(|ts| ts.into_iter().fold(Laurent::zero(), |acc, (e, c)| &acc + &Laurent::monomial(c, e)))
}

fn nonzero_laurent() -> impl Strategy<Value = Laurent> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn win(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

fn xi(lo: i64, hi: i64, r: i64) -> Vec<IntMatZ> {
    enum_xi(&win(lo, hi), r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bar_is_a_ring_involution(p in laurent(), q in laurent()) {
        prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
        prop_assert_eq!((&p + &q).bar(), &p.bar() + &q.bar());
        prop_assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn ring_axioms(p in laurent(), q in laurent(), s in laurent()) {
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn exact_division_inverts_multiplication(p in laurent(), d in nonzero_laurent()) {
        prop_assert_eq!((&p * &d).div_exact(&d), Some(p));
    }

    #[test]
    fn evaluation_is_multiplicative(p in laurent(), q in laurent(), x in 2i64..=5) {
        let x = num_rational::BigRational::from_integer(x.into());
        prop_assert_eq!((&p * &q).eval_at(&x), p.eval_at(&x) * q.eval_at(&x));
    }

    #[test]
    fn text_roundtrip(p in laurent()) {
        prop_assert_eq!(p.to_string().parse::<Laurent>().unwrap(), p);
    }

    #[test]
    fn pascal_recurrences(a in -6i64..=6, t in 1u32..=4) {
        // [a+1; t] = v^t [a; t] + v^{t-a-1} [a; t-1], and its bar
        let lhs = balanced_binom(a + 1, t);
        let r1 = &balanced_binom(a, t).shift(t as i64) + &balanced_binom(a, t - 1).shift(t as i64 - a - 1);
        let r2 = &balanced_binom(a, t).shift(-(t as i64)) + &balanced_binom(a, t - 1).shift(a + 1 - t as i64);
        prop_assert_eq!(&lhs, &r1);
        prop_assert_eq!(&lhs, &r2);
        prop_assert_eq!(lhs.bar(), lhs);
    }

    #[test]
    fn gaussian_recurrence(n in 0i64..=7, t in 1u32..=4) {
        let lhs = gauss2(n + 1, t);
        let rhs = &gauss2(n, t - 1) + &gauss2(n, t).shift(2 * t as i64);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn corner_order_is_a_partial_order_on_fixed_row_sums() {
    let ms = xi(1, 3, 2);
    for a in &ms {
        assert_eq!(a.preceq(a), OrderCmp::Equal);
        for b in ms.iter().filter(|b| b.ro() == a.ro()) {
            let ab = a.preceq(b);
            let ba = b.preceq(a);
            match ab {
                OrderCmp::Less => assert_eq!(ba, OrderCmp::Greater),
                OrderCmp::Greater => assert_eq!(ba, OrderCmp::Less),
                OrderCmp::Equal => assert_eq!(a, b),
                OrderCmp::Incomparable => assert_eq!(ba, OrderCmp::Incomparable),
            }
            if ab != OrderCmp::Less {
                continue;
            }
            for c in ms.iter().filter(|c| c.ro() == a.ro()) {
                if b.preceq(c) == OrderCmp::Less {
                    assert_eq!(a.preceq(c), OrderCmp::Less, "{a:?} {b:?} {c:?}");
                }
            }
        }
    }
}

fn basis_elem(w: Window, r: i64, a: &IntMatZ) -> SchurElem {
    SchurElem::basis(w, r, a.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schur_product_is_associative(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let w = win(1, 3);
        let ms = xi(1, 3, 3);
        let a = &ms[i % ms.len()];
        let bs: Vec<_> = ms.iter().filter(|b| b.ro() == a.co()).collect();
        let b = bs[j % bs.len()];
        let cs: Vec<_> = ms.iter().filter(|c| c.ro() == b.co()).collect();
        let c = cs[k % cs.len()];
        let (x, y, z) = (basis_elem(w, 3, a), basis_elem(w, 3, b), basis_elem(w, 3, c));
        let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn transpose_reverses_products(i in 0usize..1000, j in 0usize..1000) {
        let w = win(1, 3);
        let ms = xi(1, 3, 3);
        let a = &ms[i % ms.len()];
        let bs: Vec<_> = ms.iter().filter(|b| b.ro() == a.co()).collect();
        let b = bs[j % bs.len()];
        let g = structure_constants(a, b, &w, 3).unwrap();
        let gt = structure_constants(&b.transpose(), &a.transpose(), &w, 3).unwrap();
        let flipped: std::collections::BTreeMap<_, _> = g.into_iter().map(|(c, x)| (c.transpose(), x)).collect();
        prop_assert_eq!(flipped, gt);
    }

    #[test]
    fn tensor_action_is_a_homomorphism(i in 0usize..1000, j in 0usize..1000, word in prop::collection::vec(1i64..=3, 3)) {
        let w = win(1, 3);
        let ms = xi(1, 3, 3);
        let a = &ms[i % ms.len()];
        let bs: Vec<_> = ms.iter().filter(|b| b.ro() == a.co()).collect();
        let b = bs[j % bs.len()];
        let (x, y) = (basis_elem(w, 3, a), basis_elem(w, 3, b));
        let t = TensorElem::word(w, &word).unwrap();
        let lhs = schur_on_tensor(&multiply(&x, &y).unwrap(), &t).unwrap();
        let rhs = schur_on_tensor(&x, &schur_on_tensor(&y, &t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schur_action_commutes_with_hecke(i in 0usize..1000, s in 1usize..3, word in prop::collection::vec(1i64..=3, 3)) {
        let w = win(1, 3);
        let ms = xi(1, 3, 3);
        let x = basis_elem(w, 3, &ms[i % ms.len()]);
        let t = TensorElem::word(w, &word).unwrap();
        let h = HeckeElem::script(Perm::s(s, 3));
        let lhs = schur_on_tensor(&x, &tensor_act(&t, &h).unwrap()).unwrap();
        let rhs = tensor_act(&schur_on_tensor(&x, &t).unwrap(), &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generators_act_through_the_coproduct(h in 1i64..=2, m in 1u32..=2, upper in any::<bool>(), word in prop::collection::vec(1i64..=3, 3)) {
        let w = win(1, 3);
        let tok = if upper { Token::E(h, m) } else { Token::F(h, m) };
        let t = TensorElem::word(w, &word).unwrap();
        let image = evaluate_word(&qschur_core::quantum::GenWord(vec![tok.clone()]), &w, 3).unwrap();
        prop_assert_eq!(gen_on_tensor(&tok, &t).unwrap(), schur_on_tensor(&image, &t).unwrap());
    }
}
