//! Strict total order laws for tuples and codes.

use cgspan_core::dfs::{code_less, tuple_less, DfsCode, EdgeTuple};
use cgspan_core::graph::Label;
use proptest::prelude::*;

mod common;
use common::brute_dfs::gspan_less;

fn tuple() -> impl Strategy<Value = EdgeTuple> {
    (0u32..5, 0u32..5, 0u32..3, 0u32..3, 0u32..3)
        .prop_filter("no self loops", |(a, b, ..)| a != b)
        .prop_map(|(a, b, x, e, y)| EdgeTuple::new(a, b, Label(x), Label(e), Label(y)))
}

fn code() -> impl Strategy<Value = DfsCode> {
    prop::collection::vec(tuple(), 0..5).prop_map(DfsCode::from_tuples)
}

/// Exactly one of a < b, b < a, a == b.
fn trichotomy<T: PartialEq>(a: &T, b: &T, less: fn(&T, &T) -> bool) -> bool {
    let n = [less(a, b), less(b, a), a == b].iter().filter(|&&x| x).count();
    n == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn tuple_order(a in tuple(), b in tuple(), c in tuple()) {
        prop_assert!(!tuple_less(&a, &a));
        prop_assert!(trichotomy(&a, &b, tuple_less));
        prop_assert!(!(tuple_less(&a, &b) && tuple_less(&b, &a)));
        if tuple_less(&a, &b) && tuple_less(&b, &c) {
            prop_assert!(tuple_less(&a, &c));
        }
    }

    #[test]
    fn tuple_order_matches_case_analysis(a in tuple(), b in tuple()) {
        prop_assert_eq!(tuple_less(&a, &b), gspan_less(&a, &b));
    }

    #[test]
    fn code_order(a in code(), b in code(), c in code()) {
        prop_assert!(!code_less(&a, &a));
        prop_assert!(trichotomy(&a, &b, code_less));
        if code_less(&a, &b) && code_less(&b, &c) {
            prop_assert!(code_less(&a, &c));
        }
    }

    #[test]
    fn proper_prefix_is_smaller(a in code(), t in tuple()) {
        prop_assert!(code_less(&a, &a.extended(t)));
    }
}

#[test]
fn forward_and_backward_cases() {
    let t = |a, b| EdgeTuple::new(a, b, Label(0), Label(0), Label(0));
    // backward before the forward edge that grows past its source
    assert!(tuple_less(&t(2, 0), &t(2, 3)));
    assert!(tuple_less(&t(1, 2), &t(2, 0)));
    // forward from a deeper vertex first
    assert!(tuple_less(&t(2, 3), &t(1, 3)));
    assert!(tuple_less(&t(3, 0), &t(3, 1)));
    let l = |x, e, y| EdgeTuple::new(0, 1, Label(x), Label(e), Label(y));
    assert!(tuple_less(&l(0, 1, 1), &l(1, 0, 0)));
    assert!(tuple_less(&l(0, 0, 1), &l(0, 1, 0)));
}
