//! Randomised laws for composition, interpretation, rewriting and notation.

mod common;

use common::*;
use polygraph::diagram::Diagram;
use polygraph::engine::{self, enumerate_normal_forms, normalize, Budget, EvalOptions, Strategy as Order};
use polygraph::interp::{check_simple, eval_current, eval_heat, Grid};
use polygraph::par::Execution;
use polygraph::suite::{builtin_arith, builtin_sort};
use polygraph::syntax::{parse_value, print_value};
use polygraph::value::diagram_to_values;
use proptest::prelude::*;

fn small_list() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..20, 0..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interchange(a in 0usize..4, b in 0usize..4, c in 0usize..4, d in 0usize..4) {
        let (prog, _) = builtin_arith();
        let unary = ["s", "s", "s", "s"];
        let binary = ["add", "mult", "add", "mult"];
        let cellof = |n: &str| Diagram::cell(&prog.sig, cell(&prog, n), None).unwrap();
        let (f, g) = (cellof(binary[a]), cellof(binary[b]));
        let (f2, g2) = (cellof(unary[c]), cellof(unary[d]));
        let lhs = f.compose_parallel(&g).compose_sequential(&f2.compose_parallel(&g2)).unwrap();
        let rhs = f.compose_sequential(&f2).unwrap().compose_parallel(&g.compose_sequential(&g2).unwrap());
        prop_assert_eq!(lhs.canonical_form(), rhs.canonical_form());
    }

    #[test]
    fn sequential_composition_associates(xs in small_list()) {
        let (prog, _) = builtin_sort();
        let v = values(&prog, &[list(&prog, &xs)]);
        let split = Diagram::cell(&prog.sig, cell(&prog, "split"), None).unwrap();
        let merge = Diagram::cell(&prog.sig, cell(&prog, "merge"), None).unwrap();
        let left = v.compose_sequential(&split).unwrap().compose_sequential(&merge).unwrap();
        let right = v.compose_sequential(&split.compose_sequential(&merge).unwrap()).unwrap();
        prop_assert_eq!(left.canonical_form(), right.canonical_form());
    }

    #[test]
    fn interpretation_is_monotone(p in prop::collection::vec(1u64..6, 3), bump in prop::collection::vec(0u64..4, 3)) {
        let (prog, interp) = builtin_sort();
        let q: Vec<u64> = p.iter().zip(&bump).map(|(a, b)| a + b).collect();
        for r in prog.rules() {
            let m = r.lhs.inputs().len();
            if m > 3 {
                continue;
            }
            let (lo, hi) = (&p[..m], &q[..m]);
            for side in [&r.lhs, &r.rhs] {
                let (cl, ch) = (eval_current(&prog.sig, side, &interp, lo).unwrap(), eval_current(&prog.sig, side, &interp, hi).unwrap());
                prop_assert!(cl.iter().zip(&ch).all(|(a, b)| a <= b), "{}", r.name);
                prop_assert!(eval_heat(&prog.sig, side, &interp, lo).unwrap() <= eval_heat(&prog.sig, side, &interp, hi).unwrap());
            }
        }
    }

    #[test]
    fn interpretation_is_additive_over_juxtaposition(xs in small_list(), ys in small_list()) {
        let (prog, interp) = builtin_sort();
        let f = applied(&prog, "sort", &[list(&prog, &xs)]);
        let g = applied(&prog, "split", &[list(&prog, &ys)]);
        let fg = f.compose_parallel(&g);
        let mut cur = eval_current(&prog.sig, &f, &interp, &[]).unwrap();
        cur.extend(eval_current(&prog.sig, &g, &interp, &[]).unwrap());
        prop_assert_eq!(eval_current(&prog.sig, &fg, &interp, &[]).unwrap(), cur);
        let heat = eval_heat(&prog.sig, &f, &interp, &[]).unwrap() + eval_heat(&prog.sig, &g, &interp, &[]).unwrap();
        prop_assert_eq!(eval_heat(&prog.sig, &fg, &interp, &[]).unwrap(), heat);
    }

    #[test]
    fn values_print_and_parse_back(xs in small_list(), n in 0u64..30) {
        let (prog, _) = builtin_sort();
        let v = list(&prog, &xs);
        let back = parse_value(&prog, &print_value(&prog, &v), prog.sig.sort_id("list").unwrap()).unwrap();
        prop_assert_eq!(back, v);
        let (arith, _) = builtin_arith();
        let t = numeral(&arith, n);
        let back = parse_value(&arith, &print_value(&arith, &t), arith.sig.sort_id("nat").unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn every_strategy_sorts(xs in small_list(), seed in any::<u64>()) {
        let (prog, _) = builtin_sort();
        let mut want = xs.clone();
        want.sort();
        let d = applied(&prog, "sort", &[list(&prog, &xs)]);
        for s in [Order::LeftmostInnermost, Order::LeftmostOutermost, Order::Random(seed)] {
            let (nf, _) = normalize(&prog, &d, s, 1_000_000).unwrap();
            prop_assert_eq!(diagram_to_values(&prog.sig, &nf).unwrap(), vec![list(&prog, &want)]);
        }
    }

    #[test]
    fn rewriting_commutes_with_context(m in 0u64..5, n in 0u64..5) {
        let (prog, _) = builtin_arith();
        let d = applied(&prog, "add", &[numeral(&prog, m), numeral(&prog, n)]);
        let s = Diagram::cell(&prog.sig, cell(&prog, "s"), None).unwrap();
        let (inner, _) = normalize(&prog, &d, Order::default(), 1000).unwrap();
        let (outer, _) = normalize(&prog, &d.compose_sequential(&s).unwrap(), Order::default(), 1000).unwrap();
        prop_assert_eq!(inner.compose_sequential(&s).unwrap().canonical_form(), outer.canonical_form());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn execution_modes_agree(xs in prop::collection::vec(0u64..5, 0..4)) {
        let (prog, _) = builtin_sort();
        let d = applied(&prog, "sort", &[list(&prog, &xs)]);
        let seq = enumerate_normal_forms(&prog, &d, Budget::default(), Execution::Sequential).unwrap();
        let par = enumerate_normal_forms(&prog, &d, Budget::default(), Execution::Parallel).unwrap();
        let forms = |v: &[Diagram]| v.iter().map(|d| d.canonical_form()).collect::<Vec<_>>();
        prop_assert_eq!(forms(&seq), forms(&par));
        let opts = EvalOptions { exec: Execution::Sequential, ..EvalOptions::default() };
        let one = engine::evaluate(&prog, cell(&prog, "sort"), &[list(&prog, &xs)], &opts).unwrap();
        prop_assert_eq!(diagram_to_values(&prog.sig, &seq[0]).unwrap(), one);
    }
}

#[test]
fn check_reports_agree_across_execution_modes() {
    for (prog, interp) in [builtin_arith(), builtin_sort()] {
        let a = check_simple(&prog, &interp, Grid::new(5), Execution::Sequential);
        let b = check_simple(&prog, &interp, Grid::new(5), Execution::Parallel);
        assert_eq!(a, b);
    }
}
