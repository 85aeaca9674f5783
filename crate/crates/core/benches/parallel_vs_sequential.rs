use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polygraph::engine::{application, enumerate_normal_forms, evaluate, Budget, EvalOptions};
use polygraph::interp::{check_simple, Grid};
use polygraph::par::{self, Execution};
use polygraph::program::Program;
use polygraph::suite::{builtin_arith, builtin_sort};
use polygraph::value::Value;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn list(prog: &Program, xs: &[u64]) -> Value {
    let id = |n| prog.sig.cell_id(n).unwrap();
    let (num, nil, cons) = (id("num"), id("nil"), id("cons"));
    xs.iter().rev().fold(Value::leaf(nil), |acc, x| Value::apply(cons, vec![Value::literal(num, *x), acc]))
}

fn grid_check(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_simple");
    for (label, (prog, interp)) in [("arith", builtin_arith()), ("sort", builtin_sort())] {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, label), &exec, |b, &exec| {
                b.iter(|| check_simple(&prog, &interp, Grid::new(8), exec))
            });
        }
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let (prog, _) = builtin_sort();
    let start = application(&prog, prog.function("sort").unwrap(), &[list(&prog, &[4, 1, 3, 2])]).unwrap();
    let mut g = c.benchmark_group("enumerate_normal_forms");
    for (mode, exec) in MODES {
        g.bench_function(mode, |b| b.iter(|| enumerate_normal_forms(&prog, &start, Budget::default(), exec).unwrap()));
    }
    g.finish();
}

fn batch_sort(c: &mut Criterion) {
    let (prog, _) = builtin_sort();
    let sort = prog.function("sort").unwrap();
    let inputs: Vec<Value> = (0..64u64).map(|i| list(&prog, &[(i * 7) % 11, i % 5, (i * 3) % 13, 9, i % 2])).collect();
    let mut g = c.benchmark_group("batch_sort");
    for (mode, exec) in MODES {
        g.bench_function(mode, |b| {
            b.iter(|| par::map(exec, &inputs, |v| evaluate(&prog, sort, std::slice::from_ref(v), &EvalOptions::default())))
        });
    }
    g.finish();
}

criterion_group!(benches, grid_check, enumeration, batch_sort);
criterion_main!(benches);
