use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eccforge_bench::{planted, sparse, stream};
use eccforge_core::{k_certificate, max_kec_subgraphs, DecompTree, Multigraph, Op, SparsTree};
use std::hint::black_box;

fn static_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for n in [64, 256] {
        let g = planted(1, n);
        group.bench_with_input(BenchmarkId::new("plain", n), &g, |b, g| {
            b.iter(|| max_kec_subgraphs(black_box(g), 3, false))
        });
        group.bench_with_input(BenchmarkId::new("certificate", n), &g, |b, g| {
            b.iter(|| max_kec_subgraphs(black_box(g), 3, true))
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate");
    for n in [256, 1024] {
        let g = sparse(2, n, 16);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| k_certificate(black_box(g), 4))
        });
    }
    group.finish();
}

fn incremental(c: &mut Criterion) {
    let mut group = c.benchmark_group("incremental");
    for n in [256, 1024] {
        let g = planted(3, n);
        group.bench_with_input(BenchmarkId::new("planted", n), &g, |b, g| {
            b.iter(|| DecompTree::from_graph(black_box(g)))
        });
        let g = sparse(3, n, 3);
        group.bench_with_input(BenchmarkId::new("gnm", n), &g, |b, g| {
            b.iter(|| DecompTree::from_graph(black_box(g)))
        });
    }
    group.finish();
}

fn replay(ops: &[Op]) -> usize {
    let mut t = SparsTree::build(&Multigraph::new(), 3);
    let mut yes = 0;
    for op in ops {
        match *op {
            Op::AddVertex => {
                t.add_vertex();
            }
            Op::AddEdge(a, b) => t.insert(a, b).unwrap(),
            Op::DeleteEdge(a, b) => t.delete(a, b).unwrap(),
            Op::Query(a, b) => yes += t.max_k_edge(a, b).unwrap() as usize,
        }
    }
    yes
}

fn dynamic(c: &mut Criterion) {
    let mut group = c.benchmark_group("dynamic");
    group.sample_size(10);
    for n in [32, 96] {
        let ops = stream(4, n, 8 * n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &ops, |b, ops| {
            b.iter(|| replay(black_box(ops)))
        });
    }
    group.finish();
}

criterion_group!(benches, static_solver, certificate, incremental, dynamic);
criterion_main!(benches);
