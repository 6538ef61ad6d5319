use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tensorhom_core::algebra::by_name;
use tensorhom_core::bicomplex::{total_cohomology, Bicomplex, Window};
use tensorhom_core::exactla::rank;
use tensorhom_core::operators::{bracket, insertion};
use tensorhom_core::{Matrix, MultilinearOp, OpSum};

fn rank_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [16usize, 32, 64] {
        // banded integer matrix with a nontrivial kernel
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i.abs_diff(j) <= 2 { (i + 2 * j) as i64 % 7 - 3 } else { 0 }).collect())
            .collect();
        let m = Matrix::from_int_rows(&rows);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| rank(m)));
    }
    group.finish();
}

fn bracket_kernel(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut group = c.benchmark_group("bracket");
    for (k, l) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
        let f = OpSum::from(MultilinearOp::random(&mut rng, 3, k, l, 0.5));
        let g = OpSum::from(MultilinearOp::random(&mut rng, 3, l, k, 0.5));
        group.bench_function(format!("dim3_{k}x{l}"), |b| b.iter(|| bracket(&f, &g).unwrap()));
    }
    let psi = MultilinearOp::random(&mut rng, 3, 2, 1, 0.5);
    group.bench_function("insertion_dim3_into_4", |b| b.iter(|| insertion(&psi, 4).unwrap()));
    group.finish();
}

fn bicomplex_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("bicomplex");
    group.sample_size(10);
    let dual = by_name("dual").unwrap();
    group.bench_function("dual_rect_3x3", |b| {
        b.iter(|| total_cohomology(&Bicomplex::assemble(&dual, Window::Rect { k_max: 3, l_max: 3 }).unwrap()).unwrap())
    });
    let poly = by_name("poly0-n2-D2").unwrap();
    group.bench_function("poly0_n2_block_2_2", |b| {
        b.iter(|| total_cohomology(&Bicomplex::assemble(&poly, Window::Bidegree { p: 2, q: 2 }).unwrap()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, rank_kernel, bracket_kernel, bicomplex_kernel);
criterion_main!(benches);
