use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use heckeprod::gmodels::{gen_g4, tau1_tilde, tau2_tilde, Etilde3, G4Seed};
use heckeprod::l1l1::{build_c0, e_lower_c, e_upper_c, verify_comparison};
use heckeprod::matrix_alg::tensor_over;
use heckeprod::parse::parse_element;
use heckeprod::sample;

fn nilhecke(c: &mut Criterion) {
    let longest = parse_element("(x1 + 2*x2*y)^2 * tau1*tau2*tau1 * x3^2", Some(4)).unwrap();
    let mixed = parse_element("tau3 * tau2 * (x1 - y)^3 + s1 * delta2", Some(4)).unwrap();
    c.bench_function("nilhecke multiply n=4", |b| {
        b.iter(|| black_box(&longest).mul(black_box(&mixed)).unwrap())
    });
    let v = heckeprod::parse::parse_polynomial("x1^3*x2 - x3*x4*y^2 + 5").unwrap();
    c.bench_function("nilhecke act n=4", |b| {
        b.iter(|| black_box(&mixed).act(black_box(&v)).unwrap())
    });
}

fn gmodels(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let inner = sample::g3(&mut rng, 4);
    let outer = sample::g2(&mut rng, 4);
    c.bench_function("gen_g4 G3 into G2", |b| {
        b.iter(|| gen_g4(G4Seed::G3ThenG2(black_box(&inner), black_box(&outer))).unwrap())
    });
    let cube = Etilde3::Low21(sample::g3(&mut rng, 6));
    c.bench_function("braid word on G3", |b| {
        b.iter(|| {
            let v = tau1_tilde(black_box(&cube)).unwrap();
            let v = tau2_tilde(&v).unwrap();
            tau1_tilde(&v).unwrap()
        })
    });
}

fn comparison(c: &mut Criterion) {
    let alg = build_c0();
    let (m, n) = (e_upper_c(), e_lower_c());
    let mut group = c.benchmark_group("l1l1");
    group.sample_size(10);
    group.bench_function("tensor_over D=8", |b| {
        b.iter(|| tensor_over(&alg, &m, &n, black_box(8)).unwrap())
    });
    group.bench_function("verify_comparison D=8", |b| b.iter(|| verify_comparison(black_box(8))));
    group.finish();
}

criterion_group!(benches, nilhecke, gmodels, comparison);
criterion_main!(benches);
