use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use wavesym_core::eigenline::{build_eigenline_manifold, EigenlineOptions};
use wavesym_core::fresnel::{fresnel_mesh, maxwell_char_roots, singular_directions, Crystal};
use wavesym_core::multiplicity::{analyze_field, ContourOptions};
use wavesym_core::sphere::{chart_field, sigma_mn, z_set};
use wavesym_core::{Sym2Value, Vec3};

fn sym2(c: &mut Criterion) {
    let v = Sym2Value::new(1.5, -0.25, 0.75);
    c.bench_function("sym2_eigenvalues", |b| b.iter(|| black_box(v).eigenvalues()));
}

fn sphere(c: &mut Criterion) {
    c.bench_function("z_set_0_3", |b| b.iter(|| z_set(black_box(0), black_box(3)).unwrap()));
    let mut g = c.benchmark_group("unit_circle_winding");
    g.sample_size(10);
    for grid in [128, 512] {
        g.bench_function(format!("grid_{grid}"), |b| {
            b.iter(|| {
                let field = chart_field(sigma_mn(1, 4).unwrap(), 2.0, grid).unwrap();
                analyze_field(&field, &ContourOptions::default()).unwrap()
            })
        });
    }
    g.finish();
}

fn fresnel(c: &mut Criterion) {
    let crystal = Crystal::new(2.0, 2.5, 3.0).unwrap();
    let xi = Vec3::new(0.3, -0.5, 0.8).normalize();
    c.bench_function("maxwell_char_roots", |b| {
        b.iter(|| maxwell_char_roots(&crystal, black_box(&xi)))
    });
    c.bench_function("singular_directions", |b| {
        b.iter(|| singular_directions(black_box(&crystal)).unwrap())
    });
    c.bench_function("fresnel_mesh_4", |b| b.iter(|| fresnel_mesh(&crystal, 4).unwrap()));
}

fn eigenline(c: &mut Criterion) {
    let crystal = Crystal::new(2.0, 2.5, 3.0).unwrap();
    let points: Vec<Vec3> = singular_directions(&crystal)
        .unwrap()
        .iter()
        .map(|d| Vec3::from(d.x))
        .collect();
    let mut g = c.benchmark_group("eigenline_manifold");
    g.sample_size(10);
    for subdivisions in [3, 4] {
        let opts = EigenlineOptions {
            subdivisions,
            ..EigenlineOptions::default()
        };
        g.bench_function(format!("level_{subdivisions}"), |b| {
            b.iter(|| build_eigenline_manifold(&crystal.section(), &points, &opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sym2, sphere, fresnel, eigenline);
criterion_main!(benches);
