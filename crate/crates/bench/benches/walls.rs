use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use wallkit::ledger::ledger_checks;
use wallkit::{
    candidates_on_ray, ChamberOptions, ChamberReport, ChernCharacter, Fixtures, TiltWallOptions, WallReportJson,
};

fn elliptic_quartics() -> ChernCharacter {
    ChernCharacter::from_ints(1, 0, -4, 8)
}

fn walls(c: &mut Criterion) {
    let v = elliptic_quartics();
    let cubic = ChernCharacter::from_ints(1, 0, -3, 5);
    c.bench_function("candidates_on_ray beta=-2", |b| b.iter(|| candidates_on_ray(black_box(&v), -2).unwrap()));
    c.bench_function("tilt walls (1,0,-4,8)", |b| {
        b.iter(|| WallReportJson::compute(black_box(&v), &TiltWallOptions::default()).unwrap())
    });
    // Certified through a rational ray.
    c.bench_function("tilt walls (1,0,-3,5)", |b| {
        b.iter(|| WallReportJson::compute(black_box(&cubic), &TiltWallOptions::default()).unwrap())
    });
}

fn chambers(c: &mut Criterion) {
    let v = elliptic_quartics();
    let fixtures = Fixtures::embedded();
    c.bench_function("chamber report (1,0,-4,8)", |b| {
        b.iter(|| ChamberReport::compute(black_box(&v), &ChamberOptions::default(), &fixtures).unwrap())
    });
    c.bench_function("ledger checks", |b| b.iter(|| ledger_checks(black_box(&fixtures))));
}

criterion_group!(benches, walls, chambers);
criterion_main!(benches);
