//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line per
//! criterion; run with `cargo test -p parkhull-core --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use parkhull::faces::oracle::{face_lattice_oracle, VertexSet};
use parkhull::faces::{edge_count, f_vector};
use parkhull::lattice::dragon::{dragon_exhaustive, dragon_matching};
use parkhull::lattice::postnikov::DragonTable;
use parkhull::lattice::{
    lattice_count, slice_count_bruteforce, slice_spec, slice_vertex_type, sum_range, x_from_y,
    y_coordinates, CountMethod, SliceKind,
};
use parkhull::polytope::{edge_graph, enumerate_parking_functions, vertex_count};
use parkhull::verify::partition_faces_by_dimension;
use parkhull::volume::{egf_identity_check, volume, volume_oracle};
use parkhull::ScanConfig;

fn report(id: &str, title: &str, failures: &[String], elapsed: Duration) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[{verdict}] criterion {id}: {title} ({elapsed:.2?})");
    for f in failures {
        println!("    - {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn q(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

#[test]
fn criterion_1_volume_table() {
    let expected = [
        q(0, 1),
        q(1, 2),
        q(4, 1),
        q(159, 4),
        q(492, 1),
        q(58835, 8),
        q(129237, 1),
        q(41822865, 16),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (n, want) in (1..=8).zip(&expected) {
        let got = volume(n);
        if &got != want {
            failures.push(format!("V_{n} = {got}, expected {want}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}, limit 1 s"));
    }
    report("1", "volume(n) exact for n = 1..8", &failures, elapsed);
}

#[test]
fn criterion_2_lattice_table() {
    let expected: [i64; 8] = [1, 3, 17, 144, 1623, 22804, 383415, 7501422];
    let cfg = ScanConfig::default();
    let start = Instant::now();
    let mut failures = Vec::new();
    for (n, &want) in (1..=8).zip(&expected) {
        let got = lattice_count(n, CountMethod::BruteForce, &cfg).unwrap();
        if got != BigInt::from(want) {
            failures.push(format!("N(P_{n}) = {got}, expected {want}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(300) {
        failures.push(format!("took {elapsed:?}, limit 5 min"));
    }
    report("2", "brute-force lattice counts for n = 1..8", &failures, elapsed);
}

#[test]
fn criterion_3_closed_vs_bruteforce_lattice() {
    let cfg = ScanConfig::default();
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=5 {
        let table = DragonTable::new(n, &cfg).unwrap();
        for s in sum_range(n) {
            let closed = table.slice_count(s).unwrap().count;
            let brute = slice_count_bruteforce(n, s, &cfg).unwrap();
            if closed != brute {
                failures.push(format!("n={n} S={s}: closed {closed}, brute force {brute}"));
            }
        }
        let closed = lattice_count(n, CountMethod::Closed, &cfg).unwrap();
        let brute = lattice_count(n, CountMethod::BruteForce, &cfg).unwrap();
        if closed != brute {
            failures.push(format!("n={n}: closed total {closed}, brute force {brute}"));
        }
    }
    report("3", "closed lattice counts equal brute force, every slice, n <= 5", &failures, start.elapsed());
}

#[test]
fn criterion_4_volume_oracle() {
    let cfg = ScanConfig::default().with_shards(4);
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=5 {
        let oracle = volume_oracle(n, &cfg).unwrap();
        if oracle != volume(n) {
            failures.push(format!("n={n}: interpolation {oracle}, recurrence {}", volume(n)));
        }
    }
    report("4", "Ehrhart leading coefficient equals volume, n = 1..5", &failures, start.elapsed());
}

#[test]
fn criterion_5_f_vector() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=12usize {
        let f = f_vector(n).unwrap();
        let v = vertex_count(n);
        if f[0] != v {
            failures.push(format!("n={n}: f0 {} != V {v}", f[0]));
        }
        if f[1] != BigInt::from(n) * &v / 2u32 {
            failures.push(format!("n={n}: f1 {} != nV/2", f[1]));
        }
        if f[n - 1] != BigInt::from((1u64 << n) - 1) {
            failures.push(format!("n={n}: f_(n-1) {} != 2^n - 1", f[n - 1]));
        }
        let alt: BigInt = f.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x }).sum();
        if alt != BigInt::from(1 - (-1i64).pow(n as u32)) {
            failures.push(format!("n={n}: Euler sum {alt}"));
        }
    }
    for n in 2..=5usize {
        let lattice = face_lattice_oracle(n).unwrap();
        let oracle: Vec<BigInt> = lattice.f_vector().into_iter().map(BigInt::from).collect();
        let formula = f_vector(n).unwrap();
        if oracle != formula {
            failures.push(format!("n={n}: oracle {oracle:?} vs formula {formula:?}"));
        }
        let ours = partition_faces_by_dimension(&lattice).unwrap();
        for (d, sets) in ours.iter().enumerate() {
            let theirs: BTreeSet<VertexSet> = lattice.faces_of_dimension(d).cloned().collect();
            if sets != &theirs {
                failures.push(format!("n={n} d={d}: partition faces differ from oracle faces"));
            }
        }
    }
    report("5", "f-vector identities n = 2..12; oracle equality and bijection n = 2..5", &failures, start.elapsed());
}

#[test]
fn criterion_6_edge_graph() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=7usize {
        let g = edge_graph(n).unwrap();
        let verts = g.vertices();
        if (0..verts.len()).any(|i| g.degree(i) != n) {
            failures.push(format!("n={n}: graph is not {n}-regular"));
        }
        let expected = BigInt::from(n) * vertex_count(n) / 2u32;
        if BigInt::from(g.edge_count()) != expected || expected != edge_count(n).unwrap() {
            failures.push(format!("n={n}: {} edges, expected {expected}", g.edge_count()));
        }
        if g.edges().any(|(i, j)| verts[i].layer().abs_diff(verts[j].layer()) > 1) {
            failures.push(format!("n={n}: an edge skips a layer"));
        }
        if n <= 4 {
            let lattice = face_lattice_oracle(n).unwrap();
            let index: std::collections::HashMap<_, _> =
                lattice.vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
            let ours: BTreeSet<VertexSet> = g
                .edges()
                .map(|(i, j)| {
                    let mut s = VertexSet::empty(verts.len());
                    s.insert(index[&verts[i]]);
                    s.insert(index[&verts[j]]);
                    s
                })
                .collect();
            let theirs: BTreeSet<VertexSet> = lattice.faces_of_dimension(1).cloned().collect();
            if ours != theirs {
                failures.push(format!("n={n}: edge graph differs from oracle 1-faces"));
            }
        }
    }
    report("6", "edge graph regular, layer-local, equal to oracle edges", &failures, start.elapsed());
}

#[test]
fn criterion_7_egf_identity() {
    let start = Instant::now();
    let check = egf_identity_check(10).unwrap();
    let mut failures = Vec::new();
    if !check.holds() || !check.residual.coeffs().iter().all(Zero::is_zero) {
        failures.push(format!("residual {:?}", check.residual));
    }
    report("7", "EGF identity to order 10 with zero residual", &failures, start.elapsed());
}

#[test]
fn criterion_8_property_suites() {
    let start = Instant::now();
    let mut failures = Vec::new();

    for n in 1..=6usize {
        let count = enumerate_parking_functions(n).count() as u64;
        let expected = (n as u64 + 1).pow(n as u32 - 1);
        if count != expected {
            failures.push(format!("n={n}: {count} parking functions, expected {expected}"));
        }
    }

    for n in 1..=10usize {
        for s in sum_range(n) {
            let mut hits = 0;
            if s == n as i64 {
                hits += 1;
            }
            for k in 1..n {
                for r in 2..=k + 1 {
                    let total = k as i64 + r as i64 + (k + 2..=n).map(|v| v as i64).sum::<i64>();
                    hits += usize::from(total == s);
                }
            }
            let spec = slice_spec(n, s).unwrap();
            let pattern = slice_vertex_type(&spec);
            let consistent = pattern.iter().sum::<i64>() == s
                && matches!(spec.kind, SliceKind::AllOnes) == (s == n as i64);
            if hits != 1 || !consistent {
                failures.push(format!("n={n} S={s}: {hits} (r,k) solutions"));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=10usize {
        for _ in 0..200 {
            let mut x: Vec<i64> = (0..n).map(|_| rng.gen_range(-100..100)).collect();
            x.sort_unstable();
            let back = x_from_y(&y_coordinates(&x));
            if back != x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>() {
                failures.push(format!("y round trip failed on {x:?}"));
            }
        }
    }

    for n in 1..=3usize {
        let per = 1usize << n;
        for code in 0..per.pow(n as u32 - 1) {
            let mut c = code;
            let sets: Vec<u32> = (0..n - 1)
                .map(|_| {
                    let s = (c % per) as u32;
                    c /= per;
                    s
                })
                .collect();
            if dragon_exhaustive(&sets) != dragon_matching(&sets, n) {
                failures.push(format!("dragon checks disagree on {sets:?}"));
            }
        }
    }
    for _ in 0..100_000 {
        let sets: Vec<u32> = (0..4).map(|_| rng.gen_range(0..32u32)).collect();
        if dragon_exhaustive(&sets) != dragon_matching(&sets, 5) {
            failures.push(format!("dragon checks disagree on {sets:?}"));
        }
    }

    // slice_count errors out on a nonzero remainder, so success means every
    // bracket sum was divisible by (n-1)!
    let cfg = ScanConfig::default();
    for n in 1..=6usize {
        let table = DragonTable::new(n, &cfg).unwrap();
        let fact: BigInt = (1..n).map(BigInt::from).product();
        for s in sum_range(n) {
            match table.slice_count(s) {
                Ok(eval) if (&eval.bracket_sum % &fact).is_zero() => {}
                Ok(eval) => failures.push(format!("n={n} S={s}: bracket sum {} not divisible", eval.bracket_sum)),
                Err(e) => failures.push(format!("n={n} S={s}: {e}")),
            }
        }
    }

    report("8", "property suites", &failures, start.elapsed());
}
