//! Seeded instance builders shared by the benchmark suite.

use rankpath::instance::{gen_random_planar, gen_wall_instance, InstanceBundle, MatroidKind, MatroidSpec};
use rankpath::{Domain, ExactMatrix, LinearMatroid, VertexId};

/// A dense planar instance with a rank-3 uniform matroid.
pub fn planar_instance(n: usize, k: usize, seed: u64) -> InstanceBundle {
    let spec = MatroidSpec { kind: MatroidKind::Uniform { rank: 3 }, k };
    gen_random_planar(n, 0.85, &spec, seed).unwrap()
}

/// A wall instance of the given height with a rank-2 uniform matroid.
pub fn wall_instance(r: u32, seed: u64) -> InstanceBundle {
    let spec = MatroidSpec { kind: MatroidKind::Uniform { rank: 2 }, k: 2 };
    gen_wall_instance(r, &spec, seed).unwrap()
}

/// A full-row-rank linear matroid over GF(101): Vandermonde rows on the
/// distinct column bases 1..=n (n must stay below 101).
pub fn dense_matroid(rows: usize, n: usize) -> LinearMatroid {
    assert!(n < 101, "column bases must stay distinct mod 101");
    let mat: Vec<Vec<i64>> = (0..rows)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut x = 1i64;
                    for _ in 0..i {
                        x = x * (j as i64 + 1) % 101;
                    }
                    x
                })
                .collect()
        })
        .collect();
    let refs: Vec<&[i64]> = mat.iter().map(|r| r.as_slice()).collect();
    LinearMatroid::new(
        (0..n as VertexId).collect(),
        ExactMatrix::from_i64_rows(Domain::Gfp(101), &refs),
    )
    .unwrap()
}
