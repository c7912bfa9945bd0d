//! Shared generators and an independent determinant oracle for the
//! integration suites.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

use hexdet_core::{ratio, rational, Graph, Rational};

/// Random nonzero rational with numerator in `[-3, 3]` and denominator in
/// `[1, 4]`.
pub fn random_weight(rng: &mut StdRng) -> Rational {
    let numer = loop {
        let v = rng.gen_range(-3..=3i64);
        if v != 0 {
            break v;
        }
    };
    ratio(numer, rng.gen_range(1..=4i64))
}

/// Random graph with up to `max_vertices` vertices and edge density 1/2.
pub fn random_graph(rng: &mut StdRng, max_vertices: usize) -> Graph {
    let n = rng.gen_range(0..=max_vertices);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((a, b, random_weight(rng)));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

/// Laplace expansion along the first row. Exponential-time but obviously
/// correct; deliberately shares nothing with the elimination code it is used
/// to check.
#[allow(dead_code)]
pub fn naive_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return rational(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = rational(0);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cofactor = entry.clone() * naive_det(&minor);
        if col % 2 == 0 {
            det += cofactor;
        } else {
            det -= cofactor;
        }
    }
    det
}
