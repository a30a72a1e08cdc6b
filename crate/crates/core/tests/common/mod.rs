//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use bratteli::diagram::PeriodicTail;
use bratteli::morphism::PeriodicRule;
use bratteli::{Diagram, DiagramPresentation, Matrix, Premorphism, PremorphismWindow};
use num_bigint::BigUint;
use rand::Rng;

pub fn vec_of(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

/// Entries in `0..=max` with no zero column.
pub fn random_embedding<R: Rng>(rng: &mut R, rows: usize, cols: usize, max: u64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_range(0..=max).into());
        }
    }
    for j in 0..cols {
        if m.column(j).iter().all(|x| *x == BigUint::from(0u32)) {
            let i = rng.gen_range(0..rows);
            m.set(i, j, rng.gen_range(1..=max).into());
        }
    }
    m
}

fn next_level<R: Rng>(rng: &mut R, e: &Matrix, v: &[BigUint]) -> Vec<BigUint> {
    e.mul_vec(v)
        .into_iter()
        .map(|x| x + BigUint::from(rng.gen_range(0..=1u32)))
        .map(|x| if x == BigUint::from(0u32) { BigUint::from(1u32) } else { x })
        .collect()
}

/// Eventually periodic diagram: at most 3 summands per level, edge entries at most 3,
/// prefix length 1 to 3, period 1 or 2. Levels are built as `E·V` plus a little slack.
pub fn random_diagram<R: Rng>(rng: &mut R) -> Diagram {
    let p = rng.gen_range(1..=3);
    let q = rng.gen_range(1..=2);
    let widths: Vec<usize> = (0..p + q).map(|_| rng.gen_range(1..=3)).collect();
    let mut levels = vec![(0..widths[0]).map(|_| BigUint::from(rng.gen_range(1..=3u32))).collect::<Vec<_>>()];
    let mut edges = Vec::new();
    for n in 1..p + q {
        let e = random_embedding(rng, widths[n], widths[n - 1], 3);
        let v = next_level(rng, &e, &levels[n - 1]);
        edges.push(e);
        levels.push(v);
    }
    let mut tail_edges: Vec<Matrix> = edges[p..].to_vec();
    tail_edges.push(random_embedding(rng, widths[p], widths[p + q - 1], 3));
    let glue = edges[p - 1].clone();
    let presentation = DiagramPresentation::Levels {
        prefix_levels: levels[..p].to_vec(),
        prefix_edges: edges[..p - 1].to_vec(),
        tail: Some(PeriodicTail {
            levels: levels[p..].to_vec(),
            edges: tail_edges,
            glue,
        }),
    };
    Diagram::validate(presentation).expect("generated diagram is valid")
}

/// The presentation with every level multiplied by `k`.
pub fn scaled(d: &Diagram, k: u64) -> Diagram {
    let k = BigUint::from(k);
    let scale = |ls: &[Vec<BigUint>]| -> Vec<Vec<BigUint>> { ls.iter().map(|l| l.iter().map(|x| x * &k).collect()).collect() };
    let p = match d.presentation() {
        DiagramPresentation::Zero => DiagramPresentation::Zero,
        DiagramPresentation::Levels {
            prefix_levels,
            prefix_edges,
            tail,
        } => DiagramPresentation::Levels {
            prefix_levels: scale(prefix_levels),
            prefix_edges: prefix_edges.clone(),
            tail: tail.as_ref().map(|t| PeriodicTail {
                levels: scale(&t.levels),
                edges: t.edges.clone(),
                glue: t.glue.clone(),
            }),
        },
    };
    Diagram::validate(p).expect("scaling preserves validity")
}

/// `F_n = a·E_{n,n+c}`, `f_n = n + c` from `d` into a diagram with the same edges and
/// levels `k·V`, `1 ≤ a ≤ k`. Two such maps are equivalent exactly when their `a` agree.
pub fn inflation(source: &Diagram, target: &Diagram, a: u64, c: usize) -> Premorphism {
    let q = source.period().expect("tail");
    let l = source.prefix_len() + q + 1;
    let a = BigUint::from(a);
    Premorphism::validate(PremorphismWindow {
        source: source.clone(),
        target: target.clone(),
        indices: (1..=l).map(|n| n + c).collect(),
        matrices: (1..=l)
            .map(|n| source.telescope_matrix(n, n + c).unwrap().scaled(&a))
            .collect(),
        periodic_rule: Some(PeriodicRule { period: q, shift: q }),
    })
    .expect("inflation is a premorphism")
}

/// Pointwise equality of two premorphisms on `1..=upto`.
pub fn same_values(f: &Premorphism, g: &Premorphism, upto: usize) -> bool {
    (1..=upto).all(|n| {
        f.is_defined_at(n) == g.is_defined_at(n)
            && (!f.is_defined_at(n) || (f.index(n).unwrap() == g.index(n).unwrap() && f.matrix(n).unwrap() == g.matrix(n).unwrap()))
    })
}

/// UHF-shaped diagram: first size `k1`, prefix ratios, then a constant tail ratio.
pub fn uhf(k1: u64, prefix_ratios: &[u64], ratio: u64) -> Diagram {
    let mut sizes = vec![k1];
    for r in prefix_ratios {
        sizes.push(sizes.last().unwrap() * r);
    }
    let levels: Vec<&[u64]> = sizes.iter().map(std::slice::from_ref).collect();
    let edges = prefix_ratios.iter().map(|&r| Matrix::small(&[&[r]])).collect();
    let last = *sizes.last().unwrap();
    Diagram::validate(DiagramPresentation::periodic(
        &levels,
        edges,
        &[&[last * ratio]],
        vec![Matrix::small(&[&[ratio]])],
        Matrix::small(&[&[ratio]]),
    ))
    .expect("uhf diagram is valid")
}
