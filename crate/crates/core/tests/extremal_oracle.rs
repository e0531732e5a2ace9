//! Two independent routes to the minimum of the capacity/mass-constrained
//! cosine sum, compared against the greedy solver.

use sumfree_core::extremal::{minimize_weighted_cosine, ExtremalCosineProblem};
use sumfree_core::{to_f64, Rational};

fn coefficients(q: u64, l: u64) -> Vec<f64> {
    (0..q)
        .map(|j| ((2 * j + l) as f64 * std::f64::consts::PI / q as f64).cos())
        .collect()
}

/// Enumerates every vertex of the feasible polytope: each weight at 0 or
/// `cap`, except possibly one free weight set to make the mass exact.
fn vertex_oracle(q: u64, l: u64, cap: f64, mass: f64) -> f64 {
    let c = coefficients(q, l);
    let q = q as usize;
    let mut best = f64::INFINITY;
    for free in 0..=q {
        let others: Vec<usize> = (0..q).filter(|&j| j != free).collect();
        let m = others.len();
        // Gray code walk keeps sum and cost incremental
        let (mut sum, mut cost) = (0.0f64, 0.0f64);
        let mut on = vec![false; m];
        for step in 0u64..(1u64 << m) {
            if step > 0 {
                let flip = step.trailing_zeros() as usize;
                on[flip] = !on[flip];
                let sign = if on[flip] { 1.0 } else { -1.0 };
                sum += sign * cap;
                cost += sign * cap * c[others[flip]];
            }
            if free < q {
                let w = mass - sum;
                if (-1e-12..=cap + 1e-12).contains(&w) {
                    best = best.min(cost + w.clamp(0.0, cap) * c[free]);
                }
            } else if sum >= mass - 1e-12 {
                best = best.min(cost);
            }
        }
    }
    best
}

/// Lagrangian dual `max_{lambda >= 0} lambda * mass + cap * sum_j min(0, c_j - lambda)`,
/// maximised over its breakpoints.
fn dual_oracle(q: u64, l: u64, cap: f64, mass: f64) -> f64 {
    let c = coefficients(q, l);
    let dual = |lam: f64| lam * mass + cap * c.iter().map(|&cj| (cj - lam).min(0.0)).sum::<f64>();
    std::iter::once(0.0)
        .chain(c.iter().copied().filter(|&x| x > 0.0))
        .map(dual)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn cases() -> Vec<(u64, u64, Rational, Rational)> {
    let mut out = Vec::new();
    for q in [7u64, 13, 19] {
        let k = ((q - 1) / 6) as i128;
        for l in 0..=(q - 1) / 2 {
            for cap in [Rational::new(1, 2), Rational::from_integer(1)] {
                for mass in [0, k, 2 * k] {
                    out.push((q, l, cap, Rational::from_integer(mass)));
                }
            }
        }
    }
    out
}

#[test]
fn greedy_matches_vertex_enumeration() {
    for (q, l, cap, mass) in cases() {
        let prob = ExtremalCosineProblem::new(q, l, cap, mass).unwrap();
        let got = minimize_weighted_cosine(&prob).unwrap();
        let expect = vertex_oracle(q, l, to_f64(cap), to_f64(mass));
        assert!(
            (got.value - expect).abs() < 1e-9,
            "q={q} l={l} cap={cap} mass={mass}: {} vs {expect}",
            got.value
        );
    }
}

#[test]
fn greedy_matches_dual() {
    for (q, l, cap, mass) in cases() {
        let prob = ExtremalCosineProblem::new(q, l, cap, mass).unwrap();
        let got = minimize_weighted_cosine(&prob).unwrap();
        let expect = dual_oracle(q, l, to_f64(cap), to_f64(mass));
        assert!((got.value - expect).abs() < 1e-9, "q={q} l={l}");
    }
}

#[test]
fn greedy_weights_are_feasible() {
    for (q, l, cap, mass) in cases() {
        let prob = ExtremalCosineProblem::new(q, l, cap, mass).unwrap();
        let got = minimize_weighted_cosine(&prob).unwrap();
        let total: Rational = got.weights.iter().sum();
        assert!(total >= mass);
        assert!(got
            .weights
            .iter()
            .all(|&w| w >= Rational::from_integer(0) && w <= cap));
    }
}

#[test]
fn seven_zero_mass_value() {
    assert!((vertex_oracle(7, 0, 1.0, 0.0) + 2.2470).abs() < 1e-4);
}
