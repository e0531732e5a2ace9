//! The single-shot subcommands. Each returns the text it would print.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use sumfree_core::census::census as run_census;
use sumfree_core::extremal::canonical_offset;
use sumfree_core::fourier::schur_count_fourier;
use sumfree_core::{
    max_sumfree, minimize_weighted_cosine, schur_count_bruteforce, to_f64, AbelianGroup, Error,
    ExtremalCosineProblem, Limits, Rational, Subset,
};

fn lib(e: Error) -> anyhow::Error {
    anyhow!("{e}")
}

pub fn parse_group(spec: &str) -> Result<AbelianGroup> {
    spec.parse()
        .map_err(|e| anyhow!("invalid group {spec:?}: {e}"))
}

fn limit_message(e: Error, g: &AbelianGroup) -> anyhow::Error {
    match e {
        Error::LimitExceeded { order, limit } => anyhow!(
            "refusing {g}: order {order} exceeds the enumeration limit {limit} \
             (raise it with {} up to 128)",
            crate::config::LIMIT_ENV
        ),
        other => lib(other),
    }
}

pub fn mu(spec: &str) -> Result<String> {
    let g = parse_group(spec)?;
    let mu = g.mu().map_err(lib)?;
    Ok(format!(
        "type={} mu={mu} ({:.6})\n",
        g.classify(),
        to_f64(mu)
    ))
}

pub fn classify(spec: &str) -> Result<String> {
    let g = parse_group(spec)?;
    if g.is_trivial() {
        return Ok("group=1 order=1 type=trivial\n".to_string());
    }
    Ok(format!(
        "group={g} order={} exponent={} type={}\n",
        g.order(),
        g.exponent(),
        g.classify()
    ))
}

pub fn census(spec: &str, limits: Limits) -> Result<String> {
    let g = parse_group(spec)?;
    let c = run_census(&g, limits).map_err(|e| limit_message(e, &g))?;
    let mut s = String::new();
    writeln!(s, "n={}", g.order())?;
    writeln!(s, "sf_count={}", c.sf_count)?;
    writeln!(s, "sigma={:.6}", c.sigma)?;
    match c.mu {
        Some(mu) => {
            writeln!(s, "mu={mu} ({:.6})", to_f64(mu))?;
            writeln!(s, "sigma_minus_mu={:.6}", c.sigma - to_f64(mu))?;
        }
        None => writeln!(s, "mu=n/a")?,
    }
    Ok(s)
}

pub fn maxsf(spec: &str, limits: Limits) -> Result<String> {
    let g = parse_group(spec)?;
    if g.is_trivial() {
        return Ok("size=0 witness=0x0\n".to_string());
    }
    let (size, w) = max_sumfree(&g, limits).map_err(|e| limit_message(e, &g))?;
    let members: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    Ok(format!(
        "size={size} density={} witness={} members={}\n",
        Rational::new(size as i128, g.order() as i128),
        w.to_hex(),
        members.join(",")
    ))
}

pub fn schur(spec: &str, subset: &str) -> Result<String> {
    let g = parse_group(spec)?;
    let f = Subset::parse(&g, subset).map_err(|e| anyhow!("invalid subset {subset:?}: {e}"))?;
    let brute = schur_count_bruteforce(&f);
    let fourier = schur_count_fourier(&f).map_err(lib)?;
    if fourier != brute {
        bail!(
            "backend disagreement: pair scan T={}, character sum T={}",
            brute.triples(),
            fourier.triples()
        );
    }
    Ok(format!(
        "T={} delta={} bruteforce_T={} fourier_T={}\n",
        brute.triples(),
        brute.delta(),
        brute.triples(),
        fourier.triples()
    ))
}

/// Minimum over every vertex of the feasible box-with-mass polytope. Exponential in `q`.
pub fn extremal_vertex_minimum(prob: &ExtremalCosineProblem) -> f64 {
    let coeffs = prob.coefficients();
    let q = coeffs.len();
    let (cap, mass) = (to_f64(prob.cap()), to_f64(prob.mass()));
    let mut best = f64::INFINITY;
    // `free` is the one weight allowed strictly between 0 and cap; q means none
    for free in 0..=q {
        let others: Vec<usize> = (0..q).filter(|&j| j != free).collect();
        let mut on = vec![false; others.len()];
        let (mut placed, mut cost) = (0.0f64, 0.0f64);
        // Gray code order flips one weight per step
        for step in 0u64..(1u64 << others.len()) {
            if step > 0 {
                let i = step.trailing_zeros() as usize;
                on[i] = !on[i];
                let sign = if on[i] { 1.0 } else { -1.0 };
                placed += sign * cap;
                cost += sign * cap * coeffs[others[i]];
            }
            if free < q {
                let w = mass - placed;
                if (-1e-12..=cap + 1e-12).contains(&w) {
                    best = best.min(cost + w.clamp(0.0, cap) * coeffs[free]);
                }
            } else if placed >= mass - 1e-12 {
                best = best.min(cost);
            }
        }
    }
    best
}

pub const ORACLE_MAX_Q: u64 = 20;

pub fn extremal(q: u64, l: u64, cap: &str, mass: &str, oracle: bool) -> Result<String> {
    let cap: Rational = cap
        .trim()
        .parse()
        .map_err(|_| anyhow!("invalid cap {cap:?}"))?;
    let mass: Rational = mass
        .trim()
        .parse()
        .map_err(|_| anyhow!("invalid mass {mass:?}"))?;
    if q == 0 {
        bail!("q must be positive");
    }
    let mut s = String::new();
    let l0 = canonical_offset(q, l);
    if l0 != l {
        writeln!(s, "note: l={l} reduced to l={l0} by the reflection j -> -j")?;
    }
    let prob = ExtremalCosineProblem::new(q, l0, cap, mass).map_err(lib)?;
    let sol = minimize_weighted_cosine(&prob).map_err(|e| match e {
        Error::Infeasible => anyhow!(
            "infeasible: cap * q = {} is below mass {mass}",
            cap * Rational::from(q as i128)
        ),
        other => lib(other),
    })?;
    writeln!(s, "E={:.12}", sol.value)?;
    let weights: Vec<String> = sol
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w != Rational::from(0))
        .map(|(j, w)| format!("{j}:{w}"))
        .collect();
    writeln!(s, "weights={}", weights.join(","))?;
    if oracle {
        if q > ORACLE_MAX_Q {
            bail!("--oracle enumerates 2^q vertices; q={q} exceeds {ORACLE_MAX_Q}");
        }
        let check = extremal_vertex_minimum(&prob);
        if (check - sol.value).abs() > 1e-9 {
            bail!(
                "oracle disagreement: greedy {} vs vertex enumeration {check}",
                sol.value
            );
        }
        writeln!(s, "oracle={check:.12} agree=true").context("formatting")?;
    }
    Ok(s)
}
