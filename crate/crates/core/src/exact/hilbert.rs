//! Projective dimension and degree from the Hilbert series of the leading-term ideal.

use crate::error::{Error, Result};
use crate::exact::groebner::groebner;
use crate::exact::groebner::Ideal;
use crate::exact::poly::{Monomial, MonomialOrder};

/// Projective dimension and degree of `Z(i)`.
///
/// The irrelevant and the unit ideal both give `(-1, 0)`.
pub fn hilbert_dim_degree(i: &Ideal) -> Result<(i64, u64)> {
    if !i.is_homogeneous() {
        return Err(Error::NonHomogeneous(
            "hilbert_dim_degree needs homogeneous generators".into(),
        ));
    }
    let nvars = i.ring().nvars();
    let gb = groebner(i, MonomialOrder::DegRevLex)?;
    let lms: Vec<Monomial> = gb
        .generators()
        .iter()
        .filter_map(|g| g.leading_monomial().cloned())
        .collect();
    Ok(dim_degree_from_monomials(nvars, &lms))
}

/// Dimension/degree of the projective scheme of a monomial ideal.
pub fn dim_degree_from_monomials(nvars: usize, gens: &[Monomial]) -> (i64, u64) {
    let mut num = hilbert_numerator(minimalize(gens.to_vec()));
    // divide by (1 - t) as long as the numerator vanishes at t = 1
    let mut krull = nvars as i64;
    while !num.is_empty() && num.iter().sum::<i64>() == 0 {
        num = divide_one_minus_t(&num);
        krull -= 1;
    }
    if num.is_empty() || krull <= 0 {
        return (-1, 0);
    }
    let deg: i64 = num.iter().sum();
    (krull - 1, deg as u64)
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of `K[x]/M`.
pub fn hilbert_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    if gens.is_empty() {
        return vec![1];
    }
    // pairwise coprime generators: product of (1 - t^deg)
    if pairwise_coprime(&gens) {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = vec![0i64; acc.len() + d];
            for (k, &c) in acc.iter().enumerate() {
                next[k] += c;
                next[k + d] -= c;
            }
            acc = next;
        }
        return trim(acc);
    }
    // pivot on the variable occurring in the most non-linear generators
    let nv = gens[0].nvars();
    let mut best = 0;
    let mut best_count = 0;
    for v in 0..nv {
        let c = gens.iter().filter(|g| g.0[v] > 0 && g.degree() > 1).count();
        if c > best_count {
            best = v;
            best_count = c;
        }
    }
    // N(M) = N(M + x) + t·N(M : x)
    let x = Monomial::var(nv, best);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.0[best] == 0).cloned().collect();
    plus.push(x);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            if h.0[best] > 0 {
                h.0[best] -= 1;
            }
            h
        })
        .collect();
    let a = hilbert_numerator(minimalize(plus));
    let b = hilbert_numerator(minimalize(colon));
    let len = a.len().max(b.len() + 1);
    let mut out = vec![0i64; len];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.iter().enumerate() {
        out[k + 1] += c;
    }
    trim(out)
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].coprime(&gens[j]) {
                return false;
            }
        }
    }
    true
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn divide_one_minus_t(num: &[i64]) -> Vec<i64> {
    // q(t)(1 - t) = num: q_k = q_{k-1} + num_k
    let mut q = Vec::with_capacity(num.len().saturating_sub(1));
    let mut acc = 0i64;
    for &c in &num[..num.len() - 1] {
        acc += c;
        q.push(acc);
    }
    trim(q)
}
