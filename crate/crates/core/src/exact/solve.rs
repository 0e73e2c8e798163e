//! Base-field solutions of zero-dimensional polynomial systems.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::exact::field::Scalar;
use crate::exact::groebner::{groebner, Ideal};
use crate::exact::poly::{MonomialOrder, MultiPoly, Ring};
use crate::exact::univariate::{roots, UniPoly};

/// Solutions of a polynomial system over the base field.
#[derive(Clone, Debug, Default)]
pub struct Solutions {
    /// Distinct solutions, sorted lexicographically by coordinates.
    pub points: Vec<Vec<Scalar>>,
    /// The system has a positive-dimensional component somewhere in the search.
    pub positive_dimensional: bool,
    /// Some solution over the algebraic closure is not defined over the base field.
    pub irrational: bool,
}

/// All base-field solutions of `gens = 0` via lex Gröbner bases and back substitution.
pub fn solve(gens: &[MultiPoly], rng: &mut impl Rng) -> Result<Solutions> {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .expect("solve needs at least one equation");
    let mut out = Solutions::default();
    solve_rec(&ring, gens, Vec::new(), rng, &mut out)?;
    out.points.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            let c = crate::exact::univariate::scalar_order(x, y);
            if c.is_ne() {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    });
    out.points.dedup();
    Ok(out)
}

/// `suffix` holds the values already fixed for the trailing variables.
fn solve_rec(
    ring: &Arc<Ring>,
    gens: &[MultiPoly],
    suffix: Vec<Scalar>,
    rng: &mut impl Rng,
    out: &mut Solutions,
) -> Result<()> {
    let nv = ring.nvars();
    if nv == 0 {
        if gens.iter().all(|g| g.is_zero()) {
            out.points.push(suffix);
        }
        return Ok(());
    }
    let lex = ring.with_order(MonomialOrder::Lex);
    let moved: Vec<MultiPoly> = gens.iter().map(|g| g.reorder(&lex)).collect();
    let id = Ideal::new(&lex, moved)?;
    let gb = groebner(&id, MonomialOrder::Lex)?;
    let basis = gb.generators();
    if basis.iter().any(MultiPoly::is_constant) {
        return Ok(());
    }
    // zero-dimensional iff every variable has a pure-power leading monomial
    for v in 0..nv {
        let pure = basis.iter().any(|g| {
            let m = g.leading_monomial().unwrap();
            m.0[v] > 0 && m.0.iter().enumerate().all(|(k, &e)| k == v || e == 0)
        });
        if !pure {
            out.positive_dimensional = true;
            return Ok(());
        }
    }
    let last = nv - 1;
    let uni = basis
        .iter()
        .find(|g| g.support_vars().iter().all(|&k| k == last))
        .expect("lex basis of a zero-dimensional ideal has an eliminant");
    let u = to_univariate(uni, last);
    let sf = u.squarefree();
    let rts = roots(&sf, rng);
    if rts.len() < sf.degree().unwrap_or(0) {
        out.irrational = true;
    }
    let sub = Ring::new(
        ring.vars[..last].to_vec(),
        ring.field,
        MonomialOrder::DegRevLex,
    );
    for r in rts {
        let mut images: Vec<MultiPoly> = sub.vars_polys();
        images.push(sub.constant(r.clone()));
        let reduced: Vec<MultiPoly> = basis
            .iter()
            .map(|g| g.compose(&sub, &images))
            .filter(|g| !g.is_zero())
            .collect();
        let mut suf = vec![r];
        suf.extend(suffix.iter().cloned());
        if reduced.iter().any(MultiPoly::is_constant) {
            continue;
        }
        if reduced.is_empty() {
            if last == 0 {
                out.points.push(suf);
            } else {
                out.positive_dimensional = true;
            }
            continue;
        }
        solve_rec(&sub, &reduced, suf, rng, out)?;
    }
    Ok(())
}

/// Reads a polynomial supported on one variable as a univariate polynomial.
pub fn to_univariate(p: &MultiPoly, var: usize) -> UniPoly {
    let d = p.degree_in(var) as usize;
    let mut c = vec![p.field().zero(); d + 1];
    for (m, s) in p.terms() {
        c[m.0[var] as usize] = &c[m.0[var] as usize] + s;
    }
    UniPoly::new(p.field(), c)
}
