//! Local multiplicity of a zero-dimensional ideal at a point.

use crate::error::{Error, Result};
use crate::exact::field::Scalar;
use crate::exact::groebner::{groebner, Ideal};
use crate::exact::poly::{Monomial, MonomialOrder, MultiPoly};

/// Largest power of the maximal ideal tried before declaring the point non-isolated.
const MAX_POWER: u32 = 64;

/// `dim_K O_p / I O_p` for an ideal in one or two variables.
///
/// In two variables this uses `dim K[x]/(I + m^N)`: once two consecutive
/// values agree, Nakayama gives `m^N ⊆ I O_p` and the value is exact.
pub fn local_multiplicity(i: &Ideal, point: &[Scalar]) -> Result<usize> {
    let ring = i.ring();
    let nv = ring.nvars();
    if point.len() != nv {
        return Err(Error::ShapeMismatch(
            "point length differs from variable count".into(),
        ));
    }
    if nv == 0 || nv > 2 {
        return Err(Error::UnsupportedArity(nv));
    }
    let shifted: Vec<MultiPoly> = {
        let images: Vec<MultiPoly> = (0..nv)
            .map(|k| ring.var(k).add(&ring.constant(point[k].clone())))
            .collect();
        i.generators()
            .iter()
            .map(|g| g.compose(ring, &images))
            .filter(|g| !g.is_zero())
            .collect()
    };
    let origin = vec![ring.field.zero(); nv];
    if shifted.iter().any(|g| !g.eval(&origin).is_zero()) {
        return Err(Error::Precondition(
            "point is not a zero of the ideal".into(),
        ));
    }
    if shifted.is_empty() {
        return Err(Error::NotIsolated);
    }
    if nv == 1 {
        let v = shifted
            .iter()
            .map(|g| {
                g.terms()
                    .iter()
                    .map(|(m, _)| m.0[0] as usize)
                    .min()
                    .unwrap()
            })
            .min()
            .unwrap();
        return Ok(v);
    }
    let mut prev = None;
    for n in 1..=MAX_POWER {
        let d = truncated_dim(&shifted, n)?;
        if prev == Some(d) {
            return Ok(d);
        }
        prev = Some(d);
    }
    Err(Error::NotIsolated)
}

/// `dim K[s,t] / (gens + m^n)`.
fn truncated_dim(gens: &[MultiPoly], n: u32) -> Result<usize> {
    let ring = gens[0].ring();
    let mut all = gens.to_vec();
    for a in 0..=n {
        let m = Monomial(smallvec::smallvec![a as u16, (n - a) as u16]);
        all.push(MultiPoly::monomial(ring, m, ring.field.one()));
    }
    let id = Ideal::new(ring, all)?;
    let gb = groebner(&id, MonomialOrder::DegRevLex)?;
    let lms: Vec<&Monomial> = gb
        .generators()
        .iter()
        .filter_map(|g| g.leading_monomial())
        .collect();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n - a {
            let m = Monomial(smallvec::smallvec![a as u16, b as u16]);
            if !lms.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        }
    }
    Ok(count)
}
