//! Standard varieties used in examples and tests.

use crate::error::Result;
use crate::exact::field::{Field, Scalar};
use crate::exact::groebner::Ideal;
use crate::exact::matrix::DenseMatrix;
use crate::exact::poly::{MultiPoly, Ring};
use crate::projvar::{Parametrization, ProjVariety};

/// The quadric surface `x0 x3 − x1 x2` in `P^3`.
pub fn quadric_surface(field: Field) -> ProjVariety {
    let r = Ring::with_prefix("x", 4, field);
    let x = r.vars_polys();
    ProjVariety::hypersurface(x[0].mul(&x[3]).sub(&x[1].mul(&x[2]))).unwrap()
}

/// The rational normal curve of degree `n` in `P^n`: the 2×2 minors of
/// `(x0 … x_{n−1} ; x1 … x_n)` with parametrization `(s^n, s^{n−1}u, …, u^n)`.
pub fn rational_normal_curve(n: usize, field: Field) -> ProjVariety {
    assert!(n >= 2, "rational normal curve needs n >= 2");
    let r = Ring::with_prefix("x", n + 1, field);
    let x = r.vars_polys();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            gens.push(x[i].mul(&x[j + 1]).sub(&x[i + 1].mul(&x[j])));
        }
    }
    let t = Ring::with_prefix("t", 2, field);
    let (s, u) = (t.var(0), t.var(1));
    let coords = (0..=n)
        .map(|i| s.pow((n - i) as u32).mul(&u.pow(i as u32)))
        .collect();
    let par = Parametrization { ring: t, coords };
    ProjVariety::new(Ideal::new(&r, gens).unwrap(), Some(par)).unwrap()
}

/// The Segre embedding of `P^{a−1} × P^{b−1}` as the rank-one `a × b`
/// matrices, coordinates row by row.
pub fn segre(a: usize, b: usize, field: Field) -> ProjVariety {
    let r = Ring::with_prefix("x", a * b, field);
    let x = r.vars_polys();
    let idx = |i: usize, j: usize| i * b + j;
    let mut gens = Vec::new();
    for i in 0..a {
        for k in i + 1..a {
            for j in 0..b {
                for l in j + 1..b {
                    gens.push(
                        x[idx(i, j)]
                            .mul(&x[idx(k, l)])
                            .sub(&x[idx(i, l)].mul(&x[idx(k, j)])),
                    );
                }
            }
        }
    }
    let t = Ring::with_prefix("t", a + b, field);
    let coords = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, j)))
        .map(|(i, j)| t.var(i).mul(&t.var(a + j)))
        .collect();
    let par = Parametrization { ring: t, coords };
    ProjVariety::new(Ideal::new(&r, gens).unwrap(), Some(par)).unwrap()
}

/// Image of `v` under the invertible map `x ↦ x · m` (row convention).
pub fn linear_image(v: &ProjVariety, m: &DenseMatrix) -> Result<ProjVariety> {
    let ring = v.ring().clone();
    let n1 = v.n() + 1;
    let inv = m.inverse()?;
    let x = ring.vars_polys();
    // a point y of the image satisfies g(y · m^{-1}) = 0
    let pull: Vec<MultiPoly> = (0..n1)
        .map(|j| (0..n1).fold(ring.zero(), |acc, i| acc.add(&x[i].scale(inv.get(i, j)))))
        .collect();
    let gens = v
        .generators()
        .iter()
        .map(|g| g.compose(&ring, &pull))
        .collect();
    let par = v.parametrization().map(|p| Parametrization {
        ring: p.ring.clone(),
        coords: (0..n1)
            .map(|j| {
                (0..n1).fold(p.ring.zero(), |acc, i| {
                    acc.add(&p.coords[i].scale(m.get(i, j)))
                })
            })
            .collect(),
    });
    ProjVariety::new(Ideal::new(&ring, gens)?, par)
}

/// `v · m` for a row vector `v`.
pub fn row_times(v: &[Scalar], m: &DenseMatrix) -> Vec<Scalar> {
    m.transpose().apply(v)
}
