//! Projective varieties given by homogeneous ideals: smoothness, tangent
//! spaces, dual varieties and exact point sampling.

use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::groebner::{eliminate, Ideal};
use crate::exact::hilbert::hilbert_dim_degree;
use crate::exact::matrix::DenseMatrix;
use crate::exact::poly::{MonomialOrder, MultiPoly, Ring};
use crate::exact::solve::solve;
use crate::grassmann::SubspaceRep;
use crate::rng::{random_nonzero, random_vector};

/// Retry cap for sampling smooth points.
pub const SAMPLE_RETRIES: usize = 200;

/// A polynomial parametrization `t ↦ (c_0(t) : … : c_n(t))`.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub ring: Arc<Ring>,
    pub coords: Vec<MultiPoly>,
}

impl Parametrization {
    pub fn eval(&self, t: &[Scalar]) -> Vec<Scalar> {
        self.coords.iter().map(|c| c.eval(t)).collect()
    }
}

/// `X ⊆ P^n` with a homogeneous ideal in variables `x0..xn`.
#[derive(Clone, Debug)]
pub struct ProjVariety {
    n: usize,
    ideal: Ideal,
    parametrization: Option<Parametrization>,
    dim_degree: OnceLock<(i64, u64)>,
}

impl ProjVariety {
    pub fn new(ideal: Ideal, parametrization: Option<Parametrization>) -> Result<Self> {
        let ring = ideal.ring().clone();
        if ring.nvars() == 0 {
            return Err(Error::Precondition("ambient space must be nonzero".into()));
        }
        if !ideal.is_homogeneous() {
            return Err(Error::NonHomogeneous("variety generators".into()));
        }
        let n = ring.nvars() - 1;
        if let Some(p) = &parametrization {
            if p.coords.len() != n + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "parametrization has {} coordinates, expected {}",
                    p.coords.len(),
                    n + 1
                )));
            }
            for g in ideal.generators() {
                if !g.compose(&p.ring, &p.coords).is_zero() {
                    return Err(Error::Precondition(format!(
                        "generator {g} does not vanish on the parametrization"
                    )));
                }
            }
        }
        Ok(ProjVariety {
            n,
            ideal,
            parametrization,
            dim_degree: OnceLock::new(),
        })
    }

    /// Hypersurface `Z(f)`.
    pub fn hypersurface(f: MultiPoly) -> Result<Self> {
        let ring = f.ring().clone();
        ProjVariety::new(Ideal::new(&ring, vec![f])?, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.ideal.ring().field
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn generators(&self) -> &[MultiPoly] {
        self.ideal.generators()
    }

    pub fn parametrization(&self) -> Option<&Parametrization> {
        self.parametrization.as_ref()
    }

    fn dim_degree(&self) -> Result<(i64, u64)> {
        if let Some(d) = self.dim_degree.get() {
            return Ok(*d);
        }
        let d = hilbert_dim_degree(&self.ideal)?;
        Ok(*self.dim_degree.get_or_init(|| d))
    }

    pub fn dim(&self) -> Result<i64> {
        Ok(self.dim_degree()?.0)
    }

    pub fn degree(&self) -> Result<u64> {
        Ok(self.dim_degree()?.1)
    }

    pub fn codim(&self) -> Result<usize> {
        let d = self.dim()?;
        if d < 0 {
            return Err(Error::Precondition("empty variety".into()));
        }
        Ok(self.n - d as usize)
    }

    pub fn is_hypersurface(&self) -> bool {
        self.generators().len() == 1
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        self.generators().iter().all(|g| g.eval(x).is_zero())
    }

    pub fn jacobian_at(&self, x: &[Scalar]) -> DenseMatrix {
        let rows: Vec<Vec<Scalar>> = self
            .generators()
            .iter()
            .map(|g| g.gradient().iter().map(|d| d.eval(x)).collect())
            .collect();
        DenseMatrix::from_rows_with_cols(self.field(), self.n + 1, rows).unwrap()
    }

    /// Smoothness at `x` and the projective dimension of the Zariski tangent space.
    pub fn is_smooth_point(&self, x: &[Scalar]) -> Result<(bool, usize)> {
        if x.len() != self.n + 1 || x.iter().all(Scalar::is_zero) {
            return Err(Error::ShapeMismatch("not a projective point".into()));
        }
        if !self.contains_point(x) {
            return Err(Error::NotOnVariety);
        }
        let r = self.jacobian_at(x).rank();
        Ok((r == self.codim()?, self.n - r))
    }

    /// Embedded tangent space `𝕋_{X,x}`.
    pub fn embedded_tangent_space(&self, x: &[Scalar]) -> Result<SubspaceRep> {
        let (smooth, _) = self.is_smooth_point(x)?;
        if !smooth {
            return Err(Error::SingularPoint);
        }
        let k = self.jacobian_at(x).kernel();
        Ok(SubspaceRep::span(self.field(), self.n, &k))
    }

    /// Linear forms vanishing on `𝕋_{X,x}` (rows of the Jacobian's row space).
    pub fn conormal_forms(&self, x: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.jacobian_at(x).rank_kernel().row_space
    }

    /// A verified smooth point, deterministic in the generator state.
    pub fn sample_smooth_point(&self, rng: &mut impl Rng) -> Result<Vec<Scalar>> {
        let field = self.field();
        for _ in 0..SAMPLE_RETRIES {
            let cand = match &self.parametrization {
                Some(p) => {
                    let t = random_vector(field, p.ring.nvars(), rng);
                    Some(p.eval(&t))
                }
                None => self.slice_point(rng)?,
            };
            let Some(x) = cand else { continue };
            if x.iter().all(Scalar::is_zero) {
                continue;
            }
            if let Ok((true, _)) = self.is_smooth_point(&x) {
                return Ok(x);
            }
        }
        Err(Error::NoPointFound)
    }

    /// Intersects `X` with a random linear space of complementary dimension.
    fn slice_point(&self, rng: &mut impl Rng) -> Result<Option<Vec<Scalar>>> {
        let field = self.field();
        let c = self.codim()?;
        // x = b_0 + Σ u_i b_i, i = 1..c
        let base: Vec<Vec<Scalar>> = (0..=c)
            .map(|_| random_vector(field, self.n + 1, rng))
            .collect();
        let u = Ring::with_prefix("u", c, field);
        let images: Vec<MultiPoly> = (0..=self.n)
            .map(|j| {
                let mut acc = u.constant(base[0][j].clone());
                for i in 1..=c {
                    acc = acc.add(&u.var(i - 1).scale(&base[i][j]));
                }
                acc
            })
            .collect();
        let eqs: Vec<MultiPoly> = self
            .generators()
            .iter()
            .map(|g| g.compose(&u, &images))
            .filter(|g| !g.is_zero())
            .collect();
        if eqs.is_empty() {
            return Ok(Some(base[0].clone()));
        }
        let sols = solve(&eqs, rng)?;
        if sols.points.is_empty() {
            return Ok(None);
        }
        let pick = &sols.points[rng.random_range(0..sols.points.len())];
        let x: Vec<Scalar> = (0..=self.n)
            .map(|j| {
                let mut acc = base[0][j].clone();
                for i in 1..=c {
                    acc = &acc + &(&pick[i - 1] * &base[i][j]);
                }
                acc
            })
            .collect();
        Ok(Some(x))
    }

    /// A smooth point together with a seeded hyperplane containing its tangent space.
    pub fn conormal_witness_sample(&self, rng: &mut impl Rng) -> Result<ConormalWitness> {
        let x = self.sample_smooth_point(rng)?;
        self.witness_at(&x, rng)
    }

    /// Seeded tangent hyperplane at a given smooth point.
    pub fn witness_at(&self, x: &[Scalar], rng: &mut impl Rng) -> Result<ConormalWitness> {
        let field = self.field();
        let (smooth, _) = self.is_smooth_point(x)?;
        if !smooth {
            return Err(Error::SingularPoint);
        }
        let forms = self.conormal_forms(x);
        loop {
            let coeffs: Vec<Scalar> = if forms.len() == 1 {
                vec![field.one()]
            } else {
                random_vector(field, forms.len(), rng)
            };
            let mut h = vec![field.zero(); self.n + 1];
            for (c, f) in coeffs.iter().zip(&forms) {
                for j in 0..=self.n {
                    h[j] = &h[j] + &(c * &f[j]);
                }
            }
            if h.iter().any(|s| !s.is_zero()) {
                return ConormalWitness::new(x.to_vec(), h);
            }
        }
    }

    /// Whether `(x, h)` is a witness: `x` smooth on `X` and `𝕋_{X,x} ⊆ Z(h)`.
    pub fn is_witness(&self, x: &[Scalar], h: &[Scalar]) -> bool {
        let Ok(t) = self.embedded_tangent_space(x) else {
            return false;
        };
        let hs = match SubspaceRep::hyperplane(h) {
            Ok(s) => s,
            Err(_) => return false,
        };
        hs.contains(&t)
    }
}

/// A smooth point `x` and a hyperplane `H = Z(h)` containing `𝕋_{X,x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConormalWitness {
    pub x: Vec<Scalar>,
    pub h: Vec<Scalar>,
    pub point: SubspaceRep,
    pub hyperplane: SubspaceRep,
}

impl ConormalWitness {
    pub fn new(x: Vec<Scalar>, h: Vec<Scalar>) -> Result<Self> {
        let point = SubspaceRep::point(&x)?;
        let hyperplane = SubspaceRep::hyperplane(&h)?;
        Ok(ConormalWitness {
            x,
            h,
            point,
            hyperplane,
        })
    }

    /// The swapped witness `(H^∨, x^∨)` for the dual variety.
    pub fn swapped(&self) -> Result<ConormalWitness> {
        ConormalWitness::new(self.h.clone(), self.x.clone())
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion.
pub(crate) fn poly_det(m: &[Vec<MultiPoly>], ring: &Arc<Ring>) -> MultiPoly {
    let k = m.len();
    if k == 0 {
        return ring.one();
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = ring.zero();
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let t = m[0][j].mul(&poly_det(&minor, ring));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// `X^∨` by eliminating `(x, λ, s)` from the Lagrange system.
///
/// Works for any presentation whose Jacobian has rank `codim X` at general
/// points; when `codim X ≥ 2` the locus of lower rank is saturated away with a
/// random combination of maximal minors. The result lives in the same
/// coordinate ring (dual coordinates are positional).
pub fn dual_variety_ideal(v: &ProjVariety, rng: &mut impl Rng) -> Result<ProjVariety> {
    if let Some(p) = v.parametrization() {
        return dual_from_parametrization(v, p, rng);
    }
    let field = v.field();
    let n1 = v.n + 1;
    let gens = v.generators();
    let g = gens.len();
    let r = v.codim()?;
    if g == 0 {
        return Err(Error::UnsupportedPresentation(
            "the whole space has no dual".into(),
        ));
    }
    let mut names: Vec<String> = (0..n1).map(|i| format!("x{i}")).collect();
    names.extend((0..g).map(|j| format!("l{j}")));
    names.push("s".into());
    if r >= 2 {
        names.push("s2".into());
    }
    names.extend((0..n1).map(|i| format!("y{i}")));
    let ring = Ring::new(names, field, MonomialOrder::DegRevLex);
    let xs: Vec<MultiPoly> = (0..n1).map(|i| ring.var(i)).collect();
    let ls: Vec<MultiPoly> = (0..g).map(|j| ring.var(n1 + j)).collect();
    let s = ring.var(n1 + g);
    let yoff = n1 + g + if r >= 2 { 2 } else { 1 };
    let ys: Vec<MultiPoly> = (0..n1).map(|i| ring.var(yoff + i)).collect();
    let xmap: Vec<usize> = (0..n1).collect();
    let fs: Vec<MultiPoly> = gens.iter().map(|f| f.remap(&ring, &xmap)).collect();
    let grads: Vec<Vec<MultiPoly>> = fs
        .iter()
        .map(|f| (0..n1).map(|i| f.derivative(i)).collect())
        .collect();

    let mut eqs: Vec<MultiPoly> = fs.clone();
    for i in 0..n1 {
        let mut rhs = ring.zero();
        for j in 0..g {
            rhs = rhs.add(&ls[j].mul(&grads[j][i]));
        }
        eqs.push(ys[i].sub(&rhs));
    }
    eqs.push(linear_form(&ring, &xs, &random_vector_nonzero(field, n1, rng)).sub(&ring.one()));
    let cy = linear_form(&ring, &ys, &random_vector_nonzero(field, n1, rng));
    eqs.push(s.mul(&cy).sub(&ring.one()));
    if r >= 2 {
        // random combination of r×r minors via det(R·J·C)
        let rmat: Vec<Vec<Scalar>> = (0..r).map(|_| random_vector(field, g, rng)).collect();
        let cmat: Vec<Vec<Scalar>> = (0..r).map(|_| random_vector(field, n1, rng)).collect();
        let small: Vec<Vec<MultiPoly>> = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| {
                        let mut acc = ring.zero();
                        for j in 0..g {
                            for i in 0..n1 {
                                let c = &rmat[a][j] * &cmat[b][i];
                                if !c.is_zero() {
                                    acc = acc.add(&grads[j][i].scale(&c));
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let det = poly_det(&small, &ring);
        eqs.push(ring.var(n1 + g + 1).mul(&det).sub(&ring.one()));
    }
    let ideal = Ideal::new(&ring, eqs)?;
    let ynames: Vec<String> = (0..n1).map(|i| format!("y{i}")).collect();
    let keep: Vec<&str> = ynames.iter().map(String::as_str).collect();
    let elim = eliminate(&ideal, &keep)?;
    let target = v.ring().clone();
    let map: Vec<usize> = (0..n1).collect();
    let out: Vec<MultiPoly> = elim
        .generators()
        .iter()
        .map(|p| p.remap(&target, &map))
        .collect();
    ProjVariety::new(Ideal::new(&target, out)?, None)
}

/// `X^∨` from a parametrization: hyperplanes `y` with `y·∂c/∂t_j = 0` for all
/// `j`, on the chart `a·t = 1`, with the rank drop of `∂c/∂t` saturated away.
fn dual_from_parametrization(
    v: &ProjVariety,
    p: &Parametrization,
    rng: &mut impl Rng,
) -> Result<ProjVariety> {
    let field = v.field();
    let n1 = v.n + 1;
    let d = p.ring.nvars();
    let mut names: Vec<String> = (0..d).map(|j| format!("t{j}")).collect();
    names.push("s".into());
    names.extend((0..n1).map(|i| format!("y{i}")));
    let ring = Ring::new(names, field, MonomialOrder::DegRevLex);
    let tmap: Vec<usize> = (0..d).collect();
    let cs: Vec<MultiPoly> = p.coords.iter().map(|c| c.remap(&ring, &tmap)).collect();
    let ts: Vec<MultiPoly> = (0..d).map(|j| ring.var(j)).collect();
    let ys: Vec<MultiPoly> = (0..n1).map(|i| ring.var(d + 1 + i)).collect();
    // jac[i][j] = ∂c_i/∂t_j
    let jac: Vec<Vec<MultiPoly>> = cs
        .iter()
        .map(|c| (0..d).map(|j| c.derivative(j)).collect())
        .collect();
    let mut eqs = Vec::new();
    for j in 0..d {
        let mut acc = ring.zero();
        for i in 0..n1 {
            acc = acc.add(&ys[i].mul(&jac[i][j]));
        }
        eqs.push(acc);
    }
    eqs.push(linear_form(&ring, &ts, &random_vector_nonzero(field, d, rng)).sub(&ring.one()));
    let cmat: Vec<Vec<Scalar>> = (0..d).map(|_| random_vector(field, n1, rng)).collect();
    let small: Vec<Vec<MultiPoly>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|j| {
                    let mut acc = ring.zero();
                    for i in 0..n1 {
                        acc = acc.add(&jac[i][j].scale(&cmat[a][i]));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let det = poly_det(&small, &ring);
    eqs.push(ring.var(d).mul(&det).sub(&ring.one()));
    let ideal = Ideal::new(&ring, eqs)?;
    let ynames: Vec<String> = (0..n1).map(|i| format!("y{i}")).collect();
    let keep: Vec<&str> = ynames.iter().map(String::as_str).collect();
    let elim = eliminate(&ideal, &keep)?;
    let target = v.ring().clone();
    let map: Vec<usize> = (0..n1).collect();
    let out: Vec<MultiPoly> = elim
        .generators()
        .iter()
        .map(|p| p.remap(&target, &map))
        .collect();
    ProjVariety::new(Ideal::new(&target, out)?, None)
}

pub(crate) fn linear_form(ring: &Arc<Ring>, vars: &[MultiPoly], c: &[Scalar]) -> MultiPoly {
    let mut acc = ring.zero();
    for (v, s) in vars.iter().zip(c) {
        acc = acc.add(&v.scale(s));
    }
    acc
}

pub(crate) fn random_vector_nonzero(field: Field, len: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..len).map(|_| random_nonzero(field, rng)).collect()
}

/// A random point of `P^n` with nonzero coordinates.
pub fn random_point(field: Field, n: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    loop {
        let v = random_vector(field, n + 1, rng);
        if v.iter().any(|s| !s.is_zero()) {
            return v;
        }
    }
}
