//! Isotropic curves and strongly isotropic families: osculating spaces of
//! polynomial curves, the shifts `Σ⁻`/`Σ⁺`, dual curves and the α/β
//! classification of strongly isotropic families.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::matrix::DenseMatrix;
use crate::exact::univariate::UniPoly;
use crate::grassmann::{
    adapted_basis, pluecker_embed, stiefel_differential, Direction, HomSpace, SubspaceRep,
};
use crate::isoclass::{alpha_beta_type, is_strong, AlphaBeta};
use crate::rng::random_vector;

/// A polynomial curve `t ↦ (c_0(t) : … : c_n(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCurve {
    field: Field,
    coords: Vec<UniPoly>,
}

impl ParamCurve {
    pub fn new(coords: Vec<UniPoly>) -> Result<Self> {
        let field = coords
            .first()
            .map(UniPoly::field)
            .ok_or_else(|| Error::Precondition("curve needs at least one coordinate".into()))?;
        if coords.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch(
                "curve coordinates over different fields".into(),
            ));
        }
        if coords.iter().all(UniPoly::is_zero) {
            return Err(Error::Precondition("curve is identically zero".into()));
        }
        Ok(ParamCurve { field, coords })
    }

    /// `(1, t, …, t^n)`.
    pub fn rational_normal(n: usize, field: Field) -> Self {
        let coords = (0..=n)
            .map(|i| {
                let mut c = vec![field.zero(); i + 1];
                c[i] = field.one();
                UniPoly::new(field, c)
            })
            .collect();
        ParamCurve { field, coords }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[UniPoly] {
        &self.coords
    }

    pub fn eval(&self, t: &Scalar) -> Vec<Scalar> {
        self.coords.iter().map(|c| c.eval(t)).collect()
    }

    pub fn derivative(&self) -> ParamCurve {
        ParamCurve {
            field: self.field,
            coords: self.coords.iter().map(UniPoly::derivative).collect(),
        }
    }

    /// Rows `c(t), c'(t), …, c^{(k)}(t)`.
    pub fn derivative_rows(&self, t: &Scalar, k: usize) -> Vec<Vec<Scalar>> {
        let mut out = Vec::with_capacity(k + 1);
        let mut cur = self.clone();
        for _ in 0..=k {
            out.push(cur.eval(t));
            cur = cur.derivative();
        }
        out
    }

    fn coefficient_rows(&self) -> Vec<Vec<Scalar>> {
        let deg = self
            .coords
            .iter()
            .filter_map(UniPoly::degree)
            .max()
            .unwrap_or(0);
        (0..=deg)
            .map(|d| {
                self.coords
                    .iter()
                    .map(|c| {
                        c.coeffs()
                            .get(d)
                            .cloned()
                            .unwrap_or_else(|| self.field.zero())
                    })
                    .collect()
            })
            .collect()
    }

    /// Projective dimension of the linear span of the curve.
    pub fn span_dim(&self) -> usize {
        crate::exact::matrix::span_dim(self.field, self.n() + 1, &self.coefficient_rows()) - 1
    }

    /// The curve in coordinates of its span: `c = c̃ · B` with `B` of full row rank.
    /// A nondegenerate curve keeps its coordinates (`B = I`).
    pub fn restrict_to_span(&self) -> (ParamCurve, DenseMatrix) {
        let n1 = self.n() + 1;
        let m = self.span_dim();
        if m + 1 == n1 {
            return (self.clone(), DenseMatrix::identity(self.field, n1));
        }
        let rows = crate::exact::matrix::span_rref(self.field, n1, &self.coefficient_rows());
        let b = DenseMatrix::from_rows_with_cols(self.field, n1, rows).unwrap();
        // pivots of the RREF basis read off the span coordinates
        let (_, pivots) = b.rref();
        let coords = pivots.iter().map(|&p| self.coords[p].clone()).collect();
        (
            ParamCurve {
                field: self.field,
                coords,
            },
            b,
        )
    }
}

/// The osculating `k`-space at `t` with its neighbours in the flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OscSample {
    pub t: Scalar,
    pub k: usize,
    pub l: SubspaceRep,
    pub prev: Option<SubspaceRep>,
    pub next: Option<SubspaceRep>,
}

fn rows_rank(field: Field, rows: &[Vec<Scalar>]) -> usize {
    crate::exact::matrix::span_dim(field, rows[0].len(), rows)
}

/// Row space of `(c(t), …, c^{(k)}(t))`.
pub fn osculating_space(c: &ParamCurve, t: &Scalar, k: usize) -> Result<OscSample> {
    let field = c.field();
    let m = c.span_dim();
    if k > m {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds the span dimension {m}"
        )));
    }
    let rows = c.derivative_rows(t, k + 1);
    if rows_rank(field, &rows[..=k]) != k + 1 {
        return Err(Error::Stationary);
    }
    let embed =
        |r: &[Vec<Scalar>]| pluecker_embed(&DenseMatrix::from_rows(field, r.to_vec()).unwrap());
    let l = embed(&rows[..=k])?;
    let prev = if k >= 1 {
        Some(embed(&rows[..k])?)
    } else {
        None
    };
    let next = if k < m && rows_rank(field, &rows) == k + 2 {
        Some(embed(&rows)?)
    } else {
        None
    };
    Ok(OscSample {
        t: t.clone(),
        k,
        l,
        prev,
        next,
    })
}

/// Tangent vector of `Osc_k(C)` at `t`: `c^{(i)} ↦ c^{(i+1)} + ⟨L_k⟩`.
pub fn osc_tangent_hom(
    c: &ParamCurve,
    t: &Scalar,
    k: usize,
) -> Result<crate::grassmann::HomElement> {
    let field = c.field();
    if k + 1 > c.span_dim() {
        return Err(Error::Precondition(
            "the next osculating space must exist".into(),
        ));
    }
    let rows = c.derivative_rows(t, k + 1);
    if rows_rank(field, &rows) != k + 2 {
        return Err(Error::Stationary);
    }
    let l = pluecker_embed(&DenseMatrix::from_rows(field, rows[..=k].to_vec())?)?;
    let basis = adapted_basis(&l);
    stiefel_differential(&basis, &DenseMatrix::from_rows(field, rows[1..].to_vec())?)
}

/// A curve in a Grassmannian given by polynomial basis rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrCurve {
    pub rows: Vec<ParamCurve>,
}

impl GrCurve {
    /// `Osc_k(C)` with rows `c, c', …, c^{(k)}`.
    pub fn osculating(c: &ParamCurve, k: usize) -> Self {
        let mut rows = Vec::with_capacity(k + 1);
        let mut cur = c.clone();
        for _ in 0..=k {
            rows.push(cur.clone());
            cur = cur.derivative();
        }
        GrCurve { rows }
    }

    fn field(&self) -> Field {
        self.rows[0].field()
    }

    pub fn at(&self, t: &Scalar) -> Result<SubspaceRep> {
        let rows: Vec<Vec<Scalar>> = self.rows.iter().map(|r| r.eval(t)).collect();
        pluecker_embed(&DenseMatrix::from_rows(self.field(), rows)?).map_err(|_| Error::Stationary)
    }

    /// Tangent line of the curve at `t`.
    pub fn tangent(&self, t: &Scalar) -> Result<HomSpace> {
        let l = self.at(t)?;
        let basis = adapted_basis(&l);
        let vel: Vec<Vec<Scalar>> = self.rows.iter().map(|r| r.derivative().eval(t)).collect();
        let h = stiefel_differential(&basis, &DenseMatrix::from_rows(self.field(), vel)?)?;
        HomSpace::span(Direction::Tangent, &basis, &[h])
    }
}

/// `π_P^{-1}` of a curve given in coordinates of `K^{n+1}/⟨P⟩`: the family
/// `t ↦ ⟨P⟩ + Osc_k(C)(t)`, lifted through the complement columns of `P`.
pub fn cone_family(p: &SubspaceRep, quotient_curve: &ParamCurve, k: usize) -> Result<GrCurve> {
    let field = p.field();
    let basis = adapted_basis(p);
    if quotient_curve.n() + 1 != basis.q() {
        return Err(Error::ShapeMismatch(format!(
            "quotient curve must have {} coordinates",
            basis.q()
        )));
    }
    let n1 = p.n() + 1;
    let lift = |c: &ParamCurve| -> ParamCurve {
        let mut coords = vec![UniPoly::zero(field); n1];
        for (j, &col) in basis.complement_columns().iter().enumerate() {
            coords[col] = c.coords()[j].clone();
        }
        ParamCurve { field, coords }
    };
    let mut rows: Vec<ParamCurve> = p
        .basis_rows()
        .into_iter()
        .map(|r| ParamCurve {
            field,
            coords: r.into_iter().map(UniPoly::constant).collect(),
        })
        .collect();
    rows.extend(GrCurve::osculating(quotient_curve, k).rows.iter().map(lift));
    Ok(GrCurve { rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    /// `L⁻`: the kernel of the tangent hom.
    Minus,
    /// `L⁺`: the preimage of the image of the tangent hom.
    Plus,
}

/// Pointwise `Σ⁻` or `Σ⁺` from one-dimensional rank-one tangent spaces.
pub fn sigma_shift(samples: &[HomSpace], dir: Shift) -> Result<Vec<SubspaceRep>> {
    samples
        .iter()
        .map(|s| {
            if s.dim() != 1 || s.elements()[0].rank() != 1 {
                return Err(Error::NotIsotropic(format!(
                    "tangent space of dimension {} is not a rank-one line",
                    s.dim()
                )));
            }
            let h = &s.elements()[0];
            Ok(match dir {
                Shift::Minus => h.kernel_subspace(),
                Shift::Plus => h.image_subspace(),
            })
        })
        .collect()
}

/// Dual curve `Osc_{m−1}` of a curve spanning `P^m`, in the dual of its span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCurve {
    pub curve: ParamCurve,
    /// Basis of the span of the original curve (identity when nondegenerate).
    pub span: DenseMatrix,
}

fn uni_det(m: &[Vec<UniPoly>], field: Field) -> UniPoly {
    match m.len() {
        0 => UniPoly::constant(field.one()),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = UniPoly::zero(field);
            for j in 0..m.len() {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<UniPoly>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&uni_det(&minor, field));
                acc = if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}

/// Hyperplanes `t ↦ Osc_{m−1}(t)` as signed maximal minors of
/// `(c, c', …, c^{(m−1)})`, divided by their common factor.
pub fn dual_curve(c: &ParamCurve) -> Result<DualCurve> {
    let field = c.field();
    let (inner, span) = c.restrict_to_span();
    let m = inner.n();
    if m == 0 {
        return Err(Error::Precondition("a point has no dual curve".into()));
    }
    let rows = GrCurve::osculating(&inner, m - 1).rows;
    let mut comps = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let minor: Vec<Vec<UniPoly>> = rows
            .iter()
            .map(|r| {
                r.coords()
                    .iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let d = uni_det(&minor, field);
        comps.push(if j % 2 == 0 {
            d
        } else {
            d.scale(&-field.one())
        });
    }
    let g = comps.iter().fold(UniPoly::zero(field), |acc, p| acc.gcd(p));
    if g.is_zero() {
        return Err(Error::Stationary);
    }
    let comps: Vec<UniPoly> = comps.iter().map(|p| p.div_rem(&g).0).collect();
    Ok(DualCurve {
        curve: ParamCurve::new(comps)?,
        span,
    })
}

/// Classification of a family of tangent spaces of a strongly isotropic variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyClass {
    /// Every member contains `P_1`.
    Alpha(SubspaceRep),
    /// Every member lies in `P_2`.
    Beta(SubspaceRep),
    Curve,
    Inconclusive,
}

/// Recovers the α-variety or β-variety containing sampled members of a
/// strongly isotropic family from their tangent spaces.
pub fn classify_strongly_isotropic_family(samples: &[HomSpace]) -> Result<FamilyClass> {
    if samples.is_empty() {
        return Err(Error::Precondition("no samples".into()));
    }
    for s in samples {
        if s.direction() != Direction::Tangent {
            return Err(Error::Precondition("expected tangent spaces".into()));
        }
        if !is_strong(s) {
            return Err(Error::NotIsotropic(
                "tangent space contains a rank-two element".into(),
            ));
        }
    }
    let dims: Vec<usize> = samples.iter().map(HomSpace::dim).collect();
    if dims.iter().all(|&d| d == 1) {
        return Ok(FamilyClass::Curve);
    }
    if dims.iter().any(|&d| d < 2) {
        return Ok(FamilyClass::Inconclusive);
    }
    let types = samples
        .iter()
        .map(alpha_beta_type)
        .collect::<Result<Vec<_>>>()?;
    match &types[0] {
        AlphaBeta::Alpha(k0) => {
            if types
                .iter()
                .all(|t| matches!(t, AlphaBeta::Alpha(k) if k.same_subspace(k0)))
            {
                return Ok(FamilyClass::Alpha(k0.clone()));
            }
        }
        AlphaBeta::Beta(i0) => {
            if types
                .iter()
                .all(|t| matches!(t, AlphaBeta::Beta(i) if i.same_subspace(i0)))
            {
                return Ok(FamilyClass::Beta(i0.clone()));
            }
        }
    }
    Err(Error::InvariantViolation(
        "samples do not share one α- or β-variety".into(),
    ))
}

/// A seeded member `L ⊇ P_1` of `α(P_1)` with its tangent space, obtained by
/// differentiating `u ↦ span(P_1, u)`.
pub fn alpha_variety_sample(
    p1: &SubspaceRep,
    rng: &mut impl Rng,
) -> Result<(SubspaceRep, HomSpace)> {
    let field = p1.field();
    let n1 = p1.n() + 1;
    let mut rows = p1.basis_rows();
    loop {
        let u = random_vector(field, n1, rng);
        if !p1.contains_vector(&u) {
            rows.push(u);
            break;
        }
    }
    let l = pluecker_embed(&DenseMatrix::from_rows(field, rows.clone())?)?;
    let basis = adapted_basis(&l);
    let k = rows.len();
    let homs = (0..n1)
        .map(|i| {
            let mut vel = DenseMatrix::zeros(field, k, n1);
            vel.set(k - 1, i, field.one());
            stiefel_differential(&basis, &vel)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        l.clone(),
        HomSpace::span(Direction::Tangent, &basis, &homs)?,
    ))
}

/// A seeded `ℓ`-plane inside `P_2` with the tangent space of `β(P_2)`,
/// obtained by moving each basis row inside `P_2`.
pub fn beta_variety_sample(
    p2: &SubspaceRep,
    ell: usize,
    rng: &mut impl Rng,
) -> Result<(SubspaceRep, HomSpace)> {
    let field = p2.field();
    let n1 = p2.n() + 1;
    let prow = p2.basis_rows();
    if ell + 1 > prow.len() {
        return Err(Error::Precondition("ℓ-plane does not fit in P_2".into()));
    }
    let combo = |rng: &mut dyn FnMut() -> Vec<Scalar>| -> Vec<Scalar> {
        let c = rng();
        let mut v = vec![field.zero(); n1];
        for (ci, r) in c.iter().zip(&prow) {
            for j in 0..n1 {
                v[j] = &v[j] + &(ci * &r[j]);
            }
        }
        v
    };
    let mut draw = || random_vector(field, prow.len(), rng);
    let l = loop {
        let rows: Vec<Vec<Scalar>> = (0..=ell).map(|_| combo(&mut draw)).collect();
        if let Ok(l) = pluecker_embed(&DenseMatrix::from_rows(field, rows)?) {
            break l;
        }
    };
    let basis = adapted_basis(&l);
    let mut homs = Vec::new();
    for r in 0..=ell {
        for b in &prow {
            let mut vel = DenseMatrix::zeros(field, ell + 1, n1);
            for j in 0..n1 {
                vel.set(r, j, b[j].clone());
            }
            homs.push(stiefel_differential(&basis, &vel)?);
        }
    }
    Ok((l, HomSpace::span(Direction::Tangent, &basis, &homs)?))
}
