//! Higher associated varieties `𝒢_ℓ(X)`: witness-based samples, conormal
//! spaces, tangent pushforwards, Chow/Hurwitz forms and polar degrees.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::groebner::{eliminate, Ideal};
use crate::exact::hilbert::hilbert_dim_degree;
use crate::exact::matrix::{self, DenseMatrix};
use crate::exact::poly::{MonomialOrder, MultiPoly, Ring};
use crate::grassmann::{
    adapted_basis, column_sets, incidence_hyperplane_equations, incidence_point_equations,
    pluecker_embed, pluecker_relations, pluecker_var_name, stiefel_differential, Direction,
    HomElement, HomSpace, SubspaceRep,
};
use crate::projvar::{linear_form, random_vector_nonzero, ConormalWitness, ProjVariety};
use crate::rng::random_vector;

/// A point `L ∈ 𝒢_ℓ(X)` with a witness `x ∈ L ⊆ H ⊇ 𝕋_{X,x}`.
///
/// The basis of `L` starts with `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedSample {
    pub ell: usize,
    pub l: SubspaceRep,
    pub witness: ConormalWitness,
}

/// Which part of the range `0..n` an `ℓ` falls into for a given `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssociatedRange {
    /// `ℓ < codim X − 1`: conormal spaces share the image `⟨x⟩`.
    Beta,
    /// `codim X − 1 ≤ ℓ ≤ dim X^∨`: `𝒢_ℓ(X)` is a hypersurface.
    Hypersurface,
    /// `ℓ > dim X^∨`: conormal spaces share the kernel `H/L`.
    Alpha,
}

impl AssociatedRange {
    pub fn classify(ell: usize, codim: usize, dual_dim: usize) -> Self {
        if ell + 1 < codim {
            AssociatedRange::Beta
        } else if ell <= dual_dim {
            AssociatedRange::Hypersurface
        } else {
            AssociatedRange::Alpha
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AssociatedRange::Beta => "beta",
            AssociatedRange::Hypersurface => "hypersurface",
            AssociatedRange::Alpha => "alpha",
        }
    }
}

/// Samples `L = span(x, v_1, …, v_ℓ)` with random `v_i ∈ H`.
pub fn sample_associated(
    v: &ProjVariety,
    ell: usize,
    rng: &mut impl Rng,
) -> Result<AssociatedSample> {
    if ell >= v.n() {
        return Err(Error::OutOfScope(format!(
            "ell must be below n = {}",
            v.n()
        )));
    }
    let w = v.conormal_witness_sample(rng)?;
    sample_associated_at(v, ell, w, rng)
}

/// Samples `L` for a given witness.
pub fn sample_associated_at(
    v: &ProjVariety,
    ell: usize,
    witness: ConormalWitness,
    rng: &mut impl Rng,
) -> Result<AssociatedSample> {
    let field = v.field();
    let hrows = witness.hyperplane.basis_rows();
    for _ in 0..100 {
        let mut rows = vec![witness.x.clone()];
        for _ in 0..ell {
            let c = random_vector(field, hrows.len(), rng);
            let mut u = vec![field.zero(); v.n() + 1];
            for (ci, r) in c.iter().zip(&hrows) {
                for j in 0..u.len() {
                    u[j] = &u[j] + &(ci * &r[j]);
                }
            }
            rows.push(u);
        }
        let m = DenseMatrix::from_rows(field, rows)?;
        if m.rank() == ell + 1 {
            let l = pluecker_embed(&m)?;
            return Ok(AssociatedSample { ell, l, witness });
        }
    }
    Err(Error::NoPointFound)
}

impl AssociatedSample {
    /// Checks `x ∈ L ⊆ H` and that `(x, H)` is a witness for `v`.
    pub fn is_valid_for(&self, v: &ProjVariety) -> bool {
        self.l.ell() == self.ell as isize
            && self.l.contains(&self.witness.point)
            && self.witness.hyperplane.contains(&self.l)
            && v.is_witness(&self.witness.x, &self.witness.h)
    }

    /// The dual sample `(L^⊥, (H^∨, x^∨))` at level `n − ℓ − 1`.
    pub fn perp(&self) -> Result<AssociatedSample> {
        let w = self.witness.swapped()?;
        let field = self.l.field();
        // put the new witness point first in the basis
        let perp = crate::grassmann::perp_dual(&self.l);
        let mut rows = vec![w.x.clone()];
        for r in perp.basis_rows() {
            rows.push(r);
            if matrix::span_dim(field, self.l.n() + 1, &rows) < rows.len() {
                rows.pop();
            }
        }
        let m = DenseMatrix::from_rows(field, rows)?;
        Ok(AssociatedSample {
            ell: self.l.n() - self.ell - 1,
            l: pluecker_embed(&m)?,
            witness: w,
        })
    }
}

/// Multipliers `μ` with `h = Σ μ_k ∇f_k(x)`.
fn multipliers(v: &ProjVariety, x: &[Scalar], h: &[Scalar]) -> Result<Vec<Scalar>> {
    v.jacobian_at(x)
        .solve_left(h)
        .ok_or_else(|| Error::Precondition("hyperplane is not tangent at the point".into()))
}

fn hessian_combination(v: &ProjVariety, x: &[Scalar], mu: &[Scalar]) -> DenseMatrix {
    let n1 = v.n() + 1;
    let field = v.field();
    let mut m = DenseMatrix::zeros(field, n1, n1);
    for (f, c) in v.generators().iter().zip(mu) {
        if c.is_zero() {
            continue;
        }
        for i in 0..n1 {
            let di = f.derivative(i);
            for j in 0..n1 {
                let val = &di.derivative(j).eval(x) * c;
                let cur = m.get(i, j).clone();
                m.set(i, j, &cur + &val);
            }
        }
    }
    m
}

/// Tangent space at `x` of the contact locus `{x' : 𝕋_{X,x'} ⊆ H}`, as an
/// affine-cone subspace.
pub fn contact_span(v: &ProjVariety, x: &[Scalar], h: &[Scalar]) -> Result<SubspaceRep> {
    let field = v.field();
    let n1 = v.n() + 1;
    let mu = multipliers(v, x, h)?;
    let jac = v.jacobian_at(x);
    let hess = hessian_combination(v, x, &mu);
    // unknowns (w, a): J w = 0 and Hess·w − Jᵀ a = 0
    let g = jac.rows();
    let mut rows = Vec::new();
    for r in 0..g {
        let mut row = jac.row(r).to_vec();
        row.extend(vec![field.zero(); g]);
        rows.push(row);
    }
    for i in 0..n1 {
        let mut row = hess.row(i).to_vec();
        for k in 0..g {
            row.push(-jac.get(k, i));
        }
        rows.push(row);
    }
    let sys = DenseMatrix::from_rows(field, rows)?;
    let ws: Vec<Vec<Scalar>> = sys.kernel().into_iter().map(|k| k[..n1].to_vec()).collect();
    Ok(SubspaceRep::span(field, v.n(), &ws))
}

/// `dim X^∨` read off the contact locus at a general witness.
pub fn dual_dimension_at(v: &ProjVariety, w: &ConormalWitness) -> Result<usize> {
    let c = contact_span(v, &w.x, &w.h)?;
    Ok(v.n() - c.dim())
}

/// Range of `ℓ` for `v`, using the witness to compute `dim X^∨`.
pub fn associated_range(
    v: &ProjVariety,
    ell: usize,
    w: &ConormalWitness,
) -> Result<AssociatedRange> {
    Ok(AssociatedRange::classify(
        ell,
        v.codim()?,
        dual_dimension_at(v, w)?,
    ))
}

/// Conormal space of `𝒢_ℓ(X)` at a sample:
/// `{v̄ ↦ (y·v) w : y ∈ Ann(𝕋_{X,x} + L), w ∈ L ∩ C}` where `C` is the contact
/// locus of the witness hyperplane. In the β range `L ∩ C = ⟨x⟩`, in the
/// hypersurface range both factors are lines, and in the α range
/// `Ann(𝕋 + L) = ⟨h⟩`.
pub fn associated_conormal(s: &AssociatedSample, v: &ProjVariety) -> Result<HomSpace> {
    let field = v.field();
    let x = &s.witness.x;
    let t = v.embedded_tangent_space(x)?;
    let tl = t.join(&s.l);
    if tl.dim() > v.n() {
        return Err(Error::Precondition(
            "L meets X transversely at the witness point".into(),
        ));
    }
    let ys = tl.annihilator_rows();
    let c = contact_span(v, x, &s.witness.h)?;
    let ws = s.l.intersect(&c).basis_rows();
    if ys.len() > 1 && ws.len() > 1 {
        return Err(Error::InvariantViolation(
            "conormal factors are both at least two-dimensional".into(),
        ));
    }
    let basis = adapted_basis(&s.l);
    let mut homs = Vec::new();
    for y in &ys {
        for w in &ws {
            homs.push(HomElement::conormal_rank_one(&basis, y, w)?);
        }
    }
    let _ = field;
    HomSpace::span(Direction::Conormal, &basis, &homs)
}

/// Tangent space of `𝒢_ℓ(X)` at a sample, pushed forward from the incidence
/// parametrization `(x, μ, v_1, …, v_ℓ)` through the Stiefel differential.
///
/// The image of the exact parameter tangent space is compared with the span of
/// `probe_count` seeded random directions; the probes must reach full rank.
pub fn associated_tangent_pushforward(
    s: &AssociatedSample,
    v: &ProjVariety,
    probe_count: usize,
    rng: &mut impl Rng,
) -> Result<HomSpace> {
    let field = v.field();
    let n1 = v.n() + 1;
    let x = &s.witness.x;
    let h = &s.witness.h;
    let rows = s.l.basis_rows();
    if rows[0] != *x {
        return Err(Error::Precondition(
            "sample basis must start with the witness point".into(),
        ));
    }
    let vs = &rows[1..];
    let ell = vs.len();
    let mu = multipliers(v, x, h)?;
    let jac = v.jacobian_at(x);
    let hess = hessian_combination(v, x, &mu);
    let g = jac.rows();
    // unknown layout: ẋ (n1) | μ̇ (g) | v̇_1 .. v̇_ℓ (n1 each)
    let width = n1 + g + ell * n1;
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for r in 0..g {
        let mut row = vec![field.zero(); width];
        for j in 0..n1 {
            row[j] = jac.get(r, j).clone();
        }
        eqs.push(row);
    }
    for (i, vi) in vs.iter().enumerate() {
        // ḣ·v_i + h·v̇_i = 0 with ḣ = Jᵀ μ̇ + Hess ẋ
        let mut row = vec![field.zero(); width];
        for j in 0..n1 {
            // coefficient of ẋ_j: Σ_a v_a Hess_{a j}
            let mut acc = field.zero();
            for a in 0..n1 {
                acc = &acc + &(&vi[a] * hess.get(a, j));
            }
            row[j] = acc;
        }
        for k in 0..g {
            row[n1 + k] = matrix::dot(jac.row(k), vi);
        }
        for j in 0..n1 {
            row[n1 + g + i * n1 + j] = h[j].clone();
        }
        eqs.push(row);
    }
    let sys = DenseMatrix::from_rows_with_cols(field, width, eqs)?;
    let kernel = sys.kernel();
    let basis = adapted_basis(&s.l);
    let push = |dir: &[Scalar]| -> Result<HomElement> {
        let mut m = vec![dir[..n1].to_vec()];
        for i in 0..ell {
            let off = n1 + g + i * n1;
            m.push(dir[off..off + n1].to_vec());
        }
        stiefel_differential(&basis, &DenseMatrix::from_rows(field, m)?)
    };
    let full: Vec<HomElement> = kernel.iter().map(|k| push(k)).collect::<Result<_>>()?;
    let full_space = HomSpace::span(Direction::Tangent, &basis, &full)?;
    let mut probes = Vec::with_capacity(probe_count);
    for _ in 0..probe_count {
        let c = random_vector(field, kernel.len(), rng);
        let mut dir = vec![field.zero(); width];
        for (ci, k) in c.iter().zip(&kernel) {
            for j in 0..width {
                dir[j] = &dir[j] + &(ci * &k[j]);
            }
        }
        probes.push(push(&dir)?);
    }
    let probe_space = HomSpace::span(Direction::Tangent, &basis, &probes)?;
    if probe_space.dim() < full_space.dim() {
        return Err(Error::ProbeBudget(format!(
            "{} probes reach dimension {} of {}",
            probe_count,
            probe_space.dim(),
            full_space.dim()
        )));
    }
    Ok(probe_space)
}

/// Degree of `Gr(ℓ, P^n)` in its Plücker embedding.
pub fn grassmannian_degree(ell: usize, n: usize, field: Field) -> Result<u64> {
    let p = pluecker_relations(ell, n, field);
    Ok(hilbert_dim_degree(&p)?.1)
}

/// Which construction to use for the incidence system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationRoute {
    /// Points of `X` through its ideal, tangency through gradients.
    Implicit,
    /// Points of `X` through its parametrization, tangency through the
    /// parametrization's partial derivatives.
    Parametric,
    /// `Parametric` when a parametrization is attached, otherwise `Implicit`.
    Auto,
}

/// Ideal of `𝒢_ℓ(X)` in the Plücker ring (contains the Plücker relations).
pub fn associated_ideal(
    v: &ProjVariety,
    ell: usize,
    route: EliminationRoute,
    rng: &mut impl Rng,
) -> Result<Ideal> {
    let n = v.n();
    if ell >= n {
        return Err(Error::OutOfScope(format!("ell must be below n = {n}")));
    }
    let codim = v.codim()?;
    let tangency = ell >= codim;
    let field = v.field();
    let n1 = n + 1;
    let sets = column_sets(n1, ell + 1);
    let pnames: Vec<String> = sets.iter().map(|s| pluecker_var_name(s)).collect();
    let route = match route {
        EliminationRoute::Auto if v.parametrization().is_some() => EliminationRoute::Parametric,
        EliminationRoute::Auto => EliminationRoute::Implicit,
        r => r,
    };
    match route {
        EliminationRoute::Implicit => {
            // tangency through `codim` random combinations of the generators;
            // extra components over Sing X have lower dimension
            let g = v.generators().len();
            let mut names: Vec<String> = (0..n1).map(|i| format!("x{i}")).collect();
            if tangency {
                names.extend((0..codim).map(|k| format!("m{k}")));
            }
            names.extend(pnames.iter().cloned());
            let ring = Ring::new(names, field, MonomialOrder::DegRevLex);
            let xs: Vec<MultiPoly> = (0..n1).map(|i| ring.var(i)).collect();
            let poff = ring.nvars() - pnames.len();
            let ps: Vec<MultiPoly> = (0..pnames.len()).map(|i| ring.var(poff + i)).collect();
            let xmap: Vec<usize> = (0..n1).collect();
            let fs: Vec<MultiPoly> = v
                .generators()
                .iter()
                .map(|f| f.remap(&ring, &xmap))
                .collect();
            let mut eqs = fs.clone();
            eqs.push(
                linear_form(&ring, &xs, &random_vector_nonzero(field, n1, rng)).sub(&ring.one()),
            );
            eqs.extend(incidence_point_equations(&xs, &ps, ell, n));
            if tangency {
                let combos: Vec<MultiPoly> = if g == codim {
                    fs.clone()
                } else {
                    (0..codim)
                        .map(|_| linear_form(&ring, &fs, &random_vector_nonzero(field, g, rng)))
                        .collect()
                };
                let hs: Vec<MultiPoly> = (0..n1)
                    .map(|i| {
                        let mut acc = ring.zero();
                        for (k, c) in combos.iter().enumerate() {
                            acc = acc.add(&ring.var(n1 + k).mul(&c.derivative(i)));
                        }
                        acc
                    })
                    .collect();
                eqs.push(
                    linear_form(&ring, &hs, &random_vector_nonzero(field, n1, rng))
                        .sub(&ring.one()),
                );
                eqs.extend(incidence_hyperplane_equations(&hs, &ps, ell, n));
            }
            finish_elimination(&ring, eqs, &pnames, ell, n, field)
        }
        EliminationRoute::Parametric => {
            let par = v
                .parametrization()
                .ok_or_else(|| Error::Precondition("no parametrization available".into()))?;
            let m = par.ring.nvars();
            let mut names: Vec<String> = (0..m).map(|i| format!("t{i}")).collect();
            if tangency {
                names.extend((0..n1).map(|i| format!("h{i}")));
            }
            names.extend(pnames.iter().cloned());
            let ring = Ring::new(names, field, MonomialOrder::DegRevLex);
            let tmap: Vec<usize> = (0..m).collect();
            let coords: Vec<MultiPoly> = par.coords.iter().map(|c| c.remap(&ring, &tmap)).collect();
            let ts: Vec<MultiPoly> = (0..m).map(|i| ring.var(i)).collect();
            let poff = ring.nvars() - pnames.len();
            let ps: Vec<MultiPoly> = (0..pnames.len()).map(|i| ring.var(poff + i)).collect();
            let mut eqs = vec![
                linear_form(&ring, &ts, &random_vector_nonzero(field, m, rng)).sub(&ring.one()),
            ];
            eqs.extend(incidence_point_equations(&coords, &ps, ell, n));
            if tangency {
                let hs: Vec<MultiPoly> = (0..n1).map(|i| ring.var(m + i)).collect();
                for j in 0..m {
                    let d: Vec<MultiPoly> = coords.iter().map(|c| c.derivative(j)).collect();
                    let mut acc = ring.zero();
                    for (hi, di) in hs.iter().zip(&d) {
                        acc = acc.add(&hi.mul(di));
                    }
                    eqs.push(acc);
                }
                eqs.push(
                    linear_form(&ring, &hs, &random_vector_nonzero(field, n1, rng))
                        .sub(&ring.one()),
                );
                eqs.extend(incidence_hyperplane_equations(&hs, &ps, ell, n));
            }
            finish_elimination(&ring, eqs, &pnames, ell, n, field)
        }
        EliminationRoute::Auto => unreachable!(),
    }
}

fn finish_elimination(
    ring: &Arc<Ring>,
    mut eqs: Vec<MultiPoly>,
    pnames: &[String],
    ell: usize,
    n: usize,
    field: Field,
) -> Result<Ideal> {
    let pl = pluecker_relations(ell, n, field);
    for r in pl.generators() {
        eqs.push(r.to_ring_by_name(ring)?);
    }
    let ideal = Ideal::new(ring, eqs)?;
    let keep: Vec<&str> = pnames.iter().map(String::as_str).collect();
    let e = eliminate(&ideal, &keep)?;
    // move into the canonical Plücker ring
    let target = pl.ring().clone();
    let gens = e
        .generators()
        .iter()
        .map(|g| g.to_ring_by_name(&target))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&target, gens)
}

/// Chow or Hurwitz form: `I = Pl + (F)` with `F` of minimal degree.
#[derive(Clone, Debug)]
pub struct ChowHurwitz {
    pub ell: usize,
    pub ideal: Ideal,
    pub form: MultiPoly,
    pub degree: u32,
    /// `I` equals the Plücker ideal plus the single form.
    pub principal: bool,
    /// `deg I / deg Gr`.
    pub hilbert_degree_ratio: Option<u64>,
}

/// Extracts the defining form of a hypersurface of the Grassmannian.
pub fn principal_form(ideal: &Ideal, ell: usize, n: usize) -> Result<ChowHurwitz> {
    let field = ideal.ring().field;
    let pl = pluecker_relations(ell, n, field);
    let gb = ideal.basis()?;
    let mut candidates: Vec<&MultiPoly> = Vec::new();
    for g in gb {
        if !pl.contains(g)? {
            candidates.push(g);
        }
    }
    let form = candidates
        .iter()
        .min_by_key(|g| g.total_degree().unwrap_or(0))
        .map(|g| pl.normal_form(g))
        .transpose()?
        .ok_or_else(|| Error::InvariantViolation("ideal equals the Plücker ideal".into()))?
        .monic();
    let sum = Ideal::new(pl.ring(), {
        let mut v = pl.generators().to_vec();
        v.push(form.clone());
        v
    })?;
    let principal = sum.contains_ideal(ideal)? && ideal.contains(&form)?;
    let (dim, deg) = hilbert_dim_degree(ideal)?;
    let (gdim, gdeg) = hilbert_dim_degree(&pl)?;
    let ratio = if dim + 1 == gdim && deg % gdeg == 0 {
        Some(deg / gdeg)
    } else {
        None
    };
    Ok(ChowHurwitz {
        ell,
        ideal: ideal.clone(),
        degree: form.total_degree().unwrap_or(0),
        form,
        principal,
        hilbert_degree_ratio: ratio,
    })
}

/// Chow (`ℓ = codim − 1`) or Hurwitz (`ℓ = codim`) form of `X`.
pub fn chow_hurwitz_ideal(
    v: &ProjVariety,
    ell: usize,
    route: EliminationRoute,
    rng: &mut impl Rng,
) -> Result<ChowHurwitz> {
    let codim = v.codim()?;
    if ell + 1 != codim && ell != codim {
        return Err(Error::OutOfScope(format!(
            "ell = {ell} is neither codim − 1 nor codim (codim = {codim})"
        )));
    }
    let ideal = associated_ideal(v, ell, route, rng)?;
    principal_form(&ideal, ell, v.n())
}

/// Polar degree `δ_ℓ(X)` together with the codimension of `𝒢_ℓ(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarDegree {
    pub ell: usize,
    pub degree: u64,
    /// `𝒢_ℓ(X)` is a hypersurface of the Grassmannian.
    pub in_range: bool,
    pub codim_in_grassmannian: i64,
}

/// `δ_ℓ(X) = deg 𝒢_ℓ(X)` when it is a hypersurface, otherwise 0.
pub fn polar_degree(
    v: &ProjVariety,
    ell: usize,
    route: EliminationRoute,
    rng: &mut impl Rng,
) -> Result<PolarDegree> {
    let ideal = associated_ideal(v, ell, route, rng)?;
    let (dim, deg) = hilbert_dim_degree(&ideal)?;
    let pl = pluecker_relations(ell, v.n(), v.field());
    let (gdim, gdeg) = hilbert_dim_degree(&pl)?;
    let codim = gdim - dim;
    let in_range = codim == 1;
    Ok(PolarDegree {
        ell,
        degree: if in_range { deg / gdeg } else { 0 },
        in_range,
        codim_in_grassmannian: codim,
    })
}
