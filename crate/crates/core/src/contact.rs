//! Lines of higher contact with a hypersurface: Taylor cones, contact-line
//! sampling, tangent spaces of `𝓛_m(X)` and the rank-one structure of their
//! conormal spaces.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::groebner::Ideal;
use crate::exact::hilbert::hilbert_dim_degree;
use crate::exact::matrix::DenseMatrix;
use crate::exact::poly::{Monomial, MonomialOrder, MultiPoly, Ring};
use crate::exact::solve::solve;
use crate::grassmann::{
    adapted_basis, pluecker_embed, stiefel_differential, trace_annihilator, AdaptedBasis,
    Direction, HomElement, HomSpace, SubspaceRep,
};
use crate::isoclass::{classify, segre_tangency_certificate, Check, ClassificationReport, Mode};
use crate::projvar::{ProjVariety, SAMPLE_RETRIES};
use crate::rng::{random_scalar, random_vector};

/// A line `L = span(p, v)` meeting `Z(f)` at the smooth point `p` with
/// multiplicity exactly `m`, with its flag `𝕋_L C_{k,p}` for `k = 2..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactConfig {
    pub f: MultiPoly,
    pub m: usize,
    pub p: Vec<Scalar>,
    pub v: Vec<Scalar>,
    pub l: SubspaceRep,
    pub flag: Vec<SubspaceRep>,
}

/// Homogeneous parts `f_0, f_1, …` of `w ↦ f(p + w)`.
pub fn taylor_parts(f: &MultiPoly, p: &[Scalar]) -> Vec<MultiPoly> {
    let ring = f.ring();
    let images: Vec<MultiPoly> = (0..ring.nvars())
        .map(|i| ring.var(i).add(&ring.constant(p[i].clone())))
        .collect();
    let shifted = f.compose(ring, &images);
    let d = f.total_degree().unwrap_or(0);
    (0..=d).map(|k| shifted.homogeneous_part(k)).collect()
}

/// Order of vanishing of `t ↦ f(p + t v)` at `t = 0`.
pub fn contact_order(f: &MultiPoly, p: &[Scalar], v: &[Scalar]) -> Option<usize> {
    taylor_parts(f, p)
        .iter()
        .position(|fk| !fk.eval(v).is_zero())
}

/// The ideal `(f_1, …, f_{m−1})` of the cone `C_{m,p}` in the coordinates of `f`.
pub fn contact_cone_ideal(f: &MultiPoly, p: &[Scalar], m: usize) -> Result<Ideal> {
    let parts = taylor_parts(f, p);
    let gens: Vec<MultiPoly> = (1..m)
        .map(|k| parts.get(k).cloned().unwrap_or_else(|| f.ring().zero()))
        .collect();
    Ideal::new(f.ring(), gens)
}

/// Codimension in `P^n` and degree of the cone `C_{m,p}`.
pub fn contact_cone_degree(f: &MultiPoly, p: &[Scalar], m: usize) -> Result<(usize, u64)> {
    let n = f.ring().nvars() - 1;
    let (dim, deg) = hilbert_dim_degree(&contact_cone_ideal(f, p, m)?)?;
    Ok(((n as i64 - dim) as usize, deg))
}

fn check_order(f: &MultiPoly, m: usize) -> Result<()> {
    let n = f.ring().nvars() - 1;
    let d = f.total_degree().unwrap_or(0) as usize;
    if m < 2 || m > n.min(d) {
        return Err(Error::Precondition(format!(
            "contact order must satisfy 2 ≤ m ≤ min(n, deg f) = {}",
            n.min(d)
        )));
    }
    Ok(())
}

/// Verifies the contact order and builds the flag of tangent spaces of the
/// Taylor cones along `L`.
pub fn taylor_cone_flag(
    f: &MultiPoly,
    p: &[Scalar],
    v: &[Scalar],
    m: usize,
) -> Result<ContactConfig> {
    check_order(f, m)?;
    let field = f.field();
    let n1 = f.ring().nvars();
    if !f.eval(p).is_zero() {
        return Err(Error::NotOnVariety);
    }
    let order = contact_order(f, p, v);
    if order != Some(m) {
        return Err(Error::ContactTooLow(format!(
            "contact order {order:?}, expected {m}"
        )));
    }
    let parts = taylor_parts(f, p);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut flag = Vec::with_capacity(m - 1);
    for k in 2..=m {
        // kernel of ∇f_1, ∇f_2(v), …, ∇f_{k−1}(v)
        let grad: Vec<Scalar> = parts[k - 1].gradient().iter().map(|g| g.eval(v)).collect();
        rows.push(grad);
        let kern = DenseMatrix::from_rows_with_cols(field, n1, rows.clone())?.kernel();
        let space = SubspaceRep::span(field, n1 - 1, &kern);
        if space.dim() != n1 - (k - 1) {
            return Err(Error::NonGeneral(format!(
                "flag step {k} has dimension {} instead of {}",
                space.dim(),
                n1 - (k - 1)
            )));
        }
        flag.push(space);
    }
    let basis = DenseMatrix::from_rows(field, vec![p.to_vec(), v.to_vec()])?;
    let l = pluecker_embed(&basis)?;
    if !flag.last().unwrap().contains(&l) {
        return Err(Error::NonGeneral(
            "line not contained in the last flag space".into(),
        ));
    }
    Ok(ContactConfig {
        f: f.clone(),
        m,
        p: p.to_vec(),
        v: v.to_vec(),
        l,
        flag,
    })
}

/// A dense homogeneous polynomial of the given degree with seeded coefficients.
pub fn random_hypersurface(n: usize, degree: u32, field: Field, rng: &mut impl Rng) -> MultiPoly {
    let ring = Ring::with_prefix("x", n + 1, field);
    let mut terms = Vec::new();
    let mut exps = vec![0u16; n + 1];
    fn rec(i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i + 1 == exps.len() {
            exps[i] = left as u16;
            out.push(exps.clone());
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u16;
            rec(i + 1, left - e, exps, out);
        }
    }
    let mut all = Vec::new();
    rec(0, degree, &mut exps, &mut all);
    for e in all {
        let c = random_scalar(field, rng);
        if !c.is_zero() {
            terms.push((Monomial(e.into_iter().collect()), c));
        }
    }
    MultiPoly::from_terms(&ring, terms)
}

/// Samples a line with contact exactly `m` at a seeded smooth point.
///
/// The direction solves `f_1 = … = f_{m−1} = 0` on a random affine slice of
/// dimension `m − 1`, so for `m = n` the system is square.
pub fn sample_contact_line(f: &MultiPoly, m: usize, rng: &mut impl Rng) -> Result<ContactConfig> {
    check_order(f, m)?;
    let field = f.field();
    let n1 = f.ring().nvars();
    let n = n1 - 1;
    let variety = ProjVariety::hypersurface(f.clone())?;
    for _ in 0..SAMPLE_RETRIES {
        let p = variety.sample_smooth_point(rng)?;
        let parts = taylor_parts(f, &p);
        // a·w = 0 with a·p ≠ 0 is transversal to the p-direction, b·w = 1 is a chart
        let mut cons: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        let a = random_vector(field, n1, rng);
        if crate::exact::matrix::dot(&a, &p).is_zero() {
            continue;
        }
        cons.push(a);
        rhs.push(field.zero());
        cons.push(random_vector(field, n1, rng));
        rhs.push(field.one());
        for _ in 0..n.saturating_sub(m) {
            cons.push(random_vector(field, n1, rng));
            rhs.push(random_scalar(field, rng));
        }
        let cm = DenseMatrix::from_rows(field, cons)?;
        let Some(w0) = cm.solve_right(&rhs) else {
            continue;
        };
        let kern = cm.kernel();
        if kern.len() != m - 1 {
            continue;
        }
        let s = Ring::with_prefix("s", m - 1, field);
        let images: Vec<MultiPoly> = (0..n1)
            .map(|j| {
                let mut acc = s.constant(w0[j].clone());
                for (i, k) in kern.iter().enumerate() {
                    acc = acc.add(&s.var(i).scale(&k[j]));
                }
                acc
            })
            .collect();
        let eqs: Vec<MultiPoly> = (1..m)
            .map(|k| parts[k].compose(&s, &images))
            .filter(|g| !g.is_zero())
            .collect();
        if eqs.len() < m - 1 {
            continue;
        }
        let sols = solve(&eqs, rng)?;
        for pt in &sols.points {
            let v: Vec<Scalar> = (0..n1)
                .map(|j| {
                    let mut acc = w0[j].clone();
                    for (i, k) in kern.iter().enumerate() {
                        acc = &acc + &(&pt[i] * &k[j]);
                    }
                    acc
                })
                .collect();
            if let Ok(cfg) = taylor_cone_flag(f, &p, &v, m) {
                return Ok(cfg);
            }
        }
    }
    Err(Error::NoRationalContactLine)
}

impl ContactConfig {
    pub fn n(&self) -> usize {
        self.p.len() - 1
    }

    pub fn basis(&self) -> std::sync::Arc<AdaptedBasis> {
        adapted_basis(&self.l)
    }

    /// Homs `φ` with `p ∈ ker φ` and `im φ ⊆ ⟨S⟩/⟨L⟩` for a flag member `S`.
    pub fn fixing_point_homs(&self, target: &SubspaceRep) -> Result<HomSpace> {
        let basis = self.basis();
        let field = self.f.field();
        // η with η(p) = 0, η(v) = 1 on L
        let lm = DenseMatrix::from_rows(field, vec![self.p.clone(), self.v.clone()])?;
        let eta = lm
            .solve_right(&[field.zero(), field.one()])
            .ok_or_else(|| Error::RankDeficient("p and v are dependent".into()))?;
        let homs = target
            .basis_rows()
            .iter()
            .map(|w| HomElement::tangent_rank_one(&basis, &eta, w))
            .collect::<Result<Vec<_>>>()?;
        HomSpace::span(Direction::Tangent, &basis, &homs)
    }
}

/// Tangent space of `𝓛_m(X)` at the configuration: the kernel of the Jacobian
/// of the `t^j` coefficients of `f(p + t v)` (`j < m`) pushed through the
/// Stiefel differential.
pub fn contact_tangent_space(cfg: &ContactConfig) -> Result<HomSpace> {
    let field = cfg.f.field();
    let n1 = cfg.p.len();
    let n = n1 - 1;
    let m = cfg.m;
    let mut names: Vec<String> = (0..n1).map(|i| format!("p{i}")).collect();
    names.extend((0..n1).map(|i| format!("v{i}")));
    names.push("t".into());
    let ring = Ring::new(names, field, MonomialOrder::DegRevLex);
    let tvar = 2 * n1;
    let images: Vec<MultiPoly> = (0..n1)
        .map(|i| ring.var(i).add(&ring.var(tvar).mul(&ring.var(n1 + i))))
        .collect();
    let g = cfg.f.compose(&ring, &images);
    // coefficient of t^j as a polynomial in (p, v)
    let mut coeffs: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); m];
    for (mono, c) in g.terms() {
        let j = mono.0[tvar] as usize;
        if j < m {
            let mut mm = mono.clone();
            mm.0[tvar] = 0;
            coeffs[j].push((mm, c.clone()));
        }
    }
    let mut point = cfg.p.clone();
    point.extend(cfg.v.iter().cloned());
    point.push(field.zero());
    let rows: Vec<Vec<Scalar>> = coeffs
        .into_iter()
        .map(|terms| {
            let q = MultiPoly::from_terms(&ring, terms);
            (0..2 * n1).map(|k| q.derivative(k).eval(&point)).collect()
        })
        .collect();
    let jac = DenseMatrix::from_rows_with_cols(field, 2 * n1, rows)?;
    if jac.rank() != m {
        return Err(Error::NonGeneral(format!(
            "incidence Jacobian has rank {} instead of {m}",
            jac.rank()
        )));
    }
    let basis = cfg.basis();
    let homs = jac
        .kernel()
        .iter()
        .map(|k| {
            let vel = DenseMatrix::from_rows(field, vec![k[..n1].to_vec(), k[n1..].to_vec()])?;
            stiefel_differential(&basis, &vel)
        })
        .collect::<Result<Vec<_>>>()?;
    let space = HomSpace::span(Direction::Tangent, &basis, &homs)?;
    let expected = 2 * (n - 1) - (m - 1);
    if space.dim() != expected {
        return Err(Error::NonGeneral(format!(
            "tangent space has dimension {} instead of {expected}",
            space.dim()
        )));
    }
    Ok(space)
}

/// Checks the rank-one structure of the conormal space of `𝓛_m(X)` at `cfg`:
/// dimension `m − 1`, a unique rank-one point with image `⟨p⟩` and kernel
/// `⟨𝕋_{X,p}⟩/⟨L⟩`, meeting the Segre variety with multiplicity `m − 1`.
pub fn verify_contact_theorem(
    cfg: &ContactConfig,
    rng: &mut impl Rng,
) -> Result<ClassificationReport> {
    let m = cfg.m;
    let n = cfg.n();
    let tangent = contact_tangent_space(cfg)?;
    let conormal = trace_annihilator(&tangent);
    let dim_lm = 2 * (n - 1) - (m - 1);
    let mut report = classify(&conormal, Mode::Coisotropic, Some(dim_lm), rng)?;
    report.checks.push(Check::new(
        "conormal_dim",
        conormal.dim() == m - 1,
        format!("{} (expected {})", conormal.dim(), m - 1),
    ));
    let tx = cfg.flag[0].clone();
    let pt = SubspaceRep::point(&cfg.p)?;
    match segre_tangency_certificate(&conormal, rng) {
        Ok(cert) => {
            let unique = cert.unique_point;
            report.checks.push(Check::new(
                "unique_rank_one_point",
                unique,
                format!(
                    "{} points, zero-dimensional: {}",
                    cert.points.len(),
                    cert.zero_dimensional
                ),
            ));
            if unique {
                let w = &cert.points[0];
                report.checks.push(Check::new(
                    "rank_one_image",
                    w.image.same_subspace(&pt),
                    "image equals the contact point",
                ));
                report.checks.push(Check::new(
                    "rank_one_kernel",
                    w.kernel.same_subspace(&tx),
                    "kernel equals the tangent hyperplane",
                ));
            }
            report.attach_segre(&cert, m - 1);
        }
        Err(e) => report
            .checks
            .push(Check::new("segre_tangency", false, e.to_string())),
    }
    // structural containments along the flag
    let last = cfg.flag.last().unwrap();
    let ker_part = cfg.fixing_point_homs(last)?;
    report.checks.push(Check::new(
        "kernel_of_point_map_contained",
        tangent.contains_space(&ker_part) && ker_part.dim() + 2 == last.dim(),
        format!("dimension {}", ker_part.dim()),
    ));
    let prev = if m >= 3 {
        cfg.flag[m - 3].clone()
    } else {
        SubspaceRep::whole(cfg.f.field(), n)
    };
    let line_part = cfg.fixing_point_homs(&prev)?;
    report.checks.push(Check::new(
        "preimage_of_line_contained",
        tangent.contains_space(&line_part),
        format!("dimension {}", line_part.dim()),
    ));
    report.checks.push(Check::new(
        "annihilates_tangent",
        conormal.elements().iter().all(|c| {
            tangent
                .elements()
                .iter()
                .all(|t| t.trace_pairing(c).map(|s| s.is_zero()).unwrap_or(false))
        }),
        "trace pairing vanishes",
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fermat_flag_and_valuation() {
        let f = Field::Prime(32003);
        let r = Ring::with_prefix("x", 4, f);
        let fermat = r
            .vars_polys()
            .iter()
            .fold(r.zero(), |acc, x| acc.add(&x.pow(3)));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = sample_contact_line(&fermat, 3, &mut rng).unwrap();
        assert_eq!(cfg.flag.len(), 2);
        assert!(cfg.flag[0].contains(&cfg.flag[1]));
        assert_eq!(contact_order(&fermat, &cfg.p, &cfg.v), Some(3));
        let v = ProjVariety::hypersurface(fermat.clone()).unwrap();
        assert!(cfg.flag[0].same_subspace(&v.embedded_tangent_space(&cfg.p).unwrap()));
    }

    #[test]
    fn cubic_surface_theorem() {
        let f = Field::Prime(32003);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cubic = random_hypersurface(3, 3, f, &mut rng);
        for m in [2, 3] {
            let cfg = sample_contact_line(&cubic, m, &mut rng).unwrap();
            let rep = verify_contact_theorem(&cfg, &mut rng).unwrap();
            assert!(rep.all_pass(), "m = {m}: {:?}", rep.checks);
            assert!(rep.certificates.iter().any(|c| c == "segre_tangency"));
        }
    }

    #[test]
    fn cone_degree_factorial() {
        let f = Field::Prime(32003);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let quartic = random_hypersurface(4, 4, f, &mut rng);
        let v = ProjVariety::hypersurface(quartic.clone()).unwrap();
        let p = v.sample_smooth_point(&mut rng).unwrap();
        for (m, fact) in [(2, 1), (3, 2), (4, 6)] {
            assert_eq!(contact_cone_degree(&quartic, &p, m).unwrap(), (m - 1, fact));
        }
    }

    #[test]
    fn order_preconditions() {
        let f = Field::Prime(32003);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let quadric = random_hypersurface(3, 2, f, &mut rng);
        assert!(matches!(
            sample_contact_line(&quadric, 3, &mut rng),
            Err(Error::Precondition(_))
        ));
    }
}
