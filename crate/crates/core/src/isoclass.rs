//! Rank-one structure of tangent and conormal spaces: the rank-one locus,
//! strong (co)isotropy, α/β typing and Segre tangency certificates.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::field::Scalar;
use crate::exact::groebner::Ideal;
use crate::exact::local::local_multiplicity;
use crate::exact::matrix::{self, DenseMatrix};
use crate::exact::poly::{MultiPoly, Ring};
use crate::exact::solve::solve;
use crate::grassmann::{binomial, HomElement, HomSpace, SubspaceRep};

/// A named pass/fail check with a short detail string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Conormal spaces, rank-one conditions of coisotropy.
    Coisotropic,
    /// Tangent spaces, rank-one conditions of isotropy.
    Isotropic,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Coisotropic => "coisotropic",
            Mode::Isotropic => "isotropic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeTag {
    Alpha,
    Beta,
    Hypersurface,
    Mixed,
    None,
}

impl TypeTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeTag::Alpha => "alpha",
            TypeTag::Beta => "beta",
            TypeTag::Hypersurface => "hypersurface",
            TypeTag::Mixed => "mixed",
            TypeTag::None => "none",
        }
    }
}

/// Outcome of the α/β test on a space of rank ≤ 1 homs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaBeta {
    /// All elements share this kernel.
    Alpha(SubspaceRep),
    /// All elements share this image.
    Beta(SubspaceRep),
}

/// A rank-one point `[λ] ∈ P(span)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOnePoint {
    /// Coordinates in the space's basis; the first nonzero entry is 1.
    pub coeffs: Vec<Scalar>,
    pub element: HomElement,
    pub kernel: SubspaceRep,
    pub image: SubspaceRep,
    /// Local multiplicity of the minor ideal, when the chart has at most two
    /// variables.
    pub multiplicity: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankOneLocus {
    pub points: Vec<RankOnePoint>,
    pub positive_dimensional: bool,
    /// Some rank-one point is not defined over the base field.
    pub irrational: bool,
}

/// 2×2 minors of `Σ λ_i e_i` as polynomials in `λ`.
fn generic_minors(space: &HomSpace) -> (std::sync::Arc<Ring>, Vec<MultiPoly>) {
    let field = space.basis().field();
    let d = space.dim();
    let ring = Ring::with_prefix("l", d, field);
    let Some(first) = space.elements().first() else {
        return (ring, Vec::new());
    };
    let (r, c) = (first.matrix().rows(), first.matrix().cols());
    let entry = |i: usize, j: usize| -> MultiPoly {
        let mut acc = ring.zero();
        for (k, e) in space.elements().iter().enumerate() {
            let s = e.matrix().get(i, j);
            if !s.is_zero() {
                acc = acc.add(&ring.var(k).scale(s));
            }
        }
        acc
    };
    let m: Vec<Vec<MultiPoly>> = (0..r)
        .map(|i| (0..c).map(|j| entry(i, j)).collect())
        .collect();
    let mut minors = Vec::new();
    for i1 in 0..r {
        for i2 in i1 + 1..r {
            for j1 in 0..c {
                for j2 in j1 + 1..c {
                    let p = m[i1][j1].mul(&m[i2][j2]).sub(&m[i1][j2].mul(&m[i2][j1]));
                    if !p.is_zero() {
                        minors.push(p);
                    }
                }
            }
        }
    }
    (ring, minors)
}

/// Every element of the span has rank ≤ 1.
pub fn is_strong(space: &HomSpace) -> bool {
    generic_minors(space).1.is_empty()
}

fn point_from_coeffs(
    space: &HomSpace,
    coeffs: Vec<Scalar>,
    multiplicity: Option<usize>,
) -> RankOnePoint {
    let element = space.combination(&coeffs);
    RankOnePoint {
        kernel: element.kernel_subspace(),
        image: element.image_subspace(),
        element,
        coeffs,
        multiplicity,
    }
}

/// Rank-one elements of `P(span)`, found chart by chart (`λ_j = 1`,
/// `λ_i = 0` for `i < j`).
pub fn rank_one_locus(space: &HomSpace, rng: &mut impl Rng) -> Result<RankOneLocus> {
    let d = space.dim();
    if d == 0 {
        return Err(Error::Precondition(
            "rank-one locus of the zero space".into(),
        ));
    }
    let field = space.basis().field();
    let (_, minors) = generic_minors(space);
    let mut out = RankOneLocus::default();
    for j in 0..d {
        let arity = d - 1 - j;
        let chart = Ring::with_prefix("l", arity, field);
        let images: Vec<MultiPoly> = (0..d)
            .map(|i| match i.cmp(&j) {
                std::cmp::Ordering::Less => chart.zero(),
                std::cmp::Ordering::Equal => chart.one(),
                std::cmp::Ordering::Greater => chart.var(i - j - 1),
            })
            .collect();
        let gens: Vec<MultiPoly> = minors
            .iter()
            .map(|m| m.compose(&chart, &images))
            .filter(|p| !p.is_zero())
            .collect();
        let lift = |pt: &[Scalar]| -> Vec<Scalar> {
            let mut c = vec![field.zero(); d];
            c[j] = field.one();
            c[j + 1..].clone_from_slice(pt);
            c
        };
        if arity == 0 {
            if gens.is_empty() {
                out.points
                    .push(point_from_coeffs(space, lift(&[]), Some(1)));
            }
            continue;
        }
        if gens.is_empty() {
            out.positive_dimensional = true;
            continue;
        }
        let sols = solve(&gens, rng)?;
        out.positive_dimensional |= sols.positive_dimensional;
        out.irrational |= sols.irrational;
        let ideal = Ideal::new(&chart, gens)?;
        for pt in sols.points {
            let mult = if arity <= 2 && !sols.positive_dimensional {
                Some(local_multiplicity(&ideal, &pt)?)
            } else {
                None
            };
            out.points.push(point_from_coeffs(space, lift(&pt), mult));
        }
    }
    Ok(out)
}

/// Common kernel (α) or common image (β) of a space of rank ≤ 1 homs.
pub fn alpha_beta_type(space: &HomSpace) -> Result<AlphaBeta> {
    if space.dim() < 2 {
        return Err(Error::Precondition(
            "α/β typing needs a space of dimension at least 2".into(),
        ));
    }
    if space.elements().iter().any(|e| e.rank() > 1) {
        return Err(Error::RankTwoElement);
    }
    let kernels: Vec<SubspaceRep> = space
        .elements()
        .iter()
        .map(HomElement::kernel_subspace)
        .collect();
    let images: Vec<SubspaceRep> = space
        .elements()
        .iter()
        .map(HomElement::image_subspace)
        .collect();
    if kernels.iter().all(|k| k.same_subspace(&kernels[0])) {
        return Ok(AlphaBeta::Alpha(kernels[0].clone()));
    }
    if images.iter().all(|i| i.same_subspace(&images[0])) {
        return Ok(AlphaBeta::Beta(images[0].clone()));
    }
    Err(Error::InvariantViolation(
        "rank-one elements share neither kernel nor image".into(),
    ))
}

/// Intersection of `P(span)` with the Segre variety of rank-one maps between
/// the reduced source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreCertificate {
    pub points: Vec<RankOnePoint>,
    pub zero_dimensional: bool,
    pub unique_point: bool,
    /// Source dimension after quotienting the common kernel.
    pub source_dim: usize,
    /// Dimension of the sum of images.
    pub target_dim: usize,
    pub segre_codim: usize,
    pub segre_degree: usize,
    /// Local multiplicity at the unique point, when computable.
    pub local_multiplicity: Option<usize>,
    /// Multiplicity forced by Bézout for a unique point of a proper intersection.
    pub bezout_multiplicity: Option<usize>,
}

impl SegreCertificate {
    /// Multiplicity at the unique point, preferring the local computation.
    pub fn multiplicity(&self) -> Option<usize> {
        self.local_multiplicity.or(self.bezout_multiplicity)
    }

    /// Local and Bézout multiplicities agree whenever both exist.
    pub fn consistent(&self) -> bool {
        match (self.local_multiplicity, self.bezout_multiplicity) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

/// Certifies a unique rank-one point of a proper intersection with the Segre
/// variety and computes its multiplicity.
pub fn segre_tangency_certificate(
    space: &HomSpace,
    rng: &mut impl Rng,
) -> Result<SegreCertificate> {
    let s = space.dim();
    if s == 0 {
        return Err(Error::CertificateNotApplicable("zero space".into()));
    }
    let field = space.basis().field();
    let mats: Vec<&DenseMatrix> = space.elements().iter().map(HomElement::matrix).collect();
    // sources are rows, so the common kernel is the left kernel of [M_1 | M_2 | …]
    let hcat: Vec<Vec<Scalar>> = (0..mats[0].rows())
        .map(|i| mats.iter().flat_map(|m| m.row(i).iter().cloned()).collect())
        .collect();
    let vcat: Vec<Vec<Scalar>> = mats.iter().flat_map(|m| m.to_rows()).collect();
    let source_dim = DenseMatrix::from_rows(field, hcat)?.rank();
    let target_dim = matrix::span_dim(field, mats[0].cols(), &vcat);
    if source_dim == 0 || target_dim == 0 {
        return Err(Error::CertificateNotApplicable("zero map".into()));
    }
    let segre_codim = (source_dim - 1) * (target_dim - 1);
    if s - 1 != segre_codim {
        return Err(Error::CertificateNotApplicable(format!(
            "P(span) has dimension {} but the Segre codimension is {}",
            s - 1,
            segre_codim
        )));
    }
    let segre_degree = binomial(source_dim + target_dim - 2, source_dim - 1);
    let locus = rank_one_locus(space, rng)?;
    let zero_dimensional = !locus.positive_dimensional;
    let unique_point = zero_dimensional && !locus.irrational && locus.points.len() == 1;
    let local = if unique_point {
        locus.points[0].multiplicity
    } else {
        None
    };
    let bezout = unique_point.then_some(segre_degree);
    Ok(SegreCertificate {
        points: locus.points,
        zero_dimensional,
        unique_point,
        source_dim,
        target_dim,
        segre_codim,
        segre_degree,
        local_multiplicity: local,
        bezout_multiplicity: bezout,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub strong: bool,
    pub rank_one_spanned: bool,
    pub hypersurface_rank_one: bool,
    pub low_dim_fallback: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Coisotropic,
    Isotropic,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Coisotropic => "coisotropic",
            Verdict::Isotropic => "isotropic",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub mode: Mode,
    pub space_dim: usize,
    pub ell: usize,
    pub n: usize,
    pub flags: Flags,
    pub type_tag: TypeTag,
    pub alpha_beta: Option<AlphaBeta>,
    pub witnesses: Vec<RankOnePoint>,
    pub locus_positive_dimensional: bool,
    /// Names of the certificates that establish the verdict.
    pub certificates: Vec<String>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

impl ClassificationReport {
    fn positive(&self) -> Verdict {
        match self.mode {
            Mode::Coisotropic => Verdict::Coisotropic,
            Mode::Isotropic => Verdict::Isotropic,
        }
    }

    fn refresh_verdict(&mut self) {
        self.verdict = if self.certificates.is_empty() {
            Verdict::Inconclusive
        } else {
            self.positive()
        };
    }

    /// Adds a Segre tangency certificate with its expected multiplicity.
    pub fn attach_segre(&mut self, cert: &SegreCertificate, expected_multiplicity: usize) {
        let ok = cert.unique_point
            && cert.consistent()
            && cert.multiplicity() == Some(expected_multiplicity);
        self.checks.push(Check::new(
            "segre_tangency",
            ok,
            format!(
                "unique={} multiplicity={:?} expected={}",
                cert.unique_point,
                cert.multiplicity(),
                expected_multiplicity
            ),
        ));
        if ok {
            self.certificates.push("segre_tangency".into());
            self.refresh_verdict();
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Classifies a tangent or conormal space at one sample.
///
/// `declared_dim` is the dimension of the ambient subvariety of the
/// Grassmannian, used only for the low-dimension fallback.
pub fn classify(
    space: &HomSpace,
    mode: Mode,
    declared_dim: Option<usize>,
    rng: &mut impl Rng,
) -> Result<ClassificationReport> {
    let sub = space.basis().subspace();
    let (ell, n) = (sub.ell() as usize, sub.n());
    let d = space.dim();
    let mut checks = Vec::new();
    let expected = match mode {
        Mode::Coisotropic => crate::grassmann::Direction::Conormal,
        Mode::Isotropic => crate::grassmann::Direction::Tangent,
    };
    checks.push(Check::new(
        "direction_matches_mode",
        space.direction() == expected,
        format!("{:?}", space.direction()),
    ));
    let mut flags = Flags {
        strong: is_strong(space),
        ..Flags::default()
    };
    let (witnesses, positive_dimensional) = if d == 0 {
        (Vec::new(), false)
    } else {
        let locus = rank_one_locus(space, rng)?;
        (locus.points, locus.positive_dimensional)
    };
    let witness_vecs: Vec<Vec<Scalar>> = witnesses.iter().map(|w| w.coeffs.clone()).collect();
    flags.rank_one_spanned = flags.strong || matrix::span_dim(sub.field(), d, &witness_vecs) == d;
    flags.hypersurface_rank_one = d == 1 && space.elements()[0].rank() == 1;
    if let Some(dim) = declared_dim {
        let grass_dim = (ell + 1) * (n - ell);
        flags.low_dim_fallback = match mode {
            Mode::Coisotropic => dim < n,
            Mode::Isotropic => grass_dim.saturating_sub(dim) < n,
        };
    }
    let mut alpha_beta = None;
    let type_tag = if flags.hypersurface_rank_one {
        TypeTag::Hypersurface
    } else if flags.strong && d >= 2 {
        match alpha_beta_type(space) {
            Ok(ab) => {
                let tag = match ab {
                    AlphaBeta::Alpha(_) => TypeTag::Alpha,
                    AlphaBeta::Beta(_) => TypeTag::Beta,
                };
                alpha_beta = Some(ab);
                tag
            }
            Err(e) => {
                checks.push(Check::new("alpha_beta_dichotomy", false, e.to_string()));
                TypeTag::None
            }
        }
    } else if !witnesses.is_empty() {
        TypeTag::Mixed
    } else {
        TypeTag::None
    };
    let mut certificates = Vec::new();
    if flags.hypersurface_rank_one {
        certificates.push("hypersurface_rank_one".to_string());
    }
    if flags.strong {
        certificates.push("strong".to_string());
    }
    if flags.rank_one_spanned {
        certificates.push("rank_one_spanned".to_string());
    }
    if flags.low_dim_fallback {
        certificates.push("low_dim_fallback".to_string());
    }
    let mut report = ClassificationReport {
        mode,
        space_dim: d,
        ell,
        n,
        flags,
        type_tag,
        alpha_beta,
        witnesses,
        locus_positive_dimensional: positive_dimensional,
        certificates,
        verdict: Verdict::Inconclusive,
        checks,
    };
    report.refresh_verdict();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::Field;
    use crate::grassmann::{adapted_basis, perp_dual_hom, Direction};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line_basis() -> std::sync::Arc<crate::grassmann::AdaptedBasis> {
        let f = Field::Rational;
        let rows = DenseMatrix::from_i64(f, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        adapted_basis(&crate::grassmann::pluecker_embed(&rows).unwrap())
    }

    fn hom(b: &std::sync::Arc<crate::grassmann::AdaptedBasis>, m: &[&[i64]]) -> HomElement {
        HomElement::new(Direction::Conormal, DenseMatrix::from_i64(b.field(), m), b).unwrap()
    }

    #[test]
    fn pencil_of_two_coordinate_maps() {
        let b = line_basis();
        let e00 = hom(&b, &[&[1, 0], &[0, 0]]);
        let e11 = hom(&b, &[&[0, 0], &[0, 1]]);
        let s = HomSpace::span(Direction::Conormal, &b, &[e00.clone(), e11.clone()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let locus = rank_one_locus(&s, &mut rng).unwrap();
        assert_eq!(locus.points.len(), 2);
        assert!(!locus.positive_dimensional);
        assert!(locus.points.iter().all(|p| p.multiplicity == Some(1)));
        let r = classify(&s, Mode::Coisotropic, None, &mut rng).unwrap();
        assert!(!r.flags.strong && r.flags.rank_one_spanned);
        assert_eq!(r.type_tag, TypeTag::Mixed);
        assert_eq!(r.verdict, Verdict::Coisotropic);
        assert_eq!(
            alpha_beta_type(&s),
            Err(Error::InvariantViolation(
                "rank-one elements share neither kernel nor image".into()
            ))
        );
    }

    #[test]
    fn rank_two_generator_has_empty_locus() {
        let b = line_basis();
        let id = hom(&b, &[&[1, 0], &[0, 1]]);
        let s = HomSpace::span(Direction::Conormal, &b, &[id]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(rank_one_locus(&s, &mut rng).unwrap().points.is_empty());
        let r = classify(&s, Mode::Coisotropic, None, &mut rng).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let e01 = hom(&b, &[&[0, 1], &[0, 0]]);
        let s2 = HomSpace::span(Direction::Conormal, &b, &[s.elements()[0].clone(), e01]).unwrap();
        assert_eq!(alpha_beta_type(&s2), Err(Error::RankTwoElement));
    }

    #[test]
    fn beta_space_dualizes_to_alpha() {
        let b = line_basis();
        let a = hom(&b, &[&[1, 0], &[0, 0]]);
        let c = hom(&b, &[&[0, 0], &[1, 0]]);
        let s = HomSpace::span(Direction::Conormal, &b, &[a.clone(), c.clone()]).unwrap();
        assert!(matches!(alpha_beta_type(&s), Ok(AlphaBeta::Beta(_))));
        let da = perp_dual_hom(&a);
        let dc = perp_dual_hom(&c);
        let ds = HomSpace::span(Direction::Conormal, da.basis(), &[da.clone(), dc]).unwrap();
        assert!(matches!(alpha_beta_type(&ds), Ok(AlphaBeta::Alpha(_))));
    }

    #[test]
    fn tangent_line_to_segre_has_multiplicity_two() {
        let b = line_basis();
        // P(span) tangent to the quadric ad - bc = 0 at E00: span{E00, E01 + E10}
        let a = hom(&b, &[&[1, 0], &[0, 0]]);
        let t = hom(&b, &[&[0, 1], &[1, 0]]);
        let s = HomSpace::span(Direction::Conormal, &b, &[a, t]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cert = segre_tangency_certificate(&s, &mut rng).unwrap();
        assert!(cert.unique_point);
        assert_eq!(cert.segre_degree, 2);
        assert_eq!(cert.local_multiplicity, Some(2));
        assert_eq!(cert.multiplicity(), Some(2));
    }

    #[test]
    fn low_dim_fallback_forces_verdict() {
        let b = line_basis();
        let s = HomSpace::full(Direction::Conormal, &b);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = classify(&s, Mode::Coisotropic, Some(1), &mut rng).unwrap();
        assert!(r.flags.low_dim_fallback);
        assert_eq!(r.verdict, Verdict::Coisotropic);
    }
}
