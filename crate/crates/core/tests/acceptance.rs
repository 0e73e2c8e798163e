//! Acceptance suite: one line per criterion, nonzero exit on any gating failure.

use std::time::{Duration, Instant};

use grassgeo_core::associated::{
    associated_conormal, associated_tangent_pushforward, chow_hurwitz_ideal, polar_degree,
    sample_associated, AssociatedSample, EliminationRoute,
};
use grassgeo_core::catalog::{linear_image, quadric_surface, rational_normal_curve, segre};
use grassgeo_core::contact::{
    contact_cone_degree, random_hypersurface, sample_contact_line, verify_contact_theorem,
};
use grassgeo_core::grassmann::{proportional, HomElement};
use grassgeo_core::isoclass::{classify, is_strong, Mode, TypeTag, Verdict};
use grassgeo_core::osc::{
    alpha_variety_sample, beta_variety_sample, classify_strongly_isotropic_family, dual_curve,
    osc_tangent_hom, sigma_shift, FamilyClass, GrCurve, ParamCurve, Shift,
};
use grassgeo_core::projvar::{dual_variety_ideal, ConormalWitness};
use grassgeo_core::rng::{random_scalar, random_vector};
use grassgeo_core::{
    adapted_basis, hilbert_dim_degree, pluecker_embed, pluecker_relations, trace_annihilator,
    DenseMatrix, Direction, Field, HomSpace, Ideal, ProjVariety, Scalar, SeedStream, SubspaceRep,
};
use rand::Rng;

const P: Field = Field::Prime(32003);

type Outcome = Result<String, String>;

fn er<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let el = start.elapsed();
    check(el < limit, format!("took {el:?}, limit {limit:?}"))
}

fn line(a: Vec<Scalar>, b: Vec<Scalar>) -> Result<SubspaceRep, String> {
    pluecker_embed(&DenseMatrix::from_rows(P, vec![a, b]).map_err(er)?).map_err(er)
}

/// `(1, t, t², t³)` and its derivative, computed directly.
fn cubic_point(t: &Scalar) -> Vec<Scalar> {
    let one = P.one();
    let t2 = t * t;
    let t3 = &t2 * t;
    vec![one, t.clone(), t2, t3]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let v = rational_normal_curve(3, P);
    let mut rng = SeedStream::new(1).rng();
    let ch = chow_hurwitz_ideal(&v, 1, EliminationRoute::Auto, &mut rng).map_err(er)?;
    let deg_x = v.degree().map_err(er)?;
    check(ch.principal, "Chow ideal not principal")?;
    check(
        ch.degree == 3 && u64::from(ch.degree) == deg_x,
        format!("degree {} vs deg X {deg_x}", ch.degree),
    )?;
    for i in 0..50 {
        let x = cubic_point(&random_scalar(P, &mut rng));
        let other = if i % 2 == 0 {
            cubic_point(&random_scalar(P, &mut rng))
        } else {
            random_vector(P, 4, &mut rng)
        };
        let l = line(x, other)?;
        check(
            ch.form.eval(l.pluecker()).is_zero(),
            format!("nonzero on incident line {i}"),
        )?;
    }
    let mut nonzero = 0;
    for _ in 0..50 {
        let l = line(random_vector(P, 4, &mut rng), random_vector(P, 4, &mut rng))?;
        if !ch.form.eval(l.pluecker()).is_zero() {
            nonzero += 1;
        }
    }
    check(
        nonzero == 50,
        format!("nonzero on {nonzero}/50 random lines"),
    )?;
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "principal, degree 3, 50/50 incident zeros, 50/50 random nonzeros, {:?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let v = quadric_surface(P);
    let mut rng = SeedStream::new(2).rng();
    let ch = chow_hurwitz_ideal(&v, 1, EliminationRoute::Implicit, &mut rng).map_err(er)?;
    check(
        ch.principal && ch.degree == 2,
        format!("principal {} degree {}", ch.principal, ch.degree),
    )?;
    for i in 0..20 {
        let s = sample_associated(&v, 1, &mut rng).map_err(er)?;
        let x = &s.witness.x;
        // gradient of x0x3 - x1x2, by hand
        let grad = vec![x[3].clone(), -x[2].clone(), -x[1].clone(), x[0].clone()];
        let t = SubspaceRep::hyperplane(&grad).map_err(er)?;
        let n = associated_conormal(&s, &v).map_err(er)?;
        check(
            n.dim() == 1,
            format!("sample {i}: conormal dim {}", n.dim()),
        )?;
        let h = &n.elements()[0];
        check(h.rank() == 1, format!("sample {i}: rank {}", h.rank()))?;
        check(
            h.image_subspace()
                .same_subspace(&SubspaceRep::point(x).map_err(er)?),
            format!("sample {i}: image is not the witness point"),
        )?;
        check(
            h.kernel_subspace().same_subspace(&t),
            format!("sample {i}: kernel is not the tangent plane"),
        )?;
        check(
            ch.form.eval(s.l.pluecker()).is_zero(),
            format!("sample {i}: form nonzero on tangent line"),
        )?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "principal, degree 2, 20 rank-one conormals, {:?}",
        start.elapsed()
    ))
}

fn polar_profile(
    v: &ProjVariety,
    rng: &mut impl Rng,
) -> Result<(Vec<u64>, usize, usize, ProjVariety), String> {
    let dual = dual_variety_ideal(v, rng).map_err(er)?;
    let codim = v.codim().map_err(er)?;
    let dual_dim = dual.dim().map_err(er)? as usize;
    let degs = (0..v.n())
        .map(|ell| polar_degree(v, ell, EliminationRoute::Auto, rng).map(|p| p.degree))
        .collect::<Result<Vec<_>, _>>()
        .map_err(er)?;
    for (ell, d) in degs.iter().enumerate() {
        let in_range = codim <= ell + 1 && ell <= dual_dim;
        check(
            (*d > 0) == in_range,
            format!("ell {ell}: degree {d}, expected positive = {in_range}"),
        )?;
    }
    Ok((degs, codim, dual_dim, dual))
}

fn criterion_3() -> Outcome {
    let mut rng = SeedStream::new(3).rng();
    let tc = rational_normal_curve(3, P);
    let (degs, _, _, dual) = polar_profile(&tc, &mut rng)?;
    let oracle = (tc.degree().map_err(er)?, dual.degree().map_err(er)?);
    check(
        (degs[1], degs[2]) == oracle,
        format!("(δ1, δ2) = ({}, {}) vs oracle {oracle:?}", degs[1], degs[2]),
    )?;
    check(
        (degs[1], degs[2]) == (3, 4),
        "twisted cubic polar degrees differ from (3, 4)",
    )?;
    let implicit = polar_degree(&tc, 1, EliminationRoute::Implicit, &mut rng)
        .map_err(er)?
        .degree;
    check(implicit == degs[1], format!("implicit δ1 = {implicit}"))?;
    let q = quadric_surface(P);
    let (qdegs, _, _, _) = polar_profile(&q, &mut rng)?;
    Ok(format!("twisted cubic {degs:?}, quadric {qdegs:?}"))
}

fn criterion_4() -> Outcome {
    let v = rational_normal_curve(4, P);
    let mut rng = SeedStream::new(4).rng();
    for i in 0..20 {
        let s = sample_associated(&v, 1, &mut rng).map_err(er)?;
        let n = associated_conormal(&s, &v).map_err(er)?;
        check(
            n.dim() == 2,
            format!("sample {i}: conormal dim {}", n.dim()),
        )?;
        check(is_strong(&n), format!("sample {i}: rank-two element"))?;
        // oracle: Ann(T + L) ⊗ x
        let t = v.embedded_tangent_space(&s.witness.x).map_err(er)?;
        let basis = adapted_basis(&s.l);
        let homs = t
            .join(&s.l)
            .annihilator_rows()
            .iter()
            .map(|y| HomElement::conormal_rank_one(&basis, y, &s.witness.x))
            .collect::<Result<Vec<_>, _>>()
            .map_err(er)?;
        let oracle = HomSpace::span(Direction::Conormal, &basis, &homs).map_err(er)?;
        check(
            oracle.same_span(&n),
            format!("sample {i}: conormal differs from Ann(T+L)⊗x"),
        )?;
        let x = SubspaceRep::point(&s.witness.x).map_err(er)?;
        check(
            n.elements()
                .iter()
                .all(|h| h.image_subspace().same_subspace(&x)),
            format!("sample {i}: no common image line"),
        )?;
        let rep = classify(&n, Mode::Coisotropic, None, &mut rng).map_err(er)?;
        check(
            rep.flags.strong && rep.type_tag == TypeTag::Beta,
            format!("sample {i}: {:?}", rep.type_tag),
        )?;
    }
    Ok("20 samples: dim 2, strong, common image, beta".into())
}

fn criterion_5() -> Outcome {
    let q = quadric_surface(P);
    let mut rng = SeedStream::new(5).rng();
    let dual = dual_variety_ideal(&q, &mut rng).map_err(er)?;
    for i in 0..20 {
        let s = sample_associated(&q, 1, &mut rng).map_err(er)?;
        let p = s.perp().map_err(er)?;
        check(p.ell == 1, format!("sample {i}: perp level {}", p.ell))?;
        check(
            p.is_valid_for(&dual),
            format!("sample {i}: perp is not a sample of the dual quadric"),
        )?;
        // the dual of x0x3 - x1x2 is y0y3 - y1y2
        let y = &p.witness.x;
        check(
            (&y[0] * &y[3] - &y[1] * &y[2]).is_zero(),
            format!("sample {i}: witness off y0y3 - y1y2"),
        )?;
    }
    Ok("20 perp samples valid for the dual quadric".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let v = segre(2, 4, P);
    let mut rng = SeedStream::new(6).rng();
    let expected_dims = [3, 2, 1, 1, 1, 2, 3];
    for ell in 0..7 {
        for i in 0..5 {
            let s = sample_associated(&v, ell, &mut rng).map_err(er)?;
            let t = associated_tangent_pushforward(&s, &v, 64, &mut rng).map_err(er)?;
            let n = trace_annihilator(&t);
            check(
                n.dim() == expected_dims[ell],
                format!("ell {ell} sample {i}: conormal dim {}", n.dim()),
            )?;
            check(
                associated_conormal(&s, &v).map_err(er)?.same_span(&n),
                format!("ell {ell} sample {i}: pushforward and formula disagree"),
            )?;
            let rep = classify(&n, Mode::Coisotropic, None, &mut rng).map_err(er)?;
            let want = match ell {
                0 | 1 => TypeTag::Beta,
                5 | 6 => TypeTag::Alpha,
                _ => TypeTag::Hypersurface,
            };
            check(
                rep.type_tag == want,
                format!("ell {ell} sample {i}: type {:?}", rep.type_tag),
            )?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "dims {expected_dims:?}, types β β h h h α α, {:?}",
        start.elapsed()
    ))
}

fn contact_run(n: usize, degree: u32, m: usize, seed: u64, samples: usize) -> Outcome {
    let mut rng = SeedStream::new(seed).rng();
    let f = random_hypersurface(n, degree, P, &mut rng);
    for i in 0..samples {
        let cfg = sample_contact_line(&f, m, &mut rng).map_err(er)?;
        let rep = verify_contact_theorem(&cfg, &mut rng).map_err(er)?;
        let failed: Vec<&str> = rep
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        check(
            failed.is_empty(),
            format!("m {m} seed {seed} sample {i}: failed {failed:?}"),
        )?;
        check(
            rep.certificates.iter().any(|c| c == "segre_tangency"),
            format!("m {m} seed {seed} sample {i}: no segre_tangency certificate"),
        )?;
    }
    Ok(format!("m = {m}: {samples} samples"))
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for m in [2, 3] {
        for seed in [71, 72] {
            contact_run(3, 3, m, seed, 5)?;
        }
        parts.push(format!("m = {m}: 2 seeds × 5 samples"));
    }
    Ok(parts.join(", "))
}

fn criterion_7_stretch() -> Outcome {
    let start = Instant::now();
    contact_run(4, 4, 4, 73, 1)?;
    Ok(format!("quartic in P^4, m = 4, {:?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    for seed in [81, 82] {
        let mut rng = SeedStream::new(seed).rng();
        let f = random_hypersurface(4, 4, P, &mut rng);
        let v = ProjVariety::hypersurface(f.clone()).map_err(er)?;
        let p = v.sample_smooth_point(&mut rng).map_err(er)?;
        for m in 2..=4usize {
            let fact: u64 = (1..m as u64).product();
            let got = contact_cone_degree(&f, &p, m).map_err(er)?;
            check(got == (m - 1, fact), format!("seed {seed} m {m}: {got:?}"))?;
        }
    }
    Ok("(codim, degree) = (m−1, (m−1)!) for m = 2, 3, 4".into())
}

/// Osculating `k`-space of `(1, t, …, t^n)` from the closed-form derivatives.
fn rnc_osc(n: usize, t: &Scalar, k: isize) -> Result<SubspaceRep, String> {
    if k < 0 {
        return Ok(SubspaceRep::zero(P, n));
    }
    let rows: Vec<Vec<Scalar>> = (0..=k as usize)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    if j < i {
                        return P.zero();
                    }
                    let falling: i64 = ((j - i + 1)..=j).map(|x| x as i64).product();
                    let mut pow = P.one();
                    for _ in 0..(j - i) {
                        pow = &pow * t;
                    }
                    &Scalar::from_i64(P, falling) * &pow
                })
                .collect()
        })
        .collect();
    pluecker_embed(&DenseMatrix::from_rows(P, rows).map_err(er)?).map_err(er)
}

fn criterion_9() -> Outcome {
    let mut rng = SeedStream::new(9).rng();
    let mut count = 0;
    for n in [3usize, 4] {
        let c = ParamCurve::rational_normal(n, P);
        let dual = dual_curve(&c).map_err(er)?;
        let bidual = dual_curve(&dual.curve).map_err(er)?;
        for _ in 0..20 {
            let t = random_scalar(P, &mut rng);
            for k in 0..n {
                let h = osc_tangent_hom(&c, &t, k).map_err(er)?;
                check(h.rank() == 1, format!("n {n} k {k}: rank {}", h.rank()))?;
                check(
                    h.kernel_subspace()
                        .same_subspace(&rnc_osc(n, &t, k as isize - 1)?),
                    format!("n {n} k {k}: kernel"),
                )?;
                check(
                    h.image_subspace()
                        .same_subspace(&rnc_osc(n, &t, k as isize + 1)?),
                    format!("n {n} k {k}: image"),
                )?;
                let lk = rnc_osc(n, &t, k as isize)?;
                if k + 1 < n {
                    let above = GrCurve::osculating(&c, k + 1).tangent(&t).map_err(er)?;
                    let down = sigma_shift(&[above], Shift::Minus).map_err(er)?;
                    check(
                        down[0].same_subspace(&lk),
                        format!("n {n} k {k}: Σ⁻ round trip"),
                    )?;
                }
                let tan = GrCurve::osculating(&c, k).tangent(&t).map_err(er)?;
                let up = sigma_shift(&[tan], Shift::Plus).map_err(er)?;
                check(
                    up[0].same_subspace(&rnc_osc(n, &t, k as isize + 1)?),
                    format!("n {n} k {k}: Σ⁺"),
                )?;
                if k >= 1 {
                    let below = GrCurve::osculating(&c, k - 1).tangent(&t).map_err(er)?;
                    let back = sigma_shift(&[below], Shift::Plus).map_err(er)?;
                    check(
                        back[0].same_subspace(&lk),
                        format!("n {n} k {k}: Σ⁺ round trip"),
                    )?;
                }
                count += 1;
            }
            let hyper = SubspaceRep::hyperplane(&dual.curve.eval(&t)).map_err(er)?;
            check(
                hyper.same_subspace(&rnc_osc(n, &t, n as isize - 1)?),
                format!("n {n}: dual point"),
            )?;
            check(
                proportional(&bidual.curve.eval(&t), &c.eval(&t)),
                format!("n {n}: biduality"),
            )?;
        }
    }
    Ok(format!("{count} (t, k) pairs, biduality at 40 points"))
}

fn criterion_10() -> Outcome {
    let mut rng = SeedStream::new(10).rng();
    for (n, ell) in [(3usize, 1usize), (4, 2)] {
        let p1 = SubspaceRep::span(
            P,
            n,
            &(0..ell)
                .map(|_| random_vector(P, n + 1, &mut rng))
                .collect::<Vec<_>>(),
        );
        let alpha = (0..5)
            .map(|_| alpha_variety_sample(&p1, &mut rng).map(|s| s.1))
            .collect::<Result<Vec<_>, _>>()
            .map_err(er)?;
        match classify_strongly_isotropic_family(&alpha).map_err(er)? {
            FamilyClass::Alpha(p) => check(
                p.same_subspace(&p1),
                format!("Gr({ell},{n}): wrong α center"),
            )?,
            other => return Err(format!("Gr({ell},{n}): α samples classified {other:?}")),
        }
        let p2 = SubspaceRep::hyperplane(&random_vector(P, n + 1, &mut rng)).map_err(er)?;
        let p2 = if p2.dim() == ell + 2 {
            p2
        } else {
            SubspaceRep::span(
                P,
                n,
                &(0..ell + 2)
                    .map(|_| random_vector(P, n + 1, &mut rng))
                    .collect::<Vec<_>>(),
            )
        };
        let beta = (0..5)
            .map(|_| beta_variety_sample(&p2, ell, &mut rng).map(|s| s.1))
            .collect::<Result<Vec<_>, _>>()
            .map_err(er)?;
        match classify_strongly_isotropic_family(&beta).map_err(er)? {
            FamilyClass::Beta(p) => {
                check(p.same_subspace(&p2), format!("Gr({ell},{n}): wrong β span"))?
            }
            other => return Err(format!("Gr({ell},{n}): β samples classified {other:?}")),
        }
        let osc = GrCurve::osculating(&ParamCurve::rational_normal(n, P), ell);
        let curve = (0..5)
            .map(|_| osc.tangent(&random_scalar(P, &mut rng)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(er)?;
        let class = classify_strongly_isotropic_family(&curve).map_err(er)?;
        check(
            class == FamilyClass::Curve,
            format!("Gr({ell},{n}): Osc samples classified {class:?}"),
        )?;
    }
    Ok("α and β centers recovered in Gr(1,3) and Gr(2,4); Osc samples are curves".into())
}

fn criterion_11() -> Outcome {
    let mut rng = SeedStream::new(11).rng();
    let tc = rational_normal_curve(3, P);
    let random_gl = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let m =
            DenseMatrix::from_rows(P, (0..4).map(|_| random_vector(P, 4, rng)).collect()).unwrap();
        if m.rank() == 4 {
            return m;
        }
    };
    let c1 = linear_image(&tc, &random_gl(&mut rng)).map_err(er)?;
    let c2 = linear_image(&tc, &random_gl(&mut rng)).map_err(er)?;
    let both: Vec<_> = c1
        .generators()
        .iter()
        .chain(c2.generators())
        .cloned()
        .collect();
    let (dim, _) = hilbert_dim_degree(&Ideal::new(c1.ring(), both).map_err(er)?).map_err(er)?;
    check(dim < 0, "the two cubics meet")?;
    let x1 = c1.sample_smooth_point(&mut rng).map_err(er)?;
    let x2 = c2.sample_smooth_point(&mut rng).map_err(er)?;
    let l = line(x1.clone(), x2.clone())?;
    let basis = adapted_basis(&l);
    let mut conormals = Vec::new();
    let mut oracle = Vec::new();
    for (c, x) in [(&c1, &x1), (&c2, &x2)] {
        let t = c.embedded_tangent_space(x).map_err(er)?;
        let ys = t.join(&l).annihilator_rows();
        check(ys.len() == 1, "tangent line and L span more than a plane")?;
        let s = AssociatedSample {
            ell: 1,
            l: l.clone(),
            witness: ConormalWitness::new(x.clone(), ys[0].clone()).map_err(er)?,
        };
        check(s.is_valid_for(c), "constructed sample is not incident")?;
        conormals.push(associated_conormal(&s, c).map_err(er)?);
        oracle.push(HomElement::conormal_rank_one(&basis, &ys[0], x).map_err(er)?);
    }
    let sum = conormals[0].sum(&conormals[1]).map_err(er)?;
    check(sum.dim() == 2, format!("summed conormal dim {}", sum.dim()))?;
    check(
        oracle.iter().all(|h| h.rank() == 1),
        "oracle homs not rank one",
    )?;
    let oracle = HomSpace::span(Direction::Conormal, &basis, &oracle).map_err(er)?;
    check(
        oracle.same_span(&sum),
        "summed conormal differs from the two rank-one homs",
    )?;
    let rep = classify(&sum, Mode::Coisotropic, None, &mut rng).map_err(er)?;
    check(!rep.flags.strong, "pencil unexpectedly strong")?;
    check(rep.flags.rank_one_spanned, "not rank_one_spanned")?;
    check(
        rep.witnesses.len() == 2,
        format!("{} rank-one points", rep.witnesses.len()),
    )?;
    check(
        rep.verdict == Verdict::Coisotropic,
        format!("verdict {:?}", rep.verdict),
    )?;
    Ok("pencil of two rank-one homs, rank_one_spanned".into())
}

fn criterion_12() -> Outcome {
    let mut rng = SeedStream::new(12).rng();
    for field in [Field::Rational, P] {
        for i in 0..100 {
            let n = rng.random_range(2..=5usize);
            let ell = rng.random_range(0..n);
            let rows: Vec<Vec<Scalar>> = (0..=ell)
                .map(|_| random_vector(field, n + 1, &mut rng))
                .collect();
            let Ok(l) = pluecker_embed(&DenseMatrix::from_rows(field, rows).map_err(er)?) else {
                continue;
            };
            let rel = pluecker_relations(ell, n, field);
            check(
                rel.generators()
                    .iter()
                    .all(|g| g.eval(l.pluecker()).is_zero()),
                format!("{field:?} embed {i}: Plücker relation nonzero"),
            )?;
            let basis = adapted_basis(&l);
            let (k, q) = (basis.k(), basis.q());
            let count = rng.random_range(0..=k * q);
            let homs = (0..count)
                .map(|_| {
                    let m = DenseMatrix::from_rows_with_cols(
                        field,
                        q,
                        (0..k).map(|_| random_vector(field, q, &mut rng)).collect(),
                    )?;
                    HomElement::new(Direction::Tangent, m, &basis)
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(er)?;
            let s = HomSpace::span(Direction::Tangent, &basis, &homs).map_err(er)?;
            let ann = trace_annihilator(&s);
            check(
                s.dim() + ann.dim() == k * q,
                format!("{field:?} embed {i}: dimensions not complementary"),
            )?;
            check(
                trace_annihilator(&ann).same_span(&s),
                format!("{field:?} embed {i}: not an involution"),
            )?;
        }
    }
    let run = || -> Result<String, String> {
        let mut rng = SeedStream::new(1212).rng();
        let v = segre(2, 4, P);
        let s = sample_associated(&v, 3, &mut rng).map_err(er)?;
        let n = associated_conormal(&s, &v).map_err(er)?;
        let rep = classify(&n, Mode::Coisotropic, None, &mut rng).map_err(er)?;
        let ch = chow_hurwitz_ideal(&quadric_surface(P), 1, EliminationRoute::Implicit, &mut rng)
            .map_err(er)?;
        Ok(format!("{s:?}{rep:?}{}", ch.form))
    };
    check(run()? == run()?, "repeated runs differ")?;
    Ok("Plücker relations on 200 embeds, annihilator involution, deterministic reports".into())
}

fn main() {
    let criteria: Vec<(&str, &str, fn() -> Outcome, bool)> = vec![
        ("1", "chow_form_twisted_cubic", criterion_1, true),
        ("2", "hurwitz_form_quadric", criterion_2, true),
        ("3", "polar_degree_range", criterion_3, true),
        ("4", "strong_coisotropy_beta", criterion_4, true),
        ("5", "duality_transport", criterion_5, true),
        ("6", "segre_2x4_associated", criterion_6, true),
        ("7", "contact_line_theorem", criterion_7, true),
        ("7s", "contact_line_quartic_m4", criterion_7_stretch, false),
        ("8", "contact_cone_degrees", criterion_8, true),
        ("9", "osculating_curves", criterion_9, true),
        ("10", "strongly_isotropic_families", criterion_10, true),
        ("11", "transverse_intersection", criterion_11, true),
        ("12", "infrastructure", criterion_12, true),
    ];
    let mut failures = 0;
    for (id, name, f, gating) in criteria {
        let start = Instant::now();
        let out = f();
        let el = start.elapsed();
        let (tag, detail) = match &out {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        let note = if gating { "" } else { " (non-gating)" };
        println!(
            "criterion {id:>3} {tag} {name}{note} [{:.2}s]: {detail}",
            el.as_secs_f64()
        );
        if out.is_err() && gating {
            failures += 1;
        }
    }
    if failures > 0 {
        println!("{failures} gating criteria failed");
        std::process::exit(1);
    }
    println!("all gating criteria passed");
}
