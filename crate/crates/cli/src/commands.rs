//! One function per subcommand. Each returns a [`RunReport`]; randomness is
//! drawn from child streams of `--seed`: child 0 for the main computation and
//! child `i + 1` for sample `i`.

use grassgeo_core::associated::{
    associated_conormal, associated_tangent_pushforward, chow_hurwitz_ideal, polar_degree,
    sample_associated, EliminationRoute,
};
use grassgeo_core::contact::{sample_contact_line, verify_contact_theorem};
use grassgeo_core::isoclass::{classify, Mode};
use grassgeo_core::osc::{
    classify_strongly_isotropic_family, dual_curve, osc_tangent_hom, osculating_space, sigma_shift,
    FamilyClass, GrCurve, ParamCurve, Shift,
};
use grassgeo_core::projvar::dual_variety_ideal;
use grassgeo_core::rng::{random_scalar, random_vector};
use grassgeo_core::{
    pluecker_embed, trace_annihilator, DenseMatrix, Error, Field, ProjVariety, Ring, Scalar,
    SeedStream, SubspaceRep,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{
    read_json, subspace_from_json, unipoly_string, CurveSpec, FamilySpec, VarietySpec,
};
use crate::parse::parse_poly;
use crate::report::{self, digest, CheckOut, RunReport, Seeds, SCHEMA_VERSION};
use crate::{Cli, CliError, Command};

type Res<T> = Result<T, CliError>;

struct Ctx<'a> {
    cli: &'a Cli,
    field: Field,
    root: SeedStream,
    inputs: Vec<(&'static str, String)>,
    main_used: bool,
    sample_count: usize,
}

impl<'a> Ctx<'a> {
    fn main_seed(&mut self) -> SeedStream {
        self.main_used = true;
        self.root.child(0)
    }

    fn sample_seed(&self, i: usize) -> SeedStream {
        self.root.child(i as u64 + 1)
    }

    fn samples(&mut self, default: usize) -> usize {
        let n = self.cli.samples.unwrap_or(default);
        self.sample_count = n;
        n
    }

    fn require<T: Clone>(&self, v: &Option<T>, flag: &str) -> Res<T> {
        v.clone().ok_or_else(|| {
            CliError::Input(format!("{} requires --{flag}", self.cli.command.name()))
        })
    }

    fn variety(&mut self) -> Res<ProjVariety> {
        let path = self.require(&self.cli.variety, "variety")?;
        let (spec, text): (VarietySpec, String) = read_json(&path)?;
        self.inputs.push(("variety", text));
        spec.build(self.field)
    }

    fn finish(self, results: Value, checks: Vec<CheckOut>) -> RunReport {
        let mut parts = vec![("command", self.cli.command.name().to_string())];
        for (k, v) in [
            ("ell", self.cli.ell),
            ("m", self.cli.m),
            ("k", self.cli.k),
            ("samples", self.cli.samples),
        ] {
            if let Some(v) = v {
                parts.push((k, v.to_string()));
            }
        }
        if let Some(f) = &self.cli.f {
            parts.push(("f", f.clone()));
        }
        parts.extend(self.inputs);
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: self.cli.command.name().to_string(),
            inputs_digest: digest(&parts),
            seeds: Seeds {
                root: self.root.seed(),
                main: self.main_used.then(|| self.root.child(0).seed()),
                sample_streams: self.sample_count,
            },
            field: self.field.to_string(),
            results,
            checks,
            wall_time_ms: None,
        }
    }
}

/// Runs `f` for every sample index in parallel, keeping index order.
fn per_sample<T: Send>(
    ctx: &Ctx,
    count: usize,
    f: impl Fn(usize, SeedStream) -> Res<T> + Sync,
) -> Res<Vec<T>> {
    (0..count)
        .into_par_iter()
        .map(|i| f(i, ctx.sample_seed(i)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn random_plane(field: Field, n: usize, ell: usize, rng: &mut impl rand::Rng) -> Res<SubspaceRep> {
    loop {
        let rows = (0..=ell)
            .map(|_| random_vector(field, n + 1, rng))
            .collect();
        if let Ok(l) = pluecker_embed(&DenseMatrix::from_rows(field, rows)?) {
            return Ok(l);
        }
    }
}

pub fn dispatch(cli: &Cli) -> Res<RunReport> {
    let field: Field = cli.field.parse()?;
    let ctx = Ctx {
        cli,
        field,
        root: SeedStream::new(cli.seed),
        inputs: Vec::new(),
        main_used: false,
        sample_count: 0,
    };
    match cli.command {
        Command::Chow => chow_hurwitz(ctx, false),
        Command::Hurwitz => chow_hurwitz(ctx, true),
        Command::PolarDegrees => polar_degrees(ctx),
        Command::SampleAssociated => sample_assoc(ctx),
        Command::Classify => {
            if cli.input.is_some() {
                classify_family_isotropic(ctx)
            } else {
                classify_associated(ctx)
            }
        }
        Command::Contact => contact(ctx),
        Command::Osc => osc(ctx),
        Command::DualCurve => dual_curve_cmd(ctx),
        Command::Dualize => dualize(ctx),
        Command::ClassifyFamily => classify_family(ctx),
    }
}

fn chow_hurwitz(mut ctx: Ctx, hurwitz: bool) -> Res<RunReport> {
    let v = ctx.variety()?;
    let codim = v.codim()?;
    let ell = if hurwitz { codim } else { codim - 1 };
    if ell >= v.n() {
        return Err(Error::OutOfScope(format!("ℓ = {ell} must be below n = {}", v.n())).into());
    }
    let mut rng = ctx.main_seed().rng();
    let ch = chow_hurwitz_ideal(&v, ell, EliminationRoute::Auto, &mut rng)?;
    let count = ctx.samples(50);
    let field = ctx.field;
    let per = per_sample(&ctx, count, |_, seed| {
        let mut rng = seed.rng();
        let (incident, conormal_ok) = if hurwitz {
            let s = sample_associated(&v, ell, &mut rng)?;
            let n = associated_conormal(&s, &v)?;
            (s.l, n.dim() == 1 && n.elements()[0].rank() == 1)
        } else {
            let x = v.sample_smooth_point(&mut rng)?;
            let mut rows = vec![x];
            loop {
                rows.truncate(1);
                rows.extend((0..ell).map(|_| random_vector(field, v.n() + 1, &mut rng)));
                if let Ok(l) = pluecker_embed(&DenseMatrix::from_rows(field, rows.clone())?) {
                    break (l, true);
                }
            }
        };
        let random = random_plane(field, v.n(), ell, &mut rng)?;
        Ok((
            ch.form.eval(incident.pluecker()).is_zero(),
            !ch.form.eval(random.pluecker()).is_zero(),
            conormal_ok,
        ))
    })?;
    let zeros = per.iter().filter(|p| p.0).count();
    let nonzeros = per.iter().filter(|p| p.1).count();
    let mut checks = vec![CheckOut::new(
        "principal",
        ch.principal,
        format!("{} generators", ch.ideal.generators().len()),
    )];
    if !hurwitz {
        let deg = v.degree()?;
        checks.push(CheckOut::new(
            "degree_equals_deg_x",
            u64::from(ch.degree) == deg,
            format!("form degree {}, deg X {deg}", ch.degree),
        ));
    } else {
        let ok = per.iter().filter(|p| p.2).count();
        checks.push(CheckOut::new(
            "conormal_rank_one",
            ok == count,
            format!("{ok}/{count} sampled conormal spaces spanned by one rank-one hom"),
        ));
    }
    let what = if hurwitz { "tangent" } else { "incident" };
    checks.push(CheckOut::new(
        format!("vanishes_on_{what}_planes"),
        zeros == count,
        format!("{zeros}/{count}"),
    ));
    checks.push(CheckOut::new(
        "nonzero_on_random_planes",
        nonzeros == count,
        format!("{nonzeros}/{count}"),
    ));
    let results = json!({
        "ell": ell,
        "n": v.n(),
        "codim": codim,
        "form": ch.form.to_string(),
        "degree": ch.degree,
        "principal": ch.principal,
        "hilbert_degree_ratio": ch.hilbert_degree_ratio,
        "pluecker_variables": ch.form.ring().vars,
        "ideal_generators": ch.ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "samples": count,
        "vanishing": zeros,
        "nonvanishing_random": nonzeros,
    });
    Ok(ctx.finish(results, checks))
}

fn polar_degrees(mut ctx: Ctx) -> Res<RunReport> {
    let v = ctx.variety()?;
    let codim = v.codim()?;
    let mut rng = ctx.main_seed().rng();
    let dual = dual_variety_ideal(&v, &mut rng)?;
    let dual_dim = dual.dim()?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for ell in 0..v.n() {
        let p = polar_degree(&v, ell, EliminationRoute::Auto, &mut rng)?;
        let expected = codim <= ell + 1 && (ell as i64) <= dual_dim;
        checks.push(CheckOut::new(
            format!("positivity_ell_{ell}"),
            (p.degree > 0) == expected,
            format!("degree {}, expected positive: {expected}", p.degree),
        ));
        rows.push(json!({
            "ell": ell,
            "degree": p.degree,
            "in_range": p.in_range,
            "codim_in_grassmannian": p.codim_in_grassmannian,
        }));
    }
    let results = json!({
        "n": v.n(),
        "codim": codim,
        "dual_dim": dual_dim,
        "dual_degree": dual.degree()?,
        "polar_degrees": rows,
    });
    Ok(ctx.finish(results, checks))
}

fn sample_assoc(mut ctx: Ctx) -> Res<RunReport> {
    let v = ctx.variety()?;
    let ell = ctx.require(&ctx.cli.ell, "ell")?;
    let count = ctx.samples(5);
    let probes = (ell + 1) * (v.n() - ell.min(v.n())) + 8;
    let per = per_sample(&ctx, count, |i, seed| {
        let mut rng = seed.rng();
        let s = sample_associated(&v, ell, &mut rng)?;
        let n = associated_conormal(&s, &v)?;
        let t = associated_tangent_pushforward(&s, &v, probes, &mut rng)?;
        let range = grassgeo_core::associated::associated_range(&v, ell, &s.witness)?;
        let checks = vec![
            CheckOut::new(format!("sample_{i}.witness_valid"), s.is_valid_for(&v), ""),
            CheckOut::new(
                format!("sample_{i}.pushforward_matches_conormal"),
                trace_annihilator(&t).same_span(&n),
                format!("tangent dim {}, conormal dim {}", t.dim(), n.dim()),
            ),
        ];
        let value = json!({
            "index": i,
            "seed": seed.seed(),
            "l": report::subspace(&s.l),
            "witness": {"x": report::vector(&s.witness.x), "h": report::vector(&s.witness.h)},
            "range": range.as_str(),
            "tangent_dim": t.dim(),
            "conormal": report::hom_space(&n),
        });
        Ok((value, checks))
    })?;
    let (values, checks): (Vec<_>, Vec<_>) = per.into_iter().unzip();
    let results = json!({"ell": ell, "n": v.n(), "samples": values});
    Ok(ctx.finish(results, checks.into_iter().flatten().collect()))
}

fn classify_associated(mut ctx: Ctx) -> Res<RunReport> {
    let v = ctx.variety()?;
    let ell = ctx.require(&ctx.cli.ell, "ell")?;
    let count = ctx.samples(5);
    let per = per_sample(&ctx, count, |i, seed| {
        let mut rng = seed.rng();
        let s = sample_associated(&v, ell, &mut rng)?;
        let n = associated_conormal(&s, &v)?;
        let rep = classify(&n, Mode::Coisotropic, None, &mut rng)?;
        let prefix = format!("sample_{i}.");
        let checks: Vec<CheckOut> = rep
            .checks
            .iter()
            .map(|c| CheckOut::from_core(&prefix, c))
            .collect();
        Ok((
            json!({"index": i, "l": report::subspace(&s.l), "report": report::classification(&rep)}),
            checks,
        ))
    })?;
    let (values, checks): (Vec<_>, Vec<_>) = per.into_iter().unzip();
    let results = json!({"ell": ell, "n": v.n(), "mode": "coisotropic", "samples": values});
    Ok(ctx.finish(results, checks.into_iter().flatten().collect()))
}

fn load_family(ctx: &mut Ctx) -> Res<FamilySpec> {
    let path = ctx.require(&ctx.cli.input, "input")?;
    let (spec, text): (FamilySpec, String) = read_json(&path)?;
    ctx.inputs.push(("input", text));
    Ok(spec)
}

fn classify_family_isotropic(mut ctx: Ctx) -> Res<RunReport> {
    let spec = load_family(&mut ctx)?;
    let spaces = spec.tangent_spaces(ctx.field)?;
    let mut rng = ctx.main_seed().rng();
    let mut values = Vec::new();
    let mut checks = Vec::new();
    for (i, s) in spaces.iter().enumerate() {
        let rep = classify(s, Mode::Isotropic, None, &mut rng)?;
        let prefix = format!("sample_{i}.");
        checks.extend(rep.checks.iter().map(|c| CheckOut::from_core(&prefix, c)));
        values.push(json!({"index": i, "report": report::classification(&rep)}));
    }
    let results = json!({"n": spec.n, "mode": "isotropic", "samples": values});
    Ok(ctx.finish(results, checks))
}

fn classify_family(mut ctx: Ctx) -> Res<RunReport> {
    let spec = load_family(&mut ctx)?;
    let spaces = spec.tangent_spaces(ctx.field)?;
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let mut checks = Vec::new();
    let (class, center) = match classify_strongly_isotropic_family(&spaces) {
        Ok(FamilyClass::Alpha(p)) => ("alpha", Some(p)),
        Ok(FamilyClass::Beta(p)) => ("beta", Some(p)),
        Ok(FamilyClass::Curve) => ("curve", None),
        Ok(FamilyClass::Inconclusive) => ("inconclusive", None),
        Err(Error::NotIsotropic(d)) => {
            checks.push(CheckOut::new("strongly_isotropic", false, d));
            ("not_strongly_isotropic", None)
        }
        Err(Error::InvariantViolation(d)) => {
            checks.push(CheckOut::new("single_alpha_or_beta_variety", false, d));
            ("mixed", None)
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(exp) = &spec.expected {
        checks.push(CheckOut::new(
            "expected_class",
            exp.class == class,
            format!("expected {}, got {class}", exp.class),
        ));
        if let Some(rows) = &exp.center {
            let want = subspace_from_json(rows, spec.n, ctx.field)?;
            let ok = center.as_ref().is_some_and(|c| c.same_subspace(&want));
            checks.push(CheckOut::new("expected_center", ok, ""));
        }
    }
    let results = json!({
        "n": spec.n,
        "samples": spaces.len(),
        "tangent_dims": dims,
        "class": class,
        "center": center.as_ref().map(report::subspace),
    });
    Ok(ctx.finish(results, checks))
}

fn contact(mut ctx: Ctx) -> Res<RunReport> {
    let text = ctx.require(&ctx.cli.f, "f")?;
    let m = ctx.require(&ctx.cli.m, "m")?;
    let expr = parse_poly(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let mut n = 0;
    for name in expr.variables() {
        match name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
            Some(i) => n = n.max(i),
            None => {
                return Err(CliError::Input(format!(
                    "--f may only use x0, x1, …; found {name}"
                )))
            }
        }
    }
    if n < 2 {
        return Err(CliError::Input(
            "--f must involve at least x0, x1, x2".into(),
        ));
    }
    let ring = Ring::with_prefix("x", n + 1, ctx.field);
    let f = expr.to_poly(&ring).map_err(CliError::Input)?;
    ProjVariety::hypersurface(f.clone())?;
    let count = ctx.samples(5);
    let per = per_sample(&ctx, count, |i, seed| {
        let mut rng = seed.rng();
        let cfg = sample_contact_line(&f, m, &mut rng)?;
        let rep = verify_contact_theorem(&cfg, &mut rng)?;
        let prefix = format!("sample_{i}.");
        let checks: Vec<CheckOut> = rep
            .checks
            .iter()
            .map(|c| CheckOut::from_core(&prefix, c))
            .collect();
        let value = json!({
            "index": i,
            "seed": seed.seed(),
            "p": report::vector(&cfg.p),
            "v": report::vector(&cfg.v),
            "line": report::subspace(&cfg.l),
            "flag": cfg.flag.iter().map(report::subspace).collect::<Vec<_>>(),
            "report": report::classification(&rep),
        });
        Ok((value, checks))
    })?;
    let (values, checks): (Vec<_>, Vec<_>) = per.into_iter().unzip();
    let results = json!({"f": f.to_string(), "n": n, "m": m, "reports": values});
    Ok(ctx.finish(results, checks.into_iter().flatten().collect()))
}

fn load_curve(ctx: &mut Ctx) -> Res<(ParamCurve, String)> {
    let path = ctx.require(&ctx.cli.input, "input")?;
    let (spec, text): (CurveSpec, String) = read_json(&path)?;
    ctx.inputs.push(("input", text));
    Ok((spec.build(ctx.field)?, spec.param))
}

/// A seeded parameter value avoiding stationary points of `Osc_k`.
fn good_t(c: &ParamCurve, k: usize, rng: &mut impl rand::Rng) -> Res<Scalar> {
    for _ in 0..32 {
        let t = random_scalar(c.field(), rng);
        match osculating_space(c, &t, k) {
            Ok(s) if k == c.span_dim() || s.next.is_some() => return Ok(t),
            Ok(_) | Err(Error::Stationary) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(Error::Stationary.into())
}

fn osc(mut ctx: Ctx) -> Res<RunReport> {
    let (c, _) = load_curve(&mut ctx)?;
    let k = ctx.cli.k.unwrap_or(1);
    let count = ctx.samples(5);
    let m = c.span_dim();
    let per = per_sample(&ctx, count, |i, seed| {
        let mut rng = seed.rng();
        let t = good_t(&c, k, &mut rng)?;
        let s = osculating_space(&c, &t, k)?;
        let p = format!("sample_{i}.");
        let mut checks = Vec::new();
        let mut hom_json = Value::Null;
        if k < m {
            let h = osc_tangent_hom(&c, &t, k)?;
            let next = s.next.as_ref().expect("next osculating space");
            let prev_ok = match &s.prev {
                Some(prev) => h.kernel_subspace().same_subspace(prev),
                None => h.kernel_subspace().dim() == 0,
            };
            checks.push(CheckOut::new(
                format!("{p}rank_one"),
                h.rank() == 1,
                format!("rank {}", h.rank()),
            ));
            checks.push(CheckOut::new(format!("{p}kernel_is_previous"), prev_ok, ""));
            checks.push(CheckOut::new(
                format!("{p}image_is_next"),
                h.image_subspace().same_subspace(next),
                "",
            ));
            let tan = GrCurve::osculating(&c, k).tangent(&t)?;
            let plus = sigma_shift(std::slice::from_ref(&tan), Shift::Plus)?;
            checks.push(CheckOut::new(
                format!("{p}sigma_plus"),
                plus[0].same_subspace(next),
                "",
            ));
            if let Some(prev) = &s.prev {
                let minus = sigma_shift(&[tan], Shift::Minus)?;
                checks.push(CheckOut::new(
                    format!("{p}sigma_minus"),
                    minus[0].same_subspace(prev),
                    "",
                ));
                let below = GrCurve::osculating(&c, k - 1).tangent(&t)?;
                let back = sigma_shift(&[below], Shift::Plus)?;
                checks.push(CheckOut::new(
                    format!("{p}sigma_round_trip"),
                    back[0].same_subspace(&s.l),
                    "",
                ));
            }
            hom_json = report::hom(&h);
        }
        let value = json!({
            "index": i,
            "t": report::scalar(&t),
            "l": report::subspace(&s.l),
            "prev": s.prev.as_ref().map(report::subspace),
            "next": s.next.as_ref().map(report::subspace),
            "tangent_hom": hom_json,
        });
        Ok((value, checks))
    })?;
    let (values, checks): (Vec<_>, Vec<_>) = per.into_iter().unzip();
    let results = json!({"k": k, "n": c.n(), "span_dim": m, "samples": values});
    Ok(ctx.finish(results, checks.into_iter().flatten().collect()))
}

fn dual_curve_cmd(mut ctx: Ctx) -> Res<RunReport> {
    let (c, param) = load_curve(&mut ctx)?;
    let d = dual_curve(&c)?;
    let bidual = dual_curve(&d.curve)?;
    let (inner, _) = c.restrict_to_span();
    let m = inner.n();
    let count = ctx.samples(5);
    let per = per_sample(&ctx, count, |i, seed| {
        let mut rng = seed.rng();
        let t = good_t(&inner, m - 1, &mut rng)?;
        let osc = osculating_space(&inner, &t, m - 1)?;
        let hyper = SubspaceRep::hyperplane(&d.curve.eval(&t))?;
        Ok(vec![
            CheckOut::new(
                format!("sample_{i}.dual_point_is_osculating_hyperplane"),
                hyper.same_subspace(&osc.l),
                format!("t = {t}"),
            ),
            CheckOut::new(
                format!("sample_{i}.biduality"),
                grassgeo_core::grassmann::proportional(&bidual.curve.eval(&t), &inner.eval(&t)),
                format!("t = {t}"),
            ),
        ])
    })?;
    let results = json!({
        "n": c.n(),
        "span_dim": m,
        "span_basis": report::rows(&d.span.to_rows()),
        "dual_coords": d.curve.coords().iter().map(|p| unipoly_string(p, &param)).collect::<Vec<_>>(),
    });
    Ok(ctx.finish(results, per.into_iter().flatten().collect()))
}

fn dualize(mut ctx: Ctx) -> Res<RunReport> {
    let v = ctx.variety()?;
    let mut rng = ctx.main_seed().rng();
    let dual = dual_variety_ideal(&v, &mut rng)?;
    let yring = Ring::with_prefix("y", v.n() + 1, ctx.field);
    let map: Vec<usize> = (0..=v.n()).collect();
    let gens: Vec<String> = dual
        .generators()
        .iter()
        .map(|g| g.remap(&yring, &map).to_string())
        .collect();
    let count = ctx.samples(5);
    let per = per_sample(&ctx, count, |i, seed| {
        let mut rng = seed.rng();
        let w = v.conormal_witness_sample(&mut rng)?;
        Ok(CheckOut::new(
            format!("sample_{i}.tangent_hyperplane_on_dual"),
            dual.contains_point(&w.h),
            format!(
                "h = ({})",
                w.h.iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ))
    })?;
    let results = json!({
        "n": v.n(),
        "generators": gens,
        "dim": dual.dim()?,
        "degree": dual.degree()?,
    });
    Ok(ctx.finish(results, per))
}
