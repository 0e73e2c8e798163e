use grassgeo_core::associated::{associated_conormal, sample_associated};
use grassgeo_core::catalog::{quadric_surface, rational_normal_curve, segre};
use grassgeo_core::contact::{contact_tangent_space, random_hypersurface, sample_contact_line};
use grassgeo_core::isoclass::{classify, is_strong, AlphaBeta, Mode};
use grassgeo_core::osc::alpha_variety_sample;
use grassgeo_core::projvar::dual_variety_ideal;
use grassgeo_core::rng::random_vector;
use grassgeo_core::{
    adapted_basis, perp_dual_hom, pluecker_embed, stiefel_differential, trace_annihilator,
    DenseMatrix, Direction, Field, HomElement, HomSpace, Ideal, ProjVariety, Ring, SeedStream,
    SubspaceRep,
};
use proptest::prelude::*;

const P: Field = Field::Prime(32003);

fn random_plane(n: usize, ell: usize, seed: u64) -> SubspaceRep {
    let mut rng = SeedStream::new(seed).rng();
    loop {
        let rows = (0..=ell)
            .map(|_| random_vector(P, n + 1, &mut rng))
            .collect();
        if let Ok(l) = pluecker_embed(&DenseMatrix::from_rows(P, rows).unwrap()) {
            return l;
        }
    }
}

/// A random vector of the subspace `s`.
fn pick(s: &SubspaceRep, rng: &mut impl rand::Rng) -> Vec<grassgeo_core::Scalar> {
    let c = random_vector(P, s.dim(), rng);
    let rows = s.basis_rows();
    (0..=s.n())
        .map(|j| {
            rows.iter()
                .zip(&c)
                .fold(P.zero(), |acc, (r, ci)| &acc + &(&r[j] * ci))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stiefel_images_fill_the_tangent_space(seed in any::<u64>(), n in 1usize..6, ell_frac in 0usize..5) {
        let ell = ell_frac % n;
        let l = random_plane(n, ell, seed);
        let basis = adapted_basis(&l);
        let (k, n1) = (ell + 1, n + 1);
        let homs: Vec<HomElement> = (0..k)
            .flat_map(|i| (0..n1).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut m = DenseMatrix::zeros(P, k, n1);
                m.set(i, j, P.one());
                stiefel_differential(&basis, &m).unwrap()
            })
            .collect();
        let span = HomSpace::span(Direction::Tangent, &basis, &homs).unwrap();
        let expected = (ell + 1) * (n - ell);
        prop_assert_eq!(span.dim(), expected);
        prop_assert_eq!(HomSpace::full(Direction::Tangent, &basis).dim(), expected);
    }
}

#[test]
fn tangent_space_dimension_matches_variety() {
    let cases: Vec<ProjVariety> = vec![
        rational_normal_curve(3, P),
        quadric_surface(P),
        segre(1, 3, P),
    ];
    for v in &cases {
        let dim = v.dim().unwrap() as usize;
        let mut rng = SeedStream::new(5).rng();
        for _ in 0..10 {
            let x = v.sample_smooth_point(&mut rng).unwrap();
            assert_eq!(v.embedded_tangent_space(&x).unwrap().dim(), dim + 1);
        }
    }
}

fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
    a.contains_ideal(b).unwrap() && b.contains_ideal(a).unwrap()
}

/// Moves the generators of `v` into a fresh `x`-ring so ideals can be compared.
fn in_x_ring(v: &ProjVariety) -> Ideal {
    let r = Ring::with_prefix("x", v.n() + 1, v.field());
    let gens = v
        .generators()
        .iter()
        .map(|g| {
            g.terms().iter().fold(r.zero(), |acc, (m, c)| {
                acc.add(&grassgeo_core::MultiPoly::monomial(
                    &r,
                    m.clone(),
                    c.clone(),
                ))
            })
        })
        .collect();
    Ideal::new(&r, gens).unwrap()
}

#[test]
fn biduality_for_quadrics() {
    let conic = {
        let r = Ring::with_prefix("x", 3, P);
        let x = r.vars_polys();
        ProjVariety::hypersurface(x[0].mul(&x[2]).sub(&x[1].pow(2))).unwrap()
    };
    for v in [quadric_surface(P), conic] {
        let mut rng = SeedStream::new(11).rng();
        let dual = dual_variety_ideal(&v, &mut rng).unwrap();
        for _ in 0..10 {
            let w = v
                .conormal_witness_sample(&mut rng)
                .unwrap()
                .swapped()
                .unwrap();
            assert!(dual.contains_point(&w.x));
            assert!(dual.is_witness(&w.x, &w.h));
        }
        let bidual = dual_variety_ideal(&dual, &mut rng).unwrap();
        assert!(same_ideal(&in_x_ring(&bidual), &in_x_ring(&v)));
    }
}

#[test]
fn twisted_cubic_witnesses_land_on_the_dual() {
    let v = rational_normal_curve(3, P);
    let mut rng = SeedStream::new(12).rng();
    let dual = dual_variety_ideal(&v, &mut rng).unwrap();
    for _ in 0..10 {
        let w = v.conormal_witness_sample(&mut rng).unwrap();
        assert!(dual.contains_point(&w.h));
    }
}

#[test]
fn perp_of_an_associated_sample_is_associated_to_the_dual() {
    let v = quadric_surface(P);
    let mut rng = SeedStream::new(13).rng();
    let dual = dual_variety_ideal(&v, &mut rng).unwrap();
    for ell in 0..3 {
        for _ in 0..5 {
            let s = sample_associated(&v, ell, &mut rng).unwrap();
            assert!(s.is_valid_for(&v));
            let p = s.perp().unwrap();
            assert_eq!(p.ell, 2 - ell);
            assert!(p.is_valid_for(&dual), "ℓ = {ell}");
        }
    }
}

#[test]
fn strong_spaces_survive_random_combinations() {
    let quartic = rational_normal_curve(4, P);
    let mut rng = SeedStream::new(14).rng();
    let s = sample_associated(&quartic, 1, &mut rng).unwrap();
    let conormal = associated_conormal(&s, &quartic).unwrap();
    assert!(is_strong(&conormal));
    for _ in 0..200 {
        let c = random_vector(P, conormal.dim(), &mut rng);
        assert!(conormal.combination(&c).rank() <= 1);
    }
    // a pencil of two generic rank-one maps is not strong, and combinations show it
    let l = random_plane(4, 1, 15);
    let basis = adapted_basis(&l);
    let ann = SubspaceRep::span(P, 4, &l.annihilator_rows());
    let gens: Vec<HomElement> = (0..2)
        .map(|_| {
            HomElement::conormal_rank_one(&basis, &pick(&ann, &mut rng), &pick(&l, &mut rng))
                .unwrap()
        })
        .collect();
    let pencil = HomSpace::span(Direction::Conormal, &basis, &gens).unwrap();
    assert_eq!(pencil.dim(), 2);
    assert!(!is_strong(&pencil));
    let found = (0..200).any(|_| pencil.combination(&random_vector(P, 2, &mut rng)).rank() == 2);
    assert!(found);
}

#[test]
fn duality_swaps_alpha_and_beta() {
    let quartic = rational_normal_curve(4, P);
    let mut rng = SeedStream::new(16).rng();
    for _ in 0..5 {
        let s = sample_associated(&quartic, 1, &mut rng).unwrap();
        let conormal = associated_conormal(&s, &quartic).unwrap();
        let rep = classify(&conormal, Mode::Coisotropic, None, &mut rng).unwrap();
        let Some(AlphaBeta::Beta(image)) = rep.alpha_beta else {
            panic!("expected β type, got {:?}", rep.alpha_beta)
        };
        let duals: Vec<HomElement> = conormal.elements().iter().map(perp_dual_hom).collect();
        let space = HomSpace::span(Direction::Conormal, duals[0].basis(), &duals).unwrap();
        let drep = classify(&space, Mode::Coisotropic, None, &mut rng).unwrap();
        let Some(AlphaBeta::Alpha(kernel)) = drep.alpha_beta else {
            panic!("expected α type, got {:?}", drep.alpha_beta)
        };
        assert!(kernel.same_subspace(&grassgeo_core::perp_dual(&image)));
        assert_eq!(rep.verdict, drep.verdict);
    }
}

#[test]
fn sums_of_rank_one_spanned_spaces_stay_rank_one_spanned() {
    let mut rng = SeedStream::new(17).rng();
    for seed in 0..5 {
        let l = random_plane(4, 1, 100 + seed);
        let basis = adapted_basis(&l);
        let ann = SubspaceRep::span(P, 4, &l.annihilator_rows());
        let h1 = HomElement::conormal_rank_one(&basis, &pick(&ann, &mut rng), &pick(&l, &mut rng))
            .unwrap();
        let h2 = HomElement::conormal_rank_one(&basis, &pick(&ann, &mut rng), &pick(&l, &mut rng))
            .unwrap();
        let s1 = HomSpace::span(Direction::Conormal, &basis, &[h1]).unwrap();
        let s2 = HomSpace::span(Direction::Conormal, &basis, &[h2]).unwrap();
        let sum = s1.sum(&s2).unwrap();
        let rep = classify(&sum, Mode::Coisotropic, Some(5), &mut rng).unwrap();
        assert!(rep.flags.rank_one_spanned, "seed {seed}");
    }
}

#[test]
fn contact_flag_and_conormal() {
    let mut rng = SeedStream::new(18).rng();
    for (n, m) in [(3, 2), (3, 3), (4, 3), (4, 4)] {
        let f = random_hypersurface(n, 4, P, &mut rng);
        let cfg = sample_contact_line(&f, m, &mut rng).unwrap();
        assert_eq!(cfg.flag.len(), m - 1);
        for (i, w) in cfg.flag.iter().enumerate() {
            assert_eq!(w.dim(), n - i, "flag step {i}");
            assert!(w.contains(&cfg.l));
            if i > 0 {
                assert!(cfg.flag[i - 1].contains(w));
            }
        }
        let tangent = contact_tangent_space(&cfg).unwrap();
        let conormal = trace_annihilator(&tangent);
        assert_eq!(conormal.dim(), m - 1);
        for t in tangent.elements() {
            for c in conormal.elements() {
                assert!(c.trace_pairing(t).unwrap().is_zero());
            }
        }
        assert_eq!(tangent.dim() + conormal.dim(), 2 * (n - 1));
    }
}

#[test]
fn alpha_variety_tangents_kill_the_center() {
    let mut rng = SeedStream::new(19).rng();
    for (n, d) in [(3, 1), (4, 2), (5, 2)] {
        let p1 = random_plane(n, d - 1, 200 + n as u64);
        for _ in 0..5 {
            let (l, tangent) = alpha_variety_sample(&p1, &mut rng).unwrap();
            assert!(l.contains(&p1));
            for h in tangent.elements() {
                assert!(h.kernel_subspace().contains(&p1));
            }
        }
    }
}
