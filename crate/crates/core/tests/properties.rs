use grassgeo_core::exact::groebner::eliminate;
use grassgeo_core::exact::hilbert::hilbert_dim_degree;
use grassgeo_core::grassmann::HomElement;
use grassgeo_core::osc::{dual_curve, ParamCurve};
use grassgeo_core::rng::random_vector;
use grassgeo_core::{
    adapted_basis, perp_dual, perp_dual_hom, pluecker_embed, pluecker_relations, trace_annihilator,
    DenseMatrix, Direction, Field, HomSpace, Ideal, Ring, Scalar, SeedStream, UniPoly,
};
use proptest::prelude::*;

const P: Field = Field::Prime(32003);

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(P), Just(Field::Prime(101))]
}

fn random_subspace(
    field: Field,
    n: usize,
    ell: usize,
    seed: u64,
) -> Option<grassgeo_core::SubspaceRep> {
    let mut rng = SeedStream::new(seed).rng();
    let rows = (0..=ell)
        .map(|_| random_vector(field, n + 1, &mut rng))
        .collect();
    pluecker_embed(&DenseMatrix::from_rows(field, rows).unwrap()).ok()
}

/// Determinant mod `p` by permutation expansion.
fn det_mod(m: &[Vec<u64>], p: u64) -> u64 {
    fn go(m: &[Vec<u64>], row: usize, used: &mut Vec<bool>, p: u64) -> (u64, u64) {
        // returns (sum over even permutations, sum over odd permutations)
        if row == m.len() {
            return (1, 0);
        }
        let (mut even, mut odd) = (0, 0);
        let mut passed = 0;
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            used[c] = true;
            let (e, o) = go(m, row + 1, used, p);
            used[c] = false;
            let (e, o) = (e * m[row][c] % p, o * m[row][c] % p);
            if passed % 2 == 0 {
                even = (even + e) % p;
                odd = (odd + o) % p;
            } else {
                even = (even + o) % p;
                odd = (odd + e) % p;
            }
            passed += 1;
        }
        (even, odd)
    }
    let (e, o) = go(m, 0, &mut vec![false; m.len()], p);
    (e + p - o) % p
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Largest size of a nonzero minor.
fn rank_by_minors(m: &[Vec<u64>], p: u64) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    (1..=rows.min(cols))
        .rev()
        .find(|&k| {
            subsets(rows, k).iter().any(|rs| {
                subsets(cols, k).iter().any(|cs| {
                    let sub: Vec<Vec<u64>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                        .collect();
                    det_mod(&sub, p) != 0
                })
            })
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_agrees_with_minors_oracle(
        size in 1usize..5,
        entries in proptest::collection::vec(0u64..7, 16),
        rank_cap in 1usize..5,
    ) {
        // entries from a small range, with rows past rank_cap replaced by sums, so
        // singular matrices are common
        let p = 7u64;
        let field = Field::Prime(p);
        let mut m: Vec<Vec<u64>> = (0..size).map(|i| entries[i * 4..i * 4 + size].to_vec()).collect();
        for i in rank_cap.min(size)..size {
            m[i] = (0..size).map(|c| (m[0][c] + m[i - 1][c]) % p).collect();
        }
        let dm = DenseMatrix::from_rows(
            field,
            m.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(field, v as i64)).collect()).collect(),
        )
        .unwrap();
        prop_assert_eq!(dm.rank_kernel().rank, rank_by_minors(&m, p));
    }

    #[test]
    fn normal_form_ignores_ideal_multiples(seed in any::<u64>()) {
        let mut rng = SeedStream::new(seed).rng();
        let r = Ring::with_prefix("x", 3, P);
        let x = r.vars_polys();
        let mut c = || r.constant(random_vector(P, 1, &mut rng).remove(0));
        let g1 = x[0].pow(2).sub(&x[1].mul(&x[2]).mul(&c()));
        let g2 = x[1].pow(3).add(&x[0].mul(&x[2].pow(2)).mul(&c()));
        let i = Ideal::new(&r, vec![g1.clone(), g2]).unwrap();
        let rem = x[0].mul(&x[1]).add(&x[2].pow(3).mul(&c())).add(&x[1].mul(&c()));
        let q = x[2].mul(&c()).add(&x[0].pow(2));
        let pq = g1.mul(&q).add(&rem);
        prop_assert_eq!(i.normal_form(&pq).unwrap(), i.normal_form(&rem).unwrap());
    }

    #[test]
    fn eliminated_monomial_curve_degree(k in 2u32..6, j in 1u32..5) {
        prop_assume!(j < k && num_integer::gcd(j, k) == 1);
        // (s^k : s^(k-j) t^j : t^k) is injective, so the image has degree k:
        // a generic line pulls back to a binary form of degree k
        let r = Ring::new(
            ["s", "t", "x0", "x1", "x2"].iter().map(|v| v.to_string()).collect(),
            P,
            grassgeo_core::MonomialOrder::DegRevLex,
        );
        let (s, t) = (r.var(0), r.var(1));
        let coords = [s.pow(k), s.pow(k - j).mul(&t.pow(j)), t.pow(k)];
        let gens = (0..3).map(|i| r.var(2 + i).sub(&coords[i])).collect();
        let e = eliminate(&Ideal::new(&r, gens).unwrap(), &["x0", "x1", "x2"]).unwrap();
        prop_assert_eq!(hilbert_dim_degree(&e).unwrap(), (1, u64::from(k)));
    }

    #[test]
    fn scalar_field_axioms(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, f in field_strategy()) {
        let (a, b, c) = (Scalar::from_i64(f, a), Scalar::from_i64(f, b), Scalar::from_i64(f, c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn pluecker_relations_vanish(seed in any::<u64>(), n in 2usize..6, f in field_strategy()) {
        let ell = (seed as usize) % n;
        if let Some(l) = random_subspace(f, n, ell, seed) {
            let rel = pluecker_relations(ell, n, f);
            for g in rel.generators() {
                prop_assert!(g.eval(l.pluecker()).is_zero());
            }
        }
    }

    #[test]
    fn perp_dual_is_an_involution(seed in any::<u64>(), n in 1usize..6, f in field_strategy()) {
        let ell = (seed as usize) % n;
        if let Some(l) = random_subspace(f, n, ell, seed) {
            let p = perp_dual(&l);
            prop_assert_eq!(p.ell(), (n - ell - 1) as isize);
            prop_assert!(perp_dual(&p).same_subspace(&l));
        }
    }

    #[test]
    fn annihilator_complements(seed in any::<u64>(), n in 2usize..5, f in field_strategy()) {
        let ell = (seed as usize) % n;
        let Some(l) = random_subspace(f, n, ell, seed) else { return Ok(()) };
        let basis = adapted_basis(&l);
        let (k, q) = (basis.k(), basis.q());
        let mut rng = SeedStream::new(seed).child(1).rng();
        let count = (seed as usize / 7) % (k * q + 1);
        let homs: Vec<HomElement> = (0..count)
            .map(|_| {
                let rows = (0..q).map(|_| random_vector(f, k, &mut rng)).collect();
                HomElement::new(Direction::Conormal, DenseMatrix::from_rows_with_cols(f, k, rows).unwrap(), &basis).unwrap()
            })
            .collect();
        let s = HomSpace::span(Direction::Conormal, &basis, &homs).unwrap();
        let ann = trace_annihilator(&s);
        prop_assert_eq!(ann.direction(), Direction::Tangent);
        prop_assert_eq!(s.dim() + ann.dim(), k * q);
        prop_assert!(trace_annihilator(&ann).same_span(&s));
    }

    #[test]
    fn perp_dual_hom_preserves_rank(seed in any::<u64>(), n in 2usize..5) {
        let ell = (seed as usize) % n;
        let Some(l) = random_subspace(P, n, ell, seed) else { return Ok(()) };
        let basis = adapted_basis(&l);
        let mut rng = SeedStream::new(seed).child(2).rng();
        let rows = (0..basis.k()).map(|_| random_vector(P, basis.q(), &mut rng)).collect();
        let h = HomElement::new(Direction::Tangent, DenseMatrix::from_rows_with_cols(P, basis.q(), rows).unwrap(), &basis).unwrap();
        prop_assert_eq!(perp_dual_hom(&h).rank(), h.rank());
    }

    #[test]
    fn rank_plus_nullity(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6, f in field_strategy()) {
        let mut rng = SeedStream::new(seed).rng();
        let m = DenseMatrix::from_rows_with_cols(f, cols, (0..rows).map(|_| random_vector(f, cols, &mut rng)).collect()).unwrap();
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn univariate_division(a in proptest::collection::vec(-20i64..20, 1..7), b in proptest::collection::vec(-20i64..20, 1..5)) {
        let f = Field::Rational;
        let to = |c: &[i64]| UniPoly::new(f, c.iter().map(|&x| Scalar::from_i64(f, x)).collect());
        let (pa, pb) = (to(&a), to(&b));
        prop_assume!(!pb.is_zero());
        let (q, r) = pa.div_rem(&pb);
        prop_assert_eq!(q.mul(&pb).add(&r), pa.clone());
        prop_assert!(r.is_zero() || r.degree() < pb.degree());
        let g = pa.gcd(&pb);
        prop_assert!(pa.rem(&g).is_zero() && pb.rem(&g).is_zero());
    }

    #[test]
    fn groebner_contains_generators_and_multiples(seed in any::<u64>()) {
        let mut rng = SeedStream::new(seed).rng();
        let r = Ring::with_prefix("x", 3, P);
        let x = r.vars_polys();
        let coeff = |rng: &mut _| r.constant(random_vector(P, 1, rng).remove(0));
        let f1 = x[0].mul(&x[1]).add(&x[2].pow(2).mul(&coeff(&mut rng)));
        let f2 = x[1].pow(2).sub(&x[0].mul(&x[2]).mul(&coeff(&mut rng)));
        let i = Ideal::new(&r, vec![f1.clone(), f2.clone()]).unwrap();
        prop_assert!(i.contains(&f1).unwrap());
        prop_assert!(i.contains(&f1.mul(&x[2]).add(&f2.mul(&x[0]))).unwrap());
    }

    #[test]
    fn rational_normal_curves_are_self_bidual(n in 2usize..6, t in -50i64..50) {
        let c = ParamCurve::rational_normal(n, P);
        let dd = dual_curve(&dual_curve(&c).unwrap().curve).unwrap();
        let t = Scalar::from_i64(P, t);
        prop_assert!(grassgeo_core::grassmann::proportional(&dd.curve.eval(&t), &c.eval(&t)));
    }
}
