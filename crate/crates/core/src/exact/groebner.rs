//! Buchberger's algorithm, ideals, normal forms and elimination.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exact::poly::{same_ring, Monomial, MonomialOrder, MultiPoly, Ring};

/// Limits for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of single-term reduction steps.
    pub step_budget: u64,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            step_budget: 50_000_000,
        }
    }
}

/// An ideal in a polynomial ring; caches its reduced Gröbner basis for the
/// ring's own order.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<MultiPoly>,
    gb: OnceLock<Vec<MultiPoly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<MultiPoly>) -> Result<Self> {
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch("generator from another ring".into()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    /// Wraps a list already known to be the reduced Gröbner basis.
    fn from_basis(ring: &Arc<Ring>, basis: Vec<MultiPoly>) -> Self {
        let gb = OnceLock::new();
        let _ = gb.set(basis.clone());
        Ideal {
            ring: ring.clone(),
            gens: basis,
            gb,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(MultiPoly::is_homogeneous)
    }

    /// Reduced Gröbner basis for the ring's order, computed once.
    pub fn basis(&self) -> Result<&[MultiPoly]> {
        self.basis_with(&GroebnerConfig::default())
    }

    pub fn basis_with(&self, cfg: &GroebnerConfig) -> Result<&[MultiPoly]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = buchberger(&self.ring, &self.gens, cfg)?;
        Ok(self.gb.get_or_init(|| g))
    }

    /// Remainder of `p` modulo the Gröbner basis; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch("normal_form".into()));
        }
        let g = self.basis()?;
        let mut steps = u64::MAX;
        Ok(reduce_full(p, g, &mut steps))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis()?.iter().any(MultiPoly::is_constant))
    }

    /// Sum of two ideals in the same ring.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }
}

/// Reduced Gröbner basis of `i` with respect to `order`.
pub fn groebner(i: &Ideal, order: MonomialOrder) -> Result<Ideal> {
    groebner_with(i, order, &GroebnerConfig::default())
}

pub fn groebner_with(i: &Ideal, order: MonomialOrder, cfg: &GroebnerConfig) -> Result<Ideal> {
    if i.ring.nvars() == 0 && i.gens.iter().all(|g| g.is_zero()) {
        return Err(Error::Precondition("empty ring".into()));
    }
    let ring = if i.ring.order == order {
        i.ring.clone()
    } else {
        i.ring.with_order(order)
    };
    let gens: Vec<MultiPoly> = i.gens.iter().map(|g| g.reorder(&ring)).collect();
    let basis = buchberger(&ring, &gens, cfg)?;
    Ok(Ideal::from_basis(&ring, basis))
}

/// Elimination ideal `i ∩ K[keep]`, returned in a degrevlex ring over `keep`
/// (in the order given).
pub fn eliminate(i: &Ideal, keep: &[&str]) -> Result<Ideal> {
    eliminate_with(i, keep, &GroebnerConfig::default())
}

pub fn eliminate_with(i: &Ideal, keep: &[&str], cfg: &GroebnerConfig) -> Result<Ideal> {
    let ring = &i.ring;
    let mut keep_idx = Vec::with_capacity(keep.len());
    for k in keep {
        match ring.var_index(k) {
            Some(ix) => keep_idx.push(ix),
            None => return Err(Error::RingMismatch(format!("unknown variable {k}"))),
        }
    }
    let drop_idx: Vec<usize> = (0..ring.nvars())
        .filter(|v| !keep_idx.contains(v))
        .collect();
    let target = Ring::new(
        keep.iter().map(|s| s.to_string()).collect(),
        ring.field,
        MonomialOrder::DegRevLex,
    );
    if drop_idx.is_empty() {
        let gens = i
            .gens
            .iter()
            .map(|g| g.to_ring_by_name(&target))
            .collect::<Result<_>>()?;
        let id = Ideal::new(&target, gens)?;
        return groebner_with(&id, MonomialOrder::DegRevLex, cfg);
    }
    // eliminated variables first, then keep variables
    let mut vars: Vec<String> = drop_idx.iter().map(|&v| ring.vars[v].clone()).collect();
    vars.extend(keep_idx.iter().map(|&v| ring.vars[v].clone()));
    let block = Ring::new(vars, ring.field, MonomialOrder::Block(drop_idx.len()));
    let mut map = vec![0usize; ring.nvars()];
    for (pos, &v) in drop_idx.iter().chain(keep_idx.iter()).enumerate() {
        map[v] = pos;
    }
    let gens: Vec<MultiPoly> = i.gens.iter().map(|g| g.remap(&block, &map)).collect();
    let gb = buchberger(&block, &gens, cfg)?;
    let nd = drop_idx.len();
    let kept: Vec<MultiPoly> = gb
        .into_iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(m, _)| m.0[..nd].iter().all(|&e| e == 0))
        })
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| (Monomial(m.0[nd..].into()), c.clone()))
                .collect();
            MultiPoly::from_terms(&target, terms)
        })
        .collect();
    let id = Ideal::new(&target, kept)?;
    // the restriction is a Gröbner basis for the restricted block order;
    // recompute for degrevlex so the cached basis matches the target ring
    groebner_with(&id, MonomialOrder::DegRevLex, cfg)
}

/// Fully reduces `p` by `g` (which need not be a Gröbner basis).
pub(crate) fn reduce_full(p: &MultiPoly, g: &[MultiPoly], steps: &mut u64) -> MultiPoly {
    reduce_full_checked(p, g, steps).unwrap_or_else(|_| unreachable!())
}

fn reduce_full_checked(p: &MultiPoly, g: &[MultiPoly], steps: &mut u64) -> Result<MultiPoly> {
    let ring = p.ring().clone();
    let mut rem_terms = Vec::new();
    let mut f = p.clone();
    while let Some((lm, lc)) = f.terms().first().cloned() {
        let div = g
            .iter()
            .find(|h| h.leading_monomial().is_some_and(|hm| hm.divides(&lm)));
        match div {
            Some(h) => {
                if *steps == 0 {
                    return Err(Error::BudgetExceeded("Gröbner reduction steps".into()));
                }
                *steps -= 1;
                let hm = h.leading_monomial().unwrap();
                let c = &lc / h.leading_coeff().unwrap();
                f = f.sub_mul_term(&c, &hm.div(&lm), h);
            }
            None => {
                rem_terms.push((lm.clone(), lc.clone()));
                f = f.drop_leading();
            }
        }
    }
    Ok(MultiPoly::from_terms(&ring, rem_terms))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn buchberger(
    ring: &Arc<Ring>,
    gens: &[MultiPoly],
    cfg: &GroebnerConfig,
) -> Result<Vec<MultiPoly>> {
    let mut steps = cfg.step_budget;
    let mut input: Vec<MultiPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    // deterministic processing order: by (degree, leading monomial)
    input.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
    });
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for f in input {
        let act: Vec<MultiPoly> = active_polys(&basis, &active);
        let h = reduce_full_checked(&f, &act, &mut steps)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        update(&mut basis, &mut active, &mut pairs, h.monic());
    }

    while !pairs.is_empty() {
        // normal selection: smallest lcm, ties by index
        let mut best = 0;
        for k in 1..pairs.len() {
            let c = ring.cmp(&pairs[k].lcm, &pairs[best].lcm);
            if c.is_lt() || (c.is_eq() && (pairs[k].j, pairs[k].i) < (pairs[best].j, pairs[best].i))
            {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let s = spoly(&basis[pair.i], &basis[pair.j], &pair.lcm);
        let act = active_polys(&basis, &active);
        let h = reduce_full_checked(&s, &act, &mut steps)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        update(&mut basis, &mut active, &mut pairs, h.monic());
    }

    let g = active_polys(&basis, &active);
    interreduce(ring, g, &mut steps)
}

fn active_polys(basis: &[MultiPoly], active: &[bool]) -> Vec<MultiPoly> {
    basis
        .iter()
        .zip(active)
        .filter(|(_, &a)| a)
        .map(|(p, _)| p.clone())
        .collect()
}

fn spoly(f: &MultiPoly, g: &MultiPoly, lcm: &Monomial) -> MultiPoly {
    let fm = f.leading_monomial().unwrap();
    let gm = g.leading_monomial().unwrap();
    let one = f.field().one();
    let a = f.mul_term(&one, &fm.div(lcm));
    a.sub_mul_term(&one, &gm.div(lcm), g)
}

/// Gebauer–Möller update with the new (monic, reduced) element `h`.
fn update(basis: &mut Vec<MultiPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: MultiPoly) {
    let hm = h.leading_monomial().unwrap().clone();
    let t = basis.len();
    let cands: Vec<(usize, Monomial, bool)> = (0..t)
        .filter(|&i| active[i])
        .map(|i| {
            let gm = basis[i].leading_monomial().unwrap();
            (i, gm.lcm(&hm), gm.coprime(&hm))
        })
        .collect();

    // chain criterion on the new pairs; among equal lcms keep the first
    let new_pairs: Vec<Pair> = cands
        .iter()
        .enumerate()
        .filter(|(idx, (_, l, _))| {
            !cands
                .iter()
                .enumerate()
                .any(|(jdx, (_, l2, _))| jdx != *idx && l2.divides(l) && (l2 != l || jdx < *idx))
        })
        .filter(|(_, (_, _, coprime))| !coprime)
        .map(|(_, (i, l, _))| Pair {
            i: *i,
            j: t,
            lcm: l.clone(),
        })
        .collect();

    // criterion B on old pairs
    pairs.retain(|p| {
        if !hm.divides(&p.lcm) {
            return true;
        }
        let li = basis[p.i].leading_monomial().unwrap().lcm(&hm);
        let lj = basis[p.j].leading_monomial().unwrap().lcm(&hm);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);

    for i in 0..t {
        if active[i] && hm.divides(basis[i].leading_monomial().unwrap()) {
            active[i] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

fn interreduce(ring: &Arc<Ring>, g: Vec<MultiPoly>, steps: &mut u64) -> Result<Vec<MultiPoly>> {
    // drop elements whose leading monomial is divisible by another's
    let mut min: Vec<MultiPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let pm = p.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let qm = q.leading_monomial().unwrap();
            j != i && qm.divides(pm) && (qm != pm || j < i)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<MultiPoly> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let lead = MultiPoly::from_terms(ring, vec![min[i].terms()[0].clone()]);
        let tail = MultiPoly::from_terms(ring, min[i].terms()[1..].to_vec());
        let r = reduce_full_checked(&tail, &others, steps)?;
        out.push(lead.add(&r).monic());
    }
    out.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::Field;

    fn ring(names: &[&str], order: MonomialOrder) -> Arc<Ring> {
        Ring::new(
            names.iter().map(|s| s.to_string()).collect(),
            Field::Rational,
            order,
        )
    }

    #[test]
    fn single_linear_generator() {
        let r = ring(&["x"], MonomialOrder::DegRevLex);
        let f = r.var(0).sub(&r.one());
        let i = Ideal::new(&r, vec![f.clone()]).unwrap();
        let g = groebner(&i, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(g.generators(), &[f]);
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let x = r.var(0);
        let y = r.var(1);
        let i = Ideal::new(&r, vec![x.mul(&x), x.mul(&y)]).unwrap();
        let g = groebner(&i, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(g.generators().len(), 2);
        assert!(g.generators().contains(&x.mul(&x)));
        assert!(g.generators().contains(&x.mul(&y)));
    }

    #[test]
    fn lex_basis_contains_eliminant() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let x = r.var(0);
        let y = r.var(1);
        let i = Ideal::new(&r, vec![x.mul(&x).sub(&y), y.mul(&y).sub(&x)]).unwrap();
        let g = groebner(&i, MonomialOrder::Lex).unwrap();
        let target = y.pow(4).sub(&y);
        assert!(g.generators().contains(&target));
    }

    #[test]
    fn eliminate_parametrized_parabola() {
        let r = ring(&["t", "x", "y"], MonomialOrder::DegRevLex);
        let (t, x, y) = (r.var(0), r.var(1), r.var(2));
        let i = Ideal::new(&r, vec![x.sub(&t), y.sub(&t.mul(&t))]).unwrap();
        let e = eliminate(&i, &["x", "y"]).unwrap();
        assert_eq!(e.generators().len(), 1);
        let s = e.ring().clone();
        let expect = s.var(1).sub(&s.var(0).pow(2)).monic();
        assert_eq!(e.generators()[0], expect);
    }

    #[test]
    fn eliminate_with_inverse_variable() {
        let r = ring(&["t", "x", "y"], MonomialOrder::DegRevLex);
        let (t, x, y) = (r.var(0), r.var(1), r.var(2));
        let i = Ideal::new(&r, vec![t.mul(&x).sub(&r.one()), t.mul(&y)]).unwrap();
        let e = eliminate(&i, &["x", "y"]).unwrap();
        assert_eq!(e.generators(), &[e.ring().var(1)]);
    }

    #[test]
    fn normal_form_membership() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.mul(&y).sub(&r.one()), y.pow(2).sub(&x)]).unwrap();
        let p = x.mul(&y).sub(&r.one()).mul(&x.add(&y));
        assert!(i.normal_form(&p).unwrap().is_zero());
        assert!(!i.normal_form(&r.one()).unwrap().is_zero());
    }

    #[test]
    fn idempotent_and_deterministic() {
        let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let gens = vec![
            x.mul(&x).add(&y.mul(&z)),
            y.mul(&y).sub(&x.mul(&z)),
            z.pow(3).sub(&x.mul(&y)),
        ];
        let i = Ideal::new(&r, gens).unwrap();
        let g1 = groebner(&i, MonomialOrder::DegRevLex).unwrap();
        let g2 = groebner(&i, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(g1.generators(), g2.generators());
        let again = groebner(
            &Ideal::new(&r, g1.generators().to_vec()).unwrap(),
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        assert_eq!(again.generators(), g1.generators());
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let gens = vec![
            x.mul(&y).sub(&z.pow(2)),
            x.pow(2).sub(&y.mul(&z)).add(&z),
            y.pow(2).sub(&x.mul(&z)),
        ];
        let i = Ideal::new(&r, gens).unwrap();
        let cfg = GroebnerConfig { step_budget: 3 };
        assert!(matches!(
            groebner_with(&i, MonomialOrder::DegRevLex, &cfg),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
