//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};

/// Exponent vector of a monomial.
pub type Exponents = SmallVec<[u16; 16]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Elimination order: the first `k` variables form a block that dominates
    /// the rest; degrevlex inside each block.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Block(k) => {
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Variable names, coefficient field and monomial order of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub vars: Vec<String>,
    pub field: Field,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(vars: Vec<String>, field: Field, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { vars, field, order })
    }

    /// Ring with variables `prefix0..prefix{n-1}` under degrevlex.
    pub fn with_prefix(prefix: &str, n: usize, field: Field) -> Arc<Ring> {
        let vars = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Ring::new(vars, field, MonomialOrder::DegRevLex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Ring::new(self.vars.clone(), self.field, order)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> MultiPoly {
        MultiPoly::monomial(self, Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn vars_polys(self: &Arc<Self>) -> Vec<MultiPoly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn constant(self: &Arc<Self>, c: Scalar) -> MultiPoly {
        MultiPoly::monomial(self, Monomial::one(self.nvars()), c)
    }

    pub fn zero(self: &Arc<Self>) -> MultiPoly {
        MultiPoly::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> MultiPoly {
        self.constant(self.field.one())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A polynomial: terms sorted strictly decreasing in the ring's order, no
/// zero coefficients.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "exponent vector length");
        assert_eq!(c.field(), ring.field, "coefficient field");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(c.field(), ring.field, "coefficient field");
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MultiPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Homogeneous with respect to the variables whose indices are in `vars`.
    pub fn is_homogeneous_in(&self, vars: &[usize]) -> bool {
        let deg = |m: &Monomial| vars.iter().map(|&i| m.0[i] as u32).sum::<u32>();
        let mut it = self.terms.iter().map(|(m, _)| deg(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.0[var] as u32)
            .max()
            .unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        self.merge(other, None)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        let m1 = -self.field().one();
        self.merge_scaled(other, &m1, None)
    }

    fn merge(&self, other: &MultiPoly, shift: Option<&Monomial>) -> MultiPoly {
        let one = self.field().one();
        self.merge_scaled(other, &one, shift)
    }

    /// `self + c · shift · other`.
    fn merge_scaled(&self, other: &MultiPoly, c: &Scalar, shift: Option<&Monomial>) -> MultiPoly {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &(Monomial, Scalar)| -> (Monomial, Scalar) {
            let m = match shift {
                Some(s) => t.0.mul(s),
                None => t.0.clone(),
            };
            (m, &t.1 * c)
        };
        let mut pending: Option<(Monomial, Scalar)> = other.terms.first().map(shifted);
        while i < self.terms.len() || pending.is_some() {
            match (&self.terms.get(i), &pending) {
                (Some(a), Some(b)) => match ring.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push((*a).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                        pending = other.terms.get(j).map(shifted);
                    }
                    Ordering::Equal => {
                        let s = &a.1 + &b.1;
                        if !s.is_zero() {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        pending = other.terms.get(j).map(shifted);
                    }
                },
                (Some(a), None) => {
                    out.push((*a).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = other.terms.get(j).map(shifted);
                }
                (None, None) => unreachable!(),
            }
        }
        MultiPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// `self - c · m · other`, the basic reduction step.
    pub fn sub_mul_term(&self, c: &Scalar, m: &Monomial, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        let neg = -c;
        self.merge_scaled(other, &neg, Some(m))
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        // multiplying by a monomial preserves the order
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc * c))
            .collect();
        MultiPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, cc)| (m.clone(), cc * c))
            .collect();
        MultiPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-self.field().one())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = MultiPoly::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.merge_scaled(big, c, Some(m));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The polynomial without its leading term.
    pub fn drop_leading(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.clone();
                let k = e.0[var];
                e.0[var] -= 1;
                (e, c * &Scalar::from_i64(f, k as i64))
            })
            .collect();
        MultiPoly::from_terms(&self.ring, terms)
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.ring.nvars()).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars(), "evaluation point length");
        let mut acc = self.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; all images live in `target`.
    pub fn compose(&self, target: &Arc<Ring>, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let nv = self.ring.nvars();
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![target.one()]; nv];
        let mut acc = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn remap(&self, target: &Arc<Ring>, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.ring.nvars());
        let nt = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(nt);
                for (i, &k) in m.0.iter().enumerate() {
                    e.0[map[i]] += k;
                }
                (e, c.clone())
            })
            .collect();
        MultiPoly::from_terms(target, terms)
    }

    /// Same polynomial in a ring with identical variables but another order.
    pub fn reorder(&self, target: &Arc<Ring>) -> MultiPoly {
        assert_eq!(self.ring.vars, target.vars);
        assert_eq!(self.ring.field, target.field);
        MultiPoly::from_terms(target, self.terms.clone())
    }

    /// Moves into a ring over the same variables by name; fails if a used
    /// variable is missing.
    pub fn to_ring_by_name(&self, target: &Arc<Ring>) -> Result<MultiPoly> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        let used = self.support_vars();
        for (i, v) in self.ring.vars.iter().enumerate() {
            match target.var_index(v) {
                Some(k) => map.push(k),
                None if used.contains(&i) => {
                    return Err(Error::RingMismatch(format!("variable {v} missing")))
                }
                None => map.push(usize::MAX),
            }
        }
        let nt = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(nt);
                for (i, &k) in m.0.iter().enumerate() {
                    if k > 0 {
                        e.0[map[i]] += k;
                    }
                }
                (e, c.clone())
            })
            .collect();
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        MultiPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Coefficients as a dense vector over a list of monomials.
    pub fn coeff_of(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Arc<Ring> {
        Ring::new(
            vec!["x".into(), "y".into(), "z".into()],
            Field::Rational,
            MonomialOrder::DegRevLex,
        )
    }

    #[test]
    fn grevlex_breaks_ties_by_last_variable() {
        let o = MonomialOrder::DegRevLex;
        // x*z < y^2 in degrevlex
        let xz = Monomial(SmallVec::from_slice(&[1, 0, 1]));
        let y2 = Monomial(SmallVec::from_slice(&[0, 2, 0]));
        assert_eq!(o.cmp(&xz, &y2), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&xz, &y2), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        let x = Monomial(SmallVec::from_slice(&[1, 0, 0]));
        let y5 = Monomial(SmallVec::from_slice(&[0, 5, 0]));
        assert_eq!(o.cmp(&x, &y5), Ordering::Greater);
    }

    #[test]
    fn arithmetic_identities() {
        let r = ring3();
        let [x, y, z]: [MultiPoly; 3] = r.vars_polys().try_into().unwrap();
        let a = x.add(&y);
        let b = x.sub(&y);
        let lhs = a.mul(&b);
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
        assert!(lhs.sub(&rhs).is_zero());
        let p = a.pow(3).add(&z);
        assert_eq!(p.derivative(2), r.one());
        let pt = vec![
            Scalar::from_i64(r.field, 1),
            Scalar::from_i64(r.field, 2),
            Scalar::from_i64(r.field, 5),
        ];
        assert_eq!(p.eval(&pt).to_string(), "32");
    }

    #[test]
    fn compose_substitutes() {
        let r = ring3();
        let t = Ring::with_prefix("t", 1, Field::Rational);
        let tt = t.var(0);
        let images = vec![tt.clone(), tt.mul(&tt), t.one()];
        let f = r.var(1).mul(&r.var(2)).sub(&r.var(0).pow(2));
        assert!(f.compose(&t, &images).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let r = ring3();
        let f = r
            .var(0)
            .pow(2)
            .sub(&r.var(1).scale(&Scalar::from_i64(r.field, 3)))
            .add(&r.one());
        assert_eq!(f.to_string(), "x^2 - 3*y + 1");
    }
}
