//! Dense univariate polynomials and root finding over the base field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::exact::field::{Field, Scalar};

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(c.field(), vec![c])
    }

    /// `x - a`.
    pub fn linear_root(a: &Scalar) -> Self {
        UniPoly::new(a.field(), vec![-a, a.field().one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        UniPoly::new(self.field, c)
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
            .collect();
        UniPoly::new(self.field, c)
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, c)
    }

    pub fn scale(&self, s: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Scalar::from_i64(self.field, i as i64))
            .collect();
        UniPoly::new(self.field, c)
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = &r[k - dd + j] - &(&c * dc);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (UniPoly::new(self.field, q), UniPoly::new(self.field, r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree part (characteristic zero or degree below p).
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn powmod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = UniPoly::constant(self.field.one()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Distinct roots in the base field, sorted (by residue or by value).
pub fn roots(f: &UniPoly, rng: &mut impl Rng) -> Vec<Scalar> {
    if f.is_zero() {
        return Vec::new();
    }
    let mut out = match f.field() {
        Field::Prime(p) => roots_mod_p(f, p, rng),
        Field::Rational => roots_rational(f),
    };
    out.sort_by(scalar_order);
    out.dedup();
    out
}

pub(crate) fn scalar_order(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => x.cmp(y),
        _ => a.residue().cmp(&b.residue()),
    }
}

fn roots_mod_p(f: &UniPoly, p: u64, rng: &mut impl Rng) -> Vec<Scalar> {
    let field = f.field();
    let f = f.monic();
    if f.degree() == Some(0) {
        return Vec::new();
    }
    // product of the distinct linear factors: gcd(f, x^p - x)
    let x = UniPoly::new(field, vec![field.zero(), field.one()]);
    let xp = x.powmod(p, &f);
    let g = f.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&g, p, rng, &mut out);
    out
}

fn split_linear(g: &UniPoly, p: u64, rng: &mut impl Rng, out: &mut Vec<Scalar>) {
    let field = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let g = g.monic();
            out.push(-&g.coeffs[0]);
        }
        Some(_) => {
            if p == 2 {
                for v in 0..2 {
                    let s = Scalar::from_i64(field, v);
                    if g.eval(&s).is_zero() {
                        out.push(s);
                    }
                }
                return;
            }
            // Cantor–Zassenhaus equal-degree splitting for degree-one factors
            loop {
                let a = Scalar::from_i64(field, rng.random_range(0..p) as i64);
                let shift = UniPoly::new(field, vec![a, field.one()]);
                let h = shift
                    .powmod((p - 1) / 2, g)
                    .sub(&UniPoly::constant(field.one()));
                let d = g.gcd(&h);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && Some(dd) < g.degree() {
                    let q = g.div_rem(&d).0;
                    split_linear(&d, p, rng, out);
                    split_linear(&q, p, rng, out);
                    return;
                }
            }
        }
    }
}

/// Rational roots via the rational root theorem on the primitive integer form.
fn roots_rational(f: &UniPoly) -> Vec<Scalar> {
    let f = f.squarefree();
    let mut out = Vec::new();
    let mut ints = to_primitive_integer(&f);
    // factor out x
    if ints.first().is_some_and(|c| c.is_zero()) {
        out.push(Field::Rational.zero());
        while ints.first().is_some_and(|c| c.is_zero()) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return out;
    }
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let (Some(num_divs), Some(den_divs)) = (divisors(&a0), divisors(&an)) else {
        return out;
    };
    for d in &num_divs {
        for e in &den_divs {
            if !d.gcd(e).is_one() {
                continue;
            }
            for sign in [1i32, -1] {
                let q = BigRational::new(d * BigInt::from(sign), e.clone());
                let s = Scalar::Rational(q);
                if f.eval(&s).is_zero() {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn to_primitive_integer(f: &UniPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        let q = c.as_rational().unwrap();
        lcm = lcm.lcm(q.denom());
    }
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap() * BigRational::from_integer(lcm.clone());
            q.to_integer()
        })
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in &mut ints {
            *c = &*c / &g;
        }
    }
    ints
}

/// Positive divisors by trial division; `None` when the number is too large to factor this way.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Whether `f` splits into linear factors over the base field, counting only distinct roots.
pub fn splits_completely(f: &UniPoly, rng: &mut impl Rng) -> bool {
    let sf = f.squarefree();
    roots(&sf, rng).len() == sf.degree().unwrap_or(0)
}
