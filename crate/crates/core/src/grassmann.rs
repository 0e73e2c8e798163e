//! Plücker coordinates, adapted bases and the Hom model of tangent and
//! conormal spaces of Grassmannians.
//!
//! Matrices act on row vectors. A [`Direction::Tangent`] element at `L` is an
//! `(ℓ+1)×(n−ℓ)` matrix whose row `i` holds the quotient coordinates of the
//! image of the `i`-th basis row of `L`. A [`Direction::Conormal`] element is an
//! `(n−ℓ)×(ℓ+1)` matrix whose row `j` holds the `L`-coordinates of the image of
//! the `j`-th quotient basis vector.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::groebner::Ideal;
use crate::exact::matrix::{self, DenseMatrix};
use crate::exact::poly::{Monomial, MultiPoly, Ring};

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn column_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Position of a sorted index set in [`column_sets`] order.
pub fn column_set_index(n: usize, set: &[usize]) -> usize {
    // number of k-subsets lexicographically before `set`
    let k = set.len();
    let mut idx = 0;
    let mut prev: isize = -1;
    for (pos, &s) in set.iter().enumerate() {
        for v in (prev + 1) as usize..s {
            idx += binomial(n - v - 1, k - pos - 1);
        }
        prev = s as isize;
    }
    idx
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Name of the Plücker variable for an index set, e.g. `p0_2`.
pub fn pluecker_var_name(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    format!("p{}", parts.join("_"))
}

/// Polynomial ring in the Plücker variables of `Gr(ell, P^n)`.
pub fn pluecker_ring(ell: usize, n: usize, field: Field) -> Arc<Ring> {
    let vars = column_sets(n + 1, ell + 1)
        .iter()
        .map(|s| pluecker_var_name(s))
        .collect();
    Ring::new(vars, field, crate::exact::poly::MonomialOrder::DegRevLex)
}

/// A linear subspace `⟨L⟩ ⊆ K^{n+1}` with its Plücker vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceRep {
    n: usize,
    /// Projective dimension; `-1` for the zero subspace.
    ell: isize,
    basis: DenseMatrix,
    pluecker: Vec<Scalar>,
}

/// Plücker embedding of the row space of a full-rank matrix.
pub fn pluecker_embed(basis: &DenseMatrix) -> Result<SubspaceRep> {
    let k = basis.rows();
    let cols = basis.cols();
    if cols == 0 {
        return Err(Error::ShapeMismatch("ambient space must be nonzero".into()));
    }
    if basis.rank() != k {
        return Err(Error::RankDeficient(format!(
            "{k} rows of rank {}",
            basis.rank()
        )));
    }
    let field = basis.field();
    let pluecker = if k == 0 {
        vec![field.one()]
    } else {
        column_sets(cols, k)
            .iter()
            .map(|s| basis.select_columns(s).det().unwrap())
            .collect()
    };
    Ok(SubspaceRep {
        n: cols - 1,
        ell: k as isize - 1,
        basis: basis.clone(),
        pluecker,
    })
}

impl SubspaceRep {
    /// The span of arbitrary vectors of length `n+1`, with a canonical (RREF) basis.
    pub fn span(field: Field, n: usize, vecs: &[Vec<Scalar>]) -> SubspaceRep {
        let rows = matrix::span_rref(field, n + 1, vecs);
        let m = DenseMatrix::from_rows_with_cols(field, n + 1, rows).unwrap();
        pluecker_embed(&m).unwrap()
    }

    pub fn point(v: &[Scalar]) -> Result<SubspaceRep> {
        let field = v.first().map(|s| s.field()).unwrap_or(Field::Rational);
        let m = DenseMatrix::from_rows(field, vec![v.to_vec()])?;
        pluecker_embed(&m)
    }

    /// The hyperplane `{x : h·x = 0}`.
    pub fn hyperplane(h: &[Scalar]) -> Result<SubspaceRep> {
        if h.iter().all(Scalar::is_zero) {
            return Err(Error::RankDeficient("zero linear form".into()));
        }
        let field = h[0].field();
        let m = DenseMatrix::from_rows(field, vec![h.to_vec()])?;
        Ok(SubspaceRep::span(field, h.len() - 1, &m.kernel()))
    }

    pub fn zero(field: Field, n: usize) -> SubspaceRep {
        SubspaceRep::span(field, n, &[])
    }

    pub fn whole(field: Field, n: usize) -> SubspaceRep {
        pluecker_embed(&DenseMatrix::identity(field, n + 1)).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> isize {
        self.ell
    }

    /// Vector-space dimension `ℓ+1`.
    pub fn dim(&self) -> usize {
        (self.ell + 1) as usize
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &DenseMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        self.basis.to_rows()
    }

    pub fn pluecker(&self) -> &[Scalar] {
        &self.pluecker
    }

    /// Reduced row echelon basis; equal for equal subspaces.
    pub fn canonical_rows(&self) -> Vec<Vec<Scalar>> {
        matrix::span_rref(self.field(), self.n + 1, &self.basis_rows())
    }

    pub fn same_subspace(&self, other: &SubspaceRep) -> bool {
        self.n == other.n && self.canonical_rows() == other.canonical_rows()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        matrix::in_span(self.field(), &self.basis_rows(), v)
    }

    pub fn contains(&self, other: &SubspaceRep) -> bool {
        other.basis_rows().iter().all(|v| self.contains_vector(v))
    }

    pub fn join(&self, other: &SubspaceRep) -> SubspaceRep {
        let mut v = self.basis_rows();
        v.extend(other.basis_rows());
        SubspaceRep::span(self.field(), self.n, &v)
    }

    pub fn intersect(&self, other: &SubspaceRep) -> SubspaceRep {
        let rows = matrix::intersect_spans(
            self.field(),
            self.n + 1,
            &self.basis_rows(),
            &other.basis_rows(),
        );
        SubspaceRep::span(self.field(), self.n, &rows)
    }

    /// Linear forms vanishing on the subspace, as rows.
    pub fn annihilator_rows(&self) -> Vec<Vec<Scalar>> {
        if self.dim() == 0 {
            return DenseMatrix::identity(self.field(), self.n + 1).to_rows();
        }
        self.basis.kernel()
    }

    /// Whether the Plücker vectors agree up to a nonzero scalar.
    pub fn pluecker_proportional(&self, other: &[Scalar]) -> bool {
        proportional(&self.pluecker, other)
    }
}

/// Whether two nonzero vectors agree up to a nonzero scalar.
pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|s| !s.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let r = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &r) == y)
}

/// `⟨L⟩ ↦ Ann(⟨L⟩) ⊆ (K^{n+1})^*`, with dual vectors written as rows.
pub fn perp_dual(s: &SubspaceRep) -> SubspaceRep {
    SubspaceRep::span(s.field(), s.n, &s.annihilator_rows())
}

/// Sign-corrected Plücker coordinate for an arbitrary index sequence.
fn signed_index(seq: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = seq.to_vec();
    let mut neg = false;
    // bubble sort tracks the permutation sign
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                neg = !neg;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, neg))
}

/// Quadratic Plücker relations of `Gr(ell, P^n)`, reduced to a linearly
/// independent set.
pub fn pluecker_relations(ell: usize, n: usize, field: Field) -> Ideal {
    let ring = pluecker_ring(ell, n, field);
    let k = ell + 1;
    let nv = ring.nvars();
    let mut rels: Vec<MultiPoly> = Vec::new();
    if k >= 1 && k <= n {
        let m1 = -field.one();
        for i_set in column_sets(n + 1, k - 1) {
            for j_set in column_sets(n + 1, k + 1) {
                let mut terms = Vec::new();
                for (s, &j) in j_set.iter().enumerate() {
                    let mut left = i_set.clone();
                    left.push(j);
                    let right: Vec<usize> = j_set
                        .iter()
                        .enumerate()
                        .filter(|(t, _)| *t != s)
                        .map(|(_, &v)| v)
                        .collect();
                    let Some((ls, lneg)) = signed_index(&left) else {
                        continue;
                    };
                    let mut mono = Monomial::one(nv);
                    mono.0[column_set_index(n + 1, &ls)] += 1;
                    mono.0[column_set_index(n + 1, &right)] += 1;
                    let mut c = if s % 2 == 0 { field.one() } else { m1.clone() };
                    if lneg {
                        c = -c;
                    }
                    terms.push((mono, c));
                }
                let p = MultiPoly::from_terms(&ring, terms);
                if !p.is_zero() {
                    rels.push(p);
                }
            }
        }
    }
    let basis = linear_basis(&ring, &rels);
    Ideal::new(&ring, basis).unwrap()
}

/// Linearly independent combinations spanning the same space as `polys`
/// (reduced echelon form on their coefficient vectors).
pub(crate) fn linear_basis(ring: &Arc<Ring>, polys: &[MultiPoly]) -> Vec<MultiPoly> {
    if polys.is_empty() {
        return Vec::new();
    }
    let mut monos: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().iter().map(|(m, _)| m.clone()))
        .collect();
    monos.sort_by(|a, b| ring.cmp(b, a));
    monos.dedup();
    let field = ring.field;
    let rows: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| monos.iter().map(|m| p.coeff_of(m)).collect())
        .collect();
    let rk = DenseMatrix::from_rows(field, rows).unwrap().rank_kernel();
    rk.row_space
        .into_iter()
        .map(|row| {
            let terms = monos.iter().cloned().zip(row).collect();
            MultiPoly::from_terms(ring, terms)
        })
        .collect()
}

/// `x ∈ L` as the vanishing of `x ∧ p`: one bilinear form per `(ℓ+2)`-subset.
pub fn incidence_point_equations(
    x: &[MultiPoly],
    p: &[MultiPoly],
    ell: usize,
    n: usize,
) -> Vec<MultiPoly> {
    let ring = x[0].ring().clone();
    let mut out = Vec::new();
    for s in column_sets(n + 1, ell + 2) {
        let mut acc = MultiPoly::zero(&ring);
        for (r, &sr) in s.iter().enumerate() {
            let rest: Vec<usize> = s.iter().copied().filter(|&v| v != sr).collect();
            let t = x[sr].mul(&p[column_set_index(n + 1, &rest)]);
            acc = if r % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        if !acc.is_zero() {
            out.push(acc);
        }
    }
    out
}

/// `L ⊆ H` as the vanishing of the contraction `h ⌟ p`: one form per `ℓ`-subset.
pub fn incidence_hyperplane_equations(
    h: &[MultiPoly],
    p: &[MultiPoly],
    ell: usize,
    n: usize,
) -> Vec<MultiPoly> {
    let ring = h[0].ring().clone();
    let mut out = Vec::new();
    for r_set in column_sets(n + 1, ell) {
        let mut acc = MultiPoly::zero(&ring);
        for i in 0..=n {
            if r_set.contains(&i) {
                continue;
            }
            let mut full = r_set.clone();
            full.push(i);
            full.sort_unstable();
            let pos = full.iter().position(|&v| v == i).unwrap();
            let t = h[i].mul(&p[column_set_index(n + 1, &full)]);
            acc = if pos % 2 == 0 {
                acc.add(&t)
            } else {
                acc.sub(&t)
            };
        }
        if !acc.is_zero() {
            out.push(acc);
        }
    }
    out
}

/// Concrete coordinates for `K^{n+1} = ⟨L⟩ ⊕ span(e_c : c ∈ complement)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    subspace: SubspaceRep,
    complement: Vec<usize>,
    full: DenseMatrix,
    full_inv: DenseMatrix,
}

/// Adapted basis with the lexicographically first admissible complement columns.
pub fn adapted_basis(s: &SubspaceRep) -> Arc<AdaptedBasis> {
    let n1 = s.n + 1;
    let k = s.dim();
    let field = s.field();
    let complement = if k == 0 {
        (0..n1).collect()
    } else {
        column_sets(n1, n1 - k)
            .into_iter()
            .find(|c| {
                let rest: Vec<usize> = (0..n1).filter(|v| !c.contains(v)).collect();
                !s.pluecker[column_set_index(n1, &rest)].is_zero()
            })
            .expect("full-rank subspace has an admissible complement")
    };
    let mut rows = s.basis_rows();
    for &c in &complement {
        let mut e = vec![field.zero(); n1];
        e[c] = field.one();
        rows.push(e);
    }
    let full = DenseMatrix::from_rows(field, rows).unwrap();
    let full_inv = full.inverse().expect("adapted basis is invertible");
    Arc::new(AdaptedBasis {
        subspace: s.clone(),
        complement,
        full,
        full_inv,
    })
}

impl AdaptedBasis {
    pub fn subspace(&self) -> &SubspaceRep {
        &self.subspace
    }

    pub fn complement_columns(&self) -> &[usize] {
        &self.complement
    }

    pub fn full_basis(&self) -> &DenseMatrix {
        &self.full
    }

    pub fn field(&self) -> Field {
        self.subspace.field()
    }

    /// `ℓ+1`.
    pub fn k(&self) -> usize {
        self.subspace.dim()
    }

    /// `n−ℓ`.
    pub fn q(&self) -> usize {
        self.subspace.n + 1 - self.k()
    }

    /// Coordinates of `v` in the full basis: `(L-part, quotient part)`.
    pub fn coords(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let row = DenseMatrix::from_rows(self.field(), vec![v.to_vec()]).unwrap();
        let c = row.mul(&self.full_inv).unwrap().to_rows().remove(0);
        let k = self.k();
        (c[..k].to_vec(), c[k..].to_vec())
    }

    /// Ambient vector with the given quotient coordinates and zero `L`-part.
    pub fn lift_quotient(&self, q: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.subspace.n + 1];
        for (j, &c) in self.complement.iter().enumerate() {
            v[c] = q[j].clone();
        }
        v
    }

    /// Ambient vector `Σ c_i A_i`.
    pub fn from_l_coords(&self, c: &[Scalar]) -> Vec<Scalar> {
        let n1 = self.subspace.n + 1;
        let mut v = vec![self.field().zero(); n1];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for j in 0..n1 {
                v[j] = &v[j] + &(ci * self.subspace.basis.get(i, j));
            }
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `⟨L⟩ → K^{n+1}/⟨L⟩`
    Tangent,
    /// `K^{n+1}/⟨L⟩ → ⟨L⟩`
    Conormal,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Tangent => Direction::Conormal,
            Direction::Conormal => Direction::Tangent,
        }
    }
}

/// A homomorphism in the tangent or conormal model at `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    direction: Direction,
    matrix: DenseMatrix,
    basis: Arc<AdaptedBasis>,
}

impl HomElement {
    pub fn new(
        direction: Direction,
        matrix: DenseMatrix,
        basis: &Arc<AdaptedBasis>,
    ) -> Result<Self> {
        let (k, q) = (basis.k(), basis.q());
        let shape = match direction {
            Direction::Tangent => (k, q),
            Direction::Conormal => (q, k),
        };
        if (matrix.rows(), matrix.cols()) != shape {
            return Err(Error::ShapeMismatch(format!(
                "{:?} hom must be {}x{}, got {}x{}",
                direction,
                shape.0,
                shape.1,
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(HomElement {
            direction,
            matrix,
            basis: basis.clone(),
        })
    }

    pub fn zero(direction: Direction, basis: &Arc<AdaptedBasis>) -> Self {
        let (k, q) = (basis.k(), basis.q());
        let (r, c) = match direction {
            Direction::Tangent => (k, q),
            Direction::Conormal => (q, k),
        };
        HomElement::new(direction, DenseMatrix::zeros(basis.field(), r, c), basis).unwrap()
    }

    /// The rank-one conormal `v̄ ↦ (y·v) x` for a form `y` vanishing on `L`
    /// and a vector `x ∈ L`.
    pub fn conormal_rank_one(
        basis: &Arc<AdaptedBasis>,
        y: &[Scalar],
        x: &[Scalar],
    ) -> Result<Self> {
        let (xl, xq) = basis.coords(x);
        if xq.iter().any(|s| !s.is_zero()) {
            return Err(Error::Precondition("image vector must lie in L".into()));
        }
        let sub = basis.subspace();
        if sub
            .basis_rows()
            .iter()
            .any(|a| !matrix::dot(a, y).is_zero())
        {
            return Err(Error::Precondition("linear form must vanish on L".into()));
        }
        let field = basis.field();
        let rows = basis
            .complement
            .iter()
            .map(|&c| xl.iter().map(|s| s * &y[c]).collect())
            .collect();
        let m = DenseMatrix::from_rows_with_cols(field, basis.k(), rows)?;
        HomElement::new(Direction::Conormal, m, basis)
    }

    /// The rank-one tangent `a ↦ η(a) w̄` for a form `η` on the ambient space
    /// (only its restriction to `L` matters) and a vector `w`.
    pub fn tangent_rank_one(
        basis: &Arc<AdaptedBasis>,
        eta: &[Scalar],
        w: &[Scalar],
    ) -> Result<Self> {
        let (_, wq) = basis.coords(w);
        let rows = basis
            .subspace()
            .basis_rows()
            .iter()
            .map(|a| {
                let e = matrix::dot(a, eta);
                wq.iter().map(|s| s * &e).collect()
            })
            .collect();
        let m = DenseMatrix::from_rows_with_cols(basis.field(), basis.q(), rows)?;
        HomElement::new(Direction::Tangent, m, basis)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn basis(&self) -> &Arc<AdaptedBasis> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Entries flattened so that the trace pairing is the dot product:
    /// tangent entry `(i, j)` and conormal entry `(j, i)` share a slot.
    pub fn pairing_vector(&self) -> Vec<Scalar> {
        match self.direction {
            Direction::Tangent => self.matrix.to_rows().concat(),
            Direction::Conormal => self.matrix.transpose().to_rows().concat(),
        }
    }

    fn from_pairing_vector(direction: Direction, v: &[Scalar], basis: &Arc<AdaptedBasis>) -> Self {
        let (k, q) = (basis.k(), basis.q());
        let rows: Vec<Vec<Scalar>> = (0..k).map(|i| v[i * q..(i + 1) * q].to_vec()).collect();
        let t = DenseMatrix::from_rows_with_cols(basis.field(), q, rows).unwrap();
        let m = match direction {
            Direction::Tangent => t,
            Direction::Conormal => t.transpose(),
        };
        HomElement::new(direction, m, basis).unwrap()
    }

    /// `tr(φ∘ψ)` for a tangent/conormal pair at the same `L`.
    pub fn trace_pairing(&self, other: &HomElement) -> Result<Scalar> {
        if self.direction == other.direction {
            return Err(Error::Precondition(
                "trace pairing needs opposite directions".into(),
            ));
        }
        if self.basis != other.basis {
            return Err(Error::MixedBases);
        }
        Ok(matrix::dot(&self.pairing_vector(), &other.pairing_vector()))
    }

    pub fn add(&self, other: &HomElement) -> HomElement {
        assert_eq!(self.direction, other.direction);
        HomElement {
            direction: self.direction,
            matrix: self.matrix.add(&other.matrix),
            basis: self.basis.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> HomElement {
        HomElement {
            direction: self.direction,
            matrix: self.matrix.scale(c),
            basis: self.basis.clone(),
        }
    }

    /// Kernel as an ambient subspace: inside `L` for tangent homs, the
    /// preimage in `K^{n+1}` (containing `L`) for conormal homs.
    pub fn kernel_subspace(&self) -> SubspaceRep {
        let b = &self.basis;
        let field = b.field();
        let n = b.subspace().n();
        let left_kernel = self.matrix.transpose().kernel();
        match self.direction {
            Direction::Tangent => {
                let vecs: Vec<Vec<Scalar>> =
                    left_kernel.iter().map(|c| b.from_l_coords(c)).collect();
                SubspaceRep::span(field, n, &vecs)
            }
            Direction::Conormal => {
                let mut vecs = b.subspace().basis_rows();
                vecs.extend(left_kernel.iter().map(|d| b.lift_quotient(d)));
                SubspaceRep::span(field, n, &vecs)
            }
        }
    }

    /// Image as an ambient subspace: the preimage in `K^{n+1}` (containing `L`)
    /// for tangent homs, inside `L` for conormal homs.
    pub fn image_subspace(&self) -> SubspaceRep {
        let b = &self.basis;
        let field = b.field();
        let n = b.subspace().n();
        let rows = self.matrix.to_rows();
        match self.direction {
            Direction::Tangent => {
                let mut vecs = b.subspace().basis_rows();
                vecs.extend(rows.iter().map(|r| b.lift_quotient(r)));
                SubspaceRep::span(field, n, &vecs)
            }
            Direction::Conormal => {
                let vecs: Vec<Vec<Scalar>> = rows.iter().map(|r| b.from_l_coords(r)).collect();
                SubspaceRep::span(field, n, &vecs)
            }
        }
    }

    /// Ambient endomorphism `F` (row convention `v ↦ v·F`) representing the hom:
    /// for tangent homs `F` sends `A_i` to the lifted image and kills the
    /// complement; for conormal homs `F` kills `L`.
    fn ambient_lift(&self) -> DenseMatrix {
        let b = &self.basis;
        let field = b.field();
        let n1 = b.subspace().n() + 1;
        // images of the full-basis rows, then F = full^{-1} · images
        let mut images: Vec<Vec<Scalar>> = Vec::with_capacity(n1);
        let zero = vec![field.zero(); n1];
        match self.direction {
            Direction::Tangent => {
                for i in 0..b.k() {
                    images.push(b.lift_quotient(self.matrix.row(i)));
                }
                for _ in 0..b.q() {
                    images.push(zero.clone());
                }
            }
            Direction::Conormal => {
                for _ in 0..b.k() {
                    images.push(zero.clone());
                }
                for j in 0..b.q() {
                    images.push(b.from_l_coords(self.matrix.row(j)));
                }
            }
        }
        let img = DenseMatrix::from_rows(field, images).unwrap();
        b.full_inv.mul(&img).unwrap()
    }
}

/// The dual hom at `L^⊥` under `Hom(L, V/L) ≅ Hom(L^⊥, V^*/L^⊥)` (transpose).
pub fn perp_dual_hom(h: &HomElement) -> HomElement {
    let b = h.basis();
    let dual = adapted_basis(&perp_dual(b.subspace()));
    let ft = h.ambient_lift().transpose();
    let apply = |z: &[Scalar]| -> Vec<Scalar> {
        DenseMatrix::from_rows(b.field(), vec![z.to_vec()])
            .unwrap()
            .mul(&ft)
            .unwrap()
            .to_rows()
            .remove(0)
    };
    let field = b.field();
    match h.direction() {
        Direction::Tangent => {
            let rows: Vec<Vec<Scalar>> = dual
                .subspace()
                .basis_rows()
                .iter()
                .map(|z| dual.coords(&apply(z)).1)
                .collect();
            let m = DenseMatrix::from_rows_with_cols(field, dual.q(), rows).unwrap();
            HomElement::new(Direction::Tangent, m, &dual).unwrap()
        }
        Direction::Conormal => {
            let rows: Vec<Vec<Scalar>> = dual
                .complement_columns()
                .iter()
                .map(|&c| {
                    let mut e = vec![field.zero(); b.subspace().n() + 1];
                    e[c] = field.one();
                    dual.coords(&apply(&e)).0
                })
                .collect();
            let m = DenseMatrix::from_rows_with_cols(field, dual.k(), rows).unwrap();
            HomElement::new(Direction::Conormal, m, &dual).unwrap()
        }
    }
}

/// Differential of the Stiefel map at `A`: `M ↦ (A_i ↦ M_i + ⟨L⟩)`.
pub fn stiefel_differential(a: &Arc<AdaptedBasis>, m: &DenseMatrix) -> Result<HomElement> {
    let k = a.k();
    let n1 = a.subspace().n() + 1;
    if m.rows() != k || m.cols() != n1 {
        return Err(Error::ShapeMismatch(format!(
            "expected {k}x{n1} velocity matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let coords = m.mul(&a.full_inv)?;
    let cols: Vec<usize> = (k..n1).collect();
    HomElement::new(Direction::Tangent, coords.select_columns(&cols), a)
}

/// A linearly independent family of homs sharing one adapted basis, stored
/// in reduced echelon form of their pairing vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    direction: Direction,
    basis: Arc<AdaptedBasis>,
    elements: Vec<HomElement>,
}

impl HomSpace {
    /// Span of the given homs (any family; dependent elements are dropped).
    pub fn span(
        direction: Direction,
        basis: &Arc<AdaptedBasis>,
        homs: &[HomElement],
    ) -> Result<Self> {
        for h in homs {
            if h.direction != direction {
                return Err(Error::Precondition("mixed directions in hom space".into()));
            }
            if h.basis != *basis {
                return Err(Error::MixedBases);
            }
        }
        let vecs: Vec<Vec<Scalar>> = homs.iter().map(HomElement::pairing_vector).collect();
        let width = basis.k() * basis.q();
        let rows = matrix::span_rref(basis.field(), width, &vecs);
        let elements = rows
            .iter()
            .map(|r| HomElement::from_pairing_vector(direction, r, basis))
            .collect();
        Ok(HomSpace {
            direction,
            basis: basis.clone(),
            elements,
        })
    }

    /// The whole tangent or conormal Hom space at `L`.
    pub fn full(direction: Direction, basis: &Arc<AdaptedBasis>) -> Self {
        let width = basis.k() * basis.q();
        let id = DenseMatrix::identity(basis.field(), width).to_rows();
        let homs: Vec<HomElement> = id
            .iter()
            .map(|r| HomElement::from_pairing_vector(direction, r, basis))
            .collect();
        HomSpace::span(direction, basis, &homs).unwrap()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn basis(&self) -> &Arc<AdaptedBasis> {
        &self.basis
    }

    pub fn elements(&self) -> &[HomElement] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, h: &HomElement) -> bool {
        let vecs: Vec<Vec<Scalar>> = self
            .elements
            .iter()
            .map(HomElement::pairing_vector)
            .collect();
        matrix::in_span(self.basis.field(), &vecs, &h.pairing_vector())
    }

    pub fn contains_space(&self, other: &HomSpace) -> bool {
        other.elements.iter().all(|h| self.contains(h))
    }

    pub fn same_span(&self, other: &HomSpace) -> bool {
        self.direction == other.direction
            && self.basis == other.basis
            && self.elements == other.elements
    }

    /// Linear combination `Σ c_i e_i`.
    pub fn combination(&self, coeffs: &[Scalar]) -> HomElement {
        let mut acc = HomElement::zero(self.direction, &self.basis);
        for (c, e) in coeffs.iter().zip(&self.elements) {
            acc = acc.add(&e.scale(c));
        }
        acc
    }

    /// Sum of two spaces at the same point.
    pub fn sum(&self, other: &HomSpace) -> Result<HomSpace> {
        let mut all = self.elements.clone();
        all.extend(other.elements.iter().cloned());
        HomSpace::span(self.direction, &self.basis, &all)
    }
}

/// Annihilator of `space` in the opposite Hom space under `tr(φ∘ψ)`.
pub fn trace_annihilator(space: &HomSpace) -> HomSpace {
    let b = space.basis();
    let width = b.k() * b.q();
    let field = b.field();
    let kernel = if space.dim() == 0 {
        DenseMatrix::identity(field, width).to_rows()
    } else {
        let rows: Vec<Vec<Scalar>> = space
            .elements
            .iter()
            .map(HomElement::pairing_vector)
            .collect();
        DenseMatrix::from_rows(field, rows).unwrap().kernel()
    };
    let dir = space.direction.opposite();
    let homs: Vec<HomElement> = kernel
        .iter()
        .map(|v| HomElement::from_pairing_vector(dir, v, b))
        .collect();
    HomSpace::span(dir, b, &homs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn e(n1: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![q().zero(); n1];
        v[i] = q().one();
        v
    }

    #[test]
    fn column_set_indexing_round_trips() {
        for (n, k) in [(4, 2), (5, 3), (8, 4), (6, 1)] {
            for (i, s) in column_sets(n, k).iter().enumerate() {
                assert_eq!(column_set_index(n, s), i);
            }
            assert_eq!(column_sets(n, k).len(), binomial(n, k));
        }
    }

    #[test]
    fn embed_coordinate_planes() {
        let m = DenseMatrix::from_i64(q(), &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let s = pluecker_embed(&m).unwrap();
        let expect: Vec<String> = ["1", "0", "0", "0", "0", "0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(
            s.pluecker()
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
            expect
        );
        let m = DenseMatrix::from_i64(q(), &[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
        let s = pluecker_embed(&m).unwrap();
        assert!(s.pluecker()[1].is_one());
        assert_eq!(s.pluecker().iter().filter(|x| !x.is_zero()).count(), 1);
    }

    #[test]
    fn embed_by_minor_expansion() {
        let m = DenseMatrix::from_i64(q(), &[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        let s = pluecker_embed(&m).unwrap();
        let got: Vec<String> = s.pluecker().iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["-4", "-8", "-12", "-4", "-8", "-4"]);
        assert!(matches!(
            pluecker_embed(&DenseMatrix::from_i64(q(), &[&[1, 2], &[2, 4]])),
            Err(Error::RankDeficient(_))
        ));
    }

    #[test]
    fn relation_counts() {
        let r = pluecker_relations(1, 3, q());
        assert_eq!(r.generators().len(), 1);
        // p01 p23 - p02 p13 + p03 p12 up to scalar
        let ring = r.ring().clone();
        let v = |s: &str| ring.var(ring.var_index(s).unwrap());
        let expect = v("p0_1")
            .mul(&v("p2_3"))
            .sub(&v("p0_2").mul(&v("p1_3")))
            .add(&v("p0_3").mul(&v("p1_2")));
        assert_eq!(r.generators()[0].monic(), expect.monic());
        assert_eq!(pluecker_relations(0, 4, q()).generators().len(), 0);
        assert_eq!(pluecker_relations(1, 4, q()).generators().len(), 5);
    }

    #[test]
    fn adapted_basis_is_lex_first() {
        let m = DenseMatrix::from_i64(q(), &[&[0, 1, 0, 0], &[0, 0, 1, 1]]);
        let s = pluecker_embed(&m).unwrap();
        let a = adapted_basis(&s);
        assert_eq!(a.complement_columns(), &[0, 2]);
    }

    #[test]
    fn stiefel_on_coordinate_line() {
        let l =
            pluecker_embed(&DenseMatrix::from_i64(q(), &[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        let a = adapted_basis(&l);
        let inside = DenseMatrix::from_i64(q(), &[&[3, 1, 0, 0], &[0, 5, 0, 0]]);
        assert!(stiefel_differential(&a, &inside).unwrap().is_zero());
        let m = DenseMatrix::from_i64(q(), &[&[0, 0, 1, 0], &[0, 0, 0, 0]]);
        let h = stiefel_differential(&a, &m).unwrap();
        assert_eq!(h.matrix(), &DenseMatrix::from_i64(q(), &[&[1, 0], &[0, 0]]));
        assert!(h
            .kernel_subspace()
            .same_subspace(&SubspaceRep::point(&e(4, 1)).unwrap()));
    }

    #[test]
    fn annihilator_of_hand_example() {
        let l =
            pluecker_embed(&DenseMatrix::from_i64(q(), &[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        let a = adapted_basis(&l);
        // T = {φ : φ(e0) ∈ ⟨ē2⟩}: basis E(0,0), E(1,0), E(1,1)
        let mk = |r: &[&[i64]]| {
            HomElement::new(Direction::Tangent, DenseMatrix::from_i64(q(), r), &a).unwrap()
        };
        let t = HomSpace::span(
            Direction::Tangent,
            &a,
            &[
                mk(&[&[1, 0], &[0, 0]]),
                mk(&[&[0, 0], &[1, 0]]),
                mk(&[&[0, 0], &[0, 1]]),
            ],
        )
        .unwrap();
        let n = trace_annihilator(&t);
        assert_eq!(n.dim(), 1);
        let psi = &n.elements()[0];
        // ē3 ↦ e0, ē2 ↦ 0
        assert_eq!(
            psi.matrix(),
            &DenseMatrix::from_i64(q(), &[&[0, 0], &[1, 0]])
        );
        assert_eq!(psi.rank(), 1);
        assert!(psi
            .image_subspace()
            .same_subspace(&SubspaceRep::point(&e(4, 0)).unwrap()));
        assert!(trace_annihilator(&n).same_span(&t));
    }

    #[test]
    fn perp_of_coordinate_plane() {
        let l =
            pluecker_embed(&DenseMatrix::from_i64(q(), &[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        let p = perp_dual(&l);
        let expect = SubspaceRep::span(q(), 3, &[e(4, 2), e(4, 3)]);
        assert!(p.same_subspace(&expect));
        assert!(perp_dual(&p).same_subspace(&l));
        let whole = SubspaceRep::whole(q(), 3);
        assert_eq!(perp_dual(&whole).ell(), -1);
        assert_eq!(perp_dual(&whole).pluecker().len(), 1);
    }

    #[test]
    fn perp_dual_hom_swaps_kernel_and_image() {
        let l =
            pluecker_embed(&DenseMatrix::from_i64(q(), &[&[1, 2, 0, 1], &[0, 1, 1, 3]])).unwrap();
        let a = adapted_basis(&l);
        let y: Vec<Scalar> = {
            let ann = l.annihilator_rows();
            ann[0].clone()
        };
        let x = l.basis_rows()[0].clone();
        let psi = HomElement::conormal_rank_one(&a, &y, &x).unwrap();
        let d = perp_dual_hom(&psi);
        assert_eq!(d.rank(), 1);
        // ker ψ* = Ann(im ψ), im ψ* = Ann(ker ψ)
        let im = psi.image_subspace();
        let ker = psi.kernel_subspace();
        assert!(d.kernel_subspace().same_subspace(&perp_dual(&im)));
        assert!(d.image_subspace().same_subspace(&perp_dual(&ker)));
    }
}
