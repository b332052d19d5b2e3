//! Dense order-three tensors, matrix-multiplication tensors and exact
//! checks of two border-rank degenerations.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rank_exact, Rat, RatMatrix, UniPoly};

/// Entries of a tensor: rationals, or polynomials in a degeneration
/// parameter `t`.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_scalar() -> Self;
    fn is_zero_scalar(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl Scalar for Rat {
    fn zero_scalar() -> Self {
        Rat::zero()
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for UniPoly {
    fn zero_scalar() -> Self {
        UniPoly::zero()
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<S> {
    dims: [usize; 3],
    entries: Vec<S>,
}

pub type Tensor3 = Tensor<Rat>;
pub type PolyTensor3 = Tensor<UniPoly>;

impl<S: Scalar> Tensor<S> {
    pub fn zeros(dims: [usize; 3]) -> Self {
        Tensor { dims, entries: vec![S::zero_scalar(); dims[0] * dims[1] * dims[2]] }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(i < self.dims[0] && j < self.dims[1] && k < self.dims[2], "index out of range");
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.entries[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: S) {
        let o = self.offset(i, j, k);
        self.entries[o] = value;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero_scalar)
    }

    /// Indices and values of the nonzero entries.
    pub fn support(&self) -> Vec<([usize; 3], &S)> {
        let [_, nb, nc] = self.dims;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero_scalar())
            .map(|(o, v)| ([o / (nb * nc), (o / nc) % nb, o % nc], v))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.plus(b)).collect();
        Ok(Tensor { dims: self.dims, entries })
    }

    fn add_outer(&mut self, u: &[S], v: &[S], w: &[S]) {
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero_scalar()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero_scalar()) {
                let uv = ui.times(vj);
                for (k, wk) in w.iter().enumerate().filter(|(_, x)| !x.is_zero_scalar()) {
                    let o = self.offset(i, j, k);
                    self.entries[o] = self.entries[o].plus(&uv.times(wk));
                }
            }
        }
    }
}

impl Tensor3 {
    /// Single unit entry.
    pub fn unit(dims: [usize; 3], i: usize, j: usize, k: usize) -> Self {
        let mut t = Self::zeros(dims);
        t.set(i, j, k, Rat::one());
        t
    }

    pub fn from_i64(dims: [usize; 3], entries: &[i64]) -> Result<Self> {
        if entries.len() != dims[0] * dims[1] * dims[2] {
            return Err(Error::DimMismatch(format!("{} entries for dims {:?}", entries.len(), dims)));
        }
        Ok(Tensor { dims, entries: entries.iter().map(|&x| Rat::from_integer(x.into())).collect() })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Tensor { dims: self.dims, entries: self.entries.iter().map(|x| x * c).collect() }
    }
}

/// A sum of rank-one tensors `u ⊗ v ⊗ w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankExpression<S> {
    pub dims: [usize; 3],
    pub terms: Vec<[Vec<S>; 3]>,
}

impl<S: Scalar> RankExpression<S> {
    pub fn new(dims: [usize; 3]) -> Self {
        RankExpression { dims, terms: Vec::new() }
    }

    pub fn push(&mut self, u: Vec<S>, v: Vec<S>, w: Vec<S>) -> Result<()> {
        let term = [u, v, w];
        self.check(&term)?;
        self.terms.push(term);
        Ok(())
    }

    fn check(&self, term: &[Vec<S>; 3]) -> Result<()> {
        for (mode, (vec, &n)) in term.iter().zip(&self.dims).enumerate() {
            if vec.len() != n {
                return Err(Error::DimMismatch(format!("mode {mode}: vector of length {} for dimension {n}", vec.len())));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn eval_expression<S: Scalar>(e: &RankExpression<S>) -> Result<Tensor<S>> {
    let mut out = Tensor::zeros(e.dims);
    for term in &e.terms {
        e.check(term)?;
        out.add_outer(&term[0], &term[1], &term[2]);
    }
    Ok(out)
}

/// `M_{n,m,l}`: dims `(nm, ml, ln)`, with `a_{ij}` at `i·m + j`, `b_{jk}` at
/// `j·l + k` and `c_{ki}` at `k·n + i`.
pub fn matmul_tensor(n: usize, m: usize, l: usize) -> Result<Tensor3> {
    if n == 0 || m == 0 || l == 0 {
        return Err(Error::InvalidDims(format!("({n}, {m}, {l})")));
    }
    let mut t = Tensor3::zeros([n * m, m * l, l * n]);
    for i in 0..n {
        for j in 0..m {
            for k in 0..l {
                t.set(i * m + j, j * l + k, k * n + i, Rat::one());
            }
        }
    }
    Ok(t)
}

/// Block-diagonal placement of `t2` after `t1` in every mode.
pub fn direct_sum<S: Scalar>(t1: &Tensor<S>, t2: &Tensor<S>) -> Tensor<S> {
    let [a, b, c] = t1.dims;
    let mut out = Tensor::zeros([a + t2.dims[0], b + t2.dims[1], c + t2.dims[2]]);
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                out.set(i, j, k, t1.get(i, j, k).clone());
            }
        }
    }
    for i in 0..t2.dims[0] {
        for j in 0..t2.dims[1] {
            for k in 0..t2.dims[2] {
                out.set(a + i, b + j, c + k, t2.get(i, j, k).clone());
            }
        }
    }
    out
}

/// Coefficient tensors of each power of `t`; only nonzero ones appear.
pub fn expand_family(pt: &PolyTensor3) -> BTreeMap<usize, Tensor3> {
    let mut out: BTreeMap<usize, Tensor3> = BTreeMap::new();
    for (o, p) in pt.entries.iter().enumerate() {
        for (deg, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.entry(deg).or_insert_with(|| Tensor3::zeros(pt.dims)).entries[o] = c.clone();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchoenhageReport {
    pub e: usize,
    pub l: usize,
    pub h: usize,
    pub term_count: usize,
    pub t0_zero: bool,
    pub t1_zero: bool,
    /// The `t²` coefficient equals `M_{e,1,l} ⊕ M_{1,h,1}`.
    pub t2_matches: bool,
    pub nonzero_degrees: Vec<usize>,
    pub coefficients: BTreeMap<usize, Tensor3>,
}

impl SchoenhageReport {
    pub fn holds(&self) -> bool {
        self.t0_zero && self.t1_zero && self.t2_matches
    }
}

/// The `el + 1` terms degenerating to `M_{e,1,l} ⊕ M_{1,h,1}` with
/// `h = (e-1)(l-1)`, and the expansion of their sum.
pub fn schoenhage_family(e: usize, l: usize) -> Result<(RankExpression<UniPoly>, SchoenhageReport)> {
    if e < 2 || l < 2 {
        return Err(Error::InvalidParameter(format!("need e, l >= 2, got ({e}, {l})")));
    }
    let h = (e - 1) * (l - 1);
    let dims = [e + h, l + h, e * l + 1];
    let inner = |u: usize, v: usize| u * (l - 1) + v;
    let gamma = e * l;

    // First-order perturbations: α has zero column sums and a zero last
    // column, β has zero row sums and a zero last row.
    let alpha = |i: usize, s: usize| -> Vec<(usize, i64)> {
        if s == l - 1 {
            vec![]
        } else if i < e - 1 {
            vec![(e + inner(i, s), 1)]
        } else {
            (0..e - 1).map(|u| (e + inner(u, s), -1)).collect()
        }
    };
    let beta = |i: usize, s: usize| -> Vec<(usize, i64)> {
        if i == e - 1 {
            vec![]
        } else if s < l - 1 {
            vec![(l + inner(i, s), 1)]
        } else {
            (0..l - 1).map(|v| (l + inner(i, v), -1)).collect()
        }
    };
    let vector = |n: usize, parts: &[(usize, UniPoly)]| {
        let mut out = vec![UniPoly::zero(); n];
        for (idx, c) in parts {
            out[*idx] = &out[*idx] + c;
        }
        out
    };
    let t_times = |c: i64| UniPoly::monomial(Rat::from_integer(c.into()), 1);

    let mut expr = RankExpression::new(dims);
    for i in 0..e {
        for s in 0..l {
            let mut u = vec![(i, UniPoly::one())];
            u.extend(alpha(i, s).into_iter().map(|(idx, c)| (idx, t_times(c))));
            let mut v = vec![(s, UniPoly::one())];
            v.extend(beta(i, s).into_iter().map(|(idx, c)| (idx, t_times(c))));
            let w = [(gamma, UniPoly::one()), (s * e + i, UniPoly::monomial(Rat::one(), 2))];
            expr.push(vector(dims[0], &u), vector(dims[1], &v), vector(dims[2], &w))?;
        }
    }
    let minus_a: Vec<(usize, UniPoly)> = (0..e).map(|i| (i, UniPoly::from_i64(&[-1]))).collect();
    let sum_b: Vec<(usize, UniPoly)> = (0..l).map(|s| (s, UniPoly::one())).collect();
    expr.push(vector(dims[0], &minus_a), vector(dims[1], &sum_b), vector(dims[2], &[(gamma, UniPoly::one())]))?;

    let coefficients = expand_family(&eval_expression(&expr)?);
    let target = direct_sum(&matmul_tensor(e, 1, l)?, &matmul_tensor(1, h, 1)?);
    let report = SchoenhageReport {
        e,
        l,
        h,
        term_count: expr.len(),
        t0_zero: !coefficients.contains_key(&0),
        t1_zero: !coefficients.contains_key(&1),
        t2_matches: coefficients.get(&2) == Some(&target),
        nonzero_degrees: coefficients.keys().copied().collect(),
        coefficients,
    };
    Ok((expr, report))
}

/// Labels `(i, j)` with `1 <= i, j <= 2` for the three factors of
/// `M_{2,2,2}`, written `a_{ij} ⊗ b_{jk} ⊗ c_{ik}`.
fn a_index(i: usize, j: usize) -> usize {
    (i - 1) * 2 + (j - 1)
}

fn b_index(j: usize, k: usize) -> usize {
    (j - 1) * 2 + (k - 1)
}

fn c_index(i: usize, k: usize) -> usize {
    (k - 1) * 2 + (i - 1)
}

/// A coefficient with one-based `(a, b, c)` entry labels.
type LabelledTerm = (i64, (usize, usize), (usize, usize), (usize, usize));

/// `Σ c · a ⊗ b ⊗ c` over terms given by labels.
fn mm_terms(terms: &[LabelledTerm]) -> Tensor3 {
    let mut t = Tensor3::zeros([4, 4, 4]);
    for &(coef, a, b, c) in terms {
        let (i, j, k) = (a_index(a.0, a.1), b_index(b.0, b.1), c_index(c.0, c.1));
        let v = t.get(i, j, k) + Rat::from_integer(coef.into());
        t.set(i, j, k, v);
    }
    t
}

/// The points `x1..x5` in `C² ⊗ C² ⊗ C²`, with `x5 = (a1 + a2) ⊗ b1 ⊗ c2`.
pub fn bini_points() -> [Tensor3; 5] {
    let d = [2, 2, 2];
    let e = |i, j, k| Tensor3::unit(d, i, j, k);
    let sum = |ts: &[Tensor3]| ts.iter().skip(1).fold(ts[0].clone(), |acc, t| acc.add(t).unwrap());
    [
        e(0, 0, 0),
        e(1, 1, 1),
        sum(&[e(0, 0, 0), e(0, 0, 1)]),
        sum(&[e(1, 0, 1), e(1, 1, 1)]),
        sum(&[e(0, 0, 1), e(1, 0, 1)]),
    ]
}

/// The first-order data `x1'..x4'` in the space of `M_{2,2,2}`.
pub fn bini_derivatives() -> [Tensor3; 4] {
    [
        mm_terms(&[(1, (1, 1), (1, 2), (1, 2)), (1, (1, 2), (2, 2), (1, 2)), (-1, (1, 2), (2, 1), (1, 2))]),
        mm_terms(&[(1, (1, 1), (1, 1), (1, 1)), (1, (2, 1), (1, 1), (2, 1)), (-1, (2, 1), (1, 1), (2, 2))]),
        mm_terms(&[(1, (1, 2), (2, 1), (1, 1)), (1, (1, 2), (2, 1), (1, 2))]),
        mm_terms(&[(1, (2, 1), (1, 1), (2, 2)), (1, (2, 1), (1, 2), (2, 2))]),
    ]
}

/// `M_{2,2,2}` with every term involving `a_{22}` removed.
pub fn partial_matmul_2x2() -> Tensor3 {
    let mut t = matmul_tensor(2, 2, 2).unwrap();
    let a22 = a_index(2, 2);
    for j in 0..4 {
        for k in 0..4 {
            t.set(a22, j, k, Rat::zero());
        }
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiniReport {
    /// `x5 = −x1 − x2 + x3 + x4`.
    pub x5_identity: bool,
    /// Dimension of the linear span of `x1..x4`.
    pub span_dim: usize,
    pub x5_in_span: bool,
    /// `x5` lies outside the span of every three of `x1..x4`.
    pub x5_avoids_triples: bool,
    /// `x1' + x2' + x3' + x4'` is the partial multiplication tensor.
    pub partial_product_matches: bool,
}

impl BiniReport {
    pub fn holds(&self) -> bool {
        self.x5_identity && self.span_dim == 4 && self.x5_in_span && self.x5_avoids_triples && self.partial_product_matches
    }
}

pub fn bini_check() -> BiniReport {
    bini_check_with(&bini_points(), &bini_derivatives())
}

pub fn bini_check_with(x: &[Tensor3; 5], xp: &[Tensor3; 4]) -> BiniReport {
    let combo = x[2]
        .add(&x[3])
        .and_then(|s| s.add(&x[0].scale(&Rat::from_integer((-1).into()))))
        .and_then(|s| s.add(&x[1].scale(&Rat::from_integer((-1).into()))));
    let x5_identity = combo.as_ref().ok() == Some(&x[4]);
    let rank_of = |idx: &[usize]| rank_exact(&RatMatrix::from_rows(idx.iter().map(|&i| x[i].entries().to_vec()).collect()));
    let span_dim = rank_of(&[0, 1, 2, 3]);
    let x5_in_span = rank_of(&[0, 1, 2, 3, 4]) == span_dim;
    let x5_avoids_triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .iter()
        .all(|tri| rank_of(&[tri[0], tri[1], tri[2], 4]) == rank_of(tri) + 1);
    let total = xp.iter().skip(1).try_fold(xp[0].clone(), |acc, t| acc.add(t));
    let partial_product_matches = total.ok() == Some(partial_matmul_2x2());
    BiniReport { x5_identity, span_dim, x5_in_span, x5_avoids_triples, partial_product_matches }
}
