//! Pointed schemes, span membership, uniqueness certificates and recovery of
//! border-rank-two schemes.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::binary::{binary_decompose, binary_rank, BinaryDecomposition};
use crate::catalecticant::{border_rank_lower_bound, flattening, rank_upper_from_decomposition, BorderRankProfile};
use crate::error::{Error, Result};
use crate::exactalg::{kernel_basis, rank_exact, row_space_basis, solve, RatMatrix, Rat, UniPoly};
use crate::forms::{power_of_point, restrict_to_plane, tangent_power, Form, ProjPoint};

/// A zero-dimensional scheme whose components are reduced points or
/// degree-two schemes given by a point and a tangent direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedScheme {
    entries: Vec<(ProjPoint, Option<ProjPoint>)>,
}

impl PointedScheme {
    /// Tangents are stored reduced modulo their point, so two descriptions
    /// of the same scheme compare equal.
    pub fn new(entries: Vec<(ProjPoint, Option<ProjPoint>)>) -> Result<Self> {
        let Some(nv) = entries.first().map(|e| e.0.nvars()) else {
            return Err(Error::InvalidParameter("empty scheme".into()));
        };
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(entries.len());
        for (x, t) in entries {
            if x.nvars() != nv {
                return Err(Error::WrongVariableCount { expected: nv, found: x.nvars() });
            }
            if !seen.insert(x.clone()) {
                return Err(Error::RepeatedPoint(x.to_string()));
            }
            let t = match t {
                None => None,
                Some(y) => {
                    if y.nvars() != nv {
                        return Err(Error::WrongVariableCount { expected: nv, found: y.nvars() });
                    }
                    Some(x.reduce_direction(&y).ok_or(Error::ProportionalPoints)?)
                }
            };
            out.push((x, t));
        }
        Ok(PointedScheme { entries: out })
    }

    pub fn points(points: &[ProjPoint]) -> Result<Self> {
        Self::new(points.iter().map(|p| (p.clone(), None)).collect())
    }

    pub fn entries(&self) -> &[(ProjPoint, Option<ProjPoint>)] {
        &self.entries
    }

    pub fn nvars(&self) -> usize {
        self.entries[0].0.nvars()
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().map(|(_, t)| 1 + t.is_some() as usize).sum()
    }

    /// Same scheme irrespective of entry order.
    pub fn same_as(&self, other: &PointedScheme) -> bool {
        let a: BTreeSet<_> = self.entries.iter().collect();
        let b: BTreeSet<_> = other.entries.iter().collect();
        a == b
    }
}

fn tangent_column(x: &ProjPoint, y: &ProjPoint, d: u32) -> Vec<Rat> {
    if d == 1 {
        return y.coords().to_vec();
    }
    tangent_power(x, y, d).expect("tangent is reduced and d >= 2").divided_vector()
}

/// Columns are the divided-power vectors of `x^d` for each point and
/// `x^{d-1} ℓ_y` for each tangent, in entry order.
pub fn scheme_span_matrix(scheme: &PointedScheme, d: u32) -> Result<RatMatrix> {
    let r = scheme.degree();
    if (d as usize) + 1 < r {
        return Err(Error::DegreeTooSmall { d, scheme_degree: r });
    }
    let mut columns = Vec::with_capacity(r);
    for (x, t) in scheme.entries() {
        columns.push(power_of_point(x, d).divided_vector());
        if let Some(y) = t {
            columns.push(tangent_column(x, y, d));
        }
    }
    let nrows = columns[0].len();
    Ok(RatMatrix::from_columns(nrows, &columns))
}

/// Coefficients of `p` in the columns of [`scheme_span_matrix`], or `None`
/// when `p` is not in the span.
pub fn span_membership(p: &Form, scheme: &PointedScheme, d: u32) -> Result<Option<Vec<Rat>>> {
    if p.degree() != d {
        return Err(Error::DegreeMismatch { expected: d, found: p.degree() });
    }
    if p.nvars() != scheme.nvars() {
        return Err(Error::WrongVariableCount { expected: scheme.nvars(), found: p.nvars() });
    }
    let a = scheme_span_matrix(scheme, d)?;
    Ok(solve(&a, &p.divided_vector()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    /// Rank equals border rank and the decomposition is unique up to
    /// reordering and rescaling of the points.
    Certified,
    /// The decomposition is valid but uniqueness could not be certified.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessCertificate {
    pub d: u32,
    pub r: usize,
    pub decomposition: Vec<(Rat, ProjPoint)>,
    /// `None` for linear forms, which have no flattenings.
    pub border_rank_witness: Option<BorderRankProfile>,
    pub status: CertificateStatus,
}

pub fn certify_unique(p: &Form, decomposition: &[(Rat, ProjPoint)], d: u32) -> Result<UniquenessCertificate> {
    if decomposition.iter().any(|(c, _)| c.is_zero()) {
        return Err(Error::ZeroCoefficient);
    }
    let mut seen = BTreeSet::new();
    for (_, v) in decomposition {
        if !seen.insert(v) {
            return Err(Error::RepeatedPoint(v.to_string()));
        }
    }
    if !rank_upper_from_decomposition(p, decomposition, d)? {
        return Err(Error::NotADecomposition);
    }
    let r = decomposition.len();
    let witness = if d >= 2 { Some(border_rank_lower_bound(p)?) } else { None };
    let certified = 2 * r <= d as usize + 1 && witness.as_ref().is_some_and(|w| w.lower_bound == r);
    Ok(UniquenessCertificate {
        d,
        r,
        decomposition: decomposition.to_vec(),
        border_rank_witness: witness,
        status: if certified { CertificateStatus::Certified } else { CertificateStatus::Indeterminate },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank2Recovery {
    Scheme(PointedScheme),
    NotBorderRankTwo,
    IrrationalRoots(UniPoly),
}

/// Recovers the unique scheme of degree at most two whose Veronese span
/// contains `p`, working inside the span of the order-`(d-1)` partials.
pub fn recover_rank2_scheme(p: &Form, d: u32) -> Result<Rank2Recovery> {
    if d < 3 {
        return Err(Error::DegreeTooSmall { d, scheme_degree: 2 });
    }
    if p.degree() != d {
        return Err(Error::DegreeMismatch { expected: d, found: p.degree() });
    }
    if p.is_zero() {
        return Err(Error::ZeroForm);
    }
    let partials = row_space_basis(&flattening(p, d - 1).matrix);
    match partials.len() {
        1 => {
            let x = ProjPoint::new(partials[0].clone())?;
            Ok(Rank2Recovery::Scheme(PointedScheme::points(&[x])?))
        }
        2 => {
            let w0 = ProjPoint::new(partials[0].clone())?;
            let w1 = ProjPoint::new(partials[1].clone())?;
            let q = restrict_to_plane(p, &w0, &w1)?.ok_or(Error::CertificateMismatch)?;
            let cert = binary_rank(&q)?;
            if cert.border_rank != 2 {
                return Ok(Rank2Recovery::NotBorderRankTwo);
            }
            let lift = |v: &ProjPoint| -> Result<ProjPoint> {
                let (s, t) = (&v.coords()[0], &v.coords()[1]);
                ProjPoint::new(w0.coords().iter().zip(w1.coords()).map(|(a, b)| s * a + t * b).collect())
            };
            let entries = match binary_decompose(&cert, &q)? {
                BinaryDecomposition::Waring(dec) => {
                    dec.iter().map(|(_, v)| Ok((lift(v)?, None))).collect::<Result<Vec<_>>>()?
                }
                BinaryDecomposition::Scheme { scheme, .. } => scheme
                    .entries()
                    .iter()
                    .map(|(x, t)| Ok((lift(x)?, t.as_ref().map(&lift).transpose()?)))
                    .collect::<Result<Vec<_>>>()?,
                BinaryDecomposition::IrrationalRoots { generator } => {
                    return Ok(Rank2Recovery::IrrationalRoots(generator))
                }
                BinaryDecomposition::HighMultiplicity { .. } => return Ok(Rank2Recovery::NotBorderRankTwo),
            };
            Ok(Rank2Recovery::Scheme(PointedScheme::new(entries)?))
        }
        _ => Ok(Rank2Recovery::NotBorderRankTwo),
    }
}

/// Basis of the intersection of the column spaces of `a` and `b`, from the
/// kernel of `[a | -b]`.
pub fn span_intersection(a: &RatMatrix, b: &RatMatrix) -> Vec<Vec<Rat>> {
    let neg_b = RatMatrix::from_columns(b.rows(), &(0..b.cols()).map(|j| b.column(j).iter().map(|x| -x).collect::<Vec<_>>()).collect::<Vec<_>>());
    let stacked = a.hstack(&neg_b);
    let images: Vec<Vec<Rat>> = kernel_basis(&stacked)
        .into_iter()
        .map(|k| a.mul_vec(&k[..a.cols()]))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    if images.is_empty() {
        return images;
    }
    row_space_basis(&RatMatrix::from_rows(images))
}

/// Outcome of comparing `⟨v_d(R)⟩ ∩ ⟨v_d(X)⟩` with `⟨v_d(R ∩ X)⟩` for a
/// finite point set `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanIntersectionCheck {
    pub d: u32,
    pub intersection_dim: usize,
    pub common_points: Vec<ProjPoint>,
    pub holds: bool,
}

pub fn check_span_intersection(scheme: &PointedScheme, xs: &[ProjPoint], d: u32) -> Result<SpanIntersectionCheck> {
    if xs.is_empty() {
        return Err(Error::InvalidParameter("empty point set".into()));
    }
    let x_scheme = PointedScheme::points(xs)?;
    let a = scheme_span_matrix(scheme, d)?;
    let b = scheme_span_matrix(&x_scheme, d)?;
    let inter = span_intersection(&a, &b);
    let common: Vec<ProjPoint> = scheme
        .entries()
        .iter()
        .map(|e| e.0.clone())
        .filter(|x| xs.contains(x))
        .collect();
    let mut holds = inter.len() == common.len();
    if holds && !common.is_empty() {
        let expected: Vec<Vec<Rat>> = common.iter().map(|x| power_of_point(x, d).divided_vector()).collect();
        let both = RatMatrix::from_rows(inter.iter().cloned().chain(expected).collect());
        holds = rank_exact(&both) == inter.len();
    }
    Ok(SpanIntersectionCheck { d, intersection_dim: inter.len(), common_points: common, holds })
}
