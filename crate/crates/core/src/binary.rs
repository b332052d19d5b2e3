//! Rank and decomposition of binary forms through the apolar ideal.
//!
//! For a binary form of degree `d` the apolar ideal is generated in two
//! degrees `k <= d + 2 - k`. The smaller one is the border rank; the rank is
//! `k` when the degree-`k` generator is squarefree and `d + 2 - k` otherwise.

use num_traits::{One, Zero};

use crate::catalecticant::flattening;
use crate::error::{Error, Result};
use crate::exactalg::{is_squarefree, kernel_basis, rational_roots, solve, RatMatrix, Rat, UniPoly};
use crate::forms::{apply_diff, monomials, power_of_point, Form, ProjPoint};
use crate::waring::{scheme_span_matrix, PointedScheme};

/// Rank data of a binary form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRankCertificate {
    pub d: u32,
    pub border_rank: u32,
    /// Coefficients `h_j` of `Σ h_j Y0^{k-j} Y1^j`, the apolar generator in
    /// degree `k = border_rank`. A point `v` is a root iff `g(v0, v1) = 0`.
    pub homogeneous_generator: Vec<Rat>,
    /// `g(1, t)`.
    pub apolar_generator: UniPoly,
    /// Multiplicity of the root `[0:1]`; nonzero means the point at
    /// infinity of the chart `v = (1, t)` is a root.
    pub infinity_multiplicity: usize,
    pub squarefree: bool,
    pub rank: u32,
}

impl BinaryRankCertificate {
    pub fn root_at_infinity(&self) -> bool {
        self.infinity_multiplicity > 0
    }

    fn generator_form(&self) -> Form {
        let k = self.border_rank;
        Form::from_monomial_coeffs(
            1,
            k,
            monomials(2, k).into_iter().zip(self.homogeneous_generator.iter().cloned()),
        )
    }
}

pub fn binary_rank(p: &Form) -> Result<BinaryRankCertificate> {
    if p.nvars() != 2 {
        return Err(Error::WrongVariableCount { expected: 2, found: p.nvars() });
    }
    if p.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = p.degree();
    for k in 1..=d / 2 + 1 {
        // Left kernel of C_k: dual forms of degree k annihilating p.
        let kernel = kernel_basis(&flattening(p, k).matrix.transpose());
        if kernel.is_empty() {
            continue;
        }
        let (generator, squarefree) = pick_generator(&kernel, k);
        let (apolar_generator, infinity_multiplicity) = dehomogenize(&generator);
        let rank = if squarefree { k } else { d + 2 - k };
        return Ok(BinaryRankCertificate {
            d,
            border_rank: k,
            homogeneous_generator: generator,
            apolar_generator,
            infinity_multiplicity,
            squarefree,
            rank,
        });
    }
    unreachable!("C_k has more rows than columns once k > d/2")
}

fn dehomogenize(h: &[Rat]) -> (UniPoly, usize) {
    let g = UniPoly::new(h.to_vec());
    let k = h.len() - 1;
    let inf = k - g.degree().expect("generator is nonzero");
    (g, inf)
}

fn homogeneous_squarefree(h: &[Rat]) -> bool {
    let (g, inf) = dehomogenize(h);
    inf <= 1 && is_squarefree(&g).expect("generator is nonzero")
}

/// A kernel of dimension one gives the generator directly. A larger kernel
/// only happens for `k = (d+2)/2`, where the pencil has no base locus and a
/// squarefree member exists; at most `2k - 2` members of such a pencil are
/// singular, so the search below terminates.
fn pick_generator(kernel: &[Vec<Rat>], k: u32) -> (Vec<Rat>, bool) {
    if kernel.len() == 1 {
        let sf = homogeneous_squarefree(&kernel[0]);
        return (kernel[0].clone(), sf);
    }
    if let Some(v) = kernel.iter().find(|v| homogeneous_squarefree(v)) {
        return (v.clone(), true);
    }
    for step in 1..=(4 * k as i64 + 4) {
        let c = Rat::from_integer(((if step % 2 == 0 { -1 } else { 1 }) * (step + 1) / 2).into());
        let v: Vec<Rat> = kernel[0].iter().zip(&kernel[1]).map(|(a, b)| a + &c * b).collect();
        if homogeneous_squarefree(&v) {
            return (v, true);
        }
    }
    (kernel[0].clone(), false)
}

/// Outcome of [`binary_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinaryDecomposition {
    /// `p = Σ λ_i v_i^d` with distinct rational points.
    Waring(Vec<(Rat, ProjPoint)>),
    /// `p` lies in the span of the Veronese image of a scheme with double
    /// points; coefficients follow the column order of the scheme's span
    /// matrix.
    Scheme { scheme: PointedScheme, coefficients: Vec<Rat> },
    /// Some root of the generator is irrational.
    IrrationalRoots { generator: UniPoly },
    /// A rational root of multiplicity three or more.
    HighMultiplicity { generator: UniPoly },
}

pub fn binary_decompose(cert: &BinaryRankCertificate, p: &Form) -> Result<BinaryDecomposition> {
    if p.nvars() != 2 || cert.d != p.degree() || cert.homogeneous_generator.len() != cert.border_rank as usize + 1 {
        return Err(Error::CertificateMismatch);
    }
    if !apply_diff(&cert.generator_form(), p)?.is_zero() {
        return Err(Error::CertificateMismatch);
    }
    let d = p.degree();
    let g = &cert.apolar_generator;
    let mut roots: Vec<(ProjPoint, usize)> = Vec::new();
    if g.degree().unwrap() > 0 {
        for (t, m) in rational_roots(g)? {
            roots.push((ProjPoint::new(vec![Rat::one(), t])?, m));
        }
    }
    if cert.infinity_multiplicity > 0 {
        roots.push((ProjPoint::unit(2, 1), cert.infinity_multiplicity));
    }
    let found: usize = roots.iter().map(|r| r.1).sum();
    if found < cert.border_rank as usize {
        return Ok(BinaryDecomposition::IrrationalRoots { generator: g.clone() });
    }
    if roots.iter().any(|r| r.1 >= 3) {
        return Ok(BinaryDecomposition::HighMultiplicity { generator: g.clone() });
    }
    if roots.iter().all(|r| r.1 == 1) {
        let columns: Vec<Vec<Rat>> = roots.iter().map(|(v, _)| power_of_point(v, d).divided_vector()).collect();
        let target = p.divided_vector();
        let a = RatMatrix::from_columns(target.len(), &columns);
        let coeffs = solve(&a, &target).ok_or(Error::CertificateMismatch)?;
        return Ok(BinaryDecomposition::Waring(
            coeffs.into_iter().zip(roots.into_iter().map(|r| r.0)).collect(),
        ));
    }
    let entries = roots
        .into_iter()
        .map(|(v, m)| {
            let tangent = (m == 2).then(|| {
                if v.coords()[0].is_zero() {
                    ProjPoint::unit(2, 0)
                } else {
                    ProjPoint::unit(2, 1)
                }
            });
            (v, tangent)
        })
        .collect();
    let scheme = PointedScheme::new(entries)?;
    let a = scheme_span_matrix(&scheme, d)?;
    let coefficients = solve(&a, &p.divided_vector()).ok_or(Error::CertificateMismatch)?;
    Ok(BinaryDecomposition::Scheme { scheme, coefficients })
}
