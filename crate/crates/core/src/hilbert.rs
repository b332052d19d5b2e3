//! Hilbert polynomials, their Gotzmann decomposition and the Veronese degree
//! thresholds derived from it.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactalg::{Rat, UniPoly};
use crate::forms::factorial;

/// Safety bound on the number of Gotzmann terms.
pub const MAX_GOTZMANN_TERMS: usize = 100_000;

/// A numerical polynomial in `d`, integer-valued on the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    poly: UniPoly,
}

impl HilbertPolynomial {
    /// Checks integer values on `deg + 2` consecutive integers, which by
    /// finite differences suffices.
    pub fn new(poly: UniPoly) -> Result<Self> {
        let deg = poly.degree().unwrap_or(0);
        for d in 0..=deg as i64 + 1 {
            let v = poly.eval(&Rat::from_integer(d.into()));
            if !v.is_integer() {
                return Err(Error::NotAHilbertPolynomial(format!("value {v} at d = {d} is not an integer")));
            }
        }
        Ok(HilbertPolynomial { poly })
    }

    /// From ascending coefficients, e.g. `[1, 3]` for `3d + 1`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Result<Self> {
        Self::new(UniPoly::new(coeffs))
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn eval(&self, d: i64) -> BigInt {
        self.poly.eval(&Rat::from_integer(d.into())).to_integer()
    }
}

impl std::fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly.to_string().replace('t', "d"))
    }
}

/// `binom(d + c, a)` as a polynomial in `d`.
fn binom_shifted(c: i64, a: u32) -> UniPoly {
    let mut p = UniPoly::one();
    for j in 0..a as i64 {
        p = &p * &UniPoly::from_i64(&[c - j, 1]);
    }
    p.scale(&Rat::new(BigInt::one(), factorial(a)))
}

pub fn hp_points(r: u32) -> Result<HilbertPolynomial> {
    if r == 0 {
        return Err(Error::InvalidParameter("number of points must be positive".into()));
    }
    HilbertPolynomial::new(UniPoly::constant(Rat::from_integer(r.into())))
}

pub fn hp_projective_space(n: u32) -> Result<HilbertPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    HilbertPolynomial::new(binom_shifted(n as i64, n))
}

/// Hypersurface of degree `e` in `P^n`.
pub fn hp_hypersurface(n: u32, e: u32) -> Result<HilbertPolynomial> {
    if n == 0 || e == 0 {
        return Err(Error::InvalidParameter("dimension and degree must be positive".into()));
    }
    HilbertPolynomial::new(&binom_shifted(n as i64, n) - &binom_shifted(n as i64 - e as i64, n))
}

/// Rational normal curve of degree `n`.
pub fn hp_rnc(n: u32) -> Result<HilbertPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    HilbertPolynomial::new(UniPoly::from_i64(&[1, n as i64]))
}

/// `h_X + h_R - h_{X ∪ R}`, the Hilbert polynomial of `X ∩ R`. The zero
/// polynomial (empty intersection) is allowed here.
pub fn hp_combine(hx: &HilbertPolynomial, hr: &HilbertPolynomial, hu: &HilbertPolynomial) -> HilbertPolynomial {
    HilbertPolynomial { poly: &(&hx.poly + &hr.poly) - &hu.poly }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GotzmannDecomposition {
    /// Non-increasing `a_1 ≥ … ≥ a_m ≥ 0`.
    pub a_list: Vec<u32>,
    pub gotzmann_number: usize,
}

fn not_hilbert(msg: impl Into<String>) -> Error {
    Error::NotAHilbertPolynomial(msg.into())
}

pub fn gotzmann_number(p: &HilbertPolynomial) -> Result<GotzmannDecomposition> {
    if p.is_zero() {
        return Err(not_hilbert("zero polynomial"));
    }
    let mut rest = p.poly.clone();
    let mut a_list: Vec<u32> = Vec::new();
    while let Some(deg) = rest.degree() {
        let lead = rest.leading().unwrap().clone();
        if !lead.is_positive() {
            return Err(not_hilbert(format!("remainder {rest} has non-positive leading coefficient")));
        }
        if deg == 0 {
            // Each further term is binom(d - i + 1, 0) = 1.
            if !lead.is_integer() {
                return Err(not_hilbert(format!("constant remainder {lead} is not an integer")));
            }
            let count: usize = lead
                .to_integer()
                .try_into()
                .ok()
                .filter(|c| a_list.len() + c <= MAX_GOTZMANN_TERMS)
                .ok_or_else(|| not_hilbert("too many Gotzmann terms"))?;
            a_list.extend(std::iter::repeat_n(0, count));
            break;
        }
        if a_list.len() >= MAX_GOTZMANN_TERMS {
            return Err(not_hilbert("too many Gotzmann terms"));
        }
        let a = deg as u32;
        if a_list.last().is_some_and(|&prev| prev < a) {
            return Err(not_hilbert("Gotzmann exponents increase"));
        }
        let i = a_list.len() as i64 + 1;
        rest = &rest - &binom_shifted(a as i64 - i + 1, a);
        a_list.push(a);
    }
    let rebuilt = a_list
        .iter()
        .enumerate()
        .fold(UniPoly::zero(), |acc, (k, &a)| &acc + &binom_shifted(a as i64 - k as i64, a));
    if rebuilt != p.poly {
        return Err(not_hilbert("decomposition does not reproduce the polynomial"));
    }
    let gotzmann_number = a_list.len();
    Ok(GotzmannDecomposition { a_list, gotzmann_number })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VeroneseThresholds {
    /// Degree from which the span intersection identity holds.
    pub main: u64,
    /// Degree from which the secant variety of `X` is a component of the
    /// variety of cactus-type spans.
    pub component: u64,
    /// Degree from which rank-`r` decompositions are unique.
    pub uniqueness: u64,
}

pub fn veronese_threshold(p: &HilbertPolynomial, r: u64) -> Result<VeroneseThresholds> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let got = gotzmann_number(p)?.gotzmann_number as u64;
    let main = got + r - 1;
    Ok(VeroneseThresholds { main, component: main.max(2 * r - 2), uniqueness: 2 * r - 1 })
}
