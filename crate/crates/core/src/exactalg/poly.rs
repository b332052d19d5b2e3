use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{determinant, RatMatrix, Rat};
use crate::error::{Error, Result};

/// Univariate polynomial over Q, coefficients in ascending degree. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t - r`.
    pub fn linear_root(r: &Rat) -> Self {
        Self::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same polynomial scaled to integer coefficients with content 1 and a
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        let flip = ints.last().is_some_and(Signed::is_negative);
        ints.into_iter()
            .map(|c| if flip { -(c / &g) } else { c / &g })
            .collect()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    /// Descending powers of `t`, e.g. `t^2 - 1/2*t + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

/// `true` iff `gcd(g, g')` is constant.
pub fn is_squarefree(g: &UniPoly) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(g.gcd(&g.derivative()).degree() == Some(0))
}

/// All rational roots with multiplicity, ascending. Candidates come from the
/// rational-root theorem on the primitive integer form; each hit is deflated
/// out before continuing.
pub fn rational_roots(g: &UniPoly) -> Result<Vec<(Rat, usize)>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let lowest = g.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if lowest > 0 {
        roots.push((Rat::zero(), lowest));
    }
    let mut rest = UniPoly::new(g.coeffs[lowest..].to_vec());
    if rest.degree() == Some(0) {
        return Ok(roots);
    }
    let ints = rest.primitive_integer();
    let constant = ints[0].magnitude().clone();
    let lead = ints.last().unwrap().magnitude().clone();
    let nums = divisors(&constant);
    let dens = divisors(&lead);
    let mut candidates: Vec<Rat> = Vec::new();
    for p in &nums {
        for q in &dens {
            let c = Rat::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
            candidates.push(c.clone());
            candidates.push(-c);
        }
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        let mut mult = 0;
        let lin = UniPoly::linear_root(&c);
        loop {
            let (q, r) = rest.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((c, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if m > BigUint::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

/// Determinant of the Sylvester matrix of `g` and `h`.
pub fn resultant(g: &UniPoly, h: &UniPoly) -> Result<Rat> {
    if g.is_zero() || h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(resultant_formal(g.coeffs(), h.coeffs()))
}

/// Sylvester determinant with formal degrees `f.len() - 1` and
/// `g.len() - 1`; leading zeros are kept.
pub(crate) fn resultant_formal(f: &[Rat], g: &[Rat]) -> Rat {
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let mut s = RatMatrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[(n + i, i + k)] = c.clone();
        }
    }
    determinant(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&p(&[-1, 0, 1])).unwrap());
        assert!(!is_squarefree(&p(&[0, 0, 1])).unwrap());
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        assert!(!is_squarefree(&p(&[2, -3, 0, 1])).unwrap());
        assert_eq!(is_squarefree(&UniPoly::zero()), Err(Error::ZeroPolynomial));
        assert!(is_squarefree(&p(&[5])).unwrap());
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&p(&[-1, 0, 1])).unwrap(), vec![(int(-1), 1), (int(1), 1)]);
        assert_eq!(rational_roots(&p(&[-3, 2])).unwrap(), vec![(rat(3, 2), 1)]);
        assert!(rational_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        assert_eq!(
            rational_roots(&p(&[0, 0, 2, -3, 0, 1])).unwrap(),
            vec![(int(-2), 1), (int(0), 2), (int(1), 2)]
        );
        let half = UniPoly::new(vec![rat(-1, 4), int(0), int(1)]);
        assert_eq!(rational_roots(&half).unwrap(), vec![(rat(-1, 2), 1), (rat(1, 2), 1)]);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[1, 1])).unwrap(), int(2));
        assert_eq!(resultant(&p(&[0, 0, 1]), &p(&[0, 1])).unwrap(), int(0));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])).unwrap(), int(3));
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(a.gcd(&p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::new(vec![int(3), rat(-1, 2), int(1)]).to_string(), "t^2 - 1/2*t + 3");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    fn from_roots(roots: &[i64]) -> UniPoly {
        roots.iter().fold(UniPoly::one(), |acc, &r| &acc * &UniPoly::linear_root(&int(r)))
    }

    proptest! {
        #[test]
        fn resultant_vanishes_iff_common_factor(
            a in prop::collection::vec(-4i64..=4, 1..4),
            b in prop::collection::vec(-4i64..=4, 1..4),
        ) {
            let (g, h) = (from_roots(&a), from_roots(&b));
            let res = resultant(&g, &h).unwrap();
            let common = g.gcd(&h).degree().unwrap() > 0;
            prop_assert_eq!(res.is_zero(), common);
            prop_assert_eq!(common, a.iter().any(|x| b.contains(x)));
        }

        #[test]
        fn roots_of_products_are_found(
            a in prop::collection::vec((-5i64..=5, 1i64..=3), 1..5),
        ) {
            let g = a.iter().fold(UniPoly::constant(int(7)), |acc, &(n, d)| {
                &acc * &UniPoly::new(vec![int(-n), int(d)])
            });
            let roots = rational_roots(&g).unwrap();
            let total: usize = roots.iter().map(|r| r.1).sum();
            prop_assert_eq!(total, a.len());
            for (r, _) in roots {
                prop_assert!(g.eval(&r).is_zero());
            }
        }
    }
}
