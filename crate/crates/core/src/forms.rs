//! Homogeneous forms stored in divided-power coordinates.
//!
//! A form of degree `d` in `n + 1` variables is `p = Σ_α binom(d, α) b_α x^α`;
//! the stored coefficients are the `b_α`. In these coordinates the `d`-th
//! power of a point `v` has `b_α = v^α`, and contraction by a dual monomial is
//! a coefficient shift, so catalecticant entries are plain lookups.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rank_exact, solve, RatMatrix, Rat};

/// Hard limit on the number of variables.
pub const MAX_VARS: usize = 10;

/// Exponent vector. Ordered graded-lexicographically with `x0 > x1 > … > xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `x_i` in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Multinomial coefficient `d! / Π α_i!`.
    pub fn multinomial(&self) -> BigInt {
        let mut num = factorial(self.degree());
        for &e in &self.0 {
            num /= factorial(e);
        }
        num
    }

    /// `Π v_i^{α_i}`.
    pub fn eval(&self, v: &[Rat]) -> Rat {
        self.0
            .iter()
            .zip(v)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, x)| num_traits::pow(x.clone(), e as usize))
            .fold(Rat::one(), |acc, x| acc * x)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// All monomials of degree `d` in `nvars` variables, graded-lex descending
/// (`x0^d` first).
pub fn monomials(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Point of projective space, normalized so that its first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        let Some(pivot) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::ZeroPoint);
        };
        Ok(ProjPoint { coords: coords.into_iter().map(|c| c / &pivot).collect() })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// Coordinate vector `e_i` in `nvars` coordinates.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut c = vec![Rat::zero(); nvars];
        c[i] = Rat::one();
        ProjPoint { coords: c }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).unwrap()
    }

    pub fn is_proportional(&self, other: &ProjPoint) -> bool {
        // Both are normalized, so proportional points are equal.
        self == other
    }

    /// Reduces `dir` modulo this point (zeroing the coordinate at this
    /// point's pivot) and normalizes. `None` when `dir` is proportional to
    /// the point.
    pub fn reduce_direction(&self, dir: &ProjPoint) -> Option<ProjPoint> {
        let p = self.pivot();
        let f = dir.coords[p].clone();
        let reduced: Vec<Rat> = dir
            .coords
            .iter()
            .zip(&self.coords)
            .map(|(y, x)| y - &f * x)
            .collect();
        ProjPoint::new(reduced).ok()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", c.join(","))
    }
}

/// Homogeneous form in `n + 1` variables, divided-power coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    d: u32,
    coeffs: BTreeMap<Monomial, Rat>,
}

impl Form {
    pub fn zero(n: usize, d: u32) -> Self {
        Form { n, d, coeffs: BTreeMap::new() }
    }

    fn check_term(n: usize, d: u32, m: &Monomial) {
        assert_eq!(m.nvars(), n + 1, "monomial has the wrong variable count");
        assert_eq!(m.degree(), d, "monomial has the wrong degree");
    }

    /// From divided-power coefficients `b_α`.
    pub fn from_divided(n: usize, d: u32, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut f = Form::zero(n, d);
        for (m, c) in terms {
            Self::check_term(n, d, &m);
            f.add_divided(m, c);
        }
        f
    }

    /// From ordinary monomial coefficients `c_α`.
    pub fn from_monomial_coeffs(
        n: usize,
        d: u32,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> Self {
        let mut f = Form::zero(n, d);
        for (m, c) in terms {
            Self::check_term(n, d, &m);
            let b = c / Rat::from_integer(m.multinomial());
            f.add_divided(m, b);
        }
        f
    }

    fn add_divided(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    /// Index of the last variable; the form has `n + 1` variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Divided-power coefficient `b_α`.
    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.coeffs.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Ordinary coefficient `binom(d, α) b_α`.
    pub fn monomial_coeff(&self, m: &Monomial) -> Rat {
        self.coeff(m) * Rat::from_integer(m.multinomial())
    }

    /// Nonzero divided-power terms, graded-lex ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Divided-power coordinate vector over all monomials of degree `d`,
    /// graded-lex descending.
    pub fn divided_vector(&self) -> Vec<Rat> {
        monomials(self.nvars(), self.d).iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_divided_vector(n: usize, d: u32, v: &[Rat]) -> Self {
        let mons = monomials(n + 1, d);
        assert_eq!(mons.len(), v.len());
        Form::from_divided(n, d, mons.into_iter().zip(v.iter().cloned()))
    }

    fn check_same_space(&self, other: &Form) {
        assert_eq!((self.n, self.d), (other.n, other.d), "forms live in different spaces");
    }

    pub fn add(&self, other: &Form) -> Form {
        self.check_same_space(other);
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_divided(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Form {
        if c.is_zero() {
            return Form::zero(self.n, self.d);
        }
        Form {
            n: self.n,
            d: self.d,
            coeffs: self.coeffs.iter().map(|(m, b)| (m.clone(), b * c)).collect(),
        }
    }

    /// Ordinary polynomial product.
    pub fn mul(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n);
        let d = self.d + other.d;
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for m1 in self.coeffs.keys() {
            let c1 = self.monomial_coeff(m1);
            for m2 in other.coeffs.keys() {
                let c = &c1 * other.monomial_coeff(m2);
                *acc.entry(m1.mul(m2)).or_insert_with(Rat::zero) += c;
            }
        }
        Form::from_monomial_coeffs(self.n, d, acc)
    }

    /// Value of the polynomial at `v`.
    pub fn eval(&self, v: &[Rat]) -> Rat {
        assert_eq!(v.len(), self.nvars());
        self.coeffs
            .keys()
            .map(|m| self.monomial_coeff(m) * m.eval(v))
            .sum()
    }

    /// Substitutes `x_i ↦ images[i]`, each image a linear form given by its
    /// coefficient vector in `m` new variables.
    pub fn substitute_linear(&self, images: &[Vec<Rat>]) -> Form {
        assert_eq!(images.len(), self.nvars());
        let m = images.first().map_or(0, Vec::len);
        assert!(m >= 1 && images.iter().all(|v| v.len() == m));
        let linear: Vec<Form> = images
            .iter()
            .map(|v| {
                Form::from_divided(
                    m - 1,
                    1,
                    v.iter().enumerate().map(|(j, c)| (Monomial::var(m, j), c.clone())),
                )
            })
            .collect();
        let mut powers: Vec<Vec<Form>> = linear
            .iter()
            .map(|l| vec![Form::from_divided(m - 1, 0, [(Monomial(vec![0; m]), Rat::one())]), l.clone()])
            .collect();
        let mut out = Form::zero(m - 1, self.d);
        for mono in self.coeffs.keys() {
            let mut term = Form::from_divided(m - 1, 0, [(Monomial(vec![0; m]), self.monomial_coeff(mono))]);
            for (i, &e) in mono.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&linear[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_form(self))
    }
}

/// The form `v^d`; divided-power coefficients `b_α = v^α`.
pub fn power_of_point(v: &ProjPoint, d: u32) -> Form {
    let n = v.nvars() - 1;
    Form::from_divided(
        n,
        d,
        monomials(v.nvars(), d).into_iter().map(|m| {
            let c = m.eval(v.coords());
            (m, c)
        }),
    )
}

/// The form `x^{d-1} ℓ_y`, where `ℓ_y = Σ y_i x_i`.
pub fn tangent_power(x: &ProjPoint, y: &ProjPoint, d: u32) -> Result<Form> {
    if x.nvars() != y.nvars() {
        return Err(Error::WrongVariableCount { expected: x.nvars(), found: y.nvars() });
    }
    if d < 2 {
        return Err(Error::DegreeOutOfRange { degree: d, lo: 2, hi: u32::MAX });
    }
    if x.is_proportional(y) {
        return Err(Error::ProportionalPoints);
    }
    let nv = x.nvars();
    let inv_d = Rat::new(BigInt::one(), BigInt::from(d));
    let terms = monomials(nv, d).into_iter().map(|m| {
        let mut c = Rat::zero();
        for i in 0..nv {
            let e = m.exponents()[i];
            if e == 0 || y.coords()[i].is_zero() {
                continue;
            }
            let mut lower = m.exponents().to_vec();
            lower[i] -= 1;
            c += Rat::from_integer(e.into()) * &y.coords()[i] * Monomial(lower).eval(x.coords());
        }
        (m, c * &inv_d)
    });
    Ok(Form::from_divided(nv - 1, d, terms))
}

/// Contraction of `p` by the dual form `q`: the result has coefficients
/// `b'_γ = Σ_β c_β b_{β+γ}`, where `c_β` are the ordinary monomial
/// coefficients of `q`.
pub fn apply_diff(q: &Form, p: &Form) -> Result<Form> {
    if q.n != p.n {
        return Err(Error::WrongVariableCount { expected: p.nvars(), found: q.nvars() });
    }
    if q.d > p.d {
        return Err(Error::DegreeMismatch { expected: p.d, found: q.d });
    }
    let mut out = Form::zero(p.n, p.d - q.d);
    for beta in q.coeffs.keys() {
        let c = q.monomial_coeff(beta);
        for (alpha, b) in &p.coeffs {
            if let Some(gamma) = alpha.checked_div(beta) {
                out.add_divided(gamma, &c * b);
            }
        }
    }
    Ok(out)
}

/// Writes `p` as a binary form `q(s, t)` with `p = q(ℓ_{w0}, ℓ_{w1})`, so that
/// the point `(s, t)` of `q` corresponds to `s·w0 + t·w1`. `None` when `p`
/// does not lie in `S^d ⟨w0, w1⟩`.
pub fn restrict_to_plane(p: &Form, w0: &ProjPoint, w1: &ProjPoint) -> Result<Option<Form>> {
    for w in [w0, w1] {
        if w.nvars() != p.nvars() {
            return Err(Error::WrongVariableCount { expected: p.nvars(), found: w.nvars() });
        }
    }
    if w0.is_proportional(w1) {
        return Err(Error::DependentBasis);
    }
    let d = p.d;
    let images = vec![w0.coords().to_vec(), w1.coords().to_vec()];
    // Columns: images of the divided-power basis forms s^[j] t^[d-j].
    let basis = monomials(2, d);
    let columns: Vec<Vec<Rat>> = basis
        .iter()
        .map(|m| {
            Form::from_divided(1, d, [(m.clone(), Rat::one())])
                .substitute_linear(&images)
                .divided_vector()
        })
        .collect();
    let target = p.divided_vector();
    let a = RatMatrix::from_columns(target.len(), &columns);
    let Some(c) = solve(&a, &target) else {
        return Ok(None);
    };
    let q = Form::from_divided(1, d, basis.into_iter().zip(c));
    if q.substitute_linear(&images) != *p {
        return Ok(None);
    }
    Ok(Some(q))
}

/// Parses a form in the variables `x0…x9`; the variable count is one more
/// than the largest index used.
pub fn parse_form(text: &str) -> Result<Form> {
    Parser::new(text).parse(None)
}

/// Parses a form in exactly `n + 1` variables.
pub fn parse_form_in(text: &str, n: usize) -> Result<Form> {
    Parser::new(text).parse(Some(n))
}

/// Canonical text: graded-lex descending monomials with ordinary
/// coefficients, e.g. `x0^2 - 1/2*x1^2`.
pub fn format_form(f: &Form) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, _)) in f.coeffs.iter().rev().enumerate() {
        let c = f.monomial_coeff(m);
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if m.degree() == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&m.to_string());
        } else {
            out.push_str(&format!("{mag}*{m}"));
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_integer(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let v = self.integer()?;
        u32::try_from(v).map_err(|_| Error::Syntax { position: at, message: format!("{what} too large") })
    }

    fn parse(mut self, fixed_n: Option<usize>) -> Result<Form> {
        let mut terms: Vec<(Rat, Vec<(usize, u32)>)> = Vec::new();
        let mut sign = Rat::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (coef, factors) = self.term()?;
            terms.push((coef * &sign, factors));
            match self.peek() {
                None => break,
                Some(b'+') => sign = Rat::one(),
                Some(b'-') => sign = -Rat::one(),
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
            self.pos += 1;
        }
        let max_index = terms
            .iter()
            .flat_map(|(_, f)| f.iter().map(|(i, _)| *i))
            .max()
            .unwrap_or(0);
        let n = match fixed_n {
            Some(n) if max_index > n => {
                return Err(Error::WrongVariableCount { expected: n + 1, found: max_index + 1 })
            }
            Some(n) => n,
            None => max_index,
        };
        if n + 1 > MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, found: n + 1 });
        }
        let mut d = None;
        let mut mono_terms = Vec::with_capacity(terms.len());
        for (c, factors) in terms {
            let mut e = vec![0u32; n + 1];
            for (i, k) in factors {
                e[i] += k;
            }
            let m = Monomial(e);
            match d {
                None => d = Some(m.degree()),
                Some(dd) if dd != m.degree() => {
                    return Err(Error::InhomogeneousInput { expected: dd, found: m.degree() })
                }
                _ => {}
            }
            mono_terms.push((m, c));
        }
        let d = d.unwrap();
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in mono_terms {
            *acc.entry(m).or_insert_with(Rat::zero) += c;
        }
        Ok(Form::from_monomial_coeffs(n, d, acc))
    }

    fn term(&mut self) -> Result<(Rat, Vec<(usize, u32)>)> {
        let mut coef = Rat::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.integer()?;
            let mut den = BigInt::one();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                den = self.integer()?;
                if den.is_zero() {
                    return Err(Error::Syntax { position: at, message: "zero denominator".into() });
                }
            }
            coef = Rat::new(num, den);
            if self.peek() != Some(b'*') {
                return self.err("expected '*' after coefficient");
            }
            self.pos += 1;
        }
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok((coef, factors))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        if self.peek() != Some(b'x') {
            return self.err("expected a variable 'x<index>'");
        }
        self.pos += 1;
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return self.err("expected a variable index");
        }
        let index = self.small_integer("variable index")? as usize;
        if index >= MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, found: index + 1 });
        }
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.small_integer("exponent")?;
        }
        Ok((index, exp))
    }
}

/// Rank of the matrix whose columns are the given points.
pub fn point_span_rank(points: &[&ProjPoint]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Rat>> = points.iter().map(|p| p.coords().to_vec()).collect();
    rank_exact(&RatMatrix::from_columns(points[0].nvars(), &cols))
}
