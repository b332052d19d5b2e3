//! Cones over finite point sets in `P^3`: unions of concurrent lines, their
//! tangent stars, and witnesses of points in `Σ₂ᵈ(X)` outside `σ₂(v_d(X))`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{determinant, primitive_integer_vector, rational_roots, resultant_formal, solve, Rat, RatMatrix, UniPoly};
use crate::forms::{binomial, power_of_point, tangent_power, Form, Monomial, ProjPoint};
use crate::waring::{recover_rank2_scheme, span_membership, PointedScheme, Rank2Recovery};

pub const MAX_LINES: usize = 12;
const WITNESS_FALLBACKS: i64 = 100;

/// Lines through a common vertex `e0` of `P^3`, one per direction in the
/// plane `x0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineUnionCurve {
    vertex: ProjPoint,
    directions: Vec<ProjPoint>,
    general_position: bool,
}

impl LineUnionCurve {
    pub fn new(directions: Vec<ProjPoint>) -> Result<Self> {
        if directions.len() < 2 {
            return Err(Error::InvalidParameter("at least two lines are required".into()));
        }
        if directions.len() > MAX_LINES {
            return Err(Error::TooManyLines { max: MAX_LINES, found: directions.len() });
        }
        for (i, u) in directions.iter().enumerate() {
            if u.nvars() != 4 {
                return Err(Error::WrongVariableCount { expected: 4, found: u.nvars() });
            }
            if !u.coords()[0].is_zero() {
                return Err(Error::InvalidParameter(format!("direction {u} is not in the plane x0 = 0")));
            }
            if directions[..i].contains(u) {
                return Err(Error::RepeatedPoint(u.to_string()));
            }
        }
        let general_position = triples(directions.len())
            .all(|(i, j, k)| !det3(&directions[i], &directions[j], &directions[k]).is_zero());
        Ok(LineUnionCurve { vertex: ProjPoint::unit(4, 0), directions, general_position })
    }

    pub fn vertex(&self) -> &ProjPoint {
        &self.vertex
    }

    pub fn directions(&self) -> &[ProjPoint] {
        &self.directions
    }

    pub fn k(&self) -> usize {
        self.directions.len()
    }

    /// Every three directions are linearly independent.
    pub fn general_position(&self) -> bool {
        self.general_position
    }
}

fn triples(k: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..k).flat_map(move |i| (i + 1..k).flat_map(move |j| (j + 1..k).map(move |l| (i, j, l))))
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |i| (i + 1..k).map(move |j| (i, j)))
}

fn det3(u: &ProjPoint, v: &ProjPoint, w: &ProjPoint) -> Rat {
    let rows: Vec<Vec<Rat>> = [u, v, w].iter().map(|p| p.coords()[1..].to_vec()).collect();
    determinant(&RatMatrix::from_rows(rows))
}

fn direction(c: &[Rat]) -> Result<ProjPoint> {
    ProjPoint::new(std::iter::once(Rat::zero()).chain(c.iter().cloned()).collect())
}

/// The coordinate axes, followed by directions `(1, t, t²)` for
/// `t = 1, 2, …`.
pub fn coordinate_axes_curve(k: usize) -> Result<LineUnionCurve> {
    if k > MAX_LINES {
        return Err(Error::TooManyLines { max: MAX_LINES, found: k });
    }
    if k < 2 {
        return Err(Error::InvalidParameter("at least two lines are required".into()));
    }
    let mut dirs: Vec<ProjPoint> = (1..=k.min(3)).map(|i| ProjPoint::unit(4, i)).collect();
    for t in 1..=k.saturating_sub(3) as i64 {
        dirs.push(ProjPoint::from_i64(&[0, 1, t, t * t])?);
    }
    let curve = LineUnionCurve::new(dirs)?;
    if !curve.general_position() {
        return Err(Error::GeneralPositionFailure);
    }
    Ok(curve)
}

/// Union of the planes spanned by pairs of lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentStar {
    /// Primitive integer normals `(n1, n2, n3)` of the planes
    /// `n1 x1 + n2 x2 + n3 x3 = 0`, one per pair of directions.
    pub normals: Vec<Vec<BigInt>>,
    pub planes: Vec<Form>,
    pub product_form: Form,
}

impl TangentStar {
    pub fn degree(&self) -> u32 {
        self.product_form.degree()
    }
}

pub fn tangent_star(c: &LineUnionCurve) -> Result<TangentStar> {
    if !c.general_position() {
        return Err(Error::GeneralPositionFailure);
    }
    let mut normals = Vec::new();
    let mut planes = Vec::new();
    for (i, j) in pairs(c.k()) {
        let (u, v) = (&c.directions[i].coords()[1..], &c.directions[j].coords()[1..]);
        let cross = [
            &u[1] * &v[2] - &u[2] * &v[1],
            &u[2] * &v[0] - &u[0] * &v[2],
            &u[0] * &v[1] - &u[1] * &v[0],
        ];
        let n = primitive_integer_vector(&cross);
        let plane = Form::from_monomial_coeffs(
            3,
            1,
            n.iter().enumerate().map(|(t, x)| (Monomial::var(4, t + 1), Rat::from_integer(x.clone()))),
        );
        normals.push(n);
        planes.push(plane);
    }
    let one = Form::from_monomial_coeffs(3, 0, [(Monomial::new(vec![0; 4]), Rat::one())]);
    let product_form = planes.iter().fold(one, |acc, p| acc.mul(p));
    Ok(TangentStar { normals, planes, product_form })
}

/// Whether the direction `m` lies on one of the planes of the star. The
/// `x0` coordinate of `m` is ignored.
pub fn star_membership(ts: &TangentStar, m: &ProjPoint) -> Result<bool> {
    if m.nvars() != 4 {
        return Err(Error::WrongVariableCount { expected: 4, found: m.nvars() });
    }
    Ok(ts.planes.iter().any(|p| p.eval(m.coords()).is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `x0^{d-1}(x0 + ℓ_m)`.
    pub form: Form,
    /// The tangent direction `m`.
    pub direction: ProjPoint,
    /// How many perturbations of the direction sum were needed.
    pub fallbacks: usize,
}

pub fn witness_point(c: &LineUnionCurve, d: u32) -> Result<Witness> {
    if d < 3 {
        return Err(Error::DegreeOutOfRange { degree: d, lo: 3, hi: u32::MAX });
    }
    let ts = tangent_star(c)?;
    let sum: Vec<Rat> = (1..4).map(|i| c.directions.iter().map(|u| &u.coords()[i]).sum()).collect();
    for j in 0..=WITNESS_FALLBACKS {
        // Perturb by the moment-curve direction (1, j, j²).
        let shift = if j == 0 { [0, 0, 0] } else { [1, j, j * j] };
        let cand: Vec<Rat> = sum.iter().zip(shift).map(|(a, b)| a + Rat::from_integer(b.into())).collect();
        let Ok(m) = direction(&cand) else { continue };
        if star_membership(&ts, &m)? {
            continue;
        }
        let x = c.vertex();
        let form = power_of_point(x, d).add(&tangent_power(x, &m, d)?);
        return Ok(Witness { form, direction: m, fallbacks: j as usize });
    }
    Err(Error::NoGenericDirection(WITNESS_FALLBACKS as usize))
}

/// Outcome of checking that a witness lies in `Σ₂ᵈ(X)` but not in
/// `σ₂(v_d(X))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub k: usize,
    pub d: u32,
    pub witness: Witness,
    /// Coefficients of the witness against `x0^d, x0^{d-1} ℓ_{u_1}, …`.
    pub curve_span_coefficients: Option<Vec<Rat>>,
    /// The degree-two scheme whose span contains the witness.
    pub scheme: Option<PointedScheme>,
    pub scheme_coefficients: Option<Vec<Rat>>,
    /// The scheme is the only one of degree at most two (holds for `d ≥ 3`).
    pub scheme_unique: bool,
    pub tangent_in_star: bool,
    pub holds: bool,
    pub conclusion: String,
    /// Equations of degree below this cannot cut out `σ₂(v_d(X))`.
    pub equation_degree_bound: usize,
}

pub const COUNTEREXAMPLE_CONCLUSION: &str = "z ∈ Σ₂ᵈ(X) \\ σ₂(v_d(X))";

pub fn verify_counterexample(c: &LineUnionCurve, d: u32) -> Result<CounterexampleReport> {
    let ts = tangent_star(c)?;
    let witness = witness_point(c, d)?;
    let z = &witness.form;
    let x = c.vertex();

    let mut columns = vec![power_of_point(x, d).divided_vector()];
    for u in &c.directions {
        columns.push(tangent_power(x, u, d)?.divided_vector());
    }
    let target = z.divided_vector();
    let curve_span_coefficients = solve(&RatMatrix::from_columns(target.len(), &columns), &target);

    let scheme = match recover_rank2_scheme(z, d)? {
        Rank2Recovery::Scheme(s) => Some(s),
        _ => None,
    };
    let scheme_coefficients = match &scheme {
        Some(s) => span_membership(z, s, d)?,
        None => None,
    };
    let tangent = scheme.as_ref().and_then(|s| match s.entries() {
        [(p, Some(t))] if p == x => Some(t.clone()),
        _ => None,
    });
    let tangent_in_star = match &tangent {
        Some(t) => star_membership(&ts, t)?,
        None => true,
    };
    let scheme_unique = d >= 3;
    let holds = curve_span_coefficients.is_some() && scheme_coefficients.is_some() && scheme_unique && !tangent_in_star;
    let k = c.k();
    Ok(CounterexampleReport {
        k,
        d,
        witness,
        curve_span_coefficients,
        scheme,
        scheme_coefficients,
        scheme_unique,
        tangent_in_star,
        holds,
        conclusion: if holds { COUNTEREXAMPLE_CONCLUSION.to_string() } else { "not established".to_string() },
        equation_degree_bound: k * (k - 1) / 2,
    })
}

/// Common zeros of two plane conics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicSolutions {
    /// Distinct points with intersection multiplicities summing to four.
    Points(Vec<(ProjPoint, usize)>),
    IrrationalSolutions,
    NotFinite,
}

fn check_conic(q: &Form) -> Result<()> {
    if q.nvars() != 3 {
        return Err(Error::WrongVariableCount { expected: 3, found: q.nvars() });
    }
    if q.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: q.degree() });
    }
    if q.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(())
}

/// `q(x·S + a·Y, Y, z·S + b·Y)` at `S = 1`, as a polynomial in `Y` with
/// formal degree two.
fn along_line(q: &Form, x: &Rat, z: &Rat, a: &Rat, b: &Rat) -> [Rat; 3] {
    let images = vec![vec![x.clone(), a.clone()], vec![Rat::zero(), Rat::one()], vec![z.clone(), b.clone()]];
    let r = q.substitute_linear(&images);
    [0, 1, 2].map(|j| r.monomial_coeff(&Monomial::new(vec![2 - j, j])))
}

fn interpolate(xs: &[Rat], ys: &[Rat]) -> UniPoly {
    let mut out = UniPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = UniPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &UniPoly::linear_root(xj);
                basis = basis.scale(&(Rat::one() / (xi - xj)));
            }
        }
        out = &out + &basis;
    }
    out
}

/// Projection centers `[a : 1 : b]`, small integers first.
fn centers() -> impl Iterator<Item = (i64, i64)> {
    (0i64..6).flat_map(|s| (-s..=s).flat_map(move |a| [(a, s - a.abs()), (a, a.abs() - s)])).skip(1)
}

enum Projection {
    Solved(ConicSolutions),
    Retry,
}

fn project_from(q1: &Form, q2: &Form, a: &Rat, b: &Rat) -> Result<Projection> {
    let one = Rat::one();
    let ts: Vec<Rat> = (0..5).map(|t| Rat::from_integer(t.into())).collect();
    let values: Vec<Rat> = ts
        .iter()
        .map(|t| resultant_formal(&along_line(q1, &one, t, a, b), &along_line(q2, &one, t, a, b)))
        .collect();
    let res = interpolate(&ts, &values);
    if res.is_zero() {
        return Ok(Projection::Solved(ConicSolutions::NotFinite));
    }
    let mut roots: Vec<(Rat, Rat, usize)> = rational_roots(&res)?.into_iter().map(|(t, m)| (one.clone(), t, m)).collect();
    let at_infinity = 4 - res.degree().unwrap();
    if at_infinity > 0 {
        roots.push((Rat::zero(), one.clone(), at_infinity));
    }
    if roots.iter().map(|r| r.2).sum::<usize>() < 4 {
        return Ok(Projection::Solved(ConicSolutions::IrrationalSolutions));
    }
    let mut points = Vec::new();
    for (x, z, mult) in roots {
        let g1 = UniPoly::new(along_line(q1, &x, &z, a, b).to_vec());
        let g2 = UniPoly::new(along_line(q2, &x, &z, a, b).to_vec());
        let g = g1.gcd(&g2);
        let ys = match g.degree() {
            Some(1) | Some(2) => rational_roots(&g)?,
            _ => return Ok(Projection::Retry),
        };
        // Two common points on one line through the center.
        if ys.len() != 1 || ys[0].1 != g.degree().unwrap() {
            return Ok(Projection::Retry);
        }
        let y = &ys[0].0;
        points.push((ProjPoint::new(vec![&x + a * y, y.clone(), &z + b * y])?, mult));
    }
    points.sort();
    Ok(Projection::Solved(ConicSolutions::Points(points)))
}

/// Common zeros of two conics in `x0, x1, x2`, by projecting from a point
/// off both conics and taking the resultant.
pub fn solve_conic_pair(q1: &Form, q2: &Form) -> Result<ConicSolutions> {
    check_conic(q1)?;
    check_conic(q2)?;
    for (a, b) in centers() {
        let (a, b) = (Rat::from_integer(a.into()), Rat::from_integer(b.into()));
        let center = [a.clone(), Rat::one(), b.clone()];
        if q1.eval(&center).is_zero() || q2.eval(&center).is_zero() {
            continue;
        }
        if let Projection::Solved(s) = project_from(q1, q2, &a, &b)? {
            return Ok(s);
        }
    }
    Err(Error::GeneralPositionFailure)
}

/// Outcome of the conic-pair pipeline: common zeros of the two lowest-degree
/// parts, the cone over them and its tangent star.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePipelineReport {
    pub q1: Form,
    pub q2: Form,
    pub solutions: ConicSolutions,
    pub curve: Option<LineUnionCurve>,
    pub star: Option<TangentStar>,
    /// Equations of degree at most this cannot define the secant variety.
    pub no_equations_up_to: Option<u32>,
}

pub fn cone_pipeline(q1: &Form, q2: &Form) -> Result<ConePipelineReport> {
    let solutions = solve_conic_pair(q1, q2)?;
    let mut curve = None;
    let mut star = None;
    if let ConicSolutions::Points(pts) = &solutions {
        if pts.len() >= 2 && pts.iter().all(|p| p.1 == 1) {
            let dirs = pts.iter().map(|(p, _)| direction(p.coords())).collect::<Result<Vec<_>>>()?;
            let c = LineUnionCurve::new(dirs)?;
            if c.general_position() {
                star = Some(tangent_star(&c)?);
            }
            curve = Some(c);
        }
    }
    let no_equations_up_to = star.as_ref().map(|s| s.degree() - 1);
    Ok(ConePipelineReport { q1: q1.clone(), q2: q2.clone(), solutions, curve, star, no_equations_up_to })
}

/// Lowest-degree parts `x1x2 − x2x3` and `x1x3 − x2x3` of the two cubics,
/// written in the variables `x0, x1, x2` of the plane of directions.
pub fn ci_cubics_conics() -> (Form, Form) {
    let q = |terms: &[([u32; 3], i64)]| {
        Form::from_monomial_coeffs(2, 2, terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), Rat::from_integer((*c).into()))))
    };
    (q(&[([1, 1, 0], 1), ([0, 1, 1], -1)]), q(&[([1, 0, 1], 1), ([0, 1, 1], -1)]))
}

pub fn ci_cubics_pipeline() -> Result<ConePipelineReport> {
    let (q1, q2) = ci_cubics_conics();
    cone_pipeline(&q1, &q2)
}

/// `C(k, 2)`.
pub fn plane_count(k: usize) -> usize {
    binomial(k as u32, 2).try_into().unwrap()
}
