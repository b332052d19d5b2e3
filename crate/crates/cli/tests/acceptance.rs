//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use apolar::binary::binary_rank;
use apolar::catalecticant::{border_rank_lower_bound, catalecticant, sum_of_powers};
use apolar::counterexamples::{
    coordinate_axes_curve, solve_conic_pair, star_membership, tangent_star, verify_counterexample, ci_cubics_conics,
    ci_cubics_pipeline, ConicSolutions, LineUnionCurve,
};
use apolar::exactalg::{Rat, UniPoly};
use apolar::forms::{monomials, parse_form_in, power_of_point, Form, Monomial, ProjPoint};
use apolar::hilbert::{gotzmann_number, HilbertPolynomial};
use apolar::tensor3::{bini_check, bini_points, eval_expression, schoenhage_family, Tensor3};
use apolar::waring::{certify_unique, check_span_intersection, recover_rank2_scheme, scheme_span_matrix, CertificateStatus, Rank2Recovery};
use apolar_cli::config::DEFAULT_SEED;
use apolar_cli::report::Report;
use apolar_cli::sweeps::{intersection_instances, rational_grid, uniqueness_forms};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Gaussian elimination over the rationals, written independently of the
/// library's fraction-free routines.
fn oracle_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for j in c..ncols {
                    let delta = &f * &m[rank][j];
                    m[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `cols · x = b`; `None` when inconsistent.
fn oracle_solve(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = cols.len();
    let mut m: Vec<Vec<Rat>> = (0..b.len()).map(|i| cols.iter().map(|c| c[i].clone()).chain([b[i].clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..n {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Rat::one() / &m[row][c];
        for j in 0..=n {
            m[row][j] = &m[row][j] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..=n {
                    let delta = &f * &m[row][j];
                    m[r][j] -= delta;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}

/// `binom(n, k)` as the polynomial `n(n-1)…(n-k+1)/k!` evaluated at `n`.
fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<(), String>,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_binary_rank() -> Result<(), String> {
    let p = parse_form_in("x0^3*x1", 1).map_err(|e| e.to_string())?;
    let cert = binary_rank(&p).map_err(|e| e.to_string())?;
    ensure(cert.rank == 4 && cert.border_rank == 2, format!("rank {}, border rank {}", cert.rank, cert.border_rank))
}

fn c1_cli() -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(["--json", "rank-binary", "-e", "x0^3*x1"])
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), "cli exited with failure")?;
    let r: Report = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(r.result["rank"] == 4 && r.result["border_rank"] == 2, "cli report disagrees")
}

fn c2_gotzmann() -> Result<(), String> {
    for r in 1..=50i64 {
        let g = gotzmann_number(&HilbertPolynomial::from_coeffs(vec![int(r)]).unwrap()).map_err(|e| e.to_string())?;
        ensure(g.gotzmann_number == r as usize, format!("Got({r}) = {}", g.gotzmann_number))?;
    }
    let g = gotzmann_number(&HilbertPolynomial::from_coeffs(vec![int(1), int(3)]).unwrap()).map_err(|e| e.to_string())?;
    ensure(g.gotzmann_number == 4 && g.a_list == vec![1, 1, 1, 0], format!("3d+1 gave {:?}", g.a_list))?;
    // Both sides are polynomials of degree one in d, so agreement at many
    // points is the identity.
    for d in 0..30i64 {
        let sum: i64 = g.a_list.iter().enumerate().map(|(i, &a)| binom(d + a as i64 - i as i64, a as i64)).sum();
        ensure(sum == 3 * d + 1, format!("decomposition sums to {sum} at d = {d}"))?;
    }
    Ok(())
}

/// `M_{e,1,l} ⊕ M_{1,h,1}` built from its definition.
fn schoenhage_target(e: usize, l: usize) -> Tensor3 {
    let h = (e - 1) * (l - 1);
    let mut t = Tensor3::zeros([e + h, l + h, e * l + 1]);
    for i in 0..e {
        for k in 0..l {
            t.set(i, k, k * e + i, int(1));
        }
    }
    for j in 0..h {
        t.set(e + j, l + j, e * l, int(1));
    }
    t
}

/// Expands `Σ u ⊗ v ⊗ w` coefficientwise in `t`.
fn expand_terms(dims: [usize; 3], terms: &[[Vec<UniPoly>; 3]]) -> Vec<Tensor3> {
    let mut out: Vec<Tensor3> = Vec::new();
    for [u, v, w] in terms {
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                for (k, c) in w.iter().enumerate() {
                    let prod = &(a * b) * c;
                    for (deg, x) in prod.coeffs().iter().enumerate() {
                        while out.len() <= deg {
                            out.push(Tensor3::zeros(dims));
                        }
                        let cur = out[deg].get(i, j, k).clone();
                        out[deg].set(i, j, k, cur + x);
                    }
                }
            }
        }
    }
    out
}

fn c3_schoenhage() -> Result<(), String> {
    let (expr, rep) = schoenhage_family(3, 2).map_err(|e| e.to_string())?;
    ensure(expr.len() == 7 && rep.term_count == 7, format!("{} terms", expr.len()))?;
    let coeffs = expand_terms(expr.dims, &expr.terms);
    let zero = Tensor3::zeros(expr.dims);
    ensure(coeffs.first().is_none_or(|t| *t == zero), "t^0 coefficient is nonzero")?;
    ensure(coeffs.get(1).is_none_or(|t| *t == zero), "t^1 coefficient is nonzero")?;
    ensure(coeffs.get(2) == Some(&schoenhage_target(3, 2)), "t^2 coefficient is not the direct sum")?;
    ensure(rep.holds(), "library report disagrees")?;
    for e in 2..=4 {
        for l in 2..=3 {
            let (expr, rep) = schoenhage_family(e, l).map_err(|e| e.to_string())?;
            let coeffs = expand_terms(expr.dims, &expr.terms);
            let zero = Tensor3::zeros(expr.dims);
            ensure(expr.len() == e * l + 1, format!("({e},{l}): {} terms", expr.len()))?;
            ensure(
                coeffs[0] == zero && coeffs[1] == zero && coeffs[2] == schoenhage_target(e, l) && rep.holds(),
                format!("({e},{l}) degeneration fails"),
            )?;
            eval_expression(&expr).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn c4_bini() -> Result<(), String> {
    let rep = bini_check();
    ensure(rep.holds(), format!("{rep:?}"))?;
    let x = bini_points();
    let combo = x[2].add(&x[3]).unwrap().add(&x[0].scale(&int(-1))).unwrap().add(&x[1].scale(&int(-1))).unwrap();
    ensure(combo == x[4], "x5 is not -x1 - x2 + x3 + x4")
}

fn c5_counterexample_grid() -> Result<(), String> {
    for k in 3..=6usize {
        let c = coordinate_axes_curve(k).map_err(|e| e.to_string())?;
        let star = tangent_star(&c).map_err(|e| e.to_string())?;
        for d in 3..=8u32 {
            let rep = verify_counterexample(&c, d).map_err(|e| e.to_string())?;
            ensure(rep.holds, format!("k = {k}, d = {d} not established"))?;
            ensure(rep.equation_degree_bound == k * (k - 1) / 2, format!("degree bound {}", rep.equation_degree_bound))?;
            let rec = recover_rank2_scheme(&rep.witness.form, d).map_err(|e| e.to_string())?;
            let Rank2Recovery::Scheme(s) = rec else { return Err(format!("k = {k}, d = {d}: no scheme recovered")) };
            let (x, t) = &s.entries()[0];
            ensure(s.entries().len() == 1 && *x == *c.vertex(), "scheme is not supported at the vertex")?;
            let t = t.as_ref().ok_or("recovered scheme has no tangent")?;
            ensure(!star_membership(&star, t).map_err(|e| e.to_string())?, format!("k = {k}, d = {d}: tangent in the star"))?;
        }
    }
    Ok(())
}

fn c6_ci_cubics() -> Result<(), String> {
    let (q1, q2) = ci_cubics_conics();
    let sols = solve_conic_pair(&q1, &q2).map_err(|e| e.to_string())?;
    let ConicSolutions::Points(pts) = sols else { return Err(format!("{sols:?}")) };
    let expected: BTreeSet<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
        .iter()
        .map(|c| ProjPoint::from_i64(c).unwrap())
        .collect();
    let found: BTreeSet<ProjPoint> = pts.iter().map(|p| p.0.clone()).collect();
    ensure(found == expected && pts.iter().all(|p| p.1 == 1), format!("points {pts:?}"))?;
    let rep = ci_cubics_pipeline().map_err(|e| e.to_string())?;
    let star = rep.star.ok_or("no tangent star")?;
    ensure(star.planes.len() == 6 && star.degree() == 6, format!("{} planes of degree {}", star.planes.len(), star.degree()))?;
    let dirs: Vec<ProjPoint> = expected.iter().map(|p| {
        let mut c = vec![int(0)];
        c.extend(p.coords().iter().cloned());
        ProjPoint::new(c).unwrap()
    }).collect();
    let curve = LineUnionCurve::new(dirs).map_err(|e| e.to_string())?;
    ensure(rep.curve.as_ref().is_some_and(|c| c.k() == 4), "pipeline curve is not four lines")?;
    ensure(tangent_star(&curve).map_err(|e| e.to_string())?.degree() == 6, "star of the four coordinate lines")
}

fn c7_main_lemma() -> Result<(), String> {
    let instances = intersection_instances(DEFAULT_SEED, 200);
    ensure(instances.len() == 200, "wrong instance count")?;
    for (i, inst) in instances.iter().enumerate() {
        ensure(inst.points.len() <= 4 && inst.scheme.degree() <= 3, format!("instance {i} out of range"))?;
        let chk = check_span_intersection(&inst.scheme, &inst.points, inst.d).map_err(|e| e.to_string())?;
        ensure(chk.holds, format!("instance {i} fails"))?;
        let a = scheme_span_matrix(&inst.scheme, inst.d).map_err(|e| e.to_string())?;
        let cols_a: Vec<Vec<Rat>> = (0..a.cols()).map(|j| a.column(j)).collect();
        let cols_b: Vec<Vec<Rat>> = inst.points.iter().map(|x| power_of_point(x, inst.d).divided_vector()).collect();
        let both: Vec<Vec<Rat>> = cols_a.iter().chain(&cols_b).cloned().collect();
        let dim = oracle_rank(&cols_a) + oracle_rank(&cols_b) - oracle_rank(&both);
        let common = inst.scheme.entries().iter().filter(|(x, _)| inst.points.contains(x)).count();
        ensure(dim == common && chk.intersection_dim == dim, format!("instance {i}: dimension {dim}, {common} common points"))?;
    }
    Ok(())
}

fn c8_uniqueness() -> Result<(), String> {
    let d = 5;
    for (i, g) in uniqueness_forms(DEFAULT_SEED, 50, d).iter().enumerate() {
        ensure(g.form.nvars() <= 3, "too many variables")?;
        let cert = certify_unique(&g.form, &g.decomposition, d).map_err(|e| e.to_string())?;
        ensure(cert.status == CertificateStatus::Certified, format!("form {i} not certified"))?;
        let grid = rational_grid(g.form.nvars());
        let powers: Vec<Vec<Rat>> = grid.iter().map(|v| power_of_point(v, d).divided_vector()).collect();
        let target = g.form.divided_vector();
        let original: BTreeSet<&ProjPoint> = g.decomposition.iter().map(|t| &t.1).collect();
        for a in 0..grid.len() {
            if let Some(x) = oracle_solve(&[powers[a].clone()], &target) {
                ensure(x[0].is_zero(), format!("form {i}: one-term decomposition at {}", grid[a]))?;
            }
            for b in a + 1..grid.len() {
                if original == BTreeSet::from([&grid[a], &grid[b]]) {
                    continue;
                }
                if let Some(x) = oracle_solve(&[powers[a].clone(), powers[b].clone()], &target) {
                    ensure(x.iter().any(Zero::is_zero), format!("form {i}: second decomposition on {} and {}", grid[a], grid[b]))?;
                }
            }
        }
    }
    Ok(())
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Form {
    Form::from_monomial_coeffs(n, d, monomials(n + 1, d).into_iter().map(|m| (m, int(rng.gen_range(-3..=3)))))
}

fn all_binary_forms(d: u32) -> Vec<Form> {
    let ms: Vec<Monomial> = monomials(2, d);
    let total = 5usize.pow(d + 1);
    (1..total)
        .map(|mut code| {
            let terms: Vec<(Monomial, Rat)> = ms
                .iter()
                .map(|m| {
                    let c = (code % 5) as i64 - 2;
                    code /= 5;
                    (m.clone(), int(c))
                })
                .collect();
            Form::from_monomial_coeffs(1, d, terms)
        })
        .filter(|f| !f.is_zero())
        .collect()
}

/// Border rank of a binary form from its Hankel matrices.
fn oracle_binary_border_rank(p: &Form) -> u32 {
    let d = p.degree();
    let b: Vec<Rat> = (0..=d).map(|j| p.coeff(&Monomial::new(vec![d - j, j]))).collect();
    (1..=d / 2 + 1)
        .find(|&a| {
            let rows: Vec<Vec<Rat>> = (0..=a).map(|i| (0..=d - a).map(|j| b[(i + j) as usize].clone()).collect()).collect();
            oracle_rank(&rows) <= a as usize
        })
        .unwrap_or(d / 2 + 1)
}

fn c9_invariants() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(2..=6);
        let p = random_form(&mut rng, n, d);
        for a in 1..d {
            let c = catalecticant(&p, a).map_err(|e| e.to_string())?;
            let ct = catalecticant(&p, d - a).map_err(|e| e.to_string())?;
            ensure(c.matrix.transpose() == ct.matrix && c.rank() == ct.rank(), "transpose symmetry fails")?;
        }
    }
    for _ in 0..100 {
        let n = rng.gen_range(1..=3usize);
        let d = rng.gen_range(2..=6);
        let r = rng.gen_range(1..=5);
        let dec: Vec<(Rat, ProjPoint)> = (0..r)
            .filter_map(|_| {
                let c: Vec<i64> = (0..=n).map(|_| rng.gen_range(-3..=3)).collect();
                ProjPoint::from_i64(&c).ok().map(|v| (int(rng.gen_range(1..=4)), v))
            })
            .collect();
        let p = sum_of_powers(&dec, n, d);
        if p.is_zero() {
            continue;
        }
        let prof = border_rank_lower_bound(&p).map_err(|e| e.to_string())?;
        ensure(prof.ranks.values().all(|&k| k <= dec.len()), "flattening rank exceeds decomposition length")?;
    }
    for d in 2..=6u32 {
        let forms = all_binary_forms(d);
        let bad: Vec<String> = forms
            .par_iter()
            .filter_map(|p| {
                let cert = binary_rank(p).ok()?;
                let half = d / 2;
                let gap_ok = cert.rank == cert.border_rank || cert.border_rank > half || cert.rank >= half + 2;
                let dichotomy = cert.rank == cert.border_rank || cert.rank == d + 2 - cert.border_rank;
                let br_ok = cert.border_rank == oracle_binary_border_rank(p);
                (!(gap_ok && dichotomy && br_ok)).then(|| p.to_string())
            })
            .collect();
        ensure(bad.is_empty(), format!("d = {d}: {} exceptions, first {:?}", bad.len(), bad.first()))?;
    }
    Ok(())
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "binary rank of x0^3*x1", limit: Duration::from_millis(100), run: c1_binary_rank },
        Criterion { id: 1, name: "rank-binary report", limit: Duration::from_secs(2), run: c1_cli },
        Criterion { id: 2, name: "Gotzmann numbers", limit: Duration::from_millis(100), run: c2_gotzmann },
        Criterion { id: 3, name: "Schönhage degeneration and sweep", limit: Duration::from_secs(5), run: c3_schoenhage },
        Criterion { id: 4, name: "Bini check", limit: Duration::from_millis(500), run: c4_bini },
        Criterion { id: 5, name: "counterexample grid", limit: Duration::from_secs(10), run: c5_counterexample_grid },
        Criterion { id: 6, name: "complete-intersection pipeline", limit: Duration::from_millis(500), run: c6_ci_cubics },
        Criterion { id: 7, name: "span intersection suite", limit: Duration::from_secs(10), run: c7_main_lemma },
        Criterion { id: 8, name: "uniqueness oracle", limit: Duration::from_secs(30), run: c8_uniqueness },
        Criterion { id: 9, name: "invariant suites", limit: Duration::from_secs(60), run: c9_invariants },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= c.limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {:?} limit)", c.limit),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {} {:<34} {:>10.3?}  {verdict}", c.id, c.name, elapsed);
    }
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
    println!("all acceptance checks passed");
}
