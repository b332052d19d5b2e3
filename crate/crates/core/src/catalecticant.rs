//! Catalecticant (symmetric flattening) matrices and the border-rank lower
//! bounds they certify.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{rank_exact, RatMatrix, Rat};
use crate::forms::{monomials, power_of_point, Form, Monomial, ProjPoint};

/// The flattening `C_a(p): S^a V* → S^{d-a} V`, with entry `(β, γ) = b_{β+γ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalecticantMatrix {
    pub a: u32,
    pub d: u32,
    pub row_index: Vec<Monomial>,
    pub col_index: Vec<Monomial>,
    pub matrix: RatMatrix,
}

impl CatalecticantMatrix {
    pub fn rank(&self) -> usize {
        rank_exact(&self.matrix)
    }
}

/// `C_a(p)` for `1 <= a <= d - 1`.
pub fn catalecticant(p: &Form, a: u32) -> Result<CatalecticantMatrix> {
    let d = p.degree();
    if a < 1 || a + 1 > d {
        return Err(Error::DegreeOutOfRange { degree: a, lo: 1, hi: d.saturating_sub(1) });
    }
    Ok(flattening(p, a))
}

/// `C_a(p)` for any `0 <= a <= d`.
pub(crate) fn flattening(p: &Form, a: u32) -> CatalecticantMatrix {
    let d = p.degree();
    assert!(a <= d);
    let row_index = monomials(p.nvars(), a);
    let col_index = monomials(p.nvars(), d - a);
    let mut matrix = RatMatrix::zeros(row_index.len(), col_index.len());
    for (i, beta) in row_index.iter().enumerate() {
        for (j, gamma) in col_index.iter().enumerate() {
            matrix[(i, j)] = p.coeff(&beta.mul(gamma));
        }
    }
    CatalecticantMatrix { a, d, row_index, col_index, matrix }
}

/// Flattening ranks for `a = 1..=⌊d/2⌋` and their maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderRankProfile {
    pub ranks: BTreeMap<u32, usize>,
    pub lower_bound: usize,
}

impl BorderRankProfile {
    /// The smallest `a` attaining the bound.
    pub fn best_a(&self) -> Option<u32> {
        self.ranks
            .iter()
            .find(|(_, &r)| r == self.lower_bound)
            .map(|(&a, _)| a)
    }
}

pub fn border_rank_lower_bound(p: &Form) -> Result<BorderRankProfile> {
    profile_with(p, false)
}

/// As [`border_rank_lower_bound`], computing the flattenings in parallel.
pub fn border_rank_lower_bound_par(p: &Form) -> Result<BorderRankProfile> {
    profile_with(p, true)
}

fn profile_with(p: &Form, parallel: bool) -> Result<BorderRankProfile> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::DegreeOutOfRange { degree: d, lo: 2, hi: u32::MAX });
    }
    let rank_at = |a: u32| (a, flattening(p, a).rank());
    let ranks: BTreeMap<u32, usize> = if parallel {
        (1..=d / 2).into_par_iter().map(rank_at).collect()
    } else {
        (1..=d / 2).map(rank_at).collect()
    };
    let lower_bound = ranks.values().copied().max().unwrap_or(0);
    Ok(BorderRankProfile { ranks, lower_bound })
}

/// `Σ λ_i v_i^d`.
pub fn sum_of_powers(decomp: &[(Rat, ProjPoint)], n: usize, d: u32) -> Form {
    decomp.iter().fold(Form::zero(n, d), |acc, (c, v)| acc.add(&power_of_point(v, d).scale(c)))
}

/// `true` iff `Σ λ_i v_i^d = p` exactly.
pub fn rank_upper_from_decomposition(p: &Form, decomp: &[(Rat, ProjPoint)], d: u32) -> Result<bool> {
    if d != p.degree() {
        return Err(Error::DegreeMismatch { expected: p.degree(), found: d });
    }
    if decomp.is_empty() {
        return Err(Error::InvalidParameter("empty decomposition".into()));
    }
    if let Some((_, v)) = decomp.iter().find(|(_, v)| v.nvars() != p.nvars()) {
        return Err(Error::WrongVariableCount { expected: p.nvars(), found: v.nvars() });
    }
    Ok(sum_of_powers(decomp, p.n(), d).sub(p).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::forms::{parse_form, parse_form_in};
    use proptest::prelude::*;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(c).unwrap()
    }

    #[test]
    fn catalecticant_examples() {
        for d in 2..7 {
            let p = parse_form_in(&format!("x0^{d}"), 2).unwrap();
            for a in 1..d {
                assert_eq!(catalecticant(&p, a).unwrap().rank(), 1);
            }
        }
        let c = catalecticant(&parse_form("x0^3*x1").unwrap(), 2).unwrap();
        assert_eq!((c.matrix.rows(), c.matrix.cols()), (3, 3));
        assert_eq!(c.matrix[(0, 1)], rat(1, 4));
        assert_eq!(c.matrix[(1, 0)], rat(1, 4));
        assert_eq!(c.rank(), 2);
        assert_eq!(catalecticant(&parse_form("x0^2 + x1^2").unwrap(), 1).unwrap().rank(), 2);
        assert!(matches!(catalecticant(&parse_form("x0^3").unwrap(), 3), Err(Error::DegreeOutOfRange { .. })));
        assert!(matches!(catalecticant(&parse_form("x0^3").unwrap(), 0), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn dimensions_follow_binomials() {
        let p = parse_form("x0^5 + x1^5 + x2^5").unwrap();
        let c = catalecticant(&p, 2).unwrap();
        assert_eq!((c.matrix.rows(), c.matrix.cols()), (6, 10));
        assert_eq!(catalecticant(&p, 3).unwrap().matrix, c.matrix.transpose());
    }

    #[test]
    fn lower_bound_examples() {
        let p = parse_form("x0^5 + x1^5 + x2^5").unwrap();
        let prof = border_rank_lower_bound(&p).unwrap();
        assert_eq!(prof.lower_bound, 3);
        assert_eq!(prof.ranks.get(&1), Some(&3));
        for d in 3..9 {
            let p = parse_form(&format!("x0^{}*x1", d - 1)).unwrap();
            assert_eq!(border_rank_lower_bound(&p).unwrap().lower_bound, 2, "d = {d}");
        }
        let p = parse_form_in("x0^6", 3).unwrap();
        assert_eq!(border_rank_lower_bound(&p).unwrap().lower_bound, 1);
        assert_eq!(border_rank_lower_bound_par(&p).unwrap(), border_rank_lower_bound(&p).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let e0 = pt(&[1, 0]);
        let e1 = pt(&[0, 1]);
        let p = parse_form("x0^2 + x1^2").unwrap();
        assert!(rank_upper_from_decomposition(&p, &[(int(1), e0.clone()), (int(1), e1.clone())], 2).unwrap());
        let p = parse_form("x0*x1").unwrap();
        let dec = [(rat(1, 4), pt(&[1, 1])), (rat(-1, 4), pt(&[1, -1]))];
        // (x0+x1)^2 - (x0-x1)^2 = 4 x0 x1
        assert!(rank_upper_from_decomposition(&p, &dec, 2).unwrap());
        let p = parse_form_in("x0^3", 1).unwrap();
        assert!(!rank_upper_from_decomposition(&p, &[(int(1), e1)], 3).unwrap());
        assert!(matches!(
            rank_upper_from_decomposition(&p, &[(int(1), e0)], 2),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    fn arb_decomposition(nvars: usize) -> impl Strategy<Value = Vec<(Rat, ProjPoint)>> {
        prop::collection::vec(
            (
                (-3i64..=3).prop_filter("nonzero", |c| *c != 0),
                prop::collection::vec(-2i64..=2, nvars).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0)),
            ),
            1..=5,
        )
        .prop_map(|terms| terms.into_iter().map(|(c, v)| (int(c), ProjPoint::from_i64(&v).unwrap())).collect())
    }

    fn unimodular(nvars: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
        // Product of an upper and a lower unitriangular integer matrix.
        prop::collection::vec(-2i64..=2, nvars * nvars * 2).prop_map(move |v| {
            let mut u = vec![vec![0i64; nvars]; nvars];
            let mut l = vec![vec![0i64; nvars]; nvars];
            for i in 0..nvars {
                for j in 0..nvars {
                    u[i][j] = if i == j { 1 } else if j > i { v[i * nvars + j] } else { 0 };
                    l[i][j] = if i == j { 1 } else if j < i { v[nvars * nvars + i * nvars + j] } else { 0 };
                }
            }
            (0..nvars)
                .map(|i| (0..nvars).map(|j| int((0..nvars).map(|k| u[i][k] * l[k][j]).sum())).collect())
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn transpose_symmetry(dec in arb_decomposition(3), d in 2u32..6) {
            let p = sum_of_powers(&dec, 2, d);
            for a in 1..d {
                let c = catalecticant(&p, a).unwrap();
                let ct = catalecticant(&p, d - a).unwrap();
                prop_assert_eq!(&ct.matrix, &c.matrix.transpose());
                prop_assert_eq!(c.rank(), ct.rank());
            }
        }

        #[test]
        fn flattening_rank_bounded_by_decomposition_length(dec in arb_decomposition(3), d in 2u32..7) {
            let p = sum_of_powers(&dec, 2, d);
            let prof = border_rank_lower_bound(&p).unwrap();
            for r in prof.ranks.values() {
                prop_assert!(*r <= dec.len());
            }
        }

        #[test]
        fn lower_bound_is_subadditive(a in arb_decomposition(3), b in arb_decomposition(3), d in 2u32..6) {
            let p = sum_of_powers(&a, 2, d);
            let q = sum_of_powers(&b, 2, d);
            let lp = border_rank_lower_bound(&p).unwrap().lower_bound;
            let lq = border_rank_lower_bound(&q).unwrap().lower_bound;
            prop_assert!(border_rank_lower_bound(&p.add(&q)).unwrap().lower_bound <= lp + lq);
        }

        #[test]
        fn lower_bound_invariant_under_change_of_variables(
            dec in arb_decomposition(3),
            g in unimodular(3),
            d in 2u32..6,
        ) {
            let p = sum_of_powers(&dec, 2, d);
            let q = p.substitute_linear(&g);
            prop_assert_eq!(
                border_rank_lower_bound(&p).unwrap().lower_bound,
                border_rank_lower_bound(&q).unwrap().lower_bound
            );
        }
    }
}
