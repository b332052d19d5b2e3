//! Seeded random instances for the span-intersection and uniqueness sweeps.

use apolar::catalecticant::sum_of_powers;
use apolar::exactalg::Rat;
use apolar::forms::{Form, ProjPoint};
use apolar::waring::PointedScheme;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A point set `X`, a scheme `R` and the degree `d = deg R - 1 + |X|`.
#[derive(Clone, Debug)]
pub struct IntersectionInstance {
    pub points: Vec<ProjPoint>,
    pub scheme: PointedScheme,
    pub d: u32,
}

fn random_point(rng: &mut ChaCha8Rng, nvars: usize) -> ProjPoint {
    loop {
        let c: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-3..=3)).collect();
        if let Ok(p) = ProjPoint::from_i64(&c) {
            return p;
        }
    }
}

fn distinct_points(rng: &mut ChaCha8Rng, nvars: usize, count: usize, avoid: &[ProjPoint]) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_point(rng, nvars);
        if !out.contains(&p) && !avoid.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Instances in `P^2` with `|X| <= 4` and `deg R <= 3`; `R` shares a
/// random number of its points with `X`.
pub fn intersection_instances(seed: u64, count: usize) -> Vec<IntersectionInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let s = rng.gen_range(1..=4);
            let points = distinct_points(&mut rng, 3, s, &[]);
            let r = rng.gen_range(1..=3usize);
            let with_tangent = r >= 2 && rng.gen_bool(0.5);
            let support = if with_tangent { r - 1 } else { r };
            let shared = rng.gen_range(0..=support.min(s));
            let mut supp: Vec<ProjPoint> = points.choose_multiple(&mut rng, shared).cloned().collect();
            supp.extend(distinct_points(&mut rng, 3, support - shared, &points));
            let mut entries: Vec<(ProjPoint, Option<ProjPoint>)> = supp.into_iter().map(|p| (p, None)).collect();
            if with_tangent {
                let x = entries[0].0.clone();
                let t = loop {
                    let t = random_point(&mut rng, 3);
                    if !t.is_proportional(&x) {
                        break t;
                    }
                };
                entries[0].1 = Some(t);
            }
            let scheme = PointedScheme::new(entries).expect("points are distinct and tangents reduced");
            let d = (scheme.degree() - 1 + s) as u32;
            IntersectionInstance { points, scheme, d }
        })
        .collect()
}

/// The fixed grid of candidate support points: `[1 : a]` in two
/// variables, `[1 : a : b]` in three, plus `[0 : 1]` / `[0 : 1 : 0]`.
pub fn rational_grid(nvars: usize) -> Vec<ProjPoint> {
    let vals: Vec<Rat> = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-1, 2), (-3, 1)]
        .iter()
        .map(|&(n, d)| Rat::new(n.into(), d.into()))
        .collect();
    let one = Rat::from_integer(1.into());
    let zero = Rat::from_integer(0.into());
    let mut out = Vec::new();
    match nvars {
        2 => {
            out.extend(vals.iter().map(|a| ProjPoint::new(vec![one.clone(), a.clone()]).unwrap()));
            out.push(ProjPoint::new(vec![zero, one]).unwrap());
        }
        3 => {
            for a in &vals {
                for b in &vals[..3] {
                    out.push(ProjPoint::new(vec![one.clone(), a.clone(), b.clone()]).unwrap());
                }
            }
            out.push(ProjPoint::new(vec![zero.clone(), one, zero]).unwrap());
        }
        _ => panic!("grid is defined for two or three variables"),
    }
    out
}

/// A rank-two form with support drawn from [`rational_grid`].
#[derive(Clone, Debug)]
pub struct GridForm {
    pub form: Form,
    pub decomposition: Vec<(Rat, ProjPoint)>,
}

pub fn uniqueness_forms(seed: u64, count: usize, d: u32) -> Vec<GridForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let nvars = rng.gen_range(2..=3);
            let grid = rational_grid(nvars);
            let pts: Vec<ProjPoint> = grid.choose_multiple(&mut rng, 2).cloned().collect();
            let decomposition: Vec<(Rat, ProjPoint)> = pts
                .into_iter()
                .map(|p| {
                    let c = *[-3i64, -2, -1, 1, 2, 3].choose(&mut rng).unwrap();
                    (Rat::from_integer(c.into()), p)
                })
                .collect();
            let form = sum_of_powers(&decomposition, nvars - 1, d);
            GridForm { form, decomposition }
        })
        .collect()
}
