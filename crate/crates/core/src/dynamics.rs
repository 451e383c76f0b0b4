//! Single-site heat-bath Glauber dynamics for the Widom–Rowlinson measure
//! `P[χ] ∝ λ^{X₁(χ)+X₂(χ)}`, with a batch-means occupancy estimator.
//!
//! Sampling runs in `f64`; all exact results live in the other modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::partition::Colouring;

/// Identifier of the generator behind every seeded run.
pub const RNG_ALGORITHM: &str = "chacha8";
/// Batches used for the batch-means standard error.
pub const BATCHES: usize = 50;
/// Burn-in steps per vertex when none is given.
pub const DEFAULT_BURN_IN_PER_VERTEX: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    colouring: Colouring,
    graph_id: String,
    steps: u64,
    coloured: usize,
}

impl ChainState {
    /// All vertices uncoloured.
    pub fn new(g: &Graph, graph_id: impl Into<String>) -> Self {
        ChainState {
            colouring: Colouring::uncoloured(g.n()),
            graph_id: graph_id.into(),
            steps: 0,
            coloured: 0,
        }
    }

    pub fn from_colouring(g: &Graph, graph_id: impl Into<String>, colouring: Colouring) -> Result<Self> {
        if colouring.0.len() != g.n() || !colouring.is_valid(g) {
            return Err(Error::Usage("starting colouring is not valid for the graph".into()));
        }
        let coloured = colouring.coloured();
        Ok(ChainState {
            colouring,
            graph_id: graph_id.into(),
            steps: 0,
            coloured,
        })
    }

    pub fn colouring(&self) -> &Colouring {
        &self.colouring
    }

    pub fn graph_id(&self) -> &str {
        &self.graph_id
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn coloured(&self) -> usize {
        self.coloured
    }
}

/// Which of colours 0, 1, 2 vertex `v` may take given its neighbours.
pub fn allowed_colours(colouring: &Colouring, g: &Graph, v: usize) -> [bool; 3] {
    let (mut has1, mut has2) = (false, false);
    for u in g.neighbours(v).iter() {
        match colouring.0[u] {
            1 => has1 = true,
            2 => has2 = true,
            _ => {}
        }
    }
    [true, !has2, !has1]
}

/// Resamples one uniformly chosen vertex from its conditional law: weight 1
/// for colour 0 and `λ` for each allowed colour.
pub fn glauber_step<R: Rng + ?Sized>(state: &mut ChainState, g: &Graph, lambda: f64, rng: &mut R) {
    let n = g.n();
    state.steps += 1;
    if n == 0 {
        return;
    }
    let v = rng.random_range(0..n);
    let allowed = allowed_colours(&state.colouring, g, v);
    let total = 1.0 + lambda * (u8::from(allowed[1]) + u8::from(allowed[2])) as f64;
    let mut u = rng.random::<f64>() * total - 1.0;
    let mut new = 0u8;
    if u >= 0.0 {
        for c in [1u8, 2] {
            if allowed[c as usize] {
                new = c;
                if u < lambda {
                    break;
                }
                u -= lambda;
            }
        }
    }
    let old = state.colouring.0[v];
    state.colouring.0[v] = new;
    state.coloured = state.coloured + usize::from(new != 0) - usize::from(old != 0);
    debug_assert!(state.colouring.is_valid(g));
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerParams {
    pub burn_in: u64,
    pub samples: u64,
    /// Steps between recorded samples.
    pub thinning: u64,
    pub seed: u64,
}

impl SamplerParams {
    /// Burn-in of [`DEFAULT_BURN_IN_PER_VERTEX`] steps per vertex, thinning 1.
    pub fn with_defaults(g: &Graph, samples: u64, seed: u64) -> Self {
        SamplerParams {
            burn_in: DEFAULT_BURN_IN_PER_VERTEX * g.n() as u64,
            samples,
            thinning: 1,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OccupancyEstimate {
    pub estimate: f64,
    /// Batch-means standard error; infinite with fewer than two batches.
    pub stderr: f64,
    pub samples: u64,
    pub seeds: Vec<u64>,
    pub algorithm: &'static str,
}

fn check_params(g: &Graph, lambda: f64, p: &SamplerParams) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::Domain(format!("λ must be positive and finite, got {lambda}")));
    }
    if p.burn_in < 1 || p.samples < 1 || p.thinning < 1 {
        return Err(Error::Usage("burn-in, samples and thinning must all be at least 1".into()));
    }
    if g.n() == 0 {
        return Err(Error::Domain("graph has no vertices".into()));
    }
    Ok(())
}

/// Time average of the coloured fraction after burn-in. `trace` receives
/// `(step, coloured fraction)` for every recorded sample.
pub fn estimate_occupancy(
    g: &Graph,
    lambda: f64,
    params: &SamplerParams,
    mut trace: Option<&mut dyn FnMut(u64, f64)>,
) -> Result<OccupancyEstimate> {
    check_params(g, lambda, params)?;
    let n = g.n() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut state = ChainState::new(g, "");
    for _ in 0..params.burn_in {
        glauber_step(&mut state, g, lambda, &mut rng);
    }
    let batches = BATCHES.min(params.samples as usize);
    let batch_len = params.samples / batches as u64;
    let mut batch_sums = vec![0.0; batches];
    let mut total = 0.0;
    for i in 0..params.samples {
        for _ in 0..params.thinning {
            glauber_step(&mut state, g, lambda, &mut rng);
        }
        let x = state.coloured as f64 / n;
        total += x;
        let b = (i / batch_len) as usize;
        if b < batches {
            batch_sums[b] += x;
        }
        if let Some(f) = trace.as_mut() {
            f(state.steps, x);
        }
    }
    let stderr = if batches < 2 {
        f64::INFINITY
    } else {
        let means: Vec<f64> = batch_sums.iter().map(|s| s / batch_len as f64).collect();
        let m = means.iter().sum::<f64>() / batches as f64;
        let var = means.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (batches - 1) as f64;
        (var / batches as f64).sqrt()
    };
    Ok(OccupancyEstimate {
        estimate: total / params.samples as f64,
        stderr,
        samples: params.samples,
        seeds: vec![params.seed],
        algorithm: RNG_ALGORITHM,
    })
}

/// Averages independent chains; standard errors combine as for a mean of
/// independent estimates.
pub fn pool_estimates(runs: &[OccupancyEstimate]) -> Result<OccupancyEstimate> {
    if runs.is_empty() {
        return Err(Error::Usage("nothing to pool".into()));
    }
    let k = runs.len() as f64;
    Ok(OccupancyEstimate {
        estimate: runs.iter().map(|r| r.estimate).sum::<f64>() / k,
        stderr: runs.iter().map(|r| r.stderr * r.stderr).sum::<f64>().sqrt() / k,
        samples: runs.iter().map(|r| r.samples).sum(),
        seeds: runs.iter().flat_map(|r| r.seeds.iter().copied()).collect(),
        algorithm: RNG_ALGORITHM,
    })
}

/// One chain per seed in parallel, each with `params` apart from its seed.
pub fn estimate_occupancy_chains(
    g: &Graph,
    lambda: f64,
    params: &SamplerParams,
    seeds: &[u64],
) -> Result<Vec<OccupancyEstimate>> {
    seeds
        .par_iter()
        .map(|&seed| estimate_occupancy(g, lambda, &SamplerParams { seed, ..*params }, None))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{make_complete, make_cycle, make_path, make_petersen};
    use crate::numerics::Rational;
    use crate::occupancy::occupancy_fraction;

    fn all_valid_colourings(g: &Graph) -> Vec<Colouring> {
        let n = g.n();
        (0..3usize.pow(n as u32))
            .map(|mut code| {
                Colouring(
                    (0..n)
                        .map(|_| {
                            let c = (code % 3) as u8;
                            code /= 3;
                            c
                        })
                        .collect(),
                )
            })
            .filter(|c| c.is_valid(g))
            .collect()
    }

    /// Exact transition matrix built from the allowed-set rule.
    fn transition_matrix(g: &Graph, states: &[Colouring], lambda: &Rational) -> Vec<Vec<Rational>> {
        let n = g.n() as i64;
        states
            .iter()
            .map(|x| {
                let mut row = vec![Rational::zero(); states.len()];
                for v in 0..g.n() {
                    let allowed = allowed_colours(x, g, v);
                    let total = Rational::one() + lambda * Rational::integer(i64::from(allowed[1]) + i64::from(allowed[2]));
                    for c in 0..3u8 {
                        if !allowed[c as usize] {
                            continue;
                        }
                        let mut y = x.clone();
                        y.0[v] = c;
                        let j = states.iter().position(|s| *s == y).unwrap();
                        let w = if c == 0 { Rational::one() } else { lambda.clone() };
                        row[j] = &row[j] + w / &total / Rational::integer(n);
                    }
                }
                row
            })
            .collect()
    }

    /// Solves `πP = π`, `Σπ = 1` by Gaussian elimination.
    fn stationary(p: &[Vec<Rational>]) -> Vec<Rational> {
        let k = p.len();
        let mut a: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                let mut row: Vec<Rational> = (0..k)
                    .map(|j| {
                        let id = if i == j { Rational::one() } else { Rational::zero() };
                        &p[j][i] - id
                    })
                    .collect();
                row.push(Rational::zero());
                row
            })
            .collect();
        a[k - 1] = vec![Rational::one(); k + 1];
        for col in 0..k {
            let piv = (col..k).find(|&r| !a[r][col].is_zero()).unwrap();
            a.swap(col, piv);
            let pv = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &pv;
            }
            for r in 0..k {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pr = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(&pr) {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[k].clone()).collect()
    }

    #[test]
    fn k2_detailed_balance_and_stationary_law() {
        let g = make_complete(2).unwrap();
        let states = all_valid_colourings(&g);
        assert_eq!(states.len(), 7);
        for lambda in [Rational::new(1, 3), Rational::one(), Rational::new(5, 2)] {
            let p = transition_matrix(&g, &states, &lambda);
            for row in &p {
                assert_eq!(row.iter().cloned().sum::<Rational>(), Rational::one());
            }
            let weights: Vec<Rational> = states.iter().map(|s| lambda.pow(s.coloured() as i32)).collect();
            let z: Rational = weights.iter().cloned().sum();
            let pi: Vec<Rational> = weights.iter().map(|w| w / &z).collect();
            for i in 0..7 {
                for j in 0..7 {
                    assert_eq!(&pi[i] * &p[i][j], &pi[j] * &p[j][i]);
                }
            }
            assert_eq!(stationary(&p), pi);
        }
    }

    #[test]
    fn sampled_transitions_follow_matrix() {
        let g = make_complete(2).unwrap();
        let states = all_valid_colourings(&g);
        let lambda = Rational::new(3, 2);
        let p = transition_matrix(&g, &states, &lambda);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let trials = 200_000;
        for (i, x) in states.iter().enumerate() {
            let mut counts = vec![0u32; states.len()];
            for _ in 0..trials {
                let mut s = ChainState::from_colouring(&g, "K2", x.clone()).unwrap();
                glauber_step(&mut s, &g, lambda.to_f64(), &mut rng);
                counts[states.iter().position(|y| y == s.colouring()).unwrap()] += 1;
            }
            for j in 0..states.len() {
                let want = p[i][j].to_f64();
                let got = counts[j] as f64 / trials as f64;
                assert!((want - got).abs() < 0.005, "state {i}->{j}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn isolated_vertex_law() {
        let g = Graph::new(1);
        let lambda = 2.0;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut state = ChainState::new(&g, "K1");
        let mut counts = [0u32; 3];
        let trials = 300_000;
        for _ in 0..trials {
            glauber_step(&mut state, &g, lambda, &mut rng);
            counts[state.colouring().0[0] as usize] += 1;
        }
        let want = [1.0 / 5.0, 2.0 / 5.0, 2.0 / 5.0];
        for c in 0..3 {
            assert!((counts[c] as f64 / trials as f64 - want[c]).abs() < 0.005);
        }
    }

    #[test]
    fn hard_constraint() {
        let g = make_path(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let mut s = ChainState::from_colouring(&g, "P2", Colouring(vec![1, 0])).unwrap();
            glauber_step(&mut s, &g, 50.0, &mut rng);
            assert_ne!(s.colouring().0[1], 2);
            assert_eq!(allowed_colours(s.colouring(), &g, 1)[2], s.colouring().0[0] != 1);
        }
    }

    #[test]
    fn validity_preserved_on_long_runs() {
        let g = make_petersen();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut s = ChainState::new(&g, "Petersen");
        for _ in 0..50_000 {
            glauber_step(&mut s, &g, 3.0, &mut rng);
            assert!(s.colouring().is_valid(&g));
            assert_eq!(s.coloured(), s.colouring().coloured());
        }
        assert_eq!(s.steps(), 50_000);
    }

    #[test]
    fn irreducible_through_empty_colouring() {
        for g in [make_cycle(5).unwrap(), make_complete(4).unwrap(), make_path(4).unwrap()] {
            for x in all_valid_colourings(&g) {
                // uncolour one vertex at a time, then recolour back
                let mut cur = x.clone();
                for v in 0..g.n() {
                    assert!(allowed_colours(&cur, &g, v)[0]);
                    cur.0[v] = 0;
                    assert!(cur.is_valid(&g));
                }
                for v in 0..g.n() {
                    assert!(allowed_colours(&cur, &g, v)[x.0[v] as usize]);
                    cur.0[v] = x.0[v];
                    assert!(cur.is_valid(&g));
                }
                assert_eq!(cur, x);
            }
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let g = make_cycle(7).unwrap();
        let p = SamplerParams { burn_in: 100, samples: 5000, thinning: 2, seed: 42 };
        let mut t1 = Vec::new();
        let mut t2 = Vec::new();
        let a = estimate_occupancy(&g, 1.5, &p, Some(&mut |s, x| t1.push((s, x)))).unwrap();
        let b = estimate_occupancy(&g, 1.5, &p, Some(&mut |s, x| t2.push((s, x)))).unwrap();
        assert_eq!(a, b);
        assert_eq!(t1, t2);
        assert_eq!(t1.len(), 5000);
        assert_eq!(t1[0].0, 102);
        let c = estimate_occupancy(&g, 1.5, &SamplerParams { seed: 43, ..p }, None).unwrap();
        assert_ne!(a.estimate, c.estimate);
    }

    #[test]
    fn parameter_checks() {
        let g = make_cycle(4).unwrap();
        let ok = SamplerParams { burn_in: 1, samples: 1, thinning: 1, seed: 0 };
        assert!(estimate_occupancy(&g, 1.0, &ok, None).unwrap().stderr.is_infinite());
        for bad in [SamplerParams { samples: 0, ..ok }, SamplerParams { burn_in: 0, ..ok }, SamplerParams { thinning: 0, ..ok }] {
            assert!(estimate_occupancy(&g, 1.0, &bad, None).is_err());
        }
        for lam in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(estimate_occupancy(&g, lam, &ok, None).is_err());
        }
        assert!(pool_estimates(&[]).is_err());
        assert_eq!(SamplerParams::with_defaults(&g, 10, 1).burn_in, 4000);
    }

    #[test]
    fn low_activity_band() {
        let g = make_cycle(10).unwrap();
        let lam = 0.01;
        let est = estimate_occupancy(&g, lam, &SamplerParams::with_defaults(&g, 200_000, 9), None).unwrap();
        assert!(est.estimate < 0.05);
        assert!((est.estimate - 2.0 * lam / (1.0 + 2.0 * lam)).abs() < 0.01);
    }

    #[test]
    fn statistical_agreement_small_graphs() {
        let graphs = [make_cycle(5).unwrap(), make_complete(4).unwrap(), make_path(6).unwrap(), make_petersen()];
        for g in &graphs {
            for lam in [Rational::new(1, 2), Rational::new(2, 1)] {
                let exact = occupancy_fraction(g, &lam).unwrap().to_f64();
                let params = SamplerParams { burn_in: 10_000, samples: 100_000, thinning: 1, seed: 0 };
                let seeds: Vec<u64> = (0..20).collect();
                let runs = estimate_occupancy_chains(g, lam.to_f64(), &params, &seeds).unwrap();
                let good = runs.iter().filter(|r| (r.estimate - exact).abs() < 4.0 * r.stderr).count();
                assert!(good >= 19, "{good}/20 within 4 stderr");
                let pooled = pool_estimates(&runs).unwrap();
                assert!((pooled.estimate - exact).abs() < 4.0 * pooled.stderr.max(1e-4));
                assert_eq!(pooled.seeds, seeds);
            }
        }
    }
}
