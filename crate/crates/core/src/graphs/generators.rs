use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Restarts allowed before `make_random_regular` gives up.
pub const RANDOM_REGULAR_MAX_ATTEMPTS: usize = 100_000;

fn need(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Usage(msg()))
    }
}

pub fn make_empty(n: usize) -> Result<Graph> {
    need(n >= 1, || "empty graph needs n >= 1".into())?;
    Ok(Graph::new(n))
}

pub fn make_complete(n: usize) -> Result<Graph> {
    need(n >= 1, || "complete graph needs n >= 1".into())?;
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.try_add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Parts are `0..a` and `a..a+b`.
pub fn make_complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    need(a >= 1 && b >= 1, || "complete bipartite graph needs both sides >= 1".into())?;
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.try_add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    need(n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
    let mut g = Graph::new(n);
    for u in 0..n {
        g.try_add_edge(u, (u + 1) % n)?;
    }
    Ok(g)
}

pub fn make_path(n: usize) -> Result<Graph> {
    need(n >= 1, || "path needs n >= 1".into())?;
    let mut g = Graph::new(n);
    for u in 1..n {
        g.try_add_edge(u - 1, u)?;
    }
    Ok(g)
}

/// Outer 5-cycle on `0..5`, inner pentagram on `5..10`, spokes `i ~ i+5`.
pub fn make_petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.try_add_edge(i, (i + 1) % 5).unwrap();
        g.try_add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        g.try_add_edge(i, i + 5).unwrap();
    }
    g
}

/// `C_k × K_2`: two `k`-cycles on `0..k` and `k..2k` joined by rungs.
pub fn make_prism(k: usize) -> Result<Graph> {
    need(k >= 3, || format!("prism needs k >= 3, got {k}"))?;
    let mut g = Graph::new(2 * k);
    for i in 0..k {
        g.try_add_edge(i, (i + 1) % k)?;
        g.try_add_edge(k + i, k + (i + 1) % k)?;
        g.try_add_edge(i, k + i)?;
    }
    Ok(g)
}

/// `G` on `0..|G|`, then `H` shifted up by `|G|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    let mut out = Graph::new(off + h.n());
    for (u, v) in g.edges() {
        out.try_add_edge(u, v).unwrap();
    }
    for (u, v) in h.edges() {
        out.try_add_edge(off + u, off + v).unwrap();
    }
    out
}

/// Random simple `d`-regular graph from the pairing (configuration) model.
///
/// Each attempt shuffles the `n·d` half-edges and pairs them consecutively; any
/// loop or repeated edge throws the whole pairing away.
pub fn make_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    need(n >= 1, || "random regular graph needs n >= 1".into())?;
    need(d < n, || format!("degree {d} must be below n={n}"))?;
    need((n * d) % 2 == 0, || format!("n·d = {} is odd", n * d))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..RANDOM_REGULAR_MAX_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut g = Graph::new(n);
        for pair in points.chunks_exact(2) {
            if g.try_add_edge(pair[0], pair[1]).is_err() {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    Err(Error::RetryExhausted {
        what: format!("simple {d}-regular graph on {n} vertices"),
        attempts: RANDOM_REGULAR_MAX_ATTEMPTS,
    })
}
