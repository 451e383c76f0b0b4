//! Named regular graphs used for desk-scale checks, and the `name:params`
//! syntax for picking one.

use crate::error::{Error, Result};
use crate::graphs::{
    disjoint_union, make_complete, make_complete_bipartite, make_cycle, make_empty, make_path,
    make_petersen, make_prism, make_random_regular, Graph,
};

/// A graph with a display name and the degree it is checked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogGraph {
    pub name: String,
    pub graph: Graph,
    pub d: usize,
}

impl CatalogGraph {
    pub fn new(name: impl Into<String>, graph: Graph, d: usize) -> Self {
        CatalogGraph {
            name: name.into(),
            graph,
            d,
        }
    }
}

fn union_all(parts: &[Graph]) -> Graph {
    parts[1..]
        .iter()
        .fold(parts[0].clone(), |acc, g| disjoint_union(&acc, g))
}

/// Number of random cubic graphs in the `d3` catalog.
pub const RANDOM_CUBIC_COUNT: u64 = 20;

pub const CATALOG_NAMES: [&str; 4] = ["d1", "d2", "d3", "d4"];

/// Perfect matchings on 2, 4 and 6 vertices.
pub fn catalog_d1() -> Vec<CatalogGraph> {
    let k2 = make_complete(2).unwrap();
    (1..=3)
        .map(|k| CatalogGraph::new(format!("{k}K2"), union_all(&vec![k2.clone(); k]), 1))
        .collect()
}

/// Cycles `C3..C12`, every two-cycle union on at most 12 vertices, `3K3` and
/// `4K3`.
pub fn catalog_d2() -> Vec<CatalogGraph> {
    let c = |n| make_cycle(n).unwrap();
    let mut out: Vec<_> = (3..=12).map(|n| CatalogGraph::new(format!("C{n}"), c(n), 2)).collect();
    for a in 3..=6 {
        for b in a..=12 - a {
            out.push(CatalogGraph::new(format!("C{a}+C{b}"), disjoint_union(&c(a), &c(b)), 2));
        }
    }
    out.push(CatalogGraph::new("3K3", union_all(&vec![c(3); 3]), 2));
    out.push(CatalogGraph::new("4K3", union_all(&vec![c(3); 4]), 2));
    out
}

/// `K4`, `K3,3`, Petersen, prisms, `2K4`, and [`RANDOM_CUBIC_COUNT`] random
/// cubic graphs on 6 to 14 vertices.
pub fn catalog_d3() -> Vec<CatalogGraph> {
    let k4 = make_complete(4).unwrap();
    let mut out = vec![
        CatalogGraph::new("K4", k4.clone(), 3),
        CatalogGraph::new("K3,3", make_complete_bipartite(3, 3).unwrap(), 3),
        CatalogGraph::new("Petersen", make_petersen(), 3),
        CatalogGraph::new("prism3", make_prism(3).unwrap(), 3),
        CatalogGraph::new("prism4", make_prism(4).unwrap(), 3),
        CatalogGraph::new("prism5", make_prism(5).unwrap(), 3),
        CatalogGraph::new("2K4", disjoint_union(&k4, &k4), 3),
        CatalogGraph::new("K4+K3,3", disjoint_union(&k4, &make_complete_bipartite(3, 3).unwrap()), 3),
    ];
    for seed in 0..RANDOM_CUBIC_COUNT {
        let n = 6 + 2 * (seed as usize % 5);
        out.push(CatalogGraph::new(
            format!("rr3-n{n}-s{seed}"),
            make_random_regular(n, 3, seed).unwrap(),
            3,
        ));
    }
    out
}

/// `K5`, `K4,4`, `2K5` and five random 4-regular graphs.
pub fn catalog_d4() -> Vec<CatalogGraph> {
    let k5 = make_complete(5).unwrap();
    let mut out = vec![
        CatalogGraph::new("K5", k5.clone(), 4),
        CatalogGraph::new("K4,4", make_complete_bipartite(4, 4).unwrap(), 4),
        CatalogGraph::new("2K5", disjoint_union(&k5, &k5), 4),
    ];
    for (seed, n) in (6..=10).enumerate() {
        out.push(CatalogGraph::new(
            format!("rr4-n{n}-s{seed}"),
            make_random_regular(n, 4, seed as u64).unwrap(),
            4,
        ));
    }
    out
}

pub fn catalog(name: &str) -> Result<Vec<CatalogGraph>> {
    match name {
        "d1" => Ok(catalog_d1()),
        "d2" => Ok(catalog_d2()),
        "d3" => Ok(catalog_d3()),
        "d4" => Ok(catalog_d4()),
        _ => Err(Error::Usage(format!(
            "unknown catalog {name:?}; expected one of {}",
            CATALOG_NAMES.join(", ")
        ))),
    }
}

fn numbers(name: &str, params: &str, want: usize) -> Result<Vec<u64>> {
    let out: Vec<u64> = params
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Usage(format!("{name} expects {want} integer parameter(s), got {params:?}")))?;
    if out.len() != want {
        return Err(Error::Usage(format!(
            "{name} expects {want} integer parameter(s), got {}",
            out.len()
        )));
    }
    Ok(out)
}

/// Parses `name[:params]`, e.g. `complete:4`, `cycle:5`, `bipartite:3,3`,
/// `petersen`, `prism:4`, `random-regular:10,3,7` (n, d, seed), `empty:3`,
/// `path:4`. Several specs joined by `+` give their disjoint union.
pub fn builtin_graph(spec: &str) -> Result<Graph> {
    if spec.contains('+') {
        let parts = spec.split('+').map(builtin_graph).collect::<Result<Vec<_>>>()?;
        return Ok(union_all(&parts));
    }
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let one = |n: &str| numbers(n, params, 1).map(|v| v[0] as usize);
    match name.trim() {
        "complete" => make_complete(one(name)?),
        "cycle" => make_cycle(one(name)?),
        "path" => make_path(one(name)?),
        "empty" => make_empty(one(name)?),
        "prism" => make_prism(one(name)?),
        "bipartite" => {
            let v = numbers(name, params, 2)?;
            make_complete_bipartite(v[0] as usize, v[1] as usize)
        }
        "random-regular" => {
            let v = numbers(name, params, 3)?;
            make_random_regular(v[0] as usize, v[1] as usize, v[2])
        }
        "petersen" if params.is_empty() => Ok(make_petersen()),
        _ => Err(Error::Usage(format!("unknown builtin graph {spec:?}"))),
    }
}
