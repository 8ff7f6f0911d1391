#![allow(dead_code)]

use std::path::PathBuf;

use mincw::bits::{full_mask, iter_bits};
use mincw::{CountOptions, Graph, SystematicGraphCode};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with 1 ≤ n.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// A random spanning tree plus G(n, p) edges on top.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        edges.push((parent, order[k]));
    }
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn count(g: &Graph) -> u64 {
    SystematicGraphCode::new(g.clone()).count_minimal(CountOptions::default()).unwrap().m_count
}

pub fn minimal_sets(code: &SystematicGraphCode) -> Vec<u64> {
    let opts = CountOptions { list: true, ..Default::default() };
    code.count_minimal(opts).unwrap().minimal_supports.unwrap()
}

/// Every nonempty subset of the vertex set.
pub fn subsets(n: usize) -> impl Iterator<Item = u64> {
    1..=full_mask(n)
}

/// The vertex set `{v_0, v_2, ...}` at even positions of a path.
pub fn even_positions(path: &[usize]) -> u64 {
    path.iter().step_by(2).fold(0, |m, &v| m | 1 << v)
}

pub fn popcount_vertices(mask: u64) -> Vec<usize> {
    iter_bits(mask).collect()
}

pub fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}
