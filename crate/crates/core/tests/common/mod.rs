#![allow(dead_code)]

use std::path::PathBuf;

use diograph::format::{parse_graph, GraphFormat};
use diograph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn corpus(name: &str) -> Graph {
    let text = std::fs::read_to_string(data_path(name)).expect("corpus file");
    parse_graph(&text, GraphFormat::EdgeList).expect("corpus parses")
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    perm
}

/// Decides Diophantine labelability by trying all n! bijections (Heap's algorithm).
pub fn labelable_by_enumeration(g: &Graph) -> bool {
    let n = g.order();
    let compatible = |a: usize, b: usize| n.is_multiple_of(num_gcd(a, b));
    let edges = g.edges();
    let mut labels: Vec<usize> = (1..=n).collect();
    let ok = |labels: &[usize]| edges.iter().all(|&(u, v)| compatible(labels[u - 1], labels[v - 1]));
    if ok(&labels) {
        return true;
    }
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                labels.swap(0, i);
            } else {
                labels.swap(c[i], i);
            }
            if ok(&labels) {
                return true;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

fn num_gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
