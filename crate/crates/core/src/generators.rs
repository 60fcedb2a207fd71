//! Graph families used by tests, experiments and the `gen` subcommand.
//!
//! Vertex numbering:
//! - `path(n)`: `0 - 1 - ... - n-1`.
//! - `cycle(n)`: path plus the edge `(0, n-1)`.
//! - `grid(w, h)`: vertex `(x, y)` is `y * w + x`.
//! - `hypercube(d)`: vertices are the `d`-bit masks, adjacent when they differ in one bit.
//! - `petersen()`: outer 5-cycle `0..5`, spokes `i - i+5`, inner pentagram `5+i - 5+(i+2)%5`.
//! - `complete(n)`, `star(m)` (centre `0`, leaves `1..=m`).
//! - `projective_incidence(q)`: points of PG(2, q) are `0..N`, lines are `N..2N`
//!   with `N = q^2 + q + 1`; both are normalized triples (first nonzero
//!   coordinate equal to 1) listed in lexicographic order.
//!
//! Random families draw from [`crate::rng`].

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{below, bernoulli, rng_from_seed, shuffle};

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("cycle needs n >= 3"));
    }
    Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn grid(w: usize, h: usize) -> Result<Graph> {
    if w == 0 || h == 0 {
        return Err(Error::invalid("grid needs w, h >= 1"));
    }
    let mut e = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                e.push((v, v + 1));
            }
            if y + 1 < h {
                e.push((v, v + w));
            }
        }
    }
    Graph::from_edges(w * h, &e)
}

pub fn hypercube(d: usize) -> Result<Graph> {
    if d == 0 || d > 20 {
        return Err(Error::invalid("hypercube needs 1 <= d <= 20"));
    }
    let n = 1usize << d;
    let mut e = Vec::new();
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if v < w {
                e.push((v, w));
            }
        }
    }
    Graph::from_edges(n, &e)
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &e).unwrap()
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs n >= 1"));
    }
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::from_edges(n, &e)
}

pub fn star(leaves: usize) -> Result<Graph> {
    if leaves == 0 {
        return Err(Error::invalid("star needs at least one leaf"));
    }
    Graph::from_edges(
        leaves + 1,
        &(1..=leaves).map(|v| (0, v)).collect::<Vec<_>>(),
    )
}

/// Erdős–Rényi `G(n, p)`: pairs `(u, v)`, `u < v`, visited in lexicographic
/// order, one Bernoulli draw each.
pub fn gnp(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("G(n, p) needs n >= 1"));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::invalid("edge probability must lie in [0, 1]"));
    }
    let mut rng = rng_from_seed(seed);
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if bernoulli(&mut rng, edge_prob) {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &e)
}

/// Uniform random recursive tree: vertex `v > 0` attaches to a uniform
/// earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("tree needs n >= 1"));
    }
    let mut rng = rng_from_seed(seed);
    let e: Vec<_> = (1..n).map(|v| (below(&mut rng, v), v)).collect();
    Graph::from_edges(n, &e)
}

/// A random recursive tree plus every remaining pair independently with
/// probability `extra_prob`; always connected.
pub fn random_connected(n: usize, extra_prob: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("graph needs n >= 1"));
    }
    let mut rng = rng_from_seed(seed);
    let mut adj = vec![vec![false; n]; n];
    for v in 1..n {
        let u = below(&mut rng, v);
        adj[u][v] = true;
    }
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u][v] || bernoulli(&mut rng, extra_prob) {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &e)
}

/// Random maximal graph of girth at least 5: pairs are visited in a
/// shuffled order and an edge is kept when its endpoints are at distance at
/// least 4 (or disconnected). Maximality makes the result connected.
pub fn random_girth5(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("graph needs n >= 1"));
    }
    let mut rng = rng_from_seed(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    shuffle(&mut rng, &mut pairs);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in pairs {
        if within(&adj, u, v, 3) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    Graph::from_adjacency(adj)
}

fn within(adj: &[Vec<usize>], u: usize, v: usize, radius: usize) -> bool {
    let mut frontier = vec![u];
    let mut seen = vec![false; adj.len()];
    seen[u] = true;
    for _ in 0..radius {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in &adj[x] {
                if y == v {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    u == v
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Normalized homogeneous triples of PG(2, q): first nonzero coordinate is 1.
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let t = [a, b, c];
                if t.iter().find(|&&x| x != 0) == Some(&1) {
                    pts.push(t);
                }
            }
        }
    }
    pts
}

/// Point/line incidence graph of the projective plane over the prime field
/// of order `q`: bipartite, `(q+1)`-regular, girth 6.
pub fn projective_incidence(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::invalid(format!("{q} is not prime")));
    }
    if q > 97 {
        return Err(Error::invalid("q too large for this generator"));
    }
    let pts = projective_points(q);
    let n = pts.len();
    let mut e = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                e.push((i, n + j));
            }
        }
    }
    Graph::from_edges(2 * n, &e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let c4 = cycle(4).unwrap();
        assert_eq!(
            (c4.vertex_count(), c4.edge_count(), c4.diameter()),
            (4, 4, Some(2))
        );
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(grid(3, 3).unwrap().diameter(), Some(4));
        let q3 = hypercube(3).unwrap();
        assert_eq!(
            (q3.vertex_count(), q3.edge_count(), q3.diameter()),
            (8, 12, Some(3))
        );
        assert_eq!(star(5).unwrap().degree(0), 5);
        assert_eq!(complete(5).unwrap().edge_count(), 10);
    }

    #[test]
    fn size_errors() {
        assert!(path(0).is_err());
        assert!(cycle(2).is_err());
        assert!(grid(0, 3).is_err());
        assert!(hypercube(0).is_err());
        assert!(gnp(5, 1.5, 0).is_err());
        assert!(projective_incidence(4).is_err());
        assert!(projective_incidence(1).is_err());
    }

    #[test]
    fn gnp_extremes_and_replay() {
        assert_eq!(gnp(8, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(gnp(8, 1.0, 1).unwrap().edge_count(), 28);
        assert_eq!(gnp(20, 0.3, 7).unwrap(), gnp(20, 0.3, 7).unwrap());
    }

    #[test]
    fn heawood_from_q2() {
        let h = projective_incidence(2).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (14, 21));
        assert!((0..14).all(|v| h.degree(v) == 3));
        assert_eq!(h.girth(), Some(6));
        assert!(h.is_bipartite());
    }

    #[test]
    fn projective_q3_and_q5() {
        let g = projective_incidence(3).unwrap();
        assert_eq!(g.vertex_count(), 26);
        assert!((0..26).all(|v| g.degree(v) == 4));
        assert_eq!(g.girth(), Some(6));
        let g5 = projective_incidence(5).unwrap();
        assert_eq!(g5.vertex_count(), 62);
        assert!((0..62).all(|v| g5.degree(v) == 6));
        assert_eq!(g5.girth(), Some(6));
        assert!(g5.is_bipartite());
    }

    #[test]
    fn random_families_have_their_properties() {
        for seed in 0..20 {
            let t = random_tree(12, seed).unwrap();
            assert!(t.is_connected());
            assert_eq!(t.edge_count(), 11);
            let c = random_connected(10, 0.3, seed).unwrap();
            assert!(c.is_connected());
            let g = random_girth5(13, seed).unwrap();
            assert!(g.is_connected());
            assert!(g.girth().is_none_or(|x| x >= 5));
        }
    }
}
