use rand::Rng;

use super::Poset;

/// Random poset on `n` elements: a random DAG on `v0 … v{n-1}` (edges only go up in index,
/// each present with probability `edge_prob`), presented by its transitive reduction.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> Poset {
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            reach[i][j] = rng.random_bool(edge_prob);
        }
    }
    // Transitive closure; index order is already topological.
    for i in (0..n).rev() {
        for j in i + 1..n {
            if reach[i][j] {
                for k in j + 1..n {
                    if reach[j][k] {
                        reach[i][k] = true;
                    }
                }
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if reach[i][j] && !(i + 1..j).any(|k| reach[i][k] && reach[k][j]) {
                covers.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    Poset::from_covers(&ids, &covers).expect("transitive reduction of a DAG is a valid cover set")
}

/// Like [`random_poset`] but resampled until the Hasse diagram is connected.
pub fn random_connected_poset<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> Poset {
    loop {
        let p = random_poset(rng, n, edge_prob);
        if is_connected(&p) {
            return p;
        }
    }
}

fn is_connected(p: &Poset) -> bool {
    if p.is_empty() {
        return true;
    }
    let mut seen = vec![false; p.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in p.upper_covers(v).iter().chain(p.lower_covers(v)) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
