//! Least-squares regression trees grown level by level over presorted
//! feature columns.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Node {
    Leaf(f64),
    /// Rows with `x[feature] < threshold` go left.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn leaf(value: f64) -> Self {
        Self {
            nodes: vec![Node::Leaf(value)],
        }
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                Node::Leaf(v) => return v,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if x[feature] < threshold { left } else { right },
            }
        }
    }

    /// Features referenced by any split.
    pub fn used_features(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().filter_map(|n| match n {
            Node::Split { feature, .. } => Some(*feature),
            Node::Leaf(_) => None,
        })
    }
}

/// Per-column sort orders shared by every tree of one ensemble.
pub(crate) struct TreeBuilder<'a> {
    rows: &'a [Vec<f64>],
    sorted: Vec<Vec<u32>>,
    /// Feature values in the order of `sorted`.
    sorted_values: Vec<Vec<f64>>,
    max_depth: usize,
    min_leaf: usize,
}

#[derive(Clone, Copy)]
struct Candidate {
    gain: f64,
    feature: usize,
    threshold: f64,
}

const NONE: u32 = u32::MAX;

impl<'a> TreeBuilder<'a> {
    pub fn new(rows: &'a [Vec<f64>], max_depth: usize, min_leaf: usize) -> Self {
        let n_features = rows.first().map_or(0, Vec::len);
        let sorted: Vec<Vec<u32>> = (0..n_features)
            .map(|f| {
                let mut idx: Vec<u32> = (0..rows.len() as u32).collect();
                idx.sort_by(|&a, &b| rows[a as usize][f].total_cmp(&rows[b as usize][f]).then(a.cmp(&b)));
                idx
            })
            .collect();
        let sorted_values = sorted
            .iter()
            .enumerate()
            .map(|(f, idx)| idx.iter().map(|&i| rows[i as usize][f]).collect())
            .collect();
        Self {
            rows,
            sorted,
            sorted_values,
            max_depth,
            min_leaf: min_leaf.max(1),
        }
    }

    /// Fits a tree to `target` using only the rows flagged in `in_sample`.
    pub fn build(&self, target: &[f64], in_sample: &[bool]) -> Tree {
        let n = self.rows.len();
        let mut node_of: Vec<u32> = (0..n).map(|i| if in_sample[i] { 0 } else { NONE }).collect();
        let mut nodes: Vec<Option<Node>> = vec![None];
        let (mut s0, mut c0) = (0.0, 0usize);
        for i in 0..n {
            if in_sample[i] {
                s0 += target[i];
                c0 += 1;
            }
        }
        if c0 == 0 {
            return Tree::leaf(0.0);
        }
        // (node id, sum, count) for nodes still open at this level.
        let mut active: Vec<(usize, f64, usize)> = vec![(0, s0, c0)];
        let mut slot: Vec<u32> = vec![0];

        for _depth in 0..self.max_depth {
            if active.is_empty() {
                break;
            }
            let mut best: Vec<Option<Candidate>> = vec![None; active.len()];
            let mut left_sum = vec![0.0; active.len()];
            let mut left_cnt = vec![0usize; active.len()];
            let mut last = vec![f64::NAN; active.len()];
            for (f, (order, xs)) in self.sorted.iter().zip(&self.sorted_values).enumerate() {
                left_sum.iter_mut().for_each(|v| *v = 0.0);
                left_cnt.iter_mut().for_each(|v| *v = 0);
                last.iter_mut().for_each(|v| *v = f64::NAN);
                for (&row, &x) in order.iter().zip(xs) {
                    let row = row as usize;
                    let node = node_of[row];
                    if node == NONE {
                        continue;
                    }
                    let a = slot[node as usize];
                    if a == NONE {
                        continue;
                    }
                    let a = a as usize;
                    let (_, s, c) = active[a];
                    let lc = left_cnt[a];
                    if lc >= self.min_leaf && c - lc >= self.min_leaf && x > last[a] {
                        let ls = left_sum[a];
                        let rs = s - ls;
                        let gain = ls * ls / lc as f64 + rs * rs / (c - lc) as f64 - s * s / c as f64;
                        if best[a].map_or(gain > 0.0, |b| gain > b.gain) {
                            let mid = 0.5 * (last[a] + x);
                            let threshold = if mid > last[a] && mid <= x { mid } else { x };
                            best[a] = Some(Candidate {
                                gain,
                                feature: f,
                                threshold,
                            });
                        }
                    }
                    left_sum[a] += target[row];
                    left_cnt[a] += 1;
                    last[a] = x;
                }
            }

            // Open children for split nodes, close the rest as leaves.
            let mut child_of: Vec<Option<(usize, usize)>> = vec![None; active.len()];
            for (a, &(id, s, c)) in active.iter().enumerate() {
                match best[a] {
                    Some(cand) => {
                        let left = nodes.len();
                        nodes.push(None);
                        nodes.push(None);
                        nodes[id] = Some(Node::Split {
                            feature: cand.feature,
                            threshold: cand.threshold,
                            left,
                            right: left + 1,
                        });
                        child_of[a] = Some((left, left + 1));
                    }
                    None => nodes[id] = Some(Node::Leaf(s / c as f64)),
                }
            }
            let mut stats: Vec<(f64, usize)> = vec![(0.0, 0); nodes.len()];
            for i in 0..n {
                let node = node_of[i];
                if node == NONE {
                    continue;
                }
                let a = slot[node as usize];
                if a == NONE {
                    node_of[i] = NONE;
                    continue;
                }
                match (child_of[a as usize], best[a as usize]) {
                    (Some((l, r)), Some(cand)) => {
                        let child = if self.rows[i][cand.feature] < cand.threshold { l } else { r };
                        node_of[i] = child as u32;
                        stats[child].0 += target[i];
                        stats[child].1 += 1;
                    }
                    _ => node_of[i] = NONE,
                }
            }
            slot = vec![NONE; nodes.len()];
            active = child_of
                .iter()
                .flatten()
                .flat_map(|&(l, r)| [l, r])
                .map(|id| (id, stats[id].0, stats[id].1))
                .collect();
            for (a, &(id, _, _)) in active.iter().enumerate() {
                slot[id] = a as u32;
            }
        }
        for &(id, s, c) in &active {
            nodes[id] = Some(Node::Leaf(s / c as f64));
        }
        Tree {
            nodes: nodes.into_iter().map(|n| n.unwrap_or(Node::Leaf(0.0))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_best_split(x: &[f64], y: &[f64], min_leaf: usize) -> (f64, f64) {
        // Exhaustive search over every threshold strictly between distinct values.
        let mut vals: Vec<f64> = x.to_vec();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        let sse = |idx: &[usize]| {
            let m = idx.iter().map(|&i| y[i]).sum::<f64>() / idx.len() as f64;
            idx.iter().map(|&i| (y[i] - m).powi(2)).sum::<f64>()
        };
        let mut best = (f64::INFINITY, f64::NAN);
        for w in vals.windows(2) {
            let t = 0.5 * (w[0] + w[1]);
            let l: Vec<usize> = (0..x.len()).filter(|&i| x[i] < t).collect();
            let r: Vec<usize> = (0..x.len()).filter(|&i| x[i] >= t).collect();
            if l.len() < min_leaf || r.len() < min_leaf {
                continue;
            }
            let total = sse(&l) + sse(&r);
            if total < best.0 - 1e-12 {
                best = (total, t);
            }
        }
        best
    }

    #[test]
    fn stump_matches_exhaustive_search() {
        let x: Vec<f64> = vec![3.0, 14.0, 8.0, 11.0, 10.0, 1.0, 19.0, 12.5, 6.0, 10.0];
        let y: Vec<f64> = x.iter().map(|&v| if v > 10.0 { 1.0 } else { 0.0 }).collect();
        let rows: Vec<Vec<f64>> = x.iter().map(|&v| vec![v]).collect();
        let b = TreeBuilder::new(&rows, 1, 1);
        let tree = b.build(&y, &vec![true; x.len()]);
        let (_, t_brute) = brute_best_split(&x, &y, 1);
        match tree.nodes[0] {
            Node::Split { threshold, .. } => {
                assert_eq!(threshold, t_brute);
                assert!(threshold > 10.0 && threshold <= 11.0);
            }
            _ => panic!("expected a split"),
        }
        for (xi, yi) in x.iter().zip(&y) {
            assert_eq!(tree.predict(&[*xi]), *yi);
        }
    }

    #[test]
    fn min_leaf_is_respected() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        let y: Vec<f64> = (0..10).map(|i| if i == 0 { 100.0 } else { 0.0 }).collect();
        let tree = TreeBuilder::new(&rows, 1, 3).build(&y, &vec![true; 10]);
        match tree.nodes[0] {
            Node::Split { threshold, .. } => assert_eq!(threshold, 2.5),
            _ => panic!(),
        }
    }

    #[test]
    fn constant_target_is_a_leaf() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, (i * i) as f64]).collect();
        let tree = TreeBuilder::new(&rows, 4, 1).build(&[0.0; 10], &vec![true; 10]);
        assert_eq!(tree.nodes, vec![Node::Leaf(0.0)]);
    }

    #[test]
    fn out_of_sample_rows_are_ignored() {
        let rows: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64]).collect();
        let y = [0.0, 0.0, 0.0, 1.0, 1.0, 1000.0];
        let mut mask = vec![true; 6];
        mask[5] = false;
        let tree = TreeBuilder::new(&rows, 2, 1).build(&y, &mask);
        assert_eq!(tree.predict(&[5.0]), 1.0);
        assert_eq!(tree.predict(&[0.0]), 0.0);
    }

    #[test]
    fn splits_on_the_informative_feature() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![((i * 7) % 5) as f64, i as f64]).collect();
        let y: Vec<f64> = (0..20).map(|i| if i >= 12 { 3.0 } else { -1.0 }).collect();
        let tree = TreeBuilder::new(&rows, 3, 2).build(&y, &vec![true; 20]);
        assert_eq!(tree.used_features().collect::<Vec<_>>(), vec![1]);
        for (r, t) in rows.iter().zip(&y) {
            assert_eq!(tree.predict(r), *t);
        }
    }
}
