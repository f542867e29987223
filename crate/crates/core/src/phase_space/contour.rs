//! Marching-squares level sets.

use std::collections::HashMap;

use rayon::prelude::*;

use super::field::DistributionField;

/// Ordered `(axis1, axis2)` vertices of one contour line.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    /// The last vertex connects back to the first.
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ContourSet {
    pub levels: Vec<f64>,
    /// `polylines[k]` belongs to `levels[k]`.
    pub polylines: Vec<Vec<Polyline>>,
}

impl ContourSet {
    pub fn closed_count(&self, level_index: usize) -> usize {
        self.polylines[level_index]
            .iter()
            .filter(|p| p.closed)
            .count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &[Polyline])> {
        self.levels
            .iter()
            .copied()
            .zip(self.polylines.iter().map(Vec::as_slice))
    }
}

/// Ten levels evenly spaced from 10% to 90% of `[min, max]`.
pub fn default_levels(field: &DistributionField) -> Vec<f64> {
    let (lo, hi) = (field.min(), field.max());
    (0..10)
        .map(|k| lo + (0.1 + 0.8 * k as f64 / 9.0) * (hi - lo))
        .collect()
}

pub fn contour_extract(field: &DistributionField, levels: &[f64]) -> ContourSet {
    let polylines = levels
        .par_iter()
        .map(|&level| trace_level(field, level))
        .collect();
    ContourSet {
        levels: levels.to_vec(),
        polylines,
    }
}

/// Number of closed contour components at `level`.
pub fn island_count(field: &DistributionField, level: f64) -> usize {
    trace_level(field, level)
        .iter()
        .filter(|p| p.closed)
        .count()
}

// Edge ids: horizontal edges (i,j)-(i+1,j) first, then vertical (i,j)-(i,j+1).
struct Grid<'a> {
    field: &'a DistributionField,
    n1: usize,
    n2: usize,
}

impl Grid<'_> {
    fn h_edge(&self, i: usize, j: usize) -> usize {
        i * self.n2 + j
    }

    fn v_edge(&self, i: usize, j: usize) -> usize {
        (self.n1 - 1) * self.n2 + i * (self.n2 - 1) + j
    }

    fn crossing(&self, edge: usize, level: f64) -> (f64, f64) {
        let horizontal_edges = (self.n1 - 1) * self.n2;
        let ((ia, ja), (ib, jb)) = if edge < horizontal_edges {
            let (i, j) = (edge / self.n2, edge % self.n2);
            ((i, j), (i + 1, j))
        } else {
            let e = edge - horizontal_edges;
            let (i, j) = (e / (self.n2 - 1), e % (self.n2 - 1));
            ((i, j), (i, j + 1))
        };
        let (va, vb) = (self.field.get(ia, ja), self.field.get(ib, jb));
        let t = ((level - va) / (vb - va)).clamp(0.0, 1.0);
        let (a1, a2) = (self.field.axis1(), self.field.axis2());
        let (xa, ya) = (a1.value(ia), a2.value(ja));
        let (xb, yb) = (a1.value(ib), a2.value(jb));
        (xa + t * (xb - xa), ya + t * (yb - ya))
    }
}

fn trace_level(field: &DistributionField, level: f64) -> Vec<Polyline> {
    let (n1, n2) = field.shape();
    let grid = Grid { field, n1, n2 };
    let mut segments: Vec<(usize, usize)> = Vec::new();
    for i in 0..n1 - 1 {
        for j in 0..n2 - 1 {
            let v = [
                field.get(i, j),
                field.get(i + 1, j),
                field.get(i + 1, j + 1),
                field.get(i, j + 1),
            ];
            let mut case = 0u8;
            for (b, x) in v.iter().enumerate() {
                if *x >= level {
                    case |= 1 << b;
                }
            }
            if case == 0 || case == 15 {
                continue;
            }
            // bottom, right, top, left
            let e = [
                grid.h_edge(i, j),
                grid.v_edge(i + 1, j),
                grid.h_edge(i, j + 1),
                grid.v_edge(i, j),
            ];
            let center_inside = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= level;
            let mut push = |a: usize, b: usize| segments.push((e[a], e[b]));
            match case {
                5 if center_inside => {
                    push(0, 1);
                    push(2, 3);
                }
                5 => {
                    push(3, 0);
                    push(1, 2);
                }
                10 if center_inside => {
                    push(3, 0);
                    push(1, 2);
                }
                10 => {
                    push(0, 1);
                    push(2, 3);
                }
                _ => {
                    // exactly two crossing edges
                    let mut hit = [0usize; 2];
                    let mut k = 0;
                    for s in 0..4 {
                        let inside_a = case >> s & 1;
                        let inside_b = case >> ((s + 1) % 4) & 1;
                        if inside_a != inside_b {
                            hit[k] = s;
                            k += 1;
                        }
                    }
                    push(hit[0], hit[1]);
                }
            }
        }
    }
    stitch(&grid, &segments, level)
}

fn stitch(grid: &Grid<'_>, segments: &[(usize, usize)], level: f64) -> Vec<Polyline> {
    // Every edge touches at most two segments.
    let mut order: Vec<usize> = Vec::new();
    let mut adjacency: HashMap<usize, [usize; 2]> = HashMap::new();
    const NONE: usize = usize::MAX;
    for &(a, b) in segments {
        for (x, y) in [(a, b), (b, a)] {
            let slot = adjacency.entry(x).or_insert_with(|| {
                order.push(x);
                [NONE, NONE]
            });
            if slot[0] == NONE {
                slot[0] = y;
            } else {
                slot[1] = y;
            }
        }
    }
    let mut visited: HashMap<usize, bool> = HashMap::with_capacity(order.len());
    let mut out = Vec::new();
    let degree = |e: usize| adjacency[&e].iter().filter(|&&n| n != NONE).count();

    let walk = |start: usize, visited: &mut HashMap<usize, bool>| -> Polyline {
        let mut chain = vec![start];
        visited.insert(start, true);
        let mut prev = NONE;
        let mut cur = start;
        let mut closed = false;
        loop {
            let next = adjacency[&cur]
                .iter()
                .copied()
                .find(|&n| n != NONE && n != prev && !visited.contains_key(&n));
            match next {
                Some(n) => {
                    visited.insert(n, true);
                    chain.push(n);
                    prev = cur;
                    cur = n;
                }
                None => {
                    if chain.len() > 2 && adjacency[&cur].contains(&start) {
                        closed = true;
                    }
                    break;
                }
            }
        }
        Polyline {
            points: chain.into_iter().map(|e| grid.crossing(e, level)).collect(),
            closed,
        }
    };

    for &e in &order {
        if !visited.contains_key(&e) && degree(e) == 1 {
            out.push(walk(e, &mut visited));
        }
    }
    for &e in &order {
        if !visited.contains_key(&e) {
            out.push(walk(e, &mut visited));
        }
    }
    out.retain(|p| p.points.len() >= 2);
    out
}
