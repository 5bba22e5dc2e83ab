use std::collections::HashMap;

use super::{DistanceMetric, GeoPoint};
use crate::error::{Error, Result};

const LEAF_SIZE: usize = 8;

/// Which acceleration structure backs a [`SpatialIndex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexStructure {
    /// Uniform grid with cells sized to the radius given at build time.
    Grid,
    /// k-d tree, usable for any query radius.
    KdTree,
}

/// Exact fixed-radius neighbour index over an immutable point set.
///
/// Points are embedded in a Cartesian space in which the metric distance is
/// a monotone function of Euclidean distance (raw coordinates, the local
/// plane, or the 3-d chord for great-circle distances). The grid or k-d tree
/// only prunes candidates in that space; membership is always decided by the
/// metric itself with `dist <= eps`, so results equal a linear scan.
#[derive(Debug, Clone)]
pub struct SpatialIndex {
    points: Vec<GeoPoint>,
    metric: DistanceMetric,
    embedded: Vec<[f64; 3]>,
    structure: Structure,
}

#[derive(Debug, Clone)]
enum Structure {
    Grid(Grid),
    KdTree(KdTree),
}

impl SpatialIndex {
    /// Builds a k-d tree index.
    pub fn build(points: &[GeoPoint], metric: DistanceMetric) -> Result<Self> {
        metric.validate()?;
        let embedded: Vec<[f64; 3]> = points.iter().map(|&p| metric.embed(p)).collect();
        let tree = KdTree::build(&embedded, metric.embedded_dims());
        Ok(SpatialIndex {
            points: points.to_vec(),
            metric,
            embedded,
            structure: Structure::KdTree(tree),
        })
    }

    /// Builds a uniform grid with cell size matched to `eps`. Falls back to
    /// a k-d tree when `eps` is too small relative to the coordinate extent
    /// for integer cell keys.
    pub fn build_for_radius(points: &[GeoPoint], metric: DistanceMetric, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        metric.validate()?;
        let embedded: Vec<[f64; 3]> = points.iter().map(|&p| metric.embed(p)).collect();
        let cell = metric.embedded_radius(eps);
        let structure = match Grid::build(&embedded, cell) {
            Some(grid) => Structure::Grid(grid),
            None => Structure::KdTree(KdTree::build(&embedded, metric.embedded_dims())),
        };
        Ok(SpatialIndex {
            points: points.to_vec(),
            metric,
            embedded,
            structure,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[GeoPoint] {
        &self.points
    }

    pub fn metric(&self) -> DistanceMetric {
        self.metric
    }

    pub fn structure(&self) -> IndexStructure {
        match self.structure {
            Structure::Grid(_) => IndexStructure::Grid,
            Structure::KdTree(_) => IndexStructure::KdTree,
        }
    }

    /// Indices of every indexed point `p` with `dist(center, p) <= eps`, in
    /// ascending order.
    pub fn radius_query(&self, center: GeoPoint, eps: f64) -> Result<Vec<usize>> {
        check_eps(eps)?;
        Ok(self.within(center, eps))
    }

    /// Neighbourhood of indexed point `i` (includes `i`). Unlike
    /// [`Self::radius_query`] this accepts `eps = +inf`.
    pub fn neighbors(&self, i: usize, eps: f64) -> Vec<usize> {
        self.within(self.points[i], eps)
    }

    /// Neighbourhood of indexed point `i` paired with distances, ascending
    /// by index.
    pub fn neighbors_with_distance(&self, i: usize, eps: f64) -> Vec<(usize, f64)> {
        let center = self.points[i];
        self.within(center, eps)
            .into_iter()
            .map(|j| (j, self.metric.distance(center, self.points[j])))
            .collect()
    }

    pub(crate) fn within(&self, center: GeoPoint, eps: f64) -> Vec<usize> {
        if self.points.is_empty() {
            return Vec::new();
        }
        let query = self.metric.embed(center);
        let radius = self.metric.embedded_radius(eps);
        let mut candidates = Vec::new();
        if radius.is_infinite() {
            candidates.extend(0..self.points.len());
        } else {
            match &self.structure {
                Structure::Grid(grid) => grid.candidates(&self.embedded, query, radius, &mut candidates),
                Structure::KdTree(tree) => tree.candidates(&self.embedded, query, radius, &mut candidates),
            }
        }
        candidates.retain(|&j| self.metric.distance(center, self.points[j]) <= eps);
        candidates.sort_unstable();
        candidates
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive and finite, got {eps}"
        )));
    }
    Ok(())
}

#[inline]
fn sq_dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

#[derive(Debug, Clone)]
struct Grid {
    cell: f64,
    cells: HashMap<[i64; 3], Vec<usize>>,
}

impl Grid {
    // Keys beyond this magnitude lose integer precision in f64.
    const MAX_KEY: f64 = 1e15;

    fn build(embedded: &[[f64; 3]], cell: f64) -> Option<Self> {
        if !(cell.is_finite() && cell > 0.0) {
            return None;
        }
        let mut cells: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
        for (i, e) in embedded.iter().enumerate() {
            let key = Self::key(e, cell)?;
            cells.entry(key).or_default().push(i);
        }
        Some(Grid { cell, cells })
    }

    fn key(e: &[f64; 3], cell: f64) -> Option<[i64; 3]> {
        let mut key = [0i64; 3];
        for d in 0..3 {
            let k = (e[d] / cell).floor();
            if !k.is_finite() || k.abs() > Self::MAX_KEY {
                return None;
            }
            key[d] = k as i64;
        }
        Some(key)
    }

    fn candidates(&self, embedded: &[[f64; 3]], query: [f64; 3], radius: f64, out: &mut Vec<usize>) {
        let span = (radius / self.cell).ceil();
        let (lo, hi) = match (
            Self::key(&query.map(|q| q - radius), self.cell),
            Self::key(&query.map(|q| q + radius), self.cell),
        ) {
            (Some(lo), Some(hi)) if span <= 4.0 => (lo, hi),
            _ => {
                // Query far larger than the cell size: walking occupied cells is cheaper.
                for members in self.cells.values() {
                    out.extend(members.iter().copied().filter(|&j| sq_dist(&embedded[j], &query) <= radius * radius));
                }
                return;
            }
        };
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                for z in lo[2]..=hi[2] {
                    if let Some(members) = self.cells.get(&[x, y, z]) {
                        out.extend(
                            members
                                .iter()
                                .copied()
                                .filter(|&j| sq_dist(&embedded[j], &query) <= radius * radius),
                        );
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct KdNode {
    lo: usize,
    hi: usize,
    /// `None` for leaves.
    split: Option<(usize, f64, usize, usize)>,
}

#[derive(Debug, Clone)]
struct KdTree {
    order: Vec<usize>,
    nodes: Vec<KdNode>,
}

impl KdTree {
    fn build(embedded: &[[f64; 3]], dims: usize) -> Self {
        let mut tree = KdTree {
            order: (0..embedded.len()).collect(),
            nodes: Vec::new(),
        };
        if !embedded.is_empty() {
            tree.build_node(embedded, dims, 0, embedded.len());
        }
        tree
    }

    fn build_node(&mut self, embedded: &[[f64; 3]], dims: usize, lo: usize, hi: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(KdNode { lo, hi, split: None });
        if hi - lo <= LEAF_SIZE {
            return id;
        }
        // Split on the axis of widest spread.
        let slice = &mut self.order[lo..hi];
        let axis = (0..dims)
            .max_by(|&a, &b| {
                let spread = |d: usize| {
                    let (mn, mx) = slice.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(mn, mx), &i| {
                        (mn.min(embedded[i][d]), mx.max(embedded[i][d]))
                    });
                    mx - mn
                };
                spread(a).total_cmp(&spread(b)).then(b.cmp(&a))
            })
            .unwrap_or(0);
        let mid = (hi - lo) / 2;
        slice.select_nth_unstable_by(mid, |&a, &b| embedded[a][axis].total_cmp(&embedded[b][axis]).then(a.cmp(&b)));
        let split_value = embedded[slice[mid]][axis];
        let left = self.build_node(embedded, dims, lo, lo + mid);
        let right = self.build_node(embedded, dims, lo + mid, hi);
        self.nodes[id].split = Some((axis, split_value, left, right));
        id
    }

    fn candidates(&self, embedded: &[[f64; 3]], query: [f64; 3], radius: f64, out: &mut Vec<usize>) {
        if self.nodes.is_empty() {
            return;
        }
        let r2 = radius * radius;
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            match node.split {
                None => out.extend(
                    self.order[node.lo..node.hi]
                        .iter()
                        .copied()
                        .filter(|&j| sq_dist(&embedded[j], &query) <= r2),
                ),
                Some((axis, split, left, right)) => {
                    // Left holds values <= split, right holds values >= split.
                    if query[axis] - radius <= split {
                        stack.push(left);
                    }
                    if query[axis] + radius >= split {
                        stack.push(right);
                    }
                }
            }
        }
    }
}
