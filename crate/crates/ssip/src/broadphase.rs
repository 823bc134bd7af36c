//! Bucket-grid broad phase producing candidate element pairs.
//!
//! Each element is bounded by the axis-aligned box of its cubic Bezier
//! control polygon (which contains the Hermite centerline) inflated by the
//! cross-section radius, so the box bounds the whole fiber surface. The
//! boxes are registered in every cell of a uniform grid they overlap;
//! a pair query expands the boxes by the cutoff, collects co-registered
//! candidates, and keeps a pair only if the box-to-box distance is within
//! the cutoff. Because boxes bound the surfaces, every pair whose true
//! minimal distance is within the cutoff survives — the filter only
//! removes provably distant pairs.

use crate::geometry::BeamElement;
use crate::{Error, Result};
use nalgebra::Vector3;
use std::collections::HashMap;

/// Which same-fiber neighbors to exclude from candidate pairs.
///
/// Pairs of elements sharing a node are always excluded (their interaction
/// is part of the fiber's own constitutive behavior); next-nearest
/// neighbors on a fiber are included by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdjacencyPolicy {
    /// Exclude only element pairs that share a node (default).
    #[default]
    ExcludeSharedNode,
    /// Additionally exclude next-nearest neighbors on the same fiber.
    ExcludeSharedNodeAndNextNearest,
    /// Exclude every same-fiber pair (inter-fiber interactions only).
    ExcludeSameFiber,
}

/// Broad-phase view of one element: its inflated bounding box plus the
/// connectivity needed for adjacency exclusion.
#[derive(Debug, Clone)]
pub struct ElementSite {
    /// Lower corner of the surface bounding box.
    pub min: Vector3<f64>,
    /// Upper corner of the surface bounding box.
    pub max: Vector3<f64>,
    /// Fiber (connected chain) this element belongs to.
    pub fiber: usize,
    /// Global ids of the element's two nodes.
    pub nodes: (usize, usize),
}

/// Build the broad-phase descriptor of an element: control-polygon box
/// inflated by the radius.
pub fn element_site(elem: &BeamElement, fiber: usize, nodes: (usize, usize)) -> ElementSite {
    // Bezier control points of the Hermite segment (parameter u in [0,1]):
    // b0 = p_a, b1 = p_a + (l/2) t_a * (2/3), b2 = p_b - (l/2) t_b * (2/3),
    // b3 = p_b. Their convex hull contains the curve.
    let half = 0.5 * elem.ref_length;
    let p0 = elem.node_a.pos;
    let p3 = elem.node_b.pos;
    let p1 = p0 + (2.0 / 3.0) * half * elem.node_a.tan;
    let p2 = p3 - (2.0 / 3.0) * half * elem.node_b.tan;
    let mut min = p0;
    let mut max = p0;
    for p in [&p1, &p2, &p3] {
        for c in 0..3 {
            min[c] = min[c].min(p[c]);
            max[c] = max[c].max(p[c]);
        }
    }
    let r = Vector3::repeat(elem.radius);
    ElementSite {
        min: min - r,
        max: max + r,
        fiber,
        nodes,
    }
}

/// Uniform bucket grid over element bounding boxes.
#[derive(Debug, Clone)]
pub struct BucketGrid {
    cell: f64,
    cells: HashMap<(i64, i64, i64), Vec<u32>>,
    sites: Vec<ElementSite>,
}

fn cell_of(x: f64, cell: f64) -> i64 {
    (x / cell).floor() as i64
}

fn cell_range(site: &ElementSite, pad: f64, cell: f64) -> [(i64, i64); 3] {
    std::array::from_fn(|c| {
        (
            cell_of(site.min[c] - pad, cell),
            cell_of(site.max[c] + pad, cell),
        )
    })
}

impl BucketGrid {
    /// Register every element in all cells its bounding box overlaps.
    pub fn build(sites: Vec<ElementSite>, cell_size: f64) -> Result<BucketGrid> {
        if !(cell_size > 0.0) || !cell_size.is_finite() {
            return Err(Error::parameter(
                "cell_size",
                format!("cell size must be positive and finite, got {cell_size}"),
            ));
        }
        let mut cells: HashMap<(i64, i64, i64), Vec<u32>> = HashMap::new();
        for (id, site) in sites.iter().enumerate() {
            let [rx, ry, rz] = cell_range(site, 0.0, cell_size);
            for ix in rx.0..=rx.1 {
                for iy in ry.0..=ry.1 {
                    for iz in rz.0..=rz.1 {
                        cells.entry((ix, iy, iz)).or_default().push(id as u32);
                    }
                }
            }
        }
        Ok(BucketGrid {
            cell: cell_size,
            cells,
            sites,
        })
    }

    /// Cell edge length.
    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    /// Registered element descriptors, in input order.
    pub fn sites(&self) -> &[ElementSite] {
        &self.sites
    }

    /// Cells occupied by one element's box (for diagnostics and tests).
    pub fn cells_of(&self, id: usize) -> Vec<(i64, i64, i64)> {
        let [rx, ry, rz] = cell_range(&self.sites[id], 0.0, self.cell);
        let mut out = Vec::new();
        for ix in rx.0..=rx.1 {
            for iy in ry.0..=ry.1 {
                for iz in rz.0..=rz.1 {
                    out.push((ix, iy, iz));
                }
            }
        }
        out
    }
}

fn adjacent(a: &ElementSite, b: &ElementSite, policy: AdjacencyPolicy) -> bool {
    if a.fiber != b.fiber {
        return false;
    }
    let shares_node = a.nodes.0 == b.nodes.0
        || a.nodes.0 == b.nodes.1
        || a.nodes.1 == b.nodes.0
        || a.nodes.1 == b.nodes.1;
    match policy {
        AdjacencyPolicy::ExcludeSharedNode => shares_node,
        AdjacencyPolicy::ExcludeSharedNodeAndNextNearest => {
            // Next-nearest on a chain: node ids at distance two.
            let (a0, a1) = (a.nodes.0 as i64, a.nodes.1 as i64);
            let (b0, b1) = (b.nodes.0 as i64, b.nodes.1 as i64);
            let next_nearest = [a0 - b0, a0 - b1, a1 - b0, a1 - b1]
                .iter()
                .any(|d| d.abs() == 1)
                && !shares_node;
            shares_node || next_nearest
        }
        AdjacencyPolicy::ExcludeSameFiber => true,
    }
}

/// Squared distance between two axis-aligned boxes (0 when overlapping).
fn box_distance_sq(a: &ElementSite, b: &ElementSite) -> f64 {
    let mut d2 = 0.0;
    for c in 0..3 {
        let gap = (a.min[c] - b.max[c]).max(b.min[c] - a.max[c]).max(0.0);
        d2 += gap * gap;
    }
    d2
}

/// Candidate element pairs whose surfaces may lie within `cutoff`.
///
/// The result is a sorted, duplicate-free list of `(i, j)` with `i < j`,
/// a superset of all pairs whose minimal surface (or centerline) distance
/// is at most `cutoff`, with self-pairs and policy-excluded neighbors
/// removed. An infinite cutoff returns every admissible pair.
pub fn candidate_pairs(
    grid: &BucketGrid,
    cutoff: f64,
    policy: AdjacencyPolicy,
) -> Result<Vec<(u32, u32)>> {
    if cutoff.is_nan() || cutoff < 0.0 {
        return Err(Error::parameter(
            "cutoff",
            format!("cutoff must be nonnegative (or infinite), got {cutoff}"),
        ));
    }
    let n = grid.sites.len();
    let mut pairs: Vec<(u32, u32)> = Vec::new();

    if cutoff.is_infinite() {
        for i in 0..n {
            for j in (i + 1)..n {
                if !adjacent(&grid.sites[i], &grid.sites[j], policy) {
                    pairs.push((i as u32, j as u32));
                }
            }
        }
        return Ok(pairs);
    }

    let cutoff_sq = cutoff * cutoff;
    let mut seen: Vec<u32> = vec![u32::MAX; n];
    for i in 0..n {
        let site = &grid.sites[i];
        // Expanding this element's box by the cutoff reaches every cell
        // that can hold a partner within range.
        let [rx, ry, rz] = cell_range(site, cutoff, grid.cell);
        for ix in rx.0..=rx.1 {
            for iy in ry.0..=ry.1 {
                for iz in rz.0..=rz.1 {
                    let Some(ids) = grid.cells.get(&(ix, iy, iz)) else {
                        continue;
                    };
                    for &j in ids {
                        if (j as usize) <= i || seen[j as usize] == i as u32 {
                            continue;
                        }
                        seen[j as usize] = i as u32;
                        let other = &grid.sites[j as usize];
                        if box_distance_sq(site, other) <= cutoff_sq
                            && !adjacent(site, other, policy)
                        {
                            pairs.push((i as u32, j));
                        }
                    }
                }
            }
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}
