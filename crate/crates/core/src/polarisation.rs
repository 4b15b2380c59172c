//! Polarisations of Davis complex patches: a choice of longest diagonal in
//! every cell. Admissible polarisations cover every vertex exactly once.
//!
//! Diagonal `d` of a `2m`-gon joins `boundary[d]` and `boundary[d + m]`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::tiling::{DirectionAssignment, TilingPatch, Vec2};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolarisationError {
    #[error("cell {0} does not have a single source and an opposite sink")]
    InconsistentDirections(usize),
    #[error("no rigidity witness: every direction class fails")]
    NoWitness,
    #[error("polarisation has {got} entries, patch has {expected} cells")]
    Size { expected: usize, got: usize },
}

/// Diagonal index per cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Polarisation(pub Vec<usize>);

impl Polarisation {
    /// Endpoints of the chosen diagonal of `cell`.
    pub fn endpoints(&self, patch: &TilingPatch, cell: usize) -> (usize, usize) {
        let c = &patch.cells[cell];
        let d = self.0[cell];
        (c.boundary[d], c.boundary[d + c.m as usize])
    }

    /// Cell id → diagonal endpoints, as JSON.
    pub fn to_json(&self, patch: &TilingPatch) -> serde_json::Value {
        let map: BTreeMap<String, [usize; 2]> = (0..self.0.len())
            .map(|c| {
                let (a, b) = self.endpoints(patch, c);
                (c.to_string(), [a, b])
            })
            .collect();
        serde_json::to_value(map).expect("map serialises")
    }
}

fn check_size(patch: &TilingPatch, l: &Polarisation) -> Result<(), PolarisationError> {
    if l.0.len() != patch.cells.len() {
        return Err(PolarisationError::Size { expected: patch.cells.len(), got: l.0.len() });
    }
    Ok(())
}

/// Number of chosen diagonals through each vertex.
pub fn coverage(patch: &TilingPatch, l: &Polarisation) -> Vec<usize> {
    let mut count = vec![0; patch.vertices.len()];
    for c in 0..patch.cells.len() {
        let (a, b) = l.endpoints(patch, c);
        count[a] += 1;
        count[b] += 1;
    }
    count
}

pub fn is_admissible(patch: &TilingPatch, l: &Polarisation) -> bool {
    l.0.len() == patch.cells.len()
        && l.0.iter().zip(&patch.cells).all(|(&d, c)| d < c.m as usize)
        && coverage(patch, l).iter().all(|&n| n == 1)
}

/// The polarisation joining, in every cell, the vertex where both boundary
/// paths start to the vertex where both end.
pub fn induced(patch: &TilingPatch, d: &DirectionAssignment) -> Result<Polarisation, PolarisationError> {
    let mut out = Vec::with_capacity(patch.cells.len());
    for (c, cell) in patch.cells.iter().enumerate() {
        let n = cell.size();
        // out_of[i]: edge i leaves boundary[i].
        let out_of: Vec<bool> = (0..n).map(|i| d.ends(patch, cell.edges[i]).0 == cell.boundary[i]).collect();
        let sources: Vec<usize> = (0..n).filter(|&i| out_of[i] && !out_of[(i + n - 1) % n]).collect();
        let sinks: Vec<usize> = (0..n).filter(|&i| !out_of[i] && out_of[(i + n - 1) % n]).collect();
        match (sources.as_slice(), sinks.as_slice()) {
            ([a], [b]) if (a + cell.m as usize) % n == *b => out.push(a % cell.m as usize),
            _ => return Err(PolarisationError::InconsistentDirections(c)),
        }
    }
    Ok(Polarisation(out))
}

/// Cell order for backtracking: breadth first through shared vertices,
/// starting from the cell with the smallest centre.
fn cell_order(patch: &TilingPatch) -> Vec<usize> {
    let mut seen = vec![false; patch.cells.len()];
    let mut order = Vec::new();
    let mut starts: Vec<usize> = (0..patch.cells.len()).collect();
    starts.sort_by_key(|&c| (patch.cells[c].centre, patch.cells[c].types));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for &v in &patch.cells[c].boundary {
                for &n in patch.cells_at(v) {
                    if !seen[n] {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
    }
    order
}

struct Completion<'a> {
    patch: &'a TilingPatch,
    order: Vec<usize>,
    choice: Vec<Option<usize>>,
    covered: Vec<bool>,
    limit: usize,
    found: Vec<Polarisation>,
}

impl Completion<'_> {
    fn new<'p>(patch: &'p TilingPatch, fixed: &[Option<usize>], limit: usize) -> Option<Completion<'p>> {
        let mut covered = vec![false; patch.vertices.len()];
        for (c, d) in fixed.iter().enumerate() {
            if let Some(d) = *d {
                let cell = &patch.cells[c];
                for v in [cell.boundary[d], cell.boundary[d + cell.m as usize]] {
                    if covered[v] {
                        return None;
                    }
                    covered[v] = true;
                }
            }
        }
        let order = cell_order(patch).into_iter().filter(|&c| fixed[c].is_none()).collect();
        Some(Completion { patch, order, choice: fixed.to_vec(), covered, limit, found: Vec::new() })
    }

    fn can_still_cover(&self, v: usize) -> bool {
        self.covered[v]
            || self.patch.cells_at(v).iter().any(|&c| {
                self.choice[c].is_none() && {
                    let cell = &self.patch.cells[c];
                    let i = cell.boundary.iter().position(|&x| x == v).unwrap();
                    let opposite = cell.boundary[(i + cell.m as usize) % cell.size()];
                    !self.covered[opposite]
                }
            })
    }

    fn go(&mut self, i: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if i == self.order.len() {
            if self.covered.iter().all(|&x| x) {
                self.found.push(Polarisation(self.choice.iter().map(|d| d.unwrap()).collect()));
            }
            return;
        }
        let c = self.order[i];
        let cell = &self.patch.cells[c];
        let m = cell.m as usize;
        for d in 0..m {
            let (a, b) = (cell.boundary[d], cell.boundary[d + m]);
            if self.covered[a] || self.covered[b] {
                continue;
            }
            self.covered[a] = true;
            self.covered[b] = true;
            self.choice[c] = Some(d);
            let cell = &self.patch.cells[c];
            if cell.boundary.iter().all(|&v| self.can_still_cover(v)) {
                self.go(i + 1);
            }
            self.choice[c] = None;
            self.covered[a] = false;
            self.covered[b] = false;
        }
    }
}

/// Every admissible polarisation of the patch, each once, in a deterministic
/// order.
pub fn enumerate_admissible(patch: &TilingPatch) -> Vec<Polarisation> {
    let fixed = vec![None; patch.cells.len()];
    let mut search = Completion::new(patch, &fixed, usize::MAX).expect("nothing fixed");
    search.go(0);
    search.found
}

fn is_maximal(patch: &TilingPatch, cell: usize) -> bool {
    patch.cells[cell].size() == patch.max_cell_size()
}

/// The unique admissible polarisation agreeing with `partial` on maximal
/// cells, if there is exactly one.
pub fn determined_values(patch: &TilingPatch, partial: &[Option<usize>]) -> Option<Polarisation> {
    let fixed: Vec<Option<usize>> =
        (0..patch.cells.len()).map(|c| if is_maximal(patch, c) { partial[c] } else { None }).collect();
    if (0..patch.cells.len()).any(|c| is_maximal(patch, c) && fixed[c].is_none()) {
        return None;
    }
    let mut search = Completion::new(patch, &fixed, 2)?;
    search.go(0);
    match search.found.len() {
        1 => search.found.pop(),
        _ => None,
    }
}

/// A direction class `class` such that every maximal cell's diagonal ends on
/// edges of that class, and the translations across edges of that class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityWitness {
    pub class: Vec2,
    /// An edge of the class lying in a maximal cell.
    pub edge: usize,
    /// Its translation, in scaled chart coordinates.
    pub rho: Vec2,
}

/// Whether both ends of every maximal cell's diagonal touch edges of the
/// cell in direction class `class`.
pub fn diagonals_end_on_class(patch: &TilingPatch, l: &Polarisation, class: Vec2) -> bool {
    (0..patch.cells.len()).filter(|&c| is_maximal(patch, c)).all(|c| {
        let cell = &patch.cells[c];
        let n = cell.size();
        let d = l.0[c];
        [d, d + cell.m as usize].iter().all(|&i| {
            [cell.edges[i % n], cell.edges[(i + n - 1) % n]].iter().any(|&e| patch.direction_class(e) == class)
        })
    })
}

struct Lifts<'a> {
    patch: &'a TilingPatch,
    centre_index: HashMap<Vec2, usize>,
}

impl<'a> Lifts<'a> {
    fn new(patch: &'a TilingPatch) -> Self {
        let centre_index = patch.cells.iter().enumerate().map(|(i, c)| (c.centre, i)).collect();
        Lifts { patch, centre_index }
    }

    /// Crossing edge `cell.edges[side]` of a cell whose lift is shifted by
    /// `shift`: the neighbouring cell, its side index on that edge, and its
    /// shift.
    fn cross(&self, cell: usize, side: usize, shift: Vec2) -> (usize, usize, Vec2) {
        let p = self.patch;
        let c = &p.cells[cell];
        let e = c.edges[side];
        let next = *p.cells_on_edge(e).iter().find(|&&x| x != cell).expect("edge in two cells");
        let nc = &p.cells[next];
        let j = nc.edges.iter().position(|&x| x == e).unwrap();
        let n = c.size();
        let sum_here = add(add(c.lift[side], c.lift[(side + 1) % n]), scale(shift, 2));
        let sum_there = add(nc.lift[j], nc.lift[(j + 1) % nc.size()]);
        let diff = sub(sum_here, sum_there);
        (next, j, [diff[0] / 2, diff[1] / 2])
    }

    /// Walks from a maximal cell across `cell.edges[side]`, through opposite
    /// sides of smaller cells, to the next maximal cell, returning the
    /// translation between the two.
    fn e_translation(&self, cell: usize, side: usize) -> Vec2 {
        let p = self.patch;
        let (mut cur, mut j, mut shift) = self.cross(cell, side, [0, 0]);
        while !is_maximal(p, cur) {
            let n = p.cells[cur].size();
            let opposite = (j + n / 2) % n;
            (cur, j, shift) = self.cross(cur, opposite, shift);
        }
        sub(add(p.cells[cur].centre, shift), p.cells[cell].centre)
    }

    /// Whether translating by `rho` maps the patch to itself and `l` to `l`.
    fn preserves(&self, l: &Polarisation, rho: Vec2) -> bool {
        let p = self.patch;
        let torus = p.torus();
        (0..p.cells.len()).all(|c| {
            let cell = &p.cells[c];
            let Some(&image) = self.centre_index.get(&torus.reduce(add(cell.centre, rho))) else {
                return false;
            };
            if p.cells[image].size() != cell.size() {
                return false;
            }
            let d = l.0[c];
            let ends = [cell.lift[d], cell.lift[d + cell.m as usize]].map(|x| p.vertex_at(add(x, rho)));
            let (a, b) = l.endpoints(p, image);
            ends == [Some(a), Some(b)] || ends == [Some(b), Some(a)]
        })
    }
}

fn add(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn scale(a: Vec2, k: i64) -> Vec2 {
    [a[0] * k, a[1] * k]
}

/// Translation across `edge` from one of its maximal cells to the next
/// maximal cell, or `None` when the edge lies in no maximal cell.
pub fn e_translation(patch: &TilingPatch, edge: usize) -> Option<Vec2> {
    let cell = *patch.cells_on_edge(edge).iter().filter(|&&c| is_maximal(patch, c)).min()?;
    let side = patch.cells[cell].edges.iter().position(|&e| e == edge).unwrap();
    Some(Lifts::new(patch).e_translation(cell, side))
}

/// Whether translating by `rho` (scaled chart coordinates) preserves `l`.
pub fn translation_preserves(patch: &TilingPatch, l: &Polarisation, rho: Vec2) -> bool {
    Lifts::new(patch).preserves(l, rho)
}

/// Searches for a direction class on whose edges every maximal cell's
/// diagonal ends, such that every translation across an edge of that class
/// preserves `l`.
pub fn check_rigidity(patch: &TilingPatch, l: &Polarisation) -> Result<RigidityWitness, PolarisationError> {
    check_size(patch, l)?;
    witnesses(patch, l, true).into_iter().next().ok_or(PolarisationError::NoWitness)
}

/// One witness per direction class that passes the rigidity check.
pub fn rigidity_witnesses(patch: &TilingPatch, l: &Polarisation) -> Result<Vec<RigidityWitness>, PolarisationError> {
    check_size(patch, l)?;
    Ok(witnesses(patch, l, false))
}

fn witnesses(patch: &TilingPatch, l: &Polarisation, first_only: bool) -> Vec<RigidityWitness> {
    let lifts = Lifts::new(patch);
    let mut classes: Vec<Vec2> = (0..patch.edges.len()).map(|e| patch.direction_class(e)).collect();
    classes.sort_unstable();
    classes.dedup();
    let mut out = Vec::new();
    'class: for class in classes {
        if !diagonals_end_on_class(patch, l, class) {
            continue;
        }
        let mut witness = None;
        for (c, cell) in patch.cells.iter().enumerate() {
            if !is_maximal(patch, c) {
                continue;
            }
            for (side, &e) in cell.edges.iter().enumerate() {
                if patch.direction_class(e) != class {
                    continue;
                }
                let rho = lifts.e_translation(c, side);
                if !lifts.preserves(l, rho) {
                    continue 'class;
                }
                witness.get_or_insert(RigidityWitness { class, edge: e, rho });
            }
        }
        if let Some(w) = witness {
            out.push(w);
            if first_only {
                break;
            }
        }
    }
    out
}
