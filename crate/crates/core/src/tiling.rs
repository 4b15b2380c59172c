//! Doubly periodic patches of the square tiling and of the Davis complexes of
//! the Euclidean triangle groups {3,3,3}, {2,4,4} and {2,3,6}.
//!
//! Each tiling is realised exactly: the Coxeter group acts on an integer chart
//! by affine maps, vertices are the orbit of a generic base point, edges join
//! `w·p0` to `w·g·p0`, and the cells are the orbits of the dihedral
//! subgroups. A patch is the quotient by a lattice of translations of the
//! group, so edge types survive the quotient.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::dihedral::DihedralGroup;
use crate::presentation::{Gen, Word};

pub type Vec2 = [i64; 2];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TilingError {
    #[error("exponents {0:?} do not form a Euclidean triangle group")]
    NotEuclidean([u32; 3]),
    #[error("lattice vectors are linearly dependent")]
    DegenerateLattice,
    #[error("lattice vector {0:?} is not a type-preserving translation")]
    IncompatibleLattice(Vec2),
    #[error("lattice is too small: a cell or edge meets itself in the quotient")]
    LatticeTooSmall,
    #[error("edge type propagation conflict at edge {0}")]
    TypeConflict(usize),
    #[error("edge types are underdetermined by the seed")]
    TypeUnderdetermined,
    #[error("direction assignment covers {got} edges, patch has {expected}")]
    DirectionSize { expected: usize, got: usize },
}

/// The tiling of a plane: the square tiling, or a Euclidean Davis complex
/// with the given exponents on the generator pairs of `s = 0, t = 1, r = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TriangleType {
    Square,
    Euclidean { m_st: u32, m_tr: u32, m_sr: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TilingKind {
    Square,
    E333,
    E244,
    E236,
}

/// Exponent multisets (sorted) `{m, m', m''}` with `1/m + 1/m' + 1/m'' = 1`.
pub fn admissible_exponent_triples() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    // m <= m' <= m'' forces m <= 3 and m' <= 6.
    for a in 2..=3u32 {
        for b in a..=6 {
            // a b c = b c + a c + a b  <=>  c (a b - a - b) = a b
            let den = a * b - a - b;
            if den > 0 && (a * b) % den == 0 && a * b / den >= b {
                out.push([a, b, a * b / den]);
            }
        }
    }
    out
}

pub fn is_admissible_triple(ms: [u32; 3]) -> bool {
    let mut sorted = ms;
    sorted.sort_unstable();
    admissible_exponent_triples().contains(&sorted)
}

impl TriangleType {
    pub fn euclidean(m_st: u32, m_tr: u32, m_sr: u32) -> Result<Self, TilingError> {
        if !is_admissible_triple([m_st, m_tr, m_sr]) {
            return Err(TilingError::NotEuclidean([m_st, m_tr, m_sr]));
        }
        Ok(TriangleType::Euclidean { m_st, m_tr, m_sr })
    }

    pub fn kind(&self) -> TilingKind {
        match *self {
            TriangleType::Square => TilingKind::Square,
            TriangleType::Euclidean { m_st, m_tr, m_sr } => {
                let mut ms = [m_st, m_tr, m_sr];
                ms.sort_unstable();
                match ms {
                    [3, 3, 3] => TilingKind::E333,
                    [2, 4, 4] => TilingKind::E244,
                    _ => TilingKind::E236,
                }
            }
        }
    }

    /// Number of edge types.
    pub fn rank(&self) -> usize {
        match self {
            TriangleType::Square => 2,
            TriangleType::Euclidean { .. } => 3,
        }
    }

    /// Exponent between two edge types.
    pub fn exponent(&self, a: Gen, b: Gen) -> u32 {
        match *self {
            TriangleType::Square => 2,
            TriangleType::Euclidean { m_st, m_tr, m_sr } => match (a.min(b), a.max(b)) {
                (0, 1) => m_st,
                (1, 2) => m_tr,
                (0, 2) => m_sr,
                _ => panic!("no exponent for types {a}, {b}"),
            },
        }
    }
}

/// Integer affine map `p ↦ a·p + t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub a: [[i64; 2]; 2],
    pub t: Vec2,
}

impl Affine {
    pub const IDENTITY: Affine = Affine { a: [[1, 0], [0, 1]], t: [0, 0] };

    fn new(a: [[i64; 2]; 2], t: Vec2) -> Self {
        Affine { a, t }
    }

    pub fn apply(&self, p: Vec2) -> Vec2 {
        [
            self.a[0][0] * p[0] + self.a[0][1] * p[1] + self.t[0],
            self.a[1][0] * p[0] + self.a[1][1] * p[1] + self.t[1],
        ]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Affine) -> Affine {
        let mut a = [[0; 2]; 2];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.a[i][0] * other.a[0][j] + self.a[i][1] * other.a[1][j];
            }
        }
        let t0 = self.apply(other.t);
        Affine { a, t: t0 }
    }

    pub fn is_translation(&self) -> bool {
        self.a == Affine::IDENTITY.a
    }
}

/// How chart coordinates relate to the Euclidean plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// Standard orthonormal coordinates.
    Square,
    /// Coordinates `(x1, x2)` of `x1 e1 + x2 e2` in the plane `x1 + x2 + x3 = 0`.
    Triangular,
}

/// A reflection group realised on an integer chart, scaled by `scale` so the
/// base point and every rotation centre are integral.
#[derive(Clone, Debug)]
pub struct CoxeterModel {
    pub chart: Chart,
    pub scale: i64,
    pub reflections: Vec<Affine>,
    /// Edge type carried by each reflection.
    pub labels: Vec<Gen>,
    pub base_point: Vec2,
}

impl CoxeterModel {
    pub fn new(tt: TriangleType) -> Self {
        let swap = [[0, 1], [1, 0]];
        let (chart, scale, reflections, base_point) = match tt.kind() {
            TilingKind::Square => (
                Chart::Square,
                2,
                vec![
                    Affine::new([[-1, 0], [0, 1]], [0, 0]),
                    Affine::new([[-1, 0], [0, 1]], [4, 0]),
                    Affine::new([[1, 0], [0, -1]], [0, 0]),
                    Affine::new([[1, 0], [0, -1]], [0, 4]),
                ],
                [1, 1],
            ),
            // Mirrors x1 = x2, x2 = x3 and x1 = x3 + 3: the centroid of the
            // fundamental triangle is the base point.
            TilingKind::E333 => (
                Chart::Triangular,
                3,
                vec![
                    Affine::new(swap, [0, 0]),
                    Affine::new([[1, 0], [-1, -1]], [0, 0]),
                    Affine::new([[-1, -1], [0, 1]], [3, 0]),
                ],
                [1, 0],
            ),
            // Triangle (0,0), (10,0), (5,5); the base point lies on its
            // mirror axis x = 5.
            TilingKind::E244 => (
                Chart::Square,
                10,
                vec![
                    Affine::new(swap, [0, 0]),
                    Affine::new([[1, 0], [0, -1]], [0, 0]),
                    Affine::new([[0, -1], [-1, 0]], [10, 10]),
                ],
                [5, 2],
            ),
            TilingKind::E236 => (
                Chart::Triangular,
                24,
                vec![
                    Affine::new(swap, [0, 0]),
                    Affine::new([[-1, 0], [1, 1]], [0, 0]),
                    Affine::new([[0, -1], [-1, 0]], [-24, -24]),
                ],
                [-5, -13],
            ),
        };
        let mut model = CoxeterModel { chart, scale, reflections, labels: Vec::new(), base_point };
        model.labels = match tt {
            TriangleType::Square => vec![0, 0, 1, 1],
            TriangleType::Euclidean { .. } => model.match_labels(tt),
        };
        model
    }

    /// Order of `g·h` as an affine map (capped at 64).
    pub fn product_order(&self, g: usize, h: usize) -> u32 {
        let gh = self.reflections[g].compose(&self.reflections[h]);
        let mut acc = gh;
        for n in 1..=64 {
            if acc == Affine::IDENTITY {
                return n;
            }
            acc = acc.compose(&gh);
        }
        u32::MAX
    }

    fn match_labels(&self, tt: TriangleType) -> Vec<Gen> {
        const PERMS: [[Gen; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        PERMS
            .iter()
            .find(|p| {
                (0..3).all(|g| {
                    (g + 1..3).all(|h| self.product_order(g, h) == tt.exponent(p[g], p[h]))
                })
            })
            .expect("Euclidean exponents match the model up to relabelling")
            .to_vec()
    }

    /// Common fixed point of two reflections generating a finite group.
    pub fn rotation_centre(&self, g: usize, h: usize) -> Vec2 {
        let (f, k) = (&self.reflections[g], &self.reflections[h]);
        // Solve (I - A_f) p = t_f and (I - A_k) p = t_k.
        let rows: Vec<([i64; 2], i64)> = [f, k]
            .iter()
            .flat_map(|r| {
                (0..2).map(move |i| {
                    let mut row = [-r.a[i][0], -r.a[i][1]];
                    row[i] += 1;
                    (row, r.t[i])
                })
            })
            .collect();
        for (i, (r1, c1)) in rows.iter().enumerate() {
            for (r2, c2) in &rows[i + 1..] {
                let det = r1[0] * r2[1] - r1[1] * r2[0];
                if det != 0 {
                    let x = c1 * r2[1] - r1[1] * c2;
                    let y = r1[0] * c2 - c1 * r2[0];
                    assert!(x % det == 0 && y % det == 0, "rotation centre is not integral");
                    let p = [x / det, y / det];
                    assert!(f.apply(p) == p && k.apply(p) == p);
                    return p;
                }
            }
        }
        panic!("reflections {g}, {h} have no isolated common fixed point")
    }

    /// Translations of the group (in unscaled chart coordinates), as a
    /// reduced basis `[(a, 0), (b, c)]`.
    pub fn translation_lattice(&self) -> [Vec2; 2] {
        let mut seen: HashMap<Affine, ()> = HashMap::new();
        let mut frontier = vec![Affine::IDENTITY];
        seen.insert(Affine::IDENTITY, ());
        let mut translations = Vec::new();
        for _ in 0..16 {
            let mut next = Vec::new();
            for w in &frontier {
                for r in &self.reflections {
                    let x = w.compose(r);
                    if seen.insert(x, ()).is_none() {
                        if x.is_translation() {
                            translations.push(x.t);
                        }
                        next.push(x);
                    }
                }
            }
            frontier = next;
        }
        let [b1, b2] = lattice_basis(&translations);
        let s = self.scale;
        assert!(b1.iter().chain(&b2).all(|x| x % s == 0));
        [[b1[0] / s, b1[1] / s], [b2[0] / s, b2[1] / s]]
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Basis `[(g, 0), v]` of the lattice spanned by `vectors` (assumed full rank).
pub fn lattice_basis(vectors: &[Vec2]) -> [Vec2; 2] {
    let mut v: Vec2 = [0, 0];
    let mut gx = 0i64;
    for &u0 in vectors {
        let mut u = u0;
        while u[1] != 0 {
            let q = v[1] / u[1];
            v = [v[0] - q * u[0], v[1] - q * u[1]];
            std::mem::swap(&mut u, &mut v);
        }
        gx = gcd(gx, u[0]);
    }
    if v[1] < 0 {
        v = [-v[0], -v[1]];
    }
    if gx != 0 {
        v[0] = v[0].rem_euclid(gx);
    }
    [[gx, 0], v]
}

/// Whether `x` lies in the lattice with basis `[(g, 0), v]` from [`lattice_basis`].
pub fn lattice_contains(basis: &[Vec2; 2], x: Vec2) -> bool {
    let [[g, _], v] = *basis;
    if v[1] == 0 || x[1] % v[1] != 0 {
        return false;
    }
    let rest = x[0] - (x[1] / v[1]) * v[0];
    if g == 0 {
        rest == 0
    } else {
        rest % g == 0
    }
}

fn cross(a: Vec2, b: Vec2) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Reduction of points modulo a lattice to its half-open fundamental
/// parallelogram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Torus {
    pub basis: [Vec2; 2],
    det: i64,
}

impl Torus {
    pub fn new(b1: Vec2, b2: Vec2) -> Result<Self, TilingError> {
        let det = cross(b1, b2);
        match det.signum() {
            0 => Err(TilingError::DegenerateLattice),
            1 => Ok(Torus { basis: [b1, b2], det }),
            _ => Ok(Torus { basis: [b2, b1], det: -det }),
        }
    }

    pub fn scaled(&self, k: i64) -> Torus {
        let [b1, b2] = self.basis;
        Torus { basis: [[k * b1[0], k * b1[1]], [k * b2[0], k * b2[1]]], det: k * k * self.det }
    }

    pub fn reduce(&self, p: Vec2) -> Vec2 {
        let [b1, b2] = self.basis;
        let a = cross(p, b2).div_euclid(self.det);
        let b = cross(b1, p).div_euclid(self.det);
        [p[0] - a * b1[0] - b * b2[0], p[1] - a * b1[1] - b * b2[1]]
    }

    /// Area of the fundamental domain.
    pub fn area(&self) -> i64 {
        self.det
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    /// Scaled chart position, reduced modulo the lattice.
    pub pos: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    /// Displacement from `a` to `b` in scaled chart coordinates.
    pub disp: Vec2,
    /// Index of the model reflection crossing the edge.
    pub reflection: usize,
    #[serde(rename = "type")]
    pub ty: Gen,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// The two edge types, smaller first.
    pub types: (Gen, Gen),
    pub m: u32,
    /// Scaled rotation centre, reduced modulo the lattice.
    pub centre: Vec2,
    /// The `2m` vertices in cyclic order.
    pub boundary: Vec<usize>,
    /// `edges[i]` joins `boundary[i]` and `boundary[i + 1]`.
    pub edges: Vec<usize>,
    /// Positions of `boundary` around `centre`, not reduced.
    pub lift: Vec<Vec2>,
}

impl Cell {
    pub fn size(&self) -> usize {
        self.boundary.len()
    }
}

/// A finite torus quotient of one of the four tilings.
#[derive(Clone, Debug, Serialize)]
pub struct TilingPatch {
    pub triangle: TriangleType,
    pub chart: Chart,
    pub scale: i64,
    /// Lattice in unscaled chart coordinates.
    pub lattice: [Vec2; 2],
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub cells: Vec<Cell>,
    #[serde(skip)]
    torus: Option<Torus>,
    #[serde(skip)]
    vertex_index: HashMap<Vec2, usize>,
    #[serde(skip)]
    vertex_edges: Vec<Vec<usize>>,
    #[serde(skip)]
    vertex_cells: Vec<Vec<usize>>,
    #[serde(skip)]
    edge_cells: Vec<Vec<usize>>,
}

/// Type-preserving translations of a tiling, in unscaled chart coordinates.
pub fn type_preserving_lattice(tt: TriangleType) -> [Vec2; 2] {
    CoxeterModel::new(tt).translation_lattice()
}

/// Builds the quotient of the tiling by the lattice spanned by `lattice`
/// (unscaled chart coordinates).
pub fn build_patch(tt: TriangleType, lattice: [Vec2; 2]) -> Result<TilingPatch, TilingError> {
    let model = CoxeterModel::new(tt);
    let s = model.scale;
    let scaled = |v: Vec2| [v[0] * s, v[1] * s];
    let torus = Torus::new(scaled(lattice[0]), scaled(lattice[1]))?;
    let allowed = model.translation_lattice();
    for v in lattice {
        if !lattice_contains(&allowed, v) {
            return Err(TilingError::IncompatibleLattice(v));
        }
    }
    let edge_torus = torus.scaled(2);
    let p0 = model.base_point;
    let refl = &model.reflections;

    let mut vertex_index: HashMap<Vec2, usize> = HashMap::new();
    let mut reps: Vec<Affine> = Vec::new();
    let mut vertices = Vec::new();
    let first = torus.reduce(p0);
    vertex_index.insert(first, 0);
    reps.push(Affine::IDENTITY);
    vertices.push(Vertex { pos: first });
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let rep = reps[v];
        for r in refl {
            let q = torus.reduce(rep.apply(r.apply(p0)));
            if let std::collections::hash_map::Entry::Vacant(e) = vertex_index.entry(q) {
                e.insert(vertices.len());
                reps.push(rep.compose(r));
                vertices.push(Vertex { pos: q });
                queue.push_back(vertices.len() - 1);
            }
        }
    }

    let mut edge_index: HashMap<Vec2, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_of = |rep: &Affine, g: usize, edges: &mut Vec<Edge>| -> Result<usize, TilingError> {
        let (pa, pb) = (rep.apply(p0), rep.apply(refl[g].apply(p0)));
        let key = edge_torus.reduce([pa[0] + pb[0], pa[1] + pb[1]]);
        if let Some(&e) = edge_index.get(&key) {
            return Ok(e);
        }
        let a = vertex_index[&torus.reduce(pa)];
        let b = vertex_index[&torus.reduce(pb)];
        if a == b {
            return Err(TilingError::LatticeTooSmall);
        }
        edge_index.insert(key, edges.len());
        edges.push(Edge {
            a,
            b,
            disp: [pb[0] - pa[0], pb[1] - pa[1]],
            reflection: g,
            ty: model.labels[g],
        });
        Ok(edges.len() - 1)
    };
    for rep in &reps {
        for g in 0..refl.len() {
            edge_of(rep, g, &mut edges)?;
        }
    }

    let mut pairs = Vec::new();
    for g in 0..refl.len() {
        for h in g + 1..refl.len() {
            let order = model.product_order(g, h);
            if order < 64 {
                pairs.push((g, h, order, model.rotation_centre(g, h)));
            }
        }
    }
    let mut cell_index: HashMap<(usize, usize, Vec2), usize> = HashMap::new();
    let mut cells: Vec<Cell> = Vec::new();
    for rep in &reps {
        for &(g, h, m, c) in &pairs {
            let raw_centre = rep.apply(c);
            let centre = torus.reduce(raw_centre);
            if cell_index.contains_key(&(g, h, centre)) {
                continue;
            }
            let shift = [centre[0] - raw_centre[0], centre[1] - raw_centre[1]];
            let mut cur = *rep;
            let (mut boundary, mut cell_edges, mut lift) = (Vec::new(), Vec::new(), Vec::new());
            for i in 0..2 * m as usize {
                let gen = if i % 2 == 0 { g } else { h };
                let p = cur.apply(p0);
                boundary.push(vertex_index[&torus.reduce(p)]);
                lift.push([p[0] + shift[0], p[1] + shift[1]]);
                cell_edges.push(edge_of(&cur, gen, &mut edges)?);
                cur = cur.compose(&refl[gen]);
            }
            let mut distinct = boundary.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let mut distinct_edges = cell_edges.clone();
            distinct_edges.sort_unstable();
            distinct_edges.dedup();
            if distinct.len() != boundary.len() || distinct_edges.len() != cell_edges.len() {
                return Err(TilingError::LatticeTooSmall);
            }
            let (lg, lh) = (model.labels[g], model.labels[h]);
            cell_index.insert((g, h, centre), cells.len());
            cells.push(Cell {
                types: (lg.min(lh), lg.max(lh)),
                m,
                centre,
                boundary,
                edges: cell_edges,
                lift,
            });
        }
    }

    let mut patch = TilingPatch {
        triangle: tt,
        chart: model.chart,
        scale: s,
        lattice,
        vertices,
        edges,
        cells,
        torus: Some(torus),
        vertex_index,
        vertex_edges: Vec::new(),
        vertex_cells: Vec::new(),
        edge_cells: Vec::new(),
    };
    patch.index();
    Ok(patch)
}

impl TilingPatch {
    fn index(&mut self) {
        let n = self.vertices.len();
        self.vertex_edges = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            self.vertex_edges[e.a].push(i);
            self.vertex_edges[e.b].push(i);
        }
        self.vertex_cells = vec![Vec::new(); n];
        self.edge_cells = vec![Vec::new(); self.edges.len()];
        for (c, cell) in self.cells.iter().enumerate() {
            for &v in &cell.boundary {
                self.vertex_cells[v].push(c);
            }
            for &e in &cell.edges {
                self.edge_cells[e].push(c);
            }
        }
    }

    pub fn torus(&self) -> &Torus {
        self.torus.as_ref().expect("patch built by build_patch")
    }

    pub fn edges_at(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    pub fn cells_at(&self, v: usize) -> &[usize] {
        &self.vertex_cells[v]
    }

    pub fn cells_on_edge(&self, e: usize) -> &[usize] {
        &self.edge_cells[e]
    }

    /// Vertex at a scaled chart position (any lift).
    pub fn vertex_at(&self, p: Vec2) -> Option<usize> {
        self.vertex_index.get(&self.torus().reduce(p)).copied()
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.triangle, TriangleType::Euclidean { .. })
    }

    /// Largest cell size `2m` occurring in the patch.
    pub fn max_cell_size(&self) -> usize {
        self.cells.iter().map(Cell::size).max().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.cells.len() as i64
    }

    /// Edge types, indexed by edge.
    pub fn edge_types(&self) -> Vec<Gen> {
        self.edges.iter().map(|e| e.ty).collect()
    }

    /// Primitive direction of an edge, up to sign.
    pub fn direction_class(&self, e: usize) -> Vec2 {
        primitive(self.edges[e].disp)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("patch serialises")
    }
}

/// Primitive vector in the direction of `v`, normalised up to sign.
pub fn primitive(v: Vec2) -> Vec2 {
    let g = gcd(v[0], v[1]).max(1);
    let p = [v[0] / g, v[1] / g];
    if p[0] < 0 || (p[0] == 0 && p[1] < 0) {
        [-p[0], -p[1]]
    } else {
        p
    }
}

/// Propagates edge types from `seed` (edge → type, typically the edges at
/// one vertex) using alternation around cells and, for Euclidean patches,
/// distinct types at every vertex.
pub fn assign_edge_types(patch: &TilingPatch, seed: &BTreeMap<usize, Gen>) -> Result<TilingPatch, TilingError> {
    let rank = patch.triangle.rank();
    let mut ty: Vec<Option<Gen>> = vec![None; patch.edges.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let set = |ty: &mut Vec<Option<Gen>>, queue: &mut VecDeque<usize>, e: usize, g: Gen| -> Result<(), TilingError> {
        match ty[e] {
            Some(h) if h != g => Err(TilingError::TypeConflict(e)),
            Some(_) => Ok(()),
            None => {
                ty[e] = Some(g);
                queue.push_back(e);
                Ok(())
            }
        }
    };
    for (&e, &g) in seed {
        set(&mut ty, &mut queue, e, g)?;
    }
    while let Some(e) = queue.pop_front() {
        for &c in patch.cells_on_edge(e) {
            let cell = &patch.cells[c];
            let n = cell.size();
            let i = cell.edges.iter().position(|&x| x == e).expect("edge on cell");
            let other = if patch.is_euclidean() {
                [cell.edges[(i + 1) % n], cell.edges[(i + n - 1) % n]].iter().find_map(|&x| ty[x])
            } else {
                Some(1 - ty[e].unwrap())
            };
            if let Some(h) = other {
                let g = ty[e].unwrap();
                if h == g {
                    return Err(TilingError::TypeConflict(e));
                }
                for j in 0..n {
                    let want = if (j + n - i).is_multiple_of(2) { g } else { h };
                    set(&mut ty, &mut queue, cell.edges[j], want)?;
                }
            }
        }
        if patch.is_euclidean() {
            for v in [patch.edges[e].a, patch.edges[e].b] {
                let at = patch.edges_at(v);
                let known: Vec<Gen> = at.iter().filter_map(|&x| ty[x]).collect();
                if known.len() == at.len() - 1 {
                    let missing = (0..rank).find(|g| !known.contains(g));
                    let free = at.iter().find(|&&x| ty[x].is_none());
                    if let (Some(g), Some(&x)) = (missing, free) {
                        set(&mut ty, &mut queue, x, g)?;
                    }
                }
            }
        }
    }
    let mut out = patch.clone();
    for (e, t) in ty.into_iter().enumerate() {
        out.edges[e].ty = t.ok_or(TilingError::TypeUnderdetermined)?;
    }
    for c in 0..out.cells.len() {
        let (a, b) = (out.edges[out.cells[c].edges[0]].ty, out.edges[out.cells[c].edges[1]].ty);
        out.cells[c].types = (a.min(b), a.max(b));
    }
    Ok(out)
}

/// Orientation and length label of every edge: edge `e` runs from `a` to `b`
/// when `forward[e]`, and is `length[e]`-long.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DirectionAssignment {
    pub forward: Vec<bool>,
    pub length: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DirectionViolation {
    /// The boundary word of the cell is nontrivial.
    CellBoundary { cell: usize },
    /// A long edge whose opposite edge in the cell has a different label.
    UnpairedLongEdge { cell: usize, edge: usize },
    /// Two long edges in different direction classes.
    NonParallelLongEdges { first: usize, second: usize },
}

impl DirectionAssignment {
    pub fn uniform(patch: &TilingPatch) -> Self {
        DirectionAssignment { forward: vec![true; patch.edges.len()], length: vec![1; patch.edges.len()] }
    }

    pub fn reversed(&self) -> Self {
        DirectionAssignment { forward: self.forward.iter().map(|f| !f).collect(), length: self.length.clone() }
    }

    fn check_size(&self, patch: &TilingPatch) -> Result<(), TilingError> {
        let expected = patch.edges.len();
        for got in [self.forward.len(), self.length.len()] {
            if got != expected {
                return Err(TilingError::DirectionSize { expected, got });
            }
        }
        Ok(())
    }

    /// Tail and head of edge `e`.
    pub fn ends(&self, patch: &TilingPatch, e: usize) -> (usize, usize) {
        let edge = &patch.edges[e];
        if self.forward[e] {
            (edge.a, edge.b)
        } else {
            (edge.b, edge.a)
        }
    }
}

impl TilingPatch {
    /// Exponent of boundary edge `i` of `cell` when read from `boundary[i]`
    /// to `boundary[i + 1]`.
    fn boundary_exponent(&self, cell: usize, i: usize, d: &DirectionAssignment) -> i64 {
        let c = &self.cells[cell];
        let e = c.edges[i];
        let k = d.length[e] as i64;
        if d.ends(self, e).0 == c.boundary[i] {
            k
        } else {
            -k
        }
    }

    /// The boundary of `cell` read as a word in the edge types.
    pub fn boundary_word(&self, cell: usize, d: &DirectionAssignment) -> Word {
        let c = &self.cells[cell];
        Word::reduce((0..c.size()).map(|i| (self.edges[c.edges[i]].ty, self.boundary_exponent(cell, i, d))))
    }

    fn cell_group(&self, cell: usize) -> DihedralGroup {
        let (s, t) = self.cells[cell].types;
        DihedralGroup::new(s, t, self.cells[cell].m).expect("distinct cell types")
    }

    fn cell_violation(&self, cell: usize, d: &DirectionAssignment) -> Option<DirectionViolation> {
        let w = self.boundary_word(cell, d);
        if !self.cell_group(cell).is_trivial(&w).expect("word over the cell types") {
            return Some(DirectionViolation::CellBoundary { cell });
        }
        let c = &self.cells[cell];
        let n = c.size();
        for i in 0..n {
            let (e, opp) = (c.edges[i], c.edges[(i + n / 2) % n]);
            if d.length[e] > 1 && d.length[opp] != d.length[e] {
                return Some(DirectionViolation::UnpairedLongEdge { cell, edge: e });
            }
        }
        None
    }
}

/// Checks that (for Davis complexes) all long edges are parallel, every cell
/// boundary is trivial and long edges sit opposite each other in every cell.
/// Reports the first violation.
pub fn validate_directions(patch: &TilingPatch, d: &DirectionAssignment) -> Result<(), DirectionViolation> {
    d.check_size(patch).expect("direction assignment matches the patch");
    let mut long = (0..patch.edges.len()).filter(|&e| d.length[e] > 1);
    if let (true, Some(first)) = (patch.is_euclidean(), long.next()) {
        let class = patch.direction_class(first);
        if let Some(second) = long.find(|&e| patch.direction_class(e) != class) {
            return Err(DirectionViolation::NonParallelLongEdges { first, second });
        }
    }
    for cell in 0..patch.cells.len() {
        if let Some(v) = patch.cell_violation(cell, d) {
            return Err(v);
        }
    }
    Ok(())
}

/// Every assignment passing [`validate_directions`] with labels in
/// `1..=max_length`.
pub fn consistent_directions(patch: &TilingPatch, max_length: u32) -> Vec<DirectionAssignment> {
    directions_search(patch, max_length, patch.is_euclidean())
}

/// Assignments whose cells pass the boundary and pairing checks, with all
/// long edges parallel when `parallel` is set.
fn directions_search(patch: &TilingPatch, max_length: u32, parallel: bool) -> Vec<DirectionAssignment> {
    // Edges in the order cells complete, visiting cells breadth first.
    let mut order: Vec<usize> = Vec::new();
    let mut placed = vec![false; patch.edges.len()];
    let mut cell_seen = vec![false; patch.cells.len()];
    let mut completes: Vec<Vec<usize>> = vec![Vec::new(); patch.edges.len()];
    for start in 0..patch.cells.len() {
        if cell_seen[start] {
            continue;
        }
        cell_seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for &e in &patch.cells[c].edges {
                if !placed[e] {
                    placed[e] = true;
                    order.push(e);
                }
                for &n in patch.cells_on_edge(e) {
                    if !cell_seen[n] {
                        cell_seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
    }
    order.extend((0..patch.edges.len()).filter(|&e| !placed[e]));
    let rank_of: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    for c in 0..patch.cells.len() {
        let last = patch.cells[c].edges.iter().max_by_key(|e| rank_of[e]).unwrap();
        completes[*last].push(c);
    }

    struct Search<'a> {
        patch: &'a TilingPatch,
        order: Vec<usize>,
        completes: Vec<Vec<usize>>,
        max_length: u32,
        parallel: bool,
        d: DirectionAssignment,
        long_class: Vec<(Vec2, usize)>,
        out: Vec<DirectionAssignment>,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize) {
            if i == self.order.len() {
                self.out.push(self.d.clone());
                return;
            }
            let e = self.order[i];
            for k in 1..=self.max_length {
                if k > 1 && self.parallel {
                    let class = self.patch.direction_class(e);
                    if self.long_class.last().is_some_and(|(c, _)| *c != class) {
                        continue;
                    }
                    self.long_class.push((class, e));
                }
                for f in [true, false] {
                    self.d.forward[e] = f;
                    self.d.length[e] = k;
                    if self.completes[e].iter().all(|&c| self.patch.cell_violation(c, &self.d).is_none()) {
                        self.go(i + 1);
                    }
                }
                if k > 1 && self.parallel {
                    self.long_class.pop();
                }
            }
        }
    }
    let mut search = Search {
        patch,
        order,
        completes,
        max_length,
        parallel,
        d: DirectionAssignment::uniform(patch),
        long_class: Vec::new(),
        out: Vec::new(),
    };
    search.go(0);
    search.out
}

impl TilingPatch {
    /// Checks the combinatorial invariants of a typed patch, returning the
    /// first failure.
    pub fn check_invariants(&self) -> Result<(), String> {
        let tt = self.triangle;
        let (deg, cells_per_vertex) = if self.is_euclidean() { (3, 3) } else { (4, 4) };
        for v in 0..self.vertices.len() {
            if self.edges_at(v).len() != deg {
                return Err(format!("vertex {v} has {} edges", self.edges_at(v).len()));
            }
            if self.cells_at(v).len() != cells_per_vertex {
                return Err(format!("vertex {v} lies in {} cells", self.cells_at(v).len()));
            }
            if self.is_euclidean() {
                let mut types: Vec<Gen> = self.edges_at(v).iter().map(|&e| self.edges[e].ty).collect();
                types.sort_unstable();
                let mut pairs: Vec<(Gen, Gen)> = self.cells_at(v).iter().map(|&c| self.cells[c].types).collect();
                pairs.sort_unstable();
                if types != [0, 1, 2] || pairs != [(0, 1), (0, 2), (1, 2)] {
                    return Err(format!("vertex {v} sees types {types:?} and cells {pairs:?}"));
                }
            }
        }
        for (c, cell) in self.cells.iter().enumerate() {
            let (a, b) = cell.types;
            let n = cell.size();
            if n != 2 * tt.exponent(a, b) as usize || cell.m as usize * 2 != n {
                return Err(format!("cell {c} of type {:?} has {n} sides", cell.types));
            }
            for i in 0..n {
                let e = &self.edges[cell.edges[i]];
                let ends = (cell.boundary[i], cell.boundary[(i + 1) % n]);
                if ends != (e.a, e.b) && ends != (e.b, e.a) {
                    return Err(format!("cell {c} side {i} is not edge {}", cell.edges[i]));
                }
                let (x, y) = (e.ty, self.edges[cell.edges[(i + 1) % n]].ty);
                if x == y || !(x == a || x == b) {
                    return Err(format!("cell {c} does not alternate its types at side {i}"));
                }
            }
        }
        if self.euler_characteristic() != 0 {
            return Err(format!("Euler characteristic {}", self.euler_characteristic()));
        }
        if self.is_euclidean() {
            for pair in [(0, 1), (1, 2), (0, 2)] {
                let count = self.cells.iter().filter(|c| c.types == pair).count();
                let expected = self.vertices.len() / (2 * tt.exponent(pair.0, pair.1) as usize);
                if count != expected {
                    return Err(format!("{count} cells of type {pair:?}, expected {expected}"));
                }
            }
        }
        Ok(())
    }
}
