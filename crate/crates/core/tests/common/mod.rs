//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use artin_flats::tiling::{build_patch, type_preserving_lattice, TilingPatch, TriangleType};

pub fn patch(ms: (u32, u32, u32), k: i64) -> TilingPatch {
    let tt = TriangleType::euclidean(ms.0, ms.1, ms.2).unwrap();
    build_patch(tt, type_preserving_lattice(tt).map(|v| [k * v[0], k * v[1]])).unwrap()
}

fn covers_once(p: &TilingPatch, choice: &[usize]) -> bool {
    let mut seen = vec![0u8; p.vertices.len()];
    for (c, &d) in choice.iter().enumerate() {
        let cell = &p.cells[c];
        seen[cell.boundary[d]] += 1;
        seen[cell.boundary[d + cell.m as usize]] += 1;
    }
    seen.iter().all(|&n| n == 1)
}

/// Every diagonal choice per cell, filtered. Only for tiny patches.
pub fn naive_polarisations(p: &TilingPatch) -> Vec<Vec<usize>> {
    let radices: Vec<usize> = p.cells.iter().map(|c| c.m as usize).collect();
    let total: usize = radices.iter().product();
    let mut out = Vec::new();
    let mut choice = vec![0; radices.len()];
    for mut idx in 0..total {
        for (c, &r) in radices.iter().enumerate() {
            choice[c] = idx % r;
            idx /= r;
        }
        if covers_once(p, &choice) {
            out.push(choice.clone());
        }
    }
    out.sort();
    out
}

/// Exact cover (Knuth's Algorithm X on plain sets): columns are cells and
/// vertices, a row `(c, d)` covers cell `c` and both ends of diagonal `d`.
pub fn exact_cover_polarisations(p: &TilingPatch) -> Vec<Vec<usize>> {
    let nc = p.cells.len();
    let rows: Vec<(usize, usize, [usize; 3])> = p
        .cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| {
            (0..cell.m as usize)
                .map(move |d| (c, d, [c, nc + cell.boundary[d], nc + cell.boundary[d + cell.m as usize]]))
        })
        .collect();
    let ncols = nc + p.vertices.len();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &c in &r.2 {
            col_rows[c].push(i);
        }
    }
    let mut out = Vec::new();
    let mut covered = vec![false; ncols];
    let mut chosen = Vec::new();
    search(&rows, &col_rows, &mut covered, &mut chosen, &mut out, nc);
    out.sort();
    out
}

fn search(
    rows: &[(usize, usize, [usize; 3])],
    col_rows: &[Vec<usize>],
    covered: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    nc: usize,
) {
    let live = |r: usize, covered: &[bool]| rows[r].2.iter().all(|&c| !covered[c]);
    let best = (0..col_rows.len())
        .filter(|&c| !covered[c])
        .min_by_key(|&c| col_rows[c].iter().filter(|&&r| live(r, covered)).count());
    let Some(col) = best else {
        let mut sol = vec![0; nc];
        for &r in chosen.iter() {
            sol[rows[r].0] = rows[r].1;
        }
        out.push(sol);
        return;
    };
    for &r in &col_rows[col] {
        if !live(r, covered) {
            continue;
        }
        for &c in &rows[r].2 {
            covered[c] = true;
        }
        chosen.push(r);
        search(rows, col_rows, covered, chosen, out, nc);
        chosen.pop();
        for &c in &rows[r].2 {
            covered[c] = false;
        }
    }
}
