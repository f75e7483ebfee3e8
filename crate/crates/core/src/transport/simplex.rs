use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Largest number of atoms per side the exact solver accepts.
pub const ATOM_CAP: usize = 600;

/// Complementary-slackness residual the exact solver must reach.
pub const SLACKNESS_TOL: f64 = 1e-8;

/// Consecutive degenerate pivots after which pricing switches to Bland's rule.
const DEGENERATE_LIMIT: usize = 64;

/// A coupling between two weight vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    pub pi: Matrix,
    pub cost: f64,
}

impl TransportPlan {
    /// max over rows and columns of |marginal − weight|.
    pub fn marginal_residual(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut worst = 0.0_f64;
        for (i, ai) in a.iter().enumerate() {
            let s = crate::linalg::compensated_sum(self.pi.row(i).iter().copied());
            worst = worst.max((s - ai).abs());
        }
        for (j, bj) in b.iter().enumerate() {
            let s = crate::linalg::compensated_sum(self.pi.column(j).iter().copied());
            worst = worst.max((s - bj).abs());
        }
        worst
    }

    pub fn is_feasible(&self, a: &[f64], b: &[f64], tol: f64) -> bool {
        self.pi.iter().all(|&p| p >= 0.0) && self.marginal_residual(a, b) <= tol
    }
}

/// Exact solution with its optimality certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub plan: TransportPlan,
    /// Row and column potentials.
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// max(|c − u − v| on the basis, max(0, u + v − c) elsewhere).
    pub slackness_residual: f64,
    pub pivots: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pricing {
    Block,
    Bland,
}

struct Tree {
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
    u: Vec<f64>,
    v: Vec<f64>,
}

fn build_tree(m: usize, n: usize, cells: &[(usize, usize)], c: &Matrix) -> Result<Tree> {
    let nodes = m + n;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
    for (e, &(i, j)) in cells.iter().enumerate() {
        adj[i].push((m + j, e));
        adj[m + j].push((i, e));
    }
    let mut parent = vec![usize::MAX; nodes];
    let mut parent_edge = vec![usize::MAX; nodes];
    let mut depth = vec![0; nodes];
    let mut pot = vec![0.0; nodes];
    let mut seen = vec![false; nodes];
    let mut queue = std::collections::VecDeque::with_capacity(nodes);
    seen[0] = true;
    queue.push_back(0);
    let mut visited = 1;
    while let Some(p) = queue.pop_front() {
        for &(q, e) in &adj[p] {
            if seen[q] {
                continue;
            }
            seen[q] = true;
            visited += 1;
            parent[q] = p;
            parent_edge[q] = e;
            depth[q] = depth[p] + 1;
            let (i, j) = cells[e];
            pot[q] = c[(i, j)] - pot[p];
            queue.push_back(q);
        }
    }
    if visited != nodes {
        return Err(Error::Contract("transportation basis is not a spanning tree".into()));
    }
    let v = pot.split_off(m);
    Ok(Tree { parent, parent_edge, depth, u: pot, v })
}

/// Exact transportation LP by the primal network simplex on a spanning-tree
/// basis: north-west-corner start, block-search pricing with a fallback to
/// Bland's rule under degeneracy, lowest-index tie-breaking for the leaving cell.
pub fn solve_transport(a: &[f64], b: &[f64], c: &Matrix) -> Result<ExactSolution> {
    let (m, n) = (a.len(), b.len());
    if m == 0 || n == 0 || c.nrows() != m || c.ncols() != n {
        return Err(Error::Contract("cost matrix does not match the weight vectors".into()));
    }
    if m > ATOM_CAP || n > ATOM_CAP {
        return Err(Error::AtomCapExceeded { atoms: m.max(n), cap: ATOM_CAP });
    }
    if !c.iter().all(|x| x.is_finite()) {
        return Err(Error::eval("transport cost", &[]));
    }
    let sa = crate::linalg::compensated_sum(a.iter().copied());
    let sb = crate::linalg::compensated_sum(b.iter().copied());
    if a.iter().chain(b).any(|w| !(*w >= 0.0)) || (sa - sb).abs() > 1e-9 {
        return Err(Error::Contract(format!("unbalanced or negative weights ({sa} vs {sb})")));
    }

    // north-west corner
    let mut cells = Vec::with_capacity(m + n - 1);
    let mut flow = Vec::with_capacity(m + n - 1);
    let (mut s, mut d) = (a.to_vec(), b.to_vec());
    let (mut i, mut j) = (0, 0);
    loop {
        let x = s[i].min(d[j]);
        cells.push((i, j));
        flow.push(x);
        s[i] -= x;
        d[j] -= x;
        if i == m - 1 && j == n - 1 {
            break;
        }
        if j == n - 1 || (i < m - 1 && s[i] <= d[j]) {
            i += 1;
        } else {
            j += 1;
        }
    }
    let mut in_basis = vec![usize::MAX; m * n];
    for (e, &(i, j)) in cells.iter().enumerate() {
        in_basis[i * n + j] = e;
    }

    let scale = c.iter().fold(0.0_f64, |acc, x| acc.max(x.abs())).max(1e-300);
    let tol = 1e-12 * scale;
    let block = ((m * n) as f64).sqrt().ceil().max(32.0) as usize;
    let max_pivots = 50 * m * n + 10_000;
    let mut cursor = 0;
    let mut pricing = Pricing::Block;
    let mut degenerate = 0;
    let mut pivots = 0;

    loop {
        let tree = build_tree(m, n, &cells, c)?;
        let reduced = |cell: usize| {
            let (i, j) = (cell / n, cell % n);
            c[(i, j)] - tree.u[i] - tree.v[j]
        };
        let entering = match pricing {
            Pricing::Bland => (0..m * n).find(|&k| in_basis[k] == usize::MAX && reduced(k) < -tol),
            Pricing::Block => {
                let mut best = None;
                let mut best_r = -tol;
                let mut scanned = 0;
                while scanned < m * n {
                    let k = cursor;
                    cursor = (cursor + 1) % (m * n);
                    scanned += 1;
                    if in_basis[k] == usize::MAX {
                        let r = reduced(k);
                        if r < best_r {
                            best_r = r;
                            best = Some(k);
                        }
                    }
                    if scanned % block == 0 && best.is_some() {
                        break;
                    }
                }
                best
            }
        };
        let Some(enter) = entering else {
            let mut resid = 0.0_f64;
            for k in 0..m * n {
                let r = reduced(k);
                resid = resid.max(if in_basis[k] == usize::MAX { (-r).max(0.0) } else { r.abs() });
            }
            let mut pi = Matrix::zeros(m, n);
            for (&(i, j), &x) in cells.iter().zip(&flow) {
                pi[(i, j)] = x.max(0.0);
            }
            let cost = crate::linalg::compensated_sum(cells.iter().zip(&flow).map(|(&(i, j), &x)| x.max(0.0) * c[(i, j)]));
            return Ok(ExactSolution {
                plan: TransportPlan { pi, cost },
                u: tree.u,
                v: tree.v,
                slackness_residual: resid,
                pivots,
            });
        };
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::SolverNonConvergence { iterations: pivots, residual: -reduced(enter) });
        }

        // cycle through the tree: edges on the column side first, sign − at even positions
        let (ei, ej) = (enter / n, enter % n);
        let (mut p, mut q) = (ei, m + ej);
        let mut row_side = Vec::new();
        let mut col_side = Vec::new();
        while tree.depth[p] > tree.depth[q] {
            row_side.push(tree.parent_edge[p]);
            p = tree.parent[p];
        }
        while tree.depth[q] > tree.depth[p] {
            col_side.push(tree.parent_edge[q]);
            q = tree.parent[q];
        }
        while p != q {
            row_side.push(tree.parent_edge[p]);
            p = tree.parent[p];
            col_side.push(tree.parent_edge[q]);
            q = tree.parent[q];
        }
        let total = col_side.len() + row_side.len();
        let mut minus = Vec::with_capacity(total / 2 + 1);
        let mut plus = Vec::with_capacity(total / 2);
        for (pos, &e) in col_side.iter().enumerate() {
            if pos % 2 == 0 { minus.push(e) } else { plus.push(e) }
        }
        for (t, &e) in row_side.iter().enumerate() {
            let pos = col_side.len() + row_side.len() - 1 - t;
            if pos % 2 == 0 { minus.push(e) } else { plus.push(e) }
        }
        let cell_index = |e: usize| cells[e].0 * n + cells[e].1;
        let leave = *minus
            .iter()
            .min_by(|&&x, &&y| flow[x].total_cmp(&flow[y]).then(cell_index(x).cmp(&cell_index(y))))
            .expect("cycle has a backward edge");
        let theta = flow[leave];
        for &e in &plus {
            flow[e] += theta;
        }
        for &e in &minus {
            flow[e] -= theta;
        }
        flow[leave] = theta;
        in_basis[cell_index(leave)] = usize::MAX;
        cells[leave] = (ei, ej);
        in_basis[enter] = leave;

        if theta <= 1e-15 {
            degenerate += 1;
            if degenerate > DEGENERATE_LIMIT {
                pricing = Pricing::Bland;
            }
        } else {
            degenerate = 0;
            pricing = Pricing::Block;
        }
    }
}

/// Exact W₂² between two weighted point sets on the line by the monotone
/// (quantile) coupling.
pub fn w2_sorted_1d(xs: &[f64], a: &[f64], ys: &[f64], b: &[f64]) -> Result<f64> {
    if xs.len() != a.len() || ys.len() != b.len() || xs.is_empty() || ys.is_empty() {
        return Err(Error::Contract("one weight per point".into()));
    }
    let order = |v: &[f64]| {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&p, &q| v[p].total_cmp(&v[q]));
        idx
    };
    let (ox, oy) = (order(xs), order(ys));
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (a[ox[0]], b[oy[0]]);
    let mut acc = Vec::new();
    while i < ox.len() && j < oy.len() {
        let w = ra.min(rb);
        let dx = xs[ox[i]] - ys[oy[j]];
        acc.push(w * dx * dx);
        ra -= w;
        rb -= w;
        if ra <= rb {
            i += 1;
            if i < ox.len() {
                ra = a[ox[i]];
            }
        } else {
            j += 1;
            if j < oy.len() {
                rb = b[oy[j]];
            }
        }
    }
    Ok(crate::linalg::compensated_sum(acc))
}
