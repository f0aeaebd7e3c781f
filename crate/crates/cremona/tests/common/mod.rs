//! Shared numerical test oracles, independent of the library's computation
//! paths.
//!
//! The centerpiece is a dense two-phase primal simplex solver used to compute
//! discrete upper envelopes as linear programs. The envelope's feasible set
//! is closed under pointwise max (all three constraint families — upper
//! bound, monotonicity, convexity — are preserved by pointwise max of two
//! feasible vectors), so the pointwise supremum is itself feasible and is the
//! UNIQUE maximizer of the node sum: any optimizer u* must dominate every
//! feasible w, else max(u*, w) would be feasible with a strictly larger sum.
//! One LP call therefore returns the entire envelope vector.

/// Dense two-phase primal simplex with Bland's rule:
/// maximize c.x subject to a x <= b, x >= 0. Returns None when the program
/// is infeasible or unbounded (or the iteration cap trips, which test
/// callers treat as a failure).
pub fn simplex_max(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    const EPS: f64 = 1e-9;
    const MAX_PIVOTS: usize = 200_000;
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    for row in a {
        assert_eq!(row.len(), n);
    }

    // Tableau columns: structural 0..n, slacks n..n+m, artificials for the
    // negative-rhs rows, then the rhs. Negative-rhs rows are negated so the
    // rhs column starts nonnegative.
    let needs_art: Vec<bool> = b.iter().map(|&bi| bi < 0.0).collect();
    let n_art = needs_art.iter().filter(|&&f| f).count();
    let real_cols = n + m;
    let rhs = real_cols + n_art;
    let mut t = vec![vec![0.0f64; rhs + 1]; m];
    let mut basis = vec![0usize; m];
    let mut next_art = real_cols;
    for i in 0..m {
        let sign = if needs_art[i] { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * a[i][j];
        }
        t[i][n + i] = sign;
        t[i][rhs] = sign * b[i];
        if needs_art[i] {
            t[i][next_art] = 1.0;
            basis[i] = next_art;
            next_art += 1;
        } else {
            basis[i] = n + i;
        }
    }

    // Objective row semantics: z = obj[rhs] + sum over nonbasic j of
    // obj[j] * x_j, maintained by pricing basic columns out.
    let price_out = |obj: &mut Vec<f64>, t: &[Vec<f64>], basis: &[usize]| {
        for (i, &bi) in basis.iter().enumerate() {
            let w = obj[bi];
            if w != 0.0 {
                for j in 0..rhs {
                    obj[j] -= w * t[i][j];
                }
                obj[rhs] += w * t[i][rhs];
                obj[bi] = 0.0;
            }
        }
    };

    let pivot = |t: &mut Vec<Vec<f64>>, basis: &mut Vec<usize>, obj: &mut Vec<f64>, r: usize, e: usize| {
        let scale = t[r][e];
        for j in 0..=rhs {
            t[r][j] /= scale;
        }
        t[r][e] = 1.0;
        for i in 0..m {
            if i == r {
                continue;
            }
            let w = t[i][e];
            if w != 0.0 {
                for j in 0..=rhs {
                    t[i][j] -= w * t[r][j];
                }
                t[i][e] = 0.0;
            }
        }
        let w = obj[e];
        if w != 0.0 {
            for j in 0..rhs {
                obj[j] -= w * t[r][j];
            }
            obj[rhs] += w * t[r][rhs];
            obj[e] = 0.0;
        }
        basis[r] = e;
    };

    // Bland's rule: enter the lowest-index improving column; leave by the
    // minimum ratio, ties broken by the lowest basis index.
    let optimize = |t: &mut Vec<Vec<f64>>,
                        basis: &mut Vec<usize>,
                        obj: &mut Vec<f64>,
                        enter_limit: usize|
     -> Option<()> {
        for _ in 0..MAX_PIVOTS {
            let Some(e) = (0..enter_limit).find(|&j| obj[j] > EPS) else {
                return Some(());
            };
            let mut row: Option<usize> = None;
            let mut best = f64::INFINITY;
            for i in 0..m {
                if t[i][e] > EPS {
                    let ratio = t[i][rhs] / t[i][e];
                    let better = ratio < best - EPS
                        || (ratio < best + EPS
                            && row.is_some_and(|r| basis[i] < basis[r]));
                    if better {
                        best = ratio;
                        row = Some(i);
                    }
                }
            }
            let r = row?; // no positive entry: unbounded
            pivot(t, basis, obj, r, e);
        }
        None
    };

    if n_art > 0 {
        // Phase 1: maximize -(sum of artificials); feasible iff it reaches 0.
        let mut obj = vec![0.0f64; rhs + 1];
        for j in real_cols..rhs {
            obj[j] = -1.0;
        }
        price_out(&mut obj, &t, &basis);
        optimize(&mut t, &mut basis, &mut obj, real_cols)?;
        if obj[rhs] < -1e-7 {
            return None;
        }
        // Drive any degenerate basic artificial onto a real column.
        for i in 0..m {
            if basis[i] >= real_cols {
                if let Some(j) = (0..real_cols).find(|&j| t[i][j].abs() > EPS) {
                    let mut dummy = vec![0.0f64; rhs + 1];
                    pivot(&mut t, &mut basis, &mut dummy, i, j);
                }
            }
        }
    }

    // Phase 2: the real objective over structural and slack columns.
    let mut obj = vec![0.0f64; rhs + 1];
    obj[..n].copy_from_slice(c);
    price_out(&mut obj, &t, &basis);
    optimize(&mut t, &mut basis, &mut obj, real_cols)?;

    let mut x = vec![0.0f64; n];
    for (i, &bi) in basis.iter().enumerate() {
        if bi < n {
            x[bi] = t[i][rhs];
        }
    }
    Some(x)
}

/// LP formulation of the discrete least upper envelope on nodes `t_nodes`
/// with obstacle `phi` and positivity budget `n_omega`: the pointwise-largest
/// u with u <= 0 and both u + g and u + phi + g convex nondecreasing, where
/// g_i = n_omega * exp(2 t_i). Free node values are split as u = p - q with
/// p, q >= 0. Returns None when the simplex reports infeasible/unbounded.
pub fn envelope_lp_oracle(t_nodes: &[f64], phi: &[f64], n_omega: f64) -> Option<Vec<f64>> {
    let n = t_nodes.len();
    assert_eq!(phi.len(), n);
    assert!(n >= 3);
    let g: Vec<f64> = t_nodes.iter().map(|&t| n_omega * (2.0 * t).exp()).collect();
    let gp: Vec<f64> = g.iter().zip(phi).map(|(gi, pi)| gi + pi).collect();

    let nv = 2 * n;
    let mut a: Vec<Vec<f64>> = Vec::new();
    let mut b: Vec<f64> = Vec::new();
    let mut push_row = |coeffs: &[(usize, f64)], rhs: f64| {
        let mut row = vec![0.0f64; nv];
        for &(i, w) in coeffs {
            row[i] += w;
            row[n + i] -= w;
        }
        a.push(row);
        b.push(rhs);
    };

    // u_i <= 0
    for i in 0..n {
        push_row(&[(i, 1.0)], 0.0);
    }
    for w in [&g, &gp] {
        // monotone: -(u_{i+1} - u_i) <= w_{i+1} - w_i
        for i in 0..n - 1 {
            push_row(&[(i + 1, -1.0), (i, 1.0)], w[i + 1] - w[i]);
        }
        // convex: -(u_{i+1} - 2 u_i + u_{i-1}) <= w_{i+1} - 2 w_i + w_{i-1}
        for i in 1..n - 1 {
            push_row(
                &[(i + 1, -1.0), (i, 2.0), (i - 1, -1.0)],
                w[i + 1] - 2.0 * w[i] + w[i - 1],
            );
        }
    }

    let mut c = vec![1.0f64; n];
    c.extend(vec![-1.0f64; n]);
    let x = simplex_max(&c, &a, &b)?;
    Some((0..n).map(|i| x[i] - x[n + i]).collect())
}
