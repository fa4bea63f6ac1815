//! Independent oracles the acceptance criteria are checked against.
//!
//! Nothing here calls into the library's geometry or basis machinery:
//! Newton-region membership is decided by enumerating basic solutions of
//! the defining linear program in exact integer arithmetic, and ideal
//! membership is decided by solving a dense degree-truncated linear
//! system over a prime field.

use std::collections::HashMap;

use num::ToPrimitive;
use reeskit::{Coef, Polynomial};

// ---------------------------------------------------------------------
// Newton-region membership as a linear program
// ---------------------------------------------------------------------

/// Determinant of a small integer matrix by fraction-free elimination.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(row) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, row);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Does `v` lie in the region spanned by the exponent vectors `gens`
/// (their convex hull swept along the nonnegative orthant)?
///
/// Membership means some convex combination of the generators is
/// dominated by `v` coordinatewise. The weight polytope is bounded, so
/// it is nonempty exactly when it has a vertex: a basic solution that
/// activates the weight-sum equality plus `g - 1` of the remaining
/// constraints. Each candidate basis is solved exactly by Cramer's rule
/// over the integers and checked against every constraint.
pub fn np_member(gens: &[Vec<u32>], v: &[u32]) -> bool {
    let g = gens.len();
    let m = v.len();
    if g == 0 {
        return false;
    }
    // Fast path: v sits above a single generator.
    if gens
        .iter()
        .any(|a| a.iter().zip(v).all(|(ai, vi)| ai <= vi))
    {
        return true;
    }
    // Necessary condition: the total degree cannot undercut every
    // generator, since a convex combination preserves the minimum.
    let vdeg: u64 = v.iter().map(|&x| u64::from(x)).sum();
    let mindeg = gens
        .iter()
        .map(|a| a.iter().map(|&x| u64::from(x)).sum::<u64>())
        .min()
        .expect("nonempty");
    if vdeg < mindeg {
        return false;
    }
    // Constraints 0..g say weight_i >= 0; constraints g..g+m say the
    // combined exponent stays at most v in coordinate j.
    for subset in combinations(g + m, g - 1) {
        let mut rows: Vec<Vec<i128>> = vec![vec![1; g]];
        let mut rhs: Vec<i128> = vec![1];
        for &c in &subset {
            if c < g {
                let mut row = vec![0i128; g];
                row[c] = 1;
                rows.push(row);
                rhs.push(0);
            } else {
                let j = c - g;
                rows.push(gens.iter().map(|a| i128::from(a[j])).collect());
                rhs.push(i128::from(v[j]));
            }
        }
        let d = det(rows.clone());
        if d == 0 {
            continue;
        }
        // Cramer numerators for each weight.
        let mut nums = Vec::with_capacity(g);
        for i in 0..g {
            let mut mi = rows.clone();
            for (r, row) in mi.iter_mut().enumerate() {
                row[i] = rhs[r];
            }
            nums.push(det(mi));
        }
        let (d, nums) = if d < 0 {
            (-d, nums.into_iter().map(|x| -x).collect::<Vec<_>>())
        } else {
            (d, nums)
        };
        if nums.iter().any(|&x| x < 0) {
            continue;
        }
        let coords_ok = (0..m).all(|j| {
            let lhs: i128 = nums
                .iter()
                .zip(gens)
                .map(|(&w, a)| w * i128::from(a[j]))
                .sum();
            lhs <= i128::from(v[j]) * d
        });
        if coords_ok {
            return true;
        }
    }
    false
}

/// Brute-force closure of a monomial exponent set: test every lattice
/// point in the coordinatewise bounding box and keep the members that
/// divide no other member. Minimal members never leave the box, since a
/// coordinate above every generator could be decreased.
pub fn box_closure(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = gens[0].len();
    let bound: Vec<u32> = (0..m)
        .map(|j| gens.iter().map(|a| a[j]).max().expect("nonempty"))
        .collect();
    let mut members = Vec::new();
    let mut v = vec![0u32; m];
    'points: loop {
        if np_member(gens, &v) {
            members.push(v.clone());
        }
        for i in 0..m {
            if v[i] < bound[i] {
                v[i] += 1;
                continue 'points;
            }
            v[i] = 0;
        }
        break;
    }
    members.sort();
    members
        .iter()
        .filter(|v| {
            !members
                .iter()
                .any(|u| u != *v && u.iter().zip(v.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect()
}

// ---------------------------------------------------------------------
// Ideal membership as a dense linear system over a prime field
// ---------------------------------------------------------------------

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn coef_mod(c: &Coef, p: u64) -> u64 {
    match c {
        Coef::Rat(r) => {
            let pb = num::BigInt::from(p);
            let num = ((r.numer() % &pb) + &pb) % &pb;
            let den = ((r.denom() % &pb) + &pb) % &pb;
            let den = den.to_u64().expect("reduced");
            assert!(den != 0, "denominator divisible by the oracle prime");
            num.to_u64().expect("reduced") * inv_mod(den, p) % p
        }
        Coef::Mod(v) => v % p,
    }
}

/// All exponent vectors in `vars` variables of total degree at most
/// `deg`, in a fixed deterministic order.
pub fn monomials_up_to(vars: usize, deg: u64) -> Vec<Vec<u32>> {
    fn rec(left: usize, budget: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for e in 0..=budget {
            cur.push(e as u32);
            rec(left - 1, budget - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, deg, &mut Vec::with_capacity(vars), &mut out);
    out
}

/// Is `f` expressible as a combination of the generators with every
/// product of total degree at most `max_deg`, working modulo `p`?
///
/// Builds one column per generator-times-monomial product, indexed by
/// the monomials of degree at most `max_deg`, and row-reduces the
/// augmented system.
pub fn combination_solvable(f: &Polynomial, gens: &[Polynomial], max_deg: u64, p: u64) -> bool {
    if f.is_zero() {
        return true;
    }
    let vars = f.ring().arity();
    let monos = monomials_up_to(vars, max_deg);
    let index: HashMap<Vec<u32>, usize> =
        monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let rows = monos.len();

    let mut cols: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let d = g.degree().expect("nonzero");
        if d > max_deg {
            continue;
        }
        for mu in monomials_up_to(vars, max_deg - d) {
            let mut col = vec![0u64; rows];
            for (e, c) in g.terms() {
                let shifted: Vec<u32> = e.0.iter().zip(&mu).map(|(a, b)| a + b).collect();
                let row = index[&shifted];
                col[row] = (col[row] + coef_mod(c, p)) % p;
            }
            cols.push(col);
        }
    }

    let mut rhs = vec![0u64; rows];
    for (e, c) in f.terms() {
        let Some(&row) = index.get(&e.0) else {
            return false;
        };
        rhs[row] = coef_mod(c, p);
    }

    // Forward elimination on the augmented matrix.
    let ncols = cols.len();
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivot = 0usize;
    for col in 0..ncols {
        if pivot == rows {
            break;
        }
        let Some(r) = (pivot..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(pivot, r);
        let inv = inv_mod(a[pivot][col], p);
        for j in col..=ncols {
            a[pivot][j] = a[pivot][j] * inv % p;
        }
        for r2 in pivot + 1..rows {
            if a[r2][col] != 0 {
                let factor = a[r2][col];
                for j in col..=ncols {
                    a[r2][j] = (a[r2][j] + (p - factor) * a[pivot][j]) % p;
                }
            }
        }
        pivot += 1;
    }
    a.iter()
        .all(|row| row[..ncols].iter().any(|&x| x != 0) || row[ncols] == 0)
}
