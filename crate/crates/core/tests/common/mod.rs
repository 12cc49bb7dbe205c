//! Independent oracles and printed reference data shared by the integration
//! and acceptance tests. Nothing here calls into the library.

#![allow(dead_code)]

/// Intersection matrix of `M, L, A2, A3, B1, B2, B3, C1, C2, C3` as printed.
pub const PRINTED_PICARD: [[i64; 10]; 10] = [
    [-2, 0, 0, 0, 0, 0, 2, 0, 0, -1],
    [0, -9, 0, -1, 0, 0, -2, 0, 0, -4],
    [0, 0, -2, 1, 0, 0, 0, 0, 0, 0],
    [0, -1, 1, -3, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -2, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0, 0, 0],
    [2, -2, 0, 0, 0, 1, -3, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -2, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, -2, 1],
    [-1, -4, 0, 0, 0, 0, 0, 0, 1, -3],
];

/// Printed stage-1 solutions `(d, a3, b3, c3)` for `m = 1`, in printed order.
pub const PRINTED_STAGE1_M1: [[i64; 4]; 26] = [
    [40, 16, 35, 68],
    [33, 13, 29, 56],
    [30, 12, 26, 51],
    [26, 10, 23, 44],
    [25, 10, 22, 42],
    [23, 9, 20, 39],
    [20, 8, 18, 33],
    [19, 7, 17, 32],
    [18, 7, 16, 30],
    [16, 6, 14, 27],
    [15, 6, 13, 25],
    [13, 5, 12, 21],
    [12, 4, 11, 20],
    [11, 4, 10, 18],
    [10, 4, 9, 16],
    [9, 3, 8, 15],
    [8, 3, 7, 13],
    [6, 2, 6, 9],
    [5, 2, 5, 7],
    [5, 2, 4, 8],
    [5, 1, 5, 8],
    [4, 1, 4, 6],
    [3, 1, 3, 4],
    [2, 0, 2, 3],
    [1, 0, 1, 1],
    [0, 0, 0, -1],
];

// Positions in the printed basis.
const M: usize = 0;
const L: usize = 1;
const A2: usize = 2;
const A3: usize = 3;
const B1: usize = 4;
const B2: usize = 5;
const B3: usize = 6;
const C1: usize = 7;
const C2: usize = 8;
const C3: usize = 9;

/// Coordinates of `E = mM − dL + …` in the printed basis.
pub fn coords(m: i64, d: i64, a: [i64; 2], b: [i64; 3], c: [i64; 3]) -> [i64; 10] {
    [m, -d, a[0], a[1], b[0], b[1], b[2], c[0], c[1], c[2]]
}

pub fn pair(x: &[i64; 10], y: &[i64; 10]) -> i64 {
    let mut s = 0;
    for i in 0..10 {
        for j in 0..10 {
            s += PRINTED_PICARD[i][j] * x[i] * y[j];
        }
    }
    s
}

/// `E·X` for the basis curve in position `k`.
pub fn dot_basis(x: &[i64; 10], k: usize) -> i64 {
    (0..10).map(|j| PRINTED_PICARD[k][j] * x[j]).sum()
}

/// Nine intersections with `A1, A2, A3, B1, …, C3`. `A1` is not in the basis:
/// it meets only `A2`, once.
pub fn curve_intersections(x: &[i64; 10]) -> [i64; 9] {
    [
        x[A2],
        dot_basis(x, A2),
        dot_basis(x, A3),
        dot_basis(x, B1),
        dot_basis(x, B2),
        dot_basis(x, B3),
        dot_basis(x, C1),
        dot_basis(x, C2),
        dot_basis(x, C3),
    ]
}

/// Interior basis positions of each chain and the chain rows.
const INTERIORS: [&[usize]; 3] = [&[A2], &[B1, B2], &[C1, C2]];
const CHAIN_ROWS: [&[usize]; 3] = [&[A2, A3], &[B1, B2, B3], &[C1, C2, C3]];

/// The scan splits `E²` chain by chain; that is valid only if interior
/// coefficients of different chains never meet, and chain rows see no other
/// chain's interior. Checked on the printed matrix rather than assumed.
fn chains_decouple() -> bool {
    for (i, inner) in INTERIORS.iter().enumerate() {
        for (j, rows) in CHAIN_ROWS.iter().enumerate() {
            if i == j {
                continue;
            }
            for &p in inner.iter() {
                for &q in rows.iter() {
                    if PRINTED_PICARD[p][q] != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Sets of `E²` increments contributed by each chain's interior coefficients
/// over all interior values satisfying that chain's inequalities (with `A1`
/// included in the `A` chain). An empty set means no valid interior.
fn chain_contributions(base: &[i64; 10]) -> [std::collections::BTreeSet<i64>; 3] {
    use std::collections::BTreeSet;
    let base_sq = pair(base, base);
    let mut out: [BTreeSet<i64>; 3] = Default::default();
    let ok = |x: &[i64; 10], idx: &[usize]| idx.iter().all(|&k| curve_intersections(x)[k] >= 0);

    // A: 0 ≤ a2 (from E·A1) and 2a2 ≤ a3 (from E·A2).
    let a3 = base[A3];
    for a2 in 0..=a3.div_euclid(2).max(-1) {
        let mut x = *base;
        x[A2] = a2;
        if ok(&x, &[0, 1, 2]) {
            out[0].insert(pair(&x, &x) - base_sq);
        }
    }
    // B and C: the end-curve inequality bounds the middle coefficient below,
    // E·X2 and E·X1 bound the first coefficient to [2x2 − x3, x2/2]; that
    // interval is empty once x2 exceeds |x3|.
    for (slot, (p1, p2, p3)) in [(1, (B1, B2, B3)), (2, (C1, C2, C3))] {
        let end = base[p3];
        assert_eq!((PRINTED_PICARD[p3][p2], PRINTED_PICARD[p3][p1]), (1, 0));
        let mut probe = *base;
        probe[p2] = 0;
        probe[p1] = 0;
        // E·X3 = (terms without x2) + x2·G[p3][p2] with G[p3][p2] = 1.
        let lo2 = -dot_basis(&probe, p3);
        let hi2 = lo2.max(end.abs() + 1);
        for x2 in lo2..=hi2 {
            for x1 in (2 * x2 - end)..=x2.div_euclid(2) {
                let mut x = *base;
                x[p1] = x1;
                x[p2] = x2;
                let rows: &[usize] = if slot == 1 { &[3, 4, 5] } else { &[6, 7, 8] };
                if ok(&x, rows) {
                    out[slot].insert(pair(&x, &x) - base_sq);
                }
            }
        }
    }
    out
}

/// Whether some full integer point over the stage-1 tuple `(d, a3, b3, c3)`
/// satisfies all nine inequalities and has `E² = −1`.
pub fn stage1_tuple_feasible(m: i64, t: [i64; 4]) -> bool {
    stage1_tuple_attains(m, t, -1)
}

/// Whether some full integer point over the tuple satisfies all nine
/// inequalities and has `E² = square`.
pub fn stage1_tuple_attains(m: i64, t: [i64; 4], square: i64) -> bool {
    assert!(chains_decouple());
    let [d, a3, b3, c3] = t;
    let base = coords(m, d, [0, a3], [0, 0, b3], [0, 0, c3]);
    let target = square - pair(&base, &base);
    let [sa, sb, sc] = chain_contributions(&base);
    sa.iter()
        .any(|x| sb.iter().any(|y| sc.contains(&(target - x - y))))
}

/// Solutions of `1/n = r − 1 − Σ 1/m_i` with `m_i | n`, `m_i ≥ 2`, found by
/// scanning nondecreasing divisor tuples of length `2..=max_r`. Integer-only:
/// multiplying by `n` gives `1 = n(r − 1) − Σ n/m_i`.
pub fn divisor_scan(n: u64, max_r: usize) -> Vec<Vec<u64>> {
    fn walk(
        n: u64,
        r: usize,
        divisors: &[u64],
        from: usize,
        acc: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if acc.len() == r {
            let sum: i64 = acc.iter().map(|&m| (n / m) as i64).sum();
            if n as i64 * (r as i64 - 1) - sum == 1 {
                out.push(acc.clone());
            }
            return;
        }
        for i in from..divisors.len() {
            acc.push(divisors[i]);
            walk(n, r, divisors, i, acc, out);
            acc.pop();
        }
    }
    let divisors: Vec<u64> = (2..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut out = Vec::new();
    for r in 2..=max_r {
        walk(n, r, &divisors, 0, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Fixed-point profiles by brute force over raw types `1/p(1,i)`: counts
/// `r_i` with `Σ r_i = n` and `Σ a_i r_i = 1`, given the integers `6·a_i`.
/// Each profile is returned as sorted `(p, a, count)` with `a` replaced by
/// `min(a, a⁻¹ mod p)`.
pub fn grid_profiles(
    p: u32,
    n: u32,
    six_a: &[i64],
) -> std::collections::BTreeSet<Vec<(u32, u32, u32)>> {
    let inverse = |a: u32| (1..p).find(|b| (a * b) % p == 1).unwrap();
    let k = (p - 1) as usize;
    assert_eq!(six_a.len(), k);
    let mut out = std::collections::BTreeSet::new();
    let mut r = vec![0u32; k];
    'outer: loop {
        if r.iter().sum::<u32>() == n
            && r.iter()
                .zip(six_a)
                .map(|(&c, &a)| c as i64 * a)
                .sum::<i64>()
                == 6
        {
            let mut counts = std::collections::BTreeMap::new();
            for (i, &c) in r.iter().enumerate() {
                if c > 0 {
                    let a = i as u32 + 1;
                    *counts.entry(a.min(inverse(a))).or_insert(0) += c;
                }
            }
            out.insert(counts.into_iter().map(|(a, c)| (p, a, c)).collect());
        }
        for slot in r.iter_mut() {
            *slot += 1;
            if *slot <= n {
                continue 'outer;
            }
            *slot = 0;
        }
        return out;
    }
}
