//! Slow reference evaluators sharing no code with the main modules.

use std::collections::BTreeSet;

/// F-curves straight from the raw family ranges, by exhaustive search over
/// parameter tuples in `0..=g`. Families are tagged by letter.
pub fn fcurves(g: u32) -> Vec<(char, Vec<u32>)> {
    let mut set = BTreeSet::new();
    set.insert(('A', vec![]));
    set.insert(('B', vec![]));
    for i in 0..=g {
        if i >= 1 && i + 2 <= g {
            set.insert(('C', vec![i]));
        }
        if i >= 1 && i + 3 <= g {
            set.insert(('D', vec![i.min(g - 2 - i)]));
        }
        for j in 0..=g {
            if i >= 1 && j >= 1 && i + j < g && i <= j {
                set.insert(('E', vec![i, j]));
            }
            for k in 0..=g {
                for l in 0..=g {
                    let p = [i, j, k, l];
                    if p.iter().all(|&x| x >= 1)
                        && p.iter().sum::<u32>() == g
                        && p.windows(2).all(|w| w[0] <= w[1])
                    {
                        set.insert(('F', p.to_vec()));
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Riemann–Roch on a smooth curve of genus `genus` for a line bundle of the
/// given degree; `None` when `h^1` might not vanish.
pub fn riemann_roch(genus: i64, degree: i64) -> Option<i64> {
    (degree >= 0 && degree >= 2 * genus - 1).then_some(degree + 1 - genus)
}

/// `h^0(ω_D^n((2n−a)Σ_{j=1}^r p_j))`, building the degree term by term.
pub fn twisted_sections(g_d: i64, r: i64, n: i64, a: i64) -> Option<i64> {
    let canonical_degree = 2 * g_d - 2;
    let mut degree = 0;
    for _ in 0..n {
        degree += canonical_degree;
    }
    for _ in 0..r {
        degree += 2 * n - a;
    }
    riemann_roch(g_d, degree)
}

/// `h^0(ω^n)` on a smooth curve of genus `g`, i.e. the rank of `π_*L^n`.
pub fn pluricanonical_rank(g: i64, n: i64) -> Option<i64> {
    if n == 1 {
        Some(g)
    } else {
        riemann_roch(g, n * (2 * g - 2))
    }
}

fn floor_div(x: i128, y: i128) -> i128 {
    assert!(y > 0);
    let q = x / y;
    if x % y != 0 && x < 0 {
        q - 1
    } else {
        q
    }
}

/// Both forms of the descent floor identity for `a = p/q`, evaluated with
/// machine integers: `(full holds, reduced holds, vanishing order)`.
pub fn floor_identity(m: i128, e: i128, p: i128, q: i128) -> (bool, bool, i128) {
    let floor_ma = floor_div(m * p, q);
    let reduced_rhs = floor_div(floor_ma - m, e);
    let reduced_lhs = floor_div(m * p - m * q, q * e);
    let full_lhs = e * floor_div(m * ((e - 1) * q + p), q * e) - m * (e - 1);
    let full_rhs = m + e * reduced_rhs;
    (
        full_lhs == full_rhs,
        reduced_lhs == reduced_rhs,
        m + e * reduced_rhs,
    )
}
