//! Lower bounds on the genus of Z₂-embeddings of complete (bipartite) graphs.

fn ceil_div4(num: i64) -> i64 {
    num.div_euclid(4) + i64::from(num.rem_euclid(4) != 0)
}

/// `⌈(m−2)(n−2)/4 − (m−3)/2⌉`, clamped at 0: no orientable surface of
/// smaller genus carries a Z₂-embedding of `K_{m,n}`.
pub fn kmn_lower_bound(m: u64, n: u64) -> u64 {
    let (m, n) = (m as i64, n as i64);
    ceil_div4((m - 2) * (n - 2) - 2 * (m - 3)).max(0) as u64
}

/// `⌈(n−3)²/4⌉` for the complete graph on `2n` vertices.
pub fn k2n_lower_bound(n: u64) -> u64 {
    let d = n as i64 - 3;
    ceil_div4(d * d) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    /// The formula evaluated with exact fractions.
    fn kmn_oracle(m: i64, n: i64) -> i64 {
        let v = Ratio::new((m - 2) * (n - 2), 4) - Ratio::new(m - 3, 2);
        v.ceil().to_integer().max(0)
    }

    #[test]
    fn table() {
        assert_eq!(kmn_lower_bound(3, 3), 1);
        assert_eq!(kmn_lower_bound(4, 4), 1);
        assert_eq!(kmn_lower_bound(5, 5), 2);
        assert_eq!(kmn_lower_bound(6, 6), 3);
        assert_eq!(k2n_lower_bound(3), 0);
        assert_eq!(k2n_lower_bound(4), 1);
        assert_eq!(k2n_lower_bound(5), 1);
    }

    #[test]
    fn matches_exact_fractions() {
        for m in 1..30 {
            for n in 1..30 {
                assert_eq!(kmn_lower_bound(m as u64, n as u64) as i64, kmn_oracle(m, n), "({m},{n})");
            }
        }
        for n in 1..40i64 {
            assert_eq!(k2n_lower_bound(n as u64) as i64, Ratio::new((n - 3) * (n - 3), 4).ceil().to_integer());
        }
    }
}
