//! Graded dimension data: the number of PBW monomials in each degree.

use super::AlgebraParams;

/// Coefficients of the Hilbert series up to degree `max_deg`, computed by
/// direct enumeration of exponent tuples (m1, m2, n_G, ..., n_0) with
/// m1 + m2 + sum (n+1) n_n = d.
pub fn hilbert_coeffs(params: &AlgebraParams, max_deg: u64) -> Vec<u64> {
    let mut weights = vec![1u64, 1];
    for n in 0..=params.ghost {
        weights.push(n as u64 + 1);
    }
    let mut out = vec![0u64; max_deg as usize + 1];
    for d in 0..=max_deg {
        out[d as usize] = count_tuples(&weights, d);
    }
    out
}

fn count_tuples(weights: &[u64], remaining: u64) -> u64 {
    match weights.split_first() {
        None => u64::from(remaining == 0),
        Some((&w, rest)) => {
            let mut total = 0;
            let mut used = 0;
            while used <= remaining {
                total += count_tuples(rest, remaining - used);
                used += w;
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QSpec;

    #[test]
    fn ghost_one_prefix() {
        let p = AlgebraParams::new(1, QSpec::Generic).unwrap();
        // Series 1/((1-t)^3 (1-t^2)) starts 1, 3, 7, 13, 22.
        assert_eq!(hilbert_coeffs(&p, 4), vec![1, 3, 7, 13, 22]);
    }

    #[test]
    fn degree_two_monomials_ghost_one() {
        // {x1^2, x1 x2, x2^2, x1 z0, x2 z0, z0^2, z1}
        let p = AlgebraParams::new(1, QSpec::Generic).unwrap();
        assert_eq!(hilbert_coeffs(&p, 2)[2], 7);
    }
}
