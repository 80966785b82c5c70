use crate::base::C64;

/// Pairwise summation in a fixed order; the result depends only on the slice.
pub fn pairwise_sum(v: &[C64]) -> C64 {
    const LEAF: usize = 16;
    if v.len() <= LEAF {
        return v.iter().fold(C64::new(0.0, 0.0), |a, b| a + b);
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}
