//! In-place fast Walsh-Hadamard butterflies.
//!
//! After the transform, `data[v] = sum_x data_in[x] * (-1)^(popcount(v & x))`.
//! The flavor-specific inner products are handled by the callers through a
//! relabelling of the output index (see [`Flavor::dual_index`](crate::boolfn::Flavor::dual_index)).

/// Butterfly over a vector of integers of length `2^n`.
pub fn fwht(data: &mut [i64]) {
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
}

/// Butterfly over `2^n` rows of `width` integers each, one ring element per row.
pub fn fwht_rows(data: &mut [i64], width: usize) {
    debug_assert_eq!(data.len() % width, 0);
    let len = data.len() / width;
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in data.chunks_exact_mut(2 * half * width) {
            let (lo, hi) = block.split_at_mut(half * width);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
}
