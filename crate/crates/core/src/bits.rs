//! Small helpers for vertex sets stored as `u64` masks.

/// Iterates the set bits of `mask` in ascending order.
#[inline]
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Builds a mask from a list of vertices.
pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// Sorted vertex list of a mask.
pub fn vertices_of(mask: u64) -> Vec<usize> {
    iter_bits(mask).collect()
}

pub(crate) fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_iteration_is_ascending() {
        assert_eq!(vertices_of(0b1011_0010), vec![1, 4, 5, 7]);
        assert_eq!(mask_of(&[1, 4, 5, 7]), 0b1011_0010);
        assert_eq!(iter_bits(0).count(), 0);
        assert_eq!(iter_bits(u64::MAX).count(), 64);
    }

    #[test]
    fn small_binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(11, 3), 165);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(62, 31), 465_428_353_255_261_088);
    }
}
