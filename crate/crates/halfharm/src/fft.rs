//! Radix-2 complex FFT, `no_std` + `alloc`.
//!
//! Grid sizes in this crate are pinned to powers of two, so a plain iterative
//! Cooley–Tukey transform with a directly tabulated twiddle factor per index
//! (no running products, no accumulated trig error) covers every caller.

use alloc::vec::Vec;
use num_complex::Complex64;
// Used by the no_std build; the test build links std and shadows it.
#[allow(unused_imports)]
use num_traits::Float;

/// Forward transform, unnormalized: `X_k = Σ_j x_j e^{-2πi jk/n}`.
///
/// Panics if the length is not a power of two; callers validate grid sizes
/// at construction time.
pub fn fft(buf: &mut [Complex64]) {
    transform(buf, false);
}

/// Inverse transform without the `1/n` factor: `x_j = Σ_k X_k e^{+2πi jk/n}`.
pub fn ifft_unnormalized(buf: &mut [Complex64]) {
    transform(buf, true);
}

fn transform(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two, got {n}");
    if n <= 1 {
        return;
    }
    let log2n = n.trailing_zeros();

    // Bit-reversal permutation.
    for j in 1..n {
        let r = j.reverse_bits() >> (usize::BITS - log2n);
        if r > j {
            buf.swap(j, r);
        }
    }

    // Twiddle table: tw[j] = e^{∓2πi j/n}, each entry from its own sin/cos.
    let step = if inverse { core::f64::consts::TAU / n as f64 } else { -core::f64::consts::TAU / n as f64 };
    let tw: Vec<Complex64> = (0..n / 2)
        .map(|j| {
            let ang = step * j as f64;
            Complex64::new(ang.cos(), ang.sin())
        })
        .collect();

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for m in 0..half {
                let w = tw[m * stride];
                let a = buf[start + m];
                let b = buf[start + m + half] * w;
                buf[start + m] = a + b;
                buf[start + m + half] = a - b;
            }
        }
        len <<= 1;
    }
}
