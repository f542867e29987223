use std::ops::{Add, Div, Mul, Sub};

/// Thomas elimination for `sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
/// `sub[0]` and `sup[n-1]` are ignored. `scratch` is resized as needed.
pub fn solve_tridiagonal<T>(
    sub: &[T],
    diag: &[T],
    sup: &[T],
    rhs: &[T],
    x: &mut [T],
    scratch: &mut Vec<T>,
) where
    T: Copy + Default + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    let n = diag.len();
    scratch.clear();
    scratch.resize(n, T::default());
    let c = scratch.as_mut_slice();
    c[0] = sup[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        if i < n - 1 {
            c[i] = sup[i] / denom;
        }
        x[i] = (rhs[i] - sub[i] * x[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        x[i] = x[i] - c[i] * x[i + 1];
    }
}
