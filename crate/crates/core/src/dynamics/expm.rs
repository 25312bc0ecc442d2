// SPDX-License-Identifier: Apache-2.0

type M4 = [[f64; 4]; 4];

fn mul(a: &M4, b: &M4) -> M4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

/// `exp(A)` by scaling and squaring: `A / 2^s` has 1-norm at most 1/2, the
/// exponential of the scaled matrix is summed to 24 Taylor terms and squared
/// back `s` times.
pub fn expm4(a: &M4) -> M4 {
    let norm = (0..4)
        .map(|j| (0..4).map(|i| a[i][j].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled = a.map(|row| row.map(|v| v * scale));

    let mut result: M4 = std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u8 as f64));
    let mut term = result;
    for k in 1..=24 {
        term = mul(&term, &scaled).map(|row| row.map(|v| v / k as f64));
        for i in 0..4 {
            for j in 0..4 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mul(&result, &result);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_rotation() {
        let e = expm4(&[[1.0, 0.0, 0.0, 0.0], [0.0, -2.0, 0.0, 0.0], [0.0; 4], [0.0, 0.0, 0.0, 0.5]]);
        assert!((e[0][0] - 1f64.exp()).abs() < 1e-14);
        assert!((e[1][1] - (-2f64).exp()).abs() < 1e-15);
        assert_eq!(e[2][2], 1.0);

        let t = 7.3;
        let e = expm4(&[[0.0, -t, 0.0, 0.0], [t, 0.0, 0.0, 0.0], [0.0; 4], [0.0; 4]]);
        assert!((e[0][0] - t.cos()).abs() < 1e-13);
        assert!((e[1][0] - t.sin()).abs() < 1e-13);
    }
}
