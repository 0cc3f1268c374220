//! Power-series expansion of the real-class generating function for GL.

use super::CountError;
use crate::labels::MAX_PARTITION_SIZE;

fn mul_trunc(a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `t^0 ..= t^terms` in
/// `prod_{r >= 1} (1 + t^r)^{(2, q - 1)} / (1 - q t^{2r})`.
pub fn genfun_real_gl(q: u64, terms: u32) -> Result<Vec<u128>, CountError> {
    if terms > MAX_PARTITION_SIZE {
        return Err(CountError::TooManyTerms(terms));
    }
    let len = terms as usize + 1;
    let e = if q % 2 == 1 { 2 } else { 1 };
    let mut series = vec![0u128; len];
    series[0] = 1;
    for r in 1..len {
        let mut binom = vec![0u128; len];
        binom[0] = 1;
        for _ in 0..e {
            let mut f = vec![0u128; len];
            f[0] = 1;
            f[r] += 1;
            binom = mul_trunc(&binom, &f);
        }
        let mut geo = vec![0u128; len];
        let mut k = 0;
        while 2 * r * k < len {
            geo[2 * r * k] = (q as u128).pow(k as u32);
            k += 1;
        }
        series = mul_trunc(&mul_trunc(&series, &binom), &geo);
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        assert_eq!(genfun_real_gl(3, 0).unwrap(), vec![1]);
        assert_eq!(genfun_real_gl(3, 2).unwrap()[2], 6);
        assert_eq!(genfun_real_gl(2, 3).unwrap()[3], 4);
        assert_eq!(genfun_real_gl(2, 4).unwrap()[4], 10);
        assert!(genfun_real_gl(3, 13).is_err());
    }
}
