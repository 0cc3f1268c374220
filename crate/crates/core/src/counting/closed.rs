//! Closed-form per-type counts.

use num_rational::Ratio;

use crate::field::two_adic;
use crate::labels::Partition;
use crate::poly::{count_nqd, sigma};

pub fn gl_nu(nu: &Partition, q: u64) -> u128 {
    nu.present().map(|(_, m)| count_nqd(q, m)).product()
}

/// Zeta-real classes of type `nu` in GL_n(q), q odd.
pub fn zeta_gl_nu(nu: &Partition, q: u64) -> u128 {
    nu.present().map(|(_, m)| count_nqd(q, m) * sigma(m)).product()
}

pub fn f_nu(r: u32, q: u64) -> u128 {
    let q = q as u128;
    ((q + 1).pow(r) + (q - 1).pow(r)) / 2
}

pub fn g_nu(r: u32, q: u64) -> u128 {
    let q = q as u128;
    ((q + 1).pow(r) - (q - 1).pow(r)) / 2
}

/// Number of odd `i` with `n_i > 0`.
pub fn odd_rank(nu: &Partition) -> u32 {
    nu.present().filter(|(i, _)| i % 2 == 1).count() as u32
}

/// Real GL-classes of type `nu` contained in SL_n(q).
pub fn sl_nu(nu: &Partition, q: u64) -> u128 {
    let full = gl_nu(nu, q);
    if q.is_multiple_of(2) || !nu.has_odd_part() {
        return full;
    }
    if nu.present().any(|(i, m)| (i as u32 * m) % 2 == 1) {
        return full / 2;
    }
    let mut acc = f_nu(odd_rank(nu), q);
    for (i, m) in nu.present() {
        if i % 2 == 1 {
            acc *= (q as u128).pow(m / 2 - 1);
        } else {
            acc *= count_nqd(q, m);
        }
    }
    acc
}

/// Real classes of type `nu` in PGL_n(q).
pub fn pgl_nu(nu: &Partition, q: u64) -> u128 {
    let gl = gl_nu(nu, q);
    if q % 2 == 1 && nu.d() == 1 {
        gl / 2
    } else {
        gl
    }
}

/// Which branch of the PSL_n(q) analysis a type falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PslCase {
    QEven,
    /// `|n|_2 < |q-1|_2`.
    Below,
    /// `|n|_2 > |q-1|_2` and `d > 1`.
    AboveWide,
    /// `|n|_2 > |q-1|_2` and `d = 1`.
    AboveNarrow,
    /// `|n|_2 = |q-1|_2`, `d = 1`.
    P1,
    /// `|n|_2 = |q-1|_2`, `d > 1`, no odd part.
    P2,
    /// `|n|_2 = |q-1|_2`, `d > 1`, some odd part.
    P3,
    /// `|n|_2 = |q-1|_2 = 2` and no odd part.
    Vanishing,
}

pub fn psl_case(nu: &Partition, n: u32, q: u64) -> PslCase {
    if q.is_multiple_of(2) {
        return PslCase::QEven;
    }
    let a = two_adic(n as u64).unwrap();
    let b = two_adic(q - 1).unwrap();
    let d = nu.d();
    let odd = nu.has_odd_part();
    if a < b {
        PslCase::Below
    } else if a > b {
        if d > 1 {
            PslCase::AboveWide
        } else {
            PslCase::AboveNarrow
        }
    } else if !n.is_multiple_of(4) && !odd {
        PslCase::Vanishing
    } else if d == 1 {
        PslCase::P1
    } else if odd {
        PslCase::P3
    } else {
        PslCase::P2
    }
}

/// PGL-real PGL-classes of type `nu` inside PSL_n(q); may be a half-integer.
pub fn psl_nu(nu: &Partition, n: u32, q: u64) -> Ratio<u128> {
    let half = |x: u128| Ratio::new(x, 2);
    match psl_case(nu, n, q) {
        PslCase::QEven => Ratio::from_integer(gl_nu(nu, q)),
        PslCase::Below | PslCase::P3 => half(gl_nu(nu, q)),
        PslCase::AboveWide => Ratio::from_integer(sl_nu(nu, q)),
        PslCase::AboveNarrow | PslCase::P1 | PslCase::P2 => half(sl_nu(nu, q)),
        PslCase::Vanishing => Ratio::from_integer(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu(e: &[u32]) -> Partition {
        Partition::from_exponents(e.to_vec())
    }

    #[test]
    fn gl_examples() {
        assert_eq!(gl_nu(&nu(&[2]), 3), 4);
        assert_eq!(gl_nu(&nu(&[0, 1]), 3), 2);
        assert_eq!(gl_nu(&nu(&[1, 1]), 5), 4);
    }

    #[test]
    fn sl_examples() {
        assert_eq!(sl_nu(&nu(&[2]), 3), 3);
        assert_eq!(sl_nu(&nu(&[1]), 3), 1);
        assert_eq!(sl_nu(&nu(&[0, 1]), 3), 2);
        assert_eq!(f_nu(1, 3), 3);
        assert_eq!(g_nu(1, 3), 1);
        assert_eq!(f_nu(2, 5) + g_nu(2, 5), 36);
    }

    #[test]
    fn psl_cases() {
        assert_eq!(psl_case(&nu(&[2]), 2, 5), PslCase::Below);
        assert_eq!(psl_case(&nu(&[2]), 2, 7), PslCase::P3);
        assert_eq!(psl_case(&nu(&[0, 1]), 2, 7), PslCase::Vanishing);
        assert_eq!(psl_case(&nu(&[0, 2]), 4, 3), PslCase::AboveWide);
        assert_eq!(psl_case(&nu(&[1, 0, 1]), 4, 3), PslCase::AboveNarrow);
        assert_eq!(psl_case(&nu(&[0, 2]), 4, 5), PslCase::P2);
        assert_eq!(psl_case(&nu(&[2, 1]), 4, 5), PslCase::P1);
        assert_eq!(psl_case(&nu(&[4]), 4, 5), PslCase::P3);
        assert_eq!(psl_nu(&nu(&[0, 1]), 2, 4), Ratio::from_integer(1));
    }
}
