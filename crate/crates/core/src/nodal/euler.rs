//! Euler's formula with boundary for nodal sets:
//! k = 1 + b₁ − b₀ + Σ(ν/2 − 1) + ½Σρ.

/// The formula's value, with the halves summed before rounding down.
/// `interior` lists the number of nodal curves ν at each interior critical
/// zero, `boundary` the number ρ ending at each boundary zero.
pub fn euler_bound(b0: usize, b1: usize, interior: &[usize], boundary: &[usize]) -> i64 {
    let twice = 2
        + 2 * (b1 as i64 - b0 as i64)
        + interior.iter().map(|&nu| nu as i64 - 2).sum::<i64>()
        + boundary.iter().map(|&rho| rho as i64).sum::<i64>();
    twice.div_euclid(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_domains_from_eight_boundary_zeros() {
        assert_eq!(euler_bound(1, 1, &[], &[1; 8]), 5);
    }

    #[test]
    fn five_critical_zeros_and_twelve_boundary_zeros() {
        assert_eq!(euler_bound(1, 1, &[4; 5], &[1; 12]), 12);
    }

    #[test]
    fn nine_critical_zeros_and_twenty_boundary_zeros() {
        assert_eq!(euler_bound(1, 1, &[4; 9], &[1; 20]), 20);
    }

    #[test]
    fn closed_loop_adds_a_domain() {
        // a single closed nodal curve: two domains
        assert_eq!(euler_bound(1, 2, &[], &[]), 2);
    }
}
