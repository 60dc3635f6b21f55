use super::partition::enumerate_partitions;
use crate::scalar::Scalar;

/// `kappa(Z_1, .., Z_l) = sum_pi (|pi|-1)! (-1)^{|pi|-1} prod_{B in pi} E[prod_{i in B} Z_i]`.
///
/// `moment` receives each block as a sorted slice of positions in `0..l`.
/// `l = 0` yields zero.
pub fn joint_cumulant<T: Scalar, F: FnMut(&[usize]) -> T>(l: usize, mut moment: F) -> T {
    if l == 0 {
        return T::zero();
    }
    let partitions = enumerate_partitions(l).expect("joint cumulant order within partition limit");
    let mut total = T::zero();
    for pi in &partitions {
        let mut term = T::from_i64(pi.mobius_weight());
        for block in pi.blocks() {
            term = term * moment(block);
        }
        total = total + term;
    }
    total
}

/// Cumulants `kappa_1..kappa_r` from raw moments `m_1..m_r` by the recursion
/// `kappa_r = m_r - sum_{s<r} C(r-1, s-1) kappa_s m_{r-s}`.
pub fn moments_to_cumulants<T: Scalar>(moments: &[T]) -> Vec<T> {
    let r = moments.len();
    let mut kappa: Vec<T> = Vec::with_capacity(r);
    for n in 1..=r {
        let mut value = moments[n - 1].clone();
        let mut binom: i64 = 1; // C(n-1, s-1) starting at s = 1
        for s in 1..n {
            value = value - T::from_i64(binom) * kappa[s - 1].clone() * moments[n - s - 1].clone();
            binom = binom * (n - s) as i64 / s as i64;
        }
        kappa.push(value);
    }
    kappa
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};
    use num_rational::BigRational;

    #[test]
    fn mean_and_covariance() {
        let mu = rational(2, 7);
        assert_eq!(joint_cumulant(1, |_: &[usize]| mu.clone()), mu);
        // Z = W ~ Bernoulli(1/4): every moment is 1/4.
        let k = joint_cumulant(2, |_: &[usize]| rational(1, 4));
        assert_eq!(k, rational(3, 16));
    }

    #[test]
    fn independent_split_vanishes() {
        // Z_0, Z_1 independent of Z_2, Z_3: moments multiply across the split.
        let base = [rational(1, 3), rational(1, 5), rational(2, 7), rational(3, 11)];
        let pair_a = rational(1, 9);
        let pair_b = rational(1, 13);
        let moment = |block: &[usize]| -> BigRational {
            let left: Vec<usize> = block.iter().copied().filter(|&i| i < 2).collect();
            let right: Vec<usize> = block.iter().copied().filter(|&i| i >= 2).collect();
            let side = |b: &[usize], pair: &BigRational| match b.len() {
                0 => int(1),
                1 => base[b[0]].clone(),
                _ => pair.clone(),
            };
            side(&left, &pair_a) * side(&right, &pair_b)
        };
        assert_eq!(joint_cumulant(4, moment), int(0));
    }

    #[test]
    fn recursion_examples() {
        let c = rational(3, 2);
        let ms: Vec<BigRational> = (1..=6).map(|j| num_traits::pow(c.clone(), j)).collect();
        let ks = moments_to_cumulants(&ms);
        assert_eq!(ks[0], c);
        assert!(ks[1..].iter().all(|x| *x == int(0)));

        let bern: Vec<BigRational> = vec![rational(1, 4); 3];
        let ks = moments_to_cumulants(&bern);
        assert_eq!(ks, vec![rational(1, 4), rational(3, 16), rational(3, 32)]);
    }

    #[test]
    fn recursion_agrees_with_partition_formula() {
        // Moments of a fair die.
        let ms: Vec<BigRational> = (1..=7u32)
            .map(|j| (1..=6i64).map(|x| int(x.pow(j))).fold(int(0), |a, b| a + b) / int(6))
            .collect();
        let ks = moments_to_cumulants(&ms);
        for r in 1..=7 {
            let via_partitions = joint_cumulant(r, |b: &[usize]| ms[b.len() - 1].clone());
            assert_eq!(via_partitions, ks[r - 1], "order {r}");
        }
    }
}
