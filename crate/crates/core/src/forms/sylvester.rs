//! Sylvester resultants and the cofactor identity, by fraction-free
//! (Bareiss) elimination over the integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::BinaryForm;
use crate::{Error, Result};

type Matrix = Vec<Vec<BigInt>>;

/// Forms `A1, B1, A2, B2` of degree `d - 1` with
/// `A1 F + B1 G = Res X^(2d-1)` and `A2 F + B2 G = Res Y^(2d-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorIdentity {
    pub a1: BinaryForm,
    pub b1: BinaryForm,
    pub a2: BinaryForm,
    pub b2: BinaryForm,
    pub resultant: BigInt,
}

impl CofactorIdentity {
    /// Largest absolute coefficient over all four cofactors.
    pub fn max_abs_coefficient(&self) -> num_bigint::BigUint {
        [&self.a1, &self.b1, &self.a2, &self.b2]
            .iter()
            .map(|f| f.max_abs_coefficient())
            .max()
            .unwrap_or_default()
    }

    /// Expands both identities and compares coefficient by coefficient.
    pub fn holds_for(&self, f: &BinaryForm, g: &BinaryForm) -> bool {
        let n = 2 * f.degree() - 1;
        let lhs1 = self.a1.mul(f).add(&self.b1.mul(g));
        let lhs2 = self.a2.mul(f).add(&self.b2.mul(g));
        lhs1 == BinaryForm::monomial(n, 0, self.resultant.clone())
            && lhs2 == BinaryForm::monomial(n, n, self.resultant.clone())
    }
}

/// The `2d x 2d` Sylvester matrix. Rows `0..d` hold `X^(d-1-i) Y^i F`, rows
/// `d..2d` hold `X^(d-1-i) Y^i G`; column `j` is the coefficient of
/// `X^(2d-1-j) Y^j`.
///
/// # Panics
/// Panics unless both forms share a degree `d >= 1`.
pub fn sylvester_matrix(f: &BinaryForm, g: &BinaryForm) -> Matrix {
    let d = f.degree();
    assert!(d >= 1 && g.degree() == d, "Sylvester matrix needs equal degrees >= 1");
    let n = 2 * d;
    let mut m = alloc::vec![alloc::vec![BigInt::zero(); n]; n];
    for i in 0..d {
        for (k, c) in f.coefficients().iter().enumerate() {
            m[i][i + k] = c.clone();
        }
        for (k, c) in g.coefficients().iter().enumerate() {
            m[d + i][i + k] = c.clone();
        }
    }
    m
}

/// `Res(F, G)` as the Sylvester determinant. Zero signals a common root.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> BigInt {
    let mut m = sylvester_matrix(f, g);
    let (det, _) = bareiss(&mut m, 0);
    det
}

/// Solves for the cofactor forms via the transposed Sylvester system.
pub fn cofactors(f: &BinaryForm, g: &BinaryForm) -> Result<CofactorIdentity> {
    let d = f.degree();
    let n = 2 * d;
    let s = sylvester_matrix(f, g);
    // (A; B) -> coefficients of A F + B G is the transpose of s
    let mut aug: Matrix = (0..n)
        .map(|r| {
            let mut row: Vec<BigInt> = (0..n).map(|c| s[c][r].clone()).collect();
            row.push(if r == 0 { BigInt::one() } else { BigInt::zero() });
            row.push(if r == n - 1 { BigInt::one() } else { BigInt::zero() });
            row
        })
        .collect();
    let (det, pivot_det) = bareiss(&mut aug, 2);
    if det.is_zero() {
        return Err(Error::ZeroResultant);
    }
    let flip = det != pivot_det;
    let sol_x = back_substitute(&aug, n, n, &pivot_det, flip);
    let sol_y = back_substitute(&aug, n, n + 1, &pivot_det, flip);
    let split = |v: Vec<BigInt>| -> (BinaryForm, BinaryForm) {
        let (a, b) = v.split_at(d);
        (
            BinaryForm::new(a.to_vec()).expect("d >= 1"),
            BinaryForm::new(b.to_vec()).expect("d >= 1"),
        )
    };
    let (a1, b1) = split(sol_x);
    let (a2, b2) = split(sol_y);
    Ok(CofactorIdentity {
        a1,
        b1,
        a2,
        b2,
        resultant: det,
    })
}

/// Fraction-free forward elimination on the leading `n x n` block of `m`,
/// carrying `extra` right-hand columns along. Returns `(det, last_pivot)` where
/// `last_pivot` is the determinant of the row-permuted matrix; the two differ
/// by the permutation sign. After return, `m[k][k]` is the leading
/// `(k+1) x (k+1)` minor of the permuted matrix.
fn bareiss(m: &mut Matrix, extra: usize) -> (BigInt, BigInt) {
    let n = m.len();
    let width = n + extra;
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            // smallest nonzero pivot keeps intermediate entries short
            let pick = (k + 1..n)
                .filter(|&r| !m[r][k].is_zero())
                .min_by_key(|&r| m[r][k].bits());
            match pick {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return (BigInt::zero(), BigInt::zero()),
            }
        }
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower.iter_mut() {
            let lead = core::mem::take(&mut row[k]);
            for j in k + 1..width {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = m[k][k].clone();
    }
    let last = m[n - 1][n - 1].clone();
    let det = if negate { -&last } else { last.clone() };
    (det, last)
}

/// Back substitution on a Bareiss-reduced system: returns `adj(M) b` for the
/// right-hand column `col`, i.e. `det(M) * x` where `M x = b`.
fn back_substitute(m: &Matrix, n: usize, col: usize, pivot_det: &BigInt, flip: bool) -> Vec<BigInt> {
    let mut y = alloc::vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut acc = pivot_det * &m[i][col];
        for j in i + 1..n {
            acc -= &m[i][j] * &y[j];
        }
        debug_assert!((&acc % &m[i][i]).is_zero(), "inexact fraction-free division");
        y[i] = acc / &m[i][i];
    }
    if flip {
        for v in &mut y {
            *v = -core::mem::take(v);
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Laplace expansion along the first row; exponential, small sizes only.
    fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut total = BigInt::zero();
        for c in 0..n {
            if m[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][c] * laplace_det(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn random_form(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> BinaryForm {
        BinaryForm::from_i64s(&(0..=d).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
    }

    /// Product of linear forms `p X - q Y`.
    fn from_linear(factors: &[(i64, i64)]) -> BinaryForm {
        factors
            .iter()
            .fold(BinaryForm::from_i64s(&[1]), |acc, &(p, q)| {
                acc.mul(&BinaryForm::from_i64s(&[p, -q]))
            })
    }

    #[test]
    fn family_with_quadratic_resultant() {
        for a in [-7i64, 0, 1, 2, 3, 10, 12345] {
            let f = BinaryForm::from_i64s(&[1, 1, 1]);
            let g = BinaryForm::from_i64s(&[1, a, 2]);
            assert_eq!(resultant(&f, &g), bi(a * a - 3 * a + 3));
        }
    }

    #[test]
    fn family_with_linear_resultant() {
        for a in [1i64, 2, 5, 1_000_003] {
            let f = BinaryForm::from_i64s(&[a, 0, 1]);
            let g = BinaryForm::from_i64s(&[0, 1, 0]);
            let r = resultant(&f, &g);
            assert_eq!(r, laplace_det(&sylvester_matrix(&f, &g)));
            assert_eq!(r.abs(), bi(a));
        }
    }

    #[test]
    fn pure_powers_have_unit_resultant() {
        for d in 1..=6usize {
            let mut xd = alloc::vec![0i64; d + 1];
            xd[0] = 1;
            let mut yd = alloc::vec![0i64; d + 1];
            yd[d] = 1;
            let r = resultant(&BinaryForm::from_i64s(&xd), &BinaryForm::from_i64s(&yd));
            assert_eq!(r.abs(), BigInt::one());
        }
    }

    #[test]
    fn matches_laplace_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let d = rng.gen_range(1..=4);
            let f = random_form(&mut rng, d, 50);
            let g = random_form(&mut rng, d, 50);
            assert_eq!(resultant(&f, &g), laplace_det(&sylvester_matrix(&f, &g)));
        }
    }

    #[test]
    fn matches_root_product_formula() {
        // Res(prod (p_i X - q_i Y), prod (r_j X - s_j Y)) = prod (q_i r_j - p_i s_j)
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..40 {
            let d = rng.gen_range(1..=4);
            let fs: Vec<(i64, i64)> = (0..d).map(|_| (rng.gen_range(-6..=6), rng.gen_range(-6..=6))).collect();
            let gs: Vec<(i64, i64)> = (0..d).map(|_| (rng.gen_range(-6..=6), rng.gen_range(-6..=6))).collect();
            let expected: BigInt = fs
                .iter()
                .flat_map(|&(p, q)| gs.iter().map(move |&(r, s)| bi(q * r - p * s)))
                .product();
            assert_eq!(resultant(&from_linear(&fs), &from_linear(&gs)), expected);
        }
    }

    #[test]
    fn shared_factor_forces_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let k = rng.gen_range(-9..=9);
            let common = BinaryForm::from_i64s(&[1, -k]);
            let d = rng.gen_range(1..=3);
            let f = common.mul(&random_form(&mut rng, d, 9));
            let g = common.mul(&random_form(&mut rng, d, 9));
            assert!(resultant(&f, &g).is_zero());
            assert_eq!(cofactors(&f, &g), Err(Error::ZeroResultant));
        }
    }

    #[test]
    fn cofactors_of_coordinate_squares() {
        let f = BinaryForm::from_i64s(&[1, 0, 0]);
        let g = BinaryForm::from_i64s(&[0, 0, 1]);
        let c = cofactors(&f, &g).unwrap();
        assert!(c.holds_for(&f, &g));
        let r = &c.resultant;
        assert_eq!(c.a1, BinaryForm::from_i64s(&[1, 0]).scale(r));
        assert!(c.b1.is_zero());
        assert!(c.a2.is_zero());
        assert_eq!(c.b2, BinaryForm::from_i64s(&[0, 1]).scale(r));
    }

    #[test]
    fn cofactor_identity_expands_exactly() {
        for a in [1i64, 2, 3, 17, 1 << 40] {
            let f = BinaryForm::from_i64s(&[a, 0, 1]);
            let g = BinaryForm::from_i64s(&[0, 1, 0]);
            let c = cofactors(&f, &g).unwrap();
            assert_eq!(c.resultant, resultant(&f, &g));
            assert!(c.holds_for(&f, &g));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let mut checked = 0;
        while checked < 100 {
            let d = rng.gen_range(2..=4);
            let f = random_form(&mut rng, d, 20);
            let g = random_form(&mut rng, d, 20);
            let Ok(c) = cofactors(&f, &g) else { continue };
            assert!(c.holds_for(&f, &g));
            // pointwise as well
            for _ in 0..20 {
                let (x, y) = (bi(rng.gen_range(-99..=99)), bi(rng.gen_range(-99..=99)));
                let n = 2 * d as u32 - 1;
                let lhs = c.a1.evaluate(&x, &y) * f.evaluate(&x, &y) + c.b1.evaluate(&x, &y) * g.evaluate(&x, &y);
                assert_eq!(lhs, &c.resultant * num_traits::pow(x.clone(), n as usize));
                let lhs = c.a2.evaluate(&x, &y) * f.evaluate(&x, &y) + c.b2.evaluate(&x, &y) * g.evaluate(&x, &y);
                assert_eq!(lhs, &c.resultant * num_traits::pow(y.clone(), n as usize));
            }
            checked += 1;
        }
    }

    #[test]
    fn pivoting_handles_zero_leading_coefficients() {
        let f = BinaryForm::from_i64s(&[1, 0, 3, 1]);
        let g = BinaryForm::from_i64s(&[0, 2, 0, 5]);
        let r = resultant(&f, &g);
        assert!(!r.is_zero());
        assert_eq!(r, laplace_det(&sylvester_matrix(&f, &g)));
        assert!(cofactors(&f, &g).unwrap().holds_for(&f, &g));
    }
}
