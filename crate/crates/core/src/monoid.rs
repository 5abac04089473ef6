//! 2x2 integer matrix arithmetic and the bijection between continued-fraction
//! digit words and products of the generators `A` and `B`.
//!
//! A digit word `(a1, ..., ak)` stands for the letter product
//! `B^a1 A^a2 B^a3 ...` (letters alternate starting with `B`), equivalently
//! the factor product `M(a1) ... M(ak)` with `M(a) = [[a,1],[1,0]]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// 2x2 matrix with nonnegative 64-bit entries, row-major `[[a,b],[c,d]]`.
///
/// Products of `M(a)` factors carry determinant `(-1)^k`; the letter-product
/// matrices produced by [`word_to_matrix`] always have determinant `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };
/// Generator `A = [[1,0],[1,1]]`.
pub const GEN_A: Mat2 = Mat2 { a: 1, b: 0, c: 1, d: 1 };
/// Generator `B = [[1,1],[0,1]]`.
pub const GEN_B: Mat2 = Mat2 { a: 1, b: 1, c: 0, d: 1 };

impl Mat2 {
    pub const fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// Continued-fraction factor `M(a) = [[a,1],[1,0]]`.
    pub const fn factor(a: u64) -> Self {
        Mat2 { a, b: 1, c: 1, d: 0 }
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Result<u64> {
        self.a.checked_add(self.d).ok_or(Error::Overflow { op: "trace" })
    }

    /// Transpose-conjugation by `J = [[0,1],[1,0]]`, i.e. `J * self * J`.
    pub fn flip(&self) -> Self {
        Mat2 { a: self.d, b: self.c, c: self.b, d: self.a }
    }
}

fn dot(x: u64, y: u64, z: u64, w: u64, op: &'static str) -> Result<u64> {
    let v = x as u128 * y as u128 + z as u128 * w as u128;
    u64::try_from(v).map_err(|_| Error::Overflow { op })
}

/// Ordinary matrix product with checked 64-bit entries.
pub fn mat_mul(lhs: &Mat2, rhs: &Mat2) -> Result<Mat2> {
    Ok(Mat2 {
        a: dot(lhs.a, rhs.a, lhs.b, rhs.c, "mat_mul entry (1,1)")?,
        b: dot(lhs.a, rhs.b, lhs.b, rhs.d, "mat_mul entry (1,2)")?,
        c: dot(lhs.c, rhs.a, lhs.d, rhs.c, "mat_mul entry (2,1)")?,
        d: dot(lhs.c, rhs.b, lhs.d, rhs.d, "mat_mul entry (2,2)")?,
    })
}

impl core::ops::Mul for Mat2 {
    type Output = Result<Mat2>;
    fn mul(self, rhs: Mat2) -> Result<Mat2> {
        mat_mul(&self, &rhs)
    }
}

/// Nonempty sequence of continued-fraction digits, all >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CFWord {
    digits: Vec<u64>,
}

impl CFWord {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyWord);
        }
        if digits.iter().any(|&a| a == 0) {
            return Err(Error::ZeroDigit);
        }
        Ok(CFWord { digits })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True unless the word is an exact repetition of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.digits.len();
        'outer: for d in 1..n {
            if n % d != 0 {
                continue;
            }
            for i in d..n {
                if self.digits[i] != self.digits[i - d] {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

/// Convergent numerators and denominators, indices `0..=k`.
///
/// Seeds `p0 = 0, p1 = 1, q0 = 1, q1 = a1`, then
/// `p_n = a_n p_{n-1} + p_{n-2}` and likewise for `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentTable {
    pub p: Vec<u64>,
    pub q: Vec<u64>,
}

impl ConvergentTable {
    pub fn last(&self) -> (u64, u64) {
        (*self.p.last().unwrap(), *self.q.last().unwrap())
    }

    /// The factor product `M(a1)...M(ak) = [[q_k, q_{k-1}], [p_k, p_{k-1}]]`.
    pub fn factor_matrix(&self) -> Mat2 {
        let k = self.q.len() - 1;
        Mat2 { a: self.q[k], b: self.q[k - 1], c: self.p[k], d: self.p[k - 1] }
    }
}

pub fn convergents(w: &CFWord) -> Result<ConvergentTable> {
    let k = w.len();
    let mut p = vec![0u64; k + 1];
    let mut q = vec![0u64; k + 1];
    p[0] = 0;
    q[0] = 1;
    // virtual index -1 seeds: p_{-1} = 1, q_{-1} = 0
    let (mut pm, mut qm) = (1u64, 0u64);
    for (i, &a) in w.digits().iter().enumerate() {
        p[i + 1] = dot(a, p[i], 1, pm, "convergent p")?;
        q[i + 1] = dot(a, q[i], 1, qm, "convergent q")?;
        pm = p[i];
        qm = q[i];
    }
    Ok(ConvergentTable { p, q })
}

/// Letter-product matrix `B^a1 A^a2 B^a3 ...` of the word.
///
/// For even length this equals the factor product
/// `[[q_k, q_{k-1}], [p_k, p_{k-1}]]`; for odd length the columns are
/// swapped: `[[q_{k-1}, q_k], [p_{k-1}, p_k]]`. Either way det = +1.
pub fn word_to_matrix(w: &CFWord) -> Result<Mat2> {
    let t = convergents(w)?;
    let m = t.factor_matrix();
    if w.len() % 2 == 0 {
        Ok(m)
    } else {
        Ok(Mat2 { a: m.b, b: m.a, c: m.d, d: m.c })
    }
}

/// Inverse of [`word_to_matrix`]: recover the unique digit word of a
/// letter-product matrix.
///
/// The layout chooses the parity: top-left > top-right is an even word,
/// top-right >= top-left an odd one. Quotients `K = floor(q'/q)` are
/// stripped from the right; when `q` divides `q'` exactly (only possible
/// with `q = 1`, by coprimality) the correct digit is `K - 1`, which leaves
/// the terminal `M(a)` state. The result is re-encoded and compared, so any
/// matrix that is not a valid product is rejected.
pub fn matrix_to_word(m: &Mat2) -> Result<CFWord> {
    if m.det() != 1 {
        return Err(Error::InvalidMatrix("determinant of a letter product must be +1"));
    }
    let even_layout = m.a > m.b;
    // normalize to the factor-product layout [[q_k, q_{k-1}],[p_k, p_{k-1}]]
    let (mut a, mut b, mut c, mut d) = if even_layout {
        (m.a, m.b, m.c, m.d)
    } else {
        (m.b, m.a, m.d, m.c)
    };
    if b == 0 {
        return Err(Error::InvalidMatrix("not a B-leading word (q_{k-1} = 0)"));
    }
    let mut rev = Vec::new();
    loop {
        if b == 1 && d == 0 {
            // terminal single factor M(a)
            if c != 1 {
                return Err(Error::InvalidMatrix("terminal state is not M(a)"));
            }
            rev.push(a);
            break;
        }
        if b == 0 || a < b || c < d {
            return Err(Error::InvalidMatrix("column ordering violated"));
        }
        let mut k = a / b;
        if a % b == 0 {
            // exact multiple: coprimality forces q_{k-1} = 1 here
            if b != 1 {
                return Err(Error::InvalidMatrix("exact quotient with q_{k-1} > 1"));
            }
            k -= 1;
        }
        if k == 0 {
            return Err(Error::InvalidMatrix("zero quotient while decoding"));
        }
        let (bn, dn) = (a - k * b, c.checked_sub(k * d).ok_or(Error::InvalidMatrix("p column underflow"))?);
        (a, b, c, d) = (b, bn, d, dn);
        rev.push(k);
    }
    if (rev.len() % 2 == 0) != even_layout {
        return Err(Error::InvalidMatrix("digit parity does not match matrix layout"));
    }
    rev.reverse();
    let w = CFWord::new(rev)?;
    // round-trip guard: the strip sequence above is only valid for genuine
    // products, so re-encode and compare
    if word_to_matrix(&w)? != *m {
        return Err(Error::InvalidMatrix("matrix is not a product of M(a) factors"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(d: &[u64]) -> CFWord {
        CFWord::new(d.to_vec()).unwrap()
    }

    /// Independent letter-by-letter product, used as the oracle.
    fn letter_matrix(w: &CFWord) -> Mat2 {
        let mut m = IDENTITY;
        for (i, &a) in w.digits().iter().enumerate() {
            let gen = if i % 2 == 0 { GEN_B } else { GEN_A };
            for _ in 0..a {
                m = mat_mul(&m, &gen).unwrap();
            }
        }
        m
    }

    #[test]
    fn mul_identity_and_generators() {
        let x = Mat2::new(3, 1, 2, 1);
        assert_eq!(mat_mul(&IDENTITY, &x).unwrap(), x);
        assert_eq!(mat_mul(&x, &IDENTITY).unwrap(), x);
        assert_eq!(mat_mul(&GEN_A, &GEN_B).unwrap(), Mat2::new(1, 1, 1, 2));
        let m1 = Mat2::factor(1);
        assert_eq!(mat_mul(&m1, &m1).unwrap(), Mat2::new(2, 1, 1, 1));
    }

    #[test]
    fn mul_overflow_reports_operation() {
        let big = Mat2::new(u64::MAX, 1, 1, 1);
        match mat_mul(&big, &big) {
            Err(Error::Overflow { op }) => assert!(op.contains("mat_mul")),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(GEN_A.trace().unwrap(), 2);
        assert_eq!(Mat2::new(2, 1, 1, 1).trace().unwrap(), 3);
        assert_eq!(Mat2::new(5, 2, 2, 1).trace().unwrap(), 6);
    }

    #[test]
    fn convergent_seeds() {
        let t = convergents(&word(&[1, 1])).unwrap();
        assert_eq!(t.p, vec![0, 1, 1]);
        assert_eq!(t.q, vec![1, 1, 2]);
        let t = convergents(&word(&[2, 1])).unwrap();
        assert_eq!(t.p, vec![0, 1, 1]);
        assert_eq!(t.q, vec![1, 2, 3]);
    }

    #[test]
    fn convergent_final_value() {
        // [1,2,3] = 7/10
        let t = convergents(&word(&[1, 2, 3])).unwrap();
        assert_eq!(t.last(), (7, 10));
    }

    #[test]
    fn word_to_matrix_examples() {
        let m = word_to_matrix(&word(&[1, 1])).unwrap();
        assert_eq!(m, Mat2::new(2, 1, 1, 1));
        assert_eq!(m.trace().unwrap(), 3);
        let m = word_to_matrix(&word(&[1, 2])).unwrap();
        assert_eq!(m, Mat2::new(3, 1, 2, 1));
        assert_eq!(m.trace().unwrap(), 4);
        let m = word_to_matrix(&word(&[2, 2])).unwrap();
        assert_eq!(m, Mat2::new(5, 2, 2, 1));
        assert_eq!(m.trace().unwrap(), 6);
    }

    #[test]
    fn word_matrix_matches_letter_product() {
        for digits in [
            vec![1u64], vec![4], vec![1, 1], vec![2, 1, 1], vec![1, 1, 1],
            vec![3, 1, 4, 1], vec![2, 2, 2], vec![1, 2, 3, 4, 5],
        ] {
            let w = word(&digits);
            assert_eq!(word_to_matrix(&w).unwrap(), letter_matrix(&w), "word {digits:?}");
        }
    }

    #[test]
    fn decode_examples() {
        let w = matrix_to_word(&Mat2::new(2, 1, 1, 1)).unwrap();
        assert_eq!(w.digits(), &[1, 1]);
        let w = matrix_to_word(&Mat2::new(3, 1, 2, 1)).unwrap();
        assert_eq!(w.digits(), &[1, 2]);
        // B alone is the single-digit odd word (1)
        let w = matrix_to_word(&GEN_B).unwrap();
        assert_eq!(w.digits(), &[1]);
        // B^k decodes to (k)
        let w = matrix_to_word(&Mat2::new(1, 5, 0, 1)).unwrap();
        assert_eq!(w.digits(), &[5]);
    }

    #[test]
    fn decode_rejects_invalid() {
        // A-leading matrices are not in the B-leading classes
        assert!(matrix_to_word(&GEN_A).is_err());
        assert!(matrix_to_word(&Mat2::new(1, 0, 3, 1)).is_err());
        // wrong determinant
        assert!(matrix_to_word(&Mat2::new(2, 1, 1, 2)).is_err());
        // det +1 but not a letter product of this form
        assert!(matrix_to_word(&Mat2::new(1, 1, 1, 2)).is_err());
        assert!(matrix_to_word(&IDENTITY).is_err());
    }

    #[test]
    fn round_trip_small() {
        for digits in [
            vec![1u64], vec![7], vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2],
            vec![1, 1, 1], vec![2, 1, 3], vec![1, 1, 1, 1], vec![5, 4, 3, 2, 1],
        ] {
            let w = word(&digits);
            let m = word_to_matrix(&w).unwrap();
            assert_eq!(matrix_to_word(&m).unwrap(), w, "word {digits:?}");
        }
    }

    #[test]
    fn flip_symmetry() {
        // A-leading word matrix equals J * (B-leading word matrix) * J
        let w = word(&[2, 1, 3, 1]);
        let b_led = word_to_matrix(&w).unwrap();
        let mut a_led = IDENTITY;
        for (i, &a) in w.digits().iter().enumerate() {
            let gen = if i % 2 == 0 { GEN_A } else { GEN_B };
            for _ in 0..a {
                a_led = mat_mul(&a_led, &gen).unwrap();
            }
        }
        assert_eq!(a_led, b_led.flip());
    }

    #[test]
    fn primitivity() {
        assert!(word(&[1]).is_primitive());
        assert!(word(&[1, 2]).is_primitive());
        assert!(!word(&[1, 1]).is_primitive());
        assert!(!word(&[1, 2, 1, 2]).is_primitive());
        assert!(word(&[1, 2, 1]).is_primitive());
        assert!(!word(&[2, 1, 2, 1, 2, 1]).is_primitive());
    }
}
