//! Matrix construction and exact determinant computation.
//!
//! Three independent determinant engines are provided and cross-checked
//! against each other: Laplace cofactor expansion (reference, small
//! dimensions only), the lower-Hessenberg leading-principal-minor recurrence,
//! and fraction-free Bareiss elimination (the general engine; the `A`-family
//! matrices are not Hessenberg). Exact identities leave no tolerance for a
//! construction bug, so no single engine is trusted on its own.

use crate::combinatorics::{binomial, q_binomial};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Var};
use crate::sequences::fib;

/// Dense square matrix of polynomials, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> PolyMatrix {
        PolyMatrix {
            n,
            entries: vec![Polynomial::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(n);
        for i in 0..n {
            *m.get_mut(i, i) = Polynomial::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> PolyMatrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Polynomial]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(self.n, rhs.n));
        }
        let mut out = PolyMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Polynomial::zero();
                for l in 0..self.n {
                    acc = &acc + &(self.get(i, l) * rhs.get(l, j));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Matrix power by repeated squaring; `pow(0)` is the identity.
    pub fn pow(&self, e: u64) -> PolyMatrix {
        let mut result = PolyMatrix::identity(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("square matrices of equal size");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("square matrices of equal size");
            }
        }
        result
    }

    pub fn trace(&self) -> Polynomial {
        let mut acc = Polynomial::zero();
        for i in 0..self.n {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// True when all entries above the first superdiagonal vanish.
    pub fn is_lower_hessenberg(&self) -> bool {
        self.first_upper_violation().is_none()
    }

    fn first_upper_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in (i + 2)..self.n {
                if !self.get(i, j).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Companion matrix A_k(x, s): 1 on the superdiagonal, s at (k-1, 0) and x at
/// (k-1, k-1). For k = 1 the s and x cells coincide and the single entry is
/// x + s.
pub fn companion(k: usize) -> PolyMatrix {
    assert!(k >= 1, "companion matrix needs k >= 1");
    let mut m = PolyMatrix::zero(k);
    for i in 0..k.saturating_sub(1) {
        *m.get_mut(i, i + 1) = Polynomial::one();
    }
    let corner = m.get(k - 1, 0).clone();
    *m.get_mut(k - 1, 0) = &corner + &Polynomial::var(Var::S);
    let last = m.get(k - 1, k - 1).clone();
    *m.get_mut(k - 1, k - 1) = &last + &Polynomial::var(Var::X);
    m
}

/// Whether the columns of A_k^(n+k) tabulate the generalized Fibonacci
/// sequence: column j equals (s F_{n-j}, ..., s F_{n-j+k-1})^T for
/// 0 <= j < k-1 and (F_{n+1}, ..., F_{n+k})^T for j = k-1.
///
/// Indices down to -k appear at the boundary. Extending the recursion
/// backwards gives F_{-k} = 1/s, so the tabulated entry s*F_{-k} is 1; the
/// finitely many indices below -k that can occur here all tabulate 0.
pub fn columns_check(k: usize, n: i64) -> Result<bool> {
    if k < 1 || n <= -(k as i64) {
        return Err(Error::ParameterOutOfRange(format!(
            "columns_check needs k >= 1 and n > -k, got ({k}, {n})"
        )));
    }
    let s_fib = |m: i64| -> Result<Polynomial> {
        if m == -(k as i64) {
            Ok(Polynomial::one())
        } else if m < -(k as i64) {
            Ok(Polynomial::zero())
        } else {
            Ok(&Polynomial::var(Var::S) * &fib(k, m)?)
        }
    };
    let power = companion(k).pow((n + k as i64) as u64);
    for j in 0..k {
        for i in 0..k {
            let expected = if j + 1 < k {
                s_fib(n - j as i64 + i as i64)?
            } else {
                fib(k, n + 1 + i as i64)?
            };
            if power.get(i, j) != &expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The matrix families whose determinants are checked by the verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremMatrix {
    /// C(i-k+1+r, j) x^k + C(i+1+r, j+1); not Hessenberg.
    A,
    /// C(i-k+1+r, i-j) x^k + C(i+1+r, i-j+1); lower Hessenberg.
    B,
    /// C(ki+r, i-j) x^k + C(k(i+1)+r, i-j+1); lower Hessenberg.
    C,
    /// C(i+k-1, j+k-1) x^k - C(i, j-1); lower Hessenberg, ignores r.
    D,
    /// q^((k-r-1)j) [i-k+r+1, j] x^k + q^((k-r)j) [i+r+1, j+1]; not Hessenberg.
    Aq,
    /// [i-k+r+1, i-j] x^k + q^((k-1)j) [i+r+1, i-j+1]; lower Hessenberg.
    Bq,
    /// [2i, i-j] x^2 + [2i+2, i+1-j]; k = 2 only, ignores k and r.
    LucEven,
    /// [2i+1, i-j] x^2 + [2i+3, i+1-j]; k = 2 only, ignores k and r.
    LucOdd,
    /// [i+1, j+1] x^2 - [i, j-1]; k = 2 only, ignores k and r.
    Prop8,
    /// x on the diagonal, 1 on the superdiagonal, (-1)^(k-1) s at (i, i-k+1).
    SparseF,
    /// SparseF with entry (k-1, 0) replaced by (-1)^(k-1) k s; needs k >= 2.
    SparseL,
}

impl TheoremMatrix {
    pub fn parse(name: &str) -> Option<TheoremMatrix> {
        match name {
            "A" => Some(TheoremMatrix::A),
            "B" => Some(TheoremMatrix::B),
            "C" => Some(TheoremMatrix::C),
            "D" => Some(TheoremMatrix::D),
            "Aq" => Some(TheoremMatrix::Aq),
            "Bq" => Some(TheoremMatrix::Bq),
            "LucEven" => Some(TheoremMatrix::LucEven),
            "LucOdd" => Some(TheoremMatrix::LucOdd),
            "Prop8" => Some(TheoremMatrix::Prop8),
            "SparseF" => Some(TheoremMatrix::SparseF),
            "SparseL" => Some(TheoremMatrix::SparseL),
            _ => None,
        }
    }

    /// Whether the family is lower Hessenberg by construction.
    pub fn is_hessenberg_family(self) -> bool {
        !matches!(self, TheoremMatrix::A | TheoremMatrix::Aq)
    }

    fn uses_r(self) -> bool {
        matches!(
            self,
            TheoremMatrix::A
                | TheoremMatrix::B
                | TheoremMatrix::C
                | TheoremMatrix::Aq
                | TheoremMatrix::Bq
        )
    }
}

fn bin_poly(m: i64, j: i64) -> Polynomial {
    Polynomial::constant(binomial(m, j))
}

/// Build the n x n matrix of the requested family.
pub fn build_theorem_matrix(
    which: TheoremMatrix,
    k: usize,
    r: usize,
    n: usize,
) -> Result<PolyMatrix> {
    if k < 1 {
        return Err(Error::ParameterOutOfRange("k must be >= 1".into()));
    }
    if which.uses_r() && r >= k {
        return Err(Error::ParameterOutOfRange(format!(
            "r must satisfy 0 <= r < k, got r = {r}, k = {k}"
        )));
    }
    if which == TheoremMatrix::SparseL && k < 2 {
        return Err(Error::ParameterOutOfRange(
            "the Lucas sparse representation needs k >= 2".into(),
        ));
    }
    let (k, r) = (k as i64, r as i64);
    let xk = Polynomial::x_pow(k);
    let x2 = Polynomial::x_pow(2);
    let entry = |i: usize, j: usize| -> Polynomial {
        let (i, j) = (i as i64, j as i64);
        match which {
            TheoremMatrix::A => &(&bin_poly(i - k + 1 + r, j) * &xk) + &bin_poly(i + 1 + r, j + 1),
            TheoremMatrix::B => {
                &(&bin_poly(i - k + 1 + r, i - j) * &xk) + &bin_poly(i + 1 + r, i - j + 1)
            }
            TheoremMatrix::C => {
                &(&bin_poly(k * i + r, i - j) * &xk) + &bin_poly(k * (i + 1) + r, i - j + 1)
            }
            TheoremMatrix::D => &(&bin_poly(i + k - 1, j + k - 1) * &xk) - &bin_poly(i, j - 1),
            TheoremMatrix::Aq => {
                let head =
                    &(&Polynomial::q_pow((k - r - 1) * j) * &q_binomial(i - k + r + 1, j)) * &xk;
                let tail = &Polynomial::q_pow((k - r) * j) * &q_binomial(i + r + 1, j + 1);
                &head + &tail
            }
            TheoremMatrix::Bq => {
                let head = &q_binomial(i - k + r + 1, i - j) * &xk;
                let tail = &Polynomial::q_pow((k - 1) * j) * &q_binomial(i + r + 1, i - j + 1);
                &head + &tail
            }
            TheoremMatrix::LucEven => {
                &(&q_binomial(2 * i, i - j) * &x2) + &q_binomial(2 * i + 2, i + 1 - j)
            }
            TheoremMatrix::LucOdd => {
                &(&q_binomial(2 * i + 1, i - j) * &x2) + &q_binomial(2 * i + 3, i + 1 - j)
            }
            TheoremMatrix::Prop8 => &(&q_binomial(i + 1, j + 1) * &x2) - &q_binomial(i, j - 1),
            TheoremMatrix::SparseF | TheoremMatrix::SparseL => {
                // Built additively: for k = 1 the s cell lands on the diagonal.
                let mut e = Polynomial::zero();
                if i == j {
                    e = &e + &Polynomial::var(Var::X);
                }
                if j == i + 1 {
                    e = &e + &Polynomial::one();
                }
                if j == i - k + 1 && j >= 0 {
                    let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
                    e = &e + &(&Polynomial::int(sign) * &Polynomial::var(Var::S));
                }
                e
            }
        }
    };
    let mut m = PolyMatrix::from_fn(n, entry);
    if which == TheoremMatrix::SparseL && (k as usize) <= n {
        let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
        *m.get_mut(k as usize - 1, 0) = &Polynomial::int(sign * k) * &Polynomial::var(Var::S);
    }
    Ok(m)
}

const COFACTOR_LIMIT: usize = 7;

/// Determinant by Laplace expansion along the first row. Reference engine;
/// dimension is capped to keep the factorial cost in check.
pub fn det_cofactor(m: &PolyMatrix) -> Result<Polynomial> {
    if m.n > COFACTOR_LIMIT {
        return Err(Error::TooLarge {
            limit: COFACTOR_LIMIT,
            got: m.n,
        });
    }
    fn expand(m: &PolyMatrix) -> Polynomial {
        match m.n {
            0 => Polynomial::one(),
            1 => m.get(0, 0).clone(),
            _ => {
                let mut acc = Polynomial::zero();
                for j in 0..m.n {
                    if m.get(0, j).is_zero() {
                        continue;
                    }
                    let minor = PolyMatrix::from_fn(m.n - 1, |a, b| {
                        m.get(a + 1, if b < j { b } else { b + 1 }).clone()
                    });
                    let cof = m.get(0, j) * &expand(&minor);
                    acc = if j % 2 == 0 { &acc + &cof } else { &acc - &cof };
                }
                acc
            }
        }
    }
    Ok(expand(m))
}

/// Determinant of a lower Hessenberg matrix by the leading-principal-minor
/// recurrence, O(n^2) polynomial multiplications. The shape is verified, not
/// assumed.
pub fn det_hessenberg(m: &PolyMatrix) -> Result<Polynomial> {
    if let Some((i, j)) = m.first_upper_violation() {
        return Err(Error::NotHessenberg(i, j));
    }
    // p[t] = determinant of the leading t x t principal minor. Expanding
    // along the last row, the minor that deletes column j splits into the
    // leading j x j block and a triangular block of superdiagonal entries.
    let mut p = vec![Polynomial::one()];
    for t in 1..=m.n {
        let mut acc = Polynomial::zero();
        let mut super_prod = Polynomial::one();
        for j in (0..t).rev() {
            let contribution = &(m.get(t - 1, j) * &super_prod) * &p[j];
            acc = if (t - 1 - j) % 2 == 0 {
                &acc + &contribution
            } else {
                &acc - &contribution
            };
            if j > 0 {
                super_prod = &super_prod * m.get(j - 1, j);
            }
        }
        p.push(acc);
    }
    Ok(p.pop().unwrap())
}

/// Determinant by fraction-free (Bareiss) elimination. Every interior
/// division is exact over the Laurent-in-q integral domain; a failed division
/// indicates a construction bug and is surfaced, never absorbed.
pub fn det_bareiss(m: &PolyMatrix) -> Result<Polynomial> {
    let n = m.n;
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let mut w: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut sign_flip = false;
    let mut prev = Polynomial::one();
    for p in 0..n - 1 {
        if w[p][p].is_zero() {
            // first structurally nonzero candidate below the pivot
            match (p + 1..n).find(|&r| !w[r][p].is_zero()) {
                Some(r) => {
                    w.swap(p, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(Polynomial::zero()),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let num = &(&w[p][p] * &w[i][j]) - &(&w[i][p] * &w[p][j]);
                w[i][j] = num
                    .divide_exact(&prev)
                    .map_err(|e| Error::InternalDivisionFailure(e.to_string()))?;
            }
            w[i][p] = Polynomial::zero();
        }
        prev = w[p][p].clone();
    }
    let det = w[n - 1][n - 1].clone();
    Ok(if sign_flip { -&det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::lucas;

    fn parse(text: &str) -> Polynomial {
        Polynomial::parse_canonical(text).unwrap()
    }

    fn matrix_from(rows: &[&[&str]]) -> PolyMatrix {
        let n = rows.len();
        PolyMatrix::from_fn(n, |i, j| parse(rows[i][j]))
    }

    #[test]
    fn companion_shapes() {
        assert_eq!(
            companion(3),
            matrix_from(&[&["0", "1", "0"], &["0", "0", "1"], &["s", "0", "x"]])
        );
        assert_eq!(companion(1), matrix_from(&[&["x + s"]]));
        assert_eq!(companion(2), matrix_from(&[&["0", "1"], &["s", "x"]]));
    }

    #[test]
    fn companion_powers_match_display() {
        let a3 = companion(3);
        assert_eq!(
            a3.pow(3),
            matrix_from(&[
                &["s", "0", "x"],
                &["x*s", "s", "x^2"],
                &["x^2*s", "x*s", "x^3 + s"],
            ])
        );
        assert_eq!(a3.pow(4).trace(), lucas(3, 4).unwrap());
        assert_eq!(a3.pow(0), PolyMatrix::identity(3));
    }

    #[test]
    fn companion_satisfies_its_recursion() {
        for k in 2..=4 {
            let a = companion(k);
            let lhs = a.pow(k as u64);
            let prev = a.pow(k as u64 - 1);
            let mut rhs = PolyMatrix::from_fn(k, |i, j| &Polynomial::var(Var::X) * prev.get(i, j));
            for i in 0..k {
                let d = rhs.get(i, i).clone();
                *rhs.get_mut(i, i) = &d + &Polynomial::var(Var::S);
            }
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn companion_trace_is_lucas() {
        for k in 1..=4 {
            let a = companion(k);
            for n in 0..=10u64 {
                assert_eq!(
                    a.pow(n).trace(),
                    lucas(k, n).unwrap(),
                    "(k, n) = ({k}, {n})"
                );
            }
        }
    }

    #[test]
    fn companion_determinant_sign() {
        for k in 2..=5usize {
            let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
            let expected = &Polynomial::int(sign) * &Polynomial::var(Var::S);
            assert_eq!(det_cofactor(&companion(k)).unwrap(), expected, "k = {k}");
        }
        // k = 1 collapses the s and x cells, so the determinant is x + s.
        assert_eq!(det_cofactor(&companion(1)).unwrap(), parse("x + s"));
    }

    #[test]
    fn column_structure() {
        assert!(columns_check(3, 1).unwrap());
        assert!(columns_check(3, -2).unwrap());
        assert!(columns_check(2, 3).unwrap());
        for k in 1..=4 {
            for n in (1 - k as i64)..=8 {
                assert!(columns_check(k, n).unwrap(), "(k, n) = ({k}, {n})");
            }
        }
        assert!(matches!(
            columns_check(3, -3),
            Err(Error::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn builder_a_example() {
        let m = build_theorem_matrix(TheoremMatrix::A, 2, 0, 2).unwrap();
        assert_eq!(m, matrix_from(&[&["x^2 + 1", "-x^2"], &["x^2 + 2", "1"]]));
        assert_eq!(det_bareiss(&m).unwrap(), parse("x^4 + 3*x^2 + 1"));
    }

    #[test]
    fn builder_sparse_f_display() {
        let m = build_theorem_matrix(TheoremMatrix::SparseF, 4, 0, 5).unwrap();
        assert_eq!(
            m,
            matrix_from(&[
                &["x", "1", "0", "0", "0"],
                &["0", "x", "1", "0", "0"],
                &["0", "0", "x", "1", "0"],
                &["-s", "0", "0", "x", "1"],
                &["0", "-s", "0", "0", "x"],
            ])
        );
    }

    #[test]
    fn builder_sparse_l_display() {
        let m = build_theorem_matrix(TheoremMatrix::SparseL, 4, 0, 5).unwrap();
        assert_eq!(
            m,
            matrix_from(&[
                &["x", "1", "0", "0", "0"],
                &["0", "x", "1", "0", "0"],
                &["0", "0", "x", "1", "0"],
                &["-4*s", "0", "0", "x", "1"],
                &["0", "-s", "0", "0", "x"],
            ])
        );
        assert!(matches!(
            build_theorem_matrix(TheoremMatrix::SparseL, 1, 0, 3),
            Err(Error::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn sparse_determinants_match_sequences() {
        for k in 2..=4 {
            for n in 1..=8 {
                let f = build_theorem_matrix(TheoremMatrix::SparseF, k, 0, n).unwrap();
                assert_eq!(
                    det_hessenberg(&f).unwrap(),
                    fib(k, n as i64).unwrap(),
                    "F (k, n) = ({k}, {n})"
                );
                let l = build_theorem_matrix(TheoremMatrix::SparseL, k, 0, n).unwrap();
                assert_eq!(
                    det_hessenberg(&l).unwrap(),
                    lucas(k, n as u64).unwrap(),
                    "L (k, n) = ({k}, {n})"
                );
            }
        }
        // k = 1: the additive diagonal makes det = (x + s)^n directly.
        for n in 1..=5 {
            let f = build_theorem_matrix(TheoremMatrix::SparseF, 1, 0, n).unwrap();
            assert_eq!(det_hessenberg(&f).unwrap(), parse("x + s").pow(n as u64));
        }
    }

    #[test]
    fn builder_prop8_example() {
        let m = build_theorem_matrix(TheoremMatrix::Prop8, 2, 0, 2).unwrap();
        let at_q1 = PolyMatrix::from_fn(2, |i, j| {
            m.get(i, j).substitute(Var::Q, &Polynomial::one()).unwrap()
        });
        assert_eq!(at_q1, matrix_from(&[&["x^2", "-1"], &["2*x^2", "x^2 - 1"]]));
        assert_eq!(det_hessenberg(&at_q1).unwrap(), parse("x^4 + x^2"));
    }

    #[test]
    fn builder_aq_example() {
        let m = build_theorem_matrix(TheoremMatrix::Aq, 2, 0, 2).unwrap();
        assert_eq!(
            det_bareiss(&m).unwrap(),
            parse("x^4 + q^2*x^2 + q*x^2 + x^2 + q^2")
        );
    }

    #[test]
    fn hessenberg_engine_examples() {
        let b = build_theorem_matrix(TheoremMatrix::B, 2, 0, 2).unwrap();
        assert_eq!(det_hessenberg(&b).unwrap(), parse("x^4 + 3*x^2 + 1"));
        let c = build_theorem_matrix(TheoremMatrix::C, 2, 0, 2).unwrap();
        assert_eq!(det_hessenberg(&c).unwrap(), parse("x^4 + 4*x^2 + 2"));
        let single = matrix_from(&[&["x^2 + s"]]);
        assert_eq!(det_hessenberg(&single).unwrap(), parse("x^2 + s"));
        let not_hessenberg = matrix_from(&[&["x", "0", "1"], &["0", "x", "0"], &["0", "0", "x"]]);
        assert!(matches!(
            det_hessenberg(&not_hessenberg),
            Err(Error::NotHessenberg(0, 2))
        ));
    }

    #[test]
    fn cofactor_engine_basics() {
        assert_eq!(
            det_cofactor(&PolyMatrix::identity(4)).unwrap(),
            Polynomial::one()
        );
        assert_eq!(
            det_cofactor(&PolyMatrix::identity(0)).unwrap(),
            Polynomial::one()
        );
        let repeated = matrix_from(&[&["x", "s"], &["x", "s"]]);
        assert!(det_cofactor(&repeated).unwrap().is_zero());
        let f35 = build_theorem_matrix(TheoremMatrix::SparseF, 3, 0, 5).unwrap();
        let at_s1 = PolyMatrix::from_fn(5, |i, j| {
            f35.get(i, j)
                .substitute(Var::S, &Polynomial::one())
                .unwrap()
        });
        assert_eq!(det_cofactor(&at_s1).unwrap(), parse("x^5 + 3*x^2"));
        assert!(matches!(
            det_cofactor(&PolyMatrix::identity(8)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn bareiss_engine_basics() {
        assert!(det_bareiss(&PolyMatrix::zero(3)).unwrap().is_zero());
        assert_eq!(
            det_bareiss(&PolyMatrix::zero(0)).unwrap(),
            Polynomial::one()
        );
        // row swap path: zero pivot with a nonzero candidate below
        let swap = matrix_from(&[&["0", "1"], &["s", "x"]]);
        assert_eq!(det_bareiss(&swap).unwrap(), parse("-s"));
    }

    #[test]
    fn engines_agree_on_theorem_matrices() {
        for which in [
            TheoremMatrix::A,
            TheoremMatrix::B,
            TheoremMatrix::C,
            TheoremMatrix::D,
            TheoremMatrix::Aq,
            TheoremMatrix::Bq,
            TheoremMatrix::LucEven,
            TheoremMatrix::LucOdd,
            TheoremMatrix::Prop8,
            TheoremMatrix::SparseF,
            TheoremMatrix::SparseL,
        ] {
            let kmin = if which == TheoremMatrix::SparseL {
                2
            } else {
                1
            };
            for k in kmin..=3usize {
                for r in 0..k.min(2) {
                    for n in 0..=4usize {
                        let m = build_theorem_matrix(which, k, r, n).unwrap();
                        let reference = det_cofactor(&m).unwrap();
                        assert_eq!(
                            det_bareiss(&m).unwrap(),
                            reference,
                            "bareiss {which:?} ({k}, {r}, {n})"
                        );
                        if m.is_lower_hessenberg() {
                            assert_eq!(
                                det_hessenberg(&m).unwrap(),
                                reference,
                                "hessenberg {which:?} ({k}, {r}, {n})"
                            );
                        } else {
                            assert!(which == TheoremMatrix::A || which == TheoremMatrix::Aq);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theorem_determinants_have_no_negative_q_powers() {
        for which in [TheoremMatrix::Aq, TheoremMatrix::Bq] {
            for k in 1..=3usize {
                for r in 0..k {
                    for n in 0..=4usize {
                        let m = build_theorem_matrix(which, k, r, n).unwrap();
                        let laurent_entries = (0..n)
                            .flat_map(|i| (0..n).map(move |j| (i, j)))
                            .any(|(i, j)| m.get(i, j).has_negative_q_exp());
                        let det = det_bareiss(&m).unwrap();
                        assert!(
                            !det.has_negative_q_exp(),
                            "{which:?} ({k}, {r}, {n}): {det} (laurent entries: {laurent_entries})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = PolyMatrix::identity(2);
        let b = PolyMatrix::identity(3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(2, 3))));
    }
}
