//! Exact sparse polynomial arithmetic over arbitrary-precision integers in
//! the fixed variable universe {x, s, q}.
//!
//! Exponents of `x` and `s` are nonnegative; the exponent of `q` may be any
//! integer (the ring is Laurent in `q` only). Polynomials are kept canonical
//! at all times: no zero coefficient is ever stored and each exponent triple
//! appears at most once, so structural equality is ring equality.
//!
//! All operations are pure and values are immutable once built; they can be
//! shared freely between threads.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The three variables of the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    S,
    Q,
}

/// Exponent triple `x^x * s^s * q^q`.
///
/// The derived ordering is lexicographic on (x, s, q). It is translation
/// invariant, so it is a monomial order even with negative q exponents, and
/// it doubles as the canonical term order (rendered descending).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub x: i64,
    pub s: i64,
    pub q: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, s: 0, q: 0 };

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x + other.x,
            s: self.s + other.s,
            q: self.q + other.q,
        }
    }

    fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }
}

/// Sparse exact polynomial in x, s, q with `BigInt` coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::int(1)
    }

    /// Constant polynomial from a machine integer.
    pub fn int(c: i64) -> Polynomial {
        Polynomial::constant(BigInt::from(c))
    }

    /// Constant polynomial from a big integer.
    pub fn constant(c: BigInt) -> Polynomial {
        Polynomial::monomial(c, 0, 0, 0)
    }

    /// Single term `c * x^xe * s^se * q^qe`. Panics if `xe` or `se` is negative.
    pub fn monomial(c: BigInt, xe: i64, se: i64, qe: i64) -> Polynomial {
        assert!(xe >= 0 && se >= 0, "x and s exponents must be nonnegative");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(
                Monomial {
                    x: xe,
                    s: se,
                    q: qe,
                },
                c,
            );
        }
        Polynomial { terms }
    }

    pub fn var(v: Var) -> Polynomial {
        match v {
            Var::X => Polynomial::monomial(BigInt::one(), 1, 0, 0),
            Var::S => Polynomial::monomial(BigInt::one(), 0, 1, 0),
            Var::Q => Polynomial::monomial(BigInt::one(), 0, 0, 1),
        }
    }

    pub fn x_pow(e: i64) -> Polynomial {
        Polynomial::monomial(BigInt::one(), e, 0, 0)
    }

    pub fn s_pow(e: i64) -> Polynomial {
        Polynomial::monomial(BigInt::one(), 0, e, 0)
    }

    /// `q^e`; `e` may be negative.
    pub fn q_pow(e: i64) -> Polynomial {
        Polynomial::monomial(BigInt::one(), 0, 0, e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Greatest monomial under the term order, if any.
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_negative_q_exp(&self) -> bool {
        self.terms.keys().any(|m| m.q < 0)
    }

    pub fn min_q_exp(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.q).min()
    }

    fn insert_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiply every term by q^d.
    fn shift_q(&self, d: i64) -> Polynomial {
        if d == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    Monomial {
                        x: m.x,
                        s: m.s,
                        q: m.q + d,
                    },
                    c.clone(),
                )
            })
            .collect();
        Polynomial { terms }
    }

    pub fn pow(&self, e: u64) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / b` in the Laurent-in-q ring.
    ///
    /// Returns `NotDivisible` when no exact quotient with integer
    /// coefficients exists and `DivisionByZero` when `b` is zero. The result
    /// is verified by re-multiplication before it is returned.
    pub fn divide_exact(&self, b: &Polynomial) -> Result<Polynomial> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        // q is a unit: normalize both operands to minimum q exponent 0 so the
        // greedy loop below runs over N^3 and must terminate.
        let qa = self.min_q_exp().unwrap();
        let qb = b.min_q_exp().unwrap();
        let a_norm = self.shift_q(-qa);
        let b_norm = b.shift_q(-qb);
        let lead_b = b_norm.leading_monomial().unwrap();
        let lead_b_coef = &b_norm.terms[&lead_b];

        let mut rem = a_norm;
        let mut quot = Polynomial::zero();
        while !rem.is_zero() {
            let lead_r = rem.leading_monomial().unwrap();
            let dx = lead_r.x - lead_b.x;
            let ds = lead_r.s - lead_b.s;
            let dq = lead_r.q - lead_b.q;
            if dx < 0 || ds < 0 || dq < 0 {
                return Err(Error::NotDivisible(format!("{} / {}", self, b)));
            }
            let lead_r_coef = &rem.terms[&lead_r];
            let (c, r) = num_integer_div_rem(lead_r_coef, lead_b_coef);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("{} / {}", self, b)));
            }
            let t = Polynomial::monomial(c, dx, ds, dq);
            rem = &rem - &(&t * &b_norm);
            quot = &quot + &t;
        }
        let quot = quot.shift_q(qa - qb);
        assert_eq!(
            &(b * &quot),
            self,
            "exact division failed re-multiplication"
        );
        Ok(quot)
    }

    /// Substitute `val` for `var`.
    ///
    /// When `var` is q and `self` contains negative q exponents, `val` must
    /// be a unit monomial (single term, coefficient +-1, pure q power), else
    /// `NonInvertibleSubstitution` is returned.
    pub fn substitute(&self, var: Var, val: &Polynomial) -> Result<Polynomial> {
        let inverse = if var == Var::Q && self.has_negative_q_exp() {
            Some(val.unit_inverse().ok_or(Error::NonInvertibleSubstitution)?)
        } else {
            None
        };
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (e, rest) = match var {
                Var::X => (
                    m.x,
                    Monomial {
                        x: 0,
                        s: m.s,
                        q: m.q,
                    },
                ),
                Var::S => (
                    m.s,
                    Monomial {
                        x: m.x,
                        s: 0,
                        q: m.q,
                    },
                ),
                Var::Q => (
                    m.q,
                    Monomial {
                        x: m.x,
                        s: m.s,
                        q: 0,
                    },
                ),
            };
            let factor = if e >= 0 {
                val.pow(e as u64)
            } else {
                inverse.as_ref().unwrap().pow((-e) as u64)
            };
            let term = &Polynomial {
                terms: BTreeMap::from([(rest, c.clone())]),
            } * &factor;
            out = &out + &term;
        }
        Ok(out)
    }

    /// Multiplicative inverse if `self` is a unit of the ring (`+-q^m`).
    fn unit_inverse(&self) -> Option<Polynomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if m.x != 0 || m.s != 0 || !c.abs().is_one() {
            return None;
        }
        Some(Polynomial::monomial(c.clone(), 0, 0, -m.q))
    }

    /// Exact value at integer points. Requires `q0 != 0` when negative q
    /// exponents are present.
    pub fn eval_int(&self, x0: i64, s0: i64, q0: i64) -> Result<BigRational> {
        if q0 == 0 && self.has_negative_q_exp() {
            return Err(Error::ZeroDenominator);
        }
        let (x0, s0, q0) = (BigInt::from(x0), BigInt::from(s0), BigInt::from(q0));
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut num = c * int_pow(&x0, m.x) * int_pow(&s0, m.s);
            let den = if m.q >= 0 {
                num *= int_pow(&q0, m.q);
                BigInt::one()
            } else {
                int_pow(&q0, -m.q)
            };
            acc += BigRational::new(num, den);
        }
        Ok(acc)
    }

    /// Deterministic canonical rendering.
    ///
    /// Terms are sorted by (x exponent, then s, then q) descending. Each
    /// term prints its coefficient magnitude (omitted when 1 and the
    /// monomial is nonempty) followed by the q, x and s powers, `*`-joined,
    /// omitting unit factors and exponent 1. The zero polynomial is `0`.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(mag.to_string());
            }
            for (name, e) in [("q", m.q), ("x", m.x), ("s", m.s)] {
                if e == 1 {
                    factors.push(name.to_string());
                } else if e != 0 {
                    factors.push(format!("{}^{}", name, e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parse the canonical text format. Intended for tests and tooling;
    /// accepts exactly the grammar emitted by [`to_canonical_string`] (with
    /// tolerant whitespace).
    pub fn parse_canonical(input: &str) -> Result<Polynomial> {
        parse::parse(input)
    }

    /// JSON term list `{"terms": [{"coef": "<decimal>", "q": e, "s": b, "x": a}, ...]}`
    /// in canonical descending order.
    pub fn to_json_terms(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                serde_json::json!({
                    "coef": c.to_string(),
                    "q": m.q,
                    "s": m.s,
                    "x": m.x,
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

fn int_pow(base: &BigInt, e: i64) -> BigInt {
    debug_assert!(e >= 0);
    base.pow(u32::try_from(e).expect("exponent fits in u32"))
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Polynomial {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Polynomial {
        Polynomial::int(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        Polynomial { terms }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_canonical_string())
    }
}

mod parse {
    use super::{Monomial, Polynomial};
    use crate::error::{Error, Result};
    use num_bigint::BigInt;
    use num_traits::One;

    struct Lexer<'a> {
        bytes: &'a [u8],
        pos: usize,
    }

    impl<'a> Lexer<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.bytes.get(self.pos).copied()
        }

        fn bump(&mut self) -> Option<u8> {
            let b = self.peek();
            if b.is_some() {
                self.pos += 1;
            }
            b
        }

        fn integer(&mut self) -> Result<BigInt> {
            self.skip_ws();
            let start = self.pos;
            if self.bytes.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            let digits_start = self.pos;
            while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == digits_start {
                return Err(Error::Parse(format!("expected integer at byte {}", start)));
            }
            let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
            text.parse::<BigInt>()
                .map_err(|e| Error::Parse(e.to_string()))
        }
    }

    pub fn parse(input: &str) -> Result<Polynomial> {
        let mut lx = Lexer {
            bytes: input.as_bytes(),
            pos: 0,
        };
        let mut out = Polynomial::zero();
        let mut negative = match lx.peek() {
            Some(b'-') => {
                lx.bump();
                true
            }
            Some(_) => false,
            None => return Err(Error::Parse("empty input".into())),
        };
        loop {
            let term = term(&mut lx, negative)?;
            out = &out + &term;
            match lx.peek() {
                None => break,
                Some(b'+') => {
                    lx.bump();
                    negative = false;
                }
                Some(b'-') => {
                    lx.bump();
                    negative = true;
                }
                Some(b) => {
                    return Err(Error::Parse(format!(
                        "unexpected byte '{}' at {}",
                        b as char, lx.pos
                    )))
                }
            }
        }
        Ok(out)
    }

    fn term(lx: &mut Lexer, negative: bool) -> Result<Polynomial> {
        let mut coef = BigInt::one();
        let mut mono = Monomial::ONE;
        let mut first = true;
        loop {
            match lx.peek() {
                Some(b) if b.is_ascii_digit() => {
                    coef *= lx.integer()?;
                }
                Some(b'q') | Some(b'x') | Some(b's') => {
                    let name = lx.bump().unwrap();
                    let e = if lx.peek() == Some(b'^') {
                        lx.bump();
                        let e = lx.integer()?;
                        i64::try_from(&e).map_err(|_| Error::Parse("exponent too large".into()))?
                    } else {
                        1
                    };
                    match name {
                        b'q' => mono.q += e,
                        b'x' => mono.x += e,
                        b's' => mono.s += e,
                        _ => unreachable!(),
                    }
                    if mono.x < 0 || mono.s < 0 {
                        return Err(Error::Parse("negative x or s exponent".into()));
                    }
                }
                _ if first => return Err(Error::Parse(format!("expected term at {}", lx.pos))),
                _ => break,
            }
            first = false;
            if lx.peek() == Some(b'*') {
                lx.bump();
            } else {
                break;
            }
        }
        if negative {
            coef = -coef;
        }
        Ok(Polynomial::monomial(coef, mono.x, mono.s, mono.q))
    }
}
