//! The coefficient field: rational functions in the formal parameter `q`
//! with rational coefficients, kept in canonical form.
//!
//! A [`Scalar`] is `num(q) / den(q)` with `den` monic and
//! `gcd(num, den) = 1`; zero is `0/1`. Because the representation is
//! canonical, structural equality is mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `q` with rational coefficients, lowest
/// degree first, never carrying trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `q`.
    pub fn q() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let v = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(v);
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Integer coefficients `k·self` with `k > 0` chosen so the coefficients
    /// are coprime integers, returned together with `k`.
    fn integer_form(&self) -> (Vec<BigInt>, BigRational) {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let content = if content.is_zero() { BigInt::one() } else { content };
        let ints = ints.into_iter().map(|c| c / &content).collect();
        (ints, BigRational::new(lcm, content))
    }
}

/// An element of ℚ(q) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: UPoly,
    den: UPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    /// The formal parameter `q`.
    pub fn q() -> Self {
        Scalar {
            num: UPoly::q(),
            den: UPoly::one(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar {
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        Scalar {
            num: p,
            den: UPoly::one(),
        }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_parts(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.coeffs[0].recip();
            return Scalar {
                num: num.scale(&inv),
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc_inv = den.leading().expect("nonzero denominator").recip();
        Scalar {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `q`.
    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.num.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Scalar {
        Self::normalized(self.den.clone(), self.num.clone())
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip_unchecked())
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `q = q0`.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Sign used when printing: the sign of the leading numerator coefficient.
    pub fn is_negative(&self) -> bool {
        self.num.leading().is_some_and(|c| c.is_negative())
    }

    /// Integer-coefficient numerator and denominator strings, coprime content.
    pub fn display_parts(&self) -> (String, String) {
        let (n, kn) = self.num.integer_form();
        let (d, kd) = self.den.integer_form();
        // num/den = (n/kn)/(d/kd) = (n·kd)/(d·kn); rescale to coprime integers
        let ratio = kd / kn;
        let (rn, rd) = (ratio.numer().clone(), ratio.denom().clone());
        let n: Vec<BigInt> = n.into_iter().map(|c| c * &rn).collect();
        let d: Vec<BigInt> = d.into_iter().map(|c| c * &rd).collect();
        let g = n
            .iter()
            .chain(d.iter())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let g = if g.is_zero() { BigInt::one() } else { g };
        let n: Vec<BigInt> = n.into_iter().map(|c| c / &g).collect();
        let d: Vec<BigInt> = d.into_iter().map(|c| c / &g).collect();
        (int_poly_string(&n), int_poly_string(&d))
    }
}

fn int_poly_string(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn is_single_term(s: &str) -> bool {
    !s[1..].contains(['+', '-'])
}

fn is_atom(s: &str) -> bool {
    s == "q" || s.chars().all(|c| c.is_ascii_digit())
}

impl fmt::Display for Scalar {
    /// Renders as `n` or `n/d` with integer-coefficient polynomials in `q`,
    /// e.g. `q/2`, `(q^2+1)/2`, `1/(q-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.display_parts();
        if d == "1" {
            return f.write_str(&n);
        }
        let n = if is_single_term(&n) { n } else { format!("({n})") };
        let d = if is_atom(&d) { d } else { format!("({d})") };
        write!(f, "{n}/{d}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar {
    /// Text used as a term coefficient: atoms (`2`, `q`) bare, anything
    /// composite in parentheses.
    pub fn coefficient_text(&self) -> String {
        let s = self.to_string();
        if is_atom(&s) {
            s
        } else {
            format!("({s})")
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::from_rational(c)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only to sort for deterministic output.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |p: &UPoly| p.coeffs.clone();
        key(&self.den)
            .cmp(&key(&other.den))
            .then_with(|| key(&self.num).cmp(&key(&other.num)))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar {
                    num: self.num.add(&rhs.num),
                    den: UPoly::one(),
                };
            }
            return Scalar::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Scalar::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: self.num.mul(&rhs.num),
                den: UPoly::one(),
            };
        }
        Scalar::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        ScalarParser::new(s).parse_all()
    }
}

/// Recursive-descent parser for scalar expressions over `q`:
/// integers, `q`, `+ - * / ^`, unary minus and parentheses.
pub(crate) struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ScalarParser<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        ScalarParser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in scalar `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn parse_all(mut self) -> Result<Scalar> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            _ => Err(self.err("expected number, `q` or `(`")),
        }
    }
}
