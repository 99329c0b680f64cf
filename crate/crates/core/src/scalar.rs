//! Exact coefficient ring: Gaussian rationals and polynomials in `σ₊`, `σ₋`.
//!
//! Every coefficient in the library is a [`Scalar`], a finitely supported map
//! from exponent pairs `(ep, em)` to [`GaussianRational`] coefficients. Zero
//! coefficients are never stored, so structural equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::Cursor;

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::real(BigRational::new(p.into(), q.into()))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: GaussianRational) -> GaussianRational {
        &self + &o
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: GaussianRational) -> GaussianRational {
        &self * &o
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        self.clone().neg()
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the underlying rationals.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse { pos: 0, msg: format!("`{s}` is not a rational number") };
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| err())?,
        };
        let frac_part: BigInt = frac.parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let p: BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(p))
}

impl fmt::Display for GaussianRational {
    /// `p/q`, `p/q i`, or `(a + b i)` for genuinely complex values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, body) = coef_body(self, false);
        if neg {
            write!(f, "-")?;
        }
        write!(f, "{body}")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn imag_body(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else {
        format!("{} i", fmt_rational(im))
    }
}

/// Splits a coefficient into a sign and a body. With `elide_one`, a unit
/// magnitude renders as the empty string (used in front of a monomial).
fn coef_body(c: &GaussianRational, elide_one: bool) -> (bool, String) {
    if c.im.is_zero() {
        let mag = c.re.abs();
        let body = if elide_one && mag.is_one() { String::new() } else { fmt_rational(&mag) };
        (c.re.is_negative(), body)
    } else if c.re.is_zero() {
        (c.im.is_negative(), imag_body(&c.im.abs()))
    } else {
        let sign = if c.im.is_negative() { '-' } else { '+' };
        (false, format!("({} {} {})", fmt_rational(&c.re), sign, imag_body(&c.im.abs())))
    }
}

/// Exponent pair of `σ₊^ep σ₋^em`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    pub ep: u32,
    pub em: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ep: 0, em: 0 };

    pub fn new(ep: u32, em: u32) -> Self {
        Monomial { ep, em }
    }

    pub fn degree(&self) -> u32 {
        self.ep + self.em
    }

    fn mul(self, o: Monomial) -> Monomial {
        Monomial { ep: self.ep + o.ep, em: self.em + o.em }
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        for (sym, e) in [("s+", self.ep), ("s-", self.em)] {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                e => parts.push(format!("{sym}^{e}")),
            }
        }
        parts.join(" ")
    }
}

/// Polynomial in `σ₊`, `σ₋` with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Scalar {
    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::constant(r.into())
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::constant(GaussianRational::ratio(p, q))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn monomial(c: GaussianRational, ep: u32, em: u32) -> Self {
        let mut s = Scalar::zero();
        s.add_term(Monomial::new(ep, em), c);
        s
    }

    /// `σ₊ = ½(1 + σ⁻²)`
    pub fn sigma_plus() -> Self {
        Self::monomial(GaussianRational::one(), 1, 0)
    }

    /// `σ₋ = ½(1 − σ⁻²)`
    pub fn sigma_minus() -> Self {
        Self::monomial(GaussianRational::one(), 0, 1)
    }

    /// Rewrites `σ₋^p τ^d` with `τ = σ₊/σ₋` as the monomial `σ₊^d σ₋^(p−d)`.
    ///
    /// Panics if `d > p`: the result would not be a polynomial.
    pub fn sigma_minus_tau(c: GaussianRational, p: u32, d: u32) -> Self {
        assert!(d <= p, "polynomiality guard: tau^{d} against sigma_-^{p}");
        Self::monomial(c, d, p - d)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, ep: u32, em: u32) -> GaussianRational {
        self.terms.get(&Monomial::new(ep, em)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Adds `c · σ₊^ep σ₋^em`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// The value when the polynomial has degree zero.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn scale(&self, c: &GaussianRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes exact values for `σ₊` and `σ₋`.
    pub fn evaluate(&self, sigma_plus: &GaussianRational, sigma_minus: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let v = &(c * &sigma_plus.pow(m.ep)) * &sigma_minus.pow(m.em);
            acc = &acc + &v;
        }
        acc
    }

    /// Substitutes exact values, keeping the result as a constant [`Scalar`].
    pub fn substitute(&self, sigma_plus: &GaussianRational, sigma_minus: &GaussianRational) -> Scalar {
        Scalar::constant(self.evaluate(sigma_plus, sigma_minus))
    }

    /// Exchanges `σ₊` and `σ₋`.
    pub fn swap_sigmas(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (Monomial::new(m.em, m.ep), c.clone())).collect(),
        }
    }

    /// Monomials in display order: total degree descending, then `σ₊`
    /// exponent descending.
    pub fn ordered_terms(&self) -> Vec<(Monomial, GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then(b.ep.cmp(&a.ep)));
        v
    }

    /// Whether the rendering needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }

    pub fn to_json(&self) -> Vec<ScalarTermJson> {
        self.ordered_terms()
            .into_iter()
            .map(|(m, c)| ScalarTermJson { ep: m.ep, em: m.em, re: fmt_rational(&c.re), im: fmt_rational(&c.im) })
            .collect()
    }

    pub fn from_json(terms: &[ScalarTermJson]) -> Result<Scalar> {
        let mut s = Scalar::zero();
        for t in terms {
            s.add_term(Monomial::new(t.ep, t.em), t.coefficient()?);
        }
        Ok(s)
    }
}

/// One monomial of a [`Scalar`] in JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTermJson {
    pub ep: u32,
    pub em: u32,
    pub re: String,
    pub im: String,
}

impl ScalarTermJson {
    pub fn coefficient(&self) -> Result<GaussianRational> {
        Ok(GaussianRational::new(parse_rational(&self.re)?, parse_rational(&self.im)?))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Scalar::constant(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for (m, c) in &o.terms {
            self.add_term(*m, -c);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, o: Scalar) -> Scalar {
        self += &o;
        self
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, o: Scalar) -> Scalar {
        self -= &o;
        self
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.clone().neg()
    }
}

impl fmt::Display for Scalar {
    /// Renders e.g. `-2 s+ s-`, `(1/2 + 1/3 i) s+^2 - s-`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.ordered_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let mono = m.render();
            let (neg, body) = coef_body(c, !mono.is_empty());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (body.is_empty(), mono.is_empty()) {
                (true, _) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{body}")?,
                (false, false) => write!(f, "{body} {mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        let mut cur = Cursor::new(s);
        let v = cur.scalar_expr()?;
        cur.expect_end()?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_form_drops_cancelled_terms() {
        let a = Scalar::sigma_plus() + Scalar::from_int(3);
        let b = a.clone() - Scalar::sigma_plus();
        assert_eq!(b, Scalar::from_int(3));
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn rationals_are_normalized() {
        let c = GaussianRational::ratio(2, -4);
        assert_eq!(c, GaussianRational::ratio(-1, 2));
        assert_eq!(c.to_string(), "-1/2");
    }

    #[test]
    fn display_orders_graded_lex() {
        let x = Scalar::sigma_minus() + Scalar::sigma_plus().pow(2) + Scalar::from_int(-2);
        assert_eq!(x.to_string(), "s+^2 + s- - 2");
        let y = (Scalar::sigma_plus() * Scalar::sigma_minus()).scale(&GaussianRational::from_int(-2));
        assert_eq!(y.to_string(), "-2 s+ s-");
        assert_eq!(Scalar::i().scale(&GaussianRational::from_int(-1)).to_string(), "-i");
        let z = Scalar::monomial(GaussianRational::new(BigRational::new(1.into(), 2.into()), BigRational::one()), 2, 0);
        assert_eq!(z.to_string(), "(1/2 + i) s+^2");
    }

    #[test]
    fn parse_round_trips_rendering() {
        for text in ["0", "-2 s+ s-", "(1/2 + i) s+^2 - s-", "1/2 i", "s+^3 s-^2 + 7/3", "-i s+"] {
            assert_eq!(s(text).to_string(), text);
        }
        assert_eq!(s("(s+ - s-) * (s+ + s-)"), s("s+^2 - s-^2"));
        assert_eq!(s("2*i*i"), Scalar::from_int(-2));
    }

    #[test]
    fn evaluate_at_classical_point() {
        let half = GaussianRational::ratio(1, 2);
        let w = s("-2 s+ s-");
        assert_eq!(w.evaluate(&half, &half), GaussianRational::ratio(-1, 2));
    }

    #[test]
    fn tau_rewrite_guard() {
        assert_eq!(Scalar::sigma_minus_tau(GaussianRational::one(), 3, 1), s("s+ s-^2"));
    }

    #[test]
    #[should_panic(expected = "polynomiality guard")]
    fn tau_rewrite_rejects_negative_power() {
        let _ = Scalar::sigma_minus_tau(GaussianRational::one(), 1, 2);
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-1.25").unwrap(), BigRational::new((-5).into(), 4.into()));
        assert_eq!(parse_rational("10").unwrap(), BigRational::from_integer(10.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = s("(1/2 - 3 i) s+^2 s- + 4");
        let j = x.to_json();
        assert_eq!(j[0], ScalarTermJson { ep: 2, em: 1, re: "1/2".into(), im: "-3".into() });
        assert_eq!(Scalar::from_json(&j).unwrap(), x);
    }
}
