//! The polynomial side of the spectrum: field specification, polynomial
//! arithmetic over `Q` or `GF(p)`, irreducibility testing, and enumeration of
//! the nonzero primes of `K[x,x^-1]`.
//!
//! A nonzero prime of `K[x,x^-1]` has a unique monic irreducible generator
//! with nonzero constant term (the units are `k x^n`), which is the canonical
//! representative used for I/O and equality.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// The coefficient field `K`: the rationals or a prime field `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Parses `q` or `gf:P`.
    pub fn parse(s: &str) -> Result<FieldSpec> {
        match s {
            "q" | "Q" => Ok(FieldSpec::Rationals),
            _ => match s.strip_prefix("gf:") {
                Some(p) => {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Precondition(format!("bad field spec `{s}`")))?;
                    FieldSpec::prime_field(p)
                }
                None => Err(Error::Precondition(format!(
                    "bad field spec `{s}` (expected `q` or `gf:P`)"
                ))),
            },
        }
    }

    fn reduce(&self, c: Rational64) -> Rational64 {
        match self {
            FieldSpec::Rationals => c,
            FieldSpec::PrimeField(p) => {
                let p = *p as i64;
                // GF(p) elements are stored as integers 0..p-1; a fraction
                // here means a modular inverse of the denominator.
                let num = c.numer().rem_euclid(p);
                let den = c.denom().rem_euclid(p);
                Rational64::from_integer(num * mod_inverse(den, p) % p)
            }
        }
    }

    fn inv(&self, c: Rational64) -> Rational64 {
        match self {
            FieldSpec::Rationals => Rational64::one() / c,
            FieldSpec::PrimeField(p) => {
                Rational64::from_integer(mod_inverse(c.numer().rem_euclid(*p as i64), *p as i64))
            }
        }
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // Fermat: a^(p-2) mod p.
    assert!(a % p != 0, "zero has no inverse");
    let mut result: i64 = 1;
    let mut base = a.rem_euclid(p);
    let mut exp = (p - 2) as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    result
}

fn mulmod(a: i64, b: i64, p: i64) -> i64 {
    ((a as i128 * b as i128) % p as i128) as i64
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// A polynomial in `K[x]`, constant term first, with no trailing zero
/// coefficients. The zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Rational64>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(field: &FieldSpec, coeffs: Vec<Rational64>) -> Poly {
        let mut coeffs: Vec<Rational64> = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(
            field,
            coeffs.iter().map(|&c| Rational64::from_integer(c)).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> Rational64 {
        self.coeffs.first().copied().unwrap_or_else(Rational64::zero)
    }

    pub fn leading_coeff(&self) -> Rational64 {
        self.coeffs.last().copied().unwrap_or_else(Rational64::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn add(&self, field: &FieldSpec, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or_else(Rational64::zero)
                    + other.coeffs.get(i).copied().unwrap_or_else(Rational64::zero)
            })
            .collect();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn mul(&self, field: &FieldSpec, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.reduce(coeffs[i + j] + field.reduce(*a * *b));
            }
        }
        Poly::from_coeffs(field, coeffs)
    }

    pub fn scale(&self, field: &FieldSpec, k: Rational64) -> Poly {
        Poly::from_coeffs(field, self.coeffs.iter().map(|c| *c * k).collect())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, field: &FieldSpec, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d = divisor.degree().unwrap();
        let lead_inv = field.inv(divisor.leading_coeff());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational64::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = field.reduce(*rem.last().unwrap() * lead_inv);
            let shift = rem.len() - 1 - d;
            quot[shift] = k;
            for i in 0..=d {
                rem[shift + i] = field.reduce(rem[shift + i] - k * divisor.coeffs[i]);
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(field, quot), Poly::from_coeffs(field, rem))
    }

    pub fn eval(&self, field: &FieldSpec, x: Rational64) -> Rational64 {
        let mut acc = Rational64::zero();
        for c in self.coeffs.iter().rev() {
            acc = field.reduce(acc * x + *c);
        }
        acc
    }
}

/// Divide-out to a monic polynomial (the normal form modulo units of `K[x]`).
pub fn monic(field: &FieldSpec, f: &Poly) -> Poly {
    if f.is_zero() || f.is_monic() {
        return f.clone();
    }
    f.scale(field, field.inv(f.leading_coeff()))
}

/// Irreducibility over the given field.
///
/// Over `GF(p)` this is exhaustive trial division by the monic polynomials of
/// degree at most `deg f / 2`. Over `Q`, degree 1 is always irreducible and
/// degrees 2-3 reduce to the rational root theorem; higher degrees are
/// refused as undecided.
pub fn is_irreducible(f: &Poly, field: &FieldSpec) -> Result<bool> {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::Precondition(
                "irreducibility needs degree at least 1".into(),
            ))
        }
    };
    match field {
        FieldSpec::PrimeField(p) => {
            for d in 1..=deg / 2 {
                for divisor in monic_polys(*p, d) {
                    let (_, r) = f.divrem(field, &divisor);
                    if r.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        FieldSpec::Rationals => match deg {
            1 => Ok(true),
            2 | 3 => Ok(!has_rational_root(f)),
            d => Err(Error::IrreducibilityUndecided(d)),
        },
    }
}

/// Monic polynomials of exactly the given degree over `GF(p)`, in ascending
/// lexicographic order of the coefficient vector read from the top degree
/// down.
fn monic_polys(p: u64, degree: usize) -> impl Iterator<Item = Poly> {
    let field = FieldSpec::PrimeField(p);
    let total = (p as u128).pow(degree as u32);
    (0..total).map(move |counter| {
        let mut coeffs = vec![Rational64::zero(); degree + 1];
        coeffs[degree] = Rational64::one();
        let mut c = counter;
        for coeff in coeffs.iter_mut().take(degree) {
            *coeff = Rational64::from_integer((c % p as u128) as i64);
            c /= p as u128;
        }
        Poly::from_coeffs(&field, coeffs)
    })
}

fn has_rational_root(f: &Poly) -> bool {
    // Clear denominators to a primitive integer polynomial first.
    let lcm = f
        .coeffs
        .iter()
        .fold(1i64, |acc, c| num_integer::lcm(acc, *c.denom()));
    let ints: Vec<i64> = f.coeffs.iter().map(|c| (*c * lcm).to_integer()).collect();
    let a0 = ints[0];
    let an = *ints.last().unwrap();
    if a0 == 0 {
        return true; // root 0
    }
    let field = FieldSpec::Rationals;
    for p in divisors(a0.unsigned_abs()) {
        for q in divisors(an.unsigned_abs()) {
            for sign in [1i64, -1] {
                let candidate = Rational64::new(sign * p as i64, q as i64);
                if f.eval(&field, candidate).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
}

/// Canonical generator of a nonzero prime of `K[x,x^-1]`: monic, irreducible,
/// degree at least 1, nonzero constant term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPrime {
    generator: Poly,
}

impl LaurentPrime {
    /// Normalizes `f` to its monic form and validates the invariants. With
    /// `assert_irreducible` the caller vouches for irreducibility where the
    /// library cannot decide it (degree > 3 over `Q`).
    pub fn new(field: &FieldSpec, f: &Poly, assert_irreducible: bool) -> Result<LaurentPrime> {
        let f = monic(field, f);
        match f.degree() {
            Some(d) if d >= 1 => {}
            _ => {
                return Err(Error::BadPolynomial(
                    "a Laurent prime generator has degree at least 1".into(),
                ))
            }
        }
        if f.constant_term().is_zero() {
            return Err(Error::BadPolynomial(
                "constant term is zero, so the generator is divisible by the unit x".into(),
            ));
        }
        let irreducible = match is_irreducible(&f, field) {
            Ok(r) => r,
            Err(Error::IrreducibilityUndecided(_)) if assert_irreducible => true,
            Err(e) => return Err(e),
        };
        if !irreducible {
            return Err(Error::BadPolynomial(format!("{f} is reducible over {field}")));
        }
        Ok(LaurentPrime { generator: f })
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }
}

impl fmt::Display for LaurentPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator)
    }
}

/// All nonzero primes of `K[x,x^-1]` with generator degree up to
/// `max_degree`, ordered by degree then lexicographically by coefficients
/// from the top degree down. Only finite fields are enumerable.
pub fn enumerate_laurent_primes(field: &FieldSpec, max_degree: usize) -> Result<Vec<LaurentPrime>> {
    let p = match field {
        FieldSpec::PrimeField(p) => *p,
        FieldSpec::Rationals => return Err(Error::NotEnumerable),
    };
    let mut primes = Vec::new();
    for degree in 1..=max_degree {
        for f in monic_polys(p, degree) {
            if !f.constant_term().is_zero() && is_irreducible(&f, field)? {
                primes.push(LaurentPrime { generator: f });
            }
        }
    }
    Ok(primes)
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, magnitude) = if c.is_negative() {
                ("-", -*c)
            } else {
                ("+", *c)
            };
            if first {
                if sign == "-" {
                    write!(out, "-")?;
                }
                first = false;
            } else {
                write!(out, "{sign}")?;
            }
            let unit_coeff = magnitude.is_one();
            if power == 0 || !unit_coeff {
                write!(out, "{magnitude}")?;
            }
            match power {
                0 => {}
                1 => write!(out, "x")?,
                _ => write!(out, "x^{power}")?,
            }
        }
        Ok(())
    }
}

/// Parses the polynomial syntax `x^3+x+1`, `2x^2-1/2x+3`, with coefficients
/// as integers or fractions (fractions only over `Q`).
pub fn parse_poly(input: &str, field: &FieldSpec) -> Result<Poly> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::BadPolynomial("empty input".into()));
    }
    let mut coeffs: Vec<Rational64> = Vec::new();
    let mut pos = 0;
    let mut sign = 1i64;
    if s[pos] == '-' {
        sign = -1;
        pos += 1;
    } else if s[pos] == '+' {
        pos += 1;
    }
    loop {
        let (coeff, power, next) = parse_term(&s, pos, field, input)?;
        pos = next;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational64::zero());
        }
        coeffs[power] += coeff * sign;
        if pos == s.len() {
            break;
        }
        sign = match s[pos] {
            '+' => 1,
            '-' => -1,
            c => {
                return Err(Error::BadPolynomial(format!(
                    "unexpected `{c}` in `{input}`"
                )))
            }
        };
        pos += 1;
    }
    Ok(Poly::from_coeffs(field, coeffs))
}

fn parse_term(
    s: &[char],
    mut pos: usize,
    field: &FieldSpec,
    input: &str,
) -> Result<(Rational64, usize, usize)> {
    let bad = || Error::BadPolynomial(format!("could not parse `{input}`"));
    let mut coeff = Rational64::one();
    let mut saw_number = false;
    if pos < s.len() && s[pos].is_ascii_digit() {
        let (n, next) = parse_uint(s, pos).ok_or_else(bad)?;
        pos = next;
        saw_number = true;
        coeff = Rational64::from_integer(n);
        if pos < s.len() && s[pos] == '/' {
            if *field != FieldSpec::Rationals {
                return Err(Error::BadPolynomial(format!(
                    "fractional coefficients are only valid over Q in `{input}`"
                )));
            }
            let (d, next) = parse_uint(s, pos + 1).ok_or_else(bad)?;
            if d == 0 {
                return Err(Error::BadPolynomial("zero denominator".into()));
            }
            pos = next;
            coeff = Rational64::new(*coeff.numer(), d);
        }
    }
    if pos < s.len() && s[pos] == '*' {
        pos += 1;
    }
    if pos < s.len() && s[pos] == 'x' {
        pos += 1;
        let power = if pos < s.len() && s[pos] == '^' {
            let (e, next) = parse_uint(s, pos + 1).ok_or_else(bad)?;
            pos = next;
            e as usize
        } else {
            1
        };
        Ok((coeff, power, pos))
    } else if saw_number {
        Ok((coeff, 0, pos))
    } else {
        Err(bad())
    }
}

fn parse_uint(s: &[char], pos: usize) -> Option<(i64, usize)> {
    let mut end = pos;
    while end < s.len() && s[end].is_ascii_digit() {
        end += 1;
    }
    if end == pos {
        return None;
    }
    let text: String = s[pos..end].iter().collect();
    text.parse().ok().map(|n| (n, end))
}
