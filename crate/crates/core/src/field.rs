//! Exact field arithmetic: rationals, cyclotomic extensions and finite
//! fields, plus the q-integer utilities that every rank computation rests on.
//!
//! Scalars are kept in canonical normal form at all times (reduced
//! fractions; polynomials reduced modulo the cyclotomic polynomial `Phi_N`
//! or the Conway polynomial), so equality of scalars is structural
//! equality. No floating point appears anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::CoreError;

/// Which field an algebra lives over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// The rational numbers.
    Rationals,
    /// `Q(zeta_N)` for a primitive N-th root of unity.
    Cyclotomic(u32),
    /// `GF(p^k)` with the Conway polynomial as modulus.
    Finite { p: u64, k: u32 },
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals | FieldDescriptor::Cyclotomic(_) => 0,
            FieldDescriptor::Finite { p, .. } => *p,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Cyclotomic(n) => write!(f, "Q(zeta{n})"),
            FieldDescriptor::Finite { p, k } => write!(f, "GF({})", p.pow(*k)),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, CoreError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(inner) = s.strip_prefix("Q(zeta").and_then(|r| r.strip_suffix(')')) {
            let n: u32 = inner
                .parse()
                .map_err(|_| CoreError::Parse(format!("bad cyclotomic index in {s:?}")))?;
            if n == 0 {
                return Err(CoreError::Parse("cyclotomic index must be >= 1".into()));
            }
            return Ok(FieldDescriptor::Cyclotomic(n));
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let q: u64 = inner
                .parse()
                .map_err(|_| CoreError::Parse(format!("bad finite field order in {s:?}")))?;
            let (p, k) = factor_prime_power(q)
                .ok_or_else(|| CoreError::Parse(format!("{q} is not a prime power")))?;
            return Ok(FieldDescriptor::Finite { p, k });
        }
        Err(CoreError::Parse(format!("unknown field descriptor {s:?}")))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// An exact field element. The variant must match the owning [`Field`];
/// all arithmetic goes through the `Field` so that reduction data
/// (cyclotomic / Conway modulus) is available.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// Coefficients of `1, zeta, zeta^2, ...` with exactly `deg Phi_N` slots.
    Cyclotomic(Vec<BigRational>),
    /// Coefficients of `1, g, g^2, ...` mod p with exactly `k` slots.
    Finite(Vec<u64>),
}

/// Order of a scalar-derived quantity that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Order {
    Finite(u64),
    /// No finite value found; `exact` is false when this merely means the
    /// search bound was exhausted.
    Infinite { exact: bool },
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite { .. } => None,
        }
    }
}

const QUANTUM_ORDER_BOUND: u64 = 10_000;
const MAX_FINITE_FIELD_ORDER: u64 = 1 << 20;

/// A field of one of the supported kinds, carrying the modulus data the
/// scalar arithmetic needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    desc: FieldDescriptor,
    /// Monic modulus of the extension: `Phi_N` as integer coefficients for
    /// cyclotomics, the Conway polynomial mod p for finite fields, empty
    /// for the rationals. Ascending coefficients, including the leading 1.
    modulus: Vec<i64>,
    /// Degree of the extension (0 slots for the rationals).
    ext_degree: usize,
}

impl Field {
    /// Build the field object described by `desc`.
    pub fn new(desc: FieldDescriptor) -> Result<Field, CoreError> {
        match desc {
            FieldDescriptor::Rationals => Ok(Field {
                desc,
                modulus: Vec::new(),
                ext_degree: 0,
            }),
            FieldDescriptor::Cyclotomic(n) => {
                if n == 0 {
                    return Err(CoreError::Parse("cyclotomic index must be >= 1".into()));
                }
                let phi = cyclotomic_polynomial(n);
                let ext_degree = phi.len() - 1;
                Ok(Field {
                    desc,
                    modulus: phi,
                    ext_degree,
                })
            }
            FieldDescriptor::Finite { p, k } => {
                if !is_prime(p) {
                    return Err(CoreError::Parse(format!("{p} is not prime")));
                }
                if k == 0 {
                    return Err(CoreError::Parse("extension degree must be >= 1".into()));
                }
                let order = p.checked_pow(k).filter(|&q| q <= MAX_FINITE_FIELD_ORDER);
                if order.is_none() {
                    return Err(CoreError::Parse(format!(
                        "finite field GF({p}^{k}) exceeds the supported size"
                    )));
                }
                let conway = conway_polynomial(p, k);
                Ok(Field {
                    desc,
                    modulus: conway.iter().map(|&c| c as i64).collect(),
                    ext_degree: k as usize,
                })
            }
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn characteristic(&self) -> u64 {
        self.desc.characteristic()
    }

    fn prime(&self) -> u64 {
        match self.desc {
            FieldDescriptor::Finite { p, .. } => p,
            _ => unreachable!("prime() on a characteristic-zero field"),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.desc {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::zero()),
            FieldDescriptor::Cyclotomic(_) => {
                Scalar::Cyclotomic(vec![BigRational::zero(); self.ext_degree])
            }
            FieldDescriptor::Finite { .. } => Scalar::Finite(vec![0; self.ext_degree]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.desc {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from(BigInt::from(v))),
            FieldDescriptor::Cyclotomic(_) => {
                let mut c = vec![BigRational::zero(); self.ext_degree];
                c[0] = BigRational::from(BigInt::from(v));
                Scalar::Cyclotomic(c)
            }
            FieldDescriptor::Finite { p, .. } => {
                let mut c = vec![0u64; self.ext_degree];
                c[0] = v.rem_euclid(p as i64) as u64;
                Scalar::Finite(c)
            }
        }
    }

    /// The extension generator: `zeta_N` or the Conway generator. Errors on
    /// the rationals (no generator) unless N = 1 or 2 where the root of
    /// unity is rational anyway.
    pub fn generator(&self) -> Option<Scalar> {
        match self.desc {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Cyclotomic(n) => {
                if self.ext_degree == 1 {
                    // Phi_1 = x - 1, Phi_2 = x + 1: the root is rational.
                    let root = if n == 1 { 1 } else { -1 };
                    Some(self.from_i64(root))
                } else {
                    let mut c = vec![BigRational::zero(); self.ext_degree];
                    c[1] = BigRational::one();
                    Some(Scalar::Cyclotomic(c))
                }
            }
            FieldDescriptor::Finite { .. } => {
                if self.ext_degree == 1 {
                    // Conway polynomial x - c: the generator is the residue c.
                    let c = (self.prime() as i64 - self.modulus[0]).rem_euclid(self.prime() as i64);
                    Some(Scalar::Finite(vec![c as u64]))
                } else {
                    let mut c = vec![0u64; self.ext_degree];
                    c[1] = 1;
                    Some(Scalar::Finite(c))
                }
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.iter().all(|x| x.is_zero()),
            Scalar::Finite(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => {
                Scalar::Cyclotomic(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            (Scalar::Finite(x), Scalar::Finite(y)) => {
                let p = self.prime();
                Scalar::Finite(x.iter().zip(y).map(|(&u, &v)| (u + v) % p).collect())
            }
            _ => panic!("scalar kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Cyclotomic(x) => Scalar::Cyclotomic(x.iter().map(|u| -u).collect()),
            Scalar::Finite(x) => {
                let p = self.prime();
                Scalar::Finite(x.iter().map(|&u| (p - u) % p).collect())
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => {
                Scalar::Cyclotomic(self.cyc_mul(x, y))
            }
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(self.fin_mul(x, y)),
            _ => panic!("scalar kind mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, CoreError> {
        if self.is_zero(a) {
            return Err(CoreError::DivisionByZero);
        }
        match a {
            Scalar::Rational(x) => Ok(Scalar::Rational(x.recip())),
            Scalar::Cyclotomic(x) => self.cyc_inv(x).map(Scalar::Cyclotomic),
            Scalar::Finite(x) => {
                // g has multiplicative order p^k - 1, so a^(p^k - 2) inverts a.
                let q = self.prime().pow(self.ext_degree as u32);
                Ok(self.pow(&Scalar::Finite(x.clone()), (q - 2) as u64))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, CoreError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn cyc_mul(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let d = self.ext_degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                prod[i + j] += xi * yj;
            }
        }
        // Reduce modulo the monic modulus.
        for i in (d..prod.len()).rev() {
            if prod[i].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut prod[i], BigRational::zero());
            for (j, &m) in self.modulus.iter().enumerate().take(d) {
                if m != 0 {
                    let delta = &lead * BigRational::from(BigInt::from(m));
                    prod[i - d + j] -= delta;
                }
            }
        }
        prod.truncate(d);
        prod
    }

    /// Inverse in `Q[x]/Phi_N` by the extended Euclidean algorithm.
    fn cyc_inv(&self, x: &[BigRational]) -> Result<Vec<BigRational>, CoreError> {
        let modulus: Vec<BigRational> = self
            .modulus
            .iter()
            .map(|&c| BigRational::from(BigInt::from(c)))
            .collect();
        let (g, _, t) = poly_ext_gcd(&modulus, x);
        // Phi_N is squarefree and x is nonzero of lower degree, so the gcd
        // is a nonzero constant.
        if g.len() != 1 || g[0].is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let scale = g[0].recip();
        let mut out = vec![BigRational::zero(); self.ext_degree];
        for (i, c) in t.iter().enumerate() {
            let v = c * &scale;
            if i < self.ext_degree {
                out[i] = v;
            } else if !v.is_zero() {
                unreachable!("ext gcd cofactor exceeds modulus degree");
            }
        }
        Ok(out)
    }

    fn fin_mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.prime();
        let d = self.ext_degree;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        for i in (d..prod.len()).rev() {
            let lead = prod[i];
            if lead == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(d) {
                let m = m as u64 % p;
                if m != 0 {
                    prod[i - d + j] = (prod[i - d + j] + (p - m % p) * lead) % p;
                }
            }
        }
        prod.truncate(d);
        prod
    }

    /// Multiplicative order of a nonzero scalar, searched up to the bound.
    pub fn multiplicative_order(&self, a: &Scalar) -> Order {
        assert!(!self.is_zero(a), "order of zero");
        let mut pow = a.clone();
        for k in 1..=QUANTUM_ORDER_BOUND {
            if self.is_one(&pow) {
                return Order::Finite(k);
            }
            pow = self.mul(&pow, a);
        }
        Order::Infinite { exact: false }
    }

    /// Parse a scalar in the field's text encoding.
    ///
    /// Rationals: `a` or `a/b`. Cyclotomic: sums of `c`, `c*z^k`, `z^k`
    /// with rational `c`. Finite fields: same with generator letter `g`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, CoreError> {
        let letter = match self.desc {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Cyclotomic(_) => Some('z'),
            FieldDescriptor::Finite { .. } => Some('g'),
        };
        let terms = split_terms(s)?;
        let mut acc = self.zero();
        for (sign, body) in terms {
            let term = self.parse_term(&body, letter)?;
            acc = if sign {
                self.add(&acc, &term)
            } else {
                self.sub(&acc, &term)
            };
        }
        Ok(acc)
    }

    fn parse_term(&self, body: &str, letter: Option<char>) -> Result<Scalar, CoreError> {
        let body = body.trim();
        if body.is_empty() {
            return Err(CoreError::Parse("empty term in scalar".into()));
        }
        let (coeff_str, power) = match letter {
            Some(l) if body.contains(l) => {
                let (c, rest) = match body.split_once('*') {
                    Some((c, rest)) => (c.trim(), rest.trim()),
                    None => ("1", body),
                };
                let rest = rest
                    .strip_prefix(l)
                    .ok_or_else(|| CoreError::Parse(format!("bad term {body:?}")))?;
                let power: usize = match rest.strip_prefix('^') {
                    Some(e) => e
                        .parse()
                        .map_err(|_| CoreError::Parse(format!("bad exponent in {body:?}")))?,
                    None if rest.is_empty() => 1,
                    None => return Err(CoreError::Parse(format!("bad term {body:?}"))),
                };
                (c, power)
            }
            _ => (body, 0),
        };
        let coeff = parse_rational(coeff_str)?;
        let gen_pow = if power == 0 {
            self.one()
        } else {
            let g = self
                .generator()
                .ok_or_else(|| CoreError::Parse(format!("no generator in {}", self.desc)))?;
            self.pow(&g, power as u64)
        };
        let coeff_scalar = self.rational_to_scalar(&coeff)?;
        Ok(self.mul(&coeff_scalar, &gen_pow))
    }

    fn rational_to_scalar(&self, r: &BigRational) -> Result<Scalar, CoreError> {
        match self.desc {
            FieldDescriptor::Rationals => Ok(Scalar::Rational(r.clone())),
            FieldDescriptor::Cyclotomic(_) => {
                let mut c = vec![BigRational::zero(); self.ext_degree];
                c[0] = r.clone();
                Ok(Scalar::Cyclotomic(c))
            }
            FieldDescriptor::Finite { p, .. } => {
                let p_big = BigInt::from(p);
                let denom = r.denom().mod_floor(&p_big);
                if denom.is_zero() {
                    return Err(CoreError::Parse(format!(
                        "denominator of {r} vanishes mod {p}"
                    )));
                }
                let num = r.numer().mod_floor(&p_big);
                let num_s = Scalar::Finite(one_slot(self.ext_degree, big_to_u64(&num)));
                let den_s = Scalar::Finite(one_slot(self.ext_degree, big_to_u64(&denom)));
                self.div(&num_s, &den_s)
            }
        }
    }

    /// Render a scalar in the text encoding accepted by [`Field::parse_scalar`].
    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(r) => format_rational(r),
            Scalar::Cyclotomic(c) => {
                let terms: Vec<(String, usize, bool)> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (format_rational(&x.abs()), i, x.is_negative()))
                    .collect();
                join_terms(terms, 'z')
            }
            Scalar::Finite(c) => {
                let terms: Vec<(String, usize, bool)> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| (x.to_string(), i, false))
                    .collect();
                join_terms(terms, 'g')
            }
        }
    }
}

fn one_slot(len: usize, v: u64) -> Vec<u64> {
    let mut c = vec![0u64; len];
    c[0] = v;
    c
}

fn big_to_u64(b: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    b.to_u64().expect("residue fits in u64")
}

fn join_terms(terms: Vec<(String, usize, bool)>, letter: char) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (coeff, power, negative)) in terms.iter().enumerate() {
        if idx == 0 {
            if *negative {
                out.push('-');
            }
        } else {
            out.push(if *negative { '-' } else { '+' });
        }
        match power {
            0 => out.push_str(coeff),
            1 => {
                out.push_str(coeff);
                out.push('*');
                out.push(letter);
            }
            _ => {
                out.push_str(coeff);
                out.push('*');
                out.push(letter);
                out.push('^');
                out.push_str(&power.to_string());
            }
        }
    }
    out
}

fn split_terms(s: &str) -> Result<Vec<(bool, String)>, CoreError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(CoreError::Parse("empty scalar".into()));
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = true;
    let mut first = true;
    for ch in s.chars() {
        match ch {
            '+' | '-' if !first && !current.is_empty() => {
                terms.push((sign, std::mem::take(&mut current)));
                sign = ch == '+';
            }
            '-' if first || current.is_empty() => {
                sign = !sign;
            }
            '+' if first || current.is_empty() => {}
            _ => current.push(ch),
        }
        first = false;
    }
    if current.is_empty() {
        return Err(CoreError::Parse(format!("dangling sign in {s:?}")));
    }
    terms.push((sign, current));
    Ok(terms)
}

pub fn parse_rational(s: &str) -> Result<BigRational, CoreError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| CoreError::Parse(format!("bad integer {num:?}")))?;
    let d = BigInt::from_str(den).map_err(|_| CoreError::Parse(format!("bad integer {den:?}")))?;
    if d.is_zero() {
        return Err(CoreError::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The q-integer `(k)_q = 1 + q + ... + q^(k-1)`; `(0)_q = 0`.
pub fn q_integer(field: &Field, q: &Scalar, k: usize) -> Scalar {
    let mut acc = field.zero();
    let mut pow = field.one();
    for _ in 0..k {
        acc = field.add(&acc, &pow);
        pow = field.mul(&pow, q);
    }
    acc
}

/// The quantum order of `q`: minimal `m >= 2` with `(m)_q = 0`.
///
/// Over a field of characteristic 0 with `q = 1` the order is exactly
/// infinite; otherwise an exhausted search bound is reported as inexact.
pub fn quantum_order(field: &Field, q: &Scalar) -> Order {
    assert!(!field.is_zero(q), "quantum order of zero");
    if field.characteristic() == 0 && field.is_one(q) {
        return Order::Infinite { exact: true };
    }
    let mut acc = field.add(&field.one(), q);
    let mut pow = field.mul(q, q);
    let mut m = 2u64;
    loop {
        if field.is_zero(&acc) {
            return Order::Finite(m);
        }
        if m >= QUANTUM_ORDER_BOUND {
            return Order::Infinite { exact: false };
        }
        acc = field.add(&acc, &pow);
        pow = field.mul(&pow, q);
        m += 1;
    }
}

/// Coefficients of the N-th cyclotomic polynomial, ascending, over the
/// integers. Computed by dividing `x^N - 1` by all lower `Phi_d`, `d | N`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
        // Both monic with exact division.
        let mut rem: Vec<i64> = num.to_vec();
        let dd = den.len() - 1;
        let mut quot = vec![0i64; num.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd];
            quot[i] = c;
            if c != 0 {
                for (j, &d) in den.iter().enumerate() {
                    rem[i + j] -= c * d;
                }
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
        quot
    }

    let mut result = vec![0i64; n as usize + 1];
    result[0] = -1;
    result[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            result = poly_div_exact(&result, &phi_d);
        }
    }
    result
}

/// Extended gcd over `Q[x]`: returns `(g, s, t)` with `s*a + t*b = g`.
fn poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
        p
    }
    fn poly_divmod(
        num: &[BigRational],
        den: &[BigRational],
    ) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        if num.len() <= dd {
            return (vec![BigRational::zero()], rem);
        }
        let lead_inv = den[dd].recip();
        let mut quot = vec![BigRational::zero(); num.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in den.iter().enumerate() {
                    let delta = &c * d;
                    rem[i + j] -= delta;
                }
            }
            quot[i] = c;
        }
        (trim(quot), trim(rem))
    }
    fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }
    fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(out)
    }

    let zero = || vec![BigRational::zero()];
    let one = || vec![BigRational::one()];
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let (mut s0, mut s1) = (one(), zero());
    let (mut t0, mut t1) = (zero(), one());
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let new_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let new_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, new_s);
        t0 = std::mem::replace(&mut t1, new_t);
    }
    (r0, s0, t0)
}

// --- Conway polynomials ------------------------------------------------

mod gfp {
    //! Polynomial helpers over the prime field, for the Conway search.

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let dm = m.len() - 1;
        if dm == 0 {
            return vec![0];
        }
        let mut r = a.to_vec();
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let c = (*r.last().unwrap() * lead_inv) % p;
            let shift = r.len() - 1 - dm;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let idx = shift + j;
                    r[idx] = (r[idx] + (p - (c * mj) % p)) % p;
                }
            }
            r.pop();
            r = trim(r);
        }
        r
    }

    pub fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut b = rem(base, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            e >>= 1;
            if e > 0 {
                b = rem(&mul(&b, &b, p), m, p);
            }
        }
        acc
    }

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        // p is a small prime.
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r0 = trim(a.to_vec());
        let mut r1 = trim(b.to_vec());
        while !(r1.len() == 1 && r1[0] == 0) {
            let r = if r0.len() >= r1.len() {
                rem(&r0, &r1, p)
            } else {
                std::mem::replace(&mut r0, r1.clone())
            };
            r0 = std::mem::replace(&mut r1, r);
        }
        r0
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u32;
    let x = vec![0u64, 1];
    // x^(p^n) == x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for primes q | n.
    let mut xp = x.clone();
    for _ in 0..n {
        xp = gfp::pow_mod(&xp, p, f, p);
    }
    if gfp::trim(xp.clone()) != x {
        return false;
    }
    for q in prime_factors(n as u64) {
        let steps = n as u64 / q;
        let mut xq = x.clone();
        for _ in 0..steps {
            xq = gfp::pow_mod(&xq, p, f, p);
        }
        // xq - x
        let mut diff = xq;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let diff = gfp::trim(diff);
        let g = gfp::gcd(&diff, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn is_primitive(f: &[u64], p: u64, n: u32) -> bool {
    let q = p.pow(n);
    let group = q - 1;
    let x = vec![0u64, 1];
    for r in prime_factors(group) {
        let e = group / r;
        let xe = gfp::pow_mod(&x, e, f, p);
        if xe == vec![1] {
            return false;
        }
    }
    // x^group must be 1 (it is, if f is irreducible), asserted cheaply:
    gfp::pow_mod(&x, group, f, p) == vec![1]
}

/// The Conway polynomial for `GF(p^k)`, ascending coefficients including
/// the leading 1.
///
/// Computed by the defining search: the minimal monic primitive polynomial
/// of degree k under the standard alternating-sign word order, compatible
/// with the Conway polynomials of all proper subfields.
pub fn conway_polynomial(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        // x - c for the smallest primitive root c.
        for c in 1..p {
            let f = vec![(p - c) % p, 1];
            if is_primitive(&f, p, 1) {
                return f;
            }
        }
        unreachable!("no primitive root mod {p}");
    }
    let divisors: Vec<u32> = (1..k).filter(|d| k % d == 0).collect();
    let sub_conways: Vec<(u32, Vec<u64>)> = divisors
        .iter()
        .map(|&d| (d, conway_polynomial(p, d)))
        .collect();
    let q = p.pow(k);

    // Enumerate candidate words (w_{k-1}, ..., w_0) in lexicographic order;
    // coefficient f_i = (-1)^(k-i) * w_i mod p.
    let mut word = vec![0u64; k as usize];
    loop {
        let mut f = vec![0u64; k as usize + 1];
        f[k as usize] = 1;
        for i in 0..k as usize {
            let w = word[k as usize - 1 - i]; // word stored high-to-low
            let sign_neg = (k as usize - i) % 2 == 1;
            f[i] = if sign_neg { (p - w % p) % p } else { w % p };
        }
        if f[0] != 0 && is_irreducible(&f, p) && is_primitive(&f, p, k) {
            let compatible = sub_conways.iter().all(|(d, g)| {
                let e = (q - 1) / (p.pow(*d) - 1);
                let xe = gfp::pow_mod(&[0, 1], e, &f, p);
                // Evaluate g at xe mod f.
                let mut acc = vec![0u64];
                for &c in g.iter().rev() {
                    acc = gfp::rem(&gfp::mul(&acc, &xe, p), &f, p);
                    if c != 0 {
                        if acc.is_empty() {
                            acc = vec![c];
                        } else {
                            acc[0] = (acc[0] + c) % p;
                        }
                    }
                }
                gfp::trim(acc) == vec![0]
            });
            if compatible {
                return f;
            }
        }
        // Next word.
        let mut pos = k as usize;
        loop {
            if pos == 0 {
                unreachable!("Conway search exhausted for GF({p}^{k})");
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < p {
                break;
            }
            word[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> Field {
        Field::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["Q", "Q(zeta3)", "GF(4)", "GF(49)"] {
            let d: FieldDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("GF(6)".parse::<FieldDescriptor>().is_err());
        assert!("Q(zeta0)".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn characteristic_reported() {
        assert_eq!(field("Q").characteristic(), 0);
        assert_eq!(field("GF(4)").characteristic(), 2);
        assert_eq!(field("Q(zeta3)").characteristic(), 0);
    }

    #[test]
    fn gf4_has_four_elements() {
        let f = field("GF(4)");
        let g = f.generator().unwrap();
        let mut elems = vec![f.zero(), f.one(), g.clone()];
        elems.push(f.mul(&g, &g));
        elems.sort_by_key(|e| f.format_scalar(e));
        elems.dedup();
        assert_eq!(elems.len(), 4);
        // The generator has multiplicative order 3.
        assert_eq!(f.multiplicative_order(&g), Order::Finite(3));
    }

    #[test]
    fn cyclotomic3_relation() {
        let f = field("Q(zeta3)");
        let z = f.generator().unwrap();
        let zz = f.mul(&z, &z);
        let sum = f.add(&f.add(&zz, &z), &f.one());
        assert!(f.is_zero(&sum));
    }

    #[test]
    fn inverses() {
        let f = field("Q(zeta3)");
        let z = f.generator().unwrap();
        let a = f.add(&z, &f.from_i64(2));
        let ainv = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &ainv)));

        let g4 = field("GF(4)");
        let g = g4.generator().unwrap();
        assert!(g4.is_one(&g4.mul(&g, &g4.inv(&g).unwrap())));

        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn q_integer_basics() {
        let q_field = field("Q");
        let minus_one = q_field.from_i64(-1);
        assert!(q_field.is_zero(&q_integer(&q_field, &minus_one, 2)));
        assert!(q_field.is_zero(&q_integer(&q_field, &minus_one, 0)));

        let c3 = field("Q(zeta3)");
        let z = c3.generator().unwrap();
        assert!(c3.is_zero(&q_integer(&c3, &z, 3)));
        assert!(!c3.is_zero(&q_integer(&c3, &z, 2)));

        let g2 = field("GF(2)");
        assert!(g2.is_zero(&q_integer(&g2, &g2.one(), 2)));
    }

    #[test]
    fn quantum_orders() {
        let q_field = field("Q");
        assert_eq!(
            quantum_order(&q_field, &q_field.from_i64(-1)),
            Order::Finite(2)
        );
        assert_eq!(
            quantum_order(&q_field, &q_field.one()),
            Order::Infinite { exact: true }
        );
        let g2 = field("GF(2)");
        assert_eq!(quantum_order(&g2, &g2.one()), Order::Finite(2));
        let c3 = field("Q(zeta3)");
        assert_eq!(
            quantum_order(&c3, &c3.generator().unwrap()),
            Order::Finite(3)
        );
        // char 0: quantum order of a root of unity equals its multiplicative order.
        let c5 = field("Q(zeta5)");
        let z5 = c5.generator().unwrap();
        assert_eq!(quantum_order(&c5, &z5), Order::Finite(5));
        assert_eq!(c5.multiplicative_order(&z5), Order::Finite(5));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn conway_polynomials_match_reference_values() {
        assert_eq!(conway_polynomial(2, 1), vec![1, 1]);
        assert_eq!(conway_polynomial(2, 2), vec![1, 1, 1]);
        assert_eq!(conway_polynomial(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(conway_polynomial(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(conway_polynomial(3, 1), vec![1, 1]);
        assert_eq!(conway_polynomial(3, 2), vec![2, 2, 1]);
        assert_eq!(conway_polynomial(5, 1), vec![3, 1]);
        assert_eq!(conway_polynomial(5, 2), vec![2, 4, 1]);
        assert_eq!(conway_polynomial(7, 1), vec![4, 1]);
    }

    #[test]
    fn scalar_text_round_trip() {
        let cases = [
            ("Q", vec!["0", "-1", "3/2", "7"]),
            ("Q(zeta3)", vec!["0", "-1", "1*z", "-1/2+3*z", "2-1*z"]),
            ("GF(4)", vec!["0", "1", "1*g", "1+1*g"]),
        ];
        for (fd, strings) in cases {
            let f = field(fd);
            for s in strings {
                let v = f.parse_scalar(s).unwrap();
                let printed = f.format_scalar(&v);
                let reparsed = f.parse_scalar(&printed).unwrap();
                assert_eq!(v, reparsed, "{fd}: {s} -> {printed}");
            }
        }
        // -1 over GF(2) normalizes to 1.
        let g2 = field("GF(2)");
        assert!(g2.is_one(&g2.parse_scalar("-1").unwrap()));
    }

    #[test]
    fn field_errors() {
        assert!(Field::new(FieldDescriptor::Finite { p: 6, k: 1 }).is_err());
        assert!(Field::new(FieldDescriptor::Cyclotomic(0)).is_err());
    }
}
