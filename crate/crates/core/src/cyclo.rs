//! Exact arithmetic in cyclotomic fields Q(ζ_e).
//!
//! An element is a vector of exact rationals over the power basis
//! 1, ζ, ζ², …, ζ^{φ(e)−1} of `Q[x]/(Φ_e(x))`, where Φ_e is the e-th
//! cyclotomic polynomial. Construction always reduces to this basis and then
//! descends to the smallest conductor that can represent the value, so two
//! elements are equal (and hash equal) iff their stored forms are identical.
//!
//! The eighth root ω = ζ₈ generates everything the matrix layer needs:
//! i = ζ₈² and √2 = ζ₈ − ζ₈³. Character lifting introduces other small
//! conductors; mixed-conductor arithmetic lifts both operands to the lcm.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

/// Rational from an integer numerator.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Rational n/d.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Rat>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rat>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn euler_phi(mut e: u32) -> u32 {
    let mut phi = 1u32;
    let mut p = 2u32;
    while p * p <= e {
        if e.is_multiple_of(p) {
            let mut pk = 1;
            while e.is_multiple_of(p) {
                e /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if e > 1 {
        phi *= e - 1;
    }
    phi
}

fn prime_divisors(mut e: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while p * p <= e {
        if e.is_multiple_of(p) {
            out.push(p);
            while e.is_multiple_of(p) {
                e /= p;
            }
        }
        p += 1;
    }
    if e > 1 {
        out.push(e);
    }
    out
}

fn divisors(e: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= e {
        if e.is_multiple_of(i) {
            out.push(i);
            if i != e / i {
                out.push(e / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

// ---- dense polynomial helpers over Q (little-endian coefficient vectors) ----

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Exact quotient and remainder of `a` by `b` (leading coefficient of `b` nonzero).
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem: Vec<Rat> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    assert!(!lead.is_zero(), "division by zero polynomial");
    if rem.len() - 1 < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db && !(rem.len() == 1 && rem[0].is_zero()) {
        let dr = rem.len() - 1;
        let c = &rem[dr] / lead;
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                let t = &c * bi;
                rem[shift + i] -= t;
            }
        }
        quot[shift] = c;
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
        if rem.len() - 1 < db {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// The e-th cyclotomic polynomial Φ_e as a monic coefficient vector.
///
/// Computed by dividing x^e − 1 by Φ_d for every proper divisor d, ascending,
/// and cached process-wide.
pub fn cyclotomic_polynomial(e: u32) -> Arc<Vec<Rat>> {
    assert!(e >= 1);
    if let Some(p) = phi_cache().lock().unwrap().get(&e) {
        return p.clone();
    }
    for d in divisors(e) {
        if phi_cache().lock().unwrap().contains_key(&d) {
            continue;
        }
        let poly = if d == 1 {
            vec![rat(-1), rat(1)]
        } else {
            let mut num = vec![Rat::zero(); d as usize + 1];
            num[0] = rat(-1);
            num[d as usize] = rat(1);
            let mut den = vec![rat(1)];
            for dd in divisors(d) {
                if dd < d {
                    let phi_dd = phi_cache().lock().unwrap().get(&dd).unwrap().clone();
                    den = poly_mul(&den, &phi_dd);
                }
            }
            let (q, r) = poly_divmod(&num, &den);
            assert!(
                r.iter().all(|c| c.is_zero()),
                "Phi_{} division not exact",
                d
            );
            q
        };
        phi_cache().lock().unwrap().insert(d, Arc::new(poly));
    }
    phi_cache().lock().unwrap().get(&e).unwrap().clone()
}

/// An exact element of a cyclotomic field, stored at its minimal conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    /// Build an element of Q(ζ_e) from raw power-basis coefficients of any
    /// length: exponents fold modulo e, the result reduces modulo Φ_e, and
    /// the stored conductor descends to the minimal one for the value.
    pub fn new(conductor: u32, coeffs: Vec<Rat>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        Ok(Self::canonical(conductor, coeffs))
    }

    fn canonical(e: u32, raw: Vec<Rat>) -> Self {
        let mut folded = vec![Rat::zero(); e as usize];
        for (i, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % e as usize] += c;
            }
        }
        let phi = cyclotomic_polynomial(e);
        let deg = phi.len() - 1;
        poly_trim(&mut folded);
        let mut reduced = if folded.len() > deg && !(folded.len() == 1 && folded[0].is_zero()) {
            poly_divmod(&folded, &phi).1
        } else {
            folded
        };
        reduced.resize(deg, Rat::zero());
        let mut out = Cyclotomic {
            conductor: e,
            coeffs: reduced,
        };
        out.descend();
        out
    }

    /// Descend to the minimal conductor representing the same value.
    fn descend(&mut self) {
        'outer: loop {
            let e = self.conductor;
            if e == 1 {
                return;
            }
            for q in prime_divisors(e) {
                let d = e / q;
                if let Some(smaller) = self.try_descend(d) {
                    let deg_d = euler_phi(d) as usize;
                    let mut coeffs = smaller;
                    coeffs.resize(deg_d, Rat::zero());
                    self.conductor = d;
                    self.coeffs = coeffs;
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// Coefficients over Q(ζ_d) if the value lies in that subfield.
    fn try_descend(&self, d: u32) -> Option<Vec<Rat>> {
        let e = self.conductor;
        let m = (e / d) as usize;
        let deg_e = self.coeffs.len();
        let deg_d = euler_phi(d) as usize;
        // Fast path: the lifted basis of Q(ζ_d) is a set of distinct basis
        // monomials of Q(ζ_e); membership is a support check.
        if m * (deg_d - 1) < deg_e || deg_d == 1 {
            let mut out = vec![Rat::zero(); deg_d];
            for (i, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if i % m == 0 && i / m < deg_d {
                    out[i / m] = c.clone();
                } else {
                    return None;
                }
            }
            return Some(out);
        }
        // General path: solve the linear system over the lifted basis images.
        let phi_e = cyclotomic_polynomial(e);
        let cols: Vec<Vec<Rat>> = (0..deg_d)
            .map(|j| {
                let mut mono = vec![Rat::zero(); m * j + 1];
                mono[m * j] = rat(1);
                let mut r = if m * j >= deg_e {
                    poly_divmod(&mono, &phi_e).1
                } else {
                    mono
                };
                r.resize(deg_e, Rat::zero());
                r
            })
            .collect();
        // Gaussian elimination on the augmented system [cols | self.coeffs].
        let mut aug: Vec<Vec<Rat>> = (0..deg_e)
            .map(|r| {
                let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let ncols = deg_d;
        let mut pivot_of_col = vec![usize::MAX; ncols];
        let mut rank = 0usize;
        for col in 0..ncols {
            let Some(pr) = (rank..deg_e).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(rank, pr);
            let inv = aug[rank][col].clone();
            for c in col..=ncols {
                aug[rank][c] = &aug[rank][c] / &inv;
            }
            for r in 0..deg_e {
                if r != rank && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=ncols {
                        let t = &f * &aug[rank][c];
                        aug[r][c] -= t;
                    }
                }
            }
            pivot_of_col[col] = rank;
            rank += 1;
        }
        // Consistent iff no row reads 0 = nonzero.
        for r in rank..deg_e {
            if !aug[r][ncols].is_zero() {
                return None;
            }
        }
        let mut sol = vec![Rat::zero(); ncols];
        for (col, &pr) in pivot_of_col.iter().enumerate() {
            if pr != usize::MAX {
                sol[col] = aug[pr][ncols].clone();
            }
        }
        Some(sol)
    }

    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![rat(1)],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![rat(n)],
        }
    }

    pub fn from_bigint(n: Int) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rat::from_integer(n)],
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// ζ_e^k.
    pub fn root_of_unity(e: u32, k: i64) -> Self {
        assert!(e >= 1);
        let kk = k.rem_euclid(e as i64) as usize;
        let mut raw = vec![Rat::zero(); kk + 1];
        raw[kk] = rat(1);
        Self::canonical(e, raw)
    }

    /// √2 = ζ₈ − ζ₈³.
    pub fn sqrt2() -> Self {
        let mut raw = vec![Rat::zero(); 4];
        raw[1] = rat(1);
        raw[3] = rat(-1);
        Self::canonical(8, raw)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    /// Power-basis coefficients of this value in Q(ζ_e); `e` must be a
    /// multiple of the stored conductor.
    pub fn coeffs_at(&self, e: u32) -> Vec<Rat> {
        assert!(
            e.is_multiple_of(self.conductor),
            "cannot express conductor {} element at conductor {}",
            self.conductor,
            e
        );
        let m = (e / self.conductor) as usize;
        let deg_e = euler_phi(e) as usize;
        let mut raw = vec![Rat::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * m] = c.clone();
            }
        }
        let phi = cyclotomic_polynomial(e);
        poly_trim(&mut raw);
        let mut r = if raw.len() > deg_e {
            poly_divmod(&raw, &phi).1
        } else {
            raw
        };
        r.resize(deg_e, Rat::zero());
        r
    }

    fn binary_op(&self, other: &Self, f: impl Fn(&[Rat], &[Rat]) -> Vec<Rat>) -> Self {
        let e = lcm_u32(self.conductor, other.conductor);
        let a = self.coeffs_at(e);
        let b = other.coeffs_at(e);
        Self::canonical(e, f(&a, &b))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.binary_op(other, |a, b| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.binary_op(other, |a, b| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Rational scaling needs no lift.
        if self.conductor == 1 {
            let q = &self.coeffs[0];
            if q.is_zero() {
                return Self::zero();
            }
            let mut out = other.clone();
            for c in &mut out.coeffs {
                *c *= q;
            }
            if out.coeffs.iter().all(|c| c.is_zero()) {
                return Self::zero();
            }
            return out;
        }
        if other.conductor == 1 {
            return other.mul(self);
        }
        self.binary_op(other, poly_mul)
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_e.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                conductor: self.conductor,
            });
        }
        if self.conductor == 1 {
            return Ok(Self::from_rat(self.coeffs[0].recip()));
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (mut r0, mut r1) = (phi.as_ref().clone(), a);
        let (mut t0, mut t1) = (vec![Rat::zero()], vec![rat(1)]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let qt = poly_mul(&q, &t1);
            let mut t = vec![Rat::zero(); t0.len().max(qt.len())];
            for (i, c) in t0.iter().enumerate() {
                t[i] += c;
            }
            for (i, c) in qt.iter().enumerate() {
                t[i] -= c;
            }
            poly_trim(&mut t);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant (Φ_e irreducible over Q).
        assert!(
            r0.len() == 1 && !r0[0].is_zero(),
            "gcd with Phi_e not constant"
        );
        let scale = r0[0].recip();
        let coeffs = t0.into_iter().map(|c| c * &scale).collect();
        Ok(Self::canonical(self.conductor, coeffs))
    }

    /// Complex conjugation: the Galois automorphism ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    /// Galois automorphism ζ ↦ ζ^k for gcd(k, e) = 1.
    pub fn galois(&self, k: u32) -> Self {
        let e = self.conductor;
        assert!(
            gcd_u32(k % e, e) == 1 || e == 1,
            "galois exponent not coprime"
        );
        let mut raw = vec![Rat::zero(); e as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(i as u64 * k as u64 % e as u64) as usize] += c;
            }
        }
        Self::canonical(e, raw)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// |self|² = self · conj(self).
    pub fn norm_squared(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Numeric embedding at ζ_e = exp(2πi/e); display and sanity oracle only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.conductor as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().expect("rational out of f64 range");
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / e;
            re += x * theta.cos();
            im += x * theta.sin();
        }
        (re, im)
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        (self.conductor == 1).then(|| &self.coeffs[0])
    }

    pub fn is_rational_integer(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_integer())
    }

    pub fn as_integer(&self) -> Option<Int> {
        self.as_rational()
            .and_then(|q| q.is_integer().then(|| q.to_integer()))
    }

    /// Total order on values compared through their Q(ζ_e) coefficient
    /// vectors, rationals ordered numerator-first. `ambient` must be a common
    /// multiple of both conductors.
    pub fn cmp_at(&self, other: &Self, ambient: u32) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let a = self.coeffs_at(ambient);
        let b = other.coeffs_at(ambient);
        for (x, y) in a.iter().zip(&b) {
            let ord = rat_cmp(x, y);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

/// Lexicographic rational order used by canonicalization, numerator first
/// with canonical signs: positive values ascending, then negative values,
/// then zero. Denominators (canonically positive) break ties. Under this
/// order the identity matrix and the diagonal gates keep their natural
/// phase representatives.
pub fn rat_cmp(a: &Rat, b: &Rat) -> Ordering {
    fn key(q: &Rat) -> u8 {
        if q.is_positive() {
            0
        } else if q.is_negative() {
            1
        } else {
            2
        }
    }
    key(a)
        .cmp(&key(b))
        .then_with(|| a.numer().abs().cmp(&b.numer().abs()))
        .then_with(|| a.denom().cmp(b.denom()))
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                write!(f, "{}*z{}", mag, self.conductor)?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Parse the textual rendering, e.g. `1/2 - 1/2*z8^3`, `3`, `1*z4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic literal".into()));
        }
        let bad = |msg: &str| Error::Parse(format!("`{s}`: {msg}"));
        let mut acc = Cyclotomic::zero();
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        }
        loop {
            let term_end = rest
                .char_indices()
                .find(|&(i, ch)| (ch == '+' || ch == '-') && i > 0)
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let term = rest[..term_end].trim();
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (coeff_str, z_str) = match term.split_once('*') {
                Some((c, z)) => (c.trim(), Some(z.trim())),
                None if term.starts_with('z') => ("1", Some(term)),
                None => (term.trim(), None),
            };
            let q = parse_rational(coeff_str).ok_or_else(|| bad("bad rational"))?;
            let q = if sign < 0 { -q } else { q };
            let t = match z_str {
                None => Cyclotomic::from_rat(q),
                Some(z) => {
                    let z = z.strip_prefix('z').ok_or_else(|| bad("expected z<e>"))?;
                    let (e_str, k_str) = match z.split_once('^') {
                        Some((e, k)) => (e.trim(), k.trim()),
                        None => (z.trim(), "1"),
                    };
                    let e: u32 = e_str.parse().map_err(|_| bad("bad conductor"))?;
                    let k: i64 = k_str.parse().map_err(|_| bad("bad power"))?;
                    if e == 0 {
                        return Err(Error::ZeroConductor);
                    }
                    Cyclotomic::root_of_unity(e, k).mul(&Cyclotomic::from_rat(q))
                }
            };
            acc = acc.add(&t);
            if term_end == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[term_end] == b'-' {
                -1
            } else {
                1
            };
            rest = rest[term_end + 1..].trim_start();
        }
        Ok(acc)
    }
}

fn parse_rational(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: Int = s.trim().parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}
